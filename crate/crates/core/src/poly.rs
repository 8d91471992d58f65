//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{prime_factors, Fe, Field};

/// Polynomial with coefficients constant term first and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Fe>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fe::ONE)
    }

    pub fn constant(field: &Field, c: Fe) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: &Field) -> Poly {
        Poly::new(field, vec![Fe::ZERO, Fe::ONE])
    }

    /// `t - a`.
    pub fn linear(field: &Field, a: Fe) -> Poly {
        Poly::new(field, vec![field.neg(a), Fe::ONE])
    }

    pub fn monomial(field: &Field, c: Fe, deg: usize) -> Poly {
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fe::ONE
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Fe::ONE
    }

    fn check(&self, other: &Poly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&c| self.field.neg(c)).collect())
    }

    pub fn scale(&self, c: Fe) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Fe::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        self.check(g)?;
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let dg = g.deg();
        if self.coeffs.len() <= dg {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(g.lead())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fe::ZERO; rem.len() - dg];
        for top in (dg..rem.len()).rev() {
            let c = f.mul(rem[top], inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - dg;
            quot[shift] = c;
            for (i, &x) in g.coeffs.iter().enumerate() {
                rem[shift + i] = f.sub(rem[shift + i], f.mul(c, x));
            }
        }
        rem.truncate(dg);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly> {
        Ok(self.divmod(g)?.1)
    }

    /// Exact quotient; panics on a nonzero remainder in debug builds.
    pub fn div_exact(&self, g: &Poly) -> Poly {
        let (q, r) = self.divmod(g).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.scale(self.field.inv(self.lead()).expect("nonzero lead"))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("same field");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Maps every coefficient through `phi` into `target`.
    pub fn map_coeffs(&self, target: &Field, phi: impl Fn(Fe) -> Fe) -> Poly {
        Poly::new(target, self.coeffs.iter().map(|&c| phi(c)).collect())
    }

    fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m).expect("nonzero modulus");
        let base = self.rem(m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn pow_mod_u64(&self, e: u64, m: &Poly) -> Poly {
        self.pow_mod(&BigUint::from(e), m)
    }

    /// Inverse of the coefficientwise Frobenius: requires `f = g(t^p)`.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let coeffs = self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        Poly::new(f, coeffs)
    }

    /// Rabin's test: `f | t^{q^n} - t` and `gcd(f, t^{q^{n/l}} - t) = 1`
    /// for each prime `l | n`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        if n == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let field = &self.field;
        let q = field.order();
        let t = Poly::t(field);
        // frob[i] = t^{q^i} mod f
        let mut frob = Vec::with_capacity(n + 1);
        let mut x = t.rem(&f)?;
        frob.push(x.clone());
        for _ in 0..n {
            x = x.pow_mod_u64(q, &f);
            frob.push(x.clone());
        }
        if !frob[n].sub(&t).rem(&f)?.is_zero() {
            return Ok(false);
        }
        for l in prime_factors(n as u64) {
            let h = frob[n / l as usize].sub(&t);
            if !f.gcd(&h).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Squarefree decomposition of a monic polynomial: pairwise coprime
    /// squarefree parts with their multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let f = self.monic();
        if f.deg() == 0 {
            return Vec::new();
        }
        let p = self.field.p() as usize;
        let d = f.derivative();
        if d.is_zero() {
            return f.pth_root().squarefree_decomposition().into_iter().map(|(g, m)| (g, m * p)).collect();
        }
        let mut out = Vec::new();
        let mut c = f.gcd(&d);
        let mut w = f.div_exact(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.div_exact(&y);
            if !z.is_one() {
                out.push((z.monic(), i));
            }
            c = c.div_exact(&y);
            w = y;
            i += 1;
        }
        if !c.monic().is_one() {
            let rest = c.monic().pth_root().squarefree_decomposition();
            out.extend(rest.into_iter().map(|(g, m)| (g, m * p)));
        }
        out
    }

    /// Splits a monic squarefree polynomial into products of irreducibles
    /// sharing a degree: `(product, degree)`.
    pub fn distinct_degree(&self) -> Vec<(Poly, usize)> {
        let field = &self.field;
        let q = field.order();
        let t = Poly::t(field);
        let mut g = self.monic();
        let mut out = Vec::new();
        let mut h = t.rem(&g).expect("nonzero");
        let mut i = 1;
        while g.deg() >= 2 * i {
            h = h.pow_mod_u64(q, &g);
            let d = g.gcd(&h.sub(&t));
            if !d.is_one() {
                g = g.div_exact(&d);
                h = h.rem(&g).expect("nonzero");
                out.push((d, i));
            }
            i += 1;
        }
        if g.deg() > 0 {
            let d = g.deg();
            out.push((g, d));
        }
        out
    }

    /// Cantor–Zassenhaus splitting of a monic product of distinct
    /// irreducibles of degree `d`.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let g = self.monic();
        let n = g.deg();
        if n <= d {
            return vec![g];
        }
        let field = &self.field;
        let q = field.order();
        let qd = BigUint::from(q).pow(d as u32);
        loop {
            let a = Poly::new(field, (0..n).map(|_| field.random(rng)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = if q % 2 == 1 {
                let e: BigUint = (&qd - 1u32) >> 1;
                a.pow_mod(&e, &g).sub(&Poly::one(field))
            } else {
                // trace to GF(2): a + a^2 + … + a^{2^{kd-1}}
                let steps = field.k() as usize * d;
                let mut term = a.rem(&g).expect("nonzero");
                let mut acc = term.clone();
                for _ in 1..steps {
                    term = term.mulmod(&term, &g);
                    acc = acc.add(&term);
                }
                acc
            };
            let h = g.gcd(&b);
            if h.deg() > 0 && h.deg() < n {
                let rest = g.div_exact(&h);
                let mut out = h.equal_degree(d, rng);
                out.extend(rest.equal_degree(d, rng));
                return out;
            }
        }
    }

    /// Complete factorization into monic irreducibles with multiplicities.
    /// Equal-degree splitting is driven by `seed`; the result is sorted so
    /// it does not depend on the seed.
    pub fn factor(&self, seed: u64) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out: Vec<(Poly, usize)> = Vec::new();
        for (part, m) in self.squarefree_decomposition() {
            for (block, d) in part.distinct_degree() {
                for g in block.equal_degree(d, &mut rng) {
                    match out.iter_mut().find(|(h, _)| *h == g) {
                        Some(entry) => entry.1 += m,
                        None => out.push((g, m)),
                    }
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp_canonical(&b.0));
        out
    }

    /// Distinct roots lying in the coefficient field, in tuple order.
    pub fn roots(&self, seed: u64) -> Result<Vec<Fe>> {
        if self.is_zero() {
            return Err(Error::Precondition("roots of the zero polynomial".into()));
        }
        let field = &self.field;
        let f = self.monic();
        if f.deg() == 0 {
            return Ok(Vec::new());
        }
        let t = Poly::t(field);
        let split = t.pow_mod_u64(field.order(), &f).sub(&t);
        let linear = f.gcd(&split);
        if linear.deg() == 0 {
            return Ok(Vec::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut roots: Vec<Fe> = linear.equal_degree(1, &mut rng).into_iter().map(|l| field.neg(l.coeff(0))).collect();
        roots.sort_by_key(|&r| field.tuple_key(r));
        Ok(roots)
    }

    /// Degree first, then coefficients from the constant term in tuple order.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for i in 0..self.coeffs.len() {
                let o = self.field.tuple_key(self.coeffs[i]).cmp(&other.field.tuple_key(other.coeffs[i]));
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Comma-separated coefficient text form, constant term first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs.iter().map(|&c| self.field.format(c)).collect::<Vec<_>>().join(",")
    }

    pub fn parse(field: &Field, s: &str) -> Result<Poly> {
        let coeffs = split_top_level(s).into_iter().map(|tok| field.parse(tok)).collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(field, coeffs))
    }
}

/// Splits on commas outside square brackets.
pub(crate) fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let coef = self.field.format(c);
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            terms.push(match (c == Fe::ONE, i) {
                (_, 0) => coef,
                (true, _) => var,
                (false, _) => format!("{coef}*{var}"),
            });
        }
        write!(out, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self} over {:?})", self.field)
    }
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Number of monic irreducibles of degree `d` over F_q:
/// `(1/d) Σ_{e|d} μ(e) q^{d/e}`.
pub fn necklace_count(q: u64, d: u32) -> u64 {
    let mut total: i128 = 0;
    for e in 1..=d {
        if d.is_multiple_of(e) {
            total += mobius(e as u64) as i128 * (q as i128).pow(d / e);
        }
    }
    (total / d as i128) as u64
}

/// All monic irreducibles of degree `d`, in canonical order. The candidate
/// scan of `q^d` polynomials must not exceed `limit`.
pub fn irreducibles_of_degree(field: &Field, d: usize, limit: u64) -> Result<Vec<Poly>> {
    if d == 0 {
        return Err(Error::Precondition("degree must be positive".into()));
    }
    let q = field.order();
    let size = (q as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if size > limit as u128 {
        return Err(Error::LimitExceeded { what: "irreducible enumeration", size, limit: limit as u128 });
    }
    let mut out = Vec::new();
    for key in 0..size as u64 {
        let mut coeffs = vec![Fe::ZERO; d + 1];
        let mut v = key;
        for c in coeffs[..d].iter_mut().rev() {
            *c = field.from_tuple_key(v % q);
            v /= q;
        }
        coeffs[d] = Fe::ONE;
        if d > 1 && coeffs[0].is_zero() {
            continue;
        }
        let f = Poly::new(field, coeffs);
        if f.is_irreducible()? {
            out.push(f);
        }
    }
    Ok(out)
}
