//! Finite fields GF(p^k).
//!
//! Elements are packed into a single integer `Σ c_i p^i` (constant coefficient
//! least significant). A [`Field`] is a cheap handle; all arithmetic goes
//! through it. Fields of order at most 2^16 use log/antilog tables, larger
//! ones fall back to polynomial-basis arithmetic modulo the defining modulus.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Largest field order accepted by [`Field::new`].
pub const MAX_FIELD_ORDER: u64 = 1 << 40;

const TABLE_LIMIT: u64 = 1 << 16;
const ADD_TABLE_LIMIT: u64 = 256;

/// A field element in packed polynomial-basis form.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fe(u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn raw(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Arithmetic on raw coefficient data; used directly for large fields and
/// to bootstrap the tables of small ones.
#[derive(Debug)]
struct RawField {
    p: u64,
    k: u32,
    q: u64,
    /// Monic modulus, constant term first, length k+1.
    modulus: Vec<u64>,
}

impl RawField {
    fn digits(&self, a: u64) -> Vec<u64> {
        let mut out = vec![0; self.k as usize];
        let mut v = a;
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn pack(&self, digits: &[u64]) -> u64 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut x, mut y) = (a, b);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        out
    }

    fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        out
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return ((a as u128 * b as u128) % self.p as u128) as u64;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let k = self.k as usize;
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        // reduce: t^k = -Σ m_i t^i
        for top in (k..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u128;
                prod[top - k + i] = (prod[top - k + i] + (p - m) % p * c) % p;
            }
        }
        let digits: Vec<u64> = prod[..k].iter().map(|&c| c as u64).collect();
        self.pack(&digits)
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a;
        let mut acc = 1 % self.q.max(2);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            return Some(inv_mod(a, self.p));
        }
        // extended Euclid on F_p[t]: find u with u·a ≡ 1 mod modulus.
        // Polynomials are coefficient vectors without trailing zeros.
        let p = self.p;
        let norm = |mut v: Vec<u64>| {
            while v.last() == Some(&0) {
                v.pop();
            }
            v
        };
        let sub_scaled = |a: &[u64], b: &[u64], c: u64, shift: usize| {
            let mut out = a.to_vec();
            if out.len() < b.len() + shift {
                out.resize(b.len() + shift, 0);
            }
            for (i, &x) in b.iter().enumerate() {
                out[i + shift] = (out[i + shift] + p - x * c % p) % p;
            }
            norm(out)
        };
        let (mut r0, mut r1) = (self.modulus.clone(), norm(self.digits(a)));
        let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (vec![], vec![1]);
        while !r1.is_empty() {
            let lead_inv = inv_mod(*r1.last().unwrap(), p);
            let (mut rem, mut s_next) = (r0.clone(), s0.clone());
            while rem.len() >= r1.len() {
                let shift = rem.len() - r1.len();
                let c = rem.last().unwrap() * lead_inv % p;
                rem = sub_scaled(&rem, &r1, c, shift);
                s_next = sub_scaled(&s_next, &s1, c, shift);
            }
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s_next);
        }
        // r0 is a nonzero constant
        let c = inv_mod(r0[0], p);
        let mut digits: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
        digits.resize(self.k as usize, 0);
        Some(self.pack(&digits))
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    t.rem_euclid(p as i128) as u64
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

#[derive(Debug)]
struct FieldInner {
    raw: RawField,
    tables: Option<Tables>,
    primitive: u64,
}

/// Handle to GF(p^k). Equality is by `(p, k)`; the modulus is a function of
/// `(p, k)` so equal handles share it.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.k() == other.k())
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.k().hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.k())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let (mut v, mut k) = (q, 0);
    while v > 1 {
        v /= p;
        k += 1;
    }
    Some((p, k))
}

fn registry() -> &'static Mutex<HashMap<(u64, u32), Field>> {
    static REG: OnceLock<Mutex<HashMap<(u64, u32), Field>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Field {
    /// GF(p^k) with the smallest monic irreducible modulus of degree k, where
    /// coefficient tuples `(c_0, …, c_{k-1})` are compared lexicographically
    /// from the constant term. For k = 1 the modulus is `t`.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        if p > (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= MAX_FIELD_ORDER as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, k });
        };
        let q = q as u64;
        if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let modulus = if k == 1 { vec![0, 1] } else { smallest_irreducible(p, k)? };
        let raw = RawField { p, k, q, modulus };
        let primitive = find_primitive(&raw);
        let tables = (k > 1 && q <= TABLE_LIMIT).then(|| build_tables(&raw, primitive));
        let field = Field(Arc::new(FieldInner { raw, tables, primitive }));
        let mut reg = registry().lock().unwrap();
        Ok(reg.entry((p, k)).or_insert(field).clone())
    }

    /// Field of order q (a prime power).
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Field::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.0.raw.p
    }

    pub fn k(&self) -> u32 {
        self.0.raw.k
    }

    pub fn order(&self) -> u64 {
        self.0.raw.q
    }

    /// Monic modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.0.raw.modulus
    }

    pub fn modulus_poly(&self) -> Poly {
        let fp = Field::new(self.p(), 1).expect("prime field");
        Poly::new(&fp, self.modulus().iter().map(|&c| Fe(c)).collect())
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    /// The generator `t` of the polynomial basis (for k = 1, the residue 0).
    pub fn gen(&self) -> Fe {
        if self.k() == 1 {
            Fe::ZERO
        } else {
            Fe(self.p())
        }
    }

    /// Embeds an integer residue into the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        Fe(v.rem_euclid(self.p() as i64) as u64)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() > self.k() as usize || coeffs.iter().any(|&c| c >= self.p()) {
            return Err(Error::Parse(format!("{coeffs:?} is not an element of {self:?}")));
        }
        Ok(Fe(self.0.raw.pack(coeffs)))
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u64> {
        self.0.raw.digits(a.0)
    }

    pub fn contains(&self, a: Fe) -> bool {
        a.0 < self.order()
    }

    /// Rank of `a` under the coefficient-tuple order (constant term most
    /// significant).
    pub fn tuple_key(&self, a: Fe) -> u64 {
        self.coeffs(a).iter().fold(0, |acc, &d| acc * self.p() + d)
    }

    /// Inverse of [`Field::tuple_key`].
    pub fn from_tuple_key(&self, key: u64) -> Fe {
        let mut digits = vec![0; self.k() as usize];
        let mut v = key;
        for d in digits.iter_mut().rev() {
            *d = v % self.p();
            v /= self.p();
        }
        Fe(self.0.raw.pack(&digits))
    }

    /// All elements, in coefficient-tuple order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order()).map(move |j| self.from_tuple_key(j))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(0..self.order()))
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        Fe(rng.gen_range(1..self.order()))
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let raw = &self.0.raw;
        if raw.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= raw.p { s - raw.p } else { s });
        }
        if let Some(Tables { add: Some(t), .. }) = &self.0.tables {
            return Fe(t[(a.0 * raw.q + b.0) as usize] as u64);
        }
        Fe(raw.add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        Fe(self.0.raw.neg(a.0))
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if let Some(t) = &self.0.tables {
            if a.0 == 0 || b.0 == 0 {
                return Fe::ZERO;
            }
            let idx = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return Fe(t.exp[idx] as u64);
        }
        Fe(self.0.raw.mul(a.0, b.0))
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.tables {
            let l = t.log[a.0 as usize] as u64;
            let q1 = self.order() - 1;
            return Ok(Fe(t.exp[((q1 - l) % q1) as usize] as u64));
        }
        self.0.raw.inv(a.0).map(Fe).ok_or(Error::DivisionByZero)
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, mut e: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a ↦ a^p.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p())
    }

    /// The p-th root, inverse of [`Field::frobenius`].
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.pow(a, self.order() / self.p())
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order() - 1;
        for l in prime_factors(ord) {
            while ord.is_multiple_of(l) && self.pow(a, ord / l) == Fe::ONE {
                ord /= l;
            }
        }
        Ok(ord)
    }

    /// Smallest generator of the multiplicative group under tuple order.
    pub fn primitive_element(&self) -> Fe {
        Fe(self.0.primitive)
    }

    /// An element of multiplicative order exactly `d`: the power
    /// `g^((q-1)/d)` of [`Field::primitive_element`].
    pub fn root_of_unity(&self, d: u64) -> Result<Fe> {
        let q1 = self.order() - 1;
        if d == 0 || !q1.is_multiple_of(d) {
            return Err(Error::OrderUnavailable { d, q: self.order() });
        }
        Ok(self.pow(self.primitive_element(), q1 / d))
    }

    /// Ring embedding of this field into `target` (same characteristic,
    /// degree a multiple of ours).
    pub fn embedding(&self, target: &Field) -> Result<Embedding> {
        if self.p() != target.p() || !target.k().is_multiple_of(self.k()) {
            return Err(Error::IncompatibleEmbedding { from: self.order(), to: target.order() });
        }
        let image_of_gen = if self.k() == 1 {
            Fe::ZERO
        } else {
            let m = Poly::new(target, self.modulus().iter().map(|&c| Fe(c)).collect());
            let roots = m.roots(0)?;
            roots
                .into_iter()
                .min_by_key(|&r| target.tuple_key(r))
                .ok_or(Error::IncompatibleEmbedding { from: self.order(), to: target.order() })?
        };
        Ok(Embedding { source: self.clone(), target: target.clone(), image_of_gen })
    }

    /// Text form: decimal residue for prime fields, otherwise the
    /// bracketed coefficient tuple, constant term first.
    pub fn format(&self, a: Fe) -> String {
        if self.k() == 1 {
            return a.0.to_string();
        }
        let parts: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses the text form. A bare integer is read as a prime-subfield
    /// residue in any field.
    pub fn parse(&self, s: &str) -> Result<Fe> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid element {s:?} for {self:?}"));
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs =
                inner.split(',').map(|c| c.trim().parse::<u64>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
            if coeffs.len() != self.k() as usize {
                return Err(bad());
            }
            return self.from_coeffs(&coeffs).map_err(|_| bad());
        }
        let v: u64 = s.parse().map_err(|_| bad())?;
        if v >= self.p() {
            return Err(bad());
        }
        Ok(Fe(v))
    }
}

/// A fixed ring embedding GF(p^k) → GF(p^{km}).
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    image_of_gen: Fe,
}

impl Embedding {
    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: Fe) -> Fe {
        let t = &self.target;
        let mut acc = Fe::ZERO;
        for &c in self.source.coeffs(a).iter().rev() {
            acc = t.add(t.mul(acc, self.image_of_gen), Fe(c));
        }
        acc
    }
}

fn smallest_irreducible(p: u64, k: u32) -> Result<Vec<u64>> {
    let fp = Field::new(p, 1)?;
    let count = p.pow(k);
    for key in 0..count {
        // key enumerates (c_0, …, c_{k-1}) with c_0 most significant
        let mut coeffs = vec![0u64; k as usize + 1];
        let mut v = key;
        for i in (0..k as usize).rev() {
            coeffs[i] = v % p;
            v /= p;
        }
        coeffs[k as usize] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let f = Poly::new(&fp, coeffs.iter().map(|&c| Fe(c)).collect());
        if f.is_irreducible()? {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn find_primitive(raw: &RawField) -> u64 {
    let q1 = raw.q - 1;
    if q1 == 1 {
        return 1;
    }
    let factors = prime_factors(q1);
    let digits_of_key = |key: u64| {
        let mut digits = vec![0; raw.k as usize];
        let mut v = key;
        for d in digits.iter_mut().rev() {
            *d = v % raw.p;
            v /= raw.p;
        }
        raw.pack(&digits)
    };
    (1..raw.q)
        .map(digits_of_key)
        .find(|&a| a != 0 && factors.iter().all(|&l| raw.pow(a, q1 / l) != 1))
        .expect("multiplicative group is cyclic")
}

fn build_tables(raw: &RawField, g: u64) -> Tables {
    let q1 = (raw.q - 1) as usize;
    let mut exp = vec![0u32; 2 * q1];
    let mut log = vec![0u32; raw.q as usize];
    let mut x = 1u64;
    for (i, e) in exp.iter_mut().enumerate().take(q1) {
        *e = x as u32;
        log[x as usize] = i as u32;
        x = raw.mul(x, g);
    }
    for i in q1..2 * q1 {
        exp[i] = exp[i - q1];
    }
    let add = (raw.q <= ADD_TABLE_LIMIT).then(|| {
        let q = raw.q;
        let mut t = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                t[(a * q + b) as usize] = raw.add(a, b) as u32;
            }
        }
        t
    });
    Tables { exp, log, add }
}
