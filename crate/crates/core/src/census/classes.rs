//! Conjugacy classes of `M_n(F_q)` as primary data `{(f, λ)}`.

use num_bigint::BigUint;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::canon::{self, PrimaryData};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::mat::Mat;
use crate::poly::{irreducibles_of_degree, Poly};

/// Explicit feasibility limits for the census.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_classes: usize,
    /// Upper bound on the number of matrices a brute scan may visit.
    pub max_brute: u64,
    /// Upper bound on `q^d` candidates when listing irreducibles of degree `d`.
    pub max_irreducible_scan: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_classes: 250_000, max_brute: 1 << 26, max_irreducible_scan: 1 << 24 }
    }
}

/// Partitions of `m` in descending lexicographic order, parts descending.
pub fn partitions(m: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rem.min(max)).rev() {
            cur.push(part);
            rec(rem - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, m, &mut Vec::new(), &mut out);
    out
}

/// Conjugate partition `λ'`.
pub fn conjugate(lambda: &[usize]) -> Vec<usize> {
    let top = lambda.first().copied().unwrap_or(0);
    (1..=top).map(|j| lambda.iter().filter(|&&l| l >= j).count()).collect()
}

/// `|GL_n(q)| = Π_{i<n} (q^n − q^i)`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn: BigUint = Pow::pow(&q, n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - Pow::pow(&q, i)))
}

/// Order of the centralizer in `GL_n(q)` of a class with the given primary
/// data: per component `(f, λ)` with `q' = q^{deg f}`,
/// `q'^{Σ λ'_j²} Π_j Π_{i=1}^{m_j} (1 − q'^{−i})`.
pub fn centralizer_order(data: &PrimaryData, q: u64) -> BigUint {
    let mut total = BigUint::one();
    for (f, lambda) in data {
        let qq: BigUint = Pow::pow(&BigUint::from(q), f.deg());
        let exp: usize = conjugate(lambda).iter().map(|c| c * c).sum();
        let mut reduced = exp;
        let mut product = BigUint::one();
        for m in multiplicities(lambda) {
            reduced -= m * (m + 1) / 2;
            for i in 1..=m {
                product *= Pow::pow(&qq, i) - 1u32;
            }
        }
        total *= Pow::pow(&qq, reduced) * product;
    }
    total
}

/// `dim C(A) = Σ_f deg f · Σ_j λ'_j²`.
pub fn centralizer_algebra_dim(data: &PrimaryData) -> usize {
    data.iter().map(|(f, l)| f.deg() * conjugate(l).iter().map(|c| c * c).sum::<usize>()).sum()
}

fn multiplicities(lambda: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    let mut prev = None;
    for &part in lambda {
        if prev == Some(part) {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
            prev = Some(part);
        }
    }
    out
}

fn normalize(mut data: PrimaryData) -> PrimaryData {
    data.sort_by(|x, y| x.0.cmp_canonical(&y.0).then_with(|| x.1.cmp(&y.1)));
    data
}

/// `f(t) ↦ ζ^{deg f} f(t/ζ)`, the characteristic polynomial of `ζA` when
/// `f` is that of `A`. Already monic.
pub fn twist_poly(f: &Poly, zeta: Fe) -> Poly {
    let field = f.field();
    let m = f.deg();
    let coeffs = f.coeffs().iter().enumerate().map(|(i, &c)| field.mul(c, field.pow(zeta, (m - i) as u64))).collect();
    Poly::new(field, coeffs)
}

pub fn twist_data(data: &PrimaryData, zeta: Fe) -> PrimaryData {
    normalize(data.iter().map(|(f, l)| (twist_poly(f, zeta), l.clone())).collect())
}

#[derive(Clone, Debug)]
pub struct ClassRep {
    pub field: Field,
    pub n: usize,
    pub data: PrimaryData,
    pub centralizer_order: BigUint,
    pub class_size: BigUint,
}

impl ClassRep {
    pub fn new(field: &Field, data: PrimaryData) -> ClassRep {
        let data = normalize(data);
        let n = data.iter().map(|(f, l)| f.deg() * l.iter().sum::<usize>()).sum();
        let q = field.order();
        let centralizer_order = centralizer_order(&data, q);
        let class_size = gl_order(n, q) / &centralizer_order;
        ClassRep { field: field.clone(), n, data, centralizer_order, class_size }
    }

    /// Class of a given matrix.
    pub fn of_matrix(a: &Mat) -> Result<ClassRep> {
        Ok(ClassRep::new(a.field(), canon::primary_data(a)?))
    }

    /// Direct sum of companion matrices of `f^{λ_i}`.
    pub fn representative(&self) -> Mat {
        let blocks: Vec<Mat> =
            self.data.iter().flat_map(|(f, l)| l.iter().map(move |&e| Mat::companion(&f.pow(e as u64)))).collect();
        Mat::block_diag(&self.field, &blocks)
    }

    pub fn centralizer_dim(&self) -> usize {
        centralizer_algebra_dim(&self.data)
    }

    pub fn is_invertible(&self) -> bool {
        self.data.iter().all(|(f, _)| !f.coeff(0).is_zero())
    }

    pub fn twisted(&self, zeta: Fe) -> PrimaryData {
        twist_data(&self.data, zeta)
    }

    pub fn is_twist_fixed(&self, zeta: Fe) -> bool {
        self.twisted(zeta) == self.data
    }

    /// Every Jordan block size over the algebraic closure is divisible by `m`.
    pub fn jordan_blocks_divisible_by(&self, m: usize) -> bool {
        self.data.iter().all(|(_, l)| l.iter().all(|part| part % m == 0))
    }

    pub fn summary(&self) -> ClassSummary {
        ClassSummary {
            data: self.data.iter().map(|(f, l)| PrimaryComponent { f: f.to_string(), partition: l.clone() }).collect(),
            centralizer_order: self.centralizer_order.to_string(),
            class_size: self.class_size.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimaryComponent {
    pub f: String,
    pub partition: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub data: Vec<PrimaryComponent>,
    pub centralizer_order: String,
    pub class_size: String,
}

/// All classes of `M_n(F_q)` (or of `GL_n(F_q)` when `restrict_invertible`),
/// in a fixed order determined by the canonical order of irreducibles.
pub fn enumerate_classes(n: usize, field: &Field, restrict_invertible: bool, limits: &Limits) -> Result<Vec<ClassRep>> {
    let mut irr: Vec<Poly> = Vec::new();
    for d in 1..=n {
        for f in irreducibles_of_degree(field, d, limits.max_irreducible_scan)? {
            if restrict_invertible && f.coeff(0).is_zero() {
                continue;
            }
            irr.push(f);
        }
    }
    let parts: Vec<Vec<Vec<usize>>> = (0..=n).map(partitions).collect();
    let mut out = Vec::new();
    let mut cur: PrimaryData = Vec::new();
    collect(&irr, &parts, 0, n, &mut cur, &mut out, field, limits)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn collect(
    irr: &[Poly],
    parts: &[Vec<Vec<usize>>],
    start: usize,
    rem: usize,
    cur: &mut PrimaryData,
    out: &mut Vec<ClassRep>,
    field: &Field,
    limits: &Limits,
) -> Result<()> {
    if rem == 0 {
        if out.len() >= limits.max_classes {
            return Err(Error::LimitExceeded {
                what: "conjugacy class count",
                size: out.len() as u128 + 1,
                limit: limits.max_classes as u128,
            });
        }
        out.push(ClassRep::new(field, cur.clone()));
        return Ok(());
    }
    for (i, f) in irr.iter().enumerate().skip(start) {
        let d = f.deg();
        if d > rem {
            break;
        }
        for size in 1..=rem / d {
            for lambda in &parts[size] {
                cur.push((f.clone(), lambda.clone()));
                collect(irr, parts, i + 1, rem - d * size, cur, out, field, limits)?;
                cur.pop();
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::collections::HashSet;

    fn gf(p: u64, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    fn all_matrices(field: &Field, n: usize) -> Vec<Mat> {
        let q = field.order();
        (0..q.pow((n * n) as u32))
            .map(|mut code| {
                Mat::from_fn(field, n, n, |_, _| {
                    let v = code % q;
                    code /= q;
                    field.from_tuple_key(v)
                })
            })
            .collect()
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|m| partitions(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(conjugate(&[3, 1]), vec![2, 1, 1]);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), BigUint::from(6u32));
        assert_eq!(gl_order(2, 3), BigUint::from(48u32));
        assert_eq!(gl_order(3, 2), BigUint::from(168u32));
    }

    #[test]
    fn centralizer_examples() {
        let f2 = gf(2, 1);
        let zero = ClassRep::new(&f2, vec![(Poly::t(&f2), vec![1, 1])]);
        assert_eq!(zero.centralizer_order, BigUint::from(6u32));
        let j2 = ClassRep::new(&f2, vec![(Poly::t(&f2), vec![2])]);
        assert_eq!(j2.centralizer_order, BigUint::from(2u32));
    }

    #[test]
    fn class_counts_and_completeness() {
        let f2 = gf(2, 1);
        let limits = Limits::default();
        assert_eq!(enumerate_classes(1, &f2, true, &limits).unwrap().len(), 1);
        // orbit counts from exhaustive scans: M2(F2) 6, GL2(F3) 8, M2(F3) 12
        assert_eq!(enumerate_classes(2, &f2, false, &limits).unwrap().len(), 6);
        let f3 = gf(3, 1);
        assert_eq!(enumerate_classes(2, &f3, true, &limits).unwrap().len(), 8);
        assert_eq!(enumerate_classes(2, &f3, false, &limits).unwrap().len(), 12);
        for (field, n) in [(gf(2, 1), 3), (gf(3, 1), 2), (gf(2, 2), 3), (gf(5, 1), 2), (gf(2, 1), 4)] {
            let q = field.order();
            let all = enumerate_classes(n, &field, false, &limits).unwrap();
            let total: BigUint = all.iter().map(|c| &c.class_size).sum();
            assert_eq!(total, Pow::pow(&BigUint::from(q), n * n));
            let inv = enumerate_classes(n, &field, true, &limits).unwrap();
            let total: BigUint = inv.iter().map(|c| &c.class_size).sum();
            assert_eq!(total, gl_order(n, q));
            assert!(inv.iter().all(|c| c.is_invertible()));
        }
    }

    #[test]
    fn representatives_reconstruct_data() {
        let limits = Limits::default();
        for (field, n) in [(gf(2, 1), 4), (gf(3, 1), 3), (gf(2, 2), 2)] {
            let classes = enumerate_classes(n, &field, false, &limits).unwrap();
            let mut seen = HashSet::new();
            for c in &classes {
                let rep = c.representative();
                assert_eq!(canon::primary_data(&rep).unwrap(), c.data);
                assert_eq!(rep.centralizer_dim().unwrap(), c.centralizer_dim());
                assert!(seen.insert(canon::invariant_factors(&rep).unwrap()));
            }
        }
    }

    #[test]
    fn centralizer_formula_matches_commutant_scan() {
        let limits = Limits::default();
        for (field, n) in [(gf(2, 1), 2), (gf(3, 1), 2), (gf(2, 1), 3)] {
            let mats = all_matrices(&field, n);
            for c in enumerate_classes(n, &field, false, &limits).unwrap() {
                let rep = c.representative();
                let brute = mats.iter().filter(|g| g.is_invertible() && &rep * *g == *g * &rep).count();
                assert_eq!(c.centralizer_order, BigUint::from(brute));
            }
        }
    }

    #[test]
    fn twist_is_an_involution_of_order_d() {
        let limits = Limits::default();
        for (q, d) in [(3u64, 2u64), (5, 4), (4, 3), (7, 3)] {
            let field = Field::of_order(q).unwrap();
            let zeta = field.root_of_unity(d).unwrap();
            for c in enumerate_classes(2, &field, true, &limits).unwrap() {
                let mut data = c.data.clone();
                for _ in 0..d {
                    data = twist_data(&data, zeta);
                }
                assert_eq!(data, c.data);
                let rep = c.representative();
                let twisted = canon::primary_data(&rep.scale(zeta)).unwrap();
                assert_eq!(twisted, c.twisted(zeta));
            }
        }
    }

    #[test]
    fn class_limit_is_enforced() {
        let limits = Limits { max_classes: 3, ..Limits::default() };
        let err = enumerate_classes(2, &gf(3, 1), false, &limits).unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { .. }));
        assert!(!gl_order(3, 3).is_zero());
    }
}
