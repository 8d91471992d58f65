//! Point counts of `{[A,B] = cI}`, commuting pairs, `{[x,y] = ζI}` and
//! `W = {x : x ~ ζx}` over `F_q`, by brute scan or by class decomposition.

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::classes::{enumerate_classes, gl_order, Limits};
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::mat::Mat;
use crate::typea::is_conjugate_to_zeta_x;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Brute,
    Class,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Brute => "brute",
            Strategy::Class => "class",
        }
    }
}

/// Per-class summary of a Lie census.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCensus {
    pub count: BigUint,
    pub classes: usize,
    pub consistent_classes: usize,
    /// Consistent classes (with `c ≠ 0`) having a Jordan block of size not
    /// divisible by the characteristic.
    pub divisibility_violations: usize,
}

fn brute_size(n: usize, field: &Field, limits: &Limits) -> Result<u64> {
    let size = (field.order() as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if size > limits.max_brute as u128 {
        return Err(Error::LimitExceeded { what: "brute scan", size, limit: limits.max_brute as u128 });
    }
    Ok(size as u64)
}

/// The `code`-th matrix of `M_n(F_q)` in base-q digit order.
pub fn matrix_from_code(field: &Field, n: usize, mut code: u64) -> Mat {
    let q = field.order();
    Mat::from_fn(field, n, n, |_, _| {
        let v = code % q;
        code /= q;
        field.from_tuple_key(v)
    })
}

fn q_pow(q: u64, e: usize) -> BigUint {
    Pow::pow(&BigUint::from(q), e)
}

fn sum(parts: impl ParallelIterator<Item = Result<BigUint>>) -> Result<BigUint> {
    parts.try_reduce(BigUint::zero, |a, b| Ok(a + b))
}

/// Number of `B` with `AB − BA = cI`, or zero.
fn lie_fiber(a: &Mat, c: Fe) -> Result<Option<usize>> {
    let n = a.rows();
    Ok(a.commutator_solutions(&Mat::scalar(a.field(), n, c))?.map(|s| s.dimension()))
}

pub fn count_lie_pairs(n: usize, field: &Field, c: Fe, strategy: Strategy, limits: &Limits) -> Result<BigUint> {
    match strategy {
        Strategy::Class => Ok(lie_census(n, field, c, limits)?.count),
        Strategy::Brute => {
            let size = brute_size(n, field, limits)?;
            let q = field.order();
            sum((0..size).into_par_iter().map(|code| {
                let a = matrix_from_code(field, n, code);
                Ok(lie_fiber(&a, c)?.map_or_else(BigUint::zero, |dim| q_pow(q, dim)))
            }))
        }
    }
}

/// Class-based Lie count with per-class diagnostics: the fiber over a class
/// is `q^{n² − rank ad_A}` when `cI ∈ im ad_A`.
pub fn lie_census(n: usize, field: &Field, c: Fe, limits: &Limits) -> Result<LieCensus> {
    let classes = enumerate_classes(n, field, false, limits)?;
    let q = field.order();
    let p = field.p() as usize;
    let per_class: Vec<(BigUint, bool, bool)> = classes
        .par_iter()
        .map(|class| {
            let rep = class.representative();
            Ok(match lie_fiber(&rep, c)? {
                None => (BigUint::zero(), false, false),
                Some(dim) => {
                    let violation = !c.is_zero() && !class.jordan_blocks_divisible_by(p);
                    (&class.class_size * q_pow(q, dim), true, violation)
                }
            })
        })
        .collect::<Result<_>>()?;
    Ok(LieCensus {
        count: per_class.iter().map(|t| &t.0).sum(),
        classes: classes.len(),
        consistent_classes: per_class.iter().filter(|t| t.1).count(),
        divisibility_violations: per_class.iter().filter(|t| t.2).count(),
    })
}

pub fn count_commuting_pairs(n: usize, field: &Field, strategy: Strategy, limits: &Limits) -> Result<BigUint> {
    count_lie_pairs(n, field, Fe::ZERO, strategy, limits)
}

fn invertible_matrices(n: usize, field: &Field, limits: &Limits) -> Result<Vec<Mat>> {
    let size = brute_size(n, field, limits)?;
    Ok((0..size).into_par_iter().map(|code| matrix_from_code(field, n, code)).filter(|m| m.is_invertible()).collect())
}

fn check_zeta(field: &Field, zeta: Fe) -> Result<()> {
    if !field.contains(zeta) || zeta.is_zero() {
        return Err(Error::Precondition(format!("zeta = {} is not a unit of {field:?}", field.format(zeta))));
    }
    Ok(())
}

/// `#{(x,y) ∈ GL_n² : x⁻¹y⁻¹xy = ζI}`. The class strategy uses
/// `|GL_n(q)| · #{ζ-twist-fixed invertible classes}`.
pub fn count_group_pairs(n: usize, field: &Field, zeta: Fe, strategy: Strategy, limits: &Limits) -> Result<BigUint> {
    check_zeta(field, zeta)?;
    match strategy {
        Strategy::Class => {
            let classes = enumerate_classes(n, field, true, limits)?;
            let fixed = classes.par_iter().filter(|c| c.is_twist_fixed(zeta)).count();
            Ok(gl_order(n, field.order()) * fixed)
        }
        Strategy::Brute => {
            let group = invertible_matrices(n, field, limits)?;
            let pairs = (group.len() as u128).pow(2);
            if pairs > limits.max_brute as u128 {
                return Err(Error::LimitExceeded {
                    what: "brute pair scan",
                    size: pairs,
                    limit: limits.max_brute as u128,
                });
            }
            // x⁻¹y⁻¹xy = ζI  ⇔  xy = ζ·yx
            let count: usize =
                group.par_iter().map(|x| group.iter().filter(|y| x * *y == (*y * x).scale(zeta)).count()).sum();
            Ok(BigUint::from(count))
        }
    }
}

/// `#{x ∈ GL_n : x ~ ζx}`.
pub fn count_w(n: usize, field: &Field, zeta: Fe, strategy: Strategy, limits: &Limits) -> Result<BigUint> {
    check_zeta(field, zeta)?;
    match strategy {
        Strategy::Class => {
            let classes = enumerate_classes(n, field, true, limits)?;
            Ok(classes.iter().filter(|c| c.is_twist_fixed(zeta)).map(|c| &c.class_size).sum())
        }
        Strategy::Brute => {
            let group = invertible_matrices(n, field, limits)?;
            let count = group
                .par_iter()
                .map(|x| is_conjugate_to_zeta_x(x, zeta))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .filter(|&b| b)
                .count();
            Ok(BigUint::from(count))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    fn both<F: Fn(Strategy) -> Result<BigUint>>(f: F) -> BigUint {
        let brute = f(Strategy::Brute).unwrap();
        assert_eq!(brute, f(Strategy::Class).unwrap());
        brute
    }

    #[test]
    fn lie_counts() {
        let l = Limits::default();
        let f2 = gf(2, 1);
        let f3 = gf(3, 1);
        assert_eq!(both(|s| count_lie_pairs(2, &f2, Fe::ONE, s, &l)), BigUint::from(24u32));
        assert_eq!(both(|s| count_lie_pairs(2, &f3, Fe::ONE, s, &l)), BigUint::zero());
        assert_eq!(both(|s| count_lie_pairs(1, &f3, Fe::ZERO, s, &l)), BigUint::from(9u32));
        let f4 = gf(2, 2);
        // q^3 (q^2 - 1)
        assert_eq!(both(|s| count_lie_pairs(2, &f4, Fe::ONE, s, &l)), BigUint::from(64u32 * 15));
    }

    #[test]
    fn commuting_counts() {
        let l = Limits::default();
        assert_eq!(both(|s| count_commuting_pairs(2, &gf(2, 1), s, &l)), BigUint::from(88u32));
        assert_eq!(both(|s| count_commuting_pairs(2, &gf(3, 1), s, &l)), BigUint::from(945u32));
        let q = 4u64;
        let expect = q.pow(6) + q.pow(5) - q.pow(3);
        assert_eq!(both(|s| count_commuting_pairs(2, &gf(2, 2), s, &l)), BigUint::from(expect));
    }

    #[test]
    fn group_counts() {
        let l = Limits::default();
        let f3 = gf(3, 1);
        let minus = f3.neg(Fe::ONE);
        assert_eq!(both(|s| count_group_pairs(2, &f3, minus, s, &l)), BigUint::from(96u32));
        assert_eq!(both(|s| count_group_pairs(2, &f3, Fe::ONE, s, &l)), BigUint::from(384u32));
        assert_eq!(both(|s| count_w(2, &f3, minus, s, &l)), BigUint::from(18u32));
        assert_eq!(both(|s| count_w(2, &f3, Fe::ONE, s, &l)), BigUint::from(48u32));
        let f5 = gf(5, 1);
        let minus = f5.neg(Fe::ONE);
        both(|s| count_w(2, &f5, minus, s, &l));
        assert!(count_group_pairs(2, &f3, Fe::ZERO, Strategy::Class, &l).is_err());
    }

    #[test]
    fn limits_are_reported() {
        let l = Limits { max_brute: 100, ..Limits::default() };
        let err = count_lie_pairs(2, &gf(5, 1), Fe::ONE, Strategy::Brute, &l).unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { what: "brute scan", .. }));
    }

    #[test]
    fn divisibility_holds_for_consistent_classes() {
        let l = Limits::default();
        for (n, field) in [(2, gf(2, 1)), (2, gf(2, 2)), (4, gf(2, 1)), (3, gf(3, 1)), (4, gf(2, 2))] {
            let census = lie_census(n, &field, Fe::ONE, &l).unwrap();
            assert!(census.consistent_classes > 0);
            assert_eq!(census.divisibility_violations, 0);
        }
    }
}
