//! Point counts over `F_q` and dimension estimates from their growth.

pub mod classes;
pub mod count;
pub mod fit;

use num_bigint::BigUint;
use serde::Serialize;

pub use classes::{enumerate_classes, gl_order, ClassRep, Limits};
pub use count::{count_commuting_pairs, count_group_pairs, count_lie_pairs, count_w, lie_census, Strategy};
pub use fit::{estimate_dimension, DimensionFit};

use crate::error::{Error, Result};
use crate::gf::{prime_power, Field};
use crate::typea::group_dims;
use crate::weyl::component_dimensions;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variety {
    /// `[A,B] = cI` with `c` the image of an integer in the prime field.
    Lie {
        c: i64,
    },
    Commuting,
    /// `[x,y] = ζI` with `ζ` the field's canonical root of unity of order `d`.
    Group {
        d: usize,
    },
    W {
        d: usize,
    },
}

impl Variety {
    pub fn name(&self) -> &'static str {
        match self {
            Variety::Lie { .. } => "lie",
            Variety::Commuting => "commuting",
            Variety::Group { .. } => "group",
            Variety::W { .. } => "W",
        }
    }

    /// Dimension predicted by the closed-form formulas, `None` when the
    /// variety is empty.
    pub fn expected_dimension(&self, n: usize, p: u64) -> Result<Option<i64>> {
        let sq = (n * n) as i64;
        Ok(match *self {
            Variety::Lie { c } if c.rem_euclid(p as i64) != 0 => {
                if !n.is_multiple_of(p as usize) {
                    None
                } else {
                    Some(component_dimensions(p as usize, n)?.dim_c as i64)
                }
            }
            Variety::Lie { .. } | Variety::Commuting => Some(sq + n as i64),
            Variety::Group { d } => Some(group_dims(n, d)?.dim_v as i64),
            Variety::W { d } => Some(group_dims(n, d)?.dim_w as i64),
        })
    }

    pub fn count(&self, n: usize, field: &Field, strategy: Strategy, limits: &Limits) -> Result<BigUint> {
        match *self {
            Variety::Lie { c } => count_lie_pairs(n, field, field.from_int(c), strategy, limits),
            Variety::Commuting => count_commuting_pairs(n, field, strategy, limits),
            Variety::Group { d } => count_group_pairs(n, field, field.root_of_unity(d as u64)?, strategy, limits),
            Variety::W { d } => count_w(n, field, field.root_of_unity(d as u64)?, strategy, limits),
        }
    }

    fn d(&self) -> Option<usize> {
        match *self {
            Variety::Group { d } | Variety::W { d } => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CountEntry {
    pub q: u64,
    pub count: String,
    pub strategy: Strategy,
}

#[derive(Clone, Debug, Serialize)]
pub struct CountReport {
    pub variety: String,
    pub n: usize,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub counts: Vec<CountEntry>,
    pub fitted_dimension: Option<i64>,
    pub raw_exponent: Option<String>,
    pub residual: Option<String>,
    pub expected_dimension: Option<i64>,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Present when two strategies ran at some q; false if any pair differs.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategies_agree: Option<bool>,
}

/// Counts the variety at each `q` with each strategy and fits the growth
/// exponent. The fit uses one count per `q`.
pub fn count_report(
    variety: Variety,
    n: usize,
    qs: &[u64],
    strategies: &[Strategy],
    limits: &Limits,
) -> Result<CountReport> {
    if qs.is_empty() || strategies.is_empty() {
        return Err(Error::Precondition("need at least one q and one strategy".into()));
    }
    let (p, _) = prime_power(qs[0]).ok_or_else(|| Error::Precondition(format!("{} is not a prime power", qs[0])))?;
    let mut counts = Vec::new();
    let mut points = Vec::new();
    let mut agree = true;
    for &q in qs {
        let field = Field::of_order(q)?;
        if field.p() != p {
            return Err(Error::Precondition("all q must be powers of the same prime".into()));
        }
        let mut first: Option<BigUint> = None;
        for &s in strategies {
            let c = variety.count(n, &field, s, limits)?;
            counts.push(CountEntry { q, count: c.to_string(), strategy: s });
            match &first {
                Some(f) => agree &= *f == c,
                None => first = Some(c),
            }
        }
        points.push((q, first.expect("one strategy")));
    }
    let fit = if points.len() >= 2 && points.iter().all(|(_, c)| *c > BigUint::default()) {
        Some(estimate_dimension(&points)?)
    } else {
        None
    };
    let expected = variety.expected_dimension(n, p)?;
    let matched = match (&fit, expected) {
        (Some(f), Some(e)) => f.fitted == e && f.residual_below(35, 100),
        _ => false,
    };
    Ok(CountReport {
        variety: variety.name().to_string(),
        n,
        p,
        d: variety.d(),
        counts,
        fitted_dimension: fit.as_ref().map(|f| f.fitted),
        raw_exponent: fit.as_ref().map(|f| f.raw_decimal()),
        residual: fit.as_ref().map(|f| f.residual_decimal()),
        expected_dimension: expected,
        matched: matched && agree,
        strategies_agree: (strategies.len() > 1).then_some(agree),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lie_report_fits_five() {
        let r = count_report(Variety::Lie { c: 1 }, 2, &[2, 4, 8], &[Strategy::Class], &Limits::default()).unwrap();
        assert_eq!(r.fitted_dimension, Some(5));
        assert_eq!(r.expected_dimension, Some(5));
        assert!(r.matched);
        let json = serde_json::to_string(&r).unwrap();
        assert!(json.starts_with(r#"{"variety":"lie","n":2,"p":2,"counts":[{"q":2,"count":"24","strategy":"class"}"#));
    }

    #[test]
    fn empty_variety_has_no_fit() {
        let r = count_report(Variety::Lie { c: 1 }, 2, &[3, 9], &[Strategy::Class], &Limits::default()).unwrap();
        assert_eq!(r.fitted_dimension, None);
        assert_eq!(r.expected_dimension, None);
        assert!(!r.matched);
    }

    #[test]
    fn group_report_has_d() {
        let r = count_report(Variety::Group { d: 2 }, 2, &[3], &[Strategy::Class, Strategy::Brute], &Limits::default())
            .unwrap();
        assert_eq!(r.d, Some(2));
        assert_eq!(r.strategies_agree, Some(true));
        assert_eq!(r.counts[0].count, "96");
    }
}
