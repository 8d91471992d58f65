//! Dimension estimates from point counts: the least-squares slope of
//! `ln count` against `ln q`, in high-precision fixed point.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gf::prime_power;

/// Fractional bits of the fixed-point logarithms.
const PREC: usize = 320;
/// Digits after the decimal point in rendered rationals.
pub const DIGITS: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionFit {
    pub fitted: i64,
    pub raw: BigRational,
    pub residual: BigRational,
}

impl DimensionFit {
    pub fn raw_decimal(&self) -> String {
        to_decimal(&self.raw, DIGITS)
    }

    pub fn residual_decimal(&self) -> String {
        to_decimal(&self.residual, DIGITS)
    }

    pub fn residual_below(&self, num: i64, den: i64) -> bool {
        self.residual < BigRational::new(num.into(), den.into())
    }
}

/// Fits `count ≈ C·q^dim`. Requires at least two points, distinct `q` that
/// are powers of one prime, and positive counts. With two points this is
/// the ratio `(ln c₂ − ln c₁)/(ln q₂ − ln q₁)`.
pub fn estimate_dimension(points: &[(u64, BigUint)]) -> Result<DimensionFit> {
    if points.len() < 2 {
        return Err(Error::Precondition("dimension fit needs at least two points".into()));
    }
    let mut prime = None;
    for (i, (q, count)) in points.iter().enumerate() {
        let (p, _) = prime_power(*q).ok_or_else(|| Error::Precondition(format!("{q} is not a prime power")))?;
        if *prime.get_or_insert(p) != p {
            return Err(Error::Precondition("all q must be powers of the same prime".into()));
        }
        if count.is_zero() {
            return Err(Error::Precondition(format!("count at q = {q} is zero")));
        }
        if points[..i].iter().any(|(r, _)| r == q) {
            return Err(Error::Precondition(format!("q = {q} repeated")));
        }
    }
    let xs: Vec<BigInt> = points.iter().map(|(q, _)| ln_fixed(&BigUint::from(*q))).collect();
    let ys: Vec<BigInt> = points.iter().map(|(_, c)| ln_fixed(c)).collect();
    let n = BigInt::from(points.len());
    let sx: BigInt = xs.iter().sum();
    let sy: BigInt = ys.iter().sum();
    let sxy: BigInt = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let sxx: BigInt = xs.iter().map(|x| x * x).sum();
    let raw = BigRational::new(&n * sxy - &sx * &sy, &n * sxx - &sx * &sx);
    let fitted_r = raw.round();
    let residual = (&raw - &fitted_r).abs();
    let fitted = fitted_r.to_integer().to_i64().ok_or_else(|| Error::Precondition("exponent out of range".into()))?;
    Ok(DimensionFit { fitted, raw, residual })
}

/// `ln x · 2^PREC`, truncated.
pub fn ln_fixed(x: &BigUint) -> BigInt {
    assert!(!x.is_zero(), "ln of zero");
    let e = x.bits() as usize - 1;
    let one = BigInt::one() << PREC;
    // mantissa in [1, 2) as fixed point
    let m = BigInt::from_biguint(Sign::Plus, (x << PREC) >> e);
    let z = ((&m - &one) << PREC) / (&m + &one);
    let ln2 = atanh2(&(&one / 3));
    ln2 * e + atanh2(&z)
}

/// `2·atanh(z)` for fixed-point `|z| ≤ 1/3`.
fn atanh2(z: &BigInt) -> BigInt {
    let z2 = (z * z) >> PREC;
    let mut power = z.clone();
    let mut sum = BigInt::zero();
    let mut k = 1u32;
    while !power.is_zero() {
        sum += &power / k;
        power = (&power * &z2) >> PREC;
        k += 2;
    }
    sum * 2
}

/// Decimal rendering truncated to `digits` places.
pub fn to_decimal(r: &BigRational, digits: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let int = a.numer() / a.denom();
    let mut rem = a.numer() - &int * a.denom();
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    s.push_str(&int.to_string());
    s.push('.');
    for _ in 0..digits {
        rem *= 10;
        let d = &rem / a.denom();
        rem -= &d * a.denom();
        s.push_str(&d.to_string());
    }
    s
}
