//! Solutions of `[x,y] = x⁻¹y⁻¹xy = ζI` in `GL_n`: the block form `D`, the
//! block permutation `ρ`, conjugacy of `x` and `ζx`, and solution sets as
//! centralizer cosets.

use num_bigint::BigUint;
use serde::Serialize;

use crate::canon;
use crate::census::classes::ClassRep;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::mat::Mat;

#[derive(Clone, Debug)]
pub struct ZetaInstance {
    pub field: Field,
    pub n: usize,
    pub d: usize,
    pub zeta: Fe,
}

impl ZetaInstance {
    /// Uses the field's canonical root of unity of order `d`.
    pub fn new(field: &Field, n: usize, d: usize) -> Result<ZetaInstance> {
        let zeta = field.root_of_unity(d as u64)?;
        ZetaInstance::with_zeta(field, n, zeta)
    }

    pub fn with_zeta(field: &Field, n: usize, zeta: Fe) -> Result<ZetaInstance> {
        let d = field.mult_order(zeta)? as usize;
        if n == 0 || !n.is_multiple_of(d) {
            return Err(Error::Precondition(format!("order {d} of zeta does not divide n = {n}")));
        }
        Ok(ZetaInstance { field: field.clone(), n, d, zeta })
    }

    pub fn block(&self) -> usize {
        self.n / self.d
    }
}

/// `D = diag(A, ζA, …, ζ^{d−1}A)`.
pub fn build_d(inst: &ZetaInstance, a: &Mat) -> Result<Mat> {
    if a.rows() != inst.block() || !a.is_square() {
        return Err(Error::ShapeMismatch(format!("block seed must be {0}x{0}", inst.block())));
    }
    if !a.is_invertible() {
        return Err(Error::Singular);
    }
    let f = &inst.field;
    let blocks: Vec<Mat> = (0..inst.d).map(|i| a.scale(f.pow(inst.zeta, i as u64))).collect();
    Ok(Mat::block_diag(f, &blocks))
}

/// Identity blocks on the block subdiagonal and in the top-right corner.
pub fn build_rho(field: &Field, n: usize, d: usize) -> Result<Mat> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::Precondition(format!("d = {d} does not divide n = {n}")));
    }
    let m = n / d;
    let mut rho = Mat::zeros(field, n, n);
    let id = Mat::identity(field, m);
    for i in 0..d {
        rho.set_block(((i + 1) % d) * m, i * m, &id);
    }
    Ok(rho)
}

#[derive(Clone, Debug)]
pub struct CentralCommutator {
    pub d: Mat,
    pub rho: Mat,
    pub commutator: Mat,
    pub equals_zeta_identity: bool,
}

pub fn verify_central_commutator(inst: &ZetaInstance, a: &Mat) -> Result<CentralCommutator> {
    let d = build_d(inst, a)?;
    let rho = build_rho(&inst.field, inst.n, inst.d)?;
    let commutator = d.group_commutator(&rho)?;
    let equals = commutator == Mat::scalar(&inst.field, inst.n, inst.zeta);
    Ok(CentralCommutator { d, rho, commutator, equals_zeta_identity: equals })
}

/// Whether `x` and `ζx` have the same invariant factors.
pub fn is_conjugate_to_zeta_x(x: &Mat, zeta: Fe) -> Result<bool> {
    Ok(canon::invariant_factors(x)? == canon::invariant_factors(&x.scale(zeta))?)
}

#[derive(Clone, Debug)]
pub enum SolutionSet {
    Empty,
    /// All solutions are `C_GL(x)·witness`.
    Coset {
        witness: Mat,
        centralizer_order: BigUint,
    },
}

impl SolutionSet {
    pub fn count(&self) -> BigUint {
        match self {
            SolutionSet::Empty => BigUint::default(),
            SolutionSet::Coset { centralizer_order, .. } => centralizer_order.clone(),
        }
    }

    /// `y` is a solution iff `y·witness⁻¹` commutes with `x`.
    pub fn contains(&self, x: &Mat, y: &Mat) -> Result<bool> {
        match self {
            SolutionSet::Empty => Ok(false),
            SolutionSet::Coset { witness, .. } => {
                if !y.is_invertible() {
                    return Ok(false);
                }
                let c = y.checked_mul(&witness.inverse()?)?;
                Ok(c.checked_mul(x)? == x.checked_mul(&c)?)
            }
        }
    }
}

/// Solutions `y` of `[x,y] = ζI`, i.e. `y⁻¹xy = ζx`. The witness is the
/// similarity transform carrying `ζx` to `x`.
pub fn solution_set_for_x(x: &Mat, zeta: Fe) -> Result<SolutionSet> {
    if !x.is_invertible() {
        return Err(Error::Singular);
    }
    let zx = x.scale(zeta);
    let Some(witness) = canon::similarity_transform(&zx, x)? else {
        return Ok(SolutionSet::Empty);
    };
    debug_assert_eq!(x.group_commutator(&witness)?, Mat::scalar(x.field(), x.rows(), zeta));
    let centralizer_order = ClassRep::of_matrix(x)?.centralizer_order;
    Ok(SolutionSet::Coset { witness, centralizer_order })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupDims {
    pub n: usize,
    pub d: usize,
    pub dim_v: usize,
    pub dim_w: usize,
}

pub fn group_dims(n: usize, d: usize) -> Result<GroupDims> {
    if d == 0 || n == 0 || !n.is_multiple_of(d) {
        return Err(Error::Precondition(format!("d = {d} does not divide n = {n}")));
    }
    let dim_v = n * n + n / d;
    Ok(GroupDims { n, d, dim_v, dim_w: dim_v - n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    fn gl(field: &Field, n: usize) -> Vec<Mat> {
        let q = field.order();
        (0..q.pow((n * n) as u32))
            .map(|mut code| {
                Mat::from_fn(field, n, n, |_, _| {
                    let v = code % q;
                    code /= q;
                    field.from_tuple_key(v)
                })
            })
            .filter(|m| m.is_invertible())
            .collect()
    }

    #[test]
    fn d_and_rho_examples() {
        let f3 = gf(3, 1);
        let inst = ZetaInstance::new(&f3, 2, 2).unwrap();
        assert_eq!(inst.zeta, f3.from_int(2));
        let d = build_d(&inst, &Mat::identity(&f3, 1)).unwrap();
        assert_eq!(d, Mat::from_ints(&f3, &[&[1, 0], &[0, 2]]));
        assert_eq!(build_rho(&f3, 2, 2).unwrap(), Mat::from_ints(&f3, &[&[0, 1], &[1, 0]]));
        assert_eq!(build_rho(&f3, 3, 1).unwrap(), Mat::identity(&f3, 3));
        assert!(build_rho(&f3, 3, 2).is_err());
        assert!(build_d(&inst, &Mat::zeros(&f3, 1, 1)).is_err());

        let trivial = ZetaInstance::new(&f3, 2, 1).unwrap();
        let a = Mat::from_ints(&f3, &[&[1, 1], &[0, 1]]);
        assert_eq!(build_d(&trivial, &a).unwrap(), a);
    }

    #[test]
    fn rho_shifts_blocks() {
        let f3 = gf(3, 1);
        let inst = ZetaInstance::new(&f3, 4, 2).unwrap();
        let a = Mat::from_ints(&f3, &[&[1, 2], &[0, 1]]);
        let d = build_d(&inst, &a).unwrap();
        let rho = build_rho(&f3, 4, 2).unwrap();
        let shifted = &(&rho.inverse().unwrap() * &d) * &rho;
        assert_eq!(shifted, Mat::block_diag(&f3, &[a.scale(inst.zeta), a]));
        assert_eq!(rho.pow(2).unwrap(), Mat::identity(&f3, 4));
    }

    #[test]
    fn central_commutator_examples() {
        let f3 = gf(3, 1);
        let inst = ZetaInstance::new(&f3, 2, 2).unwrap();
        let cc = verify_central_commutator(&inst, &Mat::identity(&f3, 1)).unwrap();
        assert!(cc.equals_zeta_identity);
        assert_eq!(cc.commutator, Mat::scalar(&f3, 2, f3.neg(Fe::ONE)));

        let f4 = gf(2, 2);
        let inst = ZetaInstance::new(&f4, 3, 3).unwrap();
        assert_eq!(inst.zeta, f4.gen());
        assert!(verify_central_commutator(&inst, &Mat::identity(&f4, 1)).unwrap().equals_zeta_identity);

        let f5 = gf(5, 1);
        let inst = ZetaInstance::with_zeta(&f5, 4, f5.from_int(4)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let a = Mat::random_invertible(&f5, 2, &mut rng);
            let d = build_d(&inst, &a).unwrap();
            assert_eq!(d.det().unwrap(), f5.mul(a.det().unwrap(), a.scale(inst.zeta).det().unwrap()));
            assert!(verify_central_commutator(&inst, &a).unwrap().equals_zeta_identity);
        }
        assert!(ZetaInstance::with_zeta(&f5, 3, f5.from_int(4)).is_err());
    }

    #[test]
    fn conjugacy_examples() {
        let f3 = gf(3, 1);
        let minus = f3.neg(Fe::ONE);
        let x = Mat::from_ints(&f3, &[&[1, 0], &[0, 2]]);
        assert!(is_conjugate_to_zeta_x(&x, minus).unwrap());
        assert!(is_conjugate_to_zeta_x(&x, Fe::ONE).unwrap());
        assert!(!is_conjugate_to_zeta_x(&Mat::identity(&f3, 2), minus).unwrap());
        assert!(matches!(solution_set_for_x(&Mat::identity(&f3, 2), minus).unwrap(), SolutionSet::Empty));
    }

    #[test]
    fn solution_coset_law_exhaustive() {
        for q in [3u64, 5] {
            let field = Field::of_order(q).unwrap();
            let zeta = field.neg(Fe::ONE);
            let group = gl(&field, 2);
            let mut total = 0usize;
            for x in &group {
                let set = solution_set_for_x(x, zeta).unwrap();
                let solutions: Vec<&Mat> = group.iter().filter(|y| x * *y == (*y * x).scale(zeta)).collect();
                assert_eq!(BigUint::from(solutions.len()), set.count());
                assert_eq!(solutions.is_empty(), !is_conjugate_to_zeta_x(x, zeta).unwrap());
                for y in &solutions {
                    assert!(set.contains(x, y).unwrap());
                }
                total += solutions.len();
            }
            if q == 3 {
                assert_eq!(total, 96);
            }
        }
    }

    #[test]
    fn group_dimension_table() {
        let dims = |n, d| {
            let g = group_dims(n, d).unwrap();
            (g.dim_v, g.dim_w)
        };
        assert_eq!(dims(2, 2), (5, 3));
        assert_eq!(dims(3, 3), (10, 7));
        assert_eq!(dims(4, 2), (18, 14));
        assert!(group_dims(3, 2).is_err());
    }
}
