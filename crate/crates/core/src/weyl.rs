//! Solutions of `[A,B] = I` in characteristic p: the p×p Weyl pairs, the
//! block pairs `X(a_1,…,a_r)`, `Y`, the family `Y + f(X)`, split pairs, and
//! the dimension formulas for the commuting varieties of type A.

use rand::Rng;
use serde::Serialize;

use crate::canon;
use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::mat::Mat;
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct WeylPair {
    pub p: usize,
    pub alpha: Fe,
    pub beta: Fe,
    pub a: Mat,
    pub b: Mat,
}

impl WeylPair {
    pub fn commutator_is_identity(&self) -> bool {
        is_identity_commutator(&self.a, &self.b)
    }

    /// `A^p = α^p I` and `B^p = β^p I`.
    pub fn central_powers_hold(&self) -> bool {
        let f = self.a.field();
        let p = self.p as u64;
        self.a.pow(p).ok() == Some(Mat::scalar(f, self.p, f.pow(self.alpha, p)))
            && self.b.pow(p).ok() == Some(Mat::scalar(f, self.p, f.pow(self.beta, p)))
    }

    /// Dimension of the span of all words in `A`, `B` of length ≤ 2p−2.
    pub fn algebra_dimension(&self) -> usize {
        generated_algebra_dimension(&[&self.a, &self.b], 2 * self.p - 2)
    }
}

/// Nilpotent part `A_0`: ones on the subdiagonal.
pub fn a0(field: &Field, p: usize) -> Mat {
    Mat::from_fn(field, p, p, |i, j| if i == j + 1 { Fe::ONE } else { Fe::ZERO })
}

/// Nilpotent part `B_0`: superdiagonal `−1, −2, …, −(p−1)`.
pub fn b0(field: &Field, p: usize) -> Mat {
    Mat::from_fn(field, p, p, |i, j| if j == i + 1 { field.neg(field.from_int(j as i64)) } else { Fe::ZERO })
}

pub fn weyl_pair(field: &Field, alpha: Fe, beta: Fe) -> WeylPair {
    let p = field.p() as usize;
    let mut a = a0(field, p);
    a.set(0, p - 1, field.add(a.get(0, p - 1), field.pow(alpha, p as u64)));
    let b = &b0(field, p) + &Mat::scalar(field, p, beta);
    WeylPair { p, alpha, beta, a, b }
}

#[derive(Clone, Debug)]
pub struct BlockPair {
    pub p: usize,
    pub r: usize,
    pub scalars: Vec<Fe>,
    pub x: Mat,
    pub y: Mat,
}

impl BlockPair {
    pub fn n(&self) -> usize {
        self.p * self.r
    }

    pub fn commutator_is_identity(&self) -> bool {
        is_identity_commutator(&self.x, &self.y)
    }

    pub fn family(&self) -> Result<SolutionFamily> {
        SolutionFamily::new(&self.x, &self.y)
    }
}

/// `X` has diagonal blocks `A_0 + a_i I` and superdiagonal blocks
/// `B_0^{p−1}`; `Y = diag(B_0, …, B_0)`.
pub fn build_block_pair(field: &Field, scalars: &[Fe]) -> Result<BlockPair> {
    let r = scalars.len();
    if r == 0 {
        return Err(Error::Precondition("at least one scalar is required".into()));
    }
    let p = field.p() as usize;
    let n = p * r;
    let a0 = a0(field, p);
    let b0 = b0(field, p);
    let upper = b0.pow(p as u64 - 1)?;
    let mut x = Mat::zeros(field, n, n);
    for (i, &a) in scalars.iter().enumerate() {
        x.set_block(i * p, i * p, &(&a0 + &Mat::scalar(field, p, a)));
        if i + 1 < r {
            x.set_block(i * p, (i + 1) * p, &upper);
        }
    }
    let y = Mat::block_diag(field, &vec![b0; r]);
    Ok(BlockPair { p, r, scalars: scalars.to_vec(), x, y })
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelAction {
    pub p: usize,
    /// `L·e_p = c·e_p`.
    pub coefficient: u64,
    pub is_multiple_of_last: bool,
    /// `c = ±(p−1)!` in the field.
    pub matches_factorial: bool,
    pub x_pow_p_nonzero: bool,
    pub x_pow_p_is_block_l: bool,
}

impl KernelAction {
    pub fn passed(&self) -> bool {
        self.coefficient != 0
            && self.is_multiple_of_last
            && self.matches_factorial
            && self.x_pow_p_nonzero
            && self.x_pow_p_is_block_l
    }
}

/// For `r = 2` and zero scalars, `X^p = [[0, L], [0, 0]]` with
/// `L = Σ_k A_0^k B_0^{p−1} A_0^{p−1−k}`, and `L e_p` is a nonzero multiple of `e_p`.
pub fn kernel_action_check(pair: &BlockPair) -> Result<KernelAction> {
    if pair.r != 2 || pair.scalars.iter().any(|a| !a.is_zero()) {
        return Err(Error::Precondition("kernel action needs r = 2 and zero scalars".into()));
    }
    let field = pair.x.field();
    let p = pair.p;
    let a0 = a0(field, p);
    let bp = b0(field, p).pow(p as u64 - 1)?;
    let mut l = Mat::zeros(field, p, p);
    for k in 0..p {
        let term = &(&a0.pow(k as u64)? * &bp) * &a0.pow((p - 1 - k) as u64)?;
        l = &l + &term;
    }
    let xp = pair.x.pow(p as u64)?;
    let mut expected = Mat::zeros(field, 2 * p, 2 * p);
    expected.set_block(0, p, &l);

    let mut ep = vec![Fe::ZERO; p];
    ep[p - 1] = Fe::ONE;
    let image = l.mul_vec(&ep);
    let c = image[p - 1];
    let is_multiple = image[..p - 1].iter().all(|v| v.is_zero());
    let fact = (1..p as i64).fold(field.one(), |acc, i| field.mul(acc, field.from_int(i)));
    Ok(KernelAction {
        p,
        coefficient: field.tuple_key(c),
        is_multiple_of_last: is_multiple,
        matches_factorial: c == fact || c == field.neg(fact),
        x_pow_p_nonzero: !xp.is_zero(),
        x_pow_p_is_block_l: xp == expected,
    })
}

/// `{Y + f(X) : deg f ≤ n−1}` for regular `X` with `[X,Y] = I`.
#[derive(Clone, Debug)]
pub struct SolutionFamily {
    pub x: Mat,
    pub y: Mat,
    /// `vec(X^k)` as columns, `k = 0..n`.
    powers: Mat,
}

impl SolutionFamily {
    pub fn new(x: &Mat, y: &Mat) -> Result<SolutionFamily> {
        if !is_identity_commutator(x, y) {
            return Err(Error::Precondition("[X,Y] is not the identity".into()));
        }
        if !canon::is_regular(x)? {
            return Err(Error::Precondition("X is not regular".into()));
        }
        let n = x.rows();
        let field = x.field();
        let mut cols = Vec::with_capacity(n);
        let mut power = Mat::identity(field, n);
        for _ in 0..n {
            cols.push(power.data().to_vec());
            power = &power * x;
        }
        Ok(SolutionFamily { x: x.clone(), y: y.clone(), powers: Mat::from_columns(field, &cols) })
    }

    pub fn n(&self) -> usize {
        self.x.rows()
    }

    pub fn member(&self, f: &Poly) -> Result<Mat> {
        if f.deg() >= self.n() && !f.is_zero() {
            return Err(Error::Precondition(format!("degree {} exceeds n - 1", f.deg())));
        }
        self.y.checked_add(&self.x.eval_poly(f)?)
    }

    /// Recovers `f` with `Y' = Y + f(X)`, or `None` if `Y'` is not in the family.
    pub fn recover(&self, y_prime: &Mat) -> Result<Option<Poly>> {
        let diff = y_prime.checked_sub(&self.y)?;
        Ok(match self.powers.solve_affine(diff.data())? {
            crate::mat::AffineSolution::Inconsistent => None,
            crate::mat::AffineSolution::Solutions { particular, .. } => Some(Poly::new(self.x.field(), particular)),
        })
    }

    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<(Poly, Mat)> {
        let field = self.x.field();
        let f = Poly::new(field, (0..self.n()).map(|_| field.random(rng)).collect());
        let m = self.member(&f)?;
        Ok((f, m))
    }

    /// Compares the family with the full affine solution space of
    /// `[X, Y'] = I`: both have dimension n, `Y` solves it, and each kernel
    /// direction of the solution space is a polynomial in `X`.
    pub fn matches_commutator_solutions(&self) -> Result<FamilyComparison> {
        let n = self.n();
        let field = self.x.field();
        let sols = self.x.commutator_solutions(&Mat::identity(field, n))?;
        let Some(sols) = sols else {
            return Ok(FamilyComparison { dimension: None, n, contains_base: false, kernel_in_family: false });
        };
        let zero_based = SolutionFamily { x: self.x.clone(), y: Mat::zeros(field, n, n), powers: self.powers.clone() };
        let mut kernel_in_family = true;
        for k in &sols.kernel {
            kernel_in_family &= zero_based.recover(k)?.is_some();
        }
        let particular_in_family = self.recover(&sols.particular)?.is_some();
        Ok(FamilyComparison {
            dimension: Some(sols.dimension()),
            n,
            contains_base: particular_in_family,
            kernel_in_family,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyComparison {
    pub dimension: Option<usize>,
    pub n: usize,
    pub contains_base: bool,
    pub kernel_in_family: bool,
}

impl FamilyComparison {
    pub fn equal(&self) -> bool {
        self.dimension == Some(self.n) && self.contains_base && self.kernel_in_family
    }
}

/// `A = diag(A_0 + a_i I)`, `B = diag(B_0 + b_i I)`.
pub fn generic_split_pair(field: &Field, a: &[Fe], b: &[Fe]) -> Result<(Mat, Mat)> {
    if a.len() != b.len() || a.is_empty() {
        return Err(Error::Precondition("need equally many a and b scalars".into()));
    }
    let p = field.p() as usize;
    let a0 = a0(field, p);
    let b0 = b0(field, p);
    let ablocks: Vec<Mat> = a.iter().map(|&s| &a0 + &Mat::scalar(field, p, s)).collect();
    let bblocks: Vec<Mat> = b.iter().map(|&s| &b0 + &Mat::scalar(field, p, s)).collect();
    Ok((Mat::block_diag(field, &ablocks), Mat::block_diag(field, &bblocks)))
}

/// Dimension of `{Z : ZA = AZ, ZB = BZ}`.
pub fn joint_centralizer_dim(a: &Mat, b: &Mat) -> Result<usize> {
    let sa = a.commutator_system()?;
    let sb = b.commutator_system()?;
    let n2 = sa.rows();
    let mut stacked = Mat::zeros(a.field(), 2 * n2, n2);
    stacked.set_block(0, 0, &sa);
    stacked.set_block(n2, 0, &sb);
    Ok(n2 - stacked.rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentDimensions {
    pub p: usize,
    pub n: usize,
    pub r: usize,
    pub dim_c: usize,
    pub dim_u1: usize,
    pub dim_u2_image: usize,
    pub dims_pgl: (usize, usize),
    pub dims_sl: usize,
    pub dims_psl_times_k: (usize, usize),
    pub pgl_components_equal: bool,
}

pub fn component_dimensions(p: usize, n: usize) -> Result<ComponentDimensions> {
    if p < 2 || n == 0 || !n.is_multiple_of(p) {
        return Err(Error::Precondition(format!("p = {p} must divide n = {n}")));
    }
    let r = n / p;
    let sq = n * n;
    let dims_pgl = (sq + n - 2, sq + r - 1);
    Ok(ComponentDimensions {
        p,
        n,
        r,
        dim_c: sq + r,
        dim_u1: sq + n,
        dim_u2_image: sq + r - 1,
        dims_pgl,
        dims_sl: sq + n - 2,
        // n ≥ 2 whenever p | n
        dims_psl_times_k: (sq + r - 1, sq + n - 4),
        pgl_components_equal: dims_pgl.0 == dims_pgl.1,
    })
}

/// A solution of `[A,B] = I` drawn as `g·(X(a), Y + f(X(a)))·g⁻¹` with
/// random scalars, random `f` and random invertible `g`.
pub fn sample_solution<R: Rng + ?Sized>(field: &Field, r: usize, rng: &mut R) -> Result<(Mat, Mat)> {
    let scalars: Vec<Fe> = (0..r).map(|_| field.random(rng)).collect();
    let pair = build_block_pair(field, &scalars)?;
    let (_, y) = pair.family()?.random_member(rng)?;
    let g = Mat::random_invertible(field, pair.n(), rng);
    let gi = g.inverse()?;
    Ok((&(&g * &pair.x) * &gi, &(&g * &y) * &gi))
}

fn is_identity_commutator(a: &Mat, b: &Mat) -> bool {
    a.lie_commutator(b).is_ok_and(|c| c == Mat::identity(a.field(), a.rows()))
}

/// Span of products of the generators of length ≤ `max_len` (including `I`).
pub fn generated_algebra_dimension(gens: &[&Mat], max_len: usize) -> usize {
    let Some(first) = gens.first() else {
        return 0;
    };
    let field = first.field();
    let n = first.rows();
    let mut basis = Mat::zeros(field, 0, n * n);
    let mut layer = vec![Mat::identity(field, n)];
    let mut spanned = Vec::new();
    for len in 0..=max_len {
        let mut added = Vec::new();
        for w in &layer {
            let mut rows = spanned.clone();
            rows.push(w.data().to_vec());
            let cand = Mat::from_columns(field, &rows).transpose();
            if cand.rank() > basis.rows() {
                basis = cand;
                spanned = rows;
                added.push(w.clone());
            }
        }
        if spanned.len() == n * n || (len > 0 && added.is_empty()) {
            break;
        }
        layer = added.iter().flat_map(|w| gens.iter().map(move |g| w * *g)).collect();
    }
    spanned.len()
}
