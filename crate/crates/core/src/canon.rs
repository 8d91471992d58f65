//! Canonical forms: invariant factors from the Smith normal form of `tI - A`,
//! minimal polynomials, rational canonical bases, Jordan types over
//! splitting fields and regularity.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::mat::Mat;
use crate::poly::Poly;

/// Nontrivial invariant factors `d_1 | d_2 | … | d_s`, all monic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFactors {
    pub factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn char_poly(&self, field: &Field) -> Poly {
        self.factors.iter().fold(Poly::one(field), |acc, f| acc.mul(f))
    }

    /// The last factor, which is the minimal polynomial.
    pub fn largest(&self) -> Option<&Poly> {
        self.factors.last()
    }

    /// Regular iff there is exactly one nontrivial factor.
    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn render(&self) -> Vec<String> {
        self.factors.iter().map(|f| f.to_string()).collect()
    }
}

/// Rational canonical form `basis⁻¹ · A · basis = diag(C(d_1), …, C(d_s))`.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub invariants: InvariantFactors,
    /// Columns are the Krylov chains `v_i, A v_i, …` of the cyclic generators.
    pub basis: Mat,
    pub form: Mat,
}

/// Per eigenvalue (in `field`), the descending partition of block sizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanType {
    pub field: Field,
    pub blocks: Vec<(Fe, Vec<usize>)>,
}

impl JordanType {
    pub fn block_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flat_map(|(_, sizes)| sizes.iter().copied())
    }

    pub fn all_blocks_divisible_by(&self, m: usize) -> bool {
        self.block_sizes().all(|s| s % m == 0)
    }
}

/// Conjugacy data: monic irreducible `f` with a descending partition `λ`
/// (the exponents of `f` across the invariant factors).
pub type PrimaryData = Vec<(Poly, Vec<usize>)>;

struct PolyMat {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    fn at(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.n + j]
    }

    fn put(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.n + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// row_dst += c · row_src
    fn add_row(&mut self, dst: usize, src: usize, c: &Poly) {
        for j in 0..self.n {
            let v = self.at(dst, j).add(&self.at(src, j).mul(c));
            self.put(dst, j, v);
        }
    }

    /// col_dst += c · col_src
    fn add_col(&mut self, dst: usize, src: usize, c: &Poly) {
        for i in 0..self.n {
            let v = self.at(i, dst).add(&self.at(i, src).mul(c));
            self.put(i, dst, v);
        }
    }

    fn scale_col(&mut self, j: usize, c: Fe) {
        for i in 0..self.n {
            let v = self.at(i, j).scale(c);
            self.put(i, j, v);
        }
    }

    fn scale_row(&mut self, i: usize, c: Fe) {
        for j in 0..self.n {
            let v = self.at(i, j).scale(c);
            self.put(i, j, v);
        }
    }
}

/// Smith normal form of `tI - A`. Returns the diagonal and `P⁻¹`, where
/// `P (tI - A) Q = diag`.
fn smith_characteristic(a: &Mat) -> (Vec<Poly>, PolyMat) {
    let n = a.rows();
    let field = a.field();
    let mut m = PolyMat {
        n,
        entries: (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let c = field.neg(a.get(i, j));
                if i == j {
                    Poly::new(field, vec![c, Fe::ONE])
                } else {
                    Poly::constant(field, c)
                }
            })
            .collect(),
    };
    let mut pinv = PolyMat {
        n,
        entries: (0..n * n).map(|idx| if idx / n == idx % n { Poly::one(field) } else { Poly::zero(field) }).collect(),
    };
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !m.at(i, j).is_zero())
                .min_by_key(|&(i, j)| m.at(i, j).deg());
            let Some((pi, pj)) = pivot else {
                break;
            };
            if pi != k {
                m.swap_rows(k, pi);
                pinv.swap_cols(k, pi);
            }
            if pj != k {
                m.swap_cols(k, pj);
            }
            let lead = m.at(k, k).lead();
            let u = field.inv(lead).expect("nonzero");
            m.scale_row(k, u);
            pinv.scale_col(k, lead);

            let mut clean = true;
            for i in k + 1..n {
                if m.at(i, k).is_zero() {
                    continue;
                }
                let (q, r) = m.at(i, k).divmod(m.at(k, k)).expect("nonzero pivot");
                m.add_row(i, k, &q.neg());
                pinv.add_col(k, i, &q);
                clean &= r.is_zero();
            }
            for j in k + 1..n {
                if m.at(k, j).is_zero() {
                    continue;
                }
                let (q, r) = m.at(k, j).divmod(m.at(k, k)).expect("nonzero pivot");
                m.add_col(j, k, &q.neg());
                clean &= r.is_zero();
            }
            if !clean {
                continue;
            }
            let pivot_poly = m.at(k, k).clone();
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !pivot_poly.divides(m.at(i, j))));
            match offender {
                Some(i) => {
                    // row_k += row_i; in P⁻¹: col_i -= col_k
                    m.add_row(k, i, &Poly::one(field));
                    pinv.add_col(i, k, &Poly::one(field).neg());
                }
                None => break,
            }
        }
    }
    let diag = (0..n).map(|i| m.at(i, i).monic()).collect();
    (diag, pinv)
}

/// Invariant factors of a square matrix.
pub fn invariant_factors(a: &Mat) -> Result<InvariantFactors> {
    require_square(a)?;
    let (diag, _) = smith_characteristic(a);
    Ok(InvariantFactors { factors: diag.into_iter().filter(|d| d.deg() > 0).collect() })
}

pub fn char_poly(a: &Mat) -> Result<Poly> {
    Ok(invariant_factors(a)?.char_poly(a.field()))
}

/// Rational canonical form together with the change of basis.
pub fn rational_form(a: &Mat) -> Result<RationalForm> {
    let n = require_square(a)?;
    let field = a.field();
    let (diag, pinv) = smith_characteristic(a);
    let mut columns: Vec<Vec<Fe>> = Vec::with_capacity(n);
    let mut blocks = Vec::new();
    let mut factors = Vec::new();
    for (k, d) in diag.iter().enumerate() {
        if d.deg() == 0 {
            continue;
        }
        // generator v = Σ_i w_i(A) e_i for the polynomial column w of P⁻¹
        let max_deg = (0..n).map(|i| pinv.at(i, k).deg()).max().unwrap_or(0);
        let mut v = vec![Fe::ZERO; n];
        for deg in (0..=max_deg).rev() {
            v = a.mul_vec(&v);
            for (i, vi) in v.iter_mut().enumerate() {
                *vi = field.add(*vi, pinv.at(i, k).coeff(deg));
            }
        }
        for _ in 0..d.deg() {
            let next = a.mul_vec(&v);
            columns.push(std::mem::replace(&mut v, next));
        }
        blocks.push(Mat::companion(d));
        factors.push(d.clone());
    }
    let basis = Mat::from_columns(field, &columns);
    let form = Mat::block_diag(field, &blocks);
    debug_assert_eq!(&basis * &form, a * &basis);
    Ok(RationalForm { invariants: InvariantFactors { factors }, basis, form })
}

/// Minimal polynomial as the lcm of the annihilators of the standard basis
/// vectors, each found from its Krylov sequence.
pub fn min_poly(a: &Mat) -> Result<Poly> {
    let n = require_square(a)?;
    let field = a.field();
    let mut acc = Poly::one(field);
    for j in 0..n {
        if acc.deg() == n {
            break;
        }
        let mut v = vec![Fe::ZERO; n];
        v[j] = Fe::ONE;
        let mut chain = vec![v];
        loop {
            let next = a.mul_vec(chain.last().unwrap());
            let k = Mat::from_columns(field, &chain);
            if let crate::mat::AffineSolution::Solutions { particular, .. } = k.solve_affine(&next)? {
                let mut coeffs: Vec<Fe> = particular.iter().map(|&c| field.neg(c)).collect();
                coeffs.push(Fe::ONE);
                acc = acc.lcm(&Poly::new(field, coeffs));
                break;
            }
            chain.push(next);
        }
    }
    Ok(acc)
}

/// `deg min_poly = n`.
pub fn is_regular(a: &Mat) -> Result<bool> {
    let n = require_square(a)?;
    let regular = min_poly(a)?.deg() == n;
    debug_assert_eq!(regular, a.centralizer_dim()? == n);
    Ok(regular)
}

pub fn is_similar(a: &Mat, b: &Mat) -> Result<bool> {
    Ok(a.field() == b.field() && invariant_factors(a)? == invariant_factors(b)?)
}

/// Some invertible `g` with `g M g⁻¹ = N`, or `None` if `M` and `N` are not
/// similar. Built from the two rational canonical bases.
pub fn similarity_transform(m: &Mat, n: &Mat) -> Result<Option<Mat>> {
    let rm = rational_form(m)?;
    let rn = rational_form(n)?;
    if rm.invariants != rn.invariants {
        return Ok(None);
    }
    let g = &rn.basis * &rm.basis.inverse()?;
    debug_assert_eq!(&g * m, n * &g);
    Ok(Some(g))
}

/// Primary decomposition data of the conjugacy class of `a`.
pub fn primary_data(a: &Mat) -> Result<PrimaryData> {
    let inv = invariant_factors(a)?;
    let mut out: PrimaryData = Vec::new();
    for d in &inv.factors {
        for (f, e) in d.factor(0) {
            match out.iter_mut().find(|(g, _)| *g == f) {
                Some((_, parts)) => parts.push(e),
                None => out.push((f, vec![e])),
            }
        }
    }
    for (_, parts) in out.iter_mut() {
        parts.sort_unstable_by(|x, y| y.cmp(x));
    }
    out.sort_by(|x, y| x.0.cmp_canonical(&y.0));
    Ok(out)
}

/// Jordan type over the splitting field of the characteristic polynomial.
pub fn jordan_type(a: &Mat) -> Result<JordanType> {
    let n = require_square(a)?;
    let base = a.field();
    let cp = char_poly(a)?;
    let factors = cp.factor(0);
    let m = factors.iter().fold(1usize, |acc, (f, _)| acc.lcm(&f.deg()));
    let split = Field::new(base.p(), base.k() * m as u32).map_err(|_| Error::LimitExceeded {
        what: "splitting field order",
        size: (base.order() as u128).saturating_pow(m as u32),
        limit: crate::gf::MAX_FIELD_ORDER as u128,
    })?;
    let emb = base.embedding(&split)?;
    let lifted = a.map_field(&emb);
    let mut blocks = Vec::new();
    for (f, _) in &factors {
        let lifted_f = f.map_coeffs(&split, |c| emb.apply(c));
        for lambda in lifted_f.roots(0)? {
            blocks.push((lambda, partition_from_ranks(&lifted, lambda, n)));
        }
    }
    blocks.sort_by_key(|(l, _)| split.tuple_key(*l));
    Ok(JordanType { field: split, blocks })
}

fn partition_from_ranks(a: &Mat, lambda: Fe, n: usize) -> Vec<usize> {
    let shifted = a - &Mat::scalar(a.field(), n, lambda);
    // ranks[j] = rank((A - λ)^j)
    let mut ranks = vec![n];
    let mut power = Mat::identity(a.field(), n);
    loop {
        power = &power * &shifted;
        let r = power.rank();
        let prev = *ranks.last().unwrap();
        ranks.push(r);
        if r == prev {
            break;
        }
    }
    // at_least[j] = #blocks of size ≥ j = ranks[j-1] - ranks[j]
    let at_least: Vec<usize> = (1..ranks.len()).map(|j| ranks[j - 1] - ranks[j]).collect();
    let mut parts = Vec::new();
    for j in (1..=at_least.len()).rev() {
        let ge = at_least[j - 1];
        let gt = at_least.get(j).copied().unwrap_or(0);
        parts.extend(std::iter::repeat_n(j, ge - gt));
    }
    parts
}

/// A regular matrix commuting with `A`, possibly over an extension field.
#[derive(Clone, Debug)]
pub struct RegularCommuting {
    pub matrix: Mat,
    /// True when the base field had too few elements and `matrix` lives in
    /// an extension.
    pub extended: bool,
}

/// Shifts each cyclic block of the rational form by a scalar so that the
/// shifted characteristic polynomials are pairwise coprime; the result is a
/// block-diagonal polynomial in `A`'s blocks, hence commutes with `A`.
pub fn regular_commuting(a: &Mat) -> Result<RegularCommuting> {
    require_square(a)?;
    let base = a.field().clone();
    let mut degree = 1u32;
    loop {
        let field = Field::new(base.p(), base.k() * degree)?;
        let lifted = if degree == 1 { a.clone() } else { a.map_field(&base.embedding(&field)?) };
        if let Some(matrix) = shifted_rational_blocks(&lifted)? {
            debug_assert!(is_regular(&matrix)?);
            return Ok(RegularCommuting { matrix, extended: degree > 1 });
        }
        degree += 1;
    }
}

fn shifted_rational_blocks(a: &Mat) -> Result<Option<Mat>> {
    let field = a.field();
    let rf = rational_form(a)?;
    let mut chosen: Vec<Poly> = Vec::new();
    let mut blocks = Vec::new();
    for d in &rf.invariants.factors {
        let pick = field.elements().find_map(|mu| {
            let shifted = shift_poly(d, mu);
            chosen.iter().all(|c| c.gcd(&shifted).is_one()).then_some((mu, shifted))
        });
        let Some((mu, shifted)) = pick else {
            return Ok(None);
        };
        chosen.push(shifted);
        blocks.push(&Mat::companion(d) + &Mat::scalar(field, d.deg(), mu));
    }
    let shifted = Mat::block_diag(field, &blocks);
    Ok(Some(&(&rf.basis * &shifted) * &rf.basis.inverse()?))
}

/// `d(t - mu)`, the characteristic polynomial of `C(d) + mu·I`.
fn shift_poly(d: &Poly, mu: Fe) -> Poly {
    let field = d.field();
    let lin = Poly::linear(field, mu);
    d.coeffs().iter().rev().fold(Poly::zero(field), |acc, &c| acc.mul(&lin).add(&Poly::constant(field, c)))
}

fn require_square(a: &Mat) -> Result<usize> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    Ok(a.rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64, k: u32) -> Field {
        Field::new(p, k).unwrap()
    }

    fn jordan_nilpotent(field: &Field, n: usize) -> Mat {
        Mat::from_fn(field, n, n, |i, j| if i == j + 1 { Fe::ONE } else { Fe::ZERO })
    }

    fn all_matrices(field: &Field, n: usize) -> Vec<Mat> {
        let q = field.order();
        let total = q.pow((n * n) as u32);
        (0..total)
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
    fn min_poly_examples() {
        let f5 = gf(5, 1);
        assert_eq!(min_poly(&Mat::identity(&f5, 3)).unwrap(), Poly::linear(&f5, Fe::ONE));
        assert_eq!(min_poly(&jordan_nilpotent(&f5, 4)).unwrap(), Poly::monomial(&f5, Fe::ONE, 4));
        let d = Mat::from_ints(&f5, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 2]]);
        let expect = Poly::linear(&f5, Fe::ONE).mul(&Poly::linear(&f5, f5.from_int(2)));
        assert_eq!(min_poly(&d).unwrap(), expect);
    }

    #[test]
    fn invariant_factor_examples() {
        let f3 = gf(3, 1);
        let one = Poly::linear(&f3, Fe::ONE);
        assert_eq!(invariant_factors(&Mat::identity(&f3, 2)).unwrap().factors, vec![one.clone(), one]);
        let f = Poly::parse(&f3, "2,0,1,1").unwrap();
        assert_eq!(invariant_factors(&Mat::companion(&f)).unwrap().factors, vec![f]);
        let f2 = gf(2, 1);
        let inv = invariant_factors(&jordan_nilpotent(&f2, 4)).unwrap();
        assert_eq!(inv.render(), vec!["t^4"]);
    }

    #[test]
    fn jordan_examples() {
        let f3 = gf(3, 1);
        let jt = jordan_type(&jordan_nilpotent(&f3, 3)).unwrap();
        assert_eq!(jt.blocks, vec![(Fe::ZERO, vec![3])]);
        let d = Mat::from_ints(&f3, &[&[1, 0], &[0, 2]]);
        let jt = jordan_type(&d).unwrap();
        assert_eq!(jt.blocks, vec![(f3.from_int(1), vec![1]), (f3.from_int(2), vec![1])]);
        // t^2 + 1 over F_3 splits in GF(9)
        let c = Mat::companion(&Poly::parse(&f3, "1,0,1").unwrap());
        let jt = jordan_type(&c).unwrap();
        assert_eq!(jt.field.order(), 9);
        assert_eq!(jt.blocks.len(), 2);
        assert!(jt.blocks.iter().all(|(_, s)| s == &vec![1]));
    }

    #[test]
    fn jordan_type_of_mixed_blocks() {
        let f5 = gf(5, 1);
        let j2 = &jordan_nilpotent(&f5, 2) + &Mat::scalar(&f5, 2, f5.from_int(3));
        let a = Mat::block_diag(&f5, &[j2.clone(), j2, Mat::scalar(&f5, 1, f5.from_int(3)), jordan_nilpotent(&f5, 3)]);
        let jt = jordan_type(&a).unwrap();
        assert_eq!(jt.blocks, vec![(Fe::ZERO, vec![3]), (f5.from_int(3), vec![2, 2, 1])]);
    }

    #[test]
    fn regularity_examples() {
        let f3 = gf(3, 1);
        let f = Poly::parse(&f3, "1,2,0,1").unwrap();
        assert!(is_regular(&Mat::companion(&f)).unwrap());
        assert!(!is_regular(&Mat::identity(&f3, 2)).unwrap());
        assert!(is_regular(&Mat::identity(&f3, 1)).unwrap());
    }

    #[test]
    fn regular_commuting_examples() {
        let f3 = gf(3, 1);
        let c = Mat::companion(&Poly::parse(&f3, "1,2,0,1").unwrap());
        let r = regular_commuting(&c).unwrap();
        assert!(!r.extended);
        assert!(is_regular(&r.matrix).unwrap());
        assert!(c.lie_commutator(&r.matrix).unwrap().is_zero());

        // zero matrix over F_2 needs three distinct scalars: extends to GF(4)
        let f2 = gf(2, 1);
        let r = regular_commuting(&Mat::zeros(&f2, 3, 3)).unwrap();
        assert!(r.extended);
        assert!(is_regular(&r.matrix).unwrap());

        let f5 = gf(5, 1);
        let j = jordan_nilpotent(&f5, 2);
        let a = Mat::block_diag(&f5, &[j.clone(), j]);
        let r = regular_commuting(&a).unwrap();
        assert!(!r.extended);
        assert!(is_regular(&r.matrix).unwrap());
        assert!(a.lie_commutator(&r.matrix).unwrap().is_zero());
    }

    #[test]
    fn similarity_transform_conjugates() {
        let f5 = gf(5, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..6 {
            let a = Mat::random(&f5, n, n, &mut rng);
            let g = Mat::random_invertible(&f5, n, &mut rng);
            let b = &(&g * &a) * &g.inverse().unwrap();
            let h = similarity_transform(&a, &b).unwrap().unwrap();
            assert_eq!(&(&h * &a) * &h.inverse().unwrap(), b);
        }
        let a = Mat::identity(&f5, 2);
        assert!(similarity_transform(&a, &Mat::zeros(&f5, 2, 2)).unwrap().is_none());
    }

    #[test]
    fn similarity_classifier_matches_orbits() {
        for q in [2u64, 3] {
            let field = Field::of_order(q).unwrap();
            let mats = all_matrices(&field, 2);
            let group: Vec<(Mat, Mat)> =
                mats.iter().filter(|m| m.is_invertible()).map(|g| (g.clone(), g.inverse().unwrap())).collect();
            let invs: Vec<InvariantFactors> = mats.iter().map(|m| invariant_factors(m).unwrap()).collect();
            for (i, a) in mats.iter().enumerate() {
                let orbit: std::collections::HashSet<Mat> = group.iter().map(|(g, gi)| &(g * a) * gi).collect();
                for (j, b) in mats.iter().enumerate() {
                    assert_eq!(invs[i] == invs[j], orbit.contains(b));
                }
            }
        }
    }

    #[test]
    fn regularity_characterizations_agree() {
        // min poly = char poly ⇔ centralizer dimension n ⇔ one invariant factor,
        // and for nilpotent matrices ⇔ one-dimensional kernel
        for n in [2usize, 3] {
            let field = gf(2, 1);
            for a in all_matrices(&field, n) {
                let regular = is_regular(&a).unwrap();
                assert_eq!(regular, a.centralizer_dim().unwrap() == n);
                assert_eq!(regular, invariant_factors(&a).unwrap().is_cyclic());
                assert_eq!(regular, min_poly(&a).unwrap() == char_poly(&a).unwrap());
                if a.pow(n as u64).unwrap().is_zero() {
                    assert_eq!(regular, a.kernel().len() == 1);
                }
            }
        }
    }

    #[test]
    fn factor_chain_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for (p, k) in [(2u64, 1u32), (3, 1), (2, 2), (5, 1)] {
            let field = gf(p, k);
            for n in 1..6 {
                let a = Mat::random(&field, n, n, &mut rng);
                let inv = invariant_factors(&a).unwrap();
                for w in inv.factors.windows(2) {
                    assert!(w[0].divides(&w[1]));
                }
                let cp = inv.char_poly(&field);
                assert_eq!(cp.deg(), n);
                assert_eq!(min_poly(&a).unwrap(), *inv.largest().unwrap());
                let jt = jordan_type(&a).unwrap();
                assert_eq!(jt.block_sizes().sum::<usize>(), n);
                let rf = rational_form(&a).unwrap();
                assert_eq!(&rf.basis.inverse().unwrap() * &(&a * &rf.basis), rf.form);
                // char poly evaluated at A vanishes
                assert!(a.eval_poly(&cp).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn primary_data_of_block_matrix() {
        let f3 = gf(3, 1);
        let j2 = jordan_nilpotent(&f3, 2);
        let irr = Mat::companion(&Poly::parse(&f3, "1,0,1").unwrap());
        let a = Mat::block_diag(&f3, &[j2.clone(), j2, irr, Mat::identity(&f3, 1)]);
        let data = primary_data(&a).unwrap();
        assert_eq!(
            data,
            vec![
                (Poly::t(&f3), vec![2, 2]),
                (Poly::linear(&f3, Fe::ONE), vec![1]),
                (Poly::parse(&f3, "1,0,1").unwrap(), vec![1]),
            ]
        );
    }
}
