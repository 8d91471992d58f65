//! Dense matrices over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Embedding, Fe, Field};
use crate::poly::{split_top_level, Poly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Fe>,
}

/// Reduced row echelon form with its rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Solution set of a linear system `Ax = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Inconsistent,
    Solutions { particular: Vec<Fe>, kernel: Vec<Vec<Fe>> },
}

impl AffineSolution {
    pub fn is_consistent(&self) -> bool {
        matches!(self, AffineSolution::Solutions { .. })
    }

    /// Dimension of the solution space, `None` when inconsistent.
    pub fn dimension(&self) -> Option<usize> {
        match self {
            AffineSolution::Inconsistent => None,
            AffineSolution::Solutions { kernel, .. } => Some(kernel.len()),
        }
    }
}

/// All `B` with `AB - BA = C`, as a particular solution plus a kernel basis
/// (the kernel is the centralizer algebra of `A`).
#[derive(Clone, Debug)]
pub struct CommutatorSolutions {
    pub particular: Mat,
    pub kernel: Vec<Mat>,
}

impl CommutatorSolutions {
    pub fn dimension(&self) -> usize {
        self.kernel.len()
    }

    /// `particular + Σ c_i kernel_i`.
    pub fn member(&self, coeffs: &[Fe]) -> Mat {
        let mut out = self.particular.clone();
        for (k, &c) in self.kernel.iter().zip(coeffs) {
            out = &out + &k.scale(c);
        }
        out
    }

    pub fn random_member<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat {
        let field = self.particular.field().clone();
        let coeffs: Vec<Fe> = (0..self.kernel.len()).map(|_| field.random(rng)).collect();
        self.member(&coeffs)
    }
}

impl Mat {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Fe>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if data.iter().any(|&a| !field.contains(a)) {
            return Err(Error::Parse(format!("entry outside {field:?}")));
        }
        Ok(Mat { rows, cols, field: field.clone(), data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field: field.clone(), data: vec![Fe::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        Mat::scalar(field, n, Fe::ONE)
    }

    pub fn scalar(field: &Field, n: usize, c: Fe) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Fe) -> Mat {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, field: field.clone(), data }
    }

    /// Builds from small integers (reduced into the prime subfield).
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        Mat::from_fn(field, r, c, |i, j| field.from_int(rows[i][j]))
    }

    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.random(rng))
    }

    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Mat {
        loop {
            let m = Mat::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `-c_0, …, -c_{m-1}` in the last column.
    pub fn companion(f: &Poly) -> Mat {
        let field = f.field();
        let f = f.monic();
        let m = f.deg();
        let mut c = Mat::zeros(field, m, m);
        for i in 1..m {
            c.set(i, i - 1, Fe::ONE);
        }
        for i in 0..m {
            c.set(i, m - 1, field.neg(f.coeff(i)));
        }
        c
    }

    pub fn block_diag(field: &Field, blocks: &[Mat]) -> Mat {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Mat::zeros(field, n, m);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Assembles a square matrix from column vectors.
    pub fn from_columns(field: &Field, columns: &[Vec<Fe>]) -> Mat {
        let n = columns.first().map_or(0, |c| c.len());
        Mat::from_fn(field, n, columns.len(), |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn data(&self) -> &[Fe] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Fe> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn block(&self, r: usize, c: usize, h: usize, w: usize) -> Mat {
        Mat::from_fn(&self.field, h, w, |i, j| self.get(r + i, c + j))
    }

    pub fn set_block(&mut self, r: usize, c: usize, b: &Mat) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r + i, c + j, b.get(i, j));
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| a.is_zero())
    }

    /// `Some(c)` when the matrix equals `cI`.
    pub fn as_scalar(&self) -> Option<Fe> {
        if !self.is_square() {
            return None;
        }
        let c = if self.rows == 0 { Fe::ZERO } else { self.get(0, 0) };
        (*self == Mat::scalar(&self.field, self.rows, c)).then_some(c)
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { left: self.field.order(), right: other.field.order() });
        }
        Ok(())
    }

    fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!("{}x{} is not square", self.rows, self.cols)));
        }
        Ok(self.rows)
    }

    pub fn checked_add(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch(format!("{}x{} + {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Mat { rows: self.rows, cols: self.cols, field: f.clone(), data })
    }

    pub fn checked_sub(&self, other: &Mat) -> Result<Mat> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d = f.add(*d, f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(Fe::ZERO, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j]))))
            .collect()
    }

    pub fn scale(&self, c: Fe) -> Mat {
        let f = &self.field;
        Mat { data: self.data.iter().map(|&a| f.mul(a, c)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Fe {
        (0..self.rows.min(self.cols)).fold(Fe::ZERO, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Result<Mat> {
        let n = self.require_square()?;
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.field, n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Result<Mat> {
        let n = self.require_square()?;
        let mut acc = Mat::zeros(&self.field, n, n);
        for &c in f.coeffs().iter().rev() {
            acc = &(&acc * self) + &Mat::scalar(&self.field, n, c);
        }
        Ok(acc)
    }

    pub fn map_field(&self, emb: &Embedding) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: emb.target().clone(),
            data: self.data.iter().map(|&a| emb.apply(a)).collect(),
        }
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pr) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pr);
            let inv = f.inv(m.get(rank, col)).expect("nonzero pivot");
            for j in col..m.cols {
                let v = f.mul(m.get(rank, j), inv);
                m.set(rank, j, v);
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let factor = m.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(rank, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            rank += 1;
        }
        Rref { reduced: m, rank, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn det(&self) -> Result<Fe> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut m = self.clone();
        let mut det = Fe::ONE;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(Fe::ZERO);
            };
            if pr != col {
                m.swap_rows(col, pr);
                det = f.neg(det);
            }
            let pivot = m.get(col, col);
            det = f.mul(det, pivot);
            let inv = f.inv(pivot)?;
            for r in col + 1..n {
                let factor = f.mul(m.get(r, col), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.require_square()?;
        let mut aug = Mat::zeros(&self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Mat::identity(&self.field, n));
        let r = aug.rref();
        if r.pivots.iter().take_while(|&&c| c < n).count() < n {
            return Err(Error::Singular);
        }
        Ok(r.reduced.block(0, n, n, n))
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Fe>> {
        let r = self.rref();
        kernel_from_rref(&r, self.cols)
    }

    /// Full solution set of `Ax = b`.
    pub fn solve_affine(&self, b: &[Fe]) -> Result<AffineSolution> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!("{} rows vs right-hand side of {}", self.rows, b.len())));
        }
        let n = self.cols;
        let mut aug = Mat::zeros(&self.field, self.rows, n + 1);
        aug.set_block(0, 0, self);
        for (i, &v) in b.iter().enumerate() {
            aug.set(i, n, v);
        }
        let r = aug.rref();
        if r.pivots.last() == Some(&n) {
            return Ok(AffineSolution::Inconsistent);
        }
        let mut particular = vec![Fe::ZERO; n];
        for (row, &pc) in r.pivots.iter().enumerate() {
            particular[pc] = r.reduced.get(row, n);
        }
        Ok(AffineSolution::Solutions { particular, kernel: kernel_from_rref(&r, n) })
    }

    /// `AB - BA`.
    pub fn lie_commutator(&self, other: &Mat) -> Result<Mat> {
        self.require_square()?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::ShapeMismatch("commutator of different sizes".into()));
        }
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn group_commutator(&self, other: &Mat) -> Result<Mat> {
        let xi = self.inverse()?;
        let yi = other.inverse()?;
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("commutator of different sizes".into()));
        }
        Ok(&(&(&xi * &yi) * self) * other)
    }

    /// Matrix of `B ↦ AB - BA` on row-major vectorized `B`.
    pub fn commutator_system(&self) -> Result<Mat> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut m = Mat::zeros(f, n * n, n * n);
        for i in 0..n {
            for j in 0..n {
                let row = i * n + j;
                for k in 0..n {
                    let a = self.get(i, k);
                    let col = k * n + j;
                    m.set(row, col, f.add(m.get(row, col), a));
                    let b = self.get(k, j);
                    let col = i * n + k;
                    m.set(row, col, f.sub(m.get(row, col), b));
                }
            }
        }
        Ok(m)
    }

    /// Every `B` with `AB - BA = C`, or `None` when there is none.
    pub fn commutator_solutions(&self, c: &Mat) -> Result<Option<CommutatorSolutions>> {
        let n = self.require_square()?;
        self.same_field(c)?;
        if (c.rows, c.cols) != (n, n) {
            return Err(Error::ShapeMismatch("right-hand side size".into()));
        }
        let sys = self.commutator_system()?;
        let to_mat = |v: Vec<Fe>| Mat { rows: n, cols: n, field: self.field.clone(), data: v };
        Ok(match sys.solve_affine(&c.data)? {
            AffineSolution::Inconsistent => None,
            AffineSolution::Solutions { particular, kernel } => Some(CommutatorSolutions {
                particular: to_mat(particular),
                kernel: kernel.into_iter().map(to_mat).collect(),
            }),
        })
    }

    /// Dimension of the centralizer algebra `{B : AB = BA}`.
    pub fn centralizer_dim(&self) -> Result<usize> {
        let n = self.require_square()?;
        Ok(n * n - self.commutator_system()?.rank())
    }

    /// Rows separated by `;`, entries by `,`.
    pub fn to_text(&self) -> String {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.format(self.get(i, j))).collect::<Vec<_>>().join(","))
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn parse(field: &Field, s: &str) -> Result<Mat> {
        let rows: Vec<Vec<Fe>> = s
            .split(';')
            .map(|row| split_top_level(row).into_iter().map(|tok| field.parse(tok)).collect())
            .collect::<Result<_>>()?;
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parse(format!("ragged matrix {s:?}")));
        }
        let n = rows.len();
        Mat::new(field, n, cols, rows.into_iter().flatten().collect())
    }
}

fn kernel_from_rref(r: &Rref, n: usize) -> Vec<Vec<Fe>> {
    let f = r.reduced.field();
    let pivot_set: Vec<bool> = (0..n).map(|c| r.pivots.contains(&c)).collect();
    (0..n)
        .filter(|&c| !pivot_set[c])
        .map(|free| {
            let mut v = vec![Fe::ZERO; n];
            v[free] = Fe::ONE;
            for (row, &pc) in r.pivots.iter().enumerate() {
                if pc < n {
                    v[pc] = f.neg(r.reduced.get(row, free));
                }
            }
            v
        })
        .collect()
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}x{} over {:?}]({})", self.rows, self.cols, self.field, self.to_text())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.checked_add(rhs).expect("matrix addition")
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.checked_sub(rhs).expect("matrix subtraction")
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.checked_mul(rhs).expect("matrix product")
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        let f = &self.field;
        Mat { data: self.data.iter().map(|&a| f.neg(a)).collect(), ..self.clone() }
    }
}
