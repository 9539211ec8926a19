//! Dense exact linear algebra: matrices, canonical subspaces, and the
//! subspace lattice.
//!
//! Vectors are plain coordinate slices. Matrices act on column vectors, so a
//! linear map `f` is stored with column `j` equal to `f(e_j)`.

use crate::error::{check_budget, Error, Result};
use crate::field::Field;

/// Row-major dense matrix over `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Shape(format!(
                    "row {r} has length {}, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned());
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: &F, rows: usize, columns: &[Vec<F::Elem>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::Shape(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| self.field.is_zero(v))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} applied to {}x{} matrix",
                v.len(),
                self.rows,
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.mul_add(&acc, a, b))
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.mul_add(out.get(r, c), a, other.get(k, c));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("matrix sum of different shapes".into()));
        }
        let f = &self.field;
        Ok(Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f.add(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: &F::Elem) -> Matrix<F> {
        let f = &self.field;
        Matrix {
            field: f.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| f.mul(a, s)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Result<Matrix<F>> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(&self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> F::Elem {
        let f = &self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.cols {
            return Err(Error::Shape("stacking matrices with different widths".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, &mut m.data, m.rows, m.cols);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace<F> {
        let (r, pivots) = self.rref();
        let f = &self.field;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            basis.push(v);
        }
        Subspace::span(f, self.cols, &basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace<F> {
        let cols: Vec<_> = (0..self.cols).map(|c| self.column(c)).collect();
        Subspace::span(&self.field, self.rows, &cols)
    }

    /// One solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F::Elem]) -> Result<Option<Vec<F::Elem>>> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = &self.field;
        let w = self.cols + 1;
        let mut aug = Vec::with_capacity(self.rows * w);
        for (r, rhs) in b.iter().enumerate() {
            aug.extend(self.row(r).iter().cloned());
            aug.push(rhs.clone());
        }
        let pivots = rref_in_place(f, &mut aug, self.rows, w);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[row * w + self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<F::Elem> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let f = &self.field;
        let n = self.rows;
        if n == 0 {
            return Ok(f.one());
        }
        let mut a = self.data.clone();
        let mut sign_neg = false;
        let mut prev = f.one();
        for k in 0..n - 1 {
            if f.is_zero(&a[k * n + k]) {
                let Some(swap) = (k + 1..n).find(|&r| !f.is_zero(&a[r * n + k])) else {
                    return Ok(f.zero());
                };
                for c in 0..n {
                    a.swap(k * n + c, swap * n + c);
                }
                sign_neg = !sign_neg;
            }
            let pivot = a[k * n + k].clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = f.sub(
                        &f.mul(&a[i * n + j], &pivot),
                        &f.mul(&a[i * n + k], &a[k * n + j]),
                    );
                    a[i * n + j] = f.div(&num, &prev).expect("previous pivot is nonzero");
                }
                a[i * n + k] = f.zero();
            }
            prev = pivot;
        }
        let d = a[n * n - 1].clone();
        Ok(if sign_neg { f.neg(&d) } else { d })
    }

    /// Matrix of `self` restricted to an invariant subspace, in the
    /// canonical basis of that subspace.
    pub fn restrict_to(&self, u: &Subspace<F>) -> Result<Matrix<F>> {
        if !self.is_square() || self.rows != u.ambient_dim() {
            return Err(Error::Shape("restriction needs a square matrix on the ambient space".into()));
        }
        let mut cols = Vec::with_capacity(u.dim());
        for b in u.basis() {
            let img = self.apply(b)?;
            cols.push(u.coordinates(&img).ok_or(Error::NotContained)?);
        }
        Matrix::from_columns(&self.field, u.dim(), &cols)
    }
}

fn rref_in_place<F: Field>(f: &F, a: &mut [F::Elem], rows: usize, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                a.swap(p * cols + k, r * cols + k);
            }
        }
        let inv = f.inv(&a[r * cols + c]).expect("pivot is nonzero");
        for k in c..cols {
            a[r * cols + k] = f.mul(&a[r * cols + k], &inv);
        }
        for i in 0..rows {
            if i == r || f.is_zero(&a[i * cols + c]) {
                continue;
            }
            let factor = a[i * cols + c].clone();
            for k in c..cols {
                let v = f.sub(&a[i * cols + k], &f.mul(&factor, &a[r * cols + k]));
                a[i * cols + k] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Which linear problem [`solve_linear`] should answer.
#[derive(Clone, Debug)]
pub enum LinearMode<E> {
    Kernel,
    Image,
    Solve(Vec<E>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution<F: Field> {
    Subspace(Subspace<F>),
    Vector(Vec<F::Elem>),
    Inconsistent,
}

pub fn solve_linear<F: Field>(a: &Matrix<F>, mode: LinearMode<F::Elem>) -> Result<LinearSolution<F>> {
    Ok(match mode {
        LinearMode::Kernel => LinearSolution::Subspace(a.kernel()),
        LinearMode::Image => LinearSolution::Subspace(a.image()),
        LinearMode::Solve(b) => match a.solve(&b)? {
            Some(x) => LinearSolution::Vector(x),
            None => LinearSolution::Inconsistent,
        },
    })
}

/// A subspace of `F^n` stored by its reduced row echelon basis, so equal
/// subspaces have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    basis: Vec<Vec<F::Elem>>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: &F, ambient: usize) -> Self {
        Subspace {
            field: field.clone(),
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: &F, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Subspace {
            field: field.clone(),
            ambient,
            basis,
        }
    }

    /// Span of arbitrary vectors of length `ambient`.
    pub fn span(field: &F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length must match ambient dimension");
            data.extend(v.iter().cloned());
        }
        let pivots = rref_in_place(field, &mut data, vectors.len(), ambient);
        let basis = (0..pivots.len())
            .map(|r| data[r * ambient..(r + 1) * ambient].to_vec())
            .collect();
        Subspace {
            field: field.clone(),
            ambient,
            basis,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|row| {
                row.iter()
                    .position(|v| !self.field.is_zero(v))
                    .expect("basis rows are nonzero")
            })
            .collect()
    }

    /// Reduce `v` by the basis so that it vanishes at every pivot column.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, pc) in self.basis.iter().zip(self.pivots()) {
            if f.is_zero(&out[pc]) {
                continue;
            }
            let factor = out[pc].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o = f.sub(o, &f.mul(&factor, r));
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[F::Elem]) -> bool {
        v.len() == self.ambient && self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains_vector(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&pc| v[pc].clone()).collect())
    }

    /// The vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.ambient];
        for (c, row) in coords.iter().zip(&self.basis) {
            if f.is_zero(c) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(row) {
                *o = f.mul_add(o, c, r);
            }
        }
        out
    }

    fn check_compatible(&self, other: &Subspace<F>) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::Shape(format!(
                "subspaces of F^{} and F^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_compatible(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Ok(Subspace::span(&self.field, self.ambient, &vs))
    }

    pub fn add_vectors(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        let mut vs = self.basis.clone();
        vs.extend(vectors.iter().cloned());
        Subspace::span(&self.field, self.ambient, &vs)
    }

    /// Vectors `w` with `<u, w> = 0` for every `u` in the subspace, under the
    /// standard pairing.
    pub fn annihilator(&self) -> Subspace<F> {
        if self.basis.is_empty() {
            return Subspace::full(&self.field, self.ambient);
        }
        Matrix::from_rows(&self.field, self.ambient, &self.basis)
            .expect("basis rows have ambient length")
            .kernel()
    }

    /// A matrix whose kernel is exactly this subspace.
    pub fn equations(&self) -> Matrix<F> {
        let ann = self.annihilator();
        Matrix::from_rows(&self.field, self.ambient, &ann.basis).expect("rows have ambient length")
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(&self.field, self.ambient));
        }
        self.equations().stack(&other.equations()).map(|m| m.kernel())
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace<F>) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    /// A complement of `self` inside `w`: standard basis directions at the
    /// non-pivot columns, reduced into `w`.
    pub fn complement_in(&self, w: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_compatible(w)?;
        if !w.contains(self)? {
            return Err(Error::NotContained);
        }
        // Reduced vectors vanish on the pivots of `self`, so their span meets
        // `self` trivially; for `w = F^n` this is the span of the non-pivot
        // unit vectors.
        let reduced: Vec<_> = w.basis.iter().map(|v| self.reduce(v)).collect();
        Ok(Subspace::span(&self.field, self.ambient, &reduced))
    }

    /// Every element of the subspace (finite fields only).
    pub fn elements(&self, budget: u128) -> Result<Vec<Vec<F::Elem>>> {
        let coords = all_vectors(&self.field, self.dim(), budget)?;
        Ok(coords.iter().map(|c| self.combine(c)).collect())
    }

    /// One representative of every line in the subspace (finite fields
    /// only): coordinate vectors whose first nonzero entry is one.
    pub fn projective_points(&self, budget: u128) -> Result<Vec<Vec<F::Elem>>> {
        let coords = projective_points(&self.field, self.dim(), budget)?;
        Ok(coords.iter().map(|c| self.combine(c)).collect())
    }
}

pub fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

pub fn zero_vector<F: Field>(field: &F, n: usize) -> Vec<F::Elem> {
    vec![field.zero(); n]
}

pub fn is_zero_vector<F: Field>(field: &F, v: &[F::Elem]) -> bool {
    v.iter().all(|x| field.is_zero(x))
}

pub fn add_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.add(x, y)).collect()
}

pub fn sub_vectors<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().zip(b).map(|(x, y)| field.sub(x, y)).collect()
}

pub fn scale_vector<F: Field>(field: &F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|x| field.mul(s, x)).collect()
}

fn finite_elements<F: Field>(field: &F) -> Result<Vec<F::Elem>> {
    field
        .elements()
        .ok_or_else(|| Error::InfiniteField(field.spec().to_string()))
}

/// `q^n` as an exact count, saturating.
pub fn power_count(q: u64, n: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..n {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

/// All vectors of `F^n` in lexicographic order (last coordinate fastest).
pub fn all_vectors<F: Field>(field: &F, n: usize, budget: u128) -> Result<Vec<Vec<F::Elem>>> {
    let elems = finite_elements(field)?;
    check_budget("vectors", power_count(elems.len() as u64, n), budget)?;
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * elems.len());
        for prefix in &out {
            for e in &elems {
                let mut v: Vec<F::Elem> = prefix.clone();
                v.push(e.clone());
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

/// Nonzero vectors of `F^n` whose first nonzero coordinate is one.
pub fn projective_points<F: Field>(field: &F, n: usize, budget: u128) -> Result<Vec<Vec<F::Elem>>> {
    let elems = finite_elements(field)?;
    check_budget("vectors", power_count(elems.len() as u64, n), budget)?;
    let mut out = Vec::new();
    for lead in 0..n {
        let tail = all_vectors(field, n - lead - 1, budget)?;
        for t in tail {
            let mut v = vec![field.zero(); lead];
            v.push(field.one());
            v.extend(t);
            out.push(v);
        }
    }
    Ok(out)
}

/// Number of `k`-dimensional subspaces of `F_q^n` (Gaussian binomial).
pub fn gaussian_binomial(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
        den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
    }
    if num == u128::MAX {
        return u128::MAX;
    }
    num / den
}

pub fn subspace_count(q: u64, n: usize) -> u128 {
    (0..=n).fold(0u128, |acc, k| acc.saturating_add(gaussian_binomial(q, n, k)))
}

/// Visit every subspace of `F^n`, by dimension ascending and then
/// lexicographically by pivot set and free entries. The visitor returns
/// `false` to stop early.
pub fn for_each_subspace<F: Field>(
    field: &F,
    n: usize,
    budget: u128,
    mut visit: impl FnMut(&Subspace<F>) -> bool,
) -> Result<()> {
    let elems = finite_elements(field)?;
    check_budget("subspaces", subspace_count(elems.len() as u64, n), budget)?;
    for k in 0..=n {
        let mut stop = false;
        for_each_combination(n, k, &mut |pivots| {
            // free entries: row r, column c > pivot r, c not a pivot
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(r, &pc)| {
                    (pc + 1..n)
                        .filter(|c| !pivots.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0usize; free.len()];
            loop {
                let mut basis: Vec<Vec<F::Elem>> = pivots
                    .iter()
                    .map(|&pc| unit(field, n, pc))
                    .collect();
                for (&(r, c), &d) in free.iter().zip(&digits) {
                    basis[r][c] = elems[d].clone();
                }
                let s = Subspace {
                    field: field.clone(),
                    ambient: n,
                    basis,
                };
                if !visit(&s) {
                    stop = true;
                    return false;
                }
                // odometer, last entry fastest
                let mut i = free.len();
                loop {
                    if i == 0 {
                        return true;
                    }
                    i -= 1;
                    digits[i] += 1;
                    if digits[i] < elems.len() {
                        break;
                    }
                    digits[i] = 0;
                }
            }
        });
        if stop {
            break;
        }
    }
    Ok(())
}

fn for_each_combination(n: usize, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        start: usize,
        n: usize,
        k: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return visit(cur);
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            let go_on = rec(i + 1, n, k, cur, visit);
            cur.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(0, n, k, &mut Vec::with_capacity(k), visit);
}

/// Every subspace `V` with `lower ⊆ V ⊆ upper`, enumerated through the
/// subspaces of a complement of `lower` in `upper`.
pub fn for_each_subspace_between<F: Field>(
    lower: &Subspace<F>,
    upper: &Subspace<F>,
    budget: u128,
    mut visit: impl FnMut(&Subspace<F>) -> bool,
) -> Result<()> {
    let comp = lower.complement_in(upper)?;
    let field = lower.field().clone();
    for_each_subspace(&field, comp.dim(), budget, |s| {
        let lifted: Vec<_> = s.basis().iter().map(|c| comp.combine(c)).collect();
        visit(&lower.add_vectors(&lifted))
    })
}

/// Fitting decomposition of an endomorphism: `(ker f^d, im f^d)`.
pub fn fitting_decomposition<F: Field>(f: &Matrix<F>) -> Result<(Subspace<F>, Subspace<F>)> {
    if !f.is_square() {
        return Err(Error::Shape("Fitting decomposition needs a square matrix".into()));
    }
    let power = f.pow(f.rows() as u32)?;
    Ok((power.kernel(), power.image()))
}

/// Zero is an eigenvalue exactly when the map is singular.
pub fn has_zero_eigenvalue<F: Field>(f: &Matrix<F>) -> Result<bool> {
    if !f.is_square() {
        return Err(Error::Shape("eigenvalue test needs a square matrix".into()));
    }
    Ok(!f.kernel().is_zero())
}
