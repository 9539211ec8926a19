//! Algebras given by structure constants, with the right Leibniz identity
//! `x(yz) = (xy)z - (xz)y` as the validity condition.
//!
//! Left Leibniz algebras are handled by passing the opposite table
//! (`c'[i][j] = c[j][i]`).

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::linalg::{is_zero_vector, sub_vectors, unit, zero_vector, Matrix, Subspace};

/// A finite-dimensional algebra over `F` with basis `e_0, .., e_{n-1}` and
/// products `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra<F: Field> {
    field: F,
    dim: usize,
    names: Vec<String>,
    table: Vec<F::Elem>,
}

/// First basis triple violating the identity, with both sides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizViolation<E> {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub lhs: Vec<E>,
    pub rhs: Vec<E>,
}

/// Quotient algebra together with the projection onto it.
#[derive(Clone, Debug)]
pub struct Quotient<F: Field> {
    pub algebra: LeibnizAlgebra<F>,
    /// `dim(L/J) x dim(L)` matrix of the canonical projection.
    pub projection: Matrix<F>,
    /// Basis indices of `L` whose images form the quotient basis.
    pub complement_indices: Vec<usize>,
}

pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl<F: Field> LeibnizAlgebra<F> {
    /// Algebra from sparse structure constants `(i, j, k, c)`; later entries
    /// for the same coordinate overwrite earlier ones.
    pub fn from_entries(
        field: &F,
        names: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F::Elem)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut table = vec![field.zero(); n * n * n];
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::IndexOutOfRange(format!(
                    "structure constant ({i},{j},{k}) in dimension {n}"
                )));
            }
            table[(i * n + j) * n + k] = c;
        }
        Ok(LeibnizAlgebra {
            field: field.clone(),
            dim: n,
            names,
            table,
        })
    }

    /// Algebra from the products of basis pairs: `products[i][j]` holds the
    /// coordinates of `e_i e_j`.
    pub fn from_products(field: &F, names: Vec<String>, products: &[Vec<Vec<F::Elem>>]) -> Result<Self> {
        let n = names.len();
        if products.len() != n || products.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("product table must be {n}x{n}")));
        }
        let mut table = Vec::with_capacity(n * n * n);
        for row in products {
            for v in row {
                if v.len() != n {
                    return Err(Error::Shape(format!("product vector of length {}", v.len())));
                }
                table.extend(v.iter().cloned());
            }
        }
        Ok(LeibnizAlgebra {
            field: field.clone(),
            dim: n,
            names,
            table,
        })
    }

    pub fn zero_algebra(field: &F, n: usize) -> Self {
        LeibnizAlgebra {
            field: field.clone(),
            dim: n,
            names: default_names(n),
            table: vec![field.zero(); n * n * n],
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.dim {
            return Err(Error::Shape("basis name count differs from dimension".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn set_constant(&mut self, i: usize, j: usize, k: usize, v: F::Elem) {
        let n = self.dim;
        self.table[(i * n + j) * n + k] = v;
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[F::Elem] {
        let n = self.dim;
        &self.table[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        unit(&self.field, self.dim, i)
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        zero_vector(&self.field, self.dim)
    }

    fn check_len(&self, v: &[F::Elem]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::Shape(format!(
                "element of length {} in a {}-dimensional algebra",
                v.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// `x y`, checking lengths.
    pub fn mult(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.product(x, y))
    }

    /// `x y` without length checks.
    pub fn product(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        let f = &self.field;
        let n = self.dim;
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let s = f.mul(xi, yj);
                for (o, c) in out.iter_mut().zip(self.basis_product(i, j)) {
                    if !f.is_zero(c) {
                        *o = f.mul_add(o, &s, c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `R_x : y -> y x`.
    pub fn right_op(&self, x: &[F::Elem]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.product(&self.basis_vector(j), x))
            .collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    /// Matrix of `L_x : y -> x y`.
    pub fn left_op(&self, x: &[F::Elem]) -> Result<Matrix<F>> {
        self.check_len(x)?;
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.product(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&self.field, self.dim, &cols)
    }

    fn triple(&self, i: usize, j: usize, k: usize) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let ei = self.basis_vector(i);
        let lhs = self.product(&ei, self.basis_product(j, k));
        let a = self.product(self.basis_product(i, j), &self.basis_vector(k));
        let b = self.product(self.basis_product(i, k), &self.basis_vector(j));
        (lhs, sub_vectors(f, &a, &b))
    }

    /// The first basis triple where the right Leibniz identity fails.
    pub fn check_leibniz(&self) -> std::result::Result<(), LeibnizViolation<F::Elem>> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (lhs, rhs) = self.triple(i, j, k);
                    if lhs != rhs {
                        return Err(LeibnizViolation { i, j, k, lhs, rhs });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_leibniz(&self) -> bool {
        self.check_leibniz().is_ok()
    }

    /// Every violating basis triple.
    pub fn leibniz_violations(&self) -> Vec<LeibnizViolation<F::Elem>> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (lhs, rhs) = self.triple(i, j, k);
                    if lhs != rhs {
                        out.push(LeibnizViolation { i, j, k, lhs, rhs });
                    }
                }
            }
        }
        out
    }

    /// `e_i e_i = 0` and `e_i e_j + e_j e_i = 0`.
    pub fn is_lie(&self) -> bool {
        let f = &self.field;
        let n = self.dim;
        for i in 0..n {
            if !is_zero_vector(f, self.basis_product(i, i)) {
                return false;
            }
            for j in i + 1..n {
                let ok = self
                    .basis_product(i, j)
                    .iter()
                    .zip(self.basis_product(j, i))
                    .all(|(a, b)| f.is_zero(&f.add(a, b)));
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_zero_algebra(&self) -> bool {
        self.table.iter().all(|c| self.field.is_zero(c))
    }

    fn check_subspace(&self, u: &Subspace<F>) -> Result<()> {
        if u.ambient_dim() != self.dim {
            return Err(Error::Shape(format!(
                "subspace of F^{} in a {}-dimensional algebra",
                u.ambient_dim(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Span of all products `u v` with `u` in `U`, `v` in `V`.
    pub fn product_space(&self, u: &Subspace<F>, v: &Subspace<F>) -> Result<Subspace<F>> {
        self.check_subspace(u)?;
        self.check_subspace(v)?;
        let mut products = Vec::with_capacity(u.dim() * v.dim());
        for a in u.basis() {
            for b in v.basis() {
                products.push(self.product(a, b));
            }
        }
        Ok(Subspace::span(&self.field, self.dim, &products))
    }

    pub fn whole(&self) -> Subspace<F> {
        Subspace::full(&self.field, self.dim)
    }

    pub fn span(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        Subspace::span(&self.field, self.dim, vectors)
    }

    /// Smallest subalgebra containing `generators`.
    pub fn generated_subalgebra(&self, generators: &[Vec<F::Elem>]) -> Result<Subspace<F>> {
        for g in generators {
            self.check_len(g)?;
        }
        let mut current = self.span(generators);
        loop {
            let next = current.sum(&self.product_space(&current, &current)?)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    /// Smallest ideal containing `generators`.
    pub fn generated_ideal(&self, generators: &[Vec<F::Elem>]) -> Result<Subspace<F>> {
        for g in generators {
            self.check_len(g)?;
        }
        let whole = self.whole();
        let mut current = self.span(generators);
        loop {
            let next = current
                .sum(&self.product_space(&current, &whole)?)?
                .sum(&self.product_space(&whole, &current)?)?;
            if next == current {
                return Ok(current);
            }
            current = next;
        }
    }

    pub fn is_subalgebra(&self, u: &Subspace<F>) -> Result<bool> {
        u.contains(&self.product_space(u, u)?)
    }

    pub fn is_ideal(&self, u: &Subspace<F>) -> Result<bool> {
        let whole = self.whole();
        Ok(u.contains(&self.product_space(u, &whole)?)? && u.contains(&self.product_space(&whole, u)?)?)
    }

    /// `[U, U] = 0`.
    pub fn is_zero_subspace(&self, u: &Subspace<F>) -> Result<bool> {
        Ok(self.product_space(u, u)?.is_zero())
    }

    /// Quotient by an ideal, on the basis of unit vectors at the non-pivot
    /// columns of the ideal.
    pub fn quotient(&self, ideal: &Subspace<F>) -> Result<Quotient<F>> {
        self.check_subspace(ideal)?;
        if !self.is_ideal(ideal)? {
            return Err(Error::NotAnIdeal);
        }
        let pivots = ideal.pivots();
        let keep: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let m = keep.len();
        let project = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = ideal.reduce(v);
            keep.iter().map(|&c| r[c].clone()).collect()
        };
        let mut products = Vec::with_capacity(m);
        for &a in &keep {
            let mut row = Vec::with_capacity(m);
            for &b in &keep {
                row.push(project(self.basis_product(a, b)));
            }
            products.push(row);
        }
        let names = keep.iter().map(|&c| self.names[c].clone()).collect();
        let algebra = LeibnizAlgebra::from_products(&self.field, names, &products)?;
        let cols: Vec<_> = (0..self.dim).map(|j| project(&self.basis_vector(j))).collect();
        let projection = Matrix::from_columns(&self.field, m, &cols)?;
        Ok(Quotient {
            algebra,
            projection,
            complement_indices: keep,
        })
    }

    /// The subalgebra `U` as an algebra in its canonical basis.
    pub fn restrict(&self, u: &Subspace<F>) -> Result<LeibnizAlgebra<F>> {
        self.check_subspace(u)?;
        let m = u.dim();
        let mut products = Vec::with_capacity(m);
        for a in u.basis() {
            let mut row = Vec::with_capacity(m);
            for b in u.basis() {
                let p = self.product(a, b);
                row.push(u.coordinates(&p).ok_or(Error::NotASubalgebra)?);
            }
            products.push(row);
        }
        let names = u.basis().iter().map(|b| self.format_element(b)).collect();
        LeibnizAlgebra::from_products(&self.field, names, &products)
    }

    /// Re-express the algebra in the basis given by the columns of an
    /// invertible matrix.
    pub fn change_basis(&self, basis: &Matrix<F>) -> Result<LeibnizAlgebra<F>> {
        let n = self.dim;
        if basis.rows() != n || basis.cols() != n || basis.rank() != n {
            return Err(Error::Precondition("change of basis must be invertible".into()));
        }
        let new_basis: Vec<_> = (0..n).map(|c| basis.column(c)).collect();
        let mut products = Vec::with_capacity(n);
        for a in &new_basis {
            let mut row = Vec::with_capacity(n);
            for b in &new_basis {
                let p = self.product(a, b);
                row.push(basis.solve(&p)?.expect("basis is invertible"));
            }
            products.push(row);
        }
        LeibnizAlgebra::from_products(&self.field, default_names(n), &products)
    }

    /// Human-readable linear combination of basis names, e.g. `a2 - a`.
    pub fn format_element(&self, v: &[F::Elem]) -> String {
        let f = &self.field;
        let mut out = String::new();
        for (c, name) in v.iter().zip(&self.names) {
            if f.is_zero(c) {
                continue;
            }
            let s = f.format(c);
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Parse a linear combination of basis names such as `a2-a` or
    /// `2*e1 + 1/2 e3`.
    pub fn parse_element(&self, text: &str) -> Result<Vec<F::Elem>> {
        parse_linear_expression(&self.field, &self.names, text)
    }
}

fn parse_linear_expression<F: Field>(field: &F, names: &[String], text: &str) -> Result<Vec<F::Elem>> {
    let err = || Error::Expression(text.to_string());
    let mut out = vec![field.zero(); names.len()];
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(err());
    }
    if s == "0" {
        return Ok(out);
    }
    // split into signed terms
    let mut terms = Vec::new();
    let mut start = 0;
    for (idx, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && idx > start {
            terms.push(&s[start..idx]);
            start = idx;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (neg, body) = match term.as_bytes().first() {
            Some(b'-') => (true, &term[1..]),
            Some(b'+') => (false, &term[1..]),
            _ => (false, term),
        };
        if body.is_empty() {
            return Err(err());
        }
        let (coef, name) = match body.split_once('*') {
            Some((c, n)) => (field.parse(c).map_err(|_| err())?, n),
            None => match names.iter().position(|n| n == body) {
                Some(_) => (field.one(), body),
                None => {
                    // leading numeric coefficient without '*', longest name match
                    let idx = names
                        .iter()
                        .filter(|n| body.ends_with(n.as_str()) && body.len() > n.len())
                        .max_by_key(|n| n.len())
                        .ok_or_else(err)?;
                    let c = &body[..body.len() - idx.len()];
                    (field.parse(c).map_err(|_| err())?, idx.as_str())
                }
            },
        };
        let k = names.iter().position(|n| n == name).ok_or_else(err)?;
        let c = if neg { field.neg(&coef) } else { coef };
        out[k] = field.add(&out[k], &c);
    }
    Ok(out)
}

/// An algebra over a field chosen at runtime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyAlgebra {
    Rational(LeibnizAlgebra<Rationals>),
    Prime(LeibnizAlgebra<PrimeField>),
}

impl AnyAlgebra {
    pub fn field_spec(&self) -> FieldSpec {
        match self {
            AnyAlgebra::Rational(_) => FieldSpec::Rationals,
            AnyAlgebra::Prime(a) => a.field().spec(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyAlgebra::Rational(a) => a.dim(),
            AnyAlgebra::Prime(a) => a.dim(),
        }
    }

    pub fn names(&self) -> &[String] {
        match self {
            AnyAlgebra::Rational(a) => a.names(),
            AnyAlgebra::Prime(a) => a.names(),
        }
    }
}

impl From<LeibnizAlgebra<Rationals>> for AnyAlgebra {
    fn from(a: LeibnizAlgebra<Rationals>) -> Self {
        AnyAlgebra::Rational(a)
    }
}

impl From<LeibnizAlgebra<PrimeField>> for AnyAlgebra {
    fn from(a: LeibnizAlgebra<PrimeField>) -> Self {
        AnyAlgebra::Prime(a)
    }
}

/// Build an algebra from textual structure constants `(i, j, k, c)`.
pub fn make_algebra(
    field: FieldSpec,
    names: Vec<String>,
    entries: &[(usize, usize, usize, String)],
) -> Result<AnyAlgebra> {
    fn build<F: Field>(
        f: &F,
        names: Vec<String>,
        entries: &[(usize, usize, usize, String)],
    ) -> Result<LeibnizAlgebra<F>> {
        let parsed = entries
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, f.parse(c)?)))
            .collect::<Result<Vec<_>>>()?;
        LeibnizAlgebra::from_entries(f, names, parsed)
    }
    Ok(match field {
        FieldSpec::Rationals => AnyAlgebra::Rational(build(&Rationals, names, entries)?),
        FieldSpec::PrimeField(p) => AnyAlgebra::Prime(build(&PrimeField::new(p as u64)?, names, entries)?),
    })
}
