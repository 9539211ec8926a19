//! Series, kernels, centralisers, and radicals.

use serde::Serialize;

use crate::algebra::LeibnizAlgebra;
use crate::error::{check_budget, Result};
use crate::field::Field;
use crate::linalg::{for_each_subspace, for_each_subspace_between, subspace_count, Matrix, Subspace};

/// Default cap on the number of subspaces visited by exhaustive searches.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms of a descending series, without repetition. The series reaches
/// zero when the last term is zero; otherwise it stabilised at the last term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport<F: Field> {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace<F>>,
}

impl<F: Field> SeriesReport<F> {
    pub fn reaches_zero(&self) -> bool {
        self.terms.last().is_none_or(|t| t.is_zero())
    }

    /// Nilpotency class (lower central) or derived length; `None` when the
    /// series stabilises above zero.
    pub fn length(&self) -> Option<usize> {
        if !self.reaches_zero() {
            return None;
        }
        match self.kind {
            // terms[k] = L^{k+1}; class c means L^{c+1} = 0 at index c
            SeriesKind::LowerCentral | SeriesKind::Derived => Some(self.terms.len() - 1),
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.dim()).collect()
    }
}

/// Lower central or derived series of the subalgebra `U`.
pub fn subspace_series<F: Field>(
    l: &LeibnizAlgebra<F>,
    u: &Subspace<F>,
    kind: SeriesKind,
) -> Result<SeriesReport<F>> {
    let mut terms = vec![u.clone()];
    loop {
        let last = terms.last().expect("nonempty");
        if last.is_zero() {
            break;
        }
        let next = match kind {
            SeriesKind::LowerCentral => l.product_space(last, u)?,
            SeriesKind::Derived => l.product_space(last, last)?,
        };
        if &next == last {
            break;
        }
        terms.push(next);
    }
    Ok(SeriesReport { kind, terms })
}

pub fn series<F: Field>(l: &LeibnizAlgebra<F>, kind: SeriesKind) -> SeriesReport<F> {
    subspace_series(l, &l.whole(), kind).expect("whole space matches the algebra")
}

pub fn is_nilpotent<F: Field>(l: &LeibnizAlgebra<F>) -> bool {
    series(l, SeriesKind::LowerCentral).reaches_zero()
}

pub fn is_solvable<F: Field>(l: &LeibnizAlgebra<F>) -> bool {
    series(l, SeriesKind::Derived).reaches_zero()
}

/// Whether the subalgebra `U` is nilpotent as an algebra.
pub fn is_nilpotent_subspace<F: Field>(l: &LeibnizAlgebra<F>, u: &Subspace<F>) -> Result<bool> {
    Ok(subspace_series(l, u, SeriesKind::LowerCentral)?.reaches_zero())
}

pub fn is_solvable_subspace<F: Field>(l: &LeibnizAlgebra<F>, u: &Subspace<F>) -> Result<bool> {
    Ok(subspace_series(l, u, SeriesKind::Derived)?.reaches_zero())
}

/// Span of all squares, generated by `e_i^2` and `(e_i + e_j)^2`.
pub fn leibniz_kernel<F: Field>(l: &LeibnizAlgebra<F>) -> Subspace<F> {
    let f = l.field();
    let n = l.dim();
    let mut squares = Vec::with_capacity(n * (n + 1) / 2);
    for i in 0..n {
        squares.push(l.basis_product(i, i).to_vec());
        for j in i + 1..n {
            let mut v = l.basis_vector(i);
            v[j] = f.one();
            squares.push(l.product(&v, &v));
        }
    }
    l.span(&squares)
}

/// `{z : z a = a z = 0 for all a}`.
pub fn center<F: Field>(l: &LeibnizAlgebra<F>) -> Subspace<F> {
    let f = l.field();
    let n = l.dim();
    let mut m = Matrix::zeros(f, 0, n);
    for i in 0..n {
        let e = l.basis_vector(i);
        m = m
            .stack(&l.right_op(&e).expect("basis vector"))
            .and_then(|m| m.stack(&l.left_op(&e).expect("basis vector")))
            .expect("square operators");
    }
    m.kernel()
}

/// `C(x) = {a : a x = x a = 0}`.
pub fn centralizer<F: Field>(l: &LeibnizAlgebra<F>, x: &[F::Elem]) -> Result<Subspace<F>> {
    let r = l.right_op(x)?;
    let lo = l.left_op(x)?;
    Ok(r.stack(&lo)?.kernel())
}

/// `{a : a y = 0}`.
pub fn left_centralizer<F: Field>(l: &LeibnizAlgebra<F>, y: &[F::Elem]) -> Result<Subspace<F>> {
    Ok(l.right_op(y)?.kernel())
}

/// `{a : a u = u a = 0 for all u in U}`.
pub fn centralizer_of_subspace<F: Field>(l: &LeibnizAlgebra<F>, u: &Subspace<F>) -> Result<Subspace<F>> {
    let mut m = Matrix::zeros(l.field(), 0, l.dim());
    for b in u.basis() {
        m = m.stack(&l.right_op(b)?)?.stack(&l.left_op(b)?)?;
    }
    Ok(m.kernel())
}

pub fn is_zero_algebra<F: Field>(l: &LeibnizAlgebra<F>) -> bool {
    l.is_zero_algebra()
}

/// `L^2` is nilpotent.
pub fn is_completely_solvable<F: Field>(l: &LeibnizAlgebra<F>) -> bool {
    let whole = l.whole();
    let l2 = l.product_space(&whole, &whole).expect("whole space");
    is_nilpotent_subspace(l, &l2).expect("L^2 is an ideal")
}

/// How a nilradical was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NilradicalMethod {
    /// The largest ideal inside the trace bound is itself nilpotent.
    TraceBound,
    /// Exhaustive search between a verified lower bound and the trace bound.
    Interval,
    /// Infinite field and the bounds did not meet: the result is a verified
    /// nilpotent ideal that may not be maximal.
    Uncertified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilradicalReport<F: Field> {
    pub subspace: Subspace<F>,
    pub method: NilradicalMethod,
}

impl<F: Field> NilradicalReport<F> {
    pub fn certified(&self) -> bool {
        self.method != NilradicalMethod::Uncertified
    }
}

/// Largest nilpotent ideal.
pub fn nilradical<F: Field>(l: &LeibnizAlgebra<F>) -> Subspace<F> {
    nilradical_report(l).subspace
}

/// Largest nilpotent ideal, with the method used to certify maximality.
///
/// Every nilpotent ideal `M` sits inside the largest ideal `J` of the trace
/// bound `{m : tr(A R_m) = 0 for every A in the associative algebra
/// generated by the right multiplications}`, because `A R_m` strictly lowers
/// the filtration `L ⊇ M ⊇ M^2 ⊇ ...`. If `J` is nilpotent it is the
/// nilradical. Otherwise a lower bound is grown from the Leibniz kernel and
/// the centre and the gap is searched exhaustively over finite fields.
pub fn nilradical_report<F: Field>(l: &LeibnizAlgebra<F>) -> NilradicalReport<F> {
    let upper = trace_bound_ideal(l);
    if is_nilpotent_subspace(l, &upper).expect("ideal") {
        return NilradicalReport {
            subspace: upper,
            method: NilradicalMethod::TraceBound,
        };
    }
    let lower = nilpotent_lower_bound(l);
    debug_assert!(upper.contains(&lower).unwrap_or(false));
    if l.field().order().is_some() {
        let mut best = lower.clone();
        let res = for_each_subspace_between(&lower, &upper, DEFAULT_SUBSPACE_BUDGET, |v| {
            if v.dim() > best.dim()
                && l.is_ideal(v).unwrap_or(false)
                && is_nilpotent_subspace(l, v).unwrap_or(false)
            {
                best = v.clone();
            }
            true
        });
        if res.is_ok() {
            return NilradicalReport {
                subspace: best,
                method: NilradicalMethod::Interval,
            };
        }
    }
    NilradicalReport {
        subspace: lower,
        method: NilradicalMethod::Uncertified,
    }
}

/// Associative algebra generated by the identity and every `R_{e_i}`, as a
/// list of linearly independent matrices.
fn right_multiplication_algebra<F: Field>(l: &LeibnizAlgebra<F>) -> Vec<Matrix<F>> {
    let f = l.field();
    let n = l.dim();
    let gens: Vec<_> = (0..n)
        .map(|i| l.right_op(&l.basis_vector(i)).expect("basis vector"))
        .collect();
    let flat = |m: &Matrix<F>| -> Vec<F::Elem> { m.row_vecs().concat() };
    let id = Matrix::identity(f, n);
    let mut span = Subspace::span(f, n * n, &[flat(&id)]);
    let mut found = vec![id];
    let mut cursor = 0;
    while cursor < found.len() {
        let m = found[cursor].clone();
        cursor += 1;
        for g in &gens {
            let p = m.mul(g).expect("square");
            let v = flat(&p);
            if !span.contains_vector(&v) {
                span = span.add_vectors(&[v]);
                found.push(p);
            }
        }
    }
    found
}

/// Largest ideal contained in the trace bound.
pub fn trace_bound_ideal<F: Field>(l: &LeibnizAlgebra<F>) -> Subspace<F> {
    let f = l.field();
    let n = l.dim();
    let gens: Vec<_> = (0..n)
        .map(|i| l.right_op(&l.basis_vector(i)).expect("basis vector"))
        .collect();
    let algebra = right_multiplication_algebra(l);
    let rows: Vec<Vec<F::Elem>> = algebra
        .iter()
        .map(|a| {
            gens.iter()
                .map(|g| a.mul(g).expect("square").trace())
                .collect()
        })
        .collect();
    let bound = Matrix::from_rows(f, n, &rows).expect("rows of length n").kernel();
    largest_ideal_in(l, &bound)
}

/// Largest ideal of `L` contained in the subspace `S`.
pub fn largest_ideal_in<F: Field>(l: &LeibnizAlgebra<F>, s: &Subspace<F>) -> Subspace<F> {
    let n = l.dim();
    let ops: Vec<_> = (0..n)
        .flat_map(|i| {
            let e = l.basis_vector(i);
            [l.right_op(&e).expect("basis"), l.left_op(&e).expect("basis")]
        })
        .collect();
    let mut current = s.clone();
    loop {
        if current.is_zero() {
            return current;
        }
        let eq = current.equations();
        let mut m = eq.clone();
        for op in &ops {
            m = m.stack(&eq.mul(op).expect("square")).expect("width n");
        }
        let next = m.kernel();
        if next == current {
            return current;
        }
        current = next;
    }
}

/// Preimage in `L` of a subspace of `L/B` given in quotient coordinates.
fn lift_from_quotient<F: Field>(
    l: &LeibnizAlgebra<F>,
    base: &Subspace<F>,
    complement_indices: &[usize],
    s: &Subspace<F>,
) -> Subspace<F> {
    let f = l.field();
    let lifted: Vec<_> = s
        .basis()
        .iter()
        .map(|q| {
            let mut v = vec![f.zero(); l.dim()];
            for (&c, x) in complement_indices.iter().zip(q) {
                v[c] = x.clone();
            }
            v
        })
        .collect();
    base.add_vectors(&lifted)
}

/// A nilpotent ideal grown from the Leibniz kernel and centre by repeatedly
/// pulling back the kernel and centre of the quotient.
pub fn nilpotent_lower_bound<F: Field>(l: &LeibnizAlgebra<F>) -> Subspace<F> {
    let mut base = leibniz_kernel(l).sum(&center(l)).expect("same ambient");
    if !is_nilpotent_subspace(l, &base).expect("ideal") {
        base = leibniz_kernel(l);
    }
    loop {
        let q = l.quotient(&base).expect("base is an ideal");
        let candidates = [
            leibniz_kernel(&q.algebra).sum(&center(&q.algebra)).expect("same ambient"),
            leibniz_kernel(&q.algebra),
            center(&q.algebra),
        ];
        let grown = candidates.iter().find_map(|s| {
            if s.is_zero() {
                return None;
            }
            let m = lift_from_quotient(l, &base, &q.complement_indices, s);
            is_nilpotent_subspace(l, &m).expect("ideal").then_some(m)
        });
        match grown {
            Some(m) => base = m,
            None => return base,
        }
    }
}

/// Nilradical by enumerating every subspace (finite fields only).
pub fn nilradical_bruteforce<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<Subspace<F>> {
    let mut nilpotent_ideals = Vec::new();
    for_each_subspace(l.field(), l.dim(), budget, |v| {
        if l.is_ideal(v).unwrap_or(false) && is_nilpotent_subspace(l, v).unwrap_or(false) {
            nilpotent_ideals.push(v.clone());
        }
        true
    })?;
    let best = nilpotent_ideals
        .iter()
        .max_by_key(|v| v.dim())
        .cloned()
        .expect("the zero ideal is nilpotent");
    assert!(
        nilpotent_ideals.iter().all(|v| best.contains(v).unwrap_or(false)),
        "nilpotent ideals must have a unique maximum"
    );
    Ok(best)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalReport<F: Field> {
    pub subspace: Subspace<F>,
    pub certified: bool,
}

/// Largest solvable ideal: iterate `R <- preimage of nilradical(L/R)` until
/// the quotient has no nilpotent ideal.
pub fn solvable_radical<F: Field>(l: &LeibnizAlgebra<F>) -> RadicalReport<F> {
    if is_solvable(l) {
        return RadicalReport {
            subspace: l.whole(),
            certified: true,
        };
    }
    let mut certified = true;
    let mut r = Subspace::zero(l.field(), l.dim());
    loop {
        let q = l.quotient(&r).expect("radical candidates are ideals");
        let report = nilradical_report(&q.algebra);
        certified &= report.certified();
        if report.subspace.is_zero() {
            return RadicalReport { subspace: r, certified };
        }
        r = lift_from_quotient(l, &r, &q.complement_indices, &report.subspace);
    }
}

/// Solvable radical by enumerating every subspace (finite fields only).
pub fn solvable_radical_bruteforce<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<Subspace<F>> {
    check_budget(
        "subspaces",
        subspace_count(l.field().order().unwrap_or(u64::MAX), l.dim()),
        budget,
    )?;
    let mut best = Subspace::zero(l.field(), l.dim());
    let mut all = Vec::new();
    for_each_subspace(l.field(), l.dim(), budget, |v| {
        if l.is_ideal(v).unwrap_or(false) && is_solvable_subspace(l, v).unwrap_or(false) {
            if v.dim() > best.dim() {
                best = v.clone();
            }
            all.push(v.clone());
        }
        true
    })?;
    assert!(all.iter().all(|v| best.contains(v).unwrap_or(false)));
    Ok(best)
}

/// Every ideal of `L` (finite fields only), in enumeration order.
pub fn ideals<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<Vec<Subspace<F>>> {
    let mut out = Vec::new();
    for_each_subspace(l.field(), l.dim(), budget, |v| {
        if l.is_ideal(v).unwrap_or(false) {
            out.push(v.clone());
        }
        true
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn example2<F: Field>(f: &F) -> LeibnizAlgebra<F> {
        LeibnizAlgebra::from_entries(
            f,
            vec!["a".into(), "a2".into()],
            [(0, 0, 1, f.one()), (1, 0, 1, f.one())],
        )
        .unwrap()
    }

    fn nilpotent_cyclic<F: Field>(f: &F) -> LeibnizAlgebra<F> {
        LeibnizAlgebra::from_entries(f, vec!["a".into(), "a2".into()], [(0, 0, 1, f.one())]).unwrap()
    }

    #[test]
    fn series_of_example2() {
        let l = example2(&Rationals);
        let d = series(&l, SeriesKind::Derived);
        assert_eq!(d.dims(), vec![2, 1, 0]);
        assert_eq!(d.length(), Some(2));
        let lc = series(&l, SeriesKind::LowerCentral);
        assert!(!lc.reaches_zero());
        assert_eq!(lc.length(), None);
        let z = LeibnizAlgebra::zero_algebra(&Rationals, 3);
        let lc = series(&z, SeriesKind::LowerCentral);
        assert_eq!(lc.dims(), vec![3, 0]);
        assert_eq!(lc.length(), Some(1));
    }

    #[test]
    fn kernel_center_centralizers() {
        let f = Rationals;
        let l = example2(&f);
        let a = l.basis_vector(0);
        let a2 = l.basis_vector(1);
        assert_eq!(leibniz_kernel(&l), l.span(std::slice::from_ref(&a2)));
        assert!(center(&l).is_zero());
        assert_eq!(centralizer(&l, &a2).unwrap(), l.span(std::slice::from_ref(&a2)));
        let expected = l.span(&[vec![f.one(), f.from_i64(-1)]]);
        assert_eq!(left_centralizer(&l, &a).unwrap(), expected);

        let z = LeibnizAlgebra::zero_algebra(&f, 2);
        assert_eq!(center(&z), z.whole());
        assert_eq!(centralizer(&z, &z.basis_vector(0)).unwrap(), z.whole());
        assert_eq!(left_centralizer(&z, &z.basis_vector(1)).unwrap(), z.whole());

        let nc = nilpotent_cyclic(&f);
        assert_eq!(center(&nc), nc.span(&[nc.basis_vector(1)]));
    }

    #[test]
    fn nilradicals() {
        let f = PrimeField::new(3).unwrap();
        let l = example2(&f);
        let n = nilradical_report(&l);
        assert_eq!(n.subspace, l.span(&[l.basis_vector(1)]));
        assert_eq!(n.subspace, nilradical_bruteforce(&l, 1000).unwrap());
        let nc = nilpotent_cyclic(&f);
        assert_eq!(nilradical(&nc), nc.whole());
        let lq = example2(&Rationals);
        let nq = nilradical_report(&lq);
        assert!(nq.certified());
        assert_eq!(nq.subspace.dim(), 1);
    }

    #[test]
    fn completely_solvable() {
        assert!(is_completely_solvable(&example2(&Rationals)));
        assert!(is_completely_solvable(&nilpotent_cyclic(&Rationals)));
    }
}
