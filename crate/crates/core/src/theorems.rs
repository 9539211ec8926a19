//! Certifiers for the structure theory of CT-algebras: the zero-eigenvalue
//! dichotomy, the splitting over the nilradical, complement transport, and
//! the classification checks.

use serde::Serialize;

use crate::algebra::LeibnizAlgebra;
use crate::ct::{is_ct, CtVerdict};
use crate::error::{check_budget, Error, Result};
use crate::field::Field;
use crate::invariants::{
    ideals, is_completely_solvable, is_solvable, nilradical_report, series, NilradicalMethod,
    SeriesKind, DEFAULT_SUBSPACE_BUDGET,
};
use crate::linalg::{add_vectors, all_vectors, fitting_decomposition, power_count, Matrix, Subspace};

/// Samples used when CT has to be checked over an infinite field.
pub const CT_SAMPLES: usize = 1000;

fn require_ct<F: Field>(l: &LeibnizAlgebra<F>, seed: u64) -> Result<()> {
    match is_ct(l, CT_SAMPLES, seed)? {
        CtVerdict::NotCt(_) => Err(Error::NotCt),
        _ => Ok(()),
    }
}

fn require_finite<F: Field>(l: &LeibnizAlgebra<F>) -> Result<u64> {
    l.field()
        .order()
        .ok_or_else(|| Error::InfiniteField(l.field().spec().to_string()))
}

/// Whether `x` acts on the invariant subspace `u` from the right without a
/// zero eigenvalue.
fn acts_invertibly<F: Field>(l: &LeibnizAlgebra<F>, u: &Subspace<F>, x: &[F::Elem]) -> Result<bool> {
    Ok(l.right_op(x)?.restrict_to(u)?.kernel().is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaSBranch {
    ZeroAlgebra,
    InvertibleAction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LemmaSOutcome {
    Holds(LemmaSBranch),
    /// Neither alternative holds: the dichotomy fails on this instance.
    Violation(String),
}

/// For a CT-algebra `L = A + Fx` with `A` a zero ideal and `x^2 ∈ A`:
/// either `L` is a zero algebra, or `R_x` is invertible on `A` and
/// `Ax = A`. In the second case the Fitting decomposition of `R_x` must
/// have `A` as its invertible part.
pub fn lemma_s_check<F: Field>(l: &LeibnizAlgebra<F>, a: &Subspace<F>, x: &[F::Elem], seed: u64) -> Result<LemmaSOutcome> {
    if x.len() != l.dim() || a.ambient_dim() != l.dim() {
        return Err(Error::Shape("A and x must live in L".into()));
    }
    if !l.is_ideal(a)? {
        return Err(Error::Precondition("A is not an ideal".into()));
    }
    if !l.is_zero_subspace(a)? {
        return Err(Error::Precondition("A is not a zero algebra".into()));
    }
    if a.contains_vector(x) || a.dim() + 1 != l.dim() {
        return Err(Error::Precondition("L is not A + Fx as a direct sum".into()));
    }
    if !a.contains_vector(&l.product(x, x)) {
        return Err(Error::Precondition("x² ∉ A".into()));
    }
    require_ct(l, seed)?;
    if l.is_zero_algebra() {
        return Ok(LemmaSOutcome::Holds(LemmaSBranch::ZeroAlgebra));
    }
    if !acts_invertibly(l, a, x)? {
        return Ok(LemmaSOutcome::Violation("R_x has a zero eigenvalue on A".into()));
    }
    let ax = l.product_space(a, &l.span(&[x.to_vec()]))?;
    if &ax != a {
        return Ok(LemmaSOutcome::Violation("Ax != A".into()));
    }
    let (_, l1) = fitting_decomposition(&l.right_op(x)?)?;
    if &l1 != a {
        return Ok(LemmaSOutcome::Violation("Fitting one-component of R_x differs from A".into()));
    }
    Ok(LemmaSOutcome::Holds(LemmaSBranch::InvertibleAction))
}

/// Calls `pred` on complements of `u` inside `w` (graphs of linear maps
/// from the echelon complement into `u`, the echelon complement first)
/// until it accepts one. Finite fields only.
pub fn search_complement<F: Field>(
    u: &Subspace<F>,
    w: &Subspace<F>,
    budget: u128,
    mut pred: impl FnMut(&Subspace<F>) -> bool,
) -> Result<Option<Subspace<F>>> {
    let f = u.field();
    let c = u.complement_in(w)?;
    if pred(&c) {
        return Ok(Some(c));
    }
    let (k, m) = (c.dim(), u.dim());
    if k == 0 || m == 0 {
        return Ok(None);
    }
    let q = f.order().ok_or_else(|| Error::InfiniteField(f.spec().to_string()))?;
    check_budget("complements", power_count(q, k * m), budget)?;
    for t in all_vectors(f, k * m, budget)?.into_iter().skip(1) {
        let vectors: Vec<_> = c
            .basis()
            .iter()
            .enumerate()
            .map(|(j, cj)| add_vectors(f, cj, &u.combine(&t[j * m..(j + 1) * m])))
            .collect();
        let cand = Subspace::span(f, u.ambient_dim(), &vectors);
        if pred(&cand) {
            return Ok(Some(cand));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvClause {
    /// Chain of zero subalgebras through the derived series.
    Chain,
    /// Splitting over the nilradical, which is the last derived term.
    Splitting,
    /// Invertible action of every `x ∉ N` on `N`.
    Action,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvCertificate<F: Field> {
    pub nilradical: Subspace<F>,
    pub nilradical_method: NilradicalMethod,
    pub derived_length: usize,
    /// `L^(0), .., L^(n)`.
    pub derived_terms: Vec<Subspace<F>>,
    /// `A_n, .., A_0`.
    pub chain: Vec<Subspace<F>>,
    /// Levels whose complement needed a search beyond the echelon one.
    pub searched_levels: Vec<usize>,
    /// A subalgebra complement of `N`.
    pub complement: Subspace<F>,
    /// Number of elements `x ∉ N` checked for the action clause.
    pub action_elements: u128,
}

impl<F: Field> SolvCertificate<F> {
    /// Re-checks the certificate from scratch: each partial sum of the chain
    /// is the matching derived term with trivial intersections, every `A_i`
    /// is a zero subalgebra, `N = L^(n)`, and the complement is a
    /// subalgebra with `L = N + B` direct.
    pub fn verify(&self, l: &LeibnizAlgebra<F>) -> bool {
        let f = l.field();
        let n = self.derived_length - 1;
        if self.chain.len() != n + 1 || self.derived_terms.len() != n + 1 {
            return false;
        }
        let mut acc = Subspace::zero(f, l.dim());
        for (pos, a) in self.chain.iter().enumerate() {
            let i = n - pos;
            let direct = acc.intersect(a).map(|s| s.is_zero()).unwrap_or(false);
            acc = match acc.sum(a) {
                Ok(s) => s,
                Err(_) => return false,
            };
            let zero_sub = l.is_subalgebra(a).unwrap_or(false) && l.is_zero_subspace(a).unwrap_or(false);
            if !direct || !zero_sub || acc != self.derived_terms[i] {
                return false;
            }
        }
        let splits = self.nilradical.intersect(&self.complement).map(|s| s.is_zero()).unwrap_or(false)
            && self.nilradical.sum(&self.complement).map(|s| s.is_full()).unwrap_or(false)
            && l.is_subalgebra(&self.complement).unwrap_or(false);
        acc.is_full() && splits && self.nilradical == self.derived_terms[n]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvFailure<E> {
    pub clause: SolvClause,
    pub reason: String,
    pub witness: Option<Vec<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolvOutcome<F: Field> {
    Certified(SolvCertificate<F>),
    Failed(SolvFailure<F::Elem>),
}

impl<F: Field> SolvOutcome<F> {
    pub fn certificate(&self) -> Option<&SolvCertificate<F>> {
        match self {
            SolvOutcome::Certified(c) => Some(c),
            SolvOutcome::Failed(_) => None,
        }
    }
}

fn fail<F: Field>(clause: SolvClause, reason: impl Into<String>, witness: Option<Vec<F::Elem>>) -> Result<SolvOutcome<F>> {
    Ok(SolvOutcome::Failed(SolvFailure {
        clause,
        reason: reason.into(),
        witness,
    }))
}

/// Builds and checks the decomposition of a solvable CT-algebra over a
/// finite field:
///
/// 1. `L = A_n + .. + A_0` with zero subalgebras `A_i` and
///    `L^(i) = A_n + .. + A_i`;
/// 2. the nilradical equals `L^(n)` and has a subalgebra complement;
/// 3. every `x ∉ N` acts invertibly on `N` with `Nx = N`.
pub fn solv_decomposition<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<SolvOutcome<F>> {
    require_finite(l)?;
    if l.dim() == 0 {
        return Err(Error::Precondition("the algebra has dimension 0".into()));
    }
    if !is_solvable(l) {
        return Err(Error::NotSolvable);
    }
    require_ct(l, 0)?;
    let f = l.field();
    let derived = series(l, SeriesKind::Derived);
    let derived_length = derived.length().expect("solvable");
    let n = derived_length - 1;
    let terms: Vec<Subspace<F>> = derived.terms[..=n].to_vec();
    let nil = nilradical_report(l);
    let big_n = nil.subspace.clone();

    let mut chain = Vec::with_capacity(n + 1);
    let mut searched_levels = Vec::new();
    chain.push(terms[n].clone());
    if !l.is_zero_subspace(&terms[n])? {
        return fail(SolvClause::Chain, format!("L^({n}) is not a zero algebra"), None);
    }
    for i in (0..n).rev() {
        let mut first = true;
        let found = search_complement(&terms[i + 1], &terms[i], budget, |c| {
            let ok = l.is_subalgebra(c).unwrap_or(false) && l.is_zero_subspace(c).unwrap_or(false);
            if !ok && first {
                searched_levels.push(i);
            }
            first = false;
            ok
        })?;
        match found {
            Some(a) => chain.push(a),
            None => {
                return fail(
                    SolvClause::Chain,
                    format!("no zero-subalgebra complement of L^({}) in L^({i})", i + 1),
                    None,
                )
            }
        }
    }

    if big_n != terms[n] {
        return fail(
            SolvClause::Splitting,
            format!("nilradical of dimension {} differs from L^({n})", big_n.dim()),
            None,
        );
    }
    let mut greedy = Subspace::zero(f, l.dim());
    for a in &chain[1..] {
        greedy = greedy.sum(a)?;
    }
    let complement = if l.is_subalgebra(&greedy)? {
        Some(greedy)
    } else {
        search_complement(&big_n, &l.whole(), budget, |c| l.is_subalgebra(c).unwrap_or(false))?
    };
    let Some(complement) = complement else {
        return fail(SolvClause::Splitting, "no subalgebra complement of N", None);
    };

    let mut action_elements = 0u128;
    for x in all_vectors(f, l.dim(), budget)? {
        if big_n.contains_vector(&x) {
            continue;
        }
        action_elements += 1;
        if !acts_invertibly(l, &big_n, &x)? {
            return fail(SolvClause::Action, "R_x has a zero eigenvalue on N", Some(x));
        }
        if l.product_space(&big_n, &l.span(std::slice::from_ref(&x)))? != big_n {
            return fail(SolvClause::Action, "Nx != N", Some(x));
        }
    }

    Ok(SolvOutcome::Certified(SolvCertificate {
        nilradical: big_n,
        nilradical_method: nil.method,
        derived_length,
        derived_terms: terms,
        chain,
        searched_levels,
        complement,
        action_elements,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodimReport {
    pub dim: usize,
    pub nilradical_dim: usize,
    pub codim: usize,
    /// `codim <= 2`. Informational: the bound is only claimed over
    /// algebraically closed fields.
    pub within_bound: bool,
    pub nilradical_certified: bool,
}

pub fn codim_report<F: Field>(l: &LeibnizAlgebra<F>) -> Result<CodimReport> {
    if !is_solvable(l) {
        return Err(Error::NotSolvable);
    }
    let nil = nilradical_report(l);
    let codim = l.dim() - nil.subspace.dim();
    Ok(CodimReport {
        dim: l.dim(),
        nilradical_dim: nil.subspace.dim(),
        codim,
        within_bound: codim <= 2,
        nilradical_certified: nil.certified(),
    })
}

/// Which multiplication `theta = 1 + M_n` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `theta(y) = y + n y`
    Left,
    /// `theta(y) = y + y n`
    Right,
}

/// Matrix of `1 + L_n` or `1 + R_n`.
pub fn theta_matrix<F: Field>(l: &LeibnizAlgebra<F>, n: &[F::Elem], side: Side) -> Result<Matrix<F>> {
    let op = match side {
        Side::Left => l.left_op(n)?,
        Side::Right => l.right_op(n)?,
    };
    Matrix::identity(l.field(), l.dim()).add(&op)
}

/// Image of a subspace under `1 + L_n` or `1 + R_n`.
pub fn theta_image<F: Field>(l: &LeibnizAlgebra<F>, n: &[F::Elem], side: Side, u: &Subspace<F>) -> Result<Subspace<F>> {
    let t = theta_matrix(l, n, side)?;
    let images = u.basis().iter().map(|v| t.apply(v)).collect::<Result<Vec<_>>>()?;
    Ok(l.span(&images))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transporter<E> {
    pub n: Vec<E>,
    /// `(1 + L_n)(A0) = A0'` re-checked by applying the map.
    pub verified: bool,
}

/// Finds `n ∈ N` with `(1 + L_n)(A0) = A0'` for two zero-subalgebra
/// complements of the nilradical of a completely solvable CT-algebra. The
/// condition `a_j + n a_j ∈ A0'` is linear in `n`. Returns `None` when no
/// such `n` exists.
pub fn complement_transporter<F: Field>(
    l: &LeibnizAlgebra<F>,
    a0: &Subspace<F>,
    a0p: &Subspace<F>,
    seed: u64,
) -> Result<Option<Transporter<F::Elem>>> {
    if !is_completely_solvable(l) {
        return Err(Error::Precondition("L is not completely solvable".into()));
    }
    require_ct(l, seed)?;
    let nil = nilradical_report(l).subspace;
    for (name, c) in [("A0", a0), ("A0'", a0p)] {
        let zero_sub = l.is_subalgebra(c)? && l.is_zero_subspace(c)?;
        if !zero_sub {
            return Err(Error::Precondition(format!("{name} is not a zero subalgebra")));
        }
        let complements = nil.intersect(c)?.is_zero() && nil.sum(c)?.is_full();
        if !complements {
            return Err(Error::Precondition(format!("{name} is not a complement of N")));
        }
    }
    let f = l.field();
    let eq = a0p.equations();
    let nmat = Matrix::from_columns(f, l.dim(), nil.basis())?;
    let mut rows: Vec<Vec<F::Elem>> = Vec::new();
    let mut rhs: Vec<F::Elem> = Vec::new();
    for a in a0.basis() {
        // n a = R_a n, with n = N t
        let coeff = eq.mul(&l.right_op(a)?)?.mul(&nmat)?;
        let target = eq.apply(a)?;
        rows.extend(coeff.row_vecs());
        rhs.extend(target.iter().map(|v| f.neg(v)));
    }
    let t = if rows.is_empty() {
        Some(vec![f.zero(); nil.dim()])
    } else {
        Matrix::from_rows(f, nil.dim(), &rows)?.solve(&rhs)?
    };
    let Some(t) = t else {
        return Ok(None);
    };
    let n = nil.combine(&t);
    let verified = nil.contains_vector(&n) && &theta_image(l, &n, Side::Left, a0)? == a0p;
    Ok(Some(Transporter { n, verified }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaWitness<E> {
    pub i: usize,
    pub j: usize,
    /// `theta(e_i e_j)`
    pub image_of_product: Vec<E>,
    /// `theta(e_i) theta(e_j)`
    pub product_of_images: Vec<E>,
}

/// Whether `theta = 1 + L_n` is multiplicative, with the first failing
/// basis pair.
pub fn theta_automorphism_test<F: Field>(l: &LeibnizAlgebra<F>, n: &[F::Elem]) -> Result<(bool, Option<ThetaWitness<F::Elem>>)> {
    theta_homomorphism_test(l, n, Side::Left)
}

pub fn theta_homomorphism_test<F: Field>(
    l: &LeibnizAlgebra<F>,
    n: &[F::Elem],
    side: Side,
) -> Result<(bool, Option<ThetaWitness<F::Elem>>)> {
    let t = theta_matrix(l, n, side)?;
    for i in 0..l.dim() {
        for j in 0..l.dim() {
            let lhs = t.apply(l.basis_product(i, j))?;
            let rhs = l.product(&t.column(i), &t.column(j));
            if lhs != rhs {
                return Ok((
                    false,
                    Some(ThetaWitness {
                        i,
                        j,
                        image_of_product: lhs,
                        product_of_images: rhs,
                    }),
                ));
            }
        }
    }
    Ok((true, None))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Solvable,
    /// Dimension 3, Lie, perfect and without proper nonzero ideals.
    Sl2Like,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MainReport {
    pub classification: Classification,
    pub dim: usize,
    pub is_lie: bool,
    pub solvable: bool,
    pub perfect: bool,
    /// Only `0` and `L` are ideals; `None` when not enumerated.
    pub simple: Option<bool>,
    /// The classification is only claimed over algebraically closed fields.
    pub field_not_closed: bool,
    /// Characteristic 2 or 3, excluded by the classification's hypotheses.
    pub small_characteristic: bool,
}

/// Observational check of the classification of CT-algebras: solvable, or
/// sl2-like by invariants. `Other` is reported, not treated as a failure.
pub fn main_theorem_check<F: Field>(l: &LeibnizAlgebra<F>) -> Result<MainReport> {
    require_finite(l)?;
    require_ct(l, 0)?;
    let solvable = is_solvable(l);
    let whole = l.whole();
    let perfect = l.product_space(&whole, &whole)? == whole;
    let is_lie = l.is_lie();
    let simple = if !solvable && l.dim() == 3 {
        Some(ideals(l, DEFAULT_SUBSPACE_BUDGET)?.len() == 2)
    } else {
        None
    };
    let classification = if solvable {
        Classification::Solvable
    } else if l.dim() == 3 && is_lie && perfect && simple == Some(true) {
        Classification::Sl2Like
    } else {
        Classification::Other
    };
    let p = l.field().spec().characteristic();
    Ok(MainReport {
        classification,
        dim: l.dim(),
        is_lie,
        solvable,
        perfect,
        simple,
        field_not_closed: true,
        small_characteristic: p == 2 || p == 3,
    })
}

/// For a cyclic CT-algebra with kernel `I` and `b` spanning a complement:
/// `I b = I` and `b I = 0`.
pub fn kernel_action_sides<F: Field>(l: &LeibnizAlgebra<F>, i: &Subspace<F>, b: &[F::Elem]) -> Result<(bool, bool)> {
    let fb = l.span(&[b.to_vec()]);
    let right = &l.product_space(i, &fb)? == i;
    let left = l.product_space(&fb, i)?.is_zero();
    Ok((right, left))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ct::DEFAULT_ELEMENT_BUDGET;
    use crate::families::{cyclic_algebra, jac_example, semidirect_zero_module, sl2, CyclicSpec, LeftAction};
    use crate::field::{PrimeField, Rationals};

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn example2<F: Field>(f: &F) -> LeibnizAlgebra<F> {
        cyclic_algebra(&CyclicSpec::new(f, vec![f.one()]).unwrap())
    }

    fn b_of<F: Field>(f: &F) -> Vec<F::Elem> {
        vec![f.neg(&f.one()), f.one()]
    }

    #[test]
    fn lemma_s_examples() {
        let f = gf(5);
        let ex2 = example2(&f);
        let a = ex2.span(&[ex2.basis_vector(1)]);
        assert_eq!(
            lemma_s_check(&ex2, &a, &b_of(&f), 0).unwrap(),
            LemmaSOutcome::Holds(LemmaSBranch::InvertibleAction)
        );
        let z = LeibnizAlgebra::zero_algebra(&f, 2);
        let a = z.span(&[z.basis_vector(0)]);
        assert_eq!(
            lemma_s_check(&z, &a, &z.basis_vector(1), 0).unwrap(),
            LemmaSOutcome::Holds(LemmaSBranch::ZeroAlgebra)
        );
        let q = Rationals;
        let ex2q = example2(&q);
        let aq = ex2q.span(&[ex2q.basis_vector(1)]);
        assert_eq!(
            lemma_s_check(&ex2q, &aq, &ex2q.basis_vector(0), 0).unwrap(),
            LemmaSOutcome::Holds(LemmaSBranch::InvertibleAction)
        );
        let fa = ex2q.span(&[ex2q.basis_vector(0)]);
        assert_eq!(
            lemma_s_check(&ex2q, &fa, &ex2q.basis_vector(1), 0).unwrap_err(),
            Error::Precondition("A is not an ideal".into())
        );
    }

    #[test]
    fn lemma_s_on_jac_module() {
        // F^3 + Fe is a subalgebra of jac_example(3); restrict and check.
        let jac = jac_example(3).unwrap();
        let mut gens = vec![jac.basis_vector(0)];
        gens.extend((2..5).map(|i| jac.basis_vector(i)));
        let sub = jac.span(&gens);
        let l = jac.restrict(&sub).unwrap();
        let a = l.span(&(1..4).map(|i| l.basis_vector(i)).collect::<Vec<_>>());
        assert_eq!(
            lemma_s_check(&l, &a, &l.basis_vector(0), 0).unwrap(),
            LemmaSOutcome::Holds(LemmaSBranch::InvertibleAction)
        );
    }

    #[test]
    fn solv_on_example2() {
        let f = gf(5);
        let ex2 = example2(&f);
        let cert = solv_decomposition(&ex2, DEFAULT_ELEMENT_BUDGET).unwrap();
        let cert = cert.certificate().expect("certified");
        assert_eq!(cert.nilradical, ex2.span(&[ex2.basis_vector(1)]));
        assert_eq!(cert.chain, vec![ex2.span(&[ex2.basis_vector(1)]), ex2.span(&[b_of(&f)])]);
        assert_eq!(cert.action_elements, 20);
        assert!(cert.verify(&ex2));
    }

    #[test]
    fn jac_is_rejected_as_not_ct() {
        // x1 is killed by f, so C(x1) = Ff + F^p is not a zero algebra.
        let jac = jac_example(3).unwrap();
        assert_eq!(solv_decomposition(&jac, DEFAULT_ELEMENT_BUDGET).unwrap_err(), Error::NotCt);
        assert_eq!(main_theorem_check(&jac_example(5).unwrap()).unwrap_err(), Error::NotCt);
    }

    #[test]
    fn solv_on_semidirect() {
        let f = gf(3);
        let d = Matrix::from_rows(&f, 2, &[vec![1, 0], vec![0, 2]]).unwrap();
        let l = semidirect_zero_module(&f, 2, &[d], LeftAction::LieType).unwrap();
        let cert = solv_decomposition(&l, DEFAULT_ELEMENT_BUDGET).unwrap();
        let cert = cert.certificate().expect("certified").clone();
        assert_eq!(cert.derived_length, 2);
        assert_eq!(cert.nilradical.dim(), 2);
        assert_eq!(cert.action_elements, 27 - 9);
        assert!(cert.verify(&l));
    }

    #[test]
    fn solv_rejects_non_ct() {
        let nc = cyclic_algebra(&CyclicSpec::new(&gf(3), vec![0]).unwrap());
        assert_eq!(solv_decomposition(&nc, 1000).unwrap_err(), Error::NotCt);
        assert_eq!(solv_decomposition(&sl2(&gf(5)), 1000).unwrap_err(), Error::NotSolvable);
    }

    #[test]
    fn codim_examples() {
        assert_eq!(codim_report(&example2(&gf(5))).unwrap().codim, 1);
        for p in [2, 3, 5] {
            let r = codim_report(&jac_example(p).unwrap()).unwrap();
            assert_eq!((r.codim, r.within_bound), (2, true));
        }
        assert_eq!(codim_report(&LeibnizAlgebra::zero_algebra(&gf(2), 3)).unwrap().codim, 0);
    }

    fn lie3(f: &PrimeField) -> LeibnizAlgebra<PrimeField> {
        semidirect_zero_module(f, 2, &[Matrix::identity(f, 2)], LeftAction::LieType).unwrap()
    }

    #[test]
    fn transporter_examples() {
        let f = gf(5);
        let l = lie3(&f);
        let c = l.basis_vector(2);
        let a0 = l.span(std::slice::from_ref(&c));
        let a0p = l.span(&[vec![1, 0, 1]]);
        let t = complement_transporter(&l, &a0, &a0p, 0).unwrap().unwrap();
        assert_eq!(t.n, vec![1, 0, 0]);
        assert!(t.verified);
        let a0p = l.span(&[vec![0, 2, 1]]);
        let t = complement_transporter(&l, &a0, &a0p, 0).unwrap().unwrap();
        assert_eq!(t.n, vec![0, 2, 0]);

        let ex2 = example2(&f);
        let fb = ex2.span(&[b_of(&f)]);
        let t = complement_transporter(&ex2, &fb, &fb, 0).unwrap().unwrap();
        assert_eq!(t.n, vec![0, 0]);
        assert!(t.verified);
    }

    #[test]
    fn theta_examples() {
        let q = Rationals;
        let ex2 = example2(&q);
        let (ok, w) = theta_automorphism_test(&ex2, &ex2.basis_vector(1)).unwrap();
        assert!(!ok);
        let w = w.unwrap();
        assert_eq!((w.i, w.j), (0, 0));
        assert_eq!(w.image_of_product, vec![q.zero(), q.one()]);
        assert_eq!(w.product_of_images, vec![q.zero(), q.from_i64(2)]);
        let (ok, _) = theta_automorphism_test(&ex2, &ex2.zero()).unwrap();
        assert!(ok);
        // 1 + R_n is the identity for n in the kernel.
        let fb = ex2.span(&[b_of(&q)]);
        assert_eq!(theta_image(&ex2, &ex2.basis_vector(1), Side::Right, &fb).unwrap(), fb);
        assert!(theta_homomorphism_test(&ex2, &ex2.basis_vector(1), Side::Right).unwrap().0);
    }

    #[test]
    fn main_examples() {
        assert_eq!(main_theorem_check(&sl2(&gf(5))).unwrap().classification, Classification::Sl2Like);
        assert_eq!(main_theorem_check(&example2(&gf(5))).unwrap().classification, Classification::Solvable);
        let nc = cyclic_algebra(&CyclicSpec::new(&gf(5), vec![0]).unwrap());
        assert_eq!(main_theorem_check(&nc).unwrap_err(), Error::NotCt);
    }

    #[test]
    fn kernel_sides_on_cyclic() {
        let f = gf(5);
        let spec = CyclicSpec::new(&f, vec![2, 1]).unwrap();
        let l = cyclic_algebra(&spec);
        let crit = crate::families::cyclic_ct_criterion(&spec, 1000, 0);
        let i = crate::invariants::leibniz_kernel(&l);
        assert_eq!(kernel_action_sides(&l, &i, &crit.b.unwrap()).unwrap(), (true, true));
    }
}
