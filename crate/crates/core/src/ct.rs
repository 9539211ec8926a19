//! Centraliser-transitivity: decision procedures, the A-algebra property,
//! and the lifting and factor checks built on them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::LeibnizAlgebra;
use crate::error::{check_budget, Error, Result};
use crate::field::{Field, Rationals};
use crate::invariants::{centralizer, ideals, is_nilpotent_subspace, is_solvable};
use crate::linalg::{
    all_vectors, for_each_subspace, is_zero_vector, power_count, projective_points, Subspace,
};

/// Default cap on the number of elements enumerated by exhaustive checks.
pub const DEFAULT_ELEMENT_BUDGET: u128 = 1_000_000;
/// Default cap on element pairs for the raw-definition oracle.
pub const DEFAULT_PAIR_BUDGET: u128 = 50_000_000;

/// Evidence that an algebra is not CT: `y` and `z` lie in `C(x)` but do not
/// centralise each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtWitness<E> {
    pub x: Vec<E>,
    pub y: Vec<E>,
    pub z: Vec<E>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CtVerdict<E> {
    Ct,
    NotCt(CtWitness<E>),
    /// No counterexample among the sampled elements (infinite fields only).
    Unfalsified { samples: usize, seed: u64 },
}

impl<E> CtVerdict<E> {
    pub fn is_ct(&self) -> bool {
        matches!(self, CtVerdict::Ct)
    }
    pub fn is_not_ct(&self) -> bool {
        matches!(self, CtVerdict::NotCt(_))
    }
    pub fn status(&self) -> &'static str {
        match self {
            CtVerdict::Ct => "ct",
            CtVerdict::NotCt(_) => "not_ct",
            CtVerdict::Unfalsified { .. } => "unfalsified",
        }
    }
}

fn in_centralizer<F: Field>(l: &LeibnizAlgebra<F>, a: &[F::Elem], x: &[F::Elem]) -> bool {
    let f = l.field();
    is_zero_vector(f, &l.product(a, x)) && is_zero_vector(f, &l.product(x, a))
}

/// Re-check a witness against the transitivity implication itself:
/// `y ∈ C(x)` and `x ∈ C(z)` but `y ∉ C(z)`.
pub fn witness_verifies<F: Field>(l: &LeibnizAlgebra<F>, w: &CtWitness<F::Elem>) -> bool {
    let f = l.field();
    !is_zero_vector(f, &w.x)
        && !is_zero_vector(f, &w.y)
        && !is_zero_vector(f, &w.z)
        && in_centralizer(l, &w.y, &w.x)
        && in_centralizer(l, &w.x, &w.z)
        && !in_centralizer(l, &w.y, &w.z)
}

/// A pair of basis vectors of `C(x)` that do not centralise each other.
fn centralizer_defect<F: Field>(l: &LeibnizAlgebra<F>, x: &[F::Elem]) -> Option<CtWitness<F::Elem>> {
    let c = centralizer(l, x).expect("element of the algebra");
    for (i, y) in c.basis().iter().enumerate() {
        for z in &c.basis()[i..] {
            if !in_centralizer(l, y, z) {
                return Some(CtWitness {
                    x: x.to_vec(),
                    y: y.clone(),
                    z: z.clone(),
                });
            }
        }
    }
    None
}

/// CT over a finite field: every `C(x)`, `x != 0`, must be a zero algebra.
/// Centralisers only depend on the line through `x`, so one representative
/// per line is checked.
pub fn is_ct_exhaustive<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<CtVerdict<F::Elem>> {
    let q = l
        .field()
        .order()
        .ok_or_else(|| Error::InfiniteField(l.field().spec().to_string()))?;
    check_budget("elements", power_count(q, l.dim()), budget)?;
    for x in projective_points(l.field(), l.dim(), budget)? {
        if let Some(w) = centralizer_defect(l, &x) {
            return Ok(CtVerdict::NotCt(w));
        }
    }
    Ok(CtVerdict::Ct)
}

/// CT from the raw definition: for every nonzero `y` and nonzero `x, z`
/// with `x ∈ C(y)` and `y ∈ C(z)`, require `x ∈ C(z)`. Centralisers are
/// collected element by element, without linear algebra, so this serves as
/// an independent oracle for [`is_ct_exhaustive`].
pub fn is_ct_via_definition<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<CtVerdict<F::Elem>> {
    let q = l
        .field()
        .order()
        .ok_or_else(|| Error::InfiniteField(l.field().spec().to_string()))?;
    let total = power_count(q, l.dim());
    check_budget("element pairs", total.saturating_mul(total), budget)?;
    let f = l.field();
    let elements: Vec<_> = all_vectors(f, l.dim(), u128::MAX)?
        .into_iter()
        .filter(|v| !is_zero_vector(f, v))
        .collect();
    for y in &elements {
        let cy: Vec<&Vec<F::Elem>> = elements.iter().filter(|a| in_centralizer(l, a, y)).collect();
        for x in &cy {
            for z in &cy {
                // x ∈ C(y), z ∈ C(y) ⟺ y ∈ C(z)
                if !in_centralizer(l, x, z) {
                    return Ok(CtVerdict::NotCt(CtWitness {
                        x: y.clone(),
                        y: (*x).clone(),
                        z: (*z).clone(),
                    }));
                }
            }
        }
    }
    Ok(CtVerdict::Ct)
}

/// Sample order for the randomized check: basis vectors, then every
/// `±1` sign pattern, then seeded vectors with entries in `{-3, .., 3}`.
pub fn sample_elements(dim: usize, samples: usize, seed: u64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::with_capacity(samples);
    for i in 0..dim {
        if out.len() == samples {
            return out;
        }
        let mut v = vec![0; dim];
        v[i] = 1;
        out.push(v);
    }
    if dim < 20 {
        for mask in 0u64..(1 << dim) {
            if out.len() == samples {
                return out;
            }
            out.push((0..dim).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while out.len() < samples {
        let v: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
        if v.iter().any(|&c| c != 0) {
            out.push(v);
        }
    }
    out
}

/// Randomized falsification over the rationals.
pub fn is_ct_randomized(l: &LeibnizAlgebra<Rationals>, samples: usize, seed: u64) -> CtVerdict<num_rational::BigRational> {
    is_ct_sampled(l, samples, seed)
}

/// Randomized falsification over any field, using the same sample order as
/// [`is_ct_randomized`] with coordinates mapped into the field.
pub fn is_ct_sampled<F: Field>(l: &LeibnizAlgebra<F>, samples: usize, seed: u64) -> CtVerdict<F::Elem> {
    let f = l.field();
    for s in sample_elements(l.dim(), samples, seed) {
        let x: Vec<_> = s.iter().map(|&c| f.from_i64(c)).collect();
        if is_zero_vector(f, &x) {
            continue;
        }
        if let Some(w) = centralizer_defect(l, &x) {
            return CtVerdict::NotCt(w);
        }
    }
    CtVerdict::Unfalsified { samples, seed }
}

/// Exhaustive check over finite fields, sampled otherwise.
pub fn is_ct<F: Field>(l: &LeibnizAlgebra<F>, samples: usize, seed: u64) -> Result<CtVerdict<F::Elem>> {
    if l.field().order().is_some() {
        is_ct_exhaustive(l, DEFAULT_ELEMENT_BUDGET)
    } else {
        Ok(is_ct_sampled(l, samples, seed))
    }
}

/// Every nilpotent subalgebra must be a zero algebra; returns the first
/// nilpotent subalgebra that is not.
pub fn is_a_algebra_exhaustive<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<Option<Subspace<F>>> {
    let mut counterexample = None;
    for_each_subspace(l.field(), l.dim(), budget, |u| {
        let sub = l.is_subalgebra(u).unwrap_or(false);
        if sub && !l.is_zero_subspace(u).unwrap_or(true) && is_nilpotent_subspace(l, u).unwrap_or(false) {
            counterexample = Some(u.clone());
            return false;
        }
        true
    })?;
    Ok(counterexample)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleEigenReport<F: Field> {
    /// Every `x ∉ N` acts on `N` from the right without a zero eigenvalue.
    pub action_side: bool,
    /// `C(n) ⊆ N` for every nonzero `n ∈ N`.
    pub centraliser_side: bool,
    /// An `x ∉ N` with a zero eigenvalue on `N`.
    pub action_witness: Option<Vec<F::Elem>>,
    /// An `n ∈ N` whose centraliser leaves `N`.
    pub centraliser_witness: Option<Vec<F::Elem>>,
    pub exhaustive: bool,
}

impl<F: Field> ModuleEigenReport<F> {
    pub fn agrees(&self) -> bool {
        self.action_side == self.centraliser_side
    }
}

fn require_zero_ideal<F: Field>(l: &LeibnizAlgebra<F>, n: &Subspace<F>) -> Result<()> {
    if !l.is_ideal(n)? {
        return Err(Error::NotAnIdeal);
    }
    if !l.is_zero_subspace(n)? {
        return Err(Error::Precondition("N is not a zero algebra".into()));
    }
    Ok(())
}

/// Representatives of the nonzero elements of the span of `vectors`:
/// all lines over a finite field, seeded samples otherwise.
fn nonzero_points<F: Field>(l: &LeibnizAlgebra<F>, basis: &Subspace<F>, samples: usize, seed: u64) -> Result<(Vec<Vec<F::Elem>>, bool)> {
    let f = l.field();
    if f.order().is_some() {
        Ok((basis.projective_points(DEFAULT_ELEMENT_BUDGET)?, true))
    } else {
        let pts = sample_elements(basis.dim(), samples, seed)
            .into_iter()
            .map(|c| basis.combine(&c.iter().map(|&v| f.from_i64(v)).collect::<Vec<_>>()))
            .filter(|v| !is_zero_vector(f, v))
            .collect();
        Ok((pts, false))
    }
}

/// Compare the two sides of the module lemma for a zero ideal `N`: the
/// right action of every `x ∉ N` on `N` is injective exactly when no nonzero
/// `n ∈ N` has its centraliser leaving `N`.
pub fn module_eigen_check<F: Field>(l: &LeibnizAlgebra<F>, n: &Subspace<F>, samples: usize, seed: u64) -> Result<ModuleEigenReport<F>> {
    require_zero_ideal(l, n)?;
    let f = l.field();
    // The action of x on N only depends on x + N.
    let comp = n.complement_in(&l.whole())?;
    let (xs, exhaustive) = nonzero_points(l, &comp, samples, seed)?;
    let mut action_witness = None;
    for x in xs {
        let r = l.right_op(&x)?.restrict_to(n)?;
        if !r.kernel().is_zero() {
            action_witness = Some(x);
            break;
        }
    }
    let (ns, _) = nonzero_points(l, n, samples, seed)?;
    let mut centraliser_witness = None;
    for v in ns {
        if !n.contains(&centralizer(l, &v)?)? {
            centraliser_witness = Some(v);
            break;
        }
    }
    let _ = f;
    Ok(ModuleEigenReport {
        action_side: action_witness.is_none(),
        centraliser_side: centraliser_witness.is_none(),
        action_witness,
        centraliser_witness,
        exhaustive,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftHypothesis {
    ZeroIdeal,
    QuotientCt,
    CentralisersInside,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LiftOutcome<E> {
    /// Hypotheses hold and `L` re-verified CT.
    Ct,
    HypothesisFailed(LiftHypothesis),
    /// Hypotheses hold but `L` is not CT: the lifting statement fails here.
    Violated(CtWitness<E>),
}

/// If `N` is a zero ideal, `L/N` is CT and `C(n) ⊆ N` for all nonzero
/// `n ∈ N`, then `L` must be CT; the conclusion is re-verified exhaustively.
pub fn lift_ct_check<F: Field>(l: &LeibnizAlgebra<F>, n: &Subspace<F>) -> Result<LiftOutcome<F::Elem>> {
    if l.field().order().is_none() {
        return Err(Error::InfiniteField(l.field().spec().to_string()));
    }
    if require_zero_ideal(l, n).is_err() {
        return Ok(LiftOutcome::HypothesisFailed(LiftHypothesis::ZeroIdeal));
    }
    let q = l.quotient(n)?;
    if !is_ct_exhaustive(&q.algebra, DEFAULT_ELEMENT_BUDGET)?.is_ct() {
        return Ok(LiftOutcome::HypothesisFailed(LiftHypothesis::QuotientCt));
    }
    for v in n.projective_points(DEFAULT_ELEMENT_BUDGET)? {
        if !n.contains(&centralizer(l, &v)?)? {
            return Ok(LiftOutcome::HypothesisFailed(LiftHypothesis::CentralisersInside));
        }
    }
    Ok(match is_ct_exhaustive(l, DEFAULT_ELEMENT_BUDGET)? {
        CtVerdict::NotCt(w) => LiftOutcome::Violated(w),
        _ => LiftOutcome::Ct,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorReport<F: Field> {
    pub ideals_checked: usize,
    /// First ideal whose quotient is not CT.
    pub counterexample: Option<Subspace<F>>,
}

/// For a solvable CT algebra over a finite field, every quotient by an
/// ideal must be CT.
pub fn factor_ct_check<F: Field>(l: &LeibnizAlgebra<F>, budget: u128) -> Result<FactorReport<F>> {
    if !is_solvable(l) {
        return Err(Error::NotSolvable);
    }
    if !is_ct_exhaustive(l, DEFAULT_ELEMENT_BUDGET)?.is_ct() {
        return Err(Error::NotCt);
    }
    let all = ideals(l, budget)?;
    for j in &all {
        let q = l.quotient(j)?;
        if !is_ct_exhaustive(&q.algebra, DEFAULT_ELEMENT_BUDGET)?.is_ct() {
            return Ok(FactorReport {
                ideals_checked: all.len(),
                counterexample: Some(j.clone()),
            });
        }
    }
    Ok(FactorReport {
        ideals_checked: all.len(),
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cyclic_algebra, jac_example, CyclicSpec};
    use crate::field::PrimeField;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn example2_is_ct() {
        for p in [3, 5] {
            let l = cyclic_algebra(&CyclicSpec::new(&gf(p), vec![1]).unwrap());
            assert!(is_ct_exhaustive(&l, 1000).unwrap().is_ct());
            assert!(is_ct_via_definition(&l, 100_000).unwrap().is_ct());
        }
    }

    #[test]
    fn nilpotent_cyclic_is_not_ct() {
        for p in [2, 3] {
            let l = cyclic_algebra(&CyclicSpec::new(&gf(p), vec![0]).unwrap());
            match is_ct_exhaustive(&l, 1000).unwrap() {
                CtVerdict::NotCt(w) => {
                    assert!(witness_verifies(&l, &w));
                    assert_eq!(centralizer(&l, &w.x).unwrap(), l.whole());
                }
                v => panic!("expected not_ct, got {v:?}"),
            }
            match is_ct_via_definition(&l, 100_000).unwrap() {
                CtVerdict::NotCt(w) => assert!(witness_verifies(&l, &w)),
                v => panic!("expected not_ct, got {v:?}"),
            }
        }
    }

    #[test]
    fn zero_algebras_are_ct() {
        let z = LeibnizAlgebra::zero_algebra(&gf(3), 2);
        assert!(is_ct_exhaustive(&z, 1000).unwrap().is_ct());
        let z1 = LeibnizAlgebra::zero_algebra(&gf(2), 1);
        assert!(is_ct_via_definition(&z1, 1000).unwrap().is_ct());
        let zq = LeibnizAlgebra::zero_algebra(&Rationals, 2);
        assert!(matches!(is_ct_randomized(&zq, 50, 0), CtVerdict::Unfalsified { .. }));
    }

    #[test]
    fn randomized_over_rationals() {
        let q = Rationals;
        let ex2 = cyclic_algebra(&CyclicSpec::new(&q, vec![q.one()]).unwrap());
        assert_eq!(
            is_ct_randomized(&ex2, 1000, 0),
            CtVerdict::Unfalsified { samples: 1000, seed: 0 }
        );
        let nc = cyclic_algebra(&CyclicSpec::new(&q, vec![q.zero()]).unwrap());
        match is_ct_randomized(&nc, 1000, 0) {
            CtVerdict::NotCt(w) => {
                assert_eq!(w.x, vec![q.zero(), q.one()]);
                assert!(witness_verifies(&nc, &w));
            }
            v => panic!("expected not_ct, got {v:?}"),
        }
    }

    #[test]
    fn budgets_and_infinite_fields() {
        let l = jac_example(3).unwrap();
        assert!(matches!(is_ct_exhaustive(&l, 100), Err(Error::BudgetExceeded { .. })));
        let q = LeibnizAlgebra::zero_algebra(&Rationals, 2);
        assert!(matches!(is_ct_exhaustive(&q, 100), Err(Error::InfiniteField(_))));
    }

    #[test]
    fn a_algebra_examples() {
        let ex2 = cyclic_algebra(&CyclicSpec::new(&gf(3), vec![1]).unwrap());
        assert_eq!(is_a_algebra_exhaustive(&ex2, 1000).unwrap(), None);
        let nc = cyclic_algebra(&CyclicSpec::new(&gf(3), vec![0]).unwrap());
        assert_eq!(is_a_algebra_exhaustive(&nc, 1000).unwrap(), Some(nc.whole()));
        let z = LeibnizAlgebra::zero_algebra(&gf(2), 3);
        assert_eq!(is_a_algebra_exhaustive(&z, 1000).unwrap(), None);
    }

    #[test]
    fn module_eigen_examples() {
        let ex2 = cyclic_algebra(&CyclicSpec::new(&gf(5), vec![1]).unwrap());
        let n = ex2.span(&[ex2.basis_vector(1)]);
        let r = module_eigen_check(&ex2, &n, 0, 0).unwrap();
        assert!(r.agrees() && r.action_side && r.centraliser_side);

        let z = LeibnizAlgebra::zero_algebra(&gf(3), 2);
        let n = z.span(&[z.basis_vector(0)]);
        let r = module_eigen_check(&z, &n, 0, 0).unwrap();
        assert!(r.agrees() && !r.action_side && !r.centraliser_side);

        let jac = jac_example(3).unwrap();
        let module = jac.span(&(2..5).map(|i| jac.basis_vector(i)).collect::<Vec<_>>());
        let r = module_eigen_check(&jac, &module, 0, 0).unwrap();
        assert!(r.agrees() && !r.action_side);

        let not_ideal = ex2.span(&[ex2.basis_vector(0)]);
        assert!(module_eigen_check(&ex2, &not_ideal, 0, 0).is_err());
    }

    #[test]
    fn lift_examples() {
        let jac = jac_example(3).unwrap();
        let module = jac.span(&(2..5).map(|i| jac.basis_vector(i)).collect::<Vec<_>>());
        // C(x1) = Ff + Fx1 leaves the module.
        assert_eq!(
            lift_ct_check(&jac, &module).unwrap(),
            LiftOutcome::HypothesisFailed(LiftHypothesis::CentralisersInside)
        );
        let ex2 = cyclic_algebra(&CyclicSpec::new(&gf(5), vec![1]).unwrap());
        let i = ex2.span(&[ex2.basis_vector(1)]);
        assert_eq!(lift_ct_check(&ex2, &i).unwrap(), LiftOutcome::Ct);

        let nc = cyclic_algebra(&CyclicSpec::new(&gf(3), vec![0]).unwrap());
        let i = nc.span(&[nc.basis_vector(1)]);
        assert_eq!(
            lift_ct_check(&nc, &i).unwrap(),
            LiftOutcome::HypothesisFailed(LiftHypothesis::CentralisersInside)
        );

        let z = LeibnizAlgebra::zero_algebra(&gf(2), 1);
        assert_eq!(lift_ct_check(&z, &z.whole()).unwrap(), LiftOutcome::Ct);
    }

    #[test]
    fn factor_examples() {
        let ex2 = cyclic_algebra(&CyclicSpec::new(&gf(3), vec![1]).unwrap());
        let r = factor_ct_check(&ex2, 1000).unwrap();
        assert_eq!(r.ideals_checked, 3);
        assert!(r.counterexample.is_none());
        let z = LeibnizAlgebra::zero_algebra(&gf(2), 2);
        assert!(factor_ct_check(&z, 1000).unwrap().counterexample.is_none());
        let nc = cyclic_algebra(&CyclicSpec::new(&gf(3), vec![0]).unwrap());
        assert_eq!(factor_ct_check(&nc, 1000).unwrap_err(), Error::NotCt);
    }
}
