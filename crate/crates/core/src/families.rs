//! Named algebras and random instance generators.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{default_names, LeibnizAlgebra, LeibnizViolation};
use crate::error::{check_budget, Error, Result};
use crate::field::{Field, PrimeField};
use crate::invariants::centralizer;
use crate::linalg::{all_vectors, is_zero_vector, power_count, Matrix, Subspace};

/// Cyclic algebra data: `a^n a = alpha_2 a^2 + ... + alpha_n a^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSpec<F: Field> {
    pub field: F,
    /// `(alpha_2, .., alpha_n)`
    pub alphas: Vec<F::Elem>,
}

impl<F: Field> CyclicSpec<F> {
    pub fn new(field: &F, alphas: Vec<F::Elem>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::Precondition("cyclic algebras need dimension at least 2".into()));
        }
        Ok(CyclicSpec {
            field: field.clone(),
            alphas,
        })
    }

    pub fn dim(&self) -> usize {
        self.alphas.len() + 1
    }

    /// Coefficients of `p(x) = x^n - alpha_n x^{n-1} - ... - alpha_2 x`,
    /// constant term first.
    pub fn companion_polynomial(&self) -> Vec<F::Elem> {
        let f = &self.field;
        let mut c = vec![f.zero()];
        c.extend(self.alphas.iter().map(|a| f.neg(a)));
        c.push(f.one());
        c
    }

    /// Multiplicity of the factor `x` in `p(x)`.
    pub fn x_multiplicity(&self) -> usize {
        let p = self.companion_polynomial();
        p.iter()
            .position(|c| !self.field.is_zero(c))
            .expect("p is monic")
    }

    /// Matrix of `R_a` in the basis `a, a^2, .., a^n`: the companion matrix
    /// of `p(x)`.
    pub fn companion_matrix(&self) -> Matrix<F> {
        cyclic_algebra(self)
            .right_op(&unit_vec(&self.field, self.dim(), 0))
            .expect("basis vector")
    }
}

fn unit_vec<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    crate::linalg::unit(f, n, i)
}

/// Basis `a, a^2, .., a^n` with `a^i a = a^{i+1}`, `a^n a = sum alpha_i a^i`
/// and `a^i a^j = 0` for `j >= 2`.
pub fn cyclic_algebra<F: Field>(spec: &CyclicSpec<F>) -> LeibnizAlgebra<F> {
    let f = &spec.field;
    let n = spec.dim();
    let mut entries = Vec::new();
    for i in 0..n - 1 {
        entries.push((i, 0, i + 1, f.one()));
    }
    for (idx, alpha) in spec.alphas.iter().enumerate() {
        // alpha_{idx+2} multiplies a^{idx+2}, basis index idx+1
        entries.push((n - 1, 0, idx + 1, alpha.clone()));
    }
    let names = (1..=n)
        .map(|i| if i == 1 { "a".to_string() } else { format!("a{i}") })
        .collect();
    let l = LeibnizAlgebra::from_entries(f, names, entries).expect("indices in range");
    assert!(l.is_leibniz(), "cyclic tables always satisfy the Leibniz identity");
    l
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CyclicChecks {
    pub b_square_zero: bool,
    pub b_invertible_on_square: bool,
    pub splits_as_square_plus_b: bool,
    pub centraliser_table_holds: bool,
    pub points_checked: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCriterion<F: Field> {
    pub is_ct: bool,
    /// `b = a^n - alpha_n a^{n-1} - ... - alpha_2 a`, present when `alpha_2 != 0`.
    pub b: Option<Vec<F::Elem>>,
    pub checks: CyclicChecks,
}

impl<F: Field> CyclicCriterion<F> {
    /// Every supporting check passed (vacuous when `alpha_2 = 0`).
    pub fn checks_pass(&self) -> bool {
        !self.is_ct
            || (self.checks.b_square_zero
                && self.checks.b_invertible_on_square
                && self.checks.splits_as_square_plus_b
                && self.checks.centraliser_table_holds)
    }
}

/// Decide CT for a cyclic algebra by `alpha_2 != 0` and verify the
/// supporting structure: `b^2 = 0`, `R_b` invertible on `L^2`,
/// `L = L^2 + Fb`, and the centraliser of `x = n + lambda b` is `L^2`, `Fb` or
/// `0` according to which of `n`, `lambda` vanish. Over finite fields the
/// table is checked at every `x` when `p^n` is at most `max_points`;
/// otherwise at `max_points` seeded samples.
pub fn cyclic_ct_criterion<F: Field>(spec: &CyclicSpec<F>, max_points: usize, seed: u64) -> CyclicCriterion<F> {
    let f = &spec.field;
    let n = spec.dim();
    if f.is_zero(&spec.alphas[0]) {
        return CyclicCriterion {
            is_ct: false,
            b: None,
            checks: CyclicChecks::default(),
        };
    }
    let l = cyclic_algebra(spec);
    let mut b = vec![f.zero(); n];
    b[n - 1] = f.one();
    for (idx, alpha) in spec.alphas.iter().enumerate() {
        // a^{idx+1} has basis index idx
        b[idx] = f.neg(alpha);
    }
    let whole = l.whole();
    let square = l.product_space(&whole, &whole).expect("whole");
    let mut checks = CyclicChecks {
        b_square_zero: crate::linalg::is_zero_vector(f, &l.product(&b, &b)),
        ..CyclicChecks::default()
    };
    let rb = l.right_op(&b).expect("length n");
    checks.b_invertible_on_square = rb
        .restrict_to(&square)
        .map(|m| m.kernel().is_zero())
        .unwrap_or(false);
    let fb = l.span(&[b.clone()]);
    checks.splits_as_square_plus_b = square.intersect(&fb).map(|s| s.is_zero()).unwrap_or(false)
        && square.sum(&fb).map(|s| s.is_full()).unwrap_or(false);

    // x = m + lambda b with m in L^2 given by its coordinates in L^2
    let mut points: Vec<(Vec<F::Elem>, F::Elem)> = Vec::new();
    let exhaustive = f
        .order()
        .is_some_and(|q| power_count(q, n) <= max_points as u128);
    if exhaustive {
        let elems = f.elements().expect("finite");
        for m in all_vectors(f, n - 1, u128::MAX).expect("finite") {
            for lam in &elems {
                points.push((m.clone(), lam.clone()));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..max_points {
            let m: Vec<_> = (0..n - 1).map(|_| random_scalar(f, &mut rng)).collect();
            let lam = random_scalar(f, &mut rng);
            points.push((m, lam));
        }
    }
    let mut table_ok = true;
    for (mc, lam) in &points {
        let m = square.combine(mc);
        let m_zero = crate::linalg::is_zero_vector(f, &m);
        let lam_zero = f.is_zero(lam);
        if m_zero && lam_zero {
            continue;
        }
        let x: Vec<_> = m.iter().zip(&b).map(|(mi, bi)| f.mul_add(mi, lam, bi)).collect();
        let c = centralizer(&l, &x).expect("length n");
        let expected = match (m_zero, lam_zero) {
            (false, true) => square.clone(),
            (true, false) => fb.clone(),
            _ => Subspace::zero(f, n),
        };
        if c != expected {
            table_ok = false;
            break;
        }
    }
    checks.centraliser_table_holds = table_ok;
    checks.points_checked = points.len();
    checks.exhaustive = exhaustive;
    CyclicCriterion {
        is_ct: true,
        b: Some(b),
        checks,
    }
}

/// The Lie algebra `Fe + Ff + F^p` over GF(p) with `e` the cyclic shift and
/// `f = diag(0, 1, .., p-1)`, product
/// `[a + x, b + y] = [a, b] + (x b - y a)` with row vectors acting on the
/// right. Basis order: `e, f, v1, .., vp`.
pub fn jac_example(p: u64) -> Result<LeibnizAlgebra<PrimeField>> {
    let fld = PrimeField::new(p)?;
    if p > 13 {
        return Err(Error::Precondition(format!("p = {p} exceeds the size limit 13")));
    }
    let p = p as usize;
    let n = p + 2;
    let e_mat = shift_matrix(&fld, p);
    let f_mat = {
        let mut m = Matrix::zeros(&fld, p, p);
        for i in 0..p {
            m.set(i, i, fld.from_i64(i as i64));
        }
        m
    };
    let mut entries = Vec::new();
    let one = fld.one();
    let minus_one = fld.neg(&one);
    // [e, f] = ef - fe = e
    entries.push((0, 1, 0, one));
    entries.push((1, 0, 0, minus_one));
    for (gen, mat) in [(0usize, &e_mat), (1usize, &f_mat)] {
        for i in 0..p {
            // v_i . gen = row i of the matrix; gen . v_i is its negative
            for k in 0..p {
                let c = *mat.get(i, k);
                if c != 0 {
                    entries.push((2 + i, gen, 2 + k, c));
                    entries.push((gen, 2 + i, 2 + k, fld.neg(&c)));
                }
            }
        }
    }
    let mut names = vec!["e".to_string(), "f".to_string()];
    names.extend((1..=p).map(|i| format!("x{i}")));
    let l = LeibnizAlgebra::from_entries(&fld, names, entries)?;
    debug_assert_eq!(l.dim(), n);
    assert!(l.is_leibniz() && l.is_lie(), "jac_example must be a Lie algebra");
    Ok(l)
}

/// The displayed four-case centraliser formula for [`jac_example`]: for
/// `x = alpha e + beta f + v`,
///
/// * `alpha = beta = 0`, `v` a multiple of `x1`: `Ff + Fx1`
/// * `alpha = beta = 0`, otherwise: `F^p`
/// * `alpha != 0`: `Fx`
/// * `alpha = 0`, `beta != 0`: `F(beta f + v) + Fx1`
///
/// Returns the case number (1 to 4) and the subspace; `None` for `x = 0`.
pub fn jac_centralizer_table(l: &LeibnizAlgebra<PrimeField>, x: &[u32]) -> Option<(usize, Subspace<PrimeField>)> {
    let f = l.field();
    let n = l.dim();
    if is_zero_vector(f, x) {
        return None;
    }
    let x1 = l.basis_vector(2);
    let module_only = x[0] == 0 && x[1] == 0;
    Some(if module_only {
        if x[3..].iter().all(|&c| c == 0) {
            (1, l.span(&[l.basis_vector(1), x1]))
        } else {
            (2, l.span(&(2..n).map(|i| l.basis_vector(i)).collect::<Vec<_>>()))
        }
    } else if x[0] != 0 {
        (3, l.span(&[x.to_vec()]))
    } else {
        (4, l.span(&[x.to_vec(), x1]))
    })
}

fn shift_matrix(fld: &PrimeField, p: usize) -> Matrix<PrimeField> {
    let mut m = Matrix::zeros(fld, p, p);
    for i in 0..p {
        m.set(i, (i + 1) % p, 1);
    }
    m
}

/// `sl_2` on the basis `(e, h, f)` with `[e,f] = h`, `[h,e] = 2e`,
/// `[h,f] = -2f`.
pub fn sl2<F: Field>(field: &F) -> LeibnizAlgebra<F> {
    let one = field.one();
    let m1 = field.from_i64(-1);
    let two = field.from_i64(2);
    let m2 = field.from_i64(-2);
    let (e, h, fi) = (0, 1, 2);
    let entries = vec![
        (e, fi, h, one.clone()),
        (fi, e, h, m1),
        (h, e, e, two.clone()),
        (e, h, e, m2.clone()),
        (h, fi, fi, m2),
        (fi, h, fi, two),
    ];
    let l = LeibnizAlgebra::from_entries(field, vec!["e".into(), "h".into(), "f".into()], entries)
        .expect("indices in range");
    debug_assert!(l.is_lie());
    l
}

/// Left action convention for [`semidirect_zero_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeftAction {
    /// `c n = -(n c)`
    LieType,
    /// `c n = 0`
    NullLeft,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemidirectRejection<E> {
    Shape(String),
    NotLeibniz(LeibnizViolation<E>),
}

/// `N + A` with `N = F^m` and `A` zero algebras, the `j`-th basis vector
/// `c_j` of `A` acting on the right of `N` by `actions[j]` (column `a` is the
/// image of `n_a`). Basis order: `n1..nm, c1..ck`.
pub fn semidirect_zero_module<F: Field>(
    field: &F,
    m: usize,
    actions: &[Matrix<F>],
    left: LeftAction,
) -> std::result::Result<LeibnizAlgebra<F>, SemidirectRejection<F::Elem>> {
    let k = actions.len();
    for (j, a) in actions.iter().enumerate() {
        if a.rows() != m || a.cols() != m {
            return Err(SemidirectRejection::Shape(format!(
                "action {j} is {}x{}, expected {m}x{m}",
                a.rows(),
                a.cols()
            )));
        }
    }
    let mut entries = Vec::new();
    for (j, act) in actions.iter().enumerate() {
        let c = m + j;
        for a in 0..m {
            for b in 0..m {
                let v = act.get(b, a).clone();
                if field.is_zero(&v) {
                    continue;
                }
                if left == LeftAction::LieType {
                    entries.push((c, a, b, field.neg(&v)));
                }
                entries.push((a, c, b, v));
            }
        }
    }
    let mut names: Vec<String> = (1..=m).map(|i| format!("n{i}")).collect();
    names.extend((1..=k).map(|j| format!("c{j}")));
    let l = LeibnizAlgebra::from_entries(field, names, entries)
        .map_err(|e| SemidirectRejection::Shape(e.to_string()))?;
    l.check_leibniz().map_err(SemidirectRejection::NotLeibniz)?;
    Ok(l)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    Raw,
    LeibnizValid,
    SolvableCtCandidate,
}

/// Default number of tables tried by rejection sampling.
pub const RANDOM_ATTEMPT_BUDGET: usize = 200_000;

/// Uniform over a finite field, uniform over `{-3, .., 3}` for the rationals.
pub fn random_scalar<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    match field.order() {
        Some(q) => field.from_i64(rng.gen_range(0..q) as i64),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

fn random_nonzero<F: Field, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let v = random_scalar(field, rng);
        if !field.is_zero(&v) {
            return v;
        }
    }
}

pub fn random_invertible<F: Field, R: Rng>(field: &F, n: usize, rng: &mut R) -> Matrix<F> {
    loop {
        let rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|_| (0..n).map(|_| random_scalar(field, rng)).collect())
            .collect();
        let m = Matrix::from_rows(field, n, &rows).expect("square");
        if m.rank() == n {
            return m;
        }
    }
}

/// Deterministic random algebra.
///
/// * `Raw`: every structure constant random.
/// * `LeibnizValid`: sparse random tables, rejection-sampled until the
///   identity holds.
/// * `SolvableCtCandidate`: a zero module `F^{dim-1}` extended by one
///   element acting by an invertible diagonal matrix (either left
///   convention), then written in a random basis.
pub fn random_algebra<F: Field>(seed: u64, dim: usize, field: &F, kind: RandomKind) -> Result<LeibnizAlgebra<F>> {
    if dim > 6 {
        return Err(Error::Precondition(format!("random algebras are limited to dimension 6, got {dim}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = dim;
    match kind {
        RandomKind::Raw => {
            let entries: Vec<_> = (0..n * n * n)
                .map(|t| (t / (n * n), (t / n) % n, t % n, random_scalar(field, &mut rng)))
                .collect();
            LeibnizAlgebra::from_entries(field, default_names(n), entries)
        }
        RandomKind::LeibnizValid => {
            for _ in 0..RANDOM_ATTEMPT_BUDGET {
                let nonzero = rng.gen_range(0..=n.max(1) + 1);
                let entries: Vec<_> = (0..nonzero)
                    .map(|_| {
                        (
                            rng.gen_range(0..n),
                            rng.gen_range(0..n),
                            rng.gen_range(0..n),
                            random_nonzero(field, &mut rng),
                        )
                    })
                    .collect();
                let l = LeibnizAlgebra::from_entries(field, default_names(n), entries)?;
                if l.is_leibniz() {
                    return Ok(l);
                }
            }
            check_budget("random table attempts", RANDOM_ATTEMPT_BUDGET as u128 + 1, RANDOM_ATTEMPT_BUDGET as u128)?;
            unreachable!()
        }
        RandomKind::SolvableCtCandidate => {
            if n < 2 {
                return Err(Error::Precondition("solvable CT candidates need dimension at least 2".into()));
            }
            let m = n - 1;
            let mut d = Matrix::zeros(field, m, m);
            for i in 0..m {
                d.set(i, i, random_nonzero(field, &mut rng));
            }
            let left = if rng.gen_bool(0.5) {
                LeftAction::LieType
            } else {
                LeftAction::NullLeft
            };
            let l = semidirect_zero_module(field, m, &[d], left)
                .map_err(|_| Error::Precondition("diagonal actions are always compatible".into()))?;
            let p = random_invertible(field, n, &mut rng);
            l.change_basis(&p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::invariants::{leibniz_kernel, series, SeriesKind};

    #[test]
    fn cyclic_examples() {
        let q = Rationals;
        let ex2 = cyclic_algebra(&CyclicSpec::new(&q, vec![q.one()]).unwrap());
        assert_eq!(*ex2.constant(0, 0, 1), q.one());
        assert_eq!(*ex2.constant(1, 0, 1), q.one());
        assert_eq!(ex2.names(), ["a", "a2"]);

        let f5 = PrimeField::new(5).unwrap();
        let spec = CyclicSpec::new(&f5, vec![1, 0, 2]).unwrap();
        let l = cyclic_algebra(&spec);
        assert_eq!(l.dim(), 4);
        assert!(l.is_leibniz());
        assert_eq!(spec.companion_polynomial(), vec![0, 4, 0, 3, 1]);
        assert_eq!(spec.x_multiplicity(), 1);
        let spec0 = CyclicSpec::new(&f5, vec![0, 0, 2]).unwrap();
        assert_eq!(spec0.x_multiplicity(), 3);
        assert!(CyclicSpec::<Rationals>::new(&q, vec![]).is_err());
    }

    #[test]
    fn cyclic_kernel_is_square() {
        let f3 = PrimeField::new(3).unwrap();
        for alphas in [vec![1, 2], vec![0, 1], vec![2, 0]] {
            let l = cyclic_algebra(&CyclicSpec::new(&f3, alphas).unwrap());
            let whole = l.whole();
            assert_eq!(leibniz_kernel(&l), l.product_space(&whole, &whole).unwrap());
        }
    }

    #[test]
    fn cyclic_criterion_examples() {
        let f3 = PrimeField::new(3).unwrap();
        let c = cyclic_ct_criterion(&CyclicSpec::new(&f3, vec![1]).unwrap(), 10_000, 0);
        assert!(c.is_ct && c.checks_pass() && c.checks.exhaustive);
        assert_eq!(c.b, Some(vec![2, 1]));
        let c = cyclic_ct_criterion(&CyclicSpec::new(&f3, vec![0, 1]).unwrap(), 10_000, 0);
        assert!(!c.is_ct && c.b.is_none());

        let q = Rationals;
        let c = cyclic_ct_criterion(&CyclicSpec::new(&q, vec![q.from_i64(2), q.zero()]).unwrap(), 200, 1);
        assert!(c.is_ct && c.checks_pass());
        assert_eq!(c.b, Some(vec![q.from_i64(-2), q.zero(), q.one()]));
    }

    #[test]
    fn jac_structure() {
        for p in [2, 3, 5, 7] {
            let l = jac_example(p).unwrap();
            assert_eq!(l.dim(), p as usize + 2);
            let f = *l.field();
            let e = l.basis_vector(0);
            let fv = l.basis_vector(1);
            // [e, f] = e
            assert_eq!(l.product(&e, &fv), e);
            assert_eq!(l.product(&fv, &e), e.iter().map(|x| f.neg(x)).collect::<Vec<_>>());
        }
        assert!(jac_example(4).is_err());
        assert!(jac_example(17).is_err());
        let d = series(&jac_example(3).unwrap(), SeriesKind::Derived);
        assert_eq!(d.dims(), vec![5, 4, 3, 0]);
    }

    #[test]
    fn sl2_is_lie() {
        assert!(sl2(&Rationals).is_lie());
        let l = sl2(&PrimeField::new(7).unwrap());
        assert!(l.is_leibniz());
        let h = l.basis_vector(1);
        assert_eq!(centralizer(&l, &h).unwrap(), l.span(&[h]));
    }

    #[test]
    fn semidirect_examples() {
        let q = Rationals;
        let id = Matrix::identity(&q, 2);
        let l = semidirect_zero_module(&q, 2, &[id], LeftAction::LieType).unwrap();
        assert!(l.is_lie() && l.dim() == 3);

        let one = Matrix::identity(&q, 1);
        let l = semidirect_zero_module(&q, 1, &[one], LeftAction::NullLeft).unwrap();
        assert!(!l.is_lie());

        let a = Matrix::from_rows(&q, 2, &[vec![q.zero(), q.one()], vec![q.zero(), q.zero()]]).unwrap();
        let b = a.transpose();
        match semidirect_zero_module(&q, 2, &[a, b], LeftAction::LieType) {
            Err(SemidirectRejection::NotLeibniz(_)) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
        let bad = Matrix::identity(&q, 3);
        assert!(matches!(
            semidirect_zero_module(&q, 2, &[bad], LeftAction::LieType),
            Err(SemidirectRejection::Shape(_))
        ));
    }

    #[test]
    fn random_algebras_are_deterministic() {
        let f3 = PrimeField::new(3).unwrap();
        let a = random_algebra(1, 2, &f3, RandomKind::LeibnizValid).unwrap();
        let b = random_algebra(1, 2, &f3, RandomKind::LeibnizValid).unwrap();
        assert_eq!(a, b);
        assert!(a.is_leibniz());
        let raw = random_algebra(1, 3, &f3, RandomKind::Raw).unwrap();
        assert_eq!(raw, random_algebra(1, 3, &f3, RandomKind::Raw).unwrap());
        let f5 = PrimeField::new(5).unwrap();
        let c = random_algebra(7, 4, &f5, RandomKind::SolvableCtCandidate).unwrap();
        assert!(c.is_leibniz());
        assert!(random_algebra(0, 7, &f5, RandomKind::Raw).is_err());
    }
}
