use leibniz_ct::ct::{is_ct, is_ct_exhaustive, is_ct_via_definition, lift_ct_check, module_eigen_check, LiftOutcome};
use leibniz_ct::families::{cyclic_algebra, jac_example, random_algebra, sl2, CyclicSpec, RandomKind};
use leibniz_ct::invariants::{
    center, centralizer, ideals, is_nilpotent, is_solvable, leibniz_kernel, nilradical_report, series,
    solvable_radical, solvable_radical_bruteforce, SeriesKind, DEFAULT_SUBSPACE_BUDGET,
};
use leibniz_ct::{Field, LeibnizAlgebra, PrimeField, Rationals};
use proptest::prelude::*;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn kernel_and_series(seed in 0u64..10_000, n in 1usize..5) {
        let l = random_algebra(seed, n, &gf(3), RandomKind::LeibnizValid).unwrap();
        let i = leibniz_kernel(&l);
        prop_assert!(l.is_ideal(&i).unwrap());
        prop_assert!(l.product_space(&l.whole(), &i).unwrap().is_zero());
        prop_assert!(l.quotient(&i).unwrap().algebra.is_lie());
        let lower = series(&l, SeriesKind::LowerCentral);
        let derived = series(&l, SeriesKind::Derived);
        for w in lower.dims().windows(2).chain(derived.dims().windows(2)) {
            prop_assert!(w[1] <= w[0]);
        }
        prop_assert!(!lower.reaches_zero() || derived.reaches_zero());
        prop_assert_eq!(is_nilpotent(&l), lower.reaches_zero());
        let z = center(&l);
        prop_assert!(l.is_ideal(&z).unwrap());
        let nil = nilradical_report(&l);
        prop_assert!(nil.certified());
        let rad = solvable_radical(&l);
        prop_assert_eq!(&rad.subspace, &solvable_radical_bruteforce(&l, DEFAULT_SUBSPACE_BUDGET).unwrap());
        prop_assert!(rad.subspace.contains(&nil.subspace).unwrap());
    }

    #[test]
    fn ct_oracles_agree(seed in 0u64..10_000, n in 1usize..4) {
        let l = random_algebra(seed, n, &gf(3), RandomKind::LeibnizValid).unwrap();
        let a = is_ct_exhaustive(&l, 1 << 20).unwrap();
        let b = is_ct_via_definition(&l, 1 << 24).unwrap();
        prop_assert_eq!(a.is_ct(), b.is_ct());
    }

    #[test]
    fn centralisers_contain_their_element_when_square_zero(seed in 0u64..10_000, n in 1usize..5) {
        let l = random_algebra(seed, n, &gf(5), RandomKind::LeibnizValid).unwrap();
        for i in 0..n {
            let x = l.basis_vector(i);
            let c = centralizer(&l, &x).unwrap();
            let sq_zero = l.product(&x, &x).iter().all(|v| *v == 0);
            prop_assert_eq!(c.contains_vector(&x), sq_zero);
        }
    }
}

fn example2<F: Field>(f: &F) -> LeibnizAlgebra<F> {
    cyclic_algebra(&CyclicSpec::new(f, vec![f.one()]).unwrap())
}

#[test]
fn corpus_values() {
    let q = Rationals;
    let ex2 = example2(&q);
    assert_eq!(series(&ex2, SeriesKind::Derived).dims(), vec![2, 1, 0]);
    assert_eq!(nilradical_report(&ex2).subspace, ex2.span(&[ex2.basis_vector(1)]));
    assert!(is_solvable(&ex2) && !is_nilpotent(&ex2));
    let nc = cyclic_algebra(&CyclicSpec::new(&q, vec![q.zero()]).unwrap());
    assert!(is_nilpotent(&nc));
    assert!(is_ct(&nc, 100, 0).unwrap().is_not_ct());
    let s = sl2(&gf(7));
    assert!(center(&s).is_zero());
    assert_eq!(ideals(&s, DEFAULT_SUBSPACE_BUDGET).unwrap().len(), 2);
    assert!(is_ct(&s, 0, 0).unwrap().is_ct());
}

#[test]
fn jac_module_facts() {
    let jac = jac_example(3).unwrap();
    let module = jac.span(&(2..5).map(|i| jac.basis_vector(i)).collect::<Vec<_>>());
    let r = module_eigen_check(&jac, &module, 100, 0).unwrap();
    assert!(r.agrees());
    assert!(matches!(lift_ct_check(&jac, &module).unwrap(), LiftOutcome::HypothesisFailed(_)));
    // f kills x1 from both sides.
    let c = centralizer(&jac, &jac.basis_vector(2)).unwrap();
    assert!(c.contains_vector(&jac.basis_vector(1)));
    assert_eq!(c.dim(), 4);
}
