use leibniz_ct::linalg::{fitting_decomposition, for_each_subspace, gaussian_binomial, has_zero_eigenvalue};
use leibniz_ct::{Field, Matrix, PrimeField, Rationals, Subspace};
use proptest::prelude::*;

fn gf5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn matrix_strategy(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..=3, r * c)))
}

fn to_matrix<F: Field>(f: &F, r: usize, c: usize, data: &[i64]) -> Matrix<F> {
    let rows: Vec<Vec<F::Elem>> = (0..r).map(|i| (0..c).map(|j| f.from_i64(data[i * c + j])).collect()).collect();
    Matrix::from_rows(f, c, &rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn rank_nullity_and_kernel((r, c, data) in matrix_strategy(5)) {
        for_both(r, c, &data)?;
    }

    #[test]
    fn span_is_canonical((r, c, data) in matrix_strategy(5), shuffle in any::<u64>()) {
        let f = gf5();
        let m = to_matrix(&f, r, c, &data);
        let mut rows = m.row_vecs();
        let s1 = Subspace::span(&f, c, &rows);
        // Reorder and add a combination of existing rows: same span.
        let k = (shuffle as usize) % rows.len();
        rows.rotate_left(k);
        if rows.len() > 1 {
            let extra: Vec<u32> = rows[0].iter().zip(&rows[1]).map(|(a, b)| f.add(a, &f.mul(&3, b))).collect();
            rows.push(extra);
        }
        let s2 = Subspace::span(&f, c, &rows);
        prop_assert_eq!(&s1, &s2);
        prop_assert_eq!(s1.basis(), s2.basis());
        for v in &rows {
            prop_assert!(s1.contains_vector(v));
            let coords = s1.coordinates(v).unwrap();
            prop_assert_eq!(&s1.combine(&coords), v);
        }
    }

    #[test]
    fn fitting_splits_space(n in 1usize..5, data in prop::collection::vec(-2i64..=2, 16)) {
        let q = Rationals;
        let m = to_matrix(&q, n, n, &data[..n * n]);
        let (k, i) = fitting_decomposition(&m).unwrap();
        prop_assert_eq!(k.dim() + i.dim(), n);
        prop_assert!(k.intersect(&i).unwrap().is_zero());
        // Both parts are invariant, nilpotent on the first, invertible on the second.
        let on_k = m.restrict_to(&k).unwrap();
        prop_assert!(on_k.pow(n as u32).unwrap().rank() == 0);
        let on_i = m.restrict_to(&i).unwrap();
        prop_assert_eq!(on_i.rank(), i.dim());
        prop_assert_eq!(has_zero_eigenvalue(&m).unwrap(), q.is_zero(&m.determinant().unwrap()));
    }

    #[test]
    fn solve_agrees_with_apply((r, c, data) in matrix_strategy(4), x in prop::collection::vec(0u32..5, 4)) {
        let f = gf5();
        let m = to_matrix(&f, r, c, &data);
        let x = &x[..c];
        let b = m.apply(x).unwrap();
        let sol = m.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.apply(&sol).unwrap(), b);
    }
}

fn for_both(r: usize, c: usize, data: &[i64]) -> Result<(), TestCaseError> {
    fn check<F: Field>(f: &F, r: usize, c: usize, data: &[i64]) -> Result<(), TestCaseError> {
        let m = to_matrix(f, r, c, data);
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), c);
        for v in k.basis() {
            prop_assert!(m.apply(v).unwrap().iter().all(|x| f.is_zero(x)));
        }
        prop_assert_eq!(m.image().dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
        let (rr, pivots) = m.rref();
        prop_assert_eq!(rr.rref().0, rr.clone());
        prop_assert_eq!(pivots.len(), m.rank());
        Ok(())
    }
    check(&Rationals, r, c, data)?;
    check(&gf5(), r, c, data)
}

#[test]
fn subspace_enumeration_counts() {
    for (p, n) in [(2u64, 3usize), (3, 3), (5, 2), (2, 4)] {
        let f = PrimeField::new(p).unwrap();
        let mut by_dim = vec![0u128; n + 1];
        for_each_subspace(&f, n, 1 << 20, |s| {
            by_dim[s.dim()] += 1;
            true
        })
        .unwrap();
        for (k, &count) in by_dim.iter().enumerate() {
            assert_eq!(count, gaussian_binomial(p, n, k), "GF({p})^{n}, dim {k}");
        }
    }
}

#[test]
fn annihilator_and_sum() {
    let f = gf5();
    let u = Subspace::span(&f, 3, &[vec![1, 2, 0]]);
    let w = Subspace::span(&f, 3, &[vec![0, 1, 1]]);
    let s = u.sum(&w).unwrap();
    assert_eq!(s.dim(), 2);
    assert_eq!(u.annihilator().dim(), 2);
    assert!(u.intersect(&w).unwrap().is_zero());
    let comp = u.complement_in(&s).unwrap();
    assert_eq!(comp.sum(&u).unwrap(), s);
}
