use leibniz_ct::{Field, PrimeField, Rationals};
use proptest::prelude::*;

const PRIMES: [u64; 7] = [2, 3, 5, 7, 11, 13, 2_147_483_647];

fn axioms<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(f.add(a, b), f.add(b, a));
    prop_assert_eq!(f.mul(a, b), f.mul(b, a));
    prop_assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
    prop_assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
    prop_assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
    prop_assert_eq!(f.add(a, &f.zero()), a.clone());
    prop_assert_eq!(f.mul(a, &f.one()), a.clone());
    prop_assert!(f.is_zero(&f.add(a, &f.neg(a))));
    prop_assert_eq!(f.sub(a, b), f.add(a, &f.neg(b)));
    match f.inv(a) {
        Some(ia) => prop_assert_eq!(f.mul(a, &ia), f.one()),
        None => prop_assert!(f.is_zero(a)),
    }
    prop_assert_eq!(f.parse(&f.format(a)).unwrap(), a.clone());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..20) {
        let q = Rationals;
        let x = q.div(&q.from_i64(a), &q.from_i64(d)).unwrap();
        axioms(&q, &x, &q.from_i64(b), &q.from_i64(c))?;
    }

    #[test]
    fn prime_field_axioms(idx in 0..PRIMES.len(), a in any::<i64>(), b in any::<i64>(), c in any::<i64>()) {
        let f = PrimeField::new(PRIMES[idx]).unwrap();
        axioms(&f, &f.from_i64(a), &f.from_i64(b), &f.from_i64(c))?;
    }

    #[test]
    fn fermat(idx in 0..6usize, a in any::<i64>()) {
        let p = PRIMES[idx];
        let f = PrimeField::new(p).unwrap();
        let x = f.from_i64(a);
        let mut acc = f.one();
        for _ in 0..p {
            acc = f.mul(&acc, &x);
        }
        prop_assert_eq!(acc, x);
    }
}

#[test]
fn rejects_composites_and_bad_scalars() {
    for n in [0, 1, 4, 9, 15, 1 << 20] {
        assert!(PrimeField::new(n).is_err());
    }
    let f = PrimeField::new(5).unwrap();
    assert_eq!(f.parse("-1").unwrap(), 4);
    assert!(f.parse("1/2").is_err());
    assert!(Rationals.parse("1/0").is_err());
    let q = Rationals;
    assert_eq!(q.parse("6/4").unwrap(), q.div(&q.from_i64(3), &q.from_i64(2)).unwrap());
    assert_eq!(q.format(&q.parse("-6/4").unwrap()), "-3/2");
}
