use mtcf::cyclo::totient;
use mtcf::CycloNum;
use num_integer::Integer;
use proptest::prelude::*;

const CONDUCTORS: [u32; 14] = [1, 2, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24, 32];

/// `Σ c_j ζ_n^j` with small rational coefficients over all `j < n`, so the
/// power basis reduction is exercised.
fn elem(n: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((-6i64..=6, 1i64..=4), n as usize).prop_map(move |cs| {
        cs.iter().enumerate().fold(CycloNum::zero(n), |acc, (j, &(p, q))| {
            &acc + &(&CycloNum::root_of_unity(n, j as i64) * &CycloNum::from_ratio(n, p, q))
        })
    })
}

fn triple() -> impl Strategy<Value = (u32, CycloNum, CycloNum, CycloNum)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|n| (Just(n), elem(n), elem(n), elem(n)))
}

fn close(a: (f64, f64), b: (f64, f64), scale: f64) -> bool {
    (a.0 - b.0).abs() <= 1e-9 * scale && (a.1 - b.1).abs() <= 1e-9 * scale
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn field_axioms((n, a, b, c) in triple()) {
        let zero = CycloNum::zero(n);
        let one = CycloNum::one(n);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &zero, a.clone());
        prop_assert_eq!(&a * &one, a.clone());
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), zero);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), one);
            prop_assert_eq!(&b.checked_div(&a).unwrap() * &a, b.clone());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn complex_embedding_is_a_homomorphism((_n, a, b, _c) in triple()) {
        let (za, zb) = (a.to_complex(), b.to_complex());
        let scale = 1.0 + za.0.abs() + za.1.abs() + zb.0.abs() + zb.1.abs();
        let s = (&a + &b).to_complex();
        prop_assert!(close(s, (za.0 + zb.0, za.1 + zb.1), scale));
        prop_assert!(close((&a * &b).to_complex(), cmul(za, zb), scale * scale));
        let conj = a.conjugate().to_complex();
        prop_assert!(close(conj, (za.0, -za.1), scale));
    }

    #[test]
    fn galois_action_is_a_ring_automorphism((n, a, b, _c) in triple(), k0 in 1i64..64) {
        // next unit mod n at or above k0
        let k = (k0..).find(|k| k.gcd(&(n as i64)) == 1).unwrap();
        let g = |x: &CycloNum| x.galois_apply(k).unwrap();
        prop_assert_eq!(g(&(&a + &b)), &g(&a) + &g(&b));
        prop_assert_eq!(g(&(&a * &b)), &g(&a) * &g(&b));
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.conjugate(), a.galois_apply(-1).unwrap());
    }

    #[test]
    fn lifting_and_minimizing_preserve_values((n, a, _b, _c) in triple(), m in 1u32..4) {
        let big = n * m;
        let lifted = a.lift_to(big).unwrap();
        prop_assert_eq!(&lifted, &a);
        prop_assert_eq!(lifted.conductor(), big);
        let small = lifted.minimize();
        prop_assert_eq!(&small, &a);
        prop_assert!(a.conductor() % small.conductor() == 0 || small.conductor() % 2 == 0);
    }

    #[test]
    fn mixed_conductors(i in 0usize..14, j in 0usize..14, x in any::<u64>()) {
        let (n, m) = (CONDUCTORS[i], CONDUCTORS[j]);
        let a = CycloNum::root_of_unity(n, (x % 97) as i64);
        let b = CycloNum::root_of_unity(m, (x % 89) as i64);
        let prod = &a * &b;
        prop_assert!(prod.root_phase().is_some());
        prop_assert_eq!(prod.conductor(), n.lcm(&m));
        prop_assert!(close(prod.to_complex(), cmul(a.to_complex(), b.to_complex()), 4.0));
    }

    #[test]
    fn json_round_trip((_n, a, _b, _c) in triple()) {
        let s = serde_json::to_string(&a).unwrap();
        let back: CycloNum = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn roots_of_unity_and_square_roots() {
    for &n in &CONDUCTORS {
        let z = CycloNum::root_of_unity(n, 1);
        assert!(z.pow(n as i64).unwrap().is_one());
        assert_eq!(z.coeffs().len(), totient(n) as usize);
        let sum = (0..n as i64).fold(CycloNum::zero(n), |acc, j| &acc + &CycloNum::root_of_unity(n, j));
        assert_eq!(sum.is_zero(), n > 1);
    }
    for v in 1..60u64 {
        let r = CycloNum::sqrt_int(v);
        assert_eq!(&r * &r, CycloNum::from_int(1, v as i64));
        assert!(r.is_positive_real());
    }
}
