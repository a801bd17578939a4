use std::sync::OnceLock;

use mtcf::pipeline::psu35;
use mtcf::rings::{find_ring_iso, verify_ring_iso, FusionRing};
use mtcf::su3k::su3_fusion;
use proptest::prelude::*;

fn rings() -> &'static Vec<FusionRing> {
    static R: OnceLock<Vec<FusionRing>> = OnceLock::new();
    R.get_or_init(|| {
        let mut v: Vec<FusionRing> = (1..=4).map(|k| su3_fusion(k).unwrap()).collect();
        v.push(psu35().unwrap().ring);
        v
    })
}

/// A permutation of `0..n` fixing 0.
fn unit_fixing_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>()).prop_shuffle().prop_map(|mut p| {
        p.insert(0, 0);
        p
    })
}

fn ring_and_perm() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (0..rings().len()).prop_flat_map(|i| (Just(i), unit_fixing_perm(rings()[i].rank())))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelled_rings_are_recognised((i, perm) in ring_and_perm()) {
        let a = &rings()[i];
        let b = a.permute(&perm).unwrap();
        let isos = find_ring_iso(a, &b);
        prop_assert!(isos.contains(&perm));
        for s in &isos {
            prop_assert!(verify_ring_iso(a, &b, s));
        }
        // automorphism counts are relabelling invariant
        prop_assert_eq!(isos.len(), find_ring_iso(a, a).len());
    }

    #[test]
    fn perturbed_rings_are_never_isomorphic((i, perm) in ring_and_perm(), x in any::<usize>()) {
        let a = &rings()[i];
        let r = a.rank();
        // bump N_jj^j: either the axioms break or the ring is genuinely different
        let mut n = a.permute(&perm).unwrap().constants();
        let j = 1 + x % (r - 1);
        n[j][j][j] += 1;
        if let Ok(b) = FusionRing::unnamed(n) {
            prop_assert!(find_ring_iso(a, &b).is_empty());
        }
    }
}

#[test]
fn ring_axioms_hold() {
    for ring in rings() {
        let r = ring.rank();
        for a in 0..r {
            assert_eq!(ring.get(a, 0, a), 1);
            assert_eq!(ring.get(a, ring.dual(a), 0), 1);
            for b in 0..r {
                for c in 0..r {
                    assert_eq!(ring.get(a, b, c), ring.get(b, a, c));
                    // Frobenius reciprocity
                    assert_eq!(ring.get(a, b, c), ring.get(ring.dual(a), c, b));
                    let lhs: u32 = (0..r).map(|e| ring.get(a, b, e) * ring.get(e, c, 0)).sum();
                    let rhs: u32 = (0..r).map(|e| ring.get(b, c, e) * ring.get(a, e, 0)).sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let lhs: u32 = (0..r).map(|e| ring.get(a, b, e) * ring.get(e, c, d)).sum();
                        let rhs: u32 = (0..r).map(|e| ring.get(b, c, e) * ring.get(a, e, d)).sum();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
