//! One line per acceptance criterion; exits nonzero if any fails.
//! All comparisons are exact except the floating-point Verlinde oracle in
//! criterion 8, which is rounded to integers with tolerance 1e-8.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use mtcf::condense::{aggregate_fusion, orbit_structure};
use mtcf::gidata::{enumerate_small, SmallFamily};
use mtcf::linalg::{char_poly, is_squarefree, solve};
use mtcf::modular::{
    adjoint_labels, centralizer_labels, dual_permutation, galois_conjugate_data, grading_components,
    reconstruct_s, units_mod, validate_modular, verlinde_fusion,
};
use mtcf::par::Exec;
use mtcf::pipeline::{galois_elimination, psu35, run_pipeline_sixteen};
use mtcf::rings::{find_ring_iso, verify_ring_iso};
use mtcf::su3k::{psu3_component, su3_fusion, su3_simples};
use mtcf::CycloNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let d = hyperbolic().data();
    ensure(d.rank() == 28, || format!("rank {}", d.rank()))?;
    let dims = d.dims();
    let want = [(qs(1, 0), 4), (qs(3, 2), 4), (qs(4, 2), 6), (qs(2, 2), 14)];
    for (x, n) in &want {
        let got = dims.iter().filter(|d| *d == x).count();
        ensure(got == *n, || format!("{got} simples of dimension {x}, want {n}"))?;
    }
    Ok("rank 28, dims {1×4, 3+2√2×4, 4+2√2×6, 2+2√2×14}".into())
}

fn criterion_2() -> Outcome {
    for (name, r) in [("hyperbolic", hyperbolic()), ("elliptic", elliptic())] {
        let rep = validate_modular(r.data());
        ensure(rep.overall, || format!("{name}: {:?}", rep.failures()))?;
    }
    let small: Vec<_> = [SmallFamily::Z2z2, SmallFamily::Z4]
        .into_iter()
        .flat_map(|f| enumerate_small(f).unwrap())
        .collect();
    for g in &small {
        let rep = validate_modular(&g.data);
        ensure(rep.overall, || format!("{}: {:?}", g.data.provenance(), rep.failures()))?;
    }
    let d = hyperbolic().data();
    let i = r28_idx("(3,1)_g");
    let bad = d.with_twist(i, -&d.t()[i]).map_err(|e| e.to_string())?;
    ensure(!validate_modular(&bad).overall, || "perturbed twist accepted".into())?;
    Ok(format!("rank 28 (both forms) and {} rank-10 sets valid; perturbed twist rejected", small.len()))
}

fn r28_idx(l: &str) -> usize {
    hyperbolic().idx(l)
}

fn criterion_3() -> Outcome {
    for r in [hyperbolic(), elliptic()] {
        let c = centralizer_labels(r.data(), r.boson()).map_err(|e| e.to_string())?;
        ensure(r.set(&c) == set_of(&CENTRALIZER), || format!("centralizer {:?}", r.set(&c)))?;
        let ad = adjoint_labels(r.data());
        ensure(r.set(&ad) == set_of(&J_AD), || format!("adjoint {:?}", r.set(&ad)))?;
        let g = grading_components(r.data()).map_err(|e| e.to_string())?;
        ensure(g.order == 4 && g.components.len() == 4, || format!("grading of order {}", g.order))?;
        for (k, want) in [(0, &J_AD[..]), (1, &J1[..]), (2, &J2[..]), (3, &J3[..])] {
            ensure(r.set(&g.components[k]) == set_of(want), || format!("component {k}: {:?}", r.set(&g.components[k])))?;
        }
        let dual = dual_permutation(r.data()).ok_or("no dual permutation")?;
        for (a, b) in J1.iter().zip(J3) {
            ensure(dual[r.idx(a)] == r.idx(b), || format!("{a}* is {}", r.data().label(dual[r.idx(a)])))?;
        }
    }
    Ok("|⟨b⟩′| = 16, |C_ad| = 8, J1/J2/J3 exact, dual J1 → J3".into())
}

fn criterion_4() -> Outcome {
    let r = hyperbolic();
    let rep = r.adjoint_condensation();
    let orders = branch_orders(r, &rep);
    for (&i, (name, d, t)) in orders[0].iter().zip(condensed_rows()) {
        ensure(rep.spectrum[i].dim == d && rep.spectrum[i].twist == t, || {
            format!("{name}: d = {}, θ = {}", rep.spectrum[i].dim, rep.spectrum[i].twist)
        })?;
    }
    let dom = adjoint_labels(r.data());
    let classes = orbit_structure(r.data(), r.boson(), &dom).map_err(|e| e.to_string())?;
    let c = |l: &str| classes.iter().find(|c| c.members.contains(&r.idx(l))).unwrap();
    let (one, w, y, v, u) = (c("(0,0)"), c("(0,0,π)"), c("(3,1)_g"), c("(2,1)_γ"), c("(4,0)_γ"));
    let agg = |x, yy| [one, w, y, v, u].map(|z| aggregate_fusion(&r.ring, r.boson(), x, yy, z));
    let rows = [
        ("V⊗W", agg(v, w), [0, 2, 2, 1, 2]),
        ("U⊗U", agg(u, u), [2, 0, 2, 2, 2]),
        ("Y⊗Y", agg(y, y), [2, 4, 2, 2, 2]),
        ("U⊗V", agg(u, v), [0, 2, 2, 0, 2]),
    ];
    for (name, got, want) in rows {
        ensure(got == want, || format!("aggregate {name} = {got:?}, want {want:?}"))?;
    }
    ensure(rep.unique(), || format!("{} rings up to branch swaps", rep.rings.len()))?;
    let hit = orders.iter().any(|o| fusion_matrix_in(&rep.rings[0], o[2], o) == as_vecs(&N_Y1));
    ensure(hit, || "N_Y1 differs in every branch ordering".into())?;
    Ok(format!("7 simples exact, 4 aggregate rows, unique ring ({} nodes), N_Y1 matches", rep.nodes))
}

fn criterion_5() -> Outcome {
    let ws = su3_simples(5);
    ensure(ws.len() == 21, || format!("{} simples", ws.len()))?;
    ensure(psu3_component(&ws).len() == 7, || "triality-0 component is not rank 7".into())?;
    let p = psu35().map_err(|e| e.to_string())?;
    for (i, (name, d, t)) in psu35_rows().into_iter().enumerate() {
        ensure(p.ring.names()[i] == name && p.dims[i] == d && p.twists[i] == t, || {
            format!("{}: d = {}, θ = {}", p.ring.names()[i], p.dims[i], p.twists[i])
        })?;
    }
    let order: Vec<usize> = (0..7).collect();
    ensure(fusion_matrix_in(&p.ring, 1, &order) == as_vecs(&N_LAMBDA), || "N_Λ differs".into())?;
    let int = |m: Vec<Vec<u32>>| -> Vec<Vec<i64>> { m.into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect() };
    let nl = int(p.ring.fusion_matrix(1));
    let cp: Vec<BigRational> = char_poly(&nl).into_iter().map(BigRational::from_integer).collect();
    ensure(is_squarefree(&cp), || "N_Λ has a repeated eigenvalue".into())?;
    let mut pows = vec![(0..7).map(|i| (0..7).map(|j| i64::from(i == j)).collect::<Vec<_>>()).collect::<Vec<_>>()];
    for _ in 1..7 {
        let last = pows.last().unwrap();
        let next = (0..7).map(|i| (0..7).map(|j| (0..7).map(|k| last[i][k] * nl[k][j]).sum()).collect()).collect();
        pows.push(next);
    }
    let q = |v: i64| BigRational::from_integer(BigInt::from(v));
    let rows: Vec<Vec<BigRational>> = (0..49).map(|e| pows.iter().map(|pw| q(pw[e / 7][e % 7])).collect()).collect();
    for x in 0..7 {
        let target = int(p.ring.fusion_matrix(x));
        let rhs: Vec<BigRational> = (0..49).map(|e| q(target[e / 7][e % 7])).collect();
        let c = solve(&rows, &rhs).ok_or_else(|| format!("N_{} is not a polynomial in N_Λ", p.ring.names()[x]))?;
        for e in 0..49 {
            let v: BigRational = rows[e].iter().zip(&c).map(|(a, b)| a * b).sum();
            ensure(v == rhs[e], || format!("N_{} polynomial residual", p.ring.names()[x]))?;
        }
    }
    Ok("21 simples, PSU rank 7 exact, N_Λ matches, squarefree, all N_x ∈ Q[N_Λ]".into())
}

fn criterion_6() -> Outcome {
    let r = hyperbolic();
    let rep = r.adjoint_condensation();
    let p = psu35().map_err(|e| e.to_string())?;
    let isos = find_ring_iso(&rep.rings[0], &p.ring);
    ensure(!isos.is_empty(), || "condensed ring is not PSU(3)_5".into())?;
    ensure(isos.iter().all(|s| verify_ring_iso(&rep.rings[0], &p.ring, s)), || "unverified iso".into())?;
    let d: Vec<CycloNum> = rep.spectrum.iter().map(|s| s.dim.clone()).collect();
    let t: Vec<CycloNum> = rep.spectrum.iter().map(|s| s.twist.clone()).collect();
    let g = galois_elimination(&p.data, &p.ring, &rep.rings[0], &d, &t).map_err(|e| e.to_string())?;
    let pos: Vec<i64> = g.iter().filter(|c| c.totally_positive).map(|c| c.k).collect();
    let surv: Vec<i64> = g.iter().filter(|c| c.survives()).map(|c| c.k).collect();
    ensure(g.len() == 8 && pos.len() == 4 && surv.len() == 2, || {
        format!("{} conjugates, positive {pos:?}, surviving {surv:?}", g.len())
    })?;
    Ok(format!("{} ring isos; 8 conjugates, positive k = {pos:?}, surviving k = {surv:?}", isos.len()))
}

fn criterion_7() -> Outcome {
    let rep = run_pipeline_sixteen(Exec::default()).map_err(|e| e.to_string())?;
    ensure(rep.distinct == 16 && rep.entries.len() == 16, || format!("{} distinct", rep.distinct))?;
    ensure(rep.entries.iter().all(|e| e.has_fermion), || "an entry lacks a fermion".into())?;
    for e in &rep.entries {
        ensure(e.central_charge.exact.is_one() == e.toric_code_form, || format!("{}: c = {}", e.data.provenance(), e.central_charge.text))?;
    }
    let tc = rep.entries.iter().filter(|e| e.toric_code_form).count();
    ensure(tc > 0, || "no toric-code-form set".into())?;
    Ok(format!("16 non-isomorphic, all with a fermion, c = 1 exactly for the {tc} toric-code-form sets"))
}

fn criterion_8() -> Outcome {
    // randomized field axioms in Q(ζ_n)
    let cases = 10_000;
    let elem = |n: u32| {
        prop::collection::vec((-6i64..=6, 1i64..=4), n as usize).prop_map(move |cs| {
            cs.iter().enumerate().fold(CycloNum::zero(n), |acc, (j, &(p, q))| {
                &acc + &(&CycloNum::root_of_unity(n, j as i64) * &CycloNum::from_ratio(n, p, q))
            })
        })
    };
    let strat = prop::sample::select(vec![1u32, 3, 4, 5, 7, 8, 12, 15, 16, 24, 32])
        .prop_flat_map(move |n| (elem(n), elem(n), elem(n)));
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner
        .run(&strat, |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            Ok(())
        })
        .map_err(|e| format!("field axioms: {e}"))?;
    // Kac–Walton against the affine S-matrix, every triple for k ≤ 5
    let mut triples = 0usize;
    for k in 0..=5 {
        let ring = su3_fusion(k).map_err(|e| e.to_string())?;
        let oracle = verlinde_oracle(k);
        let r = ring.rank();
        for i in 0..r {
            for j in 0..r {
                for c in 0..r {
                    ensure(ring.get(i, j, c) as i64 == oracle[i][j][c], || format!("k={k} N_{i}{j}^{c}"))?;
                    triples += 1;
                }
            }
        }
    }
    // exact S reconstruction and Galois invariance on the rank-10 sets
    let mut conjugates = 0usize;
    for f in [SmallFamily::Z2z2, SmallFamily::Z4] {
        for g in enumerate_small(f).map_err(|e| e.to_string())? {
            let ring = verlinde_fusion(&g.data).map_err(|e| e.to_string())?;
            let s = reconstruct_s(&ring, &g.data.dims(), g.data.t()).map_err(|e| e.to_string())?;
            ensure(s == g.data.s(), || format!("{}: S not reconstructed", g.data.provenance()))?;
            for k in units_mod(g.data.conductor()) {
                let c = galois_conjugate_data(&g.data, k).map_err(|e| e.to_string())?;
                ensure(verlinde_fusion(&c).map_err(|e| e.to_string())? == ring, || format!("k = {k} changes fusion"))?;
                conjugates += 1;
            }
        }
    }
    Ok(format!(
        "{cases} random field cases, {triples} Kac–Walton triples, 16 S round trips, {conjugates} Galois conjugates"
    ))
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (n, f) in criteria {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("criterion {n}: PASS ({secs:.2}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n}: FAIL ({secs:.2}s) {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
