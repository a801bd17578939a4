#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use mtcf::condense::{condense, CondensationReport, CondenseOptions};
use mtcf::gidata::GiData;
use mtcf::modular::{adjoint_labels, verlinde_fusion, ModularData};
use mtcf::pipeline::{build_rank28, Rank28Form};
use mtcf::rings::FusionRing;
use mtcf::su3k::su3_simples;
use mtcf::CycloNum;

pub const CENTRALIZER: [&str; 16] = [
    "(0,0)", "(1,1)", "(2,2)", "(3,3)", "(0,0,π)", "(1,1,π)", "(2,2,π)", "(3,3,π)", "(2,0)_g", "(3,1)_g", "(0,1)_γ", "(2,1)_γ",
    "(6,1)_γ", "(4,0)_γ", "(2,0)_γ", "(10,0)_γ",
];
pub const J_AD: [&str; 8] = ["(0,0)", "(2,2)", "(0,0,π)", "(2,2,π)", "(3,1)_g", "(2,1)_γ", "(6,1)_γ", "(4,0)_γ"];
pub const J1: [&str; 6] = ["(1,0)_g", "(3,2)_g", "(1,0)_γ", "(5,0)_γ", "(9,0)_γ", "(7,1)_γ"];
pub const J2: [&str; 8] = ["(1,1)", "(3,3)", "(1,1,π)", "(3,3,π)", "(2,0)_g", "(0,1)_γ", "(2,0)_γ", "(10,0)_γ"];
pub const J3: [&str; 6] = ["(3,0)_g", "(2,1)_g", "(13,1)_γ", "(1,1)_γ", "(5,1)_γ", "(3,0)_γ"];

/// Row-major, order `[1, W, Y1, Y2, V, U1, U2]`, entry `[a][b] = N_{Y1,b}^a`.
pub const N_Y1: [[u32; 7]; 7] = [
    [0, 0, 0, 1, 0, 0, 0],
    [0, 1, 1, 1, 1, 1, 0],
    [1, 1, 0, 0, 1, 0, 0],
    [0, 1, 1, 0, 0, 0, 1],
    [0, 1, 0, 1, 1, 0, 1],
    [0, 0, 1, 0, 1, 0, 0],
    [0, 1, 0, 0, 0, 1, 0],
];

/// Order `[1, Λ, Λ*, Υ, Ξ, Ξ*, Ω]`.
pub const N_LAMBDA: [[u32; 7]; 7] = [
    [0, 0, 1, 0, 0, 0, 0],
    [1, 0, 0, 1, 0, 0, 1],
    [0, 1, 0, 0, 0, 1, 1],
    [0, 0, 1, 1, 0, 1, 1],
    [0, 1, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 1],
    [0, 1, 1, 1, 1, 0, 1],
];

pub fn sqrt2() -> CycloNum {
    CycloNum::sqrt_int(2)
}

/// `a + b√2`.
pub fn qs(a: i64, b: i64) -> CycloNum {
    &CycloNum::from_int(1, a) + &sqrt2().scale(b)
}

/// `e^{iπk/4}`.
pub fn z8(k: i64) -> CycloNum {
    CycloNum::root_of_unity(8, k)
}

/// `(name, d, θ)` of the condensed theory.
pub fn condensed_rows() -> Vec<(&'static str, CycloNum, CycloNum)> {
    vec![
        ("1", qs(1, 0), z8(0)),
        ("W", qs(3, 2), z8(0)),
        ("Y1", qs(2, 1), z8(2)),
        ("Y2", qs(2, 1), z8(2)),
        ("V", qs(2, 2), z8(5)),
        ("U1", qs(1, 1), z8(4)),
        ("U2", qs(1, 1), z8(4)),
    ]
}

/// `PSU(3)_5` rows in the order of [`N_LAMBDA`].
pub fn psu35_rows() -> Vec<(&'static str, CycloNum, CycloNum)> {
    vec![
        ("[0,0]", qs(1, 0), z8(0)),
        ("[3,0]", qs(2, 1), z8(6)),
        ("[0,3]", qs(2, 1), z8(6)),
        ("[1,1]", qs(2, 2), z8(3)),
        ("[4,1]", qs(1, 1), z8(4)),
        ("[1,4]", qs(1, 1), z8(4)),
        ("[2,2]", qs(3, 2), z8(0)),
    ]
}

pub struct Rank28 {
    pub gi: GiData,
    pub ring: FusionRing,
}

impl Rank28 {
    pub fn data(&self) -> &ModularData {
        &self.gi.data
    }

    pub fn idx(&self, label: &str) -> usize {
        self.data().index_of(label).unwrap_or_else(|| panic!("no label {label}"))
    }

    pub fn set(&self, idx: &[usize]) -> BTreeSet<String> {
        idx.iter().map(|&i| self.data().label(i).to_string()).collect()
    }

    pub fn boson(&self) -> usize {
        self.idx("(2,2)")
    }

    pub fn adjoint_condensation(&self) -> CondensationReport {
        let dom = adjoint_labels(self.data());
        condense(self.data(), Some(&self.ring), self.boson(), &dom, CondenseOptions::default()).unwrap()
    }
}

fn load(form: Rank28Form) -> Rank28 {
    let gi = build_rank28(form).unwrap();
    let ring = verlinde_fusion(&gi.data).unwrap();
    Rank28 { gi, ring }
}

pub fn hyperbolic() -> &'static Rank28 {
    static D: OnceLock<Rank28> = OnceLock::new();
    D.get_or_init(|| load(Rank28Form::Hyperbolic))
}

pub fn elliptic() -> &'static Rank28 {
    static D: OnceLock<Rank28> = OnceLock::new();
    D.get_or_init(|| load(Rank28Form::Elliptic))
}

pub fn set_of(xs: &[&str]) -> BTreeSet<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// The four orderings `[1, W, Y1, Y2, V, U1, U2]` of the condensed simples
/// (one per choice of branch labels).
pub fn branch_orders(r28: &Rank28, rep: &CondensationReport) -> Vec<Vec<usize>> {
    let class = |l: &str| rep.class_of_label(r28.idx(l)).unwrap();
    let one = rep.simples_of_class(class("(0,0)"));
    let w = rep.simples_of_class(class("(0,0,π)"));
    let y = rep.simples_of_class(class("(3,1)_g"));
    let v = rep.simples_of_class(class("(2,1)_γ"));
    let u = rep.simples_of_class(class("(4,0)_γ"));
    assert_eq!((one.len(), w.len(), y.len(), v.len(), u.len()), (1, 1, 2, 1, 2));
    let mut out = Vec::new();
    for (y1, y2) in [(y[0], y[1]), (y[1], y[0])] {
        for (u1, u2) in [(u[0], u[1]), (u[1], u[0])] {
            out.push(vec![one[0], w[0], y1, y2, v[0], u1, u2]);
        }
    }
    out
}

/// `M[a][b] = N_{x,b}^a` in the given ordering.
pub fn fusion_matrix_in(ring: &FusionRing, x: usize, order: &[usize]) -> Vec<Vec<u32>> {
    order.iter().map(|&a| order.iter().map(|&b| ring.get(x, b, a)).collect()).collect()
}

pub fn as_vecs<const N: usize>(m: &[[u32; N]; N]) -> Vec<Vec<u32>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// Affine `S` of `SU(3)_k` up to normalization, in floating point:
/// `Σ_w sign(w) exp(-2πi ⟨w(λ+ρ), μ+ρ⟩ / h)`.
pub fn affine_s(k: u32) -> Vec<Vec<(f64, f64)>> {
    let h = (k + 3) as f64;
    let ws = su3_simples(k);
    // ⟨λ, μ⟩ in Dynkin coordinates
    let ip = |a: (f64, f64), b: (f64, f64)| (2.0 * a.0 * b.0 + a.0 * b.1 + a.1 * b.0 + 2.0 * a.1 * b.1) / 3.0;
    // the Weyl group on Dynkin coordinates, with signs
    let weyl: [(fn((f64, f64)) -> (f64, f64), f64); 6] = [
        (|(a, b)| (a, b), 1.0),
        (|(a, b)| (-a, a + b), -1.0),
        (|(a, b)| (a + b, -b), -1.0),
        (|(a, b)| (-a - b, a), 1.0),
        (|(a, b)| (b, -a - b), 1.0),
        (|(a, b)| (-b, -a), -1.0),
    ];
    ws.iter()
        .map(|l| {
            let lr = (l.0 as f64 + 1.0, l.1 as f64 + 1.0);
            ws.iter()
                .map(|m| {
                    let mr = (m.0 as f64 + 1.0, m.1 as f64 + 1.0);
                    let mut acc = (0.0, 0.0);
                    for (w, s) in weyl {
                        let ph = -2.0 * std::f64::consts::PI * ip(w(lr), mr) / h;
                        acc.0 += s * ph.cos();
                        acc.1 += s * ph.sin();
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn verlinde_oracle(k: u32) -> Vec<Vec<Vec<i64>>> {
    let s = affine_s(k);
    let r = s.len();
    let norm: f64 = (0..r).map(|m| s[0][m].0.powi(2) + s[0][m].1.powi(2)).sum();
    let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let div = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    (0..r)
                        .map(|c| {
                            let mut acc = (0.0, 0.0);
                            for m in 0..r {
                                let conj = (s[c][m].0, -s[c][m].1);
                                let t = div(mul(mul(s[i][m], s[j][m]), conj), s[0][m]);
                                acc.0 += t.0;
                                acc.1 += t.1;
                            }
                            let v = acc.0 / norm;
                            assert!((v - v.round()).abs() < 1e-8 && (acc.1 / norm).abs() < 1e-8);
                            v.round() as i64
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}
