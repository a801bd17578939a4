//! Fusion rings, their isomorphism problem, and matching of modular data up
//! to relabeling.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::linalg::char_poly;
use crate::modular::ModularData;
use crate::{Error, Result};

/// A based ring with nonnegative integer structure constants, unit at
/// index 0. `N[i][j][k] = N_{ij}^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    names: Vec<String>,
    rank: usize,
    n: Vec<u32>,
    dual: Vec<usize>,
}

impl FusionRing {
    /// Validates unit, duality, commutativity and associativity.
    pub fn new(names: Vec<String>, n: Vec<Vec<Vec<u32>>>) -> Result<FusionRing> {
        let r = n.len();
        if r == 0 || n.iter().any(|m| m.len() != r || m.iter().any(|row| row.len() != r)) {
            return Err(Error::Ring("structure constants must be r×r×r".into()));
        }
        if names.len() != r {
            return Err(Error::Ring(format!("{} names for rank {}", names.len(), r)));
        }
        let flat: Vec<u32> = n.into_iter().flatten().flatten().collect();
        let mut ring = FusionRing { names, rank: r, n: flat, dual: vec![0; r] };
        ring.dual = ring.compute_dual()?;
        ring.check_axioms()?;
        Ok(ring)
    }

    /// Names `0..r` in decimal.
    pub fn unnamed(n: Vec<Vec<Vec<u32>>>) -> Result<FusionRing> {
        let names = (0..n.len()).map(|i| i.to_string()).collect();
        FusionRing::new(names, n)
    }

    fn compute_dual(&self) -> Result<Vec<usize>> {
        let r = self.rank;
        (0..r)
            .map(|i| {
                let hits: Vec<usize> = (0..r).filter(|&j| self.get(i, j, 0) != 0).collect();
                match hits.as_slice() {
                    [j] if self.get(i, *j, 0) == 1 => Ok(*j),
                    _ => Err(Error::Ring(format!("label {} has no unique dual", self.names[i]))),
                }
            })
            .collect()
    }

    fn check_axioms(&self) -> Result<()> {
        let r = self.rank;
        for j in 0..r {
            for k in 0..r {
                if self.get(0, j, k) != u32::from(j == k) {
                    return Err(Error::Ring("label 0 is not a unit".into()));
                }
            }
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                return Err(Error::Ring("duality is not an involution".into()));
            }
            for j in 0..r {
                for k in 0..r {
                    if self.get(i, j, k) != self.get(j, i, k) {
                        return Err(Error::Ring(format!("not commutative at ({},{},{})", i, j, k)));
                    }
                    // Frobenius reciprocity N_ij^k = N_{k j*}^i
                    if self.get(i, j, k) != self.get(k, self.dual[j], i) {
                        return Err(Error::Ring(format!("Frobenius reciprocity fails at ({},{},{})", i, j, k)));
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for f in 0..r {
                        let lhs: u64 = (0..r).map(|e| self.get(i, j, e) as u64 * self.get(e, k, f) as u64).sum();
                        let rhs: u64 = (0..r).map(|e| self.get(j, k, e) as u64 * self.get(i, e, f) as u64).sum();
                        if lhs != rhs {
                            return Err(Error::Ring(format!("not associative at ({},{},{};{})", i, j, k, f)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Same constants, new label names.
    pub fn renamed(&self, names: Vec<String>) -> FusionRing {
        assert_eq!(names.len(), self.rank);
        FusionRing { names, ..self.clone() }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.n[(i * self.rank + j) * self.rank + k]
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    /// Nested copy of the structure constants.
    pub fn constants(&self) -> Vec<Vec<Vec<u32>>> {
        let r = self.rank;
        (0..r).map(|i| (0..r).map(|j| (0..r).map(|k| self.get(i, j, k)).collect()).collect()).collect()
    }

    /// The matrix of left multiplication by `i`: `M[a][b] = N_{ib}^a`.
    pub fn fusion_matrix(&self, i: usize) -> Vec<Vec<u32>> {
        let r = self.rank;
        (0..r).map(|a| (0..r).map(|b| self.get(i, b, a)).collect()).collect()
    }

    /// `i ⊗ j` as `(k, N_ij^k)` with nonzero multiplicity.
    pub fn product(&self, i: usize, j: usize) -> Vec<(usize, u32)> {
        (0..self.rank).filter_map(|k| Some((k, self.get(i, j, k))).filter(|p| p.1 > 0)).collect()
    }

    /// The ring with labels renamed: new label `i` is old label `perm[i]`.
    /// `perm[0]` must be 0.
    pub fn permute(&self, perm: &[usize]) -> Result<FusionRing> {
        if perm.len() != self.rank || perm.first() != Some(&0) {
            return Err(Error::Ring("permutation must fix the unit".into()));
        }
        let r = self.rank;
        let n = (0..r)
            .map(|i| (0..r).map(|j| (0..r).map(|k| self.get(perm[i], perm[j], perm[k])).collect()).collect())
            .collect();
        let names = perm.iter().map(|&p| self.names[p].clone()).collect();
        FusionRing::new(names, n)
    }

    /// `Σ_k N_ij^k d_k = d_i d_j` for all pairs, exactly.
    pub fn is_dimension_function(&self, dims: &[CycloNum]) -> bool {
        let r = self.rank;
        dims.len() == r
            && (0..r).all(|i| {
                (i..r).all(|j| {
                    let mut s = CycloNum::zero(1);
                    for (k, m) in self.product(i, j) {
                        s = &s + &dims[k].scale(m as i64);
                    }
                    s == &dims[i] * &dims[j]
                })
            })
    }

    /// Structure constants restricted to `labels` (which must be closed).
    pub fn restrict(&self, labels: &[usize]) -> Result<FusionRing> {
        if labels.first() != Some(&0) {
            return Err(Error::Ring("restriction must start with the unit".into()));
        }
        let pos: HashMap<usize, usize> = labels.iter().enumerate().map(|(a, &l)| (l, a)).collect();
        for &i in labels {
            for &j in labels {
                if self.product(i, j).iter().any(|(k, _)| !pos.contains_key(k)) {
                    return Err(Error::Ring("label set is not closed under fusion".into()));
                }
            }
        }
        let n = labels
            .iter()
            .map(|&i| labels.iter().map(|&j| labels.iter().map(|&k| self.get(i, j, k)).collect()).collect())
            .collect();
        FusionRing::new(labels.iter().map(|&l| self.names[l].clone()).collect(), n)
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    rank: usize,
    names: Vec<String>,
    #[serde(rename = "N")]
    n: Vec<Vec<Vec<u32>>>,
}

impl Serialize for FusionRing {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RingJson { rank: self.rank, names: self.names.clone(), n: self.constants() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionRing {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RingJson::deserialize(d)?;
        if raw.rank != raw.n.len() {
            return Err(D::Error::custom("rank does not match N"));
        }
        FusionRing::new(raw.names, raw.n).map_err(D::Error::custom)
    }
}

/// Relabeling-invariant data attached to one label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelInvariant {
    pub self_dual: bool,
    pub n_xxx: u32,
    pub row_sum: u64,
    /// Sorted entries of the fusion matrix.
    pub entries: Vec<u32>,
    /// `det(x·1 - N_x)`, lowest degree first.
    pub char_poly: Vec<BigInt>,
    pub dim: Option<CycloNum>,
    pub twist: Option<CycloNum>,
}

pub fn ring_invariants(
    ring: &FusionRing,
    dims: Option<&[CycloNum]>,
    twists: Option<&[CycloNum]>,
) -> Vec<LabelInvariant> {
    (0..ring.rank())
        .map(|i| {
            let m = ring.fusion_matrix(i);
            let mut entries: Vec<u32> = m.iter().flatten().copied().collect();
            entries.sort_unstable();
            let mi: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
            LabelInvariant {
                self_dual: ring.dual(i) == i,
                n_xxx: ring.get(i, i, i),
                row_sum: entries.iter().map(|&v| v as u64).sum(),
                entries,
                char_poly: char_poly(&mi),
                dim: dims.map(|d| d[i].clone()),
                twist: twists.map(|t| t[i].clone()),
            }
        })
        .collect()
}

/// Options for [`find_ring_iso_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct IsoOptions<'a> {
    pub dims: Option<(&'a [CycloNum], &'a [CycloNum])>,
    pub twists: Option<(&'a [CycloNum], &'a [CycloNum])>,
    /// Stop after the first isomorphism.
    pub first_only: bool,
}

/// All bijections `σ` (as `σ[i]` = label of `a` matched to label `i` of `b`)
/// with `N_a[σi][σj][σk] = N_b[i][j][k]`.
pub fn find_ring_iso(a: &FusionRing, b: &FusionRing) -> Vec<Vec<usize>> {
    find_ring_iso_with(a, b, IsoOptions::default())
}

pub fn find_ring_iso_with(a: &FusionRing, b: &FusionRing, opts: IsoOptions<'_>) -> Vec<Vec<usize>> {
    let r = a.rank();
    if r != b.rank() {
        return Vec::new();
    }
    let inv_a = ring_invariants(a, opts.dims.map(|d| d.0), opts.twists.map(|t| t.0));
    let inv_b = ring_invariants(b, opts.dims.map(|d| d.1), opts.twists.map(|t| t.1));
    let candidates: Vec<Vec<usize>> = (0..r).map(|i| (0..r).filter(|&x| inv_a[x] == inv_b[i]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    // most constrained labels first
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    struct St<'s> {
        a: &'s FusionRing,
        b: &'s FusionRing,
        order: Vec<usize>,
        candidates: Vec<Vec<usize>>,
        sigma: Vec<Option<usize>>,
        used: Vec<bool>,
        out: Vec<Vec<usize>>,
        first_only: bool,
    }

    fn consistent(st: &St<'_>, depth: usize) -> bool {
        let new = st.order[depth];
        let sn = st.sigma[new].unwrap();
        let assigned = &st.order[..=depth];
        for &i in assigned {
            let si = st.sigma[i].unwrap();
            for &j in assigned {
                let sj = st.sigma[j].unwrap();
                // triples containing `new` at least once
                if st.a.get(sn, si, sj) != st.b.get(new, i, j)
                    || st.a.get(si, sj, sn) != st.b.get(i, j, new)
                {
                    return false;
                }
            }
        }
        true
    }

    fn go(st: &mut St<'_>, depth: usize) {
        if st.first_only && !st.out.is_empty() {
            return;
        }
        if depth == st.order.len() {
            st.out.push(st.sigma.iter().map(|s| s.unwrap()).collect());
            return;
        }
        let i = st.order[depth];
        for c in 0..st.candidates[i].len() {
            let x = st.candidates[i][c];
            if st.used[x] {
                continue;
            }
            st.sigma[i] = Some(x);
            st.used[x] = true;
            if consistent(st, depth) {
                go(st, depth + 1);
            }
            st.used[x] = false;
            st.sigma[i] = None;
        }
    }

    let mut st = St {
        a,
        b,
        order,
        candidates,
        sigma: vec![None; r],
        used: vec![false; r],
        out: Vec::new(),
        first_only: opts.first_only,
    };
    go(&mut st, 0);
    let mut out = st.out;
    out.retain(|s| verify_ring_iso(a, b, s));
    out.sort();
    out
}

/// Exhaustive check of `N_a[σi][σj][σk] = N_b[i][j][k]`.
pub fn verify_ring_iso(a: &FusionRing, b: &FusionRing, sigma: &[usize]) -> bool {
    let r = b.rank();
    if a.rank() != r || sigma.len() != r {
        return false;
    }
    let mut seen = vec![false; r];
    for &s in sigma {
        if s >= r || std::mem::replace(&mut seen[s], true) {
            return false;
        }
    }
    (0..r).all(|i| (0..r).all(|j| (0..r).all(|k| a.get(sigma[i], sigma[j], sigma[k]) == b.get(i, j, k))))
}

/// A permutation `σ` with `S_a[σi][σj] = S_b[i][j]` and `T_a[σi] = T_b[i]`,
/// or `None`.
pub fn match_modular_data(a: &ModularData, b: &ModularData) -> Option<Vec<usize>> {
    let r = a.rank();
    if r != b.rank() {
        return None;
    }
    let n = num_integer::lcm(a.conductor(), b.conductor());
    let a = a.lifted(n).ok()?;
    let b = b.lifted(n).ok()?;
    let key = |d: &ModularData, i: usize| -> (String, Vec<String>) {
        let mut row: Vec<String> = d.s()[i].iter().map(|x| x.to_string()).collect();
        row.sort();
        (d.t()[i].to_string(), row)
    };
    let ka: Vec<_> = (0..r).map(|i| key(&a, i)).collect();
    let kb: Vec<_> = (0..r).map(|i| key(&b, i)).collect();
    let candidates: Vec<Vec<usize>> = (0..r).map(|i| (0..r).filter(|&x| ka[x] == kb[i]).collect()).collect();
    if candidates.iter().any(Vec::is_empty) {
        return None;
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| (candidates[i].len(), i));

    fn go(
        a: &ModularData,
        b: &ModularData,
        order: &[usize],
        candidates: &[Vec<usize>],
        sigma: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for &x in &candidates[i] {
            if used[x] {
                continue;
            }
            let ok = order[..depth].iter().all(|&j| a.s()[x][sigma[j].unwrap()] == b.s()[i][j]) && a.s()[x][x] == b.s()[i][i];
            if !ok {
                continue;
            }
            sigma[i] = Some(x);
            used[x] = true;
            if go(a, b, order, candidates, sigma, used, depth + 1) {
                return true;
            }
            used[x] = false;
            sigma[i] = None;
        }
        false
    }

    let mut sigma = vec![None; r];
    let mut used = vec![false; r];
    if go(&a, &b, &order, &candidates, &mut sigma, &mut used, 0) {
        Some(sigma.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}
