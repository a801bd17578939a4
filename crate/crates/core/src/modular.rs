//! Modular data `(S, T)`: axiom checks, Verlinde fusion, dimensions,
//! central charge, centralizers, gradings, Galois conjugation, and
//! reconstruction of `S` from fusion rules and twists.

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloNum, Phase};
use crate::par::Exec;
use crate::rings::FusionRing;
use crate::{Error, Result};

/// Labeled rank-`r` modular data over `Q(ζ_N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModularData {
    labels: Vec<String>,
    s: Vec<Vec<CycloNum>>,
    t: Vec<CycloNum>,
    conductor: u32,
    provenance: String,
}

impl ModularData {
    /// Lifts all entries to the lcm of their conductors.
    pub fn new(labels: Vec<String>, s: Vec<Vec<CycloNum>>, t: Vec<CycloNum>, provenance: String) -> Result<ModularData> {
        let n = s.iter().flatten().chain(&t).fold(1u32, |acc, x| acc.lcm(&x.conductor()));
        ModularData::with_conductor(labels, s, t, n, provenance)
    }

    /// Like [`ModularData::new`] but over a prescribed field `Q(ζ_n)`, which
    /// must contain every entry.
    pub fn with_conductor(
        labels: Vec<String>,
        s: Vec<Vec<CycloNum>>,
        t: Vec<CycloNum>,
        n: u32,
        provenance: String,
    ) -> Result<ModularData> {
        let r = labels.len();
        if r == 0 || s.len() != r || s.iter().any(|row| row.len() != r) || t.len() != r {
            return Err(Error::Input(format!("S must be {}x{} and T of length {}", r, r, r)));
        }
        let lift = |x: &CycloNum| {
            if x.conductor() == n {
                Ok(x.clone())
            } else {
                match x.lift_to(n) {
                    Ok(v) => Ok(v),
                    Err(_) => x.minimize().lift_to(n),
                }
            }
        };
        let s = s.iter().map(|row| row.iter().map(lift).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
        let t = t.iter().map(lift).collect::<Result<Vec<_>>>()?;
        Ok(ModularData { labels, s, t, conductor: n, provenance })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Indices of the given labels; fails on the first unknown one.
    pub fn indices_of<'a>(&self, labels: impl IntoIterator<Item = &'a str>) -> Result<Vec<usize>> {
        labels
            .into_iter()
            .map(|l| self.index_of(l).ok_or_else(|| Error::Input(format!("unknown label {}", l))))
            .collect()
    }

    pub fn s(&self) -> &[Vec<CycloNum>] {
        &self.s
    }

    pub fn t(&self) -> &[CycloNum] {
        &self.t
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn with_provenance(mut self, p: impl Into<String>) -> ModularData {
        self.provenance = p.into();
        self
    }

    /// Copy over `Q(ζ_m)`, `m` a multiple of the conductor.
    pub fn lifted(&self, m: u32) -> Result<ModularData> {
        ModularData::with_conductor(self.labels.clone(), self.s.clone(), self.t.clone(), m, self.provenance.clone())
    }

    /// Same data with `T[i]` replaced.
    pub fn with_twist(&self, i: usize, theta: CycloNum) -> Result<ModularData> {
        let mut t = self.t.clone();
        t[i] = theta;
        ModularData::new(self.labels.clone(), self.s.clone(), t, self.provenance.clone())
    }

    /// `S̃_ij = S_ij / S_00`.
    pub fn s_tilde(&self, i: usize, j: usize) -> CycloNum {
        self.s[i][j].checked_div(&self.s[0][0]).expect("S_00 is nonzero for modular data")
    }

    /// `d_j = S_0j / S_00`.
    pub fn dims(&self) -> Vec<CycloNum> {
        (0..self.rank()).map(|j| self.s_tilde(0, j)).collect()
    }

    /// Relabels: new label `i` is old label `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> ModularData {
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let s = perm.iter().map(|&i| perm.iter().map(|&j| self.s[i][j].clone()).collect()).collect();
        let t = perm.iter().map(|&p| self.t[p].clone()).collect();
        ModularData { labels, s, t, conductor: self.conductor, provenance: self.provenance.clone() }
    }

    /// Sub-block on the given labels (not modular in general).
    pub fn restricted(&self, idx: &[usize]) -> ModularData {
        self.permuted(idx)
    }
}

#[derive(Serialize, Deserialize)]
struct DataJson {
    rank: usize,
    conductor: u32,
    labels: Vec<String>,
    #[serde(rename = "S")]
    s: Vec<Vec<CycloNum>>,
    #[serde(rename = "T")]
    t: Vec<CycloNum>,
    provenance: String,
}

impl Serialize for ModularData {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DataJson {
            rank: self.rank(),
            conductor: self.conductor,
            labels: self.labels.clone(),
            s: self.s.clone(),
            t: self.t.clone(),
            provenance: self.provenance.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for ModularData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = DataJson::deserialize(d)?;
        if raw.rank != raw.labels.len() {
            return Err(D::Error::custom("rank does not match labels"));
        }
        ModularData::with_conductor(raw.labels, raw.s, raw.t, raw.conductor, raw.provenance).map_err(D::Error::custom)
    }
}

fn to_multiplicity(v: &CycloNum) -> Option<u32> {
    let n = v.as_integer()?;
    if n.is_negative() {
        return None;
    }
    n.to_u32()
}

fn s_ratios(data: &ModularData) -> Result<Vec<Vec<CycloNum>>> {
    let r = data.rank();
    let inv0 = (0..r)
        .map(|m| data.s[0][m].inv().map_err(|_| Error::NotModular(format!("S_0,{} vanishes", data.labels[m]))))
        .collect::<Result<Vec<_>>>()?;
    Ok((0..r).map(|i| (0..r).map(|m| &data.s[i][m] * &inv0[m]).collect()).collect())
}

fn verlinde_entries(
    data: &ModularData,
    ratios: &[Vec<CycloNum>],
    conj: &[Vec<CycloNum>],
    i: usize,
    js: impl Iterator<Item = usize>,
) -> Result<Vec<(usize, Vec<u32>)>> {
    let r = data.rank();
    let mut out = Vec::new();
    for j in js {
        let p: Vec<CycloNum> = (0..r).map(|m| &ratios[i][m] * &data.s[j][m]).collect();
        let mut row = Vec::with_capacity(r);
        for k in 0..r {
            let mut acc = CycloNum::zero(data.conductor);
            for m in 0..r {
                if !p[m].is_zero() && !conj[k][m].is_zero() {
                    acc = &acc + &(&p[m] * &conj[k][m]);
                }
            }
            let v = to_multiplicity(&acc).ok_or_else(|| {
                Error::NotModular(format!(
                    "Verlinde coefficient N_{{{},{}}}^{{{}}} = {} is not a nonnegative integer",
                    data.labels[i], data.labels[j], data.labels[k], acc
                ))
            })?;
            row.push(v);
        }
        out.push((j, row));
    }
    Ok(out)
}

/// `N_ij^k = Σ_m S_im S_jm conj(S_km) / S_0m`, exactly.
pub fn verlinde_fusion(data: &ModularData) -> Result<FusionRing> {
    verlinde_fusion_with(data, Exec::default())
}

pub fn verlinde_fusion_with(data: &ModularData, exec: Exec) -> Result<FusionRing> {
    let r = data.rank();
    let ratios = s_ratios(data)?;
    let conj: Vec<Vec<CycloNum>> = data.s.iter().map(|row| row.iter().map(CycloNum::conjugate).collect()).collect();
    let rows = exec.map_range(r, |i| verlinde_entries(data, &ratios, &conj, i, i..r));
    let mut n = vec![vec![vec![0u32; r]; r]; r];
    for (i, row) in rows.into_iter().enumerate() {
        for (j, ks) in row? {
            n[i][j] = ks.clone();
            n[j][i] = ks;
        }
    }
    FusionRing::new(data.labels.clone(), n).map_err(|e| Error::NotModular(e.to_string()))
}

/// The single fusion matrix row `N_{i,j}^k` for fixed `i`, indexed `[j][k]`.
pub fn verlinde_row(data: &ModularData, i: usize) -> Result<Vec<Vec<u32>>> {
    let ratios = s_ratios(data)?;
    let conj: Vec<Vec<CycloNum>> = data.s.iter().map(|row| row.iter().map(CycloNum::conjugate).collect()).collect();
    Ok(verlinde_entries(data, &ratios, &conj, i, 0..data.rank())?.into_iter().map(|(_, row)| row).collect())
}

/// One named check of [`validate_modular`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl ValidationReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn mat_mul(a: &[Vec<CycloNum>], b: &[Vec<CycloNum>], n: u32) -> Vec<Vec<CycloNum>> {
    let r = a.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut acc = CycloNum::zero(n);
                    for k in 0..r {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            acc = &acc + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Reads a permutation off a 0/1 matrix (`m[i][p[i]] = 1`).
fn as_permutation(m: &[Vec<CycloNum>]) -> Option<Vec<usize>> {
    let r = m.len();
    let mut p = Vec::with_capacity(r);
    for row in m {
        let ones: Vec<usize> = (0..r).filter(|&j| !row[j].is_zero()).collect();
        match ones.as_slice() {
            [j] if row[*j].is_one() => p.push(*j),
            _ => return None,
        }
    }
    let mut seen = vec![false; r];
    for &j in &p {
        if std::mem::replace(&mut seen[j], true) {
            return None;
        }
    }
    Some(p)
}

/// The charge conjugation `i -> i*` read off `S²`, if it is a permutation.
pub fn dual_permutation(data: &ModularData) -> Option<Vec<usize>> {
    as_permutation(&mat_mul(&data.s, &data.s, data.conductor))
}

/// `p± = Σ d_i² θ_i^{±1}`.
pub fn gauss_sums(dims: &[CycloNum], twists: &[CycloNum]) -> Result<(CycloNum, CycloNum)> {
    let mut p = CycloNum::zero(1);
    let mut m = CycloNum::zero(1);
    for (d, t) in dims.iter().zip(twists) {
        let d2 = d * d;
        p = &p + &(&d2 * t);
        m = &m + &(&d2 * &t.inv()?);
    }
    Ok((p, m))
}

/// The root of unity `ξ = p₊/|p₊|` and the positive root `D = p₊/ξ` of
/// the global dimension.
///
/// `ξ² = p₊/p₋` is computed exactly; of its two square roots the one
/// leaving `p₊/ξ` positive real is chosen.
pub fn charge_and_root(dims: &[CycloNum], twists: &[CycloNum]) -> Result<(CycloNum, CycloNum)> {
    let (p, m) = gauss_sums(dims, twists)?;
    if p.is_zero() || m.is_zero() {
        return Err(Error::NotModular("vanishing Gauss sum".into()));
    }
    let xi2 = p.checked_div(&m)?;
    let phase = xi2
        .root_phase()
        .ok_or_else(|| Error::NotModular(format!("p+/p- = {} is not a root of unity", xi2)))?;
    let half = CycloNum::root_of_unity(2 * phase.order() as u32, phase.num() as i64);
    for xi in [half.clone(), -&half] {
        let d = p.checked_div(&xi)?;
        if d.is_positive_real() {
            return Ok((xi.minimize(), d));
        }
    }
    Err(Error::NotModular("p+ has no positive real normalization".into()))
}

/// Multiplicative central charge `p₊/|p₊|`.
pub fn central_charge(data: &ModularData) -> Result<CycloNum> {
    Ok(charge_and_root(&data.dims(), &data.t)?.0)
}

fn push(checks: &mut Vec<Check>, name: &str, witness: Option<String>) {
    checks.push(Check { name: name.into(), passed: witness.is_none(), witness });
}

/// Checks the modular-data axioms in exact arithmetic.
pub fn validate_modular(data: &ModularData) -> ValidationReport {
    validate_modular_with(data, Exec::default())
}

pub fn validate_modular_with(data: &ModularData, exec: Exec) -> ValidationReport {
    let r = data.rank();
    let n = data.conductor;
    let s = &data.s;
    let mut checks = Vec::new();

    let asym = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).find(|&(i, j)| s[i][j] != s[j][i]);
    push(&mut checks, "symmetric", asym.map(|(i, j)| format!("S[{}][{}] != S[{}][{}]", data.labels[i], data.labels[j], data.labels[j], data.labels[i])));

    let conj_t: Vec<Vec<CycloNum>> = (0..r).map(|i| (0..r).map(|j| s[j][i].conjugate()).collect()).collect();
    let prod = mat_mul(s, &conj_t, n);
    let bad = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .find(|&(i, j)| prod[i][j] != CycloNum::from_int(1, i64::from(i == j)));
    push(&mut checks, "unitary", bad.map(|(i, j)| format!("(S·S^†)[{}][{}] = {}", i, j, prod[i][j])));

    let c = mat_mul(s, s, n);
    let cw = match as_permutation(&c) {
        None => Some("S² is not a permutation matrix".to_string()),
        Some(p) => {
            if (0..r).any(|i| p[p[i]] != i) {
                Some("C² != 1".into())
            } else if p[0] != 0 {
                Some("C does not fix the unit".into())
            } else {
                (0..r).find(|&i| data.t[i] != data.t[p[i]]).map(|i| format!("T does not commute with C at {}", data.labels[i]))
            }
        }
    };
    push(&mut checks, "charge_conjugation", cw);

    let ring = verlinde_fusion_with(data, exec);
    push(&mut checks, "verlinde", ring.as_ref().err().map(ToString::to_string));

    let tw = (0..r).find(|&i| data.t[i].root_phase().is_none()).map(|i| format!("T[{}] = {} is not a root of unity", data.labels[i], data.t[i]));
    let tw = tw.or_else(|| (!data.t[0].is_one()).then(|| "T at the unit is not 1".to_string()));
    push(&mut checks, "twists", tw);

    let dims = data.dims();
    let bal = match &ring {
        Err(_) => Some("skipped: no fusion ring".to_string()),
        Ok(ring) => match balancing_sums(ring, &dims, &data.t) {
            Err(e) => Some(e.to_string()),
            Ok(sums) => (0..r)
                .flat_map(|i| (0..r).map(move |j| (i, j)))
                .find(|&(i, j)| s[i][j] != &sums[i][j] * &s[0][0])
                .map(|(i, j)| format!("balancing fails at ({}, {})", data.labels[i], data.labels[j])),
        },
    };
    push(&mut checks, "balancing", bal);

    let gw = match gauss_sums(&dims, &data.t) {
        Err(e) => Some(e.to_string()),
        Ok((p, m)) => {
            let dim: CycloNum = dims.iter().fold(CycloNum::zero(1), |acc, d| &acc + &(d * d));
            let s00 = &s[0][0] * &s[0][0];
            if &p * &m != dim {
                Some(format!("p+·p- = {} but Σd² = {}", &p * &m, dim))
            } else if (&dim * &s00) != CycloNum::one(1) {
                Some("S_00² · Σd² != 1".into())
            } else {
                None
            }
        }
    };
    push(&mut checks, "gauss_sums", gw);

    let overall = checks.iter().all(|c| c.passed);
    ValidationReport { checks, overall }
}

/// `θ_i⁻¹ θ_j⁻¹ Σ_k N_{i*j}^k d_k θ_k`, unnormalized.
fn balancing_sums(ring: &FusionRing, dims: &[CycloNum], twists: &[CycloNum]) -> Result<Vec<Vec<CycloNum>>> {
    let r = ring.rank();
    let inv: Vec<CycloNum> = twists.iter().map(CycloNum::inv).collect::<Result<_>>()?;
    let dt: Vec<CycloNum> = dims.iter().zip(twists).map(|(d, t)| d * t).collect();
    Ok((0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut acc = CycloNum::zero(1);
                    for (k, m) in ring.product(ring.dual(i), j) {
                        acc = &acc + &dt[k].scale(m as i64);
                    }
                    &(&acc * &inv[i]) * &inv[j]
                })
                .collect()
        })
        .collect())
}

/// `S_ij = θ_i⁻¹θ_j⁻¹ Σ_k N_{i*j}^k d_k θ_k / D` with `D` the positive
/// root of `Σ d²`.
pub fn reconstruct_s(ring: &FusionRing, dims: &[CycloNum], twists: &[CycloNum]) -> Result<Vec<Vec<CycloNum>>> {
    if dims.len() != ring.rank() || twists.len() != ring.rank() {
        return Err(Error::Input("dims and twists must match the rank".into()));
    }
    let dim: CycloNum = dims.iter().fold(CycloNum::zero(1), |acc, d| &acc + &(d * d));
    let root = match dim.as_integer().and_then(|v| v.to_u64()) {
        Some(v) if v > 0 => CycloNum::sqrt_int(v),
        _ => charge_and_root(dims, twists)?.1,
    };
    if &root * &root != dim {
        return Err(Error::NotModular("no square root of the global dimension".into()));
    }
    let inv = root.inv()?;
    Ok(balancing_sums(ring, dims, twists)?.into_iter().map(|row| row.iter().map(|x| x * &inv).collect()).collect())
}

/// Labels `X` with `S̃_{x,X} = d_X`; `x` must be invertible.
pub fn centralizer_labels(data: &ModularData, x: usize) -> Result<Vec<usize>> {
    let dims = data.dims();
    if !dims[x].is_one() {
        return Err(Error::NotInvertible(x));
    }
    Ok((0..data.rank()).filter(|&j| data.s_tilde(x, j) == dims[j]).collect())
}

/// Labels of dimension 1.
pub fn pointed_labels(data: &ModularData) -> Vec<usize> {
    data.dims().iter().enumerate().filter(|(_, d)| d.is_one()).map(|(i, _)| i).collect()
}

/// Labels centralizing every invertible, i.e. the adjoint subcategory.
pub fn adjoint_labels(data: &ModularData) -> Vec<usize> {
    let dims = data.dims();
    let pointed = pointed_labels(data);
    (0..data.rank()).filter(|&j| pointed.iter().all(|&x| data.s_tilde(x, j) == dims[j])).collect()
}

/// The grading by the character `X -> S̃_{a,X}/d_X` of a generator `a` of
/// the (cyclic) pointed part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub generator: usize,
    pub order: u64,
    /// `components[j]` holds the labels with character `e^{2πij/order}`.
    pub components: Vec<Vec<usize>>,
}

impl Grading {
    pub fn degree(&self, x: usize) -> Option<usize> {
        self.components.iter().position(|c| c.contains(&x))
    }
}

/// The permutation `X -> x ⊗ X` of an invertible `x`.
pub fn invertible_action(data: &ModularData, x: usize) -> Result<Vec<usize>> {
    let row = verlinde_row(data, x)?;
    row.iter()
        .enumerate()
        .map(|(j, ks)| {
            let hits: Vec<usize> = ks.iter().enumerate().filter(|(_, &m)| m > 0).map(|(k, _)| k).collect();
            match hits.as_slice() {
                [k] if ks[*k] == 1 => Ok(*k),
                _ => Err(Error::NotModular(format!("{} ⊗ {} is not simple", data.labels[x], data.labels[j]))),
            }
        })
        .collect()
}

pub fn grading_components(data: &ModularData) -> Result<Grading> {
    let pointed = pointed_labels(data);
    let order = pointed.len() as u64;
    let mut generator = None;
    for &a in &pointed {
        let act = invertible_action(data, a)?;
        let mut orbit = vec![0usize];
        let mut cur = act[0];
        while cur != 0 && orbit.len() <= pointed.len() {
            orbit.push(cur);
            cur = act[cur];
        }
        if cur == 0 && orbit.len() == pointed.len() {
            generator = Some(a);
            break;
        }
    }
    let a = generator.ok_or_else(|| Error::NotCyclic(format!("{} invertibles, none generates", order)))?;
    let dims = data.dims();
    let mut components = vec![Vec::new(); order as usize];
    for x in 0..data.rank() {
        let chi = data.s_tilde(a, x).checked_div(&dims[x])?;
        let ph = chi
            .root_phase()
            .ok_or_else(|| Error::NotModular(format!("grading character at {} is not a root of unity", data.labels[x])))?;
        if !order.is_multiple_of(ph.order()) {
            return Err(Error::NotModular(format!("grading character at {} has order {}", data.labels[x], ph.order())));
        }
        components[(ph.num() * (order / ph.order())) as usize].push(x);
    }
    Ok(Grading { generator: a, order, components })
}

/// Entrywise `ζ_N -> ζ_N^k` on `S` and `T`.
pub fn galois_conjugate_data(data: &ModularData, k: i64) -> Result<ModularData> {
    let n = data.conductor;
    if k.gcd(&(n as i64)) != 1 {
        return Err(Error::NotUnit { k, n });
    }
    let g = |x: &CycloNum| x.galois_apply(k);
    let s = data.s.iter().map(|row| row.iter().map(g).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    let t = data.t.iter().map(g).collect::<Result<Vec<_>>>()?;
    ModularData::with_conductor(
        data.labels.clone(),
        s,
        t,
        n,
        format!("{} | Galois conjugate ζ_{} -> ζ_{}^{}", data.provenance, n, n, k.rem_euclid(n as i64)),
    )
}

/// Units modulo `n` in increasing order.
pub fn units_mod(n: u32) -> Vec<i64> {
    (1..=n.max(1) as i64).filter(|k| k.gcd(&(n as i64)) == 1 && (*k < n as i64 || n == 1)).collect()
}

/// Phase of each twist, for display.
pub fn twist_phases(data: &ModularData) -> Vec<Option<Phase>> {
    data.t.iter().map(CycloNum::root_phase).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pointed(n: u32, modulus: u32, table: &[i64]) -> ModularData {
        // S_ij = B(i,j)/√n with q(x) = ζ_M^{table[x]}
        let root = CycloNum::sqrt_int(n as u64).inv().unwrap();
        let q = |x: usize| table[x % n as usize];
        let s = (0..n as usize)
            .map(|i| {
                (0..n as usize)
                    .map(|j| &CycloNum::root_of_unity(modulus, q(i) + q(j) - q(i + j)) * &root)
                    .collect()
            })
            .collect();
        let t = (0..n as usize).map(|i| CycloNum::root_of_unity(modulus, q(i))).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        ModularData::new(labels, s, t, "pointed".into()).unwrap()
    }

    fn semion() -> ModularData {
        pointed(2, 4, &[0, 1])
    }

    #[test]
    fn semion_passes_and_has_charge_e_pi_4() {
        let d = semion();
        let rep = validate_modular(&d);
        assert!(rep.overall, "{:?}", rep.failures());
        assert_eq!(central_charge(&d).unwrap(), CycloNum::root_of_unity(8, 1));
        assert_eq!(d.s_tilde(1, 1), CycloNum::from_int(1, -1));
    }

    #[test]
    fn perturbed_twist_fails_balancing() {
        let d = pointed(3, 3, &[0, 1, 1]);
        assert!(validate_modular(&d).overall);
        let bad = d.with_twist(1, CycloNum::root_of_unity(3, 2)).unwrap();
        let rep = validate_modular(&bad);
        assert!(!rep.overall);
        assert!(!rep.check("balancing").unwrap().passed);
    }

    #[test]
    fn reconstruct_semion() {
        let d = semion();
        let ring = verlinde_fusion(&d).unwrap();
        let s = reconstruct_s(&ring, &d.dims(), d.t()).unwrap();
        assert_eq!(s, d.s().to_vec());
        let tilde = s[1][1].checked_div(&s[0][0]).unwrap();
        assert_eq!(tilde, CycloNum::from_int(1, -1));
    }

    #[test]
    fn pointed_gradings_are_singletons() {
        let d = pointed(3, 3, &[0, 1, 1]);
        let g = grading_components(&d).unwrap();
        assert_eq!(g.order, 3);
        assert!(g.components.iter().all(|c| c.len() == 1));
        assert_eq!(centralizer_labels(&d, 0).unwrap(), vec![0, 1, 2]);
        assert_eq!(adjoint_labels(&d), vec![0]);
    }

    #[test]
    fn galois_conjugation_preserves_fusion() {
        let d = pointed(4, 8, &[0, 1, 4, 1]);
        assert!(validate_modular(&d).overall);
        let ring = verlinde_fusion(&d).unwrap();
        for k in units_mod(d.conductor()) {
            let c = galois_conjugate_data(&d, k).unwrap();
            assert_eq!(verlinde_fusion(&c).unwrap(), ring);
        }
        assert!(galois_conjugate_data(&d, 2).is_err());
        assert_eq!(galois_conjugate_data(&d, 1).unwrap().s(), d.s());
    }

    #[test]
    fn json_round_trip() {
        let d = semion();
        let s = serde_json::to_string(&d).unwrap();
        let back: ModularData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn sequential_and_parallel_verlinde_agree() {
        let d = pointed(4, 8, &[0, 1, 4, 1]);
        assert_eq!(
            verlinde_fusion_with(&d, Exec::Sequential).unwrap(),
            verlinde_fusion_with(&d, Exec::Parallel).unwrap()
        );
    }
}
