//! Built-in inputs and the two end-to-end reproduction pipelines.

use serde::{Deserialize, Serialize};

use crate::condense::{condense, CondensationJson, CondenseOptions};
use crate::cyclo::CycloNum;
use crate::gidata::{build_gi_data, enumerate_small_with, GiData, GiInputSpec, SmallFamily};
use crate::modular::{
    adjoint_labels, centralizer_labels, central_charge, galois_conjugate_data, grading_components, pointed_labels,
    reconstruct_s, units_mod, validate_modular_with, verlinde_fusion_with, ModularData, ValidationReport,
};
use crate::par::Exec;
use crate::premetric::{FormSpec, ImgSpec};
use crate::rings::{find_ring_iso, find_ring_iso_with, match_modular_data, FusionRing, IsoOptions};
use crate::su3k::{su3_dims_twists, su3_fusion, su3_simples, LevelWeight};
use crate::{Error, Result};

/// Version tag carried by every report.
pub const REPORT_SCHEMA: &str = "mtcf-report/1";

/// The two compatible forms on `Z₄×Z₄`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rank28Form {
    /// `q₁(x,y) = i^{-xy}`.
    Hyperbolic,
    /// `q₁(x,y) = i^{x²+xy+y²}`.
    Elliptic,
}

impl Rank28Form {
    pub fn name(self) -> &'static str {
        match self {
            Rank28Form::Hyperbolic => "hyperbolic",
            Rank28Form::Elliptic => "elliptic",
        }
    }
}

pub const RANK28_G_STAR: [[i64; 2]; 6] = [[1, 0], [2, 0], [2, 1], [3, 0], [3, 1], [3, 2]];
pub const RANK28_GAMMA_STAR: [[i64; 2]; 14] = [
    [1, 0],
    [2, 0],
    [3, 0],
    [4, 0],
    [5, 0],
    [9, 0],
    [10, 0],
    [0, 1],
    [1, 1],
    [2, 1],
    [5, 1],
    [6, 1],
    [7, 1],
    [13, 1],
];

/// `(Z₄×Z₄, q₁, swap) × (Z₁₆×Z₂, ζ₃₂^{3x²} i^{y²}, θ₂)` with the standard
/// transversals; `transversals = false` leaves them to the canonical choice.
pub fn rank28_spec(form: Rank28Form, transversals: bool) -> GiInputSpec {
    let matrix = match form {
        Rank28Form::Hyperbolic => vec![vec![0, -1], vec![-1, 0]],
        Rank28Form::Elliptic => vec![vec![2, 1], vec![1, 2]],
    };
    GiInputSpec {
        g: ImgSpec {
            moduli: vec![4, 4],
            form: FormSpec { modulus: 8, matrix: Some(matrix), table: None },
            theta: vec![vec![0, 1], vec![1, 0]],
        },
        gamma: ImgSpec {
            moduli: vec![16, 2],
            form: FormSpec { modulus: 32, matrix: Some(vec![vec![3, 0], vec![0, 8]]), table: None },
            theta: vec![vec![3, 8], vec![1, 1]],
        },
        iso: None,
        g_star: transversals.then(|| RANK28_G_STAR.iter().map(|c| c.to_vec()).collect()),
        gamma_star: transversals.then(|| RANK28_GAMMA_STAR.iter().map(|c| c.to_vec()).collect()),
    }
}

pub fn build_rank28(form: Rank28Form) -> Result<GiData> {
    build_gi_data(&rank28_spec(form, true).build()?)
}

/// Triality-zero weights at level 5 in display order.
pub const PSU35_WEIGHTS: [LevelWeight; 7] = [
    LevelWeight(0, 0),
    LevelWeight(3, 0),
    LevelWeight(0, 3),
    LevelWeight(1, 1),
    LevelWeight(4, 1),
    LevelWeight(1, 4),
    LevelWeight(2, 2),
];

/// Fusion ring, dimensions, twists and `S` of the triality-zero part of
/// `SU(3)_k`, with `S` reconstructed from the other three.
#[derive(Clone, Debug)]
pub struct Su3Component {
    pub level: u32,
    pub weights: Vec<LevelWeight>,
    pub ring: FusionRing,
    pub dims: Vec<CycloNum>,
    pub twists: Vec<CycloNum>,
    pub data: ModularData,
}

/// The component of `SU(3)_k` on `weights` (unit first), with modular data
/// at the conductor `n` (use 0 for the natural one).
pub fn su3_component(k: u32, weights: &[LevelWeight], n: u32) -> Result<Su3Component> {
    let all = su3_simples(k);
    let full = su3_fusion(k)?;
    let idx: Vec<usize> = weights
        .iter()
        .map(|w| all.iter().position(|x| x == w).ok_or_else(|| Error::Input(format!("{} is not a level-{} weight", w, k))))
        .collect::<Result<_>>()?;
    let ring = full.restrict(&idx)?;
    let (dims, twists) = su3_dims_twists(k, weights);
    let s = reconstruct_s(&ring, &dims, &twists)?;
    let labels = ring.names().to_vec();
    let prov = format!("SU(3)_{} component {{{}}}, S from balancing", k, labels.join(","));
    let data = if n == 0 {
        ModularData::new(labels, s, twists.clone(), prov)?
    } else {
        ModularData::with_conductor(labels, s, twists.clone(), n, prov)?
    };
    Ok(Su3Component { level: k, weights: weights.to_vec(), ring, dims, twists, data })
}

/// `PSU(3)_5` at conductor 16, the field of its twists.
pub fn psu35() -> Result<Su3Component> {
    su3_component(5, &PSU35_WEIGHTS, 16)
}

/// An exact value with a float rendering alongside.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rendered {
    pub exact: CycloNum,
    pub text: String,
    pub approx: [f64; 2],
}

impl Rendered {
    pub fn new(x: &CycloNum) -> Rendered {
        let x = x.minimize();
        let (re, im) = x.to_complex();
        let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { (v * 1e12).round() / 1e12 };
        Rendered { text: x.to_string(), approx: [clean(re), clean(im)], exact: x }
    }
}

/// One Galois conjugate `ζ₁₆ -> ζ₁₆^k` of the reconstructed data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GaloisCandidate {
    pub k: i64,
    pub totally_positive: bool,
    pub twist_match: bool,
}

impl GaloisCandidate {
    pub fn survives(&self) -> bool {
        self.totally_positive && self.twist_match
    }
}

/// Galois conjugates of `psu` for which some ring isomorphism onto
/// `target` carries dimensions and twists to `target_dims`/`target_twists`.
pub fn galois_elimination(
    psu: &ModularData,
    psu_ring: &FusionRing,
    target: &FusionRing,
    target_dims: &[CycloNum],
    target_twists: &[CycloNum],
) -> Result<Vec<GaloisCandidate>> {
    units_mod(psu.conductor())
        .into_iter()
        .map(|k| {
            let conj = galois_conjugate_data(psu, k)?;
            let dims = conj.dims();
            let totally_positive = dims.iter().all(CycloNum::is_positive_real);
            let opts = IsoOptions {
                dims: Some((&dims, target_dims)),
                twists: Some((conj.t(), target_twists)),
                first_only: true,
            };
            let twist_match = !find_ring_iso_with(psu_ring, target, opts).is_empty();
            Ok(GaloisCandidate { k, totally_positive, twist_match })
        })
        .collect()
}

fn stage<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Stage { .. } => e,
        other => Error::Stage { stage: name.into(), message: other.to_string() },
    })
}

fn fail(name: &str, message: String) -> Error {
    Error::Stage { stage: name.into(), message }
}

/// One rank-28 run, every intermediate artifact included.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Rank28Run {
    pub form: Rank28Form,
    pub rank: usize,
    pub conductor: u32,
    pub provenance: String,
    pub validation: ValidationReport,
    pub central_charge: Rendered,
    pub pointed: Vec<String>,
    pub boson: String,
    pub centralizer: Vec<String>,
    pub adjoint: Vec<String>,
    pub grading: Vec<Vec<String>>,
    pub condensation: CondensationJson,
    /// Free invertible classes in the full centralizer: `(class, S̃_zz, θ_z)`.
    pub centralizer_residue: Vec<(Vec<String>, Rendered, Rendered)>,
    /// Condensed simple matched to each `PSU(3)_5` label, one map per
    /// isomorphism.
    pub ring_isos: Vec<Vec<String>>,
    pub galois: Vec<GaloisCandidate>,
    pub verdict: String,
}

impl Rank28Run {
    pub fn surviving(&self) -> Vec<i64> {
        self.galois.iter().filter(|g| g.survives()).map(|g| g.k).collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TheoremReport {
    pub schema: String,
    pub runs: Vec<Rank28Run>,
    pub adjoint_rings_agree: bool,
    pub psu35: Su3Json,
    pub passed: bool,
}

/// Serializable `SU(3)_k` component.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Su3Json {
    pub schema: String,
    pub level: u32,
    pub ring: FusionRing,
    pub dims: Vec<Rendered>,
    pub twists: Vec<Rendered>,
    pub data: ModularData,
}

impl Su3Component {
    pub fn to_json(&self) -> Su3Json {
        Su3Json {
            schema: REPORT_SCHEMA.into(),
            level: self.level,
            ring: self.ring.clone(),
            dims: self.dims.iter().map(Rendered::new).collect(),
            twists: self.twists.iter().map(Rendered::new).collect(),
            data: self.data.clone(),
        }
    }
}

/// Build → validate → boson → centralizer → adjoint → condense → resolve
/// → compare with `PSU(3)_5` → Galois elimination, for one form.
pub fn run_rank28(form: Rank28Form, psu: &Su3Component, exec: Exec) -> Result<(Rank28Run, FusionRing, Vec<CycloNum>, Vec<CycloNum>)> {
    let gi = stage("build", build_rank28(form))?;
    run_rank28_on(form, &gi.data, psu, exec)
}

pub fn run_rank28_on(
    form: Rank28Form,
    data: &ModularData,
    psu: &Su3Component,
    exec: Exec,
) -> Result<(Rank28Run, FusionRing, Vec<CycloNum>, Vec<CycloNum>)> {
    let names = |xs: &[usize]| xs.iter().map(|&x| data.label(x).to_string()).collect::<Vec<_>>();
    let validation = validate_modular_with(data, exec);
    if !validation.overall {
        let f = validation.failures();
        return Err(fail("validate", format!("{} ({})", f[0].name, f[0].witness.clone().unwrap_or_default())));
    }
    let parent = stage("fusion", verlinde_fusion_with(data, exec))?;
    let c = stage("central charge", central_charge(data))?;
    let pointed = pointed_labels(data);
    let bosons = crate::condense::find_bosons(data);
    let b = match bosons.as_slice() {
        [b] => *b,
        other => return Err(fail("boson", format!("expected one boson, found {}", other.len()))),
    };
    let centralizer = stage("centralizer", centralizer_labels(data, b))?;
    let adjoint = adjoint_labels(data);
    let grading = stage("grading", grading_components(data))?;

    let opts = CondenseOptions { resolve: true, exec, ..Default::default() };
    let rep = stage("condense", condense(data, Some(&parent), b, &adjoint, opts))?;
    if rep.rings.len() != 1 {
        return Err(fail("resolve", format!("{} inequivalent solutions", rep.rings.len())));
    }
    let full = stage(
        "centralizer condensation",
        condense(data, Some(&parent), b, &centralizer, CondenseOptions { resolve: false, exec, ..Default::default() }),
    )?;
    let centralizer_residue = full
        .pointed_residue
        .iter()
        .map(|(ci, s, t)| (names(&full.classes[*ci].members), Rendered::new(s), Rendered::new(t)))
        .collect();

    let ring = rep.rings[0].clone();
    let cdims: Vec<CycloNum> = rep.spectrum.iter().map(|s| s.dim.clone()).collect();
    let ctwists: Vec<CycloNum> = rep.spectrum.iter().map(|s| s.twist.clone()).collect();
    let isos = find_ring_iso(&ring, &psu.ring);
    if isos.is_empty() {
        return Err(fail("compare", "condensed ring is not isomorphic to PSU(3)_5".into()));
    }
    let ring_isos = isos.iter().map(|s| s.iter().map(|&i| ring.names()[i].clone()).collect()).collect();
    let galois = stage("galois", galois_elimination(&psu.data, &psu.ring, &ring, &cdims, &ctwists))?;
    let survivors = galois.iter().filter(|g| g.survives()).count();
    let verdict = format!("ring ≅ PSU(3)_5; {} Galois candidates survive twist matching", survivors);
    let run = Rank28Run {
        form,
        rank: data.rank(),
        conductor: data.conductor(),
        provenance: data.provenance().to_string(),
        validation,
        central_charge: Rendered::new(&c),
        pointed: names(&pointed),
        boson: data.label(b).to_string(),
        centralizer: names(&centralizer),
        adjoint: names(&adjoint),
        grading: grading.components.iter().map(|c| names(c)).collect(),
        condensation: rep.to_json(data),
        centralizer_residue,
        ring_isos,
        galois,
        verdict,
    };
    Ok((run, ring, cdims, ctwists))
}

/// Both rank-28 forms end to end, plus the comparison of their adjoint
/// rings.
pub fn run_pipeline_theorem(exec: Exec) -> Result<TheoremReport> {
    let psu = stage("su3", psu35())?;
    let mut runs = Vec::new();
    let mut rings = Vec::new();
    for form in [Rank28Form::Hyperbolic, Rank28Form::Elliptic] {
        let (run, ring, d, t) = run_rank28(form, &psu, exec)?;
        runs.push(run);
        rings.push((ring, d, t));
    }
    let (a, b) = (&rings[0], &rings[1]);
    let opts = IsoOptions { dims: Some((&a.1, &b.1)), twists: Some((&a.2, &b.2)), first_only: true };
    let adjoint_rings_agree = !find_ring_iso_with(&a.0, &b.0, opts).is_empty();
    let passed = adjoint_rings_agree && runs.iter().all(|r| r.surviving().len() == 2);
    Ok(TheoremReport { schema: REPORT_SCHEMA.into(), runs, adjoint_rings_agree, psu35: psu.to_json(), passed })
}

/// One rank-10 datum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SixteenEntry {
    pub family: SmallFamily,
    pub rank: usize,
    pub gauss_q1: Rendered,
    pub gauss_q2: Rendered,
    pub central_charge: Rendered,
    pub toric_code_form: bool,
    pub has_fermion: bool,
    pub valid: bool,
    pub data: ModularData,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SixteenReport {
    pub schema: String,
    pub entries: Vec<SixteenEntry>,
    pub distinct: usize,
    pub passed: bool,
}

/// `enumerate_small` for both families, validated and counted.
pub fn run_pipeline_sixteen(exec: Exec) -> Result<SixteenReport> {
    let mut entries = Vec::new();
    for family in [SmallFamily::Z2z2, SmallFamily::Z4] {
        let sets = stage("enumerate", enumerate_small_with(family, exec))?;
        for gi in sets {
            let data = gi.data;
            let valid = validate_modular_with(&data, exec).overall;
            let c = stage("central charge", central_charge(&data))?;
            let has_fermion = pointed_labels(&data).iter().any(|&x| data.t()[x] == CycloNum::from_int(1, -1));
            entries.push(SixteenEntry {
                family,
                rank: data.rank(),
                toric_code_form: family == SmallFamily::Z2z2 && gi.gauss.0.is_one(),
                gauss_q1: Rendered::new(&gi.gauss.0),
                gauss_q2: Rendered::new(&gi.gauss.1),
                central_charge: Rendered::new(&c),
                has_fermion,
                valid,
                data,
            });
        }
    }
    let mut reps: Vec<&ModularData> = Vec::new();
    for e in &entries {
        if !reps.iter().any(|r| match_modular_data(r, &e.data).is_some()) {
            reps.push(&e.data);
        }
    }
    let distinct = reps.len();
    let passed = distinct == 16
        && entries.len() == 16
        && entries.iter().all(|e| e.rank == 10 && e.valid && e.has_fermion && e.central_charge.exact.is_one() == e.toric_code_form);
    Ok(SixteenReport { schema: REPORT_SCHEMA.into(), entries, distinct, passed })
}
