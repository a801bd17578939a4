use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use mtcf::condense::{condense, find_bosons, CondensationJson, CondenseOptions, DEFAULT_BUDGET};
use mtcf::gidata::{build_gi_data, enumerate_small_with, GiInputSpec, SmallFamily};
use mtcf::modular::{
    adjoint_labels, central_charge, centralizer_labels, galois_conjugate_data, grading_components, units_mod, validate_modular_with,
    verlinde_fusion_with, ModularData,
};
use mtcf::par::Exec;
use mtcf::pipeline::{
    psu35, rank28_spec, run_pipeline_sixteen, run_pipeline_theorem, su3_component, Rank28Form, Rendered, REPORT_SCHEMA,
};
use mtcf::rings::{find_ring_iso_with, match_modular_data, FusionRing, IsoOptions};
use mtcf::su3k::{psu3_component, su3_simples};
use mtcf::CycloNum;

/// `println!` that ignores a closed stdout.
macro_rules! say {
    ($($t:tt)*) => {{
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "mtcf", version, about = "Exact modular-data workbench")]
struct Cli {
    /// Run every kernel sequentially.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build modular data from a pair of involutive metric groups.
    Build {
        #[arg(long, required_unless_present = "preset")]
        input: Option<PathBuf>,
        /// Built-in rank-28 input instead of a file.
        #[arg(long, conflicts_with = "input")]
        preset: Option<Rank28Preset>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the modular-data axioms.
    Validate { data: PathBuf },
    /// Fusion ring via the Verlinde formula.
    Fuse {
        data: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Universal grading by the pointed part.
    Grade { data: PathBuf },
    /// Condense a boson.
    Condense {
        data: PathBuf,
        /// `auto` or a label.
        #[arg(long, default_value = "auto")]
        boson: String,
        #[arg(long, value_enum, default_value = "adjoint")]
        domain: Domain,
        /// Skip resolving the condensed fusion ring.
        #[arg(long)]
        no_resolve: bool,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `SU(3)_k` fusion, dimensions, twists and modular data.
    Su3 {
        #[arg(long)]
        level: u32,
        #[arg(long, value_enum, default_value = "full")]
        component: Component,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fusion-ring isomorphisms between two files.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Require dimensions to match.
        #[arg(long)]
        dims: bool,
        /// Require twists to match.
        #[arg(long)]
        twists: bool,
    },
    /// Modular-data equivalence up to relabeling.
    CompareData { a: PathBuf, b: PathBuf },
    /// Galois conjugate `ζ_N -> ζ_N^k`.
    Galois {
        data: PathBuf,
        #[arg(long)]
        k: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All rank-10 data of one small family.
    Enumerate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        out: PathBuf,
    },
    /// Rank-28 construction through to the Galois verdict, both forms.
    PipelineTheorem {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The sixteen rank-10 data sets.
    PipelineSixteen {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rank28Preset {
    Hyperbolic,
    Elliptic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Domain {
    Adjoint,
    Centralizer,
}

#[derive(Clone, Copy, ValueEnum)]
enum Component {
    Full,
    Psu,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Z2z2,
    Z4,
}

/// A failed mathematical check, as opposed to a usage or IO error.
#[derive(Debug)]
struct CheckFailed(String);

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("MTCF_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: MTCF_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    match run(cli.cmd, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {:#}", e);
            let math = e.downcast_ref::<CheckFailed>().is_some()
                || e.downcast_ref::<mtcf::Error>().is_some_and(|m| !matches!(m, mtcf::Error::Input(_)));
            ExitCode::from(if math { 1 } else { 2 })
        }
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Modular data, or an `su3` output carrying it under `data`.
fn read_data(path: &Path) -> anyhow::Result<ModularData> {
    let mut v = read_json(path)?;
    if let Some(inner) = v.get_mut("data").filter(|d| d.get("S").is_some()) {
        v = inner.take();
    }
    serde_json::from_value(v).with_context(|| format!("{} is not modular data", path.display()))
}

fn to_json<T: Serialize>(x: &T) -> anyhow::Result<String> {
    let mut s = serde_json::to_string_pretty(x)?;
    s.push('\n');
    Ok(s)
}

/// Writes to `out`, or stdout when absent.
fn emit<T: Serialize>(x: &T, out: Option<&Path>) -> anyhow::Result<()> {
    let s = to_json(x)?;
    match out {
        Some(p) => fs::write(p, s).with_context(|| format!("writing {}", p.display()))?,
        None => {
            let _ = std::io::stdout().write_all(s.as_bytes());
        }
    }
    Ok(())
}

fn show(x: &CycloNum) -> String {
    let r = Rendered::new(x);
    if r.approx[1] == 0.0 {
        format!("{}  (≈ {:.6})", r.text, r.approx[0])
    } else {
        format!("{}  (≈ {:.6} {:+.6}i)", r.text, r.approx[0], r.approx[1])
    }
}

fn run(cmd: Cmd, exec: Exec) -> anyhow::Result<()> {
    match cmd {
        Cmd::Build { input, preset, out } => {
            let spec: GiInputSpec = match (input, preset) {
                (Some(p), _) => serde_json::from_value(read_json(&p)?).context("not a GI input")?,
                (None, Some(Rank28Preset::Hyperbolic)) => rank28_spec(Rank28Form::Hyperbolic, true),
                (None, Some(Rank28Preset::Elliptic)) => rank28_spec(Rank28Form::Elliptic, true),
                (None, None) => bail!("--input or --preset is required"),
            };
            let gi = build_gi_data(&spec.build()?)?;
            emit(&gi.data, out.as_deref())?;
            if out.is_some() {
                say!("rank {} over Q(ζ_{})", gi.data.rank(), gi.data.conductor());
            }
        }
        Cmd::Validate { data } => {
            let d = read_data(&data)?;
            let rep = validate_modular_with(&d, exec);
            for c in &rep.checks {
                match &c.witness {
                    None => say!("PASS {}", c.name),
                    Some(w) => say!("FAIL {}: {}", c.name, w),
                }
            }
            if !rep.overall {
                return Err(CheckFailed(format!("{} check(s) failed", rep.failures().len())).into());
            }
        }
        Cmd::Fuse { data, out } => {
            let d = read_data(&data)?;
            let ring = verlinde_fusion_with(&d, exec)?;
            emit(&ring, out.as_deref())?;
        }
        Cmd::Grade { data } => {
            let d = read_data(&data)?;
            let g = grading_components(&d)?;
            let comps: Vec<Vec<&str>> = g.components.iter().map(|c| c.iter().map(|&x| d.label(x)).collect()).collect();
            let v = serde_json::json!({
                "schema": REPORT_SCHEMA,
                "generator": d.label(g.generator),
                "order": g.order,
                "components": comps,
            });
            emit(&v, None)?;
        }
        Cmd::Condense { data, boson, domain, no_resolve, budget, out } => {
            let d = read_data(&data)?;
            let b = if boson == "auto" {
                *find_bosons(&d).first().ok_or_else(|| CheckFailed("no boson".into()))?
            } else {
                d.index_of(&boson).with_context(|| format!("no label {}", boson))?
            };
            let dom = match domain {
                Domain::Adjoint => adjoint_labels(&d),
                Domain::Centralizer => centralizer_labels(&d, b)?,
            };
            let opts = CondenseOptions { resolve: !no_resolve, budget, exec };
            let rep = condense(&d, None, b, &dom, opts)?;
            let mut v = serde_json::to_value(rep.to_json(&d))?;
            v["schema"] = Value::from(REPORT_SCHEMA);
            emit(&v, out.as_deref())?;
            if out.is_some() {
                say!("boson {} on {} labels", d.label(b), dom.len());
                say!("{:<28} {:<36} twist", "simple", "dim");
                for s in &rep.spectrum {
                    say!("{:<28} {:<36} {}", s.name, show(&s.dim), show(&s.twist));
                }
                say!("{} ring(s) up to branch swaps, {} nodes", rep.rings.len(), rep.nodes);
            }
        }
        Cmd::Su3 { level, component, out } => {
            let comp = match component {
                Component::Psu if level == 5 => psu35()?,
                Component::Psu => {
                    let w = su3_simples(level);
                    let idx = psu3_component(&w);
                    su3_component(level, &idx.iter().map(|&i| w[i]).collect::<Vec<_>>(), 0)?
                }
                Component::Full => su3_component(level, &su3_simples(level), 0)?,
            };
            emit(&comp.to_json(), out.as_deref())?;
            if out.is_some() {
                for (i, w) in comp.weights.iter().enumerate() {
                    say!("{:<8} d = {:<36} θ = {}", w.to_string(), show(&comp.dims[i]), show(&comp.twists[i]));
                }
            }
        }
        Cmd::Compare { a, b, dims, twists } => {
            let a = read_ring(&a, exec)?;
            let b = read_ring(&b, exec)?;
            let pick = |want: bool, x: &Option<Vec<CycloNum>>, y: &Option<Vec<CycloNum>>, what: &str| -> anyhow::Result<_> {
                if !want {
                    return Ok(None);
                }
                match (x, y) {
                    (Some(x), Some(y)) => Ok(Some((x.clone(), y.clone()))),
                    _ => bail!("--{} needs {} in both inputs", what, what),
                }
            };
            let d = pick(dims, &a.dims, &b.dims, "dims")?;
            let t = pick(twists, &a.twists, &b.twists, "twists")?;
            let opts = IsoOptions {
                dims: d.as_ref().map(|(x, y)| (x.as_slice(), y.as_slice())),
                twists: t.as_ref().map(|(x, y)| (x.as_slice(), y.as_slice())),
                first_only: false,
            };
            let isos = find_ring_iso_with(&a.ring, &b.ring, opts);
            let named: Vec<Vec<(String, String)>> = isos
                .iter()
                .map(|s| s.iter().enumerate().map(|(i, &x)| (b.ring.names()[i].clone(), a.ring.names()[x].clone())).collect())
                .collect();
            emit(&serde_json::json!({ "schema": REPORT_SCHEMA, "isomorphisms": named }), None)?;
            if isos.is_empty() {
                return Err(CheckFailed("rings are not isomorphic".into()).into());
            }
        }
        Cmd::CompareData { a, b } => {
            let (x, y) = (read_data(&a)?, read_data(&b)?);
            let m = match_modular_data(&x, &y);
            let named = m.as_ref().map(|s| s.iter().enumerate().map(|(i, &j)| (y.label(i).to_string(), x.label(j).to_string())).collect::<Vec<_>>());
            emit(&serde_json::json!({ "schema": REPORT_SCHEMA, "match": named }), None)?;
            if m.is_none() {
                return Err(CheckFailed("modular data are not equivalent".into()).into());
            }
        }
        Cmd::Galois { data, k, out } => {
            let d = read_data(&data)?;
            let n = d.conductor() as i64;
            if !units_mod(d.conductor()).iter().any(|u| (u - k).rem_euclid(n) == 0) {
                bail!("--k {k} is not a unit modulo the conductor {}", d.conductor());
            }
            let g = galois_conjugate_data(&d, k)?;
            emit(&g, out.as_deref())?;
        }
        Cmd::Enumerate { family, out } => {
            let fam = match family {
                Family::Z2z2 => SmallFamily::Z2z2,
                Family::Z4 => SmallFamily::Z4,
            };
            fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
            let sets = enumerate_small_with(fam, exec)?;
            let tag = match family {
                Family::Z2z2 => "z2z2",
                Family::Z4 => "z4",
            };
            for (i, gi) in sets.iter().enumerate() {
                let p = out.join(format!("{}_{:02}.json", tag, i));
                fs::write(&p, to_json(&gi.data)?).with_context(|| format!("writing {}", p.display()))?;
                let c = central_charge(&gi.data)?;
                say!("{}  rank {}  𝒢(q₁) = {}  c = {}", p.display(), gi.data.rank(), gi.gauss.0, c);
            }
        }
        Cmd::PipelineTheorem { out } => {
            let rep = run_pipeline_theorem(exec)?;
            emit(&rep, out.as_deref())?;
            if out.is_some() {
                for r in &rep.runs {
                    say!("{}: {} (survivors k = {:?})", r.form.name(), r.verdict, r.surviving());
                }
                say!("adjoint fusion rules agree: {}", rep.adjoint_rings_agree);
            }
            if !rep.passed {
                return Err(CheckFailed("theorem pipeline did not reach the expected verdict".into()).into());
            }
        }
        Cmd::PipelineSixteen { out } => {
            let rep = run_pipeline_sixteen(exec)?;
            emit(&rep, out.as_deref())?;
            if out.is_some() {
                say!("{} distinct rank-10 data", rep.distinct);
                for e in &rep.entries {
                    say!("{:?}  𝒢(q₁) = {:<10} c = {}", e.family, e.gauss_q1.text, e.central_charge.text);
                }
            }
            if !rep.passed {
                return Err(CheckFailed(format!("expected 16 distinct data, found {}", rep.distinct)).into());
            }
        }
    }
    Ok(())
}

struct RingInput {
    ring: FusionRing,
    dims: Option<Vec<CycloNum>>,
    twists: Option<Vec<CycloNum>>,
}

/// A fusion ring (optionally with `dims`/`twists`), an `su3` output, a
/// condensation report, or
/// modular data.
fn read_ring(path: &Path, exec: Exec) -> anyhow::Result<RingInput> {
    let v = read_json(path)?;
    if v.get("S").is_some() {
        let d: ModularData = serde_json::from_value(v)?;
        let ring = verlinde_fusion_with(&d, exec)?;
        return Ok(RingInput { ring, dims: Some(d.dims()), twists: Some(d.t().to_vec()) });
    }
    if let Some(r) = v.get("ring") {
        let ring: FusionRing = serde_json::from_value(r.clone())?;
        let exact = |key: &str| -> anyhow::Result<Option<Vec<CycloNum>>> {
            match v.get(key) {
                None => Ok(None),
                Some(xs) => Ok(Some(serde_json::from_value::<Vec<Rendered>>(xs.clone())?.into_iter().map(|r| r.exact).collect())),
            }
        };
        return Ok(RingInput { ring, dims: exact("dims")?, twists: exact("twists")? });
    }
    if v.get("spectrum").is_some() {
        let c: CondensationJson = serde_json::from_value(v)?;
        let ring = match c.rings.as_slice() {
            [r] => r.clone(),
            [] => bail!("{} holds no resolved ring", path.display()),
            rs => bail!("{} holds {} rings; compare needs a unique one", path.display(), rs.len()),
        };
        let dims = c.spectrum.iter().map(|s| s.dim.clone()).collect();
        let twists = c.spectrum.iter().map(|s| s.twist.clone()).collect();
        return Ok(RingInput { ring, dims: Some(dims), twists: Some(twists) });
    }
    let ring: FusionRing = serde_json::from_value(v.clone()).with_context(|| format!("{} is not a fusion ring", path.display()))?;
    let opt = |key: &str| -> anyhow::Result<Option<Vec<CycloNum>>> {
        v.get(key).map(|x| serde_json::from_value(x.clone())).transpose().map_err(Into::into)
    };
    Ok(RingInput { ring, dims: opt("dims")?, twists: opt("twists")? })
}
