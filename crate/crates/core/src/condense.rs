//! Condensation of a bosonic invertible `b` at the level of modular data.
//!
//! On a domain closed under `b ⊗ -`, free orbits `{X, bX}` become one
//! simple of the same dimension and fixed points `X = bX` split into two
//! simples of half the dimension; twists are inherited. Multiplicities
//! between condensed simples are only known in aggregate,
//! `Hom(F(x)⊗F(y), F(z)) = N(x⊗y, z) + N(x⊗y, b⊗z)`, and the individual
//! ones are recovered by [`resolve_splitting`].

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::modular::{invertible_action, verlinde_fusion_with, ModularData};
use crate::par::Exec;
use crate::rings::FusionRing;
use crate::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Nontrivial labels with `d = 1` and `θ = 1`.
pub fn find_bosons(data: &ModularData) -> Vec<usize> {
    let dims = data.dims();
    (1..data.rank()).filter(|&i| dims[i].is_one() && data.t()[i].is_one()).collect()
}

/// One orbit of `b ⊗ -` on the domain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub members: Vec<usize>,
    pub split: bool,
}

/// Orbits of `b ⊗ -` on `domain`, in domain order.
pub fn orbit_structure(data: &ModularData, b: usize, domain: &[usize]) -> Result<Vec<OrbitClass>> {
    let act = invertible_action(data, b)?;
    orbits_from_action(data, &act, domain)
}

fn orbits_from_action(data: &ModularData, act: &[usize], domain: &[usize]) -> Result<Vec<OrbitClass>> {
    let set: BTreeSet<usize> = domain.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &x in domain {
        let bx = act[x];
        if !set.contains(&bx) {
            return Err(Error::DomainNotClosed(format!("b ⊗ {} = {} leaves the domain", data.label(x), data.label(bx))));
        }
        if act[bx] != x {
            return Err(Error::DomainNotClosed(format!("b ⊗ b ⊗ {} != {}", data.label(x), data.label(x))));
        }
        if !seen.insert(x) {
            continue;
        }
        if bx == x {
            out.push(OrbitClass { members: vec![x], split: true });
        } else {
            seen.insert(bx);
            out.push(OrbitClass { members: vec![x, bx], split: false });
        }
    }
    Ok(out)
}

/// A simple object of the condensed theory.
#[derive(Clone, Debug, PartialEq)]
pub struct CondensedSimple {
    pub name: String,
    /// Index into the orbit classes.
    pub source: usize,
    /// 1 or 2 for the branches of a split class, 0 otherwise.
    pub branch: u8,
    pub dim: CycloNum,
    pub twist: CycloNum,
}

/// One simple per free orbit, two per fixed point.
pub fn condensed_spectrum(data: &ModularData, classes: &[OrbitClass]) -> Vec<CondensedSimple> {
    let dims = data.dims();
    let half = CycloNum::from_ratio(1, 1, 2);
    let mut out = Vec::new();
    for (ci, c) in classes.iter().enumerate() {
        let x = c.members[0];
        let name = if c.split {
            data.label(x).to_string()
        } else {
            format!("[{}]", c.members.iter().map(|&m| data.label(m)).collect::<Vec<_>>().join(","))
        };
        let twist = data.t()[x].minimize();
        if c.split {
            let dim = (&dims[x] * &half).minimize();
            for br in 1..=2u8 {
                out.push(CondensedSimple {
                    name: format!("{}#{}", name, br),
                    source: ci,
                    branch: br,
                    dim: dim.clone(),
                    twist: twist.clone(),
                });
            }
        } else {
            out.push(CondensedSimple { name, source: ci, branch: 0, dim: dims[x].minimize(), twist });
        }
    }
    out
}

/// `N(x₁⊗y₁, z₁) + N(x₁⊗y₁, b⊗z₁)` on class representatives.
pub fn aggregate_fusion(ring: &FusionRing, b: usize, x: &OrbitClass, y: &OrbitClass, z: &OrbitClass) -> u32 {
    let (x1, y1, z1) = (x.members[0], y.members[0], z.members[0]);
    let bz: Vec<(usize, u32)> = ring.product(b, z1);
    let bz1 = bz[0].0;
    ring.get(x1, y1, z1) + ring.get(x1, y1, bz1)
}

/// The solver state shared by every choice of dual permutation.
struct Problem {
    /// Number of condensed simples; simple 0 is the unit.
    s: usize,
    class_of: Vec<usize>,
    classes_simples: Vec<Vec<usize>>,
    dims: Vec<CycloNum>,
    dims_f: Vec<f64>,
    /// `agg[X][Y][Z]`.
    agg: Vec<Vec<Vec<u32>>>,
    /// Parent dual on classes.
    class_dual: Vec<usize>,
}

#[derive(Clone, Debug)]
struct Solution {
    dual: Vec<usize>,
    /// `N[a][b][c]`, flattened.
    n: Vec<u32>,
}

impl Problem {
    fn get_n(&self, sol: &Solution, a: usize, b: usize, c: usize) -> u32 {
        sol.n[(a * self.s + b) * self.s + c]
    }

    /// Candidate dual permutations: determined on free classes, free to fix
    /// or swap the branches of each self-dual split class.
    fn dual_choices(&self) -> Vec<Vec<usize>> {
        let mut base = vec![usize::MAX; self.s];
        let mut choices: Vec<usize> = Vec::new();
        for (ci, simples) in self.classes_simples.iter().enumerate() {
            let di = self.class_dual[ci];
            let target = &self.classes_simples[di];
            if simples.len() != target.len() {
                return Vec::new();
            }
            if di == ci && simples.len() == 2 {
                choices.push(ci);
            }
            for (k, &a) in simples.iter().enumerate() {
                base[a] = target[k];
            }
        }
        let mut out = Vec::new();
        for mask in 0..(1usize << choices.len()) {
            let mut d = base.clone();
            for (bit, &ci) in choices.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let sm = &self.classes_simples[ci];
                    d[sm[0]] = sm[1];
                    d[sm[1]] = sm[0];
                }
            }
            if (0..self.s).all(|a| d[d[a]] == a && self.dims[d[a]] == self.dims[a]) {
                out.push(d);
            }
        }
        out
    }

    fn solve_for_dual(&self, dual: &[usize], budget: u64) -> Result<(Vec<Solution>, u64)> {
        let s = self.s;
        // unknowns: sorted nonunit triples a ≤ b ≤ c of M(a,b,c) = N_ab^{δc}
        let mut idx = vec![usize::MAX; s * s * s];
        let mut triples = Vec::new();
        for a in 1..s {
            for b in a..s {
                for c in b..s {
                    idx[(a * s + b) * s + c] = triples.len();
                    triples.push([a, b, c]);
                }
            }
        }
        let key = |t: [usize; 3]| {
            let mut t = t;
            t.sort_unstable();
            t
        };
        // group unknowns by class multiset
        let mut groups: HashMap<[usize; 3], Vec<usize>> = HashMap::new();
        for (u, t) in triples.iter().enumerate() {
            let mut cl = [self.class_of[t[0]], self.class_of[t[1]], self.class_of[t[2]]];
            cl.sort_unstable();
            groups.entry(cl).or_default().push(u);
        }
        struct Group {
            unknowns: Vec<usize>,
            coeffs: Vec<u32>,
            target: u32,
        }
        let mut glist: Vec<Group> = Vec::new();
        let mut gkeys: Vec<[usize; 3]> = groups.keys().copied().collect();
        gkeys.sort_unstable();
        for cl in gkeys {
            let unknowns = groups[&cl].clone();
            let pos: HashMap<usize, usize> = unknowns.iter().enumerate().map(|(i, &u)| (u, i)).collect();
            let mut coeffs = vec![0u32; unknowns.len()];
            let (x, y, w) = (cl[0], cl[1], cl[2]);
            for &a in &self.classes_simples[x] {
                for &b in &self.classes_simples[y] {
                    for &c in &self.classes_simples[w] {
                        let t = key([a, b, c]);
                        coeffs[pos[&idx[(t[0] * s + t[1]) * s + t[2]]]] += 1;
                    }
                }
            }
            // Σ_{a∈X,b∈Y,c∈W} N_ab^{δc} with δW = W*, so the aggregate is at (X, Y, W*)
            let target = self.agg[x][y][self.class_dual[w]];
            glist.push(Group { unknowns, coeffs, target });
        }
        glist.sort_by_key(|g| (g.unknowns.len(), g.unknowns[0]));
        let mut group_of = vec![0usize; triples.len()];
        for (gi, g) in glist.iter().enumerate() {
            for &u in &g.unknowns {
                group_of[u] = gi;
            }
        }
        // per-unknown upper bounds from dimensions: M(a,b,c) d_c ≤ d_a d_b
        let bound: Vec<u32> = triples
            .iter()
            .map(|&[a, b, c]| {
                let m = [
                    self.dims_f[a] * self.dims_f[b] / self.dims_f[c],
                    self.dims_f[a] * self.dims_f[c] / self.dims_f[b],
                    self.dims_f[b] * self.dims_f[c] / self.dims_f[a],
                ];
                m.iter().fold(f64::INFINITY, |x, &y| x.min(y)).floor() as u32 + 1
            })
            .collect();

        // an entry N_ab^c is either fixed by the unit law or an unknown
        #[derive(Clone, Copy)]
        enum Ent {
            Fixed(u32),
            Var(usize),
        }
        let ent = |a: usize, b: usize, c: usize| -> Ent {
            let t = key([a, b, dual[c]]);
            if t[0] == 0 {
                Ent::Fixed(u32::from(t[1] == dual[t[2]]))
            } else {
                Ent::Var(idx[(t[0] * s + t[1]) * s + t[2]])
            }
        };
        let ready = |vars: &[usize]| vars.iter().map(|&u| group_of[u]).max();

        // dimension equations Σ_c N_ab^c d_c = d_a d_b, one per pair
        let mut dim_eqs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); glist.len()];
        let mut partial_eqs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); glist.len()];
        for a in 1..s {
            for b in a..s {
                let vars: Vec<usize> = (0..s).filter_map(|c| match ent(a, b, c) { Ent::Var(u) => Some(u), _ => None }).collect();
                if let Some(g) = ready(&vars) {
                    dim_eqs[g].push((a, b));
                }
                let touched: BTreeSet<usize> = vars.iter().map(|&u| group_of[u]).collect();
                for g in touched {
                    if Some(g) != ready(&vars) {
                        partial_eqs[g].push((a, b));
                    }
                }
            }
        }
        // associativity (a⊗b)⊗c = a⊗(b⊗c) at each f
        let mut assoc_eqs: Vec<Vec<[usize; 4]>> = vec![Vec::new(); glist.len()];
        for a in 1..s {
            for b in 1..s {
                for c in 1..s {
                    for f in 0..s {
                        let mut vars = Vec::new();
                        for e in 0..s {
                            for en in [ent(a, b, e), ent(e, c, f), ent(b, c, e), ent(a, e, f)] {
                                if let Ent::Var(u) = en {
                                    vars.push(u);
                                }
                            }
                        }
                        if let Some(g) = ready(&vars) {
                            assoc_eqs[g].push([a, b, c, f]);
                        }
                    }
                }
            }
        }

        let mut assign = vec![0u32; triples.len()];
        let val = |assign: &[u32], a: usize, b: usize, c: usize| -> u32 {
            match ent(a, b, c) {
                Ent::Fixed(v) => v,
                Ent::Var(u) => assign[u],
            }
        };
        let check = |assign: &[u32], g: usize| -> bool {
            // floating point here; finished rings are checked exactly
            for &(a, b) in &dim_eqs[g] {
                let acc: f64 = (0..s).map(|c| val(assign, a, b, c) as f64 * self.dims_f[c]).sum();
                if (acc - self.dims_f[a] * self.dims_f[b]).abs() > 1e-7 * (1.0 + acc.abs()) {
                    return false;
                }
            }
            // later groups are still zero, so partial sums only grow
            for &(a, b) in &partial_eqs[g] {
                let acc: f64 = (0..s).map(|c| val(assign, a, b, c) as f64 * self.dims_f[c]).sum();
                if acc > self.dims_f[a] * self.dims_f[b] + 1e-7 * (1.0 + acc) {
                    return false;
                }
            }
            for &[a, b, c, f] in &assoc_eqs[g] {
                let lhs: u32 = (0..s).map(|e| val(assign, a, b, e) * val(assign, e, c, f)).sum();
                let rhs: u32 = (0..s).map(|e| val(assign, b, c, e) * val(assign, a, e, f)).sum();
                if lhs != rhs {
                    return false;
                }
            }
            true
        };

        // enumerate all assignments of one group meeting its weighted sum
        fn fill(
            g: &Group,
            bound: &[u32],
            i: usize,
            left: u32,
            assign: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
        ) {
            if i == g.unknowns.len() {
                if left == 0 {
                    out.push(g.unknowns.iter().map(|&u| assign[u]).collect());
                }
                return;
            }
            let u = g.unknowns[i];
            let c = g.coeffs[i];
            let max = (left / c).min(bound[u]);
            for v in 0..=max {
                assign[u] = v;
                fill(g, bound, i + 1, left - v * c, assign, out);
            }
            assign[u] = 0;
        }

        let mut nodes = 0u64;
        let mut sols = Vec::new();
        let mut stack: Vec<(usize, Vec<Vec<u32>>, usize)> = Vec::new();
        let mut first = Vec::new();
        fill(&glist[0], &bound, 0, glist[0].target, &mut assign, &mut first);
        stack.push((0, first, 0));
        while let Some((g, options, next)) = stack.last_mut() {
            let g = *g;
            if *next == options.len() {
                for &u in &glist[g].unknowns {
                    assign[u] = 0;
                }
                stack.pop();
                continue;
            }
            let opt = options[*next].clone();
            *next += 1;
            nodes += 1;
            if nodes > budget {
                return Err(Error::BudgetExceeded(budget));
            }
            for (k, &u) in glist[g].unknowns.iter().enumerate() {
                assign[u] = opt[k];
            }
            if !check(&assign, g) {
                continue;
            }
            if g + 1 == glist.len() {
                let mut n = vec![0u32; s * s * s];
                for a in 0..s {
                    for b in 0..s {
                        for c in 0..s {
                            n[(a * s + b) * s + c] = val(&assign, a, b, c);
                        }
                    }
                }
                sols.push(Solution { dual: dual.to_vec(), n });
                continue;
            }
            let mut opts = Vec::new();
            let mut scratch = assign.clone();
            fill(&glist[g + 1], &bound, 0, glist[g + 1].target, &mut scratch, &mut opts);
            stack.push((g + 1, opts, 0));
        }
        Ok((sols, nodes))
    }

    /// All aggregates re-derived from a solution.
    fn reproduces_aggregates(&self, sol: &Solution) -> bool {
        let nc = self.classes_simples.len();
        (0..nc).all(|x| {
            (0..nc).all(|y| {
                (0..nc).all(|z| {
                    let mut tot = 0;
                    for &a in &self.classes_simples[x] {
                        for &b in &self.classes_simples[y] {
                            for &c in &self.classes_simples[z] {
                                tot += self.get_n(sol, a, b, c);
                            }
                        }
                    }
                    tot == self.agg[x][y][z]
                })
            })
        })
    }

    fn exact_dims(&self, sol: &Solution) -> bool {
        let s = self.s;
        (0..s).all(|a| {
            (0..s).all(|b| {
                let acc = (0..s).fold(CycloNum::zero(1), |acc, c| &acc + &self.dims[c].scale(self.get_n(sol, a, b, c) as i64));
                acc == &self.dims[a] * &self.dims[b]
            })
        })
    }

    /// Lexicographically least encoding over all branch swaps.
    fn canonical(&self, sol: &Solution) -> Vec<u32> {
        let split: Vec<usize> = (0..self.classes_simples.len()).filter(|&c| self.classes_simples[c].len() == 2).collect();
        let s = self.s;
        let mut best: Option<Vec<u32>> = None;
        for mask in 0..(1usize << split.len()) {
            let mut p: Vec<usize> = (0..s).collect();
            for (bit, &c) in split.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    let sm = &self.classes_simples[c];
                    p.swap(sm[0], sm[1]);
                }
            }
            let mut enc: Vec<u32> = (0..s).map(|a| p[sol.dual[p[a]]] as u32).collect();
            for a in 0..s {
                for b in 0..s {
                    for c in 0..s {
                        enc.push(self.get_n(sol, p[a], p[b], p[c]));
                    }
                }
            }
            if best.as_ref().is_none_or(|x| enc < *x) {
                best = Some(enc);
            }
        }
        best.unwrap()
    }
}

/// Everything learned from one condensation.
#[derive(Clone, Debug)]
pub struct CondensationReport {
    pub boson: usize,
    pub domain: Vec<usize>,
    pub classes: Vec<OrbitClass>,
    pub spectrum: Vec<CondensedSimple>,
    /// Nonzero `(X, Y, Z, Hom(F(X)⊗F(Y), F(Z)))` over class indices.
    pub aggregates: Vec<(usize, usize, usize, u32)>,
    /// All solutions, one per branch-swap class, canonically ordered.
    pub rings: Vec<FusionRing>,
    pub nodes: u64,
    /// `(Σ d²` over the domain, `Σ d²` over the condensed simples`)`.
    pub global_dims: (CycloNum, CycloNum),
    /// For each free class of nontrivial invertibles: `(class, S̃_xx, θ_x)`.
    pub pointed_residue: Vec<(usize, CycloNum, CycloNum)>,
}

impl CondensationReport {
    pub fn spectrum_names(&self) -> Vec<String> {
        self.spectrum.iter().map(|c| c.name.clone()).collect()
    }

    pub fn unique(&self) -> bool {
        self.rings.len() == 1
    }

    /// Condensed simples coming from class `c`.
    pub fn simples_of_class(&self, c: usize) -> Vec<usize> {
        (0..self.spectrum.len()).filter(|&i| self.spectrum[i].source == c).collect()
    }

    /// Index of the class containing a parent label.
    pub fn class_of_label(&self, x: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.members.contains(&x))
    }
}

/// Options for [`condense`].
#[derive(Clone, Copy, Debug)]
pub struct CondenseOptions {
    pub resolve: bool,
    pub budget: u64,
    pub exec: Exec,
}

impl Default for CondenseOptions {
    fn default() -> Self {
        CondenseOptions { resolve: true, budget: DEFAULT_BUDGET, exec: Exec::default() }
    }
}

/// Runs the whole analysis for boson `b` on `domain`. The parent fusion ring
/// may be passed in to avoid recomputing it.
pub fn condense(
    data: &ModularData,
    parent: Option<&FusionRing>,
    b: usize,
    domain: &[usize],
    opts: CondenseOptions,
) -> Result<CondensationReport> {
    if !find_bosons(data).contains(&b) {
        return Err(Error::Input(format!("{} is not a boson", data.label(b))));
    }
    let owned;
    let ring = match parent {
        Some(r) => r,
        None => {
            owned = verlinde_fusion_with(data, opts.exec)?;
            &owned
        }
    };
    let act: Vec<usize> = (0..data.rank()).map(|x| ring.product(b, x)[0].0).collect();
    let classes = orbits_from_action(data, &act, domain)?;
    if classes.first().map(|c| c.members.as_slice()) != Some(&[0, b][..]) {
        return Err(Error::Input("domain must start with the unit and contain the boson".into()));
    }
    let spectrum = condensed_spectrum(data, &classes);
    let nc = classes.len();
    let agg: Vec<Vec<Vec<u32>>> = (0..nc)
        .map(|x| (0..nc).map(|y| (0..nc).map(|z| aggregate_fusion(ring, b, &classes[x], &classes[y], &classes[z])).collect()).collect())
        .collect();
    let mut aggregates = Vec::new();
    for (x, ax) in agg.iter().enumerate() {
        for (y, axy) in ax.iter().enumerate() {
            for (z, &m) in axy.iter().enumerate() {
                if m > 0 {
                    aggregates.push((x, y, z, m));
                }
            }
        }
    }
    let class_of_label = |l: usize| classes.iter().position(|c| c.members.contains(&l));
    let class_dual: Vec<usize> = classes
        .iter()
        .map(|c| class_of_label(ring.dual(c.members[0])).ok_or_else(|| Error::DomainNotClosed("domain is not closed under duality".into())))
        .collect::<Result<_>>()?;

    let dims_parent = data.dims();
    let sq = |xs: &mut dyn Iterator<Item = CycloNum>| xs.fold(CycloNum::zero(1), |acc, d| &acc + &(&d * &d));
    let global_domain = sq(&mut domain.iter().map(|&x| dims_parent[x].clone())).minimize();
    let global_cond = sq(&mut spectrum.iter().map(|c| c.dim.clone())).minimize();

    let pointed_residue = classes
        .iter()
        .enumerate()
        .skip(1)
        .filter(|(_, c)| !c.split && dims_parent[c.members[0]].is_one())
        .map(|(ci, c)| {
            let x = c.members[0];
            (ci, data.s_tilde(x, x).minimize(), data.t()[x].minimize())
        })
        .collect();

    let mut report = CondensationReport {
        boson: b,
        domain: domain.to_vec(),
        classes,
        spectrum,
        aggregates,
        rings: Vec::new(),
        nodes: 0,
        global_dims: (global_domain, global_cond),
        pointed_residue,
    };
    if opts.resolve {
        let (rings, nodes) = resolve_splitting_with(&report, &agg, &class_dual, opts)?;
        report.rings = rings;
        report.nodes = nodes;
    }
    Ok(report)
}

/// Every fusion ring on the condensed simples consistent with the
/// aggregates, unit law, duality, dimensions and associativity; one per
/// branch-swap class.
pub fn resolve_splitting(report: &CondensationReport, parent: &FusionRing, budget: u64) -> Result<Vec<FusionRing>> {
    let nc = report.classes.len();
    let agg: Vec<Vec<Vec<u32>>> = (0..nc)
        .map(|x| {
            (0..nc)
                .map(|y| (0..nc).map(|z| aggregate_fusion(parent, report.boson, &report.classes[x], &report.classes[y], &report.classes[z])).collect())
                .collect()
        })
        .collect();
    let class_dual: Vec<usize> = report
        .classes
        .iter()
        .map(|c| report.class_of_label(parent.dual(c.members[0])).ok_or_else(|| Error::DomainNotClosed("domain is not closed under duality".into())))
        .collect::<Result<_>>()?;
    let opts = CondenseOptions { budget, ..Default::default() };
    Ok(resolve_splitting_with(report, &agg, &class_dual, opts)?.0)
}

fn resolve_splitting_with(
    report: &CondensationReport,
    agg: &[Vec<Vec<u32>>],
    class_dual: &[usize],
    opts: CondenseOptions,
) -> Result<(Vec<FusionRing>, u64)> {
    let sp = &report.spectrum;
    let s = sp.len();
    let nc = report.classes.len();
    let mut classes_simples = vec![Vec::new(); nc];
    for (i, c) in sp.iter().enumerate() {
        classes_simples[c.source].push(i);
    }
    let problem = Problem {
        s,
        class_of: sp.iter().map(|c| c.source).collect(),
        classes_simples,
        dims: sp.iter().map(|c| c.dim.clone()).collect(),
        dims_f: sp.iter().map(|c| c.dim.to_complex().0).collect(),
        agg: agg.to_vec(),
        class_dual: class_dual.to_vec(),
    };
    if s == 1 {
        let ring = FusionRing::new(vec![sp[0].name.clone()], vec![vec![vec![1]]])?;
        return Ok((vec![ring], 0));
    }
    let duals = problem.dual_choices();
    let results = opts.exec.map_slice(&duals, |d| problem.solve_for_dual(d, opts.budget));
    let mut nodes = 0;
    let mut by_key: Vec<(Vec<u32>, Solution)> = Vec::new();
    for r in results {
        let (sols, n) = r?;
        nodes += n;
        for sol in sols {
            if !problem.reproduces_aggregates(&sol) || !problem.exact_dims(&sol) {
                continue;
            }
            let k = problem.canonical(&sol);
            if !by_key.iter().any(|(x, _)| *x == k) {
                by_key.push((k, sol));
            }
        }
    }
    if by_key.is_empty() {
        return Err(Error::NoSolution(format!("no fusion ring on {} condensed simples matches the aggregates", s)));
    }
    by_key.sort_by(|a, b| a.0.cmp(&b.0));
    let names: Vec<String> = sp.iter().map(|c| c.name.clone()).collect();
    let rings = by_key
        .into_iter()
        .map(|(_, sol)| {
            let n = (0..s).map(|a| (0..s).map(|b| (0..s).map(|c| problem.get_n(&sol, a, b, c)).collect()).collect()).collect();
            FusionRing::new(names.clone(), n)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((rings, nodes))
}

/// Serializable summary of a report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CondensationJson {
    pub boson: String,
    pub domain: Vec<String>,
    pub classes: Vec<ClassJson>,
    pub spectrum: Vec<SimpleJson>,
    pub aggregates: Vec<AggregateJson>,
    pub rings: Vec<FusionRing>,
    pub unique: bool,
    pub nodes: u64,
    pub global_dim_domain: CycloNum,
    pub global_dim_condensed: CycloNum,
    pub pointed_residue: Vec<ResidueJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassJson {
    pub members: Vec<String>,
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimpleJson {
    pub name: String,
    pub source: Vec<String>,
    pub branch: u8,
    pub dim: CycloNum,
    pub dim_approx: f64,
    pub twist: CycloNum,
    pub twist_approx: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateJson {
    pub x: String,
    pub y: String,
    pub z: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidueJson {
    pub class: Vec<String>,
    pub s_tilde: CycloNum,
    pub twist: CycloNum,
}

impl CondensationReport {
    pub fn to_json(&self, data: &ModularData) -> CondensationJson {
        let names = |c: &OrbitClass| c.members.iter().map(|&m| data.label(m).to_string()).collect::<Vec<_>>();
        let cname = |c: usize| {
            let n = names(&self.classes[c]);
            if n.len() == 1 {
                n[0].clone()
            } else {
                format!("[{}]", n.join(","))
            }
        };
        CondensationJson {
            boson: data.label(self.boson).to_string(),
            domain: self.domain.iter().map(|&x| data.label(x).to_string()).collect(),
            classes: self.classes.iter().map(|c| ClassJson { members: names(c), split: c.split }).collect(),
            spectrum: self
                .spectrum
                .iter()
                .map(|c| {
                    let (tr, ti) = c.twist.to_complex();
                    SimpleJson {
                        name: c.name.clone(),
                        source: names(&self.classes[c.source]),
                        branch: c.branch,
                        dim: c.dim.clone(),
                        dim_approx: c.dim.to_complex().0,
                        twist: c.twist.clone(),
                        twist_approx: [tr, ti],
                    }
                })
                .collect(),
            aggregates: self
                .aggregates
                .iter()
                .map(|&(x, y, z, m)| AggregateJson { x: cname(x), y: cname(y), z: cname(z), multiplicity: m })
                .collect(),
            rings: self.rings.clone(),
            unique: self.unique(),
            nodes: self.nodes,
            global_dim_domain: self.global_dims.0.clone(),
            global_dim_condensed: self.global_dims.1.clone(),
            pointed_residue: self
                .pointed_residue
                .iter()
                .map(|(c, s, t)| ResidueJson { class: names(&self.classes[*c]), s_tilde: s.clone(), twist: t.clone() })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Toric code: labels 1, e, m, f with e, m bosons.
    fn toric_code() -> ModularData {
        let h = CycloNum::from_ratio(1, 1, 2);
        let sign = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]];
        let s = sign.iter().map(|row| row.iter().map(|&v| h.scale(v)).collect()).collect();
        let t = [1, 1, 1, -1].iter().map(|&v| CycloNum::from_int(1, v)).collect();
        let labels = ["1", "e", "m", "f"].iter().map(|s| s.to_string()).collect();
        ModularData::new(labels, s, t, "toric code".into()).unwrap()
    }

    #[test]
    fn toric_code_condensation_is_trivial() {
        let d = toric_code();
        assert_eq!(find_bosons(&d), vec![1, 2]);
        let dom = crate::modular::centralizer_labels(&d, 1).unwrap();
        assert_eq!(dom, vec![0, 1]);
        let rep = condense(&d, None, 1, &dom, CondenseOptions::default()).unwrap();
        assert_eq!(rep.spectrum.len(), 1);
        assert!(rep.unique());
        assert_eq!(rep.global_dims.0, CycloNum::from_int(1, 2));
    }

    #[test]
    fn free_orbits_force_the_ring() {
        let d = toric_code();
        let rep = condense(&d, None, 1, &[0, 1, 2, 3], CondenseOptions::default()).unwrap();
        // {1,e} and {m,f}: condensed Z2 ring, forced
        assert_eq!(rep.classes.len(), 2);
        assert!(rep.classes.iter().all(|c| !c.split));
        assert_eq!(rep.rings.len(), 1);
        assert_eq!(rep.rings[0].get(1, 1, 0), 1);
    }

    #[test]
    fn domain_closure_is_checked() {
        let d = toric_code();
        assert!(matches!(orbit_structure(&d, 1, &[0, 2]), Err(Error::DomainNotClosed(_))));
    }
}
