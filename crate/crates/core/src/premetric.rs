//! Finite abelian groups, quadratic forms into roots of unity, and
//! involutive metric groups.
//!
//! All routines are exhaustive over the group; orders are capped at
//! [`MAX_ORDER`].

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclo::{CycloNum, Phase};
use crate::{Error, Result};

pub const MAX_ORDER: usize = 256;

/// An element of `Z_{n_1} × … × Z_{n_r}`, coordinates reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn coords(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// `Z_{n_1} × … × Z_{n_r}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinAbGroup {
    moduli: Vec<u32>,
}

impl FinAbGroup {
    pub fn new(moduli: Vec<u32>) -> Result<FinAbGroup> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::Group(format!("moduli must be positive: {:?}", moduli)));
        }
        let order: usize = moduli.iter().map(|&n| n as usize).product();
        if order > MAX_ORDER {
            return Err(Error::Group(format!("order {} exceeds the cap of {}", order, MAX_ORDER)));
        }
        Ok(FinAbGroup { moduli })
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&n| n as usize).product()
    }

    /// Reduces arbitrary integer coordinates into an element.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::ElementMismatch { element: coords.to_vec(), moduli: self.moduli.clone() });
        }
        Ok(GroupElement(
            coords.iter().zip(&self.moduli).map(|(&c, &n)| c.rem_euclid(n as i64) as u32).collect(),
        ))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.moduli).all(|(c, n)| c < n)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::ElementMismatch {
                element: g.0.iter().map(|&c| c as i64).collect(),
                moduli: self.moduli.clone(),
            })
        }
    }

    /// Position in the lexicographic enumeration (first coordinate most significant).
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.0.iter().zip(&self.moduli).fold(0, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        for (i, &n) in self.moduli.iter().enumerate().rev() {
            coords[i] = (idx % n as usize) as u32;
            idx /= n as usize;
        }
        GroupElement(coords)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&b.0).zip(&self.moduli).map(|((x, y), n)| (x + y) % n).collect())
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(a.0.iter().zip(&self.moduli).map(|(x, n)| (n - x) % n).collect())
    }

    pub fn scale(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.moduli)
                .map(|(&x, &n)| (x as i64 * k).rem_euclid(n as i64) as u32)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.0.iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| (n / (x.gcd(&n))) as u64)
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn direct_product(&self, o: &FinAbGroup) -> Result<FinAbGroup> {
        let mut m = self.moduli.clone();
        m.extend_from_slice(&o.moduli);
        FinAbGroup::new(m)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|n| format!("Z{}", n)).collect();
        write!(f, "{}", parts.join("xZ").replace("xZZ", "xZ"))
    }
}

/// A quadratic form `q: G -> U(1)` with values `ζ_M^{e(x)}`, stored as a
/// table of exponents indexed by element position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    group: FinAbGroup,
    modulus: u32,
    table: Vec<u32>,
}

impl QuadraticForm {
    /// `q(x) = ζ_M^{xᵀ A x}` for a symmetric integer matrix `A`.
    pub fn from_matrix(group: FinAbGroup, modulus: u32, matrix: &[Vec<i64>]) -> Result<QuadraticForm> {
        let r = group.rank();
        if modulus == 0 {
            return Err(Error::Form("modulus must be positive".into()));
        }
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::Form(format!("matrix must be {}x{}", r, r)));
        }
        for i in 0..r {
            for j in 0..r {
                if matrix[i][j] != matrix[j][i] {
                    return Err(Error::Form("matrix must be symmetric".into()));
                }
            }
        }
        let eval = |x: &[i64]| -> i64 {
            let mut s = 0i64;
            for i in 0..r {
                for j in 0..r {
                    s += x[i] * matrix[i][j] * x[j];
                }
            }
            s.rem_euclid(modulus as i64)
        };
        let mut table = Vec::with_capacity(group.order());
        for g in group.elements() {
            let x: Vec<i64> = g.0.iter().map(|&c| c as i64).collect();
            let e = eval(&x);
            // the value must not depend on the chosen representative
            for (i, &n) in group.moduli().iter().enumerate() {
                let mut y = x.clone();
                y[i] += n as i64;
                if eval(&y) != e {
                    return Err(Error::Form(format!(
                        "ζ_{}^(xᵀAx) is not well defined on {} (coordinate {})",
                        modulus, group, i
                    )));
                }
            }
            table.push(e as u32);
        }
        QuadraticForm::from_table(group, modulus, table)
    }

    /// `q(x) = ζ_M^{table[index(x)]}`.
    pub fn from_table(group: FinAbGroup, modulus: u32, table: Vec<u32>) -> Result<QuadraticForm> {
        if table.len() != group.order() {
            return Err(Error::Form(format!("table has {} entries, group has {}", table.len(), group.order())));
        }
        let table = table.into_iter().map(|e| e % modulus).collect();
        let q = QuadraticForm { group, modulus, table };
        q.validate()?;
        Ok(q)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        let els = g.elements();
        if self.table[0] != 0 {
            return Err(Error::Form("q(0) must be 1".into()));
        }
        for x in &els {
            if self.value(&g.neg(x)) != self.value(x) {
                return Err(Error::Form(format!("q(-x) != q(x) at x = {}", x)));
            }
        }
        // bi-additivity of B in the first slot (B is symmetric by construction)
        for x in &els {
            for y in &els {
                let xy = g.add(x, y);
                for h in &els {
                    let lhs = self.bichar_phase(&xy, h);
                    let rhs = self.bichar_phase(x, h) + self.bichar_phase(y, h);
                    if lhs != rhs {
                        return Err(Error::Form(format!("B is not bi-additive at ({}, {}; {})", x, y, h)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn value(&self, g: &GroupElement) -> Phase {
        Phase::new(self.table[self.group.index_of(g)] as i64, self.modulus as u64)
    }

    pub fn value_cyclo(&self, g: &GroupElement) -> CycloNum {
        CycloNum::root_of_unity(self.modulus, self.table[self.group.index_of(g)] as i64)
    }

    /// `B(g,h) = q(g)q(h)/q(g+h)` as a phase.
    pub fn bichar_phase(&self, g: &GroupElement, h: &GroupElement) -> Phase {
        let s = self.group.add(g, h);
        let idx = |x: &GroupElement| self.table[self.group.index_of(x)] as i64;
        Phase::new(idx(g) + idx(h) - idx(&s), self.modulus as u64)
    }

    pub fn bicharacter(&self, g: &GroupElement, h: &GroupElement) -> Result<CycloNum> {
        self.group.check(g)?;
        self.group.check(h)?;
        Ok(self.bichar_phase(g, h).to_cyclo())
    }

    /// Sum of the form values, before normalization.
    pub fn raw_gauss_sum(&self) -> CycloNum {
        let mut counts = vec![0i64; self.modulus as usize];
        for &e in &self.table {
            counts[e as usize] += 1;
        }
        let mut acc = CycloNum::zero(self.modulus);
        for (e, &c) in counts.iter().enumerate() {
            if c != 0 {
                acc = &acc + &CycloNum::root_of_unity(self.modulus, e as i64).scale(c);
            }
        }
        acc
    }

    /// `(1/√|G|) Σ_g q(g)`.
    pub fn gauss_sum(&self) -> CycloNum {
        let root = CycloNum::sqrt_int(self.group.order() as u64);
        self.raw_gauss_sum().checked_div(&root).expect("√|G| is nonzero")
    }

    /// True iff `x -> B(x, ·)` is injective.
    pub fn nondegenerate(&self) -> bool {
        let els = self.group.elements();
        els.iter().skip(1).all(|x| els.iter().any(|h| !self.bichar_phase(x, h).is_trivial()))
    }

    pub fn is_invariant_under(&self, theta: &Automorphism) -> bool {
        self.group.elements().iter().all(|x| self.value(&theta.apply(x)) == self.value(x))
    }

    /// The orthogonal sum on `G × H`.
    pub fn direct_sum(&self, o: &QuadraticForm) -> Result<QuadraticForm> {
        let group = self.group.direct_product(&o.group)?;
        let modulus = self.modulus.lcm(&o.modulus);
        let (fa, fb) = (modulus / self.modulus, modulus / o.modulus);
        let mut table = Vec::with_capacity(group.order());
        for a in &self.table {
            for b in &o.table {
                table.push(a * fa + b * fb);
            }
        }
        QuadraticForm::from_table(group, modulus, table)
    }

    /// Every quadratic form on `group`, deduplicated by value table.
    pub fn enumerate_all(group: &FinAbGroup) -> Vec<QuadraticForm> {
        let n = group.moduli();
        let r = n.len();
        let m = 2 * n.iter().fold(1u32, |a, &b| a.lcm(&b));
        let allowed = |ok: &dyn Fn(u32) -> bool| -> Vec<u32> { (0..m).filter(|&c| ok(c)).collect() };
        // coefficients of x_i^2 and x_i x_j (i < j) with E well defined mod M
        let mut slots: Vec<(usize, usize, Vec<u32>)> = Vec::new();
        for i in 0..r {
            let ni = n[i];
            slots.push((i, i, allowed(&|c| (2 * c * ni).is_multiple_of(m) && (c * ni * ni).is_multiple_of(m))));
        }
        for i in 0..r {
            for j in i + 1..r {
                let (ni, nj) = (n[i], n[j]);
                slots.push((i, j, allowed(&|c| (c * ni) % m == 0 && (c * nj) % m == 0)));
            }
        }
        let els = group.elements();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut choice = vec![0usize; slots.len()];
        loop {
            let table: Vec<u32> = els
                .iter()
                .map(|g| {
                    let mut e = 0u64;
                    for (s, &(i, j, ref vals)) in slots.iter().enumerate() {
                        e += vals[choice[s]] as u64 * g.0[i] as u64 * g.0[j] as u64;
                    }
                    (e % m as u64) as u32
                })
                .collect();
            if seen.insert(table.clone()) {
                if let Ok(q) = QuadraticForm::from_table(group.clone(), m, table) {
                    out.push(q);
                }
            }
            // odometer
            let mut s = 0;
            loop {
                if s == slots.len() {
                    return out;
                }
                choice[s] += 1;
                if choice[s] < slots[s].2.len() {
                    break;
                }
                choice[s] = 0;
                s += 1;
            }
        }
    }
}

/// A group endomorphism given by an integer matrix: `θ(x)_i = Σ_j θ_ij x_j mod n_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    group: FinAbGroup,
    matrix: Vec<Vec<i64>>,
}

impl Automorphism {
    pub fn new(group: FinAbGroup, matrix: Vec<Vec<i64>>) -> Result<Automorphism> {
        let r = group.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::Automorphism(format!("matrix must be {}x{}", r, r)));
        }
        let n = group.moduli();
        for i in 0..r {
            for j in 0..r {
                if (matrix[i][j] * n[j] as i64).rem_euclid(n[i] as i64) != 0 {
                    return Err(Error::Automorphism(format!(
                        "entry ({},{}) does not define a homomorphism Z{} -> Z{}",
                        i, j, n[j], n[i]
                    )));
                }
            }
        }
        let theta = Automorphism { group, matrix };
        let images: HashSet<GroupElement> = theta.group.elements().iter().map(|g| theta.apply(g)).collect();
        if images.len() != theta.group.order() {
            return Err(Error::Automorphism("map is not bijective".into()));
        }
        Ok(theta)
    }

    pub fn identity(group: FinAbGroup) -> Automorphism {
        let r = group.rank();
        let matrix = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        Automorphism { group, matrix }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn apply(&self, g: &GroupElement) -> GroupElement {
        let n = self.group.moduli();
        GroupElement(
            self.matrix
                .iter()
                .zip(n)
                .map(|(row, &ni)| {
                    let s: i64 = row.iter().zip(&g.0).map(|(a, &x)| a * x as i64).sum();
                    s.rem_euclid(ni as i64) as u32
                })
                .collect(),
        )
    }

    pub fn is_involution(&self) -> bool {
        self.group.elements().iter().all(|g| self.apply(&self.apply(g)) == *g)
    }
}

/// `(G, q, θ)`: a metric group with a form-preserving involutive automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutiveMetricGroup {
    form: QuadraticForm,
    theta: Automorphism,
}

impl InvolutiveMetricGroup {
    pub fn new(form: QuadraticForm, theta: Automorphism) -> Result<InvolutiveMetricGroup> {
        if theta.group != form.group {
            return Err(Error::Automorphism("θ and q live on different groups".into()));
        }
        if !theta.is_involution() {
            return Err(Error::Automorphism("θ∘θ is not the identity".into()));
        }
        if !form.is_invariant_under(&theta) {
            return Err(Error::Automorphism("θ does not preserve q".into()));
        }
        if !form.nondegenerate() {
            return Err(Error::Form("bicharacter is degenerate".into()));
        }
        Ok(InvolutiveMetricGroup { form, theta })
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.form.group
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn theta(&self) -> &Automorphism {
        &self.theta
    }

    /// `G^θ`, in lexicographic order.
    pub fn fixed_subgroup(&self) -> Vec<GroupElement> {
        self.group().elements().into_iter().filter(|g| self.theta.apply(g) == *g).collect()
    }

    /// The pre-metric group `(G^θ, q|)`.
    pub fn fixed_premetric(&self) -> PreMetricSub {
        PreMetricSub { form: self.form.clone(), elements: self.fixed_subgroup() }
    }
}

/// A subgroup of a group carrying a quadratic form, with the restricted form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreMetricSub {
    form: QuadraticForm,
    elements: Vec<GroupElement>,
}

impl PreMetricSub {
    pub fn new(form: QuadraticForm, mut elements: Vec<GroupElement>) -> Result<PreMetricSub> {
        let g = form.group().clone();
        for e in &elements {
            g.check(e)?;
        }
        elements.sort();
        elements.dedup();
        let set: HashSet<&GroupElement> = elements.iter().collect();
        if !set.contains(&g.zero()) || elements.iter().any(|a| elements.iter().any(|b| !set.contains(&g.add(a, b)))) {
            return Err(Error::Group("element list is not a subgroup".into()));
        }
        Ok(PreMetricSub { form, elements })
    }

    pub fn whole(form: QuadraticForm) -> PreMetricSub {
        let elements = form.group().elements();
        PreMetricSub { form, elements }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    fn group(&self) -> &FinAbGroup {
        self.form.group()
    }

    /// Greedy generating set in element order.
    fn generators(&self) -> Vec<GroupElement> {
        let g = self.group();
        let mut span: HashSet<GroupElement> = [g.zero()].into_iter().collect();
        let mut gens = Vec::new();
        for x in &self.elements {
            if span.contains(x) {
                continue;
            }
            let ord = g.element_order(x) as i64;
            let mut next = HashSet::new();
            for s in &span {
                for k in 0..ord {
                    next.insert(g.add(s, &g.scale(x, k)));
                }
            }
            span = next;
            gens.push(x.clone());
        }
        gens
    }
}

/// A form-preserving group isomorphism between two pre-metric groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PremetricIso {
    map: BTreeMap<GroupElement, GroupElement>,
}

impl PremetricIso {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (GroupElement, GroupElement)>) -> PremetricIso {
        PremetricIso { map: pairs.into_iter().collect() }
    }

    pub fn apply(&self, g: &GroupElement) -> Option<&GroupElement> {
        self.map.get(g)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&GroupElement, &GroupElement)> {
        self.map.iter()
    }

    pub fn inverse(&self) -> PremetricIso {
        PremetricIso { map: self.map.iter().map(|(a, b)| (b.clone(), a.clone())).collect() }
    }

    /// Checks that this is a form-preserving isomorphism `a -> b`.
    pub fn verify(&self, a: &PreMetricSub, b: &PreMetricSub) -> bool {
        if self.map.len() != a.elements.len() || a.elements.len() != b.elements.len() {
            return false;
        }
        let targets: HashSet<&GroupElement> = self.map.values().collect();
        if targets.len() != b.elements.len() || !b.elements.iter().all(|y| targets.contains(y)) {
            return false;
        }
        let (ga, gb) = (a.group(), b.group());
        a.elements.iter().all(|x| {
            let Some(fx) = self.map.get(x) else { return false };
            if a.form.value(x) != b.form.value(fx) {
                return false;
            }
            a.elements.iter().all(|y| {
                let s = ga.add(x, y);
                self.map.get(&s).is_some_and(|fs| *fs == gb.add(fx, &self.map[y]))
            })
        })
    }
}

/// Finds a form-preserving isomorphism `a -> b` by exhaustive search over
/// generator images, or `None`.
pub fn premetric_iso(a: &PreMetricSub, b: &PreMetricSub) -> Option<PremetricIso> {
    if a.elements.len() != b.elements.len() || a.elements.len() > 64 {
        return None;
    }
    let gens = a.generators();
    let (ga, gb) = (a.group(), b.group());
    let candidates: Vec<Vec<&GroupElement>> = gens
        .iter()
        .map(|x| {
            b.elements
                .iter()
                .filter(|y| gb.element_order(y) == ga.element_order(x) && b.form.value(y) == a.form.value(x))
                .collect()
        })
        .collect();

    fn extend(
        a: &PreMetricSub,
        b: &PreMetricSub,
        gens: &[GroupElement],
        images: &[&GroupElement],
    ) -> Option<PremetricIso> {
        let (ga, gb) = (a.group(), b.group());
        let mut map: HashMap<GroupElement, GroupElement> = HashMap::new();
        map.insert(ga.zero(), gb.zero());
        for (x, &y) in gens.iter().zip(images) {
            let ord = ga.element_order(x) as i64;
            let snapshot: Vec<(GroupElement, GroupElement)> = map.iter().map(|(s, t)| (s.clone(), t.clone())).collect();
            for (s, t) in snapshot {
                for k in 1..ord {
                    let src = ga.add(&s, &ga.scale(x, k));
                    let dst = gb.add(&t, &gb.scale(y, k));
                    match map.get(&src) {
                        Some(prev) if *prev != dst => return None,
                        Some(_) => {}
                        None => {
                            map.insert(src, dst);
                        }
                    }
                }
            }
        }
        let iso = PremetricIso::from_pairs(map);
        iso.verify(a, b).then_some(iso)
    }

    fn search<'a>(
        a: &PreMetricSub,
        b: &PreMetricSub,
        gens: &[GroupElement],
        candidates: &[Vec<&'a GroupElement>],
        chosen: &mut Vec<&'a GroupElement>,
    ) -> Option<PremetricIso> {
        if chosen.len() == gens.len() {
            return extend(a, b, gens, chosen);
        }
        for &y in &candidates[chosen.len()] {
            chosen.push(y);
            if let Some(iso) = search(a, b, gens, candidates, chosen) {
                return Some(iso);
            }
            chosen.pop();
        }
        None
    }

    search(a, b, &gens, &candidates, &mut Vec::new())
}

/// JSON description of a quadratic form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormSpec {
    #[serde(rename = "M")]
    pub modulus: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i64>>>,
    /// Exponents keyed by comma-separated coordinates, e.g. `"1,0"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<BTreeMap<String, u32>>,
}

/// JSON description of an involutive metric group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImgSpec {
    pub moduli: Vec<u32>,
    pub form: FormSpec,
    pub theta: Vec<Vec<i64>>,
}

impl ImgSpec {
    pub fn build(&self) -> Result<InvolutiveMetricGroup> {
        let group = FinAbGroup::new(self.moduli.clone())?;
        let form = match (&self.form.matrix, &self.form.table) {
            (Some(m), None) => QuadraticForm::from_matrix(group.clone(), self.form.modulus, m)?,
            (None, Some(t)) => {
                let mut table = vec![None; group.order()];
                for (key, &e) in t {
                    let coords: Vec<i64> = key
                        .split(',')
                        .map(|s| s.trim().parse::<i64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|_| Error::Input(format!("bad table key {:?}", key)))?;
                    let g = group.element(&coords)?;
                    table[group.index_of(&g)] = Some(e);
                }
                let table = table
                    .into_iter()
                    .enumerate()
                    .map(|(i, e)| e.ok_or_else(|| Error::Input(format!("table misses {}", group.element_at(i)))))
                    .collect::<Result<Vec<_>>>()?;
                QuadraticForm::from_table(group.clone(), self.form.modulus, table)?
            }
            _ => return Err(Error::Input("form needs exactly one of \"matrix\" or \"table\"".into())),
        };
        let theta = Automorphism::new(group, self.theta.clone())?;
        InvolutiveMetricGroup::new(form, theta)
    }

    /// Table-form description of an existing group.
    pub fn from_img(img: &InvolutiveMetricGroup) -> ImgSpec {
        let g = img.group();
        let table = g
            .elements()
            .iter()
            .zip(img.form().table())
            .map(|(x, &e)| {
                let key: Vec<String> = x.0.iter().map(|c| c.to_string()).collect();
                (key.join(","), e)
            })
            .collect();
        ImgSpec {
            moduli: g.moduli().to_vec(),
            form: FormSpec { modulus: img.form().modulus(), matrix: None, table: Some(table) },
            theta: img.theta().matrix().to_vec(),
        }
    }
}
