//! Candidate modular data built from a compatible pair of involutive metric
//! groups `(G, q₁, θ₁)`, `(Γ, q₂, θ₂)`.
//!
//! Labels are `K ⊔ K×{π} ⊔ G_* ⊔ Γ_*` with `K = G^{θ₁}`, identified with
//! `Γ^{θ₂}` through a form-preserving isomorphism.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::modular::ModularData;
use crate::par::Exec;
use crate::premetric::{
    premetric_iso, Automorphism, FinAbGroup, GroupElement, ImgSpec, InvolutiveMetricGroup, PremetricIso,
    QuadraticForm,
};
use crate::rings::match_modular_data;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LabelKind {
    K,
    KPi,
    GStar,
    GammaStar,
}

/// A label of the data: an element of `K` (in `G` coordinates), of `K`
/// with the flag `π`, of `G_*`, or of `Γ_*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GiLabel {
    pub kind: LabelKind,
    pub value: GroupElement,
}

impl fmt::Display for GiLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.value.0;
        let join = |c: &[u32]| c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self.kind {
            LabelKind::K => write!(f, "({})", join(c)),
            LabelKind::KPi => write!(f, "({},π)", join(c)),
            LabelKind::GStar => write!(f, "({})_g", join(c)),
            LabelKind::GammaStar => write!(f, "({})_γ", join(c)),
        }
    }
}

/// One representative of each orbit `{g, θg}` off the fixed subgroup, the
/// lexicographically smaller one.
pub fn canonical_transversal(img: &InvolutiveMetricGroup) -> Vec<GroupElement> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in img.group().elements() {
        let tg = img.theta().apply(&g);
        if tg == g || seen.contains(&g) {
            continue;
        }
        seen.insert(tg);
        seen.insert(g.clone());
        out.push(g);
    }
    out
}

/// Checks `G = K ⊔ G_* ⊔ θ(G_*)`.
pub fn check_transversal(img: &InvolutiveMetricGroup, t: &[GroupElement]) -> Result<()> {
    let g = img.group();
    let mut covered: HashSet<GroupElement> = img.fixed_subgroup().into_iter().collect();
    for x in t {
        g.check(x).map_err(|_| Error::Transversal(format!("{} is not in {}", x, g)))?;
        let tx = img.theta().apply(x);
        if tx == *x {
            return Err(Error::Transversal(format!("{} is θ-fixed", x)));
        }
        if !covered.insert(x.clone()) || !covered.insert(tx) {
            return Err(Error::Transversal(format!("orbit of {} is listed twice", x)));
        }
    }
    if covered.len() != g.order() {
        return Err(Error::Transversal(format!("covers {} of {} elements", covered.len(), g.order())));
    }
    Ok(())
}

/// The input pair, with optional isomorphism and transversal overrides.
#[derive(Clone, Debug)]
pub struct GiInput {
    pub g: InvolutiveMetricGroup,
    pub gamma: InvolutiveMetricGroup,
    pub iso: Option<PremetricIso>,
    pub g_star: Option<Vec<GroupElement>>,
    pub gamma_star: Option<Vec<GroupElement>>,
}

impl GiInput {
    pub fn new(g: InvolutiveMetricGroup, gamma: InvolutiveMetricGroup) -> GiInput {
        GiInput { g, gamma, iso: None, g_star: None, gamma_star: None }
    }

    pub fn with_transversals(mut self, g_star: Vec<GroupElement>, gamma_star: Vec<GroupElement>) -> GiInput {
        self.g_star = Some(g_star);
        self.gamma_star = Some(gamma_star);
        self
    }
}

/// JSON form of [`GiInput`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GiInputSpec {
    #[serde(rename = "G")]
    pub g: ImgSpec,
    #[serde(rename = "Gamma")]
    pub gamma: ImgSpec,
    /// Pairs `[k in G, φ(k) in Γ]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso: Option<Vec<[Vec<i64>; 2]>>,
    #[serde(default, rename = "G_star", skip_serializing_if = "Option::is_none")]
    pub g_star: Option<Vec<Vec<i64>>>,
    #[serde(default, rename = "Gamma_star", skip_serializing_if = "Option::is_none")]
    pub gamma_star: Option<Vec<Vec<i64>>>,
}

impl GiInputSpec {
    pub fn build(&self) -> Result<GiInput> {
        let g = self.g.build()?;
        let gamma = self.gamma.build()?;
        let elems = |grp: &FinAbGroup, v: &Option<Vec<Vec<i64>>>| -> Result<Option<Vec<GroupElement>>> {
            v.as_ref().map(|xs| xs.iter().map(|c| grp.element(c)).collect()).transpose()
        };
        let iso = match &self.iso {
            None => None,
            Some(pairs) => Some(PremetricIso::from_pairs(
                pairs
                    .iter()
                    .map(|[a, b]| Ok((g.group().element(a)?, gamma.group().element(b)?)))
                    .collect::<Result<Vec<_>>>()?,
            )),
        };
        let g_star = elems(g.group(), &self.g_star)?;
        let gamma_star = elems(gamma.group(), &self.gamma_star)?;
        Ok(GiInput { g, gamma, iso, g_star, gamma_star })
    }
}

/// Output of [`build_gi_data`]: the data plus its structured labels and the
/// isomorphism used to identify `K` inside `Γ`.
#[derive(Clone, Debug)]
pub struct GiData {
    pub data: ModularData,
    pub labels: Vec<GiLabel>,
    pub iso: PremetricIso,
    pub g_star: Vec<GroupElement>,
    pub gamma_star: Vec<GroupElement>,
    /// `𝒢(q₁)` and `𝒢(q₂)`.
    pub gauss: (CycloNum, CycloNum),
}

impl GiData {
    pub fn kind_of(&self, i: usize) -> LabelKind {
        self.labels[i].kind
    }
}

/// Builds `S` and `T` blockwise after checking both compatibility
/// conditions and the transversals.
pub fn build_gi_data(input: &GiInput) -> Result<GiData> {
    let (g, gm) = (&input.g, &input.gamma);
    let (k1, k2) = (g.fixed_premetric(), gm.fixed_premetric());
    let iso = match &input.iso {
        Some(iso) => {
            if !iso.verify(&k1, &k2) {
                return Err(Error::Condition1("the supplied map is not a form-preserving isomorphism G^θ₁ -> Γ^θ₂".into()));
            }
            iso.clone()
        }
        None => premetric_iso(&k1, &k2)
            .ok_or_else(|| Error::Condition1("(G^θ₁, q₁) and (Γ^θ₂, q₂) are not isomorphic".into()))?,
    };
    let (gs1, gs2) = (g.form().gauss_sum(), gm.form().gauss_sum());
    if gs1 != -&gs2 {
        return Err(Error::Condition2(format!("𝒢(q₁) = {} but 𝒢(q₂) = {}", gs1.minimize(), gs2.minimize())));
    }
    let g_star = match &input.g_star {
        Some(t) => {
            check_transversal(g, t)?;
            t.clone()
        }
        None => canonical_transversal(g),
    };
    let gamma_star = match &input.gamma_star {
        Some(t) => {
            check_transversal(gm, t)?;
            t.clone()
        }
        None => canonical_transversal(gm),
    };

    let kset = k1.elements().to_vec();
    let mut labels = Vec::new();
    labels.extend(kset.iter().map(|k| GiLabel { kind: LabelKind::K, value: k.clone() }));
    labels.extend(kset.iter().map(|k| GiLabel { kind: LabelKind::KPi, value: k.clone() }));
    labels.extend(g_star.iter().map(|x| GiLabel { kind: LabelKind::GStar, value: x.clone() }));
    labels.extend(gamma_star.iter().map(|x| GiLabel { kind: LabelKind::GammaStar, value: x.clone() }));

    let a = CycloNum::sqrt_int(g.group().order() as u64).inv()?;
    let b = CycloNum::sqrt_int(gm.group().order() as u64).inv()?;
    let half = CycloNum::from_ratio(1, 1, 2);
    let amb = &(&a - &b) * &half;
    let apb = &(&a + &b) * &half;
    let nb = -&b;
    let (q1, q2) = (g.form(), gm.form());
    let b1 = |x: &GroupElement, y: &GroupElement| q1.bichar_phase(x, y).to_cyclo();
    let b2 = |x: &GroupElement, y: &GroupElement| q2.bichar_phase(x, y).to_cyclo();
    let phi = |l: &GiLabel| iso.apply(&l.value).expect("K label").clone();

    let entry = |x: &GiLabel, y: &GiLabel| -> CycloNum {
        use LabelKind::*;
        match (x.kind, y.kind) {
            (K, K) | (KPi, KPi) => &amb * &b1(&x.value, &y.value),
            (K, KPi) | (KPi, K) => &apb * &b1(&x.value, &y.value),
            (K | KPi, GStar) | (GStar, K | KPi) => &a * &b1(&x.value, &y.value),
            (K, GammaStar) => &b * &b2(&phi(x), &y.value),
            (GammaStar, K) => &b * &b2(&x.value, &phi(y)),
            (KPi, GammaStar) => &nb * &b2(&phi(x), &y.value),
            (GammaStar, KPi) => &nb * &b2(&x.value, &phi(y)),
            (GStar, GStar) => {
                let tx = g.theta().apply(&x.value);
                &a * &(&b1(&x.value, &y.value) + &b1(&tx, &y.value))
            }
            (GammaStar, GammaStar) => {
                let tx = gm.theta().apply(&x.value);
                &nb * &(&b2(&x.value, &y.value) + &b2(&tx, &y.value))
            }
            (GStar, GammaStar) | (GammaStar, GStar) => CycloNum::zero(1),
        }
    };
    let s: Vec<Vec<CycloNum>> = labels.iter().map(|x| labels.iter().map(|y| entry(x, y)).collect()).collect();
    let t: Vec<CycloNum> = labels
        .iter()
        .map(|l| match l.kind {
            LabelKind::K | LabelKind::KPi | LabelKind::GStar => q1.value_cyclo(&l.value),
            LabelKind::GammaStar => q2.value_cyclo(&l.value),
        })
        .collect();

    let iso_desc: Vec<String> = iso.pairs().map(|(x, y)| format!("{}↦{}", x, y)).collect();
    let provenance = format!(
        "GI data: G = {} (q₁ mod {}), Γ = {} (q₂ mod {}); K identified via {}; T on Γ_* uses q₂(γ)",
        g.group(),
        q1.modulus(),
        gm.group(),
        q2.modulus(),
        iso_desc.join(" ")
    );
    let names = labels.iter().map(ToString::to_string).collect();
    let data = ModularData::new(names, s, t, provenance)?;
    Ok(GiData { data, labels, iso, g_star, gamma_star, gauss: (gs1.minimize(), gs2.minimize()) })
}

/// `|K| + (|G| + |Γ|)/2`.
pub fn expected_rank(input: &GiInput) -> usize {
    input.g.fixed_subgroup().len() + (input.g.group().order() + input.gamma.group().order()) / 2
}

/// The two small families `Γ = G × Z₃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmallFamily {
    /// `G = Z₂×Z₂`, `θ₁` the swap.
    Z2z2,
    /// `G = Z₄`, `θ₁ = -1`.
    Z4,
}

impl SmallFamily {
    pub fn groups(self) -> Result<((FinAbGroup, Automorphism), (FinAbGroup, Automorphism))> {
        match self {
            SmallFamily::Z2z2 => {
                let g = FinAbGroup::new(vec![2, 2])?;
                let gm = FinAbGroup::new(vec![2, 2, 3])?;
                let t1 = Automorphism::new(g.clone(), vec![vec![0, 1], vec![1, 0]])?;
                let t2 = Automorphism::new(gm.clone(), vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, -1]])?;
                Ok(((g, t1), (gm, t2)))
            }
            SmallFamily::Z4 => {
                let g = FinAbGroup::new(vec![4])?;
                let gm = FinAbGroup::new(vec![4, 3])?;
                let t1 = Automorphism::new(g.clone(), vec![vec![-1]])?;
                let t2 = Automorphism::new(gm.clone(), vec![vec![-1, 0], vec![0, -1]])?;
                Ok(((g, t1), (gm, t2)))
            }
        }
    }
}

fn invariant_forms(group: &FinAbGroup, theta: &Automorphism) -> Result<Vec<InvolutiveMetricGroup>> {
    Ok(QuadraticForm::enumerate_all(group)
        .into_iter()
        .filter(|q| q.nondegenerate() && q.is_invariant_under(theta))
        .filter_map(|q| InvolutiveMetricGroup::new(q, theta.clone()).ok())
        .collect())
}

/// Every compatible pair of invariant nondegenerate forms on the family,
/// built with canonical transversals and deduplicated up to relabeling.
pub fn enumerate_small(family: SmallFamily) -> Result<Vec<GiData>> {
    enumerate_small_with(family, Exec::default())
}

pub fn enumerate_small_with(family: SmallFamily, exec: Exec) -> Result<Vec<GiData>> {
    let ((g, t1), (gm, t2)) = family.groups()?;
    let q1s = invariant_forms(&g, &t1)?;
    let q2s = invariant_forms(&gm, &t2)?;
    let pairs: Vec<(usize, usize)> = (0..q1s.len()).flat_map(|i| (0..q2s.len()).map(move |j| (i, j))).collect();
    let built = exec.map_slice(&pairs, |&(i, j)| build_gi_data(&GiInput::new(q1s[i].clone(), q2s[j].clone())));
    let mut out: Vec<GiData> = Vec::new();
    for b in built {
        match b {
            Ok(d) => {
                if !out.iter().any(|o| match_modular_data(&o.data, &d.data).is_some()) {
                    out.push(d);
                }
            }
            Err(Error::Condition1(_) | Error::Condition2(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}
