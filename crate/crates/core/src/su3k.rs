//! `SU(3)_k` fusion rules, dimensions and twists, computed without any
//! reference to metric groups: Littlewood–Richardson products folded into
//! the level-`k` alcove (Kac–Walton).

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cyclo::CycloNum;
use crate::rings::FusionRing;
use crate::{Error, Result};

/// Dynkin labels `[λ₁, λ₂]` of an integrable weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LevelWeight(pub u32, pub u32);

impl fmt::Display for LevelWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

impl LevelWeight {
    /// `λ₁ + 2λ₂ mod 3`.
    pub fn triality(self) -> u32 {
        (self.0 + 2 * self.1) % 3
    }

    /// Two-row partition `(λ₁+λ₂, λ₂)`.
    fn partition(self) -> [u32; 2] {
        [self.0 + self.1, self.1]
    }
}

/// Integrable weights at level `k`, ordered by `(λ₁+λ₂, λ₂)`.
pub fn su3_simples(k: u32) -> Vec<LevelWeight> {
    let mut out = Vec::new();
    for total in 0..=k {
        for l2 in 0..=total {
            out.push(LevelWeight(total - l2, l2));
        }
    }
    out
}

/// Littlewood–Richardson decomposition of `λ ⊗ μ` for `SU(3)`, as Dynkin
/// labels with multiplicity.
pub fn lr_product(l: LevelWeight, m: LevelWeight) -> Vec<(LevelWeight, u32)> {
    let lam = l.partition();
    let mu = m.partition();
    let mut acc: std::collections::BTreeMap<LevelWeight, u32> = Default::default();
    // shape rows 0..4; fill μ₁ ones as a horizontal strip, then μ₂ twos
    let base = [lam[0], lam[1], 0, 0];
    for ones in strips(&base, mu[0], 0) {
        let s1 = add(&base, &ones);
        // twos may not sit in the first row
        for twos in strips(&s1, mu[1], 1) {
            // reading rows right to left, top to bottom: twos of row r
            // are read before its ones
            let mut ok = true;
            let mut n1 = 0;
            let mut n2 = 0;
            for r in 0..4 {
                n2 += twos[r];
                if n2 > n1 {
                    ok = false;
                    break;
                }
                n1 += ones[r];
            }
            if !ok {
                continue;
            }
            let nu = add(&s1, &twos);
            if nu[3] > 0 {
                continue;
            }
            *acc.entry(LevelWeight(nu[0] - nu[1], nu[1] - nu[2])).or_default() += 1;
        }
    }
    acc.into_iter().collect()
}

fn add(a: &[u32; 4], b: &[u32; 4]) -> [u32; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

/// All ways to add a horizontal strip of `n` boxes to `shape` using rows
/// `from..4`.
fn strips(shape: &[u32; 4], n: u32, from: usize) -> Vec<[u32; 4]> {
    fn go(shape: &[u32; 4], from: usize, r: usize, left: u32, cur: &mut [u32; 4], out: &mut Vec<[u32; 4]>) {
        if r == 4 {
            if left == 0 {
                out.push(*cur);
            }
            return;
        }
        let cap = if r < from {
            0
        } else if r == 0 {
            left
        } else {
            (shape[r - 1] - shape[r]).min(left)
        };
        for a in 0..=cap {
            cur[r] = a;
            go(shape, from, r + 1, left - a, cur, out);
        }
        cur[r] = 0;
    }
    let mut out = Vec::new();
    go(shape, from, 0, n, &mut [0; 4], &mut out);
    out
}

/// Folds a weight into the level-`k` alcove. Returns the folded weight and
/// the sign of the affine Weyl element, or `None` on a wall.
pub fn kac_walton_fold(w: LevelWeight, k: u32) -> Option<(LevelWeight, i32)> {
    let h = (k + 3) as i64;
    let (mut x, mut y) = (w.0 as i64 + 1, w.1 as i64 + 1);
    let mut sign = 1;
    loop {
        if x == 0 || y == 0 || x + y == h {
            return None;
        }
        if x < 0 {
            (x, y) = (-x, x + y);
        } else if y < 0 {
            (x, y) = (x + y, -y);
        } else if x + y > h {
            (x, y) = (h - y, h - x);
        } else {
            return Some((LevelWeight((x - 1) as u32, (y - 1) as u32), sign));
        }
        sign = -sign;
    }
}

/// The level-`k` fusion ring on [`su3_simples`].
pub fn su3_fusion(k: u32) -> Result<FusionRing> {
    let simples = su3_simples(k);
    let r = simples.len();
    let index = |w: LevelWeight| simples.iter().position(|&s| s == w).unwrap();
    let mut n = vec![vec![vec![0u32; r]; r]; r];
    for i in 0..r {
        for j in i..r {
            let mut row = vec![0i64; r];
            for (w, m) in lr_product(simples[i], simples[j]) {
                if let Some((f, s)) = kac_walton_fold(w, k) {
                    row[index(f)] += s as i64 * m as i64;
                }
            }
            for (c, &v) in row.iter().enumerate() {
                if v < 0 {
                    return Err(Error::Ring(format!("negative Kac–Walton multiplicity at {} ⊗ {}", simples[i], simples[j])));
                }
                n[i][j][c] = v as u32;
                n[j][i][c] = v as u32;
            }
        }
    }
    FusionRing::new(simples.iter().map(|s| s.to_string()).collect(), n)
}

/// Quantum dimensions and twists at conductor `6(k+3)`.
pub fn su3_dims_twists(k: u32, weights: &[LevelWeight]) -> (Vec<CycloNum>, Vec<CycloNum>) {
    let h = k + 3;
    let n = 6 * h;
    // q = ζ_{2h}, [m] = (q^m - q^{-m}) / (q - q^{-1})
    let qint = |m: u32| {
        let a = CycloNum::root_of_unity(n, (3 * m) as i64);
        let b = CycloNum::root_of_unity(n, -((3 * m) as i64));
        &a - &b
    };
    let denom = {
        let q1 = qint(1);
        &(&q1 * &q1) * &qint(2)
    };
    let dims = weights
        .iter()
        .map(|w| {
            let (x, y) = (w.0 + 1, w.1 + 1);
            let num = &(&qint(x) * &qint(y)) * &qint(x + y);
            num.checked_div(&denom).expect("nonzero quantum integers").minimize()
        })
        .collect();
    let twists = weights
        .iter()
        .map(|w| {
            let (a, b) = (w.0 as i64, w.1 as i64);
            CycloNum::root_of_unity(n, 2 * (a * a + a * b + b * b) + 6 * (a + b)).minimize()
        })
        .collect();
    (dims, twists)
}

/// Indices of the triality-zero weights, in order.
pub fn psu3_component(weights: &[LevelWeight]) -> Vec<usize> {
    (0..weights.len()).filter(|&i| weights[i].triality() == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_products() {
        let f = LevelWeight(1, 0);
        let p = lr_product(f, f);
        assert_eq!(p, vec![(LevelWeight(0, 1), 1), (LevelWeight(2, 0), 1)]);
        let p = lr_product(f, LevelWeight(0, 1));
        assert_eq!(p, vec![(LevelWeight(0, 0), 1), (LevelWeight(1, 1), 1)]);
        let adj = LevelWeight(1, 1);
        let p = lr_product(adj, adj);
        let total: u32 = p.iter().map(|&(w, m)| m * classical_dim(w)).sum();
        assert_eq!(total, 64);
        assert_eq!(p.iter().find(|(w, _)| *w == adj).unwrap().1, 2);
    }

    fn classical_dim(w: LevelWeight) -> u32 {
        (w.0 + 1) * (w.1 + 1) * (w.0 + w.1 + 2) / 2
    }

    #[test]
    fn lr_preserves_classical_dimension() {
        for a in su3_simples(4) {
            for b in su3_simples(4) {
                let total: u32 = lr_product(a, b).iter().map(|&(w, m)| m * classical_dim(w)).sum();
                assert_eq!(total, classical_dim(a) * classical_dim(b), "{a} {b}");
            }
        }
    }

    #[test]
    fn folding() {
        assert_eq!(kac_walton_fold(LevelWeight(2, 0), 1), None);
        assert_eq!(kac_walton_fold(LevelWeight(0, 1), 1), Some((LevelWeight(0, 1), 1)));
        // level 1: [1,1] lies on the affine wall
        assert_eq!(kac_walton_fold(LevelWeight(1, 1), 1), None);
        assert_eq!(kac_walton_fold(LevelWeight(3, 0), 1), None);
        assert_eq!(kac_walton_fold(LevelWeight(2, 2), 2), Some((LevelWeight(1, 1), -1)));
    }

    #[test]
    fn level_one_is_z3() {
        let r = su3_fusion(1).unwrap();
        assert_eq!(r.rank(), 3);
        for i in 0..3 {
            assert_eq!(r.product(i, i).len(), 1);
        }
    }

    #[test]
    fn simples_count() {
        for k in 0..8 {
            assert_eq!(su3_simples(k).len() as u32, (k + 1) * (k + 2) / 2);
        }
        let w = su3_simples(5);
        let p: Vec<String> = psu3_component(&w).into_iter().map(|i| w[i].to_string()).collect();
        assert_eq!(p, ["[0,0]", "[1,1]", "[3,0]", "[0,3]", "[2,2]", "[4,1]", "[1,4]"]);
    }
}
