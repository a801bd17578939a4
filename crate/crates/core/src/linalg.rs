//! Exact linear algebra over `Q` and `Z`: dense linear solves, polynomial
//! gcd/inverse, and integer characteristic polynomials.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn degree(p: &QPoly) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Division with remainder in `Q[x]`. The divisor must be nonzero.
pub fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(&b.to_vec()).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: QPoly = a.to_vec();
    let mut quot = vec![BigRational::zero(); a.len().max(db + 1) - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] = &rem[shift + j] - &c * bj;
        }
        quot[shift] = c;
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + x * y;
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = &out[i] - y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm, or `None`
/// when `a` and `m` are not coprime.
pub fn poly_inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
    let mut r0: QPoly = m.to_vec();
    let (_, mut r1) = poly_divrem(a, m);
    let mut s0: QPoly = vec![BigRational::zero()];
    let mut s1: QPoly = vec![BigRational::one()];
    degree(&r1)?;
    loop {
        match degree(&r1) {
            None => return None,
            Some(0) => {
                let c = r1[0].clone();
                let inv: QPoly = s1.iter().map(|x| x / &c).collect();
                let (_, out) = poly_divrem(&inv, m);
                return Some(out);
            }
            Some(_) => {}
        }
        let (q, r2) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
}

/// Monic gcd in `Q[x]`.
pub fn poly_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let mut x: QPoly = a.to_vec();
    let mut y: QPoly = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while degree(&y).is_some() {
        let (_, r) = poly_divrem(&x, &y);
        x = y;
        y = r;
    }
    match degree(&x) {
        None => x,
        Some(d) => {
            let lead = x[d].clone();
            x.iter().take(d + 1).map(|c| c / &lead).collect()
        }
    }
}

pub fn poly_derivative(a: &[BigRational]) -> QPoly {
    if a.len() <= 1 {
        return vec![BigRational::zero()];
    }
    a.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect()
}

/// True iff the polynomial has no repeated roots over `C`.
pub fn is_squarefree(p: &[BigRational]) -> bool {
    let g = poly_gcd(p, &poly_derivative(p));
    degree(&g) == Some(0)
}

/// Solves `rows · y = rhs` exactly. Returns one solution (free variables set
/// to zero) or `None` if the system is inconsistent.
pub fn solve(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> Option<Vec<BigRational>> {
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let lead = a[row][col].clone();
        for x in a[row].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..m {
            if i != row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in col..=n {
                    let v = &a[row][j] * &f;
                    a[i][j] = &a[i][j] - v;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if a[row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut y = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        y[c] = a[r][n].clone();
    }
    Some(y)
}

/// Characteristic polynomial `det(xI - A)` of an integer matrix, lowest
/// degree first, via Faddeev–LeVerrier (all divisions are exact).
pub fn char_poly(a: &[Vec<i64>]) -> Vec<BigInt> {
    let n = a.len();
    let a: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for l in 0..n {
                if a[i][l].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !m[l][j].is_zero() {
                        next[i][j] += &a[i][l] * &m[l][j];
                    }
                }
            }
        }
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() {
                    tr += &a[i][l] * &m[l][i];
                }
            }
        }
        coeffs[n - k] = -tr / BigInt::from(k);
    }
    coeffs
}
