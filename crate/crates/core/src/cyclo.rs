//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` of
//! `Q[x]/(Φ_N)` with a single positive common denominator. Coefficients live
//! in `i128` while they stay small and are promoted to [`BigInt`] on
//! overflow, so the representation is canonical: two values over the same
//! conductor are equal iff their stored vectors are equal.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::linalg;
use crate::Error;

/// Entries at or above this magnitude force the big representation.
const SMALL_LIMIT: i128 = 1 << 60;

pub(crate) fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Integer coefficients of `Φ_n`, lowest degree first.
fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = field(d).phi.clone();
            num = poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials by a monic divisor.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Per-conductor reduction data.
pub(crate) struct Field {
    pub(crate) n: u32,
    pub(crate) deg: usize,
    pub(crate) phi: Vec<i64>,
    /// `pow[e]` is `x^e mod Φ_n` for `0 <= e < n`, stored sparsely.
    pub(crate) pow: Vec<Vec<(usize, i64)>>,
}

impl Field {
    fn new(n: u32) -> Field {
        let phi = if n == 1 { vec![-1, 1] } else { cyclotomic_poly(n) };
        let deg = phi.len() - 1;
        let mut pow = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; deg];
        cur[0] = 1;
        for _ in 0..n {
            pow.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(j, &c)| (j, c))
                    .collect(),
            );
            // multiply by x and reduce with the monic Φ_n
            let top = cur[deg - 1];
            for j in (1..deg).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..deg {
                    cur[j] -= top * phi[j];
                }
            }
        }
        Field { n, deg, phi, pow }
    }
}

thread_local! {
    static FIELDS: RefCell<HashMap<u32, Rc<Field>>> = RefCell::new(HashMap::new());
}

pub(crate) fn field(n: u32) -> Rc<Field> {
    if let Some(f) = FIELDS.with(|m| m.borrow().get(&n).cloned()) {
        return f;
    }
    let f = Rc::new(Field::new(n));
    FIELDS.with(|m| m.borrow_mut().insert(n, f.clone()));
    f
}

/// Coefficient ring used by the generic polynomial kernels.
trait Coef: Clone + PartialEq + Sized {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn gcd(&self, o: &Self) -> Self;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.unsigned_abs(), o.unsigned_abs());
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a as i128
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

#[derive(Clone, PartialEq, Debug)]
struct Poly<C> {
    num: Vec<C>,
    den: C,
}

impl<C: Coef> Poly<C> {
    fn normalize(mut self) -> Self {
        if self.num.iter().all(|c| c.is_zero()) {
            self.den = C::from_i64(1);
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g == C::from_i64(1) {
                break;
            }
            g = g.gcd(c);
        }
        if g != C::from_i64(1) {
            for c in &mut self.num {
                *c = c.div_exact(&g);
            }
            self.den = self.den.div_exact(&g);
        }
        self
    }

    fn add(&self, o: &Self) -> Option<Self> {
        let g = self.den.gcd(&o.den);
        let fa = o.den.div_exact(&g);
        let fb = self.den.div_exact(&g);
        let den = self.den.mul(&fa)?;
        let mut num = Vec::with_capacity(self.num.len());
        for (a, b) in self.num.iter().zip(&o.num) {
            num.push(a.mul(&fa)?.add(&b.mul(&fb)?)?);
        }
        Some(Poly { num, den }.normalize())
    }

    fn neg(&self) -> Option<Self> {
        let num = self.num.iter().map(|c| c.neg()).collect::<Option<Vec<_>>>()?;
        Some(Poly { num, den: self.den.clone() })
    }

    fn mul(&self, o: &Self, f: &Field) -> Option<Self> {
        let deg = f.deg;
        let mut acc = vec![C::zero(); 2 * deg - 1];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc[i + j] = acc[i + j].add(&a.mul(b)?)?;
            }
        }
        let mut num: Vec<C> = acc[..deg].to_vec();
        for (e, c) in acc.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for &(j, r) in &f.pow[e % f.n as usize] {
                num[j] = num[j].add(&c.mul(&C::from_i64(r))?)?;
            }
        }
        let den = self.den.mul(&o.den)?;
        Some(Poly { num, den }.normalize())
    }

    /// Substitutes `x -> x^k` (exponents taken mod `src.n`) and reduces in `dst`.
    fn substitute(&self, src: &Field, dst: &Field, k: u64) -> Option<Self> {
        let mut num = vec![C::zero(); dst.deg];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ((j as u64 * k) % dst.n as u64) as usize;
            for &(t, r) in &dst.pow[e] {
                num[t] = num[t].add(&c.mul(&C::from_i64(r))?)?;
            }
        }
        let _ = src;
        Some(Poly { num, den: self.den.clone() }.normalize())
    }
}

fn to_big(p: &Poly<i128>) -> Poly<BigInt> {
    Poly {
        num: p.num.iter().map(|&c| BigInt::from(c)).collect(),
        den: BigInt::from(p.den),
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Repr {
    Small(Poly<i128>),
    Big(Poly<BigInt>),
}

impl Repr {
    fn from_small(p: Poly<i128>) -> Repr {
        let fits = p.den < SMALL_LIMIT && p.num.iter().all(|c| c.abs() < SMALL_LIMIT);
        if fits {
            Repr::Small(p)
        } else {
            Repr::Big(to_big(&p))
        }
    }

    fn from_big(p: Poly<BigInt>) -> Repr {
        let lim = BigInt::from(SMALL_LIMIT);
        let fits = p.den < lim && p.num.iter().all(|c| c.abs() < lim);
        if fits {
            Repr::Small(Poly {
                num: p.num.iter().map(|c| c.to_i128().unwrap()).collect(),
                den: p.den.to_i128().unwrap(),
            })
        } else {
            Repr::Big(p)
        }
    }

    fn big(&self) -> Poly<BigInt> {
        match self {
            Repr::Small(p) => to_big(p),
            Repr::Big(p) => p.clone(),
        }
    }

    fn map(
        &self,
        small: impl Fn(&Poly<i128>) -> Option<Poly<i128>>,
        big: impl Fn(&Poly<BigInt>) -> Option<Poly<BigInt>>,
    ) -> Repr {
        if let Repr::Small(p) = self {
            if let Some(r) = small(p) {
                return Repr::from_small(r);
            }
        }
        Repr::from_big(big(&self.big()).expect("big arithmetic is total"))
    }

    fn zip(
        &self,
        o: &Repr,
        small: impl Fn(&Poly<i128>, &Poly<i128>) -> Option<Poly<i128>>,
        big: impl Fn(&Poly<BigInt>, &Poly<BigInt>) -> Option<Poly<BigInt>>,
    ) -> Repr {
        if let (Repr::Small(a), Repr::Small(b)) = (self, o) {
            if let Some(r) = small(a, b) {
                return Repr::from_small(r);
            }
        }
        Repr::from_big(big(&self.big(), &o.big()).expect("big arithmetic is total"))
    }
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct CycloNum {
    n: u32,
    repr: Repr,
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({})", self)
    }
}

impl CycloNum {
    fn from_parts(n: u32, num: Vec<i128>, den: i128) -> CycloNum {
        CycloNum { n, repr: Repr::from_small(Poly { num, den }.normalize()) }
    }

    pub fn zero(n: u32) -> CycloNum {
        let deg = field(n).deg;
        CycloNum::from_parts(n, vec![0; deg], 1)
    }

    pub fn one(n: u32) -> CycloNum {
        CycloNum::from_int(n, 1)
    }

    pub fn from_int(n: u32, v: i64) -> CycloNum {
        CycloNum::from_ratio(n, v, 1)
    }

    /// `num/den` as an element of `Q(ζ_n)`; `den` must be nonzero.
    pub fn from_ratio(n: u32, num: i64, den: i64) -> CycloNum {
        assert!(den != 0, "zero denominator");
        let deg = field(n).deg;
        let mut coeffs = vec![0i128; deg];
        let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
        coeffs[0] = num as i128;
        CycloNum::from_parts(n, coeffs, den as i128)
    }

    pub fn from_rational(n: u32, r: &BigRational) -> CycloNum {
        let mut coeffs = vec![BigRational::zero(); field(n).deg];
        coeffs[0] = r.clone();
        CycloNum::from_coeffs(n, &coeffs)
    }

    /// Builds an element from power-basis coefficients (length `φ(n)`).
    pub fn from_coeffs(n: u32, coeffs: &[BigRational]) -> CycloNum {
        let deg = field(n).deg;
        assert_eq!(coeffs.len(), deg, "coefficient vector must have length φ(N)");
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        CycloNum { n, repr: Repr::from_big(Poly { num, den }.normalize()) }
    }

    /// `ζ_n^k`.
    pub fn root_of_unity(n: u32, k: i64) -> CycloNum {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as usize;
        let mut coeffs = vec![0i128; f.deg];
        for &(j, c) in &f.pow[e] {
            coeffs[j] = c as i128;
        }
        CycloNum::from_parts(n, coeffs, 1)
    }

    /// The positive square root of `n`, built from quadratic Gauss sums.
    pub fn sqrt_int(n: u64) -> CycloNum {
        assert!(n >= 1, "sqrt_int needs a positive integer");
        let (square, free) = split_square(n);
        let mut acc = CycloNum::from_int(1, square as i64);
        for p in prime_factors(free) {
            acc = &acc * &sqrt_prime(p);
        }
        let (re, _) = acc.to_complex();
        if re < 0.0 {
            acc = -&acc;
        }
        debug_assert_eq!(&acc * &acc, CycloNum::from_int(1, n as i64));
        acc
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coefficients as reduced rationals.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let p = self.repr.big();
        p.num.iter().map(|c| BigRational::new(c.clone(), p.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(p) => p.num.iter().all(|c| *c == 0),
            Repr::Big(p) => p.num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_one())
    }

    /// The value as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        let c = self.coeffs();
        if c[1..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(c[0].clone())
    }

    /// The value as a rational integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Lifts to `Q(ζ_m)`; `m` must be a multiple of the conductor.
    pub fn lift_to(&self, m: u32) -> Result<CycloNum, Error> {
        if !m.is_multiple_of(self.n) {
            return Err(Error::Conductor(format!("cannot lift Q(ζ_{}) into Q(ζ_{})", self.n, m)));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let src = field(self.n);
        let dst = field(m);
        let k = (m / self.n) as u64;
        let repr = self.repr.map(|p| p.substitute(&src, &dst, k), |p| p.substitute(&src, &dst, k));
        Ok(CycloNum { n: m, repr })
    }

    fn lift_pair(&self, o: &CycloNum) -> (CycloNum, CycloNum) {
        let m = lcm_u32(self.n, o.n);
        (self.lift_to(m).unwrap(), o.lift_to(m).unwrap())
    }

    /// Applies `ζ_N -> ζ_N^k`; `k` must be a unit mod `N`.
    pub fn galois_apply(&self, k: i64) -> Result<CycloNum, Error> {
        let n = self.n as i64;
        let k = k.rem_euclid(n);
        if (k as u64).gcd(&(n as u64)) != 1 {
            return Err(Error::NotUnit { k, n: self.n });
        }
        let f = field(self.n);
        let repr = self.repr.map(|p| p.substitute(&f, &f, k as u64), |p| p.substitute(&f, &f, k as u64));
        Ok(CycloNum { n: self.n, repr })
    }

    /// Complex conjugation, i.e. `ζ -> ζ^{-1}`.
    pub fn conjugate(&self) -> CycloNum {
        self.galois_apply(-1).expect("-1 is always a unit")
    }

    pub fn inv(&self) -> Result<CycloNum, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = field(self.n);
        let phi: Vec<BigRational> = f.phi.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        let inv = linalg::poly_inverse_mod(&self.coeffs(), &phi).ok_or(Error::DivisionByZero)?;
        let mut coeffs = inv;
        coeffs.resize(f.deg, BigRational::zero());
        Ok(CycloNum::from_coeffs(self.n, &coeffs))
    }

    pub fn checked_div(&self, o: &CycloNum) -> Result<CycloNum, Error> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycloNum, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycloNum::one(self.n);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Multiplies by a rational integer.
    pub fn scale(&self, v: i64) -> CycloNum {
        let c = CycloNum::from_int(self.n, v);
        self * &c
    }

    /// Numeric value under `ζ_N -> e^{2πi/N}`. Display and sign checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let (num, den): (Vec<f64>, f64) = match &self.repr {
            Repr::Small(p) => (p.num.iter().map(|&c| c as f64).collect(), p.den as f64),
            Repr::Big(p) => (
                p.num.iter().map(big_to_f64).collect(),
                big_to_f64(&p.den),
            ),
        };
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in num.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            let ang = 2.0 * std::f64::consts::PI * j as f64 / self.n as f64;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re / den, im / den)
    }

    /// Exactly real (fixed by complex conjugation).
    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// Exactly real and numerically positive.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && self.to_complex().0 > 0.0
    }

    /// If this is a root of unity, its phase `j/m` with `self = e^{2πi j/m}`.
    pub fn root_phase(&self) -> Option<Phase> {
        let m = lcm_u32(2, self.n);
        let (re, im) = self.to_complex();
        if ((re * re + im * im) - 1.0).abs() > 1e-6 {
            return None;
        }
        let guess = (im.atan2(re) / (2.0 * std::f64::consts::PI) * m as f64).round() as i64;
        let me = self.lift_to(m).ok()?;
        for j in [guess, guess - 1, guess + 1] {
            if CycloNum::root_of_unity(m, j) == me {
                return Some(Phase::new(j, m as u64));
            }
        }
        (0..m as i64)
            .find(|&j| CycloNum::root_of_unity(m, j) == me)
            .map(|j| Phase::new(j, m as u64))
    }

    /// Rewrites the value over the smallest conductor containing it.
    pub fn minimize(&self) -> CycloNum {
        if self.n <= 2 {
            return if self.n == 2 {
                CycloNum::from_rational(1, &self.coeffs()[0])
            } else {
                self.clone()
            };
        }
        let n = self.n;
        let mut divisors: Vec<u32> = (1..n).filter(|d| n.is_multiple_of(*d) && d % 4 != 2).collect();
        divisors.sort_unstable();
        for d in divisors {
            let fixed = (1..n as i64)
                .filter(|&k| k as u32 % d == 1 % d && (k as u64).gcd(&(n as u64)) == 1)
                .all(|k| self.galois_apply(k).unwrap() == *self);
            if !fixed {
                continue;
            }
            if let Some(v) = self.express_in(d) {
                return v;
            }
        }
        self.clone()
    }

    fn express_in(&self, d: u32) -> Option<CycloNum> {
        let big = field(self.n);
        let small = field(d);
        let step = (self.n / d) as usize;
        // column t: coordinates of ζ_d^t inside Q(ζ_n)
        let mut rows = vec![vec![BigRational::zero(); small.deg]; big.deg];
        for t in 0..small.deg {
            for &(j, c) in &big.pow[(t * step) % self.n as usize] {
                rows[j][t] = BigRational::from_integer(c.into());
            }
        }
        let y = linalg::solve(&rows, &self.coeffs())?;
        let out = CycloNum::from_coeffs(d, &y);
        debug_assert!(out.lift_to(self.n).unwrap() == *self);
        Some(out)
    }
}

fn big_to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(if b.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

fn split_square(n: u64) -> (u64, u64) {
    let mut square = 1;
    let mut free = 1;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    (square, free * m)
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn legendre(a: u64, p: u64) -> i64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = (p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    if r == 1 {
        1
    } else {
        -1
    }
}

/// ±√p for a prime p; the caller fixes the sign.
fn sqrt_prime(p: u64) -> CycloNum {
    if p == 2 {
        return &CycloNum::root_of_unity(8, 1) + &CycloNum::root_of_unity(8, -1);
    }
    let pn = p as u32;
    let mut g = CycloNum::zero(pn);
    for a in 1..p {
        g = &g + &CycloNum::root_of_unity(pn, a as i64).scale(legendre(a, p));
    }
    if p % 4 == 1 {
        g
    } else {
        // g² = -p
        &g * &CycloNum::root_of_unity(4, 1)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, o: &CycloNum) -> bool {
        if self.n == o.n {
            self.repr == o.repr
        } else {
            let (a, b) = self.lift_pair(o);
            a.repr == b.repr
        }
    }
}

impl Eq for CycloNum {}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, o: &CycloNum) -> CycloNum {
        if self.n != o.n {
            let (a, b) = self.lift_pair(o);
            return &a + &b;
        }
        CycloNum { n: self.n, repr: self.repr.zip(&o.repr, |a, b| a.add(b), |a, b| a.add(b)) }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, o: &CycloNum) -> CycloNum {
        self + &(-o)
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, o: &CycloNum) -> CycloNum {
        if self.n != o.n {
            let (a, b) = self.lift_pair(o);
            return &a * &b;
        }
        let f = field(self.n);
        CycloNum { n: self.n, repr: self.repr.zip(&o.repr, |a, b| a.mul(b, &f), |a, b| a.mul(b, &f)) }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { n: self.n, repr: self.repr.map(|p| p.neg(), |p| p.neg()) }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: CycloNum) -> CycloNum {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, o: &CycloNum) -> CycloNum {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.coeffs();
        let mut first = true;
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write!(f, "z{}", self.n)?;
                if j > 1 {
                    write!(f, "^{}", j)?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A root of unity `e^{2πi·num/den}` kept as a reduced fraction in `[0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Phase {
    num: u64,
    den: u64,
}

impl Phase {
    pub fn new(num: i64, den: u64) -> Phase {
        assert!(den > 0);
        let r = num.rem_euclid(den as i64) as u64;
        let g = gcd_u64(r, den).max(1);
        Phase { num: r / g, den: den / g }
    }

    pub fn zero() -> Phase {
        Phase { num: 0, den: 1 }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    /// Multiplicative order of the root of unity.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_trivial(&self) -> bool {
        self.num == 0
    }

    pub fn to_cyclo(&self) -> CycloNum {
        CycloNum::root_of_unity(self.den as u32, self.num as i64)
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, o: Phase) -> Phase {
        let den = self.den.lcm(&o.den);
        Phase::new((self.num * (den / self.den) + o.num * (den / o.den)) as i64, den)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, o: Phase) -> Phase {
        self + (-o)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::new(-(self.num as i64), self.den)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{}/{})", self.num, self.den)
    }
}

#[derive(Serialize, Deserialize)]
struct CycloJson {
    #[serde(rename = "N")]
    n: u32,
    coeffs: Vec<[JsonInt; 2]>,
}

/// Integer that is written as a JSON number when it fits in `i64` and as a
/// decimal string otherwise.
#[derive(Clone)]
struct JsonInt(BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::I(v) => Ok(JsonInt(BigInt::from(v))),
            Raw::S(s) => s.parse().map(JsonInt).map_err(D::Error::custom),
        }
    }
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs()
            .into_iter()
            .map(|c| [JsonInt(c.numer().clone()), JsonInt(c.denom().clone())])
            .collect();
        CycloJson { n: self.n, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycloJson::deserialize(d)?;
        if raw.n == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let deg = field(raw.n).deg;
        if raw.coeffs.len() != deg {
            return Err(D::Error::custom(format!(
                "expected {} coefficients for N={}, got {}",
                deg,
                raw.n,
                raw.coeffs.len()
            )));
        }
        let mut coeffs = Vec::with_capacity(deg);
        for [num, den] in raw.coeffs {
            if Zero::is_zero(&den.0) {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(num.0, den.0));
        }
        Ok(CycloNum::from_coeffs(raw.n, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt2() -> CycloNum {
        &CycloNum::root_of_unity(8, 1) + &CycloNum::root_of_unity(8, -1)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(field(1).phi, vec![-1, 1]);
        assert_eq!(field(2).phi, vec![1, 1]);
        assert_eq!(field(12).phi, vec![1, 0, -1, 0, 1]);
        assert_eq!(field(32).phi.len(), 17);
        assert_eq!(field(15).deg, totient(15) as usize);
    }

    #[test]
    fn roots_of_unity() {
        assert_eq!(CycloNum::root_of_unity(1, 0), CycloNum::one(1));
        let i = CycloNum::root_of_unity(4, 1);
        assert_eq!(&i * &i, CycloNum::from_int(4, -1));
        let z = CycloNum::root_of_unity(8, 1);
        assert!(z.pow(8).unwrap().is_one());
        assert_eq!(CycloNum::root_of_unity(8, 1) * CycloNum::root_of_unity(8, 7), CycloNum::one(8));
    }

    #[test]
    fn sqrt2_from_eighth_roots() {
        let s = sqrt2();
        assert_eq!(&s * &s, CycloNum::from_int(8, 2));
        assert_eq!(CycloNum::sqrt_int(2), s);
    }

    #[test]
    fn inverses() {
        assert_eq!(CycloNum::from_int(1, 2).inv().unwrap(), CycloNum::from_ratio(1, 1, 2));
        let i = CycloNum::root_of_unity(4, 1);
        let x = &CycloNum::one(4) + &i;
        let expected = &(&CycloNum::one(4) - &i) * &CycloNum::from_ratio(4, 1, 2);
        assert_eq!(x.inv().unwrap(), expected);
        assert!(matches!(CycloNum::zero(8).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conjugation() {
        let i = CycloNum::root_of_unity(4, 1);
        assert_eq!(i.conjugate(), -&i);
        let r = CycloNum::from_ratio(12, 3, 7);
        assert_eq!(r.conjugate(), r);
        assert_eq!(sqrt2().conjugate(), sqrt2());
    }

    #[test]
    fn galois_action() {
        let z = CycloNum::root_of_unity(16, 1);
        assert_eq!(z.galois_apply(3).unwrap(), CycloNum::root_of_unity(16, 3));
        assert_eq!(sqrt2().galois_apply(3).unwrap(), -&sqrt2());
        let r = CycloNum::from_ratio(16, -5, 3);
        assert_eq!(r.galois_apply(7).unwrap(), r);
        assert!(matches!(z.galois_apply(4), Err(Error::NotUnit { .. })));
    }

    #[test]
    fn square_roots() {
        assert_eq!(CycloNum::sqrt_int(1), CycloNum::one(1));
        assert_eq!(CycloNum::sqrt_int(4), CycloNum::from_int(1, 2));
        for n in 1..=64u64 {
            let s = CycloNum::sqrt_int(n);
            assert_eq!(&s * &s, CycloNum::from_int(1, n as i64), "n = {n}");
            assert!(s.to_complex().0 > 0.0);
            assert_eq!((4 * n as u32) % s.conductor(), 0, "√{n} must lie in Q(ζ_4n)");
        }
    }

    #[test]
    fn numeric_embedding() {
        assert_eq!(CycloNum::one(5).to_complex(), (1.0, 0.0));
        let (re, im) = CycloNum::root_of_unity(4, 1).to_complex();
        assert!(re.abs() < 1e-15 && (im - 1.0).abs() < 1e-15);
        let x = &CycloNum::from_int(8, 3) + &sqrt2().scale(2);
        let (re, im) = x.to_complex();
        assert!((re - 5.828_427_124_746_19).abs() < 1e-12 && im.abs() < 1e-12);
    }

    #[test]
    fn minimize_and_lift() {
        let s = sqrt2().lift_to(32).unwrap();
        let m = s.minimize();
        assert_eq!(m.conductor(), 8);
        assert_eq!(m, s);
        assert_eq!(CycloNum::root_of_unity(6, 1).minimize().conductor(), 3);
        assert_eq!(CycloNum::from_ratio(24, 5, 2).minimize().conductor(), 1);
        assert_eq!(CycloNum::from_ratio(24, 5, 2).as_rational(), Some(BigRational::new(5.into(), 2.into())));
        let i = CycloNum::root_of_unity(4, 1);
        assert_eq!(i.lift_to(12).unwrap().minimize(), i);
    }

    #[test]
    fn reduction_of_cyclotomic_multiples_vanishes() {
        // Φ_n(ζ_n) = 0 for each n, evaluated by summing the power basis images.
        for n in [3u32, 5, 8, 12, 16, 24, 32] {
            let f = field(n);
            let mut acc = CycloNum::zero(n);
            for (e, &c) in f.phi.iter().enumerate() {
                acc = &acc + &CycloNum::root_of_unity(n, e as i64).scale(c);
            }
            assert!(acc.is_zero(), "Φ_{n}(ζ) != 0");
        }
    }

    #[test]
    fn big_promotion_round_trip() {
        let mut x = CycloNum::from_ratio(12, 7, 3) + CycloNum::root_of_unity(12, 1);
        let start = x.clone();
        for _ in 0..6 {
            x = &x * &x;
        }
        assert!(matches!(x.repr, Repr::Big(_)));
        let back = &x * &start.pow(-64).unwrap();
        assert!(back.is_one());
        assert!(matches!(back.repr, Repr::Small(_)));
    }

    #[test]
    fn root_phase_detection() {
        let v = CycloNum::root_of_unity(32, 20);
        assert_eq!(v.root_phase(), Some(Phase::new(5, 8)));
        assert_eq!(sqrt2().root_phase(), None);
        assert_eq!(CycloNum::from_int(3, -1).root_phase(), Some(Phase::new(1, 2)));
    }

    #[test]
    fn json_round_trip() {
        let x = &CycloNum::from_ratio(8, 3, 4) + &sqrt2().scale(5);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"N":8,"coeffs":[[3,4],[5,1],[0,1],[-5,1]]}"#);
        let back: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<CycloNum>(r#"{"N":8,"coeffs":[[1,1]]}"#).is_err());
    }
}
