//! Exact arithmetic in cyclotomic fields `Q(ζ_n)`.
//!
//! A value is stored in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}` after
//! reduction modulo the `n`-th cyclotomic polynomial, as integer numerators
//! over one positive common denominator. The representation is canonical:
//! two values of the same conductor are equal iff their vectors are equal.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// Largest conductor for which a reduction basis is built.
pub const CONDUCTOR_CAP: u32 = 1 << 14;

/// Reduction data for one conductor: `reduce[k]` is `ζ_n^k` in the power basis.
struct Basis {
    n: u32,
    phi: usize,
    reduce: Vec<Vec<(u32, i64)>>,
}

type Cache<T> = OnceLock<RwLock<HashMap<u32, Arc<T>>>>;

static POLYS: Cache<Vec<i64>> = OnceLock::new();
static BASES: Cache<Basis> = OnceLock::new();

fn cached<T>(cache: &'static Cache<T>, n: u32, build: impl FnOnce() -> T) -> Arc<T> {
    let map = cache.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = map.read().expect("cache poisoned").get(&n) {
        return Arc::clone(v);
    }
    let built = Arc::new(build());
    let mut w = map.write().expect("cache poisoned");
    Arc::clone(w.entry(n).or_insert(built))
}

/// Coefficients (lowest degree first) of the `n`-th cyclotomic polynomial,
/// obtained by dividing `x^n - 1` by `Φ_d` for every proper divisor `d`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1);
    cached(&POLYS, n, || {
        let mut poly = vec![0i64; n as usize + 1];
        poly[0] = -1;
        poly[n as usize] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let divisor = cyclotomic_polynomial(d);
                poly = divide_monic(&poly, &divisor);
            }
        }
        poly
    })
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dd = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn basis(n: u32) -> Result<Arc<Basis>> {
    if n == 0 || n > CONDUCTOR_CAP {
        return Err(Error::ConductorOverflow(n as u64));
    }
    Ok(cached(&BASES, n, || {
        let poly = cyclotomic_polynomial(n);
        let phi = poly.len() - 1;
        let mut reduce = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        for k in 0..n as usize {
            if k < phi {
                cur.iter_mut().for_each(|c| *c = 0);
                cur[k] = 1;
            } else {
                // multiply the previous power by x and fold x^phi back in
                let top = cur[phi - 1];
                for i in (1..phi).rev() {
                    cur[i] = cur[i - 1];
                }
                cur[0] = 0;
                if top != 0 {
                    for i in 0..phi {
                        cur[i] -= top * poly[i];
                    }
                }
            }
            reduce.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u32, c))
                    .collect(),
            );
        }
        Basis { n, phi, reduce }
    }))
}

fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// An element of `Q(ζ_n)` in canonical reduced power-basis form.
#[derive(Clone, Debug)]
pub struct Cyclo {
    n: u32,
    den: i64,
    num: Vec<i64>,
}

impl Cyclo {
    fn raw(n: u32, num: Vec<i64>, den: i64) -> Self {
        let mut c = Cyclo { n, den, num };
        c.normalize();
        c
    }

    fn normalize(&mut self) {
        debug_assert!(self.den != 0);
        if self.den < 0 {
            self.den = -self.den;
            self.num.iter_mut().for_each(|c| *c = -*c);
        }
        let g = self.num.iter().fold(self.den, |g, &c| gcd(g, c));
        if g > 1 {
            self.den /= g;
            self.num.iter_mut().for_each(|c| *c /= g);
        }
    }

    pub fn zero(n: u32) -> Self {
        let b = basis(n).expect("conductor within cap");
        Cyclo {
            n,
            den: 1,
            num: vec![0; b.phi],
        }
    }

    pub fn from_int(n: u32, value: i64) -> Self {
        Self::rational(n, value, 1)
    }

    pub fn one(n: u32) -> Self {
        Self::from_int(n, 1)
    }

    /// The rational `p/q` viewed in `Q(ζ_n)`.
    pub fn rational(n: u32, p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        let mut c = Self::zero(n);
        c.num[0] = p;
        c.den = q;
        c.normalize();
        c
    }

    /// `ζ_n^k`.
    pub fn root(n: u32, k: i64) -> Self {
        let b = basis(n).expect("conductor within cap");
        let k = k.rem_euclid(n as i64) as usize;
        let mut num = vec![0; b.phi];
        for &(i, c) in &b.reduce[k] {
            num[i as usize] += c;
        }
        Cyclo { n, den: 1, num }
    }

    /// `Σ_k mult[k] ζ_n^k` for exponents `k` in `0..mult.len()`.
    pub fn from_exponent_counts(n: u32, mult: &[i64]) -> Self {
        let b = basis(n).expect("conductor within cap");
        let mut num = vec![0; b.phi];
        for (k, &m) in mult.iter().enumerate() {
            if m != 0 {
                for &(i, c) in &b.reduce[k % n as usize] {
                    num[i as usize] += m * c;
                }
            }
        }
        Cyclo { n, den: 1, num }
    }

    /// Builds a value from power-basis coordinates; `coords.len()` must be `φ(n)`.
    pub fn from_coords(n: u32, coords: &[Ratio<i64>]) -> Result<Self> {
        let b = basis(n)?;
        if coords.len() != b.phi {
            return Err(Error::InvalidInput(format!(
                "expected {} coordinates for conductor {n}",
                b.phi
            )));
        }
        let den = coords.iter().fold(1i64, |l, c| l.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (den / c.denom())).collect();
        Ok(Cyclo::raw(n, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    /// Power-basis coordinates as reduced rationals.
    pub fn coords(&self) -> Vec<Ratio<i64>> {
        self.num.iter().map(|&c| Ratio::new(c, self.den)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|&c| c == 0)
    }

    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(|&c| c == 0)
    }

    /// True when every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// The rational value, if this element lies in `Q`.
    pub fn as_rational(&self) -> Option<Ratio<i64>> {
        self.is_rational().then(|| Ratio::new(self.num[0], self.den))
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Re-expresses the value in `Q(ζ_m)` for a multiple `m` of the conductor.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.n) {
            return Err(Error::InvalidInput(format!(
                "cannot embed conductor {} into {m}",
                self.n
            )));
        }
        if m == self.n {
            return Ok(self.clone());
        }
        let b = basis(m)?;
        let step = (m / self.n) as usize;
        let mut num = vec![0; b.phi];
        for (i, &c) in self.num.iter().enumerate() {
            if c != 0 {
                for &(t, r) in &b.reduce[(i * step) % m as usize] {
                    num[t as usize] += c * r;
                }
            }
        }
        Ok(Cyclo { n: m, den: self.den, num })
    }

    /// Attempts to express the value with conductor `m` (a divisor of the
    /// current conductor). Returns `None` when the value is not in `Q(ζ_m)`.
    pub fn try_restrict(&self, m: u32) -> Option<Self> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return None;
        }
        if m == self.n {
            return Some(self.clone());
        }
        let small = basis(m).ok()?;
        let big = basis(self.n).ok()?;
        // columns: images of the small basis inside the big one
        let cols: Vec<Vec<i64>> = (0..small.phi)
            .map(|i| {
                Cyclo::root(m, i as i64)
                    .embed(self.n)
                    .expect("divisor embeds")
                    .num
            })
            .collect();
        let rows = big.phi;
        let width = small.phi + 1;
        let mut mat: Vec<Vec<Ratio<i128>>> = (0..rows)
            .map(|r| {
                let mut row: Vec<Ratio<i128>> =
                    cols.iter().map(|c| Ratio::from_integer(c[r] as i128)).collect();
                row.push(Ratio::new(self.num[r] as i128, self.den as i128));
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for c in 0..small.phi {
            let Some(p) = (r0..rows).find(|&r| mat[r][c] != Ratio::from_integer(0)) else {
                continue;
            };
            mat.swap(r0, p);
            let inv = Ratio::from_integer(1) / mat[r0][c];
            for x in mat[r0].iter_mut() {
                *x *= inv;
            }
            for r in 0..rows {
                if r != r0 && mat[r][c] != Ratio::from_integer(0) {
                    let f = mat[r][c];
                    for k in 0..width {
                        let v = mat[r0][k] * f;
                        mat[r][k] -= v;
                    }
                }
            }
            pivots.push(c);
            r0 += 1;
        }
        if mat[r0..].iter().any(|row| row[width - 1] != Ratio::from_integer(0)) {
            return None;
        }
        let mut coords = vec![Ratio::<i64>::from_integer(0); small.phi];
        for (r, &c) in pivots.iter().enumerate() {
            let v = mat[r][width - 1];
            coords[c] = Ratio::new(*v.numer() as i64, *v.denom() as i64);
        }
        Cyclo::from_coords(m, &coords).ok()
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.n == other.n {
            return (self.clone(), other.clone());
        }
        let m = self.n.lcm(&other.n);
        (
            self.embed(m).expect("conductor within cap"),
            other.embed(m).expect("conductor within cap"),
        )
    }

    fn add_scaled(&self, other: &Self, sign: i64) -> Self {
        if self.n != other.n {
            let (a, b) = self.common(other);
            return a.add_scaled(&b, sign);
        }
        let l = self.den.lcm(&other.den);
        let (fa, fb) = (l / self.den, l / other.den);
        let num = self
            .num
            .iter()
            .zip(&other.num)
            .map(|(&a, &b)| a * fa + sign * b * fb)
            .collect();
        Cyclo::raw(self.n, num, l)
    }

    fn mul_into(b: &Basis, x: &[i64], y: &[i64], scale: i64, out: &mut [i64]) {
        let n = b.n as usize;
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &c) in y.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let prod = a * c * scale;
                let k = i + j;
                if k < b.phi {
                    out[k] += prod;
                } else {
                    for &(t, r) in &b.reduce[k % n] {
                        out[t as usize] += prod * r;
                    }
                }
            }
        }
    }

    /// `self += scale * x * y`, with all three at this conductor.
    pub fn add_product(&mut self, x: &Cyclo, y: &Cyclo, scale: i64) {
        if self.n == x.n && self.n == y.n && self.den == 1 && x.den == 1 && y.den == 1 {
            let b = basis(self.n).expect("conductor within cap");
            Self::mul_into(&b, &x.num, &y.num, scale, &mut self.num);
        } else {
            let p = &(x * y) * &Cyclo::from_int(x.n, scale);
            *self = &*self + &p;
        }
    }

    pub fn scale(&self, p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Cyclo::raw(self.n, self.num.iter().map(|&c| c * p).collect(), self.den * q)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclo::one(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Image under the field automorphism `ζ_n ↦ ζ_n^j`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let n = self.n as i64;
        if j.gcd(&n) != 1 {
            return Err(Error::NotCoprime(j, self.n));
        }
        let j = j.rem_euclid(n.max(1)) as usize;
        let b = basis(self.n)?;
        let mut num = vec![0; b.phi];
        for (i, &c) in self.num.iter().enumerate() {
            if c != 0 {
                for &(t, r) in &b.reduce[(i * j) % self.n as usize] {
                    num[t as usize] += c * r;
                }
            }
        }
        Ok(Cyclo { n: self.n, den: self.den, num })
    }

    /// Complex conjugation, the Galois map `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(self.n as i64 - 1).expect("-1 is a unit")
    }

    /// Floating-point shadow value.
    pub fn to_complex(&self) -> Complex64 {
        let mut z = Complex64::new(0.0, 0.0);
        for (i, &c) in self.num.iter().enumerate() {
            if c != 0 {
                let t = std::f64::consts::TAU * i as f64 / self.n as f64;
                z += Complex64::from_polar(c as f64, t);
            }
        }
        z / self.den as f64
    }

    /// Returns the multiplicative order when the value is a root of unity.
    ///
    /// The roots of unity in `Q(ζ_n)` are exactly the `lcm(2, n)`-th roots.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        let l = self.n.lcm(&2);
        let one = Cyclo::one(self.n);
        if self.pow(l as u64) != one {
            return None;
        }
        (1..=l)
            .filter(|d| l.is_multiple_of(*d))
            .find(|&d| self.pow(d as u64) == one)
    }

    pub fn is_root_of_unity(&self) -> bool {
        self.root_of_unity_order().is_some()
    }

    /// Canonical text: rationals render bare, otherwise `c(n)[a0, a1, ...]`.
    pub fn canonical_text(&self) -> String {
        self.to_string()
    }
}

fn fmt_ratio(p: i64, q: i64) -> String {
    let g = gcd(p, q);
    let (p, q) = (p / g, q / g);
    if q == 1 {
        p.to_string()
    } else {
        format!("{p}/{q}")
    }
}

impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return f.write_str(&fmt_ratio(self.num[0], self.den));
        }
        write!(f, "c({})[", self.n)?;
        for (i, &c) in self.num.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&fmt_ratio(c, self.den))?;
        }
        f.write_str("]")
    }
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = self.common(other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for Cyclo {}

impl Add for &Cyclo {
    type Output = Cyclo;
    fn add(self, rhs: &Cyclo) -> Cyclo {
        self.add_scaled(rhs, 1)
    }
}

impl Sub for &Cyclo {
    type Output = Cyclo;
    fn sub(self, rhs: &Cyclo) -> Cyclo {
        self.add_scaled(rhs, -1)
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        Cyclo {
            n: self.n,
            den: self.den,
            num: self.num.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Cyclo {
    type Output = Cyclo;
    fn mul(self, rhs: &Cyclo) -> Cyclo {
        if self.n != rhs.n {
            let (a, b) = self.common(rhs);
            return &a * &b;
        }
        let b = basis(self.n).expect("conductor within cap");
        let mut num = vec![0; b.phi];
        Cyclo::mul_into(&b, &self.num, &rhs.num, 1, &mut num);
        Cyclo::raw(self.n, num, self.den * rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// The field `Q(ζ_{p^r})`; `r = 0` denotes `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldTag {
    pub p: u32,
    pub r: u32,
}

impl FieldTag {
    pub fn new(p: u32, r: u32) -> Self {
        FieldTag { p, r }
    }

    pub fn conductor(&self) -> u32 {
        self.p.pow(self.r)
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{}^{})", self.p, self.r)
    }
}

fn units_congruent_one(modulus: u32, step: u32) -> impl Iterator<Item = i64> {
    // units j of Z/modulus with j ≡ 1 mod step (step = 1 gives every unit)
    (1..=modulus.max(1))
        .filter(move |&j| j.gcd(&modulus) == 1 && (j as i64 - 1).rem_euclid(step as i64) == 0)
        .map(|j| j as i64)
}

/// Relative trace from `Q(ζ_{p^r})` down to `Q(ζ_{p^s})`: the sum of the
/// images of `x` under the automorphisms `ζ ↦ ζ^j` with `j ≡ 1 (mod p^s)`.
pub fn relative_trace(x: &Cyclo, source: FieldTag, target: FieldTag) -> Result<Cyclo> {
    if source.p != target.p {
        return Err(Error::InvalidInput("fields over different primes".into()));
    }
    if target.r > source.r {
        return Err(Error::InvalidInput(format!(
            "target exponent {} exceeds source exponent {}",
            target.r, source.r
        )));
    }
    let big = source.conductor();
    let small = target.conductor();
    let x = x.embed(big)?;
    let mut acc = Cyclo::zero(big);
    for j in units_congruent_one(big, small) {
        acc = &acc + &x.galois(j)?;
    }
    acc.try_restrict(small.max(1)).ok_or_else(|| {
        Error::Internal(format!("trace does not lie in {target}"))
    })
}

fn prime_power_exponent(n: u32, p: u32) -> Option<u32> {
    let mut n = n;
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(p) {
            return None;
        }
        n /= p;
        e += 1;
    }
    Some(e)
}

/// Smallest `r` such that every value is fixed by the Galois elements that
/// fix `Q(ζ_{p^r})`; the values must all have conductor a power of `p`.
pub fn minimal_prime_power_field(values: &[Cyclo], p: u32) -> Result<FieldTag> {
    let mut top = 0;
    for v in values {
        top = top.max(prime_power_exponent(v.conductor(), p).ok_or(Error::MixedConductors)?);
    }
    let big = p.pow(top);
    let embedded = values
        .iter()
        .map(|v| v.embed(big))
        .collect::<Result<Vec<_>>>()?;
    for r in 0..top {
        let step = p.pow(r);
        let fixed = units_congruent_one(big, step).all(|j| {
            embedded
                .iter()
                .all(|v| v.galois(j).map(|g| &g == v).unwrap_or(false))
        });
        if fixed {
            return Ok(FieldTag::new(p, r));
        }
    }
    Ok(FieldTag::new(p, top))
}
