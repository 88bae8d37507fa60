//! Places of ℚ, normalized absolute values and adelic radius assignments.
//!
//! Finite-place quantities are exact rationals throughout. The archimedean
//! radius is an `f64`; whenever an exact computation needs it, the float is
//! converted to the rational it represents (binary floats are dyadic
//! rationals, so the conversion loses nothing).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A place of ℚ. Ordering puts the archimedean place first, then primes
/// in increasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    Finite(Prime),
}

/// A rational prime, checked on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::domain(format!("{p} is not a prime")))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        Prime::new(p).map(Place::Finite)
    }

    pub fn is_archimedean(self) -> bool {
        matches!(self, Place::Archimedean)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Place::Archimedean);
        }
        let p: u64 = s
            .parse()
            .map_err(|_| Error::domain(format!("place must be \"inf\" or a prime, got {s:?}")))?;
        Place::finite(p)
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Number(u64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => s.parse().map_err(de::Error::custom),
            Raw::Number(p) => Place::finite(p).map_err(de::Error::custom),
        }
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

// Pollard's rho with Brent's cycle detection; `n` must be composite.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = x.abs_diff(y).gcd(&n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn factor_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    factor_u64(d, out);
    factor_u64(n / d, out);
}

/// Distinct prime divisors of `n`, ascending. Cofactors left after trial
/// division must fit in 64 bits.
pub fn prime_divisors(n: &BigUint) -> Result<Vec<u64>> {
    let mut primes = Vec::new();
    let mut rest = n.clone();
    if rest.is_zero() {
        return Err(Error::domain("zero has no factorization"));
    }
    let mut p = 2u64;
    while p < 10_000 && rest > BigUint::one() {
        let bp = BigUint::from(p);
        if (&rest % &bp).is_zero() {
            primes.push(p);
            while (&rest % &bp).is_zero() {
                rest /= &bp;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > BigUint::one() {
        let rest = rest
            .to_u64()
            .ok_or_else(|| Error::domain("cofactor too large to factor"))?;
        factor_u64(rest, &mut primes);
    }
    primes.sort_unstable();
    primes.dedup();
    Ok(primes)
}

/// The p-adic valuation of a nonzero rational.
pub fn valuation(q: &BigRational, p: Prime) -> Result<i64> {
    if q.is_zero() {
        return Err(Error::domain("valuation of zero"));
    }
    let bp = BigInt::from(p.get());
    let count = |n: &BigInt| {
        let mut n = n.clone();
        let mut k = 0i64;
        while (&n % &bp).is_zero() {
            n /= &bp;
            k += 1;
        }
        k
    };
    Ok(count(q.numer()) - count(q.denom()))
}

/// Integer power of a rational, negative exponents allowed.
pub fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Normalized absolute value `|q|_v`; exact at every place because `|q|_∞`
/// of a rational is itself rational.
pub fn absolute_value(q: &BigRational, place: Place) -> Result<BigRational> {
    if q.is_zero() {
        return Err(Error::domain("absolute value of zero is not a positive real"));
    }
    match place {
        Place::Archimedean => Ok(q.abs()),
        Place::Finite(p) => {
            let k = valuation(q, p)?;
            Ok(rational_pow(&BigRational::from_integer(BigInt::from(p.get())), -k))
        }
    }
}

/// `∏_v |q|_v` over the archimedean place and every prime dividing the
/// numerator or denominator of `q`, in exact arithmetic.
pub fn product_formula_check(q: &BigRational) -> Result<BigRational> {
    if q.is_zero() {
        return Err(Error::domain("product formula is undefined at zero"));
    }
    let mut primes = prime_divisors(q.numer().magnitude())?;
    primes.extend(prime_divisors(q.denom().magnitude())?);
    primes.sort_unstable();
    primes.dedup();
    let mut acc = absolute_value(q, Place::Archimedean)?;
    for p in primes {
        acc *= absolute_value(q, Place::finite(p)?)?;
    }
    Ok(acc)
}

/// Natural log of a positive big integer without overflowing `f64`.
pub(crate) fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        n.to_f64().unwrap_or(f64::INFINITY).ln()
    } else {
        let shift = bits - 64;
        let top: BigInt = n >> shift;
        top.to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
    }
}

/// Natural log of a positive rational.
pub fn ln_rational(q: &BigRational) -> f64 {
    ln_bigint(q.numer()) - ln_bigint(q.denom())
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| ln_rational(q).exp())
}

/// The exact rational value of a finite float.
pub fn f64_to_rational(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain(format!("{x} is not finite")))
}

/// Parses `"p/q"`, an integer, or a decimal (optionally with exponent)
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let s = text.trim();
    let bad = || Error::domain(format!("cannot parse {text:?} as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::domain("zero denominator"));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut q = BigRational::from_integer(all) * rational_pow(&ten, exp - frac_part.len() as i64);
    if negative {
        q = -q;
    }
    Ok(q)
}

/// A finitely supported map from places to positive radii (value 1 off the
/// support), together with the ambient dimension of the polydisk it bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiusAssignment {
    d: usize,
    archimedean: f64,
    finite: BTreeMap<Prime, BigRational>,
}

impl RadiusAssignment {
    /// The unit assignment `r ≡ 1` in dimension `d`.
    pub fn unit(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("dimension must be positive"));
        }
        Ok(RadiusAssignment {
            d,
            archimedean: 1.0,
            finite: BTreeMap::new(),
        })
    }

    pub fn with_archimedean(mut self, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::domain(format!(
                "archimedean radius must be positive and finite, got {radius}"
            )));
        }
        self.archimedean = radius;
        Ok(self)
    }

    pub fn with_finite(mut self, p: u64, radius: BigRational) -> Result<Self> {
        let p = Prime::new(p)?;
        if !radius.is_positive() {
            return Err(Error::domain(format!("radius at {p} must be positive, got {radius}")));
        }
        self.finite.insert(p, radius);
        Ok(self)
    }

    /// Builds an assignment from `(place, value)` pairs; finite values are
    /// parsed exactly.
    pub fn from_pairs<'a>(
        d: usize,
        pairs: impl IntoIterator<Item = (Place, &'a RadiusValue)>,
    ) -> Result<Self> {
        let mut r = RadiusAssignment::unit(d)?;
        let mut seen = Vec::new();
        for (place, value) in pairs {
            if seen.contains(&place) {
                return Err(Error::domain(format!("place {place} listed twice")));
            }
            seen.push(place);
            r = match place {
                Place::Archimedean => r.with_archimedean(value.to_f64()?)?,
                Place::Finite(p) => r.with_finite(p.get(), value.to_rational()?)?,
            };
        }
        Ok(r)
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn with_dimension(mut self, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("dimension must be positive"));
        }
        self.d = d;
        Ok(self)
    }

    pub fn archimedean(&self) -> f64 {
        self.archimedean
    }

    /// Exact radius at a prime (1 off the support).
    pub fn finite(&self, p: Prime) -> BigRational {
        self.finite.get(&p).cloned().unwrap_or_else(BigRational::one)
    }

    pub fn finite_entries(&self) -> impl Iterator<Item = (Prime, &BigRational)> {
        self.finite.iter().map(|(p, r)| (*p, r))
    }

    /// Radius at any place as a float.
    pub fn get(&self, place: Place) -> f64 {
        match place {
            Place::Archimedean => self.archimedean,
            Place::Finite(p) => self.finite.get(&p).map_or(1.0, rational_to_f64),
        }
    }

    /// Places carrying an explicit value, in canonical order.
    pub fn support(&self) -> Vec<Place> {
        std::iter::once(Place::Archimedean)
            .chain(self.finite.keys().map(|p| Place::Finite(*p)))
            .collect()
    }

    /// `ln |r|`.
    pub fn ln_norm(&self) -> f64 {
        self.archimedean.ln() + self.finite.values().map(ln_rational).sum::<f64>()
    }

    /// Product of the finite-place radii, exactly.
    pub fn finite_norm_exact(&self) -> BigRational {
        self.finite.values().fold(BigRational::one(), |acc, r| acc * r)
    }

    /// `|r|` as an exact rational (the archimedean float taken at face value).
    pub fn norm_exact(&self) -> BigRational {
        f64_to_rational(self.archimedean).expect("archimedean radius is finite") * self.finite_norm_exact()
    }

    pub fn pointwise_mul(&self, other: &RadiusAssignment) -> Result<RadiusAssignment> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch {
                expected: self.d,
                found: other.d,
            });
        }
        let mut finite = self.finite.clone();
        for (p, r) in &other.finite {
            let entry = finite.entry(*p).or_insert_with(BigRational::one);
            *entry = &*entry * r;
        }
        RadiusAssignment {
            d: self.d,
            archimedean: 1.0,
            finite,
        }
        .with_archimedean(self.archimedean * other.archimedean)
    }

    /// Pointwise `k`-th power.
    pub fn pow(&self, k: u32) -> Result<RadiusAssignment> {
        let finite = self
            .finite
            .iter()
            .map(|(p, r)| (*p, num_traits::pow(r.clone(), k as usize)))
            .collect();
        RadiusAssignment {
            d: self.d,
            archimedean: 1.0,
            finite,
        }
        .with_archimedean(self.archimedean.powi(k as i32))
    }

    /// `true` iff `self(v) <= other(v)` at every place.
    pub fn le_pointwise(&self, other: &RadiusAssignment) -> bool {
        if self.archimedean > other.archimedean {
            return false;
        }
        let primes: Vec<Prime> = self.finite.keys().chain(other.finite.keys()).copied().collect();
        primes.into_iter().all(|p| self.finite(p) <= other.finite(p))
    }

    pub fn to_entries(&self) -> Vec<RadiusEntry> {
        self.support()
            .into_iter()
            .map(|place| {
                let value = match place {
                    Place::Archimedean => RadiusValue::Decimal(self.archimedean),
                    Place::Finite(p) => RadiusValue::Text(self.finite(p).to_string()),
                };
                RadiusEntry { place, value }
            })
            .collect()
    }
}

/// `|r|`, the finite product of the radii over the support.
pub fn radius_norm(r: &RadiusAssignment) -> f64 {
    r.ln_norm().exp()
}

/// A radius as written in scenario files: a `"p/q"` string or a number.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RadiusValue {
    Text(String),
    Decimal(f64),
}

impl RadiusValue {
    pub fn to_rational(&self) -> Result<BigRational> {
        match self {
            RadiusValue::Text(s) => parse_rational(s),
            // The shortest round-trip decimal is what the author typed.
            RadiusValue::Decimal(x) => parse_rational(&format!("{x:e}")),
        }
    }

    pub fn to_f64(&self) -> Result<f64> {
        match self {
            RadiusValue::Text(s) => Ok(rational_to_f64(&parse_rational(s)?)),
            RadiusValue::Decimal(x) => Ok(*x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadiusEntry {
    pub place: Place,
    pub value: RadiusValue,
}

impl RadiusEntry {
    pub fn to_assignment(d: usize, entries: &[RadiusEntry]) -> Result<RadiusAssignment> {
        RadiusAssignment::from_pairs(d, entries.iter().map(|e| (e.place, &e.value)))
    }
}
