//! Explicit points with all conjugates in a supercritical adelic polydisk.
//!
//! Given `r` with `|r| > 1`, we look for `α ∈ ℚ*` and `n ≥ 1` such that the
//! rescaled radii `r(v)·|α|_v^{1/n}` are at least 1 everywhere and exceed 1
//! at the archimedean place. Every point whose coordinates are `ζ·α^{-1/n}`,
//! `ζ` a root of unity, then has `|ζ·α^{-1/n}|_v = |α|_v^{-1/n} ≤ r(v)` at
//! every place and for every conjugate, and such points are Zariski dense.
//!
//! `α` is built from the primes in the support of `r`: for each `n` the
//! exponent at `p` is the largest `e` with `p^e ≤ r(p)^n`, which absorbs as
//! much of the finite-place radius as the constraint `≥ 1` allows. Finite
//! places are handled exactly through `n`-th powers; `α^{1/n}` is never
//! materialized there.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::adelic::{ln_rational, prime_divisors, rational_pow, rational_to_f64, valuation, Place, Prime, RadiusAssignment};
use crate::error::{Error, Result};

/// Largest `n` tried by [`find_scaling`].
pub const MAX_ROOT_DEGREE: u32 = 10_000;

/// Required excess of `|r|` over 1.
pub const SUPERCRITICAL_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct WitnessScaling {
    alpha: BigRational,
    n: u32,
    radii: RadiusAssignment,
    scaled_archimedean: f64,
    // r(p)^n · |α|_p, the n-th power of the rescaled radius
    scaled_finite_pow: BTreeMap<Prime, BigRational>,
}

impl WitnessScaling {
    /// Validates `(α, n)` against `r`: the rescaled radii must be `≥ 1` at
    /// every place (exactly) and `> 1` at the archimedean place.
    pub fn new(radii: &RadiusAssignment, alpha: BigRational, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("root degree n must be positive"));
        }
        if alpha.is_zero() {
            return Err(Error::domain("alpha must be nonzero"));
        }
        let mut primes: Vec<Prime> = radii.finite_entries().map(|(p, _)| p).collect();
        for p in prime_divisors(alpha.numer().magnitude())?
            .into_iter()
            .chain(prime_divisors(alpha.denom().magnitude())?)
        {
            primes.push(Prime::new(p)?);
        }
        primes.sort();
        primes.dedup();

        let mut scaled_finite_pow = BTreeMap::new();
        for p in primes {
            let k = valuation(&alpha, p)?;
            let pb = BigRational::from_integer(BigInt::from(p.get()));
            let scaled = num_traits::pow(radii.finite(p), n as usize) * rational_pow(&pb, -k);
            if scaled < BigRational::one() {
                return Err(Error::domain(format!(
                    "rescaled radius at {p} is below 1 (n-th power {scaled})"
                )));
            }
            scaled_finite_pow.insert(p, scaled);
        }
        let ln_scaled = radii.archimedean().ln() + ln_rational(&alpha.abs()) / n as f64;
        if !(ln_scaled > 0.0) {
            return Err(Error::domain("rescaled archimedean radius is not above 1"));
        }
        Ok(WitnessScaling {
            alpha,
            n,
            radii: radii.clone(),
            scaled_archimedean: ln_scaled.exp(),
            scaled_finite_pow,
        })
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn radii(&self) -> &RadiusAssignment {
        &self.radii
    }

    /// `r(v)·|α|_v^{1/n}`, as a float.
    pub fn scaled_radius(&self, place: Place) -> f64 {
        match place {
            Place::Archimedean => self.scaled_archimedean,
            Place::Finite(p) => self
                .scaled_finite_pow
                .get(&p)
                .map_or(1.0, |q| (ln_rational(q) / self.n as f64).exp()),
        }
    }

    /// Exact `n`-th power of the rescaled radius at a finite place.
    pub fn scaled_finite_power(&self, p: Prime) -> BigRational {
        self.scaled_finite_pow.get(&p).cloned().unwrap_or_else(BigRational::one)
    }

    pub fn places(&self) -> Vec<Place> {
        std::iter::once(Place::Archimedean)
            .chain(self.scaled_finite_pow.keys().map(|p| Place::Finite(*p)))
            .collect()
    }
}

/// Deterministic search for `(α, n)`, trying `n = 1, 2, …` up to
/// [`MAX_ROOT_DEGREE`].
pub fn find_scaling(r: &RadiusAssignment) -> Result<WitnessScaling> {
    let ln_norm = r.ln_norm();
    if !(ln_norm > SUPERCRITICAL_MARGIN.ln_1p()) {
        return Err(Error::NotSupercritical { norm: ln_norm.exp() });
    }

    // r(p)^n / p^e ∈ [1, p), kept as an unreduced fraction num/den
    struct Track {
        p: BigInt,
        ln_p: f64,
        a: BigInt,
        b: BigInt,
        num: BigInt,
        den: BigInt,
        e: i64,
    }
    let mut tracks: Vec<Track> = r
        .finite_entries()
        .map(|(p, rp)| Track {
            p: BigInt::from(p.get()),
            ln_p: (p.get() as f64).ln(),
            a: rp.numer().clone(),
            b: rp.denom().clone(),
            num: BigInt::one(),
            den: BigInt::one(),
            e: 0,
        })
        .collect();
    let ln_arch = r.archimedean().ln();

    for n in 1..=MAX_ROOT_DEGREE {
        let mut ln_alpha = 0.0;
        for t in &mut tracks {
            t.num *= &t.a;
            t.den *= &t.b;
            while t.num >= &t.den * &t.p {
                t.den *= &t.p;
                t.e += 1;
            }
            while t.num < t.den {
                t.num *= &t.p;
                t.e -= 1;
            }
            ln_alpha += t.e as f64 * t.ln_p;
        }
        if ln_arch + ln_alpha / n as f64 > 0.0 {
            let alpha = tracks
                .iter()
                .fold(BigRational::one(), |acc, t| {
                    acc * rational_pow(&BigRational::from_integer(t.p.clone()), t.e)
                });
            // the exact constructor re-derives the archimedean margin; a
            // rounding-level disagreement just moves the search on
            if let Ok(scaling) = WitnessScaling::new(r, alpha, n) {
                return Ok(scaling);
            }
        }
    }
    Err(Error::SearchExhausted {
        max_n: MAX_ROOT_DEGREE as u64,
    })
}

/// A primitive root of unity `exp(2πi·index/order)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootOfUnity {
    pub order: u64,
    pub index: u64,
}

impl RootOfUnity {
    pub fn new(order: u64, index: u64) -> Result<Self> {
        if order == 0 || index >= order || index.gcd(&order) != 1 && order != 1 {
            return Err(Error::domain(format!(
                "({order}, {index}) does not name a primitive root of unity"
            )));
        }
        Ok(RootOfUnity { order, index })
    }

    pub fn one() -> Self {
        RootOfUnity { order: 1, index: 0 }
    }
}

/// A point of `A^d` with coordinates `ζ_i · α^{-1/n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WitnessPoint {
    pub coordinates: Vec<RootOfUnity>,
    pub alpha: BigRational,
    pub n: u32,
}

impl WitnessPoint {
    pub fn new(coordinates: Vec<RootOfUnity>, alpha: BigRational, n: u32) -> Result<Self> {
        if n == 0 || alpha.is_zero() {
            return Err(Error::domain("witness needs nonzero alpha and positive n"));
        }
        Ok(WitnessPoint { coordinates, alpha, n })
    }
}

/// Checks that every conjugate of every coordinate of `point` lies in the
/// disc of radius `r(v)` at every place. Conjugates share the absolute value
/// `|α|_v^{-1/n}`; finite places are compared exactly through `n`-th powers.
pub fn verify_point(point: &WitnessPoint, r: &RadiusAssignment, archimedean_tol: f64) -> bool {
    if point.coordinates.len() != r.dimension() {
        return false;
    }
    let ln_size = -ln_rational(&point.alpha.abs()) / point.n as f64;
    if ln_size > r.archimedean().ln() + archimedean_tol {
        return false;
    }
    let mut primes: Vec<u64> = r.finite_entries().map(|(p, _)| p.get()).collect();
    match (
        prime_divisors(point.alpha.numer().magnitude()),
        prime_divisors(point.alpha.denom().magnitude()),
    ) {
        (Ok(a), Ok(b)) => primes.extend(a.into_iter().chain(b)),
        _ => return false,
    }
    primes.sort_unstable();
    primes.dedup();
    primes.into_iter().all(|p| {
        let Ok(p) = Prime::new(p) else { return false };
        let Ok(k) = valuation(&point.alpha, p) else { return false };
        // |z|_p^n = |α|_p^{-1} = p^k must not exceed r(p)^n
        let pb = BigRational::from_integer(BigInt::from(p.get()));
        rational_pow(&pb, k) <= num_traits::pow(r.finite(p), point.n as usize)
    })
}

/// Primitive roots of unity ordered by `(order, index)`.
fn roots_of_unity() -> impl Iterator<Item = RootOfUnity> {
    (1u64..).flat_map(|order| {
        (0..order)
            .filter(move |&i| if order == 1 { i == 0 } else { i.gcd(&order) == 1 })
            .map(move |index| RootOfUnity { order, index })
    })
}

/// The first `count` points of the root-of-unity lattice `C = μ^d`, scaled
/// by `α^{-1/n}`. Tuples are listed by the largest position (in the root
/// ordering) they use, then lexicographically, so every prefix is distinct
/// and starts at `(1, …, 1)`.
pub fn enumerate_witnesses(s: &WitnessScaling, count: usize) -> Vec<WitnessPoint> {
    let d = s.radii.dimension();
    let mut roots: Vec<RootOfUnity> = Vec::new();
    let mut source = roots_of_unity();
    let mut out = Vec::with_capacity(count);
    let mut layer = 0usize;
    while out.len() < count {
        while roots.len() <= layer {
            roots.push(source.next().expect("infinite iterator"));
        }
        let mut idx = vec![0usize; d];
        'tuples: loop {
            if idx.contains(&layer) {
                out.push(WitnessPoint {
                    coordinates: idx.iter().map(|&i| roots[i]).collect(),
                    alpha: s.alpha.clone(),
                    n: s.n,
                });
                if out.len() == count {
                    break;
                }
            }
            for pos in (0..d).rev() {
                if idx[pos] < layer {
                    idx[pos] += 1;
                    idx[pos + 1..].iter_mut().for_each(|x| *x = 0);
                    continue 'tuples;
                }
            }
            break;
        }
        layer += 1;
    }
    out
}

/// Float view of `|α|_v^{-1/n}` at a place, for reports.
pub fn witness_abs(point: &WitnessPoint, place: Place) -> f64 {
    match place {
        Place::Archimedean => (-ln_rational(&point.alpha.abs()) / point.n as f64).exp(),
        Place::Finite(p) => {
            let k = valuation(&point.alpha, p).unwrap_or(0);
            let pb = BigRational::from_integer(BigInt::from(p.get()));
            rational_to_f64(&rational_pow(&pb, k)).powf(1.0 / point.n as f64)
        }
    }
}
