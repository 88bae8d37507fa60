//! Brute-force and exact cross-checks, deliberately sharing no code path
//! with the routines they check.
//!
//! * lattice search over the probability simplex for `max sᵗ G s` and for
//!   game values,
//! * the closed form of a 2×2 zero-sum game,
//! * capacity formulas recomputed in exact rational arithmetic with an
//!   integer `n`-th root for fractional exponents,
//! * characteristic polynomials by exact determinants and interpolation.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::adelic::RadiusAssignment;
use crate::capacity::PullbackCandidate;
use crate::error::{Error, Result};
use crate::game::GameMatrix;
use crate::green::{GreensMatrix, WeightVector};
use crate::skolem::{MultiplicationMatrix, Polynomial};

/// Largest dimension the lattice oracles accept.
pub const GRID_DIMENSION_CAP: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dimension: usize,
    step: f64,
}

impl GridSpec {
    pub fn new(dimension: usize, step: f64) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::domain("grid dimension must be positive"));
        }
        if dimension > GRID_DIMENSION_CAP {
            return Err(Error::ScaleCap {
                n: dimension,
                cap: GRID_DIMENSION_CAP,
            });
        }
        if !(step > 0.0 && step <= 1.0) {
            return Err(Error::domain(format!("grid step must lie in (0, 1], got {step}")));
        }
        Ok(GridSpec { dimension, step })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    fn divisions(&self) -> usize {
        ((1.0 / self.step).round() as usize).max(1)
    }
}

/// Visits every lattice point `k/N` of the simplex, `Σ k_i = N`, in
/// lexicographic order of `k`.
fn for_each_lattice_point(n: usize, total: usize, mut f: impl FnMut(&[usize])) {
    let mut k = vec![0usize; n];
    fn rec(k: &mut [usize], pos: usize, remaining: usize, f: &mut dyn FnMut(&[usize])) {
        if pos + 1 == k.len() {
            k[pos] = remaining;
            f(k);
            return;
        }
        for v in 0..=remaining {
            k[pos] = v;
            rec(k, pos + 1, remaining - v, f);
        }
    }
    rec(&mut k, 0, total, &mut f);
}

/// Maximum of `sᵗ G s` over the simplex lattice with the given step. Ties go
/// to the lexicographically first lattice point.
pub fn grid_max_quadratic(g: &GreensMatrix, spec: &GridSpec) -> Result<(f64, WeightVector)> {
    let n = g.size();
    if n > GRID_DIMENSION_CAP {
        return Err(Error::ScaleCap {
            n,
            cap: GRID_DIMENSION_CAP,
        });
    }
    if spec.dimension != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: spec.dimension,
        });
    }
    let total = spec.divisions();
    let scale = total as f64;
    let form = |x: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += x[i] * g.at(i, j) * x[j];
            }
        }
        acc
    };
    let bilinear = |x: &[f64], y: &[f64]| -> f64 {
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += x[i] * g.at(i, j) * y[j];
            }
        }
        acc
    };

    if n == 1 {
        let value = g.at(0, 0);
        return Ok((value, WeightVector::simplex(vec![1.0])?));
    }

    // Fix all but the last two coordinates; along the remaining segment
    // s(a) = v + a·w the form is the quadratic c0 + 2a·c1 + a²·c2.
    let mut best = f64::NEG_INFINITY;
    let mut best_k = vec![0usize; n];
    let mut w = vec![0.0; n];
    w[n - 2] = 1.0 / scale;
    w[n - 1] = -1.0 / scale;
    let c2 = form(&w);
    let mut v = vec![0.0; n];
    for_each_lattice_point(n - 1, total, |prefix| {
        // prefix = (k_1, …, k_{n-2}, R) where R is shared by the last two
        let rest = prefix[n - 2];
        for i in 0..n - 2 {
            v[i] = prefix[i] as f64 / scale;
        }
        v[n - 2] = 0.0;
        v[n - 1] = rest as f64 / scale;
        let c0 = form(&v);
        let c1 = bilinear(&v, &w);
        for a in 0..=rest {
            let af = a as f64;
            let value = c0 + af * (2.0 * c1 + af * c2);
            if value > best {
                best = value;
                best_k[..n - 2].copy_from_slice(&prefix[..n - 2]);
                best_k[n - 2] = a;
                best_k[n - 1] = rest - a;
            }
        }
    });
    let s: Vec<f64> = best_k.iter().map(|&k| k as f64 / scale).collect();
    let value = form(&s);
    Ok((value, WeightVector::simplex(s)?))
}

/// Lower and upper bounds on `Val(G)` from lattice strategies: the best
/// guarantee of a lattice row strategy and of a lattice column strategy.
pub fn grid_game_bounds(g: &GameMatrix, spec: &GridSpec) -> Result<(f64, f64)> {
    let n = g.size();
    if n > GRID_DIMENSION_CAP {
        return Err(Error::ScaleCap {
            n,
            cap: GRID_DIMENSION_CAP,
        });
    }
    if spec.dimension != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: spec.dimension,
        });
    }
    let total = spec.divisions();
    let scale = total as f64;
    let mut lower = f64::NEG_INFINITY;
    let mut upper = f64::INFINITY;
    for_each_lattice_point(n, total, |k| {
        let mut row_worst = f64::INFINITY;
        let mut col_worst = f64::NEG_INFINITY;
        for j in 0..n {
            let mut row_pay = 0.0;
            let mut col_pay = 0.0;
            for i in 0..n {
                row_pay += k[i] as f64 * g.at(i, j);
                col_pay += g.at(j, i) * k[i] as f64;
            }
            row_worst = row_worst.min(row_pay / scale);
            col_worst = col_worst.max(col_pay / scale);
        }
        lower = lower.max(row_worst);
        upper = upper.min(col_worst);
    });
    Ok((lower, upper))
}

/// Value of a 2×2 game: the saddle value if one exists, otherwise
/// `(ad − bc) / (a + d − b − c)`.
pub fn game_value_2x2(g: &GameMatrix) -> Result<f64> {
    if g.size() != 2 {
        return Err(Error::domain(format!("expected a 2x2 game, got {0}x{0}", g.size())));
    }
    let (a, b, c, d) = (g.at(0, 0), g.at(0, 1), g.at(1, 0), g.at(1, 1));
    let maximin = a.min(b).max(c.min(d));
    let minimax = a.max(c).min(b.max(d));
    if maximin == minimax {
        return Ok(maximin);
    }
    Ok((a * d - b * c) / (a + d - b - c))
}

/// `x^{num/den}` to double precision from an exact rational `x > 0`, via an
/// integer `den`-th root carried with at least 128 guard bits.
pub fn exact_power(x: &BigRational, num: u64, den: u64) -> Result<f64> {
    if !x.is_positive() {
        return Err(Error::domain("exact_power needs a positive base"));
    }
    if den == 0 {
        return Err(Error::domain("zero root degree"));
    }
    let g = num.gcd(&den).max(1);
    let (num, den) = (num / g, den / g);
    let powered = num_traits::pow(x.clone(), num as usize);
    if den == 1 {
        return powered
            .to_f64()
            .ok_or_else(|| Error::NumericFailure("exact power out of range".into()));
    }
    // enough fractional bits that the root has 128 significant bits
    let log2_root = (powered.numer().bits() as f64 - powered.denom().bits() as f64) / den as f64;
    let frac_bits = 130 + (-log2_root).max(0.0).ceil() as u64;
    let shifted: BigUint = ((powered.numer().magnitude() << (frac_bits * den)) / powered.denom().magnitude()).clone();
    let root = shifted.nth_root(u32::try_from(den).map_err(|_| Error::domain("root degree too large"))?);
    let value = BigRational::new(BigInt::from(root), BigInt::one() << frac_bits);
    value
        .to_f64()
        .ok_or_else(|| Error::NumericFailure("exact power out of range".into()))
}

/// `|r|^d` recomputed exactly.
pub fn polydisk_capacity_exact(d: usize, r: &RadiusAssignment) -> Result<f64> {
    exact_power(&r.norm_exact(), d as u64, 1)
}

/// `|r|^{d·deg/m^{d+1}}` recomputed exactly.
pub fn pullback_capacity_exact(c: &PullbackCandidate) -> Result<f64> {
    let m = &c.morphism;
    let den = m
        .multiplicity
        .checked_pow(m.d as u32 + 1)
        .ok_or_else(|| Error::domain("multiplicity power overflows"))?;
    exact_power(&c.radii.norm_exact(), m.d as u64 * m.degree, den)
}

fn exact_determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// `det(tI − z)` sampled at `t = 0, …, r` and interpolated.
pub fn char_poly_by_interpolation(z: &MultiplicationMatrix) -> Polynomial {
    let r = z.rank();
    let xs: Vec<BigRational> = (0..=r as i64).map(|t| BigRational::from_integer(t.into())).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|t| {
            let m = (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| {
                            let diag = if i == j { t.clone() } else { BigRational::zero() };
                            diag - z.at(i, j)
                        })
                        .collect()
                })
                .collect();
            exact_determinant(m)
        })
        .collect();

    let mut out = Polynomial(vec![BigRational::zero(); r + 1]);
    for (i, (xi, yi)) in xs.iter().zip(&ys).enumerate() {
        let mut basis = Polynomial(vec![BigRational::one()]);
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Polynomial(vec![-xj.clone(), BigRational::one()]));
                denom *= xi - xj;
            }
        }
        let scale = yi / denom;
        for (o, b) in out.0.iter_mut().zip(&basis.0) {
            *o += b * &scale;
        }
    }
    out
}
