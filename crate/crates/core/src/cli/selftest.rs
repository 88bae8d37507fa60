//! Seeded invariant suites behind the `selftest` command.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::adelic::{product_formula_check, RadiusAssignment};
use crate::capacity::{
    curve_pullback_identity_check, polydisk_sectional_capacity, pullback_sectional_capacity,
    MorphismDescriptor, PullbackCandidate,
};
use crate::fekete::{enumerate_witnesses, find_scaling, verify_point};
use crate::game::{game_value, GameMatrix};
use crate::green::{equilibrium_weights, GreensMatrix};
use crate::oracle::{
    char_poly_by_interpolation, game_value_2x2, grid_max_quadratic, polydisk_capacity_exact,
    pullback_capacity_exact, GridSpec,
};
use crate::skolem::{char_poly, cayley_hamilton_check, is_injective, monomial_exponents, ExponentSet, MultiplicationMatrix};

pub const SEED: u64 = 0x5eed_ca9a_c17e;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
}

impl SuiteResult {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let num: i64 = rng.gen_range(1..=1_000_000) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=1_000_000);
    BigRational::new(num.into(), den.into())
}

fn random_radii(rng: &mut ChaCha8Rng, d: usize) -> RadiusAssignment {
    let mut r = RadiusAssignment::unit(d)
        .unwrap()
        .with_archimedean(rng.gen_range(0.1..10.0))
        .unwrap();
    for &p in PRIMES.iter().take(rng.gen_range(0..=5)) {
        let q = BigRational::new(rng.gen_range(1..=60i64).into(), rng.gen_range(1..=60i64).into());
        r = r.with_finite(p, q).unwrap();
    }
    r
}

fn relative_gap(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs().max(f64::MIN_POSITIVE)
}

fn suite(name: &'static str, total: usize, mut case: impl FnMut() -> bool) -> SuiteResult {
    let passed = (0..total).filter(|_| case()).count();
    SuiteResult { name, passed, total }
}

fn random_game(rng: &mut ChaCha8Rng, n: usize) -> GameMatrix {
    GameMatrix::new(n, (0..n * n).map(|_| rng.gen_range(-5.0..5.0)).collect()).unwrap()
}

/// `-(AᵀA + εI)`, redrawn until the equilibrium is interior.
fn random_negative_definite(rng: &mut ChaCha8Rng, n: usize) -> GreensMatrix {
    loop {
        let a: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut g = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = (0..n).map(|k| a[k * n + i] * a[k * n + j]).sum();
                g[i * n + j] = -dot - if i == j { 0.2 } else { 0.0 };
            }
        }
        for i in 0..n {
            for j in 0..i {
                g[i * n + j] = g[j * n + i];
            }
        }
        let m = GreensMatrix::new(n, g).unwrap();
        if equilibrium_weights(&m).is_ok() {
            return m;
        }
    }
}

pub fn run_all() -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let rng = &mut rng;
    let mut out = Vec::new();

    out.push(suite("product formula", 500, || {
        product_formula_check(&random_rational(rng)).is_ok_and(|v| v.is_one())
    }));

    out.push(suite("polydisk capacity vs exact", 300, || {
        let d = rng.gen_range(1..=5);
        let r = random_radii(rng, d);
        let fast = polydisk_sectional_capacity(d, &r).unwrap();
        relative_gap(fast, polydisk_capacity_exact(d, &r).unwrap()) <= 1e-12
    }));

    out.push(suite("polydisk multiplicativity", 300, || {
        let d = rng.gen_range(1..=4);
        let (r, s) = (random_radii(rng, d), random_radii(rng, d));
        let rs = r.pointwise_mul(&s).unwrap();
        let lhs = polydisk_sectional_capacity(d, &rs).unwrap();
        let rhs = polydisk_sectional_capacity(d, &r).unwrap() * polydisk_sectional_capacity(d, &s).unwrap();
        relative_gap(lhs, rhs) <= 1e-12
    }));

    out.push(suite("pullback capacity vs exact", 300, || {
        let d = rng.gen_range(1..=3);
        let m = MorphismDescriptor::new(d, rng.gen_range(1..=12), rng.gen_range(1..=4)).unwrap();
        let c = PullbackCandidate::new(m, random_radii(rng, d)).unwrap();
        relative_gap(pullback_sectional_capacity(&c).unwrap(), pullback_capacity_exact(&c).unwrap()) <= 1e-12
    }));

    out.push(suite("curve pullback identity", 300, || {
        let m = rng.gen_range(1..=6u64);
        let deg = m * rng.gen_range(1..=6u64);
        let r = random_radii(rng, 1);
        curve_pullback_identity_check(deg, m, &r, 1e-12).is_ok_and(|c| c.pass)
    }));

    out.push(suite("2x2 game vs closed form", 500, || {
        let g = random_game(rng, 2);
        (game_value(&g).unwrap().value - game_value_2x2(&g).unwrap()).abs() <= 1e-8
    }));

    out.push(suite("game shift invariance", 300, || {
        let n = rng.gen_range(1..=5);
        let g = random_game(rng, n);
        let c = rng.gen_range(-10.0..10.0);
        let shifted = game_value(&g.shifted(c).unwrap()).unwrap().value;
        (shifted - game_value(&g).unwrap().value - c).abs() <= 1e-8
    }));

    out.push(suite("equilibrium vs game and grid", 20, || {
        let n = rng.gen_range(1..=3);
        let g = random_negative_definite(rng, n);
        let e = equilibrium_weights(&g).unwrap();
        let val = game_value(&g.as_game()).unwrap().value;
        let (grid, _) = grid_max_quadratic(&g, &GridSpec::new(n, 1e-3).unwrap()).unwrap();
        (e.lambda - val).abs() <= 1e-6 && (e.lambda - grid).abs() <= 2e-3
    }));

    out.push(suite("monomial exponents injective", 200, || {
        let n = rng.gen_range(1..=4);
        let size = rng.gen_range(1..=25);
        let mut points: Vec<Vec<u64>> = (0..size).map(|_| (0..n).map(|_| rng.gen_range(0..6)).collect()).collect();
        points.sort();
        points.dedup();
        let sigma = ExponentSet::new(points).unwrap();
        is_injective(&sigma, &monomial_exponents(&sigma))
    }));

    out.push(suite("Cayley-Hamilton", 60, || {
        let n = rng.gen_range(1..=5);
        let rows: Vec<Vec<BigRational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9..=9)), BigInt::from(rng.gen_range(1..=4))))
                    .collect()
            })
            .collect();
        let z = MultiplicationMatrix::from_rows(rows).unwrap();
        cayley_hamilton_check(&z) && char_poly(&z) == char_poly_by_interpolation(&z)
    }));

    out.push(suite("witness points", 50, || {
        let d = rng.gen_range(1..=3);
        let mut r = RadiusAssignment::unit(d).unwrap();
        for _ in 0..rng.gen_range(0..=3) {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            let k: i64 = rng.gen_range(-3..=3);
            let q = crate::adelic::rational_pow(&BigRational::from_integer(p.into()), k);
            r = r.with_finite(p, q).unwrap();
        }
        // archimedean radius is still 1 here
        let ln_finite = r.ln_norm();
        let margin: f64 = 10f64.powf(rng.gen_range(-6.0..0.0));
        let arch = ((1.0 + margin).ln() - ln_finite).exp();
        let r = r.with_archimedean(arch).unwrap();
        let Ok(scaling) = find_scaling(&r) else { return false };
        enumerate_witnesses(&scaling, 10).iter().all(|pt| verify_point(pt, &r, 1e-12))
    }));

    out
}
