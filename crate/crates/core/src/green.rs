//! Green's-matrix capacities.
//!
//! A Green's matrix is a real symmetric matrix indexed by a finite
//! Galois-stable point set, together with the partition of the indices into
//! Galois orbits. From it we compute
//!
//! * the sectional capacity `exp(-sᵗ G s)` of a weighted divisor `s`,
//! * the Cantor–Rumely capacity `exp(-Val(G))`, `Val` the matrix-game value,
//! * for negative definite `G`, the maximizer `ŝ` of `s ↦ sᵗ G s` on the
//!   simplex and `S⁺ = exp(-ŝᵗ G ŝ)`.
//!
//! At an interior maximizer every component of `G ŝ` equals `ŝᵗ G ŝ`, so
//! `ŝ ∝ G⁻¹𝟙` and the maximum is `1 / (𝟙ᵗ G⁻¹ 𝟙)`. That linear-algebra route
//! and the game route meet at the same number, which is what ties `S⁺` to
//! the Cantor–Rumely capacity.

use crate::error::{Error, Result};
use crate::game::{game_value_with, GameMatrix};
use crate::linalg::{Dense, Lu};
use crate::tolerance::Tolerances;

/// Index permutation, stored 0-based as the image of each index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidOrbits(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
        }
        Ok(Permutation(images))
    }

    /// From one-line notation with 1-based images, e.g. `[2, 1]` swaps two points.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidOrbits("one-line notation is 1-based".into()));
        }
        Permutation::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GreensMatrix {
    m: Dense,
    orbits: Vec<Vec<usize>>,
}

impl GreensMatrix {
    /// Symmetric matrix with every point in its own orbit.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("Green's matrix must be at least 1x1"));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::domain(format!("non-finite entry {bad}")));
        }
        let m = Dense::new(n, entries);
        check_symmetric(&m)?;
        Ok(GreensMatrix {
            m,
            orbits: (0..n).map(|i| vec![i]).collect(),
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        GreensMatrix::new(n, rows.concat())
    }

    /// Replaces the orbit partition (0-based indices).
    pub fn with_orbits(mut self, orbits: Vec<Vec<usize>>) -> Result<Self> {
        let n = self.size();
        let mut owner = vec![None; n];
        for (k, orbit) in orbits.iter().enumerate() {
            if orbit.is_empty() {
                return Err(Error::InvalidOrbits(format!("orbit #{k} is empty")));
            }
            for &i in orbit {
                if i >= n {
                    return Err(Error::InvalidOrbits(format!("index {i} out of range 0..{n}")));
                }
                if owner[i].replace(k).is_some() {
                    return Err(Error::InvalidOrbits(format!("index {i} lies in two orbits")));
                }
            }
        }
        if let Some(i) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidOrbits(format!("index {i} lies in no orbit")));
        }
        self.orbits = orbits;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.m.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.m.a
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.m.at(i, j)
    }

    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    pub fn quadratic_form(&self, s: &[f64]) -> f64 {
        self.m.quadratic_form(s)
    }

    pub fn as_game(&self) -> GameMatrix {
        GameMatrix::new(self.size(), self.m.a.clone()).expect("validated on construction")
    }
}

fn check_symmetric(m: &Dense) -> Result<()> {
    for i in 0..m.n {
        for j in i + 1..m.n {
            if m.at(i, j) != m.at(j, i) {
                return Err(Error::AsymmetricMatrix { i, j });
            }
        }
    }
    Ok(())
}

/// Checks exact symmetry and invariance `G[σi][σj] = G[i][j]` under each
/// generator. Generators must map every orbit onto itself.
pub fn validate(g: &GreensMatrix, generators: &[Permutation]) -> Result<()> {
    check_symmetric(&g.m)?;
    let n = g.size();
    for (k, sigma) in generators.iter().enumerate() {
        if sigma.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: sigma.len(),
            });
        }
        for orbit in &g.orbits {
            if let Some(&i) = orbit.iter().find(|&&i| !orbit.contains(&sigma.apply(i))) {
                return Err(Error::InvalidOrbits(format!(
                    "generator #{k} moves index {i} out of its orbit"
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if g.at(sigma.apply(i), sigma.apply(j)) != g.at(i, j) {
                    return Err(Error::SymmetryViolation { i, j, generator: k });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// Entries sum to one.
    Simplex,
    /// Multiplicities of a divisor `Σ s_i x_i`.
    Divisor,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    values: Vec<f64>,
    normalization: Normalization,
}

impl WeightVector {
    pub fn divisor(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return Err(Error::domain(format!("weights must be nonnegative, got {bad}")));
        }
        Ok(WeightVector {
            values,
            normalization: Normalization::Divisor,
        })
    }

    pub fn simplex(values: Vec<f64>) -> Result<Self> {
        let mut w = WeightVector::divisor(values)?;
        let sum: f64 = w.values.iter().sum();
        if (sum - 1.0).abs() > 1e-12 * w.values.len().max(1) as f64 {
            return Err(Error::domain(format!("simplex weights sum to {sum}, not 1")));
        }
        w.normalization = Normalization::Simplex;
        Ok(w)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Membership in the open simplex face: every entry strictly positive.
    pub fn is_interior(&self) -> bool {
        self.values.iter().all(|&x| x > 0.0)
    }

    /// Returns the first orbit on which the weights are not constant.
    pub fn asymmetric_orbit(&self, orbits: &[Vec<usize>], tol: f64) -> Option<usize> {
        let scale = self.values.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        orbits.iter().position(|orbit| {
            let first = self.values[orbit[0]];
            orbit
                .iter()
                .any(|&i| (self.values[i] - first).abs() > tol * scale)
        })
    }
}

/// `exp(-sᵗ G s)`.
pub fn sectional_capacity_from_weights(g: &GreensMatrix, s: &WeightVector) -> Result<f64> {
    sectional_capacity_from_weights_with(g, s, &Tolerances::default())
}

pub fn sectional_capacity_from_weights_with(
    g: &GreensMatrix,
    s: &WeightVector,
    tol: &Tolerances,
) -> Result<f64> {
    if s.values.len() != g.size() {
        return Err(Error::DimensionMismatch {
            expected: g.size(),
            found: s.values.len(),
        });
    }
    if let Some(orbit) = s.asymmetric_orbit(&g.orbits, tol.f_symmetry) {
        return Err(Error::NotFSymmetric { orbit });
    }
    Ok((-g.quadratic_form(&s.values)).exp())
}

/// `exp(-Val(G))`.
pub fn cantor_rumely_capacity(g: &GreensMatrix) -> Result<f64> {
    cantor_rumely_capacity_with(g, &Tolerances::default())
}

pub fn cantor_rumely_capacity_with(g: &GreensMatrix, tol: &Tolerances) -> Result<f64> {
    Ok((-game_value_with(&g.as_game(), tol)?.value).exp())
}

/// Order of the first leading principal minor of `-G` that is not
/// positive, or `None` if all are.
fn failing_minor(g: &GreensMatrix, tol: &Tolerances) -> Option<usize> {
    let neg = Dense::new(g.size(), g.m.a.iter().map(|x| -x).collect());
    let scale = neg.max_abs();
    if scale == 0.0 {
        return Some(1);
    }
    (1..=g.size()).find(|&k| {
        let minor = Lu::factor(&neg.leading(k)).determinant();
        !(minor > tol.definiteness * scale.powi(k as i32))
    })
}

/// Sylvester's criterion on `-G`.
pub fn is_negative_definite(g: &GreensMatrix) -> bool {
    is_negative_definite_with(g, &Tolerances::default())
}

pub fn is_negative_definite_with(g: &GreensMatrix, tol: &Tolerances) -> bool {
    failing_minor(g, tol).is_none()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Equilibrium {
    pub weights: WeightVector,
    /// `ŝᵗ G ŝ`, the common value of the components of `G ŝ`.
    pub lambda: f64,
}

pub fn equilibrium_weights(g: &GreensMatrix) -> Result<Equilibrium> {
    equilibrium_weights_with(g, &Tolerances::default())
}

pub fn equilibrium_weights_with(g: &GreensMatrix, tol: &Tolerances) -> Result<Equilibrium> {
    if let Some(order) = failing_minor(g, tol) {
        return Err(Error::NotNegativeDefinite { order });
    }
    let n = g.size();
    let lu = Lu::factor(&g.m);
    if lu.is_singular() {
        return Err(Error::SingularMatrix {
            condition: f64::INFINITY,
        });
    }
    let condition = g.m.one_norm() * lu.inverse().one_norm();
    if !(condition <= tol.condition_limit) {
        return Err(Error::SingularMatrix { condition });
    }
    let x = lu.solve(&vec![1.0; n]);
    let total: f64 = x.iter().sum();
    let lambda = 1.0 / total;
    let s_hat: Vec<f64> = x.iter().map(|xi| xi / total).collect();
    if s_hat.iter().any(|&v| v <= 0.0) {
        return Err(Error::BoundaryOptimum { weights: s_hat });
    }
    let gs = g.m.mul_vec(&s_hat);
    let spread = gs.iter().map(|v| (v - lambda).abs()).fold(0.0, f64::max);
    if spread > tol.equal_components * lambda.abs().max(1.0) {
        return Err(Error::NumericFailure(format!(
            "components of G s_hat differ from {lambda} by {spread:e}"
        )));
    }
    let weights = WeightVector {
        values: s_hat,
        normalization: Normalization::Simplex,
    };
    if let Some(orbit) = weights.asymmetric_orbit(&g.orbits, tol.f_symmetry) {
        return Err(Error::NotFSymmetric { orbit });
    }
    Ok(Equilibrium { weights, lambda })
}

/// `S⁺ = exp(-ŝᵗ G ŝ)` at the interior equilibrium.
pub fn s_plus_support(g: &GreensMatrix) -> Result<f64> {
    s_plus_support_with(g, &Tolerances::default())
}

pub fn s_plus_support_with(g: &GreensMatrix, tol: &Tolerances) -> Result<f64> {
    Ok((-equilibrium_weights_with(g, tol)?.lambda).exp())
}
