//! Sectional capacities of adelic polydisks and of their pullbacks under
//! finite morphisms `π: X → ℙ^d` with `π⁻¹(H) = m(π)·X₁`.
//!
//! Everything is evaluated in log space: `S = exp(e · ln|r|)` with the
//! appropriate exponent `e`, so large `d · deg(π)` does not overflow
//! intermediate powers.

use crate::adelic::RadiusAssignment;
use crate::error::{Error, Result};

/// The numerical shadow of a finite morphism: fiber dimension, degree, the
/// multiplicity `m(π)` of the pulled-back hyperplane, and optionally the
/// self-intersection number `|X₁'|` of the boundary divisor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MorphismDescriptor {
    pub d: usize,
    pub degree: u64,
    pub multiplicity: u64,
    pub divisor_degree: Option<f64>,
}

impl MorphismDescriptor {
    pub fn new(d: usize, degree: u64, multiplicity: u64) -> Result<Self> {
        if d == 0 || degree == 0 || multiplicity == 0 {
            return Err(Error::domain(
                "dimension, degree and multiplicity must be positive",
            ));
        }
        Ok(MorphismDescriptor {
            d,
            degree,
            multiplicity,
            divisor_degree: None,
        })
    }

    pub fn identity(d: usize) -> Result<Self> {
        MorphismDescriptor::new(d, 1, 1)
    }

    /// Attaches `|X₁'|`. On curves this must satisfy `m · |X₁'| = deg`.
    pub fn with_divisor_degree(mut self, divisor_degree: f64) -> Result<Self> {
        if !(divisor_degree.is_finite() && divisor_degree > 0.0) {
            return Err(Error::domain(format!(
                "divisor degree must be positive, got {divisor_degree}"
            )));
        }
        if self.d == 1 {
            let product = self.multiplicity as f64 * divisor_degree;
            if (product - self.degree as f64).abs() > 1e-12 * self.degree as f64 {
                return Err(Error::domain(format!(
                    "on a curve multiplicity * divisor degree must equal the degree ({} * {} != {})",
                    self.multiplicity, divisor_degree, self.degree
                )));
            }
        }
        self.divisor_degree = Some(divisor_degree);
        Ok(self)
    }

    /// `d · deg(π) / m(π)^{d+1}`.
    pub fn capacity_exponent(&self) -> f64 {
        self.d as f64 * self.degree as f64 / (self.multiplicity as f64).powi(self.d as i32 + 1)
    }
}

/// A pair `(π, r)` ranged over by the finite morphism capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct PullbackCandidate {
    pub morphism: MorphismDescriptor,
    pub radii: RadiusAssignment,
}

impl PullbackCandidate {
    pub fn new(morphism: MorphismDescriptor, radii: RadiusAssignment) -> Result<Self> {
        if radii.dimension() != morphism.d {
            return Err(Error::DimensionMismatch {
                expected: morphism.d,
                found: radii.dimension(),
            });
        }
        Ok(PullbackCandidate { morphism, radii })
    }
}

/// `S_γ(B(r), H) = |r|^d`.
pub fn polydisk_sectional_capacity(d: usize, r: &RadiusAssignment) -> Result<f64> {
    if r.dimension() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: r.dimension(),
        });
    }
    Ok((d as f64 * r.ln_norm()).exp())
}

fn pullback_ln_capacity(c: &PullbackCandidate) -> f64 {
    c.morphism.capacity_exponent() * c.radii.ln_norm()
}

/// `S_γ(π⁻¹(B(r)), X₁) = |r|^{d · deg(π) / m(π)^{d+1}}`.
pub fn pullback_sectional_capacity(c: &PullbackCandidate) -> Result<f64> {
    if c.radii.dimension() != c.morphism.d {
        return Err(Error::DimensionMismatch {
            expected: c.morphism.d,
            found: c.radii.dimension(),
        });
    }
    Ok(pullback_ln_capacity(c).exp())
}

/// Supremum of the pullback capacities over the candidates whose
/// containment `π⁻¹(B(r)) ⊂ U` the caller certifies; 0 if none qualify.
pub fn finite_morphism_capacity_lower_bound<F>(
    candidates: &[PullbackCandidate],
    mut contained: F,
) -> Result<f64>
where
    F: FnMut(&PullbackCandidate) -> bool,
{
    let mut best = 0.0f64;
    for c in candidates {
        if contained(c) {
            best = best.max(pullback_sectional_capacity(c)?);
        }
    }
    Ok(best)
}

/// `|X₁'|^{-(d+1)/d}`, the exponent normalizing a capacity taken relative
/// to `X₁'`.
pub fn adjusted_exponent(d: usize, divisor_degree: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::domain("dimension must be positive"));
    }
    if !(divisor_degree.is_finite() && divisor_degree > 0.0) {
        return Err(Error::domain(format!(
            "divisor degree must be positive, got {divisor_degree}"
        )));
    }
    Ok(divisor_degree.powf(-((d + 1) as f64) / d as f64))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
}

/// For a curve morphism `f` with `m(f) | deg(f)` the normalized pullback
/// capacity `(|r|^{deg/m²})^{|X₁'|^{-2}}`, `|X₁'| = deg/m`, collapses to
/// `|r|^{1/deg}`. Both sides are evaluated independently and compared at
/// relative tolerance `tol`.
pub fn curve_pullback_identity_check(
    degree: u64,
    multiplicity: u64,
    r: &RadiusAssignment,
    tol: f64,
) -> Result<IdentityCheck> {
    if multiplicity == 0 || degree == 0 || degree % multiplicity != 0 {
        return Err(Error::domain(format!(
            "multiplicity {multiplicity} must divide degree {degree}"
        )));
    }
    let curve = r.clone().with_dimension(1)?;
    let candidate = PullbackCandidate::new(MorphismDescriptor::new(1, degree, multiplicity)?, curve)?;
    let exponent = adjusted_exponent(1, (degree / multiplicity) as f64)?;
    let lhs = (pullback_ln_capacity(&candidate) * exponent).exp();
    let rhs = (r.ln_norm() / degree as f64).exp();
    let pass = (lhs - rhs).abs() <= tol * lhs.abs().max(rhs.abs());
    Ok(IdentityCheck { lhs, rhs, pass })
}

/// `γ_F ≤ S⁺` up to relative slack `tol`.
pub fn theorem_compare_check(fm_lower_bound: f64, sectional: f64, tol: f64) -> bool {
    fm_lower_bound <= sectional * (1.0 + tol)
}
