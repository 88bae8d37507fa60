//! Two constructive steps used when reducing open subschemes of affine
//! space to curves and then to finite free subschemes:
//!
//! * choosing exponents `1 = m₁, m₂, …, mₙ` so that the linear form
//!   `x₁ + Σ m_ℓ x_ℓ` separates a finite set of multi-exponents, which makes
//!   the restriction `f(t, t^{m₂}, …, t^{mₙ})` keep every coefficient of `f`;
//! * the characteristic polynomial of a multiplication matrix, computed
//!   exactly, together with the Cayley–Hamilton check that it annihilates
//!   the matrix.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A finite nonempty set of distinct multi-exponents in `ℕⁿ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    n: usize,
    points: Vec<Vec<u64>>,
}

impl ExponentSet {
    pub fn new(points: Vec<Vec<u64>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::domain("exponent set must be nonempty"));
        };
        let n = first.len();
        if n == 0 {
            return Err(Error::domain("exponents need at least one variable"));
        }
        if let Some(p) = points.iter().find(|p| p.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
        let mut seen = HashSet::new();
        if let Some(dup) = points.iter().find(|p| !seen.insert(*p)) {
            return Err(Error::domain(format!("exponent {dup:?} listed twice")));
        }
        Ok(ExponentSet { n, points })
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn points(&self) -> &[Vec<u64>] {
        &self.points
    }
}

fn form_value(point: &[u64], m: &[u64]) -> u128 {
    point.iter().zip(m).map(|(&x, &w)| x as u128 * w as u128).sum()
}

/// Images of the exponent set under `x ↦ Σ m_ℓ x_ℓ`.
pub fn linear_form_images(sigma: &ExponentSet, m: &[u64]) -> Vec<u128> {
    sigma.points.iter().map(|p| form_value(p, m)).collect()
}

/// Exhaustive pairwise injectivity test.
pub fn is_injective(sigma: &ExponentSet, m: &[u64]) -> bool {
    let images = linear_form_images(sigma, m);
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] == images[j] {
                return false;
            }
        }
    }
    true
}

/// Smallest exponents, in lexicographic order of `(m₂, m₃, …)` grown one
/// variable at a time, for which `x₁ + Σ m_ℓ x_ℓ` is injective on `sigma`.
///
/// At each stage the partial form is injective on the projection of `sigma`
/// to the variables fixed so far. Any `m_ℓ` larger than the spread of the
/// previous partial form keeps it injective, so the scan terminates.
pub fn monomial_exponents(sigma: &ExponentSet) -> Vec<u64> {
    let n = sigma.n;
    let mut m = vec![1u64; n];
    for l in 1..n {
        let projected: Vec<&[u64]> = {
            let mut seen = HashSet::new();
            sigma
                .points
                .iter()
                .map(|p| &p[..=l])
                .filter(|p| seen.insert(*p))
                .collect()
        };
        let mut candidate = 1u64;
        loop {
            m[l] = candidate;
            let mut images = HashSet::with_capacity(projected.len());
            if projected.iter().all(|p| images.insert(form_value(p, &m[..=l]))) {
                break;
            }
            candidate += 1;
        }
    }
    debug_assert!(is_injective(sigma, &m));
    m
}

/// A multivariate polynomial with integer coefficients, as a list of terms.
#[derive(Debug, Clone, PartialEq)]
pub struct SparsePolynomial {
    pub terms: Vec<(Vec<u64>, BigInt)>,
}

impl SparsePolynomial {
    /// Exponents of the nonzero terms.
    pub fn support(&self) -> Result<ExponentSet> {
        ExponentSet::new(
            self.terms
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, _)| e.clone())
                .collect(),
        )
    }

    /// `f(t, t^{m₂}, …, t^{mₙ})` as a map from degree to coefficient, zero
    /// coefficients dropped.
    pub fn restrict_to_monomial_curve(&self, m: &[u64]) -> BTreeMap<u128, BigInt> {
        let mut out: BTreeMap<u128, BigInt> = BTreeMap::new();
        for (e, c) in &self.terms {
            *out.entry(form_value(e, m)).or_insert_with(BigInt::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

/// Square matrix of exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiplicationMatrix {
    rank: usize,
    entries: Vec<BigRational>,
}

impl MultiplicationMatrix {
    pub fn new(rank: usize, entries: Vec<BigRational>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::domain("matrix must be at least 1x1"));
        }
        if entries.len() != rank * rank {
            return Err(Error::DimensionMismatch {
                expected: rank * rank,
                found: entries.len(),
            });
        }
        Ok(MultiplicationMatrix { rank, entries })
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let r = rows.len();
        if let Some(row) = rows.iter().find(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: row.len(),
            });
        }
        MultiplicationMatrix::new(r, rows.into_iter().flatten().collect())
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        MultiplicationMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn at(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.rank + j]
    }

    fn zeros(rank: usize) -> Self {
        MultiplicationMatrix {
            rank,
            entries: vec![BigRational::zero(); rank * rank],
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let r = self.rank;
        let mut out = Self::zeros(r);
        for i in 0..r {
            for k in 0..r {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..r {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        out.entries[i * r + j] += a * b;
                    }
                }
            }
        }
        out
    }

    fn add_scalar(&mut self, c: &BigRational) {
        for i in 0..self.rank {
            self.entries[i * self.rank + i] += c;
        }
    }

    fn trace(&self) -> BigRational {
        (0..self.rank).fold(BigRational::zero(), |acc, i| acc + self.at(i, i))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }
}

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial(pub Vec<BigRational>);

impl Polynomial {
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.degree().map(|d| &self.0[d])
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.0.is_empty() || other.0.is_empty() {
            return Polynomial(Vec::new());
        }
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(deg) = self.degree() else {
            return f.write_str("0");
        };
        let mut first = true;
        for k in (0..=deg).rev() {
            let c = &self.0[k];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let show_coeff = !a.is_one() || k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `det(tI - z)` by the Faddeev–LeVerrier recurrence, exactly.
pub fn char_poly(z: &MultiplicationMatrix) -> Polynomial {
    let r = z.rank;
    let mut coeffs = vec![BigRational::zero(); r + 1];
    coeffs[r] = BigRational::one();
    let mut m = MultiplicationMatrix::zeros(r);
    for k in 1..=r {
        // M_k = z M_{k-1} + c_{r-k+1} I
        m = z.mul(&m);
        m.add_scalar(&coeffs[r - k + 1]);
        let t = z.mul(&m).trace();
        coeffs[r - k] = -t / BigRational::from_integer(BigInt::from(k));
    }
    Polynomial(coeffs)
}

/// `p(z)` by Horner's rule.
pub fn evaluate_at(p: &Polynomial, z: &MultiplicationMatrix) -> MultiplicationMatrix {
    let mut acc = MultiplicationMatrix::zeros(z.rank);
    for c in p.0.iter().rev() {
        acc = acc.mul(z);
        acc.add_scalar(c);
    }
    acc
}

pub fn annihilates(p: &Polynomial, z: &MultiplicationMatrix) -> bool {
    evaluate_at(p, z).is_zero()
}

/// `F(z) = 0` for `F` the characteristic polynomial of `z`.
pub fn cayley_hamilton_check(z: &MultiplicationMatrix) -> bool {
    annihilates(&char_poly(z), z)
}

/// Whether the leading coefficient is a unit of ℤ.
///
/// With `localized_at_infinity` the coefficient list is read as a section of
/// `O(m)` on `ℙ¹`, `m = len - 1`, and the relevant coefficient is that of
/// `t^m` (the value at infinity) even if it vanishes; otherwise it is the
/// highest nonzero coefficient.
pub fn leading_unit_check(poly: &Polynomial, localized_at_infinity: bool) -> bool {
    let lead = if localized_at_infinity {
        poly.0.last()
    } else {
        poly.leading()
    };
    lead.is_some_and(|c| c.is_integer() && c.abs().is_one())
}
