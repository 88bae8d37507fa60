//! Finite two-player zero-sum games.
//!
//! The row player maximizes `xᵗ G y`, the column player minimizes it. The
//! value is found by shifting the payoffs to be strictly positive and solving
//!
//! ```text
//! maximize Σ y_j   subject to   (G + cJ) y ≤ 1,  y ≥ 0
//! ```
//!
//! with a tableau simplex under Bland's rule. The optimal objective is
//! `1 / (Val(G) + c)`; the row strategy is read off the reduced costs of the
//! slack columns. Optimal strategies need not be unique; the one returned is
//! the basic optimum reached by the deterministic pivot order.

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq)]
pub struct GameMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl GameMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("game matrix must be at least 1x1"));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::domain(format!("non-finite payoff {bad}")));
        }
        Ok(GameMatrix { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: row.len(),
            });
        }
        GameMatrix::new(n, rows.concat())
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    /// `G + cJ`, where `J` is the all-ones matrix.
    pub fn shifted(&self, c: f64) -> Result<GameMatrix> {
        GameMatrix::new(self.n, self.entries.iter().map(|x| x + c).collect())
    }

    pub fn scaled(&self, a: f64) -> Result<GameMatrix> {
        GameMatrix::new(self.n, self.entries.iter().map(|x| x * a).collect())
    }

    /// Worst payoff the row player can receive under mixed strategy `x`.
    pub fn row_guarantee(&self, x: &[f64]) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| x[i] * self.at(i, j)).sum::<f64>())
            .fold(f64::INFINITY, f64::min)
    }

    /// Worst payoff the column player can concede under mixed strategy `y`.
    pub fn col_guarantee(&self, y: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * y[j]).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn payoff(&self, x: &[f64], y: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| x[i] * (0..self.n).map(|j| self.at(i, j) * y[j]).sum::<f64>())
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameSolution {
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

pub fn game_value(g: &GameMatrix) -> Result<GameSolution> {
    game_value_with(g, &Tolerances::default())
}

pub fn game_value_with(g: &GameMatrix, tol: &Tolerances) -> Result<GameSolution> {
    let n = g.n;
    let min = g.entries.iter().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 + (-min).max(0.0);

    let width = 2 * n + 1;
    let rhs = 2 * n;
    let mut rows = vec![0.0; n * width];
    for i in 0..n {
        for j in 0..n {
            rows[i * width + j] = g.at(i, j) + shift;
        }
        rows[i * width + n + i] = 1.0;
        rows[i * width + rhs] = 1.0;
    }
    let mut obj = vec![0.0; width];
    obj[..n].iter_mut().for_each(|c| *c = -1.0);
    let mut basis: Vec<usize> = (n..2 * n).collect();

    let cap = 10 * n * (n + 2);
    let mut pivots = 0;
    loop {
        let Some(enter) = (0..2 * n).find(|&j| obj[j] < -tol.pivot) else {
            break;
        };
        if pivots == cap {
            return Err(Error::NumericFailure(format!(
                "simplex did not terminate within {cap} pivots"
            )));
        }
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..n {
            let a = rows[i * width + enter];
            if a <= tol.pivot {
                continue;
            }
            let ratio = rows[i * width + rhs] / a;
            leave = match leave {
                None => Some((i, ratio)),
                Some((k, best)) => {
                    let slack = 1e-12 * (1.0 + best.abs());
                    if ratio < best - slack || (ratio <= best + slack && basis[i] < basis[k]) {
                        Some((i, ratio))
                    } else {
                        Some((k, best))
                    }
                }
            };
        }
        let Some((r, _)) = leave else {
            return Err(Error::NumericFailure("game LP reported unbounded".into()));
        };

        let p = rows[r * width + enter];
        for c in 0..width {
            rows[r * width + c] /= p;
        }
        for i in 0..n {
            if i == r {
                continue;
            }
            let f = rows[i * width + enter];
            if f != 0.0 {
                for c in 0..width {
                    rows[i * width + c] -= f * rows[r * width + c];
                }
            }
        }
        let f = obj[enter];
        for c in 0..width {
            obj[c] -= f * rows[r * width + c];
        }
        basis[r] = enter;
        pivots += 1;
    }

    let mut y = vec![0.0; n];
    for (i, &b) in basis.iter().enumerate() {
        if b < n {
            y[b] = rows[i * width + rhs];
        }
    }
    let x: Vec<f64> = (0..n).map(|i| obj[n + i]).collect();
    let total = obj[rhs];
    if !(total > 0.0 && total.is_finite()) {
        return Err(Error::NumericFailure(format!(
            "game LP produced a non-positive objective {total}"
        )));
    }
    let value = 1.0 / total - shift;
    let row_strategy = normalize(&x)?;
    let col_strategy = normalize(&y)?;

    let lower = g.row_guarantee(&row_strategy);
    let upper = g.col_guarantee(&col_strategy);
    let gap_tol = tol.game_gap * (1.0 + shift);
    if upper - lower > gap_tol || value < lower - gap_tol || value > upper + gap_tol {
        return Err(Error::NumericFailure(format!(
            "strategies certify [{lower}, {upper}] but LP value is {value}"
        )));
    }
    Ok(GameSolution {
        value,
        row_strategy,
        col_strategy,
    })
}

fn normalize(v: &[f64]) -> Result<Vec<f64>> {
    let clipped: Vec<f64> = v.iter().map(|x| x.max(0.0)).collect();
    let sum: f64 = clipped.iter().sum();
    if !(sum > 0.0) {
        return Err(Error::NumericFailure("degenerate strategy".into()));
    }
    Ok(clipped.into_iter().map(|x| x / sum).collect())
}

/// `Val(G + cJ)`; equals `Val(G) + c`.
pub fn shifted_value(g: &GameMatrix, c: f64) -> Result<f64> {
    Ok(game_value(&g.shifted(c)?)?.value)
}
