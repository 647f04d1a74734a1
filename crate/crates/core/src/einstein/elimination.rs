//! Numeric and symbolic side checks of the classification proofs.

use nalgebra::{DMatrix, DVector};

use crate::scalar::RatFunc;

/// Coefficient matrix of the system that forces `b₁ = … = b₅ = 0` in the
/// `ℝ^{(1,2)}` semi-symmetric case, unknowns ordered `(b₁, …, b₅)`. With
/// `literal` the last row uses the printed coefficient `416k⁴` for `b₂`.
pub fn elimination_matrix(k: f64, literal: bool) -> DMatrix<f64> {
    let b2_last = if literal { 416.0 } else { 16.0 };
    let k2 = k * k;
    let k3 = k2 * k;
    let k4 = k3 * k;
    DMatrix::from_row_slice(
        5,
        5,
        &[
            1.0, 1.0, 1.0, 1.0, -1.0,
            2.0 * k, -2.0 * k, k, -k, 0.0,
            4.0 * k2, 4.0 * k2, k2, k2, 0.0,
            8.0 * k3, -8.0 * k3, k3, -k3, 0.0,
            16.0 * k4, b2_last * k4, k4, k4, 0.0,
        ],
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct EliminationOutcome {
    pub k: f64,
    pub rank: usize,
    /// Smallest singular value divided by the largest.
    pub relative_gap: f64,
    pub solution: Vec<f64>,
    pub residual: f64,
}

impl EliminationOutcome {
    /// The homogeneous system has only the trivial solution.
    pub fn unique_zero(&self, tol: f64) -> bool {
        self.rank == 5 && self.residual < tol && self.solution.iter().all(|b| b.abs() < tol)
    }
}

pub fn elimination_check(k: f64, literal: bool) -> EliminationOutcome {
    let a = elimination_matrix(k, literal);
    let svd = a.clone().svd(true, true);
    let sv = &svd.singular_values;
    let max = sv.max();
    let min = sv.min();
    let rank = sv.iter().filter(|s| **s > 1e-12 * max).count();
    let rhs = DVector::<f64>::zeros(5);
    let solution = svd.solve(&rhs, 1e-12 * max).unwrap_or_else(|_| DVector::zeros(5));
    let residual = (&a * &solution - rhs).norm();
    EliminationOutcome {
        k,
        rank,
        relative_gap: min / max,
        solution: solution.iter().copied().collect(),
        residual,
    }
}

/// The fiber equation of the `ℝ^{(1,0)}` semi-symmetric case after
/// eliminating `h''` (valid for `l ≠ 0, 1`):
/// `λN/(1-l) + h'² + l/(1-l) hh' + (λ0/l - 1/(1-l)) h²`.
pub fn reduced_fiber_residual(l: i64, lambda0: &RatFunc, lambda_n: &RatFunc, h: &RatFunc) -> RatFunc {
    let h1 = h.diff("t");
    let one_minus_l = RatFunc::int(1 - l);
    let lr = RatFunc::int(l);
    lambda_n
        .div(&one_minus_l)
        .add(&h1.mul(&h1))
        .add(&lr.div(&one_minus_l).mul(h).mul(&h1))
        .add(&lambda0.div(&lr).sub(&one_minus_l.inv()).mul(h).mul(h))
}
