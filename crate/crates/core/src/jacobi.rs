//! Symmetric tridiagonal (Jacobi) matrix and its spectrum.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::params::{ParamSet, Parity};
use crate::recurrence::RecurrenceTable;
use crate::scalar::to_f64;

/// Diagonal `b_0..b_N`, off-diagonal `√u_1..√u_N`.
#[derive(Clone, Debug, PartialEq)]
pub struct TridiagonalMatrix {
    diag: Vec<f64>,
    offdiag: Vec<f64>,
}

impl TridiagonalMatrix {
    pub fn new(diag: Vec<f64>, offdiag: Vec<f64>) -> Self {
        assert_eq!(offdiag.len() + 1, diag.len().max(1), "off-diagonal length");
        Self { diag, offdiag }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// `offdiag()[i]` couples rows `i` and `i+1`, i.e. it is `√u_{i+1}`.
    pub fn offdiag(&self) -> &[f64] {
        &self.offdiag
    }

    /// `√u_n` for `1 <= n <= N`.
    pub fn coupling(&self, n: usize) -> f64 {
        self.offdiag[n - 1]
    }

    /// Reversal symmetry `RJR = J`, entrywise.
    pub fn is_persymmetric(&self) -> bool {
        self.diag.iter().eq(self.diag.iter().rev()) && self.offdiag.iter().eq(self.offdiag.iter().rev())
    }

    /// Number of eigenvalues strictly below `x` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.diag.len() {
            let coupling = if i == 0 { 0.0 } else { self.offdiag[i - 1] * self.offdiag[i - 1] };
            q = self.diag[i] - x - if coupling == 0.0 { 0.0 } else { coupling / q };
            if q == 0.0 {
                q = -f64::EPSILON * (x.abs() + f64::MIN_POSITIVE);
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.offdiag[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }
}

pub fn jacobi_matrix(table: &RecurrenceTable) -> Result<TridiagonalMatrix> {
    let diag = table.b_values().iter().map(to_f64).collect();
    let mut offdiag = Vec::with_capacity(table.max_degree());
    for n in 1..=table.max_degree() {
        let u = table.u(n);
        if u.is_negative() {
            return Err(Error::NegativeOffdiagonal(n));
        }
        offdiag.push(to_f64(u).sqrt());
    }
    Ok(TridiagonalMatrix { diag, offdiag })
}

const MAX_BISECTIONS: usize = 400;

/// All eigenvalues in increasing order, by Sturm-count bisection inside the
/// Gershgorin interval. Each is bracketed to machine precision.
pub fn eigenvalues(matrix: &TridiagonalMatrix) -> Result<Vec<f64>> {
    let n = matrix.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (lo0, hi0) = matrix.gershgorin_bounds();
    let pad = f64::EPSILON * lo0.abs().max(hi0.abs()).max(1.0) * 4.0;
    let (lo0, hi0) = (lo0 - pad, hi0 + pad);
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        // smallest x with more than k eigenvalues below it
        let (mut lo, mut hi) = (lo0, hi0);
        let mut converged = false;
        for _ in 0..MAX_BISECTIONS {
            let mid = lo + 0.5 * (hi - lo);
            if mid <= lo || mid >= hi || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                converged = true;
                break;
            }
            if matrix.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let value = lo + 0.5 * (hi - lo);
        if !converged || hi - lo > 1e-12 * value.abs().max(1.0) {
            return Err(Error::ConvergenceFailure(k));
        }
        out.push(value);
    }
    Ok(out)
}

/// Diagonal block sizes of the Jacobi matrix when `alpha ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BlockSplit {
    pub first: usize,
    pub second: usize,
    /// `n` with `u_n = 0`; the blocks meet between rows `n-1` and `n`.
    pub zero_coupling: usize,
}

pub fn block_split(params: &ParamSet) -> Result<BlockSplit> {
    let zero_coupling = params.vanishing_u_index().ok_or(Error::NotDegenerate)?;
    let j = params.j();
    let (first, second) = match params.parity() {
        Parity::Odd => (j + 1, j + 1),
        Parity::Even if params.alpha().is_zero() => (j + 1, j),
        Parity::Even => (j, j + 1),
    };
    debug_assert_eq!(first, zero_coupling);
    Ok(BlockSplit { first, second, zero_coupling })
}

/// Block sizes read off a table: lengths of the runs between vanishing `u_n`.
pub fn observed_blocks(table: &RecurrenceTable) -> Vec<usize> {
    let mut blocks = Vec::new();
    let mut start = 0;
    for n in 1..=table.max_degree() {
        if table.u(n).is_zero() {
            blocks.push(n - start);
            start = n;
        }
    }
    blocks.push(table.max_degree() + 1 - start);
    blocks
}
