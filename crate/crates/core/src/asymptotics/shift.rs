//! The weighted backward shift: `M = ℕ ∪ {0}` with `d(n, m) = dₙ + dₘ`,
//! `d(n, 0) = dₙ = n^{−α}`, `f(n) = n − 1`, `w(n) = n^{−β}`.
//!
//! `δ(n) ↦ dₙeₙ` identifies `F(M)` with `ℓ₁`, under which `wf̂` becomes
//! `Teₙ = (n/(n−1))^α n^{−β} e_{n−1}`, `Te₁ = 0`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::free::FreeElement;
use crate::metric::PointedMetricSpace;
use crate::operator::WeightedMap;
use crate::oracle::{real_norm_lp_support, DEFAULT_POLYGON_ORDER};

/// Columns beyond the truncation scanned for the tail supremum.
const TAIL_SCAN: u64 = 1 << 16;
/// Largest truncation for which the free-space cross-check runs.
const CROSS_CHECK_MAX: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftExample {
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShiftReport {
    pub alpha: f64,
    pub beta: f64,
    pub n_max: usize,
    /// Nonzero entries `(row, column, value)`, 1-based.
    pub entries: Vec<(usize, usize, f64)>,
    /// `‖Teₙ‖₁` for `n = 1..=n_max`.
    pub column_norms: Vec<f64>,
    pub compact: bool,
    pub verdict: String,
    /// `sup_{n > n_max} ‖Teₙ‖₁`, the norm of `T − T_{n_max}`.
    pub tail_sup: f64,
    /// `max_n |‖wf̂(δ(n)/dₙ)‖ − ‖Teₙ‖₁|` on the truncated space.
    pub column_defect: Option<f64>,
    /// `|‖wf̂‖ − maxₙ ‖Teₙ‖₁|` on the truncated space.
    pub norm_defect: Option<f64>,
}

impl ShiftExample {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) || !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::Asymptotics(format!(
                "shift parameters need alpha > 0 and beta >= 0, got ({alpha}, {beta})"
            )));
        }
        Ok(Self { alpha, beta })
    }

    /// `dₙ = n^{−α}` for `n ≥ 1`.
    pub fn d_n(&self, n: u64) -> f64 {
        (n as f64).powf(-self.alpha)
    }

    pub fn dist(&self, n: u64, m: u64) -> f64 {
        match (n, m) {
            _ if n == m => 0.0,
            (0, m) => self.d_n(m),
            (n, 0) => self.d_n(n),
            (n, m) => self.d_n(n) + self.d_n(m),
        }
    }

    pub fn f(&self, n: u64) -> u64 {
        n.saturating_sub(1)
    }

    pub fn w(&self, n: u64) -> f64 {
        if n == 0 {
            0.0
        } else {
            (n as f64).powf(-self.beta)
        }
    }

    /// `‖Teₙ‖₁ = (d_{n−1}/dₙ) w(n)` for `n ≥ 2`, and 0 for `n = 1`.
    pub fn column_weight(&self, n: u64) -> f64 {
        if n <= 1 {
            0.0
        } else {
            let n = n as f64;
            (n / (n - 1.0)).powf(self.alpha) * n.powf(-self.beta)
        }
    }

    /// Points `0, 1, …, n_max`.
    pub fn space(&self, n_max: usize) -> Result<PointedMetricSpace<f64>> {
        let ids = (0..=n_max).map(|i| i.to_string()).collect();
        let dist = (0..=n_max as u64)
            .map(|i| (0..=n_max as u64).map(|j| self.dist(i, j)).collect())
            .collect();
        PointedMetricSpace::from_matrix(ids, 0, dist)
    }

    /// `wf̂` restricted to the truncation, which `f` maps into itself.
    pub fn operator(&self, n_max: usize) -> Result<WeightedMap<f64>> {
        let s = Arc::new(self.space(n_max)?);
        let f = (0..=n_max as u64).map(|n| self.f(n) as usize).collect();
        let w = (0..=n_max as u64).map(|n| self.w(n)).collect();
        WeightedMap::with_real_weights(s.clone(), s, f, w)
    }
}

/// The truncated shift matrix with its compactness verdict and, for
/// `n_max ≤ 64`, the cross-check against the free-space operator.
pub fn shift_operator_matrix(ex: &ShiftExample, n_max: usize) -> Result<ShiftReport> {
    if n_max < 2 {
        return Err(Error::Asymptotics(format!("n_max must be at least 2, got {n_max}")));
    }
    let column_norms: Vec<f64> = (1..=n_max as u64).map(|n| ex.column_weight(n)).collect();
    let entries = (2..=n_max).map(|n| (n - 1, n, column_norms[n - 1])).collect();
    // (n/(n−1))^α → 1, so the weights vanish at infinity iff β > 0.
    let compact = ex.beta > 0.0;
    let tail_sup = (n_max as u64 + 1..=n_max as u64 + TAIL_SCAN)
        .map(|n| ex.column_weight(n))
        .fold(0.0, f64::max);
    let (column_defect, norm_defect) = if n_max <= CROSS_CHECK_MAX {
        let op = ex.operator(n_max)?;
        let mut defect: f64 = 0.0;
        for n in 1..=n_max {
            let img = op.apply(&FreeElement::delta(op.domain(), n)?)?;
            let v = real_norm_lp_support(&img)? / ex.d_n(n as u64);
            defect = defect.max((v - column_norms[n - 1]).abs());
        }
        let norm = op.operator_norm(DEFAULT_POLYGON_ORDER)?.bracket.hi;
        let max_col = column_norms.iter().copied().fold(0.0, f64::max);
        (Some(defect), Some((norm - max_col).abs()))
    } else {
        (None, None)
    };
    Ok(ShiftReport {
        alpha: ex.alpha,
        beta: ex.beta,
        n_max,
        entries,
        column_norms,
        compact,
        verdict: if compact { "compact" } else { "not compact" }.into(),
        tail_sup,
        column_defect,
        norm_defect,
    })
}
