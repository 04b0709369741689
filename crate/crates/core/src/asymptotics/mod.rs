//! Numerical surrogates for the sequential compactness criteria.
//!
//! Limits are estimated on an index ladder (by default `n = 2^k`,
//! `k = 4..=20`), each rung also probing `n + 1`. Every verdict produced here
//! is heuristic and carries the evaluated ladder as evidence.
//!
//! This part of the crate works in `f64` only.

mod appendix;
mod criteria;
mod family;
mod shift;

pub use appendix::{classify_appendix_case, AppendixCase, CaseReport};
pub use criteria::{
    check_caraccompact, check_phi_sufficient, check_udb, check_w1_compact, greedy_net_size, Check,
    CriterionReport, MapSample, MapSampler, PhiProblem, PointFamily, PointSample, Regime, Status,
    UdbProblem, W1Problem, WeightSequence,
};
pub use family::{
    appendix_shift_family, remark_square_family, table_family, CrossSample, FamilyTable, IndexExpr,
    PairSample, PairSequenceFamily,
};
pub use shift::{shift_operator_matrix, ShiftExample, ShiftReport};

use num_complex::Complex;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Relative tolerance for the Cauchy test on the tail.
pub const CAUCHY_RTOL: f64 = 1e-4;
/// Moduli beyond this, with monotone growth, count as divergence.
pub const DIVERGENCE_THRESHOLD: f64 = 1e8;
/// Minimum log-log growth rate over the tail that counts as divergence.
pub const DIVERGENCE_SLOPE: f64 = 0.25;
/// A limit with modulus at most this is reported as zero.
pub const ZERO_TOL: f64 = 1e-3;

const TAIL: usize = 3;
const MIN_RUNGS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ladder {
    rungs: Vec<u64>,
    probe_next: bool,
}

impl Ladder {
    pub fn new(rungs: Vec<u64>, probe_next: bool) -> Result<Self> {
        if rungs.len() < MIN_RUNGS {
            return Err(Error::Asymptotics(format!(
                "ladder needs at least {MIN_RUNGS} rungs, got {}",
                rungs.len()
            )));
        }
        if rungs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Asymptotics("ladder must be strictly increasing".into()));
        }
        Ok(Self { rungs, probe_next })
    }

    /// `n = 2^k` for `k = lo..=hi`, probing `n + 1`.
    pub fn powers_of_two(lo: u32, hi: u32) -> Result<Self> {
        if hi >= 63 {
            return Err(Error::Asymptotics(format!("ladder exponent {hi} too large")));
        }
        Self::new((lo..=hi).map(|k| 1u64 << k).collect(), true)
    }

    pub fn rungs(&self) -> &[u64] {
        &self.rungs
    }

    pub fn probes(&self) -> bool {
        self.probe_next
    }

    pub fn top(&self) -> u64 {
        *self.rungs.last().expect("nonempty ladder")
    }

    /// Every index the ladder evaluates.
    pub fn indices(&self) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.rungs.len() * 2);
        for &n in &self.rungs {
            v.push(n);
            if self.probe_next {
                v.push(n + 1);
            }
        }
        v
    }
}

impl Default for Ladder {
    fn default() -> Self {
        Self::powers_of_two(4, 20).expect("valid default ladder")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LimitKind {
    ConvergesTo { value: [f64; 2] },
    DivergesToInfinity,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LadderValue {
    pub n: u64,
    pub value: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitVerdict {
    pub limit: LimitKind,
    pub evidence: Vec<LadderValue>,
    pub heuristic: bool,
}

/// Coarse classification of a limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LimitClass {
    Zero,
    Finite(Complex<f64>),
    Infinite,
    Unknown,
}

impl LimitVerdict {
    pub fn value(&self) -> Option<Complex<f64>> {
        match self.limit {
            LimitKind::ConvergesTo { value: [re, im] } => Some(Complex::new(re, im)),
            _ => None,
        }
    }

    pub fn class(&self) -> LimitClass {
        match self.limit {
            LimitKind::ConvergesTo { .. } => {
                let v = self.value().expect("convergent");
                if v.norm() <= ZERO_TOL {
                    LimitClass::Zero
                } else {
                    LimitClass::Finite(v)
                }
            }
            LimitKind::DivergesToInfinity => LimitClass::Infinite,
            LimitKind::Inconclusive => LimitClass::Unknown,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.class() == LimitClass::Zero
    }

    pub fn is_infinite(&self) -> bool {
        self.class() == LimitClass::Infinite
    }

    pub fn is_conclusive(&self) -> bool {
        self.class() != LimitClass::Unknown
    }

    /// Smallest modulus over the last rungs, a proxy for `lim inf |·|`.
    pub fn tail_min_modulus(&self) -> f64 {
        let k = self.evidence.len().min(2 * TAIL);
        self.evidence[self.evidence.len() - k..]
            .iter()
            .map(|e| Complex::new(e.value[0], e.value[1]).norm())
            .fold(f64::INFINITY, f64::min)
    }
}

/// Estimate the limit of a complex sequence along the ladder.
///
/// `ConvergesTo(v)` when the last three rungs, and their `n + 1` probes,
/// agree with the top value within `1e-4·max(1, |v|)`. `DivergesToInfinity`
/// when the moduli grow monotonically over the tail and either exceed `1e8`
/// or grow like `n^p` with `p ≥ 0.25`. Otherwise `Inconclusive`.
pub fn detect_limit<F>(seq: F, ladder: &Ladder) -> Result<LimitVerdict>
where
    F: Fn(u64) -> Result<Complex<f64>> + Sync,
{
    let indices = ladder.indices();
    let values: Vec<Complex<f64>> = indices
        .par_iter()
        .map(|&n| {
            let v = seq(n)?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Asymptotics(format!("evaluator failed at n = {n}: {v}")));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let evidence: Vec<LadderValue> = indices
        .iter()
        .zip(&values)
        .map(|(&n, v)| LadderValue {
            n,
            value: [v.re, v.im],
        })
        .collect();
    let limit = judge(ladder, &values);
    Ok(LimitVerdict {
        limit,
        evidence,
        heuristic: true,
    })
}

/// Real-valued convenience wrapper.
pub fn detect_limit_real<F>(seq: F, ladder: &Ladder) -> Result<LimitVerdict>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    detect_limit(|n| seq(n).map(|v| Complex::new(v, 0.0)), ladder)
}

fn judge(ladder: &Ladder, values: &[Complex<f64>]) -> LimitKind {
    let stride = if ladder.probes() { 2 } else { 1 };
    let rungs = ladder.rungs();
    let at = |k: usize| values[k * stride];
    let last = rungs.len() - 1;
    let top = at(last);
    let tol = CAUCHY_RTOL * top.norm().max(1.0);
    let tail_values = &values[(rungs.len() - TAIL) * stride..];
    if tail_values.iter().all(|v| (v - top).norm() <= tol) {
        return LimitKind::ConvergesTo {
            value: [top.re, top.im],
        };
    }
    // Monotone growth over the last TAIL + 1 rungs, probes included.
    let growth_window = &values[(rungs.len() - TAIL - 1) * stride..];
    let monotone = growth_window.windows(2).all(|w| w[1].norm() > w[0].norm());
    if monotone {
        if top.norm() > DIVERGENCE_THRESHOLD {
            return LimitKind::DivergesToInfinity;
        }
        let lo = last - (TAIL - 1);
        let (v0, v1) = (at(lo).norm(), top.norm());
        if v0 > 0.0 {
            let slope = (v1 / v0).ln() / (rungs[last] as f64 / rungs[lo] as f64).ln();
            if slope >= DIVERGENCE_SLOPE {
                return LimitKind::DivergesToInfinity;
            }
        }
    }
    LimitKind::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(v: f64) -> Result<Complex<f64>> {
        Ok(Complex::new(v, 0.0))
    }

    #[test]
    fn textbook_sequences() {
        let l = Ladder::default();
        let v = detect_limit(|n| real(1.0 / n as f64), &l).unwrap();
        assert_eq!(v.class(), LimitClass::Zero);
        assert!(v.heuristic);
        let v = detect_limit(|n| real(n as f64), &l).unwrap();
        assert_eq!(v.limit, LimitKind::DivergesToInfinity);
        let v = detect_limit(|n| real(if n % 2 == 0 { 1.0 } else { -1.0 }), &l).unwrap();
        assert_eq!(v.limit, LimitKind::Inconclusive);
    }

    #[test]
    fn nonzero_and_complex_limits() {
        let l = Ladder::powers_of_two(4, 16).unwrap();
        let v = detect_limit(|n| Ok(Complex::new(0.5, -2.0) + 1.0 / n as f64), &l).unwrap();
        match v.class() {
            LimitClass::Finite(c) => assert!((c - Complex::new(0.5, -2.0)).norm() < 1e-4),
            other => panic!("{other:?}"),
        }
        // Slow growth below the slope threshold stays inconclusive.
        let v = detect_limit(|n| real((n as f64).ln()), &l).unwrap();
        assert_eq!(v.limit, LimitKind::Inconclusive);
        let v = detect_limit(|n| real((n as f64).sqrt()), &l).unwrap();
        assert_eq!(v.limit, LimitKind::DivergesToInfinity);
    }

    #[test]
    fn evaluator_failure_is_an_error() {
        let l = Ladder::default();
        assert!(detect_limit(|n| real(if n > 1000 { f64::NAN } else { 1.0 }), &l).is_err());
        assert!(detect_limit(|_| Err(Error::Asymptotics("boom".into())), &l).is_err());
    }

    #[test]
    fn ladder_validation() {
        assert!(Ladder::new(vec![1, 2, 3], true).is_err());
        assert!(Ladder::new(vec![1, 2, 3, 3, 4, 5], true).is_err());
        let l = Ladder::new(vec![1, 2, 3, 4, 5, 6], false).unwrap();
        assert_eq!(l.indices().len(), 6);
        assert_eq!(Ladder::default().top(), 1 << 20);
    }
}
