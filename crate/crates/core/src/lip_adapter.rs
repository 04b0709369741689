//! Reduction of weighted composition operators on `Lip(N) → Lip(M)` (no base
//! point, norm `max(‖g‖_∞, L(g))`) to the pointed setting.
//!
//! Both spaces are truncated at distance 2 and given a new base point `e` at
//! distance 1 from everything; `f` and `w` are extended by `f(e) = e`,
//! `w(e) = 0`. The resulting `Lip₀` operator is conjugate to the original
//! one and has the same norm.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{PointedMetricSpace, SpaceJson};
use crate::operator::{resolve_maps, BoundednessReport, WeightedMap};
use crate::scalar::Scalar;

const TRUNCATION: f64 = 2.0;

/// `g ↦ w·(g∘f)` between spaces of bounded Lipschitz functions. Base points
/// of `m` and `n` carry no meaning.
#[derive(Debug, Clone)]
pub struct LipProblem<T: Scalar> {
    pub m: Arc<PointedMetricSpace<T>>,
    pub n: Arc<PointedMetricSpace<T>>,
    pub f: Vec<usize>,
    pub w: Vec<Complex<T>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipBoundednessReport<T> {
    /// `‖w‖_∞`.
    pub w_sup: T,
    /// Lipschitz constant of `w` for the original metric of `M`.
    pub w_lip: T,
    /// `max(‖w‖_∞, ‖w‖_L)`.
    pub w_norm: T,
    /// `sup |w(x)| d(f(x),f(y)) / d(x,y)` in the original metrics.
    pub n1: T,
    pub lifted: BoundednessReport<T>,
    /// Largest `|σ(x,e) − |w(x)||` in the lifted problem.
    pub sigma_e_defect: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtensionReport<T> {
    pub extends: bool,
    pub w_sup: T,
    pub w_lip: T,
}

impl<T: Scalar> LipProblem<T> {
    pub fn new(
        m: Arc<PointedMetricSpace<T>>,
        n: Arc<PointedMetricSpace<T>>,
        f: Vec<usize>,
        w: Vec<Complex<T>>,
    ) -> Result<Self> {
        if f.len() != m.len() {
            return Err(Error::PartialMap(f.len().min(m.len())));
        }
        if w.len() != m.len() {
            return Err(Error::PartialMap(w.len().min(m.len())));
        }
        for &z in &f {
            n.check_index(z)?;
        }
        Ok(Self { m, n, f, w })
    }

    /// The lifted operator on `Lip₀(N^e) → Lip₀(M^e)`. Original points keep
    /// their indices; `e` is appended last on both sides.
    pub fn to_lip0(&self) -> Result<WeightedMap<T>> {
        let cap = T::from_f64_lossy(TRUNCATION);
        let me = self.m.truncate_diameter(cap)?.adjoin_basepoint()?;
        let ne = self.n.truncate_diameter(cap)?.adjoin_basepoint()?;
        let mut f = self.f.clone();
        f.push(ne.base());
        let mut w = self.w.clone();
        w.push(Complex::default());
        WeightedMap::new(Arc::new(me), Arc::new(ne), f, w)
    }

    pub fn boundedness_report(&self) -> Result<LipBoundednessReport<T>> {
        let lifted_op = self.to_lip0()?;
        let lifted = lifted_op.boundedness_report();
        let e = lifted_op.domain().base();
        let mut sigma_e_defect = T::zero();
        for x in 0..self.m.len() {
            let s = lifted_op.pair_stats(x, e)?;
            sigma_e_defect = sigma_e_defect.max((s.sigma - self.w[x].norm()).abs());
        }
        let (w_sup, w_lip) = weight_constants(&self.m, &self.w);
        let mut n1 = T::zero();
        for x in 0..self.m.len() {
            for y in 0..self.m.len() {
                if x != y {
                    let v = self.w[x].norm() * self.n.d(self.f[x], self.f[y]) / self.m.d(x, y);
                    n1 = n1.max(v);
                }
            }
        }
        Ok(LipBoundednessReport {
            w_sup,
            w_lip,
            w_norm: w_sup.max(w_lip),
            n1,
            lifted,
            sigma_e_defect,
        })
    }
}

/// `‖w‖_∞` and the Lipschitz constant of `w` over every point of `m`.
pub fn weight_constants<T: Scalar>(m: &PointedMetricSpace<T>, w: &[Complex<T>]) -> (T, T) {
    let sup = w.iter().fold(T::zero(), |acc, c| acc.max(c.norm()));
    let mut lip = T::zero();
    for x in 0..m.len() {
        for y in x + 1..m.len() {
            lip = lip.max((w[x] - w[y]).norm() / m.d(x, y));
        }
    }
    (sup, lip)
}

/// Whether `wC_f` on `Lip₀` spaces also acts on `Lip` spaces, which happens
/// iff `w = wC_f(𝟙)` is bounded and Lipschitz. Always the case for finite
/// spaces; the constants are the data of interest.
pub fn lip0_extends_to_lip<T: Scalar>(op: &WeightedMap<T>) -> ExtensionReport<T> {
    let (w_sup, w_lip) = weight_constants(op.domain(), op.w());
    ExtensionReport {
        extends: w_sup.is_finite() && w_lip.is_finite(),
        w_sup,
        w_lip,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LipProblemJson {
    pub domain: SpaceJson,
    pub codomain: SpaceJson,
    pub f: BTreeMap<String, String>,
    pub w: BTreeMap<String, [f64; 2]>,
}

impl LipProblemJson {
    pub fn into_problem<T: Scalar>(self) -> Result<LipProblem<T>> {
        let m: PointedMetricSpace<T> = self.domain.into_space()?;
        let n: PointedMetricSpace<T> = self.codomain.into_space()?;
        for s in [&m, &n] {
            if let Some(v) = s.validate().violations.first() {
                return Err(Error::InvalidMetric(format!("{v:?}")));
            }
        }
        let (f, w) = resolve_maps(&m, &n, &self.f, &self.w)?;
        LipProblem::new(Arc::new(m), Arc::new(n), f, w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_POLYGON_ORDER as K;

    fn line(points: &[f64]) -> Arc<PointedMetricSpace<f64>> {
        let p = points.to_vec();
        Arc::new(PointedMetricSpace::from_fn(p.len(), 0, |i, j| (p[i] - p[j]).abs()).unwrap())
    }

    fn real(w: &[f64]) -> Vec<Complex<f64>> {
        w.iter().map(|&v| Complex::new(v, 0.0)).collect()
    }

    #[test]
    fn singleton_lift() {
        let m = line(&[0.0]);
        let p = LipProblem::new(m.clone(), m.clone(), vec![0], real(&[0.0])).unwrap();
        let op = p.to_lip0().unwrap();
        assert_eq!(op.domain().len(), 2);
        assert_eq!(op.operator_norm(K).unwrap().bracket.hi, 0.0);
        let p = LipProblem::new(m.clone(), m, vec![0], real(&[-3.0])).unwrap();
        assert!((p.to_lip0().unwrap().operator_norm(K).unwrap().bracket.hi - 3.0).abs() < 1e-12);
    }

    #[test]
    fn identity_on_two_points_has_norm_one() {
        let m = line(&[0.0, 2.0]);
        let p = LipProblem::new(m.clone(), m, vec![0, 1], real(&[1.0, 1.0])).unwrap();
        let b = p.to_lip0().unwrap().operator_norm(K).unwrap().bracket;
        assert!((b.hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn far_pairs_have_tau_bounded_by_sup() {
        let m = line(&[0.0, 5.0, 11.0]);
        let n = line(&[0.0, 1.0]);
        let w = real(&[1.0, -2.0, 0.5]);
        let p = LipProblem::new(m, n, vec![0, 1, 1], w.clone()).unwrap();
        let op = p.to_lip0().unwrap();
        for x in 0..3 {
            for y in 0..3 {
                if x != y {
                    let t = op.pair_stats(x, y).unwrap().tau;
                    assert!((t - (w[x] - w[y]).norm() / 2.0).abs() < 1e-12);
                    assert!(t <= 2.0 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn constant_weight_report() {
        let m = line(&[0.0, 1.0, 3.0]);
        let c = Complex::new(0.6, 0.8);
        let p = LipProblem::new(m.clone(), m, vec![2, 1, 0], vec![c; 3]).unwrap();
        let r = p.boundedness_report().unwrap();
        assert!((r.w_sup - 1.0).abs() < 1e-15);
        assert_eq!(r.w_lip, 0.0);
        assert!(r.sigma_e_defect < 1e-15);
    }

    #[test]
    fn extension_constants() {
        let m = line(&[0.0, 0.01, 1.0]);
        let op = WeightedMap::with_real_weights(m.clone(), m.clone(), vec![0, 1, 2], vec![0.0, 1.0, 1.0]).unwrap();
        let r = lip0_extends_to_lip(&op);
        assert!(r.extends);
        assert!((r.w_lip - 100.0).abs() < 1e-9);
        let zero = WeightedMap::with_real_weights(m.clone(), m, vec![0; 3], vec![0.0; 3]).unwrap();
        let r = lip0_extends_to_lip(&zero);
        assert!(r.extends && r.w_sup == 0.0 && r.w_lip == 0.0);
    }
}
