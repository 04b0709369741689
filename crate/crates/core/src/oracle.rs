//! Brute-force free-space norms.
//!
//! * [`real_norm_lp`]: `max Σ aᵢ tᵢ` over 1-Lipschitz potentials `t`
//!   vanishing at the base point (the Lip₀ unit ball, dualized).
//! * [`real_norm_flow`]: the transport form of the same quantity, solved by
//!   min-cost flow. Agreement of the two is LP strong duality.
//! * [`complex_norm_bracket`]: the complex unit ball is a second-order cone
//!   program; the disc constraints are replaced by circumscribed and
//!   inscribed regular polygons to get an upper and a lower bound.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::flow::min_cost_flow;
use crate::free::FreeElement;
use crate::lp::{LpProblem, LpSolution};
use crate::scalar::Scalar;

pub const DEFAULT_POLYGON_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BracketMethod {
    Lp,
    Flow,
    TwoPointFormula,
    TwoPointSandwich,
    TwoPointBound,
    Polygon { order: usize },
}

impl BracketMethod {
    pub fn tag(&self) -> String {
        match self {
            BracketMethod::Lp => "lp".into(),
            BracketMethod::Flow => "flow".into(),
            BracketMethod::TwoPointFormula => "two-point-formula".into(),
            BracketMethod::TwoPointSandwich => "two-point-sandwich".into(),
            BracketMethod::TwoPointBound => "two-point-bound".into(),
            BracketMethod::Polygon { order } => format!("polygon-{order}"),
        }
    }
}

/// An interval `[lo, hi]` known to contain a norm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBracket<T> {
    pub lo: T,
    pub hi: T,
    pub method: BracketMethod,
}

impl<T: Scalar> NormBracket<T> {
    pub fn new(lo: T, hi: T, method: BracketMethod) -> Self {
        debug_assert!(lo <= hi, "bracket lo > hi");
        Self { lo, hi, method }
    }

    pub fn exact(v: T, method: BracketMethod) -> Self {
        Self::new(v, v, method)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: T, tol: T) -> bool {
        self.lo - tol <= v && v <= self.hi + tol
    }

    pub fn midpoint(&self) -> T {
        (self.lo + self.hi) / (T::one() + T::one())
    }

    pub fn width(&self) -> T {
        self.hi - self.lo
    }

    /// Width over midpoint; zero for the zero bracket.
    pub fn relative_width(&self) -> T {
        let mid = self.midpoint();
        if mid == T::zero() {
            T::zero()
        } else {
            self.width() / mid
        }
    }

    /// Interval-wise maximum, used when a norm is a max over pieces.
    pub fn max(self, other: Self) -> Self {
        Self {
            lo: self.lo.max(other.lo),
            hi: self.hi.max(other.hi),
            method: self.method,
        }
    }
}

/// LP over potentials on `points` (which must not contain the base point).
fn real_lp<T: Scalar>(gamma: &FreeElement<T>, points: &[usize]) -> Result<LpSolution<T>> {
    let coeffs = gamma.real_coefficients()?;
    let space = gamma.space();
    let n = points.len();
    let pos = |i: usize| points.iter().position(|&p| p == i);
    let mut objective = vec![T::zero(); n];
    for (i, a) in coeffs {
        let k = pos(i).expect("support point included");
        objective[k] = a;
    }
    let mut lp = LpProblem::new(n);
    lp.maximize(objective);
    for (a, &i) in points.iter().enumerate() {
        lp.add_le_sparse(&[(a, T::one())], space.d0(i));
        lp.add_le_sparse(&[(a, -T::one())], space.d0(i));
        for (b, &j) in points.iter().enumerate() {
            if a != b {
                lp.add_le_sparse(&[(a, T::one()), (b, -T::one())], space.d(i, j));
            }
        }
    }
    lp.solve()
}

/// Exact real free-space norm by linear programming over every point of `M`.
pub fn real_norm_lp<T: Scalar>(gamma: &FreeElement<T>) -> Result<T> {
    if gamma.is_zero() {
        gamma.real_coefficients()?;
        return Ok(T::zero());
    }
    let points: Vec<usize> = gamma.space().non_base().collect();
    Ok(real_lp(gamma, &points)?.value)
}

/// Same program restricted to the support; equal to [`real_norm_lp`] because
/// real Lipschitz functions extend from the support without increasing their
/// constant.
pub fn real_norm_lp_support<T: Scalar>(gamma: &FreeElement<T>) -> Result<T> {
    if gamma.is_zero() {
        gamma.real_coefficients()?;
        return Ok(T::zero());
    }
    let points: Vec<usize> = gamma.support().into_iter().collect();
    Ok(real_lp(gamma, &points)?.value)
}

/// A norming function: values on every point of `M` (zero at the base)
/// attaining `⟨g, γ⟩ = ‖γ‖` with Lipschitz constant at most one.
pub fn real_norming_function<T: Scalar>(gamma: &FreeElement<T>) -> Result<Vec<T>> {
    let space = gamma.space();
    let mut g = vec![T::zero(); space.len()];
    if gamma.is_zero() {
        gamma.real_coefficients()?;
        return Ok(g);
    }
    let points: Vec<usize> = space.non_base().collect();
    let sol = real_lp(gamma, &points)?;
    for (k, &i) in points.iter().enumerate() {
        g[i] = sol.x[k];
    }
    Ok(g)
}

/// Exact real norm as a min-cost transport: mass `aᵢ` leaves each support
/// point and the base point absorbs the imbalance.
pub fn real_norm_flow<T: Scalar>(gamma: &FreeElement<T>) -> Result<T> {
    let coeffs = gamma.real_coefficients()?;
    if coeffs.is_empty() {
        return Ok(T::zero());
    }
    let space = gamma.space();
    let mut nodes: Vec<usize> = coeffs.iter().map(|&(i, _)| i).collect();
    nodes.push(space.base());
    let mut supply: Vec<T> = coeffs.iter().map(|&(_, a)| a).collect();
    let total: T = supply.iter().copied().sum();
    supply.push(-total);
    let sol = min_cost_flow(&supply, |u, v| space.d(nodes[u], nodes[v]))?;
    Ok(sol.cost)
}

fn polygon_lp<T: Scalar>(gamma: &FreeElement<T>, order: usize) -> Result<T> {
    let space = gamma.space();
    let points: Vec<usize> = space.non_base().collect();
    let n = points.len();
    // Variables: u at 2k, v at 2k + 1.
    let mut objective = vec![T::zero(); 2 * n];
    for (i, c) in gamma.terms() {
        let k = points.iter().position(|&p| p == i).expect("non-base support");
        objective[2 * k] = c.re;
        objective[2 * k + 1] = c.im;
    }
    let mut lp = LpProblem::new(2 * n);
    lp.maximize(objective);
    let dirs: Vec<(T, T)> = (0..order)
        .map(|l| {
            let theta = T::TAU() * T::from_f64_lossy(l as f64) / T::from_f64_lossy(order as f64);
            (theta.cos(), theta.sin())
        })
        .collect();
    for (a, &i) in points.iter().enumerate() {
        for &(c, s) in &dirs {
            lp.add_le_sparse(&[(2 * a, c), (2 * a + 1, s)], space.d0(i));
        }
        for (b, &j) in points.iter().enumerate().skip(a + 1) {
            for &(c, s) in &dirs {
                lp.add_le_sparse(
                    &[(2 * a, c), (2 * a + 1, s), (2 * b, -c), (2 * b + 1, -s)],
                    space.d(i, j),
                );
            }
        }
    }
    Ok(lp.solve()?.value)
}

/// Bracket on the complex free-space norm with polygon order `order`.
///
/// `hi` replaces each disc `|g(x) − g(y)| ≤ d(x, y)` by the circumscribed
/// `order`-gon, so it overestimates. Scaling that polygon by `cos(π/order)`
/// inscribes it, so `hi·cos(π/order)` underestimates; the lower end is the
/// best such bound over the halving chain `order, order/2, …` (while even and
/// at least 8), which makes brackets nest as the order doubles.
pub fn complex_norm_bracket<T: Scalar>(gamma: &FreeElement<T>, order: usize) -> Result<NormBracket<T>> {
    if order < 8 || order % 2 != 0 {
        return Err(Error::PolygonOrder(order));
    }
    let method = BracketMethod::Polygon { order };
    if gamma.is_zero() {
        return Ok(NormBracket::exact(T::zero(), method));
    }
    let hi = polygon_lp(gamma, order)?;
    let mut lo = hi * (T::PI() / T::from_f64_lossy(order as f64)).cos();
    let mut k = order;
    while k % 2 == 0 && k / 2 >= 8 && (k / 2) % 2 == 0 {
        k /= 2;
        let h = polygon_lp(gamma, k)?;
        lo = lo.max(h * (T::PI() / T::from_f64_lossy(k as f64)).cos());
    }
    Ok(NormBracket::new(lo.min(hi), hi, method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::PointedMetricSpace;
    use num_complex::Complex;
    use std::sync::Arc;

    fn space(d: [[f64; 3]; 3]) -> Arc<PointedMetricSpace<f64>> {
        Arc::new(
            PointedMetricSpace::new(
                vec!["0".into(), "x".into(), "y".into()],
                0,
                d.iter().map(|r| r.to_vec()).collect(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn single_point_norm() {
        let s = space([[0.0, 1.5, 2.0], [1.5, 0.0, 1.0], [2.0, 1.0, 0.0]]);
        let g = FreeElement::delta(&s, 1).unwrap();
        assert!((real_norm_lp(&g).unwrap() - 1.5).abs() < 1e-12);
        assert!((real_norm_flow(&g).unwrap() - 1.5).abs() < 1e-12);
        assert_eq!(real_norm_lp(&FreeElement::zero(&s)).unwrap(), 0.0);
    }

    #[test]
    fn molecule_uses_direct_arc() {
        let s = space([[0.0, 2.0, 2.0], [2.0, 0.0, 1.0], [2.0, 1.0, 0.0]]);
        let g = FreeElement::from_real(&s, [(1, 1.0), (2, -1.0)]).unwrap();
        assert!((real_norm_flow(&g).unwrap() - 1.0).abs() < 1e-12);
        assert!((real_norm_lp(&g).unwrap() - 1.0).abs() < 1e-12);
        let g2 = g.scale(Complex::new(2.0, 0.0));
        assert!((real_norm_flow(&g2).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn non_real_rejected() {
        let s = space([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]);
        let g = FreeElement::from_terms(&s, [(1, Complex::new(1.0, 1.0))]).unwrap();
        assert_eq!(real_norm_lp(&g), Err(Error::NonRealCoefficient(1)));
        assert_eq!(real_norm_flow(&g), Err(Error::NonRealCoefficient(1)));
    }

    #[test]
    fn norming_function_attains() {
        let s = space([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]);
        let g = FreeElement::from_real(&s, [(1, 1.0), (2, 1.0)]).unwrap();
        let f = real_norming_function(&g).unwrap();
        assert!((f[1] + f[2] - 2.0).abs() < 1e-12);
        assert_eq!(f[0], 0.0);
    }

    #[test]
    fn polygon_order_checked() {
        let s = space([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]);
        let g = FreeElement::delta(&s, 1).unwrap();
        assert_eq!(complex_norm_bracket(&g, 6), Err(Error::PolygonOrder(6)));
        assert_eq!(complex_norm_bracket(&g, 9), Err(Error::PolygonOrder(9)));
    }

    #[test]
    fn complex_single_point() {
        let s = space([[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]);
        let g = FreeElement::from_terms(&s, [(1, Complex::new(1.0, 1.0))]).unwrap();
        let b = complex_norm_bracket(&g, 64).unwrap();
        let truth = 2f64.sqrt();
        assert!(b.contains(truth, 1e-12), "{b:?}");
        assert!(b.width() <= (1.0 / (std::f64::consts::PI / 64.0).cos() - 1.0) * truth + 1e-12);
    }

    #[test]
    fn degenerate_high_order_terminates() {
        // Two-point element on a larger space: most objective entries vanish,
        // which used to make the simplex cycle at order 256.
        let n = 8;
        let d: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { 1.0 + ((7 * (i + j)) % 5) as f64 * 0.2 }).collect())
            .collect();
        let s = Arc::new(PointedMetricSpace::new((0..n).map(|i| i.to_string()).collect(), 0, d).unwrap());
        let g = FreeElement::from_terms(&s, [(1, Complex::new(1.0, 2.0)), (3, Complex::new(-2.0, 0.5))]).unwrap();
        let b = complex_norm_bracket(&g, 256).unwrap();
        assert!(b.relative_width() <= 1e-4, "{b:?}");
        let coarse = complex_norm_bracket(&g, 128).unwrap();
        assert!(coarse.lo <= b.lo + 1e-12 && b.hi <= coarse.hi + 1e-12);
    }
}
