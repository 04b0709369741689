//! Weighted Lipschitz operators `wf̂ : F(M) → F(N)`, `δ(x) ↦ w(x)δ(f(x))`,
//! and their adjoints, the weighted composition operators
//! `wC_f : Lip₀(N) → Lip₀(M)`, `g ↦ w·(g∘f)`.
//!
//! On finite spaces every such operator is bounded; what is computed here is
//! the quantitative side: the pair statistics `A, B, σ, τ`, the operator
//! norm as a maximum over molecules, and the injectivity and surjectivity
//! criteria together with rank cross-checks on the matrix of `wC_f`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free::{same_space, two_point_max, two_point_norm_real, FreeElement};
use crate::linalg::CMatrix;
use crate::metric::{PointedMetricSpace, SpaceJson};
use crate::oracle::{complex_norm_bracket, BracketMethod, NormBracket};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct WeightedMap<T: Scalar> {
    domain: Arc<PointedMetricSpace<T>>,
    codomain: Arc<PointedMetricSpace<T>>,
    f: Vec<usize>,
    w: Vec<Complex<T>>,
}

/// Statistics of one ordered pair `(x, y)`, `x ≠ y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairStats<T> {
    pub a: T,
    pub b_xy: T,
    pub b_yx: T,
    pub sigma: T,
    pub tau: T,
    pub s_xy: bool,
    pub s_yx: bool,
    /// `|w(x)| d(f(x),f(y)) / d(x,y)`.
    pub n1_x: T,
    pub n1_y: T,
    /// `d(f(x),0) |w(x) − w(y)| / d(x,y)`.
    pub n2_x: T,
    pub n2_y: T,
}

/// A maximum together with the ordered pair attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witnessed<T> {
    pub value: T,
    pub pair: Option<(usize, usize)>,
}

impl<T: Scalar> Witnessed<T> {
    fn none() -> Self {
        Self {
            value: T::zero(),
            pair: None,
        }
    }

    fn offer(&mut self, value: T, pair: (usize, usize)) {
        if self.pair.is_none() || value > self.value {
            self.value = value;
            self.pair = Some(pair);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessReport<T> {
    pub a: Witnessed<T>,
    pub b: Witnessed<T>,
    pub sigma: Witnessed<T>,
    pub tau: Witnessed<T>,
    pub n1: Witnessed<T>,
    pub n2: Witnessed<T>,
    pub real_weights: bool,
    /// `max(A, B)` for real weights, `[max(A,B), 2·max(A,B)]` otherwise.
    pub estimate: NormBracket<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorNorm<T> {
    pub bracket: NormBracket<T>,
    /// Molecule `(x, y)` whose image carries the upper end.
    pub witness: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InjectivityReport {
    pub injective: bool,
    /// Points of `N ∖ {0}` outside `f(coz(w))`.
    pub missed: Vec<usize>,
    pub matrix_rank: usize,
    pub matrix_cols: usize,
    pub rank_agrees: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurjectivityReport<T> {
    pub surjective: bool,
    /// Points of `M ∖ {0}` where `w` vanishes.
    pub vanishing: Vec<usize>,
    /// Distinct points with the same image (after normalization).
    pub collisions: Vec<(usize, usize)>,
    /// `f(0_M)` was replaced by `0_N` because `w(0_M) = 0`.
    pub base_normalized: bool,
    /// `sup |d(x,0)/w(x) − d(y,0)/w(y)| / d(f(x),f(y))`, when the gates pass.
    pub sup_first: Option<T>,
    /// `sup |d(x,0)/w(x) − (d(x,0) − d(x,y))/w(y)| / d(f(x),f(y))`.
    pub sup_second: Option<T>,
    pub matrix_rank: usize,
    pub matrix_rows: usize,
    pub rank_agrees: bool,
}

impl<T: Scalar> WeightedMap<T> {
    pub fn new(
        domain: Arc<PointedMetricSpace<T>>,
        codomain: Arc<PointedMetricSpace<T>>,
        f: Vec<usize>,
        w: Vec<Complex<T>>,
    ) -> Result<Self> {
        if f.len() != domain.len() {
            return Err(Error::PartialMap(f.len().min(domain.len())));
        }
        if w.len() != domain.len() {
            return Err(Error::PartialMap(w.len().min(domain.len())));
        }
        for &z in &f {
            codomain.check_index(z)?;
        }
        let b = domain.base();
        if f[b] != codomain.base() && w[b] != Complex::default() {
            return Err(Error::BasePointCondition);
        }
        Ok(Self {
            domain,
            codomain,
            f,
            w,
        })
    }

    pub fn with_real_weights(
        domain: Arc<PointedMetricSpace<T>>,
        codomain: Arc<PointedMetricSpace<T>>,
        f: Vec<usize>,
        w: Vec<T>,
    ) -> Result<Self> {
        let w = w.into_iter().map(|v| Complex::new(v, T::zero())).collect();
        Self::new(domain, codomain, f, w)
    }

    pub fn domain(&self) -> &Arc<PointedMetricSpace<T>> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<PointedMetricSpace<T>> {
        &self.codomain
    }

    pub fn f(&self) -> &[usize] {
        &self.f
    }

    pub fn w(&self) -> &[Complex<T>] {
        &self.w
    }

    pub fn is_real_weighted(&self) -> bool {
        self.w.iter().all(|c| c.im == T::zero())
    }

    /// Cozero set `{x : w(x) ≠ 0}`.
    pub fn coz(&self) -> Vec<usize> {
        (0..self.w.len())
            .filter(|&x| self.w[x] != Complex::default())
            .collect()
    }

    /// `φ(x) = w(x)δ(f(x))` as an element of `F(N)`.
    pub fn phi(&self, x: usize) -> Result<FreeElement<T>> {
        self.domain.check_index(x)?;
        FreeElement::from_terms(&self.codomain, [(self.f[x], self.w[x])])
    }

    pub fn pair_stats(&self, x: usize, y: usize) -> Result<PairStats<T>> {
        self.domain.check_index(x)?;
        self.domain.check_index(y)?;
        if x == y {
            return Err(Error::SamePoint(x));
        }
        let n = &self.codomain;
        let d = self.domain.d(x, y);
        let (fx, fy) = (self.f[x], self.f[y]);
        let (wx, wy) = (self.w[x], self.w[y]);
        let (dfx, dfy, dff) = (n.d0(fx), n.d0(fy), n.d(fx, fy));
        let a = (wx.scale(dfx) - wy.scale(dfy)).norm() / d;
        let b_xy = (wx.scale(dfx) - wy.scale(dfx - dff)).norm() / d;
        let b_yx = (wy.scale(dfy) - wx.scale(dfy - dff)).norm() / d;
        let s_xy = dfx >= dfy;
        let s_yx = dfy >= dfx;
        let sel = |s: bool, v: T| if s { v } else { T::zero() };
        let sigma = dff / d * (sel(s_xy, wx.norm()) + sel(s_yx, wy.norm()));
        let dw = (wx - wy).norm() / d;
        let tau = dw * dfx.min(dfy);
        Ok(PairStats {
            a,
            b_xy,
            b_yx,
            sigma,
            tau,
            s_xy,
            s_yx,
            n1_x: wx.norm() * dff / d,
            n1_y: wy.norm() * dff / d,
            n2_x: dfx * dw,
            n2_y: dfy * dw,
        })
    }

    fn ordered_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.domain.len();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
    }

    fn unordered_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.domain.len();
        (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .collect()
    }

    /// Maxima of the pair statistics over all ordered pairs, including pairs
    /// with the base point.
    pub fn boundedness_report(&self) -> BoundednessReport<T> {
        let mut a = Witnessed::none();
        let mut b = Witnessed::none();
        let mut sigma = Witnessed::none();
        let mut tau = Witnessed::none();
        let mut n1 = Witnessed::none();
        let mut n2 = Witnessed::none();
        for (x, y) in self.ordered_pairs() {
            let s = self.pair_stats(x, y).expect("distinct in-range pair");
            a.offer(s.a, (x, y));
            b.offer(s.b_xy, (x, y));
            sigma.offer(s.sigma, (x, y));
            tau.offer(s.tau, (x, y));
            n1.offer(s.n1_x, (x, y));
            n2.offer(s.n2_x, (x, y));
        }
        let real_weights = self.is_real_weighted();
        let m = a.value.max(b.value);
        let estimate = if real_weights {
            NormBracket::exact(m, BracketMethod::TwoPointFormula)
        } else {
            NormBracket::new(m, m + m, BracketMethod::TwoPointBound)
        };
        BoundednessReport {
            a,
            b,
            sigma,
            tau,
            n1,
            n2,
            real_weights,
            estimate,
        }
    }

    /// Norm of `wf̂(m_xy) = (w(x)δ(f(x)) − w(y)δ(f(y))) / d(x,y)`.
    pub fn molecule_image_norm(&self, x: usize, y: usize, order: usize) -> Result<NormBracket<T>> {
        self.domain.check_index(x)?;
        self.domain.check_index(y)?;
        if x == y {
            return Err(Error::SamePoint(x));
        }
        let d = self.domain.d(x, y);
        let (fx, fy) = (self.f[x], self.f[y]);
        let (wx, wy) = (self.w[x], -self.w[y]);
        let b = two_point_norm(&self.codomain, wx, fx, wy, fy, order)?;
        Ok(NormBracket::new(b.lo / d, b.hi / d, b.method))
    }

    /// `‖wf̂‖ = ‖wC_f‖` as the maximum over all molecules. Exact for real
    /// weights; a polygon bracket of order `order` otherwise.
    pub fn operator_norm(&self, order: usize) -> Result<OperatorNorm<T>> {
        let pairs = self.unordered_pairs();
        let norms: Vec<NormBracket<T>> = pairs
            .par_iter()
            .map(|&(x, y)| self.molecule_image_norm(x, y, order))
            .collect::<Result<_>>()?;
        let mut best: Option<(NormBracket<T>, (usize, usize))> = None;
        for (b, &p) in norms.iter().zip(&pairs) {
            best = Some(match best {
                None => (*b, p),
                Some((acc, wp)) => {
                    let wp = if b.hi > acc.hi { p } else { wp };
                    (acc.max(*b), wp)
                }
            });
        }
        let method = if self.is_real_weighted() {
            BracketMethod::TwoPointFormula
        } else {
            BracketMethod::Polygon { order }
        };
        Ok(match best {
            None => OperatorNorm {
                bracket: NormBracket::exact(T::zero(), method),
                witness: None,
            },
            Some((b, p)) => OperatorNorm {
                bracket: NormBracket::new(b.lo, b.hi, method),
                witness: Some(p),
            },
        })
    }

    /// `wf̂(Σ aᵢδ(xᵢ)) = Σ aᵢ w(xᵢ) δ(f(xᵢ))`.
    pub fn apply(&self, gamma: &FreeElement<T>) -> Result<FreeElement<T>> {
        if !same_space(gamma.space(), &self.domain) {
            return Err(Error::SpaceMismatch);
        }
        FreeElement::from_terms(
            &self.codomain,
            gamma.terms().map(|(x, a)| (self.f[x], a * self.w[x])),
        )
    }

    /// `(wC_f g)(x) = w(x) g(f(x))` for `g` given on every point of `N`.
    pub fn compose(&self, g: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.domain.len())
            .map(|x| self.w[x] * g[self.f[x]])
            .collect()
    }

    /// Matrix of `wC_f` from coordinates `(g(z))_{z ∈ N∖{0}}` to
    /// `(w(x)g(f(x)))_{x ∈ M∖{0}}`, both in index order.
    pub fn composition_matrix(&self) -> CMatrix<T> {
        let rows: Vec<usize> = self.domain.non_base().collect();
        let cols: Vec<usize> = self.codomain.non_base().collect();
        let mut m = CMatrix::zeros(rows.len(), cols.len());
        for (r, &x) in rows.iter().enumerate() {
            if let Some(c) = cols.iter().position(|&z| z == self.f[x]) {
                m.set(r, c, self.w[x]);
            }
        }
        m
    }

    /// Injective iff `f(coz(w)) ∪ {0}` is all of `N`.
    pub fn injectivity_report(&self) -> InjectivityReport {
        let hit: Vec<bool> = {
            let mut h = vec![false; self.codomain.len()];
            for x in self.coz() {
                h[self.f[x]] = true;
            }
            h
        };
        let missed: Vec<usize> = self.codomain.non_base().filter(|&z| !hit[z]).collect();
        let injective = missed.is_empty();
        let m = self.composition_matrix();
        let matrix_rank = m.rank();
        InjectivityReport {
            injective,
            missed,
            matrix_rank,
            matrix_cols: m.cols(),
            rank_agrees: injective == (matrix_rank == m.cols()),
        }
    }

    /// Surjective iff `w` does not vanish on `M ∖ {0}` and `f` is injective.
    ///
    /// When `w(0_M) = 0` the value `f(0_M)` is irrelevant (`δ(0) = 0`), so it
    /// is normalized to `0_N` before testing injectivity.
    pub fn surjectivity_report(&self) -> SurjectivityReport<T> {
        let base = self.domain.base();
        let mut f = self.f.clone();
        let base_normalized = f[base] != self.codomain.base();
        f[base] = self.codomain.base();
        let vanishing: Vec<usize> = self
            .domain
            .non_base()
            .filter(|&x| self.w[x] == Complex::default())
            .collect();
        let n = self.domain.len();
        let collisions: Vec<(usize, usize)> = (0..n)
            .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
            .filter(|&(x, y)| f[x] == f[y])
            .collect();
        let surjective = vanishing.is_empty() && collisions.is_empty();
        let (sup_first, sup_second) = if surjective {
            let (s1, s2) = self.surjectivity_sups(&f);
            (Some(s1), Some(s2))
        } else {
            (None, None)
        };
        let m = self.composition_matrix();
        let matrix_rank = m.rank();
        SurjectivityReport {
            surjective,
            vanishing,
            collisions,
            base_normalized,
            sup_first,
            sup_second,
            matrix_rank,
            matrix_rows: m.rows(),
            rank_agrees: surjective == (matrix_rank == m.rows()),
        }
    }

    fn surjectivity_sups(&self, f: &[usize]) -> (T, T) {
        let dm = &self.domain;
        let base = dm.base();
        // Convention 1/w(0) = 0.
        let inv = |x: usize| {
            if x == base {
                Complex::default()
            } else {
                self.w[x].inv()
            }
        };
        let mut s1 = T::zero();
        let mut s2 = T::zero();
        for (x, y) in self.ordered_pairs() {
            let dff = self.codomain.d(f[x], f[y]);
            let first = (inv(x).scale(dm.d0(x)) - inv(y).scale(dm.d0(y))).norm() / dff;
            let second = (inv(x).scale(dm.d0(x)) - inv(y).scale(dm.d0(x) - dm.d(x, y))).norm() / dff;
            s1 = s1.max(first);
            s2 = s2.max(second);
        }
        (s1, s2)
    }
}

/// Norm of `λ₁δ(p) + λ₂δ(q)` in `F(N)`: exact when the element is
/// essentially real (one term, or `λ₂/λ₁` real), polygon bracket otherwise.
pub fn two_point_norm<T: Scalar>(
    space: &Arc<PointedMetricSpace<T>>,
    l1: Complex<T>,
    p: usize,
    l2: Complex<T>,
    q: usize,
    order: usize,
) -> Result<NormBracket<T>> {
    let base = space.base();
    let (l1, l2) = (
        if p == base { Complex::default() } else { l1 },
        if q == base { Complex::default() } else { l2 },
    );
    let zero = Complex::default();
    let single = |c: Complex<T>, z: usize| NormBracket::exact(c.norm() * space.d0(z), BracketMethod::TwoPointFormula);
    if p == q {
        return Ok(single(l1 + l2, p));
    }
    if l2 == zero {
        return Ok(single(l1, p));
    }
    if l1 == zero {
        return Ok(single(l2, q));
    }
    let cross = l2 * l1.conj();
    if cross.im.abs() <= T::metric_tol() * cross.norm() {
        // λ₂ = r λ₁ with r real: rotate by the phase of λ₁.
        let r = cross.re / l1.norm_sqr();
        let v = l1.norm() * two_point_norm_real(space, T::one(), r, p, q)?;
        return Ok(NormBracket::exact(v, BracketMethod::TwoPointFormula));
    }
    let gamma = FreeElement::from_terms(space, [(p, l1), (q, l2)])?;
    let b = complex_norm_bracket(&gamma, order)?;
    // Intersect with [M, 2M], which always holds.
    let m = two_point_max(space, l1, l2, p, q)?;
    let lo = b.lo.max(m);
    let hi = b.hi.min(m + m);
    Ok(NormBracket::new(lo.min(hi), hi, b.method))
}

/// External JSON form of an operator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OperatorJson {
    pub domain: SpaceJson,
    pub codomain: SpaceJson,
    pub f: BTreeMap<String, String>,
    pub w: BTreeMap<String, [f64; 2]>,
}

impl OperatorJson {
    /// Spaces are shape-checked and must satisfy the metric axioms.
    pub fn into_operator<T: Scalar>(self) -> Result<WeightedMap<T>> {
        let domain: PointedMetricSpace<T> = self.domain.into_space()?;
        let codomain: PointedMetricSpace<T> = self.codomain.into_space()?;
        for s in [&domain, &codomain] {
            if let Some(v) = s.validate().violations.first() {
                return Err(Error::InvalidMetric(format!("{v:?}")));
            }
        }
        let (f, w) = resolve_maps(&domain, &codomain, &self.f, &self.w)?;
        WeightedMap::new(Arc::new(domain), Arc::new(codomain), f, w)
    }
}

pub(crate) fn resolve_maps<T: Scalar>(
    domain: &PointedMetricSpace<T>,
    codomain: &PointedMetricSpace<T>,
    f: &BTreeMap<String, String>,
    w: &BTreeMap<String, [f64; 2]>,
) -> Result<(Vec<usize>, Vec<Complex<T>>)> {
    for key in f.keys().chain(w.keys()) {
        domain.index_of(key)?;
    }
    let mut fv = Vec::with_capacity(domain.len());
    let mut wv = Vec::with_capacity(domain.len());
    for (x, id) in domain.ids().iter().enumerate() {
        let z = f.get(id).ok_or(Error::PartialMap(x))?;
        fv.push(codomain.index_of(z)?);
        let [re, im] = *w.get(id).ok_or(Error::PartialMap(x))?;
        wv.push(Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im)));
    }
    Ok((fv, wv))
}

impl<T: Scalar> From<&WeightedMap<T>> for OperatorJson {
    fn from(op: &WeightedMap<T>) -> Self {
        let d = op.domain();
        let c = op.codomain();
        OperatorJson {
            domain: SpaceJson::from(&**d),
            codomain: SpaceJson::from(&**c),
            f: (0..d.len())
                .map(|x| (d.id(x).to_owned(), c.id(op.f[x]).to_owned()))
                .collect(),
            w: (0..d.len())
                .map(|x| {
                    (
                        d.id(x).to_owned(),
                        [op.w[x].re.to_f64().unwrap(), op.w[x].im.to_f64().unwrap()],
                    )
                })
                .collect(),
        }
    }
}
