//! Desk-scale checks of the compactness criteria. Total boundedness is
//! proxied by greedy ε-nets whose sizes are compared across sample sizes;
//! flatness by the supremum of distance ratios over pairs closer than δ on a
//! geometric δ-ladder with ratio √2; limits by [`detect_limit`](super::detect_limit).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use serde::Serialize;

use super::family::PairSequenceFamily;
use super::{detect_limit, Ladder, LimitClass, LimitVerdict, ZERO_TOL};
use crate::error::{Error, Result};
use crate::operator::{two_point_norm, WeightedMap};

pub const NET_SCALES: [f64; 3] = [1.0, 0.1, 0.01];
const NET_GROWTH: f64 = 1.5;
const FLAT_SLOPE: f64 = 0.25;
const FLAT_PLATEAU: f64 = 0.05;
const MIN_DELTA_RUNGS: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    /// The family does not lie in the regime the condition is about.
    Rejected,
    /// Reported data, not a condition.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub label: String,
    pub group: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<LimitVerdict>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, f64>,
}

impl Check {
    pub fn new(label: impl Into<String>, group: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            group: group.into(),
            status,
            detail: detail.into(),
            evidence: None,
            values: BTreeMap::new(),
        }
    }

    fn with_evidence(mut self, v: LimitVerdict) -> Self {
        self.evidence = Some(v);
        self
    }

    fn with_value(mut self, k: impl Into<String>, v: f64) -> Self {
        self.values.insert(k.into(), v);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub criterion: String,
    pub verdict: Status,
    pub conclusion: String,
    pub heuristic: bool,
    pub checks: Vec<Check>,
}

/// Any failure fails; otherwise any doubt is inconclusive; a pass needs at
/// least one passing condition.
pub(crate) fn aggregate<'a>(statuses: impl IntoIterator<Item = &'a Status>) -> Status {
    let mut seen_pass = false;
    let mut seen_doubt = false;
    for s in statuses {
        match s {
            Status::Fail => return Status::Fail,
            Status::Inconclusive => seen_doubt = true,
            Status::Pass => seen_pass = true,
            Status::Rejected | Status::Info => {}
        }
    }
    if seen_doubt || !seen_pass {
        Status::Inconclusive
    } else {
        Status::Pass
    }
}

/// Pass on a zero limit, fail on a nonzero or infinite one.
pub(crate) fn tends_to_zero(label: &str, group: &str, v: LimitVerdict) -> Check {
    let (status, detail) = match v.class() {
        LimitClass::Zero => (Status::Pass, "limit 0".to_owned()),
        LimitClass::Finite(c) => (Status::Fail, format!("limit {c}")),
        LimitClass::Infinite => (Status::Fail, "diverges".to_owned()),
        LimitClass::Unknown => (Status::Inconclusive, "no limit detected".to_owned()),
    };
    Check::new(label, group, status, detail).with_evidence(v)
}

fn regime_ok(v: &LimitVerdict, want_zero: bool) -> bool {
    if want_zero {
        v.is_zero()
    } else {
        v.is_infinite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `d(f(xₙ), f(yₙ)) → 0`; requires `σ(xₙ, yₙ) → 0`.
    Sigma,
    /// `min(d(f(xₙ),0), d(f(yₙ),0)) → 0`; requires `τ(xₙ, yₙ) → 0`.
    Tau,
}

/// `σ → 0` along families where images merge and `τ → 0` along families
/// where one image approaches the base point. Families outside their
/// regime are rejected rather than judged.
pub fn check_caraccompact(families: &[(Regime, PairSequenceFamily)], ladder: &Ladder) -> Result<CriterionReport> {
    let mut checks = Vec::new();
    for (regime, fam) in families {
        let (premise, target, label) = match regime {
            Regime::Sigma => (
                fam.limit_real(ladder, |s| s.d_fxfy)?,
                fam.limit_real(ladder, |s| s.sigma())?,
                "sigma(x_n,y_n) -> 0",
            ),
            Regime::Tau => (
                fam.limit_real(ladder, |s| s.d_fx0.min(s.d_fy0))?,
                fam.limit_real(ladder, |s| s.tau())?,
                "tau(x_n,y_n) -> 0",
            ),
        };
        let group = fam.name().to_owned();
        if !premise.is_zero() {
            checks.push(
                Check::new(label, group, Status::Rejected, "family outside the regime of the condition")
                    .with_evidence(premise),
            );
        } else {
            checks.push(tends_to_zero(label, &group, target));
        }
    }
    let verdict = aggregate(checks.iter().map(|c| &c.status));
    let conclusion = match verdict {
        Status::Pass => "criterion holds on supplied families",
        Status::Fail => "not compact",
        _ => "inconclusive",
    };
    Ok(CriterionReport {
        criterion: "CaracCompact".into(),
        verdict,
        conclusion: conclusion.into(),
        heuristic: true,
        checks,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointSample {
    pub w: Complex<f64>,
    pub d_f0: f64,
}

type PointFn = dyn Fn(u64) -> Result<PointSample> + Send + Sync;
type PointCrossFn = dyn Fn(u64, u64) -> Result<f64> + Send + Sync;

/// Points `x₁, x₂, …` of `M` through `w(xᵢ)`, `d(f(xᵢ),0)` and
/// `d(f(xᵢ), f(xⱼ))`.
#[derive(Clone)]
pub struct PointFamily {
    pub sample: Arc<PointFn>,
    pub cross: Arc<PointCrossFn>,
}

impl fmt::Debug for PointFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("PointFamily")
    }
}

/// `n ↦ (w(xₙ), d(f(xₙ),0))` along a sequence where `w` tends to 0 or ∞.
#[derive(Clone)]
pub struct WeightSequence {
    pub name: String,
    pub seq: Arc<PointFn>,
}

impl fmt::Debug for WeightSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightSequence").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub struct UdbProblem {
    /// Uniform discreteness constant of `M`.
    pub theta: f64,
    /// Diameter bound of `M`.
    pub diameter: f64,
    pub points: PointFamily,
    pub subfamilies: Vec<WeightSequence>,
    pub sample_sizes: Vec<usize>,
    pub alphas: Vec<f64>,
}

/// Greedy ε-net size of `points` under `dist`.
pub fn greedy_net_size(points: &[usize], dist: impl Fn(usize, usize) -> f64, eps: f64) -> usize {
    let mut centers: Vec<usize> = Vec::new();
    for &p in points {
        if !centers.iter().any(|&c| dist(c, p) <= eps) {
            centers.push(p);
        }
    }
    centers.len()
}

/// Net sizes per scale at increasing sample sizes; growth by a factor 1.5
/// between the last two sizes fails, equality passes.
fn net_check(label: &str, group: &str, sizes: &[usize], net: impl Fn(usize, f64) -> usize) -> Check {
    let mut check = Check::new(label, group, Status::Pass, "");
    let mut grew = false;
    let mut changed = false;
    for &eps in &NET_SCALES {
        let counts: Vec<usize> = sizes.iter().map(|&n| net(n, eps)).collect();
        for (&n, &c) in sizes.iter().zip(&counts) {
            check.values.insert(format!("net[eps={eps},n={n}]"), c as f64);
        }
        if let [.., prev, last] = counts[..] {
            if last != prev {
                changed = true;
            }
            if last >= 4 && last as f64 >= NET_GROWTH * prev as f64 {
                grew = true;
            }
        }
    }
    let (status, detail) = if grew {
        (Status::Fail, "net sizes keep growing with the sample")
    } else if changed {
        (Status::Inconclusive, "net sizes not yet stable")
    } else {
        (Status::Pass, "net sizes stable")
    };
    check.status = status;
    check.detail = detail.into();
    check
}

/// Uniformly discrete bounded `M`: (i) `f({|w| > α})` totally bounded for
/// each `α`, (ii) `w(x)d(f(x),0) → 0` whenever `w(x) → 0` or `|w(x)| → ∞`.
pub fn check_udb(p: &UdbProblem, ladder: &Ladder) -> Result<CriterionReport> {
    if !(p.theta > 0.0) {
        return Err(Error::Asymptotics(format!("uniform discreteness constant must be positive, got {}", p.theta)));
    }
    if !p.diameter.is_finite() {
        return Err(Error::Asymptotics("the domain must be bounded".into()));
    }
    let mut sizes = p.sample_sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let n_max = *sizes.last().ok_or_else(|| Error::Asymptotics("no sample sizes".into()))?;
    let samples: Vec<PointSample> = (1..=n_max as u64).map(|i| (p.points.sample)(i)).collect::<Result<_>>()?;
    let mut dist = vec![vec![0.0; n_max]; n_max];
    for i in 0..n_max {
        for j in i + 1..n_max {
            let d = (p.points.cross)(i as u64 + 1, j as u64 + 1)?;
            dist[i][j] = d;
            dist[j][i] = d;
        }
    }
    let mut checks = Vec::new();
    let w_zero = samples.iter().all(|s| s.w == Complex::default());
    for &alpha in &p.alphas {
        let label = format!("f(|w| > {alpha}) totally bounded");
        checks.push(net_check(&label, "(i)", &sizes, |n, eps| {
            let pts: Vec<usize> = (0..n).filter(|&i| samples[i].w.norm() > alpha).collect();
            greedy_net_size(&pts, |a, b| dist[a][b], eps)
        }));
    }
    for sub in &p.subfamilies {
        let seq = sub.seq.clone();
        let w = detect_limit(|n| seq(n).map(|s| Complex::new(s.w.norm(), 0.0)), ladder)?;
        let label = "w(x_n) d(f(x_n),0) -> 0";
        if !(w.is_zero() || w.is_infinite()) {
            checks.push(
                Check::new(label, sub.name.clone(), Status::Rejected, "w(x_n) tends neither to 0 nor to infinity")
                    .with_evidence(w),
            );
            continue;
        }
        let seq = sub.seq.clone();
        let prod = detect_limit(|n| seq(n).map(|s| s.w * s.d_f0), ladder)?;
        let mut c = tends_to_zero(label, "(ii)", prod);
        c.group = format!("(ii) {}", sub.name);
        checks.push(c);
    }
    let verdict = if w_zero && p.subfamilies.is_empty() {
        Status::Pass
    } else {
        aggregate(checks.iter().map(|c| &c.status))
    };
    let conclusion = match verdict {
        Status::Pass if w_zero => "compact (w vanishes)",
        Status::Pass => "compact",
        Status::Fail => "not compact",
        _ => "inconclusive",
    };
    Ok(CriterionReport {
        criterion: "CaracCompactUDB".into(),
        verdict,
        conclusion: conclusion.into(),
        heuristic: true,
        checks,
    })
}

/// A finite sample of `M` with the distances between images. Row and column
/// `base` are the base point and its image.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MapSample {
    pub base: usize,
    pub d_m: Vec<Vec<f64>>,
    pub d_img: Vec<Vec<f64>>,
}

pub type MapSampler = Arc<dyn Fn(usize) -> Result<MapSample> + Send + Sync>;

impl MapSample {
    pub fn len(&self) -> usize {
        self.d_m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d_m.is_empty()
    }

    /// Truncate both metrics at 2 and adjoin a common new base point at
    /// distance 1 from everything, mapped to the new base of the target.
    pub fn lifted(&self) -> MapSample {
        let n = self.len();
        let lift = |d: &Vec<Vec<f64>>| {
            let mut out: Vec<Vec<f64>> = d
                .iter()
                .map(|row| {
                    let mut r: Vec<f64> = row.iter().map(|&v| v.min(2.0)).collect();
                    r.push(1.0);
                    r
                })
                .collect();
            let mut last = vec![1.0; n + 1];
            last[n] = 0.0;
            out.push(last);
            out
        };
        // The old base is an ordinary point now.
        MapSample {
            base: n,
            d_m: lift(&self.d_m),
            d_img: lift(&self.d_img),
        }
    }
}

/// Flatness of the sampled map: sup of image ratio over pairs closer than
/// δ, on a δ-ladder with ratio √2 down to the smallest sampled distance.
fn flatness_check(label: &str, s: &MapSample, theta: Option<f64>) -> Check {
    let n = s.len();
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if s.d_m[i][j] > 0.0 {
                pairs.push((s.d_m[i][j], s.d_img[i][j] / s.d_m[i][j]));
            }
        }
    }
    let mut check = Check::new(label, "flatness", Status::Inconclusive, "");
    if pairs.is_empty() {
        check.detail = "sample has no pairs".into();
        return check;
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let min_d = pairs[0].0;
    if let Some(t) = theta {
        if min_d >= t {
            check.status = Status::Pass;
            check.detail = "vacuous: no pairs closer than the discreteness constant".into();
            return check;
        }
    }
    let prefix_max: Vec<f64> = pairs
        .iter()
        .scan(0.0f64, |m, &(_, r)| {
            *m = m.max(r);
            Some(*m)
        })
        .collect();
    let sup_below = |delta: f64| {
        let k = pairs.partition_point(|&(d, _)| d < delta);
        if k == 0 {
            0.0
        } else {
            prefix_max[k - 1]
        }
    };
    let mut deltas = Vec::new();
    let mut delta = pairs.last().expect("nonempty").0 * 2.0;
    while delta > min_d {
        deltas.push(delta);
        delta /= std::f64::consts::SQRT_2;
    }
    let sups: Vec<f64> = deltas.iter().map(|&d| sup_below(d)).collect();
    for (d, v) in deltas.iter().zip(&sups) {
        check.values.insert(format!("sup_ratio[delta={d:.6e}]"), *v);
    }
    if deltas.len() < MIN_DELTA_RUNGS {
        check.detail = "sample too coarse for a delta-ladder".into();
        return check;
    }
    let k = sups.len() - 1;
    let last = sups[k];
    let window = &sups[k - 3..];
    let nonincreasing = window.windows(2).all(|w| w[1] <= w[0]);
    let slope = if last > 0.0 && sups[k - 2] > 0.0 {
        (sups[k - 2] / last).ln() / (deltas[k - 2] / deltas[k]).ln()
    } else {
        f64::INFINITY
    };
    let plateau = sups[k - 2..].iter().all(|&v| (v - last).abs() <= FLAT_PLATEAU * last);
    let (status, detail) = if last <= ZERO_TOL {
        (Status::Pass, format!("ratio below {ZERO_TOL} at the finest scale"))
    } else if nonincreasing && slope >= FLAT_SLOPE {
        (Status::Pass, format!("ratio decays like delta^{slope:.3}"))
    } else if plateau {
        (Status::Fail, format!("ratio stays near {last:.6}"))
    } else {
        (Status::Inconclusive, "no clear trend".to_owned())
    };
    check.status = status;
    check.detail = detail;
    check
}

fn sample_nets(label: &str, group: &str, samples: &[(usize, MapSample)], radius: Option<f64>) -> Check {
    let sizes: Vec<usize> = samples.iter().map(|(n, _)| *n).collect();
    net_check(label, group, &sizes, |n, eps| {
        let s = &samples.iter().find(|(m, _)| *m == n).expect("sampled").1;
        let pts: Vec<usize> = (0..s.len())
            .filter(|&i| radius.is_none_or(|r| s.d_m[i][s.base] <= r))
            .collect();
        greedy_net_size(&pts, |a, b| s.d_img[a][b], eps)
    })
}

#[derive(Clone)]
pub struct W1Problem {
    pub sampler: MapSampler,
    pub sizes: Vec<usize>,
    /// Radii of the bounded sets tested for total boundedness of the image.
    pub radii: Vec<f64>,
    /// Uniform discreteness constant, if `M` has one.
    pub theta: Option<f64>,
    /// Families with `d(xₙ,0), d(yₙ,0) → ∞`.
    pub escaping: Vec<PairSequenceFamily>,
    /// Families with `d(xₙ,yₙ) → ∞`.
    pub far: Vec<PairSequenceFamily>,
}

impl fmt::Debug for W1Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("W1Problem")
            .field("sizes", &self.sizes)
            .field("radii", &self.radii)
            .field("theta", &self.theta)
            .field("escaping", &self.escaping)
            .field("far", &self.far)
            .finish()
    }
}

fn draw(sampler: &MapSampler, sizes: &[usize]) -> Result<Vec<(usize, MapSample)>> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    if sizes.is_empty() {
        return Err(Error::Asymptotics("no sample sizes".into()));
    }
    sizes.into_iter().map(|n| sampler(n).map(|s| (n, s))).collect()
}

fn escaping_check(fam: &PairSequenceFamily, ladder: &Ladder) -> Result<Check> {
    let label = "images accumulate or lim inf ratio = 0";
    let group = format!("P3 {}", fam.name());
    let probe = fam.sample(fam.ladder(ladder).rungs()[0])?;
    if probe.d_x0.is_none() || probe.d_y0.is_none() {
        return Ok(Check::new(label, group, Status::Rejected, "family lacks d(x_n,0), d(y_n,0)"));
    }
    let dx = fam.limit_real(ladder, |s| s.d_x0.unwrap_or(f64::NAN))?;
    let dy = fam.limit_real(ladder, |s| s.d_y0.unwrap_or(f64::NAN))?;
    if !(dx.is_infinite() && dy.is_infinite()) {
        return Ok(Check::new(label, group, Status::Rejected, "family does not escape to infinity"));
    }
    let fx = fam.limit_real(ladder, |s| s.d_fx0)?;
    let fy = fam.limit_real(ladder, |s| s.d_fy0)?;
    let ratio = fam.limit_real(ladder, |s| s.d_fxfy / s.d_xy)?;
    let accumulates = fx.is_zero() && fy.is_zero()
        || (fx.is_conclusive() && !fx.is_infinite() && fy.is_conclusive() && !fy.is_infinite() && {
            super::appendix::cauchy_tail(fam, ladder)?.is_some_and(|(cx, cy)| cx && cy)
        });
    let escapes = fx.is_infinite() || fy.is_infinite();
    let liminf_zero = ratio.is_zero() || ratio.tail_min_modulus() <= ZERO_TOL;
    let ratio_positive = matches!(ratio.class(), LimitClass::Finite(_) | LimitClass::Infinite);
    let (status, detail) = if accumulates {
        (Status::Pass, "images accumulate")
    } else if liminf_zero {
        (Status::Pass, "lim inf of the ratio is 0")
    } else if escapes && ratio_positive {
        (Status::Fail, "images escape and the ratio stays positive")
    } else {
        (Status::Inconclusive, "neither branch decided")
    };
    Ok(Check::new(label, group, status, detail).with_evidence(ratio))
}

/// `w ≡ 1`: `(P₁)` images of bounded sets totally bounded, `(P₂)` uniform
/// local flatness, `(P₃)` on escaping families, and flatness at infinity.
pub fn check_w1_compact(p: &W1Problem, ladder: &Ladder) -> Result<CriterionReport> {
    let samples = draw(&p.sampler, &p.sizes)?;
    let mut checks = Vec::new();
    for &r in &p.radii {
        checks.push(sample_nets(&format!("f(B(0,{r})) totally bounded"), "P1", &samples, Some(r)));
    }
    let mut flat = flatness_check("f uniformly locally flat", &samples.last().expect("sampled").1, p.theta);
    flat.group = "P2".into();
    checks.push(flat);
    for fam in &p.escaping {
        checks.push(escaping_check(fam, ladder)?);
    }
    for fam in &p.far {
        let label = "d(f(x_n),f(y_n))/d(x_n,y_n) -> 0";
        let group = format!("radial {}", fam.name());
        let spread = fam.limit_real(ladder, |s| s.d_xy)?;
        if !regime_ok(&spread, false) {
            checks.push(Check::new(label, group, Status::Rejected, "d(x_n,y_n) does not diverge").with_evidence(spread));
            continue;
        }
        let ratio = fam.limit_real(ladder, |s| s.d_fxfy / s.d_xy)?;
        checks.push(tends_to_zero(label, &group, ratio));
    }
    let verdict = aggregate(checks.iter().map(|c| &c.status));
    let conclusion = match verdict {
        Status::Pass => "compact",
        Status::Fail => "not compact",
        _ => "inconclusive",
    };
    Ok(CriterionReport {
        criterion: "ThmAcomplex".into(),
        verdict,
        conclusion: conclusion.into(),
        heuristic: true,
        checks,
    })
}

type TruncationFn = dyn Fn(usize) -> Result<WeightedMap<f64>> + Send + Sync;

/// Truncations of a bounded `M` on which `φ(x) = w(x)δ(f(x))` is sampled.
#[derive(Clone)]
pub struct PhiProblem {
    pub truncation: Arc<TruncationFn>,
    pub sizes: Vec<usize>,
    pub order: usize,
}

impl fmt::Debug for PhiProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PhiProblem").field("sizes", &self.sizes).field("order", &self.order).finish()
    }
}

/// `M` with the distances `‖φ(x) − φ(y)‖` in `F(N)`.
pub fn phi_sample(op: &WeightedMap<f64>, order: usize) -> Result<MapSample> {
    let m = op.domain();
    let n = m.len();
    let mut d_img = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let b = two_point_norm(op.codomain(), op.w()[i], op.f()[i], -op.w()[j], op.f()[j], order)?;
            d_img[i][j] = b.midpoint();
            d_img[j][i] = d_img[i][j];
        }
    }
    Ok(MapSample {
        base: m.base(),
        d_m: m.matrix().to_vec(),
        d_img,
    })
}

/// Sufficient condition: `φ(M)` totally bounded and `φ` uniformly locally
/// flat. A failure means only that the condition is not met.
pub fn check_phi_sufficient(p: &PhiProblem) -> Result<CriterionReport> {
    let mut sizes = p.sizes.clone();
    sizes.sort_unstable();
    sizes.dedup();
    let ops: Vec<(usize, WeightedMap<f64>)> = sizes
        .iter()
        .map(|&n| (p.truncation)(n).map(|op| (n, op)))
        .collect::<Result<_>>()?;
    if ops.is_empty() {
        return Err(Error::Asymptotics("no sample sizes".into()));
    }
    let samples: Vec<(usize, MapSample)> = ops
        .iter()
        .map(|(n, op)| phi_sample(op, p.order).map(|s| (*n, s)))
        .collect::<Result<_>>()?;
    let mut checks = vec![sample_nets("phi(M) totally bounded", "bounded", &samples, None)];
    checks.push(flatness_check("phi uniformly locally flat", &samples.last().expect("sampled").1, None));
    let verdict = aggregate(checks.iter().map(|c| &c.status));
    let (_, largest) = ops.last().expect("nonempty");
    let rank = largest.composition_matrix().rank();
    let norm = largest.operator_norm(p.order)?.bracket;
    checks.push(
        Check::new("largest truncation", "observation", Status::Info, "rank and norm of the truncated operator")
            .with_value("rank", rank as f64)
            .with_value("norm_lo", norm.lo)
            .with_value("norm_hi", norm.hi)
            .with_value("points", largest.domain().len() as f64),
    );
    let conclusion = if verdict == Status::Pass {
        "compact (sufficient condition met)"
    } else {
        "sufficient condition not met"
    };
    Ok(CriterionReport {
        criterion: "thmA".into(),
        verdict,
        conclusion: conclusion.into(),
        heuristic: true,
        checks,
    })
}
