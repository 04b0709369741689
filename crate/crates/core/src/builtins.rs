//! Finite truncations of the worked examples.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::metric::PointedMetricSpace;
use crate::operator::WeightedMap;

fn line(ids: Vec<String>, points: &[f64]) -> Result<PointedMetricSpace<f64>> {
    let dist = points
        .iter()
        .map(|x| points.iter().map(|y| (x - y).abs()).collect())
        .collect();
    PointedMetricSpace::from_matrix(ids, 0, dist)
}

/// `{0, 1, …, n} → {0, 1, 4, …, n²}` in the real line with `f(x) = x²`,
/// `w(x) = 1/x` and `w(0) = 0`.
pub fn remark_square(n: usize) -> Result<WeightedMap<f64>> {
    if n < 1 {
        return Err(Error::EmptySpace);
    }
    let xs: Vec<f64> = (0..=n).map(|i| i as f64).collect();
    let ys: Vec<f64> = xs.iter().map(|x| x * x).collect();
    let m = line(xs.iter().map(|x| x.to_string()).collect(), &xs)?;
    let nn = line(ys.iter().map(|y| y.to_string()).collect(), &ys)?;
    let w = xs.iter().map(|&x| if x == 0.0 { 0.0 } else { 1.0 / x }).collect();
    WeightedMap::with_real_weights(Arc::new(m), Arc::new(nn), (0..=n).collect(), w)
}

/// `{0} ∪ {1 + j/n : 0 ≤ j ≤ n} → {0, 1}` with `f ≡ 1` off the base point
/// and `w(x) = x`. The operator has rank one while `x ↦ w(x)δ(f(x))` is an
/// isometric copy of the domain.
pub fn rank_one(n: usize) -> Result<WeightedMap<f64>> {
    if n < 1 {
        return Err(Error::EmptySpace);
    }
    let mut xs = vec![0.0];
    xs.extend((0..=n).map(|j| 1.0 + j as f64 / n as f64));
    let m = line((0..xs.len()).map(|i| format!("x{i}")).collect(), &xs)?;
    let nn = line(vec!["0".into(), "1".into()], &[0.0, 1.0])?;
    let f = (0..xs.len()).map(|i| usize::from(i != 0)).collect();
    WeightedMap::with_real_weights(Arc::new(m), Arc::new(nn), f, xs)
}
