//! Min-cost flow by successive shortest augmenting paths.
//!
//! The network is the complete directed graph over a node list with
//! uncapacitated arcs; the residual graph additionally carries cancellation
//! arcs of negative cost for every arc with positive flow. Shortest paths use
//! Bellman-Ford from a virtual source attached to every node with remaining
//! supply.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct FlowSolution<T> {
    pub cost: T,
    /// `flow[u][v]` on the arc between the `u`-th and `v`-th nodes.
    pub flow: Vec<Vec<T>>,
    pub augmentations: usize,
}

/// Cheapest way to route `supply` (positive = source, negative = sink; sums
/// to zero) with per-unit arc costs `cost(u, v)`, nodes being `0..supply.len()`.
pub fn min_cost_flow<T: Scalar>(
    supply: &[T],
    cost: impl Fn(usize, usize) -> T,
) -> Result<FlowSolution<T>> {
    let n = supply.len();
    let mut flow = vec![vec![T::zero(); n]; n];
    let mut excess = supply.to_vec();
    let scale = supply.iter().fold(T::one(), |m, v| m.max(v.abs()));
    let eps = T::feas_tol() * scale;
    let total: T = supply.iter().copied().sum();
    if total.abs() > eps * T::from_f64_lossy(n.max(1) as f64) {
        return Err(Error::LpNotOptimal);
    }
    let mut augmentations = 0;
    let limit = 4 * n * n + 16;
    while excess.iter().any(|&e| e > eps) {
        if augmentations > limit {
            return Err(Error::LpNotOptimal);
        }
        // Bellman-Ford; pred[v] = (u, cancels) where `cancels` means the step
        // u -> v reduces flow on arc v -> u.
        let mut dist: Vec<Option<T>> = excess
            .iter()
            .map(|&e| if e > eps { Some(T::zero()) } else { None })
            .collect();
        let mut pred: Vec<Option<(usize, bool)>> = vec![None; n];
        for _ in 0..n {
            let mut changed = false;
            for u in 0..n {
                let Some(du) = dist[u] else { continue };
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    let mut step = (cost(u, v), false);
                    if flow[v][u] > T::zero() && -cost(v, u) < step.0 {
                        step = (-cost(v, u), true);
                    }
                    let cand = du + step.0;
                    let better = match dist[v] {
                        None => true,
                        Some(dv) => cand < dv - T::pivot_tol() * (T::one() + dv.abs()),
                    };
                    if better {
                        dist[v] = Some(cand);
                        pred[v] = Some((u, step.1));
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let sink = (0..n)
            .filter(|&v| excess[v] < -eps && dist[v].is_some())
            .min_by(|&a, &b| dist[a].unwrap().partial_cmp(&dist[b].unwrap()).unwrap())
            .ok_or(Error::LpNotOptimal)?;
        // Walk back to a source, collecting the bottleneck.
        let mut path = Vec::new();
        let mut v = sink;
        while let Some((u, cancels)) = pred[v] {
            path.push((u, v, cancels));
            v = u;
            if path.len() > n {
                return Err(Error::LpNotOptimal);
            }
        }
        let source = v;
        let mut amount = excess[source].min(-excess[sink]);
        for &(u, v, cancels) in &path {
            if cancels {
                amount = amount.min(flow[v][u]);
            }
        }
        for &(u, v, cancels) in &path {
            if cancels {
                flow[v][u] = flow[v][u] - amount;
                if flow[v][u] < eps {
                    flow[v][u] = T::zero();
                }
            } else {
                flow[u][v] = flow[u][v] + amount;
            }
        }
        excess[source] = excess[source] - amount;
        excess[sink] = excess[sink] + amount;
        augmentations += 1;
    }
    let mut total_cost = T::zero();
    for u in 0..n {
        for v in 0..n {
            if flow[u][v] > T::zero() {
                total_cost = total_cost + flow[u][v] * cost(u, v);
            }
        }
    }
    Ok(FlowSolution {
        cost: total_cost,
        flow,
        augmentations,
    })
}
