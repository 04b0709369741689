//! Independent oracles shared by the integration tests: random metrics,
//! vertex enumeration of Lipschitz unit balls on tiny spaces, and a dense
//! complex rank.

#![allow(dead_code)]

use std::sync::Arc;

use lipfree::{Operator, Space};
use num_complex::Complex;
use rand::Rng;

/// Random distances in `[lo, hi]` repaired to a metric by shortest paths.
pub fn random_metric(rng: &mut impl Rng, n: usize, lo: f64, hi: f64) -> Vec<Vec<f64>> {
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = rng.gen_range(lo..=hi);
            d[i][j] = v;
            d[j][i] = v;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

pub fn space(d: Vec<Vec<f64>>) -> Arc<Space> {
    let ids = (0..d.len()).map(|i| format!("p{i}")).collect();
    Arc::new(Space::new(ids, 0, d).expect("valid metric"))
}

pub fn random_space(rng: &mut impl Rng, n: usize) -> Arc<Space> {
    space(random_metric(rng, n, 0.1, 10.0))
}

/// Small fixed metrics with up to `max_len` points, used by exhaustive tests.
pub fn tiny_metrics(max_len: usize) -> Vec<Vec<Vec<f64>>> {
    let mut out = vec![vec![vec![0.0]]];
    for &a in &[0.5, 1.0, 3.0] {
        out.push(vec![vec![0.0, a], vec![a, 0.0]]);
    }
    let triples = [(1.0, 1.0, 1.0), (1.0, 2.0, 3.0), (2.0, 0.5, 2.2), (3.0, 1.0, 2.5)];
    for &(a, b, c) in &triples {
        // d(0,1) = a, d(0,2) = b, d(1,2) = c.
        out.push(vec![vec![0.0, a, b], vec![a, 0.0, c], vec![b, c, 0.0]]);
    }
    let quads = [
        [1.0, 2.0, 3.0, 1.0, 2.0, 1.0],
        [1.0, 1.0, 1.0, 1.0, 1.0, 1.0],
        [2.0, 1.5, 1.0, 0.7, 1.8, 1.2],
    ];
    for q in &quads {
        // d01, d02, d03, d12, d13, d23.
        let [a, b, c, d, e, f] = *q;
        out.push(vec![
            vec![0.0, a, b, c],
            vec![a, 0.0, d, e],
            vec![b, d, 0.0, f],
            vec![c, e, f, 0.0],
        ]);
    }
    out.into_iter().filter(|d| d.len() <= max_len).collect()
}

/// Solve a small dense real system; `None` when singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[p][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..n {
                    a[r][c] -= f * a[col][c];
                }
                b[r] -= f * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Vertices of `{x : A x ≤ b}` (bounded) by brute force over active sets.
pub fn polytope_vertices(rows: &[(Vec<f64>, f64)], dim: usize) -> Vec<Vec<f64>> {
    if dim == 0 {
        return vec![vec![]];
    }
    let mut out: Vec<Vec<f64>> = Vec::new();
    for s in subsets(rows.len(), dim) {
        let a = s.iter().map(|&i| rows[i].0.clone()).collect();
        let b = s.iter().map(|&i| rows[i].1).collect();
        if let Some(x) = solve(a, b) {
            let feasible = rows
                .iter()
                .all(|(r, rhs)| r.iter().zip(&x).map(|(p, q)| p * q).sum::<f64>() <= rhs + 1e-9);
            if feasible && !out.iter().any(|v| v.iter().zip(&x).all(|(p, q)| (p - q).abs() < 1e-9)) {
                out.push(x);
            }
        }
    }
    out
}

fn abs_rows(rows: &mut Vec<(Vec<f64>, f64)>, coeffs: Vec<f64>, rhs: f64) {
    let neg = coeffs.iter().map(|c| -c).collect();
    rows.push((coeffs, rhs));
    rows.push((neg, rhs));
}

/// Vertices of the unit ball of `Lip₀(N)`, as functions on every point of
/// `N` (zero at the base point).
pub fn lip0_ball_vertices(n: &Space) -> Vec<Vec<f64>> {
    let free: Vec<usize> = n.non_base().collect();
    let k = free.len();
    let mut rows = Vec::new();
    for (a, &i) in free.iter().enumerate() {
        let mut c = vec![0.0; k];
        c[a] = 1.0;
        abs_rows(&mut rows, c, n.d0(i));
        for (b, &j) in free.iter().enumerate().skip(a + 1) {
            let mut c = vec![0.0; k];
            c[a] = 1.0;
            c[b] = -1.0;
            abs_rows(&mut rows, c, n.d(i, j));
        }
    }
    polytope_vertices(&rows, k)
        .into_iter()
        .map(|v| {
            let mut g = vec![0.0; n.len()];
            for (a, &i) in free.iter().enumerate() {
                g[i] = v[a];
            }
            g
        })
        .collect()
}

/// Vertices of the unit ball of `Lip(N)` under `max(‖g‖_∞, L(g))`.
pub fn lip_ball_vertices(n: &Space) -> Vec<Vec<f64>> {
    let k = n.len();
    let mut rows = Vec::new();
    for i in 0..k {
        let mut c = vec![0.0; k];
        c[i] = 1.0;
        abs_rows(&mut rows, c, 1.0);
        for j in i + 1..k {
            let mut c = vec![0.0; k];
            c[i] = 1.0;
            c[j] = -1.0;
            abs_rows(&mut rows, c, n.d(i, j));
        }
    }
    polytope_vertices(&rows, k)
}

pub fn lipschitz_constant(m: &Space, h: &[f64]) -> f64 {
    let mut l: f64 = 0.0;
    for x in 0..m.len() {
        for y in x + 1..m.len() {
            l = l.max((h[x] - h[y]).abs() / m.d(x, y));
        }
    }
    l
}

fn real_weights(w: &[Complex<f64>]) -> Vec<f64> {
    w.iter()
        .map(|c| {
            assert_eq!(c.im, 0.0, "vertex oracle needs real weights");
            c.re
        })
        .collect()
}

/// `‖wC_f‖` on `Lip₀` as a maximum over vertices of the unit ball.
pub fn lip0_operator_norm_by_vertices(op: &Operator) -> f64 {
    lip0_operator_norm_with(op, &lip0_ball_vertices(op.codomain()))
}

/// As [`lip0_operator_norm_by_vertices`] with precomputed vertices.
pub fn lip0_operator_norm_with(op: &Operator, vertices: &[Vec<f64>]) -> f64 {
    let w = real_weights(op.w());
    vertices
        .iter()
        .map(|g| {
            let h: Vec<f64> = (0..w.len()).map(|x| w[x] * g[op.f()[x]]).collect();
            lipschitz_constant(op.domain(), &h)
        })
        .fold(0.0, f64::max)
}

/// `‖wC_f‖` on `Lip` spaces with the max norm, over vertices of the ball.
pub fn lip_operator_norm_by_vertices(m: &Space, n: &Space, f: &[usize], w: &[Complex<f64>]) -> f64 {
    lip_operator_norm_with(m, &lip_ball_vertices(n), f, w)
}

/// As [`lip_operator_norm_by_vertices`] with precomputed vertices of the
/// ball of `Lip(N)`.
pub fn lip_operator_norm_with(m: &Space, vertices: &[Vec<f64>], f: &[usize], w: &[Complex<f64>]) -> f64 {
    let w = real_weights(w);
    vertices
        .iter()
        .map(|g| {
            let h: Vec<f64> = (0..w.len()).map(|x| w[x] * g[f[x]]).collect();
            let sup = h.iter().fold(0.0f64, |a, v| a.max(v.abs()));
            sup.max(lipschitz_constant(m, &h))
        })
        .fold(0.0, f64::max)
}

/// Rank of a dense complex matrix by full pivoting.
pub fn complex_rank(mut a: Vec<Vec<Complex<f64>>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for _ in 0..rows.min(cols) {
        let mut best = (0.0, 0, 0);
        for (i, row) in a.iter().enumerate().skip(rank) {
            for (j, v) in row.iter().enumerate().skip(rank) {
                if v.norm() > best.0 {
                    best = (v.norm(), i, j);
                }
            }
        }
        if best.0 < 1e-10 {
            break;
        }
        a.swap(rank, best.1);
        for row in a.iter_mut() {
            row.swap(rank, best.2);
        }
        for i in rank + 1..rows {
            let f = a[i][rank] / a[rank][rank];
            for j in rank..cols {
                let v = a[rank][j];
                a[i][j] -= f * v;
            }
        }
        rank += 1;
    }
    rank
}

/// Every map `f : M → N` as index vectors.
pub fn all_maps(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |z| {
                    let mut q = p.clone();
                    q.push(z);
                    q
                })
            })
            .collect();
    }
    out
}

/// Every weight vector of length `m` with entries from `grid`.
pub fn all_weights(m: usize, grid: &[Complex<f64>]) -> Vec<Vec<Complex<f64>>> {
    let mut out = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|p| {
                grid.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn real_grid(values: &[f64]) -> Vec<Complex<f64>> {
    values.iter().map(|&v| Complex::new(v, 0.0)).collect()
}
