//! Dense two-phase simplex with a lexicographic ratio test.
//!
//! Problems are posed as `maximize c·x subject to A x ≤ b` with free `x`.
//! The norm programs in this crate have few variables (one or two per point)
//! and many constraints (one per pair, times the polygon order for complex
//! norms), so the solver works on the dual standard form
//! `minimize b·y subject to Aᵀy = c, y ≥ 0`, whose tableau has one row per
//! primal variable. The primal optimizer is read back from the simplex
//! multipliers of the final basis.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct LpProblem<T> {
    num_vars: usize,
    objective: Vec<T>,
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution<T> {
    pub value: T,
    /// Primal optimizer.
    pub x: Vec<T>,
    /// Optimal nonnegative multipliers of the `≤` constraints.
    pub duals: Vec<T>,
    pub pivots: usize,
}

impl<T: Scalar> LpProblem<T> {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            objective: vec![T::zero(); num_vars],
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.rows.len()
    }

    pub fn maximize(&mut self, objective: Vec<T>) -> &mut Self {
        assert_eq!(objective.len(), self.num_vars, "objective length");
        self.objective = objective;
        self
    }

    /// Adds `coeffs · x ≤ rhs`.
    pub fn add_le(&mut self, coeffs: Vec<T>, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint length");
        self.rows.push(coeffs);
        self.rhs.push(rhs);
        self
    }

    /// Sparse variant of [`add_le`](Self::add_le).
    pub fn add_le_sparse(&mut self, coeffs: &[(usize, T)], rhs: T) -> &mut Self {
        let mut row = vec![T::zero(); self.num_vars];
        for &(j, v) in coeffs {
            row[j] = row[j] + v;
        }
        self.add_le(row, rhs)
    }

    pub fn solve(&self) -> Result<LpSolution<T>> {
        if self.num_vars == 0 {
            return Ok(LpSolution {
                value: T::zero(),
                x: Vec::new(),
                duals: vec![T::zero(); self.rows.len()],
                pivots: 0,
            });
        }
        // Dual standard form: columns are the primal constraints.
        let n = self.num_vars;
        let m = self.rows.len();
        let mut a = vec![vec![T::zero(); m]; n];
        for (j, row) in self.rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                a[i][j] = v;
            }
        }
        let sol = solve_standard(a, self.objective.clone(), self.rhs.clone())?;
        Ok(LpSolution {
            value: sol.value,
            x: sol.multipliers,
            duals: sol.y,
            pivots: sol.pivots,
        })
    }
}

pub(crate) struct StandardSolution<T> {
    pub value: T,
    pub y: Vec<T>,
    pub multipliers: Vec<T>,
    pub pivots: usize,
}

struct Tableau<T> {
    rows: usize,
    width: usize,
    data: Vec<T>,
    basis: Vec<usize>,
    pivots: usize,
}

impl<T: Scalar> Tableau<T> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> T {
        self.data[r * self.width + c]
    }

    fn pivot(&mut self, pr: usize, pc: usize, reduced: &mut [T]) {
        let w = self.width;
        let p = self.at(pr, pc);
        let inv = T::one() / p;
        for c in 0..w {
            self.data[pr * w + c] = self.data[pr * w + c] * inv;
        }
        self.data[pr * w + pc] = T::one();
        let pivot_row: Vec<T> = self.data[pr * w..(pr + 1) * w].to_vec();
        for r in 0..self.rows {
            if r == pr {
                continue;
            }
            let f = self.data[r * w + pc];
            if f == T::zero() {
                continue;
            }
            let row = &mut self.data[r * w..(r + 1) * w];
            for (dst, &src) in row.iter_mut().zip(&pivot_row) {
                *dst = *dst - f * src;
            }
            row[pc] = T::zero();
        }
        let f = reduced[pc];
        if f != T::zero() {
            for (dst, &src) in reduced.iter_mut().zip(&pivot_row) {
                *dst = *dst - f * src;
            }
            reduced[pc] = T::zero();
        }
        self.basis[pr] = pc;
        self.pivots += 1;
    }

    /// Runs simplex iterations on `reduced` (last entry is minus the
    /// objective value). Columns `>= allowed` never enter. Entering column by
    /// most negative reduced cost; ties in the ratio test are broken
    /// lexicographically on the rows of the basis inverse, which rules out
    /// cycling on degenerate vertices.
    fn optimize(&mut self, reduced: &mut [T], allowed: usize) -> std::result::Result<(), ()> {
        let tol = T::pivot_tol();
        let rhs = self.width - 1;
        loop {
            let mut entering: Option<(usize, T)> = None;
            for (c, &v) in reduced[..allowed].iter().enumerate() {
                if v < -tol && entering.is_none_or(|(_, b)| v < b) {
                    entering = Some((c, v));
                }
            }
            let Some((pc, _)) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, T)> = None;
            for r in 0..self.rows {
                let v = self.at(r, pc);
                if v <= tol {
                    continue;
                }
                let ratio = self.at(r, rhs) / v;
                best = match best {
                    None => Some((r, ratio)),
                    Some((br, bv)) => {
                        let slack = tol * (T::one() + bv.abs());
                        if ratio < bv - slack || (ratio <= bv + slack && self.lex_less(r, br, pc)) {
                            Some((r, ratio))
                        } else {
                            Some((br, bv))
                        }
                    }
                };
            }
            let Some((pr, _)) = best else {
                return Err(());
            };
            self.pivot(pr, pc, reduced);
        }
    }

    /// Compares rows `r` and `s` of the basis inverse, each scaled by its
    /// entry in column `pc`.
    fn lex_less(&self, r: usize, s: usize, pc: usize) -> bool {
        let (vr, vs) = (self.at(r, pc), self.at(s, pc));
        let first = self.width - 1 - self.rows;
        for c in first..self.width - 1 {
            let (a, b) = (self.at(r, c) / vr, self.at(s, c) / vs);
            let slack = T::pivot_tol() * (T::one() + a.abs().max(b.abs()));
            if a < b - slack {
                return true;
            }
            if a > b + slack {
                return false;
            }
        }
        self.basis[r] < self.basis[s]
    }
}

/// `minimize cost·y subject to a y = b, y ≥ 0` with `a` given as `rows × cols`.
pub(crate) fn solve_standard<T: Scalar>(
    a: Vec<Vec<T>>,
    b: Vec<T>,
    cost: Vec<T>,
) -> Result<StandardSolution<T>> {
    let rows = a.len();
    let cols = cost.len();
    let width = cols + rows + 1;
    let rhs = width - 1;
    let mut data = vec![T::zero(); rows * width];
    let mut sign = vec![T::one(); rows];
    for r in 0..rows {
        if b[r] < T::zero() {
            sign[r] = -T::one();
        }
        for c in 0..cols {
            data[r * width + c] = sign[r] * a[r][c];
        }
        data[r * width + cols + r] = T::one();
        data[r * width + rhs] = sign[r] * b[r];
    }
    let mut t = Tableau {
        rows,
        width,
        data,
        basis: (cols..cols + rows).collect(),
        pivots: 0,
    };

    // Phase one: minimize the sum of artificials.
    let mut reduced = vec![T::zero(); width];
    for r in 0..rows {
        for c in 0..cols {
            reduced[c] = reduced[c] - t.at(r, c);
        }
        reduced[rhs] = reduced[rhs] - t.at(r, rhs);
    }
    t.optimize(&mut reduced, cols)
        .map_err(|_| Error::LpNotOptimal)?;
    let infeasibility = -reduced[rhs];
    let scale = b.iter().fold(T::one(), |m, v| m.max(v.abs()));
    if infeasibility > T::feas_tol() * scale {
        return Err(Error::LpNotOptimal);
    }
    // Drive remaining artificials out of the basis where possible.
    for r in 0..rows {
        if t.basis[r] >= cols {
            if let Some(pc) = (0..cols).find(|&c| t.at(r, c).abs() > T::pivot_tol()) {
                let mut scratch = vec![T::zero(); width];
                t.pivot(r, pc, &mut scratch);
            }
        }
    }

    // Phase two.
    let mut reduced = vec![T::zero(); width];
    reduced[..cols].copy_from_slice(&cost);
    for r in 0..rows {
        let cb = if t.basis[r] < cols { cost[t.basis[r]] } else { T::zero() };
        if cb == T::zero() {
            continue;
        }
        for c in 0..width {
            reduced[c] = reduced[c] - cb * t.at(r, c);
        }
    }
    t.optimize(&mut reduced, cols)
        .map_err(|_| Error::LpNotOptimal)?;

    let mut y = vec![T::zero(); cols];
    for r in 0..rows {
        if t.basis[r] < cols {
            y[t.basis[r]] = t.at(r, rhs);
        }
    }
    let value = y.iter().zip(&cost).map(|(&a, &c)| a * c).sum();
    // Reduced cost of artificial k is -π_k (artificials cost 0 here).
    let multipliers = (0..rows).map(|k| -reduced[cols + k] * sign[k]).collect();
    Ok(StandardSolution {
        value,
        y,
        multipliers,
        pivots: t.pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_max() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6, x <= 3, -x <= 0, -y <= 0
        let mut lp = LpProblem::<f64>::new(2);
        lp.maximize(vec![3.0, 2.0])
            .add_le(vec![1.0, 1.0], 4.0)
            .add_le(vec![1.0, 3.0], 6.0)
            .add_le(vec![1.0, 0.0], 3.0)
            .add_le(vec![-1.0, 0.0], 0.0)
            .add_le(vec![0.0, -1.0], 0.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 11.0).abs() < 1e-12);
        assert!((s.x[0] - 3.0).abs() < 1e-12 && (s.x[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn unbounded_is_reported() {
        let mut lp = LpProblem::<f64>::new(1);
        lp.maximize(vec![1.0]).add_le(vec![-1.0], 0.0);
        assert_eq!(lp.solve(), Err(Error::LpNotOptimal));
    }

    #[test]
    fn negative_rhs_and_multipliers() {
        // max -x st -x <= -2 (x >= 2), x <= 5 -> x = 2, value -2
        let mut lp = LpProblem::<f64>::new(1);
        lp.maximize(vec![-1.0]).add_le(vec![-1.0], -2.0).add_le(vec![1.0], 5.0);
        let s = lp.solve().unwrap();
        assert!((s.value + 2.0).abs() < 1e-12);
        assert!((s.x[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_problem_terminates() {
        // Many redundant constraints through the optimum.
        let mut lp = LpProblem::<f64>::new(2);
        lp.maximize(vec![1.0, 1.0]);
        for k in 0..20 {
            let t = k as f64 / 19.0;
            lp.add_le(vec![t, 1.0 - t], 1.0);
        }
        lp.add_le(vec![1.0, 0.0], 1.0).add_le(vec![0.0, 1.0], 1.0);
        let s = lp.solve().unwrap();
        assert!((s.value - 2.0).abs() < 1e-10);
    }

    #[test]
    fn f32_solver() {
        let mut lp = LpProblem::<f32>::new(1);
        lp.maximize(vec![2.0]).add_le(vec![1.0], 1.5).add_le(vec![-1.0], 1.5);
        assert!((lp.solve().unwrap().value - 3.0).abs() < 1e-5);
    }
}
