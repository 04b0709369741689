//! Finite pointed metric spaces.
//!
//! A [`PointedMetricSpace`] is an ordered list of opaque point identifiers, a
//! distinguished base point `0_M` and a dense distance matrix. Construction
//! only checks shapes; [`PointedMetricSpace::validate`] reports metric axiom
//! violations so that malformed input can be diagnosed rather than rejected
//! blindly. Everything downstream assumes a space that validates.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct PointedMetricSpace<T> {
    ids: Vec<String>,
    base: usize,
    dist: Vec<Vec<T>>,
}

/// One violated metric axiom, with the witnessing indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    NonFinite { i: usize, j: usize },
    NonzeroDiagonal { i: usize },
    Asymmetric { i: usize, j: usize },
    NonPositive { i: usize, j: usize },
    /// `d(i, k) > d(i, j) + d(j, k)`.
    Triangle { i: usize, j: usize, k: usize, excess: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<T: Scalar> PointedMetricSpace<T> {
    /// Builds a space from identifiers, a base index and a row-major matrix.
    /// Only shapes and identifier uniqueness are checked here.
    pub fn from_matrix(ids: Vec<String>, base: usize, dist: Vec<Vec<T>>) -> Result<Self> {
        if ids.is_empty() {
            return Err(Error::EmptySpace);
        }
        let n = ids.len();
        if base >= n {
            return Err(Error::PointOutOfRange { index: base, len: n });
        }
        if dist.len() != n || dist.iter().any(|row| row.len() != n) {
            let cols = dist.iter().map(Vec::len).find(|&c| c != n).unwrap_or(n);
            return Err(Error::Shape {
                points: n,
                rows: dist.len(),
                cols,
            });
        }
        let mut seen = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if seen.insert(id.as_str(), i).is_some() {
                return Err(Error::DuplicatePoint(id.clone()));
            }
        }
        Ok(Self { ids, base, dist })
    }

    /// Like [`from_matrix`](Self::from_matrix) but also rejects matrices that
    /// fail [`validate`](Self::validate).
    pub fn new(ids: Vec<String>, base: usize, dist: Vec<Vec<T>>) -> Result<Self> {
        let space = Self::from_matrix(ids, base, dist)?;
        let report = space.validate();
        match report.violations.first() {
            None => Ok(space),
            Some(v) => Err(Error::InvalidMetric(format!("{v:?}"))),
        }
    }

    /// Space on `n` points named `p0..p{n-1}` with distances from a closure.
    /// The closure is only called for `i < j`; the matrix is symmetrized.
    pub fn from_fn(n: usize, base: usize, mut d: impl FnMut(usize, usize) -> T) -> Result<Self> {
        let mut dist = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let v = d(i, j);
                dist[i][j] = v;
                dist[j][i] = v;
            }
        }
        Self::new((0..n).map(|i| format!("p{i}")).collect(), base, dist)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.ids
            .iter()
            .position(|p| p == id)
            .ok_or_else(|| Error::UnknownPoint(id.to_owned()))
    }

    pub fn check_index(&self, i: usize) -> Result<usize> {
        if i < self.len() {
            Ok(i)
        } else {
            Err(Error::PointOutOfRange {
                index: i,
                len: self.len(),
            })
        }
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> T {
        self.dist[i][j]
    }

    /// Distance to the base point.
    #[inline]
    pub fn d0(&self, i: usize) -> T {
        self.dist[i][self.base]
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.dist
    }

    /// Indices of all points except the base point, in order.
    pub fn non_base(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| i != self.base)
    }

    pub fn diameter(&self) -> T {
        self.dist
            .iter()
            .flat_map(|row| row.iter().copied())
            .fold(T::zero(), T::max)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let tol = T::metric_tol();
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if !self.dist[i][j].is_finite() {
                    violations.push(Violation::NonFinite { i, j });
                }
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for i in 0..n {
            if self.dist[i][i] != T::zero() {
                violations.push(Violation::NonzeroDiagonal { i });
            }
            for j in i + 1..n {
                if (self.dist[i][j] - self.dist[j][i]).abs() > tol {
                    violations.push(Violation::Asymmetric { i, j });
                }
                if self.dist[i][j] <= T::zero() || self.dist[j][i] <= T::zero() {
                    violations.push(Violation::NonPositive { i, j });
                }
            }
        }
        for i in 0..n {
            for k in i + 1..n {
                for j in (0..n).filter(|&j| j != i && j != k) {
                    let excess = self.dist[i][k] - (self.dist[i][j] + self.dist[j][k]);
                    if excess > tol {
                        violations.push(Violation::Triangle {
                            i,
                            j,
                            k,
                            excess: excess.to_f64().unwrap_or(f64::NAN),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `min(d, cap)`; an infinite cap returns the space unchanged.
    pub fn truncate_diameter(&self, cap: T) -> Result<Self> {
        if !(cap > T::zero()) {
            return Err(Error::NonPositiveCap(cap.to_f64().unwrap_or(f64::NAN)));
        }
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|&v| v.min(cap)).collect())
            .collect();
        Ok(Self {
            ids: self.ids.clone(),
            base: self.base,
            dist,
        })
    }

    /// `M^e = M ∪ {e}` with `d(x, e) = 1` for every `x`, based at `e`.
    ///
    /// The new point is appended last and named `e` (primed until unique).
    pub fn adjoin_basepoint(&self) -> Result<Self> {
        let diam = self.diameter();
        let two = T::one() + T::one();
        if diam > two + T::metric_tol() {
            return Err(Error::DiameterTooLarge(diam.to_f64().unwrap_or(f64::NAN)));
        }
        let mut name = String::from("e");
        while self.ids.contains(&name) {
            name.push('\'');
        }
        let n = self.len();
        let mut dist: Vec<Vec<T>> = self
            .dist
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.push(T::one());
                r
            })
            .collect();
        let mut last = vec![T::one(); n + 1];
        last[n] = T::zero();
        dist.push(last);
        let mut ids = self.ids.clone();
        ids.push(name);
        Ok(Self { ids, base: n, dist })
    }

    pub fn cast<U: Scalar>(&self) -> PointedMetricSpace<U> {
        PointedMetricSpace {
            ids: self.ids.clone(),
            base: self.base,
            dist: self
                .dist
                .iter()
                .map(|row| row.iter().map(|v| U::from_f64_lossy(v.to_f64().unwrap())).collect())
                .collect(),
        }
    }
}

/// External JSON form: `{"points": [...], "base": "p0", "dist": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpaceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub points: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    pub dist: Vec<Vec<f64>>,
}

impl SpaceJson {
    /// Shape-checked space; a missing `base` defaults to the first point.
    pub fn into_space<T: Scalar>(self) -> Result<PointedMetricSpace<T>> {
        let base = match &self.base {
            Some(b) => self
                .points
                .iter()
                .position(|p| p == b)
                .ok_or_else(|| Error::UnknownPoint(b.clone()))?,
            None => 0,
        };
        let dist = self
            .dist
            .iter()
            .map(|row| row.iter().map(|&v| T::from_f64_lossy(v)).collect())
            .collect();
        PointedMetricSpace::from_matrix(self.points, base, dist)
    }
}

impl<T: Scalar> From<&PointedMetricSpace<T>> for SpaceJson {
    fn from(s: &PointedMetricSpace<T>) -> Self {
        SpaceJson {
            id: None,
            points: s.ids.clone(),
            base: Some(s.ids[s.base].clone()),
            dist: s
                .dist
                .iter()
                .map(|row| row.iter().map(|v| v.to_f64().unwrap()).collect())
                .collect(),
        }
    }
}
