//! Finitely supported elements of the (complex) Lipschitz free space.
//!
//! An element is a formal combination `Σ aᵢ δ(xᵢ)` kept in canonical form:
//! no zero coefficients and no term at the base point. Since `δ(0) = 0`,
//! terms placed at the base point are **dropped silently** on construction.
//! "Zero" means exactly zero; nothing is rounded.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::PointedMetricSpace;
use crate::oracle::{BracketMethod, NormBracket};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
pub struct FreeElement<T: Scalar> {
    space: Arc<PointedMetricSpace<T>>,
    terms: BTreeMap<usize, Complex<T>>,
}

impl<T: Scalar> PartialEq for FreeElement<T> {
    fn eq(&self, other: &Self) -> bool {
        same_space(&self.space, &other.space) && self.terms == other.terms
    }
}

pub(crate) fn same_space<T: Scalar>(a: &Arc<PointedMetricSpace<T>>, b: &Arc<PointedMetricSpace<T>>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<T: Scalar> FreeElement<T> {
    pub fn zero(space: &Arc<PointedMetricSpace<T>>) -> Self {
        Self {
            space: Arc::clone(space),
            terms: BTreeMap::new(),
        }
    }

    /// Sums duplicate indices, then canonicalizes.
    pub fn from_terms(
        space: &Arc<PointedMetricSpace<T>>,
        terms: impl IntoIterator<Item = (usize, Complex<T>)>,
    ) -> Result<Self> {
        let mut out = Self::zero(space);
        for (i, c) in terms {
            space.check_index(i)?;
            let e = out.terms.entry(i).or_insert_with(Complex::default);
            *e = *e + c;
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn from_real(
        space: &Arc<PointedMetricSpace<T>>,
        terms: impl IntoIterator<Item = (usize, T)>,
    ) -> Result<Self> {
        Self::from_terms(space, terms.into_iter().map(|(i, a)| (i, Complex::new(a, T::zero()))))
    }

    pub fn delta(space: &Arc<PointedMetricSpace<T>>, i: usize) -> Result<Self> {
        Self::from_real(space, [(i, T::one())])
    }

    fn canonicalize(&mut self) {
        let base = self.space.base();
        self.terms
            .retain(|&i, c| i != base && (c.re != T::zero() || c.im != T::zero()));
    }

    pub fn space(&self) -> &Arc<PointedMetricSpace<T>> {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, Complex<T>)> + '_ {
        self.terms.iter().map(|(&i, &c)| (i, c))
    }

    pub fn coeff(&self, i: usize) -> Complex<T> {
        self.terms.get(&i).copied().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.im == T::zero())
    }

    /// Real coefficients, or the first point carrying an imaginary part.
    pub fn real_coefficients(&self) -> Result<Vec<(usize, T)>> {
        self.terms
            .iter()
            .map(|(&i, c)| {
                if c.im == T::zero() {
                    Ok((i, c.re))
                } else {
                    Err(Error::NonRealCoefficient(i))
                }
            })
            .collect()
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.terms.keys().copied().collect()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex<T>, Complex<T>) -> Complex<T>) -> Result<Self> {
        if !same_space(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        let keys: BTreeSet<usize> = self.terms.keys().chain(other.terms.keys()).copied().collect();
        let mut out = Self::zero(&self.space);
        for k in keys {
            out.terms.insert(k, f(self.coeff(k), other.coeff(k)));
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        self.map(|c| c * s)
    }

    pub fn conjugate(&self) -> Self {
        self.map(|c| c.conj())
    }

    /// `Re(γ) = ½(γ + γ̄)`, coefficientwise real parts.
    pub fn real_part(&self) -> Self {
        self.map(|c| Complex::new(c.re, T::zero()))
    }

    pub fn imag_part(&self) -> Self {
        self.map(|c| Complex::new(c.im, T::zero()))
    }

    fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        let mut out = Self {
            space: Arc::clone(&self.space),
            terms: self.terms.iter().map(|(&i, &c)| (i, f(c))).collect(),
        };
        out.canonicalize();
        out
    }

    /// Duality pairing `⟨g, γ⟩ = Σ aᵢ g(xᵢ)` (bilinear, no conjugation).
    pub fn pair_with(&self, g: impl Fn(usize) -> Complex<T>) -> Complex<T> {
        self.terms
            .iter()
            .fold(Complex::default(), |acc, (&i, &c)| acc + c * g(i))
    }
}

/// The molecule `(δ(x) − δ(y)) / d(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Molecule {
    pub x: usize,
    pub y: usize,
}

impl Molecule {
    pub fn new<T: Scalar>(space: &PointedMetricSpace<T>, x: usize, y: usize) -> Result<Self> {
        space.check_index(x)?;
        space.check_index(y)?;
        if x == y {
            return Err(Error::SamePoint(x));
        }
        Ok(Self { x, y })
    }

    pub fn to_element<T: Scalar>(&self, space: &Arc<PointedMetricSpace<T>>) -> Result<FreeElement<T>> {
        let inv = T::one() / space.d(self.x, self.y);
        FreeElement::from_real(space, [(self.x, inv), (self.y, -inv)])
    }
}

/// Three-term maximum of the two-point formula with complex moduli:
/// `max{|λ₁d(x,0) + λ₂d(y,0)|, |λ₁d(x,0) + λ₂(d(x,0) − d(x,y))|, |λ₂d(y,0) + λ₁(d(y,0) − d(x,y))|}`.
pub fn two_point_max<T: Scalar>(
    space: &PointedMetricSpace<T>,
    l1: Complex<T>,
    l2: Complex<T>,
    x: usize,
    y: usize,
) -> Result<T> {
    space.check_index(x)?;
    space.check_index(y)?;
    if x == y {
        return Err(Error::SamePoint(x));
    }
    let (dx, dy, dxy) = (space.d0(x), space.d0(y), space.d(x, y));
    let t1 = (l1.scale(dx) + l2.scale(dy)).norm();
    let t2 = (l1.scale(dx) + l2.scale(dx - dxy)).norm();
    let t3 = (l2.scale(dy) + l1.scale(dy - dxy)).norm();
    Ok(t1.max(t2).max(t3))
}

/// Exact norm of `aδ(x) + bδ(y)` in the real free space.
///
/// Also correct when `x` or `y` is the base point (the formula degenerates to
/// the one-point norm).
pub fn two_point_norm_real<T: Scalar>(
    space: &PointedMetricSpace<T>,
    a: T,
    b: T,
    x: usize,
    y: usize,
) -> Result<T> {
    two_point_max(
        space,
        Complex::new(a, T::zero()),
        Complex::new(b, T::zero()),
        x,
        y,
    )
}

/// The symmetric `[M/√2, √2·M]` sandwich around the three-term maximum.
///
/// Only the lower end is reliable. Bounding the norm by `‖Re γ‖ + ‖Im γ‖`
/// gives `2M`, not `√2·M`, because the two real norms may be attained by
/// different terms, and there are elements whose norm exceeds `√2·M`. Use
/// [`two_point_norm_complex_bounds`] for a bracket that always holds.
pub fn two_point_norm_complex_bracket<T: Scalar>(
    space: &PointedMetricSpace<T>,
    l1: Complex<T>,
    l2: Complex<T>,
    x: usize,
    y: usize,
) -> Result<NormBracket<T>> {
    let m = two_point_max(space, l1, l2, x, y)?;
    let r2 = T::SQRT_2();
    Ok(NormBracket::new(m / r2, m * r2, BracketMethod::TwoPointSandwich))
}

/// `[M, 2M]`, which always contains the complex norm of `λ₁δ(x) + λ₂δ(y)`.
///
/// Real 1-Lipschitz test functions give `M`; `‖Re γ‖ + ‖Im γ‖ ≤ 2M` gives
/// the upper end.
pub fn two_point_norm_complex_bounds<T: Scalar>(
    space: &PointedMetricSpace<T>,
    l1: Complex<T>,
    l2: Complex<T>,
    x: usize,
    y: usize,
) -> Result<NormBracket<T>> {
    let m = two_point_max(space, l1, l2, x, y)?;
    Ok(NormBracket::new(m, m + m, BracketMethod::TwoPointBound))
}

/// External JSON form: `{"space": "M", "terms": {"p3": [1.0, 0.0]}}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<String>,
    pub terms: BTreeMap<String, [f64; 2]>,
}

impl ElementJson {
    pub fn into_element<T: Scalar>(self, space: &Arc<PointedMetricSpace<T>>) -> Result<FreeElement<T>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (id, [re, im]) in self.terms {
            let i = space.index_of(&id)?;
            terms.push((i, Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im))));
        }
        FreeElement::from_terms(space, terms)
    }
}

impl<T: Scalar> From<&FreeElement<T>> for ElementJson {
    fn from(e: &FreeElement<T>) -> Self {
        ElementJson {
            space: None,
            terms: e
                .terms()
                .map(|(i, c)| {
                    (
                        e.space().id(i).to_owned(),
                        [c.re.to_f64().unwrap(), c.im.to_f64().unwrap()],
                    )
                })
                .collect(),
        }
    }
}
