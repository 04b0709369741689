//! Case analysis for pair sequences `(xₙ, yₙ)` driven by the limits of
//! `aₙ = w(xₙ)/d(xₙ,yₙ)`, `bₙ = w(yₙ)/d(xₙ,yₙ)` and `aₙ − bₙ`.
//!
//! Each case demands either that `A(xₙ,yₙ)`, `B(xₙ,yₙ)`, `B(yₙ,xₙ)` tend to
//! 0, or, for the cases with an alternative, a convergence statement about
//! the images along a subsequence. The ladder is itself a subsequence, so the
//! alternative can be confirmed on it but never refuted.

use std::collections::BTreeMap;

use serde::Serialize;

use super::criteria::{aggregate, tends_to_zero, Check, Status};
use super::family::PairSequenceFamily;
use super::{Ladder, LimitClass, LimitVerdict, CAUCHY_RTOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppendixCase {
    /// `a → a ≠ 0`, `b → b ≠ 0`.
    One,
    /// One of `a, b` has a nonzero limit, the other tends to 0.
    /// `swapped` when `b` is the one with the nonzero limit.
    Two { swapped: bool },
    /// One of `a, b` has a nonzero limit, the other diverges.
    TwoPrime { swapped: bool },
    /// `a, b → 0`.
    Three,
    /// `|a|, |b| → ∞`, `a − b → 0`.
    Four,
    /// `|a|, |b| → ∞`, `|a − b| → ∞`.
    FourPrime,
    /// `|a|, |b| → ∞`, `a − b → c ≠ 0`.
    Five,
    /// One of `a, b` tends to 0 and the other diverges.
    MixedZeroInfinite,
}

impl AppendixCase {
    /// Number of the governing case, `None` for the unlisted mixed regime.
    pub fn number(self) -> Option<u8> {
        match self {
            AppendixCase::One => Some(1),
            AppendixCase::Two { .. } | AppendixCase::TwoPrime { .. } => Some(2),
            AppendixCase::Three => Some(3),
            AppendixCase::Four | AppendixCase::FourPrime => Some(4),
            AppendixCase::Five => Some(5),
            AppendixCase::MixedZeroInfinite => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AppendixCase::One => "1",
            AppendixCase::Two { .. } => "2",
            AppendixCase::TwoPrime { .. } => "2'",
            AppendixCase::Three => "3",
            AppendixCase::Four => "4",
            AppendixCase::FourPrime => "4'",
            AppendixCase::Five => "5",
            AppendixCase::MixedZeroInfinite => "mixed-zero-infinite",
        }
    }

    pub fn criterion_id(self) -> String {
        format!("Appendix-case-{}", self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub family: String,
    pub case: AppendixCase,
    pub label: String,
    pub number: Option<u8>,
    pub criterion: String,
    pub a: LimitVerdict,
    pub b: LimitVerdict,
    pub a_minus_b: LimitVerdict,
    /// Conditions grouped as `decay` and, where the case has one,
    /// `alternative`.
    pub conditions: Vec<Check>,
    /// Further limits along the family, for reference.
    pub observations: BTreeMap<String, LimitVerdict>,
    pub verdict: Status,
    pub heuristic: bool,
}

/// Whether `f(xₙ)` and `f(yₙ)` are Cauchy on the last three rungs, when the
/// family exposes cross distances.
pub(crate) fn cauchy_tail(fam: &PairSequenceFamily, ladder: &Ladder) -> Result<Option<(bool, bool)>> {
    if !fam.has_cross() {
        return Ok(None);
    }
    let l = fam.ladder(ladder);
    let rungs = l.rungs();
    let tail = &rungs[rungs.len() - 3..];
    let (mut sx, mut sy) = (0.0f64, 0.0f64);
    for &n in rungs {
        let s = fam.sample(n)?;
        sx = sx.max(s.d_fx0);
        sy = sy.max(s.d_fy0);
    }
    let (mut cx, mut cy) = (0.0f64, 0.0f64);
    for (i, &n) in tail.iter().enumerate() {
        for &m in &tail[i + 1..] {
            let c = fam.cross(n, m).expect("cross present")?;
            cx = cx.max(c.fx);
            cy = cy.max(c.fy);
        }
    }
    Ok(Some((
        cx <= CAUCHY_RTOL * sx.max(1.0),
        cy <= CAUCHY_RTOL * sy.max(1.0),
    )))
}

/// Alternative-branch condition: only a pass can be established.
fn confirm_only(mut c: Check) -> Check {
    if c.status == Status::Fail {
        c.status = Status::Inconclusive;
        c.detail = format!("{} along the ladder; another subsequence may still qualify", c.detail);
    }
    c.group = "alternative".into();
    c
}

fn images_converge(
    fam: &PairSequenceFamily,
    ladder: &Ladder,
    to_base: &LimitVerdict,
    which_y: bool,
) -> Result<Check> {
    let label = if which_y { "f(y_n) converges" } else { "f(x_n) converges" };
    if to_base.is_zero() {
        return Ok(Check::new(label, "alternative", Status::Pass, "converges to the base point"));
    }
    Ok(match cauchy_tail(fam, ladder)? {
        None => Check::new(label, "alternative", Status::Inconclusive, "family exposes no cross distances"),
        Some((cx, cy)) if (if which_y { cy } else { cx }) => {
            Check::new(label, "alternative", Status::Pass, "Cauchy on the ladder tail")
        }
        Some(_) => Check::new(label, "alternative", Status::Inconclusive, "not Cauchy on the ladder tail"),
    })
}

fn class_name(c: LimitClass) -> &'static str {
    match c {
        LimitClass::Zero => "zero",
        LimitClass::Finite(_) => "finite nonzero",
        LimitClass::Infinite => "infinite",
        LimitClass::Unknown => "inconclusive",
    }
}

/// Determine the governing case from the limits of `aₙ`, `bₙ`, `aₙ − bₙ` and
/// evaluate its conditions. Refuses when a needed limit is inconclusive.
pub fn classify_appendix_case(fam: &PairSequenceFamily, ladder: &Ladder) -> Result<CaseReport> {
    use AppendixCase::*;
    use LimitClass::*;
    let a = fam.limit(ladder, |s| s.a())?;
    let b = fam.limit(ladder, |s| s.b())?;
    let diff = fam.limit(ladder, |s| s.a() - s.b())?;
    let refuse = |what: &str| {
        Error::Asymptotics(format!("classification refused for {}: limit of {what} is inconclusive", fam.name()))
    };
    let case = match (a.class(), b.class()) {
        (Unknown, _) => return Err(refuse("a_n")),
        (_, Unknown) => return Err(refuse("b_n")),
        (Finite(_), Finite(_)) => One,
        (Finite(_), Zero) => Two { swapped: false },
        (Zero, Finite(_)) => Two { swapped: true },
        (Finite(_), Infinite) => TwoPrime { swapped: false },
        (Infinite, Finite(_)) => TwoPrime { swapped: true },
        (Zero, Zero) => Three,
        (Infinite, Infinite) => match diff.class() {
            Zero => Four,
            Infinite => FourPrime,
            Finite(_) => Five,
            Unknown => return Err(refuse("a_n - b_n")),
        },
        (Zero, Infinite) | (Infinite, Zero) => MixedZeroInfinite,
    };

    let mut observations = BTreeMap::new();
    let fx0 = fam.limit_real(ladder, |s| s.d_fx0)?;
    let fy0 = fam.limit_real(ladder, |s| s.d_fy0)?;
    observations.insert("d(f(x_n),0)".to_owned(), fx0.clone());
    observations.insert("d(f(y_n),0)".to_owned(), fy0.clone());
    observations.insert("d(f(x_n),0) a_n".to_owned(), fam.limit(ladder, |s| s.a() * s.d_fx0)?);
    observations.insert("d(f(y_n),0) b_n".to_owned(), fam.limit(ladder, |s| s.b() * s.d_fy0)?);
    observations.insert("sigma(x_n,y_n)".to_owned(), fam.limit_real(ladder, |s| s.sigma())?);
    observations.insert("tau(x_n,y_n)".to_owned(), fam.limit_real(ladder, |s| s.tau())?);

    let mut conditions = vec![
        tends_to_zero("A(x_n,y_n) -> 0", "decay", fam.limit_real(ladder, |s| s.big_a())?),
        tends_to_zero("B(x_n,y_n) -> 0", "decay", fam.limit_real(ladder, |s| s.b_xy())?),
        tends_to_zero("B(y_n,x_n) -> 0", "decay", fam.limit_real(ladder, |s| s.b_yx())?),
    ];
    let has_alternative = matches!(case, One | Two { .. } | TwoPrime { .. } | Five);
    match case {
        One => {
            conditions.push(images_converge(fam, ladder, &fx0, false)?);
            conditions.push(images_converge(fam, ladder, &fy0, true)?);
        }
        Two { swapped: false } | TwoPrime { swapped: false } => {
            conditions.push(images_converge(fam, ladder, &fx0, false)?);
            let v = fam.limit(ladder, |s| s.b() * s.d_fy0)?;
            conditions.push(confirm_only(tends_to_zero("d(f(y_n),0) b_n -> 0", "alternative", v)));
        }
        Two { swapped: true } | TwoPrime { swapped: true } => {
            conditions.push(images_converge(fam, ladder, &fy0, true)?);
            let v = fam.limit(ladder, |s| s.a() * s.d_fx0)?;
            conditions.push(confirm_only(tends_to_zero("d(f(x_n),0) a_n -> 0", "alternative", v)));
        }
        Five => {
            conditions.push(images_converge(fam, ladder, &fx0, false)?);
            let merge = fam.limit_real(ladder, |s| s.d_fxfy)?;
            conditions.push(confirm_only(tends_to_zero("d(f(x_n),f(y_n)) -> 0", "alternative", merge)));
            let v = fam.limit(ladder, |s| s.b() * s.d_fxfy)?;
            conditions.push(confirm_only(tends_to_zero("b_n d(f(x_n),f(y_n)) -> 0", "alternative", v)));
        }
        Three | Four | FourPrime | MixedZeroInfinite => {}
    }
    let decay = aggregate(conditions.iter().filter(|c| c.group == "decay").map(|c| &c.status));
    let alternative = aggregate(conditions.iter().filter(|c| c.group == "alternative").map(|c| &c.status));
    let verdict = if decay == Status::Pass || (has_alternative && alternative == Status::Pass) {
        Status::Pass
    } else if case == MixedZeroInfinite || has_alternative {
        // Unlisted regime, or an alternative that the ladder cannot refute.
        Status::Inconclusive
    } else {
        decay
    };
    for c in &mut conditions {
        c.detail = format!("{} (a_n {}, b_n {})", c.detail, class_name(a.class()), class_name(b.class()));
    }
    Ok(CaseReport {
        family: fam.name().to_owned(),
        case,
        label: case.label().to_owned(),
        number: case.number(),
        criterion: case.criterion_id(),
        a,
        b,
        a_minus_b: diff,
        conditions,
        observations,
        verdict,
        heuristic: true,
    })
}
