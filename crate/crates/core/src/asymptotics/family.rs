//! Pair sequence families `n ↦ (xₙ, yₙ)` described through the distances and
//! weights the criteria need, rather than through the points themselves.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::shift::ShiftExample;
use super::{detect_limit, Ladder, LimitVerdict};
use crate::error::{Error, Result};

/// Evaluator channels of one pair `(xₙ, yₙ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairSample {
    pub d_xy: f64,
    pub d_fx0: f64,
    pub d_fy0: f64,
    pub d_fxfy: f64,
    pub w_x: Complex<f64>,
    pub w_y: Complex<f64>,
    /// `d(xₙ, 0)` and `d(yₙ, 0)`, for families escaping to infinity.
    pub d_x0: Option<f64>,
    pub d_y0: Option<f64>,
}

impl PairSample {
    pub fn a(&self) -> Complex<f64> {
        self.w_x / self.d_xy
    }

    pub fn b(&self) -> Complex<f64> {
        self.w_y / self.d_xy
    }

    pub fn big_a(&self) -> f64 {
        (self.w_x * self.d_fx0 - self.w_y * self.d_fy0).norm() / self.d_xy
    }

    pub fn b_xy(&self) -> f64 {
        (self.w_x * self.d_fx0 - self.w_y * (self.d_fx0 - self.d_fxfy)).norm() / self.d_xy
    }

    pub fn b_yx(&self) -> f64 {
        (self.w_y * self.d_fy0 - self.w_x * (self.d_fy0 - self.d_fxfy)).norm() / self.d_xy
    }

    pub fn sigma(&self) -> f64 {
        let sx = if self.d_fx0 >= self.d_fy0 { self.w_x.norm() } else { 0.0 };
        let sy = if self.d_fy0 >= self.d_fx0 { self.w_y.norm() } else { 0.0 };
        self.d_fxfy / self.d_xy * (sx + sy)
    }

    pub fn tau(&self) -> f64 {
        (self.w_x - self.w_y).norm() / self.d_xy * self.d_fx0.min(self.d_fy0)
    }
}

/// `d(f(xₙ), f(xₘ))` and `d(f(yₙ), f(yₘ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossSample {
    pub fx: f64,
    pub fy: f64,
}

type SampleFn = dyn Fn(u64) -> Result<PairSample> + Send + Sync;
type CrossFn = dyn Fn(u64, u64) -> Result<CrossSample> + Send + Sync;

#[derive(Clone)]
pub struct PairSequenceFamily {
    name: String,
    sample: Arc<SampleFn>,
    cross: Option<Arc<CrossFn>>,
    ladder: Option<Ladder>,
}

impl fmt::Debug for PairSequenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PairSequenceFamily")
            .field("name", &self.name)
            .field("cross", &self.cross.is_some())
            .field("ladder", &self.ladder)
            .finish()
    }
}

impl PairSequenceFamily {
    pub fn new(
        name: impl Into<String>,
        sample: impl Fn(u64) -> Result<PairSample> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            sample: Arc::new(sample),
            cross: None,
            ladder: None,
        }
    }

    pub fn with_cross(
        mut self,
        cross: impl Fn(u64, u64) -> Result<CrossSample> + Send + Sync + 'static,
    ) -> Self {
        self.cross = Some(Arc::new(cross));
        self
    }

    /// Fix the ladder, for families only defined on finitely many indices.
    pub fn with_ladder(mut self, ladder: Ladder) -> Self {
        self.ladder = Some(ladder);
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn has_cross(&self) -> bool {
        self.cross.is_some()
    }

    /// The family's own ladder if it has one, else `default`.
    pub fn ladder(&self, default: &Ladder) -> Ladder {
        self.ladder.clone().unwrap_or_else(|| default.clone())
    }

    pub fn sample(&self, n: u64) -> Result<PairSample> {
        let s = (self.sample)(n)?;
        if !(s.d_xy > 0.0) {
            return Err(Error::Asymptotics(format!(
                "family {}: d(x_n, y_n) = {} at n = {n}",
                self.name, s.d_xy
            )));
        }
        Ok(s)
    }

    pub fn cross(&self, n: u64, m: u64) -> Option<Result<CrossSample>> {
        self.cross.as_ref().map(|c| c(n, m))
    }

    /// Limit of a derived complex quantity.
    pub fn limit(&self, ladder: &Ladder, q: impl Fn(&PairSample) -> Complex<f64> + Sync) -> Result<LimitVerdict> {
        detect_limit(|n| self.sample(n).map(|s| q(&s)), &self.ladder(ladder))
    }

    /// Limit of a derived real quantity.
    pub fn limit_real(&self, ladder: &Ladder, q: impl Fn(&PairSample) -> f64 + Sync) -> Result<LimitVerdict> {
        self.limit(ladder, |s| Complex::new(q(s), 0.0))
    }
}

/// Integer-valued index expressions in `n`: `n`, `n-1`, `2*n+3`, `n^2`, ...
#[derive(Debug, Clone, PartialEq)]
pub struct IndexExpr {
    source: String,
    ast: Expr,
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    N,
    Num(f64),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    fn eval(&self, n: f64) -> f64 {
        match self {
            Expr::N => n,
            Expr::Num(v) => *v,
            Expr::Add(a, b) => a.eval(n) + b.eval(n),
            Expr::Sub(a, b) => a.eval(n) - b.eval(n),
            Expr::Mul(a, b) => a.eval(n) * b.eval(n),
            Expr::Pow(a, b) => a.eval(n).powf(b.eval(n)),
            Expr::Neg(a) => -a.eval(n),
        }
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Asymptotics(format!("index expression {:?}: {msg}", self.src))
    }

    fn skip_ws(&mut self) {
        while self.chars.peek().is_some_and(|(_, c)| c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.peek().map(|&(_, c)| c)
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.chars.next();
            let rhs = self.term()?;
            lhs = if op == '+' {
                Expr::Add(Box::new(lhs), Box::new(rhs))
            } else {
                Expr::Sub(Box::new(lhs), Box::new(rhs))
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some('*') {
            self.chars.next();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.chars.next();
            return Ok(Expr::Pow(Box::new(base), Box::new(self.factor()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some('n') => {
                self.chars.next();
                Ok(Expr::N)
            }
            Some('-') => {
                self.chars.next();
                Ok(Expr::Neg(Box::new(self.factor()?)))
            }
            Some('(') => {
                self.chars.next();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("missing ')'"));
                }
                self.chars.next();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(&(_, c)) = self.chars.peek() {
                    if c.is_ascii_digit() || c == '.' {
                        s.push(c);
                        self.chars.next();
                    } else {
                        break;
                    }
                }
                s.parse().map(Expr::Num).map_err(|_| self.err("bad number"))
            }
            Some(c) => Err(self.err(&format!("unexpected {c:?}"))),
            None => Err(self.err("unexpected end")),
        }
    }
}

impl IndexExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser {
            chars: src.char_indices().peekable(),
            src,
        };
        let ast = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(Self {
            source: src.to_owned(),
            ast,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, n: u64) -> f64 {
        self.ast.eval(n as f64)
    }

    /// Value as a nonnegative integer index.
    pub fn index(&self, n: u64) -> Result<u64> {
        let v = self.eval(n);
        if v < 0.0 || v.fract() != 0.0 || v >= 2f64.powi(53) {
            return Err(Error::Asymptotics(format!(
                "index expression {:?} gives {v} at n = {n}",
                self.source
            )));
        }
        Ok(v as u64)
    }
}

/// `(xₙ, yₙ)` on the backward-shift example space.
pub fn appendix_shift_family(alpha: f64, beta: f64, xn: IndexExpr, yn: IndexExpr) -> Result<PairSequenceFamily> {
    let ex = ShiftExample::new(alpha, beta)?;
    let name = format!("appendix-shift(alpha={alpha}, beta={beta}, x={}, y={})", xn.source(), yn.source());
    let (xs, ys) = (xn.clone(), yn.clone());
    let fam = PairSequenceFamily::new(name, move |n| {
        let (x, y) = (xs.index(n)?, ys.index(n)?);
        if x == y {
            return Err(Error::Asymptotics(format!("x_n = y_n = {x} at n = {n}")));
        }
        let (fx, fy) = (ex.f(x), ex.f(y));
        Ok(PairSample {
            d_xy: ex.dist(x, y),
            d_fx0: ex.dist(fx, 0),
            d_fy0: ex.dist(fy, 0),
            d_fxfy: ex.dist(fx, fy),
            w_x: Complex::new(ex.w(x), 0.0),
            w_y: Complex::new(ex.w(y), 0.0),
            d_x0: Some(ex.dist(x, 0)),
            d_y0: Some(ex.dist(y, 0)),
        })
    });
    Ok(fam.with_cross(move |n, m| {
        Ok(CrossSample {
            fx: ex.dist(ex.f(xn.index(n)?), ex.f(xn.index(m)?)),
            fy: ex.dist(ex.f(yn.index(n)?), ex.f(yn.index(m)?)),
        })
    }))
}

/// `M = {0} ∪ [1, ∞)` in the real line, `f(x) = x²`, `w(x) = 1/x`, `w(0) = 0`.
pub fn remark_square_family(xn: IndexExpr, yn: IndexExpr) -> PairSequenceFamily {
    fn point(e: &IndexExpr, n: u64) -> Result<f64> {
        let v = e.eval(n);
        if v == 0.0 || v >= 1.0 {
            Ok(v)
        } else {
            Err(Error::Asymptotics(format!("{v} is outside {{0}} ∪ [1, ∞)")))
        }
    }
    fn w(x: f64) -> f64 {
        if x == 0.0 {
            0.0
        } else {
            1.0 / x
        }
    }
    let name = format!("remark-square(x={}, y={})", xn.source(), yn.source());
    let (xs, ys) = (xn.clone(), yn.clone());
    PairSequenceFamily::new(name, move |n| {
        let (x, y) = (point(&xs, n)?, point(&ys, n)?);
        Ok(PairSample {
            d_xy: (x - y).abs(),
            d_fx0: x * x,
            d_fy0: y * y,
            d_fxfy: (x * x - y * y).abs(),
            w_x: Complex::new(w(x), 0.0),
            w_y: Complex::new(w(y), 0.0),
            d_x0: Some(x),
            d_y0: Some(y),
        })
    })
    .with_cross(move |n, m| {
        let (xa, xb) = (point(&xn, n)?, point(&xn, m)?);
        let (ya, yb) = (point(&yn, n)?, point(&yn, m)?);
        Ok(CrossSample {
            fx: (xa * xa - xb * xb).abs(),
            fy: (ya * ya - yb * yb).abs(),
        })
    })
}

/// Real or complex table entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableScalar {
    Real(f64),
    Complex([f64; 2]),
}

impl TableScalar {
    fn value(self) -> Complex<f64> {
        match self {
            TableScalar::Real(v) => Complex::new(v, 0.0),
            TableScalar::Complex([re, im]) => Complex::new(re, im),
        }
    }
}

/// Tabulated channels on a strictly increasing index set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub n: Vec<u64>,
    pub d_xy: Vec<f64>,
    pub d_fx0: Vec<f64>,
    pub d_fy0: Vec<f64>,
    pub d_fxfy: Vec<f64>,
    pub w_x: Vec<TableScalar>,
    pub w_y: Vec<TableScalar>,
    #[serde(default)]
    pub d_x0: Option<Vec<f64>>,
    #[serde(default)]
    pub d_y0: Option<Vec<f64>>,
}

pub fn table_family(name: impl Into<String>, t: FamilyTable) -> Result<PairSequenceFamily> {
    let len = t.n.len();
    let lens = [t.d_xy.len(), t.d_fx0.len(), t.d_fy0.len(), t.d_fxfy.len(), t.w_x.len(), t.w_y.len()];
    let opt_ok = [&t.d_x0, &t.d_y0].iter().all(|o| o.as_ref().is_none_or(|v| v.len() == len));
    if lens.iter().any(|&l| l != len) || !opt_ok {
        return Err(Error::Asymptotics("table channels differ in length".into()));
    }
    let ladder = Ladder::new(t.n.clone(), false)?;
    let t = Arc::new(t);
    Ok(PairSequenceFamily::new(name, move |n| {
        let i = t
            .n
            .binary_search(&n)
            .map_err(|_| Error::Asymptotics(format!("index {n} not in table")))?;
        Ok(PairSample {
            d_xy: t.d_xy[i],
            d_fx0: t.d_fx0[i],
            d_fy0: t.d_fy0[i],
            d_fxfy: t.d_fxfy[i],
            w_x: t.w_x[i].value(),
            w_y: t.w_y[i].value(),
            d_x0: t.d_x0.as_ref().map(|v| v[i]),
            d_y0: t.d_y0.as_ref().map(|v| v[i]),
        })
    })
    .with_ladder(ladder))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_expressions() {
        let cases = [("n", 5.0), ("n-1", 4.0), ("n + 2", 7.0), ("2*n", 10.0), ("n^2", 25.0), ("2*n^2-n", 45.0), ("(n+1)^2", 36.0)];
        for (src, v) in cases {
            assert_eq!(IndexExpr::parse(src).unwrap().eval(5), v, "{src}");
        }
        for bad in ["", "m", "n+", "(n", "n n"] {
            assert!(IndexExpr::parse(bad).is_err(), "{bad}");
        }
        assert!(IndexExpr::parse("n-10").unwrap().index(3).is_err());
    }

    #[test]
    fn shift_family_channels() {
        let fam = appendix_shift_family(1.0, 1.0, IndexExpr::parse("n").unwrap(), IndexExpr::parse("n-1").unwrap()).unwrap();
        let s = fam.sample(4).unwrap();
        assert!((s.d_xy - (0.25 + 1.0 / 3.0)).abs() < 1e-15);
        assert!((s.d_fx0 - 1.0 / 3.0).abs() < 1e-15);
        assert!((s.d_fxfy - (1.0 / 3.0 + 0.5)).abs() < 1e-15);
        assert!(fam.cross(4, 8).unwrap().is_ok());
        let same = appendix_shift_family(1.0, 1.0, IndexExpr::parse("n").unwrap(), IndexExpr::parse("n").unwrap()).unwrap();
        assert!(same.sample(4).is_err());
    }

    #[test]
    fn square_family_channels() {
        let fam = remark_square_family(IndexExpr::parse("n").unwrap(), IndexExpr::parse("n+1").unwrap());
        let s = fam.sample(3).unwrap();
        assert_eq!((s.d_xy, s.d_fx0, s.d_fxfy), (1.0, 9.0, 7.0));
        assert!((s.sigma() - 7.0 / 4.0).abs() < 1e-15);
    }

    #[test]
    fn table_lookup() {
        let n: Vec<u64> = (1..=6).collect();
        let t = FamilyTable {
            n: n.clone(),
            d_xy: vec![1.0; 6],
            d_fx0: vec![2.0; 6],
            d_fy0: vec![1.0; 6],
            d_fxfy: vec![1.0; 6],
            w_x: vec![TableScalar::Real(1.0); 6],
            w_y: vec![TableScalar::Complex([0.0, 1.0]); 6],
            d_x0: None,
            d_y0: None,
        };
        let fam = table_family("t", t.clone()).unwrap();
        assert_eq!(fam.sample(3).unwrap().w_y, Complex::new(0.0, 1.0));
        assert!(fam.sample(9).is_err());
        let mut short = t;
        short.d_xy.pop();
        assert!(table_family("t", short).is_err());
    }
}
