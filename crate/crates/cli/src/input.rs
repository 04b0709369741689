//! Problem files: parsing, builtins and validation.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use lipfree::asymptotics::{
    appendix_shift_family, remark_square_family, table_family, FamilyTable, IndexExpr, PairSequenceFamily, Regime,
    ShiftExample,
};
use lipfree::free::ElementJson;
use lipfree::{builtins, Element, LipProblem, LipProblemJson, Operator, OperatorJson, Space, SpaceJson};
use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed input: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lib(#[from] lipfree::Error),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, InputError>;

pub fn read_json(path: &Path) -> Result<Value> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(serde_json::from_str(&text)?)
}

fn builtin_name(v: &Value) -> Option<&str> {
    v.get("builtin").and_then(Value::as_str)
}

/// A space that satisfies the metric axioms; violations are input errors.
pub fn valid_space(js: SpaceJson) -> Result<Space> {
    let s: Space = js.into_space()?;
    if let Some(v) = s.validate().violations.first() {
        return Err(lipfree::Error::InvalidMetric(format!("{v:?}")).into());
    }
    Ok(s)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NormInput {
    space: SpaceJson,
    terms: std::collections::BTreeMap<String, [f64; 2]>,
}

pub fn element(v: Value) -> Result<Element> {
    let input: NormInput = serde_json::from_value(v)?;
    let space = Arc::new(valid_space(input.space)?);
    Ok(ElementJson {
        space: None,
        terms: input.terms,
    }
    .into_element(&space)?)
}

#[derive(Deserialize)]
#[serde(tag = "builtin", rename_all = "kebab-case", deny_unknown_fields)]
enum BuiltinOperator {
    RemarkSquare { n: usize },
    RankOne { n: usize },
    AppendixShift { alpha: f64, beta: f64, nmax: usize },
}

fn builtin_operator(v: Value) -> Result<Operator> {
    Ok(match serde_json::from_value(v)? {
        BuiltinOperator::RemarkSquare { n } => builtins::remark_square(n)?,
        BuiltinOperator::RankOne { n } => builtins::rank_one(n)?,
        BuiltinOperator::AppendixShift { alpha, beta, nmax } => ShiftExample::new(alpha, beta)?.operator(nmax)?,
    })
}

/// Explicit operator JSON or `{"builtin": ...}`.
pub fn operator(v: Value) -> Result<Operator> {
    if builtin_name(&v).is_some() {
        return builtin_operator(v);
    }
    let js: OperatorJson = serde_json::from_value(v)?;
    Ok(js.into_operator()?)
}

pub fn lip_problem(v: Value) -> Result<LipProblem<f64>> {
    let js: LipProblemJson = serde_json::from_value(v)?;
    Ok(js.into_problem()?)
}

/// What a family file asks for.
pub enum FamilyJob {
    /// Pair-sequence families, each with an optional regime for the
    /// compactness characterization.
    Pairs(Vec<(PairSequenceFamily, Option<Regime>)>),
    /// Truncations of a builtin operator for the sufficient condition.
    Phi { builtin: String, sizes: Vec<usize> },
}

#[derive(Deserialize)]
#[serde(rename_all = "kebab-case")]
enum RegimeJson {
    Sigma,
    Tau,
}

fn take_regime(v: &mut Value) -> Result<Option<Regime>> {
    let Some(obj) = v.as_object_mut() else {
        return Err(InputError::Usage("a family must be a JSON object".into()));
    };
    match obj.remove("regime") {
        None => Ok(None),
        Some(r) => Ok(Some(match serde_json::from_value(r)? {
            RegimeJson::Sigma => Regime::Sigma,
            RegimeJson::Tau => Regime::Tau,
        })),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ShiftFamilyJson {
    alpha: f64,
    beta: f64,
    xn: String,
    yn: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareFamilyJson {
    xn: String,
    yn: String,
}

#[derive(Deserialize)]
struct TableJson {
    #[serde(default = "table_name")]
    name: String,
    #[serde(flatten)]
    table: FamilyTable,
}

fn table_name() -> String {
    "custom-table".into()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PhiJson {
    operator: String,
    sizes: Vec<usize>,
}

fn pair_family(mut v: Value) -> Result<(PairSequenceFamily, Option<Regime>)> {
    let regime = take_regime(&mut v)?;
    let name = builtin_name(&v)
        .ok_or_else(|| InputError::Usage("family needs a \"builtin\" key".into()))?
        .to_owned();
    v.as_object_mut().expect("object").remove("builtin");
    let fam = match name.as_str() {
        "appendix-shift" => {
            let js: ShiftFamilyJson = serde_json::from_value(v)?;
            appendix_shift_family(js.alpha, js.beta, IndexExpr::parse(&js.xn)?, IndexExpr::parse(&js.yn)?)?
        }
        "remark-square" => {
            let js: SquareFamilyJson = serde_json::from_value(v)?;
            remark_square_family(IndexExpr::parse(&js.xn)?, IndexExpr::parse(&js.yn)?)
        }
        "custom-table" => {
            let js: TableJson = serde_json::from_value(v)?;
            table_family(js.name, js.table)?
        }
        other => return Err(InputError::Usage(format!("unknown family builtin {other:?}"))),
    };
    Ok((fam, regime))
}

/// A single family, `{"families": [...]}`, or `{"builtin": "phi", ...}`.
pub fn family_job(v: Value) -> Result<FamilyJob> {
    if builtin_name(&v) == Some("phi") {
        let mut v = v;
        v.as_object_mut().expect("object").remove("builtin");
        let js: PhiJson = serde_json::from_value(v)?;
        if js.operator != "rank-one" && js.operator != "remark-square" {
            return Err(InputError::Usage(format!("unknown phi operator {:?}", js.operator)));
        }
        if js.sizes.is_empty() {
            return Err(InputError::Usage("phi needs at least one truncation size".into()));
        }
        return Ok(FamilyJob::Phi {
            builtin: js.operator,
            sizes: js.sizes,
        });
    }
    let items = match v {
        Value::Object(mut obj) if obj.contains_key("families") => match obj.remove("families") {
            Some(Value::Array(a)) if !a.is_empty() => a,
            _ => return Err(InputError::Usage("\"families\" must be a nonempty array".into())),
        },
        other => vec![other],
    };
    Ok(FamilyJob::Pairs(items.into_iter().map(pair_family).collect::<Result<_>>()?))
}
