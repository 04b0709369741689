//! One report builder per verb. Reports are plain JSON values; the caller
//! rounds floats and propagates criterion ids.

use std::sync::Arc;

use lipfree::asymptotics::{
    check_caraccompact, check_phi_sufficient, classify_appendix_case, shift_operator_matrix, Ladder, PhiProblem,
    ShiftExample,
};
use lipfree::metric::Violation;
use lipfree::oracle::{complex_norm_bracket, real_norm_flow, real_norm_lp, NormBracket};
use lipfree::{builtins, Element, LipProblem, Operator, Space};
use serde_json::{json, Map, Value};

use crate::input::{FamilyJob, Result};
use crate::json::num;

pub const METRIC: &str = "metric-axioms";
pub const FREE_NORM: &str = "free-norm";
pub const BOUNDED: &str = "Poids-v";
pub const BOUNDED_SIGMA_TAU: &str = "Poids-vi";
pub const NORM_ESTIMATE: &str = "Poids";
pub const N_SUMMANDS: &str = "remarkbounded";
pub const INJECTIVE: &str = "injectivity";
pub const SURJECTIVE: &str = "surjectivity";
pub const GENERAL_CASES: &str = "CaracCompactgeneral";
pub const SHIFT: &str = "Appendix-example";
pub const LIP: &str = "Lip0toLip";
pub const LIP_BOUNDED: &str = "Lip-bounded";

fn bracket(b: &NormBracket<f64>) -> Value {
    if b.is_exact() {
        num(b.hi)
    } else {
        json!({"lo": num(b.lo), "hi": num(b.hi)})
    }
}

fn ids(s: &Space, pts: impl IntoIterator<Item = usize>) -> Vec<String> {
    pts.into_iter().map(|i| s.id(i).to_owned()).collect()
}

pub fn validate(s: &Space) -> Value {
    let violations: Vec<Value> = s
        .validate()
        .violations
        .iter()
        .map(|v| match *v {
            Violation::NonFinite { i, j } => json!({"kind": "non-finite", "points": ids(s, [i, j])}),
            Violation::NonzeroDiagonal { i } => json!({"kind": "nonzero-diagonal", "points": ids(s, [i])}),
            Violation::Asymmetric { i, j } => json!({"kind": "asymmetric", "points": ids(s, [i, j])}),
            Violation::NonPositive { i, j } => json!({"kind": "non-positive", "points": ids(s, [i, j])}),
            Violation::Triangle { i, j, k, excess } => {
                json!({"kind": "triangle", "points": ids(s, [i, j, k]), "excess": num(excess)})
            }
        })
        .collect();
    json!({
        "criterion": METRIC,
        "valid": violations.is_empty(),
        "points": s.len(),
        "base": s.id(s.base()),
        "violations": violations,
    })
}

pub fn norm(g: &Element, order: usize) -> Result<Value> {
    if g.is_real() {
        let lp = real_norm_lp(g)?;
        let flow = real_norm_flow(g)?;
        return Ok(json!({
            "criterion": FREE_NORM,
            "norm": num(lp),
            "method": "lp",
            "flow": num(flow),
        }));
    }
    let b = complex_norm_bracket(g, order)?;
    Ok(json!({
        "criterion": FREE_NORM,
        "norm": {"lo": num(b.lo), "hi": num(b.hi)},
        "method": b.method.tag(),
    }))
}

pub fn opnorm(op: &Operator, order: usize, criterion: &str) -> Result<Value> {
    let n = op.operator_norm(order)?;
    let rep = op.boundedness_report();
    let witness = n.witness.map(|(x, y)| ids(op.domain(), [x, y]));
    Ok(json!({
        "criterion": criterion,
        "norm": bracket(&n.bracket),
        "method": n.bracket.method.tag(),
        "witness": witness,
        "max_ab": {"criterion": BOUNDED, "value": num(rep.a.value.max(rep.b.value))},
        "real_weights": rep.real_weights,
    }))
}

pub fn bounded(op: &Operator) -> Value {
    let rep = op.boundedness_report();
    let stat = |w: &lipfree::operator::Witnessed<f64>, criterion: &str| {
        json!({
            "criterion": criterion,
            "value": num(w.value),
            "pair": w.pair.map(|(x, y)| ids(op.domain(), [x, y])),
        })
    };
    json!({
        "criterion": BOUNDED,
        "a_max": stat(&rep.a, BOUNDED),
        "b_max": stat(&rep.b, BOUNDED),
        "sigma_max": stat(&rep.sigma, BOUNDED_SIGMA_TAU),
        "tau_max": stat(&rep.tau, BOUNDED_SIGMA_TAU),
        "n1_max": stat(&rep.n1, N_SUMMANDS),
        "n2_max": stat(&rep.n2, N_SUMMANDS),
        "real_weights": rep.real_weights,
        "estimate": {
            "criterion": NORM_ESTIMATE,
            "lo": num(rep.estimate.lo),
            "hi": num(rep.estimate.hi),
            "method": rep.estimate.method.tag(),
        },
    })
}

pub fn lip_bounded(p: &LipProblem<f64>) -> Result<Value> {
    let rep = p.boundedness_report()?;
    let lifted = p.to_lip0()?;
    let mut inner = bounded(&lifted);
    inner["criterion"] = json!(LIP);
    Ok(json!({
        "criterion": LIP_BOUNDED,
        "w_sup": num(rep.w_sup),
        "w_lip": num(rep.w_lip),
        "w_norm": num(rep.w_norm),
        "n1": num(rep.n1),
        "sigma_e_defect": num(rep.sigma_e_defect),
        "lifted": inner,
    }))
}

pub fn inject(op: &Operator) -> Value {
    let r = op.injectivity_report();
    json!({
        "criterion": INJECTIVE,
        "injective": r.injective,
        "missed": ids(op.codomain(), r.missed.iter().copied()),
        "matrix_rank": r.matrix_rank,
        "matrix_cols": r.matrix_cols,
        "rank_agrees": r.rank_agrees,
    })
}

pub fn surject(op: &Operator) -> Value {
    let r = op.surjectivity_report();
    let d = op.domain();
    json!({
        "criterion": SURJECTIVE,
        "surjective": r.surjective,
        "vanishing": ids(d, r.vanishing.iter().copied()),
        "collisions": r.collisions.iter().map(|&(x, y)| ids(d, [x, y])).collect::<Vec<_>>(),
        "base_normalized": r.base_normalized,
        "sup_first": r.sup_first.map(num),
        "sup_second": r.sup_second.map(num),
        "matrix_rank": r.matrix_rank,
        "matrix_rows": r.matrix_rows,
        "rank_agrees": r.rank_agrees,
    })
}

pub fn compact_family(job: FamilyJob, ladder: &Ladder, order: usize) -> Result<Value> {
    match job {
        FamilyJob::Phi { builtin, sizes } => {
            let truncation: Arc<dyn Fn(usize) -> lipfree::Result<Operator> + Send + Sync> = match builtin.as_str() {
                "rank-one" => Arc::new(builtins::rank_one),
                _ => Arc::new(builtins::remark_square),
            };
            let r = check_phi_sufficient(&PhiProblem {
                truncation,
                sizes,
                order,
            })?;
            Ok(serde_json::to_value(r)?)
        }
        FamilyJob::Pairs(families) => {
            let mut cases = Vec::new();
            for (fam, _) in &families {
                cases.push(match classify_appendix_case(fam, ladder) {
                    Ok(r) => serde_json::to_value(r)?,
                    // A refusal is a result, not an input error.
                    Err(lipfree::Error::Asymptotics(reason)) => json!({
                        "criterion": GENERAL_CASES,
                        "family": fam.name(),
                        "classified": false,
                        "reason": reason,
                    }),
                    Err(e) => return Err(e.into()),
                });
            }
            let regimes: Vec<_> = families
                .into_iter()
                .filter_map(|(fam, r)| r.map(|r| (r, fam)))
                .collect();
            let mut out = Map::new();
            out.insert("criterion".into(), json!(GENERAL_CASES));
            out.insert("cases".into(), Value::Array(cases));
            if !regimes.is_empty() {
                out.insert("characterization".into(), serde_json::to_value(check_caraccompact(&regimes, ladder)?)?);
            }
            Ok(Value::Object(out))
        }
    }
}

pub fn shift_demo(alpha: f64, beta: f64, n_max: usize) -> Result<Value> {
    let r = shift_operator_matrix(&ShiftExample::new(alpha, beta)?, n_max)?;
    let mut t = Map::new();
    for &(row, col, v) in &r.entries {
        let entry = t.entry(row.to_string()).or_insert_with(|| json!({}));
        entry[col.to_string()] = num(v);
    }
    Ok(json!({
        "criterion": SHIFT,
        "alpha": num(r.alpha),
        "beta": num(r.beta),
        "n_max": r.n_max,
        "T": t,
        "column_norms": r.column_norms.iter().map(|&v| num(v)).collect::<Vec<_>>(),
        "compact": r.compact,
        "verdict": r.verdict,
        "tail_sup": num(r.tail_sup),
        "column_defect": r.column_defect.map(num),
        "norm_defect": r.norm_defect.map(num),
    }))
}
