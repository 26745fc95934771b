use std::io::Write;

use bijectlab_core::deals::enumerate_deals;
use bijectlab_core::exact_counts::{eval_expression, BigCount};
use bijectlab_core::matrices::{enumerate_matrices, MatrixClass};
use bijectlab_core::paths::enumerate_paths;
use bijectlab_core::verifier::{
    enumerated_cardinality, enumerated_distribution, formula_distribution, Distribution, Family,
    InterpretationId, Statistic, VerifyError, Weighting,
};
use serde_json::json;

use crate::{Failure, Format, Outcome};

/// Unweighted interpretation whose closed form gives `family` split by `by`.
fn closed_form_for(family: Family, by: &[Statistic]) -> Option<InterpretationId> {
    let mut candidates = InterpretationId::catalog();
    if let Family::Matrices(MatrixClass::Offset(a)) = family {
        candidates.push(InterpretationId::GenBarr_kj(a));
        candidates.push(InterpretationId::GenBarr_k(a));
    }
    candidates.into_iter().find(|id| {
        id.weighting() == Weighting::Unit && id.family() == Some(family) && id.stats() == by
    })
}

pub fn run(
    out: &mut impl Write,
    family: Family,
    n: usize,
    by: &[Statistic],
    closed_form: bool,
    format: Format,
) -> Outcome {
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    let enum_usage = |e: VerifyError| match e {
        VerifyError::UnknownStatistic { .. } => usage(&e),
        _ => usage(&format!("{e} (use --closed-form for large n)")),
    };
    let method = if closed_form {
        "closed-form"
    } else {
        "enumeration"
    };
    let dist: Option<Distribution> = match (by.is_empty(), closed_form) {
        (true, _) => None,
        (false, false) => Some(enumerated_distribution(family, n, by).map_err(enum_usage)?),
        (false, true) => {
            let id = closed_form_for(family, by).ok_or_else(|| {
                let names: Vec<_> = by.iter().map(|s| s.name()).collect();
                Failure::Usage(format!(
                    "no closed form for {family} by {}",
                    names.join(",")
                ))
            })?;
            Some(formula_distribution(id, n).map_err(|e| usage(&e))?)
        }
    };
    let total: BigCount = match (&dist, closed_form) {
        (Some(d), _) => d.total(),
        (None, true) => {
            eval_expression(family.cardinality_expression(), n as i64).map_err(|e| usage(&e))?
        }
        (None, false) => enumerated_cardinality(family, n)
            .map_err(enum_usage)?
            .into(),
    };

    match format {
        Format::Json => {
            let mut obj = json!({
                "family": family.to_string(),
                "n": n,
                "method": method,
                "total": total.to_string(),
            });
            if let Some(d) = &dist {
                obj["by"] = json!(by.iter().map(|s| s.name()).collect::<Vec<_>>());
                obj["distribution"] = d
                    .iter()
                    .map(|(k, v)| json!({"key": k, "count": v.to_string()}))
                    .collect();
            }
            writeln!(out, "{obj}")?;
        }
        Format::Csv => match &dist {
            None => {
                writeln!(out, "family,n,method,total")?;
                writeln!(out, "{family},{n},{method},{total}")?;
            }
            Some(d) => {
                let names: Vec<_> = by.iter().map(|s| s.name()).collect();
                writeln!(out, "{},count", names.join(","))?;
                for (k, v) in d.iter() {
                    let k: Vec<_> = k.iter().map(i64::to_string).collect();
                    writeln!(out, "{},{v}", k.join(","))?;
                }
            }
        },
        Format::Markdown => return Err(Failure::Usage("count supports --format json|csv".into())),
    }
    Ok(())
}

pub fn enumerate(out: &mut impl Write, family: Family, n: usize, limit: Option<usize>) -> Outcome {
    let limit = limit.unwrap_or(usize::MAX);
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    match family {
        Family::Deals(kind) => {
            for d in enumerate_deals(n, kind).map_err(|e| usage(&e))?.take(limit) {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&d.to_json(kind)).expect("serializes")
                )?;
            }
        }
        Family::Matrices(class) => {
            for m in enumerate_matrices(n, class)
                .map_err(|e| usage(&e))?
                .take(limit)
            {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&m.to_json()).expect("serializes")
                )?;
            }
        }
        Family::Paths => {
            for p in enumerate_paths(n).map_err(|e| usage(&e))?.take(limit) {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(&p.to_json()).expect("serializes")
                )?;
            }
        }
    }
    Ok(())
}
