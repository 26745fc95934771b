use std::collections::BTreeMap;
use std::io::Write;

use bijectlab_core::deals::DealKind;
use bijectlab_core::exact_counts::eval_expression;
use bijectlab_core::matrices::MatrixClass;
use bijectlab_core::verifier::{
    enumerated_cardinality, run_suite, CheckId, Family, Report, Suite, ANDREWS_MAX_N,
    EXHAUSTIVE_SUITE_MAX_N,
};
use bijectlab_oeis::SequenceRef;

use crate::{Failure, Format, Outcome};

fn run_reports(suite: Suite, n_max: usize) -> Result<Vec<(CheckId, Report)>, Failure> {
    if suite != Suite::Identities && n_max > EXHAUSTIVE_SUITE_MAX_N.min(ANDREWS_MAX_N) {
        eprintln!(
            "note: enumeration checks stop at n = {EXHAUSTIVE_SUITE_MAX_N} (Andrews pairs at n = {ANDREWS_MAX_N}); identities run to n = {n_max}"
        );
    }
    let cells = suite.cells(n_max);
    let reports = run_suite(&cells).map_err(|e| Failure::Data(e.to_string()))?;
    Ok(cells.into_iter().map(|(id, _)| id).zip(reports).collect())
}

/// One row per check: the n values covered and the ones that failed.
struct Row {
    description: &'static str,
    ns: Vec<usize>,
    failed: Vec<usize>,
}

fn summarize(reports: &[(CheckId, Report)]) -> Vec<(String, Row)> {
    let mut order = Vec::new();
    let mut rows: BTreeMap<String, Row> = BTreeMap::new();
    for (id, r) in reports {
        let row = rows.entry(r.id.clone()).or_insert_with(|| {
            order.push(r.id.clone());
            Row {
                description: id.description(),
                ns: vec![],
                failed: vec![],
            }
        });
        row.ns.push(r.n);
        if !r.pass {
            row.failed.push(r.n);
        }
    }
    order
        .into_iter()
        .map(|name| {
            let row = rows.remove(&name).expect("inserted above");
            (name, row)
        })
        .collect()
}

fn span(ns: &[usize]) -> String {
    match (ns.iter().min(), ns.iter().max()) {
        (Some(lo), Some(hi)) if lo == hi => format!("{lo}"),
        (Some(lo), Some(hi)) => format!("{lo}..{hi}"),
        _ => "-".into(),
    }
}

fn write_markdown_table(out: &mut impl Write, reports: &[(CheckId, Report)]) -> Outcome {
    writeln!(out, "| check | n | result | claim |")?;
    writeln!(out, "|---|---|---|---|")?;
    for (name, row) in summarize(reports) {
        let result = if row.failed.is_empty() {
            "pass".to_string()
        } else {
            let f: Vec<_> = row.failed.iter().map(usize::to_string).collect();
            format!("FAIL at n = {}", f.join(", "))
        };
        writeln!(
            out,
            "| {name} | {} | {result} | {} |",
            span(&row.ns),
            row.description
        )?;
    }
    Ok(())
}

pub fn run(out: &mut impl Write, suite: Suite, n_max: usize, format: Format) -> Outcome {
    let reports = run_reports(suite, n_max)?;
    match format {
        Format::Json => {
            for (_, r) in &reports {
                writeln!(out, "{}", r.to_json_line())?;
            }
        }
        Format::Markdown => write_markdown_table(out, &reports)?,
        Format::Csv => {
            return Err(Failure::Usage(
                "verify supports --format json|markdown".into(),
            ))
        }
    }
    let failed = reports.iter().filter(|(_, r)| !r.pass).count();
    if failed > 0 {
        eprintln!("{failed} of {} checks failed", reports.len());
        return Err(Failure::Quiet);
    }
    eprintln!("{} checks passed", reports.len());
    Ok(())
}

pub fn report(out: &mut impl Write, n_max: usize) -> Outcome {
    let mut ok = true;
    let enum_max = n_max.min(5);
    writeln!(out, "# bijectlab report\n")?;

    writeln!(out, "## Family sizes\n")?;
    writeln!(
        out,
        "Enumerated counts against closed forms, n = 0..{enum_max}.\n"
    )?;
    let families = [
        Family::Deals(DealKind::Barrucand),
        Family::Deals(DealKind::Franel),
        Family::Deals(DealKind::Hanna),
        Family::Matrices(MatrixClass::Abelian),
        Family::Matrices(MatrixClass::Hanna),
        Family::Paths,
    ];
    writeln!(out, "| family | counts | matches closed form |")?;
    writeln!(out, "|---|---|---|")?;
    for family in families {
        let mut counts = Vec::new();
        let mut agree = true;
        for n in 0..=enum_max {
            let c = enumerated_cardinality(family, n).map_err(|e| Failure::Data(e.to_string()))?;
            let closed = eval_expression(family.cardinality_expression(), n as i64)
                .map_err(|e| Failure::Data(e.to_string()))?;
            agree &= closed == c.into();
            counts.push(c.to_string());
        }
        ok &= agree;
        writeln!(
            out,
            "| {family} | {} | {} |",
            counts.join(", "),
            if agree { "yes" } else { "NO" }
        )?;
    }

    writeln!(out, "\n## Checks\n")?;
    let reports = run_reports(Suite::Default, n_max)?;
    ok &= reports.iter().all(|(_, r)| r.pass);
    write_markdown_table(out, &reports)?;

    writeln!(out, "\n## Sequences\n")?;
    writeln!(
        out,
        "Agreement of every closed form for each sequence, first 16 terms.\n"
    )?;
    writeln!(out, "| sequence | first terms | consistent |")?;
    writeln!(out, "|---|---|---|")?;
    for seq in SequenceRef::all(16) {
        let r = seq.local_consistency();
        ok &= r.pass;
        let head: Vec<_> = seq
            .local_prefix
            .iter()
            .take(8)
            .map(|v| v.to_string())
            .collect();
        writeln!(
            out,
            "| {} | {}, ... | {} |",
            seq.oeis_id,
            head.join(", "),
            if r.pass { "yes" } else { "NO" }
        )?;
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Data("report contains failures".into()))
    }
}
