use std::io::{BufRead, Write};

use bijectlab_core::bijections::{
    deal_to_matrix, deal_to_path, matrix_to_deal, matrix_to_path, path_to_deal, path_to_matrix,
};
use bijectlab_core::deals::{Deal, DealJson};
use bijectlab_core::matrices::{MatrixJson, TwoRowMatrix};
use bijectlab_core::paths::HannaPath;
use serde::Deserialize;
use serde_json::json;

use crate::{Failure, Kind, Outcome};

/// Matrix input; `n` may be omitted.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixIn {
    n: Option<usize>,
    top: String,
    bottom: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PathIn {
    n: Option<usize>,
    steps: String,
}

enum Object {
    Deal(Deal),
    Matrix(TwoRowMatrix),
    Path(HannaPath),
}

fn parse(line: &str, kind: Kind) -> Result<Object, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    Ok(match kind {
        Kind::Deal => {
            let j: DealJson = serde_json::from_str(line).map_err(|e| err(&e))?;
            Object::Deal(Deal::try_from(&j).map_err(|e| err(&e))?)
        }
        Kind::Matrix => {
            let j: MatrixIn = serde_json::from_str(line).map_err(|e| err(&e))?;
            let n = j.n.unwrap_or(j.top.chars().count());
            let wire = MatrixJson {
                n,
                top: j.top,
                bottom: j.bottom,
            };
            Object::Matrix(TwoRowMatrix::try_from(&wire).map_err(|e| err(&e))?)
        }
        Kind::Path => {
            let j: PathIn = serde_json::from_str(line).map_err(|e| err(&e))?;
            let p: HannaPath = j.steps.parse().map_err(|e| err(&e))?;
            if let Some(n) = j.n.filter(|&n| n != p.n()) {
                return Err(format!("declared n = {n} but the path has {} steps", p.n()));
            }
            Object::Path(p)
        }
    })
}

fn convert(obj: Object, to: Kind) -> Result<String, String> {
    let err = |e: &dyn std::fmt::Display| e.to_string();
    let to_json = |v: &dyn wire::Wire| v.line();
    Ok(match (obj, to) {
        (Object::Deal(d), Kind::Deal) => to_json(&d),
        (Object::Deal(d), Kind::Matrix) => to_json(&deal_to_matrix(&d).map_err(|e| err(&e))?),
        (Object::Deal(d), Kind::Path) => to_json(&deal_to_path(&d).map_err(|e| err(&e))?),
        (Object::Matrix(m), Kind::Deal) => to_json(&matrix_to_deal(&m).map_err(|e| err(&e))?),
        (Object::Matrix(m), Kind::Matrix) => to_json(&m),
        (Object::Matrix(m), Kind::Path) => to_json(&matrix_to_path(&m).map_err(|e| err(&e))?),
        (Object::Path(p), Kind::Deal) => to_json(&path_to_deal(&p).map_err(|e| err(&e))?),
        (Object::Path(p), Kind::Matrix) => to_json(&path_to_matrix(&p)),
        (Object::Path(p), Kind::Path) => to_json(&p),
    })
}

mod wire {
    use bijectlab_core::deals::Deal;
    use bijectlab_core::matrices::TwoRowMatrix;
    use bijectlab_core::paths::HannaPath;

    /// Canonical one-line JSON form.
    pub trait Wire {
        fn line(&self) -> String;
    }

    impl Wire for Deal {
        fn line(&self) -> String {
            // Deals are labeled with the most specific kind they satisfy.
            let kind = self
                .most_specific_kind()
                .expect("converted deals are Hanna deals");
            serde_json::to_string(&self.to_json(kind)).expect("serializes")
        }
    }

    impl Wire for TwoRowMatrix {
        fn line(&self) -> String {
            serde_json::to_string(&self.to_json()).expect("serializes")
        }
    }

    impl Wire for HannaPath {
        fn line(&self) -> String {
            serde_json::to_string(&self.to_json()).expect("serializes")
        }
    }
}

/// Converts each non-blank input line; failures become `{"line", "error"}`
/// objects in place and make the command exit with status 1.
pub fn run(input: impl BufRead, out: &mut impl Write, from: Kind, to: Kind) -> Outcome {
    let mut failed = 0usize;
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse(&line, from).and_then(|obj| convert(obj, to)) {
            Ok(s) => writeln!(out, "{s}")?,
            Err(e) => {
                failed += 1;
                writeln!(out, "{}", json!({"line": i + 1, "error": e}))?;
            }
        }
    }
    if failed > 0 {
        return Err(Failure::Data(format!("{failed} input line(s) failed")));
    }
    Ok(())
}
