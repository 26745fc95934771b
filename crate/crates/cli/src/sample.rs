use std::io::Write;

use bijectlab_core::bijections::{
    deal_to_matrix, deal_to_path, matrix_to_deal, matrix_to_path, path_to_deal, path_to_matrix,
};
use bijectlab_core::deals::DealKind;
use bijectlab_core::matrices::{MatrixClass, MatrixSampler, TwoRowMatrix};
use bijectlab_core::paths::matching_pairs;
use bijectlab_core::verifier::Family;
use serde_json::json;

use crate::{Failure, Outcome};

/// Converts `m` to a deal and a path and back; returns the path and the first
/// problem found.
fn roundtrip(m: &TwoRowMatrix, class: MatrixClass) -> (Option<String>, Option<String>) {
    let deal = match matrix_to_deal(m) {
        Ok(d) => d,
        Err(e) => return (None, Some(e.to_string())),
    };
    let path = match matrix_to_path(m) {
        Ok(p) => p,
        Err(e) => return (None, Some(e.to_string())),
    };
    let steps = Some(path.to_string());
    let problem = if deal_to_matrix(&deal).as_ref() != Ok(m) {
        Some("deal does not map back to the matrix")
    } else if path_to_matrix(&path) != *m {
        Some("path does not map back to the matrix")
    } else if deal_to_path(&deal).as_ref() != Ok(&path) || path_to_deal(&path).as_ref() != Ok(&deal)
    {
        Some("deal and path do not correspond")
    } else if !matching_pairs(&path).is_perfect_for(&path) {
        Some("matching pairs are not perfect")
    } else if class == MatrixClass::Abelian && deal.validate(DealKind::Barrucand).is_err() {
        Some("abelian matrix did not give a Barrucand deal")
    } else {
        None
    };
    (steps, problem.map(str::to_string))
}

pub fn run(
    out: &mut impl Write,
    family: Family,
    n: usize,
    seed: u64,
    count: usize,
    check: bool,
) -> Outcome {
    let class = match family {
        Family::Matrices(c @ (MatrixClass::Hanna | MatrixClass::Abelian)) => c,
        other => {
            return Err(Failure::Usage(format!(
                "sample supports matrices:hanna and matrices:abelian, not {other}"
            )))
        }
    };
    let mut sampler = MatrixSampler::new(seed);
    let mut mismatches = 0usize;
    for _ in 0..count {
        let m = sampler
            .sample(n, class)
            .map_err(|e| Failure::Usage(e.to_string()))?;
        let mut obj = json!(m.to_json());
        if check {
            let (steps, problem) = roundtrip(&m, class);
            obj["path"] = json!(steps);
            obj["roundtrip"] = json!(problem.is_none());
            if let Some(p) = problem {
                mismatches += 1;
                eprintln!("{m}: {p}");
            }
        }
        writeln!(out, "{obj}")?;
    }
    if mismatches > 0 {
        return Err(Failure::Data(format!(
            "{mismatches} of {count} samples failed the round trip"
        )));
    }
    Ok(())
}
