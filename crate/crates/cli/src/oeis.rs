use std::io::Write;
use std::path::PathBuf;

use bijectlab_oeis::{
    cross_check, default_cache_dir, fetch_bfile, HttpTransport, SequenceRef, Transport,
};

use crate::{Failure, Outcome};

const IDS: [&str; 3] = ["A000172", "A005259", "A084771"];

pub fn run(
    out: &mut impl Write,
    ids: &[String],
    depth: usize,
    online: bool,
    cache_dir: Option<PathBuf>,
    local_only: bool,
) -> Outcome {
    let ids: Vec<&str> = if ids.is_empty() {
        IDS.to_vec()
    } else {
        ids.iter().map(String::as_str).collect()
    };
    for id in &ids {
        SequenceRef::by_id(id, 0).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let cache_dir = cache_dir.unwrap_or_else(default_cache_dir);
    let transport: Option<&dyn Transport> = if online { Some(&HttpTransport) } else { None };

    let mut failed = false;
    for id in ids {
        let seq = SequenceRef::by_id(id, depth).expect("checked above");
        let local = seq.local_consistency();
        failed |= !local.pass;
        writeln!(out, "{}", local.to_json_line())?;
        if local_only || depth == 0 {
            continue;
        }
        let report = fetch_bfile(id, &cache_dir, transport).and_then(|bfile| {
            let offset = bfile.offset().unwrap_or(0).max(0) as usize;
            let seq = SequenceRef::by_id(id, offset + depth)?;
            cross_check(&seq, &bfile, depth)
        });
        match report {
            Ok(r) => {
                failed |= !r.pass;
                writeln!(out, "{}", r.to_json_line())?;
            }
            Err(e) => {
                failed = true;
                eprintln!("{id}: {e}");
                if !online {
                    eprintln!(
                        "{id}: pass --online to download b-files into {}",
                        cache_dir.display()
                    );
                }
            }
        }
    }
    if failed {
        Err(Failure::Quiet)
    } else {
        Ok(())
    }
}
