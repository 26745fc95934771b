use std::cell::Cell;
use std::fs;

use bijectlab_oeis::{
    cache_path, cross_check_cached, fetch_bfile, fetch_terms, HttpTransport, OeisError,
    SequenceRef, Transport,
};

/// Serves a fixed body and counts calls.
struct Canned {
    body: String,
    calls: Cell<usize>,
}

impl Canned {
    fn new(body: &str) -> Self {
        Canned {
            body: body.to_string(),
            calls: Cell::new(0),
        }
    }
}

impl Transport for Canned {
    fn get(&self, _url: &str) -> Result<String, OeisError> {
        self.calls.set(self.calls.get() + 1);
        Ok(self.body.clone())
    }
}

struct Down;

impl Transport for Down {
    fn get(&self, url: &str) -> Result<String, OeisError> {
        Err(OeisError::Network {
            url: url.to_string(),
            message: "unreachable".into(),
        })
    }
}

fn bfile_text(seq: &SequenceRef) -> String {
    let mut s = format!("# {}\n", seq.oeis_id);
    for (i, v) in seq.local_prefix.iter().enumerate() {
        s.push_str(&format!("{i} {v}\n"));
    }
    s
}

#[test]
fn local_closed_forms_agree() {
    for seq in SequenceRef::all(20) {
        assert_eq!(seq.local_prefix.len(), 20);
        let r = seq.local_consistency();
        assert!(r.pass, "{}: {:?}", seq.oeis_id, r.mismatches);
    }
}

#[test]
fn warm_cache_is_read_offline() {
    let dir = tempfile::tempdir().unwrap();
    let seq = SequenceRef::franel(12);
    fs::write(cache_path(dir.path(), seq.oeis_id), bfile_text(&seq)).unwrap();
    let r = cross_check_cached(&seq, 12, dir.path(), None).unwrap();
    assert!(r.pass);
    assert_eq!(r.n, 12);
}

#[test]
fn cold_cache_offline_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let err = fetch_bfile("A005259", dir.path(), None).unwrap_err();
    assert!(matches!(err, OeisError::NotCached(_)));
    let seq = SequenceRef::apery(5);
    assert!(cross_check_cached(&seq, 0, dir.path(), None).unwrap().pass);
}

#[test]
fn malformed_cache_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        cache_path(dir.path(), "A084771"),
        "0 1\n1 5\n2 thirty-three\n",
    )
    .unwrap();
    let err = fetch_bfile("A084771", dir.path(), None).unwrap_err();
    match err {
        OeisError::Parse { line, .. } => assert_eq!(line, 3),
        other => panic!("{other}"),
    }
}

#[test]
fn cold_and_warm_fetches_agree() {
    let dir = tempfile::tempdir().unwrap();
    let seq = SequenceRef::hanna(15);
    let transport = Canned::new(&bfile_text(&seq));
    let cold = fetch_terms(seq.oeis_id, dir.path(), Some(&transport)).unwrap();
    assert_eq!(transport.calls.get(), 1);
    let warm = fetch_terms(seq.oeis_id, dir.path(), Some(&transport)).unwrap();
    assert_eq!(
        transport.calls.get(),
        1,
        "warm fetch does not hit the transport"
    );
    assert_eq!(cold, warm);
    assert_eq!(cold, seq.local_prefix);
}

#[test]
fn failed_fetch_leaves_cache_alone() {
    let dir = tempfile::tempdir().unwrap();
    assert!(fetch_bfile("A000172", dir.path(), Some(&Down)).is_err());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);

    let garbage = Canned::new("<html>busy</html>\n");
    assert!(matches!(
        fetch_bfile("A000172", dir.path(), Some(&garbage)),
        Err(OeisError::Parse { .. })
    ));
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 0);
}

#[test]
fn wrong_terms_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let seq = SequenceRef::apery(4);
    fs::write(
        cache_path(dir.path(), seq.oeis_id),
        "0 1\n1 5\n2 74\n3 1445\n",
    )
    .unwrap();
    let r = cross_check_cached(&seq, 4, dir.path(), None).unwrap();
    assert!(!r.pass);
    assert_eq!(r.mismatches.len(), 1);
    assert_eq!(r.mismatches[0].key, vec![2]);
}

#[test]
#[ignore = "needs network access to oeis.org"]
fn online_b_files_match() {
    let dir = tempfile::tempdir().unwrap();
    for seq in SequenceRef::all(15) {
        let r = cross_check_cached(&seq, 15, dir.path(), Some(&HttpTransport)).unwrap();
        assert!(r.pass, "{}: {:?}", seq.oeis_id, r.mismatches);
    }
}
