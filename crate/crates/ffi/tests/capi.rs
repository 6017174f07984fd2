use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use umhs_ffi::*;

fn from_edges(n: usize, edges: &[&[usize]]) -> (UmhsStatus, *mut UmhsHypergraph) {
    let mut members = Vec::new();
    let mut offsets = vec![0];
    for e in edges {
        members.extend_from_slice(e);
        offsets.push(members.len());
    }
    let mut h = ptr::null_mut();
    let status =
        unsafe { umhs_hypergraph_from_edges(n, members.as_ptr(), offsets.as_ptr(), edges.len(), &mut h) };
    (status, h)
}

fn last_error() -> String {
    let p = umhs_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn build_query_recover_free() {
    let (status, h) = from_edges(5, &[&[0, 1, 2], &[2, 3, 4], &[0, 1, 2]]);
    assert_eq!(status, UmhsStatus::Ok);
    unsafe {
        assert_eq!(umhs_hypergraph_node_count(h), 5);
        assert_eq!(umhs_hypergraph_edge_count(h), 2);
        assert_eq!(CStr::from_ptr(umhs_hypergraph_label(h, 3)).to_str().unwrap(), "3");
        assert!(umhs_hypergraph_label(h, 9).is_null());

        let mut hit = false;
        assert_eq!(umhs_hypergraph_is_hitting_set(h, [2usize].as_ptr(), 1, &mut hit), UmhsStatus::Ok);
        assert!(hit);
        assert_eq!(umhs_hypergraph_is_hitting_set(h, [0usize].as_ptr(), 1, &mut hit), UmhsStatus::Ok);
        assert!(!hit);

        let mut k = 0;
        assert_eq!(umhs_min_hitting_set_size(h, &mut k), UmhsStatus::Ok);
        assert_eq!(k, 1);

        let mut r = ptr::null_mut();
        assert_eq!(umhs_recover(h, 50, 7, &mut r), UmhsStatus::Ok);
        let size = umhs_recovery_union_size(r);
        assert!(size >= 1);
        let mut union = vec![0usize; size];
        let mut written = 0;
        assert_eq!(umhs_recovery_union(r, union.as_mut_ptr(), union.len(), &mut written), UmhsStatus::Ok);
        assert_eq!(written, size);
        assert!(union.contains(&2));

        let mut ranking = vec![0usize; 2];
        assert_eq!(
            umhs_recovery_ranking(r, ranking.as_mut_ptr(), ranking.len(), &mut written),
            UmhsStatus::BufferTooSmall
        );
        assert_eq!(written, 5);
        let mut ranking = vec![0usize; written];
        assert_eq!(
            umhs_recovery_ranking(r, ranking.as_mut_ptr(), ranking.len(), &mut written),
            UmhsStatus::Ok
        );
        assert_eq!(ranking[0], 2);

        umhs_recovery_free(r);
        umhs_hypergraph_free(h);
        umhs_hypergraph_free(ptr::null_mut());
        umhs_recovery_free(ptr::null_mut());
    }
}

#[test]
fn errors_are_codes_with_messages() {
    let (status, h) = from_edges(3, &[&[0, 0]]);
    assert_eq!(status, UmhsStatus::InvalidHypergraph);
    assert!(h.is_null());
    assert!(last_error().contains("at least two"));

    let (status, _) = from_edges(3, &[&[0, 5]]);
    assert_eq!(status, UmhsStatus::InvalidHypergraph);
    assert!(last_error().contains("out of range"));

    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(
            umhs_hypergraph_from_edges(3, ptr::null(), ptr::null(), 1, &mut h),
            UmhsStatus::NullPointer
        );
        let mut r = ptr::null_mut();
        assert_eq!(umhs_recover(ptr::null(), 1, 0, &mut r), UmhsStatus::NullPointer);

        let path = CString::new("/nonexistent/hypergraph.txt").unwrap();
        assert_eq!(umhs_hypergraph_read(path.as_ptr(), &mut h), UmhsStatus::Io);
        assert!(last_error().contains("/nonexistent/hypergraph.txt"));

        let (_, g) = from_edges(3, &[&[0, 1, 2]]);
        assert_eq!(umhs_recover(g, 0, 0, &mut r), UmhsStatus::InvalidArgument);
        umhs_hypergraph_free(g);
    }

    let (_, big) = from_edges(100, &[&[0, 99]]);
    let mut k = 0;
    assert_eq!(unsafe { umhs_min_hitting_set_size(big, &mut k) }, UmhsStatus::Oracle);
    unsafe { umhs_hypergraph_free(big) };
}

#[test]
fn read_keeps_file_labels() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    std::fs::write(&file, "alice bob\nbob carol dave\n").unwrap();
    let path = CString::new(file.to_str().unwrap()).unwrap();
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(umhs_hypergraph_read(path.as_ptr(), &mut h), UmhsStatus::Ok);
        assert_eq!(umhs_hypergraph_node_count(h), 4);
        assert_eq!(CStr::from_ptr(umhs_hypergraph_label(h, 2)).to_str().unwrap(), "carol");
        umhs_hypergraph_free(h);
    }
}

#[test]
fn version_matches_crate() {
    let v = unsafe { CStr::from_ptr(umhs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

fn header() -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/umhs.h");
    std::fs::read_to_string(path).expect("header is generated by the build script")
}

#[test]
fn header_declares_the_api() {
    let h = header();
    for name in [
        "typedef struct UmhsHypergraph UmhsHypergraph;",
        "typedef struct UmhsRecovery UmhsRecovery;",
        "UMHS_STATUS_OK = 0",
        "UMHS_STATUS_PANIC",
        "umhs_hypergraph_from_edges(",
        "umhs_hypergraph_read(",
        "umhs_hypergraph_free(",
        "umhs_hypergraph_is_hitting_set(",
        "umhs_min_hitting_set_size(",
        "umhs_recover(",
        "umhs_recovery_union(",
        "umhs_recovery_ranking(",
        "umhs_last_error_message(void)",
        "umhs_version(void)",
    ] {
        assert!(h.contains(name), "header lacks {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "umhs.h"

int main(void) {
    size_t members[] = {0, 1, 2, 2, 3, 4};
    size_t offsets[] = {0, 3, 6};
    UmhsHypergraph *h = NULL;
    if (umhs_hypergraph_from_edges(5, members, offsets, 2, &h) != UMHS_STATUS_OK) return 1;
    UmhsRecovery *r = NULL;
    if (umhs_recover(h, 20, 1, &r) != UMHS_STATUS_OK) return 2;
    size_t ranking[5];
    size_t written = 0;
    if (umhs_recovery_ranking(r, ranking, 5, &written) != UMHS_STATUS_OK || written != 5) return 3;
    if (ranking[0] != 2) return 4;
    size_t bad[] = {0, 0};
    size_t bad_offsets[] = {0, 2};
    UmhsHypergraph *g = NULL;
    if (umhs_hypergraph_from_edges(3, bad, bad_offsets, 1, &g) != UMHS_STATUS_INVALID_HYPERGRAPH) return 5;
    if (umhs_last_error_message() == NULL) return 6;
    printf("%s\n", umhs_version());
    umhs_recovery_free(r);
    umhs_hypergraph_free(h);
    return 0;
}
"#;

/// Directory holding the library artifacts for the current profile.
fn artifact_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|deps| deps.parent()).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_the_static_library() {
    let lib = artifact_dir().join("libumhs_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: needs a C compiler and {}", lib.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    let bin = dir.path().join("main");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let compile = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(compile.status.success(), "{}", String::from_utf8_lossy(&compile.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), env!("CARGO_PKG_VERSION"));
}
