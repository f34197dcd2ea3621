use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use minor_toolkit_ffi::*;

fn from_graph6(text: &str) -> *mut MtGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { mt_graph_from_graph6(c.as_ptr(), &mut g) }, MtStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(mt_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn complete_graph_values() {
    let g = from_graph6("D~{\n");
    unsafe {
        let (mut n, mut m) = (0, 0);
        assert_eq!(mt_graph_counts(g, &mut n, &mut m), MtStatus::Ok);
        assert_eq!((n, m), (5, 10));

        let mut chi = 0;
        let mut colors = [usize::MAX; 5];
        assert_eq!(mt_chromatic_number(g, &mut chi, colors.as_mut_ptr()), MtStatus::Ok);
        assert_eq!(chi, 5);
        let mut sorted = colors;
        sorted.sort();
        assert_eq!(sorted, [0, 1, 2, 3, 4]);

        let (mut h, mut exact) = (0, false);
        assert_eq!(mt_hadwiger_number(g, &mut h, &mut exact), MtStatus::Ok);
        assert_eq!((h, exact), (5, true));

        let mut kappa = 0;
        assert_eq!(mt_vertex_connectivity(g, &mut kappa), MtStatus::Ok);
        assert_eq!(kappa, 4);

        let mut alpha = 0;
        assert_eq!(mt_independence_number(g, &mut alpha), MtStatus::Ok);
        assert_eq!(alpha, 1);

        let (mut num, mut den) = (0, 0);
        assert_eq!(mt_hall_ratio(g, &mut num, &mut den), MtStatus::Ok);
        assert_eq!((num, den), (5, 1));
        assert_eq!(last_error(), "");
        mt_graph_free(g);
    }
}

#[test]
fn petersen_from_edges() {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.extend([i, (i + 1) % 5, i, i + 5, i + 5, (i + 2) % 5 + 5]);
    }
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(mt_graph_from_edges(10, edges.as_ptr(), 15, &mut g), MtStatus::Ok);
        let mut chi = 0;
        assert_eq!(mt_chromatic_number(g, &mut chi, ptr::null_mut()), MtStatus::Ok);
        assert_eq!(chi, 3);
        let (mut h, mut exact) = (0, false);
        assert_eq!(mt_hadwiger_number(g, &mut h, &mut exact), MtStatus::Ok);
        assert_eq!((h, exact), (5, true));
        let mut alpha = 0;
        assert_eq!(mt_independence_number(g, &mut alpha), MtStatus::Ok);
        assert_eq!(alpha, 4);
        let mut kappa = 0;
        assert_eq!(mt_vertex_connectivity(g, &mut kappa), MtStatus::Ok);
        assert_eq!(kappa, 3);
        let (mut num, mut den) = (0, 0);
        assert_eq!(mt_hall_ratio(g, &mut num, &mut den), MtStatus::Ok);
        assert_eq!((num, den), (5, 2));

        let mut text = ptr::null_mut();
        assert_eq!(mt_graph_to_graph6(g, &mut text), MtStatus::Ok);
        let s = CStr::from_ptr(text).to_str().unwrap().to_string();
        mt_string_free(text);
        let back = from_graph6(&s);
        let (mut n, mut m) = (0, 0);
        assert_eq!(mt_graph_counts(back, &mut n, &mut m), MtStatus::Ok);
        assert_eq!((n, m), (10, 15));
        mt_graph_free(back);
        mt_graph_free(g);
    }
}

#[test]
fn null_pointers_are_reported() {
    let g = from_graph6("Bw");
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(mt_graph_from_graph6(ptr::null(), &mut out), MtStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(mt_graph_from_edges(3, ptr::null(), 2, &mut out), MtStatus::NullPointer);
        let mut chi = 0;
        assert_eq!(mt_chromatic_number(ptr::null(), &mut chi, ptr::null_mut()), MtStatus::NullPointer);
        assert_eq!(mt_chromatic_number(g, ptr::null_mut(), ptr::null_mut()), MtStatus::NullPointer);
        assert_eq!(mt_hall_ratio(g, ptr::null_mut(), ptr::null_mut()), MtStatus::NullPointer);
        assert_eq!(mt_graph_counts(g, ptr::null_mut(), ptr::null_mut()), MtStatus::NullPointer);
        mt_graph_free(ptr::null_mut());
        mt_string_free(ptr::null_mut());
        mt_graph_free(g);
    }
}

#[test]
fn bad_input_is_rejected() {
    unsafe {
        let mut g = ptr::null_mut();
        let text = CString::new("D~").unwrap();
        assert_eq!(mt_graph_from_graph6(text.as_ptr(), &mut g), MtStatus::ParseError);
        assert!(g.is_null());
        assert!(!last_error().is_empty());

        let loop_edge = [1usize, 1];
        assert_eq!(mt_graph_from_edges(3, loop_edge.as_ptr(), 1, &mut g), MtStatus::InvalidArgument);
        let out_of_range = [0usize, 7];
        assert_eq!(mt_graph_from_edges(3, out_of_range.as_ptr(), 1, &mut g), MtStatus::InvalidArgument);

        assert_eq!(mt_graph_from_edges(0, ptr::null(), 0, &mut g), MtStatus::Ok);
        let mut kappa = 0;
        assert_eq!(mt_vertex_connectivity(g, &mut kappa), MtStatus::InvalidArgument);
        mt_graph_free(g);
    }
}

#[test]
fn oversized_graphs_are_refused() {
    let n = 400;
    let edges: Vec<usize> = (0..n).flat_map(|i| [i, (i + 1) % n]).collect();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(mt_graph_from_edges(n, edges.as_ptr(), n, &mut g), MtStatus::Ok);
        let mut alpha = 0;
        assert_eq!(mt_independence_number(g, &mut alpha), MtStatus::TooLarge);
        let (mut num, mut den) = (0, 0);
        assert_eq!(mt_hall_ratio(g, &mut num, &mut den), MtStatus::TooLarge);
        assert!(last_error().contains("400"), "{}", last_error());
        let mut kappa = 0;
        assert_eq!(mt_vertex_connectivity(g, &mut kappa), MtStatus::Ok);
        assert_eq!(kappa, 2);
        assert_eq!(last_error(), "");
        mt_graph_free(g);
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn header_declares_the_interface() {
    let header = std::fs::read_to_string(crate_dir().join("include/minor_toolkit.h")).unwrap();
    for name in [
        "typedef struct MtGraph MtGraph",
        "MT_STATUS_TOO_LARGE",
        "mt_last_error",
        "mt_graph_from_graph6",
        "mt_graph_from_edges",
        "mt_graph_free",
        "mt_graph_counts",
        "mt_graph_to_graph6",
        "mt_string_free",
        "mt_chromatic_number",
        "mt_hadwiger_number",
        "mt_vertex_connectivity",
        "mt_independence_number",
        "mt_hall_ratio",
    ] {
        assert!(header.contains(name), "header lacks {name}");
    }
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "minor_toolkit.h"

int main(void) {
    MtGraph *g = NULL;
    if (mt_graph_from_graph6("IheA@GUAo", &g) != MT_STATUS_OK) return 10;
    size_t h = 0, chi = 0;
    bool exact = false;
    if (mt_hadwiger_number(g, &h, &exact) != MT_STATUS_OK || h != 5 || !exact) return 11;
    if (mt_chromatic_number(g, &chi, NULL) != MT_STATUS_OK || chi != 3) return 12;
    if (mt_chromatic_number(NULL, &chi, NULL) != MT_STATUS_NULL_POINTER) return 13;
    mt_graph_free(g);
    printf("ok\n");
    return 0;
}
"#;

#[test]
fn c_program_links_against_the_static_library() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("no C compiler found; skipping");
        return;
    }
    // tests run from target/<profile>/deps; `cargo test` builds only the rlib
    let exe = std::env::current_exe().unwrap();
    let lib_dir = exe.parent().unwrap().parent().unwrap();
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let built = Command::new(cargo)
        .args(["build", "--quiet", "--lib", "--manifest-path"])
        .arg(crate_dir().join("Cargo.toml"))
        .arg("--target-dir")
        .arg(lib_dir.parent().unwrap())
        .args(if lib_dir.ends_with("release") { &["--release"][..] } else { &[][..] })
        .status()
        .unwrap();
    assert!(built.success(), "building the static library failed");
    let lib = lib_dir.join("libminor_toolkit_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let bin = dir.path().join("smoke");
    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(crate_dir().join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");
    let out = Command::new(&bin).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
