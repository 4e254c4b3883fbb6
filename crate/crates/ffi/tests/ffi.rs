use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use unex_ffi::*;

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_owned();
    unsafe { unex_string_free(p) };
    s
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(unex_last_error()) }.to_str().unwrap().to_owned()
}

fn complete(n: usize) -> *mut UnexRegularGraph {
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { unex_regular_complete(n, &mut g) }, UnexStatus::Ok);
    g
}

fn incidence(g: *const UnexRegularGraph) -> *mut UnexBipartiteGraph {
    let mut b = ptr::null_mut();
    assert_eq!(unsafe { unex_regular_incidence(g, false, &mut b) }, UnexStatus::Ok);
    b
}

#[test]
fn complete_graph_spectrum() {
    let g = complete(5);
    let (mut lambda, mut mixing) = (0.0, 0.0);
    unsafe {
        assert_eq!(unex_regular_lambda(g, &mut lambda, &mut mixing), UnexStatus::Ok);
        unex_regular_free(g);
    }
    // K_n has eigenvalues n-1 and -1.
    assert!((lambda - 1.0).abs() < 1e-9);
    assert!((mixing - 1.0).abs() < 1e-9);
}

#[test]
fn circulant_connection_set_is_closed() {
    let mut g = ptr::null_mut();
    let conn = [1usize];
    unsafe {
        assert_eq!(unex_regular_circulant(8, conn.as_ptr(), 1, &mut g), UnexStatus::Ok);
        let t = take_string({
            let mut s = ptr::null_mut();
            assert_eq!(unex_regular_to_text(g, &mut s), UnexStatus::Ok);
            s
        });
        // The 8-cycle: degree 2 after adding -1.
        let mut round = ptr::null_mut();
        let c = CString::new(t).unwrap();
        assert_eq!(unex_regular_from_text(c.as_ptr(), &mut round), UnexStatus::Ok);
        let b = incidence(round);
        assert_eq!(unex_bipartite_n_left(b), 8);
        assert_eq!(unex_bipartite_left_degree(b), 2);
        unex_bipartite_free(b);
        unex_regular_free(round);
        unex_regular_free(g);
    }
}

#[test]
fn chain_unique_neighbor_verdicts() {
    // Left l0 -> r0, l1 -> r0 r1, l2 -> r1 r2.
    let edges = [0usize, 0, 1, 0, 1, 1, 2, 1, 2, 2];
    let mut b = ptr::null_mut();
    let mut v = std::mem::MaybeUninit::<UnexVerdict>::uninit();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(unex_bipartite_new(3, 3, edges.as_ptr(), 5, &mut b), UnexStatus::Ok);
        let s = unex_check(b, UnexProperty::UniqueNeighbor, 1.0, f64::NAN, ptr::null(), 0, 2, v.as_mut_ptr(), &mut json);
        assert_eq!(s, UnexStatus::Ok);
        let v = v.assume_init();
        // Every proper subset of the chain has a vertex seen exactly once.
        assert_eq!(v.status, UnexVerdictStatus::Certified);
        assert_eq!(v.max_eligible_size, 2);
        let j: serde_json::Value = serde_json::from_str(&take_string(json)).unwrap();
        assert_eq!(j["status"], "certified");
        unex_bipartite_free(b);
    }
}

#[test]
fn refuted_check_reports_witness() {
    // Two left vertices sharing both neighbors: {l0, l1} has no unique neighbor.
    let edges = [0usize, 0, 0, 1, 1, 0, 1, 1];
    let mut b = ptr::null_mut();
    let mut v = std::mem::MaybeUninit::<UnexVerdict>::uninit();
    unsafe {
        assert_eq!(unex_bipartite_new(2, 2, edges.as_ptr(), 4, &mut b), UnexStatus::Ok);
        let s = unex_check(b, UnexProperty::UniqueNeighbor, 1.5, f64::NAN, ptr::null(), 0, 1, v.as_mut_ptr(), ptr::null_mut());
        assert_eq!(s, UnexStatus::Ok);
        let v = v.assume_init();
        assert_eq!(v.status, UnexVerdictStatus::Refuted);
        assert_eq!(v.witness_size, 2);
        assert_eq!(v.witness_count, 0);
        unex_bipartite_free(b);
    }
}

#[test]
fn parity_code_of_k4_incidence() {
    let g = complete(4);
    let b = incidence(g);
    let mut h = ptr::null_mut();
    let (mut rank, mut d) = (0usize, 0i64);
    unsafe {
        assert_eq!(unex_matrix_ss1(b, &mut h), UnexStatus::Ok);
        assert_eq!(unex_matrix_rows(h), 4);
        assert_eq!(unex_matrix_cols(h), 6);
        assert_eq!(unex_matrix_rank(h, &mut rank), UnexStatus::Ok);
        // Cycle space of K4: dimension 6 - 3, girth 3.
        assert_eq!(rank, 3);
        assert_eq!(unex_matrix_distance(h, 20, 2, &mut d), UnexStatus::Ok);
        assert_eq!(d, 3);

        let mut bit = false;
        assert_eq!(unex_matrix_get(h, 4, 0, &mut bit), UnexStatus::OutOfRange);

        let mut alist = ptr::null_mut();
        assert_eq!(unex_matrix_to_alist(h, &mut alist), UnexStatus::Ok);
        let c = CString::new(take_string(alist)).unwrap();
        let mut back = ptr::null_mut();
        assert_eq!(unex_matrix_from_alist(c.as_ptr(), &mut back), UnexStatus::Ok);
        for r in 0..4 {
            for col in 0..6 {
                let (mut x, mut y) = (false, false);
                unex_matrix_get(h, r, col, &mut x);
                unex_matrix_get(back, r, col, &mut y);
                assert_eq!(x, y);
            }
        }
        unex_matrix_free(back);
        unex_matrix_free(h);
        unex_bipartite_free(b);
        unex_regular_free(g);
    }
}

#[test]
fn trivial_code_has_infinite_distance() {
    // One left vertex seen by a single check: the only codeword is zero.
    let edges = [0usize, 0];
    let mut b = ptr::null_mut();
    let mut h = ptr::null_mut();
    let mut d = 0i64;
    unsafe {
        assert_eq!(unex_bipartite_new(1, 1, edges.as_ptr(), 1, &mut b), UnexStatus::Ok);
        assert_eq!(unex_matrix_ss1(b, &mut h), UnexStatus::Ok);
        assert_eq!(unex_matrix_distance(h, 20, 1, &mut d), UnexStatus::Ok);
        assert_eq!(d, -1);
        unex_matrix_free(h);
        unex_bipartite_free(b);
    }
}

#[test]
fn product_matches_local_code_construction() {
    let g = complete(4);
    let outer = incidence(g);
    // Inner: 3 left, 2 right, l_i -> r0 and r1 for i < 2, l2 -> r1.
    let edges = [0usize, 0, 0, 1, 1, 0, 1, 1, 2, 1];
    let mut inner = ptr::null_mut();
    let mut product = ptr::null_mut();
    let mut equal = false;
    unsafe {
        assert_eq!(unex_bipartite_new(3, 2, edges.as_ptr(), 5, &mut inner), UnexStatus::Ok);
        assert_eq!(unex_bipartite_product(outer, inner, false, &mut product), UnexStatus::Ok);
        assert_eq!(unex_bipartite_n_left(product), 6);
        assert_eq!(unex_bipartite_n_right(product), 8);
        assert_eq!(unex_routed_equivalence(outer, inner, &mut equal), UnexStatus::Ok);
        assert!(equal);
        unex_bipartite_free(product);
        unex_bipartite_free(inner);
        unex_bipartite_free(outer);
        unex_regular_free(g);
    }
}

#[test]
fn side_mismatch_is_an_error_code() {
    let g = complete(4);
    let outer = incidence(g);
    let edges = [0usize, 0, 1, 0];
    let mut inner = ptr::null_mut();
    let mut product = ptr::null_mut();
    unsafe {
        assert_eq!(unex_bipartite_new(2, 1, edges.as_ptr(), 2, &mut inner), UnexStatus::Ok);
        let s = unex_bipartite_product(outer, inner, false, &mut product);
        assert_ne!(s, UnexStatus::Ok);
        assert!(product.is_null());
        assert!(!last_error().is_empty());
        unex_bipartite_free(inner);
        unex_bipartite_free(outer);
        unex_regular_free(g);
    }
}

#[test]
fn bad_input_is_rejected_without_panicking() {
    let mut g = ptr::null_mut();
    let garbage = CString::new("not a graph").unwrap();
    unsafe {
        assert_eq!(unex_regular_from_text(garbage.as_ptr(), &mut g), UnexStatus::Parse);
        assert_eq!(unex_regular_from_text(ptr::null(), &mut g), UnexStatus::NullOrInvalidArgument);
        assert!(g.is_null());
        assert_eq!(unex_regular_vertices(ptr::null()), 0);
        unex_regular_free(ptr::null_mut());
        unex_string_free(ptr::null_mut());
    }
}

#[test]
fn inner_search_is_seeded() {
    let search = |seed| {
        let mut b = ptr::null_mut();
        let s = unsafe { unex_inner_search(4, 2, 6, 1.0, f64::NAN, false, seed, 500, 2, &mut b) };
        assert_eq!(s, UnexStatus::Ok, "{}", last_error());
        let mut t = ptr::null_mut();
        unsafe {
            unex_bipartite_to_text(b, &mut t);
            unex_bipartite_free(b);
        }
        take_string(t)
    };
    assert_eq!(search(5), search(5));
}

#[test]
fn spectral_pipeline_from_config() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/k4-spectral.toml");
    let cfg = CString::new(std::fs::read_to_string(path).unwrap()).unwrap();
    let mut product = ptr::null_mut();
    let mut dossier = ptr::null_mut();
    let mut refuted = true;
    unsafe {
        let s = unex_pipeline_spectral(cfg.as_ptr(), 2, &mut product, &mut dossier, &mut refuted);
        assert_eq!(s, UnexStatus::Ok, "{}", last_error());
        assert!(!refuted);
        assert!(unex_bipartite_n_left(product) > 0);
        assert!(take_string(dossier).contains("claims"));
        unex_bipartite_free(product);
    }
}

#[test]
fn header_declares_every_export() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/unex.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() > 30);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("typedef struct UnexBipartiteGraph UnexBipartiteGraph;"));
}

fn static_lib() -> Option<PathBuf> {
    // target/<profile>/deps/<test binary> -> target/<profile>/libunex_ffi.a
    let exe = std::env::current_exe().ok()?;
    let lib = exe.parent()?.parent()?.join("libunex_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_links_against_static_library() {
    let Some(lib) = static_lib() else {
        eprintln!("skipping: static library not built");
        return;
    };
    if Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler");
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <math.h>
#include "unex.h"

int main(void) {
    UnexRegularGraph *g = NULL;
    UnexBipartiteGraph *b = NULL;
    UnexVerdict v;
    if (unex_regular_petersen(&g) != UNEX_STATUS_OK) return 10;
    if (unex_regular_incidence(g, false, &b) != UNEX_STATUS_OK) return 11;
    if (unex_check(b, UNEX_PROPERTY_COMBINATORIAL, 0.2, 0.75, NULL, 1, 1, &v, NULL) != UNEX_STATUS_OK) return 12;
    if (v.status != UNEX_VERDICT_STATUS_CERTIFIED) return 13;
    if (unex_regular_gabber_galil(1, &g) != UNEX_STATUS_INVALID_PARAMETER) return 14;
    printf("%s|%s\n", unex_version(), unex_last_error());
    unex_bipartite_free(b);
    unex_regular_free(g);
    return 0;
}
"#,
    )
    .unwrap();
    let exe = dir.path().join("smoke");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status.code());
    let text = String::from_utf8(run.stdout).unwrap();
    assert!(text.starts_with(env!("CARGO_PKG_VERSION")));
}
