#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    /// JSON section of the report on stdout.
    pub fn json(&self) -> serde_json::Value {
        unex::report::parse_json_section(&self.stdout).expect("stdout carries a report")
    }
}

pub fn unex(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_unex"))
        .args(args)
        .current_dir(dir)
        .env_remove("UNEX_BUDGET")
        .env_remove("UNEX_SAMPLES")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

/// Three bits, two checks: r0 ~ {l0, l1}, r1 ~ {l1, l2}.
pub const CHAIN: &str = "unex-graph 1\nkind bipartite\nleft 3\nright 2\nedges 4\n0 0 1\n1 0 1\n1 1 1\n2 1 1\nend\n";

pub fn configs_dir() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}
