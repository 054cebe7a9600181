#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::io::Write;

/// `(fixture, subcommand, exit code)`; the request is `fixtures/<fixture>.json`
/// and the expected stdout of `--json` is `fixtures/<fixture>.out`.
pub const GOLDEN: &[(&str, &str, i32)] = &[
    ("solve_octant_degrees", "solve", 0),
    ("solve_ssa_two", "solve", 0),
    ("solve_right", "solve", 0),
    ("area_girard", "area", 0),
    ("area_lhuilier", "area", 0),
    ("area_planar", "area", 0),
    ("solid_angle_trihedral", "solid-angle", 0),
    ("solid_angle_polyhedra", "solid-angle", 0),
    ("lexell_octant", "lexell", 0),
    ("lexell_euclidean", "lexell", 0),
    ("cevian_forward_spherical", "cevian", 0),
    ("cevian_forward_hyperbolic", "cevian", 0),
    ("cevian_construct_equilateral", "cevian", 0),
    ("pappus_plane", "pappus", 0),
    ("pappus_sphere", "pappus", 0),
    ("apollonius2_descartes", "apollonius2", 0),
    ("apollonius3_soddy", "apollonius3", 0),
    ("geodist_quarter", "geodist", 0),
    ("geodist_paris_tokyo", "geodist", 0),
    ("invalid_malformed", "solve", 2),
    ("invalid_unknown_field", "solve", 2),
    ("no_solution_nested", "apollonius2", 3),
    ("no_solution_sss", "solve", 3),
    ("degenerate_collinear", "apollonius2", 4),
    ("degenerate_chain", "pappus", 4),
];

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_sphaerica"))
}

/// Runs the binary with `stdin` piped in and the tolerance variable cleared
/// unless `env_tolerance` is given.
pub fn run(args: &[&str], stdin: &str, env_tolerance: Option<&str>) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args)
        .env_remove("SPHAERICA_TOLERANCE")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    if let Some(t) = env_tolerance {
        cmd.env("SPHAERICA_TOLERANCE", t);
    }
    let mut child = cmd.spawn().expect("binary starts");
    child
        .stdin
        .take()
        .expect("piped stdin")
        .write_all(stdin.as_bytes())
        .expect("stdin accepts the request");
    child.wait_with_output().expect("binary finishes")
}

pub fn run_fixture(name: &str, sub: &str) -> Output {
    let input = fixtures().join(format!("{name}.json"));
    run(&[sub, "--json", "--input", input.to_str().unwrap()], "", None)
}

pub fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}):\n{}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}
