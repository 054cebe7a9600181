mod common;

use common::{fixtures, run, stdout_json};
use serde_json::Value;

fn svg_of(sub: &str, request: &str, extra: &[&str]) -> String {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.svg");
    let mut args = vec![sub, "--json", "--svg", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args, request, None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    std::fs::read_to_string(&path).unwrap()
}

fn with_class<'a>(doc: &'a roxmltree::Document, tag: &str, class: &str) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants()
        .filter(|n| n.has_tag_name(tag))
        .filter(|n| {
            n.attribute("class")
                .is_some_and(|c| c.split_whitespace().any(|w| w == class))
        })
        .collect()
}

#[test]
fn octant_triangle_in_degrees() {
    let out = run(&["solve", "--json"], r#"{"a":90,"b":90,"c":90,"units":"degrees"}"#, None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "ok");
    for k in ["A", "B", "C"] {
        assert!((v["results"][0][k].as_f64().unwrap() - 90.0).abs() < 1e-12);
    }
}

#[test]
fn cube_corner_from_flags() {
    let out = run(&["solid-angle", "--n", "3", "--a", "90", "--degrees", "--json"], "", None);
    assert_eq!(out.status.code(), Some(0));
    let sr = stdout_json(&out)["results"][0]["steradians"].as_f64().unwrap();
    assert!((sr - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
}

#[test]
fn descartes_circle_is_listed() {
    let req = std::fs::read_to_string(fixtures().join("apollonius2_descartes.json")).unwrap();
    let out = run(&["apollonius2", "--json"], &req, None);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let radii: Vec<f64> = v["results"].as_array().unwrap().iter().map(|r| r["r"].as_f64().unwrap()).collect();
    assert!(radii.iter().any(|r| (r - 0.154701).abs() < 1e-6), "{radii:?}");
}

#[test]
fn lexell_svg_structure() {
    let req = r#"{"a":[1,0,0],"b":[0,1,0],"area":0.5}"#;
    let text = svg_of("lexell", req, &[]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(with_class(&doc, "path", "small-circle").len(), 1);
    assert_eq!(with_class(&doc, "circle", "point").len(), 2);
    assert_eq!(text, svg_of("lexell", req, &[]));
}

#[test]
fn pappus_svg_structure() {
    let req = std::fs::read_to_string(fixtures().join("pappus_plane.json")).unwrap();
    let text = svg_of("pappus", &req, &[]);
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(with_class(&doc, "circle", "carrier").len(), 1);
    assert_eq!(with_class(&doc, "circle", "point").len(), 3);
    assert!(!with_class(&doc, "polygon", "triangle").is_empty());
    for n in with_class(&doc, "circle", "point") {
        assert!(n.attribute("class").unwrap().contains("given"));
    }
    for n in with_class(&doc, "polygon", "triangle") {
        assert!(n.attribute("class").unwrap().contains("solution"));
    }
}

#[test]
fn spherical_svgs_follow_the_viewpoint() {
    let req = std::fs::read_to_string(fixtures().join("pappus_sphere.json")).unwrap();
    let top = svg_of("pappus", &req, &[]);
    let side = svg_of("pappus", &req, &["--view", "1,0,0"]);
    assert_ne!(top, side);
    assert_eq!(side, svg_of("pappus", &req, &["--view", "1,0,0"]));
    for text in [top, side] {
        let doc = roxmltree::Document::parse(&text).unwrap();
        assert_eq!(with_class(&doc, "path", "carrier").len(), 1);
        assert_eq!(with_class(&doc, "circle", "point").len(), 3);
    }
}

#[test]
fn cevian_and_apollonius_draw() {
    let req = std::fs::read_to_string(fixtures().join("cevian_forward_hyperbolic.json")).unwrap();
    let doc_text = svg_of("cevian", &req, &[]);
    let doc = roxmltree::Document::parse(&doc_text).unwrap();
    assert_eq!(with_class(&doc, "line", "cevian").len(), 3);
    assert_eq!(with_class(&doc, "circle", "frame").len(), 1);

    let req = std::fs::read_to_string(fixtures().join("apollonius2_descartes.json")).unwrap();
    let doc_text = svg_of("apollonius2", &req, &[]);
    let doc = roxmltree::Document::parse(&doc_text).unwrap();
    assert_eq!(with_class(&doc, "circle", "given").len(), 3);
    assert!(with_class(&doc, "circle", "solution").len() >= 2);
}

#[test]
fn svg_is_refused_where_there_is_nothing_to_draw() {
    let out = run(&["solve", "--json", "--svg", "/tmp/never.svg"], r#"{"a":1,"b":1,"c":1}"#, None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_svg_path_is_reported() {
    let out = run(
        &["lexell", "--json", "--svg", "/nonexistent-dir/x.svg"],
        r#"{"a":[1,0,0],"b":[0,1,0],"area":0.5}"#,
        None,
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot write"));
}

#[test]
fn stdout_is_pure_json_for_every_outcome() {
    for req in ["{", "[]", r#"{"a":1}"#, r#"{"a":1,"b":1,"c":1}"#, r#"{"a":0.5,"b":0.5,"c":2}"#] {
        let out = run(&["solve", "--json"], req, None);
        let v = stdout_json(&out);
        assert!(v["status"].is_string());
        if out.status.code() != Some(0) {
            assert!(!out.stderr.is_empty());
        }
    }
    let out = run(&["frobnicate", "--json"], "", None);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout_json(&out)["status"], "invalid_input");
}

#[test]
fn positional_file_and_input_flag_agree() {
    let path = fixtures().join("solve_ssa_two.json");
    let p = path.to_str().unwrap();
    let a = run(&["solve", "--json", p], "", None);
    let b = run(&["solve", "--json", "--input", p], "", None);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(run(&["solve", "--json", "--input", p, p], "", None).status.code(), Some(2));
}

#[test]
fn tolerance_flag_beats_environment() {
    let req = r#"{"a":1.0,"b":1.2,"c":0.9}"#;
    assert_eq!(run(&["solve", "--json"], req, Some("1e-300")).status.code(), Some(3));
    assert_eq!(
        run(&["solve", "--json", "--tolerance", "1e-6"], req, Some("1e-300")).status.code(),
        Some(0)
    );
    assert_eq!(run(&["solve", "--json"], req, Some("banana")).status.code(), Some(2));
    assert_eq!(run(&["solve", "--json", "--tolerance", "-1"], req, None).status.code(), Some(2));
}

#[test]
fn unit_declarations_must_agree() {
    let out = run(&["solve", "--json", "--degrees"], r#"{"a":1,"b":1,"c":1,"units":"radians"}"#, None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--json"], r#"{"a":1,"b":1,"c":1,"units":"grads"}"#, None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--json"], r#"{"command":"area","payload":{}}"#, None);
    assert_eq!(out.status.code(), Some(2));
}

fn numbers(v: &Value, out: &mut Vec<f64>) {
    match v {
        Value::Number(n) => out.push(n.as_f64().unwrap()),
        Value::Array(a) => a.iter().for_each(|x| numbers(x, out)),
        Value::Object(m) => m.values().for_each(|x| numbers(x, out)),
        _ => {}
    }
}

#[test]
fn degree_and_radian_runs_agree() {
    let d = run(&["solve", "--json", "--degrees"], r#"{"a":60,"b":75,"C":100}"#, None);
    let r = run(
        &["solve", "--json"],
        &format!(
            r#"{{"a":{},"b":{},"C":{}}}"#,
            60f64.to_radians(),
            75f64.to_radians(),
            100f64.to_radians()
        ),
        None,
    );
    let (d, r) = (stdout_json(&d), stdout_json(&r));
    for k in ["a", "b", "c", "A", "B", "C"] {
        let x = d["results"][0][k].as_f64().unwrap().to_radians();
        let y = r["results"][0][k].as_f64().unwrap();
        assert!((x - y).abs() < 1e-12, "{k}: {x} vs {y}");
    }
    let (mut a, mut b) = (Vec::new(), Vec::new());
    numbers(&d["residuals"], &mut a);
    numbers(&r["residuals"], &mut b);
    assert_eq!(a.len(), b.len());
}

#[test]
fn help_goes_to_stdout() {
    let out = run(&["--help"], "", None);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("apollonius2"));
}
