use std::path::PathBuf;
use std::process::{Command, Output};

fn superwarp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superwarp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("superwarp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn section<'a>(text: &'a str, title: &str) -> &'a str {
    let start = text.find(&format!("[{title}]")).unwrap();
    let rest = &text[start + title.len() + 2..];
    match rest.find("\n[") {
        Some(end) => &rest[..end],
        None => rest,
    }
}

#[test]
fn compute_semi_symmetric_tables_on_r12() {
    let o = superwarp(&["compute", "--spec", "bundled:r12", "--connection", "ssnm", "--P", "t=1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let ricci = section(&text, "ricci");
    assert!(ricci.contains("nonzero\t1"));
    assert!(ricci.contains("(d_t, d_t)\t-2"));
    assert!(section(&text, "riemann").contains("(d_t, d_xi, d_t)\t-d_xi"));
}

#[test]
fn compute_on_flat_space_gives_empty_tables() {
    let o = superwarp(&["compute", "--spec", "bundled:flat20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("nonzero\t0").count(), 3);
}

#[test]
fn compute_rejects_an_asymmetric_metric() {
    let spec = temp_file(
        "asym.toml",
        r#"
coordinates = [
  { name = "x", parity = "even" },
  { name = "y", parity = "even" },
]
[metric]
"x,x" = "1"
"y,y" = "1"
"x,y" = "1"
"y,x" = "2"
"#,
    );
    let o = superwarp(&["compute", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("graded-symmetry"), "{}", stderr(&o));
    assert!(stderr(&o).contains("(x, y)"));
}

#[test]
fn malformed_spec_exits_with_parse_status() {
    let spec = temp_file("bad.toml", "coordinates = [");
    let o = superwarp(&["compute", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = superwarp(&["verify", "lc-connection", "--spec", "/no/such/file.toml"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn semi_symmetric_without_p_is_an_invariant_failure() {
    let o = superwarp(&["compute", "--spec", "bundled:flat20", "--connection", "ssnm"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn base_statement_names_its_hypothesis() {
    let o = superwarp(&["verify", "ssnm-connection-base", "--spec", "bundled:r10_flat20_pfiber"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("P must be a vector field on the base"), "{}", stderr(&o));
}

#[test]
fn passing_scope_exits_zero_with_a_full_report() {
    let o = superwarp(&["verify", "--scope", "lc-ricci"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.starts_with("# superwarp verification report\n"));
    assert!(text.contains("scope\tlc-ricci"));
    assert!(text.contains("failed\t0"));
    let checks = section(&text, "checks").lines().filter(|l| l.ends_with("\ttrue")).count();
    let total: usize = section(&text, "summary")
        .lines()
        .find_map(|l| l.strip_prefix("total\t"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(checks, total);
}

#[test]
fn reports_are_byte_deterministic() {
    let a = temp_file("a.txt", "");
    let b = temp_file("b.txt", "");
    for out in [&a, &b] {
        let o = superwarp(&["verify", "connection-axioms", "--out", out.to_str().unwrap(), "--seed", "7"]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).contains("connection-axioms:"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn checksum_is_the_sha256_of_the_spec_text() {
    let text = "coordinates = [ { name = \"x\", parity = \"even\" } ]\n[metric]\n\"x,x\" = \"1\"\n";
    let spec = temp_file("line.toml", text);
    let o = superwarp(&["compute", "--spec", spec.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    // Digest computed independently with Python's hashlib.
    assert!(stdout(&o).contains("checksum\tbe6a41f4287a96c9d8dd6b6750ecfed96a95215b16dfffadb106b85be982a0ce"));
}

#[test]
fn r12_semi_symmetric_scope_reports_the_classification() {
    let o = superwarp(&["verify", "einstein-r12-ssnm"]);
    let text = stdout(&o);
    assert!(text.contains("einstein-r12-ssnm/l=-2/classification\tfamilies of the classification\t-\t0\ttrue"));
    for l in [1, 2, 3, 5, -1, -3] {
        assert!(text.contains(&format!("einstein-r12-ssnm/l={l}/classification\tfamilies of the classification\t-\t0\ttrue")));
    }
    assert_eq!(text.matches("/elimination/").count(), 10);
    // The constant family leaves Ric(d_t, d_t) = -4 with the engine's Ricci sign.
    assert!(text.contains("einstein-r12-ssnm/l=-2/constant/einstein\tq - n + 2 = 0 (constant)\t(d_t, d_t)\t-4\tfalse"));
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_examples() {
    let o = superwarp(&["classify", "--base", "R10", "--conn", "ssnm", "--l", "1", "--lambda0", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("families\t1"));
    assert!(stdout(&o).contains("h(t) = c1 + c2*t"));

    let o = superwarp(&["classify", "--base", "R12", "--conn", "lc", "--l", "0", "--lambda0", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("h h'' - h'^2 = c0"));

    let o = superwarp(&["classify", "--base", "R12", "--conn", "ssnm", "--l", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("families\t0"));
    assert!(stdout(&o).contains("note\tq - n + 2 != 0"));

    let o = superwarp(&["classify", "--base", "R12", "--conn", "lc", "--l", "-1", "--c0", "-1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn classify_exit_statuses() {
    let o = superwarp(&["classify", "--base", "R10", "--conn", "lc", "--l", "2"]);
    assert_eq!(o.status.code(), Some(4));
    let o = superwarp(&["classify", "--base", "R12", "--conn", "ssnm", "--l", "0"]);
    assert_eq!(o.status.code(), Some(5));
    let o = superwarp(&["classify", "--base", "R7", "--conn", "lc", "--l", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_lists_its_scopes() {
    let o = superwarp(&["verify", "--list"]);
    let text = stdout(&o);
    for s in ["lc-connection", "ssnm-curvature-fiber", "ricci-r10-ssnm", "einstein-r12-lc", "all"] {
        assert!(text.lines().any(|l| l == s), "{s}");
    }
}
