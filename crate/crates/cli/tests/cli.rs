use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use hnnkit::hnn::generate_w_family;
use hnnkit::words::format_word;
use hnnkit::Alphabet;
use serde_json::Value;

fn data(name: &str) -> String {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    root.join(name).to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).expect("stdout is JSON")
    }
}

fn hnnkit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_hnnkit"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn round_trips(stdout: &str) {
    let v: Value = serde_json::from_str(stdout).unwrap();
    assert_eq!(hnnkit_cli::report::render(&v), stdout);
}

fn w_presentation(dir: &Path) -> PathBuf {
    let al = Alphabet::new(["c1", "c2"]).unwrap();
    let fam = generate_w_family(3, &al, 0).unwrap();
    let mut text = String::from("gens: c1 c2\n");
    for w in &fam.words {
        text.push_str(&format!("rel: {}\n", format_word(w, &al)));
    }
    let path = dir.join("w.pres");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn pieces_of_x2_share_abc() {
    let r = hnnkit(&["pieces", &data("x2.pres")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    round_trips(&r.stdout);
    let v = r.json();
    assert_eq!(v["mode"], "symmetrized");
    let first = &v["relators"][0];
    assert_eq!(first["maxPiece"], 3);
    assert!(first["pieces"]
        .as_array()
        .unwrap()
        .iter()
        .any(|p| p["word"] == "a b c"));
    let literal = hnnkit(&["pieces", &data("x2.pres"), "--no-inverse-symmetrization"]).json();
    assert_eq!(literal["mode"], "literal");
}

#[test]
fn check_rel_reproduces_worked_example() {
    let r = hnnkit(&["check-rel", &data("x1.pres"), "--kill", "a"]);
    assert_eq!(r.code, 1);
    round_trips(&r.stdout);
    let v = r.json();
    assert_eq!(v["noExtraPowers"], false);
    assert_eq!(v["violations"][0]["word"], "b c a b c b c");
    assert_eq!(v["violations"][0]["before"], 1);
    assert_eq!(v["violations"][0]["after"], 3);

    assert_eq!(
        hnnkit(&["check-rel", &data("x1.pres"), "--kill", "c"]).code,
        0
    );

    let r = hnnkit(&["check-rel", &data("x2.pres"), "--kill", "c"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["collisions"], serde_json::json!([[0, 1]]));
    assert_eq!(
        hnnkit(&["check-rel", &data("x2.pres"), "--kill", "a"]).code,
        0
    );
}

#[test]
fn quotient_command() {
    let r = hnnkit(&["quotient", &data("x1.pres"), "--kill", "c"]);
    assert_eq!(r.code, 0);
    round_trips(&r.stdout);
    let v = r.json();
    assert_eq!(v["generators"], serde_json::json!(["a", "b"]));
    assert_eq!(v["relators"][0]["word"], "b a b b");
}

#[test]
fn check_smallcancel_exit_codes() {
    let r = hnnkit(&["check-smallcancel", &data("x2.pres")]);
    assert_eq!(r.code, 1);
    round_trips(&r.stdout);
    let dir = tempfile::tempdir().unwrap();
    let w = w_presentation(dir.path());
    let r = hnnkit(&["check-smallcancel", w.to_str().unwrap()]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = hnnkit(&["check-smallcancel", w.to_str().unwrap(), "--lambda", "1/0"]);
    assert_eq!(r.code, 2);
}

#[test]
fn fold_reports_rank() {
    let r = hnnkit(&["fold", "--gens", &data("subgroup.pres")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    round_trips(&r.stdout);
    let v = r.json();
    assert_eq!(v["rank"], 2);
    assert_eq!(v["monomorphism"], false);
    assert_eq!(v["graph"]["basepoint"], 0);
}

#[test]
fn embed_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    for (flag, seed) in [
        (None, "0"),
        (Some("--irreducible"), "0"),
        (None, "7"),
        (Some("--irreducible"), "7"),
    ] {
        let g = dir.path().join("G.pres");
        let cert = dir.path().join("cert.json");
        let mut args = vec![
            "embed",
            "--in",
            &data("h1.pres"),
            "--out",
            g.to_str().unwrap(),
            "--cert",
            cert.to_str().unwrap(),
            "--seed",
            seed,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>();
        args.extend(flag.map(String::from));
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let r = hnnkit(&args);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.json()["newRelators"], 3);
        let text = fs::read_to_string(&cert).unwrap();
        round_trips(&text);
        let c: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(c["allHold"], true);
        assert_eq!(c["newGenerators"].as_array().unwrap().len(), 2);

        let r = hnnkit(&[
            "certify",
            "--h",
            &data("h1.pres"),
            "--g",
            g.to_str().unwrap(),
            "--cert",
            cert.to_str().unwrap(),
        ]);
        assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
        assert_eq!(r.json()["matches"], true);
    }
}

#[test]
fn certify_rejects_tampered_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("G.pres");
    let cert = dir.path().join("cert.json");
    let (gs, cs) = (g.to_str().unwrap(), cert.to_str().unwrap());
    assert_eq!(
        hnnkit(&["embed", "--in", &data("h1.pres"), "--out", gs, "--cert", cs]).code,
        0
    );
    let mut c: Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    c["exponents"][0] = Value::from(2);
    fs::write(&cert, c.to_string()).unwrap();
    let r = hnnkit(&["certify", "--h", &data("h1.pres"), "--g", gs, "--cert", cs]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["differences"], serde_json::json!(["exponents"]));

    // A G whose extra relators were edited no longer certifies.
    let text = fs::read_to_string(&g).unwrap();
    let edited: String = text
        .lines()
        .map(|l| {
            if l.starts_with("rel: t c2 t'") {
                "rel: t c2 t' = c1 c1"
            } else {
                l
            }
        })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&g, edited).unwrap();
    let r = hnnkit(&["certify", "--h", &data("h1.pres"), "--g", gs, "--cert", cs]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["allHold"], false);
}

#[test]
fn word_solve_and_isoperimetry() {
    let dir = tempfile::tempdir().unwrap();
    let w = w_presentation(dir.path());
    let ws = w.to_str().unwrap();
    let first = fs::read_to_string(&w).unwrap().lines().nth(1).unwrap()[5..].to_string();

    let r = hnnkit(&["word-solve", "--pres", ws, "--word", &first]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    round_trips(&r.stdout);
    let v = r.json();
    assert_eq!(v["trivial"], true);
    assert_eq!(v["area"], 1);
    assert_eq!(v["replayed"], true);

    let r = hnnkit(&["word-solve", "--pres", ws, "--word", "c1"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["residue"], "c1");

    let r = hnnkit(&[
        "isoperimetry",
        "--pres",
        ws,
        "--samples",
        "20",
        "--seed",
        "3",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    round_trips(&r.stdout);
    assert_eq!(r.json()["rows"].as_array().unwrap().len(), 20);

    // X2 is not C'(1/6).
    let r = hnnkit(&["word-solve", "--pres", &data("x2.pres"), "--word", "a"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not metric small cancellation"));
}

#[test]
fn parse_errors_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pres");
    fs::write(&bad, "gens: a b\n\nrel: a ( b\n").unwrap();
    let r = hnnkit(&["parse", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("3:8"), "{}", r.stderr);

    fs::write(&bad, "gens: a b\nrel: a q\n").unwrap();
    let r = hnnkit(&["pieces", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("2:"), "{}", r.stderr);

    assert_eq!(hnnkit(&["quotient", &data("x1.pres")]).code, 2);
    assert_eq!(hnnkit(&["no-such-command"]).code, 2);
    assert_eq!(hnnkit(&["--help"]).code, 0);
}

#[test]
fn parse_reports_hnn_diagnostics() {
    let r = hnnkit(&["parse", &data("h1.pres")]);
    assert_eq!(r.code, 0);
    round_trips(&r.stdout);
    assert_eq!(r.json()["hnn"]["free"], serde_json::json!(["c"]));

    let dir = tempfile::tempdir().unwrap();
    let h = dir.path().join("h.pres");
    fs::write(
        &h,
        "hnn: t\nascending: a b\nrel: t a t' = a b\nrel: t b t' = b' a'\n",
    )
    .unwrap();
    let r = hnnkit(&["parse", h.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    let g = dir.path().join("g.pres");
    let r = hnnkit(&[
        "embed",
        "--in",
        h.to_str().unwrap(),
        "--out",
        g.to_str().unwrap(),
        "--cert",
        dir.path().join("c.json").to_str().unwrap(),
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("not a free basis"));
    assert!(!g.exists());
}

#[test]
fn in_process_run_matches_binary() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["hnnkit", "pieces", &data("x1.pres")];
    let code = hnnkit_cli::run(args, &mut out, &mut err);
    assert_eq!(code, 0);
    assert_eq!(String::from_utf8(out).unwrap(), hnnkit(&args[1..]).stdout);
}
