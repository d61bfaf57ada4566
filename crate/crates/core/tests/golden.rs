//! Golden outputs for the shipped scripts and the exit-code contract.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

use std::path::{Path, PathBuf};

use kura::cli::run_cli_with_env;

const RNG: &str = "7";

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["kura"];
    argv.extend_from_slice(args);
    let code = run_cli_with_env(argv, None, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn check_golden(name: &str, actual: &str) {
    let path = manifest().join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|_| panic!("missing golden file {}; run with UPDATE_GOLDEN=1", path.display()));
    assert!(expected == actual, "output differs from {}:\n{actual}", path.display());
}

fn scripts() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(manifest().join("scripts"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "kura"))
        .collect();
    v.sort();
    v
}

fn stem(p: &Path) -> String {
    p.file_stem().unwrap().to_string_lossy().into_owned()
}

#[test]
fn shipped_scripts_match_golden() {
    let all = scripts();
    assert!(all.len() >= 4);
    for script in all {
        let path = script.to_str().unwrap();
        let (code, text, err) = cli(&["run", path, "--rng", RNG]);
        assert_eq!(code, 0, "{path}: {err}");
        check_golden(&format!("{}.txt", stem(&script)), &text);
        let (code, json, _) = cli(&["run", path, "--json", "--rng", RNG]);
        assert_eq!(code, 0);
        check_golden(&format!("{}.json", stem(&script)), &json);
        assert_eq!(json, cli(&["run", path, "--json", "--rng", RNG]).1);
    }
}

#[test]
fn separate_command_matches_golden() {
    let dir = manifest().join("scripts");
    let (code, out, _) = cli(&[
        "separate",
        "--s",
        dir.join("square_s.json").to_str().unwrap(),
        "--t",
        dir.join("point_t.json").to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    check_golden("separate_cli.json", &out);
}

#[test]
fn selftest_matches_golden() {
    let (code, out, _) = cli(&["selftest", "--seeds", "100", "--rng", "42"]);
    assert_eq!(code, 0);
    check_golden("selftest.txt", &out);
}

fn temp_script(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("kura-{}-{name}.kura", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn exit_code_contract() {
    let cases = [
        ("ok", "let A = pt(1);\nassert A <= lin(A);\n", 0),
        ("assert", "let A = seg(0, 1, 'oo');\nassert lin(A) == A;\n", 1),
        ("syntax", "let A = ;\n", 2),
        ("unbound", "show B;\n", 3),
        ("dimension", "let A = pt(1);\nshow inter(A, pt(1, 1));\n", 3),
    ];
    for (name, body, expected) in cases {
        let p = temp_script(name, body);
        let (code, _, err) = cli(&["run", p.to_str().unwrap()]);
        assert_eq!(code, expected, "{name}: {err}");
        if name == "syntax" {
            assert!(err.contains("1:9"), "{err}");
        }
        std::fs::remove_file(p).unwrap();
    }
    assert_eq!(cli(&["run", "/nonexistent/x.kura"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["run", "--bogus"]).0, 2);
    assert_eq!(cli(&["--help"]).0, 0);
}
