use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn gspc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gspc"))
        .args(args)
        .env_remove("GSPC_OUTPUT_DIR")
        .output()
        .expect("gspc runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares stdout with `tests/golden/<name>.txt`; set `GSPC_BLESS=1`
/// to rewrite the file instead.
fn golden(name: &str, args: &[&str], code: i32) {
    let o = gspc(args);
    assert_eq!(o.status.code(), Some(code), "{}", String::from_utf8_lossy(&o.stderr));
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
    if std::env::var_os("GSPC_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, stdout(&o)).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
    assert_eq!(stdout(&o), expected, "{name}");
}

#[test]
fn pi_zero_of_integral_eilenberg_mac_lane() {
    golden("pi_hz_0", &["compute", "pi", "--of", "H(Z)", "--n", "0"], 0);
    assert!(stdout(&gspc(&["compute", "pi", "--of", "H(Z)", "--n", "0"])).ends_with("result: Z\n"));
}

#[test]
fn sphere_spectrum_levels() {
    golden("sp_corep1", &["compute", "sp", "--of", "corep1", "--levels", "3"], 0);
}

#[test]
fn projective_plane_homology() {
    golden("homology_rp2_1", &["compute", "homology", "--of", "RP2", "--n", "1"], 0);
    let out = stdout(&gspc(&["compute", "homology", "--of", "RP2", "--n", "1"]));
    assert!(out.contains("*: Z/2"));
}

#[test]
fn presheaf_over_the_arrow() {
    let defs = data("basic.def");
    let out = stdout(&gspc(&["--defs", defs.to_str().unwrap(), "compute", "homology", "--of", "r", "--n", "1"]));
    assert!(out.contains("a: Z\nb: 0\n"), "{out}");
}

#[test]
fn yoneda_passes() {
    golden("yoneda_2", &["check", "yoneda", "--n", "2"], 0);
}

#[test]
fn integral_eilenberg_mac_lane_is_very_special() {
    let o = gspc(&["check", "special", "--of", "H(Z)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("very special: true"));
}

#[test]
fn free_gamma_spaces_are_not_special() {
    // Γ¹(2_+) has three vertices, Γ¹(1_+)² has four
    let o = gspc(&["check", "special", "--of", "corep1", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(1));
    let defs = data("basic.def");
    let o = gspc(&["--defs", defs.to_str().unwrap(), "check", "special", "--of", "wedge11", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn perturbed_ring_fails_the_monoid_check() {
    golden("monoid_perturbed", &["check", "monoid", "--of", "perturbed-HZ"], 1);
    let o = gspc(&["check", "monoid", "--of", "Z/3"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn laws_on_user_definitions() {
    let defs = data("basic.def");
    let d = defs.to_str().unwrap();
    for args in [
        vec!["check", "adjunction-ln", "--n", "1", "--of", "circle", "--with", "corep1"],
        vec!["check", "adjunction-lh", "--of", "corep1", "--with", "F2"],
        vec!["check", "adjunction-lh", "--of", "corep1", "--with", "Z"],
        vec!["check", "les", "--of", "j", "--dim", "3"],
        vec!["check", "coeq", "--of", "HF2"],
        vec!["check", "sp-phi", "--of", "corep1"],
        vec!["check", "equivariance", "--of", "corep1", "--levels", "2", "--dim", "2"],
        vec!["check", "monoid", "--of", "F3"],
    ] {
        let mut all = vec!["--defs", d];
        all.extend(args.iter());
        let o = gspc(&all);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}{}", stdout(&o), String::from_utf8_lossy(&o.stderr));
        assert!(stdout(&o).ends_with("verdict: PASS\n"));
    }
}

#[test]
fn composition_violation_is_located() {
    let defs = data("bad_composition.def");
    let o = gspc(&["--defs", defs.to_str().unwrap(), "define"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad_composition.def:1"), "{err}");
}

#[test]
fn unknown_names_are_errors() {
    let o = gspc(&["compute", "pi", "--of", "nothing", "--n", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn exceeded_budget_is_inconclusive() {
    let o = gspc(&["check", "yoneda", "--n", "2", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("inconclusive:"));
}

#[test]
fn reports_are_deterministic_and_written_to_the_output_dir() {
    let dir = std::env::temp_dir().join(format!("gspc-cli-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let args = ["check", "yoneda", "--n", "1", "--out", dir.to_str().unwrap()];
    let first = gspc(&args);
    let second = gspc(&args);
    assert_eq!(first.stdout, second.stdout);
    let written = std::fs::read(dir.join("check_yoneda-corep1-1.txt")).unwrap();
    assert_eq!(written, first.stdout);

    let config = dir.join("gspc.toml");
    std::fs::write(&config, "dim = 3\nlevels = 2\n").unwrap();
    let o = gspc(&["--config", config.to_str().unwrap(), "compute", "sp", "--of", "corep1"]);
    assert!(stdout(&o).contains("levels 0..2 dim 3"), "{}", stdout(&o));
    std::fs::write(&config, "dimension = 3\n").unwrap();
    let o = gspc(&["--config", config.to_str().unwrap(), "define"]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
