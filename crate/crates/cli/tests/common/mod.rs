use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub seed_env: Option<&'static str>,
}

const fn case(name: &'static str, args: &'static [&'static str]) -> Case {
    Case { name, args, seed_env: None }
}

pub const CASES: &[Case] = &[
    case("validate_i_k", &["validate", "i_k"]),
    case("validate_examples_path", &["validate", "examples/dual_numbers"]),
    case("validate_bad_unit", &["validate", "tests/fixtures/bad_unit.dg"]),
    case("load_bad_unit", &["h0", "tests/fixtures/bad_unit.dg"]),
    case("h0_i_k", &["h0", "i_k"]),
    case("h0_theta", &["h0", "theta"]),
    case("cohomology_theta", &["cohomology", "theta", "--hom", "*", "*"]),
    case("tensor_cat_i_k_theta", &["tensor-cat", "i_k", "theta"]),
    case("op_a2_path", &["op", "a2_path"]),
    case("phi_dual_unit", &["phi", "dual_unit"]),
    case("restrict_dual_simple", &["restrict", "dual_unit", "dual_simple"]),
    case("induct_i_k_collapse", &["induct", "i_k_collapse", "yoneda_i_k_0"]),
    case("qr_test_collapse", &["qr-test", "phi_i_k_collapse"]),
    case("qr_test_dual_sign", &["qr-test", "phi_dual_sign", "--seed", "3", "--trials", "8"]),
    Case { name: "qr_test_env_seed", args: &["qr-test", "phi_unit_to_i_k"], seed_env: Some("7") },
    case("iso_two_iso_objects", &["iso", "two_iso_objects", "x", "y"]),
    case("iso_i_k", &["iso", "i_k", "0", "1", "--seed", "2"]),
    case("iso_gf2", &["iso", "two_iso_objects", "x", "y", "--field", "GF(2)"]),
    case("rhom_phi_dual_unit", &["rhom", "phi_dual_unit", "phi_dual_unit", "--bar-length", "4"]),
    case("rhom_yoneda", &["rhom", "yoneda_a2_path_0", "yoneda_a2_path_0"]),
    case("tensor_strict", &["tensor", "diagonal_i_k", "diagonal_i_k", "--strict"]),
    case("tensor_derived", &["tensor", "phi_unit_to_i_k", "phi_i_k_collapse", "--derived"]),
    case("hh_dual_numbers", &["hh", "dual_numbers", "--max-degree", "3", "--bar-length", "6"]),
    case("hh_dual_numbers_gf2", &["hh", "dual_numbers", "--max-degree", "3", "--bar-length", "6", "--field", "GF(2)"]),
    case("hh_m2", &["hh", "m2", "--max-degree", "3"]),
    case("map_homotopy_theta", &["map-homotopy", "theta", "--object", "*", "--i", "2"]),
    case("map_homotopy_m2", &["map-homotopy", "m2", "--object", "*", "--i", "1"]),
    case("map_homotopy_endo_dual", &["map-homotopy-endo", "dual_numbers", "--i", "2"]),
    case("picard_verify_dual", &["picard-verify", "dual_numbers", "diagonal_dual_numbers", "diagonal_dual_numbers"]),
    case("quotient_unit", &["quotient", "unit", "--kill", "*", "--window", "-6"]),
    case("quotient_two_iso", &["quotient", "two_iso_objects", "--kill", "x", "--window", "-4"]),
    case("quotient_bad_window", &["quotient", "theta", "--kill", "*", "--window", "1"]),
    case("localize_i_k", &["localize", "i_k", "--invert", "0:1:1*f"]),
    case("localize_two_iso", &["localize", "two_iso_objects", "--invert", "x:y:1*u", "--window", "-2"]),
    case("cell_build_dual_resolution", &["cell-build", "dual_resolution"]),
    case("cell_build_cone", &["cell-build", "cone_i_k"]),
    case("examples", &["examples"]),
    case("usage_unknown_object", &["iso", "i_k", "0", "nope"]),
    case("usage_wrong_kind", &["h0", "cone_i_k"]),
    case("usage_missing_mode", &["tensor", "diagonal_i_k", "diagonal_i_k"]),
];

/// Stdout, stderr and exit code of one run, as one text.
pub fn run(case: &Case) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_dgforge"));
    cmd.args(case.args).current_dir(env!("CARGO_MANIFEST_DIR")).env_remove("DGFORGE_SEED");
    if let Some(seed) = case.seed_env {
        cmd.env("DGFORGE_SEED", seed);
    }
    let out = cmd.output().expect("binary runs");
    let mut text = String::from_utf8(out.stdout).expect("utf-8");
    let err = String::from_utf8(out.stderr).expect("utf-8");
    if !err.is_empty() {
        text.push_str("--- stderr\n");
        text.push_str(&err);
    }
    text.push_str(&format!("--- exit {}\n", out.status.code().unwrap_or(-1)));
    text
}

pub fn golden_path(case: &Case) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{}.txt", case.name))
}

/// Runs every case twice. Returns the cases whose runs differ from each other or from the
/// golden file; with `UPDATE_GOLDEN=1` the golden files are rewritten first.
pub fn check_all() -> Vec<String> {
    let update = std::env::var("UPDATE_GOLDEN").is_ok_and(|v| v == "1");
    let mut bad = Vec::new();
    for case in CASES {
        let (a, b) = (run(case), run(case));
        if a != b {
            bad.push(format!("{}: two runs differ", case.name));
            continue;
        }
        let path = golden_path(case);
        if update {
            std::fs::write(&path, &a).expect("write golden");
        }
        match std::fs::read_to_string(&path) {
            Ok(g) if g == a => {}
            Ok(_) => bad.push(format!("{}: differs from {}", case.name, path.display())),
            Err(_) => bad.push(format!("{}: missing {}", case.name, path.display())),
        }
    }
    bad
}
