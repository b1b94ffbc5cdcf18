use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use planerot_cli::matrix_io::{format_matrix_text, parse_matrix, parse_vector};
use planerot_core::isoclinic::{is_invariant_plane, isoclinic_rotation, Plane};
use planerot_core::linalg::matvec;
use planerot_core::rotation::{rotation_nd, Frame4};
use planerot_core::sample::{random_matrix, random_spec, random_vector};
use planerot_core::{Matrix, Vector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn planerot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planerot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn golden(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn spec_json(spec: &planerot_core::rotation::RotationSpec) -> String {
    let planes: Vec<_> = spec
        .planes()
        .iter()
        .map(|p| serde_json::json!({"a": p.a().as_slice(), "b": p.b().as_slice(), "angle_radians": p.angle()}))
        .collect();
    serde_json::json!({"dim": spec.dim(), "planes": planes}).to_string()
}

#[test]
fn build_quarter_turn() {
    let o = planerot(&["build", &golden("01_2d_quarter_turn.json")]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "0.000000000000 -1.00000000000\n1.00000000000 0.000000000000\n"
    );

    let o = planerot(&[
        "build",
        &golden("01_2d_quarter_turn.json"),
        "--output",
        "json",
    ]);
    let m = parse_matrix(&stdout(&o)).unwrap();
    let want = Matrix::from_rows(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
    assert!(m.max_abs_diff(&want).unwrap() < 1e-12);
}

#[test]
fn build_malformed_file_exits_2_naming_the_field() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim": 2, "planes": [{"a": [1, 0], "bb": [0, 1], "angle_degrees": 5}]}"#,
    );
    let o = planerot(&["build", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bb"), "{}", stderr(&o));

    let o = planerot(&["build", &dir.path().join("missing.json").to_string_lossy()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn build_invalid_spec_exits_3() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"dim": 3, "planes": [{"a": [1, 0, 0], "b": [2, 0, 0], "angle_degrees": 5}]}"#,
    );
    assert_eq!(planerot(&["build", &bad]).status.code(), Some(3));
    let o = planerot(&["build", &golden("04_3d_repairable_plane.json"), "--strict"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(planerot(&["build", &golden("04_3d_repairable_plane.json")])
        .status
        .success());
}

#[test]
fn build_isoclinic_matches_library() {
    let o = planerot(&["build", &golden("09_4d_isoclinic.json"), "--output", "json"]);
    let m = parse_matrix(&stdout(&o)).unwrap();
    let want = isoclinic_rotation(&Frame4::standard(), PI / 3.0);
    assert!(m.max_abs_diff(&want).unwrap() < 1e-12);
}

#[test]
fn text_and_json_emissions_agree() {
    for name in ["14_6d_three_planes.json", "18_9d_random_axis.json"] {
        let text = parse_matrix(&stdout(&planerot(&["build", &golden(name)]))).unwrap();
        let json = parse_matrix(&stdout(&planerot(&[
            "build",
            &golden(name),
            "--output",
            "json",
        ])))
        .unwrap();
        // entries are at most 1 in magnitude: one unit in the 12th digit is <= 1e-12
        assert!(text.max_abs_diff(&json).unwrap() <= 1e-12);
    }
}

#[test]
fn apply_examples() {
    let o = planerot(&[
        "apply",
        &golden("11_4d_identity.json"),
        "--vector",
        "0.25,-3,7,1e-3",
    ]);
    assert!(o.status.success());
    let x = parse_vector(stdout(&o).trim()).unwrap();
    assert!(
        x.max_abs_diff(&Vector::from_slice(&[0.25, -3.0, 7.0, 1e-3]).unwrap())
            .unwrap()
            < 1e-12
    );

    let dir = TempDir::new().unwrap();
    let rodrigues = write(
        &dir,
        "r.json",
        r#"{"dim": 3, "planes": [{"a": [1,0,0], "b": [0,1,0], "angle_radians": 1.5707963267948966}]}"#,
    );
    let o = planerot(&["apply", &rodrigues, "--vector", "1,0,0"]);
    let y = parse_vector(stdout(&o).trim()).unwrap();
    assert!(y.max_abs_diff(&Vector::basis(3, 1)).unwrap() < 1e-12);

    let o = planerot(&["apply", &rodrigues, "--vector", "1,0"]);
    assert_eq!(o.status.code(), Some(3));
    let o = planerot(&["apply", &rodrigues, "--vector", "1,zero,0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn apply_agrees_with_emitted_matrix() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for k in 0..10 {
        let spec = random_spec(&mut rng, 7, 3);
        let path = write(&dir, &format!("s{k}.json"), &spec_json(&spec));
        let x = random_vector(&mut rng, 7);
        let arg = x
            .iter()
            .map(|v| format!("{v:?}"))
            .collect::<Vec<_>>()
            .join(",");
        let y =
            parse_vector(stdout(&planerot(&["apply", &path, "--vector", &arg])).trim()).unwrap();
        let m = parse_matrix(&stdout(&planerot(&["build", &path, "--output", "json"]))).unwrap();
        let recomputed = matvec(&m, &x).unwrap();
        // text output carries 12 significant digits
        assert!(y.max_abs_diff(&recomputed).unwrap() < 1e-11);
    }
}

#[test]
fn verify_examples() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.txt", &format_matrix_text(&Matrix::identity(4)));
    let o = planerot(&["verify", &id]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ortho_residual: 0.000000e0"));
    assert!(stdout(&o).contains("det_value: 1.00000000000"));

    let refl = write(&dir, "refl.json", "[[1,0,0],[0,1,0],[0,0,-1]]");
    let o = planerot(&["verify", &refl]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("det_value: -1.00000000000"));
    assert!(stdout(&o).contains("is_rotation: false"));

    let rect = write(&dir, "rect.txt", "1 0 0\n0 1 0\n");
    assert_eq!(planerot(&["verify", &rect]).status.code(), Some(3));

    assert_eq!(
        planerot(&["verify", &golden("16_7d_completed_axis.json")])
            .status
            .code(),
        Some(0)
    );
}

fn parse_witnesses(out: &str) -> Vec<(Vector, Vector)> {
    out.lines()
        .filter(|l| l.starts_with("plane "))
        .map(|l| {
            let u = l.split("u = [").nth(1).unwrap().split(']').next().unwrap();
            let v = l.split("v = [").nth(1).unwrap().split(']').next().unwrap();
            (parse_vector(u).unwrap(), parse_vector(v).unwrap())
        })
        .collect()
}

#[test]
fn invariant_isoclinic_witnesses_are_invariant() {
    let o = planerot(&[
        "invariant",
        &golden("10_4d_random_isoclinic.json"),
        "--samples",
        "12",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("classification: all_J_planes\n"), "{out}");
    assert!(out.contains("J:\n"));
    let m = parse_matrix(&stdout(&planerot(&[
        "build",
        &golden("10_4d_random_isoclinic.json"),
        "--output",
        "json",
    ])))
    .unwrap();
    let witnesses = parse_witnesses(&out);
    assert_eq!(witnesses.len(), 12);
    for (u, v) in witnesses {
        // printed with 12 significant digits, well inside the orthonormality tolerance
        let plane = Plane::new(u, v).unwrap();
        assert!(is_invariant_plane(&m, &plane, 1e-9).unwrap());
    }
}

#[test]
fn invariant_distinct_angles() {
    let o = planerot(&["invariant", &golden("08_4d_double.json"), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("classification: none_extra\n"), "{out}");
    assert_eq!(parse_witnesses(&out).len(), 2);
    assert!(out.contains("falsification: 0 of 1000"));
}

#[test]
fn invariant_identity_is_flagged() {
    let out = stdout(&planerot(&["invariant", &golden("11_4d_identity.json")]));
    assert!(out.starts_with("classification: all_J_planes\n"), "{out}");
    assert!(out.contains("note: rotation is the identity"));
}

#[test]
fn invariant_inapplicable_exits_3() {
    let o = planerot(&["invariant", &golden("13_5d_one_plane.json")]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("classification inapplicable"));
}

#[test]
fn invariant_is_seed_deterministic() {
    let a = planerot(&["invariant", &golden("09_4d_isoclinic.json")]);
    let b = planerot(&["invariant", &golden("09_4d_isoclinic.json"), "--seed", "11"]);
    assert_eq!(a.stdout, b.stdout);
    let c = planerot(&["invariant", &golden("09_4d_isoclinic.json"), "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn det_commands() {
    let dir = TempDir::new().unwrap();
    let id = write(&dir, "id.txt", &format_matrix_text(&Matrix::identity(4)));
    let out = stdout(&planerot(&["det", &id, "--method", "both"]));
    assert!(out.contains("det_permutation: 1.00000000000"));
    assert!(out.contains("det_lu: 1.00000000000"));

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_matrix(&mut rng, 5, 5);
    let path = write(
        &dir,
        "a.json",
        &serde_json::to_string(&a.to_rows()).unwrap(),
    );
    let out = stdout(&planerot(&["det", &path]));
    let rel: f64 = out
        .lines()
        .last()
        .unwrap()
        .trim_start_matches("relative_difference: ")
        .parse()
        .unwrap();
    assert!(rel < 1e-10);

    let big = write(&dir, "big.txt", &format_matrix_text(&Matrix::identity(11)));
    assert_eq!(
        planerot(&["det", &big, "--method", "perm"]).status.code(),
        Some(3)
    );
    assert_eq!(
        planerot(&["det", &big, "--method", "lu"]).status.code(),
        Some(0)
    );

    let a = random_matrix(&mut rng, 4, 4);
    let b = random_matrix(&mut rng, 4, 4);
    let pa = write(
        &dir,
        "pa.json",
        &serde_json::to_string(&a.to_rows()).unwrap(),
    );
    let pb = write(
        &dir,
        "pb.json",
        &serde_json::to_string(&b.to_rows()).unwrap(),
    );
    let o = planerot(&["det-product", &pa, &pb]);
    assert_eq!(o.status.code(), Some(0));
    let residual: f64 = stdout(&o)
        .lines()
        .last()
        .unwrap()
        .trim_start_matches("residual: ")
        .parse()
        .unwrap();
    assert!(residual < 1e-9);
}

#[test]
fn selftest_exit_codes_and_determinism() {
    let a = planerot(&["selftest", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(a.stdout, planerot(&["selftest", "--seed", "4"]).stdout);
    assert_eq!(planerot(&["selftest", "--corrupt"]).status.code(), Some(1));
}

#[test]
fn rotation_nd_of_golden_matches_build() {
    let spec =
        planerot_cli::spec_file::SpecFile::load(Path::new(&golden("12_5d_two_planes_axis.json")))
            .unwrap();
    let r = rotation_nd(
        &spec
            .to_rotation_spec(planerot_core::rotation::Repair::Strict)
            .unwrap(),
    );
    let m = parse_matrix(&stdout(&planerot(&[
        "build",
        &golden("12_5d_two_planes_axis.json"),
        "--output",
        "json",
    ])))
    .unwrap();
    assert_eq!(r, m);
}
