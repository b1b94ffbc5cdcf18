//! The `planerot` subcommands.

use std::fmt::Write as _;
use std::path::Path;

use planerot_core::determinant::{
    check_product_property, det_lu, det_permutation, MAX_PERMUTATION_DIM,
};
use planerot_core::isoclinic::{
    classify_invariant_planes, ClassifyOptions, Degenerate, PlaneClass,
};
use planerot_core::linalg::matvec;
use planerot_core::rotation::{apply_vector_form, rotation_nd, verify_rotation, Repair};
use planerot_core::tol::{rel_err, EQ_TOL};
use planerot_core::Matrix;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix_io::{
    format_entry, format_matrix_json, format_matrix_text, format_vector, load_input, load_matrix,
    parse_vector, Input,
};
use crate::spec_file::SpecFile;
use crate::CliError;

/// Bound on the relative residual reported by `det-product`.
pub const PRODUCT_TOL: f64 = 1e-9;

/// Text printed on stdout and the process exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Everything to print, newline-terminated.
    pub stdout: String,
    /// 0 success, 1 verification failed.
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }

    fn verdict(stdout: String, passed: bool) -> Self {
        Self {
            stdout,
            code: if passed { 0 } else { 1 },
        }
    }
}

/// Output format for `build`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    /// Rows of fixed-precision decimals.
    #[default]
    Text,
    /// Nested JSON arrays.
    Json,
}

/// Determinant method for `det`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum DetMethod {
    /// Permutation expansion.
    Perm,
    /// LU with partial pivoting.
    Lu,
    /// Both, with their relative difference.
    #[default]
    Both,
}

fn repair(strict: bool) -> Repair {
    if strict {
        Repair::Strict
    } else {
        Repair::Orthonormalize
    }
}

fn build_matrix(spec: &SpecFile, strict: bool) -> Result<Matrix, CliError> {
    Ok(rotation_nd(&spec.to_rotation_spec(repair(strict))?))
}

/// `build`: prints the rotation matrix of a spec file.
pub fn build(spec_path: &Path, output: OutputFormat, strict: bool) -> Result<Outcome, CliError> {
    let r = build_matrix(&SpecFile::load(spec_path)?, strict)?;
    let body = match output {
        OutputFormat::Text => format_matrix_text(&r),
        OutputFormat::Json => format_matrix_json(&r),
    };
    Ok(Outcome::ok(body + "\n"))
}

/// `apply`: prints `Rx`, computed by the vector form and cross-checked
/// against the matrix form.
pub fn apply(spec_path: &Path, vector: &str, strict: bool) -> Result<Outcome, CliError> {
    let spec = SpecFile::load(spec_path)?.to_rotation_spec(repair(strict))?;
    let x = parse_vector(vector)?;
    let direct = apply_vector_form(&spec, &x).map_err(|e| CliError::spec("--vector", e))?;
    let via_matrix = matvec(&rotation_nd(&spec), &x).map_err(|e| CliError::spec("--vector", e))?;
    let gap = direct
        .max_abs_diff(&via_matrix)
        .map_err(|e| CliError::spec("--vector", e))?;
    if gap > EQ_TOL {
        return Err(CliError::Verification(format!(
            "vector form and matrix form disagree by {gap:e}"
        )));
    }
    Ok(Outcome::ok(format_vector(&direct) + "\n"))
}

/// `verify`: orthogonality and determinant of a matrix file, or of the
/// matrix built from a spec file. Exit 0 iff it is a rotation.
pub fn verify(path: &Path) -> Result<Outcome, CliError> {
    let m = match load_input(path)? {
        Input::Spec(spec) => build_matrix(&spec, false)?,
        Input::Matrix(m) => m,
    };
    let report = verify_rotation(&m).map_err(|e| CliError::spec("matrix", e))?;
    let mut out = String::new();
    writeln!(out, "ortho_residual: {:.6e}", report.ortho_residual).unwrap();
    writeln!(out, "det_value: {}", format_entry(report.det_value)).unwrap();
    writeln!(out, "is_rotation: {}", report.is_rotation).unwrap();
    Ok(Outcome::verdict(out, report.is_rotation))
}

/// Knobs for `invariant`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InvariantArgs {
    /// Witness planes to print in the isoclinic case.
    pub samples: usize,
    /// General-position probes in the non-isoclinic case.
    pub trials: usize,
    /// RNG seed; falls back to the spec file's `seed`, then 0.
    pub seed: Option<u64>,
}

/// `invariant`: classifies the invariant planes of a spec.
pub fn invariant(spec_path: &Path, args: InvariantArgs) -> Result<Outcome, CliError> {
    let file = SpecFile::load(spec_path)?;
    let spec = file.to_rotation_spec(Repair::Orthonormalize)?;
    let seed = args.seed.or(file.seed).unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = ClassifyOptions {
        witnesses: args.samples,
        trials: args.trials,
        ..Default::default()
    };
    let c = classify_invariant_planes(&spec, &opts, &mut rng)
        .map_err(|e| CliError::spec("invariant", e))?;

    let mut out = String::new();
    let kind = match c.kind {
        PlaneClass::NoneExtra => "none_extra",
        PlaneClass::AllJPlanes => "all_J_planes",
        PlaneClass::SplitHalfTurn => "split_half_turn",
    };
    writeln!(out, "classification: {kind}").unwrap();
    writeln!(out, "seed: {seed}").unwrap();
    match c.degenerate {
        Some(Degenerate::Identity) => writeln!(
            out,
            "note: rotation is the identity; every 2D subspace is invariant"
        ),
        Some(Degenerate::NegativeIdentity) => {
            writeln!(out, "note: rotation is -I; every 2D subspace is invariant")
        }
        None => Ok(()),
    }
    .unwrap();
    if c.kind == PlaneClass::SplitHalfTurn {
        writeln!(out, "note: rotation is ±diag(I, -I) on Π ⊕ Π⊥; any line of Π with any line of Π⊥ spans an invariant plane").unwrap();
    }
    if let Some(j) = &c.j {
        writeln!(out, "J:\n{}", format_matrix_text(j)).unwrap();
    }
    writeln!(out, "witnesses: {} (tol {:e})", c.witnesses.len(), c.tol).unwrap();
    for (i, w) in c.witnesses.iter().enumerate() {
        writeln!(
            out,
            "plane {}: u = [{}] v = [{}] residual = {:.3e}",
            i + 1,
            format_vector(w.plane.u()),
            format_vector(w.plane.v()),
            w.residual
        )
        .unwrap();
    }
    if let Some(f) = c.falsification {
        writeln!(
            out,
            "falsification: {} of {} general-position planes invariant (randomized evidence, not a proof)",
            f.invariant_found, f.trials
        )
        .unwrap();
    }
    writeln!(out, "consistent: {}", c.consistent()).unwrap();
    Ok(Outcome::verdict(out, c.consistent()))
}

/// `det`: determinant by permutation expansion, LU, or both.
pub fn det(path: &Path, method: DetMethod) -> Result<Outcome, CliError> {
    let m = load_matrix(path)?;
    let n = m
        .require_square()
        .map_err(|e| CliError::spec("matrix", e))?;
    if n > MAX_PERMUTATION_DIM && method != DetMethod::Lu {
        return Err(CliError::Spec(format!(
            "permutation expansion limited to n <= {MAX_PERMUTATION_DIM}, got n = {n}; use --method lu"
        )));
    }
    let mut out = String::new();
    let perm = matches!(method, DetMethod::Perm | DetMethod::Both)
        .then(|| det_permutation(&m))
        .transpose()
        .map_err(|e| CliError::spec("matrix", e))?;
    let lu = matches!(method, DetMethod::Lu | DetMethod::Both)
        .then(|| det_lu(&m))
        .transpose()
        .map_err(|e| CliError::spec("matrix", e))?;
    if let Some(p) = perm {
        writeln!(out, "det_permutation: {}", format_entry(p)).unwrap();
    }
    if let Some(l) = lu {
        writeln!(out, "det_lu: {}", format_entry(l)).unwrap();
    }
    if let (Some(p), Some(l)) = (perm, lu) {
        writeln!(out, "relative_difference: {:.3e}", rel_err(p, l)).unwrap();
    }
    Ok(Outcome::ok(out))
}

/// `det-product`: both sides of `det(AB) = det(A) det(B)`.
pub fn det_product(a_path: &Path, b_path: &Path) -> Result<Outcome, CliError> {
    let a = load_matrix(a_path)?;
    let b = load_matrix(b_path)?;
    let r = check_product_property(&a, &b).map_err(|e| CliError::spec("matrices", e))?;
    let mut out = String::new();
    writeln!(out, "lhs det(AB): {}", format_entry(r.lhs)).unwrap();
    writeln!(out, "rhs det(A)det(B): {}", format_entry(r.rhs)).unwrap();
    writeln!(out, "residual: {:.3e}", r.residual).unwrap();
    Ok(Outcome::verdict(out, r.residual < PRODUCT_TOL))
}
