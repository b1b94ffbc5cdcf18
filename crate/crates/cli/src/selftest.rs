//! `planerot selftest`: a seeded run of the library's invariant checks.
//!
//! Each check prints one `PASS`/`FAIL` line with its worst observed
//! residual. Output depends only on the seed.

use std::f64::consts::PI;

use planerot_core::determinant::{check_product_property, det_lu, det_permutation};
use planerot_core::isoclinic::{
    build_j, classify_invariant_planes, complex_structure_residual, invariant_plane,
    is_invariant_plane, isoclinic_rotation, ClassifyOptions, PlaneClass,
};
use planerot_core::linalg::{cross, matmul_cayley, matmul_colrow, matmul_rowcol, matvec};
use planerot_core::rotation::{
    apply_vector_form, plane_generator, plane_projector, rodrigues_apply, rotation_3d, rotation_nd,
    verify_rotation, Frame4, RotationSpec,
};
use planerot_core::sample::{
    random_frame4, random_matrix, random_orthonormal, random_spec, random_unit, random_vector,
};
use planerot_core::tol::{rel_err, INVARIANCE_TOL};
use planerot_core::Matrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Outcome;

/// Settings for [`run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SelftestOptions {
    /// RNG seed.
    pub seed: u64,
    /// Perturb every constructed rotation by `1e-7` in entry (0, 0), to
    /// confirm the suite notices a broken construction.
    pub corrupt: bool,
}

struct Check {
    name: &'static str,
    worst: f64,
    bound: f64,
}

struct Suite {
    rng: ChaCha8Rng,
    corrupt: bool,
}

impl Suite {
    fn rotation(&self, spec: &RotationSpec) -> Matrix {
        let mut r = rotation_nd(spec);
        if self.corrupt {
            r = r
                .add(&Matrix::from_fn(r.rows(), r.cols(), |i, j| {
                    if i == 0 && j == 0 {
                        1e-7
                    } else {
                        0.0
                    }
                }))
                .unwrap();
        }
        r
    }

    fn spec(&mut self) -> RotationSpec {
        let n = self.rng.gen_range(2..=9);
        let p = self.rng.gen_range(1..=n / 2);
        random_spec(&mut self.rng, n, p)
    }

    fn matmul(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let (r, k, c) = (
                self.rng.gen_range(1..=10),
                self.rng.gen_range(1..=10),
                self.rng.gen_range(1..=10),
            );
            let a = random_matrix(&mut self.rng, r, k);
            let b = random_matrix(&mut self.rng, k, c);
            let oracle = matmul_rowcol(&a, &b).unwrap();
            worst = worst.max(
                matmul_cayley(&a, &b)
                    .unwrap()
                    .max_rel_diff(&oracle)
                    .unwrap(),
            );
            worst = worst.max(
                matmul_colrow(&a, &b)
                    .unwrap()
                    .max_rel_diff(&oracle)
                    .unwrap(),
            );
        }
        Check {
            name: "matmul_agreement",
            worst,
            bound: 1e-12,
        }
    }

    fn product_property(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let n = self.rng.gen_range(2..=6);
            let a = random_matrix(&mut self.rng, n, n);
            let b = random_matrix(&mut self.rng, n, n);
            worst = worst.max(check_product_property(&a, &b).unwrap().residual);
        }
        Check {
            name: "determinant_product",
            worst,
            bound: 1e-9,
        }
    }

    fn det_oracles(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let n = self.rng.gen_range(1..=7);
            let a = random_matrix(&mut self.rng, n, n);
            worst = worst.max(rel_err(det_permutation(&a).unwrap(), det_lu(&a).unwrap()));
        }
        Check {
            name: "determinant_oracles",
            worst,
            bound: 1e-10,
        }
    }

    fn rotation_validity(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let spec = self.spec();
            let report = verify_rotation(&self.rotation(&spec)).unwrap();
            worst = worst
                .max(report.ortho_residual / 1e-11)
                .max((report.det_value - 1.0).abs() / 1e-9);
        }
        // normalized: both bounds map to 1
        Check {
            name: "rotation_validity",
            worst,
            bound: 1.0,
        }
    }

    fn rodrigues(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let f = random_orthonormal(&mut self.rng, 3, 2);
            let angle = self.rng.gen_range(-PI..PI);
            let c = cross(&f[0], &f[1]).unwrap();
            let r = rotation_3d(&f[0], &f[1], angle).unwrap();
            let x = random_vector(&mut self.rng, 3);
            let direct = rodrigues_apply(&c, angle, &x).unwrap();
            worst = worst.max(direct.max_abs_diff(&matvec(&r, &x).unwrap()).unwrap());
        }
        Check {
            name: "rodrigues_equivalence",
            worst,
            bound: 1e-12,
        }
    }

    fn vector_form(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let spec = self.spec();
            let x = random_vector(&mut self.rng, spec.dim());
            let direct = apply_vector_form(&spec, &x).unwrap();
            worst = worst.max(
                direct
                    .max_abs_diff(&matvec(&self.rotation(&spec), &x).unwrap())
                    .unwrap(),
            );
        }
        Check {
            name: "vector_form_equivalence",
            worst,
            bound: 1e-12,
        }
    }

    fn quarter_turn(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let n = self.rng.gen_range(3..=8);
            let f = random_orthonormal(&mut self.rng, n, 2);
            let g = plane_generator(&f[0], &f[1]).unwrap();
            let p = plane_projector(&f[0], &f[1]).unwrap();
            worst = worst.max(matmul_cayley(&g, &g).unwrap().add(&p).unwrap().max_abs());
        }
        Check {
            name: "quarter_turn_identity",
            worst,
            bound: 1e-12,
        }
    }

    fn isoclinic(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..10 {
            let frame = random_frame4(&mut self.rng);
            let j = build_j(&frame);
            worst = worst.max(complex_structure_residual(&j).unwrap() / 1e-12);
            let rotations: Vec<Matrix> = (0..5)
                .map(|_| isoclinic_rotation(&frame, self.rng.gen_range(0.0..2.0 * PI)))
                .collect();
            for _ in 0..100 {
                let plane = invariant_plane(&random_unit(&mut self.rng, 4), &j).unwrap();
                for r in &rotations {
                    if !is_invariant_plane(r, &plane, INVARIANCE_TOL).unwrap() {
                        worst = worst.max(f64::INFINITY);
                    }
                }
            }
        }
        let spec = Frame4::standard().spec(PI / 3.0, PI / 4.0).unwrap();
        let opts = ClassifyOptions {
            trials: 200,
            ..Default::default()
        };
        let c = classify_invariant_planes(&spec, &opts, &mut self.rng).unwrap();
        if c.kind != PlaneClass::NoneExtra || !c.consistent() {
            worst = f64::INFINITY;
        }
        Check {
            name: "isoclinic_classification",
            worst,
            bound: 1.0,
        }
    }

    fn constant_angle(&mut self) -> Check {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let spec = self.spec();
            let angles: Vec<f64> = spec
                .planes()
                .iter()
                .map(|_| self.rng.gen_range(0.01..PI - 0.01))
                .collect();
            let spec = spec.with_angles(&angles).unwrap();
            let r = self.rotation(&spec);
            for plane in spec.planes() {
                let (s, t) = (self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-1.0..1.0));
                let x = plane.a().scaled(s).add(&plane.b().scaled(t)).unwrap();
                if x.norm() < 1e-3 {
                    continue;
                }
                let rx = matvec(&r, &x).unwrap();
                let cos = (rx.dot(&x).unwrap() / (rx.norm() * x.norm())).clamp(-1.0, 1.0);
                worst = worst.max((cos.acos() - plane.angle()).abs());
            }
        }
        Check {
            name: "constant_angle",
            worst,
            bound: 1e-9,
        }
    }
}

/// Runs every check and reports. Exit code 1 names the first failure.
pub fn run(opts: SelftestOptions) -> Outcome {
    let mut suite = Suite {
        rng: ChaCha8Rng::seed_from_u64(opts.seed),
        corrupt: opts.corrupt,
    };
    let checks = [
        suite.matmul(),
        suite.product_property(),
        suite.det_oracles(),
        suite.rotation_validity(),
        suite.rodrigues(),
        suite.vector_form(),
        suite.quarter_turn(),
        suite.isoclinic(),
        suite.constant_angle(),
    ];
    let mut stdout = format!("selftest seed {}\n", opts.seed);
    let mut first_failure = None;
    for c in &checks {
        let pass = c.worst < c.bound;
        stdout += &format!(
            "{} {} worst={:.3e} bound={:.0e}\n",
            if pass { "PASS" } else { "FAIL" },
            c.name,
            c.worst,
            c.bound
        );
        if !pass && first_failure.is_none() {
            first_failure = Some(c.name);
        }
    }
    match first_failure {
        None => stdout += "all checks passed\n",
        Some(name) => stdout += &format!("first failure: {name}\n"),
    }
    Outcome {
        stdout,
        code: u8::from(first_failure.is_some()),
    }
}
