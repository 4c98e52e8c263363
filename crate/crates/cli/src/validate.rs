//! `nz validate`: the oracle cross-checks and internal invariants, reported
//! as JSON. Every check compares two independent routes; none compares to a
//! published number.

use serde::Serialize;
use zeldovich_core::fields::{d_field, enclosed_charge, potentials};
use zeldovich_core::oracle::{
    hydrogen_electric_fields, kernel_identity_check, loop_fields, nz_position_space, spectrum_audit,
    sphere_pair_fields, standard_audit_pairs,
};
use zeldovich_core::zeldovich::{
    atomic_spec, classical_spec, nz_hydrogen_electric, nz_hydrogen_magnetic, nz_hydrogen_magnetic_generic, nz_loop,
    nz_sphere_pair,
};
use zeldovich_core::{
    AuditReport, CurrentLoop, HydrogenAtom, LoopMethod, McEstimate, McSpec, PhysConst, Proposal, QuadSpec, Result,
    SphereMethod, SpherePair,
};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub reference: f64,
    /// Relative tolerance, or the number of standard errors for Monte Carlo.
    pub tolerance: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub schema_version: u32,
    pub passed: bool,
    pub fast: bool,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub audit: AuditReport,
}

fn relative(name: impl Into<String>, value: f64, reference: f64, tolerance: f64) -> Check {
    let dev = if reference == 0.0 { value.abs() } else { ((value - reference) / reference).abs() };
    Check { name: name.into(), passed: dev <= tolerance, value, reference, tolerance }
}

fn within_sigma(name: &str, est: McEstimate, reference: f64) -> Check {
    let passed = (est.value - reference).abs() <= 3.0 * est.stderr;
    Check { name: name.into(), passed, value: est.value, reference, tolerance: 3.0 }
}

/// Runs the suite. `fast` skips the Monte Carlo routes and the atomic
/// spectrum pairs whose numeric transforms are slow.
pub fn run(constants: PhysConst, rel_tol: Option<f64>, fast: bool, seed: u64) -> Result<ValidationReport> {
    let with_tol = |s: QuadSpec| match rel_tol {
        Some(t) => s.with_rel_tol(t),
        None => s,
    };
    let spec = &with_tol(classical_spec());
    let atom_spec = with_tol(atomic_spec().with_rel_tol(1e-9));
    let mut checks = Vec::new();

    for sep in [0.5, 1.0, 2.0] {
        let k = kernel_identity_check(sep, 1e4)?;
        checks.push(relative(format!("kernel identity at separation {sep}"), k.lhs, k.rhs, 0.01));
    }

    for b in [0.5, 3.0, 10.0, 100.0] {
        let pair = SpherePair::from_ratio(b, 1.0)?;
        let closed = nz_sphere_pair(&pair, SphereMethod::Closed, spec)?.total;
        let quad = nz_sphere_pair(&pair, SphereMethod::Quadrature, spec)?.total;
        checks.push(relative(format!("sphere pair quadrature vs closed, b = {b}"), quad, closed, 1e-6));
    }

    let lp = CurrentLoop::new(1.0, 1.0)?;
    let closed = nz_loop(&lp, LoopMethod::Closed, spec)?.total;
    let quad = nz_loop(&lp, LoopMethod::Quadrature, spec)?.total;
    checks.push(relative("loop quadrature vs closed", quad, closed, 1e-6));

    let atom = HydrogenAtom::new(constants, true);
    let reduced = nz_hydrogen_magnetic(&atom, &atom_spec)?.total;
    let generic = nz_hydrogen_magnetic_generic(&atom, &atom_spec)?.total;
    checks.push(relative("hydrogen magnetic reduction routes", generic, reduced, 1e-6));

    let a = constants.proton_a;
    checks.push(relative("enclosed charge at the proton radius", enclosed_charge(&atom, a)?, 1.0, 1e-4));
    let mut worst = 0.0f64;
    for i in 0..25 {
        let r = 0.1 * a * (1e7f64).powf(i as f64 / 24.0);
        let dr = 1e-5 * r;
        let fd = -(potentials(&atom, r + dr)?.phi - potentials(&atom, r - dr)?.phi) / (2.0 * dr);
        let d = d_field(&atom, [0.0, 0.0, r])?[2];
        worst = worst.max(((d - fd) / fd).abs());
    }
    checks.push(Check {
        name: "largest relative deviation of the field from −∇φ by finite differences".into(),
        passed: worst <= 1e-6,
        value: worst,
        reference: 0.0,
        tolerance: 1e-6,
    });

    let pairs: Vec<_> = standard_audit_pairs(&constants)?
        .into_iter()
        .filter(|p| !fast || !(p.name.starts_with("hydrogen") || p.name == "xenon charge"))
        .collect();
    let audit = spectrum_audit(&pairs)?;

    if !fast {
        let pair = SpherePair::from_ratio(3.0, 1.0)?;
        let exact = nz_sphere_pair(&pair, SphereMethod::Closed, spec)?.total;
        let mc = McSpec::new(400_000, seed, 2.0)
            .with_proposal(Proposal::LogRadial { r_min: 0.5, r_max: 20.0 })
            .with_separation_range(1e-2, 1e2)
            .with_batches(400);
        let est = nz_position_space(sphere_pair_fields(&pair), constants.alpha, &mc)?;
        checks.push(within_sigma("sphere pair position-space route within 3 standard errors", est, exact));

        let lp = CurrentLoop::new(1.0, constants.elementary_charge * constants.speed_of_light)?;
        let exact = nz_loop(&lp, LoopMethod::Closed, spec)?.total;
        let mc = McSpec::new(4_000_000, seed, 1.0)
            .with_proposal(Proposal::Ring { radius: 1.0, rho_min: 1e-5, rho_max: 0.5 })
            .with_separation_range(1e-5, 1e2);
        let est = nz_position_space(loop_fields(&lp, &constants, 1e-4), constants.alpha, &mc)?;
        checks.push(relative("loop position-space route", est.value, exact, 0.1));
        checks.push(within_sigma("loop position-space route within 3 standard errors", est, exact));

        let b = constants.bohr_b;
        let mc = McSpec::new(4_000_000, seed, b)
            .with_proposal(Proposal::LogRadial { r_min: a / 100.0, r_max: 100.0 * b })
            .with_separation_range(a / 100.0, 100.0 * b);
        let est = nz_position_space(hydrogen_electric_fields(&atom), constants.alpha, &mc)?;
        let fourier = nz_hydrogen_electric(&atom, &atom_spec)?.total;
        checks.push(relative("hydrogen electric position-space route", est.value, fourier, 0.15));
        checks.push(within_sigma("hydrogen electric position-space route within 3 standard errors", est, fourier));
    }

    let passed = audit.passed && checks.iter().all(|c| c.passed);
    Ok(ValidationReport { schema_version: crate::report::SCHEMA_VERSION, passed, fast, seed, checks, audit })
}
