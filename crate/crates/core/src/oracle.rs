//! Independent checks of the Fourier-space machinery.
//!
//! * the kernel identity (2π)^{−3}∫d³k/k e^{i𝐤·𝚫} = 1/(2π²Δ²) by regulated
//!   quadrature,
//! * the position-space form 𝒩_Z = (α/π)∬d³r d³r′ (𝒟·𝒟′ + ℋ·ℋ′)/|𝐫−𝐫′|²
//!   by importance-sampled Monte Carlo,
//! * analytic spectra against numeric transforms of their densities.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{enclosed_charge, Vec3};
use crate::quadrature::{integrate, QuadSpec};
use crate::sources::{proton_density, CurrentLoop, HydrogenAtom, NobleGasAtom, PhysConst, SpherePair};
use crate::specfun::{elliptic_e, elliptic_k};
use crate::spectra::{
    atom_charge_spectrum, ball_form, hydrogen_charge_spectrum, hydrogen_chi_spectrum, hydrogen_chi_spectrum_deriv,
    loop_current_spectrum, radial_fourier, shell_spectrum, FOURIER_NORM,
};

// ---------------------------------------------------------------- kernel

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelCheck {
    pub separation: f64,
    pub cutoff_k: f64,
    pub lhs: f64,
    pub rhs: f64,
}

impl KernelCheck {
    pub fn relative_error(&self) -> f64 {
        ((self.lhs - self.rhs) / self.rhs).abs()
    }
}

/// Both sides of (2π)^{−3}∫d³k/k e^{i𝐤·𝚫} = 1/(2π²Δ²).
///
/// The left side is (2π)^{−3}·4π∫₀^K dk sin(kΔ)/Δ·e^{−εk}, evaluated at
/// ε = 80/K and 40/K (so the cutoff is exponentially suppressed) and
/// extrapolated to ε → 0 assuming an ε² error. The residual is O((KΔ)⁻⁴).
pub fn kernel_identity_check(separation: f64, cutoff_k: f64) -> Result<KernelCheck> {
    if !(separation > 0.0) || !separation.is_finite() {
        return Err(Error::domain("kernel_identity_check", format!("separation {separation} must be > 0")));
    }
    if !(cutoff_k > 0.0) || !cutoff_k.is_finite() {
        return Err(Error::domain("kernel_identity_check", format!("cutoff {cutoff_k} must be > 0")));
    }
    let spec = QuadSpec::default()
        .with_rel_tol(1e-10)
        .with_abs_tol(1e-14 / separation)
        .with_oscillation(2.0 * PI / separation);
    let regulated = |eps: f64| -> Result<f64> {
        let res = integrate(|k| (k * separation).sin() * (-eps * k).exp(), 0.0, cutoff_k, &spec)?;
        Ok(res.value * 4.0 * PI / ((2.0 * PI).powi(3) * separation))
    };
    let coarse = regulated(80.0 / cutoff_k)?;
    let fine = regulated(40.0 / cutoff_k)?;
    Ok(KernelCheck {
        separation,
        cutoff_k,
        lhs: (4.0 * fine - coarse) / 3.0,
        rhs: 1.0 / (2.0 * PI * PI * separation * separation),
    })
}

// ---------------------------------------------------------------- Monte Carlo

/// One component of an importance density in three dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Proposal {
    /// Isotropic, radial law p(r) ∝ r²/(r²+ℓ²)².
    HeavyTail { scale: f64 },
    /// Isotropic, ln r uniform on [r_min, r_max].
    LogRadial { r_min: f64, r_max: f64 },
    /// Around the circle of radius `radius` in the z = 0 plane; the distance
    /// ρ to the circle is log-uniform on [rho_min, rho_max], both angles
    /// uniform.
    Ring { radius: f64, rho_min: f64, rho_max: f64 },
}

impl Proposal {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Proposal::HeavyTail { scale } => scale > 0.0 && scale.is_finite(),
            Proposal::LogRadial { r_min, r_max } => r_min > 0.0 && r_max > r_min && r_max.is_finite(),
            Proposal::Ring { radius, rho_min, rho_max } => {
                rho_min > 0.0 && rho_max > rho_min && rho_max < radius && radius.is_finite()
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid proposal {self:?}")))
        }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec3 {
        match *self {
            Proposal::HeavyTail { scale } => {
                // r = ℓ·tan θ with θ ∝ sin²θ on [0, π/2]
                let u: f64 = rng.gen();
                let theta = invert_sin2_cdf(u);
                isotropic(rng, scale * theta.tan())
            }
            Proposal::LogRadial { r_min, r_max } => {
                let u: f64 = rng.gen();
                isotropic(rng, r_min * (r_max / r_min).powf(u))
            }
            Proposal::Ring { radius, rho_min, rho_max } => {
                let u: f64 = rng.gen();
                let rho = rho_min * (rho_max / rho_min).powf(u);
                let phi = 2.0 * PI * rng.gen::<f64>();
                let psi = 2.0 * PI * rng.gen::<f64>();
                let cyl = radius + rho * psi.cos();
                [cyl * phi.cos(), cyl * phi.sin(), rho * psi.sin()]
            }
        }
    }

    /// Density in d³r at `p`.
    fn density(&self, p: Vec3) -> f64 {
        match *self {
            Proposal::HeavyTail { scale } => {
                let r2 = dot(p, p);
                scale / (PI * PI * (r2 + scale * scale).powi(2))
            }
            Proposal::LogRadial { r_min, r_max } => {
                let r = dot(p, p).sqrt();
                if r < r_min || r > r_max {
                    0.0
                } else {
                    1.0 / (4.0 * PI * r.powi(3) * (r_max / r_min).ln())
                }
            }
            Proposal::Ring { radius, rho_min, rho_max } => {
                let cyl = p[0].hypot(p[1]);
                let rho = (cyl - radius).hypot(p[2]);
                if rho < rho_min || rho > rho_max {
                    0.0
                } else {
                    1.0 / (4.0 * PI * PI * rho * rho * (rho_max / rho_min).ln() * cyl)
                }
            }
        }
    }
}

/// θ with (2θ − sin 2θ)/π = u, by Newton iteration from a bisection start.
fn invert_sin2_cdf(u: f64) -> f64 {
    let cdf = |t: f64| (2.0 * t - (2.0 * t).sin()) / PI;
    let (mut lo, mut hi) = (0.0, 0.5 * PI);
    for _ in 0..12 {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) < u {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..4 {
        let d = 4.0 * t.sin().powi(2) / PI;
        if d <= 0.0 {
            break;
        }
        t = (t - (cdf(t) - u) / d).clamp(lo, hi);
    }
    t
}

fn isotropic(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    let cz: f64 = rng.gen_range(-1.0..1.0);
    let phi = 2.0 * PI * rng.gen::<f64>();
    let s = (1.0 - cz * cz).max(0.0).sqrt();
    [r * s * phi.cos(), r * s * phi.sin(), r * cz]
}

fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Settings of the position-space Monte Carlo.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSpec {
    pub samples: usize,
    pub seed: u64,
    /// Field scale ℓ of the heavy-tailed component used for both points and
    /// separations.
    pub importance_scale: f64,
    /// Extra components of the point density, mixed with equal weights.
    pub proposals: Vec<Proposal>,
    /// Range of the log-uniform component of the separation density.
    pub separation_range: (f64, f64),
    /// Independent streams; the standard error comes from their spread.
    pub batches: usize,
}

impl McSpec {
    pub fn new(samples: usize, seed: u64, importance_scale: f64) -> Self {
        McSpec {
            samples,
            seed,
            importance_scale,
            proposals: Vec::new(),
            separation_range: (1e-3 * importance_scale, 1e3 * importance_scale),
            batches: 100,
        }
    }

    pub fn with_proposal(mut self, p: Proposal) -> Self {
        self.proposals.push(p);
        self
    }

    pub fn with_separation_range(mut self, lo: f64, hi: f64) -> Self {
        self.separation_range = (lo, hi);
        self
    }

    pub fn with_batches(mut self, batches: usize) -> Self {
        self.batches = batches;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.samples < 1000 {
            return Err(Error::Config(format!("{} samples, at least 1000 required", self.samples)));
        }
        if self.batches < 2 || self.batches > self.samples {
            return Err(Error::Config(format!("batch count {} out of range", self.batches)));
        }
        for p in self.point_mixture().iter().chain(self.separation_mixture().iter()) {
            p.validate()?;
        }
        Ok(())
    }

    fn point_mixture(&self) -> Vec<Proposal> {
        let mut v = vec![Proposal::HeavyTail { scale: self.importance_scale }];
        v.extend(self.proposals.iter().copied());
        v
    }

    fn separation_mixture(&self) -> Vec<Proposal> {
        vec![
            Proposal::HeavyTail { scale: self.importance_scale },
            Proposal::LogRadial { r_min: self.separation_range.0, r_max: self.separation_range.1 },
        ]
    }
}

struct Mixture(Vec<Proposal>);

impl Mixture {
    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec3 {
        let i = rng.gen_range(0..self.0.len());
        self.0[i].sample(rng)
    }

    fn density(&self, p: Vec3) -> f64 {
        self.0.iter().map(|c| c.density(p)).sum::<f64>() / self.0.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
}

/// (α/π)∬d³r d³r′ (𝒟·𝒟′ + ℋ·ℋ′)/|𝐫−𝐫′|² by Monte Carlo.
///
/// 𝐫 is drawn from the point mixture and 𝚫 = 𝐫′ − 𝐫 independently from the
/// separation mixture, whose log-uniform part absorbs the 1/Δ² kernel. The
/// sampler returns (𝒟, ℋ) in geometric units. Batches run in parallel and
/// are combined in batch order, so a fixed seed gives a bitwise-identical
/// estimate.
pub fn nz_position_space<F>(field: F, alpha: f64, mc: &McSpec) -> Result<McEstimate>
where
    F: Fn(Vec3) -> (Vec3, Vec3) + Sync,
{
    mc.validate()?;
    let points = Mixture(mc.point_mixture());
    let seps = Mixture(mc.separation_mixture());
    let per = mc.samples / mc.batches;
    let extra = mc.samples % mc.batches;
    let batch_means: Vec<Result<f64>> = (0..mc.batches)
        .into_par_iter()
        .map(|batch| {
            let n = per + usize::from(batch < extra);
            let mut rng = ChaCha8Rng::seed_from_u64(mc.seed);
            rng.set_stream(batch as u64);
            let mut sum = 0.0;
            for _ in 0..n {
                let r = points.sample(&mut rng);
                let delta = seps.sample(&mut rng);
                let r2 = [r[0] + delta[0], r[1] + delta[1], r[2] + delta[2]];
                let (d1, h1) = field(r);
                let (d2, h2) = field(r2);
                if !d1.iter().chain(h1.iter()).all(|v| v.is_finite()) {
                    return Err(Error::NonFiniteIntegrand { x: dot(r, r).sqrt() });
                }
                if !d2.iter().chain(h2.iter()).all(|v| v.is_finite()) {
                    return Err(Error::NonFiniteIntegrand { x: dot(r2, r2).sqrt() });
                }
                let num = dot(d1, d2) + dot(h1, h2);
                if num != 0.0 {
                    sum += num / (dot(delta, delta) * points.density(r) * seps.density(delta));
                }
            }
            Ok(sum / n as f64)
        })
        .collect();
    let means = batch_means.into_iter().collect::<Result<Vec<f64>>>()?;
    // batches differ in size by at most one sample; weight by size
    let mut total = 0.0;
    for (i, m) in means.iter().enumerate() {
        total += m * (per + usize::from(i < extra)) as f64;
    }
    let mean = total / mc.samples as f64;
    let b = means.len() as f64;
    let avg = means.iter().sum::<f64>() / b;
    let var = means.iter().map(|m| (m - avg).powi(2)).sum::<f64>() / (b - 1.0);
    let pref = alpha / PI;
    Ok(McEstimate { value: pref * mean, stderr: pref * (var / b).sqrt(), samples: mc.samples })
}

/// Fields of a thin circular loop in the z = 0 plane, (𝒟, ℋ) = (0, H/(ec)).
///
/// Within `wire_radius` of the wire the field is scaled by (ρ/w)², as inside
/// a round wire of that radius; this keeps the Monte Carlo variance finite
/// and changes 𝒩_Z by O((w/a)·ln(a/w)).
pub fn loop_fields(lp: &CurrentLoop, c: &PhysConst, wire_radius: f64) -> impl Fn(Vec3) -> (Vec3, Vec3) + Sync {
    let a = lp.radius_a;
    let strength = lp.current_a / (c.elementary_charge * c.speed_of_light);
    move |p: Vec3| {
        let cyl = p[0].hypot(p[1]);
        let z = p[2];
        let rho_w = (cyl - a).hypot(z);
        let r2 = cyl * cyl + z * z;
        let alpha2 = rho_w * rho_w;
        let beta2 = alpha2 + 4.0 * a * cyl;
        let beta = beta2.sqrt();
        let m = 4.0 * a * cyl / beta2;
        let (k, e) = match (elliptic_k(m), elliptic_e(m)) {
            (Ok(k), Ok(e)) => (k, e),
            _ => return ([0.0; 3], [f64::NAN; 3]),
        };
        let pref = strength / (2.0 * PI * alpha2 * beta);
        let hz = pref * ((a * a - r2) * e + alpha2 * k);
        let h_cyl = if cyl == 0.0 { 0.0 } else { pref * z * ((a * a + r2) * e - alpha2 * k) / cyl };
        let damp = if rho_w < wire_radius { (rho_w / wire_radius).powi(2) } else { 1.0 };
        let (hx, hy) = if cyl == 0.0 { (0.0, 0.0) } else { (h_cyl * p[0] / cyl, h_cyl * p[1] / cyl) };
        ([0.0; 3], [damp * hx, damp * hy, damp * hz])
    }
}

/// Electric field of hydrogen, (𝒟, 0), from the enclosed charge.
pub fn hydrogen_electric_fields(atom: &HydrogenAtom) -> impl Fn(Vec3) -> (Vec3, Vec3) + Sync {
    let atom = *atom;
    move |p: Vec3| {
        let r = dot(p, p).sqrt();
        match enclosed_charge(&atom, r) {
            Ok(q) => {
                let f = q / (4.0 * PI * r.powi(3));
                ([f * p[0], f * p[1], f * p[2]], [0.0; 3])
            }
            Err(_) => ([f64::NAN; 3], [0.0; 3]),
        }
    }
}

/// Electric field 𝒟 of the sphere pair: +Q on the shell centred at z = +d/2,
/// −Q on the one at z = −d/2.
pub fn sphere_pair_fields(pair: &SpherePair) -> impl Fn(Vec3) -> (Vec3, Vec3) + Sync {
    let pair = *pair;
    move |p: Vec3| {
        let mut d = [0.0; 3];
        for (sign, zc) in [(1.0, 0.5 * pair.separation_d), (-1.0, -0.5 * pair.separation_d)] {
            let v = [p[0], p[1], p[2] - zc];
            let r = dot(v, v).sqrt();
            if r > pair.radius_a {
                let f = sign * pair.charge_over_e / (4.0 * PI * r.powi(3));
                for i in 0..3 {
                    d[i] += f * v[i];
                }
            }
        }
        (d, [0.0; 3])
    }
}

// ---------------------------------------------------------------- spectrum audit

type Analytic = Box<dyn Fn(f64) -> f64 + Send + Sync>;
/// Numeric route; the second argument is the absolute accuracy wanted.
type Numeric = Box<dyn Fn(f64, f64) -> Result<f64> + Send + Sync>;

/// An analytic spectrum and an independent numeric evaluation of it.
pub struct AuditPair {
    pub name: String,
    pub analytic: Analytic,
    pub numeric: Numeric,
    pub k_grid: Vec<f64>,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditEntry {
    pub name: String,
    pub max_rel_deviation: f64,
    pub worst_k: f64,
    pub points: usize,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub passed: bool,
}

/// Grid points where |f̃| is below this fraction of its largest value on the
/// grid are skipped: there the relative deviation only measures roundoff.
const AUDIT_FLOOR: f64 = 1e-12;

/// Compares every pair over its k grid. A numeric route that cannot reach
/// its target contributes its best estimate, so it shows up as a deviation
/// instead of aborting the audit.
pub fn spectrum_audit(pairs: &[AuditPair]) -> Result<AuditReport> {
    let entries = pairs
        .par_iter()
        .map(|pair| {
            let exact: Vec<f64> = pair.k_grid.iter().map(|&k| (pair.analytic)(k)).collect();
            let peak = exact.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mut worst = (0.0, f64::NAN);
            let mut points = 0;
            for (&k, &f) in pair.k_grid.iter().zip(&exact) {
                if !(f.abs() > AUDIT_FLOOR * peak) {
                    continue;
                }
                points += 1;
                let num = match (pair.numeric)(k, 0.1 * pair.tolerance * f.abs()) {
                    Ok(v) => v,
                    Err(e) => e.best_estimate().ok_or(e)?.value,
                };
                let dev = (num - f).abs() / f.abs();
                if !(dev <= worst.0) {
                    worst = (dev, k);
                }
            }
            Ok(AuditEntry {
                name: pair.name.clone(),
                max_rel_deviation: worst.0,
                worst_k: worst.1,
                points,
                tolerance: pair.tolerance,
                passed: points > 0 && worst.0 <= pair.tolerance,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let passed = entries.iter().all(|e| e.passed);
    Ok(AuditReport { entries, passed })
}

/// Geometric grid of `n` points on [lo, hi].
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf(i as f64 / (n - 1).max(1) as f64)).collect()
}

const AUDIT_MAX_SUBDIVISIONS: usize = 50_000;

/// The grid used for atomic spectra: 30 points per span, on [10⁻²/b, 10²/b]
/// and, when `nucleus` is given, on to 10/nucleus at the same density.
pub fn standard_k_grid(bohr_b: f64, nucleus: Option<f64>) -> Vec<f64> {
    let (lo, hi) = (1e-2 / bohr_b, 1e2 / bohr_b);
    let mut grid = log_grid(lo, hi, 30);
    if let Some(a) = nucleus {
        let top = 10.0 / a;
        if top > hi {
            let step = (hi / lo).ln() / 29.0;
            let extra = ((top / hi).ln() / step).ceil() as usize;
            grid.extend(log_grid(hi, top, extra + 1).into_iter().skip(1));
        }
    }
    grid
}

/// radial_fourier with the integral's absolute tolerance derived from the
/// wanted accuracy of the transform.
fn numeric_transform<F: Fn(f64) -> f64>(f: F, k: f64, abs: f64, breaks: &[f64], scale: f64) -> Result<f64> {
    let pref = (2.0 / PI).sqrt() / k;
    let spec = QuadSpec::default()
        .with_rel_tol(1e-11)
        .with_abs_tol((abs / pref).max(f64::MIN_POSITIVE))
        .with_breakpoints(breaks.to_vec())
        .with_tail_scale(scale)
        .with_max_subdivisions(AUDIT_MAX_SUBDIVISIONS);
    Ok(radial_fourier(f, k, &spec)?.value)
}

/// d/dk of the radial transform: √(2/π)∫ r[r·cos(kr)/k − sin(kr)/k²]f(r) dr.
fn numeric_transform_deriv<F: Fn(f64) -> f64>(f: F, k: f64, abs: f64, breaks: &[f64], scale: f64) -> Result<f64> {
    let pref = (2.0 / PI).sqrt();
    let spec = QuadSpec::default()
        .with_rel_tol(1e-11)
        .with_abs_tol((abs / pref).max(f64::MIN_POSITIVE))
        .with_breakpoints(breaks.to_vec())
        .with_tail_scale(scale)
        .with_oscillation(2.0 * PI / k)
        .with_max_subdivisions(AUDIT_MAX_SUBDIVISIONS);
    let res = integrate(
        |r| {
            if r == 0.0 {
                return 0.0;
            }
            // x·cos x − sin x, by its series where it cancels
            let x = k * r;
            let g = if x < 0.05 {
                let x2 = x * x;
                -x * x2 / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0)))
            } else {
                x * x.cos() - x.sin()
            };
            r * g / (k * k) * f(r)
        },
        0.0,
        f64::INFINITY,
        &spec,
    )?;
    Ok(pref * res.value)
}

/// The standard audit: every closed-form spectrum of the crate against a
/// numeric transform of its source, each on a grid spanning its structure.
pub fn standard_audit_pairs(c: &PhysConst) -> Result<Vec<AuditPair>> {
    let mut pairs = Vec::new();
    let h = HydrogenAtom::new(*c, true);
    let (a, b) = (c.proton_a, c.bohr_b);

    let pc = *c;
    pairs.push(AuditPair {
        name: "proton ball".into(),
        analytic: Box::new(move |k| FOURIER_NORM * ball_form(a * k)),
        numeric: Box::new(move |k, abs| numeric_transform(|r| proton_density(&pc, r), k, abs, &[a], a)),
        k_grid: standard_k_grid(b, Some(a)),
        tolerance: 1e-9,
    });

    let breaks = vec![a, b, 10.0 * b];
    let br = breaks.clone();
    pairs.push(AuditPair {
        name: "hydrogen charge".into(),
        analytic: Box::new(move |k| hydrogen_charge_spectrum(&h, k)),
        numeric: Box::new(move |k, abs| {
            // the parts cancel at small k, so each is transformed on its own
            let proton = numeric_transform(|r| h.proton_density(r), k, 0.5 * abs, &[a], a)?;
            let electron = numeric_transform(|r| h.electron_density(r).unwrap_or(f64::NAN), k, 0.5 * abs, &br, b)?;
            Ok(proton - electron)
        }),
        k_grid: standard_k_grid(b, Some(a)),
        tolerance: 1e-7,
    });

    let br = breaks.clone();
    pairs.push(AuditPair {
        name: "hydrogen current".into(),
        analytic: Box::new(move |k| hydrogen_chi_spectrum(&h, k)),
        numeric: Box::new(move |k, abs| {
            let proton = numeric_transform(|r| h.proton_current_prefactor(r), k, 0.5 * abs, &[a], a)?;
            let electron =
                numeric_transform(|r| h.electron_current_prefactor(r).unwrap_or(f64::NAN), k, 0.5 * abs, &br, b)?;
            Ok(proton - electron)
        }),
        k_grid: standard_k_grid(b, Some(a)),
        tolerance: 1e-7,
    });

    let br = breaks.clone();
    pairs.push(AuditPair {
        name: "hydrogen current derivative".into(),
        analytic: Box::new(move |k| hydrogen_chi_spectrum_deriv(&h, k)),
        numeric: Box::new(move |k, abs| {
            let proton = numeric_transform_deriv(|r| h.proton_current_prefactor(r), k, 0.5 * abs, &[a], a)?;
            let electron =
                numeric_transform_deriv(|r| h.electron_current_prefactor(r).unwrap_or(f64::NAN), k, 0.5 * abs, &br, b)?;
            Ok(proton - electron)
        }),
        k_grid: standard_k_grid(b, Some(a)),
        tolerance: 1e-7,
    });

    let xe = NobleGasAtom::element("Xe", *c)?;
    let z = xe.z as f64;
    for &shell in &xe.shells {
        let atom = xe.clone();
        let atom2 = xe.clone();
        // density ∝ r^{2n−2}e^{−βr}: breakpoints out to where it is negligible
        let beta = 2.0 * z / (shell.n as f64 * b);
        let br: Vec<f64> = [1.0, 3.0, 10.0, 30.0, 100.0].iter().map(|m| m * shell.n as f64 / beta).collect();
        pairs.push(AuditPair {
            name: format!("xenon {shell}"),
            analytic: Box::new(move |k| shell_spectrum(&atom, shell, k).unwrap_or(f64::NAN)),
            numeric: Box::new(move |k, abs| {
                numeric_transform(|r| atom2.shell_density(shell, r).unwrap_or(f64::NAN), k, abs, &br, 1.0 / beta)
            }),
            k_grid: standard_k_grid(b, None),
            tolerance: 1e-9,
        });
    }

    let (atom, atom2) = (xe.clone(), xe.clone());
    let an = xe.nuclear_radius();
    pairs.push(AuditPair {
        name: "xenon charge".into(),
        analytic: Box::new(move |k| atom_charge_spectrum(&atom, k)),
        numeric: Box::new(move |k, abs| {
            numeric_transform(
                |r| atom2.charge_density(r).unwrap_or(f64::NAN),
                k,
                abs,
                &[an, 0.02 * b, 0.1 * b, b, 5.0 * b],
                b / z,
            )
        }),
        k_grid: standard_k_grid(b, Some(an)),
        tolerance: 1e-6,
    });

    // thin shell of radius a: (2π)^{−3/2}·½∫₋₁¹cos(akc)dc
    let shell_a = 1.0;
    pairs.push(AuditPair {
        name: "sphere shell".into(),
        analytic: Box::new(move |k| {
            let pair = SpherePair { radius_a: shell_a, separation_d: PI / k, charge_over_e: 1.0 };
            // cosθ = 1 and d = π/k make the dipole factor 2 sin(π/2) = 2
            0.5 * crate::spectra::sphere_pair_form_factor(&pair, k, 1.0)
        }),
        numeric: Box::new(move |k, abs| {
            let spec = QuadSpec::default()
                .with_rel_tol(1e-12)
                .with_abs_tol((abs / FOURIER_NORM).max(f64::MIN_POSITIVE))
                .with_oscillation(2.0 * PI / (shell_a * k));
            let res = integrate(|cz| (shell_a * k * cz).cos(), -1.0, 1.0, &spec)?;
            Ok(FOURIER_NORM * 0.5 * res.value)
        }),
        k_grid: log_grid(1e-2, 1e2, 30),
        tolerance: 1e-9,
    });

    // ring current: (2π)^{−3/2}·I·a∫₀^{2π}cosφ·sin(ak cosφ)dφ/k
    let lp = CurrentLoop::new(1.0, 1.0)?;
    pairs.push(AuditPair {
        name: "loop current".into(),
        analytic: Box::new(move |k| loop_current_spectrum(&lp, k).unwrap_or(f64::NAN)),
        numeric: Box::new(move |k, abs| {
            let x = lp.radius_a * k;
            let pref = FOURIER_NORM * lp.current_a * lp.radius_a / k;
            let spec = QuadSpec::default()
                .with_rel_tol(1e-12)
                .with_abs_tol((abs / pref).max(f64::MIN_POSITIVE))
                .with_breakpoints(vec![0.5 * PI, PI, 1.5 * PI])
                .with_oscillation(2.0 * PI / x.max(1.0));
            let res = integrate(|phi| phi.cos() * (x * phi.cos()).sin(), 0.0, 2.0 * PI, &spec)?;
            Ok(pref * res.value)
        }),
        k_grid: log_grid(1e-2, 1e2, 30),
        tolerance: 1e-9,
    });

    Ok(pairs)
}
