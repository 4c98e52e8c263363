//! 𝒩_Z functionals and the field-energy functional.
//!
//! For radial spectra the angular integrals are done once and for all:
//! 𝒩_Z[𝒟] = 8π²α∫dk/k ρ̃² and, for an axial current {−y,x,0}·χ(r),
//! 𝒩_Z[ℋ] = (16π²α/3)∫dk/k (dχ̃/dk)². Hydrogen integrals run in κ = bk, so
//! the proton enters through s = a/b and d = μ/a only.

use std::f64::consts::{LN_2, PI};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadResult, QuadSpec};
use crate::sources::{CurrentLoop, HydrogenAtom, NobleGasAtom, SpherePair};
use crate::specfun::bessel_j1;
use crate::spectra::{
    atom_charge_spectrum, atomic_breakpoints, ball_form, electron_charge_form, electron_current_form_deriv,
    loop_form_deriv, FOURIER_NORM,
};

/// Result of one 𝒩_Z (or field-energy) evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NzBreakdown {
    pub electric: f64,
    pub magnetic: f64,
    pub total: f64,
    /// Field energy in units of mₑc², when computed.
    pub energy_mc2: Option<f64>,
    /// Sum of the absolute error estimates of the integrals involved.
    pub quad_error: f64,
    /// Qualifiers such as "geometrically overlapping".
    pub flags: Vec<String>,
}

impl NzBreakdown {
    pub fn new(electric: f64, magnetic: f64, quad_error: f64) -> Self {
        NzBreakdown { electric, magnetic, total: electric + magnetic, energy_mc2: None, quad_error, flags: Vec::new() }
    }

    pub fn electric_only(res: QuadResult) -> Self {
        Self::new(res.value, 0.0, res.abs_error)
    }

    pub fn magnetic_only(res: QuadResult) -> Self {
        Self::new(0.0, res.value, res.abs_error)
    }

    pub fn with_flag(mut self, flag: impl Into<String>) -> Self {
        self.flags.push(flag.into());
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereMethod {
    Closed,
    Quadrature,
    Asymptotic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopMethod {
    Closed,
    Quadrature,
}

/// Which sources feed the field-energy spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyPart {
    Total,
    ProtonOnly,
    ElectronOnly,
}

impl FromStr for SphereMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(SphereMethod::Closed),
            "quad" | "quadrature" => Ok(SphereMethod::Quadrature),
            "asym" | "asymptotic" => Ok(SphereMethod::Asymptotic),
            _ => Err(Error::Config(format!("unknown sphere method '{s}'"))),
        }
    }
}

impl FromStr for LoopMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(LoopMethod::Closed),
            "quad" | "quadrature" => Ok(LoopMethod::Quadrature),
            _ => Err(Error::Config(format!("unknown loop method '{s}'"))),
        }
    }
}

impl FromStr for EnergyPart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total" => Ok(EnergyPart::Total),
            "proton_only" | "proton" => Ok(EnergyPart::ProtonOnly),
            "electron_only" | "electron" => Ok(EnergyPart::ElectronOnly),
            _ => Err(Error::Config(format!("unknown energy part '{s}'"))),
        }
    }
}

/// Default settings for the smooth classical integrals.
pub fn classical_spec() -> QuadSpec {
    QuadSpec::default().with_rel_tol(1e-9).with_abs_tol(f64::MIN_POSITIVE)
}

/// Default settings for the oscillatory atomic integrals.
pub fn atomic_spec() -> QuadSpec {
    QuadSpec::default().with_rel_tol(1e-7).with_abs_tol(f64::MIN_POSITIVE)
}

fn scale_result(res: Result<QuadResult>, factor: f64) -> Result<QuadResult> {
    res.map(|r| r.scale(factor)).map_err(|e| match e {
        Error::NonConvergence(r) => Error::NonConvergence(r.scale(factor)),
        other => other,
    })
}

/// `spec` with extra breakpoints merged in and the oscillation hint set.
fn with_hints(spec: &QuadSpec, breaks: Vec<f64>, wavelength: Option<f64>) -> QuadSpec {
    let mut pts = spec.breakpoints.clone();
    pts.extend(breaks);
    let mut out = spec.clone().with_breakpoints(pts);
    if out.oscillation_wavelength.is_none() {
        out.oscillation_wavelength = wavelength;
    }
    out
}

// ---------------------------------------------------------------- spheres

/// Cutoff in x = ak beyond which the sphere and loop integrals use their
/// asymptotic tails.
const CLASSICAL_CUTOFF: f64 = 4000.0;

/// sin(y)/y
fn sinc(y: f64) -> f64 {
    if y.abs() < 1e-4 {
        1.0 - y * y / 6.0
    } else {
        y.sin() / y
    }
}

/// 1 − sin(y)/y without cancellation at small y.
fn one_minus_sinc(y: f64) -> f64 {
    if y.abs() < 1e-2 {
        let y2 = y * y;
        y2 / 6.0 - y2 * y2 / 120.0 + y2 * y2 * y2 / 5040.0
    } else {
        1.0 - y.sin() / y
    }
}

/// The closed-form bracket B(b), with 𝒩_Z = α(Q/e)²B/(12πb).
fn sphere_bracket(b: f64) -> f64 {
    let c = 2.0 * b * (4.0 + 12.0 * LN_2);
    if b > 2.0 {
        // (b±2)³ln(b±2) = (b±2)³[ln b + ln(1 ± 2/b)]; the ln b terms sum to 24b·ln b
        24.0 * b * b.ln() + (b + 2.0).powi(3) * (2.0 / b).ln_1p() + (b - 2.0).powi(3) * (-2.0 / b).ln_1p() - c
    } else {
        let minus = if b == 2.0 { 0.0 } else { (b - 2.0).powi(3) * (b - 2.0).abs().ln() };
        let cube_log = if b == 0.0 { 0.0 } else { 2.0 * b.powi(3) * b.ln() };
        (b + 2.0).powi(3) * (b + 2.0).ln() + minus - c - cube_log
    }
}

/// 𝒩_Z of two opposite charges ±Q on thin spherical shells of radius a
/// whose centres are d apart. It depends on b = d/a and Q only.
pub fn nz_sphere_pair(pair: &SpherePair, method: SphereMethod, spec: &QuadSpec) -> Result<NzBreakdown> {
    let alpha = crate::sources::PhysConst::default().alpha;
    nz_sphere_pair_with_alpha(pair, method, alpha, spec)
}

/// As [`nz_sphere_pair`] with an explicit fine-structure constant.
pub fn nz_sphere_pair_with_alpha(
    pair: &SpherePair,
    method: SphereMethod,
    alpha: f64,
    spec: &QuadSpec,
) -> Result<NzBreakdown> {
    let b = pair.b_ratio();
    let q2 = pair.charge_over_e * pair.charge_over_e;
    let mut out = if b == 0.0 || q2 == 0.0 {
        NzBreakdown::new(0.0, 0.0, 0.0)
    } else {
        match method {
            SphereMethod::Closed => NzBreakdown::new(alpha * q2 * sphere_bracket(b) / (12.0 * PI * b), 0.0, 0.0),
            SphereMethod::Asymptotic => NzBreakdown::new(2.0 * alpha * q2 * b.ln() / PI, 0.0, 0.0),
            SphereMethod::Quadrature => {
                let res = sphere_pair_integral(b, spec)?;
                NzBreakdown::electric_only(res.scale(2.0 * alpha * q2 / PI))
            }
        }
    };
    if pair.overlapping() {
        out = out.with_flag("geometrically overlapping");
    }
    Ok(out)
}

/// ∫₀^∞ dx/x sinc²(x)·(1 − sinc(bx)), x = ak.
///
/// This is the k-space integral after the azimuthal integral (2π) and the
/// polar one, ∫₋₁¹sin²(bxc/2)dc = 1 − sinc(bx). The part beyond
/// x = [`CLASSICAL_CUTOFF`] is added from its asymptotic expansion and the
/// neglected cross term |∫sin²x·sin(bx)/(bx⁴)| ≤ 1/(3bX³) goes into the error.
pub fn sphere_pair_integral(b: f64, spec: &QuadSpec) -> Result<QuadResult> {
    if !(b > 0.0) || !b.is_finite() {
        return Err(Error::domain("sphere_pair_integral", format!("b = {b} must be > 0")));
    }
    let x_max = CLASSICAL_CUTOFF;
    let wavelength = if b > 2.0 { 2.0 * PI / b } else { PI };
    let spec = with_hints(spec, vec![1.0 / b, 1.0, 10.0], Some(wavelength));
    let s = sinc_squared_tail(x_max);
    let g = |x: f64| {
        let sx = sinc(x);
        sx * sx * one_minus_sinc(b * x) / x
    };
    let body = integrate(|x| if x == 0.0 { 0.0 } else { g(x) }, 0.0, x_max, &spec)?;
    let tail = QuadResult {
        value: s,
        abs_error: 1.0 / (3.0 * b * x_max.powi(3)) + x_max.powi(-5),
        evaluations: 0,
        subdivisions: 0,
    };
    Ok(body.combine(tail))
}

/// ∫_X^∞ sin²x/x³ dx to O(X⁻⁵).
fn sinc_squared_tail(x: f64) -> f64 {
    let (s2, c2) = (2.0 * x).sin_cos();
    1.0 / (4.0 * x * x) + s2 / (4.0 * x.powi(3)) - 3.0 * c2 / (8.0 * x.powi(4))
}

// ---------------------------------------------------------------- loop

/// 𝒩_Z of a thin circular current loop, 2πα(aI/ec)².
pub fn nz_loop(lp: &CurrentLoop, method: LoopMethod, spec: &QuadSpec) -> Result<NzBreakdown> {
    let c = crate::sources::PhysConst::default();
    nz_loop_with_constants(lp, method, &c, spec)
}

/// As [`nz_loop`] with explicit constants.
pub fn nz_loop_with_constants(
    lp: &CurrentLoop,
    method: LoopMethod,
    c: &crate::sources::PhysConst,
    spec: &QuadSpec,
) -> Result<NzBreakdown> {
    let m = lp.scaled_current(c);
    let strength = c.alpha * m * m;
    if strength == 0.0 {
        return Ok(NzBreakdown::new(0.0, 0.0, 0.0));
    }
    match method {
        LoopMethod::Closed => Ok(NzBreakdown::new(0.0, 2.0 * PI * strength, 0.0)),
        LoopMethod::Quadrature => {
            let res = loop_integral(spec)?;
            Ok(NzBreakdown::magnetic_only(res.scale(strength)))
        }
    }
}

/// ∫dφ∫dk⊥∫dk_z k⊥J₁²(ak⊥)/(k⊥²+k_z²)^{3/2} for a = 1.
///
/// With k_z = k⊥u the k_z integral becomes U/k⊥², U = ∫du(1+u²)^{−3/2},
/// integrated numerically; the k⊥ integral ∫J₁²(x)/x dx runs numerically to
/// x = [`CLASSICAL_CUTOFF`] and adds the tail 1/(πX) − cos(2X)/(2πX²).
pub fn loop_integral(spec: &QuadSpec) -> Result<QuadResult> {
    let u_spec = spec.clone().with_tail_scale(1.0);
    let half = integrate(|u| (1.0 + u * u).powf(-1.5), 0.0, f64::INFINITY, &u_spec)?;
    let u_factor = half.scale(2.0);

    let x_max = CLASSICAL_CUTOFF;
    let x_spec = with_hints(spec, vec![1.0, 10.0], Some(PI));
    let failure = std::cell::RefCell::new(None);
    let body = integrate(
        |x| {
            if x == 0.0 {
                return 0.0;
            }
            match bessel_j1(x) {
                Ok(j) => j * j / x,
                Err(e) => {
                    failure.borrow_mut().get_or_insert(e);
                    f64::NAN
                }
            }
        },
        0.0,
        x_max,
        &x_spec,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    let body = body?;
    let tail = QuadResult {
        value: 1.0 / (PI * x_max) - (2.0 * x_max).cos() / (2.0 * PI * x_max * x_max),
        abs_error: x_max.powi(-3),
        evaluations: 0,
        subdivisions: 0,
    };
    let radial = body.combine(tail);
    // relative errors add for the product, and the azimuthal factor is 2π
    let value = 2.0 * PI * u_factor.value * radial.value;
    let rel = u_factor.abs_error / u_factor.value + radial.abs_error / radial.value;
    Ok(QuadResult {
        value,
        abs_error: value * rel,
        evaluations: u_factor.evaluations + radial.evaluations,
        subdivisions: u_factor.subdivisions + radial.subdivisions,
    })
}

// ---------------------------------------------------------------- radial spectra

/// 8π²α∫₀^∞ dk/k ρ̃(k)²: 𝒩_Z of the longitudinal field of a spherical
/// charge with spectrum ρ̃. The variable may be any multiple of k.
pub fn nz_radial_electric<F>(rho: F, alpha: f64, spec: &QuadSpec) -> Result<NzBreakdown>
where
    F: Fn(f64) -> f64,
{
    let res = integrate(
        |k| {
            if k == 0.0 {
                return 0.0;
            }
            let r = rho(k);
            r * r / k
        },
        0.0,
        f64::INFINITY,
        spec,
    );
    scale_result(res, 8.0 * PI * PI * alpha).map(NzBreakdown::electric_only)
}

/// (16π²α/3)∫₀^∞ dk/k (dχ̃/dk)²: 𝒩_Z of the field of the axial current
/// {−y,x,0}·χ(r). The variable may be any multiple of k.
pub fn nz_radial_magnetic<F>(dchi: F, alpha: f64, spec: &QuadSpec) -> Result<NzBreakdown>
where
    F: Fn(f64) -> f64,
{
    let res = integrate(
        |k| {
            if k == 0.0 {
                return 0.0;
            }
            let d = dchi(k);
            d * d / k
        },
        0.0,
        f64::INFINITY,
        spec,
    );
    scale_result(res, 16.0 * PI * PI * alpha / 3.0).map(NzBreakdown::magnetic_only)
}

fn hydrogen_spec(atom: &HydrogenAtom, spec: &QuadSpec) -> QuadSpec {
    let s = atom.constants.s_ratio();
    with_hints(spec, atomic_breakpoints(s), Some(2.0 * PI / s))
}

/// [ball(sκ) − E(κ)]²/κ, the hydrogen electric integrand without α/π.
pub fn hydrogen_electric_integrand(atom: &HydrogenAtom, kappa: f64) -> f64 {
    let s = atom.constants.s_ratio();
    let r = ball_form(s * kappa) - electron_charge_form(kappa, atom.gamma());
    r * r / kappa
}

/// [12d·Q′(sκ) − 2αF′(κ)]²/κ, the hydrogen magnetic integrand without 2α/3π.
pub fn hydrogen_magnetic_integrand(atom: &HydrogenAtom, kappa: f64) -> f64 {
    let r = magnetic_shape(atom, kappa, true, true);
    r * r / kappa
}

fn magnetic_shape(atom: &HydrogenAtom, kappa: f64, proton: bool, electron: bool) -> f64 {
    let c = &atom.constants;
    let mut v = 0.0;
    if proton {
        v += 12.0 * c.d_ratio() * loop_form_deriv(c.s_ratio() * kappa);
    }
    if electron {
        v -= 2.0 * c.alpha * electron_current_form_deriv(kappa, atom.gamma());
    }
    v
}

/// (α/π)∫₀^∞ dκ/κ [ball(sκ) − E(κ)]², the electric 𝒩_Z of hydrogen.
pub fn nz_hydrogen_electric(atom: &HydrogenAtom, spec: &QuadSpec) -> Result<NzBreakdown> {
    let c = &atom.constants;
    let (s, g) = (c.s_ratio(), atom.gamma());
    nz_radial_electric(
        |kappa| FOURIER_NORM * (ball_form(s * kappa) - electron_charge_form(kappa, g)),
        c.alpha,
        &hydrogen_spec(atom, spec),
    )
}

/// (2α/3π)∫₀^∞ dκ/κ [12d·Q′(sκ) − 2αF′(κ)]², the magnetic 𝒩_Z of hydrogen.
pub fn nz_hydrogen_magnetic(atom: &HydrogenAtom, spec: &QuadSpec) -> Result<NzBreakdown> {
    nz_radial_magnetic(
        |kappa| FOURIER_NORM * magnetic_shape(atom, kappa, true, true),
        atom.constants.alpha,
        &hydrogen_spec(atom, spec),
    )
}

/// The magnetic 𝒩_Z of hydrogen through [`nz_generic`]: the spectrum
/// |ℋ̃|² = sin²θ(dχ̃/dk)²/k² integrated over k and θ numerically.
pub fn nz_hydrogen_magnetic_generic(atom: &HydrogenAtom, spec: &QuadSpec) -> Result<NzBreakdown> {
    let c = &atom.constants;
    let b = c.bohr_b;
    let s = c.s_ratio();
    let breaks: Vec<f64> = atomic_breakpoints(s).into_iter().map(|p| p / b).collect();
    let k_spec = with_hints(spec, breaks, Some(2.0 * PI / c.proton_a));
    nz_generic(
        |_, _| 0.0,
        |k, cos_t| {
            let d = FOURIER_NORM * magnetic_shape(atom, b * k, true, true);
            crate::spectra::h_spectrum_sq(d, k, cos_t)
        },
        f64::INFINITY,
        c.alpha,
        &k_spec,
    )
}

fn atom_spec(atom: &NobleGasAtom, spec: &QuadSpec) -> QuadSpec {
    let z = atom.z as f64;
    let s = atom.nuclear_radius() / atom.constants.bohr_b;
    let mut breaks = vec![1e-3];
    for shell in &atom.shells {
        let scale = 2.0 * z / shell.n as f64;
        breaks.extend([0.1 * scale, scale, 10.0 * scale]);
    }
    breaks.extend([0.25 / s, 1.0 / s, 4.0 / s]);
    with_hints(spec, breaks, Some(2.0 * PI / s))
}

/// 8π²α∫dk/k ρ̃² for a many-electron atom: the nucleus as a uniform ball of
/// radius a(A) minus the hydrogenic shells.
pub fn nz_atom_electric(atom: &NobleGasAtom, spec: &QuadSpec) -> Result<NzBreakdown> {
    let b = atom.constants.bohr_b;
    nz_radial_electric(|kappa| atom_charge_spectrum(atom, kappa / b), atom.constants.alpha, &atom_spec(atom, spec))
}

// ---------------------------------------------------------------- energy

/// Field energy of hydrogen in units of mₑc².
///
/// E = (e²/2ε₀)∫d³k(|𝒟̃|²+|ℋ̃|²) with e²/ε₀ = 4παℏc and mₑc² = ℏc/λ̄. In
/// κ = bk the electric part is (αλ̄/πb)∫dκ R² and the magnetic part
/// (2αλ̄/3πb)∫dκ M², R and M the bracketed shapes of the 𝒩_Z integrands.
/// `electric`/`magnetic` carry the two parts and `energy_mc2` their sum.
pub fn field_energy(atom: &HydrogenAtom, part: EnergyPart, spec: &QuadSpec) -> Result<NzBreakdown> {
    let c = &atom.constants;
    let (s, g) = (c.s_ratio(), atom.gamma());
    let (proton, electron) = match part {
        EnergyPart::Total => (true, true),
        EnergyPart::ProtonOnly => (true, false),
        EnergyPart::ElectronOnly => (false, true),
    };
    let k_spec = hydrogen_spec(atom, spec);
    let pref = c.alpha * c.lambda_bar / (PI * c.bohr_b);
    let electric = integrate(
        |kappa| {
            let mut r = 0.0;
            if proton {
                r += ball_form(s * kappa);
            }
            if electron {
                r -= electron_charge_form(kappa, g);
            }
            r * r
        },
        0.0,
        f64::INFINITY,
        &k_spec,
    );
    let electric = scale_result(electric, pref)?;
    let magnetic = integrate(
        |kappa| {
            let m = magnetic_shape(atom, kappa, proton, electron);
            m * m
        },
        0.0,
        f64::INFINITY,
        &k_spec,
    );
    let magnetic = scale_result(magnetic, 2.0 * pref / 3.0)?;
    let mut out = NzBreakdown::new(electric.value, magnetic.value, electric.abs_error + magnetic.abs_error);
    out.energy_mc2 = Some(out.total);
    Ok(out)
}

/// Uniform-ball self-energy (3/5)αλ̄/a in units of mₑc².
pub fn proton_ball_energy(c: &crate::sources::PhysConst) -> f64 {
    0.6 * c.alpha * c.lambda_bar / c.proton_a
}

// ---------------------------------------------------------------- generic

/// 2πα∫d³k/k (|𝒟̃|² + |ℋ̃|²) for spectra symmetric about the z axis.
///
/// `d_sq` and `h_sq` take (k, cosθ). The k integral runs to `k_max`
/// (possibly infinite) with the breakpoints and hints of `spec`; the polar
/// integral is nested inside it. Both integrands are nonnegative, so only
/// the relative tolerance matters.
pub fn nz_generic<D, H>(d_sq: D, h_sq: H, k_max: f64, alpha: f64, spec: &QuadSpec) -> Result<NzBreakdown>
where
    D: Fn(f64, f64) -> f64,
    H: Fn(f64, f64) -> f64,
{
    let electric = axial_integral(&d_sq, k_max, spec)?;
    let magnetic = axial_integral(&h_sq, k_max, spec)?;
    let pref = 4.0 * PI * PI * alpha;
    Ok(NzBreakdown::new(pref * electric.value, pref * magnetic.value, pref * (electric.abs_error + magnetic.abs_error)))
}

/// ∫₀^K k dk ∫₋₁¹ dc S(k, c).
fn axial_integral<S>(s: &S, k_max: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    S: Fn(f64, f64) -> f64,
{
    let inner_spec = QuadSpec {
        breakpoints: vec![0.0],
        oscillation_wavelength: None,
        tail_scale: None,
        rel_tol: spec.rel_tol * 1e-2,
        abs_tol: f64::MIN_POSITIVE,
        ..spec.clone()
    };
    let failure = std::cell::RefCell::new(None);
    let inner_err = std::cell::Cell::new(0.0f64);
    let outer = integrate(
        |k| {
            if k == 0.0 {
                return 0.0;
            }
            match integrate(|c| s(k, c), -1.0, 1.0, &inner_spec) {
                Ok(r) => {
                    inner_err.set(inner_err.get() + r.abs_error);
                    k * r.value
                }
                Err(e) => {
                    let best = e.best_estimate().map_or(f64::NAN, |r| r.value);
                    failure.borrow_mut().get_or_insert(e);
                    k * best
                }
            }
        },
        0.0,
        k_max,
        spec,
    );
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    outer
}
