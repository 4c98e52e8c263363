//! Fourier-space form factors.
//!
//! Transforms use the symmetric convention f̃(𝐤) = (2π)^{−3/2}∫d³r e^{−i𝐤·𝐫}f(𝐫).
//! For a radial function this is
//! f̃(k) = √(2/π)∫₀^∞ r·sin(kr)/k·f(r) dr.
//!
//! The hydrogen spectra are built from dimensionless shape functions of
//! x = ak (proton) and κ = bk (electron), exported for reuse by the 𝒩_Z
//! integrands.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadResult, QuadSpec};
use crate::sources::{shell_norm, CurrentLoop, HydrogenAtom, NobleGasAtom, PhysConst, Shell, SpherePair};
use crate::specfun::{bessel_j1, laguerre_coefficients};

/// (2π)^{−3/2}
pub const FOURIER_NORM: f64 = 0.063_493_635_934_240_97;

/// A scalar spectrum f̃(k) with its k → 0 limit and characteristic scales.
#[derive(Clone)]
pub struct RadialSpectrum {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    /// Characteristic wavenumbers (1/m) where the spectrum changes shape.
    pub scale_hints: Vec<f64>,
    /// Value at k = 0, taken analytically.
    pub k0_limit: f64,
}

impl std::fmt::Debug for RadialSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialSpectrum")
            .field("scale_hints", &self.scale_hints)
            .field("k0_limit", &self.k0_limit)
            .finish_non_exhaustive()
    }
}

impl RadialSpectrum {
    pub fn new(eval: impl Fn(f64) -> f64 + Send + Sync + 'static, scale_hints: Vec<f64>, k0_limit: f64) -> Self {
        RadialSpectrum { eval: Arc::new(eval), scale_hints, k0_limit }
    }

    pub fn eval(&self, k: f64) -> f64 {
        if k == 0.0 {
            self.k0_limit
        } else {
            (self.eval)(k)
        }
    }
}

/// Below this argument the shape functions switch to their Taylor series.
const SERIES_MAX: f64 = 0.05;

/// 3(sin x − x cos x)/x³: the form factor of a uniform unit ball at x = ak.
pub fn ball_form(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_MAX {
        // 3Σ(−1)ⁿ(2n+2)x²ⁿ/(2n+3)!
        let x2 = x * x;
        1.0 - x2 / 10.0 + x2 * x2 / 280.0 - x2 * x2 * x2 / 15_120.0 + x2.powi(4) / 1_330_560.0
    } else {
        3.0 * (x.sin() - x * x.cos()) / (x * x * x)
    }
}

/// (1 − cos x)/x²
pub fn loop_form(x: f64) -> f64 {
    let x = x.abs();
    if x < SERIES_MAX {
        let x2 = x * x;
        0.5 - x2 / 24.0 + x2 * x2 / 720.0 - x2 * x2 * x2 / 40_320.0
    } else {
        // 1 − cos x = 2 sin²(x/2) avoids cancellation
        let h = (0.5 * x).sin();
        2.0 * h * h / (x * x)
    }
}

/// d/dx of [`loop_form`]: (x sin x − 2(1 − cos x))/x³.
pub fn loop_form_deriv(x: f64) -> f64 {
    if x.abs() < SERIES_MAX {
        let x2 = x * x;
        x * (-1.0 / 12.0 + x2 / 180.0 - x2 * x2 / 6_720.0 + x2 * x2 * x2 / 453_600.0)
    } else {
        let h = (0.5 * x).sin();
        (x * x.sin() - 4.0 * h * h) / (x * x * x)
    }
}

/// Electron charge shape sin(2γA)/(γκ(1+κ²/4)^γ), A = arctan(κ/2); 1 at κ = 0.
pub fn electron_charge_form(kappa: f64, gamma: f64) -> f64 {
    if kappa == 0.0 {
        return 1.0;
    }
    let a = (0.5 * kappa).atan();
    (2.0 * gamma * a).sin() / (gamma * kappa * (1.0 + 0.25 * kappa * kappa).powf(gamma))
}

/// Taylor coefficients of [`electron_current_form`] in κ², from κ⁰ to κ⁸.
fn electron_current_series(gamma: f64) -> [f64; 5] {
    let g = gamma;
    [
        1.0 / (2.0 * g),
        -(2.0 * g + 1.0) / 24.0,
        (g + 1.0) * (2.0 * g + 1.0) * (2.0 * g + 3.0) / 960.0,
        -(g + 1.0) * (g + 2.0) * (2.0 * g + 1.0) * (2.0 * g + 3.0) * (2.0 * g + 5.0) / 80_640.0,
        (g + 1.0) * (g + 2.0) * (g + 3.0) * (2.0 * g + 1.0) * (2.0 * g + 3.0) * (2.0 * g + 5.0) * (2.0 * g + 7.0)
            / 11_612_160.0,
    ]
}

const ELECTRON_SERIES_MAX: f64 = 1e-2;

/// Shape of the transform of ρ_e/r:
/// F(κ) = sin((2γ−1)A)/(γ(2γ−1)κ(1+κ²/4)^{γ−1/2}); F(0) = 1/(2γ).
pub fn electron_current_form(kappa: f64, gamma: f64) -> f64 {
    let kappa = kappa.abs();
    if kappa < ELECTRON_SERIES_MAX {
        let c = electron_current_series(gamma);
        let k2 = kappa * kappa;
        return c[0] + k2 * (c[1] + k2 * (c[2] + k2 * (c[3] + k2 * c[4])));
    }
    let p = 2.0 * gamma - 1.0;
    let a = (0.5 * kappa).atan();
    (p * a).sin() / (gamma * p * kappa * (1.0 + 0.25 * kappa * kappa).powf(gamma - 0.5))
}

/// dF/dκ of [`electron_current_form`].
pub fn electron_current_form_deriv(kappa: f64, gamma: f64) -> f64 {
    if kappa.abs() < ELECTRON_SERIES_MAX {
        let c = electron_current_series(gamma);
        let k2 = kappa * kappa;
        return kappa * (2.0 * c[1] + k2 * (4.0 * c[2] + k2 * (6.0 * c[3] + k2 * 8.0 * c[4])));
    }
    let p = 2.0 * gamma - 1.0;
    let a = (0.5 * kappa).atan();
    let (s, c) = (p * a).sin_cos();
    let num = p * kappa * c - (2.0 + gamma * kappa * kappa) * s;
    num / (2.0 * gamma * p * kappa * kappa * (1.0 + 0.25 * kappa * kappa).powf(gamma + 0.5))
}

/// √(2/π)∫₀^∞ r·sin(kr)/k·f(r) dr.
///
/// The oscillation wavelength 2π/k is supplied to the quadrature unless
/// `spec` already sets one; breakpoints and the tail scale come from `spec`.
pub fn radial_fourier<F>(f: F, k: f64, spec: &QuadSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::domain("radial_fourier", format!("k = {k} must be > 0")));
    }
    let mut spec = spec.clone();
    if spec.oscillation_wavelength.is_none() {
        spec.oscillation_wavelength = Some(2.0 * PI / k);
    }
    let pref = (2.0 / PI).sqrt() / k;
    // sin(kr) for r ≪ 1/k keeps full relative precision, no small-k care needed
    integrate(|r| if r == 0.0 { 0.0 } else { r * (k * r).sin() * f(r) }, 0.0, f64::INFINITY, &spec)
        .map(|res| res.scale(pref))
        .map_err(|e| match e {
            Error::NonConvergence(res) => Error::NonConvergence(res.scale(pref)),
            other => other,
        })
}

/// ρ̃(k) of the net hydrogen charge: (2π)^{−3/2}[ball(ak) − E(bk)].
pub fn hydrogen_charge_spectrum(atom: &HydrogenAtom, k: f64) -> f64 {
    let c = &atom.constants;
    FOURIER_NORM * (ball_form(c.proton_a * k) - electron_charge_form(c.bohr_b * k, atom.gamma()))
}

/// χ̃(k) of the net current prefactor χ = χ_p − αρ_e/r:
/// (2π)^{−3/2}[12μ·Q(ak)/a² − 2α·F(bk)/b], Q(x) = (1−cos x)/x².
pub fn hydrogen_chi_spectrum(atom: &HydrogenAtom, k: f64) -> f64 {
    let c = &atom.constants;
    let proton = 12.0 * c.mu_geom * loop_form(c.proton_a * k) / (c.proton_a * c.proton_a);
    let electron = 2.0 * c.alpha * electron_current_form(c.bohr_b * k, atom.gamma()) / c.bohr_b;
    FOURIER_NORM * (proton - electron)
}

/// dχ̃/dk: (2π)^{−3/2}[12d·Q′(ak) − 2α·F′(bk)], d = μ/a.
pub fn hydrogen_chi_spectrum_deriv(atom: &HydrogenAtom, k: f64) -> f64 {
    let c = &atom.constants;
    let proton = 12.0 * c.d_ratio() * loop_form_deriv(c.proton_a * k);
    let electron = 2.0 * c.alpha * electron_current_form_deriv(c.bohr_b * k, atom.gamma());
    FOURIER_NORM * (proton - electron)
}

/// Breakpoints in κ = bk for integrals over hydrogen-like spectra with
/// nucleus-to-atom ratio s.
pub fn atomic_breakpoints(s: f64) -> Vec<f64> {
    let mut pts = vec![1e-3, 1.0, 10.0, 0.25 / s, 1.0 / s, 4.0 / s];
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

impl HydrogenAtom {
    pub fn charge_spectrum(&self) -> RadialSpectrum {
        let atom = *self;
        let c = &self.constants;
        RadialSpectrum::new(move |k| hydrogen_charge_spectrum(&atom, k), vec![1.0 / c.bohr_b, 1.0 / c.proton_a], 0.0)
    }

    pub fn chi_spectrum(&self) -> RadialSpectrum {
        let atom = *self;
        let c = &self.constants;
        let k0 = FOURIER_NORM * (6.0 * c.mu_geom / (c.proton_a * c.proton_a) - c.alpha / (self.gamma() * c.bohr_b));
        RadialSpectrum::new(move |k| hydrogen_chi_spectrum(&atom, k), vec![1.0 / c.bohr_b, 1.0 / c.proton_a], k0)
    }

    pub fn chi_spectrum_deriv(&self) -> RadialSpectrum {
        let atom = *self;
        let c = &self.constants;
        RadialSpectrum::new(move |k| hydrogen_chi_spectrum_deriv(&atom, k), vec![1.0 / c.bohr_b, 1.0 / c.proton_a], 0.0)
    }
}

/// Charge form factor of a sphere pair with Q factored out:
/// 2(2π)^{−3/2} sin(dk cosθ/2)·sin(ak)/(ak).
///
/// The full transform is i(Q/e) times this value.
pub fn sphere_pair_form_factor(pair: &SpherePair, k: f64, cos_theta: f64) -> f64 {
    let ak = pair.radius_a * k;
    let shell = if ak.abs() < 1e-4 { 1.0 - ak * ak / 6.0 } else { ak.sin() / ak };
    2.0 * FOURIER_NORM * (0.5 * pair.separation_d * k * cos_theta).sin() * shell
}

/// m(k⊥) = aI·J₁(ak⊥)/(√(2π)k⊥), so that 𝐣̃ = i·m·{k_y, −k_x, 0}.
pub fn loop_current_spectrum(lp: &CurrentLoop, k_perp: f64) -> Result<f64> {
    let a = lp.radius_a;
    let k_perp = k_perp.abs();
    let ratio = if a * k_perp < 1e-8 { 0.5 * a } else { bessel_j1(a * k_perp)? / k_perp };
    Ok(a * lp.current_a * ratio / (2.0 * PI).sqrt())
}

/// |ℋ̃(𝐤)|² of the loop in geometric units: (aI/ec)²J₁²(ak⊥)/(2πk²).
pub fn loop_h_spectrum_sq(lp: &CurrentLoop, c: &PhysConst, k_perp: f64, k_z: f64) -> Result<f64> {
    let m = loop_current_spectrum(lp, k_perp)? / (c.elementary_charge * c.speed_of_light);
    let k2 = k_perp * k_perp + k_z * k_z;
    Ok(m * m * k_perp * k_perp / k2)
}

/// |𝒟̃|² = ρ̃²/k² for a longitudinal field with charge spectrum ρ̃.
pub fn d_spectrum_sq(rho: f64, k: f64) -> f64 {
    rho * rho / (k * k)
}

/// |ℋ̃|² = sin²θ·(dχ̃/dk)²/k² for the axial current `{−y,x,0}·χ(r)`,
/// θ the angle between 𝐤 and z.
pub fn h_spectrum_sq(dchi_dk: f64, k: f64, cos_theta: f64) -> f64 {
    (1.0 - cos_theta * cos_theta) * dchi_dk * dchi_dk / (k * k)
}

/// Transform of one hydrogenic subshell density, in closed form.
///
/// With ϱ = βr, β = 2Z/(nb) and ϱ^{2l}[L_{n−l−1}^{2l+1}(ϱ)]² = Σⱼcⱼϱʲ, each
/// power integrates to (j+1)!·Im[(1+it)^{j+2}]/(1+t²)^{j+2}, t = k/β.
pub fn shell_spectrum(atom: &NobleGasAtom, shell: Shell, k: f64) -> Result<f64> {
    if !atom.shells.contains(&shell) {
        return Err(Error::UnsupportedShell { n: shell.n, l: shell.l, reason: "shell is not part of this atom" });
    }
    Ok(shell_transform(atom.z, &atom.constants, shell, k))
}

pub(crate) fn shell_polynomial(n: u32, l: u32) -> Vec<f64> {
    let lag = laguerre_coefficients(n - l - 1, 2 * l + 1);
    let mut poly = vec![0.0; 2 * l as usize + 2 * lag.len() - 1];
    for (i, a) in lag.iter().enumerate() {
        for (j, b) in lag.iter().enumerate() {
            poly[2 * l as usize + i + j] += a * b;
        }
    }
    poly
}

fn shell_transform(z: u32, c: &PhysConst, shell: Shell, k: f64) -> f64 {
    let Shell { n, l, occupancy } = shell;
    let beta = 2.0 * z as f64 / (n as f64 * c.bohr_b);
    let norm = shell_norm(n, l) * occupancy as f64 / (4.0 * PI);
    let poly = shell_polynomial(n, l);
    let t = k / beta;
    // Im[(1+it)^m]/(1+t²)^m = sin(mθ)·cos(θ)^m with θ = arctan t
    let theta = t.atan();
    let cos_t = theta.cos();
    let mut fact = 1.0; // (j+1)!
    let mut sum = 0.0;
    for (j, cj) in poly.iter().enumerate() {
        fact *= (j + 1) as f64;
        let m = (j + 2) as i32;
        let im = if t == 0.0 { m as f64 } else { (m as f64 * theta).sin() / t };
        sum += cj * fact * im * cos_t.powi(m);
    }
    // √(2/π)·norm·β³·β⁻²/k, with 1/k = 1/(βt) folded into sin(mθ)/t
    (2.0 / PI).sqrt() * norm * sum
}

/// Net charge spectrum of a many-electron atom: Z·ball(a(A)k) − Σ shells.
pub fn atom_charge_spectrum(atom: &NobleGasAtom, k: f64) -> f64 {
    let a = atom.nuclear_radius();
    let nucleus = atom.z as f64 * FOURIER_NORM * ball_form(a * k);
    let electrons: f64 = atom.shells.iter().map(|&sh| shell_transform(atom.z, &atom.constants, sh, k)).sum();
    nucleus - electrons
}

impl NobleGasAtom {
    pub fn charge_spectrum(&self) -> RadialSpectrum {
        let atom = self.clone();
        let b = self.constants.bohr_b;
        RadialSpectrum::new(
            move |k| atom_charge_spectrum(&atom, k),
            vec![self.z as f64 / b, 1.0 / self.nuclear_radius()],
            0.0,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sources::{proton_current_prefactor, proton_density};

    fn transform_spec(breaks: Vec<f64>, scale: f64) -> QuadSpec {
        QuadSpec::default().with_rel_tol(1e-11).with_abs_tol(1e-300).with_breakpoints(breaks).with_tail_scale(scale)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn fourier_norm_constant() {
        assert!(rel(FOURIER_NORM, (2.0 * PI).powf(-1.5)) < 1e-15);
        // √(2/π) = 4π(2π)^{−3/2}
        assert!(rel((2.0 / PI).sqrt(), 4.0 * PI * FOURIER_NORM) < 1e-15);
    }

    #[test]
    fn shape_function_series_match_closed_forms() {
        for x in [0.049f64, 0.05, 0.051] {
            let closed = 3.0 * (x.sin() - x * x.cos()) / x.powi(3);
            assert!((ball_form(x) - closed).abs() < 1e-12);
            let q = (1.0 - x.cos()) / (x * x);
            assert!((loop_form(x) - q).abs() < 1e-12);
        }
        assert!(rel(loop_form_deriv(0.0499), loop_form_deriv(0.0501)) < 1e-2);
        let g = 0.99;
        let lo = electron_current_form_deriv(ELECTRON_SERIES_MAX * (1.0 - 1e-9), g);
        let hi = electron_current_form_deriv(ELECTRON_SERIES_MAX * (1.0 + 1e-9), g);
        assert!(rel(lo, hi) < 1e-8);
        let lo = electron_current_form(ELECTRON_SERIES_MAX * (1.0 - 1e-12), g);
        let hi = electron_current_form(ELECTRON_SERIES_MAX * (1.0 + 1e-12), g);
        assert!(rel(lo, hi) < 1e-13);
    }

    #[test]
    fn shape_derivatives_by_finite_difference() {
        let g = (1.0f64 - 7.297_352_569_3e-3f64.powi(2)).sqrt();
        for x in [0.02f64, 0.3, 1.0, 4.5, 30.0, 1e3] {
            let h = 1e-5 * x.min(1.0);
            let fd = (loop_form(x + h) - loop_form(x - h)) / (2.0 * h);
            assert!(rel(loop_form_deriv(x), fd) < 1e-7, "Q' at {x}");
            let fd = (electron_current_form(x + h, g) - electron_current_form(x - h, g)) / (2.0 * h);
            assert!(rel(electron_current_form_deriv(x, g), fd) < 1e-7, "F' at {x}");
        }
    }

    #[test]
    fn uniform_ball_transform() {
        let a = 2.0;
        let spec = transform_spec(vec![a], a);
        for k in [0.1, 1.0, 3.7, 20.0] {
            let got = radial_fourier(|r| if r < a { 3.0 / (4.0 * PI * a.powi(3)) } else { 0.0 }, k, &spec).unwrap();
            let x = a * k;
            let want = (3.0 * x.sin() - 3.0 * x * x.cos()) / ((2.0 * PI).powf(1.5) * x.powi(3));
            assert!(rel(got.value, want) < 1e-9, "k = {k}");
            assert!(rel(FOURIER_NORM * ball_form(x), want) < 1e-12);
        }
    }

    #[test]
    fn thin_shell_transform_limit() {
        // a shell of width w → 0 approaches sin(ak)/(ak)·(2π)^{−3/2}
        let (a, w) = (1.0f64, 1e-5);
        let vol = 4.0 * PI / 3.0 * ((a + w).powi(3) - a.powi(3));
        let spec = transform_spec(vec![a, a + w], 1.0);
        let k = 2.3;
        let got = radial_fourier(|r| if r >= a && r < a + w { 1.0 / vol } else { 0.0 }, k, &spec).unwrap();
        let want = FOURIER_NORM * (a * k).sin() / (a * k);
        assert!(rel(got.value, want) < 1e-4);
    }

    #[test]
    fn yukawa_like_transform() {
        let spec = transform_spec(vec![1.0], 1.0);
        for k in [0.05, 0.8, 6.0] {
            let got = radial_fourier(|r| (-r).exp() / (8.0 * PI), k, &spec).unwrap();
            let want = FOURIER_NORM / (1.0 + k * k).powi(2);
            assert!(rel(got.value, want) < 1e-10);
        }
    }

    #[test]
    fn hydrogen_charge_limits() {
        let h = HydrogenAtom::standard();
        let s = h.charge_spectrum();
        assert_eq!(s.eval(0.0), 0.0);
        let tiny = 1e-9 / h.constants.bohr_b;
        assert!(hydrogen_charge_spectrum(&h, tiny).abs() < 1e-15);
        assert!(rel(FOURIER_NORM * ball_form(h.constants.proton_a * tiny), FOURIER_NORM) < 1e-15);
    }

    #[test]
    fn hydrogen_charge_matches_numeric_transform() {
        let h = HydrogenAtom::standard();
        let (a, b) = (h.constants.proton_a, h.constants.bohr_b);
        let spec = transform_spec(vec![a, b], b);
        for kb in [0.5, 2.0, 7.0] {
            let k = kb / b;
            let got = radial_fourier(|r| h.charge_density(r).unwrap(), k, &spec).unwrap();
            let want = hydrogen_charge_spectrum(&h, k);
            assert!(rel(got.value, want) < 1e-8, "kb = {kb}: {} vs {want}", got.value);
        }
    }

    #[test]
    fn hydrogen_chi_matches_numeric_transform() {
        let h = HydrogenAtom::standard();
        let (a, b) = (h.constants.proton_a, h.constants.bohr_b);
        let spec = transform_spec(vec![a, b], b);
        for kb in [0.5, 1.0, 3.0] {
            let k = kb / b;
            let got = radial_fourier(|r| h.current_prefactor(r).unwrap(), k, &spec).unwrap();
            let want = hydrogen_chi_spectrum(&h, k);
            assert!(rel(got.value, want) < 1e-7, "kb = {kb}: {} vs {want}", got.value);
        }
        // proton part alone at proton scales
        let c = h.constants;
        let spec = transform_spec(vec![a], a);
        for ka in [0.3, 2.0, 9.0] {
            let k = ka / a;
            let got = radial_fourier(|r| proton_current_prefactor(&c, r), k, &spec).unwrap();
            let want = FOURIER_NORM * 12.0 * c.mu_geom * loop_form(ka) / (a * a);
            assert!(rel(got.value, want) < 1e-9);
        }
        let _ = proton_density(&c, 0.0);
    }

    #[test]
    fn chi_derivative_by_finite_difference() {
        // Below k ~ 1/a the proton constant 6μ/a² dominates χ̃ by eight orders
        // of magnitude and swamps a difference quotient, so the electron
        // part is checked with μ = 0 and the full spectrum where both vary.
        let c = PhysConst { mu_geom: 0.0, ..PhysConst::default() };
        let electron_only = HydrogenAtom::new(c, true);
        let full = HydrogenAtom::standard();
        let b = c.bohr_b;
        let cases = [
            (electron_only, 0.05),
            (electron_only, 0.2),
            (electron_only, 1.0),
            (electron_only, 40.0),
            (full, 1e4),
            (full, 1e5),
        ];
        for (h, kb) in cases {
            let k = kb / b;
            let dk = 1e-5 * k;
            let fd = (hydrogen_chi_spectrum(&h, k + dk) - hydrogen_chi_spectrum(&h, k - dk)) / (2.0 * dk);
            let got = hydrogen_chi_spectrum_deriv(&h, k);
            assert!(rel(got, fd) < 1e-6, "kb = {kb}: {got} vs {fd}");
        }
    }

    #[test]
    fn chi_small_k_limit() {
        let h = HydrogenAtom::standard();
        let s = h.chi_spectrum();
        let k = 1e-6 / h.constants.bohr_b;
        assert!(rel(s.eval(k), s.k0_limit) < 1e-9);
        let d = h.chi_spectrum_deriv();
        assert!(d.eval(k).abs() < 1e-9 * s.k0_limit.abs() * h.constants.bohr_b);
    }

    #[test]
    fn sphere_pair_form_factor_limits() {
        let pair = SpherePair::new(1.0, 3.0, 1.0).unwrap();
        assert_eq!(sphere_pair_form_factor(&pair, 2.0, 0.0), 0.0);
        let point = SpherePair::new(1e-12, 3.0, 1.0).unwrap();
        let v = sphere_pair_form_factor(&point, 2.0, 0.4);
        assert!(rel(v, 2.0 * FOURIER_NORM * (0.5 * 3.0 * 2.0 * 0.4f64).sin()) < 1e-14);
    }

    #[test]
    fn sphere_pair_form_factor_against_grid_transform() {
        // Direct 3-D transform of two charged shells, integrating over the
        // shell surfaces with a product midpoint rule.
        let a = 1.0;
        let d = 2.0 * a;
        let pair = SpherePair::new(a, d, 1.0).unwrap();
        let k = PI / a;
        let n = 400;
        let mut im = 0.0;
        for i in 0..n {
            let c = -1.0 + (i as f64 + 0.5) * 2.0 / n as f64;
            let w = 2.0 / n as f64 / 2.0; // shell charge density 1/(4πa²), ∫dφ = 2π
                                          // phase e^{−ik(z₀ + a c)}, z₀ = ±d/2, k along z
            let plus = -(k * (0.5 * d + a * c)).sin();
            let minus = -(k * (-0.5 * d + a * c)).sin();
            im += w * (plus - minus);
        }
        let direct = -FOURIER_NORM * im;
        let formula = sphere_pair_form_factor(&pair, k, 1.0);
        assert!((direct - formula).abs() <= 0.01 * formula.abs().max(1e-3 * FOURIER_NORM));
    }

    #[test]
    fn loop_spectrum_limits_and_zero() {
        let lp = CurrentLoop::new(2.0, 3.0).unwrap();
        let lim = 4.0 * 3.0 / (2.0 * (2.0 * PI).sqrt());
        assert!(rel(loop_current_spectrum(&lp, 0.0).unwrap(), lim) < 1e-15);
        assert!(rel(loop_current_spectrum(&lp, 1e-6).unwrap(), lim) < 1e-11);
        let z = 3.831_705_970_207_512 / 2.0;
        assert!(loop_current_spectrum(&lp, z).unwrap().abs() < 1e-13);
        // transversality: 𝐤·{k_y, −k_x, 0} = 0
        let (kx, ky) = (0.3, -1.7);
        assert_eq!(kx * ky + ky * (-kx), 0.0);
    }

    #[test]
    fn loop_h_spectrum_algebra() {
        let c = PhysConst::default();
        let lp = CurrentLoop::new(1.0, 1.0).unwrap();
        let (kp, kz) = (1.3, -0.4);
        let s = lp.scaled_current(&c);
        let want = s * s * bessel_j1(kp).unwrap().powi(2) / (2.0 * PI * (kp * kp + kz * kz));
        assert!(rel(loop_h_spectrum_sq(&lp, &c, kp, kz).unwrap(), want) < 1e-14);
    }

    #[test]
    fn field_spectra_helpers() {
        assert!(rel(d_spectrum_sq(FOURIER_NORM, 2.0), FOURIER_NORM.powi(2) / 4.0) < 1e-15);
        assert_eq!(h_spectrum_sq(1.0, 1.0, 1.0), 0.0);
        assert!(rel(h_spectrum_sq(2.0, 2.0, 0.0), 1.0) < 1e-15);
    }

    #[test]
    fn one_s_shell_closed_form() {
        let c = PhysConst::default();
        let he = NobleGasAtom::element("He", c).unwrap();
        let b = c.bohr_b;
        for kb in [1e-3, 0.7, 5.0, 200.0] {
            let k = kb / b;
            let got = shell_spectrum(&he, Shell::new(1, 0, 2), k).unwrap();
            let want = 2.0 * FOURIER_NORM / (1.0 + kb * kb / 16.0).powi(2);
            assert!(rel(got, want) < 1e-12, "kb = {kb}");
        }
    }

    #[test]
    fn shells_match_numeric_transform() {
        let c = PhysConst::default();
        let xe = NobleGasAtom::element("Xe", c).unwrap();
        let z = xe.z as f64;
        for &sh in &xe.shells {
            let scale = sh.n as f64 * c.bohr_b / (2.0 * z);
            let spec = transform_spec(vec![scale, 10.0 * scale, 40.0 * scale], scale);
            for kb in [0.3, 4.0, 60.0] {
                let k = kb / c.bohr_b;
                let got = radial_fourier(|r| xe.shell_density(sh, r).unwrap(), k, &spec).unwrap();
                let want = shell_spectrum(&xe, sh, k).unwrap();
                assert!(rel(got.value, want) < 1e-9, "{sh} kb = {kb}: {} vs {want}", got.value);
            }
        }
        let ne = NobleGasAtom::element("Ne", c).unwrap();
        let sh = Shell::new(2, 1, 6);
        let scale = c.bohr_b / 10.0;
        let spec = transform_spec(vec![scale, 10.0 * scale], scale);
        let k = 1.0 / c.bohr_b;
        let got = radial_fourier(|r| ne.shell_density(sh, r).unwrap(), k, &spec).unwrap();
        assert!(rel(got.value, shell_spectrum(&ne, sh, k).unwrap()) < 1e-9);
        assert!(shell_spectrum(&ne, Shell::new(3, 1, 6), k).is_err());
    }

    #[test]
    fn shell_small_k_gives_occupancy() {
        let c = PhysConst::default();
        let xe = NobleGasAtom::element("Xe", c).unwrap();
        let k = 1e-7 / c.bohr_b;
        for &sh in &xe.shells {
            let v = shell_spectrum(&xe, sh, k).unwrap();
            assert!(rel(v, sh.occupancy as f64 * FOURIER_NORM) < 1e-8, "{sh}: {v}");
        }
    }

    #[test]
    fn neutral_spectra_vanish_quadratically() {
        let c = PhysConst::default();
        let h = HydrogenAtom::standard();
        let xe = NobleGasAtom::element("Xe", c).unwrap();
        let b = c.bohr_b;
        let slope = |f: &dyn Fn(f64) -> f64| {
            let (k1, k2) = (1e-3 / b, 1e-2 / b);
            (f(k2).abs().ln() - f(k1).abs().ln()) / (k2 / k1).ln()
        };
        let sh = slope(&|k| hydrogen_charge_spectrum(&h, k));
        let sx = slope(&|k| atom_charge_spectrum(&xe, k));
        assert!((sh - 2.0).abs() < 0.1, "{sh}");
        assert!((sx - 2.0).abs() < 0.1, "{sx}");
    }
}
