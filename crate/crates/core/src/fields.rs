//! Position-space potentials and fields of the hydrogen ground state.
//!
//! The displacement is 𝒟 = −∇φ and the magnetic field is
//! ℋ = ∇×({−y, x, 0}·𝔞), with φ and 𝔞 radial. Both potentials are written in
//! closed form through incomplete gamma functions of t = 2r/b; the proton
//! terms switch form at r = a.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sources::HydrogenAtom;
use crate::specfun::{gamma_complete, gamma_p, gamma_q, gamma_upper, gamma_upper_scaled};

pub type Vec3 = [f64; 3];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialPair {
    pub phi: f64,
    pub a_frak: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FieldSample {
    pub position: Vec3,
    pub d: Vec3,
    pub h: Vec3,
}

fn check_radius(function: &'static str, r: f64) -> Result<()> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain(function, format!("r = {r} must be > 0")));
    }
    Ok(())
}

/// Shared per-atom constants.
struct Params {
    g: f64,
    a: f64,
    b: f64,
    mu: f64,
    alpha: f64,
    gamma_2g1: f64,
}

impl Params {
    fn new(atom: &HydrogenAtom) -> Result<Self> {
        let g = atom.gamma();
        let c = &atom.constants;
        Ok(Params {
            g,
            a: c.proton_a,
            b: c.bohr_b,
            mu: c.mu_geom,
            alpha: c.alpha,
            gamma_2g1: gamma_complete(2.0 * g + 1.0)?,
        })
    }
}

/// Net charge inside radius r, 4πr²·𝒟_r.
pub fn enclosed_charge(atom: &HydrogenAtom, r: f64) -> Result<f64> {
    check_radius("enclosed_charge", r)?;
    let p = Params::new(atom)?;
    let t = 2.0 * r / p.b;
    let s = 2.0 * p.g + 1.0;
    if r < p.a {
        Ok((r / p.a).powi(3) - gamma_p(s, t)?)
    } else {
        gamma_q(s, t)
    }
}

/// φ(r) and 𝔞(r).
pub fn potentials(atom: &HydrogenAtom, r: f64) -> Result<PotentialPair> {
    check_radius("potentials", r)?;
    let p = Params::new(atom)?;
    let t = 2.0 * r / p.b;
    let g = p.g;

    // φ: proton part minus the electron cloud's potential
    let phi_bracket = if r < p.a {
        let proton = (3.0 * p.a * p.a * r - r.powi(3)) / (2.0 * p.a.powi(3));
        let electron = gamma_p(2.0 * g + 1.0, t)? + t * gamma_upper(2.0 * g, t)? / p.gamma_2g1;
        proton - electron
    } else if t < 2.0 * g + 1.0 {
        gamma_q(2.0 * g + 1.0, t)? - t * gamma_upper(2.0 * g, t)? / p.gamma_2g1
    } else {
        // Q(2γ+1,t) − tΓ(2γ,t)/Γ(2γ+1) = t^{2γ}e^{−t}[(2γ−t)G + 1]/Γ(2γ+1),
        // G = e^t t^{−2γ}Γ(2γ,t), which keeps the screened tail accurate
        let log_e = 2.0 * g * t.ln() - t;
        let scaled = gamma_upper_scaled(2.0 * g, t)?;
        log_e.exp() * ((2.0 * g - t) * scaled + 1.0) / p.gamma_2g1
    };
    let phi = phi_bracket / (4.0 * PI * r);

    let proton_m = if r < p.a { p.mu * (4.0 * p.a * r.powi(3) - 3.0 * r.powi(4)) / p.a.powi(4) } else { p.mu };
    let lower = gamma_lower(2.0 * g + 2.0, t)?;
    let electron_m = p.alpha * p.b * (lower + t.powi(3) * gamma_upper(2.0 * g - 1.0, t)?) / (6.0 * p.gamma_2g1);
    let a_frak = (proton_m - electron_m) / (4.0 * PI * r.powi(3));
    Ok(PotentialPair { phi, a_frak })
}

/// (dφ/dr, d𝔞/dr).
pub fn potential_derivs(atom: &HydrogenAtom, r: f64) -> Result<(f64, f64)> {
    check_radius("potential_derivs", r)?;
    let p = Params::new(atom)?;
    let t = 2.0 * r / p.b;
    let dphi = -enclosed_charge(atom, r)? / (4.0 * PI * r * r);
    let proton = if r < p.a { 3.0 * p.mu * (r / p.a).powi(4) } else { 3.0 * p.mu };
    let electron = p.alpha * p.b * gamma_lower(2.0 * p.g + 2.0, t)? / (2.0 * p.gamma_2g1);
    let da = -(proton - electron) / (4.0 * PI * r.powi(4));
    Ok((dphi, da))
}

/// Effective far-field dipole moment μ − αb(2γ+1)/6 (meters).
pub fn far_field_moment(atom: &HydrogenAtom) -> f64 {
    atom.constants.mu_geom - atom.electron_moment()
}

/// Limits at r → 0: φ(0) and 𝔞(0).
pub fn potentials_at_origin(atom: &HydrogenAtom) -> Result<PotentialPair> {
    let p = Params::new(atom)?;
    let phi = (1.5 / p.a - 1.0 / (p.g * p.b)) / (4.0 * PI);
    let a_frak =
        p.mu / (PI * p.a.powi(3)) - p.alpha * gamma_complete(2.0 * p.g - 1.0)? / (3.0 * PI * p.b * p.b * p.gamma_2g1);
    Ok(PotentialPair { phi, a_frak })
}

/// γ(s,t) = Γ(s)·P(s,t).
fn gamma_lower(s: f64, t: f64) -> Result<f64> {
    Ok(gamma_complete(s)? * gamma_p(s, t)?)
}

fn norm(v: Vec3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// 𝒟 = −φ′(r)·𝐫/r.
pub fn d_field(atom: &HydrogenAtom, position: Vec3) -> Result<Vec3> {
    let r = norm(position);
    check_radius("d_field", r)?;
    let (dphi, _) = potential_derivs(atom, r)?;
    let f = -dphi / r;
    Ok([f * position[0], f * position[1], f * position[2]])
}

/// ℋ = 𝐧_z(2𝔞 + r𝔞′) − 𝐫·(z/r)𝔞′.
pub fn h_field(atom: &HydrogenAtom, position: Vec3) -> Result<Vec3> {
    let r = norm(position);
    check_radius("h_field", r)?;
    let a = potentials(atom, r)?.a_frak;
    let (_, da) = potential_derivs(atom, r)?;
    let f = position[2] * da / r;
    Ok([-f * position[0], -f * position[1], 2.0 * a + r * da - f * position[2]])
}

/// Field sample with the r → 0 limits (𝒟 = 0, ℋ = 2𝔞(0)𝐧_z) at the origin.
pub fn sample(atom: &HydrogenAtom, position: Vec3) -> Result<FieldSample> {
    if norm(position) == 0.0 {
        let a0 = potentials_at_origin(atom)?.a_frak;
        return Ok(FieldSample { position, d: [0.0; 3], h: [0.0, 0.0, 2.0 * a0] });
    }
    Ok(FieldSample { position, d: d_field(atom, position)?, h: h_field(atom, position)? })
}

/// Samples on a `resolution × resolution` grid in the y = 0 plane covering
/// x, z ∈ [−extent, extent]; z varies slowest.
pub fn field_grid(atom: &HydrogenAtom, extent: f64, resolution: usize) -> Result<Vec<FieldSample>> {
    if resolution < 2 {
        return Err(Error::Config(format!("grid resolution {resolution} must be >= 2")));
    }
    if !(extent > 0.0) || !extent.is_finite() {
        return Err(Error::Config(format!("grid extent {extent} must be > 0")));
    }
    let step = 2.0 * extent / (resolution - 1) as f64;
    // symmetric node placement so x → −x maps grid points onto each other exactly
    let coord = |i: usize| {
        let j = i as f64 - 0.5 * (resolution - 1) as f64;
        j * step
    };
    let mut out = Vec::with_capacity(resolution * resolution);
    for iz in 0..resolution {
        for ix in 0..resolution {
            out.push(sample(atom, [coord(ix), 0.0, coord(iz)])?);
        }
    }
    Ok(out)
}
