//! CSV data behind the three figures.
//!
//! * fig1: enclosed charge against r/b, then inset rows against r/a,
//! * fig2: ℋ in the y = 0 plane on a 41 × 41 grid spanning ±6λ̄,
//! * fig3: 𝒩_Z of the noble gases with a through-origin quadratic fit.

use rayon::prelude::*;
use zeldovich_core::fields::{enclosed_charge, field_grid};
use zeldovich_core::sources::NOBLE_GASES;
use zeldovich_core::zeldovich::nz_atom_electric;
use zeldovich_core::{HydrogenAtom, NobleGasAtom, PhysConst, QuadSpec, Result};

pub const FIG1_POINTS: usize = 400;
pub const FIG1_INSET_POINTS: usize = 200;
pub const FIG2_RESOLUTION: usize = 41;
pub const FIG2_EXTENT_LBAR: f64 = 6.0;

/// r ∈ [10⁻³b, 20b] log-spaced, then `inset` rows for r ∈ [0, 3a] linear.
pub fn fig1(atom: &HydrogenAtom) -> Result<String> {
    let (a, b) = (atom.constants.proton_a, atom.constants.bohr_b);
    let mut rows = vec![vec!["r_over_b".to_string(), "enclosed_charge".to_string()]];
    for i in 0..FIG1_POINTS {
        let x = 1e-3 * (2e4f64).powf(i as f64 / (FIG1_POINTS - 1) as f64);
        rows.push(vec![x.to_string(), enclosed_charge(atom, x * b)?.to_string()]);
    }
    for i in 0..FIG1_INSET_POINTS {
        let x = 3.0 * i as f64 / (FIG1_INSET_POINTS - 1) as f64;
        let q = if i == 0 { 0.0 } else { enclosed_charge(atom, x * a)? };
        rows.push(vec!["inset".to_string(), x.to_string(), q.to_string()]);
    }
    Ok(to_csv(rows))
}

/// Rows to CSV text; fig1 mixes two- and three-field rows.
fn to_csv(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory cannot fail");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("fields are UTF-8")
}

/// Hx and Hz (geometric units, 1/m²) on the y = 0 plane, z varying slowest.
pub fn fig2(atom: &HydrogenAtom) -> Result<String> {
    let lbar = atom.constants.lambda_bar;
    let grid = field_grid(atom, FIG2_EXTENT_LBAR * lbar, FIG2_RESOLUTION)?;
    let mut rows = vec![["x_over_lbar", "z_over_lbar", "Hx", "Hz"].map(String::from).to_vec()];
    for p in grid {
        rows.push([p.position[0] / lbar, p.position[2] / lbar, p.h[0], p.h[2]].map(|v| v.to_string()).to_vec());
    }
    Ok(to_csv(rows))
}

/// One row per noble gas; the fit is c·Z² with c from least squares.
pub fn fig3(constants: PhysConst, spec: &QuadSpec) -> Result<String> {
    let values = NOBLE_GASES
        .par_iter()
        .map(|&(sym, z, _)| {
            let atom = NobleGasAtom::element(sym, constants)?;
            Ok((sym, z as f64, nz_atom_electric(&atom, spec)?.total))
        })
        .collect::<Result<Vec<_>>>()?;
    let c = quadratic_coefficient(values.iter().map(|&(_, z, n)| (z, n)));
    let mut rows = vec![["Z", "element", "nz_electric", "quadratic_fit"].map(String::from).to_vec()];
    for (sym, z, n) in values {
        rows.push(vec![z.to_string(), sym.to_string(), n.to_string(), (c * z * z).to_string()]);
    }
    Ok(to_csv(rows))
}

/// Least-squares c in y = c·x².
pub fn quadratic_coefficient(points: impl Iterator<Item = (f64, f64)>) -> f64 {
    let (num, den) = points.fold((0.0, 0.0), |(n, d), (x, y)| (n + x * x * y, d + x.powi(4)));
    num / den
}
