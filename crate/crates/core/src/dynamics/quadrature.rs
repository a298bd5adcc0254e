//! Contact volume `∫_Y λ∧dλ = (1/2)∫_{S³} H⁻² dσ` by tensor-product quadrature
//! in `z = (cos η e^{it1}, sin η e^{it2})`, where `dσ = cos η sin η dη dt1 dt2`.
//! Gauss–Legendre in `η`, the trapezoidal rule in the two periodic angles.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use rayon::prelude::*;

use super::body::StarBody;
use crate::model::Approx;
use crate::{Error, Result};

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out.reverse();
    out
}

/// One quadrature level: `n_eta` Gauss nodes in `η`, `n_phi` points per circle angle.
pub fn volume_at(body: &StarBody, n_eta: usize, n_phi: usize) -> f64 {
    let nodes = gauss_legendre(n_eta);
    let constant_in_angles = body.is_ellipsoid();
    let per_node: Vec<f64> = nodes
        .par_iter()
        .map(|&(x, w)| {
            let eta = FRAC_PI_2 * 0.5 * (x + 1.0);
            let jac = eta.cos() * eta.sin() * w * FRAC_PI_2 * 0.5;
            let ring = if constant_in_angles {
                TAU * TAU / body.value_on_sphere(eta, 0.0, 0.0).powi(2)
            } else {
                let dphi = TAU / n_phi as f64;
                let mut s = 0.0;
                for i in 0..n_phi {
                    for j in 0..n_phi {
                        s += body.value_on_sphere(eta, i as f64 * dphi, j as f64 * dphi).powi(-2);
                    }
                }
                s * dphi * dphi
            };
            jac * ring
        })
        .collect();
    0.5 * per_node.iter().sum::<f64>()
}

pub const BASE_ETA: usize = 48;
pub const BASE_PHI: usize = 32;

/// Relative change between the two finest levels above which the result is rejected.
pub const CONVERGENCE_TOL: f64 = 1e-8;

/// Contact volume with error estimate `|I_2n − I_n| + 64ε|I|`.
pub fn contact_volume(body: &StarBody) -> Result<Approx> {
    contact_volume_at(body, BASE_ETA, BASE_PHI)
}

pub fn contact_volume_at(body: &StarBody, n_eta: usize, n_phi: usize) -> Result<Approx> {
    let coarse = volume_at(body, n_eta, n_phi);
    let fine = volume_at(body, 2 * n_eta, 2 * n_phi);
    let diff = (fine - coarse).abs();
    if !(diff <= CONVERGENCE_TOL * fine.abs()) {
        return Err(Error::Precision(format!(
            "volume quadrature did not converge: {coarse} at ({n_eta},{n_phi}) vs {fine} at ({},{})",
            2 * n_eta,
            2 * n_phi
        )));
    }
    Ok(Approx::new(fine, diff + 64.0 * f64::EPSILON * fine.abs()))
}
