//! Reeb flow on `H = 1`, the two coordinate-plane periodic orbits, their
//! linearized return maps and rotation numbers.
//!
//! For degree-2 homogeneous `H` and `λ = ½Σ(x dy − y dx)`, Euler's identity
//! gives `λ(X_H) = H`, so the Hamiltonian field `X_H` is the Reeb field on the
//! unit level. The flow also preserves `λ`, hence `ξ = ker λ ∩ TY`.

use std::f64::consts::TAU;

use serde::Serialize;

use super::body::StarBody;
use super::integrator::{self, Field};
use super::quadrature::contact_volume;
use crate::index::{check_relations, RelationReport};
use crate::model::{Approx, OrbitData, Rational, Scalar, TwoOrbitModel};
use crate::{Error, Result};

/// Steps per period.
pub const STEPS_PER_PERIOD: usize = 2048;
/// Start vectors used for winding tracking.
pub const WINDING_VECTORS: usize = 16;
/// `| |tr P|/2 − 1 |` below this counts as a degenerate (parabolic) return map.
pub const DEGENERATE_TOL: f64 = 1e-9;
/// Largest relative off-plane gradient accepted as an invariant plane.
pub const PLANE_TOL: f64 = 1e-10;

/// `X_H = J∇H` in coordinates `(x1, y1, x2, y2)`.
fn hamiltonian_field(body: &StarBody, z: [f64; 4]) -> [f64; 4] {
    let g = body.gradient(z);
    [-g[1], g[0], -g[3], g[2]]
}

/// The Reeb vector field at a point of `H = 1`.
pub fn reeb_field(body: &StarBody, z: [f64; 4]) -> Result<[f64; 4]> {
    let h = body.value(z);
    if (h - 1.0).abs() > 1e-9 {
        return Err(Error::Domain(format!("point is off the hypersurface: H = {h}")));
    }
    Ok(hamiltonian_field(body, z))
}

/// `λ(v)` at `z`.
pub fn liouville(z: [f64; 4], v: [f64; 4]) -> f64 {
    0.5 * (z[0] * v[1] - z[1] * v[0] + z[2] * v[3] - z[3] * v[2])
}

/// `ω(u, v) = dλ(u, v)`.
pub fn omega(u: [f64; 4], v: [f64; 4]) -> f64 {
    u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]
}

/// Projection of `v` to `ξ_z`: along the Liouville field `z/2` onto `TY`, then
/// along the Reeb field onto `ker λ`.
pub fn project_to_xi(body: &StarBody, z: [f64; 4], v: [f64; 4]) -> [f64; 4] {
    let g = body.gradient(z);
    let dh: f64 = (0..4).map(|i| g[i] * v[i]).sum();
    let w: [f64; 4] = std::array::from_fn(|i| v[i] - dh * 0.5 * z[i]);
    let r = hamiltonian_field(body, z);
    let l = liouville(z, w) / liouville(z, r);
    std::array::from_fn(|i| w[i] - l * r[i])
}

struct FlowField<'a>(&'a StarBody);

impl Field for FlowField<'_> {
    fn dim(&self) -> usize {
        4
    }
    fn eval(&self, y: &[f64], out: &mut [f64]) {
        out.copy_from_slice(&hamiltonian_field(self.0, [y[0], y[1], y[2], y[3]]));
    }
}

/// Flow together with its variational equation `Φ' = J·Hess H·Φ`.
struct VariationalField<'a>(&'a StarBody);

impl Field for VariationalField<'_> {
    fn dim(&self) -> usize {
        20
    }
    fn eval(&self, y: &[f64], out: &mut [f64]) {
        let z = [y[0], y[1], y[2], y[3]];
        let (_, g, h) = super::dual::hessian(|x| self.0.h(x), z);
        out[..4].copy_from_slice(&[-g[1], g[0], -g[3], g[2]]);
        // rows of J·Hess
        let a = [h[1].map(|v| -v), h[0], h[3].map(|v| -v), h[2]];
        for i in 0..4 {
            for j in 0..4 {
                out[4 + 4 * i + j] = (0..4).map(|k| a[i][k] * y[4 + 4 * k + j]).sum();
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowResult {
    pub end: [f64; 4],
    pub max_energy_drift: f64,
    pub error_estimate: f64,
}

/// Flow `z0` for time `t` in `steps` equal steps, recording the largest `|H − H(z0)|`.
pub fn flow(body: &StarBody, z0: [f64; 4], t: f64, steps: usize) -> FlowResult {
    let h0 = body.value(z0);
    let mut drift = 0.0f64;
    let (end, err) = integrator::integrate(&FlowField(body), &z0, t / steps as f64, steps, |_, y| {
        drift = drift.max((body.value([y[0], y[1], y[2], y[3]]) - h0).abs());
    });
    FlowResult { end: [end[0], end[1], end[2], end[3]], max_energy_drift: drift, error_estimate: err }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RotationKind {
    Elliptic,
    /// `|tr P| = 2`: the rotation number is an integer or half-integer.
    Degenerate,
    Hyperbolic,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Rotation {
    pub kind: RotationKind,
    /// Absent for hyperbolic orbits.
    pub theta: Option<Approx>,
    /// Present for hyperbolic orbits.
    pub eigenvalues: Option<[f64; 2]>,
    pub trace: f64,
    /// Smallest and largest turn count of the tracked linearized solutions.
    pub winding_range: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicOrbitResult {
    pub plane: u8,
    pub initial: [f64; 4],
    pub period: Approx,
    /// Linearized return map on `ξ` in the frame of the off-plane coordinate directions.
    pub monodromy: [[f64; 2]; 2],
    /// Turns made by each tracked linearized solution in that frame over one period.
    pub windings: Vec<f64>,
    pub return_error: f64,
    pub energy_drift: f64,
    pub rotation: Option<Rotation>,
}

impl PeriodicOrbitResult {
    pub fn monodromy_det(&self) -> f64 {
        let m = &self.monodromy;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn monodromy_trace(&self) -> f64 {
        self.monodromy[0][0] + self.monodromy[1][1]
    }
}

fn plane_indices(plane: u8) -> Result<([usize; 2], [usize; 2])> {
    match plane {
        1 => Ok(([0, 1], [2, 3])),
        2 => Ok(([2, 3], [0, 1])),
        _ => Err(Error::Domain(format!("plane must be 1 or 2, got {plane}"))),
    }
}

fn angle(y: &[f64], ip: [usize; 2]) -> f64 {
    y[ip[1]].atan2(y[ip[0]])
}

fn wrap(d: f64) -> f64 {
    (d + std::f64::consts::PI).rem_euclid(TAU) - std::f64::consts::PI
}

fn angular_speed(body: &StarBody, y: &[f64], ip: [usize; 2]) -> f64 {
    let z = [y[0], y[1], y[2], y[3]];
    let v = hamiltonian_field(body, z);
    let (x, yy) = (z[ip[0]], z[ip[1]]);
    (x * v[ip[1]] - yy * v[ip[0]]) / (x * x + yy * yy)
}

/// Largest relative off-plane gradient over points of the plane circle.
pub fn plane_defect(body: &StarBody, plane: u8) -> Result<f64> {
    let (ip, op) = plane_indices(plane)?;
    let mut worst = 0.0f64;
    for k in 0..64 {
        let a = TAU * k as f64 / 64.0;
        let mut z = [0.0; 4];
        z[ip[0]] = a.cos();
        z[ip[1]] = a.sin();
        let g = body.gradient(z);
        let off = g[op[0]].hypot(g[op[1]]);
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        worst = worst.max(off / norm);
    }
    Ok(worst)
}

/// Time `τ` from `y` until the in-plane angle has advanced by `target`, by
/// Newton iteration on single partial steps. Returns `τ`, the state there and
/// the size of the last correction.
fn refine_crossing(f: &impl Field, body: &StarBody, y: &[f64], ip: [usize; 2], target: f64) -> Result<(f64, Vec<f64>, f64)> {
    let a0 = angle(y, ip);
    let mut tau = target / angular_speed(body, y, ip);
    for _ in 0..50 {
        let (yt, _) = integrator::step(f, y, tau);
        let advanced = if tau.abs() < 1e-300 { 0.0 } else { wrap(angle(&yt, ip) - a0) };
        let correction = (advanced - target) / angular_speed(body, &yt, ip);
        tau -= correction;
        if correction.abs() <= 4.0 * f64::EPSILON * tau.abs().max(1e-12) || correction == 0.0 {
            let (yt, _) = integrator::step(f, y, tau);
            return Ok((tau, yt, correction.abs()));
        }
    }
    Err(Error::Iteration("return-time Newton iteration did not converge".into()))
}

/// Coordinates of `w ∈ ξ_z` in the projected frame `(ξ1, ξ2)` of the off-plane directions.
fn frame_coords(body: &StarBody, z: [f64; 4], op: [usize; 2], w: [f64; 4]) -> (f64, f64) {
    let mut e1 = [0.0; 4];
    let mut e2 = [0.0; 4];
    e1[op[0]] = 1.0;
    e2[op[1]] = 1.0;
    let x1 = project_to_xi(body, z, e1);
    let x2 = project_to_xi(body, z, e2);
    let w = project_to_xi(body, z, w);
    let n = omega(x1, x2);
    (omega(w, x2) / n, omega(x1, w) / n)
}

fn start_vector(k: usize, op: [usize; 2]) -> [f64; 4] {
    let a = TAU * k as f64 / WINDING_VECTORS as f64;
    let mut v = [0.0; 4];
    v[op[0]] = a.cos();
    v[op[1]] = a.sin();
    v
}

fn apply(y: &[f64], v: [f64; 4]) -> [f64; 4] {
    std::array::from_fn(|i| (0..4).map(|k| y[4 + 4 * i + k] * v[k]).sum())
}

struct WindingTracker {
    op: [usize; 2],
    last: Vec<f64>,
    total: Vec<f64>,
}

impl WindingTracker {
    fn new(body: &StarBody, y: &[f64], op: [usize; 2]) -> Self {
        let last = Self::angles(body, y, op);
        Self { op, total: vec![0.0; last.len()], last }
    }

    fn angles(body: &StarBody, y: &[f64], op: [usize; 2]) -> Vec<f64> {
        let z = [y[0], y[1], y[2], y[3]];
        (0..WINDING_VECTORS)
            .map(|k| {
                let (c1, c2) = frame_coords(body, z, op, apply(y, start_vector(k, op)));
                c2.atan2(c1)
            })
            .collect()
    }

    fn update(&mut self, body: &StarBody, y: &[f64]) {
        let now = Self::angles(body, y, self.op);
        for k in 0..now.len() {
            self.total[k] += wrap(now[k] - self.last[k]);
        }
        self.last = now;
    }

    fn turns(&self) -> Vec<f64> {
        self.total.iter().map(|t| t / TAU).collect()
    }
}

/// The periodic orbit on the circle `{z2 = 0}` (plane 1) or `{z1 = 0}` (plane 2).
pub fn find_planar_orbit(body: &StarBody, plane: u8) -> Result<PeriodicOrbitResult> {
    let (ip, op) = plane_indices(plane)?;
    let defect = plane_defect(body, plane)?;
    if defect > PLANE_TOL {
        return Err(Error::OrbitEscaped { plane, amplitude: defect });
    }
    let mut unit = [0.0; 4];
    unit[ip[0]] = 1.0;
    let r0 = 1.0 / body.value(unit).sqrt();
    let mut z0 = [0.0; 4];
    z0[ip[0]] = r0;
    let omega0 = angular_speed(body, &z0, ip);
    if !(omega0 > 0.0) {
        return Err(Error::Iteration(format!("the flow does not rotate positively in plane {plane}")));
    }

    // coarse pass: locate the first return of the in-plane angle
    let flow4 = FlowField(body);
    let h = TAU / omega0 / STEPS_PER_PERIOD as f64;
    let mut y = z0.to_vec();
    let mut turned = 0.0;
    let mut t = 0.0;
    let mut t1 = None;
    for _ in 0..8 * STEPS_PER_PERIOD {
        let (next, _) = integrator::step(&flow4, &y, h);
        let d = wrap(angle(&next, ip) - angle(&y, ip));
        if turned + d >= TAU {
            let (tau, _, _) = refine_crossing(&flow4, body, &y, ip, TAU - turned)?;
            t1 = Some(t + tau);
            break;
        }
        turned += d;
        t += h;
        y = next;
    }
    let t1 = t1.ok_or_else(|| Error::Iteration(format!("no return to the start angle in plane {plane}")))?;

    // fine pass with the variational equation on the exact step grid
    let var = VariationalField(body);
    let mut y0 = vec![0.0; 20];
    y0[..4].copy_from_slice(&z0);
    for i in 0..4 {
        y0[4 + 5 * i] = 1.0;
    }
    let mut tracker = WindingTracker::new(body, &y0, op);
    let mut turned = 0.0;
    let mut last_angle = angle(&y0, ip);
    let mut drift = 0.0f64;
    let (yn, err) = integrator::integrate(&var, &y0, t1 / STEPS_PER_PERIOD as f64, STEPS_PER_PERIOD, |_, y| {
        tracker.update(body, y);
        let a = angle(y, ip);
        turned += wrap(a - last_angle);
        last_angle = a;
        drift = drift.max((body.value([y[0], y[1], y[2], y[3]]) - 1.0).abs());
    });
    let (tau, yt, last_correction) = refine_crossing(&var, body, &yn, ip, TAU - turned)?;
    tracker.update(body, &yt);
    drift = drift.max((body.value([yt[0], yt[1], yt[2], yt[3]]) - 1.0).abs());
    let off_plane = yt[op[0]].hypot(yt[op[1]]);
    if off_plane > 1e-9 {
        return Err(Error::OrbitEscaped { plane, amplitude: off_plane });
    }

    let period = t1 + tau;
    let speed = hamiltonian_field(body, z0).iter().map(|v| v * v).sum::<f64>().sqrt();
    let period_err = last_correction + err / speed + 4.0 * f64::EPSILON * period;
    let zt = [yt[0], yt[1], yt[2], yt[3]];
    let return_error = (0..4).map(|i| (zt[i] - z0[i]).powi(2)).sum::<f64>().sqrt();

    let mut monodromy = [[0.0; 2]; 2];
    let mut e = [[0.0; 4]; 2];
    e[0][op[0]] = 1.0;
    e[1][op[1]] = 1.0;
    for (j, ej) in e.iter().enumerate() {
        let xj = project_to_xi(body, z0, *ej);
        let (c1, c2) = frame_coords(body, zt, op, apply(&yt, xj));
        monodromy[0][j] = c1;
        monodromy[1][j] = c2;
    }

    let mut result = PeriodicOrbitResult {
        plane,
        initial: z0,
        period: Approx::new(period, period_err),
        monodromy,
        windings: tracker.turns(),
        return_error,
        energy_drift: drift,
        rotation: None,
    };
    result.rotation = rotation_number(body, &result).ok();
    Ok(result)
}

/// Rotation number of a planar orbit in the constant frame of the off-plane
/// coordinate directions.
///
/// Vector windings bracket the rotation number to within 1/2; the eigenvalue
/// phase `ρ` of the return map pins it to the unique `n ± ρ` in that window.
pub fn rotation_number(_body: &StarBody, orbit: &PeriodicOrbitResult) -> Result<Rotation> {
    let w = &orbit.windings;
    if w.is_empty() {
        return Err(Error::Precision("no tracked linearized solutions".into()));
    }
    let wmin = w.iter().cloned().fold(f64::INFINITY, f64::min);
    let wmax = w.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mean = w.iter().sum::<f64>() / w.len() as f64;
    let tr = orbit.monodromy_trace();
    let det_err = (orbit.monodromy_det() - 1.0).abs();
    let half = tr / 2.0;
    let base = Rotation { kind: RotationKind::Elliptic, theta: None, eigenvalues: None, trace: tr, winding_range: (wmin, wmax) };

    if half.abs() > 1.0 + DEGENERATE_TOL {
        let s = (half * half - 1.0).sqrt();
        return Ok(Rotation { kind: RotationKind::Hyperbolic, eigenvalues: Some([half - s, half + s]), ..base });
    }
    let snap = |candidate: f64, radius: f64, kind: RotationKind| -> Result<Rotation> {
        let in_window = candidate >= wmax - 0.5 - 1e-9 && candidate <= wmin + 0.5 + 1e-9;
        if (candidate - mean).abs() >= 0.49 || !in_window {
            return Err(Error::Precision(format!(
                "rotation number snap is ambiguous: windings in [{wmin}, {wmax}], candidate {candidate}"
            )));
        }
        Ok(Rotation { kind, theta: Some(Approx::new(candidate, radius)), ..base.clone() })
    };
    if (half.abs() - 1.0).abs() <= DEGENERATE_TOL {
        // identity-like (tr = 2) or minus-identity-like (tr = −2) return map
        let offset = if half > 0.0 { 0.0 } else { 0.5 };
        let candidate = (mean - offset).round() + offset;
        let radius = ((half.abs() - 1.0).abs() * 2.0 + det_err).sqrt() / std::f64::consts::PI + 1e-12;
        return snap(candidate, radius, RotationKind::Degenerate);
    }
    let rho = half.acos() / TAU;
    let n = mean.floor();
    let candidate = [n - 1.0, n, n + 1.0]
        .iter()
        .flat_map(|k| [k + rho, k - rho])
        .min_by(|a, b| (a - mean).abs().total_cmp(&(b - mean).abs()))
        .expect("nonempty");
    let dtr = 1e-12 * tr.abs().max(1.0) + det_err * tr.abs();
    let radius = dtr / (2.0 * TAU * (TAU * rho).sin().abs()) + 1e-13;
    snap(candidate, radius, RotationKind::Elliptic)
}

/// Period, rotation number and volume measurements assembled into a model with
/// `p = 1` and trivial framing corrections, then checked against the relations.
pub fn relations_from_measurements(vol: &Scalar, periods: [Scalar; 2], thetas: [Scalar; 2], tol: f64) -> Result<RelationReport> {
    let [t1, t2] = periods;
    let [th1, th2] = thetas;
    let orbit = |period, theta| OrbitData { period, theta, q: Rational::from_integer(0.into()), c: Rational::from_integer(1.into()) };
    let model = TwoOrbitModel::new(1, [0, 0], [orbit(t1, th1), orbit(t2, th2)], Rational::from_integer(1.into()))?;
    check_relations(vol, &model, tol)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DynamicsReport {
    pub orbits: [PeriodicOrbitResult; 2],
    pub volume: Approx,
    pub relations: RelationReport,
}

/// Both planar orbits, the contact volume, and the relation residuals.
pub fn measure(body: &StarBody, tol: f64) -> Result<DynamicsReport> {
    let o1 = find_planar_orbit(body, 1)?;
    let o2 = find_planar_orbit(body, 2)?;
    let volume = contact_volume(body)?;
    let theta = |o: &PeriodicOrbitResult| -> Result<Scalar> {
        let r = rotation_number(body, o)?;
        match (r.kind, r.theta) {
            (RotationKind::Elliptic, Some(t)) => Ok(Scalar::Approx(t)),
            (kind, _) => Err(Error::Domain(format!("plane-{} orbit is {kind:?}, not elliptic", o.plane))),
        }
    };
    let relations = relations_from_measurements(
        &Scalar::Approx(volume),
        [Scalar::Approx(o1.period), Scalar::Approx(o2.period)],
        [theta(&o1)?, theta(&o2)?],
        tol,
    )?;
    Ok(DynamicsReport { orbits: [o1, o2], volume, relations })
}

pub fn verify_theorem_relations(body: &StarBody, tol: f64) -> Result<RelationReport> {
    measure(body, tol).map(|r| r.relations)
}
