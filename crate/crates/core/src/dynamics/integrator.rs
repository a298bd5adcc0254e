//! Fixed-step Gragg–Bulirsch–Stoer integration: modified midpoint sweeps with
//! 2, 4, 6 and 8 substeps, extrapolated in h² to eighth order. The difference
//! between the last two extrapolation columns is the per-step error estimate.

const SUBSTEPS: [usize; 4] = [2, 4, 6, 8];

/// Right-hand side `f(y, out)` of an autonomous system `y' = f(y)`.
pub trait Field {
    fn dim(&self) -> usize;
    fn eval(&self, y: &[f64], out: &mut [f64]);
}

impl<F: Fn(&[f64], &mut [f64])> Field for (usize, F) {
    fn dim(&self) -> usize {
        self.0
    }
    fn eval(&self, y: &[f64], out: &mut [f64]) {
        (self.1)(y, out)
    }
}

fn midpoint(f: &impl Field, y0: &[f64], f0: &[f64], h: f64, n: usize, out: &mut [f64]) {
    let dim = y0.len();
    let hs = h / n as f64;
    let mut prev = y0.to_vec();
    let mut cur: Vec<f64> = (0..dim).map(|i| y0[i] + hs * f0[i]).collect();
    let mut deriv = vec![0.0; dim];
    for _ in 1..n {
        f.eval(&cur, &mut deriv);
        for i in 0..dim {
            let next = prev[i] + 2.0 * hs * deriv[i];
            prev[i] = cur[i];
            cur[i] = next;
        }
    }
    f.eval(&cur, &mut deriv);
    for i in 0..dim {
        out[i] = 0.5 * (cur[i] + prev[i] + hs * deriv[i]);
    }
}

/// One step of size `h` (negative steps integrate backwards). Returns the new
/// state and the max-norm error estimate.
pub fn step(f: &impl Field, y0: &[f64], h: f64) -> (Vec<f64>, f64) {
    let dim = y0.len();
    let mut f0 = vec![0.0; dim];
    f.eval(y0, &mut f0);
    let mut table: Vec<Vec<Vec<f64>>> = Vec::with_capacity(SUBSTEPS.len());
    for (j, &n) in SUBSTEPS.iter().enumerate() {
        let mut row = vec![vec![0.0; dim]];
        midpoint(f, y0, &f0, h, n, &mut row[0]);
        for k in 1..=j {
            let ratio = (n as f64 / SUBSTEPS[j - k] as f64).powi(2) - 1.0;
            let prev_row: &Vec<Vec<f64>> = &table[j - 1];
            let next: Vec<f64> = (0..dim).map(|i| row[k - 1][i] + (row[k - 1][i] - prev_row[k - 1][i]) / ratio).collect();
            row.push(next);
        }
        table.push(row);
    }
    let last = table.pop().expect("four stages");
    let best = &last[last.len() - 1];
    let lower = &last[last.len() - 2];
    let err = best.iter().zip(lower).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    (best.clone(), err)
}

/// `steps` equal steps of size `h`; `visit(k, y)` sees the state after each step.
/// Returns the final state and the summed error estimates.
pub fn integrate(f: &impl Field, y0: &[f64], h: f64, steps: usize, mut visit: impl FnMut(usize, &[f64])) -> (Vec<f64>, f64) {
    let mut y = y0.to_vec();
    let mut err = 0.0;
    for k in 0..steps {
        let (next, e) = step(f, &y, h);
        y = next;
        err += e;
        visit(k + 1, &y);
    }
    (y, err)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator_to_high_order() {
        let f = (2usize, |y: &[f64], out: &mut [f64]| {
            out[0] = -y[1];
            out[1] = y[0];
        });
        let tau = std::f64::consts::TAU;
        let (y, err) = integrate(&f, &[1.0, 0.0], tau / 256.0, 256, |_, _| {});
        assert!((y[0] - 1.0).abs() < 1e-13 && y[1].abs() < 1e-13, "{y:?}");
        assert!(err < 1e-10);
        // error drops by about 2^8 when the step halves
        let e1 = (step(&f, &[1.0, 0.0], 0.4).0[0] - 0.4f64.cos()).abs();
        let e2 = (step(&f, &[1.0, 0.0], 0.2).0[0] - 0.2f64.cos()).abs();
        assert!(e1 / e2 > 100.0, "{e1} {e2}");
    }

    #[test]
    fn backward_step_inverts_forward_step() {
        let f = (2usize, |y: &[f64], out: &mut [f64]| {
            out[0] = y[1];
            out[1] = -y[0].sin();
        });
        let (y, _) = step(&f, &[0.3, 0.1], 0.05);
        let (z, _) = step(&f, &y, -0.05);
        assert!((z[0] - 0.3).abs() < 1e-14 && (z[1] - 0.1).abs() < 1e-14);
    }
}
