//! Dormand-Prince 5(4) embedded Runge-Kutta stepper with FSAL.

pub const STAGES: usize = 7;

const C: [f64; STAGES] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];

const A: [[f64; 6]; STAGES] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

// 5th-order weights (same as the last row of A) and their difference to
// the embedded 4th-order weights.
const B: [f64; STAGES] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const E: [f64; STAGES] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

pub struct Step<const N: usize> {
    pub y: [f64; N],
    pub dydt: [f64; N],
    /// Weighted RMS error estimate; accept when <= 1.
    pub error: f64,
}

/// One trial step of size `h` from `(t, y)` with derivative `dydt` at the
/// start. `rtol`/`atol` weight the error norm per component.
pub fn step<const N: usize, F>(
    f: &F,
    t: f64,
    y: &[f64; N],
    dydt: &[f64; N],
    h: f64,
    rtol: f64,
    atol: &[f64; N],
) -> Step<N>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    let mut k = [[0.0; N]; STAGES];
    k[0] = *dydt;
    for s in 1..STAGES {
        let mut ys = *y;
        for (i, yi) in ys.iter_mut().enumerate() {
            *yi += h * (0..s).map(|j| A[s][j] * k[j][i]).sum::<f64>();
        }
        k[s] = f(t + C[s] * h, &ys);
    }
    let mut y_new = *y;
    for (i, yi) in y_new.iter_mut().enumerate() {
        *yi += h * (0..STAGES).map(|j| B[j] * k[j][i]).sum::<f64>();
    }
    let mut sum = 0.0;
    for i in 0..N {
        let err = h * (0..STAGES).map(|j| E[j] * k[j][i]).sum::<f64>();
        let scale = atol[i] + rtol * y[i].abs().max(y_new[i].abs());
        let ratio = if scale > 0.0 {
            err / scale
        } else if err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        sum += ratio * ratio;
    }
    Step {
        y: y_new,
        dydt: k[STAGES - 1],
        error: (sum / N as f64).sqrt(),
    }
}

/// Step-size multiplier for the next attempt.
pub fn next_factor(error: f64) -> f64 {
    if error == 0.0 {
        return 5.0;
    }
    (0.9 * error.powf(-0.2)).clamp(0.2, 5.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_fifth_order() {
        let f = |_t: f64, y: &[f64; 1]| [-y[0]];
        let mut errors = Vec::new();
        for h in [0.2, 0.1] {
            let (mut t, mut y) = (0.0, [1.0]);
            let mut d = f(t, &y);
            while t < 1.0 - 1e-12 {
                let s = step(&f, t, &y, &d, h, 1e-6, &[0.0]);
                y = s.y;
                d = s.dydt;
                t += h;
            }
            errors.push((y[0] - (-1.0f64).exp()).abs());
        }
        let order = (errors[0] / errors[1]).log2();
        assert!(order > 4.5, "observed order {order}");
    }

    #[test]
    fn error_estimate_small_for_smooth_problem() {
        let f = |t: f64, _y: &[f64; 1]| [t.cos()];
        let s = step(&f, 0.0, &[0.0], &[1.0], 0.01, 1e-8, &[1e-12]);
        assert!(s.error < 1.0);
        assert!((s.y[0] - 0.01f64.sin()).abs() < 1e-14);
    }
}
