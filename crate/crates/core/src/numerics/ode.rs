//! Dormand-Prince 5(4) for a single complex unknown.

use super::cform::C64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub rtol: f64,
    pub atol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { rtol: 1e-10, atol: 1e-12 }
    }
}

impl Tolerances {
    pub fn scaled(self, factor: f64) -> Self {
        Self { rtol: self.rtol * factor, atol: self.atol * factor }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Halt {
    Completed,
    /// The step callback asked to stop.
    Stopped,
    MaxSteps,
    StepUnderflow,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Outcome {
    pub t: f64,
    pub y: C64,
    pub halt: Halt,
    pub accepted: usize,
    pub rejected: usize,
    /// Sum of the accepted local error estimates.
    pub error_sum: f64,
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrate `y' = f(t, y)` from `t0` to `t1 > t0`. `on_step(t, y)` runs after
/// every accepted step and returns `false` to stop.
pub fn dopri5<Err>(
    mut f: impl FnMut(f64, C64) -> Result<C64, Err>,
    t0: f64,
    t1: f64,
    y0: C64,
    tol: Tolerances,
    max_steps: usize,
    mut on_step: impl FnMut(f64, C64) -> bool,
) -> Result<Outcome, Err> {
    let span = t1 - t0;
    let mut out = Outcome {
        t: t0,
        y: y0,
        halt: Halt::Completed,
        accepted: 0,
        rejected: 0,
        error_sum: 0.0,
    };
    if span <= 0.0 {
        return Ok(out);
    }
    let mut h = span * 1e-3;
    let mut k = [C64::new(0.0, 0.0); 7];
    k[0] = f(t0, y0)?;
    let (mut t, mut y) = (t0, y0);
    while t < t1 {
        if out.accepted + out.rejected >= max_steps {
            out.halt = Halt::MaxSteps;
            break;
        }
        if h < span * 1e-14 {
            out.halt = Halt::StepUnderflow;
            break;
        }
        let last = t + h >= t1;
        if last {
            h = t1 - t;
        }
        for s in 1..7 {
            let mut acc = y;
            for j in 0..s {
                acc += k[j] * (A[s][j] * h);
            }
            k[s] = f(t + C[s] * h, acc)?;
        }
        let mut y_new = y;
        for j in 0..6 {
            y_new += k[j] * (A[6][j] * h);
        }
        let mut e = C64::new(0.0, 0.0);
        for j in 0..7 {
            e += k[j] * (E[j] * h);
        }
        let scale = tol.atol + tol.rtol * y.norm().max(y_new.norm());
        let err = e.norm() / scale;
        if err <= 1.0 && err.is_finite() && y_new.is_finite() {
            t = if last { t1 } else { t + h };
            y = y_new;
            k[0] = k[6];
            out.accepted += 1;
            out.error_sum += e.norm();
            out.t = t;
            out.y = y;
            if !on_step(t, y) {
                out.halt = Halt::Stopped;
                return Ok(out);
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * libm::pow(err, -0.2)).clamp(0.2, 5.0) };
            h *= fac;
        } else {
            out.rejected += 1;
            let fac = if err.is_finite() { (0.9 * libm::pow(err, -0.2)).clamp(0.1, 0.9) } else { 0.1 };
            h *= fac;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential() {
        let i = C64::new(0.0, 1.0);
        let r: Result<Outcome, ()> = dopri5(
            |_, y| Ok(i * y),
            0.0,
            2.0 * core::f64::consts::PI,
            C64::new(1.0, 0.0),
            Tolerances::default(),
            100_000,
            |_, _| true,
        );
        let o = r.unwrap();
        assert_eq!(o.halt, Halt::Completed);
        assert!((o.y - C64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn errors_propagate() {
        let r: Result<Outcome, &str> = dopri5(
            |t, y| if t > 0.5 { Err("stop") } else { Ok(y) },
            0.0,
            1.0,
            C64::new(1.0, 0.0),
            Tolerances::default(),
            1000,
            |_, _| true,
        );
        assert_eq!(r.unwrap_err(), "stop");
    }

    #[test]
    fn callback_stops() {
        let o: Outcome = dopri5::<()>(
            |_, _| Ok(C64::new(1.0, 0.0)),
            0.0,
            10.0,
            C64::new(0.0, 0.0),
            Tolerances::default(),
            1000,
            |_, y| y.re < 3.0,
        )
        .unwrap();
        assert_eq!(o.halt, Halt::Stopped);
        assert!(o.y.re >= 3.0);
    }
}
