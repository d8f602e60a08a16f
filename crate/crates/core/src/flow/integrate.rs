//! Adaptive Dormand-Prince 5(4) integration with dense output.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{G2Error, Result};

use super::collapse::nearest_equilibrium;
use super::{frame_field, Frame};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Completed,
    /// A coordinate that must stay positive dropped below the floor.
    PositivityExit,
    StepUnderflow,
    MaxSteps,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Status::Completed => "completed",
            Status::PositivityExit => "positivity-exit",
            Status::StepUnderflow => "step-underflow",
            Status::MaxSteps => "max-steps",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct IntegrateOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
    /// Output times; every accepted step is recorded when `None`.
    pub sample_times: Option<Vec<f64>>,
    pub positivity_floor: f64,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_steps: 1_000_000,
            sample_times: None,
            positivity_floor: 1e-14,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub frame: Frame,
    pub times: Vec<f64>,
    pub states: Vec<[f64; 3]>,
    pub status: Status,
    pub accepted_steps: usize,
    pub rejected_steps: usize,
}

impl Trajectory {
    pub fn last(&self) -> (f64, [f64; 3]) {
        (
            *self.times.last().expect("nonempty"),
            *self.states.last().expect("nonempty"),
        )
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// CSV with header `t,c1,c2,c3,frame`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("t,c1,c2,c3,frame\n");
        for (t, y) in self.times.iter().zip(&self.states) {
            s.push_str(&format!(
                "{},{},{},{},{}\n",
                fmt_g12(*t),
                fmt_g12(y[0]),
                fmt_g12(y[1]),
                fmt_g12(y[2]),
                self.frame
            ));
        }
        s
    }
}

/// `%.12g`-style formatting.
pub fn fmt_g12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if !(-5..12).contains(&exp) {
        let s = format!("{:.11e}", v);
        let (mant, e) = s.split_once('e').expect("exponent");
        let mant = trim_zeros(mant);
        let e: i32 = e.parse().expect("integer exponent");
        format!("{mant}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;
const D1: f64 = -12715105075.0 / 11282082432.0;
const D3: f64 = 87487479700.0 / 32700410799.0;
const D4: f64 = -10690763975.0 / 1880347072.0;
const D5: f64 = 701980252875.0 / 199316789632.0;
const D6: f64 = -1453857185.0 / 822651844.0;
const D7: f64 = 69997945.0 / 29380423.0;

type V3 = [f64; 3];

fn axpy(y: &V3, terms: &[(f64, &V3)], h: f64) -> V3 {
    std::array::from_fn(|i| y[i] + h * terms.iter().map(|(a, k)| a * k[i]).sum::<f64>())
}

/// Dense-output coefficients of one step.
struct Dense {
    t0: f64,
    h: f64,
    r: [V3; 5],
}

impl Dense {
    fn eval(&self, t: f64) -> V3 {
        let th = (t - self.t0) / self.h;
        let th1 = 1.0 - th;
        std::array::from_fn(|i| {
            let r = &self.r;
            r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])))
        })
    }
}

/// Raw output of [`dopri5`].
pub struct Solution {
    pub times: Vec<f64>,
    pub states: Vec<V3>,
    pub status: Status,
    pub accepted: usize,
    pub rejected: usize,
}

/// Integrates `y' = f(t, y)` from `t0` to `t_end >= t0`. `admissible` marks
/// states that may be accepted; a step producing an inadmissible state or a
/// field evaluation error is retried with half the step, and integration
/// ends with [`Status::PositivityExit`] once the step underflows that way.
pub fn dopri5<F, G>(mut f: F, admissible: G, t0: f64, y0: V3, t_end: f64, opts: &IntegrateOptions) -> Solution
where
    F: FnMut(f64, &V3) -> Result<V3>,
    G: Fn(&V3) -> bool,
{
    let mut times = Vec::new();
    let mut states = Vec::new();
    let samples = opts.sample_times.clone();
    let mut next_sample = 0usize;
    let mut push_samples_upto = |t_hi: f64, dense: Option<&Dense>, times: &mut Vec<f64>, states: &mut Vec<V3>| {
        if let Some(s) = &samples {
            while next_sample < s.len() && s[next_sample] <= t_hi {
                let ts = s[next_sample];
                let y = match dense {
                    Some(d) => d.eval(ts),
                    None => y0,
                };
                times.push(ts);
                states.push(y);
                next_sample += 1;
            }
        }
    };

    if samples.is_none() {
        times.push(t0);
        states.push(y0);
    } else {
        push_samples_upto(t0, None, &mut times, &mut states);
    }
    fn done(status: Status, accepted: usize, rejected: usize, times: Vec<f64>, states: Vec<V3>) -> Solution {
        Solution {
            times,
            states,
            status,
            accepted,
            rejected,
        }
    }
    if t_end <= t0 {
        return done(Status::Completed, 0, 0, times, states);
    }

    let scale = |a: &V3, b: &V3| -> V3 { std::array::from_fn(|i| opts.abs_tol + opts.rel_tol * a[i].abs().max(b[i].abs())) };
    let mut t = t0;
    let mut y = y0;
    let mut k1 = match f(t, &y) {
        Ok(k) => k,
        Err(_) => return done(Status::StepUnderflow, 0, 0, times, states),
    };
    let mut h = {
        let sc = scale(&y, &y);
        let d0 = (y.iter().zip(&sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / 3.0).sqrt();
        let d1 = (k1.iter().zip(&sc).map(|(a, s)| (a / s).powi(2)).sum::<f64>() / 3.0).sqrt();
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        h0.min(t_end - t0)
    };
    let (mut accepted, mut rejected) = (0usize, 0usize);
    let mut last_err = 1e-4f64;

    loop {
        if accepted + rejected >= opts.max_steps {
            return done(Status::MaxSteps, accepted, rejected, times, states);
        }
        if h < 1e-14 * t.abs().max(1.0) {
            return done(Status::StepUnderflow, accepted, rejected, times, states);
        }
        let h_step = h.min(t_end - t);
        let stages = (|| -> Result<[V3; 7]> {
            let k2 = f(t + C2 * h_step, &axpy(&y, &[(A21, &k1)], h_step))?;
            let k3 = f(t + C3 * h_step, &axpy(&y, &[(A31, &k1), (A32, &k2)], h_step))?;
            let k4 = f(t + C4 * h_step, &axpy(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h_step))?;
            let k5 = f(
                t + C5 * h_step,
                &axpy(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h_step),
            )?;
            let k6 = f(
                t + h_step,
                &axpy(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h_step),
            )?;
            let y1 = axpy(&y, &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)], h_step);
            let k7 = f(t + h_step, &y1)?;
            Ok([k1, k2, k3, k4, k5, k6, k7])
        })();
        let Ok(k) = stages else {
            rejected += 1;
            h = h_step / 2.0;
            if h < 1e-14 * t.abs().max(1.0) {
                return done(Status::PositivityExit, accepted, rejected, times, states);
            }
            continue;
        };
        let y1 = axpy(&y, &[(A71, &k[0]), (A73, &k[2]), (A74, &k[3]), (A75, &k[4]), (A76, &k[5])], h_step);
        if y1.iter().any(|v| !v.is_finite()) || !admissible(&y1) {
            rejected += 1;
            h = h_step / 2.0;
            if h < 1e-14 * t.abs().max(1.0) {
                return done(Status::PositivityExit, accepted, rejected, times, states);
            }
            continue;
        }
        let errv: V3 = std::array::from_fn(|i| {
            h_step * (E1 * k[0][i] + E3 * k[2][i] + E4 * k[3][i] + E5 * k[4][i] + E6 * k[5][i] + E7 * k[6][i])
        });
        let sc = scale(&y, &y1);
        let err = (errv.iter().zip(&sc).map(|(e, s)| (e / s).powi(2)).sum::<f64>() / 3.0).sqrt();
        if err <= 1.0 {
            let dense = Dense {
                t0: t,
                h: h_step,
                r: [
                    y,
                    std::array::from_fn(|i| y1[i] - y[i]),
                    std::array::from_fn(|i| h_step * k[0][i] - (y1[i] - y[i])),
                    std::array::from_fn(|i| (y1[i] - y[i]) - h_step * k[6][i] - (h_step * k[0][i] - (y1[i] - y[i]))),
                    std::array::from_fn(|i| {
                        h_step
                            * (D1 * k[0][i] + D3 * k[2][i] + D4 * k[3][i] + D5 * k[4][i] + D6 * k[5][i] + D7 * k[6][i])
                    }),
                ],
            };
            t += h_step;
            if t_end - t <= 1e-15 * t_end.abs().max(1.0) {
                t = t_end;
            }
            y = y1;
            k1 = k[6];
            accepted += 1;
            if samples.is_some() {
                push_samples_upto(t, Some(&dense), &mut times, &mut states);
            } else {
                times.push(t);
                states.push(y);
            }
            if t >= t_end {
                return done(Status::Completed, accepted, rejected, times, states);
            }
            // PI step control
            let fac = 0.9 * err.max(1e-10).powf(-0.7 / 5.0) * last_err.powf(0.4 / 5.0);
            last_err = err.max(1e-4);
            h = h_step * fac.clamp(0.2, 10.0);
        } else {
            rejected += 1;
            h = h_step * (0.9 * err.powf(-0.2)).clamp(0.2, 1.0);
        }
    }
}

/// Integrates `frame` from `init` over `[0, t_end]`.
pub fn integrate(frame: Frame, init: [f64; 3], t_end: f64, rel_tol: f64) -> Result<Trajectory> {
    let opts = IntegrateOptions {
        rel_tol,
        ..IntegrateOptions::default()
    };
    integrate_with(frame, init, t_end, &opts)
}

pub fn integrate_with(frame: Frame, init: [f64; 3], t_end: f64, opts: &IntegrateOptions) -> Result<Trajectory> {
    if !(1e-12..=1e-3).contains(&opts.rel_tol) {
        return Err(G2Error::domain("rel_tol must lie in [1e-12, 1e-3]"));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(G2Error::domain("t_end must be finite and nonnegative"));
    }
    if init.iter().any(|v| !v.is_finite()) {
        return Err(G2Error::domain("initial state must be finite"));
    }
    let constrained: [bool; 3] = match frame {
        Frame::Mu => {
            if init.iter().any(|v| *v <= 0.0) {
                return Err(G2Error::domain("metric parameters must be positive"));
            }
            [true; 3]
        }
        Frame::Xyz => {
            if init.iter().any(|v| *v < 0.0) {
                return Err(G2Error::domain("xyz coordinates must be nonnegative"));
            }
            init.map(|v| v > 0.0)
        }
        _ => [false; 3],
    };
    if let Some(s) = &opts.sample_times {
        if s.windows(2).any(|w| w[0] > w[1]) || s.iter().any(|v| *v < 0.0 || *v > t_end) {
            return Err(G2Error::domain("sample times must be sorted and lie in [0, t_end]"));
        }
    }
    let floor = opts.positivity_floor;
    let admissible = |y: &V3| (0..3).all(|i| !constrained[i] || y[i] >= floor);
    let sol = dopri5(|_, y| frame_field(frame, y), admissible, 0.0, init, t_end, opts);
    Ok(Trajectory {
        frame,
        times: sol.times,
        states: sol.states,
        status: sol.status,
        accepted_steps: sol.accepted,
        rejected_steps: sol.rejected,
    })
}

/// Final state of one trajectory of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub init: [f64; 3],
    pub terminal: [f64; 3],
    pub t_reached: f64,
    pub status: Status,
    /// Nearest of the finite equilibria `q1, q2, q3` to the terminal point
    /// in `(x, y, z)` coordinates, with its distance.
    pub nearest: Option<(String, f64)>,
}

/// Integrates many initial conditions in parallel.
pub fn sweep(frame: Frame, inits: &[[f64; 3]], t_end: f64, rel_tol: f64) -> Vec<Result<SweepResult>> {
    inits
        .par_iter()
        .map(|init| {
            let traj = integrate(frame, *init, t_end, rel_tol)?;
            let (t, y) = traj.last();
            let xyz = match frame {
                Frame::Xyz => Some(y),
                Frame::Mu => super::field::mu_to_xyz(&y).ok(),
                _ => None,
            };
            Ok(SweepResult {
                init: *init,
                terminal: y,
                t_reached: t,
                status: traj.status,
                nearest: xyz.map(|p| nearest_equilibrium(&p)),
            })
        })
        .collect()
}

/// A regular grid `lo, lo + step, ..., hi` with `n` points per axis.
pub fn grid(lo: [f64; 3], hi: [f64; 3], n: usize) -> Vec<[f64; 3]> {
    let axis = |i: usize| -> Vec<f64> {
        if n <= 1 {
            vec![lo[i]]
        } else {
            (0..n).map(|k| lo[i] + (hi[i] - lo[i]) * k as f64 / (n - 1) as f64).collect()
        }
    };
    let (a, b, c) = (axis(0), axis(1), axis(2));
    let mut out = Vec::with_capacity(a.len() * b.len() * c.len());
    for x in &a {
        for y in &b {
            for z in &c {
                out.push([*x, *y, *z]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_decay_with_dense_output() {
        let opts = IntegrateOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-14,
            sample_times: Some(vec![0.0, 0.37, 1.0, 2.5]),
            ..IntegrateOptions::default()
        };
        let sol = dopri5(|_, y| Ok(y.map(|v| -v)), |_| true, 0.0, [1.0, 2.0, 0.5], 2.5, &opts);
        assert_eq!(sol.status, Status::Completed);
        assert_eq!(sol.times, vec![0.0, 0.37, 1.0, 2.5]);
        for (t, y) in sol.times.iter().zip(&sol.states) {
            assert!((y[0] - (-t).exp()).abs() < 1e-8, "{t} {y:?}");
            assert!((y[1] - 2.0 * (-t).exp()).abs() < 1e-8);
        }
    }

    #[test]
    fn positivity_exit_on_finite_time_collapse() {
        // y' = -1 reaches 0 at t = 1
        let opts = IntegrateOptions::default();
        let sol = dopri5(|_, _| Ok([-1.0, 0.0, 0.0]), |y| y[0] >= 1e-14, 0.0, [1.0, 1.0, 1.0], 5.0, &opts);
        assert_eq!(sol.status, Status::PositivityExit);
        assert!(sol.times.last().unwrap() < &1.0);
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_g12(1.0), "1");
        assert_eq!(fmt_g12(0.1), "0.1");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(-2.5e-7), "-2.5e-07");
        assert_eq!(fmt_g12(123456.0), "123456");
    }
}
