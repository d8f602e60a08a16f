//! Long-time behaviour of metrics along the flow.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{G2Error, Result};

use super::equilibria::q3_point;
use super::field::{alpha_f64, beta_f64, mu_to_xyz, xyz_to_mu};
use super::integrate::Trajectory;
use super::Frame;

/// The finite equilibria `q1 = (2/alpha, 0, 0)`, `q2 = (0, 2/beta, 0)` and
/// the saddle `q3` of the polynomial field.
pub fn reference_equilibria() -> &'static [(&'static str, [f64; 3]); 3] {
    static PTS: OnceLock<[(&'static str, [f64; 3]); 3]> = OnceLock::new();
    PTS.get_or_init(|| {
        let q3 = q3_point().expect("Newton iteration for q3 converges");
        [
            ("q1", [2.0 / alpha_f64(), 0.0, 0.0]),
            ("q2", [0.0, 2.0 / beta_f64(), 0.0]),
            ("q3", [q3[0], q3[1], 0.0]),
        ]
    })
}

pub fn nearest_equilibrium(p: &[f64; 3]) -> (String, f64) {
    reference_equilibria()
        .iter()
        .map(|(name, q)| {
            let d = (0..3).map(|i| (p[i] - q[i]).powi(2)).sum::<f64>().sqrt();
            (name.to_string(), d)
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("three equilibria")
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapseReport {
    pub samples: usize,
    pub initial_mu: [f64; 3],
    pub terminal_mu: [f64; 3],
    pub terminal_xyz: [f64; 3],
    /// Per-component: non-increasing along all samples.
    pub non_increasing: [bool; 3],
    pub mu1_strictly_decreasing: bool,
    pub z_strictly_decreasing: bool,
    /// Threshold ratio relative to the initial value.
    pub threshold: f64,
    pub collapsed: [bool; 3],
    pub nearest: String,
    pub nearest_distance: f64,
}

pub const DEFAULT_COLLAPSE_RATIO: f64 = 1e-3;

pub fn collapse_diagnostics(traj: &Trajectory) -> Result<CollapseReport> {
    collapse_diagnostics_with(traj, DEFAULT_COLLAPSE_RATIO)
}

/// Monotonicity, collapse flags and omega-limit candidate of a trajectory in
/// the `mu` frame or in the `xyz` frame.
pub fn collapse_diagnostics_with(traj: &Trajectory, threshold: f64) -> Result<CollapseReport> {
    if traj.states.is_empty() {
        return Err(G2Error::domain("empty trajectory"));
    }
    let (mus, xyzs): (Vec<[f64; 3]>, Vec<[f64; 3]>) = match traj.frame {
        Frame::Mu => {
            let x = traj.states.iter().map(mu_to_xyz).collect::<Result<Vec<_>>>()?;
            (traj.states.clone(), x)
        }
        Frame::Xyz => {
            let m = traj.states.iter().map(xyz_to_mu).collect::<Result<Vec<_>>>()?;
            (m, traj.states.clone())
        }
        other => {
            return Err(G2Error::domain(format!(
                "collapse diagnostics need a mu or xyz trajectory, got {other}"
            )))
        }
    };
    let non_increasing: [bool; 3] = std::array::from_fn(|i| mus.windows(2).all(|w| w[1][i] <= w[0][i]));
    let strictly = |v: &[[f64; 3]], i: usize| v.windows(2).all(|w| w[1][i] < w[0][i]);
    let initial = mus[0];
    let terminal = *mus.last().expect("nonempty");
    let terminal_xyz = *xyzs.last().expect("nonempty");
    let (nearest, nearest_distance) = nearest_equilibrium(&terminal_xyz);
    Ok(CollapseReport {
        samples: mus.len(),
        initial_mu: initial,
        terminal_mu: terminal,
        terminal_xyz,
        non_increasing,
        mu1_strictly_decreasing: strictly(&mus, 0),
        z_strictly_decreasing: strictly(&xyzs, 2),
        threshold,
        collapsed: std::array::from_fn(|i| terminal[i] < threshold * initial[i]),
        nearest,
        nearest_distance,
    })
}
