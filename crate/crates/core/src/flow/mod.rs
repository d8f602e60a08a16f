//! The homogeneous Ricci flow on the flag manifold of the short root: the
//! metric system, the rescaled polynomial system, charts, equilibria,
//! Darboux polynomials, integration and collapse.

pub mod charts;
pub mod collapse;
pub mod darboux;
pub mod eigen;
pub mod equilibria;
pub mod field;
pub mod integrate;
pub mod poly;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{G2Error, Result};

pub use charts::{chart_equilibria, chart_field, chart_system, Chart};
pub use collapse::{collapse_diagnostics, CollapseReport};
pub use darboux::{darboux_search, darboux_verify, DarbouxPair, DarbouxSearch};
pub use eigen::{EigenData, Stability};
pub use equilibria::{finite_equilibria, linearize, Equilibrium};
pub use field::{mu_field, mu_to_xyz, poly_field, xyz_to_mu};
pub use integrate::{integrate, integrate_with, IntegrateOptions, Status, Trajectory};
pub use poly::{Poly, PolyField};

/// Coordinate system of a flow state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Frame {
    /// Metric parameters `(mu1, mu2, mu3)` in the original time.
    Mu,
    /// Rescaled coordinates `(x, y, z)` in the rescaled time `tau`.
    Xyz,
    Kappa1,
    #[serde(rename = "U1")]
    U1,
    #[serde(rename = "U2")]
    U2,
    #[serde(rename = "U3")]
    U3,
}

impl Frame {
    pub const ALL: [Frame; 6] = [Frame::Mu, Frame::Xyz, Frame::Kappa1, Frame::U1, Frame::U2, Frame::U3];

    pub fn variables(self) -> [&'static str; 3] {
        match self {
            Frame::Mu => ["mu1", "mu2", "mu3"],
            Frame::Xyz => ["x", "y", "z"],
            other => other.chart().expect("chart frame").variables(),
        }
    }

    pub fn chart(self) -> Option<Chart> {
        match self {
            Frame::Kappa1 => Some(Chart::Kappa1),
            Frame::U1 => Some(Chart::U1),
            Frame::U2 => Some(Chart::U2),
            Frame::U3 => Some(Chart::U3),
            Frame::Mu | Frame::Xyz => None,
        }
    }

    /// The polynomial field of the frame; the metric frame has none.
    pub fn polynomial_field(self) -> Option<&'static PolyField> {
        match self {
            Frame::Mu => None,
            Frame::Xyz => Some(poly_field()),
            other => other.chart().map(chart_system),
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Frame::Mu => "mu",
            Frame::Xyz => "xyz",
            Frame::Kappa1 => "kappa1",
            Frame::U1 => "U1",
            Frame::U2 => "U2",
            Frame::U3 => "U3",
        };
        f.write_str(s)
    }
}

impl FromStr for Frame {
    type Err = G2Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mu" => Ok(Frame::Mu),
            "xyz" => Ok(Frame::Xyz),
            other => other
                .parse::<Chart>()
                .map(Chart::frame)
                .map_err(|_| G2Error::parse(s, "expected one of mu, xyz, kappa1, U1, U2, U3")),
        }
    }
}

/// A point together with its coordinate system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlowState {
    pub coords: [f64; 3],
    pub frame: Frame,
}

impl FlowState {
    pub fn new(frame: Frame, coords: [f64; 3]) -> Self {
        FlowState { coords, frame }
    }

    /// Right-hand side of the frame's system at this state.
    pub fn velocity(&self) -> Result<[f64; 3]> {
        frame_field(self.frame, &self.coords)
    }
}

/// Right-hand side of the system in `frame`. The metric frame is defined on
/// the open positive octant only.
pub fn frame_field(frame: Frame, s: &[f64; 3]) -> Result<[f64; 3]> {
    match frame {
        Frame::Mu => field::mu_field(s),
        Frame::Xyz => Ok(field::poly_field_at(s)),
        other => Ok(chart_field(other.chart().expect("chart frame"), s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_names_round_trip() {
        for f in Frame::ALL {
            assert_eq!(f.to_string().parse::<Frame>().unwrap(), f);
        }
        assert_eq!("u2".parse::<Frame>().unwrap(), Frame::U2);
        assert!("polar".parse::<Frame>().is_err());
    }

    #[test]
    fn metric_frame_rejects_boundary() {
        assert!(frame_field(Frame::Mu, &[1.0, 0.0, 1.0]).is_err());
        assert!(frame_field(Frame::Xyz, &[1.0, 0.0, -1.0]).is_ok());
    }
}
