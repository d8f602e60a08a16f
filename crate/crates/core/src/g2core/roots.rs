use std::fmt;

use serde::{Deserialize, Serialize};

use super::element::G2Element;
use crate::error::{G2Error, Result};
use crate::exactfield::{in_span, QF13};

/// A root, stored as integer coefficients `(c1, c2, c3)` of `c1 l1 + c2 l2 + c3 l3`
/// where `l_i` reads the i-th diagonal entry of the Cartan subalgebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Root(pub [i64; 3]);

impl Root {
    /// Value on `diag(a1, a2, a3)`.
    pub fn eval(&self, d: &[QF13; 3]) -> QF13 {
        self.0
            .iter()
            .zip(d)
            .map(|(c, a)| QF13::from_int(*c) * a)
            .sum()
    }

    fn eval_int(&self, d: [i64; 3]) -> i64 {
        self.0.iter().zip(d).map(|(c, a)| c * a).sum()
    }

    /// Coordinates `(n1, n2)` with `root = n1 a1 + n2 a2` for the simple roots
    /// `a1 = l1 - l2`, `a2 = l2`, read off from the values on
    /// `H1 = diag(1,-1,0)` and `H2 = diag(0,1,-1)`.
    pub fn simple_coordinates(&self) -> (i64, i64) {
        let h1 = self.eval_int([1, -1, 0]);
        let h2 = self.eval_int([0, 1, -1]);
        (h1 + h2, h1 + 2 * h2)
    }

    pub fn neg(&self) -> Root {
        Root([-self.0[0], -self.0[1], -self.0[2]])
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("+l{}", i + 1)),
                -1 => parts.push(format!("-l{}", i + 1)),
                c => parts.push(format!("{:+}l{}", c, i + 1)),
            }
        }
        let s = parts.concat();
        write!(f, "{}", s.strip_prefix('+').unwrap_or(&s))
    }
}

/// A root together with a spanning vector of its root space.
#[derive(Clone, Debug, Serialize)]
pub struct RootSpace {
    pub root: Root,
    pub vector: G2Element,
    pub positive: bool,
}

/// Roots of split g2 relative to the diagonal Cartan subalgebra.
#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    pub roots: Vec<RootSpace>,
    pub simple_roots: [Root; 2],
    pub cartan: [G2Element; 2],
}

pub fn root_datum() -> RootDatum {
    let mut roots = Vec::with_capacity(12);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let mut c = [0; 3];
                c[i] = 1;
                c[j] = -1;
                roots.push(RootSpace {
                    root: Root(c),
                    vector: G2Element::e_mat(i, j),
                    positive: i < j,
                });
            }
        }
    }
    for i in 0..3 {
        let mut c = [0; 3];
        c[i] = 1;
        roots.push(RootSpace {
            root: Root(c),
            vector: G2Element::e_vec(i),
            positive: i < 2,
        });
        c[i] = -1;
        roots.push(RootSpace {
            root: Root(c),
            vector: G2Element::eps(i),
            positive: i == 2,
        });
    }
    RootDatum {
        roots,
        simple_roots: [Root([1, -1, 0]), Root([0, 1, 0])],
        cartan: [G2Element::diag([1, -1, 0]), G2Element::diag([0, 1, -1])],
    }
}

/// The three proper subsets of the simple roots, one per real flag manifold.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FlagId {
    Empty,
    Alpha1,
    Alpha2,
}

impl FlagId {
    pub const ALL: [FlagId; 3] = [FlagId::Empty, FlagId::Alpha1, FlagId::Alpha2];

    /// Which simple roots belong to the subset.
    pub fn contains(&self, simple_index: usize) -> bool {
        matches!((self, simple_index), (FlagId::Alpha1, 0) | (FlagId::Alpha2, 1))
    }

    pub fn name(&self) -> &'static str {
        match self {
            FlagId::Empty => "empty",
            FlagId::Alpha1 => "a1",
            FlagId::Alpha2 => "a2",
        }
    }
}

impl fmt::Display for FlagId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for FlagId {
    type Err = G2Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "empty" | "e" | "0" | "none" => Ok(FlagId::Empty),
            "a1" | "alpha1" => Ok(FlagId::Alpha1),
            "a2" | "alpha2" => Ok(FlagId::Alpha2),
            _ => Err(G2Error::parse(s, "expected one of empty, a1, a2")),
        }
    }
}

/// Whether a root is a nonnegative or nonpositive combination of the simple
/// roots in `theta` only.
fn in_theta_span(root: &Root, theta: FlagId) -> bool {
    let (n1, n2) = root.simple_coordinates();
    (n1 == 0 || theta.contains(0)) && (n2 == 0 || theta.contains(1))
}

/// Generators of the parabolic subalgebra: the Cartan subalgebra, all
/// positive root spaces, and the negative root spaces spanned by `theta`.
pub fn parabolic_subalgebra(theta: FlagId) -> Vec<G2Element> {
    let rd = root_datum();
    let mut gens: Vec<G2Element> = rd.cartan.to_vec();
    for rs in &rd.roots {
        if rs.positive || in_theta_span(&rs.root, theta) {
            gens.push(rs.vector.clone());
        }
    }
    gens
}

/// Exact closure check: every bracket of generators lies in their span.
pub fn is_subalgebra(gens: &[G2Element]) -> bool {
    let flat: Vec<Vec<QF13>> = gens.iter().map(G2Element::flatten).collect();
    gens.iter().all(|a| {
        gens.iter()
            .all(|b| in_span(&flat, &a.bracket(b).flatten()))
    })
}
