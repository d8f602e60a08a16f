//! The six-dimensional compact part `k = span{X_i, Y_i}` with its Killing
//! inner product and the orthonormal basis `W_i, Z_i`.

use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::element::{g2_bracket, G2Element};
use crate::error::{G2Error, Result};
use crate::exactfield::QF13;

pub type Coords6 = [QF13; 6];

fn zero6() -> Coords6 {
    std::array::from_fn(|_| QF13::zero())
}

fn unit6(i: usize) -> Coords6 {
    let mut c = zero6();
    c[i] = QF13::one();
    c
}

/// `X1 = E21 - E12, X2 = E31 - E13, X3 = E32 - E23, Y_i = e_i - eps_i`.
pub fn compact_basis() -> [G2Element; 6] {
    let x = |i, j| &G2Element::e_mat(i, j) - &G2Element::e_mat(j, i);
    let y = |i| &G2Element::e_vec(i) - &G2Element::eps(i);
    [x(1, 0), x(2, 0), x(2, 1), y(0), y(1), y(2)]
}

/// Coordinates in `(X1, X2, X3, Y1, Y2, Y3)` of an element of `k`, or an error
/// if the element is not in `k`.
pub fn xy_coords(g: &G2Element) -> Result<Coords6> {
    let c: Coords6 = [
        g.mat[1][0].clone(),
        g.mat[2][0].clone(),
        g.mat[2][1].clone(),
        g.vec[0].clone(),
        g.vec[1].clone(),
        g.vec[2].clone(),
    ];
    if from_xy_coords(&c) == *g {
        Ok(c)
    } else {
        Err(G2Error::domain("element does not lie in the compact subalgebra"))
    }
}

pub fn from_xy_coords(c: &Coords6) -> G2Element {
    let basis = compact_basis();
    let mut acc = G2Element::zero();
    for (ci, b) in c.iter().zip(basis.iter()) {
        if !ci.is_zero() {
            acc = &acc + &b.scale(ci);
        }
    }
    acc
}

/// Structure constants `[b_i, b_j] = sum_k c[i][j][k] b_k` of a 6-dim algebra.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub table: Vec<Vec<Coords6>>,
    sparse: Vec<(usize, usize, usize, QF13)>,
}

impl StructureConstants {
    pub fn from_table(table: Vec<Vec<Coords6>>) -> Self {
        let mut sparse = Vec::new();
        for (i, row) in table.iter().enumerate() {
            for (j, coords) in row.iter().enumerate() {
                for (k, c) in coords.iter().enumerate() {
                    if !c.is_zero() {
                        sparse.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        StructureConstants { table, sparse }
    }

    pub fn bracket(&self, u: &Coords6, v: &Coords6) -> Coords6 {
        let mut out = zero6();
        for (i, j, k, c) in &self.sparse {
            if u[*i].is_zero() || v[*j].is_zero() {
                continue;
            }
            out[*k] += &(&u[*i] * &v[*j]) * c;
        }
        out
    }

    /// Gram matrix of `-trace(ad u ad v)` on the basis.
    pub fn negative_killing(&self) -> [[QF13; 6]; 6] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut tr = QF13::zero();
                for k in 0..6 {
                    for l in 0..6 {
                        let a = &self.table[i][l][k];
                        let b = &self.table[j][k][l];
                        if !a.is_zero() && !b.is_zero() {
                            tr += a * b;
                        }
                    }
                }
                -tr
            })
        })
    }
}

/// Sign flips applied after Gram-Schmidt on `(X1, X2, X3, Y1, Y2, Y3)`.
/// Positive leading coefficients already give `W_i = X_i / 2` and the `Z_i`
/// with positive `Y_i` coefficient, so no flip is needed.
pub const GRAM_SCHMIDT_SIGN_FLIPS: [bool; 6] = [false; 6];

struct CompactData {
    xy: StructureConstants,
    killing_xy: [[QF13; 6]; 6],
    /// Rows: `W1, W2, W3, Z1, Z2, Z3` in XY coordinates.
    wz_in_xy: [Coords6; 6],
    wz: StructureConstants,
}

fn killing_inner(g: &[[QF13; 6]; 6], u: &Coords6, v: &Coords6) -> QF13 {
    let mut acc = QF13::zero();
    for i in 0..6 {
        if u[i].is_zero() {
            continue;
        }
        for j in 0..6 {
            if !v[j].is_zero() && !g[i][j].is_zero() {
                acc += &(&u[i] * &g[i][j]) * &v[j];
            }
        }
    }
    acc
}

fn compute() -> CompactData {
    let basis = compact_basis();
    let table: Vec<Vec<Coords6>> = basis
        .iter()
        .map(|a| {
            basis
                .iter()
                .map(|b| xy_coords(&g2_bracket(a, b)).expect("k is closed under the bracket"))
                .collect()
        })
        .collect();
    let xy = StructureConstants::from_table(table);
    let killing_xy = xy.negative_killing();

    let mut ortho: Vec<Coords6> = Vec::with_capacity(6);
    for k in 0..6 {
        let mut v = unit6(k);
        for e in &ortho {
            let c = killing_inner(&killing_xy, &unit6(k), e);
            for i in 0..6 {
                v[i] -= &c * &e[i];
            }
        }
        let n2 = killing_inner(&killing_xy, &v, &v);
        let n = n2.sqrt().expect("norms of the compact basis are squares in Q(sqrt 13)");
        let mut scale = n.inv().expect("nonzero norm");
        if GRAM_SCHMIDT_SIGN_FLIPS[k] {
            scale = -scale;
        }
        for x in v.iter_mut() {
            *x = &*x * &scale;
        }
        ortho.push(v);
    }
    // Gram-Schmidt order is X1, X2, X3, Y1, Y2, Y3 but the Y-derived vectors
    // are named Z1, Z2, Z3 in the same order.
    let wz_in_xy: [Coords6; 6] = std::array::from_fn(|i| ortho[i].clone());

    let wz_table: Vec<Vec<Coords6>> = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let br = xy.bracket(&wz_in_xy[a], &wz_in_xy[b]);
                    std::array::from_fn(|c| killing_inner(&killing_xy, &br, &wz_in_xy[c]))
                })
                .collect()
        })
        .collect();
    CompactData {
        wz: StructureConstants::from_table(wz_table),
        xy,
        killing_xy,
        wz_in_xy,
    }
}

fn data() -> &'static CompactData {
    static DATA: OnceLock<CompactData> = OnceLock::new();
    DATA.get_or_init(compute)
}

/// Structure constants of `k` in the basis `X1, X2, X3, Y1, Y2, Y3`.
pub fn xy_structure() -> &'static StructureConstants {
    &data().xy
}

/// Structure constants of `k` in the orthonormal basis `W1, W2, W3, Z1, Z2, Z3`.
pub fn wz_structure() -> &'static StructureConstants {
    &data().wz
}

/// Gram matrix of `(u, v) = -trace(ad u ad v)` in XY coordinates.
pub fn killing_gram_xy() -> &'static [[QF13; 6]; 6] {
    &data().killing_xy
}

/// `(u, v)` for XY coordinates.
pub fn killing_form(u: &Coords6, v: &Coords6) -> QF13 {
    killing_inner(&data().killing_xy, u, v)
}

/// `W1, W2, W3, Z1, Z2, Z3` expressed in XY coordinates.
pub fn orthonormal_basis() -> &'static [Coords6; 6] {
    &data().wz_in_xy
}

/// A vector of `k` in the orthonormal basis `(W1, W2, W3, Z1, Z2, Z3)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct KVector {
    pub coords: Coords6,
}

impl KVector {
    pub fn new(coords: Coords6) -> Self {
        KVector { coords }
    }

    pub fn zero() -> Self {
        KVector { coords: zero6() }
    }

    /// `W_i`, with `i` in 1..=3.
    pub fn w(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        KVector::new(unit6(i - 1))
    }

    /// `Z_i`, with `i` in 1..=3.
    pub fn z(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        KVector::new(unit6(i + 2))
    }

    /// `X_i`, with `i` in 1..=3.
    pub fn x(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        KVector::from_xy(&unit6(i - 1))
    }

    /// `Y_i`, with `i` in 1..=3.
    pub fn y(i: usize) -> Self {
        assert!((1..=3).contains(&i));
        KVector::from_xy(&unit6(i + 2))
    }

    pub fn from_xy(c: &Coords6) -> Self {
        let d = data();
        KVector::new(std::array::from_fn(|a| killing_inner(&d.killing_xy, c, &d.wz_in_xy[a])))
    }

    pub fn to_xy(&self) -> Coords6 {
        let d = data();
        let mut out = zero6();
        for (c, row) in self.coords.iter().zip(d.wz_in_xy.iter()) {
            if c.is_zero() {
                continue;
            }
            for i in 0..6 {
                out[i] += c * &row[i];
            }
        }
        out
    }

    pub fn to_g2(&self) -> G2Element {
        from_xy_coords(&self.to_xy())
    }

    pub fn bracket(&self, other: &KVector) -> KVector {
        KVector::new(data().wz.bracket(&self.coords, &other.coords))
    }

    /// `(u, v)`; the basis is orthonormal so this is the coordinate dot product.
    pub fn inner(&self, other: &KVector) -> QF13 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, c: &QF13) -> KVector {
        KVector::new(std::array::from_fn(|i| &self.coords[i] * c))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Linear combination `sum c_i v_i`.
    pub fn combination(terms: &[(QF13, KVector)]) -> KVector {
        let mut acc = KVector::zero();
        for (c, v) in terms {
            acc = &acc + &v.scale(c);
        }
        acc
    }
}

impl Add for &KVector {
    type Output = KVector;
    fn add(self, o: &KVector) -> KVector {
        KVector::new(std::array::from_fn(|i| &self.coords[i] + &o.coords[i]))
    }
}

impl Sub for &KVector {
    type Output = KVector;
    fn sub(self, o: &KVector) -> KVector {
        KVector::new(std::array::from_fn(|i| &self.coords[i] - &o.coords[i]))
    }
}

impl Neg for &KVector {
    type Output = KVector;
    fn neg(self) -> KVector {
        KVector::new(std::array::from_fn(|i| -&self.coords[i]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn w1_is_half_x1() {
        assert_eq!(KVector::w(1).to_xy(), {
            let mut c = zero6();
            c[0] = QF13::frac(1, 2);
            c
        });
    }

    #[test]
    fn z1_formula() {
        // Z1 = 3/(2 sqrt13) Y1 - X3/sqrt13
        let z1 = KVector::z(1).to_xy();
        assert_eq!(z1[3], QF13::from_parts(0, 1, 3, 26));
        assert_eq!(z1[2], QF13::from_parts(0, 1, -1, 13));
    }

    #[test]
    fn xy_round_trip() {
        for i in 1..=3 {
            assert_eq!(KVector::from_xy(&KVector::x(i).to_xy()), KVector::x(i));
            assert_eq!(KVector::y(i).to_xy(), unit6(i + 2));
        }
    }

    #[test]
    fn non_compact_elements_are_rejected() {
        assert!(xy_coords(&G2Element::e_mat(0, 1)).is_err());
    }
}
