//! The split real form of g2 realized on `sl(3) + R^3 + (R^3)*`, its root
//! data, parabolic subalgebras and compact part.

mod compact;
mod element;
mod roots;

pub use compact::{
    compact_basis, from_xy_coords, killing_form, killing_gram_xy, orthonormal_basis, wz_structure,
    xy_coords, xy_structure, Coords6, KVector, StructureConstants, GRAM_SCHMIDT_SIGN_FLIPS,
};
pub use element::{g2_bracket, standard_basis, wedge_s, wedge_t, G2Element, Vec3};
pub use roots::{
    is_subalgebra, parabolic_subalgebra, root_datum, FlagId, Root, RootDatum, RootSpace,
};

use crate::exactfield::QF13;

/// Jacobi defect `[a,[b,c]] + [b,[c,a]] + [c,[a,b]]`.
pub fn jacobiator(a: &G2Element, b: &G2Element, c: &G2Element) -> G2Element {
    let t1 = g2_bracket(a, &g2_bracket(b, c));
    let t2 = g2_bracket(b, &g2_bracket(c, a));
    let t3 = g2_bracket(c, &g2_bracket(a, b));
    &(&t1 + &t2) + &t3
}

/// Structure constants of g2 on [`standard_basis`], as `(i, j, k, c)` with
/// `[b_i, b_j] = sum_k c b_k`; zero entries omitted.
pub fn g2_structure_constants() -> Vec<(usize, usize, usize, QF13)> {
    let basis = standard_basis();
    let mut out = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let br = g2_bracket(a, b);
            for (k, c) in standard_coords(&br).into_iter().enumerate() {
                if !num_traits::Zero::is_zero(&c) {
                    out.push((i, j, k, c));
                }
            }
        }
    }
    out
}

/// Coordinates in [`standard_basis`]: six off-diagonal entries, then `H1`,
/// `H2` (from the diagonal), then the vector and covector parts.
pub fn standard_coords(g: &G2Element) -> Vec<QF13> {
    let mut c = Vec::with_capacity(14);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                c.push(g.mat[i][j].clone());
            }
        }
    }
    // diag(d0, d1, d2) = d0 H1 + (d0 + d1) H2 when traceless
    c.push(g.mat[0][0].clone());
    c.push(&g.mat[0][0] + &g.mat[1][1]);
    c.extend(g.vec.iter().cloned());
    c.extend(g.cov.iter().cloned());
    c
}
