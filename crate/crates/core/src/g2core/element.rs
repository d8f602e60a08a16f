use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{G2Error, Result};
use crate::exactfield::QF13;

pub type Vec3 = [QF13; 3];

fn zero3() -> Vec3 {
    [QF13::zero(), QF13::zero(), QF13::zero()]
}

fn unit3(i: usize) -> Vec3 {
    let mut v = zero3();
    v[i] = QF13::one();
    v
}

/// Cross product; it realizes both `u ^ v -> covector` and `a ^ b -> vector`
/// through the standard volume form.
fn cross(u: &Vec3, v: &Vec3) -> Vec3 {
    [
        &u[1] * &v[2] - &u[2] * &v[1],
        &u[2] * &v[0] - &u[0] * &v[2],
        &u[0] * &v[1] - &u[1] * &v[0],
    ]
}

/// The covector `w -> det[u v w]`.
pub fn wedge_t(u: &Vec3, v: &Vec3) -> Vec3 {
    cross(u, v)
}

/// The vector `S(a ^ b)` characterized by `a ^ b ^ c = c(S(a ^ b)) vol*`.
pub fn wedge_s(a: &Vec3, b: &Vec3) -> Vec3 {
    cross(a, b)
}

/// An element `X + v + a` of `sl(3) + R^3 + (R^3)*`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct G2Element {
    pub mat: [[QF13; 3]; 3],
    pub vec: Vec3,
    pub cov: Vec3,
}

impl G2Element {
    pub fn zero() -> Self {
        G2Element {
            mat: [zero3(), zero3(), zero3()],
            vec: zero3(),
            cov: zero3(),
        }
    }

    /// Checked constructor; the matrix part must be traceless.
    pub fn new(mat: [[QF13; 3]; 3], vec: Vec3, cov: Vec3) -> Result<Self> {
        let tr = &mat[0][0] + &mat[1][1] + &mat[2][2];
        if !tr.is_zero() {
            return Err(G2Error::domain(format!("matrix part has trace {tr}")));
        }
        Ok(G2Element { mat, vec, cov })
    }

    /// Elementary matrix `E_ij` (zero-based indices, `i != j`).
    pub fn e_mat(i: usize, j: usize) -> Self {
        assert!(i != j, "E_ii is not traceless");
        let mut g = Self::zero();
        g.mat[i][j] = QF13::one();
        g
    }

    /// Diagonal element `diag(d0, d1, d2)`; panics unless traceless.
    pub fn diag(d: [i64; 3]) -> Self {
        assert_eq!(d.iter().sum::<i64>(), 0, "diagonal must be traceless");
        let mut g = Self::zero();
        for (i, x) in d.iter().enumerate() {
            g.mat[i][i] = QF13::from_int(*x);
        }
        g
    }

    /// Standard vector `e_i`.
    pub fn e_vec(i: usize) -> Self {
        let mut g = Self::zero();
        g.vec = unit3(i);
        g
    }

    /// Dual covector `eps_i`.
    pub fn eps(i: usize) -> Self {
        let mut g = Self::zero();
        g.cov = unit3(i);
        g
    }

    pub fn is_zero(&self) -> bool {
        self.flatten().iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &QF13) -> Self {
        let mut g = self.clone();
        for row in g.mat.iter_mut() {
            for x in row.iter_mut() {
                *x = &*x * c;
            }
        }
        for x in g.vec.iter_mut().chain(g.cov.iter_mut()) {
            *x = &*x * c;
        }
        g
    }

    /// Coordinates in the 15 slots (9 matrix, 3 vector, 3 covector).
    pub fn flatten(&self) -> Vec<QF13> {
        self.mat
            .iter()
            .flatten()
            .chain(self.vec.iter())
            .chain(self.cov.iter())
            .cloned()
            .collect()
    }

    pub fn bracket(&self, other: &Self) -> Self {
        g2_bracket(self, other)
    }
}

impl Add for &G2Element {
    type Output = G2Element;
    fn add(self, o: &G2Element) -> G2Element {
        let mut g = self.clone();
        for i in 0..3 {
            for j in 0..3 {
                g.mat[i][j] += &o.mat[i][j];
            }
            g.vec[i] += &o.vec[i];
            g.cov[i] += &o.cov[i];
        }
        g
    }
}

impl Sub for &G2Element {
    type Output = G2Element;
    fn sub(self, o: &G2Element) -> G2Element {
        self + &(-o)
    }
}

impl Neg for &G2Element {
    type Output = G2Element;
    fn neg(self) -> G2Element {
        self.scale(&QF13::from_int(-1))
    }
}

fn mat_mul(a: &[[QF13; 3]; 3], b: &[[QF13; 3]; 3]) -> [[QF13; 3]; 3] {
    let mut out = [zero3(), zero3(), zero3()];
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = QF13::zero();
            for k in 0..3 {
                if !a[i][k].is_zero() && !b[k][j].is_zero() {
                    acc += &a[i][k] * &b[k][j];
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// `X v`.
fn mat_vec(x: &[[QF13; 3]; 3], v: &Vec3) -> Vec3 {
    let mut out = zero3();
    for i in 0..3 {
        for k in 0..3 {
            if !x[i][k].is_zero() && !v[k].is_zero() {
                out[i] += &x[i][k] * &v[k];
            }
        }
    }
    out
}

/// The covector `a o X`, i.e. the row vector `a X`.
fn cov_mat(a: &Vec3, x: &[[QF13; 3]; 3]) -> Vec3 {
    let mut out = zero3();
    for j in 0..3 {
        for i in 0..3 {
            if !a[i].is_zero() && !x[i][j].is_zero() {
                out[j] += &a[i] * &x[i][j];
            }
        }
    }
    out
}

/// `[v, a] = (v^i a^j) - a(v)/3 I`.
fn vec_cov(v: &Vec3, a: &Vec3) -> [[QF13; 3]; 3] {
    let pairing: QF13 = v.iter().zip(a).map(|(x, y)| x * y).sum();
    let third = &pairing * &QF13::frac(1, 3);
    let mut out = [zero3(), zero3(), zero3()];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = &v[i] * &a[j];
        }
        out[i][i] -= &third;
    }
    out
}

fn is_zero3(v: &Vec3) -> bool {
    v.iter().all(Zero::is_zero)
}

fn is_zero_mat(m: &[[QF13; 3]; 3]) -> bool {
    m.iter().all(is_zero3)
}

/// Lie bracket of split g2 on `sl(3) + R^3 + (R^3)*`, extended bilinearly and
/// skew-symmetrically from the rules on homogeneous components:
///
/// * `[X, Y] = XY - YX`
/// * `[X, v] = Xv`
/// * `[X, a] = -a o X`
/// * `[u, v] = -4/3 T(u ^ v)`
/// * `[a, b] = 4/3 S(a ^ b)`
/// * `[v, a] = (v^i a^j) - a(v)/3 I`
pub fn g2_bracket(p: &G2Element, q: &G2Element) -> G2Element {
    let mut out = G2Element::zero();
    let (px, pv, pa) = (&p.mat, &p.vec, &p.cov);
    let (qx, qv, qa) = (&q.mat, &q.vec, &q.cov);
    let four_thirds = QF13::frac(4, 3);

    let add_mat = |out: &mut [[QF13; 3]; 3], m: [[QF13; 3]; 3], sign: i32| {
        for i in 0..3 {
            for j in 0..3 {
                if sign > 0 {
                    out[i][j] += &m[i][j];
                } else {
                    out[i][j] -= &m[i][j];
                }
            }
        }
    };
    let add_vec = |out: &mut Vec3, v: Vec3, c: &QF13| {
        for i in 0..3 {
            if !v[i].is_zero() {
                out[i] += &v[i] * c;
            }
        }
    };
    let one = QF13::one();
    let minus_one = QF13::from_int(-1);

    if !is_zero_mat(px) && !is_zero_mat(qx) {
        add_mat(&mut out.mat, mat_mul(px, qx), 1);
        add_mat(&mut out.mat, mat_mul(qx, px), -1);
    }
    // [X, v] and [v, X] = -Xv
    if !is_zero_mat(px) && !is_zero3(qv) {
        add_vec(&mut out.vec, mat_vec(px, qv), &one);
    }
    if !is_zero3(pv) && !is_zero_mat(qx) {
        add_vec(&mut out.vec, mat_vec(qx, pv), &minus_one);
    }
    // [X, a] = -aX and [a, X] = aX
    if !is_zero_mat(px) && !is_zero3(qa) {
        add_vec(&mut out.cov, cov_mat(qa, px), &minus_one);
    }
    if !is_zero3(pa) && !is_zero_mat(qx) {
        add_vec(&mut out.cov, cov_mat(pa, qx), &one);
    }
    if !is_zero3(pv) && !is_zero3(qv) {
        add_vec(&mut out.cov, wedge_t(pv, qv), &-four_thirds.clone());
    }
    if !is_zero3(pa) && !is_zero3(qa) {
        add_vec(&mut out.vec, wedge_s(pa, qa), &four_thirds);
    }
    // [v, a] and [a, v] = -[v, a]
    if !is_zero3(pv) && !is_zero3(qa) {
        add_mat(&mut out.mat, vec_cov(pv, qa), 1);
    }
    if !is_zero3(pa) && !is_zero3(qv) {
        add_mat(&mut out.mat, vec_cov(qv, pa), -1);
    }
    out
}

/// The 14 standard basis elements: `E_ij` (i != j), `H1 = diag(1,-1,0)`,
/// `H2 = diag(0,1,-1)`, `e_i`, `eps_i`.
pub fn standard_basis() -> Vec<G2Element> {
    let mut b = Vec::with_capacity(14);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                b.push(G2Element::e_mat(i, j));
            }
        }
    }
    b.push(G2Element::diag([1, -1, 0]));
    b.push(G2Element::diag([0, 1, -1]));
    for i in 0..3 {
        b.push(G2Element::e_vec(i));
    }
    for i in 0..3 {
        b.push(G2Element::eps(i));
    }
    b
}
