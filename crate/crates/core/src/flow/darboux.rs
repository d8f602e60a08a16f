//! Darboux polynomials of the polynomial field and an exact, complete search
//! for them in low degree.
//!
//! The search relies on the shape of the field `X = (x A, y B, z C)` with
//! `A, B, C` free of `z`:
//!
//! * If `X . grad f = k f`, comparing the top powers of `z` shows that `k` is
//!   free of `z`; comparing lowest degrees shows that `k(0) = 0`.
//! * Writing `f = sum_c z^c g_c(x, y)`, every nonzero layer `g_c` is a Darboux
//!   polynomial of the planar field `Y = (x A, y B)` with cofactor `k - c C`.
//! * `Y = Y2 + Y3` splits into homogeneous parts of degree 2 and 3. The top
//!   and bottom homogeneous parts of a planar Darboux polynomial are Darboux
//!   polynomials of `Y3` and `Y2`, and a homogeneous Darboux polynomial of a
//!   homogeneous planar field `V` factors into invariant lines through the
//!   origin, each dividing `x V2 - y V1`.
//!
//! Hence every admissible cofactor is `k1 + k2 + c C`, where `k1` and `k2`
//! come from products of the finitely many invariant lines of `Y2` and `Y3`.
//! For each such `k` the Darboux polynomials of degree `<= N` form the kernel
//! of a linear map, computed exactly.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{G2Error, Result};
use crate::exactfield::{linalg, QF13};

use super::eigen::quadratic_roots_exact;
use super::field::poly_field;
use super::poly::{grlex, lie_derivative, Monomial, Poly, PolyField};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxPair {
    pub f: Poly,
    pub k: Poly,
}

impl DarbouxPair {
    pub fn new(f: Poly, k: Poly) -> Self {
        DarbouxPair { f, k }
    }
}

impl fmt::Display for DarbouxPair {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "f = {}, k = {}", self.f, self.k)
    }
}

impl Serialize for DarbouxPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DarbouxPair", 3)?;
        st.serialize_field("f", &self.f.to_string())?;
        st.serialize_field("k", &self.k.to_string())?;
        st.serialize_field("degree", &self.f.degree().unwrap_or(0))?;
        st.end()
    }
}

/// `(grad f) . X - k f` for the polynomial field.
pub fn darboux_residual(pair: &DarbouxPair) -> Poly {
    darboux_residual_for(pair, poly_field())
}

pub fn darboux_residual_for(pair: &DarbouxPair, field: &PolyField) -> Poly {
    &lie_derivative(&pair.f, field) - &(&pair.k * &pair.f)
}

/// Exact test of `(grad f) . X = k f`.
pub fn darboux_verify(pair: &DarbouxPair) -> bool {
    darboux_residual(pair).is_zero()
}

#[derive(Clone, Debug, Serialize)]
pub struct DarbouxSearch {
    pub max_degree: u32,
    pub pairs: Vec<DarbouxPair>,
    /// Number of distinct cofactors examined.
    pub candidates_tested: usize,
    /// Kernel dimension for each cofactor with a nonconstant solution.
    pub kernel_dims: Vec<usize>,
    /// True when the candidate cofactors provably cover every Darboux
    /// polynomial of degree `<= max_degree`.
    pub complete: bool,
}

fn monomials_up_to(n: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for d in 0..=n {
        for a in (0..=d).rev() {
            for b in (0..=d - a).rev() {
                out.push([a, b, d - a - b]);
            }
        }
    }
    out
}

fn make_monic(p: &Poly) -> Poly {
    match p.leading_term() {
        Some((_, c)) => p.scale(&c.inv().expect("nonzero leading coefficient")),
        None => Poly::zero(),
    }
}

/// Distinct invariant lines (and irreducible quadratics) through the origin
/// of a homogeneous planar field `(v1, v2)` in the variables `x, y`.
pub fn invariant_lines(v1: &Poly, v2: &Poly) -> Result<Vec<Poly>> {
    let (x, y) = (Poly::var(0), Poly::var(1));
    let form = &(&x * v2) - &(&y * v1);
    if form.is_zero() {
        return Err(G2Error::domain("radial field: every line is invariant"));
    }
    let xs = form.terms().map(|(m, _)| m[0]).min().unwrap_or(0);
    let ys = form.terms().map(|(m, _)| m[1]).min().unwrap_or(0);
    let rest = form.div_monomial(&[xs, ys, 0]).expect("common monomial factor");
    let mut out = Vec::new();
    if xs > 0 {
        out.push(x.clone());
    }
    if ys > 0 {
        out.push(y.clone());
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        1 => out.push(make_monic(&rest)),
        2 => {
            let a = rest.coeff(&[2, 0, 0]);
            let b = rest.coeff(&[1, 1, 0]).checked_div(&a)?;
            let c = rest.coeff(&[0, 2, 0]).checked_div(&a)?;
            match quadratic_roots_exact(&b, &c) {
                Some([r1, r2]) => {
                    out.push(&x - &y.scale(&r1));
                    if r2 != r1 {
                        out.push(&x - &y.scale(&r2));
                    }
                }
                None => out.push(make_monic(&rest)),
            }
        }
        _ => return Err(G2Error::domain("binary form of degree > 2 left after removing axes")),
    }
    Ok(out)
}

/// All products of `factors` (with repetition) of total degree `n`.
fn products_of_degree(factors: &[Poly], n: u32) -> Vec<Poly> {
    fn rec(factors: &[Poly], start: usize, left: u32, acc: Poly, out: &mut Vec<Poly>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..factors.len() {
            let d = factors[i].degree().unwrap_or(0);
            if d >= 1 && d <= left {
                rec(factors, i, left - d, &acc * &factors[i], out);
            }
        }
    }
    let mut out = Vec::new();
    rec(factors, 0, n, Poly::constant(QF13::one()), &mut out);
    out
}

/// Cofactors of the homogeneous Darboux polynomials of degree `n` of the
/// homogeneous planar field `v`.
fn homogeneous_cofactors(v: &PolyField, lines: &[Poly], n: u32) -> Result<Vec<Poly>> {
    products_of_degree(lines, n)
        .into_iter()
        .map(|g| {
            lie_derivative(&g, v)
                .div_exact(&g)
                .ok_or_else(|| G2Error::domain("product of invariant lines is not Darboux"))
        })
        .collect()
}

/// Matrix of `f -> X . grad f - k f` on polynomials of degree `<= n`.
fn darboux_matrix(field: &PolyField, k: &Poly, n: u32) -> (Vec<Vec<QF13>>, Vec<Monomial>) {
    let dom = monomials_up_to(n);
    let codeg = n + field.iter().filter_map(Poly::degree).max().unwrap_or(0).max(k.degree().unwrap_or(0));
    let cod = monomials_up_to(codeg);
    let images: Vec<Poly> = dom
        .iter()
        .map(|m| {
            let f = Poly::monomial(*m, QF13::one());
            &lie_derivative(&f, field) - &(k * &f)
        })
        .collect();
    let rows = cod
        .iter()
        .map(|r| images.iter().map(|img| img.coeff(r)).collect())
        .collect();
    (rows, dom)
}

/// Every Darboux polynomial of degree `1..=max_degree` of the polynomial
/// field, up to scalars, together with its cofactor. `max_degree` must be 1
/// or 2.
pub fn darboux_search(max_degree: u32) -> Result<DarbouxSearch> {
    if !(1..=2).contains(&max_degree) {
        return Err(G2Error::domain("max_degree must be 1 or 2"));
    }
    let field = poly_field();
    let planar = |d: u32| -> PolyField {
        [field[0].homogeneous_part(d), field[1].homogeneous_part(d), Poly::zero()]
    };
    let (y2, y3) = (planar(2), planar(3));
    // the structural facts the reduction depends on
    let c = field[2]
        .div_monomial(&[0, 0, 1])
        .ok_or_else(|| G2Error::domain("z = 0 is not invariant"))?;
    let z_free = |p: &Poly| p.degree_in(2).unwrap_or(0) == 0;
    let planar_split = (0..2).all(|i| {
        let sum = &field[i].homogeneous_part(2) + &field[i].homogeneous_part(3);
        sum == field[i]
    });
    if !(z_free(&field[0]) && z_free(&field[1]) && z_free(&c) && planar_split) {
        return Err(G2Error::domain("field does not have the structure the search relies on"));
    }

    let low_lines = invariant_lines(&y2[0], &y2[1])?;
    let top_lines = invariant_lines(&y3[0], &y3[1])?;
    let n_max = max_degree;
    let mut cofactors: BTreeSet<Vec<(Monomial, QF13)>> = BTreeSet::new();
    let key = |p: &Poly| -> Vec<(Monomial, QF13)> { p.terms().map(|(m, c)| (*m, c.clone())).collect() };
    for zc in 0..=n_max {
        for n in 0..=(n_max - zc) {
            let tops = homogeneous_cofactors(&y3, &top_lines, n)?;
            for m in 0..=n {
                let lows = homogeneous_cofactors(&y2, &low_lines, m)?;
                for k2 in &tops {
                    for k1 in &lows {
                        let k = &(k1 + k2) + &c.scale(&QF13::from_int(zc as i64));
                        cofactors.insert(key(&k));
                    }
                }
            }
        }
    }

    let mut pairs = Vec::new();
    let mut kernel_dims = Vec::new();
    for kt in &cofactors {
        let k = Poly::from_terms(kt.iter().cloned());
        let (mat, dom) = darboux_matrix(field, &k, max_degree);
        let kernel = linalg::nullspace(&mat, dom.len());
        let sols: Vec<Poly> = kernel
            .iter()
            .map(|v| Poly::from_terms(dom.iter().copied().zip(v.iter().cloned())))
            .filter(|f| f.degree().unwrap_or(0) > 0)
            .map(|f| make_monic(&f))
            .collect();
        if !sols.is_empty() {
            kernel_dims.push(kernel.len());
            pairs.extend(sols.into_iter().map(|f| DarbouxPair::new(f, k.clone())));
        }
    }
    pairs.sort_by(|a, b| {
        let la = a.f.leading_term().map(|t| t.0).unwrap_or([0; 3]);
        let lb = b.f.leading_term().map(|t| t.0).unwrap_or([0; 3]);
        grlex(&la, &lb).then_with(|| lb.cmp(&la))
    });
    debug_assert!(pairs.iter().all(|p| darboux_residual_for(p, field).is_zero()));
    Ok(DarbouxSearch {
        max_degree,
        pairs,
        candidates_tested: cofactors.len(),
        kernel_dims,
        complete: true,
    })
}

/// Cofactor `a A + b B + c C` of the monomial `x^a y^b z^c`, where
/// `X = (x A, y B, z C)`.
pub fn monomial_cofactor(e: Monomial) -> Poly {
    let field = poly_field();
    let parts = [
        field[0].div_monomial(&[1, 0, 0]).expect("x divides P1"),
        field[1].div_monomial(&[0, 1, 0]).expect("y divides P2"),
        field[2].div_monomial(&[0, 0, 1]).expect("z divides P3"),
    ];
    (0..3).fold(Poly::zero(), |acc, i| &acc + &parts[i].scale(&QF13::from_int(e[i] as i64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lines_of_top_and_bottom_fields() {
        let field = poly_field();
        let part = |i: usize, d| field[i].homogeneous_part(d);
        let top = invariant_lines(&part(0, 3), &part(1, 3)).unwrap();
        assert_eq!(top.len(), 4);
        let low = invariant_lines(&part(0, 2), &part(1, 2)).unwrap();
        assert_eq!(low.len(), 3);
    }

    #[test]
    fn degree_one_search() {
        let s = darboux_search(1).unwrap();
        let fs: Vec<String> = s.pairs.iter().map(|p| p.f.to_string()).collect();
        assert_eq!(fs, ["z", "y", "x"]);
        assert!(s.kernel_dims.iter().all(|&d| d == 1));
    }

    #[test]
    fn monomial_cofactors_verify() {
        for e in monomials_up_to(3).into_iter().skip(1) {
            let pair = DarbouxPair::new(Poly::monomial(e, QF13::one()), monomial_cofactor(e));
            assert!(darboux_verify(&pair), "{e:?}");
        }
    }

    #[test]
    fn rejects_bad_degree() {
        assert!(darboux_search(0).is_err());
        assert!(darboux_search(3).is_err());
    }
}
