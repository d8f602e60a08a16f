//! Isotropy algebras, isotropy submodules and equivariant maps for the three
//! real flag manifolds of split g2.
//!
//! Module generators are stored unnormalized together with their squared
//! norms, which keeps every computation inside Q(sqrt 13).

use std::ops::Range;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{G2Error, Result};
use crate::exactfield::{nullspace, rank, solve, Matrix, QF13};
use crate::g2core::{compact_basis, parabolic_subalgebra, FlagId, G2Element, KVector};

/// An unnormalized basis vector with its squared norm `(v, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BasisVector {
    pub vector: KVector,
    pub norm2: QF13,
}

impl BasisVector {
    fn new(vector: KVector) -> Self {
        let norm2 = vector.inner(&vector);
        debug_assert!(norm2.is_rational());
        BasisVector { vector, norm2 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Module {
    pub generators: Vec<BasisVector>,
}

/// An equivariant isometry `T : m_i -> m_j` given by its matrix on generators:
/// `T(gen_c of m_i) = sum_r map[r][c] gen_r of m_j`. Indices are zero-based.
#[derive(Clone, Debug, Serialize)]
pub struct EquivPair {
    pub i: usize,
    pub j: usize,
    pub map: Matrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagData {
    pub theta: FlagId,
    pub isotropy: Vec<KVector>,
    pub modules: Vec<Module>,
    /// The ordered basis of `m`, i.e. the module generators concatenated.
    pub basis: Vec<BasisVector>,
    pub equiv_pairs: Vec<EquivPair>,
    pub dims: Vec<usize>,
}

fn q(n: i64) -> QF13 {
    QF13::from_int(n)
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { QF13::one() } else { QF13::zero() }).collect())
        .collect()
}

fn comb(terms: &[(QF13, KVector)]) -> KVector {
    KVector::combination(terms)
}

pub fn flag_data(theta: FlagId) -> FlagData {
    let (w, z) = (KVector::w, KVector::z);
    let (isotropy, modules, pairs): (Vec<KVector>, Vec<Vec<KVector>>, Vec<(usize, usize)>) =
        match theta {
            FlagId::Empty => (
                vec![],
                vec![vec![w(1)], vec![z(3)], vec![w(2)], vec![z(2)], vec![w(3)], vec![z(1)]],
                vec![(0, 1), (2, 3), (4, 5)],
            ),
            FlagId::Alpha1 => (
                vec![KVector::x(1)],
                vec![vec![z(3)], vec![w(2), w(3)], vec![z(2), -&z(1)]],
                vec![(1, 2)],
            ),
            FlagId::Alpha2 => {
                let s13 = QF13::sqrt13();
                let k = comb(&[(s13.clone(), z(2)), (q(-2), w(2))]);
                let m1 = comb(&[(s13, w(2)), (q(2), z(2))]);
                (
                    vec![k],
                    vec![
                        vec![m1],
                        vec![&w(1) + &z(3), &w(3) + &z(1)],
                        vec![&w(1) - &z(3), &w(3) - &z(1)],
                    ],
                    vec![],
                )
            }
        };
    let modules: Vec<Module> = modules
        .into_iter()
        .map(|gens| Module {
            generators: gens.into_iter().map(BasisVector::new).collect(),
        })
        .collect();
    let basis = modules.iter().flat_map(|m| m.generators.clone()).collect();
    let dims = modules.iter().map(|m| m.generators.len()).collect();
    let equiv_pairs = pairs
        .into_iter()
        .map(|(i, j)| EquivPair {
            i,
            j,
            map: identity(modules[i].generators.len()),
        })
        .collect();
    FlagData {
        theta,
        isotropy,
        modules,
        basis,
        equiv_pairs,
        dims,
    }
}

impl FlagData {
    pub fn dim_m(&self) -> usize {
        self.basis.len()
    }

    /// Positions of module `i` inside the basis.
    pub fn module_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.dims[..i].iter().sum();
        start..start + self.dims[i]
    }

    /// Index of the module containing basis position `b`.
    pub fn module_of(&self, b: usize) -> usize {
        (0..self.modules.len())
            .find(|&i| self.module_range(i).contains(&b))
            .expect("basis index in range")
    }

    /// `sum c_b basis_b`.
    pub fn vector_from_coords(&self, coords: &[QF13]) -> KVector {
        let mut acc = KVector::zero();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                acc = &acc + &b.vector.scale(c);
            }
        }
        acc
    }

    /// Coefficients of the orthogonal projection onto `m`.
    pub fn project_coords(&self, v: &KVector) -> Vec<QF13> {
        self.basis
            .iter()
            .map(|b| v.inner(&b.vector).checked_div(&b.norm2).expect("nonzero norm"))
            .collect()
    }

    /// Orthogonal projection `v_m` onto `m`.
    pub fn project_to_m(&self, v: &KVector) -> KVector {
        self.vector_from_coords(&self.project_coords(v))
    }

    /// Coordinates of a vector of `m` in the basis, failing if `v` has a
    /// component outside `m`.
    pub fn coords_in_basis(&self, v: &KVector) -> Result<Vec<QF13>> {
        let c = self.project_coords(v);
        if self.vector_from_coords(&c) == *v {
            Ok(c)
        } else {
            Err(G2Error::domain("vector does not lie in the tangent space m"))
        }
    }

    /// Component of `v` in module `i`, as a vector.
    pub fn module_component(&self, i: usize, v: &KVector) -> KVector {
        let range = self.module_range(i);
        let mut acc = KVector::zero();
        for b in &self.basis[range] {
            let c = v.inner(&b.vector).checked_div(&b.norm2).expect("nonzero norm");
            acc = &acc + &b.vector.scale(&c);
        }
        acc
    }

    /// Equivariant map from module `from` to module `to` applied to `v`
    /// (assumed to lie in module `from`). Identity when `from == to`, zero for
    /// inequivalent modules.
    pub fn apply_t(&self, from: usize, to: usize, v: &KVector) -> KVector {
        if from == to {
            return v.clone();
        }
        let pair = self
            .equiv_pairs
            .iter()
            .find(|p| (p.i, p.j) == (from, to) || (p.i, p.j) == (to, from));
        let Some(pair) = pair else {
            return KVector::zero();
        };
        let src = &self.modules[from].generators;
        let dst = &self.modules[to].generators;
        let coords: Vec<QF13> = src
            .iter()
            .map(|g| v.inner(&g.vector).checked_div(&g.norm2).expect("nonzero norm"))
            .collect();
        let image_coords = if pair.i == from {
            mat_vec(&pair.map, &coords)
        } else {
            solve(&pair.map, &coords).expect("equivariant maps are invertible")
        };
        let mut acc = KVector::zero();
        for (c, g) in image_coords.iter().zip(dst) {
            acc = &acc + &g.vector.scale(c);
        }
        acc
    }
}

fn mat_vec(m: &Matrix, v: &[QF13]) -> Vec<QF13> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// Outcome of a family of exact checks.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checks: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

fn lies_in_span(gens: &[BasisVector], v: &KVector) -> bool {
    let mut acc = KVector::zero();
    for g in gens {
        let c = v.inner(&g.vector).checked_div(&g.norm2).expect("nonzero norm");
        acc = &acc + &g.vector.scale(&c);
    }
    acc == *v
}

/// `[k, m_j] in m_j` for every isotropy generator `k`, plus the structural
/// facts that the modules are mutually orthogonal, orthogonal to the
/// isotropy algebra, and fill up `k` together with it.
pub fn module_invariance_check(data: &FlagData) -> CheckReport {
    let mut rep = CheckReport::default();
    for (mi, module) in data.modules.iter().enumerate() {
        for k in &data.isotropy {
            for g in &module.generators {
                let br = k.bracket(&g.vector);
                rep.record(lies_in_span(&module.generators, &br), || {
                    format!("[{:?}, {:?}] leaves module {}", k.coords, g.vector.coords, mi)
                });
            }
        }
    }
    for (a, ba) in data.basis.iter().enumerate() {
        for (b, bb) in data.basis.iter().enumerate().skip(a + 1) {
            rep.record(ba.vector.inner(&bb.vector).is_zero(), || {
                format!("basis vectors {a} and {b} are not orthogonal")
            });
        }
        for k in &data.isotropy {
            rep.record(ba.vector.inner(k).is_zero(), || {
                format!("basis vector {a} is not orthogonal to the isotropy algebra")
            });
        }
    }
    let mut all: Matrix = data.isotropy.iter().map(|k| k.coords.to_vec()).collect();
    all.extend(data.basis.iter().map(|b| b.vector.coords.to_vec()));
    rep.record(rank(&all) == 6, || "isotropy plus modules do not span k".into());
    rep
}

/// Infinitesimal equivariance `T([k, m]) = [k, T(m)]` and the isometry
/// property `(T m, T m') = (m, m')` on generators, for every equivalent pair.
pub fn equivariance_check(data: &FlagData) -> CheckReport {
    let mut rep = CheckReport::default();
    for pair in &data.equiv_pairs {
        let src = &data.modules[pair.i].generators;
        for g in src {
            let tg = data.apply_t(pair.i, pair.j, &g.vector);
            for k in &data.isotropy {
                let lhs = data.apply_t(pair.i, pair.j, &k.bracket(&g.vector));
                let rhs = k.bracket(&tg);
                rep.record(lhs == rhs, || {
                    format!("T([k, m]) != [k, T(m)] for pair ({}, {})", pair.i, pair.j)
                });
            }
            for h in src {
                let th = data.apply_t(pair.i, pair.j, &h.vector);
                rep.record(tg.inner(&th) == g.vector.inner(&h.vector), || {
                    format!("T is not isometric on pair ({}, {})", pair.i, pair.j)
                });
            }
        }
    }
    rep
}

/// `k ∩ p_theta`, computed from the parabolic subalgebra by exact linear
/// algebra in the 15 ambient coordinates.
pub fn derived_isotropy(theta: FlagId) -> Vec<KVector> {
    let kb = compact_basis();
    let pb = parabolic_subalgebra(theta);
    let cols: Vec<Vec<QF13>> = kb
        .iter()
        .map(G2Element::flatten)
        .chain(pb.iter().map(|p| (-p).flatten()))
        .collect();
    let rows = 15;
    let m: Matrix = (0..rows)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    nullspace(&m, cols.len())
        .into_iter()
        .map(|v| {
            let xy: [QF13; 6] = std::array::from_fn(|i| v[i].clone());
            KVector::from_xy(&xy)
        })
        .filter(|k| !k.is_zero())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(flag_data(FlagId::Empty).dims, vec![1; 6]);
        assert_eq!(flag_data(FlagId::Alpha1).dims, vec![1, 2, 2]);
        assert_eq!(flag_data(FlagId::Alpha2).dims, vec![1, 2, 2]);
    }

    #[test]
    fn alpha2_norms() {
        let d = flag_data(FlagId::Alpha2);
        let norms: Vec<QF13> = d.basis.iter().map(|b| b.norm2.clone()).collect();
        assert_eq!(norms, vec![q(17), q(2), q(2), q(2), q(2)]);
    }

    #[test]
    fn isotropy_matches_parabolic() {
        for theta in FlagId::ALL {
            let d = flag_data(theta);
            let derived = derived_isotropy(theta);
            assert_eq!(derived.len(), d.isotropy.len(), "{theta}");
            let mut both: Matrix = derived.iter().map(|k| k.coords.to_vec()).collect();
            both.extend(d.isotropy.iter().map(|k| k.coords.to_vec()));
            assert_eq!(rank(&both), d.isotropy.len());
        }
    }

    #[test]
    fn alpha1_t_tilde() {
        let d = flag_data(FlagId::Alpha1);
        assert_eq!(d.apply_t(1, 2, &KVector::w(2)), KVector::z(2));
        assert_eq!(d.apply_t(1, 2, &KVector::w(3)), -&KVector::z(1));
        assert_eq!(d.apply_t(2, 1, &KVector::z(2)), KVector::w(2));
    }
}
