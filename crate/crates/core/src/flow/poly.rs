//! Sparse polynomials in three variables with coefficients in Q(sqrt 13).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exactfield::QF13;

pub type Monomial = [u32; 3];

fn degree_of(m: &Monomial) -> u32 {
    m.iter().sum()
}

/// Graded lexicographic order with `x > y > z`.
pub fn grlex(a: &Monomial, b: &Monomial) -> Ordering {
    degree_of(a).cmp(&degree_of(b)).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, QF13>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: QF13) -> Self {
        Poly::monomial([0, 0, 0], c)
    }

    pub fn monomial(exp: Monomial, c: QF13) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Poly { terms }
    }

    /// The `i`-th coordinate function.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Poly::monomial(e, QF13::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, QF13)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: QF13) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(QF13::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QF13)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> QF13 {
        self.terms.get(m).cloned().unwrap_or_else(QF13::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(degree_of).max()
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[i]).max()
    }

    pub fn leading_term(&self) -> Option<(Monomial, QF13)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex(a.0, b.0))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub fn homogeneous_part(&self, d: u32) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| degree_of(m) == d)
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    pub fn scale(&self, c: &QF13) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn derivative(&self, i: usize) -> Poly {
        Poly::from_terms(self.terms.iter().filter(|(m, _)| m[i] > 0).map(|(m, c)| {
            let mut e = *m;
            e[i] -= 1;
            (e, c * &QF13::from_int(m[i] as i64))
        }))
    }

    pub fn gradient(&self) -> [Poly; 3] {
        [self.derivative(0), self.derivative(1), self.derivative(2)]
    }

    pub fn eval(&self, p: &[QF13; 3]) -> QF13 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = c.clone();
                for i in 0..3 {
                    if m[i] > 0 {
                        t = t * p[i].pow(m[i]);
                    }
                }
                t
            })
            .sum()
    }

    pub fn eval_f64(&self, p: &[f64; 3]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                c.to_f64_lossy() * p[0].powi(m[0] as i32) * p[1].powi(m[1] as i32) * p[2].powi(m[2] as i32)
            })
            .sum()
    }

    /// Float coefficients for fast repeated evaluation.
    pub fn to_f64_terms(&self) -> Vec<(Monomial, f64)> {
        self.terms.iter().map(|(m, c)| (*m, c.to_f64_lossy())).collect()
    }

    /// `self(q_0, q_1, q_2)`.
    pub fn compose(&self, q: &[Poly; 3]) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for i in 0..3 {
                for _ in 0..m[i] {
                    t = &t * &q[i];
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Substitutes `value` for variable `i`.
    pub fn substitute(&self, i: usize, value: &QF13) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, c)| {
            let mut e = *m;
            e[i] = 0;
            (e, c * &value.pow(m[i]))
        }))
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, d: &Monomial) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = *m;
            for i in 0..3 {
                e[i] = m[i].checked_sub(d[i])?;
            }
            terms.insert(e, c.clone());
        }
        Some(Poly { terms })
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let mut e = m;
            for i in 0..3 {
                e[i] = m[i].checked_sub(lm[i])?;
            }
            let t = Poly::monomial(e, c.checked_div(&lc).ok()?);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Pretty form using the given variable names.
    pub fn to_string_with(&self, names: [&str; 3]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<(&Monomial, &QF13)> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex(b.0, a.0));
        let mut s = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = (0..3)
                .filter(|&i| m[i] > 0)
                .map(|i| {
                    if m[i] == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], m[i])
                    }
                })
                .collect();
            let (neg, mag) = if c.is_rational() || c.rat().is_zero() {
                (c.is_negative(), c.abs())
            } else {
                (false, c.clone())
            };
            let coeff = if !mag.is_rational() && !mag.rat().is_zero() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", coeff, mono.join("*")),
            };
            match (k, neg) {
                (0, true) => s.push_str(&format!("-{body}")),
                (0, false) => s.push_str(&body),
                (_, true) => s.push_str(&format!(" - {body}")),
                (_, false) => s.push_str(&format!(" + {body}")),
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(["x", "y", "z"]))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term([a[0] + b[0], a[1] + b[1], a[2] + b[2]], x * y);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly { (&self).$f(&o) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly { (&self).$f(o) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly { self.$f(&o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Polynomial vector field in three variables.
pub type PolyField = [Poly; 3];

/// `(grad f) . X`.
pub fn lie_derivative(f: &Poly, field: &PolyField) -> Poly {
    let g = f.gradient();
    &(&(&g[0] * &field[0]) + &(&g[1] * &field[1])) + &(&g[2] * &field[2])
}

/// Jacobian matrix `dX_i / dx_j`.
pub fn jacobian(field: &PolyField) -> [[Poly; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| field[i].derivative(j)))
}

/// Float evaluation of a field with cached coefficients.
#[derive(Clone, Debug)]
pub struct FastField {
    comps: [Vec<(Monomial, f64)>; 3],
}

impl FastField {
    pub fn new(field: &PolyField) -> Self {
        FastField {
            comps: std::array::from_fn(|i| field[i].to_f64_terms()),
        }
    }

    pub fn eval(&self, p: &[f64; 3]) -> [f64; 3] {
        std::array::from_fn(|i| {
            self.comps[i]
                .iter()
                .map(|(m, c)| c * p[0].powi(m[0] as i32) * p[1].powi(m[1] as i32) * p[2].powi(m[2] as i32))
                .sum()
        })
    }
}
