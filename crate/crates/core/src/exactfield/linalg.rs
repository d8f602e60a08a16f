//! Gaussian elimination over Q(sqrt 13).

use num_traits::{One, Zero};

use super::QF13;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<QF13>>;

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(m: &[Vec<QF13>]) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("pivot is nonzero");
        for x in a[r].iter_mut().skip(c) {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &[Vec<QF13>]) -> usize {
    rref(m).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace(m: &[Vec<QF13>], cols: usize) -> Vec<Vec<QF13>> {
    if m.is_empty() {
        return (0..cols)
            .map(|i| (0..cols).map(|j| if i == j { QF13::one() } else { QF13::zero() }).collect())
            .collect();
    }
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![QF13::zero(); cols];
            v[f] = QF13::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Some solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &[Vec<QF13>], b: &[QF13]) -> Option<Vec<QF13>> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![QF13::zero(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[row][cols].clone();
    }
    Some(x)
}

/// Whether `v` lies in the span of `vectors`.
pub fn in_span(vectors: &[Vec<QF13>], v: &[QF13]) -> bool {
    let base = rank(vectors);
    let mut ext = vectors.to_vec();
    ext.push(v.to_vec());
    rank(&ext) == base
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| QF13::from_int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        let k = nullspace(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: QF13 = row.iter().zip(&k[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solving() {
        let a = vec![
            vec![QF13::sqrt13(), QF13::one()],
            vec![QF13::one(), QF13::zero()],
        ];
        let x = solve(&a, &[QF13::from_int(2), QF13::from_int(3)]).unwrap();
        assert_eq!(x[0], QF13::from_int(3));
        assert_eq!(x[1], QF13::from_int(2) - QF13::from_int(3) * QF13::sqrt13());
        let singular = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&singular, &[QF13::one(), QF13::zero()]).is_none());
    }

    #[test]
    fn spans() {
        let v = m(&[&[1, 0, 1], &[0, 1, 0]]);
        assert!(in_span(&v, &m(&[&[2, 3, 2]])[0]));
        assert!(!in_span(&v, &m(&[&[1, 0, 0]])[0]));
    }
}
