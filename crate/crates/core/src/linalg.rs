//! Dense exact linear algebra over the Gaussian rationals, plus determinants
//! of small polynomial matrices.

use crate::scalar::{GaussianRational, PolyScalar};

pub type Matrix = Vec<Vec<GaussianRational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![GaussianRational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = GaussianRational::one();
    }
    m
}

pub fn transpose(m: &Matrix) -> Matrix {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut acc = GaussianRational::zero();
                    for k in 0..inner {
                        if !row[k].is_zero() && !b[k][j].is_zero() {
                            acc += &(&row[k] * &b[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Matrix, v: &[GaussianRational]) -> Vec<GaussianRational> {
    a.iter()
        .map(|row| {
            let mut acc = GaussianRational::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(p * &f);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut aug: Matrix = m.iter().zip(identity(n)).map(|(row, id)| row.iter().cloned().chain(id).collect()).collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Coordinates of vectors in the span of a fixed set of independent columns.
///
/// Works for polynomial vectors too: the coordinates are read off an
/// invertible square subsystem and then checked against every row.
#[derive(Debug, Clone)]
pub struct SpanCoordinates {
    rows: Vec<usize>,
    inverse: Matrix,
    columns: Matrix,
}

impl SpanCoordinates {
    /// `columns[k]` is the k-th spanning vector. Returns `None` if the
    /// vectors are linearly dependent.
    pub fn new(columns: &[Vec<GaussianRational>]) -> Option<Self> {
        let k = columns.len();
        let mut t: Matrix = columns.to_vec();
        let pivots = rref(&mut t);
        if pivots.len() < k {
            return None;
        }
        let square: Matrix = pivots.iter().map(|&r| (0..k).map(|j| columns[j][r].clone()).collect()).collect();
        let inverse = inverse(&square)?;
        Some(Self { rows: pivots, inverse, columns: columns.to_vec() })
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Coordinates of a constant vector, or `None` if it is outside the span.
    pub fn solve(&self, v: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        let sub: Vec<GaussianRational> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let x = mul_vec(&self.inverse, &sub);
        let back = self.combine(&x);
        (back.as_slice() == v).then_some(x)
    }

    /// Coordinates of a polynomial vector, or `None` if outside the span.
    pub fn solve_poly(&self, v: &[PolyScalar]) -> Option<Vec<PolyScalar>> {
        let x: Vec<PolyScalar> = self
            .inverse
            .iter()
            .map(|row| row.iter().zip(&self.rows).filter(|(c, _)| !c.is_zero()).map(|(c, &r)| v[r].scale(c)).sum())
            .collect();
        let dim = v.len();
        for i in 0..dim {
            let mut acc = PolyScalar::zero();
            for (j, xj) in x.iter().enumerate() {
                let c = &self.columns[j][i];
                if !c.is_zero() {
                    acc += &xj.scale(c);
                }
            }
            if acc != v[i] {
                return None;
            }
        }
        Some(x)
    }

    fn combine(&self, x: &[GaussianRational]) -> Vec<GaussianRational> {
        let dim = self.columns.first().map_or(0, Vec::len);
        let mut out = vec![GaussianRational::zero(); dim];
        for (xj, col) in x.iter().zip(&self.columns) {
            if xj.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(col) {
                if !c.is_zero() {
                    *o += &(c * xj);
                }
            }
        }
        out
    }
}

/// Determinant by cofactor expansion along the first row; intended for the
/// small (≤ 8×8) matrices that occur as minors.
pub fn det_poly(m: &[Vec<PolyScalar>]) -> PolyScalar {
    let n = m.len();
    match n {
        0 => PolyScalar::one(),
        1 => m[0][0].clone(),
        2 => &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0],
        _ => {
            let mut acc = PolyScalar::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<PolyScalar>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][j] * &det_poly(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// All size-`k` subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// All `k×k` minors of a polynomial matrix, row subsets outer.
pub fn minors(m: &[Vec<PolyScalar>], k: usize) -> Vec<PolyScalar> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let row_sets = combinations(rows, k);
    let col_sets = combinations(cols, k);
    let mut out = Vec::with_capacity(row_sets.len() * col_sets.len());
    for rs in &row_sets {
        for cs in &col_sets {
            let sub: Vec<Vec<PolyScalar>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
            out.push(det_poly(&sub));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    #[test]
    fn inverse_round_trip() {
        let m = vec![vec![q(1), GaussianRational::i()], vec![q(2), q(3)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mul(&m, &inv), identity(2));
        assert!(inverse(&vec![vec![q(1), q(2)], vec![q(2), q(4)]]).is_none());
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(0)]];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn span_coordinates() {
        let cols = vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]];
        let sc = SpanCoordinates::new(&cols).unwrap();
        assert_eq!(sc.solve(&[q(2), q(3), q(5)]), Some(vec![q(2), q(3)]));
        assert_eq!(sc.solve(&[q(2), q(3), q(4)]), None);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
