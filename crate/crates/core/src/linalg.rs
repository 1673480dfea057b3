//! Exact linear algebra over a field.

use std::ops::Neg;

use num_traits::Num;

/// Field operations needed by the solver.
pub trait Field: Num + Neg<Output = Self> + Clone {}

impl<T: Num + Neg<Output = T> + Clone> Field for T {}

/// Solution set `particular + span(null_basis)` of `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution<F> {
    pub particular: Vec<F>,
    pub null_basis: Vec<Vec<F>>,
}

/// Solves `A x = b` by reduction to row echelon form. `None` when the
/// system is inconsistent.
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F], ncols: usize) -> Option<Solution<F>> {
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let nrows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pv = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = x.clone() / pv.clone();
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x = x.clone() - f.clone() * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == nrows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut particular = vec![F::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        particular[c] = m[i][ncols].clone();
    }
    let null_basis = (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![F::zero(); ncols];
            v[free] = F::one();
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = -m[i][free].clone();
            }
            v
        })
        .collect();
    Some(Solution { particular, null_basis })
}

/// Determinant by Gaussian elimination.
pub fn determinant<F: Field>(a: &[Vec<F>]) -> F {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pv = m[c][c].clone();
        det = det * pv.clone();
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone() / pv.clone();
            let pivot_row = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(pivot_row) {
                *x = x.clone() - f.clone() * y;
            }
        }
    }
    det
}
