//! Dense linear algebra over ℚ(√3), just enough to solve small homogeneous
//! systems.

use num_traits::{One, Zero};

use crate::scalar::QSqrt3;

/// Basis of the null space of the `rows × ncols` system, one vector per free
/// column with that free variable set to 1.
pub(crate) fn nullspace(mut rows: Vec<Vec<QSqrt3>>, ncols: usize) -> Vec<Vec<QSqrt3>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                *x -= &(&f * p);
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![QSqrt3::zero(); ncols];
            v[free] = QSqrt3::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[row][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_kernel() {
        // x + y − z = 0, y − 2z = 0  ⇒  (−1, 2, 1)
        let i = QSqrt3::from_int;
        let ns = nullspace(vec![vec![i(1), i(1), i(-1)], vec![i(0), i(1), i(-2)]], 3);
        assert_eq!(ns, vec![vec![i(-1), i(2), i(1)]]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let i = QSqrt3::from_int;
        assert!(nullspace(vec![vec![i(1), QSqrt3::sqrt3()], vec![i(0), i(2)]], 2).is_empty());
    }
}
