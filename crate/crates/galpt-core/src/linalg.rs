//! Dense exact linear algebra over an abstract field: reduced row echelon
//! form, kernels, and square solves. Sizes here are tiny (the biggest system
//! is n x 4 for a fractional-linear representation), so plain Gauss–Jordan
//! with exact arithmetic is the right tool.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{CoreError, CoreResult};
use crate::poly::FieldElem;

/// Reduced row echelon form in place; returns the pivot column of each
/// nonzero row, in order. Pivots are chosen only among the first
/// `pivot_cols` columns, but elimination runs across the full row width, so
/// augmented columns are carried along without ever being pivoted on.
fn rref<F: FieldElem>(rows: &mut [Vec<F>], pivot_cols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let width = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut rank = 0usize;
    for col in 0..pivot_cols {
        let Some(pivot_row) = (rank..nrows).find(|&r| !rows[r][col].elem_is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let inv = rows[rank][col].inverted().expect("pivot nonzero");
        for j in col..width {
            rows[rank][j] = rows[rank][j].times(&inv);
        }
        for r in 0..nrows {
            if r == rank || rows[r][col].elem_is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for j in col..width {
                let delta = factor.times(&rows[rank][j]);
                rows[r][j] = rows[r][j].minus(&delta);
            }
        }
        pivots.push(col);
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    pivots
}

/// Basis of the right kernel {v : A v = 0}. `sample` supplies the field
/// context (needed when the matrix has no rows).
pub fn kernel_basis<F: FieldElem>(matrix: &[Vec<F>], ncols: usize, sample: &F) -> Vec<Vec<F>> {
    let zero = sample.zero_like();
    let one = sample.one_like();
    let mut rows: Vec<Vec<F>> = matrix.iter().map(|r| {
        assert_eq!(r.len(), ncols, "ragged matrix");
        r.clone()
    }).collect();
    let pivots = rref(&mut rows, ncols);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![zero.clone(); ncols];
        v[free] = one.clone();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[row][free].negated();
        }
        basis.push(v);
    }
    basis
}

/// Solve A x = b for square A; errors when A is singular.
pub fn solve_square<F: FieldElem>(matrix: &[Vec<F>], rhs: &[F]) -> CoreResult<Vec<F>> {
    let n = matrix.len();
    assert_eq!(rhs.len(), n, "dimension mismatch");
    let mut rows: Vec<Vec<F>> = matrix
        .iter()
        .zip(rhs.iter())
        .map(|(r, b)| {
            assert_eq!(r.len(), n, "matrix not square");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows, n);
    if pivots.len() != n {
        return Err(CoreError::SingularSystem);
    }
    Ok(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// A v for a rectangular A.
pub fn mat_vec<F: FieldElem>(matrix: &[Vec<F>], v: &[F]) -> Vec<F> {
    matrix
        .iter()
        .map(|row| {
            let mut acc = v[0].zero_like();
            for (a, x) in row.iter().zip(v.iter()) {
                acc = acc.plus(&a.times(x));
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_frac, rat_int};
    use crate::Rat;

    fn qm(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&n| rat_int(n)).collect()).collect()
    }

    #[test]
    fn kernel_of_rank_one_matrix() {
        let a = qm(&[&[1, 2, 3]]);
        let basis = kernel_basis(&a, 3, &rat_int(0));
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(mat_vec(&a, v).iter().all(|x| x == &rat_int(0)));
        }
    }

    #[test]
    fn kernel_of_invertible_matrix_is_trivial() {
        let a = qm(&[&[2, 1], &[1, 1]]);
        assert!(kernel_basis(&a, 2, &rat_int(0)).is_empty());
    }

    #[test]
    fn kernel_with_no_rows_is_everything() {
        let basis = kernel_basis::<Rat>(&[], 2, &rat_int(0));
        assert_eq!(basis.len(), 2);
    }

    #[test]
    fn solve_small_system() {
        // 2x + y = 5, x - y = 1 -> x = 2, y = 1
        let a = qm(&[&[2, 1], &[1, -1]]);
        let x = solve_square(&a, &[rat_int(5), rat_int(1)]).unwrap();
        assert_eq!(x, vec![rat_int(2), rat_int(1)]);
        // Fractional solution: x + y = 1, x - y = 0 -> (1/2, 1/2)
        let b = qm(&[&[1, 1], &[1, -1]]);
        let y = solve_square(&b, &[rat_int(1), rat_int(0)]).unwrap();
        assert_eq!(y, vec![rat_frac(1, 2), rat_frac(1, 2)]);
    }

    #[test]
    fn singular_solve_is_an_error() {
        let a = qm(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            solve_square(&a, &[rat_int(1), rat_int(2)]),
            Err(CoreError::SingularSystem)
        ));
    }
}
