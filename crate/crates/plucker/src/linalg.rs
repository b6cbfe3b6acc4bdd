//! Small dense linear-algebra kernels: determinants, rank and null spaces.
//!
//! Everything here works on `Vec<Vec<f64>>` row matrices and is sized for
//! the tiny systems the rest of the crate produces (minors up to ~10×10,
//! plane stacks, flattened wedge coordinates). Determinants use closed-form
//! cofactor expansion up to 3×3 and fraction-free (Bareiss) elimination with
//! partial pivoting above that, so integer inputs yield exact integer
//! results at every size.

use crate::error::{Error, Result};

/// Determinant of a square matrix.
pub fn det(matrix: &[Vec<f64>]) -> Result<f64> {
    let n = matrix.len();
    for row in matrix {
        if row.len() != n {
            return Err(Error::Dimension(format!(
                "determinant needs a square matrix, got a row of length {} in a {}-row matrix",
                row.len(),
                n
            )));
        }
    }
    Ok(match n {
        0 => 1.0,
        1 => matrix[0][0],
        2 => matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0],
        3 => {
            let m = matrix;
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        }
        _ => det_bareiss(matrix.to_vec()),
    })
}

/// Fraction-free elimination. Each intermediate entry is a minor of the
/// (row-swapped) input, so the divisions are exact on integer input.
fn det_bareiss(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut sign = 1.0;
    let mut prev = 1.0;
    for k in 0..n - 1 {
        let pivot_row = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        if a[pivot_row][k] == 0.0 {
            return 0.0;
        }
        if pivot_row != k {
            a.swap(pivot_row, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0.0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn max_abs(matrix: &[Vec<f64>]) -> f64 {
    matrix
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// Numerical rank by Gaussian elimination with partial pivoting.
///
/// A pivot counts when its magnitude exceeds `rel_tol` times the largest
/// entry of the input matrix.
pub fn rank(matrix: &[Vec<f64>], rel_tol: f64) -> usize {
    let rows = matrix.len();
    if rows == 0 {
        return 0;
    }
    let cols = matrix[0].len();
    let scale = max_abs(matrix);
    if scale == 0.0 {
        return 0;
    }
    let threshold = rel_tol * scale;
    let mut a = matrix.to_vec();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = (r..rows)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() <= threshold {
            continue;
        }
        a.swap(pivot_row, r);
        let (pivot_rows, rest) = a.split_at_mut(r + 1);
        let pivot = &pivot_rows[r];
        for row in rest {
            let f = row[col] / pivot[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
        }
        r += 1;
    }
    r
}

/// Basis of the null space `{x : Mx = 0}`, one vector per free column of the
/// reduced row echelon form. The basis vectors come out in ascending order
/// of their free column, which makes the result deterministic.
pub fn null_space(matrix: &[Vec<f64>], rel_tol: f64) -> Vec<Vec<f64>> {
    let rows = matrix.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = matrix[0].len();
    let scale = max_abs(matrix);
    if scale == 0.0 {
        // Zero map: every coordinate direction is in the kernel.
        return (0..cols)
            .map(|j| {
                let mut v = vec![0.0; cols];
                v[j] = 1.0;
                v
            })
            .collect();
    }
    let threshold = rel_tol * scale;
    let mut a = matrix.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = (r..rows)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        if a[pivot_row][col].abs() <= threshold {
            continue;
        }
        a.swap(pivot_row, r);
        let p = a[r][col];
        for v in &mut a[r][col..] {
            *v /= p;
        }
        let pivot = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[col] != 0.0 {
                let f = row[col];
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0.0; cols];
        v[free] = 1.0;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -a[row][free];
        }
        basis.push(v);
    }
    basis
}
