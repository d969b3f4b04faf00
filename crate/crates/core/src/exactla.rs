//! Exact dense linear algebra over the rationals.
//!
//! The central routine is [`eliminate`], a column-pivoted forward Gaussian
//! elimination that brings a full-row-rank `A` to the trapezoidal form
//! `(A0 | A1)` with `A0` square, upper triangular and nonsingular. The
//! column permutation it produces is what identifies which bilinear terms
//! may be replaced by linear rows.
//!
//! Pivot rule at step `i` (all scans in current column order):
//! 1. keep `(i, i)` if it is nonzero;
//! 2. otherwise swap in the first row below with a nonzero in column `i`;
//! 3. otherwise swap in the first column right of `i` with a nonzero in row `i`;
//! 4. otherwise (row `i` is exhausted) take the first column right of `i`
//!    with a nonzero in some lower row, and the first such row.
//!
//! If none applies the remaining rows are zero and the rank is `i`.
//!
//! A float variant ([`eliminate_f64`]) follows the same rule with an
//! absolute zero threshold. It is a fast path for inspection only; nothing
//! in the exact pipeline depends on it.

use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{Matrix, Rational, Vector};

/// Outcome of [`eliminate`].
///
/// `sigma[i]` is the original (0-based) column placed at position `i`, so a
/// point `x` maps to `x_sigma = (x[sigma[0]], ..., x[sigma[n-1]])` and
/// `Ax = b` holds exactly when `(A0 | A1) x_sigma = bprime`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationResult {
    pub sigma: Vec<usize>,
    pub a0: Matrix,
    pub a1: Matrix,
    pub bprime: Vector,
    pub rank: usize,
}

impl EliminationResult {
    pub fn sigma_one_based(&self) -> Vec<usize> {
        self.sigma.iter().map(|&j| j + 1).collect()
    }

    /// `x` reordered by `sigma`.
    pub fn permute<T: Clone>(&self, x: &[T]) -> Vec<T> {
        self.sigma.iter().map(|&j| x[j].clone()).collect()
    }

    /// `(A0 | A1)` as one matrix.
    pub fn transformed(&self) -> Matrix {
        let m = self.a0.rows();
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = self.a0.row(i).to_vec();
            row.extend_from_slice(self.a1.row(i));
            rows.push(row);
        }
        Matrix::from_rows(rows).expect("blocks share the row count")
    }
}

/// Particular solution plus nullspace basis: the solutions of `Ax = b`
/// are exactly `x0 + span(basis)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineParam {
    pub x0: Vector,
    pub basis: Vec<Vector>,
}

impl AffineParam {
    /// `x0 + sum_k t[k] * basis[k]`. Panics if `t` has the wrong length.
    pub fn point(&self, t: &[Rational]) -> Vector {
        assert_eq!(t.len(), self.basis.len(), "one parameter per basis vector");
        let mut x = self.x0.clone();
        for (tk, v) in t.iter().zip(&self.basis) {
            if tk.is_zero() {
                continue;
            }
            for (xi, vi) in x.iter_mut().zip(v) {
                *xi += tk * vi;
            }
        }
        x
    }
}

/// Forward elimination of `rows` (each `n` coefficients followed by any
/// number of trailing augmented entries) with the module's pivot rule.
/// Returns the column order and the rank.
fn forward_eliminate<T, Z>(rows: &mut [Vec<T>], n: usize, is_zero: Z) -> (Vec<usize>, usize)
where
    T: Clone + Num,
    Z: Fn(&T) -> bool,
{
    let m = rows.len();
    let mut sigma: Vec<usize> = (0..n).collect();
    let swap_cols = |rows: &mut [Vec<T>], sigma: &mut Vec<usize>, a: usize, b: usize| {
        for row in rows.iter_mut() {
            row.swap(a, b);
        }
        sigma.swap(a, b);
    };

    let mut rank = 0;
    for i in 0..m.min(n) {
        if is_zero(&rows[i][i]) {
            if let Some(r) = (i + 1..m).find(|&r| !is_zero(&rows[r][i])) {
                rows.swap(i, r);
            } else if let Some(c) = (i + 1..n).find(|&c| !is_zero(&rows[i][c])) {
                swap_cols(rows, &mut sigma, i, c);
            } else if let Some((c, r)) = (i + 1..n)
                .find_map(|c| (i + 1..m).find(|&r| !is_zero(&rows[r][c])).map(|r| (c, r)))
            {
                swap_cols(rows, &mut sigma, i, c);
                rows.swap(i, r);
            } else {
                break;
            }
        }
        rank += 1;

        let (top, bottom) = rows.split_at_mut(i + 1);
        let pivot_row = &top[i];
        let pivot = pivot_row[i].clone();
        for row in bottom.iter_mut() {
            if is_zero(&row[i]) {
                continue;
            }
            let factor = row[i].clone() / pivot.clone();
            for (k, p) in pivot_row.iter().enumerate().skip(i) {
                if is_zero(p) {
                    continue;
                }
                row[k] = row[k].clone() - factor.clone() * p.clone();
            }
            row[i] = T::zero();
        }
    }
    (sigma, rank)
}

/// Column-pivoted Gaussian elimination of `[A | b]`.
///
/// Fails with [`Error::RankDeficient`] unless `rank(A) = rows(A)`.
pub fn eliminate(a: &Matrix, b: &[Rational]) -> Result<EliminationResult> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "b has length {} but A has {m} rows",
            b.len()
        )));
    }
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let (sigma, rank) = forward_eliminate(&mut rows, n, Zero::is_zero);
    if rank < m {
        return Err(Error::RankDeficient { rank, m });
    }

    let bprime = rows.iter().map(|r| r[n].clone()).collect();
    let a0 = Matrix::from_rows(rows.iter().map(|r| r[..m].to_vec()).collect())?;
    let a1 = Matrix::new(
        m,
        n - m,
        rows.iter().flat_map(|r| r[m..n].iter().cloned()).collect(),
    )?;
    Ok(EliminationResult {
        sigma,
        a0,
        a1,
        bprime,
        rank,
    })
}

/// Exact rank.
pub fn rank(a: &Matrix) -> usize {
    let mut rows = a.to_rows();
    forward_eliminate(&mut rows, a.cols(), Zero::is_zero).1
}

/// Back-substitution for an upper triangular `A0 u = rhs`.
pub fn solve_upper_triangular(a0: &Matrix, rhs: &[Rational]) -> Result<Vector> {
    let k = a0.rows();
    if a0.cols() != k {
        return Err(Error::NotSquare {
            rows: k,
            cols: a0.cols(),
        });
    }
    if rhs.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "rhs has length {} for a {k}x{k} system",
            rhs.len()
        )));
    }
    if let Some(i) = (0..k).find(|&i| a0[(i, i)].is_zero()) {
        return Err(Error::SingularDiagonal(i + 1));
    }
    let mut u = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        let mut acc = rhs[i].clone();
        for j in i + 1..k {
            acc -= &a0[(i, j)] * &u[j];
        }
        u[i] = acc / &a0[(i, i)];
    }
    Ok(u)
}

/// Reduced row echelon form of `[A | rhs]`. Returns the reduced rows
/// (augmented column last) and the pivot columns in order.
fn rref(a: &Matrix, rhs: &[Rational]) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let (m, n) = (a.rows(), a.cols());
    let mut rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&p| !rows[p][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                *v -= &factor * p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (rows, pivots)
}

fn nullspace_from_rref(rows: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<Vector> {
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -rows[k][free].clone();
            }
            v
        })
        .collect()
}

/// Basis of `{ v : A v = 0 }` for a matrix of any rank.
pub fn nullspace(a: &Matrix) -> Vec<Vector> {
    let zeros = vec![Rational::zero(); a.rows()];
    let (rows, pivots) = rref(a, &zeros);
    nullspace_from_rref(&rows, &pivots, a.cols())
}

/// Particular solution and nullspace basis of `Ax = b` for full-row-rank `A`.
pub fn affine_parametrize(a: &Matrix, b: &[Rational]) -> Result<AffineParam> {
    let (m, n) = (a.rows(), a.cols());
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "b has length {} but A has {m} rows",
            b.len()
        )));
    }
    let (rows, pivots) = rref(a, b);
    if pivots.len() < m {
        return Err(Error::RankDeficient {
            rank: pivots.len(),
            m,
        });
    }
    let mut x0 = vec![Rational::zero(); n];
    for (k, &p) in pivots.iter().enumerate() {
        x0[p] = rows[k][n].clone();
    }
    Ok(AffineParam {
        x0,
        basis: nullspace_from_rref(&rows, &pivots, n),
    })
}

/// Unique solution of a square system, or [`Error::SingularSystem`].
pub fn solve_square(a: &Matrix, rhs: &[Rational]) -> Result<Vector> {
    let k = a.rows();
    if a.cols() != k {
        return Err(Error::NotSquare {
            rows: k,
            cols: a.cols(),
        });
    }
    if rhs.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "rhs has length {} for a {k}x{k} system",
            rhs.len()
        )));
    }
    let (rows, pivots) = rref(a, rhs);
    if pivots.len() < k {
        return Err(Error::SingularSystem);
    }
    Ok(rows.into_iter().map(|r| r[k].clone()).collect())
}

/// Exact determinant by row reduction with sign tracking.
pub fn det(a: &Matrix) -> Result<Rational> {
    let k = a.rows();
    if a.cols() != k {
        return Err(Error::NotSquare {
            rows: k,
            cols: a.cols(),
        });
    }
    let mut rows = a.to_rows();
    let mut acc = Rational::one();
    for c in 0..k {
        let Some(p) = (c..k).find(|&p| !rows[p][c].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != c {
            rows.swap(p, c);
            acc = -acc;
        }
        let pivot = rows[c][c].clone();
        acc *= &pivot;
        let (top, bottom) = rows.split_at_mut(c + 1);
        for row in bottom {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot;
            for j in c..k {
                let d = &factor * &top[c][j];
                row[j] -= d;
            }
        }
    }
    Ok(acc)
}

/// Float counterpart of [`EliminationResult`]; `a` holds `(A0 | A1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatElimination {
    pub sigma: Vec<usize>,
    pub a: Vec<Vec<f64>>,
    pub bprime: Vec<f64>,
    pub rank: usize,
}

/// Entries with magnitude at or below this are treated as zero by
/// [`eliminate_f64`].
pub const FLOAT_ZERO: f64 = 1e-12;

/// Same pivot rule as [`eliminate`] in `f64`. Reports the numerical rank
/// instead of failing.
pub fn eliminate_f64(a: &[Vec<f64>], b: &[f64]) -> FloatElimination {
    let n = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    let (sigma, rank) = forward_eliminate(&mut rows, n, |v: &f64| v.abs() <= FLOAT_ZERO);
    let bprime = rows.iter().map(|r| r[n]).collect();
    for r in rows.iter_mut() {
        r.truncate(n);
    }
    FloatElimination {
        sigma,
        a: rows,
        bprime,
        rank,
    }
}

/// Converts to `f64` (nearest, saturating for huge values).
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{frac, int, ints};

    #[test]
    fn eliminate_single_row() {
        let e = eliminate(&Matrix::from_ints(&[[1, 1]]), &ints(&[1])).unwrap();
        assert_eq!(e.sigma_one_based(), vec![1, 2]);
        assert_eq!(e.a0, Matrix::from_ints(&[[1]]));
        assert_eq!(e.a1, Matrix::from_ints(&[[1]]));
        assert_eq!(e.bprime, ints(&[1]));
        assert_eq!(e.rank, 1);
    }

    #[test]
    fn eliminate_swaps_columns_from_row_scan() {
        let a = Matrix::from_ints(&[[0, 0, 1], [0, 1, 0]]);
        let e = eliminate(&a, &ints(&[5, 7])).unwrap();
        assert_eq!(e.sigma_one_based(), vec![3, 2, 1]);
        assert_eq!(e.a0, Matrix::identity(2));
        assert_eq!(e.a1, Matrix::from_ints(&[[0], [0]]));
        assert_eq!(e.bprime, ints(&[5, 7]));
    }

    #[test]
    fn eliminate_prefers_row_swap() {
        let a = Matrix::from_ints(&[[0, 1], [2, 0]]);
        let e = eliminate(&a, &ints(&[3, 4])).unwrap();
        assert_eq!(e.sigma, vec![0, 1]);
        assert_eq!(e.a0, Matrix::from_ints(&[[2, 0], [0, 1]]));
        assert_eq!(e.bprime, ints(&[4, 3]));
    }

    #[test]
    fn eliminate_column_swap_after_elimination() {
        // row 2 reduces to (0, 0, 1)
        let a = Matrix::from_ints(&[[1, 1, 0], [1, 1, 1]]);
        let e = eliminate(&a, &ints(&[1, 1])).unwrap();
        assert_eq!(e.sigma_one_based(), vec![1, 3, 2]);
        assert_eq!(e.a0, Matrix::from_ints(&[[1, 0], [0, 1]]));
        assert_eq!(e.a1, Matrix::from_ints(&[[1], [0]]));
        assert_eq!(e.bprime, ints(&[1, 0]));
    }

    #[test]
    fn eliminate_rank_deficient() {
        let a = Matrix::from_ints(&[[1, 2, 3], [2, 4, 6]]);
        assert_eq!(
            eliminate(&a, &ints(&[0, 0])).unwrap_err(),
            Error::RankDeficient { rank: 1, m: 2 }
        );
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(2)), 2);
        assert_eq!(rank(&Matrix::from_ints(&[[1, 2, 3], [2, 4, 6]])), 1);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&Matrix::from_ints(&[[0, 0], [0, 3], [1, 0]])), 2);
        // second row vanishes, third row is pulled up
        assert_eq!(rank(&Matrix::from_ints(&[[1, 1, 0], [1, 1, 0], [0, 0, 1]])), 2);
    }

    #[test]
    fn upper_triangular_solves() {
        let u = solve_upper_triangular(&Matrix::from_ints(&[[2]]), &ints(&[6])).unwrap();
        assert_eq!(u, ints(&[3]));
        let u =
            solve_upper_triangular(&Matrix::from_ints(&[[1, 1], [0, 2]]), &ints(&[3, 4])).unwrap();
        assert_eq!(u, ints(&[1, 2]));
        assert_eq!(
            solve_upper_triangular(&Matrix::from_ints(&[[1, 0], [0, 0]]), &ints(&[1, 1])),
            Err(Error::SingularDiagonal(2))
        );
    }

    #[test]
    fn affine_parametrize_examples() {
        let p = affine_parametrize(&Matrix::from_ints(&[[1, 1]]), &ints(&[1])).unwrap();
        assert_eq!(p.x0, ints(&[1, 0]));
        assert_eq!(p.basis, vec![ints(&[-1, 1])]);

        let p = affine_parametrize(&Matrix::identity(2), &ints(&[3, 4])).unwrap();
        assert_eq!(p.x0, ints(&[3, 4]));
        assert!(p.basis.is_empty());

        let p = affine_parametrize(&Matrix::from_ints(&[[0, 1]]), &ints(&[7])).unwrap();
        assert_eq!(p.x0[1], int(7));
        assert_eq!(p.basis, vec![ints(&[1, 0])]);

        assert_eq!(
            affine_parametrize(&Matrix::from_ints(&[[1, 1], [2, 2]]), &ints(&[1, 2])).unwrap_err(),
            Error::RankDeficient { rank: 1, m: 2 }
        );
    }

    #[test]
    fn affine_point_combines_basis() {
        let p = affine_parametrize(&Matrix::from_ints(&[[1, 1]]), &ints(&[1])).unwrap();
        assert_eq!(p.point(&[frac(1, 2)]), vec![frac(1, 2), frac(1, 2)]);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&Matrix::identity(2)).unwrap(), int(1));
        assert_eq!(det(&Matrix::from_ints(&[[1, 1], [1, 1]])).unwrap(), int(0));
        assert_eq!(det(&Matrix::from_ints(&[[1, 2], [3, 4]])).unwrap(), int(-2));
        assert_eq!(det(&Matrix::from_ints(&[[0, 1], [1, 0]])).unwrap(), int(-1));
        assert_eq!(
            det(&Matrix::from_ints(&[[1, 2]])).unwrap_err(),
            Error::NotSquare { rows: 1, cols: 2 }
        );
        assert_eq!(det(&Matrix::zeros(0, 0)).unwrap(), int(1));
    }

    #[test]
    fn nullspace_of_singular_block() {
        let ns = nullspace(&Matrix::from_ints(&[[1, 1], [1, 1]]));
        assert_eq!(ns, vec![ints(&[-1, 1])]);
        assert!(nullspace(&Matrix::identity(3)).is_empty());
    }

    #[test]
    fn solve_square_detects_singular() {
        let x = solve_square(&Matrix::from_ints(&[[1, 2], [3, 4]]), &ints(&[5, 6])).unwrap();
        assert_eq!(x, vec![int(-4), frac(9, 2)]);
        assert_eq!(
            solve_square(&Matrix::from_ints(&[[1, 1], [1, 1]]), &ints(&[1, 1])),
            Err(Error::SingularSystem)
        );
    }

    #[test]
    fn float_path_matches_exact_on_example() {
        let e = eliminate_f64(&[vec![0.0, 0.0, 1.0], vec![0.0, 1.0, 0.0]], &[5.0, 7.0]);
        assert_eq!(e.sigma, vec![2, 1, 0]);
        assert_eq!(e.rank, 2);
        assert_eq!(e.bprime, vec![5.0, 7.0]);
    }
}
