//! Instance generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use bilinred::model::{int, Matrix, Rational, Vector};
use bilinred::relax::LinearProgram;
use bilinred::{exactla, BilinearSystem};
use itertools::Itertools;
use num_traits::{One, Zero};
use rand::Rng;

/// Random `m x n` system with integer entries in `[-3, 3]`, rejection
/// sampled until `A` has full row rank.
pub fn random_system<R: Rng>(rng: &mut R, m: usize, n: usize) -> BilinearSystem {
    loop {
        let rows: Vec<Vec<i64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(-3..=3)).collect())
            .collect();
        let b: Vec<i64> = (0..m).map(|_| rng.random_range(-3..=3)).collect();
        if let Ok(s) = BilinearSystem::new(Matrix::from_ints(&rows), b.iter().map(|&v| int(v)).collect()) {
            return s;
        }
    }
}

/// `1 <= m <= n <= max_n`.
pub fn random_dims<R: Rng>(rng: &mut R, max_n: usize) -> (usize, usize) {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(1..=n);
    (m, n)
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &Matrix) -> Rational {
    let k = a.rows();
    assert_eq!(k, a.cols());
    if k == 0 {
        return Rational::one();
    }
    if k == 1 {
        return a[(0, 0)].clone();
    }
    let mut acc = Rational::zero();
    for c in 0..k {
        if a[(0, c)].is_zero() {
            continue;
        }
        let minor_rows: Vec<Vec<Rational>> = (1..k)
            .map(|i| (0..k).filter(|&j| j != c).map(|j| a[(i, j)].clone()).collect())
            .collect();
        let minor = Matrix::from_rows(minor_rows).unwrap();
        let term = &a[(0, c)] * cofactor_det(&minor);
        if c % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Solution of a square system by Cramer's rule, `None` if singular.
pub fn cramer(a: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vector> {
    let m = Matrix::from_rows(a.to_vec()).unwrap();
    let d = cofactor_det(&m);
    if d.is_zero() {
        return None;
    }
    let k = rhs.len();
    Some(
        (0..k)
            .map(|c| {
                let mut rows = a.to_vec();
                for (i, row) in rows.iter_mut().enumerate() {
                    row[c] = rhs[i].clone();
                }
                cofactor_det(&Matrix::from_rows(rows).unwrap()) / &d
            })
            .collect(),
    )
}

/// Small Gauss-Jordan solve used by the vertex oracle. `None` if singular.
fn gauss_solve(mut a: Vec<Vec<Rational>>, mut rhs: Vec<Rational>) -> Option<Vector> {
    let k = rhs.len();
    for c in 0..k {
        let p = (c..k).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        rhs.swap(c, p);
        for r in 0..k {
            if r == c || a[r][c].is_zero() {
                continue;
            }
            let f = &a[r][c] / &a[c][c];
            let pivot_row = a[c].clone();
            for (x, p) in a[r][c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= &f * p;
            }
            let d = &f * &rhs[c];
            rhs[r] -= d;
        }
    }
    Some((0..k).map(|i| &rhs[i] / &a[i][i]).collect())
}

/// Optimal value of a bounded, feasible LP by enumerating every basic
/// solution: each choice of `num_vars` constraints (rows or bounds) made
/// tight, keeping the feasible ones.
pub fn vertex_enumeration_opt(lp: &LinearProgram) -> Option<Rational> {
    let k = lp.num_vars();
    let mut planes: Vec<(Vec<Rational>, Rational)> = lp
        .rows
        .iter()
        .map(|r| (r.coeffs.clone(), r.rhs.clone()))
        .collect();
    for (v, b) in lp.varbounds.iter().enumerate() {
        for bound in [&b.lo, &b.hi].into_iter().flatten() {
            let mut e = vec![Rational::zero(); k];
            e[v] = Rational::one();
            planes.push((e, bound.clone()));
        }
    }
    let maximize = matches!(lp.sense, bilinred::Sense::Max);
    let mut best: Option<Rational> = None;
    for combo in (0..planes.len()).combinations(k) {
        let a: Vec<Vec<Rational>> = combo.iter().map(|&i| planes[i].0.clone()).collect();
        let rhs: Vec<Rational> = combo.iter().map(|&i| planes[i].1.clone()).collect();
        let Some(p) = gauss_solve(a, rhs) else {
            continue;
        };
        if !lp.is_feasible(&p) {
            continue;
        }
        let v = lp.objective_value(&p);
        best = Some(match best {
            None => v,
            Some(b) if maximize => b.max(v),
            Some(b) => b.min(v),
        });
    }
    best
}

/// Free parameters `t` with `x0 + B t = x`, for `x` solving `Ax = b`.
pub fn coordinates_of(param: &exactla::AffineParam, x: &[Rational]) -> Vector {
    let k = param.basis.len();
    if k == 0 {
        return Vec::new();
    }
    let d: Vector = x.iter().zip(&param.x0).map(|(a, b)| a - b).collect();
    // normal equations B^T B t = B^T d; B has independent columns
    let mut gram = vec![vec![Rational::zero(); k]; k];
    let mut rhs = vec![Rational::zero(); k];
    for (i, bi) in param.basis.iter().enumerate() {
        for (g, bj) in gram[i].iter_mut().zip(&param.basis) {
            *g = bilinred::model::dot(bi, bj);
        }
        rhs[i] = bilinred::model::dot(bi, &d);
    }
    exactla::solve_square(&Matrix::from_rows(gram).unwrap(), &rhs).expect("basis is independent")
}
