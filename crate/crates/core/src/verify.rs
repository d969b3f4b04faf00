//! Membership tests for `C` and `R_J`, samplers, and the randomized and
//! brute-force checks of `C = R_J`.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{self, AffineParam};
use crate::model::{scale, BilinearSystem, IndexSet, Matrix, Rational, SamplePoint, Vector};
use crate::reduction::{is_valid_j, witness_nonequivalence};

/// Default upper limit on `n` for [`oracle_all_valid_j`].
pub const ORACLE_CAP: usize = 14;

/// Outcome of [`check_equivalence`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    #[serde(rename = "J")]
    pub j: IndexSet,
    pub trials: usize,
    pub forward_failures: usize,
    pub backward_failures: usize,
    pub equivalent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<SamplePoint>,
    pub seed: u64,
}

impl EquivalenceReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializing plain data cannot fail")
    }
}

fn check_point(system: &BilinearSystem, p: &SamplePoint) -> Result<()> {
    let n = system.n();
    if p.x.len() != n || p.w.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "point has |x| = {}, |w| = {}, expected n = {n}",
            p.x.len(),
            p.w.len()
        )));
    }
    Ok(())
}

fn check_j(system: &BilinearSystem, j: &IndexSet) -> Result<()> {
    let want = system.n() - system.m();
    if j.len() != want || j.indices().iter().any(|&k| k >= system.n()) {
        return Err(Error::BadIndexSet(format!(
            "J = {j} must hold n - m = {want} indices from 1..={}",
            system.n()
        )));
    }
    Ok(())
}

fn satisfies_ax_b(system: &BilinearSystem, x: &[Rational]) -> bool {
    system.a().mul_vec(x) == *system.b()
}

/// `Ax = b` and `w_j = x_j y` for every `j`.
pub fn in_c(system: &BilinearSystem, p: &SamplePoint) -> Result<bool> {
    check_point(system, p)?;
    Ok(satisfies_ax_b(system, &p.x) && p.w.iter().zip(&p.x).all(|(w, x)| *w == x * &p.y))
}

/// `Ax = b`, `Aw - by = 0`, and `w_j = x_j y` for `j` in `J`.
pub fn in_rj(system: &BilinearSystem, j: &IndexSet, p: &SamplePoint) -> Result<bool> {
    check_point(system, p)?;
    check_j(system, j)?;
    Ok(satisfies_ax_b(system, &p.x)
        && system.a().mul_vec(&p.w) == scale(system.b(), &p.y)
        && j.indices().iter().all(|&k| p.w[k] == &p.x[k] * &p.y))
}

fn point_from(param: &AffineParam, y: Rational, t: &[Rational]) -> SamplePoint {
    let x = param.point(t);
    let w = scale(&x, &y);
    SamplePoint { x, w, y }
}

/// The point of `C` with `x = x0 + sum t_k v_k` and the given `y`.
pub fn sample_c(system: &BilinearSystem, y: &Rational, t: &[Rational]) -> Result<SamplePoint> {
    let param = exactla::affine_parametrize(system.a(), system.b())?;
    if t.len() != param.basis.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} free parameters given, n - m = {}",
            t.len(),
            param.basis.len()
        )));
    }
    Ok(point_from(&param, y.clone(), t))
}

/// Solves `Aw = by`, `w_j = x_j y (j in J)` for `w`.
///
/// For a valid `J` the system is square and nonsingular and the solution is
/// `x y`. Otherwise it has infinitely many solutions and
/// [`Error::SingularSystem`] is returned.
pub fn solve_for_w(
    system: &BilinearSystem,
    j: &IndexSet,
    x: &[Rational],
    y: &Rational,
) -> Result<Vector> {
    check_j(system, j)?;
    let n = system.n();
    if x.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "x has length {}, expected n = {n}",
            x.len()
        )));
    }
    if !satisfies_ax_b(system, x) {
        return Err(Error::InfeasibleX);
    }
    let mut rows = system.a().to_rows();
    let mut rhs = scale(system.b(), y);
    for &k in j.indices() {
        let mut e = vec![Rational::zero(); n];
        e[k] = Rational::one();
        rows.push(e);
        rhs.push(&x[k] * y);
    }
    exactla::solve_square(&Matrix::from_rows(rows)?, &rhs)
}

/// Small random rational: numerator in `[-9, 9]`, denominator in `[1, 9]`.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.random_range(-9..=9);
    let den: i64 = rng.random_range(1..=9);
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Generator for trial `k`. Depends only on `(seed, k)`.
pub fn trial_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Randomized attempt to refute `C = R_J`.
///
/// Each trial draws `y` and the free parameters of `x`, then checks that
/// the resulting point of `C` lies in `R_J` (forward) and that `R_J`
/// forces `w = x y` for that `x` and `y` (backward). A singular backward
/// system is reported with the explicit witness from
/// [`witness_nonequivalence`].
pub fn check_equivalence(
    system: &BilinearSystem,
    j: &IndexSet,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    if trials == 0 {
        return Err(Error::BadArgument("trials must be at least 1".into()));
    }
    check_j(system, j)?;
    let param = exactla::affine_parametrize(system.a(), system.b())?;
    let mut forward_failures = 0;
    let mut backward_failures = 0;
    let mut counterexample = None;

    for k in 0..trials {
        let mut rng = trial_rng(seed, k as u64);
        let y = small_rational(&mut rng);
        let t: Vec<Rational> = (0..param.basis.len())
            .map(|_| small_rational(&mut rng))
            .collect();
        let p = point_from(&param, y, &t);

        if !in_rj(system, j, &p)? {
            forward_failures += 1;
            counterexample.get_or_insert_with(|| p.clone());
        }

        match solve_for_w(system, j, &p.x, &p.y) {
            Ok(w) if w == p.w => {}
            Ok(w) => {
                backward_failures += 1;
                counterexample.get_or_insert(SamplePoint {
                    x: p.x.clone(),
                    w,
                    y: p.y.clone(),
                });
            }
            Err(Error::SingularSystem) => {
                backward_failures += 1;
                if counterexample.is_none() {
                    counterexample = witness_nonequivalence(system, j)?;
                }
            }
            Err(e) => return Err(e),
        }
    }

    Ok(EquivalenceReport {
        j: j.clone(),
        trials,
        forward_failures,
        backward_failures,
        equivalent: forward_failures + backward_failures == 0,
        counterexample,
        seed,
    })
}

/// Every `J` of size `n - m` with `R_J = C`, by the determinant criterion,
/// in lexicographic order.
pub fn oracle_all_valid_j(system: &BilinearSystem) -> Result<Vec<IndexSet>> {
    oracle_all_valid_j_capped(system, ORACLE_CAP)
}

pub fn oracle_all_valid_j_capped(system: &BilinearSystem, cap: usize) -> Result<Vec<IndexSet>> {
    let (m, n) = (system.m(), system.n());
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let mut valid = Vec::new();
    for combo in (0..n).combinations(n - m) {
        let j = IndexSet::from_zero_based(combo, n)?;
        if is_valid_j(system, &j)? {
            valid.push(j);
        }
    }
    Ok(valid)
}
