//! Replacing bilinear terms by reduction constraints.
//!
//! Multiplying `Ax = b` by `y` and substituting `w = x y` gives the linear
//! rows `Aw - by = 0`. Together with `Ax = b` they pin `w` down completely
//! once `w_j = x_j y` is kept for the indices `J` outside a nonsingular
//! `m x m` column block of `A`. So `m` of the `n` bilinear terms can be
//! dropped, and `J` is valid exactly when the complementary columns of `A`
//! are linearly independent.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla;
use crate::model::{serde_rat, BilinearSystem, IndexSet, Matrix, Rational, SamplePoint, Vector};

/// The reformulated set `R_J`: `Ax = b`, `Aw - by = 0`, and `w_j = x_j y`
/// for `j` in `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedSystem {
    #[serde(rename = "J")]
    pub j: IndexSet,
    pub basic: IndexSet,
    /// Row `i` encodes `sum_j A_ij w_j - b_i y = 0`.
    pub reduction_rows: Matrix,
    #[serde(with = "serde_rat::vec")]
    pub rhs_coeff_y: Vector,
    pub retained_bilinear: IndexSet,
}

impl ReducedSystem {
    /// Number of bilinear constraints dropped from the original formulation.
    pub fn replaced_count(&self) -> usize {
        self.basic.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializing plain data cannot fail")
    }
}

fn check_size(system: &BilinearSystem, j: &IndexSet) -> Result<()> {
    let want = system.n() - system.m();
    if j.len() != want {
        return Err(Error::BadIndexSet(format!(
            "J = {j} has {} indices, expected n - m = {want}",
            j.len()
        )));
    }
    if let Some(&bad) = j.indices().iter().find(|&&k| k >= system.n()) {
        return Err(Error::BadIndexSet(format!(
            "index {} out of range 1..={}",
            bad + 1,
            system.n()
        )));
    }
    Ok(())
}

/// Builds `R_J` for the `J` induced by column-pivoted elimination: the
/// columns that end up outside the leading triangular block.
pub fn compute_reduction(system: &BilinearSystem) -> Result<ReducedSystem> {
    let elim = exactla::eliminate(system.a(), system.b())?;
    let (m, n) = (system.m(), system.n());
    let j = IndexSet::from_zero_based(elim.sigma[m..].iter().copied(), n)?;
    let basic = IndexSet::from_zero_based(elim.sigma[..m].iter().copied(), n)?;
    Ok(ReducedSystem {
        retained_bilinear: j.clone(),
        j,
        basic,
        reduction_rows: system.a().clone(),
        rhs_coeff_y: system.b().clone(),
    })
}

/// `R_J` for an arbitrary candidate `J`, valid or not.
pub fn reduced_for(system: &BilinearSystem, j: &IndexSet) -> Result<ReducedSystem> {
    check_size(system, j)?;
    Ok(ReducedSystem {
        retained_bilinear: j.clone(),
        basic: j.complement(system.n()),
        j: j.clone(),
        reduction_rows: system.a().clone(),
        rhs_coeff_y: system.b().clone(),
    })
}

/// `true` iff the columns of `A` outside `J` form a nonsingular block,
/// which is exactly when `R_J = C`.
pub fn is_valid_j(system: &BilinearSystem, j: &IndexSet) -> Result<bool> {
    check_size(system, j)?;
    let basic = j.complement(system.n());
    let block = system.a().select_columns(basic.indices());
    Ok(!exactla::det(&block)?.is_zero())
}

/// A point of `R_J \ C` when `J` is invalid, `None` when `J` is valid.
///
/// The point is `x = x0`, `y = 1`, `w = x0 + z` where `x0` is the particular
/// solution of `Ax = b` and `z` is a nonzero kernel vector of the basic
/// block, scaled so its first nonzero entry is 1 and padded with zeros on
/// `J`.
pub fn witness_nonequivalence(
    system: &BilinearSystem,
    j: &IndexSet,
) -> Result<Option<SamplePoint>> {
    check_size(system, j)?;
    let basic = j.complement(system.n());
    let block = system.a().select_columns(basic.indices());
    let Some(kernel) = exactla::nullspace(&block).into_iter().next() else {
        return Ok(None);
    };
    let lead = kernel
        .iter()
        .find(|v| !v.is_zero())
        .cloned()
        .expect("nullspace basis vectors are nonzero");

    let mut z = vec![Rational::zero(); system.n()];
    for (&col, v) in basic.indices().iter().zip(&kernel) {
        z[col] = v / &lead;
    }
    let x0 = exactla::affine_parametrize(system.a(), system.b())?.x0;
    let y = Rational::one();
    let w = x0.iter().zip(&z).map(|(xi, zi)| xi * &y + zi).collect();
    Ok(Some(SamplePoint { x: x0, w, y }))
}
