//! McCormick LP relaxations of a bounded bilinear system.
//!
//! Variables are ordered `x_1..x_n, w_1..w_n, y`. Two relaxations are built:
//!
//! * `full`: `Ax = b` plus the four envelope rows for every `w_j = x_j y`;
//! * `reduced`: `Ax = b`, the reduction rows `Aw - by = 0`, and envelope
//!   rows only for the bilinear terms kept by [`compute_reduction`].
//!
//! Both are solved exactly with a dense two-phase simplex using Bland's rule.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{dot, serde_rat, BilinearSystem, Rational, Vector};
use crate::reduction::compute_reduction;

pub use crate::model::{Bounds, Sense};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }

    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        }
    }
}

/// Where a row of a relaxation comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RowKind {
    /// `Ax = b`
    Linear,
    /// `Aw - by = 0`
    Reduction,
    /// McCormick envelope of one bilinear term
    Envelope,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpRow {
    pub coeffs: Vector,
    pub relation: Relation,
    pub rhs: Rational,
    pub kind: RowKind,
}

impl LpRow {
    pub fn is_satisfied(&self, point: &[Rational]) -> bool {
        self.relation.holds(&dot(&self.coeffs, point), &self.rhs)
    }
}

/// `[lo, hi]`, either side possibly infinite (`None`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VarBound {
    pub lo: Option<Rational>,
    pub hi: Option<Rational>,
}

impl VarBound {
    pub fn new(lo: Option<Rational>, hi: Option<Rational>) -> Self {
        VarBound { lo, hi }
    }

    pub fn free() -> Self {
        VarBound::default()
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo.as_ref().is_none_or(|lo| lo <= v) && self.hi.as_ref().is_none_or(|hi| v <= hi)
    }
}

/// A linear program over `2n + 1` variables `(x, w, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    n: usize,
    pub sense: Sense,
    pub objective: Vector,
    pub rows: Vec<LpRow>,
    pub varbounds: Vec<VarBound>,
}

impl LinearProgram {
    pub fn new(
        n: usize,
        sense: Sense,
        objective: Vector,
        rows: Vec<LpRow>,
        varbounds: Vec<VarBound>,
    ) -> Result<Self> {
        let vars = 2 * n + 1;
        if objective.len() != vars || varbounds.len() != vars {
            return Err(Error::DimensionMismatch(format!(
                "objective has {} and bounds {} entries, expected 2n + 1 = {vars}",
                objective.len(),
                varbounds.len()
            )));
        }
        if let Some(i) = rows.iter().position(|r| r.coeffs.len() != vars) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} coefficients, expected {vars}",
                i + 1,
                rows[i].coeffs.len()
            )));
        }
        Ok(LinearProgram {
            n,
            sense,
            objective,
            rows,
            varbounds,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        2 * self.n + 1
    }

    pub fn var_name(&self, k: usize) -> String {
        if k < self.n {
            format!("x{}", k + 1)
        } else if k < 2 * self.n {
            format!("w{}", k - self.n + 1)
        } else {
            "y".to_string()
        }
    }

    pub fn count_rows(&self, kind: RowKind) -> usize {
        self.rows.iter().filter(|r| r.kind == kind).count()
    }

    /// Every row and variable bound holds at `point`.
    pub fn is_feasible(&self, point: &[Rational]) -> bool {
        point.len() == self.num_vars()
            && self.rows.iter().all(|r| r.is_satisfied(point))
            && self.varbounds.iter().zip(point).all(|(b, v)| b.contains(v))
    }

    pub fn objective_value(&self, point: &[Rational]) -> Rational {
        dot(&self.objective, point)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    pub status: LpStatus,
    #[serde(with = "serde_rat::opt")]
    pub value: Option<Rational>,
    #[serde(serialize_with = "serialize_opt_vec")]
    pub point: Option<Vector>,
}

fn serialize_opt_vec<S: serde::Serializer>(
    v: &Option<Vector>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.iter().map(Rational::to_string).collect::<Vec<_>>()),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Full,
    Reduced,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Mode::Full),
            "reduced" => Ok(Mode::Reduced),
            other => Err(Error::BadArgument(format!(
                "mode must be \"full\" or \"reduced\", got {other:?}"
            ))),
        }
    }
}

fn check_box(bx: &Bounds) -> Result<()> {
    Bounds::new(bx.xlo.clone(), bx.xhi.clone(), bx.ylo.clone(), bx.yhi.clone()).map(|_| ())
}

/// The McCormick envelope of `w_j = x_j y` over `bx` (0-based `j`):
///
/// ```text
/// w_j >= xlo_j y + ylo x_j - xlo_j ylo
/// w_j >= xhi_j y + yhi x_j - xhi_j yhi
/// w_j <= xhi_j y + ylo x_j - xhi_j ylo
/// w_j <= xlo_j y + yhi x_j - xlo_j yhi
/// ```
///
/// written as `w_j - a y - c x_j (>=|<=) -a c`.
pub fn mccormick_rows(j: usize, bx: &Bounds) -> Result<[LpRow; 4]> {
    check_box(bx)?;
    let n = bx.len();
    if j >= n {
        return Err(Error::BadBox(format!(
            "bilinear term {} outside a box over {n} variables",
            j + 1
        )));
    }
    let (xlo, xhi) = (&bx.xlo[j], &bx.xhi[j]);
    let (ylo, yhi) = (&bx.ylo, &bx.yhi);
    let row = |xc: &Rational, yc: &Rational, relation: Relation| {
        let mut coeffs = vec![Rational::zero(); 2 * n + 1];
        coeffs[n + j] = Rational::one();
        coeffs[2 * n] = -xc.clone();
        coeffs[j] = -yc.clone();
        LpRow {
            coeffs,
            relation,
            rhs: -(xc * yc),
            kind: RowKind::Envelope,
        }
    };
    Ok([
        row(xlo, ylo, Relation::Ge),
        row(xhi, yhi, Relation::Ge),
        row(xhi, ylo, Relation::Le),
        row(xlo, yhi, Relation::Le),
    ])
}

/// Builds the LP relaxation of `C` intersected with the system's box.
pub fn build_relaxation(system: &BilinearSystem, mode: Mode) -> Result<LinearProgram> {
    let bx = system.bounds().ok_or(Error::MissingBounds)?;
    let obj = system.objective().ok_or(Error::MissingObjective)?;
    let (m, n) = (system.m(), system.n());
    let vars = 2 * n + 1;

    let mut rows = Vec::new();
    for i in 0..m {
        let mut coeffs = vec![Rational::zero(); vars];
        coeffs[..n].clone_from_slice(system.a().row(i));
        rows.push(LpRow {
            coeffs,
            relation: Relation::Eq,
            rhs: system.b()[i].clone(),
            kind: RowKind::Linear,
        });
    }

    let enveloped: Vec<usize> = match mode {
        Mode::Full => (0..n).collect(),
        Mode::Reduced => {
            let reduced = compute_reduction(system)?;
            for i in 0..m {
                let mut coeffs = vec![Rational::zero(); vars];
                coeffs[n..2 * n].clone_from_slice(reduced.reduction_rows.row(i));
                coeffs[2 * n] = -reduced.rhs_coeff_y[i].clone();
                rows.push(LpRow {
                    coeffs,
                    relation: Relation::Eq,
                    rhs: Rational::zero(),
                    kind: RowKind::Reduction,
                });
            }
            reduced.retained_bilinear.indices().to_vec()
        }
    };
    for &j in &enveloped {
        rows.extend(mccormick_rows(j, bx)?);
    }

    let mut varbounds = Vec::with_capacity(vars);
    for j in 0..n {
        varbounds.push(VarBound::new(
            Some(bx.xlo[j].clone()),
            Some(bx.xhi[j].clone()),
        ));
    }
    for j in 0..n {
        let corners = [
            &bx.xlo[j] * &bx.ylo,
            &bx.xlo[j] * &bx.yhi,
            &bx.xhi[j] * &bx.ylo,
            &bx.xhi[j] * &bx.yhi,
        ];
        let lo = corners.iter().min().cloned();
        let hi = corners.iter().max().cloned();
        varbounds.push(VarBound::new(lo, hi));
    }
    varbounds.push(VarBound::new(Some(bx.ylo.clone()), Some(bx.yhi.clone())));

    let mut objective = obj.x.clone();
    objective.extend(obj.w.iter().cloned());
    objective.push(obj.y.clone());
    LinearProgram::new(n, obj.sense, objective, rows, varbounds)
}

/// Dense simplex tableau in canonical form for the current basis.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cost: Vec<Rational>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, p) in self.cost.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Reduced costs of `c` against the current basis.
    fn price(&mut self, c: &[Rational]) {
        let mut cost = c.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for (v, a) in cost.iter_mut().zip(&self.rows[i]) {
                *v -= &c[b] * a;
            }
        }
        self.cost = cost;
    }

    /// Bland's rule: lowest-index improving column, ties in the ratio test
    /// broken by lowest basic index. Returns `false` if unbounded.
    fn optimize(&mut self, allowed: &[bool]) -> bool {
        loop {
            let Some(enter) = (0..self.cost.len()).find(|&j| allowed[j] && self.cost[j].is_negative())
            else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((leave, _)) => self.pivot(leave, enter),
                None => return false,
            }
        }
    }
}

/// `v = offset + sum coef * z_k` for the standard-form columns `z_k >= 0`.
struct VarMap {
    offset: Rational,
    terms: Vec<(usize, Rational)>,
}

/// Sparse row over tableau columns: `sum coeffs rel rhs`.
type SparseRow = (Vec<(usize, Rational)>, Relation, Rational);

/// Solves `lp` exactly.
pub fn solve_lp(lp: &LinearProgram) -> LpSolution {
    let nv = lp.num_vars();

    // Shift/split variables so every column is nonnegative.
    let mut maps = Vec::with_capacity(nv);
    let mut ncols = 0;
    let mut extra_rows: Vec<SparseRow> = Vec::new();
    for b in &lp.varbounds {
        let map = match (&b.lo, &b.hi) {
            (Some(lo), hi) => {
                let z = ncols;
                ncols += 1;
                if let Some(hi) = hi {
                    extra_rows.push((vec![(z, Rational::one())], Relation::Le, hi - lo));
                }
                VarMap {
                    offset: lo.clone(),
                    terms: vec![(z, Rational::one())],
                }
            }
            (None, Some(hi)) => {
                let z = ncols;
                ncols += 1;
                VarMap {
                    offset: hi.clone(),
                    terms: vec![(z, -Rational::one())],
                }
            }
            (None, None) => {
                let z = ncols;
                ncols += 2;
                VarMap {
                    offset: Rational::zero(),
                    terms: vec![(z, Rational::one()), (z + 1, -Rational::one())],
                }
            }
        };
        maps.push(map);
    }

    let mut std_rows: Vec<SparseRow> = Vec::new();
    for row in &lp.rows {
        let mut rhs = row.rhs.clone();
        let mut terms: Vec<Rational> = vec![Rational::zero(); ncols];
        for (k, a) in row.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            rhs -= a * &maps[k].offset;
            for (z, c) in &maps[k].terms {
                terms[*z] += a * c;
            }
        }
        let sparse = terms
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        std_rows.push((sparse, row.relation, rhs));
    }
    std_rows.extend(extra_rows);

    // Slack/surplus columns, then one artificial per row.
    let nslack = std_rows
        .iter()
        .filter(|(_, rel, _)| *rel != Relation::Eq)
        .count();
    let nrows = std_rows.len();
    let art0 = ncols + nslack;
    let total = art0 + nrows;
    let mut rows = Vec::with_capacity(nrows);
    let mut rhs = Vec::with_capacity(nrows);
    let mut slack = ncols;
    for (i, (terms, rel, b)) in std_rows.into_iter().enumerate() {
        let mut r = vec![Rational::zero(); total];
        for (z, v) in terms {
            r[z] = v;
        }
        match rel {
            Relation::Le => {
                r[slack] = Rational::one();
                slack += 1;
            }
            Relation::Ge => {
                r[slack] = -Rational::one();
                slack += 1;
            }
            Relation::Eq => {}
        }
        let mut b = b;
        if b.is_negative() {
            for v in r.iter_mut() {
                *v = -v.clone();
            }
            b = -b;
        }
        r[art0 + i] = Rational::one();
        rows.push(r);
        rhs.push(b);
    }

    let mut tab = Tableau {
        rows,
        rhs,
        basis: (art0..total).collect(),
        cost: Vec::new(),
    };

    // Phase 1: minimize the sum of artificials.
    let mut phase1 = vec![Rational::zero(); total];
    for c in phase1.iter_mut().skip(art0) {
        *c = Rational::one();
    }
    tab.price(&phase1);
    let all = vec![true; total];
    tab.optimize(&all);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&b, _)| b >= art0)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        return LpSolution {
            status: LpStatus::Infeasible,
            value: None,
            point: None,
        };
    }

    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < tab.rows.len() {
        if tab.basis[i] >= art0 {
            match (0..art0).find(|&c| !tab.rows[i][c].is_zero()) {
                Some(c) => tab.pivot(i, c),
                None => {
                    tab.rows.remove(i);
                    tab.rhs.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    // Phase 2 on the original objective, minimization form.
    let sign = match lp.sense {
        Sense::Min => Rational::one(),
        Sense::Max => -Rational::one(),
    };
    let mut phase2 = vec![Rational::zero(); total];
    for (k, c) in lp.objective.iter().enumerate() {
        for (z, coef) in &maps[k].terms {
            phase2[*z] += &sign * c * coef;
        }
    }
    tab.price(&phase2);
    let allowed: Vec<bool> = (0..total).map(|c| c < art0).collect();
    if !tab.optimize(&allowed) {
        return LpSolution {
            status: LpStatus::Unbounded,
            value: None,
            point: None,
        };
    }

    let mut z = vec![Rational::zero(); total];
    for (&b, v) in tab.basis.iter().zip(&tab.rhs) {
        z[b] = v.clone();
    }
    let point: Vector = maps
        .iter()
        .map(|m| {
            m.terms
                .iter()
                .fold(m.offset.clone(), |acc, (k, c)| acc + &z[*k] * c)
        })
        .collect();
    LpSolution {
        status: LpStatus::Optimal,
        value: Some(lp.objective_value(&point)),
        point: Some(point),
    }
}

/// Both relaxations side by side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelaxationComparison {
    pub full: ModeSummary,
    pub reduced: ModeSummary,
    pub bilinear_terms_replaced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeSummary {
    pub status: LpStatus,
    #[serde(with = "serde_rat::opt")]
    pub value: Option<Rational>,
    pub rows: usize,
    pub linear_rows: usize,
    pub envelope_rows: usize,
}

impl ModeSummary {
    fn of(lp: &LinearProgram, sol: &LpSolution) -> Self {
        ModeSummary {
            status: sol.status,
            value: sol.value.clone(),
            rows: lp.rows.len(),
            linear_rows: lp.count_rows(RowKind::Linear) + lp.count_rows(RowKind::Reduction),
            envelope_rows: lp.count_rows(RowKind::Envelope),
        }
    }
}

/// Builds and solves both relaxations of `system`.
pub fn compare_relaxations(system: &BilinearSystem) -> Result<RelaxationComparison> {
    let full = build_relaxation(system, Mode::Full)?;
    let reduced = build_relaxation(system, Mode::Reduced)?;
    let (full_sol, reduced_sol) = std::thread::scope(|s| {
        let h = s.spawn(|| solve_lp(&full));
        let r = solve_lp(&reduced);
        (h.join().expect("solver thread panicked"), r)
    });
    Ok(RelaxationComparison {
        full: ModeSummary::of(&full, &full_sol),
        reduced: ModeSummary::of(&reduced, &reduced_sol),
        bilinear_terms_replaced: system.m(),
    })
}

/// Significant digits written for non-integer coefficients in LP files.
pub const LP_DIGITS: usize = 17;

/// Decimal rendering of `r` rounded to `digits` significant digits, and
/// whether the rendering is exact.
pub fn format_decimal(r: &Rational, digits: usize) -> (String, bool) {
    if r.is_integer() {
        return (r.numer().to_string(), true);
    }
    let neg = r.is_negative();
    let a = r.abs();
    let ten = Rational::from_integer(BigInt::from(10));
    let lo = Rational::from_integer(BigInt::from(10).pow(digits as u32 - 1));
    let hi = &lo * &ten;

    // scale so that lo <= a * 10^k < hi
    let mut k: i64 = 0;
    let mut scaled = a.clone();
    while scaled < lo {
        scaled *= &ten;
        k += 1;
    }
    while scaled >= hi {
        scaled /= &ten;
        k -= 1;
    }
    let exact = scaled.is_integer();
    let mut q = scaled.round().to_integer();
    if Rational::from_integer(q.clone()) >= hi {
        q /= 10;
        k -= 1;
    }

    let mut s = q.to_string();
    if k > 0 {
        let k = k as usize;
        if s.len() <= k {
            s = "0".repeat(k - s.len() + 1) + &s;
        }
        s.insert(s.len() - k, '.');
        let trimmed = s.trim_end_matches('0').trim_end_matches('.');
        s = trimmed.to_string();
    } else {
        s.push_str(&"0".repeat((-k) as usize));
    }
    if neg {
        s.insert(0, '-');
    }
    (s, exact)
}

fn write_expr(lp: &LinearProgram, coeffs: &[Rational], exact: &mut Vec<String>) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let first = out.is_empty();
        let sign = if c.is_negative() { "-" } else { "+" };
        if first {
            if c.is_negative() {
                out.push_str("- ");
            }
        } else {
            let _ = write!(out, " {sign} ");
        }
        let mag = c.abs();
        if !mag.is_one() {
            let (d, is_exact) = format_decimal(&mag, LP_DIGITS);
            if !is_exact {
                exact.push(format!("{} = {}", lp.var_name(k), c));
            }
            let _ = write!(out, "{d} ");
        }
        out.push_str(&lp.var_name(k));
    }
    if out.is_empty() {
        out = format!("0 {}", lp.var_name(0));
    }
    out
}

fn number(r: &Rational, label: &str, exact: &mut Vec<String>) -> String {
    let (d, is_exact) = format_decimal(r, LP_DIGITS);
    if !is_exact {
        exact.push(format!("{label} = {r}"));
    }
    d
}

fn with_comment(line: String, exact: Vec<String>) -> String {
    if exact.is_empty() {
        line
    } else {
        format!("{line} \\ exact: {}", exact.join(", "))
    }
}

/// CPLEX LP text for `lp`. Coefficients that are not exact decimals at 17
/// significant digits carry their exact fraction in a trailing comment.
pub fn lp_file_text(lp: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str(match lp.sense {
        Sense::Min => "Minimize\n",
        Sense::Max => "Maximize\n",
    });
    let mut exact = Vec::new();
    let expr = write_expr(lp, &lp.objective, &mut exact);
    out.push_str(&with_comment(format!(" obj: {expr}"), exact));
    out.push('\n');

    out.push_str("Subject To\n");
    for (i, row) in lp.rows.iter().enumerate() {
        let mut exact = Vec::new();
        let expr = write_expr(lp, &row.coeffs, &mut exact);
        let rhs = number(&row.rhs, "rhs", &mut exact);
        let line = format!(" c{}: {expr} {} {rhs}", i + 1, row.relation.symbol());
        out.push_str(&with_comment(line, exact));
        out.push('\n');
    }

    out.push_str("Bounds\n");
    for (k, b) in lp.varbounds.iter().enumerate() {
        let name = lp.var_name(k);
        let mut exact = Vec::new();
        let line = match (&b.lo, &b.hi) {
            (Some(lo), Some(hi)) if lo == hi => {
                format!(" {name} = {}", number(lo, "value", &mut exact))
            }
            (Some(lo), Some(hi)) => format!(
                " {} <= {name} <= {}",
                number(lo, "lo", &mut exact),
                number(hi, "hi", &mut exact)
            ),
            (Some(lo), None) => format!(" {name} >= {}", number(lo, "lo", &mut exact)),
            (None, Some(hi)) => format!(" -inf <= {name} <= {}", number(hi, "hi", &mut exact)),
            (None, None) => format!(" {name} free"),
        };
        out.push_str(&with_comment(line, exact));
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

/// Writes [`lp_file_text`] to `path`.
pub fn emit_lp_file(lp: &LinearProgram, path: &Path) -> Result<()> {
    std::fs::write(path, lp_file_text(lp))?;
    Ok(())
}
