//! Domain types, exact rational scalars and the JSON problem-file format.
//!
//! A problem file describes the set
//! `C = { (x, w, y) : Ax = b, w_j = x_j * y for every j }`
//! together with optional data used only by the relaxation builder:
//!
//! ```json
//! {"A": [["1", "1"]], "b": [1],
//!  "bounds": {"x": [["0", "1"], ["0", "1"]], "y": ["0", "1"]},
//!  "objective": {"x": [0, 0], "w": [1, 0], "y": 0, "sense": "min"}}
//! ```
//!
//! Scalars are JSON integers or strings of the form `"p"`, `"-p"`, `"p/q"`.
//! Output always uses canonical strings (`"1/2"`, `"3"`).

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::exactla;

/// Exact fraction. Always kept in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Dense vector of exact scalars.
pub type Vector = Vec<Rational>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// `num / den`, reduced. Panics when `den` is zero.
pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn ints(values: &[i64]) -> Vector {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses `-?digits(/digits)?`. A zero denominator is rejected.
pub fn parse_rational(text: &str) -> std::result::Result<Rational, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = num.strip_prefix('-').unwrap_or(num);
    if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
        return Err(format!("unparsable numerator {num:?}"));
    }
    let num: BigInt = num.parse().map_err(|e| format!("{e}"))?;
    let den: BigInt = match den {
        None => BigInt::one(),
        Some(d) => {
            if d.is_empty() || !d.bytes().all(|c| c.is_ascii_digit()) {
                return Err(format!("unparsable denominator {d:?}"));
            }
            d.parse().map_err(|e| format!("{e}"))?
        }
    };
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"`, or `"p"` for integers.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub(crate) mod serde_rat {
    use super::{format_rational, Rational};
    use serde::ser::{SerializeSeq, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format_rational(r))?;
            }
            seq.end()
        }
    }

    pub mod opt {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => s.serialize_some(&format_rational(r)),
                None => s.serialize_none(),
            }
        }
    }
}

/// Dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(k: usize) -> Self {
        let mut m = Matrix::zeros(k, k);
        for i in 0..k {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows. Ragged input is a dimension mismatch.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} entries, row 1 has {cols}",
                i + 1,
                rows[i].len()
            )));
        }
        let n_rows = rows.len();
        Ok(Matrix {
            rows: n_rows,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Integer matrix literal. Panics on ragged rows.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| ints(r.as_ref())).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Submatrix made of the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for i in 0..self.rows {
            entries.extend(cols.iter().map(|&j| self[(i, j)].clone()));
        }
        Matrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `self * v`. Panics if `v.len() != cols`.
    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length does not match columns");
        (0..self.rows)
            .map(|i| dot(self.row(i), v))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        out
    }

    pub fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 == r2 {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(r1 * self.cols + j, r2 * self.cols + j);
        }
    }

    pub fn swap_columns(&mut self, c1: usize, c2: usize) {
        if c1 == c2 {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + c1, i * self.cols + c2);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn scale(v: &[Rational], s: &Rational) -> Vector {
    v.iter().map(|x| x * s).collect()
}

/// Sorted set of variable indices, stored 0-based and reported 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// Builds a set from 0-based indices, all of which must be `< n`.
    pub fn from_zero_based<I: IntoIterator<Item = usize>>(indices: I, n: usize) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = v.iter().find(|&&j| j >= n) {
            return Err(Error::BadIndexSet(format!(
                "index {} out of range 1..={n}",
                bad + 1
            )));
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::BadIndexSet(format!("duplicate index {}", w[0] + 1)));
        }
        Ok(IndexSet(v))
    }

    /// Builds a set from 1-based indices as used in files and on the command line.
    pub fn from_one_based(indices: &[usize], n: usize) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::BadIndexSet("indices are 1-based; got 0".into()));
        }
        IndexSet::from_zero_based(indices.iter().map(|&j| j - 1), n)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|&j| j + 1).collect()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.0.binary_search(&j).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `{0..n} \ self`.
    pub fn complement(&self, n: usize) -> IndexSet {
        IndexSet((0..n).filter(|&j| !self.contains(j)).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Simple bounds on `x` and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub xlo: Vector,
    pub xhi: Vector,
    pub ylo: Rational,
    pub yhi: Rational,
}

impl Bounds {
    pub fn new(xlo: Vector, xhi: Vector, ylo: Rational, yhi: Rational) -> Result<Self> {
        if xlo.len() != xhi.len() {
            return Err(Error::BadBox(format!(
                "{} lower and {} upper x bounds",
                xlo.len(),
                xhi.len()
            )));
        }
        if let Some(j) = (0..xlo.len()).find(|&j| xlo[j] > xhi[j]) {
            return Err(Error::BadBox(format!(
                "x{} has lower bound {} above upper bound {}",
                j + 1,
                xlo[j],
                xhi[j]
            )));
        }
        if ylo > yhi {
            return Err(Error::BadBox(format!(
                "y has lower bound {ylo} above upper bound {yhi}"
            )));
        }
        Ok(Bounds { xlo, xhi, ylo, yhi })
    }

    /// `[0, 1]^n x [0, 1]`.
    pub fn unit(n: usize) -> Self {
        Bounds {
            xlo: vec![Rational::zero(); n],
            xhi: vec![Rational::one(); n],
            ylo: Rational::zero(),
            yhi: Rational::one(),
        }
    }

    pub fn len(&self) -> usize {
        self.xlo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xlo.is_empty()
    }

    pub fn contains(&self, x: &[Rational], y: &Rational) -> bool {
        x.len() == self.len()
            && (0..x.len()).all(|j| self.xlo[j] <= x[j] && x[j] <= self.xhi[j])
            && self.ylo <= *y
            && *y <= self.yhi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Min,
    Max,
}

/// Linear objective `c_x . x + c_w . w + c_y * y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Objective {
    pub x: Vector,
    pub w: Vector,
    pub y: Rational,
    pub sense: Sense,
}

impl Objective {
    pub fn value(&self, x: &[Rational], w: &[Rational], y: &Rational) -> Rational {
        dot(&self.x, x) + dot(&self.w, w) + &self.y * y
    }
}

/// The data `(A, b)` of `C = { (x, w, y) : Ax = b, w_j = x_j y }`, with
/// `A` of full row rank and at least one row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearSystem {
    a: Matrix,
    b: Vector,
    bounds: Option<Bounds>,
    objective: Option<Objective>,
}

impl BilinearSystem {
    pub fn new(a: Matrix, b: Vector) -> Result<Self> {
        if a.rows() == 0 {
            return Err(Error::DimensionMismatch("A must have at least one row".into()));
        }
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch(format!(
                "b has length {} but A has {} rows",
                b.len(),
                a.rows()
            )));
        }
        if a.rows() > a.cols() {
            // rank <= n < m, report the actual rank
            return Err(Error::RankDeficient {
                rank: exactla::rank(&a),
                m: a.rows(),
            });
        }
        let rank = exactla::rank(&a);
        if rank < a.rows() {
            return Err(Error::RankDeficient { rank, m: a.rows() });
        }
        Ok(BilinearSystem {
            a,
            b,
            bounds: None,
            objective: None,
        })
    }

    pub fn with_bounds(mut self, bounds: Bounds) -> Result<Self> {
        if bounds.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "bounds.x has {} entries, expected n = {}",
                bounds.len(),
                self.n()
            )));
        }
        self.bounds = Some(bounds);
        Ok(self)
    }

    pub fn with_objective(mut self, objective: Objective) -> Result<Self> {
        if objective.x.len() != self.n() || objective.w.len() != self.n() {
            return Err(Error::DimensionMismatch(format!(
                "objective has {} x and {} w coefficients, expected n = {}",
                objective.x.len(),
                objective.w.len(),
                self.n()
            )));
        }
        self.objective = Some(objective);
        Ok(self)
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Vector {
        &self.b
    }

    /// Number of variables in `x` (and in `w`).
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Number of linear rows in `Ax = b`.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn bounds(&self) -> Option<&Bounds> {
        self.bounds.as_ref()
    }

    pub fn objective(&self) -> Option<&Objective> {
        self.objective.as_ref()
    }
}

/// A candidate point `(x, w, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SamplePoint {
    #[serde(with = "serde_rat::vec")]
    pub x: Vector,
    #[serde(with = "serde_rat::vec")]
    pub w: Vector,
    #[serde(with = "serde_rat")]
    pub y: Rational,
}

fn rational_at(value: &Value, field: &str) -> Result<Rational> {
    let bad = |reason: String| Error::BadRational {
        field: field.to_string(),
        reason,
    };
    match value {
        Value::Number(num) => match num.as_i64() {
            Some(i) => Ok(int(i)),
            None => match num.as_u64() {
                Some(u) => Ok(Rational::from_integer(BigInt::from(u))),
                None => Err(bad(format!(
                    "{num} is not an integer; write fractions as \"p/q\""
                ))),
            },
        },
        Value::String(s) => parse_rational(s).map_err(bad),
        other => Err(bad(format!("expected integer or \"p/q\" string, got {other}"))),
    }
}

fn array_at<'a>(value: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| Error::MalformedJson(format!("{field} must be an array")))
}

fn vector_at(value: &Value, field: &str) -> Result<Vector> {
    array_at(value, field)?
        .iter()
        .enumerate()
        .map(|(i, v)| rational_at(v, &format!("{field}[{}]", i + 1)))
        .collect()
}

fn pair_at(value: &Value, field: &str) -> Result<(Rational, Rational)> {
    let v = vector_at(value, field)?;
    match <[Rational; 2]>::try_from(v) {
        Ok([lo, hi]) => Ok((lo, hi)),
        Err(v) => Err(Error::DimensionMismatch(format!(
            "{field} must be a [lo, hi] pair, got {} entries",
            v.len()
        ))),
    }
}

/// Parses and validates a problem file, including the rank check on `A`.
pub fn parse_system(text: &str) -> Result<BilinearSystem> {
    let root: Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedJson(e.to_string()))?;
    let obj = root
        .as_object()
        .ok_or_else(|| Error::MalformedJson("top level must be an object".into()))?;
    if let Some(key) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "A" | "b" | "bounds" | "objective"))
    {
        return Err(Error::MalformedJson(format!("unknown field {key:?}")));
    }
    let a_val = obj
        .get("A")
        .ok_or_else(|| Error::MalformedJson("missing field \"A\"".into()))?;
    let b_val = obj
        .get("b")
        .ok_or_else(|| Error::MalformedJson("missing field \"b\"".into()))?;

    let rows = array_at(a_val, "A")?
        .iter()
        .enumerate()
        .map(|(i, row)| vector_at(row, &format!("A[{}]", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let a = Matrix::from_rows(rows)?;
    let b = vector_at(b_val, "b")?;
    if a.rows() > 0 && a.cols() == 0 {
        return Err(Error::DimensionMismatch("A has empty rows".into()));
    }
    let mut system = BilinearSystem::new(a, b)?;

    if let Some(bv) = obj.get("bounds") {
        let bo = bv
            .as_object()
            .ok_or_else(|| Error::MalformedJson("bounds must be an object".into()))?;
        let xs = array_at(
            bo.get("x")
                .ok_or_else(|| Error::MalformedJson("missing field \"bounds.x\"".into()))?,
            "bounds.x",
        )?;
        let mut xlo = Vec::with_capacity(xs.len());
        let mut xhi = Vec::with_capacity(xs.len());
        for (j, pair) in xs.iter().enumerate() {
            let (lo, hi) = pair_at(pair, &format!("bounds.x[{}]", j + 1))?;
            xlo.push(lo);
            xhi.push(hi);
        }
        let (ylo, yhi) = pair_at(
            bo.get("y")
                .ok_or_else(|| Error::MalformedJson("missing field \"bounds.y\"".into()))?,
            "bounds.y",
        )?;
        system = system.with_bounds(Bounds::new(xlo, xhi, ylo, yhi)?)?;
    }

    if let Some(ov) = obj.get("objective") {
        let oo = ov
            .as_object()
            .ok_or_else(|| Error::MalformedJson("objective must be an object".into()))?;
        let get = |k: &str| {
            oo.get(k)
                .ok_or_else(|| Error::MalformedJson(format!("missing field \"objective.{k}\"")))
        };
        let x = vector_at(get("x")?, "objective.x")?;
        let w = vector_at(get("w")?, "objective.w")?;
        let y = rational_at(get("y")?, "objective.y")?;
        let sense = match oo.get("sense").map(Value::as_str) {
            None | Some(Some("min")) => Sense::Min,
            Some(Some("max")) => Sense::Max,
            Some(_) => {
                return Err(Error::MalformedJson(
                    "objective.sense must be \"min\" or \"max\"".into(),
                ))
            }
        };
        system = system.with_objective(Objective { x, w, y, sense })?;
    }
    Ok(system)
}

#[derive(Serialize)]
struct BoundsOut<'a> {
    x: Vec<[String; 2]>,
    #[serde(with = "serde_rat::vec")]
    y: &'a [Rational],
}

#[derive(Serialize)]
struct ObjectiveOut<'a> {
    #[serde(with = "serde_rat::vec")]
    x: &'a [Rational],
    #[serde(with = "serde_rat::vec")]
    w: &'a [Rational],
    #[serde(with = "serde_rat")]
    y: &'a Rational,
    sense: Sense,
}

#[derive(Serialize)]
struct SystemOut<'a> {
    #[serde(rename = "A")]
    a: &'a Matrix,
    #[serde(with = "serde_rat::vec")]
    b: &'a [Rational],
    #[serde(skip_serializing_if = "Option::is_none")]
    bounds: Option<BoundsOut<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<ObjectiveOut<'a>>,
}

/// Writes a problem file that [`parse_system`] reads back to an equal system.
pub fn serialize_system(system: &BilinearSystem) -> String {
    let y_pair;
    let bounds = match system.bounds() {
        Some(bx) => {
            y_pair = [bx.ylo.clone(), bx.yhi.clone()];
            Some(BoundsOut {
                x: (0..bx.len())
                    .map(|j| [format_rational(&bx.xlo[j]), format_rational(&bx.xhi[j])])
                    .collect(),
                y: &y_pair,
            })
        }
        None => None,
    };
    let out = SystemOut {
        a: system.a(),
        b: system.b(),
        bounds,
        objective: system.objective().map(|o| ObjectiveOut {
            x: &o.x,
            w: &o.w,
            y: &o.y,
            sense: o.sense,
        }),
    };
    serde_json::to_string_pretty(&out).expect("serializing plain data cannot fail")
}
