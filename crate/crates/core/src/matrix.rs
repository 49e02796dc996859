//! Dense exact matrices and linear solving over any [`FieldSpec`].
//!
//! Everything here is plain row reduction; the matrices downstream are tiny
//! (dimension at most a few hundred) and exactness matters more than speed.

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::poly::Polynomial;

/// Row-major dense matrix with entries in a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field,
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<ExactMatrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            for s in row {
                if s.field() != field {
                    return Err(Error::FieldMismatch(format!(
                        "entry in {} inside a matrix over {field}",
                        s.field()
                    )));
                }
                entries.push(s);
            }
        }
        Ok(ExactMatrix {
            field,
            rows: r,
            cols: c,
            entries,
        })
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> ExactMatrix {
        let data = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(field, v)).collect())
            .collect();
        ExactMatrix::from_rows(field, data).expect("integer rows are well formed")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "field mismatch in set");
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == ExactMatrix::identity(self.field, self.rows)
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        let entries = self.entries.iter().map(|a| a * s).collect();
        ExactMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn matmul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        assert_eq!(self.field, other.field, "field mismatch in matmul");
        let mut out = ExactMatrix::zero(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = &(a * b) + out.get(r, c);
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in apply");
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero(self.field);
                for c in 0..self.cols {
                    let e = self.get(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc = &acc + &(e * &v[c]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut acc = Scalar::zero(self.field);
        for i in 0..self.rows {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    /// Kronecker product: `(A (x) B)(u (x) v) = Au (x) Bv` with the basis of
    /// the product ordered pairwise, left factor major.
    pub fn kronecker(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.field, other.field);
        let mut out = ExactMatrix::zero(self.field, self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a.is_zero() {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                    }
                }
            }
        }
        out
    }

    /// In-place Gauss-Jordan; returns the pivot column of each pivot row.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(sel) = (pr..self.rows).find(|&r| !self.get(r, pc).is_zero()) else {
                continue;
            };
            self.swap_rows(pr, sel);
            let inv = self.get(pr, pc).inv().expect("pivot is nonzero");
            for c in pc..self.cols {
                let v = self.get(pr, c) * &inv;
                self.set(pr, c, v);
            }
            for r in 0..self.rows {
                if r != pr && !self.get(r, pc).is_zero() {
                    let f = self.get(r, pc).clone();
                    for c in pc..self.cols {
                        let v = self.get(r, c) - &(&f * self.get(pr, c));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ExactMatrix::zero(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one(self.field));
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut out = ExactMatrix::zero(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                out.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Monic polynomial of least degree annihilating the matrix, verified by
    /// evaluation before returning.
    pub fn minimal_polynomial(&self) -> Result<Polynomial> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch(
                "minimal polynomial of a non-square matrix".into(),
            ));
        }
        let field = self.field;
        let mut span = RowSpan::new(field, self.rows * self.cols);
        let mut power = ExactMatrix::identity(field, self.rows);
        loop {
            match span.insert(power.entries.clone()) {
                InsertOutcome::Extended => {}
                InsertOutcome::Dependent(combo) => {
                    let poly = Polynomial::new(field, combo);
                    debug_assert!(poly.eval_matrix(self).is_zero());
                    return Ok(poly);
                }
            }
            power = power.matmul(self);
        }
    }
}

/// Result of [`solve_linear`].
#[derive(Clone, Debug)]
pub struct LinearSolution {
    /// A particular solution of `M x = b`, when consistent.
    pub particular: Option<Vec<Scalar>>,
    /// Basis of the kernel of `M`.
    pub nullspace: Vec<Vec<Scalar>>,
}

/// Exact reduced-row-echelon solve of `M x = b`, also reporting a kernel
/// basis.
pub fn solve_linear(m: &ExactMatrix, b: &[Scalar]) -> Result<LinearSolution> {
    if b.len() != m.rows() {
        return Err(Error::ShapeMismatch(format!(
            "matrix has {} rows but vector has {} entries",
            m.rows(),
            b.len()
        )));
    }
    for s in b {
        if s.field() != m.field() {
            return Err(Error::FieldMismatch(format!(
                "vector over {} against matrix over {}",
                s.field(),
                m.field()
            )));
        }
    }
    let n = m.cols();
    let mut aug = ExactMatrix::zero(m.field(), m.rows(), n + 1);
    for r in 0..m.rows() {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n, b[r].clone());
    }
    let pivots = aug.rref();
    let consistent = !pivots.contains(&n);
    let particular = if consistent {
        let mut x = vec![Scalar::zero(m.field()); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(row, n).clone();
        }
        Some(x)
    } else {
        None
    };
    Ok(LinearSolution {
        particular,
        nullspace: nullspace_of(m),
    })
}

/// Basis of `ker M`, from the reduced row echelon form.
pub fn nullspace_of(m: &ExactMatrix) -> Vec<Vec<Scalar>> {
    let mut red = m.clone();
    let pivots = red.rref();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &fc in &free {
        let mut v = vec![Scalar::zero(m.field()); n];
        v[fc] = Scalar::one(m.field());
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -red.get(row, fc);
        }
        basis.push(v);
    }
    basis
}

/// Space of matrices `X` with `X A_i = B_i X` for every pair; `A_i` act on
/// the source, `B_i` on the target.
pub fn intertwiner_space(
    source: &[ExactMatrix],
    target: &[ExactMatrix],
) -> Result<Vec<ExactMatrix>> {
    if source.len() != target.len() {
        return Err(Error::ShapeMismatch(
            "mismatched operator family lengths".into(),
        ));
    }
    if source.is_empty() {
        return Err(Error::invalid("empty operator family"));
    }
    let field = source[0].field();
    let dv = source[0].rows();
    let dw = target[0].rows();
    let unknowns = dw * dv;
    let mut system = ExactMatrix::zero(field, source.len() * dw * dv, unknowns);
    let mut row = 0;
    for (a, b) in source.iter().zip(target) {
        if a.rows() != dv || a.cols() != dv || b.rows() != dw || b.cols() != dw {
            return Err(Error::ShapeMismatch("inconsistent operator sizes".into()));
        }
        for r in 0..dw {
            for sc in 0..dv {
                // coefficient of x_{r s} in (X A - B X)[r, sc] is A[s, sc];
                // coefficient of x_{r' sc} is -B[r, r'].
                for s in 0..dv {
                    let v = a.get(s, sc) + system.get(row, r * dv + s);
                    system.set(row, r * dv + s, v);
                }
                for rp in 0..dw {
                    let v = system.get(row, rp * dv + sc) - b.get(r, rp);
                    system.set(row, rp * dv + sc, v);
                }
                row += 1;
            }
        }
    }
    let basis = nullspace_of(&system);
    Ok(basis
        .into_iter()
        .map(|flat| {
            let rows = (0..dw)
                .map(|r| flat[r * dv..(r + 1) * dv].to_vec())
                .collect();
            ExactMatrix::from_rows(field, rows).expect("kernel vectors are well formed")
        })
        .collect())
}

/// Outcome of [`RowSpan::insert`].
pub enum InsertOutcome {
    /// The vector was independent and is now part of the span.
    Extended,
    /// The vector was dependent. The returned coefficients give the monic
    /// relation `sum_j combo[j] * inserted[j] = 0` over all inserted vectors
    /// in insertion order, with `combo.last() == 1` (the coefficient of the
    /// vector just inserted).
    Dependent(Vec<Scalar>),
}

/// Incremental row space with dependency tracking, used for minimal
/// polynomials and for basis extraction inside algebras.
pub struct RowSpan {
    field: FieldSpec,
    width: usize,
    inserted: usize,
    /// Reduced rows, each with the coordinates of the row in terms of the
    /// inserted vectors.
    rows: Vec<(Vec<Scalar>, Vec<Scalar>)>,
    pivots: Vec<usize>,
}

impl RowSpan {
    pub fn new(field: FieldSpec, width: usize) -> RowSpan {
        RowSpan {
            field,
            width,
            inserted: 0,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The reduced basis rows.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.rows.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn insert(&mut self, v: Vec<Scalar>) -> InsertOutcome {
        assert_eq!(v.len(), self.width, "row width mismatch");
        let mut v = v;
        let mut combo = vec![Scalar::zero(self.field); self.inserted + 1];
        combo[self.inserted] = Scalar::one(self.field);
        for ((row, rcombo), &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..self.width {
                if !row[i].is_zero() {
                    let delta = &c * &row[i];
                    v[i] = &v[i] - &delta;
                }
            }
            for (i, rc) in rcombo.iter().enumerate() {
                if !rc.is_zero() {
                    let delta = &c * rc;
                    combo[i] = &combo[i] - &delta;
                }
            }
        }
        self.inserted += 1;
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            // The reduced vector vanished, so sum_j combo[j] inserted[j] = 0
            // with the newest coefficient equal to 1.
            return InsertOutcome::Dependent(combo);
        };
        let inv = v[pc].inv().expect("pivot nonzero");
        for x in v.iter_mut() {
            *x = &*x * &inv;
        }
        for c in combo.iter_mut() {
            *c = &*c * &inv;
        }
        // Back-eliminate the new pivot from the existing rows.
        for (row, rcombo) in self.rows.iter_mut() {
            let c = row[pc].clone();
            if c.is_zero() {
                continue;
            }
            for i in 0..self.width {
                if !v[i].is_zero() {
                    let delta = &c * &v[i];
                    row[i] = &row[i] - &delta;
                }
            }
            rcombo.resize(self.inserted, Scalar::zero(self.field));
            for (i, nc) in combo.iter().enumerate() {
                if !nc.is_zero() {
                    let delta = &c * nc;
                    rcombo[i] = &rcombo[i] - &delta;
                }
            }
        }
        for (_, rcombo) in self.rows.iter_mut() {
            rcombo.resize(self.inserted, Scalar::zero(self.field));
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, (v, combo));
        InsertOutcome::Extended
    }

    /// Coordinates of `v` in the reduced basis rows, if `v` lies in the span.
    pub fn coords_of(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.width);
        let mut v = v.to_vec();
        let mut coords = vec![Scalar::zero(self.field); self.rows.len()];
        for (idx, ((row, _), &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = v[pc].clone();
            if c.is_zero() {
                continue;
            }
            coords[idx] = c.clone();
            for i in 0..self.width {
                if !row[i].is_zero() {
                    let delta = &c * &row[i];
                    v[i] = &v[i] - &delta;
                }
            }
        }
        if v.iter().all(Scalar::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords_of(v).is_some()
    }
}
