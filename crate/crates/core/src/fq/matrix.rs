use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::fq::FieldSpec;

/// A vector over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqVector {
    field: FieldSpec,
    entries: Vec<u32>,
}

impl FqVector {
    pub fn new(field: FieldSpec, entries: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::Invalid(format!("entry {bad} not a residue of {field}")));
        }
        Ok(FqVector { field, entries })
    }

    /// Builds a vector from arbitrary integers, reducing each one mod q.
    pub fn from_ints(field: FieldSpec, ints: &[i64]) -> Self {
        FqVector {
            field,
            entries: ints.iter().map(|&a| field.reduce(a)).collect(),
        }
    }

    pub fn zeros(field: FieldSpec, len: usize) -> Self {
        FqVector {
            field,
            entries: vec![0; len],
        }
    }

    pub fn unit(field: FieldSpec, len: usize, i: usize) -> Self {
        let mut v = Self::zeros(field, len);
        v.entries[i] = 1 % field.q();
        v
    }

    pub(crate) fn from_raw(field: FieldSpec, entries: Vec<u32>) -> Self {
        debug_assert!(entries.iter().all(|&e| field.contains(e)));
        FqVector { field, entries }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<u32> {
        self.entries
    }

    pub fn get(&self, i: usize) -> u32 {
        self.entries[i]
    }

    pub fn weight(&self) -> usize {
        weight(&self.entries)
    }

    pub fn support(&self) -> BTreeSet<usize> {
        support(&self.entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &FqVector) -> Result<FqVector> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(FqVector::from_raw(
            f,
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.add(a, b)).collect(),
        ))
    }

    pub fn sub(&self, other: &FqVector) -> Result<FqVector> {
        self.check_compatible(other)?;
        let f = self.field;
        Ok(FqVector::from_raw(
            f,
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect(),
        ))
    }

    pub fn scale(&self, c: u32) -> FqVector {
        let f = self.field;
        FqVector::from_raw(f, self.entries.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn dot(&self, other: &FqVector) -> Result<u32> {
        self.check_compatible(other)?;
        Ok(dot(self.field, &self.entries, &other.entries))
    }

    fn check_compatible(&self, other: &FqVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            });
        }
        if self.len() != other.len() {
            return Err(Error::shape(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub fn weight(x: &[u32]) -> usize {
    x.iter().filter(|&&e| e != 0).count()
}

pub fn support(x: &[u32]) -> BTreeSet<usize> {
    x.iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(i, _)| i)
        .collect()
}

pub(crate) fn dot(field: FieldSpec, a: &[u32], b: &[u32]) -> u32 {
    let q = field.q() as u64;
    // lazy reduction is safe while every product fits in 32 bits
    if q < (1 << 16) {
        let mut acc = 0u64;
        for (&x, &y) in a.iter().zip(b) {
            acc += x as u64 * y as u64;
            if acc >= (1 << 62) {
                acc %= q;
            }
        }
        (acc % q) as u32
    } else {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| field.mul_add(acc, x, y))
    }
}

/// Dense row-major matrix over GF(q).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of Gauss-Jordan elimination.
#[derive(Clone, Debug)]
pub struct RowReduced {
    /// Reduced row echelon form; rows past `rank` are zero.
    pub rref: FqMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
}

impl RowReduced {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl FqMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        FqMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.q();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::shape(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for &e in row {
                if !field.contains(e) {
                    return Err(Error::Invalid(format!("entry {e} not a residue of {field}")));
                }
            }
            data.extend_from_slice(row);
        }
        Ok(FqMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a `rows x cols` matrix, which allows empty dimensions that
    /// `from_rows` cannot express.
    pub fn from_flat(field: FieldSpec, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::shape(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&e| !field.contains(e)) {
            return Err(Error::Invalid(format!("entry {bad} not a residue of {field}")));
        }
        Ok(FqMatrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_row_vectors(field: FieldSpec, cols: usize, vs: &[FqVector]) -> Result<Self> {
        let mut data = Vec::with_capacity(vs.len() * cols);
        for v in vs {
            if v.len() != cols || v.field() != field {
                return Err(Error::shape("row vector does not match matrix width/field"));
            }
            data.extend_from_slice(v.entries());
        }
        Ok(FqMatrix {
            field,
            rows: vs.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: FieldSpec, rows: usize, vs: &[FqVector]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, vs.len());
        for (j, v) in vs.iter().enumerate() {
            if v.len() != rows || v.field() != field {
                return Err(Error::shape("column vector does not match matrix height/field"));
            }
            for i in 0..rows {
                m.set(i, j, v.get(i));
            }
        }
        Ok(m)
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

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row(&self, r: usize) -> FqVector {
        FqVector::from_raw(self.field, self.row_slice(r).to_vec())
    }

    pub fn column(&self, c: usize) -> FqVector {
        FqVector::from_raw(self.field, (0..self.rows).map(|r| self.get(r, c)).collect())
    }

    pub fn columns(&self) -> Vec<FqVector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row_slice(r).to_vec()).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn weight(&self) -> usize {
        weight(&self.data)
    }

    pub fn row_weights(&self) -> Vec<usize> {
        (0..self.rows).map(|r| weight(self.row_slice(r))).collect()
    }

    pub fn column_weights(&self) -> Vec<usize> {
        let mut w = vec![0; self.cols];
        for r in 0..self.rows {
            for (c, &e) in self.row_slice(r).iter().enumerate() {
                if e != 0 {
                    w[c] += 1;
                }
            }
        }
        w
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &FqMatrix) -> Result<FqMatrix> {
        mat_mul(self, other)
    }

    pub fn mul_vec(&self, x: &FqVector) -> Result<FqVector> {
        if x.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.q(),
                right: x.field().q(),
            });
        }
        if x.len() != self.cols {
            return Err(Error::shape(format!(
                "{}x{} matrix times length-{} vector",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok(FqVector::from_raw(self.field, self.mul_slice(x.entries())))
    }

    pub(crate) fn mul_slice(&self, x: &[u32]) -> Vec<u32> {
        (0..self.rows)
            .map(|r| dot(self.field, self.row_slice(r), x))
            .collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.rows != other.rows || self.field != other.field {
            return Err(Error::shape("hstack needs equal row counts and fields"));
        }
        let cols = self.cols + other.cols;
        let mut m = FqMatrix::zeros(self.field, self.rows, cols);
        for r in 0..self.rows {
            m.data[r * cols..r * cols + self.cols].copy_from_slice(self.row_slice(r));
            m.data[r * cols + self.cols..(r + 1) * cols].copy_from_slice(other.row_slice(r));
        }
        Ok(m)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::shape("vstack needs equal column counts and fields"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FqMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn row_reduce(&self) -> RowReduced {
        row_reduce(self)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

impl fmt::Display for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row_slice(r).iter().map(u32::to_string).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

pub fn mat_mul(a: &FqMatrix, b: &FqMatrix) -> Result<FqMatrix> {
    if a.field != b.field {
        return Err(Error::FieldMismatch {
            left: a.field.q(),
            right: b.field.q(),
        });
    }
    if a.cols != b.rows {
        return Err(Error::shape(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let f = a.field;
    let mut out = FqMatrix::zeros(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a.get(i, k);
            if aik == 0 {
                continue;
            }
            for j in 0..b.cols {
                let cur = out.get(i, j);
                out.set(i, j, f.mul_add(cur, aik, b.get(k, j)));
            }
        }
    }
    Ok(out)
}

/// Gauss-Jordan elimination with first-nonzero pivoting, scanning columns
/// left to right.
pub fn row_reduce(a: &FqMatrix) -> RowReduced {
    let f = a.field;
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..m.cols {
            let v = m.get(r, j);
            m.set(r, j, f.mul(v, inv));
        }
        for i in 0..m.rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor == 0 {
                continue;
            }
            let neg = f.neg(factor);
            for j in c..m.cols {
                let v = f.mul_add(m.get(i, j), neg, m.get(r, j));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    RowReduced { rref: m, pivots }
}

pub fn rank(a: &FqMatrix) -> usize {
    row_reduce(a).rank()
}

/// Returns one `x` with `A x = b`, with all free variables set to zero.
pub fn solve_particular(a: &FqMatrix, b: &FqVector) -> Result<FqVector> {
    if b.len() != a.rows {
        return Err(Error::shape(format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            a.rows
        )));
    }
    let f = a.field;
    let aug = a.hstack(&FqMatrix::from_columns(f, a.rows, std::slice::from_ref(b))?)?;
    let red = row_reduce(&aug);
    if red.pivots.last() == Some(&a.cols) {
        return Err(Error::NoSolution);
    }
    let mut x = vec![0; a.cols];
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.rref.get(i, a.cols);
    }
    Ok(FqVector::from_raw(f, x))
}

/// Basis of `{x : A x = 0}`, one basis vector per row of the result.
/// Each basis vector has a 1 at its free column and zeros at the other
/// free columns.
pub fn nullspace_basis(a: &FqMatrix) -> FqMatrix {
    let f = a.field;
    let red = row_reduce(a);
    let pivot_set: BTreeSet<usize> = red.pivots.iter().copied().collect();
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivot_set.contains(c)).collect();
    let mut basis = FqMatrix::zeros(f, free.len(), a.cols);
    for (bi, &fc) in free.iter().enumerate() {
        basis.set(bi, fc, 1 % f.q());
        for (ri, &pc) in red.pivots.iter().enumerate() {
            basis.set(bi, pc, f.neg(red.rref.get(ri, fc)));
        }
    }
    basis
}
