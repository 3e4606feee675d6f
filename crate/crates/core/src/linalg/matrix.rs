use num::{BigRational, One, Zero};

use super::field::{mod_inverse, Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, rejecting ragged input and mixed fields.
    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::input(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for x in row {
                if x.field() != field {
                    return Err(Error::input(format!(
                        "entry in row {i} lies in {} but the matrix is over {field}",
                        x.field()
                    )));
                }
                data.push(x);
            }
        }
        Ok(Matrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
                .collect(),
        )
    }

    /// Assembles a matrix from its columns; all columns must have length `rows`.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let cols = columns.len();
        let mut m = Matrix::zeros(field, rows, cols);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has wrong length");
            for (i, x) in col.iter().enumerate() {
                debug_assert_eq!(x.field(), field);
                m.data[i * cols + j] = x.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        assert_eq!(x.field(), self.field, "field mismatch in Matrix::set");
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Horizontal concatenation; an empty slice yields a `rows x 0` matrix.
    pub fn hstack(field: Field, rows: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(field, rows, cols);
        let mut offset = 0;
        for b in blocks {
            if b.rows != rows || b.field != field {
                return Err(Error::input("hstack: incompatible blocks"));
            }
            for i in 0..rows {
                for j in 0..b.cols {
                    out.data[i * cols + offset + j] = b.get(i, j).clone();
                }
            }
            offset += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation; an empty slice yields a `0 x cols` matrix.
    pub fn vstack(field: Field, cols: usize, blocks: &[&Matrix]) -> Result<Matrix> {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols || b.field != field {
                return Err(Error::input("vstack: incompatible blocks"));
            }
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::input(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Reduced row echelon form and the (strictly increasing) pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Prime(p) => {
                let p = p as u64;
                let mut raw: Vec<u64> = self.data.iter().map(Scalar::residue).collect();
                let pivots = rref_mod(&mut raw, self.rows, self.cols, p, true);
                let data = raw.into_iter().map(|x| self.field.residue(x)).collect();
                (
                    Matrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        data,
                    },
                    pivots,
                )
            }
            Field::Rational => {
                let mut raw: Vec<BigRational> = self
                    .data
                    .iter()
                    .map(|x| match x {
                        Scalar::Rational(r) => r.clone(),
                        Scalar::Mod { .. } => unreachable!(),
                    })
                    .collect();
                let pivots = rref_rational(&mut raw, self.rows, self.cols, true);
                let data = raw.into_iter().map(Scalar::Rational).collect();
                (
                    Matrix {
                        field: self.field,
                        rows: self.rows,
                        cols: self.cols,
                        data,
                    },
                    pivots,
                )
            }
        }
    }

    pub fn rank(&self) -> usize {
        match self.field {
            Field::Prime(p) => {
                let mut raw: Vec<u64> = self.data.iter().map(Scalar::residue).collect();
                rref_mod(&mut raw, self.rows, self.cols, p as u64, false).len()
            }
            Field::Rational => {
                let mut raw: Vec<BigRational> = self
                    .data
                    .iter()
                    .map(|x| match x {
                        Scalar::Rational(r) => r.clone(),
                        Scalar::Mod { .. } => unreachable!(),
                    })
                    .collect();
                rref_rational(&mut raw, self.rows, self.cols, false).len()
            }
        }
    }

    /// Canonical kernel basis: one vector per free column, in column order,
    /// with a 1 in that free column and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `M x = b` with all free variables zero, or `None`.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::input(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        if let Some(x) = b.iter().find(|x| x.field() != self.field) {
            return Err(Error::input(format!(
                "right-hand side lies in {} but the matrix is over {}",
                x.field(),
                self.field
            )));
        }
        let augmented = {
            let mut m = Matrix::zeros(self.field, self.rows, self.cols + 1);
            for (i, bi) in b.iter().enumerate() {
                for j in 0..self.cols {
                    m.data[i * (self.cols + 1) + j] = self.get(i, j).clone();
                }
                m.data[i * (self.cols + 1) + self.cols] = bi.clone();
            }
            m
        };
        let (r, pivots) = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Whether `b` lies in the column span.
    pub fn column_span_contains(&self, b: &[Scalar]) -> Result<bool> {
        Ok(self.solve(b)?.is_some())
    }
}

/// In-place elimination mod `p`. With `reduce` the result is the full RREF,
/// otherwise only an echelon form (enough for the rank).
fn rref_mod(a: &mut [u64], rows: usize, cols: usize, p: u64, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = mod_inverse(a[r * cols + c], p);
        for j in c..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        let (lo, hi) = if reduce { (0, rows) } else { (r + 1, rows) };
        for i in lo..hi {
            if i == r {
                continue;
            }
            let f = a[i * cols + c];
            if f == 0 {
                continue;
            }
            let neg = p - f;
            for j in c..cols {
                let v = a[r * cols + j];
                if v != 0 {
                    a[i * cols + j] = (a[i * cols + j] + neg * v) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rref_rational(a: &mut [BigRational], rows: usize, cols: usize, reduce: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if piv != r {
            for j in c..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = a[r * cols + c].recip();
        for j in c..cols {
            let v = &a[r * cols + j] * &inv;
            a[r * cols + j] = v;
        }
        debug_assert!(a[r * cols + c].is_one());
        let (lo, hi) = if reduce { (0, rows) } else { (r + 1, rows) };
        for i in lo..hi {
            if i == r {
                continue;
            }
            let f = a[i * cols + c].clone();
            if f.is_zero() {
                continue;
            }
            for j in c..cols {
                if a[r * cols + j].is_zero() {
                    continue;
                }
                let v = &a[i * cols + j] - &(&f * &a[r * cols + j]);
                a[i * cols + j] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}
