//! Dense square matrices of exact rationals.
//!
//! Indexing through `Index<(usize, usize)>` is 0-based; the text formats and
//! every factor API use 1-based node numbers.

use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use num::Zero;

use crate::error::{Error, Result};
use crate::graph::content_lines;
use crate::scalar::{format_scalar, int, parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Scalar::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m[(k, k)] = int(1);
        }
        m
    }

    pub fn from_diagonal(d: &[Scalar]) -> Self {
        let mut m = Self::zeros(d.len());
        for (k, v) in d.iter().enumerate() {
            m[(k, k)] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonSquare {
                    rows: n,
                    row: r + 1,
                    cols: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Matrix { n, data })
    }

    /// Convenience constructor for integer literals.
    pub fn from_i64<const N: usize>(rows: [[i64; N]; N]) -> Self {
        Matrix {
            n: N,
            data: rows.iter().flatten().map(|&v| int(v)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.n {
                self.data.swap(a * self.n + c, b * self.n + c);
            }
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.n {
                self.data.swap(r * self.n + a, r * self.n + b);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|r| (0..self.n).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.n).map(|k| self[(k, k)].clone()).collect()
    }

    /// Plain dense product, no shortcuts.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        check_dim(self.n, rhs.n)?;
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        check_dim(self.n, x.len())?;
        Ok(self
            .rows()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Nonzero entries as 1-based `(row, col, value)` triplets in row-major order.
    pub fn nonzeros(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                let v = &self[(r, c)];
                if !v.is_zero() {
                    out.push((r + 1, c + 1, v.clone()));
                }
            }
        }
        out
    }

    /// Parses the text format: line 1 `n`, then `n` rows of `n` entries.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing dimension"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad dimension {first:?}")))?;
        let mut rows = Vec::with_capacity(n);
        for (line_no, line) in lines.by_ref().take(n) {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    parse_scalar(tok)
                        .ok_or_else(|| Error::parse(line_no, format!("bad number {tok:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != n {
                return Err(Error::parse(
                    line_no,
                    format!("expected {n} entries, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if rows.len() != n {
            return Err(Error::parse(
                text.lines().count() + 1,
                format!("expected {n} rows, found {}", rows.len()),
            ));
        }
        if let Some((line_no, _)) = lines.next() {
            return Err(Error::parse(line_no, "trailing data after matrix"));
        }
        Matrix::from_rows(rows)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(format_scalar).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.n + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.n + c]
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Parses a signal vector file: line 1 `n`, then `n` entries in any layout.
pub fn parse_vector(text: &str) -> Result<Vec<Scalar>> {
    let mut lines = content_lines(text);
    let (line_no, first) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing length"))?;
    let n: usize = first
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad length {first:?}")))?;
    let mut out = Vec::with_capacity(n);
    for (line_no, line) in lines {
        for tok in line.split_whitespace() {
            let v = parse_scalar(tok)
                .ok_or_else(|| Error::parse(line_no, format!("bad number {tok:?}")))?;
            out.push(v);
        }
    }
    if out.len() != n {
        return Err(Error::parse(
            text.lines().count(),
            format!("expected {n} entries, found {}", out.len()),
        ));
    }
    Ok(out)
}
