//! Elementary and neighbor-local factors, and the locality predicate.
//!
//! A factor `F` acts on a signal by `x <- F x`. Node indices are 1-based.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::{check_dim, Matrix};
use crate::scalar::{format_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Factor {
    /// Identity plus `m` at `(i, j)`: adds `m` times row `j` to row `i`.
    AddRow {
        i: usize,
        j: usize,
        m: Scalar,
    },
    /// Identity with `(i, i)` replaced by `m`.
    ScaleRow {
        i: usize,
        m: Scalar,
    },
    /// Row exchange, stored with `i < j`.
    Swap {
        i: usize,
        j: usize,
    },
    Diagonal(Vec<Scalar>),
    /// Explicit sparse matrix; rows without entries are zero rows.
    DenseLocal(Vec<(usize, usize, Scalar)>),
}

impl Factor {
    pub fn add(i: usize, j: usize, m: Scalar) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidFactor(format!(
                "AddRow needs i != j, got ({i},{i})"
            )));
        }
        Ok(Factor::AddRow { i, j, m })
    }

    pub fn scale(i: usize, m: Scalar) -> Self {
        Factor::ScaleRow { i, m }
    }

    pub fn swap(i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidFactor(format!(
                "Swap needs i != j, got ({i},{i})"
            )));
        }
        Ok(Factor::Swap {
            i: i.min(j),
            j: i.max(j),
        })
    }

    /// Sparse factor from triplets; zeros are dropped, keys must be unique.
    pub fn dense(entries: impl IntoIterator<Item = (usize, usize, Scalar)>) -> Result<Self> {
        let mut entries: Vec<_> = entries.into_iter().filter(|e| !e.2.is_zero()).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = entries
            .windows(2)
            .find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(Error::InvalidFactor(format!(
                "duplicate entry ({},{})",
                w[0].0, w[0].1
            )));
        }
        Ok(Factor::DenseLocal(entries))
    }

    /// Wraps a matrix as the most specific factor kind: `Diagonal` when possible.
    pub fn from_matrix(m: &Matrix) -> Self {
        if m.is_diagonal() {
            Factor::Diagonal(m.diagonal())
        } else {
            Factor::DenseLocal(m.nonzeros())
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Factor::AddRow { .. } => "add",
            Factor::ScaleRow { .. } => "scale",
            Factor::Swap { .. } => "swap",
            Factor::Diagonal(_) => "diagonal",
            Factor::DenseLocal(_) => "dense",
        }
    }

    pub fn check_indices(&self, n: usize) -> Result<()> {
        let check = |v: usize| {
            if v == 0 || v > n {
                Err(Error::IndexOutOfRange { index: v, n })
            } else {
                Ok(())
            }
        };
        match self {
            Factor::AddRow { i, j, .. } | Factor::Swap { i, j } => {
                check(*i)?;
                check(*j)
            }
            Factor::ScaleRow { i, .. } => check(*i),
            Factor::Diagonal(d) => check_dim(n, d.len()),
            Factor::DenseLocal(entries) => entries.iter().try_for_each(|(r, c, _)| {
                check(*r)?;
                check(*c)
            }),
        }
    }

    /// The explicit `n x n` matrix.
    pub fn materialize(&self, n: usize) -> Result<Matrix> {
        self.check_indices(n)?;
        Ok(match self {
            Factor::Diagonal(d) => Matrix::from_diagonal(d),
            Factor::DenseLocal(entries) => {
                let mut out = Matrix::zeros(n);
                for (r, c, v) in entries {
                    out[(r - 1, c - 1)] = v.clone();
                }
                out
            }
            _ => self.apply_left(&Matrix::identity(n))?,
        })
    }

    /// Nonzero entries as 1-based `(row, col, value)` triplets.
    pub fn entries(&self, n: usize) -> Result<Vec<(usize, usize, Scalar)>> {
        self.check_indices(n)?;
        let one = Scalar::one;
        let identity_except = |skip: &[usize]| {
            (1..=n)
                .filter(|k| !skip.contains(k))
                .map(|k| (k, k, one()))
                .collect::<Vec<_>>()
        };
        let mut out = match self {
            Factor::AddRow { i, j, m } => {
                let mut e = identity_except(&[]);
                e.push((*i, *j, m.clone()));
                e
            }
            Factor::ScaleRow { i, m } => {
                let mut e = identity_except(&[*i]);
                e.push((*i, *i, m.clone()));
                e
            }
            Factor::Swap { i, j } => {
                let mut e = identity_except(&[*i, *j]);
                e.push((*i, *j, one()));
                e.push((*j, *i, one()));
                e
            }
            Factor::Diagonal(d) => d
                .iter()
                .enumerate()
                .map(|(k, v)| (k + 1, k + 1, v.clone()))
                .collect(),
            Factor::DenseLocal(entries) => entries.clone(),
        };
        out.retain(|e| !e.2.is_zero());
        out.sort_by_key(|e| (e.0, e.1));
        Ok(out)
    }

    /// Number of off-diagonal nonzeros: the messages needed to apply this factor.
    pub fn off_diagonal_count(&self, n: usize) -> Result<usize> {
        Ok(self.entries(n)?.iter().filter(|e| e.0 != e.1).count())
    }

    /// First off-diagonal nonzero `(row, col)` that couples non-adjacent nodes.
    pub fn nonlocal_entry(&self, g: &Graph) -> Result<Option<(usize, usize)>> {
        Ok(self
            .entries(g.n())?
            .into_iter()
            .find(|(r, c, _)| r != c && !g.has_edge(*r, *c))
            .map(|(r, c, _)| (r, c)))
    }

    pub fn is_local(&self, g: &Graph) -> Result<bool> {
        Ok(self.nonlocal_entry(g)?.is_none())
    }

    /// `F * m`, using row operations for the elementary kinds.
    pub fn apply_left(&self, m: &Matrix) -> Result<Matrix> {
        let n = m.n();
        self.check_indices(n)?;
        let mut out = m.clone();
        match self {
            Factor::AddRow { i, j, m: k } => {
                if !k.is_zero() {
                    for c in 0..n {
                        let add = &out[(j - 1, c)] * k;
                        out[(i - 1, c)] += add;
                    }
                }
            }
            Factor::ScaleRow { i, m: k } => {
                for c in 0..n {
                    out[(i - 1, c)] *= k;
                }
            }
            Factor::Swap { i, j } => out.swap_rows(i - 1, j - 1),
            Factor::Diagonal(d) => {
                for (r, k) in d.iter().enumerate() {
                    for c in 0..n {
                        out[(r, c)] *= k;
                    }
                }
            }
            Factor::DenseLocal(entries) => {
                out = Matrix::zeros(n);
                for (r, k, v) in entries {
                    for c in 0..n {
                        let src = &m[(k - 1, c)];
                        if !src.is_zero() {
                            out[(r - 1, c)] += v * src;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `m * F`, using column operations for the elementary kinds. Right
    /// multiplication by `AddRow(i, j, k)` adds `k` times column `i` to column `j`.
    pub fn apply_right(&self, m: &Matrix) -> Result<Matrix> {
        let n = m.n();
        self.check_indices(n)?;
        let mut out = m.clone();
        match self {
            Factor::AddRow { i, j, m: k } => {
                if !k.is_zero() {
                    for r in 0..n {
                        let add = &out[(r, i - 1)] * k;
                        out[(r, j - 1)] += add;
                    }
                }
            }
            Factor::ScaleRow { i, m: k } => {
                for r in 0..n {
                    out[(r, i - 1)] *= k;
                }
            }
            Factor::Swap { i, j } => out.swap_cols(i - 1, j - 1),
            Factor::Diagonal(d) => {
                for (c, k) in d.iter().enumerate() {
                    for r in 0..n {
                        out[(r, c)] *= k;
                    }
                }
            }
            Factor::DenseLocal(entries) => {
                out = Matrix::zeros(n);
                for (k, c, v) in entries {
                    for r in 0..n {
                        let src = &m[(r, k - 1)];
                        if !src.is_zero() {
                            out[(r, c - 1)] += src * v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<Factor> {
        match self {
            Factor::AddRow { i, j, m } => Ok(Factor::AddRow {
                i: *i,
                j: *j,
                m: -m,
            }),
            Factor::ScaleRow { i, m } => {
                if m.is_zero() {
                    Err(Error::SingularFactor)
                } else {
                    Ok(Factor::ScaleRow {
                        i: *i,
                        m: m.recip(),
                    })
                }
            }
            Factor::Swap { .. } => Ok(self.clone()),
            Factor::Diagonal(d) => {
                if d.iter().any(Zero::is_zero) {
                    Err(Error::SingularFactor)
                } else {
                    Ok(Factor::Diagonal(d.iter().map(Scalar::recip).collect()))
                }
            }
            Factor::DenseLocal(_) => Err(Error::UnsupportedFactorKind("dense")),
        }
    }

    /// True when `self * other` is the identity.
    pub fn is_inverse_of(&self, other: &Factor) -> bool {
        match (self, other) {
            (Factor::Swap { i, j }, Factor::Swap { i: a, j: b }) => (i, j) == (a, b),
            (Factor::AddRow { i, j, m }, Factor::AddRow { i: a, j: b, m: k }) => {
                (i, j) == (a, b) && (m + k).is_zero()
            }
            (Factor::ScaleRow { i, m }, Factor::ScaleRow { i: a, m: k }) => {
                i == a && (m * k).is_one()
            }
            _ => false,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::AddRow { i, j, m } => write!(f, "L[{i},{j}]({})", format_scalar(m)),
            Factor::ScaleRow { i, m } => write!(f, "D[{i}]({})", format_scalar(m)),
            Factor::Swap { i, j } => write!(f, "T[{i},{j}]"),
            Factor::Diagonal(d) => {
                let d: Vec<String> = d.iter().map(format_scalar).collect();
                write!(f, "diag({})", d.join(","))
            }
            Factor::DenseLocal(e) => write!(f, "local[{} entries]", e.len()),
        }
    }
}

/// True iff every off-diagonal nonzero of `m` sits on an edge of `g`.
pub fn is_directly_implementable(m: &Matrix, g: &Graph) -> Result<bool> {
    check_dim(g.n(), m.n())?;
    Ok(m.nonzeros()
        .iter()
        .all(|(r, c, _)| r == c || g.has_edge(*r, *c)))
}

/// Multiplies factors given in multiplication order (leftmost first).
pub fn product(factors: &[Factor], n: usize) -> Result<Matrix> {
    factors
        .iter()
        .rev()
        .try_fold(Matrix::identity(n), |acc, f| f.apply_left(&acc))
}
