//! Gauss-Jordan elimination into elementary factors and a 0/1 residual
//! diagonal, and assembly of the lifted schedule.

use num::{One, Zero};

use crate::error::Result;
use crate::factor::Factor;
use crate::graph::Graph;
use crate::lift::lift;
use crate::matrix::{check_dim, Matrix};
use crate::scalar::Scalar;
use crate::schedule::{Schedule, Stats, Step};

/// Result of reducing `M`: `R_k ... R_1 * M * C_1 ... C_l = diag(residual)`
/// where `R` are the row operations and `C` the column operations, both
/// listed in the order they were performed.
#[derive(Debug, Clone)]
pub struct Elimination {
    pub row_ops: Vec<Step>,
    pub col_ops: Vec<Step>,
    pub residual: Vec<Scalar>,
    /// Working matrix after each pivot column, tagged with the 1-based column.
    pub stages: Vec<(usize, Matrix)>,
}

impl Elimination {
    pub fn rank(&self) -> usize {
        self.residual.iter().filter(|v| v.is_one()).count()
    }
}

/// Reduces `m` to a 0/1 diagonal.
///
/// Column `c` takes its pivot from the first non-pivot row (top down) holding
/// a nonzero and moves it to row `c`, so pivots always land on the diagonal.
/// Within a column the order is swap, scale, then eliminations in ascending
/// target row, above and below the pivot. Leftover entries of pivot rows in
/// pivot-free columns are cleared by column additions afterwards.
pub fn eliminate_to_diagonal(m: &Matrix) -> Elimination {
    let n = m.n();
    let mut a = m.clone();
    let mut row_ops = Vec::new();
    let mut stages = Vec::new();
    let mut is_pivot = vec![false; n];

    for c in 0..n {
        let Some(p) = (0..n).find(|&r| !is_pivot[r] && !a[(r, c)].is_zero()) else {
            continue;
        };
        let tag = |what: &str| format!("col{}/{what}", c + 1);
        if p != c {
            let f = Factor::swap(p + 1, c + 1).expect("distinct rows");
            a = f.apply_left(&a).expect("in range");
            row_ops.push(Step {
                factor: f,
                stage: tag("swap"),
            });
        }
        let pivot = a[(c, c)].clone();
        if !pivot.is_one() {
            let f = Factor::scale(c + 1, pivot.recip());
            a = f.apply_left(&a).expect("in range");
            row_ops.push(Step {
                factor: f,
                stage: tag("scale"),
            });
        }
        for r in (0..n).filter(|&r| r != c) {
            let v = a[(r, c)].clone();
            if !v.is_zero() {
                let f = Factor::add(r + 1, c + 1, -v).expect("distinct rows");
                a = f.apply_left(&a).expect("in range");
                row_ops.push(Step {
                    factor: f,
                    stage: tag("add"),
                });
            }
        }
        is_pivot[c] = true;
        stages.push((c + 1, a.clone()));
    }

    // Non-pivot rows are zero now, and each pivot column is a unit vector, so
    // adding -a[p][c] times column p to column c clears exactly (p, c).
    let mut col_ops = Vec::new();
    for p in (0..n).filter(|&p| is_pivot[p]) {
        for c in (0..n).filter(|&c| !is_pivot[c]) {
            let v = a[(p, c)].clone();
            if !v.is_zero() {
                let f = Factor::add(p + 1, c + 1, -v).expect("distinct columns");
                a = f.apply_right(&a).expect("in range");
                col_ops.push(Step {
                    factor: f,
                    stage: format!("cleanup/col{}", c + 1),
                });
            }
        }
    }
    debug_assert!(a.is_diagonal());

    Elimination {
        row_ops,
        col_ops,
        residual: a.diagonal(),
        stages,
    }
}

/// Upper bound `n((2D - 1)n + 1)` on the lifted schedule length.
/// A single node has diameter 0; it is counted as 1 so the bound stays positive.
pub fn factor_count_bound(g: &Graph) -> Result<usize> {
    let d = g.diameter()?.max(1);
    let n = g.n();
    Ok(n * ((2 * d - 1) * n + 1))
}

/// Factors `m` into a schedule of factors that are each local to `g`.
pub fn decompose(m: &Matrix, g: &Graph) -> Result<Schedule> {
    check_dim(g.n(), m.n())?;
    g.ensure_connected()?;

    if m.is_diagonal() {
        let steps = vec![Step {
            factor: Factor::Diagonal(m.diagonal()),
            stage: "diagonal".into(),
        }];
        return Ok(Schedule {
            graph: g.clone(),
            steps,
            stats: Stats {
                raw: 1,
                lifted: 1,
                optimized: 1,
            },
        });
    }

    let elim = eliminate_to_diagonal(m);
    // M = R_1^-1 ... R_k^-1 * D * C_l^-1 ... C_1^-1, leftmost first
    let mut mult_order: Vec<Step> = Vec::new();
    for s in &elim.row_ops {
        mult_order.push(Step {
            factor: s.factor.inverse()?,
            stage: s.stage.clone(),
        });
    }
    // an identity residual contributes nothing
    if !elim.residual.iter().all(One::is_one) {
        mult_order.push(Step {
            factor: Factor::Diagonal(elim.residual.clone()),
            stage: "residual".into(),
        });
    }
    for s in elim.col_ops.iter().rev() {
        mult_order.push(Step {
            factor: s.factor.inverse()?,
            stage: s.stage.clone(),
        });
    }
    let raw = mult_order.len();

    let mut lifted = Vec::new();
    for s in mult_order {
        let seq = lift(&s.factor, g)?;
        let stage = if seq.path.is_some() {
            format!("{}/lift", s.stage)
        } else {
            s.stage
        };
        lifted.extend(seq.factors.into_iter().map(|factor| Step {
            factor,
            stage: stage.clone(),
        }));
    }
    lifted.reverse();
    let count = lifted.len();
    Ok(Schedule {
        graph: g.clone(),
        steps: lifted,
        stats: Stats {
            raw,
            lifted: count,
            optimized: count,
        },
    })
}
