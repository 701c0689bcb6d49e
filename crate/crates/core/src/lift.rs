//! Rewriting non-local elementary factors as swap-chain conjugations.
//!
//! For `AddRow(i, j, m)` with `j` not adjacent to `i`, walk the shortest path
//! `j = v_0, v_1, ..., v_k = i`. With `P = T(v_0,v_1) T(v_1,v_2) ... T(v_{k-2},v_{k-1})`
//! we have `P e_{v_{k-1}} = e_j` and `P e_i = e_i`, so
//! `AddRow(i, j, m) = P AddRow(i, v_{k-1}, m) P^-1`, and every factor in the
//! chain couples adjacent nodes only. `Swap(i, j)` lifts the same way around
//! an inner `Swap(i, v_{k-1})`.

use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::graph::{Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedSequence {
    /// Multiplication order, leftmost first.
    pub factors: Vec<Factor>,
    pub source: Factor,
    /// The path used for conjugation, `None` when the source was already local.
    pub path: Option<Path>,
}

pub fn lift(f: &Factor, g: &Graph) -> Result<LiftedSequence> {
    g.ensure_connected()?;
    f.check_indices(g.n())?;
    let unchanged = |f: &Factor| LiftedSequence {
        factors: vec![f.clone()],
        source: f.clone(),
        path: None,
    };
    let (i, j) = match f {
        Factor::ScaleRow { .. } | Factor::Diagonal(_) => return Ok(unchanged(f)),
        Factor::DenseLocal(_) => return Err(Error::UnsupportedFactorKind("dense")),
        Factor::AddRow { i, j, .. } | Factor::Swap { i, j } => (*i, *j),
    };
    if g.has_edge(i, j) {
        return Ok(unchanged(f));
    }
    let path = g.shortest_path(j, i)?;
    let nodes = path.nodes();
    let anchor = nodes[nodes.len() - 2];
    let chain: Vec<Factor> = nodes[..nodes.len() - 1]
        .windows(2)
        .map(|w| Factor::swap(w[0], w[1]))
        .collect::<Result<_>>()?;
    let inner = match f {
        Factor::AddRow { m, .. } => Factor::add(i, anchor, m.clone())?,
        _ => Factor::swap(i, anchor)?,
    };
    let mut factors = chain.clone();
    factors.push(inner);
    factors.extend(chain.into_iter().rev());
    Ok(LiftedSequence {
        factors,
        source: f.clone(),
        path: Some(path),
    })
}
