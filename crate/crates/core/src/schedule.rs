//! Ordered factor schedules and their versioned JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{product, Factor};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::scalar::{format_scalar, parse_scalar, Scalar};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub factor: Factor,
    /// Which elimination stage produced the factor, e.g. `col2/scale` or `col1/add/lift`.
    pub stage: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub raw: usize,
    pub lifted: usize,
    pub optimized: usize,
}

/// Factors in application order: `steps[0]` acts on the signal first, so the
/// represented matrix is `steps[k-1] * ... * steps[1] * steps[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub graph: Graph,
    pub steps: Vec<Step>,
    pub stats: Stats,
}

impl Schedule {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn graph_id(&self) -> String {
        self.graph.checksum()
    }

    pub fn factors(&self) -> impl DoubleEndedIterator<Item = &Factor> {
        self.steps.iter().map(|s| &s.factor)
    }

    /// Factors leftmost-first, as they appear in the matrix product.
    pub fn multiplication_order(&self) -> Vec<Factor> {
        self.factors().rev().cloned().collect()
    }

    /// The matrix this schedule computes.
    pub fn product(&self) -> Result<Matrix> {
        product(&self.multiplication_order(), self.n())
    }

    /// Fails with `NonLocalFactor` at the first factor touching a non-edge of `g`.
    pub fn check_locality(&self, g: &Graph) -> Result<()> {
        for (round, f) in self.factors().enumerate() {
            if let Some((row, col)) = f.nonlocal_entry(g)? {
                return Err(Error::NonLocalFactor {
                    round: round + 1,
                    row,
                    col,
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = ScheduleDoc {
            schema: SCHEMA_VERSION,
            n: self.n(),
            graph: self
                .graph
                .edges()
                .into_iter()
                .map(|(i, j)| [i, j])
                .collect(),
            order: "application".into(),
            factors: self.steps.iter().map(FactorDoc::from_step).collect(),
            stats: self.stats,
        };
        serde_json::to_string_pretty(&doc).expect("schedule serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ScheduleDoc =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.to_string()))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::parse(
                0,
                format!("unsupported schema {}", doc.schema),
            ));
        }
        if doc.order != "application" {
            return Err(Error::parse(
                0,
                format!("unsupported order {:?}", doc.order),
            ));
        }
        let graph = Graph::new(doc.n, doc.graph.iter().map(|e| (e[0], e[1])))?;
        let steps = doc
            .factors
            .into_iter()
            .enumerate()
            .map(|(k, f)| f.into_step(k + 1, doc.n))
            .collect::<Result<Vec<_>>>()?;
        Ok(Schedule {
            graph,
            steps,
            stats: doc.stats,
        })
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleDoc {
    schema: u32,
    n: usize,
    graph: Vec<[usize; 2]>,
    order: String,
    factors: Vec<FactorDoc>,
    stats: Stats,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    m: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<(usize, usize, String)>>,
    #[serde(default)]
    stage: String,
}

impl FactorDoc {
    fn from_step(step: &Step) -> Self {
        let mut doc = FactorDoc {
            kind: step.factor.kind().into(),
            i: None,
            j: None,
            m: None,
            d: None,
            entries: None,
            stage: step.stage.clone(),
        };
        match &step.factor {
            Factor::AddRow { i, j, m } => {
                doc.i = Some(*i);
                doc.j = Some(*j);
                doc.m = Some(format_scalar(m));
            }
            Factor::ScaleRow { i, m } => {
                doc.i = Some(*i);
                doc.m = Some(format_scalar(m));
            }
            Factor::Swap { i, j } => {
                doc.i = Some(*i);
                doc.j = Some(*j);
            }
            Factor::Diagonal(d) => doc.d = Some(d.iter().map(format_scalar).collect()),
            Factor::DenseLocal(e) => {
                doc.entries = Some(
                    e.iter()
                        .map(|(r, c, v)| (*r, *c, format_scalar(v)))
                        .collect(),
                )
            }
        }
        doc
    }

    fn into_step(self, index: usize, n: usize) -> Result<Step> {
        let bad = |msg: String| Error::parse(0, format!("factor {index}: {msg}"));
        let need = |v: Option<usize>, name: &str| v.ok_or_else(|| bad(format!("missing `{name}`")));
        let num = |s: &str| parse_scalar(s).ok_or_else(|| bad(format!("bad rational {s:?}")));
        let m = || -> Result<Scalar> {
            let s = self.m.as_deref().ok_or_else(|| bad("missing `m`".into()))?;
            num(s)
        };
        let factor = match self.kind.as_str() {
            "add" => Factor::add(need(self.i, "i")?, need(self.j, "j")?, m()?)?,
            "scale" => Factor::scale(need(self.i, "i")?, m()?),
            "swap" => Factor::swap(need(self.i, "i")?, need(self.j, "j")?)?,
            "diagonal" => {
                let d = self.d.as_ref().ok_or_else(|| bad("missing `d`".into()))?;
                Factor::Diagonal(d.iter().map(|s| num(s)).collect::<Result<_>>()?)
            }
            "dense" => {
                let e = self
                    .entries
                    .as_ref()
                    .ok_or_else(|| bad("missing `entries`".into()))?;
                let triplets = e
                    .iter()
                    .map(|(r, c, v)| Ok((*r, *c, num(v)?)))
                    .collect::<Result<Vec<_>>>()?;
                Factor::dense(triplets)?
            }
            other => return Err(bad(format!("unknown kind {other:?}"))),
        };
        factor.check_indices(n)?;
        Ok(Step {
            factor,
            stage: self.stage,
        })
    }
}
