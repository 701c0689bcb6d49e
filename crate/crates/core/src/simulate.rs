//! Round-synchronous execution of a schedule on a simulated network.
//!
//! Every factor is one round. During a round each node receives the current
//! values of the neighbors its row of the factor references, then replaces its
//! own value with the row's weighted sum. Delivery only exists along graph
//! edges, so a node has no way to read a non-neighbor.

use std::collections::BTreeMap;

use num::{BigInt, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factor::Factor;
use crate::graph::Graph;
use crate::matrix::{check_dim, Matrix};
use crate::scalar::{abs, format_scalar, to_f64, Scalar};
use crate::schedule::Schedule;

/// Values a node can hold: exact rationals or binary floats.
pub trait NodeValue: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn from_scalar(v: &Scalar) -> Self;
    fn mul_add(acc: Self, coeff: &Self, v: &Self) -> Self;
    fn to_json(&self) -> Value;
}

impl NodeValue for Scalar {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_scalar(v: &Scalar) -> Self {
        v.clone()
    }
    fn mul_add(acc: Self, coeff: &Self, v: &Self) -> Self {
        acc + coeff * v
    }
    fn to_json(&self) -> Value {
        Value::String(format_scalar(self))
    }
}

impl NodeValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn from_scalar(v: &Scalar) -> Self {
        to_f64(v)
    }
    fn mul_add(acc: Self, coeff: &Self, v: &Self) -> Self {
        acc + coeff * v
    }
    fn to_json(&self) -> Value {
        json!(self)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NodeState<T> {
    pub node: usize,
    pub value: T,
    inbox: BTreeMap<usize, T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundRecord<T> {
    /// 1-based position of the factor in application order.
    pub factor_index: usize,
    pub kind: &'static str,
    pub messages: usize,
    pub values: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace<T> {
    pub rounds: Vec<RoundRecord<T>>,
    pub total_messages: usize,
}

impl<T: NodeValue> SimTrace<T> {
    pub fn round_count(&self) -> usize {
        self.rounds.len()
    }

    pub fn to_json(&self, with_values: bool) -> String {
        let rounds: Vec<Value> = self
            .rounds
            .iter()
            .map(|r| {
                let mut obj = json!({
                    "round": r.factor_index,
                    "kind": r.kind,
                    "messages": r.messages,
                });
                if with_values {
                    obj["values"] = Value::Array(r.values.iter().map(NodeValue::to_json).collect());
                }
                obj
            })
            .collect();
        let doc = json!({
            "rounds": self.rounds.len(),
            "total_messages": self.total_messages,
            "per_round": rounds,
        });
        serde_json::to_string_pretty(&doc).expect("trace serializes")
    }
}

/// A compiled round: for each node (0-based), its `(source, coefficient)` row.
struct Round<T> {
    kind: &'static str,
    rows: Vec<Vec<(usize, T)>>,
    messages: usize,
}

fn compile<T: NodeValue>(s: &Schedule, g: &Graph) -> Result<Vec<Round<T>>> {
    check_dim(g.n(), s.n())?;
    s.check_locality(g)?;
    s.factors()
        .map(|f: &Factor| {
            let mut rows = vec![Vec::new(); g.n()];
            let mut messages = 0;
            for (r, c, v) in f.entries(g.n())? {
                if r != c {
                    messages += 1;
                }
                rows[r - 1].push((c, T::from_scalar(&v)));
            }
            Ok(Round {
                kind: f.kind(),
                rows,
                messages,
            })
        })
        .collect()
}

fn run<T: NodeValue>(rounds: &[Round<T>], g: &Graph, x: &[T]) -> Result<(Vec<T>, SimTrace<T>)> {
    check_dim(g.n(), x.len())?;
    let mut nodes: Vec<NodeState<T>> = x
        .iter()
        .enumerate()
        .map(|(k, v)| NodeState {
            node: k + 1,
            value: v.clone(),
            inbox: BTreeMap::new(),
        })
        .collect();
    let mut records = Vec::with_capacity(rounds.len());
    let mut total_messages = 0;

    for (index, round) in rounds.iter().enumerate() {
        // send phase: every value read this round is the previous round's
        let mut messages = 0;
        for (v, row) in round.rows.iter().enumerate() {
            for (u, _) in row.iter().filter(|(u, _)| *u != v + 1) {
                if !g.has_edge(*u, v + 1) {
                    return Err(Error::NonLocalFactor {
                        round: index + 1,
                        row: v + 1,
                        col: *u,
                    });
                }
                let sent = nodes[u - 1].value.clone();
                nodes[v].inbox.insert(*u, sent);
                messages += 1;
            }
        }
        // compute phase, committed at the barrier
        let next: Vec<T> = round
            .rows
            .iter()
            .zip(&nodes)
            .map(|(row, state)| {
                row.iter().fold(T::zero(), |acc, (u, coeff)| {
                    let input = if *u == state.node {
                        &state.value
                    } else {
                        &state.inbox[u]
                    };
                    T::mul_add(acc, coeff, input)
                })
            })
            .collect();
        for (state, value) in nodes.iter_mut().zip(next) {
            state.value = value;
            state.inbox.clear();
        }
        debug_assert_eq!(messages, round.messages);
        total_messages += messages;
        records.push(RoundRecord {
            factor_index: index + 1,
            kind: round.kind,
            messages,
            values: nodes.iter().map(|s| s.value.clone()).collect(),
        });
    }
    let y = nodes.into_iter().map(|s| s.value).collect();
    Ok((
        y,
        SimTrace {
            rounds: records,
            total_messages,
        },
    ))
}

/// Runs `s` on `g` with exact arithmetic.
pub fn simulate(s: &Schedule, g: &Graph, x: &[Scalar]) -> Result<(Vec<Scalar>, SimTrace<Scalar>)> {
    let rounds = compile::<Scalar>(s, g)?;
    run(&rounds, g, x)
}

/// Runs `s` on `g` with every coefficient and value rounded to `f64`.
pub fn simulate_f64(s: &Schedule, g: &Graph, x: &[f64]) -> Result<(Vec<f64>, SimTrace<f64>)> {
    let rounds = compile::<f64>(s, g)?;
    run(&rounds, g, x)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    /// The schedule's product differs from the target; reports the entry
    /// (1-based) with the largest absolute deviation.
    Product {
        row: usize,
        col: usize,
        expected: Scalar,
        found: Scalar,
    },
    /// Simulation disagrees with the dense product on a random input.
    Simulation {
        trial: usize,
        node: usize,
        expected: Scalar,
        found: Scalar,
    },
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mismatch::Product {
                row,
                col,
                expected,
                found,
            } => write!(
                f,
                "product mismatch at ({row},{col}): expected {}, found {}",
                format_scalar(expected),
                format_scalar(found)
            ),
            Mismatch::Simulation {
                trial,
                node,
                expected,
                found,
            } => write!(
                f,
                "simulation mismatch in trial {trial} at node {node}: expected {}, found {}",
                format_scalar(expected),
                format_scalar(found)
            ),
        }
    }
}

/// Seeded random rational signal with entries `p/q`, `|p| <= 9`, `1 <= q <= 5`.
pub fn random_signal(n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            Scalar::new(
                BigInt::from(rng.gen_range(-9..=9)),
                BigInt::from(rng.gen_range(1..=5)),
            )
        })
        .collect()
}

/// Checks that `s` reproduces `m` exactly, then compares simulation against
/// `m x` for `trials` seeded random signals. `Ok(None)` means both hold.
pub fn verify(
    s: &Schedule,
    g: &Graph,
    m: &Matrix,
    trials: usize,
    seed: u64,
) -> Result<Option<Mismatch>> {
    check_dim(g.n(), m.n())?;
    check_dim(g.n(), s.n())?;
    let rounds = compile::<Scalar>(s, g)?;

    let got = s.product()?;
    let worst = got
        .nonzeros()
        .iter()
        .chain(m.nonzeros().iter())
        .map(|(r, c, _)| (*r, *c))
        .filter(|&(r, c)| got[(r - 1, c - 1)] != m[(r - 1, c - 1)])
        .max_by(|a, b| {
            let d = |(r, c): (usize, usize)| abs(&(&got[(r - 1, c - 1)] - &m[(r - 1, c - 1)]));
            // prefer the earliest position among equal deviations
            d(*a).cmp(&d(*b)).then(b.cmp(a))
        });
    if let Some((row, col)) = worst {
        return Ok(Some(Mismatch::Product {
            row,
            col,
            expected: m[(row - 1, col - 1)].clone(),
            found: got[(row - 1, col - 1)].clone(),
        }));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=trials {
        let x = random_signal(g.n(), &mut rng);
        let expected = m.mul_vec(&x)?;
        let (y, _) = run(&rounds, g, &x)?;
        if let Some(k) = (0..y.len()).find(|&k| y[k] != expected[k]) {
            return Ok(Some(Mismatch::Simulation {
                trial,
                node: k + 1,
                expected: expected[k].clone(),
                found: y[k].clone(),
            }));
        }
    }
    Ok(None)
}

/// Largest absolute deviation between float-mode simulation and `m x`
/// over `trials` seeded random signals.
pub fn float_deviation(
    s: &Schedule,
    g: &Graph,
    m: &Matrix,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    check_dim(g.n(), m.n())?;
    let rounds = compile::<f64>(s, g)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let x = random_signal(g.n(), &mut rng);
        let expected = m.mul_vec(&x)?;
        let xf: Vec<f64> = x.iter().map(to_f64).collect();
        let (y, _) = run(&rounds, g, &xf)?;
        for (a, b) in y.iter().zip(&expected) {
            worst = worst.max((a - to_f64(b)).abs());
        }
    }
    Ok(worst)
}
