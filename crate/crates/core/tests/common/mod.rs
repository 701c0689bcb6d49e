//! Test-only generators and oracles. The oracles deliberately avoid the
//! library's matrix and factor code paths.

#![allow(dead_code)]

use locfilter::scalar::{int, ratio};
use locfilter::{Factor, Graph, Matrix, Scalar};
use num::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Dense = Vec<Vec<Scalar>>;

pub fn section_four_graph() -> Graph {
    Graph::new(5, [(1, 2), (2, 3), (3, 4), (3, 5)]).unwrap()
}

pub fn section_four_matrix() -> Matrix {
    Matrix::from_i64([
        [0, 0, 0, 0, 0],
        [1, 0, 0, 3, 0],
        [2, 5, 0, 0, 0],
        [3, 6, 0, 0, 0],
        [4, 0, 0, 4, 0],
    ])
}

pub fn identity(n: usize) -> Dense {
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { int(1) } else { int(0) })
                .collect()
        })
        .collect()
}

/// Dense matrix of a factor, built straight from its definition.
pub fn dense_of(f: &Factor, n: usize) -> Dense {
    let mut m = identity(n);
    match f {
        Factor::AddRow { i, j, m: v } => m[i - 1][j - 1] = v.clone(),
        Factor::ScaleRow { i, m: v } => m[i - 1][i - 1] = v.clone(),
        Factor::Swap { i, j } => {
            m[i - 1][i - 1] = int(0);
            m[j - 1][j - 1] = int(0);
            m[i - 1][j - 1] = int(1);
            m[j - 1][i - 1] = int(1);
        }
        Factor::Diagonal(d) => {
            for (k, v) in d.iter().enumerate() {
                m[k][k] = v.clone();
            }
        }
        Factor::DenseLocal(e) => {
            m = vec![vec![int(0); n]; n];
            for (r, c, v) in e {
                m[r - 1][c - 1] = v.clone();
            }
        }
    }
    m
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|r| {
            (0..n)
                .map(|c| (0..n).fold(Scalar::zero(), |acc, k| acc + &a[r][k] * &b[k][c]))
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &Dense, x: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Scalar::zero(), |acc, (p, q)| acc + p * q)
        })
        .collect()
}

/// Product of factors given leftmost first.
pub fn dense_product(factors: &[Factor], n: usize) -> Dense {
    factors
        .iter()
        .fold(identity(n), |acc, f| mul(&acc, &dense_of(f, n)))
}

pub fn to_dense(m: &Matrix) -> Dense {
    m.rows().map(|r| r.to_vec()).collect()
}

/// Rank by plain row echelon reduction.
pub fn rank(m: &Dense) -> usize {
    let mut a = m.clone();
    let n = a.len();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..n).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let k = &row[c] / &pivot_row[c];
                for (v, p) in row.iter_mut().zip(&pivot_row).skip(c) {
                    *v -= &k * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All-pairs hop distances by Floyd-Warshall; unreachable pairs hold `None`.
pub fn floyd_distances(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = 0;
    }
    for (i, j) in g.edges() {
        d[i - 1][j - 1] = 1;
        d[j - 1][i - 1] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|v| (v < inf).then_some(v)).collect())
        .collect()
}

/// `None` when disconnected.
pub fn floyd_diameter(g: &Graph) -> Option<usize> {
    floyd_distances(g)
        .into_iter()
        .flatten()
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
}

pub fn small_rational(rng: &mut impl Rng) -> Scalar {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Scalar {
    loop {
        let v = small_rational(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let edges: Vec<_> = (1..n)
        .map(|k| (order[k], order[rng.gen_range(0..k)]))
        .collect();
    Graph::new(n, edges).unwrap()
}

pub fn random_cycle(n: usize, rng: &mut impl Rng) -> Graph {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let edges: Vec<_> = (0..n).map(|k| (order[k], order[(k + 1) % n])).collect();
    Graph::new(n, edges.into_iter().filter(|(a, b)| a != b)).unwrap()
}

/// Random tree plus extra edges with probability `p`.
pub fn random_connected(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = random_tree(n, rng).edges();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Graph family chosen by `kind`: 0 tree, 1 cycle, 2 random connected.
pub fn random_graph(kind: usize, n: usize, rng: &mut impl Rng) -> Graph {
    match kind % 3 {
        0 => random_tree(n, rng),
        1 => random_cycle(n, rng),
        _ => random_connected(n, 0.3, rng),
    }
}

/// Random `n x n` matrix of rank at most `r` as a product of `n x r` and `r x n` factors.
pub fn random_rank_matrix(n: usize, r: usize, rng: &mut impl Rng) -> Matrix {
    let left: Dense = (0..n)
        .map(|_| (0..r).map(|_| small_rational(rng)).collect())
        .collect();
    let right: Dense = (0..r)
        .map(|_| (0..n).map(|_| small_rational(rng)).collect())
        .collect();
    let rows: Dense = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..r).fold(Scalar::zero(), |acc, k| acc + &left[i][k] * &right[k][j]))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).unwrap()
}

pub fn random_matrix(n: usize, rng: &mut impl Rng) -> Matrix {
    let rows: Dense = (0..n)
        .map(|_| (0..n).map(|_| small_rational(rng)).collect())
        .collect();
    Matrix::from_rows(rows).unwrap()
}

pub fn random_permutation(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n);
    for (r, &c) in perm.iter().enumerate() {
        m[(r, c)] = int(1);
    }
    m
}

pub fn random_signal(n: usize, rng: &mut impl Rng) -> Vec<Scalar> {
    (0..n).map(|_| small_rational(rng)).collect()
}
