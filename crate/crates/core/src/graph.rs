//! Undirected simple graphs: the locality substrate for filter factorization.
//!
//! Nodes are 1-based everywhere in the public API.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    // adjacency[v - 1] holds the sorted neighbors of v
    adjacency: Vec<Vec<usize>>,
}

/// A simple path `v_0, v_1, ..., v_k` with consecutive nodes adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path(Vec<usize>);

impl Path {
    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges on the path.
    pub fn len(&self) -> usize {
        self.0.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        self.0[self.0.len() - 1]
    }
}

impl Graph {
    /// Builds a graph on nodes `1..=n`. Duplicate and reversed edges collapse.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut sets = vec![BTreeSet::new(); n];
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange { index: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            sets[i - 1].insert(j);
            sets[j - 1].insert(i);
        }
        let adjacency = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Graph { n, adjacency })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j)));
        Graph::new(n, edges).expect("complete graph is valid")
    }

    pub fn path_graph(n: usize) -> Self {
        Graph::new(n, (1..n).map(|i| (i, i + 1))).expect("path graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v - 1]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.n && self.adjacency[i - 1].binary_search(&j).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..=self.n)
            .flat_map(|i| {
                self.neighbors(i)
                    .iter()
                    .filter(move |&&j| j > i)
                    .map(move |&j| (i, j))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub(crate) fn check_node(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::IndexOutOfRange {
                index: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// BFS hop counts from `source`; `None` for unreachable nodes.
    fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source - 1] = Some(0);
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            let d = dist[v - 1].unwrap();
            for &u in self.neighbors(v) {
                if dist[u - 1].is_none() {
                    dist[u - 1] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Smallest node not reachable from node 1, if any.
    pub fn first_unreachable(&self) -> Option<usize> {
        if self.n == 0 {
            return None;
        }
        self.distances_from(1)
            .iter()
            .position(Option::is_none)
            .map(|p| p + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    pub(crate) fn ensure_connected(&self) -> Result<()> {
        match self.first_unreachable() {
            Some(unreachable) => Err(Error::Disconnected { unreachable }),
            None => Ok(()),
        }
    }

    /// Shortest path from `i` to `j`. Ties are broken towards the
    /// lexicographically smallest node sequence.
    pub fn shortest_path(&self, i: usize, j: usize) -> Result<Path> {
        self.check_node(i)?;
        self.check_node(j)?;
        let to_target = self.distances_from(j);
        if to_target[i - 1].is_none() {
            return Err(Error::Disconnected {
                unreachable: i.max(j),
            });
        }
        let mut nodes = vec![i];
        let mut cur = i;
        while cur != j {
            let d = to_target[cur - 1].unwrap();
            // neighbor lists are sorted, so the first hit is the smallest
            cur = *self
                .neighbors(cur)
                .iter()
                .find(|&&u| to_target[u - 1] == Some(d - 1))
                .expect("BFS layers are consistent");
            nodes.push(cur);
        }
        Ok(Path(nodes))
    }

    /// Hop distance between two nodes.
    pub fn distance(&self, i: usize, j: usize) -> Result<usize> {
        self.check_node(i)?;
        self.check_node(j)?;
        self.distances_from(i)[j - 1].ok_or(Error::Disconnected {
            unreachable: i.max(j),
        })
    }

    /// Edge count of the longest shortest path.
    pub fn diameter(&self) -> Result<usize> {
        self.ensure_connected()?;
        Ok((1..=self.n)
            .map(|v| {
                self.distances_from(v)
                    .into_iter()
                    .map(|d| d.unwrap())
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0))
    }

    /// Stable identifier derived from `n` and the canonical edge list.
    pub fn checksum(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.n.to_string());
        for (i, j) in self.edges() {
            hasher.update(format!(";{i}-{j}"));
        }
        let digest = hasher.finalize();
        digest[..8].iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }

    /// Parses the text format: first line `n`, then one `i j` pair per line.
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = content_lines(text);
        let (line_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "missing node count"))?;
        let n: usize = first
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad node count {first:?}")))?;
        let mut edges = Vec::new();
        for (line_no, line) in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = parts[..] else {
                return Err(Error::parse(line_no, "expected `i j`"));
            };
            let parse = |s: &str| {
                s.parse::<usize>()
                    .map_err(|_| Error::parse(line_no, format!("bad node index {s:?}")))
            };
            edges.push((parse(a)?, parse(b)?));
        }
        Graph::new(n, edges)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for (i, j) in self.edges() {
            let _ = writeln!(out, "{i} {j}");
        }
        out
    }

    /// Graphviz rendering.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j) in self.edges() {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Non-empty, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with('#')).then_some((k + 1, l))
    })
}
