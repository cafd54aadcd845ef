//! Symplectic `2n`-wave graphs.
//!
//! A wave graph on vertices `1..m` is a disjoint union of paths drawn in a
//! book with `n` pages. Each path visits its vertices in increasing order,
//! its first and last edges lie on page 1, consecutive edges sit on adjacent
//! pages, and edges on the same page never interlace.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::words::{self, LatticeWord, Letter};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub page: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize, page: usize) -> Self {
        Self { u, v, page }
    }

    fn interlaces(&self, other: &Edge) -> bool {
        let (a, b) = (self.u, self.v);
        let (c, d) = (other.u, other.v);
        (a < c && c < b && b < d) || (c < a && a < d && d < b)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}p{}", self.u, self.v, self.page)
    }
}

/// Vertices `1..=m` and page-labelled edges, kept sorted by `(u, v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct WaveGraph {
    m: usize,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    m: usize,
    edges: Vec<Edge>,
}

impl TryFrom<RawGraph> for WaveGraph {
    type Error = Error;

    fn try_from(raw: RawGraph) -> Result<Self> {
        WaveGraph::new(raw.m, raw.edges)
    }
}

impl WaveGraph {
    /// Checks the edges are well-formed (`1 ≤ u < v ≤ m`, positive pages)
    /// and sorts them. Wave-graph conditions are checked by [`validate`].
    pub fn new(m: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &mut edges {
            if e.u > e.v {
                std::mem::swap(&mut e.u, &mut e.v);
            }
            if e.u == 0 || e.u == e.v || e.v > m || e.page == 0 {
                return Err(invalid(format!("edge {e} is malformed for m = {m}")));
            }
        }
        edges.sort();
        Ok(Self { m, edges })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn max_page(&self) -> usize {
        self.edges.iter().map(|e| e.page).max().unwrap_or(0)
    }

    /// Vertex sets of the connected components, each sorted, ordered by their
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..=self.m).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 1..=self.m {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// The subgraph induced on `vertices` (sorted, distinct), relabelled
    /// `1..=vertices.len()` in the same order.
    pub fn restrict(&self, vertices: &[usize]) -> Result<WaveGraph> {
        let mut index = vec![0usize; self.m + 1];
        for (k, &v) in vertices.iter().enumerate() {
            if v == 0 || v > self.m {
                return Err(invalid(format!("vertex {v} is not in 1..={}", self.m)));
            }
            index[v] = k + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| index[e.u] != 0 && index[e.v] != 0)
            .map(|e| Edge::new(index[e.u], index[e.v], e.page))
            .collect();
        WaveGraph::new(vertices.len(), edges)
    }

    /// Pages of a component's edges in path order. `None` if the component
    /// is not a path through its vertices in increasing order.
    fn component_pages(&self, component: &[usize]) -> Option<Vec<usize>> {
        let mut pages = Vec::with_capacity(component.len().saturating_sub(1));
        for pair in component.windows(2) {
            let e = self
                .edges
                .binary_search_by(|e| (e.u, e.v).cmp(&(pair[0], pair[1])))
                .ok()?;
            pages.push(self.edges[e].page);
        }
        Some(pages)
    }
}

impl fmt::Display for WaveGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// True iff `g` is a symplectic `2n`-wave graph.
pub fn validate(g: &WaveGraph, n: usize) -> bool {
    if g.edges.iter().any(|e| e.page == 0 || e.page > n) {
        return false;
    }
    if g.edges
        .windows(2)
        .any(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
    {
        return false;
    }
    let components = g.components();
    let path_edges: usize = components.iter().map(|c| c.len() - 1).sum();
    // every component is a path with >= 1 edge; together with the check
    // below this also rules out extra edges
    if path_edges != g.edges.len() || components.iter().any(|c| c.len() < 2) {
        return false;
    }
    for c in &components {
        let Some(pages) = g.component_pages(c) else {
            return false;
        };
        if pages[0] != 1 || *pages.last().unwrap() != 1 {
            return false;
        }
        if pages.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return false;
        }
    }
    for (i, a) in g.edges.iter().enumerate() {
        for b in &g.edges[i + 1..] {
            if a.page == b.page && a.interlaces(b) {
                return false;
            }
        }
    }
    true
}

/// `α(G)`: vertex `i` gets the largest page `k` among its edges, signed by
/// the direction of the page-`k` edge (`+` if it leaves to the right).
pub fn graph_to_word(g: &WaveGraph) -> Result<LatticeWord> {
    let n = g.max_page().max(1);
    if !validate(g, n) {
        return Err(invalid(format!("not a wave graph: {g}")));
    }
    let mut best: Vec<Option<(usize, bool)>> = vec![None; g.m + 1];
    for e in &g.edges {
        for (vertex, rightward) in [(e.u, true), (e.v, false)] {
            if best[vertex].is_none_or(|(page, _)| page < e.page) {
                best[vertex] = Some((e.page, rightward));
            }
        }
    }
    let letters = best[1..]
        .iter()
        .map(|b| {
            let (page, rightward) = b.expect("validated graphs cover every vertex");
            if rightward {
                Letter::plus(page)
            } else {
                Letter::minus(page)
            }
        })
        .collect();
    LatticeWord::new(letters, n)
}

/// Inverse of [`graph_to_word`]. Page `k` pairs the letters of magnitude `k`
/// and `k+1` as brackets: `k` and `−(k+1)` open, `−k` and `k+1` close.
pub fn word_to_graph(w: &[Letter], n: usize) -> Result<WaveGraph> {
    if !words::is_symplectic_lattice_word(w, n) || !words::is_balanced(w) {
        return Err(invalid(format!(
            "\"{}\" is not a balanced symplectic lattice word over C_{n}",
            words::format_letters(w)
        )));
    }
    let mut edges = Vec::with_capacity(w.len());
    let mut stack = Vec::new();
    for k in 1..=n {
        stack.clear();
        for (i, l) in w.iter().enumerate() {
            let opens = match l.value() {
                v if v == k as i32 || v == -(k as i32 + 1) => true,
                v if v == -(k as i32) || v == k as i32 + 1 => false,
                _ => continue,
            };
            if opens {
                stack.push(i + 1);
            } else {
                let u = stack
                    .pop()
                    .expect("lattice words bracket-match on every page");
                edges.push(Edge::new(u, i + 1, k));
            }
        }
        debug_assert!(stack.is_empty());
    }
    WaveGraph::new(w.len(), edges)
}

/// All wave graphs on `m` vertices with at most `n` pages, in word order.
pub fn enumerate_graphs(m: usize, n: usize) -> Vec<WaveGraph> {
    words::enumerate_balanced_words(m, n)
        .iter()
        .map(|w| word_to_graph(w.letters(), n).expect("enumerated words are valid"))
        .collect()
}

/// A walk on the path with vertices `1..=n`, starting and ending at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Walk {
    steps: Vec<usize>,
}

impl Walk {
    pub fn new(steps: Vec<usize>, n: usize) -> Result<Self> {
        if steps.first() != Some(&1) || steps.last() != Some(&1) {
            return Err(invalid(format!("walk {steps:?} must start and end at 1")));
        }
        if steps.iter().any(|&s| s == 0 || s > n) {
            return Err(invalid(format!("walk {steps:?} leaves 1..={n}")));
        }
        if steps.windows(2).any(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(invalid(format!("walk {steps:?} has a non-unit step")));
        }
        Ok(Self { steps })
    }

    /// Visited vertices; one per edge of the corresponding graph.
    pub fn steps(&self) -> &[usize] {
        &self.steps
    }

    /// Number of moves.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Reads the pages of a connected wave graph in edge order.
pub fn graph_to_walk(g: &WaveGraph) -> Result<Walk> {
    let n = g.max_page().max(1);
    if !validate(g, n) {
        return Err(invalid(format!("not a wave graph: {g}")));
    }
    if g.m < 2 || !g.is_connected() {
        return Err(invalid(format!("wave graph {g} is not connected")));
    }
    Walk::new(g.edges.iter().map(|e| e.page).collect(), n)
}

/// Draws edge `{k, k+1}` on page `steps[k-1]`.
pub fn walk_to_graph(w: &Walk) -> WaveGraph {
    let edges = w
        .steps
        .iter()
        .enumerate()
        .map(|(k, &page)| Edge::new(k + 1, k + 2, page))
        .collect();
    WaveGraph::new(w.steps.len() + 1, edges).expect("walk edges are well-formed")
}

/// Number of connected wave graphs on `m` vertices: the `(1,1)` entry of
/// `A^{m−2}` for the adjacency matrix `A` of the path on `n` vertices.
pub fn count_connected(m: usize, n: usize) -> Result<u128> {
    if m < 2 {
        return Err(invalid(format!(
            "connected wave graphs need m >= 2, got {m}"
        )));
    }
    if n == 0 {
        return Err(invalid("page count n must be at least 1"));
    }
    let mut adjacency = vec![vec![0u128; n]; n];
    for i in 0..n - 1 {
        adjacency[i][i + 1] = 1;
        adjacency[i + 1][i] = 1;
    }
    let power = matrix_power(&adjacency, m - 2)?;
    Ok(power[0][0])
}

type Matrix = Vec<Vec<u128>>;

fn matrix_power(a: &Matrix, mut e: usize) -> Result<Matrix> {
    let n = a.len();
    let mut result: Matrix = (0..n)
        .map(|i| (0..n).map(|j| u128::from(i == j)).collect())
        .collect();
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = matrix_mul(&result, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = matrix_mul(&base, &base)?;
        }
    }
    Ok(result)
}

fn matrix_mul(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    let n = a.len();
    let mut out = vec![vec![0u128; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                let t = a[i][k]
                    .checked_mul(b[k][j])
                    .and_then(|t| t.checked_add(out[i][j]))
                    .ok_or(Error::Overflow("count_connected"))?;
                out[i][j] = t;
            }
        }
    }
    Ok(out)
}
