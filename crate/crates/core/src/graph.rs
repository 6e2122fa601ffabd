//! Graphs, nearest-neighbour jump generators and general rate kernels.

use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

use crate::error::{pre, Error, Result};
use crate::measure::DiscreteMeasure;
use crate::scalar::{approx_eq, is_pos, Scalar};

/// Connected, undirected, loop-free graph on named vertices. Vertices are
/// addressed by their index; names are opaque labels.
#[derive(Debug, Clone)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    dist: OnceLock<Vec<u32>>,
}

impl Graph {
    pub fn new<N: Into<String>>(
        names: impl IntoIterator<Item = N>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Precondition("graph needs at least one vertex".into()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Precondition(format!("duplicate vertex `{name}`")));
            }
        }
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for (x, y) in edges {
            if x >= n || y >= n {
                return Err(Error::Precondition(format!("edge ({x},{y}) out of range")));
            }
            if x == y {
                return Err(Error::Precondition(format!("self-loop at `{}`", names[x])));
            }
            adj[x].push(y);
            adj[y].push(x);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        let graph = Graph { names, index, adj, dist: OnceLock::new() };
        let reach = graph.bfs(0);
        if let Some(v) = reach.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected(graph.names[0].clone(), graph.names[v].clone()));
        }
        Ok(graph)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x].binary_search(&y).is_ok()
    }

    /// Undirected edges `(x, y)` with `x < y`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, ys)| ys.iter().filter(move |&&y| y > x).map(move |&y| (x, y)))
    }

    /// Hop distances from `src`; unreachable vertices get `u32::MAX`.
    pub fn bfs(&self, src: usize) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::from([src]);
        dist[src] = 0;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs hop distances, row-major, computed once.
    pub fn distances(&self) -> &[u32] {
        self.dist.get_or_init(|| (0..self.len()).flat_map(|s| self.bfs(s)).collect())
    }

    pub fn distance(&self, x: usize, y: usize) -> u32 {
        self.distances()[x * self.len() + y]
    }

    pub fn diameter(&self) -> u32 {
        self.distances().iter().copied().max().unwrap_or(0)
    }

    /// Lexicographically smallest shortest path from `x` to `y`.
    pub fn geodesic(&self, x: usize, y: usize) -> Vec<usize> {
        let to_y = self.bfs(y);
        let mut path = vec![x];
        let mut cur = x;
        while cur != y {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| to_y[w] + 1 == to_y[cur])
                .expect("connected graph has a next geodesic step");
            path.push(cur);
        }
        path
    }
}

pub fn graph_distance(g: &Graph, x: &str, y: &str) -> Result<u32> {
    Ok(g.distance(g.vertex(x)?, g.vertex(y)?))
}

/// Anything that hands out off-diagonal jump rates per state.
pub trait JumpRates<S: Scalar>: Sync {
    fn state_count(&self) -> usize;
    /// Positive off-diagonal rates out of `x`, sorted by target.
    fn rate_row(&self, x: usize) -> Vec<(usize, S)>;
    fn row_total(&self, x: usize) -> S {
        self.rate_row(x).into_iter().map(|(_, r)| r).sum()
    }
}

/// Nearest-neighbour jump generator: `J(x,y) > 0` exactly on edges.
#[derive(Debug, Clone)]
pub struct Generator<S> {
    graph: Graph,
    rates: Vec<Vec<S>>,
}

impl<S: Scalar> Generator<S> {
    /// `rates[x][k]` is the rate from `x` to `graph.neighbors(x)[k]`.
    pub fn new(graph: Graph, rates: Vec<Vec<S>>) -> Result<Self> {
        if rates.len() != graph.len() {
            return Err(Error::InvalidGenerator("rate table size mismatch".into()));
        }
        for (x, row) in rates.iter().enumerate() {
            if row.len() != graph.degree(x) {
                return Err(Error::InvalidGenerator(format!(
                    "rate row of `{}` does not match its degree",
                    graph.name(x)
                )));
            }
            for (k, r) in row.iter().enumerate() {
                if !(*r > S::zero()) {
                    return Err(Error::InvalidGenerator(format!(
                        "rate {} -> {} must be positive, got {r}",
                        graph.name(x),
                        graph.name(graph.neighbors(x)[k])
                    )));
                }
            }
        }
        Ok(Generator { graph, rates })
    }

    pub fn from_fn(graph: Graph, rate: impl Fn(usize, usize) -> S) -> Result<Self> {
        let rates = (0..graph.len())
            .map(|x| graph.neighbors(x).iter().map(|&y| rate(x, y)).collect())
            .collect();
        Generator::new(graph, rates)
    }

    /// Build from `(x, y, rate)` triples; zero rates are ignored and the
    /// graph is the support, which must be symmetric.
    pub fn from_rates<N: Into<String>>(
        names: impl IntoIterator<Item = N>,
        triples: impl IntoIterator<Item = (usize, usize, S)>,
    ) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        let mut table: HashMap<(usize, usize), S> = HashMap::new();
        for (x, y, r) in triples {
            if x >= n || y >= n {
                return Err(Error::InvalidGenerator(format!("rate ({x},{y}) out of range")));
            }
            if r < S::zero() {
                return Err(Error::InvalidGenerator(format!(
                    "negative rate {} -> {}",
                    names[x], names[y]
                )));
            }
            if x == y {
                return Err(Error::InvalidGenerator(format!("self rate at `{}`", names[x])));
            }
            if !r.is_zero() {
                *table.entry((x, y)).or_insert_with(S::zero) += r;
            }
        }
        for &(x, y) in table.keys() {
            if !table.contains_key(&(y, x)) {
                return Err(Error::InvalidGenerator(format!(
                    "rate {} -> {} is positive but {} -> {} is zero",
                    names[x], names[y], names[y], names[x]
                )));
            }
        }
        let mut edges: Vec<(usize, usize)> = table.keys().copied().filter(|(x, y)| x < y).collect();
        edges.sort_unstable();
        let graph = Graph::new(names, edges)?;
        Generator::from_fn(graph, |x, y| table[&(x, y)].clone())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn rate(&self, x: usize, y: usize) -> S {
        match self.graph.adj[x].binary_search(&y) {
            Ok(k) => self.rates[x][k].clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn jumps(&self, x: usize) -> impl Iterator<Item = (usize, &S)> + '_ {
        self.graph.adj[x].iter().copied().zip(self.rates[x].iter())
    }

    /// `λ(x)`: total jump rate out of `x`.
    pub fn total_rate(&self, x: usize) -> S {
        self.rates[x].iter().cloned().sum()
    }

    pub fn max_total_rate(&self) -> S {
        (0..self.len()).map(|x| self.total_rate(x)).reduce(S::max_of).unwrap_or_else(S::zero)
    }

    pub fn min_total_rate(&self) -> S {
        (0..self.len()).map(|x| self.total_rate(x)).reduce(S::min_of).unwrap_or_else(S::zero)
    }

    /// `(ℒf)(x) = Σ_y J(x,y)(f(y) − f(x))`.
    pub fn apply(&self, f: &[S]) -> Vec<S> {
        (0..self.len())
            .map(|x| self.jumps(x).map(|(y, r)| r.clone() * (f[y].clone() - f[x].clone())).sum())
            .collect()
    }

    pub fn scaled(&self, c: &S) -> Result<Self> {
        pre(is_pos(c), || "scale factor must be positive".into())?;
        let rates = self
            .rates
            .iter()
            .map(|row| row.iter().map(|r| r.clone() * c.clone()).collect())
            .collect();
        Generator::new(self.graph.clone(), rates)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Generator<T> {
        Generator {
            graph: self.graph.clone(),
            rates: self.rates.iter().map(|row| row.iter().map(&f).collect()).collect(),
        }
    }

    pub fn to_f64(&self) -> Generator<f64> {
        self.map(|r| r.to_f64())
    }

    /// Dense generator matrix `Q` with `Q[x][x] = −λ(x)`.
    pub fn dense_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.len();
        let mut q = nalgebra::DMatrix::zeros(n, n);
        for x in 0..n {
            let mut total = 0.0;
            for (y, r) in self.jumps(x) {
                q[(x, y)] = r.to_f64();
                total += r.to_f64();
            }
            q[(x, x)] = -total;
        }
        q
    }
}

impl<S: Scalar> JumpRates<S> for Generator<S> {
    fn state_count(&self) -> usize {
        self.len()
    }

    fn rate_row(&self, x: usize) -> Vec<(usize, S)> {
        self.jumps(x).map(|(y, r)| (y, r.clone())).collect()
    }

    fn row_total(&self, x: usize) -> S {
        self.total_rate(x)
    }
}

/// Rate kernel without the nearest-neighbour or symmetry requirements.
/// Only the minorization construction accepts it.
#[derive(Debug, Clone)]
pub struct RateKernel<S> {
    rows: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> RateKernel<S> {
    pub fn new(n: usize, triples: impl IntoIterator<Item = (usize, usize, S)>) -> Result<Self> {
        let mut rows: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
        for (x, y, r) in triples {
            if x >= n || y >= n || x == y {
                return Err(Error::InvalidGenerator(format!("bad kernel entry ({x},{y})")));
            }
            if r < S::zero() {
                return Err(Error::InvalidGenerator(format!("negative rate ({x},{y})")));
            }
            if !r.is_zero() {
                rows[x].push((y, r));
            }
        }
        for row in &mut rows {
            row.sort_by_key(|(y, _)| *y);
            let mut merged: Vec<(usize, S)> = Vec::with_capacity(row.len());
            for (y, r) in row.drain(..) {
                match merged.last_mut() {
                    Some((last, acc)) if *last == y => *acc += r,
                    _ => merged.push((y, r)),
                }
            }
            *row = merged;
        }
        Ok(RateKernel { rows })
    }
}

impl<S: Scalar> JumpRates<S> for RateKernel<S> {
    fn state_count(&self) -> usize {
        self.rows.len()
    }

    fn rate_row(&self, x: usize) -> Vec<(usize, S)> {
        self.rows[x].clone()
    }
}

/// Stationary probability of `ℒ`, by Grassmann-Taksar-Heyman state
/// reduction. The elimination never subtracts, so every mass stays positive
/// with full relative accuracy even when it is far below machine epsilon.
pub fn invariant_measure<S: Scalar>(gen: &Generator<S>) -> Result<DiscreteMeasure<S>> {
    let n = gen.len();
    let mut a = vec![vec![S::zero(); n]; n];
    for (x, row) in a.iter_mut().enumerate() {
        for (y, r) in gen.jumps(x) {
            row[y] = r.clone();
        }
    }
    for k in (1..n).rev() {
        let out: S = a[k][..k].iter().cloned().sum();
        if !(out > S::zero()) {
            return Err(Error::NoConvergence(format!("state `{}` is cut off during reduction", gen.graph().name(k))));
        }
        for i in 0..k {
            let v = a[i][k].clone() / out.clone();
            a[i][k] = v;
        }
        for i in 0..k {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..k {
                if i != j {
                    let add = a[i][k].clone() * a[k][j].clone();
                    a[i][j] += add;
                }
            }
        }
    }
    let mut mu = vec![S::one(); n];
    for k in 1..n {
        mu[k] = (0..k).map(|i| mu[i].clone() * a[i][k].clone()).sum();
    }
    let total: S = mu.iter().cloned().sum();
    let mu: Vec<S> = mu.into_iter().map(|m| m / total.clone()).collect();
    DiscreteMeasure::from_dense(&mu)
}

/// Detailed balance `μ(x)J(x,y) = μ(y)J(y,x)` on every edge.
pub fn check_reversibility<S: Scalar>(gen: &Generator<S>, mu: &DiscreteMeasure<S>) -> bool {
    gen.graph().edges().all(|(x, y)| {
        approx_eq(&(mu.get(x) * gen.rate(x, y)), &(mu.get(y) * gen.rate(y, x)))
    })
}
