//! Metric and cost tables on vertex pairs.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{approx_eq, is_pos, le, Scalar};

/// Largest table on which the O(n³) triangle and length checks run.
const CHECK_LIMIT: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// Hop distance of a graph.
    Graph,
    /// Shortest-path distance for positive edge weights.
    Length,
    /// `1` off the diagonal.
    Discrete,
    /// `h ∘ base` for an increasing `h` with `h(0) = 0`.
    Pullback,
    /// Sum of per-coordinate metrics on a product space.
    ProductL1,
    /// User-supplied table satisfying the triangle inequality.
    Custom,
    /// Positive symmetric table without the triangle inequality.
    Cost,
    /// Nonnegative symmetric table that may vanish off the diagonal.
    Pseudo,
}

#[derive(Debug, Clone, PartialEq)]
enum Storage<S> {
    Dense(Vec<S>),
    Product { factors: Vec<Metric<S>>, radices: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Metric<S> {
    kind: MetricKind,
    n: usize,
    length: bool,
    storage: Storage<S>,
}

impl<S: Scalar> Metric<S> {
    pub fn graph(g: &Graph) -> Self {
        let table = g.distances().iter().map(|&d| S::int(d as i64)).collect();
        Metric { kind: MetricKind::Graph, n: g.len(), length: true, storage: Storage::Dense(table) }
    }

    /// Shortest-path metric for positive symmetric edge weights.
    pub fn length(g: &Graph, weight: impl Fn(usize, usize) -> S) -> Result<Self> {
        for (x, y) in g.edges() {
            let (w, w_rev) = (weight(x, y), weight(y, x));
            if !(w > S::zero()) {
                return Err(Error::InvalidMetric(format!(
                    "edge weight {}–{} must be positive, got {w}",
                    g.name(x),
                    g.name(y)
                )));
            }
            if w != w_rev {
                return Err(Error::InvalidMetric(format!(
                    "edge weight {}–{} is not symmetric",
                    g.name(x),
                    g.name(y)
                )));
            }
        }
        let n = g.len();
        let edge_weights: Vec<Vec<(usize, S)>> = (0..n)
            .map(|x| g.neighbors(x).iter().map(|&y| (y, weight(x, y))).collect())
            .collect();
        let table = shortest_paths(n, &edge_weights);
        Ok(Metric { kind: MetricKind::Length, n, length: true, storage: Storage::Dense(table) })
    }

    pub fn discrete(n: usize) -> Self {
        let table = (0..n * n).map(|k| if k / n == k % n { S::zero() } else { S::one() }).collect();
        Metric { kind: MetricKind::Discrete, n, length: false, storage: Storage::Dense(table) }
    }

    /// Row-major table. Tagged [`MetricKind::Custom`] when the triangle
    /// inequality holds and [`MetricKind::Cost`] otherwise.
    pub fn custom(n: usize, table: Vec<S>) -> Result<Self> {
        validate_table(n, &table, true)?;
        let mut m = Metric { kind: MetricKind::Custom, n, length: false, storage: Storage::Dense(table) };
        if !m.triangle_holds() {
            m.kind = MetricKind::Cost;
        }
        Ok(m)
    }

    /// Positive symmetric cost with no triangle requirement.
    pub fn cost(n: usize, table: Vec<S>) -> Result<Self> {
        validate_table(n, &table, true)?;
        Ok(Metric { kind: MetricKind::Cost, n, length: false, storage: Storage::Dense(table) })
    }

    /// Nonnegative symmetric table, zero on the diagonal.
    pub fn pseudo(n: usize, table: Vec<S>) -> Result<Self> {
        validate_table(n, &table, false)?;
        Ok(Metric { kind: MetricKind::Pseudo, n, length: false, storage: Storage::Dense(table) })
    }

    /// `h ∘ base`. `h` must vanish at zero and increase on the attained
    /// values; the result is a cost when the triangle inequality fails.
    pub fn pullback(base: &Metric<S>, h: impl Fn(&S) -> S) -> Result<Self> {
        let n = base.n;
        let mut values: Vec<S> = (0..n * n).map(|k| base.get(k / n, k % n)).collect();
        values.sort_by(|a, b| a.partial_cmp(b).expect("comparable"));
        values.dedup();
        let images: Vec<S> = values.iter().map(&h).collect();
        if !images.first().is_some_and(|v| v.is_zero()) {
            return Err(Error::InvalidMetric("pullback function must vanish at 0".into()));
        }
        if images.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidMetric("pullback function must be increasing".into()));
        }
        let table: Vec<S> = (0..n * n).map(|k| h(&base.get(k / n, k % n))).collect();
        let mut m = Metric { kind: MetricKind::Pullback, n, length: false, storage: Storage::Dense(table) };
        if !m.triangle_holds() {
            m.kind = MetricKind::Cost;
        }
        Ok(m)
    }

    /// `h(d_G)` for `h` tabulated on hop counts `0..=diameter`. The profile
    /// only has to vanish at 0 and be positive elsewhere, so non-monotone
    /// profiles such as those of complete multipartite graphs are allowed.
    pub fn pullback_graph(g: &Graph, h: &[S]) -> Result<Self> {
        let diameter = g.diameter() as usize;
        if h.len() <= diameter {
            return Err(Error::InvalidMetric(format!(
                "profile has {} values but the diameter is {diameter}",
                h.len()
            )));
        }
        if !h[0].is_zero() {
            return Err(Error::InvalidMetric("profile must vanish at 0".into()));
        }
        if let Some(k) = (1..=diameter).find(|&k| !(h[k] > S::zero())) {
            return Err(Error::InvalidMetric(format!("profile value at hop count {k} is not positive")));
        }
        let n = g.len();
        let dist = g.distances();
        let table: Vec<S> = dist.iter().map(|&k| h[k as usize].clone()).collect();
        let mut m = Metric { kind: MetricKind::Pullback, n, length: false, storage: Storage::Dense(table) };
        if !m.triangle_holds() {
            m.kind = MetricKind::Cost;
        }
        Ok(m)
    }

    /// `Σ_i d_i(x_i, y_i)` on the product of the factor spaces. State
    /// indices are mixed-radix with the first factor most significant.
    pub fn product_l1(factors: Vec<Metric<S>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Precondition("product of zero factors".into()));
        }
        let radices: Vec<usize> = factors.iter().map(|f| f.n).collect();
        let n = radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r)).ok_or(
            Error::TooLarge { size: usize::MAX, cap: usize::MAX },
        )?;
        let length = factors.iter().all(|f| f.length);
        Ok(Metric { kind: MetricKind::ProductL1, n, length, storage: Storage::Product { factors, radices } })
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// True when the triangle inequality is known to hold.
    pub fn is_metric(&self) -> bool {
        !matches!(self.kind, MetricKind::Cost | MetricKind::Pseudo)
    }

    pub fn get(&self, x: usize, y: usize) -> S {
        match &self.storage {
            Storage::Dense(t) => t[x * self.n + y].clone(),
            Storage::Product { factors, radices } => {
                let (mut a, mut b) = (x, y);
                let mut total = S::zero();
                for (f, &r) in factors.iter().zip(radices).rev() {
                    total += f.get(a % r, b % r);
                    a /= r;
                    b /= r;
                }
                total
            }
        }
    }

    pub fn max_value(&self) -> S {
        (0..self.n)
            .flat_map(|x| (0..self.n).map(move |y| (x, y)))
            .map(|(x, y)| self.get(x, y))
            .reduce(S::max_of)
            .unwrap_or_else(S::zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Metric<T> {
        let storage = match &self.storage {
            Storage::Dense(t) => Storage::Dense(t.iter().map(f).collect()),
            Storage::Product { factors, radices } => Storage::Product {
                factors: factors.iter().map(|m| m.map(f)).collect(),
                radices: radices.clone(),
            },
        };
        Metric { kind: self.kind, n: self.n, length: self.length, storage }
    }

    pub fn to_f64(&self) -> Metric<f64> {
        self.map(|v| v.to_f64())
    }

    /// Exhaustive triangle check; skipped (assumed false) above the size
    /// limit.
    pub fn triangle_holds(&self) -> bool {
        if self.n > CHECK_LIMIT {
            return false;
        }
        let n = self.n;
        let t: Vec<S> = (0..n * n).map(|k| self.get(k / n, k % n)).collect();
        (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| le(&t[x * n + z], &(t[x * n + y].clone() + t[y * n + z].clone()))))
        })
    }

    /// Whether the table is the shortest-path metric of its own values on
    /// the edges of `g`, which licenses reducing curvature sweeps to edges.
    /// Tables above the check limit are trusted when built as length
    /// metrics.
    pub fn is_length_on(&self, g: &Graph) -> bool {
        if self.n != g.len() {
            return false;
        }
        if self.n > CHECK_LIMIT {
            return self.length;
        }
        if !self.is_metric() {
            return false;
        }
        let edge_weights: Vec<Vec<(usize, S)>> = (0..self.n)
            .map(|x| g.neighbors(x).iter().map(|&y| (y, self.get(x, y))).collect())
            .collect();
        let sp = shortest_paths(self.n, &edge_weights);
        (0..self.n * self.n).all(|k| approx_eq(&sp[k], &self.get(k / self.n, k % self.n)))
    }
}

fn validate_table<S: Scalar>(n: usize, table: &[S], positive: bool) -> Result<()> {
    if table.len() != n * n {
        return Err(Error::InvalidMetric(format!("expected {} entries, got {}", n * n, table.len())));
    }
    for x in 0..n {
        if !table[x * n + x].is_zero() {
            return Err(Error::InvalidMetric(format!("nonzero diagonal at {x}")));
        }
        for y in x + 1..n {
            let (a, b) = (&table[x * n + y], &table[y * n + x]);
            if !approx_eq(a, b) {
                return Err(Error::InvalidMetric(format!("asymmetric entry ({x},{y})")));
            }
            let ok = if positive { is_pos(a) } else { *a >= S::zero() };
            if !ok {
                return Err(Error::InvalidMetric(format!("entry ({x},{y}) = {a} out of range")));
            }
        }
    }
    Ok(())
}

/// Dense Dijkstra from every source.
fn shortest_paths<S: Scalar>(n: usize, adj: &[Vec<(usize, S)>]) -> Vec<S> {
    let mut out = Vec::with_capacity(n * n);
    for s in 0..n {
        let mut dist: Vec<Option<S>> = vec![None; n];
        let mut done = vec![false; n];
        dist[s] = Some(S::zero());
        for _ in 0..n {
            let next = (0..n)
                .filter(|&v| !done[v] && dist[v].is_some())
                .min_by(|&a, &b| dist[a].partial_cmp(&dist[b]).expect("comparable"));
            let Some(v) = next else { break };
            done[v] = true;
            let dv = dist[v].clone().expect("set");
            for (w, c) in &adj[v] {
                let cand = dv.clone() + c.clone();
                if dist[*w].as_ref().is_none_or(|cur| cand < *cur) {
                    dist[*w] = Some(cand);
                }
            }
        }
        out.extend(dist.into_iter().map(|d| d.expect("connected graph")));
    }
    out
}
