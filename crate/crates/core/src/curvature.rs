//! Pairwise and global Ricci curvature lower bounds, plus the structural
//! tools built on them: Myers-type diameter bounds, superposition,
//! tensorization and the order-preserving criterion.

use rayon::prelude::*;

use crate::coupling::{optimal_coupling_rates, padded_measures, CouplingRates};
use crate::error::{pre, Error, Result};
use crate::graph::{Generator, JumpRates};
use crate::measure::DiscreteMeasure;
use crate::metric::{Metric, MetricKind};
use crate::scalar::{approx_eq, le, Scalar};
use crate::transport::transport_cost;
use crate::PRODUCT_CAP;

/// Curvature of one pair with the coupling that attains it.
#[derive(Debug, Clone)]
pub struct PairCurvature<S> {
    pub x: usize,
    pub y: usize,
    pub distance: S,
    pub curvature: S,
    pub witness: CouplingRates<S>,
}

/// Which pairs a global sweep visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SweepScope {
    /// Edges when the metric is a length metric on the generator's graph,
    /// all pairs otherwise.
    #[default]
    Auto,
    /// Edges only, whatever the metric.
    Edges,
    AllPairs,
}

#[derive(Debug, Clone)]
pub struct CurvatureReport<S> {
    /// Unordered pairs `x < y` in lexicographic order.
    pub pairs: Vec<PairCurvature<S>>,
    pub kappa: S,
    /// Pair attaining `kappa` (first in order on ties).
    pub worst: (usize, usize),
    pub edge_reduced: bool,
    pub metric_kind: MetricKind,
}

/// `((λ(x)+λ(y)) d(x,y) − T_d(μ_x, μ_y)) / d(x,y)` with padded measures.
pub fn pair_curvature<S: Scalar>(gen: &Generator<S>, d: &Metric<S>, x: usize, y: usize) -> Result<S> {
    pair_curvature_with_witness(gen, d, x, y).map(|p| p.curvature)
}

pub fn pair_curvature_with_witness<S: Scalar>(
    gen: &Generator<S>,
    d: &Metric<S>,
    x: usize,
    y: usize,
) -> Result<PairCurvature<S>> {
    pre(x != y, || format!("pair curvature needs distinct states, got {x} twice"))?;
    pre(d.len() == gen.len(), || format!("metric has {} states, generator {}", d.len(), gen.len()))?;
    let total = gen.total_rate(x) + gen.total_rate(y);
    let witness = optimal_coupling_rates(gen, d, x, y, &total)?;
    let dxy = d.get(x, y);
    // The stay-put mass costs nothing, so the drift alone gives the cost gap.
    let drift = witness.drift(|a, b| d.get(a, b));
    let curvature = -drift / dxy.clone();
    Ok(PairCurvature { x, y, distance: dxy, curvature, witness })
}

/// Global lower bound over the pairs selected by `scope`.
pub fn curvature_sweep<S: Scalar>(gen: &Generator<S>, d: &Metric<S>, scope: SweepScope) -> Result<CurvatureReport<S>> {
    pre(gen.len() >= 2, || "curvature needs at least two states".into())?;
    let edge_reduced = match scope {
        SweepScope::Auto => d.is_length_on(gen.graph()),
        SweepScope::Edges => true,
        SweepScope::AllPairs => false,
    };
    let targets: Vec<(usize, usize)> = if edge_reduced {
        gen.graph().edges().collect()
    } else {
        let n = gen.len();
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect()
    };
    let pairs = targets
        .par_iter()
        .map(|&(x, y)| pair_curvature_with_witness(gen, d, x, y))
        .collect::<Result<Vec<_>>>()?;
    let mut best = 0;
    for (i, p) in pairs.iter().enumerate() {
        if p.curvature < pairs[best].curvature {
            best = i;
        }
    }
    let kappa = pairs[best].curvature.clone();
    let worst = (pairs[best].x, pairs[best].y);
    Ok(CurvatureReport { pairs, kappa, worst, edge_reduced, metric_kind: d.kind() })
}

/// Global bound with automatic edge reduction for length metrics.
pub fn curvature_lower_bound<S: Scalar>(gen: &Generator<S>, d: &Metric<S>) -> Result<CurvatureReport<S>> {
    curvature_sweep(gen, d, SweepScope::Auto)
}

/// `Σ_z J(x,z) ∧ J(y,z)` with false rates `J(x,x) = λ(y)`, `J(y,y) = λ(x)`:
/// the curvature under the discrete metric. Works for any rate kernel.
pub fn discrete_metric_curvature<S: Scalar, K: JumpRates<S> + ?Sized>(kernel: &K, x: usize, y: usize) -> Result<S> {
    pre(x != y, || format!("pair curvature needs distinct states, got {x} twice"))?;
    let n = kernel.state_count();
    let mut jx = vec![S::zero(); n];
    let mut jy = vec![S::zero(); n];
    for (z, r) in kernel.rate_row(x) {
        jx[z] += r;
    }
    for (z, r) in kernel.rate_row(y) {
        jy[z] += r;
    }
    jx[x] = kernel.row_total(y);
    jy[y] = kernel.row_total(x);
    Ok(jx.into_iter().zip(jy).map(|(a, b)| S::min_of(a, b)).sum())
}

/// `−(1+α)(W_d(J̃_x, J̃_y) − d(x,y)) / d(x,y)` for `J̃ = (J + αδ)/(1+α)`.
/// Requires unit total rates.
pub fn alpha_ricci<S: Scalar>(kernel: &Generator<S>, d: &Metric<S>, alpha: &S, x: usize, y: usize) -> Result<S> {
    pre(x != y, || format!("pair curvature needs distinct states, got {x} twice"))?;
    pre(*alpha >= S::zero(), || format!("alpha must be nonnegative, got {alpha}"))?;
    if let Some(z) = (0..kernel.len()).find(|&z| !approx_eq(&kernel.total_rate(z), &S::one())) {
        return Err(Error::Precondition(format!(
            "alpha curvature needs unit total rates, λ({}) = {}",
            kernel.graph().name(z),
            kernel.total_rate(z)
        )));
    }
    let scale = S::one() + alpha.clone();
    let lazy = |v: usize| {
        DiscreteMeasure::new(
            kernel
                .jumps(v)
                .map(|(w, r)| (w, r.clone() / scale.clone()))
                .chain(std::iter::once((v, alpha.clone() / scale.clone()))),
        )
    };
    let w = transport_cost(&lazy(x)?, &lazy(y)?, d)?.cost;
    let dxy = d.get(x, y);
    Ok(-(scale * (w - dxy.clone())) / dxy)
}

/// Per-pair diameter bounds implied by a curvature lower bound `kappa`.
#[derive(Debug, Clone)]
pub struct MyersReport<S> {
    /// `(x, y, d(x,y), bound)` over unordered pairs.
    pub pairs: Vec<(usize, usize, S, S)>,
    pub violations: Vec<(usize, usize)>,
    /// `M = max_x λ(x)`.
    pub max_rate: S,
    /// `2M/κ`, a bound on the graph diameter when `d` is the graph metric.
    pub diameter_bound: S,
    pub graph_diameter: u32,
    /// `None` unless `d` is the graph metric.
    pub diameter_ok: Option<bool>,
}

impl<S> MyersReport<S> {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.diameter_ok != Some(false)
    }
}

/// `d(x,y) ≤ (Σ J(x,x')d(x,x') + Σ J(y,y')d(y,y'))/κ` for every pair, and
/// `D_G ≤ 2M/κ`.
pub fn myers_bound<S: Scalar>(gen: &Generator<S>, d: &Metric<S>, kappa: &S) -> Result<MyersReport<S>> {
    pre(*kappa > S::zero(), || format!("diameter bound needs κ > 0, got {kappa}"))?;
    let n = gen.len();
    let spread: Vec<S> = (0..n).map(|x| gen.jumps(x).map(|(z, r)| r.clone() * d.get(x, z)).sum()).collect();
    let mut pairs = Vec::new();
    let mut violations = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            let bound = (spread[x].clone() + spread[y].clone()) / kappa.clone();
            let dxy = d.get(x, y);
            if !le(&dxy, &bound) {
                violations.push((x, y));
            }
            pairs.push((x, y, dxy, bound));
        }
    }
    let max_rate = gen.max_total_rate();
    let diameter_bound = S::int(2) * max_rate.clone() / kappa.clone();
    let graph_diameter = gen.graph().diameter();
    let diameter_ok = (d.kind() == MetricKind::Graph).then(|| le(&S::int(graph_diameter as i64), &diameter_bound));
    Ok(MyersReport { pairs, violations, max_rate, diameter_bound, graph_diameter, diameter_ok })
}

/// `Σ w_i ℒ_i` on a common vertex set; the edge set is the union.
pub fn superpose<S: Scalar>(gens: &[Generator<S>], weights: &[S]) -> Result<Generator<S>> {
    pre(!gens.is_empty(), || "superposition of zero generators".into())?;
    pre(gens.len() == weights.len(), || format!("{} generators but {} weights", gens.len(), weights.len()))?;
    if let Some(w) = weights.iter().find(|w| !(**w > S::zero())) {
        return Err(Error::Precondition(format!("superposition weights must be positive, got {w}")));
    }
    let names = gens[0].graph().names();
    if gens.iter().any(|g| g.graph().names() != names) {
        return Err(Error::Precondition("superposed generators must share the vertex list".into()));
    }
    let triples = gens.iter().zip(weights).flat_map(|(g, w)| {
        (0..g.len()).flat_map(move |x| g.jumps(x).map(move |(y, r)| (x, y, r.clone() * w.clone())))
    });
    let merged = crate::graph::RateKernel::new(names.len(), triples)?;
    Generator::from_rates(
        names.to_vec(),
        (0..names.len()).flat_map(|x| merged.rate_row(x).into_iter().map(move |(y, r)| (x, y, r))),
    )
}

/// Product generator (one coordinate jumps at a time) with the L¹ metric.
/// States are mixed-radix with the first factor most significant; names
/// are the factor names joined by `|`.
pub fn tensorize<S: Scalar>(factors: &[(Generator<S>, Metric<S>)]) -> Result<(Generator<S>, Metric<S>)> {
    pre(!factors.is_empty(), || "tensor product of zero factors".into())?;
    let radices: Vec<usize> = factors.iter().map(|(g, _)| g.len()).collect();
    let size = radices.iter().try_fold(1usize, |acc, &r| acc.checked_mul(r).filter(|&s| s <= PRODUCT_CAP));
    let size = size.ok_or(Error::TooLarge { size: usize::MAX, cap: PRODUCT_CAP })?;
    for (g, d) in factors {
        pre(g.len() == d.len(), || "factor metric does not match its generator".into())?;
    }
    let decode = |mut s: usize| -> Vec<usize> {
        let mut coords = vec![0; radices.len()];
        for i in (0..radices.len()).rev() {
            coords[i] = s % radices[i];
            s /= radices[i];
        }
        coords
    };
    let encode = |coords: &[usize]| coords.iter().zip(&radices).fold(0, |acc, (c, r)| acc * r + c);
    let names: Vec<String> = (0..size)
        .map(|s| {
            let coords = decode(s);
            coords.iter().zip(factors).map(|(c, (g, _))| g.graph().name(*c)).collect::<Vec<_>>().join("|")
        })
        .collect();
    let mut triples = Vec::new();
    for s in 0..size {
        let coords = decode(s);
        for (i, (g, _)) in factors.iter().enumerate() {
            for (z, r) in g.jumps(coords[i]) {
                let mut next = coords.clone();
                next[i] = z;
                triples.push((s, encode(&next), r.clone()));
            }
        }
    }
    let gen = Generator::from_rates(names, triples)?;
    let metric = Metric::product_l1(factors.iter().map(|(_, d)| d.clone()).collect())?;
    Ok((gen, metric))
}

/// Curvature for `d(x,y) = |h(x) − h(y)|` when every edge's padded jump
/// measures are stochastically ordered along `h`:
/// `inf −(ℒh(y) − ℒh(x))/(h(y) − h(x))` over edges with `h(x) < h(y)`.
pub fn order_preserving_curvature<S: Scalar>(gen: &Generator<S>, h: &[S]) -> Result<S> {
    let n = gen.len();
    pre(h.len() == n, || format!("h has {} values for {n} states", h.len()))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|a, b| h[*a].partial_cmp(&h[*b]).expect("comparable"));
    if let Some(w) = order.windows(2).find(|w| h[w[0]] == h[w[1]]) {
        return Err(Error::Precondition(format!(
            "h must be injective, h({}) = h({})",
            gen.graph().name(w[0]),
            gen.graph().name(w[1])
        )));
    }
    let lh = gen.apply(h);
    let mut best: Option<S> = None;
    for (a, b) in gen.graph().edges() {
        let (x, y) = if h[a] < h[b] { (a, b) } else { (b, a) };
        let total = gen.total_rate(x) + gen.total_rate(y);
        let (mx, my) = padded_measures(gen, x, y, &total)?;
        let (fx, fy) = (mx.to_dense(n), my.to_dense(n));
        let (mut tail_x, mut tail_y) = (S::zero(), S::zero());
        for &v in order.iter().rev() {
            tail_x += fx[v].clone();
            tail_y += fy[v].clone();
            if !le(&tail_x, &tail_y) {
                return Err(Error::Rejected(format!(
                    "jump measures of edge ({}, {}) are not ordered along h",
                    gen.graph().name(x),
                    gen.graph().name(y)
                )));
            }
        }
        let k = -(lh[y].clone() - lh[x].clone()) / (h[y].clone() - h[x].clone());
        best = Some(match best {
            Some(b) => S::min_of(b, k),
            None => k,
        });
    }
    best.ok_or_else(|| Error::Precondition("graph has no edges".into()))
}
