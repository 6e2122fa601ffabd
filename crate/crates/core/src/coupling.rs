//! Coupling generators: per-pair jump rates on the product space whose
//! marginals reproduce a given generator.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Generator;
use crate::measure::DiscreteMeasure;
use crate::metric::Metric;
use crate::scalar::{approx_eq, le, Scalar};
use crate::transport::transport_cost;

/// Jump rates `J^π((x,y), ·)` out of one pair. The base pair itself never
/// appears as a target.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingRates<S> {
    pub base: (usize, usize),
    pub rates: Vec<((usize, usize), S)>,
}

impl<S: Scalar> CouplingRates<S> {
    /// Merge duplicate targets, drop zero rates and the base pair.
    pub fn new(base: (usize, usize), entries: impl IntoIterator<Item = ((usize, usize), S)>) -> Self {
        let mut table: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (pair, r) in entries {
            if pair != base {
                *table.entry(pair).or_insert_with(S::zero) += r;
            }
        }
        let rates = table.into_iter().filter(|(_, r)| !r.is_zero()).collect();
        CouplingRates { base, rates }
    }

    /// Diagonal rule: from `(x,x)` jump to `(x',x')` at rate `J(x,x')`.
    pub fn diagonal(gen: &Generator<S>, x: usize) -> Self {
        CouplingRates::new((x, x), gen.jumps(x).map(|(y, r)| ((y, y), r.clone())))
    }

    /// `λ^π(x,y)`.
    pub fn total(&self) -> S {
        self.rates.iter().map(|(_, r)| r.clone()).sum()
    }

    pub fn rate_to(&self, pair: (usize, usize)) -> S {
        self.rates
            .binary_search_by_key(&pair, |(p, _)| *p)
            .map(|i| self.rates[i].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    /// `ℒ^π f(x,y) = Σ J^π((x,y),(x',y')) [f(x',y') − f(x,y)]`.
    pub fn drift(&self, f: impl Fn(usize, usize) -> S) -> S {
        let here = f(self.base.0, self.base.1);
        self.rates.iter().map(|((a, b), r)| r.clone() * (f(*a, *b) - here.clone())).sum()
    }
}

/// Marginal and diagonal defects of `cr` against `gen`; empty means valid.
pub fn coupling_defects<S: Scalar>(gen: &Generator<S>, cr: &CouplingRates<S>) -> Vec<String> {
    let (x, y) = cr.base;
    let mut defects = Vec::new();
    if cr.rates.iter().any(|(_, r)| *r < S::zero()) {
        defects.push("negative coupling rate".to_string());
    }
    if x == y {
        if cr.rates.iter().any(|((a, b), _)| a != b) {
            defects.push(format!("diagonal pair ({x},{x}) leaves the diagonal"));
        }
    }
    let n = gen.len();
    let mut first = vec![S::zero(); n];
    let mut second = vec![S::zero(); n];
    for ((a, b), r) in &cr.rates {
        first[*a] += r.clone();
        second[*b] += r.clone();
    }
    for z in (0..n).filter(|&z| z != x) {
        if !approx_eq(&first[z], &gen.rate(x, z)) {
            defects.push(format!("first marginal at {z}: {} ≠ J({x},{z}) = {}", first[z], gen.rate(x, z)));
        }
    }
    for z in (0..n).filter(|&z| z != y) {
        if !approx_eq(&second[z], &gen.rate(y, z)) {
            defects.push(format!("second marginal at {z}: {} ≠ J({y},{z}) = {}", second[z], gen.rate(y, z)));
        }
    }
    defects
}

/// Marginal identities off the diagonal and the gluing identity on it.
pub fn validate_coupling<S: Scalar>(gen: &Generator<S>, cr: &CouplingRates<S>) -> bool {
    coupling_defects(gen, cr).is_empty()
}

/// `J^π((x,y),(x',y)) = J(x,x')`, `J^π((x,y),(x,y')) = J(y,y')`.
pub fn independent_coupling<S: Scalar>(gen: &Generator<S>, x: usize, y: usize) -> CouplingRates<S> {
    if x == y {
        return CouplingRates::diagonal(gen, x);
    }
    let moves_x = gen.jumps(x).map(|(a, r)| ((a, y), r.clone()));
    let moves_y = gen.jumps(y).map(|(b, r)| ((x, b), r.clone()));
    CouplingRates::new((x, y), moves_x.chain(moves_y).collect::<Vec<_>>())
}

/// `J(x,·) + (total − λ(x))δ_x` and `J(y,·) + (total − λ(y))δ_y`.
pub fn padded_measures<S: Scalar>(
    gen: &Generator<S>,
    x: usize,
    y: usize,
    total: &S,
) -> Result<(DiscreteMeasure<S>, DiscreteMeasure<S>)> {
    let pad = |v: usize| -> Result<DiscreteMeasure<S>> {
        let fake = total.clone() - gen.total_rate(v);
        DiscreteMeasure::new(gen.jumps(v).map(|(w, r)| (w, r.clone())).chain(std::iter::once((v, fake))))
    };
    Ok((pad(x)?, pad(y)?))
}

/// Optimal transport of the padded measures, read as coupling rates.
pub fn optimal_coupling_rates<S: Scalar>(
    gen: &Generator<S>,
    d: &Metric<S>,
    x: usize,
    y: usize,
    total: &S,
) -> Result<CouplingRates<S>> {
    if x == y {
        return Ok(CouplingRates::diagonal(gen, x));
    }
    let minimum = gen.total_rate(x) + gen.total_rate(y);
    if !le(&minimum, total) {
        return Err(Error::Precondition(format!(
            "coupling total rate {total} is below λ(x) + λ(y) = {minimum}"
        )));
    }
    let (mx, my) = padded_measures(gen, x, y, total)?;
    let plan = transport_cost(&mx, &my, d)?;
    Ok(CouplingRates::new((x, y), plan.flows.into_iter().map(|(a, b, m)| ((a, b), m))))
}

/// Optimal rates with respect to `d_G`, rewritten so that no jump moves the
/// distance by two and the first steps of a fixed geodesic are taken at
/// the full marginal rate.
pub fn one_step_coupling<S: Scalar>(gen: &Generator<S>, x: usize, y: usize) -> Result<CouplingRates<S>> {
    if x == y {
        return Err(Error::Precondition("one-step coupling needs x ≠ y".into()));
    }
    let g = gen.graph();
    let dg = Metric::<S>::graph(g);
    let total = gen.total_rate(x) + gen.total_rate(y);
    let base = optimal_coupling_rates(gen, &dg, x, y, &total)?;
    let n0 = g.distance(x, y);
    let mut table: BTreeMap<(usize, usize), S> = BTreeMap::new();
    let add = |t: &mut BTreeMap<(usize, usize), S>, p: (usize, usize), r: S| {
        if p != (x, y) {
            *t.entry(p).or_insert_with(S::zero) += r;
        }
    };
    // Split every two-step jump into two single-coordinate jumps.
    for ((a, b), r) in base.rates {
        if g.distance(a, b).abs_diff(n0) == 2 {
            add(&mut table, (a, y), r.clone());
            add(&mut table, (x, b), r);
        } else {
            add(&mut table, (a, b), r);
        }
    }
    let path = g.geodesic(x, y);
    let (x1, y1) = (path[1], path[path.len() - 2]);
    let from_x1: Vec<((usize, usize), S)> =
        table.iter().filter(|((a, b), _)| *a == x1 && *b != y).map(|(p, r)| (*p, r.clone())).collect();
    for ((a, b), r) in from_x1 {
        table.remove(&(a, b));
        add(&mut table, (x1, y), r.clone());
        add(&mut table, (x, b), r);
    }
    let into_y1: Vec<((usize, usize), S)> =
        table.iter().filter(|((a, b), _)| *b == y1 && *a != x).map(|(p, r)| (*p, r.clone())).collect();
    for ((a, b), r) in into_y1 {
        table.remove(&(a, b));
        add(&mut table, (x, y1), r.clone());
        add(&mut table, (a, y), r);
    }
    Ok(CouplingRates::new((x, y), table))
}

/// Coupling rates for every ordered pair, indexed `x * n + y`.
#[derive(Debug, Clone)]
pub struct CouplingKernel<S> {
    n: usize,
    rows: Vec<CouplingRates<S>>,
}

impl<S: Scalar> CouplingKernel<S> {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Result<CouplingRates<S>> + Sync) -> Result<Self> {
        let rows = (0..n * n).into_par_iter().map(|k| f(k / n, k % n)).collect::<Result<Vec<_>>>()?;
        for (k, row) in rows.iter().enumerate() {
            if row.base != (k / n, k % n) {
                return Err(Error::Precondition(format!("coupling row {k} has base {:?}", row.base)));
            }
        }
        Ok(CouplingKernel { n, rows })
    }

    pub fn independent(gen: &Generator<S>) -> Self {
        Self::from_fn(gen.len(), |x, y| Ok(independent_coupling(gen, x, y))).expect("infallible")
    }

    pub fn optimal(gen: &Generator<S>, d: &Metric<S>) -> Result<Self> {
        Self::from_fn(gen.len(), |x, y| {
            let total = gen.total_rate(x) + gen.total_rate(y);
            optimal_coupling_rates(gen, d, x, y, &total)
        })
    }

    pub fn one_step(gen: &Generator<S>) -> Result<Self> {
        Self::from_fn(gen.len(), |x, y| {
            if x == y {
                Ok(CouplingRates::diagonal(gen, x))
            } else {
                one_step_coupling(gen, x, y)
            }
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn pair(&self, x: usize, y: usize) -> &CouplingRates<S> {
        &self.rows[x * self.n + y]
    }

    pub fn pairs(&self) -> impl Iterator<Item = &CouplingRates<S>> {
        self.rows.iter()
    }

    /// First failing pair with its defects, if any.
    pub fn defects(&self, gen: &Generator<S>) -> Option<((usize, usize), Vec<String>)> {
        self.rows.iter().find_map(|row| {
            let d = coupling_defects(gen, row);
            (!d.is_empty()).then_some((row.base, d))
        })
    }
}
