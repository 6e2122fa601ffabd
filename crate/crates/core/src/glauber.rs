//! Glauber dynamics on finite product spaces: block and single-site Gibbs
//! samplers, Dobrushin interdependence coefficients and the curvature
//! bounds built from them, plus the ferromagnetic spin and interacting
//! queue models.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::certificate::{Certificate, CertificateMetric, Claim};
use crate::curvature::curvature_lower_bound;
use crate::error::{pre, Error, Result};
use crate::graph::{Generator, Graph};
use crate::measure::DiscreteMeasure;
use crate::metric::Metric;
use crate::scalar::{approx_eq, max_all, min_all, Scalar};
use crate::transport::transport_cost;
use crate::PRODUCT_CAP;

/// Sites with finite value sets and metrics, and a covering by blocks.
/// Configurations are mixed-radix integers with site 0 most significant.
#[derive(Debug, Clone)]
pub struct ProductSpace<S> {
    labels: Vec<Vec<String>>,
    metrics: Vec<Metric<S>>,
    blocks: Vec<Vec<usize>>,
    size: usize,
}

impl<S: Scalar> ProductSpace<S> {
    pub fn new(labels: Vec<Vec<String>>, metrics: Vec<Metric<S>>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let sites = labels.len();
        pre(sites >= 1, || "product space needs at least one site".into())?;
        pre(metrics.len() == sites, || format!("{sites} sites but {} metrics", metrics.len()))?;
        for (i, (l, m)) in labels.iter().zip(&metrics).enumerate() {
            pre(!l.is_empty(), || format!("site {i} has no values"))?;
            pre(m.len() == l.len(), || format!("metric of site {i} has the wrong size"))?;
        }
        let mut blocks = blocks;
        for b in &mut blocks {
            b.sort_unstable();
            b.dedup();
            pre(!b.is_empty() && b.iter().all(|&i| i < sites), || format!("bad block {b:?}"))?;
        }
        let covered = (0..sites).all(|i| blocks.iter().any(|b| b.contains(&i)));
        pre(covered, || "blocks must cover every site".into())?;
        let size = labels
            .iter()
            .try_fold(1usize, |acc, l| acc.checked_mul(l.len()).filter(|&s| s <= PRODUCT_CAP))
            .ok_or(Error::TooLarge { size: usize::MAX, cap: PRODUCT_CAP })?;
        Ok(ProductSpace { labels, metrics, blocks, size })
    }

    /// Single-site blocks with the complete-graph (Hamming) metric at each
    /// site.
    pub fn hamming(labels: Vec<Vec<String>>) -> Result<Self> {
        let metrics = labels
            .iter()
            .map(|l| {
                let k = l.len();
                let g = Graph::new(l.clone(), (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))))?;
                Ok(Metric::graph(&g))
            })
            .collect::<Result<Vec<_>>>()?;
        let blocks = (0..labels.len()).map(|i| vec![i]).collect();
        Self::new(labels, metrics, blocks)
    }

    pub fn with_blocks(self, blocks: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(self.labels, self.metrics, blocks)
    }

    pub fn sites(&self) -> usize {
        self.labels.len()
    }

    pub fn site_size(&self, i: usize) -> usize {
        self.labels[i].len()
    }

    pub fn site_metric(&self, i: usize) -> &Metric<S> {
        &self.metrics[i]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of configurations.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn decode(&self, mut s: usize) -> Vec<usize> {
        let mut x = vec![0; self.sites()];
        for i in (0..self.sites()).rev() {
            x[i] = s % self.site_size(i);
            s /= self.site_size(i);
        }
        x
    }

    pub fn encode(&self, x: &[usize]) -> usize {
        x.iter().enumerate().fold(0, |acc, (i, v)| acc * self.site_size(i) + v)
    }

    pub fn state_name(&self, s: usize) -> String {
        self.decode(s).iter().enumerate().map(|(i, v)| self.labels[i][*v].as_str()).collect::<Vec<_>>().join("|")
    }

    /// `N(j)`: how many blocks contain `j`.
    pub fn coverage(&self, j: usize) -> usize {
        self.blocks.iter().filter(|b| b.contains(&j)).count()
    }

    /// `d_{L¹}` on configurations.
    pub fn metric(&self) -> Result<Metric<S>> {
        Metric::product_l1(self.metrics.clone())
    }

    /// `d_Λ` on configurations of `block`, in its own mixed radix.
    pub fn block_metric(&self, block: usize) -> Result<Metric<S>> {
        Metric::product_l1(self.blocks[block].iter().map(|&i| self.metrics[i].clone()).collect())
    }

    fn block_size(&self, block: usize) -> usize {
        self.blocks[block].iter().map(|&i| self.site_size(i)).product()
    }

    fn block_decode(&self, block: usize, mut s: usize) -> Vec<usize> {
        let sites = &self.blocks[block];
        let mut w = vec![0; sites.len()];
        for k in (0..sites.len()).rev() {
            w[k] = s % self.site_size(sites[k]);
            s /= self.site_size(sites[k]);
        }
        w
    }

    fn block_encode(&self, block: usize, w: &[usize]) -> usize {
        self.blocks[block].iter().zip(w).fold(0, |acc, (&i, v)| acc * self.site_size(i) + v)
    }

    fn block_values(&self, block: usize, x: &[usize]) -> Vec<usize> {
        self.blocks[block].iter().map(|&i| x[i]).collect()
    }

    fn with_block(&self, block: usize, x: &[usize], w: &[usize]) -> Vec<usize> {
        let mut y = x.to_vec();
        for (&i, v) in self.blocks[block].iter().zip(w) {
            y[i] = *v;
        }
        y
    }
}

/// Block update rates `J_Λ(x, x'_Λ)`. For a Gibbs sampler these are the
/// block conditionals `μ_Λ(x'_Λ | x)`; other Glauber dynamics supply their
/// rates directly.
pub trait ConditionalFamily<S: Scalar>: Sync {
    /// Rates to every block configuration `x'_Λ ≠ x_Λ`, values listed in
    /// the block's site order.
    fn block_rates(&self, ps: &ProductSpace<S>, block: usize, x: &[usize]) -> Result<Vec<(Vec<usize>, S)>>;
}

/// Gibbs sampler of `μ ∝ e^{−V}` for an energy `V` on configurations.
pub struct EnergyGibbs {
    energy: Box<dyn Fn(&[usize]) -> f64 + Send + Sync>,
}

impl EnergyGibbs {
    pub fn new(energy: impl Fn(&[usize]) -> f64 + Send + Sync + 'static) -> Self {
        EnergyGibbs { energy: Box::new(energy) }
    }
}

impl ConditionalFamily<f64> for EnergyGibbs {
    fn block_rates(&self, ps: &ProductSpace<f64>, block: usize, x: &[usize]) -> Result<Vec<(Vec<usize>, f64)>> {
        let configs: Vec<Vec<usize>> = (0..ps.block_size(block)).map(|s| ps.block_decode(block, s)).collect();
        let energies: Vec<f64> = configs.iter().map(|w| (self.energy)(&ps.with_block(block, x, w))).collect();
        let floor = energies.iter().copied().fold(f64::INFINITY, f64::min);
        let weights: Vec<f64> = energies.iter().map(|e| (floor - e).exp()).collect();
        let z: f64 = weights.iter().sum();
        let here = ps.block_values(block, x);
        Ok(configs.into_iter().zip(weights).filter(|(w, _)| *w != here).map(|(w, p)| (w, p / z)).collect())
    }
}

/// Explicit block conditionals keyed by block and boundary values.
#[derive(Debug, Clone, Default)]
pub struct TableFamily<S> {
    laws: HashMap<(usize, Vec<usize>), Vec<S>>,
}

impl<S: Scalar> TableFamily<S> {
    pub fn new() -> Self {
        TableFamily { laws: HashMap::new() }
    }

    /// `law` lists `μ_Λ(w | boundary)` for every block configuration `w`
    /// in the block's mixed radix; it must be positive and sum to 1.
    pub fn insert(&mut self, ps: &ProductSpace<S>, block: usize, boundary: Vec<usize>, law: Vec<S>) -> Result<()> {
        pre(block < ps.blocks().len(), || format!("no block {block}"))?;
        pre(law.len() == ps.block_size(block), || format!("law has {} entries for block {block}", law.len()))?;
        pre(law.iter().all(|p| *p > S::zero()), || "conditionals must be strictly positive".into())?;
        let total: S = law.iter().cloned().sum();
        pre(approx_eq(&total, &S::one()), || format!("conditional law sums to {total}"))?;
        self.laws.insert((block, boundary), law);
        Ok(())
    }

    fn boundary(ps: &ProductSpace<S>, block: usize, x: &[usize]) -> Vec<usize> {
        (0..ps.sites()).filter(|i| !ps.blocks()[block].contains(i)).map(|i| x[i]).collect()
    }

    /// Boundary values of `x` outside `block`, in site order.
    pub fn boundary_of(ps: &ProductSpace<S>, block: usize, x: &[usize]) -> Vec<usize> {
        Self::boundary(ps, block, x)
    }
}

impl<S: Scalar> ConditionalFamily<S> for TableFamily<S> {
    fn block_rates(&self, ps: &ProductSpace<S>, block: usize, x: &[usize]) -> Result<Vec<(Vec<usize>, S)>> {
        let key = (block, Self::boundary(ps, block, x));
        let law = self
            .laws
            .get(&key)
            .ok_or_else(|| Error::Precondition(format!("no conditional for block {block} with boundary {:?}", key.1)))?;
        let here = ps.block_encode(block, &ps.block_values(block, x));
        Ok(law.iter().enumerate().filter(|(s, _)| *s != here).map(|(s, p)| (ps.block_decode(block, s), p.clone())).collect())
    }
}

/// Interacting M/M/∞ queues truncated at `trunc`: site `i` grows at rate
/// `λ exp(−Σ_j β_ij x_j)` below the cap and shrinks at rate `x_i`.
#[derive(Debug, Clone)]
pub struct QueueDynamics {
    pub lambda: f64,
    pub betas: Vec<Vec<f64>>,
    pub trunc: usize,
}

impl ConditionalFamily<f64> for QueueDynamics {
    fn block_rates(&self, ps: &ProductSpace<f64>, block: usize, x: &[usize]) -> Result<Vec<(Vec<usize>, f64)>> {
        let sites = &ps.blocks()[block];
        pre(sites.len() == 1, || "queue dynamics update one site at a time".into())?;
        let i = sites[0];
        let mut out = Vec::new();
        if x[i] < self.trunc {
            let field: f64 = (0..x.len()).filter(|&j| j != i).map(|j| self.betas[i][j] * x[j] as f64).sum();
            out.push((vec![x[i] + 1], self.lambda * (-field).exp()));
        }
        if x[i] > 0 {
            out.push((vec![x[i] - 1], x[i] as f64));
        }
        Ok(out)
    }
}

/// `ℒf(x) = Σ_Λ Σ_{x'_Λ} J_Λ(x, x'_Λ)(f(x^{x'_Λ}) − f(x))` on the product.
pub fn gibbs_generator<S: Scalar, F: ConditionalFamily<S> + ?Sized>(ps: &ProductSpace<S>, cf: &F) -> Result<Generator<S>> {
    let triples = (0..ps.len())
        .into_par_iter()
        .map(|s| {
            let x = ps.decode(s);
            let mut out = Vec::new();
            for block in 0..ps.blocks().len() {
                for (w, r) in cf.block_rates(ps, block, &x)? {
                    out.push((s, ps.encode(&ps.with_block(block, &x, &w)), r));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    Generator::from_rates((0..ps.len()).map(|s| ps.state_name(s)), triples.into_iter().flatten())
}

fn padded<S: Scalar>(ps: &ProductSpace<S>, block: usize, here: usize, rates: &[(Vec<usize>, S)], m: &S) -> Result<DiscreteMeasure<S>> {
    let lambda: S = rates.iter().map(|(_, r)| r.clone()).sum();
    let atoms = rates.iter().map(|(w, r)| (ps.block_encode(block, w), r.clone()));
    DiscreteMeasure::new(atoms.chain(std::iter::once((here, m.clone() - lambda))))
}

/// `C_{Λj} = sup W_{d_Λ}(J̄_Λ(x,·), J̄_Λ(y,·)) / d_j(x_j, y_j)` over
/// configurations that differ only at `j`, for every block and every site
/// outside it (entries for `j ∈ Λ` are zero). The padding mass is
/// `M = λ_Λ(x) + λ_Λ(y)`; for `j ∉ Λ` both measures are padded at the same
/// point, so the value does not depend on `M`.
pub fn dobrushin_coefficients<S: Scalar, F: ConditionalFamily<S> + ?Sized>(ps: &ProductSpace<S>, cf: &F) -> Result<Vec<Vec<S>>> {
    let nb = ps.blocks().len();
    let tasks: Vec<(usize, usize)> =
        (0..nb).flat_map(|b| (0..ps.sites()).map(move |j| (b, j))).filter(|&(b, j)| !ps.blocks()[b].contains(&j)).collect();
    let metrics = (0..nb).map(|b| ps.block_metric(b)).collect::<Result<Vec<_>>>()?;
    let values = tasks
        .par_iter()
        .map(|&(b, j)| {
            let dj = ps.site_metric(j);
            let mut best = S::zero();
            for s in 0..ps.len() {
                let x = ps.decode(s);
                let rx = cf.block_rates(ps, b, &x)?;
                let here = ps.block_encode(b, &ps.block_values(b, &x));
                for v in x[j] + 1..ps.site_size(j) {
                    let mut y = x.clone();
                    y[j] = v;
                    let ry = cf.block_rates(ps, b, &y)?;
                    let lx: S = rx.iter().map(|(_, r)| r.clone()).sum();
                    let ly: S = ry.iter().map(|(_, r)| r.clone()).sum();
                    let m = lx + ly;
                    let w = transport_cost(&padded(ps, b, here, &rx, &m)?, &padded(ps, b, here, &ry, &m)?, &metrics[b])?.cost;
                    best = S::max_of(best, w / dj.get(x[j], v));
                }
            }
            Ok(((b, j), best))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut c = vec![vec![S::zero(); ps.sites()]; nb];
    for ((b, j), v) in values {
        c[b][j] = v;
    }
    Ok(c)
}

/// `1 − max_j Σ_i C_ij` for a square coefficient matrix with zero diagonal.
/// A nonpositive value certifies nothing.
pub fn dobrushin_curvature<S: Scalar>(c: &[Vec<S>]) -> Result<S> {
    let n = c.len();
    pre(c.iter().all(|row| row.len() == n), || "coefficient matrix must be square".into())?;
    pre((0..n).all(|i| c[i][i].is_zero()), || "coefficient matrix must have a zero diagonal".into())?;
    pre(c.iter().flatten().all(|v| *v >= S::zero()), || "coefficients must be nonnegative".into())?;
    let worst = max_all((0..n).map(|j| (0..n).map(|i| c[i][j].clone()).sum::<S>())).unwrap_or_else(S::zero);
    Ok(S::one() - worst)
}

/// `min_j (κ₀ N(j) − Σ_{Λ ∌ j} C_{Λj})`.
pub fn glauber_block_bound<S: Scalar>(ps: &ProductSpace<S>, kappa0: &S, c_block: &[Vec<S>]) -> Result<S> {
    pre(c_block.len() == ps.blocks().len(), || "one coefficient row per block".into())?;
    block_bound(ps.sites(), ps.blocks(), kappa0, c_block)
}

fn block_bound<S: Scalar>(sites: usize, blocks: &[Vec<usize>], kappa0: &S, c_block: &[Vec<S>]) -> Result<S> {
    pre(c_block.iter().all(|row| row.len() == sites), || "one coefficient per site".into())?;
    min_all((0..sites).map(|j| {
        let coverage = blocks.iter().filter(|b| b.contains(&j)).count();
        let leak: S = blocks.iter().zip(c_block).filter(|(b, _)| !b.contains(&j)).map(|(_, row)| row[j].clone()).sum();
        kappa0.clone() * S::int(coverage as i64) - leak
    }))
    .ok_or_else(|| Error::Precondition("no sites".into()))
}

/// `κ₀`: least curvature of a block generator `ℒ_Λ` in `d_Λ`, over every
/// block and every boundary configuration.
pub fn block_curvature<S: Scalar, F: ConditionalFamily<S> + ?Sized>(ps: &ProductSpace<S>, cf: &F) -> Result<S> {
    let mut tasks = Vec::new();
    for b in 0..ps.blocks().len() {
        for s in 0..ps.len() {
            let x = ps.decode(s);
            if ps.block_values(b, &x).iter().all(|&v| v == 0) {
                tasks.push((b, x));
            }
        }
    }
    let values = tasks
        .par_iter()
        .map(|(b, x)| {
            let b = *b;
            let size = ps.block_size(b);
            if size < 2 {
                return Ok(None);
            }
            let mut triples = Vec::new();
            for s in 0..size {
                let y = ps.with_block(b, x, &ps.block_decode(b, s));
                for (w, r) in cf.block_rates(ps, b, &y)? {
                    triples.push((s, ps.block_encode(b, &w), r));
                }
            }
            let names = (0..size).map(|s| s.to_string());
            let gen = Generator::from_rates(names, triples)?;
            Ok(Some(curvature_lower_bound(&gen, &ps.block_metric(b)?)?.kappa))
        })
        .collect::<Result<Vec<_>>>()?;
    min_all(values.into_iter().flatten()).ok_or_else(|| Error::Precondition("every block is a single point".into()))
}

/// Block curvature and interdependence coefficients combined into a Ricci
/// bound for `d_{L¹}`. Rejected when the bound is not positive.
pub fn glauber_certificate<S: Scalar, F: ConditionalFamily<S> + ?Sized>(ps: &ProductSpace<S>, cf: &F) -> Result<Certificate<S>> {
    let kappa0 = block_curvature(ps, cf)?;
    let c = dobrushin_coefficients(ps, cf)?;
    let kappa = glauber_block_bound(ps, &kappa0, &c)?;
    if !(kappa > S::zero()) {
        return Err(Error::Rejected(format!("block bound {kappa} is not positive; no contraction certified")));
    }
    Ok(Certificate::new("glauber", Claim::Ricci, CertificateMetric::Table(ps.metric()?), kappa)
        .with_evidence(format!("block curvature κ₀ = {kappa0} over every boundary"))
        .with_evidence("interdependence coefficients by exhaustive transport over single-site changes"))
}

/// Result of the finite-box block condition.
#[derive(Debug, Clone, PartialEq)]
pub struct ShlosmanCheck {
    /// `N(j) = (2l+1)^d`.
    pub coverage: f64,
    /// `max_j Σ_{Λ ∌ j} C e^{−δ d(j,Λ)}`.
    pub leak: f64,
    pub kappa: f64,
    pub pass: bool,
}

/// Cover the box `[−n, n]^d` by the cubes `([−l, l]^d + c) ∩ V` and
/// evaluate `(2l+1)^d − Σ_{Λ ∌ j} C e^{−δ d(j,Λ)}` exactly on the finite
/// box, with `d(j, Λ)` the ℓ¹ distance. Requires `l ≤ n`, so distinct
/// centres give distinct blocks.
pub fn dobrushin_shlosman_check(c: f64, delta: f64, l: usize, d: usize, n: usize) -> Result<ShlosmanCheck> {
    pre(c >= 0.0 && delta > 0.0, || format!("need C ≥ 0 and δ > 0, got C = {c}, δ = {delta}"))?;
    pre(d >= 1 && l <= n, || format!("need d ≥ 1 and l ≤ n, got d = {d}, l = {l}, n = {n}"))?;
    let side = 2 * n + 1;
    let sites = side.checked_pow(d as u32).filter(|&s| s <= PRODUCT_CAP).ok_or(Error::TooLarge { size: usize::MAX, cap: PRODUCT_CAP })?;
    let coord = |mut s: usize, width: usize, offset: i64| -> Vec<i64> {
        (0..d)
            .map(|_| {
                let v = (s % width) as i64 - offset;
                s /= width;
                v
            })
            .collect()
    };
    let centres = (side + 2 * l).pow(d as u32);
    let (n, l) = (n as i64, l as i64);
    let boxes: Vec<Vec<(i64, i64)>> = (0..centres)
        .map(|s| coord(s, (2 * (n + l) + 1) as usize, n + l).iter().map(|&c| ((c - l).max(-n), (c + l).min(n))).collect())
        .collect();
    let gap = |j: &[i64], b: &[(i64, i64)]| -> i64 {
        j.iter().zip(b).map(|(&v, &(lo, hi))| if v < lo { lo - v } else if v > hi { v - hi } else { 0 }).sum()
    };
    let blocks: Vec<Vec<usize>> = boxes
        .iter()
        .map(|b| (0..sites).filter(|&s| gap(&coord(s, side, n), b) == 0).collect())
        .collect();
    let c_block: Vec<Vec<f64>> = boxes
        .iter()
        .map(|b| (0..sites).map(|s| c * (-delta * gap(&coord(s, side, n), b) as f64).exp()).collect())
        .collect();
    let kappa = block_bound(sites, &blocks, &1.0, &c_block)?;
    let coverage = ((2 * l + 1) as f64).powi(d as i32);
    Ok(ShlosmanCheck { coverage, leak: coverage - kappa, kappa, pass: kappa > 0.0 })
}

fn check_couplings(betas: &[Vec<f64>]) -> Result<usize> {
    let n = betas.len();
    pre(n >= 1, || "need at least one site".into())?;
    pre(betas.iter().all(|r| r.len() == n), || "coupling matrix must be square".into())?;
    pre((0..n).all(|i| betas[i][i] == 0.0), || "coupling matrix must have a zero diagonal".into())?;
    Ok(n)
}

fn spin(v: usize) -> f64 {
    if v == 0 {
        -1.0
    } else {
        1.0
    }
}

/// Ising-type Gibbs sampler on `{−1, 1}^N` for `V(x) = Σ_{i<j} β_ij x_i x_j`
/// with `β_ij ≤ 0`; value index 0 is `−1`.
pub fn spin_model(betas: &[Vec<f64>]) -> Result<(ProductSpace<f64>, EnergyGibbs)> {
    let n = check_couplings(betas)?;
    pre((0..n).all(|i| (0..n).all(|j| betas[i][j] == betas[j][i])), || "β must be symmetric".into())?;
    if let Some(v) = betas.iter().flatten().find(|v| **v > 0.0) {
        return Err(Error::Precondition(format!("spin couplings must be ferromagnetic (β ≤ 0), found {v}")));
    }
    let ps = ProductSpace::hamming(vec![vec!["-1".to_string(), "1".to_string()]; n])?;
    let b = betas.to_vec();
    let energy = EnergyGibbs::new(move |x: &[usize]| {
        (0..x.len()).flat_map(|i| (i + 1..x.len()).map(move |j| (i, j))).map(|(i, j)| b[i][j] * spin(x[i]) * spin(x[j])).sum()
    });
    Ok((ps, energy))
}

/// `c_ij(x) = μ_i(1 | x^{j+}) − μ_i(1 | x^{j−})` in closed form; depends on
/// `x` only off `i` and `j`.
pub fn spin_interdependence(betas: &[Vec<f64>], x: &[usize], i: usize, j: usize) -> f64 {
    let field: f64 = (0..x.len()).filter(|&k| k != i && k != j).map(|k| betas[i][k] * spin(x[k])).sum();
    let b = betas[i][j];
    let e = (2.0 * field).exp();
    e * ((-2.0 * b).exp() - (2.0 * b).exp()) / ((1.0 + e * (-2.0 * b).exp()) * (1.0 + e * (2.0 * b).exp()))
}

/// `1 − sup_x max_j Σ_{i≠j} c_ij(x)`: the exact Hamming curvature of the
/// ferromagnetic spin sampler.
pub fn spin_curvature(betas: &[Vec<f64>]) -> Result<f64> {
    let (ps, _) = spin_model(betas)?;
    let n = ps.sites();
    let worst = (0..ps.len())
        .into_par_iter()
        .map(|s| {
            let x = ps.decode(s);
            (0..n).map(|j| (0..n).filter(|&i| i != j).map(|i| spin_interdependence(betas, &x, i, j)).sum::<f64>()).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(1.0 - worst)
}

/// Interacting queues on `{0, …, trunc}^N` with the `|x − y|` metric per
/// site and single-site updates.
pub fn queue_model(lambda: f64, betas: &[Vec<f64>], trunc: usize) -> Result<(ProductSpace<f64>, QueueDynamics)> {
    let n = check_couplings(betas)?;
    pre(lambda > 0.0, || format!("λ must be positive, got {lambda}"))?;
    pre(trunc >= 1, || "truncation must be at least 1".into())?;
    if let Some(v) = betas.iter().flatten().find(|v| **v < 0.0) {
        return Err(Error::Precondition(format!("queue couplings must be nonnegative, found {v}")));
    }
    let labels: Vec<String> = (0..=trunc).map(|v| v.to_string()).collect();
    let path = Graph::new(labels.clone(), (0..trunc).map(|v| (v, v + 1)))?;
    let ps = ProductSpace::new(vec![labels; n], vec![Metric::graph(&path); n], (0..n).map(|i| vec![i]).collect())?;
    Ok((ps, QueueDynamics { lambda, betas: betas.to_vec(), trunc }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct QueueBound {
    pub kappa: f64,
    /// `κ > 0`; otherwise the value is reported but certifies nothing.
    pub certified: bool,
}

/// `1 − λ sup_j Σ_{i≠j} (1 − e^{−β_ij})`.
pub fn queue_curvature(lambda: f64, betas: &[Vec<f64>]) -> Result<QueueBound> {
    let n = check_couplings(betas)?;
    let worst = (0..n).map(|j| (0..n).filter(|&i| i != j).map(|i| 1.0 - (-betas[i][j]).exp()).sum::<f64>()).fold(0.0, f64::max);
    let kappa = 1.0 - lambda * worst;
    Ok(QueueBound { kappa, certified: kappa > 0.0 })
}
