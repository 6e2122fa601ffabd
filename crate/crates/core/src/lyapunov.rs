//! Contraction from a Lyapunov drift condition `ℒV ≤ −rV + b 1_K` plus a
//! pseudo-metric that couples inside the small set `K`.
//!
//! The metric is `d_β = d_π + β 1_{x≠y}(V(x) + V(y))`. Every hypothesis is
//! scanned pointwise before a rate is issued.

use rayon::prelude::*;

use crate::birth_death::BirthDeathChain;
use crate::certificate::{Certificate, CertificateMetric, Claim};
use crate::coupling::CouplingKernel;
use crate::curvature::{curvature_lower_bound, discrete_metric_curvature};
use crate::error::{pre, Error, Result};
use crate::graph::{Generator, JumpRates};
use crate::linalg;
use crate::metric::Metric;
use crate::scalar::{le, max_all, min_all, Scalar};

/// Inputs of the Lyapunov bound. `k_set` is sorted and deduplicated.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovData<S> {
    pub v: Vec<S>,
    pub r: S,
    pub b: S,
    pub k_set: Vec<usize>,
    pub d_pi: Metric<S>,
    /// `d_π ≤ C (V(x) + V(y))`.
    pub c: S,
    pub beta: S,
}

impl<S: Scalar> LyapunovData<S> {
    /// `β` defaults to `min(1/(4b), C)`.
    pub fn new(v: Vec<S>, r: S, b: S, k_set: Vec<usize>, d_pi: Metric<S>, c: S, beta: Option<S>) -> Result<Self> {
        pre(b > S::zero(), || format!("b must be positive, got {b}"))?;
        let mut k_set = k_set;
        k_set.sort_unstable();
        k_set.dedup();
        let beta = beta.unwrap_or_else(|| S::min_of(S::one() / (S::int(4) * b.clone()), c.clone()));
        Ok(LyapunovData { v, r, b, k_set, d_pi, c, beta })
    }

    pub fn with_beta(&self, beta: S) -> Self {
        LyapunovData { beta, ..self.clone() }
    }

    fn in_k(&self, x: usize) -> bool {
        self.k_set.binary_search(&x).is_ok()
    }

    /// `sup_K V`.
    pub fn v_max_k(&self) -> S {
        max_all(self.k_set.iter().map(|&x| self.v[x].clone())).unwrap_or_else(S::zero)
    }

    /// `inf_{K^c} V`, `None` when `K` is everything.
    pub fn v_min_outside(&self) -> Option<S> {
        min_all((0..self.v.len()).filter(|&x| !self.in_k(x)).map(|x| self.v[x].clone()))
    }
}

/// `ℒV` for any rate kernel.
pub fn drift<S: Scalar, K: JumpRates<S> + ?Sized>(kernel: &K, v: &[S]) -> Vec<S> {
    (0..kernel.state_count())
        .map(|x| kernel.rate_row(x).into_iter().map(|(z, r)| r * (v[z].clone() - v[x].clone())).sum())
        .collect()
}

/// Smallest `C` with `d ≤ C (V(x) + V(y))` on every pair.
pub fn fitted_constant<S: Scalar>(d: &Metric<S>, v: &[S]) -> S {
    let n = d.len();
    max_all((0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).map(|(x, y)| {
        d.get(x, y) / (v[x].clone() + v[y].clone())
    }))
    .unwrap_or_else(S::zero)
}

/// Pointwise scan of every hypothesis on `data`; the first failure is
/// returned as an error naming it.
pub fn check_hypotheses<S: Scalar, K: JumpRates<S> + ?Sized>(kernel: &K, data: &LyapunovData<S>) -> Result<()> {
    let n = kernel.state_count();
    pre(data.v.len() == n && data.d_pi.len() == n, || {
        format!("V has {} values and d_π {} states for a kernel on {n}", data.v.len(), data.d_pi.len())
    })?;
    pre(data.k_set.iter().all(|&x| x < n), || "K names a state out of range".into())?;
    pre(data.r > S::zero(), || format!("r must be positive, got {}", data.r))?;
    pre(data.c >= S::zero(), || format!("C must be nonnegative, got {}", data.c))?;
    if let Some(x) = (0..n).find(|&x| data.v[x] < S::one()) {
        return Err(Error::Rejected(format!("V({x}) = {} is below 1", data.v[x])));
    }
    let lv = drift(kernel, &data.v);
    for x in 0..n {
        let bound = -data.r.clone() * data.v[x].clone() + if data.in_k(x) { data.b.clone() } else { S::zero() };
        if !le(&lv[x], &bound) {
            return Err(Error::Rejected(format!("drift condition fails at {x}: ℒV = {} > {bound}", lv[x])));
        }
    }
    if let Some(low) = data.v_min_outside() {
        let need = data.b.clone() / data.r.clone();
        if !(low > need) {
            return Err(Error::Rejected(format!("inf of V off K is {low}, not above b/r = {need}")));
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let cap = data.c.clone() * (data.v[x].clone() + data.v[y].clone());
            if !le(&data.d_pi.get(x, y), &cap) {
                return Err(Error::Rejected(format!("d_π({x},{y}) = {} exceeds C(V(x)+V(y)) = {cap}", data.d_pi.get(x, y))));
            }
        }
    }
    let half = S::one() / (S::int(2) * data.b.clone());
    if !(data.beta > S::zero() && data.beta < half) {
        return Err(Error::Precondition(format!("need 0 < β < 1/(2b) = {half}, got β = {}", data.beta)));
    }
    Ok(())
}

/// Rate of the Lyapunov bound for the current `β`, without the scan.
fn kappa_formula<S: Scalar>(data: &LyapunovData<S>) -> S {
    let beta = data.beta.clone();
    let c_beta = data.c.clone() + beta.clone();
    let v_k = data.v_max_k();
    let inside = (S::one() - S::int(2) * beta.clone() * data.b.clone()) / (S::int(2) * c_beta.clone() * v_k.clone());
    match data.v_min_outside() {
        Some(low) => {
            let outside = beta * (data.r.clone() * low.clone() - data.b.clone()) / (c_beta * (v_k + low));
            if data.k_set.len() >= 2 {
                S::min_of(inside, outside)
            } else {
                outside
            }
        }
        None => inside,
    }
}

#[derive(Debug, Clone)]
pub struct LyapunovBound<S> {
    pub kappa: S,
    pub beta: S,
    /// `d_β`.
    pub metric: Metric<S>,
    pub certificate: Certificate<S>,
}

/// `κ = min{β(r V̲ − b)/((C+β)(V̄ + V̲)), (1 − 2βb)/(2(C+β)V̄)}` with `V̄ = sup_K V`
/// and `V̲ = inf_{K^c} V`, after checking every hypothesis. A branch whose
/// pairs do not exist (no state off `K`, or `|K| < 2`) is dropped.
pub fn lyapunov_kappa<S: Scalar, K: JumpRates<S> + ?Sized>(kernel: &K, data: &LyapunovData<S>) -> Result<LyapunovBound<S>> {
    check_hypotheses(kernel, data)?;
    let kappa = kappa_formula(data);
    let n = data.v.len();
    let table = (0..n * n)
        .map(|k| {
            let (x, y) = (k / n, k % n);
            if x == y {
                S::zero()
            } else {
                data.d_pi.get(x, y) + data.beta.clone() * (data.v[x].clone() + data.v[y].clone())
            }
        })
        .collect();
    let metric = Metric::custom(n, table)?;
    let certificate = Certificate::new("lyapunov", Claim::Ricci, CertificateMetric::Table(metric.clone()), kappa.clone())
        .with_evidence(format!("ℒV ≤ −{}V + {} 1_K checked on every state", data.r, data.b))
        .with_evidence(format!("d_π ≤ {} (V ⊕ V) checked on every pair", data.c))
        .with_evidence(format!("β = {}", data.beta));
    Ok(LyapunovBound { kappa, beta: data.beta.clone(), metric, certificate })
}

/// Evaluate the rate on `β = k/(2b(m+1))`, `k = 1..=m`, and return the
/// best `β` with its rate.
pub fn best_beta<S: Scalar, K: JumpRates<S> + ?Sized>(kernel: &K, data: &LyapunovData<S>, m: usize) -> Result<(S, S)> {
    pre(m >= 1, || "β grid needs at least one point".into())?;
    check_hypotheses(kernel, data)?;
    let step = S::one() / (S::int(2) * data.b.clone() * S::int(m as i64 + 1));
    (1..=m)
        .into_par_iter()
        .map(|k| {
            let beta = step.clone() * S::int(k as i64);
            let kappa = kappa_formula(&data.with_beta(beta.clone()));
            (beta, kappa)
        })
        .reduce_with(|a, b| if b.1 > a.1 { b } else { a })
        .ok_or_else(|| Error::Precondition("empty β grid".into()))
}

/// `d_π⁰(x,y) = E_{(x,y)} ∫_0^{τ} 1_{K²}(X_t, Y_t) dt` with `τ` the coupling
/// time: the solution of `ℒ^π d = −1_{K²∖Δ}` off the diagonal, `d = 0` on it.
pub fn occupation_pseudometric<S: Scalar>(couplings: &CouplingKernel<S>, k_set: &[usize]) -> Result<Metric<S>> {
    let n = couplings.len();
    for x in 0..n {
        if couplings.pair(x, x).rates.iter().any(|((a, b), _)| a != b) {
            return Err(Error::Precondition(format!("coupling leaves the diagonal from ({x},{x})")));
        }
    }
    let in_k: Vec<bool> = (0..n).map(|x| k_set.contains(&x)).collect();
    let off: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y))).collect();
    let index = |x: usize, y: usize| x * (n - 1) + if y > x { y - 1 } else { y };
    let m = off.len();
    let mut a = vec![vec![S::zero(); m]; m];
    let mut rhs = vec![S::zero(); m];
    for (row, &(x, y)) in off.iter().enumerate() {
        let cr = couplings.pair(x, y);
        for ((u, w), r) in &cr.rates {
            a[row][row] -= r.clone();
            if u != w {
                a[row][index(*u, *w)] += r.clone();
            }
        }
        if in_k[x] && in_k[y] {
            rhs[row] = -S::one();
        }
    }
    let sol = linalg::solve(a, rhs).map_err(|_| Error::Singular("the coupling never meets from some pair".into()))?;
    let mut table = vec![S::zero(); n * n];
    for (row, &(x, y)) in off.iter().enumerate() {
        table[x * n + y] = sol[row].clone();
    }
    if let Some((x, y)) = off.iter().find(|&&(x, y)| !crate::scalar::approx_eq(&table[x * n + y], &table[y * n + x])) {
        return Err(Error::Precondition(format!("occupation times from ({x},{y}) and ({y},{x}) differ; use a swap-symmetric coupling")));
    }
    Metric::pseudo(n, table)
}

/// `d_π = (1/δ) 1_{x≠y}` with `δ = min_{K²∖Δ} Σ_z J(x,z) ∧ J(y,z)`, and
/// `C = 1/δ`. Accepts any rate kernel. A `K` with fewer than two states
/// needs no coupling and yields the zero table with `C = 0`.
pub fn minorization_pseudometric<S: Scalar, K: JumpRates<S> + ?Sized>(kernel: &K, k_set: &[usize]) -> Result<(Metric<S>, S)> {
    let n = kernel.state_count();
    let mut ks = k_set.to_vec();
    ks.sort_unstable();
    ks.dedup();
    if ks.len() < 2 {
        return Ok((Metric::pseudo(n, vec![S::zero(); n * n])?, S::zero()));
    }
    let mut delta: Option<S> = None;
    for (i, &x) in ks.iter().enumerate() {
        for &y in &ks[i + 1..] {
            let overlap = discrete_metric_curvature(kernel, x, y)?;
            delta = Some(match delta {
                Some(d) => S::min_of(d, overlap),
                None => overlap,
            });
        }
    }
    let delta = delta.expect("at least one pair");
    if !(delta > S::zero()) {
        return Err(Error::Rejected("jump measures of two states in K do not overlap (δ = 0)".into()));
    }
    let c = S::one() / delta;
    let table = (0..n * n).map(|k| if k / n == k % n { S::zero() } else { c.clone() }).collect();
    Ok((Metric::pseudo(n, table)?, c))
}

/// `h₀ ∘ d_G` with `D₊h₀(n−1) = ν[n,N]/(2J* ν(n))` on `[1, N]` and flat
/// beyond, where `N` is the `d_G`-diameter of `K` and `ν` the symmetric
/// measure of the reference with `J_n(n−1) = 2J*`, `J_n(n+1) = 2J* + Rn`.
/// `ℒ^π h₀∘d_G ≤ −1_{[1,N]}(d_G)` is audited on one-step couplings.
pub fn curvature_pseudometric<S: Scalar>(gen: &Generator<S>, k_set: &[usize], r: &S, jstar: &S) -> Result<Metric<S>> {
    pre(*jstar > S::zero(), || format!("J* must be positive, got {jstar}"))?;
    pre(*r >= S::zero(), || format!("R must be nonnegative, got {r}"))?;
    let g = gen.graph();
    let min_rate = min_all((0..gen.len()).flat_map(|x| gen.jumps(x).map(|(_, v)| v.clone()))).unwrap_or_else(S::zero);
    pre(*jstar <= min_rate, || format!("J* = {jstar} exceeds the least edge rate {min_rate}"))?;
    let floor = curvature_lower_bound(gen, &Metric::graph(g))?.kappa;
    if floor < -r.clone() {
        return Err(Error::Rejected(format!("d_G curvature {floor} is below −R = {}", -r.clone())));
    }
    let big_n = k_set
        .iter()
        .flat_map(|&x| k_set.iter().map(move |&y| g.distance(x, y) as usize))
        .max()
        .unwrap_or(0)
        .max(1);
    let two_j = S::int(2) * jstar.clone();
    let mut nu = vec![S::one(); big_n];
    for k in (1..big_n).rev() {
        nu[k - 1] = nu[k].clone() * two_j.clone() / (two_j.clone() + r.clone() * S::int(k as i64));
    }
    let diameter = g.diameter() as usize;
    let mut h = vec![S::zero()];
    for k in 1..=diameter.max(big_n) {
        let step = if k <= big_n {
            nu[k - 1..].iter().cloned().sum::<S>() / (two_j.clone() * nu[k - 1].clone())
        } else {
            S::zero()
        };
        let next = h[k - 1].clone() + step;
        h.push(next);
    }
    let d = Metric::pullback_graph(g, &h[..=diameter])?;
    let couplings = CouplingKernel::one_step(gen)?;
    for cr in couplings.pairs().filter(|c| c.base.0 != c.base.1) {
        let (x, y) = cr.base;
        let target = if g.distance(x, y) as usize <= big_n { -S::one() } else { S::zero() };
        let lhs = cr.drift(|a, b| d.get(a, b));
        if !le(&lhs, &target) {
            return Err(Error::Rejected(format!("ℒ^π h₀∘d_G({x},{y}) = {lhs} exceeds {target}")));
        }
    }
    Ok(d)
}

/// Constant-rate chain `a_n = 4`, `b_n = 1` on `{0, …, depth}` with
/// `V(n) = 2ⁿ`, `r = 1`, `b = 2`, `K = {0, 1}`.
pub fn geometric_instance<S: Scalar>(depth: usize) -> Result<(BirthDeathChain<S>, Vec<S>, S, S, Vec<usize>)> {
    pre(depth >= 2, || "the instance needs depth ≥ 2".into())?;
    let chain = BirthDeathChain::constant(S::int(4), S::one(), depth)?;
    let v = (0..=depth).map(|n| S::int(2).powi(n as u32)).collect();
    Ok((chain, v, S::one(), S::int(2), vec![0, 1]))
}
