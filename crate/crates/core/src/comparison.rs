//! Comparison of the coupled distance `d_G(X_t, Y_t)` with a reference
//! chain on `{0, …, D_G}`, and the certificates built on it: concave
//! profiles, metrics for curvature that is only positive far away, and the
//! sine metric for nonnegative graph curvature.

use std::fmt;

use crate::birth_death::ReferenceChain;
use crate::certificate::{Certificate, CertificateMetric, Claim};
use crate::coupling::{coupling_defects, CouplingKernel, CouplingRates};
use crate::curvature::{curvature_lower_bound, pair_curvature};
use crate::error::{pre, Error, Result};
use crate::graph::{Generator, Graph};
use crate::metric::Metric;
use crate::scalar::{ge, le, max_all, min_all, Scalar};

/// Coupling rates out of `(x, y)` grouped by the change of graph distance,
/// indexed `Δ + 2` for `Δ ∈ [−2, 2]`.
pub fn distance_changes<S: Scalar>(g: &Graph, cr: &CouplingRates<S>) -> Result<[S; 5]> {
    let n0 = g.distance(cr.base.0, cr.base.1) as i64;
    let mut out: [S; 5] = std::array::from_fn(|_| S::zero());
    for ((a, b), r) in &cr.rates {
        let delta = g.distance(*a, *b) as i64 - n0;
        if delta.abs() > 2 {
            return Err(Error::Precondition(format!("coupling from {:?} jumps by {delta} in distance", cr.base)));
        }
        out[(delta + 2) as usize] += r.clone();
    }
    Ok(out)
}

/// Reference rates with per-pair `α ≥ 1` and `β = (β₋₂, β₋₁, β₁, β₂) ≥ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonData<S> {
    pub reference: ReferenceChain<S>,
    n: usize,
    alpha: Vec<S>,
    beta: Vec<[S; 4]>,
}

impl<S: Scalar> ComparisonData<S> {
    /// `α` and `β` are indexed `x * n + y`.
    pub fn new(reference: ReferenceChain<S>, n: usize, alpha: Vec<S>, beta: Vec<[S; 4]>) -> Result<Self> {
        pre(alpha.len() == n * n && beta.len() == n * n, || "α and β need one entry per ordered pair".into())?;
        Ok(ComparisonData { reference, n, alpha, beta })
    }

    /// `α ≡ 1`, `β ≡ 0`.
    pub fn plain(reference: ReferenceChain<S>, n: usize) -> Self {
        let beta = (0..n * n).map(|_| std::array::from_fn(|_| S::zero())).collect();
        ComparisonData { reference, n, alpha: vec![S::one(); n * n], beta }
    }

    pub fn states(&self) -> usize {
        self.n
    }

    pub fn alpha(&self, x: usize, y: usize) -> &S {
        &self.alpha[x * self.n + y]
    }

    /// `β_j(x,y)` for `j ∈ {−2, −1, 1, 2}`.
    pub fn beta(&self, x: usize, y: usize, j: i32) -> &S {
        let slot = match j {
            -2 => 0,
            -1 => 1,
            1 => 2,
            2 => 3,
            _ => panic!("β is indexed by ±1, ±2, got {j}"),
        };
        &self.beta[x * self.n + y][slot]
    }

    pub fn set_beta(&mut self, x: usize, y: usize, values: [S; 4]) {
        self.beta[x * self.n + y] = values;
    }

    pub fn beta_is_zero(&self) -> bool {
        self.beta.iter().flatten().all(|b| b.is_zero())
    }
}

/// Part of the comparison condition that a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionPart {
    /// The coupling fails its marginal identities.
    Coupling,
    /// `a_{π,j} ≥ α(J_n(n−j) + β₋ⱼ)`.
    Approach(i32),
    /// `b_{π,j} ≤ α(J_n(n+j) + β_j)`.
    Separation(i32),
    /// `(β₋₁ + 2β₋₂) − (β₁ + 2β₂) ≥ 0`.
    BetaBalance,
    /// `J_n(n−1) + 2J_n(n−2) > 0`.
    ReferenceDrift,
    /// `α ≥ 1`, `β ≥ 0`, and a reference as deep as the graph.
    Shape,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub pair: Option<(usize, usize)>,
    pub part: ConditionPart,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = match self.part {
            ConditionPart::Coupling => "coupling marginals".to_string(),
            ConditionPart::Approach(j) => format!("approach rate a_{j}"),
            ConditionPart::Separation(j) => format!("separation rate b_{j}"),
            ConditionPart::BetaBalance => "β balance (β₋₁+2β₋₂ ≥ β₁+2β₂)".to_string(),
            ConditionPart::ReferenceDrift => "reference drift (J_n(n−1)+2J_n(n−2) > 0)".to_string(),
            ConditionPart::Shape => "data shape".to_string(),
        };
        match self.pair {
            Some((x, y)) => write!(f, "{part} at ({x},{y}): {}", self.detail),
            None => write!(f, "{part}: {}", self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConditionReport {
    pub violations: Vec<Violation>,
}

impl ConditionReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the comparison condition for `couplings` against `data` on every
/// off-diagonal pair and collect all violations.
pub fn verify_condition_c<S: Scalar>(
    gen: &Generator<S>,
    couplings: &CouplingKernel<S>,
    data: &ComparisonData<S>,
) -> ConditionReport {
    let g = gen.graph();
    let n = gen.len();
    let mut violations = Vec::new();
    let mut push = |pair, part, detail: String| violations.push(Violation { pair, part, detail });
    let depth = data.reference.depth();
    if couplings.len() != n || data.states() != n {
        push(None, ConditionPart::Shape, format!("{n} states but data for {} and couplings for {}", data.states(), couplings.len()));
        return ConditionReport { violations };
    }
    if (depth as u32) < g.diameter() {
        push(None, ConditionPart::Shape, format!("reference depth {depth} is below the diameter {}", g.diameter()));
        return ConditionReport { violations };
    }
    for k in 1..=depth {
        let drift = data.reference.rate(k, -1) + S::int(2) * data.reference.rate(k, -2);
        if !(drift > S::zero()) {
            push(None, ConditionPart::ReferenceDrift, format!("n = {k}"));
        }
    }
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let pair = Some((x, y));
            let cr = couplings.pair(x, y);
            let defects = coupling_defects(gen, cr);
            if !defects.is_empty() {
                push(pair, ConditionPart::Coupling, defects.join("; "));
                continue;
            }
            let alpha = data.alpha(x, y).clone();
            if alpha < S::one() {
                push(pair, ConditionPart::Shape, format!("α = {alpha} < 1"));
            }
            let beta = |j| data.beta(x, y, j).clone();
            if [-2, -1, 1, 2].iter().any(|&j| beta(j) < S::zero()) {
                push(pair, ConditionPart::Shape, "negative β".into());
            }
            let balance = (beta(-1) + S::int(2) * beta(-2)) - (beta(1) + S::int(2) * beta(2));
            if !ge(&balance, &S::zero()) {
                push(pair, ConditionPart::BetaBalance, format!("balance {balance}"));
            }
            let changes = match distance_changes(g, cr) {
                Ok(c) => c,
                Err(e) => {
                    push(pair, ConditionPart::Coupling, e.to_string());
                    continue;
                }
            };
            let d = g.distance(x, y) as usize;
            for j in [1i32, 2] {
                let ju = j as usize;
                let approach = changes[2 - ju].clone();
                let down = if d >= ju { data.reference.rate(d, -j) } else { S::zero() };
                let need = alpha.clone() * (down + beta(-j));
                if !ge(&approach, &need) {
                    push(pair, ConditionPart::Approach(j), format!("{approach} < {need}"));
                }
                let separation = changes[2 + ju].clone();
                let up = if d + ju <= depth { data.reference.rate(d, j) } else { S::zero() };
                let cap = alpha.clone() * (up + beta(j));
                if !le(&separation, &cap) {
                    push(pair, ConditionPart::Separation(j), format!("{separation} > {cap}"));
                }
            }
        }
    }
    ConditionReport { violations }
}

/// Tightest reference with `α ≡ 1`, `β ≡ 0` for which `couplings` satisfy
/// the comparison condition: per distance, the least approach rates and the
/// largest separation rates over pairs at that distance.
pub fn envelope<S: Scalar>(gen: &Generator<S>, couplings: &CouplingKernel<S>) -> Result<ComparisonData<S>> {
    let g = gen.graph();
    let n = gen.len();
    let depth = g.diameter() as usize;
    pre(depth >= 1, || "envelope needs at least two states".into())?;
    let mut rows: Vec<Vec<[S; 5]>> = vec![Vec::new(); depth + 1];
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let changes = distance_changes(g, couplings.pair(x, y))?;
            rows[g.distance(x, y) as usize].push(changes);
        }
    }
    let rates = (1..=depth)
        .map(|d| {
            let at = &rows[d];
            let lo = |k: usize| min_all(at.iter().map(|c| c[k].clone())).expect("every distance is attained");
            let hi = |k: usize| max_all(at.iter().map(|c| c[k].clone())).expect("every distance is attained");
            [lo(0), lo(1), S::zero(), hi(3), hi(4)]
        })
        .collect();
    Ok(ComparisonData::plain(ReferenceChain::new(rates)?, n))
}

/// `−ℒ_ref h₀ ≥ κ h₀` on `[1, D]`; the first failing `n` otherwise.
fn check_reference_inequality<S: Scalar>(reference: &ReferenceChain<S>, h0: &[S], kappa: &S) -> Result<()> {
    let lh = reference.apply(h0);
    for n in 1..=reference.depth() {
        let lhs = -lh[n - 1].clone();
        let rhs = kappa.clone() * h0[n].clone();
        if !ge(&lhs, &rhs) {
            return Err(Error::Rejected(format!("−ℒ_ref h₀({n}) = {lhs} is below κ h₀({n}) = {rhs}")));
        }
    }
    Ok(())
}

/// Certificate from a reference inequality `−ℒ_ref h₀ ≥ κ h₀`: a Ricci bound
/// for `h₀ ∘ d_G` when `h₀` has non-increasing increments, otherwise a cost
/// contraction when `β ≡ 0`. The certificate is conditional on the
/// comparison condition; [`certify_by_comparison`] checks it first.
pub fn comparison_certificate<S: Scalar>(data: &ComparisonData<S>, h0: &[S], kappa: &S) -> Result<Certificate<S>> {
    let depth = data.reference.depth();
    pre(h0.len() == depth + 1, || format!("h₀ has {} values for depth {depth}", h0.len()))?;
    pre(h0[0].is_zero(), || "h₀(0) must be 0".into())?;
    let inc: Vec<S> = h0.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    if let Some(n) = inc.iter().position(|v| !(*v > S::zero())) {
        return Err(Error::Precondition(format!("h₀ is not increasing at {n}")));
    }
    pre(*kappa > S::zero(), || format!("κ must be positive, got {kappa}"))?;
    check_reference_inequality(&data.reference, h0, kappa)?;
    let concave = inc.windows(2).all(|w| le(&w[1], &w[0]));
    let base = |claim, branch: &str| {
        Certificate::new("comparison", claim, CertificateMetric::Profile(h0.to_vec()), kappa.clone())
            .with_evidence(format!("−ℒ_ref h₀ ≥ κ h₀ on [1, {depth}]"))
            .with_evidence(branch.to_string())
    };
    if concave {
        Ok(base(Claim::Ricci, "h₀ has non-increasing increments: Ricci bound for h₀ ∘ d_G"))
    } else if data.beta_is_zero() {
        Ok(base(Claim::CostContraction, "β ≡ 0: cost contraction for c = h₀ ∘ d_G"))
    } else {
        Err(Error::Rejected("h₀ has increasing increments somewhere and β is not identically zero".into()))
    }
}

/// Check the comparison condition, then issue [`comparison_certificate`].
pub fn certify_by_comparison<S: Scalar>(
    gen: &Generator<S>,
    couplings: &CouplingKernel<S>,
    data: &ComparisonData<S>,
    h0: &[S],
    kappa: &S,
) -> Result<Certificate<S>> {
    let report = verify_condition_c(gen, couplings, data);
    if !report.holds() {
        let lines: Vec<String> = report.violations.iter().take(5).map(|v| v.to_string()).collect();
        return Err(Error::Rejected(format!(
            "comparison condition fails ({} violations): {}",
            report.violations.len(),
            lines.join("; ")
        )));
    }
    Ok(comparison_certificate(data, h0, kappa)?.with_evidence("comparison condition verified on every pair"))
}

/// Reflection coupling on a cycle `0 ∼ 1 ∼ ⋯ ∼ n−1 ∼ 0` with a uniform
/// rate: the two walkers step towards each other along the shorter arc
/// (the `+` arc on ties), and neighbours either meet or step apart
/// together.
pub fn cycle_reflection_coupling<S: Scalar>(gen: &Generator<S>) -> Result<CouplingKernel<S>> {
    let n = gen.len();
    let g = gen.graph();
    pre(n >= 3, || "cycle needs at least three vertices".into())?;
    let is_cycle = (0..n).all(|x| g.degree(x) == 2 && g.has_edge(x, (x + 1) % n));
    pre(is_cycle, || "vertices must be listed in cyclic order".into())?;
    let c = gen.rate(0, 1);
    pre((0..n).all(|x| gen.rate(x, (x + 1) % n) == c && gen.rate((x + 1) % n, x) == c), || {
        "cycle rates must be uniform".into()
    })?;
    let next = |v: usize| (v + 1) % n;
    let prev = |v: usize| (v + n - 1) % n;
    CouplingKernel::from_fn(n, |x, y| {
        if x == y {
            return Ok(CouplingRates::diagonal(gen, x));
        }
        let forward = (y + n - x) % n;
        // Orient so that `y` lies on the `+` side of `x` along the shorter arc.
        let (u, v, swapped) = if 2 * forward <= n { (x, y, false) } else { (y, x, true) };
        let mut moves = if next(u) == v {
            vec![((v, v), c.clone()), ((u, u), c.clone()), ((prev(u), next(v)), c.clone())]
        } else {
            vec![((next(u), prev(v)), c.clone()), ((prev(u), next(v)), c.clone())]
        };
        if swapped {
            for ((a, b), _) in moves.iter_mut() {
                std::mem::swap(a, b);
            }
        }
        Ok(CouplingRates::new((x, y), moves))
    })
}

/// Curvature with respect to `d_G` that is `≥ κ∞` from distance `N` on
/// and `≥ −R` below it, together with the least edge rate `J*`.
#[derive(Debug, Clone, PartialEq)]
pub struct DissipativityProfile<S> {
    pub jstar: S,
    pub kappa_inf: S,
    pub r: S,
    pub n: usize,
}

/// Metric `h₀ ∘ d_G` for curvature that is positive only far away.
#[derive(Debug, Clone, PartialEq)]
pub struct DissipativeMetric<S> {
    pub profile: DissipativityProfile<S>,
    /// `ν(n)` for `n = 1..=N` (entry `n − 1`).
    pub nu: Vec<S>,
    /// `D₊h₀(n−1) = ν[n,N]/ν(n)` for `n = 1..=N`; increments are 1 beyond.
    pub increments: Vec<S>,
    /// `2J* / Σ_j j ν[j,N]/ν(j)`, a conservative rate.
    pub rate: S,
    /// `inf_n g(n)/h₀(n) = 2J*/h₀(N)`, the rate the reference inequality
    /// actually supports.
    pub sharp_rate: S,
    /// `ν[1,N]/ν(1)`, so that `n ≤ h₀(n) ≤ K n`.
    pub prefactor: S,
}

impl<S: Scalar> DissipativeMetric<S> {
    /// `h₀` on `0..=depth`.
    pub fn h0(&self, depth: usize) -> Vec<S> {
        let mut h = vec![S::zero()];
        for k in 1..=depth {
            let step = self.increments.get(k - 1).cloned().unwrap_or_else(S::one);
            let next = h[k - 1].clone() + step;
            h.push(next);
        }
        h
    }

    /// `g(n) = 2J*` on `[1, N]`, `κ∞ n` beyond.
    pub fn g(&self, n: usize) -> S {
        let p = &self.profile;
        if n <= p.n {
            S::int(2) * p.jstar.clone()
        } else {
            p.kappa_inf.clone() * S::int(n as i64)
        }
    }

    /// Reference on `[1, depth]` with `−ℒ_ref h₀ = g`: `J_n(n−1) = 2J*`,
    /// `J_n(n+1) = 2J* + Rn` below `N`, and `J_n(n−1) = κ∞ n` above `N`.
    pub fn reference(&self, depth: usize) -> Result<ReferenceChain<S>> {
        let p = &self.profile;
        let two_j = S::int(2) * p.jstar.clone();
        ReferenceChain::birth_death(
            depth,
            |k| if k <= p.n { two_j.clone() } else { p.kappa_inf.clone() * S::int(k as i64) },
            |k| if k < p.n { two_j.clone() + p.r.clone() * S::int(k as i64) } else { S::zero() },
        )
    }
}

impl<S: Scalar> DissipativityProfile<S> {
    pub fn new(jstar: S, kappa_inf: S, r: S, n: usize) -> Result<Self> {
        pre(jstar > S::zero(), || format!("J* must be positive, got {jstar}"))?;
        pre(kappa_inf > S::zero(), || format!("κ∞ must be positive, got {kappa_inf}"))?;
        pre(r >= S::zero(), || format!("R must be nonnegative, got {r}"))?;
        pre(n >= 1, || "N must be at least 1".into())?;
        pre(kappa_inf.clone() * S::int(n as i64) >= S::int(2) * jstar.clone(), || {
            format!("need κ∞ N ≥ 2J*; increase N (κ∞ = {kappa_inf}, N = {n}, J* = {jstar})")
        })?;
        Ok(DissipativityProfile { jstar, kappa_inf, r, n })
    }

    /// Read `J*`, `R` and `κ∞` off a finite generator for a given `N`, by
    /// exhaustive `d_G` curvature. `κ∞` is raised to `2J*/N` when no pair
    /// is at distance `N` or more.
    pub fn measure(gen: &Generator<S>, n: usize) -> Result<Self> {
        let g = gen.graph();
        let jstar = min_all((0..gen.len()).flat_map(|x| gen.jumps(x).map(|(_, r)| r.clone())))
            .ok_or_else(|| Error::Precondition("graph has no edges".into()))?;
        let d = Metric::graph(g);
        let mut near: Option<S> = None;
        let mut far: Option<S> = None;
        for x in 0..gen.len() {
            for y in x + 1..gen.len() {
                let k = pair_curvature(gen, &d, x, y)?;
                let slot = if (g.distance(x, y) as usize) < n { &mut near } else { &mut far };
                *slot = Some(match slot.take() {
                    Some(v) => S::min_of(v, k),
                    None => k,
                });
            }
        }
        let r = S::max_of(S::zero(), -near.unwrap_or_else(S::zero));
        let kappa_inf = far.unwrap_or_else(|| S::int(2) * jstar.clone() / S::int(n as i64));
        Self::new(jstar, kappa_inf, r, n)
    }
}

/// `ν(N) = 1`, `ν(n) = (2J*)^{N−n}/Π_{k=n}^{N−1}(2J* + Rk)`, increments
/// `ν[n,N]/ν(n)` on `[1, N]` and 1 beyond, with the rates and prefactor.
pub fn dissipative_metric<S: Scalar>(profile: &DissipativityProfile<S>) -> DissipativeMetric<S> {
    let big_n = profile.n;
    let two_j = S::int(2) * profile.jstar.clone();
    let mut nu = vec![S::one(); big_n];
    for k in (1..big_n).rev() {
        // ν(k) = ν(k+1) · 2J* / (2J* + Rk)
        nu[k - 1] = nu[k].clone() * two_j.clone() / (two_j.clone() + profile.r.clone() * S::int(k as i64));
    }
    let mut tail = vec![S::zero(); big_n + 1];
    for k in (1..=big_n).rev() {
        tail[k - 1] = tail[k].clone() + nu[k - 1].clone();
    }
    let increments: Vec<S> = (0..big_n).map(|i| tail[i].clone() / nu[i].clone()).collect();
    let weighted: S = increments.iter().enumerate().map(|(i, v)| S::int(i as i64 + 1) * v.clone()).sum();
    let prefactor = increments[0].clone();
    let metric = DissipativeMetric {
        profile: profile.clone(),
        nu,
        rate: two_j.clone() / weighted,
        sharp_rate: S::zero(),
        prefactor,
        increments,
    };
    let h = metric.h0(big_n + 1);
    let sharp = min_all((1..=big_n + 1).map(|k| metric.g(k) / h[k].clone())).expect("N ≥ 1");
    DissipativeMetric { sharp_rate: sharp, ..metric }
}

/// Comparison data for a dissipative profile on a concrete generator with
/// one-step couplings: `α ≡ 1`, `β₋₁ = β₁ = a_{π,1} − J_n(n−1)`.
pub fn dissipative_data<S: Scalar>(
    gen: &Generator<S>,
    couplings: &CouplingKernel<S>,
    metric: &DissipativeMetric<S>,
) -> Result<ComparisonData<S>> {
    let g = gen.graph();
    let depth = g.diameter() as usize;
    let reference = metric.reference(depth)?;
    let n = gen.len();
    let mut data = ComparisonData::plain(reference, n);
    for x in 0..n {
        for y in (0..n).filter(|&y| y != x) {
            let changes = distance_changes(g, couplings.pair(x, y))?;
            let d = g.distance(x, y) as usize;
            let slack = S::max_of(S::zero(), changes[1].clone() - data.reference.rate(d, -1));
            data.set_beta(x, y, [S::zero(), slack.clone(), slack, S::zero()]);
        }
    }
    Ok(data)
}

/// `min` over pairs of `a_{π,1} + 2a_{π,2}`, halved on pairs at the
/// diameter: the largest `a` the sine-metric bound accepts.
pub fn zhong_yang_activity<S: Scalar>(gen: &Generator<S>, couplings: &CouplingKernel<S>) -> Result<S> {
    let g = gen.graph();
    let diameter = g.diameter();
    let mut best: Option<S> = None;
    for x in 0..gen.len() {
        for y in (0..gen.len()).filter(|&y| y != x) {
            let c = distance_changes(g, couplings.pair(x, y))?;
            let mut activity = c[1].clone() + S::int(2) * c[0].clone();
            if g.distance(x, y) == diameter {
                activity = activity / S::int(2);
            }
            best = Some(match best {
                Some(b) => S::min_of(b, activity),
                None => activity,
            });
        }
    }
    best.ok_or_else(|| Error::Precondition("need at least two states".into()))
}

/// Sine-metric certificate `κ = 2a(1 − cos(π/2D_G))` for nonnegative
/// `d_G` curvature, after auditing the couplings pair by pair.
pub fn zhong_yang_bound<S: Scalar>(gen: &Generator<S>, a: &S, couplings: &CouplingKernel<S>) -> Result<Certificate<S>> {
    pre(*a > S::zero(), || format!("a must be positive, got {a}"))?;
    let g = gen.graph();
    let dg = Metric::graph(g);
    let report = curvature_lower_bound(gen, &dg)?;
    if report.kappa < S::zero() {
        let (x, y) = report.worst;
        return Err(Error::Rejected(format!(
            "d_G curvature {} is negative at ({}, {})",
            report.kappa,
            g.name(x),
            g.name(y)
        )));
    }
    if let Some((pair, defects)) = couplings.defects(gen) {
        return Err(Error::Rejected(format!("coupling at {pair:?} is invalid: {}", defects.join("; "))));
    }
    let diameter = g.diameter();
    for x in 0..gen.len() {
        for y in (0..gen.len()).filter(|&y| y != x) {
            let c = distance_changes(g, couplings.pair(x, y))?;
            let approach = c[1].clone() + S::int(2) * c[0].clone();
            let separation = c[3].clone() + S::int(2) * c[4].clone();
            if !le(&separation, &approach) {
                return Err(Error::Rejected(format!("coupling at ({x},{y}) increases d_G on average")));
            }
            let need = if g.distance(x, y) == diameter { S::int(2) * a.clone() } else { a.clone() };
            if !ge(&approach, &need) {
                return Err(Error::Rejected(format!("approach rate {approach} at ({x},{y}) is below {need}")));
            }
        }
    }
    let (profile, kappa) = if diameter == 1 {
        (vec![S::zero(), S::one()], S::int(2) * a.clone())
    } else {
        let float = |v: f64| S::from_float(v).ok_or(Error::RequiresFloat("sine metric"));
        let arg = std::f64::consts::PI / (2.0 * diameter as f64);
        let h = (0..=diameter).map(|k| float((k as f64 * arg).sin())).collect::<Result<Vec<S>>>()?;
        (h, S::int(2) * a.clone() * float(1.0 - arg.cos())?)
    };
    let gap = crate::verifier::spectral_gap(gen)?;
    if gap < kappa.to_f64() - 1e-9 {
        return Err(Error::SpectralViolation(format!("spectral gap {gap} is below κ = {kappa}")));
    }
    Ok(Certificate::new("sine-metric", Claim::Ricci, CertificateMetric::Profile(profile), kappa)
        .with_evidence(format!("d_G curvature ≥ {} ≥ 0", report.kappa))
        .with_evidence(format!("approach rates ≥ {a} (≥ 2a at the diameter {diameter}) and no mean separation"))
        .with_evidence(format!("spectral gap {gap}")))
}
