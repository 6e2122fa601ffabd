//! Birth-death chains on `{0, …, D}`: curvature criteria, Poisson-equation
//! metrics, decay certificates, reference chains on distances and the
//! closed-form reference cases.

use crate::error::{pre, Error, Result};
use crate::graph::{Generator, Graph};
use crate::metric::Metric;
use crate::scalar::{approx_eq, le, max_all, min_all, Scalar};

/// `ℒf(n) = a_n(f(n−1) − f(n)) + b_n(f(n+1) − f(n))` with `a_0 = b_D = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BirthDeathChain<S> {
    a: Vec<S>,
    b: Vec<S>,
}

impl<S: Scalar> BirthDeathChain<S> {
    /// `a` and `b` indexed by `0..=D`; `a[0]` and `b[D]` must be zero.
    pub fn new(a: Vec<S>, b: Vec<S>) -> Result<Self> {
        pre(a.len() == b.len() && a.len() >= 2, || "chain needs D ≥ 1 and matching rate lists".into())?;
        let d = a.len() - 1;
        pre(a[0].is_zero(), || "death rate at 0 must be zero".into())?;
        pre(b[d].is_zero(), || "birth rate at the top state must be zero".into())?;
        if let Some(n) = (1..=d).find(|&n| !(a[n] > S::zero())) {
            return Err(Error::InvalidGenerator(format!("death rate a_{n} = {} is not positive", a[n])));
        }
        if let Some(n) = (0..d).find(|&n| !(b[n] > S::zero())) {
            return Err(Error::InvalidGenerator(format!("birth rate b_{n} = {} is not positive", b[n])));
        }
        Ok(BirthDeathChain { a, b })
    }

    /// Rates from closures on `0..=depth`, with the boundary zeros imposed.
    pub fn from_fn(depth: usize, a: impl Fn(usize) -> S, b: impl Fn(usize) -> S) -> Result<Self> {
        let av = (0..=depth).map(|n| if n == 0 { S::zero() } else { a(n) }).collect();
        let bv = (0..=depth).map(|n| if n == depth { S::zero() } else { b(n) }).collect();
        Self::new(av, bv)
    }

    /// Truncated M/M/∞: `b_n = λ`, `a_n = n`.
    pub fn mm_infinity(lambda: S, depth: usize) -> Result<Self> {
        Self::from_fn(depth, |n| S::int(n as i64), |_| lambda.clone())
    }

    /// Binomial chain on `{0, …, n}`: `b_y = p(n − y)`, `a_y = (1 − p)y`.
    pub fn binomial(n: usize, p: S) -> Result<Self> {
        pre(p > S::zero() && p < S::one(), || format!("binomial needs 0 < p < 1, got {p}"))?;
        let q = S::one() - p.clone();
        Self::from_fn(n, |y| q.clone() * S::int(y as i64), |y| p.clone() * S::int((n - y) as i64))
    }

    /// Constant rates `a_n = a`, `b_n = b` (geometric invariant measure).
    pub fn constant(a: S, b: S, depth: usize) -> Result<Self> {
        Self::from_fn(depth, |_| a.clone(), |_| b.clone())
    }

    /// `b_n = p(n + 1)`, `a_n = n` (negative-binomial-type invariant measure).
    pub fn linear_growth(p: S, depth: usize) -> Result<Self> {
        Self::from_fn(depth, |n| S::int(n as i64), |n| p.clone() * S::int(n as i64 + 1))
    }

    pub fn depth(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self, n: usize) -> S {
        self.a[n].clone()
    }

    pub fn b(&self, n: usize) -> S {
        self.b[n].clone()
    }

    /// `μ(n) ∝ b_0⋯b_{n−1}/(a_1⋯a_n)`, normalized.
    pub fn invariant_measure(&self) -> Vec<S> {
        let mut w = vec![S::one()];
        for n in 1..=self.depth() {
            let next = w[n - 1].clone() * self.b[n - 1].clone() / self.a[n].clone();
            w.push(next);
        }
        let z: S = w.iter().cloned().sum();
        w.into_iter().map(|v| v / z.clone()).collect()
    }

    /// `ℒf` on `0..=D`.
    pub fn apply(&self, f: &[S]) -> Vec<S> {
        let d = self.depth();
        (0..=d)
            .map(|n| {
                let mut v = S::zero();
                if n > 0 {
                    v += self.a[n].clone() * (f[n - 1].clone() - f[n].clone());
                }
                if n < d {
                    v += self.b[n].clone() * (f[n + 1].clone() - f[n].clone());
                }
                v
            })
            .collect()
    }

    /// The chain as a generator on the path `0 – 1 – ⋯ – D`.
    pub fn to_generator(&self) -> Generator<S> {
        let d = self.depth();
        let g = Graph::new((0..=d).map(|n| n.to_string()), (0..d).map(|n| (n, n + 1))).expect("path is connected");
        Generator::from_fn(g, |x, y| if y > x { self.b[x].clone() } else { self.a[x].clone() })
            .expect("rates are positive on edges")
    }
}

/// `min_n (a_{n+1} − a_n) − (b_{n+1} − b_n)`: the curvature bound for `d_G`.
pub fn bd_curvature<S: Scalar>(chain: &BirthDeathChain<S>) -> S {
    let terms = (0..chain.depth()).map(|n| (chain.a(n + 1) - chain.a(n)) - (chain.b(n + 1) - chain.b(n)));
    min_all(terms).expect("depth ≥ 1")
}

/// Curvature bound for the length metric with increments `h(n+1) − h(n)`:
/// `min_n [(a_{n+1}D₊h(n) − a_n D₊h(n−1)) − (b_{n+1}D₊h(n+1) − b_n D₊h(n))] / D₊h(n)`.
pub fn bd_metric_curvature<S: Scalar>(chain: &BirthDeathChain<S>, h: &[S]) -> Result<S> {
    let d = chain.depth();
    pre(h.len() == d + 1, || format!("h has {} values for {} states", h.len(), d + 1))?;
    let inc: Vec<S> = h.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
    if let Some(n) = inc.iter().position(|v| !(*v > S::zero())) {
        return Err(Error::Precondition(format!("h is not increasing at {n}")));
    }
    let terms = (0..d).map(|n| {
        let mut lhs = chain.a(n + 1) * inc[n].clone() + chain.b(n) * inc[n].clone();
        if n > 0 {
            lhs -= chain.a(n) * inc[n - 1].clone();
        }
        if n + 1 < d {
            lhs -= chain.b(n + 1) * inc[n + 1].clone();
        }
        lhs / inc[n].clone()
    });
    Ok(min_all(terms).expect("depth ≥ 1"))
}

/// A metric on `{0, …, D}` given by its increments, with the certified
/// curvature and the Poisson-metric diagnostics when they apply.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricDesign<S> {
    /// `h(n)` for `n = 0..=D`, `h(0) = 0`.
    pub h: Vec<S>,
    /// `D₊h(n−1)` for `n = 1..=D` (entry `n − 1`).
    pub increments: Vec<S>,
    pub kappa: S,
    /// `K(g) = sup D₊h / D₊g`.
    pub big_k: Option<S>,
    /// `k(g) = inf D₊h / D₊g`.
    pub small_k: Option<S>,
    /// Invariant mass at the truncation level.
    pub tail: Option<S>,
    /// True when `h ∘ d` is only a cost (it fails the triangle inequality).
    pub is_cost: bool,
}

impl<S: Scalar> MetricDesign<S> {
    /// `|h(x) − h(y)|` on the chain's path graph: the length metric with
    /// edge weights `D₊h`. `h` is a function of position, not of distance.
    pub fn length_metric(&self, g: &Graph) -> Result<Metric<S>> {
        pre(g.len() == self.h.len(), || format!("design has {} states, graph {}", self.h.len(), g.len()))?;
        Metric::length(g, |x, y| (self.h[x].clone() - self.h[y].clone()).abs())
    }
}

fn cumulative<S: Scalar>(inc: &[S]) -> Vec<S> {
    let mut h = vec![S::zero()];
    for v in inc {
        let next = h.last().expect("nonempty").clone() + v.clone();
        h.push(next);
    }
    h
}

/// Solve `−ℒh = g` by `D₊h(n−1) = Σ_{k≥n} μ(k)g(k) / (a_n μ(n))` and
/// certify curvature `1/K(g)` for the induced length metric.
pub fn poisson_metric<S: Scalar>(chain: &BirthDeathChain<S>, g: &[S]) -> Result<MetricDesign<S>> {
    let d = chain.depth();
    pre(g.len() == d + 1, || format!("g has {} values for {} states", g.len(), d + 1))?;
    if let Some(n) = (0..d).find(|&n| !(g[n + 1] > g[n])) {
        return Err(Error::Precondition(format!("g is not increasing at {n}")));
    }
    let mu = chain.invariant_measure();
    let mean: S = mu.iter().zip(g).map(|(m, v)| m.clone() * v.clone()).sum();
    if !approx_eq(&mean, &S::zero()) {
        return Err(Error::Precondition(format!("g must have zero mean under μ, got {mean}")));
    }
    let mut increments = vec![S::zero(); d];
    let mut tail_sum = S::zero();
    for n in (1..=d).rev() {
        tail_sum += mu[n].clone() * g[n].clone();
        increments[n - 1] = tail_sum.clone() / (chain.a(n) * mu[n].clone());
    }
    let ratios: Vec<S> = (1..=d).map(|n| increments[n - 1].clone() / (g[n].clone() - g[n - 1].clone())).collect();
    let big_k = max_all(ratios.iter().cloned()).expect("depth ≥ 1");
    let small_k = min_all(ratios).expect("depth ≥ 1");
    pre(big_k > S::zero(), || "Poisson increments are not positive".into())?;
    Ok(MetricDesign {
        h: cumulative(&increments),
        increments,
        kappa: S::one() / big_k.clone(),
        big_k: Some(big_k),
        small_k: Some(small_k),
        tail: Some(mu[d].clone()),
        is_cost: false,
    })
}

/// Contraction `W_{d_G}(P_t(x,·), P_t(y,·)) ≤ K e^{−δt} d_G(x,y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayBound<S> {
    pub prefactor: S,
    pub rate: S,
    /// `None` for the `k(g) > 0` branch, the supplied α otherwise.
    pub alpha: Option<S>,
    pub design: MetricDesign<S>,
}

/// Decay in `d_G` from the Poisson metric of `g(n) = n − m_μ`: with
/// `k(g) > 0` and no α, `K = K(g)/k(g)`, `δ = 1/K(g)`; with α ∈ (0, 1/M),
/// where `−M` bounds the `d_G` curvature, `K = (K(g)+α)/α` and
/// `δ = (1 − αM)/(K(g) + α)`.
pub fn w1_decay_certificate<S: Scalar>(chain: &BirthDeathChain<S>, alpha: Option<S>) -> Result<DecayBound<S>> {
    let mu = chain.invariant_measure();
    let mean: S = mu.iter().enumerate().map(|(n, m)| m.clone() * S::int(n as i64)).sum();
    let g: Vec<S> = (0..=chain.depth()).map(|n| S::int(n as i64) - mean.clone()).collect();
    let design = poisson_metric(chain, &g)?;
    let big_k = design.big_k.clone().expect("set by poisson_metric");
    let small_k = design.small_k.clone().expect("set by poisson_metric");
    match alpha {
        None => {
            if !(small_k > S::zero()) {
                return Err(Error::Precondition(
                    "k(g) = 0: supply alpha to use the bounded-below-curvature branch".into(),
                ));
            }
            Ok(DecayBound { prefactor: big_k.clone() / small_k, rate: S::one() / big_k, alpha: None, design })
        }
        Some(alpha) => {
            let m = S::max_of(S::zero(), -bd_curvature(chain));
            pre(alpha > S::zero(), || format!("alpha must be positive, got {alpha}"))?;
            pre(m.is_zero() || alpha.clone() * m.clone() < S::one(), || {
                format!("alpha must be below 1/M = 1/{m}, got {alpha}")
            })?;
            let rate = (S::one() - alpha.clone() * m) / (big_k.clone() + alpha.clone());
            let prefactor = (big_k + alpha.clone()) / alpha.clone();
            Ok(DecayBound { prefactor, rate, alpha: Some(alpha), design })
        }
    }
}

/// Reference chain on distances `{0, …, D}` killed at 0, with jumps of
/// size at most two: `ℒ_ref f(n) = Σ_j J_n(n+j)(f(n+j) − f(n))` for
/// `n ∈ [1, D]`. Jumps that would leave `[0, D]` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceChain<S> {
    /// Entry `n − 1` holds `J_n(n+j)` for `j = −2, −1, 0, 1, 2`; the `j = 0`
    /// slot is carried for tables that list it and has no effect.
    rates: Vec<[S; 5]>,
}

impl<S: Scalar> ReferenceChain<S> {
    pub fn new(rates: Vec<[S; 5]>) -> Result<Self> {
        pre(!rates.is_empty(), || "reference chain needs D ≥ 1".into())?;
        if rates.iter().flatten().any(|r| *r < S::zero()) {
            return Err(Error::InvalidGenerator("negative reference rate".into()));
        }
        Ok(ReferenceChain { rates })
    }

    /// Nearest-neighbour reference with `J_n(n−1) = down(n)`, `J_n(n+1) = up(n)`
    /// and no up-jump from `D`.
    pub fn birth_death(depth: usize, down: impl Fn(usize) -> S, up: impl Fn(usize) -> S) -> Result<Self> {
        Self::new(
            (1..=depth)
                .map(|n| {
                    let u = if n < depth { up(n) } else { S::zero() };
                    [S::zero(), down(n), S::zero(), u, S::zero()]
                })
                .collect(),
        )
    }

    pub fn depth(&self) -> usize {
        self.rates.len()
    }

    /// `J_n(n+j)` for `n ∈ [1, D]`, `j ∈ [−2, 2]`.
    pub fn rate(&self, n: usize, j: i32) -> S {
        self.rates[n - 1][(j + 2) as usize].clone()
    }

    /// `ℒ_ref f(n)` for `n = 1..=D` (entry `n − 1`); `f` is indexed `0..=D`.
    pub fn apply(&self, f: &[S]) -> Vec<S> {
        let d = self.depth() as i64;
        (1..=d)
            .map(|n| {
                [-2i32, -1, 1, 2]
                    .iter()
                    .filter(|&&j| (0..=d).contains(&(n + j as i64)))
                    .map(|&j| self.rate(n as usize, j) * (f[(n + j as i64) as usize].clone() - f[n as usize].clone()))
                    .sum()
            })
            .collect()
    }

    /// `min_n −ℒ_ref h(n) / h(n)` over `n ∈ [1, D]`.
    pub fn rayleigh_floor(&self, h: &[S]) -> S {
        let lh = self.apply(h);
        min_all((1..=self.depth()).map(|n| -lh[n - 1].clone() / h[n].clone())).expect("depth ≥ 1")
    }
}

/// Occupation functional bound with its truncation diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupationBound<S> {
    pub value: S,
    /// Share of `Σ g μ_ref` carried by the top state; large values mean the
    /// truncation is too short.
    pub tail_share: S,
}

/// `Σ_{m=1}^{n} Σ_{k≥m} g(k)μ_ref(k) / (μ_ref(m) J_m(m−1))` for a
/// nearest-neighbour reference, where `μ_ref(k) ∝ Π_{i<k} J_i(i+1)/J_{i+1}(i)`.
/// Equals the solution of `ℒ_ref h = −g`, `h(0) = 0` at `n`.
pub fn occupation_bound<S: Scalar>(reference: &ReferenceChain<S>, g: &[S], n: usize) -> Result<OccupationBound<S>> {
    let d = reference.depth();
    pre(g.len() == d + 1, || format!("g has {} values for depth {d}", g.len()))?;
    pre(n <= d, || format!("start distance {n} exceeds depth {d}"))?;
    if (1..=d).any(|k| reference.rate(k, -2) > S::zero()) {
        return Err(Error::Unsupported("occupation bound for references with jumps of size two".into()));
    }
    if let Some(k) = (1..=d).find(|&k| !(reference.rate(k, -1) > S::zero())) {
        return Err(Error::Precondition(format!("J_{k}({}) must be positive", k - 1)));
    }
    let mut mu = vec![S::zero(); d + 1];
    mu[1] = S::one();
    for k in 2..=d {
        mu[k] = mu[k - 1].clone() * reference.rate(k - 1, 1) / reference.rate(k, -1);
    }
    let mut tails = vec![S::zero(); d + 2];
    for k in (1..=d).rev() {
        tails[k] = tails[k + 1].clone() + g[k].clone() * mu[k].clone();
    }
    let value = (1..=n).map(|m| tails[m].clone() / (mu[m].clone() * reference.rate(m, -1))).sum();
    let tail_share = if tails[1].is_zero() { S::zero() } else { g[d].clone() * mu[d].clone() / tails[1].clone() };
    Ok(OccupationBound { value, tail_share })
}

/// Which closed-form reference case applies to constant rates `a`, `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceCase {
    /// `a > b`: exponential cost `h(n) = (a/b)^{n/2}` for `n > 0`.
    Drift,
    /// `a = b`: `h(k) = sin(kπ/2D)` with a reflecting top state.
    Balanced,
    /// `a < b`: explicit increments, exact.
    Repelling,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceDesign<S> {
    pub case: ReferenceCase,
    pub reference: ReferenceChain<S>,
    pub design: MetricDesign<S>,
}

/// Length of the tabulated profile when the drift case has no horizon.
pub const UNBOUNDED_PROFILE_LEN: usize = 32;

/// Closed-form metric for the reference chain `J_n(n−1) = a`, `J_n(n+1) = b`.
/// The drift case accepts `depth = None` (profile tabulated on
/// `0..=UNBOUNDED_PROFILE_LEN`); the other cases need a finite depth.
pub fn reference_case_solver<S: Scalar>(a: &S, b: &S, depth: Option<usize>) -> Result<ReferenceDesign<S>> {
    pre(*a > S::zero() && *b > S::zero(), || format!("rates must be positive, got a = {a}, b = {b}"))?;
    if a > b {
        let d = depth.unwrap_or(UNBOUNDED_PROFILE_LEN);
        pre(d >= 1, || "depth must be at least 1".into())?;
        let (sa, sb) = match (a.sqrt_exact(), b.sqrt_exact()) {
            (Some(sa), Some(sb)) => (sa, sb),
            _ => return Err(Error::RequiresFloat("irrational square root of a rate")),
        };
        let step = sa.clone() / sb.clone();
        let h: Vec<S> = (0..=d).map(|n| if n == 0 { S::zero() } else { step.powi(n as u32) }).collect();
        let gap = sa - sb;
        let reference = ReferenceChain::birth_death(d, |_| a.clone(), |_| b.clone())?;
        let increments = h.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        let design = MetricDesign {
            h,
            increments,
            kappa: gap.clone() * gap,
            big_k: None,
            small_k: None,
            tail: None,
            is_cost: true,
        };
        return Ok(ReferenceDesign { case: ReferenceCase::Drift, reference, design });
    }
    let d = depth.ok_or_else(|| Error::Precondition("a ≤ b needs a finite depth".into()))?;
    pre(d >= 1, || "depth must be at least 1".into())?;
    if a == b {
        let float = |v: f64| S::from_float(v).ok_or(Error::RequiresFloat("sine profile"));
        let arg = std::f64::consts::PI / (2.0 * d as f64);
        let h = (0..=d).map(|k| float((k as f64 * arg).sin())).collect::<Result<Vec<S>>>()?;
        let kappa = S::int(2) * a.clone() * float(1.0 - arg.cos())?;
        let two_a = S::int(2) * a.clone();
        let reference = ReferenceChain::birth_death(d, |n| if n == d { two_a.clone() } else { a.clone() }, |_| a.clone())?;
        let increments = h.windows(2).map(|w| w[1].clone() - w[0].clone()).collect();
        let design = MetricDesign { h, increments, kappa, big_k: None, small_k: None, tail: None, is_cost: false };
        return Ok(ReferenceDesign { case: ReferenceCase::Balanced, reference, design });
    }
    let r = b.clone() / a.clone();
    let increments: Vec<S> =
        (1..=d).map(|n| (r.powi((d - n + 1) as u32) - S::one()) / (b.clone() - a.clone())).collect();
    let h = cumulative(&increments);
    let kappa = S::one() / h[d].clone();
    let reference = ReferenceChain::birth_death(d, |_| a.clone(), |_| b.clone())?;
    let design = MetricDesign { h, increments, kappa, big_k: None, small_k: None, tail: None, is_cost: false };
    Ok(ReferenceDesign { case: ReferenceCase::Repelling, reference, design })
}

/// Spectral lower bound from degree and diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDiameterBound<S> {
    pub bound: S,
    /// `inf_x λ(x)`.
    pub lambda_star: S,
    /// `sup_x max_{y∼x} λ(x)/J(x,y)`.
    pub degree: S,
    pub diameter: u32,
}

/// `2λ_*(d−2) / (d[Σ_{k=1}^{D}(d−1)^k − D])`.
pub fn degree_diameter_bound<S: Scalar>(gen: &Generator<S>) -> Result<DegreeDiameterBound<S>> {
    pre(gen.len() >= 2, || "degree-diameter bound needs at least two states".into())?;
    let lambda_star = gen.min_total_rate();
    let degree = max_all((0..gen.len()).flat_map(|x| {
        let total = gen.total_rate(x);
        gen.jumps(x).map(move |(_, r)| total.clone() / r.clone())
    }))
    .expect("connected graph has edges");
    let two = S::int(2);
    if le(&degree, &two) {
        return Err(Error::Precondition(format!("degree parameter must exceed 2, got {degree}")));
    }
    let diameter = gen.graph().diameter();
    let dd = S::int(diameter as i64);
    let sum: S = (1..=diameter).map(|k| (degree.clone() - S::one()).powi(k)).sum();
    let bound = two * lambda_star.clone() * (degree.clone() - S::int(2)) / (degree.clone() * (sum - dd));
    Ok(DegreeDiameterBound { bound, lambda_star, degree, diameter })
}
