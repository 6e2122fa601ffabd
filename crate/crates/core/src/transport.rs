//! Optimal transport between equal-mass measures by the transportation
//! simplex (MODI pricing, Bland's rule), with Kantorovich potentials.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;
use crate::metric::Metric;
use crate::scalar::{approx_eq, le, Scalar};

/// Optimal coupling with its cost and the simplex duals.
#[derive(Debug, Clone)]
pub struct TransportPlan<S> {
    pub source: DiscreteMeasure<S>,
    pub target: DiscreteMeasure<S>,
    /// `(x, y, mass)` with positive mass, sorted by `(x, y)`.
    pub flows: Vec<(usize, usize, S)>,
    pub cost: S,
    /// Row duals, aligned with `source.atoms()`.
    pub row_duals: Vec<S>,
    /// Column duals, aligned with `target.atoms()`.
    pub col_duals: Vec<S>,
}

/// Kantorovich potential: `Σ f d(target − source) = cost` and `f` is
/// 1-Lipschitz for the cost metric.
#[derive(Debug, Clone, PartialEq)]
pub struct DualCertificate<S> {
    /// One value per vertex of the metric space.
    pub potential: Vec<S>,
}

impl<S: Scalar> TransportPlan<S> {
    pub fn mass(&self, x: usize, y: usize) -> S {
        self.flows
            .iter()
            .find(|(a, b, _)| *a == x && *b == y)
            .map(|(_, _, m)| m.clone())
            .unwrap_or_else(S::zero)
    }
}

/// Raw solution on index-based supply/demand vectors.
#[derive(Debug, Clone)]
pub struct SimplexSolution<S> {
    /// Row-major `m × n` flow.
    pub flow: Vec<S>,
    pub u: Vec<S>,
    pub v: Vec<S>,
    pub cost: S,
    pub pivots: usize,
}

/// Transportation simplex on dense supply `a` (length m) and demand `b`
/// (length n) with equal totals. `cost(i, j)` is read once per cell.
pub fn solve_transportation<S: Scalar>(
    a: &[S],
    b: &[S],
    cost: impl Fn(usize, usize) -> S,
) -> Result<SimplexSolution<S>> {
    let (m, n) = (a.len(), b.len());
    if m == 0 || n == 0 {
        return Ok(SimplexSolution { flow: vec![], u: vec![S::zero(); m], v: vec![S::zero(); n], cost: S::zero(), pivots: 0 });
    }
    let c: Vec<S> = (0..m * n).map(|k| cost(k / n, k % n)).collect();
    let cmax = c.iter().map(|v| v.abs()).reduce(S::max_of).unwrap_or_else(S::zero);
    let eps = S::pivot_eps() * (S::one() + cmax);

    let mut x = vec![S::zero(); m * n];
    let mut basic = vec![false; m * n];
    north_west_corner(a, b, &mut x, &mut basic);

    let max_pivots = 100 * m * n + 1000;
    let mut pivots = 0;
    loop {
        let (u, v) = potentials(m, n, &c, &basic);
        let entering = (0..m * n).find(|&k| {
            !basic[k] && c[k].clone() - u[k / n].clone() - v[k % n].clone() < -eps.clone()
        });
        let Some(enter) = entering else {
            let total = (0..m * n).filter(|&k| basic[k]).map(|k| x[k].clone() * c[k].clone()).sum();
            return Ok(SimplexSolution { flow: x, u, v, cost: total, pivots });
        };
        pivots += 1;
        if pivots > max_pivots {
            return Err(Error::NoConvergence(format!("transportation simplex exceeded {max_pivots} pivots")));
        }
        let cycle = pivot_cycle(m, n, &basic, enter);
        // cycle[0] is the entering cell (+); odd positions lose mass.
        let leave = cycle
            .iter()
            .skip(1)
            .step_by(2)
            .copied()
            .reduce(|best, k| if x[k] < x[best] || (x[k] == x[best] && k < best) { k } else { best })
            .expect("cycle has a donor cell");
        let theta = x[leave].clone();
        for (pos, &k) in cycle.iter().enumerate() {
            if pos % 2 == 0 {
                x[k] += theta.clone();
            } else {
                x[k] -= theta.clone();
                if x[k] < S::zero() {
                    x[k] = S::zero();
                }
            }
        }
        x[leave] = S::zero();
        basic[leave] = false;
        basic[enter] = true;
    }
}

fn north_west_corner<S: Scalar>(a: &[S], b: &[S], x: &mut [S], basic: &mut [bool]) {
    let (m, n) = (a.len(), b.len());
    let (mut ra, mut rb) = (a.to_vec(), b.to_vec());
    let (mut i, mut j) = (0, 0);
    loop {
        let k = i * n + j;
        basic[k] = true;
        if i == m - 1 && j == n - 1 {
            x[k] = S::max_of(S::zero(), S::min_of(ra[i].clone(), rb[j].clone()));
            break;
        }
        if i == m - 1 || (j < n - 1 && rb[j] < ra[i]) {
            let t = S::max_of(S::zero(), rb[j].clone());
            ra[i] -= t.clone();
            rb[j] = S::zero();
            x[k] = t;
            j += 1;
        } else {
            let t = S::max_of(S::zero(), ra[i].clone());
            rb[j] -= t.clone();
            ra[i] = S::zero();
            x[k] = t;
            i += 1;
        }
    }
}

/// Node ids: rows `0..m`, columns `m..m+n`.
fn tree_adjacency(m: usize, n: usize, basic: &[bool]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); m + n];
    for k in (0..m * n).filter(|&k| basic[k]) {
        let (i, j) = (k / n, k % n);
        adj[i].push(m + j);
        adj[m + j].push(i);
    }
    adj
}

fn potentials<S: Scalar>(m: usize, n: usize, c: &[S], basic: &[bool]) -> (Vec<S>, Vec<S>) {
    let adj = tree_adjacency(m, n, basic);
    let mut u: Vec<Option<S>> = vec![None; m];
    let mut v: Vec<Option<S>> = vec![None; n];
    u[0] = Some(S::zero());
    let mut queue = VecDeque::from([0usize]);
    while let Some(node) = queue.pop_front() {
        for &other in &adj[node] {
            if node < m {
                let j = other - m;
                if v[j].is_none() {
                    v[j] = Some(c[node * n + j].clone() - u[node].clone().expect("set"));
                    queue.push_back(other);
                }
            } else {
                let i = other;
                if u[i].is_none() {
                    u[i] = Some(c[i * n + node - m].clone() - v[node - m].clone().expect("set"));
                    queue.push_back(other);
                }
            }
        }
    }
    (
        u.into_iter().map(|p| p.expect("basis spans all rows")).collect(),
        v.into_iter().map(|p| p.expect("basis spans all columns")).collect(),
    )
}

/// Cells of the cycle created by adding `enter` to the basis tree, starting
/// with `enter` and alternating gain/loss.
fn pivot_cycle(m: usize, n: usize, basic: &[bool], enter: usize) -> Vec<usize> {
    let adj = tree_adjacency(m, n, basic);
    let (row, col) = (enter / n, enter % n);
    let mut parent = vec![usize::MAX; m + n];
    parent[row] = row;
    let mut queue = VecDeque::from([row]);
    while let Some(node) = queue.pop_front() {
        if node == m + col {
            break;
        }
        for &w in &adj[node] {
            if parent[w] == usize::MAX {
                parent[w] = node;
                queue.push_back(w);
            }
        }
    }
    let mut cells = vec![enter];
    let mut node = m + col;
    while node != row {
        let p = parent[node];
        let (i, j) = if node < m { (node, p - m) } else { (p, node - m) };
        cells.push(i * n + j);
        node = p;
    }
    cells
}

/// Bring two masses into agreement: exact in rational mode, proportional
/// rescaling of the target for float slack up to `1e-12·mass`.
fn reconcile<S: Scalar>(nu1: &DiscreteMeasure<S>, nu2: &DiscreteMeasure<S>) -> Result<DiscreteMeasure<S>> {
    let (m1, m2) = (nu1.mass(), nu2.mass());
    if m1 == m2 {
        return Ok(nu2.clone());
    }
    if S::EXACT || m2.is_zero() {
        return Err(Error::MassMismatch(m1.to_string(), m2.to_string()));
    }
    let tol = S::from_float(1e-12).expect("float mode") * S::max_of(m1.abs(), m2.abs());
    if (m1.clone() - m2.clone()).abs() > tol {
        return Err(Error::MassMismatch(m1.to_string(), m2.to_string()));
    }
    nu2.scaled(&(m1 / m2))
}

/// Optimal transport cost `T_c(ν₁, ν₂)` with plan and duals.
pub fn transport_cost<S: Scalar>(
    nu1: &DiscreteMeasure<S>,
    nu2: &DiscreteMeasure<S>,
    cost: &Metric<S>,
) -> Result<TransportPlan<S>> {
    let nu2 = reconcile(nu1, nu2)?;
    let src = nu1.atoms();
    let dst = nu2.atoms();
    if let Some(&(v, _)) = src.iter().chain(dst).find(|(v, _)| *v >= cost.len()) {
        return Err(Error::InvalidMeasure(format!("vertex {v} outside the metric space")));
    }
    let a: Vec<S> = src.iter().map(|(_, w)| w.clone()).collect();
    let b: Vec<S> = dst.iter().map(|(_, w)| w.clone()).collect();
    let sol = solve_transportation(&a, &b, |i, j| cost.get(src[i].0, dst[j].0))?;
    let n = dst.len();
    let flows = sol
        .flow
        .iter()
        .enumerate()
        .filter(|(_, f)| **f > S::zero())
        .map(|(k, f)| (src[k / n].0, dst[k % n].0, f.clone()))
        .collect();
    Ok(TransportPlan {
        source: nu1.clone(),
        target: nu2,
        flows,
        cost: sol.cost,
        row_duals: sol.u,
        col_duals: sol.v,
    })
}

/// 1-Lipschitz potential attaining the plan cost, by c-transform of the
/// row duals: `f(z) = min_i d(x_i, z) − u_i`, shifted to vanish at the
/// smallest vertex of the combined support.
pub fn dual_certificate<S: Scalar>(plan: &TransportPlan<S>, cost: &Metric<S>) -> Result<DualCertificate<S>> {
    if !cost.is_metric() {
        return Err(Error::Unsupported("dual potentials need a metric cost".into()));
    }
    let src = plan.source.atoms();
    let mut potential: Vec<S> = (0..cost.len())
        .map(|z| {
            src.iter()
                .zip(&plan.row_duals)
                .map(|((x, _), u)| cost.get(*x, z) - u.clone())
                .reduce(S::min_of)
                .unwrap_or_else(S::zero)
        })
        .collect();
    let anchor = plan.source.support().chain(plan.target.support()).min();
    if let Some(anchor) = anchor {
        let shift = potential[anchor].clone();
        for f in &mut potential {
            *f -= shift.clone();
        }
    }
    Ok(DualCertificate { potential })
}

/// `W₁` for stochastically ordered measures on a line: `Σ h (ν₂ − ν₁)`.
/// The order on the support is the one induced by `h`; `d_w` must equal
/// `|h(y) − h(x)|` there.
pub fn w1_ordered<S: Scalar>(
    nu1: &DiscreteMeasure<S>,
    nu2: &DiscreteMeasure<S>,
    h: &[S],
    d_w: &Metric<S>,
) -> Result<S> {
    if !approx_eq(&nu1.mass(), &nu2.mass()) {
        return Err(Error::MassMismatch(nu1.mass().to_string(), nu2.mass().to_string()));
    }
    let mut support: Vec<usize> = nu1.support().chain(nu2.support()).collect();
    support.sort_unstable();
    support.dedup();
    support.sort_by(|&a, &b| h[a].partial_cmp(&h[b]).expect("comparable"));
    if support.windows(2).any(|w| h[w[0]] == h[w[1]]) {
        return Err(Error::Precondition("h must separate the support".into()));
    }
    for (i, &x) in support.iter().enumerate() {
        for &y in &support[i + 1..] {
            if !approx_eq(&d_w.get(x, y), &(h[y].clone() - h[x].clone())) {
                return Err(Error::Precondition(format!("d_w({x},{y}) is not h({y}) − h({x})")));
            }
        }
    }
    let (mut upper1, mut upper2) = (S::zero(), S::zero());
    for &z in support.iter().rev() {
        upper1 += nu1.get(z);
        upper2 += nu2.get(z);
        if !le(&upper1, &upper2) {
            return Err(Error::Precondition(format!(
                "stochastic order fails at vertex {z}: upper mass {upper1} > {upper2}"
            )));
        }
    }
    Ok(nu2.atoms().iter().map(|(v, w)| w.clone() * h[*v].clone()).sum::<S>()
        - nu1.atoms().iter().map(|(v, w)| w.clone() * h[*v].clone()).sum::<S>())
}
