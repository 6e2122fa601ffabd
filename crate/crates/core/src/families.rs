//! Bundled graphs, generators, metrics and couplings used by the examples,
//! the CLI and the tests.

use crate::coupling::{independent_coupling, CouplingKernel, CouplingRates};
use crate::curvature::tensorize;
use crate::error::{pre, Error, Result};
use crate::graph::{Generator, Graph};
use crate::metric::Metric;
use crate::scalar::Scalar;

/// Simple random walk: `J(x,y) = 1/deg(x)` on every edge.
pub fn laplacian<S: Scalar>(g: Graph) -> Result<Generator<S>> {
    let deg: Vec<i64> = (0..g.len()).map(|x| g.degree(x) as i64).collect();
    Generator::from_fn(g, |x, _| S::ratio(1, deg[x]))
}

/// Two states swapping at unit rate.
pub fn two_point<S: Scalar>() -> Generator<S> {
    Generator::from_rates(["0", "1"], [(0, 1, S::one()), (1, 0, S::one())]).expect("valid two-point generator")
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Laplacian of the complete graph `K_n`.
pub fn complete<S: Scalar>(n: usize) -> Result<Generator<S>> {
    pre(n >= 2, || format!("complete graph needs n ≥ 2, got {n}"))?;
    let edges = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y)));
    laplacian(Graph::new(numbered(n), edges)?)
}

/// Laplacian of the star with hub `o` (index 0) and leaves `x1..xN`:
/// `J(o, x_k) = 1/N`, `J(x_k, o) = 1`.
pub fn star<S: Scalar>(leaves: usize) -> Result<Generator<S>> {
    pre(leaves >= 2, || format!("star needs at least two leaves, got {leaves}"))?;
    let names = std::iter::once("o".to_string()).chain((1..=leaves).map(|k| format!("x{k}")));
    laplacian(Graph::new(names, (1..=leaves).map(|k| (0, k)))?)
}

/// `d(x_i, x_j) = 2`, `d(o, x_j) = 2(N−1)/N`, under which the star
/// Laplacian has curvature 1.
pub fn star_metric<S: Scalar>(leaves: usize) -> Result<Metric<S>> {
    let n = leaves + 1;
    let spoke = S::ratio(2 * (leaves as i64 - 1), leaves as i64);
    let table = (0..n * n)
        .map(|k| match (k / n, k % n) {
            (x, y) if x == y => S::zero(),
            (0, _) | (_, 0) => spoke.clone(),
            _ => S::int(2),
        })
        .collect();
    Metric::custom(n, table)
}

/// Coupling of the star Laplacian that contracts [`star_metric`] at rate 1
/// pair by pair: two leaves meet at the hub, and a hub–leaf pair either
/// merges at the hub or lets the hub walker step out.
pub fn star_coupling<S: Scalar>(gen: &Generator<S>) -> Result<CouplingKernel<S>> {
    let n = gen.len();
    pre(n >= 3 && gen.graph().degree(0) == n - 1, || "expected a star with hub at index 0".into())?;
    let leaves = (n - 1) as i64;
    CouplingKernel::from_fn(n, |x, y| {
        Ok(match (x, y) {
            _ if x == y => CouplingRates::diagonal(gen, x),
            (0, leaf) => CouplingRates::new(
                (0, leaf),
                std::iter::once(((0, 0), S::one())).chain((1..n).map(|k| ((k, leaf), S::ratio(1, leaves)))),
            ),
            (leaf, 0) => CouplingRates::new(
                (leaf, 0),
                std::iter::once(((0, 0), S::one())).chain((1..n).map(|k| ((leaf, k), S::ratio(1, leaves)))),
            ),
            _ => CouplingRates::new((x, y), [((0, 0), S::one())]),
        })
    })
}

/// Laplacian of the cycle `0 ∼ 1 ∼ ⋯ ∼ n−1 ∼ 0`: rate ½ each way.
pub fn cycle<S: Scalar>(n: usize) -> Result<Generator<S>> {
    pre(n >= 3, || format!("cycle needs n ≥ 3, got {n}"))?;
    laplacian(Graph::new(numbered(n), (0..n).map(|x| (x, (x + 1) % n)))?)
}

/// `h(k) = sin(kπ/n)` on `0..=⌊n/2⌋`. Float only.
pub fn cycle_sine_profile<S: Scalar>(n: usize) -> Result<Vec<S>> {
    (0..=n / 2)
        .map(|k| S::from_float((k as f64 * std::f64::consts::PI / n as f64).sin()).ok_or(Error::RequiresFloat("sine profile")))
        .collect()
}

/// `1 − cos(2π/n)`. Float only.
pub fn cycle_gap<S: Scalar>(n: usize) -> Result<S> {
    S::from_float(1.0 - (2.0 * std::f64::consts::PI / n as f64).cos()).ok_or(Error::RequiresFloat("cycle gap"))
}

/// Laplacian of the hypercube `{0,1}^dim` with its Hamming metric.
pub fn cube<S: Scalar>(dim: usize) -> Result<(Generator<S>, Metric<S>)> {
    pre(dim >= 1, || "cube needs dimension ≥ 1".into())?;
    let rate = S::ratio(1, dim as i64);
    let edge = Generator::from_rates(["0", "1"], [(0, 1, rate.clone()), (1, 0, rate)])?;
    let d = Metric::graph(edge.graph());
    tensorize(&vec![(edge, d); dim])
}

/// Laplacian of the Petersen graph (outer 5-cycle, inner pentagram).
pub fn petersen<S: Scalar>() -> Result<Generator<S>> {
    let outer = (0..5).map(|i| (i, (i + 1) % 5));
    let spokes = (0..5).map(|i| (i, i + 5));
    let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
    laplacian(Graph::new(numbered(10), outer.chain(spokes).chain(inner))?)
}

/// Part of each vertex of a complete multipartite graph, parts laid out
/// consecutively.
fn parts(sizes: &[usize]) -> Vec<usize> {
    sizes.iter().enumerate().flat_map(|(p, &s)| std::iter::repeat(p).take(s)).collect()
}

fn multipartite_graph(sizes: &[usize]) -> Result<Graph> {
    let part = parts(sizes);
    let n = part.len();
    let names = (0..n).map(|v| {
        let first = part.iter().position(|&p| p == part[v]).expect("own part");
        format!("p{}v{}", part[v] + 1, v - first + 1)
    });
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).filter(|&(x, y)| part[x] != part[y]).collect();
    Graph::new(names, edges)
}

/// Laplacian of the complete bipartite graph `K_{n1,n2}`.
pub fn bipartite<S: Scalar>(n1: usize, n2: usize) -> Result<Generator<S>> {
    pre(n1 >= 2 && n2 >= 2, || format!("both sides need at least two vertices, got {n1}, {n2}"))?;
    laplacian(multipartite_graph(&[n1, n2])?)
}

/// `h₀ = (0, 1, n1 n2/(2 n1 n2 − n1 − n2))` on hop counts.
pub fn bipartite_profile<S: Scalar>(n1: usize, n2: usize) -> Vec<S> {
    let (a, b) = (n1 as i64, n2 as i64);
    vec![S::zero(), S::one(), S::ratio(a * b, 2 * a * b - a - b)]
}

/// Independent moves across the sides; two walkers on the same side jump
/// together to a common vertex of the other side.
pub fn bipartite_coupling<S: Scalar>(gen: &Generator<S>, n1: usize, n2: usize) -> Result<CouplingKernel<S>> {
    multipartite_coupling(gen, &[n1, n2])
}

/// Laplacian of the complete `k`-partite graph with parts of size `n`.
pub fn multipartite<S: Scalar>(k: usize, n: usize) -> Result<Generator<S>> {
    pre(k >= 2 && n >= 2, || format!("need k ≥ 2 parts of size ≥ 2, got k = {k}, n = {n}"))?;
    laplacian(multipartite_graph(&vec![n; k])?)
}

/// `h₀ = (0, 1, n/(2(n−1)))` on hop counts.
pub fn multipartite_profile<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(), S::one(), S::ratio(n as i64, 2 * (n as i64 - 1))]
}

/// Same part: both walkers jump together to any vertex outside the part.
/// Parts `i ≠ j`: `x` moves into `y`'s part alone, `y` moves into `x`'s
/// part alone, and both jump together into any third part. With two parts
/// this is the independent coupling across sides.
pub fn multipartite_coupling<S: Scalar>(gen: &Generator<S>, sizes: &[usize]) -> Result<CouplingKernel<S>> {
    let part = parts(sizes);
    let n = part.len();
    pre(n == gen.len(), || format!("part sizes cover {n} vertices, generator has {}", gen.len()))?;
    CouplingKernel::from_fn(n, |x, y| {
        if x == y {
            return Ok(CouplingRates::diagonal(gen, x));
        }
        if part[x] == part[y] {
            let moves = gen.jumps(x).map(|(z, r)| ((z, z), r.clone()));
            return Ok(CouplingRates::new((x, y), moves.collect::<Vec<_>>()));
        }
        if sizes.len() == 2 {
            return Ok(independent_coupling(gen, x, y));
        }
        let moves = gen.jumps(x).map(|(z, r)| {
            if part[z] == part[y] {
                ((z, y), r.clone())
            } else {
                ((z, z), r.clone())
            }
        });
        let back = gen.jumps(y).filter(|(z, _)| part[*z] == part[x]).map(|(z, r)| ((x, z), r.clone()));
        Ok(CouplingRates::new((x, y), moves.chain(back).collect::<Vec<_>>()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::validate_coupling;
    use crate::curvature::curvature_sweep;
    use crate::curvature::SweepScope;
    use crate::scalar::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn star_coupling_contracts_the_star_metric_at_unit_rate() {
        for leaves in 2..=6 {
            let gen = star::<Rational>(leaves).unwrap();
            let d = star_metric::<Rational>(leaves).unwrap();
            let k = star_coupling(&gen).unwrap();
            assert!(k.defects(&gen).is_none());
            for x in 0..gen.len() {
                for y in (0..gen.len()).filter(|&y| y != x) {
                    let drift = k.pair(x, y).drift(|a, b| d.get(a, b));
                    assert_eq!(drift, -d.get(x, y), "N = {leaves}, pair ({x},{y})");
                }
            }
        }
    }

    #[test]
    fn multipartite_couplings_are_valid() {
        let gen = bipartite::<Rational>(2, 3).unwrap();
        assert!(bipartite_coupling(&gen, 2, 3).unwrap().defects(&gen).is_none());
        let gen = multipartite::<Rational>(3, 2).unwrap();
        let k = multipartite_coupling(&gen, &[2, 2, 2]).unwrap();
        assert!(k.pairs().all(|c| validate_coupling(&gen, c)));
    }

    #[test]
    fn multipartite_profile_contracts_pairwise() {
        // The coupling turns ℒ^π (h₀∘d_G) into ℒ_ref h₀ ≤ −h₀.
        for (k, n) in [(3, 2), (3, 3), (4, 2)] {
            let gen = multipartite::<Rational>(k, n).unwrap();
            let h = multipartite_profile::<Rational>(n);
            let d = Metric::pullback_graph(gen.graph(), &h).unwrap();
            let c = multipartite_coupling(&gen, &vec![n; k]).unwrap();
            for cr in c.pairs().filter(|c| c.base.0 != c.base.1) {
                let (x, y) = cr.base;
                assert!(cr.drift(|a, b| d.get(a, b)) <= -d.get(x, y), "k = {k}, n = {n}, ({x},{y})");
            }
        }
    }

    #[test]
    fn cube_is_a_product_of_edges() {
        let (gen, d) = cube::<Rational>(3).unwrap();
        assert_eq!(gen.len(), 8);
        assert_eq!(gen.total_rate(0), q(1, 1));
        assert_eq!(d.get(0, 7), q(3, 1));
        let report = curvature_sweep(&gen, &d, SweepScope::Auto).unwrap();
        assert_eq!(report.kappa, q(2, 3));
    }

    #[test]
    fn petersen_is_cubic_with_diameter_two() {
        let gen = petersen::<Rational>().unwrap();
        assert!((0..10).all(|x| gen.graph().degree(x) == 3));
        assert_eq!(gen.graph().diameter(), 2);
    }

    #[test]
    fn bipartite_profile_values() {
        assert_eq!(bipartite_profile::<Rational>(2, 2)[2], q(1, 1));
        assert_eq!(bipartite_profile::<Rational>(3, 4)[2], q(12, 17));
        assert_eq!(multipartite_profile::<Rational>(3)[2], q(3, 4));
    }
}
