//! End-to-end acceptance run: one PASS/FAIL line per criterion, then a
//! nonzero exit if any criterion failed.

use std::f64::consts::PI;
use std::time::Instant;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use markov_ricci::birth_death::{
    bd_curvature, degree_diameter_bound, poisson_metric, reference_case_solver, w1_decay_certificate, BirthDeathChain,
    ReferenceCase,
};
use markov_ricci::certificate::{Certificate, CertificateMetric, Claim};
use markov_ricci::comparison::{comparison_certificate, cycle_reflection_coupling, envelope, zhong_yang_activity, zhong_yang_bound};
use markov_ricci::curvature::{
    alpha_ricci, curvature_lower_bound, curvature_sweep, myers_bound, order_preserving_curvature, pair_curvature,
    SweepScope,
};
use markov_ricci::families;
use markov_ricci::glauber::{
    block_curvature, dobrushin_coefficients, gibbs_generator, glauber_certificate, queue_curvature, queue_model,
    spin_curvature, spin_model,
};
use markov_ricci::lyapunov::{fitted_constant, geometric_instance, lyapunov_kappa, minorization_pseudometric, LyapunovData};
use markov_ricci::transport::transport_cost;
use markov_ricci::verifier::{audit_certificate, eigen_vs_certificate, spectral_gap};
use markov_ricci::{DiscreteMeasure, Generator, Graph, Metric, Rational, Scalar};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn ok<T>(r: markov_ricci::Result<T>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

/// Audit and eigenvalue check of one certificate.
fn gate<S: Scalar>(gen: &Generator<S>, cert: &Certificate<S>) -> Result<f64, String> {
    let audit = ok(audit_certificate(gen, cert, None), &cert.label)?;
    ensure!(audit.pass, "`{}` audit fails, max ratio {}", cert.label, audit.max_ratio);
    ok(eigen_vs_certificate(gen, std::slice::from_ref(cert)), &cert.label)?;
    Ok(audit.max_ratio)
}

/// Random connected graph: a random spanning tree plus extra edges.
fn random_graph(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        edges.push((parent.min(order[k]), parent.max(order[k])));
    }
    for x in 0..n {
        for y in x + 1..n {
            if !edges.contains(&(x, y)) && rng.gen_bool(extra) {
                edges.push((x, y));
            }
        }
    }
    Graph::new((0..n).map(|i| i.to_string()), edges).expect("connected by construction")
}

fn c1_complete() -> Outcome {
    for n in 2..=8usize {
        let gen = ok(families::complete::<Rational>(n), "K_N")?;
        let d = Metric::graph(gen.graph());
        let expected = q(n as i64, n as i64 - 1);
        for x in 0..n {
            for y in x + 1..n {
                let k = ok(pair_curvature(&gen, &d, x, y), "pair")?;
                ensure!(k == expected, "K_{n} pair ({x},{y}): {k} ≠ {expected}");
            }
        }
    }
    Ok("every pair of K_2..K_8 has curvature N/(N−1)".into())
}

fn c2_star() -> Outcome {
    for leaves in 2..=8usize {
        let gen = ok(families::star::<Rational>(leaves), "star")?;
        let graph = ok(curvature_lower_bound(&gen, &Metric::graph(gen.graph())), "d_G sweep")?;
        ensure!(graph.kappa == q(2, leaves as i64), "N = {leaves}: κ over d_G is {}", graph.kappa);
        let custom = ok(families::star_metric(leaves), "metric")?;
        let sweep = ok(curvature_lower_bound(&gen, &custom), "custom sweep")?;
        ensure!(sweep.kappa >= q(1, 1), "N = {leaves}: custom κ {} < 1", sweep.kappa);
        let gap = ok(spectral_gap(&gen), "gap")?;
        ensure!((gap - 1.0).abs() < 1e-9, "N = {leaves}: gap {gap}");
    }
    Ok("κ_dG = 2/N, custom κ ≥ 1, gap 1 for N = 2..8".into())
}

fn c3_cycle() -> Outcome {
    let mut worst = 0.0f64;
    for n in 3..=12usize {
        let gen = ok(families::cycle::<f64>(n), "cycle")?;
        let lambda = 1.0 - (2.0 * PI / n as f64).cos();
        let gap = ok(spectral_gap(&gen), "gap")?;
        ensure!((gap - lambda).abs() < 1e-9, "n = {n}: gap {gap} vs {lambda}");
        let h: Vec<f64> = (0..=n / 2).map(|k| (k as f64 * PI / n as f64).sin()).collect();
        let couplings = ok(cycle_reflection_coupling(&gen), "coupling")?;
        let data = ok(envelope(&gen, &couplings), "envelope")?;
        let cert = ok(comparison_certificate(&data, &h, &lambda), &format!("n = {n}"))?;
        ensure!(cert.claim == Claim::Ricci && cert.prefactor == 1.0, "n = {n}: not a K = 1 Ricci certificate");
        worst = worst.max(gate(&gen, &cert)?);
    }
    Ok(format!("gap 1−cos(2π/n) and sine certificate audited for n = 3..12, max ratio {worst:.12}"))
}

fn c4_birth_death() -> Outcome {
    for depth in [5usize, 12, 30] {
        for lambda in [q(1, 2), q(1, 1), q(7, 3)] {
            let c = ok(BirthDeathChain::mm_infinity(lambda.clone(), depth), "M/M/∞")?;
            ensure!(bd_curvature(&c) == q(1, 1), "M/M/∞ λ = {lambda}: {}", bd_curvature(&c));
        }
        for p in [q(1, 4), q(1, 2), q(5, 6)] {
            let c = ok(BirthDeathChain::linear_growth(p.clone(), depth), "geometric II")?;
            ensure!(bd_curvature(&c) == q(1, 1) - p.clone(), "geometric II p = {p}: {}", bd_curvature(&c));
        }
        for (a, b) in [(q(2, 1), q(1, 1)), (q(1, 1), q(1, 3))] {
            let c = ok(BirthDeathChain::constant(a.clone(), b.clone(), depth), "geometric I")?;
            ensure!(bd_curvature(&c).is_zero(), "geometric I a = {a}, b = {b}: {}", bd_curvature(&c));
        }
    }
    // Rational inputs with a rational square root of a/b: exact.
    for (a, b) in [(4i64, 1i64), (9, 4), (25, 1), (9, 1)] {
        let chain = ok(BirthDeathChain::constant(q(a, 1), q(b, 1), 15), "geometric I")?;
        let ratio = ok(q(a, b).sqrt_exact().ok_or(markov_ricci::Error::RequiresFloat("root")), "root")?;
        let h: Vec<Rational> = (0..=15).map(|n| ratio.powi(n)).collect();
        let k = ok(order_preserving_curvature(&chain.to_generator(), &h), "order-preserving")?;
        let sa = q(a, 1).sqrt_exact().unwrap();
        let sb = q(b, 1).sqrt_exact().unwrap();
        let expected = (sa.clone() - sb.clone()) * (sa - sb);
        ensure!(k == expected, "a = {a}, b = {b}: {k} ≠ {expected}");
    }
    for (a, b) in [(3.0f64, 1.0f64), (2.0, 0.7)] {
        let chain = ok(BirthDeathChain::constant(a, b, 15), "geometric I")?;
        let h: Vec<f64> = (0..=15).map(|n| (a / b).powf(n as f64 / 2.0)).collect();
        let k = ok(order_preserving_curvature(&chain.to_generator(), &h), "order-preserving")?;
        let expected = (a.sqrt() - b.sqrt()).powi(2);
        ensure!((k - expected).abs() < 1e-12, "a = {a}, b = {b}: {k} vs {expected}");
    }
    Ok("M/M/∞ → 1, geometric II → 1−p, geometric I → 0, order-preserving → (√a−√b)²".into())
}

fn c5_binomial() -> Outcome {
    for n in 1..=12usize {
        for p in [q(1, 4), q(1, 2), q(3, 4)] {
            let chain = ok(BirthDeathChain::binomial(n, p.clone()), "binomial")?;
            let gen = chain.to_generator();
            let k = ok(curvature_lower_bound(&gen, &Metric::graph(gen.graph())), "sweep")?.kappa;
            ensure!(k == q(1, 1), "n = {n}, p = {p}: κ = {k}");
            let gap = ok(spectral_gap(&gen), "gap")?;
            ensure!((gap - 1.0).abs() < 1e-9, "n = {n}, p = {p}: gap {gap}");
        }
    }
    Ok("κ = 1 and gap 1 for n ≤ 12, p ∈ {1/4, 1/2, 3/4}".into())
}

fn h0_certificate(gen: &Generator<Rational>, h: &[Rational]) -> Result<Certificate<Rational>, String> {
    let d = ok(Metric::pullback_graph(gen.graph(), h), "h₀ metric")?;
    let k = ok(curvature_sweep(gen, &d, SweepScope::AllPairs), "sweep")?.kappa;
    ensure!(k >= q(1, 1), "LP κ {k} < 1");
    Ok(Certificate::new("h0", Claim::Ricci, CertificateMetric::Table(d), k))
}

fn c6_multipartite() -> Outcome {
    let mut cases = 0;
    for n1 in 2..=4usize {
        for n2 in 2..=4usize {
            let gen = ok(families::bipartite::<Rational>(n1, n2), "bipartite")?;
            let cert = h0_certificate(&gen, &families::bipartite_profile(n1, n2)).map_err(|e| format!("K_{n1},{n2}: {e}"))?;
            gate(&gen, &cert).map_err(|e| format!("K_{n1},{n2}: {e}"))?;
            let gap = ok(spectral_gap(&gen), "gap")?;
            ensure!((gap - 1.0).abs() < 1e-9, "K_{n1},{n2}: gap {gap}");
            cases += 1;
        }
    }
    for k in 2..=4usize {
        for n in 2..=3usize {
            let gen = ok(families::multipartite::<Rational>(k, n), "k-partite")?;
            let cert = h0_certificate(&gen, &families::multipartite_profile(n)).map_err(|e| format!("k = {k}, N = {n}: {e}"))?;
            gate(&gen, &cert).map_err(|e| format!("k = {k}, N = {n}: {e}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} multipartite graphs: h₀ κ ≥ 1, audits pass, bipartite gap 1"))
}

fn c7_reference_cases() -> Outcome {
    let rates = [1i64, 2, 3, 5];
    for d in 1..=8usize {
        for &a in &rates {
            let design = ok(reference_case_solver(&(a as f64), &(a as f64), Some(d)), "balanced")?;
            ensure!(design.case == ReferenceCase::Balanced, "a = b = {a}: wrong case");
            let expected = 2.0 * a as f64 * (1.0 - (PI / (2.0 * d as f64)).cos());
            ensure!((design.design.kappa - expected).abs() < 1e-12, "a = {a}, D = {d}: {} vs {expected}", design.design.kappa);
            for &b in rates.iter().filter(|&&b| b > a) {
                let (ar, br) = (q(a, 1), q(b, 1));
                let design = ok(reference_case_solver(&ar, &br, Some(d)), "repelling")?;
                ensure!(design.case == ReferenceCase::Repelling, "a = {a} < b = {b}: wrong case");
                let r = br.clone() / ar.clone();
                let denom = br.clone() * (r.powi(d as u32) - q(1, 1)) - q(d as i64, 1) * (br.clone() - ar.clone());
                let formula = (br.clone() - ar.clone()) * (br.clone() - ar.clone()) / denom;
                let kappa = design.design.kappa.clone();
                ensure!(kappa == formula, "a = {a}, b = {b}, D = {d}: {kappa} ≠ {formula}");
                let order = (br.clone() - ar.clone()) / (r.powi(d as u32) - q(1, 1));
                ensure!(kappa <= order, "a = {a}, b = {b}, D = {d}: {kappa} above the order bound {order}");
            }
        }
    }
    Ok("balanced κ = 2a(1−cos(π/2D)), repelling κ exact and below (b−a)/((b/a)^D−1)".into())
}

fn c8_degree_diameter() -> Outcome {
    let check = |gen: &Generator<f64>, what: &str| -> Result<(), String> {
        let bound = ok(degree_diameter_bound(gen), what)?;
        let gap = ok(spectral_gap(gen), what)?;
        ensure!(bound.bound <= gap + 1e-9, "{what}: bound {} above Re λ₁ = {gap}", bound.bound);
        Ok(())
    };
    check(&ok(families::cube::<f64>(3), "cube")?.0, "3-cube")?;
    check(&ok(families::petersen::<f64>(), "Petersen")?, "Petersen")?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    while done < 20 {
        let n = rng.gen_range(4..=9);
        let g = random_graph(&mut rng, n, 0.35);
        if g.diameter() < 2 {
            continue;
        }
        let rates: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0.2..3.0)).collect()).collect();
        let gen = ok(Generator::from_fn(g, |x, y| rates[x][y]), "random generator")?;
        if degree_diameter_bound(&gen).is_err() {
            continue;
        }
        check(&gen, &format!("random graph #{done}"))?;
        done += 1;
    }
    Ok("bound ≤ Re λ₁ on the 3-cube, Petersen and 20 random non-reversible generators".into())
}

fn c9_myers() -> Outcome {
    let mut examples: Vec<(String, Generator<Rational>)> = Vec::new();
    for n in 2..=6 {
        examples.push((format!("K_{n}"), ok(families::complete(n), "K_N")?));
    }
    for dim in 1..=3 {
        examples.push((format!("Q_{dim}"), ok(families::cube(dim), "cube")?.0));
    }
    for n in [3usize, 6, 9] {
        examples.push((format!("binomial {n}"), ok(BirthDeathChain::binomial(n, q(1, 3)), "binomial")?.to_generator()));
    }
    examples.push(("bipartite 2,3".into(), ok(families::bipartite(2, 3), "bipartite")?));
    let mut checked = 0;
    for (name, gen) in &examples {
        let d = Metric::graph(gen.graph());
        let kappa = ok(curvature_lower_bound(gen, &d), name)?.kappa;
        if !(kappa > Rational::zero()) {
            continue;
        }
        let report = ok(myers_bound(gen, &d, &kappa), name)?;
        ensure!(report.holds(), "{name}: Myers bound fails at {:?}", report.violations.first());
        checked += 1;
    }
    let two = families::two_point::<Rational>();
    let d = Metric::graph(two.graph());
    let kappa = ok(curvature_lower_bound(&two, &d), "two-point")?.kappa;
    let report = ok(myers_bound(&two, &d, &kappa), "two-point")?;
    ensure!(report.diameter_bound == q(1, 1) && report.graph_diameter == 1, "two-point: 2M/κ = {}", report.diameter_bound);
    Ok(format!("pairwise bound on {checked} certified examples, two-point D_G = 2M/κ = 1"))
}

fn c10_alpha_ricci() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut pairs = 0;
    for _ in 0..20 {
        let n = rng.gen_range(2..=6);
        let g = random_graph(&mut rng, n, 0.4);
        // Random integer weights normalised to total rate 1 at every state.
        let w: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(1..=5)).collect()).collect();
        let totals: Vec<i64> = (0..n).map(|x| g.neighbors(x).iter().map(|&y| w[x][y]).sum()).collect();
        let gen = ok(Generator::from_fn(g, |x, y| q(w[x][y], totals[x])), "unit kernel")?;
        let d = Metric::graph(gen.graph());
        for x in 0..n {
            for y in x + 1..n {
                let a = ok(alpha_ricci(&gen, &d, &q(1, 1), x, y), "α-Ricci")?;
                let p = ok(pair_curvature(&gen, &d, x, y), "pair")?;
                ensure!(a == p, "pair ({x},{y}) on {n} vertices: α-Ricci {a} ≠ {p}");
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs over 20 unit-rate kernels agree exactly"))
}

/// Least cost over every basic feasible solution: each choice of m+n−1
/// cells spanning the bipartite row/column graph has a unique flow, found
/// by repeatedly fixing a row or column with a single free cell.
fn brute_force(a: &[Rational], b: &[Rational], cost: &[Vec<Rational>]) -> Rational {
    let (m, n) = (a.len(), b.len());
    let cells: Vec<(usize, usize)> = (0..m).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let k = m + n - 1;
    let mut best: Option<Rational> = None;
    let mut pick = Vec::with_capacity(k);
    fn subsets(start: usize, k: usize, total: usize, pick: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if pick.len() == k {
            visit(pick);
            return;
        }
        for c in start..total {
            if total - c < k - pick.len() {
                break;
            }
            pick.push(c);
            subsets(c + 1, k, total, pick, visit);
            pick.pop();
        }
    }
    subsets(0, k, cells.len(), &mut pick, &mut |chosen| {
        let mut row = a.to_vec();
        let mut col = b.to_vec();
        let mut free: Vec<(usize, usize)> = chosen.iter().map(|&c| cells[c]).collect();
        let mut flow = Vec::with_capacity(k);
        while !free.is_empty() {
            let leaf = (0..m)
                .find(|&i| free.iter().filter(|c| c.0 == i).count() == 1)
                .map(|i| (free.iter().position(|c| c.0 == i).unwrap(), true))
                .or_else(|| {
                    (0..n)
                        .find(|&j| free.iter().filter(|c| c.1 == j).count() == 1)
                        .map(|j| (free.iter().position(|c| c.1 == j).unwrap(), false))
                });
            let Some((pos, by_row)) = leaf else { return };
            let (i, j) = free.swap_remove(pos);
            let x = if by_row { row[i].clone() } else { col[j].clone() };
            row[i] -= x.clone();
            col[j] -= x.clone();
            flow.push((i, j, x));
        }
        // A cycle among the cells leaves a row or column unmatched.
        if row.iter().chain(&col).any(|v| !v.is_zero()) || flow.iter().any(|(_, _, x)| *x < Rational::zero()) {
            return;
        }
        let total: Rational = flow.iter().map(|(i, j, x)| cost[*i][*j].clone() * x.clone()).sum();
        if best.as_ref().map_or(true, |b| total < *b) {
            best = Some(total);
        }
    });
    best.expect("the north-west corner basis is feasible")
}

fn c11_transport() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for inst in 0..200 {
        let space = rng.gen_range(2..=6usize);
        let pts: Vec<(i64, i64)> = (0..space).map(|_| (rng.gen_range(0..5), rng.gen_range(0..5))).collect();
        // Taxicab distance on distinct points, plus 1 off the diagonal so
        // coincident points stay apart.
        let table: Vec<Rational> = (0..space * space)
            .map(|k| {
                let (x, y) = (k / space, k % space);
                if x == y {
                    Rational::zero()
                } else {
                    q((pts[x].0 - pts[y].0).abs() + (pts[x].1 - pts[y].1).abs() + 1, 1)
                }
            })
            .collect();
        let d = ok(Metric::custom(space, table.clone()), "metric")?;
        let support = |rng: &mut ChaCha8Rng| {
            let mut v: Vec<usize> = (0..space).collect();
            v.shuffle(rng);
            v.truncate(rng.gen_range(1..=space.min(4)));
            v.sort_unstable();
            v
        };
        let (s1, s2) = (support(&mut rng), support(&mut rng));
        let mut w1: Vec<Rational> = s1.iter().map(|_| q(rng.gen_range(1..=6), 1)).collect();
        let w2: Vec<Rational> = s2.iter().map(|_| q(rng.gen_range(1..=6), 1)).collect();
        let (t1, t2): (Rational, Rational) = (w1.iter().cloned().sum(), w2.iter().cloned().sum());
        for w in &mut w1 {
            *w = w.clone() * t2.clone() / t1.clone();
        }
        let nu1 = ok(DiscreteMeasure::new(s1.iter().copied().zip(w1.clone())), "ν₁")?;
        let nu2 = ok(DiscreteMeasure::new(s2.iter().copied().zip(w2.clone())), "ν₂")?;
        let simplex = ok(transport_cost(&nu1, &nu2, &d), "simplex")?.cost;
        let cost: Vec<Vec<Rational>> = s1.iter().map(|&x| s2.iter().map(|&y| table[x * space + y].clone()).collect()).collect();
        let brute = brute_force(&w1, &w2, &cost);
        ensure!(simplex == brute, "instance {inst}: simplex {simplex} ≠ enumeration {brute}");
    }
    Ok("200 instances: simplex cost equals the best basic feasible solution".into())
}

fn lyapunov_bound(depth: usize) -> Result<(Generator<Rational>, markov_ricci::lyapunov::LyapunovBound<Rational>), String> {
    let (chain, v, r, b, k) = ok(geometric_instance::<Rational>(depth), "instance")?;
    let gen = chain.to_generator();
    let (d_pi, _) = ok(minorization_pseudometric(&gen, &k), "minorization")?;
    let c = fitted_constant(&d_pi, &v);
    let data = ok(LyapunovData::new(v, r, b, k, d_pi, c, None), "data")?;
    let bound = ok(lyapunov_kappa(&gen, &data), "κ")?;
    Ok((gen, bound))
}

fn c12_lyapunov() -> Outcome {
    let mut last = String::new();
    for depth in 3..=10usize {
        let (gen, bound) = lyapunov_bound(depth)?;
        ensure!(bound.kappa > Rational::zero(), "depth {depth}: κ = {}", bound.kappa);
        let lp = ok(curvature_sweep(&gen, &bound.metric, SweepScope::AllPairs), "sweep")?.kappa;
        ensure!(lp >= bound.kappa, "depth {depth}: LP {lp} below κ = {}", bound.kappa);
        gate(&gen, &bound.certificate).map_err(|e| format!("depth {depth}: {e}"))?;
        last = format!("κ = {}, LP {}", bound.kappa, lp);
    }
    Ok(format!("depths 3..10 certified and audited (depth 10: {last})"))
}

fn c13_glauber() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for inst in 0..12 {
        let n = rng.gen_range(2..=3usize);
        let lambda = rng.gen_range(0.3..1.5);
        let mut betas = vec![vec![0.0; n]; n];
        for (i, row) in betas.iter_mut().enumerate() {
            for (j, b) in row.iter_mut().enumerate() {
                if i != j {
                    *b = rng.gen_range(0.0..0.8);
                }
            }
        }
        let trunc = if n == 2 { 5 } else { 3 };
        let (ps, cf) = ok(queue_model(lambda, &betas, trunc), "queue")?;
        let c = ok(dobrushin_coefficients(&ps, &cf), "C")?;
        for i in 0..n {
            for j in (0..n).filter(|&j| j != i) {
                let expected = lambda * (1.0 - (-betas[i][j]).exp());
                ensure!((c[i][j] - expected).abs() < 1e-12, "queue #{inst}: C[{i}][{j}] = {} vs {expected}", c[i][j]);
            }
        }
        let formula = ok(queue_curvature(lambda, &betas), "formula")?;
        let gen = ok(gibbs_generator(&ps, &cf), "generator")?;
        let lp = ok(curvature_sweep(&gen, &ok(ps.metric(), "metric")?, SweepScope::Auto), "sweep")?.kappa;
        ensure!(lp >= formula.kappa - 1e-9, "queue #{inst}: LP {lp} below the formula {}", formula.kappa);
    }
    // Weak and strong ferromagnets, so that both signs of the criterion occur.
    let mut signs = [0usize; 2];
    for inst in 0..16 {
        let n = if inst < 4 { 2 } else { 3 };
        let scale = if inst % 2 == 0 { 0.3 } else { 1.2 };
        let mut betas = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let b = -rng.gen_range(0.05..1.0) * scale;
                betas[i][j] = b;
                betas[j][i] = b;
            }
        }
        let formula = ok(spin_curvature(&betas), "formula")?;
        let (ps, cf) = ok(spin_model(&betas), "spin")?;
        let gen = ok(gibbs_generator(&ps, &cf), "generator")?;
        let lp = ok(curvature_sweep(&gen, &ok(ps.metric(), "metric")?, SweepScope::AllPairs), "sweep")?.kappa;
        ensure!((lp - formula).abs() < 1e-9, "spin #{inst}: LP {lp} vs formula {formula}");
        ensure!((lp > 1e-12) == (formula > 1e-12), "spin #{inst}: sign mismatch, LP {lp}, formula {formula}");
        signs[usize::from(formula > 0.0)] += 1;
    }
    ensure!(signs[0] > 0 && signs[1] > 0, "only one side of the criterion was exercised: {signs:?}");
    Ok(format!("queue C and κ on 12 instances; spin LP = formula with {} positive and {} nonpositive cases", signs[1], signs[0]))
}

fn c14_global_gate() -> Outcome {
    let mut count = 0usize;
    let mut worst = 0.0f64;
    let mut record = |r: Result<f64, String>| -> Result<(), String> {
        worst = worst.max(r?);
        count += 1;
        Ok(())
    };
    // Comparison and sine-metric certificates on cycles.
    for n in 3..=9usize {
        let gen = ok(families::cycle::<f64>(n), "cycle")?;
        let couplings = ok(cycle_reflection_coupling(&gen), "coupling")?;
        let data = ok(envelope(&gen, &couplings), "envelope")?;
        let h: Vec<f64> = (0..=n / 2).map(|k| (k as f64 * PI / n as f64).sin()).collect();
        let lambda = 1.0 - (2.0 * PI / n as f64).cos();
        record(gate(&gen, &ok(comparison_certificate(&data, &h, &lambda), "comparison")?))?;
        let a = ok(zhong_yang_activity(&gen, &couplings), "activity")?;
        record(gate(&gen, &ok(zhong_yang_bound(&gen, &a, &couplings), &format!("sine metric n = {n}"))?))?;
    }
    // Birth-death certificates: graph metric, Poisson metric, W₁ decay.
    let chains: Vec<(&str, BirthDeathChain<Rational>)> = vec![
        ("M/M/∞", ok(BirthDeathChain::mm_infinity(q(1, 1), 12), "M/M/∞")?),
        ("binomial", ok(BirthDeathChain::binomial(8, q(1, 3)), "binomial")?),
        ("geometric I", ok(BirthDeathChain::constant(q(1, 1), q(1, 2), 12), "geometric I")?),
        ("geometric II", ok(BirthDeathChain::linear_growth(q(1, 2), 12), "geometric II")?),
    ];
    for (name, chain) in &chains {
        let gen = chain.to_generator();
        let kappa = bd_curvature(chain);
        if kappa > Rational::zero() {
            let profile = (0..=chain.depth()).map(|k| q(k as i64, 1)).collect();
            record(gate(&gen, &Certificate::new("graph-metric", Claim::Ricci, CertificateMetric::Profile(profile), kappa)))?;
        }
        let mu = chain.invariant_measure();
        let mean: Rational = mu.iter().enumerate().map(|(k, m)| m.clone() * q(k as i64, 1)).sum();
        let g: Vec<Rational> = (0..=chain.depth()).map(|k| q(k as i64, 1) - mean.clone()).collect();
        let design = ok(poisson_metric(chain, &g), name)?;
        let d = ok(design.length_metric(gen.graph()), name)?;
        record(gate(&gen, &Certificate::new("poisson-metric", Claim::Ricci, CertificateMetric::Table(d), design.kappa)))?;
        let decay = match w1_decay_certificate(chain, None) {
            Ok(decay) => decay,
            Err(_) => ok(w1_decay_certificate(chain, Some(q(1, 1))), name)?,
        };
        let cert = Certificate::new("w1-decay", Claim::W1Decay, CertificateMetric::Profile((0..=chain.depth()).map(|k| q(k as i64, 1)).collect()), decay.rate)
            .with_prefactor(decay.prefactor);
        record(gate(&gen, &cert))?;
    }
    // Custom metrics on the star and the multipartite graphs.
    for leaves in 2..=6usize {
        let gen = ok(families::star::<Rational>(leaves), "star")?;
        let d = ok(families::star_metric(leaves), "metric")?;
        let k = ok(curvature_lower_bound(&gen, &d), "sweep")?.kappa;
        record(gate(&gen, &Certificate::new("star", Claim::Ricci, CertificateMetric::Table(d), k)))?;
    }
    for (k, n) in [(2usize, 3usize), (3, 2), (4, 2)] {
        let gen = ok(families::multipartite::<Rational>(k, n), "k-partite")?;
        record(gate(&gen, &h0_certificate(&gen, &families::multipartite_profile(n))?))?;
    }
    // Drift-condition and block-dynamics certificates.
    for depth in [4usize, 8] {
        let (gen, bound) = lyapunov_bound(depth)?;
        record(gate(&gen, &bound.certificate))?;
    }
    let spin = vec![vec![0.0, -0.2, -0.1], vec![-0.2, 0.0, -0.15], vec![-0.1, -0.15, 0.0]];
    let (ps, cf) = ok(spin_model(&spin), "spin")?;
    let gen = ok(gibbs_generator(&ps, &cf), "spin generator")?;
    record(gate(&gen, &ok(glauber_certificate(&ps, &cf), "spin certificate")?))?;
    let b = 2f64.ln();
    let (ps, cf) = ok(queue_model(1.0, &[vec![0.0, b], vec![b, 0.0]], 4), "queue")?;
    let gen = ok(gibbs_generator(&ps, &cf), "queue generator")?;
    ensure!(ok(block_curvature(&ps, &cf), "block LP")? > 0.0, "queue block curvature is not positive");
    record(gate(&gen, &ok(glauber_certificate(&ps, &cf), "queue certificate")?))?;
    Ok(format!("{count} certificates audited, max ratio {worst:.12}, no spectral violation"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 14] = [
        ("complete graph curvature", c1_complete),
        ("star graph", c2_star),
        ("discrete cycle", c3_cycle),
        ("birth-death closed forms", c4_birth_death),
        ("binomial chain", c5_binomial),
        ("complete multipartite graphs", c6_multipartite),
        ("reference case solver", c7_reference_cases),
        ("degree-diameter bound", c8_degree_diameter),
        ("diameter bound", c9_myers),
        ("alpha-Ricci identity", c10_alpha_ricci),
        ("transport oracle", c11_transport),
        ("Lyapunov pipeline", c12_lyapunov),
        ("Glauber dynamics", c13_glauber),
        ("global certificate gate", c14_global_gate),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of 14 criteria passed in {:.1}s", 14 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
