//! Randomised invariants. Instances are drawn from a proptest seed so that
//! failures shrink to a reproducible seed.

use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use markov_ricci::birth_death::{
    bd_metric_curvature, occupation_bound, poisson_metric, reference_case_solver, BirthDeathChain, ReferenceChain,
};
use markov_ricci::comparison::{
    comparison_certificate, cycle_reflection_coupling, dissipative_metric, envelope, DissipativityProfile,
};
use markov_ricci::coupling::{validate_coupling, CouplingKernel};
use markov_ricci::curvature::{
    curvature_lower_bound, curvature_sweep, discrete_metric_curvature, myers_bound, pair_curvature,
    pair_curvature_with_witness, tensorize, SweepScope,
};
use markov_ricci::families;
use markov_ricci::glauber::{
    block_curvature, dobrushin_coefficients, gibbs_generator, glauber_certificate, queue_curvature, queue_model,
    ProductSpace, TableFamily,
};
use markov_ricci::graph::invariant_measure;
use markov_ricci::linalg::solve;
use markov_ricci::lyapunov::{
    curvature_pseudometric, fitted_constant, geometric_instance, lyapunov_kappa, minorization_pseudometric,
    occupation_pseudometric, LyapunovData,
};
use markov_ricci::transport::{dual_certificate, transport_cost, w1_ordered};
use markov_ricci::verifier::{audit_certificate, contraction_audit, default_time_grid, spectral_gap};
use markov_ricci::{DiscreteMeasure, Generator, Graph, Metric, Rational, Scalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Connected graph on `n` vertices: random spanning tree plus extra edges.
fn random_graph(r: &mut ChaCha8Rng, n: usize) -> Graph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(r);
    let mut edges = Vec::new();
    for k in 1..n {
        let p = order[r.gen_range(0..k)];
        edges.push((p.min(order[k]), p.max(order[k])));
    }
    let extra = r.gen_range(0.0..0.6);
    for x in 0..n {
        for y in x + 1..n {
            if !edges.contains(&(x, y)) && r.gen_bool(extra) {
                edges.push((x, y));
            }
        }
    }
    Graph::new((0..n).map(|i| format!("v{i}")), edges).unwrap()
}

/// Non-symmetric rational rates in `{1/4, …, 3}` on a random graph.
fn random_generator(r: &mut ChaCha8Rng, n: usize) -> Generator<Rational> {
    let g = random_graph(r, n);
    let rates: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| q(r.gen_range(1..=12), 4)).collect()).collect();
    Generator::from_fn(g, |x, y| rates[x][y].clone()).unwrap()
}

fn random_measure(r: &mut ChaCha8Rng, n: usize, mass: &Rational) -> DiscreteMeasure<Rational> {
    let mut support: Vec<usize> = (0..n).collect();
    support.shuffle(r);
    support.truncate(r.gen_range(1..=n.min(4)));
    let w: Vec<Rational> = support.iter().map(|_| q(r.gen_range(1..=9), 1)).collect();
    let total: Rational = w.iter().cloned().sum();
    DiscreteMeasure::new(support.into_iter().zip(w.into_iter().map(|v| v * mass.clone() / total.clone()))).unwrap()
}

/// Random rational length metric on a random graph.
fn random_length_metric(r: &mut ChaCha8Rng, g: &Graph) -> Metric<Rational> {
    let n = g.len();
    let w: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| r.gen_range(1..=5)).collect()).collect();
    Metric::length(g, |x, y| q(w[x.min(y)][x.max(y)], 1)).unwrap()
}

fn random_chain(r: &mut ChaCha8Rng) -> BirthDeathChain<Rational> {
    let depth = r.gen_range(2..=9);
    let a: Vec<Rational> = (0..=depth).map(|n| if n == 0 { q(0, 1) } else { q(r.gen_range(1..=8), 2) }).collect();
    let b: Vec<Rational> = (0..=depth).map(|n| if n == depth { q(0, 1) } else { q(r.gen_range(1..=8), 2) }).collect();
    BirthDeathChain::new(a, b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn graph_distance_satisfies_the_triangle_inequality(seed in any::<u64>(), n in 2usize..10) {
        let g = random_graph(&mut rng(seed), n);
        for x in 0..n {
            prop_assert_eq!(g.distance(x, x), 0);
            for y in 0..n {
                prop_assert_eq!(g.distance(x, y), g.distance(y, x));
                for z in 0..n {
                    prop_assert!(g.distance(x, z) <= g.distance(x, y) + g.distance(y, z));
                }
            }
        }
    }

    #[test]
    fn unit_length_metric_is_the_graph_distance(seed in any::<u64>(), n in 2usize..10) {
        let g = random_graph(&mut rng(seed), n);
        let d = Metric::length(&g, |_, _| q(1, 1)).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(d.get(x, y), q(g.distance(x, y) as i64, 1));
            }
        }
    }

    #[test]
    fn invariant_measure_is_stationary(seed in any::<u64>(), n in 2usize..9) {
        let gen = random_generator(&mut rng(seed), n);
        let mu = invariant_measure(&gen).unwrap();
        for y in 0..n {
            let inflow: Rational = (0..n).map(|x| mu.get(x) * gen.rate(x, y)).sum();
            prop_assert_eq!(inflow, mu.get(y) * gen.total_rate(y));
        }
        let fgen = gen.to_f64();
        let fmu = invariant_measure(&fgen).unwrap();
        for y in 0..n {
            let net: f64 = (0..n).map(|x| fmu.get(x) * fgen.rate(x, y)).sum::<f64>() - fmu.get(y) * fgen.total_rate(y);
            prop_assert!(net.abs() <= 1e-12, "residual {net}");
        }
    }

    #[test]
    fn transport_duality_gap_is_zero(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n);
        let d = random_length_metric(&mut r, &g);
        let mass = q(r.gen_range(1..=4), 1);
        let (nu1, nu2) = (random_measure(&mut r, n, &mass), random_measure(&mut r, n, &mass));
        let plan = transport_cost(&nu1, &nu2, &d).unwrap();
        let f = dual_certificate(&plan, &d).unwrap().potential;
        let dual: Rational = (0..n).map(|v| f[v].clone() * (nu2.get(v) - nu1.get(v))).sum();
        prop_assert_eq!(&dual, &plan.cost);
        for x in 0..n {
            for y in 0..n {
                prop_assert!(f[x].clone() - f[y].clone() <= d.get(x, y));
            }
        }
        let primal: Rational = plan.flows.iter().map(|(x, y, m)| m.clone() * d.get(*x, *y)).sum();
        prop_assert_eq!(primal, plan.cost);
    }

    #[test]
    fn transport_is_symmetric_and_satisfies_the_triangle_inequality(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let g = random_graph(&mut r, n);
        let d = random_length_metric(&mut r, &g);
        let mass = q(r.gen_range(1..=4), 3);
        let m: Vec<DiscreteMeasure<Rational>> = (0..3).map(|_| random_measure(&mut r, n, &mass)).collect();
        let t = |a: usize, b: usize| transport_cost(&m[a], &m[b], &d).unwrap().cost;
        prop_assert_eq!(t(0, 1), t(1, 0));
        prop_assert!(t(0, 2) <= t(0, 1) + t(1, 2));
        // Same again in floats.
        let fd = d.to_f64();
        let fm: Vec<DiscreteMeasure<f64>> =
            m.iter().map(|mu| DiscreteMeasure::new(mu.atoms().iter().map(|(v, w)| (*v, w.to_f64()))).unwrap()).collect();
        let ft = |a: usize, b: usize| transport_cost(&fm[a], &fm[b], &fd).unwrap().cost;
        prop_assert!((ft(0, 1) - ft(1, 0)).abs() <= 1e-10 * ft(0, 1).max(1.0));
        prop_assert!((ft(0, 1) - t(0, 1).to_f64()).abs() <= 1e-10 * ft(0, 1).max(1.0));
    }

    #[test]
    fn ordered_w1_matches_the_simplex(seed in any::<u64>(), n in 2usize..9) {
        let mut r = rng(seed);
        let path = Graph::new((0..n).map(|i| i.to_string()), (1..n).map(|i| (i - 1, i))).unwrap();
        let mut h = vec![q(0, 1)];
        for _ in 1..n {
            let next = h.last().unwrap().clone() + q(r.gen_range(1..=7), 3);
            h.push(next);
        }
        let d = Metric::length(&path, |x, y| (h[x].clone() - h[y].clone()).abs()).unwrap();
        // ν₂ = ν₁ pushed up by one step where possible: stochastically larger.
        let nu1 = random_measure(&mut r, n, &q(1, 1));
        let nu2 = DiscreteMeasure::new(nu1.atoms().iter().map(|(v, w)| ((*v + 1).min(n - 1), w.clone()))).unwrap();
        let ordered = w1_ordered(&nu1, &nu2, &h, &d).unwrap();
        prop_assert_eq!(ordered, transport_cost(&nu1, &nu2, &d).unwrap().cost);
    }

    #[test]
    fn discrete_metric_curvature_is_the_overlap(seed in any::<u64>(), n in 2usize..9) {
        let gen = random_generator(&mut rng(seed), n);
        let d = Metric::discrete(n);
        for x in 0..n {
            for y in x + 1..n {
                prop_assert_eq!(pair_curvature(&gen, &d, x, y).unwrap(), discrete_metric_curvature(&gen, x, y).unwrap());
            }
        }
    }

    #[test]
    fn edges_suffice_for_length_metrics(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let gen = random_generator(&mut r, n);
        let d = random_length_metric(&mut r, gen.graph());
        let edges = curvature_sweep(&gen, &d, SweepScope::Edges).unwrap().kappa;
        let all = curvature_sweep(&gen, &d, SweepScope::AllPairs).unwrap().kappa;
        prop_assert_eq!(edges, all);
    }

    #[test]
    fn witness_couplings_are_valid_and_attain_the_curvature(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let gen = random_generator(&mut r, n);
        let d = random_length_metric(&mut r, gen.graph());
        for x in 0..n {
            for y in x + 1..n {
                let w = pair_curvature_with_witness(&gen, &d, x, y).unwrap();
                prop_assert!(validate_coupling(&gen, &w.witness));
                // Transport route: ((λx+λy)d − T)/d on the padded measures.
                prop_assert_eq!(&w.curvature, &pair_curvature(&gen, &d, x, y).unwrap());
            }
        }
    }

    #[test]
    fn curvature_is_homogeneous_in_the_rates(seed in any::<u64>(), n in 2usize..7, c in 1i64..9) {
        let mut r = rng(seed);
        let gen = random_generator(&mut r, n);
        let d = random_length_metric(&mut r, gen.graph());
        let c = q(c, 3);
        let scaled = gen.scaled(&c).unwrap();
        for x in 0..n {
            for y in x + 1..n {
                prop_assert_eq!(
                    pair_curvature(&scaled, &d, x, y).unwrap(),
                    c.clone() * pair_curvature(&gen, &d, x, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn diameter_bound_holds_whenever_curvature_is_positive(seed in any::<u64>(), n in 2usize..8) {
        let mut r = rng(seed);
        let gen = random_generator(&mut r, n);
        for d in [Metric::graph(gen.graph()), random_length_metric(&mut r, gen.graph())] {
            let kappa = curvature_lower_bound(&gen, &d).unwrap().kappa;
            if kappa > Rational::zero() {
                prop_assert!(myers_bound(&gen, &d, &kappa).unwrap().holds());
            }
        }
    }

    #[test]
    fn poisson_metric_solves_the_poisson_equation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let chain = random_chain(&mut r);
        let depth = chain.depth();
        let mu = chain.invariant_measure();
        let mut raw = vec![q(0, 1)];
        for _ in 0..depth {
            let next = raw.last().unwrap().clone() + q(r.gen_range(1..=5), 2);
            raw.push(next);
        }
        let mean: Rational = mu.iter().zip(&raw).map(|(m, v)| m.clone() * v.clone()).sum();
        let g: Vec<Rational> = raw.iter().map(|v| v.clone() - mean.clone()).collect();
        let design = poisson_metric(&chain, &g).unwrap();
        let lh = chain.apply(&design.h);
        for n in 1..=depth {
            prop_assert_eq!(-lh[n].clone(), g[n].clone());
        }
        let k = bd_metric_curvature(&chain, &design.h).unwrap();
        prop_assert!(k >= design.kappa, "curvature {} below 1/K(g) = {}", k, design.kappa);
        // 1/K(g) is a lower bound on the spectral gap.
        let gap = spectral_gap(&chain.to_generator()).unwrap();
        prop_assert!(design.kappa.to_f64() <= gap + 1e-9);
    }

    #[test]
    fn balanced_reference_profile_is_concave(a in 1i64..6, d in 1usize..12) {
        let design = reference_case_solver(&(a as f64), &(a as f64), Some(d)).unwrap().design;
        prop_assert!(design.increments.windows(2).all(|w| w[1] <= w[0] + 1e-15));
        let m = Metric::pullback_graph(
            &Graph::new((0..=d).map(|i| i.to_string()), (1..=d).map(|i| (i - 1, i))).unwrap(),
            &design.h,
        )
        .unwrap();
        prop_assert!(m.triangle_holds());
    }

    #[test]
    fn occupation_bound_matches_a_dense_solve(seed in any::<u64>()) {
        let mut r = rng(seed);
        let depth = r.gen_range(1..=8usize);
        let down: Vec<Rational> = (0..=depth).map(|_| q(r.gen_range(1..=6), 2)).collect();
        let up: Vec<Rational> = (0..=depth).map(|_| q(r.gen_range(1..=6), 2)).collect();
        let reference = ReferenceChain::birth_death(depth, |n| down[n].clone(), |n| up[n].clone()).unwrap();
        let g: Vec<Rational> = (0..=depth).map(|n| if n == 0 { q(0, 1) } else { q(r.gen_range(0..=4), 1) }).collect();
        // ℒ_ref h = −g on [1, D] with h(0) = 0.
        let mut a = vec![vec![q(0, 1); depth]; depth];
        for n in 1..=depth {
            for j in [-1i64, 1] {
                let m = n as i64 + j;
                if m < 0 || m > depth as i64 {
                    continue;
                }
                let rate = reference.rate(n, j as i32);
                a[n - 1][n - 1] -= rate.clone();
                if m >= 1 {
                    a[n - 1][m as usize - 1] += rate;
                }
            }
        }
        let rhs: Vec<Rational> = (1..=depth).map(|n| -g[n].clone()).collect();
        let h = solve(a, rhs).unwrap();
        for n in 1..=depth {
            prop_assert_eq!(&occupation_bound(&reference, &g, n).unwrap().value, &h[n - 1]);
        }
    }

    #[test]
    fn dissipative_metric_balances_the_reference(j in 1i64..5, k in 1i64..5, rr in 0i64..6, big_n in 1usize..6) {
        // The profile needs κ∞ N ≥ 2J*.
        prop_assume!(q(k, 3) * q(big_n as i64, 1) >= q(j, 1));
        let profile = DissipativityProfile::new(q(j, 2), q(k, 3), q(rr, 2), big_n).unwrap();
        let metric = dissipative_metric(&profile);
        let depth = big_n + 4;
        let h = metric.h0(depth);
        let reference = metric.reference(depth).unwrap();
        let lh = reference.apply(&h);
        // The top state only reflects, so check below it.
        for n in 1..depth {
            prop_assert_eq!(-lh[n - 1].clone(), metric.g(n));
        }
        let scan = (1..=depth + 1)
            .map(|n| metric.g(n) / metric.h0(depth + 1)[n].clone())
            .reduce(|a, b| if b < a { b } else { a })
            .unwrap();
        prop_assert_eq!(metric.sharp_rate, scan);
    }

    #[test]
    fn accepted_cycle_comparisons_contract(n in 3usize..10, frac in 0.2f64..1.0) {
        let gen = families::cycle::<f64>(n).unwrap();
        let kappa = frac * (1.0 - (2.0 * std::f64::consts::PI / n as f64).cos());
        let h: Vec<f64> = (0..=n / 2).map(|k| (k as f64 * std::f64::consts::PI / n as f64).sin()).collect();
        let data = envelope(&gen, &cycle_reflection_coupling(&gen).unwrap()).unwrap();
        let cert = comparison_certificate(&data, &h, &kappa).unwrap();
        prop_assert!(audit_certificate(&gen, &cert, None).unwrap().pass);
    }

    #[test]
    fn lyapunov_rate_is_below_the_exact_curvature(depth in 2usize..9, beta_k in 1i64..8) {
        let (chain, v, r, b, k) = geometric_instance::<Rational>(depth).unwrap();
        let gen = chain.to_generator();
        let (d_pi, _) = minorization_pseudometric(&gen, &k).unwrap();
        let c = fitted_constant(&d_pi, &v);
        // β ranges over (0, 1/(2b)).
        let beta = q(beta_k, 8) / (q(2, 1) * b.clone());
        let data = LyapunovData::new(v, r, b, k, d_pi, c, Some(beta)).unwrap();
        let bound = lyapunov_kappa(&gen, &data).unwrap();
        let lp = curvature_sweep(&gen, &bound.metric, SweepScope::AllPairs).unwrap().kappa;
        prop_assert!(bound.kappa <= lp, "κ = {} above LP {}", bound.kappa, lp);
    }

    #[test]
    fn pseudometrics_satisfy_the_occupation_inequality(seed in any::<u64>(), n in 3usize..7) {
        let mut r = rng(seed);
        let gen = random_generator(&mut r, n);
        let mut k_set: Vec<usize> = (0..n).collect();
        k_set.shuffle(&mut r);
        k_set.truncate(r.gen_range(2..=n));
        k_set.sort_unstable();
        let pairs: Vec<(usize, usize)> =
            k_set.iter().flat_map(|&x| k_set.iter().filter(move |&&y| y != x).map(move |&y| (x, y))).collect();
        // Occupation time: ℒ^π d = −1 on K²∖Δ, and d is largest on K².
        let couplings = CouplingKernel::independent(&gen);
        let occ = occupation_pseudometric(&couplings, &k_set).unwrap();
        for &(x, y) in &pairs {
            let drift = couplings.pair(x, y).drift(|a, b| occ.get(a, b));
            prop_assert_eq!(drift, -Rational::one());
        }
        let top = pairs.iter().map(|&(x, y)| occ.get(x, y)).reduce(|a, b| if b > a { b } else { a }).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert!(occ.get(x, y) <= top);
            }
        }
        // Minorization: the optimal coupling drifts by at most −1 on K²∖Δ.
        if let Ok((d, _)) = minorization_pseudometric(&gen, &k_set) {
            for &(x, y) in &pairs {
                let w = pair_curvature_with_witness(&gen, &d, x, y).unwrap();
                prop_assert!(w.witness.drift(|a, b| d.get(a, b)) <= -Rational::one());
            }
        }
    }

    #[test]
    fn curvature_pseudometric_satisfies_the_occupation_inequality(depth in 3usize..9) {
        let (chain, _, r, _, k) = geometric_instance::<Rational>(depth).unwrap();
        let gen = chain.to_generator();
        let jstar = gen.graph().edges().map(|(x, y)| gen.rate(x, y).min(gen.rate(y, x))).min().unwrap();
        let d = curvature_pseudometric(&gen, &k, &r, &jstar).unwrap();
        for &x in &k {
            for &y in k.iter().filter(|&&y| y != x) {
                let w = pair_curvature_with_witness(&gen, &d, x, y).unwrap();
                prop_assert!(w.witness.drift(|a, b| d.get(a, b)) <= -Rational::one());
            }
        }
    }

    #[test]
    fn independent_products_tensorize(seed in any::<u64>()) {
        let mut r = rng(seed);
        let sites = r.gen_range(1..=3usize);
        let labels: Vec<Vec<String>> =
            (0..sites).map(|_| (0..r.gen_range(2..=3usize)).map(|v| v.to_string()).collect()).collect();
        let ps = ProductSpace::<Rational>::hamming(labels.clone()).unwrap();
        let laws: Vec<Vec<Rational>> = labels
            .iter()
            .map(|l| {
                let w: Vec<i64> = l.iter().map(|_| r.gen_range(1..=5)).collect();
                let t: i64 = w.iter().sum();
                w.into_iter().map(|v| q(v, t)).collect()
            })
            .collect();
        let mut cf = TableFamily::new();
        for s in 0..ps.len() {
            let x = ps.decode(s);
            for i in 0..sites {
                cf.insert(&ps, i, TableFamily::boundary_of(&ps, i, &x), laws[i].clone()).unwrap();
            }
        }
        let gen = gibbs_generator(&ps, &cf).unwrap();
        let factors: Vec<(Generator<Rational>, Metric<Rational>)> = (0..sites)
            .map(|i| {
                let k = laws[i].len();
                let triples: Vec<_> =
                    (0..k).flat_map(|a| (0..k).filter(move |&b| b != a).map(move |b| (a, b))).map(|(a, b)| (a, b, laws[i][b].clone())).collect();
                (Generator::from_rates(labels[i].clone(), triples).unwrap(), ps.site_metric(i).clone())
            })
            .collect();
        let (tensor, metric) = tensorize(&factors).unwrap();
        for x in 0..gen.len() {
            for y in 0..gen.len() {
                prop_assert_eq!(gen.rate(x, y), tensor.rate(x, y));
            }
        }
        let per_site = factors
            .iter()
            .map(|(g, d)| curvature_lower_bound(g, d).unwrap().kappa)
            .reduce(|a, b| if b < a { b } else { a })
            .unwrap();
        let whole = curvature_sweep(&gen, &metric, SweepScope::AllPairs).unwrap().kappa;
        prop_assert!(whole >= per_site);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn queue_bounds_are_below_the_exact_curvature(seed in any::<u64>()) {
        let mut r = rng(seed);
        let lambda = r.gen_range(0.2..1.2);
        let b01 = r.gen_range(0.0..0.9);
        let b10 = r.gen_range(0.0..0.9);
        let betas = vec![vec![0.0, b01], vec![b10, 0.0]];
        let (ps, cf) = queue_model(lambda, &betas, 4).unwrap();
        let c = dobrushin_coefficients(&ps, &cf).unwrap();
        prop_assert!((c[0][1] - lambda * (1.0 - (-b01).exp())).abs() < 1e-12);
        prop_assert!((c[1][0] - lambda * (1.0 - (-b10).exp())).abs() < 1e-12);
        let gen = gibbs_generator(&ps, &cf).unwrap();
        let lp = curvature_sweep(&gen, &ps.metric().unwrap(), SweepScope::AllPairs).unwrap().kappa;
        prop_assert!(queue_curvature(lambda, &betas).unwrap().kappa <= lp + 1e-9);
        let kappa0 = block_curvature(&ps, &cf).unwrap();
        if let Ok(cert) = glauber_certificate(&ps, &cf) {
            prop_assert!(cert.kappa <= lp + 1e-9);
            prop_assert!(cert.kappa <= kappa0 + 1e-12);
        }
    }

    #[test]
    fn audit_starts_at_the_metric_and_decreases(seed in any::<u64>(), n in 2usize..7) {
        let mut r = rng(seed);
        let gen = random_generator(&mut r, n);
        let d = random_length_metric(&mut r, gen.graph());
        let kappa = curvature_lower_bound(&gen, &d).unwrap().kappa.to_f64();
        let (fgen, fd) = (gen.to_f64(), d.to_f64());
        let at_zero = contraction_audit(&fgen, &fd, kappa.max(0.1), 1.0, &[0.0]).unwrap();
        for row in &at_zero.rows {
            prop_assert_eq!(row.w1, fd.get(row.x, row.y));
        }
        if kappa > 0.0 {
            let mut grid = vec![0.0];
            grid.extend(default_time_grid(kappa));
            let audit = contraction_audit(&fgen, &fd, kappa, 1.0, &grid).unwrap();
            prop_assert!(audit.pass, "max ratio {}", audit.max_ratio);
            for x in 0..n {
                for y in x + 1..n {
                    let ratios: Vec<f64> =
                        audit.rows.iter().filter(|row| row.x == x && row.y == y).map(|row| row.w1 / fd.get(x, y)).collect();
                    prop_assert!(ratios.windows(2).all(|w| w[1] <= w[0] + 1e-9), "{ratios:?}");
                }
            }
        }
    }
}
