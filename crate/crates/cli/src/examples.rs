use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;

use markov_ricci::families;
use markov_ricci::io::{format_value, write_generator, write_metric};
use markov_ricci::lyapunov::geometric_instance;
use markov_ricci::{Generator, Metric, Rational, Scalar};

use crate::commands::Verdict;
use crate::{Common, ExampleArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Complete,
    Star,
    Cycle,
    Cube,
    Bipartite,
    KPartite,
    MmInfinity,
    Binomial,
    #[value(name = "geometric-1")]
    Geometric1,
    #[value(name = "geometric-2")]
    Geometric2,
    Spin,
    Queue,
    /// Drift-condition instance for the `lyapunov` subcommand.
    Lyapunov,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MetricName {
    /// Shortest-path metric; no metric file is written.
    Graph,
    /// The two-level hub metric of the star.
    Custom,
    /// `sin(d_G π / n)` on the cycle.
    Sin,
    /// The profile metric of the complete multipartite graphs.
    H0,
}

struct Output {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Output {
    fn put(&mut self, name: &str, body: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, body).with_context(|| format!("cannot write `{}`", path.display()))?;
        self.written.push(path);
        Ok(())
    }

    fn generator<S: Scalar>(&mut self, gen: &Generator<S>) -> Result<()> {
        self.put("generator.txt", &write_generator(gen))
    }

    fn metric<S: Scalar>(&mut self, d: &Metric<S>, gen: &Generator<S>) -> Result<()> {
        self.put("metric.txt", &write_metric(d, gen.graph()))
    }
}

fn allowed(name: Family, metric: MetricName, ok: &[MetricName]) -> Result<()> {
    if metric != MetricName::Graph && !ok.contains(&metric) {
        bail!("metric `{metric:?}` is not bundled with `{name:?}`");
    }
    Ok(())
}

pub fn write(a: &ExampleArgs, common: &Common) -> Result<Verdict> {
    let dir = common.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("cannot create `{}`", dir.display()))?;
    let mut out = Output { dir, written: Vec::new() };
    let metric = a.metric.unwrap_or(MetricName::Graph);
    let param = |default: &str| a.param.clone().unwrap_or_else(|| default.to_string());
    match a.name {
        Family::Complete => {
            allowed(a.name, metric, &[])?;
            out.generator(&families::complete::<Rational>(a.n.unwrap_or(5))?)?;
        }
        Family::Star => {
            allowed(a.name, metric, &[MetricName::Custom])?;
            let leaves = a.n.unwrap_or(4);
            let gen = families::star::<Rational>(leaves)?;
            out.generator(&gen)?;
            if metric == MetricName::Custom {
                out.metric(&families::star_metric::<Rational>(leaves)?, &gen)?;
            }
        }
        Family::Cycle => {
            allowed(a.name, metric, &[MetricName::Sin])?;
            let n = a.n.unwrap_or(6);
            let gen = families::cycle::<f64>(n)?;
            out.generator(&families::cycle::<Rational>(n)?)?;
            if metric == MetricName::Sin {
                let d = Metric::pullback_graph(gen.graph(), &families::cycle_sine_profile::<f64>(n)?)?;
                out.metric(&d, &gen)?;
            }
        }
        Family::Cube => {
            allowed(a.name, metric, &[])?;
            out.generator(&families::cube::<Rational>(a.n.unwrap_or(3))?.0)?;
        }
        Family::Bipartite => {
            allowed(a.name, metric, &[MetricName::H0])?;
            let n1 = a.n.unwrap_or(2);
            let n2 = a.m.unwrap_or(n1);
            let gen = families::bipartite::<Rational>(n1, n2)?;
            out.generator(&gen)?;
            if metric == MetricName::H0 {
                let d = Metric::pullback_graph(gen.graph(), &families::bipartite_profile::<Rational>(n1, n2))?;
                out.metric(&d, &gen)?;
            }
        }
        Family::KPartite => {
            allowed(a.name, metric, &[MetricName::H0])?;
            let n = a.n.unwrap_or(2);
            let gen = families::multipartite::<Rational>(a.m.unwrap_or(3), n)?;
            out.generator(&gen)?;
            if metric == MetricName::H0 {
                let d = Metric::pullback_graph(gen.graph(), &families::multipartite_profile::<Rational>(n))?;
                out.metric(&d, &gen)?;
            }
        }
        Family::MmInfinity => {
            allowed(a.name, metric, &[])?;
            out.put("chain.txt", &format!("mm-infinity lambda={} trunc={}\n", param("1"), common.trunc.unwrap_or(20)))?;
        }
        Family::Binomial => {
            allowed(a.name, metric, &[])?;
            out.put("chain.txt", &format!("binomial n={} p={}\n", a.n.unwrap_or(10), param("1/2")))?;
        }
        Family::Geometric1 => {
            allowed(a.name, metric, &[])?;
            // Death rate 1, birth rate b < 1.
            let b = param("1/2");
            let depth = common.trunc.unwrap_or(20);
            let mut body = format!("bd {depth}\n");
            for n in 1..=depth {
                let _ = writeln!(body, "a {n} 1");
            }
            for n in 0..depth {
                let _ = writeln!(body, "b {n} {b}");
            }
            out.put("chain.txt", &body)?;
        }
        Family::Geometric2 => {
            allowed(a.name, metric, &[])?;
            let p: Rational = Scalar::parse_value(&param("1/2")).context("p must be a number")?;
            let depth = common.trunc.unwrap_or(20);
            let mut body = format!("bd {depth}\n");
            for n in 1..=depth {
                let _ = writeln!(body, "a {n} {n}");
            }
            for n in 0..depth {
                let _ = writeln!(body, "b {n} {}", format_value(&(p.clone() * Rational::int(n as i64 + 1))));
            }
            out.put("chain.txt", &body)?;
        }
        Family::Spin => {
            allowed(a.name, metric, &[])?;
            let n = a.n.unwrap_or(3);
            let beta = param("-0.2");
            let mut body = format!("spin N={n}\n");
            for i in 0..n {
                for j in i + 1..n {
                    let _ = writeln!(body, "beta {i} {j} {beta}");
                }
            }
            out.put("model.txt", &body)?;
        }
        Family::Queue => {
            allowed(a.name, metric, &[])?;
            let n = a.n.unwrap_or(2);
            let mut body = format!("queue N={n} lambda={} trunc={}\n", param("1"), common.trunc.unwrap_or(6));
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        let _ = writeln!(body, "beta {i} {j} {}", std::f64::consts::LN_2 / (n - 1).max(1) as f64);
                    }
                }
            }
            out.put("model.txt", &body)?;
        }
        Family::Lyapunov => {
            allowed(a.name, metric, &[])?;
            let (chain, v, r, b, k) = geometric_instance::<Rational>(common.trunc.unwrap_or(10))?;
            let gen = chain.to_generator();
            out.generator(&gen)?;
            let g = gen.graph();
            let mut body = String::new();
            for (x, val) in v.iter().enumerate() {
                let _ = writeln!(body, "V {} {}", g.name(x), format_value(val));
            }
            let ks: Vec<&str> = k.iter().map(|&x| g.name(x)).collect();
            let _ = write!(body, "r {}\nb {}\nKset {}\n", format_value(&r), format_value(&b), ks.join(" "));
            out.put("lyapunov.txt", &body)?;
        }
    }
    for p in &out.written {
        println!("wrote {}", p.display());
    }
    Ok(Verdict::Pass)
}
