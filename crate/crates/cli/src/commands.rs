use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};

use markov_ricci::birth_death::{bd_curvature, poisson_metric, reference_case_solver, w1_decay_certificate, BirthDeathChain};
use markov_ricci::certificate::{Certificate, CertificateMetric, Claim};
use markov_ricci::coupling::padded_measures;
use markov_ricci::curvature::{curvature_lower_bound, curvature_sweep, pair_curvature_with_witness, SweepScope};
use markov_ricci::glauber::{
    glauber_certificate, gibbs_generator, queue_curvature, queue_model, spin_curvature, spin_model, ConditionalFamily,
    ProductSpace,
};
use markov_ricci::io::{
    audit_csv, curvature_csv, format_value, has_float_values, parse_chain, parse_generator, parse_lyapunov, parse_metric,
    parse_model, parse_weights, plan_csv, plot_csv, ModelSpec,
};
use markov_ricci::lyapunov::{
    best_beta, curvature_pseudometric, fitted_constant, lyapunov_kappa, minorization_pseudometric, LyapunovData,
};
use markov_ricci::transport::transport_cost;
use markov_ricci::verifier::{audit_certificate, contraction_audit, default_time_grid, eigen_vs_certificate};
use markov_ricci::{Error, Generator, Metric, Rational, Scalar};

use crate::{AuditArgs, Common, CurvatureArgs, GlauberArgs, LyapunovArgs, MetricChoice, MetricDesignArgs, Mode};

/// Largest state space certifying commands audit on their own; every pair
/// and time is a full-support transport problem. `audit` has no limit.
const AUDIT_LIMIT: usize = 100;
/// Largest product space on which `glauber` also runs the exhaustive LP sweep.
const SWEEP_LIMIT: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    AuditFailed,
}

impl Verdict {
    fn and(self, pass: bool) -> Self {
        if pass {
            self
        } else {
            Verdict::AuditFailed
        }
    }
}

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read `{}`", path.display()))
}

fn mode_for(common: &Common, texts: &[&str]) -> Mode {
    common.mode.unwrap_or(if texts.iter().any(|t| has_float_values(t)) { Mode::Float } else { Mode::Rational })
}

fn value<S: Scalar>(s: &str) -> Result<S> {
    S::parse_value(s).ok_or_else(|| anyhow!("`{s}` is not a number"))
}

/// The report goes to `--out` when given, with a one-line summary on
/// stdout; otherwise the report itself goes to stdout.
fn emit(common: &Common, report: &str, summary: &str) -> Result<()> {
    match &common.out {
        Some(path) => {
            fs::write(path, report).with_context(|| format!("cannot write `{}`", path.display()))?;
            println!("{summary}");
        }
        None => print!("{report}"),
    }
    Ok(())
}

struct Plot(String);

impl Plot {
    fn new() -> Self {
        Plot(String::new())
    }

    fn add(&mut self, label: &str, body: &str) {
        let _ = writeln!(self.0, "# {label}");
        self.0.push_str(body);
    }

    fn save(&self, common: &Common) -> Result<()> {
        if let Some(path) = &common.emit_plot_data {
            fs::write(path, &self.0).with_context(|| format!("cannot write `{}`", path.display()))?;
        }
        Ok(())
    }
}

fn load_metric<S: Scalar>(choice: &MetricChoice, gen: &Generator<S>, texts: &MetricTexts) -> Result<Metric<S>> {
    let g = gen.graph();
    Ok(match (&choice.metric, &choice.weights) {
        (Some(p), _) => parse_metric(texts.as_str(), g).with_context(|| format!("in `{}`", p.display()))?,
        (None, Some(p)) => parse_weights(texts.as_str(), g).with_context(|| format!("in `{}`", p.display()))?,
        (None, None) => Metric::graph(g),
    })
}

struct MetricTexts(Option<String>);

impl MetricTexts {
    fn read(choice: &MetricChoice) -> Result<Self> {
        match choice.metric.as_ref().or(choice.weights.as_ref()) {
            Some(p) => Ok(MetricTexts(Some(read(p)?))),
            None => Ok(MetricTexts(None)),
        }
    }

    fn as_str(&self) -> &str {
        self.0.as_deref().unwrap_or("")
    }
}

fn generator<S: Scalar>(path: &Path, text: &str) -> Result<Generator<S>> {
    parse_generator(text).with_context(|| format!("in `{}`", path.display()))
}

pub fn curvature(a: &CurvatureArgs, common: &Common) -> Result<Verdict> {
    let text = read(&a.generator)?;
    let metric = MetricTexts::read(&a.metric)?;
    match mode_for(common, &[&text, metric.as_str()]) {
        Mode::Rational => curvature_in::<Rational>(a, common, &text, &metric),
        Mode::Float => curvature_in::<f64>(a, common, &text, &metric),
    }
}

fn curvature_in<S: Scalar>(a: &CurvatureArgs, common: &Common, text: &str, metric: &MetricTexts) -> Result<Verdict> {
    let gen: Generator<S> = generator(&a.generator, text)?;
    let d = load_metric(&a.metric, &gen, metric)?;
    let g = gen.graph();
    if let Some(pair) = &a.pair {
        let (x, y) = (g.vertex(&pair[0])?, g.vertex(&pair[1])?);
        let pc = pair_curvature_with_witness(&gen, &d, x, y)?;
        let report = format!(
            "x,y,distance,curvature\n{},{},{},{}\n",
            g.name(x),
            g.name(y),
            format_value(&pc.distance),
            format_value(&pc.curvature)
        );
        if let Some(path) = &a.plan {
            let total = gen.total_rate(x) + gen.total_rate(y);
            let (mx, my) = padded_measures(&gen, x, y, &total)?;
            let plan = transport_cost(&mx, &my, &d)?;
            fs::write(path, plan_csv(&plan, g)).with_context(|| format!("cannot write `{}`", path.display()))?;
        }
        emit(common, &report, &format!("curvature of ({}, {}) = {}", g.name(x), g.name(y), format_value(&pc.curvature)))?;
        return Ok(Verdict::Pass);
    }
    let scope = if a.all_pairs { SweepScope::AllPairs } else { SweepScope::Auto };
    let report = curvature_sweep(&gen, &d, scope)?;
    let (wx, wy) = report.worst;
    let summary = format!(
        "global κ = {} over {} (worst pair {} {})",
        format_value(&report.kappa),
        if report.edge_reduced { "edges" } else { "all pairs" },
        g.name(wx),
        g.name(wy)
    );
    emit(common, &curvature_csv(&report, g), &summary)?;
    Ok(Verdict::Pass)
}

pub fn audit(a: &AuditArgs, common: &Common) -> Result<Verdict> {
    let text = read(&a.generator)?;
    let metric = MetricTexts::read(&a.metric)?;
    let extra: Vec<&str> = a.kappa.iter().map(String::as_str).chain([a.prefactor.as_str()]).collect();
    let float = extra.iter().any(|v| markov_ricci::scalar::is_float_literal(v));
    let mode = match mode_for(common, &[&text, metric.as_str()]) {
        Mode::Rational if float && common.mode.is_none() => Mode::Float,
        m => m,
    };
    match mode {
        Mode::Rational => audit_in::<Rational>(a, common, &text, &metric),
        Mode::Float => audit_in::<f64>(a, common, &text, &metric),
    }
}

fn audit_in<S: Scalar>(a: &AuditArgs, common: &Common, text: &str, metric: &MetricTexts) -> Result<Verdict> {
    let gen: Generator<S> = generator(&a.generator, text)?;
    let d = load_metric(&a.metric, &gen, metric)?;
    let kappa: S = match &a.kappa {
        Some(k) => value(k)?,
        None => curvature_lower_bound(&gen, &d)?.kappa,
    };
    if !(kappa > S::zero()) {
        bail!("κ = {kappa} is not positive; there is no contraction to audit");
    }
    let prefactor: S = value(&a.prefactor)?;
    let kf = kappa.to_f64();
    let times = common.tgrid.clone().unwrap_or_else(|| default_time_grid(kf));
    let audit = contraction_audit(&gen.to_f64(), &d.to_f64(), kf, prefactor.to_f64(), &times)?;
    let g = gen.graph();
    let mut plot = Plot::new();
    plot.add("audit", &plot_csv(&audit, g));
    plot.save(common)?;
    let verdict = if audit.pass { "PASS" } else { "FAIL" };
    let summary = format!("audit {verdict}: κ = {}, K = {}, max ratio {}", format_value(&kappa), format_value(&prefactor), audit.max_ratio);
    emit(common, &audit_csv(&audit, g), &summary)?;
    Ok(Verdict::Pass.and(audit.pass))
}

/// Audit every certificate numerically and against the spectral gap,
/// appending the outcome to `report`.
fn check_certificates<S: Scalar>(
    gen: &Generator<S>,
    certs: &[Certificate<S>],
    common: &Common,
    report: &mut String,
    plot: &mut Plot,
) -> Result<Verdict> {
    let mut verdict = Verdict::Pass;
    for cert in certs {
        let _ = write!(report, "{cert}");
        if gen.len() > AUDIT_LIMIT {
            let _ = writeln!(report, "audit skipped: {} states exceeds {AUDIT_LIMIT}; run `audit` explicitly\n", gen.len());
            continue;
        }
        let audit = audit_certificate(gen, cert, common.tgrid.as_deref())?;
        plot.add(&cert.label, &plot_csv(&audit, gen.graph()));
        let _ = writeln!(report, "audit {} max ratio {}", if audit.pass { "PASS" } else { "FAIL" }, audit.max_ratio);
        verdict = verdict.and(audit.pass);
        match eigen_vs_certificate(gen, std::slice::from_ref(cert)) {
            Ok(r) => {
                let _ = writeln!(report, "spectral gap {} ≥ κ\n", r.spectrum.gap);
            }
            Err(Error::SpectralViolation(msg)) => {
                let _ = writeln!(report, "spectral check FAIL: {msg}\n");
                verdict = Verdict::AuditFailed;
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(verdict)
}

fn finish(common: &Common, report: &str, plot: &Plot, verdict: Verdict, what: &str) -> Result<Verdict> {
    plot.save(common)?;
    let status = if verdict == Verdict::Pass { "all audits pass" } else { "an audit FAILED" };
    emit(common, report, &format!("{what}: {status}"))?;
    Ok(verdict)
}

pub fn metric_design(a: &MetricDesignArgs, common: &Common) -> Result<Verdict> {
    let text = read(&a.chain)?;
    let alpha_float = a.alpha.as_deref().is_some_and(markov_ricci::scalar::is_float_literal);
    match mode_for(common, &[&text]) {
        Mode::Rational if !alpha_float || common.mode.is_some() => metric_design_in::<Rational>(a, common, &text),
        _ => metric_design_in::<f64>(a, common, &text),
    }
}

fn constant_rates<S: Scalar>(chain: &BirthDeathChain<S>) -> Option<(S, S)> {
    let d = chain.depth();
    let (a, b) = (chain.a(1), chain.b(0));
    ((1..=d).all(|n| chain.a(n) == a) && (0..d).all(|n| chain.b(n) == b)).then_some((a, b))
}

fn metric_design_in<S: Scalar>(a: &MetricDesignArgs, common: &Common, text: &str) -> Result<Verdict> {
    let chain: BirthDeathChain<S> = parse_chain(text).with_context(|| format!("in `{}`", a.chain.display()))?;
    let gen = chain.to_generator();
    let depth = chain.depth();
    let identity: Vec<S> = (0..=depth).map(|n| S::int(n as i64)).collect();
    let mut report = String::new();
    let mut certs = Vec::new();
    let kappa_g = bd_curvature(&chain);
    let _ = writeln!(report, "chain on {{0, …, {depth}}}\ngraph-metric curvature {}", format_value(&kappa_g));
    if kappa_g > S::zero() {
        certs.push(Certificate::new("graph-metric", Claim::Ricci, CertificateMetric::Profile(identity.clone()), kappa_g)
            .with_evidence("nearest-neighbor rate differences"));
    }
    let mu = chain.invariant_measure();
    let mean: S = mu.iter().zip(&identity).map(|(m, n)| m.clone() * n.clone()).sum();
    let g: Vec<S> = identity.iter().map(|n| n.clone() - mean.clone()).collect();
    let design = poisson_metric(&chain, &g)?;
    let values: Vec<String> = design.h.iter().map(format_value).collect();
    let _ = writeln!(report, "poisson metric h = {}", values.join(" "));
    if let (Some(big), Some(small)) = (&design.big_k, &design.small_k) {
        let _ = writeln!(report, "K(g) = {}, k(g) = {}", format_value(big), format_value(small));
    }
    certs.push(
        Certificate::new("poisson-metric", Claim::Ricci, CertificateMetric::Table(design.length_metric(gen.graph())?), design.kappa.clone())
            .with_evidence("solution of −ℒh = n − mean, rate 1/K(g)"),
    );
    let alpha = a.alpha.as_deref().map(value::<S>).transpose()?;
    match w1_decay_certificate(&chain, alpha) {
        Ok(decay) => certs.push(
            Certificate::new("w1-decay", Claim::W1Decay, CertificateMetric::Profile(identity), decay.rate)
                .with_prefactor(decay.prefactor)
                .with_evidence(match decay.alpha {
                    Some(al) => format!("bounded-below branch with α = {al}"),
                    None => "comparison of the Poisson metric with d_G".into(),
                }),
        ),
        Err(e) => {
            let _ = writeln!(report, "no W1 decay certificate: {e}");
        }
    }
    if let Some((da, db)) = constant_rates(&chain) {
        match reference_case_solver(&da, &db, Some(depth)) {
            Ok(r) => {
                let _ = writeln!(report, "constant rates: reference case {:?}, κ = {}", r.case, format_value(&r.design.kappa));
            }
            Err(e) => {
                let _ = writeln!(report, "constant rates: no reference case ({e})");
            }
        }
    }
    report.push('\n');
    let mut plot = Plot::new();
    let verdict = check_certificates(&gen, &certs, common, &mut report, &mut plot)?;
    finish(common, &report, &plot, verdict, "metric-design")
}

pub fn lyapunov(a: &LyapunovArgs, common: &Common) -> Result<Verdict> {
    let gtext = read(&a.generator)?;
    let ltext = read(&a.lyapunov)?;
    let beta_float = a.beta.as_deref().is_some_and(markov_ricci::scalar::is_float_literal);
    match mode_for(common, &[&gtext, &ltext]) {
        Mode::Rational if !beta_float || common.mode.is_some() => lyapunov_in::<Rational>(a, common, &gtext, &ltext),
        _ => lyapunov_in::<f64>(a, common, &gtext, &ltext),
    }
}

fn lyapunov_in<S: Scalar>(a: &LyapunovArgs, common: &Common, gtext: &str, ltext: &str) -> Result<Verdict> {
    let gen: Generator<S> = generator(&a.generator, gtext)?;
    let input = parse_lyapunov::<S>(ltext, gen.graph()).with_context(|| format!("in `{}`", a.lyapunov.display()))?;
    let mut report = String::new();
    let d_pi = match minorization_pseudometric(&gen, &input.k_set) {
        Ok((d, _)) => {
            let _ = writeln!(report, "K-set pseudo-metric from minorization");
            d
        }
        Err(first) => {
            let kappa_g = curvature_lower_bound(&gen, &Metric::graph(gen.graph()))?.kappa;
            let r = S::max_of(S::zero(), -kappa_g);
            let jstar = markov_ricci::scalar::min_all(
                (0..gen.len()).flat_map(|x| gen.jumps(x).map(|(_, v)| v.clone()).collect::<Vec<_>>()),
            )
            .ok_or_else(|| anyhow!("generator has no jumps"))?;
            let d = curvature_pseudometric(&gen, &input.k_set, &r, &jstar)
                .with_context(|| format!("minorization failed ({first}) and so did the curvature route"))?;
            let _ = writeln!(report, "K-set pseudo-metric from d_G curvature (minorization failed: {first})");
            d
        }
    };
    let c = fitted_constant(&d_pi, &input.v);
    let beta = a.beta.as_deref().map(value::<S>).transpose()?;
    let mut data = LyapunovData::new(input.v, input.r, input.b, input.k_set, d_pi, c, beta)?;
    if let Some(m) = a.beta_grid {
        let (beta, _) = best_beta(&gen, &data, m)?;
        data = data.with_beta(beta);
    }
    let bound = lyapunov_kappa(&gen, &data)?;
    let _ = writeln!(report, "C = {}, β = {}, κ = {}", format_value(&data.c), format_value(&bound.beta), format_value(&bound.kappa));
    let lp = curvature_sweep(&gen, &bound.metric, SweepScope::AllPairs)?;
    let confirmed = lp.kappa >= bound.kappa.clone() - S::slack();
    let _ = writeln!(report, "LP sweep in d_β: {} ({})\n", format_value(&lp.kappa), if confirmed { "confirms κ" } else { "BELOW κ" });
    let mut plot = Plot::new();
    let verdict = check_certificates(&gen, std::slice::from_ref(&bound.certificate), common, &mut report, &mut plot)?;
    finish(common, &report, &plot, verdict.and(confirmed), "lyapunov")
}

pub fn glauber(a: &GlauberArgs, common: &Common) -> Result<Verdict> {
    let text = read(&a.model)?;
    match mode_for(common, &[&text]) {
        Mode::Rational => glauber_in::<Rational>(a, common, &text),
        Mode::Float => glauber_in::<f64>(a, common, &text),
    }
}

fn glauber_in<S: Scalar>(a: &GlauberArgs, common: &Common, text: &str) -> Result<Verdict> {
    let model: ModelSpec<S> = parse_model(text).with_context(|| format!("in `{}`", a.model.display()))?;
    let mut report = String::new();
    match model {
        ModelSpec::Spin { betas } => {
            require_float::<S>("the spin model")?;
            let formula = spin_curvature(&betas)?;
            let _ = writeln!(report, "spin model on {} sites: 1 − sup Σ c_ij = {}", betas.len(), format_value(&formula));
            let (ps, cf) = spin_model(&betas)?;
            certify_product(&ps, &cf, common, report)
        }
        ModelSpec::Queue { lambda, betas, trunc } => {
            require_float::<S>("the queue model")?;
            let trunc = common.trunc.unwrap_or(trunc);
            let formula = queue_curvature(lambda, &betas)?;
            let _ = writeln!(report, "queue model on {} sites: 1 − λ sup Σ (1 − e^(−β)) = {}", betas.len(), format_value(&formula.kappa));
            let (ps, cf) = queue_model(lambda, &betas, trunc)?;
            certify_product(&ps, &cf, common, report)
        }
        ModelSpec::Table { space, family } => certify_product(&space, &family, common, report),
    }
}

fn require_float<S: Scalar>(what: &'static str) -> Result<()> {
    if S::EXACT {
        return Err(Error::RequiresFloat(what).into());
    }
    Ok(())
}

fn certify_product<S: Scalar, F: ConditionalFamily<S>>(
    ps: &ProductSpace<S>,
    cf: &F,
    common: &Common,
    mut report: String,
) -> Result<Verdict> {
    let gen = gibbs_generator(ps, cf)?;
    if ps.len() <= SWEEP_LIMIT {
        let lp = curvature_sweep(&gen, &ps.metric()?, SweepScope::AllPairs)?;
        let _ = writeln!(report, "LP sweep in d_L1: {}", format_value(&lp.kappa));
    }
    match glauber_certificate(ps, cf) {
        Ok(cert) => {
            report.push('\n');
            let mut plot = Plot::new();
            let verdict = check_certificates(&gen, &[cert], common, &mut report, &mut plot)?;
            finish(common, &report, &plot, verdict, "glauber")
        }
        Err(Error::Rejected(msg)) => {
            let _ = writeln!(report, "no certificate: {msg}");
            finish(common, &report, &Plot::new(), Verdict::Pass, "glauber")
        }
        Err(e) => Err(e.into()),
    }
}
