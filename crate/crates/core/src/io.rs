//! Line-oriented input formats and CSV reports.
//!
//! Every input file uses `#` comments and one directive per line. Values
//! are decimals or `p/q`. Parse errors carry the 1-based line number.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::birth_death::BirthDeathChain;
use crate::curvature::CurvatureReport;
use crate::error::{Error, Result};
use crate::glauber::{ProductSpace, TableFamily};
use crate::graph::{Generator, Graph};
use crate::metric::Metric;
use crate::scalar::{is_float_literal, Scalar};
use crate::transport::TransportPlan;
use crate::verifier::ContractionAudit;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-blank, comment-stripped lines with their numbers, split on
/// whitespace.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn value<S: Scalar>(line: usize, tok: &str) -> Result<S> {
    S::parse_value(tok).ok_or_else(|| err(line, format!("`{tok}` is not a number")))
}

fn count(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| err(line, format!("`{tok}` is not a nonnegative integer")))
}

fn arity(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() == n {
        Ok(())
    } else {
        Err(err(line, format!("`{}` takes {} arguments, got {}", tokens[0], n - 1, tokens.len() - 1)))
    }
}

/// `key=value` pairs after the directive.
fn keyed(line: usize, tokens: &[&str], keys: &[&str]) -> Result<HashMap<String, String>> {
    let mut out = HashMap::new();
    for tok in &tokens[1..] {
        let (k, v) = tok.split_once('=').ok_or_else(|| err(line, format!("expected key=value, got `{tok}`")))?;
        if !keys.contains(&k) {
            return Err(err(line, format!("unknown key `{k}` for `{}`", tokens[0])));
        }
        out.insert(k.to_string(), v.to_string());
    }
    if let Some(k) = keys.iter().find(|k| !out.contains_key(**k)) {
        return Err(err(line, format!("`{}` needs {k}=", tokens[0])));
    }
    Ok(out)
}

fn vertex(line: usize, g: &Graph, name: &str) -> Result<usize> {
    g.vertex(name).map_err(|_| err(line, format!("unknown vertex `{name}`")))
}

/// Whether any numeric value in an input file is written as a decimal or
/// in exponent notation; such inputs default to float mode.
pub fn has_float_values(text: &str) -> bool {
    lines(text).any(|(_, t)| {
        let values: Vec<&str> = match t[0] {
            "rate" | "weight" | "dist" | "beta" => t.get(3).into_iter().copied().collect(),
            "a" | "b" | "V" if t.len() == 3 => vec![t[2]],
            "r" | "b" => t.get(1).into_iter().copied().collect(),
            "conditional" => t.iter().skip_while(|s| **s != ":").skip(1).copied().collect(),
            _ => t[1..].iter().filter_map(|s| s.split_once('=').map(|(_, v)| v)).collect(),
        };
        values.iter().any(|v| is_float_literal(v))
    })
}

/// Generator file: `vertex <id>` declarations and `rate <x> <y> <value>`.
pub fn parse_generator<S: Scalar>(text: &str) -> Result<Generator<S>> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut rates: Vec<(usize, usize, S)> = Vec::new();
    let mut seen = HashMap::new();
    for (line, t) in lines(text) {
        match t[0] {
            "vertex" => {
                arity(line, &t, 2)?;
                if index.insert(t[1].to_string(), names.len()).is_some() {
                    return Err(err(line, format!("vertex `{}` declared twice", t[1])));
                }
                names.push(t[1].to_string());
            }
            "rate" => {
                arity(line, &t, 4)?;
                let lookup = |s: &str| index.get(s).copied().ok_or_else(|| err(line, format!("unknown vertex `{s}`")));
                let (x, y) = (lookup(t[1])?, lookup(t[2])?);
                if x == y {
                    return Err(err(line, "self rates are not allowed"));
                }
                let r: S = value(line, t[3])?;
                if r < S::zero() {
                    return Err(err(line, format!("negative rate {r}")));
                }
                if let Some(first) = seen.insert((x, y), line) {
                    return Err(err(line, format!("rate {} -> {} already given on line {first}", t[1], t[2])));
                }
                rates.push((x, y, r));
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    if names.is_empty() {
        return Err(err(0, "no vertices declared"));
    }
    Generator::from_rates(names, rates)
}

/// Weight file: `weight <x> <y> <value>` for every edge; yields the length
/// metric of the weights.
pub fn parse_weights<S: Scalar>(text: &str, g: &Graph) -> Result<Metric<S>> {
    let mut w: HashMap<(usize, usize), S> = HashMap::new();
    for (line, t) in lines(text) {
        if t[0] != "weight" {
            return Err(err(line, format!("unknown directive `{}`", t[0])));
        }
        arity(line, &t, 4)?;
        let (x, y) = (vertex(line, g, t[1])?, vertex(line, g, t[2])?);
        if !g.has_edge(x, y) {
            return Err(err(line, format!("{} and {} are not neighbors", t[1], t[2])));
        }
        let v: S = value(line, t[3])?;
        if !(v > S::zero()) {
            return Err(err(line, format!("weight must be positive, got {v}")));
        }
        w.insert((x.min(y), x.max(y)), v);
    }
    if let Some((x, y)) = g.edges().find(|&(x, y)| !w.contains_key(&(x.min(y), x.max(y)))) {
        return Err(err(0, format!("edge {} - {} has no weight", g.name(x), g.name(y))));
    }
    Metric::length(g, |x, y| w[&(x.min(y), x.max(y))].clone())
}

/// Metric file: `dist <x> <y> <value>` for every unordered pair of distinct
/// vertices. Tables that violate the triangle inequality are kept as cost
/// functions.
pub fn parse_metric<S: Scalar>(text: &str, g: &Graph) -> Result<Metric<S>> {
    let n = g.len();
    let mut table: Vec<Option<S>> = vec![None; n * n];
    for (line, t) in lines(text) {
        if t[0] != "dist" {
            return Err(err(line, format!("unknown directive `{}`", t[0])));
        }
        arity(line, &t, 4)?;
        let (x, y) = (vertex(line, g, t[1])?, vertex(line, g, t[2])?);
        let v: S = value(line, t[3])?;
        if x == y {
            if !v.is_zero() {
                return Err(err(line, "distance from a vertex to itself must be zero"));
            }
            continue;
        }
        if let Some(old) = &table[x * n + y] {
            if *old != v {
                return Err(err(line, format!("conflicting distance for {} {}: {old} vs {v}", t[1], t[2])));
            }
        }
        table[x * n + y] = Some(v.clone());
        table[y * n + x] = Some(v);
    }
    let mut full = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            match &table[x * n + y] {
                _ if x == y => full.push(S::zero()),
                Some(v) => full.push(v.clone()),
                None => return Err(err(0, format!("no distance for {} {}", g.name(x), g.name(y)))),
            }
        }
    }
    Metric::custom(n, full)
}

/// Chain file: either `bd <D>` with `a <n> <value>` (death) and
/// `b <n> <value>` (birth) lines, or one of `mm-infinity lambda=<v>
/// trunc=<D>` and `binomial n=<n> p=<v>`.
pub fn parse_chain<S: Scalar>(text: &str) -> Result<BirthDeathChain<S>> {
    let mut entries = lines(text);
    let (line, head) = entries.next().ok_or_else(|| err(0, "empty chain file"))?;
    let closed = |chain: Result<BirthDeathChain<S>>, rest: &mut dyn Iterator<Item = (usize, Vec<&str>)>| {
        if let Some((l, t)) = rest.next() {
            return Err(err(l, format!("unexpected `{}` after a closed-form chain", t[0])));
        }
        chain.map_err(|e| err(line, e.to_string()))
    };
    match head[0] {
        "mm-infinity" => {
            let kv = keyed(line, &head, &["lambda", "trunc"])?;
            let chain = BirthDeathChain::mm_infinity(value(line, &kv["lambda"])?, count(line, &kv["trunc"])?);
            closed(chain, &mut entries)
        }
        "binomial" => {
            let kv = keyed(line, &head, &["n", "p"])?;
            let chain = BirthDeathChain::binomial(count(line, &kv["n"])?, value(line, &kv["p"])?);
            closed(chain, &mut entries)
        }
        "bd" => {
            arity(line, &head, 2)?;
            let depth = count(line, head[1])?;
            if depth == 0 {
                return Err(err(line, "depth must be at least 1"));
            }
            let mut a: Vec<Option<S>> = vec![None; depth + 1];
            let mut b: Vec<Option<S>> = vec![None; depth + 1];
            a[0] = Some(S::zero());
            b[depth] = Some(S::zero());
            for (l, t) in entries {
                let slot = match t[0] {
                    "a" => &mut a,
                    "b" => &mut b,
                    other => return Err(err(l, format!("unknown directive `{other}`"))),
                };
                arity(l, &t, 3)?;
                let n = count(l, t[1])?;
                if n > depth {
                    return Err(err(l, format!("state {n} is beyond depth {depth}")));
                }
                slot[n] = Some(value(l, t[2])?);
            }
            let fill = |v: Vec<Option<S>>, tag: &str| {
                v.into_iter()
                    .enumerate()
                    .map(|(n, x)| x.ok_or_else(|| err(0, format!("missing `{tag} {n}`"))))
                    .collect::<Result<Vec<S>>>()
            };
            BirthDeathChain::new(fill(a, "a")?, fill(b, "b")?)
        }
        other => Err(err(line, format!("unknown chain directive `{other}`"))),
    }
}

/// Drift data for the Lyapunov route.
#[derive(Debug, Clone, PartialEq)]
pub struct LyapunovInput<S> {
    pub v: Vec<S>,
    pub r: S,
    pub b: S,
    pub k_set: Vec<usize>,
}

/// Lyapunov file: `V <x> <value>` for every vertex, `r <v>`, `b <v>` and
/// `Kset <x> ...`.
pub fn parse_lyapunov<S: Scalar>(text: &str, g: &Graph) -> Result<LyapunovInput<S>> {
    let mut v: Vec<Option<S>> = vec![None; g.len()];
    let (mut r, mut b, mut k_set) = (None, None, None);
    for (line, t) in lines(text) {
        match t[0] {
            "V" => {
                arity(line, &t, 3)?;
                v[vertex(line, g, t[1])?] = Some(value(line, t[2])?);
            }
            "r" => {
                arity(line, &t, 2)?;
                r = Some(value(line, t[1])?);
            }
            "b" => {
                arity(line, &t, 2)?;
                b = Some(value(line, t[1])?);
            }
            "Kset" => {
                if t.len() < 2 {
                    return Err(err(line, "`Kset` needs at least one vertex"));
                }
                k_set = Some(t[1..].iter().map(|s| vertex(line, g, s)).collect::<Result<Vec<_>>>()?);
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    let v = v
        .into_iter()
        .enumerate()
        .map(|(x, val)| val.ok_or_else(|| err(0, format!("no `V` for {}", g.name(x)))))
        .collect::<Result<Vec<S>>>()?;
    Ok(LyapunovInput {
        v,
        r: r.ok_or_else(|| err(0, "missing `r`"))?,
        b: b.ok_or_else(|| err(0, "missing `b`"))?,
        k_set: k_set.ok_or_else(|| err(0, "missing `Kset`"))?,
    })
}

/// A product-space model for the Glauber route.
#[derive(Debug, Clone)]
pub enum ModelSpec<S> {
    Spin { betas: Vec<Vec<f64>> },
    Queue { lambda: f64, betas: Vec<Vec<f64>>, trunc: usize },
    Table { space: ProductSpace<S>, family: TableFamily<S> },
}

fn betas(entries: &[(usize, Vec<&str>)], n: usize, symmetric: bool) -> Result<Vec<Vec<f64>>> {
    let mut m = vec![vec![0.0; n]; n];
    for (line, t) in entries {
        if t[0] != "beta" {
            return Err(err(*line, format!("unknown directive `{}`", t[0])));
        }
        arity(*line, t, 4)?;
        let (i, j) = (count(*line, t[1])?, count(*line, t[2])?);
        if i >= n || j >= n || i == j {
            return Err(err(*line, format!("bad site pair ({i}, {j}) for {n} sites")));
        }
        let v: f64 = value(*line, t[3])?;
        m[i][j] = v;
        if symmetric {
            m[j][i] = v;
        }
    }
    Ok(m)
}

/// Model file: `spin N=<n>` or `queue N=<n> lambda=<v> trunc=<D>` followed
/// by `beta <i> <j> <v>` lines (sites numbered from 0; spin couplings are
/// symmetric), or a generic table built from `site <name> <value> ...`,
/// optional `block <site> ...` lines (single sites by default) and
/// `conditional <block> <boundary values> : <probabilities>` lines, the
/// boundary listed in site order and the probabilities over the block's
/// configurations with its first site most significant.
pub fn parse_model<S: Scalar>(text: &str) -> Result<ModelSpec<S>> {
    let entries: Vec<(usize, Vec<&str>)> = lines(text).collect();
    let (line, head) = entries.first().ok_or_else(|| err(0, "empty model file"))?;
    match head[0] {
        "spin" => {
            let kv = keyed(*line, head, &["N"])?;
            let n = count(*line, &kv["N"])?;
            Ok(ModelSpec::Spin { betas: betas(&entries[1..], n, true)? })
        }
        "queue" => {
            let kv = keyed(*line, head, &["N", "lambda", "trunc"])?;
            let n = count(*line, &kv["N"])?;
            Ok(ModelSpec::Queue {
                lambda: value(*line, &kv["lambda"])?,
                betas: betas(&entries[1..], n, false)?,
                trunc: count(*line, &kv["trunc"])?,
            })
        }
        "site" | "block" | "conditional" => parse_table(&entries),
        other => Err(err(*line, format!("unknown model directive `{other}`"))),
    }
}

fn parse_table<S: Scalar>(entries: &[(usize, Vec<&str>)]) -> Result<ModelSpec<S>> {
    let mut site_names: Vec<&str> = Vec::new();
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut conditionals = Vec::new();
    for (line, t) in entries {
        match t[0] {
            "site" => {
                if t.len() < 3 {
                    return Err(err(*line, "`site` needs a name and at least one value"));
                }
                if site_names.contains(&t[1]) {
                    return Err(err(*line, format!("site `{}` declared twice", t[1])));
                }
                site_names.push(t[1]);
                labels.push(t[2..].iter().map(|s| s.to_string()).collect());
            }
            "block" => {
                let block = t[1..]
                    .iter()
                    .map(|s| site_names.iter().position(|n| n == s).ok_or_else(|| err(*line, format!("unknown site `{s}`"))))
                    .collect::<Result<Vec<_>>>()?;
                if block.is_empty() {
                    return Err(err(*line, "empty block"));
                }
                blocks.push(block);
            }
            "conditional" => conditionals.push((*line, t)),
            other => return Err(err(*line, format!("unknown directive `{other}`"))),
        }
    }
    if blocks.is_empty() {
        blocks = (0..labels.len()).map(|i| vec![i]).collect();
    }
    let space = ProductSpace::hamming(labels.clone())?.with_blocks(blocks)?;
    let mut family = TableFamily::new();
    for (line, t) in conditionals {
        let colon = t.iter().position(|s| *s == ":").ok_or_else(|| err(line, "expected `:` before the probabilities"))?;
        if colon < 2 {
            return Err(err(line, "`conditional` needs a block index"));
        }
        let block = count(line, t[1])?;
        if block >= space.blocks().len() {
            return Err(err(line, format!("no block {block}")));
        }
        let outside: Vec<usize> = (0..space.sites()).filter(|i| !space.blocks()[block].contains(i)).collect();
        let given = &t[2..colon];
        if given.len() != outside.len() {
            return Err(err(line, format!("block {block} has {} boundary sites, got {}", outside.len(), given.len())));
        }
        let boundary = outside
            .iter()
            .zip(given)
            .map(|(&i, s)| labels[i].iter().position(|l| l == s).ok_or_else(|| err(line, format!("`{s}` is not a value of site {i}"))))
            .collect::<Result<Vec<_>>>()?;
        let law = t[colon + 1..].iter().map(|s| value(line, s)).collect::<Result<Vec<S>>>()?;
        family.insert(&space, block, boundary, law).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(ModelSpec::Table { space, family })
}

/// Rationals print as `p/q`, floats as the shortest string that round-trips.
pub fn format_value<S: Scalar>(v: &S) -> String {
    v.to_string()
}

fn push_row(out: &mut String, cells: &[&str]) {
    out.push_str(&cells.join(","));
    out.push('\n');
}

/// `x,y,distance,curvature` per pair and a closing `GLOBAL,κ` row.
pub fn curvature_csv<S: Scalar>(report: &CurvatureReport<S>, g: &Graph) -> String {
    let mut out = String::from("x,y,distance,curvature\n");
    for p in &report.pairs {
        push_row(&mut out, &[g.name(p.x), g.name(p.y), &format_value(&p.distance), &format_value(&p.curvature)]);
    }
    push_row(&mut out, &["GLOBAL", &format_value(&report.kappa)]);
    out
}

/// `x,y,mass` per transported unit of the plan.
pub fn plan_csv<S: Scalar>(plan: &TransportPlan<S>, g: &Graph) -> String {
    let mut out = String::from("x,y,mass\n");
    for (x, y, m) in &plan.flows {
        push_row(&mut out, &[g.name(*x), g.name(*y), &format_value(m)]);
    }
    out
}

fn pair_label(g: &Graph, x: usize, y: usize) -> String {
    format!("{}~{}", g.name(x), g.name(y))
}

/// `pair,t,w1,bound,ratio` per row and a closing verdict line.
pub fn audit_csv(audit: &ContractionAudit, g: &Graph) -> String {
    let mut out = String::from("pair,t,w1,bound,ratio\n");
    for r in &audit.rows {
        let cells = [pair_label(g, r.x, r.y), format_value(&r.t), format_value(&r.w1), format_value(&r.bound), format_value(&r.ratio)];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    let verdict = if audit.pass { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "VERDICT,{verdict},max_ratio={}", format_value(&audit.max_ratio));
    out
}

/// `(t, W₁)` curves per pair, for plotting.
pub fn plot_csv(audit: &ContractionAudit, g: &Graph) -> String {
    let mut out = String::from("pair,t,w1\n");
    for r in &audit.rows {
        let _ = writeln!(out, "{},{},{}", pair_label(g, r.x, r.y), format_value(&r.t), format_value(&r.w1));
    }
    out
}

/// Generator file text for `gen`, one `rate` line per ordered edge.
pub fn write_generator<S: Scalar>(gen: &Generator<S>) -> String {
    let g = gen.graph();
    let mut out = String::new();
    for name in g.names() {
        let _ = writeln!(out, "vertex {name}");
    }
    for x in 0..gen.len() {
        for (y, r) in gen.jumps(x) {
            let _ = writeln!(out, "rate {} {} {}", g.name(x), g.name(y), format_value(r));
        }
    }
    out
}

/// Metric file text listing every unordered pair.
pub fn write_metric<S: Scalar>(d: &Metric<S>, g: &Graph) -> String {
    let mut out = String::new();
    for x in 0..g.len() {
        for y in x + 1..g.len() {
            let _ = writeln!(out, "dist {} {} {}", g.name(x), g.name(y), format_value(&d.get(x, y)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    const PATH: &str = "# three-state path\nvertex a\nvertex b\nvertex c\nrate a b 1/2\nrate b a 1\nrate b c 2\nrate c b 3/4\n";

    #[test]
    fn generator_round_trip() {
        let gen: Generator<Rational> = parse_generator(PATH).unwrap();
        assert_eq!(gen.rate(0, 1), Rational::ratio(1, 2));
        assert_eq!(gen.rate(2, 1), Rational::ratio(3, 4));
        let again: Generator<Rational> = parse_generator(&write_generator(&gen)).unwrap();
        assert_eq!(again.dense_f64(), gen.dense_f64());
        assert!(!has_float_values(PATH));
        assert!(has_float_values("vertex a\nvertex b\nrate a b 0.5\nrate b a 1\n"));
    }

    #[test]
    fn errors_name_the_line() {
        let bad = "vertex a\nvertex b\nrate a b 1\nrate b a x\n";
        assert_eq!(parse_generator::<Rational>(bad).unwrap_err(), Error::Parse { line: 4, msg: "`x` is not a number".into() });
        let unknown = "vertex a\nedge a b\n";
        assert!(matches!(parse_generator::<f64>(unknown), Err(Error::Parse { line: 2, .. })));
        let missing = "vertex a\nrate a z 1\n";
        assert!(matches!(parse_generator::<f64>(missing), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn metric_and_weights() {
        let gen: Generator<Rational> = parse_generator(PATH).unwrap();
        let g = gen.graph();
        let w: Metric<Rational> = parse_weights("weight a b 2\nweight b c 3\n", g).unwrap();
        assert_eq!(w.get(0, 2), Rational::int(5));
        let d: Metric<Rational> = parse_metric(&write_metric(&w, g), g).unwrap();
        assert_eq!(d, Metric::custom(3, (0..9).map(|i| w.get(i / 3, i % 3)).collect()).unwrap());
        assert!(matches!(parse_metric::<Rational>("dist a b 1\n", g), Err(Error::Parse { line: 0, .. })));
    }

    #[test]
    fn chain_files() {
        let c: BirthDeathChain<Rational> = parse_chain("bd 2\na 1 1\na 2 2\nb 0 3\nb 1 4\n").unwrap();
        assert_eq!(c.b(1), Rational::int(4));
        let mm: BirthDeathChain<Rational> = parse_chain("mm-infinity lambda=3/2 trunc=4").unwrap();
        assert_eq!(mm, BirthDeathChain::mm_infinity(Rational::ratio(3, 2), 4).unwrap());
        let bin: BirthDeathChain<f64> = parse_chain("binomial n=3 p=0.25").unwrap();
        assert_eq!(bin.depth(), 3);
        assert!(matches!(parse_chain::<Rational>("bd 2\na 1 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_chain::<Rational>("binomial n=3"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn lyapunov_file() {
        let gen: Generator<Rational> = parse_generator(PATH).unwrap();
        let input: LyapunovInput<Rational> = parse_lyapunov("V a 1\nV b 2\nV c 4\nr 1\nb 2\nKset a b\n", gen.graph()).unwrap();
        assert_eq!(input.k_set, vec![0, 1]);
        assert_eq!(input.v[2], Rational::int(4));
    }

    #[test]
    fn model_files() {
        match parse_model::<f64>("spin N=2\nbeta 0 1 -0.5\n").unwrap() {
            ModelSpec::Spin { betas } => assert_eq!(betas[1][0], -0.5),
            other => panic!("unexpected {other:?}"),
        }
        match parse_model::<f64>("queue N=2 lambda=1 trunc=3\nbeta 0 1 0.5\n").unwrap() {
            ModelSpec::Queue { betas, trunc, .. } => assert_eq!((betas[1][0], trunc), (0.0, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let table = "site s 0 1\nsite t 0 1\nconditional 0 0 : 1/2 1/2\nconditional 0 1 : 1/4 3/4\n";
        match parse_model::<Rational>(table).unwrap() {
            ModelSpec::Table { space, .. } => assert_eq!(space.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_model::<Rational>("site s 0 1\nconditional 0 : 1/2 1/3\n"), Err(Error::Parse { line: 2, .. })));
    }
}
