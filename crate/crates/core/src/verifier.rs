//! Independent numerical checks of certificates: the semigroup by
//! uniformization, `W_1` decay of transition rows along a time grid, and
//! the spectral gap.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::certificate::Certificate;
use crate::error::{pre, Error, Result};
use crate::graph::{check_reversibility, invariant_measure, Generator};
use crate::measure::DiscreteMeasure;
use crate::metric::Metric;
use crate::scalar::Scalar;
use crate::transport::transport_cost;

/// Poisson tail mass at which the uniformization series stops.
const SERIES_TAIL: f64 = 1e-14;
/// Largest `Λt` summed directly; longer times use repeated squaring.
const DIRECT_HORIZON: f64 = 50.0;
/// Entries below this are treated as zero when rows become measures.
const ROW_FLOOR: f64 = 1e-16;
/// Audit tolerance on `W_1 / bound`.
pub const AUDIT_TOLERANCE: f64 = 1e-8;

/// `P_t = e^{tℒ}` as a dense row-stochastic matrix.
#[derive(Debug, Clone)]
pub struct SemigroupSlice {
    pub t: f64,
    pub matrix: DMatrix<f64>,
}

impl SemigroupSlice {
    /// Row `P_t(x, ·)` as a measure.
    pub fn row(&self, x: usize) -> DiscreteMeasure<f64> {
        let n = self.matrix.ncols();
        DiscreteMeasure::new((0..n).map(|y| (y, self.matrix[(x, y)])).filter(|(_, w)| *w > ROW_FLOOR))
            .expect("entries are clamped nonnegative")
    }
}

fn uniformized(q: &DMatrix<f64>, t: f64, rate: f64) -> DMatrix<f64> {
    let n = q.nrows();
    let p = DMatrix::<f64>::identity(n, n) + q / rate;
    let mean = rate * t;
    let mut weight = (-mean).exp();
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut acc = &power * weight;
    let mut mass = weight;
    let mut k = 0u32;
    while 1.0 - mass > SERIES_TAIL && k < 10_000 {
        k += 1;
        power = &power * &p;
        weight *= mean / k as f64;
        acc += &power * weight;
        mass += weight;
    }
    acc
}

/// `P_t` by uniformization `ℒ = Λ(P − I)`, `P_t = Σ_k e^{−Λt}(Λt)^k/k! P^k`,
/// with squaring once `Λt` exceeds the direct horizon.
pub fn transition_matrix<S: Scalar>(gen: &Generator<S>, t: f64) -> Result<SemigroupSlice> {
    pre(t >= 0.0 && t.is_finite(), || format!("time must be finite and nonnegative, got {t}"))?;
    let q = gen.dense_f64();
    let n = q.nrows();
    let rate = gen.max_total_rate().to_f64();
    if t == 0.0 || rate == 0.0 {
        return Ok(SemigroupSlice { t, matrix: DMatrix::identity(n, n) });
    }
    let mut squarings = 0;
    let mut step = t;
    while rate * step > DIRECT_HORIZON {
        step /= 2.0;
        squarings += 1;
    }
    let mut m = uniformized(&q, step, rate);
    for _ in 0..squarings {
        m = &m * &m;
    }
    m.iter_mut().for_each(|v| {
        if *v < 0.0 {
            *v = 0.0
        }
    });
    for mut row in m.row_iter_mut() {
        let s: f64 = row.iter().sum();
        row /= s;
    }
    Ok(SemigroupSlice { t, matrix: m })
}

/// One `(pair, t)` entry of an audit.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditRow {
    pub x: usize,
    pub y: usize,
    pub t: f64,
    pub w1: f64,
    pub bound: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContractionAudit {
    pub kappa: f64,
    pub prefactor: f64,
    pub times: Vec<f64>,
    pub rows: Vec<AuditRow>,
    pub max_ratio: f64,
    pub pass: bool,
}

/// `{0.1, 0.5, 1, 2, 5} / κ`.
pub fn default_time_grid(kappa: f64) -> Vec<f64> {
    [0.1, 0.5, 1.0, 2.0, 5.0].iter().map(|s| s / kappa).collect()
}

/// `W_d(P_t(x,·), P_t(y,·)) / (K e^{−κt} d(x,y))` for every unordered pair
/// and every time; passes when all ratios are at most `1 + 1e-8`.
pub fn contraction_audit(
    gen: &Generator<f64>,
    d: &Metric<f64>,
    kappa: f64,
    prefactor: f64,
    times: &[f64],
) -> Result<ContractionAudit> {
    pre(d.len() == gen.len(), || format!("metric has {} states, generator {}", d.len(), gen.len()))?;
    pre(prefactor > 0.0, || format!("prefactor must be positive, got {prefactor}"))?;
    let n = gen.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    let mut rows = Vec::with_capacity(pairs.len() * times.len());
    for &t in times {
        let slice = transition_matrix(gen, t)?;
        let measures: Vec<DiscreteMeasure<f64>> = (0..n).map(|x| slice.row(x)).collect();
        let at_t = pairs
            .par_iter()
            .map(|&(x, y)| {
                let w1 = transport_cost(&measures[x], &measures[y], d)?.cost;
                let bound = prefactor * (-kappa * t).exp() * d.get(x, y);
                Ok(AuditRow { x, y, t, w1, bound, ratio: w1 / bound })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(at_t);
    }
    let max_ratio = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let pass = rows.iter().all(|r| r.ratio <= 1.0 + AUDIT_TOLERANCE);
    Ok(ContractionAudit { kappa, prefactor, times: times.to_vec(), rows, max_ratio, pass })
}

/// Audit a certificate on its generator, on the default grid unless
/// `times` is given.
pub fn audit_certificate<S: Scalar>(
    gen: &Generator<S>,
    cert: &Certificate<S>,
    times: Option<&[f64]>,
) -> Result<ContractionAudit> {
    let d = cert.metric_on(gen.graph())?.to_f64();
    let kappa = cert.kappa.to_f64();
    let grid = match times {
        Some(t) => t.to_vec(),
        None => default_time_grid(kappa),
    };
    contraction_audit(&gen.to_f64(), &d, kappa, cert.prefactor.to_f64(), &grid)
}

/// Spectral data of `−ℒ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Smallest real part over the nonzero spectrum.
    pub gap: f64,
    pub reversible: bool,
}

fn spectrum<S: Scalar>(gen: &Generator<S>) -> Result<Spectrum> {
    pre(gen.len() >= 2, || "spectral gap needs at least two states".into())?;
    let fgen = gen.to_f64();
    let mu = invariant_measure(&fgen)?;
    let reversible = check_reversibility(&fgen, &mu);
    let q = fgen.dense_f64();
    let n = q.nrows();
    if reversible {
        let root: Vec<f64> = (0..n).map(|x| mu.get(x).sqrt()).collect();
        let sym = DMatrix::from_fn(n, n, |i, j| -q[(i, j)] * root[i] / root[j]);
        let sym = (&sym + sym.transpose()) * 0.5;
        let mut eig: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
        eig.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
        return Ok(Spectrum { gap: eig[1], reversible });
    }
    let mut eig: Vec<(f64, f64)> = (-q).complex_eigenvalues().iter().map(|c| (c.re, c.im)).collect();
    eig.sort_by(|a, b| a.0.hypot(a.1).partial_cmp(&b.0.hypot(b.1)).expect("finite eigenvalues"));
    let gap = eig[1..].iter().map(|(re, _)| *re).fold(f64::INFINITY, f64::min);
    if !gap.is_finite() {
        return Err(Error::NoConvergence("eigenvalue computation returned non-finite values".into()));
    }
    Ok(Spectrum { gap, reversible })
}

/// `λ₁`: the smallest real part of the nonzero spectrum of `−ℒ`.
pub fn spectral_gap<S: Scalar>(gen: &Generator<S>) -> Result<f64> {
    spectrum(gen).map(|s| s.gap)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub spectrum: Spectrum,
    /// `(label, κ)` for every certificate checked.
    pub checked: Vec<(String, f64)>,
}

/// Assert `λ₁ ≥ κ` (up to `1e-8`) for every certificate; a violation is a
/// hard error since it means an upstream bound is wrong.
pub fn eigen_vs_certificate<S: Scalar>(gen: &Generator<S>, certs: &[Certificate<S>]) -> Result<EigenReport> {
    let spectrum = spectrum(gen)?;
    let mut checked = Vec::new();
    for cert in certs {
        let kappa = cert.kappa.to_f64();
        if spectrum.gap < kappa - AUDIT_TOLERANCE {
            return Err(Error::SpectralViolation(format!(
                "certificate `{}` claims κ = {kappa} but the spectral gap is {}",
                cert.label, spectrum.gap
            )));
        }
        checked.push((cert.label.clone(), kappa));
    }
    Ok(EigenReport { spectrum, checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> Generator<f64> {
        Generator::from_rates(["0", "1"], [(0, 1, 1.0), (1, 0, 1.0)]).unwrap()
    }

    #[test]
    fn two_point_semigroup() {
        let gen = two_point();
        for t in [0.0, 0.3, 1.0, 40.0, 80.0] {
            let p = transition_matrix(&gen, t).unwrap();
            assert!((p.matrix[(0, 0)] - (1.0 + (-2.0 * t).exp()) / 2.0).abs() < 1e-12, "t = {t}");
        }
        assert!(transition_matrix(&gen, -1.0).is_err());
    }

    #[test]
    fn two_point_audit_is_tight() {
        let gen = two_point();
        let d = Metric::graph(gen.graph());
        let audit = contraction_audit(&gen, &d, 2.0, 1.0, &default_time_grid(2.0)).unwrap();
        assert!(audit.pass);
        assert!(audit.rows.iter().all(|r| (r.ratio - 1.0).abs() < 1e-9));
        let inflated = contraction_audit(&gen, &d, 2.5, 1.0, &default_time_grid(2.0)).unwrap();
        assert!(!inflated.pass);
    }

    #[test]
    fn rotating_cycle_gap() {
        let gen = Generator::from_rates(
            ["0", "1", "2"],
            [(0, 1, 2.0), (1, 2, 2.0), (2, 0, 2.0), (1, 0, 1.0), (2, 1, 1.0), (0, 2, 1.0)],
        )
        .unwrap();
        // Circulant: eigenvalues of −Q are 3 − 2ω − ω², real part 3 − 3cos(2π/3) = 9/2.
        let gap = spectral_gap(&gen).unwrap();
        assert!((gap - 4.5).abs() < 1e-9);
    }
}
