//! Contraction claims with the evidence that produced them.

use std::fmt;

use crate::error::Result;
use crate::graph::Graph;
use crate::metric::Metric;
use crate::scalar::Scalar;

/// What a certificate asserts about `P_t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// `Ric(ℒ, d) ≥ κ`, hence `W_d(P_t(x,·), P_t(y,·)) ≤ e^{−κt} d(x,y)`.
    Ricci,
    /// `T_c(P_t(x,·), P_t(y,·)) ≤ e^{−κt} c(x,y)` for a cost `c`.
    CostContraction,
    /// `W_d(P_t(x,·), P_t(y,·)) ≤ K e^{−κt} d(x,y)` with a prefactor.
    W1Decay,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Claim::Ricci => "ricci",
            Claim::CostContraction => "cost-contraction",
            Claim::W1Decay => "w1-decay",
        })
    }
}

/// The distance a certificate is stated in.
#[derive(Debug, Clone, PartialEq)]
pub enum CertificateMetric<S> {
    /// `h(d_G(x,y))` for `h` tabulated on hop counts.
    Profile(Vec<S>),
    Table(Metric<S>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate<S> {
    pub label: String,
    pub claim: Claim,
    pub metric: CertificateMetric<S>,
    pub kappa: S,
    pub prefactor: S,
    pub evidence: Vec<String>,
}

impl<S: Scalar> Certificate<S> {
    pub fn new(label: impl Into<String>, claim: Claim, metric: CertificateMetric<S>, kappa: S) -> Self {
        Certificate { label: label.into(), claim, metric, kappa, prefactor: S::one(), evidence: Vec::new() }
    }

    pub fn with_prefactor(mut self, prefactor: S) -> Self {
        self.prefactor = prefactor;
        self
    }

    pub fn with_evidence(mut self, line: impl Into<String>) -> Self {
        self.evidence.push(line.into());
        self
    }

    /// The distance table on `g`.
    pub fn metric_on(&self, g: &Graph) -> Result<Metric<S>> {
        match &self.metric {
            CertificateMetric::Table(m) => Ok(m.clone()),
            CertificateMetric::Profile(h) => Metric::pullback_graph(g, h),
        }
    }

    pub fn to_f64(&self) -> Certificate<f64> {
        Certificate {
            label: self.label.clone(),
            claim: self.claim,
            metric: match &self.metric {
                CertificateMetric::Profile(h) => CertificateMetric::Profile(h.iter().map(|v| v.to_f64()).collect()),
                CertificateMetric::Table(m) => CertificateMetric::Table(m.to_f64()),
            },
            kappa: self.kappa.to_f64(),
            prefactor: self.prefactor.to_f64(),
            evidence: self.evidence.clone(),
        }
    }
}

impl<S: Scalar> fmt::Display for Certificate<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "certificate {}", self.label)?;
        writeln!(f, "claim {}", self.claim)?;
        writeln!(f, "kappa {}", self.kappa)?;
        writeln!(f, "prefactor {}", self.prefactor)?;
        match &self.metric {
            CertificateMetric::Profile(h) => {
                let values: Vec<String> = h.iter().map(|v| v.to_string()).collect();
                writeln!(f, "metric profile {}", values.join(" "))?;
            }
            CertificateMetric::Table(m) => writeln!(f, "metric table {:?} on {} states", m.kind(), m.len())?,
        }
        writeln!(f, "evidence")?;
        for line in &self.evidence {
            writeln!(f, "  - {line}")?;
        }
        Ok(())
    }
}
