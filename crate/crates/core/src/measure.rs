use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finitely supported nonnegative measure. Atoms are kept sorted by vertex
/// with zero weights dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure<S> {
    atoms: Vec<(usize, S)>,
}

impl<S: Scalar> DiscreteMeasure<S> {
    pub fn new(atoms: impl IntoIterator<Item = (usize, S)>) -> Result<Self> {
        let mut atoms: Vec<(usize, S)> = atoms.into_iter().collect();
        if let Some((v, w)) = atoms.iter().find(|(_, w)| *w < S::zero()) {
            return Err(Error::InvalidMeasure(format!("negative weight {w} at vertex {v}")));
        }
        atoms.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(usize, S)> = Vec::with_capacity(atoms.len());
        for (v, w) in atoms {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += w,
                _ => merged.push((v, w)),
            }
        }
        merged.retain(|(_, w)| !w.is_zero());
        Ok(DiscreteMeasure { atoms: merged })
    }

    pub fn from_dense(weights: &[S]) -> Result<Self> {
        Self::new(weights.iter().cloned().enumerate())
    }

    pub fn zero() -> Self {
        DiscreteMeasure { atoms: Vec::new() }
    }

    pub fn dirac(v: usize, mass: S) -> Result<Self> {
        Self::new([(v, mass)])
    }

    pub fn atoms(&self) -> &[(usize, S)] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass(&self) -> S {
        self.atoms.iter().map(|(_, w)| w.clone()).sum()
    }

    pub fn get(&self, v: usize) -> S {
        self.atoms
            .binary_search_by_key(&v, |(u, _)| *u)
            .map(|i| self.atoms[i].1.clone())
            .unwrap_or_else(|_| S::zero())
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.atoms.iter().map(|(v, _)| *v)
    }

    pub fn scaled(&self, c: &S) -> Result<Self> {
        Self::new(self.atoms.iter().map(|(v, w)| (*v, w.clone() * c.clone())))
    }

    /// `∫ f dμ` for `f` indexed by vertex.
    pub fn integrate(&self, f: &[S]) -> S {
        self.atoms.iter().map(|(v, w)| w.clone() * f[*v].clone()).sum()
    }

    pub fn to_dense(&self, n: usize) -> Vec<S> {
        let mut out = vec![S::zero(); n];
        for (v, w) in &self.atoms {
            out[*v] = w.clone();
        }
        out
    }
}
