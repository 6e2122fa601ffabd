//! Dense Gaussian elimination over any [`Scalar`].

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Solve `a x = b` for square `a`. Exact pivoting picks the first nonzero
/// entry; float pivoting picks the largest magnitude.
pub fn solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Result<Vec<S>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::Precondition("matrix must be square".into()));
    }
    for col in 0..n {
        let pivot = if S::EXACT {
            (col..n).find(|&r| !a[r][col].is_zero())
        } else {
            (col..n)
                .max_by(|&r, &s| {
                    a[r][col]
                        .abs()
                        .partial_cmp(&a[s][col].abs())
                        .unwrap_or(std::cmp::Ordering::Equal)
                })
                .filter(|&r| a[r][col].abs() > S::pivot_eps())
        };
        let Some(p) = pivot else {
            return Err(Error::Singular(format!("no pivot in column {col}")));
        };
        a.swap(col, p);
        b.swap(col, p);
        let inv = S::one() / a[col][col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone() * inv.clone();
            for c in col..n {
                let delta = factor.clone() * a[col][c].clone();
                a[r][c] -= delta;
            }
            let delta = factor * b[col].clone();
            b[r] -= delta;
        }
    }
    Ok((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn solves_small_exact_system() {
        let q = |n, d| Rational::ratio(n, d);
        let a = vec![vec![q(2, 1), q(1, 1)], vec![q(1, 1), q(3, 1)]];
        let x = solve(a, vec![q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(x, vec![q(4, 5), q(7, 5)]);
    }

    #[test]
    fn detects_singularity() {
        let a = vec![vec![1.0, 2.0], vec![2.0, 4.0]];
        assert!(matches!(solve(a, vec![1.0, 2.0]), Err(Error::Singular(_))));
    }
}
