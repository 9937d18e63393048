//! Dense exact Gaussian elimination over the rationals.

use num_traits::{One, Zero};

use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub rank: usize,
    pub unknowns: usize,
    pub consistent: bool,
    /// Present only when the system is consistent with full column rank.
    pub unique: Option<Vec<Rational>>,
}

impl LinearSolution {
    pub fn is_unique(&self) -> bool {
        self.unique.is_some()
    }
}

/// Solves `a x = b` for `x` with `a` given row-major (`a.len()` equations,
/// `unknowns` columns).
pub fn solve(a: &[Vec<Rational>], b: &[Rational], unknowns: usize) -> LinearSolution {
    assert_eq!(a.len(), b.len(), "row count mismatch");
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), unknowns, "column count mismatch");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = Rational::one() / &m[r][col];
        for x in m[r].iter_mut().skip(col) {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i == r || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            let pivot_row = m[r].clone();
            for (x, p) in m[i].iter_mut().zip(&pivot_row).skip(col) {
                *x -= &factor * p;
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows {
            break;
        }
    }
    let rank = pivots.len();
    let consistent = m[rank..].iter().all(|row| row[unknowns].is_zero());
    let unique = (consistent && rank == unknowns).then(|| {
        let mut x = vec![Rational::zero(); unknowns];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = m[i][unknowns].clone();
        }
        x
    });
    LinearSolution {
        rank,
        unknowns,
        consistent,
        unique,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn unique_solution() {
        let a = vec![row(&[2, 1]), row(&[1, 3])];
        let s = solve(&a, &[int(3), int(5)], 2);
        assert_eq!(s.unique, Some(vec![rat(4, 5), rat(7, 5)]));
        assert_eq!(s.rank, 2);
    }

    #[test]
    fn rank_deficient_and_inconsistent() {
        let a = vec![row(&[1, 2]), row(&[2, 4])];
        let s = solve(&a, &[int(1), int(2)], 2);
        assert!(s.consistent && s.unique.is_none() && s.rank == 1);
        let s = solve(&a, &[int(1), int(3)], 2);
        assert!(!s.consistent);
    }

    #[test]
    fn overdetermined_consistent() {
        let a = vec![row(&[1, 0]), row(&[0, 1]), row(&[1, 1])];
        let s = solve(&a, &[int(1), int(2), int(3)], 2);
        assert_eq!(s.unique, Some(vec![int(1), int(2)]));
    }

    #[test]
    fn empty_system() {
        let s = solve(&[], &[], 0);
        assert_eq!(s.unique, Some(vec![]));
    }
}
