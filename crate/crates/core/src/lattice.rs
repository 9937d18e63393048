//! Integer left kernels and exact multiplicative consistency checks.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{rational_pow, Rational};

/// Basis of `{n in Z^m : n^T rows = 0}` where `rows` has `m` rows.
///
/// Rows of `[rows | I]` are combined by unimodular operations until the left
/// block is in echelon form; the identity block of the rows whose left part
/// vanished spans the kernel.
pub fn kernel_lattice(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = rows.len();
    if m == 0 {
        return Vec::new();
    }
    let n = rows[0].len();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "ragged exponent matrix");
            let mut v: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
            v.extend((0..m).map(|j| {
                if i == j {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }));
            v
        })
        .collect();
    let mut r = 0;
    for col in 0..n {
        loop {
            let nonzero: Vec<usize> = (r..m).filter(|&i| !a[i][col].is_zero()).collect();
            if nonzero.len() <= 1 {
                if let Some(&p) = nonzero.first() {
                    a.swap(r, p);
                    r += 1;
                }
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| a[i][col].abs()).unwrap();
            a.swap(r, p);
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                let pivot = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
        if r == m {
            break;
        }
    }
    a[r..]
        .iter()
        .map(|row| {
            row[n..]
                .iter()
                .map(|x| x.to_i64().expect("kernel vector entry exceeds i64"))
                .collect()
        })
        .collect()
}

/// `prod values_i^{n_i}`.
pub fn power_product(values: &[Rational], n: &[i64]) -> Rational {
    values
        .iter()
        .zip(n)
        .fold(Rational::one(), |acc, (v, &e)| acc * rational_pow(v, e))
}

/// The first kernel vector whose power product differs from one, if any.
pub fn power_obstruction(
    values: &[Rational],
    exponent_rows: &[Vec<i64>],
) -> Option<(Vec<i64>, Rational)> {
    kernel_lattice(exponent_rows).into_iter().find_map(|n| {
        let p = power_product(values, &n);
        (!p.is_one()).then_some((n, p))
    })
}

/// Whether `X^{row_i} = values_i` (componentwise powers of positive reals) is
/// solvable. `values` must be positive.
pub fn rational_power_consistent(values: &[Rational], exponent_rows: &[Vec<i64>]) -> bool {
    assert!(
        values.iter().all(|v| v.is_positive()),
        "values must be positive"
    );
    power_obstruction(values, exponent_rows).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn check_kernel(rows: &[Vec<i64>], basis: &[Vec<i64>]) {
        for v in basis {
            for col in 0..rows[0].len() {
                let s: i64 = v.iter().zip(rows).map(|(a, r)| a * r[col]).sum();
                assert_eq!(s, 0);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let rows = vec![vec![2, 4], vec![1, 2]];
        let k = kernel_lattice(&rows);
        assert_eq!(k.len(), 1);
        check_kernel(&rows, &k);
        let v = &k[0];
        assert!(v == &vec![1, -2] || v == &vec![-1, 2]);
        assert!(kernel_lattice(&[vec![1, -8], vec![1, -10]]).is_empty());
        let k = kernel_lattice(&[vec![0, 0]]);
        assert_eq!(k, vec![vec![1]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // Rows 2 and 3 differ by a multiple that only an integral basis sees.
        let rows = vec![vec![6, 0], vec![4, 0], vec![0, 1]];
        let k = kernel_lattice(&rows);
        assert_eq!(k.len(), 1);
        check_kernel(&rows, &k);
        assert_eq!(
            k[0].iter().map(|x| x.abs()).collect::<Vec<_>>(),
            vec![2, 3, 0]
        );
    }

    #[test]
    fn power_consistency_examples() {
        assert!(rational_power_consistent(
            &[int(1), int(4)],
            &[vec![1, -8], vec![1, -10]]
        ));
        assert!(!rational_power_consistent(
            &[int(2), int(5)],
            &[vec![1, 0], vec![2, 0]]
        ));
        assert!(rational_power_consistent(
            &[int(2), int(4)],
            &[vec![1, 0], vec![2, 0]]
        ));
    }
}
