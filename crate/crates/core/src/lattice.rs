//! Small exact integer-matrix helpers. Matrices are row-major `Vec<Vec<i64>>`.

use crate::error::{Error, Result};

pub(crate) type IntMatrix = Vec<Vec<i64>>;

pub(crate) fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Fraction-free Gaussian elimination (Bareiss). Returns the determinant of a
/// square matrix, or `None` on `i128` overflow.
pub(crate) fn determinant(m: &[Vec<i64>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    a[n - 1][n - 1].checked_mul(sign)
}

/// Rank over `Q`.
#[allow(clippy::needless_range_loop)]
pub(crate) fn rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let (f, g) = (a[i][c], a[r][c]);
                for j in 0..cols {
                    a[i][j] = a[i][j] * g - a[r][j] * f;
                }
                let h = a[i].iter().fold(0i128, |acc, &x| num_integer::gcd(acc, x));
                if h > 1 {
                    a[i].iter_mut().for_each(|x| *x /= h);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Inverse of a unimodular matrix via the adjugate.
#[allow(clippy::needless_range_loop)]
pub(crate) fn unimodular_inverse(m: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = m.len();
    let det = determinant(m).ok_or(Error::Overflow)?;
    if det != 1 && det != -1 {
        return Err(Error::NotUnimodular(det));
    }
    let mut inv = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: IntMatrix = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c]).collect())
                .collect();
            let cof = determinant(&minor).ok_or(Error::Overflow)?;
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            inv[j][i] = i64::try_from(signed * det).map_err(|_| Error::Overflow)?;
        }
    }
    Ok(inv)
}

pub(crate) fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Result<IntMatrix> {
    let n = a.len();
    let k = b.len();
    let p = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0i64; p]; n];
    for i in 0..n {
        for j in 0..p {
            let mut acc = 0i64;
            for t in 0..k {
                acc = a[i][t]
                    .checked_mul(b[t][j])
                    .and_then(|x| acc.checked_add(x))
                    .ok_or(Error::Overflow)?;
            }
            out[i][j] = acc;
        }
    }
    Ok(out)
}

pub(crate) fn apply(m: &[Vec<i64>], v: &[i64]) -> Result<Vec<i64>> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).try_fold(0i64, |acc, (a, b)| {
                a.checked_mul(*b)
                    .and_then(|x| acc.checked_add(x))
                    .ok_or(Error::Overflow)
            })
        })
        .collect()
}
