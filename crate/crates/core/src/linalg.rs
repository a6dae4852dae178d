//! Exact linear algebra over the rationals for small integer matrices.
//!
//! Rank uses fraction-free (Bareiss) elimination. The first attempt runs in
//! `i128` with checked arithmetic; on overflow the same elimination is
//! redone with arbitrary-precision integers, so the result is always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Rank over `Q` of a dense row-major integer matrix.
pub fn exact_rank(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    match bareiss_i128(&mut m, ncols) {
        Some(rank) => rank,
        None => {
            let mut big: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            bareiss_big(&mut big, ncols)
        }
    }
}

fn bareiss_i128(m: &mut [Vec<i128>], ncols: usize) -> Option<usize> {
    let nrows = m.len();
    let mut prev: i128 = 1;
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col];
        for i in row + 1..nrows {
            let lead = m[i][col];
            for j in col + 1..ncols {
                let a = pivot.checked_mul(m[i][j])?;
                let b = lead.checked_mul(m[row][j])?;
                let num = a.checked_sub(b)?;
                debug_assert_eq!(num % prev, 0);
                m[i][j] = num / prev;
            }
            m[i][col] = 0;
        }
        prev = pivot;
        row += 1;
    }
    Some(row)
}

fn bareiss_big(m: &mut [Vec<BigInt>], ncols: usize) -> usize {
    let nrows = m.len();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for i in row + 1..nrows {
            let lead = m[i][col].clone();
            for j in col + 1..ncols {
                let num = &pivot * &m[i][j] - &lead * &m[row][j];
                m[i][j] = num / &prev;
            }
            m[i][col] = BigInt::zero();
        }
        prev = pivot;
        row += 1;
    }
    row
}

/// Reduced row echelon form over `Q`; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..nrows {
            if i == row || m[i][col].is_zero() {
                continue;
            }
            let factor = m[i][col].clone();
            for j in col..ncols {
                let sub = &factor * &m[row][j];
                m[i][j] -= sub;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Basis of `{x ∈ Q^ncols : A x = 0}`, one vector per free column of the
/// reduced echelon form, each scaled to coprime integers with a positive
/// entry at its free column.
pub fn kernel_basis(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>> {
    for r in rows {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    match kernel_i128(rows, ncols) {
        Some(basis) => basis,
        None => kernel_rational(rows, ncols),
    }
}

/// Integer row reduction with gcd normalization; `None` on overflow.
fn kernel_i128(rows: &[Vec<i64>], ncols: usize) -> Option<Result<Vec<Vec<i64>>>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(row, p);
        let a = m[row][col];
        for i in 0..nrows {
            let c = m[i][col];
            if i == row || c == 0 {
                continue;
            }
            let mut g = 0i128;
            for j in 0..ncols {
                let v = a.checked_mul(m[i][j])?.checked_sub(c.checked_mul(m[row][j])?)?;
                m[i][j] = v;
                g = gcd_i128(g, v);
            }
            if g > 1 {
                for v in m[i].iter_mut() {
                    *v /= g;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut l = 1i128;
        for (r, &c) in pivots.iter().enumerate() {
            if m[r][free] != 0 {
                let d = m[r][c].abs();
                l = (l / gcd_i128(l, d)).checked_mul(d)?;
            }
        }
        let mut v = vec![0i128; ncols];
        v[free] = l;
        for (r, &c) in pivots.iter().enumerate() {
            if m[r][free] != 0 {
                v[c] = (-m[r][free]).checked_mul(l / m[r][c])?;
            }
        }
        let g = v.iter().fold(0, |acc, &x| gcd_i128(acc, x));
        let out = v
            .iter()
            .map(|&x| i64::try_from(x / g).map_err(|_| Error::Overflow))
            .collect::<Result<Vec<i64>>>();
        match out {
            Ok(out) => basis.push(out),
            Err(e) => return Some(Err(e)),
        }
    }
    Some(Ok(basis))
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn kernel_rational(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[free] = BigRational::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][free].clone();
        }
        let denom_lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = v
            .iter()
            .map(|x| x.numer() * (&denom_lcm / x.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let out = ints
            .iter()
            .map(|x| (x / &g).to_i64().ok_or(Error::Overflow))
            .collect::<Result<Vec<i64>>>()?;
        basis.push(out);
    }
    Ok(basis)
}

/// Rank over `Q` by rational Gauss–Jordan elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    rref(&mut m, ncols).len()
}

/// `A x` for a dense integer matrix.
pub fn mat_vec(rows: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    rows.iter()
        .map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

/// `Aᵀ x`.
pub fn mat_t_vec(rows: &[Vec<i64>], ncols: usize, x: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; ncols];
    for (r, &xi) in rows.iter().zip(x) {
        if xi == 0 {
            continue;
        }
        for (o, &a) in out.iter_mut().zip(r) {
            *o += a * xi;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(exact_rank(&[vec![1, 1, 1]]), 1);
        let id: Vec<Vec<i64>> = (0..5)
            .map(|i| (0..5).map(|j| (i == j) as i64).collect())
            .collect();
        assert_eq!(exact_rank(&id), 5);
        assert_eq!(exact_rank(&[]), 0);
        assert_eq!(exact_rank(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(exact_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(exact_rank(&[vec![0, 1], vec![1, 0], vec![1, 1]]), 2);
    }

    #[test]
    fn big_fallback_matches() {
        // scaled Vandermonde matrix: its minors overflow i128
        let n = 12;
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i + 1) as i64).pow(j as u32) * 1_000_003).collect())
            .collect();
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v as i128).collect())
            .collect();
        assert!(bareiss_i128(&mut m, n).is_none());
        assert_eq!(exact_rank(&rows), n);
        assert_eq!(rational_rank(&rows), n);
    }

    #[test]
    fn kernel_of_all_ones() {
        let k = kernel_basis(&[vec![1, 1, 1]], 3).unwrap();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(mat_vec(&[vec![1, 1, 1]], v), vec![0]);
        }
        assert_eq!(kernel_basis(&[], 1).unwrap(), vec![vec![1]]);
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_gauss_jordan(
            rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 0..7)
        ) {
            prop_assert_eq!(exact_rank(&rows), rational_rank(&rows));
        }

        #[test]
        fn kernel_has_complementary_dimension(
            rows in prop::collection::vec(prop::collection::vec(-1i64..=1, 5), 1..6)
        ) {
            let k = kernel_basis(&rows, 5).unwrap();
            prop_assert_eq!(k.len() + exact_rank(&rows), 5);
            for v in &k {
                prop_assert!(mat_vec(&rows, v).iter().all(|&x| x == 0));
            }
            prop_assert_eq!(exact_rank(&k), k.len());
        }

        #[test]
        fn integer_and_rational_kernels_agree(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 0..6)
        ) {
            let fast = kernel_i128(&rows, 6).unwrap().unwrap();
            prop_assert_eq!(fast, kernel_rational(&rows, 6).unwrap());
        }
    }
}
