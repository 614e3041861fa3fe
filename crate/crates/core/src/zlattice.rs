//! Small integer linear algebra: kernels of integer matrices by unimodular
//! column reduction. Used to turn congruence conditions `N t = 0 mod D` into
//! explicit Z-bases.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Z-basis of the kernel of an integer matrix (rows x cols), by column
/// Hermite reduction with the transformation matrix carried along.
pub fn integer_kernel(mat: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut w: Vec<Vec<BigInt>> = mat.to_vec();
    let mut t: Vec<Vec<BigInt>> = (0..cols)
        .map(|j| {
            (0..cols)
                .map(|i| if i == j { BigInt::from(1) } else { BigInt::zero() })
                .collect()
        })
        .collect();
    // t is kept column-major: t[j] is the j-th column of the transformation
    let mut pivot = 0usize;
    for row in 0..rows {
        if pivot >= cols {
            break;
        }
        loop {
            // column with the smallest nonzero entry in this row, at >= pivot
            let mut best: Option<usize> = None;
            for j in pivot..cols {
                if !w[row][j].is_zero()
                    && best.is_none_or(|b| w[row][j].abs() < w[row][b].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            w.iter_mut().for_each(|r| r.swap(pivot, b));
            t.swap(pivot, b);
            // reduce every other column in this row
            let mut done = true;
            for j in (pivot + 1)..cols {
                if w[row][j].is_zero() {
                    continue;
                }
                let q = div_round(&w[row][j], &w[row][pivot]);
                if !q.is_zero() {
                    for r in w.iter_mut() {
                        let sub = &q * &r[pivot];
                        r[j] = &r[j] - sub;
                    }
                    let (tp, tj) = column_pair(&mut t, pivot, j);
                    for (a, b) in tj.iter_mut().zip(tp.iter()) {
                        *a = &*a - &(&q * b);
                    }
                }
                if !w[row][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !w[row][pivot].is_zero() {
            pivot += 1;
        }
    }
    // columns past the pivot count are zero in w: they span the kernel
    t[pivot..].to_vec()
}

/// Rounded division for the reduction step.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if &r.abs() * &two > b.abs() {
        if (r.sign() == b.sign()) || r.is_zero() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn column_pair(
    t: &mut [Vec<BigInt>],
    i: usize,
    j: usize,
) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert!(i < j);
    let (a, b) = t.split_at_mut(j);
    (&a[i], &mut b[0])
}
