//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use num_traits::ToPrimitive;
use rpic_core::abelian::IntMatrix;

/// Determinant by fraction-free elimination.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors of `ℤ^cols / rowspan(m)` via gcds of minors, 1s dropped,
/// free part as 0s.
pub fn minor_gcd_quotient(m: &IntMatrix) -> Vec<i128> {
    let rows: Vec<Vec<i128>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut divisors = vec![1i128];
    for k in 1..=nr.min(nc) {
        let mut g = 0i128;
        for rs in subsets(nr, k) {
            for cs in subsets(nc, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j]).collect())
                    .collect();
                g = num_integer::gcd(g, det_i128(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let mut out: Vec<i128> = divisors
        .windows(2)
        .map(|w| w[1] / w[0])
        .filter(|&x| x != 1)
        .collect();
    out.extend(std::iter::repeat_n(0, nc - rank));
    out
}

/// Nonzero diagonal of the Smith form of `m` via gcds of minors.
pub fn minor_gcd_diagonal(m: &IntMatrix) -> Vec<i128> {
    let rows: Vec<Vec<i128>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_i128().unwrap()).collect())
        .collect();
    let (nr, nc) = (m.rows(), m.cols());
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=nr.min(nc) {
        let mut g = 0i128;
        for rs in subsets(nr, k) {
            for cs in subsets(nc, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j]).collect())
                    .collect();
                g = num_integer::gcd(g, det_i128(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}
