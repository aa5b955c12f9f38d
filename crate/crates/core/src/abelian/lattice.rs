//! Sublattices of `ℤ^n`, always given by a matrix whose columns span them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMatrix;
use super::normal_form::{hnf, hnf_basis, rank};
use crate::error::{Error, Result};

/// HNF-normalized basis of `{x : m·x = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let r = hnf(m);
    let idx: Vec<usize> = (r.rank()..m.cols()).collect();
    hnf_basis(&r.u.select_cols(&idx))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Saturation {
    pub basis: IntMatrix,
    /// `[saturation : L]`
    pub index: BigInt,
}

/// `(L ⊗ ℚ) ∩ ℤ^n` for `L` spanned by the independent columns of `b`.
pub fn saturation(b: &IntMatrix) -> Result<Saturation> {
    let k = b.cols();
    if rank(b) != k {
        return Err(Error::RankDeficient(format!(
            "saturation needs independent columns, got rank {} for {} columns",
            rank(b),
            k
        )));
    }
    let normals = kernel_basis(&b.transpose());
    let basis = kernel_basis(&normals.transpose());
    let x = solve_matrix(&basis, b)?;
    Ok(Saturation {
        basis,
        index: x.determinant().abs(),
    })
}

/// `{x ∈ ℤ^b : f·x ∈ span(s)}` for `f : ℤ^b → ℤ^a`.
pub fn lattice_preimage(f: &IntMatrix, s: &IntMatrix) -> IntMatrix {
    assert_eq!(f.rows(), s.rows(), "preimage: target dimensions differ");
    let k = kernel_basis(&f.hstack(&s.neg()));
    let top: Vec<usize> = (0..f.cols()).collect();
    hnf_basis(&k.select_rows(&top))
}

/// Coefficients `c` with `basis · c = v`, if `v` lies in the column span.
///
/// When the columns of `basis` are dependent, some solution is returned.
pub fn solve_in_lattice(basis: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(basis.rows(), v.len(), "solve: dimension mismatch");
    let r = hnf(basis);
    let mut residual = v.to_vec();
    let mut c = Vec::with_capacity(r.rank());
    for (k, &row) in r.pivots.iter().enumerate() {
        let p = &r.h[(row, k)];
        let (q, rem) = residual[row].div_rem(p);
        if !rem.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (i, x) in residual.iter_mut().enumerate() {
                *x -= &r.h[(i, k)] * &q;
            }
        }
        c.push(q);
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let idx: Vec<usize> = (0..r.rank()).collect();
    Some(r.u.select_cols(&idx).mul_vec(&c))
}

/// Solves `basis · X = targets` column by column.
pub fn solve_matrix(basis: &IntMatrix, targets: &IntMatrix) -> Result<IntMatrix> {
    let mut out = IntMatrix::zeros(basis.cols(), targets.cols());
    for j in 0..targets.cols() {
        let c = solve_in_lattice(basis, &targets.col(j)).ok_or_else(|| {
            Error::NotInLattice(format!("column {j} is outside the given lattice"))
        })?;
        for (i, x) in c.into_iter().enumerate() {
            out[(i, j)] = x;
        }
    }
    Ok(out)
}

pub fn contains(basis: &IntMatrix, v: &[BigInt]) -> bool {
    solve_in_lattice(basis, v).is_some()
}

pub fn is_sublattice(small: &IntMatrix, big: &IntMatrix) -> bool {
    small.columns().iter().all(|c| contains(big, c))
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && hnf_basis(a) == hnf_basis(b)
}

pub fn lattice_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    hnf_basis(&a.hstack(b))
}

pub fn lattice_intersection(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let a = hnf_basis(a);
    let coeffs = lattice_preimage(&a, b);
    hnf_basis(&(&a * &coeffs))
}

/// `[big : small]` for lattices of equal rank with `small ⊆ big`.
pub fn lattice_index(small: &IntMatrix, big: &IntMatrix) -> Result<BigInt> {
    let big = hnf_basis(big);
    let small = hnf_basis(small);
    if small.cols() != big.cols() {
        return Err(Error::RankDeficient(format!(
            "index of a rank {} lattice in a rank {} lattice is infinite",
            small.cols(),
            big.cols()
        )));
    }
    Ok(solve_matrix(&big, &small)?.determinant().abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::ivec;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert!(same_lattice(&k, &m(&[&[1], &[-1]])));
        assert_eq!(kernel_basis(&IntMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&m(&[&[2, -1, 0], &[0, 1, -2]]));
        assert!(same_lattice(&k, &m(&[&[1], &[2], &[1]])));
    }

    #[test]
    fn saturation_examples() {
        let s = saturation(&m(&[&[2, 0], &[0, 2]])).unwrap();
        assert!(same_lattice(&s.basis, &IntMatrix::identity(2)));
        assert_eq!(s.index, BigInt::from(4));
        let s = saturation(&m(&[&[2], &[4]])).unwrap();
        assert!(same_lattice(&s.basis, &m(&[&[1], &[2]])));
        assert_eq!(s.index, BigInt::from(2));
        assert!(saturation(&m(&[&[1, 2], &[1, 2]])).is_err());
    }

    #[test]
    fn preimage_examples() {
        let two = IntMatrix::scalar(2, &BigInt::from(2));
        assert!(same_lattice(
            &lattice_preimage(&IntMatrix::identity(2), &two),
            &two
        ));
        let p = lattice_preimage(&IntMatrix::zeros(1, 3), &m(&[&[5]]));
        assert!(same_lattice(&p, &IntMatrix::identity(3)));
        let p = lattice_preimage(&m(&[&[1, 1]]), &m(&[&[2]]));
        assert!(same_lattice(&p, &m(&[&[1, 2], &[1, 0]])));
    }

    #[test]
    fn solve_and_index() {
        let l = m(&[&[2, 0], &[1, 3]]);
        assert_eq!(solve_in_lattice(&l, &ivec(&[4, 5])), Some(ivec(&[2, 1])));
        assert_eq!(solve_in_lattice(&l, &ivec(&[1, 0])), None);
        assert_eq!(
            lattice_index(&l, &IntMatrix::identity(2)).unwrap(),
            BigInt::from(6)
        );
        let i = lattice_intersection(&m(&[&[2, 0], &[0, 1]]), &m(&[&[1, 0], &[0, 3]]));
        assert!(same_lattice(&i, &m(&[&[2, 0], &[0, 3]])));
    }
}
