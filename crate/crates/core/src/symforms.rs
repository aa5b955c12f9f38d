//! Symmetric squares of character lattices and integral symmetric forms.
//!
//! `Sym²(ℤ^r)` has the basis `χ_i·χ_j` for `i ≤ j` in lexicographic order.
//! Symmetric bilinear forms on `ℤ^r` are Gram matrices, and their coordinates
//! in `Bil^s` use the same index order with basis `E_ii` and `E_ij + E_ji`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::abelian::{kernel_basis, IntMatrix};
use crate::error::{Error, Result};
use crate::rootdata::{rational_inverse, reduce_mod_lattice, RootDatum, SimpleFactor};

/// Number of pairs `i ≤ j` below `r`.
pub fn sym2_dim(r: usize) -> usize {
    r * (r + 1) / 2
}

/// Position of `χ_i·χ_j` in the lexicographic basis; the order of `i, j` is irrelevant.
pub fn sym2_index(r: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // Pairs with first index a < i number r + (r-1) + … + (r-i+1).
    i * r - i * i.saturating_sub(1) / 2 + (j - i)
}

/// The pairs `(i, j)` with `i ≤ j < r` in basis order.
pub fn sym2_pairs(r: usize) -> Vec<(usize, usize)> {
    (0..r).flat_map(|i| (i..r).map(move |j| (i, j))).collect()
}

/// An element `Σ c_ij χ_i·χ_j` of `Sym²(ℤ^r)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sym2Element {
    rank: usize,
    coeffs: Vec<BigInt>,
}

impl Sym2Element {
    pub fn new(rank: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != sym2_dim(rank) {
            return Err(Error::Dimension(format!(
                "Sym² of rank {rank} has dimension {}, got {} coefficients",
                sym2_dim(rank),
                coeffs.len()
            )));
        }
        Ok(Sym2Element { rank, coeffs })
    }

    pub fn zero(rank: usize) -> Self {
        Sym2Element {
            rank,
            coeffs: vec![BigInt::zero(); sym2_dim(rank)],
        }
    }

    /// `χ·μ` for characters given in coordinates.
    pub fn product(chi: &[BigInt], mu: &[BigInt]) -> Self {
        assert_eq!(chi.len(), mu.len());
        let r = chi.len();
        let coeffs = sym2_pairs(r)
            .into_iter()
            .map(|(i, j)| {
                if i == j {
                    &chi[i] * &mu[i]
                } else {
                    &chi[i] * &mu[j] + &chi[j] * &mu[i]
                }
            })
            .collect();
        Sym2Element { rank: r, coeffs }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> &BigInt {
        &self.coeffs[sym2_index(self.rank, i, j)]
    }

    /// `Q(x) = Σ c_ij x_i x_j`
    pub fn evaluate(&self, x: &[BigInt]) -> BigInt {
        sym2_pairs(self.rank)
            .into_iter()
            .zip(&self.coeffs)
            .map(|((i, j), c)| c * &x[i] * &x[j])
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Self {
        Sym2Element {
            rank: self.rank,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Sym2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j), c) in sym2_pairs(self.rank).into_iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let mono = if i == j {
                format!("χ{}²", i + 1)
            } else {
                format!("χ{}χ{}", i + 1, j + 1)
            };
            write_term(f, c, &mono, first)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Writes `± |c|·mono` in running-sum style.
pub(crate) fn write_term(
    f: &mut dyn fmt::Write,
    c: &BigInt,
    mono: &str,
    first: bool,
) -> fmt::Result {
    let sign = if c.is_negative() {
        if first {
            "-"
        } else {
            " - "
        }
    } else if first {
        ""
    } else {
        " + "
    };
    let a = c.abs();
    if a.is_one() {
        write!(f, "{sign}{mono}")
    } else {
        write!(f, "{sign}{a}{mono}")
    }
}

/// Serialized as a map `"i,j" → "c"` with 1-based indices and zero entries omitted.
impl Serialize for Sym2Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = sym2_pairs(self.rank)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|((i, j), c)| (format!("{},{}", i + 1, j + 1), c.to_string()))
            .collect();
        map.serialize(s)
    }
}

/// A symmetric bilinear form on `ℤ^r`, given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BilForm {
    gram: IntMatrix,
}

impl BilForm {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::Validation("Gram matrix is not symmetric".into()));
        }
        Ok(BilForm { gram })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn is_even(&self) -> bool {
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    pub fn evaluate(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        crate::abelian::dot(x, &self.gram.mul_vec(y))
    }

    /// Coordinates in `Bil^s` (upper triangle in basis order).
    pub fn coords(&self) -> Vec<BigInt> {
        sym2_pairs(self.rank())
            .into_iter()
            .map(|(i, j)| self.gram[(i, j)].clone())
            .collect()
    }

    pub fn from_coords(r: usize, coords: &[BigInt]) -> Self {
        let mut g = IntMatrix::zeros(r, r);
        for ((i, j), c) in sym2_pairs(r).into_iter().zip(coords) {
            g[(i, j)] = c.clone();
            g[(j, i)] = c.clone();
        }
        BilForm { gram: g }
    }

    pub fn is_positive_definite(&self) -> bool {
        (1..=self.rank()).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.gram
                .select_rows(&idx)
                .select_cols(&idx)
                .determinant()
                .is_positive()
        })
    }
}

/// Polarization `B_Q(x, y) = Q(x + y) − Q(x) − Q(y)`.
pub fn b_map(q: &Sym2Element) -> BilForm {
    let r = q.rank;
    let mut g = IntMatrix::zeros(r, r);
    for ((i, j), c) in sym2_pairs(r).into_iter().zip(&q.coeffs) {
        if i == j {
            g[(i, i)] = c * 2;
        } else {
            g[(i, j)] = c.clone();
            g[(j, i)] = c.clone();
        }
    }
    BilForm { gram: g }
}

/// `q(B)(x) = B(x, x)`
pub fn q_map(b: &BilForm) -> Sym2Element {
    let r = b.rank();
    let coeffs = sym2_pairs(r)
        .into_iter()
        .map(|(i, j)| {
            if i == j {
                b.gram[(i, i)].clone()
            } else {
                &b.gram[(i, j)] * 2
            }
        })
        .collect();
    Sym2Element { rank: r, coeffs }
}

/// Matrix of `b` from `Sym²` coordinates to `Bil^s` coordinates.
pub fn b_matrix(r: usize) -> IntMatrix {
    let diag: Vec<BigInt> = sym2_pairs(r)
        .into_iter()
        .map(|(i, j)| BigInt::from(if i == j { 2 } else { 1 }))
        .collect();
    IntMatrix::diagonal(&diag)
}

/// Matrix of `q` from `Bil^s` coordinates to `Sym²` coordinates.
pub fn q_matrix(r: usize) -> IntMatrix {
    let diag: Vec<BigInt> = sym2_pairs(r)
        .into_iter()
        .map(|(i, j)| BigInt::from(if i == j { 1 } else { 2 }))
        .collect();
    IntMatrix::diagonal(&diag)
}

/// `Sym²(f)` for a map `f : ℤ^a → ℤ^r` of character lattices, as an
/// `sym2_dim(r) × sym2_dim(a)` matrix. Column `(i, j)` is `f(e_i)·f(e_j)`.
pub fn sym2_map(f: &IntMatrix) -> IntMatrix {
    let (r, a) = f.shape();
    let cols: Vec<Vec<BigInt>> = sym2_pairs(a)
        .into_iter()
        .map(|(i, j)| Sym2Element::product(&f.col(i), &f.col(j)).coeffs)
        .collect();
    IntMatrix::from_cols(&cols, sym2_dim(r))
}

/// Action on `Sym²` induced by `χ ↦ w·χ`.
pub fn sym2_action(w: &IntMatrix) -> IntMatrix {
    assert!(w.is_square(), "Weyl element must be square");
    sym2_map(w)
}

/// HNF basis of the vectors fixed by every generator.
pub fn fixed_lattice(n: usize, generators: &[IntMatrix]) -> IntMatrix {
    let id = IntMatrix::identity(n);
    let blocks: Vec<IntMatrix> = generators.iter().map(|g| g.sub(&id)).collect();
    kernel_basis(&IntMatrix::vstack_all(n, &blocks))
}

/// `Sym²(Λ*(T))^W` on the group itself and on its simply connected cover.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sym2Invariants {
    pub on_char: IntMatrix,
    pub on_sc: IntMatrix,
}

pub fn sym2_invariants(rd: &RootDatum) -> Sym2Invariants {
    let on = |rd: &RootDatum| {
        let gens: Vec<IntMatrix> = rd
            .weyl_reflections()
            .on_char
            .iter()
            .map(sym2_action)
            .collect();
        fixed_lattice(sym2_dim(rd.rank()), &gens)
    };
    Sym2Invariants {
        on_char: on(rd),
        on_sc: on(&rd.simply_connected_cover()),
    }
}

/// Columns of `basis` as `Sym²` elements of rank `r`.
pub fn elements(r: usize, basis: &IntMatrix) -> Vec<Sym2Element> {
    basis
        .columns()
        .into_iter()
        .map(|c| Sym2Element::new(r, c).expect("basis column"))
        .collect()
}

/// The normalized basic inner product of one simple factor, as an element of
/// `Sym²` of the full simply connected weight lattice (rank `l`).
pub fn basic_inner_product(rd: &RootDatum, factor: &SimpleFactor) -> Result<Sym2Element> {
    let l = rd.semisimple_rank();
    let idx = &factor.indices;
    let k = idx.len();
    let local_c = rd.cartan_matrix().select_rows(idx).select_cols(idx);
    let local = RootDatum::from_raw(k, local_c.transpose(), IntMatrix::identity(k))?;
    let gens: Vec<IntMatrix> = local
        .weyl_reflections()
        .on_char
        .iter()
        .map(sym2_action)
        .collect();
    let inv = fixed_lattice(sym2_dim(k), &gens);
    if inv.cols() != 1 {
        return Err(Error::Verification(format!(
            "invariant lattice of {} has rank {}, expected 1",
            factor.cartan_type,
            inv.cols()
        )));
    }
    let mut q = Sym2Element::new(k, inv.col(0))?;
    // Coroots are the standard basis of the local cocharacter lattice.
    let short = idx
        .iter()
        .position(|i| factor.short_coroot_indices().contains(i))
        .expect("every factor has short coroots");
    let val = b_map(&q).gram[(short, short)].clone();
    if val == BigInt::from(-2) {
        q = q.neg();
    } else if val != BigInt::from(2) {
        return Err(Error::Verification(format!(
            "basic inner product of {} has B(α∨, α∨) = {val} on a short coroot",
            factor.cartan_type
        )));
    }
    if !b_map(&q).is_positive_definite() {
        return Err(Error::Verification(format!(
            "basic inner product of {} is not positive definite",
            factor.cartan_type
        )));
    }
    let mut coeffs = vec![BigInt::zero(); sym2_dim(l)];
    for (a, b) in sym2_pairs(k) {
        coeffs[sym2_index(l, idx[a], idx[b])] = q.coeff(a, b).clone();
    }
    Sym2Element::new(l, coeffs)
}

/// Rational extension `B′(d, −)` restricted to the coroot lattice, in
/// fundamental weight coordinates. `d_ad` is in fundamental coweight coordinates.
pub fn contraction(rd: &RootDatum, d_ad: &[BigInt], q: &Sym2Element) -> Result<Vec<BigInt>> {
    let l = rd.semisimple_rank();
    if d_ad.len() != l || q.rank() != l {
        return Err(Error::Dimension(format!(
            "contraction on semisimple rank {l} got d of length {} and form of rank {}",
            d_ad.len(),
            q.rank()
        )));
    }
    if l == 0 {
        return Ok(Vec::new());
    }
    let cinv_t = rational_inverse(&rd.cartan_matrix().transpose());
    let coroot_coords: Vec<BigRational> = (0..l)
        .map(|m| {
            (0..l)
                .map(|i| &cinv_t[m][i] * BigRational::from_integer(d_ad[i].clone()))
                .sum()
        })
        .collect();
    let gram = b_map(q).gram;
    (0..l)
        .map(|j| {
            let v: BigRational = (0..l)
                .map(|m| BigRational::from_integer(gram[(j, m)].clone()) * &coroot_coords[m])
                .sum();
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegral(format!(
                    "B′(d, α{}∨) = {v} for d = {d_ad:?}",
                    j + 1
                )))
            }
        })
        .collect()
}

/// Columns `(d, b_k)` for each basis element `b_k` of the invariant lattice on
/// the simply connected cover.
pub fn contraction_matrix(rd: &RootDatum, d_ad: &[BigInt]) -> Result<IntMatrix> {
    let l = rd.semisimple_rank();
    let inv = sym2_invariants(rd).on_sc;
    let cols = elements(l, &inv)
        .iter()
        .map(|q| contraction(rd, d_ad, q))
        .collect::<Result<Vec<_>>>()?;
    Ok(IntMatrix::from_cols(&cols, l))
}

/// Condition (*): every simple factor block of `d_ad` is nonzero.
pub fn check_star(rd: &RootDatum, d_ad: &[BigInt]) -> bool {
    rd.factors()
        .iter()
        .all(|f| f.indices.iter().any(|&i| !d_ad[i].is_zero()))
}

/// A lift `d ∈ δ + Λ(T_sc)` whose image in `Λ(T_ad)` satisfies (*), of
/// minimal sup-norm and lexicographically greatest among those.
pub fn find_lift(rd: &RootDatum, delta: &[BigInt]) -> Result<Vec<BigInt>> {
    let r = rd.rank();
    if delta.len() != r {
        return Err(Error::Dimension(format!(
            "degree has length {}, expected {r}",
            delta.len()
        )));
    }
    if rd.is_torus() {
        return Ok(delta.to_vec());
    }
    let lattice = rd.simple_coroots().transpose();
    let target = reduce_mod_lattice(&lattice, delta);
    for radius in 0i64.. {
        let mut best: Option<Vec<BigInt>> = None;
        let mut x = vec![-radius; r];
        loop {
            if x.iter().any(|c| c.abs() == radius) {
                let v: Vec<BigInt> = x.iter().map(|&c| BigInt::from(c)).collect();
                if reduce_mod_lattice(&lattice, &v) == target
                    && check_star(rd, &rd.to_adjoint_coords(&v))
                    && best.as_ref().is_none_or(|b| v > *b)
                {
                    best = Some(v);
                }
            }
            // Odometer step through the box [-radius, radius]^r.
            let mut k = r;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if x[k] < radius {
                    x[k] += 1;
                    for y in x.iter_mut().skip(k + 1) {
                        *y = -radius;
                    }
                    k = usize::MAX;
                    break;
                }
            }
            if k != usize::MAX {
                break;
            }
        }
        if let Some(b) = best {
            return Ok(b);
        }
    }
    unreachable!("a lift satisfying (*) always exists")
}
