//! Root data of split connected reductive groups.
//!
//! Cocharacters `Λ(T)` and characters `Λ*(T)` are both `ℤ^r` with the standard
//! pairing. Simple roots and coroots are stored as rows. The Cartan matrix is
//! `C_ij = ⟨α_i∨, α_j⟩`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{
    hnf_basis, kernel_basis, rank, saturation, solve_matrix, FgAbGroup, IntMatrix,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn parse(s: &str) -> Result<Series> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => Series::A,
            "B" => Series::B,
            "C" => Series::C,
            "D" => Series::D,
            "E" => Series::E,
            "F" => Series::F,
            "G" => Series::G,
            other => return Err(Error::InvalidType(other.to_string())),
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Isogeny {
    Sc,
    Ad,
}

/// A Dynkin type such as `B3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CartanType {
    pub series: Series,
    pub rank: usize,
}

impl CartanType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let ok = match series {
            Series::A => rank >= 1,
            Series::B | Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        };
        if ok {
            Ok(CartanType { series, rank })
        } else {
            Err(Error::InvalidType(format!("{series}{rank}")))
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(&self) -> BigInt {
        let n = self.rank;
        let fact = |k: usize| (1..=k).map(BigInt::from).product::<BigInt>();
        match self.series {
            Series::A => fact(n + 1),
            Series::B | Series::C => (BigInt::one() << n) * fact(n),
            Series::D => (BigInt::one() << (n - 1)) * fact(n),
            Series::E => BigInt::from(match n {
                6 => 51_840u64,
                7 => 2_903_040,
                _ => 696_729_600,
            }),
            Series::F => BigInt::from(1152),
            Series::G => BigInt::from(12),
        }
    }

    /// Cartan matrix in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.rank;
        let mut c = IntMatrix::scalar(n, &BigInt::from(2));
        let mut link = |i: usize, j: usize, cij: i64, cji: i64| {
            c[(i, j)] = BigInt::from(cij);
            c[(j, i)] = BigInt::from(cji);
        };
        match self.series {
            Series::A | Series::B | Series::C => {
                for i in 0..n - 1 {
                    link(i, i + 1, -1, -1);
                }
                match self.series {
                    Series::B => link(n - 2, n - 1, -1, -2),
                    Series::C => link(n - 2, n - 1, -2, -1),
                    _ => {}
                }
            }
            Series::D => {
                for i in 0..n - 2 {
                    link(i, i + 1, -1, -1);
                }
                link(n - 3, n - 1, -1, -1);
            }
            Series::E => {
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                for i in 2..n - 1 {
                    link(i, i + 1, -1, -1);
                }
            }
            Series::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Series::G => link(0, 1, -3, -1),
        }
        c
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// One connected component of the Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleFactor {
    /// Indices into the simple roots, increasing.
    pub indices: Vec<usize>,
    pub cartan_type: CartanType,
    /// Primitive positive `d` (one entry per index) with `diag(d)·C` symmetric;
    /// `d_i` is proportional to the squared length of `α_i`.
    #[serde(serialize_with = "crate::abelian::decimal::vec")]
    pub symmetrizer: Vec<BigInt>,
    pub short_root_indices: Vec<usize>,
}

impl SimpleFactor {
    /// Indices of the short coroots, i.e. of the long roots.
    pub fn short_coroot_indices(&self) -> Vec<usize> {
        let max = self.symmetrizer.iter().max().expect("nonempty factor");
        self.indices
            .iter()
            .zip(&self.symmetrizer)
            .filter(|(_, d)| *d == max)
            .map(|(&i, _)| i)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    rank: usize,
    simple_roots: IntMatrix,
    simple_coroots: IntMatrix,
    labels: Vec<String>,
    #[serde(skip)]
    cartan: IntMatrix,
    #[serde(skip)]
    factors: Vec<SimpleFactor>,
}

/// The lattices attached to a root datum. All bases are columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedLattices {
    /// Simple coroots, a basis of `Λ(T_sc)` inside `Λ(T)`.
    pub coroot_l: IntMatrix,
    /// Saturation of the coroot lattice, `Λ(T_der)`.
    pub dg_cochar_l: IntMatrix,
    /// Cocharacters orthogonal to all roots, `Λ(R(G))`.
    pub radical_cochar_l: IntMatrix,
    /// Characters vanishing on all coroots, `Λ*(G^ab)`.
    pub ab_char_l: IntMatrix,
    /// Fundamental coweights scaled by `ad_denominator`, in `Λ(T) ⊗ ℚ` coordinates.
    pub ad_cochar_l: IntMatrix,
    #[serde(serialize_with = "crate::abelian::decimal::one")]
    pub ad_denominator: BigInt,
    /// Weight lattice of the simply connected cover, in fundamental weight
    /// coordinates (the identity of size `l`).
    pub sc_char_l: IntMatrix,
    /// Restriction `Λ*(T) → Λ*(T_sc)`, `χ ↦ (⟨α_i∨, χ⟩)_i`.
    pub restriction: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi1 {
    pub pi1: FgAbGroup,
    pub torsion_part: FgAbGroup,
    pub free_quotient: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylReflections {
    pub on_cochar: Vec<IntMatrix>,
    pub on_char: Vec<IntMatrix>,
}

impl RootDatum {
    /// Validates and classifies raw data. Rows of `simple_roots` and
    /// `simple_coroots` are the simple roots and coroots.
    pub fn from_raw(
        rank: usize,
        simple_roots: IntMatrix,
        simple_coroots: IntMatrix,
    ) -> Result<RootDatum> {
        let l = simple_roots.rows();
        if simple_roots.cols() != rank || simple_coroots.cols() != rank {
            return Err(Error::InvalidRootDatum(format!(
                "roots and coroots must have {rank} columns"
            )));
        }
        if simple_coroots.rows() != l {
            return Err(Error::InvalidRootDatum(format!(
                "{l} roots but {} coroots",
                simple_coroots.rows()
            )));
        }
        if l > rank {
            return Err(Error::InvalidRootDatum(format!(
                "semisimple rank {l} exceeds rank {rank}"
            )));
        }
        if self::rank(&simple_roots.transpose()) != l {
            return Err(Error::InvalidRootDatum("simple roots are dependent".into()));
        }
        if self::rank(&simple_coroots.transpose()) != l {
            return Err(Error::InvalidRootDatum(
                "simple coroots are dependent".into(),
            ));
        }
        let cartan = &simple_coroots * &simple_roots.transpose();
        let factors = classify(&cartan)?;
        let labels = factors.iter().map(|f| f.cartan_type.to_string()).collect();
        Ok(RootDatum {
            rank,
            simple_roots,
            simple_coroots,
            labels,
            cartan,
            factors,
        })
    }

    pub fn classical(series: Series, rank: usize, isogeny: Isogeny) -> Result<RootDatum> {
        let t = CartanType::new(series, rank)?;
        let c = t.cartan_matrix();
        let rd = match isogeny {
            Isogeny::Sc => Self::from_raw(rank, c.transpose(), IntMatrix::identity(rank))?,
            Isogeny::Ad => Self::from_raw(rank, IntMatrix::identity(rank), c)?,
        };
        Ok(rd)
    }

    pub fn torus(rank: usize) -> RootDatum {
        Self::from_raw(rank, IntMatrix::zeros(0, rank), IntMatrix::zeros(0, rank)).expect("torus")
    }

    /// `GL_n` with `α_i = α_i∨ = e_i − e_{i+1}`.
    pub fn gl(n: usize) -> Result<RootDatum> {
        if n == 0 {
            return Err(Error::InvalidType("GL0".into()));
        }
        let m = type_a_differences(n);
        Self::from_raw(n, m.clone(), m)
    }

    pub fn product(&self, other: &RootDatum) -> RootDatum {
        Self::from_raw(
            self.rank + other.rank,
            self.simple_roots.block_diag(&other.simple_roots),
            self.simple_coroots.block_diag(&other.simple_coroots),
        )
        .expect("product of valid root data")
    }

    /// The simply connected cover of the derived group, in fundamental weight
    /// coordinates on characters.
    pub fn simply_connected_cover(&self) -> RootDatum {
        let l = self.semisimple_rank();
        Self::from_raw(l, self.cartan.transpose(), IntMatrix::identity(l))
            .expect("simply connected cover")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn semisimple_rank(&self) -> usize {
        self.simple_roots.rows()
    }

    pub fn simple_roots(&self) -> &IntMatrix {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &IntMatrix {
        &self.simple_coroots
    }

    pub fn cartan_matrix(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn factors(&self) -> &[SimpleFactor] {
        &self.factors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_torus(&self) -> bool {
        self.semisimple_rank() == 0
    }

    /// Short description such as `A1×B2×T1`.
    pub fn describe(&self) -> String {
        let mut parts = self.labels.clone();
        let central = self.rank - self.semisimple_rank();
        if central > 0 {
            parts.push(format!("T{central}"));
        }
        if parts.is_empty() {
            "trivial".to_string()
        } else {
            parts.join("×")
        }
    }

    /// Squared-length symmetrizer over all simple roots.
    pub fn symmetrizer(&self) -> Vec<BigInt> {
        let mut d = vec![BigInt::zero(); self.semisimple_rank()];
        for f in &self.factors {
            for (&i, x) in f.indices.iter().zip(&f.symmetrizer) {
                d[i] = x.clone();
            }
        }
        d
    }

    pub fn derived_lattices(&self) -> DerivedLattices {
        let coroot_l = self.simple_coroots.transpose();
        let dg_cochar_l = saturation(&coroot_l)
            .expect("simple coroots are independent")
            .basis;
        let radical_cochar_l = kernel_basis(&self.simple_roots);
        let ab_char_l = kernel_basis(&self.simple_coroots);
        let (ad_cochar_l, ad_denominator) = self.fundamental_coweights();
        let l = self.semisimple_rank();
        DerivedLattices {
            coroot_l,
            dg_cochar_l,
            radical_cochar_l,
            ab_char_l,
            ad_cochar_l,
            ad_denominator,
            sc_char_l: IntMatrix::identity(l),
            restriction: self.simple_coroots.clone(),
        }
    }

    /// `corootsᵀ · C^{-T}` as an integer matrix over a common denominator.
    fn fundamental_coweights(&self) -> (IntMatrix, BigInt) {
        let l = self.semisimple_rank();
        if l == 0 {
            return (IntMatrix::zeros(self.rank, 0), BigInt::one());
        }
        let cinv_t = rational_inverse(&self.cartan.transpose());
        let mut q = vec![vec![BigRational::zero(); l]; self.rank];
        for (a, row) in q.iter_mut().enumerate() {
            for (i, entry) in row.iter_mut().enumerate() {
                for (k, inv_row) in cinv_t.iter().enumerate() {
                    let c = BigRational::from_integer(self.simple_coroots[(k, a)].clone());
                    *entry += c * &inv_row[i];
                }
            }
        }
        let den = q
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let rows = q
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
                    .collect()
            })
            .collect();
        (IntMatrix::from_big_rows(rows, l).expect("shape"), den)
    }

    /// Image of `d ∈ Λ(T)` in `Λ(T_ad)`, in fundamental coweight coordinates.
    pub fn to_adjoint_coords(&self, d: &[BigInt]) -> Vec<BigInt> {
        self.simple_roots.mul_vec(d)
    }

    pub fn pi1(&self) -> Result<Pi1> {
        let lat = self.derived_lattices();
        let pi1 = FgAbGroup::new(self.rank, lat.coroot_l.clone())?;
        let in_dg = solve_matrix(&lat.dg_cochar_l, &lat.coroot_l)?;
        let torsion_part = FgAbGroup::new(lat.dg_cochar_l.cols(), in_dg)?;
        let free_quotient = FgAbGroup::new(self.rank, lat.dg_cochar_l.clone())?;
        if pi1.torsion() != torsion_part.invariant_factors()
            || !free_quotient.is_free()
            || free_quotient.free_rank() != pi1.free_rank()
        {
            return Err(Error::Verification(format!(
                "π₁ sequence is not exact: π₁ = {pi1}, torsion part {torsion_part}, free quotient {free_quotient}"
            )));
        }
        Ok(Pi1 {
            pi1,
            torsion_part,
            free_quotient,
        })
    }

    /// Canonical representative of `d` modulo the coroot lattice.
    pub fn reduce_class(&self, d: &[BigInt]) -> Vec<BigInt> {
        reduce_mod_lattice(&self.simple_coroots.transpose(), d)
    }

    pub fn weyl_reflections(&self) -> WeylReflections {
        let r = self.rank;
        let mut on_char = Vec::new();
        let mut on_cochar = Vec::new();
        for i in 0..self.semisimple_rank() {
            let a = IntMatrix::column_vector(&self.simple_roots.row(i));
            let ac = IntMatrix::column_vector(&self.simple_coroots.row(i));
            on_char.push(IntMatrix::identity(r).sub(&(&a * &ac.transpose())));
            on_cochar.push(IntMatrix::identity(r).sub(&(&ac * &a.transpose())));
        }
        WeylReflections { on_cochar, on_char }
    }

    /// All elements of the Weyl group acting on `Λ*(T)`, or an error once more
    /// than `cap` have been found.
    pub fn weyl_enumerate(&self, cap: usize) -> Result<Vec<IntMatrix>> {
        let gens = self.weyl_reflections().on_char;
        let id = IntMatrix::identity(self.rank);
        let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        if cap == 0 {
            return Err(Error::WeylCapExceeded(cap));
        }
        while let Some(w) = queue.pop_front() {
            for s in &gens {
                let sw = s * &w;
                if seen.insert(sw.clone()) {
                    if out.len() >= cap {
                        return Err(Error::WeylCapExceeded(cap));
                    }
                    out.push(sw.clone());
                    queue.push_back(sw);
                }
            }
        }
        Ok(out)
    }

    /// The full root system in `Λ*(T)`, closed under simple reflections.
    pub fn roots(&self) -> Vec<Vec<BigInt>> {
        let gens = self.weyl_reflections().on_char;
        let mut seen: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<BigInt>> = (0..self.semisimple_rank())
            .map(|i| self.simple_roots.row(i))
            .collect();
        while let Some(a) = queue.pop_front() {
            if !seen.insert(a.clone()) {
                continue;
            }
            for s in &gens {
                queue.push_back(s.mul_vec(&a));
            }
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.describe(), self.rank)
    }
}

/// Rows `e_i − e_{i+1}` in `ℤ^n`.
pub(crate) fn type_a_differences(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(n - 1, n);
    for i in 0..n - 1 {
        m[(i, i)] = BigInt::one();
        m[(i, i + 1)] = -BigInt::one();
    }
    m
}

/// Reduces `v` modulo the column span of `basis` using its HNF: every pivot
/// coordinate ends up in `[0, pivot)`.
pub fn reduce_mod_lattice(basis: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    let h = hnf_basis(basis);
    let mut out = v.to_vec();
    for k in 0..h.cols() {
        let row = (0..h.rows())
            .find(|&i| !h[(i, k)].is_zero())
            .expect("hnf columns are nonzero");
        let q = out[row].div_floor(&h[(row, k)]);
        if !q.is_zero() {
            for (i, x) in out.iter_mut().enumerate() {
                *x -= &h[(i, k)] * &q;
            }
        }
    }
    out
}

pub(crate) fn rational_inverse(m: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = m.rows();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        BigRational::from_integer(m[(i, j)].clone())
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .expect("matrix is invertible");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[c].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Splits the Cartan matrix into Dynkin components and names each one.
fn classify(c: &IntMatrix) -> Result<Vec<SimpleFactor>> {
    let l = c.rows();
    for i in 0..l {
        if c[(i, i)] != BigInt::from(2) {
            return Err(Error::InvalidRootDatum(format!(
                "Cartan entry ({i},{i}) is {}, expected 2",
                c[(i, i)]
            )));
        }
        for j in 0..l {
            if i == j {
                continue;
            }
            if c[(i, j)].is_positive() {
                return Err(Error::InvalidRootDatum(format!(
                    "Cartan entry ({i},{j}) is positive"
                )));
            }
            if c[(i, j)].is_zero() != c[(j, i)].is_zero() {
                return Err(Error::InvalidRootDatum(format!(
                    "Cartan entries ({i},{j}) and ({j},{i}) are not both zero"
                )));
            }
        }
    }
    let mut assigned = vec![false; l];
    let mut factors = Vec::new();
    for start in 0..l {
        if assigned[start] {
            continue;
        }
        let mut comp = vec![start];
        assigned[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let i = comp[k];
            for j in 0..l {
                if !assigned[j] && !c[(i, j)].is_zero() {
                    assigned[j] = true;
                    comp.push(j);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        factors.push(classify_component(c, &comp)?);
    }
    Ok(factors)
}

fn classify_component(c: &IntMatrix, idx: &[usize]) -> Result<SimpleFactor> {
    let n = idx.len();
    let local = c.select_rows(idx).select_cols(idx);
    let sym = symmetrize(&local)?;
    let dc = &IntMatrix::diagonal(&sym) * &local;
    for k in 1..=n {
        let minor: Vec<usize> = (0..k).collect();
        if !dc
            .select_rows(&minor)
            .select_cols(&minor)
            .determinant()
            .is_positive()
        {
            return Err(Error::InvalidRootDatum(format!(
                "Cartan matrix component {idx:?} is not of finite type"
            )));
        }
    }
    let neighbours = |i: usize| -> Vec<usize> {
        (0..n)
            .filter(|&j| j != i && !local[(i, j)].is_zero())
            .collect()
    };
    let bond = |i: usize, j: usize| -> i64 {
        (&local[(i, j)] * &local[(j, i)])
            .to_i64()
            .expect("small bond")
    };
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !local[(i, j)].is_zero())
        .collect();
    if edges.len() != n - 1 || edges.iter().any(|&(i, j)| bond(i, j) > 3) {
        return Err(Error::InvalidRootDatum(format!(
            "Dynkin diagram of {idx:?} is not a finite-type tree"
        )));
    }
    let series_rank = if n == 1 {
        (Series::A, 1)
    } else if edges.iter().any(|&(i, j)| bond(i, j) == 3) {
        (Series::G, 2)
    } else if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| bond(i, j) == 2) {
        let is_end = |v: usize| neighbours(v).len() == 1;
        if is_end(i) || is_end(j) {
            // Chain ending in the double bond: B if the end node is short.
            let end = if is_end(j) && (n == 2 || !is_end(i)) {
                j
            } else {
                i
            };
            let other = if end == i { j } else { i };
            let end_short = sym[end] < sym[other];
            (if end_short { Series::B } else { Series::C }, n)
        } else {
            (Series::F, 4)
        }
    } else {
        let branch: Vec<usize> = (0..n).filter(|&v| neighbours(v).len() >= 3).collect();
        match branch.as_slice() {
            [] => (Series::A, n),
            [b] => {
                let mut arms: Vec<usize> = neighbours(*b)
                    .into_iter()
                    .map(|start| arm_length(&neighbours, *b, start))
                    .collect();
                arms.sort_unstable();
                match arms.as_slice() {
                    [1, 1, _] => (Series::D, n),
                    [1, 2, 2] => (Series::E, 6),
                    [1, 2, 3] => (Series::E, 7),
                    [1, 2, 4] => (Series::E, 8),
                    _ => {
                        return Err(Error::InvalidRootDatum(format!(
                            "unrecognised branched diagram on {idx:?}"
                        )))
                    }
                }
            }
            _ => {
                return Err(Error::InvalidRootDatum(format!(
                    "diagram on {idx:?} has several branch nodes"
                )))
            }
        }
    };
    let cartan_type = CartanType::new(series_rank.0, series_rank.1)?;
    let min = sym.iter().min().expect("nonempty").clone();
    let short_root_indices = idx
        .iter()
        .zip(&sym)
        .filter(|(_, d)| **d == min)
        .map(|(&i, _)| i)
        .collect();
    Ok(SimpleFactor {
        indices: idx.to_vec(),
        cartan_type,
        symmetrizer: sym,
        short_root_indices,
    })
}

fn arm_length(neighbours: &dyn Fn(usize) -> Vec<usize>, from: usize, start: usize) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = neighbours(cur).into_iter().filter(|&v| v != prev).collect();
        match next.as_slice() {
            [v] => {
                prev = cur;
                cur = *v;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Primitive positive `d` with `d_i C_ij = d_j C_ji` on a connected Cartan matrix.
fn symmetrize(c: &IntMatrix) -> Result<Vec<BigInt>> {
    let n = c.rows();
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    d[0] = Some(BigRational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for j in 0..n {
            if i == j || c[(i, j)].is_zero() {
                continue;
            }
            let di = d[i].clone().expect("visited");
            let dj = di * BigRational::new(c[(i, j)].clone(), c[(j, i)].clone());
            match &d[j] {
                None => {
                    d[j] = Some(dj);
                    queue.push_back(j);
                }
                Some(existing) if *existing != dj => {
                    return Err(Error::InvalidRootDatum(
                        "Cartan matrix is not symmetrizable".into(),
                    ))
                }
                Some(_) => {}
            }
        }
    }
    let d: Vec<BigRational> = d.into_iter().map(|x| x.expect("connected")).collect();
    let den = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = d
        .iter()
        .map(|x| (x * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    Ok(ints.into_iter().map(|x| x / &g).collect())
}
