//! Finitely generated abelian groups given by presentations.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::lattice::{contains, is_sublattice, lattice_preimage, solve_matrix};
use super::matrix::IntMatrix;
use super::normal_form::snf;
use crate::error::{Error, Result};

/// `ℤ^n / span(relations)`, relations stored as columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgAbGroup {
    n_generators: usize,
    relations: IntMatrix,
    #[serde(serialize_with = "crate::abelian::decimal::vec")]
    invariant_factors: Vec<BigInt>,
}

impl FgAbGroup {
    pub fn new(n_generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != n_generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                n_generators
            )));
        }
        let diag = snf(&relations).diagonal();
        let rank = diag.iter().filter(|d| !d.is_zero()).count();
        let mut invariant_factors: Vec<BigInt> = diag
            .into_iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .collect();
        invariant_factors.extend(std::iter::repeat_n(BigInt::zero(), n_generators - rank));
        Ok(FgAbGroup {
            n_generators,
            relations,
            invariant_factors,
        })
    }

    pub fn free(n: usize) -> Self {
        Self::new(n, IntMatrix::zeros(n, 0)).expect("free group")
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: u64) -> Self {
        Self::new(1, IntMatrix::from_rows(&[[order as i64]])).expect("cyclic group")
    }

    pub fn n_generators(&self) -> usize {
        self.n_generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// `d_1 | d_2 | …` with trivial factors dropped and free factors listed as `0`.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.invariant_factors
            .iter()
            .filter(|d| d.is_zero())
            .count()
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_zero())
            .cloned()
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.invariant_factors.iter().all(Zero::is_zero)
    }

    /// Order of the group, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank() > 0 {
            return None;
        }
        Some(self.invariant_factors.iter().product())
    }

    /// Abstract isomorphism, decided by invariant factors.
    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.invariant_factors == other.invariant_factors
    }

    /// Whether the vector `v` of generator coefficients represents zero.
    pub fn is_zero_element(&self, v: &[BigInt]) -> bool {
        contains(&self.relations, v)
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::new(
            self.n_generators + other.n_generators,
            self.relations.block_diag(&other.relations),
        )
        .expect("direct sum")
    }

    pub fn identity(&self) -> FgAbHom {
        FgAbHom::new(
            self.clone(),
            self.clone(),
            IntMatrix::identity(self.n_generators),
        )
        .expect("identity")
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| {
                if d.is_zero() {
                    "ℤ".to_string()
                } else {
                    format!("ℤ/{d}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// A homomorphism given on generators, checked to respect relations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FgAbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

/// A subquotient together with its structure map.
#[derive(Clone, Debug)]
pub struct Derived {
    pub group: FgAbGroup,
    pub map: FgAbHom,
}

#[derive(Clone, Debug)]
pub struct Image {
    pub group: FgAbGroup,
    /// Source onto image.
    pub projection: FgAbHom,
    /// Image into target.
    pub inclusion: FgAbHom,
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub group: FgAbGroup,
    pub in_b: FgAbHom,
    pub in_c: FgAbHom,
}

impl FgAbHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.n_generators, source.n_generators) {
            return Err(Error::Dimension(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.n_generators,
                source.n_generators
            )));
        }
        let images = &matrix * &source.relations;
        if !is_sublattice(&images, &target.relations) {
            return Err(Error::IllDefined(
                "a source relation maps outside the target relations".into(),
            ));
        }
        Ok(FgAbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &FgAbHom) -> Result<FgAbHom> {
        if !self.target.is_isomorphic(&other.source)
            || self.target.n_generators != other.source.n_generators
        {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        FgAbHom::new(
            self.source.clone(),
            other.target.clone(),
            &other.matrix * &self.matrix,
        )
    }

    /// Generator vectors of the source sent into the target relations.
    fn preimage_of_relations(&self) -> IntMatrix {
        lattice_preimage(&self.matrix, &self.target.relations)
    }

    pub fn kernel(&self) -> Derived {
        let l = self.preimage_of_relations();
        let rel = solve_matrix(&l, &self.source.relations)
            .expect("source relations lie in the kernel lattice");
        let group = FgAbGroup::new(l.cols(), rel).expect("kernel presentation");
        let map = FgAbHom::new(group.clone(), self.source.clone(), l).expect("kernel inclusion");
        Derived { group, map }
    }

    pub fn image(&self) -> Image {
        let l = self.preimage_of_relations();
        let group = FgAbGroup::new(self.source.n_generators, l).expect("image presentation");
        let projection = FgAbHom::new(
            self.source.clone(),
            group.clone(),
            IntMatrix::identity(self.source.n_generators),
        )
        .expect("image projection");
        let inclusion = FgAbHom::new(group.clone(), self.target.clone(), self.matrix.clone())
            .expect("image inclusion");
        Image {
            group,
            projection,
            inclusion,
        }
    }

    pub fn cokernel(&self) -> Derived {
        let p = self.target.n_generators;
        let group =
            FgAbGroup::new(p, self.target.relations.hstack(&self.matrix)).expect("cokernel");
        let map = FgAbHom::new(self.target.clone(), group.clone(), IntMatrix::identity(p))
            .expect("cokernel projection");
        Derived { group, map }
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().group.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().group.is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `(B ⊕ C) / ⟨(f(a), −g(a))⟩` with its two canonical maps.
pub fn pushout(f: &FgAbHom, g: &FgAbHom) -> Result<Pushout> {
    if f.source != g.source {
        return Err(Error::Dimension(
            "push-out of maps with different sources".into(),
        ));
    }
    let (pb, pc) = (f.target.n_generators, g.target.n_generators);
    let glue = f.matrix.vstack(&g.matrix.neg());
    let relations = f
        .target
        .relations
        .block_diag(&g.target.relations)
        .hstack(&glue);
    let group = FgAbGroup::new(pb + pc, relations)?;
    let in_b = FgAbHom::new(
        f.target.clone(),
        group.clone(),
        IntMatrix::identity(pb).vstack(&IntMatrix::zeros(pc, pb)),
    )?;
    let in_c = FgAbHom::new(
        g.target.clone(),
        group.clone(),
        IntMatrix::zeros(pb, pc).vstack(&IntMatrix::identity(pc)),
    )?;
    Ok(Pushout { group, in_b, in_c })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hom(src: &FgAbGroup, dst: &FgAbGroup, rows: &[&[i64]]) -> FgAbHom {
        let m = if rows.is_empty() {
            IntMatrix::zeros(dst.n_generators(), src.n_generators())
        } else {
            IntMatrix::from_rows(rows)
        };
        FgAbHom::new(src.clone(), dst.clone(), m).unwrap()
    }

    fn factors(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kernel_image_cokernel() {
        let z = FgAbGroup::free(1);
        let two = hom(&z, &z, &[&[2]]);
        assert_eq!(two.cokernel().group.invariant_factors(), &factors(&[2])[..]);
        assert!(two.is_injective());
        let id = z.identity();
        assert!(id.kernel().group.is_trivial());
        assert!(id.cokernel().group.is_trivial());
        let z2 = FgAbGroup::free(2);
        let d = hom(&z2, &z2, &[&[2, 0], &[0, 4]]);
        assert_eq!(
            d.cokernel().group.invariant_factors(),
            &factors(&[2, 4])[..]
        );
    }

    #[test]
    fn kernel_of_map_to_torsion() {
        let z = FgAbGroup::free(1);
        let c4 = FgAbGroup::cyclic(4);
        let f = hom(&z, &c4, &[&[2]]);
        let k = f.kernel();
        assert_eq!(k.group.invariant_factors(), &factors(&[0])[..]);
        assert_eq!(k.map.matrix(), &IntMatrix::from_rows(&[[2]]));
        assert_eq!(f.image().group.invariant_factors(), &factors(&[2])[..]);
    }

    #[test]
    fn ill_defined_rejected() {
        let c2 = FgAbGroup::cyclic(2);
        let z = FgAbGroup::free(1);
        let e = FgAbHom::new(c2, z, IntMatrix::from_rows(&[[1]])).unwrap_err();
        assert!(matches!(e, Error::IllDefined(_)));
    }

    #[test]
    fn pushout_examples() {
        let zero = FgAbGroup::trivial();
        let b = FgAbGroup::free(2);
        let c = FgAbGroup::cyclic(3);
        let p = pushout(&hom(&zero, &b, &[]), &hom(&zero, &c, &[])).unwrap();
        assert!(p.group.is_isomorphic(&b.direct_sum(&c)));

        let a = FgAbGroup::cyclic(6).direct_sum(&FgAbGroup::free(1));
        let p = pushout(&a.identity(), &a.identity()).unwrap();
        assert!(p.group.is_isomorphic(&a));

        let z = FgAbGroup::free(1);
        let p = pushout(&hom(&z, &z, &[&[2]]), &hom(&z, &z, &[&[3]])).unwrap();
        assert_eq!(p.group.invariant_factors(), &factors(&[0])[..]);
    }

    #[test]
    fn display() {
        let g = FgAbGroup::cyclic(2).direct_sum(&FgAbGroup::free(1));
        assert_eq!(g.to_string(), "ℤ/2 ⊕ ℤ");
        assert_eq!(FgAbGroup::cyclic(1).to_string(), "0");
    }
}
