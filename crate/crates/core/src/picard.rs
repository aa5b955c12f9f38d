//! Relative Picard groups of moduli of `G`-bundles as explicit lattices.
//!
//! For `g ≥ 1` the group is the sublattice of the torus lattice `RPic(Bun_T^d)`
//! fixed by the algebraic Weyl action. For `g = 0` it is identified with its
//! weight image in `Λ*(T_G)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::abelian::{
    decimal, hnf_basis, is_sublattice, lattice_index, lattice_preimage, pushout, saturation,
    solve_matrix, FgAbGroup, FgAbHom, IntMatrix,
};
use crate::error::{Error, Result};
use crate::rootdata::RootDatum;
use crate::symforms::{
    check_star, contraction_matrix, elements, find_lift, fixed_lattice, sym2_dim, sym2_invariants,
    sym2_map, Sym2Element,
};
use crate::taut::{RPicBasis, Regime};

/// How the degree is specified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degree {
    /// A representative of a class in `π₁(G)`; a lift is chosen where it matters.
    Class(#[serde(serialize_with = "decimal::vec")] Vec<BigInt>),
    /// An explicit `d ∈ Λ(T_G)`.
    Lift(#[serde(serialize_with = "decimal::vec")] Vec<BigInt>),
}

impl Degree {
    pub fn vector(&self) -> &[BigInt] {
        match self {
            Degree::Class(v) | Degree::Lift(v) => v,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    /// Coordinates in the torus basis.
    #[serde(serialize_with = "decimal::vec")]
    pub coords: Vec<BigInt>,
}

/// `0 → Sym² ⊕ Λ*⊗ℤ^n → RPic → Λ* (or Λ*/2) → 0` for a torus, `g ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusSequence {
    pub tau_sigma: FgAbHom,
    pub rho: FgAbHom,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowCheck {
    pub arrow: String,
    pub injective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutReport {
    pub ok: bool,
    #[serde(serialize_with = "decimal::vec")]
    pub pushout_invariant_factors: Vec<BigInt>,
    pub target_rank: usize,
    pub map_injective: bool,
    pub map_surjective: bool,
    pub arrows: Vec<ArrowCheck>,
    pub rank_law: bool,
    pub failure: Option<String>,
}

/// Inputs of the push-out square kept for verification.
#[derive(Clone, Debug, PartialEq, Eq)]
struct PushoutData {
    /// `τ_{G^ab} : Sym²(Λ*(G^ab)) → RPic(Bun_{G^ab})`
    tau_ab: IntMatrix,
    /// `Sym²(Λ*_ab)` in invariant-basis coordinates.
    sym2_ab: IntMatrix,
    semisimple_factors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PicardPresentation {
    pub group: String,
    pub g: u32,
    pub n: usize,
    /// The lift `d` actually used.
    #[serde(serialize_with = "decimal::vec")]
    pub degree: Vec<BigInt>,
    /// Canonical representative of `[d]` modulo coroots.
    #[serde(serialize_with = "decimal::vec")]
    pub degree_class: Vec<BigInt>,
    pub regime: Regime,
    pub free_rank: usize,
    #[serde(serialize_with = "decimal::vec")]
    pub torsion: Vec<BigInt>,
    pub torus_basis: Vec<String>,
    pub generators: Vec<Generator>,
    /// Columns are the generators in torus-basis coordinates.
    pub generator_matrix: IntMatrix,
    /// HNF basis of `Sym²(Λ*(T_G))^W`.
    pub sym2_invariants: Vec<Sym2Element>,
    /// `τ_G` on `sym2_invariants`, in generator coordinates (`g ≥ 1`).
    pub transgression_matrix: Option<IntMatrix>,
    /// Basis of `Λ*(G^ab) = Λ*(T_G)^W` used for `RPic(Bun_{G^ab})`.
    pub ab_char_basis: IntMatrix,
    pub ab_basis: Vec<String>,
    /// `ab^*` on the basis of `RPic(Bun_{G^ab})`, in generator coordinates (`g ≥ 1`).
    pub ab_pullback_matrix: Option<IntMatrix>,
    /// Basis of the weight image in `Λ*(T_G)` (`g = 0`).
    pub weight_image: Option<IntMatrix>,
    /// `[Λ*(T_G) : weight image]` (`g = 0`).
    #[serde(serialize_with = "decimal::opt")]
    pub weight_image_index: Option<BigInt>,
    #[serde(serialize_with = "decimal::one")]
    pub saturation_index: BigInt,
    /// Whether `d^ss` satisfies condition (*) (`g = 0`).
    pub condition_star: Option<bool>,
    pub flags: Vec<String>,
    pub provenance: Option<String>,
    pub torus_sequence: Option<TorusSequence>,
    pub pushout: Option<PushoutReport>,
    #[serde(skip)]
    pushout_data: Option<PushoutData>,
}

fn generators_from(basis: &RPicBasis, m: &IntMatrix) -> Vec<Generator> {
    let labels = basis.labels();
    m.columns()
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let unit = c.iter().filter(|x| !x.is_zero()).count() == 1 && c.iter().any(One::is_one);
            let label = if unit {
                labels[c.iter().position(One::is_one).expect("unit")].clone()
            } else {
                format!("G_{}", k + 1)
            };
            Generator { label, coords: c }
        })
        .collect()
}

fn check_degree(rd: &RootDatum, d: &[BigInt]) -> Result<()> {
    if d.len() != rd.rank() {
        return Err(Error::Validation(format!(
            "degree has length {}, expected the rank {}",
            d.len(),
            rd.rank()
        )));
    }
    Ok(())
}

/// Torus case of [`rpic_reductive`], with the exact sequences for `g ≥ 1`.
pub fn rpic_torus(rd: &RootDatum, g: u32, n: usize, d: &[BigInt]) -> Result<PicardPresentation> {
    if !rd.is_torus() {
        return Err(Error::Validation(format!(
            "{} is not a torus",
            rd.describe()
        )));
    }
    if g == 0 {
        return rpic_reductive_g0(rd, n, &Degree::Lift(d.to_vec()));
    }
    let mut p = rpic_reductive(rd, g, n, d)?;
    p.torus_sequence = Some(torus_sequence(rd.rank(), g, n, d)?);
    Ok(p)
}

fn torus_sequence(r: usize, g: u32, n: usize, d: &[BigInt]) -> Result<TorusSequence> {
    let basis = RPicBasis::new(r, g, n, d)?;
    let rpic = FgAbGroup::free(basis.len());
    let left = basis.transgression_matrix()?.hstack(&basis.sigma_matrix()?);
    let tau_sigma = FgAbHom::new(FgAbGroup::free(left.cols()), rpic.clone(), left)?;
    let quotient = if g >= 2 {
        FgAbGroup::free(r)
    } else {
        FgAbGroup::new(r, IntMatrix::scalar(r, &BigInt::from(2)))?
    };
    let rho = FgAbHom::new(rpic, quotient, basis.rho_matrix()?)?;
    Ok(TorusSequence { tau_sigma, rho })
}

/// `RPic(Bun_G^{[d]})` for `g ≥ 1` as the Weyl-invariant part of the torus lattice.
pub fn rpic_reductive(
    rd: &RootDatum,
    g: u32,
    n: usize,
    d: &[BigInt],
) -> Result<PicardPresentation> {
    if g == 0 {
        return rpic_reductive_g0(rd, n, &Degree::Lift(d.to_vec()));
    }
    check_degree(rd, d)?;
    let r = rd.rank();
    let basis = RPicBasis::new(r, g, n, d)?;
    let reflections = rd.weyl_reflections().on_char;
    let actions = reflections
        .iter()
        .map(|s| basis.weyl_algebraic_action(s))
        .collect::<Result<Vec<_>>>()?;
    let inv = fixed_lattice(basis.len(), &actions);
    let saturation_index = if inv.cols() == 0 {
        BigInt::one()
    } else {
        saturation(&inv)?.index
    };

    let sym_inv = sym2_invariants(rd).on_char;
    let tau_t = basis.transgression_matrix()?;
    let tau_images = &tau_t * &sym_inv;
    let transgression = solve_matrix(&inv, &tau_images).map_err(|_| {
        Error::Verification("τ_T of an invariant form is not Weyl invariant".into())
    })?;

    let lat = rd.derived_lattices();
    let ab = lat.ab_char_l.clone();
    let d_ab = ab.transpose().mul_vec(d);
    let basis_ab = RPicBasis::new(ab.cols(), g, n, &d_ab)?;
    let pulled = basis_ab.pullback_matrix(&ab, &basis)?;
    let ab_pullback = solve_matrix(&inv, &pulled)
        .map_err(|_| Error::Verification("ab-pullback leaves the Weyl-invariant lattice".into()))?;
    let sym2_ab = solve_matrix(&sym_inv, &sym2_map(&ab)).map_err(|_| {
        Error::Verification("Sym²(Λ*(G^ab)) is not inside the invariant forms".into())
    })?;

    let mut p = PicardPresentation {
        group: rd.describe(),
        g,
        n,
        degree: d.to_vec(),
        degree_class: rd.reduce_class(d),
        regime: basis.regime,
        free_rank: inv.cols(),
        torsion: Vec::new(),
        torus_basis: basis.labels(),
        generators: generators_from(&basis, &inv),
        generator_matrix: inv,
        sym2_invariants: elements(r, &sym_inv),
        transgression_matrix: Some(transgression),
        ab_char_basis: ab,
        ab_basis: basis_ab.labels(),
        ab_pullback_matrix: Some(ab_pullback),
        weight_image: None,
        weight_image_index: None,
        saturation_index,
        condition_star: None,
        flags: Vec::new(),
        provenance: None,
        torus_sequence: None,
        pushout: None,
        pushout_data: Some(PushoutData {
            tau_ab: basis_ab.transgression_matrix()?,
            sym2_ab,
            semisimple_factors: rd.factors().len(),
        }),
    };
    if p.saturation_index != BigInt::one() {
        return Err(Error::Verification(format!(
            "invariant lattice has saturation index {}",
            p.saturation_index
        )));
    }
    let report = verify_pushout(&p)?;
    if !report.ok {
        let failure = report
            .failure
            .clone()
            .unwrap_or_else(|| "push-out check".into());
        // In genus one the invariant lattice can be strictly larger than the
        // push-out (SL2: D_1 versus τ(ϖ²) = 2D_1).
        if g >= 2 {
            return Err(Error::Verification(failure));
        }
        p.flags.push(format!("genus one: {failure}"));
    }
    p.pushout = Some(report);
    Ok(p)
}

/// Certifies that `RPic(Bun_{G^ab}) ⊔_{Sym²(Λ*(G^ab))} Sym²(Λ*(T_G))^W` maps
/// isomorphically onto the computed lattice, and that all four arrows of the
/// square are injective.
pub fn verify_pushout(p: &PicardPresentation) -> Result<PushoutReport> {
    let data = p
        .pushout_data
        .as_ref()
        .ok_or_else(|| Error::Regime("push-out verification needs a g ≥ 1 presentation".into()))?;
    let ab_pullback = p.ab_pullback_matrix.as_ref().expect("g ≥ 1 presentation");
    let transgression = p.transgression_matrix.as_ref().expect("g ≥ 1 presentation");

    let a = FgAbGroup::free(data.tau_ab.cols());
    let b = FgAbGroup::free(data.tau_ab.rows());
    let c = FgAbGroup::free(data.sym2_ab.rows());
    let target = FgAbGroup::free(p.free_rank);
    let f = FgAbHom::new(a.clone(), b.clone(), data.tau_ab.clone())?;
    let g = FgAbHom::new(a, c.clone(), data.sym2_ab.clone())?;
    let ab_star = FgAbHom::new(b, target.clone(), ab_pullback.clone())?;
    let tau_g = FgAbHom::new(c, target.clone(), transgression.clone())?;

    let arrows = vec![
        ArrowCheck {
            arrow: "τ_{G^ab}".into(),
            injective: f.is_injective(),
        },
        ArrowCheck {
            arrow: "Sym²(Λ*_ab)".into(),
            injective: g.is_injective(),
        },
        ArrowCheck {
            arrow: "ab^*".into(),
            injective: ab_star.is_injective(),
        },
        ArrowCheck {
            arrow: "τ_G".into(),
            injective: tau_g.is_injective(),
        },
    ];
    let commutes = &ab_pullback.clone() * &data.tau_ab == transgression * &data.sym2_ab;

    let po = pushout(&f, &g)?;
    let joint = ab_pullback.hstack(transgression);
    let (map_injective, map_surjective) = match FgAbHom::new(po.group.clone(), target, joint) {
        Ok(phi) => (phi.is_injective(), phi.is_surjective()),
        Err(_) => (false, false),
    };
    let pushout_invariant_factors = po.group.invariant_factors().to_vec();
    let factors_match = po.group.is_free() && po.group.free_rank() == p.free_rank;
    let rank_law = p.free_rank == data.tau_ab.rows() + data.semisimple_factors;

    let failure = if let Some(bad) = arrows.iter().find(|a| !a.injective) {
        Some(format!("arrow {} is not injective", bad.arrow))
    } else if !commutes {
        Some("the push-out square does not commute".into())
    } else if !factors_match {
        Some(format!(
            "push-out has invariant factors {:?}, expected a free group of rank {}",
            pushout_invariant_factors, p.free_rank
        ))
    } else if !map_surjective {
        Some("ab^* ⊔ τ_G is not surjective".into())
    } else if !map_injective {
        Some("ab^* ⊔ τ_G is not injective".into())
    } else if !rank_law {
        Some("rank differs from rk RPic(Bun_{G^ab}) + s".into())
    } else {
        None
    };
    Ok(PushoutReport {
        ok: failure.is_none(),
        pushout_invariant_factors,
        target_rank: p.free_rank,
        map_injective,
        map_surjective,
        arrows,
        rank_law,
        failure,
    })
}

/// `g = 0`: the weight image `Ω*_d`, intersected with the parity lattice when `n = 0`.
pub fn rpic_reductive_g0(rd: &RootDatum, n: usize, degree: &Degree) -> Result<PicardPresentation> {
    let r = rd.rank();
    check_degree(rd, degree.vector())?;
    let d = match degree {
        Degree::Class(delta) => find_lift(rd, delta)?,
        Degree::Lift(d) => d.clone(),
    };
    let y = rd.to_adjoint_coords(&d);
    let star = check_star(rd, &y);
    let mut flags = Vec::new();
    if !star {
        flags.push(
            "d^ss fails condition (*): injectivity of the weight map is not guaranteed".into(),
        );
    }
    let lat = rd.derived_lattices();
    let c_d = contraction_matrix(rd, &y)?;
    let omega = if n >= 1 {
        lattice_preimage(&lat.restriction, &c_d)
    } else {
        let drow = IntMatrix::from_big_rows(vec![d.clone()], r)?;
        lattice_preimage(
            &lat.restriction.vstack(&drow),
            &c_d.block_diag(&IntMatrix::from_rows(&[[2]])),
        )
    };
    let omega = hnf_basis(&omega);
    let basis = RPicBasis::new(r, 0, n, &d)?;
    let torus_image = basis.weight_matrix();
    if !is_sublattice(&omega, &torus_image) {
        return Err(Error::Verification(
            "weight image is not inside the torus weight image".into(),
        ));
    }
    let coords = solve_matrix(&torus_image, &omega)?;
    let index = if omega.cols() == r {
        Some(lattice_index(&omega, &IntMatrix::identity(r))?)
    } else {
        None
    };
    let sym_inv = sym2_invariants(rd).on_char;
    let generators = omega
        .columns()
        .into_iter()
        .zip(coords.columns())
        .enumerate()
        .map(|(k, (_, c))| Generator {
            label: format!("w_{}", k + 1),
            coords: c,
        })
        .collect();
    let ab = lat.ab_char_l;
    let ab_basis = RPicBasis::new(ab.cols(), 0, n, &ab.transpose().mul_vec(&d))?.labels();
    Ok(PicardPresentation {
        group: rd.describe(),
        g: 0,
        n,
        degree_class: rd.reduce_class(&d),
        degree: d,
        regime: basis.regime,
        free_rank: omega.cols(),
        torsion: Vec::new(),
        torus_basis: basis.labels(),
        generators,
        generator_matrix: coords,
        sym2_invariants: elements(r, &sym_inv),
        transgression_matrix: None,
        ab_char_basis: ab,
        ab_basis,
        ab_pullback_matrix: None,
        weight_image: Some(omega),
        weight_image_index: index,
        saturation_index: BigInt::one(),
        condition_star: Some(star),
        flags,
        provenance: None,
        torus_sequence: None,
        pushout: None,
        pushout_data: None,
    })
}

/// Any genus; for `g ≥ 1` a class is lifted by its canonical representative.
pub fn rpic(rd: &RootDatum, g: u32, n: usize, degree: &Degree) -> Result<PicardPresentation> {
    check_degree(rd, degree.vector())?;
    if g == 0 {
        return rpic_reductive_g0(rd, n, degree);
    }
    let d = degree.vector();
    if rd.is_torus() {
        rpic_torus(rd, g, n, d)
    } else {
        rpic_reductive(rd, g, n, d)
    }
}

/// A connected group described through its reductive quotient.
#[derive(Clone, Debug)]
pub struct NonReductive {
    pub name: String,
    pub reductive_quotient: RootDatum,
}

/// Pullback along `G → G^red` is an isomorphism, so the answer is that of `G^red`.
pub fn rpic_nonreductive(
    spec: &NonReductive,
    g: u32,
    n: usize,
    degree: &Degree,
) -> Result<PicardPresentation> {
    let mut p = rpic(&spec.reductive_quotient, g, n, degree)?;
    p.provenance = Some(format!(
        "reductive quotient {} of {}",
        spec.reductive_quotient.describe(),
        spec.name
    ));
    p.group = spec.name.clone();
    Ok(p)
}

/// Number of torus basis elements, by regime.
pub fn torus_rank_formula(r: usize, g: u32, n: usize) -> usize {
    match g {
        0 => r,
        1 => r * n + r * r.saturating_sub(1) / 2 + r,
        _ => r * n + sym2_dim(r) + r,
    }
}
