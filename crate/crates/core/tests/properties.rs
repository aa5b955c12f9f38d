mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use common::minor_gcd_diagonal;
use rpic_core::abelian::{hnf, kernel_basis, pushout, rank, snf, FgAbGroup, FgAbHom, IntMatrix};
use rpic_core::rootdata::{Isogeny, RootDatum, Series};
use rpic_core::symforms::sym2_map;
use rpic_core::taut::{RPicBasis, TautClass};

fn matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, cols), rows).prop_map(move |rs| {
        if rows == 0 {
            IntMatrix::zeros(0, cols)
        } else {
            IntMatrix::from_rows(&rs)
        }
    })
}

fn any_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| matrix(r, c, bound))
}

fn unimodular(m: &IntMatrix) -> bool {
    m.determinant().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_matches_minor_gcds(m in any_matrix(4, 6)) {
        let s = snf(&m);
        prop_assert_eq!(&(&s.u * &m) * &s.v, s.s.clone());
        prop_assert!(unimodular(&s.u) && unimodular(&s.v));
        let diag: Vec<i128> = s.diagonal().iter().filter(|x| !x.is_zero()).map(|x| x.to_i128().unwrap()).collect();
        prop_assert_eq!(diag, minor_gcd_diagonal(&m));
    }

    #[test]
    fn hnf_is_echelon(m in any_matrix(4, 9)) {
        let h = hnf(&m);
        prop_assert_eq!(&m * &h.u, h.h.clone());
        prop_assert!(unimodular(&h.u));
        prop_assert!(h.pivots.windows(2).all(|w| w[0] < w[1]));
        for (k, &i) in h.pivots.iter().enumerate() {
            prop_assert!(h.h[(i, k)].is_positive());
            for j in 0..k {
                prop_assert!(!h.h[(i, j)].is_negative() && h.h[(i, j)] < h.h[(i, k)]);
            }
            for above in 0..i {
                prop_assert!(h.h[(above, k)].is_zero());
            }
        }
        for k in h.rank()..m.cols() {
            prop_assert!(h.h.col(k).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn kernel_is_full(m in any_matrix(4, 5)) {
        let k = kernel_basis(&m);
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.cols(), m.cols() - rank(&m));
    }

    /// Any cone `(φ, ψ)` with `φ f = ψ g` factors through the push-out, and
    /// the factorization is unique because the two inclusions jointly span.
    #[test]
    fn pushout_universal_property(
        (a, b, c) in (1usize..=3, 1usize..=3, 1usize..=3),
        seed in any::<u64>(),
    ) {
        let mut state = seed;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        let f_m = IntMatrix::from_rows(&(0..b).map(|_| (0..a).map(|_| next()).collect::<Vec<_>>()).collect::<Vec<_>>());
        let g_m = IntMatrix::from_rows(&(0..c).map(|_| (0..a).map(|_| next()).collect::<Vec<_>>()).collect::<Vec<_>>());
        let fa = FgAbGroup::free(a);
        let f = FgAbHom::new(fa.clone(), FgAbGroup::free(b), f_m.clone()).unwrap();
        let g = FgAbHom::new(fa, FgAbGroup::free(c), g_m.clone()).unwrap();
        let po = pushout(&f, &g).unwrap();
        let square = (po.in_b.matrix() * &f_m).sub(&(po.in_c.matrix() * &g_m));
        for col in square.columns() {
            prop_assert!(po.group.is_zero_element(&col));
        }

        // Cones: rows in the left kernel of [f; −g].
        let glue = f_m.vstack(&g_m.neg());
        let left = kernel_basis(&glue.transpose());
        let k = left.cols();
        if k > 0 {
            let coeffs: Vec<Vec<i64>> = (0..2).map(|_| (0..k).map(|_| next()).collect()).collect();
            let h = &IntMatrix::from_rows(&coeffs) * &left.transpose();
            let cone = FgAbGroup::free(2);
            let u = FgAbHom::new(po.group.clone(), cone, h.clone());
            prop_assert!(u.is_ok());
            let u = u.unwrap();
            let phi = h.select_cols(&(0..b).collect::<Vec<_>>());
            let psi = h.select_cols(&(b..b + c).collect::<Vec<_>>());
            prop_assert_eq!(u.matrix() * po.in_b.matrix(), phi);
            prop_assert_eq!(u.matrix() * po.in_c.matrix(), psi);
        }
        let joint = po.in_b.matrix().hstack(po.in_c.matrix());
        let span = FgAbHom::new(FgAbGroup::free(b + c), po.group.clone(), joint).unwrap();
        prop_assert!(span.is_surjective());
    }

    #[test]
    fn sym2_map_is_functorial(x in matrix(3, 3, 3), y in matrix(3, 3, 3)) {
        prop_assert_eq!(sym2_map(&(&x * &y)), &sym2_map(&x) * &sym2_map(&y));
    }

    #[test]
    fn taut_display_round_trips(
        terms in prop::collection::vec((-4i64..=4, prop::bool::ANY, prop::collection::vec(-4i64..=4, 8)), 1..4)
    ) {
        let (r, n) = (2, 2);
        let mut c = TautClass::zero();
        for (k, det, v) in terms {
            let b: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
            let atom = if det {
                TautClass::det(b[0..2].to_vec(), b[2..4].to_vec())
            } else {
                TautClass::pair(b[0..2].to_vec(), b[2..4].to_vec(), b[4..6].to_vec(), b[6..8].to_vec())
            };
            c = c.plus(atom.scaled(&BigInt::from(k)));
        }
        let parsed = TautClass::parse(&c.to_string(), r, n).unwrap();
        let basis = RPicBasis::new(r, 2, n, &[BigInt::from(1), BigInt::from(-2)]).unwrap();
        prop_assert_eq!(basis.normalize(&parsed).unwrap(), basis.normalize(&c).unwrap());
    }
}

/// The algebraic action is a group action: `ρ(s t) = ρ(s) ρ(t)`.
#[test]
fn weyl_action_is_multiplicative() {
    let data = [
        RootDatum::classical(Series::A, 2, Isogeny::Sc).unwrap(),
        RootDatum::classical(Series::B, 2, Isogeny::Ad).unwrap(),
        RootDatum::classical(Series::G, 2, Isogeny::Sc).unwrap(),
        RootDatum::classical(Series::A, 3, Isogeny::Ad).unwrap(),
        RootDatum::classical(Series::C, 3, Isogeny::Sc).unwrap(),
        RootDatum::gl(3).unwrap(),
    ];
    for rd in &data {
        let r = rd.rank();
        let d: Vec<BigInt> = (0..r).map(|i| BigInt::from(i as i64 + 1)).collect();
        for (g, n) in [(1u32, 2usize), (2, 1), (3, 0)] {
            let basis = RPicBasis::new(r, g, n, &d).unwrap();
            let refl = rd.weyl_reflections().on_char;
            for s in &refl {
                for t in &refl {
                    let st = basis.weyl_algebraic_action(&(s * t)).unwrap();
                    let prod = &basis.weyl_algebraic_action(s).unwrap()
                        * &basis.weyl_algebraic_action(t).unwrap();
                    assert_eq!(st, prod, "{} g={g} n={n}", rd.describe());
                }
            }
        }
    }
}
