//! Seeded property suites for the structural identities: group closure,
//! homomorphism and equivariance of the embedding, torsion transport, and
//! the symmetric-power machinery.

use std::collections::BTreeSet;

use num_traits::{One, Signed};
use proptest::prelude::*;

use hbsiegel_core::interval::encloses_exact;
use hbsiegel_core::matrix::RatMatrix;
use hbsiegel_core::modembed::{
    check_conjugation_intervals, check_equivariance, check_symplectic_compat,
    compute_embedding_data, embed_matrix, embed_point,
};
use hbsiegel_core::numfield::NumberField;
use hbsiegel_core::rational::{parse_rational, rat, ratio};
use hbsiegel_core::sample::{
    random_g_prime_element, random_gamma_element, random_gamma_prime_element, random_hb_point,
    random_hb_torsion, random_inverse_different_element, random_order_element,
    random_sl_lattice_element, rng_from_seed,
};
use hbsiegel_core::schema::FieldDescription;
use hbsiegel_core::symplectic::{
    in_gamma, in_gamma_prime, in_sl_lattice, rational_det, similitude, standard_form,
};
use hbsiegel_core::torsion::{
    check_cartesian_transport, check_lattice_equivariance, enumerate_torsion,
    hb_torsion_from_lattice, lattice_act, transport, HBSemidirect, SiegelSemidirect,
};
use hbsiegel_core::symrep::{contraction, dual_action, sym_action, DualVector, SymTensor};
use hbsiegel_core::BigRational;

fn field(json: &str) -> NumberField {
    let desc: FieldDescription = serde_json::from_str(json).unwrap();
    desc.to_field().unwrap()
}

fn test_fields() -> Vec<NumberField> {
    vec![
        field(r#"{"minpoly": ["0", "1"], "basis": [["1"]]}"#),
        field(r#"{"minpoly": ["-1", "-1", "1"], "basis": [["1", "0"], ["0", "1"]]}"#),
        field(r#"{"minpoly": ["-2", "0", "1"], "basis": [["1", "0"], ["0", "1"]]}"#),
        field(
            r#"{"minpoly": ["1", "-2", "-1", "1"],
                "basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}"#,
        ),
        field(
            r#"{"minpoly": ["-1", "-3", "0", "1"],
                "basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}"#,
        ),
    ]
}

#[test]
fn similitude_is_multiplicative_on_random_products() {
    let mut rng = rng_from_seed(101);
    for g in 1..=3 {
        for _ in 0..30 {
            let a = random_gamma_element(&mut rng, g, 1, 6);
            let b = random_gamma_element(&mut rng, g, 1, 6);
            let prod = a.matrix().matmul(b.matrix());
            let nu = similitude(&prod).unwrap().unwrap();
            assert_eq!(nu, a.nu() * b.nu());
        }
    }
}

#[test]
fn gamma_n_is_closed_under_product_and_inverse() {
    let mut rng = rng_from_seed(202);
    for g in 1..=3 {
        for n in [3u32, 4, 5] {
            for _ in 0..10 {
                let a = random_gamma_element(&mut rng, g, n, 8);
                let b = random_gamma_element(&mut rng, g, n, 8);
                assert!(in_gamma(a.mul(&b).matrix(), n).unwrap());
                assert!(in_gamma(a.inverse().matrix(), n).unwrap());
            }
        }
    }
}

#[test]
fn sl_lattice_is_closed_and_preserves_the_module() {
    let mut rng = rng_from_seed(303);
    for nf in test_fields() {
        for _ in 0..20 {
            let a = random_sl_lattice_element(&nf, &mut rng, 8);
            let b = random_sl_lattice_element(&nf, &mut rng, 8);
            assert!(in_sl_lattice(&nf, &a.mul(&nf, &b)));
            assert!(in_sl_lattice(&nf, &a.inverse(&nf).unwrap()));
            // the action fixed in the torsion module sends the module into
            // itself: (x, y) -> (ax + by, cx + dy)
            let x = random_inverse_different_element(&nf, &mut rng, 3);
            let y = random_order_element(&nf, &mut rng, 3);
            let x2 = nf.add(&nf.mul(&a.a, &x), &nf.mul(&a.b, &y));
            let y2 = nf.add(&nf.mul(&a.c, &x), &nf.mul(&a.d, &y));
            assert!(nf.is_in_inverse_different(&x2));
            assert!(nf.is_in_order(&y2));
        }
    }
}

#[test]
fn gamma_prime_members_pass_the_sl_lattice_check() {
    let mut rng = rng_from_seed(404);
    for nf in test_fields() {
        for _ in 0..20 {
            let h = random_gamma_prime_element(&nf, &mut rng, 3, 8);
            assert!(in_gamma_prime(&nf, &h, 3).unwrap());
            assert!(in_sl_lattice(&nf, &h));
        }
    }
}

#[test]
fn embedding_is_a_group_homomorphism() {
    let mut rng = rng_from_seed(505);
    for nf in test_fields() {
        for _ in 0..25 {
            let h1 = random_g_prime_element(&nf, &mut rng, 5);
            let h2 = random_g_prime_element(&nf, &mut rng, 5);
            let lhs = embed_matrix(&nf, &h1.mul(&nf, &h2)).unwrap();
            let rhs = embed_matrix(&nf, &h1).unwrap().mul(&embed_matrix(&nf, &h2).unwrap());
            assert_eq!(lhs.matrix(), rhs.matrix());
            assert_eq!(lhs.nu(), rhs.nu());
            // lands in GSp with factor det(h)
            let q = rational_det(&nf, &h1).unwrap();
            assert_eq!(embed_matrix(&nf, &h1).unwrap().nu(), &q);
        }
    }
}

#[test]
fn embedding_sends_lattice_groups_into_integral_groups() {
    let mut rng = rng_from_seed(606);
    for nf in test_fields() {
        for _ in 0..25 {
            let h = random_sl_lattice_element(&nf, &mut rng, 8);
            let m = embed_matrix(&nf, &h).unwrap();
            assert!(m.is_integral());
            assert_eq!(m.nu(), &BigRational::one());
            let h = random_gamma_prime_element(&nf, &mut rng, 3, 8);
            let m = embed_matrix(&nf, &h).unwrap();
            assert!(in_gamma(m.matrix(), 3).unwrap());
        }
    }
}

#[test]
fn embedded_points_are_siegel_points_and_equivariance_holds() {
    let mut rng = rng_from_seed(707);
    for nf in test_fields() {
        for _ in 0..20 {
            let tau = random_hb_point(&nf, &mut rng);
            // construction of the embedded point already asserts symmetry
            // and positive definiteness exactly
            let s = embed_point(&nf, &tau).unwrap();
            assert!(s.re().is_symmetric());
            let h = random_sl_lattice_element(&nf, &mut rng, 6);
            assert!(check_equivariance(&nf, &h, &tau).unwrap());
        }
        assert!(check_symplectic_compat(&nf));
    }
}

#[test]
fn conjugation_formula_cross_checks_at_interval_precision() {
    let mut rng = rng_from_seed(808);
    for nf in test_fields() {
        for _ in 0..5 {
            let h = random_sl_lattice_element(&nf, &mut rng, 5);
            assert!(check_conjugation_intervals(&nf, &h, 48).unwrap());
        }
    }
}

#[test]
fn embedding_data_is_certified_and_tightens() {
    for nf in test_fields() {
        let data = compute_embedding_data(&nf, 64);
        assert!(encloses_exact(
            &data.enclosure_product(),
            &RatMatrix::identity(nf.degree())
        ));
    }
}

#[test]
fn transport_is_an_isomorphism_on_three_torsion() {
    for nf in test_fields() {
        let g = nf.degree();
        if g > 2 {
            continue; // the full cubic sweep runs in the acceptance suite
        }
        let mut images = BTreeSet::new();
        for v in enumerate_torsion(3, g) {
            let t = hb_torsion_from_lattice(&nf, &v).unwrap();
            assert_eq!(transport(&nf, &t), v);
            assert_eq!(t.order(&nf), v.order());
            images.insert(transport(&nf, &t));
        }
        assert_eq!(images.len(), 9usize.pow(g as u32));
    }
}

#[test]
fn cartesian_transport_and_lattice_equivariance_on_random_data() {
    let mut rng = rng_from_seed(909);
    for nf in test_fields() {
        for _ in 0..15 {
            let t = random_hb_torsion(&nf, &mut rng, 3);
            let tau = random_hb_point(&nf, &mut rng);
            assert!(check_cartesian_transport(&nf, &t, &tau).unwrap());
            let h = random_sl_lattice_element(&nf, &mut rng, 6);
            assert!(check_lattice_equivariance(&nf, &t, &h).unwrap());
            // congruence elements act trivially on n-torsion
            let gamma = random_gamma_prime_element(&nf, &mut rng, 3, 6);
            assert_eq!(lattice_act(&nf, &gamma, &t).unwrap(), t);
        }
    }
}

#[test]
fn semidirect_products_are_associative_on_random_triples() {
    let mut rng = rng_from_seed(111);
    for g in 1..=2 {
        for _ in 0..10 {
            let els: Vec<SiegelSemidirect> = (0..3)
                .map(|_| {
                    let gamma = random_gamma_element(&mut rng, g, 3, 6);
                    let v = (0..2 * g)
                        .map(|_| hbsiegel_core::BigInt::from(rng_val(&mut rng)))
                        .collect();
                    SiegelSemidirect::new(v, gamma, 3).unwrap()
                })
                .collect();
            let lhs = els[0].mul(&els[1]).mul(&els[2]);
            let rhs = els[0].mul(&els[1].mul(&els[2]));
            assert_eq!(lhs, rhs);
            let inv = els[0].inverse();
            assert_eq!(els[0].mul(&inv), SiegelSemidirect::identity(g, 3));
        }
    }
    let nf = field(r#"{"minpoly": ["-1", "-1", "1"], "basis": [["1", "0"], ["0", "1"]]}"#);
    for _ in 0..10 {
        let els: Vec<HBSemidirect> = (0..3)
            .map(|_| {
                let gamma = random_gamma_prime_element(&nf, &mut rng, 3, 6);
                let v = (0..4)
                    .map(|_| hbsiegel_core::BigInt::from(rng_val(&mut rng)))
                    .collect();
                HBSemidirect::new(&nf, v, gamma, 3).unwrap()
            })
            .collect();
        let lhs = els[0].mul(&nf, &els[1]).unwrap().mul(&nf, &els[2]).unwrap();
        let rhs = els[0].mul(&nf, &els[1].mul(&nf, &els[2]).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let inv = els[0].inverse(&nf).unwrap();
        assert_eq!(
            els[0].mul(&nf, &inv).unwrap(),
            HBSemidirect::identity(&nf, 3)
        );
    }
}

fn rng_val(rng: &mut rand_chacha::ChaCha8Rng) -> i64 {
    use rand::Rng;
    rng.gen_range(-4..=4)
}

#[test]
fn sym_action_restricted_through_the_embedding_is_a_homomorphism() {
    let mut rng = rng_from_seed(222);
    for nf in test_fields() {
        let g = nf.degree();
        let v = SymTensor::monomial(g, sample_exps(g, 3), rat(1))
            .unwrap()
            .add(&SymTensor::monomial(g, sample_exps_alt(g, 3), rat(-2)).unwrap())
            .unwrap();
        for _ in 0..10 {
            let h1 = random_sl_lattice_element(&nf, &mut rng, 6);
            let h2 = random_sl_lattice_element(&nf, &mut rng, 6);
            let m1 = embed_matrix(&nf, &h1).unwrap();
            let m2 = embed_matrix(&nf, &h2).unwrap();
            let prod = m1.mul(&m2);
            let lhs = sym_action(prod.matrix(), &v).unwrap();
            let rhs = sym_action(m1.matrix(), &sym_action(m2.matrix(), &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

fn sample_exps(g: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0u32; 2 * g];
    e[0] = k;
    e
}

fn sample_exps_alt(g: usize, k: u32) -> Vec<u32> {
    let mut e = vec![0u32; 2 * g];
    e[2 * g - 1] = k - 1;
    e[0] = 1;
    e
}

#[test]
fn contraction_equivariance_random_trials() {
    let mut rng = rng_from_seed(333);
    for g in 1..=3usize {
        for k in 1..=4u32 {
            for _ in 0..10 {
                let m = random_gamma_element(&mut rng, g, 1, 5);
                let v = SymTensor::monomial(g, sample_exps(g, k), ratio(rng_val(&mut rng).max(1), 2))
                    .unwrap()
                    .add(&SymTensor::monomial(g, sample_exps_alt(g, k), rat(rng_val(&mut rng))).unwrap())
                    .unwrap();
                let phi = DualVector::new(
                    (0..2 * g).map(|_| rat(rng_val(&mut rng))).collect(),
                );
                let lhs = contraction(
                    &sym_action(m.matrix(), &v).unwrap(),
                    &dual_action(m.matrix(), &phi).unwrap(),
                )
                .unwrap();
                let rhs = sym_action(m.matrix(), &contraction(&v, &phi).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

// property tests over arbitrary small rationals

fn small_rational() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_arithmetic_identities(
        a in prop::collection::vec(small_rational(), 2),
        b in prop::collection::vec(small_rational(), 2),
        c in prop::collection::vec(small_rational(), 2),
    ) {
        let nf = field(r#"{"minpoly": ["-1", "-1", "1"], "basis": [["1", "0"], ["0", "1"]]}"#);
        let (a, b, c) = (
            nf.element(a).unwrap(),
            nf.element(b).unwrap(),
            nf.element(c).unwrap(),
        );
        prop_assert_eq!(nf.mul(&a, &b), nf.mul(&b, &a));
        prop_assert_eq!(
            nf.mul(&a, &nf.add(&b, &c)),
            nf.add(&nf.mul(&a, &b), &nf.mul(&a, &c))
        );
        prop_assert_eq!(
            nf.mul(&nf.mul(&a, &b), &c),
            nf.mul(&a, &nf.mul(&b, &c))
        );
        // trace pairing is bilinear and symmetric
        prop_assert_eq!(nf.trace(&nf.mul(&a, &b)), nf.trace(&nf.mul(&b, &a)));
        if !a.is_zero() {
            prop_assert!(nf.trace(&nf.mul(&a, &a)).is_positive());
            prop_assert_eq!(nf.mul(&nf.inv(&a).unwrap(), &a), nf.one());
        }
    }

    #[test]
    fn coordinates_reconstruct_elements(
        coords in prop::collection::vec(small_rational(), 3),
    ) {
        let nf = field(
            r#"{"minpoly": ["1", "-2", "-1", "1"],
                "basis": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}"#,
        );
        let x = nf.element(coords).unwrap();
        prop_assert_eq!(nf.from_dual_coords(&nf.coords_in_dual(&x)), x.clone());
        prop_assert_eq!(nf.from_basis_coords(&nf.coords_in_basis(&x)), x);
    }

    #[test]
    fn torsion_addition_is_a_group_law(
        nums in prop::collection::vec(0u32..5, 4),
        nums2 in prop::collection::vec(0u32..5, 4),
    ) {
        let to_pt = |ns: &[u32]| {
            let v = ns.iter().map(|&a| ratio(i64::from(a), 5)).collect();
            hbsiegel_core::torsion::TorsionPoint::new(v, 5).unwrap()
        };
        let a = to_pt(&nums);
        let b = to_pt(&nums2);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let zero = hbsiegel_core::torsion::TorsionPoint::zero(2, 5);
        prop_assert_eq!(a.add(&zero).unwrap(), a.clone());
        // adding a point to itself 5 times returns to zero
        let mut acc = a.clone();
        for _ in 0..4 {
            acc = acc.add(&a).unwrap();
        }
        prop_assert!(acc.is_zero());
    }
}

#[test]
fn standard_form_is_the_trace_form_everywhere() {
    for nf in test_fields() {
        assert_eq!(
            hbsiegel_core::symplectic::trace_form_gram(&nf),
            standard_form(nf.degree())
        );
    }
    // sanity on the parser used by this file
    assert_eq!(parse_rational("5/10").unwrap(), ratio(1, 2));
}
