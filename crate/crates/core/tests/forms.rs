use locdual_core::dolbeault::{CutoffExpr, Dolbeault, SmoothExpr};
use locdual_core::exterior::laws::{graded_commutativity_defect, iota_squared_defect, kappa_leibniz_defect};
use locdual_core::exterior::{iota_section, Form, Frame, Gen, Slot};
use locdual_core::koszul::Section;
use locdual_core::{GaussianRational, Monomial, Polynomial, Ring};
use proptest::prelude::*;

const N: usize = 2;

fn coefficient() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 2 * N), -3i64..=3, -2i64..=2), 1..=3).prop_map(|terms| {
        Polynomial::from_terms(
            Ring::with_conjugates(N),
            terms.into_iter().map(|(e, a, b)| {
                (Monomial(e), GaussianRational::from_integer(a) + GaussianRational::from_integer(b) * GaussianRational::i())
            }),
        )
    })
}

fn generator() -> impl Strategy<Value = Gen> {
    (0usize..3, 0..N).prop_map(|(kind, i)| match kind {
        0 => Gen::Dz(i),
        1 => Gen::Dzb(i),
        _ => Gen::EDual(i),
    })
}

/// Sums of monomial forms in `dz`, `dzb` and `e*`.
fn form() -> impl Strategy<Value = Form<Polynomial>> {
    prop::collection::vec((coefficient(), prop::collection::btree_set(generator(), 0..=3)), 0..=3).prop_map(|terms| {
        let frame = Frame::new(N);
        terms.into_iter().fold(Form::zero(frame), |acc, (c, gens)| {
            let gens: Vec<Gen> = gens.into_iter().collect();
            acc.plus(&Form::monomial(frame, c, &gens, Slot::Scalar))
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dbar_squares_to_zero(w in form()) {
        prop_assert!(w.dbar().dbar().is_zero());
    }

    #[test]
    fn koszul_differential_squares_to_zero(s in prop::collection::vec(coefficient(), N), w in form()) {
        prop_assert!(iota_squared_defect(&s, &w).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(), b in form()) {
        prop_assert!(graded_commutativity_defect(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative(a in form(), b in form(), c in form()) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert!(left.minus(&right).is_zero());
    }

    #[test]
    fn dbar_is_a_derivation_of_the_pairing(a in form(), b in form()) {
        prop_assert!(kappa_leibniz_defect(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn iota_s_kills_forms_without_duals(s in prop::collection::vec(coefficient(), N), c in coefficient()) {
        let w = Form::monomial(Frame::new(N), c, &[Gen::Dz(0), Gen::Dzb(1)], Slot::Scalar);
        prop_assert!(iota_section(&s, &w).unwrap().is_zero());
    }
}

fn z(n: usize, i: usize) -> Polynomial {
    Polynomial::var(Ring::holomorphic(n), i)
}

#[test]
fn bracket_identities_in_rank_three() {
    let s = Section::new(vec![z(3, 0).pow(2), &z(3, 1) + &z(3, 0).pow(2), z(3, 2).pow(3)]).unwrap();
    let d = Dolbeault::new(&s);
    let samples = d.basis_samples::<SmoothExpr>(1, 3, &d.sample_coefficients());
    let report = d.check_commutators(&samples);
    assert!(report.passed() > 0);
    assert!(report.is_clean(), "{:?}", report);
}

#[test]
fn identities_with_a_hermitian_metric_and_twisting_bundle() {
    let s = Section::new(vec![z(2, 0).pow(2), z(2, 1).pow(3)]).unwrap();
    let i = GaussianRational::i();
    let h = vec![
        vec![GaussianRational::from_integer(2), i.clone()],
        vec![-i, GaussianRational::from_integer(3)],
    ];
    let d = Dolbeault::with_metric(&s, h).unwrap().with_f_rank(2);
    let smooth = d.basis_samples::<SmoothExpr>(1, 2, &d.sample_coefficients());
    let report = d.check_commutators(&smooth);
    assert!(report.is_clean(), "{:?}", report);
    let cut = d.basis_samples::<CutoffExpr>(1, 2, &d.sample_coefficients());
    let report = d.check_homotopy_formula(&cut);
    assert!(report.passed() > 0);
    assert!(report.is_clean(), "{:?}", report);
}
