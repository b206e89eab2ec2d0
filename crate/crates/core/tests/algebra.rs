use locdual_core::{
    buchberger, lift_in_ideal, normal_form, standard_monomials, GaussianRational, Ideal, Monomial, MonomialOrder,
    Polynomial, Ring,
};
use proptest::prelude::*;

fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, 1i64..=3, -2i64..=2)
        .prop_map(|(a, d, b)| GaussianRational::from_ratio(a, d) + GaussianRational::from_integer(b) * GaussianRational::i())
}

fn polynomial(n: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, n), coefficient()), 0..=max_terms)
        .prop_map(move |terms| Polynomial::from_terms(Ring::holomorphic(n), terms.into_iter().map(|(e, c)| (Monomial(e), c))))
}

fn orders() -> [MonomialOrder; 4] {
    [
        MonomialOrder::Lex,
        MonomialOrder::GrLex,
        MonomialOrder::GrevLex,
        MonomialOrder::Weighted(vec![2, 3]),
    ]
}

/// Pure powers plus a random tail keep the quotient finite.
fn zero_dimensional() -> impl Strategy<Value = Vec<Polynomial>> {
    (2u32..=3, 2u32..=3, polynomial(2, 1, 2), polynomial(2, 1, 2)).prop_map(|(a, b, p, q)| {
        let r = Ring::holomorphic(2);
        vec![
            &Polynomial::var(r, 0).pow(a) + &(&p * &Polynomial::var(r, 1)),
            &Polynomial::var(r, 1).pow(b) + &(&q * &Polynomial::var(r, 0).pow(2)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(a in polynomial(2, 3, 4), b in polynomial(2, 3, 4), c in polynomial(2, 3, 4)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn conjugation_is_an_involution(a in polynomial(2, 2, 4)) {
        let ext = a.with_conjugate_vars();
        prop_assert_eq!(ext.conjugate().conjugate(), ext.clone());
        prop_assert_eq!(ext.to_holomorphic_ring(), Some(a));
    }

    #[test]
    fn normal_form_is_a_ring_homomorphism(gens in zero_dimensional(), a in polynomial(2, 4, 3), b in polynomial(2, 4, 3)) {
        let ideal = Ideal::new(&gens, &MonomialOrder::GrevLex).unwrap();
        let na = ideal.reduce(&a).unwrap();
        let nb = ideal.reduce(&b).unwrap();
        prop_assert_eq!(ideal.reduce(&(&a * &b)).unwrap(), ideal.reduce(&(&na * &nb)).unwrap());
        prop_assert_eq!(ideal.reduce(&(&a + &b)).unwrap(), &na + &nb);
        prop_assert_eq!(ideal.reduce(&na).unwrap(), na);
    }

    #[test]
    fn division_reproduces_the_input(gens in zero_dimensional(), p in polynomial(2, 4, 4)) {
        let g = buchberger(&gens, &MonomialOrder::GrevLex).unwrap();
        let (rem, quotients) = normal_form(&p, &g).unwrap();
        let mut back = rem.clone();
        for (q, b) in quotients.iter().zip(g.generators()) {
            back = &back + &(q * b);
        }
        prop_assert_eq!(back, p);
    }

    #[test]
    fn quotient_dimension_is_order_independent(gens in zero_dimensional()) {
        let dims: Vec<usize> = orders()
            .iter()
            .map(|o| standard_monomials(&buchberger(&gens, o).unwrap()).finite().unwrap().len())
            .collect();
        prop_assert!(dims.windows(2).all(|w| w[0] == w[1]), "{:?}", dims);
        // every reduced basis generates the same ideal
        let grevlex = Ideal::new(&gens, &MonomialOrder::GrevLex).unwrap();
        for o in orders() {
            let g = buchberger(&gens, &o).unwrap();
            prop_assert!(g.is_reduced());
            for b in g.generators() {
                prop_assert!(grevlex.contains(b).unwrap());
            }
        }
    }

    #[test]
    fn lifts_reexpand(gens in zero_dimensional(), q0 in polynomial(2, 2, 3), q1 in polynomial(2, 2, 3)) {
        let target = &(&q0 * &gens[0]) + &(&q1 * &gens[1]);
        let a = lift_in_ideal(&target, &gens).unwrap();
        prop_assert_eq!(&(&a[0] * &gens[0]) + &(&a[1] * &gens[1]), target);
    }
}

#[test]
fn lift_outside_the_ideal_is_rejected() {
    let r = Ring::holomorphic(2);
    let gens = [Polynomial::var(r, 0).pow(2), Polynomial::var(r, 1)];
    assert!(lift_in_ideal(&Polynomial::var(r, 0), &gens).is_err());
}

#[test]
fn positive_dimensional_quotient_is_infinite() {
    let r = Ring::holomorphic(2);
    let g = buchberger(&[Polynomial::var(r, 0)], &MonomialOrder::GrevLex).unwrap();
    assert!(standard_monomials(&g).finite().is_none());
}
