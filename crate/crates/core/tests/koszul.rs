use locdual_core::koszul::{
    default_degree_range, euler_characteristic, koszul_homology_graded, milnor_algebra, Section,
};
use locdual_core::{Error, GaussianRational, Polynomial, Ring};

fn z(n: usize, i: usize) -> Polynomial {
    Polynomial::var(Ring::holomorphic(n), i)
}

fn gradient_sections() -> Vec<Section> {
    let mut out: Vec<Section> = (1..=6).map(|k| Section::gradient(&z(1, 0).pow(k + 1)).unwrap()).collect();
    for f in [
        &z(2, 0).pow(3) + &z(2, 1).pow(3),
        &z(2, 0).pow(3) + &(&z(2, 0) * &z(2, 1).pow(2)),
        &z(2, 0).pow(3) + &z(2, 1).pow(4),
    ] {
        out.push(Section::gradient(&f).unwrap());
    }
    out
}

#[test]
fn milnor_numbers() {
    for k in 1..=6usize {
        let s = Section::gradient(&z(1, 0).pow(k as u32 + 1)).unwrap();
        assert_eq!(milnor_algebra(&s).unwrap().mu(), k);
    }
    let s = Section::gradient(&(&z(2, 0).pow(3) + &z(2, 1).pow(3))).unwrap();
    let alg = milnor_algebra(&s).unwrap();
    let basis: Vec<String> = alg.basis_polynomials().iter().map(ToString::to_string).collect();
    let mut sorted = basis.clone();
    sorted.sort();
    assert_eq!(sorted, ["1", "z1", "z1*z2", "z2"]);
    let unit = Section::new(vec![z(2, 0), z(2, 1)]).unwrap();
    assert_eq!(milnor_algebra(&unit).unwrap().mu(), 1);
    let flat = Section::new(vec![z(2, 0), &z(2, 0) * &z(2, 1)]).unwrap();
    assert!(matches!(milnor_algebra(&flat), Err(Error::NonIsolatedZero)));
}

#[test]
fn multiplication_tables_are_associative_commutative_and_unital() {
    for s in gradient_sections() {
        let alg = milnor_algebra(&s).unwrap();
        let mu = alg.mu();
        let e = |i: usize| {
            let mut v = vec![GaussianRational::zero(); mu];
            v[i] = GaussianRational::one();
            v
        };
        let one = alg.coordinates(&Polynomial::one(s.ring())).unwrap();
        for a in 0..mu {
            assert_eq!(alg.multiply(&one, &e(a)), e(a));
            for b in 0..mu {
                let ab = alg.multiply(&e(a), &e(b));
                assert_eq!(ab, alg.multiply(&e(b), &e(a)));
                for c in 0..mu {
                    assert_eq!(alg.multiply(&ab, &e(c)), alg.multiply(&e(a), &alg.multiply(&e(b), &e(c))));
                }
            }
        }
    }
}

#[test]
fn regular_sections_have_homology_only_in_degree_zero() {
    for s in gradient_sections() {
        let mu = milnor_algebra(&s).unwrap().mu();
        let table = koszul_homology_graded(&s, default_degree_range(&s).unwrap()).unwrap();
        assert!(table.vanishes_off_zero());
        assert_eq!(table.total(0), mu);
        assert_eq!(euler_characteristic(&table), mu as i64);
    }
    let unit = Section::new(vec![z(2, 0), z(2, 1)]).unwrap();
    let table = koszul_homology_graded(&unit, default_degree_range(&unit).unwrap()).unwrap();
    assert_eq!((table.total(0), euler_characteristic(&table)), (1, 1));
}

#[test]
fn non_regular_section_has_higher_homology() {
    let s = Section::new(vec![z(2, 0), &z(2, 0) * &z(2, 1)]).unwrap();
    let table = koszul_homology_graded(&s, 0..=6).unwrap();
    assert!(!table.vanishes_off_zero());
    assert!(table.total(-1) > 0);
}

#[test]
fn grading_errors() {
    let s = Section::new(vec![&z(2, 0) + &z(2, 0).pow(2), z(2, 1)]).unwrap();
    assert!(matches!(koszul_homology_graded(&s, 0..=4), Err(Error::NotQuasiHomogeneous)));
    let unit = Section::new(vec![z(2, 0), z(2, 1)]).unwrap();
    #[allow(clippy::reversed_empty_ranges)]
    let empty = 3..=1;
    assert!(matches!(koszul_homology_graded(&unit, empty), Err(Error::EmptyDegreeRange)));
    let weighted = Section::new(vec![z(2, 0).pow(2), z(2, 1).pow(3)]).unwrap().with_weights(vec![3, 2]).unwrap();
    assert!(weighted.check_degrees(&[6, 6]).is_ok());
    assert!(weighted.check_degrees(&[6, 5]).is_err());
}
