#![allow(dead_code)]

use locdual::{parse_polynomial, parse_section};
use locdual_core::koszul::Section;
use locdual_core::{GaussianRational, Polynomial, Ring};

pub fn poly(n: usize, text: &str) -> Polynomial {
    parse_polynomial(text, Ring::holomorphic(n)).unwrap()
}

pub fn section(n: usize, text: &str) -> Section {
    Section::new(parse_section(text, Ring::holomorphic(n)).unwrap()).unwrap()
}

/// A named isolated singularity; `potential` is set for gradient sections.
pub struct Instance {
    pub name: String,
    pub n: usize,
    pub potential: Option<Polynomial>,
    pub section: Section,
}

fn gradient(name: &str, n: usize, f: &str) -> Instance {
    let f = poly(n, f);
    Instance {
        name: name.into(),
        n,
        section: Section::gradient(&f).unwrap(),
        potential: Some(f),
    }
}

/// A_1..A_6, z1^3 + z2^3, D4, E6 and the monomial sections (z1^a, z2^b), a, b <= 4.
pub fn regression_set() -> Vec<Instance> {
    let mut out = Vec::new();
    for k in 1..=6 {
        out.push(gradient(&format!("A{}", k), 1, &format!("z1^{}", k + 1)));
    }
    out.push(gradient("z1^3+z2^3", 2, "z1^3 + z2^3"));
    out.push(gradient("D4", 2, "z1^3 + z1*z2^2"));
    out.push(gradient("E6", 2, "z1^3 + z2^4"));
    for a in 1..=4 {
        for b in 1..=4 {
            out.push(Instance {
                name: format!("(z1^{},z2^{})", a, b),
                n: 2,
                potential: None,
                section: section(2, &format!("[z1^{}, z2^{}]", a, b)),
            });
        }
    }
    out
}

/// Dense coefficients of a polynomial in the single variable `var`.
fn dense(p: &Polynomial, var: usize) -> Vec<GaussianRational> {
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let e = m.exponents();
        assert!(e.iter().enumerate().all(|(j, &x)| j == var || x == 0), "not univariate in z{}", var + 1);
        let d = e[var] as usize;
        if out.len() <= d {
            out.resize(d + 1, GaussianRational::zero());
        }
        out[d] = c.clone();
    }
    out
}

/// `res_{z=0} g(z) dz / f(z)` by expanding `g / u` where `f = z^k u`, `u(0) != 0`.
pub fn one_variable_residue(g: &[GaussianRational], f: &[GaussianRational]) -> GaussianRational {
    let k = f.iter().position(|c| !c.is_zero()).expect("f is not zero");
    let u = &f[k..];
    let u0_inv = u[0].inv().unwrap();
    // 1/u to order k
    let mut inv = vec![GaussianRational::zero(); k];
    for m in 0..k {
        let mut acc = if m == 0 { GaussianRational::one() } else { GaussianRational::zero() };
        for j in 1..=m.min(u.len() - 1) {
            acc -= &(&u[j] * &inv[m - j]);
        }
        inv[m] = &acc * &u0_inv;
    }
    let mut out = GaussianRational::zero();
    for (a, ga) in g.iter().enumerate().take(k) {
        out += &(ga * &inv[k - 1 - a]);
    }
    out
}

/// Residue for a diagonal section `(f_1(z_1), ..., f_n(z_n))`, term by term as a
/// product of one-variable residues.
pub fn diagonal_residue(g: &Polynomial, s: &Section) -> GaussianRational {
    let fs: Vec<Vec<GaussianRational>> = s.components().iter().enumerate().map(|(i, f)| dense(f, i)).collect();
    let mut out = GaussianRational::zero();
    for (m, c) in g.terms() {
        let mut v = c.clone();
        for (i, &e) in m.exponents().iter().enumerate() {
            let mut zi = vec![GaussianRational::zero(); e as usize + 1];
            zi[e as usize] = GaussianRational::one();
            v = &v * &one_variable_residue(&zi, &fs[i]);
        }
        out += &v;
    }
    out
}
