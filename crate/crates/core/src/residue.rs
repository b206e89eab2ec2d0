//! Grothendieck residues via the transformation law, the residue pairing on
//! the Milnor algebra, and the signed pairing `(g, h)_psi`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::koszul::{milnor_algebra, Section};
use crate::linalg::{determinant, Matrix};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::rational::GaussianRational;

/// Default bound on the exponent search `z_i^a in (f_1, ..., f_n)`.
pub const DEFAULT_EXPONENT_CAP: u32 = 64;

/// `value * (2 pi i)^unit_power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueValue {
    pub value: GaussianRational,
    pub unit_power: u32,
}

impl ResidueValue {
    pub fn exact(value: GaussianRational) -> Self {
        ResidueValue { value, unit_power: 0 }
    }
}

impl fmt::Display for ResidueValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.unit_power {
            0 => write!(f, "{}", self.value),
            m => write!(f, "({})*(2*pi*i)^{}", self.value, m),
        }
    }
}

/// Determinant of a small polynomial matrix by cofactor expansion.
pub fn polynomial_determinant(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix expected");
    if n == 1 {
        return m[0][0].clone();
    }
    let ring = m[0][0].ring();
    let mut det = Polynomial::zero(ring);
    for (j, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = a * &polynomial_determinant(&minor);
        det = if j % 2 == 0 { &det + &term } else { &det - &term };
    }
    det
}

/// The residue functional `g -> res_s(g)` of a section with isolated zero at
/// the origin, through `z_i^{a_i} = sum_j A_ij f_j`:
/// `res_s(g) = coefficient of z^{a-1} in g det A`.
#[derive(Clone, Debug)]
pub struct LocalResidue {
    exponents: Vec<u32>,
    lift: Vec<Vec<Polynomial>>,
    det: Polynomial,
}

impl LocalResidue {
    pub fn new(s: &Section) -> Result<Self> {
        Self::with_cap(s, DEFAULT_EXPONENT_CAP)
    }

    pub fn with_cap(s: &Section, cap: u32) -> Result<Self> {
        let ideal = Ideal::new(s.components(), &MonomialOrder::GrevLex)?;
        if ideal.basis().is_unit_ideal() {
            return Err(Error::NonIsolatedZero);
        }
        let mut exponents = Vec::with_capacity(s.n());
        let mut lift = Vec::with_capacity(s.n());
        for i in 0..s.n() {
            let zi = Polynomial::var(s.ring(), i);
            let mut power = zi.clone();
            let mut a = 1;
            loop {
                if ideal.contains(&power)? {
                    break;
                }
                if a >= cap {
                    return Err(Error::NonIsolatedZero);
                }
                power = &power * &zi;
                a += 1;
            }
            exponents.push(a);
            lift.push(ideal.lift(&power)?);
        }
        Self::with_lift(s, exponents, lift)
    }

    /// Uses a caller-supplied lift, which must satisfy `z_i^{a_i} = sum_j A_ij f_j`.
    pub fn with_lift(s: &Section, exponents: Vec<u32>, lift: Vec<Vec<Polynomial>>) -> Result<Self> {
        let n = s.n();
        if exponents.len() != n || lift.len() != n || lift.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("lift must be an n x n matrix".into()));
        }
        for (i, row) in lift.iter().enumerate() {
            let mut sum = Polynomial::zero(s.ring());
            for (a, f) in row.iter().zip(s.components()) {
                sum = &sum + &(a * f);
            }
            if sum != Polynomial::var(s.ring(), i).pow(exponents[i]) {
                return Err(Error::InvalidArgument("lift does not reproduce z_i^a_i".into()));
            }
        }
        let det = polynomial_determinant(&lift);
        Ok(LocalResidue { exponents, lift, det })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn lift(&self) -> &[Vec<Polynomial>] {
        &self.lift
    }

    /// `res_s(g)`.
    pub fn of(&self, g: &Polynomial) -> GaussianRational {
        let shifted = Monomial(self.exponents.iter().map(|a| a - 1).collect());
        // only terms of g whose exponents stay below a matter
        let mut acc = GaussianRational::zero();
        for (mg, cg) in g.terms() {
            let Some(rest) = mg.quotient_of(&shifted) else { continue };
            let c = self.det.coefficient(&rest);
            if !c.is_zero() {
                acc += &(cg * &c);
            }
        }
        acc
    }
}

/// `res_s(g)` for a section with an isolated zero at the origin.
pub fn groth_residue(g: &Polynomial, s: &Section) -> Result<ResidueValue> {
    if g.ring() != s.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(ResidueValue::exact(LocalResidue::new(s)?.of(g)))
}

/// The matrix `res_s(b_i b_j)` on the Milnor basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingMatrix {
    pub basis: Vec<Monomial>,
    pub entries: Matrix,
    pub determinant: GaussianRational,
}

pub fn residue_pairing_matrix(s: &Section) -> Result<PairingMatrix> {
    let alg = milnor_algebra(s)?;
    let res = LocalResidue::new(s)?;
    let polys = alg.basis_polynomials();
    let mu = polys.len();
    let mut entries = vec![vec![GaussianRational::zero(); mu]; mu];
    for i in 0..mu {
        for j in i..mu {
            let v = res.of(&(&polys[i] * &polys[j]));
            entries[j][i] = v.clone();
            entries[i][j] = v;
        }
    }
    let determinant = determinant(&entries);
    Ok(PairingMatrix {
        basis: alg.basis().to_vec(),
        entries,
        determinant,
    })
}

/// Non-degeneracy certificate for the residue pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityCertificate {
    pub nondegenerate: bool,
    pub mu: usize,
    pub determinant: GaussianRational,
}

pub fn duality_check(s: &Section) -> Result<DualityCertificate> {
    let m = residue_pairing_matrix(s)?;
    Ok(DualityCertificate {
        nondegenerate: !m.determinant.is_zero(),
        mu: m.basis.len(),
        determinant: m.determinant,
    })
}

fn parity(e: u64) -> i8 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign `epsilon_n` with `(g, h)_psi = epsilon_n res_s(g, h) (2 pi i)^n`, composed from
/// the pairing prefactor `(-1)^{floor((n+3)/2) + n(n+1)/2}`, the factor `(-1)^n`
/// of `(-2 pi i)^n`, and `Res = (-1)^{n(n+1)/2} res_s`.
pub fn pairing_psi_sign(n: usize) -> i8 {
    let n = n as u64;
    let prefactor = parity((n + 3) / 2 + n * (n + 1) / 2);
    let minus_unit = parity(n);
    let virtual_to_grothendieck = parity(n * (n + 1) / 2);
    prefactor * minus_unit * virtual_to_grothendieck
}

/// Sign of the prefactor `(-1)^{floor((n+3)/2) + n(n+1)/2}` alone.
pub fn pairing_prefactor_sign(n: usize) -> i8 {
    let n = n as u64;
    parity((n + 3) / 2 + n * (n + 1) / 2)
}

/// `(g, h)_psi` for `psi = dz_1..dz_n ⊗ e_1..e_n`, as an exact multiple of `(2 pi i)^n`.
pub fn pairing_psi(g: &Polynomial, h: &Polynomial, s: &Section) -> Result<ResidueValue> {
    let r = groth_residue(&(g * h), s)?.value;
    let v = if pairing_psi_sign(s.n()) < 0 { -r } else { r };
    Ok(ResidueValue {
        value: v,
        unit_power: s.n() as u32,
    })
}

/// `res_{df}(det Hess f)`.
pub fn hessian_residue(f: &Polynomial) -> Result<ResidueValue> {
    let s = Section::gradient(f)?;
    let n = s.n();
    let hess: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| s.components()[i].derivative(j)).collect())
        .collect();
    groth_residue(&polynomial_determinant(&hess), &s)
}
