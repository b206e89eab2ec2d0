//! Sparse multivariate polynomials over `Q(i)`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::rational::GaussianRational;

/// Variable layout of a polynomial ring: `z1..zn`, optionally followed by the
/// conjugates `zb1..zbn`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Ring {
    pub n: usize,
    pub conjugates: bool,
}

impl Ring {
    pub fn holomorphic(n: usize) -> Self {
        Ring { n, conjugates: false }
    }

    pub fn with_conjugates(n: usize) -> Self {
        Ring { n, conjugates: true }
    }

    pub fn nvars(&self) -> usize {
        if self.conjugates {
            2 * self.n
        } else {
            self.n
        }
    }

    pub fn var_name(&self, idx: usize) -> String {
        if idx < self.n {
            alloc::format!("z{}", idx + 1)
        } else {
            alloc::format!("zb{}", idx - self.n + 1)
        }
    }
}

/// Exponent vector; its length is fixed by the ring.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize, power: u32) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = power;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// `o / self`, when `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Option<Monomial> {
        if self.divides(o) {
            Some(Monomial(o.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn is_coprime(&self, o: &Monomial) -> bool {
        self.0.iter().zip(&o.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// The index of the only variable with nonzero exponent, if it is a pure power.
    pub fn pure_power(&self) -> Option<(usize, u32)> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((i, e));
            }
        }
        found
    }

    pub(crate) fn display_with(&self, ring: &Ring) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(ring.var_name(i)),
                _ => parts.push(alloc::format!("{}^{}", ring.var_name(i), e)),
            }
        }
        if parts.is_empty() {
            String::from("1")
        } else {
            parts.join("*")
        }
    }
}

/// Monomial orders. `Weighted` compares the weighted degree first and breaks
/// ties with graded reverse lexicographic order; weights must be positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    #[default]
    GrevLex,
    Weighted(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Weighted(w) => a
                .weighted_degree(w)
                .cmp(&b.weighted_degree(w))
                .then_with(|| grevlex(a, b)),
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {
            for (x, y) in a.0.iter().rev().zip(b.0.iter().rev()) {
                if x != y {
                    return y.cmp(x);
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::GrLex => f.write_str("grlex"),
            MonomialOrder::GrevLex => f.write_str("grevlex"),
            MonomialOrder::Weighted(w) => {
                f.write_str("weighted:")?;
                for (i, x) in w.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", x)?;
                }
                Ok(())
            }
        }
    }
}

/// A polynomial with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(ring: Ring) -> Self {
        Polynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Ring, c: GaussianRational) -> Self {
        Self::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: Ring) -> Self {
        Self::constant(ring, GaussianRational::one())
    }

    pub fn term(ring: Ring, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial length does not match ring");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { ring, terms }
    }

    /// The variable with index `idx` (conjugates start at `ring.n`).
    pub fn var(ring: Ring, idx: usize) -> Self {
        Self::term(ring, Monomial::var(ring.nvars(), idx, 1), GaussianRational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(ring: Ring, it: I) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coefficient(&Monomial::one(self.ring.nvars()))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        debug_assert_eq!(m.0.len(), self.ring.nvars());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &GaussianRational)> {
        let mut it = self.terms.iter();
        let mut best = it.next()?;
        for t in it {
            if order.cmp(t.0, best.0) == Ordering::Greater {
                best = t;
            }
        }
        Some(best)
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &GaussianRational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common weighted degree of all terms, if the polynomial is weighted homogeneous.
    pub fn weighted_homogeneous_degree(&self, weights: &[u32]) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(weights));
        let d = degs.next()?;
        if degs.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.ring);
        }
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Partial derivative with respect to variable `idx`.
    pub fn derivative(&self, idx: usize) -> Self {
        let mut out = Self::zero(self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, &(c * &GaussianRational::from_integer(e as i64)));
        }
        out
    }

    /// Embeds a holomorphic polynomial into the ring with conjugate variables.
    pub fn with_conjugate_vars(&self) -> Self {
        if self.ring.conjugates {
            return self.clone();
        }
        let ring = Ring::with_conjugates(self.ring.n);
        Polynomial {
            ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(ring.nvars(), 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Complex conjugation `z <-> zb` with conjugated coefficients. The result
    /// always lives in the ring with conjugate variables.
    pub fn conjugate(&self) -> Self {
        let p = self.with_conjugate_vars();
        let n = p.ring.n;
        Polynomial {
            ring: p.ring,
            terms: p
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = Vec::with_capacity(2 * n);
                    e.extend_from_slice(&m.0[n..]);
                    e.extend_from_slice(&m.0[..n]);
                    (Monomial(e), c.conj())
                })
                .collect(),
        }
    }

    /// True when no conjugate variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        !self.ring.conjugates || self.terms.keys().all(|m| m.0[self.ring.n..].iter().all(|&e| e == 0))
    }

    /// Drops the conjugate variables of a holomorphic polynomial.
    pub fn to_holomorphic_ring(&self) -> Option<Self> {
        if !self.is_holomorphic() {
            return None;
        }
        let ring = Ring::holomorphic(self.ring.n);
        Some(Polynomial {
            ring,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0[..ring.n].to_vec()), c.clone()))
                .collect(),
        })
    }

    /// Evaluates at `z`; conjugate variables take the values `conj(z)`.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        let n = self.ring.n;
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let v = if i < n { z[i] } else { z[i - n].conj() };
                    t *= v.powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    fn check_ring(&self, o: &Polynomial) {
        assert_eq!(self.ring, o.ring, "polynomial ring mismatch");
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.check_ring(o);
        let mut out = Polynomial::zero(self.ring);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Canonical text, terms in descending graded reverse lexicographic order.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.sorted_terms(&MonomialOrder::GrevLex).into_iter().enumerate() {
            let negative = c.prints_negative();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mono = m.display_with(&self.ring);
            if m.is_one() {
                if mag.is_compound() {
                    write!(f, "({})", mag)?;
                } else {
                    write!(f, "{}", mag)?;
                }
            } else if mag.is_one() {
                f.write_str(&mono)?;
            } else if mag.is_compound() {
                write!(f, "({})*{}", mag, mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn z(i: usize) -> Polynomial {
        Polynomial::var(Ring::holomorphic(2), i)
    }

    #[test]
    fn grevlex_breaks_ties_from_the_last_variable() {
        let o = MonomialOrder::GrevLex;
        // z1*z3 < z2^2 in grevlex on three variables
        let a = Monomial(vec![1, 0, 1]);
        let b = Monomial(vec![0, 2, 0]);
        assert_eq!(o.cmp(&a, &b), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
    }

    #[test]
    fn display_is_canonical() {
        let p = &(&z(0) * &z(0)).scale(&GaussianRational::from_integer(3)) - &z(1);
        assert_eq!(p.to_string(), "3*z1^2 - z2");
        let q = Polynomial::constant(Ring::holomorphic(2), &GaussianRational::one() + &GaussianRational::i());
        assert_eq!(q.to_string(), "(1 + i)");
        assert_eq!(Polynomial::zero(Ring::holomorphic(1)).to_string(), "0");
    }

    #[test]
    fn derivative_and_conjugate() {
        let p = (&z(0) * &z(1)).scale(&GaussianRational::i());
        assert_eq!(p.derivative(0), z(1).scale(&GaussianRational::i()));
        let c = p.conjugate();
        assert_eq!(c.to_string(), "-i*zb1*zb2");
        assert_eq!(c.conjugate(), p.with_conjugate_vars());
    }

    #[test]
    fn eval_uses_conjugates() {
        let r = Ring::with_conjugates(1);
        let p = &Polynomial::var(r, 0) * &Polynomial::var(r, 1);
        let v = p.eval(&[Complex64::new(3.0, 4.0)]);
        assert!((v.re - 25.0).abs() < 1e-12 && v.im.abs() < 1e-12);
    }
}
