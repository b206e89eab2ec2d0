//! The bigraded algebra of forms valued in `∧V ⊗ ∧V^∨ (⊗ F)`.
//!
//! Every generator (`dz_i`, `dzb_i`, the formal cutoff differential, `e_i`,
//! `e_i^*`) has odd degree, so the whole algebra is the exterior algebra on
//! these generators. A basis element is stored as a bitmask in the canonical
//! generator order; signs come from counting transpositions when two basis
//! elements are multiplied. The total degree of a basis element is
//! `#dz + #dzb + #e - #e^*`.

mod contract;
pub mod laws;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{Antiholomorphic, Coefficient, DbarDir};
use crate::error::{Error, Result};

pub use contract::{contract_u, dual_frame_operator, iota_alpha, iota_gamma, iota_section, ContractionConvention};

/// Largest supported rank `n` (four generator families plus the cutoff must fit in 64 bits).
pub const MAX_RANK: usize = 15;

/// Rank of `V` (and dimension of the base) plus the rank of the trivial bundle `F`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Frame {
    n: usize,
    f_rank: usize,
}

impl Frame {
    pub fn new(n: usize) -> Self {
        Self::with_f_rank(n, 1)
    }

    pub fn with_f_rank(n: usize, f_rank: usize) -> Self {
        assert!((1..=MAX_RANK).contains(&n), "frame rank must lie in 1..={}", MAX_RANK);
        assert!(f_rank >= 1, "F must have positive rank");
        Frame { n, f_rank }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn f_rank(&self) -> usize {
        self.f_rank
    }

    fn bit(&self, g: Gen) -> u32 {
        let n = self.n as u32;
        match g {
            Gen::Dz(i) => i as u32,
            Gen::Dzb(i) => n + i as u32,
            Gen::DbarRho => 2 * n,
            Gen::E(i) => 2 * n + 1 + i as u32,
            Gen::EDual(i) => 3 * n + 1 + i as u32,
        }
    }

    fn gen(&self, bit: u32) -> Gen {
        let n = self.n as u32;
        let b = bit;
        if b < n {
            Gen::Dz(b as usize)
        } else if b < 2 * n {
            Gen::Dzb((b - n) as usize)
        } else if b == 2 * n {
            Gen::DbarRho
        } else if b < 3 * n + 1 {
            Gen::E((b - 2 * n - 1) as usize)
        } else {
            Gen::EDual((b - 3 * n - 1) as usize)
        }
    }

    fn mask_form(&self) -> u64 {
        (1u64 << (2 * self.n + 1)) - 1
    }

    fn mask_v(&self) -> u64 {
        ((1u64 << self.n) - 1) << (2 * self.n + 1)
    }

    fn mask_vdual(&self) -> u64 {
        ((1u64 << self.n) - 1) << (3 * self.n + 1)
    }

    fn mask_dz(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    /// Blade of `e_I` (or `e_I^*` when `dual`) for 0-based indices in `set`.
    pub(crate) fn frame_blade(&self, set: u64, dual: bool) -> Blade {
        let shift = if dual { 3 * self.n + 1 } else { 2 * self.n + 1 };
        Blade(set << shift)
    }

    pub fn blade(&self, gens: &[Gen]) -> Option<(Blade, i8)> {
        let mut acc = Blade(0);
        let mut sign = 1i8;
        for &g in gens {
            let (b, s) = acc.mul(Blade(1u64 << self.bit(g)))?;
            acc = b;
            sign *= s;
        }
        Some((acc, sign))
    }

    pub fn gens_of(&self, b: Blade) -> Vec<Gen> {
        bits(b.0).map(|x| self.gen(x)).collect()
    }
}

/// Generators, with 0-based indices.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Gen {
    Dz(usize),
    Dzb(usize),
    /// The formal `dbar rho` of the cutoff calculus.
    DbarRho,
    E(usize),
    EDual(usize),
}

/// A product of distinct generators in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Blade(pub u64);

fn bits(mut x: u64) -> impl Iterator<Item = u32> {
    core::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros();
            x &= x - 1;
            Some(b)
        }
    })
}

impl Blade {
    pub const ONE: Blade = Blade(0);

    /// Product with the sign from reordering, or `None` when a generator repeats.
    pub fn mul(self, o: Blade) -> Option<(Blade, i8)> {
        if self.0 & o.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for y in bits(o.0) {
            let above = if y >= 63 { 0 } else { !((1u64 << (y + 1)) - 1) };
            swaps += (self.0 & above).count_ones();
        }
        Some((Blade(self.0 | o.0), if swaps.is_multiple_of(2) { 1 } else { -1 }))
    }

    pub fn count(self) -> u32 {
        self.0.count_ones()
    }
}

/// Which `F` factor a component carries.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub enum Slot {
    #[default]
    Scalar,
    F(usize),
    FDual(usize),
}

impl Slot {
    /// Product of slots; `F ⊗ F^∨` is contracted by the componentwise pairing.
    fn mul(self, o: Slot) -> Result<Option<Slot>> {
        match (self, o) {
            (Slot::Scalar, s) | (s, Slot::Scalar) => Ok(Some(s)),
            (Slot::F(i), Slot::FDual(j)) | (Slot::FDual(j), Slot::F(i)) => Ok((i == j).then_some(Slot::Scalar)),
            _ => Err(Error::WrongType("product of two F-valued (or two F^∨-valued) forms")),
        }
    }
}

/// Degrees of a basis element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Degrees {
    /// number of `dz`
    pub p: u32,
    /// number of `dzb` (and the cutoff differential)
    pub q: u32,
    /// `∧V` degree
    pub k: u32,
    /// `∧V^∨` degree
    pub l: u32,
}

impl Degrees {
    pub fn form(&self) -> u32 {
        self.p + self.q
    }

    /// Total degree `p + q + k - l`.
    pub fn sharp(&self) -> i64 {
        self.p as i64 + self.q as i64 + self.k as i64 - self.l as i64
    }

    pub fn is_odd(&self) -> bool {
        (self.p + self.q + self.k + self.l) % 2 == 1
    }
}

/// A form with coefficients in `C`.
#[derive(Clone, Debug)]
pub struct Form<C> {
    frame: Frame,
    terms: BTreeMap<(Blade, Slot), C>,
}

impl<C: Coefficient> Form<C> {
    pub fn zero(frame: Frame) -> Self {
        Form {
            frame,
            terms: BTreeMap::new(),
        }
    }

    /// `c` times the product of `gens` in the given order.
    pub fn monomial(frame: Frame, c: C, gens: &[Gen], slot: Slot) -> Self {
        let mut f = Self::zero(frame);
        if let Some((b, s)) = frame.blade(gens) {
            let c = if s < 0 { c.negate() } else { c };
            f.add_component(b, slot, &c);
        }
        f
    }

    pub fn scalar(frame: Frame, c: C) -> Self {
        Self::monomial(frame, c, &[], Slot::Scalar)
    }

    /// `sum a_i e_i` from the components of a section.
    pub fn vector(frame: Frame, comps: &[C]) -> Self {
        let mut f = Self::zero(frame);
        for (i, c) in comps.iter().enumerate() {
            f = f.plus(&Self::monomial(frame, c.clone(), &[Gen::E(i)], Slot::Scalar));
        }
        f
    }

    /// `sum c_i e_i^*`.
    pub fn covector(frame: Frame, comps: &[C]) -> Self {
        let mut f = Self::zero(frame);
        for (i, c) in comps.iter().enumerate() {
            f = f.plus(&Self::monomial(frame, c.clone(), &[Gen::EDual(i)], Slot::Scalar));
        }
        f
    }

    pub fn frame(&self) -> Frame {
        self.frame
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

    pub fn components(&self) -> impl Iterator<Item = (Blade, Slot, &C)> {
        self.terms.iter().map(|((b, s), c)| (*b, *s, c))
    }

    pub fn coefficient(&self, b: Blade, slot: Slot) -> Option<&C> {
        self.terms.get(&(b, slot))
    }

    pub fn add_component(&mut self, b: Blade, slot: Slot, c: &C) {
        if c.is_zero() {
            return;
        }
        use alloc::collections::btree_map::Entry;
        match self.terms.entry((b, slot)) {
            Entry::Occupied(mut e) => {
                let v = e.get().plus(c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
        }
    }

    pub fn degrees(&self, b: Blade) -> Degrees {
        let f = &self.frame;
        Degrees {
            p: (b.0 & f.mask_dz()).count_ones(),
            q: (b.0 & f.mask_form() & !f.mask_dz()).count_ones(),
            k: (b.0 & f.mask_v()).count_ones(),
            l: (b.0 & f.mask_vdual()).count_ones(),
        }
    }

    pub fn plus(&self, o: &Self) -> Self {
        assert_eq!(self.frame, o.frame, "frame mismatch");
        let mut out = self.clone();
        for ((b, s), c) in &o.terms {
            out.add_component(*b, *s, c);
        }
        out
    }

    pub fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }

    pub fn negate(&self) -> Self {
        Form {
            frame: self.frame,
            terms: self.terms.iter().map(|(k, c)| (*k, c.negate())).collect(),
        }
    }

    /// Multiplication by an (even) coefficient.
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.frame);
        for ((b, s), v) in &self.terms {
            out.add_component(*b, *s, &c.times(v));
        }
        out
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        let mut out = Form::zero(self.frame);
        for ((b, s), c) in &self.terms {
            out.add_component(*b, *s, &f(c));
        }
        out
    }

    /// Keeps the components for which `keep` holds.
    pub fn filter(&self, keep: impl Fn(Blade, Slot) -> bool) -> Self {
        Form {
            frame: self.frame,
            terms: self
                .terms
                .iter()
                .filter(|((b, s), _)| keep(*b, *s))
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    /// The graded product.
    pub fn wedge(&self, o: &Self) -> Result<Self> {
        if self.frame != o.frame {
            return Err(Error::FrameMismatch);
        }
        let mut out = Self::zero(self.frame);
        for ((b1, s1), c1) in &self.terms {
            for ((b2, s2), c2) in &o.terms {
                let Some(slot) = s1.mul(*s2)? else { continue };
                if let Some((b, sign)) = b1.mul(*b2) {
                    let c = c1.times(c2);
                    out.add_component(b, slot, &if sign < 0 { c.negate() } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `kappa`: pairs the `∧V` part with the `∧V^∨` part, leaving a scalar form.
    pub fn kappa(&self) -> Self {
        let f = self.frame;
        let mut out = Self::zero(f);
        for ((b, s), c) in &self.terms {
            let v = (b.0 & f.mask_v()) >> (2 * f.n + 1);
            let vd = (b.0 & f.mask_vdual()) >> (3 * f.n + 1);
            if v == vd {
                out.add_component(Blade(b.0 & f.mask_form()), *s, c);
            }
        }
        out
    }

    /// The coefficient `c` when the form is `c·1` with `c` nonzero.
    pub fn as_scalar(&self) -> Option<C> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.get(&(Blade::ONE, Slot::Scalar)).cloned()
    }

    /// Components grouped by `(form degree, k, l)`.
    pub fn homogeneous_parts(&self) -> BTreeMap<(u32, u32, u32), Self> {
        let mut out: BTreeMap<(u32, u32, u32), Self> = BTreeMap::new();
        for ((b, s), c) in &self.terms {
            let d = self.degrees(*b);
            out.entry((d.form(), d.k, d.l))
                .or_insert_with(|| Self::zero(self.frame))
                .add_component(*b, *s, c);
        }
        out
    }

    pub fn has_v_part(&self) -> bool {
        self.terms.keys().any(|(b, _)| b.0 & self.frame.mask_v() != 0)
    }

    pub fn has_vdual_part(&self) -> bool {
        self.terms.keys().any(|(b, _)| b.0 & self.frame.mask_vdual() != 0)
    }
}

/// `<a, b> = kappa(a ∧ b)`.
pub fn kappa_pair<C: Coefficient>(a: &Form<C>, b: &Form<C>) -> Result<Form<C>> {
    Ok(a.wedge(b)?.kappa())
}

impl<C: Antiholomorphic> Form<C> {
    /// `dbar`, acting on coefficients; the frame is holomorphic.
    pub fn dbar(&self) -> Self {
        let f = self.frame;
        let mut out = Self::zero(f);
        for ((b, s), c) in &self.terms {
            for (dir, d) in c.dbar_parts() {
                let g = match dir {
                    DbarDir::Zb(j) => Gen::Dzb(j),
                    DbarDir::Rho => Gen::DbarRho,
                };
                let gb = Blade(1u64 << f.bit(g));
                if let Some((nb, sign)) = gb.mul(*b) {
                    out.add_component(nb, *s, &if sign < 0 { d.negate() } else { d });
                }
            }
        }
        out
    }
}

impl<C: Coefficient> PartialEq for Form<C> {
    fn eq(&self, o: &Self) -> bool {
        self.frame == o.frame && self.minus(o).is_zero()
    }
}

fn gen_name(g: Gen) -> String {
    match g {
        Gen::Dz(i) => alloc::format!("dz{}", i + 1),
        Gen::Dzb(i) => alloc::format!("dzb{}", i + 1),
        Gen::DbarRho => String::from("dbar_rho"),
        Gen::E(i) => alloc::format!("e{}", i + 1),
        Gen::EDual(i) => alloc::format!("E{}", i + 1),
    }
}

/// Terms as `(coefficient)*g1*g2*...`, with `[F1]`/`[F*1]` marking the `F` slot.
impl<C: Coefficient> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((b, s), c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({})", c)?;
            for g in self.frame.gens_of(*b) {
                write!(f, "*{}", gen_name(g))?;
            }
            match s {
                Slot::Scalar => {}
                Slot::F(i) => write!(f, "[F{}]", i + 1)?,
                Slot::FDual(i) => write!(f, "[F*{}]", i + 1)?,
            }
        }
        Ok(())
    }
}

/// All subsets of `0..n` of size `k`, as bitmasks.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..(1u64 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Polynomial, Ring};
    use crate::rational::GaussianRational as Q;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn covectors_anticommute() {
        let fr = Frame::new(2);
        let e1 = Form::monomial(fr, q(1), &[Gen::EDual(0)], Slot::Scalar);
        let e2 = Form::monomial(fr, q(1), &[Gen::EDual(1)], Slot::Scalar);
        let e12 = Form::monomial(fr, q(1), &[Gen::EDual(0), Gen::EDual(1)], Slot::Scalar);
        assert_eq!(e1.wedge(&e2).unwrap(), e12);
        assert_eq!(e2.wedge(&e1).unwrap(), e12.negate());
        assert!(e1.wedge(&e1).unwrap().is_zero());
    }

    #[test]
    fn mixed_wedge_sign() {
        // (dzb1 e1)(dzb2 e2) = -dzb1 dzb2 e1 e2: moving e1 past dzb2 costs one sign
        let fr = Frame::new(2);
        let a = Form::monomial(fr, q(1), &[Gen::Dzb(0), Gen::E(0)], Slot::Scalar);
        let b = Form::monomial(fr, q(1), &[Gen::Dzb(1), Gen::E(1)], Slot::Scalar);
        let expect = Form::monomial(fr, q(-1), &[Gen::Dzb(0), Gen::Dzb(1), Gen::E(0), Gen::E(1)], Slot::Scalar);
        assert_eq!(a.wedge(&b).unwrap(), expect);
    }

    #[test]
    fn graded_commutativity_on_basis() {
        let fr = Frame::new(2);
        let all = (1u64 << (4 * 2 + 1)) - 1;
        for x in 0..=all {
            for y in [0b1u64, 0b110, 0b1_0010_0000, 0b1_1000_0001] {
                let a = Form::monomial(fr, q(1), &fr.gens_of(Blade(x)), Slot::Scalar);
                let b = Form::monomial(fr, q(1), &fr.gens_of(Blade(y)), Slot::Scalar);
                let da = a.degrees(Blade(x)).sharp();
                let db = b.degrees(Blade(y)).sharp();
                let lhs = a.wedge(&b).unwrap();
                let rhs = b.wedge(&a).unwrap();
                let rhs = if (da * db) % 2 != 0 { rhs.negate() } else { rhs };
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn dual_pairing_examples() {
        let fr = Frame::new(2);
        let r = Ring::holomorphic(2);
        let z = |i| Polynomial::var(r, i);
        let one = Polynomial::one(r);
        let u = Form::monomial(fr, one.clone(), &[Gen::E(0), Gen::E(1)], Slot::Scalar);
        let t = Form::monomial(fr, one.clone(), &[Gen::EDual(0), Gen::EDual(1)], Slot::Scalar);
        assert_eq!(kappa_pair(&u, &t).unwrap().as_scalar(), Some(one.clone()));
        let e1 = Form::monomial(fr, one.clone(), &[Gen::E(0)], Slot::Scalar);
        let e2d = Form::monomial(fr, one.clone(), &[Gen::EDual(1)], Slot::Scalar);
        assert!(kappa_pair(&e1, &e2d).unwrap().is_zero());
        let f1 = &z(0) * &z(1);
        let f2 = z(1).pow(3);
        let a = Form::vector(fr, &[z(0), z(1)]);
        let b = Form::covector(fr, &[f1.clone(), f2.clone()]);
        let expect = &(&z(0) * &f1) + &(&z(1) * &f2);
        assert_eq!(kappa_pair(&a, &b).unwrap().as_scalar(), Some(expect));
    }

    #[test]
    fn dbar_is_a_derivation_compatible_with_kappa() {
        let fr = Frame::new(2);
        let r = Ring::with_conjugates(2);
        let v = |i| Polynomial::var(r, i);
        let a = Form::monomial(fr, &v(2) * &v(0), &[Gen::Dz(1), Gen::Dzb(1), Gen::E(0)], Slot::Scalar)
            .plus(&Form::monomial(fr, v(3), &[Gen::E(1)], Slot::Scalar));
        let b = Form::monomial(fr, &v(3) * &v(2), &[Gen::EDual(0)], Slot::Scalar)
            .plus(&Form::monomial(fr, v(1), &[Gen::Dzb(0), Gen::EDual(1)], Slot::Scalar));
        // dbar<a,b> = <dbar a, b> + (-1)^{#a} <a, dbar b>, a is odd
        let lhs = kappa_pair(&a, &b).unwrap().dbar();
        let rhs = kappa_pair(&a.dbar(), &b).unwrap().minus(&kappa_pair(&a, &b.dbar()).unwrap());
        assert_eq!(lhs, rhs);
        assert!(a.dbar().dbar().is_zero());
    }

    #[test]
    fn f_slots_pair_componentwise() {
        let fr = Frame::with_f_rank(1, 2);
        let a = Form::monomial(fr, q(2), &[Gen::E(0)], Slot::FDual(1));
        let b = Form::monomial(fr, q(3), &[Gen::EDual(0)], Slot::F(1));
        let c = Form::monomial(fr, q(3), &[Gen::EDual(0)], Slot::F(0));
        assert_eq!(kappa_pair(&a, &b).unwrap().as_scalar(), Some(q(6)));
        assert!(kappa_pair(&a, &c).unwrap().is_zero());
        assert!(b.wedge(&c).is_err());
    }
}
