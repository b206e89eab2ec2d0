//! Contractions defined by adjunction against the dual pairing.
//!
//! Each operator is computed by pairing against every basis element of the
//! complementary degree and reading off the unique solution; the pairing
//! matrix between `e_I` and `e_J^*` is diagonal with entries `±1`, so the
//! solve is a sign lookup.

use super::{subsets, Blade, Form, Slot};
use crate::coeff::Coefficient;
use crate::error::{Error, Result};

/// How `iota_gamma` treats the differential-form part of its argument.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum ContractionConvention {
    /// Literal adjoint: the form part passes through without a sign.
    Adjoint,
    /// Graded derivation: passing a form of degree `a` costs `(-1)^a`.
    #[default]
    Derivation,
}

impl<C: Coefficient> Form<C> {
    /// `b ∧ self` for a basis blade `b`.
    fn blade_times(&self, b: Blade) -> Self {
        let mut out = Self::zero(self.frame);
        for ((x, s), c) in &self.terms {
            if let Some((y, sign)) = b.mul(*x) {
                out.add_component(y, *s, &if sign < 0 { c.negate() } else { c.clone() });
            }
        }
        out
    }

    /// `self ∧ b` for a basis blade `b`.
    fn times_blade(&self, b: Blade) -> Self {
        let mut out = Self::zero(self.frame);
        for ((x, s), c) in &self.terms {
            if let Some((y, sign)) = x.mul(b) {
                out.add_component(y, *s, &if sign < 0 { c.negate() } else { c.clone() });
            }
        }
        out
    }

    /// Components whose `∧V^∨` degree is `l`.
    fn with_vdual_degree(&self, l: u32) -> Self {
        let mask = self.frame.mask_vdual();
        self.filter(|b, _| (b.0 & mask).count_ones() == l)
    }

    fn with_v_degree(&self, k: u32) -> Self {
        let mask = self.frame.mask_v();
        self.filter(|b, _| (b.0 & mask).count_ones() == k)
    }
}

fn pure_degree_one<C: Coefficient>(x: &Form<C>, dual: bool, what: &'static str) -> Result<()> {
    let f = x.frame;
    let mask = if dual { f.mask_vdual() } else { f.mask_v() };
    for (b, s) in x.terms.keys() {
        if b.0 & !mask != 0 || b.count() != 1 || *s != Slot::Scalar {
            return Err(Error::WrongType(what));
        }
    }
    Ok(())
}

/// `iota_alpha(w)` for `alpha` in `A^0(V)`: `<nu, iota_alpha(w)> = <alpha ∧ nu, w>`.
pub fn iota_alpha<C: Coefficient>(alpha: &Form<C>, w: &Form<C>) -> Result<Form<C>> {
    if alpha.frame != w.frame {
        return Err(Error::FrameMismatch);
    }
    pure_degree_one(alpha, false, "alpha must lie in A^0(V)")?;
    if w.has_v_part() {
        return Err(Error::WrongType("w must be valued in the exterior algebra of V^∨"));
    }
    let f = w.frame;
    let mut out = Form::zero(f);
    for l in 1..=f.n as u32 {
        let wl = w.with_vdual_degree(l);
        if wl.is_zero() {
            continue;
        }
        for set in subsets(f.n, l as usize - 1) {
            let nu = f.frame_blade(set, false);
            let rhs = alpha.wedge(&wl.blade_times(nu))?.kappa();
            let dual = f.frame_blade(set, true);
            for ((rb, slot), c) in &rhs.terms {
                let target = Blade(rb.0 | dual.0);
                let (_, sign) = nu.mul(target).expect("disjoint generators");
                out.add_component(target, *slot, &if sign < 0 { c.negate() } else { c.clone() });
            }
        }
    }
    Ok(out)
}

/// `iota_gamma(nu)` for `gamma` in `A^0(V^∨)`: `<iota_gamma(nu), w> = <nu, gamma ∧ w>`,
/// with the form part handled per `conv`.
pub fn iota_gamma<C: Coefficient>(
    gamma: &Form<C>,
    nu: &Form<C>,
    conv: ContractionConvention,
) -> Result<Form<C>> {
    if gamma.frame != nu.frame {
        return Err(Error::FrameMismatch);
    }
    pure_degree_one(gamma, true, "gamma must lie in A^0(V^∨)")?;
    if nu.has_vdual_part() {
        return Err(Error::WrongType("nu must be valued in the exterior algebra of V"));
    }
    let f = nu.frame;
    let mut out = Form::zero(f);
    for k in 1..=f.n as u32 {
        let nk = nu.with_v_degree(k);
        if nk.is_zero() {
            continue;
        }
        for set in subsets(f.n, k as usize - 1) {
            let w = f.frame_blade(set, true);
            let rhs = nk.wedge(&gamma.times_blade(w))?.kappa();
            let e = f.frame_blade(set, false);
            for ((rb, slot), c) in &rhs.terms {
                let target = Blade(rb.0 | e.0);
                let (_, mut sign) = target.mul(w).expect("disjoint generators");
                if conv == ContractionConvention::Derivation && rb.count() % 2 == 1 {
                    sign = -sign;
                }
                out.add_component(target, *slot, &if sign < 0 { c.negate() } else { c.clone() });
            }
        }
    }
    Ok(out)
}

/// `u ⌟ theta` for `u` valued in `∧V` and `theta` valued in `∧V^∨`, defined by
/// `<u⌟theta, nu*> = (-1)^{a l + b #u + l(l-1)/2} <u, theta ∧ nu*>` on each
/// homogeneous piece (`a`, `b` the form degrees of `u`, `theta`).
pub fn contract_u<C: Coefficient>(u: &Form<C>, theta: &Form<C>) -> Result<Form<C>> {
    if u.frame != theta.frame {
        return Err(Error::FrameMismatch);
    }
    if u.has_vdual_part() {
        return Err(Error::WrongType("u must be valued in the exterior algebra of V"));
    }
    if theta.has_v_part() {
        return Err(Error::WrongType("theta must be valued in the exterior algebra of V^∨"));
    }
    let f = u.frame;
    let mut out = Form::zero(f);
    let up = u.homogeneous_parts();
    let tp = theta.homogeneous_parts();
    for (&(a, k, _), ui) in &up {
        for (&(b, _, l), ti) in &tp {
            if k < l {
                return Err(Error::DegreeTooLow {
                    k: k as usize,
                    l: l as usize,
                });
            }
            let exp = a * l + b * (a + k) + l * l.saturating_sub(1) / 2;
            for set in subsets(f.n, (k - l) as usize) {
                let nu = f.frame_blade(set, true);
                let rhs = ui.wedge(&ti.times_blade(nu))?.kappa();
                let e = f.frame_blade(set, false);
                for ((rb, slot), c) in &rhs.terms {
                    let target = Blade(rb.0 | e.0);
                    let (_, mut sign) = target.mul(nu).expect("disjoint generators");
                    if exp % 2 == 1 {
                        sign = -sign;
                    }
                    out.add_component(target, *slot, &if sign < 0 { c.negate() } else { c.clone() });
                }
            }
        }
    }
    Ok(out)
}

/// The Koszul contraction `iota_s` by a section with components `s`.
pub fn iota_section<C: Coefficient>(s: &[C], w: &Form<C>) -> Result<Form<C>> {
    if s.len() != w.frame.n {
        return Err(Error::Arity {
            expected: w.frame.n,
            found: s.len(),
        });
    }
    iota_alpha(&Form::vector(w.frame, s), w)
}

/// `sum_i c_i ∧ iota_{e_i^*}(x)`.
pub fn dual_frame_operator<C: Coefficient>(
    c: &[Form<C>],
    x: &Form<C>,
    unit: &C,
    conv: ContractionConvention,
) -> Result<Form<C>> {
    let f = x.frame;
    let mut out = Form::zero(f);
    for (i, ci) in c.iter().enumerate() {
        let gamma = Form::monomial(f, unit.clone(), &[super::Gen::EDual(i)], Slot::Scalar);
        out = out.plus(&ci.wedge(&iota_gamma(&gamma, x, conv)?)?);
    }
    Ok(out)
}
