//! Identity checks for the contraction calculus.
//!
//! Each `*_defect` function returns `lhs - rhs` for one instance of an
//! identity; an identity holds on the instance iff the defect is zero.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{contract_u, iota_alpha, iota_gamma, iota_section, kappa_pair, subsets, Blade, ContractionConvention, Form, Frame, Slot};
use crate::coeff::{Antiholomorphic, Coefficient};
use crate::error::Result;
use crate::poly::{Polynomial, Ring};
use crate::rational::GaussianRational;

/// Pass/fail counts for one named identity.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub passed: usize,
    pub failed: usize,
    /// Rendering of the first nonzero defect (or error) seen.
    pub first_failure: Option<String>,
}

/// Tallies keyed by identity name.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub laws: BTreeMap<String, Tally>,
}

impl Report {
    pub fn record<C: Coefficient>(&mut self, name: &str, defect: Result<Form<C>>) {
        let t = self.laws.entry(name.to_string()).or_default();
        let failure = match defect {
            Ok(d) if d.is_zero() => None,
            Ok(d) => Some(alloc::format!("{}", d)),
            Err(e) => Some(alloc::format!("error: {}", e)),
        };
        match failure {
            None => t.passed += 1,
            Some(msg) => {
                t.failed += 1;
                t.first_failure.get_or_insert(msg);
            }
        }
    }

    pub fn merge(&mut self, other: Report) {
        for (k, v) in other.laws {
            let t = self.laws.entry(k).or_default();
            t.passed += v.passed;
            t.failed += v.failed;
            if t.first_failure.is_none() {
                t.first_failure = v.first_failure;
            }
        }
    }

    pub fn passed(&self) -> usize {
        self.laws.values().map(|t| t.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.laws.values().map(|t| t.failed).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.failed() == 0
    }
}

fn sharp_parity_split<C: Coefficient>(x: &Form<C>) -> [Form<C>; 2] {
    let even = x.filter(|b, _| !x.degrees(b).is_odd());
    let odd = x.filter(|b, _| x.degrees(b).is_odd());
    [even, odd]
}

/// `alpha ∧ (u⌟theta) - u⌟(iota_alpha theta)`, `alpha` in `A^0(V)`.
pub fn alpha_contraction_defect<C: Coefficient>(alpha: &Form<C>, u: &Form<C>, theta: &Form<C>) -> Result<Form<C>> {
    let lhs = alpha.wedge(&contract_u(u, theta)?)?;
    let rhs = contract_u(u, &iota_alpha(alpha, theta)?)?;
    Ok(lhs.minus(&rhs))
}

/// `iota_gamma(u⌟theta) - u⌟(gamma ∧ theta)`, `gamma` in `A^0(V^∨)`.
pub fn gamma_contraction_defect<C: Coefficient>(
    gamma: &Form<C>,
    u: &Form<C>,
    theta: &Form<C>,
    conv: ContractionConvention,
) -> Result<Form<C>> {
    let lhs = iota_gamma(gamma, &contract_u(u, theta)?, conv)?;
    let rhs = contract_u(u, &gamma.wedge(theta)?)?;
    Ok(lhs.minus(&rhs))
}

/// `alpha ∧ (u⌟theta) - u⌟(alpha theta)` for a scalar form `alpha`.
pub fn form_contraction_defect<C: Coefficient>(alpha: &Form<C>, u: &Form<C>, theta: &Form<C>) -> Result<Form<C>> {
    let lhs = alpha.wedge(&contract_u(u, theta)?)?;
    let rhs = contract_u(u, &alpha.wedge(theta)?)?;
    Ok(lhs.minus(&rhs))
}

/// `dbar(u⌟theta) - (-1)^{#theta}(dbar u)⌟theta - u⌟(dbar theta)`.
pub fn dbar_contraction_defect<C: Antiholomorphic>(u: &Form<C>, theta: &Form<C>) -> Result<Form<C>> {
    let lhs = contract_u(u, theta)?.dbar();
    let [even, odd] = sharp_parity_split(theta);
    let du = u.dbar();
    let rhs = contract_u(&du, &even)?
        .minus(&contract_u(&du, &odd)?)
        .plus(&contract_u(u, &theta.dbar())?);
    Ok(lhs.minus(&rhs))
}

/// `iota_alpha(w ∧ theta) - iota_alpha(w) ∧ theta - (-1)^{#w} w ∧ iota_alpha(theta)`.
pub fn iota_leibniz_defect<C: Coefficient>(alpha: &Form<C>, w: &Form<C>, theta: &Form<C>) -> Result<Form<C>> {
    let lhs = iota_alpha(alpha, &w.wedge(theta)?)?;
    let [even, odd] = sharp_parity_split(w);
    let it = iota_alpha(alpha, theta)?;
    let rhs = iota_alpha(alpha, w)?
        .wedge(theta)?
        .plus(&even.wedge(&it)?)
        .minus(&odd.wedge(&it)?);
    Ok(lhs.minus(&rhs))
}

/// `dbar<a, b> - <dbar a, b> - (-1)^{#a} <a, dbar b>`.
pub fn kappa_leibniz_defect<C: Antiholomorphic>(a: &Form<C>, b: &Form<C>) -> Result<Form<C>> {
    let lhs = kappa_pair(a, b)?.dbar();
    let [even, odd] = sharp_parity_split(a);
    let db = b.dbar();
    let rhs = kappa_pair(&a.dbar(), b)?
        .plus(&kappa_pair(&even, &db)?)
        .minus(&kappa_pair(&odd, &db)?);
    Ok(lhs.minus(&rhs))
}

/// `iota_s(iota_s(w))`.
pub fn iota_squared_defect<C: Coefficient>(s: &[C], w: &Form<C>) -> Result<Form<C>> {
    iota_section(s, &iota_section(s, w)?)
}

/// `a ∧ b - (-1)^{#a #b} b ∧ a`.
pub fn graded_commutativity_defect<C: Coefficient>(a: &Form<C>, b: &Form<C>) -> Result<Form<C>> {
    let [ae, ao] = sharp_parity_split(a);
    let [be, bo] = sharp_parity_split(b);
    let lhs = a.wedge(b)?;
    let rhs = b
        .wedge(&ae)?
        .plus(&be.wedge(&ao)?)
        .minus(&bo.wedge(&ao)?);
    Ok(lhs.minus(&rhs))
}

/// Blades of pure differential forms in `dz`, `dzb` (no cutoff generator).
fn form_blades(frame: Frame) -> Vec<Blade> {
    let n = frame.n();
    (0u64..(1u64 << (2 * n))).map(Blade).collect()
}

fn frame_blades(frame: Frame, k: usize, dual: bool) -> Vec<Blade> {
    subsets(frame.n(), k).into_iter().map(|s| frame.frame_blade(s, dual)).collect()
}

fn basis_form<C: Coefficient>(frame: Frame, c: &C, parts: &[Blade]) -> Form<C> {
    let mut acc = Blade::ONE;
    let mut sign = 1i8;
    for b in parts {
        let (nb, s) = acc.mul(*b).expect("disjoint parts");
        acc = nb;
        sign *= s;
    }
    let c = if sign < 0 { c.negate() } else { c.clone() };
    Form::monomial(frame, c, &frame.gens_of(acc), Slot::Scalar)
}

/// Generic coefficients in `z`, `zb` used to exercise `dbar` in the exhaustive sweep.
pub fn sample_coefficients(n: usize) -> [Polynomial; 2] {
    let r = Ring::with_conjugates(n);
    let z = |i| Polynomial::var(r, i);
    let zb = |i| Polynomial::var(r, n + i);
    let q = GaussianRational::from_ratio;
    let a = &(&(&zb(0) * &z(n - 1)) + &zb(n - 1).pow(2).scale(&q(1, 2))) + &Polynomial::constant(r, GaussianRational::i());
    let b = &(&z(0) * &zb(0)) - &(&zb(n - 1) * &z(0).pow(2)).scale(&q(3, 1));
    [a, b]
}

/// Sweeps every basis element (forms in `dz`, `dzb` times frame blades) of
/// rank `n` through the contraction identities, the Leibniz rule for `iota_alpha`
/// and the `dbar` compatibility of the pairing.
pub fn exhaustive(n: usize, conv: ContractionConvention) -> Report {
    let frame = Frame::new(n);
    let mut report = Report::default();
    let one = Polynomial::one(Ring::with_conjugates(n));
    let [ca, cb] = sample_coefficients(n);
    let forms = form_blades(frame);
    let top = frame.frame_blade((1u64 << n) - 1, false);
    let vectors: Vec<Form<Polynomial>> = frame_blades(frame, 1, false)
        .into_iter()
        .map(|b| basis_form(frame, &one, &[b]))
        .collect();
    let covectors: Vec<Form<Polynomial>> = frame_blades(frame, 1, true)
        .into_iter()
        .map(|b| basis_form(frame, &one, &[b]))
        .collect();
    let thetas: Vec<Form<Polynomial>> = (0..=n)
        .flat_map(|l| frame_blades(frame, l, true))
        .flat_map(|t| forms.iter().map(move |f| (*f, t)))
        .map(|(f, t)| basis_form(frame, &one, &[f, t]))
        .collect();

    for fu in &forms {
        let u = basis_form(frame, &one, &[*fu, top]);
        for theta in &thetas {
            for alpha in &vectors {
                report.record("contraction: alpha", alpha_contraction_defect(alpha, &u, theta));
            }
            if theta.components().all(|(b, _, _)| theta.degrees(b).l < n as u32) {
                for gamma in &covectors {
                    report.record("contraction: gamma", gamma_contraction_defect(gamma, &u, theta, conv));
                }
            }
        }
    }

    let scalar_forms: Vec<Form<Polynomial>> = forms.iter().map(|f| basis_form(frame, &one, &[*f])).collect();
    for k in 0..=n {
        for ub in frame_blades(frame, k, false) {
            for fu in &forms {
                let u = basis_form(frame, &one, &[*fu, ub]);
                let u_dbar = u.scale(&ca);
                for theta in thetas.iter().filter(|t| t.components().all(|(b, _, _)| t.degrees(b).l as usize <= k)) {
                    for alpha in &scalar_forms {
                        report.record("contraction: scalar form", form_contraction_defect(alpha, &u, theta));
                    }
                    report.record("contraction: dbar", dbar_contraction_defect(&u_dbar, &theta.scale(&cb)));
                }
            }
        }
    }

    for alpha in &vectors {
        for w in &thetas {
            for theta in thetas.iter().step_by(7) {
                report.record("iota_alpha leibniz", iota_leibniz_defect(alpha, &w.scale(&ca), &theta.scale(&cb)));
            }
        }
    }

    let mixed: Vec<Form<Polynomial>> = (0..=n)
        .flat_map(|k| frame_blades(frame, k, false))
        .flat_map(|v| forms.iter().map(move |f| (*f, v)))
        .map(|(f, v)| basis_form(frame, &ca, &[f, v]))
        .collect();
    for a in &mixed {
        for b in thetas.iter().step_by(3) {
            report.record("kappa dbar compatibility", kappa_leibniz_defect(a, &b.scale(&cb)));
            report.record("graded commutativity", graded_commutativity_defect(a, b));
        }
    }

    let r = Ring::with_conjugates(n);
    let s: Vec<Polynomial> = (0..n)
        .map(|i| &Polynomial::var(r, i).pow(i as u32 + 2) + &Polynomial::var(r, (i + 1) % n))
        .collect();
    for theta in &thetas {
        report.record("iota_s squared", iota_squared_defect(&s, theta));
    }
    report
}
