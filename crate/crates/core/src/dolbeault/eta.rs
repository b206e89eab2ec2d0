//! The form `eta_psi` for `psi = g h dz_1..dz_n ⊗ e_1..e_n`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{Dolbeault, Metric, SmoothExpr};
use crate::error::{Error, Result};
use crate::exterior::{contract_u, dual_frame_operator, ContractionConvention, Form, Gen, Slot};
use crate::koszul::Section;
use crate::poly::{Monomial, Polynomial};
use crate::rational::GaussianRational;

/// How `eta_psi` was produced from `psi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaRoute {
    /// `S^{-1}(sum fbar_i iota_{e_i^*}) (dbar iota_sbar)^{n-1} psi`, with the
    /// given convention for contractions by `e_i^*`.
    Contraction(ContractionConvention),
    /// `psi ⌟ T_s [dbar, T_s]^{n-1}(1)`.
    Wedge,
}

impl core::fmt::Display for EtaRoute {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            EtaRoute::Contraction(ContractionConvention::Derivation) => f.write_str("contraction (derivation)"),
            EtaRoute::Contraction(ContractionConvention::Adjoint) => f.write_str("contraction (adjoint)"),
            EtaRoute::Wedge => f.write_str("wedge"),
        }
    }
}

pub const ROUTES: [EtaRoute; 3] = [
    EtaRoute::Contraction(ContractionConvention::Derivation),
    EtaRoute::Contraction(ContractionConvention::Adjoint),
    EtaRoute::Wedge,
];

/// The closed form together with the outcome of each operator route.
#[derive(Clone, Debug)]
pub struct EtaPsi {
    pub form: Form<SmoothExpr>,
    pub routes: Vec<(EtaRoute, bool)>,
    pub dbar_closed: bool,
}

impl EtaPsi {
    pub fn matching_routes(&self) -> impl Iterator<Item = EtaRoute> + '_ {
        self.routes.iter().filter(|(_, ok)| *ok).map(|(r, _)| *r)
    }
}

fn psi(d: &Dolbeault, g: &Polynomial, h: &Polynomial) -> Form<SmoothExpr> {
    let n = d.n();
    let gh = &g.with_conjugate_vars() * &h.with_conjugate_vars();
    let mut gens: Vec<Gen> = (0..n).map(Gen::Dz).collect();
    gens.extend((0..n).map(Gen::E));
    d.monomial(d.coeff(&gh, 0), &gens, Slot::Scalar)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `(-1)^n (n-1)! g h sum_i (-1)^{i-1} sigma_i / S^n dbar sigma_1 .. ^i .. dbar sigma_n ∧ dz_1..dz_n`.
pub fn eta_closed_form(d: &Dolbeault, g: &Polynomial, h: &Polynomial) -> Result<Form<SmoothExpr>> {
    let n = d.n();
    let gh = &g.with_conjugate_vars() * &h.with_conjugate_vars();
    let sigma = d.metric().sigma();
    let dbar_sigma: Vec<Form<SmoothExpr>> = sigma
        .iter()
        .map(|s| Form::scalar(d.frame(), d.coeff::<SmoothExpr>(s, 0)).dbar())
        .collect();
    let dz = d.monomial(d.one::<SmoothExpr>(), &(0..n).map(Gen::Dz).collect::<Vec<_>>(), Slot::Scalar);
    let mut out = Form::zero(d.frame());
    for i in 0..n {
        let mut c = (&gh * &sigma[i]).scale(&GaussianRational::from_integer(factorial(n - 1)));
        if (n + i) % 2 == 1 {
            c = c.scale(&GaussianRational::from_integer(-1));
        }
        let mut term = Form::scalar(d.frame(), d.coeff::<SmoothExpr>(&c, n as u32));
        for (j, ds) in dbar_sigma.iter().enumerate() {
            if j != i {
                term = term.wedge(ds)?;
            }
        }
        out = out.plus(&term.wedge(&dz)?);
    }
    Ok(out)
}

/// `eta_psi` through one operator route.
pub fn eta_pipeline(d: &Dolbeault, g: &Polynomial, h: &Polynomial, route: EtaRoute) -> Result<Form<SmoothExpr>> {
    let n = d.n();
    let psi = psi(d, g, h);
    let one = d.one::<SmoothExpr>();
    match route {
        EtaRoute::Contraction(conv) => {
            let sigma = d.metric().sigma();
            let scalars: Vec<Form<SmoothExpr>> = sigma
                .iter()
                .map(|s| Form::scalar(d.frame(), d.coeff::<SmoothExpr>(s, 1)))
                .collect();
            let dbars: Vec<Form<SmoothExpr>> = scalars.iter().map(|c| c.dbar()).collect();
            let mut x = psi;
            for _ in 1..n {
                x = dual_frame_operator(&dbars, &x, &one, conv)?;
            }
            dual_frame_operator(&scalars, &x, &one, conv)
        }
        EtaRoute::Wedge => {
            let mut theta = Form::scalar(d.frame(), one);
            for _ in 1..n {
                theta = d.dbar_t_s(&theta)?;
            }
            contract_u(&psi, &d.t_s(&theta)?)
        }
    }
}

/// `eta_psi` for the standard metric.
pub fn eta_psi(g: &Polynomial, h: &Polynomial, s: &Section) -> Result<EtaPsi> {
    eta_psi_with(&Dolbeault::new(s), g, h)
}

/// Computes the closed form and every operator route, and fails with
/// `ConventionMismatch` unless at least one route reproduces the closed form.
pub fn eta_psi_with(d: &Dolbeault, g: &Polynomial, h: &Polynomial) -> Result<EtaPsi> {
    let ring = d.metric().components()[0].ring();
    for p in [g, h] {
        if p.ring().n != ring.n || p.ring().conjugates {
            return Err(Error::RingMismatch);
        }
    }
    let form = eta_closed_form(d, g, h)?;
    let mut routes = Vec::with_capacity(ROUTES.len());
    for route in ROUTES {
        routes.push((route, eta_pipeline(d, g, h, route)? == form));
    }
    if !routes.iter().any(|(_, ok)| *ok) {
        let tried: Vec<String> = routes.iter().map(|(r, _)| format!("{}", r)).collect();
        return Err(Error::ConventionMismatch(format!(
            "no route reproduces the closed form of eta_psi (tried {})",
            tried.join(", ")
        )));
    }
    let dbar_closed = form.dbar().is_zero();
    if !dbar_closed {
        return Err(Error::ConventionMismatch("eta_psi is not dbar-closed".into()));
    }
    Ok(EtaPsi {
        form,
        routes,
        dbar_closed,
    })
}

/// One monomial of `eta_psi`:
/// `sign · coeff · z^z zb^zb / S^ss_power · dzb_J ∧ dz_1 ∧ .. ∧ dz_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaTerm {
    /// The index (1-based) missing from `J`.
    pub i: usize,
    /// `(-1)^{i-1}`.
    pub sign: i8,
    pub coeff: GaussianRational,
    pub z: Vec<u32>,
    pub zb: Vec<u32>,
    pub ss_power: u32,
    /// `J`, ascending and 1-based.
    pub dzb: Vec<usize>,
}

/// `eta_psi` flattened into monomial terms, together with `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaTree {
    pub n: usize,
    pub ss: Polynomial,
    pub terms: Vec<EtaTerm>,
}

impl EtaTree {
    pub fn from_form(metric: &Metric, eta: &Form<SmoothExpr>) -> Result<Self> {
        let f = eta.frame();
        let n = f.n();
        let mut terms = Vec::new();
        for (blade, slot, c) in eta.components() {
            let gens = f.gens_of(blade);
            let dz: Vec<usize> = gens.iter().filter_map(|g| if let Gen::Dz(i) = g { Some(*i) } else { None }).collect();
            let dzb: Vec<usize> = gens.iter().filter_map(|g| if let Gen::Dzb(i) = g { Some(*i) } else { None }).collect();
            if slot != Slot::Scalar || dz.len() != n || dzb.len() + 1 != n || gens.len() != 2 * n - 1 {
                return Err(Error::WrongType("eta must be a scalar (n, n-1)-form"));
            }
            let missing = (0..n).find(|i| !dzb.contains(i)).expect("one index is missing");
            // canonical order puts dz first: dz_1..dz_n dzb_J = (-1)^{n|J|} dzb_J dz_1..dz_n
            let reorder = (n * dzb.len()) % 2 == 1;
            let sign: i8 = if missing % 2 == 0 { 1 } else { -1 };
            let flip = reorder != (sign < 0);
            let c = c.reduced();
            for (m, a) in c.numerator().terms() {
                let e = m.exponents();
                terms.push(EtaTerm {
                    i: missing + 1,
                    sign,
                    coeff: if flip { -a.clone() } else { a.clone() },
                    z: e[..n].to_vec(),
                    zb: e[n..].to_vec(),
                    ss_power: c.ss_power(),
                    dzb: dzb.iter().map(|j| j + 1).collect(),
                });
            }
        }
        Ok(EtaTree {
            n,
            ss: metric.ss().clone(),
            terms,
        })
    }

    /// The coefficient of `dzb_J ∧ dz_1..dz_n` at `z`, keyed by the 1-based `J`.
    pub fn coefficients_at(&self, z: &[Complex64]) -> Vec<(Vec<usize>, Complex64)> {
        let s = self.ss.eval(z);
        let mut out: Vec<(Vec<usize>, Complex64)> = Vec::new();
        for t in &self.terms {
            let mut exps = t.z.clone();
            exps.extend(&t.zb);
            let mono = Polynomial::term(self.ss.ring(), Monomial(exps), t.coeff.clone()).eval(z);
            let v = mono * f64::from(t.sign) / s.powu(t.ss_power);
            match out.iter_mut().find(|(j, _)| *j == t.dzb) {
                Some((_, acc)) => *acc += v,
                None => out.push((t.dzb.clone(), v)),
            }
        }
        out
    }
}
