//! The twisted Dolbeault calculus on `U = C^n \ {0}`: `dbar`, `iota_s`, the
//! operator `T_s = sbar ∧`, the formal-cutoff homotopy `T_rho`, `R_rho`, and the
//! form `eta_psi` of the virtual residue.

mod eta;
mod expr;

use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::coeff::Coefficient;
use crate::error::Result;
use crate::exterior::laws::Report;
use crate::exterior::{iota_section, subsets, Form, Frame, Gen, Slot};
use crate::koszul::Section;
use crate::linalg::Matrix;
use crate::poly::Polynomial;

pub use eta::{eta_closed_form, eta_pipeline, eta_psi, eta_psi_with, EtaPsi, EtaRoute, EtaTerm, EtaTree};
pub use expr::{CutoffExpr, Metric, SmoothCoefficient, SmoothExpr};

/// Operators attached to a section and a metric.
#[derive(Clone, Debug)]
pub struct Dolbeault {
    metric: Rc<Metric>,
    frame: Frame,
}

impl Dolbeault {
    pub fn new(s: &Section) -> Self {
        Dolbeault {
            metric: Metric::standard(s),
            frame: Frame::new(s.n()),
        }
    }

    pub fn with_metric(s: &Section, h: Matrix) -> Result<Self> {
        Ok(Dolbeault {
            metric: Metric::hermitian(s, h)?,
            frame: Frame::new(s.n()),
        })
    }

    /// Uses a twisting bundle `F` of rank `r`.
    pub fn with_f_rank(mut self, r: usize) -> Self {
        self.frame = Frame::with_f_rank(self.frame.n(), r);
        self
    }

    pub fn metric(&self) -> &Rc<Metric> {
        &self.metric
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// `num / S^pow` in the coefficient ring `C`.
    pub fn coeff<C: SmoothCoefficient>(&self, num: &Polynomial, pow: u32) -> C {
        C::from_smooth(SmoothExpr::new(&self.metric, num.clone(), pow))
    }

    pub fn one<C: SmoothCoefficient>(&self) -> C {
        C::from_smooth(SmoothExpr::one(&self.metric))
    }

    /// The form `c · g_1 ∧ ... ∧ g_k` with the given slot.
    pub fn monomial<C: SmoothCoefficient>(&self, c: C, gens: &[Gen], slot: Slot) -> Form<C> {
        Form::monomial(self.frame, c, gens, slot)
    }

    fn section_coefficients<C: SmoothCoefficient>(&self) -> Vec<C> {
        self.metric.components().iter().map(|f| self.coeff(f, 0)).collect()
    }

    /// `sbar = sum_i sigma_i / S e_i^*`.
    pub fn s_bar<C: SmoothCoefficient>(&self) -> Form<C> {
        let comps: Vec<C> = self.metric.sigma().iter().map(|s| self.coeff(s, 1)).collect();
        Form::covector(self.frame, &comps)
    }

    pub fn iota_s<C: SmoothCoefficient>(&self, x: &Form<C>) -> Result<Form<C>> {
        iota_section(&self.section_coefficients::<C>(), x)
    }

    /// `T_s(x) = sbar ∧ x`.
    pub fn t_s<C: SmoothCoefficient>(&self, x: &Form<C>) -> Result<Form<C>> {
        self.s_bar::<C>().wedge(x)
    }

    /// `dbar_s = dbar + iota_s`.
    pub fn dbar_s<C: SmoothCoefficient>(&self, x: &Form<C>) -> Result<Form<C>> {
        Ok(x.dbar().plus(&self.iota_s(x)?))
    }

    /// `[dbar, T_s] = dbar T_s + T_s dbar`.
    pub fn dbar_t_s<C: SmoothCoefficient>(&self, x: &Form<C>) -> Result<Form<C>> {
        Ok(self.t_s(x)?.dbar().plus(&self.t_s(&x.dbar())?))
    }

    /// `(1 + [dbar, T_s])^{-1} = sum_{k=0}^{n} (-1)^k [dbar, T_s]^k`.
    pub fn geometric<C: SmoothCoefficient>(&self, x: &Form<C>) -> Result<Form<C>> {
        let mut term = x.clone();
        let mut acc = x.clone();
        for k in 1..=self.n() {
            term = self.dbar_t_s(&term)?;
            acc = if k % 2 == 1 { acc.minus(&term) } else { acc.plus(&term) };
        }
        Ok(acc)
    }

    fn dbar_rho(&self) -> Form<CutoffExpr> {
        Form::monomial(self.frame, CutoffExpr::one(&self.metric), &[Gen::DbarRho], Slot::Scalar)
    }

    /// `T_rho(x) = rho x + (dbar rho) T_s (1 + [dbar, T_s])^{-1} x`.
    pub fn t_rho(&self, x: &Form<CutoffExpr>) -> Result<Form<CutoffExpr>> {
        let tail = self.dbar_rho().wedge(&self.t_s(&self.geometric(x)?)?)?;
        Ok(x.scale(&CutoffExpr::rho(&self.metric)).plus(&tail))
    }

    /// `R_rho(x) = (1 - rho) T_s (1 + [dbar, T_s])^{-1} x`.
    pub fn r_rho(&self, x: &Form<CutoffExpr>) -> Result<Form<CutoffExpr>> {
        let one_minus_rho = CutoffExpr::one(&self.metric).minus(&CutoffExpr::rho(&self.metric));
        Ok(self.t_s(&self.geometric(x)?)?.scale(&one_minus_rho))
    }

    /// Basis forms `c · dzb_J ∧ e_I^*` with `|J| <= max_q`, `|I| <= max_l`, in every
    /// slot (scalar and each `F` component), for `c` in `coefficients`.
    pub fn basis_samples<C: SmoothCoefficient>(&self, max_q: usize, max_l: usize, coefficients: &[C]) -> Vec<Form<C>> {
        let n = self.n();
        let mut slots = alloc::vec![Slot::Scalar];
        slots.extend((0..self.frame.f_rank()).map(Slot::F));
        let mut out = Vec::new();
        for q in 0..=max_q.min(n) {
            for j in subsets(n, q) {
                for l in 0..=max_l.min(n) {
                    for i in subsets(n, l) {
                        let mut gens: Vec<Gen> = (0..n).filter(|b| j >> b & 1 == 1).map(Gen::Dzb).collect();
                        gens.extend((0..n).filter(|b| i >> b & 1 == 1).map(Gen::EDual));
                        for slot in &slots {
                            for c in coefficients {
                                out.push(Form::monomial(self.frame, c.clone(), &gens, *slot));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Checks `[iota_s, T_s] = 1`, `[P, [dbar, T_s]] = 0` for `P` in
    /// `{iota_s, dbar, T_s}`, and the squares `T_s^2 = dbar^2 = dbar_s^2 = 0`,
    /// `[dbar, T_s]^{n+1} = 0` on each sample.
    pub fn check_commutators(&self, samples: &[Form<SmoothExpr>]) -> Report {
        let mut r = Report::default();
        for x in samples {
            r.record("[iota_s, T_s] = 1", (|| Ok(self.iota_s(&self.t_s(x)?)?.plus(&self.t_s(&self.iota_s(x)?)?).minus(x)))());
            r.record(
                "[iota_s, [dbar, T_s]] = 0",
                (|| Ok(self.iota_s(&self.dbar_t_s(x)?)?.minus(&self.dbar_t_s(&self.iota_s(x)?)?)))(),
            );
            r.record(
                "[dbar, [dbar, T_s]] = 0",
                (|| Ok(self.dbar_t_s(x)?.dbar().minus(&self.dbar_t_s(&x.dbar())?)))(),
            );
            r.record(
                "[T_s, [dbar, T_s]] = 0",
                (|| Ok(self.t_s(&self.dbar_t_s(x)?)?.minus(&self.dbar_t_s(&self.t_s(x)?)?)))(),
            );
            r.record("T_s^2 = 0", (|| self.t_s(&self.t_s(x)?))());
            r.record("dbar^2 = 0", Ok(x.dbar().dbar()));
            r.record("dbar_s^2 = 0", (|| self.dbar_s(&self.dbar_s(x)?))());
            r.record(
                "[dbar, T_s]^(n+1) = 0",
                (|| {
                    let mut y = x.clone();
                    for _ in 0..=self.n() {
                        y = self.dbar_t_s(&y)?;
                    }
                    Ok(y)
                })(),
            );
        }
        r
    }

    /// Checks `[dbar_s, R_rho] = 1 - T_rho` on each sample.
    pub fn check_homotopy_formula(&self, samples: &[Form<CutoffExpr>]) -> Report {
        let mut r = Report::default();
        for x in samples {
            let defect = (|| {
                let lhs = self.dbar_s(&self.r_rho(x)?)?.plus(&self.r_rho(&self.dbar_s(x)?)?);
                let rhs = x.minus(&self.t_rho(x)?);
                Ok(lhs.minus(&rhs))
            })();
            r.record("[dbar_s, R_rho] = 1 - T_rho", defect);
        }
        r
    }

    /// Generic polynomial coefficients in `z`, `zb` for sample forms.
    pub fn sample_coefficients<C: SmoothCoefficient>(&self) -> Vec<C> {
        let [a, b] = crate::exterior::laws::sample_coefficients(self.n());
        alloc::vec![self.one(), self.coeff(&a, 0), self.coeff(&b, 1)]
    }
}
