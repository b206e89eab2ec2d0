//! Random-coefficient instances of the contraction identities.

use locdual_core::exterior::laws::{
    alpha_contraction_defect, dbar_contraction_defect, form_contraction_defect, gamma_contraction_defect, Report,
};
use locdual_core::exterior::{ContractionConvention, Form, Frame, Gen, Slot};
use locdual_core::{GaussianRational, Monomial, Polynomial, Ring};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Sampler {
    rng: StdRng,
    frame: Frame,
    ring: Ring,
}

impl Sampler {
    fn coefficient(&mut self) -> Polynomial {
        let nvars = self.ring.nvars();
        let mut p = Polynomial::zero(self.ring);
        for _ in 0..self.rng.gen_range(1..=3) {
            let exps: Vec<u32> = (0..nvars).map(|_| if self.rng.gen_bool(0.3) { self.rng.gen_range(1..=2) } else { 0 }).collect();
            let num = self.rng.gen_range(-5i64..=5);
            let den = self.rng.gen_range(1i64..=3);
            let mut c = GaussianRational::from_ratio(num, den);
            if self.rng.gen_bool(0.3) {
                c = c * GaussianRational::i();
            }
            p.add_term(Monomial(exps), &c);
        }
        if p.is_zero() {
            Polynomial::one(self.ring)
        } else {
            p
        }
    }

    fn form_gens(&mut self) -> Vec<Gen> {
        let n = self.frame.n();
        let mut gens = Vec::new();
        for i in 0..n {
            if self.rng.gen_bool(0.3) {
                gens.push(Gen::Dz(i));
            }
            if self.rng.gen_bool(0.3) {
                gens.push(Gen::Dzb(i));
            }
        }
        gens
    }

    fn subset(&mut self, size: usize) -> Vec<usize> {
        let n = self.frame.n();
        rand::seq::index::sample(&mut self.rng, n, size).into_vec()
    }

    /// A sum of two terms `c · (form) ∧ e_I` (or `e_I^*`), all with `|I| = size`.
    fn homogeneous(&mut self, size: usize, dual: bool) -> Form<Polynomial> {
        let mut out = Form::zero(self.frame);
        for _ in 0..2 {
            let mut gens = self.form_gens();
            let mut set = self.subset(size);
            set.sort_unstable();
            gens.extend(set.into_iter().map(|i| if dual { Gen::EDual(i) } else { Gen::E(i) }));
            let c = self.coefficient();
            out = out.plus(&Form::monomial(self.frame, c, &gens, Slot::Scalar));
        }
        out
    }

    fn pure_degree_one(&mut self, dual: bool) -> Form<Polynomial> {
        let comps: Vec<Polynomial> = (0..self.frame.n()).map(|_| self.coefficient()).collect();
        if dual {
            Form::covector(self.frame, &comps)
        } else {
            Form::vector(self.frame, &comps)
        }
    }
}

/// Runs `count` random instances of each contraction identity in rank `n`.
pub fn random_contraction_report(n: usize, count: usize, seed: u64) -> Report {
    let mut s = Sampler {
        rng: StdRng::seed_from_u64(seed),
        frame: Frame::new(n),
        ring: Ring::with_conjugates(n),
    };
    let mut report = Report::default();
    for _ in 0..count {
        let u = s.homogeneous(n, false);
        let l = s.rng.gen_range(0..n);
        let theta = s.homogeneous(l, true);
        let alpha = s.pure_degree_one(false);
        let gamma = s.pure_degree_one(true);
        report.record("contraction: alpha", alpha_contraction_defect(&alpha, &u, &theta));
        report.record(
            "contraction: gamma",
            gamma_contraction_defect(&gamma, &u, &theta, ContractionConvention::Derivation),
        );

        let k = s.rng.gen_range(0..=n);
        let u = s.homogeneous(k, false);
        let l = s.rng.gen_range(0..=k);
        let theta = s.homogeneous(l, true);
        let gens = s.form_gens();
        let c = s.coefficient();
        let form = Form::monomial(s.frame, c, &gens, Slot::Scalar);
        report.record("contraction: scalar form", form_contraction_defect(&form, &u, &theta));
        report.record("contraction: dbar", dbar_contraction_defect(&u, &theta));
    }
    report
}
