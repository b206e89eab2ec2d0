//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{diagonal_residue, poly, regression_set, section, Instance};
use locdual::samples::random_contraction_report;
use locdual_core::dolbeault::{eta_psi, CutoffExpr, Dolbeault, EtaRoute, SmoothExpr};
use locdual_core::exterior::laws::{exhaustive, Report};
use locdual_core::exterior::ContractionConvention;
use locdual_core::koszul::{
    default_degree_range, euler_characteristic, koszul_homology_graded, milnor_algebra, Section,
};
use locdual_core::residue::{
    duality_check, groth_residue, hessian_residue, pairing_prefactor_sign, pairing_psi, polynomial_determinant,
};
use locdual_core::vres::{compare_exact, radius_independence, virtual_residue, QuadratureSpec};
use locdual_core::{GaussianRational, Polynomial};

const TOL_N1: f64 = 1e-8;
const TOL_N2: f64 = 1e-3;
const RESOLUTION_N1: usize = 256;
const RESOLUTION_N2: usize = 64;
const RANDOM_SAMPLES_N3: usize = 100;

struct Outcome {
    pass: bool,
    detail: String,
    /// Wall-clock budget.
    budget: Option<Duration>,
}

fn spec(n: usize) -> QuadratureSpec {
    match n {
        1 => QuadratureSpec::new(1.0, RESOLUTION_N1, TOL_N1).unwrap(),
        _ => QuadratureSpec::new(1.0, RESOLUTION_N2, TOL_N2).unwrap(),
    }
}

fn tol(n: usize) -> f64 {
    if n == 1 {
        TOL_N1
    } else {
        TOL_N2
    }
}

/// Jacobian determinant of the section; `res_s` of it is `mu`.
fn jacobian(s: &Section) -> Polynomial {
    let n = s.n();
    let m: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| (0..n).map(|j| s.components()[i].derivative(j)).collect())
        .collect();
    polynomial_determinant(&m)
}

fn failures(list: Vec<String>, total: usize, what: &str) -> (bool, String) {
    if list.is_empty() {
        (true, format!("{} {}", total, what))
    } else {
        (false, format!("{}/{} {} failed: {}", list.len(), total, what, list.join("; ")))
    }
}

fn local_duality() -> Outcome {
    let set = regression_set();
    let mut bad = Vec::new();
    for inst in &set {
        match duality_check(&inst.section) {
            Ok(c) if c.nondegenerate => {}
            Ok(c) => bad.push(format!("{}: det {}", inst.name, c.determinant)),
            Err(e) => bad.push(format!("{}: {}", inst.name, e)),
        }
    }
    let (pass, detail) = failures(bad, set.len(), "pairing matrices with det != 0");
    Outcome {
        pass,
        detail,
        budget: Some(Duration::from_secs(10)),
    }
}

fn koszul_consistency() -> Outcome {
    let set = regression_set();
    let mut bad = Vec::new();
    for inst in &set {
        let s = &inst.section;
        let check = || -> Result<Option<String>, locdual_core::Error> {
            let mu = milnor_algebra(s)?.mu();
            let table = koszul_homology_graded(s, default_degree_range(s)?)?;
            let chi = euler_characteristic(&table);
            if !table.vanishes_off_zero() || table.total(0) != mu || chi != mu as i64 {
                return Ok(Some(format!("{}: H0 {} chi {} mu {}", inst.name, table.total(0), chi, mu)));
            }
            Ok(None)
        };
        match check() {
            Ok(None) => {}
            Ok(Some(m)) => bad.push(m),
            Err(e) => bad.push(format!("{}: {}", inst.name, e)),
        }
    }
    let (pass, detail) = failures(bad, set.len(), "sections with H^k = 0 off k = 0 and sum H0 = chi = mu");
    Outcome {
        pass,
        detail,
        budget: Some(Duration::from_secs(30)),
    }
}

fn residue_oracle() -> Outcome {
    // The core rejects sections vanishing away from the origin, so every
    // component is a constant multiple of a pure power.
    let cases: Vec<(Section, &str)> = vec![
        (section(1, "[z1]"), "1"),
        (section(1, "[2*z1]"), "3 + z1"),
        (section(1, "[z1^2]"), "z1"),
        (section(1, "[3*z1^2]"), "1 + z1"),
        (section(1, "[z1^3]"), "z1^2 - 4*z1"),
        (section(1, "[4*z1^3]"), "5*z1^2"),
        (section(1, "[z1^4]"), "z1^3 + z1^4"),
        (section(1, "[i*z1^2]"), "2 - i*z1"),
        (section(1, "[(1 + i)*z1^3]"), "z1^2 + z1^7"),
        (section(1, "[-1/2*z1^5]"), "z1^4 - 3*z1^2 + 1"),
        (section(1, "[7*z1^6]"), "z1^5 + z1^2"),
        (section(1, "[2/3*z1^7]"), "(z1 + 1)^7"),
        (section(2, "[z1, z2]"), "2"),
        (section(2, "[z1^2, z2^2]"), "z1*z2"),
        (section(2, "[3*z1^2, 3*z2^2]"), "z1*z2"),
        (section(2, "[3*z1^2, 4*z2^3]"), "z1*z2^2 + z2"),
        (section(2, "[i*z1^3, -z2^2]"), "(1 + z1 + z2)^4"),
        (section(2, "[z1^4, 2*z2]"), "z1^3 - z1^3*z2 + 1/5"),
        (section(2, "[5*z1^2, 1/2*z2^4]"), "(z1 - i*z2)^5"),
        (section(3, "[z1^2, z2^2, z3^2]"), "z1*z2*z3"),
        (section(3, "[z1, z2^3, 2*z3^2]"), "(z1 + z2 + z3)^4 + 5"),
        (section(3, "[-z1^2, i*z2^2, z3^3]"), "(1 + z1)*(1 - z2)*(z3 + z3^2)*(z1 + z2)"),
    ];
    let mut bad = Vec::new();
    let mut nonzero = 0;
    for (s, g) in &cases {
        let g = poly(s.n(), g);
        let oracle = diagonal_residue(&g, s);
        if !oracle.is_zero() {
            nonzero += 1;
        }
        match groth_residue(&g, s) {
            Ok(r) if r.value == oracle && r.unit_power == 0 => {}
            Ok(r) => bad.push(format!("g = {}: {} vs oracle {}", g, r.value, oracle)),
            Err(e) => bad.push(format!("g = {}: {}", g, e)),
        }
    }
    let (pass, detail) = failures(bad, cases.len(), "instances equal to the coefficient oracle");
    Outcome {
        pass: pass && cases.len() >= 20,
        detail: format!("{} ({} nonzero)", detail, nonzero),
        budget: None,
    }
}

fn hessian_invariant() -> Outcome {
    let set = regression_set();
    let gradients: Vec<&Instance> = set.iter().filter(|i| i.potential.is_some()).collect();
    let mut bad = Vec::new();
    for inst in &gradients {
        let f = inst.potential.as_ref().unwrap();
        let mu = milnor_algebra(&inst.section).map(|a| a.mu());
        match (hessian_residue(f), mu) {
            (Ok(r), Ok(mu)) if r.value == GaussianRational::from_integer(mu as i64) => {}
            (Ok(r), Ok(mu)) => bad.push(format!("{}: {} vs mu {}", inst.name, r.value, mu)),
            (Err(e), _) | (_, Err(e)) => bad.push(format!("{}: {}", inst.name, e)),
        }
    }
    let (pass, detail) = failures(bad, gradients.len(), "gradient sections with res(Hess) = mu");
    Outcome {
        pass,
        detail,
        budget: None,
    }
}

fn operator_identities() -> Outcome {
    let mut report = Report::default();
    for n in 1..=2 {
        report.merge(exhaustive(n, ContractionConvention::Derivation));
    }
    let mut sections: Vec<Section> = regression_set().into_iter().map(|i| i.section).collect();
    sections.push(section(3, "[z1, z2, z3]"));
    for s in &sections {
        let n = s.n();
        let d = Dolbeault::new(s);
        let max_q = if n <= 2 { n } else { 1 };
        let smooth = d.basis_samples::<SmoothExpr>(max_q, n, &d.sample_coefficients());
        report.merge(d.check_commutators(&smooth));
        if n <= 2 {
            let cut = d.basis_samples::<CutoffExpr>(max_q, n, &d.sample_coefficients());
            report.merge(d.check_homotopy_formula(&cut));
        }
    }
    let random = random_contraction_report(3, RANDOM_SAMPLES_N3, 0x5eed);
    let random_count = random.laws.values().map(|t| t.passed + t.failed).min().unwrap_or(0);
    report.merge(random);
    let mut bad: Vec<String> = report
        .laws
        .iter()
        .filter(|(_, t)| t.failed > 0)
        .map(|(name, t)| format!("{}: {} failed, first {:?}", name, t.failed, t.first_failure))
        .collect();
    if random_count < RANDOM_SAMPLES_N3 {
        bad.push(format!("only {} random n = 3 samples", random_count));
    }
    Outcome {
        pass: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "{} instances over {} identities, 0 failures ({} random n = 3 samples per contraction identity)",
                report.passed(),
                report.laws.len(),
                random_count
            )
        } else {
            bad.join("; ")
        },
        budget: None,
    }
}

/// `(g, h)` pairs exercised on every section of rank `n`.
fn pairs(s: &Section) -> Vec<(Polynomial, Polynomial)> {
    let r = s.ring();
    let one = Polynomial::one(r);
    let z1 = Polynomial::var(r, 0);
    let last = Polynomial::var(r, s.n() - 1);
    vec![(one.clone(), one.clone()), (z1, last), (one, jacobian(s))]
}

fn eta_pipeline() -> Outcome {
    let set = regression_set();
    let mut bad = Vec::new();
    let mut count = 0;
    for inst in &set {
        for (g, h) in pairs(&inst.section) {
            count += 1;
            match eta_psi(&g, &h, &inst.section) {
                Ok(e) => {
                    let default = EtaRoute::Contraction(ContractionConvention::Derivation);
                    if !e.matching_routes().any(|r| r == default) || !e.dbar_closed {
                        bad.push(format!("{} g = {} h = {}: routes {:?}", inst.name, g, h, e.routes));
                    }
                }
                Err(e) => bad.push(format!("{} g = {} h = {}: {}", inst.name, g, h, e)),
            }
        }
    }
    let (pass, detail) = failures(bad, count, "(g, h, s) with pipeline = closed form and dbar eta = 0");
    Outcome {
        pass,
        detail,
        budget: None,
    }
}

fn numeric_cases() -> Vec<(Section, Polynomial, Polynomial)> {
    let mut out = Vec::new();
    for k in 1..=6u32 {
        let s = section(1, &format!("[{}*z1^{}]", k + 1, k));
        let g = poly(1, &format!("z1^{}", k - 1));
        out.push((s, g, poly(1, "1 + z1")));
    }
    for (s, g, h) in [
        ("[z1, z2]", "1", "1"),
        ("[z1^2, z2^2]", "z1", "z2"),
        ("[z1^2, z2^3]", "z1 + z2", "z2^2"),
        ("[3*z1^2, 3*z2^2]", "z1*z2", "2 - z1"),
        ("[3*z1^2 + z2^2, 2*z1*z2]", "z1^2", "1"),
        ("[3*z1^2, 4*z2^3]", "z1*z2^2", "1 + z2"),
        ("[z1^3, z2^4]", "z1^2*z2^3", "1"),
    ] {
        out.push((section(2, s), poly(2, g), poly(2, h)));
    }
    out
}

fn numeric_exact() -> Outcome {
    let mut bad = Vec::new();
    let mut counts = [0usize; 2];
    let mut worst = [0f64; 2];
    let mut n2_time = Duration::ZERO;
    for (s, g, h) in numeric_cases() {
        let n = s.n();
        let start = Instant::now();
        let result = compare_exact(&g, &h, &s, &spec(n));
        if n == 2 {
            n2_time += start.elapsed();
        }
        counts[n - 1] += 1;
        match result {
            Ok(c) if c.difference <= tol(n) => worst[n - 1] = worst[n - 1].max(c.difference),
            Ok(c) => bad.push(format!("n = {} g = {} h = {}: |diff| {:.3e}", n, g, h, c.difference)),
            Err(e) => bad.push(format!("n = {} g = {} h = {}: {}", n, g, h, e)),
        }
    }
    let enough = counts.iter().all(|&c| c >= 6);
    let fast = n2_time < Duration::from_secs(60);
    let detail = if bad.is_empty() {
        format!(
            "{} n = 1 (max |diff| {:.1e} <= {:.0e}), {} n = 2 (max |diff| {:.1e} <= {:.0e}, {:.1} s)",
            counts[0],
            worst[0],
            TOL_N1,
            counts[1],
            worst[1],
            TOL_N2,
            n2_time.as_secs_f64()
        )
    } else {
        bad.join("; ")
    };
    Outcome {
        pass: bad.is_empty() && enough && fast,
        detail,
        budget: None,
    }
}

fn radius_check() -> Outcome {
    let radii = [0.5, 1.0, 2.0];
    let mut bad = Vec::new();
    let mut worst = [0f64; 2];
    let cases = numeric_cases();
    for (s, g, h) in &cases {
        let n = s.n();
        match radius_independence(g, h, s, &radii, &spec(n)) {
            Ok(r) if r.pass => worst[n - 1] = worst[n - 1].max(r.spread),
            Ok(r) => bad.push(format!("n = {} g = {}: spread {:.3e}", n, g, r.spread)),
            Err(e) => bad.push(format!("n = {} g = {}: {}", n, g, e)),
        }
    }
    let (pass, detail) = failures(bad, cases.len(), "instances");
    Outcome {
        pass,
        detail: format!(
            "{} radius-independent over {{0.5, 1, 2}} (max spread {:.1e} n = 1, {:.1e} n = 2)",
            detail, worst[0], worst[1]
        ),
        budget: None,
    }
}

fn sign_coherence() -> Outcome {
    let set = regression_set();
    let mut bad = Vec::new();
    let mut worst = [0f64; 2];
    for inst in &set {
        let s = &inst.section;
        let n = s.n();
        let g = Polynomial::one(s.ring());
        let h = jacobian(s);
        let check = || -> Result<f64, locdual_core::Error> {
            let exact = pairing_psi(&g, &h, s)?;
            let numeric = virtual_residue(&g, &h, s, &spec(n))?;
            // (g, h)_psi = prefactor (-2 pi i)^n Res; both sides are reported in units of (2 pi i)^n
            let sign = f64::from(pairing_prefactor_sign(n)) * if n % 2 == 0 { 1.0 } else { -1.0 };
            Ok((exact.value.to_complex() - numeric.value * sign).norm())
        };
        match check() {
            Ok(d) if d <= tol(n) => worst[n - 1] = worst[n - 1].max(d),
            Ok(d) => bad.push(format!("{}: |diff| {:.3e}", inst.name, d)),
            Err(e) => bad.push(format!("{}: {}", inst.name, e)),
        }
    }
    let (pass, detail) = failures(bad, set.len(), "sections");
    Outcome {
        pass,
        detail: format!(
            "{} with pairing_psi = prefactor (-1)^n Res_numeric (max |diff| {:.1e} n = 1, {:.1e} n = 2)",
            detail, worst[0], worst[1]
        ),
        budget: None,
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("local duality", local_duality),
        ("Milnor/Koszul consistency", koszul_consistency),
        ("residue oracle equivalence", residue_oracle),
        ("Hessian invariant", hessian_invariant),
        ("operator identities", operator_identities),
        ("eta pipeline", eta_pipeline),
        ("numeric vs exact residue", numeric_exact),
        ("radius independence", radius_check),
        ("pairing sign coherence", sign_coherence),
    ];
    let mut all = true;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_budget = out.budget.is_none_or(|b| elapsed <= b);
        let pass = out.pass && in_budget;
        all &= pass;
        println!(
            "[{}] {}. {}: {} ({:.2} s)",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            name,
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
