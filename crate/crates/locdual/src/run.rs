//! Command dispatch and responses.

use std::fs;

use locdual_core::dolbeault::{eta_psi, CutoffExpr, Dolbeault, EtaTree, Metric, SmoothExpr};
use locdual_core::exterior::laws::{exhaustive, Report};
use locdual_core::exterior::ContractionConvention;
use locdual_core::koszul::{default_degree_range, euler_characteristic, koszul_homology_graded, milnor_algebra_with_order, Section};
use locdual_core::residue::{
    duality_check, groth_residue, hessian_residue, pairing_psi, pairing_psi_sign, residue_pairing_matrix, LocalResidue,
};
use locdual_core::vres::{compare_exact, integrate_eta, radius_independence, NumericResidue, QuadratureSpec};
use locdual_core::{GaussianRational, MonomialOrder, Polynomial, Ring};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::parse::{parse_polynomial, parse_section};
use crate::request::{Command, Request};
use crate::samples::random_contraction_report;
use crate::tree::TreeJson;

/// Number of random instances per identity used by `check-laws` in rank 3 and up.
pub const RANDOM_LAW_SAMPLES: usize = 100;
const RANDOM_LAW_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub code: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span: Option<[usize; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Response {
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub exit_code: i32,
}

impl Response {
    pub fn from_error(e: &CliError) -> Self {
        let (line, column, span) = match e {
            CliError::Parse(p) => (Some(p.line), Some(p.column), Some([p.span.start, p.span.end])),
            _ => (None, None, None),
        };
        Response {
            status: Status::Error,
            payload: Value::Null,
            diagnostics: Vec::new(),
            error: Some(ErrorInfo {
                code: e.code(),
                message: e.to_string(),
                line,
                column,
                span,
            }),
            exit_code: e.exit_code(),
        }
    }
}

fn rat(x: &GaussianRational) -> Value {
    Value::String(x.to_string())
}

fn numeric(v: &NumericResidue) -> Value {
    json!({
        "value_re": v.value.re,
        "value_im": v.value.im,
        "error_estimate": v.error_estimate,
        "radius": v.radius,
        "resolution": v.resolution,
    })
}

fn report_json(r: &Report) -> Value {
    let laws: Vec<Value> = r
        .laws
        .iter()
        .map(|(name, t)| {
            json!({
                "name": name,
                "passed": t.passed,
                "failed": t.failed,
                "first_failure": t.first_failure,
            })
        })
        .collect();
    json!({ "laws": laws, "passed": r.passed(), "failed": r.failed() })
}

/// Largest `k` with `zk` or `zbk` in `text`.
fn max_variable(text: &str) -> usize {
    let b = text.as_bytes();
    let mut best = 0;
    let mut p = 0;
    while p < b.len() {
        if b[p] == b'z' && (p == 0 || !b[p - 1].is_ascii_alphanumeric()) {
            let mut q = p + 1;
            if q < b.len() && b[q] == b'b' {
                q += 1;
            }
            let start = q;
            while q < b.len() && b[q].is_ascii_digit() {
                q += 1;
            }
            if let Ok(k) = text[start..q].parse::<usize>() {
                best = best.max(k);
            }
            p = q.max(p + 1);
        } else {
            p += 1;
        }
    }
    best
}

struct Context<'a> {
    req: &'a Request,
    n: usize,
    diagnostics: Vec<String>,
}

impl<'a> Context<'a> {
    fn new(req: &'a Request) -> Result<Self, CliError> {
        let mut diagnostics = Vec::new();
        let n = match req.vars {
            Some(0) => return Err(CliError::Usage("--vars must be positive".into())),
            Some(n) => n,
            None => {
                let texts = [&req.section, &req.g, &req.h, &req.f];
                let n = texts.iter().filter_map(|t| t.as_deref()).map(max_variable).max().unwrap_or(0);
                if n == 0 {
                    return Err(CliError::Usage("--vars is required".into()));
                }
                diagnostics.push(format!("--vars inferred as {}", n));
                n
            }
        };
        Ok(Context { req, n, diagnostics })
    }

    fn ring(&self) -> Ring {
        Ring::holomorphic(self.n)
    }

    fn order(&self) -> MonomialOrder {
        self.req.order.clone().unwrap_or_default()
    }

    fn section(&self) -> Result<Section, CliError> {
        let text = self.req.section.as_deref().ok_or_else(|| CliError::Usage("--section is required".into()))?;
        let comps = parse_section(text, self.ring())?;
        if comps.len() != self.n {
            return Err(CliError::Arity {
                expected: self.n,
                found: comps.len(),
            });
        }
        let mut s = Section::new(comps)?;
        if let Some(w) = &self.req.weights {
            s = s.with_weights(w.clone())?;
        }
        if let Some(d) = &self.req.degrees {
            s.check_degrees(d)?;
        }
        Ok(s)
    }

    fn poly(&self, text: Option<&str>, flag: &str, default: Option<&str>) -> Result<Polynomial, CliError> {
        match text.or(default) {
            Some(t) => Ok(parse_polynomial(t, self.ring())?),
            None => Err(CliError::Usage(format!("--{} is required", flag))),
        }
    }

    fn quadrature(&self, n: usize) -> Result<QuadratureSpec, CliError> {
        let (resolution, tol) = if n == 1 { (256, 1e-8) } else { (32, 1e-3) };
        Ok(QuadratureSpec::new(
            self.req.radius.unwrap_or(1.0),
            self.req.resolution.unwrap_or(resolution),
            self.req.tol.unwrap_or(tol),
        )?)
    }
}

fn dispatch(cx: &mut Context) -> Result<Value, CliError> {
    let req = cx.req;
    match req.command {
        Command::Milnor => {
            let s = cx.section()?;
            let order = cx.order();
            let alg = milnor_algebra_with_order(&s, &order)?;
            let basis: Vec<String> = alg.basis_polynomials().iter().map(ToString::to_string).collect();
            Ok(json!({ "mu": alg.mu(), "basis": basis, "order": order.to_string() }))
        }
        Command::Homology => {
            let s = cx.section()?;
            let (w, d) = s.grading()?;
            let range = default_degree_range(&s)?;
            let table = koszul_homology_graded(&s, range.clone())?;
            let entries: Vec<Value> = table
                .entries()
                .filter(|(_, _, dim)| *dim > 0)
                .map(|(k, degree, dim)| json!({ "k": k, "degree": degree, "dim": dim }))
                .collect();
            let totals: Vec<Value> = (-(s.n() as i64)..=0).map(|k| json!({ "k": k, "dim": table.total(k) })).collect();
            Ok(json!({
                "weights": w,
                "degrees": d,
                "degree_range": [range.start(), range.end()],
                "table": entries,
                "totals": totals,
                "euler_characteristic": euler_characteristic(&table),
                "vanishes_off_zero": table.vanishes_off_zero(),
            }))
        }
        Command::Residue => {
            let s = cx.section()?;
            let g = cx.poly(req.g.as_deref(), "g", None)?;
            let v = groth_residue(&g, &s)?;
            let exps = LocalResidue::new(&s)?.exponents().to_vec();
            Ok(json!({ "value": rat(&v.value), "unit_power": v.unit_power, "exponents": exps }))
        }
        Command::PairingMatrix => {
            let s = cx.section()?;
            let m = residue_pairing_matrix(&s)?;
            let basis: Vec<String> = m
                .basis
                .iter()
                .map(|b| Polynomial::term(s.ring(), b.clone(), GaussianRational::one()).to_string())
                .collect();
            let rows: Vec<Vec<Value>> = m.entries.iter().map(|r| r.iter().map(rat).collect()).collect();
            Ok(json!({ "basis": basis, "matrix": rows, "determinant": rat(&m.determinant) }))
        }
        Command::DualityCheck => {
            let s = cx.section()?;
            let c = duality_check(&s)?;
            Ok(json!({ "nondegenerate": c.nondegenerate, "mu": c.mu, "determinant": rat(&c.determinant) }))
        }
        Command::PairingPsi => {
            let s = cx.section()?;
            let g = cx.poly(req.g.as_deref(), "g", Some("1"))?;
            let h = cx.poly(req.h.as_deref(), "h", Some("1"))?;
            let v = pairing_psi(&g, &h, &s)?;
            Ok(json!({ "value": rat(&v.value), "unit_power": v.unit_power, "sign": pairing_psi_sign(s.n()) }))
        }
        Command::Hessian => {
            let f = cx.poly(req.f.as_deref(), "f", None)?;
            let s = Section::gradient(&f)?;
            let v = hessian_residue(&f)?;
            let mu = milnor_algebra_with_order(&s, &cx.order())?.mu();
            Ok(json!({ "value": rat(&v.value), "unit_power": v.unit_power, "mu": mu }))
        }
        Command::Eta => {
            let s = cx.section()?;
            let g = cx.poly(req.g.as_deref(), "g", Some("1"))?;
            let h = cx.poly(req.h.as_deref(), "h", Some("1"))?;
            let eta = eta_psi(&g, &h, &s)?;
            let tree = TreeJson::from(&EtaTree::from_form(&Metric::standard(&s), &eta.form)?);
            let routes: Vec<Value> = eta
                .routes
                .iter()
                .map(|(r, ok)| json!({ "route": r.to_string(), "matches_closed_form": ok }))
                .collect();
            if let Some(path) = &req.eta_file {
                let text = serde_json::to_string_pretty(&tree).expect("tree serializes");
                fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
                cx.diagnostics.push(format!("eta tree written to {}", path.display()));
            }
            Ok(json!({
                "form": eta.form.to_string(),
                "routes": routes,
                "dbar_closed": eta.dbar_closed,
                "tree": tree,
            }))
        }
        Command::Vres => {
            if req.section.is_none() {
                let path = req
                    .eta_file
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("vres needs --section or --eta-file".into()))?;
                let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {}", path.display(), e)))?;
                let tree: TreeJson =
                    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e)))?;
                let tree = tree.to_tree()?;
                let v = integrate_eta(&tree, &cx.quadrature(tree.n)?)?;
                return Ok(numeric(&v));
            }
            let s = cx.section()?;
            let g = cx.poly(req.g.as_deref(), "g", Some("1"))?;
            let h = cx.poly(req.h.as_deref(), "h", Some("1"))?;
            let spec = cx.quadrature(s.n())?;
            if let Some(radii) = &req.radii {
                let r = radius_independence(&g, &h, &s, radii, &spec)?;
                let values: Vec<Value> = r.values.iter().map(numeric).collect();
                return Ok(json!({ "values": values, "spread": r.spread, "pass": r.pass }));
            }
            let c = compare_exact(&g, &h, &s, &spec)?;
            let mut out = numeric(&c.numeric);
            out["exact"] = rat(&c.exact);
            out["difference"] = json!(c.difference);
            out["pass"] = json!(c.pass);
            Ok(out)
        }
        Command::CheckLaws => {
            let n = cx.n;
            let mut report = if n <= 2 {
                exhaustive(n, ContractionConvention::Derivation)
            } else {
                random_contraction_report(n, RANDOM_LAW_SAMPLES, RANDOM_LAW_SEED)
            };
            let s = match &req.section {
                Some(_) => cx.section()?,
                None => {
                    let r = cx.ring();
                    Section::new((0..n).map(|i| Polynomial::var(r, i)).collect())?
                }
            };
            let d = Dolbeault::new(&s);
            let max_q = if n <= 2 { n } else { 1 };
            let smooth = d.basis_samples::<SmoothExpr>(max_q, n, &d.sample_coefficients());
            report.merge(d.check_commutators(&smooth));
            if n <= 2 {
                let cut = d.basis_samples::<CutoffExpr>(max_q, n, &d.sample_coefficients());
                report.merge(d.check_homotopy_formula(&cut));
            }
            let failed = report.failed();
            let out = report_json(&report);
            if failed > 0 {
                cx.diagnostics.push(format!("{} identity instances failed", failed));
            }
            Ok(out)
        }
    }
}

/// Executes a request; never panics on bad input.
pub fn run(req: &Request) -> Response {
    let mut cx = match Context::new(req) {
        Ok(cx) => cx,
        Err(e) => return Response::from_error(&e),
    };
    match dispatch(&mut cx) {
        Ok(payload) => {
            let failed = req.command == Command::CheckLaws && payload["failed"].as_u64().unwrap_or(0) > 0;
            let error = failed.then(|| ErrorInfo {
                code: "LAW_FAILURE",
                message: "some identity instances failed".into(),
                line: None,
                column: None,
                span: None,
            });
            Response {
                status: if failed { Status::Error } else { Status::Ok },
                payload,
                diagnostics: cx.diagnostics,
                error,
                exit_code: i32::from(failed),
            }
        }
        Err(e) => {
            let mut r = Response::from_error(&e);
            r.diagnostics = cx.diagnostics;
            r
        }
    }
}

/// Parses `argv` and runs it.
pub fn run_argv<I, T>(argv: I) -> Response
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    match Request::from_argv(argv) {
        Ok(req) => run(&req),
        Err(e) => Response::from_error(&e),
    }
}
