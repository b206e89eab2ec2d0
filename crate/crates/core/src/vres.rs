//! Numerical virtual residue: `(2 pi i)^{-n} ∫_N eta_psi` over a sphere `N`
//! around the origin, for `n = 1, 2`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::dolbeault::{eta_psi, EtaTree, Metric};
use crate::error::{Error, Result};
use crate::koszul::Section;
use crate::poly::Polynomial;
use crate::rational::GaussianRational;
use crate::residue::groth_residue;

/// Quadrature rule on the sphere of dimension `2n - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    /// Trapezoid rule in the angle of `z = r e^{i theta}`.
    CircleTrapezoid,
    /// `z_1 = r cos(theta) e^{i phi_1}`, `z_2 = r sin(theta) e^{i phi_2}`:
    /// Gauss-Legendre in `theta`, trapezoid in `phi_1`, `phi_2`.
    HopfProduct,
}

impl Scheme {
    pub fn for_dimension(n: usize) -> Result<Self> {
        match n {
            1 => Ok(Scheme::CircleTrapezoid),
            2 => Ok(Scheme::HopfProduct),
            _ => Err(Error::UnsupportedDimension(n)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub radius: f64,
    /// Points per angular dimension.
    pub resolution: usize,
    pub target_tol: f64,
}

impl QuadratureSpec {
    pub fn new(radius: f64, resolution: usize, target_tol: f64) -> Result<Self> {
        let spec = QuadratureSpec {
            radius,
            resolution,
            target_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidArgument("radius must be positive".into()));
        }
        if self.resolution < 8 {
            return Err(Error::InvalidArgument("resolution must be at least 8".into()));
        }
        if !(self.target_tol >= 0.0) {
            return Err(Error::InvalidArgument("tolerance must be non-negative".into()));
        }
        Ok(())
    }

    pub fn with_radius(&self, radius: f64) -> Self {
        QuadratureSpec { radius, ..*self }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumericResidue {
    pub value: Complex64,
    /// `|I_K - I_{K/2}|`.
    pub error_estimate: f64,
    pub radius: f64,
    pub resolution: usize,
}

/// Neumaier's compensated sum, componentwise.
#[derive(Default)]
struct CompensatedSum {
    sum: [f64; 2],
    carry: [f64; 2],
}

impl CompensatedSum {
    fn add(&mut self, v: Complex64) {
        for (k, x) in [v.re, v.im].into_iter().enumerate() {
            let t = self.sum[k] + x;
            if libm::fabs(self.sum[k]) >= libm::fabs(x) {
                self.carry[k] += (self.sum[k] - t) + x;
            } else {
                self.carry[k] += (x - t) + self.sum[k];
            }
            self.sum[k] = t;
        }
    }

    fn total(&self) -> Complex64 {
        Complex64::new(self.sum[0] + self.carry[0], self.sum[1] + self.carry[1])
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(k: usize) -> Vec<(f64, f64)> {
    let mut out = vec![(0.0, 0.0); k];
    for i in 0..k.div_ceil(2) {
        let mut x = libm::cos(PI * (i as f64 + 0.75) / (k as f64 + 0.5));
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=k {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if k == 0 { 1.0 } else { p1 };
            dp = k as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        out[i] = (-x, w);
        out[k - 1 - i] = (x, w);
    }
    out
}

/// `eta_psi` with floating coefficients, ready for repeated evaluation.
struct CompiledEta {
    n: usize,
    terms: Vec<(usize, Complex64, Vec<u32>, u32)>,
    ss: Vec<(Complex64, Vec<u32>)>,
}

fn monomial(z: &[Complex64], exps: &[u32]) -> Complex64 {
    let n = z.len();
    let mut v = Complex64::new(1.0, 0.0);
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            v *= if i < n { z[i] } else { z[i - n].conj() }.powu(e);
        }
    }
    v
}

impl CompiledEta {
    fn new(tree: &EtaTree) -> Self {
        let n = tree.n;
        let terms = tree
            .terms
            .iter()
            .map(|t| {
                let missing = t.i - 1;
                let mut exps = t.z.clone();
                exps.extend(&t.zb);
                (missing, t.coeff.to_complex() * f64::from(t.sign), exps, t.ss_power)
            })
            .collect();
        let ss = tree.ss.terms().map(|(m, c)| (c.to_complex(), m.exponents().to_vec())).collect();
        CompiledEta { n, terms, ss }
    }

    fn ss(&self, z: &[Complex64]) -> f64 {
        self.ss.iter().map(|(c, e)| c * monomial(z, e)).sum::<Complex64>().re
    }

    /// Coefficients of `dzb_{[n] \ i} ∧ dz_1..dz_n`, indexed by the missing `i`.
    fn coefficients(&self, z: &[Complex64]) -> Vec<Complex64> {
        let s = self.ss(z);
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for (i, c, e, p) in &self.terms {
            out[*i] += c * monomial(z, e) / libm::pow(s, f64::from(*p));
        }
        out
    }
}

fn minimum_ss_on_sphere(eta: &CompiledEta, r: f64, k: usize) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi: f64 = 0.0;
    let mut visit = |z: &[Complex64]| {
        let s = eta.ss(z);
        lo = lo.min(s);
        hi = hi.max(s);
    };
    let angle = |j: usize, m: usize, span: f64| span * j as f64 / m as f64;
    match eta.n {
        1 => {
            for j in 0..k {
                visit(&[Complex64::from_polar(r, angle(j, k, 2.0 * PI))]);
            }
        }
        _ => {
            for a in 0..=k {
                let t = angle(a, k, FRAC_PI_2);
                for b in 0..k {
                    for c in 0..k {
                        visit(&[
                            Complex64::from_polar(r * libm::cos(t), angle(b, k, 2.0 * PI)),
                            Complex64::from_polar(r * libm::sin(t), angle(c, k, 2.0 * PI)),
                        ]);
                    }
                }
            }
        }
    }
    (lo, hi)
}

fn det3(m: [[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let mut acc = 0.0;
    for c in 0..4 {
        let mut minor = [[Complex64::new(0.0, 0.0); 3]; 3];
        for (i, row) in m[1..].iter().enumerate() {
            let mut k = 0;
            for (j, v) in row.iter().enumerate() {
                if j != c {
                    minor[i][k] = Complex64::new(*v, 0.0);
                    k += 1;
                }
            }
        }
        let term = m[0][c] * det3(minor).re;
        acc += if c % 2 == 0 { term } else { -term };
    }
    acc
}

/// Hopf chart `(theta, phi_1, phi_2) -> (z_1, z_2)` and its partial derivatives.
fn hopf_chart(r: f64, t: f64, p1: f64, p2: f64) -> ([Complex64; 2], [[Complex64; 3]; 2]) {
    let (st, ct) = (libm::sin(t), libm::cos(t));
    let u1 = Complex64::from_polar(1.0, p1);
    let u2 = Complex64::from_polar(1.0, p2);
    let z1 = u1 * (r * ct);
    let z2 = u2 * (r * st);
    let i = Complex64::i();
    let zero = Complex64::new(0.0, 0.0);
    ([z1, z2], [[u1 * (-r * st), i * z1, zero], [u2 * (r * ct), zero, i * z2]])
}

/// `+1` if `(d theta, d phi_1, d phi_2)` is positively oriented for the sphere
/// as the boundary of the ball in `C^2 = R^4` (`dx_1 dy_1 dx_2 dy_2`).
fn hopf_orientation() -> f64 {
    let (z, d) = hopf_chart(1.0, 0.6, 0.3, 1.1);
    let real = |w: [Complex64; 2]| [w[0].re, w[0].im, w[1].re, w[1].im];
    let normal = real(z);
    let cols: Vec<[f64; 4]> = (0..3).map(|k| real([d[0][k], d[1][k]])).collect();
    let mut m = [[0.0; 4]; 4];
    for row in 0..4 {
        m[row] = [normal[row], cols[0][row], cols[1][row], cols[2][row]];
    }
    if det4(m) > 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn integrate_at(eta: &CompiledEta, r: f64, k: usize) -> Complex64 {
    let mut sum = CompensatedSum::default();
    let h = 2.0 * PI / k as f64;
    match eta.n {
        1 => {
            // z = r e^{i theta}, dz = i z d theta, counterclockwise
            for j in 0..k {
                let z = Complex64::from_polar(r, h * j as f64);
                let c = eta.coefficients(&[z])[0];
                sum.add(c * Complex64::i() * z * h);
            }
        }
        _ => {
            let orient = hopf_orientation();
            for (x, w) in gauss_legendre(k) {
                let t = FRAC_PI_2 * (x + 1.0) / 2.0;
                let wt = w * FRAC_PI_2 / 2.0;
                for a in 0..k {
                    for b in 0..k {
                        let (z, d) = hopf_chart(r, t, h * a as f64, h * b as f64);
                        let c = eta.coefficients(&z);
                        let mut v = Complex64::new(0.0, 0.0);
                        for (missing, ci) in c.iter().enumerate() {
                            // the dzb index is the one not missing
                            let j = 1 - missing;
                            let dzb = [d[j][0].conj(), d[j][1].conj(), d[j][2].conj()];
                            v += ci * det3([dzb, d[0], d[1]]);
                        }
                        sum.add(v * (orient * wt * h * h));
                    }
                }
            }
        }
    }
    sum.total()
}

/// `(2 pi i)^{-n} ∫_{|z| = r} eta`.
pub fn integrate_eta(tree: &EtaTree, spec: &QuadratureSpec) -> Result<NumericResidue> {
    spec.validate()?;
    Scheme::for_dimension(tree.n)?;
    let eta = CompiledEta::new(tree);
    let (lo, hi) = minimum_ss_on_sphere(&eta, spec.radius, spec.resolution);
    if !(lo > hi * 1e-12) || !lo.is_finite() {
        return Err(Error::SingularOnSphere);
    }
    let unit = libm::pow(2.0 * PI, tree.n as f64) * Complex64::i().powu(tree.n as u32);
    let fine = integrate_at(&eta, spec.radius, spec.resolution) / unit;
    let coarse = integrate_at(&eta, spec.radius, spec.resolution / 2) / unit;
    let error_estimate = (fine - coarse).norm();
    if !fine.re.is_finite() || !fine.im.is_finite() {
        return Err(Error::SingularOnSphere);
    }
    if error_estimate > spec.target_tol {
        return Err(Error::ResolutionTooCoarse {
            estimate: error_estimate,
            target: spec.target_tol,
        });
    }
    Ok(NumericResidue {
        value: fine,
        error_estimate,
        radius: spec.radius,
        resolution: spec.resolution,
    })
}

/// `Res_Z(psi / s)` for `psi = g h dz ⊗ e`, by quadrature.
pub fn virtual_residue(g: &Polynomial, h: &Polynomial, s: &Section, spec: &QuadratureSpec) -> Result<NumericResidue> {
    Scheme::for_dimension(s.n())?;
    let eta = eta_psi(g, h, s)?;
    let tree = EtaTree::from_form(&Metric::standard(s), &eta.form)?;
    integrate_eta(&tree, spec)
}

/// Numeric `Res_Z(psi / s)` against the exact `(-1)^{n(n+1)/2} res_s(g h)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactComparison {
    pub numeric: NumericResidue,
    pub exact: GaussianRational,
    pub difference: f64,
    pub pass: bool,
}

/// `(-1)^{n(n+1)/2}`.
pub fn virtual_sign(n: usize) -> i8 {
    if (n * (n + 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn compare_exact(g: &Polynomial, h: &Polynomial, s: &Section, spec: &QuadratureSpec) -> Result<ExactComparison> {
    let res = groth_residue(&(g * h), s)?.value;
    let exact = if virtual_sign(s.n()) < 0 { -res } else { res };
    let numeric = virtual_residue(g, h, s, spec)?;
    let difference = (numeric.value - exact.to_complex()).norm();
    let pass = difference <= spec.target_tol.max(10.0 * numeric.error_estimate);
    Ok(ExactComparison {
        numeric,
        exact,
        difference,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RadiusReport {
    pub values: Vec<NumericResidue>,
    pub spread: f64,
    pub pass: bool,
}

/// Evaluates the residue on each radius; passes when all values lie within
/// `spec.target_tol` of each other.
pub fn radius_independence(
    g: &Polynomial,
    h: &Polynomial,
    s: &Section,
    radii: &[f64],
    spec: &QuadratureSpec,
) -> Result<RadiusReport> {
    Scheme::for_dimension(s.n())?;
    let eta = eta_psi(g, h, s)?;
    let tree = EtaTree::from_form(&Metric::standard(s), &eta.form)?;
    let values = radii
        .iter()
        .map(|&r| integrate_eta(&tree, &spec.with_radius(r)))
        .collect::<Result<Vec<_>>>()?;
    let mut spread: f64 = 0.0;
    for a in &values {
        for b in &values {
            spread = spread.max((a.value - b.value).norm());
        }
    }
    Ok(RadiusReport {
        pass: spread < spec.target_tol,
        values,
        spread,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn z(n: usize, i: usize) -> Polynomial {
        Polynomial::var(Ring::holomorphic(n), i)
    }

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let rule = gauss_legendre(8);
        let total: f64 = rule.iter().map(|(_, w)| w).sum();
        assert!((total - 2.0).abs() < 1e-14);
        let x14: f64 = rule.iter().map(|(x, w)| w * libm::pow(*x, 14.0)).sum();
        assert!((x14 - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn unit_examples() {
        let s1 = Section::new(vec![z(1, 0)]).unwrap();
        let one = Polynomial::one(s1.ring());
        let v = virtual_residue(&one, &one, &s1, &QuadratureSpec::new(1.0, 64, 1e-10).unwrap()).unwrap();
        assert!((v.value - Complex64::new(-1.0, 0.0)).norm() < 1e-10);

        let s2 = Section::new(vec![z(2, 0), z(2, 1)]).unwrap();
        let one = Polynomial::one(s2.ring());
        let v = virtual_residue(&one, &one, &s2, &QuadratureSpec::new(1.0, 16, 1e-3).unwrap()).unwrap();
        assert!((v.value - Complex64::new(-1.0, 0.0)).norm() < 1e-3, "{:?}", v);
    }

    #[test]
    fn exact_comparison_examples() {
        let s = Section::new(vec![z(1, 0).pow(2).scale(&GaussianRational::from_integer(3))]).unwrap();
        let r = compare_exact(&Polynomial::one(s.ring()), &z(1, 0), &s, &QuadratureSpec::new(1.0, 64, 1e-8).unwrap())
            .unwrap();
        assert!(r.pass, "{:?}", r);
        assert_eq!(r.exact, GaussianRational::from_ratio(-1, 3));

        let three = GaussianRational::from_integer(3);
        let s = Section::new(vec![z(2, 0).pow(2).scale(&three), z(2, 1).pow(2).scale(&three)]).unwrap();
        let r = compare_exact(&z(2, 0), &z(2, 1), &s, &QuadratureSpec::new(1.0, 24, 1e-3).unwrap()).unwrap();
        assert!(r.pass, "{:?}", r);
        assert_eq!(r.exact, GaussianRational::from_ratio(-1, 9));
    }

    #[test]
    fn quadrature_validation() {
        assert!(QuadratureSpec::new(0.0, 16, 1e-3).is_err());
        assert!(QuadratureSpec::new(1.0, 4, 1e-3).is_err());
    }

    #[test]
    fn singular_on_sphere() {
        let s = Section::new(vec![z(2, 0), &z(2, 0) * &z(2, 1)]).unwrap();
        let one = Polynomial::one(s.ring());
        let err = virtual_residue(&one, &one, &s, &QuadratureSpec::new(1.0, 16, 1e-3).unwrap()).unwrap_err();
        assert_eq!(err, Error::SingularOnSphere);
    }
}
