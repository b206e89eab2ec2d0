//! Coefficient rings on `C^n \ {0}`: polynomials in `z`, `zb` localized at
//! `S = <s, s>`, and their extension by the formal cutoff `rho`.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{Antiholomorphic, Coefficient, DbarDir};
use crate::error::{Error, Result};
use crate::koszul::Section;
use crate::linalg::{determinant, Matrix};
use crate::poly::{Polynomial, Ring};
use crate::rational::GaussianRational;

/// The section together with a constant Hermitian metric `H`:
/// `sigma_i = sum_j H_ij conj(f_j)` and `S = sum_i f_i sigma_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    n: usize,
    components: Vec<Polynomial>,
    sigma: Vec<Polynomial>,
    ss: Polynomial,
    hermitian: Option<Matrix>,
}

impl Metric {
    /// The standard metric `H = 1`.
    pub fn standard(s: &Section) -> Rc<Self> {
        Self::build(s, None)
    }

    /// A constant positive definite Hermitian matrix.
    pub fn hermitian(s: &Section, h: Matrix) -> Result<Rc<Self>> {
        let n = s.n();
        if h.len() != n || h.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("metric must be an n x n matrix".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if h[i][j] != h[j][i].conj() {
                    return Err(Error::InvalidArgument("metric is not Hermitian".into()));
                }
            }
        }
        for k in 1..=n {
            let minor: Matrix = h[..k].iter().map(|r| r[..k].to_vec()).collect();
            let d = determinant(&minor);
            if !d.is_real() || !num_traits::Signed::is_positive(&d.re) {
                return Err(Error::InvalidArgument("metric is not positive definite".into()));
            }
        }
        Ok(Self::build(s, Some(h)))
    }

    fn build(s: &Section, h: Option<Matrix>) -> Rc<Self> {
        let n = s.n();
        let components: Vec<Polynomial> = s.components().iter().map(|f| f.with_conjugate_vars()).collect();
        let conj: Vec<Polynomial> = components.iter().map(|f| f.conjugate()).collect();
        let ring = Ring::with_conjugates(n);
        let sigma: Vec<Polynomial> = match &h {
            None => conj.clone(),
            Some(h) => (0..n)
                .map(|i| {
                    let mut acc = Polynomial::zero(ring);
                    for (j, fb) in conj.iter().enumerate() {
                        acc = &acc + &fb.scale(&h[i][j]);
                    }
                    acc
                })
                .collect(),
        };
        let mut ss = Polynomial::zero(ring);
        for (f, sg) in components.iter().zip(&sigma) {
            ss = &ss + &(f * sg);
        }
        Rc::new(Metric {
            n,
            components,
            sigma,
            ss,
            hermitian: h,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        Ring::with_conjugates(self.n)
    }

    /// `f_i` in the ring with conjugates.
    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    /// `sigma_i`, so that `sbar = sum_i sigma_i / S e_i^*`.
    pub fn sigma(&self) -> &[Polynomial] {
        &self.sigma
    }

    /// `S = <s, s>`.
    pub fn ss(&self) -> &Polynomial {
        &self.ss
    }

    pub fn hermitian_matrix(&self) -> Option<&Matrix> {
        self.hermitian.as_ref()
    }
}

fn same_metric(a: &Rc<Metric>, b: &Rc<Metric>) {
    assert!(Rc::ptr_eq(a, b) || a == b, "expressions over different sections");
}

/// `num / S^pow`.
#[derive(Clone, Debug)]
pub struct SmoothExpr {
    metric: Rc<Metric>,
    num: Polynomial,
    pow: u32,
}

impl SmoothExpr {
    pub fn new(metric: &Rc<Metric>, num: Polynomial, pow: u32) -> Self {
        let num = num.with_conjugate_vars();
        assert_eq!(num.ring(), metric.ring(), "numerator ring does not match the section");
        SmoothExpr {
            metric: metric.clone(),
            num,
            pow,
        }
    }

    pub fn zero(metric: &Rc<Metric>) -> Self {
        Self::new(metric, Polynomial::zero(metric.ring()), 0)
    }

    pub fn one(metric: &Rc<Metric>) -> Self {
        Self::new(metric, Polynomial::one(metric.ring()), 0)
    }

    pub fn metric(&self) -> &Rc<Metric> {
        &self.metric
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn ss_power(&self) -> u32 {
        self.pow
    }

    /// Same value with denominator `S^pow`, `pow >= self.pow`.
    pub fn with_power(&self, pow: u32) -> Polynomial {
        debug_assert!(pow >= self.pow);
        &self.num * &self.metric.ss.pow(pow - self.pow)
    }

    /// Removes factors of `S` from the numerator where it divides exactly.
    pub fn reduced(&self) -> Self {
        let mut out = self.clone();
        while out.pow > 0 && !out.num.is_zero() {
            match exact_quotient(&out.num, &out.metric.ss) {
                Some(q) => {
                    out.num = q;
                    out.pow -= 1;
                }
                None => break,
            }
        }
        if out.num.is_zero() {
            out.pow = 0;
        }
        out
    }
}

/// `p / d` when `d` divides `p`, by repeated leading-term division.
fn exact_quotient(p: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    let order = crate::poly::MonomialOrder::GrevLex;
    let (dm, dc) = d.leading_term(&order)?;
    let (dm, dc) = (dm.clone(), dc.clone());
    let inv = dc.inv()?;
    let mut rem = p.clone();
    let mut q = Polynomial::zero(p.ring());
    while let Some((m, c)) = rem.leading_term(&order) {
        let qm = dm.quotient_of(m)?;
        let qc = c * &inv;
        rem = &rem - &d.mul_term(&qm, &qc);
        q.add_term(qm, &qc);
    }
    Some(q)
}

impl Coefficient for SmoothExpr {
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn plus(&self, o: &Self) -> Self {
        same_metric(&self.metric, &o.metric);
        let pow = self.pow.max(o.pow);
        SmoothExpr {
            metric: self.metric.clone(),
            num: &self.with_power(pow) + &o.with_power(pow),
            pow,
        }
    }

    fn times(&self, o: &Self) -> Self {
        same_metric(&self.metric, &o.metric);
        SmoothExpr {
            metric: self.metric.clone(),
            num: &self.num * &o.num,
            pow: self.pow + o.pow,
        }
    }

    fn negate(&self) -> Self {
        SmoothExpr {
            metric: self.metric.clone(),
            num: -&self.num,
            pow: self.pow,
        }
    }

    fn scaled(&self, c: &GaussianRational) -> Self {
        SmoothExpr {
            metric: self.metric.clone(),
            num: self.num.scale(c),
            pow: self.pow,
        }
    }
}

/// `dbar(N S^-m) = (S dN - m N dS) / S^{m+1}` per `dzb_j`.
impl Antiholomorphic for SmoothExpr {
    fn dbar_parts(&self) -> Vec<(DbarDir, Self)> {
        let n = self.metric.n;
        let ss = &self.metric.ss;
        let m = GaussianRational::from_integer(self.pow as i64);
        (0..n)
            .filter_map(|j| {
                let dn = self.num.derivative(n + j);
                let out = if self.pow == 0 {
                    SmoothExpr {
                        metric: self.metric.clone(),
                        num: dn,
                        pow: 0,
                    }
                } else {
                    let ds = ss.derivative(n + j);
                    SmoothExpr {
                        metric: self.metric.clone(),
                        num: &(ss * &dn) - &(&self.num * &ds).scale(&m),
                        pow: self.pow + 1,
                    }
                };
                (!out.is_zero()).then_some((DbarDir::Zb(j), out))
            })
            .collect()
    }
}

impl PartialEq for SmoothExpr {
    fn eq(&self, o: &Self) -> bool {
        self.minus(o).is_zero()
    }
}

impl fmt::Display for SmoothExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pow {
            0 => write!(f, "{}", self.num),
            1 => write!(f, "({})/ss", self.num),
            p => write!(f, "({})/ss^{}", self.num, p),
        }
    }
}

/// `sum_k rho^k c_k` with smooth `c_k`; `dbar rho` is a form generator.
#[derive(Clone, Debug)]
pub struct CutoffExpr {
    metric: Rc<Metric>,
    parts: BTreeMap<u32, SmoothExpr>,
}

impl CutoffExpr {
    pub fn zero(metric: &Rc<Metric>) -> Self {
        CutoffExpr {
            metric: metric.clone(),
            parts: BTreeMap::new(),
        }
    }

    pub fn smooth(x: SmoothExpr) -> Self {
        Self::rho_power(x, 0)
    }

    /// `rho^k x`.
    pub fn rho_power(x: SmoothExpr, k: u32) -> Self {
        let mut out = Self::zero(&x.metric.clone());
        if !x.is_zero() {
            out.parts.insert(k, x);
        }
        out
    }

    pub fn rho(metric: &Rc<Metric>) -> Self {
        Self::rho_power(SmoothExpr::one(metric), 1)
    }

    pub fn one(metric: &Rc<Metric>) -> Self {
        Self::smooth(SmoothExpr::one(metric))
    }

    pub fn parts(&self) -> impl Iterator<Item = (u32, &SmoothExpr)> {
        self.parts.iter().map(|(k, v)| (*k, v))
    }

    fn insert(&mut self, k: u32, v: SmoothExpr) {
        let v = match self.parts.remove(&k) {
            Some(old) => old.plus(&v),
            None => v,
        };
        if !v.is_zero() {
            self.parts.insert(k, v);
        }
    }
}

impl Coefficient for CutoffExpr {
    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn plus(&self, o: &Self) -> Self {
        same_metric(&self.metric, &o.metric);
        let mut out = self.clone();
        for (k, v) in &o.parts {
            out.insert(*k, v.clone());
        }
        out
    }

    fn times(&self, o: &Self) -> Self {
        same_metric(&self.metric, &o.metric);
        let mut out = Self::zero(&self.metric);
        for (a, x) in &self.parts {
            for (b, y) in &o.parts {
                out.insert(a + b, x.times(y));
            }
        }
        out
    }

    fn negate(&self) -> Self {
        CutoffExpr {
            metric: self.metric.clone(),
            parts: self.parts.iter().map(|(k, v)| (*k, v.negate())).collect(),
        }
    }

    fn scaled(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(&self.metric);
        for (k, v) in &self.parts {
            out.insert(*k, v.scaled(c));
        }
        out
    }
}

impl Antiholomorphic for CutoffExpr {
    fn dbar_parts(&self) -> Vec<(DbarDir, Self)> {
        let mut by_dir: BTreeMap<DbarDir, CutoffExpr> = BTreeMap::new();
        for (k, v) in &self.parts {
            if *k > 0 {
                let d = v.scaled(&GaussianRational::from_integer(*k as i64));
                by_dir
                    .entry(DbarDir::Rho)
                    .or_insert_with(|| Self::zero(&self.metric))
                    .insert(k - 1, d);
            }
            for (dir, d) in v.dbar_parts() {
                by_dir.entry(dir).or_insert_with(|| Self::zero(&self.metric)).insert(*k, d);
            }
        }
        by_dir.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

impl PartialEq for CutoffExpr {
    fn eq(&self, o: &Self) -> bool {
        self.minus(o).is_zero()
    }
}

impl fmt::Display for CutoffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match k {
                0 => write!(f, "{}", v)?,
                1 => write!(f, "rho*({})", v)?,
                k => write!(f, "rho^{}*({})", k, v)?,
            }
        }
        Ok(())
    }
}

/// Coefficient rings that contain the smooth functions on `U`.
pub trait SmoothCoefficient: Antiholomorphic {
    fn from_smooth(x: SmoothExpr) -> Self;
}

impl SmoothCoefficient for SmoothExpr {
    fn from_smooth(x: SmoothExpr) -> Self {
        x
    }
}

impl SmoothCoefficient for CutoffExpr {
    fn from_smooth(x: SmoothExpr) -> Self {
        CutoffExpr::smooth(x)
    }
}
