//! JSON form of the exported `eta_psi` tree.

use locdual_core::dolbeault::{EtaTerm, EtaTree};
use locdual_core::{GaussianRational, Ring};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::parse::parse_polynomial;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: usize,
    pub sign: i8,
    pub coeff: String,
    pub z: Vec<u32>,
    pub zb: Vec<u32>,
    pub ss_power: u32,
    pub dzb: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: usize,
    /// `<s, s>` in the grammar with conjugate variables.
    pub ss: String,
    pub terms: Vec<TermJson>,
}

impl From<&EtaTree> for TreeJson {
    fn from(t: &EtaTree) -> Self {
        TreeJson {
            n: t.n,
            ss: t.ss.to_string(),
            terms: t
                .terms
                .iter()
                .map(|e| TermJson {
                    i: e.i,
                    sign: e.sign,
                    coeff: e.coeff.to_string(),
                    z: e.z.clone(),
                    zb: e.zb.clone(),
                    ss_power: e.ss_power,
                    dzb: e.dzb.clone(),
                })
                .collect(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Usage(format!("invalid eta tree: {}", msg.into()))
}

fn constant(text: &str, ring: Ring) -> Result<GaussianRational, CliError> {
    let p = parse_polynomial(text, ring)?;
    if !p.is_constant() {
        return Err(invalid(format!("coefficient '{}' is not a number", text)));
    }
    Ok(p.constant_term())
}

impl TreeJson {
    pub fn to_tree(&self) -> Result<EtaTree, CliError> {
        let n = self.n;
        if n == 0 {
            return Err(invalid("n must be positive"));
        }
        let ring = Ring::with_conjugates(n);
        let ss = parse_polynomial(&self.ss, ring)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.z.len() != n || t.zb.len() != n {
                return Err(invalid("exponent vectors must have length n"));
            }
            if t.i == 0 || t.i > n || t.dzb.len() + 1 != n || t.dzb.contains(&t.i) || t.dzb.iter().any(|&j| j == 0 || j > n) {
                return Err(invalid("index i and dzb must partition 1..=n"));
            }
            if t.sign != 1 && t.sign != -1 {
                return Err(invalid("sign must be 1 or -1"));
            }
            terms.push(EtaTerm {
                i: t.i,
                sign: t.sign,
                coeff: constant(&t.coeff, ring)?,
                z: t.z.clone(),
                zb: t.zb.clone(),
                ss_power: t.ss_power,
                dzb: t.dzb.clone(),
            });
        }
        Ok(EtaTree { n, ss, terms })
    }
}
