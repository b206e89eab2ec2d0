//! Command-line requests and the optional `key = value` config file.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use locdual_core::MonomialOrder;

use crate::error::CliError;
use crate::parse::parse_list;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Milnor,
    Homology,
    Residue,
    PairingMatrix,
    DualityCheck,
    PairingPsi,
    Hessian,
    Eta,
    Vres,
    CheckLaws,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Pretty,
}

fn parse_order(s: &str) -> Result<MonomialOrder, String> {
    match s {
        "lex" => Ok(MonomialOrder::Lex),
        "grlex" => Ok(MonomialOrder::GrLex),
        "grevlex" => Ok(MonomialOrder::GrevLex),
        _ => match s.strip_prefix("weighted:") {
            Some(w) => {
                let w: Vec<u32> = parse_list(w)?;
                if w.contains(&0) {
                    return Err("weights must be positive".into());
                }
                Ok(MonomialOrder::Weighted(w))
            }
            None => Err(format!("unknown monomial order '{}' (lex, grlex, grevlex, weighted:w1,..,wN)", s)),
        },
    }
}

/// One invocation of the tool.
#[derive(Clone, Debug, PartialEq, Parser)]
#[command(name = "locdual", version, about = "Local duality, Grothendieck residues and virtual residues on C^n")]
#[command(args_override_self = true)]
pub struct Request {
    #[arg(value_enum)]
    pub command: Command,

    /// Number of variables `n`; inferred from the section when omitted.
    #[arg(long)]
    pub vars: Option<usize>,

    /// Monomial order: lex, grlex, grevlex or weighted:w1,..,wN.
    #[arg(long, value_parser = parse_order)]
    pub order: Option<MonomialOrder>,

    /// Section as `[f1, ..., fn]`.
    #[arg(long)]
    pub section: Option<String>,

    /// First factor of `psi = g h dz ⊗ e` (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub g: Option<String>,

    /// Second factor (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,

    /// Potential `f` for `hessian` (the section is `df`).
    #[arg(long, allow_hyphen_values = true)]
    pub f: Option<String>,

    /// Weights `w1,..,wn` of the quasi-homogeneous grading.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<u32>>,

    /// Claimed degrees `d1,..,dn` of the section components, checked against the weights.
    #[arg(long, value_delimiter = ',')]
    pub degrees: Option<Vec<u64>>,

    /// Sphere radius for `vres` (default 1).
    #[arg(long)]
    pub radius: Option<f64>,

    /// Several radii for the radius-independence check.
    #[arg(long, value_delimiter = ',')]
    pub radii: Option<Vec<f64>>,

    /// Quadrature points per angular dimension.
    #[arg(long)]
    pub resolution: Option<usize>,

    /// Target error estimate for `vres`.
    #[arg(long)]
    pub tol: Option<f64>,

    #[arg(long, value_enum)]
    pub output: Option<OutputFormat>,

    /// Shorthand for `--output pretty`.
    #[arg(long)]
    pub pretty: bool,

    /// `key = value` file presetting any long option; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Write (for `eta`) or read (for `vres`) the exported eta tree.
    #[arg(long)]
    pub eta_file: Option<PathBuf>,
}

const CONFIG_KEYS: &[&str] = &[
    "vars",
    "order",
    "section",
    "g",
    "h",
    "f",
    "weights",
    "degrees",
    "radius",
    "radii",
    "resolution",
    "tol",
    "output",
    "eta-file",
];

/// Parses a config file into `--key value` arguments.
pub fn config_args(text: &str, origin: &Path) -> Result<Vec<String>, CliError> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("{}:{}: expected key = value", origin.display(), no + 1)));
        };
        let key = key.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::Config(format!("{}:{}: unknown key '{}'", origin.display(), no + 1, key)));
        }
        out.push(format!("--{}={}", key, value.trim()));
    }
    Ok(out)
}

impl Request {
    /// Parses `argv` (including the program name), merging a `--config` file
    /// underneath the explicit flags.
    pub fn from_argv<I, T>(argv: I) -> Result<Self, CliError>
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
        let first = Request::try_parse_from(&argv)?;
        let Some(path) = first.config.clone() else {
            return Ok(first);
        };
        let text = std::fs::read_to_string(&path).map_err(|e| CliError::Config(format!("{}: {}", path.display(), e)))?;
        // config flags go first so that explicit flags override them
        let mut merged = vec![argv[0].clone()];
        merged.extend(config_args(&text, &path)?);
        merged.extend(argv[1..].iter().cloned());
        Ok(Request::try_parse_from(&merged)?)
    }

    pub fn output_format(&self) -> OutputFormat {
        if self.pretty {
            OutputFormat::Pretty
        } else {
            self.output.unwrap_or_default()
        }
    }

    /// Arguments that parse back to an equal request.
    pub fn to_argv(&self) -> Vec<String> {
        let mut a = vec![
            "locdual".to_string(),
            self.command.to_possible_value().expect("no skipped variants").get_name().to_string(),
        ];
        let mut push = |k: &str, v: String| a.push(format!("--{}={}", k, v));
        let join = |v: &[String]| v.join(",");
        if let Some(v) = self.vars {
            push("vars", v.to_string());
        }
        if let Some(o) = &self.order {
            push("order", o.to_string());
        }
        for (k, v) in [("section", &self.section), ("g", &self.g), ("h", &self.h), ("f", &self.f)] {
            if let Some(v) = v {
                push(k, v.clone());
            }
        }
        if let Some(w) = &self.weights {
            push("weights", join(&w.iter().map(u32::to_string).collect::<Vec<_>>()));
        }
        if let Some(d) = &self.degrees {
            push("degrees", join(&d.iter().map(u64::to_string).collect::<Vec<_>>()));
        }
        if let Some(r) = self.radius {
            push("radius", format!("{:?}", r));
        }
        if let Some(r) = &self.radii {
            push("radii", join(&r.iter().map(|x| format!("{:?}", x)).collect::<Vec<_>>()));
        }
        if let Some(k) = self.resolution {
            push("resolution", k.to_string());
        }
        if let Some(t) = self.tol {
            push("tol", format!("{:?}", t));
        }
        if let Some(o) = self.output {
            push("output", o.to_possible_value().expect("no skipped variants").get_name().to_string());
        }
        if let Some(c) = &self.config {
            push("config", c.display().to_string());
        }
        if let Some(e) = &self.eta_file {
            push("eta-file", e.display().to_string());
        }
        if self.pretty {
            a.push("--pretty".into());
        }
        a
    }
}
