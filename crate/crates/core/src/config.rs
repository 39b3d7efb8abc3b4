//! Run configuration: the same fields are parseable from CLI flags and
//! from a JSON config file, with flags overriding the file. Reports are
//! deterministic given a config and seed.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSpec, Family};
use crate::error::{Error, Result};

/// Environment variable overriding the default tolerance.
pub const TOL_ENV_VAR: &str = "BRAIDQ_TOL";

/// Default numeric tolerance for pass/fail verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `q` as given on the command line: `symbolic`, a real number,
/// a `re,im` pair, or `rootofunity:k` for `e^{2 pi i / k}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QInput {
    Symbolic,
    Numeric(Complex64),
}

pub fn parse_q(text: &str) -> Result<QInput> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("symbolic") {
        return Ok(QInput::Symbolic);
    }
    if let Some(rest) = t.strip_prefix("rootofunity:") {
        let k: u32 = rest
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad root-of-unity order {:?}", rest)))?;
        if k == 0 {
            return Err(Error::InvalidInput(
                "root-of-unity order must be positive".into(),
            ));
        }
        let angle = 2.0 * std::f64::consts::PI / k as f64;
        return Ok(QInput::Numeric(Complex64::from_polar(1.0, angle)));
    }
    if let Some((re, im)) = t.split_once(',') {
        let re: f64 = re
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad real part {:?}", re)))?;
        let im: f64 = im
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad imaginary part {:?}", im)))?;
        return Ok(QInput::Numeric(Complex64::new(re, im)));
    }
    let re: f64 = t
        .parse()
        .map_err(|_| Error::InvalidInput(format!("cannot parse q from {:?}", t)))?;
    Ok(QInput::Numeric(Complex64::new(re, 0.0)))
}

/// Everything a run needs. All fields optional so the struct can be
/// assembled from partial sources; accessors below resolve defaults.
#[derive(Debug, Clone, Default, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<String>,
    pub family: Option<String>,
    pub dim: Option<usize>,
    pub q: Option<String>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub dim_cap: Option<usize>,
    pub allow_complex_eta: Option<bool>,
    /// Output mode: "human" or "json".
    pub mode: Option<String>,
    pub output: Option<String>,
    // subcommand parameters
    pub matrix: Option<String>,
    pub theta: Option<f64>,
    pub theta2: Option<f64>,
    pub check: Option<String>,
    pub braid: Option<String>,
    pub strands: Option<usize>,
    pub skein: Option<bool>,
    pub markov: Option<bool>,
    pub trials: Option<usize>,
    pub cone_a: Option<f64>,
    pub cone_b: Option<f64>,
    pub cone_sign: Option<i32>,
    pub mirrored: Option<bool>,
    pub levels: Option<usize>,
    pub lambda_branch: Option<String>,
    pub soq3: Option<bool>,
}

impl RunConfig {
    /// Read a config file (JSON, field names as in this struct).
    pub fn from_file(path: &str) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {}", path, e)))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("bad config {}: {}", path, e)))
    }

    /// Overlay `flags` on top of `self`: any field set in `flags` wins.
    pub fn overlay(&self, flags: &RunConfig) -> Self {
        macro_rules! pick {
            ($field:ident) => {
                flags.$field.clone().or_else(|| self.$field.clone())
            };
        }
        RunConfig {
            command: pick!(command),
            family: pick!(family),
            dim: pick!(dim),
            q: pick!(q),
            seed: pick!(seed),
            tolerance: pick!(tolerance),
            dim_cap: pick!(dim_cap),
            allow_complex_eta: pick!(allow_complex_eta),
            mode: pick!(mode),
            output: pick!(output),
            matrix: pick!(matrix),
            theta: pick!(theta),
            theta2: pick!(theta2),
            check: pick!(check),
            braid: pick!(braid),
            strands: pick!(strands),
            skein: pick!(skein),
            markov: pick!(markov),
            trials: pick!(trials),
            cone_a: pick!(cone_a),
            cone_b: pick!(cone_b),
            cone_sign: pick!(cone_sign),
            mirrored: pick!(mirrored),
            levels: pick!(levels),
            lambda_branch: pick!(lambda_branch),
            soq3: pick!(soq3),
        }
    }

    pub fn family(&self) -> Result<Family> {
        match self
            .family
            .as_deref()
            .unwrap_or("ohat")
            .to_ascii_lowercase()
            .as_str()
        {
            "ohat" | "o" => Ok(Family::OHat),
            "phat" | "p" => Ok(Family::PHat),
            other => Err(Error::InvalidInput(format!("unknown family {:?}", other))),
        }
    }

    pub fn spec(&self) -> Result<AlgebraSpec> {
        AlgebraSpec::new(self.family()?, self.dim.unwrap_or(3))
    }

    pub fn q_input(&self) -> Result<QInput> {
        match &self.q {
            None => Ok(QInput::Symbolic),
            Some(text) => parse_q(text),
        }
    }

    /// Tolerance: flag, else `BRAIDQ_TOL`, else 1e-9.
    pub fn tolerance(&self) -> f64 {
        self.tolerance
            .or_else(|| std::env::var(TOL_ENV_VAR).ok().and_then(|v| v.parse().ok()))
            .unwrap_or(DEFAULT_TOL)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(7)
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap.unwrap_or(crate::links::DEFAULT_DIM_CAP)
    }

    pub fn allow_complex_eta(&self) -> bool {
        self.allow_complex_eta.unwrap_or(false)
    }

    pub fn machine_mode(&self) -> bool {
        matches!(self.mode.as_deref(), Some("json"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_parsing_forms() {
        assert_eq!(parse_q("symbolic").unwrap(), QInput::Symbolic);
        assert_eq!(
            parse_q("1.5").unwrap(),
            QInput::Numeric(Complex64::new(1.5, 0.0))
        );
        assert_eq!(
            parse_q("0.5,-0.25").unwrap(),
            QInput::Numeric(Complex64::new(0.5, -0.25))
        );
        match parse_q("rootofunity:6").unwrap() {
            QInput::Numeric(z) => {
                assert!((z - Complex64::from_polar(1.0, std::f64::consts::PI / 3.0)).norm() < 1e-15)
            }
            _ => panic!(),
        }
        assert!(parse_q("xyz").is_err());
        assert!(parse_q("rootofunity:0").is_err());
    }

    #[test]
    fn overlay_prefers_flags() {
        let file = RunConfig {
            family: Some("phat".into()),
            dim: Some(4),
            seed: Some(1),
            ..Default::default()
        };
        let flags = RunConfig {
            dim: Some(6),
            ..Default::default()
        };
        let merged = file.overlay(&flags);
        assert_eq!(merged.family.as_deref(), Some("phat"));
        assert_eq!(merged.dim, Some(6));
        assert_eq!(merged.seed, Some(1));
    }

    #[test]
    fn config_file_roundtrip() {
        let cfg = RunConfig {
            command: Some("verify".into()),
            family: Some("ohat".into()),
            dim: Some(3),
            q: Some("symbolic".into()),
            ..Default::default()
        };
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }
}
