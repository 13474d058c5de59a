//! The prescribed function `phi` on the angle interval `[-1, 1]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Closed-form shape of the prescribed function.
#[derive(Debug, Clone, PartialEq)]
pub enum PhiForm {
    /// `phi(nu) = c`.
    Constant(f64),
    /// `phi(nu) = nu`.
    Identity,
    /// `phi(nu) = c0 + c1*nu + c2*nu^2 + ...` (ascending coefficients).
    Polynomial(Vec<f64>),
}

/// The prescribed function `phi`, evaluable on `[-1, 1]`.
///
/// `lipschitz_only` records that the caller asserts only Lipschitz regularity
/// near `nu = 1`; the fixed-point construction needs nothing stronger.
#[derive(Debug, Clone, PartialEq)]
pub struct Phi {
    pub form: PhiForm,
    pub lipschitz_only: bool,
}

impl Phi {
    pub fn constant(c: f64) -> Self {
        Phi { form: PhiForm::Constant(c), lipschitz_only: false }
    }

    pub fn identity() -> Self {
        Phi { form: PhiForm::Identity, lipschitz_only: false }
    }

    pub fn polynomial(coeffs: Vec<f64>) -> Self {
        Phi { form: PhiForm::Polynomial(coeffs), lipschitz_only: false }
    }

    /// Evaluates `phi(nu)`. Arguments outside `[-1, 1]` are rejected.
    pub fn eval(&self, nu: f64) -> Result<f64> {
        if !(-1.0..=1.0).contains(&nu) {
            return Err(Error::Domain { nu });
        }
        Ok(match &self.form {
            PhiForm::Constant(c) => *c,
            PhiForm::Identity => nu,
            PhiForm::Polynomial(coeffs) => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * nu + c)
            }
        })
    }
}

impl fmt::Display for Phi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.form {
            PhiForm::Constant(c) => write!(f, "const:{c}"),
            PhiForm::Identity => write!(f, "identity"),
            PhiForm::Polynomial(coeffs) => {
                write!(f, "poly:")?;
                for (i, c) in coeffs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
        }
    }
}

/// CLI grammar: `const:<float>`, `identity`, `poly:<c0>,<c1>,...`.
impl FromStr for Phi {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "identity" {
            return Ok(Phi::identity());
        }
        if let Some(rest) = s.strip_prefix("const:") {
            let c: f64 = rest
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad constant in phi spec '{s}'")))?;
            return Ok(Phi::constant(c));
        }
        if let Some(rest) = s.strip_prefix("poly:") {
            let coeffs: Vec<f64> = rest
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse()
                        .map_err(|_| Error::InvalidInput(format!("bad coefficient '{t}' in phi spec '{s}'")))
                })
                .collect::<Result<_>>()?;
            if coeffs.is_empty() {
                return Err(Error::InvalidInput("empty coefficient list in phi spec".into()));
            }
            return Ok(Phi::polynomial(coeffs));
        }
        Err(Error::InvalidInput(format!(
            "unrecognized phi spec '{s}' (expected const:<c>, identity or poly:<c0>,<c1>,...)"
        )))
    }
}
