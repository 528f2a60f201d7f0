//! Singer normalizers, parabolic subgroups and base-size certificates for
//! GL_n(q) and GU_n(q) at desk scale.
//!
//! The crate is organised bottom-up:
//!
//! - [`gfarith`]: finite fields GF(p^f) with a fixed primitive element.
//! - [`linalg`]: dense matrices, canonical forms and Hermitian forms.
//! - [`singer`]: Singer tori, their normalizers and the lemma checks on them.
//! - [`bounds`]: group and class orders, fixed point ratios and inequality sweeps.
//! - [`basesize`]: subgroup enumeration, conjugate intersections and base witnesses.
//! - [`report`]: the JSON verification record every check produces.
//! - [`cli`]: the command-line front end used by the `basewitness` binary.
//!
//! The `examples/` directory of this crate has one runnable program per
//! capability; start there.

pub mod basesize;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod gfarith;
pub mod linalg;
pub mod report;
pub mod singer;

pub use error::{Error, Result};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Linear (+) or unitary (-) type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// +1 or -1.
    pub fn unit(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "+" | "plus" | "linear" => Ok(Sign::Plus),
            "-" | "minus" | "unitary" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be + or -, got '{s}'"))),
        }
    }
}

/// Split a prime power q into (p, f).
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let fac = num_prime::nt_funcs::factorize64(q);
    if fac.len() != 1 {
        return None;
    }
    let (&p, &f) = fac.iter().next()?;
    Some((p, f as u32))
}
