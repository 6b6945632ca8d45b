//! Bertrand numeration systems and real-base expansions.
//!
//! A positional numeration system `U` is *Bertrand* when its language of
//! greedy representations satisfies `w ∈ N_U ⟺ w0 ∈ N_U`. Apart from the
//! system `U(i) = i + 1`, such systems come from a real base β > 1 in one of
//! two ways: the canonical system driven by the quasi-greedy expansion
//! `d*_β(1)`, and the non-canonical one driven by the greedy expansion
//! `d_β(1)`. The two differ exactly when β is a simple Parry number.
//!
//! Modules:
//! - [`words`]: finite and eventually periodic digit words, lexicographic
//!   order, self-bounded words.
//! - [`realbase`]: exact bases and the digit streams `d_β(1)`, `d*_β(1)`.
//! - [`numsys`]: positional systems, greedy representations, the language
//!   `N_U`, and the Bertrand condition.
//! - [`bertrand`]: building and classifying Bertrand systems, recurrences.
//! - [`automata`]: automata for the factor languages of `S_β` and `S'_β`.
//! - [`analysis`]: dominant root, renewal limit, entropy and convergence of
//!   the lexicographically greatest words.

pub mod algebraic;
pub mod analysis;
pub mod automata;
pub mod bertrand;
pub mod error;
pub mod numsys;
pub mod poly;
pub mod realbase;
pub mod words;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use algebraic::AlgebraicReal;
pub use automata::Dfa;
pub use error::{Error, Result};
pub use numsys::NumSys;
pub use poly::{IntPoly, Interval};
pub use realbase::{BaseSpec, BetaExpansion, ParryClass, RealBase};
pub use words::{DigitWord, EPWord};

/// Which of the two shifts (and Bertrand systems) attached to a base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `S_β`, coefficients `d*_β(1)`.
    Canonical,
    /// `S'_β`, coefficients `d_β(1)`.
    #[serde(rename = "noncanonical")]
    NonCanonical,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Canonical => "canonical",
            Variant::NonCanonical => "noncanonical",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "canonical" => Ok(Variant::Canonical),
            "noncanonical" | "non-canonical" => Ok(Variant::NonCanonical),
            _ => Err(Error::Parse {
                token: s.to_string(),
                reason: "expected canonical or noncanonical".into(),
            }),
        }
    }
}
