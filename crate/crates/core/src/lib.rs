//! Exact combinatorial models for self-injective Nakayama algebras: punctured
//! polygon triangulations, Brauer trees, two-term tilting complexes and
//! simple-minded systems, together with the map between the last two.

pub mod brauer;
pub mod complexes;
pub mod disc;
pub mod error;
pub mod fmap;
pub mod linalg;
pub mod modcat;
pub mod smscfg;

pub use error::{Error, Result};

/// Which half of the two-term world an object lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Minus => Sign::Plus,
            Sign::Plus => Sign::Minus,
        }
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sign> {
        match s {
            "minus" | "-" => Ok(Sign::Minus),
            "plus" | "+" => Ok(Sign::Plus),
            other => Err(Error::Parse(format!("unknown sign {other:?}"))),
        }
    }
}
