//! Triorthogonal CSS codes, their CNOT/CZ-transversal symmetric companions,
//! stabilizer simulation of code-switching protocols, and exhaustive fault
//! enumeration.

pub mod circuits;
pub mod css;
pub mod decoder;
pub mod faultlab;
pub mod fifteen;
pub mod gf2;
pub mod stabsim;
pub mod transversal;

use serde::{Deserialize, Serialize};

/// Pauli basis for measurements, error types and stabilizer types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    X,
    Z,
}

impl Basis {
    pub fn other(self) -> Basis {
        match self {
            Basis::X => Basis::Z,
            Basis::Z => Basis::X,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Basis::X => 'X',
            Basis::Z => 'Z',
        }
    }
}

impl std::fmt::Display for Basis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl std::str::FromStr for Basis {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "X" | "x" => Ok(Basis::X),
            "Z" | "z" => Ok(Basis::Z),
            _ => Err(format!("unknown basis {s:?}")),
        }
    }
}
