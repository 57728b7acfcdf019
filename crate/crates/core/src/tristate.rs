use serde::Serialize;

use crate::homology::BettiProfile;
use crate::{Simplex, Vertex};

/// Outcome of a search that may be cut short by its budget.
///
/// `Yes` and `No` carry something a caller can re-check independently.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TriState<Y> {
    Yes(Y),
    No(Obstruction),
    Unknown(String),
}

impl<Y> TriState<Y> {
    pub fn is_yes(&self) -> bool {
        matches!(self, TriState::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, TriState::No(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TriState::Unknown(_))
    }

    pub fn yes(self) -> Option<Y> {
        match self {
            TriState::Yes(y) => Some(y),
            _ => None,
        }
    }

    pub fn map<Z>(self, f: impl FnOnce(Y) -> Z) -> TriState<Z> {
        match self {
            TriState::Yes(y) => TriState::Yes(f(y)),
            TriState::No(o) => TriState::No(o),
            TriState::Unknown(s) => TriState::Unknown(s),
        }
    }
}

/// An exactly checkable reason for a negative verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    /// The homology does not allow the claimed property.
    Homology(BettiProfile),
    /// Homology of the complex and of the target subcomplex differ.
    HomologyMismatch { source: BettiProfile, target: BettiProfile },
    NotHomogeneous,
    NotConnected,
    /// A ridge lies in the wrong number of facets.
    RidgeDegree { ridge: Simplex, degree: usize },
    /// The link of this vertex fails the recursive condition.
    BadLink { vertex: Vertex, reason: String },
    /// Has boundary where none is allowed, or the reverse.
    Boundary { boundary_empty: bool },
    /// The decomposition search was exhaustive and every candidate failed.
    NoDecomposition,
    /// Euler characteristic rules out the property in dimension ≤ 2.
    EulerCharacteristic { reduced: i64 },
    /// Every order of elementary collapses was explored without success.
    Stuck { explored: usize },
    Other(String),
}
