use thiserror::Error;

use crate::diagram::{Family, Vertex};

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("degree {0} is too large (at most {max})", max = crate::diagram::MAX_DEGREE)]
    DegreeTooLarge(usize),
    #[error("vertex {vertex} is out of range for degree {degree}")]
    VertexOutOfRange { vertex: Vertex, degree: usize },
    #[error("vertex {0} appears in two blocks")]
    DuplicateVertex(Vertex),
    #[error("vertex {0} is not covered by any block")]
    MissingVertex(Vertex),
    #[error("empty block")]
    EmptyBlock,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("cannot parse diagram: {0}")]
    Parse(String),
    #[error("not a Brauer diagram")]
    NotBrauer,
    #[error("expected rank 0 or 2, found {0}")]
    BadHatRank(usize),
    #[error("diagrams are not H-related")]
    NotHRelated,
    #[error("rank must be at least 1")]
    RankZero,
    #[error("diagram is not planar")]
    NotPlanar,
    #[error("diagram is not a partial permutation")]
    NotPartialPermutation,
    #[error("{family}_{degree} has more than {bound} elements (size guard)")]
    SizeGuard {
        family: Family,
        degree: usize,
        bound: usize,
    },
    #[error("rank {0} does not occur in this monoid")]
    RankNotPresent(usize),
    #[error("unsupported normal subgroup: {0}")]
    UnsupportedSubgroup(String),
    #[error("invalid IN-pair: {0}")]
    InvalidPair(String),
    #[error("IN-pair is not retractable")]
    NotRetractable,
    #[error("{family}_{degree} is outside the proven range ({hypothesis})")]
    OutOfRange {
        family: Family,
        degree: usize,
        hypothesis: &'static str,
    },
    #[error("congruences belong to different monoids")]
    MonoidMismatch,
    #[error("diagram {0} is not a member of the monoid")]
    NotMember(String),
    #[error("element id {0} out of range")]
    BadId(usize),
    #[error("partition has wrong length: {found}, expected {expected}")]
    BadPartition { found: usize, expected: usize },
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
