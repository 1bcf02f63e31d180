use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {0}: the tube rank must be at least 2")]
    InvalidRank(i64),

    #[error("invalid indecomposable coordinates ({orbit}, {ql}): quasilength must be at least 1")]
    InvalidIndec { orbit: i64, ql: i64 },

    #[error("not a maximal rigid object: {0}")]
    NotMaximalRigid(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("path count diverges: a relation-free cycle passes through arrow {arrow}")]
    InfinitePaths { arrow: String },

    #[error("presentation is not gentle: {0}")]
    NotGentle(String),

    #[error("quiver is not a cluster-tilted quiver of type A: {0}")]
    NotClusterTiltedA(String),

    #[error("vertex {0} is not a connecting vertex")]
    NotConnecting(usize),

    #[error("size limit exceeded: {size} > {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("not a string: {0}")]
    NotAString(String),

    #[error("string enumeration hit the length cap {cap} without detecting a band")]
    CapExceeded { cap: usize },

    #[error("infinite representation type: band {0} detected")]
    InfiniteType(String),

    #[error("inconsistent Hom-functor data: {0}")]
    Inconsistent(String),

    #[error("{0} lies in add τT, where the Hom-functor vanishes")]
    InAddTauT(String),

    #[error("{0} lies outside the fundamental domain")]
    OutsideDomain(String),

    #[error("invalid tilting specification: {0}")]
    TiltingSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
