use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported type {0}; supported: A_n (n>=1), B_n (n>=2), D_n (n>=3), E_6, E_7")]
    UnsupportedType(String),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("word is not a reduced expression of the longest element")]
    NotLongestWord,
    #[error("node {got} is not minuscule; minuscule nodes: {allowed}")]
    NotMinuscule { got: usize, allowed: String },
    #[error("element is not a minimal coset representative; its minimal representative is \"{0}\"")]
    NotMinimalRep(String),
    #[error("cannot factor: {0}")]
    Factorization(String),
    #[error("Weyl group size exceeds cap {0}; raise QBG_GROUP_CAP or restrict the query")]
    GroupCapExceeded(usize),
    #[error("refinement target is not a minimal representative below the longest one")]
    RefineTarget,
    #[error("edge transform undefined for this sign pattern")]
    EdgeTransform,
    #[error("not an edge of the quantum Bruhat graph")]
    NotAnEdge,
    #[error("invalid word at position {0}: {1}")]
    WordParse(usize, String),
    #[error("input too large for exact enumeration: {0}")]
    DeskScale(String),
}

pub type Result<T> = std::result::Result<T, Error>;
