use thiserror::Error;

/// Every failure the toolkit can report. Variant names are stable and are
/// printed verbatim by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty PD input")]
    EmptyInput,
    #[error("malformed crossing tuple: {0}")]
    MalformedTuple(String),
    #[error("edge label {label} appears {count} times (expected exactly 2)")]
    LabelCount { label: i64, count: usize },
    #[error("labels do not increase along the strands: {0}")]
    InconsistentOrientation(String),
    #[error("operation needs a knot diagram but the diagram has {0} components")]
    MultiComponent(usize),
    #[error("component index {index} out of range (diagram has {count} components)")]
    BadComponentIndex { index: usize, count: usize },
    #[error("half-twist count m = {0} is odd")]
    OddTwist(i64),
    #[error("clasp sign must be +1 or -1, got {0}")]
    BadClaspSign(i64),
    #[error("iterated double needs at least one twisting number")]
    EmptyTauList,
    #[error("diagram carries no doubling provenance")]
    NoClaspMetadata,
    #[error("first homology is not infinite cyclic: free rank {free_rank}, torsion {torsion:?}")]
    NotInfiniteCyclicH1 {
        free_rank: usize,
        torsion: Vec<String>,
    },
    #[error("abelianization map is not a valid surjection onto <t>: {0}")]
    NonUnitAbelianizationImage(String),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("word references unknown generator {0}")]
    UnknownWordSymbol(i64),
    #[error("nesting depth n must be >= 1, got {0}")]
    BadN(i64),
    #[error("inconsistent companion metadata: {0}")]
    InconsistentMeta(String),
    #[error("level l must be >= 1, got {0}")]
    BadL(i64),
    #[error("amalgamation words differ in shape")]
    WordShapeMismatch,
    #[error("l_max must be >= 2, got {0}")]
    BadLMax(i64),
    #[error("layer word needs a nonempty repeating tail")]
    EmptyTail,
    #[error("unknown corpus knot {0:?}")]
    UnknownKnot(String),
    #[error("invalid JSON document: {0}")]
    BadJson(String),
}

impl Error {
    /// The error-case name, e.g. `"OddTwist"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::MalformedTuple(_) => "MalformedTuple",
            Error::LabelCount { .. } => "LabelCount",
            Error::InconsistentOrientation(_) => "InconsistentOrientation",
            Error::MultiComponent(_) => "MultiComponent",
            Error::BadComponentIndex { .. } => "BadComponentIndex",
            Error::OddTwist(_) => "OddTwist",
            Error::BadClaspSign(_) => "BadClaspSign",
            Error::EmptyTauList => "EmptyTauList",
            Error::NoClaspMetadata => "NoClaspMetadata",
            Error::NotInfiniteCyclicH1 { .. } => "NotInfiniteCyclicH1",
            Error::NonUnitAbelianizationImage(_) => "NonUnitAbelianizationImage",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::UnknownWordSymbol(_) => "UnknownWordSymbol",
            Error::BadN(_) => "BadN",
            Error::InconsistentMeta(_) => "InconsistentMeta",
            Error::BadL(_) => "BadL",
            Error::WordShapeMismatch => "WordShapeMismatch",
            Error::BadLMax(_) => "BadLMax",
            Error::EmptyTail => "EmptyTail",
            Error::UnknownKnot(_) => "UnknownKnot",
            Error::BadJson(_) => "BadJson",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
