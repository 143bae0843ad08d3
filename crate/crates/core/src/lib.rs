//! Exact-arithmetic toolkit for Whitehead doubles and the contractible open
//! manifolds built from them: PD-code diagrams, satellite constructions, knot
//! group presentations, Alexander polynomials, rank and tunnel-number
//! certificates, and a symbolic model of the direct-limit manifolds.

pub mod alexander;
pub mod certify;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod manifold;
pub mod matrix;
mod planar;
pub mod poly;
pub mod presentation;
pub mod satellite;

pub use alexander::{alexander_from_diagram, alexander_from_presentation};
pub use certify::{
    certify_rank, kl_bound, layer_structure, rank_certificate, ratio_table, CompanionMeta, KlBound,
    LayerStructure, Piece, RankCertificate, RatioRow,
};
pub use corpus::{corpus, corpus_knot, corpus_names, CorpusKnot};
pub use diagram::{connected_sum, linking_number, mirror, parse_pd, serialize_pd, writhe, Diagram};
pub use error::{Error, Result};
pub use manifold::{
    build_w, classify, nonembed_report, Classification, Layer, LayerWord, ManifoldSpec,
    NonembedReport, Verdict, Warning,
};
pub use poly::{divides, poly_eq_up_to_units, poly_gcd, poly_mul, twist_quadratic, LaurentPoly};
pub use presentation::{
    abelianization, abelianization_map, amalgamated_product, layer_quotient, tietze_simplify,
    wirtinger, wirtinger_link, Abelianization, GroupPresentation, Peripheral, TietzeOutcome, Word,
};
pub use satellite::{
    attach_provenance, blackboard_double, exceeds_desk_scale, iterated_double, k_family,
    twist_knot, twisted_whitehead_link, unclasp_link, whitehead_double, DoubleProvenance, KFamily,
    LevelRecord,
};
