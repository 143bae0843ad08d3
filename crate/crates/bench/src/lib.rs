//! Benchmark fixtures; see `benches/`.

use satknot::{corpus_knot, iterated_double, Diagram};

/// `WD_{taus[k]}` applied level by level to a corpus knot.
pub fn iterated(name: &str, taus: &[i64]) -> Diagram {
    iterated_double(&corpus_knot(name).expect("corpus knot").diagram, taus, 1)
        .expect("valid double")
}
