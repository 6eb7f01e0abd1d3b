//! The built-in group corpus the verification sweeps run over.
//!
//! A hand-built covering set, not a census: every cyclic group up to order
//! 16, every abelian group of order at most 16 via products, the small
//! dihedral and quaternion groups, a Hamiltonian 2-group of order 16, and
//! one mixed-order group for the modular pipeline. Each entry notes which
//! branch of the classification it is there to exercise.

use std::sync::Arc;

use crate::group::{build_group, FiniteGroup};

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: String,
    pub group: Arc<FiniteGroup>,
    pub provenance: &'static str,
}

const CORPUS_SPECS: &[(&str, &str)] = &[
    ("C1", "trivial group"),
    ("C2", "smallest group with an orientation"),
    ("C3", "odd order, no orientation"),
    ("C4", "cyclic 2-group"),
    ("C5", "odd order"),
    ("C6", "mixed order, modular pipeline at p = 3"),
    ("C7", "odd order"),
    ("C8", "cyclic 2-group"),
    ("C9", "cyclic 3-group"),
    ("C10", "mixed order"),
    ("C11", "odd order"),
    ("C12", "mixed order"),
    ("C13", "odd order"),
    ("C14", "mixed order"),
    ("C15", "odd composite order"),
    ("C16", "largest cyclic entry"),
    ("C2xC2", "Klein four group"),
    ("C2xC4", "abelian, order 8"),
    ("C2xC2xC2", "elementary abelian, order 8"),
    ("C3xC3", "elementary abelian, order 9"),
    ("C2xC6", "abelian, order 12"),
    ("C2xC8", "abelian, order 16"),
    ("C4xC4", "abelian, order 16"),
    ("C2xC2xC4", "abelian, order 16"),
    (
        "C2xC2xC2xC2",
        "elementary abelian, order 16; richest involution set",
    ),
    ("D6", "smallest non-abelian group; LC fails"),
    ("D8", "LC with unique commutator, not Hamiltonian"),
    ("D10", "non-abelian, LC fails"),
    ("D12", "non-abelian, LC fails"),
    ("D16", "commutator subgroup of order 4"),
    ("Q8", "Hamiltonian 2-group, the SLC prototype"),
    ("Q16", "generalized quaternion, not Hamiltonian"),
    ("Q8xC2", "Hamiltonian 2-group of order 16"),
    ("Q8xC3", "mixed order for the modular pipeline at p = 3"),
];

/// Build the full corpus, in a fixed deterministic order.
pub fn corpus() -> Vec<CorpusEntry> {
    CORPUS_SPECS
        .iter()
        .map(|&(spec, provenance)| CorpusEntry {
            spec: spec.to_string(),
            group: Arc::new(build_group(spec).expect("corpus specs are valid")),
            provenance,
        })
        .collect()
}

/// Corpus entries of order at most `max_order`.
pub fn corpus_up_to(max_order: usize) -> Vec<CorpusEntry> {
    corpus()
        .into_iter()
        .filter(|e| e.group.order() <= max_order)
        .collect()
}
