//! The built-in corpus of small rings, each with a generated universe.

use crate::error::Result;
use crate::ring::{Caps, RingSpec};
use crate::universe::{Universe, UniverseParams};

/// Ring specifications of the built-in corpus, in sweep order.
pub fn corpus_specs() -> Vec<RingSpec> {
    let c = |n| RingSpec::Cyclic(n);
    vec![
        c(2),
        c(4),
        c(6),
        c(8),
        RingSpec::Product(vec![c(2), c(2)]),
        RingSpec::Matrix(Box::new(c(2)), 2),
    ]
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub spec: RingSpec,
    pub universe: Universe,
}

pub fn build_corpus(caps: &Caps, params: UniverseParams) -> Result<Vec<CorpusEntry>> {
    corpus_specs()
        .into_iter()
        .map(|spec| {
            let ring = spec.build(caps)?;
            Ok(CorpusEntry {
                universe: Universe::generate(&ring, params)?,
                spec,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_size() {
        let corpus = build_corpus(&Caps::default(), UniverseParams::default()).unwrap();
        assert_eq!(corpus.len(), 6);
        let pairs: usize = corpus.iter().map(|e| e.universe.len()).sum();
        assert!(pairs >= 30, "{pairs}");
    }
}
