//! Shared fixtures and brute-force oracles for the integration tests.
#![allow(dead_code)]

use preradlab::corpus::{build_corpus, CorpusEntry};
use preradlab::modules::{hom_set, FiniteModule};
use preradlab::{Caps, UniverseParams};
use std::sync::Arc;

pub fn corpus() -> Vec<CorpusEntry> {
    build_corpus(&Caps::default(), UniverseParams { depth: 2 }).expect("corpus builds")
}

/// Every (label, module) of the corpus.
pub fn corpus_modules() -> Vec<(String, Arc<FiniteModule>)> {
    corpus()
        .into_iter()
        .flat_map(|e| {
            let ring = e.spec.to_string();
            e.universe
                .modules()
                .iter()
                .map(|m| (format!("{ring}: {}", m.label), Arc::clone(&m.module)))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Subsets of the carrier containing 0 and closed under + and the action,
/// as sorted element lists in (size, elements) order.
pub fn power_set_submodules(m: &FiniteModule) -> Vec<Vec<usize>> {
    let n = m.order();
    assert!(n <= 16, "power-set oracle limited to 16 elements");
    let ring = m.ring();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << n) {
        let has = |x: usize| mask >> x & 1 == 1;
        if !has(m.zero()) {
            continue;
        }
        let elems: Vec<usize> = (0..n).filter(|&x| has(x)).collect();
        let closed = elems.iter().all(|&x| {
            elems.iter().all(|&y| has(m.add(x, y))) && (0..ring.order()).all(|r| has(m.act(r, x)))
        });
        if closed {
            out.push(elems);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// Every function source → target that is additive and R-linear, as tables.
pub fn all_linear_functions(source: &FiniteModule, target: &FiniteModule) -> Vec<Vec<usize>> {
    let (n, t) = (source.order(), target.order());
    let total = (t as u64).pow(n as u32);
    assert!(total <= 1 << 22, "all-functions oracle too large");
    let r = source.ring().order();
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let f: Vec<usize> = (0..n)
            .map(|_| {
                let d = (c % t as u64) as usize;
                c /= t as u64;
                d
            })
            .collect();
        let additive = (0..n).all(|x| (0..n).all(|y| f[source.add(x, y)] == target.add(f[x], f[y])));
        let linear = (0..r).all(|a| (0..n).all(|x| f[source.act(a, x)] == target.act(a, f[x])));
        if additive && linear {
            out.push(f);
        }
    }
    out.sort();
    out
}

/// Whether `m` embeds in n^k for some k up to the composition length bound
/// log2|m|: a k-tuple of maps m → n with trivial joint kernel.
pub fn cogenerates_by_embedding_search(n: &FiniteModule, m: &FiniteModule) -> bool {
    let zero = m.zero();
    let mut kernels: Vec<Vec<usize>> = hom_set(m, n)
        .expect("hom set")
        .iter()
        .map(|f| (0..m.order()).filter(|&x| f.table()[x] == n.zero()).collect())
        .collect();
    kernels.sort();
    kernels.dedup();
    let bound = usize::BITS as usize - m.order().leading_zeros() as usize;
    fn search(kernels: &[Vec<usize>], current: &[usize], zero: usize, depth: usize) -> bool {
        if current.iter().all(|&x| x == zero) {
            return true;
        }
        depth > 0
            && kernels.iter().any(|k| {
                let next: Vec<usize> = current.iter().copied().filter(|x| k.contains(x)).collect();
                next.len() < current.len() && search(kernels, &next, zero, depth - 1)
            })
    }
    let all: Vec<usize> = (0..m.order()).collect();
    search(&kernels, &all, zero, bound)
}

/// True when `sub` (as elements) is fully invariant: no endomorphism from
/// the all-functions oracle moves it out of itself.
pub fn fully_invariant_by_brute_force(m: &FiniteModule, sub: &[usize]) -> bool {
    all_linear_functions(m, m).iter().all(|f| sub.iter().all(|&x| sub.contains(&f[x])))
}
