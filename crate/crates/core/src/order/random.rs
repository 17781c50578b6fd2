//! Random small posets, lattices, actions and monotone maps for property
//! sweeps.

use super::{FiniteBoundedLattice, FinitePoset, PosetAction};
use rand::Rng;

/// A random order on `n` elements whose relations only go upward in index.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize) -> FinitePoset {
    let mut rel = vec![vec![false; n]; n];
    for (a, row) in rel.iter_mut().enumerate() {
        row[a] = true;
        for cell in row.iter_mut().skip(a + 1) {
            *cell = rng.random_bool(0.4);
        }
    }
    // Transitive closure; indices are a linear extension.
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if rel[a][k] && rel[k][b] {
                    rel[a][b] = true;
                }
            }
        }
    }
    FinitePoset::new(n, |a, b| rel[a][b]).expect("closure of an upward relation is an order")
}

/// A random lattice with at most `max` elements: an intersection-closed
/// family of subsets of a small ground set, ordered by inclusion.
pub fn random_lattice<R: Rng>(rng: &mut R, max: usize) -> FiniteBoundedLattice {
    assert!(max >= 1);
    loop {
        let ground = rng.random_range(1..=4u32);
        let full = (1u32 << ground) - 1;
        let mut sets = vec![full];
        for _ in 0..rng.random_range(0..=5) {
            let s = rng.random_range(0..=full);
            let mut grown = sets.clone();
            for &t in &sets {
                grown.push(s & t);
            }
            grown.sort_unstable();
            grown.dedup();
            sets = grown;
        }
        if sets.len() <= max {
            let order = FinitePoset::new(sets.len(), |a, b| sets[a] & !sets[b] == 0).expect("inclusion");
            return FiniteBoundedLattice::from_order(order).expect("closure systems are lattices");
        }
    }
}

/// A random action: s⇀x is the join over t ≤ s of g_t(x), where each g_t
/// sends x to the join of a random set of elements below x.
pub fn random_action<R: Rng>(rng: &mut R, poset: FinitePoset, lattice: FiniteBoundedLattice) -> PosetAction {
    let nl = lattice.len();
    let kernels: Vec<Vec<bool>> = (0..poset.len())
        .map(|_| (0..nl).map(|_| rng.random_bool(0.5)).collect())
        .collect();
    let g = |t: usize, x: usize| {
        (0..nl)
            .filter(|&a| kernels[t][a] && lattice.leq(a, x))
            .fold(lattice.bottom(), |acc, a| lattice.join(acc, a))
    };
    let table: Vec<usize> = (0..poset.len() * nl)
        .map(|k| {
            let (s, x) = (k / nl, k % nl);
            (0..poset.len())
                .filter(|&t| poset.leq(t, s))
                .fold(lattice.bottom(), |acc, t| lattice.join(acc, g(t, x)))
        })
        .collect();
    PosetAction::new(poset, lattice, |s, x| table[s * nl + x]).expect("construction satisfies the axioms")
}

/// A random order preserving map `source → target`, built along the index
/// order of `source` (a linear extension for posets from [`random_poset`]).
pub fn random_monotone_map<R: Rng>(rng: &mut R, source: &FinitePoset, target: &FinitePoset) -> Vec<usize> {
    for _ in 0..32 {
        let mut f: Vec<usize> = Vec::with_capacity(source.len());
        let mut ok = true;
        for p in 0..source.len() {
            let allowed: Vec<usize> = (0..target.len())
                .filter(|&q| (0..p).all(|b| !source.leq(b, p) || target.leq(f[b], q)))
                .collect();
            if allowed.is_empty() {
                ok = false;
                break;
            }
            f.push(allowed[rng.random_range(0..allowed.len())]);
        }
        if ok && source.monotone_witness(target, &f).is_none() {
            return f;
        }
    }
    vec![rng.random_range(0..target.len()); source.len()]
}

/// Counts from [`law_sweep`]. `violations` names each failure.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct LawSweep {
    pub instances: usize,
    pub atoms_checked: usize,
    pub bridge_checked: usize,
    pub pullbacks_checked: usize,
    pub violations: Vec<String>,
}

/// Checks, on `instances` random actions with |P| ≤ 4 and |L| ≤ 8, that
/// atoms are first, that x is first iff 0 is prime in [0, x], and that
/// elements first for an action stay first for its pullback along a random
/// monotone map.
pub fn law_sweep<R: Rng>(rng: &mut R, instances: usize) -> crate::error::Result<LawSweep> {
    let mut out = LawSweep::default();
    for i in 0..instances {
        let np = rng.random_range(1..=4);
        let poset = random_poset(rng, np);
        let lattice = random_lattice(rng, 8);
        let a = random_action(rng, poset, lattice);
        let l = a.lattice();
        out.instances += 1;
        for at in l.atoms() {
            out.atoms_checked += 1;
            if !a.is_first(at)? {
                out.violations.push(format!("instance {i}: atom {at} is not first"));
            }
        }
        for x in (0..l.len()).filter(|&x| x != l.bottom()) {
            out.bridge_checked += 1;
            let (r, _) = a.restrict_action(x)?;
            if a.is_first(x)? != r.is_prime(r.lattice().bottom()) {
                out.violations.push(format!("instance {i}: first/prime bridge fails at {x}"));
            }
        }
        let nq = rng.random_range(1..=4);
        let q = random_poset(rng, nq);
        let f = random_monotone_map(rng, &q, a.poset());
        let pulled = a.pullback(&q, &f)?;
        for x in (0..l.len()).filter(|&x| x != l.bottom()) {
            out.pullbacks_checked += 1;
            if a.is_first(x)? && !pulled.is_first(x)? {
                out.violations.push(format!("instance {i}: {x} first but not first after pullback"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generators_produce_valid_objects() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let p = random_poset(&mut rng, 4);
            let q = random_poset(&mut rng, 3);
            let l = random_lattice(&mut rng, 8);
            assert!(l.len() <= 8);
            let a = random_action(&mut rng, q.clone(), l);
            let f = random_monotone_map(&mut rng, &p, &q);
            assert!(a.pullback(&p, &f).is_ok());
        }
    }
}
