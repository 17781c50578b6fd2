//! Structural and lattice-theoretic predicates on finite modules.

use super::{hom_set, hom_visit, same_ring, FiniteModule, ModuleMorphism, Submodule, SubmoduleLattice};
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Sidedness};
use serde::Serialize;
use std::ops::ControlFlow;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralPredicates {
    pub is_simple: bool,
    pub is_semisimple: bool,
    pub is_homogeneous_semisimple: bool,
    pub socle: Submodule,
    pub jacobson_radical: Submodule,
}

pub fn structural_predicates(m: &Arc<FiniteModule>) -> Result<StructuralPredicates> {
    let lattice = SubmoduleLattice::new(m);
    let atoms = lattice.atoms();
    let socle = m.sum_all(atoms.iter().map(|&a| lattice.get(a)));
    let jacobson_radical = if m.is_zero_module() {
        m.zero_submodule()
    } else {
        m.meet_all(lattice.coatoms().iter().map(|&c| lattice.get(c)))
    };
    let is_semisimple = socle == m.full_submodule();
    let is_homogeneous_semisimple = is_semisimple && {
        let simples = atoms
            .iter()
            .map(|&a| m.submodule_module(lattice.get(a)).map(|e| e.module))
            .collect::<Result<Vec<_>>>()?;
        match simples.split_first() {
            None => true,
            Some((first, rest)) => rest.iter().all(|s| are_isomorphic(first, s)),
        }
    };
    Ok(StructuralPredicates {
        is_simple: lattice.len() == 2,
        is_semisimple,
        is_homogeneous_semisimple,
        socle,
        jacobson_radical,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LatticePredicates {
    pub is_essential: bool,
    pub is_superfluous: bool,
    pub is_atom: bool,
}

pub fn lattice_predicates(n: &Submodule, m: &FiniteModule) -> Result<LatticePredicates> {
    m.check_submodule(n)?;
    let subs = m.submodules();
    let full = m.full_submodule();
    let is_essential = subs
        .iter()
        .filter(|k| !k.is_zero())
        .all(|k| !n.meet(k).is_zero());
    let is_superfluous = subs
        .iter()
        .filter(|k| m.sum(n, k) == full)
        .all(|k| *k == full);
    let is_atom = !n.is_zero()
        && subs
            .iter()
            .all(|k| k.is_zero() || k == n || !k.is_subset(n));
    Ok(LatticePredicates {
        is_essential,
        is_superfluous,
        is_atom,
    })
}

/// Whether `a` and `b` are isomorphic, by searching for a bijective morphism.
pub fn are_isomorphic(a: &FiniteModule, b: &FiniteModule) -> bool {
    if a.order() != b.order() || !same_ring(a.ring(), b.ring()) {
        return false;
    }
    let mut found = false;
    hom_visit(a, b, |f| {
        if f.is_bijective(b) {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .expect("rings compared above");
    found
}

/// The reject of `n` in `m`: the intersection of kernels of all maps m → n.
pub(crate) fn reject(n: &FiniteModule, m: &FiniteModule) -> Result<Submodule> {
    let homs = hom_set(m, n)?;
    Ok(m.meet_all(homs.iter().map(|f| f.kernel(m, n)).collect::<Vec<_>>().iter()))
}

/// A family of maps m → n that separates points, found greedily, if `n`
/// cogenerates `m`. The family has at most one map per nonzero element.
pub fn cogenerates_by_embedding(n: &FiniteModule, m: &FiniteModule) -> Result<Option<Vec<ModuleMorphism>>> {
    let homs = hom_set(m, n)?;
    let mut chosen: Vec<&ModuleMorphism> = Vec::new();
    for x in m.elements().filter(|&x| x != m.zero()) {
        if chosen.iter().any(|f| f.apply(x) != n.zero()) {
            continue;
        }
        match homs.iter().find(|f| f.apply(x) != n.zero()) {
            Some(f) => chosen.push(f),
            None => return Ok(None),
        }
    }
    // The tuple map into n^k must be injective.
    let mut tuples: Vec<Vec<usize>> = m
        .elements()
        .map(|x| chosen.iter().map(|f| f.apply(x)).collect())
        .collect();
    tuples.sort();
    tuples.dedup();
    if tuples.len() != m.order() {
        return Err(Error::inconsistency(
            "cogenerates",
            "separating family does not give an injective tuple map",
        ));
    }
    Ok(Some(chosen.into_iter().cloned().collect()))
}

/// Whether `n` cogenerates `m`. The reject route and the explicit
/// embedding route are both run and must agree.
pub fn cogenerates(n: &FiniteModule, m: &FiniteModule) -> Result<bool> {
    let by_reject = reject(n, m)?.is_zero();
    let by_embedding = cogenerates_by_embedding(n, m)?.is_some();
    if by_reject != by_embedding {
        return Err(Error::inconsistency(
            "cogenerates",
            format!("reject route says {by_reject}, embedding route says {by_embedding} for {n} and {m}"),
        ));
    }
    Ok(by_reject)
}

/// A left ideal and a map from it into the module with no extension to R.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaerWitness {
    pub ideal: Vec<usize>,
    /// Images of the ideal's elements, in ascending element order.
    pub map: Vec<usize>,
}

/// Baer criterion: the first left ideal map that does not extend, if any.
pub fn injectivity_witness(m: &FiniteModule) -> Result<Option<BaerWitness>> {
    let ring = m.ring();
    let regular = FiniteModule::regular(ring)?;
    let extensions = hom_set(&regular, m)?;
    for ideal in ring.ideals(Sidedness::Left) {
        let sub = regular.closure(ideal.carrier.ones());
        let emb = regular.submodule_module(&sub)?;
        let mut restricted: Vec<Vec<usize>> = extensions
            .iter()
            .map(|f| emb.embedding.iter().map(|&x| f.apply(x)).collect())
            .collect();
        restricted.sort();
        for g in hom_set(&emb.module, m)? {
            if restricted.binary_search_by(|r| r.as_slice().cmp(g.table())).is_err() {
                return Ok(Some(BaerWitness {
                    ideal: emb.embedding.clone(),
                    map: g.table().to_vec(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_injective(m: &FiniteModule) -> Result<bool> {
    Ok(injectivity_witness(m)?.is_none())
}

/// Representatives of the simple modules: R/I for maximal left ideals I,
/// one per isomorphism class, in order of first appearance.
pub fn simple_modules(ring: &Arc<FiniteRing>) -> Result<Vec<Arc<FiniteModule>>> {
    let regular = FiniteModule::regular(ring)?;
    let lattice = SubmoduleLattice::new(&regular);
    let mut out: Vec<Arc<FiniteModule>> = Vec::new();
    for c in lattice.coatoms() {
        let q = regular.quotient(lattice.get(c))?.module;
        if !out.iter().any(|s| are_isomorphic(s, &q)) {
            out.push(q);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteRing> {
        FiniteRing::cyclic(n).unwrap()
    }

    fn m2() -> Arc<FiniteRing> {
        FiniteRing::matrix(&z(2), 2).unwrap()
    }

    #[test]
    fn structure_of_z4() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        let p = structural_predicates(&m).unwrap();
        assert_eq!(p.socle.elements(), vec![0, 2]);
        assert_eq!(p.jacobson_radical.elements(), vec![0, 2]);
        assert!(!p.is_semisimple && !p.is_simple);
    }

    #[test]
    fn structure_of_simple_and_plane() {
        let s = FiniteModule::regular(&z(2)).unwrap();
        let p = structural_predicates(&s).unwrap();
        assert!(p.is_simple && p.is_homogeneous_semisimple);
        assert!(p.jacobson_radical.is_zero());
        assert_eq!(p.socle, s.full_submodule());

        let v = FiniteModule::direct_sum(&[s.clone(), s]).unwrap().module;
        let p = structural_predicates(&v).unwrap();
        assert!(p.is_semisimple && p.is_homogeneous_semisimple && !p.is_simple);
    }

    #[test]
    fn non_homogeneous_semisimple() {
        let r = z(6);
        let reg = FiniteModule::regular(&r).unwrap();
        let p = structural_predicates(&reg).unwrap();
        assert!(p.is_semisimple);
        assert!(!p.is_homogeneous_semisimple);
    }

    #[test]
    fn essential_and_superfluous() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        let half = m.submodule([0, 2]).unwrap();
        let p = lattice_predicates(&half, &m).unwrap();
        assert!(p.is_essential && p.is_superfluous && p.is_atom);
        let p = lattice_predicates(&m.full_submodule(), &m).unwrap();
        assert!(p.is_essential && !p.is_superfluous && !p.is_atom);

        // Z6 = Z2 ⊕ Z3: atoms are not essential.
        let m6 = FiniteModule::regular(&z(6)).unwrap();
        for atom in [m6.submodule([0, 3]).unwrap(), m6.submodule([0, 2, 4]).unwrap()] {
            let p = lattice_predicates(&atom, &m6).unwrap();
            assert!(p.is_atom && !p.is_essential);
        }
    }

    #[test]
    fn cogeneration_examples() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        let half = m.cyclic(2).unwrap().module;
        assert!(!cogenerates(&half, &m).unwrap());
        assert!(cogenerates(&m, &m).unwrap());
        let s = FiniteModule::regular(&z(2)).unwrap();
        let ss = FiniteModule::direct_sum(&[s.clone(), s.clone()]).unwrap().module;
        assert!(cogenerates(&s, &ss).unwrap());
        let family = cogenerates_by_embedding(&s, &ss).unwrap().unwrap();
        assert!(family.len() <= 3);
    }

    #[test]
    fn baer_criterion() {
        let r = z(4);
        let m = FiniteModule::regular(&r).unwrap();
        let half = m.cyclic(2).unwrap().module;
        let w = injectivity_witness(&half).unwrap().expect("Z2 is not injective over Z4");
        assert_eq!(w.ideal, vec![0, 2]);
        assert!(is_injective(&m).unwrap());

        let ring = m2();
        let reg = FiniteModule::regular(&ring).unwrap();
        assert!(is_injective(&reg).unwrap());
        for s in simple_modules(&ring).unwrap() {
            assert!(is_injective(&s).unwrap());
        }
    }

    #[test]
    fn simples() {
        assert_eq!(simple_modules(&z(4)).unwrap().len(), 1);
        assert_eq!(simple_modules(&z(6)).unwrap().len(), 2);
        let s = simple_modules(&m2()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].order(), 4);
    }

    #[test]
    fn isomorphism() {
        let r = z(4);
        let m = FiniteModule::regular(&r).unwrap();
        let half = m.cyclic(2).unwrap().module;
        let quo = m.quotient(&m.submodule([0, 2]).unwrap()).unwrap().module;
        assert!(are_isomorphic(&half, &quo));
        assert!(!are_isomorphic(&half, &m));
    }
}
