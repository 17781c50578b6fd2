use super::{FiniteModule, Submodule};
use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// The lattice of submodules of a module, ordered by inclusion.
///
/// Element 0 is the zero submodule and the last element is the module
/// itself. Fully-invariant flags need End(M) and are computed on first use.
#[derive(Debug)]
pub struct SubmoduleLattice {
    module: Arc<FiniteModule>,
    index: HashMap<Submodule, usize>,
    fully_invariant: OnceLock<Vec<bool>>,
}

impl SubmoduleLattice {
    pub fn new(module: &Arc<FiniteModule>) -> Self {
        let index = module
            .submodules()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        SubmoduleLattice {
            module: Arc::clone(module),
            index,
            fully_invariant: OnceLock::new(),
        }
    }

    pub fn module(&self) -> &Arc<FiniteModule> {
        &self.module
    }

    pub fn elements(&self) -> &[Submodule] {
        self.module.submodules()
    }

    pub fn len(&self) -> usize {
        self.elements().len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, i: usize) -> &Submodule {
        &self.elements()[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn index_of(&self, sub: &Submodule) -> Option<usize> {
        self.index.get(sub).copied()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.get(a).is_subset(self.get(b))
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        let s = self.module.sum(self.get(a), self.get(b));
        self.index[&s]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        let s = self.get(a).meet(self.get(b));
        self.index[&s]
    }

    pub fn join_table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.join(a, b)).collect()).collect()
    }

    pub fn meet_table(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        (0..n).map(|a| (0..n).map(|b| self.meet(a, b)).collect()).collect()
    }

    pub fn fully_invariant_flags(&self) -> &[bool] {
        self.fully_invariant.get_or_init(|| {
            let endos = self.module.endomorphisms();
            self.elements()
                .iter()
                .map(|s| endos.iter().all(|f| s.iter().all(|x| s.contains(f.apply(x)))))
                .collect()
        })
    }

    pub fn is_fully_invariant(&self, i: usize) -> bool {
        self.fully_invariant_flags()[i]
    }

    pub fn fully_invariant(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.is_fully_invariant(i))
    }

    /// Minimal nonzero submodules.
    pub fn atoms(&self) -> Vec<usize> {
        (1..self.len())
            .filter(|&i| {
                (1..self.len()).all(|j| j == i || !self.get(j).is_subset(self.get(i)))
            })
            .collect()
    }

    /// Maximal proper submodules.
    pub fn coatoms(&self) -> Vec<usize> {
        let top = self.top();
        (0..top)
            .filter(|&i| (0..top).all(|j| j == i || !self.get(i).is_subset(self.get(j))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::full_set;
    use crate::ring::FiniteRing;
    use fixedbitset::FixedBitSet;

    /// Every subset of the carrier that is closed.
    fn power_set_oracle(m: &FiniteModule) -> Vec<Submodule> {
        let n = m.order();
        let g = m.operator_group();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let mut s = FixedBitSet::with_capacity(n);
            s.extend((0..n).filter(|&i| mask >> i & 1 == 1));
            if g.is_closed(&s) {
                out.push(Submodule(s));
            }
        }
        out.sort_by(|a, b| crate::closure::canonical_cmp(&a.0, &b.0));
        out
    }

    #[test]
    fn z4_lattice() {
        let m = FiniteModule::regular(&FiniteRing::cyclic(4).unwrap()).unwrap();
        let l = SubmoduleLattice::new(&m);
        assert_eq!(l.len(), 3);
        assert!(l.fully_invariant_flags().iter().all(|&b| b));
        assert_eq!(l.get(l.top()).0, full_set(4));
        assert_eq!(l.atoms(), vec![1]);
        assert_eq!(l.coatoms(), vec![1]);
    }

    #[test]
    fn plane_over_f2() {
        let z2 = FiniteModule::regular(&FiniteRing::cyclic(2).unwrap()).unwrap();
        let v = FiniteModule::direct_sum(&[z2.clone(), z2]).unwrap().module;
        let l = SubmoduleLattice::new(&v);
        assert_eq!(l.len(), 5);
        let fi: Vec<usize> = l.fully_invariant().collect();
        assert_eq!(fi, vec![0, 4]);
        assert_eq!(l.atoms().len(), 3);
    }

    #[test]
    fn closure_enumeration_matches_power_set() {
        let z2 = FiniteModule::regular(&FiniteRing::cyclic(2).unwrap()).unwrap();
        let z4r = FiniteRing::cyclic(4).unwrap();
        let z4 = FiniteModule::regular(&z4r).unwrap();
        let z4_2 = z4.cyclic(2).unwrap().module;
        let cases = vec![
            z4.clone(),
            FiniteModule::direct_sum(&[z2.clone(), z2.clone(), z2.clone()]).unwrap().module,
            FiniteModule::direct_sum(&[z2.clone(), z2.clone(), z2.clone(), z2]).unwrap().module,
            FiniteModule::direct_sum(&[z4.clone(), z4_2]).unwrap().module,
            FiniteModule::direct_sum(&[z4.clone(), z4]).unwrap().module,
            FiniteModule::regular(&FiniteRing::cyclic(12).unwrap()).unwrap(),
        ];
        for m in cases {
            assert_eq!(m.submodules(), power_set_oracle(&m).as_slice(), "{m}");
        }
    }

    #[test]
    fn join_and_meet_are_closed() {
        let z2 = FiniteModule::regular(&FiniteRing::cyclic(2).unwrap()).unwrap();
        let v = FiniteModule::direct_sum(&[z2.clone(), z2.clone(), z2]).unwrap().module;
        let l = SubmoduleLattice::new(&v);
        let j = l.join_table();
        let m = l.meet_table();
        for a in 0..l.len() {
            for b in 0..l.len() {
                assert!(l.leq(a, j[a][b]) && l.leq(b, j[a][b]));
                assert!(l.leq(m[a][b], a) && l.leq(m[a][b], b));
            }
        }
    }

    #[test]
    fn fully_invariant_transitivity() {
        let z4r = FiniteRing::cyclic(8).unwrap();
        let z8 = FiniteModule::regular(&z4r).unwrap();
        let z2 = z8.quotient(&z8.submodule([0, 2, 4, 6]).unwrap()).unwrap().module;
        let m = FiniteModule::direct_sum(&[z8, z2]).unwrap().module;
        let l = SubmoduleLattice::new(&m);
        for k in l.fully_invariant().collect::<Vec<_>>() {
            let emb = m.submodule_module(l.get(k)).unwrap();
            let lk = SubmoduleLattice::new(&emb.module);
            for li in lk.fully_invariant() {
                let pushed = emb.push_forward(&m, lk.get(li));
                let idx = l.index_of(&pushed).unwrap();
                assert!(l.is_fully_invariant(idx), "{pushed} in {}", l.get(k));
            }
        }
    }
}
