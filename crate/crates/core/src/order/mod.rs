//! Finite posets, bounded lattices and poset actions ⇀ : P × L → L, with
//! first/prime deciders, pullback along monotone maps, restriction to
//! subposets and to intervals [0, x].

mod instance;
pub mod random;

pub use instance::{module_action_instance, ModuleActionInstance};

use crate::error::{Error, Result};
use crate::modules::SubmoduleLattice;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    n: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn new(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let table: Vec<bool> = (0..n * n).map(|k| leq(k / n, k % n)).collect();
        let p = FinitePoset { n, leq: table };
        for a in 0..n {
            if !p.leq(a, a) {
                return Err(Error::axiom("reflexivity", &[a]));
            }
            for b in 0..n {
                if a != b && p.leq(a, b) && p.leq(b, a) {
                    return Err(Error::axiom("antisymmetry", &[a, b]));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) && !p.leq(a, c) {
                        return Err(Error::axiom("transitivity", &[a, b, c]));
                    }
                }
            }
        }
        Ok(p)
    }

    pub fn chain(n: usize) -> Self {
        FinitePoset::new(n, |a, b| a <= b).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset::new(n, |a, b| a == b).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    /// The induced order on `elems`, renumbered 0..elems.len().
    pub fn subposet(&self, elems: &[usize]) -> Self {
        FinitePoset::new(elems.len(), |a, b| self.leq(elems[a], elems[b])).expect("induced order")
    }

    /// A pair a ≤ b with f(a) ≰ f(b), if `f: self → target` is not monotone.
    pub fn monotone_witness(&self, target: &FinitePoset, f: &[usize]) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|a| (0..self.n).map(move |b| (a, b)))
            .find(|&(a, b)| self.leq(a, b) && !target.leq(f[a], f[b]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBoundedLattice {
    order: FinitePoset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl FiniteBoundedLattice {
    /// Builds join and meet tables from the order; fails if some pair lacks
    /// a least upper or greatest lower bound.
    pub fn from_order(order: FinitePoset) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty lattice".into()));
        }
        let bound = |a: usize, b: usize, up: bool| -> Option<usize> {
            let rel = |x: usize, y: usize| if up { order.leq(x, y) } else { order.leq(y, x) };
            let cands: Vec<usize> = (0..n).filter(|&c| rel(a, c) && rel(b, c)).collect();
            cands.iter().copied().find(|&c| cands.iter().all(|&d| rel(c, d)))
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = bound(a, b, true).ok_or_else(|| Error::axiom("join exists", &[a, b]))?;
                meet[a * n + b] = bound(a, b, false).ok_or_else(|| Error::axiom("meet exists", &[a, b]))?;
            }
        }
        let bottom = (0..n).find(|&b| (0..n).all(|x| order.leq(b, x))).ok_or_else(|| Error::axiom("bottom exists", &[]))?;
        let top = (0..n).find(|&t| (0..n).all(|x| order.leq(x, t))).ok_or_else(|| Error::axiom("top exists", &[]))?;
        Ok(FiniteBoundedLattice {
            order,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn from_submodules(lattice: &SubmoduleLattice) -> Self {
        let n = lattice.len();
        let order = FinitePoset::new(n, |a, b| lattice.leq(a, b)).expect("containment is an order");
        FiniteBoundedLattice::from_order(order).expect("submodules form a lattice")
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn atoms(&self) -> Vec<usize> {
        let b = self.bottom;
        (0..self.len())
            .filter(|&a| a != b && (0..self.len()).all(|z| z == b || z == a || !self.leq(z, a)))
            .collect()
    }

    /// The interval [y, x] and the positions of its elements in `self`.
    pub fn interval(&self, y: usize, x: usize) -> Result<(FiniteBoundedLattice, Vec<usize>)> {
        if !self.leq(y, x) {
            return Err(Error::InvalidArgument(format!("{y} is not below {x}")));
        }
        let elems: Vec<usize> = (0..self.len()).filter(|&z| self.leq(y, z) && self.leq(z, x)).collect();
        let lat = FiniteBoundedLattice::from_order(self.order.subposet(&elems)).expect("intervals are lattices");
        Ok((lat, elems))
    }
}

/// An action ⇀ : P × L → L, monotone in both arguments and deflationary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetAction {
    poset: FinitePoset,
    lattice: FiniteBoundedLattice,
    table: Vec<usize>,
}

impl PosetAction {
    /// Checks the three action axioms exhaustively.
    pub fn new(poset: FinitePoset, lattice: FiniteBoundedLattice, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let (np, nl) = (poset.len(), lattice.len());
        let table: Vec<usize> = (0..np * nl).map(|k| act(k / nl, k % nl)).collect();
        if let Some(&bad) = table.iter().find(|&&y| y >= nl) {
            return Err(Error::InvalidArgument(format!("action value {bad} outside the lattice")));
        }
        let a = PosetAction { poset, lattice, table };
        for s in 0..np {
            for x in 0..nl {
                let sx = a.act(s, x);
                if !a.lattice.leq(sx, x) {
                    return Err(Error::axiom("s⇀x ≤ x", &[s, x]));
                }
                for t in 0..np {
                    if a.poset.leq(s, t) && !a.lattice.leq(sx, a.act(t, x)) {
                        return Err(Error::axiom("monotone in the poset", &[s, t, x]));
                    }
                }
                for y in 0..nl {
                    if a.lattice.leq(x, y) && !a.lattice.leq(sx, a.act(s, y)) {
                        return Err(Error::axiom("monotone in the lattice", &[s, x, y]));
                    }
                }
            }
        }
        Ok(a)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn lattice(&self) -> &FiniteBoundedLattice {
        &self.lattice
    }

    #[inline]
    pub fn act(&self, s: usize, x: usize) -> usize {
        self.table[s * self.lattice.len() + x]
    }

    /// A pair (z, s) with 0 ≠ z ≤ x, s⇀z = 0 and s⇀x ≠ 0, if x is not first.
    pub fn first_witness(&self, x: usize) -> Result<Option<(usize, usize)>> {
        let l = &self.lattice;
        let zero = l.bottom();
        if x == zero {
            return Err(Error::InvalidArgument("firstness is defined for nonzero elements".into()));
        }
        for z in (0..l.len()).filter(|&z| z != zero && l.leq(z, x)) {
            for s in 0..self.poset.len() {
                if self.act(s, z) == zero && self.act(s, x) != zero {
                    return Ok(Some((z, s)));
                }
            }
        }
        Ok(None)
    }

    pub fn is_first(&self, x: usize) -> Result<bool> {
        Ok(self.first_witness(x)?.is_none())
    }

    /// A pair (z, s) with s⇀z ≤ x but neither s⇀1 ≤ x nor z ≤ x.
    pub fn prime_witness(&self, x: usize) -> Option<(usize, usize)> {
        let l = &self.lattice;
        (0..l.len())
            .flat_map(|z| (0..self.poset.len()).map(move |s| (z, s)))
            .find(|&(z, s)| l.leq(self.act(s, z), x) && !l.leq(self.act(s, l.top()), x) && !l.leq(z, x))
    }

    pub fn is_prime(&self, x: usize) -> bool {
        self.prime_witness(x).is_none()
    }

    /// a ⇀_f x := f(a) ⇀ x for an order preserving `f: p → self.poset()`.
    pub fn pullback(&self, p: &FinitePoset, f: &[usize]) -> Result<PosetAction> {
        if f.len() != p.len() || f.iter().any(|&y| y >= self.poset.len()) {
            return Err(Error::InvalidArgument("map has wrong shape".into()));
        }
        if let Some((a, b)) = p.monotone_witness(&self.poset, f) {
            return Err(Error::NotMonotone(format!("{a} ≤ {b} but f({a}) ≰ f({b})")));
        }
        PosetAction::new(p.clone(), self.lattice.clone(), |a, x| self.act(f[a], x))
    }

    /// The action of the induced subposet on `elems`.
    pub fn restrict_poset(&self, elems: &[usize]) -> Result<PosetAction> {
        self.pullback(&self.poset.subposet(elems), elems)
    }

    /// The action on [0, x] and the positions of its elements in the lattice.
    pub fn restrict_action(&self, x: usize) -> Result<(PosetAction, Vec<usize>)> {
        let (lat, elems) = self.lattice.interval(self.lattice.bottom(), x)?;
        let pos = |y: usize| elems.binary_search(&y).expect("deflationary action stays in [0, x]");
        let a = PosetAction::new(self.poset.clone(), lat, |s, i| pos(self.act(s, elems[i])))?;
        Ok((a, elems))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The lattice 0 < a, b < 1.
    fn diamond() -> FiniteBoundedLattice {
        let up = [[true, true, true, true], [false, true, false, true], [false, false, true, true], [false, false, false, true]];
        FiniteBoundedLattice::from_order(FinitePoset::new(4, |a, b| up[a][b]).unwrap()).unwrap()
    }

    #[test]
    fn poset_axioms() {
        assert!(FinitePoset::new(2, |_, _| true).is_err());
        assert!(FinitePoset::new(2, |a, b| a != b).is_err());
        assert!(FinitePoset::new(3, |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2)).is_err());
        assert_eq!(FinitePoset::chain(3).len(), 3);
    }

    #[test]
    fn lattice_tables() {
        let l = diamond();
        assert_eq!(l.join(1, 2), 3);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.atoms(), vec![1, 2]);
        assert!(FiniteBoundedLattice::from_order(FinitePoset::antichain(2)).is_err());
        let (whole, _) = l.interval(0, 3).unwrap();
        assert_eq!(whole, l);
        let (point, e) = l.interval(1, 1).unwrap();
        assert_eq!((point.len(), e), (1, vec![1]));
        assert!(l.interval(1, 2).is_err());
    }

    #[test]
    fn action_axioms_enforced() {
        let l = diamond();
        assert!(PosetAction::new(FinitePoset::chain(1), l.clone(), |_, x| x).is_ok());
        assert!(PosetAction::new(FinitePoset::chain(1), l.clone(), |_, _| 3).is_err());
        // Not monotone in the poset: the larger element acts as zero.
        assert!(PosetAction::new(FinitePoset::chain(2), l, |s, x| if s == 0 { x } else { 0 }).is_err());
    }

    #[test]
    fn first_and_prime() {
        let l = diamond();
        // s⇀x = x ∧ a.
        let act = PosetAction::new(FinitePoset::chain(1), l.clone(), |_, x| l.meet(x, 1)).unwrap();
        assert!(act.is_first(1).unwrap());
        assert!(act.is_first(2).unwrap());
        assert_eq!(act.first_witness(3).unwrap(), Some((2, 0)));
        assert!(act.is_first(0).is_err());
        let identity = PosetAction::new(FinitePoset::chain(1), l, |_, x| x).unwrap();
        assert!(identity.is_first(3).unwrap());
        for x in 1..4 {
            let (r, _) = act.restrict_action(x).unwrap();
            assert_eq!(act.is_first(x).unwrap(), r.is_prime(r.lattice().bottom()));
        }
    }

    #[test]
    fn pullbacks() {
        let l = diamond();
        let q = FinitePoset::chain(2);
        let act = PosetAction::new(q, l.clone(), |s, x| if s == 0 { l.meet(x, 1) } else { x }).unwrap();
        let same = act.pullback(&FinitePoset::chain(2), &[0, 1]).unwrap();
        assert_eq!(same, act);
        let top = act.pullback(&FinitePoset::chain(3), &[1, 1, 1]).unwrap();
        for s in 0..3 {
            for x in 0..4 {
                assert_eq!(top.act(s, x), act.act(1, x));
            }
        }
        assert!(matches!(
            act.pullback(&FinitePoset::chain(2), &[1, 0]).unwrap_err(),
            Error::NotMonotone(_)
        ));
        let sub = act.restrict_poset(&[1]).unwrap();
        for x in 1..4 {
            if act.is_first(x).unwrap() {
                assert!(sub.is_first(x).unwrap());
            }
        }
    }
}
