//! Finite left modules over a [`FiniteRing`], given by full tables.

mod hom;
mod lattice;
mod props;

pub use hom::{hom_set, hom_visit, exists_nonzero_hom, ModuleMorphism};
pub use lattice::SubmoduleLattice;
pub use props::{
    are_isomorphic, cogenerates, cogenerates_by_embedding, injectivity_witness, is_injective,
    lattice_predicates, simple_modules, structural_predicates, BaerWitness, LatticePredicates,
    StructuralPredicates,
};

use crate::closure::{full_set, set_from, OperatorGroup};
use crate::error::{Error, Result};
use crate::ring::{check_abelian_group, check_cap, cosets, FiniteRing, Radix};
use fixedbitset::FixedBitSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleProvenance {
    Regular,
    Quotient,
    Submodule,
    DirectSum(usize),
    Cyclic { generator: usize },
    Raw,
}

/// A submodule, stored as a carrier inside its ambient module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Submodule(FixedBitSet);

impl Submodule {
    pub fn carrier(&self) -> &FixedBitSet {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True for the zero submodule.
    pub fn is_zero(&self) -> bool {
        self.len() == 1
    }

    pub fn elements(&self) -> Vec<usize> {
        self.0.ones().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn meet(&self, other: &Submodule) -> Submodule {
        Submodule(&self.0 & &other.0)
    }
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.ones().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// A module built inside another, with its inclusion map.
#[derive(Debug, Clone)]
pub struct Embedded {
    pub module: Arc<FiniteModule>,
    /// `embedding[i]` is the parent element for element `i`.
    pub embedding: Vec<usize>,
}

impl Embedded {
    /// Carries a submodule of the embedded module back into the parent.
    pub fn push_forward(&self, parent: &FiniteModule, sub: &Submodule) -> Submodule {
        parent.submodule_unchecked(sub.iter().map(|x| self.embedding[x]))
    }
}

#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: Arc<FiniteModule>,
    /// Parent element to coset.
    pub projection: Vec<usize>,
}

impl Quotient {
    /// Preimage of a submodule of the quotient.
    pub fn pull_back(&self, parent: &FiniteModule, sub: &Submodule) -> Submodule {
        parent.submodule_unchecked((0..parent.order()).filter(|&x| sub.contains(self.projection[x])))
    }
}

#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Arc<FiniteModule>,
    pub injections: Vec<Vec<usize>>,
    pub projections: Vec<Vec<usize>>,
}

pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    order: usize,
    add: Vec<usize>,
    act: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    provenance: ModuleProvenance,
    description: String,
    // pure caches
    submodules: OnceLock<Vec<Submodule>>,
    endomorphisms: OnceLock<Vec<ModuleMorphism>>,
    generation: OnceLock<hom::Generation>,
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("order", &self.order)
            .field("description", &self.description)
            .finish()
    }
}

impl fmt::Display for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.add == other.add
            && self.act == other.act
            && same_ring(&self.ring, &other.ring)
    }
}

impl Eq for FiniteModule {}

pub(crate) fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FiniteModule {
    /// The ring as a left module over itself.
    pub fn regular(ring: &Arc<FiniteRing>) -> Result<Arc<Self>> {
        let n = ring.order();
        let add = (0..n * n).map(|i| ring.add(i / n, i % n)).collect();
        let act = (0..n * n).map(|i| ring.mul(i / n, i % n)).collect();
        Self::checked(
            ring,
            n,
            add,
            act,
            ModuleProvenance::Regular,
            format!("regular({})", ring.description()),
        )
    }

    pub fn zero_module(ring: &Arc<FiniteRing>) -> Arc<Self> {
        Self::checked(ring, 1, vec![0], vec![0; ring.order()], ModuleProvenance::Raw, "0".into())
            .expect("zero module is valid")
    }

    /// Module from raw tables: `add[x][y]` and `act[r][x]`.
    pub fn from_tables(
        ring: &Arc<FiniteRing>,
        add: &[Vec<usize>],
        act: &[Vec<usize>],
    ) -> Result<Arc<Self>> {
        let n = add.len();
        if add.iter().any(|row| row.len() != n)
            || act.len() != ring.order()
            || act.iter().any(|row| row.len() != n)
        {
            return Err(Error::InvalidArgument(format!(
                "raw module tables must be {n}x{n} and {}x{n}",
                ring.order()
            )));
        }
        Self::checked(
            ring,
            n,
            add.concat(),
            act.concat(),
            ModuleProvenance::Raw,
            format!("raw({n})"),
        )
    }

    fn checked(
        ring: &Arc<FiniteRing>,
        order: usize,
        add: Vec<usize>,
        act: Vec<usize>,
        provenance: ModuleProvenance,
        description: String,
    ) -> Result<Arc<Self>> {
        check_cap("module", order, ring.caps().module)?;
        let (zero, neg) = check_abelian_group(order, &add)?;
        let n = order;
        let rn = ring.order();
        if let Some(pos) = act.iter().position(|&v| v >= n) {
            return Err(Error::axiom("action entries in range", &[pos / n, pos % n]));
        }
        let a = |r: usize, x: usize| act[r * n + x];
        let s = |x: usize, y: usize| add[x * n + y];
        for x in 0..n {
            if a(ring.one(), x) != x {
                return Err(Error::axiom("1·x = x", &[x]));
            }
        }
        for r in 0..rn {
            for x in 0..n {
                for y in 0..n {
                    if a(r, s(x, y)) != s(a(r, x), a(r, y)) {
                        return Err(Error::axiom("r(x+y) = rx+ry", &[r, x, y]));
                    }
                }
                for t in 0..rn {
                    if a(ring.add(r, t), x) != s(a(r, x), a(t, x)) {
                        return Err(Error::axiom("(r+s)x = rx+sx", &[r, t, x]));
                    }
                    if a(ring.mul(r, t), x) != a(r, a(t, x)) {
                        return Err(Error::axiom("(rs)x = r(sx)", &[r, t, x]));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteModule {
            ring: Arc::clone(ring),
            order,
            add,
            act,
            neg,
            zero,
            provenance,
            description,
            submodules: OnceLock::new(),
            endomorphisms: OnceLock::new(),
            generation: OnceLock::new(),
        }))
    }

    /// The submodule `sub` as a module in its own right. Elements are
    /// renumbered in ascending parent order.
    pub fn submodule_module(self: &Arc<Self>, sub: &Submodule) -> Result<Embedded> {
        self.check_submodule(sub)?;
        Ok(self.submodule_module_unchecked(sub, ModuleProvenance::Submodule))
    }

    fn submodule_module_unchecked(self: &Arc<Self>, sub: &Submodule, provenance: ModuleProvenance) -> Embedded {
        if sub.len() == self.order {
            return Embedded {
                module: Arc::clone(self),
                embedding: (0..self.order).collect(),
            };
        }
        let embedding = sub.elements();
        let mut index = vec![usize::MAX; self.order];
        for (i, &x) in embedding.iter().enumerate() {
            index[x] = i;
        }
        let k = embedding.len();
        let add = (0..k * k)
            .map(|i| index[self.add(embedding[i / k], embedding[i % k])])
            .collect();
        let act = (0..self.ring.order() * k)
            .map(|i| index[self.act(i / k, embedding[i % k])])
            .collect();
        let description = match provenance {
            ModuleProvenance::Cyclic { generator } => format!("R·{generator} in {}", self.description),
            _ => format!("{sub} in {}", self.description),
        };
        let module = Self::checked(&self.ring, k, add, act, provenance, description)
            .expect("closed carrier gives a valid module");
        Embedded { module, embedding }
    }

    /// Rx as its own module.
    pub fn cyclic(self: &Arc<Self>, x: usize) -> Result<Embedded> {
        if x >= self.order {
            return Err(Error::InvalidArgument(format!("element {x} out of range")));
        }
        let sub = self.closure([x]);
        Ok(self.submodule_module_unchecked(&sub, ModuleProvenance::Cyclic { generator: x }))
    }

    /// M/N with cosets numbered by least representative.
    pub fn quotient(self: &Arc<Self>, sub: &Submodule) -> Result<Quotient> {
        self.check_submodule(sub)?;
        if sub.is_zero() {
            return Ok(Quotient {
                module: Arc::clone(self),
                projection: (0..self.order).collect(),
            });
        }
        let (reps, projection) = cosets(self.order, &self.add, sub.carrier());
        let q = reps.len();
        let add = (0..q * q)
            .map(|i| projection[self.add(reps[i / q], reps[i % q])])
            .collect();
        let act = (0..self.ring.order() * q)
            .map(|i| projection[self.act(i / q, reps[i % q])])
            .collect();
        let module = Self::checked(
            &self.ring,
            q,
            add,
            act,
            ModuleProvenance::Quotient,
            format!("{}/{sub}", self.description),
        )?;
        Ok(Quotient { module, projection })
    }

    /// Direct sum; tuples ordered lexicographically, first summand most significant.
    pub fn direct_sum(parts: &[Arc<FiniteModule>]) -> Result<DirectSum> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        let ring = &first.ring;
        if parts.iter().any(|p| !same_ring(&p.ring, ring)) {
            return Err(Error::RingMismatch);
        }
        let cap = ring.caps().module;
        let order = parts
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.order))
            .filter(|&o| o <= cap)
            .ok_or(Error::Cap {
                what: "module",
                order: parts.iter().map(|p| p.order).fold(1usize, usize::saturating_mul),
                cap,
            })?;
        let radix = Radix::new(parts.iter().map(|p| p.order).collect());
        let decoded: Vec<Vec<usize>> = (0..order).map(|x| radix.decode(x)).collect();
        let mut add = vec![0; order * order];
        let mut digits = vec![0; parts.len()];
        for x in 0..order {
            for y in 0..order {
                for (i, p) in parts.iter().enumerate() {
                    digits[i] = p.add(decoded[x][i], decoded[y][i]);
                }
                add[x * order + y] = radix.encode(&digits);
            }
        }
        let mut act = vec![0; ring.order() * order];
        for r in 0..ring.order() {
            for x in 0..order {
                for (i, p) in parts.iter().enumerate() {
                    digits[i] = p.act(r, decoded[x][i]);
                }
                act[r * order + x] = radix.encode(&digits);
            }
        }
        let description = parts
            .iter()
            .map(|p| p.description.as_str())
            .collect::<Vec<_>>()
            .join(" ⊕ ");
        let module = Self::checked(
            ring,
            order,
            add,
            act,
            ModuleProvenance::DirectSum(parts.len()),
            format!("({description})"),
        )?;
        let zeros: Vec<usize> = parts.iter().map(|p| p.zero).collect();
        let injections = parts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                (0..p.order)
                    .map(|x| {
                        let mut d = zeros.clone();
                        d[i] = x;
                        radix.encode(&d)
                    })
                    .collect()
            })
            .collect();
        let projections = (0..parts.len())
            .map(|i| decoded.iter().map(|d| d[i]).collect())
            .collect();
        Ok(DirectSum {
            module,
            injections,
            projections,
        })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn is_zero_module(&self) -> bool {
        self.order == 1
    }

    pub fn provenance(&self) -> &ModuleProvenance {
        &self.provenance
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.order + y]
    }

    #[inline]
    pub fn act(&self, r: usize, x: usize) -> usize {
        self.act[r * self.order + x]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub(crate) fn operator_group(&self) -> OperatorGroup<'_> {
        let n = self.order;
        OperatorGroup {
            order: n,
            zero: self.zero,
            add: &self.add,
            ops: (0..self.ring.order())
                .map(|r| self.act[r * n..(r + 1) * n].to_vec())
                .collect(),
        }
    }

    /// The submodule generated by `seeds`.
    pub fn closure(&self, seeds: impl IntoIterator<Item = usize>) -> Submodule {
        Submodule(self.operator_group().closure(seeds))
    }

    /// Validates that `elems` is a submodule carrier.
    pub fn submodule(&self, elems: impl IntoIterator<Item = usize>) -> Result<Submodule> {
        let elems: Vec<usize> = elems.into_iter().collect();
        if let Some(&x) = elems.iter().find(|&&x| x >= self.order) {
            return Err(Error::InvalidArgument(format!("element {x} out of range")));
        }
        let sub = Submodule(set_from(self.order, elems));
        self.check_submodule(&sub)?;
        Ok(sub)
    }

    pub(crate) fn submodule_unchecked(&self, elems: impl IntoIterator<Item = usize>) -> Submodule {
        Submodule(set_from(self.order, elems))
    }

    pub fn check_submodule(&self, sub: &Submodule) -> Result<()> {
        if sub.0.len() != self.order || !self.operator_group().is_closed(&sub.0) {
            return Err(Error::NotClosed(format!("{sub} is not a submodule")));
        }
        Ok(())
    }

    pub fn zero_submodule(&self) -> Submodule {
        self.submodule_unchecked([self.zero])
    }

    pub fn full_submodule(&self) -> Submodule {
        Submodule(full_set(self.order))
    }

    pub fn sum(&self, a: &Submodule, b: &Submodule) -> Submodule {
        Submodule(self.operator_group().join(&a.0, &b.0))
    }

    /// Sum of a family of submodules (zero for the empty family).
    pub fn sum_all<'a>(&self, subs: impl IntoIterator<Item = &'a Submodule>) -> Submodule {
        let g = self.operator_group();
        let mut acc = self.zero_submodule().0;
        for s in subs {
            if !s.0.is_subset(&acc) {
                acc = g.join(&acc, &s.0);
            }
        }
        Submodule(acc)
    }

    /// Intersection of a family (the whole module for the empty family).
    pub fn meet_all<'a>(&self, subs: impl IntoIterator<Item = &'a Submodule>) -> Submodule {
        let mut acc = full_set(self.order);
        for s in subs {
            acc &= &s.0;
        }
        Submodule(acc)
    }

    /// I·N, the additive closure of {i·n}.
    pub fn ideal_times(&self, ideal: &FixedBitSet, sub: &Submodule) -> Submodule {
        let g = OperatorGroup {
            order: self.order,
            zero: self.zero,
            add: &self.add,
            ops: Vec::new(),
        };
        Submodule(g.closure(ideal.ones().flat_map(|i| sub.iter().map(move |x| self.act(i, x)))))
    }

    /// Ann(N) = {r | rN = 0}, a two-sided ideal when N is a submodule.
    pub fn annihilator(&self, sub: &Submodule) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.ring.order());
        out.extend(
            self.ring
                .elements()
                .filter(|&r| sub.iter().all(|x| self.act(r, x) == self.zero)),
        );
        out
    }

    /// Ann(x) = {r | rx = 0}, a left ideal.
    pub fn element_annihilator(&self, x: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.ring.order());
        out.extend(self.ring.elements().filter(|&r| self.act(r, x) == self.zero));
        out
    }

    /// All submodules in canonical order (by size, then element list).
    pub fn submodules(&self) -> &[Submodule] {
        self.submodules.get_or_init(|| {
            self.operator_group()
                .all_closed()
                .into_iter()
                .map(Submodule)
                .collect()
        })
    }

    /// End(M), in canonical order.
    pub fn endomorphisms(self: &Arc<Self>) -> &[ModuleMorphism] {
        self.endomorphisms
            .get_or_init(|| hom_set(self, self).expect("same ring"))
    }

    pub(crate) fn generation(&self) -> &hom::Generation {
        self.generation.get_or_init(|| hom::Generation::new(self))
    }

    /// Canonical index of `sub` among [`Self::submodules`].
    pub fn submodule_index(&self, sub: &Submodule) -> Option<usize> {
        self.submodules().iter().position(|s| s == sub)
    }

    pub fn is_fully_invariant(self: &Arc<Self>, sub: &Submodule) -> bool {
        self.endomorphisms()
            .iter()
            .all(|f| sub.iter().all(|x| sub.contains(f.apply(x))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteRing> {
        FiniteRing::cyclic(n).unwrap()
    }

    #[test]
    fn regular_z4() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        assert_eq!(m.order(), 4);
        assert_eq!(m.provenance(), &ModuleProvenance::Regular);
    }

    #[test]
    fn direct_sum_of_simples() {
        let s = FiniteModule::regular(&z(2)).unwrap();
        let d = FiniteModule::direct_sum(&[s.clone(), s]).unwrap();
        assert_eq!(d.module.order(), 4);
        assert_eq!(d.injections[0], vec![0, 2]);
        assert_eq!(d.injections[1], vec![0, 1]);
        assert_eq!(d.projections[0], vec![0, 0, 1, 1]);
    }

    #[test]
    fn cyclic_submodule_of_z4() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        let c = m.cyclic(2).unwrap();
        assert_eq!(c.embedding, vec![0, 2]);
        assert_eq!(c.module.order(), 2);
        assert_eq!(c.module.provenance(), &ModuleProvenance::Cyclic { generator: 2 });
    }

    #[test]
    fn quotient_and_pullback() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        let half = m.submodule([0, 2]).unwrap();
        let q = m.quotient(&half).unwrap();
        assert_eq!(q.module.order(), 2);
        let back = q.pull_back(&m, &q.module.zero_submodule());
        assert_eq!(back, half);
    }

    #[test]
    fn non_submodule_rejected() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        assert!(matches!(m.submodule([0, 1]), Err(Error::NotClosed(_))));
        assert!(m.submodule_module(&m.submodule_unchecked([0, 3])).is_err());
    }

    #[test]
    fn raw_module_axioms() {
        let r = z(2);
        let add = vec![vec![0, 1], vec![1, 0]];
        let act = vec![vec![0, 0], vec![0, 1]];
        assert!(FiniteModule::from_tables(&r, &add, &act).is_ok());
        let bad = vec![vec![0, 0], vec![0, 0]];
        let err = FiniteModule::from_tables(&r, &add, &bad).unwrap_err();
        assert!(matches!(err, Error::Axiom { axiom: "1·x = x", .. }));
    }

    #[test]
    fn module_cap() {
        let m = FiniteModule::regular(&z(16)).unwrap();
        let err = FiniteModule::direct_sum(&[m.clone(), m.clone()]).unwrap_err();
        assert!(matches!(err, Error::Cap { order: 256, cap: 64, .. }));
    }

    #[test]
    fn ideal_times_and_annihilators() {
        let m = FiniteModule::regular(&z(4)).unwrap();
        let half = m.submodule([0, 2]).unwrap();
        let i = set_from(4, [0, 2]);
        assert_eq!(m.ideal_times(&i, &half), m.zero_submodule());
        assert_eq!(m.ideal_times(&i, &m.full_submodule()), half);
        assert_eq!(m.annihilator(&half).ones().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(m.element_annihilator(1).ones().collect::<Vec<_>>(), vec![0]);
    }
}
