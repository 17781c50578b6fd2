//! Preradicals as evaluable expression trees.
//!
//! A [`Preradical`] assigns to every module U a fully invariant submodule
//! σ(U), naturally in morphisms. Leaves are the α/ω/β preradicals frozen at
//! a pair (N, M), t-radicals I·(−), socle, radical, the constant
//! preradicals, and left exact preradicals coming from linear filters.

mod calc;
mod parse;

pub use calc::{
    compare, idempotent_core, product_hom_ab, product_in, property_flags, radical_closure,
    PreradicalOrder, PropertyFlags,
};
pub use parse::{parse_preradical, parse_preradical_at, PreradicalContext};

use crate::error::{Error, Result};
use crate::modules::{hom_set, same_ring, FiniteModule, Submodule};
use crate::ring::{FiniteRing, Ideal, Sidedness};
use fixedbitset::FixedBitSet;
use std::fmt;
use std::sync::Arc;

/// A submodule N of a module M, frozen as the defining data of α/ω/β.
#[derive(Debug, Clone)]
pub struct FrozenPair {
    pub name: String,
    pub module: Arc<FiniteModule>,
    pub sub: Submodule,
    /// Canonical index of `sub` in the submodule lattice of `module`.
    pub index: usize,
}

impl FrozenPair {
    pub fn new(name: impl Into<String>, module: &Arc<FiniteModule>, index: usize) -> Result<Self> {
        let sub = module
            .submodules()
            .get(index)
            .cloned()
            .ok_or_else(|| Error::Unresolved(format!("submodule {index}")))?;
        Ok(FrozenPair {
            name: name.into(),
            module: Arc::clone(module),
            sub,
            index,
        })
    }

    pub fn from_submodule(name: impl Into<String>, module: &Arc<FiniteModule>, sub: &Submodule) -> Result<Self> {
        module.check_submodule(sub)?;
        let index = module.submodule_index(sub).expect("closed carrier is enumerated");
        Self::new(name, module, index)
    }

    /// The pair (M, M), whose α/β preradical is the trace of M.
    pub fn whole(name: impl Into<String>, module: &Arc<FiniteModule>) -> Self {
        let index = module.submodules().len() - 1;
        Self::new(name, module, index).expect("top exists")
    }
}

/// A linear filter of left ideals and its left exact preradical
/// t(M) = {m | Ann(m) ∈ F}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFilter {
    pub ring: Arc<FiniteRing>,
    /// Member left ideals as carriers, in canonical order.
    pub ideals: Vec<FixedBitSet>,
    /// Position in the enumeration the filter came from.
    pub index: usize,
}

impl LinearFilter {
    /// Every linear filter of left ideals of `ring`, smallest first.
    ///
    /// Candidates are all families of left ideals, so the ring may have at
    /// most 20 left ideals.
    pub fn enumerate(ring: &Arc<FiniteRing>) -> Result<Vec<LinearFilter>> {
        let ideals = ring.ideals(Sidedness::Left);
        let k = ideals.len();
        crate::ring::check_cap("left ideal family", k, 20)?;
        let idx = |c: &FixedBitSet| ideals.iter().position(|i| &i.carrier == c);
        let top = k - 1;
        let colon: Vec<Vec<usize>> = ideals
            .iter()
            .map(|i| {
                ring.elements()
                    .map(|a| idx(&ring.colon(i, a)).expect("colon of a left ideal is a left ideal"))
                    .collect()
            })
            .collect();
        let meet: Vec<Vec<usize>> = ideals
            .iter()
            .map(|a| {
                ideals
                    .iter()
                    .map(|b| {
                        let mut c = a.carrier.clone();
                        c.intersect_with(&b.carrier);
                        idx(&c).expect("intersection of left ideals")
                    })
                    .collect()
            })
            .collect();
        let below = |a: usize, b: usize| ideals[a].carrier.is_subset(&ideals[b].carrier);
        let mut out: Vec<Vec<usize>> = Vec::new();
        for mask in 0u32..(1u32 << k) {
            let has = |i: usize| mask & (1 << i) != 0;
            if !has(top) {
                continue;
            }
            let members: Vec<usize> = (0..k).filter(|&i| has(i)).collect();
            let ok = members.iter().all(|&a| {
                (0..k).all(|b| !below(a, b) || has(b))
                    && members.iter().all(|&b| has(meet[a][b]))
                    && colon[a].iter().all(|&c| has(c))
            });
            if ok {
                out.push(members);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out
            .into_iter()
            .enumerate()
            .map(|(index, members)| LinearFilter {
                ring: Arc::clone(ring),
                ideals: members.into_iter().map(|i| ideals[i].carrier.clone()).collect(),
                index,
            })
            .collect())
    }

    pub fn contains(&self, carrier: &FixedBitSet) -> bool {
        self.ideals.iter().any(|i| i == carrier)
    }

    pub fn evaluate(&self, u: &FiniteModule) -> Submodule {
        u.submodule_unchecked(
            u.elements()
                .filter(|&x| self.contains(&u.element_annihilator(x))),
        )
    }
}

#[derive(Debug, Clone)]
pub enum Preradical {
    Alpha(FrozenPair),
    Omega(FrozenPair),
    Beta(FrozenPair),
    Trad {
        ring: Arc<FiniteRing>,
        ideal: Ideal,
        index: usize,
    },
    Soc,
    Rad,
    Zero,
    One,
    Join(Vec<Preradical>),
    Meet(Vec<Preradical>),
    /// `Compose(outer, inner)` is outer ∘ inner.
    Compose(Box<Preradical>, Box<Preradical>),
    LeftExact(Arc<LinearFilter>),
}

impl Preradical {
    /// α_N^M; N must be fully invariant in M.
    pub fn alpha(pair: FrozenPair) -> Result<Self> {
        if !pair.module.is_fully_invariant(&pair.sub) {
            return Err(Error::NotFullyInvariant);
        }
        Ok(Preradical::Alpha(pair))
    }

    /// ω_N^M; N must be fully invariant in M.
    pub fn omega(pair: FrozenPair) -> Result<Self> {
        if !pair.module.is_fully_invariant(&pair.sub) {
            return Err(Error::NotFullyInvariant);
        }
        Ok(Preradical::Omega(pair))
    }

    pub fn beta(pair: FrozenPair) -> Self {
        Preradical::Beta(pair)
    }

    /// The trace of M, α_M^M.
    pub fn trace(name: impl Into<String>, module: &Arc<FiniteModule>) -> Self {
        Preradical::Alpha(FrozenPair::whole(name, module))
    }

    /// The reject ω_0^M.
    pub fn reject(name: impl Into<String>, module: &Arc<FiniteModule>) -> Self {
        Preradical::Omega(FrozenPair::new(name, module, 0).expect("zero submodule exists"))
    }

    /// I·(−) for the two-sided ideal with canonical index `index`.
    pub fn trad(ring: &Arc<FiniteRing>, index: usize) -> Result<Self> {
        let ideal = ring
            .ideals(Sidedness::TwoSided)
            .get(index)
            .cloned()
            .ok_or_else(|| Error::Unresolved(format!("I{index}")))?;
        Ok(Preradical::Trad {
            ring: Arc::clone(ring),
            ideal,
            index,
        })
    }

    pub fn trad_ideal(ring: &Arc<FiniteRing>, ideal: &Ideal) -> Result<Self> {
        let index = ring
            .ideals(Sidedness::TwoSided)
            .iter()
            .position(|i| i.carrier == ideal.carrier)
            .ok_or(Error::NotTwoSided)?;
        Self::trad(ring, index)
    }

    pub fn compose(outer: Preradical, inner: Preradical) -> Self {
        Preradical::Compose(Box::new(outer), Box::new(inner))
    }

    /// Depth of the expression tree; leaves have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Preradical::Join(v) | Preradical::Meet(v) => {
                1 + v.iter().map(Preradical::depth).max().unwrap_or(0)
            }
            Preradical::Compose(a, b) => 1 + a.depth().max(b.depth()),
            _ => 1,
        }
    }

    fn check_ring(&self, ring: &Arc<FiniteRing>) -> Result<()> {
        let ok = match self {
            Preradical::Alpha(p) | Preradical::Omega(p) | Preradical::Beta(p) => {
                same_ring(p.module.ring(), ring)
            }
            Preradical::Trad { ring: r, .. } => same_ring(r, ring),
            Preradical::LeftExact(f) => same_ring(&f.ring, ring),
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// σ(U), as a submodule of U.
    pub fn evaluate(&self, u: &Arc<FiniteModule>) -> Result<Submodule> {
        self.check_ring(u.ring())?;
        Ok(match self {
            Preradical::Zero => u.zero_submodule(),
            Preradical::One => u.full_submodule(),
            Preradical::Alpha(p) | Preradical::Beta(p) => {
                let homs = hom_set(&p.module, u)?;
                let images: Vec<Submodule> = homs.iter().map(|f| f.image(u, &p.sub)).collect();
                u.sum_all(&images)
            }
            Preradical::Omega(p) => {
                let homs = hom_set(u, &p.module)?;
                let pre: Vec<Submodule> = homs.iter().map(|f| f.preimage(u, &p.sub)).collect();
                u.meet_all(&pre)
            }
            Preradical::Trad { ideal, .. } => u.ideal_times(&ideal.carrier, &u.full_submodule()),
            Preradical::Soc => socle(u),
            Preradical::Rad => radical(u),
            Preradical::Join(parts) => {
                let vals = parts
                    .iter()
                    .map(|p| p.evaluate(u))
                    .collect::<Result<Vec<_>>>()?;
                u.sum_all(&vals)
            }
            Preradical::Meet(parts) => {
                let vals = parts
                    .iter()
                    .map(|p| p.evaluate(u))
                    .collect::<Result<Vec<_>>>()?;
                u.meet_all(&vals)
            }
            Preradical::Compose(outer, inner) => {
                let k = inner.evaluate(u)?;
                let emb = u.submodule_module(&k)?;
                let s = outer.evaluate(&emb.module)?;
                emb.push_forward(u, &s)
            }
            Preradical::LeftExact(f) => f.evaluate(u),
        })
    }
}

/// Sum of the simple cyclic submodules.
pub(crate) fn socle(u: &FiniteModule) -> Submodule {
    let closures: Vec<Submodule> = u.elements().map(|x| u.closure([x])).collect();
    let simple: Vec<&Submodule> = closures
        .iter()
        .filter(|c| !c.is_zero() && c.iter().all(|y| y == u.zero() || closures[y] == **c))
        .collect();
    u.sum_all(simple)
}

/// Intersection of the maximal submodules.
pub(crate) fn radical(u: &FiniteModule) -> Submodule {
    let subs = u.submodules();
    if subs.len() == 1 {
        return u.zero_submodule();
    }
    let top = subs.len() - 1;
    let maximal = (0..top)
        .filter(|&i| (0..top).all(|j| j == i || !subs[i].is_subset(&subs[j])))
        .map(|i| &subs[i]);
    u.meet_all(maximal)
}

/// Expressions are equal when their canonical forms are.
impl PartialEq for Preradical {
    fn eq(&self, other: &Self) -> bool {
        self.to_string() == other.to_string()
    }
}

impl Eq for Preradical {}

impl fmt::Display for Preradical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, name: &str, v: &[Preradical]| {
            write!(f, "{name}(")?;
            for (i, p) in v.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")
        };
        match self {
            Preradical::Alpha(p) => write!(f, "alpha({}@{})", p.index, p.name),
            Preradical::Omega(p) => write!(f, "omega({}@{})", p.index, p.name),
            Preradical::Beta(p) => write!(f, "beta({}@{})", p.index, p.name),
            Preradical::Trad { index, .. } => write!(f, "trad(I{index})"),
            Preradical::Soc => write!(f, "soc"),
            Preradical::Rad => write!(f, "rad"),
            Preradical::Zero => write!(f, "zero"),
            Preradical::One => write!(f, "one"),
            Preradical::Join(v) => list(f, "join", v),
            Preradical::Meet(v) => list(f, "meet", v),
            Preradical::Compose(a, b) => write!(f, "comp({a},{b})"),
            Preradical::LeftExact(flt) => write!(f, "lep({})", flt.index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4() -> (Arc<FiniteRing>, Arc<FiniteModule>) {
        let r = FiniteRing::cyclic(4).unwrap();
        let m = FiniteModule::regular(&r).unwrap();
        (r, m)
    }

    #[test]
    fn alpha_of_socle_on_z4() {
        let (_, m) = z4();
        let a = Preradical::alpha(FrozenPair::new("M", &m, 1).unwrap()).unwrap();
        assert_eq!(a.evaluate(&m).unwrap().elements(), vec![0, 2]);
    }

    #[test]
    fn trad_on_z4() {
        let (r, m) = z4();
        let t = Preradical::trad(&r, 1).unwrap();
        assert_eq!(t.evaluate(&m).unwrap().elements(), vec![0, 2]);
    }

    #[test]
    fn reject_of_z2_on_z4() {
        let (_, m) = z4();
        let z2 = m.cyclic(2).unwrap().module;
        let w = Preradical::omega(FrozenPair::new("S", &z2, 0).unwrap()).unwrap();
        assert_eq!(w.evaluate(&m).unwrap().elements(), vec![0, 2]);
    }

    #[test]
    fn non_fully_invariant_leaf_rejected() {
        let z2 = FiniteModule::regular(&FiniteRing::cyclic(2).unwrap()).unwrap();
        let v = FiniteModule::direct_sum(&[z2.clone(), z2]).unwrap().module;
        let line = FrozenPair::new("V", &v, 1).unwrap();
        assert_eq!(Preradical::alpha(line.clone()).unwrap_err(), Error::NotFullyInvariant);
        assert!(Preradical::beta(line).evaluate(&v).is_ok());
    }

    #[test]
    fn ring_mismatch() {
        let (r, _) = z4();
        let other = FiniteModule::regular(&FiniteRing::cyclic(3).unwrap()).unwrap();
        let t = Preradical::trad(&r, 1).unwrap();
        assert_eq!(t.evaluate(&other).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn socle_and_radical() {
        let (_, m) = z4();
        assert_eq!(Preradical::Soc.evaluate(&m).unwrap().elements(), vec![0, 2]);
        assert_eq!(Preradical::Rad.evaluate(&m).unwrap().elements(), vec![0, 2]);
        let m6 = FiniteModule::regular(&FiniteRing::cyclic(6).unwrap()).unwrap();
        assert_eq!(Preradical::Soc.evaluate(&m6).unwrap(), m6.full_submodule());
        assert!(Preradical::Rad.evaluate(&m6).unwrap().is_zero());
    }

    #[test]
    fn filters_of_small_rings() {
        let (r, m) = z4();
        let fs = LinearFilter::enumerate(&r).unwrap();
        assert_eq!(fs.len(), 3);
        let vals: Vec<Vec<usize>> = fs.iter().map(|f| f.evaluate(&m).elements()).collect();
        assert_eq!(vals, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        let f2 = FiniteRing::cyclic(2).unwrap();
        let mr = FiniteRing::matrix(&f2, 2).unwrap();
        assert_eq!(LinearFilter::enumerate(&mr).unwrap().len(), 2);
    }

    #[test]
    fn compose_soc_after_trad() {
        let (r, m) = z4();
        let p = Preradical::compose(Preradical::Soc, Preradical::trad(&r, 2).unwrap());
        assert_eq!(p.depth(), 2);
        assert_eq!(p.evaluate(&m).unwrap().elements(), vec![0, 2]);
        assert_eq!(p.to_string(), "comp(soc,trad(I2))");
    }
}
