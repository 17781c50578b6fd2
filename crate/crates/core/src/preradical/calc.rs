//! Products, universe-relative property flags, comparison, and the
//! idempotent core / radical closure fixpoints.

use super::Preradical;
use crate::error::Result;
use crate::modules::{hom_set, FiniteModule, Submodule};
use crate::universe::Universe;
use serde::Serialize;
use std::sync::Arc;

/// A •_M B = Σ{ f(A) | f : M → B }, returned as a submodule of M.
pub fn product_in(m: &Arc<FiniteModule>, a: &Submodule, b: &Submodule) -> Result<Submodule> {
    m.check_submodule(a)?;
    m.check_submodule(b)?;
    let emb = m.submodule_module(b)?;
    let images: Vec<Submodule> = hom_set(m, &emb.module)?
        .iter()
        .map(|f| f.image(&emb.module, a))
        .collect();
    Ok(emb.push_forward(m, &emb.module.sum_all(&images)))
}

/// Σ{ f(A) | f : A → B }, with A and B viewed as modules. Kept for
/// comparison with [`product_in`]; it is not used by any decider.
pub fn product_hom_ab(m: &Arc<FiniteModule>, a: &Submodule, b: &Submodule) -> Result<Submodule> {
    m.check_submodule(a)?;
    m.check_submodule(b)?;
    let ea = m.submodule_module(a)?;
    let eb = m.submodule_module(b)?;
    let images: Vec<Submodule> = hom_set(&ea.module, &eb.module)?
        .iter()
        .map(|f| f.full_image(&eb.module))
        .collect();
    Ok(eb.push_forward(m, &eb.module.sum_all(&images)))
}

/// Properties of a preradical, each checked on every module of a universe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PropertyFlags {
    pub idempotent: bool,
    pub radical: bool,
    pub left_exact: bool,
    pub t_radical: bool,
}

pub fn property_flags(sigma: &Preradical, universe: &Universe) -> Result<PropertyFlags> {
    let regular = FiniteModule::regular(universe.ring())?;
    let ideal = sigma.evaluate(&regular)?;
    let mut flags = PropertyFlags {
        idempotent: true,
        radical: true,
        left_exact: true,
        t_radical: true,
    };
    for u in universe.iter() {
        let s = sigma.evaluate(u)?;
        if flags.idempotent {
            let emb = u.submodule_module(&s)?;
            flags.idempotent = emb.push_forward(u, &sigma.evaluate(&emb.module)?) == s;
        }
        if flags.radical {
            let q = u.quotient(&s)?;
            flags.radical = sigma.evaluate(&q.module)?.is_zero();
        }
        if flags.left_exact {
            for n in u.submodules() {
                let emb = u.submodule_module(n)?;
                if emb.push_forward(u, &sigma.evaluate(&emb.module)?) != s.meet(n) {
                    flags.left_exact = false;
                    break;
                }
            }
        }
        if flags.t_radical {
            flags.t_radical = u.ideal_times(ideal.carrier(), &u.full_submodule()) == s;
        }
    }
    Ok(flags)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PreradicalOrder {
    /// σ ⪯ τ and not τ ⪯ σ.
    Less,
    Greater,
    Equal,
    Incomparable,
}

/// Pointwise comparison of σ and τ on every universe module.
pub fn compare(sigma: &Preradical, tau: &Preradical, universe: &Universe) -> Result<PreradicalOrder> {
    let (mut le, mut ge) = (true, true);
    for u in universe.iter() {
        let a = sigma.evaluate(u)?;
        let b = tau.evaluate(u)?;
        le &= a.is_subset(&b);
        ge &= b.is_subset(&a);
    }
    Ok(match (le, ge) {
        (true, true) => PreradicalOrder::Equal,
        (true, false) => PreradicalOrder::Less,
        (false, true) => PreradicalOrder::Greater,
        (false, false) => PreradicalOrder::Incomparable,
    })
}

/// The value at U of the largest idempotent preradical below σ:
/// the limit of U ⊇ σ(U) ⊇ σ(σ(U)) ⊇ ….
pub fn idempotent_core(sigma: &Preradical, u: &Arc<FiniteModule>) -> Result<Submodule> {
    let mut k = u.full_submodule();
    loop {
        let emb = u.submodule_module(&k)?;
        let next = emb.push_forward(u, &sigma.evaluate(&emb.module)?);
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}

/// The value at U of the least radical above σ: K₀ = σ(U) and K_{n+1} the
/// preimage of σ(U/K_n), until stable.
pub fn radical_closure(sigma: &Preradical, u: &Arc<FiniteModule>) -> Result<Submodule> {
    let mut k = sigma.evaluate(u)?;
    loop {
        let q = u.quotient(&k)?;
        let next = q.pull_back(u, &sigma.evaluate(&q.module)?);
        if next == k {
            return Ok(k);
        }
        k = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preradical::FrozenPair;
    use crate::ring::FiniteRing;
    use crate::universe::UniverseParams;

    fn z4() -> (Arc<FiniteRing>, Arc<FiniteModule>, Universe) {
        let r = FiniteRing::cyclic(4).unwrap();
        let m = FiniteModule::regular(&r).unwrap();
        let u = Universe::generate(&r, UniverseParams::default()).unwrap();
        (r, m, u)
    }

    #[test]
    fn products_on_z4() {
        let (_, m, _) = z4();
        let half = m.submodule([0, 2]).unwrap();
        assert!(product_in(&m, &half, &half).unwrap().is_zero());
        // The literal Hom(A, B) form gives {0,2} here instead.
        assert_eq!(product_hom_ab(&m, &half, &half).unwrap(), half);
        let full = m.full_submodule();
        assert_eq!(product_in(&m, &full, &full).unwrap(), full);
    }

    #[test]
    fn products_on_plane() {
        let s = FiniteModule::regular(&FiniteRing::cyclic(2).unwrap()).unwrap();
        let v = FiniteModule::direct_sum(&[s.clone(), s]).unwrap().module;
        for a in v.submodules().iter().filter(|a| !a.is_zero()) {
            for b in v.submodules().iter().filter(|b| !b.is_zero()) {
                assert!(!product_in(&v, a, b).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn flags() {
        let (r, m, u) = z4();
        let reject = Preradical::reject("M", &m);
        assert!(property_flags(&reject, &u).unwrap().radical);
        let soc = property_flags(&Preradical::Soc, &u).unwrap();
        assert!(soc.idempotent && soc.left_exact);
        assert!(!soc.radical);
        for i in 0..3 {
            assert!(property_flags(&Preradical::trad(&r, i).unwrap(), &u).unwrap().t_radical);
        }
    }

    #[test]
    fn ordering() {
        let (_, m, u) = z4();
        for s in [Preradical::Soc, Preradical::Rad, Preradical::trace("M", &m)] {
            assert!(matches!(
                compare(&Preradical::Zero, &s, &u).unwrap(),
                PreradicalOrder::Less | PreradicalOrder::Equal
            ));
            assert!(matches!(
                compare(&s, &Preradical::One, &u).unwrap(),
                PreradicalOrder::Less | PreradicalOrder::Equal
            ));
        }
        let pair = FrozenPair::new("M", &m, 1).unwrap();
        let a = Preradical::alpha(pair.clone()).unwrap();
        let w = Preradical::omega(pair).unwrap();
        assert_eq!(compare(&a, &w, &u).unwrap(), PreradicalOrder::Less);
        assert_eq!(a.evaluate(&m).unwrap(), w.evaluate(&m).unwrap());
    }

    #[test]
    fn fixpoints() {
        let (_, m, _) = z4();
        assert_eq!(radical_closure(&Preradical::Rad, &m).unwrap().elements(), vec![0, 2]);
        assert_eq!(idempotent_core(&Preradical::Soc, &m).unwrap().elements(), vec![0, 2]);
        // Rad is not idempotent on Z4: rad(rad Z4) = 0.
        assert!(idempotent_core(&Preradical::Rad, &m).unwrap().is_zero());
        assert!(idempotent_core(&Preradical::Zero, &m).unwrap().is_zero());
        assert!(radical_closure(&Preradical::Zero, &m).unwrap().is_zero());
    }
}
