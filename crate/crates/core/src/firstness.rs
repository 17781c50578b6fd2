//! Deciders for first-type properties of finite modules.
//!
//! Where several characterizations are available each one is computed on its
//! own and disagreement is reported as [`Error::Inconsistency`].

use crate::error::{Error, Result};
use crate::modules::{cogenerates, exists_nonzero_hom, hom_set, FiniteModule, Submodule, SubmoduleLattice};
use crate::preradical::{product_in, FrozenPair, Preradical};
use crate::ring::Sidedness;
use serde::Serialize;
use std::collections::HashSet;
use std::sync::Arc;

/// A reason a module fails some notion, re-checkable by hand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Every map M → Ry kills x.
    Elements { x: usize, y: usize },
    /// A nonzero submodule that does not cogenerate M.
    NotCogenerating { submodule: Vec<usize> },
    /// A •_M B = 0 for nonzero A, B.
    ZeroProduct { a: Vec<usize>, b: Vec<usize> },
    /// I·N = 0 while I·M ≠ 0, for the two-sided ideal with index `ideal`.
    Ideal { ideal: usize, ideal_elements: Vec<usize>, submodule: Vec<usize> },
    /// Hom(N, K) = 0 for nonzero submodules N, K.
    NoMap { from: Vec<usize>, to: Vec<usize> },
    /// A nonzero fully invariant submodule that is not essential.
    NotEssential { submodule: Vec<usize> },
    /// A nonzero submodule receiving no nonzero map from M.
    NotRetract { submodule: Vec<usize> },
    /// Nonzero endomorphisms a, b with a·End(M)·b = 0, as tables.
    EndomorphismPair { a: Vec<usize>, b: Vec<usize> },
    /// σ(K) = 0 for a nonzero K, with σ(M) ≠ 0 (first) or any σ(M) (fully first).
    Preradical { preradical: String, submodule: Vec<usize> },
}

fn nonzero_submodules(m: &FiniteModule) -> impl Iterator<Item = &Submodule> {
    m.submodules().iter().filter(|s| !s.is_zero())
}

fn require_nonzero(m: &FiniteModule) -> Result<()> {
    if m.is_zero_module() {
        Err(Error::ZeroModule)
    } else {
        Ok(())
    }
}

/// The four characterizations of BJKN-primeness and the common verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BjknPrimeCheck {
    pub verdict: bool,
    pub by_submodules: bool,
    pub by_cyclic_submodules: bool,
    pub by_elements: bool,
    pub by_products: bool,
    pub witnesses: Vec<Witness>,
}

/// Runs all four characterizations of BJKN-primeness:
/// every nonzero submodule cogenerates M; every nonzero cyclic submodule
/// does; for all nonzero x, y some map M → Ry does not kill x; and
/// A •_M B ≠ 0 for all nonzero submodules A, B.
pub fn bjkn_prime_check(m: &Arc<FiniteModule>) -> Result<BjknPrimeCheck> {
    require_nonzero(m)?;
    let mut witnesses = Vec::new();

    let mut by_submodules = true;
    for n in nonzero_submodules(m) {
        let sub = m.submodule_module(n)?.module;
        if !cogenerates(&sub, m)? {
            by_submodules = false;
            witnesses.push(Witness::NotCogenerating { submodule: n.elements() });
            break;
        }
    }

    let mut cyclic: Vec<(usize, Submodule)> = Vec::new();
    let mut seen = HashSet::new();
    for y in m.elements().filter(|&y| y != m.zero()) {
        let c = m.closure([y]);
        if seen.insert(c.clone()) {
            cyclic.push((y, c));
        }
    }
    let mut by_cyclic_submodules = true;
    for (_, c) in &cyclic {
        let sub = m.submodule_module(c)?.module;
        if !cogenerates(&sub, m)? {
            by_cyclic_submodules = false;
            break;
        }
    }

    let mut by_elements = true;
    'outer: for (y, c) in &cyclic {
        let sub = m.submodule_module(c)?.module;
        let homs = hom_set(m, &sub)?;
        for x in m.elements().filter(|&x| x != m.zero()) {
            if homs.iter().all(|f| f.apply(x) == sub.zero()) {
                by_elements = false;
                // Report the least y generating this cyclic submodule.
                witnesses.push(Witness::Elements { x, y: *y });
                break 'outer;
            }
        }
    }

    let mut by_products = true;
    'pairs: for a in nonzero_submodules(m) {
        for b in nonzero_submodules(m) {
            if product_in(m, a, b)?.is_zero() {
                by_products = false;
                witnesses.push(Witness::ZeroProduct {
                    a: a.elements(),
                    b: b.elements(),
                });
                break 'pairs;
            }
        }
    }

    let all = [by_submodules, by_cyclic_submodules, by_elements, by_products];
    if all.iter().any(|&v| v != by_submodules) {
        return Err(Error::inconsistency(
            "bjkn_prime",
            format!("characterizations disagree on {m}: {all:?}"),
        ));
    }
    Ok(BjknPrimeCheck {
        verdict: by_submodules,
        by_submodules,
        by_cyclic_submodules,
        by_elements,
        by_products,
        witnesses,
    })
}

pub fn is_bjkn_prime(m: &Arc<FiniteModule>) -> Result<bool> {
    Ok(bjkn_prime_check(m)?.verdict)
}

/// Primeness by annihilators and by t-radicals, which must agree. Returns
/// the verdict and, when negative, the first (ideal, submodule) witness.
pub fn prime_module_check(m: &Arc<FiniteModule>) -> Result<(bool, Option<Witness>)> {
    require_nonzero(m)?;
    let ann_m = m.annihilator(&m.full_submodule());
    let by_annihilators = nonzero_submodules(m).all(|n| m.annihilator(n) == ann_m);

    let ring = m.ring();
    let mut witness = None;
    'scan: for (k, ideal) in ring.ideals(Sidedness::TwoSided).iter().enumerate() {
        let trad = Preradical::trad(ring, k)?;
        if trad.evaluate(m)?.is_zero() {
            continue;
        }
        for n in nonzero_submodules(m) {
            let sub = m.submodule_module(n)?.module;
            if trad.evaluate(&sub)?.is_zero() {
                witness = Some(Witness::Ideal {
                    ideal: k,
                    ideal_elements: ideal.elements(),
                    submodule: n.elements(),
                });
                break 'scan;
            }
        }
    }
    let by_trad = witness.is_none();
    if by_annihilators != by_trad {
        return Err(Error::inconsistency(
            "prime_module",
            format!("annihilator route says {by_annihilators}, t-radical route says {by_trad} on {m}"),
        ));
    }
    Ok((by_trad, witness))
}

pub fn is_prime_module(m: &Arc<FiniteModule>) -> Result<bool> {
    Ok(prime_module_check(m)?.0)
}

/// For all nonzero N, K ≤ M some nonzero map N → K exists. The family of
/// traces tr_N, the socle and the join of the traces is checked as well and
/// must give the same answer.
pub fn rpid_first_check(m: &Arc<FiniteModule>) -> Result<(bool, Option<Witness>)> {
    require_nonzero(m)?;
    let subs: Vec<(Submodule, Arc<FiniteModule>)> = nonzero_submodules(m)
        .map(|n| Ok((n.clone(), m.submodule_module(n)?.module)))
        .collect::<Result<_>>()?;
    let mut witness = None;
    'pairs: for (n, nm) in &subs {
        for (k, km) in &subs {
            if !exists_nonzero_hom(nm, km)? {
                witness = Some(Witness::NoMap {
                    from: n.elements(),
                    to: k.elements(),
                });
                break 'pairs;
            }
        }
    }
    let criterion = witness.is_none();

    let mut family: Vec<Preradical> = subs
        .iter()
        .enumerate()
        .map(|(i, (_, nm))| Preradical::trace(format!("N{i}"), nm))
        .collect();
    family.push(Preradical::Join(family.clone()));
    family.push(Preradical::Soc);
    let by_family = a_first_witness(m, &family)?.is_none();
    if criterion != by_family {
        return Err(Error::inconsistency(
            "rpid_first",
            format!("criterion says {criterion}, trace family says {by_family} on {m}"),
        ));
    }
    Ok((criterion, witness))
}

pub fn is_rpid_first(m: &Arc<FiniteModule>) -> Result<bool> {
    Ok(rpid_first_check(m)?.0)
}

/// Zero-ness of σ(K) for each family member and each nonzero K ≤ M, and of σ(M).
struct ZeroTable {
    /// `on_sub[i][j]`: σ_i(K_j) = 0 over the nonzero submodules K_j.
    on_sub: Vec<Vec<bool>>,
    on_m: Vec<bool>,
    subs: Vec<Submodule>,
}

fn zero_table(m: &Arc<FiniteModule>, family: &[Preradical]) -> Result<ZeroTable> {
    let subs: Vec<Submodule> = nonzero_submodules(m).cloned().collect();
    let mods = subs
        .iter()
        .map(|s| Ok(m.submodule_module(s)?.module))
        .collect::<Result<Vec<_>>>()?;
    let mut on_sub = Vec::with_capacity(family.len());
    let mut on_m = Vec::with_capacity(family.len());
    for sigma in family {
        on_sub.push(
            mods.iter()
                .map(|k| Ok(sigma.evaluate(k)?.is_zero()))
                .collect::<Result<Vec<_>>>()?,
        );
        on_m.push(sigma.evaluate(m)?.is_zero());
    }
    Ok(ZeroTable { on_sub, on_m, subs })
}

/// The first (σ, K) with σ(K) = 0 but σ(M) ≠ 0.
pub fn a_first_witness(m: &Arc<FiniteModule>, family: &[Preradical]) -> Result<Option<Witness>> {
    require_nonzero(m)?;
    let t = zero_table(m, family)?;
    for (i, sigma) in family.iter().enumerate() {
        if t.on_m[i] {
            continue;
        }
        if let Some(j) = t.on_sub[i].iter().position(|&z| z) {
            return Ok(Some(Witness::Preradical {
                preradical: sigma.to_string(),
                submodule: t.subs[j].elements(),
            }));
        }
    }
    Ok(None)
}

/// 0 ≠ M and, for all σ in the family and 0 ≠ K ≤ M, σ(K) = 0 implies σ(M) = 0.
#[allow(non_snake_case)]
pub fn is_A_first(m: &Arc<FiniteModule>, family: &[Preradical]) -> Result<bool> {
    Ok(a_first_witness(m, family)?.is_none())
}

/// σ(K) ≠ 0 for all σ in the family and all 0 ≠ K ≤ M.
#[allow(non_snake_case)]
pub fn is_A_fully_first(m: &Arc<FiniteModule>, family: &[Preradical]) -> Result<bool> {
    let t = zero_table(m, family)?;
    Ok(t.on_sub.iter().all(|row| row.iter().all(|&z| !z)))
}

/// Every nonzero fully invariant submodule is essential.
pub fn diuniform_check(m: &Arc<FiniteModule>) -> Result<(bool, Option<Witness>)> {
    require_nonzero(m)?;
    let lattice = SubmoduleLattice::new(m);
    for i in lattice.fully_invariant() {
        let n = lattice.get(i);
        if n.is_zero() {
            continue;
        }
        if nonzero_submodules(m).any(|k| n.meet(k).is_zero()) {
            return Ok((false, Some(Witness::NotEssential { submodule: n.elements() })));
        }
    }
    Ok((true, None))
}

pub fn is_diuniform(m: &Arc<FiniteModule>) -> Result<bool> {
    Ok(diuniform_check(m)?.0)
}

/// Every nonzero submodule receives a nonzero map from M.
pub fn retractable_check(m: &Arc<FiniteModule>) -> Result<(bool, Option<Witness>)> {
    require_nonzero(m)?;
    for n in nonzero_submodules(m) {
        let sub = m.submodule_module(n)?.module;
        if !exists_nonzero_hom(m, &sub)? {
            return Ok((false, Some(Witness::NotRetract { submodule: n.elements() })));
        }
    }
    Ok((true, None))
}

pub fn is_retractable(m: &Arc<FiniteModule>) -> Result<bool> {
    Ok(retractable_check(m)?.0)
}

/// Whether End(M) is a prime ring.
///
/// a·End(M)·b = 0 exactly when a kills the fully invariant submodule
/// generated by b(M), so only one such submodule per image is examined.
pub fn endomorphism_ring_prime_check(m: &Arc<FiniteModule>) -> Result<(bool, Option<Witness>)> {
    require_nonzero(m)?;
    let ends = m.endomorphisms();
    let mut seen = HashSet::new();
    for b in ends.iter().filter(|b| !b.is_zero(m)) {
        let image = b.full_image(m);
        if !seen.insert(image.clone()) {
            continue;
        }
        let generated = m.sum_all(&ends.iter().map(|s| s.image(m, &image)).collect::<Vec<_>>());
        if let Some(a) = ends
            .iter()
            .find(|a| !a.is_zero(m) && generated.iter().all(|x| a.apply(x) == m.zero()))
        {
            return Ok((
                false,
                Some(Witness::EndomorphismPair {
                    a: a.table().to_vec(),
                    b: b.table().to_vec(),
                }),
            ));
        }
    }
    Ok((true, None))
}

pub fn is_endomorphism_ring_prime(m: &Arc<FiniteModule>) -> Result<bool> {
    Ok(endomorphism_ring_prime_check(m)?.0)
}

/// Membership of M in 𝕋, 𝔽, ℙ (first or zero) and 𝒫 (fully first) of a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub in_t: bool,
    pub in_f: bool,
    pub in_p: bool,
    pub in_script_p: bool,
}

/// Class membership for a finite family. The per-member classes are also
/// computed, and the identities ℙ_𝒜 = ⋂ ℙ_σ, 𝒫_𝒜 = ⋂ 𝒫_σ,
/// ℙ_σ = 𝒫_σ ∪ 𝔽_σ, 𝒫_𝒜 ⊆ ℙ_𝒜 and 𝔽_𝒜 ⊆ ℙ_𝒜 are asserted.
pub fn class_membership(m: &Arc<FiniteModule>, family: &[Preradical]) -> Result<ClassMembership> {
    let t = zero_table(m, family)?;
    let zero_m = m.is_zero_module();
    let mut in_t = true;
    for sigma in family {
        in_t &= sigma.evaluate(m)? == m.full_submodule();
    }
    let in_f = t.on_m.iter().all(|&z| z);
    let in_script_p = t.on_sub.iter().flatten().all(|&z| !z);
    let in_p = zero_m
        || (0..family.len()).all(|i| t.on_m[i] || t.on_sub[i].iter().all(|&z| !z));

    let member_p: Vec<bool> = (0..family.len())
        .map(|i| zero_m || t.on_sub[i].iter().all(|&z| !z || t.on_m[i]))
        .collect();
    let member_sp: Vec<bool> = (0..family.len()).map(|i| t.on_sub[i].iter().all(|&z| !z)).collect();
    let fail = |what: &str| Err(Error::inconsistency("class_membership", format!("{what} fails on {m}")));
    if in_p != member_p.iter().all(|&b| b) {
        return fail("ℙ_𝒜 = ⋂ ℙ_σ");
    }
    if in_script_p != member_sp.iter().all(|&b| b) {
        return fail("𝒫_𝒜 = ⋂ 𝒫_σ");
    }
    for i in 0..family.len() {
        if member_p[i] != (member_sp[i] || t.on_m[i]) {
            return fail("ℙ_σ = 𝒫_σ ∪ 𝔽_σ");
        }
    }
    if (in_script_p || in_f) && !in_p {
        return fail("𝒫_𝒜 ∪ 𝔽_𝒜 ⊆ ℙ_𝒜");
    }
    Ok(ClassMembership {
        in_t,
        in_f,
        in_p,
        in_script_p,
    })
}

/// The family {α_S^S : S simple} over the ring of `m`.
pub fn simple_traces(ring: &Arc<crate::ring::FiniteRing>) -> Result<Vec<Preradical>> {
    Ok(crate::modules::simple_modules(ring)?
        .iter()
        .enumerate()
        .map(|(i, s)| Preradical::Alpha(FrozenPair::whole(format!("S{i}"), s)))
        .collect())
}

/// All verdicts for one module with witnesses for the negative ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstnessReport {
    pub module: String,
    pub order: usize,
    pub bjkn_prime: bool,
    pub prime: bool,
    pub rpid_first: bool,
    pub diuniform: bool,
    pub retractable: bool,
    pub endomorphism_ring_prime: bool,
    pub witnesses: Vec<(String, Witness)>,
}

pub fn firstness_report(m: &Arc<FiniteModule>) -> Result<FirstnessReport> {
    let bjkn = bjkn_prime_check(m)?;
    let mut witnesses: Vec<(String, Witness)> =
        bjkn.witnesses.iter().map(|w| ("bjkn_prime".to_string(), w.clone())).collect();
    let mut take = |name: &str, (v, w): (bool, Option<Witness>)| {
        if let Some(w) = w {
            witnesses.push((name.to_string(), w));
        }
        v
    };
    let prime = take("prime", prime_module_check(m)?);
    let rpid_first = take("rpid_first", rpid_first_check(m)?);
    let diuniform = take("diuniform", diuniform_check(m)?);
    let retractable = take("retractable", retractable_check(m)?);
    let endomorphism_ring_prime = take("endomorphism_ring_prime", endomorphism_ring_prime_check(m)?);
    Ok(FirstnessReport {
        module: m.to_string(),
        order: m.order(),
        bjkn_prime: bjkn.verdict,
        prime,
        rpid_first,
        diuniform,
        retractable,
        endomorphism_ring_prime,
        witnesses,
    })
}
