//! Ring-level classification and replay of the ring-level theorems on a
//! finite universe.
//!
//! Every "all modules" clause is quantified over the universe only, so a
//! verdict says the statement is consistent at universe scale, nothing more.

use crate::error::{Error, Result};
use crate::firstness::{a_first_witness, bjkn_prime_check, class_membership, prime_module_check, Witness};
use crate::modules::{
    are_isomorphic, exists_nonzero_hom, injectivity_witness, is_injective, lattice_predicates, simple_modules,
    structural_predicates, BaerWitness, FiniteModule, Submodule,
};
use crate::preradical::{property_flags, LinearFilter, Preradical};
use crate::ring::{FiniteRing, Sidedness};
use crate::universe::{Universe, UniverseParams};
use serde::Serialize;
use std::sync::Arc;

/// Evidence attached to a negative flag or a theorem side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A two-sided ideal other than 0 and R.
    ProperIdeal { elements: Vec<usize> },
    /// The socle of the regular module, when it is not everything.
    RegularSocle { socle: Vec<usize> },
    NonIsomorphicSimples { first: String, second: String },
    ZeroSocle { module: String },
    NotInjective { simple: String, baer: BaerWitness },
    ZeroHom { from: String, to: String },
    Module { module: String, witness: Witness },
    /// S simple and essential in an injective E, with S + K = E for K ≠ E.
    NotSuperfluous { module: String, simple: Vec<usize>, complement: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RingFlags {
    pub is_simple: bool,
    pub is_semisimple: bool,
    pub is_homogeneous_semisimple: bool,
    pub is_left_local: bool,
    pub is_left_semiartinian_on_universe: bool,
    pub is_v_ring: bool,
    pub is_bkn_on_universe: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingClassification {
    pub ring: String,
    pub flags: RingFlags,
    /// (flag name, evidence) for every false flag.
    pub witnesses: Vec<(String, Evidence)>,
}

fn check_universe(ring: &Arc<FiniteRing>, universe: &Universe) -> Result<()> {
    if ring.as_ref() == universe.ring().as_ref() {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

pub fn classify_ring(ring: &Arc<FiniteRing>, universe: &Universe) -> Result<RingClassification> {
    check_universe(ring, universe)?;
    let mut witnesses = Vec::new();
    let mut note = |flag: &str, e: Evidence| witnesses.push((flag.to_string(), e));

    let two_sided = ring.ideals(Sidedness::TwoSided);
    let is_simple = two_sided.len() == 2;
    if !is_simple {
        note("is_simple", Evidence::ProperIdeal { elements: two_sided[1].elements() });
    }

    let regular = FiniteModule::regular(ring)?;
    let structure = structural_predicates(&regular)?;
    let simples = simple_modules(ring)?;
    let is_semisimple = structure.is_semisimple;
    if !is_semisimple {
        note("is_semisimple", Evidence::RegularSocle { socle: structure.socle.elements() });
    }
    let is_homogeneous_semisimple = is_semisimple && simples.len() == 1;
    if is_semisimple && !is_homogeneous_semisimple {
        note(
            "is_homogeneous_semisimple",
            Evidence::NonIsomorphicSimples {
                first: simples[0].to_string(),
                second: simples[1].to_string(),
            },
        );
    }

    let universe_simples: Vec<(&str, &Arc<FiniteModule>)> = universe
        .modules()
        .iter()
        .filter(|m| m.module.submodules().len() == 2)
        .map(|m| (m.label.as_str(), &m.module))
        .collect();
    let mut is_left_local = true;
    if let Some((first, a)) = universe_simples.first() {
        if let Some((second, _)) = universe_simples[1..].iter().find(|(_, b)| !are_isomorphic(a, b)) {
            is_left_local = false;
            note(
                "is_left_local",
                Evidence::NonIsomorphicSimples {
                    first: first.to_string(),
                    second: second.to_string(),
                },
            );
        }
    }

    let mut is_left_semiartinian_on_universe = true;
    for m in universe.modules() {
        if Preradical::Soc.evaluate(&m.module)?.is_zero() {
            is_left_semiartinian_on_universe = false;
            note("is_left_semiartinian_on_universe", Evidence::ZeroSocle { module: m.label.clone() });
            break;
        }
    }

    let mut is_v_ring = true;
    for s in &simples {
        if let Some(baer) = injectivity_witness(s)? {
            is_v_ring = false;
            note("is_v_ring", Evidence::NotInjective { simple: s.to_string(), baer });
            break;
        }
    }

    let mut is_bkn_on_universe = true;
    'pairs: for a in universe.modules() {
        for b in universe.modules() {
            if !exists_nonzero_hom(&a.module, &b.module)? {
                is_bkn_on_universe = false;
                note(
                    "is_bkn_on_universe",
                    Evidence::ZeroHom {
                        from: a.label.clone(),
                        to: b.label.clone(),
                    },
                );
                break 'pairs;
            }
        }
    }

    Ok(RingClassification {
        ring: ring.to_string(),
        flags: RingFlags {
            is_simple,
            is_semisimple,
            is_homogeneous_semisimple,
            is_left_local,
            is_left_semiartinian_on_universe,
            is_v_ring,
            is_bkn_on_universe,
        },
        witnesses,
    })
}

/// The left exact preradicals of `ring`, one per linear filter of left ideals.
pub fn enumerate_lep(ring: &Arc<FiniteRing>) -> Result<Vec<Preradical>> {
    Ok(LinearFilter::enumerate(ring)?
        .into_iter()
        .map(|f| Preradical::LeftExact(Arc::new(f)))
        .collect())
}

/// Identifiers accepted by [`verify_theorem`].
pub const THEOREM_IDS: [&str; 7] = ["T15", "T14", "T14.3", "P14.1", "Perror1", "P12", "P8.5"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StatementKind {
    Equivalence,
    Implication,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Side {
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    pub theorem: String,
    pub ring: String,
    pub universe: Option<UniverseParams>,
    pub universe_size: usize,
    pub kind: StatementKind,
    /// For implications, `sides[0]` is the hypothesis.
    pub sides: Vec<Side>,
    /// Whether the sides are related as the statement says.
    pub consistent: bool,
    pub witnesses: Vec<(String, Evidence)>,
    pub notes: Vec<String>,
}

struct Builder {
    sides: Vec<Side>,
    witnesses: Vec<(String, Evidence)>,
    notes: Vec<String>,
}

impl Builder {
    fn new() -> Self {
        Builder {
            sides: Vec::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn side(&mut self, statement: &str, holds: bool) {
        self.sides.push(Side {
            statement: statement.to_string(),
            holds,
        });
    }

    fn witness(&mut self, side: &str, e: Evidence) {
        self.witnesses.push((side.to_string(), e));
    }

    fn flag(&mut self, c: &RingClassification, side: &str, flags: &[&str]) {
        for (name, e) in &c.witnesses {
            if flags.contains(&name.as_str()) {
                self.witness(side, e.clone());
            }
        }
    }
}

/// The first universe module failing `test`, with its witness.
fn first_failure(
    universe: &Universe,
    mut test: impl FnMut(&Arc<FiniteModule>) -> Result<Option<Witness>>,
) -> Result<Option<Evidence>> {
    for m in universe.modules() {
        if let Some(w) = test(&m.module)? {
            return Ok(Some(Evidence::Module {
                module: m.label.clone(),
                witness: w,
            }));
        }
    }
    Ok(None)
}

/// Replays the named statement on `universe`.
pub fn verify_theorem(id: &str, ring: &Arc<FiniteRing>, universe: &Universe) -> Result<TheoremVerdict> {
    check_universe(ring, universe)?;
    let mut b = Builder::new();
    let kind = match id {
        "T15" => {
            let c = classify_ring(ring, universe)?;
            b.side("R is a simple ring", c.flags.is_simple);
            b.flag(&c, "R is a simple ring", &["is_simple"]);
            let fail = first_failure(universe, |m| Ok(prime_module_check(m)?.1))?;
            b.side("every universe module is prime", fail.is_none());
            if let Some(e) = fail {
                b.witness("every universe module is prime", e);
            }
            StatementKind::Equivalence
        }
        "T14" => {
            let c = classify_ring(ring, universe)?;
            b.side(
                "R is left semiartinian and left local",
                c.flags.is_left_semiartinian_on_universe && c.flags.is_left_local,
            );
            b.flag(
                &c,
                "R is left semiartinian and left local",
                &["is_left_semiartinian_on_universe", "is_left_local"],
            );
            let lep = enumerate_lep(ring)?;
            for sigma in &lep {
                if !property_flags(sigma, universe)?.left_exact {
                    return Err(Error::inconsistency(
                        "T14",
                        format!("{sigma} is not left exact on the universe"),
                    ));
                }
            }
            b.notes.push(format!("{} left exact preradicals from linear filters", lep.len()));
            let fail = first_failure(universe, |m| a_first_witness(m, &lep))?;
            b.side("every universe module is R-lep-first", fail.is_none());
            if let Some(e) = fail {
                b.witness("every universe module is R-lep-first", e);
            }
            StatementKind::Equivalence
        }
        "T14.3" => {
            let c = classify_ring(ring, universe)?;
            let s1 = "R is a left semiartinian left local V-ring";
            b.side(
                s1,
                c.flags.is_left_semiartinian_on_universe && c.flags.is_left_local && c.flags.is_v_ring,
            );
            b.flag(&c, s1, &["is_left_semiartinian_on_universe", "is_left_local", "is_v_ring"]);
            let s2 = "every universe module is BJKN-prime";
            let fail = first_failure(universe, |m| {
                let check = bjkn_prime_check(m)?;
                Ok((!check.verdict).then(|| check.witnesses[0].clone()))
            })?;
            b.side(s2, fail.is_none());
            if let Some(e) = fail {
                b.witness(s2, e);
            }
            let s3 = "R is semisimple homogeneous";
            b.side(s3, c.flags.is_homogeneous_semisimple);
            b.flag(&c, s3, &["is_semisimple", "is_homogeneous_semisimple"]);
            StatementKind::Equivalence
        }
        "P14.1" => {
            let pairs = essential_simple_pairs(universe)?;
            b.notes.push(format!("{} (simple S, injective E ⊋ S) pairs in the universe", pairs.len()));
            let refs: Vec<(&str, &Arc<FiniteModule>, &Submodule)> =
                pairs.iter().map(|(l, e, s)| (l.as_str(), e, s)).collect();
            superfluous_sides(&mut b, &refs)?;
            StatementKind::Implication
        }
        "Perror1" => {
            let s1 = "every universe module is BJKN-prime";
            let fail = first_failure(universe, |m| {
                let check = bjkn_prime_check(m)?;
                Ok((!check.verdict).then(|| check.witnesses[0].clone()))
            })?;
            b.side(s1, fail.is_none());
            if let Some(e) = fail {
                b.witness(s1, e);
            }
            let c = classify_ring(ring, universe)?;
            b.side("R is BKN on the universe", c.flags.is_bkn_on_universe);
            b.flag(&c, "R is BKN on the universe", &["is_bkn_on_universe"]);
            if !b.sides[0].holds && b.sides[1].holds {
                b.notes.push("converse fails here: BKN on the universe but not every module is BJKN-prime".into());
            }
            StatementKind::Implication
        }
        "P12" | "P8.5" => {
            let soc = [Preradical::Soc];
            let mut fully = None;
            let mut first = None;
            for m in universe.modules() {
                let cm = class_membership(&m.module, &soc)?;
                if !cm.in_script_p && fully.is_none() {
                    fully = Some(m.label.clone());
                }
                if !cm.in_p && first.is_none() {
                    first = Some(m.label.clone());
                }
            }
            let s_fully = "every universe module is soc-fully first";
            b.side(s_fully, fully.is_none());
            if let Some(l) = fully {
                b.witness(s_fully, Evidence::ZeroSocle { module: l });
            }
            if id == "P12" {
                let s_first = "every universe module is soc-first";
                b.side(s_first, first.is_none());
                if let Some(l) = first {
                    b.witness(s_first, Evidence::ZeroSocle { module: l });
                }
            } else {
                let c = classify_ring(ring, universe)?;
                b.side("R is left semiartinian on the universe", c.flags.is_left_semiartinian_on_universe);
                b.flag(&c, "R is left semiartinian on the universe", &["is_left_semiartinian_on_universe"]);
            }
            StatementKind::Equivalence
        }
        other => return Err(Error::UnknownTheorem(other.to_string())),
    };
    let consistent = match kind {
        StatementKind::Equivalence => b.sides.iter().all(|s| s.holds == b.sides[0].holds),
        StatementKind::Implication => !b.sides[0].holds || b.sides[1].holds,
    };
    Ok(TheoremVerdict {
        theorem: id.to_string(),
        ring: ring.to_string(),
        universe: universe.params(),
        universe_size: universe.len(),
        kind,
        sides: b.sides,
        consistent,
        witnesses: b.witnesses,
        notes: b.notes,
    })
}

/// Every (E, S) in the universe with E injective and S a simple essential
/// submodule strictly inside E.
fn essential_simple_pairs(universe: &Universe) -> Result<Vec<(String, Arc<FiniteModule>, Submodule)>> {
    let mut out = Vec::new();
    for m in universe.modules() {
        let e = &m.module;
        if !is_injective(e)? {
            continue;
        }
        for s in e.submodules() {
            if s.is_zero() || *s == e.full_submodule() {
                continue;
            }
            let p = lattice_predicates(s, e)?;
            if p.is_atom && p.is_essential {
                out.push((m.label.clone(), Arc::clone(e), s.clone()));
            }
        }
    }
    Ok(out)
}

fn superfluous_sides(b: &mut Builder, pairs: &[(&str, &Arc<FiniteModule>, &Submodule)]) -> Result<()> {
    let mut all_superfluous = true;
    for (label, e, s) in pairs {
        if !lattice_predicates(s, e)?.is_superfluous {
            all_superfluous = false;
            let full = e.full_submodule();
            let k = e
                .submodules()
                .iter()
                .find(|k| **k != full && e.sum(s, k) == full)
                .expect("not superfluous means a proper complement exists");
            b.witness(
                "S is superfluous in E",
                Evidence::NotSuperfluous {
                    module: label.to_string(),
                    simple: s.elements(),
                    complement: k.elements(),
                },
            );
            break;
        }
    }
    b.side("S simple, essential and proper in an injective E", true);
    b.side("S is superfluous in E", all_superfluous);
    Ok(())
}

/// Replays the superfluity statement on explicit (E, S) pairs. E must be
/// injective and S a simple essential proper submodule of E.
pub fn verify_superfluous_pairs(pairs: &[(Arc<FiniteModule>, Submodule)]) -> Result<TheoremVerdict> {
    let ring = match pairs.first() {
        Some((e, _)) => Arc::clone(e.ring()),
        None => return Err(Error::InvalidArgument("no pairs supplied".into())),
    };
    let mut labelled = Vec::new();
    for (i, (e, s)) in pairs.iter().enumerate() {
        e.check_submodule(s)?;
        if let Some(w) = injectivity_witness(e)? {
            return Err(Error::NotInjective(format!("{e}: map on left ideal {:?} does not extend", w.ideal)));
        }
        let p = lattice_predicates(s, e)?;
        if !p.is_atom || !p.is_essential || *s == e.full_submodule() {
            return Err(Error::InvalidArgument(format!(
                "{s} is not a simple essential proper submodule of {e}"
            )));
        }
        labelled.push((format!("E{i}"), e, s));
    }
    let mut b = Builder::new();
    let refs: Vec<(&str, &Arc<FiniteModule>, &Submodule)> =
        labelled.iter().map(|(l, e, s)| (l.as_str(), *e, *s)).collect();
    superfluous_sides(&mut b, &refs)?;
    let consistent = b.sides[1].holds;
    Ok(TheoremVerdict {
        theorem: "P14.1".into(),
        ring: ring.to_string(),
        universe: None,
        universe_size: 0,
        kind: StatementKind::Implication,
        sides: b.sides,
        consistent,
        witnesses: b.witnesses,
        notes: vec![format!("{} supplied pairs", pairs.len())],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(spec: &str) -> (Arc<FiniteRing>, Universe) {
        let f2 = || FiniteRing::cyclic(2).unwrap();
        let r = match spec {
            "m2" => FiniteRing::matrix(&f2(), 2).unwrap(),
            "z2z2" => FiniteRing::product(&[f2(), f2()]).unwrap(),
            "z2z3" => FiniteRing::product(&[f2(), FiniteRing::cyclic(3).unwrap()]).unwrap(),
            n => FiniteRing::cyclic(n.parse().unwrap()).unwrap(),
        };
        let u = Universe::generate(&r, UniverseParams::default()).unwrap();
        (r, u)
    }

    #[test]
    fn classification_examples() {
        let (r, u) = setup("m2");
        let f = classify_ring(&r, &u).unwrap().flags;
        assert!(f.is_simple && f.is_semisimple && f.is_homogeneous_semisimple);

        let (r, u) = setup("4");
        let c = classify_ring(&r, &u).unwrap();
        assert!(c.flags.is_left_local && c.flags.is_left_semiartinian_on_universe);
        assert!(!c.flags.is_v_ring && c.flags.is_bkn_on_universe);
        assert!(c.witnesses.iter().any(|(f, e)| f == "is_v_ring" && matches!(e, Evidence::NotInjective { .. })));

        let (r, u) = setup("z2z3");
        assert!(!classify_ring(&r, &u).unwrap().flags.is_left_local);
    }

    #[test]
    fn lep_counts() {
        assert_eq!(enumerate_lep(&setup("4").0).unwrap().len(), 3);
        assert_eq!(enumerate_lep(&setup("m2").0).unwrap().len(), 2);
        assert_eq!(enumerate_lep(&setup("2").0).unwrap().len(), 2);
    }

    #[test]
    fn theorem_replays() {
        for (ring, id, expect) in [
            ("m2", "T15", true),
            ("4", "T15", false),
            ("6", "T15", false),
            ("2", "T14.3", true),
            ("m2", "T14.3", true),
            ("4", "T14.3", false),
            ("z2z2", "T14.3", false),
            ("4", "T14", true),
            ("z2z2", "T14", false),
        ] {
            let (r, u) = setup(ring);
            let v = verify_theorem(id, &r, &u).unwrap();
            assert!(v.consistent, "{id} on {ring}: {v:?}");
            assert!(v.sides.iter().all(|s| s.holds == expect), "{id} on {ring}: {v:?}");
            if !expect {
                assert!(!v.witnesses.is_empty());
            }
        }
    }

    #[test]
    fn other_statements() {
        for ring in ["2", "4", "6", "8", "z2z2", "m2"] {
            let (r, u) = setup(ring);
            for id in ["P14.1", "Perror1", "P12", "P8.5"] {
                let v = verify_theorem(id, &r, &u).unwrap();
                assert!(v.consistent, "{id} on {ring}: {v:?}");
            }
        }
        let (r, u) = setup("4");
        let v = verify_theorem("Perror1", &r, &u).unwrap();
        assert!(!v.sides[0].holds && v.sides[1].holds);
        assert!(matches!(verify_theorem("T99", &r, &u), Err(Error::UnknownTheorem(_))));
    }

    #[test]
    fn supplied_pairs() {
        let (r, _) = setup("4");
        let e = FiniteModule::regular(&r).unwrap();
        let s = e.submodule([0, 2]).unwrap();
        let v = verify_superfluous_pairs(&[(e.clone(), s)]).unwrap();
        assert!(v.consistent && v.sides[1].holds);
        // Z2 ⊕ Z4 is not injective over Z4.
        let half = e.cyclic(2).unwrap().module;
        let bad = FiniteModule::direct_sum(&[half.clone(), e]).unwrap().module;
        let atom = bad.submodules()[1].clone();
        assert!(matches!(
            verify_superfluous_pairs(&[(bad, atom)]),
            Err(Error::NotInjective(_))
        ));
    }
}
