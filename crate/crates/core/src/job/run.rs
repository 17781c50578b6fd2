//! Building a job's objects and running its checks.

use super::{Check, JobSpec, ModuleSpec, Notion, OutputFormat, UniverseSpec};
use crate::classifier::{classify_ring, enumerate_lep, verify_superfluous_pairs, verify_theorem};
use crate::error::{Error, Result};
use crate::firstness::{
    a_first_witness, bjkn_prime_check, class_membership, diuniform_check, endomorphism_ring_prime_check,
    firstness_report, is_A_fully_first, prime_module_check, retractable_check, rpid_first_check,
};
use crate::modules::{
    cogenerates, injectivity_witness, lattice_predicates, structural_predicates, FiniteModule, Submodule,
};
use crate::order::module_action_instance;
use crate::preradical::{
    compare, idempotent_core, parse_preradical_at, property_flags, radical_closure, Preradical, PreradicalContext,
};
use crate::ring::{Caps, FiniteRing};
use crate::universe::{Universe, UniverseParams};
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

/// Version of the structured report layout.
pub const SCHEMA_VERSION: u32 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The ring, modules and preradicals of a job, with the universe built on
/// first use.
pub struct Workspace {
    pub ring: Arc<FiniteRing>,
    pub modules: Vec<(String, Arc<FiniteModule>)>,
    pub preradicals: Vec<(String, Preradical)>,
    universe_spec: UniverseSpec,
    universe: OnceLock<Result<Universe>>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Result<&'a T> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, v)| v)
        .ok_or_else(|| Error::Unresolved(name.to_string()))
}

fn submodule_at(m: &FiniteModule, name: &str, k: usize) -> Result<Submodule> {
    m.submodules().get(k).cloned().ok_or_else(|| {
        Error::Unresolved(format!("{name} has {} submodules, no index {k}", m.submodules().len()))
    })
}

impl Workspace {
    /// Builds everything the spec names. Checks are resolved but not run.
    pub fn build(spec: &JobSpec) -> Result<Self> {
        Self::build_at(spec, &[])
    }

    /// As [`Workspace::build`], reporting preradical errors at the given
    /// (line, column) positions.
    pub(super) fn build_at(spec: &JobSpec, positions: &[(usize, usize)]) -> Result<Self> {
        let ring = spec.ring.build(&spec.caps)?;
        let mut modules: Vec<(String, Arc<FiniteModule>)> = Vec::new();
        // `regular` names the regular module unless the job declares it.
        if !spec.modules.iter().any(|(n, _)| n == "regular") {
            modules.push(("regular".into(), FiniteModule::regular(&ring)?));
        }
        for (name, m) in &spec.modules {
            let built = match m {
                ModuleSpec::Regular => FiniteModule::regular(&ring)?,
                ModuleSpec::Quotient(base, k) => {
                    let b = lookup(&modules, base)?;
                    b.quotient(&submodule_at(b, base, *k)?)?.module
                }
                ModuleSpec::Sub(base, k) => {
                    let b = lookup(&modules, base)?;
                    b.submodule_module(&submodule_at(b, base, *k)?)?.module
                }
                ModuleSpec::Cyclic(base, x) => {
                    let b = lookup(&modules, base)?;
                    if *x >= b.order() {
                        return Err(Error::Unresolved(format!("{base} has no element {x}")));
                    }
                    b.cyclic(*x)?.module
                }
                ModuleSpec::DirectSum(parts) => {
                    let parts = parts
                        .iter()
                        .map(|p| lookup(&modules, p).cloned())
                        .collect::<Result<Vec<_>>>()?;
                    FiniteModule::direct_sum(&parts)?.module
                }
                ModuleSpec::Raw { add, act } => FiniteModule::from_tables(&ring, add, act)?,
            };
            modules.push((name.clone(), built));
        }
        let ctx = PreradicalContext::new(&ring, &modules);
        let mut preradicals = Vec::new();
        for (i, (name, text)) in spec.preradicals.iter().enumerate() {
            let (line, column) = positions.get(i).copied().unwrap_or((1, 1));
            preradicals.push((name.clone(), parse_preradical_at(text, &ctx, line, column)?));
        }
        // Built-in names, available where the job does not reuse them.
        for (name, p) in [
            ("soc", Preradical::Soc),
            ("rad", Preradical::Rad),
            ("zero", Preradical::Zero),
            ("one", Preradical::One),
        ] {
            if !preradicals.iter().any(|(n, _)| n == name) {
                preradicals.push((name.to_string(), p));
            }
        }
        let ws = Workspace {
            ring,
            modules,
            preradicals,
            universe_spec: spec.universe.clone(),
            universe: OnceLock::new(),
        };
        if let UniverseSpec::Explicit(names) = &spec.universe {
            for n in names {
                ws.module(n)?;
            }
        }
        for c in &spec.checks {
            ws.resolve(c)?;
        }
        Ok(ws)
    }

    pub fn module(&self, name: &str) -> Result<&Arc<FiniteModule>> {
        lookup(&self.modules, name)
    }

    pub fn preradical(&self, name: &str) -> Result<&Preradical> {
        lookup(&self.preradicals, name)
    }

    fn family(&self, names: &[String]) -> Result<Vec<Preradical>> {
        names.iter().map(|n| self.preradical(n).cloned()).collect()
    }

    pub fn universe(&self) -> Result<&Universe> {
        let u = self.universe.get_or_init(|| match &self.universe_spec {
            UniverseSpec::Generated { depth } => Universe::generate(&self.ring, UniverseParams { depth: *depth }),
            UniverseSpec::Explicit(names) => Universe::from_modules(
                &self.ring,
                names
                    .iter()
                    .map(|n| Ok((n.clone(), Arc::clone(self.module(n)?))))
                    .collect::<Result<Vec<_>>>()?,
            ),
        });
        u.as_ref().map_err(Clone::clone)
    }

    /// Checks that every name in `check` refers to something.
    fn resolve(&self, check: &Check) -> Result<()> {
        match check {
            Check::Firstness(_, m) | Check::Structure(m) | Check::Submodules(m) | Check::Injective(m) => {
                self.module(m)?;
            }
            Check::Cogenerates(n, m) => {
                self.module(n)?;
                self.module(m)?;
            }
            Check::Evaluate(p, m) | Check::Core(p, m) | Check::Closure(p, m) => {
                self.preradical(p)?;
                self.module(m)?;
            }
            Check::Flags(p) => {
                self.preradical(p)?;
            }
            Check::Compare(p, q) => {
                self.preradical(p)?;
                self.preradical(q)?;
            }
            Check::AFirst(m, fam) | Check::FullyFirst(m, fam) | Check::Classes(m, fam) | Check::Action(m, fam) => {
                self.module(m)?;
                self.family(fam)?;
            }
            Check::Classify | Check::Lep | Check::Verify(_) => {}
            Check::Superfluous(e, k) => {
                submodule_at(self.module(e)?, e, *k)?;
            }
        }
        Ok(())
    }

    /// Runs one check. Engine errors are returned; the caller records them.
    pub fn run_check(&self, check: &Check) -> Result<Outcome> {
        Ok(match check {
            Check::Firstness(notion, name) => {
                let m = self.module(name)?;
                let pair = |(holds, w): (bool, Option<crate::firstness::Witness>)| {
                    Outcome::verdict(holds, json!({ "holds": holds, "witness": w }))
                };
                match notion {
                    Notion::BjknPrime => {
                        let c = bjkn_prime_check(m)?;
                        Outcome::verdict(c.verdict, to_value(&c))
                    }
                    Notion::Prime => pair(prime_module_check(m)?),
                    Notion::RpidFirst => pair(rpid_first_check(m)?),
                    Notion::Diuniform => pair(diuniform_check(m)?),
                    Notion::Retractable => pair(retractable_check(m)?),
                    Notion::EndomorphismPrime => pair(endomorphism_ring_prime_check(m)?),
                    Notion::All => {
                        let r = firstness_report(m)?;
                        let summary = format!(
                            "bjkn_prime={} prime={} rpid_first={} diuniform={} retractable={} endomorphism_prime={}",
                            r.bjkn_prime, r.prime, r.rpid_first, r.diuniform, r.retractable, r.endomorphism_ring_prime
                        );
                        Outcome::info(summary, to_value(&r))
                    }
                }
            }
            Check::Structure(name) => {
                let m = self.module(name)?;
                let s = structural_predicates(m)?;
                Outcome::info(
                    format!(
                        "order={} submodules={} simple={} semisimple={} homogeneous={} soc={} rad={}",
                        m.order(),
                        m.submodules().len(),
                        s.is_simple,
                        s.is_semisimple,
                        s.is_homogeneous_semisimple,
                        s.socle,
                        s.jacobson_radical
                    ),
                    json!({
                        "module": m.description(),
                        "order": m.order(),
                        "submodule_count": m.submodules().len(),
                        "is_simple": s.is_simple,
                        "is_semisimple": s.is_semisimple,
                        "is_homogeneous_semisimple": s.is_homogeneous_semisimple,
                        "socle": s.socle.elements(),
                        "jacobson_radical": s.jacobson_radical.elements(),
                    }),
                )
            }
            Check::Submodules(name) => {
                let m = self.module(name)?;
                let mut rows = Vec::new();
                let mut text = String::new();
                for (i, s) in m.submodules().iter().enumerate() {
                    let p = lattice_predicates(s, m)?;
                    let fi = m.is_fully_invariant(s);
                    let _ = write!(
                        text,
                        "\n  {i}: {s}{}{}{}{}",
                        if fi { " fully-invariant" } else { "" },
                        if p.is_essential { " essential" } else { "" },
                        if p.is_superfluous { " superfluous" } else { "" },
                        if p.is_atom { " atom" } else { "" },
                    );
                    rows.push(json!({
                        "index": i,
                        "elements": s.elements(),
                        "fully_invariant": fi,
                        "is_essential": p.is_essential,
                        "is_superfluous": p.is_superfluous,
                        "is_atom": p.is_atom,
                    }));
                }
                Outcome::info(format!("{} submodules{text}", rows.len()), Value::Array(rows))
            }
            Check::Injective(name) => {
                let w = injectivity_witness(self.module(name)?)?;
                Outcome::verdict(w.is_none(), json!({ "holds": w.is_none(), "baer_witness": w }))
            }
            Check::Cogenerates(n, m) => {
                let holds = cogenerates(self.module(n)?, self.module(m)?)?;
                Outcome::verdict(holds, json!({ "holds": holds }))
            }
            Check::Evaluate(p, m) => submodule_outcome(self.module(m)?, &self.preradical(p)?.evaluate(self.module(m)?)?),
            Check::Core(p, m) => submodule_outcome(self.module(m)?, &idempotent_core(self.preradical(p)?, self.module(m)?)?),
            Check::Closure(p, m) => {
                submodule_outcome(self.module(m)?, &radical_closure(self.preradical(p)?, self.module(m)?)?)
            }
            Check::Flags(p) => {
                let f = property_flags(self.preradical(p)?, self.universe()?)?;
                Outcome::info(
                    format!(
                        "idempotent={} radical={} left_exact={} t_radical={}",
                        f.idempotent, f.radical, f.left_exact, f.t_radical
                    ),
                    to_value(&f),
                )
            }
            Check::Compare(p, q) => {
                let o = compare(self.preradical(p)?, self.preradical(q)?, self.universe()?)?;
                let v = to_value(&o);
                Outcome::info(v.as_str().unwrap_or_default().to_string(), json!({ "order": v }))
            }
            Check::AFirst(m, fam) => {
                let w = a_first_witness(self.module(m)?, &self.family(fam)?)?;
                Outcome::verdict(w.is_none(), json!({ "holds": w.is_none(), "witness": w }))
            }
            Check::FullyFirst(m, fam) => {
                let holds = is_A_fully_first(self.module(m)?, &self.family(fam)?)?;
                Outcome::verdict(holds, json!({ "holds": holds }))
            }
            Check::Classes(m, fam) => {
                let c = class_membership(self.module(m)?, &self.family(fam)?)?;
                Outcome::info(
                    format!("T={} F={} P={} fully_first={}", c.in_t, c.in_f, c.in_p, c.in_script_p),
                    to_value(&c),
                )
            }
            Check::Action(m, fam) => {
                let inst = module_action_instance(self.module(m)?, &self.family(fam)?)?;
                let a = &inst.action;
                let top = a.lattice().top();
                let first = if a.lattice().len() > 1 { Some(a.first_witness(top)?) } else { None };
                let prime = a.prime_witness(top);
                let table: Vec<Vec<usize>> = (0..a.poset().len())
                    .map(|s| (0..a.lattice().len()).map(|x| a.act(s, x)).collect())
                    .collect();
                let is_first = first.as_ref().map(|w| w.is_none());
                Outcome::info(
                    format!(
                        "poset={} lattice={} first={} prime={}",
                        a.poset().len(),
                        a.lattice().len(),
                        is_first.map_or("n/a".to_string(), |b| b.to_string()),
                        prime.is_none()
                    ),
                    json!({
                        "poset_size": a.poset().len(),
                        "lattice_size": a.lattice().len(),
                        "member": inst.member,
                        "table": table,
                        "top_is_first": is_first,
                        "first_witness": first.flatten(),
                        "top_is_prime": prime.is_none(),
                        "prime_witness": prime,
                    }),
                )
            }
            Check::Classify => {
                let c = classify_ring(&self.ring, self.universe()?)?;
                let f = &c.flags;
                Outcome::info(
                    format!(
                        "simple={} semisimple={} homogeneous={} left_local={} semiartinian={} v_ring={} bkn={}",
                        f.is_simple,
                        f.is_semisimple,
                        f.is_homogeneous_semisimple,
                        f.is_left_local,
                        f.is_left_semiartinian_on_universe,
                        f.is_v_ring,
                        f.is_bkn_on_universe
                    ),
                    to_value(&c),
                )
            }
            Check::Lep => {
                let all: Vec<String> = enumerate_lep(&self.ring)?.iter().map(ToString::to_string).collect();
                Outcome::info(format!("{} left exact preradicals: {}", all.len(), all.join(" ")), json!(all))
            }
            Check::Verify(id) => {
                let v = verify_theorem(id, &self.ring, self.universe()?)?;
                verdict_outcome(&v)
            }
            Check::Superfluous(e, k) => {
                let m = self.module(e)?;
                let v = verify_superfluous_pairs(&[(Arc::clone(m), submodule_at(m, e, *k)?)])?;
                verdict_outcome(&v)
            }
        })
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn submodule_outcome(m: &FiniteModule, s: &Submodule) -> Outcome {
    let index = m.submodule_index(s);
    Outcome::info(
        format!("{s} (index {})", index.map_or("?".into(), |i| i.to_string())),
        json!({ "elements": s.elements(), "index": index }),
    )
}

fn verdict_outcome(v: &crate::classifier::TheoremVerdict) -> Outcome {
    let sides: Vec<String> = v.sides.iter().map(|s| format!("[{}: {}]", s.statement, s.holds)).collect();
    Outcome {
        verdict: Some(v.consistent),
        summary: format!(
            "{} on {} (universe of {}): {} {}",
            v.theorem,
            v.ring,
            v.universe_size,
            if v.consistent { "consistent" } else { "INCONSISTENT" },
            sides.join(" ")
        ),
        data: to_value(v),
        inconsistent: !v.consistent,
    }
}

/// The result of a check that ran without an engine error.
pub struct Outcome {
    pub verdict: Option<bool>,
    pub summary: String,
    pub data: Value,
    /// A replayed statement disagreed with the computation.
    pub inconsistent: bool,
}

impl Outcome {
    fn verdict(holds: bool, data: Value) -> Self {
        Outcome {
            verdict: Some(holds),
            summary: holds.to_string(),
            data,
            inconsistent: false,
        }
    }

    fn info(summary: String, data: Value) -> Self {
        Outcome {
            verdict: None,
            summary,
            data,
            inconsistent: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorInfo {
    pub message: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub verdict: Option<bool>,
    pub summary: String,
    pub data: Value,
    pub error: Option<ErrorInfo>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UniverseInfo {
    pub params: Option<UniverseParams>,
    pub modules: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JobReport {
    pub schema_version: u32,
    pub engine_version: String,
    pub ring: String,
    pub ring_order: usize,
    pub caps: Caps,
    /// Present when some check used the universe.
    pub universe: Option<UniverseInfo>,
    pub results: Vec<CheckResult>,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl JobReport {
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut s = String::new();
                let _ = writeln!(s, "ring {} (order {})", self.ring, self.ring_order);
                if let Some(u) = &self.universe {
                    let _ = writeln!(s, "universe: {} modules", u.modules.len());
                }
                for r in &self.results {
                    match &r.error {
                        Some(e) => {
                            let _ = writeln!(s, "{}: error: {}", r.check, e.message);
                        }
                        None => {
                            let _ = writeln!(s, "{}: {}", r.check, r.summary);
                        }
                    }
                }
                if let Some(ms) = self.runtime_ms {
                    let _ = writeln!(s, "runtime {ms:.1} ms");
                }
                s
            }
        }
    }
}

/// Builds the workspace and runs every check. Errors raised while building
/// are returned; errors raised by a check are recorded in its result.
pub fn run_job(spec: &JobSpec) -> Result<JobReport> {
    let start = Instant::now();
    let ws = Workspace::build(spec)?;
    let mut results = Vec::new();
    let mut inconsistent = false;
    let mut first_error = 0;
    for check in &spec.checks {
        let result = match ws.run_check(check) {
            Ok(o) => {
                inconsistent |= o.inconsistent;
                CheckResult {
                    check: check.to_string(),
                    verdict: o.verdict,
                    summary: o.summary,
                    data: o.data,
                    error: None,
                }
            }
            Err(e) => {
                inconsistent |= matches!(e, Error::Inconsistency { .. });
                if first_error == 0 {
                    first_error = e.exit_code();
                }
                CheckResult {
                    check: check.to_string(),
                    verdict: None,
                    summary: String::new(),
                    data: Value::Null,
                    error: Some(ErrorInfo {
                        message: e.to_string(),
                        exit_code: e.exit_code(),
                    }),
                }
            }
        };
        results.push(result);
    }
    let universe = ws.universe.get().and_then(|u| u.as_ref().ok()).map(|u| UniverseInfo {
        params: u.params(),
        modules: u.modules().iter().map(|m| m.label.clone()).collect(),
    });
    Ok(JobReport {
        schema_version: SCHEMA_VERSION,
        engine_version: ENGINE_VERSION.to_string(),
        ring: spec.ring.to_string(),
        ring_order: ws.ring.order(),
        caps: spec.caps,
        universe,
        results,
        exit_code: if inconsistent { 4 } else { first_error },
        runtime_ms: spec.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::job::{parse_job, parse_job_document};

    const DOC: &str = "\
[ring]
spec = cyclic(4)

[modules]
M = regular
S = sub(M, 1)
Q = quotient(M, 1)

[preradicals]
t = soc
a = alpha(1@M)

[checks]
bjkn_prime M
diuniform M
evaluate t M
compare t a
verify T14.3
";

    #[test]
    fn runs_a_small_job() {
        let spec = parse_job(DOC).unwrap();
        let report = run_job(&spec).unwrap();
        assert_eq!(report.exit_code, 0);
        assert_eq!(report.results[0].verdict, Some(false));
        assert_eq!(report.results[1].verdict, Some(true));
        assert_eq!(report.results[2].data["elements"], json!([0, 2]));
        assert_eq!(report.results[4].verdict, Some(true));
        assert!(report.runtime_ms.is_none());
        let a = report.render(OutputFormat::Structured);
        let b = run_job(&spec).unwrap().render(OutputFormat::Structured);
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_round_trip() {
        let spec = parse_job(DOC).unwrap();
        assert_eq!(parse_job(&spec.to_string()).unwrap(), spec);
    }

    #[test]
    fn errors_carry_positions() {
        let bad = DOC.replace("t = soc", "t = sock");
        match parse_job(&bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (10, 5)),
            other => panic!("{other:?}"),
        }
        let unresolved = DOC.replace("evaluate t M", "evaluate t N");
        assert!(matches!(parse_job(&unresolved), Err(Error::Unresolved(_))));
        assert!(parse_job_document(&unresolved).is_ok());
        let cap = DOC.replace("cyclic(4)", "cyclic(40)");
        assert_eq!(parse_job(&cap).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn empty_checks() {
        let spec = parse_job("[ring]\nspec = cyclic(4)\n[checks]\nbjkn_prime regular\n").unwrap();
        assert_eq!(spec.checks.len(), 1);
        let spec = parse_job("[ring]\nspec = cyclic(2)\n").unwrap();
        let r = run_job(&spec).unwrap();
        assert!(r.results.is_empty());
        assert_eq!(r.exit_code, 0);
    }
}
