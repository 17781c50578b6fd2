//! Job documents: a ring, named modules and preradicals, a list of checks,
//! universe parameters and an output format.
//!
//! ```text
//! [ring]
//! spec = cyclic(4)
//!
//! [modules]
//! M = regular
//! S = sub(M, 1)
//!
//! [preradicals]
//! t = comp(soc, trad(I2))
//!
//! [checks]
//! bjkn_prime M
//! evaluate t M
//! verify T14.3
//!
//! [universe]
//! depth = 2
//!
//! [output]
//! format = structured
//! ```

mod parse;
mod run;

pub use parse::{parse_job, parse_job_document, parse_job_with, parse_ring_spec};
pub use run::{run_job, CheckResult, JobReport, Workspace, ENGINE_VERSION, SCHEMA_VERSION};

use crate::ring::{table_text, Caps, RingSpec};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleSpec {
    Regular,
    /// Quotient of a named module by its submodule with this index.
    Quotient(String, usize),
    /// Submodule with this index of a named module, as a module.
    Sub(String, usize),
    /// R·x inside a named module.
    Cyclic(String, usize),
    DirectSum(Vec<String>),
    Raw {
        add: Vec<Vec<usize>>,
        act: Vec<Vec<usize>>,
    },
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::Regular => write!(f, "regular"),
            ModuleSpec::Quotient(m, k) => write!(f, "quotient({m}, {k})"),
            ModuleSpec::Sub(m, k) => write!(f, "sub({m}, {k})"),
            ModuleSpec::Cyclic(m, x) => write!(f, "cyclic({m}, {x})"),
            ModuleSpec::DirectSum(parts) => write!(f, "sum({})", parts.join(", ")),
            ModuleSpec::Raw { add, act } => write!(f, "raw(add: {}; act: {})", table_text(add), table_text(act)),
        }
    }
}

/// Module-level notions decided by the firstness checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Notion {
    BjknPrime,
    Prime,
    RpidFirst,
    Diuniform,
    Retractable,
    EndomorphismPrime,
    /// All of the above in one report.
    All,
}

impl Notion {
    pub const ALL: [(Notion, &'static str); 7] = [
        (Notion::BjknPrime, "bjkn_prime"),
        (Notion::Prime, "prime"),
        (Notion::RpidFirst, "rpid_first"),
        (Notion::Diuniform, "diuniform"),
        (Notion::Retractable, "retractable"),
        (Notion::EndomorphismPrime, "endomorphism_prime"),
        (Notion::All, "firstness"),
    ];

    pub fn name(self) -> &'static str {
        Notion::ALL.iter().find(|(n, _)| *n == self).map(|(_, s)| *s).expect("listed")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Firstness(Notion, String),
    Structure(String),
    Submodules(String),
    Injective(String),
    Cogenerates(String, String),
    Evaluate(String, String),
    Core(String, String),
    Closure(String, String),
    Flags(String),
    Compare(String, String),
    AFirst(String, Vec<String>),
    FullyFirst(String, Vec<String>),
    Classes(String, Vec<String>),
    Action(String, Vec<String>),
    Classify,
    Lep,
    Verify(String),
    /// Superfluity on a supplied pair: module E and the index of S in E.
    Superfluous(String, usize),
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let with_family = |f: &mut fmt::Formatter<'_>, head: &str, m: &str, fam: &[String]| {
            write!(f, "{head} {m}")?;
            for p in fam {
                write!(f, " {p}")?;
            }
            Ok(())
        };
        match self {
            Check::Firstness(n, m) => write!(f, "{} {m}", n.name()),
            Check::Structure(m) => write!(f, "structure {m}"),
            Check::Submodules(m) => write!(f, "submodules {m}"),
            Check::Injective(m) => write!(f, "injective {m}"),
            Check::Cogenerates(n, m) => write!(f, "cogenerates {n} {m}"),
            Check::Evaluate(p, m) => write!(f, "evaluate {p} {m}"),
            Check::Core(p, m) => write!(f, "core {p} {m}"),
            Check::Closure(p, m) => write!(f, "closure {p} {m}"),
            Check::Flags(p) => write!(f, "flags {p}"),
            Check::Compare(p, q) => write!(f, "compare {p} {q}"),
            Check::AFirst(m, fam) => with_family(f, "a_first", m, fam),
            Check::FullyFirst(m, fam) => with_family(f, "fully_first", m, fam),
            Check::Classes(m, fam) => with_family(f, "classes", m, fam),
            Check::Action(m, fam) => with_family(f, "action", m, fam),
            Check::Classify => write!(f, "classify"),
            Check::Lep => write!(f, "lep"),
            Check::Verify(id) => write!(f, "verify {id}"),
            Check::Superfluous(e, k) => write!(f, "superfluous {e} {k}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniverseSpec {
    Generated { depth: usize },
    /// The named modules of the job.
    Explicit(Vec<String>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Structured,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Structured => "structured",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub ring: RingSpec,
    pub caps: Caps,
    pub modules: Vec<(String, ModuleSpec)>,
    /// Expressions in canonical form.
    pub preradicals: Vec<(String, String)>,
    pub checks: Vec<Check>,
    pub universe: UniverseSpec,
    pub format: OutputFormat,
    /// Whether structured reports carry the runtime.
    pub timing: bool,
}

/// The canonical document; parsing it gives back an equal [`JobSpec`].
impl fmt::Display for JobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ring]")?;
        writeln!(f, "spec = {}", self.ring)?;
        writeln!(f, "cap_ring = {}", self.caps.ring)?;
        writeln!(f, "cap_module = {}", self.caps.module)?;
        writeln!(f, "\n[modules]")?;
        for (name, m) in &self.modules {
            writeln!(f, "{name} = {m}")?;
        }
        writeln!(f, "\n[preradicals]")?;
        for (name, p) in &self.preradicals {
            writeln!(f, "{name} = {p}")?;
        }
        writeln!(f, "\n[checks]")?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        writeln!(f, "\n[universe]")?;
        match &self.universe {
            UniverseSpec::Generated { depth } => writeln!(f, "depth = {depth}")?,
            UniverseSpec::Explicit(names) => writeln!(f, "modules = {}", names.join(", "))?,
        }
        writeln!(f, "\n[output]")?;
        writeln!(f, "format = {}", self.format)?;
        writeln!(f, "timing = {}", self.timing)
    }
}
