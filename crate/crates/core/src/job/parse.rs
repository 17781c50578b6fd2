//! Parser for job documents.

use super::{Check, JobSpec, ModuleSpec, Notion, OutputFormat, UniverseSpec};
use crate::classifier::THEOREM_IDS;
use crate::error::{Error, Result};
use crate::ring::{Caps, RingSpec};

/// Parses a document and resolves every reference in it (ring, modules
/// and preradicals are built, so cap violations surface here).
pub fn parse_job(document: &str) -> Result<JobSpec> {
    parse_job_with(document, |_| {})
}

/// As [`parse_job`], letting `adjust` change the spec (caps, universe,
/// format) after syntax checking and before resolution.
pub fn parse_job_with(document: &str, adjust: impl FnOnce(&mut JobSpec)) -> Result<JobSpec> {
    let (mut spec, positions) = parse_with_positions(document)?;
    adjust(&mut spec);
    let ws = super::Workspace::build_at(&spec, &positions)?;
    for ((_, text), (_, p)) in spec.preradicals.iter_mut().zip(&ws.preradicals) {
        *text = p.to_string();
    }
    Ok(spec)
}

/// A position-aware cursor over one line.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    /// Column of `chars[0]`, 1-based.
    base: usize,
}

impl Cursor {
    fn new(text: &str, line: usize, base: usize) -> Self {
        Cursor {
            chars: text.chars().collect(),
            pos: 0,
            line,
            base,
        }
    }

    fn err_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.base + pos,
            message: message.into(),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        self.err_at(self.pos, message)
    }

    fn ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn at_end(&mut self) -> bool {
        self.ws();
        self.pos >= self.chars.len()
    }

    fn end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err("unexpected trailing input"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    /// A run of letters, digits, `_` and `.`.
    fn word(&mut self) -> Result<(usize, String)> {
        self.ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_' || *c == '.')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a word"));
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn name(&mut self) -> Result<String> {
        let (start, w) = self.word()?;
        if w.chars().next().is_some_and(|c| c.is_ascii_digit()) || w.contains('.') {
            return Err(self.err_at(start, format!("`{w}` is not a valid name")));
        }
        Ok(w)
    }

    fn number(&mut self) -> Result<usize> {
        let (start, w) = self.word()?;
        w.parse().map_err(|_| self.err_at(start, format!("expected a number, found `{w}`")))
    }

    /// Rows `a b c, d e f` up to (not including) `;` or `)`.
    fn table(&mut self) -> Result<Vec<Vec<usize>>> {
        let mut rows = vec![Vec::new()];
        loop {
            self.ws();
            match self.chars.get(self.pos) {
                Some(',') => {
                    self.pos += 1;
                    rows.push(Vec::new());
                }
                Some(';') | Some(')') | None => break,
                _ => {
                    let v = self.number()?;
                    rows.last_mut().expect("nonempty").push(v);
                }
            }
        }
        if rows.iter().any(|r| r.is_empty()) {
            return Err(self.err("empty table row"));
        }
        Ok(rows)
    }

    /// `raw(k1: table; k2: table)`, after the word `raw`.
    fn raw(&mut self, k1: &str, k2: &str) -> Result<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        self.expect('(')?;
        let key = |c: &mut Self, k: &str| -> Result<()> {
            let (p, w) = c.word()?;
            if w != k {
                return Err(c.err_at(p, format!("expected `{k}`")));
            }
            c.expect(':')
        };
        key(self, k1)?;
        let a = self.table()?;
        self.expect(';')?;
        key(self, k2)?;
        let b = self.table()?;
        self.expect(')')?;
        Ok((a, b))
    }

    fn ring_spec(&mut self) -> Result<RingSpec> {
        let (start, head) = self.word()?;
        Ok(match head.as_str() {
            "cyclic" => {
                self.expect('(')?;
                let n = self.number()?;
                self.expect(')')?;
                RingSpec::Cyclic(n)
            }
            "matrix" => {
                self.expect('(')?;
                let base = self.ring_spec()?;
                self.expect(',')?;
                let k = self.number()?;
                self.expect(')')?;
                RingSpec::Matrix(Box::new(base), k)
            }
            "product" => {
                self.expect('(')?;
                let mut parts = vec![self.ring_spec()?];
                while self.eat(',') {
                    parts.push(self.ring_spec()?);
                }
                self.expect(')')?;
                RingSpec::Product(parts)
            }
            "quotient" => {
                self.expect('(')?;
                let base = self.ring_spec()?;
                self.expect(',')?;
                let (p, w) = self.word()?;
                let k = w
                    .strip_prefix('I')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| self.err_at(p, format!("expected an ideal like I1, found `{w}`")))?;
                self.expect(')')?;
                RingSpec::Quotient(Box::new(base), k)
            }
            "raw" => {
                let (add, mul) = self.raw("add", "mul")?;
                RingSpec::Raw { add, mul }
            }
            other => return Err(self.err_at(start, format!("unknown ring constructor `{other}`"))),
        })
    }

    fn module_spec(&mut self) -> Result<ModuleSpec> {
        let (start, head) = self.word()?;
        let name_and_index = |c: &mut Self| -> Result<(String, usize)> {
            c.expect('(')?;
            let m = c.name()?;
            c.expect(',')?;
            let k = c.number()?;
            c.expect(')')?;
            Ok((m, k))
        };
        Ok(match head.as_str() {
            "regular" => ModuleSpec::Regular,
            "quotient" => {
                let (m, k) = name_and_index(self)?;
                ModuleSpec::Quotient(m, k)
            }
            "sub" => {
                let (m, k) = name_and_index(self)?;
                ModuleSpec::Sub(m, k)
            }
            "cyclic" => {
                let (m, k) = name_and_index(self)?;
                ModuleSpec::Cyclic(m, k)
            }
            "sum" => {
                self.expect('(')?;
                let mut parts = vec![self.name()?];
                while self.eat(',') {
                    parts.push(self.name()?);
                }
                self.expect(')')?;
                ModuleSpec::DirectSum(parts)
            }
            "raw" => {
                let (add, act) = self.raw("add", "act")?;
                ModuleSpec::Raw { add, act }
            }
            other => return Err(self.err_at(start, format!("unknown module constructor `{other}`"))),
        })
    }
}

/// Parses a ring constructor such as `matrix(cyclic(2), 2)`.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    let mut c = Cursor::new(text, 1, 1);
    let spec = c.ring_spec()?;
    c.end()?;
    Ok(spec)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Ring,
    Modules,
    Preradicals,
    Checks,
    Universe,
    Output,
}

/// Splits `key = value`, returning the key and the value's cursor.
fn key_value(text: &str, line: usize, base: usize) -> Result<(String, Cursor)> {
    let eq = text.find('=').ok_or(Error::Parse {
        line,
        column: base,
        message: "expected `name = value`".into(),
    })?;
    let mut kc = Cursor::new(&text[..eq], line, base);
    let key = kc.name()?;
    kc.end()?;
    let vbase = base + text[..=eq].chars().count();
    Ok((key, Cursor::new(&text[eq + 1..], line, vbase)))
}

/// Parses the document without building anything.
pub fn parse_job_document(document: &str) -> Result<JobSpec> {
    Ok(parse_with_positions(document)?.0)
}

/// The spec plus the (line, column) of each preradical expression.
pub(super) fn parse_with_positions(document: &str) -> Result<(JobSpec, Vec<(usize, usize)>)> {
    let mut section = None;
    let mut ring = None;
    let mut caps = Caps::default();
    let mut modules: Vec<(String, ModuleSpec)> = Vec::new();
    let mut preradicals: Vec<(String, String, usize, usize)> = Vec::new();
    let mut checks = Vec::new();
    let mut universe = UniverseSpec::Generated { depth: 2 };
    let mut format = OutputFormat::Text;
    let mut timing = false;
    let mut seen_sections = Vec::new();

    for (i, raw_line) in document.lines().enumerate() {
        let line = i + 1;
        let content = raw_line.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let base = 1 + content.chars().count() - trimmed.chars().count();
        let text = trimmed.trim_end();
        let perr = |column: usize, message: String| Error::Parse { line, column, message };

        if let Some(rest) = text.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| perr(base + text.chars().count(), "expected `]`".into()))?
                .trim();
            let s = match name {
                "ring" => Section::Ring,
                "modules" => Section::Modules,
                "preradicals" => Section::Preradicals,
                "checks" => Section::Checks,
                "universe" => Section::Universe,
                "output" => Section::Output,
                other => return Err(perr(base + 1, format!("unknown section `{other}`"))),
            };
            if seen_sections.contains(&s) {
                return Err(perr(base, format!("section `{name}` appears twice")));
            }
            seen_sections.push(s);
            section = Some(s);
            continue;
        }

        let Some(sec) = section else {
            return Err(perr(base, "content before the first section".into()));
        };
        match sec {
            Section::Ring => {
                let (key, mut v) = key_value(text, line, base)?;
                match key.as_str() {
                    "spec" => ring = Some(v.ring_spec()?),
                    "cap_ring" => caps.ring = v.number()?,
                    "cap_module" => caps.module = v.number()?,
                    other => return Err(perr(base, format!("unknown ring key `{other}`"))),
                }
                v.end()?;
            }
            Section::Modules => {
                let (name, mut v) = key_value(text, line, base)?;
                if modules.iter().any(|(n, _)| *n == name) {
                    return Err(perr(base, format!("module `{name}` declared twice")));
                }
                let m = v.module_spec()?;
                v.end()?;
                modules.push((name, m));
            }
            Section::Preradicals => {
                let (name, v) = key_value(text, line, base)?;
                if preradicals.iter().any(|(n, ..)| *n == name) {
                    return Err(perr(base, format!("preradical `{name}` declared twice")));
                }
                let expr: String = v.chars.iter().collect();
                let lead = expr.chars().take_while(|c| c.is_whitespace()).count();
                preradicals.push((name, expr.trim().to_string(), line, v.base + lead));
            }
            Section::Checks => {
                let mut c = Cursor::new(text, line, base);
                checks.push(parse_check(&mut c)?);
            }
            Section::Universe => {
                let (key, mut v) = key_value(text, line, base)?;
                universe = match key.as_str() {
                    "depth" => UniverseSpec::Generated { depth: v.number()? },
                    "modules" => {
                        let mut names = vec![v.name()?];
                        while v.eat(',') {
                            names.push(v.name()?);
                        }
                        UniverseSpec::Explicit(names)
                    }
                    other => return Err(perr(base, format!("unknown universe key `{other}`"))),
                };
                v.end()?;
            }
            Section::Output => {
                let (key, mut v) = key_value(text, line, base)?;
                let (p, w) = v.word()?;
                match key.as_str() {
                    "format" => {
                        format = match w.as_str() {
                            "text" => OutputFormat::Text,
                            "structured" => OutputFormat::Structured,
                            _ => return Err(v.err_at(p, "format is `text` or `structured`")),
                        }
                    }
                    "timing" => {
                        timing = w.parse().map_err(|_| v.err_at(p, "expected `true` or `false`"))?;
                    }
                    other => return Err(perr(base, format!("unknown output key `{other}`"))),
                }
                v.end()?;
            }
        }
    }

    let ring = ring.ok_or(Error::Parse {
        line: 1,
        column: 1,
        message: "missing `spec` in a [ring] section".into(),
    })?;
    let positions = preradicals.iter().map(|(_, _, l, c)| (*l, *c)).collect();
    let spec = JobSpec {
        ring,
        caps,
        modules,
        preradicals: preradicals.into_iter().map(|(n, e, ..)| (n, e)).collect(),
        checks,
        universe,
        format,
        timing,
    };
    Ok((spec, positions))
}

fn parse_check(c: &mut Cursor) -> Result<Check> {
    let (start, head) = c.word()?;
    let rest_names = |c: &mut Cursor| -> Result<Vec<String>> {
        let mut v = Vec::new();
        while !c.at_end() {
            v.push(c.name()?);
        }
        Ok(v)
    };
    let check = if let Some((notion, _)) = Notion::ALL.iter().find(|(_, n)| *n == head) {
        Check::Firstness(*notion, c.name()?)
    } else {
        match head.as_str() {
            "structure" => Check::Structure(c.name()?),
            "submodules" => Check::Submodules(c.name()?),
            "injective" => Check::Injective(c.name()?),
            "cogenerates" => Check::Cogenerates(c.name()?, c.name()?),
            "evaluate" => Check::Evaluate(c.name()?, c.name()?),
            "core" => Check::Core(c.name()?, c.name()?),
            "closure" => Check::Closure(c.name()?, c.name()?),
            "flags" => Check::Flags(c.name()?),
            "compare" => Check::Compare(c.name()?, c.name()?),
            "a_first" => Check::AFirst(c.name()?, rest_names(c)?),
            "fully_first" => Check::FullyFirst(c.name()?, rest_names(c)?),
            "classes" => Check::Classes(c.name()?, rest_names(c)?),
            "action" => Check::Action(c.name()?, rest_names(c)?),
            "classify" => Check::Classify,
            "lep" => Check::Lep,
            "verify" => {
                let (p, id) = c.word()?;
                if !THEOREM_IDS.contains(&id.as_str()) {
                    return Err(c.err_at(p, format!("unknown theorem `{id}`; known: {}", THEOREM_IDS.join(", "))));
                }
                Check::Verify(id)
            }
            "superfluous" => Check::Superfluous(c.name()?, c.number()?),
            other => return Err(c.err_at(start, format!("unknown check `{other}`"))),
        }
    };
    c.end()?;
    Ok(check)
}

