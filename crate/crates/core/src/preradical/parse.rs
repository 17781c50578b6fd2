//! Text syntax for preradical expressions.
//!
//! ```text
//! expr := soc | rad | zero | one
//!       | alpha(K@NAME) | omega(K@NAME) | beta(K@NAME)
//!       | trad(IK) | lep(K)
//!       | join(expr, ...) | meet(expr, ...) | comp(expr, expr)
//! ```
//!
//! `K` is a canonical index: into the submodule lattice of module `NAME`,
//! the two-sided ideals of the ring, or the linear filters of the ring.

use super::{FrozenPair, LinearFilter, Preradical};
use crate::error::{Error, Result};
use crate::modules::FiniteModule;
use crate::ring::FiniteRing;
use std::sync::{Arc, OnceLock};

/// Names and objects an expression may refer to.
pub struct PreradicalContext<'a> {
    ring: &'a Arc<FiniteRing>,
    modules: &'a [(String, Arc<FiniteModule>)],
    filters: OnceLock<Result<Vec<Arc<LinearFilter>>>>,
}

impl<'a> PreradicalContext<'a> {
    pub fn new(ring: &'a Arc<FiniteRing>, modules: &'a [(String, Arc<FiniteModule>)]) -> Self {
        PreradicalContext {
            ring,
            modules,
            filters: OnceLock::new(),
        }
    }

    fn module(&self, name: &str) -> Option<&Arc<FiniteModule>> {
        self.modules.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    fn filter(&self, k: usize) -> Result<Option<Arc<LinearFilter>>> {
        let all = self.filters.get_or_init(|| {
            LinearFilter::enumerate(self.ring).map(|v| v.into_iter().map(Arc::new).collect())
        });
        match all {
            Ok(v) => Ok(v.get(k).cloned()),
            Err(e) => Err(e.clone()),
        }
    }
}

/// Parses one expression. Positions in errors are 1-based within `text`.
pub fn parse_preradical(text: &str, ctx: &PreradicalContext<'_>) -> Result<Preradical> {
    parse_preradical_at(text, ctx, 1, 1)
}

/// As [`parse_preradical`], reporting positions as if `text` started at
/// the given line and column of a larger document.
pub fn parse_preradical_at(
    text: &str,
    ctx: &PreradicalContext<'_>,
    line: usize,
    column: usize,
) -> Result<Preradical> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        line,
        column,
        ctx,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("trailing input after expression"));
    }
    Ok(e)
}

struct Parser<'c, 'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    ctx: &'c PreradicalContext<'a>,
}

impl Parser<'_, '_> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.column + pos,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| c.is_alphanumeric() || *c == '_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a name"));
        }
        Ok((start, self.chars[start..self.pos].iter().collect()))
    }

    fn index(&mut self) -> Result<(usize, usize)> {
        let (start, w) = self.word()?;
        w.parse()
            .map(|k| (start, k))
            .map_err(|_| self.error_at(start, format!("expected an index, found `{w}`")))
    }

    fn expr(&mut self) -> Result<Preradical> {
        let (start, head) = self.word()?;
        let e = match head.as_str() {
            "soc" => Preradical::Soc,
            "rad" => Preradical::Rad,
            "zero" => Preradical::Zero,
            "one" => Preradical::One,
            "alpha" | "omega" | "beta" => {
                self.expect('(')?;
                let (_, k) = self.index()?;
                self.expect('@')?;
                let (npos, name) = self.word()?;
                self.expect(')')?;
                let m = self
                    .ctx
                    .module(&name)
                    .ok_or_else(|| Error::Unresolved(name.clone()))?;
                let pair = FrozenPair::new(name.clone(), m, k)
                    .map_err(|_| self.error_at(npos, format!("{name} has no submodule {k}")))?;
                match head.as_str() {
                    "alpha" => Preradical::alpha(pair)?,
                    "omega" => Preradical::omega(pair)?,
                    _ => Preradical::beta(pair),
                }
            }
            "trad" => {
                self.expect('(')?;
                let (ipos, w) = self.word()?;
                self.expect(')')?;
                let k: usize = w
                    .strip_prefix('I')
                    .unwrap_or(&w)
                    .parse()
                    .map_err(|_| self.error_at(ipos, format!("expected an ideal like I1, found `{w}`")))?;
                Preradical::trad(self.ctx.ring, k).map_err(|_| Error::Unresolved(format!("I{k}")))?
            }
            "lep" => {
                self.expect('(')?;
                let (_, k) = self.index()?;
                self.expect(')')?;
                let f = self
                    .ctx
                    .filter(k)?
                    .ok_or_else(|| Error::Unresolved(format!("lep({k})")))?;
                Preradical::LeftExact(f)
            }
            "join" | "meet" => {
                self.expect('(')?;
                let mut parts = vec![self.expr()?];
                while self.eat(',') {
                    parts.push(self.expr()?);
                }
                self.expect(')')?;
                if head == "join" {
                    Preradical::Join(parts)
                } else {
                    Preradical::Meet(parts)
                }
            }
            "comp" => {
                self.expect('(')?;
                let outer = self.expr()?;
                self.expect(',')?;
                let inner = self.expr()?;
                self.expect(')')?;
                Preradical::compose(outer, inner)
            }
            other => return Err(self.error_at(start, format!("unknown preradical `{other}`"))),
        };
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Arc<FiniteRing>, Vec<(String, Arc<FiniteModule>)>) {
        let r = FiniteRing::cyclic(4).unwrap();
        let m = FiniteModule::regular(&r).unwrap();
        (r, vec![("M".to_string(), m)])
    }

    #[test]
    fn round_trip() {
        let (r, mods) = setup();
        let ctx = PreradicalContext::new(&r, &mods);
        for src in [
            "comp(soc,trad(I2))",
            "join(alpha(1@M),omega(0@M),beta(2@M))",
            "meet(rad,lep(1),one,zero)",
        ] {
            let e = parse_preradical(src, &ctx).unwrap();
            assert_eq!(e.to_string(), src);
        }
        let e = parse_preradical(" comp( soc , trad(2) ) ", &ctx).unwrap();
        assert_eq!(e.to_string(), "comp(soc,trad(I2))");
        assert_eq!(e.depth(), 2);
    }

    #[test]
    fn errors() {
        let (r, mods) = setup();
        let ctx = PreradicalContext::new(&r, &mods);
        assert_eq!(
            parse_preradical("alpha(1@N)", &ctx).unwrap_err(),
            Error::Unresolved("N".into())
        );
        match parse_preradical("comp(soc trad(I1))", &ctx).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (1, 10)),
            e => panic!("{e}"),
        }
        assert!(matches!(
            parse_preradical_at("socx", &ctx, 7, 3).unwrap_err(),
            Error::Parse { line: 7, column: 3, .. }
        ));
        assert!(parse_preradical("trad(I9)", &ctx).is_err());
    }
}
