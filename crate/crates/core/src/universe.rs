//! Finite families of modules standing in for the whole module category.

use crate::error::{Error, Result};
use crate::modules::{are_isomorphic, same_ring, FiniteModule};
use crate::ring::FiniteRing;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UniverseParams {
    /// Largest number of summands in generated direct sums.
    pub depth: usize,
}

impl Default for UniverseParams {
    fn default() -> Self {
        UniverseParams { depth: 2 }
    }
}

#[derive(Debug, Clone)]
pub struct UniverseModule {
    pub label: String,
    pub module: Arc<FiniteModule>,
}

/// A deterministic, cap-bounded list of nonzero modules over one ring.
///
/// Generated universes hold the regular module, its nonzero quotients
/// (which include every simple module) up to isomorphism, and direct sums
/// of up to `depth` of those whose order fits under the module cap.
#[derive(Debug, Clone)]
pub struct Universe {
    ring: Arc<FiniteRing>,
    modules: Vec<UniverseModule>,
    params: Option<UniverseParams>,
}

impl Universe {
    pub fn generate(ring: &Arc<FiniteRing>, params: UniverseParams) -> Result<Self> {
        if params.depth == 0 {
            return Err(Error::InvalidArgument("universe depth must be at least 1".into()));
        }
        let regular = FiniteModule::regular(ring)?;
        let mut base: Vec<UniverseModule> = Vec::new();
        let subs = regular.submodules().to_vec();
        for (i, sub) in subs.iter().enumerate() {
            if i + 1 == subs.len() {
                break;
            }
            let q = regular.quotient(sub)?.module;
            if base.iter().any(|b| are_isomorphic(&b.module, &q)) {
                continue;
            }
            let label = if i == 0 { "R".to_string() } else { format!("R/L{i}") };
            base.push(UniverseModule { label, module: q });
        }
        let mut modules = base.clone();
        let cap = ring.caps().module;
        for size in 2..=params.depth {
            for combo in multisets(base.len(), size) {
                let order = combo
                    .iter()
                    .try_fold(1usize, |acc, &i| acc.checked_mul(base[i].module.order()));
                if order.is_none_or(|o| o > cap) {
                    continue;
                }
                let parts: Vec<Arc<FiniteModule>> =
                    combo.iter().map(|&i| Arc::clone(&base[i].module)).collect();
                let sum = FiniteModule::direct_sum(&parts)?.module;
                let label = combo
                    .iter()
                    .map(|&i| base[i].label.as_str())
                    .collect::<Vec<_>>()
                    .join(" ⊕ ");
                modules.push(UniverseModule { label, module: sum });
            }
        }
        Ok(Universe {
            ring: Arc::clone(ring),
            modules,
            params: Some(params),
        })
    }

    /// An explicit universe. Zero modules are dropped; at least one nonzero
    /// module must remain.
    pub fn from_modules(
        ring: &Arc<FiniteRing>,
        modules: impl IntoIterator<Item = (String, Arc<FiniteModule>)>,
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (label, module) in modules {
            if !same_ring(module.ring(), ring) {
                return Err(Error::RingMismatch);
            }
            if !module.is_zero_module() {
                out.push(UniverseModule { label, module });
            }
        }
        if out.is_empty() {
            return Err(Error::InvalidArgument("universe has no nonzero module".into()));
        }
        Ok(Universe {
            ring: Arc::clone(ring),
            modules: out,
            params: None,
        })
    }

    /// Every submodule of `m`, each as a module in its own right.
    pub fn of_submodules(m: &Arc<FiniteModule>) -> Result<Self> {
        let mods = m
            .submodules()
            .iter()
            .map(|s| Ok((s.to_string(), m.submodule_module(s)?.module)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_modules(m.ring(), mods)
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn modules(&self) -> &[UniverseModule] {
        &self.modules
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<FiniteModule>> {
        self.modules.iter().map(|m| &m.module)
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn params(&self) -> Option<UniverseParams> {
        self.params
    }
}

/// Non-decreasing index sequences of the given length.
fn multisets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}
