//! The action of a finite family of preradicals on a submodule lattice,
//! (σ, N) ↦ σ(N).

use super::{FiniteBoundedLattice, FinitePoset, PosetAction};
use crate::error::Result;
use crate::modules::{FiniteModule, Submodule, SubmoduleLattice};
use crate::preradical::Preradical;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ModuleActionInstance {
    pub action: PosetAction,
    /// Poset element of each family member. Members that agree on every
    /// submodule of M share one element.
    pub member: Vec<usize>,
    /// Family index representing each poset element.
    pub representative: Vec<usize>,
    /// Lattice element i is the i-th submodule of M in canonical order.
    pub submodules: Vec<Submodule>,
}

/// Orders the family pointwise on the submodules of `m` (viewed as
/// modules) and builds the action on the submodule lattice of `m`.
pub fn module_action_instance(m: &Arc<FiniteModule>, family: &[Preradical]) -> Result<ModuleActionInstance> {
    let lattice = SubmoduleLattice::new(m);
    let subs = lattice.elements().to_vec();
    let embedded = subs
        .iter()
        .map(|n| m.submodule_module(n))
        .collect::<Result<Vec<_>>>()?;
    let mut values: Vec<Vec<usize>> = Vec::new();
    let mut member = Vec::with_capacity(family.len());
    let mut representative = Vec::new();
    for (i, sigma) in family.iter().enumerate() {
        let row = embedded
            .iter()
            .map(|e| {
                let v = e.push_forward(m, &sigma.evaluate(&e.module)?);
                Ok(lattice.index_of(&v).expect("values are submodules"))
            })
            .collect::<Result<Vec<usize>>>()?;
        match values.iter().position(|r| *r == row) {
            Some(p) => member.push(p),
            None => {
                member.push(values.len());
                representative.push(i);
                values.push(row);
            }
        }
    }
    let poset = FinitePoset::new(values.len(), |a, b| {
        (0..subs.len()).all(|n| lattice.leq(values[a][n], values[b][n]))
    })?;
    let lat = FiniteBoundedLattice::from_submodules(&lattice);
    let action = PosetAction::new(poset, lat, |s, n| values[s][n])?;
    Ok(ModuleActionInstance {
        action,
        member,
        representative,
        submodules: subs,
    })
}
