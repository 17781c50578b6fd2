//! Hom-sets between finite modules.
//!
//! A generating set of the source is chosen greedily by element index; every
//! other element records how it was produced from earlier ones. Candidate
//! generator images are assigned one generator at a time and each partial
//! assignment is checked for additivity and linearity on the submodule the
//! assigned generators span, so inconsistent branches die early.

use super::{same_ring, FiniteModule, Submodule};
use crate::error::{Error, Result};
use std::ops::ControlFlow;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ModuleMorphism {
    map: Vec<usize>,
}

impl ModuleMorphism {
    /// Wraps a table after checking additivity and R-linearity exhaustively.
    pub fn new(source: &FiniteModule, target: &FiniteModule, map: Vec<usize>) -> Result<Self> {
        if !same_ring(source.ring(), target.ring()) {
            return Err(Error::RingMismatch);
        }
        if map.len() != source.order() || map.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidArgument("map table has wrong shape".into()));
        }
        if !is_linear(source, target, &map) {
            return Err(Error::InvalidArgument("map is not R-linear".into()));
        }
        Ok(ModuleMorphism { map })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn is_zero(&self, target: &FiniteModule) -> bool {
        self.map.iter().all(|&y| y == target.zero())
    }

    pub fn image(&self, target: &FiniteModule, sub: &Submodule) -> Submodule {
        target.submodule_unchecked(sub.iter().map(|x| self.map[x]))
    }

    pub fn full_image(&self, target: &FiniteModule) -> Submodule {
        target.submodule_unchecked(self.map.iter().copied())
    }

    pub fn kernel(&self, source: &FiniteModule, target: &FiniteModule) -> Submodule {
        self.preimage(source, &target.zero_submodule())
    }

    pub fn preimage(&self, source: &FiniteModule, sub: &Submodule) -> Submodule {
        source.submodule_unchecked(source.elements().filter(|&x| sub.contains(self.map[x])))
    }

    pub fn is_injective(&self, target: &FiniteModule) -> bool {
        let zero = target.zero();
        self.map.iter().filter(|&&y| y == zero).count() == 1
    }

    pub fn is_bijective(&self, target: &FiniteModule) -> bool {
        self.map.len() == target.order() && self.is_injective(target)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ModuleMorphism) -> ModuleMorphism {
        ModuleMorphism {
            map: inner.map.iter().map(|&x| self.map[x]).collect(),
        }
    }
}

pub(crate) fn is_linear(source: &FiniteModule, target: &FiniteModule, map: &[usize]) -> bool {
    let n = source.order();
    (0..n).all(|x| {
        (0..n).all(|y| map[source.add(x, y)] == target.add(map[x], map[y]))
            && source
                .ring()
                .elements()
                .all(|r| map[source.act(r, x)] == target.act(r, map[x]))
    })
}

#[derive(Debug, Clone, Copy)]
enum Recipe {
    Zero,
    Gen,
    Add(usize, usize),
    Act(usize, usize),
}

/// Greedy generating set and, for every element, how it is produced.
#[derive(Debug)]
pub(crate) struct Generation {
    pub gens: Vec<usize>,
    /// Elements in creation order, grouped by level.
    created: Vec<usize>,
    /// `levels[i]..levels[i+1]` indexes `created` for generator i.
    level_start: Vec<usize>,
    level: Vec<usize>,
    recipe: Vec<Recipe>,
}

impl Generation {
    pub fn new(m: &FiniteModule) -> Self {
        let n = m.order();
        let rn = m.ring().order();
        let mut recipe = vec![Recipe::Zero; n];
        let mut level = vec![usize::MAX; n];
        let mut created = vec![m.zero()];
        level[m.zero()] = 0;
        let mut gens = Vec::new();
        let mut level_start = vec![0, 1];
        for g in 0..n {
            if level[g] != usize::MAX {
                continue;
            }
            let lv = gens.len() + 1;
            recipe[g] = Recipe::Gen;
            gens.push(g);
            level[g] = lv;
            let mut i = created.len();
            created.push(g);
            while i < created.len() {
                let x = created[i];
                for r in 0..rn {
                    let y = m.act(r, x);
                    if level[y] == usize::MAX {
                        level[y] = lv;
                        recipe[y] = Recipe::Act(r, x);
                        created.push(y);
                    }
                }
                for j in 0..=i {
                    let z = created[j];
                    let y = m.add(x, z);
                    if level[y] == usize::MAX {
                        level[y] = lv;
                        recipe[y] = Recipe::Add(x, z);
                        created.push(y);
                    }
                }
                i += 1;
            }
            level_start.push(created.len());
        }
        Generation {
            gens,
            created,
            level_start,
            level,
            recipe,
        }
    }

    fn level_elems(&self, lv: usize) -> &[usize] {
        &self.created[self.level_start[lv]..self.level_start[lv + 1]]
    }
}

/// Visits every R-linear map `source → target` (in generator-image order,
/// not canonical order). Stops when the visitor breaks.
pub fn hom_visit(
    source: &FiniteModule,
    target: &FiniteModule,
    mut visit: impl FnMut(&ModuleMorphism) -> ControlFlow<()>,
) -> Result<()> {
    if !same_ring(source.ring(), target.ring()) {
        return Err(Error::RingMismatch);
    }
    let gen = source.generation();
    let mut images = vec![usize::MAX; source.order()];
    images[source.zero()] = target.zero();
    let mut scratch = ModuleMorphism { map: Vec::new() };
    let _ = search(source, target, gen, 1, &mut images, &mut scratch, &mut visit);
    Ok(())
}

fn search(
    source: &FiniteModule,
    target: &FiniteModule,
    gen: &Generation,
    lv: usize,
    images: &mut Vec<usize>,
    scratch: &mut ModuleMorphism,
    visit: &mut impl FnMut(&ModuleMorphism) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if lv > gen.gens.len() {
        scratch.map.clone_from(images);
        return visit(scratch);
    }
    let elems = gen.level_elems(lv);
    for cand in 0..target.order() {
        for &x in elems {
            images[x] = match gen.recipe[x] {
                Recipe::Gen => cand,
                Recipe::Add(a, b) => target.add(images[a], images[b]),
                Recipe::Act(r, a) => target.act(r, images[a]),
                Recipe::Zero => target.zero(),
            };
        }
        if consistent(source, target, gen, lv, elems, images) {
            search(source, target, gen, lv + 1, images, scratch, visit)?;
        }
    }
    for &x in elems {
        images[x] = usize::MAX;
    }
    ControlFlow::Continue(())
}

fn consistent(
    source: &FiniteModule,
    target: &FiniteModule,
    gen: &Generation,
    lv: usize,
    elems: &[usize],
    images: &[usize],
) -> bool {
    let known = &gen.created[..gen.level_start[lv + 1]];
    for &x in elems {
        let fx = images[x];
        for r in source.ring().elements() {
            if images[source.act(r, x)] != target.act(r, fx) {
                return false;
            }
        }
        for &y in known {
            let s = source.add(x, y);
            debug_assert!(gen.level[s] <= lv);
            if images[s] != target.add(fx, images[y]) {
                return false;
            }
        }
    }
    true
}

/// Hom_R(source, target) in canonical (lexicographic table) order.
pub fn hom_set(source: &FiniteModule, target: &FiniteModule) -> Result<Vec<ModuleMorphism>> {
    let mut out = Vec::new();
    hom_visit(source, target, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether some nonzero map `source → target` exists; stops at the first one.
pub fn exists_nonzero_hom(source: &FiniteModule, target: &FiniteModule) -> Result<bool> {
    let mut found = false;
    hom_visit(source, target, |f| {
        if f.is_zero(target) {
            ControlFlow::Continue(())
        } else {
            found = true;
            ControlFlow::Break(())
        }
    })?;
    Ok(found)
}
