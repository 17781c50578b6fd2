//! Finite rings given by explicit addition and multiplication tables.

use crate::closure::{canonical_cmp, OperatorGroup};
use crate::error::{Error, Result};
use fixedbitset::FixedBitSet;
use std::fmt;
use std::sync::Arc;

/// Order bounds for rings and modules built over them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    pub ring: usize,
    pub module: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ring: 16,
            module: 64,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingProvenance {
    Cyclic,
    Matrix,
    Product,
    Quotient,
    Raw,
}

/// Description of a ring to construct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Cyclic(usize),
    Matrix(Box<RingSpec>, usize),
    Product(Vec<RingSpec>),
    /// Quotient by the two-sided ideal with this canonical index.
    Quotient(Box<RingSpec>, usize),
    Raw {
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
    },
}

impl RingSpec {
    /// Build the ring, validating every axiom.
    pub fn build(&self, caps: &Caps) -> Result<Arc<FiniteRing>> {
        match self {
            RingSpec::Cyclic(n) => FiniteRing::cyclic_with_caps(*n, caps),
            RingSpec::Matrix(base, k) => {
                let base = base.build(caps)?;
                FiniteRing::matrix(&base, *k)
            }
            RingSpec::Product(parts) => {
                let parts = parts
                    .iter()
                    .map(|p| p.build(caps))
                    .collect::<Result<Vec<_>>>()?;
                FiniteRing::product(&parts)
            }
            RingSpec::Quotient(base, idx) => {
                let base = base.build(caps)?;
                let ideals = base.ideals(Sidedness::TwoSided);
                let ideal = ideals.get(*idx).ok_or_else(|| {
                    Error::Unresolved(format!("I{idx} (ring has {} ideals)", ideals.len()))
                })?;
                Ok(base.quotient(ideal)?.0)
            }
            RingSpec::Raw { add, mul } => FiniteRing::from_tables(add, mul, caps),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Cyclic(n) => write!(f, "cyclic({n})"),
            RingSpec::Matrix(b, k) => write!(f, "matrix({b},{k})"),
            RingSpec::Product(parts) => {
                write!(f, "product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            RingSpec::Quotient(b, i) => write!(f, "quotient({b},I{i})"),
            RingSpec::Raw { add, mul } => {
                write!(f, "raw(add: {}; mul: {})", table_text(add), table_text(mul))
            }
        }
    }
}

/// Rows separated by commas, entries by spaces: `0 1, 1 0`.
pub fn table_text(rows: &[Vec<usize>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sidedness {
    Left,
    TwoSided,
}

/// An ideal of a ring, stored as its carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    pub carrier: FixedBitSet,
    pub sidedness: Sidedness,
}

impl Ideal {
    pub fn contains(&self, x: usize) -> bool {
        self.carrier.contains(x)
    }

    pub fn len(&self) -> usize {
        self.carrier.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> Vec<usize> {
        self.carrier.ones().collect()
    }
}

pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    zero: usize,
    one: usize,
    provenance: RingProvenance,
    description: String,
    caps: Caps,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order
            && self.zero == other.zero
            && self.one == other.one
            && self.add == other.add
            && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("order", &self.order)
            .field("description", &self.description)
            .finish()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.description)
    }
}

impl FiniteRing {
    pub fn cyclic(n: usize) -> Result<Arc<Self>> {
        Self::cyclic_with_caps(n, &Caps::default())
    }

    pub fn cyclic_with_caps(n: usize, caps: &Caps) -> Result<Arc<Self>> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic(0) is not a ring".into()));
        }
        check_cap("ring", n, caps.ring)?;
        let add = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let mul = (0..n * n).map(|i| (i / n) * (i % n) % n).collect();
        Self::checked(
            n,
            add,
            mul,
            RingProvenance::Cyclic,
            format!("cyclic({n})"),
            *caps,
        )
    }

    /// k×k matrices over `base`. Elements are entry tuples in row-major
    /// order, read as base-|R| numerals with entry (0,0) most significant.
    pub fn matrix(base: &Arc<FiniteRing>, k: usize) -> Result<Arc<Self>> {
        if k == 0 {
            return Err(Error::InvalidArgument("matrix size must be positive".into()));
        }
        let b = base.order;
        let caps = base.caps;
        let entries = k * k;
        let order = checked_pow(b, entries)
            .filter(|&o| o <= caps.ring)
            .ok_or(Error::Cap {
                what: "ring",
                order: b.saturating_pow(entries as u32),
                cap: caps.ring,
            })?;
        let decode = |mut x: usize| {
            let mut e = vec![0; entries];
            for slot in e.iter_mut().rev() {
                *slot = x % b;
                x /= b;
            }
            e
        };
        let encode = |e: &[usize]| e.iter().fold(0, |acc, &d| acc * b + d);
        let decoded: Vec<Vec<usize>> = (0..order).map(decode).collect();
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        let mut scratch = vec![0; entries];
        for x in 0..order {
            for y in 0..order {
                let (ex, ey) = (&decoded[x], &decoded[y]);
                for i in 0..entries {
                    scratch[i] = base.add(ex[i], ey[i]);
                }
                add[x * order + y] = encode(&scratch);
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = base.zero;
                        for l in 0..k {
                            acc = base.add(acc, base.mul(ex[i * k + l], ey[l * k + j]));
                        }
                        scratch[i * k + j] = acc;
                    }
                }
                mul[x * order + y] = encode(&scratch);
            }
        }
        Self::checked(
            order,
            add,
            mul,
            RingProvenance::Matrix,
            format!("matrix({},{k})", base.description),
            caps,
        )
    }

    /// Direct product; tuples ordered lexicographically, first factor most significant.
    pub fn product(parts: &[Arc<FiniteRing>]) -> Result<Arc<Self>> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty ring product".into()))?;
        let caps = first.caps;
        let order = parts
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.order))
            .filter(|&o| o <= caps.ring)
            .ok_or(Error::Cap {
                what: "ring",
                order: parts.iter().map(|p| p.order).product(),
                cap: caps.ring,
            })?;
        let radix = Radix::new(parts.iter().map(|p| p.order).collect());
        let mut add = vec![0; order * order];
        let mut mul = vec![0; order * order];
        for x in 0..order {
            let ex = radix.decode(x);
            for y in 0..order {
                let ey = radix.decode(y);
                let s: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.add(ex[i], ey[i]))
                    .collect();
                let m: Vec<usize> = parts
                    .iter()
                    .enumerate()
                    .map(|(i, p)| p.mul(ex[i], ey[i]))
                    .collect();
                add[x * order + y] = radix.encode(&s);
                mul[x * order + y] = radix.encode(&m);
            }
        }
        let description = format!(
            "product({})",
            parts
                .iter()
                .map(|p| p.description.as_str())
                .collect::<Vec<_>>()
                .join(",")
        );
        Self::checked(order, add, mul, RingProvenance::Product, description, caps)
    }

    /// Ring from raw tables, rows indexed by the left operand.
    pub fn from_tables(add: &[Vec<usize>], mul: &[Vec<usize>], caps: &Caps) -> Result<Arc<Self>> {
        let n = add.len();
        check_cap("ring", n, caps.ring)?;
        if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!(
                "raw ring tables must both be {n}x{n}"
            )));
        }
        Self::checked(
            n,
            add.concat(),
            mul.concat(),
            RingProvenance::Raw,
            format!("raw({n})"),
            *caps,
        )
    }

    fn checked(
        order: usize,
        add: Vec<usize>,
        mul: Vec<usize>,
        provenance: RingProvenance,
        description: String,
        caps: Caps,
    ) -> Result<Arc<Self>> {
        let (zero, neg) = check_abelian_group(order, &add)?;
        let n = order;
        let one = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| Error::axiom("multiplicative identity exists", &[]))?;
        if one == zero {
            return Err(Error::axiom("one differs from zero", &[one]));
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::axiom("multiplication is associative", &[a, b, c]));
                    }
                    let bc = add[b * n + c];
                    if mul[a * n + bc] != add[ab * n + mul[a * n + c]] {
                        return Err(Error::axiom("left distributivity", &[a, b, c]));
                    }
                    if mul[bc * n + a] != add[mul[b * n + a] * n + mul[c * n + a]] {
                        return Err(Error::axiom("right distributivity", &[a, b, c]));
                    }
                }
            }
        }
        Ok(Arc::new(FiniteRing {
            order,
            add,
            mul,
            neg,
            zero,
            one,
            provenance,
            description,
            caps,
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn provenance(&self) -> RingProvenance {
        self.provenance
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// A pair (a, b) with ab ≠ ba, if one exists.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let n = self.order;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn is_commutative(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub(crate) fn operator_group(&self, sidedness: Sidedness) -> OperatorGroup<'_> {
        let n = self.order;
        let mut ops: Vec<Vec<usize>> = (0..n).map(|r| self.mul[r * n..(r + 1) * n].to_vec()).collect();
        if sidedness == Sidedness::TwoSided {
            ops.extend((0..n).map(|r| (0..n).map(|x| self.mul(x, r)).collect()));
        }
        OperatorGroup {
            order: n,
            zero: self.zero,
            add: &self.add,
            ops,
        }
    }

    /// All ideals of the given sidedness, in canonical order (by size, then
    /// by element list). The zero ideal comes first and the ring last.
    pub fn ideals(&self, sidedness: Sidedness) -> Vec<Ideal> {
        self.operator_group(sidedness)
            .all_closed()
            .into_iter()
            .map(|carrier| Ideal { carrier, sidedness })
            .collect()
    }

    /// The ideal generated by `elems`.
    pub fn ideal_generated(&self, sidedness: Sidedness, elems: &[usize]) -> Ideal {
        Ideal {
            carrier: self.operator_group(sidedness).closure(elems.iter().copied()),
            sidedness,
        }
    }

    /// Checks closure of `carrier` for the given sidedness.
    pub fn ideal_from_carrier(&self, carrier: FixedBitSet, sidedness: Sidedness) -> Result<Ideal> {
        if carrier.len() != self.order {
            return Err(Error::InvalidArgument("carrier has wrong length".into()));
        }
        if !self.operator_group(sidedness).is_closed(&carrier) {
            return Err(Error::NotClosed(format!(
                "{:?} is not a {sidedness:?} ideal",
                carrier.ones().collect::<Vec<_>>()
            )));
        }
        Ok(Ideal { carrier, sidedness })
    }

    pub fn zero_ideal(&self, sidedness: Sidedness) -> Ideal {
        self.ideal_generated(sidedness, &[])
    }

    pub fn full_ideal(&self, sidedness: Sidedness) -> Ideal {
        Ideal {
            carrier: crate::closure::full_set(self.order),
            sidedness,
        }
    }

    /// (I : a) = {r | ra ∈ I}.
    pub fn colon(&self, ideal: &Ideal, a: usize) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order);
        out.extend((0..self.order).filter(|&r| ideal.contains(self.mul(r, a))));
        out
    }

    /// Quotient by a proper two-sided ideal. Cosets are numbered by their
    /// least representative; the second component maps each element to
    /// its coset.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(Arc<FiniteRing>, Vec<usize>)> {
        let two_sided = self.operator_group(Sidedness::TwoSided).is_closed(&ideal.carrier);
        if !two_sided {
            return Err(Error::NotTwoSided);
        }
        if ideal.contains(self.one) {
            return Err(Error::ImproperIdeal);
        }
        let (reps, proj) = cosets(self.order, &self.add, &ideal.carrier);
        let q = reps.len();
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                add[i * q + j] = proj[self.add(a, b)];
                mul[i * q + j] = proj[self.mul(a, b)];
            }
        }
        let ring = Self::checked(
            q,
            add,
            mul,
            RingProvenance::Quotient,
            format!("{}/{:?}", self.description, ideal.elements()),
            self.caps,
        )?;
        Ok((ring, proj))
    }

    /// Additive closure of {i·j}.
    pub fn ideal_product(&self, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
        let g = OperatorGroup {
            order: self.order,
            zero: self.zero,
            add: &self.add,
            ops: Vec::new(),
        };
        g.closure(a.ones().flat_map(|i| b.ones().map(move |j| self.mul(i, j))))
    }
}

/// Returns (zero, negation table) or the first failed group axiom.
pub(crate) fn check_abelian_group(n: usize, add: &[usize]) -> Result<(usize, Vec<usize>)> {
    if add.len() != n * n {
        return Err(Error::InvalidArgument("addition table has wrong size".into()));
    }
    if let Some(pos) = add.iter().position(|&v| v >= n) {
        return Err(Error::axiom("table entries in range", &[pos / n, pos % n]));
    }
    let zero = (0..n)
        .find(|&e| (0..n).all(|x| add[e * n + x] == x))
        .ok_or_else(|| Error::axiom("additive identity exists", &[]))?;
    let mut neg = vec![usize::MAX; n];
    for a in 0..n {
        neg[a] = (0..n)
            .find(|&b| add[a * n + b] == zero)
            .ok_or_else(|| Error::axiom("additive inverses exist", &[a]))?;
        for b in 0..n {
            if add[a * n + b] != add[b * n + a] {
                return Err(Error::axiom("addition is commutative", &[a, b]));
            }
            for c in 0..n {
                if add[add[a * n + b] * n + c] != add[a * n + add[b * n + c]] {
                    return Err(Error::axiom("addition is associative", &[a, b, c]));
                }
            }
        }
    }
    Ok((zero, neg))
}

/// Coset representatives (least element of each coset, ascending) and the
/// element-to-coset map.
pub(crate) fn cosets(
    order: usize,
    add: &[usize],
    sub: &FixedBitSet,
) -> (Vec<usize>, Vec<usize>) {
    let mut proj = vec![usize::MAX; order];
    let mut reps = Vec::new();
    for x in 0..order {
        if proj[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for s in sub.ones() {
            proj[add[x * order + s]] = id;
        }
    }
    (reps, proj)
}

pub(crate) fn check_cap(what: &'static str, order: usize, cap: usize) -> Result<()> {
    if order > cap {
        Err(Error::Cap { what, order, cap })
    } else {
        Ok(())
    }
}

fn checked_pow(b: usize, e: usize) -> Option<usize> {
    (0..e).try_fold(1usize, |acc, _| acc.checked_mul(b))
}

/// Mixed-radix numbering of tuples, first coordinate most significant.
#[derive(Debug, Clone)]
pub(crate) struct Radix {
    bases: Vec<usize>,
}

impl Radix {
    pub fn new(bases: Vec<usize>) -> Self {
        Radix { bases }
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.bases.len()];
        for (slot, &b) in out.iter_mut().zip(&self.bases).rev() {
            *slot = x % b;
            x /= b;
        }
        out
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.bases)
            .fold(0, |acc, (&d, &b)| acc * b + d)
    }
}

pub fn sort_ideals(ideals: &mut [Ideal]) {
    ideals.sort_by(|a, b| canonical_cmp(&a.carrier, &b.carrier));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize], n: usize) -> FixedBitSet {
        crate::closure::set_from(n, v.iter().copied())
    }

    #[test]
    fn cyclic_four() {
        let r = FiniteRing::cyclic(4).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.one(), 1);
        assert_eq!(r.mul(2, 2), 0);
        assert!(r.is_commutative());
    }

    #[test]
    fn cyclic_one_is_rejected() {
        let err = FiniteRing::cyclic(1).unwrap_err();
        assert!(matches!(err, Error::Axiom { axiom: "one differs from zero", .. }));
    }

    #[test]
    fn two_by_two_matrices_are_noncommutative() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let m = FiniteRing::matrix(&f2, 2).unwrap();
        assert_eq!(m.order(), 16);
        let (a, b) = m.noncommuting_pair().expect("witness");
        assert_ne!(m.mul(a, b), m.mul(b, a));
    }

    #[test]
    fn matrix_cap() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        assert!(matches!(
            FiniteRing::matrix(&f2, 3),
            Err(Error::Cap { order: 512, .. })
        ));
        let big = Caps { ring: 512, module: 64 };
        let f2 = FiniteRing::cyclic_with_caps(2, &big).unwrap();
        assert_eq!(FiniteRing::matrix(&f2, 3).unwrap().order(), 512);
    }

    #[test]
    fn ideals_of_z4() {
        let r = FiniteRing::cyclic(4).unwrap();
        let left = r.ideals(Sidedness::Left);
        let carriers: Vec<Vec<usize>> = left.iter().map(Ideal::elements).collect();
        assert_eq!(carriers, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn matrix_ring_is_simple() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let m = FiniteRing::matrix(&f2, 2).unwrap();
        assert_eq!(m.ideals(Sidedness::TwoSided).len(), 2);
        // zero, three minimal left ideals, the ring
        assert_eq!(m.ideals(Sidedness::Left).len(), 5);
    }

    #[test]
    fn quotients() {
        let r = FiniteRing::cyclic(4).unwrap();
        let i = r.ideal_from_carrier(set(&[0, 2], 4), Sidedness::TwoSided).unwrap();
        let (q, proj) = r.quotient(&i).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
        let (same, _) = r.quotient(&r.zero_ideal(Sidedness::TwoSided)).unwrap();
        assert_eq!(*same, *r);
        assert_eq!(
            r.quotient(&r.full_ideal(Sidedness::TwoSided)).unwrap_err(),
            Error::ImproperIdeal
        );

        let f2 = FiniteRing::cyclic(2).unwrap();
        let m = FiniteRing::matrix(&f2, 2).unwrap();
        let (mq, _) = m.quotient(&m.zero_ideal(Sidedness::TwoSided)).unwrap();
        assert_eq!(mq.order(), 16);
    }

    #[test]
    fn quotient_needs_two_sided() {
        let f2 = FiniteRing::cyclic(2).unwrap();
        let m = FiniteRing::matrix(&f2, 2).unwrap();
        let left = m.ideals(Sidedness::Left).remove(1);
        assert_eq!(m.quotient(&left).unwrap_err(), Error::NotTwoSided);
    }

    #[test]
    fn product_of_fields() {
        let r = RingSpec::Product(vec![RingSpec::Cyclic(2), RingSpec::Cyclic(3)])
            .build(&Caps::default())
            .unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.ideals(Sidedness::Left).len(), 4);
    }

    #[test]
    fn raw_tables_roundtrip_z3() {
        let add: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let mul: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| a * b % 3).collect()).collect();
        let r = FiniteRing::from_tables(&add, &mul, &Caps::default()).unwrap();
        assert_eq!(*r, *FiniteRing::cyclic(3).unwrap());
    }

    #[test]
    fn spec_display() {
        let s = RingSpec::Matrix(Box::new(RingSpec::Cyclic(2)), 2);
        assert_eq!(s.to_string(), "matrix(cyclic(2),2)");
        assert_eq!(s.build(&Caps::default()).unwrap().description(), "matrix(cyclic(2),2)");
    }
}
