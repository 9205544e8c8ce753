//! Group arithmetic and finite-subset algebra.
//!
//! Two carriers are supported: free abelian groups `Z^d` (elements are
//! integer vectors under addition) and finite groups presented by a Cayley
//! table (elements are indices `0..n`). Every other module builds on the
//! subset operations here: products `TS`, inverses `S^{-1}`, and centered
//! restriction of a window fragment.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A finite group presented by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    identity: usize,
    /// Row-major: `table[i * order + j]` is the index of `g_i * g_j`.
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl CayleyTable {
    /// Builds a table and verifies the group axioms by exhaustion:
    /// Latin-square rows and columns, a two-sided identity, two-sided
    /// inverses, and associativity.
    pub fn new(order: usize, identity: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidCayley("order must be positive".into()));
        }
        if identity >= order {
            return Err(Error::InvalidCayley(format!(
                "identity index {identity} out of range for order {order}"
            )));
        }
        if rows.len() != order || rows.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidCayley(format!(
                "table must be {order}x{order}"
            )));
        }
        let mut table = Vec::with_capacity(order * order);
        for row in &rows {
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidCayley(format!("entry {v} out of range")));
                }
                table.push(v);
            }
        }
        // Latin square.
        for i in 0..order {
            let mut seen_row = vec![false; order];
            let mut seen_col = vec![false; order];
            for j in 0..order {
                let r = table[i * order + j];
                let c = table[j * order + i];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InvalidCayley(format!(
                        "row/column {i} is not a permutation"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Identity acts trivially.
        for i in 0..order {
            if table[identity * order + i] != i || table[i * order + identity] != i {
                return Err(Error::InvalidCayley(format!(
                    "index {identity} is not a two-sided identity"
                )));
            }
        }
        // Inverses.
        let mut inverse = vec![usize::MAX; order];
        for i in 0..order {
            for j in 0..order {
                if table[i * order + j] == identity && table[j * order + i] == identity {
                    inverse[i] = j;
                }
            }
            if inverse[i] == usize::MAX {
                return Err(Error::InvalidCayley(format!("element {i} has no inverse")));
            }
        }
        // Associativity by exhaustion.
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(Error::InvalidCayley(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(CayleyTable {
            order,
            identity,
            table,
            inverse,
        })
    }

    /// The cyclic group of order `n`, identity 0, `i * j = (i + j) mod n`.
    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        CayleyTable::new(n, 0, rows).expect("cyclic table is a group")
    }

    /// Direct product; element `(a, b)` gets index `a * |H| + b`.
    pub fn direct_product(g: &CayleyTable, h: &CayleyTable) -> Self {
        let n = g.order * h.order;
        let rows = (0..n)
            .map(|i| {
                let (a1, b1) = (i / h.order, i % h.order);
                (0..n)
                    .map(|j| {
                        let (a2, b2) = (j / h.order, j % h.order);
                        g.table[a1 * g.order + a2] * h.order + h.table[b1 * h.order + b2]
                    })
                    .collect()
            })
            .collect();
        CayleyTable::new(n, g.identity * h.order + h.identity, rows)
            .expect("product of groups is a group")
    }

    /// The symmetric group on three points. Elements are the permutations
    /// of `{0,1,2}` in lexicographic one-line order:
    /// `012, 021, 102, 120, 201, 210`; composition is `(st)(x) = s(t(x))`.
    pub fn symmetric_3() -> Self {
        let perms: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let index_of = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let rows = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index_of([s[t[0]], s[t[1]], s[t[2]]]))
                    .collect()
            })
            .collect();
        CayleyTable::new(6, 0, rows).expect("S3 table is a group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn multiply(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order + j]
    }

    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }

    /// Rows of the multiplication table, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| self.table[i * self.order..(i + 1) * self.order].to_vec())
            .collect()
    }
}

/// A group carrier: free abelian of a given rank, or finite by Cayley table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Group {
    FreeAbelian { rank: usize },
    Finite(Arc<CayleyTable>),
}

impl Group {
    /// `Z^d`.
    pub fn free_abelian(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        Ok(Group::FreeAbelian { rank })
    }

    /// The integers.
    pub fn integers() -> Self {
        Group::FreeAbelian { rank: 1 }
    }

    pub fn finite(table: CayleyTable) -> Self {
        Group::Finite(Arc::new(table))
    }

    pub fn identity(&self) -> Element {
        match self {
            Group::FreeAbelian { rank } => Element::Vector(vec![0; *rank]),
            Group::Finite(t) => Element::Index(t.identity_index()),
        }
    }

    /// Validates that `e` is an element of this group.
    pub fn check_element(&self, e: &Element) -> Result<()> {
        match (self, e) {
            (Group::FreeAbelian { rank }, Element::Vector(v)) if v.len() == *rank => Ok(()),
            (Group::Finite(t), Element::Index(i)) if *i < t.order() => Ok(()),
            _ => Err(Error::InvalidElement(format!(
                "{e} does not belong to {self}"
            ))),
        }
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        match (self, a, b) {
            (Group::FreeAbelian { .. }, Element::Vector(x), Element::Vector(y)) => {
                Element::Vector(x.iter().zip(y).map(|(p, q)| p + q).collect())
            }
            (Group::Finite(t), Element::Index(i), Element::Index(j)) => {
                Element::Index(t.multiply(*i, *j))
            }
            _ => panic!("elements do not match the group carrier"),
        }
    }

    pub fn invert(&self, a: &Element) -> Element {
        match (self, a) {
            (Group::FreeAbelian { .. }, Element::Vector(x)) => {
                Element::Vector(x.iter().map(|p| -p).collect())
            }
            (Group::Finite(t), Element::Index(i)) => Element::Index(t.inverse_of(*i)),
            _ => panic!("element does not match the group carrier"),
        }
    }

    /// Number of elements for finite carriers.
    pub fn finite_order(&self) -> Option<usize> {
        match self {
            Group::FreeAbelian { .. } => None,
            Group::Finite(t) => Some(t.order()),
        }
    }

    pub fn is_integers(&self) -> bool {
        matches!(self, Group::FreeAbelian { rank: 1 })
    }

    /// All elements of a finite carrier, in index order.
    pub fn all_elements(&self) -> Option<Vec<Element>> {
        self.finite_order()
            .map(|n| (0..n).map(Element::Index).collect())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::FreeAbelian { rank } => write!(f, "zd:{rank}"),
            Group::Finite(t) => write!(f, "finite group of order {}", t.order()),
        }
    }
}

/// A group element: an integer vector for free abelian carriers, an index
/// into the Cayley table for finite ones. The derived `Ord` is the canonical
/// element order (lexicographic on vectors, index order on finite groups).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Vector(Vec<i64>),
    Index(usize),
}

impl Element {
    /// Convenience constructor for integers in `Z`.
    pub fn int(n: i64) -> Self {
        Element::Vector(vec![n])
    }

    pub fn vector(v: Vec<i64>) -> Self {
        Element::Vector(v)
    }

    /// The integer behind a rank-1 vector element.
    pub fn as_int(&self) -> Option<i64> {
        match self {
            Element::Vector(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) if v.len() == 1 => write!(f, "{}", v[0]),
            Element::Vector(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Element::Index(i) => write!(f, "{i}"),
        }
    }
}

/// An ordered finite subset of a group.
///
/// The member order is the *display order*: pattern strings and rule tables
/// are read along it. [`GroupSubset::canonical`] sorts members into the
/// canonical element order; [`GroupSubset::with_display_order`] preserves a
/// user-supplied order verbatim.
#[derive(Debug, Clone)]
pub struct GroupSubset {
    group: Group,
    members: Vec<Element>,
    index: HashMap<Element, usize>,
}

impl PartialEq for GroupSubset {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.members == other.members
    }
}

impl Eq for GroupSubset {}

impl std::hash::Hash for GroupSubset {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.group.hash(state);
        self.members.hash(state);
    }
}

impl GroupSubset {
    /// Builds a subset in canonical order, deduplicating members.
    pub fn canonical(group: Group, mut members: Vec<Element>) -> Result<Self> {
        for e in &members {
            group.check_element(e)?;
        }
        members.sort();
        members.dedup();
        Ok(Self::assemble(group, members))
    }

    /// Builds a subset whose member order is preserved verbatim.
    /// Duplicate members are rejected.
    pub fn with_display_order(group: Group, members: Vec<Element>) -> Result<Self> {
        for e in &members {
            group.check_element(e)?;
        }
        let mut seen = members.to_vec();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidInput("duplicate element in subset".into()));
        }
        Ok(Self::assemble(group, members))
    }

    /// Integer interval `{lo, ..., hi}` in `Z`, ascending.
    pub fn int_range(lo: i64, hi: i64) -> Self {
        let members = (lo..=hi).map(Element::int).collect();
        Self::assemble(Group::integers(), members)
    }

    /// Integers in `Z`, in the given order.
    pub fn ints(values: &[i64]) -> Result<Self> {
        GroupSubset::with_display_order(
            Group::integers(),
            values.iter().copied().map(Element::int).collect(),
        )
    }

    fn assemble(group: Group, members: Vec<Element>) -> Self {
        let index = members
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        GroupSubset {
            group,
            members,
            index,
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index.contains_key(e)
    }

    /// Position of `e` in display order.
    pub fn position(&self, e: &Element) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&self.group.identity())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.members.iter()
    }

    /// The subset product `TS = { ts : t in T, s in S }`, canonically ordered.
    pub fn product(&self, other: &GroupSubset) -> Result<GroupSubset> {
        if self.group != other.group {
            return Err(Error::DomainMismatch(
                "subset product requires a common group".into(),
            ));
        }
        let mut members = Vec::with_capacity(self.len() * other.len());
        for t in &self.members {
            for s in &other.members {
                members.push(self.group.multiply(t, s));
            }
        }
        GroupSubset::canonical(self.group.clone(), members)
    }

    /// `{ s^{-1} : s in S }`, canonically ordered.
    pub fn inverse(&self) -> GroupSubset {
        let members = self.members.iter().map(|e| self.group.invert(e)).collect();
        GroupSubset::canonical(self.group.clone(), members).expect("members are valid")
    }

    /// Whether `S = S^{-1}`.
    pub fn is_inverse_closed(&self) -> bool {
        self.members
            .iter()
            .all(|e| self.contains(&self.group.invert(e)))
    }

    /// Union as a canonically ordered subset.
    pub fn union(&self, other: &GroupSubset) -> Result<GroupSubset> {
        if self.group != other.group {
            return Err(Error::DomainMismatch(
                "subset union requires a common group".into(),
            ));
        }
        let mut members = self.members.clone();
        members.extend_from_slice(&other.members);
        GroupSubset::canonical(self.group.clone(), members)
    }

    /// Same member set regardless of display order.
    pub fn same_set(&self, other: &GroupSubset) -> bool {
        self.group == other.group
            && self.len() == other.len()
            && self.members.iter().all(|e| other.contains(e))
    }

    /// Whether every member of `self` lies in `other`.
    pub fn subset_of(&self, other: &GroupSubset) -> bool {
        self.group == other.group && self.members.iter().all(|e| other.contains(e))
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Restriction of a shifted window fragment: returns `t -> z(st)` for
/// `t in S`, where `z` is a fragment over `window` in display order.
/// This is `(s^{-1} . z)` restricted to `S`. Errors when `sS` leaves the
/// window.
pub fn centered_restriction(
    window: &GroupSubset,
    values: &[u8],
    s: &Element,
    target: &GroupSubset,
) -> Result<Vec<u8>> {
    if window.group() != target.group() {
        return Err(Error::DomainMismatch(
            "window and target must share a group".into(),
        ));
    }
    if values.len() != window.len() {
        return Err(Error::InvalidInput(
            "fragment length does not match window".into(),
        ));
    }
    window.group().check_element(s)?;
    target
        .iter()
        .map(|t| {
            let st = window.group().multiply(s, t);
            window
                .position(&st)
                .map(|i| values[i])
                .ok_or_else(|| Error::OutOfWindow(format!("{st} is outside {window}")))
        })
        .collect()
}
