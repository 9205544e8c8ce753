//! Patterns `p : S -> A` and the structural predicates that drive the
//! idempotency theorems: constant, symmetrical, and quasi-constant.

use std::fmt;

use crate::group::{Element, Group, GroupSubset};
use crate::{Error, Result};

/// A finite alphabet `{0, .., k-1}` with `k >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: u8,
}

impl Alphabet {
    pub fn new(size: u8) -> Result<Self> {
        if size < 2 {
            return Err(Error::InvalidInput(
                "alphabet must have at least two symbols".into(),
            ));
        }
        Ok(Alphabet { size })
    }

    pub fn binary() -> Self {
        Alphabet { size: 2 }
    }

    pub fn size(&self) -> u8 {
        self.size
    }

    pub fn contains(&self, symbol: u8) -> bool {
        symbol < self.size
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> {
        0..self.size
    }
}

/// Mixed-radix code of a fragment in display order, leftmost digit most
/// significant. For `k = 2` and `S = {-1,0,1}` the code of `z` is the
/// 3-bit number `z(-1) z(0) z(1)`.
pub(crate) fn code_of(values: &[u8], k: u8) -> usize {
    values
        .iter()
        .fold(0usize, |acc, &v| acc * k as usize + v as usize)
}

/// Inverse of [`code_of`]: writes the digits of `code` into `out`.
pub(crate) fn decode_into(mut code: usize, k: u8, out: &mut [u8]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % k as usize) as u8;
        code /= k as usize;
    }
}

/// A pattern `p : S -> A` on an ordered domain with `e in S`.
///
/// Values are stored in the domain's display order, so the display string
/// `p(s_1) p(s_2) ... p(s_n)` is the stored value sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    domain: GroupSubset,
    values: Vec<u8>,
    alphabet: Alphabet,
}

impl Pattern {
    pub fn new(domain: GroupSubset, values: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if !domain.contains_identity() {
            return Err(Error::InvalidInput(
                "pattern domain must contain the identity".into(),
            ));
        }
        if values.len() != domain.len() {
            return Err(Error::InvalidInput(format!(
                "pattern has {} values for a domain of {} elements",
                values.len(),
                domain.len()
            )));
        }
        if let Some(&v) = values.iter().find(|&&v| !alphabet.contains(v)) {
            return Err(Error::InvalidInput(format!(
                "symbol {v} is outside the alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Pattern {
            domain,
            values,
            alphabet,
        })
    }

    /// The constant pattern `b^S`.
    pub fn constant(domain: GroupSubset, symbol: u8, alphabet: Alphabet) -> Result<Self> {
        let n = domain.len();
        Pattern::new(domain, vec![symbol; n], alphabet)
    }

    /// Pattern over `Z` from an interval-style domain and digit string.
    pub fn from_digits(domain: GroupSubset, digits: &str, alphabet: Alphabet) -> Result<Self> {
        let values = digits
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad symbol digit {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Pattern::new(domain, values, alphabet)
    }

    pub fn domain(&self) -> &GroupSubset {
        &self.domain
    }

    pub fn group(&self) -> &Group {
        self.domain.group()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a pattern always contains the identity
    }

    pub fn value_at(&self, e: &Element) -> Option<u8> {
        self.domain.position(e).map(|i| self.values[i])
    }

    /// `p(e)`.
    pub fn at_identity(&self) -> u8 {
        let e = self.group().identity();
        self.value_at(&e).expect("domain contains the identity")
    }

    /// True iff `p(s) = p(e)` for all `s`.
    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// True iff `S = S^{-1}` and `p(s) = p(s^{-1})` for all `s`.
    pub fn is_symmetrical(&self) -> bool {
        let group = self.group().clone();
        self.domain.iter().enumerate().all(|(i, s)| {
            self.domain
                .position(&group.invert(s))
                .is_some_and(|j| self.values[i] == self.values[j])
        })
    }

    /// All `r in S` such that `p` restricted to `S \ {r}` is constant
    /// while `p` itself is not. For `|S| >= 3` there is at most one; for a
    /// nonconstant pattern on a two-element domain both elements qualify.
    pub fn quasi_constant_candidates(&self) -> Vec<Element> {
        if self.is_constant() {
            return Vec::new();
        }
        self.domain
            .iter()
            .enumerate()
            .filter(|&(i, _)| {
                let mut rest = self
                    .values
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &v)| v);
                let first = rest.next();
                first.is_none_or(|f| rest.all(|v| v == f))
            })
            .map(|(_, e)| e.clone())
            .collect()
    }

    /// The nonconstant term of a quasi-constant pattern, or `None` when the
    /// pattern is constant or not quasi-constant. When both elements of a
    /// two-element domain qualify, the non-identity one is returned.
    pub fn quasi_constant_term(&self) -> Option<Element> {
        let candidates = self.quasi_constant_candidates();
        let e = self.group().identity();
        candidates
            .iter()
            .find(|&r| *r != e)
            .or_else(|| candidates.first())
            .cloned()
    }

    /// The pattern order: `p <= q` iff `S_1` is contained in `S_2` and
    /// `p = q` restricted to `S_1`. Patterns over different groups or
    /// alphabets are simply not comparable.
    pub fn leq(&self, other: &Pattern) -> bool {
        if self.group() != other.group() || self.alphabet != other.alphabet {
            return false;
        }
        self.domain.iter().enumerate().all(|(i, s)| {
            other
                .value_at(s)
                .is_some_and(|v| v == self.values[i])
        })
    }

    /// Display string `p(s_1)p(s_2)...p(s_n)` along the domain order.
    /// Symbols beyond one digit are joined with dashes.
    pub fn display_string(&self) -> String {
        if self.alphabet.size() <= 10 {
            self.values.iter().map(|v| (b'0' + v) as char).collect()
        } else {
            self.values
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("-")
        }
    }

    /// Relabels the pattern through an alphabet permutation.
    pub fn relabel(&self, perm: &[u8]) -> Result<Pattern> {
        if perm.len() != self.alphabet.size() as usize {
            return Err(Error::InvalidInput("permutation size mismatch".into()));
        }
        let values = self.values.iter().map(|&v| perm[v as usize]).collect();
        Pattern::new(self.domain.clone(), values, self.alphabet)
    }

    /// All `k^|S|` patterns on `S`, in lexicographic display-string order.
    pub fn enumerate(
        domain: GroupSubset,
        alphabet: Alphabet,
    ) -> Result<impl Iterator<Item = Pattern>> {
        if !domain.contains_identity() {
            return Err(Error::InvalidInput(
                "pattern domain must contain the identity".into(),
            ));
        }
        let total = crate::checked_table_len(alphabet.size(), domain.len())?;
        let n = domain.len();
        Ok((0..total).map(move |code| {
            let mut values = vec![0u8; n];
            decode_into(code, alphabet.size(), &mut values);
            Pattern {
                domain: domain.clone(),
                values,
                alphabet,
            }
        }))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {}", self.display_string(), self.domain)
    }
}
