//! Total local rules `A^S -> A` with dense tables, the star composition
//! of local rules, memory-set extension and reduction, Wolfram numbering,
//! and detection of the pattern form.

use std::fmt;

use crate::group::{Element, Group, GroupSubset};
use crate::pattern::{code_of, decode_into, Alphabet, Pattern};
use crate::{par, Error, Result};

/// A local rule `mu : A^S -> A` stored as a dense table of `k^|S|` output
/// symbols. Entry `i` is the output on the fragment whose mixed-radix code
/// (display order, leftmost most significant) is `i`; for `k = 2` and
/// `S = {-1,0,1}` that matches the usual `111 .. 000` table convention.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalRule {
    memory: GroupSubset,
    alphabet: Alphabet,
    table: Vec<u8>,
}

impl LocalRule {
    pub fn new(memory: GroupSubset, alphabet: Alphabet, table: Vec<u8>) -> Result<Self> {
        let expected = crate::checked_table_len(alphabet.size(), memory.len())?;
        if table.len() != expected {
            return Err(Error::InvalidInput(format!(
                "table has {} entries, expected {expected}",
                table.len()
            )));
        }
        if let Some(&v) = table.iter().find(|&&v| !alphabet.contains(v)) {
            return Err(Error::InvalidInput(format!(
                "table output {v} outside alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(LocalRule {
            memory,
            alphabet,
            table,
        })
    }

    /// The identity rule: memory `{e}`, output `z(e)`.
    pub fn identity(group: &Group, alphabet: Alphabet) -> Self {
        let memory = GroupSubset::canonical(group.clone(), vec![group.identity()])
            .expect("identity is a valid element");
        let table = alphabet.symbols().collect();
        LocalRule {
            memory,
            alphabet,
            table,
        }
    }

    /// A constant rule with empty memory.
    pub fn constant(group: &Group, alphabet: Alphabet, symbol: u8) -> Result<Self> {
        if !alphabet.contains(symbol) {
            return Err(Error::InvalidInput(format!("symbol {symbol} out of range")));
        }
        let memory = GroupSubset::canonical(group.clone(), Vec::new())?;
        Ok(LocalRule {
            memory,
            alphabet,
            table: vec![symbol],
        })
    }

    /// The rule of the pattern CA: maps `p` to `write` and every other
    /// fragment to its value at the identity. Refuses `write = p(e)`,
    /// which would produce the identity CA.
    pub fn from_pattern(p: &Pattern, write: u8) -> Result<Self> {
        if !p.alphabet().contains(write) {
            return Err(Error::InvalidInput(format!("symbol {write} out of range")));
        }
        if write == p.at_identity() {
            return Err(Error::IdentityRule(write));
        }
        Self::from_pattern_allowing_identity(p, write)
    }

    /// As [`LocalRule::from_pattern`] but permits `write = p(e)` for
    /// callers that explicitly want the identity CA in pattern form.
    pub fn from_pattern_allowing_identity(p: &Pattern, write: u8) -> Result<Self> {
        let k = p.alphabet().size();
        let n = p.domain().len();
        let e_pos = p
            .domain()
            .position(&p.group().identity())
            .expect("pattern domain contains e");
        let p_code = code_of(p.values(), k);
        let len = crate::checked_table_len(k, n)?;
        let table = par::table_from_fn(len, |code| {
            if code == p_code {
                write
            } else {
                let mut buf = vec![0u8; n];
                decode_into(code, k, &mut buf);
                buf[e_pos]
            }
        });
        Ok(LocalRule {
            memory: p.domain().clone(),
            alphabet: p.alphabet(),
            table,
        })
    }

    /// The elementary CA with the given Wolfram number: carrier `Z`,
    /// memory `{-1,0,1}`, binary alphabet.
    pub fn elementary(number: u8) -> Self {
        let memory = GroupSubset::int_range(-1, 1);
        let table = (0..8).map(|i| (number >> i) & 1).collect();
        LocalRule {
            memory,
            alphabet: Alphabet::binary(),
            table,
        }
    }

    pub fn memory(&self) -> &GroupSubset {
        &self.memory
    }

    pub fn group(&self) -> &Group {
        self.memory.group()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    /// Applies the rule to a fragment given in memory display order.
    pub fn evaluate(&self, fragment: &[u8]) -> u8 {
        debug_assert_eq!(fragment.len(), self.memory.len());
        self.table[code_of(fragment, self.alphabet.size())]
    }

    /// The local rule of the composite CA: memory `TS`, and
    /// `(mu * nu)(z) = mu((nu(z_t))_{t in T})` with `z_t(s) = z(ts)`.
    pub fn star(&self, other: &LocalRule) -> Result<LocalRule> {
        if self.group() != other.group() {
            return Err(Error::DomainMismatch(
                "star requires a common group".into(),
            ));
        }
        if self.alphabet != other.alphabet {
            return Err(Error::DomainMismatch(
                "star requires a common alphabet".into(),
            ));
        }
        let window = self.memory.product(&other.memory)?;
        let positions = translate_positions(&self.memory, &other.memory, &window)?;
        let k = self.alphabet.size();
        let len = crate::checked_table_len(k, window.len())?;
        let nw = window.len();
        let nt = self.memory.len();
        let ns = other.memory.len();
        let table = par::table_from_fn(len, |code| {
            let mut z = vec![0u8; nw];
            decode_into(code, k, &mut z);
            let mut outer = vec![0u8; nt];
            let mut inner = vec![0u8; ns];
            for (ti, row) in positions.iter().enumerate() {
                for (si, &pos) in row.iter().enumerate() {
                    inner[si] = z[pos];
                }
                outer[ti] = other.evaluate(&inner);
            }
            self.evaluate(&outer)
        });
        Ok(LocalRule {
            memory: window,
            alphabet: self.alphabet,
            table,
        })
    }

    /// Extends the rule to a larger memory set: output depends only on the
    /// restriction to the original memory.
    pub fn extend(&self, window: &GroupSubset) -> Result<LocalRule> {
        if window.group() != self.group() {
            return Err(Error::DomainMismatch(
                "extension window must share the group".into(),
            ));
        }
        if !self.memory.subset_of(window) {
            return Err(Error::OutOfWindow(format!(
                "memory {} is not contained in {}",
                self.memory, window
            )));
        }
        let positions: Vec<usize> = self
            .memory
            .iter()
            .map(|s| window.position(s).expect("checked inclusion"))
            .collect();
        let k = self.alphabet.size();
        let len = crate::checked_table_len(k, window.len())?;
        let nw = window.len();
        let ns = self.memory.len();
        let table = par::table_from_fn(len, |code| {
            let mut z = vec![0u8; nw];
            decode_into(code, k, &mut z);
            let mut inner = vec![0u8; ns];
            for (si, &pos) in positions.iter().enumerate() {
                inner[si] = z[pos];
            }
            self.evaluate(&inner)
        });
        Ok(LocalRule {
            memory: window.clone(),
            alphabet: self.alphabet,
            table,
        })
    }

    /// Whether two rules define the same CA: both are extended to the
    /// union of their memory sets and the tables compared.
    pub fn equals(&self, other: &LocalRule) -> Result<bool> {
        if self.group() != other.group() || self.alphabet != other.alphabet {
            return Err(Error::DomainMismatch(
                "rule comparison requires a common group and alphabet".into(),
            ));
        }
        let window = self.memory.union(&other.memory)?;
        let a = self.extend(&window)?;
        let b = other.extend(&window)?;
        Ok(a.table == b.table)
    }

    /// The minimal memory set and the rule restricted to it. A memory
    /// element is kept iff it is essential: some pair of fragments
    /// differing only there produces different outputs. Constant rules
    /// reduce to the empty memory set.
    pub fn minimal_memory_set(&self) -> (GroupSubset, LocalRule) {
        let k = self.alphabet.size() as usize;
        let n = self.memory.len();
        // weight[j] = k^(n-1-j): the stride of digit j in the code.
        let mut weights = vec![1usize; n];
        for j in (0..n.saturating_sub(1)).rev() {
            weights[j] = weights[j + 1] * k;
        }
        // Coordinate j is essential iff some fragment changes output when
        // only its j-th cell changes.
        let essential: Vec<bool> = (0..n)
            .map(|j| {
                let w = weights[j];
                (0..self.table.len()).any(|code| {
                    let digit = (code / w) % k;
                    digit == 0 && (1..k).any(|d| self.table[code + d * w] != self.table[code])
                })
            })
            .collect();
        let kept: Vec<Element> = self
            .memory
            .iter()
            .zip(&essential)
            .filter(|&(_, &keep)| keep)
            .map(|(e, _)| e.clone())
            .collect();
        let kept_positions: Vec<usize> = (0..n).filter(|&j| essential[j]).collect();
        let reduced_memory =
            GroupSubset::with_display_order(self.group().clone(), kept).expect("no duplicates");
        let len = k.pow(reduced_memory.len() as u32);
        let m = reduced_memory.len();
        let mut table = vec![0u8; len];
        let mut reduced = vec![0u8; m];
        let mut full = vec![0u8; n];
        for (code, slot) in table.iter_mut().enumerate() {
            decode_into(code, k as u8, &mut reduced);
            full.iter_mut().for_each(|v| *v = 0);
            for (ri, &j) in kept_positions.iter().enumerate() {
                full[j] = reduced[ri];
            }
            *slot = self.table[code_of(&full, k as u8)];
        }
        let rule = LocalRule {
            memory: reduced_memory.clone(),
            alphabet: self.alphabet,
            table,
        };
        (reduced_memory, rule)
    }

    /// The Wolfram number of an elementary rule (carrier `Z`, memory
    /// `{-1,0,1}`, binary alphabet): the decimal value of the output row
    /// listed from input `111` down to `000`.
    pub fn wolfram_number(&self) -> Result<u16> {
        if !self.group().is_integers()
            || self.alphabet.size() != 2
            || self.memory != GroupSubset::int_range(-1, 1)
        {
            return Err(Error::Precondition(
                "wolfram numbers are defined for binary rules on {-1,0,1} over Z".into(),
            ));
        }
        Ok(self
            .table
            .iter()
            .enumerate()
            .map(|(i, &v)| (v as u16) << i)
            .sum())
    }

    /// Recovers the pattern form of the rule, when one exists: the unique
    /// fragment mapped away from its identity value, together with the
    /// written symbol. Requires `e` in the memory set; rules whose memory
    /// omits the identity have no pattern form.
    pub fn as_pattern_rule(&self) -> Option<(Pattern, u8)> {
        let e_pos = self.memory.position(&self.group().identity())?;
        let k = self.alphabet.size();
        let n = self.memory.len();
        let mut found: Option<(usize, u8)> = None;
        let mut buf = vec![0u8; n];
        for (code, &out) in self.table.iter().enumerate() {
            decode_into(code, k, &mut buf);
            if out != buf[e_pos] {
                if found.is_some() {
                    return None;
                }
                found = Some((code, out));
            }
        }
        let (code, write) = found?;
        decode_into(code, k, &mut buf);
        let pattern = Pattern::new(self.memory.clone(), buf, self.alphabet)
            .expect("memory contains e and symbols are in range");
        Some((pattern, write))
    }

    /// Parses a table string listed in the usual convention: the output
    /// for the largest input code first (`111 .. 000` for three binary
    /// cells).
    pub fn from_table_string(
        text: &str,
        memory: GroupSubset,
        alphabet: Alphabet,
    ) -> Result<Self> {
        let len = crate::checked_table_len(alphabet.size(), memory.len())?;
        let digits = text
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("bad table digit {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        if digits.len() != len {
            return Err(Error::Parse(format!(
                "table string has {} entries, expected {len}",
                digits.len()
            )));
        }
        let table = digits.into_iter().rev().collect();
        LocalRule::new(memory, alphabet, table)
    }

    /// Renders the table in the same descending-input convention.
    pub fn table_string(&self) -> String {
        self.table
            .iter()
            .rev()
            .map(|&v| (b'0' + v) as char)
            .collect()
    }
}

impl fmt::Display for LocalRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} on {}", self.table_string(), self.memory)
    }
}

/// For each `t` in `T` and `s` in `S`, the display position of `ts` in
/// `window`. The window must contain `TS`.
pub(crate) fn translate_positions(
    t_set: &GroupSubset,
    s_set: &GroupSubset,
    window: &GroupSubset,
) -> Result<Vec<Vec<usize>>> {
    let group = t_set.group();
    t_set
        .iter()
        .map(|t| {
            s_set
                .iter()
                .map(|s| {
                    let ts = group.multiply(t, s);
                    window
                        .position(&ts)
                        .ok_or_else(|| Error::OutOfWindow(format!("{ts} outside {window}")))
                })
                .collect()
        })
        .collect()
}

/// A pattern CA `tau_p^a`: the pattern, the written symbol, and the
/// derived local rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCA {
    pattern: Pattern,
    write: u8,
    rule: LocalRule,
}

impl PatternCA {
    pub fn new(pattern: Pattern, write: u8) -> Result<Self> {
        let rule = LocalRule::from_pattern(&pattern, write)?;
        Ok(PatternCA {
            pattern,
            write,
            rule,
        })
    }

    /// Binary shorthand `tau_p`: writes the complement of `p(e)`.
    pub fn binary(pattern: Pattern) -> Result<Self> {
        if pattern.alphabet().size() != 2 {
            return Err(Error::Precondition(
                "the complement shorthand needs a binary alphabet".into(),
            ));
        }
        let write = 1 - pattern.at_identity();
        PatternCA::new(pattern, write)
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn write(&self) -> u8 {
        self.write
    }

    pub fn rule(&self) -> &LocalRule {
        &self.rule
    }

    pub fn group(&self) -> &Group {
        self.pattern.group()
    }

    pub fn domain(&self) -> &GroupSubset {
        self.pattern.domain()
    }
}

impl fmt::Display for PatternCA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "tau[{} on {}, write {}]",
            self.pattern.display_string(),
            self.pattern.domain(),
            self.write
        )
    }
}
