//! Idempotency of pattern CA, decided three mutually cross-checking ways:
//! direct composition of local rules, exhaustive witness search over the
//! composition window, and a theorem classifier with the composition check
//! as its honest fallback.

use serde::Serialize;

use crate::group::{centered_restriction, Group, GroupSubset};
use crate::pattern::{decode_into, Alphabet, Pattern};
use crate::rule::{translate_positions, LocalRule, PatternCA};
use crate::{par, Error, Result};

/// Which argument decided the verdict. The first applicable reason wins,
/// in the declaration order below; `CompositionCheck` is the fallback for
/// patterns no theorem covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Reason {
    SingletonDomain,
    ConstantPattern,
    SymmetricalPattern,
    AvoidingWrite,
    QuasiConstantCond1,
    QuasiConstantCond2,
    QuasiConstantCond3,
    CompositionCheck,
}

/// A fragment on `SS` certifying non-idempotency: applying the rule at
/// every `s` in `S` reproduces the pattern, so `p` occurs in the image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    window: GroupSubset,
    values: Vec<u8>,
}

impl Witness {
    pub fn window(&self) -> &GroupSubset {
        &self.window
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// Re-checks the defining equation and its three side conditions:
    /// the fragment is not `p`, it agrees with `p` at the identity, and
    /// some non-identity translate reads exactly `p`.
    pub fn revalidate(&self, ca: &PatternCA) -> bool {
        let p = ca.pattern();
        let s_set = p.domain();
        if self.values.len() != self.window.len() {
            return false;
        }
        // tau(x) restricted to S equals p.
        let equation = s_set.iter().all(|s| {
            centered_restriction(&self.window, &self.values, s, s_set)
                .map(|frag| ca.rule().evaluate(&frag) == p.value_at(s).unwrap())
                .unwrap_or(false)
        });
        if !equation {
            return false;
        }
        let x_on_s = match centered_restriction(
            &self.window,
            &self.values,
            &p.group().identity(),
            s_set,
        ) {
            Ok(frag) => frag,
            Err(_) => return false,
        };
        let part1 = x_on_s != p.values();
        let part2 = {
            let e_pos = s_set.position(&p.group().identity()).unwrap();
            x_on_s[e_pos] == p.at_identity()
        };
        let part3 = s_set.iter().any(|t| {
            *t != p.group().identity()
                && centered_restriction(&self.window, &self.values, t, s_set)
                    .map(|frag| frag == p.values())
                    .unwrap_or(false)
        });
        part1 && part2 && part3
    }
}

/// The decision together with the argument that produced it. A witness is
/// attached exactly when the CA is not idempotent.
#[derive(Debug, Clone)]
pub struct IdempotenceVerdict {
    pub idempotent: bool,
    pub reason: Reason,
    pub witness: Option<Witness>,
}

/// Direct check of `tau . tau = tau` at the level of local rules: the
/// star square is compared with the rule extended to the composition
/// window. For pattern CA the window is exactly `SS`.
pub fn is_idempotent_by_composition(rule: &LocalRule) -> Result<bool> {
    let squared = rule.star(rule)?;
    let window = squared.memory().union(rule.memory())?;
    let lhs = squared.extend(&window)?;
    let rhs = rule.extend(&window)?;
    Ok(lhs.table() == rhs.table())
}

/// Exhaustive search for a fragment `x` on `SS` with
/// `mu((s^{-1} . x)|_S) = p(s)` for every `s` in `S`. Fragments are tried
/// in lexicographic display order and the first hit is returned, so the
/// witness is reproducible. Returns `None` exactly when the CA is
/// idempotent.
pub fn witness_search(ca: &PatternCA) -> Result<Option<Witness>> {
    let s_set = ca.domain();
    let window = s_set.product(s_set)?;
    let positions = translate_positions(s_set, s_set, &window)?;
    let k = ca.pattern().alphabet().size();
    let total = crate::checked_table_len(k, window.len())?;
    let p_values = ca.pattern().values();
    let rule = ca.rule();
    let nw = window.len();
    let ns = s_set.len();
    let hit = par::find_first(total, |code| {
        let mut x = vec![0u8; nw];
        decode_into(code, k, &mut x);
        let mut frag = vec![0u8; ns];
        positions.iter().enumerate().all(|(si, row)| {
            for (j, &pos) in row.iter().enumerate() {
                frag[j] = x[pos];
            }
            rule.evaluate(&frag) == p_values[si]
        })
    });
    Ok(hit.map(|code| {
        let mut values = vec![0u8; nw];
        decode_into(code, k, &mut values);
        Witness { window, values }
    }))
}

/// Applies the idempotency theorems in a fixed order and falls back to
/// the composition check when no hypothesis matches. Non-idempotent
/// verdicts carry the lexicographically first witness.
///
/// In debug builds every theorem shortcut is replayed against the
/// composition check and must agree.
pub fn classify(ca: &PatternCA) -> Result<IdempotenceVerdict> {
    let p = ca.pattern();
    let verdict = classify_inner(ca, p)?;
    #[cfg(debug_assertions)]
    {
        if verdict.reason != Reason::CompositionCheck {
            // Ignore cap refusals: a shortcut verdict on a huge domain is
            // still trustworthy, there is just nothing to replay against.
            if let Ok(direct) = is_idempotent_by_composition(ca.rule()) {
                debug_assert_eq!(
                    verdict.idempotent, direct,
                    "theorem verdict disagrees with composition for {ca}"
                );
            }
            for r in p.quasi_constant_candidates() {
                let by_theorem = quasi_constant_trichotomy(ca, p, &r);
                debug_assert_eq!(
                    verdict.idempotent, by_theorem,
                    "trichotomy disagrees across candidates for {ca}"
                );
            }
        }
    }
    Ok(verdict)
}

fn classify_inner(ca: &PatternCA, p: &Pattern) -> Result<IdempotenceVerdict> {
    if p.len() == 1 {
        return Ok(idempotent(Reason::SingletonDomain));
    }
    if p.is_constant() {
        return Ok(idempotent(Reason::ConstantPattern));
    }
    if p.is_symmetrical() {
        return Ok(idempotent(Reason::SymmetricalPattern));
    }
    if !p.values().contains(&ca.write()) {
        return Ok(idempotent(Reason::AvoidingWrite));
    }
    if let Some(r) = p.quasi_constant_term() {
        let e = p.group().identity();
        let (holds, reason) = if r != e {
            (
                quasi_constant_trichotomy(ca, p, &r),
                Reason::QuasiConstantCond2,
            )
        } else {
            (
                quasi_constant_trichotomy(ca, p, &r),
                Reason::QuasiConstantCond3,
            )
        };
        if holds {
            return Ok(idempotent(reason));
        }
        return Ok(IdempotenceVerdict {
            idempotent: false,
            reason,
            witness: witness_search(ca)?,
        });
    }
    let idem = is_idempotent_by_composition(ca.rule())?;
    Ok(IdempotenceVerdict {
        idempotent: idem,
        reason: Reason::CompositionCheck,
        witness: if idem { None } else { witness_search(ca)? },
    })
}

/// The quasi-constant characterization for nonconstant term `r`:
/// idempotent iff the write symbol avoids `p(S)`, or `r != e` and
/// `r^2 in S`, or `r = e` and `S = S^{-1}`.
fn quasi_constant_trichotomy(ca: &PatternCA, p: &Pattern, r: &crate::group::Element) -> bool {
    if !p.values().contains(&ca.write()) {
        return true;
    }
    let e = p.group().identity();
    if *r != e {
        let r_squared = p.group().multiply(r, r);
        p.domain().contains(&r_squared)
    } else {
        p.domain().is_inverse_closed()
    }
}

fn idempotent(reason: Reason) -> IdempotenceVerdict {
    IdempotenceVerdict {
        idempotent: true,
        reason,
        witness: None,
    }
}

/// A carrier on which fixed points can be enumerated: a finite group, or
/// cyclic words of a given length for CA over `Z`.
pub enum Probe {
    FiniteCarrier(Group),
    CyclicWord(usize),
}

/// Verifies that the fixed points of the CA on the probe are exactly the
/// configurations avoiding the pattern.
pub fn fix_equals_subshift_check(ca: &PatternCA, probe: &Probe) -> Result<bool> {
    match probe {
        Probe::FiniteCarrier(group) => {
            if group != ca.group() {
                return Err(Error::DomainMismatch(
                    "probe carrier must be the CA's group".into(),
                ));
            }
            let fixed = crate::oracle::fix_set(ca.rule(), group)?;
            let avoiding = crate::oracle::avoiding_set(ca.pattern(), group)?;
            Ok(fixed == avoiding)
        }
        Probe::CyclicWord(n) => {
            if *n == 0 {
                return Err(Error::Precondition("cyclic length must be positive".into()));
            }
            let k = ca.pattern().alphabet().size();
            let total = crate::checked_table_len(k, *n)?;
            let rule = ca.rule();
            let p = ca.pattern();
            Ok(par::all_of(total, |code| {
                let mut w = vec![0u8; *n];
                decode_into(code, k, &mut w);
                let image = crate::shiftspace::apply_periodic(rule, &w)
                    .expect("carrier checked to be Z");
                let fixed = image == w;
                let avoids = !crate::shiftspace::occurs_cyclically(p, &w)
                    .expect("carrier checked to be Z");
                fixed == avoids
            }))
        }
    }
}

/// Partition of all binary patterns on a domain into idempotent and
/// non-idempotent display strings, both in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableClassification {
    pub domain: GroupSubset,
    pub idempotent: Vec<String>,
    pub non_idempotent: Vec<String>,
}

impl TableClassification {
    /// Two-column TSV: header, one row per pattern (columns padded), and
    /// a final count row.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("idempotent\tnon-idempotent\n");
        let rows = self.idempotent.len().max(self.non_idempotent.len());
        for i in 0..rows {
            let left = self.idempotent.get(i).map(String::as_str).unwrap_or("");
            let right = self.non_idempotent.get(i).map(String::as_str).unwrap_or("");
            out.push_str(left);
            out.push('\t');
            out.push_str(right);
            out.push('\n');
        }
        out.push_str(&format!(
            "{}\t{}\n",
            self.idempotent.len(),
            self.non_idempotent.len()
        ));
        out
    }
}

/// Classifies every binary pattern on the domain under the complement
/// write convention, distributing patterns over worker threads when the
/// `parallel` feature is enabled.
pub fn classify_all(domain: &GroupSubset, alphabet: Alphabet) -> Result<TableClassification> {
    let total = check_table_inputs(domain, alphabet)?;
    let results = par::map_collect(total, |code| classify_code(domain, alphabet, code));
    assemble_table(domain, results)
}

/// Sequential twin of [`classify_all`], for benchmarks and small runs.
pub fn classify_all_seq(domain: &GroupSubset, alphabet: Alphabet) -> Result<TableClassification> {
    let total = check_table_inputs(domain, alphabet)?;
    let results = par::map_collect_seq(total, |code| classify_code(domain, alphabet, code));
    assemble_table(domain, results)
}

fn check_table_inputs(domain: &GroupSubset, alphabet: Alphabet) -> Result<usize> {
    if alphabet.size() != 2 {
        return Err(Error::Precondition(
            "the table partition uses the binary complement convention".into(),
        ));
    }
    if !domain.contains_identity() {
        return Err(Error::InvalidInput(
            "pattern domain must contain the identity".into(),
        ));
    }
    crate::checked_table_len(alphabet.size(), domain.len())
}

fn classify_code(
    domain: &GroupSubset,
    alphabet: Alphabet,
    code: usize,
) -> Result<(String, bool)> {
    let mut values = vec![0u8; domain.len()];
    decode_into(code, alphabet.size(), &mut values);
    let pattern = Pattern::new(domain.clone(), values, alphabet)?;
    let display = pattern.display_string();
    let ca = PatternCA::binary(pattern)?;
    let verdict = classify(&ca)?;
    Ok((display, verdict.idempotent))
}

fn assemble_table(
    domain: &GroupSubset,
    results: Vec<Result<(String, bool)>>,
) -> Result<TableClassification> {
    let mut idempotent = Vec::new();
    let mut non_idempotent = Vec::new();
    for entry in results {
        let (display, idem) = entry?;
        if idem {
            idempotent.push(display);
        } else {
            non_idempotent.push(display);
        }
    }
    Ok(TableClassification {
        domain: domain.clone(),
        idempotent,
        non_idempotent,
    })
}
