//! The natural partial order on idempotent CA: `tau <= sigma` iff
//! `tau sigma = sigma tau = tau`, decided by composing local rules, with
//! the image/kernel characterization as an independent crosscheck on `Z`,
//! plus the chain and antichain constructions.

use serde::Serialize;

use crate::group::{Element, Group, GroupSubset};
use crate::idempotency::is_idempotent_by_composition;
use crate::pattern::{Alphabet, Pattern};
use crate::rule::{LocalRule, PatternCA};
use crate::shiftspace::sft_subset;
use crate::{Error, Result};

/// How a comparison was decided. The order itself is always settled by
/// composing both ways; the crosscheck re-derives it from image and
/// kernel inclusions where available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ComparisonRoute {
    CompositionBothWays,
}

/// Image/kernel split of a comparison on `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub image_inclusion: bool,
    pub kernel_inclusion: bool,
}

/// Outcome of a natural-order comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderVerdict {
    pub leq: bool,
    pub via: ComparisonRoute,
    pub crosscheck: Option<CrossCheck>,
}

fn require_idempotent(ca: &PatternCA) -> Result<()> {
    if is_idempotent_by_composition(ca.rule())? {
        Ok(())
    } else {
        Err(Error::NotIdempotent)
    }
}

/// `tau sigma = tau` at the level of local rules; `tau sigma` is the
/// composition applying `sigma` first.
pub(crate) fn absorbs_right(tau: &LocalRule, sigma: &LocalRule) -> Result<bool> {
    tau.star(sigma)?.equals(tau)
}

/// The natural order without re-verifying idempotency; callers must have
/// verified both rules. `r1 <= r2` iff both composites collapse to `r1`.
pub(crate) fn natural_leq_rules(r1: &LocalRule, r2: &LocalRule) -> Result<bool> {
    Ok(r1.star(r2)?.equals(r1)? && r2.star(r1)?.equals(r1)?)
}

/// Whether `t1 <= t2` in the natural order. Both inputs must be
/// idempotent; anything else is an error, since the order is only defined
/// on idempotents.
pub fn natural_leq(t1: &PatternCA, t2: &PatternCA) -> Result<OrderVerdict> {
    require_idempotent(t1)?;
    require_idempotent(t2)?;
    Ok(OrderVerdict {
        leq: natural_leq_rules(t1.rule(), t2.rule())?,
        via: ComparisonRoute::CompositionBothWays,
        crosscheck: None,
    })
}

/// Whether the constant CA writing `b` everywhere sits below `t`:
/// equivalent to `p != b^S`, and to `tau` fixing the constant-`b`
/// configuration.
pub fn constant_below(b: u8, t: &PatternCA) -> Result<bool> {
    if !t.pattern().alphabet().contains(b) {
        return Err(Error::InvalidInput(format!("symbol {b} out of range")));
    }
    require_idempotent(t)?;
    Ok(t.pattern().values().iter().any(|&v| v != b))
}

/// Kernel inclusion `ker(t2) <= ker(t1)`, decided through the absorption
/// identity `t1 t2 = t1`.
pub fn kernel_leq(t1: &PatternCA, t2: &PatternCA) -> Result<bool> {
    require_idempotent(t1)?;
    require_idempotent(t2)?;
    absorbs_right(t1.rule(), t2.rule())
}

/// Compares through images and kernels on `Z` and asserts the result
/// agrees with the direct composition verdict: `t1 <= t2` iff
/// `X_p` is contained in `X_q` and `ker(t2)` in `ker(t1)`.
pub fn order_char_crosscheck(t1: &PatternCA, t2: &PatternCA) -> Result<OrderVerdict> {
    if !t1.group().is_integers() || !t2.group().is_integers() {
        return Err(Error::UnsupportedCarrier(
            "the image-inclusion crosscheck runs over Z".into(),
        ));
    }
    require_idempotent(t1)?;
    require_idempotent(t2)?;
    let image_inclusion = sft_subset(t1.pattern(), t2.pattern())?;
    let kernel_inclusion = absorbs_right(t1.rule(), t2.rule())?;
    let leq = natural_leq_rules(t1.rule(), t2.rule())?;
    if leq != (image_inclusion && kernel_inclusion) {
        return Err(Error::Precondition(format!(
            "image/kernel characterization disagrees with composition for {t1} vs {t2}"
        )));
    }
    Ok(OrderVerdict {
        leq,
        via: ComparisonRoute::CompositionBothWays,
        crosscheck: Some(CrossCheck {
            image_inclusion,
            kernel_inclusion,
        }),
    })
}

/// Property helper: under the hypothesis `q(e) != a`, comparability
/// forces equal write symbols and `p <= q` in the pattern order. Returns
/// whether the implication held (vacuously true for incomparable pairs).
pub fn comparability_necessary_conditions(t1: &PatternCA, t2: &PatternCA) -> Result<bool> {
    if t2.pattern().at_identity() == t1.write() {
        return Err(Error::Precondition(
            "the necessary conditions assume q(e) != a".into(),
        ));
    }
    let verdict = natural_leq(t1, t2)?;
    if !verdict.leq {
        return Ok(true);
    }
    Ok(t1.write() == t2.write() && t1.pattern().leq(t2.pattern()))
}

/// For a strictly comparable pair, word counts of the images must grow:
/// `count(p, n) <= count(q, n)` for all `n <= max_len` with strict
/// inequality somewhere.
pub fn strictness_check(t1: &PatternCA, t2: &PatternCA, max_len: usize) -> Result<bool> {
    let verdict = natural_leq(t1, t2)?;
    if !verdict.leq || t1.rule().equals(t2.rule())? {
        return Err(Error::Precondition(
            "strictness needs t1 < t2 with distinct CA".into(),
        ));
    }
    let mut strict = false;
    for n in 1..=max_len {
        let a = crate::shiftspace::count_words(t1.pattern(), n)?;
        let b = crate::shiftspace::count_words(t2.pattern(), n)?;
        if a > b {
            return Ok(false);
        }
        if a < b {
            strict = true;
        }
    }
    Ok(strict)
}

/// The increasing chain: constant-0 patterns on `S_i = {e, s, .., s^i}`
/// with write symbol 1, for `i = 1..=n`. Every member is verified
/// idempotent and consecutive members verified comparable.
pub fn chain_family(
    group: &Group,
    s: &Element,
    n: usize,
    alphabet: Alphabet,
) -> Result<Vec<PatternCA>> {
    if !matches!(group, Group::FreeAbelian { .. }) {
        return Err(Error::UnsupportedCarrier(
            "the chain construction needs an element of infinite order".into(),
        ));
    }
    group.check_element(s)?;
    if *s == group.identity() {
        return Err(Error::Precondition("s must be nontrivial".into()));
    }
    let mut members = Vec::with_capacity(n);
    let mut powers = vec![group.identity()];
    for i in 1..=n {
        powers.push(group.multiply(&powers[i - 1], s));
        let domain = GroupSubset::canonical(group.clone(), powers.clone())?;
        let p = Pattern::constant(domain, 0, alphabet)?;
        let ca = PatternCA::new(p, 1)?;
        require_idempotent(&ca)?;
        members.push(ca);
    }
    for pair in members.windows(2) {
        if !natural_leq_rules(pair[0].rule(), pair[1].rule())? {
            return Err(Error::Precondition(
                "chain construction failed to verify comparability".into(),
            ));
        }
    }
    Ok(members)
}

/// The independent family: symmetrical patterns on
/// `S_i = {e} U {g_j, g_j^{-1} : j <= i}` that are 1 exactly at the
/// newest generator pair, with write symbol 1, for `i = 1..=n`. Members
/// are verified idempotent and pairwise incomparable.
pub fn antichain_family(
    group: &Group,
    generators: &[Element],
    n: usize,
    alphabet: Alphabet,
) -> Result<Vec<PatternCA>> {
    if n > generators.len() {
        return Err(Error::Precondition(format!(
            "need {n} generators, got {}",
            generators.len()
        )));
    }
    let identity = group.identity();
    for (i, g) in generators.iter().take(n).enumerate() {
        group.check_element(g)?;
        if *g == identity {
            return Err(Error::Precondition("generators must be nontrivial".into()));
        }
        for h in &generators[..i] {
            if g == h || *g == group.invert(h) {
                return Err(Error::Precondition(
                    "generators must avoid earlier ones and their inverses".into(),
                ));
            }
        }
    }
    let mut members = Vec::with_capacity(n);
    for i in 1..=n {
        let mut elements = vec![identity.clone()];
        for g in &generators[..i] {
            elements.push(g.clone());
            elements.push(group.invert(g));
        }
        let domain = GroupSubset::canonical(group.clone(), elements)?;
        let latest = &generators[i - 1];
        let latest_inv = group.invert(latest);
        let values = domain
            .iter()
            .map(|e| u8::from(*e == *latest || *e == latest_inv))
            .collect();
        let p = Pattern::new(domain, values, alphabet)?;
        if !p.is_symmetrical() {
            return Err(Error::Precondition(
                "antichain pattern failed to be symmetrical".into(),
            ));
        }
        let ca = PatternCA::new(p, 1)?;
        require_idempotent(&ca)?;
        members.push(ca);
    }
    for i in 0..members.len() {
        for j in (i + 1)..members.len() {
            if natural_leq_rules(members[i].rule(), members[j].rule())?
                || natural_leq_rules(members[j].rule(), members[i].rule())?
            {
                return Err(Error::Precondition(
                    "antichain construction failed to verify incomparability".into(),
                ));
            }
        }
    }
    Ok(members)
}

/// A node of a computed poset: a pattern CA, or the identity CA when it
/// was added as the maximal idempotent.
#[derive(Debug, Clone)]
pub struct PosetNode {
    pub label: String,
    pub ca: Option<PatternCA>,
}

/// The covering relation of a family of idempotents, with pairs that hit
/// the size cap reported rather than aborting the whole poset.
#[derive(Debug, Clone)]
pub struct Poset {
    pub nodes: Vec<PosetNode>,
    /// `(i, j)` means node `i` is covered by node `j`.
    pub edges: Vec<(usize, usize)>,
    /// Pairs whose comparison was refused by the size cap.
    pub skipped: Vec<(usize, usize, String)>,
}

impl Poset {
    /// DOT rendering, bottom-to-top.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", node.label));
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Pairwise natural-order matrix over a verified-idempotent family:
/// `matrix[i][j]` is `t_i <= t_j`. Each member is verified once.
pub fn poset_leq_matrix(members: &[PatternCA]) -> Result<Vec<Vec<bool>>> {
    for ca in members {
        require_idempotent(ca)?;
    }
    let rules: Vec<&LocalRule> = members.iter().map(|ca| ca.rule()).collect();
    leq_matrix_of_rules(&rules).map(|(matrix, _)| matrix)
}

type MatrixAndSkips = (Vec<Vec<bool>>, Vec<(usize, usize, String)>);

fn leq_matrix_of_rules(rules: &[&LocalRule]) -> Result<MatrixAndSkips> {
    let n = rules.len();
    // right[i][j]: tau_i tau_j = tau_i; left[i][j]: tau_j tau_i = tau_i.
    // One star per ordered pair settles one entry of each.
    let mut right = vec![vec![false; n]; n];
    let mut left = vec![vec![false; n]; n];
    let mut skipped = Vec::new();
    for a in 0..n {
        for b in 0..n {
            match rules[a].star(rules[b]) {
                Ok(composite) => {
                    right[a][b] = composite.equals(rules[a])?;
                    left[b][a] = composite.equals(rules[b])?;
                }
                Err(Error::TableTooLarge { cells, cap }) => {
                    skipped.push((a, b, format!("table of {cells} entries exceeds cap {cap}")));
                }
                Err(e) => return Err(e),
            }
        }
    }
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| right[i][j] && left[i][j]).collect())
        .collect();
    Ok((matrix, skipped))
}

/// Builds the Hasse diagram of a family of idempotent pattern CA,
/// optionally together with the identity CA (the maximal idempotent).
/// CA that define the same map are merged into one node.
pub fn hasse(members: &[PatternCA], include_identity: bool) -> Result<Poset> {
    for ca in members {
        require_idempotent(ca)?;
    }
    let mut nodes: Vec<PosetNode> = Vec::new();
    let mut rules: Vec<LocalRule> = Vec::new();
    for ca in members {
        let label = format!(
            "{}@{}|a={}",
            ca.pattern().display_string(),
            ca.domain(),
            ca.write()
        );
        let mut merged = false;
        for (i, existing) in rules.iter().enumerate() {
            if ca.rule().equals(existing).unwrap_or(false) {
                nodes[i].label = format!("{} = {}", nodes[i].label, label);
                merged = true;
                break;
            }
        }
        if !merged {
            nodes.push(PosetNode {
                label,
                ca: Some(ca.clone()),
            });
            rules.push(ca.rule().clone());
        }
    }
    if include_identity {
        let group = members
            .first()
            .map(|ca| ca.group().clone())
            .unwrap_or_else(Group::integers);
        let alphabet = members
            .first()
            .map(|ca| ca.pattern().alphabet())
            .unwrap_or_else(Alphabet::binary);
        nodes.push(PosetNode {
            label: "id".into(),
            ca: None,
        });
        rules.push(LocalRule::identity(&group, alphabet));
    }
    let rule_refs: Vec<&LocalRule> = rules.iter().collect();
    let (leq, skipped) = leq_matrix_of_rules(&rule_refs)?;
    let n = nodes.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq[i][j] {
                continue;
            }
            // Transitive reduction: keep i -> j only without a middle k.
            let covered = (0..n)
                .any(|k| k != i && k != j && leq[i][k] && leq[k][j] && !leq[k][i] && !leq[j][k]);
            if !covered {
                edges.push((i, j));
            }
        }
    }
    Ok(Poset {
        nodes,
        edges,
        skipped,
    })
}
