//! External-interface plumbing: group spec strings (`zd:<d>`,
//! `cayley:<path>`), subset literals, the JSON pattern record, and JSON
//! views of verdicts and witnesses.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::group::{CayleyTable, Element, Group, GroupSubset};
use crate::idempotency::{IdempotenceVerdict, Witness};
use crate::pattern::{Alphabet, Pattern};
use crate::rule::PatternCA;
use crate::{Error, Result};

/// JSON form of a Cayley table file: `{order, identity, table}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct CayleyFile {
    pub order: usize,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

/// Loads and validates a Cayley table from a JSON file.
pub fn load_cayley(path: &Path) -> Result<CayleyTable> {
    let text = std::fs::read_to_string(path)?;
    let file: CayleyFile = serde_json::from_str(&text)?;
    CayleyTable::new(file.order, file.identity, file.table)
}

pub fn cayley_to_json(table: &CayleyTable) -> String {
    let rows = table
        .rows()
        .iter()
        .map(|row| {
            let cells = row
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ");
            format!("    [{cells}]")
        })
        .collect::<Vec<_>>()
        .join(",\n");
    format!(
        "{{\n  \"order\": {},\n  \"identity\": {},\n  \"table\": [\n{rows}\n  ]\n}}",
        table.order(),
        table.identity_index()
    )
}

/// Parses a group spec string: `zd:<d>` for free abelian groups,
/// `cayley:<path>` for a finite group in a JSON file.
pub fn parse_group_spec(spec: &str) -> Result<Group> {
    if let Some(rank) = spec.strip_prefix("zd:") {
        let rank: usize = rank
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in group spec {spec:?}")))?;
        return Group::free_abelian(rank);
    }
    if let Some(path) = spec.strip_prefix("cayley:") {
        return Ok(Group::finite(load_cayley(Path::new(path))?));
    }
    Err(Error::Parse(format!(
        "group spec {spec:?} is neither zd:<d> nor cayley:<path>"
    )))
}

fn parse_element(group: &Group, text: &str) -> Result<Element> {
    let text = text.trim();
    let element = match group {
        Group::FreeAbelian { rank: 1 } => {
            let n: i64 = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad integer element {text:?}")))?;
            Element::int(n)
        }
        Group::FreeAbelian { .. } => {
            let inner = text
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (..) tuple, got {text:?}")))?;
            let coords = inner
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate in {text:?}")))
                })
                .collect::<Result<Vec<i64>>>()?;
            Element::vector(coords)
        }
        Group::Finite(_) => {
            let i: usize = text
                .parse()
                .map_err(|_| Error::Parse(format!("bad element index {text:?}")))?;
            Element::Index(i)
        }
    };
    group.check_element(&element)?;
    Ok(element)
}

/// Parses a subset literal in display order: comma-separated integers for
/// `Z` and finite groups, semicolon-separated tuples for higher rank
/// (`(0,0);(1,0)`).
pub fn parse_subset(group: &Group, text: &str) -> Result<GroupSubset> {
    let separator = match group {
        Group::FreeAbelian { rank } if *rank > 1 => ';',
        _ => ',',
    };
    let members = text
        .split(separator)
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_element(group, t))
        .collect::<Result<Vec<Element>>>()?;
    if members.is_empty() {
        return Err(Error::Parse("empty subset literal".into()));
    }
    GroupSubset::with_display_order(group.clone(), members)
}

/// Parses a symbol string like `00010` into values.
pub fn parse_symbols(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("bad symbol digit {c:?}")))
        })
        .collect()
}

/// JSON element view: an integer for rank-1 and finite carriers, an array
/// of integers for higher-rank free abelian groups.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonElement {
    Int(i64),
    Tuple(Vec<i64>),
}

impl JsonElement {
    fn to_element(&self, group: &Group) -> Result<Element> {
        let element = match (group, self) {
            (Group::FreeAbelian { rank: 1 }, JsonElement::Int(n)) => Element::int(*n),
            (Group::FreeAbelian { .. }, JsonElement::Tuple(v)) => Element::vector(v.clone()),
            (Group::Finite(_), JsonElement::Int(n)) if *n >= 0 => Element::Index(*n as usize),
            _ => {
                return Err(Error::Parse(
                    "element shape does not match the group".into(),
                ))
            }
        };
        group.check_element(&element)?;
        Ok(element)
    }

    pub fn from_element(e: &Element) -> JsonElement {
        match e {
            Element::Vector(v) if v.len() == 1 => JsonElement::Int(v[0]),
            Element::Vector(v) => JsonElement::Tuple(v.clone()),
            Element::Index(i) => JsonElement::Int(*i as i64),
        }
    }
}

/// The JSON pattern record:
/// `{group, domain: [elements in display order], values, alphabet, write}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatternRecord {
    pub group: String,
    pub domain: Vec<JsonElement>,
    pub values: Vec<u8>,
    pub alphabet: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub write: Option<u8>,
}

impl PatternRecord {
    pub fn to_pattern(&self) -> Result<Pattern> {
        let group = parse_group_spec(&self.group)?;
        let members = self
            .domain
            .iter()
            .map(|e| e.to_element(&group))
            .collect::<Result<Vec<Element>>>()?;
        let domain = GroupSubset::with_display_order(group, members)?;
        Pattern::new(domain, self.values.clone(), Alphabet::new(self.alphabet)?)
    }

    /// Builds the pattern CA; a missing write symbol defaults to the
    /// binary complement of `p(e)`.
    pub fn to_pattern_ca(&self) -> Result<PatternCA> {
        let pattern = self.to_pattern()?;
        match self.write {
            Some(a) => PatternCA::new(pattern, a),
            None => PatternCA::binary(pattern),
        }
    }

    pub fn from_pattern(p: &Pattern, group_spec: &str, write: Option<u8>) -> PatternRecord {
        PatternRecord {
            group: group_spec.to_string(),
            domain: p
                .domain()
                .iter()
                .map(JsonElement::from_element)
                .collect(),
            values: p.values().to_vec(),
            alphabet: p.alphabet().size(),
            write,
        }
    }

    /// Accepts either inline JSON (starting with `{`) or a path to a
    /// JSON file.
    pub fn from_arg(arg: &str) -> Result<PatternRecord> {
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(arg)?
        };
        Ok(serde_json::from_str(&text)?)
    }
}

/// JSON view of a witness fragment.
#[derive(Debug, Serialize)]
pub struct WitnessJson {
    pub window: Vec<JsonElement>,
    pub values: Vec<u8>,
}

impl WitnessJson {
    pub fn from_witness(w: &Witness) -> WitnessJson {
        WitnessJson {
            window: w
                .window()
                .iter()
                .map(JsonElement::from_element)
                .collect(),
            values: w.values().to_vec(),
        }
    }
}

/// JSON view of an idempotency verdict:
/// `{idempotent, reason, witness?}`.
#[derive(Debug, Serialize)]
pub struct VerdictJson {
    pub idempotent: bool,
    pub reason: crate::idempotency::Reason,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
}

impl VerdictJson {
    pub fn from_verdict(v: &IdempotenceVerdict) -> VerdictJson {
        VerdictJson {
            idempotent: v.idempotent,
            reason: v.reason,
            witness: v.witness.as_ref().map(WitnessJson::from_witness),
        }
    }
}
