//! Brute-force ground truth on finite group carriers: global application
//! of a CA to whole configurations, global idempotency by exhaustion over
//! all configurations, and fixed-point sets.

use crate::group::{Group, GroupSubset};
use crate::pattern::{decode_into, Pattern};
use crate::rule::LocalRule;
use crate::{par, Error, Result};

/// Hard cap on configuration spaces: `k^|G|` may not exceed 2^20.
/// Exceeding it is an error, never a sample; a sampled oracle is not an
/// oracle.
const CONFIGURATION_CAP: usize = 1 << 20;

/// A total assignment of symbols to the elements of a finite carrier,
/// indexed in Cayley-table order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalConfiguration {
    pub carrier: Group,
    pub values: Vec<u8>,
}

fn carrier_order(group: &Group) -> Result<usize> {
    group.finite_order().ok_or_else(|| {
        Error::UnsupportedCarrier("the oracle runs on finite carriers only".into())
    })
}

fn configuration_count(k: u8, order: usize) -> Result<usize> {
    let mut total: u128 = 1;
    for _ in 0..order {
        total *= k as u128;
        if total > CONFIGURATION_CAP as u128 {
            return Err(Error::TableTooLarge {
                cells: total,
                cap: CONFIGURATION_CAP,
            });
        }
    }
    Ok(total as usize)
}

/// For every carrier element `g` (by index) and memory element `s_j`, the
/// index of `g * s_j`.
fn read_positions(rule: &LocalRule, group: &Group) -> Result<Vec<Vec<usize>>> {
    if rule.group() != group {
        return Err(Error::DomainMismatch(
            "rule memory must live in the carrier group".into(),
        ));
    }
    let elements = group.all_elements().expect("finite carrier");
    Ok(elements
        .iter()
        .map(|g| {
            rule.memory()
                .iter()
                .map(|s| match group.multiply(g, s) {
                    crate::group::Element::Index(i) => i,
                    _ => unreachable!("finite carrier elements are indices"),
                })
                .collect()
        })
        .collect())
}

fn apply_with_positions(rule: &LocalRule, positions: &[Vec<usize>], values: &[u8]) -> Vec<u8> {
    let mut frag = vec![0u8; rule.memory().len()];
    positions
        .iter()
        .map(|row| {
            for (j, &pos) in row.iter().enumerate() {
                frag[j] = values[pos];
            }
            rule.evaluate(&frag)
        })
        .collect()
}

/// Pointwise application of the CA on a finite carrier:
/// `tau(x)(g) = mu((g^{-1} . x)|_S)`, i.e. position `g` reads `x(g s)`.
pub fn global_apply(rule: &LocalRule, x: &GlobalConfiguration) -> Result<GlobalConfiguration> {
    let order = carrier_order(&x.carrier)?;
    if x.values.len() != order {
        return Err(Error::InvalidInput(
            "configuration length does not match the carrier".into(),
        ));
    }
    let positions = read_positions(rule, &x.carrier)?;
    Ok(GlobalConfiguration {
        carrier: x.carrier.clone(),
        values: apply_with_positions(rule, &positions, &x.values),
    })
}

/// Whether applying the CA twice equals applying it once on every
/// configuration of the finite carrier.
pub fn global_idempotent(rule: &LocalRule, group: &Group) -> Result<bool> {
    let order = carrier_order(group)?;
    let k = rule.alphabet().size();
    let total = configuration_count(k, order)?;
    let positions = read_positions(rule, group)?;
    Ok(par::all_of(total, |code| {
        let mut x = vec![0u8; order];
        decode_into(code, k, &mut x);
        let once = apply_with_positions(rule, &positions, &x);
        let twice = apply_with_positions(rule, &positions, &once);
        once == twice
    }))
}

/// All configurations fixed by the CA, in lexicographic order.
pub fn fix_set(rule: &LocalRule, group: &Group) -> Result<Vec<GlobalConfiguration>> {
    let order = carrier_order(group)?;
    let k = rule.alphabet().size();
    let total = configuration_count(k, order)?;
    let positions = read_positions(rule, group)?;
    let flags = par::map_collect(total, |code| {
        let mut x = vec![0u8; order];
        decode_into(code, k, &mut x);
        apply_with_positions(rule, &positions, &x) == x
    });
    Ok(collect_flagged(group, k, order, &flags))
}

/// All configurations in which the pattern occurs at no translate, in
/// lexicographic order. For pattern CA this must equal [`fix_set`].
pub fn avoiding_set(p: &Pattern, group: &Group) -> Result<Vec<GlobalConfiguration>> {
    let order = carrier_order(group)?;
    if p.group() != group {
        return Err(Error::DomainMismatch(
            "pattern domain must live in the carrier group".into(),
        ));
    }
    let k = p.alphabet().size();
    let total = configuration_count(k, order)?;
    let elements = group.all_elements().expect("finite carrier");
    let reads: Vec<Vec<usize>> = elements
        .iter()
        .map(|g| {
            p.domain()
                .iter()
                .map(|s| match group.multiply(g, s) {
                    crate::group::Element::Index(i) => i,
                    _ => unreachable!(),
                })
                .collect()
        })
        .collect();
    let values = p.values();
    let flags = par::map_collect(total, |code| {
        let mut x = vec![0u8; order];
        decode_into(code, k, &mut x);
        reads
            .iter()
            .all(|row| row.iter().zip(values).any(|(&pos, &v)| x[pos] != v))
    });
    Ok(collect_flagged(group, k, order, &flags))
}

fn collect_flagged(
    group: &Group,
    k: u8,
    order: usize,
    flags: &[bool],
) -> Vec<GlobalConfiguration> {
    flags
        .iter()
        .enumerate()
        .filter(|&(_, &keep)| keep)
        .map(|(code, _)| {
            let mut values = vec![0u8; order];
            decode_into(code, k, &mut values);
            GlobalConfiguration {
                carrier: group.clone(),
                values,
            }
        })
        .collect()
}

/// Convenience: all subsets of the carrier that contain the identity,
/// each in canonical order. Drives exhaustive oracle sweeps.
pub fn subsets_with_identity(group: &Group) -> Result<Vec<GroupSubset>> {
    let order = carrier_order(group)?;
    if order > 20 {
        return Err(Error::TableTooLarge {
            cells: 1u128 << order,
            cap: 1 << 20,
        });
    }
    let identity = match group.identity() {
        crate::group::Element::Index(i) => i,
        _ => unreachable!(),
    };
    let mut out = Vec::new();
    for mask in 0u32..(1 << order) {
        if mask & (1 << identity) == 0 {
            continue;
        }
        let members = (0..order)
            .filter(|&i| mask & (1 << i) != 0)
            .map(crate::group::Element::Index)
            .collect();
        out.push(GroupSubset::canonical(group.clone(), members)?);
    }
    Ok(out)
}
