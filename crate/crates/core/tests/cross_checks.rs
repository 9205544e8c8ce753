//! Cross-module consistency checks that tie the subshift analytics, the
//! witness machinery, and the finite-group oracle together.

use idemca::group::{CayleyTable, Element, Group, GroupSubset};
use idemca::idempotency::{is_idempotent_by_composition, witness_search};
use idemca::oracle::global_idempotent;
use idemca::pattern::{Alphabet, Pattern};
use idemca::rule::PatternCA;
use idemca::shiftspace::{apply_periodic, composition_span, sft_subset};

fn table_domains() -> Vec<GroupSubset> {
    vec![
        GroupSubset::int_range(-1, 1),
        GroupSubset::int_range(0, 2),
        GroupSubset::int_range(-1, 2),
        GroupSubset::int_range(0, 3),
        GroupSubset::int_range(-2, 2),
        GroupSubset::int_range(-1, 3),
    ]
}

#[test]
fn pattern_order_implies_image_inclusion_on_table_domains() {
    let mut patterns = Vec::new();
    for domain in table_domains() {
        patterns.extend(Pattern::enumerate(domain, Alphabet::binary()).unwrap());
    }
    let mut ordered_pairs = 0usize;
    for p in &patterns {
        for q in &patterns {
            if p.leq(q) {
                ordered_pairs += 1;
                assert!(
                    sft_subset(p, q).unwrap(),
                    "{p} <= {q} but the subshifts are not nested"
                );
            }
        }
    }
    // Every pattern is below itself, and the nested domains contribute
    // strictly more pairs.
    assert!(ordered_pairs > patterns.len());
}

#[test]
fn pattern_form_round_trips_on_all_table_domains() {
    for domain in table_domains() {
        for p in Pattern::enumerate(domain, Alphabet::binary()).unwrap() {
            let write = 1 - p.at_identity();
            let rule = idemca::rule::LocalRule::from_pattern(&p, write).unwrap();
            let (q, b) = rule.as_pattern_rule().unwrap();
            assert_eq!(q, p);
            assert_eq!(b, write);
        }
    }
}

/// A witness fragment on SS embeds into any cyclic word of length at
/// least twice the composition span, and the embedded word always breaks
/// idempotency of the periodic action.
#[test]
fn witness_embeds_into_a_violating_cycle() {
    for (domain, digits) in [
        (GroupSubset::int_range(-2, 2), "00001"),
        (GroupSubset::int_range(-1, 1), "100"),
        (GroupSubset::int_range(0, 3), "0001"),
        (GroupSubset::int_range(-1, 3), "01000"),
    ] {
        let p = Pattern::from_digits(domain.clone(), digits, Alphabet::binary()).unwrap();
        let ca = PatternCA::binary(p).unwrap();
        let witness = witness_search(&ca).unwrap().expect("non-idempotent");
        let length = 2 * composition_span(&domain).unwrap();
        let mut word = vec![0u8; length];
        let offset = -witness
            .window()
            .iter()
            .map(|e| e.as_int().unwrap())
            .min()
            .unwrap();
        for (e, &v) in witness.window().iter().zip(witness.values()) {
            word[(e.as_int().unwrap() + offset) as usize] = v;
        }
        let once = apply_periodic(ca.rule(), &word).unwrap();
        let twice = apply_periodic(ca.rule(), &once).unwrap();
        assert_ne!(once, twice, "embedded witness failed to violate for {ca}");
    }
}

/// The three deciders agree on every binary pattern CA whose domain
/// sits inside {-3..3}, up to the full seven-cell window.
#[test]
fn three_way_agreement_up_to_seven_cells() {
    for mask in 0u32..(1 << 7) {
        if mask & (1 << 3) == 0 {
            continue;
        }
        let members: Vec<i64> = (-3..=3).filter(|v| mask & (1 << (v + 3)) != 0).collect();
        let domain = GroupSubset::ints(&members).unwrap();
        for p in Pattern::enumerate(domain, Alphabet::binary()).unwrap() {
            let ca = PatternCA::binary(p).unwrap();
            let by_classify = idemca::idempotency::classify(&ca).unwrap().idempotent;
            let by_composition = is_idempotent_by_composition(ca.rule()).unwrap();
            let by_witness = witness_search(&ca).unwrap().is_none();
            assert_eq!(by_classify, by_composition, "{ca}");
            assert_eq!(by_witness, by_composition, "{ca}");
        }
    }
}

/// An idempotent CA acts idempotently on cyclic words of every length,
/// not only at the certified window size.
#[test]
fn idempotents_act_idempotently_on_short_cycles() {
    let domain = GroupSubset::int_range(-1, 1);
    for digits in ["000", "010", "101", "111"] {
        let p = Pattern::from_digits(domain.clone(), digits, Alphabet::binary()).unwrap();
        let ca = PatternCA::binary(p).unwrap();
        for length in 1..=12 {
            assert!(
                idemca::shiftspace::periodic_idempotency_violation(ca.rule(), length)
                    .unwrap()
                    .is_none(),
                "{ca} violated on a {length}-cycle"
            );
        }
    }
}

/// A user-supplied display order changes the value string but not the
/// automaton: the same map classified either way gives the same verdict,
/// and the rules are equal.
#[test]
fn display_order_is_cosmetic() {
    let canonical = Pattern::from_digits(
        GroupSubset::int_range(-1, 1),
        "001",
        Alphabet::binary(),
    )
    .unwrap();
    let reversed_domain = GroupSubset::with_display_order(
        Group::integers(),
        vec![Element::int(1), Element::int(0), Element::int(-1)],
    )
    .unwrap();
    let reversed = Pattern::from_digits(reversed_domain, "100", Alphabet::binary()).unwrap();
    assert_eq!(reversed.display_string(), "100");
    for e in canonical.domain().iter() {
        assert_eq!(canonical.value_at(e), reversed.value_at(e));
    }
    let a = PatternCA::binary(canonical).unwrap();
    let b = PatternCA::binary(reversed).unwrap();
    assert!(a.rule().equals(b.rule()).unwrap());
    let va = idemca::idempotency::classify(&a).unwrap();
    let vb = idemca::idempotency::classify(&b).unwrap();
    assert_eq!(va.idempotent, vb.idempotent);
    assert!(!va.idempotent); // 001 on {-1,0,1} is in the non-idempotent column
}

/// Forbidding 10 on {0,1} leaves the reducible graph 0* 1*: two trivial
/// strongly connected components joined by a transient edge. Entropy is
/// zero and there are exactly n+1 admissible words per length.
#[test]
fn reducible_graph_entropy_and_counts() {
    let p = Pattern::from_digits(GroupSubset::int_range(0, 1), "10", Alphabet::binary())
        .unwrap();
    for n in 1..=10 {
        assert_eq!(
            idemca::shiftspace::count_words(&p, n).unwrap(),
            (n + 1) as u128
        );
    }
    let estimate = idemca::shiftspace::entropy(&p, 1e-12).unwrap();
    assert!(estimate.log2.abs() < 1e-9);
    assert!((estimate.spectral_radius - 1.0).abs() < 1e-9);
}

/// On the Klein four-group every element is an involution, so every
/// pattern with full domain is symmetrical and the resulting CA must all
/// be idempotent, globally and locally.
#[test]
fn klein_four_full_domain_patterns_are_all_idempotent() {
    let group = Group::finite(CayleyTable::direct_product(
        &CayleyTable::cyclic(2),
        &CayleyTable::cyclic(2),
    ));
    let domain =
        GroupSubset::canonical(group.clone(), (0..4).map(Element::Index).collect()).unwrap();
    let mut count = 0usize;
    for p in Pattern::enumerate(domain, Alphabet::binary()).unwrap() {
        assert!(p.is_symmetrical());
        let ca = PatternCA::binary(p).unwrap();
        assert!(is_idempotent_by_composition(ca.rule()).unwrap());
        assert!(global_idempotent(ca.rule(), &group).unwrap());
        count += 1;
    }
    assert_eq!(count, 16);
}
