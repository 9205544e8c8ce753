//! Acceptance suite: one test per criterion, each printing a pass line
//! with its runtime. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::path::Path;
use std::time::{Duration, Instant};

use idemca::group::{Element, Group, GroupSubset};
use idemca::idempotency::{
    classify, classify_all, is_idempotent_by_composition, witness_search, Reason,
};
use idemca::order::{
    antichain_family, chain_family, comparability_necessary_conditions, natural_leq,
    order_char_crosscheck, poset_leq_matrix,
};
use idemca::pattern::{Alphabet, Pattern};
use idemca::record::load_cayley;
use idemca::rule::{LocalRule, PatternCA};
use idemca::shiftspace::{
    composition_span, count_words, entropy, periodic_idempotency_violation,
};

fn report(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "ACCEPTANCE {criterion}: PASS in {:.2}s (budget {:.0}s)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed < budget,
        "{criterion} exceeded its runtime budget: {elapsed:?}"
    );
}

fn table_rows() -> Vec<(GroupSubset, &'static str)> {
    vec![
        (GroupSubset::int_range(-1, 1), "table_row1.tsv"),
        (GroupSubset::int_range(0, 2), "table_row2.tsv"),
        (GroupSubset::int_range(-1, 2), "table_row3.tsv"),
        (GroupSubset::int_range(0, 3), "table_row4.tsv"),
        (GroupSubset::int_range(-2, 2), "table_row5.tsv"),
        (GroupSubset::int_range(-1, 3), "table_row6.tsv"),
    ]
}

fn binary_ca(domain: &GroupSubset, digits: &str) -> PatternCA {
    let p = Pattern::from_digits(domain.clone(), digits, Alphabet::binary()).unwrap();
    PatternCA::binary(p).unwrap()
}

/// All binary pattern CA with domain S inside {-3..3}, e in S, |S| <= 5,
/// under the complement write convention.
fn theorem_family() -> Vec<PatternCA> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << 7) {
        if mask & (1 << 3) == 0 || mask.count_ones() > 5 {
            continue;
        }
        let members: Vec<i64> = (-3..=3).filter(|v| mask & (1 << (v + 3)) != 0).collect();
        let domain = GroupSubset::ints(&members).unwrap();
        for p in Pattern::enumerate(domain, Alphabet::binary()).unwrap() {
            out.push(PatternCA::binary(p).unwrap());
        }
    }
    out
}

#[test]
fn crit01_table_reproduction() {
    let started = Instant::now();
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    for (domain, fixture) in table_rows() {
        let classified = classify_all(&domain, Alphabet::binary()).unwrap();
        let expected = std::fs::read_to_string(golden_dir.join(fixture)).unwrap();
        assert_eq!(
            classified.render_tsv(),
            expected,
            "partition for {domain} differs from the reference table"
        );
    }
    report("1 table-reproduction", started, Duration::from_secs(1));
}

#[test]
fn crit02_seven_cell_window_count() {
    let started = Instant::now();
    let domain = GroupSubset::int_range(-3, 3);
    let classified = classify_all(&domain, Alphabet::binary()).unwrap();
    assert_eq!(classified.idempotent.len(), 100);
    assert_eq!(classified.non_idempotent.len(), 28);
    report("2 seven-cell-count", started, Duration::from_secs(5));
}

#[test]
fn crit03_wolfram_checks() {
    let started = Instant::now();
    let p010 = Pattern::from_digits(GroupSubset::int_range(-1, 1), "010", Alphabet::binary())
        .unwrap();
    let p100 = Pattern::from_digits(GroupSubset::int_range(-1, 1), "100", Alphabet::binary())
        .unwrap();
    assert_eq!(
        PatternCA::binary(p010).unwrap().rule().wolfram_number().unwrap(),
        200
    );
    assert_eq!(
        PatternCA::binary(p100).unwrap().rule().wolfram_number().unwrap(),
        220
    );
    let example = LocalRule::from_table_string(
        "01101110",
        GroupSubset::int_range(-1, 1),
        Alphabet::binary(),
    )
    .unwrap();
    assert_eq!(example.wolfram_number().unwrap(), 110);
    let (memory, _) = LocalRule::elementary(102).minimal_memory_set();
    assert_eq!(memory, GroupSubset::int_range(0, 1));
    report("3 wolfram-checks", started, Duration::from_secs(1));
}

#[test]
fn crit04_pattern_form_detector() {
    let started = Instant::now();
    for number in [4u8, 223] {
        let rule = LocalRule::elementary(number);
        assert!(is_idempotent_by_composition(&rule).unwrap());
        assert!(rule.as_pattern_rule().is_none());
    }
    for number in [200u8, 220] {
        let rule = LocalRule::elementary(number);
        let (pattern, write) = rule.as_pattern_rule().unwrap();
        let rebuilt = LocalRule::from_pattern(&pattern, write).unwrap();
        assert!(rebuilt.equals(&rule).unwrap());
        assert_eq!(rebuilt.table(), rule.table());
    }
    report("4 pattern-form-detector", started, Duration::from_secs(1));
}

#[test]
fn crit05_theorem_suite() {
    let started = Instant::now();
    let mut constants = 0usize;
    let mut symmetricals = 0usize;
    let mut quasis = 0usize;
    for ca in theorem_family() {
        let p = ca.pattern();
        let direct = is_idempotent_by_composition(ca.rule()).unwrap();
        if p.is_constant() {
            constants += 1;
            assert!(direct, "constant pattern {p} must be idempotent");
        }
        if p.is_symmetrical() {
            symmetricals += 1;
            assert!(direct, "symmetrical pattern {p} must be idempotent");
        }
        if let Some(r) = p.quasi_constant_term() {
            quasis += 1;
            // The characterization, evaluated from the raw data.
            let e = p.group().identity();
            let avoids = !p.values().contains(&ca.write());
            let by_theorem = if avoids {
                true
            } else if r != e {
                p.domain().contains(&p.group().multiply(&r, &r))
            } else {
                p.domain().is_inverse_closed()
            };
            assert_eq!(direct, by_theorem, "trichotomy mismatch for {p}");
        }
    }
    assert!(constants > 0 && symmetricals > 0 && quasis > 0);

    // Ternary avoiding-write cases: every write symbol outside p(S) gives
    // an idempotent CA, on all domains S in {-2..2} with e in S, |S| <= 3.
    let alphabet = Alphabet::new(3).unwrap();
    let mut ternary_cases = 0usize;
    for mask in 0u32..(1 << 5) {
        if mask & (1 << 2) == 0 || mask.count_ones() > 3 {
            continue;
        }
        let members: Vec<i64> = (-2..=2).filter(|v| mask & (1 << (v + 2)) != 0).collect();
        if members.len() < 2 {
            continue; // the avoiding-write argument needs |S| >= 2
        }
        let domain = GroupSubset::ints(&members).unwrap();
        for p in Pattern::enumerate(domain, alphabet).unwrap() {
            for write in alphabet.symbols() {
                if write == p.at_identity() || p.values().contains(&write) {
                    continue;
                }
                let ca = PatternCA::new(p.clone(), write).unwrap();
                assert!(
                    is_idempotent_by_composition(ca.rule()).unwrap(),
                    "avoiding write {write} on {p} must be idempotent"
                );
                ternary_cases += 1;
            }
        }
    }
    assert!(ternary_cases > 0);
    report("5 theorem-suite", started, Duration::from_secs(30));
}

#[test]
fn crit06_three_way_agreement() {
    let started = Instant::now();
    for ca in theorem_family() {
        let by_classify = classify(&ca).unwrap();
        let by_composition = is_idempotent_by_composition(ca.rule()).unwrap();
        let by_witness = witness_search(&ca).unwrap();
        assert_eq!(by_classify.idempotent, by_composition, "{ca}");
        assert_eq!(by_witness.is_none(), by_composition, "{ca}");
        match (&by_classify.witness, &by_witness) {
            (None, None) => {}
            (Some(a), Some(b)) => {
                assert_eq!(a, b, "classify and search must agree on the witness");
                assert!(a.revalidate(&ca), "witness for {ca} failed revalidation");
            }
            _ => panic!("classify witness presence disagrees for {ca}"),
        }
    }
    report("6 three-way-agreement", started, Duration::from_secs(60));
}

#[test]
fn crit07_finite_group_oracle() {
    let started = Instant::now();
    let fixture_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let carriers = ["z2.json", "z3.json", "z4.json", "z5.json", "z2xz2.json", "s3.json"];
    for name in carriers {
        let table = load_cayley(&fixture_dir.join(name)).unwrap();
        let group = Group::finite(table);
        for domain in idemca::oracle::subsets_with_identity(&group).unwrap() {
            for p in Pattern::enumerate(domain, Alphabet::binary()).unwrap() {
                let ca = PatternCA::binary(p).unwrap();
                let local = is_idempotent_by_composition(ca.rule()).unwrap();
                let global = idemca::oracle::global_idempotent(ca.rule(), &group).unwrap();
                assert_eq!(local, global, "oracle disagreement on {name} for {ca}");
                let by_classify = classify(&ca).unwrap();
                assert_eq!(by_classify.idempotent, global, "classifier on {name} for {ca}");
                let fixed = idemca::oracle::fix_set(ca.rule(), &group).unwrap();
                let avoiding =
                    idemca::oracle::avoiding_set(ca.pattern(), &group).unwrap();
                assert_eq!(fixed, avoiding, "fixed points vs avoiders on {name}");
            }
        }
    }
    report("7 finite-group-oracle", started, Duration::from_secs(60));
}

#[test]
#[allow(clippy::needless_range_loop)]
fn crit08_order_suite() {
    let started = Instant::now();
    let z = Group::integers();

    // The chain is totally ordered in index order.
    let chain = chain_family(&z, &Element::int(1), 5, Alphabet::binary()).unwrap();
    let matrix = poset_leq_matrix(&chain).unwrap();
    for i in 0..chain.len() {
        for j in 0..chain.len() {
            assert_eq!(matrix[i][j], i <= j, "chain order at ({i},{j})");
        }
    }

    // The antichain over g = 1..5 is pairwise incomparable.
    let generators: Vec<Element> = (1..=5).map(Element::int).collect();
    let antichain = antichain_family(&z, &generators, 5, Alphabet::binary()).unwrap();
    let matrix = poset_leq_matrix(&antichain).unwrap();
    for i in 0..antichain.len() {
        for j in 0..antichain.len() {
            assert_eq!(matrix[i][j], i == j, "antichain at ({i},{j})");
        }
    }

    // The two-sided example: incomparable, image nested, kernel not.
    let p = PatternCA::new(
        Pattern::from_digits(GroupSubset::int_range(0, 1), "00", Alphabet::binary()).unwrap(),
        1,
    )
    .unwrap();
    let q = PatternCA::new(
        Pattern::from_digits(GroupSubset::int_range(-1, 1), "000", Alphabet::binary()).unwrap(),
        1,
    )
    .unwrap();
    let verdict = order_char_crosscheck(&p, &q).unwrap();
    assert!(!verdict.leq);
    let cross = verdict.crosscheck.unwrap();
    assert!(cross.image_inclusion);
    assert!(!cross.kernel_inclusion);

    // The image/kernel characterization agrees with composition on every
    // tested pair (order_char_crosscheck errors on any contradiction),
    // and the comparability conditions hold whenever their hypothesis
    // does, across all ordered pairs of reference-table idempotents.
    let mut idempotents: Vec<PatternCA> = Vec::new();
    for (domain, _) in table_rows() {
        let classified = classify_all(&domain, Alphabet::binary()).unwrap();
        for digits in &classified.idempotent {
            idempotents.push(binary_ca(&domain, digits));
        }
    }
    assert_eq!(idempotents.len(), 60);
    let n = idempotents.len();
    let mut leq = vec![vec![false; n]; n];
    let mut hypothesis_pairs = 0usize;
    for (i, t1) in idempotents.iter().enumerate() {
        for (j, t2) in idempotents.iter().enumerate() {
            let verdict = order_char_crosscheck(t1, t2).unwrap();
            let direct = natural_leq(t1, t2).unwrap();
            assert_eq!(verdict.leq, direct.leq);
            leq[i][j] = direct.leq;
            if t2.pattern().at_identity() != t1.write() {
                hypothesis_pairs += 1;
                assert!(
                    comparability_necessary_conditions(t1, t2).unwrap(),
                    "necessary conditions failed for {t1} <= {t2}"
                );
            }
        }
    }
    assert!(hypothesis_pairs > 0);
    // Poset laws on the computed relation: reflexivity, antisymmetry at
    // the level of rule equality, transitivity.
    for i in 0..n {
        assert!(leq[i][i], "reflexivity at {i}");
        for j in 0..n {
            if leq[i][j] && leq[j][i] {
                assert!(
                    idempotents[i].rule().equals(idempotents[j].rule()).unwrap(),
                    "antisymmetry between {i} and {j}"
                );
            }
            for k in 0..n {
                if leq[i][j] && leq[j][k] {
                    assert!(leq[i][k], "transitivity at ({i},{j},{k})");
                }
            }
        }
    }
    report("8 order-suite", started, Duration::from_secs(60));
}

#[test]
fn crit09_golden_mean_shift() {
    let started = Instant::now();
    let p = Pattern::from_digits(GroupSubset::int_range(0, 1), "11", Alphabet::binary())
        .unwrap();
    // Fibonacci word counts, brute-forced independently up to n = 12.
    let mut expected: Vec<u128> = vec![2, 3];
    while expected.len() < 20 {
        let n = expected.len();
        expected.push(expected[n - 1] + expected[n - 2]);
    }
    for n in 1..=20 {
        assert_eq!(count_words(&p, n).unwrap(), expected[n - 1], "length {n}");
    }
    for n in 1..=12 {
        let mut brute = 0u128;
        for code in 0..(1u32 << n) {
            let word: Vec<u8> = (0..n).map(|i| ((code >> (n - 1 - i)) & 1) as u8).collect();
            if !word.windows(2).any(|w| w == [1, 1]) {
                brute += 1;
            }
        }
        assert_eq!(count_words(&p, n).unwrap(), brute, "brute force at {n}");
    }
    let estimate = entropy(&p, 1e-12).unwrap();
    let golden = (1.0 + 5.0f64.sqrt()) / 2.0;
    assert!((estimate.log2 - golden.log2()).abs() < 1e-9);
    report("9 golden-mean-shift", started, Duration::from_secs(1));
}

#[test]
fn crit10_periodic_point_consistency() {
    let started = Instant::now();
    for (domain, _) in table_rows() {
        let length = 2 * composition_span(&domain).unwrap();
        let classified = classify_all(&domain, Alphabet::binary()).unwrap();
        for digits in &classified.idempotent {
            let ca = binary_ca(&domain, digits);
            assert!(
                periodic_idempotency_violation(ca.rule(), length)
                    .unwrap()
                    .is_none(),
                "idempotent {ca} acted non-idempotently on a {length}-cycle"
            );
        }
        for digits in &classified.non_idempotent {
            let ca = binary_ca(&domain, digits);
            assert!(
                periodic_idempotency_violation(ca.rule(), length)
                    .unwrap()
                    .is_some(),
                "non-idempotent {ca} has no violating {length}-cycle"
            );
        }
    }
    report("10 periodic-points", started, Duration::from_secs(120));
}

/// The classifier's reason codes on the five-cell pair, exercised end
/// to end with witness revalidation.
#[test]
fn classifier_reasons_on_the_intro_pair() {
    let good = binary_ca(&GroupSubset::int_range(-2, 2), "00010");
    let verdict = classify(&good).unwrap();
    assert!(verdict.idempotent);
    assert_eq!(verdict.reason, Reason::QuasiConstantCond2);
    let bad = binary_ca(&GroupSubset::int_range(-2, 2), "00001");
    let verdict = classify(&bad).unwrap();
    assert!(!verdict.idempotent);
    assert!(verdict.witness.unwrap().revalidate(&bad));
}
