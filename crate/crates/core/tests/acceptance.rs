//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines as they complete.

use std::time::Instant;

use descent_core::algebra_b::enumerate_b_basis;
use descent_core::algebra_d::{multiply_basis, AlgebraElement};
use descent_core::composition::{enumerate_basis, BasisIndex};
use descent_core::oracle::{
    augmentation_d, oracle_multiply, oracle_multiply_b, GroupKind, GroupTable, OracleStrategy,
};
use descent_core::quotient::{verify_ideal, verify_quotient_iso};
use descent_core::verify::{
    published_discrepancy_finding, verify_associativity, verify_relations, VerifyConfig,
};

fn d_index(text: &str, n: usize) -> BasisIndex {
    BasisIndex::parse(text, n).unwrap()
}

fn d_table(n: usize) -> GroupTable {
    GroupTable::build(GroupKind::D, n, GroupKind::D.default_cap()).unwrap()
}

fn b_table(n: usize) -> GroupTable {
    GroupTable::build(GroupKind::B, n, GroupKind::B.default_cap()).unwrap()
}

struct Criterion {
    label: &'static str,
    start: Instant,
}

impl Criterion {
    fn begin(label: &'static str) -> Self {
        Criterion {
            label,
            start: Instant::now(),
        }
    }

    fn pass(self) {
        println!(
            "acceptance {}: PASS ({} ms)",
            self.label,
            self.start.elapsed().as_millis()
        );
    }
}

#[test]
fn criterion_1_golden_products() {
    let c = Criterion::begin("1 (golden products)");
    let n = 4;
    let start = Instant::now();
    let cases = [
        ("[4]", "[1,3]", "1*[1,1,2] + 1*[1,2,1] + 2*[1,3]"),
        ("[3,1]'", "[4]", "2*[1,2,1] + 1*[1,3] + 1*[3,1]"),
        ("[4]", "[2]", "1*[2,1,1]' + 2*[2,2]"),
        ("[2]", "[2]", "1*[1,1] + 2*[2] + 2*[1,1,1,1] + 1*[2,2] + 1*[2,2]'"),
        ("[1,1]", "[2]", "4*[1,1] + 4*[1,1,1,1] + 2*[1,1,2]"),
    ];
    for (p, q, expected) in cases {
        let got = multiply_basis(&d_index(p, n), &d_index(q, n)).unwrap();
        assert_eq!(got.to_text(), expected, "product {p} * {q}");
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 1.0,
        "golden products took {elapsed:?}, budget is 1 s"
    );
    c.pass();
}

#[test]
fn criterion_2_discrepant_product_arbitration() {
    let c = Criterion::begin("2 (published-line arbitration)");
    let table = d_table(4);
    let finding = published_discrepancy_finding(&table).unwrap();
    println!(
        "discrepancy report: {}",
        serde_json::to_string(&finding).unwrap()
    );
    assert!(
        finding.rule_equals_oracle,
        "rule and oracle disagree: rule = {}, oracle = {}",
        finding.rule, finding.oracle
    );
    // The published line is informational; rule == oracle is the gate.
    let rule = multiply_basis(&d_index("[2,2]'", 4), &d_index("[4]'", 4)).unwrap();
    let oracle = oracle_multiply(
        &table,
        &d_index("[2,2]'", 4),
        &d_index("[4]'", 4),
        OracleStrategy::Counting,
    )
    .unwrap();
    assert_eq!(rule, oracle);
    c.pass();
}

#[test]
fn criterion_3_rule_equals_oracle_exhaustively() {
    let c = Criterion::begin("3 (rule = oracle, n = 2..5)");
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let start = Instant::now();
    pool.install(|| {
        for n in 2..=5 {
            let table = d_table(n);
            let basis = enumerate_basis(n).unwrap();
            for p in &basis {
                for q in &basis {
                    let rule = multiply_basis(p, q).unwrap();
                    let oracle =
                        oracle_multiply(&table, p, q, OracleStrategy::Counting).unwrap();
                    assert_eq!(rule, oracle, "mismatch at {p} * {q}, n={n}");
                }
            }
        }
    });
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 300,
        "single-threaded sweep took {elapsed:?}, budget is 5 min"
    );
    c.pass();
}

#[test]
fn criterion_4_oracle_strategies_agree() {
    let c = Criterion::begin("4 (counting = convolution)");
    for n in 2..=4 {
        let table = d_table(n);
        let basis = enumerate_basis(n).unwrap();
        for p in &basis {
            for q in &basis {
                let counting =
                    oracle_multiply(&table, p, q, OracleStrategy::Counting).unwrap();
                let convolution =
                    oracle_multiply(&table, p, q, OracleStrategy::Convolution).unwrap();
                assert_eq!(counting, convolution, "strategy mismatch at {p} * {q}, n={n}");
            }
        }
    }
    for n in 1..=3 {
        let table = b_table(n);
        let basis = enumerate_b_basis(n);
        for p in &basis {
            for q in &basis {
                let counting =
                    oracle_multiply_b(&table, p, q, OracleStrategy::Counting).unwrap();
                let convolution =
                    oracle_multiply_b(&table, p, q, OracleStrategy::Convolution).unwrap();
                assert_eq!(
                    counting, convolution,
                    "type-B strategy mismatch at {p} * {q}, n={n}"
                );
            }
        }
    }
    c.pass();
}

#[test]
fn criterion_5_ideal_closure() {
    let c = Criterion::begin("5 (ideal closure, n = 2..5)");
    for n in 2..=5 {
        let report = verify_ideal(n).unwrap();
        assert!(report.pass, "n={n}: {:?}", report.counterexamples);
    }
    c.pass();
}

#[test]
fn criterion_6_quotient_isomorphism() {
    let c = Criterion::begin("6 (quotient isomorphism, n = 3..5)");
    for n in 3..=5 {
        let report = verify_quotient_iso(n).unwrap();
        assert!(report.pass, "n={n}: {:?}", report.counterexamples);
    }
    c.pass();
}

#[test]
fn criterion_7_structural_properties() {
    let c = Criterion::begin("7 (associativity, identity, augmentation)");
    // Associativity: exhaustive for n <= 4, 1000 seeded samples at n = 5.
    for n in 2..=5 {
        let report = verify_associativity(n, GroupKind::D).unwrap();
        assert!(report.pass, "n={n}: {:?}", report.counterexamples);
    }

    // Two-sided identity across the whole basis.
    for n in 2..=5 {
        let e = AlgebraElement::identity(n).unwrap();
        for b in enumerate_basis(n).unwrap() {
            let x = AlgebraElement::basis(b.clone());
            assert_eq!(e.multiply(&x).unwrap(), x);
            assert_eq!(x.multiply(&e).unwrap(), x);
        }
    }

    // Augmentation, coefficient positivity and legal weights on all pairs.
    for n in 2..=4 {
        let table = d_table(n);
        let basis = enumerate_basis(n).unwrap();
        for p in &basis {
            for q in &basis {
                let prod = multiply_basis(p, q).unwrap();
                let mut mass = 0i64;
                for (b, coeff) in prod.terms() {
                    assert!(coeff > 0, "coefficient {coeff} in {p} * {q}");
                    assert_ne!(b.weight(), n - 1, "forbidden weight in {p} * {q}");
                    mass += coeff * augmentation_d(&table, b) as i64;
                }
                let expected =
                    augmentation_d(&table, p) as i64 * augmentation_d(&table, q) as i64;
                assert_eq!(mass, expected, "augmentation failed at {p} * {q}");
            }
        }
    }
    c.pass();
}

#[test]
fn criterion_8_group_realization() {
    let c = Criterion::begin("8 (group realization)");
    // BFS orders match the closed forms at every supported rank.
    for n in 2..=GroupKind::D.default_cap() {
        let table = d_table(n);
        assert_eq!(table.order(), GroupKind::D.order(n), "type D rank {n}");
    }
    for n in 1..=GroupKind::B.default_cap() {
        let table = b_table(n);
        assert_eq!(table.order(), GroupKind::B.order(n), "type B rank {n}");
    }

    // Diagram relations, unit length steps, X_S = {e} and coset counts.
    let d_config = VerifyConfig::new(GroupKind::D);
    for n in 2..=5 {
        let report = verify_relations(n, &d_config).unwrap();
        assert!(report.pass, "type D n={n}: {:?}", report.counterexamples);
    }
    let b_config = VerifyConfig::new(GroupKind::B);
    for n in 1..=5 {
        let report = verify_relations(n, &b_config).unwrap();
        assert!(report.pass, "type B n={n}: {:?}", report.counterexamples);
    }
    c.pass();
}
