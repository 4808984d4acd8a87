//! Verification suites: the template rule against the group oracle, the two
//! oracle strategies against each other, the ideal and quotient checks,
//! associativity, and the group realization itself.
//!
//! Pair grids are processed in parallel but reports always list results in
//! canonical pair order, so identical invocations produce identical output
//! regardless of the degree of parallelism.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::algebra_b::{enumerate_b_basis, multiply_basis_b, BAlgebraElement};
use crate::algebra_d::{multiply_basis, AlgebraElement};
use crate::composition::{enumerate_basis, BasisIndex};
use crate::error::{Error, Result};
use crate::oracle::{
    oracle_multiply, oracle_multiply_b, GroupKind, GroupTable, OracleStrategy,
};
use crate::quotient;
use crate::report::{CheckReport, Counterexample, Finding};

/// Seed for the sampled associativity triples; fixed so that reports are
/// reproducible byte for byte.
const ASSOCIATIVITY_SEED: u64 = 0x5D5C_0DE5;

/// Ranks at and below this bound get exhaustive associativity sweeps;
/// above it, sampling.
const ASSOCIATIVITY_EXHAUSTIVE_MAX: usize = 4;
const ASSOCIATIVITY_SAMPLES: usize = 1000;

/// The one published product line known to disagree with both the rule and
/// the group computation; reported as a finding, never as a failure.
const PUBLISHED_DISCREPANCY: (&str, &str, &str, usize) =
    ("[2,2]'", "[4]'", "1*[1,1,1,1] + 1*[1,3] + 4*[2,2]'", 4);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Rule,
    Ideal,
    Quotient,
    Associativity,
    Relations,
    All,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "rule" => Ok(Suite::Rule),
            "ideal" => Ok(Suite::Ideal),
            "quotient" => Ok(Suite::Quotient),
            "associativity" => Ok(Suite::Associativity),
            "relations" => Ok(Suite::Relations),
            "all" => Ok(Suite::All),
            other => Err(Error::Parse(format!(
                "unknown suite {other:?}; expected rule, ideal, quotient, associativity, relations or all"
            ))),
        }
    }
}

/// Immutable configuration shared by the suites.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub kind: GroupKind,
    pub cap: usize,
    pub cache_dir: Option<std::path::PathBuf>,
}

impl VerifyConfig {
    pub fn new(kind: GroupKind) -> Self {
        VerifyConfig {
            cap: kind.default_cap(),
            kind,
            cache_dir: None,
        }
    }

    fn table(&self, n: usize) -> Result<GroupTable> {
        GroupTable::load_or_build(self.kind, n, self.cap, self.cache_dir.as_deref())
    }
}

/// Runs one suite over an inclusive rank range, one report per rank (the
/// `all` suite emits one report per check per rank).
pub fn run_suite(suite: Suite, ranks: (usize, usize), config: &VerifyConfig) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    for n in ranks.0..=ranks.1 {
        match suite {
            Suite::Rule => reports.push(verify_rule(n, config)?),
            Suite::Ideal => reports.push(quotient::verify_ideal(n)?),
            Suite::Quotient => reports.push(quotient::verify_quotient_iso(n)?),
            Suite::Associativity => reports.push(verify_associativity(n, config.kind)?),
            Suite::Relations => reports.push(verify_relations(n, config)?),
            Suite::All => {
                reports.push(verify_rule(n, config)?);
                if config.kind == GroupKind::D {
                    reports.push(quotient::verify_ideal(n)?);
                    if n >= 3 {
                        reports.push(quotient::verify_quotient_iso(n)?);
                    }
                }
                reports.push(verify_associativity(n, config.kind)?);
                reports.push(verify_relations(n, config)?);
            }
        }
    }
    Ok(reports)
}

/// Template rule against the structure-constant oracle, every basis pair.
pub fn verify_rule(n: usize, config: &VerifyConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let table = config.table(n)?;
    let mut counterexamples = Vec::new();
    match config.kind {
        GroupKind::D => {
            let basis = enumerate_basis(n)?;
            let pairs: Vec<(&BasisIndex, &BasisIndex)> = basis
                .iter()
                .flat_map(|p| basis.iter().map(move |q| (p, q)))
                .collect();
            let results: Vec<Result<Option<Counterexample>>> = pairs
                .par_iter()
                .map(|(p, q)| {
                    let rule = multiply_basis(p, q)?;
                    let oracle = oracle_multiply(&table, p, q, OracleStrategy::Counting)?;
                    Ok((rule != oracle).then(|| {
                        Counterexample::pair(
                            p.to_string(),
                            q.to_string(),
                            format!("rule = {rule}, oracle = {oracle}"),
                        )
                    }))
                })
                .collect();
            for r in results {
                if let Some(c) = r? {
                    counterexamples.push(c);
                }
            }
        }
        GroupKind::B => {
            let basis = enumerate_b_basis(n);
            let pairs: Vec<_> = basis
                .iter()
                .flat_map(|p| basis.iter().map(move |q| (p, q)))
                .collect();
            let results: Vec<Result<Option<Counterexample>>> = pairs
                .par_iter()
                .map(|(p, q)| {
                    let rule = multiply_basis_b(p, q, n)?;
                    let oracle = oracle_multiply_b(&table, p, q, OracleStrategy::Counting)?;
                    Ok((rule != oracle).then(|| {
                        Counterexample::pair(
                            p.to_string(),
                            q.to_string(),
                            format!("rule = {rule}, oracle = {oracle}"),
                        )
                    }))
                })
                .collect();
            for r in results {
                if let Some(c) = r? {
                    counterexamples.push(c);
                }
            }
        }
    }
    let mut findings = Vec::new();
    if config.kind == GroupKind::D && n == PUBLISHED_DISCREPANCY.3 {
        findings.push(published_discrepancy_finding(&table)?);
    }
    Ok(
        CheckReport::new("rule", n, counterexamples, start.elapsed().as_millis())
            .with_algebra(config.kind.letter())
            .with_findings(findings),
    )
}

/// Compares the rule and the oracle for the one pair whose published
/// product line differs from both.
pub fn published_discrepancy_finding(table: &GroupTable) -> Result<Finding> {
    let (p_text, q_text, published, n) = PUBLISHED_DISCREPANCY;
    let p = BasisIndex::parse(p_text, n)?;
    let q = BasisIndex::parse(q_text, n)?;
    let rule = multiply_basis(&p, &q)?;
    let oracle = oracle_multiply(table, &p, &q, OracleStrategy::Counting)?;
    Ok(Finding {
        p: p_text.into(),
        q: q_text.into(),
        rule: rule.to_text(),
        oracle: oracle.to_text(),
        published: published.into(),
        rule_equals_oracle: rule == oracle,
        rule_equals_published: rule.to_text() == published,
    })
}

/// Both oracle strategies on every pair; exact agreement required.
pub fn verify_oracle_strategies(n: usize, config: &VerifyConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let table = config.table(n)?;
    let mut counterexamples = Vec::new();
    match config.kind {
        GroupKind::D => {
            let basis = enumerate_basis(n)?;
            for p in &basis {
                for q in &basis {
                    let a = oracle_multiply(&table, p, q, OracleStrategy::Counting)?;
                    let b = oracle_multiply(&table, p, q, OracleStrategy::Convolution)?;
                    if a != b {
                        counterexamples.push(Counterexample::pair(
                            p.to_string(),
                            q.to_string(),
                            format!("counting = {a}, convolution = {b}"),
                        ));
                    }
                }
            }
        }
        GroupKind::B => {
            let basis = enumerate_b_basis(n);
            for p in &basis {
                for q in &basis {
                    let a = oracle_multiply_b(&table, p, q, OracleStrategy::Counting)?;
                    let b = oracle_multiply_b(&table, p, q, OracleStrategy::Convolution)?;
                    if a != b {
                        counterexamples.push(Counterexample::pair(
                            p.to_string(),
                            q.to_string(),
                            format!("counting = {a}, convolution = {b}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(
        CheckReport::new("strategies", n, counterexamples, start.elapsed().as_millis())
            .with_algebra(config.kind.letter()),
    )
}

/// Associativity of the template product: exhaustive at small ranks,
/// deterministic samples above.
pub fn verify_associativity(n: usize, kind: GroupKind) -> Result<CheckReport> {
    let start = Instant::now();
    let mut counterexamples = Vec::new();
    match kind {
        GroupKind::D => {
            let basis = enumerate_basis(n)?;
            let triples = associativity_triples(basis.len());
            for (i, j, k) in triples {
                let (p, q, r) = (&basis[i], &basis[j], &basis[k]);
                let left = multiply_basis(p, q)?
                    .multiply(&AlgebraElement::basis(r.clone()))?;
                let right =
                    AlgebraElement::basis(p.clone()).multiply(&multiply_basis(q, r)?)?;
                if left != right {
                    counterexamples.push(Counterexample::triple(
                        p.to_string(),
                        q.to_string(),
                        r.to_string(),
                        format!("(pq)r = {left}, p(qr) = {right}"),
                    ));
                }
            }
        }
        GroupKind::B => {
            let basis = enumerate_b_basis(n);
            let triples = associativity_triples(basis.len());
            for (i, j, k) in triples {
                let (p, q, r) = (&basis[i], &basis[j], &basis[k]);
                let left = multiply_basis_b(p, q, n)?
                    .multiply(&BAlgebraElement::basis(r.clone(), n)?)?;
                let right = BAlgebraElement::basis(p.clone(), n)?
                    .multiply(&multiply_basis_b(q, r, n)?)?;
                if left != right {
                    counterexamples.push(Counterexample::triple(
                        p.to_string(),
                        q.to_string(),
                        r.to_string(),
                        format!("(pq)r = {left}, p(qr) = {right}"),
                    ));
                }
            }
        }
    }
    Ok(
        CheckReport::new("associativity", n, counterexamples, start.elapsed().as_millis())
            .with_algebra(kind.letter()),
    )
}

fn associativity_triples(basis_len: usize) -> Vec<(usize, usize, usize)> {
    let rank_bits = basis_len.trailing_zeros() as usize;
    if rank_bits <= ASSOCIATIVITY_EXHAUSTIVE_MAX {
        let mut all = Vec::with_capacity(basis_len.pow(3));
        for i in 0..basis_len {
            for j in 0..basis_len {
                for k in 0..basis_len {
                    all.push((i, j, k));
                }
            }
        }
        all
    } else {
        let mut rng = StdRng::seed_from_u64(ASSOCIATIVITY_SEED);
        (0..ASSOCIATIVITY_SAMPLES)
            .map(|_| {
                (
                    rng.gen_range(0..basis_len),
                    rng.gen_range(0..basis_len),
                    rng.gen_range(0..basis_len),
                )
            })
            .collect()
    }
}

/// Checks the group realization itself: order, diagram relations, length
/// steps, and coset counting for every generator subset.
pub fn verify_relations(n: usize, config: &VerifyConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let table = config.table(n)?;
    let mut counterexamples = Vec::new();
    let mut fail = |detail: String| {
        counterexamples.push(Counterexample::pair("-", "-", detail));
    };

    if table.order() != config.kind.order(n) {
        fail(format!(
            "BFS found {} elements, closed form gives {}",
            table.order(),
            config.kind.order(n)
        ));
    }

    // Diagram relations: the pairwise product orders.
    let gen_count = table.generator_count();
    for a in 0..gen_count {
        for b in (a + 1)..gen_count {
            let expected = diagram_order(config.kind, a, b);
            let mut id = 0u32;
            let mut count = 0usize;
            loop {
                id = table.right_multiply(id, a);
                id = table.right_multiply(id, b);
                count += 1;
                if id == 0 || count > 8 {
                    break;
                }
            }
            if count != expected {
                fail(format!(
                    "generator pair ({a},{b}) has product order {count}, expected {expected}"
                ));
            }
        }
    }

    // Length steps by exactly one along every edge.
    for id in 0..table.order() as u32 {
        for g in 0..gen_count {
            let next = table.right_multiply(id, g);
            let diff = table.length(id).abs_diff(table.length(next));
            if diff != 1 {
                fail(format!("length step {diff} at element {id}, generator {g}"));
            }
        }
    }

    // X_S = {e} and |X_J| * |W_J| = |W| for every J.
    let full = (1u32 << gen_count) - 1;
    let xs = table.x_set(full);
    if xs.len() != 1 || !table.element(xs[0]).is_identity() {
        fail("X_S is not exactly the identity".into());
    }
    for j in 0..=full {
        let product = table.x_size(j) * table.subgroup_order(j);
        if product != table.order() {
            fail(format!(
                "|X_J| * |W_J| = {product} differs from |W| = {} at J = {j:#b}",
                table.order()
            ));
        }
    }

    Ok(
        CheckReport::new("relations", n, counterexamples, start.elapsed().as_millis())
            .with_algebra(config.kind.letter()),
    )
}

/// Order of `s_a s_b` read off the Dynkin diagram. Generator 0 is the
/// branched node (type D) or the sign flip (type B).
fn diagram_order(kind: GroupKind, a: usize, b: usize) -> usize {
    debug_assert!(a < b);
    match kind {
        GroupKind::D => match (a, b) {
            (0, 1) => 2,
            (0, 2) => 3,
            (0, _) => 2,
            (x, y) if y == x + 1 => 3,
            _ => 2,
        },
        GroupKind::B => match (a, b) {
            (0, 1) => 4,
            (x, y) if y == x + 1 => 3,
            _ => 2,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_matches_oracle_at_small_ranks() {
        for n in [2usize, 3] {
            let config = VerifyConfig::new(GroupKind::D);
            let report = verify_rule(n, &config).unwrap();
            assert!(report.pass, "{:?}", report.counterexamples);
        }
        let config = VerifyConfig::new(GroupKind::B);
        for n in 1..=3 {
            let report = verify_rule(n, &config).unwrap();
            assert!(report.pass, "type B n={n}: {:?}", report.counterexamples);
        }
    }

    #[test]
    fn discrepancy_is_reported_but_not_failed() {
        let config = VerifyConfig::new(GroupKind::D);
        let report = verify_rule(4, &config).unwrap();
        assert!(report.pass);
        let findings = report.findings.expect("finding attached at rank 4");
        assert_eq!(findings.len(), 1);
        let f = &findings[0];
        assert!(f.rule_equals_oracle);
        assert!(!f.rule_equals_published);
        assert_eq!(f.rule, "1*[1,1,1,1] + 4*[2,2]'");
    }

    #[test]
    fn strategies_report_passes() {
        let config = VerifyConfig::new(GroupKind::D);
        assert!(verify_oracle_strategies(2, &config).unwrap().pass);
        let config = VerifyConfig::new(GroupKind::B);
        assert!(verify_oracle_strategies(1, &config).unwrap().pass);
        assert!(verify_oracle_strategies(2, &config).unwrap().pass);
    }

    #[test]
    fn associativity_small() {
        assert!(verify_associativity(2, GroupKind::D).unwrap().pass);
        assert!(verify_associativity(3, GroupKind::D).unwrap().pass);
        assert!(verify_associativity(2, GroupKind::B).unwrap().pass);
    }

    #[test]
    fn relations_small() {
        let config = VerifyConfig::new(GroupKind::D);
        for n in 2..=4 {
            assert!(verify_relations(n, &config).unwrap().pass);
        }
        let config = VerifyConfig::new(GroupKind::B);
        for n in 1..=3 {
            assert!(verify_relations(n, &config).unwrap().pass);
        }
    }

    #[test]
    fn suite_runner_covers_ranges() {
        let config = VerifyConfig::new(GroupKind::D);
        let reports = run_suite(Suite::Rule, (2, 3), &config).unwrap();
        assert_eq!(reports.len(), 2);
        assert!(reports.iter().all(|r| r.pass));

        let reports = run_suite(Suite::All, (3, 3), &config).unwrap();
        let names: Vec<&str> = reports.iter().map(|r| r.check).collect();
        assert_eq!(
            names,
            vec!["rule", "ideal", "quotient", "associativity", "relations"]
        );
    }
}
