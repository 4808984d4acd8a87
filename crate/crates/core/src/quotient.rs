//! The ideal of weight-`n` basis elements and the quotient isomorphism onto
//! the type-B algebra two ranks down.
//!
//! The ideal is spanned by a subset of the basis, so the quotient is
//! represented concretely by dropping weight-`n` terms rather than by coset
//! arithmetic. Three independent routes must agree on every product of
//! small-weight basis elements: multiply in type D then project, multiply
//! in type B at rank `n - 2`, and read the type-D templates whose corner
//! entry is at least 2 directly as type-B templates.

use std::time::Instant;

use crate::algebra_b::{multiply_basis_b, BAlgebraElement};
use crate::algebra_d::{multiply_basis, AlgebraElement};
use crate::composition::{enumerate_basis, BasisIndex, ClassTag};
use crate::error::Result;
use crate::report::{CheckReport, Counterexample};
use crate::template::enumerate_z_d;

/// True iff every term has weight `n`; the zero element qualifies.
pub fn is_in_ideal(x: &AlgebraElement) -> bool {
    x.terms().all(|(b, _)| b.weight() == x.rank())
}

/// Drops the weight-`n` terms and reinterprets the remainder (weights at
/// most `n - 2`) in the type-B algebra at rank `n - 2`.
pub fn project(x: &AlgebraElement) -> Result<BAlgebraElement> {
    let target = x.rank() - 2;
    let mut out = BAlgebraElement::zero(target);
    for (b, c) in x.terms() {
        if b.weight() < x.rank() {
            out.add_term(b.composition().clone(), c)?;
        }
    }
    Ok(out)
}

/// Checks that every product with a weight-`n` factor lands in the ideal.
pub fn verify_ideal(n: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let basis = enumerate_basis(n)?;
    let mut counterexamples = Vec::new();
    for p in &basis {
        for q in basis.iter().filter(|q| q.class() != ClassTag::CLess) {
            for (left, a, b) in [(true, p, q), (false, q, p)] {
                let prod = multiply_basis(a, b)?;
                if !is_in_ideal(&prod) {
                    let bad = prod
                        .terms()
                        .find(|(t, _)| t.weight() != n)
                        .map(|(t, _)| t.to_string())
                        .unwrap_or_default();
                    counterexamples.push(Counterexample::pair(
                        a.to_string(),
                        b.to_string(),
                        format!(
                            "term {bad} escapes the ideal ({} factor of weight {n})",
                            if left { "right" } else { "left" }
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::new(
        "ideal",
        n,
        counterexamples,
        start.elapsed().as_millis(),
    ))
}

/// The quotient product computed directly on templates: those with corner
/// entry at least 2 are exactly the type-B templates at rank `n - 2` once 2
/// is subtracted from the corner, and that subtraction touches neither the
/// reading word nor any row or column sum.
pub fn product_via_corner_offset(p: &BasisIndex, q: &BasisIndex) -> Result<BAlgebraElement> {
    let target = p.rank() - 2;
    let mut out = BAlgebraElement::zero(target);
    for t in enumerate_z_d(p, q)? {
        if t.z00() >= 2 {
            out.add_term(t.reading_word_b(), 1)?;
        }
    }
    Ok(out)
}

/// Checks the quotient isomorphism at rank `n >= 3`: for all pairs of
/// small-weight basis elements, project-after-multiply, the type-B product
/// at rank `n - 2`, and the corner-offset template count all agree.
pub fn verify_quotient_iso(n: usize) -> Result<CheckReport> {
    let start = Instant::now();
    let target = n - 2;
    let basis: Vec<BasisIndex> = enumerate_basis(n)?
        .into_iter()
        .filter(|b| b.class() == ClassTag::CLess)
        .collect();
    let mut counterexamples = Vec::new();
    for p in &basis {
        for q in &basis {
            let projected = project(&multiply_basis(p, q)?)?;
            let direct = multiply_basis_b(p.composition(), q.composition(), target)?;
            let offset = product_via_corner_offset(p, q)?;
            if projected != direct {
                counterexamples.push(Counterexample::pair(
                    p.to_string(),
                    q.to_string(),
                    format!(
                        "project(D product) = {projected} but B product = {direct}"
                    ),
                ));
            }
            if direct != offset {
                counterexamples.push(Counterexample::pair(
                    p.to_string(),
                    q.to_string(),
                    format!(
                        "B product = {direct} but corner-offset templates give {offset}"
                    ),
                ));
            }
        }
    }
    Ok(CheckReport::new(
        "quotient",
        n,
        counterexamples,
        start.elapsed().as_millis(),
    ))
}
