//! The type-D descent algebra: sparse exact-integer combinations of basis
//! indices and the template multiplication rule.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::composition::{BasisIndex, ClassTag, Composition};
use crate::error::{Error, Result};
use crate::template::{enumerate_z_d, FilledTemplate};

/// A sparse integer linear combination of basis indices of a fixed rank.
/// Zero coefficients are never stored; terms iterate in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<BasisIndex, i64>,
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        AlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// The multiplicative identity `B_[]`.
    pub fn identity(n: usize) -> Result<Self> {
        Ok(AlgebraElement::basis(BasisIndex::new(
            Composition::empty(),
            false,
            n,
        )?))
    }

    pub fn basis(b: BasisIndex) -> Self {
        let n = b.rank();
        let mut terms = BTreeMap::new();
        terms.insert(b, 1);
        AlgebraElement { n, terms }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, i64)> {
        self.terms.iter().map(|(b, &c)| (b, c))
    }

    pub fn coeff(&self, b: &BasisIndex) -> i64 {
        self.terms.get(b).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, b: BasisIndex, c: i64) -> Result<()> {
        if b.rank() != self.n {
            return Err(Error::RankMismatch(self.n, b.rank()));
        }
        if c == 0 {
            return Ok(());
        }
        let new = self
            .coeff(&b)
            .checked_add(c)
            .ok_or(Error::Overflow)?;
        if new == 0 {
            self.terms.remove(&b);
        } else {
            self.terms.insert(b, new);
        }
        Ok(())
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.n);
        for (b, c) in self.terms() {
            out.add_term(b.clone(), c.checked_mul(factor).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    /// Bilinear extension of the basis product.
    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = AlgebraElement::zero(self.n);
        for (p, cp) in self.terms() {
            for (q, cq) in other.terms() {
                let factor = cp.checked_mul(cq).ok_or(Error::Overflow)?;
                let product = multiply_basis(p, q)?;
                for (b, c) in product.terms() {
                    out.add_term(b.clone(), c.checked_mul(factor).ok_or(Error::Overflow)?)?;
                }
            }
        }
        Ok(out)
    }

    /// Text form: coefficients and indices joined by `+`, e.g.
    /// `2*[1,3] + 1*[1,2,1]`. The zero element renders as `0`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms()
            .map(|(b, c)| format!("{c}*{b}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ElementView::new("D", self.n, self.terms())).expect("serializable")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize)]
struct TermView {
    q: Vec<usize>,
    primed: bool,
    c: i64,
}

#[derive(Serialize)]
pub(crate) struct ElementView {
    algebra: &'static str,
    n: usize,
    terms: Vec<TermView>,
}

impl ElementView {
    fn new<'a>(
        algebra: &'static str,
        n: usize,
        terms: impl Iterator<Item = (&'a BasisIndex, i64)>,
    ) -> Self {
        ElementView {
            algebra,
            n,
            terms: terms
                .map(|(b, c)| TermView {
                    q: b.composition().parts().to_vec(),
                    primed: b.primed(),
                    c,
                })
                .collect(),
        }
    }

    pub(crate) fn from_compositions<'a>(
        algebra: &'static str,
        n: usize,
        terms: impl Iterator<Item = (&'a Composition, i64)>,
    ) -> Self {
        ElementView {
            algebra,
            n,
            terms: terms
                .map(|(q, c)| TermView {
                    q: q.parts().to_vec(),
                    primed: false,
                    c,
                })
                .collect(),
        }
    }
}

/// Which branch of the multiplication rule a template falls under.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ProductCase {
    /// `q` in C_1: plain term.
    One,
    /// `q` in C_n: plain term.
    Two,
    /// `q` in C_n': primed unless the word starts with 1.
    Three,
    /// `q` in C_<n, weight-n `p` with the parity that flips the prime.
    FourA,
    /// `q` and `p` in C_<n with `z_00 = 0`: doubled or split term.
    FourB,
    /// `q` in C_<n, remaining templates: plain term.
    FourC,
}

impl fmt::Display for ProductCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = match self {
            ProductCase::One => "1",
            ProductCase::Two => "2",
            ProductCase::Three => "3",
            ProductCase::FourA => "4a",
            ProductCase::FourB => "4b",
            ProductCase::FourC => "4c",
        };
        f.write_str(label)
    }
}

/// Classifies one template of `B_p * B_q` under the rule. Cases 4a and 4b
/// are disjoint: 4a needs `p` of weight `n`, 4b needs `p` of smaller weight.
pub fn product_case(p: &BasisIndex, q: &BasisIndex, t: &FilledTemplate) -> ProductCase {
    match q.class() {
        ClassTag::C1 => ProductCase::One,
        ClassTag::Cn => ProductCase::Two,
        ClassTag::CnPrime => ProductCase::Three,
        ClassTag::CLess => {
            let r1 = t.reading_word().first().unwrap_or(0);
            let y_odd = t.y_sum() % 2 == 1;
            let flip = r1 >= 2
                && match p.class() {
                    ClassTag::C1 | ClassTag::Cn => y_odd,
                    ClassTag::CnPrime => !y_odd,
                    ClassTag::CLess => false,
                };
            if flip {
                ProductCase::FourA
            } else if p.class() == ClassTag::CLess && t.z00() == 0 {
                ProductCase::FourB
            } else {
                ProductCase::FourC
            }
        }
    }
}

/// The contribution of one template: one or two `(index, coefficient)`
/// pairs. Prime legality is checked rather than assumed; a violation means
/// the rule or the enumeration is broken.
pub fn term_for_template(
    p: &BasisIndex,
    q: &BasisIndex,
    t: &FilledTemplate,
) -> Result<Vec<(BasisIndex, i64)>> {
    let n = p.rank();
    let r = t.reading_word();
    if r.weight() + 1 == n {
        return Err(Error::Internal(format!(
            "reading word {r} of weight {} arose at rank {n}",
            r.weight()
        )));
    }
    let r1 = r.first().unwrap_or(0);
    let plain = |r: &Composition| BasisIndex::new(r.clone(), false, n);
    let primed = |r: &Composition| {
        BasisIndex::new(r.clone(), true, n).map_err(|e| {
            Error::Internal(format!("illegal primed output {r} for {p} * {q}: {e}"))
        })
    };
    match product_case(p, q, t) {
        ProductCase::One | ProductCase::Two | ProductCase::FourC => {
            Ok(vec![(plain(&r)?, 1)])
        }
        ProductCase::Three => {
            if r1 == 1 {
                Ok(vec![(plain(&r)?, 1)])
            } else {
                Ok(vec![(primed(&r)?, 1)])
            }
        }
        ProductCase::FourA => Ok(vec![(primed(&r)?, 1)]),
        ProductCase::FourB => {
            if r1 == 1 {
                Ok(vec![(plain(&r)?, 2)])
            } else {
                Ok(vec![(plain(&r)?, 1), (primed(&r)?, 1)])
            }
        }
    }
}

/// The product of two basis elements under the template rule.
pub fn multiply_basis(p: &BasisIndex, q: &BasisIndex) -> Result<AlgebraElement> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch(p.rank(), q.rank()));
    }
    let mut out = AlgebraElement::zero(p.rank());
    for t in enumerate_z_d(p, q)? {
        for (b, c) in term_for_template(p, q, &t)? {
            out.add_term(b, c)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::enumerate_basis;
    use proptest::prelude::*;

    fn d(text: &str, n: usize) -> BasisIndex {
        BasisIndex::parse(text, n).unwrap()
    }

    fn product(p: &str, q: &str, n: usize) -> String {
        multiply_basis(&d(p, n), &d(q, n)).unwrap().to_text()
    }

    #[test]
    fn worked_products() {
        assert_eq!(product("[4]", "[1,3]", 4), "1*[1,1,2] + 1*[1,2,1] + 2*[1,3]");
        assert_eq!(product("[3,1]'", "[4]", 4), "2*[1,2,1] + 1*[1,3] + 1*[3,1]");
        assert_eq!(product("[4]", "[2]", 4), "1*[2,1,1]' + 2*[2,2]");
        assert_eq!(
            product("[2]", "[2]", 4),
            "1*[1,1] + 2*[2] + 2*[1,1,1,1] + 1*[2,2] + 1*[2,2]'"
        );
        assert_eq!(
            product("[1,1]", "[2]", 4),
            "4*[1,1] + 4*[1,1,1,1] + 2*[1,1,2]"
        );
    }

    #[test]
    fn displayed_templates_for_primed_pair() {
        // The five admissible templates give 4*[2,2]' + 1*[1,1,1,1]; the
        // published line for this product also lists a [1,3] term, which no
        // template can produce (every column sums to 2). The group oracle
        // arbitrates in the acceptance suite.
        assert_eq!(product("[2,2]'", "[4]'", 4), "1*[1,1,1,1] + 4*[2,2]'");
    }

    #[test]
    fn identity_is_two_sided() {
        for n in 2..=5 {
            let e = AlgebraElement::identity(n).unwrap();
            for b in enumerate_basis(n).unwrap() {
                let x = AlgebraElement::basis(b.clone());
                assert_eq!(e.multiply(&x).unwrap(), x, "left identity at {b}");
                assert_eq!(x.multiply(&e).unwrap(), x, "right identity at {b}");
            }
        }
    }

    #[test]
    fn bilinearity_and_scaling() {
        let n = 4;
        let x = AlgebraElement::basis(d("[4]", n)).scale(2).unwrap();
        let y = AlgebraElement::basis(d("[1,3]", n));
        let got = x.multiply(&y).unwrap();
        assert_eq!(got.to_text(), "2*[1,1,2] + 2*[1,2,1] + 4*[1,3]");

        let zero = AlgebraElement::zero(n);
        assert!(zero.multiply(&y).unwrap().is_zero());

        let cancel = y.add(&y.scale(-1).unwrap()).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn rank_mismatch_is_rejected() {
        let x = AlgebraElement::basis(d("[2]", 4));
        let y = AlgebraElement::basis(d("[2]", 5));
        assert_eq!(x.multiply(&y), Err(Error::RankMismatch(4, 5)));
        assert_eq!(x.add(&y), Err(Error::RankMismatch(4, 5)));
    }

    #[test]
    fn overflow_surfaces_as_an_error() {
        let x = AlgebraElement::basis(d("[2]", 4)).scale(i64::MAX).unwrap();
        assert_eq!(x.add(&x), Err(Error::Overflow));
        assert_eq!(x.scale(2), Err(Error::Overflow));
        let y = AlgebraElement::basis(d("[2]", 4)).scale(3).unwrap();
        assert_eq!(x.multiply(&y), Err(Error::Overflow));
    }

    #[test]
    fn products_have_nonnegative_coefficients_and_legal_weights() {
        for n in 2..=4 {
            let basis = enumerate_basis(n).unwrap();
            for p in &basis {
                for q in &basis {
                    let prod = multiply_basis(p, q).unwrap();
                    for (b, c) in prod.terms() {
                        assert!(c > 0, "coefficient {c} in {p} * {q}");
                        assert_ne!(b.weight(), n - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn weight_n_factor_forces_weight_n_terms() {
        for n in 2..=4 {
            let basis = enumerate_basis(n).unwrap();
            for p in &basis {
                for q in basis.iter().filter(|q| q.class() != ClassTag::CLess) {
                    for (b, _) in multiply_basis(p, q).unwrap().terms() {
                        assert_eq!(b.weight(), n);
                    }
                    for (b, _) in multiply_basis(q, p).unwrap().terms() {
                        assert_eq!(b.weight(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn json_form_is_canonical() {
        let prod = multiply_basis(&d("[4]", 4), &d("[1,3]", 4)).unwrap();
        let json = serde_json::to_string(&prod.to_json_value()).unwrap();
        assert_eq!(
            json,
            "{\"algebra\":\"D\",\"n\":4,\"terms\":[{\"q\":[1,1,2],\"primed\":false,\"c\":1},{\"q\":[1,2,1],\"primed\":false,\"c\":1},{\"q\":[1,3],\"primed\":false,\"c\":2}]}"
        );
    }

    proptest! {
        #[test]
        fn add_commutes(mask_a in 0u32..16, mask_b in 0u32..16, ca in -5i64..=5, cb in -5i64..=5) {
            let n = 4;
            let basis = enumerate_basis(n).unwrap();
            let a = AlgebraElement::basis(basis[mask_a as usize].clone()).scale(ca).unwrap();
            let b = AlgebraElement::basis(basis[mask_b as usize].clone()).scale(cb).unwrap();
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        }
    }
}
