//! The type-B descent algebra via the same template machinery.
//!
//! The type-B product at rank `n` expands over the templates satisfying the
//! row/column constraints with no parity condition; the reading word ignores
//! the corner entry entirely and nothing is ever primed. Weight `n - 1` is a
//! perfectly good type-B weight.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra_d::ElementView;
use crate::composition::{compositions_up_to, Composition, GeneratorSet};
use crate::error::{Error, Result};
use crate::template::enumerate_z_b;

/// A sparse integer combination of compositions of weight at most the rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BAlgebraElement {
    n: usize,
    terms: BTreeMap<Composition, i64>,
}

impl BAlgebraElement {
    pub fn zero(n: usize) -> Self {
        BAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Composition::empty(), 1);
        BAlgebraElement { n, terms }
    }

    pub fn basis(q: Composition, n: usize) -> Result<Self> {
        if q.weight() > n {
            return Err(Error::InvalidIndex(format!(
                "weight {} exceeds rank {n}",
                q.weight()
            )));
        }
        let mut terms = BTreeMap::new();
        terms.insert(q, 1);
        Ok(BAlgebraElement { n, terms })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order (weight ascending, then lexicographic).
    pub fn terms(&self) -> impl Iterator<Item = (&Composition, i64)> {
        let mut sorted: Vec<(&Composition, i64)> =
            self.terms.iter().map(|(q, &c)| (q, c)).collect();
        sorted.sort_by(|(a, _), (b, _)| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
        sorted.into_iter()
    }

    pub fn coeff(&self, q: &Composition) -> i64 {
        self.terms.get(q).copied().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, q: Composition, c: i64) -> Result<()> {
        if q.weight() > self.n {
            return Err(Error::InvalidIndex(format!(
                "weight {} exceeds rank {}",
                q.weight(),
                self.n
            )));
        }
        if c == 0 {
            return Ok(());
        }
        let new = self.coeff(&q).checked_add(c).ok_or(Error::Overflow)?;
        if new == 0 {
            self.terms.remove(&q);
        } else {
            self.terms.insert(q, new);
        }
        Ok(())
    }

    pub fn add(&self, other: &BAlgebraElement) -> Result<BAlgebraElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = self.clone();
        for (q, c) in other.terms() {
            out.add_term(q.clone(), c)?;
        }
        Ok(out)
    }

    pub fn scale(&self, factor: i64) -> Result<BAlgebraElement> {
        let mut out = BAlgebraElement::zero(self.n);
        for (q, c) in self.terms() {
            out.add_term(q.clone(), c.checked_mul(factor).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &BAlgebraElement) -> Result<BAlgebraElement> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let mut out = BAlgebraElement::zero(self.n);
        for (p, cp) in self.terms() {
            for (q, cq) in other.terms() {
                let factor = cp.checked_mul(cq).ok_or(Error::Overflow)?;
                let product = multiply_basis_b(p, q, self.n)?;
                for (r, c) in product.terms() {
                    out.add_term(r.clone(), c.checked_mul(factor).ok_or(Error::Overflow)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms()
            .map(|(q, c)| format!("{c}*{q}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(ElementView::from_compositions("B", self.n, self.terms()))
            .expect("serializable")
    }
}

impl fmt::Display for BAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// The type-B basis product at rank `n`: one plain term per template.
pub fn multiply_basis_b(p: &Composition, q: &Composition, n: usize) -> Result<BAlgebraElement> {
    let mut out = BAlgebraElement::zero(n);
    for t in enumerate_z_b(p, q, n)? {
        out.add_term(t.reading_word_b(), 1)?;
    }
    Ok(out)
}

/// The type-B basis at rank `n` in canonical order; there are `2^n` entries.
pub fn enumerate_b_basis(n: usize) -> Vec<Composition> {
    compositions_up_to(n)
}

/// The generator subset corresponding to a type-B composition at rank `n`:
/// the generators at partial sums `n - m, n - m + q_1, ...`, where subscript
/// 0 denotes the sign-flip generator and subscript `i` the adjacent swap
/// `s_i`. `B_q` is then the formal sum over the complement's coset
/// representatives, as in type D.
pub fn b_subset_of(q: &Composition, n: usize) -> Result<u32> {
    let m = q.weight();
    if m > n {
        return Err(Error::InvalidIndex(format!(
            "weight {m} exceeds rank {n}"
        )));
    }
    let mut mask = 0u32;
    let mut sum = n - m;
    for j in 0..q.len() {
        mask |= 1 << sum;
        sum += q.parts()[j];
    }
    Ok(mask)
}

/// Inverse of [`b_subset_of`]; total on subsets of the rank-`n` generator
/// set.
pub fn b_index_of_subset(mask: u32, n: usize) -> Result<Composition> {
    if mask >> n != 0 {
        return Err(Error::MalformedSubset(format!(
            "generator subscript out of range for rank {n}"
        )));
    }
    let sums: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
    if sums.is_empty() {
        return Ok(Composition::empty());
    }
    let mut parts = Vec::with_capacity(sums.len());
    for w in sums.windows(2) {
        parts.push(w[1] - w[0]);
    }
    parts.push(n - sums[sums.len() - 1]);
    Composition::new(parts)
}

/// The type-D generator-set mask uses the same packing (bit 0 for the
/// branched node); this re-export keeps the two bijections side by side for
/// the oracle.
pub fn d_mask(j: &GeneratorSet) -> u32 {
    j.to_mask()
}
