//! Compositions, basis indices and the bijection with generator subsets.
//!
//! The basis of the type-D algebra at rank `n` is indexed by compositions of
//! weight at most `n - 2` together with compositions of weight exactly `n`,
//! where a weight-`n` composition whose first component is at least 2 occurs
//! twice: once plain and once primed. These four families are in bijection
//! with the `2^n` subsets of the generator set
//! `S = {s_1', s_1, ..., s_{n-1}}`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An ordered list of positive integers. The empty composition is allowed
/// and has weight 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Composition(Vec<usize>);

impl Composition {
    /// Builds a composition, rejecting zero parts.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidIndex(
                "composition parts must be positive".into(),
            ));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.first().copied()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// The four families of compositions indexing the basis.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ClassTag {
    /// Weight at most `n - 2`.
    CLess,
    /// Weight `n`, first component 1.
    C1,
    /// Weight `n`, first component at least 2, plain.
    Cn,
    /// Weight `n`, first component at least 2, primed.
    CnPrime,
}

/// A basis element index of the rank-`n` type-D algebra: a composition plus
/// a prime flag.
///
/// Invariants: the weight is either `n` or at most `n - 2` (weight `n - 1`
/// indexes nothing), and the prime flag may be set only on weight-`n`
/// compositions whose first component is at least 2.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BasisIndex {
    q: Composition,
    primed: bool,
    n: usize,
}

impl BasisIndex {
    pub fn new(q: Composition, primed: bool, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank { min: 2, got: n });
        }
        let m = q.weight();
        if m != n && m + 2 > n {
            return Err(Error::InvalidIndex(format!(
                "weight {m} is invalid at rank {n}: must be {n} or at most {}",
                n.saturating_sub(2)
            )));
        }
        if primed {
            if m != n {
                return Err(Error::InvalidIndex(format!(
                    "prime requires weight {n}, got {m}"
                )));
            }
            if q.first().is_none_or(|f| f < 2) {
                return Err(Error::InvalidIndex(
                    "prime requires the first component to be at least 2".into(),
                ));
            }
        }
        Ok(BasisIndex { q, primed, n })
    }

    pub fn composition(&self) -> &Composition {
        &self.q
    }

    pub fn primed(&self) -> bool {
        self.primed
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn weight(&self) -> usize {
        self.q.weight()
    }

    /// The family this index belongs to.
    pub fn class(&self) -> ClassTag {
        if self.primed {
            ClassTag::CnPrime
        } else if self.q.weight() == self.n {
            if self.q.first() == Some(1) {
                ClassTag::C1
            } else {
                ClassTag::Cn
            }
        } else {
            ClassTag::CLess
        }
    }

    /// Parses the textual form `"[" (int ("," int)*)? "]" "'"?`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let (q, primed) = parse_composition_text(text)?;
        BasisIndex::new(q, primed, n)
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)?;
        if self.primed {
            write!(f, "'")?;
        }
        Ok(())
    }
}

impl PartialOrd for BasisIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: weight ascending, then lexicographic on parts, then
/// unprimed before primed. Serialized elements list their terms in this
/// order, so it is part of the public contract.
impl Ord for BasisIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.weight().cmp(&other.weight()))
            .then_with(|| self.q.cmp(&other.q))
            .then_with(|| self.primed.cmp(&other.primed))
    }
}

/// Parses `[a,b,...]` with an optional trailing apostrophe. The rank is not
/// validated here.
pub fn parse_composition_text(text: &str) -> Result<(Composition, bool)> {
    let mut rest = text;
    let primed = if let Some(stripped) = rest.strip_suffix('\'') {
        rest = stripped;
        true
    } else {
        false
    };
    let inner = rest
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..] composition, got {text:?}")))?;
    if inner.is_empty() {
        return Ok((Composition::empty(), primed));
    }
    let mut parts = Vec::new();
    for piece in inner.split(',') {
        if piece.is_empty() || !piece.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!(
                "expected a positive integer, got {piece:?} in {text:?}"
            )));
        }
        let value: usize = piece
            .parse()
            .map_err(|_| Error::Parse(format!("integer out of range: {piece:?}")))?;
        parts.push(value);
    }
    Ok((Composition::new(parts)?, primed))
}

/// A subset of the type-D generator set `S = {s_1', s_1, ..., s_{n-1}}`.
///
/// The branched node `s_1'` is a distinguished flag rather than an index, so
/// no arithmetic can be done on it by accident; the remaining generators are
/// kept as a bitmask over subscripts `1..n-1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct GeneratorSet {
    branch: bool,
    plain: u32,
}

impl GeneratorSet {
    pub fn empty() -> Self {
        GeneratorSet::default()
    }

    /// The full generator set at rank `n`.
    pub fn full(n: usize) -> Self {
        let mut plain = 0u32;
        for i in 1..n {
            plain |= 1 << i;
        }
        GeneratorSet { branch: true, plain }
    }

    pub fn from_parts(branch: bool, plain: impl IntoIterator<Item = usize>) -> Self {
        let mut set = GeneratorSet {
            branch,
            plain: 0,
        };
        for i in plain {
            set.plain |= 1 << i;
        }
        set
    }

    pub fn contains_branch(&self) -> bool {
        self.branch
    }

    pub fn contains_plain(&self, i: usize) -> bool {
        self.plain >> i & 1 == 1
    }

    pub fn insert_branch(&mut self) {
        self.branch = true;
    }

    pub fn insert_plain(&mut self, i: usize) {
        self.plain |= 1 << i;
    }

    pub fn len(&self) -> usize {
        self.plain.count_ones() as usize + usize::from(self.branch)
    }

    pub fn is_empty(&self) -> bool {
        !self.branch && self.plain == 0
    }

    /// Plain subscripts in increasing order.
    pub fn plain_indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.plain;
        (1..32).filter(move |&i| mask >> i & 1 == 1)
    }

    /// `S \ self` at rank `n`.
    pub fn complement(&self, n: usize) -> GeneratorSet {
        let full = GeneratorSet::full(n);
        GeneratorSet {
            branch: !self.branch,
            plain: full.plain & !self.plain,
        }
    }

    /// Packs the subset into a bitmask with bit 0 for the branched node and
    /// bit `i` for `s_i`; this is the indexing the group tables use.
    pub fn to_mask(&self) -> u32 {
        self.plain | u32::from(self.branch)
    }

    pub fn from_mask(mask: u32) -> Self {
        GeneratorSet {
            branch: mask & 1 == 1,
            plain: mask & !1,
        }
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        if self.branch {
            write!(f, "s_1'")?;
            first = false;
        }
        for i in self.plain_indices() {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "s_{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Classifies `(q, primed)` at rank `n`, validating the index invariants.
pub fn class_of(q: &Composition, primed: bool, n: usize) -> Result<ClassTag> {
    BasisIndex::new(q.clone(), primed, n).map(|b| b.class())
}

/// The generator subset corresponding to a basis index.
///
/// For a weight-`n` composition the subset consists of one marker node
/// (`s_1'` when unprimed, `s_1` when primed) together with the generators at
/// the proper partial sums of the parts; for smaller weights the partial
/// sums are shifted by `n - weight` and no marker appears. The subset always
/// has as many elements as the composition has components.
pub fn subset_of(b: &BasisIndex) -> GeneratorSet {
    let parts = b.composition().parts();
    let n = b.rank();
    let k = parts.len();
    let mut set = GeneratorSet::empty();
    match b.class() {
        ClassTag::CLess => {
            let q0 = n - b.weight();
            let mut sum = q0;
            for &part in parts.iter().take(k) {
                set.insert_plain(sum);
                sum += part;
            }
        }
        ClassTag::C1 | ClassTag::Cn => {
            set.insert_branch();
            let mut sum = 0;
            for &part in parts.iter().take(k.saturating_sub(1)) {
                sum += part;
                set.insert_plain(sum);
            }
        }
        ClassTag::CnPrime => {
            set.insert_plain(1);
            let mut sum = 0;
            for &part in parts.iter().take(k.saturating_sub(1)) {
                sum += part;
                set.insert_plain(sum);
            }
        }
    }
    set
}

/// Inverse of [`subset_of`]: recovers the unique basis index whose subset is
/// `j`. The bijection is total on subsets of `S`, so a failure here signals
/// a bug in the caller (an out-of-range subscript).
pub fn index_of_subset(j: &GeneratorSet, n: usize) -> Result<BasisIndex> {
    if n < 2 {
        return Err(Error::InvalidRank { min: 2, got: n });
    }
    if j.plain_indices().any(|i| i >= n) {
        return Err(Error::MalformedSubset(format!(
            "generator subscript out of range for rank {n}: {j}"
        )));
    }
    let has_branch = j.contains_branch();
    let has_s1 = j.contains_plain(1);

    if !has_branch && !has_s1 {
        // All subscripts at least 2: a composition of weight at most n - 2.
        let sums: Vec<usize> = j.plain_indices().collect();
        if sums.is_empty() {
            return BasisIndex::new(Composition::empty(), false, n);
        }
        let mut parts = Vec::with_capacity(sums.len());
        for w in sums.windows(2) {
            parts.push(w[1] - w[0]);
        }
        parts.push(n - sums[sums.len() - 1]);
        return BasisIndex::new(Composition::new(parts)?, false, n);
    }

    // Weight-n classes: the proper partial sums are the plain subscripts,
    // excluding the marker s_1 in the primed case.
    let sums: Vec<usize> = if has_branch {
        j.plain_indices().collect()
    } else {
        j.plain_indices().filter(|&i| i != 1).collect()
    };
    let mut parts = Vec::with_capacity(sums.len() + 1);
    if let Some(&first) = sums.first() {
        parts.push(first);
        for w in sums.windows(2) {
            parts.push(w[1] - w[0]);
        }
        parts.push(n - sums[sums.len() - 1]);
    } else {
        parts.push(n);
    }
    let primed = !has_branch;
    BasisIndex::new(Composition::new(parts)?, primed, n).map_err(|e| {
        Error::MalformedSubset(format!("no valid preimage for {j} at rank {n}: {e}"))
    })
}

/// All compositions of `m` in lexicographic order.
pub fn compositions_of(m: usize) -> Vec<Composition> {
    fn go(m: usize, prefix: &mut Vec<usize>, out: &mut Vec<Composition>) {
        if m == 0 {
            out.push(Composition(prefix.clone()));
            return;
        }
        for first in 1..=m {
            prefix.push(first);
            go(m - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, &mut Vec::new(), &mut out);
    out
}

/// All compositions of weight at most `max` in canonical order (weight
/// ascending, then lexicographic). This is the type-B basis at rank `max`.
pub fn compositions_up_to(max: usize) -> Vec<Composition> {
    (0..=max).flat_map(compositions_of).collect()
}

/// All basis indices at rank `n` in canonical order; there are `2^n`.
pub fn enumerate_basis(n: usize) -> Result<Vec<BasisIndex>> {
    if n < 2 {
        return Err(Error::InvalidRank { min: 2, got: n });
    }
    let mut out = Vec::with_capacity(1 << n);
    for m in 0..=n - 2 {
        for q in compositions_of(m) {
            out.push(BasisIndex::new(q, false, n)?);
        }
    }
    for q in compositions_of(n) {
        let primeable = q.first().is_some_and(|f| f >= 2);
        out.push(BasisIndex::new(q.clone(), false, n)?);
        if primeable {
            out.push(BasisIndex::new(q, true, n)?);
        }
    }
    Ok(out)
}
