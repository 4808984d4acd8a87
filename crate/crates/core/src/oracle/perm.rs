//! Signed permutations in window notation.
//!
//! An element is the list `[w(1), ..., w(n)]` of nonzero integers whose
//! absolute values permute `1..n`, extended to negatives by `w(-i) = -w(i)`.
//! Type B admits every sign pattern; type D the even ones. Products compose
//! right-to-left: `(x * y)(i) = x(y(i))`, so right multiplication by an
//! adjacent transposition swaps window positions.

use std::fmt;

use crate::error::{Error, Result};

/// Which hyperoctahedral family an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GroupKind {
    B,
    D,
}

impl GroupKind {
    pub fn letter(self) -> char {
        match self {
            GroupKind::B => 'B',
            GroupKind::D => 'D',
        }
    }

    /// Group order at rank `n`.
    pub fn order(self, n: usize) -> usize {
        let fact: usize = (1..=n).product();
        match self {
            GroupKind::B => (1 << n) * fact,
            GroupKind::D => (1 << (n - 1)) * fact,
        }
    }

    /// Smallest supported rank: 1 for type B, 2 for type D.
    pub fn min_rank(self) -> usize {
        match self {
            GroupKind::B => 1,
            GroupKind::D => 2,
        }
    }

    /// Default desk-scale rank cap.
    pub fn default_cap(self) -> usize {
        match self {
            GroupKind::B => 5,
            GroupKind::D => 7,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermutation {
    kind: GroupKind,
    window: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(kind: GroupKind, n: usize) -> Self {
        SignedPermutation {
            kind,
            window: (1..=n as i8).collect(),
        }
    }

    /// Validates the window: absolute values permute `1..n`, and in type D
    /// the number of negative entries is even.
    pub fn from_window(kind: GroupKind, window: Vec<i8>) -> Result<Self> {
        let n = window.len();
        let mut seen = vec![false; n + 1];
        let mut negatives = 0;
        for &w in &window {
            let a = w.unsigned_abs() as usize;
            if w == 0 || a > n || seen[a] {
                return Err(Error::Internal(format!("invalid window {window:?}")));
            }
            seen[a] = true;
            if w < 0 {
                negatives += 1;
            }
        }
        if kind == GroupKind::D && negatives % 2 != 0 {
            return Err(Error::Internal(format!(
                "odd sign pattern {window:?} is not a type-D element"
            )));
        }
        Ok(SignedPermutation { kind, window })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i8] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window.iter().enumerate().all(|(i, &w)| w == i as i8 + 1)
    }

    /// Sign-extended evaluation at `v` with `|v| <= n`.
    fn apply(&self, v: i8) -> i8 {
        if v > 0 {
            self.window[v as usize - 1]
        } else {
            -self.window[(-v) as usize - 1]
        }
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> Result<SignedPermutation> {
        if self.kind != other.kind || self.n() != other.n() {
            return Err(Error::GroupMismatch);
        }
        let window = other.window.iter().map(|&v| self.apply(v)).collect();
        Ok(SignedPermutation {
            kind: self.kind,
            window,
        })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.n();
        let mut window = vec![0i8; n];
        for (i, &w) in self.window.iter().enumerate() {
            let a = w.unsigned_abs() as usize;
            window[a - 1] = if w > 0 { i as i8 + 1 } else { -(i as i8 + 1) };
        }
        SignedPermutation {
            kind: self.kind,
            window,
        }
    }

    /// Perfect hash over all sign patterns: the Lehmer rank of the absolute
    /// permutation times `2^n`, plus the sign bits. Type D occupies half the
    /// slots.
    pub fn rank(&self) -> usize {
        let n = self.n();
        let perm: Vec<usize> = self.window.iter().map(|w| w.unsigned_abs() as usize).collect();
        let mut lehmer = 0usize;
        for i in 0..n {
            let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
            lehmer = lehmer * (n - i) + smaller;
        }
        let mut signs = 0usize;
        for (i, &w) in self.window.iter().enumerate() {
            if w < 0 {
                signs |= 1 << i;
            }
        }
        lehmer * (1 << n) + signs
    }

    /// Size of the perfect-hash index space at rank `n`.
    pub fn rank_space(n: usize) -> usize {
        let fact: usize = (1..=n).product();
        fact * (1 << n)
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, w) in self.window.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, "]")
    }
}

/// The Coxeter generators at rank `n`, indexed so that slot 0 holds the
/// branched/sign generator and slot `i` holds the adjacent swap `s_i`.
///
/// Type D: slot 0 is `s_1'` with window `[-2,-1,3,...,n]`. Type B: slot 0 is
/// the sign flip `t = [-1,2,...,n]`.
pub fn generators(kind: GroupKind, n: usize) -> Result<Vec<SignedPermutation>> {
    if n < kind.min_rank() {
        return Err(Error::InvalidRank {
            min: kind.min_rank(),
            got: n,
        });
    }
    let mut gens = Vec::with_capacity(n);
    let mut first = SignedPermutation::identity(kind, n);
    match kind {
        GroupKind::D => {
            first.window[0] = -2;
            first.window[1] = -1;
        }
        GroupKind::B => {
            first.window[0] = -1;
        }
    }
    gens.push(first);
    for i in 1..n {
        let mut s = SignedPermutation::identity(kind, n);
        s.window.swap(i - 1, i);
        gens.push(s);
    }
    Ok(gens)
}
