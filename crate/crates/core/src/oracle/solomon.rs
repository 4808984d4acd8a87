//! Ground-truth products straight from the group.
//!
//! Two interchangeable strategies realize `X_J * X_K` in the descent
//! algebra: counting the structure constants `a_{JKL}` (the number of
//! `x` in `X_J^{-1} ∩ X_K` with `x^{-1} J x ∩ K = L`), and convolving the
//! formal sums in the group algebra followed by extraction of descent-class
//! coefficients and subset Möbius inversion. Both must always agree.

use std::collections::BTreeMap;

use crate::algebra_b::{b_index_of_subset, b_subset_of, BAlgebraElement};
use crate::algebra_d::AlgebraElement;
use crate::composition::{index_of_subset, subset_of, BasisIndex, Composition, GeneratorSet};
use crate::error::{Error, Result};
use crate::oracle::table::GroupTable;

/// A formal integer combination of group elements, dense over element ids.
pub type GroupAlgebraVector = Vec<i64>;

/// The formal sum of the elements of `X_J`.
pub fn x_vector(table: &GroupTable, j_mask: u32) -> GroupAlgebraVector {
    let mut v = vec![0i64; table.order()];
    for id in table.x_set(j_mask) {
        v[id as usize] = 1;
    }
    v
}

/// Convolution in the group algebra: `(f * g)(w) = sum_{u v = w} f(u) g(v)`.
pub fn convolve(
    table: &GroupTable,
    f: &GroupAlgebraVector,
    g: &GroupAlgebraVector,
) -> Result<GroupAlgebraVector> {
    let mut h = vec![0i64; table.order()];
    for (a, &fa) in f.iter().enumerate() {
        if fa == 0 {
            continue;
        }
        for (b, &gb) in g.iter().enumerate() {
            if gb == 0 {
                continue;
            }
            let w = table.compose_ids(a as u32, b as u32) as usize;
            let term = fa.checked_mul(gb).ok_or(Error::Overflow)?;
            h[w] = h[w].checked_add(term).ok_or(Error::Overflow)?;
        }
    }
    Ok(h)
}

/// Writes a descent-algebra vector in the `X` basis.
///
/// Every descent class must carry a constant coefficient `d_K`; the basis
/// coefficients follow by Möbius inversion over the subset lattice:
/// `a_M = sum_{J ⊆ M} (-1)^{|M \ J|} d_{J^c}`.
pub fn decompose_to_x_basis(
    table: &GroupTable,
    v: &GroupAlgebraVector,
) -> Result<BTreeMap<u32, i64>> {
    let gen_count = table.generator_count();
    let full = (1u32 << gen_count) - 1;
    let mut class_coeff: Vec<Option<i64>> = vec![None; 1 << gen_count];
    for id in 0..table.order() as u32 {
        let mask = table.descent_mask(id) as usize;
        match class_coeff[mask] {
            None => class_coeff[mask] = Some(v[id as usize]),
            Some(c) if c == v[id as usize] => {}
            Some(c) => {
                return Err(Error::NotInDescentAlgebra(format!(
                    "descent class {mask:b} carries both {c} and {}",
                    v[id as usize]
                )))
            }
        }
    }
    let d = |k: u32| class_coeff[k as usize].unwrap_or(0);
    let mut out = BTreeMap::new();
    for m in 0..=full {
        let mut a = 0i64;
        // Iterate all submasks of m, including 0 and m itself.
        let mut j = m;
        loop {
            let sign = if (m ^ j).count_ones() % 2 == 0 { 1 } else { -1 };
            a = a
                .checked_add(sign * d(!j & full))
                .ok_or(Error::Overflow)?;
            if j == 0 {
                break;
            }
            j = (j - 1) & m;
        }
        if a != 0 {
            out.insert(m, a);
        }
    }
    Ok(out)
}

/// Structure constant `a_{JKL}`.
pub fn solomon_constant(table: &GroupTable, j_mask: u32, k_mask: u32, l_mask: u32) -> i64 {
    solomon_row(table, j_mask, k_mask)
        .get(&l_mask)
        .copied()
        .unwrap_or(0)
}

/// All structure constants `a_{JK*}` in one pass over `X_J^{-1} ∩ X_K`.
///
/// For each such `x`, the set `x^{-1} J x ∩ K` is computed on group
/// elements: a generator `t` of `K` belongs to it exactly when `t` equals
/// some conjugate `x^{-1} s x` with `s` in `J`.
pub fn solomon_row(table: &GroupTable, j_mask: u32, k_mask: u32) -> BTreeMap<u32, i64> {
    let gen_count = table.generator_count();
    let mut rows: BTreeMap<u32, i64> = BTreeMap::new();
    for x in table.x_set(k_mask) {
        let x_inv = table.inverse_id(x);
        if table.descent_mask(x_inv) & j_mask != 0 {
            continue; // x^{-1} not in X_J
        }
        let mut l_mask = 0u32;
        for s_idx in (0..gen_count).filter(|&s| j_mask >> s & 1 == 1) {
            let conj = table.compose_ids(table.compose_ids(x_inv, table.generator_id(s_idx)), x);
            for t_idx in (0..gen_count).filter(|&t| k_mask >> t & 1 == 1) {
                if conj == table.generator_id(t_idx) {
                    l_mask |= 1 << t_idx;
                }
            }
        }
        *rows.entry(l_mask).or_insert(0) += 1;
    }
    rows
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleStrategy {
    /// Structure-constant counting.
    Counting,
    /// Group-algebra convolution plus descent-class decomposition.
    Convolution,
}

/// `X_J * X_K` as a map from subset masks to coefficients.
fn x_product(
    table: &GroupTable,
    j_mask: u32,
    k_mask: u32,
    strategy: OracleStrategy,
) -> Result<BTreeMap<u32, i64>> {
    match strategy {
        OracleStrategy::Counting => Ok(solomon_row(table, j_mask, k_mask)),
        OracleStrategy::Convolution => {
            let f = x_vector(table, j_mask);
            let g = x_vector(table, k_mask);
            decompose_to_x_basis(table, &convolve(table, &f, &g)?)
        }
    }
}

/// The type-D product `B_p * B_q` computed from the group, bypassing the
/// template rule entirely. `B_q` is the coset sum over the complement of
/// the subset matching `q`.
pub fn oracle_multiply(
    table: &GroupTable,
    p: &BasisIndex,
    q: &BasisIndex,
    strategy: OracleStrategy,
) -> Result<AlgebraElement> {
    let n = table.rank();
    if p.rank() != n || q.rank() != n {
        return Err(Error::RankMismatch(p.rank(), q.rank()));
    }
    let full = (1u32 << table.generator_count()) - 1;
    let j = subset_of(p).complement(n).to_mask();
    let k = subset_of(q).complement(n).to_mask();
    let mut out = AlgebraElement::zero(n);
    for (l_mask, c) in x_product(table, j, k, strategy)? {
        let l_complement = GeneratorSet::from_mask(!l_mask & full);
        out.add_term(index_of_subset(&l_complement, n)?, c)?;
    }
    Ok(out)
}

/// The type-B analogue over the hyperoctahedral group.
pub fn oracle_multiply_b(
    table: &GroupTable,
    p: &Composition,
    q: &Composition,
    strategy: OracleStrategy,
) -> Result<BAlgebraElement> {
    let n = table.rank();
    let full = (1u32 << table.generator_count()) - 1;
    let j = !b_subset_of(p, n)? & full;
    let k = !b_subset_of(q, n)? & full;
    let mut out = BAlgebraElement::zero(n);
    for (l_mask, c) in x_product(table, j, k, strategy)? {
        out.add_term(b_index_of_subset(!l_mask & full, n)?, c)?;
    }
    Ok(out)
}

/// Augmentation of a basis element: the number of group elements in its
/// coset sum, `|X_{J^c}|`.
pub fn augmentation_d(table: &GroupTable, b: &BasisIndex) -> usize {
    table.x_size(subset_of(b).complement(table.rank()).to_mask())
}

pub fn augmentation_b(table: &GroupTable, q: &Composition) -> Result<usize> {
    let full = (1u32 << table.generator_count()) - 1;
    Ok(table.x_size(!b_subset_of(q, table.rank())? & full))
}
