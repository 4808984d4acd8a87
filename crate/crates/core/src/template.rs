//! Filled templates and their enumeration.
//!
//! A template for a product `B_p * B_q` interleaves a `(u+1) x (v+1)` grid
//! of `z` entries with a `u x v` grid of `y` entries, where `v` and `u` are
//! the component counts of `p` and `q`. The `y` rows have no column-0 entry.
//! The admissible fillings are the non-negative integer grids whose column
//! sums reproduce the parts of `p`, whose row sums reproduce the parts of
//! `q`, whose border rows carry the weight deficits, and (in type D, when
//! both weights equal the rank) whose `y`-sum has the parity dictated by the
//! factors' classes.

use std::fmt;

use crate::composition::{BasisIndex, ClassTag, Composition};
use crate::error::{Error, Result};

/// One filled template. `z` is stored row-major with `v + 1` columns, `y`
/// row-major with `v` columns (rows `1..=u`, columns `1..=v`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FilledTemplate {
    u: usize,
    v: usize,
    z: Vec<usize>,
    y: Vec<usize>,
}

impl FilledTemplate {
    pub fn new(u: usize, v: usize, z: Vec<usize>, y: Vec<usize>) -> Result<Self> {
        if z.len() != (u + 1) * (v + 1) || y.len() != u * v {
            return Err(Error::Internal(format!(
                "template shape mismatch: u={u} v={v} |z|={} |y|={}",
                z.len(),
                y.len()
            )));
        }
        Ok(FilledTemplate { u, v, z, y })
    }

    pub fn rows(&self) -> usize {
        self.u
    }

    pub fn cols(&self) -> usize {
        self.v
    }

    /// `z_{ij}` for `0 <= i <= u`, `0 <= j <= v`.
    pub fn z(&self, i: usize, j: usize) -> usize {
        self.z[i * (self.v + 1) + j]
    }

    /// `y_{ij}` for `1 <= i <= u`, `1 <= j <= v`.
    pub fn y(&self, i: usize, j: usize) -> usize {
        self.y[(i - 1) * self.v + (j - 1)]
    }

    pub fn z00(&self) -> usize {
        self.z[0]
    }

    /// `z_{00} + sum_i z_{i0} + sum_j z_{0j}`.
    pub fn border_sum(&self) -> usize {
        let mut total = self.z00();
        for i in 1..=self.u {
            total += self.z(i, 0);
        }
        for j in 1..=self.v {
            total += self.z(0, j);
        }
        total
    }

    /// Sum of all `y` entries.
    pub fn y_sum(&self) -> usize {
        self.y.iter().sum()
    }

    /// The type-D reading word: row 0 of `z` (column 0 excluded), then for
    /// each row the `y` entries right-to-left followed by the `z` entries
    /// left-to-right including column 0; zeros dropped. When `z_{00} = 1` a
    /// leading component 1 is prepended; `z_{00}` itself is never read.
    pub fn reading_word(&self) -> Composition {
        let mut parts = Vec::new();
        if self.z00() == 1 {
            parts.push(1);
        }
        self.push_read_entries(&mut parts);
        Composition::new(parts).expect("zeros are dropped")
    }

    /// The type-B reading word: as the type-D one but `z_{00}` is ignored
    /// entirely, with no prepend.
    pub fn reading_word_b(&self) -> Composition {
        let mut parts = Vec::new();
        self.push_read_entries(&mut parts);
        Composition::new(parts).expect("zeros are dropped")
    }

    fn push_read_entries(&self, parts: &mut Vec<usize>) {
        for j in 1..=self.v {
            let e = self.z(0, j);
            if e != 0 {
                parts.push(e);
            }
        }
        for i in 1..=self.u {
            for j in (1..=self.v).rev() {
                let e = self.y(i, j);
                if e != 0 {
                    parts.push(e);
                }
            }
            for j in 0..=self.v {
                let e = self.z(i, j);
                if e != 0 {
                    parts.push(e);
                }
            }
        }
    }

    /// Renders the template in the interleaved matrix layout: `z` rows full
    /// width, `y` rows indented past column 0.
    pub fn render(&self) -> String {
        let width = self
            .z
            .iter()
            .chain(self.y.iter())
            .map(|e| e.to_string().len())
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let push_row = |cells: Vec<Option<usize>>, out: &mut String| {
            let mut line = String::new();
            for (idx, cell) in cells.iter().enumerate() {
                if idx > 0 {
                    line.push(' ');
                }
                match cell {
                    Some(e) => line.push_str(&format!("{e:>width$}")),
                    None => line.push_str(&" ".repeat(width)),
                }
            }
            out.push_str(line.trim_end());
            out.push('\n');
        };
        push_row((0..=self.v).map(|j| Some(self.z(0, j))).collect(), &mut out);
        for i in 1..=self.u {
            let mut y_row = vec![None];
            y_row.extend((1..=self.v).map(|j| Some(self.y(i, j))));
            push_row(y_row, &mut out);
            push_row((0..=self.v).map(|j| Some(self.z(i, j))).collect(), &mut out);
        }
        out
    }
}

impl fmt::Display for FilledTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parity constraint applied to the `y`-sum of every template of a
/// weight-`n` pair (all such templates have border-sum 0).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum YParity {
    Even,
    Odd,
}

/// Enumerates the admissible templates for the type-D product `B_p * B_q`.
///
/// Output order is deterministic: lexicographic over the grid flattened in
/// display order (row 0 of `z`, then alternating `y` and `z` rows).
pub fn enumerate_z_d(p: &BasisIndex, q: &BasisIndex) -> Result<Vec<FilledTemplate>> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch(p.rank(), q.rank()));
    }
    let n = p.rank();
    let parity = if p.weight() == n && q.weight() == n {
        let p_primed = p.class() == ClassTag::CnPrime;
        let q_primed = q.class() == ClassTag::CnPrime;
        Some(if p_primed != q_primed {
            YParity::Odd
        } else {
            YParity::Even
        })
    } else {
        None
    };
    Ok(enumerate(p.composition(), q.composition(), n, parity))
}

/// Enumerates the admissible templates for the type-B product at rank `n`:
/// the same row/column constraints with no parity condition.
pub fn enumerate_z_b(p: &Composition, q: &Composition, n: usize) -> Result<Vec<FilledTemplate>> {
    if p.weight() > n || q.weight() > n {
        return Err(Error::InvalidIndex(format!(
            "weights {} and {} must not exceed the rank {n}",
            p.weight(),
            q.weight()
        )));
    }
    Ok(enumerate(p, q, n, None))
}

/// Recursive cell assignment in display order with residual row/column
/// budgets. The final `z` cell of each row is forced by the row's residue,
/// so every emitted grid satisfies the row constraints exactly; the column
/// residues then vanish automatically because both residue totals agree.
fn enumerate(
    p: &Composition,
    q: &Composition,
    n: usize,
    parity: Option<YParity>,
) -> Vec<FilledTemplate> {
    let v = p.len();
    let u = q.len();
    let mut col_rem: Vec<usize> = Vec::with_capacity(v + 1);
    col_rem.push(n - p.weight());
    col_rem.extend_from_slice(p.parts());
    let mut row_budget: Vec<usize> = Vec::with_capacity(u + 1);
    row_budget.push(n - q.weight());
    row_budget.extend_from_slice(q.parts());

    let mut filler = Filler {
        u,
        v,
        col_rem,
        row_budget,
        z: vec![0; (u + 1) * (v + 1)],
        y: vec![0; u * v],
        parity,
        out: Vec::new(),
    };
    // Row 0 is a z row whose first cell is z_{00}; when v = 0 that single
    // cell is also the forced last cell.
    let first_budget = filler.row_budget[0];
    filler.fill_row(0, first_budget, 0);
    filler.out
}

struct Filler {
    u: usize,
    v: usize,
    col_rem: Vec<usize>,
    row_budget: Vec<usize>,
    z: Vec<usize>,
    y: Vec<usize>,
    parity: Option<YParity>,
    out: Vec<FilledTemplate>,
}

impl Filler {
    /// Cells of one structural row, in display order: the y cells (rows
    /// at least 1 only), then the z cells ending with the forced column-v
    /// entry. `stage` counts cells already assigned within the row.
    fn fill_row(&mut self, i: usize, row_rem: usize, stage: usize) {
        let v = self.v;
        let y_cells = if i == 0 { 0 } else { v };
        if stage < y_cells {
            let j = stage + 1;
            let max = row_rem.min(self.col_rem[j]);
            for val in 0..=max {
                self.y[(i - 1) * v + (j - 1)] = val;
                self.col_rem[j] -= val;
                self.fill_row(i, row_rem - val, stage + 1);
                self.col_rem[j] += val;
            }
            self.y[(i - 1) * v + (j - 1)] = 0;
            return;
        }
        let j = stage - y_cells;
        if j == v {
            // Last z cell of the row: forced by the row residue.
            if row_rem > self.col_rem[v] {
                return;
            }
            self.z[i * (v + 1) + v] = row_rem;
            self.col_rem[v] -= row_rem;
            if i == self.u {
                self.emit();
            } else {
                let next_budget = self.row_budget[i + 1];
                self.fill_row(i + 1, next_budget, 0);
            }
            self.col_rem[v] += row_rem;
            self.z[i * (v + 1) + v] = 0;
            return;
        }
        let max = row_rem.min(self.col_rem[j]);
        for val in 0..=max {
            self.z[i * (v + 1) + j] = val;
            self.col_rem[j] -= val;
            self.fill_row(i, row_rem - val, stage + 1);
            self.col_rem[j] += val;
        }
        self.z[i * (v + 1) + j] = 0;
    }

    fn emit(&mut self) {
        if let Some(want) = self.parity {
            let is_odd = self.y.iter().sum::<usize>() % 2 == 1;
            let ok = match want {
                YParity::Odd => is_odd,
                YParity::Even => !is_odd,
            };
            if !ok {
                return;
            }
        }
        self.out.push(FilledTemplate {
            u: self.u,
            v: self.v,
            z: self.z.clone(),
            y: self.y.clone(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{enumerate_basis, Composition};

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    fn d_idx(text: &str, n: usize) -> BasisIndex {
        BasisIndex::parse(text, n).unwrap()
    }

    #[test]
    fn border_and_y_sums() {
        // First template of B_[4] * B_[1,3]: all z zero, y column (1, 3).
        let t = FilledTemplate::new(2, 1, vec![0, 0, 0, 0, 0, 0], vec![1, 3]).unwrap();
        assert_eq!(t.border_sum(), 0);
        assert_eq!(t.y_sum(), 4);
        assert_eq!(t.reading_word(), comp(&[1, 3]));

        // First template of B_[2] * B_[2]: z00 = 2, y11 = 2.
        let t = FilledTemplate::new(1, 1, vec![2, 0, 0, 0], vec![2]).unwrap();
        assert_eq!(t.border_sum(), 2);
        assert_eq!(t.y_sum(), 2);
        assert_eq!(t.reading_word(), comp(&[2]));

        let zero = FilledTemplate::new(1, 1, vec![0; 4], vec![0]).unwrap();
        assert_eq!(zero.border_sum(), 0);
        assert_eq!(zero.y_sum(), 0);
    }

    #[test]
    fn reading_word_prepends_on_unit_corner() {
        // A z00 = 1 template from B_[1,1] * B_[2]: z01 = 1, y12 = 1, z10 = 1.
        let t = FilledTemplate::new(1, 2, vec![1, 1, 0, 1, 0, 0], vec![0, 1]).unwrap();
        assert_eq!(t.reading_word(), comp(&[1, 1, 1, 1]));
        // The type-B word ignores z00 and does not prepend.
        assert_eq!(t.reading_word_b(), comp(&[1, 1, 1]));
    }

    #[test]
    fn identity_templates_are_unique() {
        let n = 4;
        let e = d_idx("[]", n);
        let q = d_idx("[1,3]", n);
        let ts = enumerate_z_d(&e, &q).unwrap();
        assert_eq!(ts.len(), 1);
        let t = &ts[0];
        assert_eq!(t.z00(), 0);
        assert_eq!(t.z(1, 0), 1);
        assert_eq!(t.z(2, 0), 3);
        assert_eq!(t.reading_word(), comp(&[1, 3]));

        let both_empty = enumerate_z_d(&e, &e).unwrap();
        assert_eq!(both_empty.len(), 1);
        assert_eq!(both_empty[0].z00(), 4);
        assert_eq!(both_empty[0].reading_word(), Composition::empty());
    }

    #[test]
    fn worked_template_sets() {
        let n = 4;
        let ts = enumerate_z_d(&d_idx("[4]", n), &d_idx("[1,3]", n)).unwrap();
        assert_eq!(ts.len(), 4);
        assert!(ts.iter().all(|t| t.border_sum() == 0 && t.y_sum() % 2 == 0));

        let ts = enumerate_z_d(&d_idx("[1,1]", n), &d_idx("[2]", n)).unwrap();
        assert_eq!(ts.len(), 9);

        // Primed-times-plain pairs need an odd y-sum.
        let ts = enumerate_z_d(&d_idx("[3,1]'", n), &d_idx("[4]", n)).unwrap();
        assert_eq!(ts.len(), 4);
        assert!(ts.iter().all(|t| t.border_sum() == 0 && t.y_sum() % 2 == 1));

        // Primed-times-primed pairs need an even y-sum.
        let ts = enumerate_z_d(&d_idx("[2,2]'", n), &d_idx("[4]'", n)).unwrap();
        assert_eq!(ts.len(), 5);
        assert!(ts.iter().all(|t| t.border_sum() == 0 && t.y_sum() % 2 == 0));
    }

    #[test]
    fn type_b_template_sets() {
        let ts = enumerate_z_b(&comp(&[2]), &comp(&[2]), 2).unwrap();
        assert_eq!(ts.len(), 3);
        let pairs: Vec<(usize, usize)> = ts.iter().map(|t| (t.y(1, 1), t.z(1, 1))).collect();
        assert_eq!(pairs, vec![(0, 2), (1, 1), (2, 0)]);
        assert!(ts.iter().all(|t| t.border_sum() == 0));

        let ts = enumerate_z_b(&Composition::empty(), &Composition::empty(), 2).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].z00(), 2);

        // The rank-2 set for [1,1] * [2] has no parity filter and matches
        // the full constraint solution set.
        let ts = enumerate_z_b(&comp(&[1, 1]), &comp(&[2]), 2).unwrap();
        assert_eq!(ts.len(), 4);
        assert!(ts.iter().all(|t| t.reading_word_b() == comp(&[1, 1])));
    }

    #[test]
    fn entries_total_rank_and_word_weights() {
        for n in 2..=4 {
            let basis = enumerate_basis(n).unwrap();
            for p in &basis {
                for q in &basis {
                    for t in enumerate_z_d(p, q).unwrap() {
                        let total: usize = (0..=t.rows())
                            .flat_map(|i| (0..=t.cols()).map(move |j| (i, j)))
                            .map(|(i, j)| t.z(i, j))
                            .sum::<usize>()
                            + t.y_sum();
                        assert_eq!(total, n);
                        let w = t.reading_word().weight();
                        if t.z00() <= 1 {
                            assert_eq!(w, n);
                        } else {
                            assert_eq!(w, n - t.z00());
                        }
                        assert_ne!(w, n - 1);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_is_deterministic() {
        let p = d_idx("[2]", 4);
        let q = d_idx("[1,1]", 4);
        assert_eq!(
            enumerate_z_d(&p, &q).unwrap(),
            enumerate_z_d(&p, &q).unwrap()
        );
    }

    /// Flattens a template in display order: z row 0, then per structural
    /// row the y cells followed by the z cells.
    fn display_key(t: &FilledTemplate) -> Vec<usize> {
        let mut key: Vec<usize> = (0..=t.cols()).map(|j| t.z(0, j)).collect();
        for i in 1..=t.rows() {
            key.extend((1..=t.cols()).map(|j| t.y(i, j)));
            key.extend((0..=t.cols()).map(|j| t.z(i, j)));
        }
        key
    }

    #[test]
    fn output_order_is_lexicographic_over_the_grid() {
        for n in 2..=4 {
            let basis = enumerate_basis(n).unwrap();
            for p in &basis {
                for q in &basis {
                    let ts = enumerate_z_d(p, q).unwrap();
                    let keys: Vec<Vec<usize>> = ts.iter().map(display_key).collect();
                    assert!(
                        keys.windows(2).all(|w| w[0] < w[1]),
                        "order violated for {p} * {q} at n={n}"
                    );
                }
            }
        }
    }

    /// Naive oracle: every grid of non-negative integers totalling `n`,
    /// filtered by the five admissibility conditions stated directly.
    mod naive {
        use super::*;

        pub fn all_grids(cells: usize, total: usize) -> Vec<Vec<usize>> {
            fn go(cells: usize, total: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cells == 0 {
                    if total == 0 {
                        out.push(prefix.clone());
                    }
                    return;
                }
                for val in 0..=total {
                    prefix.push(val);
                    go(cells - 1, total - val, prefix, out);
                    prefix.pop();
                }
            }
            let mut out = Vec::new();
            go(cells, total, &mut Vec::new(), &mut out);
            out
        }

        pub fn admissible_d(p: &BasisIndex, q: &BasisIndex, t: &FilledTemplate) -> bool {
            let n = p.rank();
            let (pc, qc) = (p.composition(), q.composition());
            let (u, v) = (qc.len(), pc.len());
            for j in 1..=v {
                let col: usize =
                    t.z(0, j) + (1..=u).map(|i| t.y(i, j) + t.z(i, j)).sum::<usize>();
                if col != pc.parts()[j - 1] {
                    return false;
                }
            }
            if (0..=u).map(|i| t.z(i, 0)).sum::<usize>() != n - pc.weight() {
                return false;
            }
            for i in 1..=u {
                let row: usize =
                    t.z(i, 0) + (1..=v).map(|j| t.y(i, j) + t.z(i, j)).sum::<usize>();
                if row != qc.parts()[i - 1] {
                    return false;
                }
            }
            if (0..=v).map(|j| t.z(0, j)).sum::<usize>() != n - qc.weight() {
                return false;
            }
            if t.border_sum() == 0 {
                let want_odd = matches!(
                    (p.class(), q.class()),
                    (ClassTag::C1 | ClassTag::Cn, ClassTag::CnPrime)
                        | (ClassTag::CnPrime, ClassTag::C1 | ClassTag::Cn)
                );
                if (t.y_sum() % 2 == 1) != want_odd {
                    return false;
                }
            }
            true
        }
    }

    #[test]
    fn matches_naive_filter_oracle() {
        for n in 2..=4 {
            let basis = enumerate_basis(n).unwrap();
            for p in &basis {
                for q in &basis {
                    let u = q.composition().len();
                    let v = p.composition().len();
                    let z_cells = (u + 1) * (v + 1);
                    let cells = z_cells + u * v;
                    let mut expected: Vec<FilledTemplate> = naive::all_grids(cells, n)
                        .into_iter()
                        .map(|flat| {
                            FilledTemplate::new(
                                u,
                                v,
                                flat[..z_cells].to_vec(),
                                flat[z_cells..].to_vec(),
                            )
                            .unwrap()
                        })
                        .filter(|t| naive::admissible_d(p, q, t))
                        .collect();
                    // The naive grid order differs; compare as sets.
                    let mut got = enumerate_z_d(p, q).unwrap();
                    let key = |t: &FilledTemplate| (t.z.clone(), t.y.clone());
                    expected.sort_by_key(key);
                    got.sort_by_key(key);
                    assert_eq!(got, expected, "mismatch for {p} * {q} at n={n}");
                }
            }
        }
    }
}
