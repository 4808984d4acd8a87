//! Complete group tables: every element with its Cayley-graph length,
//! right-descent set and right-multiplication row.
//!
//! Construction is a BFS from the identity over right multiplication by the
//! generators, so lengths are Coxeter lengths. Elements are addressed by a
//! dense id in discovery order; a perfect hash over windows maps elements
//! back to ids. An optional binary cache on disk skips the BFS for ranks
//! that have been built before; results are identical with it disabled.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::oracle::perm::{generators, GroupKind, SignedPermutation};

const CACHE_FORMAT_VERSION: u32 = 1;
const CACHE_MAGIC: &[u8; 4] = b"DTBL";

pub struct GroupTable {
    kind: GroupKind,
    n: usize,
    elements: Vec<SignedPermutation>,
    slot_to_id: Vec<u32>,
    lengths: Vec<u32>,
    right_mult: Vec<u32>,
    inverses: Vec<u32>,
    descents: Vec<u32>,
    gen_ids: Vec<u32>,
}

impl GroupTable {
    /// Builds the table by BFS, refusing ranks above `cap`.
    pub fn build(kind: GroupKind, n: usize, cap: usize) -> Result<Self> {
        if n < kind.min_rank() {
            return Err(Error::InvalidRank {
                min: kind.min_rank(),
                got: n,
            });
        }
        if n > cap {
            return Err(Error::RankCap {
                requested: n,
                cap,
            });
        }
        let gens = generators(kind, n)?;
        let order = kind.order(n);
        let space = SignedPermutation::rank_space(n);

        let mut elements: Vec<SignedPermutation> = Vec::with_capacity(order);
        let mut slot_to_id = vec![u32::MAX; space];
        let mut lengths: Vec<u32> = Vec::with_capacity(order);

        let identity = SignedPermutation::identity(kind, n);
        slot_to_id[identity.rank()] = 0;
        elements.push(identity);
        lengths.push(0);

        let mut head = 0usize;
        while head < elements.len() {
            let w = elements[head].clone();
            let len = lengths[head];
            for g in &gens {
                let u = w.compose(g)?;
                let slot = u.rank();
                if slot_to_id[slot] == u32::MAX {
                    slot_to_id[slot] = elements.len() as u32;
                    elements.push(u);
                    lengths.push(len + 1);
                }
            }
            head += 1;
        }
        if elements.len() != order {
            return Err(Error::Internal(format!(
                "BFS found {} elements of {kind}_{n}, expected {order}",
                elements.len()
            )));
        }

        Self::finish(kind, n, elements, slot_to_id, lengths, &gens)
    }

    fn finish(
        kind: GroupKind,
        n: usize,
        elements: Vec<SignedPermutation>,
        slot_to_id: Vec<u32>,
        lengths: Vec<u32>,
        gens: &[SignedPermutation],
    ) -> Result<Self> {
        let order = elements.len();
        let gen_count = gens.len();
        let mut right_mult = vec![0u32; order * gen_count];
        for (id, w) in elements.iter().enumerate() {
            for (g_idx, g) in gens.iter().enumerate() {
                let u = w.compose(g)?;
                right_mult[id * gen_count + g_idx] = slot_to_id[u.rank()];
            }
        }
        let mut inverses = vec![0u32; order];
        for (id, w) in elements.iter().enumerate() {
            inverses[id] = slot_to_id[w.inverse().rank()];
        }
        let mut descents = vec![0u32; order];
        for id in 0..order {
            let mut mask = 0u32;
            for g_idx in 0..gen_count {
                let neighbor = right_mult[id * gen_count + g_idx] as usize;
                if lengths[neighbor] < lengths[id] {
                    mask |= 1 << g_idx;
                }
            }
            descents[id] = mask;
        }
        let gen_ids = gens
            .iter()
            .map(|g| slot_to_id[g.rank()])
            .collect();
        Ok(GroupTable {
            kind,
            n,
            elements,
            slot_to_id,
            lengths,
            right_mult,
            inverses,
            descents,
            gen_ids,
        })
    }

    /// Loads from the cache when possible, otherwise builds and (best
    /// effort) stores. The cache holds only windows and lengths; everything
    /// else is recomputed, so a cache hit cannot change any result.
    pub fn load_or_build(
        kind: GroupKind,
        n: usize,
        cap: usize,
        cache_dir: Option<&Path>,
    ) -> Result<Self> {
        if let Some(dir) = cache_dir {
            let path = cache_path(dir, kind, n);
            if let Some(table) = Self::try_load(kind, n, cap, &path) {
                return Ok(table);
            }
            let table = Self::build(kind, n, cap)?;
            let _ = table.try_store(&path);
            return Ok(table);
        }
        Self::build(kind, n, cap)
    }

    fn try_load(kind: GroupKind, n: usize, cap: usize, path: &Path) -> Option<Self> {
        if n > cap {
            return None;
        }
        let mut bytes = Vec::new();
        fs::File::open(path).ok()?.read_to_end(&mut bytes).ok()?;
        let order = kind.order(n);
        let expected = 4 + 4 + 1 + 1 + 8 + order * n + order * 4;
        if bytes.len() != expected
            || &bytes[0..4] != CACHE_MAGIC
            || u32::from_le_bytes(bytes[4..8].try_into().ok()?) != CACHE_FORMAT_VERSION
            || bytes[8] != kind.letter() as u8
            || bytes[9] as usize != n
            || u64::from_le_bytes(bytes[10..18].try_into().ok()?) as usize != order
        {
            return None;
        }
        let mut offset = 18;
        let mut elements = Vec::with_capacity(order);
        let space = SignedPermutation::rank_space(n);
        let mut slot_to_id = vec![u32::MAX; space];
        for id in 0..order {
            let window: Vec<i8> = bytes[offset..offset + n].iter().map(|&b| b as i8).collect();
            offset += n;
            let w = SignedPermutation::from_window(kind, window).ok()?;
            let slot = w.rank();
            if slot_to_id[slot] != u32::MAX {
                return None;
            }
            slot_to_id[slot] = id as u32;
            elements.push(w);
        }
        let mut lengths = Vec::with_capacity(order);
        for _ in 0..order {
            lengths.push(u32::from_le_bytes(bytes[offset..offset + 4].try_into().ok()?));
            offset += 4;
        }
        if lengths.first() != Some(&0) || !elements[0].is_identity() {
            return None;
        }
        let gens = generators(kind, n).ok()?;
        Self::finish(kind, n, elements, slot_to_id, lengths, &gens).ok()
    }

    fn try_store(&self, path: &Path) -> std::io::Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let mut bytes = Vec::new();
        bytes.extend_from_slice(CACHE_MAGIC);
        bytes.extend_from_slice(&CACHE_FORMAT_VERSION.to_le_bytes());
        bytes.push(self.kind.letter() as u8);
        bytes.push(self.n as u8);
        bytes.extend_from_slice(&(self.elements.len() as u64).to_le_bytes());
        for w in &self.elements {
            bytes.extend(w.window().iter().map(|&v| v as u8));
        }
        for &len in &self.lengths {
            bytes.extend_from_slice(&len.to_le_bytes());
        }
        let tmp = path.with_extension("tmp");
        fs::File::create(&tmp)?.write_all(&bytes)?;
        fs::rename(&tmp, path)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generator_count(&self) -> usize {
        self.gen_ids.len()
    }

    pub fn element(&self, id: u32) -> &SignedPermutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, w: &SignedPermutation) -> u32 {
        self.slot_to_id[w.rank()]
    }

    pub fn length(&self, id: u32) -> u32 {
        self.lengths[id as usize]
    }

    pub fn descent_mask(&self, id: u32) -> u32 {
        self.descents[id as usize]
    }

    pub fn inverse_id(&self, id: u32) -> u32 {
        self.inverses[id as usize]
    }

    pub fn generator_id(&self, g_idx: usize) -> u32 {
        self.gen_ids[g_idx]
    }

    pub fn right_multiply(&self, id: u32, g_idx: usize) -> u32 {
        self.right_mult[id as usize * self.gen_ids.len() + g_idx]
    }

    /// Composes two elements by id.
    pub fn compose_ids(&self, a: u32, b: u32) -> u32 {
        let w = self.elements[a as usize]
            .compose(&self.elements[b as usize])
            .expect("same group");
        self.slot_to_id[w.rank()]
    }

    /// `X_J` for the generator subset `j_mask`: the elements with no right
    /// descent in `J`, i.e. the minimal-length representatives of the cosets
    /// `w W_J`. Returned in ascending id order.
    pub fn x_set(&self, j_mask: u32) -> Vec<u32> {
        (0..self.order() as u32)
            .filter(|&id| self.descents[id as usize] & j_mask == 0)
            .collect()
    }

    pub fn x_size(&self, j_mask: u32) -> usize {
        self.descents
            .iter()
            .filter(|&&mask| mask & j_mask == 0)
            .count()
    }

    /// Order of the parabolic subgroup generated by `j_mask`, by BFS
    /// restricted to those generators.
    pub fn subgroup_order(&self, j_mask: u32) -> usize {
        let mut visited = vec![false; self.order()];
        visited[0] = true;
        let mut queue = vec![0u32];
        let mut count = 1usize;
        while let Some(id) = queue.pop() {
            for g_idx in 0..self.gen_ids.len() {
                if j_mask >> g_idx & 1 == 0 {
                    continue;
                }
                let next = self.right_multiply(id, g_idx);
                if !visited[next as usize] {
                    visited[next as usize] = true;
                    count += 1;
                    queue.push(next);
                }
            }
        }
        count
    }

    /// Number of elements in each descent class `{w : Des_R(w) = K}`,
    /// indexed by mask.
    pub fn descent_class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; 1 << self.gen_ids.len()];
        for &mask in &self.descents {
            sizes[mask as usize] += 1;
        }
        sizes
    }
}

fn cache_path(dir: &Path, kind: GroupKind, n: usize) -> PathBuf {
    dir.join(format!(
        "table-v{CACHE_FORMAT_VERSION}-{}{n}.bin",
        kind.letter()
    ))
}
