//! Small permutations of vertex labels.
//!
//! Internally labels are 0-based (`0..=n` for an n-simplex); everything that
//! leaves the crate (files, reports, [`crate::FacetGluing`]) uses the 1-based
//! labels of the printed gluing tables.

use std::fmt;

/// A permutation of `0..len`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(len: usize) -> Self {
        Perm((0..len as u8).collect())
    }

    /// Builds a permutation from 0-based images. Returns `None` unless the
    /// images are exactly a rearrangement of `0..len`.
    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let slot = seen.get_mut(x as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Self {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// +1 for even permutations, -1 for odd ones.
    pub fn sign(&self) -> i8 {
        let mut visited = vec![false; self.0.len()];
        let mut transpositions = 0usize;
        for start in 0..self.0.len() {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = self.0[i] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Image of a vertex bitmask.
    pub fn apply_mask(&self, mask: u32) -> u32 {
        let mut out = 0;
        for (i, &x) in self.0.iter().enumerate() {
            if mask & (1 << i) != 0 {
                out |= 1 << x;
            }
        }
        out
    }

    /// Steps to the lexicographically next permutation. Returns `false` once
    /// the last (descending) permutation has been passed.
    pub fn advance(&mut self) -> bool {
        let v = &mut self.0;
        if v.len() < 2 {
            return false;
        }
        let mut i = v.len() - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = v.len() - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    /// All permutations of `0..len` in lexicographic order.
    pub fn all(len: usize) -> AllPerms {
        AllPerms {
            next: Some(Perm::identity(len)),
        }
    }
}

pub struct AllPerms {
    next: Option<Perm>,
}

impl Iterator for AllPerms {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if following.advance() {
            self.next = Some(following);
        }
        Some(current)
    }
}

impl fmt::Display for Perm {
    /// 1-based image tuple, e.g. `(3,1,4,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_labels(self.0.iter().map(|&x| x + 1)))
    }
}

/// Formats 1-based labels as `(a,b,c)`.
pub fn format_labels(labels: impl IntoIterator<Item = u8>) -> String {
    let parts: Vec<String> = labels.into_iter().map(|l| l.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Sorted 0-based labels of a bitmask.
pub fn mask_labels(mask: u32) -> Vec<u8> {
    (0..32u8).filter(|&i| mask & (1 << i) != 0).collect()
}
