//! Compressed storage for a family of small integer sets.
//!
//! Edges of a hypergraph, conflicts of a conflict system and incidence lists
//! are all families of short sorted `u32` lists; storing them back to back
//! keeps million-member families cheap.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetFamily {
    offsets: Vec<u32>,
    items: Vec<u32>,
}

impl SetFamily {
    pub fn new() -> Self {
        SetFamily { offsets: vec![0], items: Vec::new() }
    }

    pub fn with_capacity(members: usize, items: usize) -> Self {
        let mut offsets = Vec::with_capacity(members + 1);
        offsets.push(0);
        SetFamily { offsets, items: Vec::with_capacity(items) }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn push(&mut self, member: &[u32]) -> usize {
        self.items.extend_from_slice(member);
        self.offsets.push(self.items.len() as u32);
        self.len() - 1
    }

    #[inline]
    pub fn get(&self, i: usize) -> &[u32] {
        let lo = self.offsets[i] as usize;
        let hi = self.offsets[i + 1] as usize;
        &self.items[lo..hi]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[u32]> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn total_items(&self) -> usize {
        self.items.len()
    }

    /// Inverse incidence: for every item in `0..universe`, the sorted list of
    /// member indices containing it.
    pub fn transpose(&self, universe: usize) -> SetFamily {
        let mut counts = vec![0u32; universe + 1];
        for &x in &self.items {
            counts[x as usize + 1] += 1;
        }
        for i in 0..universe {
            counts[i + 1] += counts[i];
        }
        let offsets = counts.clone();
        let mut cursor = counts;
        let mut items = vec![0u32; self.items.len()];
        for (m, member) in self.iter().enumerate() {
            for &x in member {
                let slot = &mut cursor[x as usize];
                items[*slot as usize] = m as u32;
                *slot += 1;
            }
        }
        SetFamily { offsets, items }
    }
}

impl<'a> FromIterator<&'a [u32]> for SetFamily {
    fn from_iter<I: IntoIterator<Item = &'a [u32]>>(iter: I) -> Self {
        let mut f = SetFamily::new();
        for m in iter {
            f.push(m);
        }
        f
    }
}

/// True when the sorted slice `small` is a subset of the sorted slice `big`.
pub fn is_sorted_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    'outer: for &s in small {
        for &b in it.by_ref() {
            if b == s {
                continue 'outer;
            }
            if b > s {
                return false;
            }
        }
        return false;
    }
    true
}

pub fn sorted_intersects(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}
