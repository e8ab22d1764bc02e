//! Complete multipartite shells and their edge-deleted subgraphs.
//!
//! Vertices are numbered part-major: the vertices of part 0 come first, then
//! part 1, and so on. A [`Graph`] is fully determined by its part sizes and
//! the set of deleted cross-part pairs.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::{Error, Result};

/// Upper bound on the vertex count; adjacency rows are `u32` bitmasks.
pub const MAX_VERTICES: usize = 32;

/// A vertex permutation: `perm[v]` is the image of `v`.
pub type Perm = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    part_sizes: Vec<usize>,
    part_of: Vec<usize>,
    part_start: Vec<usize>,
    deleted: BTreeSet<(usize, usize)>,
    adj: Vec<u32>,
}

impl Graph {
    /// The complete multipartite graph with the given part sizes.
    pub fn multipartite(part_sizes: &[usize]) -> Result<Self> {
        if part_sizes.is_empty() {
            return Err(Error::InvalidShape("no parts".into()));
        }
        if let Some(i) = part_sizes.iter().position(|&s| s == 0) {
            return Err(Error::InvalidShape(format!("part {i} is empty")));
        }
        let n: usize = part_sizes.iter().sum();
        if n > MAX_VERTICES {
            return Err(Error::InvalidShape(format!(
                "{n} vertices exceeds the limit of {MAX_VERTICES}"
            )));
        }
        let mut part_of = Vec::with_capacity(n);
        let mut part_start = Vec::with_capacity(part_sizes.len());
        for (p, &s) in part_sizes.iter().enumerate() {
            part_start.push(part_of.len());
            part_of.extend(std::iter::repeat_n(p, s));
        }
        let adj = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| part_of[v] != part_of[u])
                    .fold(0u32, |m, v| m | 1 << v)
            })
            .collect();
        Ok(Graph {
            part_sizes: part_sizes.to_vec(),
            part_of,
            part_start,
            deleted: BTreeSet::new(),
            adj,
        })
    }

    /// Returns a copy with the given edges removed.
    pub fn delete_edges<I>(&self, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in pairs {
            let n = g.n();
            if u >= n || v >= n {
                return Err(Error::InvalidEdit(format!("pair ({u}, {v}) names a missing vertex")));
            }
            if g.part_of[u] == g.part_of[v] {
                return Err(Error::InvalidEdit(format!(
                    "{u} and {v} lie in the same part and are never adjacent"
                )));
            }
            let key = (u.min(v), u.max(v));
            if !g.deleted.insert(key) {
                return Err(Error::InvalidEdit(format!("edge ({}, {}) already deleted", key.0, key.1)));
            }
            g.adj[u] &= !(1 << v);
            g.adj[v] &= !(1 << u);
        }
        Ok(g)
    }

    /// Re-inserts previously deleted edges.
    pub fn restore_edges<I>(&self, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = self.clone();
        for (u, v) in pairs {
            let key = (u.min(v), u.max(v));
            if !g.deleted.remove(&key) {
                return Err(Error::InvalidEdit(format!("({}, {}) is not a deleted edge", key.0, key.1)));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    pub fn num_parts(&self) -> usize {
        self.part_sizes.len()
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Vertices of part `p`, in numbering order.
    pub fn part(&self, p: usize) -> std::ops::Range<usize> {
        let s = self.part_start[p];
        s..s + self.part_sizes[p]
    }

    pub fn parts(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        (0..self.num_parts()).map(|p| self.part(p))
    }

    pub fn deleted(&self) -> &BTreeSet<(usize, usize)> {
        &self.deleted
    }

    pub fn is_complete_multipartite(&self) -> bool {
        self.deleted.is_empty()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitmask.
    pub fn neighbors(&self, v: usize) -> u32 {
        self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| (u + 1..self.n()).filter(move |&v| self.adjacent(u, v)).map(move |v| (u, v)))
    }

    /// True when `mask` contains no edge.
    pub fn is_independent(&self, mask: u32) -> bool {
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if self.adj[v] & mask != 0 {
                return false;
            }
            m &= m - 1;
        }
        true
    }

    /// Applies a vertex permutation to a vertex bitmask.
    pub fn permute_mask(perm: &[u8], mask: u32) -> u32 {
        let mut out = 0u32;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            out |= 1 << perm[v];
            m &= m - 1;
        }
        out
    }

    pub fn is_automorphism(&self, perm: &[u8]) -> bool {
        perm.len() == self.n()
            && (0..self.n()).all(|u| Self::permute_mask(perm, self.adj[u]) == self.adj[perm[u] as usize])
    }

    /// Generators of the automorphisms of the multipartite shell that also
    /// preserve the deleted edge set.
    pub fn symmetry_group(&self) -> SymmetryGroup {
        let n = self.n();
        if self.deleted.is_empty() {
            let mut generators = Vec::new();
            for range in self.parts() {
                for v in range.start..range.end.saturating_sub(1) {
                    let mut p = identity(n);
                    p.swap(v, v + 1);
                    generators.push(p);
                }
            }
            for p in 0..self.num_parts() {
                for q in p + 1..self.num_parts() {
                    if self.part_sizes[q] == self.part_sizes[p] {
                        let mut perm = identity(n);
                        for (a, b) in self.part(p).zip(self.part(q)) {
                            perm.swap(a, b);
                        }
                        generators.push(perm);
                        break;
                    }
                }
            }
            return SymmetryGroup::new(n, generators);
        }
        let elements: Vec<Perm> = shell_elements(self)
            .into_iter()
            .filter(|p| self.is_automorphism(p))
            .collect();
        let mut group = SymmetryGroup::new(n, Vec::new());
        let mut closure: HashSet<Perm> = HashSet::from([identity(n)]);
        for e in elements {
            if !closure.contains(&e) {
                group.generators.push(e);
                closure = group.closure();
            }
        }
        group
    }
}

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

/// Every part-structure-preserving permutation of the shell of `g`,
/// ignoring deletions.
fn shell_elements(g: &Graph) -> Vec<Perm> {
    let n = g.n();
    let m = g.num_parts();
    // part permutations that only exchange equal-size parts
    let part_perms: Vec<Vec<usize>> = permutations(m)
        .into_iter()
        .filter(|pi| (0..m).all(|p| g.part_sizes[pi[p]] == g.part_sizes[p]))
        .collect();
    let inner: Vec<Vec<Vec<usize>>> = g.part_sizes.iter().map(|&s| permutations(s)).collect();
    let radices: Vec<usize> = inner.iter().map(Vec::len).collect();
    let mut out = Vec::new();
    for pi in &part_perms {
        let mut choice = vec![0usize; m];
        loop {
            let mut perm = vec![0u8; n];
            for p in 0..m {
                let tau = &inner[p][choice[p]];
                for (i, v) in g.part(p).enumerate() {
                    perm[v] = (g.part_start[pi[p]] + tau[i]) as u8;
                }
            }
            out.push(perm);
            if !odometer_step(&mut choice, &radices) {
                break;
            }
        }
    }
    out
}

/// Advances a mixed-radix counter, last digit fastest. Returns false after
/// wrapping around to all zeros.
pub(crate) fn odometer_step(digits: &mut [usize], radices: &[usize]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// A permutation group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    n: usize,
    generators: Vec<Perm>,
}

impl SymmetryGroup {
    pub fn new(n: usize, generators: Vec<Perm>) -> Self {
        SymmetryGroup { n, generators }
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn closure(&self) -> HashSet<Perm> {
        let id = identity(self.n);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in &self.generators {
                let next: Perm = e.iter().map(|&x| g[x as usize]).collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// Every group element, sorted, identity first.
    pub fn elements(&self) -> Vec<Perm> {
        let mut all: Vec<Perm> = self.closure().into_iter().collect();
        all.sort();
        all
    }

    pub fn order(&self) -> usize {
        self.closure().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn edge_counts() {
        assert_eq!(Graph::multipartite(&[1]).unwrap().edge_count(), 0);
        assert_eq!(Graph::multipartite(&[3, 3]).unwrap().edge_count(), 9);
        let g = Graph::multipartite(&[4, 2, 2, 2]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (10, 36));
    }

    #[test]
    fn bad_shapes() {
        assert!(matches!(Graph::multipartite(&[]), Err(Error::InvalidShape(_))));
        assert!(matches!(Graph::multipartite(&[2, 0]), Err(Error::InvalidShape(_))));
    }

    #[test]
    fn deletions() {
        let g = Graph::multipartite(&[3, 3]).unwrap();
        assert_eq!(g.delete_edges([(0, 3)]).unwrap().edge_count(), 8);
        assert!(matches!(g.delete_edges([(0, 1)]), Err(Error::InvalidEdit(_))));
        assert!(matches!(g.delete_edges([(0, 3), (3, 0)]), Err(Error::InvalidEdit(_))));
        let back = g.delete_edges([(0, 3)]).unwrap().restore_edges([(3, 0)]).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn gstar_edge_count() {
        let g = Graph::multipartite(&[4, 2, 2, 2]).unwrap();
        let us = [4, 6, 8];
        let vs = [5, 7, 9];
        let pairs: Vec<_> = (0..3)
            .flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (us[i], vs[j])))
            .collect();
        assert_eq!(pairs.len(), 6);
        assert_eq!(g.delete_edges(pairs).unwrap().edge_count(), 30);
    }

    #[test]
    fn group_orders() {
        let order = |s: &[usize]| Graph::multipartite(s).unwrap().symmetry_group().order();
        assert_eq!(order(&[1]), 1);
        assert_eq!(order(&[3, 3]), 72);
        assert_eq!(order(&[4, 2, 2, 2]), 1152);
        assert_eq!(order(&[3, 3, 3, 1]), factorial(3).pow(3) * factorial(3));
    }

    #[test]
    fn shell_elements_match_closure() {
        for sizes in [vec![3, 3], vec![2, 1, 2], vec![4, 2, 2]] {
            let g = Graph::multipartite(&sizes).unwrap();
            let mut a = shell_elements(&g);
            a.sort();
            assert_eq!(a, g.symmetry_group().elements());
        }
    }

    #[test]
    fn deleted_edges_shrink_group() {
        let g = Graph::multipartite(&[3, 3]).unwrap().delete_edges([(0, 3)]).unwrap();
        let grp = g.symmetry_group();
        // fix the deleted edge setwise: 2!*2! on the rest, times the part swap
        assert_eq!(grp.order(), 8);
        assert!(grp.elements().iter().all(|p| g.is_automorphism(p)));
    }

    #[test]
    fn adjacency_is_symmetric_and_irreflexive() {
        let g = Graph::multipartite(&[4, 2, 2, 2]).unwrap().delete_edges([(0, 4), (5, 7)]).unwrap();
        for u in 0..g.n() {
            assert!(!g.adjacent(u, u));
            for v in 0..g.n() {
                assert_eq!(g.adjacent(u, v), g.adjacent(v, u));
                let expected = g.part_of(u) != g.part_of(v) && !g.deleted().contains(&(u.min(v), u.max(v)));
                assert_eq!(g.adjacent(u, v), expected);
            }
        }
    }
}
