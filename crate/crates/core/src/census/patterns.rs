//! Enumeration of list assignments up to colour renaming.
//!
//! A colour only matters through the vertex set `L^{-1}(c)` it belongs to, so
//! an assignment with prescribed list sizes is a multiset of nonempty vertex
//! masks in which every vertex `v` is covered exactly `demand[v]` times.

use rayon::prelude::*;

use crate::graph::Graph;
use crate::lists::{ColorSet, ListAssignment, PALETTE};
use crate::{Error, Result};

/// A multiset of colour classes, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncidencePattern(Vec<u32>);

impl IncidencePattern {
    pub fn new(mut classes: Vec<u32>) -> Result<Self> {
        if classes.contains(&0) {
            return Err(Error::Invalid("empty colour class".into()));
        }
        classes.sort_unstable();
        Ok(IncidencePattern(classes))
    }

    pub fn classes(&self) -> &[u32] {
        &self.0
    }

    pub fn num_colors(&self) -> usize {
        self.0.len()
    }

    /// How often each of the first `n` vertices is covered.
    pub fn coverage(&self, n: usize) -> Vec<usize> {
        (0..n).map(|v| self.0.iter().filter(|&&m| m >> v & 1 == 1).count()).collect()
    }

    /// Colours `0..m` assigned to the classes in order.
    pub fn to_assignment(&self, n: usize, k: usize) -> ListAssignment {
        let mut lists = vec![ColorSet::EMPTY; n];
        for (c, &m) in self.0.iter().enumerate() {
            for (v, list) in lists.iter_mut().enumerate() {
                if m >> v & 1 == 1 {
                    list.insert(c);
                }
            }
        }
        ListAssignment::new(lists, k).expect("coverage matches demand")
    }
}

/// Restrictions applied while enumerating.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub max_colors: Option<usize>,
    pub exact_colors: Option<usize>,
    /// Forbid colours common to every vertex of a part of at least this size.
    pub no_common_color_min_part: Option<usize>,
    /// Forbid colours confined to a single part.
    pub no_single_part_colors: bool,
    /// Forbid two vertices of one part having equal lists.
    pub distinct_lists_in_parts: bool,
}

impl Constraints {
    pub fn none() -> Self {
        Self::default()
    }

    /// The necessary badness conditions for the two target shapes, including
    /// the bound `|C| < |V(G)|`.
    pub fn necessary_bad(n: usize) -> Self {
        Constraints {
            max_colors: Some(n - 1),
            exact_colors: None,
            no_common_color_min_part: Some(2),
            no_single_part_colors: true,
            distinct_lists_in_parts: true,
        }
    }

    pub fn describe(&self) -> String {
        let mut parts = vec!["exact-k".to_string()];
        if let Some(m) = self.max_colors {
            parts.push(format!("colors<={m}"));
        }
        if let Some(m) = self.exact_colors {
            parts.push(format!("colors={m}"));
        }
        if let Some(s) = self.no_common_color_min_part {
            parts.push(format!("no-common-color-in-{s}+-parts"));
        }
        if self.no_single_part_colors {
            parts.push("no-single-part-colors".into());
        }
        if self.distinct_lists_in_parts {
            parts.push("distinct-lists-in-parts".into());
        }
        parts.join(",")
    }

    fn color_cap(&self) -> usize {
        let cap = self.exact_colors.or(self.max_colors).unwrap_or(PALETTE);
        cap.min(PALETTE)
    }
}

/// Largest incidence total (sum of list sizes) enumerated without a colour
/// bound.
pub const UNBOUNDED_INCIDENCE_LIMIT: usize = 18;

struct Enumerator<'a> {
    g: &'a Graph,
    forbidden_full: Vec<u32>,
    part_masks: Vec<u32>,
    constraints: &'a Constraints,
    cap: usize,
}

impl Enumerator<'_> {
    fn allowed(&self, mask: u32) -> bool {
        if self.forbidden_full.iter().any(|&p| mask & p == p) {
            return false;
        }
        if self.constraints.no_single_part_colors && self.part_masks.iter().any(|&p| mask & !p == 0) {
            return false;
        }
        true
    }

    fn accept(&self, classes: &[u32]) -> bool {
        if let Some(e) = self.constraints.exact_colors {
            if classes.len() != e {
                return false;
            }
        }
        if self.constraints.distinct_lists_in_parts {
            for range in self.g.parts() {
                for u in range.clone() {
                    for v in u + 1..range.end {
                        // lists equal iff every class holds both or neither
                        if classes.iter().all(|&m| (m >> u & 1) == (m >> v & 1)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Candidate next classes: the lowest vertex with open demand must be in
    /// the class, and classes with the same lowest vertex appear in
    /// ascending order.
    fn candidates(&self, remaining: &[u8], prev: u32) -> Vec<u32> {
        let Some(low) = remaining.iter().position(|&r| r > 0) else {
            return Vec::new();
        };
        let open = remaining
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .fold(0u32, |m, (v, _)| m | 1 << v);
        let rest = open & !((2u32 << low) - 1);
        let same_group = prev != 0 && prev.trailing_zeros() as usize == low;
        let mut out = Vec::new();
        // submasks of `rest`, ascending
        let mut sub = 0u32;
        loop {
            let mask = 1 << low | sub;
            if (!same_group || mask >= prev) && self.allowed(mask) {
                out.push(mask);
            }
            if sub == rest {
                break;
            }
            sub = (sub.wrapping_sub(rest)) & rest;
        }
        out
    }

    fn run<F: FnMut(&[u32])>(&self, remaining: &mut [u8], classes: &mut Vec<u32>, visit: &mut F) {
        if remaining.iter().all(|&r| r == 0) {
            if self.accept(classes) {
                visit(classes);
            }
            return;
        }
        if classes.len() >= self.cap {
            return;
        }
        // every remaining class covers the lowest open vertex's demand at
        // most once, and the largest demand at most once per class
        let need = *remaining.iter().max().unwrap() as usize;
        if classes.len() + need > self.cap {
            return;
        }
        let prev = classes.last().copied().unwrap_or(0);
        for mask in self.candidates(remaining, prev) {
            apply(remaining, mask, false);
            classes.push(mask);
            self.run(remaining, classes, visit);
            classes.pop();
            apply(remaining, mask, true);
        }
    }
}

fn apply(remaining: &mut [u8], mask: u32, undo: bool) {
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if undo {
            remaining[v] += 1;
        } else {
            remaining[v] -= 1;
        }
    }
}

/// Every incidence pattern meeting `demand` and `constraints`, one per
/// colour-renaming class, in a deterministic order.
///
/// The search is split by its first class across worker threads; results
/// are concatenated in prefix order, so the output does not depend on the
/// thread count.
pub fn enumerate_patterns(g: &Graph, demand: &[usize], constraints: &Constraints) -> Result<Vec<IncidencePattern>> {
    if demand.len() != g.n() {
        return Err(Error::Invalid(format!("{} demands for {} vertices", demand.len(), g.n())));
    }
    if demand.iter().any(|&d| d > PALETTE) {
        return Err(Error::Palette(PALETTE));
    }
    let total: usize = demand.iter().sum();
    let bounded = constraints.exact_colors.or(constraints.max_colors).is_some();
    if !bounded && total > UNBOUNDED_INCIDENCE_LIMIT {
        return Err(Error::Resource(format!(
            "{total} list entries over {} vertices with no colour bound; up to 2^{} - 1 classes per colour, \
             which is beyond an exhaustive sweep (limit {UNBOUNDED_INCIDENCE_LIMIT} entries)",
            g.n(),
            g.n()
        )));
    }
    let forbidden_full = match constraints.no_common_color_min_part {
        Some(s) => g
            .parts()
            .filter(|r| r.len() >= s)
            .map(|r| r.fold(0u32, |m, v| m | 1 << v))
            .collect(),
        None => Vec::new(),
    };
    let part_masks = g.parts().map(|r| r.fold(0u32, |m, v| m | 1 << v)).collect();
    let e = Enumerator {
        g,
        forbidden_full,
        part_masks,
        constraints,
        cap: constraints.color_cap(),
    };
    let remaining: Vec<u8> = demand.iter().map(|&d| d as u8).collect();
    if remaining.iter().all(|&r| r == 0) {
        return Ok(if e.accept(&[]) { vec![IncidencePattern(Vec::new())] } else { Vec::new() });
    }
    let firsts = e.candidates(&remaining, 0);
    let chunks: Vec<Vec<IncidencePattern>> = firsts
        .par_iter()
        .map(|&first| {
            let mut rem = remaining.clone();
            apply(&mut rem, first, false);
            let mut classes = vec![first];
            let mut out = Vec::new();
            e.run(&mut rem, &mut classes, &mut |c| out.push(IncidencePattern(c.to_vec())));
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

/// Raw assignments of `K_{3*(k/2+1),1*(k/2-1)}` over the colours `0..3k/2`
/// in which no 3-part has a common colour.
///
/// A 3-part with `k`-lists from `3k/2` colours has empty triple intersection
/// iff the three complements partition the colours; each such partition is
/// listed once, complements assigned to the part's vertices in order of
/// their smallest colour. 1-parts take every `k`-subset.
pub fn unique3_forward_assignments(k: usize) -> Result<(Graph, Vec<ListAssignment>)> {
    let g = crate::constructions::unique3_graph(k)?;
    if k < 4 {
        return Err(Error::Spec("k must be at least 4".into()));
    }
    let m = 3 * k / 2;
    let h = k / 2;
    let all = ColorSet::range(0, m);
    let subsets = k_subsets(m, h);
    // ordered by smallest element: first block holds colour 0, second block
    // the smallest colour outside the first
    let mut triples = Vec::new();
    for &b0 in &subsets {
        if !b0.contains(0) {
            continue;
        }
        let rest = all.difference(b0);
        let low = rest.min().unwrap();
        for &b1 in &subsets {
            if b1.contains(low) && b1.is_subset(rest) {
                let b2 = rest.difference(b1);
                triples.push([all.difference(b0), all.difference(b1), all.difference(b2)]);
            }
        }
    }
    let singles = k_subsets(m, k);
    let threes = h + 1;
    let ones = h - 1;
    let total = triples.len().pow(threes as u32) * singles.len().pow(ones as u32);
    if total > 10_000_000 {
        return Err(Error::Resource(format!("{total} assignments")));
    }
    let mut radices = vec![triples.len(); threes];
    radices.extend(std::iter::repeat_n(singles.len(), ones));
    let mut digits = vec![0usize; radices.len()];
    let mut out = Vec::with_capacity(total);
    loop {
        let mut lists = Vec::with_capacity(g.n());
        for &d in &digits[..threes] {
            lists.extend(triples[d]);
        }
        for &d in &digits[threes..] {
            lists.push(singles[d]);
        }
        out.push(ListAssignment::new(lists, k)?);
        if !crate::graph::odometer_step(&mut digits, &radices) {
            break;
        }
    }
    Ok((g, out))
}

/// All `r`-subsets of `0..m`, in ascending bit order.
pub fn k_subsets(m: usize, r: usize) -> Vec<ColorSet> {
    (0u64..1 << m).filter(|b| b.count_ones() as usize == r).map(ColorSet).collect()
}

/// Every labelling of the colours `0..2k` into the blocks
/// `A1, A2, A3, A4, B1, B2` of a structured bad assignment of
/// `K_{4,2*(k-1)}`, over every split `(a1, a3)` with `a1 + a3 = k/2`.
pub fn unique4_labelings(k: usize) -> Result<Vec<crate::constructions::Unique4Spec>> {
    use crate::constructions::Unique4Spec;
    if k < 2 || k % 2 == 1 {
        return Err(Error::Spec(format!("k = {k} must be even")));
    }
    let mut out = Vec::new();
    for a1 in (0..=k / 2).rev() {
        let a3 = k / 2 - a1;
        let sizes = [a1, a1, a3, a3, k / 2, k / 2];
        let mut blocks = [ColorSet::EMPTY; 6];
        fill_blocks(&sizes, 0, ColorSet::range(0, 2 * k), &mut blocks, &mut |b| {
            out.push(Unique4Spec::with_blocks(k, *b).expect("valid labelling"));
        });
    }
    Ok(out)
}

fn fill_blocks(
    sizes: &[usize; 6],
    i: usize,
    free: ColorSet,
    blocks: &mut [ColorSet; 6],
    visit: &mut impl FnMut(&[ColorSet; 6]),
) {
    if i == 6 {
        visit(blocks);
        return;
    }
    let pool: Vec<usize> = free.iter().collect();
    for pick in k_subsets(pool.len(), sizes[i]) {
        let chosen: ColorSet = pick.iter().map(|j| pool[j]).collect();
        blocks[i] = chosen;
        fill_blocks(sizes, i + 1, free.difference(chosen), blocks, visit);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent count: all assignments over a palette of `n*k` colours,
    /// deduplicated by the sorted class multiset.
    fn brute_force_patterns(n: usize, k: usize) -> usize {
        let palette = n * k;
        let subsets = k_subsets(palette, k);
        let mut seen = std::collections::BTreeSet::new();
        let mut idx = vec![0usize; n];
        let radices = vec![subsets.len(); n];
        loop {
            let l = ListAssignment::new(idx.iter().map(|&i| subsets[i]).collect(), k).unwrap();
            let mut inc = l.incidence();
            inc.sort_unstable();
            seen.insert(inc);
            if !crate::graph::odometer_step(&mut idx, &radices) {
                break;
            }
        }
        seen.len()
    }

    #[test]
    fn k2_with_k1() {
        let g = Graph::multipartite(&[1, 1]).unwrap();
        let pats = enumerate_patterns(&g, &[1, 1], &Constraints::none()).unwrap();
        let classes: Vec<&[u32]> = pats.iter().map(|p| p.classes()).collect();
        assert_eq!(classes.len(), 2);
        assert!(classes.contains(&&[0b11][..]));
        assert!(classes.contains(&&[0b01, 0b10][..]));
    }

    #[test]
    fn matches_brute_force() {
        let g3 = Graph::multipartite(&[1, 1, 1]).unwrap();
        assert_eq!(enumerate_patterns(&g3, &[2, 2, 2], &Constraints::none()).unwrap().len(), brute_force_patterns(3, 2));
        let g2 = Graph::multipartite(&[2]).unwrap();
        assert_eq!(enumerate_patterns(&g2, &[3, 3], &Constraints::none()).unwrap().len(), brute_force_patterns(2, 3));
    }

    #[test]
    fn coverage_and_uniqueness() {
        let g = Graph::multipartite(&[3, 3]).unwrap();
        let pats = enumerate_patterns(&g, &[2; 6], &Constraints::none()).unwrap();
        let distinct: std::collections::BTreeSet<_> = pats.iter().collect();
        assert_eq!(distinct.len(), pats.len());
        assert!(pats.iter().all(|p| p.coverage(6) == vec![2; 6]));
    }

    #[test]
    fn unique3_raw_count() {
        let (g, all) = unique3_forward_assignments(4).unwrap();
        assert_eq!(all.len(), 15usize.pow(3) * 15);
        for l in all.iter().step_by(997) {
            assert_eq!(l.colors().len(), 6);
            for r in g.parts().filter(|r| r.len() == 3) {
                let common = r.clone().fold(ColorSet(u64::MAX), |a, v| a.intersection(l.list(v)));
                assert!(common.is_empty());
            }
        }
    }

    #[test]
    fn unique4_labeling_counts() {
        let specs = unique4_labelings(4).unwrap();
        // 8!/(2!^4) + 8!/(2!^2) + 8!/(2!^4)
        assert_eq!(specs.len(), 2520 + 10080 + 2520);
    }

    #[test]
    fn resource_guard() {
        let g = Graph::multipartite(&[4, 2, 2, 2]).unwrap();
        assert!(matches!(enumerate_patterns(&g, &[4; 10], &Constraints::none()), Err(Error::Resource(_))));
    }
}
