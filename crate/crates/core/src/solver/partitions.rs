use crate::graph::{odometer_step, Graph};
use crate::lists::{ColorSet, ListAssignment};
use crate::solver::matching::{hall_or_matching, BipartiteIncidence, HallOutcome};
use crate::solver::Coloring;
use crate::{Error, Result};

/// All set partitions of `0..n` as restricted growth strings, in
/// lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0u8; n];
    loop {
        out.push(rgs.clone());
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            let bound = rgs[..i].iter().copied().max().unwrap_or(0) + 1;
            if rgs[i] < bound {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
            i -= 1;
        }
    }
}

/// Number of within-part groupings of `g`: the product of Bell numbers of
/// the part sizes.
pub fn grouping_count(g: &Graph) -> usize {
    g.part_sizes().iter().map(|&s| set_partitions(s).len()).product()
}

/// `G/S` with intersected lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    /// Each class as a vertex bitmask.
    pub classes: Vec<u32>,
    /// Class adjacency as bitmasks over class indices.
    pub adjacency: Vec<u32>,
    /// `L_S`: intersection of the member lists of each class.
    pub lists: Vec<ColorSet>,
}

impl Contraction {
    pub fn incidence(&self) -> BipartiteIncidence {
        BipartiteIncidence::new(self.lists.clone())
    }
}

/// Contracts each class of an independent partition to one vertex.
pub fn contract(g: &Graph, l: &ListAssignment, partition: &[Vec<usize>]) -> Result<Contraction> {
    l.check_covers(g)?;
    let mut seen = 0u32;
    let mut classes = Vec::with_capacity(partition.len());
    for class in partition {
        if class.is_empty() {
            return Err(Error::InvalidPartition("empty class".into()));
        }
        let mut mask = 0u32;
        for &v in class {
            if v >= g.n() || seen >> v & 1 == 1 {
                return Err(Error::InvalidPartition(format!("vertex {v} missing or repeated")));
            }
            seen |= 1 << v;
            mask |= 1 << v;
        }
        if !g.is_independent(mask) {
            return Err(Error::InvalidPartition(format!("class {class:?} is not independent")));
        }
        classes.push(mask);
    }
    if seen.count_ones() as usize != g.n() {
        return Err(Error::InvalidPartition("partition does not cover every vertex".into()));
    }
    let lists = classes.iter().map(|&m| class_list(l, m)).collect();
    let adjacency = classes
        .iter()
        .map(|&a| {
            let nbrs = mask_iter(a).fold(0u32, |acc, v| acc | g.neighbors(v));
            classes
                .iter()
                .enumerate()
                .filter(|(_, &b)| b & nbrs != 0)
                .fold(0u32, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    Ok(Contraction { classes, adjacency, lists })
}

pub(crate) fn class_list(l: &ListAssignment, mask: u32) -> ColorSet {
    mask_iter(mask).fold(ColorSet(u64::MAX), |a, v| a.intersection(l.list(v)))
}

pub(crate) fn mask_iter(mask: u32) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// One grouping (a restricted growth string per part) and a Hall violator of
/// its contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupingViolator {
    pub grouping: Vec<Vec<u8>>,
    /// Violating classes as vertex bitmasks.
    pub classes: Vec<u32>,
    /// Union of the contracted lists of `classes`.
    pub colors: ColorSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionVerdict {
    Colorable(Coloring),
    NotColorable(crate::solver::NonColorability),
}

impl PartitionVerdict {
    pub fn is_colorable(&self) -> bool {
        matches!(self, PartitionVerdict::Colorable(_))
    }
}

/// Classes of one part under a grouping, with their contracted lists.
struct PartGrouping {
    rgs: Vec<u8>,
    classes: Vec<(u32, ColorSet)>,
}

/// Sweeps every combination of within-part groupings.
///
/// In a complete multipartite graph every colour class lies inside one part,
/// so the graph is colourable iff some grouping has a contraction whose
/// lists admit a matching covering all contracted vertices.
pub fn solve_by_partitions(g: &Graph, l: &ListAssignment) -> Result<PartitionVerdict> {
    l.check_covers(g)?;
    if !g.is_complete_multipartite() {
        return Err(Error::Shape("partition method needs a complete multipartite graph".into()));
    }
    if let Some(s) = g.part_sizes().iter().find(|&&s| s > 4) {
        return Err(Error::Shape(format!("parts of size {s} exceed the limit of 4")));
    }
    let per_part: Vec<Vec<PartGrouping>> = g
        .parts()
        .map(|range| {
            set_partitions(range.len())
                .into_iter()
                .map(|rgs| {
                    let blocks = rgs.iter().copied().max().unwrap_or(0) as usize + 1;
                    let classes = (0..blocks)
                        .map(|b| {
                            let mask = rgs
                                .iter()
                                .enumerate()
                                .filter(|(_, &x)| x as usize == b)
                                .fold(0u32, |m, (i, _)| m | 1 << (range.start + i));
                            (mask, class_list(l, mask))
                        })
                        .collect();
                    PartGrouping { rgs, classes }
                })
                .collect()
        })
        .collect();
    let radices: Vec<usize> = per_part.iter().map(Vec::len).collect();
    let mut digits = vec![0usize; per_part.len()];
    let mut violators = Vec::new();
    let mut masks = Vec::with_capacity(g.n());
    let mut left = Vec::with_capacity(g.n());
    loop {
        masks.clear();
        left.clear();
        for (p, &d) in digits.iter().enumerate() {
            for &(m, c) in &per_part[p][d].classes {
                masks.push(m);
                left.push(c);
            }
        }
        let grouping = || digits.iter().enumerate().map(|(p, &d)| per_part[p][d].rgs.clone()).collect();
        if let Some(i) = left.iter().position(|c| c.is_empty()) {
            violators.push(GroupingViolator {
                grouping: grouping(),
                classes: vec![masks[i]],
                colors: ColorSet::EMPTY,
            });
        } else {
            match hall_or_matching(&BipartiteIncidence::new(left.clone())) {
                HallOutcome::Matching(colors) => {
                    let mut out = vec![0u8; g.n()];
                    for (&m, &c) in masks.iter().zip(&colors) {
                        for v in mask_iter(m) {
                            out[v] = c;
                        }
                    }
                    return Ok(PartitionVerdict::Colorable(Coloring(out)));
                }
                HallOutcome::Violator(v) => violators.push(GroupingViolator {
                    grouping: grouping(),
                    classes: v.left.iter().map(|&i| masks[i]).collect(),
                    colors: v.colors,
                }),
            }
        }
        if !odometer_step(&mut digits, &radices) {
            break;
        }
    }
    Ok(PartitionVerdict::NotColorable(crate::solver::NonColorability { violators }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_k33_bad, K33Variant};

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| set_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
        assert_eq!(set_partitions(3), vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1], vec![0, 1, 2]]);
    }

    #[test]
    fn identity_contraction() {
        let (g, l) = make_k33_bad(K33Variant::Disjoint);
        let singletons: Vec<Vec<usize>> = (0..6).map(|v| vec![v]).collect();
        let c = contract(&g, &l, &singletons).unwrap();
        assert_eq!(c.lists, l.lists());
        for (i, &row) in c.adjacency.iter().enumerate() {
            assert_eq!(row, g.neighbors(i));
        }
    }

    #[test]
    fn grouped_contraction() {
        let (g, l) = make_k33_bad(K33Variant::Disjoint);
        let s = vec![vec![0, 1], vec![3, 4], vec![2], vec![5]];
        let c = contract(&g, &l, &s).unwrap();
        let one: ColorSet = [1].into_iter().collect();
        assert_eq!(c.lists[0], one);
        assert_eq!(c.lists[1], one);
        // {u1, w1} have disjoint lists {1,2} and {4,5}
        let s = vec![vec![0, 2], vec![1], vec![3], vec![4], vec![5]];
        assert!(contract(&g, &l, &s).unwrap().lists[0].is_empty());
    }

    #[test]
    fn contraction_errors() {
        let (g, l) = make_k33_bad(K33Variant::Disjoint);
        let s = vec![vec![0, 3], vec![1], vec![2], vec![4], vec![5]];
        assert!(matches!(contract(&g, &l, &s), Err(Error::InvalidPartition(_))));
        let s = vec![vec![0], vec![1]];
        assert!(matches!(contract(&g, &l, &s), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn k22_with_two_colours() {
        let g = Graph::multipartite(&[2, 2]).unwrap();
        let l = ListAssignment::from_slices(&[&[1, 2][..]; 4]).unwrap();
        assert!(solve_by_partitions(&g, &l).unwrap().is_colorable());
    }

    #[test]
    fn k33_bundle_size() {
        let (g, l) = make_k33_bad(K33Variant::Overlap2);
        match solve_by_partitions(&g, &l).unwrap() {
            PartitionVerdict::NotColorable(nc) => assert_eq!(nc.violators.len(), 25),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn refuses_deleted_edges() {
        let g = Graph::multipartite(&[1, 1]).unwrap().delete_edges([(0, 1)]).unwrap();
        let l = ListAssignment::from_slices(&[&[0], &[0]]).unwrap();
        assert!(matches!(solve_by_partitions(&g, &l), Err(Error::Shape(_))));
    }
}
