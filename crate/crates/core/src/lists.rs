//! List assignments over a dense 64-colour palette.

use std::fmt;

use crate::graph::{Graph, Perm};
use crate::{Error, Result};

/// Colours are `0..PALETTE`.
pub const PALETTE: usize = 64;

/// A set of colours stored as a bit vector.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);

    pub fn from_colors<I: IntoIterator<Item = usize>>(colors: I) -> Result<Self> {
        let mut bits = 0u64;
        for c in colors {
            if c >= PALETTE {
                return Err(Error::Palette(c));
            }
            bits |= 1 << c;
        }
        Ok(ColorSet(bits))
    }

    /// Colours `lo..hi`.
    pub fn range(lo: usize, hi: usize) -> Self {
        debug_assert!(hi <= PALETTE);
        ColorSet((lo..hi).fold(0u64, |m, c| m | 1 << c))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, c: usize) -> bool {
        c < PALETTE && self.0 >> c & 1 == 1
    }

    pub fn insert(&mut self, c: usize) {
        self.0 |= 1 << c;
    }

    pub fn remove(&mut self, c: usize) {
        self.0 &= !(1 << c);
    }

    pub fn union(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 | o.0)
    }

    pub fn intersection(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & o.0)
    }

    pub fn difference(self, o: ColorSet) -> ColorSet {
        ColorSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: ColorSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: ColorSet) -> bool {
        self.0 & o.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Colours in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(c)
        })
    }
}

impl fmt::Debug for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for ColorSet {
    /// Panics on colours outside the palette; use [`ColorSet::from_colors`]
    /// for untrusted input.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ColorSet::from_colors(iter).expect("colour outside palette")
    }
}

/// A `k`-list assignment: every vertex has at least `k` colours.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    lists: Vec<ColorSet>,
    k: usize,
}

impl ListAssignment {
    pub fn new(lists: Vec<ColorSet>, k: usize) -> Result<Self> {
        if let Some(v) = lists.iter().position(|l| l.len() < k) {
            return Err(Error::Lists(format!(
                "vertex {v} has {} colours, fewer than k = {k}",
                lists[v].len()
            )));
        }
        Ok(ListAssignment { lists, k })
    }

    /// Infers `k` as the smallest list size.
    pub fn from_lists(lists: Vec<ColorSet>) -> Self {
        let k = lists.iter().map(|l| l.len()).min().unwrap_or(0);
        ListAssignment { lists, k }
    }

    /// Convenience constructor from literal colour lists.
    pub fn from_slices(lists: &[&[usize]]) -> Result<Self> {
        let sets = lists
            .iter()
            .map(|l| ColorSet::from_colors(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_lists(sets))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: usize) -> ColorSet {
        self.lists[v]
    }

    pub fn lists(&self) -> &[ColorSet] {
        &self.lists
    }

    /// True when every list has exactly `k` colours.
    pub fn is_exact(&self) -> bool {
        self.lists.iter().all(|l| l.len() == self.k)
    }

    /// `C`, the union of all lists.
    pub fn colors(&self) -> ColorSet {
        self.lists.iter().fold(ColorSet::EMPTY, |a, &l| a.union(l))
    }

    /// The vertex set `L^{-1}(c)` as a bitmask.
    pub fn holders(&self, c: usize) -> u32 {
        self.lists
            .iter()
            .enumerate()
            .filter(|(_, l)| l.contains(c))
            .fold(0u32, |m, (v, _)| m | 1 << v)
    }

    /// One vertex mask per colour of `C`, in ascending colour order.
    pub fn incidence(&self) -> Vec<u32> {
        self.colors().iter().map(|c| self.holders(c)).collect()
    }

    pub(crate) fn check_covers(&self, g: &Graph) -> Result<()> {
        if self.lists.len() != g.n() {
            return Err(Error::Lists(format!(
                "{} lists for a graph with {} vertices",
                self.lists.len(),
                g.n()
            )));
        }
        Ok(())
    }

    /// Applies a vertex permutation: the list of `v` moves to `perm[v]`.
    pub fn permute_vertices(&self, perm: &[u8]) -> Self {
        let mut lists = vec![ColorSet::EMPTY; self.lists.len()];
        for (v, &l) in self.lists.iter().enumerate() {
            lists[perm[v] as usize] = l;
        }
        ListAssignment { lists, k: self.k }
    }

    /// Renames colours: `c` becomes `map[c]`.
    pub fn rename_colors(&self, map: &[usize]) -> Result<Self> {
        let lists = self
            .lists
            .iter()
            .map(|l| ColorSet::from_colors(l.iter().map(|c| map[c])))
            .collect::<Result<Vec<_>>>()?;
        Ok(ListAssignment { lists, k: self.k })
    }
}

/// Statistics of a single part.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartStat {
    /// Largest pairwise list intersection; `None` for parts of size below 3.
    pub t: Option<usize>,
    /// `by_count[i]` holds the colours lying in exactly `i` lists of the part.
    pub by_count: Vec<ColorSet>,
}

impl PartStat {
    /// Colours lying in at least `i` lists of the part.
    pub fn at_least(&self, i: usize) -> ColorSet {
        self.by_count
            .iter()
            .skip(i)
            .fold(ColorSet::EMPTY, |a, &s| a.union(s))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartStats {
    pub colors: ColorSet,
    pub parts: Vec<PartStat>,
}

pub fn assignment_stats(g: &Graph, l: &ListAssignment) -> Result<PartStats> {
    l.check_covers(g)?;
    let colors = l.colors();
    let parts = g
        .parts()
        .map(|range| {
            let size = range.len();
            let mut by_count = vec![ColorSet::EMPTY; size + 1];
            for c in colors.iter() {
                let i = range.clone().filter(|&v| l.list(v).contains(c)).count();
                by_count[i].insert(c);
            }
            let t = (size >= 3).then(|| {
                range
                    .clone()
                    .flat_map(|u| (u + 1..range.end).map(move |v| (u, v)))
                    .map(|(u, v)| l.list(u).intersection(l.list(v)).len())
                    .max()
                    .unwrap_or(0)
            });
            PartStat { t, by_count }
        })
        .collect();
    Ok(PartStats { colors, parts })
}

/// The two extremal shapes, with their `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetShape {
    /// `K_{4,2*(k-1)}`
    FourTwos { k: usize },
    /// `K_{3*(k/2+1),1*(k/2-1)}`
    ThreesOnes { k: usize },
}

impl TargetShape {
    pub fn detect(part_sizes: &[usize]) -> Option<TargetShape> {
        let m = part_sizes.len();
        if m >= 2 && part_sizes[0] == 4 && part_sizes[1..].iter().all(|&s| s == 2) {
            return Some(TargetShape::FourTwos { k: m });
        }
        let threes = part_sizes.iter().take_while(|&&s| s == 3).count();
        if threes >= 2 && part_sizes[threes..].iter().all(|&s| s == 1) && m - threes + 2 == threes {
            return Some(TargetShape::ThreesOnes { k: 2 * (threes - 1) });
        }
        None
    }

    pub fn k(self) -> usize {
        match self {
            TargetShape::FourTwos { k } | TargetShape::ThreesOnes { k } => k,
        }
    }

    pub fn part_sizes(self) -> Vec<usize> {
        match self {
            TargetShape::FourTwos { k } => std::iter::once(4).chain(std::iter::repeat_n(2, k - 1)).collect(),
            TargetShape::ThreesOnes { k } => std::iter::repeat_n(3, k / 2 + 1)
                .chain(std::iter::repeat_n(1, k / 2 - 1))
                .collect(),
        }
    }
}

/// Why an assignment cannot be bad.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterReason {
    /// (a) two vertices of one part carry the same list.
    EqualLists { u: usize, v: usize },
    /// (b) a colour occurs only inside one part.
    SinglePartColor { color: usize, part: usize },
    /// (c) all vertices of a part of size at least 2 share a colour.
    CommonColor { part: usize, color: usize },
    /// (d) at least as many colours as vertices.
    TooManyColors { colors: usize, vertices: usize },
}

impl fmt::Display for FilterReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterReason::EqualLists { u, v } => write!(f, "(a) vertices {u} and {v} have equal lists"),
            FilterReason::SinglePartColor { color, part } => {
                write!(f, "(b) colour {color} occurs only in part {part}")
            }
            FilterReason::CommonColor { part, color } => write!(f, "(c) part {part} shares colour {color}"),
            FilterReason::TooManyColors { colors, vertices } => {
                write!(f, "(d) {colors} colours for {vertices} vertices")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterVerdict {
    Pass,
    Fail(FilterReason),
}

impl FilterVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, FilterVerdict::Pass)
    }
}

/// Necessary conditions for a bad assignment of one of the two target shapes.
pub fn necessary_bad_filter(g: &Graph, l: &ListAssignment) -> Result<FilterVerdict> {
    if TargetShape::detect(g.part_sizes()).is_none() || !g.is_complete_multipartite() {
        return Err(Error::Shape(format!(
            "part sizes {:?} are not K_{{4,2*(k-1)}} or K_{{3*(k/2+1),1*(k/2-1)}}",
            g.part_sizes()
        )));
    }
    l.check_covers(g)?;
    Ok(filter_unchecked(g, l))
}

pub(crate) fn filter_unchecked(g: &Graph, l: &ListAssignment) -> FilterVerdict {
    for range in g.parts() {
        for u in range.clone() {
            for v in u + 1..range.end {
                if l.list(u) == l.list(v) {
                    return FilterVerdict::Fail(FilterReason::EqualLists { u, v });
                }
            }
        }
    }
    let colors = l.colors();
    for (p, range) in g.parts().enumerate() {
        let outside = (0..g.n())
            .filter(|v| !range.contains(v))
            .fold(ColorSet::EMPTY, |a, v| a.union(l.list(v)));
        if let Some(color) = colors.difference(outside).min() {
            return FilterVerdict::Fail(FilterReason::SinglePartColor { color, part: p });
        }
    }
    for (p, range) in g.parts().enumerate() {
        if range.len() >= 2 {
            let common = range.clone().fold(colors, |a, v| a.intersection(l.list(v)));
            if let Some(color) = common.min() {
                return FilterVerdict::Fail(FilterReason::CommonColor { part: p, color });
            }
        }
    }
    if colors.len() >= g.n() {
        return FilterVerdict::Fail(FilterReason::TooManyColors {
            colors: colors.len(),
            vertices: g.n(),
        });
    }
    FilterVerdict::Pass
}

/// Orbit representative of a (graph, list assignment) pair under graph
/// symmetry composed with colour renaming.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if !s.len().is_multiple_of(2) {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalForm)
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Canonicalizes many assignments of one graph, reusing the enumerated group.
///
/// Colour renaming is quotiented out by encoding an assignment as the sorted
/// multiset of its colour classes `L^{-1}(c)`; the form is the lexicographic
/// minimum of that encoding over all graph symmetries.
pub struct Canonicalizer {
    header: Vec<u8>,
    mask_bytes: usize,
    elements: Vec<Perm>,
    // per element: for each byte position of a vertex mask, a 256-entry
    // table of permuted bits; empty for large groups
    tables: Vec<Vec<[u32; 256]>>,
    n: usize,
}

const TABLE_LIMIT: usize = 1 << 13;

impl Canonicalizer {
    pub fn new(g: &Graph) -> Self {
        let elements = g.symmetry_group().elements();
        Self::with_elements(g, &elements)
    }

    pub fn with_elements(g: &Graph, elements: &[Perm]) -> Self {
        let n = g.n();
        let mask_bytes = n.div_ceil(8).max(1);
        let mut header = vec![n as u8, g.num_parts() as u8];
        header.extend(g.part_sizes().iter().map(|&s| s as u8));
        header.push(g.deleted().len() as u8);
        for &(u, v) in g.deleted() {
            header.extend([u as u8, v as u8]);
        }
        let use_tables = elements.len() * mask_bytes <= TABLE_LIMIT;
        let tables = elements
            .iter()
            .filter(|_| use_tables)
            .map(|perm| {
                (0..mask_bytes)
                    .map(|b| {
                        let mut t = [0u32; 256];
                        for (byte, slot) in t.iter_mut().enumerate() {
                            let mask = ((byte as u32) << (8 * b)) & low_bits(n);
                            *slot = Graph::permute_mask(perm, mask);
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        Canonicalizer {
            header,
            mask_bytes,
            elements: elements.to_vec(),
            tables,
            n,
        }
    }

    pub fn canonicalize(&self, l: &ListAssignment) -> Result<CanonicalForm> {
        if l.len() != self.n {
            return Err(Error::Lists(format!("{} lists for {} vertices", l.len(), self.n)));
        }
        Ok(self.canonicalize_incidence(&l.incidence()))
    }

    /// Canonical form of a colour-class multiset (one vertex mask per colour).
    pub fn canonicalize_incidence(&self, classes: &[u32]) -> CanonicalForm {
        let mut best: Option<Vec<u32>> = None;
        let mut cur = Vec::with_capacity(classes.len());
        let mut consider = |cur: &mut Vec<u32>| {
            cur.sort_unstable();
            if best.as_ref().is_none_or(|b| *cur < *b) {
                best = Some(cur.clone());
            }
        };
        if self.tables.is_empty() {
            for perm in &self.elements {
                cur.clear();
                cur.extend(classes.iter().map(|&m| Graph::permute_mask(perm, m)));
                consider(&mut cur);
            }
        } else {
            for table in &self.tables {
                cur.clear();
                cur.extend(classes.iter().map(|&m| {
                    (0..self.mask_bytes).fold(0u32, |acc, b| acc | table[b][(m >> (8 * b) & 0xff) as usize])
                }));
                consider(&mut cur);
            }
        }
        let best = best.unwrap_or_default();
        let mut bytes = self.header.clone();
        bytes.push(best.len() as u8);
        for m in best {
            bytes.extend_from_slice(&m.to_be_bytes()[4 - self.mask_bytes..]);
        }
        CanonicalForm(bytes)
    }
}

fn low_bits(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

pub fn canonicalize(g: &Graph, l: &ListAssignment) -> Result<CanonicalForm> {
    l.check_covers(g)?;
    Canonicalizer::new(g).canonicalize(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_k33_bad, make_unique4, K33Variant, Unique4Spec};

    #[test]
    fn stats_disjoint_variant() {
        let (g, l) = make_k33_bad(K33Variant::Disjoint);
        let s = assignment_stats(&g, &l).unwrap();
        assert_eq!(s.colors.len(), 5);
        assert_eq!(s.parts[0].t, Some(1));
        assert_eq!(s.parts[0].by_count[2], ColorSet::from_colors([1]).unwrap());
    }

    #[test]
    fn stats_unique4_four_part() {
        let (g, l) = make_unique4(&Unique4Spec::new(4, 2, 0).unwrap()).unwrap();
        let s = assignment_stats(&g, &l).unwrap();
        assert_eq!(s.parts[0].t, Some(2));
        assert_eq!(s.parts[1].t, None);
    }

    #[test]
    fn stats_disjoint_part_has_zero_t() {
        let g = Graph::multipartite(&[3]).unwrap();
        let l = ListAssignment::from_slices(&[&[0, 1], &[2, 3], &[4, 5]]).unwrap();
        assert_eq!(assignment_stats(&g, &l).unwrap().parts[0].t, Some(0));
    }

    #[test]
    fn stats_bookkeeping() {
        let (g, l) = make_unique4(&Unique4Spec::new(4, 1, 1).unwrap()).unwrap();
        let s = assignment_stats(&g, &l).unwrap();
        for (p, range) in g.parts().enumerate() {
            let weighted: usize = s.parts[p].by_count.iter().enumerate().map(|(i, c)| i * c.len()).sum();
            let total: usize = range.map(|v| l.list(v).len()).sum();
            assert_eq!(weighted, total);
        }
    }

    #[test]
    fn detect_shapes() {
        assert_eq!(TargetShape::detect(&[3, 3]), Some(TargetShape::ThreesOnes { k: 2 }));
        assert_eq!(TargetShape::detect(&[3, 3, 3, 1]), Some(TargetShape::ThreesOnes { k: 4 }));
        assert_eq!(TargetShape::detect(&[4, 2]), Some(TargetShape::FourTwos { k: 2 }));
        assert_eq!(TargetShape::detect(&[4, 2, 2, 2]), Some(TargetShape::FourTwos { k: 4 }));
        assert_eq!(TargetShape::detect(&[3, 3, 3]), None);
        assert_eq!(TargetShape::detect(&[2, 2]), None);
        for s in [TargetShape::ThreesOnes { k: 6 }, TargetShape::FourTwos { k: 6 }] {
            assert_eq!(TargetShape::detect(&s.part_sizes()), Some(s));
        }
    }

    #[test]
    fn filter_reasons() {
        let g = Graph::multipartite(&[3, 3]).unwrap();
        let l = ListAssignment::from_slices(&[&[1, 2], &[1, 2], &[3, 4], &[1, 3], &[2, 4], &[1, 4]]).unwrap();
        assert_eq!(
            necessary_bad_filter(&g, &l).unwrap(),
            FilterVerdict::Fail(FilterReason::EqualLists { u: 0, v: 1 })
        );

        let (g, l) = make_unique4(&Unique4Spec::new(4, 2, 0).unwrap()).unwrap();
        assert!(necessary_bad_filter(&g, &l).unwrap().passed());
        let mut lists = l.lists().to_vec();
        lists[4].remove(1);
        lists[4].insert(7);
        let bad = ListAssignment::new(lists, 4).unwrap();
        assert!(matches!(
            necessary_bad_filter(&g, &bad).unwrap(),
            FilterVerdict::Fail(FilterReason::CommonColor { part: 1, color: 7 })
        ));

        let g = Graph::multipartite(&[2, 2]).unwrap();
        let l = ListAssignment::from_slices(&[&[1], &[2], &[1], &[2]]).unwrap();
        assert!(matches!(necessary_bad_filter(&g, &l), Err(Error::Shape(_))));
    }

    #[test]
    fn filter_single_part_colour_and_size() {
        let g = Graph::multipartite(&[3, 3]).unwrap();
        // colour 9 lives only in part 0
        let l = ListAssignment::from_slices(&[&[1, 9], &[1, 3], &[4, 5], &[1, 4], &[1, 5], &[3, 4]]).unwrap();
        assert_eq!(
            necessary_bad_filter(&g, &l).unwrap(),
            FilterVerdict::Fail(FilterReason::SinglePartColor { color: 9, part: 0 })
        );
        let l = ListAssignment::from_slices(&[&[0, 1], &[2, 3], &[4, 5], &[0, 2], &[1, 4], &[3, 5]]).unwrap();
        assert_eq!(
            necessary_bad_filter(&g, &l).unwrap(),
            FilterVerdict::Fail(FilterReason::TooManyColors { colors: 6, vertices: 6 })
        );
    }

    #[test]
    fn canonical_forms_of_k33_variants() {
        let forms: Vec<_> = K33Variant::ALL
            .iter()
            .map(|&v| {
                let (g, l) = make_k33_bad(v);
                canonicalize(&g, &l).unwrap()
            })
            .collect();
        assert_ne!(forms[0], forms[1]);
        assert_ne!(forms[0], forms[2]);
        assert_ne!(forms[1], forms[2]);

        let (g, l) = make_k33_bad(K33Variant::Disjoint);
        let swap: Vec<u8> = vec![3, 4, 5, 0, 1, 2];
        assert_eq!(canonicalize(&g, &l.permute_vertices(&swap)).unwrap(), forms[0]);
    }

    #[test]
    fn hex_round_trip() {
        let (g, l) = make_k33_bad(K33Variant::Overlap1);
        let f = canonicalize(&g, &l).unwrap();
        assert_eq!(CanonicalForm::from_hex(&f.to_hex()), Some(f));
        assert_eq!(CanonicalForm::from_hex("0g"), None);
    }

    #[test]
    fn palette_cap() {
        assert_eq!(ColorSet::from_colors([64]), Err(Error::Palette(64)));
        assert!(ListAssignment::from_slices(&[&[63]]).is_ok());
    }
}
