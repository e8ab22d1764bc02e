//! Generators for the bad list assignments of the two extremal shapes, the
//! graph `G*`, and the `ind3` sufficient condition for `f`-choosability of
//! complete multipartite graphs with parts of size at most three.

use crate::graph::Graph;
use crate::lists::{ColorSet, ListAssignment};
use crate::{Error, Result};

/// Vertex roles in `K_{4,2*(k-1)}`: the 4-part is `u1, v1, x1, y1`, then
/// `u_i, v_i` for `i = 2..=k`.
pub mod roles {
    pub const U1: usize = 0;
    pub const V1: usize = 1;
    pub const X1: usize = 2;
    pub const Y1: usize = 3;

    /// `u_i` for `2 <= i <= k`.
    pub fn u(i: usize) -> usize {
        4 + 2 * (i - 2)
    }

    /// `v_i` for `2 <= i <= k`.
    pub fn v(i: usize) -> usize {
        5 + 2 * (i - 2)
    }
}

/// Colour blocks of a structured bad assignment of `K_{4,2*(k-1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unique4Spec {
    pub k: usize,
    pub a1: usize,
    pub a3: usize,
    /// `A1, A2, A3, A4, B1, B2`.
    pub blocks: [ColorSet; 6],
}

impl Unique4Spec {
    /// Blocks filled in ascending colour order starting at colour 1, in the
    /// order `A1, A2, A3, A4, B1, B2`.
    pub fn new(k: usize, a1: usize, a3: usize) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::Spec(format!("k = {k} must be even and at least 2")));
        }
        if 2 * a1 + 2 * a3 != k {
            return Err(Error::Spec(format!("2*{a1} + 2*{a3} != k = {k}")));
        }
        let sizes = [a1, a1, a3, a3, k / 2, k / 2];
        let mut next = 1;
        let blocks = sizes.map(|s| {
            let b = ColorSet::range(next, next + s);
            next += s;
            b
        });
        Self::with_blocks(k, blocks)
    }

    /// Explicit blocks; sizes and disjointness are validated.
    pub fn with_blocks(k: usize, blocks: [ColorSet; 6]) -> Result<Self> {
        if k < 2 || k % 2 == 1 {
            return Err(Error::Spec(format!("k = {k} must be even and at least 2")));
        }
        let [a1, a2, a3, a4, b1, b2] = blocks.map(ColorSet::len);
        if a1 != a2 || a3 != a4 || b1 != b2 || b1 != k / 2 || a1 + a2 + a3 + a4 != k {
            return Err(Error::Spec(format!(
                "block sizes {:?} do not fit k = {k}",
                [a1, a2, a3, a4, b1, b2]
            )));
        }
        let total = blocks.iter().fold(ColorSet::EMPTY, |a, &b| a.union(b));
        if total.len() != 2 * k {
            return Err(Error::Spec("colour blocks overlap".into()));
        }
        Ok(Unique4Spec { k, a1, a3, blocks })
    }

    pub fn a(&self) -> ColorSet {
        self.blocks[..4].iter().fold(ColorSet::EMPTY, |a, &b| a.union(b))
    }

    pub fn b(&self) -> ColorSet {
        self.blocks[4].union(self.blocks[5])
    }

    /// The lists prescribed by the block structure, in vertex order.
    pub fn lists(&self) -> Vec<ColorSet> {
        let [a1, a2, a3, a4, b1, b2] = self.blocks;
        let mut lists = vec![
            a1.union(a3).union(b1),
            a1.union(a4).union(b2),
            a2.union(a4).union(b1),
            a2.union(a3).union(b2),
        ];
        for _ in 2..=self.k {
            lists.push(self.a());
            lists.push(self.b());
        }
        lists
    }
}

pub fn unique4_graph(k: usize) -> Result<Graph> {
    if k < 2 {
        return Err(Error::Spec(format!("k = {k} must be at least 2")));
    }
    let sizes: Vec<usize> = std::iter::once(4).chain(std::iter::repeat_n(2, k - 1)).collect();
    Graph::multipartite(&sizes)
}

pub fn make_unique4(spec: &Unique4Spec) -> Result<(Graph, ListAssignment)> {
    let spec = Unique4Spec::with_blocks(spec.k, spec.blocks)?;
    let g = unique4_graph(spec.k)?;
    let l = ListAssignment::new(spec.lists(), spec.k)?;
    Ok((g, l))
}

/// The three bad 2-assignments of `K_{3,3}`, by how the second part's
/// private colours meet the first part's.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K33Variant {
    Disjoint,
    Overlap1,
    Overlap2,
}

impl K33Variant {
    pub const ALL: [K33Variant; 3] = [K33Variant::Disjoint, K33Variant::Overlap1, K33Variant::Overlap2];

    pub fn name(self) -> &'static str {
        match self {
            K33Variant::Disjoint => "disjoint",
            K33Variant::Overlap1 => "overlap1",
            K33Variant::Overlap2 => "overlap2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == s)
    }
}

pub fn make_k33_bad(variant: K33Variant) -> (Graph, ListAssignment) {
    // u1,v1,w1 | u2,v2,w2 with L(u1) = {1,a}, L(v1) = {1,b}, L(w1) = {c,d},
    // L(u2) = {1,c}, L(v2) = {1,d}, L(w2) = {a,b}
    let (a, b, c, d) = match variant {
        K33Variant::Disjoint => (2, 3, 4, 5),
        K33Variant::Overlap1 => (2, 3, 3, 4),
        K33Variant::Overlap2 => (2, 3, 2, 3),
    };
    let g = Graph::multipartite(&[3, 3]).expect("valid shape");
    let l = ListAssignment::from_slices(&[&[1, a], &[1, b], &[c, d], &[1, c], &[1, d], &[a, b]])
        .expect("colours in palette");
    (g, l)
}

pub fn unique3_graph(k: usize) -> Result<Graph> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::Spec(format!("k = {k} must be even")));
    }
    let sizes: Vec<usize> = std::iter::repeat_n(3, k / 2 + 1)
        .chain(std::iter::repeat_n(1, k / 2 - 1))
        .collect();
    Graph::multipartite(&sizes)
}

/// A bad assignment of `K_{3*(k/2+1),1*(k/2-1)}` with `3k/2` colours and no
/// colour common to a 3-part.
///
/// By default the colours `1..=3k/2` are split into blocks `X, Y, Z` of size
/// `k/2`; each 3-part gets `X∪Y, Y∪Z, X∪Z` and each 1-part gets `X∪Y`.
/// `part_lists` and `onepart_lists` override the leading 3-parts and 1-parts.
pub fn make_unique3(
    k: usize,
    part_lists: Option<&[[ColorSet; 3]]>,
    onepart_lists: Option<&[ColorSet]>,
) -> Result<(Graph, ListAssignment)> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Spec(format!("k = {k} must be even and at least 4")));
    }
    let g = unique3_graph(k)?;
    let h = k / 2;
    let x = ColorSet::range(1, 1 + h);
    let y = ColorSet::range(1 + h, 1 + 2 * h);
    let z = ColorSet::range(1 + 2 * h, 1 + 3 * h);
    let threes = h + 1;
    let ones = h - 1;
    let parts = part_lists.unwrap_or(&[]);
    let singles = onepart_lists.unwrap_or(&[]);
    if parts.len() > threes || singles.len() > ones {
        return Err(Error::Spec("more override lists than parts".into()));
    }
    let mut lists = Vec::with_capacity(g.n());
    for p in 0..threes {
        let triple = parts.get(p).copied().unwrap_or([x.union(y), y.union(z), x.union(z)]);
        if !triple[0].intersection(triple[1]).intersection(triple[2]).is_empty() {
            return Err(Error::Spec(format!("3-part {p} has a common colour")));
        }
        lists.extend(triple);
    }
    for p in 0..ones {
        lists.push(singles.get(p).copied().unwrap_or(x.union(y)));
    }
    if let Some(v) = lists.iter().position(|l| l.len() != k) {
        return Err(Error::Spec(format!("list of vertex {v} does not have {k} colours")));
    }
    let l = ListAssignment::new(lists, k)?;
    if l.colors().len() != 3 * h {
        return Err(Error::Spec(format!("{} colours in use, need {}", l.colors().len(), 3 * h)));
    }
    Ok((g, l))
}

/// The pairs `u_i v_j` with `2 <= i != j <= k`.
pub fn gstar_deletions(k: usize) -> Vec<(usize, usize)> {
    (2..=k)
        .flat_map(|i| (2..=k).filter(move |&j| j != i).map(move |j| (roles::u(i), roles::v(j))))
        .collect()
}

pub fn gstar_graph(k: usize) -> Result<Graph> {
    unique4_graph(k)?.delete_edges(gstar_deletions(k))
}

/// `G*` with the default structured assignment (`a1 = k/2`, `a3 = 0`).
pub fn make_gstar(k: usize) -> Result<(Graph, ListAssignment)> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::Spec(format!("k = {k} must be even and at least 4")));
    }
    let (_, l) = make_unique4(&Unique4Spec::new(k, k / 2, 0)?)?;
    Ok((gstar_graph(k)?, l))
}

/// A classification of the parts of a graph with parts of size at most 3,
/// together with the demand function `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ind3Instance {
    pub graph: Graph,
    /// Ordered singleton parts of class A.
    pub a: Vec<usize>,
    /// Ordered singleton parts of class D.
    pub d: Vec<usize>,
    pub f: Vec<u32>,
}

impl Ind3Instance {
    pub fn new(graph: Graph, a: Vec<usize>, d: Vec<usize>, f: Vec<u32>) -> Result<Self> {
        let inst = Ind3Instance { graph, a, d, f };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.graph;
        if self.f.len() != g.n() {
            return Err(Error::Classification(format!("f has {} values for {} vertices", self.f.len(), g.n())));
        }
        if let Some(s) = g.part_sizes().iter().find(|&&s| s > 3) {
            return Err(Error::Classification(format!("part of size {s}")));
        }
        let mut seen = vec![false; g.num_parts()];
        for &p in self.a.iter().chain(&self.d) {
            if p >= g.num_parts() || g.part_sizes()[p] != 1 || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Classification(format!("part {p} cannot be an A or D member")));
            }
        }
        if let Some(p) = (0..g.num_parts()).find(|&p| g.part_sizes()[p] == 1 && !seen[p]) {
            return Err(Error::Classification(format!("singleton part {p} is unclassified")));
        }
        Ok(())
    }

    fn parts_of_size(&self, s: usize) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.graph.parts().filter(move |r| r.len() == s)
    }

    pub fn counts(&self) -> Ind3Counts {
        Ind3Counts {
            k1: self.a.len() as i64,
            d: self.d.len() as i64,
            k2: self.parts_of_size(2).count() as i64,
            k3: self.parts_of_size(3).count() as i64,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ind3Counts {
    pub k1: i64,
    pub d: i64,
    pub k2: i64,
    pub k3: i64,
}

/// Evaluates the seven inequality families. A `true` result means the graph
/// is `f`-choosable.
pub fn ind3_check(inst: &Ind3Instance) -> Result<bool> {
    inst.validate()?;
    let Ind3Counts { k1, d, k2, k3 } = inst.counts();
    let f = |v: usize| inst.f[v] as i64;
    let g = &inst.graph;
    let a_ok = inst.a.iter().enumerate().all(|(i, &p)| g.part(p).all(|v| f(v) >= k2 + k3 + i as i64 + 1));
    let d_ok = inst
        .d
        .iter()
        .enumerate()
        .all(|(i, &p)| g.part(p).all(|v| f(v) >= 2 * k3 + k2 + k1 + i as i64 + 1));
    let b_ok = inst.parts_of_size(2).all(|r| {
        let (u, v) = (r.start, r.start + 1);
        f(u) >= k2 + k3 && f(v) >= k2 + k3 && f(u) + f(v) >= 3 * k3 + 2 * k2 + k1 + d
    });
    let c_ok = inst.parts_of_size(3).all(|r| {
        let vs: Vec<usize> = r.collect();
        vs.iter().all(|&v| f(v) >= k2 + k3)
            && (0..3).all(|i| (i + 1..3).all(|j| f(vs[i]) + f(vs[j]) >= 2 * k3 + 2 * k2 + k1))
            && vs.iter().map(|&v| f(v)).sum::<i64>() >= 4 * k3 + 3 * k2 + 2 * k1 + d - 1
    });
    Ok(a_ok && d_ok && b_ok && c_ok)
}

/// Searches all splits of the singleton parts into A and D. Within each
/// class the members are ordered by ascending `f`, which is optimal for the
/// position-dependent bounds.
pub fn ind3_search(g: &Graph, f: &[u32]) -> Result<Option<Ind3Instance>> {
    if let Some(s) = g.part_sizes().iter().find(|&&s| s > 3) {
        return Err(Error::Shape(format!("part of size {s}; ind3 needs parts of size at most 3")));
    }
    if f.len() != g.n() {
        return Err(Error::Classification(format!("f has {} values for {} vertices", f.len(), g.n())));
    }
    let singles: Vec<usize> = (0..g.num_parts()).filter(|&p| g.part_sizes()[p] == 1).collect();
    if singles.len() > 20 {
        return Err(Error::Resource(format!("{} singleton parts", singles.len())));
    }
    let by_f = |parts: &mut Vec<usize>| parts.sort_by_key(|&p| (f[g.part(p).start], p));
    for dmask in 0u32..1 << singles.len() {
        let (mut d, mut a): (Vec<usize>, Vec<usize>) =
            singles.iter().enumerate().map(|(i, &p)| (dmask >> i & 1 == 1, p)).fold(
                (Vec::new(), Vec::new()),
                |(mut d, mut a), (in_d, p)| {
                    if in_d {
                        d.push(p)
                    } else {
                        a.push(p)
                    }
                    (d, a)
                },
            );
        by_f(&mut a);
        by_f(&mut d);
        let inst = Ind3Instance::new(g.clone(), a, d, f.to_vec())?;
        if ind3_check(&inst)? {
            return Ok(Some(inst));
        }
    }
    Ok(None)
}

/// Residual demand `|L(v) - used|` for the surviving vertices.
fn residual(l: &ListAssignment, keep: &[usize], used: ColorSet) -> Vec<u32> {
    keep.iter().map(|&v| l.list(v).difference(used).len() as u32).collect()
}

/// The instance left after pre-colouring in the proof that
/// `K_{4,2*(k-1)} - u1u2` is `k`-choosable: `u1, u2` get a shared colour of
/// `A`, `v1, y1` a colour of `B2`, and the survivors keep
/// `f(v) = |L(v) - {c, c'}|`.
///
/// The survivors form `K_{1,1,2*(k-2)}` (parts `{x1}`, `{v2}`, then `{u_i, v_i}`);
/// the real remainder is a spanning subgraph of it.
pub fn unique4_edge_reduction(k: usize) -> Result<(Graph, Vec<u32>)> {
    let spec = Unique4Spec::new(k, k / 2, 0)?;
    let (_, l) = make_unique4(&spec)?;
    let c = l
        .list(roles::U1)
        .intersection(l.list(roles::u(2)))
        .min()
        .ok_or_else(|| Error::Spec("u1 and u2 share no colour".into()))?;
    let c2 = spec.blocks[5].min().expect("B2 is nonempty");
    let used: ColorSet = [c, c2].into_iter().collect();
    let mut keep = vec![roles::X1, roles::v(2)];
    for i in 3..=k {
        keep.extend([roles::u(i), roles::v(i)]);
    }
    let sizes: Vec<usize> = [1, 1].into_iter().chain(std::iter::repeat_n(2, k - 2)).collect();
    Ok((Graph::multipartite(&sizes)?, residual(&l, &keep, used)))
}

/// The instance left after pre-colouring in the proof that
/// `K_{3*(k/2+1),1*(k/2-1)} - u1u2` is `k`-choosable, starting from the default
/// [`make_unique3`] assignment: `u1, u2` get `c1 ∈ L(u1)∩L(u2)`, `v1, w1` get
/// `c2 ∈ L(v1)∩L(w1)` and `v2, w2` get `c3 ∈ L(v2)∩L(w2)`, with the three
/// colours distinct and the last 1-part keeping at least `k-2` colours.
pub fn unique3_edge_reduction(k: usize) -> Result<(Graph, Vec<u32>)> {
    let (g, l) = make_unique3(k, None, None)?;
    let p1 = g.part(0);
    let p2 = g.part(1);
    let (u1, v1, w1) = (p1.start, p1.start + 1, p1.start + 2);
    let (u2, v2, w2) = (p2.start, p2.start + 1, p2.start + 2);
    let a1 = l.list(u1).intersection(l.list(u2));
    let a2 = l.list(v1).intersection(l.list(w1));
    let a3 = l.list(v2).intersection(l.list(w2));
    let last = g.n() - 1;
    let choice = a1
        .iter()
        .flat_map(|c1| a2.iter().flat_map(move |c2| a3.iter().map(move |c3| (c1, c2, c3))))
        .find(|&(c1, c2, c3)| {
            c1 != c2 && c2 != c3 && c1 != c3 && {
                let used: ColorSet = [c1, c2, c3].into_iter().collect();
                l.list(last).difference(used).len() + 2 >= k
            }
        })
        .ok_or_else(|| Error::Spec("no admissible pre-colouring".into()))?;
    let used: ColorSet = [choice.0, choice.1, choice.2].into_iter().collect();
    let keep: Vec<usize> = (p2.end..g.n()).collect();
    let rest = &g.part_sizes()[2..];
    Ok((Graph::multipartite(rest)?, residual(&l, &keep, used)))
}
