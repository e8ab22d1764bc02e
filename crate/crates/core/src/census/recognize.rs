//! Recognizers for the characterized bad-assignment structures.

use std::fmt;

use crate::constructions::{roles, Unique4Spec};
use crate::graph::{permutations, Graph};
use crate::lists::{ColorSet, ListAssignment, TargetShape};
use crate::{Error, Result};

/// The named partition behind a bad assignment of `K_{4,2*(k-1)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unique4Witness {
    /// Vertices playing `u1, v1, x1, y1`.
    pub roles: [usize; 4],
    /// `(u_i, v_i)` for each 2-part, in part order.
    pub pairs: Vec<(usize, usize)>,
    /// `A1, A2, A3, A4, B1, B2`.
    pub blocks: [ColorSet; 6],
}

impl Unique4Witness {
    pub fn a1(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn a3(&self) -> usize {
        self.blocks[2].len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureWitness {
    Unique4(Unique4Witness),
    /// `|C| = 3k/2` and no 3-part has a common colour.
    Unique3 { colors: usize, k: usize },
}

fn fmt_set(s: ColorSet) -> String {
    if s.is_empty() {
        return "-".into();
    }
    s.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for StructureWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureWitness::Unique4(w) => {
                let names = ["A1", "A2", "A3", "A4", "B1", "B2"];
                write!(
                    f,
                    "unique4 roles={},{},{},{}",
                    w.roles[0], w.roles[1], w.roles[2], w.roles[3]
                )?;
                for (n, b) in names.iter().zip(w.blocks) {
                    write!(f, " {n}={}", fmt_set(b))?;
                }
                Ok(())
            }
            StructureWitness::Unique3 { colors, k } => write!(f, "unique3 colors={colors} k={k} triples=empty"),
        }
    }
}

fn expect_shape(g: &Graph, want: fn(TargetShape) -> bool, name: &str) -> Result<usize> {
    match TargetShape::detect(g.part_sizes()) {
        Some(s) if want(s) && g.is_complete_multipartite() => Ok(s.k()),
        _ => Err(Error::Shape(format!("{:?} is not {name}", g.part_sizes()))),
    }
}

/// Searches role assignments, 2-part orientations and the `A`/`B` swap for
/// a block structure reproducing `l` exactly.
pub fn structure_match_unique4(g: &Graph, l: &ListAssignment) -> Result<Option<StructureWitness>> {
    let k = expect_shape(g, |s| matches!(s, TargetShape::FourTwos { .. }), "K_{4,2*(k-1)}")?;
    l.check_covers(g)?;
    if (0..g.n()).any(|v| l.list(v).len() != k) {
        return Ok(None);
    }
    let first = g.part(1);
    for swap in [false, true] {
        let (a, b) = if swap {
            (l.list(first.start + 1), l.list(first.start))
        } else {
            (l.list(first.start), l.list(first.start + 1))
        };
        if !a.is_disjoint(b) {
            continue;
        }
        // orient every 2-part so that its `u` side carries A
        let mut pairs = Vec::with_capacity(k - 1);
        for p in 1..g.num_parts() {
            let r = g.part(p);
            let (x, y) = (r.start, r.start + 1);
            if l.list(x) == a && l.list(y) == b {
                pairs.push((x, y));
            } else if l.list(y) == a && l.list(x) == b {
                pairs.push((y, x));
            } else {
                break;
            }
        }
        if pairs.len() != k - 1 {
            continue;
        }
        for perm in permutations(4) {
            let roles = [perm[0], perm[1], perm[2], perm[3]];
            let lu = |r: usize| l.list(roles[r]);
            let blocks = [
                lu(0).intersection(lu(1)).intersection(a),
                lu(2).intersection(lu(3)).intersection(a),
                lu(0).intersection(lu(3)).intersection(a),
                lu(1).intersection(lu(2)).intersection(a),
                lu(0).intersection(lu(2)).intersection(b),
                lu(1).intersection(lu(3)).intersection(b),
            ];
            let Ok(spec) = Unique4Spec::with_blocks(k, blocks) else {
                continue;
            };
            if spec.a() != a || spec.b() != b {
                continue;
            }
            let want = spec.lists();
            let p1_ok = [roles::U1, roles::V1, roles::X1, roles::Y1]
                .iter()
                .all(|&r| want[r] == l.list(roles[r]));
            if p1_ok {
                return Ok(Some(StructureWitness::Unique4(Unique4Witness { roles, pairs, blocks })));
            }
        }
    }
    Ok(None)
}

/// `|C| = 3k/2` and every 3-part has an empty common intersection.
pub fn condition_match_unique3(g: &Graph, l: &ListAssignment) -> Result<bool> {
    let k = expect_shape(g, |s| matches!(s, TargetShape::ThreesOnes { .. }), "K_{3*(k/2+1),1*(k/2-1)}")?;
    l.check_covers(g)?;
    if l.colors().len() * 2 != 3 * k {
        return Ok(false);
    }
    Ok(g
        .parts()
        .filter(|r| r.len() == 3)
        .all(|r| r.fold(ColorSet(u64::MAX), |acc, v| acc.intersection(l.list(v))).is_empty()))
}

pub fn unique3_witness(g: &Graph, l: &ListAssignment) -> Result<Option<StructureWitness>> {
    let k = expect_shape(g, |s| matches!(s, TargetShape::ThreesOnes { .. }), "K_{3*(k/2+1),1*(k/2-1)}")?;
    Ok(condition_match_unique3(g, l)?.then(|| StructureWitness::Unique3 { colors: l.colors().len(), k }))
}
