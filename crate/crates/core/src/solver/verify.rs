//! Re-checks certificates from scratch, sharing no code with the solvers
//! beyond the graph and list types.

use std::collections::BTreeSet;

use crate::graph::Graph;
use crate::lists::{ColorSet, ListAssignment};
use crate::solver::{Coloring, NonColorability};
use crate::{Error, Result};

pub fn verify_coloring(g: &Graph, l: &ListAssignment, c: &Coloring) -> Result<()> {
    if c.0.len() != g.n() || l.len() != g.n() {
        return Err(Error::Invalid("colouring length does not match the graph".into()));
    }
    for v in 0..g.n() {
        if !l.list(v).contains(c.color(v)) {
            return Err(Error::Invalid(format!("vertex {v} coloured {} outside its list", c.color(v))));
        }
    }
    for (u, v) in g.edges() {
        if c.0[u] == c.0[v] {
            return Err(Error::Invalid(format!("edge ({u}, {v}) is monochromatic")));
        }
    }
    Ok(())
}

fn valid_rgs(rgs: &[u8], len: usize) -> bool {
    if rgs.len() != len {
        return false;
    }
    let mut max = -1i32;
    for &x in rgs {
        if x as i32 > max + 1 {
            return false;
        }
        max = max.max(x as i32);
    }
    true
}

fn bell(n: usize) -> usize {
    // Bell triangle
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

/// Checks that the bundle covers every grouping exactly once and that each
/// recorded violator really has more classes than colours.
pub fn verify_non_colorability(g: &Graph, l: &ListAssignment, nc: &NonColorability) -> Result<()> {
    if !g.is_complete_multipartite() || l.len() != g.n() {
        return Err(Error::Invalid("bundle certificates need a complete multipartite graph".into()));
    }
    let expected: usize = g.part_sizes().iter().map(|&s| bell(s)).product();
    let mut seen = BTreeSet::new();
    for (idx, entry) in nc.violators.iter().enumerate() {
        let fail = |msg: String| Err(Error::Invalid(format!("violator {idx}: {msg}")));
        if entry.grouping.len() != g.num_parts() {
            return fail("grouping has the wrong number of parts".into());
        }
        let mut classes = BTreeSet::new();
        for (p, rgs) in entry.grouping.iter().enumerate() {
            let range = g.part(p);
            if !valid_rgs(rgs, range.len()) {
                return fail(format!("bad grouping string {rgs:?} for part {p}"));
            }
            for block in 0..=rgs.iter().copied().max().unwrap_or(0) {
                let mask = range
                    .clone()
                    .zip(rgs)
                    .filter(|(_, &b)| b == block)
                    .fold(0u32, |m, (v, _)| m | 1 << v);
                classes.insert(mask);
            }
        }
        if !seen.insert(entry.grouping.clone()) {
            return fail("grouping repeated".into());
        }
        let mut used = BTreeSet::new();
        let mut union = ColorSet::EMPTY;
        for &m in &entry.classes {
            if !classes.contains(&m) || !used.insert(m) {
                return fail(format!("class {m:#x} is not a distinct class of the grouping"));
            }
            let mut list = ColorSet(u64::MAX);
            for v in 0..g.n() {
                if m >> v & 1 == 1 {
                    list = list.intersection(l.list(v));
                }
            }
            union = union.union(list);
        }
        if union != entry.colors {
            return fail(format!("recorded colours {:?} differ from recomputed {:?}", entry.colors, union));
        }
        if entry.classes.len() <= union.len() {
            return fail(format!("{} classes but {} colours", entry.classes.len(), union.len()));
        }
    }
    if seen.len() != expected {
        return Err(Error::Invalid(format!("{} groupings covered, {expected} required", seen.len())));
    }
    Ok(())
}
