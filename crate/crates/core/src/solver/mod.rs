//! Deciding `L`-colourability with certificates.
//!
//! Two independent routes are provided: [`solve_generic`], a deterministic
//! backtracking search that works for any subgraph of a multipartite shell,
//! and [`solve_by_partitions`], which for complete multipartite graphs sweeps
//! every within-part grouping, contracts it and asks for a covering matching
//! of the contracted lists.

mod generic;
mod matching;
mod partitions;
mod verify;

pub use generic::{solve_generic, MAX_SEARCH_VERTICES};
pub use matching::{hall_or_matching, max_matching, BipartiteIncidence, HallOutcome, HallViolator};
pub use partitions::{
    contract, grouping_count, set_partitions, solve_by_partitions, Contraction, GroupingViolator,
    PartitionVerdict,
};
pub use verify::{verify_coloring, verify_non_colorability};

use crate::graph::Graph;
use crate::lists::ListAssignment;
use crate::Result;

/// A colour per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<u8>);

impl Coloring {
    pub fn color(&self, v: usize) -> usize {
        self.0[v] as usize
    }
}

/// Every within-part grouping of a complete multipartite graph paired with a
/// Hall violator of its contraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonColorability {
    pub violators: Vec<GroupingViolator>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Coloring(Coloring),
    NonColorability(NonColorability),
    /// Non-colourability established by exhausting the backtracking search.
    /// Carries no compact witness.
    Exhaustive,
}

impl Certificate {
    pub fn is_colorable(&self) -> bool {
        matches!(self, Certificate::Coloring(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    Generic,
    Partitions,
    /// Run both and insist they agree.
    #[default]
    Both,
}

/// Decides colourability, preferring the partition method (which yields a
/// compact certificate) whenever the graph is complete multipartite.
pub fn solve(g: &Graph, l: &ListAssignment, method: Method) -> Result<Certificate> {
    let partitions_ok = g.is_complete_multipartite() && g.part_sizes().iter().all(|&s| s <= 4);
    match method {
        Method::Generic => Ok(match solve_generic(g, l)? {
            Some(c) => Certificate::Coloring(c),
            None => Certificate::Exhaustive,
        }),
        Method::Partitions => Ok(solve_by_partitions(g, l)?.into()),
        Method::Both => {
            let generic = solve_generic(g, l)?;
            if !partitions_ok {
                return Ok(match generic {
                    Some(c) => Certificate::Coloring(c),
                    None => Certificate::Exhaustive,
                });
            }
            let by_parts = solve_by_partitions(g, l)?;
            match (generic, by_parts) {
                (Some(_), PartitionVerdict::Colorable(c)) => Ok(Certificate::Coloring(c)),
                (None, PartitionVerdict::NotColorable(nc)) => Ok(Certificate::NonColorability(nc)),
                (g_ans, _) => Err(crate::Error::Inconsistent(format!(
                    "solvers disagree: backtracking says {}",
                    if g_ans.is_some() { "colourable" } else { "not colourable" }
                ))),
            }
        }
    }
}

impl From<PartitionVerdict> for Certificate {
    fn from(v: PartitionVerdict) -> Self {
        match v {
            PartitionVerdict::Colorable(c) => Certificate::Coloring(c),
            PartitionVerdict::NotColorable(nc) => Certificate::NonColorability(nc),
        }
    }
}
