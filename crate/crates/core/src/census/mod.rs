//! Exhaustive and sampled verification runs.
//!
//! Every run produces a [`CensusReport`]. Expectations that follow from the
//! characterization theorems are checked as the run proceeds; a failure is
//! recorded in [`CensusReport::violations`] and signals a defect in the
//! solvers or generators.

mod patterns;
mod recognize;
mod sample;

pub use patterns::{
    enumerate_patterns, k_subsets, unique3_forward_assignments, unique4_labelings, Constraints,
    IncidencePattern, UNBOUNDED_INCIDENCE_LIMIT,
};
pub use recognize::{
    condition_match_unique3, structure_match_unique4, unique3_witness, StructureWitness, Unique4Witness,
};
pub use sample::{sample_converse, Profile};

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rayon::prelude::*;

use crate::constructions::{make_k33_bad, make_unique4, K33Variant};
use crate::graph::{permutations, Graph};
use crate::lists::{assignment_stats, filter_unchecked, CanonicalForm, Canonicalizer, ListAssignment, TargetShape};
use crate::solver::{solve_by_partitions, solve_generic, verify_non_colorability, PartitionVerdict};
use crate::{Error, Result};

/// One isomorphism class of bad assignments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub form: CanonicalForm,
    /// Enumerated assignments falling in this class.
    pub count: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub name: String,
    pub shape: Vec<usize>,
    pub k: usize,
    pub constraints: String,
    pub total: usize,
    pub bad: usize,
    /// Sorted by canonical form.
    pub classes: Vec<ClassRecord>,
    /// Run-specific counts, in insertion order.
    pub details: Vec<(String, String)>,
    /// Theorem-violation alerts.
    pub violations: Vec<String>,
    pub seed: Option<u64>,
    pub wall_ms: u64,
}

impl CensusReport {
    fn new(name: &str, g: &Graph, k: usize, constraints: String) -> Self {
        CensusReport {
            name: name.into(),
            shape: g.part_sizes().to_vec(),
            k,
            constraints,
            total: 0,
            bad: 0,
            classes: Vec::new(),
            details: Vec::new(),
            violations: Vec::new(),
            seed: None,
            wall_ms: 0,
        }
    }

    pub fn iso_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn detail(&self, key: &str) -> Option<&str> {
        self.details.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn push_detail(&mut self, key: &str, value: impl ToString) {
        self.details.push((key.into(), value.to_string()));
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Colourability by the partition sweep when it applies, else backtracking.
pub(crate) fn is_colorable(g: &Graph, l: &ListAssignment) -> Result<bool> {
    if g.is_complete_multipartite() && g.part_sizes().iter().all(|&s| s <= 4) {
        Ok(solve_by_partitions(g, l)?.is_colorable())
    } else {
        Ok(solve_generic(g, l)?.is_some())
    }
}

/// Structure witness for whichever target shape `g` has.
pub(crate) fn witness_for(g: &Graph, l: &ListAssignment) -> Result<Option<StructureWitness>> {
    match TargetShape::detect(g.part_sizes()) {
        Some(TargetShape::FourTwos { .. }) if g.is_complete_multipartite() => structure_match_unique4(g, l),
        Some(TargetShape::ThreesOnes { .. }) if g.is_complete_multipartite() => unique3_witness(g, l),
        _ => Ok(None),
    }
}

/// Outcome of classifying one assignment.
struct Classified {
    form: CanonicalForm,
    witness: Option<String>,
    alerts: Vec<String>,
}

fn collect_classes(items: Vec<Classified>, report: &mut CensusReport) {
    let mut classes: BTreeMap<CanonicalForm, ClassRecord> = BTreeMap::new();
    for c in items {
        report.bad += 1;
        report.violations.extend(c.alerts);
        classes
            .entry(c.form.clone())
            .or_insert_with(|| ClassRecord {
                form: c.form,
                count: 0,
                witness: c.witness,
            })
            .count += 1;
    }
    report.classes = classes.into_values().collect();
}

/// Classifies every enumerated pattern; bad ones are canonicalized and
/// matched against the structure recognizers. On the target shapes every
/// bad assignment must also pass the necessary badness filter.
pub fn run_census(g: &Graph, k: usize, constraints: &Constraints) -> Result<CensusReport> {
    let start = Instant::now();
    let patterns = enumerate_patterns(g, &vec![k; g.n()], constraints)?;
    let mut report = CensusReport::new("census", g, k, constraints.describe());
    report.total = patterns.len();
    let canon = Canonicalizer::new(g);
    let target = TargetShape::detect(g.part_sizes()).is_some() && g.is_complete_multipartite();
    let bad: Vec<Classified> = patterns
        .par_iter()
        .map(|p| -> Result<Option<Classified>> {
            let l = p.to_assignment(g.n(), k);
            if is_colorable(g, &l)? {
                return Ok(None);
            }
            let mut alerts = Vec::new();
            if target {
                if let crate::lists::FilterVerdict::Fail(r) = filter_unchecked(g, &l) {
                    alerts.push(format!("bad assignment fails the necessary filter: {r}"));
                }
            }
            Ok(Some(Classified {
                form: canon.canonicalize(&l)?,
                witness: witness_for(g, &l)?.map(|w| w.to_string()),
                alerts,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    collect_classes(bad, &mut report);
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Bad 2-assignments of `K_{3,3}`.
///
/// The full sweep bounds the palette only by `n*k = 12`. A second pass with
/// `|C| <= 5` must find the same classes, and every bad assignment of the
/// full sweep must use at most 5 colours. The classes must coincide with the
/// three constructed variants.
pub fn census_k33() -> Result<CensusReport> {
    let start = Instant::now();
    let g = Graph::multipartite(&[3, 3])?;
    let full = run_census(&g, 2, &Constraints { max_colors: Some(12), ..Constraints::none() })?;
    let bounded = run_census(&g, 2, &Constraints { max_colors: Some(5), ..Constraints::none() })?;
    let mut report = CensusReport::new("k33", &g, 2, full.constraints.clone());
    report.total = full.total;
    report.bad = full.bad;
    report.classes = full.classes.clone();
    report.violations = full.violations.clone();
    report.push_detail("patterns_bounded_colors_le_5", bounded.total);
    report.push_detail("bad_bounded_colors_le_5", bounded.bad);

    let forms = |r: &CensusReport| r.classes.iter().map(|c| c.form.clone()).collect::<BTreeSet<_>>();
    if forms(&full) != forms(&bounded) || full.bad != bounded.bad {
        report.violations.push("the |C| <= 5 pass disagrees with the full sweep".into());
    }
    let canon = Canonicalizer::new(&g);
    let expected: BTreeSet<CanonicalForm> = K33Variant::ALL
        .iter()
        .map(|&v| canon.canonicalize(&make_k33_bad(v).1))
        .collect::<Result<_>>()?;
    let matches = forms(&full) == expected;
    report.push_detail("matches_constructed_variants", matches);
    if !matches {
        report
            .violations
            .push(format!("{} bad classes found; expected the 3 constructed variants", full.iso_classes()));
    }
    // largest palette among bad assignments, from the full sweep
    let patterns = enumerate_patterns(&g, &[2; 6], &Constraints { max_colors: Some(12), ..Constraints::none() })?;
    let max_bad_colors = patterns
        .par_iter()
        .filter(|p| !is_colorable(&g, &p.to_assignment(6, 2)).unwrap_or(true))
        .map(|p| p.num_colors())
        .max()
        .unwrap_or(0);
    report.push_detail("max_colors_in_bad", max_bad_colors);
    if max_bad_colors >= 6 {
        report.violations.push(format!("bad assignment with {max_bad_colors} colours"));
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Every raw assignment of `K_{3*(k/2+1),1*(k/2-1)}` with `3k/2` colours and no
/// common colour on a 3-part must be bad, carry a verified certificate, and
/// have `t_P = k/2` on each 3-part.
pub fn census_unique3_forward(k: usize) -> Result<CensusReport> {
    let start = Instant::now();
    let (g, all) = unique3_forward_assignments(k)?;
    let constraints = format!("exact-k,colors={},empty-3-part-intersections", 3 * k / 2);
    let mut report = CensusReport::new("unique3-forward", &g, k, constraints);
    report.total = all.len();
    let canon = Canonicalizer::new(&g);
    let results: Vec<Result<(Option<Classified>, usize)>> = all
        .par_iter()
        .map(|l| {
            let verdict = solve_by_partitions(&g, l)?;
            let PartitionVerdict::NotColorable(nc) = verdict else {
                return Ok((None, 0));
            };
            let mut alerts = Vec::new();
            if let Err(e) = verify_non_colorability(&g, l, &nc) {
                alerts.push(format!("certificate rejected: {e}"));
            }
            let stats = assignment_stats(&g, l)?;
            for (p, s) in stats.parts.iter().enumerate() {
                if let Some(t) = s.t {
                    if t != k / 2 {
                        alerts.push(format!("part {p} has t_P = {t}, expected {}", k / 2));
                    }
                }
            }
            if let crate::lists::FilterVerdict::Fail(r) = filter_unchecked(&g, l) {
                alerts.push(format!("bad assignment fails the necessary filter: {r}"));
            }
            Ok((
                Some(Classified {
                    form: canon.canonicalize(l)?,
                    witness: witness_for(&g, l)?.map(|w| w.to_string()),
                    alerts,
                }),
                nc.violators.len(),
            ))
        })
        .collect();
    let mut bad = Vec::new();
    let mut certificate_sizes = BTreeSet::new();
    for r in results {
        let (c, size) = r?;
        match c {
            Some(c) => {
                certificate_sizes.insert(size);
                bad.push(c);
            }
            None => report.violations.push("colourable assignment in the forward family".into()),
        }
    }
    collect_classes(bad, &mut report);
    report.push_detail(
        "violators_per_certificate",
        certificate_sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(","),
    );
    report.push_detail("certificates_verified", report.bad);
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Every block labelling of every split must be bad by backtracking and
/// recognized by the structure matcher.
pub fn census_unique4_forward(k: usize) -> Result<CensusReport> {
    let start = Instant::now();
    let specs = unique4_labelings(k)?;
    let g = crate::constructions::unique4_graph(k)?;
    let constraints = "structured,all-splits,all-block-labelings".to_string();
    let mut report = CensusReport::new("unique4-forward", &g, k, constraints);
    report.total = specs.len();
    let canon = Canonicalizer::new(&g);
    let results: Vec<Result<Option<Classified>>> = specs
        .par_iter()
        .map(|spec| {
            let (_, l) = make_unique4(spec)?;
            if solve_generic(&g, &l)?.is_some() {
                return Ok(None);
            }
            let witness = structure_match_unique4(&g, &l)?;
            let mut alerts = Vec::new();
            if witness.is_none() {
                alerts.push("structured assignment not recognized".into());
            }
            if let crate::lists::FilterVerdict::Fail(r) = filter_unchecked(&g, &l) {
                alerts.push(format!("bad assignment fails the necessary filter: {r}"));
            }
            Ok(Some(Classified {
                form: canon.canonicalize(&l)?,
                witness: witness.map(|w| w.to_string()),
                alerts,
            }))
        })
        .collect();
    let mut bad = Vec::new();
    for r in results {
        match r? {
            Some(c) => bad.push(c),
            None => report.violations.push("colourable structured assignment".into()),
        }
    }
    collect_classes(bad, &mut report);
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Choosability {
    Choosable { patterns: usize },
    Bad(ListAssignment),
}

impl Choosability {
    pub fn is_choosable(&self) -> bool {
        matches!(self, Choosability::Choosable { .. })
    }
}

/// Largest `n*k` accepted by [`choosability_census`].
pub const CHOOSABILITY_INCIDENCE_LIMIT: usize = 12;

/// Decides `k`-choosability by sweeping every exact-`k` incidence pattern.
pub fn choosability_census(g: &Graph, k: usize) -> Result<Choosability> {
    if g.n() * k > CHOOSABILITY_INCIDENCE_LIMIT {
        return Err(Error::Resource(format!(
            "n*k = {} exceeds the exhaustive limit of {CHOOSABILITY_INCIDENCE_LIMIT}",
            g.n() * k
        )));
    }
    f_choosability_census(g, &vec![k; g.n()])
}

/// `f`-choosability by a full sweep over incidence patterns with
/// `|L(v)| = f(v)`. Shrinking lists only makes colouring harder, so exact
/// sizes suffice.
pub fn f_choosability_census(g: &Graph, f: &[usize]) -> Result<Choosability> {
    let patterns = enumerate_patterns(g, f, &Constraints::none())?;
    first_bad(g, f, &patterns)
}

fn first_bad(g: &Graph, f: &[usize], patterns: &[IncidencePattern]) -> Result<Choosability> {
    let k = f.iter().copied().min().unwrap_or(0);
    let found = patterns
        .par_iter()
        .map(|p| {
            let l = p.to_assignment(g.n(), k);
            Ok((!is_colorable(g, &l)?).then_some(l))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    Ok(match found {
        Some(l) => Choosability::Bad(l),
        None => Choosability::Choosable { patterns: patterns.len() },
    })
}

/// Canonical key of a graph under all vertex permutations.
pub fn graph_canonical_key(g: &Graph, perms: &[Vec<usize>]) -> Vec<u32> {
    perms
        .iter()
        .map(|p| {
            let perm: Vec<u8> = p.iter().map(|&x| x as u8).collect();
            let mut rows = vec![0u32; g.n()];
            for v in 0..g.n() {
                rows[perm[v] as usize] = Graph::permute_mask(&perm, g.neighbors(v));
            }
            rows
        })
        .min()
        .unwrap_or_default()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphClass {
    pub graph: Graph,
    /// A bad `k`-assignment, when the subgraph is not `k`-choosable.
    pub witness: Option<ListAssignment>,
}

/// Every proper spanning subgraph of `shell`, up to graph isomorphism, with
/// its `k`-choosability decided by a full pattern sweep.
pub fn proper_subgraph_census(shell: &Graph, k: usize) -> Result<Vec<SubgraphClass>> {
    let n = shell.n();
    if n > 8 || n * k > CHOOSABILITY_INCIDENCE_LIMIT {
        return Err(Error::Resource(format!("subgraph census limited to 8 vertices and n*k <= 12, got n = {n}")));
    }
    let edges: Vec<(usize, usize)> = shell.edges().collect();
    let perms = permutations(n);
    let mut reps: BTreeMap<Vec<u32>, Graph> = BTreeMap::new();
    for mask in 1u32..1 << edges.len() {
        let del = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
        let h = shell.delete_edges(del)?;
        reps.entry(graph_canonical_key(&h, &perms)).or_insert(h);
    }
    let patterns = enumerate_patterns(shell, &vec![k; n], &Constraints::none())?;
    let f = vec![k; n];
    reps.into_values()
        .map(|h| {
            let witness = match first_bad(&h, &f, &patterns)? {
                Choosability::Bad(l) => Some(l),
                Choosability::Choosable { .. } => None,
            };
            Ok(SubgraphClass { graph: h, witness })
        })
        .collect()
}

/// The proper-subgraph census of `K_{3,3}` at `k = 2` as a report: exactly
/// two classes must fail to be 2-choosable.
pub fn census_subgraphs_k33() -> Result<CensusReport> {
    let start = Instant::now();
    let shell = Graph::multipartite(&[3, 3])?;
    let classes = proper_subgraph_census(&shell, 2)?;
    let mut report = CensusReport::new("subgraphs-k33", &shell, 2, "proper-spanning-subgraphs,exact-k".into());
    report.total = classes.len();
    let perms = permutations(shell.n());
    for c in classes.iter().filter(|c| c.witness.is_some()) {
        report.bad += 1;
        let key = graph_canonical_key(&c.graph, &perms);
        let bytes: Vec<u8> = key.iter().map(|&r| r as u8).collect();
        let deleted: Vec<String> = c.graph.deleted().iter().map(|(u, v)| format!("{u}-{v}")).collect();
        report.classes.push(ClassRecord {
            form: CanonicalForm::from_hex(&bytes.iter().map(|b| format!("{b:02x}")).collect::<String>())
                .expect("hex"),
            count: 1,
            witness: Some(format!("deleted={}", deleted.join(","))),
        });
    }
    report.classes.sort_by(|a, b| a.form.cmp(&b.form));
    if report.bad != 2 {
        report
            .violations
            .push(format!("{} non-2-choosable proper subgraphs, expected 2", report.bad));
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
