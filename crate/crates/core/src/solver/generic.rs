use crate::graph::Graph;
use crate::lists::ListAssignment;
use crate::solver::Coloring;
use crate::{Error, Result};

pub const MAX_SEARCH_VERTICES: usize = 16;

/// Backtracking over vertices in part-major order and colours in ascending
/// order, with forward checking on later neighbours.
///
/// Returns the first proper `L`-colouring in that order, or `None`.
pub fn solve_generic(g: &Graph, l: &ListAssignment) -> Result<Option<Coloring>> {
    l.check_covers(g)?;
    let n = g.n();
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::Resource(format!(
            "backtracking is limited to {MAX_SEARCH_VERTICES} vertices, got {n}"
        )));
    }
    let mut domains = [0u64; MAX_SEARCH_VERTICES];
    for (v, d) in domains.iter_mut().enumerate().take(n) {
        *d = l.list(v).0;
    }
    if domains[..n].contains(&0) {
        return Ok(None);
    }
    let mut colors = vec![0u8; n];
    Ok(search(g, 0, &domains, &mut colors).then(|| Coloring(colors)))
}

fn search(g: &Graph, v: usize, domains: &[u64; MAX_SEARCH_VERTICES], colors: &mut [u8]) -> bool {
    let n = colors.len();
    if v == n {
        return true;
    }
    // only later neighbours need pruning
    let later = g.neighbors(v) & !((2u32 << v) - 1);
    let mut options = domains[v];
    while options != 0 {
        let c = options.trailing_zeros();
        options &= options - 1;
        let bit = 1u64 << c;
        let mut next = *domains;
        let mut ok = true;
        let mut m = later;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            next[w] &= !bit;
            if next[w] == 0 {
                ok = false;
                break;
            }
        }
        if ok {
            colors[v] = c as u8;
            if search(g, v + 1, &next, colors) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{make_k33_bad, K33Variant};
    use crate::solver::verify_coloring;

    #[test]
    fn k2_two_colours() {
        let g = Graph::multipartite(&[1, 1]).unwrap();
        let l = ListAssignment::from_slices(&[&[1, 2], &[1, 2]]).unwrap();
        assert_eq!(solve_generic(&g, &l).unwrap(), Some(Coloring(vec![1, 2])));
    }

    #[test]
    fn k33_variants_are_bad() {
        for v in K33Variant::ALL {
            let (g, l) = make_k33_bad(v);
            assert_eq!(solve_generic(&g, &l).unwrap(), None, "{v:?}");
        }
    }

    #[test]
    fn empty_list_is_uncolourable() {
        let g = Graph::multipartite(&[1, 1]).unwrap();
        let l = ListAssignment::from_lists(vec![Default::default(), [0].into_iter().collect()]);
        assert_eq!(solve_generic(&g, &l).unwrap(), None);
    }

    #[test]
    fn size_guard() {
        let g = Graph::multipartite(&[17]).unwrap();
        let l = ListAssignment::from_lists(vec![[0].into_iter().collect(); 17]);
        assert!(matches!(solve_generic(&g, &l), Err(Error::Resource(_))));
    }

    #[test]
    fn colouring_respects_deletions() {
        // K_{1,1,1} minus one edge: two vertices may now share colour 0
        let g = Graph::multipartite(&[1, 1, 1]).unwrap().delete_edges([(0, 2)]).unwrap();
        let l = ListAssignment::from_slices(&[&[0], &[1], &[0]]).unwrap();
        let c = solve_generic(&g, &l).unwrap().unwrap();
        verify_coloring(&g, &l, &c).unwrap();
    }
}
