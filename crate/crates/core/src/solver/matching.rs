use crate::lists::ColorSet;

/// Bipartite graph between contracted vertices (left) and colours (right);
/// left vertex `i` is joined to the colours of `left[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteIncidence {
    pub left: Vec<ColorSet>,
}

impl BipartiteIncidence {
    pub fn new(left: Vec<ColorSet>) -> Self {
        BipartiteIncidence { left }
    }

    /// Neighbourhood of a set of left vertices.
    pub fn neighborhood(&self, xs: &[usize]) -> ColorSet {
        xs.iter().fold(ColorSet::EMPTY, |a, &i| a.union(self.left[i]))
    }
}

/// A set of left vertices with more members than neighbours.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallViolator {
    pub left: Vec<usize>,
    pub colors: ColorSet,
}

impl HallViolator {
    pub fn deficiency(&self) -> usize {
        self.left.len().saturating_sub(self.colors.len())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HallOutcome {
    /// `matching[i]` is the colour matched to left vertex `i`.
    Matching(Vec<u8>),
    Violator(HallViolator),
}

/// Maximum matching by augmenting paths. Returns the matched colour of each
/// left vertex.
pub fn max_matching(b: &BipartiteIncidence) -> Vec<Option<u8>> {
    let mut left_to: Vec<Option<u8>> = vec![None; b.left.len()];
    let mut color_to: [Option<u16>; 64] = [None; 64];
    for i in 0..b.left.len() {
        let mut visited = 0u64;
        augment(b, i, &mut visited, &mut left_to, &mut color_to);
    }
    left_to
}

fn augment(
    b: &BipartiteIncidence,
    i: usize,
    visited: &mut u64,
    left_to: &mut [Option<u8>],
    color_to: &mut [Option<u16>; 64],
) -> bool {
    let mut options = b.left[i].0 & !*visited;
    while options != 0 {
        let c = options.trailing_zeros() as usize;
        options &= options - 1;
        if *visited >> c & 1 == 1 {
            continue;
        }
        *visited |= 1 << c;
        let free = match color_to[c] {
            None => true,
            Some(j) => augment(b, j as usize, visited, left_to, color_to),
        };
        if free {
            color_to[c] = Some(i as u16);
            left_to[i] = Some(c as u8);
            return true;
        }
    }
    false
}

/// Either a matching saturating the left side or a Hall violator.
///
/// The violator is the largest left set attaining the maximum deficiency:
/// everything except the left vertices reachable by alternating paths from
/// unmatched colours.
pub fn hall_or_matching(b: &BipartiteIncidence) -> HallOutcome {
    let left_to = max_matching(b);
    if left_to.iter().all(Option::is_some) {
        return HallOutcome::Matching(left_to.into_iter().map(Option::unwrap).collect());
    }
    let mut color_to: [Option<usize>; 64] = [None; 64];
    for (i, c) in left_to.iter().enumerate() {
        if let Some(c) = c {
            color_to[*c as usize] = Some(i);
        }
    }
    let all = b.left.iter().fold(0u64, |a, l| a | l.0);
    // colours reached by alternating paths from unmatched colours; from a
    // colour we step to any left neighbour, then along that vertex's
    // matching edge
    let mut reached_colors = all & !(0..64).filter(|&c| color_to[c].is_some()).fold(0u64, |a, c| a | 1 << c);
    let mut reached_left = vec![false; b.left.len()];
    loop {
        let mut grew = false;
        for (i, l) in b.left.iter().enumerate() {
            if !reached_left[i] && l.0 & reached_colors != 0 {
                reached_left[i] = true;
                grew = true;
                if let Some(c) = left_to[i] {
                    reached_colors |= 1 << c;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let left: Vec<usize> = (0..b.left.len()).filter(|&i| !reached_left[i]).collect();
    let colors = b.neighborhood(&left);
    HallOutcome::Violator(HallViolator { left, colors })
}
