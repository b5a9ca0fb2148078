//! Small exact-cover solver (Knuth's Algorithm X without dancing links).
//!
//! Column choice is deterministic: the uncovered element with the fewest
//! candidate sets, ties broken by lowest index; candidates are tried in
//! index order.

/// Exact covers of `0..universe` by the given sets, in search order, up to `limit`.
pub fn exact_covers(universe: usize, sets: &[Vec<usize>], limit: usize) -> Vec<Vec<usize>> {
    let mut by_elem: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for (i, s) in sets.iter().enumerate() {
        for &e in s {
            by_elem[e].push(i);
        }
    }
    let mut state = Search {
        sets,
        by_elem,
        covered: vec![false; universe],
        blocked: vec![0u32; sets.len()],
        chosen: Vec::new(),
        out: Vec::new(),
        limit,
    };
    state.run();
    state.out
}

pub fn first_exact_cover(universe: usize, sets: &[Vec<usize>]) -> Option<Vec<usize>> {
    exact_covers(universe, sets, 1).into_iter().next()
}

struct Search<'a> {
    sets: &'a [Vec<usize>],
    by_elem: Vec<Vec<usize>>,
    covered: Vec<bool>,
    /// number of chosen sets conflicting with each set
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    out: Vec<Vec<usize>>,
    limit: usize,
}

impl Search<'_> {
    fn run(&mut self) {
        if self.out.len() >= self.limit {
            return;
        }
        let mut best: Option<(usize, usize)> = None;
        for e in 0..self.covered.len() {
            if self.covered[e] {
                continue;
            }
            let avail = self.by_elem[e].iter().filter(|&&s| self.blocked[s] == 0).count();
            if best.is_none_or(|(_, n)| avail < n) {
                best = Some((e, avail));
                if avail == 0 {
                    break;
                }
            }
        }
        let Some((elem, avail)) = best else {
            self.out.push(self.chosen.clone());
            return;
        };
        if avail == 0 {
            return;
        }
        let candidates: Vec<usize> = self.by_elem[elem].iter().copied().filter(|&s| self.blocked[s] == 0).collect();
        for s in candidates {
            self.select(s, true);
            self.chosen.push(s);
            self.run();
            self.chosen.pop();
            self.select(s, false);
            if self.out.len() >= self.limit {
                return;
            }
        }
    }

    fn select(&mut self, s: usize, on: bool) {
        for &e in &self.sets[s] {
            self.covered[e] = on;
            for &t in &self.by_elem[e] {
                if on {
                    self.blocked[t] += 1;
                } else {
                    self.blocked[t] -= 1;
                }
            }
        }
    }
}
