//! Backtracking isomorphism search between small planes.

use crate::geometry::Plane;

struct Incidence {
    /// `line_of[a * n + b]`: the line through `a` and `b`
    line_of: Vec<u32>,
    /// `on[p * lines + l]`
    on: Vec<bool>,
    lines: usize,
    n: usize,
}

impl Incidence {
    fn new(plane: &Plane) -> Self {
        let n = plane.num_points();
        let lines = plane.lines().len();
        let mut line_of = vec![u32::MAX; n * n];
        let mut on = vec![false; n * lines];
        for (li, line) in plane.lines().iter().enumerate() {
            for &a in line {
                on[a as usize * lines + li] = true;
                for &b in line {
                    line_of[a as usize * n + b as usize] = li as u32;
                }
            }
        }
        Incidence { line_of, on, lines, n }
    }

    fn collinear(&self, a: u32, b: u32, c: u32) -> bool {
        let l = self.line_of[a as usize * self.n + b as usize];
        l != u32::MAX && self.on[c as usize * self.lines + l as usize]
    }
}

/// A point bijection `f` with `f(line of from)` a line of `to` for every line,
/// or `None`. Points are assigned in index order, images tried ascending.
pub fn find_isomorphism(from: &Plane, to: &Plane) -> Option<Vec<u32>> {
    if from.num_points() != to.num_points() || from.lines().len() != to.lines().len() {
        return None;
    }
    let (a, b) = (Incidence::new(from), Incidence::new(to));
    let n = from.num_points();
    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend(&a, &b, &mut map, &mut used).then_some(map)
}

fn extend(a: &Incidence, b: &Incidence, map: &mut Vec<u32>, used: &mut [bool]) -> bool {
    let x = map.len() as u32;
    if x as usize == a.n {
        return true;
    }
    for y in 0..a.n as u32 {
        if used[y as usize] || !consistent(a, b, map, x, y) {
            continue;
        }
        used[y as usize] = true;
        map.push(y);
        if extend(a, b, map, used) {
            return true;
        }
        map.pop();
        used[y as usize] = false;
    }
    false
}

fn consistent(a: &Incidence, b: &Incidence, map: &[u32], x: u32, y: u32) -> bool {
    for (p, &fp) in map.iter().enumerate() {
        for (r, &fr) in map.iter().enumerate().skip(p + 1) {
            if a.collinear(p as u32, r as u32, x) != b.collinear(fp, fr, y) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::geometry::{build_ag, build_pg};

    #[test]
    fn relabelled_plane_maps_back() {
        let pg = build_pg(&Field::gf(3).unwrap()).unwrap();
        let perm: Vec<u32> = (0..13).map(|i| (i * 5 + 2) % 13).collect();
        let moved = pg.image(&perm, "moved");
        let f = find_isomorphism(&moved, &pg).unwrap();
        let mut got: Vec<_> = moved.image(&f, "").lines().to_vec();
        let mut want: Vec<_> = pg.lines().to_vec();
        got.sort();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn size_mismatch_has_no_isomorphism() {
        let pg = build_pg(&Field::gf(2).unwrap()).unwrap();
        let ag = build_ag(&Field::gf(3).unwrap()).unwrap();
        assert!(find_isomorphism(&pg, &ag).is_none());
    }
}
