//! Planes of PG(2,q) whose lines are ovals of the standard plane.
//!
//! Ovals are adjacent when they share at most one point; a clique of
//! `q² + q + 1` ovals is a plane, equivalently an exact cover of the point
//! pairs by ovals, which is how cliques are enumerated. Two such planes are
//! orthogoval exactly when no point triple lies on a line of both.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cover::exact_covers;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{build_pg, conic_points, is_nonsingular, QuadraticForm};

use super::graph::{max_clique, CompatibilityGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OvalSearchReport {
    pub q: u32,
    pub ovals: usize,
    /// Planes whose lines are all ovals.
    pub planes: usize,
    /// Orthogoval pairs among those planes.
    pub orthogoval_pairs: usize,
    /// Largest mutually orthogoval set, the standard plane included.
    pub max_set: usize,
    /// Set when plane enumeration hit the limit.
    pub truncated: bool,
    #[serde(skip)]
    pub plane_lines: Vec<Vec<Vec<u32>>>,
}

/// All ovals of PG(2,q), `2 ≤ q ≤ 5`, as sorted point lists in lexicographic
/// order; by arc enumeration for `q ≤ 4`, as conics for `q = 5`.
pub fn enumerate_ovals(field: &Field) -> Result<Vec<Vec<u32>>> {
    let q = field.q();
    match q {
        2..=4 => {
            let pg = build_pg(field)?;
            let n = pg.num_points();
            let mut line_of = vec![usize::MAX; n * n];
            for (li, l) in pg.lines().iter().enumerate() {
                for &a in l {
                    for &b in l {
                        line_of[a as usize * n + b as usize] = li;
                    }
                }
            }
            let on_line = |p: u32, li: usize| pg.lines()[li].binary_search(&p).is_ok();
            let mut out = Vec::new();
            let mut arc = Vec::new();
            arcs(n as u32, q as usize + 1, 0, &mut arc, &mut out, &|arc: &[u32], p: u32| {
                arc.iter().enumerate().all(|(i, &a)| {
                    arc[i + 1..].iter().all(|&b| !on_line(p, line_of[a as usize * n + b as usize]))
                })
            });
            Ok(out)
        }
        5 => {
            let mut set = BTreeSet::new();
            for code in 1..q.pow(6) {
                let mut c = [0u32; 6];
                let mut rest = code;
                for slot in c.iter_mut() {
                    *slot = rest % q;
                    rest /= q;
                }
                let form = QuadraticForm::from_coefficients(c);
                if is_nonsingular(&form, field) {
                    set.insert(conic_points(&form, field)?);
                }
            }
            Ok(set.into_iter().collect())
        }
        _ => Err(Error::UnsupportedOrder { order: q, max: 5 }),
    }
}

fn arcs(
    n: u32,
    size: usize,
    start: u32,
    arc: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
    ok: &dyn Fn(&[u32], u32) -> bool,
) {
    if arc.len() == size {
        out.push(arc.clone());
        return;
    }
    for p in start..n {
        if ok(arc, p) {
            arc.push(p);
            arcs(n, size, p + 1, arc, out, ok);
            arc.pop();
        }
    }
}

fn triple_rank(a: u32, b: u32, c: u32) -> usize {
    let (a, b, c) = (a as usize, b as usize, c as usize);
    c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
}

/// Enumerates oval-planes (up to `plane_limit`) and their orthogoval pairs.
pub fn oval_planes_search(field: &Field, plane_limit: Option<usize>) -> Result<OvalSearchReport> {
    let q = field.q();
    let ovals = enumerate_ovals(field)?;
    let n = (q * q + q + 1) as usize;
    let pair = |a: u32, b: u32| (b as usize) * (b as usize - 1) / 2 + a as usize;
    let sets: Vec<Vec<usize>> = ovals
        .iter()
        .map(|o| {
            let mut s = Vec::new();
            for (i, &a) in o.iter().enumerate() {
                for &b in &o[i + 1..] {
                    s.push(pair(a, b));
                }
            }
            s
        })
        .collect();
    let limit = plane_limit.unwrap_or(usize::MAX);
    let covers = exact_covers(n * (n - 1) / 2, &sets, limit);
    let truncated = covers.len() >= limit;
    let plane_lines: Vec<Vec<Vec<u32>>> = covers
        .iter()
        .map(|c| {
            let mut lines: Vec<Vec<u32>> = c.iter().map(|&i| ovals[i].clone()).collect();
            lines.sort();
            lines
        })
        .collect();

    let words = (n * (n - 1) * (n - 2) / 6).div_ceil(64);
    let masks: Vec<Vec<u64>> = plane_lines
        .iter()
        .map(|lines| {
            let mut m = vec![0u64; words];
            for l in lines {
                for i in 0..l.len() {
                    for j in i + 1..l.len() {
                        for k in j + 1..l.len() {
                            let r = triple_rank(l[i], l[j], l[k]);
                            m[r / 64] |= 1 << (r % 64);
                        }
                    }
                }
            }
            m
        })
        .collect();
    let mut g = CompatibilityGraph::new((0..masks.len()).map(|i| i.to_string()).collect(), "disjoint collinear triples");
    for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i].iter().zip(&masks[j]).all(|(a, b)| a & b == 0) {
                g.add_edge(i, j);
            }
        }
    }
    let orthogoval_pairs = g.edge_count();
    let max_set = 1 + max_clique(&g, None).len();
    Ok(OvalSearchReport { q, ovals: ovals.len(), planes: plane_lines.len(), orthogoval_pairs, max_set, truncated, plane_lines })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oval_counts() {
        assert_eq!(enumerate_ovals(&Field::gf(2).unwrap()).unwrap().len(), 28);
        assert_eq!(enumerate_ovals(&Field::gf(3).unwrap()).unwrap().len(), 234);
        assert_eq!(enumerate_ovals(&Field::gf(4).unwrap()).unwrap().len(), 1008);
        assert!(enumerate_ovals(&Field::gf(7).unwrap()).is_err());
    }

    #[test]
    fn fano_search() {
        let r = oval_planes_search(&Field::gf(2).unwrap(), None).unwrap();
        assert_eq!(r.planes, 8);
        assert_eq!(r.orthogoval_pairs, 0);
        assert_eq!(r.max_set, 2);
    }
}
