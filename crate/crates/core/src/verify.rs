//! Orthogovality predicates, packing bounds, and union-design analysis.
//!
//! Line-pair intersections are counted exactly: for each line of the first
//! plane, every point on it votes for each line of the second plane through
//! that point. The reported witness is the lexicographically first offending
//! pair of line indices regardless of how the work is split across threads.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{exact_covers, first_exact_cover};
use crate::error::{Error, Result};
use crate::geometry::{Plane, PlaneKind};

/// A line pair meeting in three or more points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub line_a: usize,
    pub line_b: usize,
    pub points: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthogovalReport {
    pub orthogoval: bool,
    pub max_intersection: usize,
    pub witness: Option<Witness>,
}

fn check_compatible(a: &Plane, b: &Plane) -> Result<()> {
    if a.kind() != b.kind() || a.order() != b.order() || a.num_points() != b.num_points() {
        return Err(Error::Mismatch(format!(
            "{:?} order {} on {} points vs {:?} order {} on {} points",
            a.kind(),
            a.order(),
            a.num_points(),
            b.kind(),
            b.order(),
            b.num_points()
        )));
    }
    Ok(())
}

/// For each line of `a`: (max intersection with any line of `b` other than
/// `skip`, first line of `b` meeting it in ≥ 3 points).
fn scan(a: &Plane, b: &Plane, skip: Option<(usize, usize)>) -> (usize, Option<Witness>) {
    let b_point_lines = b.point_lines();
    let nb = b.lines().len();
    let per_line: Vec<(usize, Option<usize>)> = a
        .lines()
        .par_iter()
        .enumerate()
        .map_init(
            || vec![0u32; nb],
            |counts, (ia, line)| {
                let mut touched = Vec::with_capacity(line.len() * (a.order() as usize + 1));
                for &p in line {
                    for &lb in &b_point_lines[p as usize] {
                        if counts[lb as usize] == 0 {
                            touched.push(lb as usize);
                        }
                        counts[lb as usize] += 1;
                    }
                }
                let mut max = 0usize;
                let mut first_bad: Option<usize> = None;
                for &lb in &touched {
                    let c = counts[lb] as usize;
                    counts[lb] = 0;
                    if skip == Some((ia, lb)) {
                        continue;
                    }
                    max = max.max(c);
                    if c >= 3 && first_bad.is_none_or(|f| lb < f) {
                        first_bad = Some(lb);
                    }
                }
                (max, first_bad)
            },
        )
        .collect();
    let max = per_line.iter().map(|r| r.0).max().unwrap_or(0);
    let witness = per_line.iter().enumerate().find_map(|(ia, r)| {
        r.1.map(|ib| {
            let lb = &b.lines()[ib];
            let points = a.lines()[ia].iter().copied().filter(|p| lb.binary_search(p).is_ok()).collect();
            Witness { line_a: ia, line_b: ib, points }
        })
    });
    (max, witness)
}

/// Exhaustive orthogoval test for two planes on the same point indices.
pub fn is_orthogoval_pair(a: &Plane, b: &Plane) -> Result<OrthogovalReport> {
    check_compatible(a, b)?;
    let (max, witness) = scan(a, b, None);
    Ok(OrthogovalReport { orthogoval: witness.is_none(), max_intersection: max, witness })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MutualReport {
    pub orthogoval: bool,
    /// Largest line-pair intersection over all plane pairs.
    pub max_intersection: usize,
    /// First failing pair of plane indices, with its witness.
    pub failing_pair: Option<(usize, usize, Witness)>,
}

/// Checks every unordered pair of planes.
pub fn is_mutually_orthogoval(planes: &[Plane]) -> Result<MutualReport> {
    if planes.is_empty() {
        return Err(Error::InvalidArgument("need at least one plane".into()));
    }
    let mut max = 0;
    let mut failing = None;
    for i in 0..planes.len() {
        for j in i + 1..planes.len() {
            let r = is_orthogoval_pair(&planes[i], &planes[j])?;
            max = max.max(r.max_intersection);
            if failing.is_none() {
                if let Some(w) = r.witness {
                    failing = Some((i, j, w));
                }
            }
        }
    }
    Ok(MutualReport { orthogoval: failing.is_none(), max_intersection: max, failing_pair: failing })
}

/// Orthogoval except for one shared line: `line_idx` is a line of `a` whose
/// point set must also be a line of `b`; that single pair is exempt.
pub fn orthogoval_except_line(a: &Plane, b: &Plane, line_idx: usize) -> Result<bool> {
    check_compatible(a, b)?;
    let line = a
        .lines()
        .get(line_idx)
        .ok_or_else(|| Error::InvalidArgument(format!("line index {line_idx} out of range")))?;
    let ib = b.find_line(line).ok_or_else(|| Error::LineNotShared(line.clone()))?;
    let (_, witness) = scan(a, b, Some((line_idx, ib)));
    Ok(witness.is_none())
}

/// `⌊v/k ⌊(v−1)/(k−1) ⌊(v−2)/(k−2)⌋⌋⌋`, the Johnson bound on D(v,k,3).
pub fn johnson_packing_bound(v: u64, k: u64) -> Result<u64> {
    if k <= 2 {
        return Err(Error::InvalidArgument(format!("Johnson bound for t = 3 needs k >= 3, got {k}")));
    }
    if v <= k {
        return Err(Error::InvalidArgument(format!("need v > k, got v = {v}, k = {k}")));
    }
    let inner = (v - 2) / (k - 2);
    let mid = (v - 1) * inner / (k - 1);
    Ok(v * mid / k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetBound {
    Finite(u32),
    Unbounded,
}

/// Upper bound on the size of a set of mutually orthogoval planes of order `q`:
/// `max{5, q+2}` projective, `max{7, q+2}` affine (`q > 2`); affine order 2
/// is unbounded since its lines have two points.
pub fn orthogoval_set_bound(q: u32, kind: PlaneKind) -> Result<SetBound> {
    if crate::field::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q));
    }
    Ok(match kind {
        PlaneKind::Projective => SetBound::Finite((q + 2).max(5)),
        PlaneKind::Affine if q == 2 => SetBound::Unbounded,
        PlaneKind::Affine => SetBound::Finite((q + 2).max(7)),
    })
}

/// The packing inequality `s · (lines per plane) ≤ D-bound` for a set of `s` planes.
pub fn packing_inequality_holds(s: usize, q: u32, kind: PlaneKind) -> Result<bool> {
    let q = q as u64;
    let (lines, v, k) = match kind {
        PlaneKind::Projective => (q * q + q + 1, q * q + q + 1, q + 1),
        PlaneKind::Affine if q == 2 => return Ok(true),
        PlaneKind::Affine => (q * q + q, q * q, q),
    };
    Ok(s as u64 * lines <= johnson_packing_bound(v, k)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionDesignReport {
    pub blocks: usize,
    pub max_multiplicity: u32,
    pub uncovered: u64,
    pub steiner: bool,
}

/// Largest point count accepted by [`union_design_check`].
pub const MAX_UNION_POINTS: usize = 512;

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Colex rank of a sorted triple.
fn triple_rank(a: u32, b: u32, c: u32) -> usize {
    (binom(c as u64, 3) + binom(b as u64, 2) + a as u64) as usize
}

/// Census of 3-subset multiplicities over all lines of all planes, viewed as one block multiset.
pub fn union_design_check(planes: &[Plane]) -> Result<UnionDesignReport> {
    let first = planes.first().ok_or_else(|| Error::InvalidArgument("need at least one plane".into()))?;
    let blocks: Vec<&Vec<u32>> = planes.iter().flat_map(|p| p.lines()).collect();
    for p in planes {
        check_compatible(first, p)?;
    }
    block_census(first.num_points(), &blocks)
}

/// Same census for an arbitrary block list on `m` points.
pub fn block_census(m: usize, blocks: &[&Vec<u32>]) -> Result<UnionDesignReport> {
    if m > MAX_UNION_POINTS {
        return Err(Error::InvalidArgument(format!("union census supports at most {MAX_UNION_POINTS} points")));
    }
    let mut counts = vec![0u32; binom(m as u64, 3) as usize];
    for b in blocks {
        let mut s = (*b).clone();
        s.sort_unstable();
        for i in 0..s.len() {
            for j in i + 1..s.len() {
                for k in j + 1..s.len() {
                    counts[triple_rank(s[i], s[j], s[k])] += 1;
                }
            }
        }
    }
    let max_multiplicity = counts.iter().copied().max().unwrap_or(0);
    let uncovered = counts.iter().filter(|&&c| c == 0).count() as u64;
    Ok(UnionDesignReport {
        blocks: blocks.len(),
        max_multiplicity,
        uncovered,
        steiner: max_multiplicity == 1 && uncovered == 0,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedDesign {
    pub point: u32,
    /// `B ∖ {point}` for each block through the point, in block order.
    pub blocks: Vec<Vec<u32>>,
    /// The remaining points.
    pub points: Vec<u32>,
    /// A resolution into parallel classes (indices into `blocks`), if one exists.
    pub resolution: Option<Vec<Vec<usize>>>,
}

impl DerivedDesign {
    pub fn is_resolvable(&self) -> bool {
        self.resolution.is_some()
    }

    /// Whether every pair of remaining points lies in exactly one block.
    pub fn is_pairwise_balanced(&self) -> bool {
        let m = self.points.iter().copied().max().map_or(0, |x| x as usize + 1);
        let mut seen = vec![0u32; m * m];
        for b in &self.blocks {
            for (i, &x) in b.iter().enumerate() {
                for &y in &b[i + 1..] {
                    let (lo, hi) = (x.min(y) as usize, x.max(y) as usize);
                    seen[lo * m + hi] += 1;
                }
            }
        }
        self.points.iter().enumerate().all(|(i, &x)| {
            self.points[i + 1..].iter().all(|&y| {
                let (lo, hi) = (x.min(y) as usize, x.max(y) as usize);
                seen[lo * m + hi] == 1
            })
        })
    }
}

/// Derived design at `point`, with a resolvability decision by exact cover:
/// parallel classes are the exact covers of the remaining points, and a
/// resolution is an exact cover of the blocks by parallel classes.
pub fn derived_design(blocks: &[Vec<u32>], point: u32) -> Result<DerivedDesign> {
    let derived: Vec<Vec<u32>> = blocks
        .iter()
        .filter(|b| b.contains(&point))
        .map(|b| {
            let mut r: Vec<u32> = b.iter().copied().filter(|&x| x != point).collect();
            r.sort_unstable();
            r
        })
        .collect();
    if derived.is_empty() {
        return Err(Error::InvalidArgument(format!("point {point} lies on no block")));
    }
    let mut points: Vec<u32> = derived.iter().flatten().copied().collect();
    points.sort_unstable();
    points.dedup();
    let pos = |x: u32| points.binary_search(&x).expect("point collected above");
    let as_sets: Vec<Vec<usize>> = derived.iter().map(|b| b.iter().map(|&x| pos(x)).collect()).collect();
    let classes = exact_covers(points.len(), &as_sets, usize::MAX);
    let resolution = first_exact_cover(derived.len(), &classes)
        .map(|chosen| chosen.into_iter().map(|c| {
            let mut class = classes[c].clone();
            class.sort_unstable();
            class
        }).collect::<Vec<_>>())
        .map(|mut r| {
            r.sort();
            r
        });
    Ok(DerivedDesign { point, blocks: derived, points, resolution })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::geometry::{build_ag, build_pg};

    #[test]
    fn self_pair_fails_with_full_line() {
        let pg = build_pg(&Field::gf(3).unwrap()).unwrap();
        let r = is_orthogoval_pair(&pg, &pg).unwrap();
        assert!(!r.orthogoval);
        assert_eq!(r.max_intersection, 4);
        let w = r.witness.unwrap();
        assert_eq!((w.line_a, w.line_b), (0, 0));
        assert_eq!(w.points, pg.lines()[0]);
    }

    #[test]
    fn mismatched_planes_error() {
        let pg = build_pg(&Field::gf(3).unwrap()).unwrap();
        let ag = build_ag(&Field::gf(3).unwrap()).unwrap();
        assert!(matches!(is_orthogoval_pair(&pg, &ag), Err(Error::Mismatch(_))));
    }

    #[test]
    fn duplicate_plane_breaks_mutuality() {
        let ag = build_ag(&Field::gf(4).unwrap()).unwrap();
        let r = is_mutually_orthogoval(&[ag.clone(), ag]).unwrap();
        assert!(!r.orthogoval);
        assert_eq!(r.failing_pair.as_ref().map(|f| (f.0, f.1)), Some((0, 1)));
        // affine order 2: lines of size 2, duplicates are vacuously fine
        let ag2 = build_ag(&Field::gf(2).unwrap()).unwrap();
        assert!(is_mutually_orthogoval(&[ag2.clone(), ag2]).unwrap().orthogoval);
    }

    #[test]
    fn except_line_on_identical_planes() {
        let pg = build_pg(&Field::gf(3).unwrap()).unwrap();
        assert!(!orthogoval_except_line(&pg, &pg, 0).unwrap());
    }

    #[test]
    fn johnson_values() {
        assert_eq!(johnson_packing_bound(13, 4).unwrap(), 65);
        assert_eq!(johnson_packing_bound(9, 3).unwrap(), 84);
        assert_eq!(johnson_packing_bound(21, 5).unwrap(), 126);
        assert!(johnson_packing_bound(10, 2).is_err());
    }

    #[test]
    fn set_bounds() {
        assert_eq!(orthogoval_set_bound(3, PlaneKind::Projective).unwrap(), SetBound::Finite(5));
        assert_eq!(orthogoval_set_bound(3, PlaneKind::Affine).unwrap(), SetBound::Finite(7));
        assert_eq!(orthogoval_set_bound(4, PlaneKind::Projective).unwrap(), SetBound::Finite(6));
        assert_eq!(orthogoval_set_bound(2, PlaneKind::Affine).unwrap(), SetBound::Unbounded);
        assert_eq!(orthogoval_set_bound(9, PlaneKind::Affine).unwrap(), SetBound::Finite(11));
        assert!(orthogoval_set_bound(6, PlaneKind::Affine).is_err());
    }

    #[test]
    fn bound_matches_johnson_quotient() {
        // s ≤ ⌊J / lines⌋ reproduces the closed form for small q
        for q in [3u32, 4, 5, 7, 8, 9] {
            let qq = q as u64;
            let proj = johnson_packing_bound(qq * qq + qq + 1, qq + 1).unwrap() / (qq * qq + qq + 1);
            assert_eq!(SetBound::Finite(proj as u32), orthogoval_set_bound(q, PlaneKind::Projective).unwrap());
            let aff = johnson_packing_bound(qq * qq, qq).unwrap() / (qq * qq + qq);
            assert_eq!(SetBound::Finite(aff as u32), orthogoval_set_bound(q, PlaneKind::Affine).unwrap());
        }
    }

    #[test]
    fn single_plane_is_packing() {
        let pg = build_pg(&Field::gf(4).unwrap()).unwrap();
        let r = union_design_check(std::slice::from_ref(&pg)).unwrap();
        assert_eq!(r.blocks, 21);
        assert_eq!(r.max_multiplicity, 1);
        assert!(!r.steiner);
    }

    #[test]
    fn derived_sts9() {
        let ag = build_ag(&Field::gf(3).unwrap()).unwrap();
        let d = derived_design(ag.lines(), 0).unwrap();
        assert_eq!(d.blocks.len(), 4);
        assert!(d.blocks.iter().all(|b| b.len() == 2));
        assert_eq!(d.points, (1..9).collect::<Vec<_>>());
        assert!(!d.is_pairwise_balanced());
        assert_eq!(d.resolution.unwrap(), vec![vec![0, 1, 2, 3]]);
        assert!(derived_design(&[vec![1, 2, 3]], 0).is_err());
    }

    #[test]
    fn triple_rank_is_bijective() {
        let m = 12;
        let mut seen = vec![false; binom(m, 3) as usize];
        for c in 0..m as u32 {
            for b in 0..c {
                for a in 0..b {
                    let r = triple_rank(a, b, c);
                    assert!(!seen[r]);
                    seen[r] = true;
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }
}
