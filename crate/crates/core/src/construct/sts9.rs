//! A large set of STS(9): seven affine planes of order 3 partitioning all triples.

use crate::cover::{exact_covers, first_exact_cover};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{build_ag, Plane, PlaneKind};

use super::{find_isomorphism, PlaneFamily};

fn triples() -> Vec<[u32; 3]> {
    let mut out = Vec::with_capacity(84);
    for a in 0..9 {
        for b in a + 1..9 {
            for c in b + 1..9 {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn pair_index(a: u32, b: u32) -> usize {
    let (lo, hi) = (a.min(b) as usize, a.max(b) as usize);
    hi * (hi - 1) / 2 + lo
}

/// All 840 Steiner triple systems on `{0,…,8}`, each as sorted triple
/// indices into the lexicographic list of 3-subsets, sorted lexicographically.
pub fn all_sts9() -> Vec<Vec<usize>> {
    let ts = triples();
    let sets: Vec<Vec<usize>> = ts
        .iter()
        .map(|t| vec![pair_index(t[0], t[1]), pair_index(t[0], t[2]), pair_index(t[1], t[2])])
        .collect();
    let mut systems: Vec<Vec<usize>> = exact_covers(36, &sets, usize::MAX)
        .into_iter()
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    systems.sort();
    systems
}

/// Seven disjoint STS(9), each an AG(2,3) on the labels `0..9`.
pub fn large_set_sts9() -> Result<PlaneFamily> {
    let ts = triples();
    let systems = all_sts9();
    let chosen = first_exact_cover(ts.len(), &systems)
        .ok_or_else(|| Error::SearchExhausted("no large set of STS(9)".into()))?;
    let mut chosen: Vec<&Vec<usize>> = chosen.iter().map(|&i| &systems[i]).collect();
    chosen.sort();
    let field = Field::gf(3)?;
    let ag = build_ag(&field)?;
    let mut planes = Vec::with_capacity(7);
    let mut to_base = Vec::with_capacity(7);
    for (i, sys) in chosen.into_iter().enumerate() {
        let lines = sys.iter().map(|&t| ts[t].to_vec()).collect();
        let plane = Plane::new(PlaneKind::Affine, 3, lines, format!("sts9-large plane={i}"));
        let map = find_isomorphism(&plane, &ag)
            .ok_or_else(|| Error::Construction(format!("system {i} is not AG(2,3)")))?;
        planes.push(plane);
        to_base.push(map);
    }
    Ok(PlaneFamily { field, planes, to_base, extension: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_mutually_orthogoval, union_design_check};

    #[test]
    fn counts_all_systems() {
        assert_eq!(all_sts9().len(), 840);
    }

    #[test]
    fn large_set_partitions_triples() {
        let fam = large_set_sts9().unwrap();
        assert_eq!(fam.len(), 7);
        for p in &fam.planes {
            p.validate().unwrap();
            assert_eq!(p.parallel_classes().len(), 4);
        }
        fam.check_isomorphisms().unwrap();
        assert!(is_mutually_orthogoval(&fam.planes).unwrap().orthogoval);
        assert!(union_design_check(&fam.planes).unwrap().steiner);
    }
}

