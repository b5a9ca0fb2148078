//! Four cyclic projective planes of order 3 on ℤ₁₃.
//!
//! Each plane is coordinatized through a Singer cycle: with α primitive in
//! GF(27), label `z` goes to the point spanned by `α^{tz+s}`. The multiplier
//! `t` and shift `s` are found by scanning; a general isomorphism search is
//! the fallback.

use crate::error::{Error, Result};
use crate::ext::CubicExt;
use crate::field::Field;
use crate::geometry::{build_pg, point_index, Plane, PlaneKind};

use super::{find_isomorphism, PlaneFamily};

pub const DS13_BASE_BLOCKS: [[u32; 4]; 4] = [[0, 1, 3, 9], [0, 1, 5, 11], [0, 1, 4, 6], [0, 1, 8, 10]];

fn develop(block: [u32; 4]) -> Vec<Vec<u32>> {
    (0..13).map(|x| block.iter().map(|&b| (b + x) % 13).collect()).collect()
}

/// Points of PG(2,3) hit by `α^j`, `0 ≤ j < 13`.
fn singer_points(field: &Field) -> Result<Vec<u32>> {
    let ext = CubicExt::new(field)?;
    let alpha = ext
        .elements()
        .find(|&a| a != ext.zero() && (1..26).all(|e| ext.pow(a, e) != ext.one()))
        .ok_or_else(|| Error::Construction("GF(27) has no primitive element".into()))?;
    (0..13)
        .map(|j| {
            let v = ext.pow(alpha, j);
            point_index(field, v).ok_or_else(|| Error::Construction("zero power".into()))
        })
        .collect()
}

fn is_iso(plane: &Plane, map: &[u32], target: &[Vec<u32>]) -> bool {
    let mut got: Vec<Vec<u32>> = plane.image(map, "").lines().to_vec();
    got.sort();
    got == target
}

pub fn ds_quadruple() -> Result<PlaneFamily> {
    let field = Field::gf(3)?;
    let pg = build_pg(&field)?;
    let mut target: Vec<Vec<u32>> = pg.lines().to_vec();
    target.sort();
    let singer = singer_points(&field)?;
    let mut planes = Vec::with_capacity(4);
    let mut to_base = Vec::with_capacity(4);
    for (i, block) in DS13_BASE_BLOCKS.into_iter().enumerate() {
        let plane = Plane::new(PlaneKind::Projective, 3, develop(block), format!("ds13 plane={i} base={block:?}"));
        let singer_map = (1..13u32).flat_map(|t| (0..13u32).map(move |s| (t, s))).find_map(|(t, s)| {
            let map: Vec<u32> = (0..13).map(|z| singer[((t * z + s) % 13) as usize]).collect();
            is_iso(&plane, &map, &target).then_some(map)
        });
        let map = match singer_map {
            Some(m) => m,
            None => find_isomorphism(&plane, &pg)
                .ok_or_else(|| Error::Construction(format!("development {i} is not PG(2,3)")))?,
        };
        planes.push(plane);
        to_base.push(map);
    }
    Ok(PlaneFamily { field, planes, to_base, extension: None })
}
