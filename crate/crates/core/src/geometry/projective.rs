//! The Desarguesian planes PG(2,q) and AG(2,q) with canonical point order.
//!
//! Canonical representatives: scale so that `z = 1`, else `y = 1`, else
//! `x = 1`. Points are indexed affine first, `(x:y:1) ↦ x·q + y`, then the
//! points `(x:1:0) ↦ q² + x`, then `(1:0:0) ↦ q² + q`. Lines are indexed
//! by the same rule applied to their dual coordinates, so line z `[0:0:1]`
//! is line 0.

use crate::error::{Error, Result};
use crate::field::Field;

use super::plane::{Plane, PlaneKind};

/// Largest order for which [`build_pg`] builds planes.
pub const MAX_PLANE_ORDER: u32 = 64;
/// Largest order reachable through the affine φ_k path.
pub const MAX_AFFINE_ORDER: u32 = 128;

pub type Coords = [u32; 3];

/// Canonical representative of a nonzero vector, or `None` for the zero vector.
pub fn normalize(field: &Field, v: Coords) -> Option<Coords> {
    let pivot = if v[2] != 0 {
        v[2]
    } else if v[1] != 0 {
        v[1]
    } else if v[0] != 0 {
        v[0]
    } else {
        return None;
    };
    let s = field.inv(pivot).ok()?;
    Some([field.mul(s, v[0]), field.mul(s, v[1]), field.mul(s, v[2])])
}

/// Index of a canonical point.
pub fn index_of_canonical(q: u32, c: Coords) -> u32 {
    if c[2] == 1 {
        c[0] * q + c[1]
    } else if c[1] == 1 {
        q * q + c[0]
    } else {
        q * q + q
    }
}

/// Index of the projective point spanned by a nonzero vector.
pub fn point_index(field: &Field, v: Coords) -> Option<u32> {
    normalize(field, v).map(|c| index_of_canonical(field.q(), c))
}

/// Canonical coordinates of the point with the given index.
pub fn point_coords(q: u32, idx: u32) -> Coords {
    let qq = q * q;
    if idx < qq {
        [idx / q, idx % q, 1]
    } else if idx < qq + q {
        [idx - qq, 1, 0]
    } else {
        [1, 0, 0]
    }
}

/// All points of PG(2,q) in canonical order.
pub fn all_points(q: u32) -> Vec<Coords> {
    (0..q * q + q + 1).map(|i| point_coords(q, i)).collect()
}

/// Point indices on the line `ax + by + cz = 0`, ascending.
pub fn line_points(field: &Field, dual: Coords) -> Vec<u32> {
    let q = field.q();
    let [a, b, c] = dual;
    let mut pts = Vec::with_capacity(q as usize + 1);
    if b != 0 {
        // y = -(a x + c) / b on z = 1
        let nb_inv = field.neg(field.inv(b).expect("b != 0"));
        for x in field.elements() {
            let y = field.mul(nb_inv, field.add(field.mul(a, x), c));
            pts.push(x * q + y);
        }
        pts.push(point_index(field, [b, field.neg(a), 0]).expect("nonzero"));
    } else if a != 0 {
        let x = field.mul(field.neg(c), field.inv(a).expect("a != 0"));
        for y in field.elements() {
            pts.push(x * q + y);
        }
        pts.push(q * q);
    } else {
        pts.extend(q * q..q * q + q + 1);
    }
    pts.sort_unstable();
    pts
}

fn check_order(q: u32, max: u32) -> Result<()> {
    if q > max {
        return Err(Error::UnsupportedOrder { order: q, max });
    }
    Ok(())
}

/// PG(2,q) over `field`, with lines indexed by their canonical dual coordinates.
pub fn build_pg(field: &Field) -> Result<Plane> {
    check_order(field.q(), MAX_PLANE_ORDER)?;
    Ok(build_pg_unchecked(field))
}

pub(crate) fn build_pg_unchecked(field: &Field) -> Plane {
    let q = field.q();
    let duals = all_points(q);
    let lines = duals.iter().map(|&d| line_points(field, d)).collect();
    Plane::new(PlaneKind::Projective, q, lines, format!("pg q={q}")).with_duals(duals)
}

/// Deletes line z from a coordinatized PG(2,q); the affine points keep their
/// indices `0..q²`. Each remaining line records the point at infinity it lost.
pub fn ag_from_pg(pg: &Plane) -> Result<Plane> {
    if pg.kind() != PlaneKind::Projective {
        return Err(Error::InvalidArgument("ag_from_pg expects a projective plane".into()));
    }
    let q = pg.order();
    let qq = q * q;
    let line_z: Vec<u32> = (qq..qq + q + 1).collect();
    let mut lines = Vec::with_capacity((qq + q) as usize);
    let mut infinite = Vec::with_capacity((qq + q) as usize);
    let mut duals = Vec::new();
    for (li, line) in pg.lines().iter().enumerate() {
        if *line == line_z {
            continue;
        }
        let (aff, inf): (Vec<u32>, Vec<u32>) = line.iter().partition(|&&p| p < qq);
        if inf.len() != 1 {
            return Err(Error::Verification(format!("line {li} meets line z in {} points", inf.len())));
        }
        lines.push(aff);
        infinite.push(inf[0]);
        if let Some(d) = pg.duals() {
            duals.push(d[li]);
        }
    }
    let mut ag = Plane::new(PlaneKind::Affine, q, lines, format!("ag q={q}")).with_infinite_points(infinite);
    if pg.duals().is_some() {
        ag = ag.with_duals(duals);
    }
    Ok(ag)
}

/// AG(2,q) directly (orders up to [`MAX_AFFINE_ORDER`]).
pub fn build_ag(field: &Field) -> Result<Plane> {
    check_order(field.q(), MAX_AFFINE_ORDER)?;
    ag_from_pg(&build_pg_unchecked(field))
}
