//! Explicit constructions of mutually orthogoval plane sets.
//!
//! Every construction returns a [`PlaneFamily`]: the planes on a common
//! label set together with an isomorphism from each plane onto the standard
//! Desarguesian plane over the family's field. Those isomorphisms are what
//! the covering module turns into array entries.

mod cremona;
mod ds13;
mod iso;
mod matrix_power;
mod pencil;
mod phi;
mod sts9;

pub use cremona::{
    conjugate_determinant, cremona_pair, cremona_point, find_omega, omega_polynomial, CremonaContext,
};
pub use ds13::{ds_quadruple, DS13_BASE_BLOCKS};
pub use iso::find_isomorphism;
pub use matrix_power::{m4, m6, matrix_power_family, matrix_power_planes, MatrixPowerPlanes};
pub use pencil::{line_z_index, pencil_pair, PencilContext};
pub use phi::{phi_k_map, phi_k_triple};
pub use sts9::{all_sts9, large_set_sts9};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{build_ag, build_pg, point_coords, Coords, Plane, PlaneKind};
use crate::verify::{is_mutually_orthogoval, MutualReport};

/// Planes on a shared label set with isomorphisms onto the standard plane.
#[derive(Debug, Clone)]
pub struct PlaneFamily {
    pub field: Field,
    pub planes: Vec<Plane>,
    /// `to_base[i][label]` is the standard-plane point index of `label` in plane `i`.
    pub to_base: Vec<Vec<u32>>,
    /// Per plane, the images of the projective points `(1:0:0)` and `(0:1:0)`
    /// under the isomorphism of the projective completions, when known.
    pub extension: Option<Vec<[Coords; 2]>>,
}

impl PlaneFamily {
    pub fn kind(&self) -> PlaneKind {
        self.planes[0].kind()
    }

    pub fn order(&self) -> u32 {
        self.field.q()
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    /// The standard plane the isomorphisms land in.
    pub fn base_plane(&self) -> Result<Plane> {
        match self.kind() {
            PlaneKind::Projective => build_pg(&self.field),
            PlaneKind::Affine => build_ag(&self.field),
        }
    }

    /// Canonical coordinates of `label` in plane `i`.
    pub fn coords(&self, i: usize, label: u32) -> Coords {
        point_coords(self.order(), self.to_base[i][label as usize])
    }

    pub fn verify(&self) -> Result<MutualReport> {
        is_mutually_orthogoval(&self.planes)
    }

    /// Checks that each stored map is a bijection carrying its plane onto the standard plane.
    pub fn check_isomorphisms(&self) -> Result<()> {
        let base = self.base_plane()?;
        let mut want: Vec<Vec<u32>> = base.lines().to_vec();
        want.sort();
        for (i, (plane, perm)) in self.planes.iter().zip(&self.to_base).enumerate() {
            let mut seen = vec![false; plane.num_points()];
            if perm.len() != plane.num_points() || perm.iter().any(|&p| std::mem::replace(&mut seen[p as usize], true)) {
                return Err(Error::Verification(format!("map {i} is not a bijection")));
            }
            let mut got: Vec<Vec<u32>> = plane.image(perm, "").lines().to_vec();
            got.sort();
            if got != want {
                return Err(Error::Verification(format!("map {i} is not an isomorphism onto the standard plane")));
            }
        }
        Ok(())
    }

    /// The first `r` planes.
    pub fn truncate(&self, r: usize) -> PlaneFamily {
        PlaneFamily {
            field: self.field.clone(),
            planes: self.planes[..r].to_vec(),
            to_base: self.to_base[..r].to_vec(),
            extension: self.extension.as_ref().map(|e| e[..r].to_vec()),
        }
    }
}

pub(crate) fn invert(perm: &[u32]) -> Vec<u32> {
    let mut inv = vec![0u32; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u32;
    }
    inv
}

pub(crate) fn identity(n: usize) -> Vec<u32> {
    (0..n as u32).collect()
}

/// Permutation encoded for provenance strings.
pub(crate) fn perm_tag(perm: &[u32]) -> String {
    let parts: Vec<String> = perm.iter().map(u32::to_string).collect();
    parts.join(",")
}
