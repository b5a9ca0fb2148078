//! Families `{plane(Mⁱ(C)) : 0 ≤ i < s}` for a spread `C` and a matrix `M`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::spread::spread_coordinates;
use crate::geometry::{line_spread, plane_from_spread, Plane, SpreadF2};
use crate::gf2::BinaryMatrix;
use crate::verify::{is_mutually_orthogoval, MutualReport};

use super::PlaneFamily;

/// The 4×4 matrix of the seven-plane family of order 4.
pub fn m4() -> BinaryMatrix {
    BinaryMatrix::parse("0110\n0001\n1100\n0011").expect("valid constant")
}

/// The 6×6 matrix of the seven-plane family of order 8.
pub fn m6() -> BinaryMatrix {
    BinaryMatrix::parse("010101\n001011\n110000\n001111\n111001\n001110").expect("valid constant")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixPowerPlanes {
    #[serde(skip)]
    pub planes: Vec<Plane>,
    pub report: MutualReport,
}

fn check_matrix(m: &BinaryMatrix, spread: &SpreadF2, s: usize) -> Result<()> {
    if m.dim() != spread.dim() {
        return Err(Error::DimensionMismatch { expected: spread.dim(), found: m.dim() });
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    if s == 0 {
        return Err(Error::InvalidArgument("need s >= 1".into()));
    }
    Ok(())
}

fn power_planes(m: &BinaryMatrix, s: usize, spread: &SpreadF2) -> Result<Vec<Plane>> {
    let mut planes = Vec::with_capacity(s);
    let mut power = BinaryMatrix::identity(m.dim());
    for i in 0..s {
        let plane = plane_from_spread(&spread.apply(&power)?)?
            .with_provenance(format!("matrix-power i={i} M={}", m.to_text().replace('\n', "/")));
        planes.push(plane);
        power = m.mul(&power)?;
    }
    Ok(planes)
}

/// Planes from `Mⁱ(spread)` for `0 ≤ i < s`, with the mutual orthogovality verdict.
pub fn matrix_power_planes(m: &BinaryMatrix, s: usize, spread: &SpreadF2) -> Result<MatrixPowerPlanes> {
    check_matrix(m, spread, s)?;
    let planes = power_planes(m, s, spread)?;
    let report = is_mutually_orthogoval(&planes)?;
    Ok(MatrixPowerPlanes { planes, report })
}

/// The same planes over the line spread, with isomorphisms onto AG(2,2ⁿ):
/// a vector `v` of plane `i` goes to the coordinates of `M⁻ⁱ v`.
pub fn matrix_power_family(m: &BinaryMatrix, s: usize) -> Result<PlaneFamily> {
    if !m.dim().is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("matrix dimension {} is odd", m.dim())));
    }
    let n = (m.dim() / 2) as u32;
    let spread = line_spread(n)?;
    check_matrix(m, &spread, s)?;
    let planes = power_planes(m, s, &spread)?;
    let q = 1u32 << n;
    let coords = spread_coordinates(n)?;
    let inv = m.inverse()?;
    let mut power_inv = BinaryMatrix::identity(m.dim());
    let mut to_base = Vec::with_capacity(s);
    for _ in 0..s {
        to_base.push(
            (0..q * q)
                .map(|v| {
                    let c = coords[power_inv.apply(v) as usize];
                    c[0] * q + c[1]
                })
                .collect(),
        );
        power_inv = inv.mul(&power_inv)?;
    }
    Ok(PlaneFamily { field: Field::new(2, n, None)?, planes, to_base, extension: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m4_family_is_seven_orthogoval_planes() {
        let fam = matrix_power_family(&m4(), 7).unwrap();
        fam.check_isomorphisms().unwrap();
        assert!(fam.verify().unwrap().orthogoval);
    }

    #[test]
    fn identity_singleton() {
        let r = matrix_power_planes(&BinaryMatrix::identity(4), 1, &line_spread(2).unwrap()).unwrap();
        assert!(r.report.orthogoval);
        assert_eq!(r.planes.len(), 1);
    }

    #[test]
    fn rejects_bad_matrices() {
        let spread = line_spread(2).unwrap();
        assert!(matches!(matrix_power_planes(&m6(), 2, &spread), Err(Error::DimensionMismatch { .. })));
        let singular = BinaryMatrix::parse("1000\n1000\n0010\n0001").unwrap();
        assert!(matches!(matrix_power_planes(&singular, 2, &spread), Err(Error::SingularMatrix)));
    }
}
