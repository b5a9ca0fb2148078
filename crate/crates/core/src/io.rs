//! JSON files of plane sets.
//!
//! A file holds one or more planes on a shared label set `0..points.len()`.
//! Each plane may carry `isomorphism`, the standard-plane point index of each
//! label, and `extension`, the images of `(1:0:0)` and `(0:1:0)`.

use serde::{Deserialize, Serialize};

use crate::construct::PlaneFamily;
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::geometry::{point_coords, Coords, Plane, PlaneKind};

pub const PLANES_FORMAT: &str = "orthogoval-planes";
pub const PLANES_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub kind: PlaneKind,
    pub q: u32,
    pub field: FieldSpec,
    /// Canonical coordinates of each label in the standard plane.
    pub points: Vec<Coords>,
    pub lines: Vec<Vec<u32>>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isomorphism: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<[Coords; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneFile {
    pub format: String,
    pub version: u32,
    pub planes: Vec<PlaneRecord>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AnyPlaneFile {
    Many(PlaneFile),
    One(PlaneRecord),
}

impl PlaneRecord {
    pub fn from_plane(field: &Field, plane: &Plane) -> Self {
        let q = plane.order();
        PlaneRecord {
            kind: plane.kind(),
            q,
            field: field.spec().clone(),
            points: (0..plane.num_points() as u32).map(|i| point_coords(q, i)).collect(),
            lines: plane.lines().to_vec(),
            provenance: plane.provenance().to_string(),
            isomorphism: None,
            extension: None,
        }
    }

    /// Rebuilds and validates the plane.
    pub fn to_plane(&self) -> Result<Plane> {
        let n = self.kind.num_points(self.q);
        if self.points.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: self.points.len() });
        }
        if self.field.order() != self.q {
            return Err(Error::Mismatch(format!("field of order {} for a plane of order {}", self.field.order(), self.q)));
        }
        let plane = Plane::new(self.kind, self.q, self.lines.clone(), self.provenance.clone());
        plane.validate()?;
        Ok(plane)
    }
}

impl PlaneFile {
    pub fn new(planes: Vec<PlaneRecord>) -> Self {
        PlaneFile { format: PLANES_FORMAT.to_string(), version: PLANES_VERSION, planes }
    }

    pub fn from_family(fam: &PlaneFamily) -> Self {
        let records = fam
            .planes
            .iter()
            .enumerate()
            .map(|(i, p)| PlaneRecord {
                isomorphism: Some(fam.to_base[i].clone()),
                extension: fam.extension.as_ref().map(|e| e[i]),
                ..PlaneRecord::from_plane(&fam.field, p)
            })
            .collect();
        PlaneFile::new(records)
    }

    /// Accepts a full file or a bare plane record.
    pub fn parse(json: &str) -> Result<Self> {
        match serde_json::from_str(json)? {
            AnyPlaneFile::Many(f) => {
                if f.format != PLANES_FORMAT {
                    return Err(Error::Parse(format!("unknown format {:?}", f.format)));
                }
                if f.version > PLANES_VERSION {
                    return Err(Error::Parse(format!("unsupported version {}", f.version)));
                }
                Ok(f)
            }
            AnyPlaneFile::One(r) => Ok(PlaneFile::new(vec![r])),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn planes(&self) -> Result<Vec<Plane>> {
        self.planes.iter().map(PlaneRecord::to_plane).collect()
    }

    /// The family, when every plane records an isomorphism onto the standard plane.
    pub fn to_family(&self) -> Result<PlaneFamily> {
        let first = self.planes.first().ok_or_else(|| Error::Parse("no planes".into()))?;
        if self.planes.iter().any(|r| r.field != first.field || r.kind != first.kind) {
            return Err(Error::Mismatch("planes over different fields or kinds".into()));
        }
        let field = Field::from_spec(&first.field)?;
        let planes = self.planes()?;
        let to_base = self
            .planes
            .iter()
            .enumerate()
            .map(|(i, r)| r.isomorphism.clone().ok_or_else(|| Error::Parse(format!("plane {i} has no isomorphism"))))
            .collect::<Result<Vec<_>>>()?;
        let extension = self.planes.iter().map(|r| r.extension).collect::<Option<Vec<_>>>();
        let fam = PlaneFamily { field, planes, to_base, extension };
        fam.check_isomorphisms()?;
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{ds_quadruple, pencil_pair};

    #[test]
    fn family_round_trip() {
        let (fam, _) = pencil_pair(2).unwrap();
        let json = PlaneFile::from_family(&fam).to_json().unwrap();
        let file = PlaneFile::parse(&json).unwrap();
        let back = file.to_family().unwrap();
        for (a, b) in back.planes.iter().zip(&fam.planes) {
            assert_eq!(a.lines(), b.lines());
            assert_eq!(a.provenance(), b.provenance());
        }
        assert_eq!(back.to_base, fam.to_base);
        assert_eq!(back.extension, fam.extension);
        assert_eq!(file.planes[0].field.modulus, vec![1, 1, 1]);
    }

    #[test]
    fn bare_record_and_bad_input() {
        let fam = ds_quadruple().unwrap();
        let rec = PlaneRecord::from_plane(&fam.field, &fam.planes[0]);
        let json = serde_json::to_string(&rec).unwrap();
        let file = PlaneFile::parse(&json).unwrap();
        assert_eq!(file.planes().unwrap()[0].lines(), fam.planes[0].lines());
        assert!(file.to_family().is_err());
        assert!(PlaneFile::parse("{\"format\":\"x\",\"version\":1,\"planes\":[]}").is_err());
        assert!(PlaneFile::parse("not json").is_err());
        let mut broken = rec.clone();
        broken.lines.pop();
        assert!(broken.to_plane().is_err());
    }
}
