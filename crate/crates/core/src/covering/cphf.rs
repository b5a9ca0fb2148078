//! CPHF arrays: rows of nonzero vectors of GF(q)³, one column per point label.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::construct::PlaneFamily;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::geometry::{point_coords, Coords, Plane, PlaneKind};
use crate::verify::is_mutually_orthogoval;

#[derive(Debug, Clone, PartialEq)]
pub struct CphfArray {
    field: Field,
    rows: usize,
    cols: usize,
    /// Row-major.
    entries: Vec<Coords>,
    sherwood: bool,
    extended: bool,
    lambda: u32,
}

impl CphfArray {
    /// Validates entries, sets the flags, and computes the exact index.
    ///
    /// An array is extended when its last two columns lie on line z and all
    /// other entries have last coordinate 1; it is Sherwood when every entry
    /// outside those two columns has last coordinate 1.
    pub fn new(field: &Field, rows: usize, cols: usize, entries: Vec<Coords>, extended: bool) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        if extended && cols < 2 {
            return Err(Error::InvalidArgument("an extended array needs two extra columns".into()));
        }
        let q = field.q();
        for (i, e) in entries.iter().enumerate() {
            if *e == [0, 0, 0] {
                return Err(Error::ZeroEntry { row: i / cols, col: i % cols });
            }
            if e.iter().any(|&c| c >= q) {
                return Err(Error::Parse(format!("entry {e:?} is not over GF({q})")));
            }
        }
        let affine_cols = if extended { cols - 2 } else { cols };
        let last = |r: usize, c: usize| entries[r * cols + c][2];
        let sherwood = (0..rows).all(|r| (0..affine_cols).all(|c| last(r, c) == 1));
        if extended && !(sherwood && (0..rows).all(|r| last(r, cols - 2) == 0 && last(r, cols - 1) == 0)) {
            return Err(Error::InvalidArgument("extended arrays need affine entries and two line-z columns".into()));
        }
        let mut c = CphfArray { field: field.clone(), rows, cols, entries, sherwood, extended, lambda: 0 };
        c.lambda = verify_cphf(&c)?;
        Ok(c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> Coords {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Coords] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_sherwood(&self) -> bool {
        self.sherwood
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    /// The verified index.
    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    /// The first `r` rows.
    pub fn restrict(&self, r: usize) -> Result<CphfArray> {
        if r == 0 || r > self.rows {
            return Err(Error::InvalidArgument(format!("cannot keep {r} of {} rows", self.rows)));
        }
        CphfArray::new(&self.field, r, self.cols, self.entries[..r * self.cols].to_vec(), self.extended)
    }

    /// The given rows, in the given order.
    pub fn select(&self, rows: &[usize]) -> Result<CphfArray> {
        if rows.is_empty() || rows.iter().any(|&r| r >= self.rows) {
            return Err(Error::InvalidArgument(format!("bad row selection {rows:?} of {}", self.rows)));
        }
        let entries = rows.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        CphfArray::new(&self.field, rows.len(), self.cols, entries, self.extended)
    }

    /// Header line plus one line per row of `v1,v2,v3` entries.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "CPHF n={} t=3 k={} q={} sherwood={} extended={} lambda={}\n",
            self.rows,
            self.cols,
            self.q(),
            u8::from(self.sherwood),
            u8::from(self.extended),
            self.lambda
        );
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|e| format!("{},{},{}", e[0], e[1], e[2])).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }

    /// Parses the text form over the default field of order `q`. Returns the
    /// array (with its recomputed index) and the index declared in the header.
    pub fn parse(text: &str) -> Result<(CphfArray, u32)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty CPHF file".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("CPHF") {
            return Err(Error::Parse(format!("bad CPHF header: {header}")));
        }
        let mut get = |key: &str| -> Result<u64> {
            let kv = fields.next().ok_or_else(|| Error::Parse(format!("missing {key}")))?;
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Parse(format!("bad field {kv}")))?;
            if k != key {
                return Err(Error::Parse(format!("expected {key}, found {k}")));
            }
            v.parse().map_err(|_| Error::Parse(format!("bad value for {key}: {v}")))
        };
        let rows = get("n")? as usize;
        if get("t")? != 3 {
            return Err(Error::Parse("only strength 3 is supported".into()));
        }
        let cols = get("k")? as usize;
        let q = u32::try_from(get("q")?).map_err(|_| Error::Parse("q out of range".into()))?;
        let _sherwood = get("sherwood")?;
        let extended = get("extended")? == 1;
        let declared = get("lambda")? as u32;
        let field = Field::gf(q)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for line in lines.by_ref().take(rows) {
            for cell in line.split_whitespace() {
                let parts: Vec<u32> = cell
                    .split(',')
                    .map(|p| p.parse().map_err(|_| Error::Parse(format!("bad entry {cell}"))))
                    .collect::<Result<_>>()?;
                let e: Coords = parts.try_into().map_err(|_| Error::Parse(format!("entry {cell} is not a 3-vector")))?;
                entries.push(e);
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing rows after the declared count".into()));
        }
        Ok((CphfArray::new(&field, rows, cols, entries, extended)?, declared))
    }
}

/// Exact index: the minimum over column triples of rows whose three entries are independent.
pub fn verify_cphf(c: &CphfArray) -> Result<u32> {
    if let Some(i) = c.entries.iter().position(|e| *e == [0, 0, 0]) {
        return Err(Error::ZeroEntry { row: i / c.cols, col: i % c.cols });
    }
    let k = c.cols;
    if k < 3 {
        return Ok(c.rows as u32);
    }
    let f = &c.field;
    let min = (0..k)
        .into_par_iter()
        .map(|a| {
            let mut best = u32::MAX;
            for b in a + 1..k {
                for col in b + 1..k {
                    let n = (0..c.rows)
                        .filter(|&r| f.independent3(c.entry(r, a), c.entry(r, b), c.entry(r, col)))
                        .count() as u32;
                    best = best.min(n);
                }
            }
            best
        })
        .min()
        .unwrap_or(u32::MAX);
    Ok(min)
}

/// Row `i`, column `z` is the coordinate vector of `perms[i][z]` in the
/// standard plane over `field`. Fails unless the planes are mutually
/// orthogoval and the result has index at least `s − 1`.
pub fn cphf_from_planes(field: &Field, planes: &[Plane], perms: &[Vec<u32>]) -> Result<CphfArray> {
    if planes.is_empty() || planes.len() != perms.len() {
        return Err(Error::InvalidArgument("need one isomorphism per plane".into()));
    }
    let report = is_mutually_orthogoval(planes)?;
    if !report.orthogoval {
        return Err(Error::Verification("planes are not mutually orthogoval".into()));
    }
    let q = field.q();
    let k = planes[0].num_points();
    let mut entries = Vec::with_capacity(planes.len() * k);
    for perm in perms {
        if perm.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: perm.len() });
        }
        entries.extend(perm.iter().map(|&p| point_coords(q, p)));
    }
    let c = CphfArray::new(field, planes.len(), k, entries, false)?;
    if planes[0].kind() == PlaneKind::Affine && !c.is_sherwood() {
        return Err(Error::Verification("affine planes gave non-affine entries".into()));
    }
    if (c.lambda() as usize) + 1 < planes.len() {
        return Err(Error::Verification(format!(
            "index {} is below {} for {} planes",
            c.lambda(),
            planes.len() - 1,
            planes.len()
        )));
    }
    Ok(c)
}

pub fn cphf_from_family(fam: &PlaneFamily) -> Result<CphfArray> {
    cphf_from_planes(&fam.field, &fam.planes, &fam.to_base)
}
