use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaneKind {
    Projective,
    Affine,
}

impl PlaneKind {
    pub fn num_points(self, q: u32) -> usize {
        let q = q as usize;
        match self {
            PlaneKind::Projective => q * q + q + 1,
            PlaneKind::Affine => q * q,
        }
    }

    pub fn num_lines(self, q: u32) -> usize {
        let q = q as usize;
        match self {
            PlaneKind::Projective => q * q + q + 1,
            PlaneKind::Affine => q * q + q,
        }
    }

    pub fn line_size(self, q: u32) -> usize {
        match self {
            PlaneKind::Projective => q as usize + 1,
            PlaneKind::Affine => q as usize,
        }
    }
}

/// A finite projective or affine plane given by its lines over point
/// indices `0..num_points`. Lines are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plane {
    kind: PlaneKind,
    order: u32,
    num_points: usize,
    lines: Vec<Vec<u32>>,
    /// Dual coordinates `[a:b:c]` of each line, when the plane is coordinatized.
    duals: Option<Vec<[u32; 3]>>,
    /// For affine planes obtained by deleting line z: the removed point of each line.
    infinite_points: Option<Vec<u32>>,
    provenance: String,
}

impl Plane {
    /// Builds a plane from raw lines. Lines are sorted; call [`Plane::validate`]
    /// to check the incidence axioms.
    pub fn new(kind: PlaneKind, order: u32, lines: Vec<Vec<u32>>, provenance: impl Into<String>) -> Self {
        let lines = lines
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l
            })
            .collect();
        Plane {
            kind,
            order,
            num_points: kind.num_points(order),
            lines,
            duals: None,
            infinite_points: None,
            provenance: provenance.into(),
        }
    }

    pub(crate) fn with_duals(mut self, duals: Vec<[u32; 3]>) -> Self {
        self.duals = Some(duals);
        self
    }

    pub(crate) fn with_infinite_points(mut self, pts: Vec<u32>) -> Self {
        self.infinite_points = Some(pts);
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn kind(&self) -> PlaneKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    pub fn duals(&self) -> Option<&[[u32; 3]]> {
        self.duals.as_deref()
    }

    pub fn infinite_points(&self) -> Option<&[u32]> {
        self.infinite_points.as_deref()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// The plane whose lines are the images of this plane's lines under `perm`
    /// (a permutation of the point indices).
    pub fn image(&self, perm: &[u32], provenance: impl Into<String>) -> Plane {
        let lines = self
            .lines
            .iter()
            .map(|l| l.iter().map(|&p| perm[p as usize]).collect())
            .collect();
        Plane::new(self.kind, self.order, lines, provenance)
    }

    /// For each point, the indices of the lines through it (ascending).
    pub fn point_lines(&self) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::with_capacity(self.order as usize + 1); self.num_points];
        for (li, line) in self.lines.iter().enumerate() {
            for &p in line {
                out[p as usize].push(li as u32);
            }
        }
        out
    }

    /// Index of the line through two distinct points, if any.
    pub fn line_through(&self, point_lines: &[Vec<u32>], a: u32, b: u32) -> Option<usize> {
        let (la, lb) = (&point_lines[a as usize], &point_lines[b as usize]);
        let (mut i, mut j) = (0, 0);
        while i < la.len() && j < lb.len() {
            match la[i].cmp(&lb[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return Some(la[i] as usize),
            }
        }
        None
    }

    /// Position of a line with exactly this point set.
    pub fn find_line(&self, points: &[u32]) -> Option<usize> {
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        self.lines.iter().position(|l| *l == sorted)
    }

    /// Checks the plane axioms: line count and size, every point pair on
    /// exactly one line, and (affine) the parallel class structure.
    pub fn validate(&self) -> Result<()> {
        let q = self.order;
        let expect_lines = self.kind.num_lines(q);
        if self.lines.len() != expect_lines {
            return Err(Error::Verification(format!(
                "expected {expect_lines} lines, found {}",
                self.lines.len()
            )));
        }
        let size = self.kind.line_size(q);
        let m = self.num_points;
        let mut seen = vec![0u64; (m * m).div_ceil(64)];
        for (li, line) in self.lines.iter().enumerate() {
            if line.len() != size {
                return Err(Error::Verification(format!("line {li} has {} points, expected {size}", line.len())));
            }
            if line.windows(2).any(|w| w[0] == w[1]) || line.iter().any(|&p| p as usize >= m) {
                return Err(Error::Verification(format!("line {li} has repeated or out-of-range points")));
            }
            for (i, &a) in line.iter().enumerate() {
                for &b in &line[i + 1..] {
                    let k = a as usize * m + b as usize;
                    if seen[k / 64] >> (k % 64) & 1 == 1 {
                        return Err(Error::Verification(format!("points {a},{b} lie on two lines")));
                    }
                    seen[k / 64] |= 1 << (k % 64);
                }
            }
        }
        // With no pair repeated, counting pairs shows every pair is covered.
        let covered: usize = self.lines.iter().map(|l| l.len() * (l.len() - 1) / 2).sum();
        if covered != m * (m - 1) / 2 {
            return Err(Error::Verification("some point pair lies on no line".into()));
        }
        if self.kind == PlaneKind::Affine {
            let classes = self.parallel_classes();
            if classes.len() != q as usize + 1 || classes.iter().any(|c| c.len() != q as usize) {
                return Err(Error::Verification("parallel classes malformed".into()));
            }
        }
        Ok(())
    }

    /// Partition of the lines of an affine plane into parallel classes, each
    /// class listed by line index; classes ordered by their first line.
    pub fn parallel_classes(&self) -> Vec<Vec<usize>> {
        let pl = self.point_lines();
        let mut class_of = vec![usize::MAX; self.lines.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for li in 0..self.lines.len() {
            if class_of[li] != usize::MAX {
                continue;
            }
            let mut meets = vec![false; self.lines.len()];
            for &p in &self.lines[li] {
                for &l in &pl[p as usize] {
                    meets[l as usize] = true;
                }
            }
            let class: Vec<usize> = (0..self.lines.len())
                .filter(|&l| l == li || (!meets[l] && class_of[l] == usize::MAX))
                .collect();
            for &l in &class {
                class_of[l] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// Whether `set` is an oval of this plane: `q + 1` points, no three collinear.
    pub fn is_oval(&self, set: &[u32]) -> bool {
        if set.len() != self.order as usize + 1 {
            return false;
        }
        let mut member = vec![false; self.num_points];
        for &p in set {
            member[p as usize] = true;
        }
        self.lines
            .iter()
            .all(|l| l.iter().filter(|&&p| member[p as usize]).count() <= 2)
    }
}
