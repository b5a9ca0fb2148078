//! End-to-end reproduction of named covering arrays: construct a plane set,
//! compile it to a CPHF, expand it, and verify the expansion exhaustively.

use serde::{Deserialize, Serialize};

use crate::construct::{
    cremona_pair, ds_quadruple, large_set_sts9, m4, m6, matrix_power_family, pencil_pair, PlaneFamily,
};
use crate::covering::{
    ca_from_cphf, ca_from_extended_scphf, cphf_from_family, extend_scphf, search_extension, verify_ca, CaWitness,
    CoveringArray, CphfArray,
};
use crate::error::{Error, Result};
use crate::field::Field;

/// Where a catalog entry's planes come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Cremona { q: u32 },
    Ds13,
    Pencil { n: u32 },
    Sts9Large,
    MatrixPowerM4,
    MatrixPowerM6,
}

/// How the CPHF is expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expansion {
    /// Plain or Sherwood expansion of the first `λ + 1` planes.
    Direct,
    /// Two extra columns on `λ + 1` planes.
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaParams {
    pub n: usize,
    pub k: usize,
    pub v: u32,
    pub lambda: u32,
}

impl std::fmt::Display for CaParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CA_{}({};3,{},{})", self.lambda, self.n, self.k, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub source: Source,
    pub expansion: Expansion,
    pub expected: CaParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub name: String,
    pub expected: CaParams,
    pub actual: CaParams,
    /// Family rows the CPHF was built from.
    pub planes_used: Vec<usize>,
    pub cphf_lambda: u32,
    pub coverage_passes: bool,
    pub min_coverage: u32,
    pub witness: Option<CaWitness>,
    /// Parameters match and coverage holds at the expected index.
    pub ok: bool,
}

impl PipelineReport {
    /// One line per differing parameter, empty when they agree.
    pub fn diff(&self) -> Vec<String> {
        let (e, a) = (&self.expected, &self.actual);
        let mut out = Vec::new();
        for (what, x, y) in [("N", e.n, a.n), ("k", e.k, a.k), ("v", e.v as usize, a.v as usize)] {
            if x != y {
                out.push(format!("{what}: expected {x}, got {y}"));
            }
        }
        if !self.coverage_passes {
            out.push(format!("coverage: minimum {} below index {}", self.min_coverage, e.lambda));
        }
        out
    }
}

fn entry(name: String, source: Source, expansion: Expansion, n: usize, k: usize, v: u32, lambda: u32) -> CatalogEntry {
    CatalogEntry { name, source, expansion, expected: CaParams { n, k, v, lambda } }
}

/// Every reproducible array, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    use Expansion::*;
    let mut c = Vec::new();
    c.push(entry("q2-proj-λ1".into(), Source::Cremona { q: 2 }, Direct, 15, 7, 2, 1));
    for q in [3u32, 4, 5, 7, 8, 9] {
        let n = (2 * q * q * q - 1) as usize;
        let k = (q * q + q + 1) as usize;
        c.push(entry(format!("q{q}-cremona-λ1"), Source::Cremona { q }, Direct, n, k, q, 1));
    }
    for l in 1..=3usize {
        c.push(entry(format!("q3-proj-λ{l}"), Source::Ds13, Direct, 27 * l + 26, 13, 3, l as u32));
    }
    for (n, q) in [(1u32, 2usize), (2, 4), (3, 8)] {
        c.push(entry(format!("q{q}-sherwood-λ1"), Source::Pencil { n }, Direct, 2 * (q * q * q - q) + q, q * q, q as u32, 1));
        c.push(entry(format!("q{q}-extended-λ1"), Source::Pencil { n }, Extended, 2 * q * q * q - q, q * q + 2, q as u32, 1));
    }
    for l in 1..=6usize {
        c.push(entry(format!("q3-seven-λ{l}"), Source::Sts9Large, Extended, 27 * l + 24, 11, 3, l as u32));
    }
    for l in 1..=6usize {
        c.push(entry(format!("q4-seven-λ{l}"), Source::MatrixPowerM4, Extended, 64 * l + 60, 18, 4, l as u32));
    }
    for l in [1usize, 6] {
        c.push(entry(format!("q8-seven-λ{l}"), Source::MatrixPowerM6, Extended, 512 * l + 504, 66, 8, l as u32));
    }
    c
}

pub fn catalog_entry(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

/// The plane family named by `source`.
pub fn build_source(source: Source) -> Result<PlaneFamily> {
    match source {
        Source::Cremona { q } => cremona_pair(&Field::gf(q)?).map(|(f, _)| f),
        Source::Ds13 => ds_quadruple(),
        Source::Pencil { n } => pencil_pair(n).map(|(f, _)| f),
        Source::Sts9Large => large_set_sts9(),
        Source::MatrixPowerM4 => matrix_power_family(&m4(), 7),
        Source::MatrixPowerM6 => matrix_power_family(&m6(), 7),
    }
}

/// The lexicographically first `size`-subset of rows whose Sherwood CPHF
/// admits two extra columns, together with the extended array.
pub fn first_extendable_subset(c: &CphfArray, size: usize) -> Result<(Vec<usize>, CphfArray)> {
    if size == 0 || size > c.rows() {
        return Err(Error::InvalidArgument(format!("cannot choose {size} of {} rows", c.rows())));
    }
    let mut rows: Vec<usize> = (0..size).collect();
    loop {
        let sub = c.select(&rows)?;
        if let Ok(entries) = search_extension(&sub) {
            return Ok((rows, extend_scphf(&sub, Some(&entries))?));
        }
        // next combination in lexicographic order
        let Some(i) = (0..size).rev().find(|&i| rows[i] < c.rows() - size + i) else {
            return Err(Error::SearchExhausted(format!("no {size} of {} planes admit two extra columns", c.rows())));
        };
        rows[i] += 1;
        for j in i + 1..size {
            rows[j] = rows[j - 1] + 1;
        }
    }
}

/// Builds the covering array of a catalog entry without verifying coverage.
pub fn build_entry(e: &CatalogEntry) -> Result<(Vec<usize>, CphfArray, CoveringArray)> {
    let fam = build_source(e.source)?;
    let lambda = e.expected.lambda as usize;
    let need = lambda + 1;
    if fam.len() < need {
        return Err(Error::LambdaOutOfRange { requested: lambda, max: fam.len() - 1 });
    }
    let full = cphf_from_family(&fam)?;
    match e.expansion {
        Expansion::Direct => {
            let c = full.restrict(need)?;
            let a = ca_from_cphf(&c, lambda)?;
            Ok(((0..need).collect(), c, a))
        }
        Expansion::Extended => {
            let (rows, c) = match &fam.extension {
                Some(ext) => {
                    let rows: Vec<usize> = (0..need).collect();
                    let sub = full.restrict(need)?;
                    (rows, extend_scphf(&sub, Some(&ext[..need]))?)
                }
                None => first_extendable_subset(&full, need)?,
            };
            let a = ca_from_extended_scphf(&c, lambda)?;
            Ok((rows, c, a))
        }
    }
}

/// Builds, verifies and compares against the catalog.
pub fn reproduce(e: &CatalogEntry) -> Result<PipelineReport> {
    let (planes_used, c, a) = build_entry(e)?;
    let census = verify_ca(&a, 3, e.expected.lambda)?;
    let actual = CaParams { n: a.rows(), k: a.cols(), v: a.v(), lambda: a.lambda() };
    let ok = census.passes && actual == e.expected;
    Ok(PipelineReport {
        name: e.name.clone(),
        expected: e.expected,
        actual,
        planes_used,
        cphf_lambda: c.lambda(),
        coverage_passes: census.passes,
        min_coverage: census.min_coverage,
        witness: census.witness,
        ok,
    })
}

pub fn pipeline_reproduce(name: &str) -> Result<PipelineReport> {
    let e = catalog_entry(name).ok_or_else(|| Error::InvalidArgument(format!("unknown catalog entry {name}")))?;
    reproduce(&e)
}
