//! Strength-3 covering arrays expanded from CPHFs, and their exhaustive check.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::cphf::CphfArray;

/// `N × k` array over `0..v`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringArray {
    rows: usize,
    cols: usize,
    v: u32,
    /// Declared index.
    lambda: u32,
    cells: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaWitness {
    pub cols: [usize; 3],
    pub tuple: [u32; 3],
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaReport {
    pub passes: bool,
    /// Least coverage of any tuple on any column triple.
    pub min_coverage: u32,
    /// Lexicographically first (columns, tuple) covered fewer than λ times.
    pub witness: Option<CaWitness>,
}

impl CoveringArray {
    pub fn new(rows: usize, cols: usize, v: u32, lambda: u32, cells: Vec<u32>) -> Result<Self> {
        if cells.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: cells.len() });
        }
        if let Some(i) = cells.iter().position(|&s| s >= v) {
            return Err(Error::SymbolOutOfRange { row: i / cols, col: i % cols, symbol: cells[i], v });
        }
        Ok(CoveringArray { rows, cols, v, lambda, cells })
    }

    /// `N`.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// `k`.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn lambda(&self) -> u32 {
        self.lambda
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.cells[r * self.cols..(r + 1) * self.cols]
    }

    /// Drops row `r`; used to probe tightness.
    pub fn without_row(&self, r: usize) -> CoveringArray {
        let mut cells = self.cells.clone();
        cells.drain(r * self.cols..(r + 1) * self.cols);
        CoveringArray { rows: self.rows - 1, cells, ..*self }
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("CA({};3,{},{}) lambda={}\n", self.rows, self.cols, self.v, self.lambda);
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", cells.join(" "));
        }
        s
    }

    pub fn parse(text: &str) -> Result<CoveringArray> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty CA file".into()))?;
        let bad = || Error::Parse(format!("bad CA header: {header}"));
        let (shape, lam) = header.split_once(' ').ok_or_else(bad)?;
        let inner = shape.strip_prefix("CA(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
        let (n, rest) = inner.split_once(';').ok_or_else(bad)?;
        let nums: Vec<&str> = rest.split(',').collect();
        if nums.len() != 3 || nums[0] != "3" {
            return Err(bad());
        }
        let rows: usize = n.parse().map_err(|_| bad())?;
        let cols: usize = nums[1].parse().map_err(|_| bad())?;
        let v: u32 = nums[2].parse().map_err(|_| bad())?;
        let lambda: u32 = lam.trim().strip_prefix("lambda=").and_then(|l| l.parse().ok()).ok_or_else(bad)?;
        let mut cells = Vec::with_capacity(rows * cols);
        let mut count = 0;
        for line in lines {
            let before = cells.len();
            for tok in line.split_whitespace() {
                cells.push(tok.parse().map_err(|_| Error::Parse(format!("bad symbol {tok}")))?);
            }
            if cells.len() - before != cols {
                return Err(Error::Parse(format!("row {count} has {} symbols, expected {cols}", cells.len() - before)));
            }
            count += 1;
        }
        if count != rows {
            return Err(Error::Parse(format!("found {count} rows, header declares {rows}")));
        }
        CoveringArray::new(rows, cols, v, lambda, cells)
    }
}

/// Row `h·C_i` of the expansion, `h = (h0, h1, h2)`.
fn expand_row(c: &CphfArray, r: usize, h: [u32; 3], out: &mut Vec<u32>) {
    let f = c.field();
    out.extend(c.row(r).iter().map(|e| f.add(f.add(f.mul(h[0], e[0]), f.mul(h[1], e[1])), f.mul(h[2], e[2]))));
}

fn h_of(q: u32, code: u32) -> [u32; 3] {
    [code / (q * q), code / q % q, code % q]
}

/// Expansion at index `λ′`. Plain arrays give `n(q³ − 1) + λ′` rows: every
/// nonzero `h` per CPHF row, then `λ′` zero rows. Sherwood arrays give
/// `n(q³ − q) + λ′q` rows: every `h` outside `(0, 0, c)`, then `λ′` copies
/// of the `q` constant rows.
pub fn ca_from_cphf(c: &CphfArray, lambda: usize) -> Result<CoveringArray> {
    if c.is_extended() {
        return Err(Error::InvalidArgument("use the extended expansion for extended arrays".into()));
    }
    let max = c.lambda() as usize;
    if lambda == 0 || lambda > max {
        return Err(Error::LambdaOutOfRange { requested: lambda, max });
    }
    let q = c.q();
    let k = c.cols();
    let mut cells = Vec::new();
    for r in 0..c.rows() {
        for code in 1..q * q * q {
            let h = h_of(q, code);
            if c.is_sherwood() && h[0] == 0 && h[1] == 0 {
                continue;
            }
            expand_row(c, r, h, &mut cells);
        }
    }
    if c.is_sherwood() {
        for _ in 0..lambda {
            for s in 0..q {
                cells.extend(std::iter::repeat_n(s, k));
            }
        }
    } else {
        cells.extend(std::iter::repeat_n(0, lambda * k));
    }
    let rows = cells.len() / k;
    CoveringArray::new(rows, k, q, lambda as u32, cells)
}

/// Expansion of the first `λ′ + 1` rows of an extended array: all `q³`
/// rows per CPHF row, minus the last copy of each row that is constant `c`
/// on the affine columns and `0` on the extra two. `(λ′ + 1)q³ − q` rows.
pub fn ca_from_extended_scphf(c: &CphfArray, lambda: usize) -> Result<CoveringArray> {
    if !c.is_extended() {
        return Err(Error::InvalidArgument("array is not extended".into()));
    }
    let max = c.rows() - 1;
    if lambda == 0 || lambda > max {
        return Err(Error::LambdaOutOfRange { requested: lambda, max });
    }
    let q = c.q();
    let k = c.cols();
    let mut cells = Vec::with_capacity((lambda + 1) * (q * q * q) as usize * k);
    for r in 0..=lambda {
        for code in 0..q * q * q {
            expand_row(c, r, h_of(q, code), &mut cells);
        }
    }
    let rows = cells.len() / k;
    let pattern = |s: u32, row: &[u32]| row[..k - 2].iter().all(|&x| x == s) && row[k - 2..] == [0, 0];
    let mut drop = Vec::with_capacity(q as usize);
    for s in 0..q {
        let last = (0..rows)
            .rev()
            .find(|&r| pattern(s, &cells[r * k..(r + 1) * k]))
            .ok_or_else(|| Error::Construction(format!("no repeated row for symbol {s}")))?;
        drop.push(last);
    }
    drop.sort_unstable();
    let kept: Vec<u32> = cells
        .chunks(k)
        .enumerate()
        .filter(|(r, _)| drop.binary_search(r).is_err())
        .flat_map(|(_, row)| row.iter().copied())
        .collect();
    CoveringArray::new(rows - q as usize, k, q, lambda as u32, kept)
}

/// Exhaustive census over all column triples and symbol triples.
pub fn verify_ca(a: &CoveringArray, t: u32, lambda: u32) -> Result<CaReport> {
    if t != 3 {
        return Err(Error::InvalidArgument(format!("only strength 3 is supported, got {t}")));
    }
    let k = a.cols;
    let v = a.v as usize;
    if k < 3 {
        return Err(Error::InvalidArgument("need at least three columns".into()));
    }
    let per_first: Vec<(u32, Option<CaWitness>)> = (0..k - 2)
        .into_par_iter()
        .map(|c0| {
            let mut counts = vec![0u32; v * v * v];
            let mut min = u32::MAX;
            let mut witness = None;
            for c1 in c0 + 1..k {
                for c2 in c1 + 1..k {
                    counts.iter_mut().for_each(|x| *x = 0);
                    for r in 0..a.rows {
                        let row = a.row(r);
                        counts[(row[c0] as usize * v + row[c1] as usize) * v + row[c2] as usize] += 1;
                    }
                    for (i, &n) in counts.iter().enumerate() {
                        min = min.min(n);
                        if n < lambda && witness.is_none() {
                            let tuple = [(i / (v * v)) as u32, (i / v % v) as u32, (i % v) as u32];
                            witness = Some(CaWitness { cols: [c0, c1, c2], tuple, count: n });
                        }
                    }
                }
            }
            (min, witness)
        })
        .collect();
    let min_coverage = per_first.iter().map(|p| p.0).min().unwrap_or(0);
    let witness = per_first.into_iter().find_map(|p| p.1);
    Ok(CaReport { passes: witness.is_none(), min_coverage, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{cremona_pair, ds_quadruple, pencil_pair};
    use crate::covering::{cphf_from_family, extend_scphf};
    use crate::field::Field;

    #[test]
    fn cremona_two() {
        let (fam, _) = cremona_pair(&Field::gf(2).unwrap()).unwrap();
        let c = cphf_from_family(&fam).unwrap();
        let a = ca_from_cphf(&c, 1).unwrap();
        assert_eq!((a.rows(), a.cols(), a.v()), (15, 7, 2));
        assert!(verify_ca(&a, 3, 1).unwrap().passes);
        let r = verify_ca(&a.without_row(0), 3, 1).unwrap();
        assert!(!r.passes);
        assert_eq!(r.witness.unwrap().count, 0);
        assert!(matches!(ca_from_cphf(&c, 2), Err(Error::LambdaOutOfRange { requested: 2, max: 1 })));
        assert!(matches!(ca_from_cphf(&c, 0), Err(Error::LambdaOutOfRange { .. })));
    }

    #[test]
    fn ds_quadruple_index_three() {
        let c = cphf_from_family(&ds_quadruple().unwrap()).unwrap();
        let a = ca_from_cphf(&c, 3).unwrap();
        assert_eq!(a.rows(), 107);
        assert!(verify_ca(&a, 3, 3).unwrap().passes);
        assert!(!verify_ca(&a, 3, 4).unwrap().passes);
    }

    #[test]
    fn sherwood_and_extended_q2() {
        let (fam, _) = pencil_pair(1).unwrap();
        let c = cphf_from_family(&fam).unwrap();
        let s = ca_from_cphf(&c, 1).unwrap();
        assert_eq!((s.rows(), s.cols()), (2 * (8 - 2) + 2, 4));
        assert!(verify_ca(&s, 3, 1).unwrap().passes);
        let e = extend_scphf(&c, fam.extension.as_deref()).unwrap();
        let a = ca_from_extended_scphf(&e, 1).unwrap();
        assert_eq!((a.rows(), a.cols(), a.v()), (14, 6, 2));
        assert!(verify_ca(&a, 3, 1).unwrap().passes);
        assert!(ca_from_extended_scphf(&c, 1).is_err());
        assert!(ca_from_cphf(&e, 1).is_err());
    }

    #[test]
    fn text_round_trip_and_errors() {
        let (fam, _) = cremona_pair(&Field::gf(2).unwrap()).unwrap();
        let a = ca_from_cphf(&cphf_from_family(&fam).unwrap(), 1).unwrap();
        let text = a.to_text();
        assert!(text.starts_with("CA(15;3,7,2) lambda=1\n"));
        assert_eq!(CoveringArray::parse(&text).unwrap(), a);
        assert!(matches!(
            CoveringArray::new(1, 3, 2, 1, vec![0, 2, 1]),
            Err(Error::SymbolOutOfRange { row: 0, col: 1, symbol: 2, v: 2 })
        ));
        assert!(CoveringArray::parse("CA(2;3,3,2) lambda=1\n0 0 0\n").is_err());
        assert!(verify_ca(&a, 2, 1).is_err());
    }
}
