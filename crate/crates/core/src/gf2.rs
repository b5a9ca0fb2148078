//! Square matrices over F₂ acting on bit vectors.
//!
//! A vector of F₂^d is stored as an integer whose bit `d-1-c` holds
//! coordinate `c`, so the written bit string `t0 t1 … t(d-1)` reads as the
//! binary numeral of the code. Row `r` of a matrix uses the same layout.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryMatrix {
    dim: usize,
    rows: Vec<u32>,
}

impl fmt::Debug for BinaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryMatrix{{{}}}", self.to_text().trim_end().replace('\n', "; "))
    }
}

impl BinaryMatrix {
    pub fn new(dim: usize, rows: Vec<u32>) -> Result<Self> {
        if rows.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: rows.len() });
        }
        if dim == 0 || dim > 32 {
            return Err(Error::InvalidArgument(format!("matrix dimension {dim} out of range 1..=32")));
        }
        let mask = if dim == 32 { u32::MAX } else { (1u32 << dim) - 1 };
        if rows.iter().any(|&r| r & !mask != 0) {
            return Err(Error::InvalidArgument("row has bits beyond the matrix width".into()));
        }
        Ok(BinaryMatrix { dim, rows })
    }

    pub fn from_bits(bits: &[&[u8]]) -> Result<Self> {
        let dim = bits.len();
        let rows = bits
            .iter()
            .map(|row| {
                if row.len() != dim {
                    return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
                }
                Ok(row.iter().fold(0u32, |acc, &b| (acc << 1) | (b & 1) as u32))
            })
            .collect::<Result<Vec<_>>>()?;
        BinaryMatrix::new(dim, rows)
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim).map(|r| 1u32 << (dim - 1 - r)).collect();
        BinaryMatrix { dim, rows }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn bit(&self, r: usize, c: usize) -> u8 {
        ((self.rows[r] >> (self.dim - 1 - c)) & 1) as u8
    }

    #[inline]
    pub fn apply(&self, v: u32) -> u32 {
        self.rows
            .iter()
            .fold(0u32, |acc, &row| (acc << 1) | ((row & v).count_ones() & 1))
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BinaryMatrix) -> Result<BinaryMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        let d = self.dim;
        // Columns of `other` as bit vectors, then (AB)[r][c] = row_r(A) · col_c(B).
        let cols: Vec<u32> = (0..d)
            .map(|c| (0..d).fold(0u32, |acc, r| (acc << 1) | other.bit(r, c) as u32))
            .collect();
        let rows = self
            .rows
            .iter()
            .map(|&row| cols.iter().fold(0u32, |acc, &col| (acc << 1) | ((row & col).count_ones() & 1)))
            .collect();
        Ok(BinaryMatrix { dim: d, rows })
    }

    pub fn pow(&self, mut e: u32) -> BinaryMatrix {
        let mut acc = BinaryMatrix::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            base = base.mul(&base).expect("same dimension");
            e >>= 1;
        }
        acc
    }

    pub fn rank(&self) -> usize {
        rank_of(&self.rows)
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn inverse(&self) -> Result<BinaryMatrix> {
        let d = self.dim;
        let mut a = self.rows.clone();
        let mut inv = BinaryMatrix::identity(d).rows;
        for col in 0..d {
            let bit = 1u32 << (d - 1 - col);
            let pivot = (col..d).find(|&r| a[r] & bit != 0).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..d {
                if r != col && a[r] & bit != 0 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Ok(BinaryMatrix { dim: d, rows: inv })
    }

    /// Rows as lines of space-separated bits.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in 0..self.dim {
            let bits: Vec<String> = (0..self.dim).map(|c| self.bit(r, c).to_string()).collect();
            s.push_str(&bits.join(" "));
            s.push('\n');
        }
        s
    }

    /// Parses rows of bits; spaces between bits are optional.
    pub fn parse(text: &str) -> Result<Self> {
        let rows: Vec<Vec<u8>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(Error::Parse(format!("unexpected character {other:?} in matrix"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let refs: Vec<&[u8]> = rows.iter().map(Vec::as_slice).collect();
        BinaryMatrix::from_bits(&refs)
    }

    /// Parses blank-line separated matrix blocks.
    pub fn parse_many(text: &str) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        let mut block = String::new();
        for line in text.lines().chain(std::iter::once("")) {
            if line.trim().is_empty() {
                if !block.trim().is_empty() {
                    out.push(BinaryMatrix::parse(&block)?);
                }
                block.clear();
            } else {
                block.push_str(line);
                block.push('\n');
            }
        }
        Ok(out)
    }

    pub fn format_many(mats: &[BinaryMatrix]) -> String {
        mats.iter().map(BinaryMatrix::to_text).collect::<Vec<_>>().join("\n")
    }
}

/// Rank over F₂ of a list of row bit vectors.
pub fn rank_of(rows: &[u32]) -> usize {
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}
