//! Random search for matrices `M` with `plane(M(C))` orthogoval to `plane(C)`.
//!
//! The first `2n − 1` rows of `M` are drawn from splitmix64 (one `next_u64`
//! per row, masked to `2n` bits). A partial matrix is discarded when, for some
//! members `Sᵢ`, `Sⱼ` of the line spread, four nonzero `v ∈ Sᵢ` have their
//! partial product in the projection of `Sⱼ` that drops the last coordinate.
//! Survivors are completed with every possible final row in increasing order.

use std::collections::HashSet;

use rand_xoshiro::rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{line_spread, SpreadF2};
use crate::gf2::BinaryMatrix;

/// True iff `|M(Sᵢ) ∩ Sⱼ| ≤ 2` for all members `Sᵢ`, `Sⱼ`.
pub fn is_spread_compatible(m: &BinaryMatrix, spread: &SpreadF2) -> Result<bool> {
    if m.dim() != spread.dim() {
        return Err(Error::DimensionMismatch { expected: spread.dim(), found: m.dim() });
    }
    if !m.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    Ok(compatible(m, spread, &member_table(spread)))
}

fn member_table(spread: &SpreadF2) -> Vec<u32> {
    let mut member = vec![u32::MAX; 1 << spread.dim()];
    for (j, s) in spread.members().iter().enumerate() {
        for &v in &s[1..] {
            member[v as usize] = j as u32;
        }
    }
    member
}

fn compatible(m: &BinaryMatrix, spread: &SpreadF2, member: &[u32]) -> bool {
    let mut hits = vec![0u8; spread.members().len()];
    spread.members().iter().all(|s| {
        hits.iter_mut().for_each(|h| *h = 0);
        s[1..].iter().all(|&v| {
            let j = member[m.apply(v) as usize] as usize;
            hits[j] += 1;
            hits[j] < 2
        })
    })
}

struct Projections {
    /// `inside[j][w]`: `w` is the projection of some vector of `Sⱼ`
    inside: Vec<Vec<bool>>,
}

impl Projections {
    fn new(spread: &SpreadF2) -> Self {
        let size = 1usize << (spread.dim() - 1);
        let inside = spread
            .members()
            .iter()
            .map(|s| {
                let mut t = vec![false; size];
                for &v in s {
                    t[(v >> 1) as usize] = true;
                }
                t
            })
            .collect();
        Projections { inside }
    }
}

fn partial_product(rows: &[u32], v: u32) -> u32 {
    rows.iter().fold(0, |acc, &r| (acc << 1) | ((r & v).count_ones() & 1))
}

fn rejected(rows: &[u32], spread: &SpreadF2, proj: &Projections) -> bool {
    let mut products = Vec::with_capacity(spread.members()[0].len());
    for s in spread.members() {
        products.clear();
        products.extend(s[1..].iter().map(|&v| partial_product(rows, v) as usize));
        for inside in &proj.inside {
            if products.iter().filter(|&&w| inside[w]).count() >= 4 {
                return true;
            }
        }
    }
    false
}

/// Whether the pruning rule discards a partial matrix of `2n − 1` rows.
pub fn partial_rejected(partial: &[u32], spread: &SpreadF2) -> bool {
    rejected(partial, spread, &Projections::new(spread))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixSearch {
    pub n: u32,
    pub count: usize,
    pub seed: u64,
    /// Upper bound on partial matrices drawn.
    pub max_partials: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    #[serde(skip)]
    pub matrices: Vec<BinaryMatrix>,
    pub partials: u64,
    pub pruned: u64,
    /// False when the cap stopped the search before `count` matrices were found.
    pub complete: bool,
}

const BATCH: usize = 64;

impl MatrixSearch {
    pub fn new(n: u32, count: usize, seed: u64) -> Self {
        MatrixSearch { n, count, seed, max_partials: 1 << 24 }
    }

    pub fn with_cap(mut self, max_partials: u64) -> Self {
        self.max_partials = max_partials;
        self
    }

    pub fn run(&self) -> Result<SearchOutcome> {
        if !(1..=8).contains(&self.n) {
            return Err(Error::InvalidArgument(format!("matrix search needs 1 <= n <= 8, got {}", self.n)));
        }
        let spread = line_spread(self.n)?;
        let dim = spread.dim();
        let mask = (1u64 << dim) - 1;
        let member = member_table(&spread);
        let proj = Projections::new(&spread);
        let mut rng = SplitMix64::seed_from_u64(self.seed);
        let mut seen: HashSet<Vec<u32>> = HashSet::new();
        let mut out = SearchOutcome { matrices: Vec::new(), partials: 0, pruned: 0, complete: false };

        while out.matrices.len() < self.count && out.partials < self.max_partials {
            let batch_len = (BATCH as u64).min(self.max_partials - out.partials) as usize;
            let partials: Vec<Vec<u32>> = (0..batch_len)
                .map(|_| (0..dim - 1).map(|_| (rng.next_u64() & mask) as u32).collect())
                .collect();
            let results: Vec<Option<Vec<BinaryMatrix>>> = partials
                .par_iter()
                .map(|rows| {
                    if rejected(rows, &spread, &proj) {
                        return None;
                    }
                    let found = (0..1u32 << dim)
                        .filter_map(|last| {
                            let mut full = rows.clone();
                            full.push(last);
                            let m = BinaryMatrix::new(dim, full).expect("rows fit the dimension");
                            (m.is_invertible() && compatible(&m, &spread, &member)).then_some(m)
                        })
                        .collect();
                    Some(found)
                })
                .collect();
            for r in results {
                out.partials += 1;
                match r {
                    None => out.pruned += 1,
                    Some(found) => {
                        for m in found {
                            if out.matrices.len() < self.count && seen.insert(m.rows().to_vec()) {
                                out.matrices.push(m);
                            }
                        }
                    }
                }
                if out.matrices.len() >= self.count {
                    break;
                }
            }
        }
        out.complete = out.matrices.len() >= self.count;
        Ok(out)
    }
}

/// `count` distinct spread-compatible matrices for `line_spread(n)`.
pub fn candidate_matrix_search(n: u32, count: usize, seed: u64) -> Result<Vec<BinaryMatrix>> {
    let outcome = MatrixSearch::new(n, count, seed).run()?;
    if !outcome.complete {
        return Err(Error::SearchExhausted(format!(
            "found {} of {count} matrices in {} partial draws",
            outcome.matrices.len(),
            outcome.partials
        )));
    }
    Ok(outcome.matrices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{m4, m6};

    #[test]
    fn known_matrices_are_compatible() {
        assert!(is_spread_compatible(&m4(), &line_spread(2).unwrap()).unwrap());
        let m6sq = m6().pow(2);
        assert!(is_spread_compatible(&m6sq, &line_spread(3).unwrap()).unwrap());
        assert!(!is_spread_compatible(&BinaryMatrix::identity(4), &line_spread(2).unwrap()).unwrap());
    }

    #[test]
    fn search_is_deterministic() {
        let a = candidate_matrix_search(2, 10, 7).unwrap();
        let b = candidate_matrix_search(2, 10, 7).unwrap();
        assert_eq!(a, b);
        let spread = line_spread(2).unwrap();
        for m in &a {
            assert_eq!(m.rank(), 4);
            assert!(is_spread_compatible(m, &spread).unwrap());
        }
        let mut rows: Vec<_> = a.iter().map(|m| m.rows().to_vec()).collect();
        rows.dedup();
        assert_eq!(rows.len(), 10);
    }

    #[test]
    fn cap_reports_partial_outcome() {
        let out = MatrixSearch::new(3, 1000, 0).with_cap(5).run().unwrap();
        assert!(!out.complete);
        assert_eq!(out.partials, 5);
    }
}
