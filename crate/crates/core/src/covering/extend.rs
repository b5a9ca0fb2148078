//! Two extra columns on line z for Sherwood arrays built from affine planes.

use crate::error::{Error, Result};
use crate::geometry::{point_coords, Coords};

use super::cphf::CphfArray;

/// Appends columns for `(1:0:0)` and `(0:1:0)`.
///
/// With `entries`, row `i` receives `entries[i]`; otherwise the entries come
/// from [`search_extension`]. Either way the result must keep index at least
/// `rows − 1`.
pub fn extend_scphf(c: &CphfArray, entries: Option<&[[Coords; 2]]>) -> Result<CphfArray> {
    if !c.is_sherwood() || c.is_extended() {
        return Err(Error::InvalidArgument("only unextended Sherwood arrays can be extended".into()));
    }
    let found;
    let entries = match entries {
        Some(e) => {
            if e.len() < c.rows() {
                return Err(Error::DimensionMismatch { expected: c.rows(), found: e.len() });
            }
            &e[..c.rows()]
        }
        None => {
            found = search_extension(c)?;
            &found[..]
        }
    };
    let k = c.cols() + 2;
    let mut flat = Vec::with_capacity(c.rows() * k);
    for (r, extra) in entries.iter().enumerate() {
        flat.extend_from_slice(c.row(r));
        flat.extend_from_slice(extra);
    }
    let out = CphfArray::new(c.field(), c.rows(), k, flat, true)?;
    let want = c.rows() as u32 - 1;
    if out.lambda() < want {
        return Err(Error::Verification(format!("extended index {} is below {want}", out.lambda())));
    }
    Ok(out)
}

/// Line-z vectors in search order: `(1,0,0)`, `(0,1,0)`, then `(x,1,0)` for `x ≥ 1`.
fn line_z_vectors(q: u32) -> Vec<Coords> {
    let mut v = vec![[1, 0, 0], [0, 1, 0]];
    v.extend((1..q).map(|x| point_coords(q, q * q + x)));
    v
}

/// Per row, an ordered pair of distinct line-z vectors such that every
/// column pair is collinear with each extra entry in at most one row.
///
/// That is exactly the condition for index `rows − 1` on triples that use
/// one extra column; triples using both are always independent. The result
/// is the lexicographically first pair of valid single-column assignments
/// that differ in every row.
pub fn search_extension(c: &CphfArray) -> Result<Vec<[Coords; 2]>> {
    if !c.is_sherwood() || c.is_extended() {
        return Err(Error::InvalidArgument("only unextended Sherwood arrays can be extended".into()));
    }
    let f = c.field();
    let k = c.cols();
    let npairs = k * (k - 1) / 2;
    let words = npairs.div_ceil(64);
    let dirs = line_z_vectors(c.q());
    // dependent[r][d]: pairs of columns collinear with direction d in row r
    let dependent: Vec<Vec<Vec<u64>>> = (0..c.rows())
        .map(|r| {
            dirs.iter()
                .map(|&d| {
                    let mut mask = vec![0u64; words];
                    let mut idx = 0;
                    for a in 0..k {
                        for b in a + 1..k {
                            if !f.independent3(c.entry(r, a), c.entry(r, b), d) {
                                mask[idx / 64] |= 1 << (idx % 64);
                            }
                            idx += 1;
                        }
                    }
                    mask
                })
                .collect()
        })
        .collect();

    let valid = assignments(&dependent, words);
    for (i, x) in valid.iter().enumerate() {
        if let Some(y) = valid[i + 1..].iter().find(|y| x.iter().zip(y.iter()).all(|(a, b)| a != b)) {
            return Ok(x.iter().zip(y).map(|(&a, &b)| [dirs[a], dirs[b]]).collect());
        }
    }
    Err(Error::SearchExhausted(format!(
        "{} single-column assignments for {} rows, no two disjoint",
        valid.len(),
        c.rows()
    )))
}

/// Every choice of one direction per row with pairwise disjoint dependent
/// sets, in lexicographic order.
fn assignments(dependent: &[Vec<Vec<u64>>], words: usize) -> Vec<Vec<usize>> {
    fn go(
        r: usize,
        dependent: &[Vec<Vec<u64>>],
        used: &mut Vec<u64>,
        choice: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if r == dependent.len() {
            out.push(choice.clone());
            return;
        }
        for (d, mask) in dependent[r].iter().enumerate() {
            if used.iter().zip(mask).any(|(u, m)| u & m != 0) {
                continue;
            }
            used.iter_mut().zip(mask).for_each(|(u, m)| *u |= m);
            choice.push(d);
            go(r + 1, dependent, used, choice, out);
            choice.pop();
            used.iter_mut().zip(mask).for_each(|(u, m)| *u &= !m);
        }
    }
    let mut out = Vec::new();
    go(0, dependent, &mut vec![0u64; words], &mut Vec::with_capacity(dependent.len()), &mut out);
    out
}
