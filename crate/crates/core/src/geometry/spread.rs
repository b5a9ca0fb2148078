//! Spreads of F₂^{2n} and the translation planes they generate.
//!
//! Vectors of F₂^{2n} are integer codes; they double as codes of
//! GF(2^{2n}) elements, so the coefficient map from the field to the
//! vector space is the identity on codes.

use crate::error::{Error, Result};
use crate::field::{embed_subfield, Field};
use crate::gf2::{rank_of, BinaryMatrix};

use super::plane::{Plane, PlaneKind};
use super::projective::Coords;

/// `2ⁿ + 1` additive subgroups of F₂^{2n} of size `2ⁿ` meeting pairwise in 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadF2 {
    n: u32,
    members: Vec<Vec<u32>>,
}

impl SpreadF2 {
    pub fn new(n: u32, members: Vec<Vec<u32>>) -> Result<Self> {
        let members = members
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m
            })
            .collect();
        let s = SpreadF2 { n, members };
        s.validate()?;
        Ok(s)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension of the ambient space, `2n`.
    pub fn dim(&self) -> usize {
        2 * self.n as usize
    }

    pub fn members(&self) -> &[Vec<u32>] {
        &self.members
    }

    pub fn validate(&self) -> Result<()> {
        let q = 1usize << self.n;
        let space = 1usize << (2 * self.n);
        if self.members.len() != q + 1 {
            return Err(Error::InvalidSpread(format!("expected {} members, found {}", q + 1, self.members.len())));
        }
        let mut hits = vec![0u8; space];
        for (i, m) in self.members.iter().enumerate() {
            if m.len() != q || m.first() != Some(&0) || m.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidSpread(format!("member {i} is not a {q}-set containing 0")));
            }
            if m.iter().any(|&v| v as usize >= space) {
                return Err(Error::InvalidSpread(format!("member {i} has a vector outside F2^{}", 2 * self.n)));
            }
            if rank_of(m) != self.n as usize {
                return Err(Error::InvalidSpread(format!("member {i} is not a subspace")));
            }
            for &v in &m[1..] {
                hits[v as usize] += 1;
            }
        }
        if hits[1..].iter().any(|&h| h != 1) {
            return Err(Error::InvalidSpread("members do not partition the nonzero vectors".into()));
        }
        Ok(())
    }

    /// Image `{M(S) : S ∈ spread}` under an invertible matrix.
    pub fn apply(&self, m: &BinaryMatrix) -> Result<SpreadF2> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: m.dim() });
        }
        if !m.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let members = self
            .members
            .iter()
            .map(|s| {
                let mut img: Vec<u32> = s.iter().map(|&v| m.apply(v)).collect();
                img.sort_unstable();
                img
            })
            .collect();
        Ok(SpreadF2 { n: self.n, members })
    }
}

/// The field GF(2^{2n}) with the default modulus.
pub fn square_field(n: u32) -> Result<Field> {
    Field::new(2, 2 * n, None)
}

/// The line spread: cosets `ω^i ⟨ω^{q+1}⟩`, `0 ≤ i ≤ q`, of GF(q²)* with 0 adjoined.
pub fn line_spread(n: u32) -> Result<SpreadF2> {
    if !(1..=8).contains(&n) {
        return Err(Error::InvalidArgument(format!("line spread needs 1 <= n <= 8, got {n}")));
    }
    let big = square_field(n)?;
    let q = 1u64 << n;
    let members = (0..=q)
        .map(|i| {
            let mut s: Vec<u32> = (0..q - 1).map(|j| big.exp(i + j * (q + 1))).collect();
            s.push(0);
            s
        })
        .collect();
    SpreadF2::new(n, members)
}

/// Affine translation plane whose lines are the cosets `v + S` of the members;
/// within a member, cosets are ordered by their least vector.
pub fn plane_from_spread(spread: &SpreadF2) -> Result<Plane> {
    spread.validate()?;
    let q = 1u32 << spread.n;
    let space = 1u32 << (2 * spread.n);
    let mut lines = Vec::with_capacity((q * q + q) as usize);
    for s in spread.members() {
        let mut covered = vec![false; space as usize];
        for v in 0..space {
            if covered[v as usize] {
                continue;
            }
            let coset: Vec<u32> = s.iter().map(|&w| v ^ w).collect();
            for &w in &coset {
                covered[w as usize] = true;
            }
            lines.push(coset);
        }
    }
    Ok(Plane::new(PlaneKind::Affine, q, lines, format!("spread-plane n={}", spread.n)))
}

/// Affine coordinates `(x, y, 1)` over the default GF(2ⁿ) of every vector
/// `v = x + y·ω` of GF(q²), where GF(2ⁿ) is embedded as the subfield and ω
/// is the designated generator. This maps the line-spread plane onto AG(2,q).
pub fn spread_coordinates(n: u32) -> Result<Vec<Coords>> {
    let big = square_field(n)?;
    let small = Field::new(2, n, None)?;
    let emb = embed_subfield(&small, &big)?;
    let q = small.q();
    let w = big.generator();
    let mut coords = vec![[0u32; 3]; (q * q) as usize];
    for x in 0..q {
        for y in 0..q {
            let v = big.add(emb[x as usize], big.mul(emb[y as usize], w));
            coords[v as usize] = [x, y, 1];
        }
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> u32 {
        u32::from_str_radix(s, 2).unwrap()
    }

    #[test]
    fn line_spread_n2_matches_table() {
        let s = line_spread(2).unwrap();
        let expect = [
            ["0000", "0001", "0110", "0111"],
            ["0000", "0010", "1100", "1110"],
            ["0000", "0100", "1011", "1111"],
            ["0000", "1000", "0101", "1101"],
            ["0000", "0011", "1010", "1001"],
        ];
        for (member, row) in s.members().iter().zip(expect) {
            let mut e: Vec<u32> = row.iter().map(|b| parse(b)).collect();
            e.sort_unstable();
            assert_eq!(*member, e);
        }
    }

    #[test]
    fn line_spread_covers_space() {
        for n in 1..=5 {
            let s = line_spread(n).unwrap();
            let mut all: Vec<u32> = s.members().iter().flatten().copied().filter(|&v| v != 0).collect();
            all.sort_unstable();
            all.dedup();
            assert_eq!(all.len() + 1, 1 << (2 * n));
            for m in s.members() {
                for &a in m {
                    for &b in m {
                        assert!(m.binary_search(&(a ^ b)).is_ok());
                    }
                }
            }
        }
    }

    #[test]
    fn first_parallel_class_n2() {
        let plane = plane_from_spread(&line_spread(2).unwrap()).unwrap();
        plane.validate().unwrap();
        assert_eq!(plane.lines().len(), 20);
        let expect = [
            ["0000", "0001", "0110", "0111"],
            ["0010", "0011", "0100", "0101"],
            ["1000", "1001", "1110", "1111"],
            ["1010", "1011", "1100", "1101"],
        ];
        for (line, row) in plane.lines().iter().zip(expect) {
            let e: Vec<u32> = row.iter().map(|b| parse(b)).collect();
            assert_eq!(*line, e);
        }
    }

    #[test]
    fn bad_spreads_are_rejected() {
        let mut members = line_spread(2).unwrap().members().to_vec();
        members[1] = members[0].clone();
        assert!(SpreadF2::new(2, members).is_err());
        let mut members = line_spread(2).unwrap().members().to_vec();
        members[0] = vec![0, 1, 2, 4];
        assert!(SpreadF2::new(2, members).is_err());
    }

    #[test]
    fn coordinates_send_spread_plane_to_ag() {
        use crate::geometry::projective::build_ag;
        for n in 1..=3 {
            let plane = plane_from_spread(&line_spread(n).unwrap()).unwrap();
            let coords = spread_coordinates(n).unwrap();
            let q = 1u32 << n;
            let perm: Vec<u32> = coords.iter().map(|c| c[0] * q + c[1]).collect();
            let mapped = plane.image(&perm, "mapped");
            let ag = build_ag(&Field::new(2, n, None).unwrap()).unwrap();
            let mut a: Vec<_> = mapped.lines().to_vec();
            let mut b: Vec<_> = ag.lines().to_vec();
            a.sort();
            b.sort();
            assert_eq!(a, b, "n={n}");
        }
    }
}
