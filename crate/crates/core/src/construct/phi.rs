//! Affine triples from the additive maps `φ_k(x, y) = (x^{2^k} + y, y^{2^k} + x + y)`.

use crate::error::{Error, Result};
use crate::field::{gcd, Field};
use crate::geometry::projective::MAX_AFFINE_ORDER;
use crate::geometry::build_ag;

use super::{identity, invert, PlaneFamily};

fn check_gcd(a: u64, n: u32) -> Result<()> {
    let g = gcd(a, n as u64);
    if g != 1 {
        return Err(Error::GcdViolation { a, b: n as u64, gcd: g });
    }
    Ok(())
}

fn affine_field(n: u32, k: u32) -> Result<Field> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidArgument(format!("need n >= 1 and k >= 1, got n = {n}, k = {k}")));
    }
    let q = 1u64 << n.min(31);
    if q > MAX_AFFINE_ORDER as u64 {
        return Err(Error::UnsupportedOrder { order: q as u32, max: MAX_AFFINE_ORDER });
    }
    Field::new(2, n, None)
}

/// `φ_k` on the affine point indices `x·q + y` of AG(2,2ⁿ).
pub fn phi_k_map(n: u32, k: u32) -> Result<Vec<u32>> {
    let field = affine_field(n, k)?;
    check_gcd(3 * k as u64, n)?;
    Ok(map_on(&field, k))
}

fn map_on(field: &Field, k: u32) -> Vec<u32> {
    let q = field.q();
    (0..q * q)
        .map(|idx| {
            let (x, y) = (idx / q, idx % q);
            let nx = field.add(field.frobenius(x, k), y);
            let ny = field.add(field.add(field.frobenius(y, k), x), y);
            nx * q + ny
        })
        .collect()
}

/// AG, AG^{φ_k} and AG^{φ_k∘φ_k}.
pub fn phi_k_triple(n: u32, k: u32) -> Result<PlaneFamily> {
    let field = affine_field(n, k)?;
    check_gcd(6 * k as u64, n)?;
    let phi = map_on(&field, k);
    let phi2: Vec<u32> = phi.iter().map(|&p| phi[p as usize]).collect();
    let ag = build_ag(&field)?.with_provenance(format!("phi-k n={n} k={k} plane=0"));
    let p1 = ag.image(&phi, format!("phi-k n={n} k={k} plane=1"));
    let p2 = ag.image(&phi2, format!("phi-k n={n} k={k} plane=2"));
    let qq = ag.num_points();
    Ok(PlaneFamily {
        field,
        planes: vec![ag, p1, p2],
        to_base: vec![identity(qq), invert(&phi), invert(&phi2)],
        extension: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixes_origin_and_is_bijective() {
        let m = phi_k_map(5, 1).unwrap();
        assert_eq!(m[0], 0);
        let mut sorted = m.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 1024);
    }

    #[test]
    fn doubling_identity() {
        // φ_{2k} = ρ ∘ φ_k ∘ φ_k ∘ ρ with ρ(x, y) = (y, x)
        let q = 32u32;
        let (p1, p2) = (phi_k_map(5, 1).unwrap(), phi_k_map(5, 2).unwrap());
        let rho = |i: u32| (i % q) * q + i / q;
        for i in 0..q * q {
            assert_eq!(p2[i as usize], rho(p1[p1[rho(i) as usize] as usize]));
        }
    }

    #[test]
    fn gcd_preconditions() {
        assert!(matches!(phi_k_triple(4, 1), Err(Error::GcdViolation { .. })));
        assert!(matches!(phi_k_map(3, 1), Err(Error::GcdViolation { .. })));
        assert!(phi_k_map(4, 1).is_ok());
        assert!(phi_k_triple(5, 1).is_ok());
    }

    #[test]
    fn additive() {
        let m = phi_k_map(5, 2).unwrap();
        for u in (0..1024u32).step_by(7) {
            for v in (0..1024u32).step_by(13) {
                assert_eq!(m[(u ^ v) as usize], m[u as usize] ^ m[v as usize]);
            }
        }
    }
}
