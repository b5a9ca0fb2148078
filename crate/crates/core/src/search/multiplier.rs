//! Scan for prime powers `q = pᵉ` where `−4 ∈ ⟨p⟩` and `2 ∉ ⟨p⟩` modulo `q² + q + 1`.

use crate::field::prime_power;

/// The criterion for a single prime power; `None` when `q` is not one.
///
/// `p^{3e} = q³ ≡ 1 (mod q² + q + 1)`, so the subgroup is `{pⁱ : i < 3e}`.
pub fn multiplier_holds(q: u32) -> Option<bool> {
    let (p, e) = prime_power(q)?;
    let q = q as u64;
    let v = q * q + q + 1;
    let target = v - 4;
    let mut x = 1u64;
    let (mut has_target, mut has_two) = (false, false);
    for _ in 0..3 * e {
        has_target |= x == target;
        has_two |= x == 2;
        x = x * p as u64 % v;
    }
    Some(has_target && !has_two)
}

/// All prime powers `q ≤ limit` meeting the criterion, ascending.
pub fn multiplier_scan(limit: u32) -> Vec<u32> {
    (2..=limit).filter(|&q| multiplier_holds(q) == Some(true)).collect()
}
