//! Projective pairs from a Cremona transformation conjugated into GF(q³).

use crate::error::{Error, Result};
use crate::ext::{CubicExt, ExtElem};
use crate::field::Field;
use crate::geometry::projective::{normalize, point_index, MAX_PLANE_ORDER};
use crate::geometry::{build_pg, point_coords, Coords};

use super::{identity, perm_tag, PlaneFamily};

/// `(x:y:z) ↦ (yz : xz : xy)`, normalized. Undefined at the three fundamental points.
pub fn cremona_point(field: &Field, p: Coords) -> Result<Coords> {
    let zeros = p.iter().filter(|&&c| c == 0).count();
    if zeros >= 2 {
        return Err(Error::FundamentalPoint(p[0], p[1], p[2]));
    }
    let [x, y, z] = p;
    let img = [field.mul(y, z), field.mul(x, z), field.mul(x, y)];
    normalize(field, img).ok_or(Error::FundamentalPoint(x, y, z))
}

fn conjugates(ext: &CubicExt, w: ExtElem) -> [ExtElem; 3] {
    let wq = ext.frobenius(w);
    [w, wq, ext.frobenius(wq)]
}

/// Determinant of the circulant matrix with rows `(ω, ω^q, ω^{q²})` and its cyclic shifts.
pub fn conjugate_determinant(ext: &CubicExt, w: ExtElem) -> ExtElem {
    let [a, b, c] = conjugates(ext, w);
    ext.det3(&[[a, b, c], [b, c, a], [c, a, b]])
}

/// `x^{3q²} − 3x^{q²+q+1} + x^{3q} + x³` evaluated at `ω`.
pub fn omega_polynomial(ext: &CubicExt, w: ExtElem) -> ExtElem {
    let [a, b, c] = conjugates(ext, w);
    let cube = |t: ExtElem| ext.mul(t, ext.mul(t, t));
    let three = ext.embed(ext.base().from_int(3));
    let middle = ext.mul(three, ext.mul(a, ext.mul(b, c)));
    ext.add(ext.sub(cube(c), middle), ext.add(cube(b), cube(a)))
}

/// First element by code outside GF(q) whose conjugate triple is non-collinear.
pub fn find_omega(ext: &CubicExt) -> ExtElem {
    ext.elements()
        .find(|&w| !ext.in_base(w) && conjugate_determinant(ext, w) != ext.zero())
        .expect("a suitable element exists in every cubic extension")
}

/// σ, σ⁻¹ and the conjugated involution `Cr′ = σ ∘ Cr ∘ σ⁻¹` on PG(2,q).
#[derive(Debug, Clone)]
pub struct CremonaContext {
    pub ext: CubicExt,
    pub omega: ExtElem,
    /// Row-major; column `i` is `λᵢ Pᵢ`.
    pub sigma: [[ExtElem; 3]; 3],
    pub sigma_inv: [[ExtElem; 3]; 3],
    /// `Cr′` as a permutation of the point indices of PG(2,q).
    pub perm: Vec<u32>,
}

impl CremonaContext {
    pub fn new(field: &Field) -> Result<Self> {
        let ext = CubicExt::new(field)?;
        let omega = find_omega(&ext);
        let [a, b, c] = conjugates(&ext, omega);
        let points = [[a, b, c], [b, c, a], [c, a, b]];
        let frame: [[ExtElem; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|col| points[col][r]));
        let frame_inv = ext.inv3(&frame).ok_or(Error::SingularMatrix)?;
        let lambda = ext.mat_vec(&frame_inv, [ext.one(); 3]);
        let sigma: [[ExtElem; 3]; 3] =
            std::array::from_fn(|r| std::array::from_fn(|col| ext.mul(frame[r][col], lambda[col])));
        let sigma_inv = ext.inv3(&sigma).ok_or(Error::SingularMatrix)?;

        let q = field.q();
        let n = (q * q + q + 1) as usize;
        let mut perm = Vec::with_capacity(n);
        for idx in 0..n as u32 {
            let v = point_coords(q, idx).map(|t| ext.embed(t));
            let u = ext.mat_vec(&sigma_inv, v);
            let cr = [ext.mul(u[1], u[2]), ext.mul(u[0], u[2]), ext.mul(u[0], u[1])];
            let img = ext.mat_vec(&sigma, cr);
            perm.push(rational_point(&ext, img).ok_or_else(|| {
                Error::Construction(format!("image of point {idx} is not defined over GF({q})"))
            })?);
        }
        let ctx = CremonaContext { ext, omega, sigma, sigma_inv, perm };
        ctx.check()?;
        Ok(ctx)
    }

    fn check(&self) -> Result<()> {
        let mut seen = vec![false; self.perm.len()];
        for &p in &self.perm {
            if std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::Construction("conjugated map is not injective".into()));
            }
        }
        if self.perm.iter().enumerate().any(|(i, &p)| self.perm[p as usize] as usize != i) {
            return Err(Error::Construction("conjugated map is not an involution".into()));
        }
        Ok(())
    }

    /// `σ` applied to a point of PG(2,q), normalized over GF(q³).
    pub fn sigma_apply(&self, p: Coords) -> [ExtElem; 3] {
        let img = self.ext.mat_vec(&self.sigma, p.map(|t| self.ext.embed(t)));
        normalize_ext(&self.ext, img).expect("σ is invertible")
    }
}

fn normalize_ext(ext: &CubicExt, v: [ExtElem; 3]) -> Option<[ExtElem; 3]> {
    let pivot = *v.iter().rev().find(|&&t| t != ext.zero())?;
    let s = ext.inv(pivot)?;
    Some(v.map(|t| ext.mul(s, t)))
}

fn rational_point(ext: &CubicExt, v: [ExtElem; 3]) -> Option<u32> {
    let n = normalize_ext(ext, v)?;
    if !n.iter().all(|&t| ext.in_base(t)) {
        return None;
    }
    point_index(ext.base(), n.map(|t| t[0]))
}

/// PG(2,q) and its image under `Cr′`; the second plane maps back to the
/// first through `Cr′` itself.
pub fn cremona_pair(field: &Field) -> Result<(PlaneFamily, CremonaContext)> {
    if field.q() > MAX_PLANE_ORDER {
        return Err(Error::UnsupportedOrder { order: field.q(), max: MAX_PLANE_ORDER });
    }
    let ctx = CremonaContext::new(field)?;
    let pg = build_pg(field)?.with_provenance(format!("cremona-pg q={} plane=0", field.q()));
    let image = pg.image(&ctx.perm, format!("cremona-pg q={} plane=1 perm={}", field.q(), perm_tag(&ctx.perm)));
    let n = pg.num_points();
    let family = PlaneFamily {
        field: field.clone(),
        planes: vec![pg, image],
        to_base: vec![identity(n), ctx.perm.clone()],
        extension: None,
    };
    Ok((family, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::is_orthogoval_pair;

    #[test]
    fn cremona_point_examples() {
        let f = Field::gf(7).unwrap();
        assert_eq!(cremona_point(&f, [1, 1, 1]).unwrap(), [1, 1, 1]);
        // (6:3:2) normalized by z = 2
        let expect = normalize(&f, [6, 3, 2]).unwrap();
        assert_eq!(cremona_point(&f, [1, 2, 3]).unwrap(), expect);
        assert!(matches!(cremona_point(&f, [1, 0, 0]), Err(Error::FundamentalPoint(1, 0, 0))));
    }

    #[test]
    fn omega_for_two_is_y_plus_one() {
        let ext = CubicExt::new(&Field::gf(2).unwrap()).unwrap();
        assert_eq!(ext.modulus(), [1, 1, 0]);
        assert_eq!(find_omega(&ext), [1, 1, 0]);
        assert_eq!(conjugate_determinant(&ext, [0, 1, 0]), ext.zero());
    }

    #[test]
    fn polynomial_and_determinant_agree() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let ext = CubicExt::new(&Field::gf(q).unwrap()).unwrap();
            for w in ext.elements() {
                let by_det = conjugate_determinant(&ext, w) != ext.zero();
                let by_poly = omega_polynomial(&ext, w) != ext.zero();
                assert_eq!(by_det, by_poly, "q={q} w={w:?}");
            }
        }
    }

    #[test]
    fn sigma_fixes_unit_point_and_hits_frame() {
        for q in [2, 3, 4] {
            let ctx = CremonaContext::new(&Field::gf(q).unwrap()).unwrap();
            let one = ctx.ext.one();
            assert_eq!(ctx.sigma_apply([1, 1, 1]), [one; 3]);
            let w = ctx.omega;
            let p1 = normalize_ext(&ctx.ext, [w, ctx.ext.frobenius(w), ctx.ext.frobenius(ctx.ext.frobenius(w))]);
            assert_eq!(Some(ctx.sigma_apply([1, 0, 0])), p1);
        }
    }

    #[test]
    fn small_pairs_are_orthogoval() {
        for q in [2, 3, 4, 5] {
            let (fam, _) = cremona_pair(&Field::gf(q).unwrap()).unwrap();
            fam.planes[1].validate().unwrap();
            assert!(is_orthogoval_pair(&fam.planes[0], &fam.planes[1]).unwrap().orthogoval, "q={q}");
            fam.check_isomorphisms().unwrap();
        }
    }
}
