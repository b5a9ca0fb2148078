//! Affine pairs from the pencil spanned by `x² + yz` and `y² + byz + cxz`.

use crate::error::{Error, Result};
use crate::field::{find_irreducible_cubic_depressed, Field};
use crate::geometry::{ag_from_pg, build_pg, point_coords, point_index, Coords, Plane, QuadraticForm};

use super::{identity, invert, perm_tag, PlaneFamily};

/// The forms φ, χ, ψ and the point map `P ↦ (φ(P) : χ(P) : ψ(P))`.
#[derive(Debug, Clone)]
pub struct PencilContext {
    pub field: Field,
    pub b: u32,
    pub c: u32,
    pub phi: QuadraticForm,
    pub chi: QuadraticForm,
    pub psi: QuadraticForm,
    /// The map on point indices of PG(2,q).
    pub map: Vec<u32>,
    pub inverse: Vec<u32>,
}

impl PencilContext {
    /// Uses the first irreducible `x³ + bx + c` over GF(2ⁿ).
    pub fn new(field: &Field) -> Result<Self> {
        let (b, c) = find_irreducible_cubic_depressed(field)?;
        Self::with_cubic(field, b, c)
    }

    pub fn with_cubic(field: &Field, b: u32, c: u32) -> Result<Self> {
        let phi = QuadraticForm::new(1, 0, 0, 1, 0, 0);
        let chi = QuadraticForm::new(0, 1, 0, b, c, 0);
        let psi = QuadraticForm::new(0, 0, 1, 0, 0, 0);
        let q = field.q();
        let n = (q * q + q + 1) as usize;
        let mut map = Vec::with_capacity(n);
        for idx in 0..n as u32 {
            let p = point_coords(q, idx);
            let img = [phi.eval(field, p), chi.eval(field, p), psi.eval(field, p)];
            map.push(point_index(field, img).ok_or_else(|| {
                Error::Construction(format!("point {idx} has no image"))
            })?);
        }
        let mut seen = vec![false; n];
        if map.iter().any(|&p| std::mem::replace(&mut seen[p as usize], true)) {
            return Err(Error::Construction(format!("x^3 + {b}x + {c} does not give a bijection")));
        }
        let inverse = invert(&map);
        Ok(PencilContext { field: field.clone(), b, c, phi, chi, psi, map, inverse })
    }

    pub fn apply(&self, p: Coords) -> Coords {
        let q = self.field.q();
        let idx = point_index(&self.field, p).expect("nonzero point");
        point_coords(q, self.map[idx as usize])
    }

    /// PG(2,q) and its image under the map; orthogoval except for line z.
    pub fn projective_completions(&self) -> Result<(Plane, Plane)> {
        let pg = build_pg(&self.field)?;
        let img = pg.image(&self.map, "pencil completion");
        Ok((pg, img))
    }
}

/// Index of line z, the line of points `(x:y:0)`, in `plane`.
pub fn line_z_index(plane: &Plane) -> Option<usize> {
    let q = plane.order();
    let pts: Vec<u32> = (q * q..q * q + q + 1).collect();
    plane.find_line(&pts)
}

/// AG(2,2ⁿ) and its image under the pencil map.
pub fn pencil_pair(n: u32) -> Result<(PlaneFamily, PencilContext)> {
    if !(1..=6).contains(&n) {
        return Err(Error::InvalidArgument(format!("pencil pair needs 1 <= n <= 6, got {n}")));
    }
    let field = Field::new(2, n, None)?;
    let ctx = PencilContext::new(&field)?;
    let q = field.q();
    let qq = (q * q) as usize;
    let ag = ag_from_pg(&build_pg(&field)?)?.with_provenance(format!("pencil-ag n={n} plane=0"));
    let affine_map = &ctx.map[..qq];
    let image = ag.image(
        affine_map,
        format!("pencil-ag n={n} plane=1 b={} c={} perm={}", ctx.b, ctx.c, perm_tag(affine_map)),
    );
    let inf = [point_coords(q, q * q + q), point_coords(q, q * q)];
    let ext_b = inf.map(|p| {
        let idx = point_index(&field, p).expect("nonzero point");
        point_coords(q, ctx.inverse[idx as usize])
    });
    let family = PlaneFamily {
        field,
        planes: vec![ag, image],
        to_base: vec![identity(qq), ctx.inverse[..qq].to_vec()],
        extension: Some(vec![inf, ext_b]),
    };
    Ok((family, ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::{is_orthogoval_pair, orthogoval_except_line};

    #[test]
    fn fixes_points_at_infinity() {
        let (_, ctx) = pencil_pair(3).unwrap();
        assert_eq!(ctx.apply([1, 0, 0]), [1, 0, 0]);
        assert_eq!(ctx.apply([0, 1, 0]), [0, 1, 0]);
    }

    #[test]
    fn additive_on_affine_points() {
        for n in 1..=4 {
            let (fam, ctx) = pencil_pair(n).unwrap();
            let q = fam.order();
            for u in 0..q * q {
                for v in 0..q * q {
                    let lhs = ctx.map[(u ^ v) as usize];
                    assert_eq!(lhs, ctx.map[u as usize] ^ ctx.map[v as usize]);
                }
            }
        }
    }

    #[test]
    fn conic_points_go_to_lines() {
        let (_, ctx) = pencil_pair(2).unwrap();
        let f = &ctx.field;
        let q = f.q();
        for alpha in f.elements() {
            for beta in f.elements() {
                for gamma in f.elements() {
                    if alpha == 0 && beta == 0 && gamma == 0 {
                        continue;
                    }
                    let form = QuadraticForm::combine(f, &[alpha, beta, gamma], &[ctx.phi, ctx.chi, ctx.psi]);
                    for idx in 0..q * q + q + 1 {
                        let p = point_coords(q, idx);
                        if form.eval(f, p) == 0 {
                            let [x, y, z] = ctx.apply(p);
                            let s = f.add(f.add(f.mul(alpha, x), f.mul(beta, y)), f.mul(gamma, z));
                            assert_eq!(s, 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn small_pairs_are_orthogoval() {
        for n in 1..=4 {
            let (fam, ctx) = pencil_pair(n).unwrap();
            fam.planes[1].validate().unwrap();
            fam.check_isomorphisms().unwrap();
            assert!(is_orthogoval_pair(&fam.planes[0], &fam.planes[1]).unwrap().orthogoval);
            let (a, b) = ctx.projective_completions().unwrap();
            let z = line_z_index(&a).unwrap();
            assert!(line_z_index(&b).is_some());
            assert!(orthogoval_except_line(&a, &b, z).unwrap());
        }
        assert!(pencil_pair(7).is_err());
    }
}
