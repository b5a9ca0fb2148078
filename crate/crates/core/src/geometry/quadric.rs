//! Ternary quadratic forms, their zero sets, and pencils of conics.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

use super::projective::{all_points, Coords};

/// `a x² + b y² + c z² + f yz + g xz + h xy`, coefficients as field codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub f: u32,
    pub g: u32,
    pub h: u32,
}

impl QuadraticForm {
    pub fn new(a: u32, b: u32, c: u32, f: u32, g: u32, h: u32) -> Self {
        QuadraticForm { a, b, c, f, g, h }
    }

    pub fn coefficients(&self) -> [u32; 6] {
        [self.a, self.b, self.c, self.f, self.g, self.h]
    }

    pub fn from_coefficients(c: [u32; 6]) -> Self {
        QuadraticForm::new(c[0], c[1], c[2], c[3], c[4], c[5])
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|&c| c == 0)
    }

    pub fn eval(&self, field: &Field, v: Coords) -> u32 {
        let [x, y, z] = v;
        let m = |s: u32, u: u32, w: u32| field.mul(s, field.mul(u, w));
        [
            m(self.a, x, x),
            m(self.b, y, y),
            m(self.c, z, z),
            m(self.f, y, z),
            m(self.g, x, z),
            m(self.h, x, y),
        ]
        .into_iter()
        .fold(0, |acc, t| field.add(acc, t))
    }

    /// Formal partial derivatives; `∂x(a x²) = 2a x`, which vanishes in characteristic 2.
    pub fn gradient(&self, field: &Field, v: Coords) -> Coords {
        let [x, y, z] = v;
        let two = |s: u32| field.add(s, s);
        let sum = |ts: [u32; 3]| ts.into_iter().fold(0, |acc, t| field.add(acc, t));
        [
            sum([field.mul(two(self.a), x), field.mul(self.g, z), field.mul(self.h, y)]),
            sum([field.mul(two(self.b), y), field.mul(self.f, z), field.mul(self.h, x)]),
            sum([field.mul(two(self.c), z), field.mul(self.f, y), field.mul(self.g, x)]),
        ]
    }

    /// `αφ + βχ + γψ` for forms `[φ, χ, ψ]`.
    pub fn combine(field: &Field, coeffs: &[u32], forms: &[QuadraticForm]) -> QuadraticForm {
        let mut out = [0u32; 6];
        for (&s, form) in coeffs.iter().zip(forms) {
            for (o, c) in out.iter_mut().zip(form.coefficients()) {
                *o = field.add(*o, field.mul(s, c));
            }
        }
        QuadraticForm::from_coefficients(out)
    }

    /// Whether the form is a nonzero scalar times the square of a linear form.
    pub fn is_double_line(&self, field: &Field) -> bool {
        if self.is_zero() {
            return false;
        }
        if field.p() == 2 {
            return self.f == 0 && self.g == 0 && self.h == 0;
        }
        // Rank of the symmetric matrix [[2a,h,g],[h,2b,f],[g,f,2c]] equals 1.
        let two = |s: u32| field.add(s, s);
        let m = [[two(self.a), self.h, self.g], [self.h, two(self.b), self.f], [self.g, self.f, two(self.c)]];
        let minor = |r: [usize; 2], c: [usize; 2]| {
            field.sub(field.mul(m[r[0]][c[0]], m[r[1]][c[1]]), field.mul(m[r[0]][c[1]], m[r[1]][c[0]]))
        };
        let pairs = [[0, 1], [0, 2], [1, 2]];
        pairs.iter().all(|&r| pairs.iter().all(|&c| minor(r, c) == 0))
    }
}

/// Indices of the points of PG(2,q) where the form vanishes, ascending.
pub fn conic_points(form: &QuadraticForm, field: &Field) -> Result<Vec<u32>> {
    if form.is_zero() {
        return Err(Error::InvalidArgument("zero quadratic form".into()));
    }
    Ok(all_points(field.q())
        .into_iter()
        .enumerate()
        .filter(|&(_, p)| form.eval(field, p) == 0)
        .map(|(i, _)| i as u32)
        .collect())
}

/// True iff no point of PG(2,q) zeroes the form and its three partials, and
/// the form is not a double line.
pub fn is_nonsingular(form: &QuadraticForm, field: &Field) -> bool {
    if form.is_zero() || form.is_double_line(field) {
        return false;
    }
    all_points(field.q())
        .into_iter()
        .all(|p| form.eval(field, p) != 0 || form.gradient(field, p) != [0, 0, 0])
}

/// Whether `points` (a set of q+1 points of PG(2,q)) has no three collinear.
pub fn is_oval_in_pg(field: &Field, points: &[u32]) -> bool {
    let q = field.q();
    if points.len() != q as usize + 1 {
        return false;
    }
    let coords: Vec<Coords> = points.iter().map(|&i| super::projective::point_coords(q, i)).collect();
    for i in 0..coords.len() {
        for j in i + 1..coords.len() {
            for k in j + 1..coords.len() {
                if !field.independent3(coords[i], coords[j], coords[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Translation-oval test for characteristic 2: `h = c = 0` and the zero set is an oval.
pub fn is_translation_oval(form: &QuadraticForm, field: &Field) -> Result<bool> {
    if field.p() != 2 {
        return Err(Error::InvalidArgument("translation ovals are defined in characteristic 2".into()));
    }
    if form.h != 0 || form.c != 0 {
        return Ok(false);
    }
    Ok(is_oval_in_pg(field, &conic_points(form, field)?))
}

/// Direct definition: the affine points of `points` are closed under
/// coordinatewise addition, `(x0+x1 : y0+y1 : 1)`.
pub fn is_additively_closed(field: &Field, points: &[u32]) -> bool {
    let q = field.q();
    let affine: Vec<u32> = points.iter().copied().filter(|&p| p < q * q).collect();
    let member: std::collections::HashSet<u32> = affine.iter().copied().collect();
    affine.iter().all(|&u| {
        affine.iter().all(|&v| {
            let (x, y) = (field.add(u / q, v / q), field.add(u % q, v % q));
            member.contains(&(x * q + y))
        })
    })
}

/// The pencil `{αφ + βχ : (α:β) ∈ PG(1,q)}`, ordered `(α:1)` by α then `(1:0)`.
///
/// Fails when a member is singular or two members share a point other than
/// `(0:0:1)`.
pub fn pencil(phi: &QuadraticForm, chi: &QuadraticForm, field: &Field) -> Result<Vec<QuadraticForm>> {
    let mut params: Vec<[u32; 2]> = field.elements().map(|a| [a, 1]).collect();
    params.push([1, 0]);
    let members: Vec<QuadraticForm> = params
        .iter()
        .map(|ab| QuadraticForm::combine(field, ab, &[*phi, *chi]))
        .collect();
    let origin = 0u32; // (0:0:1)
    let mut owner = vec![usize::MAX; (field.q() * field.q() + field.q() + 1) as usize];
    for (i, m) in members.iter().enumerate() {
        if !is_nonsingular(m, field) {
            return Err(Error::Construction(format!("pencil member {i} is singular")));
        }
        for p in conic_points(m, field)? {
            if p == origin {
                continue;
            }
            if owner[p as usize] != usize::MAX {
                return Err(Error::Construction(format!(
                    "pencil members {} and {i} share point {p}",
                    owner[p as usize]
                )));
            }
            owner[p as usize] = i;
        }
    }
    Ok(members)
}
