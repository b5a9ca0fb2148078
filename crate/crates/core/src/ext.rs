//! GF(q³) as a relative cubic extension GF(q)[y]/(g).
//!
//! Elements are coefficient triples `[a0, a1, a2]` over the base field,
//! meaning `a0 + a1·y + a2·y²`. The base Frobenius `x ↦ x^q` fixes the
//! coefficients and only moves `y`, so it is applied as a linear map using
//! precomputed `y^q` and `y^(2q)`.

use crate::error::Result;
use crate::field::{find_irreducible_cubic_depressed, Field};

pub type ExtElem = [u32; 3];

#[derive(Debug, Clone)]
pub struct CubicExt {
    base: Field,
    /// g = y³ + g[2] y² + g[1] y + g[0]
    g: [u32; 3],
    y_q: ExtElem,
    y_2q: ExtElem,
}

impl CubicExt {
    /// Builds GF(q³) over `base`.
    ///
    /// In characteristic 2 the modulus is the first irreducible depressed
    /// cubic; otherwise the first irreducible monic cubic ordered by the
    /// code `g0 + g1·q + g2·q²`.
    pub fn new(base: &Field) -> Result<Self> {
        let g = if base.p() == 2 {
            let (b, c) = find_irreducible_cubic_depressed(base)?;
            [c, b, 0]
        } else {
            let q = base.q();
            (0..q * q * q)
                .map(|code| [code % q, code / q % q, code / (q * q)])
                .find(|g| g[0] != 0 && !cubic_has_root(base, *g))
                .expect("irreducible cubics exist over every finite field")
        };
        let mut ext = CubicExt { base: base.clone(), g, y_q: [0; 3], y_2q: [0; 3] };
        let y = [0, 1, 0];
        ext.y_q = ext.pow(y, base.q() as u64);
        ext.y_2q = ext.mul(ext.y_q, ext.y_q);
        Ok(ext)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    /// Coefficients `[g0, g1, g2]` of the monic modulus.
    pub fn modulus(&self) -> [u32; 3] {
        self.g
    }

    pub fn order(&self) -> u64 {
        (self.base.q() as u64).pow(3)
    }

    /// Integer code `a0 + a1·q + a2·q²`.
    pub fn code(&self, a: ExtElem) -> u64 {
        let q = self.base.q() as u64;
        a[0] as u64 + a[1] as u64 * q + a[2] as u64 * q * q
    }

    pub fn from_code(&self, code: u64) -> ExtElem {
        let q = self.base.q() as u64;
        [(code % q) as u32, (code / q % q) as u32, (code / (q * q)) as u32]
    }

    pub fn embed(&self, a: u32) -> ExtElem {
        [a, 0, 0]
    }

    pub fn in_base(&self, a: ExtElem) -> bool {
        a[1] == 0 && a[2] == 0
    }

    pub fn zero(&self) -> ExtElem {
        [0; 3]
    }

    pub fn one(&self) -> ExtElem {
        [1, 0, 0]
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        [f.add(a[0], b[0]), f.add(a[1], b[1]), f.add(a[2], b[2])]
    }

    pub fn neg(&self, a: ExtElem) -> ExtElem {
        let f = &self.base;
        [f.neg(a[0]), f.neg(a[1]), f.neg(a[2])]
    }

    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        self.add(a, self.neg(b))
    }

    pub fn scale(&self, s: u32, a: ExtElem) -> ExtElem {
        let f = &self.base;
        [f.mul(s, a[0]), f.mul(s, a[1]), f.mul(s, a[2])]
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let f = &self.base;
        let mut c = [0u32; 5];
        for i in 0..3 {
            if a[i] == 0 {
                continue;
            }
            for j in 0..3 {
                c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
            }
        }
        // y³ = -(g2 y² + g1 y + g0)
        for k in (3..5).rev() {
            let t = c[k];
            if t == 0 {
                continue;
            }
            c[k] = 0;
            for (i, &gi) in self.g.iter().enumerate() {
                c[k - 3 + i] = f.sub(c[k - 3 + i], f.mul(t, gi));
            }
        }
        [c[0], c[1], c[2]]
    }

    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: ExtElem) -> Option<ExtElem> {
        (a != self.zero()).then(|| self.pow(a, self.order() - 2))
    }

    /// The base Frobenius `x ↦ x^q`.
    pub fn frobenius(&self, a: ExtElem) -> ExtElem {
        let t1 = self.scale(a[1], self.y_q);
        let t2 = self.scale(a[2], self.y_2q);
        self.add(self.add(self.embed(a[0]), t1), t2)
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        (0..self.order()).map(|c| self.from_code(c))
    }

    /// Determinant of a 3×3 matrix over GF(q³), row-major.
    pub fn det3(&self, m: &[[ExtElem; 3]; 3]) -> ExtElem {
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            self.sub(self.mul(m[r1][c1], m[r2][c2]), self.mul(m[r1][c2], m[r2][c1]))
        };
        let t0 = self.mul(m[0][0], minor(1, 2, 1, 2));
        let t1 = self.mul(m[0][1], minor(1, 2, 0, 2));
        let t2 = self.mul(m[0][2], minor(1, 2, 0, 1));
        self.add(self.sub(t0, t1), t2)
    }

    /// Inverse of a 3×3 matrix by the adjugate, or `None` when singular.
    pub fn inv3(&self, m: &[[ExtElem; 3]; 3]) -> Option<[[ExtElem; 3]; 3]> {
        let det_inv = self.inv(self.det3(m))?;
        let mut out = [[self.zero(); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                // cofactor C_ji
                let r: Vec<usize> = (0..3).filter(|&r| r != j).collect();
                let c: Vec<usize> = (0..3).filter(|&c| c != i).collect();
                let minor = self.sub(
                    self.mul(m[r[0]][c[0]], m[r[1]][c[1]]),
                    self.mul(m[r[0]][c[1]], m[r[1]][c[0]]),
                );
                let signed = if (i + j) % 2 == 0 { minor } else { self.neg(minor) };
                *cell = self.mul(signed, det_inv);
            }
        }
        Some(out)
    }

    pub fn mat_vec(&self, m: &[[ExtElem; 3]; 3], v: [ExtElem; 3]) -> [ExtElem; 3] {
        let mut out = [self.zero(); 3];
        for (i, row) in m.iter().enumerate() {
            for j in 0..3 {
                out[i] = self.add(out[i], self.mul(row[j], v[j]));
            }
        }
        out
    }
}

fn cubic_has_root(f: &Field, g: [u32; 3]) -> bool {
    f.elements().any(|x| f.eval_poly(&[g[0], g[1], g[2], 1], x) == 0)
}
