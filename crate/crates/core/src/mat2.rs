//! Real and complex 2×2 matrices. These carry everything: the Lie algebra
//! sl₂ℝ (Minkowski 3-space), SL₂ℝ (anti de Sitter), SL₂ℂ frames and
//! Hermitian matrices (de Sitter).

use crate::complex::{c64, C64};
use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// Real 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Mat2R {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

pub const fn mat2r(a: f64, b: f64, c: f64, d: f64) -> Mat2R {
    Mat2R { a, b, c, d }
}

/// Identity.
pub const ID2: Mat2R = mat2r(1.0, 0.0, 0.0, 1.0);
/// Timelike basis vector 𝐢 of sl₂ℝ: ⟨𝐢,𝐢⟩ = −1.
pub const BASIS_I: Mat2R = mat2r(0.0, -1.0, 1.0, 0.0);
/// Spacelike basis vector 𝐣′: ⟨𝐣′,𝐣′⟩ = +1.
pub const BASIS_J: Mat2R = mat2r(0.0, 1.0, 1.0, 0.0);
/// Spacelike basis vector 𝐤′: ⟨𝐤′,𝐤′⟩ = +1.
pub const BASIS_K: Mat2R = mat2r(-1.0, 0.0, 0.0, 1.0);

impl Mat2R {
    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn transpose(&self) -> Mat2R {
        mat2r(self.a, self.c, self.b, self.d)
    }

    /// Inverse by adjugate. Errors on |det| below 1e-300 are the caller's
    /// problem; SL2 callers renormalize instead.
    pub fn inverse(&self) -> Mat2R {
        let det = self.det();
        mat2r(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn scale(&self, s: f64) -> Mat2R {
        mat2r(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn commutator(&self, o: &Mat2R) -> Mat2R {
        *self * *o - *o * *self
    }

    /// max |entry|
    pub fn norm_inf(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// Traceless part X − (tr X / 2)·1.
    pub fn traceless_part(&self) -> Mat2R {
        let t = self.trace() / 2.0;
        mat2r(self.a - t, self.b, self.c, self.d - t)
    }

    pub fn to_complex(&self) -> Mat2C {
        Mat2C {
            a: C64::real(self.a),
            b: C64::real(self.b),
            c: C64::real(self.c),
            d: C64::real(self.d),
        }
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_entries(e: [f64; 4]) -> Mat2R {
        mat2r(e[0], e[1], e[2], e[3])
    }
}

impl Add for Mat2R {
    type Output = Mat2R;
    fn add(self, o: Mat2R) -> Mat2R {
        mat2r(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2R {
    type Output = Mat2R;
    fn sub(self, o: Mat2R) -> Mat2R {
        mat2r(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2R {
    type Output = Mat2R;
    fn neg(self) -> Mat2R {
        self.scale(-1.0)
    }
}

impl Mul for Mat2R {
    type Output = Mat2R;
    fn mul(self, o: Mat2R) -> Mat2R {
        mat2r(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

/// Complex 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat2C {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

pub const fn mat2c(a: C64, b: C64, c: C64, d: C64) -> Mat2C {
    Mat2C { a, b, c, d }
}

/// Complex identity.
pub const ID2C: Mat2C = mat2c(C64::ONE, C64::ZERO, C64::ZERO, C64::ONE);
/// 𝐢′ = [[0, −i], [i, 0]]; Hermitian, det = −1. Base point of de Sitter space.
pub const BASIS_IP: Mat2C = mat2c(C64::ZERO, c64(0.0, -1.0), c64(0.0, 1.0), C64::ZERO);
/// 𝐣′ over ℂ.
pub const BASIS_JC: Mat2C = mat2c(C64::ZERO, C64::ONE, C64::ONE, C64::ZERO);

impl Mat2C {
    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    /// Conjugate transpose g*.
    pub fn conj_transpose(&self) -> Mat2C {
        mat2c(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn inverse(&self) -> Mat2C {
        let det = self.det();
        let r = det.recip();
        mat2c(self.d * r, -self.b * r, -self.c * r, self.a * r)
    }

    pub fn scale(&self, s: C64) -> Mat2C {
        mat2c(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn scale_re(&self, s: f64) -> Mat2C {
        mat2c(self.a.scale(s), self.b.scale(s), self.c.scale(s), self.d.scale(s))
    }

    pub fn norm_inf(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    /// max entrywise |X − X*|: zero iff Hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        let h = *self - self.conj_transpose();
        h.norm_inf()
    }

    pub fn entries(&self) -> [f64; 8] {
        [
            self.a.re, self.a.im, self.b.re, self.b.im, self.c.re, self.c.im, self.d.re,
            self.d.im,
        ]
    }

    pub fn from_entries(e: [f64; 8]) -> Mat2C {
        mat2c(c64(e[0], e[1]), c64(e[2], e[3]), c64(e[4], e[5]), c64(e[6], e[7]))
    }
}

impl Add for Mat2C {
    type Output = Mat2C;
    fn add(self, o: Mat2C) -> Mat2C {
        mat2c(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2C {
    type Output = Mat2C;
    fn sub(self, o: Mat2C) -> Mat2C {
        mat2c(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2C {
    type Output = Mat2C;
    fn neg(self) -> Mat2C {
        self.scale_re(-1.0)
    }
}

impl Mul for Mat2C {
    type Output = Mat2C;
    fn mul(self, o: Mat2C) -> Mat2C {
        mat2c(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = mat2r(2.0, 1.0, 3.0, 2.5);
        let p = m * m.inverse();
        assert!((p - ID2).norm_inf() < 1e-14);
    }

    #[test]
    fn complex_inverse_roundtrip() {
        let m = mat2c(c64(1.0, 2.0), c64(0.5, -1.0), c64(2.0, 0.0), c64(1.0, 1.0));
        let p = m * m.inverse();
        assert!((p - ID2C).norm_inf() < 1e-14);
    }

    #[test]
    fn basis_ip_is_hermitian_with_unit_negative_det() {
        assert!(BASIS_IP.hermitian_defect() == 0.0);
        let d = BASIS_IP.det();
        assert!((d.re + 1.0).abs() < 1e-15 && d.im.abs() < 1e-15);
    }
}
