//! 2×2 matrix models of the Lorentzian space forms.
//!
//! Minkowski 3-space E³₁ is the traceless part of M₂ℝ with
//! ⟨X,Y⟩ = ½ tr(XY); the full M₂ℝ models the semi-Euclidean 4-space E⁴₂
//! with ⟨X,Y⟩ = ½{tr(XY) − tr X · tr Y} = −det on the diagonal. Anti de
//! Sitter space H³₁ is SL₂ℝ (det = 1), acted on by SL₂ℝ × SL₂ℝ through
//! (g₁,g₂)·X = g₁ X g₂⁻¹. De Sitter space S³₁ sits inside the Hermitian
//! 2×2 matrices (the Minkowski 4-space E⁴₁) as the det = −1 shell, acted
//! on by SL₂ℂ through g·X = g X g*.
//!
//! Coordinates: a 4-vector (p₀,p₁,p₂,p₃) corresponds to
//! p₀·1 + p₁·𝐢 + p₂·𝐣′ + p₃·𝐤′ in M₂ℝ and to
//! [[p₀+p₁, p₃−i p₂], [p₃+i p₂, p₀−p₁]] in the Hermitian model.

use crate::complex::{c64, C64};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::mat2::{mat2c, mat2r, Mat2C, Mat2R, BASIS_IP, ID2};
use serde::{Deserialize, Serialize};

/// ⟨X,Y⟩ on M₂ℝ ≅ E⁴₂. Restricted to traceless matrices this is the
/// Minkowski 3-metric ½ tr(XY).
pub fn scalar_m2r(x: &Mat2R, y: &Mat2R) -> f64 {
    let xy = *x * *y;
    0.5 * (xy.trace() - x.trace() * y.trace())
}

/// ⟨X,Y⟩ on Hermitian matrices ≅ E⁴₁: −½ tr(𝐢′ X 𝐢′ Yᵗ). The imaginary
/// part vanishes for Hermitian arguments and is discarded.
pub fn scalar_herm(x: &Mat2C, y: &Mat2C) -> f64 {
    let yt = mat2c(y.a, y.c, y.b, y.d);
    let m = BASIS_IP * *x * BASIS_IP * yt;
    -0.5 * m.trace().re
}

/// Checked variant of [`scalar_herm`]: rejects non-Hermitian inputs.
pub fn scalar_herm_checked(x: &Mat2C, y: &Mat2C, tol: &Tolerances) -> Result<f64> {
    for m in [x, y] {
        let defect = m.hermitian_defect();
        if defect > tol.eps_herm {
            return Err(Error::NotHermitian(defect));
        }
    }
    Ok(scalar_herm(x, y))
}

/// Embed a Minkowski 3-vector (p₁,p₂,p₃) as a traceless real matrix.
pub fn embed_e31(p: [f64; 3]) -> Mat2R {
    mat2r(-p[2], -p[0] + p[1], p[0] + p[1], p[2])
}

/// Inverse of [`embed_e31`]. Exact on traceless input.
pub fn extract_e31(m: &Mat2R) -> [f64; 3] {
    [(m.c - m.b) / 2.0, (m.b + m.c) / 2.0, (m.d - m.a) / 2.0]
}

/// Embed a 4-vector into M₂ℝ ≅ E⁴₂ (used for anti de Sitter points).
pub fn embed_e42(p: [f64; 4]) -> Mat2R {
    mat2r(p[0] - p[3], -p[1] + p[2], p[1] + p[2], p[0] + p[3])
}

pub fn extract_e42(m: &Mat2R) -> [f64; 4] {
    [
        (m.a + m.d) / 2.0,
        (m.c - m.b) / 2.0,
        (m.b + m.c) / 2.0,
        (m.d - m.a) / 2.0,
    ]
}

/// Embed a 4-vector into the Hermitian model ≅ E⁴₁ (de Sitter points).
pub fn embed_herm(p: [f64; 4]) -> Mat2C {
    mat2c(
        C64::real(p[0] + p[1]),
        c64(p[3], -p[2]),
        c64(p[3], p[2]),
        C64::real(p[0] - p[1]),
    )
}

pub fn extract_herm(m: &Mat2C) -> [f64; 4] {
    [
        (m.a.re + m.d.re) / 2.0,
        (m.a.re - m.d.re) / 2.0,
        m.c.im,
        m.c.re,
    ]
}

/// Element of SL₂ℝ. Construction enforces |det − 1| ≤ eps_det.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sl2r(Mat2R);

impl Sl2r {
    pub fn new(m: Mat2R, tol: &Tolerances) -> Result<Sl2r> {
        let err = (m.det() - 1.0).abs();
        if err > tol.eps_det {
            return Err(Error::DetDrift { target: 1.0, err });
        }
        Ok(Sl2r(m))
    }

    pub fn identity() -> Sl2r {
        Sl2r(ID2)
    }

    /// Wrap without the det check. For integrator internals that renormalize
    /// on their own schedule.
    pub fn new_unchecked(m: Mat2R) -> Sl2r {
        Sl2r(m)
    }

    pub fn matrix(&self) -> &Mat2R {
        &self.0
    }

    pub fn mul(&self, o: &Sl2r) -> Sl2r {
        Sl2r(self.0 * o.0)
    }

    pub fn inverse(&self) -> Sl2r {
        // adjugate: exact inverse for det = 1
        let m = self.0;
        Sl2r(mat2r(m.d, -m.b, -m.c, m.a).scale(1.0 / m.det()))
    }

    /// Rescale by det^{-1/2}. Requires det > 0, which holds throughout the
    /// identity component reached by frame integration.
    pub fn renormalized(&self) -> Sl2r {
        let det = self.0.det();
        Sl2r(self.0.scale(1.0 / det.sqrt()))
    }

    pub fn det_drift(&self) -> f64 {
        (self.0.det() - 1.0).abs()
    }
}

/// Element of SL₂ℂ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sl2c(Mat2C);

impl Sl2c {
    pub fn new(m: Mat2C, tol: &Tolerances) -> Result<Sl2c> {
        let d = m.det();
        let err = (d - C64::ONE).abs();
        if err > tol.eps_det {
            return Err(Error::DetDrift { target: 1.0, err });
        }
        Ok(Sl2c(m))
    }

    pub fn identity() -> Sl2c {
        Sl2c(crate::mat2::ID2C)
    }

    pub fn new_unchecked(m: Mat2C) -> Sl2c {
        Sl2c(m)
    }

    pub fn matrix(&self) -> &Mat2C {
        &self.0
    }

    pub fn mul(&self, o: &Sl2c) -> Sl2c {
        Sl2c(self.0 * o.0)
    }

    pub fn inverse(&self) -> Sl2c {
        Sl2c(self.0.inverse())
    }

    /// Rescale by the principal complex square root of det.
    pub fn renormalized(&self) -> Sl2c {
        let s = self.0.det().sqrt().recip();
        Sl2c(self.0.scale(s))
    }

    pub fn det_drift(&self) -> f64 {
        (self.0.det() - C64::ONE).abs()
    }
}

/// Ad(a)X = a X a⁻¹. An isometry of E³₁ that preserves tracelessness.
pub fn ad_action(a: &Sl2r, x: &Mat2R) -> Mat2R {
    *a.matrix() * *x * *a.inverse().matrix()
}

/// Which space form an immersion lands in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    /// Minkowski 3-space, curvature 0.
    E31,
    /// De Sitter 3-space, curvature +1.
    S31,
    /// Anti de Sitter 3-space, curvature −1.
    H31,
}

impl Ambient {
    pub fn curvature(&self) -> f64 {
        match self {
            Ambient::E31 => 0.0,
            Ambient::S31 => 1.0,
            Ambient::H31 => -1.0,
        }
    }

    pub fn from_c(c: i8) -> Result<Ambient> {
        match c {
            0 => Ok(Ambient::E31),
            1 => Ok(Ambient::S31),
            -1 => Ok(Ambient::H31),
            _ => Err(Error::config(format!("curvature label must be -1, 0 or 1, got {c}"))),
        }
    }
}

/// A point of one of the space forms, carried in its matrix model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmbientPoint {
    /// Traceless real matrix.
    E31(Mat2R),
    /// Hermitian matrix with det = −1.
    S31(Mat2C),
    /// Unimodular real matrix.
    H31(Mat2R),
}

impl AmbientPoint {
    pub fn ambient(&self) -> Ambient {
        match self {
            AmbientPoint::E31(_) => Ambient::E31,
            AmbientPoint::S31(_) => Ambient::S31,
            AmbientPoint::H31(_) => Ambient::H31,
        }
    }

    /// Check the defining constraint of the carrier.
    pub fn validate(&self, tol: &Tolerances) -> Result<()> {
        match self {
            AmbientPoint::E31(m) => {
                let t = m.trace().abs();
                if t > tol.eps_quadric {
                    return Err(Error::invariant("trace of Minkowski point", t, tol.eps_quadric));
                }
            }
            AmbientPoint::S31(m) => {
                let defect = m.hermitian_defect();
                if defect > tol.eps_quadric {
                    return Err(Error::NotHermitian(defect));
                }
                let err = (m.det() + C64::ONE).abs();
                if err > tol.eps_quadric {
                    return Err(Error::DetDrift { target: -1.0, err });
                }
            }
            AmbientPoint::H31(m) => {
                let err = (m.det() - 1.0).abs();
                if err > tol.eps_quadric {
                    return Err(Error::DetDrift { target: 1.0, err });
                }
            }
        }
        Ok(())
    }

    /// Ambient 4-vector coordinates (p₀..p₃); E³₁ points get p₀ = 0.
    pub fn coords(&self) -> [f64; 4] {
        match self {
            AmbientPoint::E31(m) => {
                let p = extract_e31(m);
                [0.0, p[0], p[1], p[2]]
            }
            AmbientPoint::S31(m) => extract_herm(m),
            AmbientPoint::H31(m) => extract_e42(m),
        }
    }
}

/// Natural projection onto H³₁: (g₁,g₂) ↦ g₁ g₂⁻¹.
pub fn proj_h(g1: &Sl2r, g2: &Sl2r, tol: &Tolerances) -> Result<AmbientPoint> {
    let m = g1.mul(&g2.inverse());
    let p = AmbientPoint::H31(*m.matrix());
    p.validate(tol)?;
    Ok(p)
}

/// Natural projection onto S³₁: g ↦ g 𝐢′ g*.
pub fn proj_s(g: &Sl2c, tol: &Tolerances) -> Result<AmbientPoint> {
    let m = *g.matrix() * BASIS_IP * g.matrix().conj_transpose();
    let p = AmbientPoint::S31(m);
    p.validate(tol)?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat2::{BASIS_I, BASIS_J, BASIS_K};
    use proptest::prelude::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn signature_on_basis_is_diag_m1_p1_p1() {
        // hand expansion of the scalar product
        assert_eq!(scalar_m2r(&BASIS_I, &BASIS_I), -1.0);
        assert_eq!(scalar_m2r(&BASIS_J, &BASIS_J), 1.0);
        assert_eq!(scalar_m2r(&BASIS_K, &BASIS_K), 1.0);
        assert_eq!(scalar_m2r(&BASIS_I, &BASIS_J), 0.0);
        assert_eq!(scalar_m2r(&BASIS_I, &BASIS_K), 0.0);
        assert_eq!(scalar_m2r(&BASIS_J, &BASIS_K), 0.0);
    }

    #[test]
    fn embed_unit_p1_is_basis_i() {
        assert_eq!(embed_e31([1.0, 0.0, 0.0]), BASIS_I);
        assert_eq!(embed_e31([0.0, 0.0, 0.0]), mat2r(0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn embed_extract_roundtrip() {
        let p = [3.0, -2.0, 5.0];
        assert_eq!(extract_e31(&embed_e31(p)), p);
    }

    #[test]
    fn scalar_product_is_minus_det_on_fixed_matrix() {
        let x = mat2r(1.0, 2.0, 3.0, 4.0);
        assert!((scalar_m2r(&x, &x) + x.det()).abs() < 1e-15);
        assert!((scalar_m2r(&x, &x) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn herm_scalar_on_ip_and_identity() {
        // ⟨𝐢′,𝐢′⟩ = 1 = −det 𝐢′
        assert!((scalar_herm(&BASIS_IP, &BASIS_IP) - 1.0).abs() < 1e-15);
        // identity = embedding of (1,0,0,0): ⟨X,X⟩ = −det = −1
        let id = embed_herm([1.0, 0.0, 0.0, 0.0]);
        assert!((scalar_herm(&id, &id) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn herm_embed_extract_roundtrip() {
        let p = [0.7, -1.3, 2.2, 0.4];
        let m = embed_herm(p);
        assert!(m.hermitian_defect() < 1e-15);
        let q = extract_herm(&m);
        for k in 0..4 {
            assert!((p[k] - q[k]).abs() < 1e-15);
        }
    }

    #[test]
    fn ad_action_identity_and_trace() {
        let x = embed_e31([0.3, -1.1, 0.8]);
        let id = Sl2r::identity();
        assert_eq!(ad_action(&id, &x), x);
        let a = Sl2r::new(mat2r(2.0, 0.3, 1.0, 0.65), &tol()).unwrap();
        let y = ad_action(&a, &x);
        assert!(y.trace().abs() < 1e-12);
    }

    #[test]
    fn proj_h_basics() {
        let t = tol();
        let g = Sl2r::new(mat2r(1.0, 0.5, 0.0, 1.0), &t).unwrap();
        let p = proj_h(&g, &g, &t).unwrap();
        match p {
            AmbientPoint::H31(m) => assert!((m - ID2).norm_inf() < 1e-14),
            _ => panic!("wrong ambient"),
        }
        // diagonal-subgroup invariance
        let g1 = Sl2r::new(mat2r(2.0, 1.0, 1.0, 1.0), &t).unwrap();
        let g2 = Sl2r::new(mat2r(1.0, -0.5, 0.0, 1.0), &t).unwrap();
        let h = Sl2r::new(mat2r(1.0, 0.0, 0.7, 1.0), &t).unwrap();
        let p1 = proj_h(&g1, &g2, &t).unwrap();
        let p2 = proj_h(&g1.mul(&h), &g2.mul(&h), &t).unwrap();
        match (p1, p2) {
            (AmbientPoint::H31(a), AmbientPoint::H31(b)) => {
                assert!((a - b).norm_inf() < 1e-12)
            }
            _ => panic!("wrong ambient"),
        }
    }

    #[test]
    fn proj_s_basics() {
        let t = tol();
        let id = Sl2c::identity();
        match proj_s(&id, &t).unwrap() {
            AmbientPoint::S31(m) => assert!((m - BASIS_IP).norm_inf() < 1e-15),
            _ => panic!("wrong ambient"),
        }
        // isotropy: right multiplication by a real unimodular matrix fixes 𝐢′...
        // not pointwise, but proj_s(g·r) = proj_s(g) requires r 𝐢′ r* = 𝐢′.
        let r = Sl2r::new(mat2r(1.3, 0.4, 0.5, 0.923076923076923), &t);
        let r = r.unwrap_or_else(|_| Sl2r::identity());
        let rc = Sl2c::new_unchecked(r.matrix().to_complex());
        let g = Sl2c::new_unchecked(mat2c(
            c64(1.0, 0.3),
            c64(0.2, -0.1),
            c64(0.0, 0.5),
            C64::ZERO,
        ));
        // normalize g to unit determinant first
        let g = g.renormalized();
        let p1 = proj_s(&g, &t).unwrap();
        let p2 = proj_s(&g.mul(&rc), &t).unwrap();
        match (p1, p2) {
            (AmbientPoint::S31(a), AmbientPoint::S31(b)) => {
                assert!((a - b).norm_inf() < 1e-10)
            }
            _ => panic!("wrong ambient"),
        }
    }

    #[test]
    fn renormalization_controls_drift_over_many_products() {
        let t = tol();
        // deterministic pseudo-random SL2R elements near the identity
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rnd = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut acc = Sl2r::identity();
        for step in 0..10_000 {
            let a = 0.02 * rnd();
            let b = 0.02 * rnd();
            let c = 0.02 * rnd();
            // d chosen so det = 1 exactly up to rounding
            let d = (1.0 + b * c) / (1.0 + a);
            let g = Sl2r::new_unchecked(mat2r(1.0 + a, b, c, d));
            acc = acc.mul(&g);
            if (step + 1) % t.renorm_every == 0 {
                acc = acc.renormalized();
            }
        }
        assert!(acc.det_drift() <= 1e-10, "drift {}", acc.det_drift());
    }

    proptest! {
        #[test]
        fn scalar_is_minus_det(a in -5.0..5.0f64, b in -5.0..5.0f64,
                                c in -5.0..5.0f64, d in -5.0..5.0f64) {
            let x = mat2r(a, b, c, d);
            let lhs = scalar_m2r(&x, &x);
            prop_assert!((lhs + x.det()).abs() <= 1e-12 * (1.0 + x.det().abs()));
        }

        #[test]
        fn herm_scalar_is_minus_det(p0 in -3.0..3.0f64, p1 in -3.0..3.0f64,
                                    p2 in -3.0..3.0f64, p3 in -3.0..3.0f64) {
            let x = embed_herm([p0, p1, p2, p3]);
            let d = x.det();
            prop_assert!(d.im.abs() < 1e-12);
            prop_assert!((scalar_herm(&x, &x) + d.re).abs() <= 1e-12 * (1.0 + d.re.abs()));
        }

        #[test]
        fn ad_preserves_scalar_product(
            g0 in 0.2..2.0f64, g1 in -1.0..1.0f64, g2 in -1.0..1.0f64,
            x0 in -2.0..2.0f64, x1 in -2.0..2.0f64, x2 in -2.0..2.0f64,
            y0 in -2.0..2.0f64, y1 in -2.0..2.0f64, y2 in -2.0..2.0f64,
        ) {
            // build an exact SL2R element
            let d = (1.0 + g1 * g2) / g0;
            let a = Sl2r::new_unchecked(mat2r(g0, g1, g2, d));
            let x = embed_e31([x0, x1, x2]);
            let y = embed_e31([y0, y1, y2]);
            let lhs = scalar_m2r(&ad_action(&a, &x), &ad_action(&a, &y));
            let rhs = scalar_m2r(&x, &y);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + rhs.abs()));
        }
    }
}
