//! Immersions from frames: the Sym formula in E³₁, the group projections
//! into H³₁ and S³₁, and the conformal deformation of the fundamental
//! quantities.
//!
//! The τ-derivative ∂_τΦ needed by the Sym formula is integrated alongside
//! Φ as a variational system (∂_u ∂_τΦ = (∂_τΦ)U + Φ ∂_τU and likewise in
//! v) rather than by finite differencing in τ; the τ-derivatives of the Lax
//! matrices are closed-form.

use crate::error::{Error, Result};
use crate::grid::{Field, LineSamples, NullGrid};
use crate::lax::{
    build_lax, build_lax_tau_derivative, integrate_two_pass, FrameField, FrameOptions,
};
use crate::lorentz::Ambient;
use crate::mat2::{Mat2C, Mat2R, BASIS_JC, BASIS_K, ID2};
use crate::numerics::OdeState;
use crate::surface::{Orientation, Splitting, SplittingForm, SurfaceData};

/// Discrete immersion with unit normals, stored in ambient 4-vector
/// coordinates. E³₁ points keep p₀ = 0.
#[derive(Debug, Clone)]
pub struct ImmersionGrid {
    pub grid: NullGrid,
    pub ambient: Ambient,
    pub points: Field<[f64; 4]>,
    pub normals: Field<[f64; 4]>,
    /// Set when the construction produced a constant (non-immersed) map.
    pub degenerate: bool,
    /// Largest trace removed by the sl₂ℝ projection (Sym formula only).
    pub trace_projection_max: f64,
}

/// Signature of the ambient linear space containing the space form.
pub fn ambient_signature(ambient: Ambient) -> [f64; 4] {
    match ambient {
        Ambient::E31 | Ambient::H31 => [-1.0, -1.0, 1.0, 1.0],
        Ambient::S31 => [-1.0, 1.0, 1.0, 1.0],
    }
}

/// Scalar product of two ambient 4-vectors under a diagonal signature.
pub fn dot4(sig: &[f64; 4], x: &[f64; 4], y: &[f64; 4]) -> f64 {
    sig[0] * x[0] * y[0] + sig[1] * x[1] * y[1] + sig[2] * x[2] * y[2] + sig[3] * x[3] * y[3]
}

/// ⟨F,F⟩ value a point of the quadric must take (None for E³₁).
pub fn quadric_target(ambient: Ambient) -> Option<f64> {
    match ambient {
        Ambient::E31 => None,
        Ambient::S31 => Some(1.0),
        Ambient::H31 => Some(-1.0),
    }
}

impl ImmersionGrid {
    /// Max |⟨F,F⟩ − target| over the grid (0 for E³₁), and max |⟨N,N⟩ − 1|.
    pub fn quadric_residuals(&self) -> (f64, f64) {
        let sig = ambient_signature(self.ambient);
        let target = quadric_target(self.ambient);
        let mut worst_point = 0.0f64;
        let mut worst_normal = 0.0f64;
        for (i, j) in self.grid.nodes() {
            let p = self.points.at(i, j);
            let n = self.normals.at(i, j);
            if let Some(t) = target {
                worst_point = worst_point.max((dot4(&sig, &p, &p) - t).abs());
            }
            worst_normal = worst_normal.max((dot4(&sig, &n, &n) - 1.0).abs());
        }
        (worst_point, worst_normal)
    }
}

fn detect_degenerate(points: &Field<[f64; 4]>) -> bool {
    let base = points.at(0, 0);
    let mut max_dev = 0.0f64;
    for (i, j) in points.grid.nodes() {
        let p = points.at(i, j);
        for k in 0..4 {
            max_dev = max_dev.max((p[k] - base[k]).abs());
        }
    }
    max_dev < 1e-12
}

// --- variational frame integration for the Sym formula ----------------------

/// Joint state (Φ, ∂_τΦ).
#[derive(Debug, Clone, Copy, Default)]
struct PhiPsi {
    phi: Mat2R,
    psi: Mat2R,
}

impl OdeState for PhiPsi {
    fn axpy(&mut self, a: f64, other: &Self) {
        self.phi.axpy(a, &other.phi);
        self.psi.axpy(a, &other.psi);
    }
    fn scaled(&self, a: f64) -> Self {
        PhiPsi {
            phi: self.phi.scaled(a),
            psi: self.psi.scaled(a),
        }
    }
}

/// Integrate Φ and ∂_τΦ together over the grid. Returns (Φ, ∂_τΦ, path
/// discrepancy). No determinant renormalization is applied here: rescaling
/// Φ alone would break its pairing with ∂_τΦ, and the drift over one grid
/// stays far below the tolerance it guards.
pub fn integrate_frame_with_variation(
    data: &SurfaceData,
    tau: f64,
    opts: &FrameOptions,
) -> Result<(Field<Mat2R>, Field<Mat2R>, f64)> {
    let pair = build_lax(data, tau)?;
    let (dus, dvs) = build_lax_tau_derivative(data, tau)?;
    let cu = pair.us.zip_with(&dus, |u, du| (u, du));
    let cv = pair.vs.zip_with(&dvs, |v, dv| (v, dv));
    let start = PhiPsi {
        phi: ID2,
        psi: Mat2R::default(),
    };
    let (state, discrepancy) = integrate_two_pass(
        data.grid,
        &cu,
        &cv,
        start,
        |x: &PhiPsi, c: &(Mat2R, Mat2R)| PhiPsi {
            phi: x.phi * c.0,
            psi: x.psi * c.0 + x.phi * c.1,
        },
        |_, _| {},
        |a, b| (a.phi - b.phi).norm_inf().max((a.psi - b.psi).norm_inf()),
        opts.interp,
    );
    let phi = state.map(|s| s.phi);
    let psi = state.map(|s| s.psi);
    Ok((phi, psi, discrepancy))
}

/// Sym formula: F = −(∂_τΦ) Φ^{−1} with Gauss map N = Ad(Φ)𝐤′.
/// Returns the immersion and the frame field used to build it.
pub fn sym_e31(
    data: &SurfaceData,
    tau: f64,
    opts: &FrameOptions,
) -> Result<(ImmersionGrid, FrameField<Mat2R>)> {
    let (phi, psi, discrepancy) = integrate_frame_with_variation(data, tau, opts)?;
    let grid = data.grid;
    let mut points = Field::filled(grid, [0.0; 4]);
    let mut normals = Field::filled(grid, [0.0; 4]);
    let mut trace_max = 0.0f64;
    let mut det_drift = 0.0f64;
    for (i, j) in grid.nodes() {
        let phi_ij = phi.at(i, j);
        det_drift = det_drift.max((phi_ij.det() - 1.0).abs());
        let inv = phi_ij.inverse();
        let raw = -(psi.at(i, j) * inv);
        trace_max = trace_max.max(raw.trace().abs());
        let f = raw.traceless_part();
        let n = phi_ij * BASIS_K * inv;
        let pf = crate::lorentz::extract_e31(&f);
        let pn = crate::lorentz::extract_e31(&n);
        points.set(i, j, [0.0, pf[0], pf[1], pf[2]]);
        normals.set(i, j, [0.0, pn[0], pn[1], pn[2]]);
    }
    let degenerate = detect_degenerate(&points);
    let frame = FrameField {
        grid,
        phi,
        tau,
        path_discrepancy: discrepancy,
        max_det_drift: det_drift,
        zero_curvature_max: 0.0,
        zc_warning: false,
    };
    Ok((
        ImmersionGrid {
            grid,
            ambient: Ambient::E31,
            points,
            normals,
            degenerate,
            trace_projection_max: trace_max,
        },
        frame,
    ))
}

/// Anti de Sitter immersion from two frames at opposite spectral values:
/// F = Φ[τ] Φ[−τ]^{−1}, N = −Φ[τ] 𝐤′ Φ[−τ]^{−1}.
pub fn immersion_h31(
    frame_plus: &FrameField<Mat2R>,
    frame_minus: &FrameField<Mat2R>,
) -> Result<ImmersionGrid> {
    if frame_plus.tau == 0.0 {
        return Err(Error::config("anti de Sitter projection needs tau != 0"));
    }
    if (frame_plus.tau + frame_minus.tau).abs() > 1e-14 {
        return Err(Error::config("frames must sit at opposite spectral values"));
    }
    if frame_plus.grid != frame_minus.grid {
        return Err(Error::config("frame grids differ"));
    }
    let grid = frame_plus.grid;
    let mut points = Field::filled(grid, [0.0; 4]);
    let mut normals = Field::filled(grid, [0.0; 4]);
    for (i, j) in grid.nodes() {
        let a = frame_plus.phi.at(i, j);
        let binv = frame_minus.phi.at(i, j).inverse();
        let f = a * binv;
        let n = -(a * BASIS_K * binv);
        points.set(i, j, crate::lorentz::extract_e42(&f));
        normals.set(i, j, crate::lorentz::extract_e42(&n));
    }
    let degenerate = detect_degenerate(&points);
    Ok(ImmersionGrid {
        grid,
        ambient: Ambient::H31,
        points,
        normals,
        degenerate,
        trace_projection_max: 0.0,
    })
}

/// Sign convention for the de Sitter unit normal ∓ Φ 𝐣′ Φ*.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeSitterNormal {
    /// N = −Φ 𝐣′ Φ* (single-parameter immersion formula).
    Minus,
    /// N = +Φ 𝐣′ Φ* (two-parameter counterpart).
    Plus,
}

/// De Sitter immersion from a complexified frame: F = Φ 𝐢′ Φ*.
/// Hermiticity of the output is a construction identity; its defect is
/// checked against `herm_tol`.
pub fn immersion_s31(
    frame: &FrameField<Mat2C>,
    normal_sign: DeSitterNormal,
    herm_tol: f64,
) -> Result<ImmersionGrid> {
    let grid = frame.grid;
    let mut points = Field::filled(grid, [0.0; 4]);
    let mut normals = Field::filled(grid, [0.0; 4]);
    let sign = match normal_sign {
        DeSitterNormal::Minus => -1.0,
        DeSitterNormal::Plus => 1.0,
    };
    for (i, j) in grid.nodes() {
        let phi = frame.phi.at(i, j);
        let star = phi.conj_transpose();
        let f = phi * crate::mat2::BASIS_IP * star;
        let n = (phi * BASIS_JC * star).scale_re(sign);
        let defect = f.hermitian_defect().max(n.hermitian_defect());
        if defect > herm_tol {
            return Err(Error::NotHermitian(defect));
        }
        points.set(i, j, crate::lorentz::extract_herm(&f));
        normals.set(i, j, crate::lorentz::extract_herm(&n));
    }
    let degenerate = detect_degenerate(&points);
    Ok(ImmersionGrid {
        grid,
        ambient: Ambient::S31,
        points,
        normals,
        degenerate,
        trace_projection_max: 0.0,
    })
}

/// Fundamental quantities of the conformal deformation at parameter τ:
/// e^{ω_τ} = e^ω / ((1+2τf)²(1−2τg)²), f_τ = f/(1+2τf), g_τ = g/(1−2τg),
/// Q_τ = Q/(1+2τf)², R_τ = R/(1−2τg)², 1/H_τ = f_τ + g_τ. Gaussian
/// curvature follows from the metric and picks up the inverse of the
/// conformal factor, K_τ = (1+2τf)²(1−2τg)² K, so H_τ²/K_τ = H²/K.
pub fn deformed_quantities(data: &SurfaceData, tau: f64) -> Result<SurfaceData> {
    if data.c != 0 {
        return Err(Error::config("conformal deformation applies to c = 0 data"));
    }
    let sp = data
        .splitting
        .as_ref()
        .ok_or_else(|| Error::config("deformation needs the splitting (f,g)"))?;
    if sp.form != SplittingForm::Sum {
        return Err(Error::config("deformation needs the sum splitting form"));
    }
    let grid = data.grid;

    // pole scan first so the error can report every offending node
    let mut bad = Vec::new();
    for (i, j) in grid.nodes() {
        let dl = 1.0 + 2.0 * tau * sp.f.0[i];
        let dr = 1.0 - 2.0 * tau * sp.g.0[j];
        if dl.abs() < 1e-10 || dr.abs() < 1e-10 {
            bad.push((i, j));
        }
    }
    if let Some(&(i, j)) = bad.first() {
        return Err(Error::NodeGate {
            what: "conformal deformation pole".into(),
            count: bad.len(),
            i,
            j,
        });
    }

    let mut omega = Field::filled(grid, 0.0);
    let mut q = Field::filled(grid, 0.0);
    let mut r = Field::filled(grid, 0.0);
    let mut h = Field::filled(grid, 0.0);
    let f_l: Vec<f64> = sp.f.0.iter().map(|&f| f / (1.0 + 2.0 * tau * f)).collect();
    let g_l: Vec<f64> = sp.g.0.iter().map(|&g| g / (1.0 - 2.0 * tau * g)).collect();
    for (i, j) in grid.nodes() {
        let dl = 1.0 + 2.0 * tau * sp.f.0[i];
        let dr = 1.0 - 2.0 * tau * sp.g.0[j];
        omega.set(i, j, data.omega.at(i, j) - (dl * dl * dr * dr).ln());
        q.set(i, j, data.q.at(i, j) / (dl * dl));
        r.set(i, j, data.r.at(i, j) / (dr * dr));
        h.set(i, j, 1.0 / (f_l[i] + g_l[j]));
    }
    SurfaceData::new(
        grid,
        omega,
        q,
        r,
        h,
        0,
        Some(Splitting {
            f: LineSamples(f_l),
            g: LineSamples(g_l),
            form: SplittingForm::Sum,
        }),
        Orientation::Standard,
    )
}

/// Mean curvature of the curved-space-form immersion family:
/// H = (1 − 4cτ² f g)/(2τ(f + g)).
pub fn family_mean_curvature(f: f64, g: f64, tau: f64, c: f64) -> f64 {
    (1.0 - 4.0 * c * tau * tau * f * g) / (2.0 * tau * (f + g))
}

/// Conformal factor of the curved-space-form family metric,
/// I = 4τ² e^ω /((1+4cτ²f²)(1+4cτ²g²)) du dv.
pub fn family_metric_factor(eomega: f64, f: f64, g: f64, tau: f64, c: f64) -> f64 {
    4.0 * tau * tau * eomega
        / ((1.0 + 4.0 * c * tau * tau * f * f) * (1.0 + 4.0 * c * tau * tau * g * g))
}

/// Metric factor of the two-parameter anti de Sitter family,
/// I = τ²(1−cf²)(1−cg²) e^ω / ((τ²−cf²)(τ²−cg²)) du dv.
pub fn two_param_metric_factor(eomega: f64, f: f64, g: f64, tau: f64, c: f64) -> f64 {
    let t2 = tau * tau;
    t2 * (1.0 - c * f * f) * (1.0 - c * g * g) * eomega / ((t2 - c * f * f) * (t2 - c * g * g))
}

/// Metric factor of the two-parameter de Sitter family (spectral value iτ),
/// I = τ²(1−cf²)(1−cg²) e^ω / ((τ²+cf²)(τ²+cg²)) du dv.
pub fn two_param_metric_factor_s31(eomega: f64, f: f64, g: f64, tau: f64, c: f64) -> f64 {
    let t2 = tau * tau;
    t2 * (1.0 - c * f * f) * (1.0 - c * g * g) * eomega / ((t2 + c * f * f) * (t2 + c * g * g))
}

/// Mean curvature of the two-parameter de Sitter family,
/// (τf − τ^{−1}g)/(1 − cfg), where c labels the source data.
pub fn two_param_mean_curvature_s31(f: f64, g: f64, tau: f64, c: f64) -> f64 {
    (tau * f - g / tau) / (1.0 - c * f * g)
}

/// Convenience: both frames Φ[τ], Φ[−τ] for the H³₁ family from c = 0 data.
pub fn frames_at_opposite_tau(
    data: &SurfaceData,
    tau: f64,
    opts: &FrameOptions,
) -> Result<(FrameField<Mat2R>, FrameField<Mat2R>)> {
    let plus = crate::lax::integrate_frame(&build_lax(data, tau)?, ID2, opts);
    let minus = crate::lax::integrate_frame(&build_lax(data, -tau)?, ID2, opts);
    Ok((plus, minus))
}
