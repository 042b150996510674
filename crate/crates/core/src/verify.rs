//! Independent geometric verification: recompute first and second
//! fundamental forms, mean and Gaussian curvature and the harmonic-map
//! property directly from a discrete immersion, and compare against claimed
//! data.
//!
//! Everything here works on ambient 4-vector coordinates with the diagonal
//! ambient signature; stencils are 4th-order central in the interior and
//! degrade to 2nd order on the outer two rings, so reported maxima are taken
//! over the margin-2 interior.
//!
//! Convention: I = e^ω du dv denotes the quadratic form, so as a bilinear
//! form I(∂_u, ∂_v) = ½ e^ω. The comparison layer carries the factor.

use crate::error::{Error, Result};
use crate::grid::{Field, NullGrid, ScalarField};
use crate::lorentz::Ambient;
use crate::surface::SurfaceData;
use crate::sym::{ambient_signature, dot4, ImmersionGrid};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Margin (in nodes) inside which the 4th-order stencils are valid.
pub const INTERIOR_MARGIN: usize = 2;

type V4 = [f64; 4];

fn axpy4(out: &mut V4, a: f64, x: &V4) {
    for k in 0..4 {
        out[k] += a * x[k];
    }
}

/// First derivative along a line of 4-vectors, 4th order everywhere
/// (central in the interior, offset 5-point stencils at the ends). The
/// boundary accuracy matters: quadrature-style transforms integrate along
/// the edges first, so edge errors would propagate inward.
fn line_d1(get: &impl Fn(usize) -> V4, n: usize, k: usize, h: f64) -> V4 {
    let mut out = [0.0; 4];
    if k >= 2 && k + 2 < n {
        axpy4(&mut out, 1.0, &get(k - 2));
        axpy4(&mut out, -8.0, &get(k - 1));
        axpy4(&mut out, 8.0, &get(k + 1));
        axpy4(&mut out, -1.0, &get(k + 2));
    } else if k == 0 {
        axpy4(&mut out, -25.0, &get(0));
        axpy4(&mut out, 48.0, &get(1));
        axpy4(&mut out, -36.0, &get(2));
        axpy4(&mut out, 16.0, &get(3));
        axpy4(&mut out, -3.0, &get(4));
    } else if k == 1 {
        axpy4(&mut out, -3.0, &get(0));
        axpy4(&mut out, -10.0, &get(1));
        axpy4(&mut out, 18.0, &get(2));
        axpy4(&mut out, -6.0, &get(3));
        axpy4(&mut out, 1.0, &get(4));
    } else if k == n - 2 {
        axpy4(&mut out, -1.0, &get(n - 5));
        axpy4(&mut out, 6.0, &get(n - 4));
        axpy4(&mut out, -18.0, &get(n - 3));
        axpy4(&mut out, 10.0, &get(n - 2));
        axpy4(&mut out, 3.0, &get(n - 1));
    } else {
        axpy4(&mut out, 3.0, &get(n - 5));
        axpy4(&mut out, -16.0, &get(n - 4));
        axpy4(&mut out, 36.0, &get(n - 3));
        axpy4(&mut out, -48.0, &get(n - 2));
        axpy4(&mut out, 25.0, &get(n - 1));
    }
    for x in out.iter_mut() {
        *x /= 12.0 * h;
    }
    out
}

/// Second derivative along a line; 4th order in the 5-point interior.
fn line_d2(get: &impl Fn(usize) -> V4, n: usize, k: usize, h: f64) -> V4 {
    let mut out = [0.0; 4];
    if k >= 2 && k + 2 < n {
        axpy4(&mut out, -1.0, &get(k - 2));
        axpy4(&mut out, 16.0, &get(k - 1));
        axpy4(&mut out, -30.0, &get(k));
        axpy4(&mut out, 16.0, &get(k + 1));
        axpy4(&mut out, -1.0, &get(k + 2));
        for x in out.iter_mut() {
            *x /= 12.0 * h * h;
        }
    } else if k == 0 {
        axpy4(&mut out, 2.0, &get(0));
        axpy4(&mut out, -5.0, &get(1));
        axpy4(&mut out, 4.0, &get(2));
        axpy4(&mut out, -1.0, &get(3));
        for x in out.iter_mut() {
            *x /= h * h;
        }
    } else if k == n - 1 {
        axpy4(&mut out, 2.0, &get(n - 1));
        axpy4(&mut out, -5.0, &get(n - 2));
        axpy4(&mut out, 4.0, &get(n - 3));
        axpy4(&mut out, -1.0, &get(n - 4));
        for x in out.iter_mut() {
            *x /= h * h;
        }
    } else {
        axpy4(&mut out, 1.0, &get(k - 1));
        axpy4(&mut out, -2.0, &get(k));
        axpy4(&mut out, 1.0, &get(k + 1));
        for x in out.iter_mut() {
            *x /= h * h;
        }
    }
    out
}

pub(crate) fn d_u4(f: &Field<V4>) -> Field<V4> {
    let g = f.grid;
    let mut out = Field::filled(g, [0.0; 4]);
    for j in 0..g.nv {
        for i in 0..g.nu {
            out.set(i, j, line_d1(&|k| f.at(k, j), g.nu, i, g.du));
        }
    }
    out
}

pub(crate) fn d_v4(f: &Field<V4>) -> Field<V4> {
    let g = f.grid;
    let mut out = Field::filled(g, [0.0; 4]);
    for j in 0..g.nv {
        for i in 0..g.nu {
            out.set(i, j, line_d1(&|k| f.at(i, k), g.nv, j, g.dv));
        }
    }
    out
}

fn d_uu4(f: &Field<V4>) -> Field<V4> {
    let g = f.grid;
    let mut out = Field::filled(g, [0.0; 4]);
    for j in 0..g.nv {
        for i in 0..g.nu {
            out.set(i, j, line_d2(&|k| f.at(k, j), g.nu, i, g.du));
        }
    }
    out
}

fn d_vv4(f: &Field<V4>) -> Field<V4> {
    let g = f.grid;
    let mut out = Field::filled(g, [0.0; 4]);
    for j in 0..g.nv {
        for i in 0..g.nu {
            out.set(i, j, line_d2(&|k| f.at(i, k), g.nv, j, g.dv));
        }
    }
    out
}

/// First fundamental form entries as bilinear-form fields.
#[derive(Debug, Clone)]
pub struct MetricField {
    pub grid: NullGrid,
    /// ⟨F_u, F_u⟩
    pub e: ScalarField,
    /// ⟨F_u, F_v⟩
    pub f: ScalarField,
    /// ⟨F_v, F_v⟩
    pub g: ScalarField,
}

impl MetricField {
    /// det I = EG − F²; negative on Lorentzian surfaces.
    pub fn det(&self, i: usize, j: usize) -> f64 {
        self.e.at(i, j) * self.g.at(i, j) - self.f.at(i, j).powi(2)
    }
}

/// Max |⟨F, F_u⟩| and |⟨F, F_v⟩| over the interior: tangency of the
/// discrete derivatives to the quadric (trivially 0 in E³₁).
pub fn tangency_residual(imm: &ImmersionGrid) -> f64 {
    if imm.ambient == Ambient::E31 {
        return 0.0;
    }
    let sig = ambient_signature(imm.ambient);
    let fu = d_u4(&imm.points);
    let fv = d_v4(&imm.points);
    let g = imm.grid;
    let mut worst = 0.0f64;
    for j in INTERIOR_MARGIN..g.nv - INTERIOR_MARGIN {
        for i in INTERIOR_MARGIN..g.nu - INTERIOR_MARGIN {
            let p = imm.points.at(i, j);
            worst = worst
                .max(dot4(&sig, &p, &fu.at(i, j)).abs())
                .max(dot4(&sig, &p, &fv.at(i, j)).abs());
        }
    }
    worst
}

/// Induced metric by finite differences and the ambient scalar product.
/// For the curved ambients the tangency residual is checked first.
pub fn induced_metric(imm: &ImmersionGrid) -> Result<MetricField> {
    let tang = tangency_residual(imm);
    if tang > 1e-3 {
        return Err(Error::invariant("quadric tangency", tang, 1e-3));
    }
    let sig = ambient_signature(imm.ambient);
    let fu = d_u4(&imm.points);
    let fv = d_v4(&imm.points);
    let g = imm.grid;
    let mut e = Field::filled(g, 0.0);
    let mut f = Field::filled(g, 0.0);
    let mut gg = Field::filled(g, 0.0);
    for (i, j) in g.nodes() {
        let a = fu.at(i, j);
        let b = fv.at(i, j);
        e.set(i, j, dot4(&sig, &a, &a));
        f.set(i, j, dot4(&sig, &a, &b));
        gg.set(i, j, dot4(&sig, &b, &b));
    }
    Ok(MetricField { grid: g, e, f, g: gg })
}

/// Recomputed curvatures plus the second-fundamental-form deviation field.
#[derive(Debug, Clone)]
pub struct CurvatureField {
    pub grid: NullGrid,
    pub h: ScalarField,
    pub k: ScalarField,
    /// max-entry norm of II − H·I per node; zero exactly at umbilics.
    pub umbilic_deviation: ScalarField,
}

/// Shape-operator curvatures from the discrete immersion. Second
/// derivatives are corrected by the quadric term c⟨F_u,F_u⟩F before being
/// paired with N.
pub fn mean_and_gauss_curvature(imm: &ImmersionGrid) -> Result<CurvatureField> {
    let metric = induced_metric(imm)?;
    let sig = ambient_signature(imm.ambient);
    let c_amb = imm.ambient.curvature();
    let fuu = d_uu4(&imm.points);
    let fvv = d_vv4(&imm.points);
    let fuv = d_v4(&d_u4(&imm.points));
    let g = imm.grid;
    let mut h = Field::filled(g, 0.0);
    let mut k = Field::filled(g, 0.0);
    let mut umb = Field::filled(g, 0.0);
    for (i, j) in g.nodes() {
        let p = imm.points.at(i, j);
        let n = imm.normals.at(i, j);
        let (e, f, gg) = (metric.e.at(i, j), metric.f.at(i, j), metric.g.at(i, j));
        let det = e * gg - f * f;
        if det.abs() < 1e-12 {
            return Err(Error::DegenerateMetric(format!(
                "det I = {det:.3e} at node ({i},{j})"
            )));
        }
        let pn = dot4(&sig, &p, &n);
        let l = dot4(&sig, &fuu.at(i, j), &n) + c_amb * e * pn;
        let m = dot4(&sig, &fuv.at(i, j), &n) + c_amb * f * pn;
        let nn = dot4(&sig, &fvv.at(i, j), &n) + c_amb * gg * pn;
        h.set(i, j, (gg * l - 2.0 * f * m + e * nn) / (2.0 * det));
        k.set(i, j, (l * nn - m * m) / det);
        let hij = h.at(i, j);
        let dev = (l - hij * e)
            .abs()
            .max((m - hij * f).abs())
            .max((nn - hij * gg).abs());
        umb.set(i, j, dev);
    }
    Ok(CurvatureField {
        grid: g,
        h,
        k,
        umbilic_deviation: umb,
    })
}

/// Max |⟨F_u,N⟩| and |⟨F_v,N⟩| over the margin-2 interior.
pub fn normal_orthogonality(imm: &ImmersionGrid) -> (f64, f64) {
    let sig = ambient_signature(imm.ambient);
    let fu = d_u4(&imm.points);
    let fv = d_v4(&imm.points);
    let g = imm.grid;
    let mut wu = 0.0f64;
    let mut wv = 0.0f64;
    for j in INTERIOR_MARGIN..g.nv - INTERIOR_MARGIN {
        for i in INTERIOR_MARGIN..g.nu - INTERIOR_MARGIN {
            let n = imm.normals.at(i, j);
            wu = wu.max(dot4(&sig, &fu.at(i, j), &n).abs());
            wv = wv.max(dot4(&sig, &fv.at(i, j), &n).abs());
        }
    }
    (wu, wv)
}

/// Result of the harmonic-inverse-mean-curvature check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThimcReport {
    /// Max harmonic-map residual of φ = 1/H over the safe interior.
    pub harmonic_residual_max: f64,
    /// c = 0 only: max |φ − (f(u)+g(v))| for the least-squares additive fit.
    pub additive_fit_residual: Option<f64>,
    pub min_abs_h: f64,
    /// min H² over the interior (the H² > 1 check for anti de Sitter).
    pub min_h_squared: f64,
}

/// Verify that 1/H of the immersion is a harmonic map into the target with
/// curvature label `c` (which may differ from the ambient's own label).
pub fn check_thimc(imm: &ImmersionGrid, c: f64) -> Result<ThimcReport> {
    let curv = mean_and_gauss_curvature(imm)?;
    let g = imm.grid;
    let mut min_abs_h = f64::INFINITY;
    let mut min_h2 = f64::INFINITY;
    for j in INTERIOR_MARGIN..g.nv - INTERIOR_MARGIN {
        for i in INTERIOR_MARGIN..g.nu - INTERIOR_MARGIN {
            let hv = curv.h.at(i, j);
            min_abs_h = min_abs_h.min(hv.abs());
            min_h2 = min_h2.min(hv * hv);
        }
    }
    if min_abs_h < 1e-10 {
        return Err(Error::DegenerateMetric(format!(
            "mean curvature crosses zero (min |H| = {min_abs_h:.3e})"
        )));
    }
    let phi = curv.h.map(|h| if h.abs() < 1e-10 { 0.0 } else { 1.0 / h });
    let resid = crate::transforms::harmonic_residual(&phi, c)?;
    // the φ field is only 4th-order accurate on the margin-2 interior and
    // the harmonic stencil widens that by one ring
    let margin = INTERIOR_MARGIN + 1;
    let harmonic_residual_max = resid.max_abs_interior(margin);

    let additive_fit_residual = if c == 0.0 {
        Some(additive_fit_residual(&phi, INTERIOR_MARGIN))
    } else {
        None
    };
    Ok(ThimcReport {
        harmonic_residual_max,
        additive_fit_residual,
        min_abs_h,
        min_h_squared: min_h2,
    })
}

/// Least-squares fit of φ by f(u) + g(v) on the margin interior; returns the
/// max absolute fit residual. The minimizer is the additive (row + column
/// mean) decomposition.
pub fn additive_fit_residual(phi: &ScalarField, margin: usize) -> f64 {
    let g = phi.grid;
    let (i0, i1) = (margin, g.nu - margin);
    let (j0, j1) = (margin, g.nv - margin);
    let ni = (i1 - i0) as f64;
    let nj = (j1 - j0) as f64;
    let mut grand = 0.0;
    let mut row = vec![0.0; i1 - i0]; // f(u_i)
    let mut col = vec![0.0; j1 - j0]; // g(v_j)
    for j in j0..j1 {
        for i in i0..i1 {
            let x = phi.at(i, j);
            grand += x;
            row[i - i0] += x;
            col[j - j0] += x;
        }
    }
    grand /= ni * nj;
    for r in row.iter_mut() {
        *r /= nj;
    }
    for c in col.iter_mut() {
        *c /= ni;
    }
    let mut worst = 0.0f64;
    for j in j0..j1 {
        for i in i0..i1 {
            let fit = row[i - i0] + col[j - j0] - grand;
            worst = worst.max((phi.at(i, j) - fit).abs());
        }
    }
    worst
}

/// Frozen oracle-consistency bounds, calibrated once on the constant-mean-
/// curvature exact case: |H_rec − H| ≤ 5 h² scale, |K_rec − K| ≤ 20 h² scale.
pub fn oracle_h_bound(h_step: f64, scale: f64) -> f64 {
    5.0 * h_step * h_step * scale
}

pub fn oracle_k_bound(h_step: f64, scale: f64) -> f64 {
    20.0 * h_step * h_step * scale
}

// --- report ------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Machine-readable verification report; the CLI gates its exit code on
/// `pass`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub convergence_orders: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub notes: BTreeMap<String, String>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new() -> Self {
        VerificationReport {
            checks: Vec::new(),
            convergence_orders: BTreeMap::new(),
            notes: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn add(&mut self, name: &str, max_residual: f64, tolerance: f64) -> bool {
        let pass = max_residual.is_finite() && max_residual <= tolerance;
        self.checks.push(CheckResult {
            name: name.to_string(),
            max_residual,
            tolerance,
            pass,
        });
        self.pass &= pass;
        pass
    }

    pub fn note(&mut self, key: &str, value: impl Into<String>) {
        self.notes.insert(key.to_string(), value.into());
    }

    pub fn order(&mut self, key: &str, value: f64) {
        self.convergence_orders.insert(key.to_string(), value);
    }
}

/// Data-level verification of a Gauss–Codazzi state.
pub fn verify_surface_data(data: &SurfaceData, gate: f64) -> VerificationReport {
    let mut rep = VerificationReport::new();
    let gauss = data.gauss_residual();
    rep.add("gauss_residual_interior", gauss.max_abs_interior(1), gate);
    rep.note(
        "gauss_residual_boundary",
        format!("{:.6e}", gauss.max_abs_boundary()),
    );
    let (cu, cv) = data.codazzi_residual();
    rep.add("codazzi_u_interior", cu.max_abs_interior(1), gate);
    rep.add("codazzi_v_interior", cv.max_abs_interior(1), gate);
    rep.add(
        "discriminant_identity",
        data.discriminant_identity_residual().max_abs_interior(1),
        10.0 * gate,
    );
    rep
}

/// Immersion-level verification: quadric residency, unit normal,
/// orthogonality, and agreement with claimed data when provided.
pub fn verify_immersion(
    imm: &ImmersionGrid,
    claimed: Option<&SurfaceData>,
    gate: f64,
) -> VerificationReport {
    let mut rep = VerificationReport::new();
    if imm.degenerate {
        rep.add("non_degenerate", 1.0, 0.0);
        return rep;
    }
    let (qp, qn) = imm.quadric_residuals();
    rep.add("quadric_residency", qp, 1e-6);
    rep.add("unit_normal", qn, 1e-6);
    let (ou, ov) = normal_orthogonality(imm);
    rep.add("normal_orthogonal_fu", ou, 1e-5);
    rep.add("normal_orthogonal_fv", ov, 1e-5);
    if let Ok(curv) = mean_and_gauss_curvature(imm) {
        if let Some(data) = claimed {
            let mut h_err = 0.0f64;
            let g = imm.grid;
            for j in INTERIOR_MARGIN..g.nv - INTERIOR_MARGIN {
                for i in INTERIOR_MARGIN..g.nu - INTERIOR_MARGIN {
                    h_err = h_err.max((curv.h.at(i, j) - data.h.at(i, j)).abs());
                }
            }
            rep.add("mean_curvature_vs_claimed", h_err, gate);
            // metric comparison through the bilinear-form convention:
            // I(∂u,∂v) = ½ e^ω, up to the anti-isothermal sign
            if let Ok(metric) = induced_metric(imm) {
                let sign = match data.orientation {
                    crate::surface::Orientation::Standard => 1.0,
                    crate::surface::Orientation::Anti => -1.0,
                };
                let mut m_err = 0.0f64;
                let mut null_err = 0.0f64;
                for j in INTERIOR_MARGIN..g.nv - INTERIOR_MARGIN {
                    for i in INTERIOR_MARGIN..g.nu - INTERIOR_MARGIN {
                        let expect = sign * 0.5 * data.exp_omega(i, j);
                        let rel = (metric.f.at(i, j) - expect).abs() / expect.abs().max(1e-12);
                        m_err = m_err.max(rel);
                        null_err = null_err
                            .max(metric.e.at(i, j).abs())
                            .max(metric.g.at(i, j).abs());
                    }
                }
                rep.add("metric_conformal_factor_rel", m_err, gate);
                rep.add("metric_null_directions", null_err, 10.0 * gate);
            }
        }
        let _ = curv;
    } else {
        rep.add("curvature_computable", 1.0, 0.0);
    }
    rep
}
