//! Lax pairs with variable spectral parameter and frame integration.
//!
//! The undeformed frame equations for a timelike surface in E³₁ are
//! Φ_u = Φ U, Φ_v = Φ V with
//!
//!   U = [[−ω_u/4, −Q e^{−ω/2}], [ (H/2) λ e^{ω/2},  ω_u/4]],
//!   V = [[ ω_v/4, −(H/2) λ^{−1} e^{ω/2}], [R e^{−ω/2}, −ω_v/4]],
//!
//! λ ≡ 1. For harmonic 1/H = f(u) + g(v) the spectral parameter can be made
//! variable, λ(u,v;τ) = (1 − 2τ g)/(1 + 2τ f), without breaking zero
//! curvature. A second family with two variable spectral parameters
//! λ(u,τ), ν(v,τ) covers surfaces in the curved space forms whose mean
//! curvature is H = (f+g)/(1−cfg).

use crate::complex::{c64, C64};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::grid::{Field, NullGrid, ScalarField};
use crate::mat2::{mat2c, mat2r, Mat2C, Mat2R, ID2, ID2C};
use crate::numerics::{rk4_line, Lerp, OdeState, SubstageInterp};
use crate::surface::{SplittingForm, SurfaceData};
use rayon::prelude::*;

/// λ(u,v;τ) = (1 − 2τ g)/(1 + 2τ f).
pub fn spectral_lambda(f: f64, g: f64, tau: f64) -> Result<f64> {
    let den = 1.0 + 2.0 * tau * f;
    if den.abs() < 1e-12 {
        return Err(Error::config(format!(
            "spectral parameter pole: 1 + 2 tau f = {den:.3e}"
        )));
    }
    Ok((1.0 - 2.0 * tau * g) / den)
}

/// The two-parameter pair λ(u,τ) = τ(1−cf²)/(τ²−cf²),
/// ν(v,τ) = τ(1−cg²)/(τ²−cg²).
pub fn spectral_lambda_nu(f: f64, g: f64, tau: f64, c: f64) -> Result<(f64, f64)> {
    let dl = tau * tau - c * f * f;
    let dn = tau * tau - c * g * g;
    if dl.abs() < 1e-12 || dn.abs() < 1e-12 {
        return Err(Error::config(format!(
            "two-parameter spectral pole: tau^2-c f^2 = {dl:.3e}, tau^2-c g^2 = {dn:.3e}"
        )));
    }
    Ok((tau * (1.0 - c * f * f) / dl, tau * (1.0 - c * g * g) / dn))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaxVariant {
    /// One variable spectral parameter; flat ambient data.
    Single,
    /// Two variable spectral parameters; c = ±1 data in ratio form.
    TwoParam,
}

/// Per-node Lax matrices. `M` is `Mat2R` for real spectral values and
/// `Mat2C` for complexified ones.
#[derive(Debug, Clone)]
pub struct LaxPairField<M: Copy + Default> {
    pub grid: NullGrid,
    pub us: Field<M>,
    pub vs: Field<M>,
    pub tau: f64,
    pub variant: LaxVariant,
}

// --- matrix plumbing shared by real and complexified frames ---------------

pub trait FrameMatrix: Copy + Default + Send + Sync + std::fmt::Debug + 'static {
    fn identity() -> Self;
    fn mat_mul(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn commutator(&self, o: &Self) -> Self;
    fn norm_inf(&self) -> f64;
    /// Rescale to unit determinant (principal branch).
    fn renormalize_det(&self) -> Self;
    fn det_drift_unit(&self) -> f64;
}

impl FrameMatrix for Mat2R {
    fn identity() -> Self {
        ID2
    }
    fn mat_mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn commutator(&self, o: &Self) -> Self {
        Mat2R::commutator(self, o)
    }
    fn norm_inf(&self) -> f64 {
        Mat2R::norm_inf(self)
    }
    fn renormalize_det(&self) -> Self {
        self.scale(1.0 / self.det().sqrt())
    }
    fn det_drift_unit(&self) -> f64 {
        (self.det() - 1.0).abs()
    }
}

impl FrameMatrix for Mat2C {
    fn identity() -> Self {
        ID2C
    }
    fn mat_mul(&self, o: &Self) -> Self {
        *self * *o
    }
    fn sub(&self, o: &Self) -> Self {
        *self - *o
    }
    fn commutator(&self, o: &Self) -> Self {
        *self * *o - *o * *self
    }
    fn norm_inf(&self) -> f64 {
        Mat2C::norm_inf(self)
    }
    fn renormalize_det(&self) -> Self {
        self.scale(self.det().sqrt().recip())
    }
    fn det_drift_unit(&self) -> f64 {
        (self.det() - C64::ONE).abs()
    }
}

impl OdeState for Mat2R {
    fn axpy(&mut self, a: f64, other: &Self) {
        self.a += a * other.a;
        self.b += a * other.b;
        self.c += a * other.c;
        self.d += a * other.d;
    }
    fn scaled(&self, a: f64) -> Self {
        self.scale(a)
    }
}

impl OdeState for Mat2C {
    fn axpy(&mut self, a: f64, other: &Self) {
        self.a += other.a.scale(a);
        self.b += other.b.scale(a);
        self.c += other.c.scale(a);
        self.d += other.d.scale(a);
    }
    fn scaled(&self, a: f64) -> Self {
        self.scale_re(a)
    }
}

impl Lerp for Mat2R {
    fn combine(items: &[(f64, &Self)]) -> Self {
        let mut out = Mat2R::default();
        for &(w, m) in items {
            out.axpy(w, m);
        }
        out
    }
}

impl Lerp for Mat2C {
    fn combine(items: &[(f64, &Self)]) -> Self {
        let mut out = Mat2C::default();
        for &(w, m) in items {
            out.axpy(w, m);
        }
        out
    }
}

impl<A: Lerp, B: Lerp> Lerp for (A, B) {
    fn combine(items: &[(f64, &Self)]) -> Self {
        let firsts: Vec<(f64, &A)> = items.iter().map(|&(w, p)| (w, &p.0)).collect();
        let seconds: Vec<(f64, &B)> = items.iter().map(|&(w, p)| (w, &p.1)).collect();
        (A::combine(&firsts), B::combine(&seconds))
    }
}

// --- builders --------------------------------------------------------------

struct SplitData<'a> {
    data: &'a SurfaceData,
    omega_u: ScalarField,
    omega_v: ScalarField,
    f: &'a [f64],
    g: &'a [f64],
}

fn split_data<'a>(data: &'a SurfaceData, want: SplittingForm) -> Result<SplitData<'a>> {
    let sp = data
        .splitting
        .as_ref()
        .ok_or_else(|| Error::config("surface data carries no splitting (f,g)"))?;
    if sp.form != want {
        return Err(Error::config(format!(
            "splitting form {:?} required, data has {:?}",
            want, sp.form
        )));
    }
    Ok(SplitData {
        data,
        omega_u: data.omega.d_u(),
        omega_v: data.omega.d_v(),
        f: &sp.f.0,
        g: &sp.g.0,
    })
}

fn assemble_real(s: &SplitData, i: usize, j: usize, a: f64, b: f64) -> (Mat2R, Mat2R) {
    let eo2 = (0.5 * s.data.omega.at(i, j)).exp();
    let emo2 = 1.0 / eo2;
    let wu4 = s.omega_u.at(i, j) / 4.0;
    let wv4 = s.omega_v.at(i, j) / 4.0;
    let u = mat2r(-wu4, -s.data.q.at(i, j) * emo2, a * eo2, wu4);
    let v = mat2r(wv4, -b * eo2, s.data.r.at(i, j) * emo2, -wv4);
    (u, v)
}

fn assemble_complex(s: &SplitData, i: usize, j: usize, a: C64, b: C64) -> (Mat2C, Mat2C) {
    let eo2 = (0.5 * s.data.omega.at(i, j)).exp();
    let emo2 = 1.0 / eo2;
    let wu4 = s.omega_u.at(i, j) / 4.0;
    let wv4 = s.omega_v.at(i, j) / 4.0;
    let u = mat2c(
        C64::real(-wu4),
        C64::real(-s.data.q.at(i, j) * emo2),
        a.scale(eo2),
        C64::real(wu4),
    );
    let v = mat2c(
        C64::real(wv4),
        -b.scale(eo2),
        C64::real(s.data.r.at(i, j) * emo2),
        C64::real(-wv4),
    );
    (u, v)
}

/// Lax pair with one variable spectral parameter for c = 0 data with
/// harmonic splitting 1/H = f + g. τ = 0 reduces to the undeformed pair.
pub fn build_lax(data: &SurfaceData, tau: f64) -> Result<LaxPairField<Mat2R>> {
    if data.c != 0 {
        return Err(Error::config("single-parameter Lax pair needs c = 0 data"));
    }
    let s = split_data(data, SplittingForm::Sum)?;
    let g = data.grid;
    let mut us = Field::filled(g, Mat2R::default());
    let mut vs = Field::filled(g, Mat2R::default());
    for (i, j) in g.nodes() {
        let (f_u, g_v) = (s.f[i], s.g[j]);
        let den_l = 1.0 + 2.0 * tau * f_u;
        let den_r = 1.0 - 2.0 * tau * g_v;
        if den_l.abs() < 1e-12 || den_r.abs() < 1e-12 {
            return Err(Error::Pole {
                what: "variable spectral parameter".into(),
                i,
                j,
                u: g.u(i),
                v: g.v(j),
            });
        }
        let lambda = den_r / den_l;
        let h2 = data.h.at(i, j) / 2.0;
        let (u, v) = assemble_real(&s, i, j, h2 * lambda, h2 / lambda);
        us.set(i, j, u);
        vs.set(i, j, v);
    }
    Ok(LaxPairField {
        grid: g,
        us,
        vs,
        tau,
        variant: LaxVariant::Single,
    })
}

/// τ-derivatives of the single-variant Lax matrices, in closed form. Used
/// to integrate the variational system for the Sym formula.
pub fn build_lax_tau_derivative(
    data: &SurfaceData,
    tau: f64,
) -> Result<(Field<Mat2R>, Field<Mat2R>)> {
    let s = split_data(data, SplittingForm::Sum)?;
    let g = data.grid;
    let mut dus = Field::filled(g, Mat2R::default());
    let mut dvs = Field::filled(g, Mat2R::default());
    for (i, j) in g.nodes() {
        let (f_u, g_v) = (s.f[i], s.g[j]);
        let den_l = 1.0 + 2.0 * tau * f_u;
        let den_r = 1.0 - 2.0 * tau * g_v;
        let dlambda = -2.0 * (f_u + g_v) / (den_l * den_l);
        let dlambda_inv = 2.0 * (f_u + g_v) / (den_r * den_r);
        let eo2 = (0.5 * s.data.omega.at(i, j)).exp();
        let h2 = s.data.h.at(i, j) / 2.0;
        dus.set(i, j, mat2r(0.0, 0.0, h2 * dlambda * eo2, 0.0));
        dvs.set(i, j, mat2r(0.0, -h2 * dlambda_inv * eo2, 0.0, 0.0));
    }
    Ok((dus, dvs))
}

/// Complexified single-variant pair at spectral value √−1·τ, for the
/// de Sitter immersion formula.
pub fn build_lax_complexified(data: &SurfaceData, tau: f64) -> Result<LaxPairField<Mat2C>> {
    if data.c != 0 {
        return Err(Error::config("single-parameter Lax pair needs c = 0 data"));
    }
    let s = split_data(data, SplittingForm::Sum)?;
    let g = data.grid;
    let mut us = Field::filled(g, Mat2C::default());
    let mut vs = Field::filled(g, Mat2C::default());
    for (i, j) in g.nodes() {
        let (f_u, g_v) = (s.f[i], s.g[j]);
        // λ = (1 − 2iτg)/(1 + 2iτf); no real pole for τ ≠ 0
        let num = c64(1.0, -2.0 * tau * g_v);
        let den = c64(1.0, 2.0 * tau * f_u);
        let lambda = num / den;
        let h2 = s.data.h.at(i, j) / 2.0;
        let (u, v) = assemble_complex(&s, i, j, lambda.scale(h2), lambda.recip().scale(h2));
        us.set(i, j, u);
        vs.set(i, j, v);
    }
    Ok(LaxPairField {
        grid: g,
        us,
        vs,
        tau,
        variant: LaxVariant::Single,
    })
}

/// Two-parameter Lax pair for c = ±1 data in ratio form,
/// H[τ] = (τ f + τ^{−1} g)/(1 − c f g).
pub fn build_lax_two_param(data: &SurfaceData, tau: f64, c: f64) -> Result<LaxPairField<Mat2R>> {
    if tau == 0.0 {
        return Err(Error::config("two-parameter pair undefined at tau = 0"));
    }
    if c != data.c as f64 {
        return Err(Error::config("curvature label does not match the data"));
    }
    let s = split_data(data, SplittingForm::Ratio)?;
    let g = data.grid;
    let mut us = Field::filled(g, Mat2R::default());
    let mut vs = Field::filled(g, Mat2R::default());
    for (i, j) in g.nodes() {
        let (f_u, g_v) = (s.f[i], s.g[j]);
        let (lambda, nu) = spectral_lambda_nu(f_u, g_v, tau, c).map_err(|_| Error::Pole {
            what: "two-parameter spectral value".into(),
            i,
            j,
            u: g.u(i),
            v: g.v(j),
        })?;
        let den = 1.0 - c * f_u * g_v;
        if den.abs() < 1e-12 {
            return Err(Error::Pole {
                what: "deformed mean curvature".into(),
                i,
                j,
                u: g.u(i),
                v: g.v(j),
            });
        }
        let h_tau = (tau * f_u + g_v / tau) / den;
        let a = 0.5 * (h_tau + c) * lambda;
        let b = 0.5 * (h_tau - c) * nu;
        let (u, v) = assemble_real(&s, i, j, a, b);
        us.set(i, j, u);
        vs.set(i, j, v);
    }
    Ok(LaxPairField {
        grid: g,
        us,
        vs,
        tau,
        variant: LaxVariant::TwoParam,
    })
}

/// Complexified two-parameter pair at √−1·τ (de Sitter counterpart).
pub fn build_lax_two_param_complexified(
    data: &SurfaceData,
    tau: f64,
    c: f64,
) -> Result<LaxPairField<Mat2C>> {
    if tau == 0.0 {
        return Err(Error::config("two-parameter pair undefined at tau = 0"));
    }
    let s = split_data(data, SplittingForm::Ratio)?;
    let g = data.grid;
    let mut us = Field::filled(g, Mat2C::default());
    let mut vs = Field::filled(g, Mat2C::default());
    let it = C64::I.scale(tau);
    for (i, j) in g.nodes() {
        let (f_u, g_v) = (s.f[i], s.g[j]);
        let t2 = it * it; // −τ²
        let dl = t2 - C64::real(c * f_u * f_u);
        let dn = t2 - C64::real(c * g_v * g_v);
        if dl.abs() < 1e-12 || dn.abs() < 1e-12 {
            return Err(Error::Pole {
                what: "complexified spectral value".into(),
                i,
                j,
                u: g.u(i),
                v: g.v(j),
            });
        }
        let lambda = it.scale(1.0 - c * f_u * f_u) / dl;
        let nu = it.scale(1.0 - c * g_v * g_v) / dn;
        let den = 1.0 - c * f_u * g_v;
        if den.abs() < 1e-12 {
            return Err(Error::Pole {
                what: "deformed mean curvature".into(),
                i,
                j,
                u: g.u(i),
                v: g.v(j),
            });
        }
        let h_tau = (it.scale(f_u) + it.recip().scale(g_v)).scale(1.0 / den);
        let a = (h_tau + C64::real(c)).scale(0.5) * lambda;
        let b = (h_tau - C64::real(c)).scale(0.5) * nu;
        let (u, v) = assemble_complex(&s, i, j, a, b);
        us.set(i, j, u);
        vs.set(i, j, v);
    }
    Ok(LaxPairField {
        grid: g,
        us,
        vs,
        tau,
        variant: LaxVariant::TwoParam,
    })
}

// --- zero curvature ---------------------------------------------------------

fn d_u_mat<M: FrameMatrix + OdeState>(f: &Field<M>) -> Field<M> {
    let g = f.grid;
    let mut out = Field::filled(g, M::default());
    for j in 0..g.nv {
        for i in 0..g.nu {
            let mut v = M::default();
            if i == 0 {
                v.axpy(-3.0, &f.at(0, j));
                v.axpy(4.0, &f.at(1, j));
                v.axpy(-1.0, &f.at(2, j));
            } else if i == g.nu - 1 {
                v.axpy(3.0, &f.at(g.nu - 1, j));
                v.axpy(-4.0, &f.at(g.nu - 2, j));
                v.axpy(1.0, &f.at(g.nu - 3, j));
            } else {
                v.axpy(1.0, &f.at(i + 1, j));
                v.axpy(-1.0, &f.at(i - 1, j));
            }
            out.set(i, j, v.scaled(1.0 / (2.0 * g.du)));
        }
    }
    out
}

fn d_v_mat<M: FrameMatrix + OdeState>(f: &Field<M>) -> Field<M> {
    let g = f.grid;
    let mut out = Field::filled(g, M::default());
    for j in 0..g.nv {
        for i in 0..g.nu {
            let mut v = M::default();
            if j == 0 {
                v.axpy(-3.0, &f.at(i, 0));
                v.axpy(4.0, &f.at(i, 1));
                v.axpy(-1.0, &f.at(i, 2));
            } else if j == g.nv - 1 {
                v.axpy(3.0, &f.at(i, g.nv - 1));
                v.axpy(-4.0, &f.at(i, g.nv - 2));
                v.axpy(1.0, &f.at(i, g.nv - 3));
            } else {
                v.axpy(1.0, &f.at(i, j + 1));
                v.axpy(-1.0, &f.at(i, j - 1));
            }
            out.set(i, j, v.scaled(1.0 / (2.0 * g.dv)));
        }
    }
    out
}

/// Compatibility residual ∂_u V − ∂_v U + [U, V] per node.
pub fn zero_curvature_residual<M: FrameMatrix + OdeState>(pair: &LaxPairField<M>) -> Field<M> {
    let vu = d_u_mat(&pair.vs);
    let uv = d_v_mat(&pair.us);
    let g = pair.grid;
    let mut out = Field::filled(g, M::default());
    for (i, j) in g.nodes() {
        let comm = pair.us.at(i, j).commutator(&pair.vs.at(i, j));
        let mut val = vu.at(i, j).sub(&uv.at(i, j));
        val.axpy(1.0, &comm);
        out.set(i, j, val);
    }
    out
}

pub fn max_norm_interior<M: FrameMatrix>(f: &Field<M>, margin: usize) -> f64 {
    let g = f.grid;
    let mut m = 0.0f64;
    for j in margin..g.nv.saturating_sub(margin) {
        for i in margin..g.nu.saturating_sub(margin) {
            m = m.max(f.at(i, j).norm_inf());
        }
    }
    m
}

// --- frame integration -------------------------------------------------------

#[derive(Debug, Clone, Copy)]
pub struct FrameOptions {
    pub interp: SubstageInterp,
    pub renorm_every: usize,
    /// Warn when the interior zero-curvature max norm exceeds this.
    pub zc_warn_threshold: f64,
}

impl Default for FrameOptions {
    fn default() -> Self {
        FrameOptions {
            interp: SubstageInterp::default(),
            renorm_every: Tolerances::default().renorm_every,
            zc_warn_threshold: 1e-2,
        }
    }
}

/// Integrated frames with their integration certificates.
#[derive(Debug, Clone)]
pub struct FrameField<M: Copy + Default> {
    pub grid: NullGrid,
    pub phi: Field<M>,
    pub tau: f64,
    /// Max discrepancy between the u-first and v-first integration paths.
    pub path_discrepancy: f64,
    pub max_det_drift: f64,
    /// Interior zero-curvature residual of the pair that was integrated.
    pub zero_curvature_max: f64,
    /// Set when `zero_curvature_max` exceeded the warn threshold.
    pub zc_warning: bool,
}

/// Two-pass grid integration of X' = rhs(X, coeff) along grid lines:
/// pass A runs along the v = v₀ edge in u and then up each u = const line;
/// pass B runs along the u = u₀ edge in v and then along each row. Returns
/// pass A values plus the max inf-norm discrepancy against pass B.
pub(crate) fn integrate_two_pass<S, C>(
    grid: NullGrid,
    coeff_u: &Field<C>,
    coeff_v: &Field<C>,
    start: S,
    rhs: impl Fn(&S, &C) -> S + Sync,
    post: impl Fn(usize, &mut S) + Sync,
    dist: impl Fn(&S, &S) -> f64 + Sync,
    interp: SubstageInterp,
) -> (Field<S>, f64)
where
    S: OdeState + Copy + Default + Send + Sync,
    C: Lerp + Copy + Default + Sync,
{
    let nu = grid.nu;
    let nv = grid.nv;

    // pass A: bottom edge in u, then columns in v
    let row0: Vec<C> = (0..nu).map(|i| coeff_u.at(i, 0)).collect();
    let edge_a = rk4_line(start, &row0, grid.du, &rhs, interp, |k, x| post(k, x));
    let columns: Vec<Vec<S>> = (0..nu)
        .into_par_iter()
        .map(|i| {
            let col: Vec<C> = (0..nv).map(|j| coeff_v.at(i, j)).collect();
            rk4_line(edge_a[i], &col, grid.dv, &rhs, interp, |k, x| post(k, x))
        })
        .collect();
    let mut out = Field::filled(grid, S::default());
    for (i, col) in columns.iter().enumerate() {
        for (j, val) in col.iter().enumerate() {
            out.set(i, j, *val);
        }
    }

    // pass B: left edge in v, then rows in u
    let col0: Vec<C> = (0..nv).map(|j| coeff_v.at(0, j)).collect();
    let edge_b = rk4_line(start, &col0, grid.dv, &rhs, interp, |k, x| post(k, x));
    let discrepancy = (0..nv)
        .into_par_iter()
        .map(|j| {
            let row: Vec<C> = (0..nu).map(|i| coeff_u.at(i, j)).collect();
            let vals = rk4_line(edge_b[j], &row, grid.du, &rhs, interp, |k, x| post(k, x));
            let mut d = 0.0f64;
            for (i, val) in vals.iter().enumerate() {
                d = d.max(dist(val, &out.at(i, j)));
            }
            d
        })
        .reduce(|| 0.0, f64::max);

    (out, discrepancy)
}

/// Integrate the frame over the grid from Φ(u₀,v₀) = `phi0`.
pub fn integrate_frame<M: FrameMatrix + OdeState + Lerp>(
    pair: &LaxPairField<M>,
    phi0: M,
    opts: &FrameOptions,
) -> FrameField<M> {
    let zc = max_norm_interior(&zero_curvature_residual(pair), 1);
    let renorm_every = opts.renorm_every.max(1);
    let (phi, path_discrepancy) = integrate_two_pass(
        pair.grid,
        &pair.us,
        &pair.vs,
        phi0,
        |x: &M, c: &M| x.mat_mul(c),
        |k, x| {
            if k % renorm_every == 0 {
                *x = x.renormalize_det();
            }
        },
        |a, b| a.sub(b).norm_inf(),
        opts.interp,
    );
    let mut drift = 0.0f64;
    for (i, j) in pair.grid.nodes() {
        drift = drift.max(phi.at(i, j).det_drift_unit());
    }
    FrameField {
        grid: pair.grid,
        phi,
        tau: pair.tau,
        path_discrepancy,
        max_det_drift: drift,
        zero_curvature_max: zc,
        zc_warning: zc > opts.zc_warn_threshold,
    }
}
