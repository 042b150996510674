//! The Gauss–Codazzi state of a timelike surface on a null-coordinate grid.
//!
//! In null coordinates the induced metric is I = e^ω du dv (standard
//! orientation) or I = −e^ω̌ dǔ dv̌ (anti isothermal). The compatibility
//! equations are, standard:
//!
//!   ω_uv + ½(H² + c) e^ω − 2QR e^{−ω} = 0,
//!   H_u = 2 e^{−ω} Q_v,   H_v = 2 e^{−ω} R_u,
//!
//! and with flipped signs of the two non-derivative Gauss terms and of the
//! Codazzi right-hand sides in the anti isothermal case. Q = ⟨F_uu, N⟩ and
//! R = ⟨F_vv, N⟩ are the Hopf differential coefficients.

use crate::error::{Error, Result};
use crate::grid::{Field, LineSamples, NullGrid, ScalarField};
use serde::{Deserialize, Serialize};

/// Minimum |H|: the Lax construction divides by H.
pub const H_FLOOR: f64 = 1e-12;
/// Nodewise tolerance for the splitting and factorization identities.
pub const STRUCTURE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// I = e^ω du dv
    #[default]
    Standard,
    /// I = −e^ω du dv
    Anti,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_f64(&self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// How the mean curvature factors through the splitting functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingForm {
    /// c = 0: 1/H = f(u) + g(v).
    Sum,
    /// c = ±1: H = (1 − c f g)/(f + g).
    Lawson,
    /// c = ±1: H = (f + g)/(1 − c f g); the |H| < 1 branch for c = −1.
    Ratio,
}

/// Lorentz-holomorphic splitting of the mean curvature.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Splitting {
    pub f: LineSamples,
    pub g: LineSamples,
    pub form: SplittingForm,
}

impl Splitting {
    /// The mean curvature value this splitting encodes at (i,j).
    pub fn h(&self, c: f64, i: usize, j: usize) -> f64 {
        let f = self.f.0[i];
        let g = self.g.0[j];
        match self.form {
            SplittingForm::Sum => 1.0 / (f + g),
            SplittingForm::Lawson => (1.0 - c * f * g) / (f + g),
            SplittingForm::Ratio => (f + g) / (1.0 - c * f * g),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceData {
    pub grid: NullGrid,
    pub omega: ScalarField,
    pub q: ScalarField,
    pub r: ScalarField,
    pub h: ScalarField,
    /// Ambient curvature label: −1, 0 or +1.
    pub c: i8,
    pub splitting: Option<Splitting>,
    pub orientation: Orientation,
}

impl SurfaceData {
    pub fn new(
        grid: NullGrid,
        omega: ScalarField,
        q: ScalarField,
        r: ScalarField,
        h: ScalarField,
        c: i8,
        splitting: Option<Splitting>,
        orientation: Orientation,
    ) -> Result<SurfaceData> {
        if !matches!(c, -1 | 0 | 1) {
            return Err(Error::config(format!("curvature label {c} not in {{-1,0,1}}")));
        }
        for (i, j) in grid.nodes() {
            let hv = h.at(i, j);
            if hv.abs() < H_FLOOR {
                return Err(Error::ZeroMeanCurvature { i, j, h: hv });
            }
        }
        let data = SurfaceData {
            grid,
            omega,
            q,
            r,
            h,
            c,
            splitting,
            orientation,
        };
        data.check_splitting()?;
        Ok(data)
    }

    fn check_splitting(&self) -> Result<()> {
        let Some(sp) = &self.splitting else {
            return Ok(());
        };
        if sp.f.0.len() != self.grid.nu || sp.g.0.len() != self.grid.nv {
            return Err(Error::config("splitting sample counts do not match the grid"));
        }
        if self.c == 0 && sp.form != SplittingForm::Sum {
            return Err(Error::config("c = 0 data takes the sum splitting form"));
        }
        if self.c != 0 && sp.form == SplittingForm::Sum {
            return Err(Error::config("sum splitting form requires c = 0"));
        }
        let mut max_err = 0.0f64;
        for (i, j) in self.grid.nodes() {
            let err = (sp.h(self.c as f64, i, j) - self.h.at(i, j)).abs();
            max_err = max_err.max(err);
        }
        if max_err > STRUCTURE_TOL {
            return Err(Error::invariant(
                "mean-curvature splitting",
                max_err,
                STRUCTURE_TOL,
            ));
        }
        Ok(())
    }

    pub fn exp_omega(&self, i: usize, j: usize) -> f64 {
        self.omega.at(i, j).exp()
    }

    /// Residual of the Gauss equation, per node; boundary rows use
    /// one-sided stencils and should be read via `max_abs_boundary`.
    pub fn gauss_residual(&self) -> ScalarField {
        let s = match self.orientation {
            Orientation::Standard => 1.0,
            Orientation::Anti => -1.0,
        };
        let omega_uv = self.omega.d_uv();
        let c = self.c as f64;
        let mut out = Field::filled(self.grid, 0.0);
        for (i, j) in self.grid.nodes() {
            let eo = self.exp_omega(i, j);
            let hv = self.h.at(i, j);
            let val = omega_uv.at(i, j)
                + s * (0.5 * (hv * hv + c) * eo - 2.0 * self.q.at(i, j) * self.r.at(i, j) / eo);
            out.set(i, j, val);
        }
        out
    }

    /// Residuals of the two Codazzi equations.
    pub fn codazzi_residual(&self) -> (ScalarField, ScalarField) {
        let s = match self.orientation {
            Orientation::Standard => 1.0,
            Orientation::Anti => -1.0,
        };
        let h_u = self.h.d_u();
        let h_v = self.h.d_v();
        let q_v = self.q.d_v();
        let r_u = self.r.d_u();
        let mut out_u = Field::filled(self.grid, 0.0);
        let mut out_v = Field::filled(self.grid, 0.0);
        for (i, j) in self.grid.nodes() {
            let emo = (-self.omega.at(i, j)).exp();
            out_u.set(i, j, h_u.at(i, j) - s * 2.0 * emo * q_v.at(i, j));
            out_v.set(i, j, h_v.at(i, j) - s * 2.0 * emo * r_u.at(i, j));
        }
        (out_u, out_v)
    }

    /// Gaussian curvature from the metric: K = −2 ω_uv e^{−ω} (standard),
    /// +2 ω_uv e^{−ω} (anti).
    pub fn gaussian_curvature(&self) -> ScalarField {
        let s = match self.orientation {
            Orientation::Standard => -2.0,
            Orientation::Anti => 2.0,
        };
        let omega_uv = self.omega.d_uv();
        let mut out = Field::filled(self.grid, 0.0);
        for (i, j) in self.grid.nodes() {
            out.set(i, j, s * omega_uv.at(i, j) * (-self.omega.at(i, j)).exp());
        }
        out
    }

    /// Discriminant of the shape-operator characteristic equation:
    /// D = H² − K + c = 4 e^{−2ω} Q R.
    pub fn discriminant(&self) -> ScalarField {
        let mut out = Field::filled(self.grid, 0.0);
        for (i, j) in self.grid.nodes() {
            let e2 = (-2.0 * self.omega.at(i, j)).exp();
            out.set(i, j, 4.0 * e2 * self.q.at(i, j) * self.r.at(i, j));
        }
        out
    }

    /// |D − (H² − K + c)| per node; small wherever the Gauss residual is.
    pub fn discriminant_identity_residual(&self) -> ScalarField {
        let k = self.gaussian_curvature();
        let d = self.discriminant();
        let c = self.c as f64;
        let mut out = Field::filled(self.grid, 0.0);
        for (i, j) in self.grid.nodes() {
            let hv = self.h.at(i, j);
            out.set(i, j, d.at(i, j) - (hv * hv - k.at(i, j) + c));
        }
        out
    }
}

/// (ε,ϑ)-isothermic factorization of the Hopf differentials:
/// Q = ½(𝔮 + ϑ)ρ(u), R = (ε/2)(𝔮 − ϑ)σ(v) with ρ, σ > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsothermicStructure {
    pub eps: Sign,
    /// ϑ, constant on the chart.
    pub theta: f64,
    /// 𝔮 per node (row-major).
    pub q: Vec<f64>,
    pub rho: LineSamples,
    pub sigma: LineSamples,
}

impl IsothermicStructure {
    /// Verify positivity of ρ, σ and the factorization against the data.
    pub fn validate(&self, data: &SurfaceData) -> Result<()> {
        let g = data.grid;
        if self.rho.0.len() != g.nu || self.sigma.0.len() != g.nv || self.q.len() != g.len() {
            return Err(Error::config("isothermic structure sizes do not match the grid"));
        }
        if self.rho.0.iter().any(|&x| x <= 0.0) || self.sigma.0.iter().any(|&x| x <= 0.0) {
            return Err(Error::config("rho and sigma must be positive"));
        }
        let eps = self.eps.as_f64();
        let mut max_err = 0.0f64;
        for (i, j) in g.nodes() {
            let qq = self.q[g.idx(i, j)];
            let q_expect = 0.5 * (qq + self.theta) * self.rho.0[i];
            let r_expect = 0.5 * eps * (qq - self.theta) * self.sigma.0[j];
            max_err = max_err
                .max((q_expect - data.q.at(i, j)).abs())
                .max((r_expect - data.r.at(i, j)).abs());
        }
        if max_err > STRUCTURE_TOL {
            return Err(Error::invariant("isothermic factorization", max_err, STRUCTURE_TOL));
        }
        Ok(())
    }

    /// Recover 𝔮 from the data: 𝔮 = Q/ρ + εR/σ.
    pub fn extract_q(data: &SurfaceData, rho: &LineSamples, sigma: &LineSamples, eps: Sign) -> Vec<f64> {
        let g = data.grid;
        let e = eps.as_f64();
        let mut out = Vec::with_capacity(g.len());
        for j in 0..g.nv {
            for i in 0..g.nu {
                out.push(data.q.at(i, j) / rho.0[i] + e * data.r.at(i, j) / sigma.0[j]);
            }
        }
        out
    }
}

/// Exact constant-mean-curvature data in E³₁: (ω,Q,R,H) = (0, k/2, k/2, k).
/// Solves the c = 0 system identically; the workhorse exact test case.
pub fn cmc_data(grid: NullGrid, k: f64) -> SurfaceData {
    let omega = Field::filled(grid, 0.0);
    let q = Field::filled(grid, k / 2.0);
    let r = Field::filled(grid, k / 2.0);
    let h = Field::filled(grid, k);
    let splitting = Splitting {
        f: LineSamples(vec![0.5 / k; grid.nu]),
        g: LineSamples(vec![0.5 / k; grid.nv]),
        form: SplittingForm::Sum,
    };
    SurfaceData::new(grid, omega, q, r, h, 0, Some(splitting), Orientation::Standard)
        .expect("constant CMC data is always valid")
}

/// Exact nonconstant THIMC data in E³₁ with H = 1/(u+v):
/// q(t) = −θ tanh(θt/2) on t = u+v, e^ω = θ² sech²(θt/2) (u+v)²,
/// Q = q + θ, R = q − θ. Exact solution of the c = 0 system; provides the
/// nonconstant counterpart to `cmc_data` in convergence studies.
pub fn tanh_thimc_data(grid: NullGrid, theta: f64) -> Result<SurfaceData> {
    if grid.u0 + grid.v0 <= 0.0 {
        return Err(Error::config("domain must keep u+v positive"));
    }
    let q_of = |t: f64| -theta * (theta * t / 2.0).tanh();
    let omega = Field::from_fn(grid, |u, v| {
        let t = u + v;
        let sech = 1.0 / (theta * t / 2.0).cosh();
        (theta * theta * sech * sech * t * t).ln()
    });
    let q = Field::from_fn(grid, |u, v| q_of(u + v) + theta);
    let r = Field::from_fn(grid, |u, v| q_of(u + v) - theta);
    let h = Field::from_fn(grid, |u, v| 1.0 / (u + v));
    let splitting = Splitting {
        f: LineSamples::from_fn(grid.nu, grid.u0, grid.du, |u| u),
        g: LineSamples::from_fn(grid.nv, grid.v0, grid.dv, |v| v),
        form: SplittingForm::Sum,
    };
    SurfaceData::new(grid, omega, q, r, h, 0, Some(splitting), Orientation::Standard)
}
