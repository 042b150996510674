//! The generalized Hazzidakis equation and the normal forms it governs.
//!
//! Timelike surfaces with harmonic inverse mean curvature that carry an
//! (ε,θ)-isothermic coordinate system reduce to the third-order ODE
//!
//!   (q″/q′)′ − q′ = S(t) (2 − (q² − θ²)/q′),   −ε q′ > 0,
//!
//! with coefficient S(t) = 1/sin²(2t), 1/sinh²(2t) or 1/t² (families A, B,
//! C). Solutions with 2 − (q²−θ²)/q′ ≡ 0 ("case 1") are elementary:
//! q = −θ tanh(θt/2) for θ ≠ 0 and q = −2/t for θ = 0; their duals are
//! Bonnet surfaces with closed-form data. Generic solutions are integrated
//! numerically and feed the surface reconstruction.

use crate::error::{Error, Result};
use crate::grid::{Field, LineSamples, NullGrid};
use crate::numerics::rk4_integrate;
use crate::surface::{Orientation, Sign, Splitting, SplittingForm, SurfaceData};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
}

impl Family {
    /// Coefficient S(t) of the equation.
    pub fn coefficient(&self, t: f64) -> f64 {
        match self {
            Family::A => 1.0 / (2.0 * t).sin().powi(2),
            Family::B => 1.0 / (2.0 * t).sinh().powi(2),
            Family::C => 1.0 / (t * t),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HazzidakisParams {
    pub family: Family,
    pub eps: Sign,
    pub theta: f64,
    pub t0: f64,
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub t_end: f64,
    pub h: f64,
}

impl HazzidakisParams {
    pub fn validate(&self) -> Result<()> {
        if -self.eps.as_f64() * self.q1 <= 0.0 {
            return Err(Error::SignCondition { t: self.t0 });
        }
        if self.h <= 0.0 || self.t_end <= self.t0 {
            return Err(Error::config("need h > 0 and t_end > t0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct HazzidakisSolution {
    pub params: HazzidakisParams,
    pub t: Vec<f64>,
    pub q: Vec<f64>,
    pub q_p: Vec<f64>,
    pub q_pp: Vec<f64>,
    /// Max residual of the equation evaluated from the q samples alone by
    /// 4th-order finite differences.
    pub residual: f64,
    /// True when integration stopped early (sign condition or coefficient
    /// pole); the samples then cover the reached subinterval.
    pub truncated: bool,
}

impl HazzidakisSolution {
    /// Value of 2 − (q²−θ²)/q′ at sample k; identically 0 on case-1
    /// solutions.
    pub fn case1_defect(&self, k: usize) -> f64 {
        let theta = self.params.theta;
        2.0 - (self.q[k] * self.q[k] - theta * theta) / self.q_p[k]
    }
}

/// Residual of the equation from q samples alone (4th-order stencils for
/// the three derivatives), max over the stencil-valid interior.
pub fn equation_residual(
    family: Family,
    theta: f64,
    t0: f64,
    h: f64,
    q: &[f64],
) -> f64 {
    let n = q.len();
    let mut worst = 0.0f64;
    for k in 3..n.saturating_sub(3) {
        let t = t0 + k as f64 * h;
        let d1 = (q[k - 2] - 8.0 * q[k - 1] + 8.0 * q[k + 1] - q[k + 2]) / (12.0 * h);
        let d2 = (-q[k - 2] + 16.0 * q[k - 1] - 30.0 * q[k] + 16.0 * q[k + 1] - q[k + 2])
            / (12.0 * h * h);
        let d3 = (q[k - 3] - 8.0 * q[k - 2] + 13.0 * q[k - 1] - 13.0 * q[k + 1]
            + 8.0 * q[k + 2]
            - q[k + 3])
            / (8.0 * h * h * h);
        // (q″/q′)′ = q‴/q′ − (q″/q′)²
        let lhs = d3 / d1 - (d2 / d1).powi(2) - d1;
        let rhs = family.coefficient(t) * (2.0 - (q[k] * q[k] - theta * theta) / d1);
        worst = worst.max((lhs - rhs).abs());
    }
    worst
}

/// Integrate the equation as the explicit third-order system
/// q‴ = q″²/q′ + q′² + S(t)(2q′ − q² + θ²). Integration halts with a
/// partial solution if the sign condition fails or S(t) blows up.
pub fn solve_hazzidakis(params: &HazzidakisParams) -> Result<HazzidakisSolution> {
    params.validate()?;
    let eps = params.eps.as_f64();
    let theta = params.theta;
    let family = params.family;
    let rhs = |t: f64, s: &[f64; 3]| {
        let (q, qp, qpp) = (s[0], s[1], s[2]);
        let sc = family.coefficient(t);
        [
            qp,
            qpp,
            qpp * qpp / qp + qp * qp + sc * (2.0 * qp - q * q + theta * theta),
        ]
    };
    let steps = ((params.t_end - params.t0) / params.h).round() as usize;
    let mut breach: Option<f64> = None;
    let mut pole: Option<(f64, f64)> = None;
    let (states, completed) = rk4_integrate(
        rhs,
        params.t0,
        [params.q0, params.q1, params.q2],
        params.h,
        steps,
        |t, s| {
            if -eps * s[1] <= 0.0 {
                breach = Some(t);
                return false;
            }
            let sc = family.coefficient(t + params.h);
            if sc.abs() > 1e8 {
                pole = Some((t, sc));
                return false;
            }
            true
        },
    );
    if states.len() < 8 {
        if let Some(t) = breach {
            return Err(Error::SignCondition { t });
        }
        if let Some((t, s)) = pole {
            return Err(Error::CoefficientPole { t, s });
        }
    }
    let t: Vec<f64> = (0..states.len())
        .map(|k| params.t0 + k as f64 * params.h)
        .collect();
    let q: Vec<f64> = states.iter().map(|s| s[0]).collect();
    let residual = equation_residual(family, theta, params.t0, params.h, &q);
    Ok(HazzidakisSolution {
        params: *params,
        t,
        q,
        q_p: states.iter().map(|s| s[1]).collect(),
        q_pp: states.iter().map(|s| s[2]).collect(),
        residual,
        truncated: !completed,
    })
}

/// Closed-form case-1 solutions with exact derivatives:
/// q = −θ tanh(θt/2) (θ ≠ 0, ε = +) or q = −2/t (θ = 0, ε = −).
pub fn case1_closed_form(
    theta: f64,
    eps: Sign,
    t0: f64,
    h: f64,
    n: usize,
) -> Result<HazzidakisSolution> {
    if theta != 0.0 && eps != Sign::Plus {
        return Err(Error::config("theta != 0 forces eps = +"));
    }
    if theta == 0.0 && eps != Sign::Minus {
        return Err(Error::config("theta = 0 forces eps = -"));
    }
    let mut t = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    let mut q_p = Vec::with_capacity(n);
    let mut q_pp = Vec::with_capacity(n);
    for k in 0..n {
        let tk = t0 + k as f64 * h;
        t.push(tk);
        if theta != 0.0 {
            let x = theta * tk / 2.0;
            let sech2 = 1.0 / x.cosh().powi(2);
            q.push(-theta * x.tanh());
            q_p.push(-theta * theta / 2.0 * sech2);
            q_pp.push(theta.powi(3) / 2.0 * sech2 * x.tanh());
        } else {
            if tk.abs() < 1e-12 {
                return Err(Error::config("t = 0 lies on the sampled interval"));
            }
            q.push(-2.0 / tk);
            q_p.push(2.0 / (tk * tk));
            q_pp.push(-4.0 / tk.powi(3));
        }
    }
    let params = HazzidakisParams {
        family: Family::C,
        eps,
        theta,
        t0,
        q0: q[0],
        q1: q_p[0],
        q2: q_pp[0],
        t_end: t0 + (n - 1) as f64 * h,
        h,
    };
    // the case-1 defect 2 − (q²−θ²)/q′ vanishes identically, so the
    // equation holds for any coefficient family; evaluate the residual
    // with the closed-form third derivative rather than stencils
    let mut residual = 0.0f64;
    for k in 0..n {
        let tk = t[k];
        let q3 = if theta != 0.0 {
            let x = theta * tk / 2.0;
            let sech2 = 1.0 / x.cosh().powi(2);
            theta.powi(4) / 4.0 * sech2 * (sech2 - 2.0 * x.tanh().powi(2))
        } else {
            12.0 / tk.powi(4)
        };
        let lhs = q3 / q_p[k] - (q_pp[k] / q_p[k]).powi(2) - q_p[k];
        let rhs = Family::C.coefficient(tk)
            * (2.0 - (q[k] * q[k] - theta * theta) / q_p[k]);
        residual = residual.max((lhs - rhs).abs());
    }
    Ok(HazzidakisSolution {
        params,
        t,
        q,
        q_p,
        q_pp,
        residual,
        truncated: false,
    })
}

/// Coordinate realization (ξ(u), η(v), ρ = 1/ξ′, σ = 1/η′) for the
/// reconstruction; t = εu + v.
#[derive(Debug, Clone)]
pub struct CoordinateRealization {
    pub xi: LineSamples,
    pub eta: LineSamples,
    pub rho: LineSamples,
    pub sigma: LineSamples,
    pub eps: Sign,
}

impl CoordinateRealization {
    /// The family-C identity realization ξ = u, η = v, ρ = σ = 1 (ε = +).
    pub fn family_c_default(grid: &NullGrid) -> CoordinateRealization {
        CoordinateRealization {
            xi: LineSamples::from_fn(grid.nu, grid.u0, grid.du, |u| u),
            eta: LineSamples::from_fn(grid.nv, grid.v0, grid.dv, |v| v),
            rho: LineSamples(vec![1.0; grid.nu]),
            sigma: LineSamples(vec![1.0; grid.nv]),
            eps: Sign::Plus,
        }
    }

    pub fn validate(&self, grid: &NullGrid) -> Result<()> {
        if self.xi.0.len() != grid.nu
            || self.rho.0.len() != grid.nu
            || self.eta.0.len() != grid.nv
            || self.sigma.0.len() != grid.nv
        {
            return Err(Error::config("realization sample counts do not match the grid"));
        }
        if self.rho.0.iter().any(|&x| x <= 0.0) || self.sigma.0.iter().any(|&x| x <= 0.0) {
            return Err(Error::config("rho and sigma must be positive"));
        }
        Ok(())
    }

    /// Max |S(εu+v) − 1/(ρσ(ξ+η)²)| over the grid: the compatibility gate
    /// between a coefficient family and a proposed realization.
    pub fn consistency_residual(&self, grid: &NullGrid, family: Family) -> f64 {
        let eps = self.eps.as_f64();
        let mut worst = 0.0f64;
        for (i, j) in grid.nodes() {
            let t = eps * grid.u(i) + grid.v(j);
            let s = family.coefficient(t);
            let denom =
                self.rho.0[i] * self.sigma.0[j] * (self.xi.0[i] + self.eta.0[j]).powi(2);
            worst = worst.max((s - 1.0 / denom).abs());
        }
        worst
    }
}

fn sample_at(sol: &HazzidakisSolution, t: f64) -> Result<(f64, f64)> {
    // solutions are sampled uniformly; reconstruction grids must land on
    // the sample lattice
    let k_real = (t - sol.params.t0) / sol.params.h;
    let k = k_real.round() as isize;
    if k < 0 || k as usize >= sol.t.len() || (k_real - k as f64).abs() > 1e-6 {
        return Err(Error::config(format!(
            "t = {t} is not on the solution lattice [{}, {}] step {}",
            sol.params.t0,
            sol.t.last().unwrap(),
            sol.params.h
        )));
    }
    let k = k as usize;
    Ok((sol.q[k], sol.q_p[k]))
}

/// Reconstruct Gauss–Codazzi data from a solution q(t) and a realization:
/// e^ω = −2ε q′ (ξ+η)², Q = (εq+θ)/ρ, R = (q−εθ)/σ, H = 1/(ξ+η).
///
/// For generic solutions the realization must reproduce the coefficient,
/// S(εu+v) = 1/(ρσ(ξ+η)²), and the gate is enforced; case-1 solutions
/// solve the system for any realization and the residual is informational.
pub fn reconstruct_surface(
    sol: &HazzidakisSolution,
    real: &CoordinateRealization,
    grid: NullGrid,
) -> Result<(SurfaceData, f64)> {
    real.validate(&grid)?;
    let eps = real.eps.as_f64();
    let theta = sol.params.theta;

    // classify: case 1 annihilates the right-hand side
    let mut case1 = 0.0f64;
    for k in 0..sol.q.len() {
        case1 = case1.max(sol.case1_defect(k).abs());
    }
    let is_case1 = case1 < 1e-8;
    let consistency = real.consistency_residual(&grid, sol.params.family);
    if !is_case1 && consistency > 1e-8 {
        return Err(Error::invariant(
            "coefficient realization S = 1/(rho sigma (xi+eta)^2)",
            consistency,
            1e-8,
        ));
    }

    let mut omega = Field::filled(grid, 0.0);
    let mut qf = Field::filled(grid, 0.0);
    let mut rf = Field::filled(grid, 0.0);
    let mut hf = Field::filled(grid, 0.0);
    for (i, j) in grid.nodes() {
        let t = eps * grid.u(i) + grid.v(j);
        let (q, q_p) = sample_at(sol, t)?;
        let xe = real.xi.0[i] + real.eta.0[j];
        if xe.abs() < 1e-12 {
            return Err(Error::Pole {
                what: "xi + eta (mean curvature pole)".into(),
                i,
                j,
                u: grid.u(i),
                v: grid.v(j),
            });
        }
        let eo = -2.0 * eps * q_p * xe * xe;
        if eo <= 0.0 {
            return Err(Error::DegenerateMetric(format!(
                "e^omega = {eo:.3e} at node ({i},{j}); sign condition violated"
            )));
        }
        omega.set(i, j, eo.ln());
        qf.set(i, j, (eps * q + theta) / real.rho.0[i]);
        rf.set(i, j, (q - eps * theta) / real.sigma.0[j]);
        hf.set(i, j, 1.0 / xe);
    }
    // ξ + η is a harmonic splitting of 1/H by construction
    let splitting = Splitting {
        f: real.xi.clone(),
        g: real.eta.clone(),
        form: SplittingForm::Sum,
    };
    let data = SurfaceData::new(
        grid,
        omega,
        qf,
        rf,
        hf,
        0,
        Some(splitting),
        Orientation::Standard,
    )?;
    Ok((data, consistency))
}

/// Closed-form dual (Bonnet) data of the case-1 solutions, normalized to
/// ρ = σ ≡ 1 realizations.
///
/// θ ≠ 0: e^{ω*} = cosh²(θt/2)/(θ²(ξ+η)²), Q* = R* = 1/(2(ξ+η)),
/// H* = −2θ tanh(θt/2), in the anti de Sitter space of radius 1/(2|θ|),
/// returned rescaled to the unit quadric (c = −1).
/// θ = 0: e^{ω*} = t²/(4(ξ+η)²), Q* = −R* = 1/(2(ξ+η)), H* = 4/t in E³₁,
/// in anti isothermal orientation. (The sign of H* follows the convention
/// N* = N of the Christoffel transform, under which H* equals the
/// isothermic potential 𝔮.)
pub fn dual_case1(
    sol: &HazzidakisSolution,
    real: &CoordinateRealization,
    grid: NullGrid,
) -> Result<(SurfaceData, crate::transforms::DualAmbient)> {
    real.validate(&grid)?;
    if real
        .rho
        .0
        .iter()
        .chain(real.sigma.0.iter())
        .any(|&x| (x - 1.0).abs() > 1e-12)
    {
        return Err(Error::config("case-1 duals use the rho = sigma = 1 normalization"));
    }
    let theta = sol.params.theta;
    let eps = real.eps.as_f64();
    let mut omega = Field::filled(grid, 0.0);
    let mut qf = Field::filled(grid, 0.0);
    let mut rf = Field::filled(grid, 0.0);
    let mut hf = Field::filled(grid, 0.0);

    if theta != 0.0 {
        // dual in H³₁(1/(2|θ|)); unit-radius storage scales by r = 1/(2|θ|)
        let r = 1.0 / (2.0 * theta.abs());
        for (i, j) in grid.nodes() {
            let t = eps * grid.u(i) + grid.v(j);
            let xe = real.xi.0[i] + real.eta.0[j];
            let eo_star = (theta * t / 2.0).cosh().powi(2) / (theta * theta * xe * xe);
            omega.set(i, j, eo_star.ln() - 2.0 * r.ln());
            qf.set(i, j, 1.0 / (2.0 * xe) / r);
            rf.set(i, j, 1.0 / (2.0 * xe) / r);
            hf.set(i, j, r * (-2.0 * theta * (theta * t / 2.0).tanh()));
        }
        let data = SurfaceData::new(grid, omega, qf, rf, hf, -1, None, Orientation::Standard)?;
        Ok((
            data,
            crate::transforms::DualAmbient {
                ambient: crate::lorentz::Ambient::H31,
                radius_scale: r,
            },
        ))
    } else {
        for (i, j) in grid.nodes() {
            let t = eps * grid.u(i) + grid.v(j);
            let xe = real.xi.0[i] + real.eta.0[j];
            let eo_star = t * t / (4.0 * xe * xe);
            omega.set(i, j, eo_star.ln());
            qf.set(i, j, 1.0 / (2.0 * xe));
            rf.set(i, j, -1.0 / (2.0 * xe));
            hf.set(i, j, 4.0 / t);
        }
        let data = SurfaceData::new(grid, omega, qf, rf, hf, 0, None, Orientation::Anti)?;
        Ok((
            data,
            crate::transforms::DualAmbient {
                ambient: crate::lorentz::Ambient::E31,
                radius_scale: 1.0,
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_family_c_solution() {
        // q = −2/t: the analytically sampled residual vanishes, and the
        // stencil certificate sits at the stencil-error level
        let sol = case1_closed_form(0.0, Sign::Minus, 1.0, 1.0 / 512.0, 513).unwrap();
        assert!(sol.residual < 1e-10, "analytic residual {}", sol.residual);
        let fd = equation_residual(Family::C, 0.0, 1.0, 1.0 / 512.0, &sol.q);
        assert!(fd < 1e-6, "stencil certificate {fd}");
        for k in 0..sol.q.len() {
            assert!(sol.case1_defect(k).abs() < 1e-12);
        }
        // analytic spot values at t = 1
        assert_eq!(sol.q[0], -2.0);
        assert_eq!(sol.q_p[0], 2.0);
    }

    #[test]
    fn tanh_case1_values() {
        let sol = case1_closed_form(1.0, Sign::Plus, 0.0, 0.1, 101).unwrap();
        assert_eq!(sol.q[0], 0.0); // tanh(0) = 0
        let q10 = sol.q[100]; // t = 10
        assert!((q10 + 1.0).abs() < 1e-4, "asymptote: {q10}");
        for k in 0..sol.q.len() {
            assert!(sol.case1_defect(k).abs() < 1e-10);
        }
    }

    #[test]
    fn inconsistent_theta_eps_rejected() {
        assert!(case1_closed_form(1.0, Sign::Minus, 0.0, 0.1, 10).is_err());
        assert!(case1_closed_form(0.0, Sign::Plus, 1.0, 0.1, 10).is_err());
    }

    #[test]
    fn sign_condition_rejected_at_construction() {
        let p = HazzidakisParams {
            family: Family::C,
            eps: Sign::Plus,
            theta: 0.0,
            t0: 1.0,
            q0: -0.5,
            q1: 1.0, // ε = + needs q' < 0
            q2: 0.0,
            t_end: 2.0,
            h: 0.01,
        };
        assert!(matches!(solve_hazzidakis(&p), Err(Error::SignCondition { .. })));
    }

    fn family_params(family: Family, t0: f64, t_end: f64) -> HazzidakisParams {
        HazzidakisParams {
            family,
            eps: Sign::Plus,
            theta: 0.3,
            t0,
            q0: -0.4,
            q1: -1.0,
            q2: 0.4,
            t_end,
            h: 1.0 / 512.0,
        }
    }

    #[test]
    fn integrated_families_satisfy_equation_on_refinement() {
        for (family, t0, t_end) in [
            (Family::A, 0.35, 0.75),
            (Family::B, 0.5, 1.1),
            (Family::C, 1.0, 2.0),
        ] {
            let p = family_params(family, t0, t_end);
            let sol = solve_hazzidakis(&p).unwrap();
            assert!(!sol.truncated, "family {family:?} truncated");
            assert!(sol.residual < 1e-6, "family {family:?}: {}", sol.residual);
            // sign condition maintained on every returned sample
            for &qp in &sol.q_p {
                assert!(-p.eps.as_f64() * qp > 0.0);
            }
            // refined evaluation
            let mut p2 = p;
            p2.h = p.h / 2.0;
            let sol2 = solve_hazzidakis(&p2).unwrap();
            assert!(sol2.residual < 1e-6, "refined {family:?}: {}", sol2.residual);
        }
    }

    #[test]
    fn reconstruction_family_c_default_realization() {
        let grid = NullGrid::square(0.4, 0.6, 0.5, 65).unwrap();
        // t = u + v spans [1.0, 2.0]
        let p = family_params(Family::C, 1.0, 2.0);
        let mut p = p;
        p.h = grid.du; // sample lattice must contain εu+v values
        let sol = solve_hazzidakis(&p).unwrap();
        let real = CoordinateRealization::family_c_default(&grid);
        assert!(real.consistency_residual(&grid, Family::C) < 1e-12);
        let (data, consistency) = reconstruct_surface(&sol, &real, grid).unwrap();
        assert!(consistency < 1e-12);
        let gr = data.gauss_residual().max_abs_interior(1);
        let (cu, cv) = data.codazzi_residual();
        let worst = gr.max(cu.max_abs_interior(1)).max(cv.max_abs_interior(1));
        assert!(worst < 1e-4, "residuals {worst}");
    }

    #[test]
    fn reconstruction_gate_rejects_wrong_realization() {
        let grid = NullGrid::square(0.4, 0.6, 0.5, 33).unwrap();
        let mut p = family_params(Family::C, 1.0, 2.0);
        p.h = grid.du;
        let sol = solve_hazzidakis(&p).unwrap();
        let mut real = CoordinateRealization::family_c_default(&grid);
        real.rho = LineSamples(vec![2.0; grid.nu]); // breaks the identity
        let err = reconstruct_surface(&sol, &real, grid);
        assert!(matches!(err, Err(Error::Invariant { .. })));
    }

    #[test]
    fn case1_reconstruction_skips_gate_and_solves_system() {
        // θ = 0, ε = −, t = −u + v in [1, 2]: any realization works for case 1
        let grid = NullGrid::new(0.1, 1.6, 1.0 / 128.0, 1.0 / 128.0, 65, 65).unwrap();
        let t_min = grid.v0 - grid.u(grid.nu - 1);
        let n = 2 * 65 - 1;
        let sol = case1_closed_form(0.0, Sign::Minus, t_min, 1.0 / 128.0, n).unwrap();
        let real = CoordinateRealization {
            xi: LineSamples::from_fn(grid.nu, grid.u0, grid.du, |u| u),
            eta: LineSamples::from_fn(grid.nv, grid.v0, grid.dv, |v| v),
            rho: LineSamples(vec![1.0; grid.nu]),
            sigma: LineSamples(vec![1.0; grid.nv]),
            eps: Sign::Minus,
        };
        let (data, consistency) = reconstruct_surface(&sol, &real, grid).unwrap();
        // the place of the consistency gate for case 1: informational only
        assert!(consistency > 1e-3, "the identity realization cannot reproduce S for eps = -");
        let gr = data.gauss_residual().max_abs_interior(1);
        let (cu, cv) = data.codazzi_residual();
        let worst = gr.max(cu.max_abs_interior(1)).max(cv.max_abs_interior(1));
        assert!(worst < 5e-4, "residuals {worst}");
    }

    #[test]
    fn case1_dual_theta_zero_is_anti_isothermic() {
        let grid = NullGrid::new(0.1, 1.6, 1.0 / 128.0, 1.0 / 128.0, 65, 65).unwrap();
        let t_min = grid.v0 - grid.u(grid.nu - 1);
        let sol = case1_closed_form(0.0, Sign::Minus, t_min, 1.0 / 128.0, 2 * 65 - 1).unwrap();
        let real = CoordinateRealization {
            xi: LineSamples::from_fn(grid.nu, grid.u0, grid.du, |u| u),
            eta: LineSamples::from_fn(grid.nv, grid.v0, grid.dv, |v| v),
            rho: LineSamples(vec![1.0; grid.nu]),
            sigma: LineSamples(vec![1.0; grid.nv]),
            eps: Sign::Minus,
        };
        let (dual, ambient) = dual_case1(&sol, &real, grid).unwrap();
        assert_eq!(ambient.ambient, crate::lorentz::Ambient::E31);
        for (i, j) in grid.nodes() {
            assert!((dual.q.at(i, j) + dual.r.at(i, j)).abs() < 1e-14, "Q* = -R*");
        }
        assert_eq!(dual.orientation, Orientation::Anti);
        // anti isothermal compatibility equations hold
        let gr = dual.gauss_residual().max_abs_interior(1);
        let (cu, cv) = dual.codazzi_residual();
        let worst = gr.max(cu.max_abs_interior(1)).max(cv.max_abs_interior(1));
        assert!(worst < 5e-4, "anti-system residuals {worst}");
    }

    #[test]
    fn case1_dual_theta_nonzero_is_isothermic_in_h31() {
        let grid = NullGrid::square(0.6, 0.6, 0.5, 65).unwrap();
        let theta = 1.2;
        let sol = case1_closed_form(theta, Sign::Plus, 1.2, grid.du, 2 * 65).unwrap();
        let real = CoordinateRealization::family_c_default(&grid);
        let (dual, ambient) = dual_case1(&sol, &real, grid).unwrap();
        assert_eq!(ambient.ambient, crate::lorentz::Ambient::H31);
        assert!((ambient.radius_scale - 1.0 / 2.4).abs() < 1e-15);
        assert_eq!(dual.c, -1);
        for (i, j) in grid.nodes() {
            assert!((dual.q.at(i, j) - dual.r.at(i, j)).abs() < 1e-14, "Q* = R*");
        }
        let gr = dual.gauss_residual().max_abs_interior(1);
        let (cu, cv) = dual.codazzi_residual();
        let worst = gr.max(cu.max_abs_interior(1)).max(cv.max_abs_interior(1));
        assert!(worst < 5e-4, "H31 dual residuals {worst}");
    }
}
