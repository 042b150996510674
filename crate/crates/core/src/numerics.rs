//! Shared ODE / quadrature machinery: classical RK4, grid-line integration
//! with interpolated coefficients, adaptive Simpson quadrature and bisection.

/// State vectors the integrators can advance.
pub trait OdeState: Clone {
    /// self += a · other
    fn axpy(&mut self, a: f64, other: &Self);
    fn scaled(&self, a: f64) -> Self;
}

impl<const N: usize> OdeState for [f64; N] {
    fn axpy(&mut self, a: f64, other: &Self) {
        for k in 0..N {
            self[k] += a * other[k];
        }
    }
    fn scaled(&self, a: f64) -> Self {
        let mut out = *self;
        for x in out.iter_mut() {
            *x *= a;
        }
        out
    }
}

/// One classical RK4 step for x' = f(t, x).
pub fn rk4_step<S: OdeState>(f: &impl Fn(f64, &S) -> S, t: f64, x: &S, h: f64) -> S {
    let k1 = f(t, x);
    let mut x2 = x.clone();
    x2.axpy(h / 2.0, &k1);
    let k2 = f(t + h / 2.0, &x2);
    let mut x3 = x.clone();
    x3.axpy(h / 2.0, &k2);
    let k3 = f(t + h / 2.0, &x3);
    let mut x4 = x.clone();
    x4.axpy(h, &k3);
    let k4 = f(t + h, &x4);
    let mut out = x.clone();
    out.axpy(h / 6.0, &k1);
    out.axpy(h / 3.0, &k2);
    out.axpy(h / 3.0, &k3);
    out.axpy(h / 6.0, &k4);
    out
}

/// Integrate x' = f(t,x) from t0 over n uniform steps of size h, returning
/// all n+1 states. `watch` sees every accepted state and may abort.
pub fn rk4_integrate<S: OdeState>(
    f: impl Fn(f64, &S) -> S,
    t0: f64,
    x0: S,
    h: f64,
    n: usize,
    mut watch: impl FnMut(f64, &S) -> bool,
) -> (Vec<S>, bool) {
    let mut out = Vec::with_capacity(n + 1);
    out.push(x0.clone());
    let mut x = x0;
    if !watch(t0, &x) {
        return (out, false);
    }
    for k in 0..n {
        let t = t0 + k as f64 * h;
        x = rk4_step(&f, t, &x, h);
        out.push(x.clone());
        if !watch(t + h, &x) {
            return (out, false);
        }
    }
    (out, true)
}

/// How coefficient values at RK4 substages are obtained from nodal samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubstageInterp {
    /// Average of the two endpoints (linear interpolation at the midpoint).
    Linear,
    /// 4-point cubic through the neighbouring nodes; falls back to linear at
    /// the ends of a line.
    #[default]
    Cubic,
}

/// Values that can be blended for substage interpolation.
pub trait Lerp: Clone {
    fn combine(items: &[(f64, &Self)]) -> Self;
}

impl<const N: usize> Lerp for [f64; N] {
    fn combine(items: &[(f64, &Self)]) -> Self {
        let mut out = [0.0; N];
        for &(w, x) in items {
            for k in 0..N {
                out[k] += w * x[k];
            }
        }
        out
    }
}

/// Midpoint coefficient between nodes k and k+1 of a line.
pub fn midpoint_coeff<C: Lerp>(values: &[C], k: usize, interp: SubstageInterp) -> C {
    let n = values.len();
    match interp {
        SubstageInterp::Linear => C::combine(&[(0.5, &values[k]), (0.5, &values[k + 1])]),
        SubstageInterp::Cubic => {
            if k == 0 || k + 2 >= n {
                C::combine(&[(0.5, &values[k]), (0.5, &values[k + 1])])
            } else {
                // cubic through nodes k-1..k+2 evaluated at the midpoint
                C::combine(&[
                    (-1.0 / 16.0, &values[k - 1]),
                    (9.0 / 16.0, &values[k]),
                    (9.0 / 16.0, &values[k + 1]),
                    (-1.0 / 16.0, &values[k + 2]),
                ])
            }
        }
    }
}

/// RK4 along a line of nodes with nodal coefficients: x' = f(x, coeff).
/// Returns the state at every node.
pub fn rk4_line<S: OdeState, C: Lerp>(
    start: S,
    coeffs: &[C],
    h: f64,
    f: impl Fn(&S, &C) -> S,
    interp: SubstageInterp,
    mut post_step: impl FnMut(usize, &mut S),
) -> Vec<S> {
    let n = coeffs.len();
    let mut out = Vec::with_capacity(n);
    out.push(start.clone());
    let mut x = start;
    for k in 0..n.saturating_sub(1) {
        let c_mid = midpoint_coeff(coeffs, k, interp);
        let k1 = f(&x, &coeffs[k]);
        let mut x2 = x.clone();
        x2.axpy(h / 2.0, &k1);
        let k2 = f(&x2, &c_mid);
        let mut x3 = x.clone();
        x3.axpy(h / 2.0, &k2);
        let k3 = f(&x3, &c_mid);
        let mut x4 = x.clone();
        x4.axpy(h, &k3);
        let k4 = f(&x4, &coeffs[k + 1]);
        x.axpy(h / 6.0, &k1);
        x.axpy(h / 3.0, &k2);
        x.axpy(h / 3.0, &k3);
        x.axpy(h / 6.0, &k4);
        post_step(k + 1, &mut x);
        out.push(x.clone());
    }
    out
}

/// Adaptive Simpson quadrature of f over [a,b] to absolute tolerance tol.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn recurse(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(f, a, b, fa, fm, fb, whole, tol, 28)
}

/// Bisection for f(x) = 0 on a bracketing interval, to bracket width `width`.
/// Returns None when [a,b] does not bracket a sign change.
pub fn bisect(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, width: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    while (b - a).abs() > width {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Estimated convergence order from errors at h and h/2.
pub fn convergence_order(err_coarse: f64, err_fine: f64) -> f64 {
    (err_coarse / err_fine).log2()
}

/// Convergence at order ≥ `order` between successive refinements, with a
/// floor: errors already at rounding level count as converged.
pub fn converges_at_order(errs: &[f64], order: f64, floor: f64) -> bool {
    errs.windows(2).all(|w| {
        (w[0] <= floor && w[1] <= floor) || convergence_order(w[0], w[1]) >= order
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rk4_exponential() {
        let f = |_t: f64, x: &[f64; 1]| [x[0]];
        let (xs, ok) = rk4_integrate(f, 0.0, [1.0], 1e-3, 1000, |_, _| true);
        assert!(ok);
        assert!((xs.last().unwrap()[0] - 1f64.exp()).abs() < 1e-11);
    }

    #[test]
    fn simpson_matches_closed_form() {
        let v = adaptive_simpson(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-10);
    }

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(&|x: f64| x * x - 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-11);
    }
}
