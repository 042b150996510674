//! Numerical tolerances used by constructors and verification gates.

/// Tolerance bundle. `THIMC_TOL` in the environment overrides
/// `verification_gate` globally; the structural tolerances keep their
/// defaults unless set programmatically.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// Unimodularity drift allowed on SL2 elements.
    pub eps_det: f64,
    /// Quadric residency drift allowed on ambient points (det = ±1).
    pub eps_quadric: f64,
    /// Entrywise Hermitian-symmetry drift.
    pub eps_herm: f64,
    /// Gate applied by `verify`-style report checks.
    pub verification_gate: f64,
    /// Group renormalization period (in composed multiplications / RK4 steps).
    pub renorm_every: usize,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eps_det: 1e-10,
            eps_quadric: 1e-8,
            eps_herm: 1e-12,
            verification_gate: 1e-4,
            renorm_every: 16,
        }
    }
}

impl Tolerances {
    /// Defaults, with `THIMC_TOL` (if set and parseable) replacing the
    /// verification gate.
    pub fn from_env() -> Self {
        let mut t = Tolerances::default();
        if let Ok(s) = std::env::var("THIMC_TOL") {
            if let Ok(v) = s.trim().parse::<f64>() {
                if v > 0.0 {
                    t.verification_gate = v;
                }
            }
        }
        t
    }
}
