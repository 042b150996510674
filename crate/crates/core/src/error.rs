use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invariant violation in {what}: max error {max_err:.3e} exceeds {tol:.3e}")]
    Invariant {
        what: String,
        max_err: f64,
        tol: f64,
    },

    #[error("{what} has a pole at node ({i},{j}) (u={u}, v={v})")]
    Pole {
        what: String,
        i: usize,
        j: usize,
        u: f64,
        v: f64,
    },

    #[error("{what} crosses a forbidden region at {count} nodes, first at ({i},{j})")]
    NodeGate {
        what: String,
        count: usize,
        i: usize,
        j: usize,
    },

    #[error("degenerate metric: {0}")]
    DegenerateMetric(String),

    #[error("mean curvature vanishes at node ({i},{j}): |H|={h:.3e}")]
    ZeroMeanCurvature { i: usize, j: usize, h: f64 },

    #[error("sign condition -eps*q' > 0 breached at t={t}")]
    SignCondition { t: f64 },

    #[error("coefficient S(t) blows up at t={t} (|S|={s:.3e})")]
    CoefficientPole { t: f64, s: f64 },

    #[error("path-dependence above tolerance: max discrepancy {max:.3e} at node ({i},{j})")]
    PathDependence { max: f64, i: usize, j: usize },

    #[error("determinant drift: |det - {target}| = {err:.3e}")]
    DetDrift { target: f64, err: f64 },

    #[error("matrix is not Hermitian: max asymmetry {0:.3e}")]
    NotHermitian(f64),

    #[error("singular matrix (det = {0:.3e})")]
    Singular(f64),

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invariant(what: impl Into<String>, max_err: f64, tol: f64) -> Self {
        Error::Invariant {
            what: what.into(),
            max_err,
            tol,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
