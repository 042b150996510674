//! Null-coordinate grids and per-node fields.
//!
//! Node (i,j) sits at (u₀ + i·Δu, v₀ + j·Δv). Data is stored row-major:
//! index = j·nu + i, u varying fastest.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullGrid {
    pub u0: f64,
    pub v0: f64,
    pub du: f64,
    pub dv: f64,
    pub nu: usize,
    pub nv: usize,
}

impl NullGrid {
    pub fn new(u0: f64, v0: f64, du: f64, dv: f64, nu: usize, nv: usize) -> Result<NullGrid> {
        if !(du > 0.0) || !(dv > 0.0) {
            return Err(Error::config("grid spacings must be positive"));
        }
        if nu < 3 || nv < 3 {
            return Err(Error::config("grid needs at least 3 nodes per direction"));
        }
        Ok(NullGrid { u0, v0, du, dv, nu, nv })
    }

    /// Square grid over [u0, u0+extent] × [v0, v0+extent] with n nodes per side.
    pub fn square(u0: f64, v0: f64, extent: f64, n: usize) -> Result<NullGrid> {
        let h = extent / (n - 1) as f64;
        NullGrid::new(u0, v0, h, h, n, n)
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nu + i
    }

    #[inline]
    pub fn u(&self, i: usize) -> f64 {
        self.u0 + i as f64 * self.du
    }

    #[inline]
    pub fn v(&self, j: usize) -> f64 {
        self.v0 + j as f64 * self.dv
    }

    pub fn len(&self) -> usize {
        self.nu * self.nv
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nu - 1 || j == self.nv - 1
    }

    /// Same extent, spacing halved (node count doubled minus one).
    pub fn refined(&self) -> NullGrid {
        NullGrid {
            du: self.du / 2.0,
            dv: self.dv / 2.0,
            nu: self.nu * 2 - 1,
            nv: self.nv * 2 - 1,
            ..*self
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let nu = self.nu;
        (0..self.nv).flat_map(move |j| (0..nu).map(move |i| (i, j)))
    }
}

/// Per-node storage of copyable values.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    pub grid: NullGrid,
    data: Vec<T>,
}

pub type ScalarField = Field<f64>;

impl<T: Copy + Default> Field<T> {
    pub fn filled(grid: NullGrid, value: T) -> Field<T> {
        Field {
            grid,
            data: vec![value; grid.len()],
        }
    }

    pub fn from_fn(grid: NullGrid, mut f: impl FnMut(f64, f64) -> T) -> Field<T> {
        let mut data = Vec::with_capacity(grid.len());
        for j in 0..grid.nv {
            for i in 0..grid.nu {
                data.push(f(grid.u(i), grid.v(j)));
            }
        }
        Field { grid, data }
    }

    pub fn from_vec(grid: NullGrid, data: Vec<T>) -> Result<Field<T>> {
        if data.len() != grid.len() {
            return Err(Error::config(format!(
                "field length {} does not match grid {}x{}",
                data.len(),
                grid.nu,
                grid.nv
            )));
        }
        Ok(Field { grid, data })
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[self.grid.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        let k = self.grid.idx(i, j);
        self.data[k] = v;
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Copy + Default>(&self, f: impl Fn(T) -> U) -> Field<U> {
        Field {
            grid: self.grid,
            data: self.data.iter().map(|&x| f(x)).collect(),
        }
    }

    pub fn zip_with<U: Copy + Default, V: Copy + Default>(
        &self,
        other: &Field<U>,
        f: impl Fn(T, U) -> V,
    ) -> Field<V> {
        Field {
            grid: self.grid,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

/// First derivative along one line of samples, 2nd order: central in the
/// interior, one-sided 3-point at the ends.
#[inline]
fn d1_line(get: impl Fn(usize) -> f64, n: usize, k: usize, h: f64) -> f64 {
    if k == 0 {
        (-3.0 * get(0) + 4.0 * get(1) - get(2)) / (2.0 * h)
    } else if k == n - 1 {
        (3.0 * get(n - 1) - 4.0 * get(n - 2) + get(n - 3)) / (2.0 * h)
    } else {
        (get(k + 1) - get(k - 1)) / (2.0 * h)
    }
}

impl ScalarField {
    /// ∂/∂u, 2nd order everywhere.
    pub fn d_u(&self) -> ScalarField {
        let g = self.grid;
        let mut out = Field::filled(g, 0.0);
        for j in 0..g.nv {
            for i in 0..g.nu {
                let v = d1_line(|k| self.at(k, j), g.nu, i, g.du);
                out.set(i, j, v);
            }
        }
        out
    }

    /// ∂/∂v, 2nd order everywhere.
    pub fn d_v(&self) -> ScalarField {
        let g = self.grid;
        let mut out = Field::filled(g, 0.0);
        for j in 0..g.nv {
            for i in 0..g.nu {
                let v = d1_line(|k| self.at(i, k), g.nv, j, g.dv);
                out.set(i, j, v);
            }
        }
        out
    }

    /// Mixed derivative ∂²/∂u∂v as ∂v(∂u ·); reduces to the 4-point cross
    /// stencil in the interior.
    pub fn d_uv(&self) -> ScalarField {
        self.d_u().d_v()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(x.abs()))
    }

    /// Max |value| over nodes at least `margin` nodes away from every edge.
    pub fn max_abs_interior(&self, margin: usize) -> f64 {
        let g = self.grid;
        let mut m = 0.0f64;
        for j in margin..g.nv.saturating_sub(margin) {
            for i in margin..g.nu.saturating_sub(margin) {
                m = m.max(self.at(i, j).abs());
            }
        }
        m
    }

    pub fn max_abs_boundary(&self) -> f64 {
        let g = self.grid;
        let mut m = 0.0f64;
        for (i, j) in g.nodes() {
            if g.is_boundary(i, j) {
                m = m.max(self.at(i, j).abs());
            }
        }
        m
    }
}

/// Samples of a single-variable function on the u-lattice (or v-lattice) of
/// a grid; used for the Lorentz-holomorphic splitting functions f(u), g(v).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LineSamples(pub Vec<f64>);

impl LineSamples {
    pub fn from_fn(n: usize, x0: f64, dx: f64, f: impl Fn(f64) -> f64) -> LineSamples {
        LineSamples((0..n).map(|k| f(x0 + k as f64 * dx)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_orders() {
        // f(u,v) = sin(u) e^{v}: exact mixed derivative cos(u) e^{v}
        let mut errs = Vec::new();
        for n in [17usize, 33, 65] {
            let grid = NullGrid::square(0.0, 0.0, 1.0, n).unwrap();
            let f = Field::from_fn(grid, |u, v| u.sin() * v.exp());
            let fuv = f.d_uv();
            let exact = Field::from_fn(grid, |u, v| u.cos() * v.exp());
            let err = fuv.zip_with(&exact, |a, b| a - b).max_abs_interior(1);
            errs.push(err);
        }
        let order1 = (errs[0] / errs[1]).log2();
        let order2 = (errs[1] / errs[2]).log2();
        assert!(order1 > 1.8 && order2 > 1.8, "orders {order1} {order2}");
    }

    #[test]
    fn one_sided_boundary_stencil_is_second_order() {
        let mut errs = Vec::new();
        for n in [17usize, 33, 65] {
            let grid = NullGrid::square(0.0, 0.0, 1.0, n).unwrap();
            let f = Field::from_fn(grid, |u, _| (2.0 * u).sin());
            let du = f.d_u();
            let mut err = 0.0f64;
            for j in 0..grid.nv {
                err = err.max((du.at(0, j) - 2.0 * (0.0f64).cos()).abs());
                let un = grid.u(grid.nu - 1);
                err = err.max((du.at(grid.nu - 1, j) - 2.0 * (2.0 * un).cos()).abs());
            }
            errs.push(err);
        }
        assert!((errs[1] / errs[2]).log2() > 1.7);
    }
}
