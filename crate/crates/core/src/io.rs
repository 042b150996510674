//! JSON / CSV / OBJ artifacts.
//!
//! Surface documents use the field names grid, omega, Q, R, H, c, f, g,
//! isothermal; the optional splitting_form and isothermic fields extend the
//! schema without breaking readers. Immersions export to CSV with columns
//! u,v,p0..p3,n0..n3 and to Wavefront OBJ with the 4-vector coordinates
//! going to a CSV sidecar for the curved ambients.

use crate::error::{Error, Result};
use crate::grid::{Field, LineSamples, NullGrid};
use crate::lax::FrameField;
use crate::lorentz::Ambient;
use crate::mat2::{Mat2C, Mat2R};
use crate::surface::{
    IsothermicStructure, Orientation, Splitting, SplittingForm, SurfaceData,
};
use crate::sym::ImmersionGrid;
use serde::{Deserialize, Serialize};
use std::io::Write;
use std::path::Path;

#[derive(Debug, Serialize, Deserialize)]
struct SurfaceDoc {
    grid: NullGrid,
    omega: Vec<f64>,
    #[serde(rename = "Q")]
    q: Vec<f64>,
    #[serde(rename = "R")]
    r: Vec<f64>,
    #[serde(rename = "H")]
    h: Vec<f64>,
    c: i8,
    f: Option<Vec<f64>>,
    g: Option<Vec<f64>>,
    isothermal: Orientation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    splitting_form: Option<SplittingForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    isothermic: Option<IsothermicStructure>,
}

pub fn surface_to_json(
    data: &SurfaceData,
    structure: Option<&IsothermicStructure>,
) -> Result<String> {
    let doc = SurfaceDoc {
        grid: data.grid,
        omega: data.omega.data().to_vec(),
        q: data.q.data().to_vec(),
        r: data.r.data().to_vec(),
        h: data.h.data().to_vec(),
        c: data.c,
        f: data.splitting.as_ref().map(|s| s.f.0.clone()),
        g: data.splitting.as_ref().map(|s| s.g.0.clone()),
        isothermal: data.orientation,
        splitting_form: data.splitting.as_ref().map(|s| s.form),
        isothermic: structure.cloned(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn surface_from_json(text: &str) -> Result<(SurfaceData, Option<IsothermicStructure>)> {
    let doc: SurfaceDoc = serde_json::from_str(text)?;
    let grid = NullGrid::new(doc.grid.u0, doc.grid.v0, doc.grid.du, doc.grid.dv, doc.grid.nu, doc.grid.nv)?;
    let splitting = match (doc.f, doc.g) {
        (Some(f), Some(g)) => {
            let form = doc.splitting_form.unwrap_or(if doc.c == 0 {
                SplittingForm::Sum
            } else {
                SplittingForm::Lawson
            });
            Some(Splitting {
                f: LineSamples(f),
                g: LineSamples(g),
                form,
            })
        }
        (None, None) => None,
        _ => return Err(Error::config("f and g must be given together")),
    };
    let data = SurfaceData::new(
        grid,
        Field::from_vec(grid, doc.omega)?,
        Field::from_vec(grid, doc.q)?,
        Field::from_vec(grid, doc.r)?,
        Field::from_vec(grid, doc.h)?,
        doc.c,
        splitting,
        doc.isothermal,
    )?;
    if let Some(st) = &doc.isothermic {
        st.validate(&data)?;
    }
    Ok((data, doc.isothermic))
}

#[derive(Debug, Serialize, Deserialize)]
struct ImmersionDoc {
    grid: NullGrid,
    ambient: Ambient,
    points: Vec<[f64; 4]>,
    normals: Vec<[f64; 4]>,
    #[serde(default)]
    degenerate: bool,
}

pub fn immersion_to_json(imm: &ImmersionGrid) -> Result<String> {
    let doc = ImmersionDoc {
        grid: imm.grid,
        ambient: imm.ambient,
        points: imm.points.data().to_vec(),
        normals: imm.normals.data().to_vec(),
        degenerate: imm.degenerate,
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn immersion_from_json(text: &str) -> Result<ImmersionGrid> {
    let doc: ImmersionDoc = serde_json::from_str(text)?;
    Ok(ImmersionGrid {
        grid: doc.grid,
        ambient: doc.ambient,
        points: Field::from_vec(doc.grid, doc.points)?,
        normals: Field::from_vec(doc.grid, doc.normals)?,
        degenerate: doc.degenerate,
        trace_projection_max: 0.0,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct FrameDoc {
    grid: NullGrid,
    tau: f64,
    complex: bool,
    /// 4 reals per node for real frames, 8 for complexified ones.
    phi: Vec<Vec<f64>>,
}

pub fn frame_to_json_real(frame: &FrameField<Mat2R>) -> Result<String> {
    let doc = FrameDoc {
        grid: frame.grid,
        tau: frame.tau,
        complex: false,
        phi: frame.phi.data().iter().map(|m| m.entries().to_vec()).collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

pub fn frame_to_json_complex(frame: &FrameField<Mat2C>) -> Result<String> {
    let doc = FrameDoc {
        grid: frame.grid,
        tau: frame.tau,
        complex: true,
        phi: frame.phi.data().iter().map(|m| m.entries().to_vec()).collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// CSV export with columns u,v,p0..p3,n0..n3. `{}` formatting keeps the
/// shortest round-trip decimal, so identical inputs give identical bytes.
pub fn immersion_to_csv(imm: &ImmersionGrid) -> String {
    let mut out = String::from("u,v,p0,p1,p2,p3,n0,n1,n2,n3\n");
    let g = imm.grid;
    for j in 0..g.nv {
        for i in 0..g.nu {
            let p = imm.points.at(i, j);
            let n = imm.normals.at(i, j);
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                g.u(i),
                g.v(j),
                p[0],
                p[1],
                p[2],
                p[3],
                n[0],
                n[1],
                n[2],
                n[3]
            ));
        }
    }
    out
}

/// Wavefront OBJ export. E³₁ drops the vanishing p₀; the curved ambients
/// take an affine chart dropping the configured coordinate (the 4-vector
/// data belongs in the CSV sidecar). Quads are split into two triangles
/// with row-major winding.
pub fn immersion_to_obj(imm: &ImmersionGrid, drop_coord: usize) -> Result<String> {
    if drop_coord > 3 {
        return Err(Error::config("chart coordinate index must be 0..=3"));
    }
    let g = imm.grid;
    let mut out = String::new();
    let drop = if imm.ambient == Ambient::E31 { 0 } else { drop_coord };
    for j in 0..g.nv {
        for i in 0..g.nu {
            let p = imm.points.at(i, j);
            let mut coords = Vec::with_capacity(3);
            for (k, &x) in p.iter().enumerate() {
                if k != drop {
                    coords.push(x);
                }
            }
            out.push_str(&format!("v {} {} {}\n", coords[0], coords[1], coords[2]));
        }
    }
    let idx = |i: usize, j: usize| j * g.nu + i + 1; // OBJ is 1-based
    for j in 0..g.nv - 1 {
        for i in 0..g.nu - 1 {
            out.push_str(&format!(
                "f {} {} {}\n",
                idx(i, j),
                idx(i + 1, j),
                idx(i + 1, j + 1)
            ));
            out.push_str(&format!(
                "f {} {} {}\n",
                idx(i, j),
                idx(i + 1, j + 1),
                idx(i, j + 1)
            ));
        }
    }
    Ok(out)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    f.write_all(text.as_bytes())?;
    Ok(())
}

pub fn read_text(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Artifact kinds distinguished by their fields.
pub enum Artifact {
    Surface(SurfaceData, Option<IsothermicStructure>),
    Immersion(ImmersionGrid),
}

pub fn read_artifact(path: &Path) -> Result<Artifact> {
    let text = read_text(path)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("omega").is_some() {
        let (data, st) = surface_from_json(&text)?;
        Ok(Artifact::Surface(data, st))
    } else if value.get("points").is_some() {
        Ok(Artifact::Immersion(immersion_from_json(&text)?))
    } else {
        Err(Error::config("unrecognized artifact (neither surface nor immersion)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::tanh_thimc_data;

    #[test]
    fn surface_json_roundtrip() {
        let grid = NullGrid::square(0.1, 0.1, 0.5, 9).unwrap();
        let data = tanh_thimc_data(grid, 1.0).unwrap();
        let js = surface_to_json(&data, None).unwrap();
        // schema sanity: exact field names
        let v: serde_json::Value = serde_json::from_str(&js).unwrap();
        for key in ["grid", "omega", "Q", "R", "H", "c", "f", "g", "isothermal"] {
            assert!(v.get(key).is_some(), "missing field {key}");
        }
        let (back, _) = surface_from_json(&js).unwrap();
        assert_eq!(back.grid, data.grid);
        for (i, j) in grid.nodes() {
            assert_eq!(back.omega.at(i, j), data.omega.at(i, j));
            assert_eq!(back.q.at(i, j), data.q.at(i, j));
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let grid = NullGrid::square(0.0, 0.0, 1.0, 5).unwrap();
        let points = Field::from_fn(grid, |u, v| [0.0, u, v, u * v]);
        let normals = Field::filled(grid, [0.0, 1.0, 0.0, 0.0]);
        let imm = ImmersionGrid {
            grid,
            ambient: Ambient::E31,
            points,
            normals,
            degenerate: false,
            trace_projection_max: 0.0,
        };
        let a = immersion_to_csv(&imm);
        let b = immersion_to_csv(&imm);
        assert_eq!(a, b);
        assert!(a.starts_with("u,v,p0,p1,p2,p3,n0,n1,n2,n3\n"));
    }

    #[test]
    fn obj_counts() {
        let grid = NullGrid::square(0.0, 0.0, 1.0, 4).unwrap();
        let points = Field::from_fn(grid, |u, v| [0.0, u, v, 0.0]);
        let normals = Field::filled(grid, [0.0, 1.0, 0.0, 0.0]);
        let imm = ImmersionGrid {
            grid,
            ambient: Ambient::E31,
            points,
            normals,
            degenerate: false,
            trace_projection_max: 0.0,
        };
        let obj = immersion_to_obj(&imm, 0).unwrap();
        let vs = obj.lines().filter(|l| l.starts_with("v ")).count();
        let fs = obj.lines().filter(|l| l.starts_with("f ")).count();
        assert_eq!(vs, 16);
        assert_eq!(fs, 2 * 9);
    }
}
