//! Sample export in CSV, JSON, and PLY point-cloud form.

use std::io::{self, Write};

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

/// Coordinates of one exported sample.
#[derive(Debug, Clone)]
pub enum SampleCoords {
    /// Unit quaternion `(w, x, y, z)`.
    Sphere([f64; 4]),
    /// Canonical rotation representative, row-major.
    Flag([f64; 9]),
}

#[derive(Debug, Clone)]
pub struct CellSample {
    pub cell: String,
    pub dim: u8,
    pub translate: usize,
    pub param_s: f64,
    pub param_t: f64,
    pub coords: SampleCoords,
}

impl Serialize for CellSample {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CellSample", 6)?;
        s.serialize_field("cell", &self.cell)?;
        s.serialize_field("dim", &self.dim)?;
        s.serialize_field("translate", &self.translate)?;
        s.serialize_field("param_s", &self.param_s)?;
        s.serialize_field("param_t", &self.param_t)?;
        match &self.coords {
            SampleCoords::Sphere(c) => s.serialize_field("coords", &c[..])?,
            SampleCoords::Flag(c) => s.serialize_field("coords", &c[..])?,
        }
        s.end()
    }
}

/// JSON array of samples, one object per sample.
pub fn write_json<W: Write>(out: &mut W, samples: &[CellSample]) -> io::Result<()> {
    let text = serde_json::to_string_pretty(samples).map_err(io::Error::other)?;
    writeln!(out, "{text}")
}

const SPHERE_HEADER: &str = "cell,dim,translate,param_s,param_t,w,x,y,z";
const FLAG_HEADER: &str = "cell,dim,translate,param_s,param_t,r11,r12,r13,r21,r22,r23,r31,r32,r33";

pub fn write_csv<W: Write>(out: &mut W, samples: &[CellSample]) -> io::Result<()> {
    let header = match samples.first().map(|s| &s.coords) {
        Some(SampleCoords::Flag(_)) => FLAG_HEADER,
        _ => SPHERE_HEADER,
    };
    writeln!(out, "{}", header)?;
    for s in samples {
        write!(
            out,
            "{},{},{},{},{}",
            s.cell, s.dim, s.translate, s.param_s, s.param_t
        )?;
        match &s.coords {
            SampleCoords::Sphere(c) => {
                for v in c {
                    write!(out, ",{}", v)?;
                }
            }
            SampleCoords::Flag(c) => {
                for v in c {
                    write!(out, ",{}", v)?;
                }
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn write_ply<W: Write>(out: &mut W, samples: &[CellSample]) -> io::Result<()> {
    let flag = matches!(samples.first().map(|s| &s.coords), Some(SampleCoords::Flag(_)));
    writeln!(out, "ply")?;
    writeln!(out, "format ascii 1.0")?;
    writeln!(out, "comment cell samples")?;
    writeln!(out, "element vertex {}", samples.len())?;
    if flag {
        for name in ["r11", "r12", "r13", "r21", "r22", "r23", "r31", "r32", "r33"] {
            writeln!(out, "property double {}", name)?;
        }
    } else {
        for name in ["x", "y", "z", "w"] {
            writeln!(out, "property double {}", name)?;
        }
    }
    writeln!(out, "end_header")?;
    for s in samples {
        match &s.coords {
            SampleCoords::Sphere(c) => {
                // imaginary part first so viewers see the 3d projection
                writeln!(out, "{} {} {} {}", c[1], c[2], c[3], c[0])?;
            }
            SampleCoords::Flag(c) => {
                let row = c
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(out, "{}", row)?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_sample() -> CellSample {
        CellSample {
            cell: "e1_1".into(),
            dim: 1,
            translate: 0,
            param_s: 0.25,
            param_t: 0.5,
            coords: SampleCoords::Sphere([0.9238795325112867, -0.3826834323650898, 0.0, 0.0]),
        }
    }

    #[test]
    fn csv_round_trips_deterministically() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        write_csv(&mut a, &[sphere_sample()]).unwrap();
        write_csv(&mut b, &[sphere_sample()]).unwrap();
        assert_eq!(a, b);
        let text = String::from_utf8(a).unwrap();
        assert!(text.starts_with("cell,dim,translate,param_s,param_t,w,x,y,z\n"));
        assert!(text.contains("e1_1,1,0,0.25,0.5,0.9238795325112867,-0.3826834323650898,0,0"));
    }

    #[test]
    fn ply_header_counts_vertices() {
        let mut out = Vec::new();
        write_ply(&mut out, &[sphere_sample(), sphere_sample()]).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.contains("element vertex 2"));
        assert!(text.contains("property double w"));
        assert!(text.ends_with("0 0.9238795325112867\n"));
    }

    #[test]
    fn flag_csv_has_nine_coordinate_columns() {
        let s = CellSample {
            cell: "e2_1".into(),
            dim: 2,
            translate: 3,
            param_s: 0.1,
            param_t: 0.9,
            coords: SampleCoords::Flag([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0]),
        };
        let mut out = Vec::new();
        write_csv(&mut out, &[s]).unwrap();
        let text = String::from_utf8(out).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0].split(',').count(), 14);
        assert_eq!(lines[1].split(',').count(), 14);
    }
}
