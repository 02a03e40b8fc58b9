//! Polygonal object geometry.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple counter-clockwise polygon expressed in the object body frame.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonShape {
    vertices: Vec<[f64; 2]>,
}

#[derive(Deserialize)]
struct ShapeFile {
    vertices: Vec<[f64; 2]>,
}

impl<'de> Deserialize<'de> for PolygonShape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ShapeFile::deserialize(d)?;
        PolygonShape::new(raw.vertices).map_err(serde::de::Error::custom)
    }
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn segments_intersect(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}

impl PolygonShape {
    pub fn new(vertices: Vec<[f64; 2]>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::InvalidShape(format!("{n} vertices, need at least 3")));
        }
        if vertices.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidShape("non-finite vertex".into()));
        }
        let shape = Self { vertices };
        let area = shape.signed_area();
        if area <= 0.0 {
            return Err(Error::InvalidShape(format!(
                "signed area {area:.3e} is not positive (vertices must be counter-clockwise)"
            )));
        }
        for i in 0..n {
            let (a, b) = shape.edge(i);
            if a == b {
                return Err(Error::InvalidShape(format!("repeated vertex at index {i}")));
            }
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = shape.edge(j);
                if segments_intersect(a, b, c, d) {
                    return Err(Error::InvalidShape(format!("edges {i} and {j} cross")));
                }
            }
        }
        if shape.circumradius() <= 0.0 {
            return Err(Error::InvalidShape("zero circumradius".into()));
        }
        Ok(shape)
    }

    /// Regular polygon centered on the body origin with the first vertex on +x.
    pub fn regular(sides: usize, radius: f64) -> Result<Self> {
        Self::new(
            (0..sides)
                .map(|i| {
                    let a = TAU * i as f64 / sides as f64;
                    [radius * a.cos(), radius * a.sin()]
                })
                .collect(),
        )
    }

    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        let (hw, hh) = (0.5 * width, 0.5 * height);
        Self::new(vec![[-hw, -hh], [hw, -hh], [hw, hh], [-hw, hh]])
    }

    /// Reads `vertices = [[x, y], ...]` (meters, counter-clockwise) from a TOML file.
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            what: "shape file",
            message: e.to_string(),
        })
    }

    pub fn vertices(&self) -> &[[f64; 2]] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    #[inline]
    pub fn edge(&self, i: usize) -> ([f64; 2], [f64; 2]) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn signed_area(&self) -> f64 {
        let n = self.vertices.len();
        0.5 * (0..n)
            .map(|i| {
                let (a, b) = self.edge(i);
                a[0] * b[1] - b[0] * a[1]
            })
            .sum::<f64>()
    }

    /// Area centroid; the simulator uses it as the center of friction.
    pub fn centroid(&self) -> [f64; 2] {
        let n = self.vertices.len();
        let mut cx = 0.0;
        let mut cy = 0.0;
        for i in 0..n {
            let (a, b) = self.edge(i);
            let w = a[0] * b[1] - b[0] * a[1];
            cx += (a[0] + b[0]) * w;
            cy += (a[1] + b[1]) * w;
        }
        let k = 1.0 / (6.0 * self.signed_area());
        [cx * k, cy * k]
    }

    /// Largest vertex distance from the body origin.
    pub fn circumradius(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v[0].hypot(v[1]))
            .fold(0.0, f64::max)
    }

    /// Crossing-number point-in-polygon test; boundary points may go either way.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        let n = self.vertices.len();
        let mut inside = false;
        let mut j = n - 1;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[j];
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
            j = i;
        }
        inside
    }
}

/// The stand-in objects: a 32-gon "cylinder" used for model learning and
/// four target shapes of differing geometry and friction-center offset.
pub fn builtin_shapes() -> BTreeMap<&'static str, PolygonShape> {
    let mut out = BTreeMap::new();
    out.insert("cylinder_x", PolygonShape::regular(32, 0.04).unwrap());
    out.insert("square_block", PolygonShape::rectangle(0.08, 0.08).unwrap());
    out.insert("rectangle", PolygonShape::rectangle(0.10, 0.06).unwrap());
    out.insert(
        "l_shape",
        PolygonShape::new(vec![
            [-0.04, -0.04],
            [0.04, -0.04],
            [0.04, 0.0],
            [0.0, 0.0],
            [0.0, 0.04],
            [-0.04, 0.04],
        ])
        .unwrap(),
    );
    // equilateral, circumradius 0.05, one vertex on +x
    out.insert("triangle", PolygonShape::regular(3, 0.05).unwrap());
    out
}

pub fn builtin_shape(name: &str) -> Option<PolygonShape> {
    builtin_shapes().remove(name)
}

/// The four shapes used as transfer targets in benchmarks.
pub const TARGET_SHAPES: [&str; 4] = ["square_block", "rectangle", "l_shape", "triangle"];
