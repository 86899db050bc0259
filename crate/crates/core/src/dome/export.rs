//! JSON and mesh output for hulls.

use std::fmt::Write;

use serde_json::{json, Value};

use super::{DomeError, HullPolyhedron};
use crate::hyperbolic::ExtComplex;

/// `[re, im]`, or `"inf"` for the point at infinity.
pub(crate) fn point_json(p: &ExtComplex) -> Value {
    match p {
        ExtComplex::Infinity => json!("inf"),
        ExtComplex::Finite(z) => json!([z.re, z.im]),
    }
}

pub(crate) fn parse_point(v: &Value) -> Result<ExtComplex, DomeError> {
    if v.as_str() == Some("inf") {
        return Ok(ExtComplex::Infinity);
    }
    match v.as_array().map(|a| a.iter().map(Value::as_f64).collect::<Option<Vec<_>>>()) {
        Some(Some(c)) if c.len() == 2 && c.iter().all(|x| x.is_finite()) => Ok(ExtComplex::new(c[0], c[1])),
        _ => Err(DomeError::Json(format!("expected [re, im] or \"inf\", got {v}"))),
    }
}

impl HullPolyhedron {
    /// Faces, edges with angles, and the doubled flag.
    pub fn to_json(&self) -> Value {
        let faces: Vec<Value> = self
            .faces
            .iter()
            .map(|f| {
                let b = &f.plane.boundary;
                json!({
                    "vertices": f.vertices,
                    "klein_normal": f.normal,
                    "klein_offset": f.offset,
                    "circle": { "a": b.a, "b": [b.b.re, b.b.im], "c": b.c },
                })
            })
            .collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| json!({ "ends": [e.ends.0, e.ends.1], "faces": [e.faces.0, e.faces.1], "exterior_angle": e.exterior_angle }))
            .collect();
        json!({
            "points": self.config.points().iter().map(point_json).collect::<Vec<_>>(),
            "doubled": self.doubled,
            "faces": faces,
            "edges": edges,
            "euler_characteristic": self.euler_characteristic(),
        })
    }

    /// A triangulated mesh of the dome in the ball model, as OBJ text.
    ///
    /// Faces are fanned from their first vertex and each triangle is subdivided `level` times in
    /// the Klein model, where the faces are flat, before being mapped to the ball. For the
    /// doubled polygon only one copy is written.
    pub fn to_obj(&self, level: usize) -> String {
        let mut out = String::new();
        let mut count = 0usize;
        let n = 1usize << level;
        let faces = if self.doubled { &self.faces[..1] } else { &self.faces[..] };
        for f in faces {
            let v = &f.vertices;
            for k in 1..v.len() - 1 {
                let (a, b, c) = (self.vectors[v[0]], self.vectors[v[k]], self.vectors[v[k + 1]]);
                let base = count;
                // Barycentric lattice rows i + j ≤ n.
                for i in 0..=n {
                    for j in 0..=n - i {
                        let (s, t) = (i as f64 / n as f64, j as f64 / n as f64);
                        let r = 1.0 - s - t;
                        let p: Vec<f64> = (0..3).map(|m| r * a[m] + s * b[m] + t * c[m]).collect();
                        // Klein to ball; the ideal vertices stay on the sphere.
                        let q = p.iter().map(|x| x * x).sum::<f64>();
                        let d = 1.0 + (1.0 - q).max(0.0).sqrt();
                        let _ = writeln!(out, "v {} {} {}", p[0] / d, p[1] / d, p[2] / d);
                        count += 1;
                    }
                }
                let row = |i: usize| base + 1 + (0..i).map(|r| n + 1 - r).sum::<usize>();
                for i in 0..n {
                    for j in 0..n - i {
                        let (p, q, r) = (row(i) + j, row(i) + j + 1, row(i + 1) + j);
                        let _ = writeln!(out, "f {p} {q} {r}");
                        if j + 1 < n - i {
                            let _ = writeln!(out, "f {q} {} {r}", row(i + 1) + j + 1);
                        }
                    }
                }
            }
        }
        out
    }
}
