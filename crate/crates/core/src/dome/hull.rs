use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::{DomeError, IdealConfiguration};
use crate::hyperbolic::{cross, dot, Circle, ExtComplex, PlaneH3};

/// Distance from a plane below which a point counts as lying on it (Klein model).
pub const COPLANAR_TOLERANCE: f64 = 1e-10;

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn unit(a: [f64; 3]) -> [f64; 3] {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Plane `n·u = h` through three points.
fn plane(a: [f64; 3], b: [f64; 3], c: [f64; 3]) -> ([f64; 3], f64) {
    let n = unit(cross(sub(b, a), sub(c, a)));
    (n, dot(n, a))
}

/// Whether all points lie on one plane.
pub(crate) fn coplanar(pts: &[[f64; 3]]) -> bool {
    if pts.len() < 4 {
        return true;
    }
    let (n, h) = plane(pts[0], pts[1], pts[2]);
    pts.iter().all(|&p| (dot(n, p) - h).abs() < COPLANAR_TOLERANCE)
}

/// A face of the hull: an ideal polygon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullFace {
    /// Configuration indices, counterclockwise seen from outside the hull.
    pub vertices: Vec<usize>,
    /// Outward unit normal of the Klein-model plane `normal·u = offset`.
    pub normal: [f64; 3],
    pub offset: f64,
    /// The hyperbolic plane, with the hull over the interior of its boundary circle.
    pub plane: PlaneH3,
}

/// An edge of the hull; a geodesic between two ideal vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HullEdge {
    pub ends: (usize, usize),
    pub faces: (usize, usize),
    /// Exterior dihedral angle: `0` for coplanar faces, `π` for a fold.
    pub exterior_angle: f64,
}

#[derive(Clone, Debug)]
pub struct HullPolyhedron {
    pub config: IdealConfiguration,
    pub faces: Vec<HullFace>,
    pub edges: Vec<HullEdge>,
    /// The concyclic case, where the dome is a doubled polygon.
    pub doubled: bool,
    pub(crate) vectors: Vec<[f64; 3]>,
    /// `(edge, neighbouring face)` for each face.
    pub(crate) face_edges: Vec<Vec<(usize, usize)>>,
}

/// Exterior angle between faces with outward Klein planes `(n1, h1)` and `(n2, h2)`, from the
/// Lorentzian inner product of the corresponding spacelike vectors.
fn exterior_angle(n1: [f64; 3], h1: f64, n2: [f64; 3], h2: f64) -> f64 {
    let c = (dot(n1, n2) - h1 * h2) / ((1.0 - h1 * h1) * (1.0 - h2 * h2)).sqrt();
    c.clamp(-1.0, 1.0).acos()
}

fn make_face(vectors: &[[f64; 3]], mut verts: Vec<usize>, n: [f64; 3], h: f64) -> Result<HullFace, DomeError> {
    // Order counterclockwise around the outward normal.
    let e1 = unit(sub(vectors[verts[0]], [n[0] * h, n[1] * h, n[2] * h]));
    let e2 = cross(n, e1);
    let angle = |v: usize| {
        let p = vectors[v];
        dot(p, e2).atan2(dot(p, e1))
    };
    verts.sort_by(|&a, &b| angle(a).total_cmp(&angle(b)));
    let plane = PlaneH3::new(Circle::from_klein_plane(n, h)?);
    Ok(HullFace { vertices: verts, normal: n, offset: h, plane })
}

struct Tri {
    v: [usize; 3],
    n: [f64; 3],
    h: f64,
    alive: bool,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Convex hull of the configuration in the Klein model.
pub fn build_hull(cfg: &IdealConfiguration) -> Result<HullPolyhedron, DomeError> {
    let vectors: Vec<[f64; 3]> = cfg.points().iter().map(|p| p.to_sphere()).collect();
    let (faces, edges, doubled) = if cfg.is_concyclic() {
        doubled_polygon(&vectors)?
    } else {
        let (faces, edges) = incremental_hull(&vectors)?;
        (faces, edges, false)
    };
    let mut face_edges = vec![Vec::new(); faces.len()];
    for (k, e) in edges.iter().enumerate() {
        face_edges[e.faces.0].push((k, e.faces.1));
        face_edges[e.faces.1].push((k, e.faces.0));
    }
    Ok(HullPolyhedron { config: cfg.clone(), faces, edges, doubled, vectors, face_edges })
}

type FacesEdges = (Vec<HullFace>, Vec<HullEdge>);

fn doubled_polygon(vectors: &[[f64; 3]]) -> Result<(Vec<HullFace>, Vec<HullEdge>, bool), DomeError> {
    let (n, h) = plane(vectors[0], vectors[1], vectors[2]);
    let all: Vec<usize> = (0..vectors.len()).collect();
    let top = make_face(vectors, all.clone(), n, h)?;
    let mut bottom = make_face(vectors, all, [-n[0], -n[1], -n[2]], -h)?;
    // Same cyclic order reversed, starting at the same vertex.
    bottom.vertices = top.vertices.iter().rev().cloned().collect();
    let k = top.vertices.len();
    let edges = (0..k)
        .map(|i| HullEdge { ends: (top.vertices[i], top.vertices[(i + 1) % k]), faces: (0, 1), exterior_angle: PI })
        .collect();
    Ok((vec![top, bottom], edges, true))
}

fn incremental_hull(p: &[[f64; 3]]) -> Result<FacesEdges, DomeError> {
    let (n0, h0) = plane(p[0], p[1], p[2]);
    let d = (3..p.len())
        .max_by(|&a, &b| (dot(n0, p[a]) - h0).abs().total_cmp(&(dot(n0, p[b]) - h0).abs()))
        .expect("at least 4 points when not coplanar");
    let inside = {
        let s = [p[0], p[1], p[2], p[d]];
        [0, 1, 2].map(|k| s.iter().map(|v| v[k]).sum::<f64>() / 4.0)
    };
    let mut tris: Vec<Tri> = Vec::new();
    let mut by_edge: HashMap<(usize, usize), usize> = HashMap::new();
    let add = |tris: &mut Vec<Tri>, by_edge: &mut HashMap<(usize, usize), usize>, mut v: [usize; 3]| {
        let (mut n, mut h) = plane(p[v[0]], p[v[1]], p[v[2]]);
        if dot(n, inside) > h {
            v.swap(1, 2);
            n = [-n[0], -n[1], -n[2]];
            h = -h;
        }
        let id = tris.len();
        for k in 0..3 {
            by_edge.insert((v[k], v[(k + 1) % 3]), id);
        }
        tris.push(Tri { v, n, h, alive: true });
    };
    for v in [[0, 1, 2], [0, 1, d], [0, 2, d], [1, 2, d]] {
        add(&mut tris, &mut by_edge, v);
    }
    for q in (3..p.len()).filter(|&q| q != d) {
        let visible: Vec<bool> =
            tris.iter().map(|t| t.alive && dot(t.n, p[q]) - t.h > -COPLANAR_TOLERANCE).collect();
        let mut horizon = Vec::new();
        for (id, t) in tris.iter().enumerate() {
            if !visible[id] {
                continue;
            }
            for k in 0..3 {
                let (a, b) = (t.v[k], t.v[(k + 1) % 3]);
                let twin = by_edge[&(b, a)];
                if !visible[twin] {
                    horizon.push((a, b));
                }
            }
        }
        for (id, t) in tris.iter_mut().enumerate() {
            if visible[id] {
                t.alive = false;
                for k in 0..3 {
                    let key = (t.v[k], t.v[(k + 1) % 3]);
                    if by_edge.get(&key) == Some(&id) {
                        by_edge.remove(&key);
                    }
                }
            }
        }
        for (a, b) in horizon {
            add(&mut tris, &mut by_edge, [a, b, q]);
        }
    }

    // Merge adjacent coplanar triangles into polygon faces.
    let alive: Vec<usize> = (0..tris.len()).filter(|&i| tris[i].alive).collect();
    let mut parent: Vec<usize> = (0..tris.len()).collect();
    for &i in &alive {
        for k in 0..3 {
            let (a, b) = (tris[i].v[k], tris[i].v[(k + 1) % 3]);
            let j = by_edge[&(b, a)];
            let apex_j = tris[j].v.iter().find(|&&x| x != a && x != b).copied().expect("triangle");
            let apex_i = tris[i].v.iter().find(|&&x| x != a && x != b).copied().expect("triangle");
            let flat = (dot(tris[i].n, p[apex_j]) - tris[i].h).abs() < COPLANAR_TOLERANCE
                && (dot(tris[j].n, p[apex_i]) - tris[j].h).abs() < COPLANAR_TOLERANCE;
            if flat {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let mut face_of_root: HashMap<usize, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut tri_face = vec![usize::MAX; tris.len()];
    for &i in &alive {
        let r = find(&mut parent, i);
        let f = *face_of_root.entry(r).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[f].push(i);
        tri_face[i] = f;
    }
    let mut faces = Vec::with_capacity(groups.len());
    for g in &groups {
        let mut verts: Vec<usize> = g.iter().flat_map(|&t| tris[t].v).collect();
        verts.sort_unstable();
        verts.dedup();
        // Area-weighted normal of the group; offset averaged over its vertices.
        let mut n = [0.0; 3];
        for &t in g {
            let v = tris[t].v;
            let c = cross(sub(p[v[1]], p[v[0]]), sub(p[v[2]], p[v[0]]));
            for k in 0..3 {
                n[k] += c[k];
            }
        }
        let n = unit(n);
        let h = verts.iter().map(|&v| dot(n, p[v])).sum::<f64>() / verts.len() as f64;
        faces.push(make_face(p, verts, n, h)?);
    }
    let mut edges = Vec::new();
    for &i in &alive {
        for k in 0..3 {
            let (a, b) = (tris[i].v[k], tris[i].v[(k + 1) % 3]);
            let j = by_edge[&(b, a)];
            let (fi, fj) = (tri_face[i], tri_face[j]);
            // Record each edge once, from the side where it runs a → b with a < b.
            if fi != fj && a < b {
                let (f1, f2) = (&faces[fi], &faces[fj]);
                let angle = exterior_angle(f1.normal, f1.offset, f2.normal, f2.offset);
                edges.push(HullEdge { ends: (a, b), faces: (fi, fj), exterior_angle: angle });
            }
        }
    }
    Ok((faces, edges))
}

/// One leaf of the bending lamination of a dome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BendingLine {
    pub edge: usize,
    pub ends: (ExtComplex, ExtComplex),
    pub weight: f64,
}

/// Edges with positive exterior angle, weighted by that angle.
pub fn bending_lamination(h: &HullPolyhedron) -> Vec<BendingLine> {
    h.edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.exterior_angle > 0.0)
        .map(|(k, e)| BendingLine {
            edge: k,
            ends: (h.config.points()[e.ends.0], h.config.points()[e.ends.1]),
            weight: e.exterior_angle,
        })
        .collect()
}

impl HullPolyhedron {
    pub fn vector(&self, i: usize) -> [f64; 3] {
        self.vectors[i]
    }

    /// Edges of a face with the face across each.
    pub fn face_edges(&self, f: usize) -> &[(usize, usize)] {
        &self.face_edges[f]
    }

    /// Largest violation of `normal·u ≤ offset` by any configuration point.
    pub fn convexity_defect(&self) -> f64 {
        let mut worst = 0f64;
        for f in &self.faces {
            for v in &self.vectors {
                worst = worst.max(dot(f.normal, *v) - f.offset);
            }
        }
        worst
    }

    /// `V − E + F` of the ideal cell decomposition of the sphere.
    pub fn euler_characteristic(&self) -> i64 {
        self.config.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Klein-model point of a point of H³.
    pub(crate) fn klein(p: &crate::hyperbolic::PointH3) -> [f64; 3] {
        let u = p.to_ball();
        let s = 2.0 / (1.0 + dot(u, u));
        [u[0] * s, u[1] * s, u[2] * s]
    }

    /// Whether a Klein-model point of the face plane lies in the face polygon.
    pub(crate) fn in_face(&self, f: usize, k: [f64; 3], tol: f64) -> bool {
        let face = &self.faces[f];
        let m = face.vertices.len();
        (0..m).all(|i| {
            let a = self.vectors[face.vertices[i]];
            let b = self.vectors[face.vertices[(i + 1) % m]];
            dot(cross(sub(b, a), sub(k, a)), face.normal) >= -tol
        })
    }
}
