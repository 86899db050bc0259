//! The intrinsic hyperbolic metric of the dome, by developing faces into H².
//!
//! Each face carries a chart: a Möbius map sending its plane to the hemisphere over the unit
//! circle, so that the face becomes an ideal polygon of the disk. Crossing an edge rotates the
//! neighbouring face about the edge by its exterior angle, which flattens it into the same
//! hemisphere. Walks in the face adjacency graph therefore develop the universal cover of the
//! dome onto H².

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;
use serde::Serialize;

use super::{Carrier, DomeError, HullPolyhedron, RetractionResult};
use crate::hyperbolic::{dist_h3, BoundaryPointH2, ExtComplex, GeodesicH2, MobiusMap, PointH2, PointH3};

/// Search nodes expanded before the injectivity radius search gives up on exactness.
pub const NODE_LIMIT: usize = 400_000;

/// A point of the dome together with a face containing it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DomePoint {
    pub face: usize,
    pub point: PointH3,
}

/// Chart of face `f`: its first three vertices go to `1, i, −1`.
pub(crate) fn chart(h: &HullPolyhedron, f: usize) -> Result<MobiusMap, DomeError> {
    let v = &h.faces[f].vertices;
    let p = h.config.points();
    let i = ExtComplex::new(0.0, 1.0);
    Ok(MobiusMap::from_triples([p[v[0]], p[v[1]], p[v[2]]], [ExtComplex::new(1.0, 0.0), i, ExtComplex::new(-1.0, 0.0)])?)
}

/// The point of the hemisphere over the unit circle above the disk point `z`.
fn lift(z: Complex64) -> PointH3 {
    let s = 1.0 + z.norm_sqr();
    PointH3 { x: 2.0 * z.re / s, y: 2.0 * z.im / s, t: (1.0 - z.norm_sqr()) / s }
}

fn project(p: &PointH3) -> Complex64 {
    Complex64::new(p.x, p.y) / (1.0 + p.t)
}

impl DomePoint {
    pub fn new(h: &HullPolyhedron, face: usize, point: PointH3) -> Result<Self, DomeError> {
        let ok = face < h.faces.len()
            && h.faces[face].plane.signed_sinh_distance(&point).abs() < 1e-7
            && h.in_face(face, HullPolyhedron::klein(&point), 1e-9);
        if ok {
            Ok(DomePoint { face, point })
        } else {
            Err(DomeError::NotOnFace(face))
        }
    }

    /// The point of `face` at position `w` of its chart disk.
    pub fn from_chart(h: &HullPolyhedron, face: usize, w: Complex64) -> Result<Self, DomeError> {
        if face >= h.faces.len() {
            return Err(DomeError::NotOnFace(face));
        }
        let p = chart(h, face)?.inverse().extend(&PointH2::new(w)?.to_hemisphere());
        Self::new(h, face, p)
    }

    pub fn from_retraction(h: &HullPolyhedron, r: &RetractionResult) -> Self {
        let face = match r.carrier {
            Carrier::Face(f) => f,
            Carrier::Edge(e) => h.edges[e].faces.0,
        };
        DomePoint { face, point: r.point }
    }

    /// Position in the chart disk of its face.
    pub fn chart_position(&self, h: &HullPolyhedron) -> Result<Complex64, DomeError> {
        Ok(project(&chart(h, self.face)?.extend(&self.point)))
    }
}

/// Developing map of the face across edge `e` from a face developed by `d`.
fn unfold(h: &HullPolyhedron, d: &MobiusMap, e: usize, g: usize) -> MobiusMap {
    let edge = &h.edges[e];
    let pts = h.config.points();
    let (a, b) = (d.apply(pts[edge.ends.0]), d.apply(pts[edge.ends.1]));
    let third = h.faces[g]
        .vertices
        .iter()
        .find(|&&v| v != edge.ends.0 && v != edge.ends.1)
        .expect("faces have at least three vertices");
    let mut best: Option<(f64, MobiusMap)> = None;
    // Only one sense of rotation brings the face down onto the hemisphere.
    for sign in [1.0, -1.0] {
        let m = MobiusMap::elliptic(a, b, sign * edge.exterior_angle).expect("distinct ends").compose(d);
        let miss = m.apply(pts[*third]).finite().map_or(f64::INFINITY, |z| (z.norm() - 1.0).abs());
        if best.as_ref().map_or(true, |(b, _)| miss < *b) {
            best = Some((miss, m));
        }
    }
    best.expect("two candidates").1
}

/// The developed edge `e` under `d`, as a geodesic of the disk.
fn developed_edge(h: &HullPolyhedron, d: &MobiusMap, e: usize) -> Option<GeodesicH2> {
    let pts = h.config.points();
    let ends = h.edges[e].ends;
    let a = d.apply(pts[ends.0]).finite()?;
    let b = d.apply(pts[ends.1]).finite()?;
    GeodesicH2::new(BoundaryPointH2::from_complex(a), BoundaryPointH2::from_complex(b)).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InjectivityEstimate {
    /// Half the shortest essential loop found; an upper bound on the injectivity radius.
    pub radius: f64,
    pub loop_length: f64,
    /// Whether every loop shorter than the one found was ruled out.
    pub exact: bool,
    pub explored: usize,
    pub depth: usize,
}

struct Node {
    key: f64,
    depth: usize,
    face: usize,
    map: MobiusMap,
    entered: Option<usize>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // Smallest key first.
    fn cmp(&self, other: &Self) -> Ordering {
        other.key.total_cmp(&self.key)
    }
}

/// Injectivity radius of the dome at `p`, from walks of at most `depth` edge crossings.
///
/// The dome retracts onto the dual graph of its faces, so every walk that returns to the
/// starting face without immediately recrossing an edge is an essential loop; its length
/// through `p` is the distance from `p` to its developed copy. Walks are explored in order of
/// the distance from `p` to the last edge crossed, which bounds every loop further down the
/// walk, so the search stops once that distance reaches the best loop.
pub fn dome_injectivity_radius(h: &HullPolyhedron, p: &DomePoint, depth: usize) -> Result<InjectivityEstimate, DomeError> {
    let root = chart(h, p.face)?;
    let up = root.extend(&p.point);
    let p0 = PointH2::new(project(&up))?;
    let mut heap = BinaryHeap::new();
    heap.push(Node { key: 0.0, depth: 0, face: p.face, map: root, entered: None });
    let (mut best, mut truncated) = (f64::INFINITY, f64::INFINITY);
    let (mut explored, mut capped) = (0, false);
    while let Some(node) = heap.pop() {
        if node.key >= best {
            break;
        }
        if explored == NODE_LIMIT {
            capped = true;
            break;
        }
        explored += 1;
        if node.depth > 0 && node.face == p.face {
            best = best.min(dist_h3(&up, &node.map.extend(&p.point)));
        }
        if node.depth == depth {
            truncated = truncated.min(node.key);
            continue;
        }
        for &(e, g) in h.face_edges(node.face) {
            if node.entered == Some(e) {
                continue;
            }
            let map = unfold(h, &node.map, e, g);
            let key = developed_edge(h, &node.map, e).map_or(node.key, |l| l.distance_to(&p0).max(node.key));
            heap.push(Node { key, depth: node.depth + 1, face: g, map, entered: Some(e) });
        }
    }
    if !best.is_finite() {
        return Err(DomeError::DepthTooSmall(depth));
    }
    Ok(InjectivityEstimate {
        radius: best / 2.0,
        loop_length: best,
        exact: !capped && truncated >= best,
        explored,
        depth,
    })
}

/// Bending met by a geodesic arc of the dome.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArcBending {
    /// Sum of the exterior angles of the edges crossed.
    pub bending: f64,
    pub crossings: Vec<usize>,
    pub end: DomePoint,
}

/// Follows the dome geodesic from `start` for `length`, leaving in the direction `direction`
/// (an angle in the chart of the start face, measured after moving the start point to the
/// centre of the disk).
pub fn arc_bending(h: &HullPolyhedron, start: &DomePoint, direction: f64, length: f64) -> Result<ArcBending, DomeError> {
    let root = chart(h, start.face)?;
    let p0 = project(&root.extend(&start.point));
    let one = Complex64::new(1.0, 0.0);
    let to_centre = |c: Complex64| (c - p0) / (one - p0.conj() * c);
    let dir = Complex64::from_polar(1.0, direction);
    let rho_end = (length / 2.0).tanh();
    let pts = h.config.points();
    let (mut face, mut map, mut entered, mut rho) = (start.face, root, None, 0.0);
    let (mut bending, mut crossings) = (0.0, Vec::new());
    loop {
        let mut next: Option<(f64, usize, usize)> = None;
        for &(e, g) in h.face_edges(face) {
            if entered == Some(e) {
                continue;
            }
            let ends = h.edges[e].ends;
            let (Some(c1), Some(c2)) = (map.apply(pts[ends.0]).finite(), map.apply(pts[ends.1]).finite()) else {
                continue;
            };
            let (c1, c2) = (to_centre(c1), to_centre(c2));
            // The edge is A|z|² + 2Re(B̄z) + A = 0; along z = ρ·dir this is Aρ² + 2Cρ + A = 0.
            let a = (c2.conj() * c1).im;
            let c = ((Complex64::i() * (c1 - c2)).conj() * dir).re;
            let disc = c * c - a * a;
            if a == 0.0 || disc < 0.0 {
                continue;
            }
            // The roots multiply to 1; take the one inside the disk.
            let q = -(c + c.signum() * disc.sqrt());
            let r = a / q;
            if r > rho && r < 1.0 && next.map_or(true, |(best, _, _)| r < best) {
                next = Some((r, e, g));
            }
        }
        match next {
            Some((r, e, g)) if r < rho_end => {
                bending += h.edges[e].exterior_angle;
                crossings.push(e);
                map = unfold(h, &map, e, g);
                face = g;
                entered = Some(e);
                rho = r;
            }
            _ => break,
        }
    }
    let zt = dir * rho_end;
    let z = (zt + p0) / (one + p0.conj() * zt);
    let point = map.inverse().extend(&lift(z));
    Ok(ArcBending { bending, crossings, end: DomePoint { face, point } })
}
