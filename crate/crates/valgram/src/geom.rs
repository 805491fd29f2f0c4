//! Exact-tolerance planar convex geometry: polygons, intersection by
//! half-plane clipping, Minkowski sums by edge merge, polarity, support
//! data and chord-length profiles.
//!
//! Tolerances are absolute and assume inputs of roughly unit scale (see
//! [`Tolerances`]). Degenerate intersections (segments, points) are
//! first-class [`Overlap`] results rather than errors.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::ops::{Add, Div, Mul, Neg, Sub};
use thiserror::Error;

/// Vertex coincidence / collinearity tolerance.
pub const EPS_GEOM: f64 = 1e-9;
/// Area threshold below which an intersection counts as degenerate.
pub const EPS_AREA: f64 = 1e-12;
/// Angular tolerance (radians) for matching outer normals.
pub const EPS_ANG: f64 = 1e-9;

/// Geometric comparison tolerances, overridable per call where it matters.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    pub geom: f64,
    pub area: f64,
    pub ang: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            geom: EPS_GEOM,
            area: EPS_AREA,
            ang: EPS_ANG,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("polygon needs at least 3 vertices after canonicalization")]
    TooFewVertices,
    #[error("vertices are not in counterclockwise order")]
    NotCounterClockwise,
    #[error("polygon is not convex at vertex {0}")]
    NotConvex(usize),
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("origin is not strictly interior")]
    OriginNotInterior,
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
}

/// A point or vector in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub fn new(x: f64, y: f64) -> Self {
        Vec2 { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the cross product `self × o`.
    pub fn cross(self, o: Vec2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, o: Vec2) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise rotation by 90 degrees.
    pub fn rot90(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Vec2, t: f64) -> Vec2 {
        self + (o - self) * t
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    fn div(self, s: f64) -> Vec2 {
        Vec2::new(self.x / s, self.y / s)
    }
}

/// Closed segment; `a == b` encodes a single point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Vec2,
    pub b: Vec2,
}

impl Segment {
    pub fn new(a: Vec2, b: Vec2) -> Self {
        Segment { a, b }
    }

    pub fn point(p: Vec2) -> Self {
        Segment { a: p, b: p }
    }

    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn is_point(&self, eps: f64) -> bool {
        self.len() < eps
    }

    pub fn midpoint(&self) -> Vec2 {
        (self.a + self.b) * 0.5
    }

    pub fn direction(&self) -> Vec2 {
        self.b - self.a
    }

    /// Endpoint set comparison, orientation-free.
    pub fn same_endpoints(&self, other: &Segment, eps: f64) -> bool {
        (self.a.dist(other.a) < eps && self.b.dist(other.b) < eps)
            || (self.a.dist(other.b) < eps && self.b.dist(other.a) < eps)
    }
}

/// Counterclockwise arc of unit outer normals, possibly degenerate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalArc {
    pub start: Vec2,
    pub end: Vec2,
}

impl NormalArc {
    pub fn new(start: Vec2, end: Vec2) -> Self {
        NormalArc { start, end }
    }

    /// Angular measure of the arc going counterclockwise from start to end,
    /// in `[0, 2π)`.
    pub fn measure(&self) -> f64 {
        let a0 = self.start.y.atan2(self.start.x);
        let a1 = self.end.y.atan2(self.end.x);
        let mut d = a1 - a0;
        while d < 0.0 {
            d += std::f64::consts::TAU;
        }
        while d >= std::f64::consts::TAU {
            d -= std::f64::consts::TAU;
        }
        d
    }

    /// The arc of the reflected body: normals negate, orientation is kept.
    pub fn negate(&self) -> NormalArc {
        NormalArc::new(-self.start, -self.end)
    }

    pub fn approx_eq(&self, other: &NormalArc, eps_ang: f64) -> bool {
        self.start.dist(other.start) < eps_ang && self.end.dist(other.end) < eps_ang
    }
}

/// Convex polygon with strictly counterclockwise vertices.
///
/// Construction canonicalizes the chain: consecutive near-duplicates are
/// removed and collinear runs merged; non-convex or clockwise input is
/// rejected.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(into = "PolygonRepr")]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

#[derive(Serialize, Deserialize)]
struct PolygonRepr {
    vertices: Vec<[f64; 2]>,
}

impl From<Polygon> for PolygonRepr {
    fn from(p: Polygon) -> Self {
        PolygonRepr {
            vertices: p.vertices.iter().map(|v| [v.x, v.y]).collect(),
        }
    }
}

impl<'de> Deserialize<'de> for Polygon {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = PolygonRepr::deserialize(d)?;
        let verts = repr
            .vertices
            .into_iter()
            .map(|[x, y]| Vec2::new(x, y))
            .collect();
        Polygon::new(verts).map_err(serde::de::Error::custom)
    }
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Result<Self, GeomError> {
        Self::new_with(vertices, &Tolerances::default())
    }

    pub fn new_with(vertices: Vec<Vec2>, tol: &Tolerances) -> Result<Self, GeomError> {
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeomError::NonFinite);
        }
        if vertices.len() < 3 {
            return Err(GeomError::TooFewVertices);
        }
        let mut vs = dedup_cyclic(&vertices, tol.geom);
        if vs.len() < 3 {
            return Err(GeomError::TooFewVertices);
        }
        if signed_area(&vs) < 0.0 {
            return Err(GeomError::NotCounterClockwise);
        }
        // Merge collinear runs; reject reflex turns.
        loop {
            let n = vs.len();
            if n < 3 {
                return Err(GeomError::TooFewVertices);
            }
            let mut drop_idx = None;
            for i in 0..n {
                let prev = vs[(i + n - 1) % n];
                let cur = vs[i];
                let next = vs[(i + 1) % n];
                let e0 = cur - prev;
                let e1 = next - cur;
                let cr = e0.cross(e1);
                if cr.abs() <= tol.geom {
                    if e0.dot(e1) > 0.0 {
                        drop_idx = Some(i);
                        break;
                    }
                    return Err(GeomError::NotConvex(i));
                }
                if cr < 0.0 {
                    return Err(GeomError::NotConvex(i));
                }
            }
            match drop_idx {
                Some(i) => {
                    vs.remove(i);
                }
                None => break,
            }
        }
        Ok(Polygon { vertices: vs })
    }

    /// Axis-aligned rectangle `[x0,x1] × [y0,y1]`.
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Result<Self, GeomError> {
        Polygon::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(x1, y0),
            Vec2::new(x1, y1),
            Vec2::new(x0, y1),
        ])
    }

    /// Regular n-gon centered at the origin with circumradius `r`, one
    /// vertex on the positive x-axis.
    pub fn regular(n: usize, r: f64) -> Result<Self, GeomError> {
        let verts = (0..n)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / n as f64;
                Vec2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        Polygon::new(verts)
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }

    /// Vertex count; a valid polygon always has at least three.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> Vec2 {
        self.vertices[i % self.vertices.len()]
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_vec(&self, i: usize) -> Vec2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    /// Unit outward normal of edge i (edge direction rotated clockwise).
    pub fn outward_normal(&self, i: usize) -> Vec2 {
        let e = self.edge_vec(i);
        Vec2::new(e.y, -e.x).normalized().expect("nondegenerate edge")
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn euclid_perimeter(&self) -> f64 {
        (0..self.len()).map(|i| self.edge_vec(i).norm()).sum()
    }

    pub fn centroid(&self) -> Vec2 {
        let mut cx = 0.0;
        let mut cy = 0.0;
        let mut a = 0.0;
        for i in 0..self.len() {
            let p = self.vertex(i);
            let q = self.vertex(i + 1);
            let w = p.cross(q);
            cx += (p.x + q.x) * w;
            cy += (p.y + q.y) * w;
            a += w;
        }
        Vec2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    /// Bounding box as (lower-left, upper-right).
    pub fn bbox(&self) -> (Vec2, Vec2) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices {
            lo.x = lo.x.min(v.x);
            lo.y = lo.y.min(v.y);
            hi.x = hi.x.max(v.x);
            hi.y = hi.y.max(v.y);
        }
        (lo, hi)
    }

    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, v) in self.vertices.iter().enumerate() {
            for w in &self.vertices[i + 1..] {
                d = d.max(v.dist(*w));
            }
        }
        d
    }

    pub fn translate(&self, t: Vec2) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| *v + t).collect(),
        }
    }

    /// Point reflection at the origin. A rotation by π, so the vertex order
    /// stays counterclockwise.
    pub fn negate(&self) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| -*v).collect(),
        }
    }

    /// Homothety `λK`; negative factors reflect at the origin.
    pub fn scale(&self, factor: f64) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| *v * factor).collect(),
        }
    }

    /// Counterclockwise rotation of the body by 90 degrees.
    pub fn rotate90(&self) -> Polygon {
        Polygon {
            vertices: self.vertices.iter().map(|v| v.rot90()).collect(),
        }
    }

    pub fn support(&self, u: Vec2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index of a vertex attaining the support value in direction u.
    pub fn support_vertex(&self, u: Vec2) -> usize {
        let mut best = 0;
        let mut val = f64::NEG_INFINITY;
        for (i, v) in self.vertices.iter().enumerate() {
            let d = v.dot(u);
            if d > val {
                val = d;
                best = i;
            }
        }
        best
    }

    pub fn width(&self, u: Vec2) -> f64 {
        self.support(u) + self.support(-u)
    }

    pub fn contains(&self, p: Vec2, eps: f64) -> bool {
        (0..self.len()).all(|i| {
            let n = self.outward_normal(i);
            (p - self.vertex(i)).dot(n) <= eps
        })
    }

    /// Signed distance to the boundary: negative inside, positive outside.
    pub fn signed_distance(&self, p: Vec2) -> f64 {
        let mut max_plane = f64::NEG_INFINITY;
        for i in 0..self.len() {
            let n = self.outward_normal(i);
            max_plane = max_plane.max((p - self.vertex(i)).dot(n));
        }
        if max_plane <= 0.0 {
            return max_plane;
        }
        (0..self.len())
            .map(|i| point_segment_distance(p, &self.edge(i)))
            .fold(f64::INFINITY, f64::min)
    }

    /// The face `F(P,u)`: the edge whose outer normal matches `u` within the
    /// angular tolerance, else the supporting vertex as a degenerate segment.
    /// Edges are returned in counterclockwise traversal order.
    pub fn face(&self, u: Vec2) -> Segment {
        self.face_with(u, &Tolerances::default())
    }

    pub fn face_with(&self, u: Vec2, tol: &Tolerances) -> Segment {
        for i in 0..self.len() {
            let n = self.outward_normal(i);
            if n.dist(u) < tol.ang {
                return self.edge(i);
            }
        }
        Segment::point(self.vertex(self.support_vertex(u)))
    }

    /// Normal cone at vertex `i` as the counterclockwise arc from the
    /// incoming edge normal to the outgoing edge normal.
    pub fn normal_cone(&self, i: usize) -> NormalArc {
        let n = self.len();
        NormalArc::new(self.outward_normal((i + n - 1) % n), self.outward_normal(i))
    }

    /// Vertices shifted to the centroid and rotated to start at the
    /// lexicographically smallest vertex. Translation-invariant.
    pub fn canonical_vertices(&self) -> Vec<Vec2> {
        let c = self.centroid();
        let shifted: Vec<Vec2> = self.vertices.iter().map(|v| *v - c).collect();
        let start = lexicographic_min(&shifted);
        let n = shifted.len();
        (0..n).map(|i| shifted[(start + i) % n]).collect()
    }

    /// True if `other` is a translate of `self` within `eps` per vertex.
    pub fn is_translate_of(&self, other: &Polygon, eps: f64) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let n = self.len();
        let ca = self.centroid();
        let cb = other.centroid();
        let a: Vec<Vec2> = self.vertices.iter().map(|v| *v - ca).collect();
        let b: Vec<Vec2> = other.vertices.iter().map(|v| *v - cb).collect();
        (0..n).any(|off| (0..n).all(|i| a[i].dist(b[(i + off) % n]) < eps))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polygon serializes")
    }

    pub fn from_json(s: &str) -> Result<Polygon, serde_json::Error> {
        serde_json::from_str(s)
    }
}

fn dedup_cyclic(vs: &[Vec2], eps: f64) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::with_capacity(vs.len());
    for &v in vs {
        if out.last().is_none_or(|l| l.dist(v) >= eps) {
            out.push(v);
        }
    }
    while out.len() > 1 && out[0].dist(*out.last().unwrap()) < eps {
        out.pop();
    }
    out
}

fn signed_area(vs: &[Vec2]) -> f64 {
    let n = vs.len();
    let mut s = 0.0;
    for i in 0..n {
        s += vs[i].cross(vs[(i + 1) % n]);
    }
    s * 0.5
}

fn lexicographic_min(vs: &[Vec2]) -> usize {
    let mut best = 0;
    for (i, v) in vs.iter().enumerate() {
        let b = vs[best];
        if v.x < b.x - 1e-12 || ((v.x - b.x).abs() <= 1e-12 && v.y < b.y) {
            best = i;
        }
    }
    best
}

fn point_segment_distance(p: Vec2, s: &Segment) -> f64 {
    let d = s.b - s.a;
    let l2 = d.norm2();
    if l2 == 0.0 {
        return p.dist(s.a);
    }
    let t = ((p - s.a).dot(d) / l2).clamp(0.0, 1.0);
    p.dist(s.a + d * t)
}

/// Result of intersecting two convex bodies.
#[derive(Clone, Debug)]
pub enum Overlap {
    Polygon(Polygon),
    Degenerate(Segment),
    Empty,
}

impl Overlap {
    pub fn is_empty(&self) -> bool {
        matches!(self, Overlap::Empty)
    }

    pub fn area(&self) -> f64 {
        match self {
            Overlap::Polygon(p) => p.area(),
            _ => 0.0,
        }
    }

    pub fn as_polygon(&self) -> Option<&Polygon> {
        match self {
            Overlap::Polygon(p) => Some(p),
            _ => None,
        }
    }
}

/// Keep the part of a convex chain satisfying `⟨p, n⟩ ≤ h`.
pub fn clip_halfplane(pts: &[Vec2], n: Vec2, h: f64) -> Vec<Vec2> {
    let m = pts.len();
    let mut out = Vec::with_capacity(m + 2);
    if m == 0 {
        return out;
    }
    for i in 0..m {
        let cur = pts[i];
        let nxt = pts[(i + 1) % m];
        let dc = cur.dot(n) - h;
        let dn = nxt.dot(n) - h;
        if dc <= 0.0 {
            out.push(cur);
        }
        if (dc < 0.0 && dn > 0.0) || (dc > 0.0 && dn < 0.0) {
            let t = dc / (dc - dn);
            out.push(cur.lerp(nxt, t));
        }
    }
    out
}

/// Convex intersection by clipping `p` against every edge half-plane of `q`.
pub fn intersect(p: &Polygon, q: &Polygon) -> Overlap {
    intersect_with(p, q, &Tolerances::default())
}

pub fn intersect_with(p: &Polygon, q: &Polygon, tol: &Tolerances) -> Overlap {
    let mut pts: Vec<Vec2> = p.vertices().to_vec();
    for i in 0..q.len() {
        let n = q.outward_normal(i);
        let h = q.vertex(i).dot(n);
        pts = clip_halfplane(&pts, n, h);
        if pts.is_empty() {
            return Overlap::Empty;
        }
    }
    classify_chain(pts, tol)
}

fn classify_chain(pts: Vec<Vec2>, tol: &Tolerances) -> Overlap {
    let pts = dedup_cyclic(&pts, tol.geom);
    match pts.len() {
        0 => Overlap::Empty,
        1 => Overlap::Degenerate(Segment::point(pts[0])),
        _ => {
            if pts.len() >= 3 && signed_area(&pts) >= tol.area {
                match Polygon::new_with(pts.clone(), tol) {
                    Ok(poly) => Overlap::Polygon(poly),
                    Err(_) => Overlap::Degenerate(diameter_segment(&pts)),
                }
            } else {
                Overlap::Degenerate(diameter_segment(&pts))
            }
        }
    }
}

fn diameter_segment(pts: &[Vec2]) -> Segment {
    let mut best = (pts[0], pts[0]);
    let mut d = -1.0;
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i..] {
            let dist = a.dist(*b);
            if dist > d {
                d = dist;
                best = (*a, *b);
            }
        }
    }
    Segment::new(best.0, best.1)
}

/// Minkowski sum of two convex polygons by merging the edge sequences in
/// normal-angle order. Vertex count is at most `|p| + |q|` before
/// canonicalization merges shared directions.
pub fn minkowski_sum(p: &Polygon, q: &Polygon) -> Polygon {
    let ep = edges_from_lowest(p);
    let eq = edges_from_lowest(q);
    let start = lowest_vertex(p) + lowest_vertex(q);
    let mut dirs: Vec<Vec2> = Vec::with_capacity(ep.len() + eq.len());
    let (mut i, mut j) = (0, 0);
    while i < ep.len() || j < eq.len() {
        if i < ep.len() && (j == eq.len() || angle_le(ep[i], eq[j])) {
            dirs.push(ep[i]);
            i += 1;
        } else {
            dirs.push(eq[j]);
            j += 1;
        }
    }
    let mut vs = Vec::with_capacity(dirs.len());
    let mut cur = start;
    for d in &dirs[..dirs.len() - 1] {
        vs.push(cur);
        cur = cur + *d;
    }
    vs.push(cur);
    // When a summand carries edges at the vertex-merge tolerance the
    // canonicalized chain can pick up a sub-tolerance reflex turn; the sum
    // is convex, so the hull of the merged chain is the correct repair.
    Polygon::new(vs.clone()).unwrap_or_else(|_| {
        convex_hull(&vs).expect("Minkowski sum of convex bodies is full-dimensional")
    })
}

fn lowest_vertex(p: &Polygon) -> Vec2 {
    p.vertex(lowest_index(p))
}

fn lowest_index(p: &Polygon) -> usize {
    let mut best = 0;
    for i in 1..p.len() {
        let v = p.vertex(i);
        let b = p.vertex(best);
        if v.y < b.y || (v.y == b.y && v.x < b.x) {
            best = i;
        }
    }
    best
}

fn edges_from_lowest(p: &Polygon) -> Vec<Vec2> {
    let s = lowest_index(p);
    (0..p.len()).map(|k| p.edge_vec((s + k) % p.len())).collect()
}

/// Direction-angle ordering on `[0, 2π)` without trigonometry: upper
/// half-plane (including the positive x-axis) precedes the lower one, and
/// the cross product orders within a half-plane. Starting at the lowest
/// vertex, every counterclockwise edge sequence is nondecreasing in this
/// order, also under floating-point ties.
fn angle_le(a: Vec2, b: Vec2) -> bool {
    let class = |e: Vec2| u8::from(!(e.y > 0.0 || (e.y == 0.0 && e.x > 0.0)));
    match class(a).cmp(&class(b)) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a.cross(b) >= 0.0,
    }
}

/// Minkowski sum of a segment and a polygon: hull of the two translates.
/// A degenerate segment is a plain translation.
pub fn segment_sum(seg: &Segment, p: &Polygon) -> Polygon {
    if seg.is_point(EPS_GEOM) {
        return p.translate(seg.a);
    }
    let mut pts: Vec<Vec2> = Vec::with_capacity(2 * p.len());
    for v in p.vertices() {
        pts.push(*v + seg.a);
        pts.push(*v + seg.b);
    }
    convex_hull(&pts).expect("segment sum of a convex body is full-dimensional")
}

/// Difference body `DP = P ⊕ (−P)`, centrally symmetric about the origin.
pub fn difference_body(p: &Polygon) -> Polygon {
    minkowski_sum(p, &p.negate())
}

/// Polar body, defined for polygons with the origin strictly interior.
/// Facet `⟨x, u_i⟩ ≤ h_i` maps to the vertex `u_i / h_i`.
pub fn polar(p: &Polygon) -> Result<Polygon, GeomError> {
    let mut vs = Vec::with_capacity(p.len());
    for i in 0..p.len() {
        let n = p.outward_normal(i);
        let h = p.vertex(i).dot(n);
        if h <= EPS_GEOM {
            return Err(GeomError::OriginNotInterior);
        }
        vs.push(n / h);
    }
    Polygon::new(vs)
}

/// Support value and width of `p` in direction `u`.
pub fn support_width(p: &Polygon, u: Vec2) -> (f64, f64) {
    (p.support(u), p.width(u))
}

/// Monotone-chain convex hull. Errors if the hull is lower-dimensional.
pub fn convex_hull(points: &[Vec2]) -> Result<Polygon, GeomError> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).unwrap());
    pts.dedup_by(|a, b| a.dist(*b) < 1e-15);
    if pts.len() < 3 {
        return Err(GeomError::Degenerate("hull of fewer than 3 points"));
    }
    let mut lower: Vec<Vec2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2
            && (lower[lower.len() - 1] - lower[lower.len() - 2])
                .cross(p - lower[lower.len() - 1])
                <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2
            && (upper[upper.len() - 1] - upper[upper.len() - 2])
                .cross(p - upper[upper.len() - 1])
                <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    Polygon::new(lower)
}

/// Hausdorff distance between two convex polygons. For convex bodies the
/// supremum is attained at vertices.
pub fn hausdorff_distance(p: &Polygon, q: &Polygon) -> f64 {
    let one_way = |a: &Polygon, b: &Polygon| {
        a.vertices()
            .iter()
            .map(|v| b.signed_distance(*v).max(0.0))
            .fold(0.0_f64, f64::max)
    };
    one_way(p, q).max(one_way(q, p))
}

/// Intersection point of two lines given by point and direction.
pub fn line_intersection(p1: Vec2, d1: Vec2, p2: Vec2, d2: Vec2) -> Option<Vec2> {
    let det = d1.cross(d2);
    if det.abs() < 1e-14 {
        return None;
    }
    let t = (p2 - p1).cross(d2) / det;
    Some(p1 + d1 * t)
}

/// Parameter interval of `{base + s·dir} ∩ P` along `s`, or `None` when the
/// line misses the body.
pub fn line_clip(p: &Polygon, base: Vec2, dir: Vec2) -> Option<(f64, f64)> {
    let mut lo = f64::NEG_INFINITY;
    let mut hi = f64::INFINITY;
    for i in 0..p.len() {
        let n = p.outward_normal(i);
        let rhs = (p.vertex(i) - base).dot(n);
        let den = dir.dot(n);
        if den.abs() < 1e-14 {
            if rhs < -1e-12 {
                return None;
            }
        } else if den > 0.0 {
            hi = hi.min(rhs / den);
        } else {
            lo = lo.max(rhs / den);
        }
    }
    if hi - lo < -1e-12 {
        None
    } else {
        Some((lo, lo.max(hi)))
    }
}

/// Where a point sits on the boundary of a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundaryLocus {
    Vertex(usize),
    /// Interior of edge `i` (from vertex i to vertex i+1).
    EdgeInterior(usize),
}

/// Classify a boundary point within `eps`; `None` if the point is not on
/// the boundary.
pub fn locate_on_boundary(p: &Polygon, x: Vec2, eps: f64) -> Option<BoundaryLocus> {
    for i in 0..p.len() {
        if x.dist(p.vertex(i)) < eps {
            return Some(BoundaryLocus::Vertex(i));
        }
    }
    let mut best: Option<(f64, usize)> = None;
    for i in 0..p.len() {
        let d = point_segment_distance(x, &p.edge(i));
        if best.is_none_or(|(bd, _)| d < bd) {
            best = Some((d, i));
        }
    }
    match best {
        Some((d, i)) if d < eps => Some(BoundaryLocus::EdgeInterior(i)),
        _ => None,
    }
}

/// Chord-length data of a convex polygon in a fixed direction.
///
/// Chords parallel to `dir` are indexed by the offset `t = ⟨x, axis⟩` with
/// `axis = R(dir)`. The length function is concave and piecewise linear
/// with breakpoints exactly at vertex offsets, so interpolation between
/// cached breakpoint lengths is exact.
#[derive(Clone, Debug)]
pub struct ChordProfile {
    poly: Polygon,
    pub dir: Vec2,
    pub axis: Vec2,
    breaks: Vec<f64>,
    lengths: Vec<f64>,
}

impl ChordProfile {
    pub fn new(p: &Polygon, dir: Vec2) -> ChordProfile {
        let dir = dir.normalized().expect("direction must be nonzero");
        let axis = dir.rot90();
        let mut breaks: Vec<f64> = p.vertices().iter().map(|v| v.dot(axis)).collect();
        breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
        breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let mut lengths: Vec<f64> = breaks
            .iter()
            .map(|&t| match line_clip(p, axis * t, dir) {
                Some((lo, hi)) => (hi - lo).max(0.0),
                None => 0.0,
            })
            .collect();
        // At the extreme offsets the chord is the face itself; take its
        // length from the face so that chords sampled on a parallel edge
        // and the face lengths used by the chord laws agree bit for bit.
        let n = lengths.len();
        lengths[0] = p.face(-axis).len();
        lengths[n - 1] = p.face(axis).len();
        // A flat maximum (every centrally symmetric body has one) comes
        // out tilted by an ulp when its two ends are clipped separately;
        // snap the top so interpolated lengths on the plateau are exact.
        let max = lengths.iter().fold(0.0_f64, |a, &b| a.max(b));
        for l in lengths.iter_mut() {
            if *l > max * (1.0 - 4e-16) {
                *l = max;
            }
        }
        ChordProfile {
            poly: p.clone(),
            dir,
            axis,
            breaks,
            lengths,
        }
    }

    pub fn t_min(&self) -> f64 {
        self.breaks[0]
    }

    pub fn t_max(&self) -> f64 {
        *self.breaks.last().unwrap()
    }

    /// Maximum chord length; equals the radial function of the difference
    /// body in direction `dir`.
    pub fn max_length(&self) -> f64 {
        self.lengths.iter().fold(0.0_f64, |a, &b| a.max(b))
    }

    pub fn length_at(&self, t: f64) -> f64 {
        if t < self.t_min() || t > self.t_max() {
            return 0.0;
        }
        match self
            .breaks
            .binary_search_by(|b| b.partial_cmp(&t).unwrap())
        {
            Ok(i) => self.lengths[i],
            Err(i) => {
                let (t0, t1) = (self.breaks[i - 1], self.breaks[i]);
                let (l0, l1) = (self.lengths[i - 1], self.lengths[i]);
                l0 + (l1 - l0) * (t - t0) / (t1 - t0)
            }
        }
    }

    /// Chord at offset `t` as a segment oriented along `dir`.
    pub fn chord_at(&self, t: f64) -> Option<Segment> {
        let base = self.axis * t;
        line_clip(&self.poly, base, self.dir)
            .map(|(lo, hi)| Segment::new(base + self.dir * lo, base + self.dir * hi))
    }

    /// Closed superlevel set `{t : ℓ(t) ≥ r}`, an interval by concavity.
    pub fn superlevel(&self, r: f64) -> Option<(f64, f64)> {
        if r > self.max_length() {
            return None;
        }
        if r <= 0.0 {
            return Some((self.t_min(), self.t_max()));
        }
        let n = self.breaks.len();
        let lo = if self.lengths[0] >= r {
            self.t_min()
        } else {
            let mut v = None;
            for i in 0..n - 1 {
                if self.lengths[i] < r && self.lengths[i + 1] >= r {
                    let frac = (r - self.lengths[i]) / (self.lengths[i + 1] - self.lengths[i]);
                    v = Some(self.breaks[i] + (self.breaks[i + 1] - self.breaks[i]) * frac);
                    break;
                }
            }
            v?
        };
        let hi = if self.lengths[n - 1] >= r {
            self.t_max()
        } else {
            let mut v = None;
            for i in (1..n).rev() {
                if self.lengths[i] < r && self.lengths[i - 1] >= r {
                    let frac = (r - self.lengths[i]) / (self.lengths[i - 1] - self.lengths[i]);
                    v = Some(self.breaks[i] + (self.breaks[i - 1] - self.breaks[i]) * frac);
                    break;
                }
            }
            v?
        };
        Some((lo, hi))
    }

    pub fn superlevel_measure(&self, r: f64) -> f64 {
        match self.superlevel(r) {
            Some((lo, hi)) => hi - lo,
            None => 0.0,
        }
    }

    /// Exact integral of the chord length over the superlevel set
    /// `{ℓ ≥ r}`: the area of the slab of the body between the two chords
    /// of length `r`.
    pub fn slab_area(&self, r: f64) -> f64 {
        let Some((lo, hi)) = self.superlevel(r) else {
            return 0.0;
        };
        let mut total = 0.0;
        let n = self.breaks.len();
        for i in 0..n - 1 {
            let (t0, t1) = (self.breaks[i], self.breaks[i + 1]);
            let a = t0.max(lo);
            let b = t1.min(hi);
            if b <= a {
                continue;
            }
            total += (self.length_at(a) + self.length_at(b)) * 0.5 * (b - a);
        }
        total
    }
}

/// Seeded random convex polygon: hull of points sampled uniformly in a
/// disk, retried until at least `min_vertices` hull vertices remain.
pub fn random_convex_polygon<R: Rng>(rng: &mut R, min_vertices: usize, radius: f64) -> Polygon {
    loop {
        let n = (min_vertices * 4).max(16);
        let pts: Vec<Vec2> = (0..n)
            .map(|_| {
                let a: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                let r: f64 = radius * rng.random_range(0.0_f64..1.0).sqrt();
                Vec2::new(r * a.cos(), r * a.sin())
            })
            .collect();
        if let Ok(hull) = convex_hull(&pts) {
            if hull.len() >= min_vertices && hull.area() > 0.05 * radius * radius {
                return hull;
            }
        }
    }
}
