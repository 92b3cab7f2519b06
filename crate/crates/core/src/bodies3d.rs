//! Convex polytopes in ℝ³ as vertices plus outward facet loops, with the edge
//! and vertex normal cones derived from adjacency.

use crate::bodies2d::{convex_hull, Point2, Polygon2};
use crate::error::{GeometryError, Result};
use crate::rng::{sample_stream, unit};
use nalgebra::{Matrix2, Matrix3, Vector3};
use std::collections::HashMap;

pub type Point3 = Vector3<f64>;

#[derive(Debug, Clone)]
pub struct Facet {
    /// Vertex indices, counterclockwise seen from outside.
    pub vertices: Vec<usize>,
    /// Outer unit normal.
    pub normal: Point3,
    /// Plane offset: the facet lies in `⟨normal, x⟩ = offset`.
    pub offset: f64,
    /// In-plane inward unit normals of the loop edges, paired with the offset
    /// at the edge start.
    pub(crate) edge_planes: Vec<(Point3, f64)>,
}

#[derive(Debug, Clone)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    /// The facet on the left of `a → b` seen from outside, then the one on the right.
    pub facets: [usize; 2],
    /// Inverse Gram matrix of the two outer facet normals.
    pub(crate) gram_inv: Matrix2<f64>,
}

#[derive(Debug, Clone)]
pub struct VertexCone {
    pub facets: Vec<usize>,
    /// Unit directions of the incident edges, pointing away from the vertex.
    pub edge_dirs: Vec<Point3>,
    /// Inverses of `[−n_i −n_j −n_k]` over all independent triples of incident
    /// facet normals (Carathéodory decomposition of the inward normal cone).
    pub(crate) triples: Vec<Matrix3<f64>>,
}

#[derive(Debug, Clone)]
pub struct Polytope3 {
    vertices: Vec<Point3>,
    facets: Vec<Facet>,
    edges: Vec<Edge>,
    cones: Vec<VertexCone>,
    scale: f64,
}

/// Named solids; all are centred at the origin and centrally symmetric.
#[derive(Debug, Clone)]
pub enum StandardSolid {
    Cube,
    HexagonalPrism,
    TruncatedOctahedron,
    RhombicDodecahedron,
    ElongatedDodecahedron,
    PrismOver(Polygon2, f64),
}

impl StandardSolid {
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "cube" => StandardSolid::Cube,
            "hexagonal_prism" => StandardSolid::HexagonalPrism,
            "truncated_octahedron" => StandardSolid::TruncatedOctahedron,
            "rhombic_dodecahedron" => StandardSolid::RhombicDodecahedron,
            "elongated_dodecahedron" => StandardSolid::ElongatedDodecahedron,
            other => return Err(GeometryError::Spec(format!("unknown standard solid `{other}`"))),
        })
    }
}

pub fn standard_polytope(solid: &StandardSolid) -> Result<Polytope3> {
    match solid {
        StandardSolid::Cube => {
            let pts: Vec<Point3> = (0..8)
                .map(|i| Point3::new(bit(i, 0) - 0.5, bit(i, 1) - 0.5, bit(i, 2) - 0.5))
                .collect();
            Polytope3::hull(&pts)
        }
        StandardSolid::HexagonalPrism => prism_over(&Polygon2::regular(6, 1.0, 0.0)?, 1.0),
        StandardSolid::TruncatedOctahedron => {
            // permutations of (0, ±1, ±2), scaled to unit edge length
            let s = 1.0 / 2f64.sqrt();
            let mut pts = Vec::new();
            for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                for (a, b) in [(1.0, 2.0), (1.0, -2.0), (-1.0, 2.0), (-1.0, -2.0)] {
                    let base = [0.0, a, b];
                    pts.push(Point3::new(base[perm[0]], base[perm[1]], base[perm[2]]) * s);
                }
            }
            Polytope3::hull(&pts)
        }
        StandardSolid::RhombicDodecahedron => {
            let s = 1.0 / 3f64.sqrt();
            let mut pts: Vec<Point3> = (0..8)
                .map(|i| Point3::new(2.0 * bit(i, 0) - 1.0, 2.0 * bit(i, 1) - 1.0, 2.0 * bit(i, 2) - 1.0) * s)
                .collect();
            for axis in 0..3 {
                for sign in [-2.0, 2.0] {
                    let mut v = Point3::zeros();
                    v[axis] = sign * s;
                    pts.push(v);
                }
            }
            Polytope3::hull(&pts)
        }
        StandardSolid::ElongatedDodecahedron => {
            // zonotope of the four body diagonals (a rhombic dodecahedron)
            // stretched along the z axis
            let gens = [
                Point3::new(1.0, 1.0, 1.0),
                Point3::new(1.0, -1.0, 1.0),
                Point3::new(-1.0, 1.0, 1.0),
                Point3::new(-1.0, -1.0, 1.0),
                Point3::new(0.0, 0.0, 2.0),
            ];
            let pts: Vec<Point3> = (0..1 << gens.len())
                .map(|mask| {
                    gens.iter()
                        .enumerate()
                        .map(|(i, g)| g * (bit(mask, i) - 0.5))
                        .sum::<Point3>()
                        / 3f64.sqrt()
                })
                .collect();
            Polytope3::hull(&pts)
        }
        StandardSolid::PrismOver(base, height) => prism_over(base, *height),
    }
}

fn bit(i: usize, k: usize) -> f64 {
    ((i >> k) & 1) as f64
}

/// Right prism of the given height over a centrally symmetric base, centred
/// at the origin.
pub fn prism_over(base: &Polygon2, height: f64) -> Result<Polytope3> {
    if !base.is_centrally_symmetric(1e-9) {
        return Err(GeometryError::Domain("prism base must be centrally symmetric".into()));
    }
    if !(height > 0.0) {
        return Err(GeometryError::Domain(format!("prism height must be positive, got {height}")));
    }
    let c = base.centroid();
    let n = base.len();
    let half = base.vertices()[..n / 2].iter().map(|&v| v - c);
    // build the vertex set from one half and its negation so that it is
    // exactly symmetric
    let mut ring: Vec<Point2> = half.clone().collect();
    ring.extend(half.map(|v| -v));
    let mut vertices = Vec::with_capacity(2 * n);
    for z in [-0.5 * height, 0.5 * height] {
        vertices.extend(ring.iter().map(|v| Point3::new(v.x, v.y, z)));
    }
    let mut facets = vec![(0..n).rev().collect::<Vec<_>>(), (n..2 * n).collect()];
    for i in 0..n {
        let j = (i + 1) % n;
        facets.push(vec![i, j, n + j, n + i]);
    }
    Polytope3::new(vertices, facets)
}

impl Polytope3 {
    pub fn new(vertices: Vec<Point3>, facets: Vec<Vec<usize>>) -> Result<Self> {
        let invalid = |m: String| Err(GeometryError::InvalidPolytope(m));
        if vertices.len() < 4 || facets.len() < 4 {
            return invalid(format!("{} vertices and {} facets", vertices.len(), facets.len()));
        }
        if vertices.iter().any(|v| !v.iter().all(|c| c.is_finite())) {
            return invalid("non-finite vertex".into());
        }
        let centroid = vertices.iter().sum::<Point3>() / vertices.len() as f64;
        let scale = vertices.iter().map(|v| (v - centroid).norm()).fold(0.0, f64::max);
        let tol = 1e-9 * scale;

        let mut built = Vec::with_capacity(facets.len());
        for (fi, lp) in facets.iter().enumerate() {
            if lp.len() < 3 || lp.iter().any(|&i| i >= vertices.len()) {
                return invalid(format!("facet {fi} has a malformed loop"));
            }
            let mut seen = lp.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != lp.len() {
                return invalid(format!("facet {fi} repeats a vertex"));
            }
            // Newell normal: robust for any planar polygon
            let mut nrm = Point3::zeros();
            for k in 0..lp.len() {
                let (a, b) = (vertices[lp[k]], vertices[lp[(k + 1) % lp.len()]]);
                nrm += Point3::new((a.y - b.y) * (a.z + b.z), (a.z - b.z) * (a.x + b.x), (a.x - b.x) * (a.y + b.y));
            }
            if nrm.norm() <= tol * scale {
                return invalid(format!("facet {fi} has zero area"));
            }
            let normal = nrm.normalize();
            let fc = lp.iter().map(|&i| vertices[i]).sum::<Point3>() / lp.len() as f64;
            let offset = normal.dot(&fc);
            if lp.iter().any(|&i| (normal.dot(&vertices[i]) - offset).abs() > tol) {
                return invalid(format!("facet {fi} is not planar"));
            }
            if normal.dot(&centroid) >= offset - tol {
                return invalid(format!("facet {fi} is oriented inward"));
            }
            if vertices.iter().any(|v| normal.dot(v) > offset + tol) {
                return invalid(format!("polytope is not convex at facet {fi}"));
            }
            let edge_planes = (0..lp.len())
                .map(|k| {
                    let (a, b) = (vertices[lp[k]], vertices[lp[(k + 1) % lp.len()]]);
                    let m = normal.cross(&(b - a)).normalize();
                    (m, m.dot(&a))
                })
                .collect();
            built.push(Facet {
                vertices: lp.clone(),
                normal,
                offset,
                edge_planes,
            });
        }

        // every directed loop edge must appear once, with its reverse in another facet
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in built.iter().enumerate() {
            for k in 0..f.vertices.len() {
                let key = (f.vertices[k], f.vertices[(k + 1) % f.vertices.len()]);
                if directed.insert(key, fi).is_some() {
                    return invalid(format!("edge {key:?} is traversed twice in the same direction"));
                }
            }
        }
        let mut edges = Vec::new();
        for (&(a, b), &f1) in &directed {
            let Some(&f2) = directed.get(&(b, a)) else {
                return invalid(format!("edge ({a}, {b}) has only one facet"));
            };
            if a < b {
                let (n1, n2) = (built[f1].normal, built[f2].normal);
                let c = n1.dot(&n2);
                let gram = Matrix2::new(1.0, c, c, 1.0);
                let Some(gram_inv) = gram.try_inverse().filter(|_| 1.0 - c.abs() > 1e-12) else {
                    return invalid(format!("facets {f1} and {f2} are coplanar"));
                };
                edges.push(Edge {
                    a,
                    b,
                    facets: [f1, f2],
                    gram_inv,
                });
            }
        }
        edges.sort_by_key(|e| (e.a, e.b));

        let (v, e, f) = (vertices.len() as i64, edges.len() as i64, built.len() as i64);
        if v - e + f != 2 {
            return invalid(format!("Euler characteristic V - E + F = {v} - {e} + {f} != 2"));
        }

        let mut cones = Vec::with_capacity(vertices.len());
        for (vi, vp) in vertices.iter().enumerate() {
            let facets: Vec<usize> = (0..built.len()).filter(|&fi| built[fi].vertices.contains(&vi)).collect();
            if facets.len() < 3 {
                return invalid(format!("vertex {vi} lies on {} facets", facets.len()));
            }
            let edge_dirs = edges
                .iter()
                .filter_map(|ed| match (ed.a == vi, ed.b == vi) {
                    (true, _) => Some((vertices[ed.b] - vp).normalize()),
                    (_, true) => Some((vertices[ed.a] - vp).normalize()),
                    _ => None,
                })
                .collect();
            let mut triples = Vec::new();
            for i in 0..facets.len() {
                for j in i + 1..facets.len() {
                    for k in j + 1..facets.len() {
                        let m = -Matrix3::from_columns(&[built[facets[i]].normal, built[facets[j]].normal, built[facets[k]].normal]);
                        if m.determinant().abs() > 1e-10 {
                            triples.push(m.try_inverse().expect("nonzero determinant"));
                        }
                    }
                }
            }
            cones.push(VertexCone {
                facets,
                edge_dirs,
                triples,
            });
        }

        Ok(Polytope3 {
            vertices,
            facets: built,
            edges,
            cones,
            scale,
        })
    }

    /// Convex hull of a small point set (brute force over point triples).
    pub fn hull(points: &[Point3]) -> Result<Self> {
        let n = points.len();
        let c = points.iter().sum::<Point3>() / n.max(1) as f64;
        let scale = points.iter().map(|p| (p - c).norm()).fold(0.0, f64::max);
        let tol = 1e-9 * scale.max(f64::MIN_POSITIVE);
        let mut planes: Vec<(Point3, f64)> = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let nrm = (points[j] - points[i]).cross(&(points[k] - points[i]));
                    if nrm.norm() <= tol * scale {
                        continue;
                    }
                    let mut nrm = nrm.normalize();
                    let mut d = nrm.dot(&points[i]);
                    let above = points.iter().filter(|p| nrm.dot(p) > d + tol).count();
                    let below = points.iter().filter(|p| nrm.dot(p) < d - tol).count();
                    if above > 0 && below > 0 {
                        continue;
                    }
                    if above > 0 {
                        nrm = -nrm;
                        d = -d;
                    }
                    if !planes.iter().any(|(m, e)| (m - nrm).norm() < 1e-9 && (e - d).abs() < tol) {
                        planes.push((nrm, d));
                    }
                }
            }
        }
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut facets = Vec::new();
        for (nrm, d) in planes {
            let on: Vec<usize> = (0..n).filter(|&i| (nrm.dot(&points[i]) - d).abs() <= tol).collect();
            let e1 = (points[on[1]] - points[on[0]]).normalize();
            let e2 = nrm.cross(&e1);
            let flat: Vec<Point2> = on
                .iter()
                .map(|&i| {
                    let q = points[i] - points[on[0]];
                    Point2::new(q.dot(&e1), q.dot(&e2))
                })
                .collect();
            let ring = convex_hull(&flat);
            let lp = ring
                .iter()
                .map(|q| {
                    let local = on[flat.iter().position(|f| f == q).expect("hull point comes from the input")];
                    *index.entry(local).or_insert_with(|| {
                        vertices.push(points[local]);
                        vertices.len() - 1
                    })
                })
                .collect();
            facets.push(lp);
        }
        Polytope3::new(vertices, facets)
    }

    pub fn vertices(&self) -> &[Point3] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_cones(&self) -> &[VertexCone] {
        &self.cones
    }

    /// Circumradius about the vertex centroid; sets absolute tolerances.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn facet_area(&self, fi: usize) -> f64 {
        let f = &self.facets[fi];
        let a0 = self.vertices[f.vertices[0]];
        let mut s = Point3::zeros();
        for k in 1..f.vertices.len() - 1 {
            s += (self.vertices[f.vertices[k]] - a0).cross(&(self.vertices[f.vertices[k + 1]] - a0));
        }
        0.5 * s.dot(&f.normal)
    }

    pub fn volume(&self) -> f64 {
        let c = self.vertices.iter().sum::<Point3>() / self.vertices.len() as f64;
        (0..self.facets.len())
            .map(|fi| self.facet_area(fi) * (self.facets[fi].offset - self.facets[fi].normal.dot(&c)) / 3.0)
            .sum()
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.facets.len()).map(|fi| self.facet_area(fi)).sum()
    }

    /// Smallest distance from `p` to a facet plane, positive inside.
    pub fn margin(&self, p: &Point3) -> f64 {
        self.facets
            .iter()
            .map(|f| f.offset - f.normal.dot(p))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, p: &Point3) -> bool {
        self.margin(p) >= -1e-12 * self.scale
    }

    pub fn bounding_box(&self) -> (Point3, Point3) {
        let mut lo = Point3::repeat(f64::INFINITY);
        let mut hi = Point3::repeat(f64::NEG_INFINITY);
        for v in &self.vertices {
            lo = lo.inf(v);
            hi = hi.sup(v);
        }
        (lo, hi)
    }

    pub fn scaled(&self, s: f64) -> Polytope3 {
        Polytope3::new(
            self.vertices.iter().map(|v| v * s).collect(),
            self.facets.iter().map(|f| f.vertices.clone()).collect(),
        )
        .expect("scaling by a positive factor keeps a valid polytope")
    }

    /// Vertex set invariant under `x ↦ −x` within `tol · scale`.
    pub fn is_centrally_symmetric(&self, tol: f64) -> bool {
        self.vertices
            .iter()
            .all(|v| self.vertices.iter().any(|w| (v + w).norm() <= tol * self.scale))
    }

    pub fn sample_interior_at(&self, seed: u64, index: u64) -> Point3 {
        let mut next = self.interior_stream(seed, index);
        next()
    }

    pub(crate) fn interior_stream(&self, seed: u64, index: u64) -> impl FnMut() -> Point3 + '_ {
        let mut rng = sample_stream(seed, index);
        let (lo, hi) = self.bounding_box();
        move || loop {
            let p = Point3::new(
                lo.x + (hi.x - lo.x) * unit(&mut rng),
                lo.y + (hi.y - lo.y) * unit(&mut rng),
                lo.z + (hi.z - lo.z) * unit(&mut rng),
            );
            if self.contains(&p) {
                return p;
            }
        }
    }
}

/// `(volume, surface area)`
pub fn measure3d(p: &Polytope3) -> (f64, f64) {
    (p.volume(), p.surface_area())
}

pub fn sample_interior3(p: &Polytope3, n: usize, seed: u64) -> Vec<Point3> {
    (0..n as u64).map(|i| p.sample_interior_at(seed, i)).collect()
}
