//! Tangent cone of the flow domain at a vertex.
//!
//! The cone is described by its spherical cross-section `Omega`: a spherical
//! polygon whose corners are the directions of the incident edges and whose
//! interior angles are the dihedral angles of those edges.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::mesh::{Point, Polyhedron};
use crate::error::{Error, Result};

const SPHERE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VertexCone {
    pub vertex: usize,
    /// Incident faces in cyclic order.
    pub faces: Vec<usize>,
    /// Unit normals of the incident faces pointing out of the flow domain.
    pub normals: Vec<[f64; 3]>,
    /// Unit directions of the incident edges; `faces[i]` lies between
    /// `edge_directions[i]` and `edge_directions[i + 1]`.
    pub edge_directions: Vec<[f64; 3]>,
    /// Dihedral angles (inside the flow domain) of the incident edges.
    pub edge_angles: Vec<f64>,
    /// Plane opening angle of each incident face at the vertex.
    pub face_angles: Vec<f64>,
    /// Area of the cross-section, i.e. the solid angle of the cone.
    pub solid_angle: f64,
    pub contained_in_half_space: bool,
    /// Full opening angle of the narrowest right circular cone containing
    /// the domain cone.
    pub enclosing_aperture: Option<f64>,
    pub is_convex_corner: bool,
    /// Some direction has positive inner product with every incident face
    /// normal, so the boundary is locally a Lipschitz graph over a plane.
    pub lipschitz_graph: bool,
}

/// Arc of a great circle: `cos t * start + sin t * (axis x start)`, `t in [0, sweep]`.
#[derive(Clone, Copy, Debug)]
struct Arc {
    start: Point,
    axis: Point,
    sweep: f64,
}

impl Arc {
    fn at(&self, t: f64) -> Point {
        self.start * t.cos() + self.axis.cross(&self.start) * t.sin()
    }

    fn end(&self) -> Point {
        self.at(self.sweep)
    }

    fn distance(&self, q: &Point) -> f64 {
        let p = q - self.axis * q.dot(&self.axis);
        if p.norm() > 1e-14 {
            let mut t = p.dot(&self.axis.cross(&self.start)).atan2(p.dot(&self.start));
            if t < 0.0 {
                t += 2.0 * PI;
            }
            if t <= self.sweep {
                return q.dot(&self.axis).abs().clamp(0.0, 1.0).asin();
            }
        }
        angle(q, &self.start).min(angle(q, &self.end()))
    }

    /// Pieces shorter than pi.
    fn pieces(&self) -> Vec<(Point, Point)> {
        let k = (self.sweep / (0.9 * PI)).ceil().max(1.0) as usize;
        (0..k)
            .map(|i| {
                let t0 = self.sweep * i as f64 / k as f64;
                let t1 = self.sweep * (i + 1) as f64 / k as f64;
                (self.at(t0), self.at(t1))
            })
            .collect()
    }
}

fn angle(a: &Point, b: &Point) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

fn to_array(p: &Point) -> [f64; 3] {
    [p.x, p.y, p.z]
}

/// Smallest spherical cap containing all `points`: `(centre, angular radius)`.
///
/// Brute force over the caps determined by one, two or three points, which
/// is exact for the handful of directions meeting at a polyhedron vertex.
pub fn smallest_enclosing_cap(points: &[Point]) -> (Point, f64) {
    let radius_for = |c: &Point| points.iter().map(|p| angle(c, p)).fold(0.0, f64::max);
    let mut candidates: Vec<Point> = points.to_vec();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let mid = points[i] + points[j];
            if mid.norm() > 1e-12 {
                candidates.push(mid.normalize());
            }
            let perp = points[i].cross(&points[j]);
            if perp.norm() > 1e-12 {
                candidates.push(perp.normalize());
                candidates.push(-perp.normalize());
            }
            for k in j + 1..points.len() {
                let c = (points[j] - points[i]).cross(&(points[k] - points[i]));
                if c.norm() > 1e-12 {
                    candidates.push(c.normalize());
                    candidates.push(-c.normalize());
                }
            }
        }
    }
    candidates
        .into_iter()
        .map(|c| (c, radius_for(&c)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one point")
}

impl VertexCone {
    pub fn new(poly: &Polyhedron, v: usize) -> Result<VertexCone> {
        if v >= poly.vertices.len() {
            return Err(Error::InvalidArgument(format!("vertex {v} does not exist")));
        }
        let cycle = poly.link_cycle(v)?;
        let m = cycle.len();
        if m < 3 {
            return Err(Error::InvalidArgument(format!("vertex {v} has fewer than 3 incident faces")));
        }
        let origin = poly.vertices[v];
        let dirs: Vec<Point> = cycle.iter().map(|(w, _)| (poly.vertices[*w] - origin).normalize()).collect();
        let sign = if poly.complement { -1.0 } else { 1.0 };
        let mut arcs = Vec::with_capacity(m);
        let mut face_angles = Vec::with_capacity(m);
        for i in 0..m {
            let f = cycle[i].1;
            let n = poly.face_normal(f);
            let a = dirs[i];
            let b = dirs[(i + 1) % m];
            // corner of a counterclockwise face sweeps from `next` to `prev` about n
            let mut sweep = n.dot(&a.cross(&b)).atan2(a.dot(&b));
            if sweep <= 0.0 {
                sweep += 2.0 * PI;
            }
            arcs.push(Arc { start: a, axis: n, sweep });
            face_angles.push(sweep);
        }
        let edge_angles: Vec<f64> = cycle
            .iter()
            .map(|(w, _)| poly.edge_between(v, *w).expect("link neighbour shares an edge").theta)
            .collect();
        let solid_angle = edge_angles.iter().sum::<f64>() - (m as f64 - 2.0) * PI;
        let normals: Vec<Point> = cycle.iter().map(|(_, f)| poly.face_normal(*f) * sign).collect();

        let (_, dir_radius) = smallest_enclosing_cap(&dirs);
        let contained_in_half_space =
            dir_radius <= PI / 2.0 + SPHERE_TOL && solid_angle <= 2.0 * PI + SPHERE_TOL;
        let (_, normal_radius) = smallest_enclosing_cap(&normals);
        let lipschitz_graph = normal_radius < PI / 2.0 - SPHERE_TOL;
        let is_convex_corner = edge_angles.iter().all(|&t| t <= PI + SPHERE_TOL);

        let section = CrossSection { arcs, domain_side: sign, dirs: dirs.clone(), normals: cycle.iter().map(|(_, f)| poly.face_normal(*f)).collect() };
        let enclosing_aperture = section.outer_inradius().map(|r| 2.0 * (PI - r));

        Ok(VertexCone {
            vertex: v,
            faces: cycle.iter().map(|(_, f)| *f).collect(),
            normals: normals.iter().map(to_array).collect(),
            edge_directions: dirs.iter().map(to_array).collect(),
            edge_angles,
            face_angles,
            solid_angle,
            contained_in_half_space,
            enclosing_aperture,
            is_convex_corner,
            lipschitz_graph,
        })
    }

    /// Largest plane opening angle of an incident face.
    pub fn max_face_angle(&self) -> f64 {
        self.face_angles.iter().cloned().fold(0.0, f64::max)
    }
}

/// The spherical polygon and which side of it is the flow domain.
struct CrossSection {
    arcs: Vec<Arc>,
    /// +1: the domain lies behind the solid's outward normals (interior
    /// flow); -1: in front of them (exterior flow).
    domain_side: f64,
    dirs: Vec<Point>,
    normals: Vec<Point>,
}

impl CrossSection {
    fn boundary_distance(&self, q: &Point) -> f64 {
        self.arcs.iter().map(|a| a.distance(q)).fold(f64::INFINITY, f64::min)
    }

    fn reference_points(&self) -> Vec<Point> {
        let fractions = [0.4123, 0.5871, 0.3319];
        self.arcs
            .iter()
            .zip(fractions.iter().cycle())
            .take(3)
            .map(|(arc, &frac)| {
                let on = arc.at(frac * arc.sweep);
                let inward = arc.axis * (-self.domain_side);
                (on + inward * 1e-6).normalize()
            })
            .collect()
    }

    fn crossings(&self, from: &Point, to: &Point) -> usize {
        let mid = {
            let s = from + to;
            if s.norm() > 1e-6 {
                s.normalize()
            } else {
                let helper = if from.x.abs() < 0.9 { Point::x() } else { Point::y() };
                from.cross(&helper).normalize()
            }
        };
        let mut count = 0;
        for (p1, p2) in [(from, &mid), (&mid, to)] {
            for arc in &self.arcs {
                for (q1, q2) in arc.pieces() {
                    if minor_arcs_cross(p1, p2, &q1, &q2) {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Membership of direction `q` in the domain cross-section (majority of
    /// three parity tests from different interior reference points).
    fn contains(&self, q: &Point) -> bool {
        let refs = self.reference_points();
        let votes = refs.iter().filter(|r| self.crossings(r, q) % 2 == 0).count();
        2 * votes > refs.len()
    }

    /// `max { dist(q, boundary) : q outside the cross-section }`.
    fn outer_inradius(&self) -> Option<f64> {
        let score = |q: &Point| -> f64 {
            let d = self.boundary_distance(q);
            if self.contains(q) {
                -d
            } else {
                d
            }
        };
        let mut seeds: Vec<Point> = Vec::new();
        let great: Vec<Point> = self.arcs.iter().map(|a| a.axis).collect();
        let g = great.len();
        for i in 0..g {
            for j in i + 1..g {
                for k in j + 1..g {
                    for s2 in [1.0, -1.0] {
                        for s3 in [1.0, -1.0] {
                            let c = (great[i] - great[j] * s2).cross(&(great[i] - great[k] * s3));
                            if c.norm() > 1e-12 {
                                seeds.push(c.normalize());
                                seeds.push(-c.normalize());
                            }
                        }
                    }
                }
            }
        }
        let d = &self.dirs;
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                for k in j + 1..d.len() {
                    let c = (d[j] - d[i]).cross(&(d[k] - d[i]));
                    if c.norm() > 1e-12 {
                        seeds.push(c.normalize());
                        seeds.push(-c.normalize());
                    }
                }
            }
        }
        for n in &self.normals {
            seeds.push(*n);
            seeds.push(-n);
        }
        seeds.extend(fibonacci_sphere(600));

        let mut scored: Vec<(f64, Point)> = seeds.into_iter().map(|q| (score(&q), q)).collect();
        scored.sort_by(|a, b| b.0.total_cmp(&a.0));
        let mut best: Option<(f64, Point)> = None;
        for (s, q) in scored.into_iter().take(6) {
            let (s, q) = polish(&score, q, s);
            if best.map_or(true, |(b, _)| s > b) {
                best = Some((s, q));
            }
        }
        best.filter(|(s, _)| *s > 0.0).map(|(s, _)| s)
    }
}

/// Compass search on the sphere over 16 tangent directions.
fn polish(score: &impl Fn(&Point) -> f64, mut q: Point, mut s: f64) -> (f64, Point) {
    let mut h = 0.02;
    while h > 1e-13 {
        let helper = if q.x.abs() < 0.9 { Point::x() } else { Point::y() };
        let u = q.cross(&helper).normalize();
        let w = q.cross(&u);
        let mut moved = false;
        for k in 0..16 {
            let phi = k as f64 * PI / 8.0;
            let cand = (q + (u * phi.cos() + w * phi.sin()) * h).normalize();
            let sc = score(&cand);
            if sc > s {
                s = sc;
                q = cand;
                moved = true;
                break;
            }
        }
        if !moved {
            h *= 0.5;
        }
    }
    (s, q)
}

fn minor_arcs_cross(p1: &Point, p2: &Point, q1: &Point, q2: &Point) -> bool {
    let n1 = p1.cross(p2);
    let n2 = q1.cross(q2);
    let x = n1.cross(&n2);
    if x.norm() < 1e-15 {
        return false;
    }
    let x = x.normalize();
    let on = |a: &Point, b: &Point, n: &Point, x: &Point| a.cross(x).dot(n) >= 0.0 && x.cross(b).dot(n) >= 0.0;
    (on(p1, p2, &n1, &x) && on(q1, q2, &n2, &x)) || (on(p1, p2, &n1, &-x) && on(q1, q2, &n2, &-x))
}

/// Roughly uniform points on the unit sphere.
pub fn fibonacci_sphere(n: usize) -> Vec<Point> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let y = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - y * y).sqrt();
            let t = golden * i as f64;
            Point::new(r * t.cos(), y, r * t.sin())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::solids;

    #[test]
    fn cube_corner_interior_and_exterior() {
        let cube = solids::cube(false);
        let c = VertexCone::new(&cube, 0).unwrap();
        assert!(c.contained_in_half_space);
        assert!(c.is_convex_corner);
        assert!(c.lipschitz_graph);
        assert!((c.solid_angle - PI / 2.0).abs() < 1e-12);
        let aperture = c.enclosing_aperture.unwrap();
        assert!((aperture - 2.0 * (1.0 / 3f64.sqrt()).acos()).abs() < 1e-9, "{aperture}");

        let ext = VertexCone::new(&cube.complemented(), 0).unwrap();
        assert!(!ext.contained_in_half_space);
        assert!(!ext.is_convex_corner);
        assert!((ext.solid_angle - 3.5 * PI).abs() < 1e-12);
        let aperture = ext.enclosing_aperture.unwrap();
        let expected = 2.0 * (PI - (1.0 / 3f64.sqrt()).asin());
        assert!((aperture - expected).abs() < 1e-9, "{aperture} vs {expected}");
    }

    #[test]
    fn step_prism_vertices_lie_in_half_spaces() {
        let p = solids::step_prism(false);
        for v in 0..p.vertices.len() {
            let c = VertexCone::new(&p, v).unwrap();
            assert!(c.contained_in_half_space, "vertex {v}");
        }
    }

    #[test]
    fn smallest_cap_of_octant_axes() {
        let (c, r) = smallest_enclosing_cap(&[Point::x(), Point::y(), Point::z()]);
        assert!((r - (1.0 / 3f64.sqrt()).acos()).abs() < 1e-12);
        assert!((c - Point::new(1.0, 1.0, 1.0).normalize()).norm() < 1e-12);
    }
}
