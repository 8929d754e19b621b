//! Closed polyhedral surfaces with plane faces.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Point = Vector3<f64>;

/// Default relative tolerance for planarity and degeneracy checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub id: usize,
    pub endpoints: [usize; 2],
    /// `(k_plus, k_minus)`: the face traversing the edge from `endpoints[0]`
    /// to `endpoints[1]`, then the face traversing it backwards.
    pub adjacent_faces: [usize; 2],
    /// Opening angle inside the flow domain, in `(0, 2 pi)`.
    pub theta: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polyhedron {
    pub name: Option<String>,
    pub vertices: Vec<Point>,
    /// Vertex loops, counterclockwise seen from outside the solid.
    pub faces: Vec<Vec<usize>>,
    /// The flow domain is the exterior of the solid.
    pub complement: bool,
    edges: Vec<Edge>,
    normals: Vec<Point>,
    tolerance: f64,
}

impl Polyhedron {
    pub fn new(
        vertices: Vec<Point>,
        faces: Vec<Vec<usize>>,
        complement: bool,
        name: Option<String>,
    ) -> Result<Self> {
        Self::with_tolerance(vertices, faces, complement, name, DEFAULT_TOLERANCE)
    }

    pub fn with_tolerance(
        vertices: Vec<Point>,
        faces: Vec<Vec<usize>>,
        complement: bool,
        name: Option<String>,
        tolerance: f64,
    ) -> Result<Self> {
        if !(tolerance > 0.0) {
            return Err(Error::InvalidArgument(format!("tolerance {tolerance} must be positive")));
        }
        if vertices.len() < 4 || faces.len() < 4 {
            return Err(Error::mesh("mesh", "a closed polyhedron needs at least 4 vertices and 4 faces"));
        }
        if let Some(i) = vertices.iter().position(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::mesh(format!("vertex {i}"), "non-finite coordinate"));
        }
        let diag = bounding_diagonal(&vertices);
        if diag == 0.0 {
            return Err(Error::mesh("mesh", "all vertices coincide"));
        }

        let mut normals = Vec::with_capacity(faces.len());
        for (f, lp) in faces.iter().enumerate() {
            let loc = format!("face {f}");
            if lp.len() < 3 {
                return Err(Error::mesh(loc, format!("degenerate face with {} vertices", lp.len())));
            }
            if let Some(&bad) = lp.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::mesh(loc, format!("vertex index {bad} out of range")));
            }
            let mut seen = lp.clone();
            seen.sort_unstable();
            seen.dedup();
            if seen.len() != lp.len() {
                return Err(Error::mesh(loc, "repeated vertex in face loop"));
            }
            for k in 0..lp.len() {
                let (a, b) = (lp[k], lp[(k + 1) % lp.len()]);
                if (vertices[a] - vertices[b]).norm() <= tolerance * diag {
                    return Err(Error::mesh(loc, format!("zero-length edge {a}-{b}")));
                }
            }
            // Newell's method: twice the vector area
            let mut area = Point::zeros();
            for k in 0..lp.len() {
                let (p, q) = (vertices[lp[k]], vertices[lp[(k + 1) % lp.len()]]);
                area += p.cross(&q);
            }
            let twice_area = area.norm();
            if twice_area <= tolerance * diag * diag {
                return Err(Error::mesh(loc, "degenerate face with zero area"));
            }
            let n = area / twice_area;
            let c = vertices[lp[0]];
            for &v in lp {
                let off = n.dot(&(vertices[v] - c)).abs();
                if off > tolerance * diag {
                    return Err(Error::mesh(loc, format!("non-planar: vertex {v} off the plane by {off:e}")));
                }
            }
            normals.push(n);
        }

        // every undirected edge must be traversed once in each direction
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (f, lp) in faces.iter().enumerate() {
            for k in 0..lp.len() {
                let key = (lp[k], lp[(k + 1) % lp.len()]);
                if let Some(other) = directed.insert(key, f) {
                    return Err(Error::mesh(
                        format!("edge {}-{}", key.0, key.1),
                        format!("traversed in the same direction by faces {other} and {f} (inconsistent orientation or non-manifold)"),
                    ));
                }
            }
        }
        let mut edges = Vec::new();
        let mut keys: Vec<_> = directed.keys().copied().filter(|(a, b)| a < b).collect();
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                return Err(Error::mesh(format!("edge {a}-{b}"), "boundary edge: only one adjacent face"));
            }
        }
        keys.sort_unstable();
        for (a, b) in keys {
            edges.push(Edge {
                id: edges.len(),
                endpoints: [a, b],
                adjacent_faces: [directed[&(a, b)], directed[&(b, a)]],
                theta: 0.0,
            });
        }

        let mut poly = Polyhedron {
            name,
            vertices,
            faces,
            complement,
            edges,
            normals,
            tolerance,
        };
        poly.check_topology()?;
        for i in 0..poly.edges.len() {
            let alpha = poly.solid_angle_at_edge(i);
            if !(alpha > 0.0 && alpha < 2.0 * PI) {
                return Err(Error::mesh(format!("edge {i}"), "degenerate dihedral angle"));
            }
            poly.edges[i].theta = if complement { 2.0 * PI - alpha } else { alpha };
        }
        Ok(poly)
    }

    fn check_topology(&self) -> Result<()> {
        // connected components over faces sharing an edge
        let nf = self.faces.len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while p[r] != r {
                r = p[r];
            }
            let mut j = i;
            while p[j] != r {
                let next = p[j];
                p[j] = r;
                j = next;
            }
            r
        }
        for e in &self.edges {
            let (a, b) = (find(&mut parent, e.adjacent_faces[0]), find(&mut parent, e.adjacent_faces[1]));
            parent[a] = b;
        }
        let mut comps: HashMap<usize, (Vec<usize>, usize, usize)> = HashMap::new();
        for f in 0..nf {
            let r = find(&mut parent, f);
            comps.entry(r).or_default().0.push(f);
        }
        for e in &self.edges {
            let r = find(&mut parent, e.adjacent_faces[0]);
            comps.get_mut(&r).expect("component").1 += 1;
        }
        let used: Vec<bool> = {
            let mut u = vec![false; self.vertices.len()];
            for lp in &self.faces {
                for &v in lp {
                    u[v] = true;
                }
            }
            u
        };
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::mesh(format!("vertex {v}"), "not used by any face"));
        }
        for (faces, n_edges, _) in comps.values_mut() {
            let mut verts: Vec<usize> = faces.iter().flat_map(|&f| self.faces[f].iter().copied()).collect();
            verts.sort_unstable();
            verts.dedup();
            let chi = verts.len() as i64 - *n_edges as i64 + faces.len() as i64;
            if chi != 2 {
                return Err(Error::mesh(
                    format!("component containing face {}", faces[0]),
                    format!("Euler characteristic {chi}, expected 2"),
                ));
            }
            let volume: f64 = faces.iter().map(|&f| self.signed_volume_of_face(f)).sum();
            if volume <= 0.0 {
                return Err(Error::mesh(
                    format!("component containing face {}", faces[0]),
                    "faces are oriented inward (loops must be counterclockwise seen from outside)",
                ));
            }
        }
        // every vertex link must be a single cycle
        for v in 0..self.vertices.len() {
            self.link_cycle(v)?;
        }
        Ok(())
    }

    fn signed_volume_of_face(&self, f: usize) -> f64 {
        let lp = &self.faces[f];
        let p0 = self.vertices[lp[0]];
        (1..lp.len() - 1)
            .map(|k| p0.dot(&self.vertices[lp[k]].cross(&self.vertices[lp[k + 1]])) / 6.0)
            .sum()
    }

    /// Interior angle of the solid at edge `i`.
    fn solid_angle_at_edge(&self, i: usize) -> f64 {
        let e = &self.edges[i];
        let [a, b] = e.endpoints;
        let [f1, f2] = e.adjacent_faces;
        let dir = (self.vertices[b] - self.vertices[a]).normalize();
        let (n1, n2) = (self.normals[f1], self.normals[f2]);
        // in-face directions pointing away from the edge
        let t1 = n1.cross(&dir);
        let t2 = n2.cross(&(-dir));
        let y = -n1;
        let mut psi = t2.dot(&y).atan2(t2.dot(&t1));
        if psi <= 0.0 {
            psi += 2.0 * PI;
        }
        psi
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edges
            .get(id)
            .ok_or_else(|| Error::InvalidArgument(format!("edge {id} does not exist")))
    }

    /// Unit outward normal of the solid at face `f`.
    pub fn face_normal(&self, f: usize) -> Point {
        self.normals[f]
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn face_area_vector(&self, f: usize) -> Point {
        let lp = &self.faces[f];
        let mut area = Point::zeros();
        for k in 0..lp.len() {
            area += self.vertices[lp[k]].cross(&self.vertices[lp[(k + 1) % lp.len()]]);
        }
        area / 2.0
    }

    /// Same solid with the flow domain switched between inside and outside.
    pub fn complemented(&self) -> Polyhedron {
        let mut p = self.clone();
        p.complement = !p.complement;
        for e in &mut p.edges {
            e.theta = 2.0 * PI - e.theta;
        }
        p
    }

    /// Every dihedral angle below pi and a single bounded component.
    ///
    /// Exterior domains are never convex. A closed connected surface whose
    /// dihedral angles are all below pi bounds a convex solid, so the vertex
    /// cones are convex as well.
    pub fn is_convex(&self) -> bool {
        !self.complement
            && self.component_count() == 1
            && self.edges.iter().all(|e| e.theta < PI - self.tolerance)
    }

    fn component_count(&self) -> usize {
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        (chi / 2) as usize
    }

    /// Dihedral angle of edge `e` inside the flow domain.
    pub fn dihedral_angle(&self, e: &Edge) -> Result<f64> {
        match self.edges.get(e.id) {
            Some(own) if own.endpoints == e.endpoints => Ok(own.theta),
            _ => Err(Error::InvalidArgument(format!(
                "edge {}-{} is not an edge of this polyhedron",
                e.endpoints[0], e.endpoints[1]
            ))),
        }
    }

    pub fn edge_between(&self, a: usize, b: usize) -> Option<&Edge> {
        let key = if a < b { [a, b] } else { [b, a] };
        self.edges.iter().find(|e| e.endpoints == key)
    }

    /// Neighbours of `v` in cyclic order, with the face between consecutive
    /// neighbours: `(w_i, f_i)` where `f_i` contains `w_i, v, w_{i+1}`.
    pub(crate) fn link_cycle(&self, v: usize) -> Result<Vec<(usize, usize)>> {
        // in a face loop ... prev, v, next ... the face lies between next and prev
        let mut step: HashMap<usize, (usize, usize)> = HashMap::new();
        let mut count = 0;
        for (f, lp) in self.faces.iter().enumerate() {
            if let Some(k) = lp.iter().position(|&x| x == v) {
                let next = lp[(k + 1) % lp.len()];
                let prev = lp[(k + lp.len() - 1) % lp.len()];
                step.insert(next, (prev, f));
                count += 1;
            }
        }
        if count < 3 {
            return Err(Error::mesh(format!("vertex {v}"), format!("only {count} incident faces")));
        }
        let start = *step.keys().min().expect("non-empty");
        let mut cycle = Vec::with_capacity(count);
        let mut w = start;
        loop {
            let (prev, f) = *step
                .get(&w)
                .ok_or_else(|| Error::mesh(format!("vertex {v}"), "vertex link is not a cycle"))?;
            cycle.push((w, f));
            w = prev;
            if w == start {
                break;
            }
            if cycle.len() > count {
                return Err(Error::mesh(format!("vertex {v}"), "vertex link is not a cycle"));
            }
        }
        if cycle.len() != count {
            return Err(Error::mesh(
                format!("vertex {v}"),
                "non-manifold vertex: incident faces form several fans",
            ));
        }
        Ok(cycle)
    }

    /// Uniformly scaled and rigidly moved copy (for invariance checks).
    pub fn transformed(&self, rotation: &nalgebra::Rotation3<f64>, shift: Point, scale: f64) -> Result<Polyhedron> {
        let vertices = self.vertices.iter().map(|p| rotation * (p * scale) + shift).collect();
        Polyhedron::with_tolerance(vertices, self.faces.clone(), self.complement, self.name.clone(), self.tolerance)
    }
}

fn bounding_diagonal(vertices: &[Point]) -> f64 {
    let mut lo = vertices[0];
    let mut hi = vertices[0];
    for v in vertices {
        lo = lo.inf(v);
        hi = hi.sup(v);
    }
    (hi - lo).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::solids;

    #[test]
    fn cube_angles() {
        let cube = solids::cube(false);
        assert_eq!(cube.edges().len(), 12);
        for e in cube.edges() {
            assert!((e.theta - PI / 2.0).abs() < 1e-12);
        }
        assert!(cube.is_convex());
        let ext = cube.complemented();
        for e in ext.edges() {
            assert!((e.theta - 1.5 * PI).abs() < 1e-12);
        }
        assert!(!ext.is_convex());
    }

    #[test]
    fn rejects_bad_meshes() {
        let cube = solids::cube(false);
        let mut faces = cube.faces.clone();
        faces[0] = vec![0, 1];
        let err = Polyhedron::new(cube.vertices.clone(), faces, false, None).unwrap_err();
        assert!(err.to_string().contains("degenerate face"), "{err}");

        let mut faces = cube.faces.clone();
        faces.pop();
        assert!(Polyhedron::new(cube.vertices.clone(), faces, false, None).is_err());

        let inward: Vec<Vec<usize>> = cube.faces.iter().map(|f| f.iter().rev().copied().collect()).collect();
        let err = Polyhedron::new(cube.vertices.clone(), inward, false, None).unwrap_err();
        assert!(err.to_string().contains("inward"), "{err}");

        let mut verts = cube.vertices.clone();
        verts[0].z += 0.01;
        assert!(Polyhedron::new(verts, cube.faces.clone(), false, None).is_err());
    }

    #[test]
    fn area_vectors_close() {
        let p = solids::step_prism(false);
        let total: Point = (0..p.faces.len()).map(|f| p.face_area_vector(f)).sum();
        assert!(total.norm() < 1e-12);
    }
}
