//! Built-in meshes: the Platonic solids and an L-shaped step prism.

use super::mesh::{Point, Polyhedron};

/// Faces of the convex hull of `vertices`, oriented outward.
///
/// Intended for small, exactly convex point sets (every point a hull vertex).
pub fn convex_hull_faces(vertices: &[Point]) -> Vec<Vec<usize>> {
    let n = vertices.len();
    let scale = vertices.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let tol = 1e-9 * scale.max(1.0);
    let centroid: Point = vertices.iter().sum::<Point>() / n as f64;
    let mut faces: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let normal = (vertices[j] - vertices[i]).cross(&(vertices[k] - vertices[i]));
                if normal.norm() <= tol {
                    continue;
                }
                let mut normal = normal.normalize();
                if normal.dot(&(vertices[i] - centroid)) < 0.0 {
                    normal = -normal;
                }
                let offset = normal.dot(&vertices[i]);
                let supporting = vertices.iter().all(|v| normal.dot(v) <= offset + tol);
                if !supporting {
                    continue;
                }
                let mut on: Vec<usize> = (0..n).filter(|&m| (normal.dot(&vertices[m]) - offset).abs() <= tol).collect();
                let c: Point = on.iter().map(|&m| vertices[m]).sum::<Point>() / on.len() as f64;
                let u = (vertices[on[0]] - c).normalize();
                let w = normal.cross(&u);
                on.sort_by(|&a, &b| {
                    let pa = vertices[a] - c;
                    let pb = vertices[b] - c;
                    pa.dot(&w).atan2(pa.dot(&u)).total_cmp(&pb.dot(&w).atan2(pb.dot(&u)))
                });
                let mut key = on.clone();
                key.sort_unstable();
                if !faces.iter().any(|f| {
                    let mut g = f.clone();
                    g.sort_unstable();
                    g == key
                }) {
                    faces.push(on);
                }
            }
        }
    }
    faces
}

fn hull(name: &str, vertices: Vec<Point>, complement: bool) -> Polyhedron {
    let faces = convex_hull_faces(&vertices);
    Polyhedron::new(vertices, faces, complement, Some(name.to_string()))
        .expect("built-in solid is a valid mesh")
}

pub fn tetrahedron(complement: bool) -> Polyhedron {
    let v = vec![
        Point::new(1.0, 1.0, 1.0),
        Point::new(1.0, -1.0, -1.0),
        Point::new(-1.0, 1.0, -1.0),
        Point::new(-1.0, -1.0, 1.0),
    ];
    hull("tetrahedron", v, complement)
}

pub fn cube(complement: bool) -> Polyhedron {
    let mut v = Vec::new();
    for x in [0.0, 1.0] {
        for y in [0.0, 1.0] {
            for z in [0.0, 1.0] {
                v.push(Point::new(x, y, z));
            }
        }
    }
    hull("cube", v, complement)
}

pub fn octahedron(complement: bool) -> Polyhedron {
    let mut v = Vec::new();
    for axis in 0..3 {
        for sign in [1.0, -1.0] {
            let mut p = Point::zeros();
            p[axis] = sign;
            v.push(p);
        }
    }
    hull("octahedron", v, complement)
}

pub fn dodecahedron(complement: bool) -> Polyhedron {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for x in [-1.0, 1.0] {
        for y in [-1.0, 1.0] {
            for z in [-1.0, 1.0] {
                v.push(Point::new(x, y, z));
            }
        }
    }
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            v.push(Point::new(0.0, a / phi, b * phi));
            v.push(Point::new(a / phi, b * phi, 0.0));
            v.push(Point::new(a * phi, 0.0, b / phi));
        }
    }
    hull("dodecahedron", v, complement)
}

pub fn icosahedron(complement: bool) -> Polyhedron {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut v = Vec::new();
    for a in [-1.0, 1.0] {
        for b in [-1.0, 1.0] {
            v.push(Point::new(0.0, a, b * phi));
            v.push(Point::new(a, b * phi, 0.0));
            v.push(Point::new(a * phi, 0.0, b));
        }
    }
    hull("icosahedron", v, complement)
}

/// Prism over the L-shaped hexagon `(0,0) (2,0) (2,1) (1,1) (1,2) (0,2)`,
/// height 1. One vertical edge has angle `3 pi / 2`, all others `pi / 2`.
pub fn step_prism(complement: bool) -> Polyhedron {
    let section = [(0.0, 0.0), (2.0, 0.0), (2.0, 1.0), (1.0, 1.0), (1.0, 2.0), (0.0, 2.0)];
    let m = section.len();
    let mut v: Vec<Point> = section.iter().map(|&(x, y)| Point::new(x, y, 0.0)).collect();
    v.extend(section.iter().map(|&(x, y)| Point::new(x, y, 1.0)));
    let mut faces = vec![(0..m).rev().collect::<Vec<_>>(), (m..2 * m).collect()];
    for i in 0..m {
        let j = (i + 1) % m;
        faces.push(vec![i, j, m + j, m + i]);
    }
    Polyhedron::new(v, faces, complement, Some("step-prism".to_string()))
        .expect("built-in solid is a valid mesh")
}

/// Built-in solid by name.
pub fn by_name(name: &str, complement: bool) -> Option<Polyhedron> {
    Some(match name {
        "tetrahedron" => tetrahedron(complement),
        "cube" => cube(complement),
        "octahedron" => octahedron(complement),
        "dodecahedron" => dodecahedron(complement),
        "icosahedron" => icosahedron(complement),
        "step-prism" => step_prism(complement),
        _ => return None,
    })
}

pub const PLATONIC: [&str; 5] = ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn platonic_counts() {
        let counts = [(4, 6, 4), (8, 12, 6), (6, 12, 8), (20, 30, 12), (12, 30, 20)];
        for (name, (v, e, f)) in PLATONIC.iter().zip(counts) {
            let p = by_name(name, false).unwrap();
            assert_eq!((p.vertices.len(), p.edges().len(), p.faces.len()), (v, e, f), "{name}");
            assert!(p.is_convex());
        }
    }

    #[test]
    fn step_prism_has_one_reentrant_edge() {
        let p = step_prism(false);
        let reentrant = p.edges().iter().filter(|e| e.theta > std::f64::consts::PI).count();
        assert_eq!(reentrant, 1);
        assert!(!p.is_convex());
    }
}
