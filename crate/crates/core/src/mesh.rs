//! Surface-of-revolution triangle meshes and OBJ export.

use std::collections::HashMap;
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::parabolic::ProfilePolyline;
use crate::profile::RadialSolution;

/// Radii below this are merged into a single axis vertex.
pub const AXIS_EPS: f64 = 1e-9;

/// An indexed triangle mesh.
#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl Mesh {
    /// Writes Wavefront OBJ: `v x y z` lines then 1-based `f i j k` lines.
    /// No normals; viewers recompute them.
    pub fn write_obj<W: Write>(&self, mut w: W) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
        }
        for f in &self.faces {
            writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
        }
        Ok(())
    }

    /// Counts distinct undirected edges.
    pub fn edge_count(&self) -> usize {
        self.edge_face_incidence().len()
    }

    /// V - E + F.
    pub fn euler_characteristic(&self) -> isize {
        self.vertices.len() as isize - self.edge_count() as isize + self.faces.len() as isize
    }

    /// Map from undirected edge to the number of incident faces.
    pub fn edge_face_incidence(&self) -> HashMap<(usize, usize), usize> {
        let mut edges = HashMap::new();
        for f in &self.faces {
            for (i, j) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                let key = (i.min(j), i.max(j));
                *edges.entry(key).or_insert(0) += 1;
            }
        }
        edges
    }

    /// True when every edge is shared by exactly two faces.
    pub fn is_watertight(&self) -> bool {
        self.edge_face_incidence().values().all(|&c| c == 2)
    }
}

enum Ring {
    Apex(usize),
    Circle(Vec<usize>),
}

/// Revolves a profile polyline in the `(r, z)` half-plane around the z-axis.
///
/// Nodes on the axis are emitted once as fan apices; consecutive off-axis
/// nodes produce consistently triangulated quad strips. A closed polyline
/// also connects its last node back to its first (torus profiles).
pub fn revolve_polyline(profile: &ProfilePolyline, n_theta: usize) -> Result<Mesh> {
    if profile.points.len() < 2 {
        return Err(Error::DegenerateProfile);
    }
    if n_theta < 8 {
        return Err(Error::InvalidInput(format!("n_theta must be >= 8, got {n_theta}")));
    }

    let mut vertices = Vec::new();
    let mut rings = Vec::with_capacity(profile.points.len());
    for &(r, z) in &profile.points {
        if r.abs() <= AXIS_EPS {
            let idx = vertices.len();
            vertices.push([0.0, 0.0, z]);
            rings.push(Ring::Apex(idx));
        } else {
            let mut ring = Vec::with_capacity(n_theta);
            for j in 0..n_theta {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n_theta as f64;
                ring.push(vertices.len());
                vertices.push([r * theta.cos(), r * theta.sin(), z]);
            }
            rings.push(Ring::Circle(ring));
        }
    }

    let mut faces = Vec::new();
    let connect = |lo: &Ring, hi: &Ring, faces: &mut Vec<[usize; 3]>| -> Result<()> {
        match (lo, hi) {
            (Ring::Circle(a), Ring::Circle(b)) => {
                for j in 0..n_theta {
                    let jn = (j + 1) % n_theta;
                    faces.push([a[j], b[j], b[jn]]);
                    faces.push([a[j], b[jn], a[jn]]);
                }
            }
            (Ring::Apex(apex), Ring::Circle(b)) => {
                for j in 0..n_theta {
                    let jn = (j + 1) % n_theta;
                    faces.push([*apex, b[j], b[jn]]);
                }
            }
            (Ring::Circle(a), Ring::Apex(apex)) => {
                for j in 0..n_theta {
                    let jn = (j + 1) % n_theta;
                    faces.push([a[j], *apex, a[jn]]);
                }
            }
            (Ring::Apex(_), Ring::Apex(_)) => {
                return Err(Error::InvalidInput("consecutive axis nodes in profile".into()));
            }
        }
        Ok(())
    };

    for pair in rings.windows(2) {
        connect(&pair[0], &pair[1], &mut faces)?;
    }
    if profile.closed {
        connect(rings.last().unwrap(), &rings[0], &mut faces)?;
    }
    Ok(Mesh { vertices, faces })
}

/// Revolves a graph profile.
pub fn revolve_to_mesh(sol: &RadialSolution, n_theta: usize) -> Result<Mesh> {
    let points = sol.r.iter().zip(&sol.u).map(|(&r, &u)| (r, u)).collect();
    revolve_polyline(&ProfilePolyline { points, closed: false }, n_theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parabolic::stitch_arcs;

    #[test]
    fn two_node_band() {
        let profile = ProfilePolyline { points: vec![(1.0, 0.0), (1.0, 1.0)], closed: false };
        let mesh = revolve_polyline(&profile, 8).unwrap();
        assert_eq!(mesh.vertices.len(), 16);
        assert_eq!(mesh.faces.len(), 16);
    }

    #[test]
    fn apex_fan() {
        let profile = ProfilePolyline { points: vec![(0.0, 0.0), (1.0, 1.0)], closed: false };
        let mesh = revolve_polyline(&profile, 8).unwrap();
        assert_eq!(mesh.vertices.len(), 9);
        assert_eq!(mesh.faces.len(), 8);
    }

    #[test]
    fn stitched_sphere_is_watertight_and_spherical() {
        // k = 0 full stitched circle: both endpoints on the axis.
        let profile = stitch_arcs(1.0, 0.0, 0.0, 128).unwrap();
        let mesh = revolve_polyline(&profile, 64).unwrap();
        assert!(mesh.is_watertight());
        assert_eq!(mesh.euler_characteristic(), 2);
        // All vertices at unit distance from the center (0, 0, 0).
        let worst = mesh
            .vertices
            .iter()
            .map(|v| ((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt() - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-9, "worst sphere deviation {worst}");
    }

    #[test]
    fn stitched_torus_has_genus_one() {
        let profile = stitch_arcs(1.0, -2.0, 0.0, 64).unwrap();
        let mesh = revolve_polyline(&profile, 64).unwrap();
        assert!(mesh.is_watertight());
        assert_eq!(mesh.euler_characteristic(), 0);
    }

    #[test]
    fn obj_output_is_one_based() {
        let profile = ProfilePolyline { points: vec![(1.0, 0.0), (1.0, 1.0)], closed: false };
        let mesh = revolve_polyline(&profile, 8).unwrap();
        let mut buf = Vec::new();
        mesh.write_obj(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().any(|l| l.starts_with("v ")));
        assert!(text.lines().filter(|l| l.starts_with("f ")).all(|l| {
            l.split_whitespace().skip(1).all(|t| t.parse::<usize>().map(|v| v >= 1).unwrap_or(false))
        }));
    }

    #[test]
    fn degenerate_profile_rejected() {
        let profile = ProfilePolyline { points: vec![(1.0, 0.0)], closed: false };
        assert!(matches!(revolve_polyline(&profile, 8), Err(Error::DegenerateProfile)));
        let profile = ProfilePolyline { points: vec![(1.0, 0.0), (1.0, 1.0)], closed: false };
        assert!(revolve_polyline(&profile, 4).is_err());
    }
}
