use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

/// A finite set of unit vectors together with a certified covering radius:
/// every unit vector of the sphere (modulo a global phase in the complex
/// case) lies within `covering_radius` of some node, measured in Euclidean
/// distance, which for points of the circle is bounded by the angle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereGrid {
    pub field: Field,
    pub dim: usize,
    pub nodes: Vec<Vector>,
    pub covering_radius: f64,
}

impl SphereGrid {
    /// Uniform grid on the real unit circle: n equally spaced angles.
    pub fn circle(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::Argument("circle grid needs at least 4 nodes".into()));
        }
        let nodes = (0..n)
            .map(|j| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                Vector::real(&[theta.cos(), theta.sin()])
            })
            .collect();
        Ok(SphereGrid {
            field: Field::Real,
            dim: 2,
            nodes,
            covering_radius: std::f64::consts::PI / n as f64,
        })
    }

    /// Grid on the complex unit sphere of C^2 modulo phase, parametrized as
    /// w(theta, phi) = (cos theta, e^{i phi} sin theta) with theta in
    /// [0, pi/2] and phi in [0, 2 pi).
    pub fn complex_2d(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 4 {
            return Err(Error::Argument("complex grid is too small".into()));
        }
        let h_theta = std::f64::consts::FRAC_PI_2 / n_theta as f64;
        let h_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity((n_theta + 1) * n_phi);
        for i in 0..=n_theta {
            let theta = i as f64 * h_theta;
            for j in 0..n_phi {
                let phi = j as f64 * h_phi;
                nodes.push(complex_2d_point(theta, phi));
            }
        }
        Ok(SphereGrid {
            field: Field::Complex,
            dim: 2,
            nodes,
            covering_radius: 0.5 * (h_theta + h_phi),
        })
    }

    /// Grid on the real unit sphere of R^3, parametrized as
    /// w(theta, phi) = (cos theta, sin theta cos phi, sin theta sin phi).
    pub fn real_3d(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta < 2 || n_phi < 4 {
            return Err(Error::Argument("sphere grid is too small".into()));
        }
        let h_theta = std::f64::consts::PI / n_theta as f64;
        let h_phi = 2.0 * std::f64::consts::PI / n_phi as f64;
        let mut nodes = Vec::with_capacity((n_theta + 1) * n_phi);
        for i in 0..=n_theta {
            let theta = i as f64 * h_theta;
            for j in 0..n_phi {
                let phi = j as f64 * h_phi;
                nodes.push(real_3d_point(theta, phi));
            }
        }
        Ok(SphereGrid {
            field: Field::Real,
            dim: 3,
            nodes,
            covering_radius: 0.5 * (h_theta + h_phi),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

pub fn complex_2d_point(theta: f64, phi: f64) -> Vector {
    Vector::complex(&[
        (theta.cos(), 0.0),
        (phi.cos() * theta.sin(), phi.sin() * theta.sin()),
    ])
}

pub fn real_3d_point(theta: f64, phi: f64) -> Vector {
    Vector::real(&[
        theta.cos(),
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
    ])
}

/// Summary used when embedding a grid into reports: node count and radius
/// instead of the full node list.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GridSummary {
    pub nodes: usize,
    pub covering_radius: f64,
}

impl From<&SphereGrid> for GridSummary {
    fn from(g: &SphereGrid) -> Self {
        GridSummary {
            nodes: g.len(),
            covering_radius: g.covering_radius,
        }
    }
}

/// Grid covering sanity check used by tests: distance from `v` to the grid,
/// modulo phase for complex grids.
pub fn distance_to_grid(grid: &SphereGrid, v: &Vector) -> f64 {
    grid.nodes
        .iter()
        .map(|n| phase_aligned_distance(v, n))
        .fold(f64::INFINITY, f64::min)
}

pub fn phase_aligned_distance(a: &Vector, b: &Vector) -> f64 {
    if a.field.is_real() {
        a.sub(b).norm()
    } else {
        // min over modulus-one lambda of ||a - lambda b|| : achieved by
        // lambda = <a,b>/|<a,b>|.
        let ip = a.inner(b);
        let m = ip.norm();
        if m <= 1e-300 {
            (a.norm().powi(2) + b.norm().powi(2)).sqrt()
        } else {
            let lambda = ip / m;
            a.sub(&b.scale(lambda)).norm()
        }
    }
}

#[allow(dead_code)]
fn _scalar_is_used(_: Scalar) {}
