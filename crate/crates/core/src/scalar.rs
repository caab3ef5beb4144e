use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Ground field of a Hilbert space. Every object carries its field and
/// mixed-field operations are rejected at the API boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    pub fn is_real(self) -> bool {
        matches!(self, Field::Real)
    }
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

/// Scalars are stored as complex doubles; real-field objects keep a zero
/// imaginary part, enforced on construction and deserialization.
pub type Scalar = Complex64;

/// Serialized scalar: complex numbers always carry explicit re/im.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScalarRepr {
    pub re: f64,
    pub im: f64,
}

impl From<Scalar> for ScalarRepr {
    fn from(z: Scalar) -> Self {
        ScalarRepr { re: z.re, im: z.im }
    }
}

impl From<ScalarRepr> for Scalar {
    fn from(r: ScalarRepr) -> Self {
        Scalar::new(r.re, r.im)
    }
}

pub fn real(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}

/// A modulus-one phase that rotates `z` onto the nonnegative real axis;
/// returns 1 when `z` is (numerically) zero.
pub fn phase_to_real(z: Scalar) -> Scalar {
    let m = z.norm();
    if m <= 1e-300 {
        Scalar::new(1.0, 0.0)
    } else {
        z.conj() / m
    }
}

/// Any square root of a complex number (principal branch).
pub fn sqrt(z: Scalar) -> Scalar {
    z.sqrt()
}

pub fn approx_eq(a: Scalar, b: Scalar, tol: f64) -> bool {
    (a - b).norm() <= tol
}
