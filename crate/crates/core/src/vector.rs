use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar, ScalarRepr};

/// A vector in K^d. Coordinates of real-field vectors must have zero
/// imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    pub field: Field,
    pub coords: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: Field, coords: Vec<Scalar>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Argument("vector must have dimension >= 1".into()));
        }
        if field.is_real() && coords.iter().any(|c| c.im != 0.0) {
            return Err(Error::Argument(
                "real-field vector has nonzero imaginary part".into(),
            ));
        }
        Ok(Vector { field, coords })
    }

    pub fn real(coords: &[f64]) -> Self {
        Vector {
            field: Field::Real,
            coords: coords.iter().map(|&x| Scalar::new(x, 0.0)).collect(),
        }
    }

    pub fn complex(coords: &[(f64, f64)]) -> Self {
        Vector {
            field: Field::Complex,
            coords: coords.iter().map(|&(re, im)| Scalar::new(re, im)).collect(),
        }
    }

    pub fn basis(field: Field, dim: usize, i: usize) -> Self {
        let mut coords = vec![Scalar::new(0.0, 0.0); dim];
        coords[i] = Scalar::new(1.0, 0.0);
        Vector { field, coords }
    }

    pub fn zero(field: Field, dim: usize) -> Self {
        Vector {
            field,
            coords: vec![Scalar::new(0.0, 0.0); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Inner product, linear in the first slot: <u, v> = sum u_i conj(v_i).
    pub fn inner(&self, other: &Vector) -> Scalar {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, c: Scalar) -> Vector {
        Vector {
            field: self.field,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector {
            field: self.field,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn normalized(&self) -> Result<Vector> {
        let n = self.norm();
        if n <= 1e-300 {
            return Err(Error::Argument("cannot normalize the zero vector".into()));
        }
        Ok(self.scale(Scalar::new(1.0 / n, 0.0)))
    }

    pub fn check_unit(&self, tol: f64) -> Result<()> {
        let defect = (self.norm() - 1.0).abs();
        if defect > tol {
            return Err(Error::Argument(format!(
                "vector is not unit-norm: | ||v|| - 1 | = {defect:e} exceeds {tol:e}"
            )));
        }
        Ok(())
    }

    pub fn check_compatible(&self, field: Field, dim: usize) -> Result<()> {
        if self.field != field {
            return Err(Error::FieldMismatch {
                expected: field,
                got: self.field,
            });
        }
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: self.dim(),
            });
        }
        Ok(())
    }

    /// Collinearity over K: unit vectors are parallel iff |<x,y>| = 1.
    pub fn is_collinear_unit(&self, other: &Vector, tol: f64) -> bool {
        (self.inner(other).norm() - 1.0).abs() <= tol
    }

    /// Multiply by the modulus-one phase that makes the first coordinate of
    /// modulus above `tol` real nonnegative. Identity on real vectors up to
    /// an overall sign.
    pub fn canonical_phase(&self, tol: f64) -> Vector {
        for c in &self.coords {
            if c.norm() > tol {
                let phase = c.conj() / c.norm();
                return self.scale(phase);
            }
        }
        self.clone()
    }

    /// Lexicographic ordering on (re, im) coordinate pairs, for
    /// deterministic merging of equal-value maximizers.
    pub fn lex_cmp(&self, other: &Vector) -> std::cmp::Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.re.partial_cmp(&b.re).unwrap_or(std::cmp::Ordering::Equal) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
            match a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal) {
                std::cmp::Ordering::Equal => {}
                ord => return ord,
            }
        }
        std::cmp::Ordering::Equal
    }
}

#[derive(Serialize, Deserialize)]
struct VectorRepr {
    field: Field,
    coords: Vec<ScalarRepr>,
}

impl Serialize for Vector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        VectorRepr {
            field: self.field,
            coords: self.coords.iter().map(|&c| c.into()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = VectorRepr::deserialize(d)?;
        Vector::new(repr.field, repr.coords.into_iter().map(Into::into).collect())
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_is_linear_first_conjugate_second() {
        let u = Vector::complex(&[(1.0, 0.0), (0.0, 1.0)]);
        let v = Vector::complex(&[(0.0, 1.0), (1.0, 0.0)]);
        // <u,v> = 1*conj(i) + i*conj(1) = -i + i = 0
        assert!(u.inner(&v).norm() < 1e-15);
        assert!((u.inner(&u).re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn real_vector_rejects_imaginary_part() {
        assert!(Vector::new(Field::Real, vec![Scalar::new(1.0, 0.5)]).is_err());
    }

    #[test]
    fn canonical_phase_makes_leading_coord_nonnegative() {
        let v = Vector::complex(&[(0.0, 0.0), (-0.6, 0.8)]);
        let w = v.canonical_phase(1e-12);
        assert!(w.coords[1].im.abs() < 1e-15);
        assert!(w.coords[1].re > 0.0);
        assert!((w.norm() - v.norm()).abs() < 1e-15);
    }

    #[test]
    fn collinearity_detects_phase_multiples() {
        let x = Vector::complex(&[(0.6, 0.0), (0.0, 0.8)]);
        let y = x.scale(Scalar::new(0.0, 1.0));
        assert!(x.is_collinear_unit(&y, 1e-12));
        let z = Vector::complex(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(!x.is_collinear_unit(&z, 1e-12));
    }
}
