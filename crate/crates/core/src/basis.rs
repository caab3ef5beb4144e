use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Field, Scalar};
use crate::vector::Vector;

pub const DEFAULT_GRAM_TOL: f64 = 1e-10;
pub const DEFAULT_DEPENDENCY_TOL: f64 = 1e-9;

/// A list of m orthonormal vectors in K^d (m <= d).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrthonormalBasis {
    vectors: Vec<Vector>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<Vector>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::Argument("basis needs at least one vector".into()));
        }
        let field = vectors[0].field;
        let dim = vectors[0].dim();
        for v in &vectors {
            v.check_compatible(field, dim)?;
        }
        let basis = OrthonormalBasis { vectors };
        basis.check(DEFAULT_GRAM_TOL)?;
        Ok(basis)
    }

    pub fn field(&self) -> Field {
        self.vectors[0].field
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors[0].dim()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn gram_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for (i, u) in self.vectors.iter().enumerate() {
            for (j, v) in self.vectors.iter().enumerate() {
                let g = u.inner(v);
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((g - Scalar::new(target, 0.0)).norm());
            }
        }
        defect
    }

    pub fn check(&self, tol: f64) -> Result<()> {
        let defect = self.gram_defect();
        if defect > tol {
            return Err(Error::NotOrthonormal { defect, tol });
        }
        Ok(())
    }

    /// Coordinates of `v` relative to this basis (orthogonal projection).
    pub fn coordinates(&self, v: &Vector) -> Result<Vector> {
        v.check_compatible(self.field(), self.ambient_dim())?;
        let coords = self.vectors.iter().map(|b| v.inner(b)).collect();
        Vector::new(self.field(), coords)
    }
}

/// Orthonormalize the span of `vectors` by modified Gram-Schmidt. Vectors
/// whose residual norm falls below `tol` are treated as dependent and
/// skipped. Returns the basis (empty vector list is mapped to None) and the
/// span dimension.
pub fn gram_schmidt(vectors: &[Vector], tol: f64) -> Result<(Option<OrthonormalBasis>, usize)> {
    if vectors.is_empty() {
        return Err(Error::Argument("gram_schmidt needs at least one vector".into()));
    }
    let field = vectors[0].field;
    let dim = vectors[0].dim();
    let mut basis: Vec<Vector> = Vec::new();
    for v in vectors {
        v.check_compatible(field, dim)?;
        let mut r = v.clone();
        // re-orthogonalize twice for numerical cleanliness
        for _ in 0..2 {
            for b in &basis {
                let c = r.inner(b);
                r = r.sub(&b.scale(c));
            }
        }
        if r.norm() > tol {
            basis.push(r.normalized()?);
        }
    }
    let span_dim = basis.len();
    if basis.is_empty() {
        Ok((None, 0))
    } else {
        Ok((Some(OrthonormalBasis { vectors: basis }), span_dim))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_vectors_are_their_own_basis() {
        let vs = vec![Vector::real(&[1.0, 0.0]), Vector::real(&[0.0, 1.0])];
        let (basis, dim) = gram_schmidt(&vs, DEFAULT_DEPENDENCY_TOL).unwrap();
        assert_eq!(dim, 2);
        let basis = basis.unwrap();
        assert!(basis.vectors()[0].sub(&vs[0]).norm() < 1e-14);
        assert!(basis.vectors()[1].sub(&vs[1]).norm() < 1e-14);
    }

    #[test]
    fn collinear_vectors_collapse_to_one() {
        let vs = vec![Vector::real(&[1.0, 0.0]), Vector::real(&[2.0, 0.0])];
        let (basis, dim) = gram_schmidt(&vs, 1e-9).unwrap();
        assert_eq!(dim, 1);
        assert_eq!(basis.unwrap().len(), 1);
    }

    #[test]
    fn three_independent_vectors_span_three() {
        let s = 1.0 / 2f64.sqrt();
        let vs = vec![
            Vector::real(&[1.0, 0.0, 0.0]),
            Vector::real(&[s, s, 0.0]),
            Vector::real(&[0.0, 0.0, 1.0]),
        ];
        let (_, dim) = gram_schmidt(&vs, 1e-9).unwrap();
        assert_eq!(dim, 3);
    }

    #[test]
    fn zero_input_gives_empty_basis() {
        let vs = vec![Vector::zero(Field::Real, 2)];
        let (basis, dim) = gram_schmidt(&vs, 1e-9).unwrap();
        assert_eq!(dim, 0);
        assert!(basis.is_none());
    }

    #[test]
    fn complex_gram_schmidt_is_orthonormal() {
        let vs = vec![
            Vector::complex(&[(1.0, 1.0), (0.0, 0.5)]),
            Vector::complex(&[(0.0, 1.0), (1.0, 0.0)]),
        ];
        let (basis, dim) = gram_schmidt(&vs, 1e-9).unwrap();
        assert_eq!(dim, 2);
        assert!(basis.unwrap().gram_defect() < 1e-12);
    }
}
