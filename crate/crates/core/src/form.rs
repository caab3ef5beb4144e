use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::basis::OrthonormalBasis;
use crate::error::{Error, Result};
use crate::multi_index::{enumerate, MultiIndex};
use crate::scalar::{Field, Scalar, ScalarRepr};
use crate::vector::Vector;

/// Polarization cost grows as 2^k; degrees beyond this are rejected.
pub const MAX_DEGREE: u32 = 16;

/// A symmetric k-linear form on K^d, stored through its diagonal: the
/// homogeneous polynomial P(w) = sum_a c_a w^a. The associated form is the
/// unique symmetric T with T(w,...,w) = P(w), recovered by polarization.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricForm {
    field: Field,
    dim: usize,
    degree: u32,
    coeffs: BTreeMap<MultiIndex, Scalar>,
}

impl SymmetricForm {
    pub fn new(
        field: Field,
        dim: usize,
        degree: u32,
        coeffs: BTreeMap<MultiIndex, Scalar>,
    ) -> Result<Self> {
        if dim == 0 || dim > 4 {
            return Err(Error::Argument(format!(
                "dimension {dim} out of supported range 1..=4"
            )));
        }
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Capacity {
                what: "degree",
                value: degree as usize,
                limit: MAX_DEGREE as usize,
            });
        }
        for (idx, c) in &coeffs {
            if idx.dim() != dim || idx.degree() != degree {
                return Err(Error::Argument(format!(
                    "coefficient index {:?} incompatible with dim {dim}, degree {degree}",
                    idx.exponents()
                )));
            }
            if field.is_real() && c.im != 0.0 {
                return Err(Error::Argument(
                    "real-field form has a coefficient with nonzero imaginary part".into(),
                ));
            }
        }
        Ok(SymmetricForm {
            field,
            dim,
            degree,
            coeffs,
        })
    }

    pub fn zero(field: Field, dim: usize, degree: u32) -> Result<Self> {
        Self::new(field, dim, degree, BTreeMap::new())
    }

    pub fn monomial(field: Field, dim: usize, alpha: &[u32], coeff: Scalar) -> Result<Self> {
        let idx = MultiIndex::new(alpha.to_vec());
        let degree = idx.degree();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(idx, coeff);
        Self::new(field, dim, degree, coeffs)
    }

    /// Build from (exponents, coefficient) pairs, summing duplicates.
    pub fn from_terms(
        field: Field,
        dim: usize,
        degree: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>,
    ) -> Result<Self> {
        let mut coeffs: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (alpha, c) in terms {
            let idx = MultiIndex::checked(alpha, dim, degree)?;
            *coeffs.entry(idx).or_insert_with(|| Scalar::new(0.0, 0.0)) += c;
        }
        coeffs.retain(|_, c| c.norm() != 0.0);
        Self::new(field, dim, degree, coeffs)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &BTreeMap<MultiIndex, Scalar> {
        &self.coeffs
    }

    pub fn coeff(&self, alpha: &[u32]) -> Scalar {
        self.coeffs
            .get(&MultiIndex::new(alpha.to_vec()))
            .copied()
            .unwrap_or_else(|| Scalar::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.norm() == 0.0)
    }

    pub fn scale(&self, c: Scalar) -> Result<SymmetricForm> {
        if self.field.is_real() && c.im != 0.0 {
            return Err(Error::Argument(
                "cannot scale a real form by a non-real scalar".into(),
            ));
        }
        let coeffs = self.coeffs.iter().map(|(a, v)| (a.clone(), v * c)).collect();
        SymmetricForm::new(self.field, self.dim, self.degree, coeffs)
    }

    pub fn add(&self, other: &SymmetricForm) -> Result<SymmetricForm> {
        self.check_same_shape(other)?;
        let mut coeffs = self.coeffs.clone();
        for (a, c) in &other.coeffs {
            *coeffs.entry(a.clone()).or_insert_with(|| Scalar::new(0.0, 0.0)) += c;
        }
        SymmetricForm::new(self.field, self.dim, self.degree, coeffs)
    }

    fn check_same_shape(&self, other: &SymmetricForm) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                got: other.field,
            });
        }
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::Argument(format!(
                "form shapes differ: ({}, {}) vs ({}, {})",
                self.dim, self.degree, other.dim, other.degree
            )));
        }
        Ok(())
    }

    /// Reinterpret the same coefficients over C: the unique C-multilinear
    /// extension of a real form.
    pub fn complexified(&self) -> Result<SymmetricForm> {
        if !self.field.is_real() {
            return Err(Error::Argument("form is already complex".into()));
        }
        SymmetricForm::new(Field::Complex, self.dim, self.degree, self.coeffs.clone())
    }

    /// P(w): direct monomial evaluation of the diagonal.
    pub fn diagonal_eval(&self, w: &Vector) -> Result<Scalar> {
        w.check_compatible(self.field, self.dim)?;
        let mut acc = Scalar::new(0.0, 0.0);
        for (alpha, c) in &self.coeffs {
            let mut term = *c;
            for (x, &e) in w.coords.iter().zip(alpha.exponents()) {
                term *= x.powu(e);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// T(v_1,...,v_k) through the 2^k sign-sum polarization identity:
    /// T = (1/(2^k k!)) sum_{e in {-1,1}^k} e_1...e_k P(sum_i e_i v_i).
    pub fn polarization_eval(&self, args: &[Vector]) -> Result<Scalar> {
        let k = self.degree as usize;
        if args.len() != k {
            return Err(Error::Argument(format!(
                "expected {k} arguments, got {}",
                args.len()
            )));
        }
        for v in args {
            v.check_compatible(self.field, self.dim)?;
        }
        if self.degree > MAX_DEGREE {
            return Err(Error::Capacity {
                what: "degree",
                value: k,
                limit: MAX_DEGREE as usize,
            });
        }
        let mut acc = Scalar::new(0.0, 0.0);
        let mut combo = Vector::zero(self.field, self.dim);
        for mask in 0u32..(1u32 << k) {
            combo.coords.iter_mut().for_each(|c| *c = Scalar::new(0.0, 0.0));
            let mut sign = 1.0;
            for (i, v) in args.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    sign = -sign;
                    for (c, x) in combo.coords.iter_mut().zip(&v.coords) {
                        *c -= x;
                    }
                } else {
                    for (c, x) in combo.coords.iter_mut().zip(&v.coords) {
                        *c += x;
                    }
                }
            }
            acc += self.diagonal_eval(&combo)? * crate::scalar::real(sign);
        }
        let factorial: f64 = (1..=k as u64).map(|i| i as f64).product();
        Ok(acc / crate::scalar::real(2f64.powi(k as i32) * factorial))
    }

    /// Fix `m < k` arguments of T, producing the symmetric (k-m)-form
    /// S(w,...,w) = T(w,...,w,fixed...). One fixed vector contracts the
    /// diagonal to (1/k) sum_j v_j dP/dx_j.
    pub fn contract(&self, fixed: &[Vector]) -> Result<SymmetricForm> {
        if fixed.len() >= self.degree as usize {
            return Err(Error::Argument(format!(
                "cannot contract {} slots of a degree-{} form",
                fixed.len(),
                self.degree
            )));
        }
        let mut current = self.clone();
        for v in fixed {
            v.check_compatible(self.field, self.dim)?;
            current = current.contract_one(v)?;
        }
        Ok(current)
    }

    fn contract_one(&self, v: &Vector) -> Result<SymmetricForm> {
        let k = self.degree;
        let mut coeffs: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (alpha, c) in &self.coeffs {
            for j in 0..self.dim {
                let e = alpha.exponents()[j];
                if e == 0 {
                    continue;
                }
                let mut beta = alpha.exponents().to_vec();
                beta[j] -= 1;
                let w = c * v.coords[j] * crate::scalar::real(e as f64 / k as f64);
                *coeffs
                    .entry(MultiIndex::new(beta))
                    .or_insert_with(|| Scalar::new(0.0, 0.0)) += w;
            }
        }
        coeffs.retain(|_, c| c.norm() != 0.0);
        SymmetricForm::new(self.field, self.dim, k - 1, coeffs)
    }

    /// Restriction to the subspace spanned by an orthonormal basis:
    /// (restrict T)(u) = T(sum_i u_i b_i, ..., sum_i u_i b_i).
    pub fn restrict(&self, basis: &OrthonormalBasis) -> Result<SymmetricForm> {
        basis.check(1e-10)?;
        if basis.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field,
                got: basis.field(),
            });
        }
        if basis.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: basis.ambient_dim(),
            });
        }
        let m = basis.len();
        // Substitute x = B u and expand monomial by monomial: each factor
        // x_j = sum_i B_ji u_i, so x^alpha is a product of linear forms in u.
        let mut out: BTreeMap<MultiIndex, Scalar> = BTreeMap::new();
        for (alpha, c) in &self.coeffs {
            let mut expansion: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
            expansion.insert(vec![0u32; m], *c);
            for j in 0..self.dim {
                for _ in 0..alpha.exponents()[j] {
                    let mut next: BTreeMap<Vec<u32>, Scalar> = BTreeMap::new();
                    for (beta, w) in &expansion {
                        for i in 0..m {
                            let b_ji = basis.vectors()[i].coords[j];
                            if b_ji.norm() == 0.0 {
                                continue;
                            }
                            let mut gamma = beta.clone();
                            gamma[i] += 1;
                            *next.entry(gamma).or_insert_with(|| Scalar::new(0.0, 0.0)) +=
                                w * b_ji;
                        }
                    }
                    expansion = next;
                }
            }
            for (beta, w) in expansion {
                *out.entry(MultiIndex::new(beta))
                    .or_insert_with(|| Scalar::new(0.0, 0.0)) += w;
            }
        }
        out.retain(|_, c| c.norm() > 0.0);
        SymmetricForm::new(self.field, m.max(1), self.degree, out)
    }

    /// Dense coefficient vector over `enumerate(dim, degree)` order.
    pub fn dense_coeffs(&self) -> (Vec<MultiIndex>, Vec<Scalar>) {
        let idxs = enumerate(self.dim, self.degree);
        let vals = idxs.iter().map(|a| {
            self.coeffs
                .get(a)
                .copied()
                .unwrap_or_else(|| Scalar::new(0.0, 0.0))
        });
        let vals = vals.collect();
        (idxs, vals)
    }

    pub fn max_coeff_distance(&self, other: &SymmetricForm) -> f64 {
        let mut keys: std::collections::BTreeSet<&MultiIndex> = self.coeffs.keys().collect();
        keys.extend(other.coeffs.keys());
        keys.into_iter()
            .map(|a| (self.coeff(a.exponents()) - other.coeff(a.exponents())).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Serialize, Deserialize)]
struct CoeffRepr {
    alpha: Vec<u32>,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    field: Field,
    dim: usize,
    degree: u32,
    coeffs: Vec<CoeffRepr>,
}

impl Serialize for SymmetricForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            field: self.field,
            dim: self.dim,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(a, c)| CoeffRepr {
                    alpha: a.exponents().to_vec(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SymmetricForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        let terms = repr
            .coeffs
            .into_iter()
            .map(|c| (c.alpha, Scalar::new(c.re, c.im)));
        SymmetricForm::from_terms(repr.field, repr.dim, repr.degree, terms)
            .map_err(serde::de::Error::custom)
    }
}

/// Serialized scalar value of a form evaluation.
pub fn scalar_repr(z: Scalar) -> ScalarRepr {
    z.into()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::real;

    /// Independent oracle: evaluate the symmetric form associated to a
    /// monomial by averaging over all k! argument placements. Used to
    /// derive frozen expected values; never calls polarization_eval.
    pub(crate) fn naive_monomial_eval(alpha: &[u32], args: &[Vector]) -> Scalar {
        let k: u32 = alpha.iter().sum();
        assert_eq!(k as usize, args.len());
        // coordinate multiset: alpha_j copies of j
        let mut slots = Vec::new();
        for (j, &e) in alpha.iter().enumerate() {
            for _ in 0..e {
                slots.push(j);
            }
        }
        let mut perm: Vec<usize> = (0..args.len()).collect();
        let mut acc = Scalar::new(0.0, 0.0);
        let mut count = 0u64;
        permute(&mut perm, 0, &mut |p| {
            let mut term = Scalar::new(1.0, 0.0);
            for (slot, &arg_idx) in p.iter().enumerate() {
                term *= args[arg_idx].coords[slots[slot]];
            }
            acc += term;
            count += 1;
        });
        acc / real(count as f64)
    }

    fn permute(perm: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == perm.len() {
            f(perm);
            return;
        }
        for j in i..perm.len() {
            perm.swap(i, j);
            permute(perm, i + 1, f);
            perm.swap(i, j);
        }
    }

    fn e(i: usize) -> Vector {
        Vector::basis(Field::Real, 2, i)
    }

    #[test]
    fn polarization_of_x1sq_x2_at_e1_e1_e2_is_one_third() {
        let form =
            SymmetricForm::monomial(Field::Real, 2, &[2, 1], real(1.0)).unwrap();
        let args = [e(0), e(0), e(1)];
        let oracle = naive_monomial_eval(&[2, 1], &args);
        assert!((oracle.re - 1.0 / 3.0).abs() < 1e-15);
        let got = form.polarization_eval(&args).unwrap();
        assert!((got.re - 1.0 / 3.0).abs() < 1e-12);
        assert!((got - oracle).norm() < 1e-12);
    }

    #[test]
    fn polarization_diagonal_of_x1_cubed_is_one() {
        let form = SymmetricForm::monomial(Field::Real, 2, &[3, 0], real(1.0)).unwrap();
        let got = form.polarization_eval(&[e(0), e(0), e(0)]).unwrap();
        assert!((got.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn polarization_of_p3_at_e1_e2_e2_is_minus_one() {
        // P = x1^3 - 3 x1 x2^2
        let form = SymmetricForm::from_terms(
            Field::Real,
            2,
            3,
            [(vec![3, 0], real(1.0)), (vec![1, 2], real(-3.0))],
        )
        .unwrap();
        let args = [e(0), e(1), e(1)];
        let oracle = naive_monomial_eval(&[3, 0], &args) * real(1.0)
            + naive_monomial_eval(&[1, 2], &args) * real(-3.0);
        assert!((oracle.re + 1.0).abs() < 1e-15);
        let got = form.polarization_eval(&args).unwrap();
        assert!((got.re + 1.0).abs() < 1e-12);
    }

    #[test]
    fn diagonal_eval_examples() {
        let p3 = SymmetricForm::from_terms(
            Field::Real,
            2,
            3,
            [(vec![3, 0], real(1.0)), (vec![1, 2], real(-3.0))],
        )
        .unwrap();
        assert!((p3.diagonal_eval(&Vector::real(&[1.0, 0.0])).unwrap().re - 1.0).abs() < 1e-15);
        assert_eq!(
            p3.diagonal_eval(&Vector::real(&[0.0, 0.0])).unwrap().re,
            0.0
        );
        // Q = 3 x1^2 x2 - x2^3 at (0,1) -> -1
        let q3 = SymmetricForm::from_terms(
            Field::Real,
            2,
            3,
            [(vec![2, 1], real(3.0)), (vec![0, 3], real(-1.0))],
        )
        .unwrap();
        assert!((q3.diagonal_eval(&Vector::real(&[0.0, 1.0])).unwrap().re + 1.0).abs() < 1e-15);
    }

    #[test]
    fn contract_reads_off_bilinear_matrix() {
        // T = x1 y1 - x2 y2 has diagonal x1^2 - x2^2.
        let t = SymmetricForm::from_terms(
            Field::Real,
            2,
            2,
            [(vec![2, 0], real(1.0)), (vec![0, 2], real(-1.0))],
        )
        .unwrap();
        let linear = t.contract(std::slice::from_ref(&e(0))).unwrap();
        assert_eq!(linear.degree(), 1);
        assert!((linear.coeff(&[1, 0]).re - 1.0).abs() < 1e-15);
        assert!(linear.coeff(&[0, 1]).norm() < 1e-15);

        // P (k=3) contracted with e1 gives diag(1,-1).
        let p3 = SymmetricForm::from_terms(
            Field::Real,
            2,
            3,
            [(vec![3, 0], real(1.0)), (vec![1, 2], real(-3.0))],
        )
        .unwrap();
        let bil = p3.contract(std::slice::from_ref(&e(0))).unwrap();
        assert!((bil.coeff(&[2, 0]).re - 1.0).abs() < 1e-12);
        assert!((bil.coeff(&[0, 2]).re + 1.0).abs() < 1e-12);
        assert!(bil.coeff(&[1, 1]).norm() < 1e-12);

        // Contraction with the zero vector annihilates the form.
        let z = p3.contract(&[Vector::zero(Field::Real, 2)]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn restrict_identity_and_diagonal_line() {
        let t = SymmetricForm::from_terms(
            Field::Real,
            2,
            2,
            [(vec![2, 0], real(1.0)), (vec![0, 2], real(-1.0))],
        )
        .unwrap();
        let canonical = OrthonormalBasis::new(vec![e(0), e(1)]).unwrap();
        let same = t.restrict(&canonical).unwrap();
        assert!(t.max_coeff_distance(&same) < 1e-15);

        let s = 1.0 / 2f64.sqrt();
        let line = OrthonormalBasis::new(vec![Vector::real(&[s, s])]).unwrap();
        let restricted = t.restrict(&line).unwrap();
        assert!(restricted.is_zero());
    }

    #[test]
    fn restrict_cylinder_form_drops_unused_axis() {
        // P with no x3 terms on R^3, restricted to span{e1,e2}: same coefficients.
        let p3 = SymmetricForm::from_terms(
            Field::Real,
            3,
            3,
            [(vec![3, 0, 0], real(1.0)), (vec![1, 2, 0], real(-3.0))],
        )
        .unwrap();
        let basis = OrthonormalBasis::new(vec![
            Vector::basis(Field::Real, 3, 0),
            Vector::basis(Field::Real, 3, 1),
        ])
        .unwrap();
        let r = p3.restrict(&basis).unwrap();
        assert_eq!(r.dim(), 2);
        assert!((r.coeff(&[3, 0]).re - 1.0).abs() < 1e-15);
        assert!((r.coeff(&[1, 2]).re + 3.0).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let t = SymmetricForm::from_terms(
            Field::Complex,
            2,
            2,
            [(vec![1, 1], Scalar::new(0.5, -1.0))],
        )
        .unwrap();
        let json = serde_json::to_value(&t).unwrap();
        assert_eq!(json["field"], "complex");
        assert_eq!(json["dim"], 2);
        assert_eq!(json["degree"], 2);
        assert_eq!(json["coeffs"][0]["alpha"], serde_json::json!([1, 1]));
        assert_eq!(json["coeffs"][0]["im"], -1.0);
        let back: SymmetricForm = serde_json::from_value(json).unwrap();
        assert!(t.max_coeff_distance(&back) < 1e-15);
    }

    #[test]
    fn mixed_field_arguments_are_rejected() {
        let t = SymmetricForm::monomial(Field::Real, 2, &[2, 0], real(1.0)).unwrap();
        let w = Vector::complex(&[(1.0, 0.0), (0.0, 0.0)]);
        assert!(matches!(
            t.diagonal_eval(&w),
            Err(Error::FieldMismatch { .. })
        ));
    }
}
