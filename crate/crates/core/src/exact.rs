//! Exact rational evaluation of symmetric forms with integer coefficients
//! at signed basis tuples. Step-I witnesses must certify |T(e1^i, e2^j)| = 1
//! exactly, not within a floating tolerance.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::multi_index::MultiIndex;

/// Integer-coefficient homogeneous polynomial in `dim` variables.
#[derive(Debug, Clone)]
pub struct IntPoly {
    pub dim: usize,
    pub degree: u32,
    pub coeffs: BTreeMap<MultiIndex, BigInt>,
}

/// A signed canonical basis vector: sign * e_axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedBasis {
    pub axis: usize,
    pub negative: bool,
}

impl IntPoly {
    pub fn from_terms(dim: usize, degree: u32, terms: &[(Vec<u32>, i64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for (alpha, c) in terms {
            let idx = MultiIndex::new(alpha.clone());
            debug_assert_eq!(idx.degree(), degree);
            coeffs.insert(idx, BigInt::from(*c));
        }
        IntPoly { dim, degree, coeffs }
    }

    fn eval(&self, point: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (alpha, c) in &self.coeffs {
            let mut term = c.clone();
            for (x, &e) in point.iter().zip(alpha.exponents()) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    /// T(v_1,...,v_k) over the rationals via the 2^k sign-sum polarization
    /// identity, for arguments that are signed canonical basis vectors.
    pub fn polarize_signed_basis(&self, args: &[SignedBasis]) -> BigRational {
        let k = self.degree as usize;
        assert_eq!(args.len(), k, "polarization needs exactly k arguments");
        let mut acc = BigInt::zero();
        let mut point = vec![BigInt::zero(); self.dim];
        for mask in 0u32..(1u32 << k) {
            for x in point.iter_mut() {
                *x = BigInt::zero();
            }
            let mut negatives = 0u32;
            for (i, arg) in args.iter().enumerate() {
                let flip = mask & (1 << i) != 0;
                if flip {
                    negatives += 1;
                }
                let mut unit = BigInt::one();
                if arg.negative != flip {
                    unit = -unit;
                }
                point[arg.axis] += unit;
            }
            let value = self.eval(&point);
            if negatives % 2 == 0 {
                acc += value;
            } else {
                acc -= value;
            }
        }
        let mut denom = BigInt::one();
        for i in 1..=k as u64 {
            denom *= BigInt::from(i);
        }
        denom *= BigInt::from(2u64).pow(k as u32);
        BigRational::new(acc, denom)
    }
}

pub fn is_exactly_plus_minus_one(value: &BigRational) -> bool {
    value.abs() == BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_polarization_is_alpha_factorial_over_k_factorial() {
        // x1^2 x2 at (e1, e1, e2): 2!1!/3! = 1/3
        let p = IntPoly::from_terms(2, 3, &[(vec![2, 1], 1)]);
        let args = [
            SignedBasis { axis: 0, negative: false },
            SignedBasis { axis: 0, negative: false },
            SignedBasis { axis: 1, negative: false },
        ];
        let v = p.polarize_signed_basis(&args);
        assert_eq!(v, BigRational::new(BigInt::from(1), BigInt::from(3)));
    }

    #[test]
    fn mismatched_monomial_vanishes_exactly() {
        let p = IntPoly::from_terms(2, 3, &[(vec![3, 0], 1)]);
        let args = [
            SignedBasis { axis: 0, negative: false },
            SignedBasis { axis: 1, negative: false },
            SignedBasis { axis: 1, negative: false },
        ];
        assert!(p.polarize_signed_basis(&args).is_zero());
    }

    #[test]
    fn sign_flips_multiply_through() {
        let p = IntPoly::from_terms(2, 2, &[(vec![1, 1], 2)]);
        let plus = [
            SignedBasis { axis: 0, negative: false },
            SignedBasis { axis: 1, negative: false },
        ];
        let minus = [
            SignedBasis { axis: 0, negative: true },
            SignedBasis { axis: 1, negative: false },
        ];
        let a = p.polarize_signed_basis(&plus);
        let b = p.polarize_signed_basis(&minus);
        assert_eq!(a, -b.clone());
        assert!(is_exactly_plus_minus_one(&a));
        assert!(is_exactly_plus_minus_one(&b));
    }
}
