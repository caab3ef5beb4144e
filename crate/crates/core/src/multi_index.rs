use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector of a monomial: `d` nonnegative integers summing to the
/// degree of the homogeneous polynomial that owns it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn checked(exponents: Vec<u32>, dim: usize, degree: u32) -> Result<Self> {
        if exponents.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: exponents.len(),
            });
        }
        let idx = MultiIndex(exponents);
        if idx.degree() != degree {
            return Err(Error::Argument(format!(
                "multi-index {:?} has degree {}, expected {}",
                idx.0,
                idx.degree(),
                degree
            )));
        }
        Ok(idx)
    }
}

/// All multi-indices of the given degree in `dim` variables, in
/// lexicographic order (deterministic coefficient layout).
pub fn enumerate(dim: usize, degree: u32) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; dim];
    fill(&mut out, &mut current, 0, degree);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut num: u128 = 1;
    for i in 0..k {
        num = num * (n - i) as u128 / (i + 1) as u128;
    }
    num
}

/// Multinomial coefficient k! / (a_1! ... a_d!) for |a| = k.
pub fn multinomial(alpha: &[u32]) -> u128 {
    let mut total: u64 = 0;
    let mut result: u128 = 1;
    for &a in alpha {
        total += a as u64;
        result *= binomial(total, a as u64);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerate_counts_match_stars_and_bars() {
        assert_eq!(enumerate(2, 3).len(), 4);
        assert_eq!(enumerate(3, 4).len(), 15);
        assert_eq!(enumerate(4, 2).len(), 10);
    }

    #[test]
    fn enumerate_degrees_are_homogeneous() {
        for idx in enumerate(3, 5) {
            assert_eq!(idx.degree(), 5);
        }
    }

    #[test]
    fn multinomial_small_cases() {
        assert_eq!(multinomial(&[2, 1]), 3);
        assert_eq!(multinomial(&[1, 1, 1]), 6);
        assert_eq!(multinomial(&[3, 0]), 1);
        assert_eq!(binomial(5, 2), 10);
    }
}
