//! Representation labels l = (l_1, .., l_{N-1}).

use crate::error::{Error, Result};

/// Highest-weight label for SU(N)/SO(N): N-1 nonnegative integers.
/// For N = 3 the two parts are conventionally written (p, q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightLabel {
    n: usize,
    parts: Vec<u32>,
}

impl WeightLabel {
    pub fn new(n: usize, parts: Vec<u32>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("N = {n} must be >= 2")));
        }
        if parts.len() != n - 1 {
            return Err(Error::DimensionMismatch {
                expected: n - 1,
                got: parts.len(),
            });
        }
        Ok(WeightLabel { n, parts })
    }

    /// (l, 0, .., 0).
    pub fn fundamental(n: usize, l: u32) -> Result<Self> {
        let mut parts = vec![0; n.saturating_sub(1)];
        if let Some(first) = parts.first_mut() {
            *first = l;
        }
        Self::new(n, parts)
    }

    /// N = 3 label (p, q).
    pub fn pq(p: u32, q: u32) -> Self {
        WeightLabel {
            n: 3,
            parts: vec![p, q],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Homogeneous degree of Φ_l in the x variables: sum of j * l_j.
    pub fn polynomial_degree(&self) -> u32 {
        self.parts
            .iter()
            .enumerate()
            .map(|(j, &l)| (j as u32 + 1) * l)
            .sum()
    }

    /// True if only the first part is nonzero.
    pub fn is_fundamental(&self) -> bool {
        self.parts.iter().skip(1).all(|&l| l == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_rules() {
        assert!(WeightLabel::new(1, vec![]).is_err());
        assert!(WeightLabel::new(3, vec![1]).is_err());
        let l = WeightLabel::pq(2, 1);
        assert_eq!(l.polynomial_degree(), 4); // p + 2q
        assert!(!l.is_fundamental());
        assert!(WeightLabel::fundamental(4, 3).unwrap().is_fundamental());
    }
}
