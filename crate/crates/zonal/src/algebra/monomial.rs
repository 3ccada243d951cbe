//! Exponent vectors with a fixed graded-lexicographic order.

use std::cmp::Ordering;

/// A (Laurent) monomial: one integer exponent per variable slot, negative
/// exponents allowed. Trailing zero exponents are normalized away so that
/// x1^2 stored with two slots and with three slots hash identically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(mut exps: Vec<i64>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    /// The empty monomial (constant term).
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// x_idx^1.
    pub fn var(idx: usize) -> Self {
        let mut exps = vec![0; idx + 1];
        exps[idx] = 1;
        Monomial(exps)
    }

    pub fn exponent(&self, idx: usize) -> i64 {
        self.0.get(idx).copied().unwrap_or(0)
    }

    /// Exponents padded to `n` slots.
    pub fn padded(&self, n: usize) -> Vec<i64> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    /// Number of slots up to the last nonzero exponent.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut exps = vec![0; n];
        for (i, e) in self.0.iter().enumerate() {
            exps[i] += e;
        }
        for (i, e) in other.0.iter().enumerate() {
            exps[i] += e;
        }
        Monomial::new(exps)
    }

    /// self / other as a Laurent monomial (always defined).
    pub fn div(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let mut exps = vec![0; n];
        for (i, e) in self.0.iter().enumerate() {
            exps[i] += e;
        }
        for (i, e) in other.0.iter().enumerate() {
            exps[i] -= e;
        }
        Monomial::new(exps)
    }

    pub fn pow(&self, k: i64) -> Monomial {
        Monomial::new(self.0.iter().map(|e| e * k).collect())
    }

    /// True if every exponent is nonnegative (ordinary polynomial monomial).
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Swap the exponents of two variable slots.
    pub fn swap(&self, i: usize, j: usize) -> Monomial {
        let n = self.0.len().max(i + 1).max(j + 1);
        let mut exps = self.padded(n);
        exps.swap(i, j);
        Monomial::new(exps)
    }

    /// Apply `perm` to the first `perm.len()` slots: new slot `perm[i]`
    /// receives the exponent of old slot `i`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let n = self.0.len().max(perm.len());
        let old = self.padded(n);
        let mut exps = vec![0; n];
        for (i, &target) in perm.iter().enumerate() {
            exps[target] = old[i];
        }
        for (i, e) in old.iter().enumerate().skip(perm.len()) {
            exps[i] = *e;
        }
        Monomial::new(exps)
    }
}

/// Graded lexicographic: total degree first, then exponentwise comparison
/// (earlier slots more significant); fixed once so serialized polynomials
/// are byte-stable across runs.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
