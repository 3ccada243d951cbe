//! Moment coefficients and the series form of the spherical polynomials.
//!
//! On the sphere S^{N-1} with normalized invariant measure,
//!   <n_1^{2k_1} .. n_N^{2k_N}> = (1/2)_{k_1} .. (1/2)_{k_N} / (N/2)_l,
//! with l = k_1 + .. + k_N, which gives the fundamental-weight series
//!   Φ_{(l,0,..,0)}(x) = Σ_{|k|=l} C_k x^k,
//!   C_k = Π_j [(1/2)_{k_j} / (1)_{k_j}] * (1)_l / (N/2)_l.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{factorial, pochhammer, rat, var_names, Monomial, MultiPoly, Rational};
use crate::error::Result;

use super::label::WeightLabel;

/// All length-`parts` vectors of nonnegative integers summing to `total`,
/// in lexicographic order (first slot varies slowest, descending).
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=total).rev() {
            prefix.push(first);
            rec(total - first, parts - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(total, parts, &mut Vec::new(), &mut out);
    out
}

/// Exact moment <n_1^{2k_1} .. n_N^{2k_N}> over S^{N-1}.
pub fn sphere_moment(n: usize, k: &[u32]) -> Rational {
    assert_eq!(k.len(), n, "moment exponent vector must have length N");
    let l: u32 = k.iter().sum();
    let half = rat(1, 2);
    let mut num = Rational::one();
    for &kj in k {
        num *= pochhammer(&half, kj);
    }
    num / pochhammer(&rat(n as i64, 2), l)
}

/// Series coefficient C^l_{k_1..k_N} of the fundamental-weight polynomial.
pub fn series_coefficient(n: usize, k: &[u32]) -> Rational {
    assert_eq!(k.len(), n);
    let l: u32 = k.iter().sum();
    let half = rat(1, 2);
    let one = Rational::one();
    let mut c = Rational::one();
    for &kj in k {
        c *= pochhammer(&half, kj) / pochhammer(&one, kj);
    }
    c * pochhammer(&one, l) / pochhammer(&rat(n as i64, 2), l)
}

/// The coefficient table of one fundamental-weight polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTable {
    label: WeightLabel,
    entries: BTreeMap<Vec<u32>, Rational>,
}

impl SeriesTable {
    /// Table for Φ_{(l,0,..,0)} on N variables.
    pub fn fundamental(n: usize, l: u32) -> Result<Self> {
        let label = WeightLabel::fundamental(n, l)?;
        let mut entries = BTreeMap::new();
        for k in compositions(l, n) {
            entries.insert(k.clone(), series_coefficient(n, &k));
        }
        Ok(SeriesTable { label, entries })
    }

    pub fn label(&self) -> &WeightLabel {
        &self.label
    }

    pub fn entries(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.entries
    }

    /// Exact sum of all coefficients (must be 1).
    pub fn coefficient_sum(&self) -> Rational {
        let mut acc = Rational::from_integer(0.into());
        for c in self.entries.values() {
            acc += c;
        }
        acc
    }

    /// The polynomial Σ C_k x^k carried by this table.
    pub fn to_poly(&self) -> MultiPoly {
        let n = self.label.n();
        let mut p = MultiPoly::zero(var_names("x", n));
        for (k, c) in &self.entries {
            let exps: Vec<i64> = k.iter().map(|&e| e as i64).collect();
            p.add_term(Monomial::new(exps), c.clone());
        }
        p
    }
}

/// Fundamental-weight zonal spherical polynomial Φ_{(l,0,..,0)} on N
/// variables; homogeneous of degree l and exactly 1 at the all-ones point.
pub fn phi_fundamental(n: usize, l: u32) -> Result<MultiPoly> {
    Ok(SeriesTable::fundamental(n, l)?.to_poly())
}

/// N = 2 zonal spherical polynomial
///   Φ_l(x1,x2) = Σ_{k1+k2=l} (1/2)_{k1} (1/2)_{k2} / (k1! k2!) x1^k1 x2^k2;
/// on the torus (e^{iθ}, e^{-iθ}) this equals the Legendre polynomial
/// P_l(cos θ).
pub fn phi_n2(l: u32) -> MultiPoly {
    let half = rat(1, 2);
    let mut p = MultiPoly::zero(var_names("x", 2));
    for k1 in 0..=l {
        let k2 = l - k1;
        // (1)_k = k!
        let c = pochhammer(&half, k1) * pochhammer(&half, k2)
            / Rational::from_integer(factorial(k1) * factorial(k2));
        p.add_term(Monomial::new(vec![k1 as i64, k2 as i64]), c);
    }
    p
}

#[cfg(test)]
mod tests {
    use crate::algebra::rat_int;

    use super::*;

    #[test]
    fn sphere_moment_examples() {
        assert_eq!(sphere_moment(2, &[1, 0]), rat(1, 2));
        assert_eq!(sphere_moment(3, &[1, 1, 0]), rat(1, 15));
        assert_eq!(sphere_moment(4, &[0, 0, 0, 0]), rat_int(1));
        // E[k11^4] = 3/(N(N+2))
        for n in 2..=5usize {
            let mut k = vec![0u32; n];
            k[0] = 2;
            assert_eq!(
                sphere_moment(n, &k),
                rat(3, (n as i64) * (n as i64 + 2)),
                "N = {n}"
            );
        }
    }

    #[test]
    fn series_coefficient_examples() {
        assert_eq!(series_coefficient(3, &[1, 0, 0]), rat(1, 3));
        assert_eq!(series_coefficient(2, &[1, 1]), rat(1, 4));
        assert_eq!(series_coefficient(3, &[2, 0, 0]), rat(1, 5));
    }

    #[test]
    fn fundamental_examples() {
        assert_eq!(
            phi_fundamental(3, 0).unwrap(),
            MultiPoly::one(var_names("x", 3))
        );

        let p1 = phi_fundamental(3, 1).unwrap();
        assert_eq!(p1.coeff_of(&[1, 0, 0]), rat(1, 3));
        assert_eq!(p1.coeff_of(&[0, 1, 0]), rat(1, 3));
        assert_eq!(p1.num_terms(), 3);

        let p2 = phi_fundamental(3, 2).unwrap();
        assert_eq!(p2.coeff_of(&[2, 0, 0]), rat(1, 5));
        assert_eq!(p2.coeff_of(&[1, 1, 0]), rat(2, 15));
        assert_eq!(p2.eval_all_ones(), rat_int(1));
    }

    #[test]
    fn normalization_and_positivity() {
        for n in 2..=5usize {
            for l in 0..=8u32 {
                let table = SeriesTable::fundamental(n, l).unwrap();
                assert_eq!(table.coefficient_sum(), rat_int(1), "N={n} l={l}");
                assert!(
                    table
                        .entries()
                        .values()
                        .all(|c| c > &Rational::from_integer(0.into())),
                    "positivity N={n} l={l}"
                );
            }
        }
    }

    #[test]
    fn phi_n2_matches_fundamental_and_examples() {
        for l in 0..=12u32 {
            assert_eq!(phi_n2(l), phi_fundamental(2, l).unwrap(), "l = {l}");
        }
        let p1 = phi_n2(1);
        assert_eq!(p1.coeff_of(&[1, 0]), rat(1, 2));
        assert_eq!(p1.coeff_of(&[0, 1]), rat(1, 2));
        assert_eq!(phi_n2(0), MultiPoly::one(var_names("x", 2)));
    }

    #[test]
    fn compositions_cover_simplex() {
        let cs = compositions(3, 3);
        assert_eq!(cs.len(), 10);
        assert!(cs.iter().all(|c| c.iter().sum::<u32>() == 3));
        // deterministic order: first slot descending
        assert_eq!(cs[0], vec![3, 0, 0]);
        assert_eq!(cs[9], vec![0, 0, 3]);
    }
}
