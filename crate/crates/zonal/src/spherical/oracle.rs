//! Brute-force construction of Φ_pq for N = 3 by expanding the defining
//! integrand and integrating term by term with the exact Euler-angle
//! oracle.
//!
//! The integrand is Ξ₁^p Ξ₂^q with
//!   Ξ₁ = n₁²x₁ + n₂²x₂ + n₃²x₃,
//!   Ξ₂ = m₁²x₂x₃ + m₂²x₁x₃ + m₃²x₁x₂,
//! where the wedge coordinates of the first two frame columns reduce to the
//! third column m via (n ∧ l)_{jk} = ε_{jki} m_i. The result is a
//! homogeneous symmetric polynomial of degree p + 2q with positive rational
//! coefficients and value 1 at the all-ones point.

use crate::algebra::{multinomial, var_names, Monomial, MultiPoly, Rational};
use crate::error::{Error, Result};

use super::series::compositions;
use super::so3::so3_moment_oracle;

/// Cost guard: the expansion is combinatorial in p + q.
const MAX_TOTAL: u32 = 6;

pub fn phi_pq_oracle(p: u32, q: u32) -> Result<MultiPoly> {
    if p + q > MAX_TOTAL {
        return Err(Error::InvalidParameter(format!(
            "phi_pq_oracle refuses p + q = {} > {MAX_TOTAL}",
            p + q
        )));
    }
    let mut out = MultiPoly::zero(var_names("x", 3));
    for alpha in compositions(p, 3) {
        let alpha_mult = Rational::from_integer(multinomial(&alpha));
        for beta in compositions(q, 3) {
            let beta_mult = Rational::from_integer(multinomial(&beta));
            // x exponents: the beta_i factor carries the complementary pair.
            let exps = vec![
                (alpha[0] + beta[1] + beta[2]) as i64,
                (alpha[1] + beta[0] + beta[2]) as i64,
                (alpha[2] + beta[0] + beta[1]) as i64,
            ];
            let moment = so3_moment_oracle(
                [2 * alpha[0], 2 * alpha[1], 2 * alpha[2]],
                [2 * beta[0], 2 * beta[1], 2 * beta[2]],
            );
            out.add_term(Monomial::new(exps), &alpha_mult * &beta_mult * moment);
        }
    }
    Ok(out)
}
