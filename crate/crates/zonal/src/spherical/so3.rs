//! Exact integration of monomials in the frame vectors n, m over SO(3),
//! using the Euler-angle parametrization
//!
//!   n = (cos φ sin θ, sin φ sin θ, cos θ),
//!   m = cos ψ · a + sin ψ · b,
//!   a = (-sin φ, cos φ, 0),
//!   b = (-cos φ cos θ, -sin φ cos θ, sin θ),
//!
//! with the normalized measure dμ = (1/8π²) sin θ dθ dφ dψ. Expanding the
//! integrand into a trigonometric polynomial makes each angle integral a
//! closed-form rational number; the π factors from the φ and ψ circles
//! cancel against the 1/8π² normalization, so every moment is exactly
//! rational.

use num_traits::Zero;

use crate::algebra::{binomial, rat_int, Rational};

/// Normalized circle average (1/2π) ∫ cos^a x sin^b x dx:
/// zero unless a and b are both even, else (a-1)!!(b-1)!!/(a+b)!!.
fn circle_average(a: u32, b: u32) -> Rational {
    if !a.is_multiple_of(2) || !b.is_multiple_of(2) {
        return Rational::zero();
    }
    fn double_factorial(n: i64) -> Rational {
        // (-1)!! = 0!! = 1
        let mut acc = rat_int(1);
        let mut k = n;
        while k > 1 {
            acc *= rat_int(k);
            k -= 2;
        }
        acc
    }
    double_factorial(a as i64 - 1) * double_factorial(b as i64 - 1)
        / double_factorial((a + b) as i64)
}

/// Normalized polar average (1/2) ∫_0^π cos^p θ sin^q θ · sin θ dθ.
/// Requires q even (guaranteed whenever the φ and ψ averages survive);
/// zero for odd p.
fn polar_average(p: u32, q: u32) -> Rational {
    if !p.is_multiple_of(2) {
        return Rational::zero();
    }
    assert!(
        q.is_multiple_of(2),
        "odd sin θ power survived the circle averages"
    );
    // substitute u = cos θ: (1/2) ∫_{-1}^{1} u^p (1 - u^2)^{q/2} du
    let half_q = q / 2;
    let mut acc = Rational::zero();
    for i in 0..=half_q {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc += Rational::from_integer(binomial(half_q, i) * sign) / rat_int((p + 2 * i + 1) as i64);
    }
    acc
}

/// Exact value of ∫ n_1^{a_1} n_2^{a_2} n_3^{a_3} m_1^{b_1} m_2^{b_2} m_3^{b_3} dμ
/// over SO(3). The result is exactly rational.
pub fn so3_moment_oracle(n_exps: [u32; 3], m_exps: [u32; 3]) -> Rational {
    let [a1, a2, a3] = n_exps;
    let [b1, b2, b3] = m_exps;
    let mut total = Rational::zero();

    // m1^{b1} = Σ_j C(b1,j) (cos ψ (-sin φ))^{b1-j} (sin ψ (-cos φ cos θ))^j
    // m2^{b2} = Σ_k C(b2,k) (cos ψ cos φ)^{b2-k} (sin ψ (-sin φ cos θ))^k
    // m3^{b3} = (sin ψ sin θ)^{b3}
    for j in 0..=b1 {
        for k in 0..=b2 {
            let cos_phi = a1 + j + (b2 - k);
            let sin_phi = a2 + (b1 - j) + k;
            let cos_psi = (b1 - j) + (b2 - k);
            let sin_psi = j + k + b3;
            let cos_theta = a3 + j + k;
            let sin_theta = a1 + a2 + b3;

            let phi_avg = circle_average(cos_phi, sin_phi);
            if phi_avg.is_zero() {
                continue;
            }
            let psi_avg = circle_average(cos_psi, sin_psi);
            if psi_avg.is_zero() {
                continue;
            }
            let theta_avg = polar_average(cos_theta, sin_theta);
            if theta_avg.is_zero() {
                continue;
            }

            let sign = if (b1 + k) % 2 == 0 { 1 } else { -1 };
            let coeff = Rational::from_integer(binomial(b1, j) * binomial(b2, k) * sign);
            total += coeff * phi_avg * psi_avg * theta_avg;
        }
    }
    total
}
