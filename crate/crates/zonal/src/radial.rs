//! The radial second-order operator on symmetric (Laurent) polynomials,
//! in three conventions, with exact eigenfunction verification.
//!
//! Writing D_j = x_j ∂/∂x_j (so that ∂/∂q_j = i D_j on x_j = e^{i q_j}),
//! the conventions act as:
//!
//! * `PaperLiteral`:  −Σ D_j² − 2κ Σ_{j<k} [(x_j²+x_k²)/(x_j²−x_k²)](D_j−D_k)
//!   (cotangent of the full difference q_j − q_k). This convention does
//!   not, in general, map symmetric polynomials to polynomials — its
//!   failure on the N = 2 family is reproduced and reported by
//!   [`eigencheck`].
//! * `HalfAngle`:  −Σ D_j² − κ Σ_{j<k} [(x_j+x_k)/(x_j−x_k)](D_j−D_k)
//!   (cotangent of (q_j − q_k)/2 with the root-multiplicity coefficient κ).
//! * `JackForm`:  Σ x_j² ∂_j² + Σ_{i≠j} [x_i²/(x_i−x_j)] ∂_i — the standard
//!   zonal-polynomial (Jack α = 2) eigenoperator and this crate's
//!   authoritative form.
//!
//! All singular factors are applied through exact division; for symmetric
//! input the JackForm and HalfAngle actions are always polynomial.

use num_complex::Complex64;
use num_traits::Zero;

use crate::algebra::{rat, MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::spherical::phi_n2;

/// Operator convention selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    PaperLiteral,
    HalfAngle,
    JackForm,
}

/// Which operator to apply: convention, coupling κ > 0 (default 1/2), and
/// the number of variables.
#[derive(Debug, Clone)]
pub struct OperatorSpec {
    pub convention: Convention,
    pub kappa: Rational,
    pub n: usize,
}

impl OperatorSpec {
    pub fn new(convention: Convention, n: usize) -> Self {
        OperatorSpec {
            convention,
            kappa: rat(1, 2),
            n,
        }
    }

    pub fn with_kappa(mut self, kappa: Rational) -> Self {
        assert!(kappa > Rational::zero(), "kappa must be positive");
        self.kappa = kappa;
        self
    }
}

/// Result of an eigenfunction check: either an exact rational eigenvalue
/// (zero residual) or the nonzero residual polynomial.
#[derive(Debug, Clone, PartialEq)]
pub enum EigenCheck {
    Eigenvalue(Rational),
    /// r − λ̂ p with λ̂ matched on the leading term. When the operator
    /// action itself leaves the polynomial ring (PaperLiteral), the
    /// residual is reported in denominator-cleared form instead.
    Failure {
        residual: MultiPoly,
    },
}

impl EigenCheck {
    pub fn eigenvalue(&self) -> Option<&Rational> {
        match self {
            EigenCheck::Eigenvalue(ev) => Some(ev),
            EigenCheck::Failure { .. } => None,
        }
    }

    pub fn is_eigenfunction(&self) -> bool {
        matches!(self, EigenCheck::Eigenvalue(_))
    }
}

fn check_symmetric(spec: &OperatorSpec, p: &MultiPoly) -> Result<()> {
    if p.nvars() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: p.nvars(),
        });
    }
    if !p.is_symmetric_in(spec.n) {
        return Err(Error::NotSymmetric {
            context: "radial operator input".into(),
        });
    }
    Ok(())
}

/// The operator action as an exact pair (numerator, denominator):
/// numerator / denominator is the true rational-function result, with
/// denominator = 1 for the conventions whose action stays polynomial.
fn apply_cleared(spec: &OperatorSpec, p: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    check_symmetric(spec, p)?;
    let n = spec.n;
    let vars = p.vars().to_vec();
    let one = MultiPoly::one(vars.clone());
    let x = |i| MultiPoly::var(vars.clone(), i);

    match spec.convention {
        Convention::JackForm => {
            // Σ x_i^2 ∂_i^2 + Σ_{i<j} [x_i^2 ∂_i − x_j^2 ∂_j] / (x_i − x_j)
            let mut acc = MultiPoly::zero(vars.clone());
            for i in 0..n {
                let xi2 = &x(i) * &x(i);
                acc = &acc + &(&xi2 * &p.derivative(i).derivative(i));
            }
            for i in 0..n {
                for j in i + 1..n {
                    let num = &(&(&x(i) * &x(i)) * &p.derivative(i))
                        - &(&(&x(j) * &x(j)) * &p.derivative(j));
                    let den = &x(i) - &x(j);
                    acc = &acc + &num.exact_div(&den)?;
                }
            }
            Ok((acc, one))
        }
        Convention::HalfAngle => {
            // −Σ D_j² − κ Σ_{j<k} (x_j+x_k) [(D_j − D_k) p] / (x_j − x_k)
            let mut acc = MultiPoly::zero(vars.clone());
            for i in 0..n {
                acc = &acc - &p.euler_derivative(i).euler_derivative(i);
            }
            for i in 0..n {
                for j in i + 1..n {
                    let diff = &p.euler_derivative(i) - &p.euler_derivative(j);
                    let s = diff.exact_div(&(&x(i) - &x(j)))?;
                    let term = &(&x(i) + &x(j)) * &s;
                    acc = &acc - &term.scale(&spec.kappa);
                }
            }
            Ok((acc, one))
        }
        Convention::PaperLiteral => {
            // −Σ D_j² − 2κ Σ_{j<k} (x_j²+x_k²) [(D_j − D_k) p] / (x_j² − x_k²).
            // The (x_j − x_k) factor always divides; the (x_j + x_k) factor
            // need not, so the action is assembled over the common
            // denominator W = Π_{j<k} (x_j + x_k).
            let two_kappa = &spec.kappa * &rat(2, 1);
            let mut w = one;
            for i in 0..n {
                for j in i + 1..n {
                    w = &w * &(&x(i) + &x(j));
                }
            }
            let mut acc = MultiPoly::zero(vars.clone());
            for i in 0..n {
                acc = &acc - &p.euler_derivative(i).euler_derivative(i);
            }
            let mut acc = &acc * &w;
            for i in 0..n {
                for j in i + 1..n {
                    let diff = &p.euler_derivative(i) - &p.euler_derivative(j);
                    let s = diff.exact_div(&(&x(i) - &x(j)))?;
                    let cofactor = w.exact_div(&(&x(i) + &x(j)))?;
                    let num = &(&(&x(i) * &x(i)) + &(&x(j) * &x(j))) * &s;
                    acc = &acc - &(&num * &cofactor).scale(&two_kappa);
                }
            }
            Ok((acc, w))
        }
    }
}

/// Apply the radial operator exactly. Errors with `NotDivisible` when the
/// convention's action leaves the polynomial ring (possible only for
/// `PaperLiteral`).
pub fn apply_radial(spec: &OperatorSpec, p: &MultiPoly) -> Result<MultiPoly> {
    let (num, den) = apply_cleared(spec, p)?;
    num.exact_div(&den)
}

/// Check whether p is an eigenfunction: computes the operator action and
/// compares it with λ̂ p, λ̂ matched on the graded-lex leading term.
pub fn eigencheck(spec: &OperatorSpec, p: &MultiPoly) -> Result<EigenCheck> {
    if p.is_zero() {
        return Err(Error::InvalidParameter(
            "eigencheck requires a nonzero polynomial".into(),
        ));
    }
    let (num, den) = apply_cleared(spec, p)?;
    let den_p = &den * p;
    let (lead_m, lead_c) = den_p.leading().expect("nonzero");
    let lambda = num.coeff(lead_m) / lead_c;
    let residual_cleared = &num - &den_p.scale(&lambda);
    if residual_cleared.is_zero() {
        return Ok(EigenCheck::Eigenvalue(lambda));
    }
    // Report r − λ̂ p itself when that quotient exists, else the cleared
    // form.
    let residual = residual_cleared.exact_div(&den).unwrap_or(residual_cleared);
    Ok(EigenCheck::Failure { residual })
}

/// Serialize an eigencheck outcome: {"eigenvalue":{"num":..,"den":..}} or
/// {"residual": polynomial-JSON}.
pub fn eigencheck_to_json(check: &EigenCheck) -> serde_json::Value {
    match check {
        EigenCheck::Eigenvalue(ev) => serde_json::json!({
            "eigenvalue": {
                "num": ev.numer().to_string(),
                "den": ev.denom().to_string(),
            }
        }),
        EigenCheck::Failure { residual } => serde_json::json!({
            "residual": crate::algebra::poly_to_json(residual),
        }),
    }
}

/// Residual of the Legendre ODE  G'' + cot θ G' + l(l+1) G  for
/// G(θ) = Φ_l(e^{iθ}, e^{−iθ}), at one θ.
///
/// d/dθ acts on the torus restriction as i(D₁ − D₂), so G' and G'' come
/// from exact polynomial differentiation; only the final evaluation is
/// floating point. This keeps the check independent of both the Legendre
/// recurrence and the operator machinery above.
pub fn legendre_ode_residual(l: u32, theta: f64) -> f64 {
    let p = phi_n2(l);
    let d1 = &p.euler_derivative(0) - &p.euler_derivative(1);
    let d2 = &d1.euler_derivative(0) - &d1.euler_derivative(1);
    let pt = [
        Complex64::from_polar(1.0, theta),
        Complex64::from_polar(1.0, -theta),
    ];
    let g = p.eval_complex(&pt).expect("dimension");
    let g1 = Complex64::i() * d1.eval_complex(&pt).expect("dimension");
    let g2 = -d2.eval_complex(&pt).expect("dimension");
    let cot = theta.cos() / theta.sin();
    (g2 + cot * g1 + (l * (l + 1)) as f64 * g).norm()
}

/// O(h²) central-difference corroboration of the same residual, used as a
/// coarse independent cross-check of `legendre_ode_residual`.
pub fn legendre_ode_residual_fd(l: u32, theta: f64, h: f64) -> f64 {
    let p = phi_n2(l);
    let g = |t: f64| {
        let pt = [
            Complex64::from_polar(1.0, t),
            Complex64::from_polar(1.0, -t),
        ];
        p.eval_complex(&pt).expect("dimension").re
    };
    let g0 = g(theta);
    let gp = (g(theta + h) - g(theta - h)) / (2.0 * h);
    let gpp = (g(theta + h) - 2.0 * g0 + g(theta - h)) / (h * h);
    let cot = theta.cos() / theta.sin();
    (gpp + cot * gp + (l * (l + 1)) as f64 * g0).abs()
}

/// Eigenvalues of the N = 2 family phi_n2(0..=lmax) under `spec`; errors
/// if any member fails the eigencheck.
pub fn n2_eigenvalue_table(spec: &OperatorSpec, lmax: u32) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for l in 0..=lmax {
        match eigencheck(spec, &phi_n2(l))? {
            EigenCheck::Eigenvalue(ev) => out.push(ev),
            EigenCheck::Failure { residual } => {
                return Err(Error::InternalMismatch {
                    context: format!("phi_n2({l}) failed eigencheck with residual {residual}"),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat_int, var_names};
    use crate::spherical::{legendre, phi_fundamental};

    fn xvars(n: usize) -> Vec<String> {
        var_names("x", n)
    }

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(xvars(n), i)
    }

    #[test]
    fn jack_on_constant_is_zero() {
        let spec = OperatorSpec::new(Convention::JackForm, 3);
        let one = MultiPoly::one(xvars(3));
        assert!(apply_radial(&spec, &one).unwrap().is_zero());
    }

    #[test]
    fn jack_n2_degree_one_eigenvalue_is_one() {
        let spec = OperatorSpec::new(Convention::JackForm, 2);
        let p = phi_n2(1);
        assert_eq!(apply_radial(&spec, &p).unwrap(), p);
        assert_eq!(
            eigencheck(&spec, &p).unwrap(),
            EigenCheck::Eigenvalue(rat_int(1))
        );
    }

    #[test]
    fn half_angle_on_phi1() {
        // kappa = 1/2 on (x1+x2)/2 gives -(3/4)(x1+x2): eigenvalue -3/2.
        let spec = OperatorSpec::new(Convention::HalfAngle, 2);
        let p = phi_n2(1);
        let r = apply_radial(&spec, &p).unwrap();
        let expect = (&x(2, 0) + &x(2, 1)).scale(&rat(-3, 4));
        assert_eq!(r, expect);
        assert_eq!(
            eigencheck(&spec, &p).unwrap(),
            EigenCheck::Eigenvalue(rat(-3, 2))
        );
    }

    #[test]
    fn half_angle_eigenfamily() {
        // phi_n2(l) is an eigenfunction for every l; eigenvalues strictly
        // decrease (the operator is negative semidefinite on this family).
        let spec = OperatorSpec::new(Convention::HalfAngle, 2);
        let evs = n2_eigenvalue_table(&spec, 6).unwrap();
        assert_eq!(evs[0], rat_int(0));
        assert_eq!(evs[1], rat(-3, 2));
        assert_eq!(evs[2], rat_int(-5));
        for w in evs.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn paper_literal_fails_on_phi1_with_residual() {
        let spec = OperatorSpec::new(Convention::PaperLiteral, 2);
        let p = phi_n2(1);
        // The action itself leaves the polynomial ring:
        assert!(matches!(
            apply_radial(&spec, &p),
            Err(Error::NotDivisible { .. })
        ));
        // ... and the eigencheck reports a nonzero residual.
        match eigencheck(&spec, &p).unwrap() {
            EigenCheck::Failure { residual } => {
                assert!(!residual.is_zero());
                // Denominator-cleared residual is exactly x1 x2.
                assert_eq!(
                    residual,
                    MultiPoly::monomial(xvars(2), vec![1, 1], rat_int(1))
                );
            }
            EigenCheck::Eigenvalue(ev) => panic!("unexpected eigenvalue {ev}"),
        }
    }

    #[test]
    fn non_symmetric_input_rejected() {
        let spec = OperatorSpec::new(Convention::JackForm, 2);
        assert!(matches!(
            apply_radial(&spec, &x(2, 0)),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(matches!(
            eigencheck(&spec, &x(2, 0)),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn jack_eigenvalues_for_fundamental_family() {
        // Φ_(l,0,..): eigenvalue l(l + N - 2) for the Jack operator.
        for n in 2..=4usize {
            let spec = OperatorSpec::new(Convention::JackForm, n);
            for l in 0..=5u32 {
                let phi = phi_fundamental(n, l).unwrap();
                let ev = eigencheck(&spec, &phi).unwrap();
                let expect = rat_int(l as i64 * (l as i64 + n as i64 - 2));
                assert_eq!(ev, EigenCheck::Eigenvalue(expect), "N={n} l={l}");
            }
        }
    }

    #[test]
    fn jack_on_symmetric_laurent() {
        // p = x1^-1 + x2^-1 is symmetric Laurent; Jack action gives 2p.
        let spec = OperatorSpec::new(Convention::JackForm, 2);
        let p = &MultiPoly::monomial(xvars(2), vec![-1, 0], rat_int(1))
            + &MultiPoly::monomial(xvars(2), vec![0, -1], rat_int(1));
        let r = apply_radial(&spec, &p).unwrap();
        assert_eq!(r, p.scale(&rat_int(2)));
    }

    #[test]
    fn operator_linearity() {
        let spec = OperatorSpec::new(Convention::JackForm, 3);
        let e2 = crate::algebra::elementary_symmetric(xvars(3), 3, 2);
        let p = phi_fundamental(3, 3).unwrap();
        let a = rat(7, 3);
        let b = rat(-2, 5);
        let combo = &p.scale(&a) + &e2.scale(&b);
        let lhs = apply_radial(&spec, &combo).unwrap();
        let rhs = &apply_radial(&spec, &p).unwrap().scale(&a)
            + &apply_radial(&spec, &e2).unwrap().scale(&b);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn legendre_ode_exact_derivatives() {
        for l in 0..=8u32 {
            let mut worst: f64 = 0.0;
            for k in 0..50 {
                let theta = std::f64::consts::PI * (k as f64 + 0.5) / 50.0;
                worst = worst.max(legendre_ode_residual(l, theta));
            }
            assert!(worst <= 1e-10, "l = {l}: residual {worst:.3e}");
        }
    }

    #[test]
    fn legendre_ode_finite_difference_corroboration() {
        for l in 0..=4u32 {
            let mut worst: f64 = 0.0;
            for k in 0..20 {
                let theta = std::f64::consts::PI * (k as f64 + 0.5) / 20.0;
                worst = worst.max(legendre_ode_residual_fd(l, theta, 1e-4));
            }
            assert!(worst <= 1e-6, "l = {l}: residual {worst:.3e}");
        }
    }

    #[test]
    fn torus_restriction_matches_legendre() {
        // Φ_l(e^{iθ}, e^{−iθ}) = P_l(cos θ) — ties the family to the
        // classical Legendre oracle.
        for l in 0..=12u32 {
            let p = phi_n2(l);
            for k in 0..100 {
                let theta = std::f64::consts::PI * (k as f64) / 99.0;
                let pt = [
                    Complex64::from_polar(1.0, theta),
                    Complex64::from_polar(1.0, -theta),
                ];
                let lhs = p.eval_complex(&pt).unwrap();
                let rhs = legendre(l, theta.cos());
                assert!(
                    (lhs - rhs).norm() <= 1e-12,
                    "l={l} theta={theta}: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn eigencheck_serialization() {
        let ev = EigenCheck::Eigenvalue(rat(-3, 2));
        let v = eigencheck_to_json(&ev);
        assert_eq!(v["eigenvalue"]["num"], "-3");
        let fail = EigenCheck::Failure {
            residual: MultiPoly::monomial(xvars(2), vec![1, 1], rat_int(1)),
        };
        let v = eigencheck_to_json(&fail);
        assert!(v.get("residual").is_some());
    }

    #[test]
    fn dimension_mismatch_detected() {
        let spec = OperatorSpec::new(Convention::JackForm, 3);
        let p = phi_n2(2); // two variables
        assert!(matches!(
            apply_radial(&spec, &p),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
