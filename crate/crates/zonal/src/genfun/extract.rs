//! Exact power-series extraction of the generating function.
//!
//! Working over the rationals in (z₁, z₂, u, t₁, t₂) with u = 1 − ξ²,
//! the sextic form of H gives H − 1 with every term of positive t-order;
//! expanding H^{−1/2} with the binomial series and integrating termwise
//! with ∫₀¹ (1−ξ²)^c dξ = 4^c (c!)² / (2c+1)! produces the table
//! (p, q) → Φ_pq(z₁, z₂) exactly.

use std::collections::BTreeMap;

use num_traits::One;

use crate::algebra::{
    binomial, elementary_symmetric, factorial, pochhammer, rat, to_elementary_basis, var_names,
    Monomial, MultiPoly, Rational,
};
use crate::error::{Error, Result};

/// Extraction cost guard (the spec-level table never needs more).
const MAX_ORDER: u32 = 16;

// Variable slots for the series workspace.
const Z1: usize = 0;
const Z2: usize = 1;
const U: usize = 2;
const T1: usize = 3;
const T2: usize = 4;

fn series_vars() -> Vec<String> {
    vec![
        "z1".to_string(),
        "z2".to_string(),
        "u".to_string(),
        "t1".to_string(),
        "t2".to_string(),
    ]
}

fn svar(idx: usize) -> MultiPoly {
    MultiPoly::var(series_vars(), idx)
}

/// H as a polynomial in (z₁, z₂, u, t₁, t₂): the cubic-in-τ expansion with
/// a₀ = 1 + u t₁ t₂, τ₁ = u t₁, τ₂ = u t₂ substituted.
pub fn h_series_poly() -> MultiPoly {
    let one = MultiPoly::one(series_vars());
    let z1 = svar(Z1);
    let z2 = svar(Z2);
    let u = svar(U);
    let t1 = svar(T1);
    let t2 = svar(T2);

    let a0 = &one + &(&(&u * &t1) * &t2);
    let tau1 = &u * &t1;
    let tau2 = &u * &t2;

    h_of_parts(&z1, &z2, &a0, &tau1, &tau2, &one)
}

/// The displayed sextic form of H in terms of (z₁, z₂, a₀, τ₁, τ₂):
///   H = a₀³ − a₀²(z₁τ₁ + z₂τ₂)
///       + a₀[z₂τ₁² + z₁τ₂² + (z₁z₂ − 3)τ₁τ₂]
///       − [τ₁³ + τ₂³ + τ₁τ₂((z₂² − 2z₁)τ₁ + (z₁² − 2z₂)τ₂)].
fn h_of_parts(
    z1: &MultiPoly,
    z2: &MultiPoly,
    a0: &MultiPoly,
    tau1: &MultiPoly,
    tau2: &MultiPoly,
    one: &MultiPoly,
) -> MultiPoly {
    let three = one.scale(&rat(3, 1));
    let two = rat(2, 1);

    let lin = &(z1 * tau1) + &(z2 * tau2);
    let quad = &(&(z2 * &(tau1 * tau1)) + &(z1 * &(tau2 * tau2)))
        + &(&(&(z1 * z2) - &three) * &(tau1 * tau2));
    let cubic_empty = &(&(tau1 * &(tau1 * tau1)) + &(tau2 * &(tau2 * tau2)));
    let cross =
        &(&(&(z2 * z2) - &z1.scale(&two)) * tau1) + &(&(&(z1 * z1) - &z2.scale(&two)) * tau2);
    let cubic = cubic_empty + &(&(tau1 * tau2) * &cross);

    let a0sq = a0 * a0;
    &(&(&a0sq * a0) - &(&a0sq * &lin)) + &(&(a0 * &quad) - &cubic)
}

/// Reference form of the sextic identity with (a₀, τ₁, τ₂) as free
/// variables, for the exact symbolic check against the product form.
pub fn h_sextic_reference() -> MultiPoly {
    let vars = vec![
        "z1".to_string(),
        "z2".to_string(),
        "a0".to_string(),
        "tau1".to_string(),
        "tau2".to_string(),
    ];
    let v = |i| MultiPoly::var(vars.clone(), i);
    let one = MultiPoly::one(vars.clone());
    h_of_parts(&v(0), &v(1), &v(2), &v(3), &v(4), &one)
}

/// Product form Π_j (a₀ − x_j τ₁ − x_j^{−1} τ₂), cleared by z₃ = x₁x₂x₃
/// into the polynomial Π_j (a₀ x_j − x_j² τ₁ − τ₂) and rewritten through
/// the elementary-symmetric basis with z₃ = 1.
pub fn h_product_in_z() -> Result<MultiPoly> {
    let vars = vec![
        "x1".to_string(),
        "x2".to_string(),
        "x3".to_string(),
        "a0".to_string(),
        "tau1".to_string(),
        "tau2".to_string(),
    ];
    let x = |i| MultiPoly::var(vars.clone(), i);
    let a0 = MultiPoly::var(vars.clone(), 3);
    let tau1 = MultiPoly::var(vars.clone(), 4);
    let tau2 = MultiPoly::var(vars.clone(), 5);
    let mut prod = MultiPoly::one(vars.clone());
    for j in 0..3 {
        let factor = &(&(&a0 * &x(j)) - &(&(&x(j) * &x(j)) * &tau1)) - &tau2;
        prod = &prod * &factor;
    }
    to_elementary_basis(&prod, 3, true)
}

/// ∫₀¹ (1 − ξ²)^c dξ = 4^c (c!)² / (2c+1)!.
pub fn xi_moment(c: u32) -> Rational {
    let four_c = rat(4, 1);
    let mut num = Rational::one();
    for _ in 0..c {
        num *= &four_c;
    }
    let cf = Rational::from_integer(factorial(c));
    num * &cf * &cf / Rational::from_integer(factorial(2 * c + 1))
}

/// Binomial series coefficient C(−1/2, m) = (−1)^m C(2m, m) / 4^m.
fn binom_minus_half(m: u32) -> Rational {
    let sign = if m.is_multiple_of(2) { 1 } else { -1 };
    let mut denom = Rational::one();
    for _ in 0..m {
        denom *= rat(4, 1);
    }
    Rational::from_integer(binomial(2 * m, m) * sign) / denom
}

/// Exact table (p, q) → Φ_pq(z₁, z₂) for all p + q ≤ dmax.
pub fn series_extract_to_order(dmax: u32) -> Result<BTreeMap<(u32, u32), MultiPoly>> {
    if dmax > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "series extraction order {dmax} exceeds the cost guard {MAX_ORDER}"
        )));
    }
    let d = dmax as i64;
    let tvars = [T1, T2];
    let one = MultiPoly::one(series_vars());
    let h = h_series_poly();
    let g = {
        // every term of H − 1 has positive t-order; drop t-order > dmax now
        let g_full = &h - &one;
        g_full.mul_truncate(&one, &tvars, d)
    };

    let mut expansion = one.clone();
    let mut g_pow = one;
    for m in 1..=dmax {
        g_pow = g_pow.mul_truncate(&g, &tvars, d);
        expansion = &expansion + &g_pow.scale(&binom_minus_half(m));
    }

    // integrate in ξ: u^c → xi_moment(c)
    let mut integrated = MultiPoly::zero(series_vars());
    let mut moments: BTreeMap<i64, Rational> = BTreeMap::new();
    for (m, c) in expansion.terms() {
        let uexp = m.exponent(U);
        debug_assert!(uexp >= 0);
        let w = moments
            .entry(uexp)
            .or_insert_with(|| xi_moment(uexp as u32))
            .clone();
        let mut exps = m.padded(5);
        exps[U] = 0;
        integrated.add_term(Monomial::new(exps), c * w);
    }

    // split by (t1, t2) exponents into z-polynomials
    let zvars = var_names("z", 2);
    let mut table: BTreeMap<(u32, u32), MultiPoly> = BTreeMap::new();
    for (pq, group) in integrated.partition_by(&[T1, T2]) {
        let (p, q) = (pq[0] as u32, pq[1] as u32);
        if p + q > dmax {
            continue;
        }
        let mut zp = MultiPoly::zero(zvars.clone());
        for (m, c) in group.terms() {
            debug_assert!(m.exponent(U) == 0 && m.exponent(T1) == 0 && m.exponent(T2) == 0);
            zp.add_term(
                Monomial::new(vec![m.exponent(Z1), m.exponent(Z2)]),
                c.clone(),
            );
        }
        table.insert((p, q), zp);
    }
    // Zero entries cannot occur (every Φ_pq is 1 at z = (3,3)), but keep
    // the table total on the triangle anyway.
    for p in 0..=dmax {
        for q in 0..=(dmax - p) {
            table
                .entry((p, q))
                .or_insert_with(|| MultiPoly::zero(zvars.clone()));
        }
    }
    Ok(table)
}

/// Rectangle view: entries (p, q) with p ≤ pmax, q ≤ qmax.
pub fn series_extract(pmax: u32, qmax: u32) -> Result<BTreeMap<(u32, u32), MultiPoly>> {
    let table = series_extract_to_order(pmax + qmax)?;
    Ok(table
        .into_iter()
        .filter(|&((p, q), _)| p <= pmax && q <= qmax)
        .collect())
}

/// Leading large-z coefficient A_pq of Φ_pq ≈ A_pq z₁^p z₂^q:
/// A_pq = [(1/2)_p (1/2)_q / (p! q!)] (p+q)! / (3/2)_{p+q}.
pub fn asymptotic_coefficient(p: u32, q: u32) -> Rational {
    let half = rat(1, 2);
    pochhammer(&half, p) * pochhammer(&half, q)
        / Rational::from_integer(factorial(p) * factorial(q))
        * Rational::from_integer(factorial(p + q))
        / pochhammer(&rat(3, 2), p + q)
}

/// Pull a z-basis polynomial back to a homogeneous symmetric (Laurent)
/// polynomial of the given degree in x₁, x₂, x₃, using z₃ = x₁x₂x₃ to
/// restore homogeneity: z₁^a z₂^b ↦ e₁^a e₂^b e₃^{(degree − a − 2b)/3}.
pub fn z_poly_to_x_homogeneous(zp: &MultiPoly, degree: u32) -> Result<MultiPoly> {
    let xvars = var_names("x", 3);
    let e1 = elementary_symmetric(xvars.clone(), 3, 1);
    let e2 = elementary_symmetric(xvars.clone(), 3, 2);
    let mut out = MultiPoly::zero(xvars.clone());
    for (m, c) in zp.terms() {
        let a = m.exponent(0);
        let b = m.exponent(1);
        let deficit = degree as i64 - a - 2 * b;
        if deficit % 3 != 0 {
            return Err(Error::InternalMismatch {
                context: format!(
                    "z-monomial z1^{a} z2^{b} cannot be homogenized to degree {degree}"
                ),
            });
        }
        let k = deficit / 3;
        let term = &e1.pow(a as u32) * &e2.pow(b as u32);
        out = &out + &term.mul_monomial(&Monomial::new(vec![k, k, k]), c);
    }
    Ok(out)
}
