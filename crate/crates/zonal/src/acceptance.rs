//! The verification suite: every release-gating property of the crate as
//! a runnable criterion with a machine-readable report. The `verify` CLI
//! subcommand and the `acceptance` integration test both run these.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rat_int, to_elementary_basis, EvalPoint, Rational};
use crate::error::Result;
use crate::genfun::{
    asymptotic_coefficient, bc_substitution_check, h_product_in_z, h_sextic_reference, quad_f,
    series_extract_to_order, z_poly_to_x_homogeneous, GenFunParams,
};
use crate::haar::{haar_entry_moment, mc_bc_sphere, mc_genfun, mc_phi};
use crate::radial::{eigencheck, Convention, EigenCheck, OperatorSpec};
use crate::spherical::{
    compositions, legendre, phi_fundamental, phi_n2, phi_pq_oracle, so3_moment_oracle,
    sphere_moment, WeightLabel,
};

/// Outcome of one criterion.
#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "id": self.id,
            "name": self.name,
            "passed": self.passed,
            "detail": self.detail,
        })
    }
}

fn report(id: u32, name: &'static str, body: Result<(bool, String)>) -> CriterionReport {
    match body {
        Ok((passed, detail)) => CriterionReport {
            id,
            name,
            passed,
            detail,
        },
        Err(e) => CriterionReport {
            id,
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

fn torus_point(rng: &mut ChaCha8Rng) -> EvalPoint {
    let t1 = rng.gen::<f64>() * 2.0 - 1.0;
    let t2 = rng.gen::<f64>() * 2.0 - 1.0;
    EvalPoint::from_angles(&[t1 * 2.0, t2 * 2.0, -2.0 * (t1 + t2)])
}

/// 1. Every constructed Φ equals exactly 1 at the all-ones point.
pub fn criterion_1_normalization() -> CriterionReport {
    report(
        1,
        "normalization at the identity",
        (|| {
            let one = rat_int(1);
            let mut checked = 0usize;
            for l in 0..=12u32 {
                if phi_n2(l).eval_all_ones() != one {
                    return Ok((false, format!("phi_n2({l}) != 1")));
                }
                checked += 1;
            }
            for n in 2..=5usize {
                for l in 0..=8u32 {
                    if phi_fundamental(n, l)?.eval_all_ones() != one {
                        return Ok((false, format!("phi_fundamental({n},{l}) != 1")));
                    }
                    checked += 1;
                }
            }
            for p in 0..=4u32 {
                for q in 0..=(4 - p) {
                    if phi_pq_oracle(p, q)?.eval_all_ones() != one {
                        return Ok((false, format!("phi_pq_oracle({p},{q}) != 1")));
                    }
                    checked += 1;
                }
            }
            let three = rat_int(3);
            for ((p, q), phi) in series_extract_to_order(4)? {
                if phi.eval_rational(&[three.clone(), three.clone()])? != one {
                    return Ok((false, format!("series_extract({p},{q}) != 1 at z=(3,3)")));
                }
                checked += 1;
            }
            Ok((
                true,
                format!("{checked} polynomials exactly 1, rational arithmetic"),
            ))
        })(),
    )
}

/// 2. Φ_l on the torus equals the Legendre polynomial to 1e−12.
pub fn criterion_2_legendre_identity() -> CriterionReport {
    report(
        2,
        "N=2 torus restriction is Legendre",
        (|| {
            let mut worst = 0.0f64;
            for l in 0..=12u32 {
                let p = phi_n2(l);
                for k in 0..100 {
                    let theta = std::f64::consts::PI * k as f64 / 99.0;
                    let pt = [
                        Complex64::from_polar(1.0, theta),
                        Complex64::from_polar(1.0, -theta),
                    ];
                    let dev = (p.eval_complex(&pt)? - legendre(l, theta.cos())).norm();
                    worst = worst.max(dev);
                }
            }
            Ok((
                worst <= 1e-12,
                format!("max |Phi_l - P_l| = {worst:.3e} (bound 1e-12)"),
            ))
        })(),
    )
}

/// 3. Sphere moments equal the Euler-angle oracle exactly; Haar sampler
///    matrix-entry moments match within 5σ at 10⁶ samples.
pub fn criterion_3_moment_oracles(seed: u64) -> CriterionReport {
    report(
        3,
        "moment oracle agreement",
        (|| {
            for total in 0..=4u32 {
                for k in compositions(total, 3) {
                    let lhs = sphere_moment(3, &k);
                    let rhs = so3_moment_oracle([2 * k[0], 2 * k[1], 2 * k[2]], [0, 0, 0]);
                    if lhs != rhs {
                        return Ok((false, format!("sphere vs so3 mismatch at k = {k:?}")));
                    }
                }
            }
            let mut details = Vec::new();
            for (i, n) in [2usize, 3, 4].into_iter().enumerate() {
                let second = haar_entry_moment(n, 2, 1_000_000, seed + 2 * i as u64)?;
                let target = Complex64::new(1.0 / n as f64, 0.0);
                if !second.agrees_with(target, 5.0) {
                    return Ok((false, format!("E[k11^2] off at N = {n}: {}", second.mean)));
                }
                let fourth = haar_entry_moment(n, 4, 1_000_000, seed + 2 * i as u64 + 1)?;
                let target = Complex64::new(3.0 / (n as f64 * (n as f64 + 2.0)), 0.0);
                if !fourth.agrees_with(target, 5.0) {
                    return Ok((false, format!("E[k11^4] off at N = {n}: {}", fourth.mean)));
                }
                details.push(format!(
                    "N={n}: {:.6}/{:.6}",
                    second.mean.re, fourth.mean.re
                ));
            }
            Ok((
                true,
                format!(
                    "35 exact moment identities; sampler moments {}",
                    details.join(", ")
                ),
            ))
        })(),
    )
}

/// 4. Monte Carlo integral representation matches the exact polynomials
///    within 5σ at 10⁶ samples, p + q ≤ 3, 5 random torus points each.
pub fn criterion_4_integral_representation(seed: u64) -> CriterionReport {
    report(
        4,
        "Haar MC matches exact polynomials",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
            let mut worst_pull = 0.0f64;
            let mut run = 0u64;
            for p in 0..=3u32 {
                for q in 0..=(3 - p) {
                    let exact_poly = phi_pq_oracle(p, q)?;
                    let label = WeightLabel::pq(p, q);
                    for _ in 0..5 {
                        let x = torus_point(&mut rng);
                        let exact = exact_poly.eval_point(&x)?;
                        let est = mc_phi(&label, &x, 1_000_000, seed + 1000 + run)?;
                        run += 1;
                        if !est.agrees_with(exact, 5.0) {
                            return Ok((
                                false,
                                format!(
                                    "({p},{q}): |{} - {exact}| > 5 x {:.3e}",
                                    est.mean, est.stderr
                                ),
                            ));
                        }
                        if est.stderr > 0.0 {
                            worst_pull = worst_pull.max((est.mean - exact).norm() / est.stderr);
                        }
                    }
                }
            }
            Ok((
                true,
                format!("50 runs x 1e6 samples; worst pull {worst_pull:.2} sigma"),
            ))
        })(),
    )
}

/// 5. The sextic form of H equals the product form exactly as polynomials.
pub fn criterion_5_h_identity() -> CriterionReport {
    report(
        5,
        "symbolic H identity",
        (|| {
            let lhs = h_product_in_z()?;
            let rhs = h_sextic_reference();
            if lhs == rhs {
                Ok((true, format!("{} terms agree exactly", rhs.num_terms())))
            } else {
                Ok((false, "product and sextic forms differ".into()))
            }
        })(),
    )
}

/// 6. quad_F at the identity equals 1/((1−t₁)(1−t₂)) to 1e−9 on the grid.
pub fn criterion_6_identity_grid() -> CriterionReport {
    report(
        6,
        "generating identity at the identity point",
        (|| {
            let x = EvalPoint::from_reals(&[1.0, 1.0, 1.0]);
            let mut worst = 0.0f64;
            for i in 1..=5 {
                for j in 1..=5 {
                    let t1 = i as f64 / 10.0;
                    let t2 = j as f64 / 10.0;
                    let r = quad_f(&x, &GenFunParams::real(t1, t2)?, 1e-11)?;
                    let exact = 1.0 / ((1.0 - t1) * (1.0 - t2));
                    worst = worst.max((r.value - exact).norm());
                }
            }
            Ok((
                worst <= 1e-9,
                format!("max deviation {worst:.3e} over 25 grid points"),
            ))
        })(),
    )
}

/// 7. The sphere-form Monte Carlo (with the symmetric completion of C)
///    agrees with quad_F within 5σ at 10⁶ samples.
pub fn criterion_7_bc_completion(seed: u64) -> CriterionReport {
    report(
        7,
        "B/C sphere route matches quad_F",
        (|| {
            let configs: [(EvalPoint, f64, f64); 5] = [
                (EvalPoint::from_reals(&[2.0, 0.5, 1.0]), 0.1, 0.2),
                (EvalPoint::from_reals(&[1.5, 0.8, 1.0 / 1.2]), 0.2, 0.1),
                (EvalPoint::from_angles(&[0.7, -0.3, -0.4]), 0.15, 0.15),
                (EvalPoint::from_angles(&[1.0, 0.2, -1.2]), 0.05, 0.25),
                (EvalPoint::from_angles(&[0.3, 0.3, -0.6]), 0.25, 0.05),
            ];
            let mut worst_pull = 0.0f64;
            for (i, (x, t1, t2)) in configs.iter().enumerate() {
                let r = quad_f(x, &GenFunParams::real(*t1, *t2)?, 1e-11)?;
                let est = mc_bc_sphere(
                    x,
                    Complex64::new(*t1, 0.0),
                    Complex64::new(*t2, 0.0),
                    1_000_000,
                    seed + 77 + i as u64,
                )?;
                if !est.agrees_with(r.value, 5.0) {
                    return Ok((
                        false,
                        format!(
                            "config {i}: |{} - {}| > 5 x {:.3e}",
                            est.mean, r.value, est.stderr
                        ),
                    ));
                }
                if est.stderr > 0.0 {
                    worst_pull = worst_pull.max((est.mean - r.value).norm() / est.stderr);
                }
            }
            Ok((
                true,
                format!("5 configs x 1e6 samples; worst pull {worst_pull:.2} sigma"),
            ))
        })(),
    )
}

/// 8. Exact series extraction equals the Euler-angle oracle (p + q ≤ 3)
///    and the fundamental series ((p, 0), p ≤ 6), in the z-basis with
///    z₃ = 1.
pub fn criterion_8_series_extraction() -> CriterionReport {
    report(
        8,
        "exact series extraction",
        (|| {
            let table = series_extract_to_order(6)?;
            for p in 0..=3u32 {
                for q in 0..=(3 - p) {
                    let oracle_z = to_elementary_basis(&phi_pq_oracle(p, q)?, 3, true)?;
                    if table[&(p, q)] != oracle_z {
                        return Ok((false, format!("mismatch vs oracle at ({p},{q})")));
                    }
                }
            }
            for p in 0..=6u32 {
                let fund_z = to_elementary_basis(&phi_fundamental(3, p)?, 3, true)?;
                if table[&(p, 0)] != fund_z {
                    return Ok((false, format!("mismatch vs fundamental at ({p},0)")));
                }
            }
            Ok((
                true,
                "10 oracle entries + 7 fundamental entries, exact".into(),
            ))
        })(),
    )
}

/// 9. The top z₁^p z₂^q coefficient equals the asymptotic law A_pq.
pub fn criterion_9_asymptotics() -> CriterionReport {
    report(
        9,
        "large-z asymptotic coefficients",
        (|| {
            let table = series_extract_to_order(4)?;
            for ((p, q), phi) in &table {
                let top = phi.coeff_of(&[*p as i64, *q as i64]);
                if top != asymptotic_coefficient(*p, *q) {
                    return Ok((false, format!("A_pq mismatch at ({p},{q})")));
                }
            }
            Ok((true, "15 top coefficients exact".into()))
        })(),
    )
}

/// 10. Every Φ from criterion 1 is a Jack-form eigenfunction with zero
///     residual and a rational eigenvalue; the PaperLiteral convention's
///     nonzero residual at N = 2, l = 1 is reproduced.
pub fn criterion_10_eigenfunctions() -> CriterionReport {
    report(
        10,
        "radial eigenfunction property",
        (|| {
            let mut checked = 0usize;
            let run = |n: usize, phi: &crate::algebra::MultiPoly| -> Result<Option<Rational>> {
                let spec = OperatorSpec::new(Convention::JackForm, n);
                Ok(match eigencheck(&spec, phi)? {
                    EigenCheck::Eigenvalue(ev) => Some(ev),
                    EigenCheck::Failure { .. } => None,
                })
            };
            for l in 0..=12u32 {
                if run(2, &phi_n2(l))?.is_none() {
                    return Ok((false, format!("phi_n2({l}) not an eigenfunction")));
                }
                checked += 1;
            }
            for n in 2..=5usize {
                for l in 0..=8u32 {
                    if run(n, &phi_fundamental(n, l)?)?.is_none() {
                        return Ok((false, format!("phi_fundamental({n},{l}) failed")));
                    }
                    checked += 1;
                }
            }
            for p in 0..=4u32 {
                for q in 0..=(4 - p) {
                    if run(3, &phi_pq_oracle(p, q)?)?.is_none() {
                        return Ok((false, format!("phi_pq_oracle({p},{q}) failed")));
                    }
                    checked += 1;
                }
            }
            for ((p, q), zphi) in series_extract_to_order(4)? {
                let phi = z_poly_to_x_homogeneous(&zphi, p + 2 * q)?;
                if run(3, &phi)?.is_none() {
                    return Ok((false, format!("series_extract({p},{q}) failed")));
                }
                checked += 1;
            }
            // PaperLiteral discrepancy must reproduce
            let spec = OperatorSpec::new(Convention::PaperLiteral, 2);
            match eigencheck(&spec, &phi_n2(1))? {
            EigenCheck::Failure { residual } if !residual.is_zero() => Ok((true, format!(
                "{checked} eigenfunctions, zero residual; PaperLiteral(N=2,l=1) residual = {residual}"
            ))),
            other => Ok((false, format!(
                "PaperLiteral(N=2,l=1) unexpectedly gave {other:?}"
            ))),
        }
        })(),
    )
}

/// 11. The ξ-substitution formula holds to 1e−10 for 20 random (B, C).
pub fn criterion_11_bc_substitution(seed: u64) -> CriterionReport {
    report(
        11,
        "xi-substitution formula",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
            for i in 0..20 {
                let b = 0.1 + 9.9 * rng.gen::<f64>();
                let c = 0.1 + 9.9 * rng.gen::<f64>();
                if !bc_substitution_check(b, c, 1e-10)? {
                    return Ok((false, format!("case {i}: B = {b:.4}, C = {c:.4}")));
                }
            }
            Ok((true, "20 random (B, C) in (0.1, 10)^2 at 1e-10".into()))
        })(),
    )
}

/// 12. Determinism: every seeded numeric source serializes to identical
///     bytes when re-run with the same seed.
pub fn criterion_12_determinism(seed: u64) -> CriterionReport {
    report(
        12,
        "byte-identical reruns",
        (|| {
            let snapshot = |s: u64| -> Result<String> {
                let x = EvalPoint::from_angles(&[0.4, 0.1, -0.5]);
                let mut parts = Vec::new();
                parts.push(
                    mc_phi(&WeightLabel::pq(2, 1), &x, 200_000, s)?
                        .to_json()
                        .to_string(),
                );
                let t = [Complex64::new(0.2, 0.0), Complex64::new(0.1, 0.0)];
                parts.push(mc_genfun(&x, &t, 200_000, s)?.to_json().to_string());
                parts.push(
                    mc_bc_sphere(&x, t[0], t[1], 200_000, s)?
                        .to_json()
                        .to_string(),
                );
                parts.push(haar_entry_moment(3, 2, 200_000, s)?.to_json().to_string());
                parts.push(
                    quad_f(&x, &GenFunParams::real(0.2, 0.1)?, 1e-11)?
                        .to_json()
                        .to_string(),
                );
                Ok(parts.join("\n"))
            };
            let a = snapshot(seed)?;
            let b = snapshot(seed)?;
            Ok((
                a == b,
                format!(
                    "{} bytes of seeded MC/quadrature output {}",
                    a.len(),
                    if a == b {
                        "identical across reruns"
                    } else {
                        "DIFFER"
                    }
                ),
            ))
        })(),
    )
}

/// All criterion ids, in order.
pub const CRITERIA: [u32; 12] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12];

/// Run a single criterion by id.
pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1_normalization(),
        2 => criterion_2_legendre_identity(),
        3 => criterion_3_moment_oracles(seed),
        4 => criterion_4_integral_representation(seed),
        5 => criterion_5_h_identity(),
        6 => criterion_6_identity_grid(),
        7 => criterion_7_bc_completion(seed),
        8 => criterion_8_series_extraction(),
        9 => criterion_9_asymptotics(),
        10 => criterion_10_eigenfunctions(),
        11 => criterion_11_bc_substitution(seed),
        12 => criterion_12_determinism(seed),
        _ => return None,
    })
}

/// Run the full suite with one base seed.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter_map(|&id| run_criterion(id, seed))
        .collect()
}

/// The whole suite as one JSON document.
pub fn run_all_json(seed: u64) -> serde_json::Value {
    let reports = run_all(seed);
    let all_passed = reports.iter().all(|r| r.passed);
    serde_json::json!({
        "seed": seed,
        "all_passed": all_passed,
        "criteria": reports.iter().map(CriterionReport::to_json).collect::<Vec<_>>(),
    })
}
