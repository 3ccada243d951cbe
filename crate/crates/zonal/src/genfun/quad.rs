//! Adaptive Gauss–Kronrod quadrature (7/15 pair) for complex-valued
//! integrands on a real interval.
//!
//! The integrand may fail (branch guards); failures abort the whole
//! integration. Refinement always bisects the segment with the largest
//! error estimate (first such segment on ties), so the node sequence is
//! deterministic.

#![allow(clippy::excessive_precision)]

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Kronrod abscissae for the 15-point rule on [-1, 1] (positive half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Weights of the embedded 7-point Gauss rule (odd Kronrod abscissae).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Weights of the 15-point Kronrod rule.
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Quadrature outcome: value, error estimate, and evaluation count.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureResult {
    pub value: Complex64,
    pub error_estimate: f64,
    pub nodes: u64,
}

impl QuadratureResult {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "value_re": self.value.re,
            "value_im": self.value.im,
            "error": self.error_estimate,
            "nodes": self.nodes,
        })
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut res_g = WG[3] * fc;
    let mut res_k = WGK[7] * fc;
    for j in 0..7 {
        let lo = f(center - half * XGK[j])?;
        let hi = f(center + half * XGK[j])?;
        let pair = lo + hi;
        res_k += WGK[j] * pair;
        if j % 2 == 1 {
            res_g += WG[j / 2] * pair;
        }
    }
    let value = res_k * half;
    let error = ((res_k - res_g) * half).norm();
    Ok((value, error))
}

/// Integrate f over [a, b] to the requested relative tolerance.
pub fn integrate<F>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if rel_tol.is_nan() || rel_tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "relative tolerance must be positive, got {rel_tol}"
        )));
    }
    let (v0, e0) = gk15(&f, a, b)?;
    let mut nodes = 15u64;
    let mut segments = vec![Segment {
        a,
        b,
        value: v0,
        error: e0,
    }];

    loop {
        let total: Complex64 = segments.iter().map(|s| s.value).sum();
        let total_err: f64 = segments.iter().map(|s| s.error).sum();
        let budget = rel_tol * total.norm().max(f64::MIN_POSITIVE);
        if total_err <= budget {
            return Ok(QuadratureResult {
                value: total,
                error_estimate: total_err,
                nodes,
            });
        }
        if segments.len() >= max_segments {
            return Err(Error::ToleranceNotMet {
                error: total_err,
                requested: budget,
            });
        }
        // split the worst segment (first of the maxima)
        let mut worst = 0;
        for (i, s) in segments.iter().enumerate() {
            if s.error > segments[worst].error {
                worst = i;
            }
        }
        let Segment { a: sa, b: sb, .. } = segments[worst];
        let mid = 0.5 * (sa + sb);
        let (lv, le) = gk15(&f, sa, mid)?;
        let (rv, re) = gk15(&f, mid, sb)?;
        nodes += 30;
        segments[worst] = Segment {
            a: sa,
            b: mid,
            value: lv,
            error: le,
        };
        segments.push(Segment {
            a: mid,
            b: sb,
            value: rv,
            error: re,
        });
    }
}
