//! Haar-measure sampling on SO(N) and Monte Carlo estimation of the
//! integral representations.
//!
//! Sampling: a standard-normal N×N matrix is orthonormalized column by
//! column (modified Gram-Schmidt, which fixes the positive-diagonal sign
//! convention and hence is unbiased on O(N)); the determinant is then
//! forced to +1 by negating the last column, which maps the reflection
//! component measure-preservingly onto SO(N).
//!
//! Reproducibility: the RNG is ChaCha8 (counter-based). A run of `samples`
//! draws is split into fixed-size shards; shard i uses the substream
//! keyed by (seed, stream = i + 1). Shards are reduced in index order, so
//! results are bit-identical for a given seed regardless of thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::algebra::EvalPoint;
use crate::error::{Error, Result};
use crate::spherical::WeightLabel;

/// Guard against integrand poles in the generating-function estimators.
const NEAR_SINGULAR_TOL: f64 = 1e-9;

/// Samples per RNG substream; fixed so the shard layout does not depend
/// on the thread count.
const SHARD_SIZE: u64 = 1 << 14;

/// Euler angles (φ, θ, ψ) with φ, ψ on the full circle and θ polar.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerAngles {
    pub phi: f64,
    pub theta: f64,
    pub psi: f64,
}

impl EulerAngles {
    pub fn new(phi: f64, theta: f64, psi: f64) -> Result<Self> {
        let tau = 2.0 * std::f64::consts::PI;
        if !(0.0..tau).contains(&phi)
            || !(0.0..=std::f64::consts::PI).contains(&theta)
            || !(0.0..tau).contains(&psi)
        {
            return Err(Error::InvalidParameter(format!(
                "Euler angles out of range: ({phi}, {theta}, {psi})"
            )));
        }
        Ok(EulerAngles { phi, theta, psi })
    }
}

/// An element of SO(N) stored as N orthonormal columns; N = 3 frames built
/// from Euler angles remember the triple they came from.
#[derive(Debug, Clone)]
pub struct OrthoFrame {
    /// cols[j] is the column vector k^{(j+1)}.
    cols: Vec<Vec<f64>>,
    euler: Option<EulerAngles>,
}

impl OrthoFrame {
    pub fn n(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.cols[j]
    }

    pub fn euler(&self) -> Option<EulerAngles> {
        self.euler
    }

    /// Max deviation of Gram matrix entries from the identity.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let dot: f64 = (0..n).map(|r| self.cols[i][r] * self.cols[j][r]).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    pub fn det(&self) -> f64 {
        let n = self.n();
        let mut m: Vec<Vec<f64>> = (0..n)
            .map(|r| (0..n).map(|c| self.cols[c][r]).collect())
            .collect();
        det_in_place(&mut m)
    }

    /// Right-multiply the first `k` columns by a k×k matrix (block
    /// rotation); used by the Ξ-invariance tests.
    pub fn rotate_leading_block(&self, rot: &[Vec<f64>]) -> OrthoFrame {
        let k = rot.len();
        let n = self.n();
        assert!(k <= n && rot.iter().all(|row| row.len() == k));
        let mut cols = self.cols.clone();
        for (new_j, col) in cols.iter_mut().enumerate().take(k) {
            for (r, entry) in col.iter_mut().enumerate().take(n) {
                *entry = (0..k)
                    .map(|old_j| self.cols[old_j][r] * rot[old_j][new_j])
                    .sum();
            }
            let _ = new_j;
        }
        OrthoFrame { cols, euler: None }
    }
}

#[allow(clippy::needless_range_loop)]
fn det_in_place(m: &mut [Vec<f64>]) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for k in 0..n {
        // partial pivot
        let mut piv = k;
        for r in k + 1..n {
            if m[r][k].abs() > m[piv][k].abs() {
                piv = r;
            }
        }
        if m[piv][k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= m[k][k];
        for r in k + 1..n {
            let f = m[r][k] / m[k][k];
            for c in k..n {
                m[r][c] -= f * m[k][c];
            }
        }
    }
    det
}

/// Draw one Haar-distributed element of SO(N).
#[allow(clippy::needless_range_loop)]
pub fn sample_haar(n: usize, rng: &mut ChaCha8Rng) -> OrthoFrame {
    assert!(n >= 2, "need N >= 2");
    loop {
        let mut cols: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.sample(StandardNormal)).collect())
            .collect();
        // modified Gram-Schmidt, columns in order
        let mut ok = true;
        for j in 0..n {
            for i in 0..j {
                let dot: f64 = (0..n).map(|r| cols[i][r] * cols[j][r]).sum();
                for r in 0..n {
                    cols[j][r] -= dot * cols[i][r];
                }
            }
            let norm: f64 = (0..n).map(|r| cols[j][r] * cols[j][r]).sum::<f64>().sqrt();
            if norm < 1e-150 {
                ok = false;
                break;
            }
            for r in 0..n {
                cols[j][r] /= norm;
            }
        }
        if !ok {
            continue; // numerically degenerate draw; probability ~0
        }
        let mut frame = OrthoFrame { cols, euler: None };
        if frame.det() < 0.0 {
            for r in 0..n {
                frame.cols[n - 1][r] = -frame.cols[n - 1][r];
            }
        }
        return frame;
    }
}

/// SO(3) frame from Euler angles:
///   n = (cos φ sin θ, sin φ sin θ, cos θ),
///   m = cos ψ a + sin ψ b,  a = (−sin φ, cos φ, 0),
///   b = (−cos φ cos θ, −sin φ cos θ, sin θ),
/// columns ordered (n, m × n, m) so the determinant is +1.
pub fn euler_frame(angles: &EulerAngles) -> OrthoFrame {
    let (sp, cp) = angles.phi.sin_cos();
    let (st, ct) = angles.theta.sin_cos();
    let (ss, cs) = angles.psi.sin_cos();
    let n = [cp * st, sp * st, ct];
    let a = [-sp, cp, 0.0];
    let b = [-cp * ct, -sp * ct, st];
    let m = [
        cs * a[0] + ss * b[0],
        cs * a[1] + ss * b[1],
        cs * a[2] + ss * b[2],
    ];
    let l = [
        m[1] * n[2] - m[2] * n[1],
        m[2] * n[0] - m[0] * n[2],
        m[0] * n[1] - m[1] * n[0],
    ];
    OrthoFrame {
        cols: vec![n.to_vec(), l.to_vec(), m.to_vec()],
        euler: Some(*angles),
    }
}

/// Draw Euler angles with the invariant density sin θ dθ dφ dψ / 8π²:
/// φ, ψ uniform on the circle and cos θ uniform on [−1, 1].
pub fn sample_euler(rng: &mut ChaCha8Rng) -> EulerAngles {
    let tau = 2.0 * std::f64::consts::PI;
    let phi = rng.gen::<f64>() * tau;
    let psi = rng.gen::<f64>() * tau;
    let u: f64 = rng.gen::<f64>() * 2.0 - 1.0;
    EulerAngles {
        phi,
        theta: u.clamp(-1.0, 1.0).acos(),
        psi,
    }
}

/// The polyvector values Ξ_1..Ξ_upto at x:
/// Ξ_j = Σ_{|S|=j} det(K[S, 1..j])² Π_{i∈S} x_i — a squared-Plücker
/// weighted sum over row subsets of the first j columns.
#[derive(Debug, Clone, PartialEq)]
pub struct XiValues {
    values: Vec<Complex64>,
}

impl XiValues {
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, j: usize) -> Complex64 {
        self.values[j]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn xi_values(x: &EvalPoint, frame: &OrthoFrame, upto: usize) -> Result<XiValues> {
    let n = frame.n();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    if upto > n.saturating_sub(1) {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: upto,
        });
    }
    let coords = x.coords();
    let mut values = Vec::with_capacity(upto);
    let mut scratch: Vec<Vec<f64>> = Vec::new();
    for j in 1..=upto {
        let mut acc = Complex64::new(0.0, 0.0);
        for_each_subset(n, j, |subset| {
            // minor of rows `subset`, columns 0..j
            scratch.clear();
            scratch.extend(
                subset
                    .iter()
                    .map(|&r| (0..j).map(|c| frame.cols[c][r]).collect::<Vec<f64>>()),
            );
            let minor = det_in_place(&mut scratch);
            let weight = minor * minor;
            let mut xprod = Complex64::new(1.0, 0.0);
            for &r in subset {
                xprod *= coords[r];
            }
            acc += weight * xprod;
        });
        values.push(acc);
    }
    Ok(XiValues { values })
}

/// Visit all k-subsets of 0..n in lexicographic order.
fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, mut f: F) {
    if k == 0 {
        f(&[]);
        return;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        f(&subset);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if subset[i] < n - (k - i) {
                subset[i] += 1;
                for j in i + 1..k {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A Monte Carlo estimate: complex sample mean, scatter-based standard
/// error (sample standard deviation / √samples), and the provenance
/// needed to reproduce it.
#[derive(Debug, Clone, PartialEq)]
pub struct MCEstimate {
    pub mean: Complex64,
    pub stderr: f64,
    pub samples: u64,
    pub seed: u64,
}

impl MCEstimate {
    /// |mean − expected| ≤ n_sigma · stderr, with a tiny absolute floor so
    /// exactly-constant integrands (stderr = 0 up to roundoff) compare
    /// sanely.
    pub fn agrees_with(&self, expected: Complex64, n_sigma: f64) -> bool {
        (self.mean - expected).norm() <= n_sigma * self.stderr + 1e-12 * (1.0 + expected.norm())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mean_re": self.mean.re,
            "mean_im": self.mean.im,
            "stderr": self.stderr,
            "samples": self.samples,
            "seed": self.seed,
        })
    }
}

struct ShardSums {
    sum: Complex64,
    sum_sq: f64,
    count: u64,
}

/// Sharded, deterministic Monte Carlo driver. The integrand draws whatever
/// it needs from the shard's RNG substream and may fail (e.g. near poles);
/// the first failing shard in index order wins.
fn mc_run<F>(samples: u64, seed: u64, integrand: F) -> Result<MCEstimate>
where
    F: Fn(&mut ChaCha8Rng, u64) -> Result<Complex64> + Sync,
{
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    let shards = samples.div_ceil(SHARD_SIZE);
    let partials: Vec<Result<ShardSums>> = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shard + 1);
            let lo = shard * SHARD_SIZE;
            let hi = ((shard + 1) * SHARD_SIZE).min(samples);
            let mut sums = ShardSums {
                sum: Complex64::new(0.0, 0.0),
                sum_sq: 0.0,
                count: 0,
            };
            for idx in lo..hi {
                let v = integrand(&mut rng, idx)?;
                sums.sum += v;
                sums.sum_sq += v.norm_sqr();
                sums.count += 1;
            }
            Ok(sums)
        })
        .collect();

    let mut sum = Complex64::new(0.0, 0.0);
    let mut sum_sq = 0.0f64;
    let mut count = 0u64;
    for p in partials {
        let p = p?;
        sum += p.sum;
        sum_sq += p.sum_sq;
        count += p.count;
    }
    let nf = count as f64;
    let mean = sum / nf;
    let stderr = if count > 1 {
        let var = ((sum_sq - sum.norm_sqr() / nf) / (nf - 1.0)).max(0.0);
        (var / nf).sqrt()
    } else {
        0.0
    };
    Ok(MCEstimate {
        mean,
        stderr,
        samples: count,
        seed,
    })
}

/// Monte Carlo estimate of Φ_l(x) = ∫ Π_j Ξ_j^{l_j} dμ over Haar SO(N).
pub fn mc_phi(label: &WeightLabel, x: &EvalPoint, samples: u64, seed: u64) -> Result<MCEstimate> {
    let n = label.n();
    if x.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.dim(),
        });
    }
    let parts = label.parts().to_vec();
    let upto = parts
        .iter()
        .rposition(|&l| l > 0)
        .map(|i| i + 1)
        .unwrap_or(0);
    mc_run(samples, seed, move |rng, _| {
        let frame = sample_haar(n, rng);
        let xi = xi_values(x, &frame, upto)?;
        let mut v = Complex64::new(1.0, 0.0);
        for (j, &l) in parts.iter().enumerate().take(upto) {
            if l > 0 {
                v *= xi.get(j).powi(l as i32);
            }
        }
        Ok(v)
    })
}

/// Monte Carlo estimate of the generating function
/// F(x; t) = ∫ Π_j (1 − Ξ_j t_j)^{−1} dμ.
pub fn mc_genfun(x: &EvalPoint, t: &[Complex64], samples: u64, seed: u64) -> Result<MCEstimate> {
    let n = x.dim();
    if t.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            got: t.len(),
        });
    }
    let t = t.to_vec();
    let upto = t
        .iter()
        .rposition(|tj| tj.norm() > 0.0)
        .map(|i| i + 1)
        .unwrap_or(0);
    mc_run(samples, seed, move |rng, idx| {
        let frame = sample_haar(n, rng);
        let xi = xi_values(x, &frame, upto)?;
        let mut v = Complex64::new(1.0, 0.0);
        for (j, tj) in t.iter().enumerate().take(upto) {
            let denom = Complex64::new(1.0, 0.0) - xi.get(j) * tj;
            if denom.norm() < NEAR_SINGULAR_TOL {
                return Err(Error::NearSingularIntegrand {
                    magnitude: denom.norm(),
                    sample: idx,
                });
            }
            v /= denom;
        }
        Ok(v)
    })
}

/// Monte Carlo over the unit sphere (n uniform on S²) of B^{−1} C^{−1/2}:
/// B = 1 − (n₁²x₁ + n₂²x₂ + n₃²x₃) t₁ and the symmetric completion
/// C = Σ_j n_j² Π_{k≠j} (1 − x_k^{−1} t₂).
pub fn mc_bc_sphere(
    x: &EvalPoint,
    t1: Complex64,
    t2: Complex64,
    samples: u64,
    seed: u64,
) -> Result<MCEstimate> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: x.dim(),
        });
    }
    let coords = x.coords().to_vec();
    let inv = x.inverse_coords()?;
    // Π_{k≠j} (1 − x_k^{-1} t₂) for j = 0, 1, 2
    let cfac: Vec<Complex64> = (0..3)
        .map(|j| {
            (0..3)
                .filter(|&k| k != j)
                .map(|k| Complex64::new(1.0, 0.0) - inv[k] * t2)
                .product()
        })
        .collect();
    mc_run(samples, seed, move |rng, idx| {
        let nvec = sample_sphere(rng);
        let sq = [nvec[0] * nvec[0], nvec[1] * nvec[1], nvec[2] * nvec[2]];
        let xi1: Complex64 = (0..3).map(|j| sq[j] * coords[j]).sum();
        let b = Complex64::new(1.0, 0.0) - xi1 * t1;
        let c: Complex64 = (0..3).map(|j| sq[j] * cfac[j]).sum();
        if b.norm() < NEAR_SINGULAR_TOL || c.norm() < NEAR_SINGULAR_TOL {
            return Err(Error::NearSingularIntegrand {
                magnitude: b.norm().min(c.norm()),
                sample: idx,
            });
        }
        Ok(1.0 / (b * c.sqrt()))
    })
}

/// Uniform point on S² from three normals.
pub fn sample_sphere(rng: &mut ChaCha8Rng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if norm > 1e-12 {
            return [v[0] / norm, v[1] / norm, v[2] / norm];
        }
    }
}

/// Mean of k_{11}^power over `samples` Haar draws; used by the moment
/// checks E[k₁₁²] = 1/N and E[k₁₁⁴] = 3/(N(N+2)).
pub fn haar_entry_moment(n: usize, power: u32, samples: u64, seed: u64) -> Result<MCEstimate> {
    mc_run(samples, seed, move |rng, _| {
        let frame = sample_haar(n, rng);
        Ok(Complex64::new(frame.column(0)[0].powi(power as i32), 0.0))
    })
}
