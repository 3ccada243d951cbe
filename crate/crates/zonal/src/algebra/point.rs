//! Evaluation points for the spherical functions.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// What the coordinates are claimed to be; torus and positive-real points
/// are validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointKind {
    General,
    /// Every |x_j| = 1.
    Torus,
    /// Every x_j real and > 0.
    PositiveReal,
}

const TORUS_TOL: f64 = 1e-12;
const UNIMODULAR_TOL: f64 = 1e-12;

/// A point (x_1, .., x_N), optionally flagged as lying on the unit torus
/// or the positive reals, and optionally carrying the unimodular
/// constraint x_1...x_N = 1.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalPoint {
    coords: Vec<Complex64>,
    kind: PointKind,
    unimodular: bool,
}

impl EvalPoint {
    pub fn general(coords: Vec<Complex64>) -> Self {
        EvalPoint {
            coords,
            kind: PointKind::General,
            unimodular: false,
        }
    }

    /// Real coordinates, no flags.
    pub fn from_reals(coords: &[f64]) -> Self {
        Self::general(coords.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Positive real coordinates.
    pub fn positive_real(coords: &[f64]) -> Result<Self> {
        if coords.iter().any(|&x| x <= 0.0) {
            return Err(Error::InvalidParameter(
                "positive-real point requires every coordinate > 0".into(),
            ));
        }
        let mut p = Self::from_reals(coords);
        p.kind = PointKind::PositiveReal;
        Ok(p)
    }

    /// Torus point x_j = e^{i theta_j}. Always satisfies |x_j| = 1; the
    /// unimodular flag is set when the angles sum to zero (mod 2pi).
    pub fn from_angles(thetas: &[f64]) -> Self {
        let coords: Vec<Complex64> = thetas
            .iter()
            .map(|&t| Complex64::from_polar(1.0, t))
            .collect();
        let prod: Complex64 = coords.iter().product();
        let unimodular = (prod - Complex64::new(1.0, 0.0)).norm() <= 1e-9;
        EvalPoint {
            coords,
            kind: PointKind::Torus,
            unimodular,
        }
    }

    /// Mark an arbitrary coordinate vector as a torus point, validating
    /// ||x_j| - 1| <= 1e-12.
    pub fn torus(coords: Vec<Complex64>) -> Result<Self> {
        for (i, x) in coords.iter().enumerate() {
            if (x.norm() - 1.0).abs() > TORUS_TOL {
                return Err(Error::ConstraintViolated {
                    context: format!("|x_{}| = {} is not on the unit torus", i + 1, x.norm()),
                });
            }
        }
        let prod: Complex64 = coords.iter().product();
        let unimodular = (prod - Complex64::new(1.0, 0.0)).norm() <= UNIMODULAR_TOL;
        Ok(EvalPoint {
            coords,
            kind: PointKind::Torus,
            unimodular,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn kind(&self) -> PointKind {
        self.kind
    }

    pub fn is_unimodular_flagged(&self) -> bool {
        self.unimodular
    }

    /// Verify x_1...x_N = 1 to 1e-12.
    pub fn check_unimodular(&self) -> Result<()> {
        let prod: Complex64 = self.coords.iter().product();
        let dev = (prod - Complex64::new(1.0, 0.0)).norm();
        if dev > UNIMODULAR_TOL {
            return Err(Error::ConstraintViolated {
                context: format!("x1*..*xN deviates from 1 by {dev:.3e}"),
            });
        }
        Ok(())
    }

    /// Coordinate inverses 1/x_j.
    pub fn inverse_coords(&self) -> Result<Vec<Complex64>> {
        self.coords
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if x.norm() == 0.0 {
                    Err(Error::ZeroCoordinate { index: i })
                } else {
                    Ok(Complex64::new(1.0, 0.0) / x)
                }
            })
            .collect()
    }
}
