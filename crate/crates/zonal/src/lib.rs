//! Zonal spherical functions on the compact symmetric space SU(N)/SO(N).
//!
//! The crate builds the normalized zonal spherical polynomials Φ exactly
//! (arbitrary-precision rational coefficients), and verifies them three
//! independent ways:
//!
//! * [`spherical`] constructs Φ from closed-form moment coefficients and
//!   provides brute-force oracles (circle/sphere moments, exact Euler-angle
//!   integration over SO(3)).
//! * [`haar`] samples SO(N) under Haar measure and estimates the defining
//!   integral representations Φ_l = ∫ Ξ₁^{l₁}⋯Ξ_{N−1}^{l_{N−1}} dμ by
//!   Monte Carlo, with reproducible seeded substreams.
//! * [`radial`] applies the radial second-order operator exactly to
//!   symmetric (Laurent) polynomials and checks the eigenfunction property.
//! * [`genfun`] evaluates the N=3 generating function through its
//!   one-dimensional integral representation and extracts series
//!   coefficients exactly in the elementary-symmetric basis.
//!
//! Everything symbolic lives on the exact side ([`algebra`]): reduced
//! rationals and sparse multivariate Laurent polynomials with a fixed
//! graded-lexicographic term order, so results are deterministic down to
//! serialization bytes.
//!
//! ```
//! use zonal::algebra::rat;
//! use zonal::radial::{eigencheck, Convention, EigenCheck, OperatorSpec};
//! use zonal::spherical::phi_fundamental;
//!
//! // Φ_(2,0,0) on SU(3)/SO(3): exactly 1 at the identity ...
//! let phi = phi_fundamental(3, 2)?;
//! assert_eq!(phi.eval_all_ones(), rat(1, 1));
//! assert_eq!(phi.coeff_of(&[2, 0, 0]), rat(1, 5));
//!
//! // ... and an exact eigenfunction of the radial operator.
//! let spec = OperatorSpec::new(Convention::JackForm, 3);
//! assert_eq!(eigencheck(&spec, &phi)?, EigenCheck::Eigenvalue(rat(6, 1)));
//! # Ok::<(), zonal::Error>(())
//! ```

pub mod algebra;
pub mod error;
pub mod genfun;
pub mod haar;
pub mod radial;
pub mod spherical;

pub mod acceptance;

pub use error::Error;

/// Default RNG seed for CLI runs and the verification suite.
///
/// Fixed (not wall-clock) so that default runs are reproducible.
pub const DEFAULT_SEED: u64 = 0x00C0_FFEE;
