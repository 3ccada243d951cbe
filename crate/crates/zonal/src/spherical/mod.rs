//! Exact construction of the zonal spherical polynomials from closed-form
//! moment coefficients, plus independent brute-force oracles: circle/sphere
//! moments, a Legendre recurrence, and exact Euler-angle integration over
//! SO(3).

mod label;
mod legendre;
mod oracle;
mod series;
mod so3;

pub use label::WeightLabel;
pub use legendre::legendre;
pub use oracle::phi_pq_oracle;
pub use series::{
    compositions, phi_fundamental, phi_n2, series_coefficient, sphere_moment, SeriesTable,
};
pub use so3::so3_moment_oracle;
