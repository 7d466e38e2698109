//! Exact intersection numbers `a_g`, `d_g` of the minimal stratum `H(2g-2)`
//! of abelian differentials, the Masur-Veech volumes and area Siegel-Veech
//! constants they determine, and symbolic large-genus expansions of both.
//!
//! Everything above the [`bigfloat`] layer is exact: rationals, polynomials
//! and rational functions in `g`, and Laurent polynomials in `pi^2`.
//!
//! The `parallel` feature (on by default) fans independent work out over
//! rayon. Results are bit-identical with and without it; see [`exec`].

pub mod asymp;
pub mod asymptotics;
pub mod bigfloat;
pub mod error;
pub mod exact;
pub mod exec;
pub mod invariants;
pub mod pi_laurent;
pub mod poly;
pub mod recursion;
pub mod ring;
pub mod series;

pub use asymp::AsympExpansion;
pub use bigfloat::BigFloat;
pub use error::{Error, Result};
pub use exact::Rational;
pub use pi_laurent::PiLaurent;
pub use poly::{GPoly, GRatFunc};
pub use ring::{ExactRing, IntDivisible};
pub use series::EvenSeries;
