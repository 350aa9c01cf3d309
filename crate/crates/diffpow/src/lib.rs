//! Exact-arithmetic toolkit for differential and symbolic powers on graded
//! polynomial rings and their direct summands, with machine verification of
//! uniform Chevalley containments Q^(nD) <= m^n on concrete families.
//!
//! The layers, bottom up:
//! - [`poly`]: sparse multivariate polynomials over ZZ and F_p with weighted
//!   gradings, plus a small expression [`parse`]r;
//! - [`groebner`]: membership oracles (Buchberger over F_p, strong bases
//!   over ZZ), elimination, saturation, and a Hermite-normal-form
//!   cross-check;
//! - [`diffops`] and [`pderiv`]: divided-power operators, the p-derivation
//!   delta, and the differential/mixed power membership tests;
//! - [`summand`]: Veronese/Segre/monomial/invariant subrings with their
//!   splittings, presentations, and the summand differential power;
//! - [`symbolic`]: symbolic powers via saturation or closed forms;
//! - [`chevalley`]: the verification driver that replays the containment
//!   theorems on finite instances and emits structured reports;
//! - [`config`]: the batch-job schema consumed by the CLI.

pub mod chevalley;
pub mod config;
pub mod diffops;
pub mod error;
pub mod groebner;
pub mod monomial;
pub mod parse;
pub mod pderiv;
pub mod poly;
pub mod ring;
pub mod summand;
pub mod symbolic;

pub use error::{Error, Result};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use ring::{CoeffDomain, Ring, RingDescriptor};
