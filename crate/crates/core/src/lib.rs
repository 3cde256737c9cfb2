//! Numerical kernels for additive-twist L-functions of a holomorphic cusp
//! form, the modular symbols they encode, Kloosterman sums twisted by those
//! symbols, Eisenstein series formed with modular symbols, and the shifted
//! convolution sums whose analytic continuation these objects provide.
//!
//! Every identity is implemented along (at least) two independent
//! computational routes — direct summation vs. coset sums, closed forms vs.
//! quadrature — so agreement between routes is a meaningful check rather
//! than a tautology. The `esms-cli` crate exposes the routines and the
//! verification suites on the command line.

pub mod chars;
pub mod convolution;
pub mod cuspform;
pub mod eisenstein;
pub mod error;
pub mod lfun;
pub mod numeric;
pub mod policy;
pub mod specfun;

pub use chars::{CharacterLabel, DirichletCharacter};
pub use cuspform::{CuspForm, HalfPlanePoint};
pub use error::{Error, Result};
pub use lfun::{GammaMatrix, SymbolCache};
pub use policy::PrecisionPolicy;

/// Complex number type used throughout.
pub type Complex = num_complex::Complex64;
