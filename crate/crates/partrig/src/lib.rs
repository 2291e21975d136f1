//! Generalized trigonometric functions defined by the curve
//! `C^p + S^q = 1` with an area-based argument, their parabolic special
//! case (`p = 2, q = 1`), a quintic special case (`p = 4, q = 1`), and a
//! variable-coefficient oscillator whose solutions these functions
//! normalize.
//!
//! The crate deliberately ships several independent evaluation routes for
//! the same quantities (closed forms, a hyperbolic rewrite, truncated
//! series, an area/root-solve route, and direct ODE integration) so they
//! can be cross-checked against each other at runtime.

pub mod error;
pub mod gentrig;
pub mod numerics;
pub mod oscillator;
pub mod parabolic;
pub mod quintic;

pub use error::{Error, Result};
pub use gentrig::{Params, TrigValue};
pub use numerics::Tolerances;
