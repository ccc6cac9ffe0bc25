pub mod engine;
pub mod error;
pub mod laurent;
pub mod mpl;
pub mod numerics;
pub mod omega;
pub mod par;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use laurent::{LaurentMatrix2, LaurentPoly, Part};
pub use numerics::{Angle, BigComplex, PrecisionConfig};
pub use omega::{Endpoint, OmegaTable};
pub use par::Parallelism;
pub use words::{LinComb, MplLetter, Word};
pub use engine::{DerivativeState, Expansion, ExpansionResult, FrameDerivatives, OrderDiagnostics};
