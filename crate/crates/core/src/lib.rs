//! Exact operator calculus over quadratic extensions of the p-adic numbers.

mod arith;

pub mod abs;
pub mod error;
pub mod hilbert;
pub mod operator;
pub mod padic;
pub mod quadratic;
pub mod sample;
pub mod states;

pub use abs::AbsValue;
pub use error::{Error, Result};
pub use padic::{Branch, PadicContext, PadicNumber, SquareClass};
pub use quadratic::{ExtensionContext, QuadExt};
pub use hilbert::{BasisRotation, PVector};
pub use operator::{BlockOperator, Classification, GeneratorOperator, MatrixOperator, Verdict};
pub use states::{PadicDistribution, Sovm, StatisticalOperator};
