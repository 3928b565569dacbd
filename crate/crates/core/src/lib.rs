pub mod error;
pub mod mp;
pub mod specfun;
pub mod arith;
pub mod kernels;
pub mod registry;

pub use error::{Error, Result};
pub use mp::{Complex, PrecisionContext, Rational, Real};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/precision.md")]
    pub mod precision {}
    #[doc = include_str!("../../../book/src/special-functions.md")]
    pub mod special_functions {}
    #[doc = include_str!("../../../book/src/arithmetic.md")]
    pub mod arithmetic {}
    #[doc = include_str!("../../../book/src/kernels.md")]
    pub mod kernels {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
