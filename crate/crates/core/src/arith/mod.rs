//! Sieved arithmetic functions, Dirichlet convolution and Ramanujan sums.

mod conv;
mod sieve;
mod table;

pub use conv::{dirichlet_convolve, ramanujan_sum, ConvolutionPair};
pub use sieve::Sieve;
pub use table::{build_table, divisor_sum, l_value, ArithTable, FunctionId, MAX_TABLE_LEN};
