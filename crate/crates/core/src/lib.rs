//! Exact and certified evaluation of the totient floor-sum
//!
//! ```text
//! S_{j,k}(x) = Σ_{n≤x} φ([x/n]^j) / [x/n]^k
//! ```
//!
//! together with the arithmetic tables, summatory functions, analytic main
//! terms and verification suites needed to study its asymptotics.
//!
//! Only the reduced exponent `c = j − k` matters: every evaluator sums the
//! reduced summand `φ(m)·m^{c−1}` over the floor-division blocks of `x`.
//! For non-integer `j` this reduced form is the definition of the sum.

pub mod analytic;
mod error;
pub mod floorsum;
mod limits;
pub mod numeric;
pub mod sieve;
pub mod summatory;
pub mod verify;

pub use error::{Error, Result};
pub use floorsum::{
    floor_blocks, s_block, s_hybrid, s_naive, sum_of_floor_powers, CertifiedValue, FloorBlock,
    FloorSum, Mode, SumParams, Value,
};
pub use limits::Limits;
