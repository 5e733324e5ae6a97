//! Exact rational and polynomial arithmetic.

pub mod poly;
pub mod rat;
pub mod sturm;
pub mod summation;

pub use poly::Poly;
pub use rat::{parse_rat, rat, to_pq, Rat};
pub use sturm::{sign_on_interval, IntervalSign, RootWitness, SignVerdict};
pub use summation::{bernoulli_beta, euler_maclaurin_sum};
