//! Extended-precision special functions.

mod bernoulli;
mod gamma;
mod laguerre;
mod primes;
mod zeta;

pub use bernoulli::{bernoulli_even, MAX_BERNOULLI_INDEX};
pub use gamma::{
    digamma_with_shifts, hurwitz_zeta, hurwitz_zeta_with, polygamma, EulerMaclaurinConfig,
};
pub use laguerre::{
    laguerre_assoc1, laguerre_assoc1_family, laguerre_assoc1_recurrence, laguerre_working_bits,
};
pub use primes::{
    dirichlet_coeff, prime_powers_up_to, von_mangoldt, von_mangoldt_value, DirichletCoefficients,
};
pub use zeta::{
    completed_xi_logderiv, product_logderiv, zeta_logderiv, zeta_logderiv_with, ZetaConfig,
};
