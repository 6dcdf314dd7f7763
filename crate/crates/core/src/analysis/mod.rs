//! Optimality windows, communication costs and the number theory behind the
//! cyclic-shift cost formula.

mod cost;
mod number_theory;
mod put;

pub use cost::{
    alpha_resolution_cost, baranyai_min_cost, comm_cost, cyclic_cost_closed_form, cyclic_cost_enumerated,
    mechanism_cost, shared_entropy_bits, stabilizer_count,
};
pub use number_theory::{divisors, mangoldt, mobius, prime_factorize, prime_power_base};
pub use put::{k_opt_set, k_star, put_boundary, PutBoundary};
