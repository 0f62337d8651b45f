//! Finite fields, strength-2 orthogonal arrays, and finite groups: the
//! algebraic machinery behind the array constructions.

pub mod field;
pub mod group;
pub mod oa;

pub use field::FiniteField;
pub use group::{
    build_group, cayley_graph, check_connection_set, ConnectionSet, ConnectionSetReport,
    FiniteGroup, GroupSpec,
};
pub use oa::{bush_oa, bush_parameter, oa_prime_power, prime_power_components, OrthogonalArray};
