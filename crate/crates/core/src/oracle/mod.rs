//! Brute-force group oracle: signed-permutation realizations of the type-B
//! and type-D Coxeter groups, Cayley-graph lengths and descents, minimal
//! coset representatives, and Solomon's structure-constant products.

mod perm;
mod solomon;
mod table;

pub use perm::{generators, GroupKind, SignedPermutation};
pub use solomon::{
    augmentation_b, augmentation_d, convolve, decompose_to_x_basis, oracle_multiply,
    oracle_multiply_b, solomon_constant, solomon_row, x_vector, GroupAlgebraVector,
    OracleStrategy,
};
pub use table::GroupTable;
