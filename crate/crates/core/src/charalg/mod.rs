//! Characters, tensor products and invariant dimensions of irreducible
//! modules of the classical groups.

mod character;
mod sympower;
mod tensor;

pub use character::{
    character_int, dominant_character, dominant_weights_below, orbit_size, weyl_dim, weyl_dim_int, IrrDecomposition, WeightCharacter, Wt,
    DEFAULT_CHARACTER_CAP,
};
pub use sympower::{symmetric_power_characters, SymmetricPowers, symmetric_power_invariant_dim, trivial_multiplicity};
pub use tensor::{
    decompose_character, invariant_dim_tensor_power, invariant_dim_tensor_power_int, invariant_dim_tensor_power_naive, multiply, tensor_decompose,
    tensor_decompose_int,
};
