//! Module elements over the packed-word bases, the Hopf structures, the maps
//! between them and the picture pairing.

mod element;
mod maps;
mod matrix;
mod structures;
mod verify;

pub use element::{parse_element, Coeff, ElementJson, ModuleElement, TensorElement, TermJson};
pub use maps::{
    induced_pairing, lin_order_key, matrix_of, matrix_of_with, pairing, phi, phi_inverse,
    phi_prime, phi_prime_inverse, prec_order_key, psi, psi_inverse, NamedMap, Via, MATRIX_LIMIT,
};
pub use matrix::IntMatrix;
pub use structures::{
    counit, delta_wqsym, qshuffle, shifted_shuffle, HopfStructure, Hwpp, QuasiShuffleWqsym,
    ShuffleWqsym, Structure,
};
pub use verify::{verify_hopf, verify_structure, CheckResult, HopfReport, VERIFY_LIMIT};
