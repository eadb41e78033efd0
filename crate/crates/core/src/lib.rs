//! Packed words, weak plane posets, and the Hopf algebra of weak plane posets
//! with its picture pairing and its isomorphisms onto the two Hopf structures
//! on WQSym.
//!
//! ```
//! use wpp_core::{dp, pack_poset, PackedWord};
//!
//! let w: PackedWord = "212".parse().unwrap();
//! assert_eq!(pack_poset(&dp(&w)), w);
//! ```

pub mod error;
pub mod fault;
pub mod hopf;
pub mod orders;
pub mod packed_words;
pub mod posets;
pub mod suite;

pub use error::{Error, Result};
pub use fault::Fault;
pub use hopf::{
    counit, delta_wqsym, induced_pairing, matrix_of, pairing, phi, phi_inverse, phi_prime, psi,
    qshuffle, shifted_shuffle, verify_hopf, HopfReport, HopfStructure, Hwpp, IntMatrix,
    ModuleElement, NamedMap, Structure, TensorElement, Via,
};
pub use orders::{
    hasse, inversion_set, leq_lin, lin_extensions, prec, weak_lin_extensions, HasseDiagram,
    OrderKind,
};
pub use packed_words::{enumerate, is_packed, pack, OrderedSetPartition, PackedWord, PackedWords};
pub use posets::{
    canonicalize, check_weak_plane, count_pictures, dp, is_plane, pack_poset, product, DoublePoset,
    PosetJson, Relation, Violation, WeakPlanePoset,
};
pub use suite::{run_suite, SuiteConfig, SuiteReport};
