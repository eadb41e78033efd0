//! Deliberate corruptions of the poset kernels.
//!
//! The verification suite runs with an optional [`Fault`] so that it can show it
//! actually detects broken product, coproduct and pairing code. Nothing outside
//! the suite and its tests should pass a fault.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Fault {
    /// The product relates every element of the right factor below the left
    /// factor for `<=_2`, instead of the left below the right.
    ProductCrossRelation,
    /// Open sets are taken down-closed for `<=_1` instead of up-closed.
    OpenSetPredicate,
    /// Pictures only check the first of their two conditions.
    PictureCondition,
}

impl Fault {
    pub const ALL: [Fault; 3] = [
        Fault::ProductCrossRelation,
        Fault::OpenSetPredicate,
        Fault::PictureCondition,
    ];
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fault::ProductCrossRelation => "product cross-relation",
            Fault::OpenSetPredicate => "open-set predicate",
            Fault::PictureCondition => "picture condition",
        })
    }
}
