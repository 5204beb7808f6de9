//! Finite loops, loop folders `(G, H, K)` and the desk-scale permutation
//! group engine behind them.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function over immutable data; file formats, parallel drivers and the
//! command line live in the `loopforge` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod baer;
pub mod bx2p;
pub mod catalog;
pub mod error;
pub mod group;
pub mod loops;
pub mod perm;
pub mod report;
pub mod search;
pub mod twisted;

pub use error::{Error, Result};
pub use group::{ElemSet, FiniteGroup, Generators, PermGroup};
pub use loops::Loop;
pub use perm::Perm;
pub use report::{Flag, LemmaReport, Value, Witness};
pub use baer::{baer_envelope, Folder, FolderClass};
