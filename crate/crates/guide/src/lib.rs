//! The code listings of the book under `book/src`, compiled and run as
//! doctests so the book cannot drift from the library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/induced-paths.md")]
pub mod induced_paths {}

#[doc = include_str!("../../../book/src/connecting-sets.md")]
pub mod connecting_sets {}

#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}

#[doc = include_str!("../../../book/src/two-dcs.md")]
pub mod two_dcs {}

#[doc = include_str!("../../../book/src/oracles.md")]
pub mod oracles {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
