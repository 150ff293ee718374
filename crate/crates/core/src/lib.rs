//! Enumeration of minimal connecting sets and induced paths, and an exact
//! solver for 2-Disjoint Connected Subgraphs built on top of them.
//!
//! A set `S ⊇ T` is *T-connecting* when `G[S]` is connected, and *minimal*
//! when no proper subset containing `T` is connected. For `|T| <= n/3` the
//! minimal sets are listed by a branching procedure whose inner step is an
//! induced path enumerator with polynomial delay.
//!
//! ```
//! use minconn::connecting::{enumerate_minimal_connecting, ConnectingOptions};
//! use minconn::graph::Graph;
//! use minconn::sink::Collect;
//!
//! // The 4-cycle 0-1-2-3-0 with terminals 0 and 2.
//! let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])?;
//! let t = g.set([0, 2])?;
//! let mut sets = Collect::default();
//! enumerate_minimal_connecting(&g, &t, &ConnectingOptions::default(), &mut sets)?;
//! let found: Vec<Vec<usize>> = sets.0.iter().map(|s| s.to_vec()).collect();
//! assert_eq!(found, vec![vec![0, 1, 2], vec![0, 2, 3]]);
//! # Ok::<(), minconn::error::Error>(())
//! ```

pub mod bench;
pub mod connecting;
pub mod dcs;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod paths;
pub mod set;
pub mod sink;

pub use error::{Error, Result};
pub use graph::Graph;
pub use set::VertexSet;
