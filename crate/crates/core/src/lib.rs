//! Exact outage, diversity and ergodic-capacity analysis of directed acyclic
//! source-terminal networks whose links fail independently (or in
//! correlated blocks), with a Monte Carlo simulator as an independent check.
//!
//! The usual pipeline:
//!
//! ```
//! use netoutage::{Budget, Network};
//! use netoutage::enumerate::enumerate_cutsets;
//! use netoutage::outage::{asymptotic_summary, cut_enumerator, outage_polynomial};
//!
//! // s -> v, then two parallel links v -> t
//! let net = Network::new(3, vec![(0, 1), (1, 2), (1, 2)], 0, 2).unwrap();
//! let cuts = enumerate_cutsets(&net, Budget::default()).unwrap();
//! assert_eq!(outage_polynomial(&cuts).to_string(), "p + p^2 - p^3");
//! let summary = asymptotic_summary(&cut_enumerator(&cuts));
//! assert_eq!((summary.diversity_order, summary.coding_gain), (1, 1));
//! ```

pub mod budget;
pub mod capacity;
pub mod correlated;
pub mod edgeset;
pub mod enumerate;
pub mod error;
pub mod flow;
pub mod io;
pub mod link;
pub mod network;
pub mod outage;
pub mod poly;
pub mod ring;
pub mod sim;

pub use budget::Budget;
pub use edgeset::EdgeSet;
pub use error::{Error, Result};
pub use link::LinkOutageVector;
pub use network::Network;
pub use poly::{Poly, Poly2};
pub use ring::Ring;
