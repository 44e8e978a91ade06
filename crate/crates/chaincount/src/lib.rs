//! Exact counting of independent sets and cliques — all of them, the
//! maximal ones, or those of a given size — in cocomparability,
//! comparability, and permutation graphs.
//!
//! The trick making these counts cheap is order-theoretic. A cocomparability
//! graph is the incomparability graph of a partial order: vertices are
//! adjacent exactly when neither precedes the other. Independent sets are
//! then precisely the chains of the order, maximal independent sets are the
//! chains that climb the cover relation step by step, and both families can
//! be counted by a single sweep along a linear extension. With the
//! prefix-sum formulation the sweep spends `O(n + m*)` arithmetic
//! operations, where `m*` is the smaller of the edge and non-edge counts.
//! Cliques in comparability graphs are the same problem in disguise, and
//! permutation graphs support both counts at once.
//!
//! Inputs are partial orders (any generating DAG; the closure is taken) or
//! permutations. Recognizing these graph classes from bare adjacency is a
//! separate problem this crate does not solve.
//!
//! ```
//! use chaincount::{count_is, count_maximal_is, CountMode, Poset};
//!
//! // The order a ≺ c, a ≺ d, b ≺ d on four elements: its incomparability
//! // graph is the path a–b–c–d.
//! let p = Poset::from_arcs(4, &[(0, 2), (0, 3), (1, 3)])?;
//! let le = p.linear_extension();
//!
//! let all = count_is(&p, &le, CountMode::Exact)?;
//! assert_eq!(all.to_string(), "8");
//!
//! let maximal = count_maximal_is(&p.cover_relation(), &le, CountMode::Exact)?;
//! assert_eq!(maximal.to_string(), "3");
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The [`oracle`] module carries brute-force enumeration and seeded
//! generators used to cross-check the engine; [`textio`] defines the
//! plain-text instance formats shared with the command-line tool;
//! [`mod@bench`] holds the scaling harness.

pub mod bench;
pub mod count;
pub mod graph;
pub mod oracle;
pub mod poset;
pub mod textio;

pub use count::{
    count_cliques, count_is, count_is_by_size, count_is_fast, count_is_fast_table,
    count_is_ordered, count_is_ordered_table, count_is_table, count_maximal_is,
    count_maximal_is_by_size, count_maximal_is_table, count_variant, permutation_counts, Count,
    CountError, CountMode, CountResult, CountTable, SetClass, SizeProfile, Variant,
};
pub use graph::{validate_orientation, Graph, GraphError, PermutationModel};
pub use poset::{ChainVerdict, ExtendedPoset, LinearExtension, Poset, PosetError};
