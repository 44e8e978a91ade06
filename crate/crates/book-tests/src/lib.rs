//! mdBook cannot run chapter snippets against crate dependencies, so this
//! shim includes every chapter as a doc comment and lets `cargo test --doc`
//! do the work. One module per chapter keeps failures attributable.
//!
//! Nothing here is an API; the crate exists for its doctests.

#[doc = include_str!("../../../README.md")]
pub mod readme {}

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/posets.md")]
pub mod posets {}

#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}

#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}

#[doc = include_str!("../../../book/src/maximal.md")]
pub mod maximal {}

#[doc = include_str!("../../../book/src/profiles.md")]
pub mod profiles {}

#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/testing.md")]
pub mod testing {}
