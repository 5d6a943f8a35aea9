//! Compiles every chapter of the guide as doc tests, so `cargo test`
//! checks each code block against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/covers.md")]
pub mod covers {}
#[doc = include_str!("../../../book/src/optimal.md")]
pub mod optimal {}
#[doc = include_str!("../../../book/src/disjoint.md")]
pub mod disjoint {}
#[doc = include_str!("../../../book/src/simulator.md")]
pub mod simulator {}
#[doc = include_str!("../../../book/src/compilers.md")]
pub mod compilers {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
