//! Compiles the book chapters as doc modules so `cargo test` runs every
//! snippet in them.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/basis.md")]
pub mod basis {}
#[doc = include_str!("../../../book/src/memory.md")]
pub mod memory {}
#[doc = include_str!("../../../book/src/channels.md")]
pub mod channels {}
#[doc = include_str!("../../../book/src/evolution.md")]
pub mod evolution {}
#[doc = include_str!("../../../book/src/concurrence.md")]
pub mod concurrence {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
