//! Compiles the guide's code snippets as doc-tests so the book in `book/`
//! cannot drift away from the `tcsim` API. One module per chapter keeps
//! failures attributable.
//!
//! Run with `cargo test -p tcsim-book --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/model.md")]
pub mod model {}

#[doc = include_str!("../../../book/src/evolution.md")]
pub mod evolution {}

#[doc = include_str!("../../../book/src/concurrence.md")]
pub mod concurrence {}

#[doc = include_str!("../../../book/src/oscillator.md")]
pub mod oscillator {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
