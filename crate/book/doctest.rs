// mdbook cannot test the Rust snippets in the guide, so every chapter is pulled in as
// the docs of an empty module and `cargo test --doc -p singclass-book` runs them.

#[doc = include_str!("src/overview.md")]
pub mod overview {}
#[doc = include_str!("src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("src/local.md")]
pub mod local {}
#[doc = include_str!("src/segre.md")]
pub mod segre {}
#[doc = include_str!("src/limits.md")]
pub mod limits {}
#[doc = include_str!("src/csm.md")]
pub mod csm {}
#[doc = include_str!("src/constructible.md")]
pub mod constructible {}
#[doc = include_str!("src/cli.md")]
pub mod cli {}
