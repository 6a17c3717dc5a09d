//! The guide lives in `book/src`. mdbook cannot resolve crate dependencies
//! when testing listings, so each chapter is included here as the docs of
//! an empty module and `cargo test --doc -p fpm-book` runs its code blocks.
//! A failing doctest names the module, which names the chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}
#[doc = include_str!("../../../book/src/bounds.md")]
pub mod bounds {}
#[doc = include_str!("../../../book/src/machines.md")]
pub mod machines {}
#[doc = include_str!("../../../book/src/padding.md")]
pub mod padding {}
#[doc = include_str!("../../../book/src/evaluator.md")]
pub mod evaluator {}
#[doc = include_str!("../../../book/src/rim.md")]
pub mod rim {}
#[doc = include_str!("../../../book/src/circuits.md")]
pub mod circuits {}
#[doc = include_str!("../../../book/src/inversion.md")]
pub mod inversion {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
