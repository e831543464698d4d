// mdbook cannot run snippets that depend on an external crate, so each
// chapter is pulled in as the docs of an empty module and `cargo test --doc`
// runs its code blocks against the real library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}
#[doc = include_str!("../../../book/src/sequences.md")]
pub mod sequences {}
#[doc = include_str!("../../../book/src/enumeration.md")]
pub mod enumeration {}
#[doc = include_str!("../../../book/src/perm-completeness.md")]
pub mod perm_completeness {}
#[doc = include_str!("../../../book/src/conjugacy.md")]
pub mod conjugacy {}
#[doc = include_str!("../../../book/src/constructions.md")]
pub mod constructions {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
