pub mod classify;
pub mod construct;
pub mod enumeration;
pub mod error;
pub mod multigraph;
pub mod perm;
pub mod sequence;
