//! Exact quantum Chevalley expansions over minuscule parabolic quotients,
//! computed two independent ways (closed formula vs. label-increasing path
//! enumeration in the quantum Bruhat graph) and cross-checked.

pub mod characters;
pub mod chevalley;
pub mod error;
pub mod qbg;
pub mod qls;
pub mod reflection_order;
pub mod root_system;
pub mod weyl;

pub use error::{Error, Result};
