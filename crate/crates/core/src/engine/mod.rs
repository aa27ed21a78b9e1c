//! Chamber-level computations in the flag building of a finite geometry.

pub mod analysis;
pub mod view;

pub use analysis::*;
pub use view::*;
