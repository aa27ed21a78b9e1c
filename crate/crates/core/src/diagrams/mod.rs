//! Admissible opposition diagrams `(Γ, J, π)`: the axiom recursion, the
//! enumerator, the closed-form tables and the displacement formula.

pub mod admissible;
pub mod report;
pub mod tables;

pub use admissible::{
    displacement, enumerate_admissible, expand_under_automorphisms, residue_automorphism, twisted_opposition,
    Admissibility, OppositionDiagram, StablePartition,
};
pub use report::{render_circled, DiagramRecord};
pub use tables::{
    check_case, class_representative, expanded_families, table_cases, table_families, verify_tables, PiClass,
    TableCheck, TableReport,
};
