//! BL∞ structures: operation tables, the gluing engine and the assembled
//! maps built on it.

pub(crate) mod glue;
pub mod linearize;
pub mod morphism;
pub mod pointed;
pub mod structure;
pub mod table;

pub use linearize::{check_linfty, conjugate_table, ell_table, functional, linearize, linearize_pointed, linfty_relation};
pub use morphism::{
    apply_f_eps, apply_hat_phi, check_morphism, compose, f_eps, hat_phi, hat_phi_marked, identity_table, is_augmentation,
    set_partitions, single_letter_part, Augmentation, BLMorphism,
};
pub use pointed::{apply_hat_pointed, check_compatibility, check_pointed, PointedMap};
pub use structure::{
    apply_hat_p, check_on_window, check_square_zero, check_structure, hat, hat_family, hat_ibl, single_cluster_part,
    two_level, two_level_kl, BLAlgebra, CellWitness, EWitness, Status,
};
pub use table::{Completeness, OperationTable};
