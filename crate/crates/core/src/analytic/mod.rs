//! Closed-form volumes, bounds and special functions.

mod bounds;
mod elliptic;
mod instances;
pub mod minimize;
mod product2q;
pub mod quadrature;

pub use bounds::{
    hoeffding_bound, hoeffding_half_width, projection_bound_2d, projection_bound_conjecture,
    theorem3_bound, BoundReport, FormulaId,
};
pub use elliptic::{elliptic_e, elliptic_k, elliptic_k_minus_e};
pub use instances::{
    bell_projector, named_instances, pauli_block_pair, pauli_block_triple,
    solids_of_revolution, solids_of_revolution_ratios, xx_xy_zz, xx_xy_zz_yz, NamedInstance,
};
pub use product2q::{
    all_volume_product_2q, minimize_ratio_product_2q, minkowski_ellipse_area,
    ratio_product_2q, ratio_product_2q_closed_form, sep_volume_product_2q, ProductAngles,
};
