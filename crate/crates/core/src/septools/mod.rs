//! Optimizers specific to separable states: product-state extrema, certified
//! separable support functions, GOE statistics, absolute separability and
//! the PPT test.

mod abssep;
mod certified;
mod goe;
mod oracle;
mod ppt;
mod seesaw;

pub use abssep::{abs_sep_extremum, abs_sep_family, is_absolutely_separable};
pub use certified::{certified_sep_support_2qubit, grid_inradius, CertifiedBound, MIN_GRID};
pub use goe::{goe_ratio_statistic, goe_sample_ratio, GoeSample, GoeStatistic};
pub use oracle::{sep_support_oracle, SepOracle};
pub use ppt::{ppt_check, ppt_min_eigenvalue, PPT_TOL};
pub use seesaw::{seesaw_from, seesaw_product_extremum, SeesawConfig, SeesawResult, Sense};
