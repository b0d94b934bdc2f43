//! Dense complex Hermitian linear algebra and quantum constructors.

mod eigh;
mod matrix;
mod observables;
mod ops;
mod profile;
pub mod random;

pub use eigh::{eig2_max, eig2_min, eigh, lambda_max, lambda_min, Eigh, MAX_DIM};
pub use matrix::{CMatrix, HermitianMatrix, C64, HERMITICITY_TOL};
pub use observables::ObservableSet;
pub use ops::{
    conditional_operator, direct_sum, gellmann_basis, kron, kron_all, normalized,
    partial_contract, partial_transpose, reduce_to_site, scalar, traceless_part,
};
pub use profile::{DimensionProfile, ProductState, Spectrum};
pub use random::{sample_goe, sample_hs_state};

