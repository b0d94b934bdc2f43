//! Joint and separable numerical ranges of Hermitian observables.
//!
//! The modules build on each other: [`qlinalg`] supplies dense Hermitian
//! algebra, [`rangegeom`] turns support functions into certified polytope
//! sandwiches, [`septools`] optimizes over product states, and [`analytic`]
//! holds closed forms used as references. [`ratio`] and [`confidence`] are
//! the end-to-end pipelines the command line drives.

pub mod analytic;
pub mod confidence;
pub mod error;
pub mod qlinalg;
pub mod rangegeom;
pub mod ratio;
pub mod rng;
pub mod septools;

pub use confidence::{Certificate, ConfidenceRect};
pub use error::{Error, Result};
pub use qlinalg::{CMatrix, DimensionProfile, HermitianMatrix, ObservableSet, ProductState, Spectrum, C64};
pub use rangegeom::{BodyApprox, Direction, RatioBracket, SupportSample, VolumeBracket};
pub use ratio::{volume_ratio, RatioConfig, RatioReport};
pub use septools::{CertifiedBound, SeesawConfig, SepOracle, Sense};
