use std::str::FromStr;

use numrange::analytic::bell_projector;
use numrange::qlinalg::random::simulate_shots;
use numrange::rng::task_rng;
use numrange::{HermitianMatrix, ObservableSet};

use crate::error::{CliError, CliResult};
use crate::io::write_shots;
use crate::report::Meta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum StateName {
    /// (|00⟩ + |11⟩)/√2.
    PhiPlus,
    /// Maximally mixed state.
    Mixed,
    /// |0…0⟩.
    Zero,
}

impl FromStr for StateName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

/// `p·ψ + (1 − p)·𝟙/D` for the named pure state ψ (the mixed state ignores p).
pub fn state_matrix(name: StateName, dim: usize, visibility: f64) -> CliResult<HermitianMatrix> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(CliError::Unsupported(format!("visibility {visibility} outside [0, 1]")));
    }
    let noise = HermitianMatrix::identity(dim).scale(1.0 / dim as f64);
    let pure = match name {
        StateName::Mixed => return Ok(noise),
        StateName::PhiPlus if dim == 4 => bell_projector(),
        StateName::PhiPlus => return Err(CliError::Unsupported("phi-plus is a two-qubit state".into())),
        StateName::Zero => {
            let mut v = vec![numrange::C64::new(0.0, 0.0); dim];
            v[0] = numrange::C64::new(1.0, 0.0);
            HermitianMatrix::projector(&v)
        }
    };
    Ok(pure.scale(visibility).add(&noise.scale(1.0 - visibility)))
}

/// Per-shot outcomes for every observable; column j uses its own stream.
pub fn simulate_columns(obs: &ObservableSet, rho: &HermitianMatrix, shots: usize, seed: u64) -> CliResult<Vec<Vec<f64>>> {
    if shots == 0 {
        return Err(CliError::Unsupported("need at least one shot".into()));
    }
    obs.observables()
        .iter()
        .enumerate()
        .map(|(j, a)| Ok(simulate_shots(a, rho, shots, &mut task_rng(seed, j as u64))?))
        .collect()
}

pub fn cmd_simulate(obs: &ObservableSet, state: StateName, visibility: f64, shots: usize, seed: u64) -> CliResult<String> {
    let rho = state_matrix(state, obs.profile().total_dim(), visibility)?;
    let cols = simulate_columns(obs, &rho, shots, seed)?;
    let meta = Meta::new("simulate", seed)
        .with("state", format!("{state:?}"))
        .with("visibility", visibility)
        .with("shots", shots);
    Ok(meta.csv_preamble() + &write_shots(&cols)?)
}
