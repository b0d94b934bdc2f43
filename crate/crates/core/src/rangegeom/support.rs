use serde::Serialize;

use super::direction::Direction;
use crate::error::Result;
use crate::qlinalg::{eigh, ObservableSet, ProductState, C64};

/// The state that realizes a support point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Achiever {
    Eigenvector(Vec<C64>),
    Product(ProductState),
}

/// One evaluation of a support function `h(u) = max_{x ∈ body} u·x`.
///
/// `support_point` is always a member of the body (it is the expectation
/// vector of `achiever`). `support_value` is an upper bound on `h(u)` when
/// `certified` is true and merely the achieved value otherwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupportSample {
    pub direction: Direction,
    pub support_value: f64,
    pub support_point: Vec<f64>,
    pub achiever: Achiever,
    pub certified: bool,
}

pub trait SupportOracle: Sync {
    fn support(&self, obs: &ObservableSet, u: &Direction) -> Result<SupportSample>;
}

/// Support function of the joint numerical range over all states:
/// `h(u) = λ_max(Σ uᵢ Aᵢ)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct AllStatesOracle;

impl SupportOracle for AllStatesOracle {
    fn support(&self, obs: &ObservableSet, u: &Direction) -> Result<SupportSample> {
        support_all(obs, u)
    }
}

pub fn support_all(obs: &ObservableSet, u: &Direction) -> Result<SupportSample> {
    let m = obs.combination(u.components())?;
    let e = eigh(&m)?;
    let v = e.top_vector();
    let point = obs.expectations(&v);
    Ok(SupportSample {
        direction: u.clone(),
        support_value: e.max(),
        support_point: point,
        achiever: Achiever::Eigenvector(v),
        certified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::{pauli_block_triple, ProductAngles};
    use crate::qlinalg::{kron, DimensionProfile, HermitianMatrix};

    #[test]
    fn single_product_observable() {
        let x = HermitianMatrix::pauli_x();
        let obs = ObservableSet::new(DimensionProfile::qubits(2), vec![kron(&x, &x)]).unwrap();
        let s = support_all(&obs, &Direction::new(vec![1.0]).unwrap()).unwrap();
        assert!((s.support_value - 1.0).abs() < 1e-14);
        assert!((s.support_point[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn bloch_ball_block() {
        let obs = pauli_block_triple();
        for u in [vec![1.0, 0.0, 0.0], vec![0.3, -0.2, 0.9], vec![-1.0, 1.0, 1.0]] {
            let d = Direction::new(u).unwrap();
            let s = support_all(&obs, &d).unwrap();
            assert!((s.support_value - 1.0).abs() < 1e-13);
            assert!(d.dot(&s.support_point) <= s.support_value + 1e-9);
        }
    }

    #[test]
    fn xx_plus_zz() {
        let obs = ProductAngles::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
            .unwrap()
            .observables();
        let s = support_all(&obs, &Direction::new(vec![1.0, 1.0]).unwrap()).unwrap();
        assert!((s.support_value - 2f64.sqrt()).abs() < 1e-13);
    }
}
