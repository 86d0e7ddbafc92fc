use super::linalg::{CMatrix4, C64};
use crate::model::ModelParams;

/// Generator of the Heisenberg equations on (ĉ₁, ĉ₂, ĉ₁†, ĉ₂†):
/// `d/dt x = K x`, so that `x(t) = exp(K t) x(0)`.
///
/// The lower half is the (c ↔ c†) conjugate of the upper half: with
/// `K = [[P, Q], [R, S]]`, `S = P*` and `R = Q*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix(CMatrix4);

impl DriftMatrix {
    pub fn matrix(&self) -> &CMatrix4 {
        &self.0
    }
}

/// Drift matrix of the two-mode Hamiltonian
/// `ω₁c₁†c₁ + ω₂c₂†c₂ + i g₁(c₁†c₂ − c₂†c₁) − i g₂(c₁†c₂† − c₂c₁)`.
///
/// Commutators give
/// `dc₁/dt = −iω₁c₁ + g₁c₂ − g₂c₂†` and `dc₂/dt = −iω₂c₂ − g₁c₁ − g₂c₁†`;
/// the creation-operator rows follow by conjugation.
pub fn drift_matrix(params: &ModelParams) -> DriftMatrix {
    let (w1, w2, g1, g2) = (params.omega1(), params.omega2(), params.g1(), params.g2());
    let r = |x: f64| C64::new(x, 0.0);
    let i = |x: f64| C64::new(0.0, x);
    let z = C64::new(0.0, 0.0);
    #[rustfmt::skip]
    let k = CMatrix4::new(
        i(-w1), r(g1),  z,      r(-g2),
        r(-g1), i(-w2), r(-g2), z,
        z,      r(-g2), i(w1),  r(g1),
        r(-g2), z,      r(-g1), i(w2),
    );
    DriftMatrix(k)
}
