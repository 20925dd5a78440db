//! Qubit channels whose observable record is constant, and hence whose chaos
//! degree vanishes under every partition.

use super::{Matrix2c, SpinObservable, SpinState};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZeroDegreeChannel {
    /// Every step conjugates the state by the same unitary `U`.
    FixedUnitary(Matrix2c),
    Identity,
    /// Every state is replaced by a fixed `ρ₀`.
    Constant(SpinState),
    /// `n`-fold dephasing `Σ P_{k_n}⋯P_{k_1} ρ P_{k_1}⋯P_{k_n}` in the σ_z basis.
    Projective,
}

impl ZeroDegreeChannel {
    pub fn name(&self) -> &'static str {
        match self {
            ZeroDegreeChannel::FixedUnitary(_) => "fixed unitary",
            ZeroDegreeChannel::Identity => "identity",
            ZeroDegreeChannel::Constant(_) => "constant state",
            ZeroDegreeChannel::Projective => "projective",
        }
    }

    /// Single-step action `Θ* ρ`.
    pub fn apply(&self, rho: Matrix2c) -> Matrix2c {
        match self {
            ZeroDegreeChannel::FixedUnitary(u) => u.conjugate(rho),
            ZeroDegreeChannel::Identity => rho,
            ZeroDegreeChannel::Constant(s) => s.density(),
            ZeroDegreeChannel::Projective => (0..2)
                .map(|k| Matrix2c::basis_projector(k).conjugate(rho))
                .fold(Matrix2c::zero(), |acc, m| acc + m),
        }
    }

    /// `x_k = Re tr(X Θ*_k ρ)` for `k = 1..=length`.
    ///
    /// The projective case carries the state forward, so step `k` is the
    /// `k`-fold dephasing; the other cases act on `ρ` directly.
    pub fn observable_sequence(
        &self,
        x: &SpinObservable,
        rho: &SpinState,
        length: usize,
    ) -> Vec<f64> {
        let xm = x.matrix();
        let rho0 = rho.density();
        let mut state = rho0;
        (0..length)
            .map(|_| {
                let out = match self {
                    ZeroDegreeChannel::Projective => {
                        state = self.apply(state);
                        state
                    }
                    _ => self.apply(rho0),
                };
                (xm * out).trace().re
            })
            .collect()
    }
}
