//! Numerical solution of the mapped radial equation.
//!
//! With `xν = ln(1 + νr)` the radial problem becomes the one-dimensional
//! Schrödinger equation `−χ'' + V(x)χ = εχ` on the half line, `V` an
//! Eckart-type hyperbolic potential whose coupling `B` and target `ε` depend
//! on the trial energy. [`self_consistent_energy`] closes that loop by root
//! finding in `E`.

mod fd;
mod grid;
mod nodes;
mod potential;
mod selfconsistent;
mod shooting;
mod tridiag;

pub use fd::{fd_eigen, Eigenpair};
pub use grid::{build_grid, coordinate_map, Direction, RadialGrid, XMaxPolicy, KAPPA_MIN};
pub use nodes::count_nodes;
pub use potential::{eckart_potential, EckartPotential, HalfOscillator, Potential, PotentialSamples};
pub use selfconsistent::{
    eckart_decay_rate, eigenvalue_at, export_wavefunction, self_consistent_energy, Discretization,
    ExportedWavefunction, SelfConsistentDiagnostics, SolverOptions,
};
pub use shooting::shooting_eigen;
pub use tridiag::SymTridiagPencil;

/// `χ` sampled on the full grid (both Dirichlet endpoints included),
/// normalized so that `Σχ²h = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct WavefunctionSamples {
    pub x: alloc::vec::Vec<f64>,
    pub chi: alloc::vec::Vec<f64>,
    pub spacing: f64,
}

impl WavefunctionSamples {
    /// Normalizes and fixes the sign so the first significant sample is positive.
    pub(crate) fn from_raw(grid: &RadialGrid, mut chi: alloc::vec::Vec<f64>) -> Self {
        let h = grid.spacing();
        let norm = crate::math::sqrt(chi.iter().map(|c| c * c).sum::<f64>() * h);
        let peak = chi.iter().fold(0.0f64, |m, c| m.max(crate::math::abs(*c)));
        let lead = chi.iter().copied().find(|c| crate::math::abs(*c) > 1e-6 * peak).unwrap_or(1.0);
        let scale = if lead < 0.0 { -1.0 / norm } else { 1.0 / norm };
        for c in &mut chi {
            *c *= scale;
        }
        Self { x: grid.points(), chi, spacing: h }
    }

    pub fn norm_sq(&self) -> f64 {
        self.chi.iter().map(|c| c * c).sum::<f64>() * self.spacing
    }

    pub fn node_count(&self) -> usize {
        count_nodes(&self.chi)
    }
}
