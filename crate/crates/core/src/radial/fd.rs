use alloc::vec::Vec;

use super::potential::PotentialSamples;
use super::tridiag::SymTridiagPencil;
use super::WavefunctionSamples;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Eigenpair {
    pub value: f64,
    pub wavefunction: WavefunctionSamples,
}

/// Three-point matrix of `−d²/dx² + V` on the interior points.
pub(crate) fn fd_pencil(pot: &PotentialSamples) -> SymTridiagPencil {
    let h = pot.grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let n = pot.values.len();
    SymTridiagPencil::standard(
        pot.values.iter().map(|v| 2.0 * inv_h2 + v).collect(),
        alloc::vec![-inv_h2; n.saturating_sub(1)],
    )
}

/// Lowest `count` eigenpairs of `−d²/dx² + V` with Dirichlet ends,
/// ascending.
pub fn fd_eigen(pot: &PotentialSamples, count: usize) -> Result<Vec<Eigenpair>> {
    if count == 0 {
        return Err(Error::InvalidParameter { name: "count", value: 0.0 });
    }
    if count > pot.values.len() {
        return Err(Error::InvalidGrid("more eigenpairs requested than interior points"));
    }
    let pencil = fd_pencil(pot);
    (0..count)
        .map(|j| {
            let value = pencil.eigenvalue(j, 1e-15)?;
            let interior = pencil.eigenvector(value)?;
            let mut chi = Vec::with_capacity(interior.len() + 2);
            chi.push(0.0);
            chi.extend(interior);
            chi.push(0.0);
            Ok(Eigenpair { value, wavefunction: WavefunctionSamples::from_raw(&pot.grid, chi) })
        })
        .collect()
}

/// Eigenvalue `index` only.
#[cfg(test)]
pub(crate) fn fd_eigenvalue(pot: &PotentialSamples, index: usize, rtol: f64) -> Result<f64> {
    fd_pencil(pot).eigenvalue(index, rtol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::EckartParams;
    use crate::radial::{eckart_potential, HalfOscillator, RadialGrid};

    #[test]
    fn half_oscillator() {
        let grid = RadialGrid::new(8.0, 4001).unwrap();
        let pairs = fd_eigen(&PotentialSamples::sample(&HalfOscillator, grid), 3).unwrap();
        for (p, exact) in pairs.iter().zip([3.0, 7.0, 11.0]) {
            assert!((p.value - exact).abs() < 1e-4, "{} vs {exact}", p.value);
        }
        for (j, p) in pairs.iter().enumerate() {
            assert_eq!(p.wavefunction.node_count(), j);
            assert!((p.wavefunction.norm_sq() - 1.0).abs() < 1e-12);
        }
        assert!(pairs[0].wavefunction.chi[1] > 0.0);
    }

    #[test]
    fn eckart_ground_level() {
        let p = EckartParams { a_param: 1.0, b_param: 3.0, nu: 2.0 };
        let grid = RadialGrid::new(20.0, 4001).unwrap();
        let ev = fd_eigen(&eckart_potential(&p, grid), 1).unwrap()[0].value;
        assert!((ev + 10.0).abs() < 1e-3, "{ev}");
    }

    #[test]
    fn second_order_convergence() {
        let errs: Vec<f64> = [501usize, 1001, 2001]
            .iter()
            .map(|&n| {
                let grid = RadialGrid::new(8.0, n).unwrap();
                fd_eigenvalue(&PotentialSamples::sample(&HalfOscillator, grid), 0, 1e-15).unwrap() - 3.0
            })
            .collect();
        let xs = [500f64, 1000.0, 2000.0].map(|n| 8.0 / n);
        let slope = crate::fit::log_log_slope(&xs, &errs);
        assert!((slope - 2.0).abs() < 0.05, "{slope}");
    }

    #[test]
    fn bad_requests() {
        let grid = RadialGrid::new(1.0, 5).unwrap();
        let s = PotentialSamples::sample(&HalfOscillator, grid);
        assert!(fd_eigen(&s, 0).is_err());
        assert!(fd_eigen(&s, 4).is_err());
        assert_eq!(fd_eigen(&s, 3).unwrap().len(), 3);
    }
}
