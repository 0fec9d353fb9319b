//! Symmetric tridiagonal pencils `K − σM` with `M` positive definite.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagPencil {
    pub k_diag: Vec<f64>,
    pub k_off: Vec<f64>,
    /// `None` for the identity.
    pub mass: Option<(Vec<f64>, Vec<f64>)>,
}

impl SymTridiagPencil {
    pub fn standard(diag: Vec<f64>, off: Vec<f64>) -> Self {
        Self { k_diag: diag, k_off: off, mass: None }
    }

    pub fn generalized(k_diag: Vec<f64>, k_off: Vec<f64>, m_diag: Vec<f64>, m_off: Vec<f64>) -> Self {
        Self { k_diag, k_off, mass: Some((m_diag, m_off)) }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.k_diag.len()
    }

    #[inline]
    fn shifted(&self, sigma: f64, i: usize) -> f64 {
        match &self.mass {
            None => self.k_diag[i] - sigma,
            Some((md, _)) => self.k_diag[i] - sigma * md[i],
        }
    }

    #[inline]
    fn shifted_off(&self, sigma: f64, i: usize) -> f64 {
        match &self.mass {
            None => self.k_off[i],
            Some((_, mo)) => self.k_off[i] - sigma * mo[i],
        }
    }

    /// Number of eigenvalues strictly below `sigma` (Sylvester inertia of
    /// the `LDLᵀ` factors).
    pub fn count_below(&self, sigma: f64) -> usize {
        let n = self.dim();
        let mut count = 0;
        let mut pivot = self.shifted(sigma, 0);
        for i in 0..n {
            if i > 0 {
                let b = self.shifted_off(sigma, i - 1);
                pivot = self.shifted(sigma, i) - b * b / pivot;
            }
            if pivot == 0.0 {
                pivot = -f64::EPSILON * (math::abs(self.k_diag[i]) + f64::MIN_POSITIVE);
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Eigenvalue number `index` (ascending, 0-based) by bisection to
    /// relative width `rtol`.
    pub fn eigenvalue(&self, index: usize, rtol: f64) -> Result<f64> {
        if index >= self.dim() {
            return Err(Error::InvalidGrid("eigenvalue index exceeds matrix size"));
        }
        let (mut lo, mut hi) = self.bracket(index)?;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= rtol * math::abs(lo).max(math::abs(hi)) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn bracket(&self, index: usize) -> Result<(f64, f64)> {
        let mut step = 1.0f64;
        let (mut lo, mut hi) = (-1.0f64, 1.0f64);
        for _ in 0..2100 {
            let lo_ok = self.count_below(lo) <= index;
            let hi_ok = self.count_below(hi) > index;
            if lo_ok && hi_ok {
                return Ok((lo, hi));
            }
            step *= 2.0;
            if !lo_ok {
                lo = -step;
            }
            if !hi_ok {
                hi = step;
            }
            if !step.is_finite() {
                break;
            }
        }
        Err(Error::ConvergenceFailure("could not bracket eigenvalue"))
    }

    /// Eigenvector for the converged eigenvalue `lambda` by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.dim();
        let scale = math::abs(lambda).max(self.k_diag.iter().fold(0.0f64, |m, d| m.max(math::abs(*d))));
        let sigma = lambda + 1e-14 * scale.max(f64::MIN_POSITIVE);
        let lu = TridiagLu::factor(
            (0..n).map(|i| self.shifted(sigma, i)).collect(),
            (0..n.saturating_sub(1)).map(|i| self.shifted_off(sigma, i)).collect(),
        );
        let mut v = vec![1.0; n];
        for (i, x) in v.iter_mut().enumerate() {
            // deterministic, not orthogonal to any smooth mode
            *x = 1.0 + 0.1 * ((i * 7919) % 101) as f64 / 101.0;
        }
        let mut prev_change = f64::INFINITY;
        for _ in 0..8 {
            let rhs = self.apply_mass(&v);
            let mut w = lu.solve(rhs);
            let norm = math::sqrt(w.iter().map(|x| x * x).sum::<f64>());
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(Error::ConvergenceFailure("inverse iteration broke down"));
            }
            for x in &mut w {
                *x /= norm;
            }
            let sign = if w.iter().zip(&v).map(|(a, b)| a * b).sum::<f64>() < 0.0 { -1.0 } else { 1.0 };
            let change = w.iter().zip(&v).map(|(a, b)| math::abs(sign * a - b)).fold(0.0, f64::max);
            v = w.into_iter().map(|x| sign * x).collect();
            if change < 1e-13 || change >= prev_change {
                return Ok(v);
            }
            prev_change = change;
        }
        Ok(v)
    }

    pub fn apply_mass(&self, v: &[f64]) -> Vec<f64> {
        match &self.mass {
            None => v.to_vec(),
            Some((md, mo)) => {
                let n = v.len();
                (0..n)
                    .map(|i| {
                        let mut s = md[i] * v[i];
                        if i > 0 {
                            s += mo[i - 1] * v[i - 1];
                        }
                        if i + 1 < n {
                            s += mo[i] * v[i + 1];
                        }
                        s
                    })
                    .collect()
            }
        }
    }
}

/// Tridiagonal LU with partial pivoting.
struct TridiagLu {
    /// Upper factor rows: `u0[i]` diagonal, `u1[i]`, `u2[i]` superdiagonals.
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    l: Vec<f64>,
    swapped: Vec<bool>,
}

impl TridiagLu {
    fn factor(mut d: Vec<f64>, off: Vec<f64>) -> Self {
        let n = d.len();
        let mut lower = off.clone();
        let mut up1 = off;
        up1.push(0.0);
        let mut up2 = vec![0.0; n];
        let mut l = vec![0.0; n];
        let mut swapped = vec![false; n];
        let tiny = f64::MIN_POSITIVE * 1e10;
        for i in 0..n.saturating_sub(1) {
            let sub = lower[i];
            if math::abs(d[i]) >= math::abs(sub) {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = sub / d[i];
                l[i] = f;
                d[i + 1] -= f * up1[i];
            } else {
                // swap rows i and i+1
                swapped[i] = true;
                let f = d[i] / sub;
                l[i] = f;
                d[i] = sub;
                let t = up1[i];
                up1[i] = d[i + 1];
                d[i + 1] = t - f * d[i + 1];
                if i + 1 < n - 1 {
                    up2[i] = up1[i + 1];
                    up1[i + 1] *= -f;
                }
            }
            lower[i] = 0.0;
        }
        if n > 0 && d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self { u0: d, u1: up1, u2: up2, l, swapped }
    }

    fn solve(&self, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.l[i] * b[i];
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            if i + 1 < n {
                s -= self.u1[i] * b[i + 1];
            }
            if i + 2 < n {
                s -= self.u2[i] * b[i + 2];
            }
            b[i] = s / self.u0[i];
        }
        b
    }
}
