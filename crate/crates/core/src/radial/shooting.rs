use super::grid::RadialGrid;
use super::potential::Potential;
use crate::error::{Error, Result};
use crate::math;

/// Substeps per octave on the graded start segment.
const OCTAVE_STEPS: u32 = 32;
/// The start point sits `2^−START_OCTAVES` below the first grid spacing.
const START_OCTAVES: u32 = 40;
/// The graded segment ends at this grid index; uniform steps follow.
const JOIN_INDEX: usize = 64;

#[inline]
fn rk4_step<P: Potential + ?Sized>(pot: &P, eps: f64, x: f64, dx: f64, y: (f64, f64)) -> (f64, f64) {
    let f = |x: f64, (u, du): (f64, f64)| (du, (pot.value(x) - eps) * u);
    let k1 = f(x, y);
    let k2 = f(x + 0.5 * dx, (y.0 + 0.5 * dx * k1.0, y.1 + 0.5 * dx * k1.1));
    let k3 = f(x + 0.5 * dx, (y.0 + 0.5 * dx * k2.0, y.1 + 0.5 * dx * k2.1));
    let k4 = f(x + dx, (y.0 + dx * k3.0, y.1 + dx * k3.1));
    (
        y.0 + dx / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y.1 + dx / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// Sign changes of the outward solution at trial `eps`, the endpoint included.
fn shoot<P: Potential + ?Sized>(pot: &P, grid: &RadialGrid, gamma: f64, z: f64, eps: f64) -> usize {
    let h = grid.spacing();
    let c1 = z / (2.0 * gamma);
    let x0 = h * math::powi(2.0, -(START_OCTAVES as i32));
    let mut y = (
        math::pow(x0, gamma) * (1.0 + c1 * x0),
        math::pow(x0, gamma - 1.0) * (gamma * (1.0 + c1 * x0) + c1 * x0),
    );
    let mut nodes = 0;
    let mut last_sign = y.0 > 0.0;
    let mut advance = |y: &mut (f64, f64), x: f64, dx: f64, nodes: &mut usize| {
        *y = rk4_step(pot, eps, x, dx, *y);
        if y.0 != 0.0 {
            let s = y.0 > 0.0;
            if s != last_sign {
                *nodes += 1;
                last_sign = s;
            }
        }
        let m = math::abs(y.0).max(math::abs(y.1));
        if m > 1e100 {
            y.0 *= 1e-100;
            y.1 *= 1e-100;
        }
    };

    let ratio = math::pow(2.0, 1.0 / f64::from(OCTAVE_STEPS));
    let join = JOIN_INDEX.min(grid.n_points() - 1);
    let x_join = grid.x(join);
    let mut x = x0;
    while x < x_join {
        let next = (x * ratio).min(x_join);
        advance(&mut y, x, next - x, &mut nodes);
        x = next;
    }
    for i in join..grid.n_points() - 1 {
        let x = grid.x(i);
        advance(&mut y, x, grid.x(i + 1) - x, &mut nodes);
    }
    nodes
}

fn frobenius_exponents<P: Potential + ?Sized>(pot: &P) -> Result<(f64, f64)> {
    let (l, z) = pot.singular_coefficients();
    let disc = 1.0 + 4.0 * l;
    if !(disc >= 0.0) {
        return Err(Error::InvalidParameter { name: "singular_coefficient", value: l });
    }
    Ok((0.5 * (1.0 + math::sqrt(disc)), z))
}

/// Level `n_r` of `−χ'' + Vχ = εχ` on `grid` with `χ(0) = χ(x_max) = 0`,
/// by outward RK4 integration and bisection on the node count.
pub fn shooting_eigen<P: Potential + ?Sized>(pot: &P, grid: &RadialGrid, n_r: u32) -> Result<f64> {
    let (gamma, z) = frobenius_exponents(pot)?;
    let n_r = n_r as usize;
    let above = |eps: f64| shoot(pot, grid, gamma, z, eps) > n_r;

    let v_min = grid.interior().map(|x| pot.value(x)).fold(f64::INFINITY, f64::min);
    let mut lo = if v_min.is_finite() { v_min - 1.0 } else { -1.0 };
    let mut width = 1.0f64;
    let mut tries = 0;
    while above(lo) {
        lo -= width;
        width *= 2.0;
        tries += 1;
        if tries > 200 {
            return Err(Error::BracketingFailure("no lower energy bound for shooting"));
        }
    }
    let mut width = 1.0f64;
    let mut hi = lo + width;
    let mut tries = 0;
    while !above(hi) {
        lo = hi;
        width *= 2.0;
        hi = lo + width;
        tries += 1;
        if tries > 200 || !hi.is_finite() {
            return Err(Error::BracketingFailure("no sign change in the scanned energy window"));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= 1e-15 * math::abs(mid).max(1.0) {
            break;
        }
        if above(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::EckartParams;
    use crate::radial::{EckartPotential, HalfOscillator};

    #[test]
    fn half_oscillator_levels() {
        let grid = RadialGrid::new(8.0, 4001).unwrap();
        for (n_r, exact) in [(0u32, 3.0), (1, 7.0), (2, 11.0)] {
            let ev = shooting_eigen(&HalfOscillator, &grid, n_r).unwrap();
            assert!((ev - exact).abs() < 1e-6 * exact, "{ev} vs {exact}");
            let (g, z) = frobenius_exponents(&HalfOscillator).unwrap();
            assert_eq!(shoot(&HalfOscillator, &grid, g, z, ev * (1.0 - 1e-9)), n_r as usize);
        }
    }

    #[test]
    fn eckart_ground() {
        let pot = EckartPotential(EckartParams { a_param: 1.0, b_param: 3.0, nu: 2.0 });
        let grid = RadialGrid::new(20.0, 4001).unwrap();
        let ev = shooting_eigen(&pot, &grid, 0).unwrap();
        assert!((ev + 10.0).abs() < 1e-7 * 10.0, "{ev}");
    }

    #[test]
    fn attractive_core() {
        // l* < 0: χ ~ x^γ with γ < 1.
        let p = EckartParams { a_param: 0.0043, b_param: 0.0021, nu: 0.01 };
        let pot = EckartPotential(p);
        let (gamma, _) = frobenius_exponents(&pot).unwrap();
        assert!((gamma - 2.0 * p.a_param / p.nu).abs() < 1e-12);
        let grid = RadialGrid::new(80.0, 4001).unwrap();
        let ev = shooting_eigen(&pot, &grid, 0).unwrap();
        let exact = crate::closed_form::eckart_level(&p, 0).epsilon;
        assert!((ev - exact).abs() < 1e-6 * exact.abs(), "{ev} vs {exact}");
    }
}
