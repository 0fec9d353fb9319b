//! Float intrinsics for `no_std`.

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn ln_1p(x: f64) -> f64 {
    libm::log1p(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn exp_m1(x: f64) -> f64 {
    libm::expm1(x)
}

#[inline]
pub(crate) fn sinh(x: f64) -> f64 {
    libm::sinh(x)
}

#[inline]
pub(crate) fn tanh(x: f64) -> f64 {
    libm::tanh(x)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub(crate) fn pow(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn powi(x: f64, n: i32) -> f64 {
    libm::pow(x, n as f64)
}

/// `ln(sinh(t))` for `t > 0`, stable for large `t`.
pub(crate) fn ln_sinh(t: f64) -> f64 {
    if t > 20.0 {
        // sinh t = e^t (1 - e^{-2t}) / 2
        t - core::f64::consts::LN_2 + ln_1p(-exp(-2.0 * t))
    } else {
        ln(sinh(t))
    }
}

/// `coth(t)` for `t > 0`.
#[inline]
pub(crate) fn coth(t: f64) -> f64 {
    1.0 / tanh(t)
}
