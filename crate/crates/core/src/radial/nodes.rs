use crate::math;

/// Strict sign changes, skipping entries below `1e−12·max|v|`.
pub fn count_nodes(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(math::abs(*v)));
    let floor = 1e-12 * peak;
    let mut last = 0.0f64;
    let mut count = 0;
    for &v in values {
        if math::abs(v) <= floor {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            count += 1;
        }
        last = v;
    }
    count
}
