//! Central finite differences, used as an independent oracle for the
//! derivative engine.

use super::expr::Field;

/// Central-difference estimate of the partial derivative along `alpha`
/// (order 0, 1 or 2) with step `h`.
pub fn fd_oracle(f: &Field, alpha: &[usize], p: &[f64], h: f64) -> f64 {
    assert!(h > 0.0, "step must be positive");
    let at = |shifts: &[(usize, f64)]| {
        let mut q = p.to_vec();
        for &(k, s) in shifts {
            q[k] += s;
        }
        f.eval(&q)
    };
    match *alpha {
        [] => f.eval(p),
        [a] => (at(&[(a, h)]) - at(&[(a, -h)])) / (2.0 * h),
        [a, b] if a == b => (at(&[(a, h)]) - 2.0 * f.eval(p) + at(&[(a, -h)])) / (h * h),
        [a, b] => {
            (at(&[(a, h), (b, h)]) - at(&[(a, h), (b, -h)]) - at(&[(a, -h), (b, h)]) + at(&[(a, -h), (b, -h)]))
                / (4.0 * h * h)
        }
        _ => panic!("finite-difference oracle supports order ≤ 2"),
    }
}

/// Richardson-extrapolated central difference (error O(h⁴) for first order).
pub fn fd_richardson(f: &Field, alpha: &[usize], p: &[f64], h: f64) -> f64 {
    let coarse = fd_oracle(f, alpha, p, h);
    let fine = fd_oracle(f, alpha, p, h / 2.0);
    (4.0 * fine - coarse) / 3.0
}
