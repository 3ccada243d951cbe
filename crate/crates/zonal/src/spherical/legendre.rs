//! Legendre polynomial reference oracle.

/// Evaluate P_l(u) by the three-term recurrence
///   (k+1) P_{k+1}(u) = (2k+1) u P_k(u) - k P_{k-1}(u),
/// exact at u = ±1.
pub fn legendre(l: u32, u: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    if l == 1 {
        return u;
    }
    let mut p_prev = 1.0;
    let mut p_curr = u;
    for k in 1..l {
        let kf = k as f64;
        let p_next = ((2.0 * kf + 1.0) * u * p_curr - kf * p_prev) / (kf + 1.0);
        p_prev = p_curr;
        p_curr = p_next;
    }
    p_curr
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_values() {
        for l in 0..=20 {
            assert_eq!(legendre(l, 1.0), 1.0, "P_l(1) = 1");
            let expect = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(legendre(l, -1.0), expect, "P_l(-1) = (-1)^l");
        }
    }

    #[test]
    fn low_degree_closed_forms() {
        assert!((legendre(2, 0.0) + 0.5).abs() < 1e-15);
        let u: f64 = 0.3;
        let p5 = (63.0 * u.powi(5) - 70.0 * u.powi(3) + 15.0 * u) / 8.0;
        assert!((legendre(5, u) - p5).abs() < 1e-14);
        let p3 = (5.0 * u.powi(3) - 3.0 * u) / 2.0;
        assert!((legendre(3, u) - p3).abs() < 1e-15);
    }
}
