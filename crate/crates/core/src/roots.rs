//! Closed-form polynomial roots with Newton polishing.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Sum of absolute term magnitudes of a·x³ + b·x² + c·x + d at `x`; the
/// natural scale for judging a residual.
pub fn cubic_term_scale(coeffs: [f64; 4], x: f64) -> f64 {
    let [a, b, c, d] = coeffs;
    (a * x * x * x).abs() + (b * x * x).abs() + (c * x).abs() + d.abs()
}

pub fn eval_cubic(coeffs: [f64; 4], x: f64) -> f64 {
    let [a, b, c, d] = coeffs;
    ((a * x + b) * x + c) * x + d
}

/// All real roots of a·x³ + b·x² + c·x + d = 0 in ascending order.
///
/// Three-real-root cubics use the trigonometric form, single-root cubics
/// Cardano's formula; each root then gets Newton polishing on the original
/// coefficients. a = 0 falls through to the quadratic and linear cases.
pub fn real_cubic_roots(coeffs: [f64; 4]) -> Result<Vec<f64>> {
    let [a, b, c, d] = coeffs;
    if a == 0.0 && b == 0.0 && c == 0.0 {
        return Err(Error::IndeterminateEquation);
    }
    let mut roots = if a == 0.0 {
        real_quadratic_roots(b, c, d)
    } else {
        monic_cubic_roots(b / a, c / a, d / a)
    };
    for r in roots.iter_mut() {
        *r = polish_real(coeffs, *r);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn real_quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    // avoid cancellation between -b and the square root
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0, 0.0];
    }
    vec![q / a, c / q]
}

fn monic_cubic_roots(p: f64, q: f64, r: f64) -> Vec<f64> {
    let shift = p / 3.0;
    let dp = q - p * shift;
    let dq = 2.0 * shift * shift * shift - shift * q + r;
    let half_q = 0.5 * dq;
    let third_p = dp / 3.0;
    let disc = half_q * half_q + third_p * third_p * third_p;

    if disc > 0.0 {
        let s = disc.sqrt();
        // pick the larger-magnitude branch, derive the other from u·v = -P/3
        let u = (-half_q - half_q.signum() * s).cbrt();
        let v = if u == 0.0 { 0.0 } else { -third_p / u };
        vec![u + v - shift]
    } else if third_p == 0.0 {
        vec![-shift; 3]
    } else {
        let m = 2.0 * (-third_p).sqrt();
        let arg = (3.0 * dq / (dp * m)).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        (0..3)
            .map(|k| m * (phi - tau * k as f64).cos() - shift)
            .collect()
    }
}

fn polish_real(coeffs: [f64; 4], mut x: f64) -> f64 {
    let [a, b, c, _] = coeffs;
    let mut best = eval_cubic(coeffs, x).abs();
    for _ in 0..8 {
        let f = eval_cubic(coeffs, x);
        let df = (3.0 * a * x + 2.0 * b) * x + c;
        if df == 0.0 || f == 0.0 {
            break;
        }
        let next = x - f / df;
        let fn_abs = eval_cubic(coeffs, next).abs();
        if !(fn_abs < best) {
            break;
        }
        best = fn_abs;
        x = next;
    }
    x
}

fn eval_monic_quartic(c: [f64; 4], s: Complex64) -> (Complex64, Complex64) {
    let [a3, a2, a1, a0] = c;
    let f = (((s + a3) * s + a2) * s + a1) * s + a0;
    let df = ((4.0 * s + 3.0 * a3) * s + 2.0 * a2) * s + a1;
    (f, df)
}

/// Complex roots of s⁴ + a3·s³ + a2·s² + a1·s + a0 (Ferrari's method
/// through the resolvent cubic, then Newton polishing).
pub fn monic_quartic_roots(coeffs: [f64; 4]) -> [Complex64; 4] {
    let [a3, a2, a1, a0] = coeffs;
    let shift = a3 / 4.0;
    // depressed quartic y⁴ + p y² + q y + r with s = y - a3/4
    let p = a2 - 6.0 * shift * shift;
    let q = a1 - 2.0 * a2 * shift + 8.0 * shift * shift * shift;
    let r = a0 - a1 * shift + a2 * shift * shift - 3.0 * shift.powi(4);

    let scale = p.abs().max(q.abs().sqrt()).max(r.abs().sqrt()).max(f64::MIN_POSITIVE);
    let ys: [Complex64; 4] = if q.abs() <= 1e-14 * scale.powf(1.5) {
        // biquadratic: y² = z with z² + p z + r = 0
        let disc = Complex64::new(p * p - 4.0 * r, 0.0).sqrt();
        let z1 = (-p + disc) / 2.0;
        let z2 = (-p - disc) / 2.0;
        let (w1, w2) = (z1.sqrt(), z2.sqrt());
        [w1, -w1, w2, -w2]
    } else {
        // resolvent m³ + p m² + (p²/4 - r) m - q²/8 = 0 has a positive root
        let m = real_cubic_roots([1.0, p, p * p / 4.0 - r, -q * q / 8.0])
            .ok()
            .and_then(|rs| rs.into_iter().filter(|&m| m > 0.0).reduce(f64::max))
            .unwrap_or(f64::EPSILON * scale);
        let s2m = (2.0 * m).sqrt();
        let k = q / (2.0 * s2m);
        let quad = |b: f64, c: f64| {
            let disc = Complex64::new(b * b - 4.0 * c, 0.0).sqrt();
            [(-b + disc) / 2.0, (-b - disc) / 2.0]
        };
        let [y1, y2] = quad(-s2m, p / 2.0 + m + k);
        let [y3, y4] = quad(s2m, p / 2.0 + m - k);
        [y1, y2, y3, y4]
    };

    ys.map(|y| {
        let mut s = y - shift;
        for _ in 0..6 {
            let (f, df) = eval_monic_quartic(coeffs, s);
            if df.norm() == 0.0 || f.norm() == 0.0 {
                break;
            }
            let next = s - f / df;
            if eval_monic_quartic(coeffs, next).0.norm() < f.norm() {
                s = next;
            } else {
                break;
            }
        }
        s
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn linear_case() {
        assert_eq!(real_cubic_roots([0.0, 0.0, 3.0, 0.0]).unwrap(), vec![0.0]);
        assert_eq!(real_cubic_roots([0.0, 0.0, 2.0, -4.0]).unwrap(), vec![2.0]);
    }

    #[test]
    fn quadratic_case() {
        let r = real_cubic_roots([0.0, 1.0, -3.0, 2.0]).unwrap();
        assert_eq!(r, vec![1.0, 2.0]);
        assert!(real_cubic_roots([0.0, 1.0, 0.0, 1.0]).unwrap().is_empty());
    }

    #[test]
    fn factored_cubic() {
        // (x-1)(x-2)(x-3)
        let r = real_cubic_roots([1.0, -6.0, 11.0, -6.0]).unwrap();
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert_relative_eq!(*got, want, max_relative = 1e-14);
        }
    }

    #[test]
    fn single_real_root() {
        // (x - 2)(x² + 1)
        let r = real_cubic_roots([1.0, -2.0, 1.0, -2.0]).unwrap();
        assert_eq!(r.len(), 1);
        assert_relative_eq!(r[0], 2.0, max_relative = 1e-15);
    }

    #[test]
    fn all_zero_is_indeterminate() {
        assert_eq!(real_cubic_roots([0.0; 4]), Err(Error::IndeterminateEquation));
    }

    #[test]
    fn widely_scaled_coefficients() {
        // roots 1e-3, 1e6, 2e6 scaled by 1e15
        let (r1, r2, r3) = (1e-3, 1e6, 2e6);
        let s = 1e15;
        let c = [s, -s * (r1 + r2 + r3), s * (r1 * r2 + r1 * r3 + r2 * r3), -s * r1 * r2 * r3];
        let r = real_cubic_roots(c).unwrap();
        assert_eq!(r.len(), 3);
        assert_relative_eq!(r[0], r1, max_relative = 1e-9);
        assert_relative_eq!(r[1], r2, max_relative = 1e-12);
        assert_relative_eq!(r[2], r3, max_relative = 1e-12);
    }

    /// Counts sign changes of the cubic on a dense grid spanning the Cauchy
    /// root bound.
    fn sign_change_count(c: [f64; 4]) -> usize {
        let bound = 1.0 + (c[1].abs().max(c[2].abs()).max(c[3].abs())) / c[0].abs();
        let n = 200_000;
        let mut count = 0;
        let mut prev = eval_cubic(c, -bound);
        for i in 1..=n {
            let x = -bound + 2.0 * bound * i as f64 / n as f64;
            let f = eval_cubic(c, x);
            if f == 0.0 || (prev != 0.0 && f.signum() != prev.signum()) {
                count += 1;
            }
            prev = f;
        }
        count
    }

    #[test]
    fn root_count_matches_sign_changes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 1000 {
            let c: [f64; 4] = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            ];
            if c[0].abs() < 0.05 {
                continue;
            }
            // skip near-double roots, where grid counting is ambiguous
            let (p, q, r) = (c[1] / c[0], c[2] / c[0], c[3] / c[0]);
            let disc = 18.0 * p * q * r - 4.0 * p.powi(3) * r + p * p * q * q - 4.0 * q.powi(3) - 27.0 * r * r;
            if disc.abs() < 1e-3 {
                continue;
            }
            let roots = real_cubic_roots(c).unwrap();
            assert_eq!(roots.len(), sign_change_count(c), "coeffs {c:?}");
            for x in roots {
                assert!(eval_cubic(c, x).abs() <= 1e-8 * cubic_term_scale(c, x).max(f64::MIN_POSITIVE));
            }
            checked += 1;
        }
    }

    fn poly_from_roots(r: [Complex64; 4]) -> [f64; 4] {
        // expand (s - r0)(s - r1)(s - r2)(s - r3)
        let mut c = [Complex64::new(1.0, 0.0), Complex64::default(), Complex64::default(), Complex64::default(), Complex64::default()];
        for (k, root) in r.iter().enumerate() {
            for j in (1..=k + 1).rev() {
                c[j] -= root * c[j - 1];
            }
        }
        [c[1].re, c[2].re, c[3].re, c[4].re]
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn quartic_distinct_real_roots() {
        let r = monic_quartic_roots([10.0, 35.0, 50.0, 24.0]);
        let got = sorted(r.to_vec());
        for (g, want) in got.iter().zip([-4.0, -3.0, -2.0, -1.0]) {
            assert!((g - Complex64::new(want, 0.0)).norm() < 1e-12, "{got:?}");
        }
    }

    #[test]
    fn quartic_repeated_root() {
        let r = monic_quartic_roots([4.0, 6.0, 4.0, 1.0]);
        for g in r {
            assert!((g + 1.0).norm() < 1e-3, "{r:?}");
        }
    }

    #[test]
    fn quartic_random_complex_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(0.1..3.0));
            let b = Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(0.1..3.0));
            let want = [a, a.conj(), b, b.conj()];
            let got = monic_quartic_roots(poly_from_roots(want));
            for w in want {
                let nearest = got.iter().map(|g| (g - w).norm()).fold(f64::INFINITY, f64::min);
                assert!(nearest < 1e-8, "want {w} got {got:?}");
            }
        }
    }
}
