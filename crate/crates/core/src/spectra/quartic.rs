//! Complex quartic solver for the moment-generating-function equation of
//! the autocorrelated-noise spectrum.
//!
//! The limiting spectrum of row-standardized AR(1) noise is characterized by
//! a quartic polynomial in the moment generating function M(z). Ferrari's
//! classical reduction (resolvent cubic + two quadratics) gives all four
//! roots; a short Newton polish on the original polynomial removes the
//! catastrophic cancellation that the closed-form route can suffer near the
//! spectrum edges.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative residual every returned root must satisfy.
const ROOT_RESIDUAL_TOL: f64 = 1e-8;

/// Coefficients of the quartic satisfied by M(z) for row-standardized AR(1)
/// noise with lag-one coefficient `b` and aspect ratio `c = N/T`, listed from
/// the M⁴ term down to the constant. Writing a² = 1 − b²:
///
///   a⁴c²·M⁴ + 2a²c(a²c − (1+b²)z)·M³
///     + (a⁴z² − 2a²c(1+b²)z + (c²−1)a⁴)·M² − 2a⁴·M − a⁴ = 0.
pub fn mgf_quartic_coeffs(z: Complex64, b: f64, c: f64) -> Result<[Complex64; 5]> {
    if !(b.abs() < 1.0) {
        return Err(Error::DegenerateCoefficients { b });
    }
    if !(c > 0.0 && c <= 1.0) {
        return Err(Error::InvalidParameter {
            what: format!("aspect ratio must lie in (0, 1], got {c}"),
        });
    }
    let a2 = 1.0 - b * b;
    let a4 = a2 * a2;
    let one_plus_b2 = 1.0 + b * b;
    Ok([
        Complex64::new(a4 * c * c, 0.0),
        2.0 * a2 * c * (a2 * c - one_plus_b2 * z),
        a4 * z * z - 2.0 * a2 * c * one_plus_b2 * z + (c * c - 1.0) * a4,
        Complex64::new(-2.0 * a4, 0.0),
        Complex64::new(-a4, 0.0),
    ])
}

fn eval_poly(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Scale against which a residual at x is judged: Σ |cᵢ|·|x|^deg(i).
fn residual_scale(coeffs: &[Complex64], x: Complex64) -> f64 {
    let ax = x.norm();
    coeffs.iter().fold(0.0, |acc, c| acc * ax + c.norm()).max(f64::MIN_POSITIVE)
}

/// One root of the depressed cubic u³ + pu + q = 0 via Cardano's formula,
/// choosing the larger-magnitude branch to avoid cancellation.
fn depressed_cubic_root(p: Complex64, q: Complex64) -> Complex64 {
    let d = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let t1 = -q / 2.0 + d;
    let t2 = -q / 2.0 - d;
    let t = if t1.norm() >= t2.norm() { t1 } else { t2 };
    let a = t.cbrt();
    if a.norm() < 1e-300 {
        // p and q both vanish: triple root at zero.
        Complex64::new(0.0, 0.0)
    } else {
        a - p / (3.0 * a)
    }
}

fn solve_quadratic(b: Complex64, c: Complex64) -> [Complex64; 2] {
    // x² + bx + c = 0, using the stable pairing x₁x₂ = c.
    let d = (b * b - 4.0 * c).sqrt();
    // Pick the sign that adds magnitudes instead of cancelling.
    let q = if (b.conj() * d).re >= 0.0 { -(b + d) / 2.0 } else { -(b - d) / 2.0 };
    if q.norm() < 1e-300 {
        [Complex64::new(0.0, 0.0), -b]
    } else {
        [q, c / q]
    }
}

/// All four roots of c₄x⁴ + c₃x³ + c₂x² + c₁x + c₀ = 0, coefficients in
/// descending order, each polished by Newton iteration on the original
/// polynomial and validated against a relative residual bound.
pub fn solve_quartic(coeffs: &[Complex64; 5]) -> Result<[Complex64; 4]> {
    let lead = coeffs[0];
    if lead.norm() < 1e-300 {
        return Err(Error::Numerical { what: "quartic leading coefficient vanishes".into() });
    }
    // Monic form x⁴ + p₃x³ + p₂x² + p₁x + p₀.
    let p3 = coeffs[1] / lead;
    let p2 = coeffs[2] / lead;
    let p1 = coeffs[3] / lead;
    let p0 = coeffs[4] / lead;

    // Depress with x = y − p₃/4:  y⁴ + py² + qy + r = 0.
    let s = p3 / 4.0;
    let p = p2 - 6.0 * s * s;
    let q = p1 - 2.0 * p2 * s + 8.0 * s * s * s;
    let r = p0 - p1 * s + p2 * s * s - 3.0 * s * s * s * s;

    let y_roots: [Complex64; 4] = if q.norm() < 1e-14 * (1.0 + p.norm() + r.norm()) {
        // Biquadratic: y² solves a plain quadratic.
        let [u1, u2] = solve_quadratic(p, r);
        let r1 = u1.sqrt();
        let r2 = u2.sqrt();
        [r1, -r1, r2, -r2]
    } else {
        // Resolvent cubic 8m³ + 8pm² + (2p² − 8r)m − q² = 0; any root m with
        // 2m ≠ 0 lets the depressed quartic split into two quadratics.
        let ca = p; // cubic in monic form m³ + p·m² + (p²/4 − r)·m − q²/8 = 0
        let cb = p * p / 4.0 - r;
        let cc = -q * q / 8.0;
        // Depress the cubic: m = u − ca/3.
        let cp = cb - ca * ca / 3.0;
        let cq = 2.0 * ca * ca * ca / 27.0 - ca * cb / 3.0 + cc;
        let m = depressed_cubic_root(cp, cq) - ca / 3.0;
        let s2m = (2.0 * m).sqrt();
        if s2m.norm() < 1e-150 {
            return Err(Error::Numerical {
                what: "quartic resolvent produced a vanishing square factor".into(),
            });
        }
        // y² ∓ s·y + (p/2 + m ± q/(2s)) = 0
        let half_p_plus_m = p / 2.0 + m;
        let qa = solve_quadratic(-s2m, half_p_plus_m + q / (2.0 * s2m));
        let qb = solve_quadratic(s2m, half_p_plus_m - q / (2.0 * s2m));
        [qa[0], qa[1], qb[0], qb[1]]
    };

    let mut roots = [Complex64::new(0.0, 0.0); 4];
    let deriv = [4.0 * coeffs[0], 3.0 * coeffs[1], 2.0 * coeffs[2], coeffs[3]];
    for (slot, y) in roots.iter_mut().zip(y_roots) {
        let mut x = y - s;
        // Newton polish on the original (non-depressed) coefficients.
        for _ in 0..60 {
            let f = eval_poly(coeffs, x);
            if f.norm() <= 1e-15 * residual_scale(coeffs, x) {
                break;
            }
            let df = eval_poly(&deriv, x);
            if df.norm() < 1e-300 {
                break;
            }
            let step = f / df;
            x -= step;
            if step.norm() <= 1e-16 * (1.0 + x.norm()) {
                break;
            }
        }
        let rel = eval_poly(coeffs, x).norm() / residual_scale(coeffs, x);
        if !(rel < ROOT_RESIDUAL_TOL) {
            return Err(Error::Numerical {
                what: format!("quartic root residual {rel:.3e} exceeds {ROOT_RESIDUAL_TOL:.0e}"),
            });
        }
        *slot = x;
    }
    Ok(roots)
}

/// The four candidate values of the moment generating function M(z) for
/// row-standardized AR(1) noise.
pub fn mgf_roots(z: Complex64, b: f64, c: f64) -> Result<[Complex64; 4]> {
    let coeffs = mgf_quartic_coeffs(z, b, c)?;
    solve_quartic(&coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs_from_roots(roots: &[Complex64; 4], lead: Complex64) -> [Complex64; 5] {
        let mut c = [Complex64::new(0.0, 0.0); 5];
        c[0] = Complex64::new(1.0, 0.0);
        for &r in roots {
            // Multiply the running polynomial by (x − r).
            let mut next = [Complex64::new(0.0, 0.0); 5];
            for i in 0..4 {
                next[i + 1] = c[i + 1] - r * c[i];
            }
            for i in (1..5).rev() {
                c[i] = next[i];
            }
        }
        for v in &mut c {
            *v *= lead;
        }
        c
    }

    fn assert_multiset_close(found: &[Complex64; 4], expected: &[Complex64; 4], tol: f64) {
        let mut used = [false; 4];
        for f in found {
            let mut matched = false;
            for (i, e) in expected.iter().enumerate() {
                if !used[i] && (f - e).norm() < tol {
                    used[i] = true;
                    matched = true;
                    break;
                }
            }
            assert!(matched, "root {f} unmatched against {expected:?}");
        }
    }

    #[test]
    fn recovers_known_roots() {
        let expected = [
            Complex64::new(1.0, 2.0),
            Complex64::new(-3.0, 0.5),
            Complex64::new(0.25, -1.5),
            Complex64::new(4.0, 0.0),
        ];
        let coeffs = coeffs_from_roots(&expected, Complex64::new(2.0, -1.0));
        let roots = solve_quartic(&coeffs).unwrap();
        assert_multiset_close(&roots, &expected, 1e-9);
    }

    #[test]
    fn handles_biquadratic() {
        let expected = [
            Complex64::new(2.0, 0.0),
            Complex64::new(-2.0, 0.0),
            Complex64::new(0.0, 3.0),
            Complex64::new(0.0, -3.0),
        ];
        let coeffs = coeffs_from_roots(&expected, Complex64::new(1.0, 0.0));
        let roots = solve_quartic(&coeffs).unwrap();
        assert_multiset_close(&roots, &expected, 1e-9);
    }

    #[test]
    fn handles_repeated_roots() {
        let expected = [
            Complex64::new(1.5, 0.0),
            Complex64::new(1.5, 0.0),
            Complex64::new(-0.5, 1.0),
            Complex64::new(-0.5, -1.0),
        ];
        let coeffs = coeffs_from_roots(&expected, Complex64::new(1.0, 0.0));
        let roots = solve_quartic(&coeffs).unwrap();
        assert_multiset_close(&roots, &expected, 1e-5);
    }

    #[test]
    fn mgf_roots_satisfy_quartic() {
        for &b in &[0.0, 0.2, 0.5, 0.8, 0.95] {
            for &c in &[0.1, 0.5, 1.0] {
                for &x in &[0.1, 0.9, 2.0, 7.0] {
                    let z = Complex64::new(x, 1e-3);
                    let coeffs = mgf_quartic_coeffs(z, b, c).unwrap();
                    for m in mgf_roots(z, b, c).unwrap() {
                        let rel = eval_poly(&coeffs, m).norm() / residual_scale(&coeffs, m);
                        assert!(rel < 1e-8, "b={b} c={c} z={z}: residual {rel:.2e}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_unit_lag_coefficient() {
        assert!(matches!(
            mgf_quartic_coeffs(Complex64::new(1.0, 1e-3), 1.0, 0.5),
            Err(Error::DegenerateCoefficients { .. })
        ));
    }
}
