//! Modified Bessel functions of the second kind `K_0, K_1, K_2` for
//! complex arguments.
//!
//! Three complementary evaluation regions (principal branch, `z != 0`):
//!
//! * ascending series with log term — small and moderate `|z|` away from
//!   the positive real axis, where the series suffers no catastrophic
//!   cancellation;
//! * Steed/Thompson–Barnett continued fraction (CF2) — moderate `|z|`
//!   with `Re z` large enough that `K` is exponentially small and the
//!   series would cancel;
//! * optimally truncated asymptotic expansion — large `|z|`.
//!
//! The region boundaries are chosen so every branch meets a relative
//! accuracy of about `1e-11` where it is used; the series/asymptotic
//! switch radius is exposed on [`BesselEvaluator`].

use num_complex::Complex64;

use crate::error::{LabError, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Evaluator with configurable method thresholds.
#[derive(Debug, Clone, Copy)]
pub struct BesselEvaluator {
    /// series/asymptotic switch radius
    pub switch_radius: f64,
    /// real-part boundary between the series and CF2 inside the switch disc
    pub cf2_re_min: f64,
}

impl Default for BesselEvaluator {
    fn default() -> Self {
        // At radius 13 the optimally truncated asymptotic tail is ~1e-11
        // for nu = 2 while the series (with CF2 covering Re z > 3.5)
        // stays at ~1e-12; both meet the crate-wide 1e-10 target.
        BesselEvaluator {
            switch_radius: 13.0,
            cf2_re_min: 3.5,
        }
    }
}

impl BesselEvaluator {
    pub fn eval(&self, nu: u32, z: Complex64) -> Result<Complex64> {
        if z == Complex64::new(0.0, 0.0) {
            return Err(LabError::Domain("K_nu is singular at z = 0".into()));
        }
        if nu > 2 {
            return Err(LabError::Config("orders above 2 are not needed here".into()));
        }
        let r = z.norm();
        let v = if r > self.switch_radius {
            asymptotic_k(nu, z)
        } else if z.re > self.cf2_re_min {
            let (k0, k1) = cf2_k01(z)?;
            match nu {
                0 => k0,
                1 => k1,
                _ => k0 + k1 * (2.0 / z), // stable upward recurrence
            }
        } else {
            series_k(nu, z)
        };
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(LabError::Numerical(format!(
                "K_{nu}({z}) evaluated non-finite"
            )))
        }
    }
}

/// `K_nu(z)` with the default evaluator.
pub fn bessel_k(nu: u32, z: Complex64) -> Result<Complex64> {
    BesselEvaluator::default().eval(nu, z)
}

/// Modified Bessel function of the first kind by its ascending series.
pub fn bessel_i_series(nu: u32, z: Complex64) -> Complex64 {
    let half = z * 0.5;
    let q = half * half;
    let mut term = Complex64::new(1.0, 0.0);
    for m in 1..=nu {
        term = term * half / (m as f64);
    }
    let mut sum = term;
    for k in 1..400 {
        term = term * q / ((k as f64) * ((k + nu) as f64));
        sum += term;
        if term.norm() < 1e-18 * sum.norm() + 1e-300 {
            break;
        }
    }
    sum
}

fn digamma_int(m: u32) -> f64 {
    // psi(m) for integer m >= 1
    let mut v = -EULER_GAMMA;
    for j in 1..m {
        v += 1.0 / (j as f64);
    }
    v
}

/// Ascending series with log term,
/// `K_n(z) = 1/2 (z/2)^{-n} sum_{k<n} ((n-k-1)!/k!) (-z^2/4)^k
///         + (-1)^{n+1} ln(z/2) I_n(z)
///         + (-1)^n 1/2 (z/2)^n sum_k (psi(k+1)+psi(n+k+1)) (z^2/4)^k / (k!(n+k)!)`.
fn series_k(nu: u32, z: Complex64) -> Complex64 {
    let half = z * 0.5;
    let q = half * half;
    let log_half = half.ln();

    // finite sum
    let mut finite = Complex64::new(0.0, 0.0);
    if nu > 0 {
        let mut pw = Complex64::new(1.0, 0.0); // (-z^2/4)^k
        let mut fact_k = 1.0;
        for k in 0..nu {
            let num = factorial((nu - k - 1) as u64);
            finite += pw * (num / fact_k);
            pw = pw * -q;
            fact_k *= (k + 1) as f64;
        }
        finite = finite * 0.5 * half.powi(-(nu as i32));
    }

    let log_term = log_half * bessel_i_series(nu, z) * if nu % 2 == 0 { -1.0 } else { 1.0 };

    // psi-weighted series
    let mut term = Complex64::new(1.0, 0.0);
    let mut kfact = 1.0f64;
    let mut nkfact = factorial(nu as u64);
    let mut psi_sum = Complex64::new(0.0, 0.0);
    for k in 0..400u32 {
        if k > 0 {
            kfact *= k as f64;
            nkfact *= (nu + k) as f64;
            term = term * q;
        }
        let w = digamma_int(k + 1) + digamma_int(nu + k + 1);
        let contrib = term * (w / (kfact * nkfact));
        psi_sum += contrib;
        if contrib.norm() < 1e-18 * psi_sum.norm() + 1e-300 && k > 4 {
            break;
        }
    }
    let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
    let psi_term = psi_sum * half.powu(nu) * (0.5 * sign);

    finite + log_term + psi_term
}

fn factorial(n: u64) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// Steed-style continued fraction CF2 for `K_0, K_1` at `Re z > 0`.
fn cf2_k01(z: Complex64) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let a1 = 0.25; // 1/4 - mu^2 with mu = 0
    let mut b = (z + 1.0) * 2.0;
    let mut d = one / b;
    let mut delh = d;
    let mut h = delh;
    let mut q1 = Complex64::new(0.0, 0.0);
    let mut q2 = one;
    let mut q = Complex64::new(a1, 0.0);
    let mut c = Complex64::new(a1, 0.0);
    let mut a = -a1;
    let mut s = one + q * delh;
    let mut converged = false;
    for i in 2..10_000 {
        a -= 2.0 * (i as f64 - 1.0);
        c = -c * (a / i as f64);
        let qnew = (q1 - b * q2) * (1.0 / a);
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = one / (b + d * a);
        delh = (b * d - 1.0) * delh;
        h += delh;
        let dels = q * delh;
        s += dels;
        if dels.norm() < 1e-16 * s.norm() {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LabError::Numerical(format!(
            "Bessel CF2 did not converge at z = {z}"
        )));
    }
    let h = h * a1;
    let pref = (std::f64::consts::PI / (z * 2.0)).sqrt() * (-z).exp();
    let k0 = pref / s;
    let k1 = k0 * (z + 0.5 - h) / z;
    Ok((k0, k1))
}

/// Asymptotic expansion `sqrt(pi/2z) e^{-z} sum_k a_k(nu) z^{-k}` with
/// optimal truncation (stop at the smallest term).
fn asymptotic_k(nu: u32, z: Complex64) -> Complex64 {
    let mu = 4.0 * (nu as f64) * (nu as f64);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev_mag = term.norm();
    for k in 1..60u32 {
        let kk = k as f64;
        let num = mu - (2.0 * kk - 1.0) * (2.0 * kk - 1.0);
        term = term * (num / (8.0 * kk)) / z;
        let mag = term.norm();
        if mag >= prev_mag {
            break; // divergence point reached; stop before the minimal term grows
        }
        sum += term;
        prev_mag = mag;
        if mag < 1e-17 * sum.norm() {
            break;
        }
    }
    (std::f64::consts::PI / (z * 2.0)).sqrt() * (-z).exp() * sum
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_close(a: Complex64, b: Complex64, rel: f64) {
        let d = (a - b).norm();
        assert!(
            d <= rel * b.norm(),
            "got {a}, want {b} (rel err {:.3e})",
            d / b.norm()
        );
    }

    // Reference values computed with mpmath at 30 significant digits.
    #[test]
    fn real_axis_reference_values() {
        assert_close(bessel_k(0, c(1.0, 0.0)).unwrap(), c(0.421024438240708333, 0.0), 1e-12);
        assert_close(bessel_k(1, c(1.0, 0.0)).unwrap(), c(0.601907230197234575, 0.0), 1e-12);
        assert_close(bessel_k(2, c(1.0, 0.0)).unwrap(), c(1.62483889863517748, 0.0), 1e-12);
    }

    #[test]
    fn small_z_limit_z2k2() {
        // z^2 K_2(z) -> 2 as z -> 0
        let z = c(1e-3, 0.0);
        let v = bessel_k(2, z).unwrap() * z * z;
        assert!((v.re - 2.0).abs() < 1e-5, "{v}");
        assert!((v - c(1.99999950000097171, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn large_z_asymptotic_regime() {
        // K_2(50) * sqrt(2*50/pi) * e^50 = 1.037825713238...
        let v = bessel_k(2, c(50.0, 0.0)).unwrap();
        let scaled = v * (100.0 / std::f64::consts::PI).sqrt() * (50.0f64).exp();
        assert!((scaled.re - 1.0).abs() < 0.05, "{scaled}");
        assert!((scaled.re - 1.03782571323820465).abs() < 1e-9);
    }

    #[test]
    fn imaginary_axis_reference_values() {
        // mpmath: K2(i xi)
        let cases = [
            (0.5, -8.5472853237622081, 0.048072687634043541),
            (1.0, -2.5928861754911970, 0.18048997206696203),
            (5.0, 0.57752350549558120, 0.073144313605870429),
            (10.0, -0.0092175623455509181, 0.39997236142721977),
            (13.0, 0.072080148684533631, -0.34203189045192308),
            (20.0, -0.12439412296467443, -0.25186360663397333),
            (100.0, 0.12069506864242146, -0.033817292957207681),
        ];
        for (xi, re, im) in cases {
            let v = bessel_k(2, c(0.0, xi)).unwrap();
            assert_close(v, c(re, im), 1e-10);
        }
    }

    #[test]
    fn recurrence_residual_on_rays() {
        // With K_1' = -(K_0 + K_2)/2 the relation K_1 - z K_1' = z K_2
        // becomes K_1 + z K_0/2 - z K_2/2 = 0; 100 samples per ray,
        // residual <= 1e-10 * |z K_2|.
        let ray_real = |t: f64| c(t, 0.0);
        let ray_imag = |t: f64| c(t * 1e-8, t); // arg just below pi/2
        for ray in [&ray_real as &dyn Fn(f64) -> Complex64, &ray_imag] {
            for i in 0..100 {
                let t = 0.05 * 10f64.powf(3.0 * (i as f64) / 99.0); // 0.05 .. 50
                let z = ray(t);
                let k0 = bessel_k(0, z).unwrap();
                let k1 = bessel_k(1, z).unwrap();
                let k2 = bessel_k(2, z).unwrap();
                let resid = (k1 + z * k0 * 0.5 - z * k2 * 0.5).norm();
                let bound = 1e-10 * (z * k2).norm();
                assert!(
                    resid <= bound.max(1e-280),
                    "z={z}: resid {resid:.3e} > bound {bound:.3e}"
                );
            }
        }
    }

    #[test]
    fn branch_continuity_on_switch_circle() {
        // series (or CF2) vs asymptotic agree at |z| = switch radius
        let ev = BesselEvaluator::default();
        let r = ev.switch_radius;
        for nu in 0..=2u32 {
            for deg in [0.0f64, 20.0, 45.0, 70.0, 89.9, 110.0, 150.0] {
                let th = deg.to_radians();
                let z = c(r * th.cos(), r * th.sin());
                let inner = if z.re > ev.cf2_re_min {
                    let (k0, k1) = cf2_k01(z).unwrap();
                    match nu {
                        0 => k0,
                        1 => k1,
                        _ => k0 + k1 * (2.0 / z),
                    }
                } else {
                    series_k(nu, z)
                };
                let outer = asymptotic_k(nu, z);
                let rel = (inner - outer).norm() / outer.norm();
                assert!(rel < 1e-8, "nu={nu} deg={deg}: branch mismatch {rel:.3e}");
            }
        }
    }

    #[test]
    fn series_cf2_boundary_consistency() {
        let ev = BesselEvaluator::default();
        for nu in 0..=2u32 {
            for im in [-9.0f64, -2.0, 0.0, 1.0, 4.0, 9.0] {
                let z = c(ev.cf2_re_min + 1e-9, im);
                if z.norm() > ev.switch_radius {
                    continue;
                }
                let a = series_k(nu, z);
                let (k0, k1) = cf2_k01(z).unwrap();
                let b = match nu {
                    0 => k0,
                    1 => k1,
                    _ => k0 + k1 * (2.0 / z),
                };
                let rel = (a - b).norm() / b.norm();
                assert!(rel < 1e-9, "nu={nu} z={z}: {rel:.3e}");
            }
        }
    }

    #[test]
    fn rejects_singular_origin() {
        assert!(bessel_k(2, c(0.0, 0.0)).is_err());
    }
}
