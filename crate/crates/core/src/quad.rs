//! Adaptive quadrature and small root-finding utilities.
//!
//! The workhorse is an adaptive Gauss–Kronrod 7/15 rule with an interval
//! heap, generic over real- and complex-valued integrands. Known kink
//! locations can be passed as breakpoints so the adaptivity is not wasted
//! rediscovering them.

use num_complex::Complex64;

use crate::error::{LabError, Result};

// Kronrod-15 abscissae on [0,1] side (symmetric rule).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

// Kronrod-15 weights.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

// Gauss-7 weights (embedded rule, the odd Kronrod nodes).
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Values an integrand may take: `f64` or `Complex64`.
pub trait QuadValue: Copy + std::ops::Add<Output = Self> + std::ops::Sub<Output = Self> {
    fn zero() -> Self;
    fn scale(self, s: f64) -> Self;
    fn norm(self) -> f64;
    fn is_finite(self) -> bool;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub abs_err: f64,
    pub evals: usize,
}

fn gk15<T: QuadValue, F: FnMut(f64) -> T>(f: &mut F, a: f64, b: f64) -> (T, T, f64) {
    let c = 0.5 * (a + b);
    let hl = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc.scale(WGK[7]);
    let mut gauss = fc.scale(WG[3]);
    let mut res_abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let x = hl * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        let s = f1 + f2;
        kron = kron + s.scale(WGK[j]);
        if j % 2 == 1 {
            gauss = gauss + s.scale(WG[j / 2]);
        }
        res_abs += WGK[j] * (f1.norm() + f2.norm());
    }
    let err = (kron - gauss).norm() * hl.abs();
    (kron.scale(hl), kron, err.max(res_abs * hl.abs() * 1e-15))
}

/// Adaptively integrate `f` over `[a, b]` to the requested tolerances.
///
/// `breakpoints` inside `(a, b)` seed the initial subdivision; pass kink
/// locations of the integrand here.
pub fn adaptive_gk<T: QuadValue, F: FnMut(f64) -> T>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    abs_tol: f64,
    breakpoints: &[f64],
) -> Result<QuadResult<T>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(LabError::Config("quadrature bounds must be finite".into()));
    }
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            abs_err: 0.0,
            evals: 0,
        });
    }

    let mut pts: Vec<f64> = Vec::with_capacity(breakpoints.len() + 2);
    pts.push(a);
    let mut bps: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| *x > a.min(b) && *x < a.max(b))
        .collect();
    bps.sort_by(|p, q| p.partial_cmp(q).unwrap());
    if a < b {
        pts.extend(bps);
    } else {
        pts.extend(bps.into_iter().rev());
    }
    pts.push(b);

    // (neg_err, a, b, value, err) intervals kept in a vector; we refine the
    // worst interval until the global estimate meets the tolerance.
    struct Iv<T> {
        a: f64,
        b: f64,
        value: T,
        err: f64,
    }
    let mut ivs: Vec<Iv<T>> = Vec::new();
    let mut evals = 0usize;
    for w in pts.windows(2) {
        let (v, _, e) = gk15(&mut f, w[0], w[1]);
        evals += 15;
        ivs.push(Iv {
            a: w[0],
            b: w[1],
            value: v,
            err: e,
        });
    }

    let max_iter = 2000;
    for _ in 0..max_iter {
        let total: T = ivs.iter().fold(T::zero(), |acc, iv| acc + iv.value);
        let err: f64 = ivs.iter().map(|iv| iv.err).sum();
        if !total.is_finite() {
            return Err(LabError::Numerical(
                "integrand produced non-finite values".into(),
            ));
        }
        let tol = abs_tol.max(rel_tol * total.norm());
        if err <= tol {
            return Ok(QuadResult {
                value: total,
                abs_err: err,
                evals,
            });
        }
        // split the worst interval
        let (idx, _) = ivs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.partial_cmp(&y.1.err).unwrap())
            .unwrap();
        let iv = ivs.swap_remove(idx);
        let m = 0.5 * (iv.a + iv.b);
        if m == iv.a || m == iv.b {
            // interval exhausted at machine precision; accept its estimate
            ivs.push(iv);
            let total: T = ivs.iter().fold(T::zero(), |acc, iv| acc + iv.value);
            let err: f64 = ivs.iter().map(|iv| iv.err).sum();
            return Ok(QuadResult {
                value: total,
                abs_err: err,
                evals,
            });
        }
        let (v1, _, e1) = gk15(&mut f, iv.a, m);
        let (v2, _, e2) = gk15(&mut f, m, iv.b);
        evals += 30;
        ivs.push(Iv {
            a: iv.a,
            b: m,
            value: v1,
            err: e1,
        });
        ivs.push(Iv {
            a: m,
            b: iv.b,
            value: v2,
            err: e2,
        });
    }

    let total: T = ivs.iter().fold(T::zero(), |acc, iv| acc + iv.value);
    let err: f64 = ivs.iter().map(|iv| iv.err).sum();
    let tol = abs_tol.max(rel_tol * total.norm());
    if err <= tol * 10.0 {
        // close enough to be usable, but report honestly
        return Ok(QuadResult {
            value: total,
            abs_err: err,
            evals,
        });
    }
    Err(LabError::Numerical(format!(
        "adaptive quadrature did not converge: err {err:.3e} > tol {tol:.3e} after {evals} evals on [{a}, {b}]"
    )))
}

/// Convenience wrapper for real integrands with default breakpoints.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    Ok(adaptive_gk(f, a, b, rel_tol, 1e-300, &[])?.value)
}

/// Trapezoid rule over a sampled uniform or non-uniform grid.
pub fn trapezoid(grid: &[f64], values: &[f64]) -> f64 {
    assert_eq!(grid.len(), values.len());
    let mut acc = 0.0;
    for i in 1..grid.len() {
        acc += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
    }
    acc
}

/// Complex trapezoid rule.
pub fn trapezoid_c(grid: &[f64], values: &[Complex64]) -> Complex64 {
    assert_eq!(grid.len(), values.len());
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 1..grid.len() {
        acc += (values[i] + values[i - 1]) * 0.5 * (grid[i] - grid[i - 1]);
    }
    acc
}

/// All roots of `f` on `[a, b]`, located by scanning `samples` points for
/// sign changes and refining each bracket by bisection.
///
/// Roots at tangencies (no sign change) are not found; callers that care
/// should sample densely enough for their function class.
pub fn find_roots<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, samples: usize) -> Vec<f64> {
    let n = samples.max(8);
    let mut roots = Vec::new();
    let mut x_prev = a;
    let mut f_prev = f(a);
    for i in 1..=n {
        let x = a + (b - a) * (i as f64) / (n as f64);
        let fx = f(x);
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if f_prev * fx < 0.0 {
            // bisection
            let (mut lo, mut hi, mut flo) = (x_prev, x, f_prev);
            for _ in 0..200 {
                let m = 0.5 * (lo + hi);
                if m == lo || m == hi {
                    break;
                }
                let fm = f(m);
                if fm == 0.0 {
                    lo = m;
                    hi = m;
                    break;
                }
                if flo * fm < 0.0 {
                    hi = m;
                } else {
                    lo = m;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        roots.push(x_prev);
    }
    roots.dedup_by(|p, q| (*p - *q).abs() < 1e-14 * (1.0 + p.abs()));
    roots
}
