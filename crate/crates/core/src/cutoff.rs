//! Smooth compactly supported cutoff functions.
//!
//! All cutoffs in the crate are built from the same fixed quintic
//! smoothstep so that runs are reproducible bit-for-bit.

use serde::{Deserialize, Serialize};

/// Quintic smoothstep: 0 at `t<=0`, 1 at `t>=1`, C^2 across the junctions.
pub fn smoothstep(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t >= 1.0 {
        1.0
    } else {
        t * t * t * (10.0 + t * (-15.0 + 6.0 * t))
    }
}

/// Radial cutoff used by the mollifier: 1 on `u <= 1`, 0 on `u >= 2`,
/// smooth monotone in between.
pub fn radial_cutoff(u: f64) -> f64 {
    1.0 - smoothstep(u - 1.0)
}

/// Symmetric plateau cutoff on the line: equal to 1 on
/// `[center - plateau, center + plateau]`, 0 outside
/// `[center - support, center + support]`, smoothstep edges.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SmoothCutoff {
    pub center: f64,
    pub plateau: f64,
    pub support: f64,
}

impl SmoothCutoff {
    pub fn new(center: f64, plateau: f64, support: f64) -> Self {
        assert!(plateau > 0.0 && support > plateau);
        Self {
            center,
            plateau,
            support,
        }
    }

    /// Plateau covering `[lo, hi]` with edge width `edge` on either side.
    pub fn covering(lo: f64, hi: f64, edge: f64) -> Self {
        let center = 0.5 * (lo + hi);
        let plateau = 0.5 * (hi - lo);
        Self::new(center, plateau, plateau + edge)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let d = (x - self.center).abs();
        if d <= self.plateau {
            1.0
        } else if d >= self.support {
            0.0
        } else {
            1.0 - smoothstep((d - self.plateau) / (self.support - self.plateau))
        }
    }

    pub fn support_interval(&self) -> (f64, f64) {
        (self.center - self.support, self.center + self.support)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoothstep_endpoints_and_monotonicity() {
        assert_eq!(smoothstep(-1.0), 0.0);
        assert_eq!(smoothstep(0.0), 0.0);
        assert_eq!(smoothstep(1.0), 1.0);
        assert_eq!(smoothstep(2.0), 1.0);
        let mut prev = 0.0;
        for i in 0..=100 {
            let v = smoothstep(i as f64 / 100.0);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn plateau_cutoff_shape() {
        let chi = SmoothCutoff::covering(1.2, 1.7, 0.05);
        assert_eq!(chi.eval(1.2), 1.0);
        assert_eq!(chi.eval(1.7), 1.0);
        assert_eq!(chi.eval(1.45), 1.0);
        assert_eq!(chi.eval(1.76), 0.0);
        assert_eq!(chi.eval(1.14), 0.0);
        assert!(chi.eval(1.725) > 0.0 && chi.eval(1.725) < 1.0);
    }
}
