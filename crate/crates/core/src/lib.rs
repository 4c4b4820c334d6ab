//! Numerical laboratory for resonances of perturbed semiclassical Dirac
//! operators.
//!
//! The crate assembles, around a pair of decaying scalar potentials
//! `(v1, v2)`, the computational objects that link the phase-space geometry
//! of the symbol eigenvalues `v(x) ± <xi>` to complex eigenvalues of the
//! dilated operator:
//!
//! * [`potentials`] — decaying scalar potentials, thresholds, decay
//!   verification and the mollified small-potential construction;
//! * [`phasespace`] — level-set volumes, the distributions `nu`, `mu`,
//!   `rho`, `omega` and the convolution identity `omega = ±phi * mu`;
//! * [`symbols`] / [`bessel`] — the Fourier transforms of the split
//!   convolution kernels via modified Bessel functions, with decay and
//!   ellipticity certificates;
//! * [`fbi`] — FBI transform of sampled 1-D distributions and the
//!   exponential-decay classifier for analytic wavefront detection;
//! * [`dirac`] — complex-dilated radial Dirac channel matrices, theta-stable
//!   eigenvalues (resonances) and semiclassical count scaling;
//! * [`traces`] — spectral traces of the discretized operators against the
//!   phase-space trace term, plus the local trace experiment;
//! * [`experiment`] — batch experiment configs, deterministic artifact
//!   output and manifest verification (the engine behind the `diraclab`
//!   binary).

pub mod bessel;
pub mod cutoff;
pub mod dirac;
pub mod error;
pub mod experiment;
pub mod fbi;
pub mod fit;
pub mod phasespace;
pub mod potentials;
pub mod quad;
pub mod symbols;
pub mod traces;

mod eig;

pub use error::{LabError, Result};
pub use potentials::{ScalarPotential, Thresholds};
