//! The degree-2 representation of TL3 and the unitary braid gates built
//! from it.
//!
//! For `θ = -φ/4` the map `A ↦ e^{iθ}`, `U_j ↦ δ·E_j` with `δ = -2cos 2θ`
//! sends each braid generator to a 2x2 unitary whenever `|φ| ≤ 2π/3`. The
//! matrix trace misses the Markov trace only through the identity
//! coefficient, which on `J(b)` is the monomial `A^writhe`; that is what makes
//! [`classical_3sb`] a linear-time evaluator of the Jones polynomial.

use std::f64::consts::PI;
use std::ops::Mul;

use num_complex::Complex64;
use thiserror::Error;

use crate::braid::{BraidWord, Generator};
use crate::laurent::LaurentPoly;
use crate::tl3::TL3Element;

/// Largest `|φ|` for which the generator images are unitary.
pub const UNITARITY_LIMIT: f64 = 2.0 * PI / 3.0;

/// Slack accepted on `|φ|` at the region boundary.
pub const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum RepError {
    #[error("phi = {phi} lies outside the unitarity region |phi| <= 2pi/3")]
    OutsideUnitarityRegion { phi: f64 },
    #[error("phi must be finite, got {phi}")]
    NonFinitePhi { phi: f64 },
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A 2x2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gate2 {
    pub m: [[Complex64; 2]; 2],
}

impl Gate2 {
    pub const fn new(m: [[Complex64; 2]; 2]) -> Self {
        Self { m }
    }

    pub const fn identity() -> Self {
        Self::new([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn zero() -> Self {
        Self::new([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub fn diagonal(a: Complex64, b: Complex64) -> Self {
        Self::new([[a, ZERO], [ZERO, b]])
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: [Complex64; 2], v: [Complex64; 2]) -> Self {
        let mut m = [[ZERO; 2]; 2];
        for (r, row) in m.iter_mut().enumerate() {
            for (c, x) in row.iter_mut().enumerate() {
                *x = u[r] * v[c].conj();
            }
        }
        Self::new(m)
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.m[row][col]
    }

    pub fn trace(&self) -> Complex64 {
        self.m[0][0] + self.m[1][1]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.m;
        Self::new([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn add(&self, other: &Gate2) -> Self {
        let (a, b) = (&self.m, &other.m);
        Self::new([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }

    /// Largest entrywise modulus of `self - other`; NaN if any entry is NaN.
    pub fn max_abs_diff(&self, other: &Gate2) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..2 {
            for c in 0..2 {
                let d = (self.m[r][c] - other.m[r][c]).norm();
                if d > worst || d.is_nan() {
                    worst = d;
                }
            }
        }
        worst
    }

    /// `‖U·U† − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Gate2::identity())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

impl Mul for Gate2 {
    type Output = Gate2;

    fn mul(self, rhs: Gate2) -> Gate2 {
        let (a, b) = (&self.m, &rhs.m);
        Gate2::new([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// Everything derived from the evaluation angle `φ` (`t = e^{iφ}`).
#[derive(Debug, Clone, PartialEq)]
pub struct RepParams {
    pub phi: f64,
    pub theta: f64,
    pub alpha: Complex64,
    pub delta: f64,
    pub e1: [Complex64; 2],
    pub e2: [Complex64; 2],
    pub proj1: Gate2,
    pub proj2: Gate2,
    pub gate1: Gate2,
    pub gate2: Gate2,
    pub gate1_inv: Gate2,
    pub gate2_inv: Gate2,
}

impl RepParams {
    /// True when `|φ|` sits on the edge of the region, where `δ = -1` and the
    /// two projectors coincide.
    pub fn on_boundary(&self) -> bool {
        (self.phi.abs() - UNITARITY_LIMIT).abs() <= BOUNDARY_SLACK
    }

    pub fn projector(&self, g: Generator) -> &Gate2 {
        match g {
            Generator::S1 => &self.proj1,
            Generator::S2 => &self.proj2,
        }
    }

    pub fn gate(&self, g: Generator, inverse: bool) -> &Gate2 {
        match (g, inverse) {
            (Generator::S1, false) => &self.gate1,
            (Generator::S1, true) => &self.gate1_inv,
            (Generator::S2, false) => &self.gate2,
            (Generator::S2, true) => &self.gate2_inv,
        }
    }

    /// `δ² − 2`, the coefficient of the identity-coefficient correction.
    pub fn correction_coefficient(&self) -> f64 {
        self.delta * self.delta - 2.0
    }
}

pub fn make_params(phi: f64) -> Result<RepParams, RepError> {
    if !phi.is_finite() {
        return Err(RepError::NonFinitePhi { phi });
    }
    if phi.abs() > UNITARITY_LIMIT + BOUNDARY_SLACK {
        return Err(RepError::OutsideUnitarityRegion { phi });
    }

    let theta = -phi / 4.0;
    let delta = -2.0 * (2.0 * theta).cos();
    let alpha = Complex64::from_polar(1.0, theta);
    let alpha_inv = alpha.conj();

    let overlap = 1.0 / delta;
    let e1 = [ONE, ZERO];
    let e2 = [
        Complex64::new(overlap, 0.0),
        Complex64::new((1.0 - overlap * overlap).max(0.0).sqrt(), 0.0),
    ];
    let proj1 = Gate2::outer(e1, e1);
    let proj2 = Gate2::outer(e2, e2);

    let id = Gate2::identity();
    let gate = |proj: &Gate2| id.scale(alpha).add(&proj.scale(alpha_inv * delta));
    let gate_inv = |proj: &Gate2| id.scale(alpha_inv).add(&proj.scale(alpha * delta));

    Ok(RepParams {
        phi,
        theta,
        alpha,
        delta,
        e1,
        e2,
        gate1: gate(&proj1),
        gate2: gate(&proj2),
        gate1_inv: gate_inv(&proj1),
        gate2_inv: gate_inv(&proj2),
        proj1,
        proj2,
    })
}

/// `U(b) = ∏ G_{j(k)}^{ε(k)}` in word order.
pub fn compile_gate(b: &BraidWord, p: &RepParams) -> Gate2 {
    b.iter()
        .fold(Gate2::identity(), |acc, l| acc * *p.gate(l.generator, l.inverse))
}

/// `(−e^{i·step})^w` with the sign taken from the parity of `w` and the
/// phase formed from the exact integer.
pub fn signed_phase_power(step: f64, w: i64) -> Complex64 {
    let sign = if w.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Complex64::from_polar(sign, step * w as f64)
}

/// Combines a trace of `U(b)` with the writhe bookkeeping:
/// `(−α³)^W · trace + (δ² − 2)·(−α⁴)^W`.
pub fn jones_from_trace(trace: Complex64, writhe: i64, p: &RepParams) -> Complex64 {
    let framing = signed_phase_power(3.0 * p.theta, writhe);
    let correction = signed_phase_power(4.0 * p.theta, writhe) * p.correction_coefficient();
    framing * trace + correction
}

/// `V(e^{iφ})` for the closure of `b` in `O(L)` 2x2 products.
pub fn classical_3sb(b: &BraidWord, p: &RepParams) -> Complex64 {
    jones_from_trace(compile_gate(b, p).trace(), b.writhe(), p)
}

/// `Φ_α(x)`: coefficients evaluated at `α`, `U_j ↦ δE_j`.
pub fn rep_of_tl3(x: &TL3Element, p: &RepParams) -> Gate2 {
    let eval = |c: &LaurentPoly| {
        c.eval_at(p.alpha)
            .expect("alpha lies on the unit circle and is never zero")
    };
    let d = Complex64::new(p.delta, 0.0);
    let d2 = d * d;
    let e12 = p.proj1 * p.proj2;
    let e21 = p.proj2 * p.proj1;

    Gate2::identity()
        .scale(eval(&x.w0))
        .add(&p.proj1.scale(eval(&x.w1) * d))
        .add(&p.proj2.scale(eval(&x.w2) * d))
        .add(&e12.scale(eval(&x.w12) * d2))
        .add(&e21.scale(eval(&x.w21) * d2))
}
