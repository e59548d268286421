//! The Temperley-Lieb algebra TL3(d) over Z[A, A⁻¹] with `d = -A² - A⁻²`.
//!
//! Elements are stored in the basis `(1, U1, U2, U1U2, U2U1)`. Products are
//! driven by the left action of the two generators on that basis; every
//! entry of [`generator_times`] follows from `Ui² = d·Ui` and
//! `Ui·Uj·Ui = Ui` (|i - j| = 1).
//!
//! [`state_sum`] holds an independent Kauffman-bracket enumerator that never
//! touches this multiplication table.

pub mod state_sum;

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;

use crate::braid::{BraidLetter, BraidWord, Generator};
use crate::laurent::LaurentPoly;

pub use state_sum::{bracket_state_sum, bracket_state_sum_with_cap, OracleError, PlanarMatching};

/// Basis diagrams of TL3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    One,
    U1,
    U2,
    U1U2,
    U2U1,
}

impl Basis {
    pub const ALL: [Basis; 5] = [Basis::One, Basis::U1, Basis::U2, Basis::U1U2, Basis::U2U1];

    /// The basis element as a product of generators, left to right.
    pub fn generators(self) -> &'static [Generator] {
        match self {
            Basis::One => &[],
            Basis::U1 => &[Generator::S1],
            Basis::U2 => &[Generator::S2],
            Basis::U1U2 => &[Generator::S1, Generator::S2],
            Basis::U2U1 => &[Generator::S2, Generator::S1],
        }
    }
}

/// `U_g · basis = d^k · basis'`, returned as `(k, basis')`.
pub fn generator_times(g: Generator, basis: Basis) -> (u32, Basis) {
    use Basis::*;
    match (g, basis) {
        (Generator::S1, One) => (0, U1),
        (Generator::S1, U1) => (1, U1),
        (Generator::S1, U2) => (0, U1U2),
        (Generator::S1, U1U2) => (1, U1U2),
        (Generator::S1, U2U1) => (0, U1),
        (Generator::S2, One) => (0, U2),
        (Generator::S2, U1) => (0, U2U1),
        (Generator::S2, U2) => (1, U2),
        (Generator::S2, U1U2) => (0, U2),
        (Generator::S2, U2U1) => (1, U2U1),
    }
}

/// `left · right = d^k · basis`, by letting the generators of `left` act on
/// `right` from the innermost one outwards.
pub fn basis_product(left: Basis, right: Basis) -> (u32, Basis) {
    left.generators()
        .iter()
        .rev()
        .fold((0, right), |(k, b), &g| {
            let (dk, next) = generator_times(g, b);
            (k + dk, next)
        })
}

/// An element of TL3 with Laurent coefficients over `(1, U1, U2, U1U2, U2U1)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct TL3Element {
    pub w0: LaurentPoly,
    pub w1: LaurentPoly,
    pub w2: LaurentPoly,
    pub w12: LaurentPoly,
    pub w21: LaurentPoly,
}

impl TL3Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Basis::One)
    }

    pub fn basis(b: Basis) -> Self {
        Self::scaled_basis(LaurentPoly::one(), b)
    }

    pub fn scaled_basis(coefficient: LaurentPoly, b: Basis) -> Self {
        let mut x = Self::zero();
        *x.coefficient_mut(b) = coefficient;
        x
    }

    pub fn from_coefficients(coefficients: [LaurentPoly; 5]) -> Self {
        let [w0, w1, w2, w12, w21] = coefficients;
        Self { w0, w1, w2, w12, w21 }
    }

    pub fn coefficient(&self, b: Basis) -> &LaurentPoly {
        match b {
            Basis::One => &self.w0,
            Basis::U1 => &self.w1,
            Basis::U2 => &self.w2,
            Basis::U1U2 => &self.w12,
            Basis::U2U1 => &self.w21,
        }
    }

    pub fn coefficient_mut(&mut self, b: Basis) -> &mut LaurentPoly {
        match b {
            Basis::One => &mut self.w0,
            Basis::U1 => &mut self.w1,
            Basis::U2 => &mut self.w2,
            Basis::U1U2 => &mut self.w12,
            Basis::U2U1 => &mut self.w21,
        }
    }

    pub fn is_zero(&self) -> bool {
        Basis::ALL.iter().all(|&b| self.coefficient(b).is_zero())
    }

    pub fn scale(&self, factor: &LaurentPoly) -> Self {
        self.map(|c| c * factor)
    }

    fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            w0: f(&self.w0),
            w1: f(&self.w1),
            w2: f(&self.w2),
            w12: f(&self.w12),
            w21: f(&self.w21),
        }
    }

    /// `U_g · self`.
    pub fn generator_left_mul(&self, g: Generator) -> Self {
        let d = LaurentPoly::loop_value();
        let mut out = Self::zero();
        for b in Basis::ALL {
            let c = self.coefficient(b);
            if c.is_zero() {
                continue;
            }
            let (k, target) = generator_times(g, b);
            let term = if k == 0 { c.clone() } else { c * &d.pow(k) };
            *out.coefficient_mut(target) += term;
        }
        out
    }
}

/// Powers `d^0, d^1, d^2`; a product of two basis elements never gains more.
fn loop_powers() -> [LaurentPoly; 3] {
    let d = LaurentPoly::loop_value();
    let d2 = &d * &d;
    [LaurentPoly::one(), d, d2]
}

/// Algebra product `x · y`.
pub fn tl_mul(x: &TL3Element, y: &TL3Element) -> TL3Element {
    let powers = loop_powers();
    let mut out = TL3Element::zero();
    for bx in Basis::ALL {
        let cx = x.coefficient(bx);
        if cx.is_zero() {
            continue;
        }
        for by in Basis::ALL {
            let cy = y.coefficient(by);
            if cy.is_zero() {
                continue;
            }
            let (k, target) = basis_product(bx, by);
            let term = &(cx * cy) * &powers[k as usize];
            *out.coefficient_mut(target) += term;
        }
    }
    out
}

impl<'a> Mul<&'a TL3Element> for &TL3Element {
    type Output = TL3Element;

    fn mul(self, rhs: &'a TL3Element) -> TL3Element {
        tl_mul(self, rhs)
    }
}

impl<'a> Add<&'a TL3Element> for &TL3Element {
    type Output = TL3Element;

    fn add(self, rhs: &'a TL3Element) -> TL3Element {
        let mut out = self.clone();
        for b in Basis::ALL {
            *out.coefficient_mut(b) += rhs.coefficient(b);
        }
        out
    }
}

impl fmt::Display for TL3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})·1 + ({})·U1 + ({})·U2 + ({})·U1U2 + ({})·U2U1",
            self.w0, self.w1, self.w2, self.w12, self.w21
        )
    }
}

/// Image of one letter: `A·1 + A⁻¹·U` for a positive crossing and
/// `A⁻¹·1 + A·U` for a negative one, as `(identity weight, U weight)`
/// exponents of `A`.
fn letter_weights(letter: BraidLetter) -> (i64, i64) {
    if letter.inverse {
        (-1, 1)
    } else {
        (1, -1)
    }
}

/// `J(letter)`.
pub fn letter_image(letter: BraidLetter) -> TL3Element {
    let (id, u) = letter_weights(letter);
    let basis = match letter.generator {
        Generator::S1 => Basis::U1,
        Generator::S2 => Basis::U2,
    };
    let mut x = TL3Element::scaled_basis(LaurentPoly::monomial(1, id), Basis::One);
    *x.coefficient_mut(basis) = LaurentPoly::monomial(1, u);
    x
}

/// The Jones representation `J(b) = J(b_1)·J(b_2)···J(b_L)`.
///
/// Letters are applied from the right end of the word, each as a left
/// multiplication `(a·1 + c·U)·acc = a·acc + c·(U·acc)`.
pub fn jones_rep(b: &BraidWord) -> TL3Element {
    b.iter().rev().fold(TL3Element::one(), |acc, letter| {
        let (id, u) = letter_weights(letter);
        let moved = acc.generator_left_mul(letter.generator);
        let mut out = TL3Element::zero();
        for basis in Basis::ALL {
            let kept = acc.coefficient(basis).shift(id);
            let added = moved.coefficient(basis).shift(u);
            *out.coefficient_mut(basis) = kept + added;
        }
        out
    })
}

/// Markov trace: each basis diagram closes to `k` loops and contributes
/// `d^(k-1)`. The identity closes to 3 loops, `U1` and `U2` to 2, and the two
/// length-two words to 1.
pub fn markov_trace(x: &TL3Element) -> LaurentPoly {
    let [one, d, d2] = loop_powers();
    let singles = &x.w1 + &x.w2;
    let doubles = &x.w12 + &x.w21;
    &(&(&x.w0 * &d2) + &(&singles * &d)) + &(&doubles * &one)
}

/// `(-A³)^w` for integer `w`.
pub fn writhe_factor(writhe: i64) -> LaurentPoly {
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial(BigInt::from(sign), 3 * writhe)
}

/// The Jones polynomial of the closure of `b` in the variable `A`
/// (`t = A⁻⁴`): `(-A³)^writhe · Tr_M(J(b))`.
pub fn jones_exact(b: &BraidWord) -> LaurentPoly {
    &writhe_factor(b.writhe()) * &markov_trace(&jones_rep(b))
}
