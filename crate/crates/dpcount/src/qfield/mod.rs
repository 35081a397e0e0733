//! Exact arithmetic in ℚ and imaginary quadratic fields K = ℚ(√d):
//! elements, fractional ideals in Hermite normal form, class groups via
//! reduced binary quadratic forms, prime splitting, and bounded-norm
//! lattice enumeration.
//!
//! ℚ is encoded as `d = 0`; the ideal machinery degenerates to positive
//! rationals so that the counting layers above run on one code path.

mod class_group;
mod enumerate;
mod ideal;
mod primes;

pub use class_group::QuadForm;
pub use ideal::FracIdeal;
pub use primes::{sieve_primes, PrimeIdeal, Splitting};

use crate::exact::{rat_int, Rational, SymbolicReal};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("d = {0} is not squarefree")]
    NotSquarefree(i64),
    #[error("d = {0} must be ≤ 0 (0 encodes the rationals)")]
    PositiveD(i64),
}

/// An algebraic integer a + b·ω in the fixed integral basis (1, ω).
///
/// For ℚ the second coordinate is always zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgInt {
    pub x: i128,
    pub y: i128,
}

impl AlgInt {
    pub const ZERO: AlgInt = AlgInt { x: 0, y: 0 };
    pub const ONE: AlgInt = AlgInt { x: 1, y: 0 };

    pub fn new(x: i128, y: i128) -> Self {
        AlgInt { x, y }
    }

    pub fn from_int(x: i128) -> Self {
        AlgInt { x, y: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn neg(&self) -> AlgInt {
        AlgInt { x: -self.x, y: -self.y }
    }
}

/// A field element num/den with num an `AlgInt` and den a positive integer,
/// kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Qelt {
    pub num: AlgInt,
    pub den: i128,
}

impl Qelt {
    pub const ZERO: Qelt = Qelt { num: AlgInt::ZERO, den: 1 };
    pub const ONE: Qelt = Qelt { num: AlgInt::ONE, den: 1 };

    pub fn new(num: AlgInt, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        if den == 1 {
            return Qelt { num, den: 1 };
        }
        let (num, den) = if den < 0 { (num.neg(), -den) } else { (num, den) };
        let g = gcd3(num.x.abs(), num.y.abs(), den);
        Qelt { num: AlgInt::new(num.x / g, num.y / g), den: den / g }
    }

    pub fn from_int(x: i128) -> Self {
        Qelt { num: AlgInt::from_int(x), den: 1 }
    }

    pub fn integral(num: AlgInt) -> Self {
        Qelt { num, den: 1 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    pub fn neg(&self) -> Qelt {
        Qelt { num: self.num.neg(), den: self.den }
    }
}

pub(crate) fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    gcd_i128(gcd_i128(a, b), c)
}

/// The kind of base field: the rationals or an imaginary quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldParams {
    /// Squarefree d ≤ 0; 0 encodes ℚ.
    pub d: i64,
    /// Field discriminant (1 for ℚ).
    pub disc: i64,
    /// Trace and norm of ω: ω² = t·ω − n. Both zero for ℚ.
    pub omega_trace: i128,
    pub omega_norm: i128,
    /// Number of roots of unity ω_K ∈ {2, 4, 6}.
    pub num_units: u32,
    /// The full unit group, listed explicitly.
    pub units: Vec<AlgInt>,
    pub class_number: u32,
    /// One integral ideal per class, the ring of integers first; the ideal
    /// attached to the reduced form of minimal a in each class.
    pub class_reps: Vec<FracIdeal>,
    /// The reduced primitive forms of discriminant Δ, same order as
    /// `class_reps`.
    pub reduced_forms: Vec<QuadForm>,
    /// ρ_K = 2^{s₁}(2π)^{s₂} h_K R_K / (ω_K √|Δ|), kept symbolic.
    pub rho: SymbolicReal,
}

/// Builds the arithmetic context for ℚ (d = 0) or K = ℚ(√d), d < 0 squarefree.
pub fn make_field(d: i64) -> Result<FieldParams, FieldError> {
    if d > 0 {
        return Err(FieldError::PositiveD(d));
    }
    if d != 0 && !is_squarefree(-d) {
        return Err(FieldError::NotSquarefree(d));
    }
    if d == 0 {
        return Ok(FieldParams {
            d: 0,
            disc: 1,
            omega_trace: 0,
            omega_norm: 0,
            num_units: 2,
            units: vec![AlgInt::ONE, AlgInt::ONE.neg()],
            class_number: 1,
            class_reps: vec![FracIdeal::rational_ideal(1, 1)],
            reduced_forms: Vec::new(),
            rho: SymbolicReal::one(),
        });
    }

    let dm4 = d.rem_euclid(4);
    let (disc, omega_trace, omega_norm) = if dm4 == 1 {
        (d, 1i128, ((1 - d as i128) / 4))
    } else {
        (4 * d, 0i128, -(d as i128))
    };

    let num_units: u32 = match d {
        -1 => 4,
        -3 => 6,
        _ => 2,
    };
    let field_stub = FieldParams {
        d,
        disc,
        omega_trace,
        omega_norm,
        num_units,
        units: Vec::new(),
        class_number: 0,
        class_reps: Vec::new(),
        reduced_forms: Vec::new(),
        rho: SymbolicReal::one(),
    };
    let units = unit_group(&field_stub);
    debug_assert_eq!(units.len() as u32, num_units);

    let forms = class_group::reduced_forms(disc);
    let class_number = forms.len() as u32;
    let class_reps: Vec<FracIdeal> =
        forms.iter().map(|f| class_group::ideal_of_form(&field_stub, f)).collect();

    let rho = SymbolicReal::new(
        rat_int(2 * class_number as i128) / rat_int(num_units as i128),
        1,
        -1,
        disc.unsigned_abs() as i64,
    );

    Ok(FieldParams {
        units,
        class_number,
        class_reps,
        reduced_forms: forms,
        rho,
        ..field_stub
    })
}

fn is_squarefree(mut n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

fn unit_group(field: &FieldParams) -> Vec<AlgInt> {
    let mut units = Vec::new();
    for x in -1i128..=1 {
        for y in -1i128..=1 {
            let u = AlgInt::new(x, y);
            if !u.is_zero() && field.norm_int(u) == 1 {
                units.push(u);
            }
        }
    }
    units.sort();
    units
}

impl FieldParams {
    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn ring_of_integers(&self) -> FracIdeal {
        self.class_reps[0].clone()
    }

    // ---- element arithmetic -------------------------------------------

    pub fn add(&self, a: AlgInt, b: AlgInt) -> AlgInt {
        AlgInt::new(a.x + b.x, a.y + b.y)
    }

    pub fn sub(&self, a: AlgInt, b: AlgInt) -> AlgInt {
        AlgInt::new(a.x - b.x, a.y - b.y)
    }

    pub fn mul(&self, a: AlgInt, b: AlgInt) -> AlgInt {
        AlgInt::new(
            a.x * b.x - self.omega_norm * a.y * b.y,
            a.x * b.y + a.y * b.x + self.omega_trace * a.y * b.y,
        )
    }

    pub fn conj(&self, a: AlgInt) -> AlgInt {
        AlgInt::new(a.x + self.omega_trace * a.y, -a.y)
    }

    /// The field norm as a nonnegative integer (for ℚ: |a|).
    pub fn norm_int(&self, a: AlgInt) -> i128 {
        if self.is_rational() {
            debug_assert_eq!(a.y, 0, "rational element with ω-component");
            a.x.abs()
        } else {
            a.x * a.x + self.omega_trace * a.x * a.y + self.omega_norm * a.y * a.y
        }
    }

    pub fn is_unit_int(&self, a: AlgInt) -> bool {
        self.norm_int(a) == 1
    }

    // ---- Qelt arithmetic ----------------------------------------------

    pub fn q_add(&self, a: Qelt, b: Qelt) -> Qelt {
        Qelt::new(
            self.add(
                self.scale(a.num, b.den),
                self.scale(b.num, a.den),
            ),
            a.den * b.den,
        )
    }

    pub fn q_sub(&self, a: Qelt, b: Qelt) -> Qelt {
        self.q_add(a, b.neg())
    }

    pub fn q_mul(&self, a: Qelt, b: Qelt) -> Qelt {
        Qelt::new(self.mul(a.num, b.num), a.den * b.den)
    }

    /// Exact division in K; the divisor must be nonzero.
    pub fn q_div(&self, a: Qelt, b: Qelt) -> Qelt {
        assert!(!b.is_zero(), "division by zero");
        if self.is_rational() {
            return Qelt::new(self.scale(a.num, b.den), a.den * b.num.x);
        }
        let nb = self.norm_int(b.num);
        let num = self.mul(a.num, self.conj(b.num));
        Qelt::new(self.scale(num, b.den), a.den * nb)
    }

    fn scale(&self, a: AlgInt, k: i128) -> AlgInt {
        AlgInt::new(a.x * k, a.y * k)
    }

    /// ‖·‖ of a field element: the field norm, as an exact rational.
    pub fn q_norm(&self, a: Qelt) -> Rational {
        if self.is_rational() {
            rat_int(self.norm_int(a.num)) / rat_int(a.den)
        } else {
            rat_int(self.norm_int(a.num)) / rat_int(a.den * a.den)
        }
    }

    pub fn q_is_unit(&self, a: Qelt) -> bool {
        a.is_integral() && self.is_unit_int(a.num)
    }

    /// Quotient x/y in 𝒪_K, or `None` when y ∤ x. Panics on y = 0.
    pub fn exact_divide(&self, x: AlgInt, y: AlgInt) -> Option<AlgInt> {
        assert!(!y.is_zero(), "division by zero");
        let q = self.q_div(Qelt::integral(x), Qelt::integral(y));
        q.is_integral().then_some(q.num)
    }

    /// Norm of a nonzero fractional ideal as an exact rational.
    pub fn ideal_norm(&self, i: &FracIdeal) -> Rational {
        if self.is_rational() {
            rat_int(i.a) / rat_int(i.den)
        } else {
            rat_int(i.a * i.c) / rat_int(i.den * i.den)
        }
    }

    /// Index of the class of `I` in `class_reps`.
    pub fn class_of(&self, i: &FracIdeal) -> usize {
        if self.is_rational() {
            return 0;
        }
        let form = class_group::form_of_ideal(self, i);
        let reduced = form.reduce();
        self.reduced_forms
            .iter()
            .position(|f| *f == reduced)
            .expect("reduced form of an ideal is always in the class list")
    }

    /// Class-group product as indices into `class_reps`.
    pub fn class_mul(&self, a: usize, b: usize) -> usize {
        let prod = self.ideal_product(&self.class_reps[a], &self.class_reps[b]);
        self.class_of(&prod)
    }
}
