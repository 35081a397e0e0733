//! Class groups via reduced primitive binary quadratic forms.
//!
//! A positive definite form (a, b, c) of discriminant Δ = b² − 4ac < 0 is
//! reduced when |b| ≤ a ≤ c and b ≥ 0 if |b| = a or a = c. The reduced forms
//! biject with ideal classes; the attached ideal is aℤ + ((−b + √Δ)/2)ℤ.

use super::{FieldParams, FracIdeal};
use crate::exact::isqrt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadForm {
    pub a: i128,
    pub b: i128,
    pub c: i128,
}

impl QuadForm {
    pub fn disc(&self) -> i128 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    /// Gauss reduction of a positive definite form.
    pub fn reduce(&self) -> QuadForm {
        let mut f = self.normalize_b();
        while f.a > f.c || (f.a == f.c && f.b < 0) {
            f = QuadForm { a: f.c, b: -f.b, c: f.a }.normalize_b();
        }
        debug_assert!(f.is_reduced(), "reduction failed: {f:?}");
        debug_assert_eq!(f.disc(), self.disc());
        f
    }

    /// Shift b into (−a, a].
    fn normalize_b(&self) -> QuadForm {
        let QuadForm { a, b, .. } = *self;
        let two_a = 2 * a;
        let mut nb = b.rem_euclid(two_a);
        if nb > a {
            nb -= two_a;
        }
        let nc = (nb * nb - self.disc()) / (4 * a);
        QuadForm { a, b: nb, c: nc }
    }
}

/// All reduced primitive positive definite forms of discriminant `disc`,
/// principal form first, then sorted by (a, b).
pub fn reduced_forms(disc: i64) -> Vec<QuadForm> {
    assert!(disc < 0 && (disc.rem_euclid(4) == 0 || disc.rem_euclid(4) == 1));
    let disc = disc as i128;
    let amax = isqrt(-disc / 3);
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in (-a + 1)..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if a == c && b < 0 {
                continue;
            }
            if super::gcd3(a, b.abs(), c) != 1 {
                continue;
            }
            out.push(QuadForm { a, b, c });
        }
    }
    out.sort_by_key(|f| (f.a, f.b));
    debug_assert_eq!(out[0].a, 1);
    out
}

/// The ideal aℤ + ((−b + √Δ)/2)ℤ attached to a form.
pub fn ideal_of_form(field: &FieldParams, f: &QuadForm) -> FracIdeal {
    // √Δ = 2ω − t, so (−b + √Δ)/2 = (−b − t)/2 + ω.
    let t = field.omega_trace;
    debug_assert_eq!((f.b + t) % 2, 0, "form and discriminant parity mismatch");
    let x = (-f.b - t) / 2;
    FracIdeal::from_hnf(field, f.a, x.rem_euclid(f.a), 1)
}

/// The form of a primitive integral ideal aℤ + (x + ω)ℤ, oriented so that
/// `ideal_of_form` and `form_of_ideal` are mutually inverse on classes:
/// x + ω = (−b + √Δ)/2 gives b = −(2x + t).
pub fn form_of_ideal(field: &FieldParams, i: &FracIdeal) -> QuadForm {
    // The class ignores the denominator and the content c.
    let a = i.a / i.c;
    let x = i.b / i.c;
    let (t, n) = (field.omega_trace, field.omega_norm);
    let fb = -(2 * x + t);
    let fc = (x * x + t * x + n) / a;
    debug_assert_eq!((x * x + t * x + n) % a, 0, "HNF triple is not an ideal");
    QuadForm { a, b: fb, c: fc }
}
