//! Assembly of the predicted leading constant c_i and exponent b_i, done
//! two ways and checked for exact symbolic agreement:
//!
//! * framework: c_fin = ρ^rk · ∏(1 − 1/q)^rk τ_𝔭 and
//!   c_∞ = |Δ|^{−1} Σ_A α_A · τ_A,∞ with τ_A,∞ = c_v²;
//! * closed form: ρ^rk/|Δ| · (π²/18 or 11π²/18) · Θ₀ over imaginary
//!   quadratic fields, and Θ₀/18 or 11Θ₀/18 over ℚ.
//!
//! The Euler factor identity (1 − 1/q)^rk·(1 + (6−#D_i)/q) = θ_i(q) makes
//! the two products termwise equal, so only the symbolic prefactors need
//! comparison.

use super::polytope::Polytope;
use super::{euler_product, tamagawa_p, theta_closed, EulerProductResult};
use crate::exact::{rat, QInterval, Rational, SymbolicReal};
use crate::qfield::FieldParams;
use crate::surface::Boundary;

/// The five archimedean volume factors, one per maximal Clemens face,
/// keyed by the component pair of the face.
pub fn alpha(boundary: Boundary, face: (usize, usize)) -> Option<Rational> {
    let p = alpha_polytope(boundary, face)?;
    Some(p.volume().expect("alpha polytopes are bounded"))
}

/// The inequality systems of the α volumes (≥-constraints negated).
pub fn alpha_polytope(boundary: Boundary, face: (usize, usize)) -> Option<Polytope> {
    let p = match (boundary, face) {
        (Boundary::AboveSingularity, (1, 2)) => Polytope::with_nonneg(
            4,
            vec![(vec![1, 0, -3, -2], -1), (vec![0, 1, 2, 1], 1), (vec![1, 0, 1, 1], 1)],
        ),
        (Boundary::AboveSingularity, (2, 3)) => Polytope::with_nonneg(
            4,
            vec![(vec![1, 1, -1, -1], 0), (vec![-1, 0, 3, 2], 1), (vec![1, 0, 1, 1], 1)],
        ),
        (Boundary::AboveLine, (1, 2)) => Polytope::with_nonneg(
            3,
            vec![(vec![0, -3, -2], -1), (vec![1, 2, 1], 1), (vec![0, 1, 1], 1)],
        ),
        (Boundary::AboveLine, (2, 3)) => Polytope::with_nonneg(
            3,
            vec![(vec![0, 3, 2], 1), (vec![1, -1, -1], 0), (vec![0, 1, 1], 1)],
        ),
        (Boundary::AboveLine, (1, 4)) => Polytope::with_nonneg(
            3,
            vec![(vec![2, 1, 0], 1), (vec![-1, -2, -1], -1), (vec![0, 1, 1], 1)],
        ),
        _ => return None,
    };
    Some(p)
}

/// The combined region whose volume is Σ_A α_A: coordinates (t₄, t₅, t₆, t₈)
/// above the singularity, (t₅, t₆, t₈) above the line.
pub fn alpha_total_polytope(boundary: Boundary) -> Polytope {
    match boundary {
        Boundary::AboveSingularity => Polytope::with_nonneg(
            4,
            vec![(vec![0, 1, 2, 1], 1), (vec![1, 0, 1, 1], 1), (vec![1, 1, -1, -1], 0)],
        ),
        Boundary::AboveLine => Polytope::with_nonneg(
            3,
            vec![(vec![0, 1, 1], 1), (vec![1, -1, -1], 0), (vec![2, 1, 0], 1)],
        ),
    }
}

#[derive(Clone, Debug)]
pub struct Prediction {
    pub d: i64,
    pub boundary: Boundary,
    /// Exponent of the logarithm plus one: N ~ c·B·(log B)^{b−1}.
    pub b: u32,
    pub rho: SymbolicReal,
    /// Θ₀ enclosure with its truncation data.
    pub euler: EulerProductResult,
    /// (face, α_A) pairs and their sum.
    pub alpha_parts: Vec<((usize, usize), Rational)>,
    pub alpha_sum: Rational,
    /// The renormalized residue volume τ_A,∞ shared by all maximal faces.
    pub tau_infinity: SymbolicReal,
    /// c without the Euler product: ρ^rk · |Δ|^{−1} · Σα · τ_∞.
    pub c_symbolic: SymbolicReal,
    /// Numeric enclosure of the full constant c.
    pub c: QInterval,
}

impl Prediction {
    /// Enclosure of the main term c·B·(log B)^{b−1}.
    pub fn main_term(&self, bound: &Rational) -> QInterval {
        let logb = crate::exact::ln_interval(bound);
        self.c.mul_rat(bound).mul(&logb.powi(self.b - 1))
    }
}

/// The default residue-measure normalization c_v² at the archimedean place:
/// (2π)² for the complex place of an imaginary quadratic field, 2² over ℚ.
pub fn default_tau_infinity(field: &FieldParams) -> SymbolicReal {
    if field.is_rational() {
        SymbolicReal::rational(rat(4, 1))
    } else {
        SymbolicReal::new(rat(4, 1), 2, 0, 1)
    }
}

/// Assembles the prediction and asserts that the framework and closed-form
/// routes agree exactly in the symbolic part.
pub fn predict(field: &FieldParams, boundary: Boundary, truncation: i64) -> Prediction {
    let p = predict_with_tau(field, boundary, truncation, default_tau_infinity(field));
    // closed-form route for the same constant
    let rk = boundary.picard_rank();
    let closed_coeff = match boundary {
        Boundary::AboveSingularity => rat(1, 18),
        Boundary::AboveLine => rat(11, 18),
    };
    let closed = if field.is_rational() {
        SymbolicReal::rational(closed_coeff)
    } else {
        // ρ^rk/|Δ| · (π²/18 or 11π²/18)
        let disc = field.disc.unsigned_abs() as i64;
        field
            .rho
            .pow(rk)
            .mul(&SymbolicReal::new(closed_coeff, 2, 0, 1))
            .mul_rat(&(rat(1, disc)))
    };
    assert_eq!(p.c_symbolic, closed, "framework and closed-form prefactors differ");
    // termwise identity of the two Euler products for small norms
    for q in [2i128, 3, 4, 5, 7, 9, 11, 13, 25, 49, 121, 997] {
        let framework = (rat(1, 1) - rat(1, q as i64)).pow(rk as i32)
            * tamagawa_p(boundary, q);
        assert_eq!(framework, theta_closed(boundary, q));
    }
    p
}

/// Framework assembly with an explicit archimedean normalization, for
/// sensitivity checks; performs no closed-form comparison.
pub fn predict_with_tau(
    field: &FieldParams,
    boundary: Boundary,
    truncation: i64,
    tau_infinity: SymbolicReal,
) -> Prediction {
    let rk = boundary.picard_rank();
    let b = boundary.log_power();
    let euler = euler_product(field, boundary, truncation);
    let faces = boundary.clemens_max_faces();
    let alpha_parts: Vec<((usize, usize), Rational)> = faces
        .iter()
        .map(|&face| (face, alpha(boundary, face).expect("maximal face")))
        .collect();
    let alpha_sum: Rational = alpha_parts.iter().map(|(_, v)| v.clone()).sum();
    // the α parts tile the combined region
    debug_assert_eq!(alpha_sum, alpha_total_polytope(boundary).volume().unwrap());

    let disc = field.disc.unsigned_abs() as i64;
    let c_symbolic = field
        .rho
        .pow(rk)
        .mul_rat(&(rat(1, disc)))
        .mul_rat(&alpha_sum)
        .mul(&tau_infinity);
    let c = c_symbolic.to_interval().mul(&euler.full).shrink(160);
    Prediction {
        d: field.d,
        boundary,
        b,
        rho: field.rho.clone(),
        euler,
        alpha_parts,
        alpha_sum,
        tau_infinity,
        c_symbolic,
        c,
    }
}
