//! Integral points on twisted universal torsors of the desingularised
//! surface, and the ω_K⁶-to-1 correspondence with the direct count.
//!
//! A torsor point is a 9-tuple η with η_j in the fractional ideal 𝒪_j
//! attached to a twist 𝐂 = (C₀, …, C₅), subject to
//!
//!   η₁η₄²η₇ + η₃η₆²η₈ + η₅η₉ = 0,
//!
//! pairwise coprimality of the ideals I_j = η_j𝒪_j⁻¹ for non-adjacent
//! curve pairs, and triviality (or unit) conditions along the boundary.

mod enumerate;
mod kernel_q;

pub use enumerate::{for_each_torsor_point, par_check_torsor_points};

use crate::exact::{rat_int, Rational};
use crate::geometry::{self, coprimality_pairs};
use crate::qfield::{AlgInt, FieldParams, FracIdeal, Qelt};
use crate::surface::{Boundary, CountResult, Method, SurfacePoint};
use num::Signed;
use rayon::prelude::*;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TorsorError {
    #[error("height bound must be nonnegative")]
    NegativeBound,
    #[error("coordinate η{0} must be nonzero")]
    ZeroCoordinate(usize),
}

/// Why a tuple fails to be an integral point on a twisted torsor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipFailure {
    /// η_j is not a unit although E_j lies in the boundary (nicer mode).
    NotUnit(usize),
    /// I_j ≠ 𝒪_K although E_j lies in the boundary (lemma mode).
    BoundaryIdealNotTrivial(usize),
    /// η_j does not lie in the lattice 𝒪_j.
    NotInLattice(usize),
    TorsorEquation,
    /// I_j + I_k ≠ 𝒪_K for a non-adjacent pair.
    NotCoprime(usize, usize),
}

impl std::fmt::Display for MembershipFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MembershipFailure::NotUnit(j) => write!(f, "η{j} not a unit"),
            MembershipFailure::BoundaryIdealNotTrivial(j) => write!(f, "I{j} not the unit ideal"),
            MembershipFailure::NotInLattice(j) => write!(f, "η{j} not in its module"),
            MembershipFailure::TorsorEquation => write!(f, "torsor equation violated"),
            MembershipFailure::NotCoprime(j, k) => write!(f, "I{j} and I{k} not coprime"),
        }
    }
}

/// Which parameterisation a membership test refers to: the one demanding
/// trivial boundary ideals for arbitrary twists, or the one demanding unit
/// boundary coordinates for the restricted twist family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipMode {
    Lemma,
    Nicer,
}

/// An integral model of the torsor: the ideal tuple 𝐂, the derived modules
/// 𝒪₁, …, 𝒪₉, and the height scale u_𝐂.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistData {
    pub boundary: Boundary,
    pub c_tuple: [FracIdeal; 6],
    pub modules: [FracIdeal; 9],
    /// u_𝐂 = N(C₀³C₁⁻¹⋯C₅⁻¹); equals N(C₃²C₄C₅) resp. N(C₃²C₅) on the
    /// restricted families.
    pub scale: Rational,
}

impl TwistData {
    /// Builds the derived data for an arbitrary tuple of nonzero fractional
    /// ideals. The module exponents are the divisor classes of the
    /// generators.
    pub fn from_c(field: &FieldParams, boundary: Boundary, c_tuple: [FracIdeal; 6]) -> TwistData {
        let inverses: Vec<FracIdeal> = c_tuple.iter().map(|c| field.ideal_inverse(c)).collect();
        let mut modules: Vec<FracIdeal> = Vec::with_capacity(9);
        for row in &geometry::E_CLASSES {
            // degree (m0, …, m5) ↦ ∏ C_k^{m_k}
            let mut m = field.ring_of_integers();
            for (k, &e) in row.0.iter().enumerate() {
                for _ in 0..e.abs() {
                    let factor = if e > 0 { &c_tuple[k] } else { &inverses[k] };
                    m = field.ideal_product(&m, factor);
                }
            }
            modules.push(m);
        }
        let mut u_ideal = field.ring_of_integers();
        for _ in 0..3 {
            u_ideal = field.ideal_product(&u_ideal, &c_tuple[0]);
        }
        for inv in &inverses[1..6] {
            u_ideal = field.ideal_product(&u_ideal, inv);
        }
        let scale = field.ideal_norm(&u_ideal);
        TwistData {
            boundary,
            c_tuple,
            modules: modules.try_into().unwrap(),
            scale,
        }
    }
}

/// The twist family carrying all integral points for the given boundary:
/// h³ twists (C₃, C₄, C₅ free) above the singularity, h² (C₃, C₅ free)
/// above the line.
pub fn twists(field: &FieldParams, boundary: Boundary) -> Vec<TwistData> {
    let reps = &field.class_reps;
    let o = field.ring_of_integers();
    let mut out = Vec::new();
    match boundary {
        Boundary::AboveSingularity => {
            for c3 in reps {
                for c4 in reps {
                    for c5 in reps {
                        let c0 =
                            field.ideal_product(&field.ideal_product(c3, c4), c5);
                        out.push(TwistData::from_c(
                            field,
                            boundary,
                            [c0, c4.clone(), c5.clone(), c3.clone(), c4.clone(), c5.clone()],
                        ));
                    }
                }
            }
        }
        Boundary::AboveLine => {
            for c3 in reps {
                for c5 in reps {
                    let c0 = field.ideal_product(c3, c5);
                    out.push(TwistData::from_c(
                        field,
                        boundary,
                        [c0, o.clone(), c5.clone(), c3.clone(), o.clone(), c5.clone()],
                    ));
                }
            }
        }
    }
    out
}

/// The monomial height 𝓗_i(η): for the singularity boundary the maximum of
/// ‖η₄²η₅η₇‖, ‖η₅η₆²η₈‖, ‖η₄η₅²η₆‖, ‖η₄η₆η₇η₈‖; for the line boundary of
/// ‖η₅η₇‖, ‖η₅²η₆‖, ‖η₆η₇η₈‖.
pub fn script_height(
    field: &FieldParams,
    boundary: Boundary,
    etas: &[Qelt; 9],
) -> Result<Rational, TorsorError> {
    let needed: &[usize] = match boundary {
        Boundary::AboveSingularity => &[4, 5, 6, 7, 8],
        Boundary::AboveLine => &[5, 6, 7, 8],
    };
    for &j in needed {
        if etas[j - 1].is_zero() {
            return Err(TorsorError::ZeroCoordinate(j));
        }
    }
    let factors: &[&[usize]] = match boundary {
        Boundary::AboveSingularity => {
            &[&[4, 4, 5, 7], &[5, 6, 6, 8], &[4, 5, 5, 6], &[4, 6, 7, 8]]
        }
        Boundary::AboveLine => &[&[5, 7], &[5, 5, 6], &[6, 7, 8]],
    };
    // numerator/denominator products fit machine words for every reachable
    // input; overflow falls back to big-rational products
    let fast = |idx: &[usize]| -> Option<(i128, i128)> {
        let mut num: i128 = 1;
        let mut den: i128 = 1;
        for &j in idx {
            let e = etas[j - 1];
            num = num.checked_mul(field.norm_int(e.num))?;
            let d = if field.is_rational() { e.den } else { e.den.checked_mul(e.den)? };
            den = den.checked_mul(d)?;
        }
        Some((num, den))
    };
    let mut best: Option<Rational> = None;
    for idx in factors {
        let value = match fast(idx) {
            Some((num, den)) => rat_int(num) / rat_int(den),
            None => idx.iter().map(|&j| field.q_norm(etas[j - 1])).product(),
        };
        best = Some(match best {
            None => value,
            Some(b) => b.max(value),
        });
    }
    Ok(best.unwrap())
}

/// The ideal I_j = η_j𝒪_j⁻¹, or `None` for η_j = 0.
pub fn coordinate_ideal(
    field: &FieldParams,
    twist: &TwistData,
    etas: &[Qelt; 9],
    j: usize,
) -> Option<FracIdeal> {
    let eta = etas[j - 1];
    if eta.is_zero() {
        return None;
    }
    Some(field.ideal_product(
        &field.principal_ideal(eta),
        &field.ideal_inverse(&twist.modules[j - 1]),
    ))
}

/// Full membership test of a tuple in the set of integral points of a
/// twisted torsor, reporting the first failed condition.
pub fn membership(
    field: &FieldParams,
    twist: &TwistData,
    etas: &[Qelt; 9],
    mode: MembershipMode,
) -> Result<(), MembershipFailure> {
    for j in 1..=8 {
        assert!(!etas[j - 1].is_zero(), "η{j} must be nonzero off the lines");
    }
    // boundary conditions first, so the reported reason matches the mode
    for &j in twist.boundary.components() {
        match mode {
            MembershipMode::Nicer => {
                if !field.q_is_unit(etas[j - 1]) {
                    return Err(MembershipFailure::NotUnit(j));
                }
            }
            MembershipMode::Lemma => {
                let ij = coordinate_ideal(field, twist, etas, j).unwrap();
                if !ij.is_ring_of_integers() {
                    return Err(MembershipFailure::BoundaryIdealNotTrivial(j));
                }
            }
        }
    }
    for j in 1..=9 {
        if !twist.modules[j - 1].contains(field, etas[j - 1]) {
            return Err(MembershipFailure::NotInLattice(j));
        }
    }
    // η₁η₄²η₇ + η₃η₆²η₈ + η₅η₉ = 0
    let m = |a: Qelt, b: Qelt| field.q_mul(a, b);
    let t1 = m(m(etas[0], m(etas[3], etas[3])), etas[6]);
    let t2 = m(m(etas[2], m(etas[5], etas[5])), etas[7]);
    let t3 = m(etas[4], etas[8]);
    if !field.q_add(field.q_add(t1, t2), t3).is_zero() {
        return Err(MembershipFailure::TorsorEquation);
    }
    let ideals: Vec<Option<FracIdeal>> =
        (1..=9).map(|j| coordinate_ideal(field, twist, etas, j)).collect();
    for (j, k) in coprimality_pairs() {
        let ok = match (&ideals[j - 1], &ideals[k - 1]) {
            (Some(ij), Some(ik)) => field.ideals_coprime(ij, ik),
            // a zero coordinate (only η₉) is coprime to I_j iff I_j is trivial
            (Some(ij), None) => ij.is_ring_of_integers(),
            (None, Some(ik)) => ik.is_ring_of_integers(),
            (None, None) => unreachable!("two zero coordinates"),
        };
        if !ok {
            return Err(MembershipFailure::NotCoprime(j, k));
        }
    }
    Ok(())
}

/// The anticanonical image of a torsor tuple in P⁴ (unnormalized).
pub fn psi(field: &FieldParams, etas: &[Qelt; 9]) -> Result<[Qelt; 5], TorsorError> {
    for j in 1..=8 {
        if etas[j - 1].is_zero() {
            return Err(TorsorError::ZeroCoordinate(j));
        }
    }
    let mut out = [Qelt::ZERO; 5];
    for (k, exps) in geometry::PSI_EXPONENTS.iter().enumerate() {
        let mut acc = Qelt::ONE;
        for (j, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                acc = field.q_mul(acc, etas[j]);
            }
        }
        out[k] = acc;
    }
    Ok(out)
}

/// Scales projective coordinates to the canonical integral representative:
/// content ideal equal to the class representative of its class.
pub fn normalize_representative(
    field: &FieldParams,
    coords: &[Qelt; 5],
) -> SurfacePoint {
    let mut content: Option<FracIdeal> = None;
    for z in coords.iter().filter(|z| !z.is_zero()) {
        let p = field.principal_ideal(*z);
        content = Some(match content {
            None => p,
            Some(c) => field.ideal_gcd(&c, &p),
        });
    }
    let content = content.expect("zero projective point");
    let class_index = field.class_of(&content);
    let target = &field.class_reps[class_index];
    let scaler_ideal = field.ideal_product(target, &field.ideal_inverse(&content));
    let lambda = field
        .principal_generator(&scaler_ideal)
        .expect("target/content is principal by construction");
    let mut out = [AlgInt::ZERO; 5];
    for (k, z) in coords.iter().enumerate() {
        let w = field.q_mul(*z, lambda);
        debug_assert!(w.is_integral(), "normalized coordinate not integral");
        out[k] = w.num;
    }
    SurfacePoint { coords: out, class_index }
}

/// The torus action of a 6-tuple of units; the exponents are the divisor
/// classes of the generators.
pub fn unit_action(field: &FieldParams, t: &[AlgInt; 6], etas: &[Qelt; 9]) -> [Qelt; 9] {
    let mut out = [Qelt::ZERO; 9];
    for (j, row) in geometry::E_CLASSES.iter().enumerate() {
        let mut acc = etas[j];
        for (k, &e) in row.0.iter().enumerate() {
            debug_assert!(field.is_unit_int(t[k]), "action requires units");
            let factor = if e >= 0 { t[k] } else { field.conj(t[k]) };
            for _ in 0..e.abs() {
                acc = field.q_mul(acc, Qelt::integral(factor));
            }
        }
        out[j] = acc;
    }
    out
}

/// N_i(B) through the torsor parameterisation: the twisted counts summed
/// over the twist family, divided by ω_K⁶.
pub fn count_torsor(
    field: &FieldParams,
    boundary: Boundary,
    bound: &Rational,
) -> Result<CountResult, TorsorError> {
    if bound.is_negative() {
        return Err(TorsorError::NegativeBound);
    }
    let start = Instant::now();
    let raw: u64 = if field.is_rational() {
        kernel_q::count_raw(boundary, bound)
    } else {
        twists(field, boundary)
            .par_iter()
            .map(|tw| {
                let mut n = 0u64;
                enumerate::for_each_in_twist(field, tw, bound, |_, _| n += 1);
                n
            })
            .sum()
    };
    let omega6 = (field.num_units as u64).pow(6);
    debug_assert_eq!(raw % omega6, 0);
    Ok(CountResult {
        boundary,
        bound: bound.clone(),
        raw_tuples: raw,
        count: raw / omega6,
        method: Method::Torsor,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

/// The expected height-denominator ideal of the monomial set M_i on a twist:
/// C₀²C₁⁻¹C₂⁻¹ above the singularity, C₀²C₁⁻¹C₂⁻¹C₄⁻¹ above the line.
pub fn monomial_gcd_target(field: &FieldParams, twist: &TwistData) -> FracIdeal {
    let c = &twist.c_tuple;
    let mut out = field.ideal_product(&c[0], &c[0]);
    out = field.ideal_product(&out, &field.ideal_inverse(&c[1]));
    out = field.ideal_product(&out, &field.ideal_inverse(&c[2]));
    if twist.boundary == Boundary::AboveLine {
        out = field.ideal_product(&out, &field.ideal_inverse(&c[4]));
    }
    out
}

/// The ideal generated by the values of the height monomials M_i at a tuple.
pub fn monomial_value_ideal(
    field: &FieldParams,
    boundary: Boundary,
    etas: &[Qelt; 9],
) -> FracIdeal {
    let mut acc: Option<FracIdeal> = None;
    for exps in boundary.height_monomials() {
        let mut v = Qelt::ONE;
        for (j, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                v = field.q_mul(v, etas[j]);
            }
        }
        let p = field.principal_ideal(v);
        acc = Some(match acc {
            None => p,
            Some(c) => field.ideal_gcd(&c, &p),
        });
    }
    acc.unwrap()
}
