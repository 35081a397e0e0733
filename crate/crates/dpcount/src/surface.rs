//! Direct (torsor-free) enumeration of integral points of bounded height on
//! the surface x₀x₁ − x₂x₃ = x₀x₃ + x₁x₃ + x₂x₄ = 0, away from the lines
//! (x₀x₃ ≠ 0), for the two countable boundaries.
//!
//! Points are represented by coordinate tuples whose gcd ideal is one of the
//! fixed class representatives; counts divide the number of tuples by ω_K.
//! This module is the ground truth the torsor route is checked against.

use crate::exact::{int_to_i128, rat_int, Rational};
use crate::qfield::{AlgInt, FieldParams, FracIdeal, Qelt};
use num::Signed;
use rayon::prelude::*;
use std::time::Instant;
use thiserror::Error;

pub use crate::geometry::BoundaryDivisor as Boundary;

impl Boundary {
    pub fn from_index(i: u8) -> Option<Boundary> {
        match i {
            1 => Some(Boundary::AboveSingularity),
            2 => Some(Boundary::AboveLine),
            _ => None,
        }
    }

    /// 0-based coordinate indices entering the height and the integrality
    /// condition for this boundary.
    pub fn height_coords(&self) -> &'static [usize] {
        match self {
            Boundary::AboveSingularity => &[0, 1, 2, 3],
            Boundary::AboveLine => &[0, 2, 3],
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("height bound must be nonnegative")]
    NegativeBound,
    #[error("point does not satisfy the surface equations")]
    NotOnSurface,
    #[error("point lies on the excluded lines (x0·x3 = 0)")]
    NotInV,
}

/// A counted representative: integral coordinates whose content ideal is the
/// class representative with the stored index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    pub coords: [AlgInt; 5],
    pub class_index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Direct,
    DirectNaive,
    Torsor,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Method::Direct => write!(f, "direct"),
            Method::DirectNaive => write!(f, "direct-naive"),
            Method::Torsor => write!(f, "torsor"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CountResult {
    pub boundary: Boundary,
    pub bound: Rational,
    pub raw_tuples: u64,
    pub count: u64,
    pub method: Method,
    pub elapsed_ms: u128,
}

/// Both defining quadrics vanish.
pub fn on_surface(field: &FieldParams, x: &[AlgInt; 5]) -> bool {
    let q1 = field.sub(field.mul(x[0], x[1]), field.mul(x[2], x[3]));
    let q2 = field.add(
        field.add(field.mul(x[0], x[3]), field.mul(x[1], x[3])),
        field.mul(x[2], x[4]),
    );
    q1.is_zero() && q2.is_zero()
}

/// The content ideal x₀𝒪 + ⋯ + x₄𝒪 of a coordinate tuple.
pub fn content_ideal(field: &FieldParams, coords: &[AlgInt]) -> FracIdeal {
    let mut it = coords.iter().filter(|x| !x.is_zero());
    let first = it.next().expect("content of the zero tuple");
    let mut acc = field.principal_ideal(Qelt::integral(*first));
    for x in it {
        acc = field.ideal_gcd(&acc, &field.principal_ideal(Qelt::integral(*x)));
    }
    acc
}

/// Exact log-anticanonical height of a valid representative.
pub fn height(
    field: &FieldParams,
    boundary: Boundary,
    pt: &SurfacePoint,
) -> Result<Rational, SurfaceError> {
    if !on_surface(field, &pt.coords) {
        return Err(SurfaceError::NotOnSurface);
    }
    if pt.coords[0].is_zero() || pt.coords[3].is_zero() {
        return Err(SurfaceError::NotInV);
    }
    let coords: Vec<AlgInt> = boundary.height_coords().iter().map(|&k| pt.coords[k]).collect();
    let max_norm = coords.iter().map(|&x| field.norm_int(x)).max().unwrap();
    let denom = field.ideal_norm(&content_ideal(field, &coords));
    Ok(rat_int(max_norm) / denom)
}

/// Whether the sub-gcd ideal of the height coordinates equals the class
/// representative indexed by the point (the integrality condition).
pub fn integrality(field: &FieldParams, boundary: Boundary, pt: &SurfacePoint) -> bool {
    let coords: Vec<AlgInt> = boundary.height_coords().iter().map(|&k| pt.coords[k]).collect();
    content_ideal(field, &coords) == field.class_reps[pt.class_index]
}

/// Exact count of integral points of height ≤ bound off the lines, by the
/// derived three-coordinate enumeration (x₀, x₂, x₃ scanned; x₁, x₄ forced).
pub fn count_direct(
    field: &FieldParams,
    boundary: Boundary,
    bound: &Rational,
) -> Result<CountResult, SurfaceError> {
    if bound.is_negative() {
        return Err(SurfaceError::NegativeBound);
    }
    let start = Instant::now();
    let raw = if field.is_rational() {
        count_direct_q(boundary, bound)
    } else {
        count_direct_quadratic(field, boundary, bound)
    };
    debug_assert_eq!(raw % field.num_units as u64, 0);
    Ok(CountResult {
        boundary,
        bound: bound.clone(),
        raw_tuples: raw,
        count: raw / field.num_units as u64,
        method: Method::Direct,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

fn count_direct_quadratic(field: &FieldParams, boundary: Boundary, bound: &Rational) -> u64 {
    let mut raw = 0u64;
    for rep in field.class_reps.iter() {
        let nb = field.ideal_norm(rep) * bound;
        let ball: Vec<AlgInt> = field
            .enumerate_bounded_norm(rep, &nb)
            .into_iter()
            .map(|z| z.num)
            .collect();
        let nb_floor = int_to_i128(&nb.floor().numer().clone());
        raw += ball
            .par_iter()
            .map(|&x2| {
                let mut local = 0u64;
                for &x0 in &ball {
                    for &x3 in &ball {
                        let Some(x1) = field.exact_divide(field.mul(x2, x3), x0) else {
                            continue;
                        };
                        if boundary == Boundary::AboveSingularity && field.norm_int(x1) > nb_floor
                        {
                            continue;
                        }
                        let num = field.mul(field.add(x0, x1), x3).neg();
                        let Some(x4) = field.exact_divide(num, x2) else {
                            continue;
                        };
                        let coords = [x0, x1, x2, x3, x4];
                        if content_ideal(field, &coords) != *rep {
                            continue;
                        }
                        let hc: Vec<AlgInt> =
                            boundary.height_coords().iter().map(|&k| coords[k]).collect();
                        if content_ideal(field, &hc) != *rep {
                            continue;
                        }
                        local += 1;
                    }
                }
                local
            })
            .sum::<u64>();
    }
    raw
}

/// Integer kernel over ℚ: magnitudes are scanned once and sign orbits are
/// counted by multiplicity (4 sign triples per τ = sgn(x₂x₃) class).
fn count_direct_q(boundary: Boundary, bound: &Rational) -> u64 {
    let bmax = int_to_i128(&bound.floor().numer().clone());
    if bmax < 1 {
        return 0;
    }
    (1..=bmax)
        .into_par_iter()
        .map(|h| {
            // h = |x2|
            let mut local = 0u64;
            for g in 1..=bmax {
                // g = |x0|
                let step = g / gcd(g, h);
                let mut k = step;
                while k <= bmax {
                    // k = |x3|
                    let x1m = h * k / g;
                    if boundary == Boundary::AboveSingularity && x1m > bmax {
                        break;
                    }
                    let ok_gcd = match boundary {
                        Boundary::AboveSingularity => gcd(gcd(g, x1m), gcd(h, k)) == 1,
                        Boundary::AboveLine => gcd(gcd(g, h), k) == 1,
                    };
                    if ok_gcd {
                        for tau in [1i128, -1] {
                            let v = g + tau * x1m;
                            if (v * k) % h == 0 {
                                local += 4;
                            }
                        }
                    }
                    k += step;
                }
            }
            local
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    crate::qfield::gcd_i128(a, b)
}

/// Independent oracle: x₀, x₁, x₂ scanned over coefficient boxes, x₃ and x₄
/// forced by the equations. A different coordinate set from `count_direct`,
/// so agreement is a genuine cross-check.
pub fn count_direct_naive(
    field: &FieldParams,
    boundary: Boundary,
    bound: &Rational,
) -> Result<CountResult, SurfaceError> {
    if bound.is_negative() {
        return Err(SurfaceError::NegativeBound);
    }
    let start = Instant::now();
    let mut raw = 0u64;
    for rep in field.class_reps.iter() {
        let nrep = field.ideal_norm(rep);
        let nb = &nrep * bound;
        // ‖x₁‖ = ‖x₂‖‖x₃‖/‖x₀‖ ≤ N(P)·B² when x₁ is unconstrained.
        let x1_bound = match boundary {
            Boundary::AboveSingularity => nb.clone(),
            Boundary::AboveLine => &nrep * bound * bound,
        };
        let ball: Vec<AlgInt> =
            field.enumerate_bounded_norm(rep, &nb).into_iter().map(|z| z.num).collect();
        let ball1: Vec<AlgInt> =
            field.enumerate_bounded_norm(rep, &x1_bound).into_iter().map(|z| z.num).collect();
        raw += ball
            .par_iter()
            .map(|&x0| {
                let mut local = 0u64;
                for &x1 in &ball1 {
                    for &x2 in &ball {
                        let Some(x3) = field.exact_divide(field.mul(x0, x1), x2) else {
                            continue;
                        };
                        if x3.is_zero() || rat_int(field.norm_int(x3)) > nb {
                            continue;
                        }
                        let num = field.mul(field.add(x0, x1), x3).neg();
                        let Some(x4) = field.exact_divide(num, x2) else {
                            continue;
                        };
                        let coords = [x0, x1, x2, x3, x4];
                        debug_assert!(on_surface(field, &coords));
                        if content_ideal(field, &coords) != *rep {
                            continue;
                        }
                        let hc: Vec<AlgInt> =
                            boundary.height_coords().iter().map(|&k| coords[k]).collect();
                        if content_ideal(field, &hc) != *rep {
                            continue;
                        }
                        local += 1;
                    }
                }
                local
            })
            .sum::<u64>();
    }
    debug_assert_eq!(raw % field.num_units as u64, 0);
    Ok(CountResult {
        boundary,
        bound: bound.clone(),
        raw_tuples: raw,
        count: raw / field.num_units as u64,
        method: Method::DirectNaive,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
