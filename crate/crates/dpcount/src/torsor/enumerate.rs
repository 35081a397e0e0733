//! Generic torsor-point enumeration over a single twist, driven by
//! bounded-norm lattice scans with residual monomial caps.
//!
//! Loop order: η₄ (singularity boundary only), η₅, η₆ over their modules,
//! then η₇ and η₈ inside residual bounds, unit tuples for the boundary
//! coordinates, and η₉ solved from the torsor equation. Coprimality is
//! checked as early as the participating ideals are known.

use super::TwistData;
use crate::exact::{isqrt, int_to_i128, rat_int, Rational};
use crate::qfield::{FieldParams, FracIdeal, Qelt};
use crate::surface::Boundary;
use num::{Signed, Zero};

/// An upper bound for √r, as a rational.
fn sqrt_upper(r: &Rational) -> Rational {
    if r.is_negative() {
        return Rational::zero();
    }
    let n = int_to_i128(r.numer());
    let d = int_to_i128(r.denom());
    rat_int(isqrt(n * d) + 1) / rat_int(d)
}

fn min3(a: Rational, b: Rational, c: Rational) -> Rational {
    a.min(b).min(c)
}

struct TwistCtx<'a> {
    field: &'a FieldParams,
    twist: &'a TwistData,
    /// minimal nonzero norms of 𝒪₄, …, 𝒪₉ (1-based index − 4)
    lambda: [Rational; 6],
    inv_modules: [FracIdeal; 9],
    bound: Rational,
}

impl<'a> TwistCtx<'a> {
    fn new(field: &'a FieldParams, twist: &'a TwistData, height_bound: &Rational) -> Self {
        let lambda: [Rational; 6] =
            std::array::from_fn(|k| field.minimal_norm(&twist.modules[k + 3]));
        let inv_modules: [FracIdeal; 9] =
            std::array::from_fn(|k| field.ideal_inverse(&twist.modules[k]));
        TwistCtx {
            field,
            twist,
            lambda,
            inv_modules,
            bound: &twist.scale * height_bound,
        }
    }

    fn ideal_of(&self, j: usize, eta: Qelt) -> FracIdeal {
        self.field
            .ideal_product(&self.field.principal_ideal(eta), &self.inv_modules[j - 1])
    }
}

/// Visits every integral point of the twist with 𝓗 ≤ u_𝐂·bound once.
pub fn for_each_in_twist<F: FnMut(&TwistData, &[Qelt; 9])>(
    field: &FieldParams,
    twist: &TwistData,
    bound: &Rational,
    mut visit: F,
) {
    let ctx = TwistCtx::new(field, twist, bound);
    for outer in outer_candidates(&ctx) {
        visit_outer(&ctx, outer, &mut visit);
    }
}

/// Parallel fold over all points of all twists: the outermost coordinate
/// range is partitioned across workers, per-chunk results summed. Returns
/// (points visited, points failing the check).
pub fn par_check_torsor_points<C>(
    field: &FieldParams,
    boundary: Boundary,
    bound: &Rational,
    check: C,
) -> (u64, u64)
where
    C: Fn(&TwistData, &[Qelt; 9]) -> bool + Sync,
{
    use rayon::prelude::*;
    let twists = super::twists(field, boundary);
    let mut total = (0u64, 0u64);
    for twist in &twists {
        let ctx = TwistCtx::new(field, twist, bound);
        let outers = outer_candidates(&ctx);
        let (n, bad) = outers
            .par_iter()
            .map(|&outer| {
                let mut n = 0u64;
                let mut bad = 0u64;
                visit_outer(&ctx, outer, &mut |tw: &TwistData, etas: &[Qelt; 9]| {
                    n += 1;
                    if !check(tw, etas) {
                        bad += 1;
                    }
                });
                (n, bad)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        total.0 += n;
        total.1 += bad;
    }
    total
}

/// Candidates for the outermost loop variable: η₄ above the singularity,
/// η₅ above the line.
fn outer_candidates(ctx: &TwistCtx) -> Vec<Qelt> {
    let f = ctx.field;
    let t = &ctx.bound;
    let [_l4, l5, l6, l7, l8, _l9] = ctx.lambda.clone();
    match ctx.twist.boundary {
        Boundary::AboveSingularity => {
            let b4 = min3(
                sqrt_upper(&(t / (&l5 * &l7))),
                t / (&l5 * &l5 * &l6),
                t / (&l6 * &l7 * &l8),
            );
            f.enumerate_bounded_norm(&ctx.twist.modules[3], &b4)
        }
        Boundary::AboveLine => {
            let b5 = (t / &l7).min(sqrt_upper(&(t / &l6)));
            f.enumerate_bounded_norm(&ctx.twist.modules[4], &b5)
        }
    }
}

fn visit_outer<F: FnMut(&TwistData, &[Qelt; 9])>(ctx: &TwistCtx, outer: Qelt, visit: &mut F) {
    match ctx.twist.boundary {
        Boundary::AboveSingularity => enumerate_above_singularity(ctx, outer, visit),
        Boundary::AboveLine => enumerate_above_line(ctx, outer, visit),
    }
}

fn enumerate_above_singularity<F: FnMut(&TwistData, &[Qelt; 9])>(
    ctx: &TwistCtx,
    eta4: Qelt,
    visit: &mut F,
) {
    let f = ctx.field;
    let t = &ctx.bound;
    let [_l4, _l5, l6, l7, l8, _l9] = ctx.lambda.clone();
    {
        let n4 = f.q_norm(eta4);
        let i4 = ctx.ideal_of(4, eta4);
        let b5 = min3(
            t / (&n4 * &n4 * &l7),
            sqrt_upper(&(t / (&n4 * &l6))),
            t / (&l6 * &l6 * &l8),
        );
        for eta5 in f.enumerate_bounded_norm(&ctx.twist.modules[4], &b5) {
            let n5 = f.q_norm(eta5);
            let i5 = ctx.ideal_of(5, eta5);
            if !f.ideals_coprime(&i4, &i5) {
                continue;
            }
            let b6 = min3(
                t / (&n4 * &n5 * &n5),
                sqrt_upper(&(t / (&n5 * &l8))),
                t / (&n4 * &l7 * &l8),
            );
            for eta6 in f.enumerate_bounded_norm(&ctx.twist.modules[5], &b6) {
                let n6 = f.q_norm(eta6);
                let i6 = ctx.ideal_of(6, eta6);
                if !f.ideals_coprime(&i4, &i6) || !f.ideals_coprime(&i5, &i6) {
                    continue;
                }
                let b7 = (t / (&n4 * &n4 * &n5)).min(t / (&n4 * &n6 * &l8));
                for eta7 in f.enumerate_bounded_norm(&ctx.twist.modules[6], &b7) {
                    let n7 = f.q_norm(eta7);
                    let i7 = ctx.ideal_of(7, eta7);
                    if !f.ideals_coprime(&i5, &i7) || !f.ideals_coprime(&i6, &i7) {
                        continue;
                    }
                    let b8 = (t / (&n5 * &n6 * &n6)).min(t / (&n4 * &n6 * &n7));
                    for eta8 in f.enumerate_bounded_norm(&ctx.twist.modules[7], &b8) {
                        let n8 = f.q_norm(eta8);
                        let i8 = ctx.ideal_of(8, eta8);
                        if !f.ideals_coprime(&i4, &i8) || !f.ideals_coprime(&i5, &i8) {
                            continue;
                        }
                        // exact height check on all four monomials
                        let h = [
                            &n4 * &n4 * &n5 * &n7,
                            &n5 * &n6 * &n6 * &n8,
                            &n4 * &n5 * &n5 * &n6,
                            &n4 * &n6 * &n7 * &n8,
                        ];
                        if h.iter().any(|m| m > t) {
                            continue;
                        }
                        solve_eta9(
                            ctx,
                            &[eta4, eta5, eta6, eta7, eta8],
                            &[&i4, &i6],
                            visit,
                        );
                    }
                }
            }
        }
    }
}

fn enumerate_above_line<F: FnMut(&TwistData, &[Qelt; 9])>(
    ctx: &TwistCtx,
    eta5: Qelt,
    visit: &mut F,
) {
    let f = ctx.field;
    let t = &ctx.bound;
    let [_l4, _l5, _l6, l7, l8, _l9] = ctx.lambda.clone();
    {
        let n5 = f.q_norm(eta5);
        let i5 = ctx.ideal_of(5, eta5);
        let b6 = (t / (&n5 * &n5)).min(t / (&l7 * &l8));
        for eta6 in f.enumerate_bounded_norm(&ctx.twist.modules[5], &b6) {
            let n6 = f.q_norm(eta6);
            let i6 = ctx.ideal_of(6, eta6);
            if !f.ideals_coprime(&i5, &i6) {
                continue;
            }
            let b7 = (t / &n5).min(t / (&n6 * &l8));
            for eta7 in f.enumerate_bounded_norm(&ctx.twist.modules[6], &b7) {
                let n7 = f.q_norm(eta7);
                let i7 = ctx.ideal_of(7, eta7);
                if !f.ideals_coprime(&i5, &i7) || !f.ideals_coprime(&i6, &i7) {
                    continue;
                }
                let b8 = t / (&n6 * &n7);
                for eta8 in f.enumerate_bounded_norm(&ctx.twist.modules[7], &b8) {
                    let n8 = f.q_norm(eta8);
                    let i8 = ctx.ideal_of(8, eta8);
                    if !f.ideals_coprime(&i5, &i8) {
                        continue;
                    }
                    let h = [&n5 * &n7, &n5 * &n5 * &n6, &n6 * &n7 * &n8];
                    if h.iter().any(|m| m > t) {
                        continue;
                    }
                    solve_eta9(ctx, &[Qelt::ONE, eta5, eta6, eta7, eta8], &[&i6], visit);
                }
            }
        }
    }
}

/// Ranges over the unit tuples of the boundary coordinates, solves
/// η₉ = −(η₁η₄²η₇ + η₃η₆²η₈)/η₅, and emits the tuples whose η₉ lies in 𝒪₉
/// and is coprime to the listed ideals.
fn solve_eta9<F: FnMut(&TwistData, &[Qelt; 9])>(
    ctx: &TwistCtx,
    free: &[Qelt; 5],
    zero_critical: &[&FracIdeal],
    visit: &mut F,
) {
    let f = ctx.field;
    let boundary = ctx.twist.boundary;
    let &[eta4, eta5, eta6, eta7, eta8] = free;
    let units: Vec<Qelt> = f.units.iter().map(|&u| Qelt::integral(u)).collect();
    let m = |a: Qelt, b: Qelt| f.q_mul(a, b);
    let term1_base = m(m(eta4, eta4), eta7);
    let term2_base = m(m(eta6, eta6), eta8);
    let o9 = &ctx.twist.modules[8];

    let emit = |etas: [Qelt; 9], visit: &mut F| {
        let eta9 = etas[8];
        if !o9.contains(f, eta9) {
            return;
        }
        if eta9.is_zero() {
            if !zero_critical.iter().all(|i| i.is_ring_of_integers()) {
                return;
            }
        } else {
            let i9 = ctx.ideal_of(9, eta9);
            let ok = match boundary {
                // non-adjacent pairs with η₉ among non-unit coordinates
                Boundary::AboveSingularity => {
                    f.ideals_coprime(zero_critical[0], &i9)
                        && f.ideals_coprime(zero_critical[1], &i9)
                }
                Boundary::AboveLine => f.ideals_coprime(zero_critical[0], &i9),
            };
            if !ok {
                return;
            }
        }
        visit(ctx.twist, &etas);
    };

    match boundary {
        Boundary::AboveSingularity => {
            for &u1 in &units {
                let t1 = m(u1, term1_base);
                for &u3 in &units {
                    let t2 = m(u3, term2_base);
                    let eta9 = f.q_div(f.q_add(t1, t2), eta5).neg();
                    for &u2 in &units {
                        emit([u1, u2, u3, eta4, eta5, eta6, eta7, eta8, eta9], visit);
                    }
                }
            }
        }
        Boundary::AboveLine => {
            for &u1 in &units {
                for &u4 in &units {
                    let t1 = m(m(u1, m(u4, u4)), term1_base);
                    for &u3 in &units {
                        let t2 = m(u3, term2_base);
                        let eta9 = f.q_div(f.q_add(t1, t2), eta5).neg();
                        for &u2 in &units {
                            emit([u1, u2, u3, u4, eta5, eta6, eta7, eta8, eta9], visit);
                        }
                    }
                }
            }
        }
    }
}

/// Visits every enumerated torsor point for all twists of the boundary.
pub fn for_each_torsor_point<F: FnMut(&TwistData, &[Qelt; 9])>(
    field: &FieldParams,
    boundary: Boundary,
    bound: &Rational,
    mut visit: F,
) {
    if bound.is_negative() {
        return;
    }
    for twist in super::twists(field, boundary) {
        for_each_in_twist(field, &twist, bound, &mut visit);
    }
}
