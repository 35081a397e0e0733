//! Ingredients of the predicted leading constants: local Euler factors two
//! ways (subset sum over coprimality patterns vs closed form), truncated
//! Euler products with rigorous tails, p-adic densities in closed form and
//! through an independent valuation-cell oracle, and the exact polytope
//! volumes of the archimedean factors.

mod polytope;
mod predict;

pub use polytope::{Polytope, PolytopeError};
pub use predict::{
    alpha, alpha_polytope, alpha_total_polytope, default_tau_infinity, predict, predict_with_tau,
    Prediction,
};

use crate::exact::{rat, rat_int, QInterval, Rational};
use crate::qfield::{FieldParams, PrimeIdeal, Splitting};
use crate::surface::Boundary;
use num::{One, Zero};

/// Local density at a prime of norm q as the lattice-point summation
/// produces it: a sum
/// over the subsets L of the free indices of
/// (1 − 1/q)^{|J|−|L|} (1/q)^{|L|} Θ(L), with Θ the coprimality-pattern
/// table (1 on ∅, {5}, {6}, {7}; 1 − 1/q on {4}, {4,7}; 0 otherwise).
pub fn theta_local(boundary: Boundary, q: i128) -> Rational {
    assert!(q >= 2, "prime-power norm required");
    let free = boundary.free_indices();
    let u = rat_int(1) / rat_int(q);
    let one = Rational::one();
    let mut total = Rational::zero();
    for mask in 0u32..(1 << free.len()) {
        let subset: Vec<usize> = free
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &j)| j)
            .collect();
        let table = theta8_table(&subset, &u);
        if table.is_zero() {
            continue;
        }
        let k = subset.len() as u32;
        let weight =
            (&one - &u).pow((free.len() as u32 - k) as i32) * u.pow(k as i32);
        total += weight * table;
    }
    total
}

/// Θ_{8,𝔭} on a subset of {4, 5, 6, 7}.
fn theta8_table(subset: &[usize], u: &Rational) -> Rational {
    match subset {
        [] | [5] | [6] | [7] => Rational::one(),
        [4] | [4, 7] => Rational::one() - u,
        _ => Rational::zero(),
    }
}

/// The closed form (1 − 1/q)³(1 + 3/q) resp. (1 − 1/q)²(1 + 2/q).
pub fn theta_closed(boundary: Boundary, q: i128) -> Rational {
    assert!(q >= 2, "prime-power norm required");
    let u = rat_int(1) / rat_int(q);
    let one = Rational::one();
    match boundary {
        Boundary::AboveSingularity => (&one - &u).pow(3) * (one.clone() + rat(3, 1) * u),
        Boundary::AboveLine => (&one - &u).pow(2) * (one.clone() + rat(2, 1) * u),
    }
}

/// The p-adic factor 1 + (6 − #D_i)/q of the twisted Tamagawa volume.
pub fn tamagawa_p(boundary: Boundary, q: i128) -> Rational {
    assert!(q >= 2);
    let k = 6 - boundary.components().len() as i128;
    Rational::one() + rat_int(k) / rat_int(q)
}

#[derive(Clone, Debug)]
pub struct EulerProductResult {
    pub truncation: i64,
    /// Product over prime ideals of norm ≤ truncation, enclosed.
    pub partial: QInterval,
    /// Enclosure of the full product (partial × tail bounds).
    pub full: QInterval,
}

/// ∏_𝔭 theta_closed over prime ideals of norm ≤ P, with a rigorous tail.
///
/// Tail: factors satisfy 1 − c/q² ≤ θ(q) ≤ 1 with c = 6 (singularity)
/// resp. 3 (line). Inert primes p ≤ P whose ideal has norm p² > P get the
/// exact factor interval [1 − c/p⁴, 1]; primes p > P carry at most two
/// ideals each, bounded together by 1 − 2c/P ≤ ∏ ≤ 1.
pub fn euler_product(field: &FieldParams, boundary: Boundary, truncation: i64) -> EulerProductResult {
    assert!(truncation >= 1);
    let c = match boundary {
        Boundary::AboveSingularity => 6i64,
        Boundary::AboveLine => 3i64,
    };
    let mut partial = QInterval::one();
    let tail_lo = Rational::one() - rat(2 * c, 1) / rat_int(truncation as i128);
    let mut tail = QInterval::new(tail_lo.max(Rational::zero()), Rational::one());
    for p in crate::qfield::sieve_primes(truncation) {
        for pi in field.prime_ideals_above(p) {
            if pi.norm <= truncation as i128 {
                partial = partial.mul_rat(&theta_closed(boundary, pi.norm)).shrink(128);
            } else {
                // inert ideal of norm p² > P: exact factor bounds
                let lo = Rational::one() - rat_int(c as i128) / rat_int(pi.norm * pi.norm);
                tail = tail.mul(&QInterval::new(lo, Rational::one())).shrink(128);
            }
        }
    }
    let full = partial.mul(&tail).shrink(128);
    EulerProductResult { truncation, partial, full }
}

/// Exponent e with density q^{−e} = 1/max{1, |x|, |y|, |xy|} resp.
/// 1/max{1, |x|, |xy|} on the cell (v_x, v_y).
fn density_exponent(boundary: Boundary, vx: i64, vy: i64) -> i64 {
    match boundary {
        Boundary::AboveSingularity => 0.max(-vx).max(-vy).max(-vx - vy),
        Boundary::AboveLine => 0.max(-vx).max(-vx - vy),
    }
}

/// Whether an off-diagonal (or nonnegative) cell lies in the integral-point
/// region.
fn cell_in_region(boundary: Boundary, vx: i64, vy: i64) -> bool {
    match boundary {
        Boundary::AboveSingularity => vx + vy >= 0,
        Boundary::AboveLine => vy >= 0 && vx + vy >= 0,
    }
}

fn qpow(q: &Rational, e: i64) -> Rational {
    q.pow(e as i32)
}

/// Independent oracle for the p-adic density: exact summation over the
/// valuation cells (v_x, v_y) ∈ [−M, M]², diagonal sub-cells by residue-pair
/// counting, exact geometric completion of the stabilized strips, and an
/// interval [0, 4q^{−M−1}] for the remaining mass.
pub fn tamagawa_p_oracle(boundary: Boundary, prime: &PrimeIdeal, depth: u32) -> QInterval {
    assert!(depth >= 1, "truncation depth must be at least 1");
    let m = depth as i64;
    let q = rat_int(prime.norm);
    let unit_frac = Rational::one() - Rational::one() / &q; // 1 − 1/q
    let mu = |v: i64| qpow(&q, -v) * &unit_frac;
    let mut total = Rational::zero();

    for vx in -m..=m {
        for vy in -m..=m {
            if vx == vy && vx < 0 {
                // |x+y| ≤ 1 sub-cell: fraction of unit residue pairs mod
                // 𝔭^{|v|} with u + w ≡ 0, which is 1/#units(𝔭^{|v|})
                let k = -vx;
                let units_mod = qpow(&q, k) - qpow(&q, k - 1);
                let solutions = units_mod.clone(); // w ≡ −u, one per unit u
                let fraction = solutions / (units_mod.clone() * units_mod);
                let sub = mu(vx) * mu(vy) * fraction;
                total += sub * qpow(&q, -density_exponent(boundary, vx, vy));
            } else if cell_in_region(boundary, vx, vy) {
                total += mu(vx) * mu(vy) * qpow(&q, -density_exponent(boundary, vx, vy));
            }
        }
    }
    // strips: vy > M with vx ∈ [−M, M]; in region for both boundaries when
    // vx + vy > 0, i.e. always here; density is constant in vy
    let strip_measure = qpow(&q, -(m + 1)); // Σ_{v>M} μ(v)
    for vx in -m..=m {
        let e = density_exponent(boundary, vx, m + 1);
        debug_assert_eq!(e, density_exponent(boundary, vx, m + 7));
        total += mu(vx) * &strip_measure * qpow(&q, -e);
    }
    // strips: vx > M with vy ∈ [−M, M]; region requires vy ≥ 0 for the line
    // boundary, and vx + vy ≥ 0 always holds
    for vy in -m..=m {
        if !cell_in_region(boundary, m + 1, vy) {
            continue;
        }
        let e = density_exponent(boundary, m + 1, vy);
        debug_assert_eq!(e, density_exponent(boundary, m + 7, vy));
        total += &strip_measure * mu(vy) * qpow(&q, -e);
    }
    // corner vx > M, vy > M: density 1, fully in region
    total += &strip_measure * &strip_measure;
    // remaining mass (min(vx, vy) < −M): each side contributes at most
    // 2q^{−M−1} including its diagonal part
    let rem = rat(4, 1) * qpow(&q, -(m + 1));
    QInterval::new(total.clone(), total + rem)
}

/// Collects (field, prime ideal) instances of every splitting type for the
/// rational primes in `ps`, drawing from small imaginary quadratic fields.
pub fn splitting_instances(ps: &[i64]) -> Vec<(i64, PrimeIdeal)> {
    let ds = [-1i64, -2, -3, -5, -7, -11, -15];
    let mut out = Vec::new();
    for &p in ps {
        for want in [Splitting::Split, Splitting::Inert, Splitting::Ramified] {
            if let Some((d, pi)) = ds.iter().find_map(|&d| {
                let f = crate::qfield::make_field(d).unwrap();
                let pis = f.prime_ideals_above(p);
                pis.into_iter().find(|pi| pi.splitting == want).map(|pi| (d, pi))
            }) {
                out.push((d, pi));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::make_field;

    #[test]
    fn theta_subset_sum_equals_closed_form_small() {
        assert_eq!(theta_local(Boundary::AboveSingularity, 2), rat(5, 16));
        assert_eq!(theta_closed(Boundary::AboveSingularity, 2), rat(5, 16));
        assert_eq!(theta_local(Boundary::AboveLine, 3), rat(20, 27));
        assert_eq!(theta_closed(Boundary::AboveLine, 2), rat(1, 2));
        for q in [2i128, 3, 4, 5, 7, 9, 11, 25, 49, 121, 9973] {
            for b in [Boundary::AboveSingularity, Boundary::AboveLine] {
                assert_eq!(theta_local(b, q), theta_closed(b, q), "q={q}");
            }
        }
    }

    #[test]
    fn tamagawa_closed_examples() {
        assert_eq!(tamagawa_p(Boundary::AboveSingularity, 3), rat(2, 1));
        assert_eq!(tamagawa_p(Boundary::AboveLine, 2), rat(2, 1));
    }

    #[test]
    fn tamagawa_oracle_contains_closed_form() {
        let f = make_field(0).unwrap();
        for p in [2i64, 3, 5] {
            let pi = &f.prime_ideals_above(p)[0];
            for b in [Boundary::AboveSingularity, Boundary::AboveLine] {
                let iv = tamagawa_p_oracle(b, pi, 12);
                let closed = tamagawa_p(b, pi.norm);
                assert!(iv.contains(&closed), "p={p} {b:?}: {iv:?} vs {closed}");
                assert!(iv.width() < rat(1, 1000));
            }
        }
        // a norm-9 inert instance
        let f3 = make_field(-1).unwrap();
        let pi = &f3.prime_ideals_above(3)[0];
        assert_eq!(pi.norm, 9);
        let iv = tamagawa_p_oracle(Boundary::AboveSingularity, pi, 8);
        assert!(iv.contains(&tamagawa_p(Boundary::AboveSingularity, 9)));
    }

    #[test]
    fn oracle_width_shrinks_with_depth() {
        let f = make_field(0).unwrap();
        let pi = &f.prime_ideals_above(2)[0];
        let w1 = tamagawa_p_oracle(Boundary::AboveSingularity, pi, 6).width();
        let w2 = tamagawa_p_oracle(Boundary::AboveSingularity, pi, 12).width();
        assert!(w2 < w1);
    }

    #[test]
    fn euler_product_empty_and_consistency() {
        let f = make_field(0).unwrap();
        // trivial truncation: empty product
        let e0 = euler_product(&f, Boundary::AboveSingularity, 1);
        assert_eq!(e0.partial, crate::exact::QInterval::one());
        assert!(e0.full.contains(&rat(11, 96))); // the limit is ≈ 0.1149
        let e1 = euler_product(&f, Boundary::AboveSingularity, 100);
        let e2 = euler_product(&f, Boundary::AboveSingularity, 200);
        // enclosures of the same limit must intersect
        assert!(e1.full.hi >= e2.full.lo && e2.full.hi >= e1.full.lo);
        // and be near the f64 estimate 0.1149
        assert!(e2.full.lo > rat(1, 10) && e2.full.hi < rat(3, 20));
    }

    #[test]
    fn euler_product_width_at_million() {
        let f = make_field(0).unwrap();
        let e = euler_product(&f, Boundary::AboveSingularity, 1_000_000);
        assert!(e.full.width() < rat(1, 10_000));
        let fi = make_field(-1).unwrap();
        let e = euler_product(&fi, Boundary::AboveLine, 100_000);
        let e2 = euler_product(&fi, Boundary::AboveLine, 200_000);
        assert!(e.full.hi >= e2.full.lo && e2.full.hi >= e.full.lo);
    }

    #[test]
    fn splitting_instances_cover_types() {
        let inst = splitting_instances(&[2, 3, 5, 7]);
        for p in [2i64, 3, 5, 7] {
            for want in [Splitting::Split, Splitting::Inert, Splitting::Ramified] {
                assert!(
                    inst.iter().any(|(_, pi)| pi.rational_prime == p && pi.splitting == want),
                    "{p} {want:?}"
                );
            }
        }
    }
}
