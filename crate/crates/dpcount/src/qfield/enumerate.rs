//! Bounded-norm enumeration of fractional-ideal lattices.
//!
//! The lattice (a, 0), (b, c) is scanned column by column: the ω-coordinate
//! is capped by the definiteness of the norm form, and for each column the
//! admissible first coordinates form an interval intersected with a residue
//! class mod a. Work is proportional to the number of points reported.

use super::{AlgInt, FieldParams, FracIdeal, Qelt};
use crate::exact::{floor_sqrt_rational, int_to_i128, isqrt, rat_int, Rational};
use num::Signed;

impl FieldParams {
    /// All nonzero x in the lattice `i` with ‖x‖ ≤ bound, each exactly once,
    /// sorted by (‖x‖, x-coordinates).
    pub fn enumerate_bounded_norm(&self, i: &FracIdeal, bound: &Rational) -> Vec<Qelt> {
        let mut out = Vec::new();
        self.for_each_bounded_norm(i, bound, |z| out.push(z));
        out.sort_by(|u, v| {
            (self.q_norm(*u), u.num.x, u.num.y).cmp(&(self.q_norm(*v), v.num.x, v.num.y))
        });
        out
    }

    /// Visitor form of `enumerate_bounded_norm`, unsorted.
    pub fn for_each_bounded_norm<F: FnMut(Qelt)>(
        &self,
        i: &FracIdeal,
        bound: &Rational,
        mut visit: F,
    ) {
        if bound.is_negative() {
            return;
        }
        if self.is_rational() {
            // multiples k·(a/den) with k ≠ 0 and |k|·a/den ≤ bound
            let kmax = int_to_i128(&(bound * rat_int(i.den) / rat_int(i.a)).floor().numer().clone());
            for k in 1..=kmax {
                visit(Qelt::new(AlgInt::from_int(k * i.a), i.den));
                visit(Qelt::new(AlgInt::from_int(-k * i.a), i.den));
            }
            return;
        }
        // Q(x, y) = x² + t·x·y + n·y² ≤ r where r = bound·den²
        let (t, n) = (self.omega_trace, self.omega_norm);
        let r = bound * rat_int(i.den * i.den);
        // min_x Q(x, y) = |Δ|·y²/4, so y is capped by √(4r/|Δ|).
        let abs_disc = 4 * n - t * t;
        debug_assert!(abs_disc > 0);
        let ymax = floor_sqrt_rational(&(&r * rat_int(4) / rat_int(abs_disc)));
        let rfloor = int_to_i128(&r.floor().numer().clone());
        let vmax = ymax / i.c;
        for v in -vmax..=vmax {
            let y = i.c * v;
            // x ∈ [(-t·y − √D)/2, (-t·y + √D)/2], D = 4r − |Δ|y²
            let d = 4 * rfloor - abs_disc * y * y;
            if d < 0 {
                continue;
            }
            let s = isqrt(d);
            let xlo = div_ceil(-t * y - s, 2);
            let xhi = div_floor(-t * y + s, 2);
            // x ≡ b·v (mod a)
            let res = (i.b * v).rem_euclid(i.a);
            let mut x = xlo + (res - xlo).rem_euclid(i.a);
            while x <= xhi {
                if !(x == 0 && y == 0) {
                    let q = x * x + t * x * y + n * y * y;
                    // the isqrt window can overshoot by one when r is not
                    // an integer, so recheck exactly
                    if rat_int(q) <= r {
                        visit(Qelt::new(AlgInt::new(x, y), i.den));
                    }
                }
                x += i.a;
            }
        }
    }

    /// The smallest norm of a nonzero lattice element, via Gauss reduction.
    pub fn minimal_norm(&self, i: &FracIdeal) -> Rational {
        if self.is_rational() {
            return rat_int(i.a) / rat_int(i.den);
        }
        let (v, _) = self.reduced_basis(i);
        rat_int(self.norm_int(v)) / rat_int(i.den * i.den)
    }

    /// Gauss-reduced basis of the lattice underlying `i` (integral part).
    pub fn reduced_basis(&self, i: &FracIdeal) -> (AlgInt, AlgInt) {
        let mut v1 = AlgInt::new(i.a, 0);
        let mut v2 = AlgInt::new(i.b, i.c);
        if self.norm_int(v2) < self.norm_int(v1) {
            std::mem::swap(&mut v1, &mut v2);
        }
        loop {
            // 2·B(v1, v2) in the norm form
            let (t, n) = (self.omega_trace, self.omega_norm);
            let dot2 = 2 * v1.x * v2.x + t * (v1.x * v2.y + v1.y * v2.x) + 2 * n * v1.y * v2.y;
            let q1 = self.norm_int(v1);
            let mu = div_floor(dot2 + q1, 2 * q1);
            v2 = AlgInt::new(v2.x - mu * v1.x, v2.y - mu * v1.y);
            if self.norm_int(v2) < self.norm_int(v1) {
                std::mem::swap(&mut v1, &mut v2);
            } else {
                return (v1, v2);
            }
        }
    }

    /// A generator of a principal fractional ideal, or `None` when the ideal
    /// is not principal. Any shortest vector of a principal ideal generates.
    pub fn principal_generator(&self, i: &FracIdeal) -> Option<Qelt> {
        if self.is_rational() {
            return Some(Qelt::new(AlgInt::from_int(i.a), i.den));
        }
        let (v, _) = self.reduced_basis(i);
        let g = Qelt::new(v, i.den);
        (self.principal_ideal(g) == *i).then_some(g)
    }
}

fn div_floor(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::qfield::make_field;

    #[test]
    fn gaussian_units_and_short_vectors() {
        let f = make_field(-1).unwrap();
        let zi = f.ring_of_integers();
        let pts = f.enumerate_bounded_norm(&zi, &rat(2, 1));
        // {±1, ±i, ±1±i}
        assert_eq!(pts.len(), 8);
        assert!(pts.iter().all(|z| f.q_norm(*z) <= rat(2, 1)));
    }

    #[test]
    fn small_bound_is_empty() {
        let f = make_field(-5).unwrap();
        let pts = f.enumerate_bounded_norm(&f.ring_of_integers(), &rat(1, 2));
        assert!(pts.is_empty());
    }

    #[test]
    fn prime_lattice_norm_four() {
        // 𝔭 = (2, 1+α) over ℚ(√−5): elements of norm ≤ 4 are ±2 only
        let f = make_field(-5).unwrap();
        let p = FracIdeal::from_hnf(&f, 2, 1, 1);
        let pts = f.enumerate_bounded_norm(&p, &rat(4, 1));
        assert_eq!(
            pts,
            vec![
                Qelt::from_int(-2),
                Qelt::from_int(2),
            ]
        );
    }

    #[test]
    fn counts_match_brute_force() {
        // brute-force double loop over coefficient boxes
        for d in [-1i64, -2, -3, -5, -7] {
            let f = make_field(d).unwrap();
            let ideals = [
                f.ring_of_integers(),
                f.prime_ideals_above(2)[0].ideal.clone(),
                f.prime_ideals_above(3)[0].ideal.clone(),
            ];
            for i in &ideals {
                for bound in [1i64, 7, 25, 100] {
                    let bound = rat(bound, 1);
                    let fast = f.enumerate_bounded_norm(i, &bound);
                    let mut slow = Vec::new();
                    let box_u = 60;
                    for u in -box_u..=box_u {
                        for v in -box_u..=box_u {
                            let z = Qelt::new(
                                AlgInt::new(u * i.a + v * i.b, v * i.c),
                                i.den,
                            );
                            if !z.is_zero() && f.q_norm(z) <= bound {
                                slow.push(z);
                            }
                        }
                    }
                    assert_eq!(fast.len(), slow.len(), "d={d} ideal={i:?} T={bound}");
                }
            }
        }
    }

    #[test]
    fn unit_orbits_partition_enumeration() {
        // for d = −1 and d = −3 the unit action partitions enumerated points
        // into orbits of size exactly ω_K
        for d in [-1i64, -3] {
            let f = make_field(d).unwrap();
            let pts = f.enumerate_bounded_norm(&f.ring_of_integers(), &rat(50, 1));
            let mut seen: std::collections::HashSet<(i128, i128)> = Default::default();
            let mut orbits = 0usize;
            for z in &pts {
                if seen.contains(&(z.num.x, z.num.y)) {
                    continue;
                }
                orbits += 1;
                let mut orbit_size = 0;
                for &u in &f.units {
                    let w = f.mul(z.num, u);
                    if seen.insert((w.x, w.y)) {
                        orbit_size += 1;
                    }
                }
                assert_eq!(orbit_size, f.num_units as usize);
            }
            assert_eq!(orbits * f.num_units as usize, pts.len());
        }
    }

    #[test]
    fn fractional_lattice_enumeration() {
        let f = make_field(-5).unwrap();
        let p = FracIdeal::from_hnf(&f, 2, 1, 1);
        let pinv = f.ideal_inverse(&p);
        // 𝔭⁻¹ ⊃ 𝒪_K; its minimum is ‖1‖ = 1
        assert_eq!(f.minimal_norm(&pinv), rat(1, 1));
        let pts = f.enumerate_bounded_norm(&pinv, &rat(3, 2));
        // ±1 and ±(1±α)/2 (norm 3/2)
        assert_eq!(pts.len(), 6);
    }

    #[test]
    fn principal_generator_found() {
        let f = make_field(-5).unwrap();
        let z = Qelt::integral(AlgInt::new(1, 1));
        let i = f.principal_ideal(z);
        let g = f.principal_generator(&i).unwrap();
        assert_eq!(f.principal_ideal(g), i);
        // non-principal prime has no generator
        let p = FracIdeal::from_hnf(&f, 2, 1, 1);
        assert!(f.principal_generator(&p).is_none());
    }

    #[test]
    fn rational_enumeration() {
        let f = make_field(0).unwrap();
        let i = FracIdeal::rational_ideal(3, 2);
        let pts = f.enumerate_bounded_norm(&i, &rat(5, 1));
        // ±3/2, ±3 (norm 3/2 and 3)
        assert_eq!(pts.len(), 6);
        assert_eq!(f.q_norm(pts[0]), rat(3, 2));
    }
}
