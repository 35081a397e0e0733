//! Fractional ideals as Hermite-normal-form ℤ-modules with a denominator.
//!
//! A nonzero fractional ideal is stored as (aℤ + (b + cω)ℤ)/den with
//! a, c, den > 0, c | a, c | b, 0 ≤ b < a, and gcd(a, b, c, den) = 1.
//! Sums and products reduce to integer HNF of stacked generator lists.
//! For ℚ the module degenerates to (a/den)ℤ, stored with b = 0, c = 1.

use super::{gcd3, gcd_i128, AlgInt, FieldParams, Qelt};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FracIdeal {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub den: i128,
}

impl FracIdeal {
    /// The ideal (a/den)ℤ of ℚ.
    pub fn rational_ideal(a: i128, den: i128) -> Self {
        assert!(a > 0 && den > 0);
        let g = gcd_i128(a, den);
        FracIdeal { a: a / g, b: 0, c: 1, den: den / g }
    }

    /// Integral HNF triple over a given field; checks 𝒪-stability in debug.
    pub fn from_hnf(field: &FieldParams, a: i128, b: i128, c: i128) -> Self {
        let ideal = normalize(a, b, c, 1);
        debug_assert!(ideal.is_o_stable(field), "module is not an ideal: {ideal:?}");
        ideal
    }

    pub fn is_integral(&self) -> bool {
        self.den == 1
    }

    /// Membership of a field element in the lattice.
    pub fn contains(&self, field: &FieldParams, z: Qelt) -> bool {
        if field.is_rational() {
            debug_assert_eq!(z.num.y, 0);
            // z.num/z.den ∈ (a/den)ℤ
            let lhs = z.num.x * self.den;
            let rhs = self.a * z.den;
            lhs % rhs == 0
        } else {
            // (z·den) must land on the integer lattice (a,0),(b,c).
            let nx = z.num.x * self.den;
            let ny = z.num.y * self.den;
            if nx % z.den != 0 || ny % z.den != 0 {
                return false;
            }
            let (x, y) = (nx / z.den, ny / z.den);
            if y % self.c != 0 {
                return false;
            }
            let v = y / self.c;
            (x - v * self.b) % self.a == 0
        }
    }

    pub fn is_subset_of(&self, field: &FieldParams, other: &FracIdeal) -> bool {
        let g1 = Qelt::new(AlgInt::new(self.a, 0), self.den);
        let g2 = Qelt::new(AlgInt::new(self.b, self.c), self.den);
        if field.is_rational() {
            other.contains(field, g1)
        } else {
            other.contains(field, g1) && other.contains(field, g2)
        }
    }

    fn is_o_stable(&self, field: &FieldParams) -> bool {
        if field.is_rational() {
            return true;
        }
        let omega = Qelt::integral(AlgInt::new(0, 1));
        let g1 = Qelt::new(AlgInt::new(self.a, 0), self.den);
        let g2 = Qelt::new(AlgInt::new(self.b, self.c), self.den);
        self.contains(field, field.q_mul(omega, g1)) && self.contains(field, field.q_mul(omega, g2))
    }

    pub fn is_ring_of_integers(&self) -> bool {
        self.a == 1 && self.b == 0 && self.c == 1 && self.den == 1
    }
}

fn normalize(a: i128, b: i128, c: i128, den: i128) -> FracIdeal {
    assert!(a > 0 && c > 0 && den > 0, "degenerate HNF triple");
    let g = gcd_i128(gcd3(a, b, c), den);
    let (a, b, c, den) = (a / g, b / g, c / g, den / g);
    FracIdeal { a, b: b.rem_euclid(a), c, den }
}

/// HNF of the ℤ-module spanned by coordinate vectors (x, y) over (1, ω).
/// The generators must span a rank-2 lattice.
fn hnf_of_generators(gens: &[(i128, i128)]) -> (i128, i128, i128) {
    // Reduce to a single vector with minimal positive y via extended gcd
    // column operations, folding the x-parts of the y = 0 reductions into
    // a running gcd.
    let mut c: i128 = 0;
    let mut bx: i128 = 0;
    let mut a: i128 = 0;
    for &(x, y) in gens {
        if y == 0 {
            a = gcd_i128(a, x);
            continue;
        }
        if c == 0 {
            c = y.abs();
            bx = if y < 0 { -x } else { x };
            continue;
        }
        // Combine (bx, c) and (x, y) into one vector with y-part gcd(c, y).
        let (g, u, v) = ext_gcd(c, y);
        let nx = u * bx + v * x;
        // The eliminated direction has y = 0.
        a = gcd_i128(a, (y / g) * bx - (c / g) * x);
        c = g;
        bx = nx;
    }
    assert!(c != 0 && a != 0, "generators do not span a rank-2 lattice");
    (a, bx.rem_euclid(a), c)
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        let s = if a < 0 { -1 } else { 1 };
        return (a.abs(), s, 0);
    }
    let (g, u, v) = ext_gcd(b, a % b);
    (g, v, u - (a / b) * v)
}

impl FieldParams {
    /// The product ideal I·J.
    pub fn ideal_product(&self, i: &FracIdeal, j: &FracIdeal) -> FracIdeal {
        if self.is_rational() {
            return FracIdeal::rational_ideal(i.a * j.a, i.den * j.den);
        }
        let gi = [AlgInt::new(i.a, 0), AlgInt::new(i.b, i.c)];
        let gj = [AlgInt::new(j.a, 0), AlgInt::new(j.b, j.c)];
        let mut gens = [(0i128, 0i128); 4];
        for (k, &u) in gi.iter().enumerate() {
            for (l, &v) in gj.iter().enumerate() {
                let p = self.mul(u, v);
                gens[2 * k + l] = (p.x, p.y);
            }
        }
        let (a, b, c) = hnf_of_generators(&gens);
        normalize(a, b, c, i.den * j.den)
    }

    /// The sum I + J, i.e. the gcd of the two ideals.
    pub fn ideal_gcd(&self, i: &FracIdeal, j: &FracIdeal) -> FracIdeal {
        if self.is_rational() {
            // gcd(a1/d1, a2/d2) = gcd(a1 d2, a2 d1)/(d1 d2)
            let g = gcd_i128(i.a * j.den, j.a * i.den);
            return FracIdeal::rational_ideal(g, i.den * j.den);
        }
        let l = i.den / gcd_i128(i.den, j.den) * j.den;
        let (si, sj) = (l / i.den, l / j.den);
        let gens = [
            (i.a * si, 0),
            (i.b * si, i.c * si),
            (j.a * sj, 0),
            (j.b * sj, j.c * sj),
        ];
        let (a, b, c) = hnf_of_generators(&gens);
        normalize(a, b, c, l)
    }

    pub fn ideals_coprime(&self, i: &FracIdeal, j: &FracIdeal) -> bool {
        self.ideal_gcd(i, j).is_ring_of_integers()
    }

    /// The conjugate ideal.
    pub fn ideal_conj(&self, i: &FracIdeal) -> FracIdeal {
        if self.is_rational() {
            return i.clone();
        }
        let g2 = self.conj(AlgInt::new(i.b, i.c));
        let (a, b, c) = hnf_of_generators(&[(i.a, 0), (g2.x, g2.y)]);
        normalize(a, b, c, i.den)
    }

    /// The inverse fractional ideal, via I·Ī = N(I)·𝒪_K.
    pub fn ideal_inverse(&self, i: &FracIdeal) -> FracIdeal {
        if self.is_rational() {
            return FracIdeal::rational_ideal(i.den, i.a);
        }
        // I⁻¹ = conj(M)·den / (a·c) for I = M/den, since I·Ī = N(I)·𝒪_K.
        let conj = self.ideal_conj(i);
        normalize(conj.a * i.den, conj.b * i.den, conj.c * i.den, i.a * i.c)
    }

    /// The principal fractional ideal generated by a nonzero element.
    pub fn principal_ideal(&self, z: Qelt) -> FracIdeal {
        assert!(!z.is_zero(), "principal ideal of zero");
        if self.is_rational() {
            return FracIdeal::rational_ideal(z.num.x.abs(), z.den);
        }
        let zw = self.mul(z.num, AlgInt::new(0, 1));
        let (a, b, c) = hnf_of_generators(&[(z.num.x, z.num.y), (zw.x, zw.y)]);
        normalize(a, b, c, z.den)
    }

    /// Scales an ideal by a positive rational p/q.
    pub fn ideal_scale(&self, i: &FracIdeal, p: i128, q: i128) -> FracIdeal {
        assert!(p > 0 && q > 0);
        if self.is_rational() {
            return FracIdeal::rational_ideal(i.a * p, i.den * q);
        }
        normalize(i.a * p, i.b * p, i.c * p, i.den * q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::qfield::make_field;

    fn p2(field: &FieldParams) -> FracIdeal {
        // 𝔭 = (2, 1+α) over ℚ(√−5)
        FracIdeal::from_hnf(field, 2, 1, 1)
    }

    #[test]
    fn prime_square_above_two() {
        let f = make_field(-5).unwrap();
        let p = p2(&f);
        let sq = f.ideal_product(&p, &p);
        // 𝔭² = (2)
        assert_eq!(sq, f.principal_ideal(Qelt::from_int(2)));
    }

    #[test]
    fn product_with_ring_is_identity() {
        let f = make_field(-5).unwrap();
        let p = p2(&f);
        assert_eq!(f.ideal_product(&p, &f.ring_of_integers()), p);
    }

    #[test]
    fn p_times_p3_is_principal() {
        let f = make_field(-5).unwrap();
        let p = p2(&f);
        let p3 = FracIdeal::from_hnf(&f, 3, 1, 1); // (3, 1+α)
        let prod = f.ideal_product(&p, &p3);
        // 𝔭·𝔭₃ = (1+α)
        assert_eq!(prod, f.principal_ideal(Qelt::integral(AlgInt::new(1, 1))));
    }

    #[test]
    fn gcd_examples() {
        let f = make_field(-5).unwrap();
        let two = f.principal_ideal(Qelt::from_int(2));
        let one_plus_alpha = f.principal_ideal(Qelt::integral(AlgInt::new(1, 1)));
        assert_eq!(f.ideal_gcd(&two, &one_plus_alpha), p2(&f));

        let i = FracIdeal::from_hnf(&f, 6, 2, 2);
        assert!(f.ideal_gcd(&i, &f.ring_of_integers()).is_ring_of_integers());

        let seven = f.principal_ideal(Qelt::from_int(7));
        let three = f.principal_ideal(Qelt::from_int(3));
        assert!(f.ideal_gcd(&seven, &three).is_ring_of_integers());
    }

    #[test]
    fn inverse_of_prime() {
        let f = make_field(-5).unwrap();
        let p = p2(&f);
        let inv = f.ideal_inverse(&p);
        assert!(f.ideal_product(&p, &inv).is_ring_of_integers());
        assert_eq!(f.ideal_norm(&inv), rat(1, 2));
    }

    #[test]
    fn norm_of_hnf_triple() {
        let f = make_field(-5).unwrap();
        let p = p2(&f);
        assert_eq!(f.ideal_norm(&p), rat(2, 1));
        let sq = f.ideal_product(&p, &p);
        assert_eq!(f.ideal_norm(&sq), rat(4, 1));
    }

    #[test]
    fn membership_with_denominators() {
        let f = make_field(-5).unwrap();
        let p = p2(&f);
        let p_inv = f.ideal_inverse(&p);
        // (1+α)/2 ∈ 𝔭⁻¹
        assert!(p_inv.contains(&f, Qelt::new(AlgInt::new(1, 1), 2)));
        // 1/2 ∉ 𝔭⁻¹
        assert!(!p_inv.contains(&f, Qelt::new(AlgInt::new(1, 0), 2)));
    }

    #[test]
    fn rational_ideals_degenerate() {
        let f = make_field(0).unwrap();
        let six = FracIdeal::rational_ideal(6, 1);
        let four = FracIdeal::rational_ideal(4, 1);
        assert_eq!(f.ideal_product(&six, &four), FracIdeal::rational_ideal(24, 1));
        assert_eq!(f.ideal_gcd(&six, &four), FracIdeal::rational_ideal(2, 1));
        assert_eq!(f.ideal_inverse(&six), FracIdeal::rational_ideal(1, 6));
        assert_eq!(f.ideal_norm(&six), rat(6, 1));
    }

    #[test]
    fn principal_ideal_of_fractional_entries() {
        let f = make_field(-5).unwrap();
        // (1/2) = 𝔭⁻²  ⇒  norm 1/4
        let half = f.principal_ideal(Qelt::new(AlgInt::new(1, 0), 2));
        assert_eq!(f.ideal_norm(&half), rat(1, 4));
        let p = p2(&f);
        let psq_inv = f.ideal_inverse(&f.ideal_product(&p, &p));
        assert_eq!(half, psq_inv);
    }
}
