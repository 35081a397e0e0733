//! Property tests of the ideal arithmetic, plus the exhaustive
//! factorization round-trip on every integral ideal of small norm.

use dpcount::exact::{rat, rat_int};
use dpcount::qfield::{make_field, AlgInt, FieldParams, FracIdeal, Qelt};
use proptest::prelude::*;

fn fields() -> Vec<FieldParams> {
    [-1i64, -2, -3, -5, -7, -15].iter().map(|&d| make_field(d).unwrap()).collect()
}

/// A random nonzero integral ideal: the gcd of two random principal ideals.
fn random_ideal(field: &FieldParams, seeds: (i8, i8, i8, i8)) -> FracIdeal {
    let (a, b, c, d) = seeds;
    let z1 = AlgInt::new(a as i128, b as i128);
    let z2 = AlgInt::new(c as i128, d as i128);
    match (z1.is_zero(), z2.is_zero()) {
        (true, true) => field.ring_of_integers(),
        (true, false) => field.principal_ideal(Qelt::integral(z2)),
        (false, true) => field.principal_ideal(Qelt::integral(z1)),
        (false, false) => field.ideal_gcd(
            &field.principal_ideal(Qelt::integral(z1)),
            &field.principal_ideal(Qelt::integral(z2)),
        ),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_norms_multiply(
        fi in 0usize..6,
        s1 in any::<(i8, i8, i8, i8)>(),
        s2 in any::<(i8, i8, i8, i8)>(),
    ) {
        let fields = fields();
        let f = &fields[fi];
        let i = random_ideal(f, s1);
        let j = random_ideal(f, s2);
        let p = f.ideal_product(&i, &j);
        prop_assert_eq!(f.ideal_norm(&p), f.ideal_norm(&i) * f.ideal_norm(&j));
        // I·J ⊆ I ∩ J
        prop_assert!(p.is_subset_of(f, &i));
        prop_assert!(p.is_subset_of(f, &j));
        // I + J contains both
        let g = f.ideal_gcd(&i, &j);
        prop_assert!(i.is_subset_of(f, &g));
        prop_assert!(j.is_subset_of(f, &g));
    }

    #[test]
    fn class_of_is_multiplicative(
        fi in 0usize..6,
        s1 in any::<(i8, i8, i8, i8)>(),
        s2 in any::<(i8, i8, i8, i8)>(),
    ) {
        let fields = fields();
        let f = &fields[fi];
        let i = random_ideal(f, s1);
        let j = random_ideal(f, s2);
        let lhs = f.class_of(&f.ideal_product(&i, &j));
        let rhs = f.class_mul(f.class_of(&i), f.class_of(&j));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_cancels(
        fi in 0usize..6,
        s in any::<(i8, i8, i8, i8)>(),
    ) {
        let fields = fields();
        let f = &fields[fi];
        let i = random_ideal(f, s);
        let inv = f.ideal_inverse(&i);
        prop_assert!(f.ideal_product(&i, &inv).is_ring_of_integers());
    }

    #[test]
    fn enumeration_matches_counting_measure(
        fi in 0usize..6,
        s in any::<(i8, i8, i8, i8)>(),
        t in 1i64..60,
    ) {
        let fields = fields();
        let f = &fields[fi];
        let i = random_ideal(f, s);
        let bound = rat(t, 1);
        let pts = f.enumerate_bounded_norm(&i, &bound);
        // each reported point is in the lattice with the right norm, once
        let mut seen = std::collections::HashSet::new();
        for z in &pts {
            prop_assert!(i.contains(f, *z));
            prop_assert!(f.q_norm(*z) <= bound && !z.is_zero());
            prop_assert!(seen.insert((z.num.x, z.num.y, z.den)));
        }
        // closed under negation
        for z in &pts {
            prop_assert!(seen.contains(&(-z.num.x, -z.num.y, z.den)));
        }
    }
}

/// Every integral ideal of norm ≤ 500 in the test fields factors into
/// primes whose product reproduces it.
#[test]
fn factorization_round_trips_on_small_norms() {
    for d in [-1i64, -5, -23] {
        let f = make_field(d).unwrap();
        let mut count = 0usize;
        for ideal in all_integral_ideals(&f, 500) {
            let factors = f.factor_into_primes(&ideal);
            let mut prod = f.ring_of_integers();
            let mut norm = rat(1, 1);
            for (p, e) in &factors {
                for _ in 0..*e {
                    prod = f.ideal_product(&prod, &p.ideal);
                    norm = norm * rat_int(p.norm);
                }
            }
            assert_eq!(prod, ideal, "d={d}");
            assert_eq!(norm, f.ideal_norm(&ideal));
            count += 1;
        }
        // the ideal-counting asymptotic puts ~ρ_K·500 ideals below norm 500
        assert!(count > 300, "enumerated only {count} ideals for d={d}");
    }
}

/// All integral ideals of norm ≤ bound: HNF triples (a, b, c) with c | a,
/// c | b, a·c ≤ bound that are 𝒪-stable.
fn all_integral_ideals(field: &FieldParams, bound: i128) -> Vec<FracIdeal> {
    let mut out = Vec::new();
    for c in 1..=bound {
        if c * c > bound {
            break;
        }
        let mut a = c;
        while a * c <= bound {
            for k in 0..(a / c) {
                let b = k * c;
                let omega_b = field.mul(AlgInt::new(b, c), AlgInt::new(0, 1));
                let candidate = FracIdeal { a, b, c, den: 1 };
                // ω-stability of both generators
                if candidate.contains(field, Qelt::integral(AlgInt::new(0, a)))
                    && candidate.contains(field, Qelt::integral(omega_b))
                {
                    out.push(candidate);
                }
            }
            a += c;
        }
    }
    out
}
