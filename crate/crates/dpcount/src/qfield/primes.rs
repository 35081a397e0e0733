//! Prime splitting, prime-ideal iteration, and ideal factorization.
//!
//! Splitting is read off the Kronecker symbol (Δ | p); the prime above p is
//! (p, ω − r) for a root r of the minimal polynomial of ω mod p, computed by
//! Tonelli–Shanks for odd p and by inspection for p = 2.

use super::{FieldParams, FracIdeal};
use num::One;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub rational_prime: i64,
    pub splitting: Splitting,
    pub ideal: FracIdeal,
    pub norm: i128,
}

/// Kronecker symbol (a | n) for n > 0.
pub fn kronecker(a: i64, n: i64) -> i32 {
    assert!(n > 0);
    let mut a = a.rem_euclid(if n % 2 == 0 { 8 * n } else { n }) as i128;
    let mut n = n as i128;
    let mut result: i32 = 1;
    // pull out factors of two
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let am8 = a.rem_euclid(8);
        if am8 == 3 || am8 == 5 {
            result = -result;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n.rem_euclid(8);
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

fn pow_mod(mut b: i128, mut e: i128, m: i128) -> i128 {
    let mut r: i128 = 1;
    b = b.rem_euclid(m);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Square root of a quadratic residue mod an odd prime (Tonelli–Shanks).
fn sqrt_mod(a: i128, p: i128) -> i128 {
    let a = a.rem_euclid(p);
    if a == 0 {
        return 0;
    }
    debug_assert_eq!(pow_mod(a, (p - 1) / 2, p), 1, "not a residue");
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    // write p−1 = q·2^s with q odd
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // find a non-residue
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = tt * tt % p;
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = b * b % p;
        t = t * c % p;
        r = r * b % p;
    }
    r
}

/// Deterministic Miller–Rabin, valid for all inputs below 3.3·10^24.
pub fn is_prime(n: i128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2i128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2i128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Factors a positive integer by trial division with a Pollard-rho fallback.
pub fn factor_int(mut n: i128) -> Vec<(i128, u32)> {
    assert!(n > 0);
    let mut out: Vec<(i128, u32)> = Vec::new();
    let push = |p: i128, out: &mut Vec<(i128, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in 2i128.. {
        if p * p > n || p > 100_000 {
            break;
        }
        while n % p == 0 {
            n /= p;
            push(p, &mut out);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            push(m, &mut out);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort();
    out
}

fn pollard_rho(n: i128) -> i128 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 != 0);
    let mut c: i128 = 1;
    loop {
        let f = |x: i128| (x * x % n + c) % n;
        let (mut x, mut y, mut d) = (2i128, 2i128, 1i128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = super::gcd_i128((x - y).abs(), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

impl FieldParams {
    /// The prime ideals above a rational prime, with multiplicity one each.
    ///
    /// For ℚ this is the single ideal (p).
    pub fn prime_ideals_above(&self, p: i64) -> Vec<PrimeIdeal> {
        assert!(is_prime(p as i128), "{p} is not prime");
        if self.is_rational() {
            return vec![PrimeIdeal {
                rational_prime: p,
                splitting: Splitting::Split,
                ideal: FracIdeal::rational_ideal(p as i128, 1),
                norm: p as i128,
            }];
        }
        let splitting = match kronecker(self.disc, p) {
            0 => Splitting::Ramified,
            1 => Splitting::Split,
            _ => Splitting::Inert,
        };
        match splitting {
            Splitting::Inert => vec![PrimeIdeal {
                rational_prime: p,
                splitting,
                ideal: self.principal_ideal(super::Qelt::from_int(p as i128)),
                norm: (p as i128) * (p as i128),
            }],
            Splitting::Ramified | Splitting::Split => {
                let roots = self.omega_roots_mod_p(p as i128);
                let mut out: Vec<PrimeIdeal> = roots
                    .into_iter()
                    .map(|r| PrimeIdeal {
                        rational_prime: p,
                        splitting,
                        ideal: FracIdeal::from_hnf(self, p as i128, (-r).rem_euclid(p as i128), 1),
                        norm: p as i128,
                    })
                    .collect();
                out.sort_by_key(|pi| pi.ideal.b);
                debug_assert_eq!(out.len(), if splitting == Splitting::Split { 2 } else { 1 });
                out
            }
        }
    }

    /// Roots of x² − t·x + n mod p (the minimal polynomial of ω).
    fn omega_roots_mod_p(&self, p: i128) -> Vec<i128> {
        let (t, n) = (self.omega_trace, self.omega_norm);
        if p == 2 {
            let mut roots: Vec<i128> = (0..2)
                .filter(|&x| (x * x - t * x + n).rem_euclid(2) == 0)
                .collect();
            roots.dedup();
            return roots;
        }
        let disc = (t * t - 4 * n).rem_euclid(p);
        if disc == 0 {
            return vec![(t * pow_mod(2, p - 2, p)).rem_euclid(p)];
        }
        let s = sqrt_mod(disc, p);
        let inv2 = pow_mod(2, p - 2, p);
        let r1 = ((t + s) * inv2).rem_euclid(p);
        let r2 = ((t - s + p) * inv2).rem_euclid(p);
        vec![r1, r2]
    }

    /// All prime ideals of norm ≤ bound, sorted by (norm, p, hnf-b).
    pub fn prime_ideals_up_to(&self, bound: i64) -> Vec<PrimeIdeal> {
        let mut out = Vec::new();
        for p in sieve_primes(bound) {
            for pi in self.prime_ideals_above(p) {
                if pi.norm <= bound as i128 {
                    out.push(pi);
                }
            }
        }
        out.sort_by_key(|pi| (pi.norm, pi.rational_prime, pi.ideal.b));
        out
    }

    /// The exponent of a prime ideal in a nonzero integral ideal.
    pub fn valuation(&self, i: &FracIdeal, p: &PrimeIdeal) -> u32 {
        let inv = self.ideal_inverse(&p.ideal);
        let mut cur = i.clone();
        let mut v = 0;
        loop {
            let next = self.ideal_product(&cur, &inv);
            if !next.is_integral() {
                return v;
            }
            cur = next;
            v += 1;
        }
    }

    /// Prime factorization of a nonzero integral ideal; the product of the
    /// factors reproduces the ideal.
    pub fn factor_into_primes(&self, i: &FracIdeal) -> Vec<(PrimeIdeal, u32)> {
        assert!(i.is_integral(), "factorization requires an integral ideal");
        let norm = self.ideal_norm(i);
        debug_assert!(norm.denom().is_one());
        let n = crate::exact::int_to_i128(norm.numer());
        let mut out = Vec::new();
        for (p, _) in factor_int(n) {
            for pi in self.prime_ideals_above(p as i64) {
                let v = self.valuation(i, &pi);
                if v > 0 {
                    out.push((pi, v));
                }
            }
        }
        out.sort_by_key(|(pi, _)| (pi.norm, pi.ideal.b));
        out
    }
}

/// Rational primes up to `bound` by a sieve of Eratosthenes.
pub fn sieve_primes(bound: i64) -> Vec<i64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut is_comp = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !is_comp[p] {
            out.push(p as i64);
            let mut q = p * p;
            while q <= n {
                is_comp[q] = true;
                q += p;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::{make_field, AlgInt, Qelt};

    #[test]
    fn splitting_in_sqrt_minus_5() {
        let f = make_field(-5).unwrap();
        let above2 = f.prime_ideals_above(2);
        assert_eq!(above2.len(), 1);
        assert_eq!(above2[0].splitting, Splitting::Ramified);
        assert_eq!(above2[0].ideal, FracIdeal::from_hnf(&f, 2, 1, 1));

        let above3 = f.prime_ideals_above(3);
        assert_eq!(above3.len(), 2);
        assert_eq!(above3[0].splitting, Splitting::Split);

        let above11 = f.prime_ideals_above(11);
        assert_eq!(above11.len(), 1);
        assert_eq!(above11[0].splitting, Splitting::Inert);
        assert_eq!(above11[0].norm, 121);
    }

    #[test]
    fn factor_fourteen_over_sqrt_minus_5() {
        // (14) = 𝔭²·𝔭₇·𝔭̄₇
        let f = make_field(-5).unwrap();
        let fourteen = f.principal_ideal(Qelt::from_int(14));
        let factors = f.factor_into_primes(&fourteen);
        let mut norms: Vec<(i128, u32)> = factors.iter().map(|(p, e)| (p.norm, *e)).collect();
        norms.sort();
        assert_eq!(norms, vec![(2, 2), (7, 1), (7, 1)]);
        // product reproduces the ideal
        let mut prod = f.ring_of_integers();
        for (p, e) in &factors {
            for _ in 0..*e {
                prod = f.ideal_product(&prod, &p.ideal);
            }
        }
        assert_eq!(prod, fourteen);
    }

    #[test]
    fn factor_three_over_sqrt_minus_5() {
        // (3) = 𝔭₃·𝔭̄₃
        let f = make_field(-5).unwrap();
        let three = f.principal_ideal(Qelt::from_int(3));
        let factors = f.factor_into_primes(&three);
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(p, e)| p.norm == 3 && *e == 1));
        assert_ne!(factors[0].0.ideal, factors[1].0.ideal);
    }

    #[test]
    fn factor_unit_ideal_is_empty() {
        let f = make_field(-5).unwrap();
        assert!(f.factor_into_primes(&f.ring_of_integers()).is_empty());
    }

    #[test]
    fn one_plus_alpha_factors() {
        // (1+α) = 𝔭·𝔭₃ over ℚ(√−5)
        let f = make_field(-5).unwrap();
        let i = f.principal_ideal(Qelt::integral(AlgInt::new(1, 1)));
        let factors = f.factor_into_primes(&i);
        let norms: Vec<i128> = factors.iter().map(|(p, _)| p.norm).collect();
        assert_eq!(norms, vec![2, 3]);
    }

    #[test]
    fn kronecker_small_table() {
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        assert_eq!(kronecker(-20, 3), 1);
        assert_eq!(kronecker(-20, 7), 1);
        assert_eq!(kronecker(-20, 11), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-3, 2), -1);
    }

    #[test]
    fn prime_iterator_counts() {
        let f = make_field(-1).unwrap();
        let primes = f.prime_ideals_up_to(50);
        // norms ≤ 50 over ℚ(i): (1+i) [2], split p ≡ 1 mod 4 each twice
        // [5,13,17,29,37,41], inert p ≡ 3 mod 4 with p² ≤ 50 [3,7]
        assert_eq!(primes.len(), 1 + 2 * 6 + 2);
        assert!(primes.windows(2).all(|w| w[0].norm <= w[1].norm));
    }

    #[test]
    fn sqrt_mod_roundtrip() {
        for p in [5i128, 13, 17, 97, 101, 65537] {
            for a in 1..20 {
                if pow_mod(a, (p - 1) / 2, p) == 1 {
                    let r = sqrt_mod(a, p);
                    assert_eq!(r * r % p, a % p);
                }
            }
        }
    }

    #[test]
    fn factor_int_handles_large_semiprime() {
        let n: i128 = 1_000_003 * 999_983;
        let f = factor_int(n);
        assert_eq!(f, vec![(999_983, 1), (1_000_003, 1)]);
    }
}
