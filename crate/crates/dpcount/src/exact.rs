//! Exact scalar arithmetic used throughout the crate: arbitrary-precision
//! rationals, rigorous rational intervals, and constants of the shape
//! `r · π^a · √|Δ|^b` kept symbolic until a numeric enclosure is requested.
//!
//! Nothing in this module (or anywhere else on a counting or constant path)
//! uses floating point. Transcendentals enter only as rational enclosures.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i128) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Floor of the integer square root.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative number");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128 + 2;
    while x * x > n {
        x = (x + n / x) / 2;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Largest integer `k` with `k ≤ √r`, for rational `r ≥ 0`.
///
/// Used to turn norm constraints `‖x‖² ≤ r` into enumeration ranges; the
/// result is a valid integer cap because norms are integers on the paths
/// where this is called.
pub fn floor_sqrt_rational(r: &Rational) -> i128 {
    if r.is_negative() {
        return -1;
    }
    // floor(sqrt(n/d)) = floor(sqrt(n*d)/d): search around isqrt(n*d)/d.
    let n: i128 = int_to_i128(r.numer());
    let d: i128 = int_to_i128(r.denom());
    let mut k = isqrt(n / d);
    while Rational::from(BigInt::from((k + 1) * (k + 1))) <= *r {
        k += 1;
    }
    while k > 0 && Rational::from(BigInt::from(k * k)) > *r {
        k -= 1;
    }
    k
}

pub fn int_to_i128(n: &BigInt) -> i128 {
    let (sign, digits) = n.to_u64_digits();
    let mut v: i128 = 0;
    for d in digits.iter().rev() {
        v = v
            .checked_shl(64)
            .and_then(|v| v.checked_add(*d as i128))
            .expect("integer exceeds i128 range");
    }
    if sign == Sign::Minus {
        -v
    } else {
        v
    }
}

/// A closed rational interval `[lo, hi]` with outward-rounded arithmetic.
///
/// Operations never let the true value escape: multiplication takes the
/// min/max of endpoint products, and `shrink` rounds endpoints outward onto
/// dyadic rationals so that long products (Euler factors) keep denominators
/// bounded.
#[derive(Clone, Debug, PartialEq)]
pub struct QInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl QInterval {
    pub fn point(v: Rational) -> Self {
        QInterval { lo: v.clone(), hi: v }
    }

    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        QInterval { lo, hi }
    }

    pub fn one() -> Self {
        QInterval::point(Rational::one())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &Rational) -> bool {
        self.lo <= *v && *v <= self.hi
    }

    pub fn contains_interval(&self, other: &QInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn add(&self, other: &QInterval) -> QInterval {
        QInterval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn mul(&self, other: &QInterval) -> QInterval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        QInterval::new(lo, hi)
    }

    pub fn mul_rat(&self, r: &Rational) -> QInterval {
        if r.is_negative() {
            QInterval::new(&self.hi * r, &self.lo * r)
        } else {
            QInterval::new(&self.lo * r, &self.hi * r)
        }
    }

    pub fn recip(&self) -> QInterval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "interval straddles zero"
        );
        QInterval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn div(&self, other: &QInterval) -> QInterval {
        self.mul(&other.recip())
    }

    pub fn powi(&self, k: u32) -> QInterval {
        let mut out = QInterval::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Round endpoints outward to denominator 2^bits. Keeps the interval
    /// valid while bounding coefficient growth in long products.
    pub fn shrink(&self, bits: u32) -> QInterval {
        QInterval::new(dyadic_floor(&self.lo, bits), dyadic_ceil(&self.hi, bits))
    }

    /// Decimal rendering of the two endpoints, rounded outward.
    pub fn to_decimals(&self, digits: usize) -> (String, String) {
        (
            decimal_round(&self.lo, digits, false),
            decimal_round(&self.hi, digits, true),
        )
    }
}

impl fmt::Display for QInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimals(12);
        write!(f, "[{lo}, {hi}]")
    }
}

fn dyadic_floor(v: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = (v * Rational::from(scale.clone())).floor();
    scaled / Rational::from(scale)
}

fn dyadic_ceil(v: &Rational, bits: u32) -> Rational {
    let scale = BigInt::one() << bits;
    let scaled = (v * Rational::from(scale.clone())).ceil();
    scaled / Rational::from(scale)
}

/// Decimal string for `v` with the stated number of fractional digits,
/// rounded up or down as requested.
pub fn decimal_round(v: &Rational, digits: usize, round_up: bool) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = v * Rational::from(scale.clone());
    let int = if round_up { scaled.ceil() } else { scaled.floor() };
    let int = int.to_integer();
    let neg = int.is_negative();
    let abs = int.magnitude().to_string();
    let abs = if abs.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - abs.len()), abs)
    } else {
        abs
    };
    let (whole, frac) = abs.split_at(abs.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, whole, frac)
}

/// Enclosure of π, good to ~1e-35.
pub fn pi_interval() -> QInterval {
    let lo: BigInt = "31415926535897932384626433832795028841".parse().unwrap();
    let hi: BigInt = "31415926535897932384626433832795028842".parse().unwrap();
    let d: BigInt = BigInt::from(10u32).pow(37);
    QInterval::new(
        Rational::new(lo, d.clone()),
        Rational::new(hi, d),
    )
}

/// Enclosure of ln 2, good to ~1e-35.
fn ln2_interval() -> QInterval {
    let lo: BigInt = "6931471805599453094172321214581765680".parse().unwrap();
    let hi: BigInt = "6931471805599453094172321214581765681".parse().unwrap();
    let d: BigInt = BigInt::from(10u32).pow(37);
    QInterval::new(Rational::new(lo, d.clone()), Rational::new(hi, d))
}

/// Rigorous enclosure of the natural logarithm of a positive rational.
///
/// Range-reduces by powers of two, then sums the atanh series for the
/// mantissa in `[1, 2)`; the series tail is bounded geometrically and added
/// to the upper endpoint.
pub fn ln_interval(v: &Rational) -> QInterval {
    assert!(v.is_positive(), "log of nonpositive value");
    let mut m = v.clone();
    let mut k: i64 = 0;
    let two = rat(2, 1);
    let one = Rational::one();
    while m >= two {
        m /= two.clone();
        k += 1;
    }
    while m < one {
        m *= two.clone();
        k -= 1;
    }
    // ln m = 2 atanh(x), x = (m-1)/(m+1) ∈ [0, 1/3).
    let x = (&m - &one) / (&m + &one);
    let x2 = &x * &x;
    let mut term = x.clone();
    let mut sum = Rational::zero();
    let mut n: i64 = 1;
    // 60 terms at |x| < 1/3 leaves a tail below 3^-120.
    for _ in 0..60 {
        sum += &term / Rational::from(BigInt::from(n));
        term *= &x2;
        n += 2;
    }
    // Tail bound: term/(n (1-x²)) with everything at the current values.
    let tail = if x.is_zero() {
        Rational::zero()
    } else {
        &term / (Rational::from(BigInt::from(n)) * (Rational::one() - &x2))
    };
    let ln_m = QInterval::new(sum.clone() * rat(2, 1), (sum + tail) * rat(2, 1));
    let ln2k = ln2_interval().mul_rat(&Rational::from(BigInt::from(k)));
    ln_m.add(&ln2k).shrink(160)
}

/// Rigorous enclosure of √n for a positive integer n.
pub fn sqrt_interval(n: i64) -> QInterval {
    assert!(n > 0);
    // Newton on rationals, then certify endpoints.
    let target = rat_int(n as i128);
    let mut x = rat_int(isqrt(n as i128).max(1));
    for _ in 0..8 {
        x = (&x + &target / &x) / rat(2, 1);
        x = QInterval::point(x).shrink(200).hi;
    }
    // x ≥ √n after Newton from above; derive lower bound via n/x.
    if &x * &x < target {
        // ensure x is an upper bound
        while &x * &x < target {
            x += rat(1, 1_000_000_000);
        }
    }
    let lo = &target / &x;
    QInterval::new(lo, x).shrink(160)
}

/// An exact constant `coef · π^pi_pow · √|Δ|^sqrt_disc_pow`.
///
/// Even powers of √|Δ| are folded into the coefficient on normalization, so
/// equality of normalized values is decidable coefficient-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicReal {
    pub coef: Rational,
    pub pi_pow: i32,
    pub sqrt_disc_pow: i32,
    /// |Δ| the square root refers to; 1 when sqrt_disc_pow = 0.
    pub abs_disc: i64,
}

impl SymbolicReal {
    pub fn rational(coef: Rational) -> Self {
        SymbolicReal { coef, pi_pow: 0, sqrt_disc_pow: 0, abs_disc: 1 }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn new(coef: Rational, pi_pow: i32, sqrt_disc_pow: i32, abs_disc: i64) -> Self {
        SymbolicReal { coef, pi_pow, sqrt_disc_pow, abs_disc }.normalized()
    }

    pub fn normalized(mut self) -> Self {
        while self.sqrt_disc_pow >= 2 {
            self.coef *= rat_int(self.abs_disc as i128);
            self.sqrt_disc_pow -= 2;
        }
        while self.sqrt_disc_pow <= -2 {
            self.coef /= rat_int(self.abs_disc as i128);
            self.sqrt_disc_pow += 2;
        }
        if self.sqrt_disc_pow == 0 {
            self.abs_disc = 1;
        }
        self
    }

    pub fn mul(&self, other: &SymbolicReal) -> SymbolicReal {
        let abs_disc = if self.sqrt_disc_pow != 0 {
            assert!(
                other.sqrt_disc_pow == 0 || other.abs_disc == self.abs_disc,
                "mixing square roots of different discriminants"
            );
            self.abs_disc
        } else {
            other.abs_disc
        };
        SymbolicReal {
            coef: &self.coef * &other.coef,
            pi_pow: self.pi_pow + other.pi_pow,
            sqrt_disc_pow: self.sqrt_disc_pow + other.sqrt_disc_pow,
            abs_disc,
        }
        .normalized()
    }

    pub fn mul_rat(&self, r: &Rational) -> SymbolicReal {
        SymbolicReal { coef: &self.coef * r, ..self.clone() }
    }

    pub fn pow(&self, k: u32) -> SymbolicReal {
        let mut out = SymbolicReal::one();
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Numeric enclosure using the π and √|Δ| intervals.
    pub fn to_interval(&self) -> QInterval {
        let mut out = QInterval::point(self.coef.clone());
        let pi = pi_interval();
        if self.pi_pow > 0 {
            out = out.mul(&pi.powi(self.pi_pow as u32));
        } else if self.pi_pow < 0 {
            out = out.div(&pi.powi((-self.pi_pow) as u32));
        }
        match self.sqrt_disc_pow {
            0 => {}
            1 => out = out.mul(&sqrt_interval(self.abs_disc)),
            -1 => out = out.div(&sqrt_interval(self.abs_disc)),
            _ => unreachable!("normalized symbolic value"),
        }
        out.shrink(200)
    }
}

impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coef)?;
        if self.pi_pow != 0 {
            write!(f, " * pi^{}", self.pi_pow)?;
        }
        if self.sqrt_disc_pow != 0 {
            write!(f, " * sqrt({})^{}", self.abs_disc, self.sqrt_disc_pow)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isqrt_edges() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(1), 1);
        assert_eq!(isqrt(99), 9);
        assert_eq!(isqrt(100), 10);
        assert_eq!(isqrt(10_000_000_019), 100_000);
    }

    #[test]
    fn ln_encloses_known_values() {
        let l = ln_interval(&rat(1, 1));
        assert!(l.contains(&Rational::zero()));
        assert!(l.width() < rat(1, 1_000_000_000));

        // ln 10 = 2.302585092994046...
        let l = ln_interval(&rat(10, 1));
        assert!(l.contains(&rat(2302585093, 1_000_000_000).clone()) || {
            let mid = (l.lo.clone() + l.hi.clone()) / rat(2, 1);
            (mid - rat(2302585093, 1_000_000_000)).abs() < rat(1, 1_000_000)
        });
        assert!(l.width() < rat(1, 1_000_000_000));
    }

    #[test]
    fn sqrt_encloses() {
        for n in [1i64, 2, 3, 4, 5, 20, 1000] {
            let s = sqrt_interval(n);
            let n = rat_int(n as i128);
            assert!(&s.lo * &s.lo <= n && n <= &s.hi * &s.hi);
            assert!(s.width() < rat(1, 1_000_000_000));
        }
    }

    #[test]
    fn symbolic_normalization_folds_disc() {
        // (√20)² = 20
        let v = SymbolicReal::new(rat(1, 3), 0, 2, 20);
        assert_eq!(v, SymbolicReal::rational(rat(20, 3)));
        let w = SymbolicReal::new(rat(1, 1), 1, -1, 20);
        let ww = w.pow(2);
        assert_eq!(ww, SymbolicReal::new(rat(1, 20), 2, 0, 1));
    }

    #[test]
    fn interval_mul_is_outward() {
        let a = QInterval::new(rat(1, 3), rat(1, 2));
        let b = QInterval::new(rat(-2, 1), rat(3, 1));
        let p = a.mul(&b);
        assert_eq!(p.lo, rat(-1, 1));
        assert_eq!(p.hi, rat(3, 2));
    }

    #[test]
    fn decimal_rendering_rounds_outward() {
        let v = rat(1, 3);
        assert_eq!(decimal_round(&v, 4, false), "0.3333");
        assert_eq!(decimal_round(&v, 4, true), "0.3334");
        let n = rat(-1, 3);
        assert_eq!(decimal_round(&n, 4, false), "-0.3334");
        assert_eq!(decimal_round(&n, 4, true), "-0.3333");
    }
}
