//! Arbitrary-precision dyadic floating point: a `BigInt` mantissa times a
//! power of two, with explicit rounding at a caller-chosen precision, plus a
//! directed-rounding interval layer and a rigorous interval logarithm.
//!
//! Addition, subtraction, and multiplication are computed exactly and then
//! rounded once; division carries guard and sticky bits so directed and
//! nearest rounding are exact. The interval layer rounds outward, so every
//! interval result encloses the exact real result.

use crate::error::{GeomError, Result};
use num::bigint::{BigInt, BigUint, Sign};
use num::{Integer, One, Signed, Zero};
use std::cmp::Ordering;

/// Rounding directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Round to nearest, ties to even.
    Nearest,
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
}

/// A dyadic rational `mant * 2^exp`. Zero is canonicalized to `(0, 0)`.
#[derive(Debug, Clone)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Self {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self {
            mant: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self {
            mant: BigInt::from(v),
            exp: 0,
        }
        .normalized()
    }

    /// Exact conversion: every finite f64 is a dyadic rational.
    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "dyadic conversion requires a finite value");
        if x == 0.0 {
            return Self::zero();
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mag, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mant = BigInt::from(mag);
        if neg {
            mant = -mant;
        }
        Self { mant, exp }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        // Trim trailing zero bits to keep mantissas small and equality
        // structural.
        let tz = self.mant.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mant >>= tz;
            self.exp += tz as i64;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn neg(&self) -> Self {
        Self {
            mant: -self.mant.clone(),
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Self {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Binary magnitude exponent: the unique `s` with `2^(s-1) <= |x| < 2^s`.
    /// Zero input returns i64::MIN.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN;
        }
        self.mant.magnitude().bits() as i64 + self.exp
    }

    /// Exact sum rounded once at `prec` bits.
    pub fn add(&self, other: &Self, prec: u32, mode: Round) -> Self {
        let e = self.exp.min(other.exp);
        let a = &self.mant << usize::try_from(self.exp - e).expect("exponent gap");
        let b = &other.mant << usize::try_from(other.exp - e).expect("exponent gap");
        round_raw(a + b, e, prec, mode)
    }

    pub fn sub(&self, other: &Self, prec: u32, mode: Round) -> Self {
        self.add(&other.neg(), prec, mode)
    }

    /// Exact product rounded once at `prec` bits.
    pub fn mul(&self, other: &Self, prec: u32, mode: Round) -> Self {
        round_raw(
            &self.mant * &other.mant,
            self.exp + other.exp,
            prec,
            mode,
        )
    }

    /// Quotient with two guard bits plus a sticky bit, then a single
    /// rounding: directed and nearest modes are exact.
    pub fn div(&self, other: &Self, prec: u32, mode: Round) -> Result<Self> {
        if other.is_zero() {
            return Err(GeomError::DivisionByZero { lo: 0.0, hi: 0.0 });
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let na = self.mant.magnitude().bits() as i64;
        let nb = other.mant.magnitude().bits() as i64;
        let shift = (prec as i64 + 2 + nb - na).max(0) as usize;
        let num = &self.mant << shift;
        let (q, r) = num.div_rem(&other.mant);
        let sticky = !r.is_zero();
        let exp = self.exp - other.exp - shift as i64;
        // Append the sticky bit below the quotient so one rounding suffices.
        let sign = if (self.mant.sign() == Sign::Minus) ^ (other.mant.sign() == Sign::Minus) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        let mut mag = q.magnitude() << 1u32;
        if sticky {
            mag += 1u32;
        }
        let wide = BigInt::from_biguint(if mag.is_zero() { Sign::NoSign } else { sign }, mag);
        Ok(round_raw(wide, exp - 1, prec, mode))
    }

    /// Integer power by repeated squaring, rounding at `prec` per product.
    pub fn powi(&self, mut n: u64, prec: u32, mode: Round) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base, prec, mode);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base, prec, mode);
            }
        }
        acc
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        if self.exp == other.exp {
            return self.mant.cmp(&other.mant);
        }
        // Compare via exact difference to avoid huge alignments on the fast
        // path only when signs already decide.
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        if sa != sb {
            return sa.cmp(&sb);
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << usize::try_from(self.exp - e).expect("exponent gap");
        let b = &other.mant << usize::try_from(other.exp - e).expect("exponent gap");
        a.cmp(&b)
    }

    /// Nearest f64 (may overflow to infinity or underflow to zero; for
    /// reporting only, never used inside certified computations).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.magnitude().bits();
        // Keep 64 mantissa bits; the remainder only shifts the exponent.
        let drop = bits.saturating_sub(64);
        let top: BigUint = self.mant.magnitude() >> drop;
        let mut v = 0.0f64;
        for d in top.to_u64_digits().iter().rev() {
            v = v * (u64::MAX as f64 + 1.0) + *d as f64;
        }
        let e = self.exp + drop as i64;
        let scaled = v * pow2_f64(e);
        if self.mant.is_negative() {
            -scaled
        } else {
            scaled
        }
    }

    /// Exact value as a big rational (numerator / denominator).
    pub fn to_rational(&self) -> num::rational::BigRational {
        let num = self.mant.clone();
        if self.exp >= 0 {
            let shifted = num << usize::try_from(self.exp).expect("exponent in range");
            num::rational::BigRational::from_integer(shifted)
        } else {
            let den = BigInt::one() << usize::try_from(-self.exp).expect("exponent in range");
            num::rational::BigRational::new(num, den)
        }
    }

    /// Scientific decimal magnitude `(mantissa, exponent10)` with
    /// `1 <= |mantissa| < 10` (mantissa carries the sign). Safe for values
    /// far outside f64 range.
    pub fn to_sci(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let bits = self.mant.magnitude().bits();
        let drop = bits.saturating_sub(56);
        let top: BigUint = self.mant.magnitude() >> drop;
        let mut frac = 0.0f64;
        for d in top.to_u64_digits().iter().rev() {
            frac = frac * (u64::MAX as f64 + 1.0) + *d as f64;
        }
        // |x| = frac * 2^(exp + drop)
        let log10 = frac.log10() + (self.exp + drop as i64) as f64 * std::f64::consts::LOG10_2;
        let e10 = log10.floor() as i64;
        let mut m = 10f64.powf(log10 - e10 as f64);
        // Guard the floor/pow seam.
        if m >= 10.0 {
            m /= 10.0;
        }
        if self.mant.is_negative() {
            m = -m;
        }
        (m, e10)
    }
}

fn pow2_f64(e: i64) -> f64 {
    if e > 1100 {
        f64::INFINITY
    } else if e < -1100 {
        0.0
    } else {
        // Split to stay inside powi's exact range.
        let h = e / 2;
        2f64.powi(h as i32) * 2f64.powi((e - h) as i32)
    }
}

impl PartialEq for Dyadic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for Dyadic {}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl std::fmt::Display for Dyadic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (m, e) = self.to_sci();
        write!(f, "{m:.6}e{e}")
    }
}

fn round_raw(mant: BigInt, exp: i64, prec: u32, mode: Round) -> Dyadic {
    let bits = mant.magnitude().bits();
    if bits <= prec as u64 {
        return Dyadic { mant, exp }.normalized();
    }
    let shift = (bits - prec as u64) as usize;
    let neg = mant.sign() == Sign::Minus;
    let low = mant.magnitude() & &((BigUint::one() << shift) - 1u32);
    let mut hi: BigUint = mant.magnitude() >> shift;
    let round_away = match mode {
        Round::Nearest => {
            let half = BigUint::one() << (shift - 1);
            match low.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => (&hi & BigUint::one()) == BigUint::one(),
            }
        }
        Round::Down => neg && !low.is_zero(),
        Round::Up => !neg && !low.is_zero(),
    };
    if round_away {
        hi += 1u32;
    }
    let sign = if hi.is_zero() {
        Sign::NoSign
    } else if neg {
        Sign::Minus
    } else {
        Sign::Plus
    };
    Dyadic {
        mant: BigInt::from_biguint(sign, hi),
        exp: exp + shift as i64,
    }
    .normalized()
}

/// A closed interval of dyadic endpoints with outward rounding at a fixed
/// working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct DyInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DyInterval {
    pub fn point(x: Dyadic) -> Self {
        Self { lo: x.clone(), hi: x }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::point(Dyadic::from_f64(x))
    }

    pub fn new(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn add(&self, o: &Self, prec: u32) -> Self {
        Self {
            lo: self.lo.add(&o.lo, prec, Round::Down),
            hi: self.hi.add(&o.hi, prec, Round::Up),
        }
    }

    pub fn sub(&self, o: &Self, prec: u32) -> Self {
        Self {
            lo: self.lo.sub(&o.hi, prec, Round::Down),
            hi: self.hi.sub(&o.lo, prec, Round::Up),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn mul(&self, o: &Self, prec: u32) -> Self {
        // Products are exact before the single outward rounding.
        let exact = [
            self.lo.mul(&o.lo, u32::MAX, Round::Nearest),
            self.lo.mul(&o.hi, u32::MAX, Round::Nearest),
            self.hi.mul(&o.lo, u32::MAX, Round::Nearest),
            self.hi.mul(&o.hi, u32::MAX, Round::Nearest),
        ];
        let mut lo = exact[0].clone();
        let mut hi = exact[0].clone();
        for c in &exact[1..] {
            if *c < lo {
                lo = c.clone();
            }
            if *c > hi {
                hi = c.clone();
            }
        }
        Self {
            lo: round_raw(lo.mant, lo.exp, prec, Round::Down),
            hi: round_raw(hi.mant, hi.exp, prec, Round::Up),
        }
    }

    pub fn div(&self, o: &Self, prec: u32) -> Result<Self> {
        let zero = Dyadic::zero();
        if o.lo <= zero && zero <= o.hi {
            return Err(GeomError::DivisionByZero { lo: 0.0, hi: 0.0 });
        }
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&o.lo, &o.hi] {
                let d = a.div(b, prec, Round::Down)?;
                let u = a.div(b, prec, Round::Up)?;
                lo = Some(match lo {
                    None => d.clone(),
                    Some(c) => {
                        if d < c {
                            d
                        } else {
                            c
                        }
                    }
                });
                hi = Some(match hi {
                    None => u.clone(),
                    Some(c) => {
                        if u > c {
                            u
                        } else {
                            c
                        }
                    }
                });
            }
        }
        Ok(Self {
            lo: lo.expect("nonempty candidates"),
            hi: hi.expect("nonempty candidates"),
        })
    }

    pub fn scale_i64(&self, k: i64, prec: u32) -> Self {
        let kd = DyInterval::point(Dyadic::from_i64(k));
        self.mul(&kd, prec)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let d = Dyadic::from_f64(x);
        self.lo <= d && d <= self.hi
    }

    /// Upper bound on |x| over the interval.
    pub fn mag_up(&self) -> Dyadic {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn width(&self, prec: u32) -> Dyadic {
        self.hi.sub(&self.lo, prec, Round::Up)
    }

    pub fn to_f64_mid(&self) -> f64 {
        0.5 * (self.lo.to_f64() + self.hi.to_f64())
    }

    /// Rigorous natural logarithm: requires a strictly positive interval.
    ///
    /// Each endpoint is range-reduced by an exact power of two into
    /// [3/4, 3/2), mapped through u = (y-1)/(y+1), and summed with the atanh
    /// series; the geometric tail is bounded outward and ln 2 itself is
    /// enclosed by the same series at u = 1/3.
    pub fn ln(&self, prec: u32) -> Result<Self> {
        if self.lo <= Dyadic::zero() {
            return Err(GeomError::LnNonPositive);
        }
        let lo = ln_point(&self.lo, prec)?;
        let hi = ln_point(&self.hi, prec)?;
        Ok(Self {
            lo: lo.lo,
            hi: hi.hi,
        })
    }
}

impl std::fmt::Display for DyInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

fn ln_point(x: &Dyadic, prec: u32) -> Result<DyInterval> {
    let wp = prec + 32;
    // Reduce x = y * 2^s with y in [3/4, 3/2).
    let mut s = x.mag_exp(); // y0 = x * 2^-s in [1/2, 1)
    let mut y = x.mul_pow2(-s);
    let three_quarters = Dyadic::from_f64(0.75);
    if y < three_quarters {
        s -= 1;
        y = y.mul_pow2(1);
    }
    let yi = DyInterval::point(y);
    let one = DyInterval::point(Dyadic::one());
    let u = yi.sub(&one, wp).div(&yi.add(&one, wp), wp)?;
    let at = atanh_series(&u, wp)?;
    let two = DyInterval::point(Dyadic::from_i64(2));
    let mut out = two.mul(&at, wp);
    if s != 0 {
        let ln2 = ln2_interval(wp)?;
        out = out.add(&ln2.scale_i64(s, wp), wp);
    }
    Ok(out)
}

fn ln2_interval(prec: u32) -> Result<DyInterval> {
    // ln 2 = 2 atanh(1/3).
    let third = DyInterval::point(Dyadic::one())
        .div(&DyInterval::point(Dyadic::from_i64(3)), prec)?;
    let at = atanh_series(&third, prec)?;
    Ok(at.scale_i64(2, prec))
}

/// Interval atanh via the odd power series, valid for |u| < 1/2; the
/// truncation tail is added outward using the geometric bound.
fn atanh_series(u: &DyInterval, prec: u32) -> Result<DyInterval> {
    if u.lo.is_zero() && u.hi.is_zero() {
        return Ok(DyInterval::point(Dyadic::zero()));
    }
    let u2 = u.mul(u, prec);
    assert!(
        u2.mag_up() < Dyadic::one(),
        "atanh series requires |u| < 1"
    );
    let u2_mag = DyInterval::point(u2.mag_up());
    let mut term = u.clone();
    let mut sum = u.clone();
    let stop_exp = u.mag_up().mag_exp() - (prec as i64 + 8);
    let mut j: i64 = 1;
    loop {
        term = term.mul(&u2, prec);
        let denom = DyInterval::point(Dyadic::from_i64(2 * j + 1));
        sum = sum.add(&term.div(&denom, prec)?, prec);
        if term.mag_up().mag_exp() < stop_exp {
            break;
        }
        j += 1;
        assert!(j < 1_000_000, "atanh series failed to converge");
    }
    // Tail: sum_{k>j} |u|^{2k+1}/(2k+1) <= |term| * q / (1 - q), q = |u|^2.
    let one = DyInterval::point(Dyadic::one());
    let q = u2_mag.clone();
    let tail = DyInterval::point(term.mag_up())
        .mul(&q, prec)
        .div(&one.sub(&q, prec), prec)?;
    let bound = tail.hi.abs();
    Ok(DyInterval {
        lo: sum.lo.sub(&bound, prec, Round::Down),
        hi: sum.hi.add(&bound, prec, Round::Up),
    })
}
