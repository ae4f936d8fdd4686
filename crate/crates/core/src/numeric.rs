//! Dyadic fixed-point arithmetic with directed rounding, plus interval
//! enclosures built on top of it.
//!
//! Every quantity the engine touches lives in `[0, 2]`, so a fixed-point
//! representation `mant / 2^bits` is exact under addition and subtraction
//! and needs rounding only for multiplication and division. Directed
//! variants (`Floor`/`Ceil`) make outward- and inward-rounded interval
//! operations straightforward, which is what keeps "certified" verdicts
//! honest: a certified claim is one whose enclosure arithmetic proves it.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Rounding mode for the inexact operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Round to nearest, ties to even.
    Nearest,
    Floor,
    Ceil,
}

/// A dyadic rational `mant / 2^bits` with a fixed number of fractional bits.
///
/// All values participating in one computation must share the same `bits`;
/// mixing precisions is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fixed {
    mant: BigInt,
    bits: u32,
}

impl Fixed {
    pub fn from_mantissa(mant: BigInt, bits: u32) -> Self {
        Fixed { mant, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Fixed { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        Fixed { mant: BigInt::one() << bits, bits }
    }

    /// Exactly 1/2, the critical point of every tent map here.
    pub fn half(bits: u32) -> Self {
        Fixed { mant: BigInt::one() << (bits - 1), bits }
    }

    pub fn from_int(v: i64, bits: u32) -> Self {
        Fixed { mant: BigInt::from(v) << bits, bits }
    }

    /// Exact conversion: every finite f64 is a dyadic rational.
    pub fn from_f64(v: f64, bits: u32) -> Self {
        assert!(v.is_finite(), "non-finite value");
        let (m, e) = integer_decode(v);
        let mant = BigInt::from(m);
        let shift = e + bits as i64;
        let mant = if shift >= 0 { mant << shift } else { shift_right_round(mant, (-shift) as u32, Round::Nearest) };
        Fixed { mant, bits }
    }

    /// Parse a decimal literal such as `0.30901699`, rounding to `bits`
    /// fractional bits in the requested mode.
    pub fn from_decimal(text: &str, bits: u32, round: Round) -> Result<Self> {
        let s = text.trim();
        let (neg, s) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(format!("empty number `{text}`")));
        }
        if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal literal `{text}`")));
        }
        let digits: String = format!("{int_part}{frac_part}");
        let num: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal literal `{text}`")))?;
        let num = if neg { -num } else { num };
        let den = BigInt::from(10u8).pow(frac_part.len() as u32);
        let mant = div_round(num << bits, &den, round);
        Ok(Fixed { mant, bits })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    /// One unit in the last place at this precision.
    pub fn ulp(bits: u32) -> Self {
        Fixed { mant: BigInt::one(), bits }
    }

    pub fn add(&self, rhs: &Fixed) -> Fixed {
        self.check(rhs);
        Fixed { mant: &self.mant + &rhs.mant, bits: self.bits }
    }

    pub fn sub(&self, rhs: &Fixed) -> Fixed {
        self.check(rhs);
        Fixed { mant: &self.mant - &rhs.mant, bits: self.bits }
    }

    pub fn neg(&self) -> Fixed {
        Fixed { mant: -&self.mant, bits: self.bits }
    }

    pub fn abs(&self) -> Fixed {
        Fixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn abs_diff(&self, rhs: &Fixed) -> Fixed {
        self.sub(rhs).abs()
    }

    pub fn mul(&self, rhs: &Fixed, round: Round) -> Fixed {
        self.check(rhs);
        let prod = &self.mant * &rhs.mant;
        Fixed { mant: shift_right_round(prod, self.bits, round), bits: self.bits }
    }

    pub fn div(&self, rhs: &Fixed, round: Round) -> Fixed {
        self.check(rhs);
        assert!(!rhs.mant.is_zero(), "division by zero");
        Fixed { mant: div_round(&self.mant << self.bits, &rhs.mant, round), bits: self.bits }
    }

    /// Halve (exact: mantissas here always stay well above one ulp).
    pub fn half_of(&self, round: Round) -> Fixed {
        Fixed { mant: shift_right_round(self.mant.clone(), 1, round), bits: self.bits }
    }

    pub fn shl(&self, n: u32) -> Fixed {
        Fixed { mant: &self.mant << n, bits: self.bits }
    }

    /// 2^-n at this precision (zero if n exceeds the precision).
    pub fn pow2_neg(n: u32, bits: u32) -> Fixed {
        if n > bits {
            Fixed::zero(bits)
        } else {
            Fixed { mant: BigInt::one() << (bits - n), bits }
        }
    }

    /// Re-round to a different precision.
    pub fn to_bits(&self, bits: u32, round: Round) -> Fixed {
        if bits >= self.bits {
            Fixed { mant: &self.mant << (bits - self.bits), bits }
        } else {
            Fixed { mant: shift_right_round(self.mant.clone(), self.bits - bits, round), bits }
        }
    }

    pub fn min(self, rhs: Fixed) -> Fixed {
        if self <= rhs { self } else { rhs }
    }

    pub fn max(self, rhs: Fixed) -> Fixed {
        if self >= rhs { self } else { rhs }
    }

    pub fn clamp01(self) -> Fixed {
        let one = Fixed::one(self.bits);
        if self.is_negative() {
            Fixed::zero(self.bits)
        } else if self > one {
            one
        } else {
            self
        }
    }

    /// Approximate conversion for reporting; exact for small mantissas.
    pub fn to_f64(&self) -> f64 {
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let nbits = mag.bits();
        let v = if nbits <= 63 {
            let m: u64 = mag.try_into().unwrap();
            m as f64 / 2f64.powi(self.bits as i32)
        } else {
            let shift = nbits - 53;
            let top: u64 = (mag >> shift).try_into().unwrap();
            top as f64 * 2f64.powi(shift as i32 - self.bits as i32)
        };
        if neg { -v } else { v }
    }

    /// Decimal rendering with the given number of fractional digits,
    /// rounding to nearest.
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.mant.is_negative();
        let mag = self.mant.magnitude().clone();
        let scaled = BigInt::from(mag) * BigInt::from(10u8).pow(digits as u32);
        let val = shift_right_round(scaled, self.bits, Round::Nearest);
        let s = val.to_string();
        let s = if s.len() <= digits {
            format!("0.{}{}", "0".repeat(digits - s.len()), s)
        } else {
            let (int_part, frac_part) = s.split_at(s.len() - digits);
            if digits == 0 { int_part.to_string() } else { format!("{int_part}.{frac_part}") }
        };
        if neg { format!("-{s}") } else { s }
    }

    /// Render in the `value@bits` exchange format.
    pub fn to_annotated(&self, digits: usize) -> String {
        format!("{}@{}", self.to_decimal(digits), self.bits)
    }

    /// Parse the `value@bits` exchange format; a bare decimal uses
    /// `default_bits`.
    pub fn from_annotated(text: &str, default_bits: u32) -> Result<Self> {
        match text.rsplit_once('@') {
            Some((v, b)) => {
                let bits: u32 = b.parse().map_err(|_| Error::Parse(format!("bad precision suffix in `{text}`")))?;
                Fixed::from_decimal(v, bits, Round::Nearest)
            }
            None => Fixed::from_decimal(text, default_bits, Round::Nearest),
        }
    }

    /// Floor/ceil bracket of the square root, used for algebraic slopes.
    pub fn sqrt_bracket(&self) -> (Fixed, Fixed) {
        assert!(!self.mant.is_negative());
        let scaled = self.mant.magnitude() << self.bits;
        let lo = scaled.sqrt();
        let lof = Fixed { mant: BigInt::from(lo.clone()), bits: self.bits };
        let hi = if &lo * &lo == scaled { lo } else { lo + 1u8 };
        (lof, Fixed { mant: BigInt::from(hi), bits: self.bits })
    }

    fn check(&self, rhs: &Fixed) {
        assert_eq!(self.bits, rhs.bits, "mixed fixed-point precisions");
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fixed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.check(other);
        self.mant.cmp(&other.mant)
    }
}

impl fmt::Debug for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.to_decimal(24), self.bits)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(24))
    }
}

fn integer_decode(v: f64) -> (u64, i64) {
    let bits = v.to_bits();
    assert_eq!(bits >> 63, 0, "negative values not expected here");
    let exponent = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = if exponent == 0 { (bits & 0xf_ffff_ffff_ffff) << 1 } else { (bits & 0xf_ffff_ffff_ffff) | 0x10_0000_0000_0000 };
    (mantissa, exponent - (1023 + 52))
}

fn shift_right_round(v: BigInt, shift: u32, round: Round) -> BigInt {
    if shift == 0 {
        return v;
    }
    let floor = &v >> shift;
    let rem = &v - (&floor << shift);
    if rem.is_zero() {
        return floor;
    }
    match round {
        Round::Floor => floor,
        Round::Ceil => floor + 1u8,
        Round::Nearest => {
            let twice = &rem << 1u8;
            let den = BigInt::one() << shift;
            match twice.cmp(&den) {
                Ordering::Less => floor,
                Ordering::Greater => floor + 1u8,
                Ordering::Equal => {
                    if floor.is_even() { floor } else { floor + 1u8 }
                }
            }
        }
    }
}

fn div_round(num: BigInt, den: &BigInt, round: Round) -> BigInt {
    let (q, r) = num.div_mod_floor(den);
    if r.is_zero() {
        return q;
    }
    // div_mod_floor gives 0 <= r < |den| for positive den.
    let den = den.abs();
    match round {
        Round::Floor => q,
        Round::Ceil => q + 1u8,
        Round::Nearest => {
            let twice = &r << 1u8;
            match twice.cmp(&den) {
                Ordering::Less => q,
                Ordering::Greater => q + 1u8,
                Ordering::Equal => {
                    if q.is_even() { q } else { q + 1u8 }
                }
            }
        }
    }
}

/// A closed interval `[lo, hi]` of fixed-point endpoints.
///
/// Enclosures are how numeric claims get certified: an operation on
/// enclosures rounds outward, so the result is guaranteed to contain the
/// exact image of every point of the input.
#[derive(Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: Fixed,
    pub hi: Fixed,
}

impl Enclosure {
    pub fn new(lo: Fixed, hi: Fixed) -> Self {
        assert!(lo <= hi, "inverted enclosure");
        Enclosure { lo, hi }
    }

    pub fn point(x: Fixed) -> Self {
        Enclosure { lo: x.clone(), hi: x }
    }

    pub fn bits(&self) -> u32 {
        self.lo.bits()
    }

    pub fn width(&self) -> Fixed {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Fixed {
        self.lo.add(&self.hi).half_of(Round::Nearest)
    }

    pub fn contains(&self, x: &Fixed) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_enclosure(&self, other: &Enclosure) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        if lo <= hi { Some(Enclosure { lo, hi }) } else { None }
    }

    pub fn hull(&self, other: &Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// Largest possible distance between a point of `self` and `x`.
    pub fn max_dist_to(&self, x: &Fixed) -> Fixed {
        self.lo.abs_diff(x).max(self.hi.abs_diff(x))
    }

    /// Smallest possible distance between a point of `self` and `x`
    /// (zero when `x` is inside).
    pub fn min_dist_to(&self, x: &Fixed) -> Fixed {
        if self.contains(x) {
            Fixed::zero(self.bits())
        } else if x < &self.lo {
            self.lo.sub(x)
        } else {
            x.sub(&self.hi)
        }
    }

    /// Smallest possible distance between points of the two enclosures.
    pub fn min_dist_to_enclosure(&self, other: &Enclosure) -> Fixed {
        if self.intersect(other).is_some() {
            Fixed::zero(self.bits())
        } else if other.lo > self.hi {
            other.lo.sub(&self.hi)
        } else {
            self.lo.sub(&other.hi)
        }
    }

    /// Fatten by `r` on both sides.
    pub fn inflate(&self, r: &Fixed) -> Enclosure {
        Enclosure { lo: self.lo.sub(r), hi: self.hi.add(r) }
    }

    pub fn to_bits(&self, bits: u32) -> Enclosure {
        Enclosure {
            lo: self.lo.to_bits(bits, Round::Floor),
            hi: self.hi.to_bits(bits, Round::Ceil),
        }
    }

    pub fn clamp01(&self) -> Enclosure {
        Enclosure { lo: self.lo.clone().clamp01(), hi: self.hi.clone().clamp01() }
    }
}

impl fmt::Debug for Enclosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo.to_decimal(24), self.hi.to_decimal(24))
    }
}
