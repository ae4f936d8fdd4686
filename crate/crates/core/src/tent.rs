//! Tent map dynamics over dyadic fixed-point arithmetic.
//!
//! A map carries its slope as a *bracket* `[slope_lo, slope_hi]` enclosing
//! the intended real slope (zero-width for dyadic slopes, one ulp for
//! decimal literals, wider for algebraically defined slopes). Point
//! evaluation uses the bracket midpoint with round-to-nearest; certified
//! claims go through enclosure evaluation, which rounds outward and
//! accounts for the full slope bracket.
//!
//! Orbits expand any initial uncertainty by the slope per step, so a
//! depth-`d` certified claim needs roughly `d·log2(λ)` guard bits; callers
//! choose the precision accordingly and get honest `certified` flags back.

use crate::numeric::{Enclosure, Fixed, Round};
use crate::symbolic::{Symbol, Word};
use crate::{Error, Result};

/// Tent map `x ↦ λx` on `[0, 1/2]`, `λ(1−x)` on `[1/2, 1]`, with the slope
/// known to lie in `[slope_lo, slope_hi] ⊂ (1, 2]`.
#[derive(Clone)]
pub struct TentMap {
    slope_lo: Fixed,
    slope_hi: Fixed,
    slope_mid: Fixed,
    bits: u32,
    crit_period: Option<usize>,
}

/// Outcome of classifying one point against the critical point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Address {
    Zero,
    One,
    Crit,
    /// Too close to `c` to decide at the given tolerance.
    NearCrit,
}

/// Which one-sided limit to take for a limit itinerary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

/// Itinerary prefix of a point, with certification metadata.
#[derive(Debug, Clone)]
pub struct ItineraryResult {
    pub word: Word,
    /// First index whose orbit point is exactly the critical point.
    pub crit_hit: Option<usize>,
    /// True iff every address decision had certified margin.
    pub certified: bool,
}

/// A limit itinerary prefix; never contains the symbol `C`.
#[derive(Debug, Clone)]
pub struct LimitWord {
    pub word: Word,
    pub certified: bool,
}

impl TentMap {
    pub fn from_bracket(slope_lo: Fixed, slope_hi: Fixed) -> Result<Self> {
        let bits = slope_lo.bits();
        assert_eq!(bits, slope_hi.bits());
        let one = Fixed::one(bits);
        let two = Fixed::from_int(2, bits);
        if slope_lo <= one || slope_hi > two || slope_lo > slope_hi {
            return Err(Error::Parse(format!(
                "slope bracket [{}, {}] outside (1, 2]",
                slope_lo.to_decimal(8),
                slope_hi.to_decimal(8)
            )));
        }
        let slope_mid = slope_lo.add(&slope_hi).half_of(Round::Nearest);
        Ok(TentMap { slope_lo, slope_hi, slope_mid, bits, crit_period: None })
    }

    pub fn from_point_slope(slope: Fixed) -> Result<Self> {
        TentMap::from_bracket(slope.clone(), slope)
    }

    /// Parse a decimal slope, bracketing the (generally non-dyadic) value
    /// by one ulp.
    pub fn from_decimal_str(text: &str, bits: u32) -> Result<Self> {
        let lo = Fixed::from_decimal(text, bits, Round::Floor)?;
        let hi = Fixed::from_decimal(text, bits, Round::Ceil)?;
        TentMap::from_bracket(lo, hi)
    }

    /// The slope satisfying `λ² = λ + 1`; its critical point has exact
    /// period 3, which the constructor certifies.
    pub fn golden(bits: u32) -> Result<Self> {
        let five = Fixed::from_int(5, bits);
        let (s_lo, s_hi) = five.sqrt_bracket();
        let one = Fixed::one(bits);
        // Widen by a few ulps so the endpoint signs of T³(c) − c clear the
        // rounding noise of the certification orbit.
        let pad = Fixed::ulp(bits).shl(3);
        let lo = one.add(&s_lo).half_of(Round::Floor).sub(&pad);
        let hi = one.add(&s_hi).half_of(Round::Ceil).add(&pad);
        let map = TentMap::from_bracket(lo, hi)?;
        let m = map
            .certify_periodic_critical(8, &default_tol(bits))?
            .ok_or_else(|| Error::Internal("golden slope failed period-3 certification".into()))?;
        Ok(map.with_certified_period(m))
    }

    /// Attach a certified critical-orbit period. Callers must have
    /// certified it (see [`TentMap::certify_periodic_critical`]).
    pub fn with_certified_period(mut self, m: usize) -> Self {
        self.crit_period = Some(m);
        self
    }

    pub fn crit_period(&self) -> Option<usize> {
        self.crit_period
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn slope_lo(&self) -> &Fixed {
        &self.slope_lo
    }

    pub fn slope_hi(&self) -> &Fixed {
        &self.slope_hi
    }

    pub fn slope_mid(&self) -> &Fixed {
        &self.slope_mid
    }

    pub fn half(&self) -> Fixed {
        Fixed::half(self.bits)
    }

    /// Flagged when the bracket touches the boundary slope 2; allowed for
    /// order-consistency experiments only.
    pub fn at_upper_edge(&self) -> bool {
        self.slope_hi == Fixed::from_int(2, self.bits)
    }

    /// Re-round the slope bracket (outward) to a different working
    /// precision. The certified period, a property of the enclosed real
    /// slope, survives.
    pub fn to_bits(&self, bits: u32) -> TentMap {
        let lo = self.slope_lo.to_bits(bits, Round::Floor);
        let hi = self.slope_hi.to_bits(bits, Round::Ceil);
        let slope_mid = lo.add(&hi).half_of(Round::Nearest);
        TentMap { slope_lo: lo, slope_hi: hi, slope_mid, bits, crit_period: self.crit_period }
    }

    /// Point evaluation at the bracket midpoint, round-to-nearest.
    pub fn eval(&self, x: &Fixed) -> Fixed {
        let half = self.half();
        if *x <= half {
            self.slope_mid.mul(x, Round::Nearest)
        } else {
            let rest = Fixed::one(self.bits).sub(x);
            self.slope_mid.mul(&rest, Round::Nearest)
        }
    }

    /// `[x, T(x), …, T^{n−1}(x)]`.
    pub fn orbit_prefix(&self, x: &Fixed, n: usize) -> Vec<Fixed> {
        let mut out = Vec::with_capacity(n);
        let mut cur = x.clone();
        for _ in 0..n {
            out.push(cur.clone());
            let next = self.eval(&cur);
            cur = next;
        }
        out
    }

    /// Certified image of an enclosure: outward rounding over the full
    /// slope bracket, folding at the critical point when straddled.
    pub fn eval_enclosure(&self, e: &Enclosure) -> Enclosure {
        let half = self.half();
        let one = Fixed::one(self.bits);
        if e.hi <= half {
            Enclosure::new(self.slope_lo.mul(&e.lo, Round::Floor), self.slope_hi.mul(&e.hi, Round::Ceil))
        } else if e.lo >= half {
            let lo = self.slope_lo.mul(&one.sub(&e.hi), Round::Floor);
            let hi = self.slope_hi.mul(&one.sub(&e.lo), Round::Ceil);
            Enclosure::new(lo, hi)
        } else {
            let asc = self.slope_lo.mul(&e.lo, Round::Floor);
            let desc = self.slope_lo.mul(&one.sub(&e.hi), Round::Floor);
            let hi = self.slope_hi.mul(&half, Round::Ceil);
            Enclosure::new(asc.min(desc), hi)
        }
    }

    /// Enclosure of `T(c)`, the image of the exact critical point.
    pub fn critical_image(&self) -> Enclosure {
        let half = self.half();
        Enclosure::new(self.slope_lo.mul(&half, Round::Floor), self.slope_hi.mul(&half, Round::Ceil))
    }

    /// Enclosures of `T(c)` and `T²(c)`, the endpoints of the invariant
    /// core interval `[T²(c), T(c)]`.
    pub fn core_bounds(&self) -> (Enclosure, Enclosure) {
        let tc = self.critical_image();
        let t2c = self.eval_enclosure(&tc);
        (t2c, tc)
    }

    /// Point preimages under the midpoint slope; empty above `T(c)`,
    /// the fold image, and a single point at it.
    pub fn preimages(&self, y: &Fixed) -> Vec<Fixed> {
        let half = self.half();
        let tc = self.slope_mid.mul(&half, Round::Nearest);
        if *y > tc {
            return Vec::new();
        }
        if *y == tc {
            return vec![half];
        }
        let left = y.div(&self.slope_mid, Round::Nearest);
        let right = Fixed::one(self.bits).sub(&left);
        vec![left, right]
    }

    /// Certified preimage enclosures per branch: `(ascending, descending)`.
    pub fn preimage_enclosures(&self, e: &Enclosure) -> (Option<Enclosure>, Option<Enclosure>) {
        let half = self.half();
        let one = Fixed::one(self.bits);
        let zero = Fixed::zero(self.bits);
        let q_lo = e.lo.div(&self.slope_hi, Round::Floor);
        let q_hi = e.hi.div(&self.slope_lo, Round::Ceil);
        let left = Enclosure::new(q_lo.clone(), q_hi.clone().max(q_lo.clone()))
            .intersect(&Enclosure::new(zero, half.clone()));
        let right = Enclosure::new(one.sub(&q_hi).min(one.sub(&q_lo)), one.sub(&q_lo))
            .intersect(&Enclosure::new(half, one.clone()));
        (left, right)
    }

    /// Certify that the critical point is periodic with some period
    /// `m ≤ max_period`: the orbit enclosure must return within `tol` of
    /// `c` with all earlier returns certified away, and the signed distance
    /// `T^m(c) − c` must change sign across the slope bracket (so a slope
    /// with the exact period lies inside it).
    pub fn certify_periodic_critical(&self, max_period: usize, tol: &Fixed) -> Result<Option<usize>> {
        let half = self.half();
        let raw = TentMap {
            slope_lo: self.slope_lo.clone(),
            slope_hi: self.slope_hi.clone(),
            slope_mid: self.slope_mid.clone(),
            bits: self.bits,
            crit_period: None,
        };
        let mut enc = raw.critical_image();
        for m in 1..=max_period {
            // enc is the enclosure of T^m(c) here
            let near = enc.min_dist_to(&half) < *tol;
            let separated = enc.hi < half || enc.lo > half;
            if near && m >= 3 {
                let lo_sign = point_orbit_sign(&self.slope_lo, m, self.bits);
                let hi_sign = point_orbit_sign(&self.slope_hi, m, self.bits);
                match (lo_sign, hi_sign) {
                    (Some(a), Some(b)) if a != b => return Ok(Some(m)),
                    _ => {
                        return Err(Error::Ambiguous(format!(
                            "critical orbit returns within tol at step {m} but periodicity is uncertified"
                        )))
                    }
                }
            }
            if !separated {
                return Err(Error::Ambiguous(format!(
                    "critical orbit enclosure straddles c at step {m} without a sign-change certificate"
                )));
            }
            enc = raw.eval_enclosure(&enc);
        }
        Ok(None)
    }
}

/// Sign of `T_λ^m(c) − c` for a point slope, or `None` when rounding noise
/// straddles zero. Evaluated with extra guard bits so the verdict depends
/// on the slope, not on the working precision.
fn point_orbit_sign(slope: &Fixed, m: usize, bits: u32) -> Option<bool> {
    let guard = bits + 128;
    let map = match TentMap::from_point_slope(slope.to_bits(guard, Round::Nearest)) {
        Ok(m) => m,
        Err(_) => return None,
    };
    let half = Fixed::half(guard);
    let mut enc = map.critical_image();
    for _ in 1..m {
        enc = map.eval_enclosure(&enc);
    }
    if enc.lo > half {
        Some(true)
    } else if enc.hi < half {
        Some(false)
    } else {
        None
    }
}

/// Tracks a certified orbit enclosure together with exact critical hits.
///
/// Exactness enters in two ways only: a starting point that is exactly the
/// representation of `1/2`, or a certified critical-orbit period on the
/// map, which lets the tracker snap the enclosure back to `c` at each
/// return. Everything else is plain outward-rounded iteration.
pub struct OrbitTracker<'a> {
    map: &'a TentMap,
    enc: Enclosure,
    /// `Some(0)` means the current point is exactly `c`.
    since_crit: Option<usize>,
}

/// Classification of the current orbit point against `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepClass {
    ExactCrit,
    Zero,
    One,
    /// Margin below tolerance; carries the midpoint's side as a guess.
    NearCrit(Symbol),
}

impl<'a> OrbitTracker<'a> {
    pub fn from_point(map: &'a TentMap, x: &Fixed) -> Self {
        let half = map.half();
        if *x == half {
            OrbitTracker { map, enc: Enclosure::point(half), since_crit: Some(0) }
        } else {
            OrbitTracker { map, enc: Enclosure::point(x.clone()), since_crit: None }
        }
    }

    /// Start at `T(c)`, one step past the critical point.
    pub fn from_critical_image(map: &'a TentMap) -> Self {
        OrbitTracker { map, enc: map.critical_image(), since_crit: Some(1) }
    }

    pub fn current(&self) -> &Enclosure {
        &self.enc
    }

    pub fn is_exact_crit(&self) -> bool {
        self.since_crit == Some(0)
    }

    pub fn classify(&self, tol: &Fixed) -> StepClass {
        if self.is_exact_crit() {
            return StepClass::ExactCrit;
        }
        let half = self.map.half();
        if self.enc.hi < half.sub(tol) {
            StepClass::Zero
        } else if self.enc.lo > half.add(tol) {
            StepClass::One
        } else {
            let guess = if self.enc.midpoint() < half { Symbol::Zero } else { Symbol::One };
            StepClass::NearCrit(guess)
        }
    }

    pub fn step(&mut self) {
        if self.since_crit == Some(0) {
            self.enc = self.map.critical_image();
            self.since_crit = Some(1);
        } else {
            self.enc = self.map.eval_enclosure(&self.enc);
            self.since_crit = self.since_crit.map(|k| k + 1);
        }
        if let (Some(m), Some(k)) = (self.map.crit_period, self.since_crit) {
            if k == m {
                let half = self.map.half();
                assert!(
                    self.enc.contains(&half),
                    "certified critical period violated by enclosure arithmetic"
                );
                self.enc = Enclosure::point(half);
                self.since_crit = Some(0);
            }
        }
    }
}

/// Address of a single point: `C` only for the exact representation of
/// `1/2`, `NearCrit` inside the tolerance band.
pub fn address(map: &TentMap, x: &Fixed, tol: &Fixed) -> Address {
    let half = map.half();
    if *x == half {
        Address::Crit
    } else if *x < half.sub(tol) {
        Address::Zero
    } else if *x > half.add(tol) {
        Address::One
    } else {
        Address::NearCrit
    }
}

/// First `n` addresses along the orbit of `x`. A `NearCrit` step records
/// the midpoint's side but clears `certified`; an exact critical hit
/// records `C` and continues through the orbit of `c`.
pub fn itinerary_prefix(map: &TentMap, x: &Fixed, n: usize, tol: &Fixed) -> ItineraryResult {
    let mut tracker = OrbitTracker::from_point(map, x);
    let mut word = Word::empty();
    let mut crit_hit = None;
    let mut certified = true;
    for i in 0..n {
        match tracker.classify(tol) {
            StepClass::ExactCrit => {
                word.push(Symbol::Crit);
                crit_hit.get_or_insert(i);
            }
            StepClass::Zero => word.push(Symbol::Zero),
            StepClass::One => word.push(Symbol::One),
            StepClass::NearCrit(guess) => {
                word.push(guess);
                certified = false;
            }
        }
        tracker.step();
    }
    ItineraryResult { word, crit_hit, certified }
}

/// One-sided limit itinerary: track the sign of an infinitesimal
/// perturbation through the orbit. The sign flips on the descending
/// branch; at an exact critical hit the recorded symbol is the side the
/// perturbation falls on, and the sign becomes negative after the fold.
/// The output never contains `C`.
pub fn limit_itinerary(map: &TentMap, x: &Fixed, side: Side, n: usize, tol: &Fixed) -> LimitWord {
    let mut tracker = OrbitTracker::from_point(map, x);
    let mut sign = match side {
        Side::Upper => 1i8,
        Side::Lower => -1i8,
    };
    let mut word = Word::empty();
    let mut certified = true;
    for _ in 0..n {
        match tracker.classify(tol) {
            StepClass::ExactCrit => {
                word.push(if sign > 0 { Symbol::One } else { Symbol::Zero });
                sign = -1;
            }
            StepClass::Zero => word.push(Symbol::Zero),
            StepClass::One => {
                word.push(Symbol::One);
                sign = -sign;
            }
            StepClass::NearCrit(guess) => {
                certified = false;
                word.push(guess);
                if guess == Symbol::One {
                    sign = -sign;
                }
            }
        }
        tracker.step();
    }
    LimitWord { word, certified }
}

/// Limit itinerary of `T(c)` from below: the canonical kneading data.
pub fn critical_image_limit(map: &TentMap, n: usize, tol: &Fixed) -> LimitWord {
    let mut tracker = OrbitTracker::from_critical_image(map);
    let mut sign = -1i8;
    let mut word = Word::empty();
    let mut certified = true;
    for _ in 0..n {
        match tracker.classify(tol) {
            StepClass::ExactCrit => {
                word.push(if sign > 0 { Symbol::One } else { Symbol::Zero });
                sign = -1;
            }
            StepClass::Zero => word.push(Symbol::Zero),
            StepClass::One => {
                word.push(Symbol::One);
                sign = -sign;
            }
            StepClass::NearCrit(guess) => {
                certified = false;
                word.push(guess);
                if guess == Symbol::One {
                    sign = -sign;
                }
            }
        }
        tracker.step();
    }
    LimitWord { word, certified }
}

/// Backward-iterated enclosure of the set of points whose itinerary prefix
/// matches `s` to `depth`. A `C` at any position collapses the enclosure
/// to the single pre-critical point.
pub fn itinerary_to_point(map: &TentMap, s: &crate::symbolic::SeqView, depth: usize) -> Result<Enclosure> {
    assert!(depth >= 1);
    if !s.has_depth(depth) {
        return Err(Error::InsufficientPrefix { wanted: depth, known: s.known_len().unwrap_or(0) });
    }
    let bits = map.bits();
    let half = map.half();
    let mut enc = match s.symbol_at(depth - 1).unwrap() {
        Symbol::Zero => Enclosure::new(Fixed::zero(bits), half.clone()),
        Symbol::One => Enclosure::new(half.clone(), Fixed::one(bits)),
        Symbol::Crit => Enclosure::point(half.clone()),
    };
    for i in (0..depth - 1).rev() {
        enc = pull_back(map, s.symbol_at(i).unwrap(), &enc)?;
    }
    Ok(enc)
}

fn pull_back(map: &TentMap, sym: Symbol, e: &Enclosure) -> Result<Enclosure> {
    match sym {
        Symbol::Zero => {
            let (left, _) = map.preimage_enclosures(e);
            left.ok_or(Error::InadmissiblePrefix)
        }
        Symbol::One => {
            let (_, right) = map.preimage_enclosures(e);
            right.ok_or(Error::InadmissiblePrefix)
        }
        Symbol::Crit => {
            let image = map.critical_image();
            if image.intersect(e).is_some() {
                Ok(Enclosure::point(map.half()))
            } else {
                Err(Error::InadmissiblePrefix)
            }
        }
    }
}

/// Enclosure of `I_N(x)`, the set of points sharing the certified
/// itinerary prefix of `x` to depth `N`.
pub fn interval_of_prefix(map: &TentMap, x: &Fixed, n: usize, tol: &Fixed) -> Result<Enclosure> {
    let it = itinerary_prefix(map, x, n, tol);
    if !it.certified {
        return Err(Error::Uncertified(format!(
            "itinerary prefix of {} is uncertified at depth {n}",
            x.to_decimal(12)
        )));
    }
    itinerary_to_point(map, &crate::symbolic::SeqView::word(it.word), n)
}

/// Default decision tolerance for a working precision, leaving headroom
/// between rounding growth and decision margins.
pub fn default_tol(bits: u32) -> Fixed {
    Fixed::pow2_neg(bits / 4, bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::SeqView;

    const BITS: u32 = 320;

    fn map18() -> TentMap {
        TentMap::from_decimal_str("1.8", BITS).unwrap()
    }

    fn fx(s: &str) -> Fixed {
        Fixed::from_decimal(s, BITS, Round::Nearest).unwrap()
    }

    fn tol() -> Fixed {
        default_tol(BITS)
    }

    #[test]
    fn eval_fixed_points_and_fold() {
        let t = map18();
        assert!(t.eval(&Fixed::zero(BITS)).is_zero());
        let tc = t.eval(&Fixed::half(BITS));
        assert!((tc.to_f64() - 0.9).abs() < 1e-15);
    }

    #[test]
    fn golden_critical_orbit_has_period_three() {
        let t = TentMap::golden(BITS).unwrap();
        assert_eq!(t.crit_period(), Some(3));
        let orbit = t.orbit_prefix(&Fixed::half(BITS), 4);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((orbit[1].to_f64() - phi / 2.0).abs() < 1e-5);
        assert!((orbit[2].to_f64() - (phi - 1.0) / 2.0).abs() < 1e-5);
        assert!((orbit[3].to_f64() - 0.5).abs() < 1e-5);
    }

    #[test]
    fn orbit_oracle_slope_18() {
        // independent f64 oracle for the first few images of 0.3
        let t = map18();
        let orbit = t.orbit_prefix(&fx("0.3"), 4);
        let mut x = 0.3f64;
        for p in &orbit {
            assert!((p.to_f64() - x).abs() < 1e-12);
            x = if x <= 0.5 { 1.8 * x } else { 1.8 * (1.0 - x) };
        }
        assert!((orbit[3].to_f64() - 0.3096).abs() < 1e-12);
    }

    #[test]
    fn addresses() {
        let t = map18();
        assert_eq!(address(&t, &fx("0.25"), &tol()), Address::Zero);
        assert_eq!(address(&t, &Fixed::half(BITS), &tol()), Address::Crit);
        let near = Fixed::half(BITS).add(&Fixed::pow2_neg(BITS / 2, BITS));
        assert_eq!(address(&t, &near, &tol()), Address::NearCrit);
    }

    #[test]
    fn itinerary_of_03_under_18() {
        let t = map18();
        let it = itinerary_prefix(&t, &fx("0.3"), 4, &tol());
        assert!(it.certified);
        assert_eq!(it.word.to_string(), "0110");
        assert_eq!(it.crit_hit, None);
    }

    #[test]
    fn itinerary_through_exact_critical_orbit() {
        let t = TentMap::golden(BITS).unwrap();
        let it = itinerary_prefix(&t, &Fixed::half(BITS), 6, &tol());
        assert_eq!(it.word.to_string(), "C10C10");
        assert_eq!(it.crit_hit, Some(0));
        assert!(it.certified);
    }

    #[test]
    fn itinerary_of_zero() {
        let t = map18();
        let it = itinerary_prefix(&t, &Fixed::zero(BITS), 5, &tol());
        assert_eq!(it.word.to_string(), "00000");
        assert!(it.certified);
    }

    #[test]
    fn limit_itinerary_of_critical_image_is_kneading_data() {
        let t = TentMap::golden(BITS).unwrap();
        let lw = critical_image_limit(&t, 9, &tol());
        assert!(lw.certified);
        assert_eq!(lw.word.to_string(), "101101101");
    }

    #[test]
    fn limit_itinerary_matches_plain_itinerary_away_from_crit() {
        let t = map18();
        let x = fx("0.3");
        let it = itinerary_prefix(&t, &x, 12, &tol());
        assert!(it.certified && it.crit_hit.is_none());
        for side in [Side::Lower, Side::Upper] {
            let lw = limit_itinerary(&t, &x, side, 12, &tol());
            assert_eq!(lw.word, it.word);
        }
        let z = limit_itinerary(&t, &Fixed::zero(BITS), Side::Upper, 5, &tol());
        assert_eq!(z.word.to_string(), "00000");
    }

    #[test]
    fn preimage_examples() {
        let t = map18();
        let pre0 = t.preimages(&Fixed::zero(BITS));
        assert_eq!(pre0.len(), 2);
        assert!(pre0[0].is_zero());
        assert_eq!(pre0[1], Fixed::one(BITS));

        let fold = t.eval(&Fixed::half(BITS));
        assert_eq!(t.preimages(&fold), vec![Fixed::half(BITS)]);

        let pre = t.preimages(&fx("0.54"));
        assert!((pre[0].to_f64() - 0.3).abs() < 1e-15);
        assert!((pre[1].to_f64() - 0.7).abs() < 1e-15);

        let above = fold.add(&fx("0.01"));
        assert!(t.preimages(&above).is_empty());
    }

    #[test]
    fn preimages_invert_eval() {
        let t = map18();
        for s in ["0.1", "0.37", "0.52", "0.9"] {
            let x = fx(s);
            let y = t.eval(&x);
            let pre = t.preimages(&y);
            assert!(pre.iter().any(|p| p.abs_diff(&x) <= Fixed::ulp(BITS).shl(4)));
        }
    }

    #[test]
    fn point_from_periodic_itinerary() {
        let t = TentMap::golden(BITS).unwrap();
        let k = SeqView::parse("(101)").unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        // depth 40: enclosure width is about λ^-40 ≈ 4.4e-9
        let enc = itinerary_to_point(&t, &k, 40).unwrap();
        assert!((enc.midpoint().to_f64() - phi / 2.0).abs() < 5e-9);
        // deeper pullback pins T(c) well below 1e-10
        let enc = itinerary_to_point(&t, &k, 60).unwrap();
        assert!((enc.midpoint().to_f64() - phi / 2.0).abs() < 1e-10);
    }

    #[test]
    fn point_from_crit_prefix_is_half() {
        let t = map18();
        let s = SeqView::parse("C").unwrap();
        let enc = itinerary_to_point(&t, &s, 1).unwrap();
        assert!(enc.contains(&Fixed::half(BITS)));
        assert!(enc.width() <= Fixed::ulp(BITS).shl(4));
    }

    #[test]
    fn prefix_interval_round_trip_and_contraction() {
        let t = map18();
        let x = fx("0.3");
        for n in [1usize, 4, 12, 30] {
            let enc = interval_of_prefix(&t, &x, n, &tol()).unwrap();
            assert!(enc.contains(&x), "depth {n}");
            // width <= slope^-n plus rounding slack
            let bound = 0.95f64.powi(0) / 1.8f64.powi(n as i32) + 1e-20;
            assert!(enc.width().to_f64() <= bound, "depth {n}: width {}", enc.width().to_f64());
        }
        let one_sym = interval_of_prefix(&t, &fx("0.25"), 1, &tol()).unwrap();
        assert!(one_sym.lo.is_zero());
        assert_eq!(one_sym.hi, Fixed::half(BITS));
    }

    #[test]
    fn no_periodic_critical_point_at_18() {
        let t = map18();
        assert_eq!(t.certify_periodic_critical(20, &tol()).unwrap(), None);
    }

    #[test]
    fn slope_bracket_validation() {
        assert!(TentMap::from_decimal_str("0.9", 128).is_err());
        assert!(TentMap::from_decimal_str("2.1", 128).is_err());
        let edge = TentMap::from_point_slope(Fixed::from_int(2, 128)).unwrap();
        assert!(edge.at_upper_edge());
    }
}
