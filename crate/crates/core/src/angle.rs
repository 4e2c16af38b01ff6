//! Exact representation of irrational angles pinned to one side of a rational.
//!
//! An [`AngleRep`] stands for every irrational number strictly between its
//! rational `base` and the nearest rational of denominator at most `guard` on
//! the chosen side. All quantities in scope (floor multiples, best upper
//! approximations, partitions) depend only on the angle's position relative to
//! rationals of bounded denominator, so as long as requested multiples stay
//! within the guard the answers are the same for every represented angle and
//! the representation is exact. Requests beyond the guard are hard errors.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::{Error, Result};

fn ck_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

fn ck_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

/// Which side of the base rational the represented irrationals lie on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Above => Side::Below,
            Side::Below => Side::Above,
        }
    }
}

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac {
    num: i64,
    den: i64,
}

impl Frac {
    pub fn new(num: i64, den: i64) -> Result<Frac> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        let (mut num, mut den) = if den < 0 {
            (num.checked_neg().ok_or(Error::Overflow)?, den.checked_neg().ok_or(Error::Overflow)?)
        } else {
            (num, den)
        };
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        Ok(Frac { num, den })
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }
}

impl PartialOrd for Frac {
    fn partial_cmp(&self, other: &Frac) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Frac {
    fn cmp(&self, other: &Frac) -> std::cmp::Ordering {
        // Denominators are positive, so cross-multiplication preserves order.
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Exact stand-in for an irrational angle: every irrational strictly between
/// `base` and the nearest rational of denominator ≤ `guard` on `side`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AngleRep {
    base: Frac,
    side: Side,
    guard: u32,
}

impl AngleRep {
    pub fn new(num: i64, den: i64, side: Side, guard: u32) -> Result<AngleRep> {
        if guard == 0 {
            return Err(Error::NotPositive { what: "guard" });
        }
        Ok(AngleRep { base: Frac::new(num, den)?, side, guard })
    }

    pub fn base(&self) -> Frac {
        self.base
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    /// Same angle description with a different guard. Enlarging the guard
    /// narrows the set of represented irrationals; it never changes any value
    /// previously computable.
    pub fn with_guard(&self, guard: u32) -> Result<AngleRep> {
        if guard == 0 {
            return Err(Error::NotPositive { what: "guard" });
        }
        Ok(AngleRep { guard, ..*self })
    }

    fn check_multiple(&self, k: u32) -> Result<()> {
        if k == 0 {
            return Err(Error::NotPositive { what: "multiple k" });
        }
        if k > self.guard {
            return Err(Error::GuardExceeded { k, guard: self.guard });
        }
        Ok(())
    }

    /// ⌊kθ⌋, identical for every represented θ when k ≤ guard.
    ///
    /// With θ just above a/b the floor of kθ is ⌊ka/b⌋ even when ka/b is an
    /// integer; just below, it is ⌈ka/b⌉ − 1.
    pub fn floor_mult(&self, k: u32) -> Result<i64> {
        self.check_multiple(k)?;
        let ka = ck_mul(k as i64, self.base.num)?;
        Ok(match self.side {
            Side::Above => Integer::div_floor(&ka, &self.base.den),
            Side::Below => Integer::div_ceil(&ka, &self.base.den) - 1,
        })
    }

    /// ⌈kθ⌉ = ⌊kθ⌋ + 1; kθ is never an integer because θ is irrational.
    pub fn ceil_mult(&self, k: u32) -> Result<i64> {
        Ok(self.floor_mult(k)? + 1)
    }

    /// f_θ(q) = ⌈qθ⌉/q, the smallest rational above θ with denominator q.
    pub fn f_value(&self, q: u32) -> Result<Frac> {
        Frac::new(self.ceil_mult(q)?, q as i64)
    }

    /// Whether q is a record denominator: f_θ(q′) > f_θ(q) strictly for all
    /// 1 ≤ q′ < q. q = 1 always qualifies.
    pub fn in_s(&self, q: u32) -> Result<bool> {
        let fq = self.f_value(q)?;
        for qp in 1..q {
            if self.f_value(qp)? <= fq {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Representation of −θ: base negated, side flipped, guard kept.
    pub fn negate(&self) -> AngleRep {
        AngleRep {
            // Bases are reduced with positive denominator, so negating the
            // numerator keeps the invariant; magnitudes only shrink.
            base: Frac { num: -self.base.num, den: self.base.den },
            side: self.side.flip(),
            guard: self.guard,
        }
    }

    /// Representation of θ + t for an integer t: same side and guard.
    pub fn shift(&self, t: i64) -> Result<AngleRep> {
        let num = ck_add(self.base.num, ck_mul(t, self.base.den)?)?;
        Ok(AngleRep { base: Frac { num, den: self.base.den }, ..*self })
    }
}

impl fmt::Display for AngleRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.side {
            Side::Above => '+',
            Side::Below => '-',
        };
        write!(f, "{}/{}{}", self.base.num, self.base.den, tag)
    }
}

impl FromStr for AngleRep {
    type Err = Error;

    /// `a/b+` for just above a/b, `a/b-` for just below; guard defaults to 1
    /// and is raised by the caller once the needed multiples are known.
    fn from_str(s: &str) -> Result<AngleRep> {
        let (body, side) = match s.as_bytes().last() {
            Some(b'+') => (&s[..s.len() - 1], Side::Above),
            Some(b'-') => (&s[..s.len() - 1], Side::Below),
            _ => return Err(Error::mismatch(format!("angle `{s}` must end in + or -"))),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (
                n.parse::<i64>().map_err(|_| Error::mismatch(format!("bad angle numerator in `{s}`")))?,
                d.parse::<i64>().map_err(|_| Error::mismatch(format!("bad angle denominator in `{s}`")))?,
            ),
            None => (
                body.parse::<i64>().map_err(|_| Error::mismatch(format!("bad angle base in `{s}`")))?,
                1,
            ),
        };
        AngleRep::new(num, den, side, 1)
    }
}

/// One open interval between consecutive fractions of the Farey sequence of a
/// given order, restricted to (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FareyInterval {
    pub left: Frac,
    pub right: Frac,
    pub order: u32,
}

impl FareyInterval {
    /// Canonical representative: an angle just above the left endpoint. Any
    /// guard ≥ the order selects angles inside this interval, since no
    /// fraction of denominator ≤ order lies strictly between the endpoints.
    pub fn representative(&self, guard: u32) -> Result<AngleRep> {
        let guard = guard.max(self.order);
        AngleRep::new(self.left.num, self.left.den, Side::Above, guard)
    }

    /// The same interval approached from its right endpoint.
    pub fn right_representative(&self, guard: u32) -> Result<AngleRep> {
        let guard = guard.max(self.order);
        AngleRep::new(self.right.num, self.right.den, Side::Below, guard)
    }
}

impl fmt::Display for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// The Farey sequence of the given order on [0,1], ascending.
pub fn farey_sequence(order: u32) -> Vec<Frac> {
    assert!(order >= 1, "farey order must be positive");
    let n = order as i64;
    let mut out = vec![Frac { num: 0, den: 1 }, Frac { num: 1, den: n }];
    loop {
        let a = out[out.len() - 2];
        let b = out[out.len() - 1];
        if b.num == 1 && b.den == 1 {
            break;
        }
        let k = (a.den + n) / b.den;
        out.push(Frac { num: k * b.num - a.num, den: k * b.den - a.den });
    }
    out
}

/// All open intervals between consecutive order-`order` Farey fractions in
/// (0,1), ascending. Partitions of m ≤ order are constant on each interval.
pub fn farey_intervals(order: u32) -> Vec<FareyInterval> {
    farey_sequence(order)
        .windows(2)
        .map(|w| FareyInterval { left: w[0], right: w[1], order })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ang(num: i64, den: i64, side: Side, guard: u32) -> AngleRep {
        AngleRep::new(num, den, side, guard).unwrap()
    }

    #[test]
    fn floor_mult_two_fifths() {
        let a = ang(2, 5, Side::Above, 8);
        assert_eq!(a.floor_mult(3).unwrap(), 1);
        assert_eq!(a.floor_mult(5).unwrap(), 2);
        let b = ang(2, 5, Side::Below, 8);
        assert_eq!(b.floor_mult(5).unwrap(), 1);
    }

    #[test]
    fn ceil_mult_examples() {
        let a = ang(2, 5, Side::Above, 8);
        assert_eq!(a.ceil_mult(2).unwrap(), 1);
        assert_eq!(a.ceil_mult(5).unwrap(), 3);
        let c = ang(1, 8, Side::Above, 8);
        assert_eq!(c.ceil_mult(8).unwrap(), 2);
    }

    #[test]
    fn guard_violation_is_an_error() {
        let a = ang(2, 5, Side::Above, 8);
        assert_eq!(a.floor_mult(9), Err(Error::GuardExceeded { k: 9, guard: 8 }));
        assert!(a.floor_mult(8).is_ok());
    }

    #[test]
    fn f_values() {
        let a = ang(2, 5, Side::Above, 8);
        assert_eq!(a.f_value(7).unwrap(), Frac::new(3, 7).unwrap());
        assert_eq!(a.f_value(2).unwrap(), Frac::new(1, 2).unwrap());
        assert_eq!(a.f_value(1).unwrap(), Frac::new(1, 1).unwrap());
    }

    #[test]
    fn s_membership() {
        let a = ang(2, 5, Side::Above, 8);
        assert!(a.in_s(7).unwrap());
        assert!(!a.in_s(4).unwrap());
        assert!(a.in_s(1).unwrap());
    }

    #[test]
    fn negate_and_shift() {
        let a = ang(2, 5, Side::Above, 8);
        let n = a.negate();
        assert_eq!(n, ang(-2, 5, Side::Below, 8));
        assert_eq!(n.negate(), a);
        assert_eq!(a.shift(1).unwrap(), ang(7, 5, Side::Above, 8));
        assert_eq!(n.floor_mult(3).unwrap(), -2);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let a = ang(-2, 5, Side::Below, 4);
        let s = a.to_string();
        assert_eq!(s, "-2/5-");
        let back: AngleRep = s.parse().unwrap();
        assert_eq!(back.with_guard(4).unwrap(), a);
    }

    #[test]
    fn farey_interval_counts() {
        assert_eq!(farey_intervals(8).len(), 22);
        assert_eq!(farey_intervals(10).len(), 32);
        let seq = farey_sequence(5);
        let shown: Vec<String> = seq.iter().map(|f| f.to_string()).collect();
        assert_eq!(
            shown,
            ["0", "1/5", "1/4", "1/3", "2/5", "1/2", "3/5", "2/3", "3/4", "4/5", "1"]
        );
    }

    fn arb_angle() -> impl Strategy<Value = AngleRep> {
        (1u32..=10, any::<bool>(), -3i64..=3).prop_flat_map(|(order, above, t)| {
            let n = farey_intervals(order).len();
            (0..n, Just(order), Just(above), Just(t)).prop_map(move |(i, order, above, t)| {
                let iv = farey_intervals(order)[i];
                let a = if above { iv.representative(12).unwrap() } else { iv.right_representative(12).unwrap() };
                a.shift(t).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn ceil_is_floor_plus_one(a in arb_angle(), k in 1u32..=12) {
            prop_assert_eq!(a.ceil_mult(k).unwrap(), a.floor_mult(k).unwrap() + 1);
        }

        #[test]
        fn floors_superadditive_within_one(a in arb_angle(), j in 1u32..=6, k in 1u32..=6) {
            let sum = a.floor_mult(j).unwrap() + a.floor_mult(k).unwrap();
            let whole = a.floor_mult(j + k).unwrap();
            prop_assert!(whole == sum || whole == sum + 1);
        }

        #[test]
        fn negate_swaps_floor_and_ceil(a in arb_angle(), k in 1u32..=12) {
            prop_assert_eq!(a.negate().floor_mult(k).unwrap(), -a.ceil_mult(k).unwrap());
            prop_assert_eq!(a.negate().negate(), a);
        }

        #[test]
        fn shift_moves_floors_linearly(a in arb_angle(), k in 1u32..=12, t in -4i64..=4) {
            let shifted = a.shift(t).unwrap();
            prop_assert_eq!(shifted.floor_mult(k).unwrap(), a.floor_mult(k).unwrap() + k as i64 * t);
            prop_assert_eq!(shifted.shift(-t).unwrap(), a);
        }

        #[test]
        fn s_membership_is_interval_local(order in 1u32..=8, k in 1u32..=8) {
            // Both endpoint representatives of a Farey interval of order ≥ k
            // must agree about membership of k in S.
            for iv in farey_intervals(order.max(k)) {
                let lo = iv.representative(12).unwrap();
                let hi = iv.right_representative(12).unwrap();
                prop_assert_eq!(lo.in_s(k).unwrap(), hi.in_s(k).unwrap());
            }
        }
    }
}
