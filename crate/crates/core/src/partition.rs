//! Incoming and outgoing partitions of end multiplicities, the M functional
//! whose minimizer characterizes them, and the splitting identity used by the
//! trivial-cylinder conditions.

use std::fmt;

use crate::angle::AngleRep;
use crate::orbit::OrbitClass;
use crate::{Error, Result};

/// A multiset of positive integers in canonical non-increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition { parts: Vec::new() }
    }

    pub fn singleton(m: u32) -> Result<Partition> {
        Partition::new(vec![m])
    }

    /// {1,…,1} with m parts.
    pub fn ones(m: u32) -> Partition {
        Partition { parts: vec![1; m as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Multiset union, re-sorted into canonical order.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "-");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Whether an end is outgoing (positive s-end) or incoming (negative s-end).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Out,
    In,
}

/// The incoming partition of m for an angle: repeatedly split off the largest
/// record denominator r ≤ remaining multiplicity. m = 0 gives the empty
/// partition so the recursion needs no special base case.
pub fn p_in(a: &AngleRep, m: u32) -> Result<Partition> {
    let mut parts = Vec::new();
    let mut rest = m;
    while rest > 0 {
        let mut r = 1;
        for q in 1..=rest {
            if a.in_s(q)? {
                r = q;
            }
        }
        parts.push(r);
        rest -= r;
    }
    Partition::new(parts)
}

/// The outgoing partition: incoming partition of the negated angle.
pub fn p_out(a: &AngleRep, m: u32) -> Result<Partition> {
    p_in(&a.negate(), m)
}

/// The distinguished end partition of an orbit at total multiplicity m.
/// Hyperbolic orbits give all 1s (positive eigenvalues) or all 2s with at
/// most one 1 (negative eigenvalues), independent of direction; elliptic
/// orbits give p_in or p_out of the angle. Integer trivialization changes
/// shift the angle by integers and leave all of these unchanged.
pub fn orbit_partition(cls: &OrbitClass, m: u32, direction: Direction) -> Result<Partition> {
    match cls {
        OrbitClass::Hyperbolic(n) if n % 2 == 0 => Ok(Partition::ones(m)),
        OrbitClass::Hyperbolic(_) => {
            let mut parts = vec![2u32; (m / 2) as usize];
            if m % 2 == 1 {
                parts.push(1);
            }
            Partition::new(parts)
        }
        OrbitClass::Elliptic(a) => match direction {
            Direction::In => p_in(a, m),
            Direction::Out => p_out(a, m),
        },
    }
}

/// M_θ(q_1,…,q_k) = Σ_i ⌊q_iθ⌋ + Σ_{i,j} min(q_i⌈q_jθ⌉, q_j⌈q_iθ⌉) − n −
/// 2Σ_{i=1}^n ⌊iθ⌋ with n = Σq_i; the double sum runs over all ordered pairs
/// including i = j. Nonnegative, and zero exactly on p_in(θ, n).
pub fn m_theta(a: &AngleRep, parts: &Partition) -> Result<i64> {
    let n = parts.total();
    if n == 0 {
        return Ok(0);
    }
    let qs = parts.parts();
    let floors: Vec<i64> = qs.iter().map(|&q| a.floor_mult(q)).collect::<Result<_>>()?;
    let ceils: Vec<i64> = floors.iter().map(|&f| f + 1).collect();
    let mut total: i64 = floors.iter().sum();
    for (i, &qi) in qs.iter().enumerate() {
        for (j, &qj) in qs.iter().enumerate() {
            total += (qi as i64 * ceils[j]).min(qj as i64 * ceils[i]);
        }
    }
    total -= n as i64;
    for i in 1..=n {
        total -= 2 * a.floor_mult(i)?;
    }
    Ok(total)
}

/// Whether ⌊iθ⌋ + ⌈mθ⌉ = ⌊(m+i)θ⌋ for every i = 1..n. When it holds, the
/// incoming partition of m+n splits as the union of those of m and n.
pub fn check_split(a: &AngleRep, m: u32, n: u32) -> Result<bool> {
    if m + n > 0 {
        // Validate the largest multiple up front so a guard violation is an
        // error regardless of where the comparison would short-circuit.
        a.floor_mult(m + n)?;
    }
    let ceil_m = if m == 0 { 0 } else { a.ceil_mult(m)? };
    for i in 1..=n {
        if a.floor_mult(i)? + ceil_m != a.floor_mult(m + i)? {
            return Ok(false);
        }
    }
    debug_assert!(
        m == 0 || n == 0 || p_in(a, m + n)? == p_in(a, m)?.union(&p_in(a, n)?),
        "split identity held but the partition union did not"
    );
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{farey_intervals, Side};
    use proptest::prelude::*;

    fn ang(num: i64, den: i64, guard: u32) -> AngleRep {
        AngleRep::new(num, den, Side::Above, guard).unwrap()
    }

    fn parts(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn canonical_order_and_union() {
        let p = parts(&[1, 3, 2, 3]);
        assert_eq!(p.parts(), &[3, 3, 2, 1]);
        assert_eq!(p.total(), 9);
        let u = parts(&[2, 1]).union(&parts(&[3]));
        assert_eq!(u, parts(&[3, 2, 1]));
        assert_eq!(u.to_string(), "3,2,1");
        assert_eq!(Partition::empty().to_string(), "-");
        assert_eq!(Partition::new(vec![2, 0]), Err(Error::ZeroPart));
    }

    #[test]
    fn p_in_examples() {
        let a = ang(2, 5, 8);
        assert_eq!(p_in(&a, 4).unwrap(), parts(&[2, 2]));
        assert_eq!(p_in(&a, 5).unwrap(), parts(&[2, 2, 1]));
        assert_eq!(p_in(&a, 8).unwrap(), parts(&[7, 1]));
        assert_eq!(p_in(&ang(1, 8, 8), 8).unwrap(), parts(&[7, 1]));
        assert_eq!(p_in(&a, 0).unwrap(), Partition::empty());
    }

    #[test]
    fn p_out_examples() {
        let a = ang(2, 5, 8);
        assert_eq!(p_out(&a, 4).unwrap(), parts(&[3, 1]));
        assert_eq!(p_out(&a, 1).unwrap(), parts(&[1]));
        assert_eq!(p_out(&a, 2).unwrap(), parts(&[1, 1]));
    }

    #[test]
    fn orbit_partition_examples() {
        let h0 = OrbitClass::Hyperbolic(0);
        let h1 = OrbitClass::Hyperbolic(1);
        let e = OrbitClass::Elliptic(ang(2, 5, 8));
        assert_eq!(orbit_partition(&h0, 5, Direction::In).unwrap(), Partition::ones(5));
        assert_eq!(orbit_partition(&h1, 5, Direction::In).unwrap(), parts(&[2, 2, 1]));
        assert_eq!(orbit_partition(&h1, 4, Direction::Out).unwrap(), parts(&[2, 2]));
        assert_eq!(orbit_partition(&e, 5, Direction::In).unwrap(), parts(&[2, 2, 1]));
        assert_eq!(orbit_partition(&e, 4, Direction::Out).unwrap(), parts(&[3, 1]));
    }

    #[test]
    fn m_theta_examples() {
        let a = ang(2, 5, 8);
        assert_eq!(m_theta(&a, &parts(&[2, 2, 1])).unwrap(), 0);
        assert_eq!(m_theta(&a, &parts(&[5])).unwrap(), 4);
        assert_eq!(m_theta(&a, &parts(&[1])).unwrap(), 0);
        assert_eq!(m_theta(&ang(1, 7, 8), &parts(&[1])).unwrap(), 0);
    }

    #[test]
    fn check_split_examples() {
        let a = ang(2, 5, 8);
        assert!(check_split(&a, 2, 3).unwrap());
        assert_eq!(
            p_in(&a, 5).unwrap(),
            p_in(&a, 2).unwrap().union(&p_in(&a, 3).unwrap())
        );
        assert!(!check_split(&a, 5, 3).unwrap());
        assert!(check_split(&a, 5, 0).unwrap());
    }

    #[test]
    fn guard_violations_propagate() {
        let a = ang(2, 5, 4);
        assert!(p_in(&a, 5).is_err());
        assert!(m_theta(&a, &parts(&[5])).is_err());
        assert!(check_split(&a, 3, 2).is_err());
    }

    proptest! {
        #[test]
        fn p_in_is_interval_stable(order in 1u32..=10, m_extra in 0u32..=4) {
            for iv in farey_intervals(order) {
                let m = order.saturating_sub(m_extra).max(1);
                let lo = iv.representative(12).unwrap();
                let hi = iv.right_representative(12).unwrap();
                prop_assert_eq!(p_in(&lo, m).unwrap(), p_in(&hi, m).unwrap());
            }
        }

        #[test]
        fn p_in_ignores_integer_shifts(order in 1u32..=8, t in -3i64..=3) {
            for iv in farey_intervals(order) {
                let a = iv.representative(12).unwrap();
                let b = a.shift(t).unwrap();
                prop_assert_eq!(p_in(&a, order).unwrap(), p_in(&b, order).unwrap());
                prop_assert_eq!(m_theta(&a, &p_in(&a, order).unwrap()).unwrap(),
                                m_theta(&b, &p_in(&b, order).unwrap()).unwrap());
            }
        }

        #[test]
        fn partition_totals(order in 1u32..=10, m in 0u32..=10) {
            let m = m.min(order);
            for iv in farey_intervals(order) {
                let a = iv.representative(10).unwrap();
                prop_assert_eq!(p_in(&a, m).unwrap().total(), m);
                prop_assert_eq!(p_out(&a, m).unwrap().total(), m);
            }
        }
    }
}
