//! Braids at the ends of flow-line curves, modeled by their cabling-tree
//! combinatorics: iterated nested cablings of torus braids. Writhe, winding
//! and linking are exact integers here, as are the per-cover winding and
//! writhe bounds and the extremal (braid-achievable) writhes of whole end
//! clusters. Counterclockwise twists count positively throughout.

use num_integer::Integer;

use crate::orbit::{OrbitClass, TrivOffset};
use crate::partition::Partition;
use crate::{Error, Result};

/// A braid in a solid torus: either a (q,η) torus braid (q strands, total
/// winding η) or the cabling of a connected braid by another braid running in
/// its tubular neighborhood.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CablingBraid {
    Torus { q: u32, eta: i64 },
    Cable { base: Box<CablingBraid>, inner: Box<CablingBraid> },
}

impl CablingBraid {
    pub fn torus(q: u32, eta: i64) -> Result<CablingBraid> {
        if q == 0 {
            return Err(Error::NotPositive { what: "torus braid strand count" });
        }
        Ok(CablingBraid::Torus { q, eta })
    }

    /// Cable `base` by `inner`: replace the single string of the connected
    /// base braid by the inner braid running in its neighborhood.
    pub fn cable(base: CablingBraid, inner: CablingBraid) -> Result<CablingBraid> {
        if !base.is_connected() {
            return Err(Error::DisconnectedBase);
        }
        let braid = CablingBraid::Cable { base: Box::new(base), inner: Box::new(inner) };
        if braid.try_strands().is_none() {
            return Err(Error::TooManyStrands);
        }
        Ok(braid)
    }

    fn try_strands(&self) -> Option<u32> {
        match self {
            CablingBraid::Torus { q, .. } => Some(*q),
            CablingBraid::Cable { base, inner } => {
                let s = base.try_strands()?.checked_mul(inner.try_strands()?)?;
                (s <= 1 << 20).then_some(s)
            }
        }
    }

    pub fn strands(&self) -> u32 {
        // Construction rejects overflowing trees.
        self.try_strands().expect("strand count validated at construction")
    }

    /// A torus braid closes up into one circle iff gcd(q, η) = 1 (or q = 1);
    /// a cable is connected iff its pattern is.
    pub fn is_connected(&self) -> bool {
        match self {
            CablingBraid::Torus { q, eta } => *q == 1 || (*q as i64).gcd(eta) == 1,
            CablingBraid::Cable { inner, .. } => inner.is_connected(),
        }
    }

    /// Signed crossing count of the flattened annulus diagram. A (q,η) torus
    /// braid has writhe η(q−1); cabling a connected braid multiplies its
    /// writhe by the square of the pattern's strand count and adds the
    /// pattern's own writhe.
    pub fn writhe(&self) -> i64 {
        match self {
            CablingBraid::Torus { q, eta } => eta * (*q as i64 - 1),
            CablingBraid::Cable { base, inner } => {
                let s = inner.strands() as i64;
                s * s * base.writhe() + inner.writhe()
            }
        }
    }

    /// Total winding of all strands about the core orbit.
    pub fn winding(&self) -> i64 {
        match self {
            CablingBraid::Torus { eta, .. } => *eta,
            CablingBraid::Cable { base, inner } => {
                inner.strands() as i64 * base.winding() + inner.winding()
            }
        }
    }
}

/// Writhe after changing the trivialization by dt: each of the m(m−1)
/// ordered strand pairs picks up dt crossings.
pub fn writhe_retriv(w: i64, m: u32, dt: i64) -> i64 {
    let m = m as i64;
    w + m * (m - 1) * dt
}

/// Linking number of two braids about the same orbit with the first strictly
/// outside the second in the nesting (or radial) order: the outer braid's
/// total winding times the inner braid's strand count.
pub fn linking_nested(outer: &CablingBraid, inner: &CablingBraid) -> i64 {
    outer.winding() * inner.strands() as i64
}

/// Linking number of two cablings of one shared connected base braid whose
/// patterns are radially separated inside the base's tube, `pat_outer`
/// outside: the base contributes a full crossing grid, the patterns link as
/// nested braids.
pub fn linking_shared_base(
    base: &CablingBraid,
    pat_outer: &CablingBraid,
    pat_inner: &CablingBraid,
) -> Result<i64> {
    if !base.is_connected() {
        return Err(Error::DisconnectedBase);
    }
    Ok(base.writhe() * pat_outer.strands() as i64 * pat_inner.strands() as i64
        + linking_nested(pat_outer, pat_inner))
}

/// The multi-component braid of one end cluster: components listed from the
/// innermost (index 0) outward, pairwise radially separated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidCollection {
    components: Vec<CablingBraid>,
}

impl BraidCollection {
    pub fn new(components: Vec<CablingBraid>) -> BraidCollection {
        BraidCollection { components }
    }

    pub fn components(&self) -> &[CablingBraid] {
        &self.components
    }

    pub fn strands(&self) -> u32 {
        self.components.iter().map(|c| c.strands()).sum()
    }

    /// Total writhe: component writhes plus twice the pairwise linking.
    pub fn writhe(&self) -> i64 {
        let mut w: i64 = self.components.iter().map(|c| c.writhe()).sum();
        for (i, inner) in self.components.iter().enumerate() {
            for outer in &self.components[i + 1..] {
                w += 2 * linking_nested(outer, inner);
            }
        }
        w
    }
}

fn ceil_half(x: i64) -> i64 {
    Integer::div_ceil(&x, &2)
}

fn floor_half(x: i64) -> i64 {
    Integer::div_floor(&x, &2)
}

/// Sharp lower bound on the winding of a connected incoming end braid with q
/// strands: ⌈μ(γ^q)/2⌉.
pub fn winding_bound(cls: &OrbitClass, q: u32, t: TrivOffset) -> Result<i64> {
    Ok(ceil_half(cls.cz_index(q, t)?))
}

/// When equality in the writhe bound can hold, which strand counts allow it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WritheEqualityConstraint {
    /// Elliptic orbits: no constraint from this bound alone.
    Unconstrained,
    /// Hyperbolic with positive eigenvalues: only q = 1.
    MultiplicityOne,
    /// Hyperbolic with negative eigenvalues: q odd or q = 2.
    OddOrTwo,
}

impl WritheEqualityConstraint {
    pub fn allows(&self, q: u32) -> bool {
        match self {
            WritheEqualityConstraint::Unconstrained => true,
            WritheEqualityConstraint::MultiplicityOne => q == 1,
            WritheEqualityConstraint::OddOrTwo => q % 2 == 1 || q == 2,
        }
    }
}

/// Sharp lower bound ⌈μ(γ^q)/2⌉(q−1) on the writhe of a connected incoming
/// end braid, with the equality-case constraint on q.
pub fn writhe_bound(
    cls: &OrbitClass,
    q: u32,
    t: TrivOffset,
) -> Result<(i64, WritheEqualityConstraint)> {
    let bound = winding_bound(cls, q, t)? * (q as i64 - 1);
    let constraint = match cls {
        OrbitClass::Elliptic(_) => WritheEqualityConstraint::Unconstrained,
        OrbitClass::Hyperbolic(n) if n % 2 == 0 => WritheEqualityConstraint::MultiplicityOne,
        OrbitClass::Hyperbolic(_) => WritheEqualityConstraint::OddOrTwo,
    };
    Ok((bound, constraint))
}

/// Ideal lower bound for the writhe of an incoming end cluster with the given
/// partition: Σ_{i=1}^n μ(γ^i) − Σ_r μ(γ^{q_r}). Every geometric incoming
/// braid writhe is at least this; equality is possible only at p_in.
pub fn min_incoming_writhe(cls: &OrbitClass, parts: &Partition, t: TrivOffset) -> Result<i64> {
    let n = parts.total();
    if n == 0 {
        return Ok(0);
    }
    let mut w = cls.cz_sum(n, t)?;
    for &q in parts.parts() {
        w -= cls.cz_index(q, t)?;
    }
    Ok(w)
}

/// Ideal upper bound for the writhe of an outgoing end cluster:
/// Σ_{l=1}^m μ(γ^l) − Σ_r μ(γ^{q_r}); equality only at p_out.
pub fn max_outgoing_writhe(cls: &OrbitClass, parts: &Partition, t: TrivOffset) -> Result<i64> {
    min_incoming_writhe(cls, parts, t)
}

fn extremal_writhe(rho: &[i64], qs: &[u32], outgoing: bool) -> i64 {
    let mut w = 0i64;
    for (i, (&r, &q)) in rho.iter().zip(qs).enumerate() {
        w += r * (q as i64 - 1);
        for (j, (&rj, &qj)) in rho.iter().zip(qs).enumerate() {
            if i == j {
                continue;
            }
            let (a, b) = (q as i64 * rj, qj as i64 * r);
            w += if outgoing { a.max(b) } else { a.min(b) };
        }
    }
    w
}

/// The least writhe an incoming end braid with the given partition can
/// actually have: every component takes its minimal winding ⌈μ(γ^{q_i})/2⌉
/// and the component writhes and pairwise linkings sit at their bounds.
pub fn extremal_incoming_writhe(cls: &OrbitClass, parts: &Partition, t: TrivOffset) -> Result<i64> {
    let rho: Vec<i64> = parts
        .parts()
        .iter()
        .map(|&q| Ok(ceil_half(cls.cz_index(q, t)?)))
        .collect::<Result<_>>()?;
    Ok(extremal_writhe(&rho, parts.parts(), false))
}

/// The greatest writhe an outgoing end braid with the given partition can
/// have: maximal windings ⌊μ(γ^{q_i})/2⌋ and maximal pairwise linking.
pub fn extremal_outgoing_writhe(cls: &OrbitClass, parts: &Partition, t: TrivOffset) -> Result<i64> {
    let rho: Vec<i64> = parts
        .parts()
        .iter()
        .map(|&q| Ok(floor_half(cls.cz_index(q, t)?)))
        .collect::<Result<_>>()?;
    Ok(extremal_writhe(&rho, parts.parts(), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{AngleRep, Side};
    use proptest::prelude::*;

    fn t(q: u32, eta: i64) -> CablingBraid {
        CablingBraid::torus(q, eta).unwrap()
    }

    fn e25() -> OrbitClass {
        OrbitClass::Elliptic(AngleRep::new(2, 5, Side::Above, 8).unwrap())
    }

    fn parts(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(t(3, 2).writhe(), 4);
        assert_eq!(t(1, 9).writhe(), 0);
        let c = CablingBraid::cable(t(2, 1), t(2, 3)).unwrap();
        assert_eq!(c.writhe(), 7);
        assert_eq!(c.strands(), 4);
    }

    #[test]
    fn winding_examples() {
        assert_eq!(t(3, 2).winding(), 2);
        assert_eq!(CablingBraid::cable(t(2, 1), t(2, 3)).unwrap().winding(), 5);
        assert_eq!(t(1, 0).winding(), 0);
    }

    #[test]
    fn connectivity() {
        assert!(t(3, 2).is_connected());
        assert!(!t(4, 2).is_connected());
        assert!(t(1, 0).is_connected());
        assert!(t(2, -3).is_connected());
        assert_eq!(
            CablingBraid::cable(t(4, 2), t(1, 0)).unwrap_err(),
            Error::DisconnectedBase
        );
        let c = CablingBraid::cable(t(2, 1), t(2, 4)).unwrap();
        assert!(!c.is_connected());
    }

    #[test]
    fn identity_cabling_preserves_writhe() {
        for b in [t(3, 2), t(2, -3), CablingBraid::cable(t(2, 1), t(2, 3)).unwrap()] {
            let c = CablingBraid::cable(b.clone(), t(1, 0)).unwrap();
            assert_eq!(c.writhe(), b.writhe());
            assert_eq!(c.strands(), b.strands());
        }
    }

    #[test]
    fn writhe_retriv_examples() {
        assert_eq!(writhe_retriv(4, 3, 1), 10);
        assert_eq!(writhe_retriv(4, 1, 5), 4);
        assert_eq!(writhe_retriv(0, 2, -1), -2);
        assert_eq!(writhe_retriv(writhe_retriv(7, 4, 3), 4, -3), 7);
    }

    #[test]
    fn linking_examples() {
        assert_eq!(linking_nested(&t(2, 1), &t(3, 2)), 3);
        assert_eq!(linking_nested(&t(1, 0), &t(5, 4)), 0);
        assert_eq!(linking_nested(&t(2, 3), &t(2, 3)), 6);
        assert_eq!(linking_shared_base(&t(1, 2), &t(2, 1), &t(3, 1)).unwrap(), 3);
        assert_eq!(linking_shared_base(&t(2, 1), &t(2, 1), &t(3, 1)).unwrap(), 6 + 3);
    }

    #[test]
    fn collection_writhe_adds_linking() {
        let coll = BraidCollection::new(vec![t(2, 3), t(2, 3)]);
        assert_eq!(coll.strands(), 4);
        assert_eq!(coll.writhe(), 3 + 3 + 2 * 6);
        assert_eq!(BraidCollection::new(vec![]).writhe(), 0);
    }

    #[test]
    fn ideal_incoming_bound_examples() {
        let t0 = TrivOffset(0);
        assert_eq!(min_incoming_writhe(&e25(), &parts(&[2, 2, 1]), t0).unwrap(), 10);
        assert_eq!(min_incoming_writhe(&e25(), &parts(&[5]), t0).unwrap(), 8);
        assert_eq!(
            min_incoming_writhe(&OrbitClass::Hyperbolic(0), &Partition::ones(6), t0).unwrap(),
            0
        );
    }

    #[test]
    fn ideal_outgoing_bound_examples() {
        let t0 = TrivOffset(0);
        assert_eq!(max_outgoing_writhe(&e25(), &parts(&[3, 1]), t0).unwrap(), 4);
        assert_eq!(
            max_outgoing_writhe(&OrbitClass::Hyperbolic(1), &parts(&[2, 2]), t0).unwrap(),
            6
        );
        assert_eq!(max_outgoing_writhe(&e25(), &parts(&[1]), t0).unwrap(), 0);
    }

    #[test]
    fn winding_and_writhe_bounds() {
        let t0 = TrivOffset(0);
        assert_eq!(winding_bound(&e25(), 5, t0).unwrap(), 3);
        let (w, c) = writhe_bound(&e25(), 5, t0).unwrap();
        assert_eq!(w, 12);
        assert_eq!(c, WritheEqualityConstraint::Unconstrained);

        let (w, c) = writhe_bound(&OrbitClass::Hyperbolic(0), 4, t0).unwrap();
        assert_eq!(w, 0);
        assert_eq!(c, WritheEqualityConstraint::MultiplicityOne);
        assert!(!c.allows(4));
        assert!(c.allows(1));

        let (w, c) = writhe_bound(&OrbitClass::Hyperbolic(1), 2, t0).unwrap();
        assert_eq!(winding_bound(&OrbitClass::Hyperbolic(1), 2, t0).unwrap(), 1);
        assert_eq!(w, 1);
        assert_eq!(c, WritheEqualityConstraint::OddOrTwo);
        assert!(c.allows(2) && c.allows(3) && !c.allows(4));
    }

    #[test]
    fn extremal_writhes_touch_ideal_bounds_at_distinguished_partitions() {
        let t0 = TrivOffset(0);
        assert_eq!(extremal_incoming_writhe(&e25(), &parts(&[2, 2, 1]), t0).unwrap(), 10);
        assert_eq!(extremal_incoming_writhe(&e25(), &parts(&[5]), t0).unwrap(), 12);
        assert_eq!(extremal_outgoing_writhe(&e25(), &parts(&[3, 1]), t0).unwrap(), 4);
        assert_eq!(extremal_incoming_writhe(&e25(), &Partition::empty(), t0).unwrap(), 0);
    }

    fn arb_braid() -> impl Strategy<Value = CablingBraid> {
        let torus = (1u32..=4, -4i64..=4).prop_map(|(q, eta)| t(q, eta));
        let connected = (1u32..=4, -4i64..=4).prop_map(|(q, eta)| {
            if q == 1 || (q as i64).gcd(&eta) == 1 {
                t(q, eta)
            } else {
                t(q, eta + 1)
            }
        });
        (connected, torus).prop_perturb(|(base, pat), _| {
            CablingBraid::cable(base, pat).expect("base is connected")
        })
    }

    proptest! {
        #[test]
        fn cable_strands_multiply(b in arb_braid()) {
            if let CablingBraid::Cable { base, inner } = &b {
                prop_assert_eq!(b.strands(), base.strands() * inner.strands());
                prop_assert_eq!(b.is_connected(), inner.is_connected());
            }
        }

        #[test]
        fn retriv_round_trip(w in -50i64..=50, m in 1u32..=6, dt in -5i64..=5) {
            prop_assert_eq!(writhe_retriv(writhe_retriv(w, m, dt), m, -dt), w);
        }

        #[test]
        fn extremal_bounds_dominate_ideal_bounds(n in 1u32..=8, rot in -2i64..=2, t_off in -2i64..=2) {
            // The braid-achievable extremes can never beat the ideal bounds.
            let cls = OrbitClass::Hyperbolic(rot);
            let t0 = TrivOffset(t_off);
            for p in crate::oracle::partitions_of(n) {
                let p = Partition::new(p).unwrap();
                prop_assert!(extremal_incoming_writhe(&cls, &p, t0).unwrap()
                    >= min_incoming_writhe(&cls, &p, t0).unwrap());
                prop_assert!(extremal_outgoing_writhe(&cls, &p, t0).unwrap()
                    <= max_outgoing_writhe(&cls, &p, t0).unwrap());
            }
        }
    }
}
