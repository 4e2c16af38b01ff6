//! Independent oracles: brute-force enumeration over partitions, geometric
//! crossing counts for flattened braid diagrams, and a sweep harness that
//! checks the closed-form laws against these oracles across whole parameter
//! grids. Nothing here reuses the closed forms it is checking; crossing
//! counts come from coincidence equations solved in exact rational
//! arithmetic.

use num_integer::Integer;

use crate::angle::{farey_intervals, AngleRep};
use crate::braid::{extremal_incoming_writhe, min_incoming_writhe};
use crate::orbit::{OrbitClass, TrivOffset};
use crate::partition::{m_theta, p_in, Partition};
use crate::{Error, Result};

/// Every partition of n into positive parts, each non-increasing, in
/// lexicographically descending order. n = 0 gives the single empty
/// partition.
pub fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut k = max.min(rest);
        while k >= 1 {
            prefix.push(k);
            go(rest - k, k, prefix, out);
            prefix.pop();
            k -= 1;
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Minimize M_θ over every partition of n by enumeration. Returns the
/// minimum and all partitions attaining it.
pub fn brute_min_m(a: &AngleRep, n: u32) -> Result<(i64, Vec<Partition>)> {
    let mut best = i64::MAX;
    let mut argmin = Vec::new();
    for parts in partitions_of(n) {
        let p = Partition::new(parts)?;
        let v = m_theta(a, &p)?;
        if v < best {
            best = v;
            argmin = vec![p];
        } else if v == best {
            argmin.push(p);
        }
    }
    Ok((best, argmin))
}

/// One workhorse evaluation: the gap between the braid-achievable extremal
/// incoming writhe and the ideal lower bound, together with the closed-form
/// prediction of when the gap vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkhorseCheck {
    pub slack: i64,
    pub equality: bool,
    /// Closed-form equality characterization: elliptic orbits exactly at
    /// the incoming partition; positive hyperbolic always; negative
    /// hyperbolic when all parts are even except at most one 1.
    pub predicted_equality: bool,
    /// For elliptic orbits the slack has the closed form M_θ.
    pub m_value: Option<i64>,
}

pub fn verify_workhorse(
    cls: &OrbitClass,
    parts: &Partition,
    t: TrivOffset,
) -> Result<WorkhorseCheck> {
    let slack = extremal_incoming_writhe(cls, parts, t)? - min_incoming_writhe(cls, parts, t)?;
    let (predicted_equality, m_value) = match cls {
        OrbitClass::Elliptic(a) => {
            (parts == &p_in(a, parts.total())?, Some(m_theta(a, parts)?))
        }
        OrbitClass::Hyperbolic(r) if r % 2 == 0 => (true, None),
        OrbitClass::Hyperbolic(_) => {
            let ones = parts.parts().iter().filter(|&&q| q == 1).count();
            let rest_even = parts.parts().iter().all(|&q| q % 2 == 0 || q == 1);
            (ones <= 1 && rest_even, None)
        }
    };
    Ok(WorkhorseCheck { slack, equality: slack == 0, predicted_equality, m_value })
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest prime strictly above the bound. Used as 1/ω for the global
/// phase: any prime beyond the listed degeneracy denominators guarantees no
/// coincidence lands on t = 0 or t = 1.
fn phase_prime(bound: i64) -> i64 {
    let mut n = bound.max(1) + 1;
    while !is_prime(n) {
        n += 1;
    }
    n
}

const ORACLE_MAX_STRANDS: u32 = 12;
const ORACLE_MAX_WINDING: i64 = 12;

fn check_oracle_domain(q: u32, eta: i64) -> Result<()> {
    if q == 0 {
        return Err(Error::NotPositive { what: "strand count" });
    }
    if q > ORACLE_MAX_STRANDS || eta.abs() > ORACLE_MAX_WINDING {
        return Err(Error::mismatch(format!(
            "({q},{eta}) is outside the verified oracle domain"
        )));
    }
    Ok(())
}

/// Exact signed crossing count of the flattened (q,η) torus braid.
///
/// Strand j sits at angle 2π(j + ηt)/q + 2πω; flattening along the real
/// axis, two strands meet exactly when their angles are mirror images,
/// which reduces to t = (q(m − 2ω) − (j+k))/(2η) for integers m. Every such
/// crossing is transversal with sign(η). The phase ω = 1/p keeps all
/// coincidences away from the period boundary.
pub fn torus_crossing_count(q: u32, eta: i64) -> Result<i64> {
    check_oracle_domain(q, eta)?;
    if eta == 0 {
        return Ok(0);
    }
    let p = phase_prime(8 * q as i64 * (eta.abs() + 1));
    let qi = q as i64;
    let qp = qi * p;
    let bound = 2 * eta * p;
    let m_range = 2 * eta.abs() + 5;
    let mut count = 0i64;
    for j in 0..qi {
        for k in (j + 1)..qi {
            // t = N/(2ηp) with N = qp·m − (2q + (j+k)p); t ∈ [0,1).
            let c = 2 * qi + (j + k) * p;
            for m in -m_range..=m_range {
                let n = qp * m - c;
                let inside =
                    if eta > 0 { 0 <= n && n < bound } else { bound < n && n <= 0 };
                if inside {
                    count += eta.signum();
                }
            }
        }
    }
    Ok(count)
}

/// Exact crossing count of a one-level cable: a (q2,η2) pattern run inside
/// a tubular neighborhood of the closed connected (q1,η1) torus braid.
///
/// At small tube radius every base crossing is crossed by whole bundles,
/// q2·q2 strand pairs at a time, and the within-bundle crossings are those
/// of the pattern braid traversed once along the closed base. Both counts
/// come from the coincidence oracle, not the writhe formulas.
pub fn cable_crossing_count(q1: u32, eta1: i64, q2: u32, eta2: i64) -> Result<i64> {
    check_oracle_domain(q1, eta1)?;
    check_oracle_domain(q2, eta2)?;
    let connected = q1 == 1 || (q1 as i64).gcd(&eta1) == 1;
    if !connected {
        return Err(Error::DisconnectedBase);
    }
    if q1.saturating_mul(q2) > ORACLE_MAX_STRANDS {
        return Err(Error::mismatch("cable is outside the verified oracle domain"));
    }
    Ok(q2 as i64 * q2 as i64 * torus_crossing_count(q1, eta1)?
        + torus_crossing_count(q2, eta2)?)
}

/// Exact signed count of crossings between a (q,η) torus braid on the unit
/// circle and a radially separated trivial braid of `inner_strands` strands
/// held on the imaginary axis inside it.
///
/// A coincidence needs cos of the outer angle to vanish, so
/// (j + ηt)/q + ω = 1/4 + m/2; every solution crosses all inner strands at
/// once with sign(η). The closed form 2·η·strands is what this is checked
/// against, never assumed.
pub fn nested_crossing_count(q: u32, eta: i64, inner_strands: u32) -> Result<i64> {
    check_oracle_domain(q, eta)?;
    if inner_strands == 0 || inner_strands > ORACLE_MAX_STRANDS {
        return Err(Error::mismatch("inner strand count outside the oracle domain"));
    }
    if eta == 0 {
        return Ok(0);
    }
    let p = phase_prime(8 * q as i64 * (eta.abs() + 1));
    let qi = q as i64;
    let bound = 4 * p * eta;
    let m_range = 2 * eta.abs() + 5;
    let mut per_strand = 0i64;
    for j in 0..qi {
        // t = N/(4pη) with N = qp(2m+1) − 4q − 4pj; t ∈ [0,1).
        for m in -m_range..=m_range {
            let n = qi * p * (2 * m + 1) - 4 * qi - 4 * p * j;
            let inside = if eta > 0 { 0 <= n && n < bound } else { bound < n && n <= 0 };
            if inside {
                per_strand += eta.signum();
            }
        }
    }
    Ok(per_strand * inner_strands as i64)
}

#[derive(Debug, Clone, Default)]
pub struct BraidBatteryReport {
    pub torus_checks: u64,
    pub cable_checks: u64,
    pub nested_checks: u64,
    pub failures: Vec<String>,
}

impl BraidBatteryReport {
    pub fn total_checks(&self) -> u64 {
        self.torus_checks + self.cable_checks + self.nested_checks
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compare the closed-form writhe and linking laws against the geometric
/// crossing counts: torus braids over a (q,η) grid, every connected
/// one-level cable up to a strand cap, and nested linking with evenness of
/// the inter-component count.
pub fn braid_battery(
    max_q: u32,
    max_eta: i64,
    max_cable_strands: u32,
) -> Result<BraidBatteryReport> {
    use crate::braid::{linking_nested, CablingBraid};
    let mut report = BraidBatteryReport::default();
    for q in 1..=max_q {
        for eta in -max_eta..=max_eta {
            let counted = torus_crossing_count(q, eta)?;
            let formula = CablingBraid::torus(q, eta)?.writhe();
            report.torus_checks += 1;
            if counted != formula {
                report.failures.push(format!(
                    "torus ({q},{eta}): counted {counted} crossings, writhe law gives {formula}"
                ));
            }
        }
    }
    for q1 in 1..=max_cable_strands {
        for q2 in 1..=max_cable_strands / q1 {
            for eta1 in -max_eta..=max_eta {
                let base = CablingBraid::torus(q1, eta1)?;
                if !base.is_connected() {
                    continue;
                }
                for eta2 in -max_eta..=max_eta {
                    let counted = cable_crossing_count(q1, eta1, q2, eta2)?;
                    let formula =
                        CablingBraid::cable(base.clone(), CablingBraid::torus(q2, eta2)?)?
                            .writhe();
                    report.cable_checks += 1;
                    if counted != formula {
                        report.failures.push(format!(
                            "cable ({q1},{eta1};{q2},{eta2}): counted {counted} crossings, \
                             writhe law gives {formula}"
                        ));
                    }
                }
            }
        }
    }
    for q in 1..=max_q {
        for eta in -max_eta..=max_eta {
            let outer = CablingBraid::torus(q, eta)?;
            for strands in 1..=4u32 {
                let inner = CablingBraid::torus(strands, 1)?;
                let counted = nested_crossing_count(q, eta, strands)?;
                report.nested_checks += 1;
                if counted != 2 * linking_nested(&outer, &inner) {
                    report.failures.push(format!(
                        "nested ({q},{eta}) around {strands} strands: counted {counted}, \
                         linking law gives {}",
                        2 * linking_nested(&outer, &inner)
                    ));
                }
                if counted % 2 != 0 {
                    report.failures.push(format!(
                        "nested ({q},{eta}) around {strands} strands: odd crossing count {counted}"
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Where the sweep gets its claimed distinguished partitions. The seam
/// exists so a deliberately corrupted source can demonstrate that the sweep
/// actually detects wrong partitions.
pub trait PartitionSource {
    fn incoming(&self, a: &AngleRep, m: u32) -> Result<Partition>;

    fn outgoing(&self, a: &AngleRep, m: u32) -> Result<Partition> {
        self.incoming(&a.negate(), m)
    }
}

/// The library's own closed forms.
pub struct LibraryPartitions;

impl PartitionSource for LibraryPartitions {
    fn incoming(&self, a: &AngleRep, m: u32) -> Result<Partition> {
        p_in(a, m)
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    /// Farey order of the interval grid; one representative angle per
    /// interval. Must be at least max_multiplicity so the partitions are
    /// constant on each interval.
    pub farey_order: u32,
    pub max_multiplicity: u32,
    /// Hyperbolic rotation numbers for the workhorse checks.
    pub hyperbolic_rotations: Vec<i64>,
}

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub intervals: usize,
    pub minimality_checks: u64,
    pub disjointness_checks: u64,
    pub identity_checks: u64,
    pub split_checks: u64,
    pub workhorse_checks: u64,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn total_checks(&self) -> u64 {
        self.minimality_checks
            + self.disjointness_checks
            + self.identity_checks
            + self.split_checks
            + self.workhorse_checks
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Run every sweep lemma over one Farey interval grid:
/// M_θ minimality (unique argmin at the incoming partition), incoming and
/// outgoing partitions sharing no part with exactly one side holding a 1,
/// the ceiling and floor identities on the incoming parts, split-condition
/// consistency, and the workhorse gap over all partitions for elliptic and
/// hyperbolic local models.
pub fn run_sweep(spec: &SweepSpec, source: &dyn PartitionSource) -> Result<SweepReport> {
    if spec.farey_order < spec.max_multiplicity {
        return Err(Error::mismatch(
            "farey order below max multiplicity: partitions would not be constant per interval",
        ));
    }
    let intervals = farey_intervals(spec.farey_order);
    let mut report = SweepReport { intervals: intervals.len(), ..SweepReport::default() };
    let t0 = TrivOffset(0);
    let max = spec.max_multiplicity;

    for iv in &intervals {
        let a = iv.representative(max)?;

        for n in 0..=max {
            let claimed = source.incoming(&a, n)?;
            let (minimum, argmin) = brute_min_m(&a, n)?;
            report.minimality_checks += 1;
            if minimum != 0 {
                report.failures.push(format!(
                    "minimality: interval {iv}, n={n}: minimum of M is {minimum}, not 0"
                ));
            } else if argmin.len() != 1 || argmin[0] != claimed {
                let listed: Vec<String> =
                    argmin.iter().map(|p| format!("{{{p}}}")).collect();
                report.failures.push(format!(
                    "minimality: interval {iv}, n={n}: M vanishes on {} but the claimed \
                     incoming partition is {{{claimed}}}",
                    listed.join(", ")
                ));
            }
        }

        for m in 2..=max {
            let pin = source.incoming(&a, m)?;
            let pout = source.outgoing(&a, m)?;
            report.disjointness_checks += 1;
            if pin.parts().iter().any(|q| pout.parts().contains(q)) {
                report.failures.push(format!(
                    "disjointness: interval {iv}, m={m}: {{{pin}}} and {{{pout}}} share a part"
                ));
            }
            let one_in = pin.parts().contains(&1);
            let one_out = pout.parts().contains(&1);
            if one_in == one_out {
                report.failures.push(format!(
                    "dichotomy: interval {iv}, m={m}: part 1 in {} of {{{pin}}} / {{{pout}}}",
                    if one_in { "both" } else { "neither" }
                ));
            }
        }

        for m in 1..=max {
            let pin = source.incoming(&a, m)?;
            let qs = pin.parts();
            report.identity_checks += 1;
            let ceil_sum: i64 = qs.iter().map(|&q| a.ceil_mult(q)).sum::<Result<i64>>()?;
            if ceil_sum != a.ceil_mult(m)? {
                report.failures.push(format!(
                    "ceiling sum: interval {iv}, m={m}: Σ⌈qθ⌉ = {ceil_sum} over {{{pin}}} \
                     but ⌈mθ⌉ = {}",
                    a.ceil_mult(m)?
                ));
            }
            for i in 0..qs.len() {
                for j in (i + 1)..qs.len() {
                    let lhs = a.floor_mult(qs[i])? + a.floor_mult(qs[j])?;
                    if lhs >= a.floor_mult(qs[i] + qs[j])? {
                        report.failures.push(format!(
                            "strict superadditivity: interval {iv}, parts {} and {} of {{{pin}}}",
                            qs[i], qs[j]
                        ));
                    }
                }
            }
            for &q in qs {
                for b in 1..q {
                    if a.floor_mult(b)? + a.floor_mult(q - b)? != a.floor_mult(q)? {
                        report.failures.push(format!(
                            "floor additivity inside part {q} = {b}+{} of {{{pin}}}, interval {iv}",
                            q - b
                        ));
                    }
                }
            }
        }

        for m in 1..max {
            for n in 1..=(max - m) {
                report.split_checks += 1;
                if crate::partition::check_split(&a, m, n)? {
                    let union = source.incoming(&a, m)?.union(&source.incoming(&a, n)?);
                    if source.incoming(&a, m + n)? != union {
                        report.failures.push(format!(
                            "split consistency: interval {iv}, {m}+{n}: condition holds but \
                             the partitions do not split"
                        ));
                    }
                }
            }
        }

        for n in 1..=max {
            let distinguished = source.incoming(&a, n)?;
            for parts in partitions_of(n) {
                let p = Partition::new(parts)?;
                let check = verify_workhorse(&OrbitClass::Elliptic(a), &p, t0)?;
                report.workhorse_checks += 1;
                if check.slack < 0 {
                    report.failures.push(format!(
                        "workhorse: interval {iv}, partition {{{p}}}: negative slack {}",
                        check.slack
                    ));
                }
                if Some(check.slack) != check.m_value {
                    report.failures.push(format!(
                        "workhorse: interval {iv}, partition {{{p}}}: slack {} but M_θ = {:?}",
                        check.slack, check.m_value
                    ));
                }
                if check.equality != (p == distinguished) {
                    report.failures.push(format!(
                        "workhorse equality: interval {iv}, partition {{{p}}}: slack {} \
                         with claimed incoming partition {{{distinguished}}}",
                        check.slack
                    ));
                }
            }
        }
    }

    for &rot in &spec.hyperbolic_rotations {
        let cls = OrbitClass::Hyperbolic(rot);
        for n in 1..=max {
            for parts in partitions_of(n) {
                let p = Partition::new(parts)?;
                let check = verify_workhorse(&cls, &p, t0)?;
                report.workhorse_checks += 1;
                if check.slack < 0 {
                    report.failures.push(format!(
                        "workhorse: rotation {rot}, partition {{{p}}}: negative slack {}",
                        check.slack
                    ));
                }
                if check.equality != check.predicted_equality {
                    report.failures.push(format!(
                        "workhorse equality: rotation {rot}, partition {{{p}}}: slack {} but \
                         the characterization predicts {}",
                        check.slack, check.predicted_equality
                    ));
                }
            }
        }
    }

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Side;
    use crate::braid::{linking_nested, CablingBraid};

    fn ang(num: i64, den: i64, guard: u32) -> AngleRep {
        AngleRep::new(num, den, Side::Above, guard).unwrap()
    }

    fn parts(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn partition_enumeration() {
        assert_eq!(partitions_of(0), vec![Vec::<u32>::new()]);
        assert_eq!(partitions_of(1), vec![vec![1]]);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(10).len(), 42);
        assert_eq!(partitions_of(4)[0], vec![4]);
        assert_eq!(partitions_of(4).last().unwrap(), &vec![1, 1, 1, 1]);
    }

    #[test]
    fn brute_minimum_examples() {
        let a = ang(2, 5, 8);
        let (min, argmin) = brute_min_m(&a, 5).unwrap();
        assert_eq!(min, 0);
        assert_eq!(argmin, vec![parts(&[2, 2, 1])]);

        let near_zero = farey_intervals(8)[0].representative(8).unwrap();
        let (min, argmin) = brute_min_m(&near_zero, 8).unwrap();
        assert_eq!(min, 0);
        assert_eq!(argmin, vec![parts(&[8])]);

        let (min, argmin) = brute_min_m(&a, 1).unwrap();
        assert_eq!((min, argmin), (0, vec![parts(&[1])]));
    }

    #[test]
    fn workhorse_examples() {
        let t0 = TrivOffset(0);
        let h = OrbitClass::Hyperbolic(1);
        let c = verify_workhorse(&h, &parts(&[2, 2]), t0).unwrap();
        assert_eq!(c.slack, 0);
        assert!(c.equality && c.predicted_equality);

        let e = OrbitClass::Elliptic(ang(2, 5, 8));
        let c = verify_workhorse(&e, &parts(&[2, 2, 1]), t0).unwrap();
        assert_eq!(c.slack, 0);
        assert_eq!(c.m_value, Some(0));
        assert!(c.equality && c.predicted_equality);

        let c = verify_workhorse(&e, &parts(&[5]), t0).unwrap();
        assert_eq!(c.slack, 4);
        assert_eq!(c.m_value, Some(4));
        assert!(!c.equality && !c.predicted_equality);
    }

    #[test]
    fn torus_crossing_examples() {
        assert_eq!(torus_crossing_count(3, 2).unwrap(), 4);
        assert_eq!(torus_crossing_count(2, -3).unwrap(), -3);
        assert_eq!(torus_crossing_count(1, 5).unwrap(), 0);
        assert_eq!(torus_crossing_count(4, 0).unwrap(), 0);
        assert_eq!(torus_crossing_count(6, 6).unwrap(), 30);
        // Full twists on m strands.
        for m in 1..=6u32 {
            assert_eq!(
                torus_crossing_count(m, m as i64).unwrap(),
                (m as i64) * (m as i64 - 1)
            );
        }
        assert!(torus_crossing_count(0, 1).is_err());
        assert!(torus_crossing_count(13, 1).is_err());
    }

    #[test]
    fn cable_crossing_examples() {
        assert_eq!(cable_crossing_count(2, 1, 2, 1).unwrap(), 5);
        assert_eq!(cable_crossing_count(3, 2, 2, -1).unwrap(), 15);
        assert_eq!(
            cable_crossing_count(4, 2, 2, 0).unwrap_err(),
            Error::DisconnectedBase
        );
        let w = CablingBraid::cable(
            CablingBraid::torus(2, 1).unwrap(),
            CablingBraid::torus(2, 1).unwrap(),
        )
        .unwrap()
        .writhe();
        assert_eq!(cable_crossing_count(2, 1, 2, 1).unwrap(), w);
    }

    #[test]
    fn nested_crossing_examples() {
        assert_eq!(nested_crossing_count(2, 3, 2).unwrap(), 12);
        assert_eq!(nested_crossing_count(3, -2, 1).unwrap(), -4);
        assert_eq!(nested_crossing_count(1, 7, 3).unwrap(), 42);
        assert_eq!(nested_crossing_count(5, 0, 2).unwrap(), 0);
        let outer = CablingBraid::torus(4, 3).unwrap();
        let inner = CablingBraid::torus(2, 5).unwrap();
        let count = nested_crossing_count(4, 3, inner.strands()).unwrap();
        assert_eq!(count, 2 * linking_nested(&outer, &inner));
        assert_eq!(count % 2, 0);
    }

    #[test]
    fn sweep_passes_on_library_partitions() {
        let spec = SweepSpec {
            farey_order: 5,
            max_multiplicity: 5,
            hyperbolic_rotations: vec![-1, 0, 1],
        };
        let report = run_sweep(&spec, &LibraryPartitions).unwrap();
        assert_eq!(report.intervals, 10);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.total_checks() > 0);
    }

    #[test]
    fn sweep_detects_a_corrupted_source() {
        struct AllSingletons;
        impl PartitionSource for AllSingletons {
            fn incoming(&self, _a: &AngleRep, m: u32) -> Result<Partition> {
                if m == 0 {
                    return Ok(Partition::empty());
                }
                Partition::singleton(m)
            }
        }
        let spec = SweepSpec {
            farey_order: 5,
            max_multiplicity: 4,
            hyperbolic_rotations: vec![],
        };
        let report = run_sweep(&spec, &AllSingletons).unwrap();
        assert!(!report.passed());
        assert!(report.failures.iter().any(|f| f.starts_with("minimality")));
    }

    #[test]
    fn sweep_rejects_an_undersized_order() {
        let spec = SweepSpec {
            farey_order: 4,
            max_multiplicity: 5,
            hyperbolic_rotations: vec![],
        };
        assert!(run_sweep(&spec, &LibraryPartitions).is_err());
    }

    #[test]
    fn battery_passes_on_a_small_grid() {
        let report = braid_battery(4, 3, 6).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert!(report.torus_checks >= 28);
        assert!(report.cable_checks > 0);
        assert!(report.nested_checks > 0);
    }
}
