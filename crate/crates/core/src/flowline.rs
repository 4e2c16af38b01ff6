//! Candidate-curve end data and every verdict computed from it: flow-line
//! admissibility, Fredholm and virtual dimension arithmetic, the index
//! inequality, adjunction consistency, the Euler-characteristic bound,
//! trivial-cylinder corrections, multiply-covered bounds, and the
//! s-translation inequality.

use std::fmt;

use crate::braid::{
    extremal_incoming_writhe, extremal_outgoing_writhe, writhe_bound,
};
use crate::index::{OrbitSet, RelativeClassData};
use crate::orbit::{OrbitClass, PeriodicOrbit};
use crate::partition::{orbit_partition, Direction, Partition};
use crate::{Error, Result};

/// Everything a curve does at one orbit: the partitions of its nontrivial
/// outgoing and incoming end multiplicities and the number of repeated
/// trivial cylinders over the orbit. With trivial count r, the orbit carries
/// multiplicity m′+r in alpha and n′+r in beta.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndData {
    orbit: PeriodicOrbit,
    out_partition: Partition,
    in_partition: Partition,
    trivial_count: u32,
}

impl EndData {
    pub fn new(
        orbit: PeriodicOrbit,
        out_partition: Partition,
        in_partition: Partition,
        trivial_count: u32,
    ) -> Result<EndData> {
        if out_partition.is_empty() && in_partition.is_empty() && trivial_count == 0 {
            return Err(Error::mismatch(format!(
                "end over orbit {} has no ends at all",
                orbit.name()
            )));
        }
        Ok(EndData { orbit, out_partition, in_partition, trivial_count })
    }

    pub fn orbit(&self) -> &PeriodicOrbit {
        &self.orbit
    }

    pub fn out_partition(&self) -> &Partition {
        &self.out_partition
    }

    pub fn in_partition(&self) -> &Partition {
        &self.in_partition
    }

    pub fn trivial_count(&self) -> u32 {
        self.trivial_count
    }

    /// Total multiplicity of nontrivial outgoing ends.
    pub fn m_prime(&self) -> u32 {
        self.out_partition.total()
    }

    /// Total multiplicity of nontrivial incoming ends.
    pub fn n_prime(&self) -> u32 {
        self.in_partition.total()
    }

    pub fn alpha_multiplicity(&self) -> u32 {
        self.m_prime() + self.trivial_count
    }

    pub fn beta_multiplicity(&self) -> u32 {
        self.n_prime() + self.trivial_count
    }
}

/// A candidate flow-line curve: end data, domain Euler characteristic,
/// singularity count δ, the relative class it claims to represent, and the
/// total end writhe when it is known. The orbit multiplicities read off the
/// ends must reproduce the class's orbit sets exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateCurve {
    ends: Vec<EndData>,
    chi: i64,
    delta: u32,
    class: RelativeClassData,
    writhe_total: Option<i64>,
}

impl CandidateCurve {
    pub fn new(
        class: RelativeClassData,
        ends: Vec<EndData>,
        chi: i64,
        delta: u32,
        writhe_total: Option<i64>,
    ) -> Result<CandidateCurve> {
        let mut alpha_entries = Vec::new();
        let mut beta_entries = Vec::new();
        for (i, end) in ends.iter().enumerate() {
            if ends[..i].iter().any(|e| e.orbit.name() == end.orbit.name()) {
                return Err(Error::mismatch(format!(
                    "orbit {} has two end declarations",
                    end.orbit.name()
                )));
            }
            if end.alpha_multiplicity() > 0 {
                alpha_entries.push((end.orbit.clone(), end.alpha_multiplicity()));
            }
            if end.beta_multiplicity() > 0 {
                beta_entries.push((end.orbit.clone(), end.beta_multiplicity()));
            }
        }
        let alpha = OrbitSet::new(alpha_entries)?;
        let beta = OrbitSet::new(beta_entries)?;
        if &alpha != class.alpha() {
            return Err(Error::mismatch(format!(
                "ends give alpha = {alpha} but the class declares {}",
                class.alpha()
            )));
        }
        if &beta != class.beta() {
            return Err(Error::mismatch(format!(
                "ends give beta = {beta} but the class declares {}",
                class.beta()
            )));
        }
        Ok(CandidateCurve { ends, chi, delta, class, writhe_total })
    }

    pub fn ends(&self) -> &[EndData] {
        &self.ends
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn class(&self) -> &RelativeClassData {
        &self.class
    }

    pub fn writhe_total(&self) -> Option<i64> {
        self.writhe_total
    }

    pub fn has_trivial_cylinders(&self) -> bool {
        self.ends.iter().any(|e| e.trivial_count > 0)
    }
}

/// The union-splitting conditions at one orbit for r repeated trivial
/// cylinders next to nontrivial end multiplicities m′ (out) and n′ (in):
/// for every 1 ≤ k ≤ r the distinguished partition of the combined
/// multiplicity must split off the distinguished partition of k.
fn union_splitting(
    cls: &OrbitClass,
    name: &str,
    m_prime: u32,
    n_prime: u32,
    r: u32,
    reasons: &mut Vec<String>,
) -> Result<bool> {
    let mut ok = true;
    for (dir, label, base) in
        [(Direction::Out, "outgoing", m_prime), (Direction::In, "incoming", n_prime)]
    {
        let at_base = orbit_partition(cls, base, dir)?;
        for k in 1..=r {
            let combined = orbit_partition(cls, base + k, dir)?;
            let split = at_base.union(&orbit_partition(cls, k, dir)?);
            if combined != split {
                ok = false;
                reasons.push(format!(
                    "orbit {name}: {label} multiplicity {base}+{k} has partition {{{combined}}}, \
                     not the split {{{split}}}"
                ));
            }
        }
    }
    Ok(ok)
}

/// Whether every end carries the distinguished partitions and the trivial
/// cylinders satisfy the splitting conditions. Returns the verdict along
/// with one reason per failed condition. Hyperbolic orbits with positive
/// eigenvalues always split; negative eigenvalues with odd nontrivial
/// multiplicity and trivial cylinders present always fail.
pub fn check_admissible_curve(c: &CandidateCurve) -> Result<(bool, Vec<String>)> {
    let mut reasons = Vec::new();
    for end in c.ends() {
        let cls = end.orbit().class();
        let name = end.orbit().name();
        let expect_out = orbit_partition(cls, end.m_prime(), Direction::Out)?;
        if end.out_partition() != &expect_out {
            reasons.push(format!(
                "end {name}: outgoing partition {{{}}} expected {{{expect_out}}}",
                end.out_partition()
            ));
        }
        let expect_in = orbit_partition(cls, end.n_prime(), Direction::In)?;
        if end.in_partition() != &expect_in {
            reasons.push(format!(
                "end {name}: incoming partition {{{}}} expected {{{expect_in}}}",
                end.in_partition()
            ));
        }
        union_splitting(cls, name, end.m_prime(), end.n_prime(), end.trivial_count, &mut reasons)?;
    }
    Ok((reasons.is_empty(), reasons))
}

/// n·χ + 2c₁ + Σ maslov_terms, the general index count for a rank-n problem.
pub fn schwarz_index(n: i64, chi: i64, c1: i64, maslov_terms: &[i64]) -> i64 {
    n * chi + 2 * c1 + maslov_terms.iter().sum::<i64>()
}

fn mu_zero(c: &CandidateCurve) -> Result<i64> {
    let mut total = 0i64;
    for end in c.ends() {
        let t = c.class().offset(end.orbit().name());
        for &q in end.out_partition().parts() {
            total += end.orbit().cz_index(q, t)?;
        }
        for &q in end.in_partition().parts() {
            total -= end.orbit().cz_index(q, t)?;
        }
        // Trivial cylinders appear as one outgoing and one incoming cover of
        // multiplicity 1 each and cancel here.
    }
    Ok(total)
}

/// The total writhe substituted when none is supplied: every outgoing
/// cluster at its maximal achievable writhe and every incoming cluster at
/// its minimal one, with trivial cylinders counted as single-strand
/// components on both sides.
pub fn extremal_total_writhe(c: &CandidateCurve) -> Result<i64> {
    let mut w = 0i64;
    for end in c.ends() {
        let cls = end.orbit().class();
        let t = c.class().offset(end.orbit().name());
        let cyl = Partition::ones(end.trivial_count);
        w += extremal_outgoing_writhe(cls, &end.out_partition().union(&cyl), t)?;
        w -= extremal_incoming_writhe(cls, &end.in_partition().union(&cyl), t)?;
    }
    Ok(w)
}

/// c₁ + Q + w + μ⁰: the dimension of the moduli space near an embedded curve
/// with this data. Uses the supplied total writhe, or the extremal per-end
/// substitution when none is given.
pub fn fredholm_dimension(c: &CandidateCurve) -> Result<i64> {
    let w = match c.writhe_total() {
        Some(w) => w,
        None => extremal_total_writhe(c)?,
    };
    Ok(c.class().c1_rel() + c.class().q_self() + w + mu_zero(c)?)
}

/// c₁ − χ − w − Q + 2δ; zero exactly when the data is consistent with the
/// relative adjunction relation. Requires a supplied writhe.
pub fn adjunction_residual(c: &CandidateCurve) -> Result<i64> {
    let w = c.writhe_total().ok_or(Error::MissingWrithe)?;
    Ok(c.class().c1_rel() - c.chi() - w - c.class().q_self() + 2 * c.delta() as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    ViolatesIndexInequality,
    EqualityRequiresAdmissible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::ViolatesIndexInequality => "violates_index_inequality",
            Verdict::EqualityRequiresAdmissible => "equality_requires_admissible",
        })
    }
}

/// Outcome of the index inequality on one candidate curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexReport {
    pub relative_index: i64,
    pub fredholm: i64,
    /// relative_index − fredholm; nonnegative in every consistent report.
    pub gap: i64,
    pub verdict: Verdict,
    /// Curve end conditions and orbit-set admissibility combined.
    pub admissible: bool,
    pub reasons: Vec<String>,
    pub writhe_substituted: bool,
    pub adjunction_residual: Option<i64>,
    pub diagnostics: Vec<String>,
}

/// Evaluate the index inequality dim ≤ I. A fredholm dimension above I can
/// never be geometric; equality demands an admissible curve.
pub fn index_inequality_report(c: &CandidateCurve) -> Result<IndexReport> {
    let relative_index = c.class().relative_index()?;
    let fredholm = fredholm_dimension(c)?;
    let gap = relative_index - fredholm;
    let (ends_ok, mut reasons) = check_admissible_curve(c)?;
    let mut admissible = ends_ok;
    for set in [c.class().alpha(), c.class().beta()] {
        for (orbit, mult) in set.iter() {
            if !orbit.class().is_elliptic() && *mult > 1 {
                admissible = false;
                let reason = format!(
                    "hyperbolic orbit {} has multiplicity {mult} > 1",
                    orbit.name()
                );
                if !reasons.contains(&reason) {
                    reasons.push(reason);
                }
            }
        }
    }
    let mut diagnostics = Vec::new();
    let writhe_substituted = c.writhe_total().is_none();
    if writhe_substituted {
        diagnostics.push(
            "writhe not supplied; extremal per-end bounds substituted, equality statements are conditional"
                .to_string(),
        );
    }
    if gap == 0 {
        for end in c.ends() {
            let t = c.class().offset(end.orbit().name());
            for (parts, label) in
                [(end.in_partition(), "incoming"), (end.out_partition(), "outgoing")]
            {
                for &q in parts.parts() {
                    let (_, constraint) = writhe_bound(end.orbit().class(), q, t)?;
                    if !constraint.allows(q) {
                        diagnostics.push(format!(
                            "equality impossible: {label} component of multiplicity {q} at orbit {}",
                            end.orbit().name()
                        ));
                    }
                }
            }
        }
    }
    let adjunction_residual = match c.writhe_total() {
        Some(_) => Some(adjunction_residual(c)?),
        None => None,
    };
    let verdict = if fredholm > relative_index {
        Verdict::ViolatesIndexInequality
    } else if fredholm == relative_index && !admissible {
        Verdict::EqualityRequiresAdmissible
    } else {
        Verdict::Consistent
    };
    Ok(IndexReport {
        relative_index,
        fredholm,
        gap,
        verdict,
        admissible,
        reasons,
        writhe_substituted,
        adjunction_residual,
        diagnostics,
    })
}

/// Lower bound on the Euler characteristic of a curve without trivial
/// cylinders, and whether the supplied χ meets it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub bound: i64,
    pub chi: i64,
    pub satisfied: bool,
    pub equality: bool,
    /// Equality is forced for generic data when the relative index is 1.
    pub equality_forced: bool,
}

/// χ(C) ≥ c₁ − μ + μ⁰ − Q, where μ is the full Conley–Zehnder sum of the
/// relative index and μ⁰ its end-cover part. Undefined when trivial
/// cylinders are present.
pub fn euler_bound(c: &CandidateCurve) -> Result<EulerReport> {
    if c.has_trivial_cylinders() {
        return Err(Error::TrivialCylindersPresent);
    }
    let mut mu = 0i64;
    for (orbit, mult) in c.class().alpha().iter() {
        mu += orbit.cz_sum(*mult, c.class().offset(orbit.name()))?;
    }
    for (orbit, mult) in c.class().beta().iter() {
        mu -= orbit.cz_sum(*mult, c.class().offset(orbit.name()))?;
    }
    let bound = c.class().c1_rel() - mu + mu_zero(c)? - c.class().q_self();
    let relative_index = c.class().relative_index()?;
    Ok(EulerReport {
        bound,
        chi: c.chi(),
        satisfied: c.chi() >= bound,
        equality: c.chi() == bound,
        equality_forced: relative_index == 1,
    })
}

/// 2c₁ + μ⁰ − χ: the Fredholm index of the deformation operator of a
/// possibly non-embedded representative.
pub fn virtual_dimension(c: &CandidateCurve) -> Result<i64> {
    Ok(2 * c.class().c1_rel() + mu_zero(c)? - c.chi())
}

/// virtual_dimension mod 2; equals the relative index mod 2 for admissible,
/// adjunction-consistent data.
pub fn gfl_parity(c: &CandidateCurve) -> Result<u8> {
    Ok(virtual_dimension(c)?.rem_euclid(2) as u8)
}

/// Outcome of attaching trivial cylinders to a curve without any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialCylinderReport {
    pub index_without: i64,
    pub index_with: i64,
    pub intersections: u32,
    /// I(C′+T) − 2#(C′∩T) − I(C′); the claimed inequality is slack ≥ 0.
    pub slack: i64,
    pub satisfied: bool,
    /// Whether the union-splitting conditions hold at every cylinder orbit,
    /// as equality requires.
    pub equality_conditions_met: bool,
    /// True when no Q cross-terms were supplied and 0 was assumed.
    pub cross_terms_assumed: bool,
    pub reasons: Vec<String>,
    pub combined: RelativeClassData,
}

/// Attach `count` trivial cylinders over each named orbit to c′ and check
/// I(C′) ≤ I(C′+T) − 2#(C′∩T). The cylinders contribute no c₁; their Q
/// cross-terms are taken from `cross_q` or assumed 0 with a diagnostic.
pub fn trivial_cylinder_correction(
    c_prime: &CandidateCurve,
    cylinders: &[(&str, u32)],
    intersections: u32,
    cross_q: Option<i64>,
) -> Result<TrivialCylinderReport> {
    if c_prime.has_trivial_cylinders() {
        return Err(Error::TrivialCylindersPresent);
    }
    if cylinders.is_empty() {
        return Err(Error::mismatch("no trivial cylinders supplied"));
    }
    let class = c_prime.class();
    let mut alpha = class.alpha().clone();
    let mut beta = class.beta().clone();
    let mut reasons = Vec::new();
    let mut equality_conditions_met = true;
    for (i, &(name, count)) in cylinders.iter().enumerate() {
        if count == 0 {
            return Err(Error::NotPositive { what: "trivial cylinder count" });
        }
        if cylinders[..i].iter().any(|(n, _)| n == &name) {
            return Err(Error::DuplicateOrbit(name.to_string()));
        }
        let orbit = class
            .alpha()
            .get(name)
            .or_else(|| class.beta().get(name))
            .map(|(o, _)| o.clone())
            .ok_or_else(|| {
                Error::mismatch(format!("cylinder orbit {name} absent from both sides"))
            })?;
        alpha = alpha.add_multiple(&orbit, count)?;
        beta = beta.add_multiple(&orbit, count)?;
        let end = c_prime.ends().iter().find(|e| e.orbit().name() == name);
        let (m_prime, n_prime) = end.map_or((0, 0), |e| (e.m_prime(), e.n_prime()));
        if !union_splitting(orbit.class(), name, m_prime, n_prime, count, &mut reasons)? {
            equality_conditions_met = false;
        }
    }
    let combined = RelativeClassData::new(
        alpha,
        beta,
        class.c1_rel(),
        class.q_self() + cross_q.unwrap_or(0),
        class.offsets().clone(),
    )?;
    let index_without = class.relative_index()?;
    let index_with = combined.relative_index()?;
    let slack = index_with - 2 * intersections as i64 - index_without;
    Ok(TrivialCylinderReport {
        index_without,
        index_with,
        intersections,
        slack,
        satisfied: slack >= 0,
        equality_conditions_met,
        cross_terms_assumed: cross_q.is_none(),
        reasons,
        combined,
    })
}

/// One component of a multiply covered configuration: the underlying curve,
/// its moduli dimension when known (the extremal fredholm value otherwise),
/// and its covering multiplicity.
#[derive(Debug, Clone)]
pub struct MccComponent {
    pub curve: CandidateCurve,
    pub dim: Option<i64>,
    pub d: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MccReport {
    pub weighted_dimension_sum: i64,
    pub combined_index: i64,
    /// combined_index − weighted_dimension_sum; the bound is slack ≥ 0.
    pub slack: i64,
    pub satisfied: bool,
    pub dims: Vec<i64>,
    pub dims_assumed_extremal: Vec<bool>,
}

/// Σ_p d_p·dim(M_p) ≤ I(Σ_p d_p C_p). The combined class must expand
/// bilinearly from the component data: c₁ additively, Q with d² diagonal and
/// d_p·d_q cross-terms, and orbit sets as multiplicity sums; anything else is
/// an input error.
pub fn multiply_covered_bound(
    components: &[MccComponent],
    cross_q: &[((usize, usize), i64)],
    combined: &RelativeClassData,
) -> Result<MccReport> {
    if components.is_empty() {
        return Err(Error::mismatch("no components supplied"));
    }
    let mut expected_c1 = 0i64;
    let mut expected_q = 0i64;
    let mut expected_alpha = OrbitSet::empty();
    let mut expected_beta = OrbitSet::empty();
    for comp in components {
        if comp.d == 0 {
            return Err(Error::NotPositive { what: "covering multiplicity d" });
        }
        let d = comp.d as i64;
        let class = comp.curve.class();
        expected_c1 += d * class.c1_rel();
        expected_q += d * d * class.q_self();
        expected_alpha = expected_alpha.add(&class.alpha().scale(comp.d)?)?;
        expected_beta = expected_beta.add(&class.beta().scale(comp.d)?)?;
        for (name, t) in class.offsets() {
            if combined.offset(name) != *t {
                return Err(Error::mismatch(format!(
                    "trivialization offsets for orbit {name} disagree with the combined class"
                )));
            }
        }
    }
    for (k, &((i, j), cross)) in cross_q.iter().enumerate() {
        if i >= j || j >= components.len() {
            return Err(Error::mismatch(format!(
                "cross-term ({i},{j}) does not name a pair of distinct components"
            )));
        }
        if cross_q[..k].iter().any(|((a, b), _)| (*a, *b) == (i, j)) {
            return Err(Error::mismatch(format!("duplicate cross-term ({i},{j})")));
        }
        expected_q += 2 * components[i].d as i64 * components[j].d as i64 * cross;
    }
    if combined.c1_rel() != expected_c1 {
        return Err(Error::mismatch(format!(
            "combined c1 = {} but the components give {expected_c1}",
            combined.c1_rel()
        )));
    }
    if combined.q_self() != expected_q {
        return Err(Error::mismatch(format!(
            "combined Q = {} but the bilinear expansion gives {expected_q}",
            combined.q_self()
        )));
    }
    if combined.alpha() != &expected_alpha || combined.beta() != &expected_beta {
        return Err(Error::mismatch(
            "combined orbit sets are not the multiplicity-weighted sums of the components",
        ));
    }
    let mut dims = Vec::new();
    let mut dims_assumed_extremal = Vec::new();
    let mut weighted = 0i64;
    for comp in components {
        let dim = match comp.dim {
            Some(d) => d,
            None => fredholm_dimension(&comp.curve)?,
        };
        dims.push(dim);
        dims_assumed_extremal.push(comp.dim.is_none());
        weighted += comp.d as i64 * dim;
    }
    let combined_index = combined.relative_index()?;
    let slack = combined_index - weighted;
    Ok(MccReport {
        weighted_dimension_sum: weighted,
        combined_index,
        slack,
        satisfied: slack >= 0,
        dims,
        dims_assumed_extremal,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct STranslationReport {
    /// Q + w + η − 2δ: the intersection count of the curve with a small
    /// s-translate of itself; negative values are impossible geometrically.
    pub slack: i64,
    pub satisfied: bool,
}

/// Q_τ(C) ≥ −w_τ(C) − η_τ(C) + 2δ(C) for a curve with supplied writhe and
/// no trivial cylinders; η_total is the total winding of all end braids.
pub fn s_translation_check(c: &CandidateCurve, eta_total: i64) -> Result<STranslationReport> {
    if c.has_trivial_cylinders() {
        return Err(Error::TrivialCylindersPresent);
    }
    let w = c.writhe_total().ok_or(Error::MissingWrithe)?;
    let slack = c.class().q_self() + w + eta_total - 2 * c.delta() as i64;
    Ok(STranslationReport { slack, satisfied: slack >= 0 })
}
