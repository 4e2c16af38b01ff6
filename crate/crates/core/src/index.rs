//! Orbit sets, relative homology class data, and the relative index I with
//! its structural laws: trivialization invariance, additivity under
//! composition, parity against the mod-2 grading, and the homology-class
//! ambiguity shift.

use std::collections::BTreeMap;
use std::fmt;

use crate::orbit::{PeriodicOrbit, TrivOffset};
use crate::{Error, Result};

/// A finite set of (orbit, multiplicity) pairs with distinct orbit names,
/// kept sorted by name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSet {
    entries: Vec<(PeriodicOrbit, u32)>,
}

impl OrbitSet {
    pub fn new(mut entries: Vec<(PeriodicOrbit, u32)>) -> Result<OrbitSet> {
        for (orbit, mult) in &entries {
            if *mult == 0 {
                return Err(Error::NotPositive { what: "orbit multiplicity" });
            }
            if entries.iter().filter(|(o, _)| o.name() == orbit.name()).count() > 1 {
                return Err(Error::DuplicateOrbit(orbit.name().to_string()));
            }
        }
        entries.sort_by(|a, b| a.0.name().cmp(b.0.name()));
        Ok(OrbitSet { entries })
    }

    pub fn empty() -> OrbitSet {
        OrbitSet { entries: Vec::new() }
    }

    pub fn iter(&self) -> impl Iterator<Item = &(PeriodicOrbit, u32)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, name: &str) -> Option<&(PeriodicOrbit, u32)> {
        self.entries.iter().find(|(o, _)| o.name() == name)
    }

    pub fn multiplicity(&self, name: &str) -> u32 {
        self.get(name).map_or(0, |(_, m)| *m)
    }

    /// Σ multiplicity · period.
    pub fn degree(&self) -> i64 {
        self.entries.iter().map(|(o, m)| o.period() as i64 * *m as i64).sum()
    }

    /// Every hyperbolic orbit has multiplicity 1.
    pub fn admissible(&self) -> bool {
        self.entries
            .iter()
            .all(|(o, m)| o.class().is_elliptic() || *m == 1)
    }

    /// Σ ε(orbit)·multiplicity mod 2: the mod-2 grading given by the product
    /// of the Lefschetz signs of all covers.
    pub fn grading_mod2(&self) -> u8 {
        let sum: u32 = self.entries.iter().map(|(o, m)| o.epsilon() as u32 * *m).sum();
        (sum % 2) as u8
    }

    /// Union with added multiplicities. A shared name must carry identical
    /// orbit data.
    pub fn add(&self, other: &OrbitSet) -> Result<OrbitSet> {
        let mut entries = self.entries.clone();
        for (orbit, mult) in &other.entries {
            match entries.iter_mut().find(|(o, _)| o.name() == orbit.name()) {
                Some((existing, m)) => {
                    if existing != orbit {
                        return Err(Error::mismatch(format!(
                            "orbit {} declared with conflicting data",
                            orbit.name()
                        )));
                    }
                    *m = m.checked_add(*mult).ok_or(Error::Overflow)?;
                }
                None => entries.push((orbit.clone(), *mult)),
            }
        }
        OrbitSet::new(entries)
    }

    /// All multiplicities scaled by d ≥ 1.
    pub fn scale(&self, d: u32) -> Result<OrbitSet> {
        if d == 0 {
            return Err(Error::NotPositive { what: "covering multiplicity d" });
        }
        let entries = self
            .entries
            .iter()
            .map(|(o, m)| Ok((o.clone(), m.checked_mul(d).ok_or(Error::Overflow)?)))
            .collect::<Result<_>>()?;
        OrbitSet::new(entries)
    }

    /// This set with `count` added to one orbit's multiplicity (inserting the
    /// orbit when absent).
    pub fn add_multiple(&self, orbit: &PeriodicOrbit, count: u32) -> Result<OrbitSet> {
        self.add(&OrbitSet::new(vec![(orbit.clone(), count)])?)
    }
}

impl fmt::Display for OrbitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (o, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({},{})", o.name(), m)?;
        }
        Ok(())
    }
}

/// The two homology pairings that separate relative classes with the same
/// ends: ⟨c₁(E), Z−Z′⟩ and (Z−Z′)·h.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassDelta {
    pub c1e_pairing: i64,
    pub h_pairing: i64,
}

/// An orbit-set pair with the class-dependent integers of the relative index:
/// the relative first Chern number c₁(E|_Z,τ), the relative self-intersection
/// Q_τ(Z,Z), and the trivialization offset per orbit (from each orbit's
/// stored reference).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeClassData {
    alpha: OrbitSet,
    beta: OrbitSet,
    c1_rel: i64,
    q_self: i64,
    triv: BTreeMap<String, TrivOffset>,
}

impl RelativeClassData {
    pub fn new(
        alpha: OrbitSet,
        beta: OrbitSet,
        c1_rel: i64,
        q_self: i64,
        triv: BTreeMap<String, TrivOffset>,
    ) -> Result<RelativeClassData> {
        let (da, db) = (alpha.degree(), beta.degree());
        if da != db {
            return Err(Error::DegreeMismatch { alpha: da, beta: db });
        }
        for name in triv.keys() {
            if alpha.get(name).is_none() && beta.get(name).is_none() {
                return Err(Error::mismatch(format!(
                    "trivialization offset for orbit {name} not in alpha or beta"
                )));
            }
        }
        for (orbit, _) in alpha.iter() {
            if let Some((other, _)) = beta.get(orbit.name()) {
                if other != orbit {
                    return Err(Error::mismatch(format!(
                        "orbit {} declared with conflicting data",
                        orbit.name()
                    )));
                }
            }
        }
        Ok(RelativeClassData { alpha, beta, c1_rel, q_self, triv })
    }

    pub fn alpha(&self) -> &OrbitSet {
        &self.alpha
    }

    pub fn beta(&self) -> &OrbitSet {
        &self.beta
    }

    pub fn c1_rel(&self) -> i64 {
        self.c1_rel
    }

    pub fn q_self(&self) -> i64 {
        self.q_self
    }

    pub fn offset(&self, orbit_name: &str) -> TrivOffset {
        self.triv.get(orbit_name).copied().unwrap_or_default()
    }

    pub fn offsets(&self) -> &BTreeMap<String, TrivOffset> {
        &self.triv
    }

    /// I(α,β;Z) = c₁ + Q + Σ_i Σ_{k≤m_i} μ(α_i^k) − Σ_j Σ_{k≤n_j} μ(β_j^k).
    pub fn relative_index(&self) -> Result<i64> {
        let mut total = self.c1_rel + self.q_self;
        for (orbit, mult) in self.alpha.iter() {
            total += orbit.cz_sum(*mult, self.offset(orbit.name()))?;
        }
        for (orbit, mult) in self.beta.iter() {
            total -= orbit.cz_sum(*mult, self.offset(orbit.name()))?;
        }
        Ok(total)
    }

    /// The same class expressed in new trivialization offsets. Orbits missing
    /// from the map keep their current offsets. c₁ and Q change by their
    /// transformation laws, so the relative index is unchanged.
    pub fn retrivialize(
        &self,
        new_triv: &BTreeMap<String, TrivOffset>,
    ) -> Result<RelativeClassData> {
        for name in new_triv.keys() {
            if self.alpha.get(name).is_none() && self.beta.get(name).is_none() {
                return Err(Error::mismatch(format!(
                    "trivialization offset for orbit {name} not in alpha or beta"
                )));
            }
        }
        let mut merged = self.triv.clone();
        for (name, t) in new_triv {
            merged.insert(name.clone(), *t);
        }
        let delta = |name: &str| -> i64 {
            // Δ = t_old − t_new, the usual τ − τ′ of the change formulas.
            self.offset(name).0 - new_triv.get(name).copied().unwrap_or(self.offset(name)).0
        };
        let mut c1 = self.c1_rel;
        let mut q = self.q_self;
        for (orbit, mult) in self.alpha.iter() {
            let (m, d) = (*mult as i64, delta(orbit.name()));
            c1 += m * d;
            q += m * m * d;
        }
        for (orbit, mult) in self.beta.iter() {
            let (n, d) = (*mult as i64, delta(orbit.name()));
            c1 -= n * d;
            q -= n * n * d;
        }
        RelativeClassData::new(self.alpha.clone(), self.beta.clone(), c1, q, merged)
    }

    /// Glue along a matching middle orbit set: requires self.beta =
    /// other.alpha including trivialization offsets, and consistent offsets on
    /// every orbit the two classes share. c₁, Q and the relative index add.
    pub fn compose(&self, other: &RelativeClassData) -> Result<RelativeClassData> {
        if self.beta != other.alpha {
            return Err(Error::mismatch(
                "compose requires the first class's beta to equal the second's alpha",
            ));
        }
        // Effective offsets, defaulted zeros included, must agree on every
        // orbit both classes know; the middle set is always shared.
        for (orbit, _) in other.alpha.iter().chain(other.beta.iter()) {
            let name = orbit.name();
            let known_to_self =
                self.alpha.get(name).is_some() || self.beta.get(name).is_some();
            if known_to_self && self.offset(name) != other.offset(name) {
                return Err(Error::mismatch(format!(
                    "trivialization offsets for orbit {name} disagree between the classes"
                )));
            }
        }
        let mut merged: BTreeMap<String, TrivOffset> = BTreeMap::new();
        for source in [&self.triv, &other.triv] {
            for (name, t) in source {
                merged.insert(name.clone(), *t);
            }
        }
        merged.retain(|name, _| {
            self.alpha.get(name).is_some() || other.beta.get(name).is_some()
        });
        RelativeClassData::new(
            self.alpha.clone(),
            other.beta.clone(),
            self.c1_rel + other.c1_rel,
            self.q_self + other.q_self,
            merged,
        )
    }

    /// Change of relative homology class: I moves by ⟨c₁(E),Z−Z′⟩ + 2(Z−Z′)·h.
    pub fn shift_class(&self, delta: ClassDelta) -> RelativeClassData {
        RelativeClassData {
            c1_rel: self.c1_rel + delta.c1e_pairing,
            q_self: self.q_self + 2 * delta.h_pairing,
            ..self.clone()
        }
    }

    /// Realizability parity of the supplied class integers:
    /// c₁ + Q ≡ Σm_i − Σn_j (mod 2). A mismatch is a data diagnostic, not an
    /// arithmetic error.
    pub fn parity_consistent(&self) -> bool {
        let m: i64 = self.alpha.iter().map(|(_, m)| *m as i64).sum();
        let n: i64 = self.beta.iter().map(|(_, m)| *m as i64).sum();
        (self.c1_rel + self.q_self - (m - n)) % 2 == 0
    }

    /// I ≡ grading(α) − grading(β) (mod 2). Defined for admissible orbit
    /// sets, where the mod-2 grading is the product of Lefschetz signs.
    pub fn parity_check(&self) -> Result<bool> {
        if !self.alpha.admissible() || !self.beta.admissible() {
            return Err(Error::NotAdmissible);
        }
        let i = self.relative_index()?;
        let diff = self.alpha.grading_mod2() as i64 - self.beta.grading_mod2() as i64;
        Ok((i - diff).rem_euclid(2) == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::{AngleRep, Side};
    use crate::orbit::OrbitClass;
    use proptest::prelude::*;

    fn elliptic(name: &str) -> PeriodicOrbit {
        let a = AngleRep::new(2, 5, Side::Above, 8).unwrap();
        PeriodicOrbit::new(name, 1, OrbitClass::Elliptic(a)).unwrap()
    }

    fn hyperbolic(name: &str, rot: i64) -> PeriodicOrbit {
        PeriodicOrbit::new(name, 1, OrbitClass::Hyperbolic(rot)).unwrap()
    }

    fn set(entries: Vec<(PeriodicOrbit, u32)>) -> OrbitSet {
        OrbitSet::new(entries).unwrap()
    }

    fn class(alpha: OrbitSet, beta: OrbitSet, c1: i64, q: i64) -> RelativeClassData {
        RelativeClassData::new(alpha, beta, c1, q, BTreeMap::new()).unwrap()
    }

    #[test]
    fn orbit_set_basics() {
        let s = set(vec![(elliptic("e"), 2), (hyperbolic("h", 1), 1)]);
        assert_eq!(s.degree(), 3);
        assert!(s.admissible());
        let s2 = set(vec![(hyperbolic("h", 0), 2)]);
        assert!(!s2.admissible());
        assert!(OrbitSet::new(vec![(elliptic("e"), 1), (elliptic("e"), 1)]).is_err());
        assert_eq!(s.add(&s2).unwrap_err(), Error::mismatch("orbit h declared with conflicting data"));
        assert_eq!(s.scale(2).unwrap().multiplicity("e"), 4);
    }

    #[test]
    fn relative_index_examples() {
        let e = elliptic("e");
        let identity = class(set(vec![(e.clone(), 2)]), set(vec![(e.clone(), 2)]), 0, 0);
        assert_eq!(identity.relative_index().unwrap(), 0);

        let h = hyperbolic("h", 1);
        let d = class(set(vec![(e.clone(), 2)]), set(vec![(h.clone(), 2)]), 0, 2);
        assert_eq!(d.relative_index().unwrap(), 1);

        let hp = hyperbolic("hp", 0);
        let d2 = class(set(vec![(e, 1)]), set(vec![(hp, 1)]), 0, 0);
        assert_eq!(d2.relative_index().unwrap(), 1);
    }

    #[test]
    fn degree_mismatch_rejected() {
        let e = elliptic("e");
        let h = hyperbolic("h", 1);
        let err = RelativeClassData::new(
            OrbitSet::new(vec![(e, 2)]).unwrap(),
            OrbitSet::new(vec![(h, 3)]).unwrap(),
            0,
            0,
            BTreeMap::new(),
        )
        .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { alpha: 2, beta: 3 });
    }

    #[test]
    fn retrivialize_alpha_orbit() {
        let e = elliptic("e");
        let h = hyperbolic("h", 1);
        let d = class(set(vec![(e, 2)]), set(vec![(h, 2)]), 0, 2);
        let i0 = d.relative_index().unwrap();
        // New offset −1 on e means Δ = 0 − (−1) = 1.
        let new: BTreeMap<String, TrivOffset> = [("e".to_string(), TrivOffset(-1))].into();
        let d2 = d.retrivialize(&new).unwrap();
        assert_eq!(d2.c1_rel(), 2);
        assert_eq!(d2.q_self(), 2 + 4);
        assert_eq!(d2.relative_index().unwrap(), i0);
        assert_eq!(d.retrivialize(&BTreeMap::new()).unwrap(), d);
    }

    #[test]
    fn retrivialize_beta_orbit() {
        let e = elliptic("e");
        let hp = hyperbolic("hp", 0);
        let d = class(set(vec![(e, 1)]), set(vec![(hp.clone(), 1)]), 0, 0);
        // Offset +1 on the beta orbit: Δ = −1, so c1 += 1, q += 1 and the
        // subtracted CZ sum grows by 2.
        let new: BTreeMap<String, TrivOffset> = [("hp".to_string(), TrivOffset(1))].into();
        let d2 = d.retrivialize(&new).unwrap();
        assert_eq!(d2.c1_rel(), 1);
        assert_eq!(d2.q_self(), 1);
        assert_eq!(hp.cz_sum(1, TrivOffset(1)).unwrap(), 2);
        assert_eq!(d2.relative_index().unwrap(), d.relative_index().unwrap());
    }

    #[test]
    fn compose_adds_indices() {
        let e = elliptic("e");
        let h = hyperbolic("h", 1);
        let hp = hyperbolic("hp", 0);
        let d1 = class(set(vec![(e.clone(), 2)]), set(vec![(h.clone(), 2)]), 0, 2);
        let middle = set(vec![(h.clone(), 2)]);
        let d2 = class(middle, set(vec![(hp.clone(), 2)]), 1, 0);
        let c = d1.compose(&d2).unwrap();
        assert_eq!(
            c.relative_index().unwrap(),
            d1.relative_index().unwrap() + d2.relative_index().unwrap()
        );
        assert_eq!(c.c1_rel(), 1);
        assert_eq!(c.q_self(), 2);

        let ident = class(set(vec![(h.clone(), 2)]), set(vec![(h.clone(), 2)]), 0, 0);
        let same = d1.compose(&ident).unwrap();
        assert_eq!(same.c1_rel(), d1.c1_rel());
        assert_eq!(same.q_self(), d1.q_self());
        assert_eq!(same.relative_index().unwrap(), d1.relative_index().unwrap());

        let back = class(set(vec![(h, 2)]), set(vec![(e, 2)]), 0, -2);
        let round = d1.compose(&back).unwrap();
        assert_eq!(round.relative_index().unwrap(), 0);
    }

    #[test]
    fn compose_rejects_mismatches() {
        let e = elliptic("e");
        let h = hyperbolic("h", 1);
        let d1 = class(set(vec![(e.clone(), 2)]), set(vec![(h.clone(), 2)]), 0, 2);
        let d_bad = class(set(vec![(h.clone(), 1), (e.clone(), 1)]), set(vec![(e.clone(), 2)]), 0, 0);
        assert!(d1.compose(&d_bad).is_err());

        let mut triv = BTreeMap::new();
        triv.insert("h".to_string(), TrivOffset(1));
        let d2 = RelativeClassData::new(
            set(vec![(h.clone(), 2)]),
            set(vec![(e, 2)]),
            0,
            0,
            triv,
        )
        .unwrap();
        assert!(d1.compose(&d2).is_err());
    }

    #[test]
    fn shift_class_examples() {
        let e = elliptic("e");
        let h = hyperbolic("h", 1);
        let d = class(set(vec![(e, 2)]), set(vec![(h, 2)]), 0, 2);
        let i0 = d.relative_index().unwrap();
        assert_eq!(d.shift_class(ClassDelta::default()), d);
        let up = d.shift_class(ClassDelta { c1e_pairing: 3, h_pairing: 1 });
        assert_eq!(up.relative_index().unwrap(), i0 + 5);
        let torsion = d.shift_class(ClassDelta { c1e_pairing: -2, h_pairing: 1 });
        assert_eq!(torsion.relative_index().unwrap(), i0);
    }

    #[test]
    fn grading_and_parity() {
        let e = elliptic("e");
        let hp = hyperbolic("hp", 0);
        assert_eq!(set(vec![(e.clone(), 3)]).grading_mod2(), 0);
        assert_eq!(set(vec![(hp.clone(), 1), (e.clone(), 2)]).grading_mod2(), 1);

        let d = class(set(vec![(e.clone(), 1)]), set(vec![(hp.clone(), 1)]), 0, 0);
        assert!(d.parity_check().unwrap());
        assert!(d.parity_consistent());

        let bad = class(set(vec![(e.clone(), 1)]), set(vec![(hp.clone(), 1)]), 1, 0);
        assert!(!bad.parity_consistent());
        assert!(!bad.parity_check().unwrap());

        let non_adm = class(set(vec![(hp.clone(), 2)]), set(vec![(hp, 2)]), 0, 0);
        assert_eq!(non_adm.parity_check(), Err(Error::NotAdmissible));
        let _ = e;
    }

    prop_compose! {
        fn arb_offsets(names: Vec<String>)(vals in proptest::collection::vec(-4i64..=4, names.len()))
            -> BTreeMap<String, TrivOffset> {
            names.iter().cloned().zip(vals.into_iter().map(TrivOffset)).collect()
        }
    }

    proptest! {
        #[test]
        fn retrivialization_never_moves_the_index(
            c1 in -10i64..=10,
            q in -10i64..=10,
            me in 1u32..=4,
            mh in 1u32..=6,
            offs in arb_offsets(vec!["e".into(), "h".into()]),
        ) {
            let e = elliptic("e");
            let h = PeriodicOrbit::new("h", me, OrbitClass::Hyperbolic(1)).unwrap();
            // Match degrees: e has period 1.
            let d = class(set(vec![(e, me * mh)]), set(vec![(h, mh)]), c1, q);
            prop_assume!(me * mh <= 8);
            let before = d.relative_index().unwrap();
            let d2 = d.retrivialize(&offs).unwrap();
            prop_assert_eq!(d2.relative_index().unwrap(), before);
            // Round-trip back to the original offsets restores c1 and Q.
            let zero: BTreeMap<String, TrivOffset> =
                offs.keys().map(|k| (k.clone(), TrivOffset(0))).collect();
            let d3 = d2.retrivialize(&zero).unwrap();
            prop_assert_eq!(d3.c1_rel(), d.c1_rel());
            prop_assert_eq!(d3.q_self(), d.q_self());
        }
    }
}
