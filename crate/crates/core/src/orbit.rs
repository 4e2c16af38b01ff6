//! Local models of nondegenerate periodic orbits: Conley–Zehnder indices of
//! all covers, Lefschetz signs, trivialization changes, and orbit reversal.

use std::fmt;

use crate::angle::AngleRep;
use crate::{Error, Result};

/// Classified linearized return map of an orbit. The elliptic angle and the
/// hyperbolic rotation count are expressed in a stored reference
/// trivialization; every index-bearing operation takes an explicit offset
/// from that reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrbitClass {
    Elliptic(AngleRep),
    Hyperbolic(i64),
}

impl OrbitClass {
    /// Conley–Zehnder index of the k-fold cover in the trivialization offset
    /// by t from the reference: 2⌊kθ⌋+1 for elliptic, k·n for hyperbolic,
    /// shifted by 2kt.
    pub fn cz_index(&self, k: u32, t: TrivOffset) -> Result<i64> {
        if k == 0 {
            return Err(Error::NotPositive { what: "cover multiplicity k" });
        }
        let k_i = k as i64;
        match self {
            OrbitClass::Elliptic(a) => Ok(2 * a.floor_mult(k)? + 1 + 2 * k_i * t.0),
            OrbitClass::Hyperbolic(n) => Ok(k_i * (n + 2 * t.0)),
        }
    }

    /// Σ_{k=1}^m cz_index(k, t).
    pub fn cz_sum(&self, m: u32, t: TrivOffset) -> Result<i64> {
        if m == 0 {
            return Err(Error::NotPositive { what: "multiplicity m" });
        }
        match self {
            OrbitClass::Elliptic(_) => {
                let mut total = 0i64;
                for k in 1..=m {
                    total += self.cz_index(k, t)?;
                }
                Ok(total)
            }
            OrbitClass::Hyperbolic(n) => {
                let m = m as i64;
                Ok((n + 2 * t.0) * m * (m + 1) / 2)
            }
        }
    }

    /// Sign of det(1 − dφ^p): +1 for elliptic and for hyperbolic with
    /// negative eigenvalues (odd rotation count), −1 for hyperbolic with
    /// positive eigenvalues (even rotation count).
    pub fn lefschetz_sign(&self) -> i8 {
        match self {
            OrbitClass::Elliptic(_) => 1,
            OrbitClass::Hyperbolic(n) => {
                if n % 2 == 0 {
                    -1
                } else {
                    1
                }
            }
        }
    }

    /// ε ∈ {0,1} with lefschetz_sign = (−1)^ε.
    pub fn epsilon(&self) -> u8 {
        if self.lefschetz_sign() == 1 {
            0
        } else {
            1
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, OrbitClass::Elliptic(_))
    }

    /// The same orbit traversed in the mapping torus of the inverse map:
    /// elliptic angle negated, hyperbolic rotation negated. Conley–Zehnder
    /// indices of all covers change sign.
    pub fn reverse(&self) -> OrbitClass {
        match self {
            OrbitClass::Elliptic(a) => OrbitClass::Elliptic(a.negate()),
            OrbitClass::Hyperbolic(n) => OrbitClass::Hyperbolic(-n),
        }
    }

    /// Largest cover multiplicity with a defined index (the angle guard);
    /// unbounded for hyperbolic orbits.
    pub fn guard(&self) -> Option<u32> {
        match self {
            OrbitClass::Elliptic(a) => Some(a.guard()),
            OrbitClass::Hyperbolic(_) => None,
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClass::Elliptic(a) => write!(f, "elliptic theta={a}"),
            OrbitClass::Hyperbolic(n) => write!(f, "hyperbolic rot={n}"),
        }
    }
}

/// Offset τ′ − τ_reference of a trivialization from the stored reference;
/// trivializations over an orbit form an affine space over the integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct TrivOffset(pub i64);

/// A periodic orbit: an embedded closed orbit of the suspension flow,
/// identified by name, with its period and local model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicOrbit {
    name: String,
    period: u32,
    class: OrbitClass,
}

impl PeriodicOrbit {
    pub fn new(name: impl Into<String>, period: u32, class: OrbitClass) -> Result<PeriodicOrbit> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::mismatch("orbit name must be nonempty"));
        }
        if period == 0 {
            return Err(Error::NotPositive { what: "orbit period" });
        }
        Ok(PeriodicOrbit { name, period, class })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    pub fn class(&self) -> &OrbitClass {
        &self.class
    }

    pub fn cz_index(&self, k: u32, t: TrivOffset) -> Result<i64> {
        self.class.cz_index(k, t)
    }

    pub fn cz_sum(&self, m: u32, t: TrivOffset) -> Result<i64> {
        self.class.cz_sum(m, t)
    }

    pub fn lefschetz_sign(&self) -> i8 {
        self.class.lefschetz_sign()
    }

    pub fn epsilon(&self) -> u8 {
        self.class.epsilon()
    }

    /// Reversed-flow companion orbit; callers pick the new name.
    pub fn reverse(&self, name: impl Into<String>) -> Result<PeriodicOrbit> {
        PeriodicOrbit::new(name, self.period, self.class.reverse())
    }
}
