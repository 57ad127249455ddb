use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::{EventuallyPeriodicSet, SemigroupError};

/// A numerical semigroup given by its members below the conductor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct NumericalCore {
    members: Vec<u64>,
    conductor: u64,
}

impl NumericalCore {
    /// The core `ℕ` (conductor 0, no listed members).
    pub fn naturals() -> Self {
        NumericalCore { members: Vec::new(), conductor: 0 }
    }

    /// Members below the conductor, ascending; includes 0 unless the core is `ℕ`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.members.binary_search(&n).is_ok()
    }

    /// `None` for `ℕ`.
    pub fn frobenius(&self) -> Option<u64> {
        self.conductor.checked_sub(1)
    }

    pub fn multiplicity(&self) -> u64 {
        self.members.get(1).copied().unwrap_or(self.conductor.max(1))
    }

    pub fn small_elements(&self) -> Vec<u64> {
        self.members.iter().copied().filter(|&n| n > 0).collect()
    }

    pub fn minimal_generators(&self) -> Vec<u64> {
        let nonzero: Vec<u64> =
            (1..self.conductor.max(1) + self.multiplicity()).filter(|&n| self.contains(n)).collect();
        nonzero
            .iter()
            .copied()
            .filter(|&n| !nonzero.iter().take_while(|&&a| 2 * a <= n).any(|&a| self.contains(n - a)))
            .collect()
    }

    pub fn is_lonely(&self, n: u64) -> bool {
        n > 0
            && self.frobenius().is_some_and(|g| n < g)
            && self.contains(n)
            && !self.contains(n - 1)
            && !self.contains(n + 1)
    }
}

/// Canonical form of a subsemigroup of `ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SemigroupDescriptor {
    Zero,
    All,
    /// `d · core` with `d = gcd` of the nonzero elements. `d = 1` never
    /// carries the core `ℕ` (that is `All`).
    Scaled { d: u64, core: NumericalCore },
}

/// Stable JSON shape of a descriptor.
///
/// For `Scaled` the listed members and the conductor are those of the set
/// itself, i.e. `d` times the core values. `{0}` reports conductor 1 and `ℕ`
/// conductor 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    pub kind: String,
    pub d: u64,
    pub members_below_conductor: Vec<u64>,
    pub conductor: u64,
    pub generators: Vec<u64>,
    pub frobenius: Option<u64>,
}

impl SemigroupDescriptor {
    /// `⟨gens⟩`. Zeros are ignored, so an all-zero input gives `{0}`.
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        if gens.is_empty() {
            return Err(SemigroupError::NoGenerators);
        }
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        if gens.is_empty() {
            return Ok(SemigroupDescriptor::Zero);
        }
        let d = gens.iter().fold(0, |acc, g| acc.gcd(g));
        for g in &mut gens {
            *g /= d;
        }
        gens.sort_unstable();
        gens.dedup();
        Ok(Self::scaled(d, core_from_reduced_generators(&gens)))
    }

    /// Checks that `set` contains 0 and is closed under addition.
    ///
    /// Closure is decided exactly by testing pairs below
    /// `threshold + period`; a failure reports the offending pair.
    pub fn from_periodic_set(set: &EventuallyPeriodicSet) -> Result<Self, SemigroupError> {
        if !set.contains(0) {
            return Err(SemigroupError::MissingZero);
        }
        let (t, pi) = (set.threshold(), set.period());
        let members = set.members_up_to(t + pi - 1);
        for (i, &a) in members.iter().enumerate() {
            if let Some(&b) = members[i..].iter().find(|&&b| !set.contains(a + b)) {
                return Err(SemigroupError::NotClosed { a, b });
            }
        }
        let d = set
            .members_up_to(t + 2 * pi)
            .into_iter()
            .fold(0u64, |acc, n| acc.gcd(&n));
        if d == 0 {
            return Ok(SemigroupDescriptor::Zero);
        }
        // Every multiple of d from t on is a member, so the core conductor is
        // at most ceil(t / d).
        let mut conductor = t.div_ceil(d);
        while conductor > 0 && set.contains(d * (conductor - 1)) {
            conductor -= 1;
        }
        let members = (0..conductor).filter(|&n| set.contains(d * n)).collect();
        Ok(Self::scaled(d, NumericalCore { members, conductor }))
    }

    fn scaled(d: u64, core: NumericalCore) -> Self {
        if d == 1 && core.conductor == 0 {
            SemigroupDescriptor::All
        } else {
            SemigroupDescriptor::Scaled { d, core }
        }
    }

    pub fn to_periodic_set(&self) -> EventuallyPeriodicSet {
        match self {
            SemigroupDescriptor::Zero => EventuallyPeriodicSet::zero(),
            SemigroupDescriptor::All => EventuallyPeriodicSet::naturals(),
            SemigroupDescriptor::Scaled { d, core } => {
                EventuallyPeriodicSet::new(core.conductor, 1, [0], core.members.iter().copied())
                    .expect("core members lie below the conductor")
                    .dilate(*d)
            }
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match self {
            SemigroupDescriptor::Zero => n == 0,
            SemigroupDescriptor::All => true,
            SemigroupDescriptor::Scaled { d, core } => n.is_multiple_of(*d) && core.contains(n / d),
        }
    }

    /// Content `d`: gcd of the nonzero elements, 0 for `{0}`.
    pub fn gcd(&self) -> u64 {
        match self {
            SemigroupDescriptor::Zero => 0,
            SemigroupDescriptor::All => 1,
            SemigroupDescriptor::Scaled { d, .. } => *d,
        }
    }

    /// Finite complement in `ℕ`.
    pub fn is_numerical(&self) -> bool {
        self.gcd() == 1
    }

    /// The numerical semigroup this set is a dilation of, if nonzero.
    pub fn core(&self) -> Option<NumericalCore> {
        match self {
            SemigroupDescriptor::Zero => None,
            SemigroupDescriptor::All => Some(NumericalCore::naturals()),
            SemigroupDescriptor::Scaled { core, .. } => Some(core.clone()),
        }
    }

    /// Least `c` with `[c, ∞) ⊆ S`, for numerical semigroups only.
    pub fn conductor(&self) -> Option<u64> {
        match self {
            SemigroupDescriptor::All => Some(0),
            SemigroupDescriptor::Scaled { d: 1, core } => Some(core.conductor),
            _ => None,
        }
    }

    pub fn frobenius(&self) -> Result<u64, SemigroupError> {
        match self {
            SemigroupDescriptor::Scaled { d: 1, core } => {
                core.frobenius().ok_or_else(|| SemigroupError::NoFrobenius(self.to_string()))
            }
            _ => Err(SemigroupError::NoFrobenius(self.to_string())),
        }
    }

    /// Nonzero members below the Frobenius number.
    pub fn small_elements(&self) -> Result<Vec<u64>, SemigroupError> {
        match self {
            SemigroupDescriptor::All => Ok(Vec::new()),
            SemigroupDescriptor::Scaled { d: 1, core } => Ok(core.small_elements()),
            _ => Err(SemigroupError::NotNumerical(self.to_string())),
        }
    }

    /// A small element whose neighbours are both missing.
    pub fn is_lonely(&self, n: u64) -> bool {
        match self {
            SemigroupDescriptor::Scaled { d: 1, core } => core.is_lonely(n),
            _ => false,
        }
    }

    pub fn minimal_generators(&self) -> Vec<u64> {
        match self {
            SemigroupDescriptor::Zero => Vec::new(),
            SemigroupDescriptor::All => vec![1],
            SemigroupDescriptor::Scaled { d, core } => {
                core.minimal_generators().into_iter().map(|g| g * d).collect()
            }
        }
    }

    /// Least nonzero element; `None` for `{0}`.
    pub fn multiplicity(&self) -> Option<u64> {
        match self {
            SemigroupDescriptor::Zero => None,
            SemigroupDescriptor::All => Some(1),
            SemigroupDescriptor::Scaled { d, core } => Some(d * core.multiplicity()),
        }
    }

    pub fn embedding_dimension(&self) -> usize {
        self.minimal_generators().len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.embedding_dimension() <= 1
    }

    /// `n, n+1 ∈ S` implies `n+2 ∈ S`.
    pub fn is_plus_plus_minus_avoiding(&self) -> bool {
        match self {
            SemigroupDescriptor::Scaled { d: 1, core } => (0..core.conductor)
                .all(|n| !(core.contains(n) && core.contains(n + 1)) || core.contains(n + 2)),
            // No two consecutive members, or no gaps at all.
            _ => true,
        }
    }

    pub fn json(&self) -> DescriptorJson {
        let (kind, d, members, conductor) = match self {
            SemigroupDescriptor::Zero => ("zero", 0, vec![0], 1),
            SemigroupDescriptor::All => ("all", 1, Vec::new(), 0),
            SemigroupDescriptor::Scaled { d, core } => (
                "scaled",
                *d,
                core.members.iter().map(|m| m * d).collect(),
                core.conductor * d,
            ),
        };
        DescriptorJson {
            kind: kind.to_owned(),
            d,
            members_below_conductor: members,
            conductor,
            generators: self.minimal_generators(),
            frobenius: self.frobenius().ok(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.json()).expect("descriptor JSON is always serializable")
    }
}

impl fmt::Display for SemigroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemigroupDescriptor::Zero => write!(f, "{{0}}"),
            SemigroupDescriptor::All => write!(f, "N"),
            SemigroupDescriptor::Scaled { .. } => {
                let gens: Vec<String> = self.minimal_generators().iter().map(u64::to_string).collect();
                write!(f, "<{}>", gens.join(","))
            }
        }
    }
}

impl Serialize for SemigroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.json().serialize(serializer)
    }
}

/// Numerical semigroup generated by `gens` (sorted, gcd 1). Fills membership
/// until a run of `min(gens)` consecutive members, after which everything is
/// a member.
fn core_from_reduced_generators(gens: &[u64]) -> NumericalCore {
    let m = gens[0] as usize;
    let mut member = vec![true];
    let mut run = 0usize;
    let mut n = 0usize;
    while run < m {
        n += 1;
        let hit = gens.iter().any(|&g| (g as usize) <= n && member[n - g as usize]);
        member.push(hit);
        run = if hit { run + 1 } else { 0 };
    }
    let conductor = (n + 1 - m) as u64;
    if conductor == 1 {
        return NumericalCore::naturals();
    }
    let members = (0..conductor).filter(|&k| member[k as usize]).collect();
    NumericalCore { members, conductor }
}
