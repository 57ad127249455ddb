use num_traits::One;
use serde::Serialize;

use crate::arith::{factorize, serde_rational, Prime, Rational};
use crate::lucas::LucasParams;
use crate::semigroup::{EventuallyPeriodicSet, SemigroupDescriptor};

use super::{classify_local, ClassifyError, LocalResult};

/// The local semigroup at one prime of the denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactor {
    pub prime: Prime,
    pub r: i64,
    pub result: LocalResult,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlobalResult {
    #[serde(with = "serde_rational")]
    pub r: Rational,
    pub locals: Vec<LocalFactor>,
    pub set: EventuallyPeriodicSet,
    pub descriptor: SemigroupDescriptor,
}

/// `L(P, Q, R)`: the intersection of the local semigroups at
/// `p^{v_p(D)}` over the primes `p` of the reduced denominator `D` of `R`.
pub fn classify_global(params: &LucasParams, r: &Rational) -> Result<GlobalResult, ClassifyError> {
    let mut locals = Vec::new();
    let mut set = EventuallyPeriodicSet::naturals();
    if !r.denom().is_one() {
        for (p, e) in factorize(r.denom())?.factors() {
            let prime = Prime::new(p.clone())?;
            let result = classify_local(params, &prime, i64::from(*e))?;
            set = set.intersect(&result.set);
            locals.push(LocalFactor { prime, r: i64::from(*e), result });
        }
    }
    let descriptor = SemigroupDescriptor::from_periodic_set(&set)
        .expect("an intersection of semigroups is a semigroup");
    Ok(GlobalResult { r: r.clone(), locals, set, descriptor })
}
