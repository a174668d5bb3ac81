//! Brute-force ground truth at desk scale.
//!
//! Everything here is exhaustive enumeration over complete allocations (or
//! heavy-only allocations); its only virtue is obviousness. Enumeration is
//! refused beyond an explicit state budget.
//!
//! Instances where every complete allocation has product zero (m < n) are
//! ranked by the refined key (number of positive-utility agents, then the
//! product over the positive agents); the report flags this case via
//! `positive_agent_count < n`.

use crate::model::{
    nsw_product, utility_vector, Allocation, Instance, NswProduct, Rational, UtilityProfile,
};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;

pub const DEFAULT_STATE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("enumeration needs {required} states, over the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error("cardinality {requested} infeasible: only {max} heavy goods")]
    InfeasibleCardinality { requested: usize, max: usize },
}

/// Cap on the number of maximizers retained in a report.
pub const MAXIMIZER_CAP: usize = 1000;

#[derive(Debug, Clone)]
pub struct OracleReport {
    pub best_product: NswProduct,
    /// All maximizers up to `MAXIMIZER_CAP`; `maximizer_overflow` set if the
    /// cap was hit.
    pub best_allocations: Vec<Allocation>,
    pub maximizer_overflow: bool,
    /// Positive-utility agents in the best allocation; < n only when every
    /// complete allocation has product zero.
    pub positive_agent_count: usize,
    pub state_count: u64,
}

fn complete_state_count(n: usize, m: usize) -> Option<u128> {
    (n as u128).checked_pow(u32::try_from(m).ok()?)
}

fn check_complete_budget(instance: &Instance, max_states: u64) -> Result<u64, OracleError> {
    let required = complete_state_count(instance.agent_count(), instance.good_count())
        .unwrap_or(u128::MAX);
    if required > max_states as u128 {
        return Err(OracleError::BudgetExceeded { required, budget: max_states });
    }
    Ok(required as u64)
}

/// Visits every complete allocation exactly once, in lexicographic
/// owner-array order. Returns the number of states visited.
pub fn enumerate_complete<F: FnMut(&Allocation)>(
    instance: &Instance,
    max_states: u64,
    mut visitor: F,
) -> Result<u64, OracleError> {
    let states = check_complete_budget(instance, max_states)?;
    let n = instance.agent_count();
    let m = instance.good_count();
    let mut allocation = Allocation::from_owner(vec![Some(0); m]);
    loop {
        visitor(&allocation);
        // odometer: rightmost digit least significant
        let mut pos = m;
        loop {
            if pos == 0 {
                return Ok(states);
            }
            pos -= 1;
            let digit = allocation.owner_of(pos).unwrap();
            if digit + 1 < n {
                allocation.assign(pos, digit + 1);
                break;
            }
            allocation.assign(pos, 0);
        }
    }
}

/// p as a (numerator, denominator) pair of machine words, when it fits.
fn p_parts_u64(instance: &Instance) -> Option<(u64, u64)> {
    let numer = u64::try_from(instance.p().numer()).ok()?;
    let denom = u64::try_from(instance.p().denom()).ok()?;
    Some((numer, denom))
}

/// Key ordering allocations: more positive-utility agents first, then the
/// larger product over the positive agents. Coincides with the plain product
/// order whenever positive products are reachable.
#[derive(Debug, Clone, PartialEq, Eq)]
struct PositiveKey {
    positive: usize,
    small: Option<u128>,
    big: BigUint,
}

impl PositiveKey {
    fn from_numerators(values: &[u128]) -> Self {
        let mut positive = 0usize;
        let mut small: Option<u128> = Some(1);
        for &v in values {
            if v > 0 {
                positive += 1;
                small = small.and_then(|s| s.checked_mul(v));
            }
        }
        let big = match small {
            Some(s) => BigUint::from(s),
            None => values
                .iter()
                .filter(|&&v| v > 0)
                .fold(BigUint::one(), |acc, &v| acc * BigUint::from(v)),
        };
        PositiveKey { positive, small, big }
    }
}

impl Ord for PositiveKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.positive
            .cmp(&other.positive)
            .then_with(|| match (self.small, other.small) {
                (Some(a), Some(b)) => a.cmp(&b),
                _ => self.big.cmp(&other.big),
            })
    }
}

impl PartialOrd for PositiveKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Utility numerators over the common denominator denom(p): heavy goods add
/// numer(p), light goods add denom(p).
fn utility_numerators(
    instance: &Instance,
    allocation: &Allocation,
    a: u64,
    b: u64,
) -> Vec<u128> {
    let mut values = vec![0u128; instance.agent_count()];
    for (agent, good) in allocation.edges() {
        values[agent] += if instance.is_heavy(agent, good) { a as u128 } else { b as u128 };
    }
    values
}

/// Exhaustive exact maximum of the NSW product over complete allocations.
/// Complete allocations suffice: every good is worth at least 1 to everyone,
/// so assigning a leftover good never decreases the product.
pub fn brute_force_mnw(instance: &Instance, max_states: u64) -> Result<OracleReport, OracleError> {
    let states = check_complete_budget(instance, max_states)?;
    let (best_key, best_allocations, overflow) = match p_parts_u64(instance) {
        Some((a, b)) => mnw_fast(instance, a, b),
        None => mnw_generic(instance, max_states)?,
    };
    let best = &best_allocations[0];
    Ok(OracleReport {
        best_product: nsw_product(instance, best).expect("oracle allocations are valid"),
        positive_agent_count: best_key.positive,
        best_allocations,
        maximizer_overflow: overflow,
        state_count: states,
    })
}

fn mnw_fast(instance: &Instance, a: u64, b: u64) -> (PositiveKey, Vec<Allocation>, bool) {
    let n = instance.agent_count();
    let m = instance.good_count();
    let mut owner = vec![0usize; m];
    let mut values = vec![0u128; n];
    let mut best: Option<(PositiveKey, Vec<Allocation>, bool)> = None;

    // values of good g for each agent, precomputed
    let good_values: Vec<Vec<u128>> = (0..m)
        .map(|g| {
            (0..n)
                .map(|i| if instance.is_heavy(i, g) { a as u128 } else { b as u128 })
                .collect()
        })
        .collect();

    fn recurse(
        g: usize,
        m: usize,
        n: usize,
        owner: &mut Vec<usize>,
        values: &mut Vec<u128>,
        good_values: &[Vec<u128>],
        best: &mut Option<(PositiveKey, Vec<Allocation>, bool)>,
    ) {
        if g == m {
            let key = PositiveKey::from_numerators(values);
            match best {
                Some((bk, allocs, overflow)) => match key.cmp(bk) {
                    Ordering::Greater => {
                        *best = Some((
                            key,
                            vec![Allocation::from_owner(owner.iter().map(|&o| Some(o)).collect())],
                            false,
                        ));
                    }
                    Ordering::Equal => {
                        if allocs.len() < MAXIMIZER_CAP {
                            allocs.push(Allocation::from_owner(
                                owner.iter().map(|&o| Some(o)).collect(),
                            ));
                        } else {
                            *overflow = true;
                        }
                    }
                    Ordering::Less => {}
                },
                None => {
                    *best = Some((
                        key,
                        vec![Allocation::from_owner(owner.iter().map(|&o| Some(o)).collect())],
                        false,
                    ));
                }
            }
            return;
        }
        for i in 0..n {
            owner[g] = i;
            values[i] += good_values[g][i];
            recurse(g + 1, m, n, owner, values, good_values, best);
            values[i] -= good_values[g][i];
        }
    }

    recurse(0, m, n, &mut owner, &mut values, &good_values, &mut best);
    let (key, allocs, overflow) = best.expect("at least one complete allocation exists");
    (key, allocs, overflow)
}

/// Fallback for p too large for machine words: same search, exact rationals.
fn mnw_generic(
    instance: &Instance,
    max_states: u64,
) -> Result<(PositiveKey, Vec<Allocation>, bool), OracleError> {
    let mut best: Option<(usize, Rational, Vec<Allocation>, bool)> = None;
    enumerate_complete(instance, max_states, |allocation| {
        let utilities = utility_vector(instance, allocation).expect("enumerated allocations valid");
        let positive = utilities.values.iter().filter(|v| !v.is_zero()).count();
        let product: Rational = utilities
            .values
            .iter()
            .filter(|v| !v.is_zero())
            .fold(Rational::one(), |acc, v| acc * v);
        let ordering = match &best {
            Some((bp, bprod, _, _)) => (positive, &product).cmp(&(*bp, bprod)),
            None => Ordering::Greater,
        };
        match ordering {
            Ordering::Greater => best = Some((positive, product, vec![allocation.clone()], false)),
            Ordering::Equal => {
                let (_, _, allocs, overflow) = best.as_mut().unwrap();
                if allocs.len() < MAXIMIZER_CAP {
                    allocs.push(allocation.clone());
                } else {
                    *overflow = true;
                }
            }
            Ordering::Less => {}
        }
    })?;
    let (positive, _, allocs, overflow) = best.expect("at least one complete allocation exists");
    // the generic path only needs the positive count downstream
    Ok((
        PositiveKey { positive, small: Some(0), big: BigUint::zero() },
        allocs,
        overflow,
    ))
}

/// The unique leximax utility profile among heavy-only allocations with
/// exactly `cardinality` heavy edges.
pub fn brute_force_leximax_heavy(
    instance: &Instance,
    cardinality: usize,
    max_states: u64,
) -> Result<UtilityProfile, OracleError> {
    let heavy_goods: Vec<usize> =
        (0..instance.good_count()).filter(|&g| instance.is_heavy_good(g)).collect();
    if cardinality > heavy_goods.len() {
        return Err(OracleError::InfeasibleCardinality {
            requested: cardinality,
            max: heavy_goods.len(),
        });
    }
    check_heavy_budget(instance, &heavy_goods, max_states)?;
    let mut best: Option<Vec<usize>> = None;
    let mut degrees = vec![0usize; instance.agent_count()];
    heavy_recurse(instance, &heavy_goods, 0, 0, Some(cardinality), &mut degrees, &mut |c, degs| {
        debug_assert_eq!(c, cardinality);
        update_best_profile(&mut best, degs);
    });
    let counts = best.expect("cardinality is feasible");
    Ok(counts_profile(instance, &counts))
}

/// Leximax heavy profiles for every cardinality 0..=H in one sweep.
pub fn leximax_heavy_profiles(
    instance: &Instance,
    max_states: u64,
) -> Result<Vec<UtilityProfile>, OracleError> {
    let heavy_goods: Vec<usize> =
        (0..instance.good_count()).filter(|&g| instance.is_heavy_good(g)).collect();
    check_heavy_budget(instance, &heavy_goods, max_states)?;
    let mut best: Vec<Option<Vec<usize>>> = vec![None; heavy_goods.len() + 1];
    let mut degrees = vec![0usize; instance.agent_count()];
    heavy_recurse(instance, &heavy_goods, 0, 0, None, &mut degrees, &mut |c, degs| {
        update_best_profile(&mut best[c], degs);
    });
    Ok(best
        .into_iter()
        .map(|counts| counts_profile(instance, &counts.expect("every cardinality reachable")))
        .collect())
}

fn check_heavy_budget(
    instance: &Instance,
    heavy_goods: &[usize],
    max_states: u64,
) -> Result<(), OracleError> {
    let mut states: u128 = 1;
    for &g in heavy_goods {
        states = states.saturating_mul(instance.heavy_agents_of(g).len() as u128 + 1);
    }
    if states > max_states as u128 {
        return Err(OracleError::BudgetExceeded { required: states, budget: max_states });
    }
    Ok(())
}

fn heavy_recurse(
    instance: &Instance,
    heavy_goods: &[usize],
    idx: usize,
    assigned: usize,
    target: Option<usize>,
    degrees: &mut Vec<usize>,
    leaf: &mut impl FnMut(usize, &[usize]),
) {
    if let Some(c) = target {
        let remaining = heavy_goods.len() - idx;
        if assigned > c || assigned + remaining < c {
            return;
        }
    }
    if idx == heavy_goods.len() {
        leaf(assigned, degrees);
        return;
    }
    let g = heavy_goods[idx];
    // leave g unassigned
    heavy_recurse(instance, heavy_goods, idx + 1, assigned, target, degrees, leaf);
    for &a in instance.heavy_agents_of(g) {
        degrees[a] += 1;
        heavy_recurse(instance, heavy_goods, idx + 1, assigned + 1, target, degrees, leaf);
        degrees[a] -= 1;
    }
}

fn update_best_profile(best: &mut Option<Vec<usize>>, degrees: &[usize]) {
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    match best {
        Some(current) => {
            // ascending lexicographic: larger at the first difference wins
            if sorted > *current {
                *best = Some(sorted);
            }
        }
        None => *best = Some(sorted),
    }
}

fn counts_profile(instance: &Instance, counts: &[usize]) -> UtilityProfile {
    UtilityProfile {
        sorted: counts
            .iter()
            .map(|&c| instance.p() * Rational::from_integer(c.into()))
            .collect(),
    }
}

/// Searches for a complete allocation weakly better for everyone and strictly
/// better for someone. `None` certifies Pareto optimality of the input.
pub fn brute_force_pareto_dominated(
    instance: &Instance,
    allocation: &Allocation,
    max_states: u64,
) -> Result<Option<Allocation>, OracleError> {
    check_complete_budget(instance, max_states)?;
    if let Some((a, b)) = p_parts_u64(instance) {
        let target = utility_numerators(instance, allocation, a, b);
        let n = instance.agent_count();
        let m = instance.good_count();
        let good_values: Vec<Vec<u128>> = (0..m)
            .map(|g| {
                (0..n)
                    .map(|i| if instance.is_heavy(i, g) { a as u128 } else { b as u128 })
                    .collect()
            })
            .collect();
        let mut owner = vec![0usize; m];
        let mut values = vec![0u128; n];
        let found = pareto_recurse(0, m, n, &target, &mut owner, &mut values, &good_values);
        Ok(found)
    } else {
        let target = utility_vector(instance, allocation).expect("input allocation valid");
        let mut found = None;
        enumerate_complete(instance, max_states, |candidate| {
            if found.is_some() {
                return;
            }
            let u = utility_vector(instance, candidate).expect("enumerated allocations valid");
            let ge = u.values.iter().zip(&target.values).all(|(x, y)| x >= y);
            let gt = u.values.iter().zip(&target.values).any(|(x, y)| x > y);
            if ge && gt {
                found = Some(candidate.clone());
            }
        })?;
        Ok(found)
    }
}

fn pareto_recurse(
    g: usize,
    m: usize,
    n: usize,
    target: &[u128],
    owner: &mut Vec<usize>,
    values: &mut Vec<u128>,
    good_values: &[Vec<u128>],
) -> Option<Allocation> {
    if g == m {
        let ge = values.iter().zip(target).all(|(x, y)| x >= y);
        let gt = values.iter().zip(target).any(|(x, y)| x > y);
        if ge && gt {
            return Some(Allocation::from_owner(owner.iter().map(|&o| Some(o)).collect()));
        }
        return None;
    }
    for i in 0..n {
        owner[g] = i;
        values[i] += good_values[g][i];
        if let Some(found) = pareto_recurse(g + 1, m, n, target, owner, values, good_values) {
            return Some(found);
        }
        values[i] -= good_values[g][i];
    }
    None
}
