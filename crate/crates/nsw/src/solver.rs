//! Exact NSW maximization for integral p, and the rounding wrapper for
//! general rational p.
//!
//! The exact solver runs three phases: a leximax heavy-only allocation, a
//! greedy pass handing every remaining good to a minimum-utility agent, and a
//! rebalancing loop that moves a heavy good from a maximum-utility agent to a
//! minimum-utility agent while `u_max > p * u_min + p`.

use crate::binary::binary_max_nsw;
use crate::model::{
    nsw_product, utility_vector, Allocation, Instance, NswProduct, Rational, UtilityProfile,
};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("p = {0} is not integral; use approx_solve")]
    NonIntegralP(String),
    #[error("p = {0} is integral; no rounding needed")]
    IntegralP(String),
    #[error("solver invariant violated: {0}")]
    InternalInvariant(String),
}

/// One phase-3 reallocation: a good heavy for `from_agent` handed to
/// `to_agent`, for whom it is light.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub good: usize,
    pub from_agent: usize,
    pub to_agent: usize,
    pub product_before: NswProduct,
    pub product_after: NswProduct,
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub allocation: Allocation,
    pub nsw: NswProduct,
    pub phase3_moves: Vec<Move>,
    pub profile: UtilityProfile,
    /// False when m < n: every complete allocation has product zero and the
    /// optimality analysis does not apply.
    pub optimality_claimed: bool,
}

#[derive(Debug, Clone)]
pub struct ApproxResult {
    pub allocation: Allocation,
    /// max{floor(p)/p, p/ceil(p)}, exactly.
    pub factor: Rational,
    pub rounded_p: BigInt,
    /// Product under the true rational p.
    pub nsw: NswProduct,
    /// Phase-3 trace of the rounded run; products are under the rounded p.
    pub phase3_moves: Vec<Move>,
}

/// Phase 2: hands each unassigned good, in ascending good-id order, to the
/// highest-id agent among those of minimum utility.
pub fn greedy_light_phase(instance: &Instance, allocation: &Allocation) -> Allocation {
    let n = instance.agent_count();
    let mut result = allocation.clone();
    let mut utilities = utility_vector(instance, allocation)
        .expect("phase-1 output is valid")
        .values;
    for g in 0..instance.good_count() {
        if result.owner_of(g).is_some() {
            continue;
        }
        // scanning downwards with a strict comparison picks the max index
        // among the minimum-utility agents
        let mut pick = n - 1;
        for i in (0..n - 1).rev() {
            if utilities[i] < utilities[pick] {
                pick = i;
            }
        }
        let value = instance.value(pick, g);
        utilities[pick] += value;
        result.assign(g, pick);
    }
    result
}

/// The phase-3 agent numbering: fixed once at entry, ascending by
/// (utility, agent id).
pub fn phase3_numbering(instance: &Instance, allocation: &Allocation) -> Vec<usize> {
    let utilities = utility_vector(instance, allocation).expect("allocation valid").values;
    let mut order: Vec<usize> = (0..instance.agent_count()).collect();
    order.sort_by(|&a, &b| utilities[a].cmp(&utilities[b]).then(a.cmp(&b)));
    order
}

/// Phase 3: while `u_max > p * u_min + p`, move the lowest-id good of the
/// minimum-index maximum-utility agent to the maximum-index minimum-utility
/// agent. Indices refer to the numbering frozen at entry.
pub fn phase3_rebalance(
    instance: &Instance,
    allocation: &Allocation,
) -> Result<(Allocation, Vec<Move>), SolveError> {
    if !instance.is_integral() {
        return Err(SolveError::NonIntegralP(instance.p().to_string()));
    }
    let n = instance.agent_count();
    let p = instance.p().clone();
    let order = phase3_numbering(instance, allocation);
    let mut result = allocation.clone();
    let mut utilities = utility_vector(instance, allocation).expect("allocation valid").values;
    let mut bundles: Vec<Vec<usize>> = (0..n).map(|i| result.bundle_of(i)).collect();
    let mut moves = Vec::new();

    loop {
        let u_min = utilities[order[0]].clone();
        let u_max = utilities[order[n - 1]].clone();
        if u_max <= &p * &u_min + &p {
            break;
        }
        let k_rank = (0..n).rev().find(|&r| utilities[order[r]] == u_min).unwrap();
        let t_rank = (0..n).find(|&r| utilities[order[r]] == u_max).unwrap();
        let k = order[k_rank];
        let t = order[t_rank];
        let good = *bundles[t].first().ok_or_else(|| {
            SolveError::InternalInvariant(format!("maximum-utility agent {t} has an empty bundle"))
        })?;
        if !instance.is_heavy(t, good) {
            return Err(SolveError::InternalInvariant(format!(
                "moved good {good} is not heavy for source agent {t}"
            )));
        }
        if instance.is_heavy(k, good) {
            return Err(SolveError::InternalInvariant(format!(
                "moved good {good} is not light for target agent {k}"
            )));
        }
        let product_before = nsw_product(instance, &result).expect("valid");
        result.assign(good, k);
        bundles[t].retain(|&g| g != good);
        let pos = bundles[k].binary_search(&good).unwrap_err();
        bundles[k].insert(pos, good);
        utilities[t] -= &p;
        utilities[k] += Rational::one();
        let product_after = nsw_product(instance, &result).expect("valid");
        for w in order.windows(2) {
            if utilities[w[0]] > utilities[w[1]] {
                return Err(SolveError::InternalInvariant(format!(
                    "phase-3 ordering violated between agents {} and {}",
                    w[0], w[1]
                )));
            }
        }
        moves.push(Move { good, from_agent: t, to_agent: k, product_before, product_after });
    }
    Ok((result, moves))
}

/// The full exact solver for integral p. With p = 1 every edge is light and
/// phases 1 and 3 are skipped.
pub fn solve(instance: &Instance) -> Result<SolveResult, SolveError> {
    if !instance.is_integral() {
        return Err(SolveError::NonIntegralP(instance.p().to_string()));
    }
    let degenerate = instance.p().is_one();
    let phase1 = if degenerate {
        Allocation::empty(instance.good_count())
    } else {
        binary_max_nsw(instance)
    };
    let phase2 = greedy_light_phase(instance, &phase1);
    let (allocation, phase3_moves) =
        if degenerate { (phase2, Vec::new()) } else { phase3_rebalance(instance, &phase2)? };
    let nsw = nsw_product(instance, &allocation).expect("solver output valid");
    let profile = utility_vector(instance, &allocation).expect("solver output valid").profile();
    Ok(SolveResult {
        allocation,
        nsw,
        phase3_moves,
        profile,
        optimality_claimed: instance.good_count() >= instance.agent_count(),
    })
}

/// Rounds a non-integral p to whichever of floor(p), ceil(p) loses less,
/// returning the rounded value and the exact loss factor.
pub fn round_p(p: &Rational) -> Result<(BigInt, Rational), SolveError> {
    if p.denom().is_one() {
        return Err(SolveError::IntegralP(p.to_string()));
    }
    let floor = p.floor().to_integer();
    let ceil = &floor + BigInt::from(1);
    let down = Rational::from_integer(floor.clone()) / p;
    let up = p / Rational::from_integer(ceil.clone());
    if down >= up {
        Ok((floor, down))
    } else {
        Ok((ceil, up))
    }
}

/// Approximation for rational p: solve the rounded instance exactly, report
/// the allocation under the true p.
pub fn approx_solve(instance: &Instance) -> Result<ApproxResult, SolveError> {
    if instance.is_integral() {
        let result = solve(instance)?;
        return Ok(ApproxResult {
            allocation: result.allocation,
            factor: Rational::one(),
            rounded_p: instance.p().to_integer(),
            nsw: result.nsw,
            phase3_moves: result.phase3_moves,
        });
    }
    let (rounded, factor) = round_p(instance.p())?;
    // the factor never drops below 1/sqrt(2) for p > 1
    if instance.p() > &Rational::one() {
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert!(&factor * &factor >= half, "approximation factor below 1/sqrt(2)");
    }
    let rounded_instance = Instance::new(
        instance.agent_count(),
        instance.good_count(),
        Rational::from_integer(rounded.clone()),
        instance.heavy_edges(),
    )
    .expect("rounded instance mirrors a valid instance");
    let result = solve(&rounded_instance)?;
    let nsw = nsw_product(instance, &result.allocation).expect("valid under true p");
    Ok(ApproxResult {
        allocation: result.allocation,
        factor,
        rounded_p: rounded,
        nsw,
        phase3_moves: result.phase3_moves,
    })
}
