//! Fairness and structural property checkers: EF1/EFX, oracle-backed Pareto
//! optimality, symmetric-difference decomposition of heavy-only allocations,
//! and replay checks for the rebalancing phase of the exact solver.

use crate::model::{
    heavy_degrees, heavy_part, nsw_product, utility_vector, Allocation, Instance, ModelError,
    Rational,
};
use crate::oracle::{brute_force_leximax_heavy, brute_force_pareto_dominated, OracleError};
use crate::solver::Move;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A violating pair: `envious` prefers `envied`'s bundle even after the
/// permitted removal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnvyWitness {
    pub envious: usize,
    pub envied: usize,
}

/// EF1: for all i, j there is some good in A_j whose removal kills i's envy.
/// Returns a witness pair if the property fails.
pub fn is_ef1(instance: &Instance, allocation: &Allocation) -> Option<EnvyWitness> {
    envy_witness(instance, allocation, true)
}

/// EFX: removing *any* good from A_j must kill i's envy, i.e. even removing
/// the good i values least is enough.
pub fn is_efx(instance: &Instance, allocation: &Allocation) -> Option<EnvyWitness> {
    envy_witness(instance, allocation, false)
}

fn envy_witness(instance: &Instance, allocation: &Allocation, drop_max: bool) -> Option<EnvyWitness> {
    let n = instance.agent_count();
    let bundles: Vec<Vec<usize>> = (0..n).map(|i| allocation.bundle_of(i)).collect();
    for i in 0..n {
        let own: Rational = bundles[i].iter().map(|&g| instance.value(i, g)).sum();
        for (j, bundle) in bundles.iter().enumerate() {
            if i == j || bundle.is_empty() {
                continue;
            }
            let mut other = Rational::zero();
            let mut dropped: Option<Rational> = None;
            for &g in bundle {
                let v = instance.value(i, g);
                let better = match &dropped {
                    None => true,
                    Some(d) => {
                        if drop_max {
                            v > *d
                        } else {
                            v < *d
                        }
                    }
                };
                if better {
                    dropped = Some(v.clone());
                }
                other += v;
            }
            if own < other - dropped.expect("bundle nonempty") {
                return Some(EnvyWitness { envious: i, envied: j });
            }
        }
    }
    None
}

/// Oracle-backed Pareto optimality over complete allocations. `Ok(None)`
/// certifies the property; `Ok(Some(b))` returns a dominating allocation.
pub fn is_pareto_optimal(
    instance: &Instance,
    allocation: &Allocation,
    max_states: u64,
) -> Result<Option<Allocation>, OracleError> {
    brute_force_pareto_dominated(instance, allocation, max_states)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffSide {
    A,
    B,
}

/// One edge of the symmetric difference A ⊕ B, tagged with the allocation it
/// came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiffEdge {
    pub agent: usize,
    pub good: usize,
    pub side: DiffSide,
}

/// A path or cycle of the difference graph; consecutive edges share a vertex
/// and alternate sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffComponent {
    pub edges: Vec<DiffEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub paths: Vec<DiffComponent>,
    pub cycles: Vec<DiffComponent>,
}

/// Decomposes the symmetric difference of two heavy-only allocations into
/// edge-disjoint alternating paths and cycles covering every difference edge.
///
/// An agent incident to `a` edges from A and `b` edges from B is a path
/// endpoint |a - b| times; goods present in only one allocation are path
/// endpoints too. The construction is deterministic: edges sort by
/// (agent, good, side) and pairings take ascending goods on both sides.
pub fn decompose_difference(
    instance: &Instance,
    a: &Allocation,
    b: &Allocation,
) -> Result<Decomposition, ModelError> {
    for (alloc, _) in [(a, DiffSide::A), (b, DiffSide::B)] {
        alloc.validate(instance)?;
        for (agent, good) in alloc.edges() {
            if !instance.is_heavy(agent, good) {
                return Err(ModelError::NotHeavyOnly(good));
            }
        }
    }
    if a.good_count() != b.good_count() {
        return Err(ModelError::GoodCountMismatch(a.good_count(), b.good_count()));
    }

    let mut edges: Vec<DiffEdge> = Vec::new();
    for g in 0..a.good_count() {
        let oa = a.owner_of(g);
        let ob = b.owner_of(g);
        if oa == ob {
            continue;
        }
        if let Some(agent) = oa {
            edges.push(DiffEdge { agent, good: g, side: DiffSide::A });
        }
        if let Some(agent) = ob {
            edges.push(DiffEdge { agent, good: g, side: DiffSide::B });
        }
    }
    edges.sort_by_key(|e| (e.agent, e.good, e.side == DiffSide::B));

    let k = edges.len();
    // partner through a good: the other difference edge on the same good
    let mut good_partner: Vec<Option<usize>> = vec![None; k];
    let mut by_good: Vec<Option<usize>> = vec![None; a.good_count()];
    for (idx, e) in edges.iter().enumerate() {
        match by_good[e.good] {
            None => by_good[e.good] = Some(idx),
            Some(other) => {
                good_partner[idx] = Some(other);
                good_partner[other] = Some(idx);
            }
        }
    }
    // partner through an agent: pair the agent's A edges with its B edges,
    // both taken in ascending good order; leftovers are path ends
    let mut agent_partner: Vec<Option<usize>> = vec![None; k];
    for agent in 0..instance.agent_count() {
        let side_a: Vec<usize> = (0..k)
            .filter(|&i| edges[i].agent == agent && edges[i].side == DiffSide::A)
            .collect();
        let side_b: Vec<usize> = (0..k)
            .filter(|&i| edges[i].agent == agent && edges[i].side == DiffSide::B)
            .collect();
        for (&x, &y) in side_a.iter().zip(side_b.iter()) {
            agent_partner[x] = Some(y);
            agent_partner[y] = Some(x);
        }
    }

    let mut used = vec![false; k];
    let mut paths = Vec::new();
    let mut cycles = Vec::new();

    // walk a maximal trail starting at edge `start`, entering from the end
    // where `from_agent` says whether the free end is the agent side
    let walk = |start: usize, from_agent: bool, used: &mut Vec<bool>| -> Vec<DiffEdge> {
        let mut trail = Vec::new();
        let mut current = start;
        let mut entered_at_agent = from_agent;
        loop {
            used[current] = true;
            trail.push(edges[current]);
            // exit through the opposite end; the next edge is entered at the
            // vertex the two edges share
            let (next, next_entered_at_agent) = if entered_at_agent {
                (good_partner[current], false)
            } else {
                (agent_partner[current], true)
            };
            match next {
                Some(e) if !used[e] => {
                    entered_at_agent = next_entered_at_agent;
                    current = e;
                }
                _ => break,
            }
        }
        trail
    };

    // paths start at edges with a free end; ascending edge order fixes the
    // output order
    for start in 0..k {
        if used[start] {
            continue;
        }
        if agent_partner[start].is_none() {
            paths.push(DiffComponent { edges: walk(start, true, &mut used) });
        } else if good_partner[start].is_none() {
            paths.push(DiffComponent { edges: walk(start, false, &mut used) });
        }
    }
    // everything left closes into cycles
    for start in 0..k {
        if !used[start] {
            cycles.push(DiffComponent { edges: walk(start, true, &mut used) });
        }
    }
    Ok(Decomposition { paths, cycles })
}

/// Violations found when replaying one phase-3 move against its snapshots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Phase3Violation {
    SnapshotsInconsistent(String),
    OrderingViolated { lower: usize, upper: usize },
    LightBundleAboveMinPlusOne { agent: usize },
    MovedGoodNotHeavyForSource,
    MovedGoodNotLightForTarget,
    SourceBundleHadLightGood { good: usize },
    HeavyCardinalityNotDecremented { before: usize, after: usize },
    ProductNotImproved,
    MoveProductMismatch,
    HeavyPartNotLeximax,
}

impl fmt::Display for Phase3Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase3Violation::SnapshotsInconsistent(msg) => {
                write!(f, "before/after snapshots inconsistent with the move: {msg}")
            }
            Phase3Violation::OrderingViolated { lower, upper } => {
                write!(f, "fixed ordering violated between agents {lower} and {upper}")
            }
            Phase3Violation::LightBundleAboveMinPlusOne { agent } => {
                write!(f, "agent {agent} holds a light good above u_min + 1")
            }
            Phase3Violation::MovedGoodNotHeavyForSource => {
                write!(f, "moved good is not heavy for the source agent")
            }
            Phase3Violation::MovedGoodNotLightForTarget => {
                write!(f, "moved good is not light for the target agent")
            }
            Phase3Violation::SourceBundleHadLightGood { good } => {
                write!(f, "source bundle contained light good {good} before the move")
            }
            Phase3Violation::HeavyCardinalityNotDecremented { before, after } => {
                write!(f, "heavy cardinality went {before} -> {after}, expected -1")
            }
            Phase3Violation::ProductNotImproved => {
                write!(f, "move did not strictly improve welfare")
            }
            Phase3Violation::MoveProductMismatch => {
                write!(f, "recorded products disagree with the snapshots")
            }
            Phase3Violation::HeavyPartNotLeximax => {
                write!(f, "heavy part is not leximax at its cardinality")
            }
        }
    }
}

/// Refined welfare key: number of positive-utility agents first, then the
/// product over just those agents. Strictly finer than the plain product when
/// some utilities are zero.
pub fn positive_welfare_key(instance: &Instance, allocation: &Allocation) -> (usize, Rational) {
    let utilities = utility_vector(instance, allocation).expect("allocation valid").values;
    let mut positive = 0usize;
    let mut product = Rational::one();
    for v in &utilities {
        if v.is_positive() {
            positive += 1;
            product *= v;
        }
    }
    (positive, product)
}

/// Replays one phase-3 move: checks snapshot consistency, the frozen
/// ordering, the light-good cap, the heavy/light labels of the moved good,
/// the heavy-cardinality decrement, and strict welfare improvement. When
/// `oracle_budget` is given the after-snapshot's heavy part is also compared
/// against the leximax oracle at its cardinality.
pub fn check_phase3_invariants(
    instance: &Instance,
    order: &[usize],
    before: &Allocation,
    mv: &Move,
    after: &Allocation,
    oracle_budget: Option<u64>,
) -> Vec<Phase3Violation> {
    let mut violations = Vec::new();
    let n = instance.agent_count();

    if before.owner_of(mv.good) != Some(mv.from_agent) {
        violations.push(Phase3Violation::SnapshotsInconsistent(format!(
            "good {} not owned by agent {} before the move",
            mv.good, mv.from_agent
        )));
    }
    if after.owner_of(mv.good) != Some(mv.to_agent) {
        violations.push(Phase3Violation::SnapshotsInconsistent(format!(
            "good {} not owned by agent {} after the move",
            mv.good, mv.to_agent
        )));
    }
    for g in 0..before.good_count() {
        if g != mv.good && before.owner_of(g) != after.owner_of(g) {
            violations.push(Phase3Violation::SnapshotsInconsistent(format!(
                "good {g} changed owner but is not the moved good"
            )));
            break;
        }
    }

    if !instance.is_heavy(mv.from_agent, mv.good) {
        violations.push(Phase3Violation::MovedGoodNotHeavyForSource);
    }
    if instance.is_heavy(mv.to_agent, mv.good) {
        violations.push(Phase3Violation::MovedGoodNotLightForTarget);
    }
    if let Some(&g) = before
        .bundle_of(mv.from_agent)
        .iter()
        .find(|&&g| !instance.is_heavy(mv.from_agent, g))
    {
        violations.push(Phase3Violation::SourceBundleHadLightGood { good: g });
    }

    let heavy_before: usize = heavy_degrees(instance, before).iter().sum();
    let heavy_after: usize = heavy_degrees(instance, after).iter().sum();
    if heavy_after + 1 != heavy_before {
        violations.push(Phase3Violation::HeavyCardinalityNotDecremented {
            before: heavy_before,
            after: heavy_after,
        });
    }

    let utilities = utility_vector(instance, after).expect("after snapshot valid").values;
    if order.len() == n {
        for w in order.windows(2) {
            if utilities[w[0]] > utilities[w[1]] {
                violations.push(Phase3Violation::OrderingViolated { lower: w[0], upper: w[1] });
                break;
            }
        }
    }
    if let Some(u_min) = utilities.iter().min() {
        let cap = u_min + Rational::one();
        for (i, u) in utilities.iter().enumerate() {
            let has_light = after.bundle_of(i).iter().any(|&g| !instance.is_heavy(i, g));
            if has_light && *u > cap {
                violations.push(Phase3Violation::LightBundleAboveMinPlusOne { agent: i });
            }
        }
    }

    let key_before = positive_welfare_key(instance, before);
    let key_after = positive_welfare_key(instance, after);
    if key_after <= key_before {
        violations.push(Phase3Violation::ProductNotImproved);
    }
    let product_before = nsw_product(instance, before).expect("valid");
    let product_after = nsw_product(instance, after).expect("valid");
    if product_before != mv.product_before || product_after != mv.product_after {
        violations.push(Phase3Violation::MoveProductMismatch);
    }

    if let Some(budget) = oracle_budget {
        if let Ok(h) = heavy_part(instance, after) {
            let cardinality = h.assigned_count();
            if let Ok(best) = brute_force_leximax_heavy(instance, cardinality, budget) {
                let profile =
                    utility_vector(instance, &h).expect("heavy part valid").profile();
                if profile != best {
                    violations.push(Phase3Violation::HeavyPartNotLeximax);
                }
            }
        }
    }
    violations
}
