//! Instance and allocation data model shared by the solvers, the oracle and
//! the property checkers.
//!
//! An instance is a bipartite utility graph: `n` agents, `m` goods, and a set
//! of heavy edges. A good on a heavy edge is worth `p` to that agent, every
//! other (agent, good) pair is worth 1. Allocations are multi-matchings:
//! every good has at most one owner, agents may own arbitrarily many goods.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("agent id {0} out of range (n = {1})")]
    AgentOutOfRange(usize, usize),
    #[error("good id {0} out of range (m = {1})")]
    GoodOutOfRange(usize, usize),
    #[error("duplicate heavy edge ({0}, {1})")]
    DuplicateHeavyEdge(usize, usize),
    #[error("p must be positive, got {0}")]
    NonPositiveP(String),
    #[error("instance must have at least one agent")]
    NoAgents,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("NSW products computed over different agent counts: {0} vs {1}")]
    AgentCountMismatch(usize, usize),
    #[error("allocations have different good counts: {0} vs {1}")]
    GoodCountMismatch(usize, usize),
    #[error("alternating path is malformed: {0}")]
    MalformedPath(String),
    #[error("path edge ({0}, {1}) is not heavy in the instance")]
    PathEdgeNotHeavy(usize, usize),
    #[error("path label inconsistent with allocation at edge ({0}, {1})")]
    InconsistentPathLabel(usize, usize),
    #[error("applying path would give good {0} two owners")]
    DoublyOwnedGood(usize),
    #[error("allocation is not heavy-only: good {0} is owned along a light edge")]
    NotHeavyOnly(usize),
}

/// A 2-value fair-division instance.
///
/// Heavy edges are stored as adjacency in both directions; membership tests
/// are binary searches over the per-good agent lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    n: usize,
    m: usize,
    p: Rational,
    /// Goods heavy for each agent, ascending.
    agent_heavy: Vec<Vec<usize>>,
    /// Agents valuing each good heavily, ascending.
    good_heavy: Vec<Vec<usize>>,
    heavy_edge_count: usize,
}

impl Instance {
    pub fn new(
        n: usize,
        m: usize,
        p: Rational,
        heavy: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::NoAgents);
        }
        if !p.is_positive() {
            return Err(ModelError::NonPositiveP(p.to_string()));
        }
        let mut agent_heavy = vec![Vec::new(); n];
        let mut good_heavy = vec![Vec::new(); m];
        let mut count = 0usize;
        for (a, g) in heavy {
            if a >= n {
                return Err(ModelError::AgentOutOfRange(a, n));
            }
            if g >= m {
                return Err(ModelError::GoodOutOfRange(g, m));
            }
            agent_heavy[a].push(g);
            good_heavy[g].push(a);
            count += 1;
        }
        for (a, goods) in agent_heavy.iter_mut().enumerate() {
            goods.sort_unstable();
            if let Some(w) = goods.windows(2).find(|w| w[0] == w[1]) {
                return Err(ModelError::DuplicateHeavyEdge(a, w[0]));
            }
        }
        for agents in &mut good_heavy {
            agents.sort_unstable();
        }
        Ok(Instance { n, m, p, agent_heavy, good_heavy, heavy_edge_count: count })
    }

    pub fn from_integer_p(
        n: usize,
        m: usize,
        p: i64,
        heavy: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, ModelError> {
        Self::new(n, m, Rational::from_integer(BigInt::from(p)), heavy)
    }

    pub fn agent_count(&self) -> usize {
        self.n
    }

    pub fn good_count(&self) -> usize {
        self.m
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// True when p's denominator is 1, the precondition of the exact solver.
    pub fn is_integral(&self) -> bool {
        self.p.denom().is_one()
    }

    pub fn is_heavy(&self, agent: usize, good: usize) -> bool {
        self.good_heavy[good].binary_search(&agent).is_ok()
    }

    /// Value of a single good to an agent: p on a heavy edge, 1 otherwise.
    pub fn value(&self, agent: usize, good: usize) -> Rational {
        if self.is_heavy(agent, good) {
            self.p.clone()
        } else {
            Rational::one()
        }
    }

    /// A good is heavy if at least one agent values it heavily.
    pub fn is_heavy_good(&self, good: usize) -> bool {
        !self.good_heavy[good].is_empty()
    }

    pub fn is_light_good(&self, good: usize) -> bool {
        self.good_heavy[good].is_empty()
    }

    /// Goods heavy for `agent`, ascending.
    pub fn heavy_goods_of(&self, agent: usize) -> &[usize] {
        &self.agent_heavy[agent]
    }

    /// Agents valuing `good` heavily, ascending.
    pub fn heavy_agents_of(&self, good: usize) -> &[usize] {
        &self.good_heavy[good]
    }

    pub fn heavy_edge_count(&self) -> usize {
        self.heavy_edge_count
    }

    pub fn heavy_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.agent_heavy
            .iter()
            .enumerate()
            .flat_map(|(a, goods)| goods.iter().map(move |&g| (a, g)))
    }
}

/// A partial allocation: each good has at most one owner by representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Allocation {
    owner: Vec<Option<usize>>,
}

impl Allocation {
    pub fn empty(m: usize) -> Self {
        Allocation { owner: vec![None; m] }
    }

    pub fn from_owner(owner: Vec<Option<usize>>) -> Self {
        Allocation { owner }
    }

    pub fn good_count(&self) -> usize {
        self.owner.len()
    }

    pub fn owner_of(&self, good: usize) -> Option<usize> {
        self.owner[good]
    }

    pub fn owners(&self) -> &[Option<usize>] {
        &self.owner
    }

    pub fn assign(&mut self, good: usize, agent: usize) {
        self.owner[good] = Some(agent);
    }

    pub fn unassign(&mut self, good: usize) {
        self.owner[good] = None;
    }

    pub fn is_complete(&self) -> bool {
        self.owner.iter().all(|o| o.is_some())
    }

    pub fn assigned_count(&self) -> usize {
        self.owner.iter().filter(|o| o.is_some()).count()
    }

    /// Goods owned by `agent`, ascending.
    pub fn bundle_of(&self, agent: usize) -> Vec<usize> {
        self.owner
            .iter()
            .enumerate()
            .filter_map(|(g, o)| (*o == Some(agent)).then_some(g))
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.owner
            .iter()
            .enumerate()
            .filter_map(|(g, o)| o.map(|a| (a, g)))
    }

    /// Checks all owner ids against the instance.
    pub fn validate(&self, instance: &Instance) -> Result<(), ModelError> {
        if self.owner.len() != instance.good_count() {
            return Err(ModelError::GoodCountMismatch(self.owner.len(), instance.good_count()));
        }
        for (g, o) in self.owner.iter().enumerate() {
            if let Some(a) = o {
                if *a >= instance.agent_count() {
                    return Err(ModelError::AgentOutOfRange(*a, instance.agent_count()));
                }
                let _ = g;
            }
        }
        Ok(())
    }
}

/// Per-agent utilities, indexed by agent id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityVector {
    pub values: Vec<Rational>,
}

impl UtilityVector {
    /// Sort ascending into a profile, the object of leximax comparison.
    pub fn profile(&self) -> UtilityProfile {
        let mut sorted = self.values.clone();
        sorted.sort();
        UtilityProfile { sorted }
    }
}

/// Utilities sorted non-descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UtilityProfile {
    pub sorted: Vec<Rational>,
}

impl fmt::Display for UtilityProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.sorted.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// The n-th power of the Nash social welfare: the exact product of all agent
/// utilities. Comparing products avoids n-th roots entirely.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NswProduct {
    pub product: Rational,
    pub n: usize,
}

impl NswProduct {
    /// Display-only geometric mean; never used for decisions.
    pub fn geometric_mean_f64(&self) -> f64 {
        let p = rational_to_f64(&self.product);
        if self.n == 0 {
            return f64::NAN;
        }
        p.powf(1.0 / self.n as f64)
    }
}

pub fn rational_to_f64(r: &Rational) -> f64 {
    let numer = bigint_to_f64(r.numer());
    let denom = bigint_to_f64(r.denom());
    numer / denom
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    // f64::from falls over on huge magnitudes; string round-trip is fine for
    // display fields.
    x.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathVertex {
    Agent(usize),
    Good(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    InAllocation,
    OutOfAllocation,
}

/// A heavy alternating path: vertices alternate between agents and goods and
/// edge labels alternate between allocation and non-allocation edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingPath {
    vertices: Vec<PathVertex>,
    labels: Vec<EdgeLabel>,
}

impl AlternatingPath {
    pub fn new(
        instance: &Instance,
        vertices: Vec<PathVertex>,
        labels: Vec<EdgeLabel>,
    ) -> Result<Self, ModelError> {
        if vertices.len() < 2 || labels.len() + 1 != vertices.len() {
            return Err(ModelError::MalformedPath(format!(
                "{} vertices, {} labels",
                vertices.len(),
                labels.len()
            )));
        }
        for w in vertices.windows(2) {
            let (a, g) = match (w[0], w[1]) {
                (PathVertex::Agent(a), PathVertex::Good(g))
                | (PathVertex::Good(g), PathVertex::Agent(a)) => (a, g),
                _ => {
                    return Err(ModelError::MalformedPath(
                        "consecutive vertices of the same kind".into(),
                    ))
                }
            };
            if a >= instance.agent_count() {
                return Err(ModelError::AgentOutOfRange(a, instance.agent_count()));
            }
            if g >= instance.good_count() {
                return Err(ModelError::GoodOutOfRange(g, instance.good_count()));
            }
            if !instance.is_heavy(a, g) {
                return Err(ModelError::PathEdgeNotHeavy(a, g));
            }
        }
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(ModelError::MalformedPath("labels do not alternate".into()));
        }
        Ok(AlternatingPath { vertices, labels })
    }

    pub fn vertices(&self) -> &[PathVertex] {
        &self.vertices
    }

    pub fn labels(&self) -> &[EdgeLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Edges as (agent, good, label) triples in path order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, EdgeLabel)> + '_ {
        self.vertices.windows(2).zip(self.labels.iter()).map(|(w, &l)| {
            let (a, g) = match (w[0], w[1]) {
                (PathVertex::Agent(a), PathVertex::Good(g))
                | (PathVertex::Good(g), PathVertex::Agent(a)) => (a, g),
                _ => unreachable!("validated on construction"),
            };
            (a, g, l)
        })
    }
}

/// Per-agent additive utility: heavy goods count p, all others count 1.
pub fn utility_vector(instance: &Instance, allocation: &Allocation) -> Result<UtilityVector, ModelError> {
    allocation.validate(instance)?;
    let mut values = vec![Rational::zero(); instance.agent_count()];
    for (a, g) in allocation.edges() {
        values[a] += instance.value(a, g);
    }
    Ok(UtilityVector { values })
}

/// The exact product of all agent utilities.
pub fn nsw_product(instance: &Instance, allocation: &Allocation) -> Result<NswProduct, ModelError> {
    let utilities = utility_vector(instance, allocation)?;
    let mut product = Rational::one();
    for v in &utilities.values {
        if v.is_zero() {
            return Ok(NswProduct { product: Rational::zero(), n: instance.agent_count() });
        }
        product *= v;
    }
    Ok(NswProduct { product, n: instance.agent_count() })
}

/// Exact total order on products over the same agent count.
pub fn compare_nsw(a: &NswProduct, b: &NswProduct) -> Result<Ordering, ModelError> {
    if a.n != b.n {
        return Err(ModelError::AgentCountMismatch(a.n, b.n));
    }
    Ok(a.product.cmp(&b.product))
}

/// Lexicographic comparison of ascending profiles: the first differing
/// coordinate decides.
pub fn leximax_compare(a: &UtilityProfile, b: &UtilityProfile) -> Result<Ordering, ModelError> {
    if a.sorted.len() != b.sorted.len() {
        return Err(ModelError::LengthMismatch(a.sorted.len(), b.sorted.len()));
    }
    for (x, y) in a.sorted.iter().zip(b.sorted.iter()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return Ok(ord),
        }
    }
    Ok(Ordering::Equal)
}

/// Restriction of the allocation to its heavy edges.
pub fn heavy_part(instance: &Instance, allocation: &Allocation) -> Result<Allocation, ModelError> {
    allocation.validate(instance)?;
    let mut result = Allocation::empty(instance.good_count());
    for (a, g) in allocation.edges() {
        if instance.is_heavy(a, g) {
            result.assign(g, a);
        }
    }
    Ok(result)
}

/// |A ⊕ B|: the number of (agent, good) edges in exactly one allocation.
pub fn allocation_distance(a: &Allocation, b: &Allocation) -> Result<usize, ModelError> {
    if a.good_count() != b.good_count() {
        return Err(ModelError::GoodCountMismatch(a.good_count(), b.good_count()));
    }
    let mut distance = 0;
    for g in 0..a.good_count() {
        match (a.owner_of(g), b.owner_of(g)) {
            (Some(x), Some(y)) if x != y => distance += 2,
            (Some(_), None) | (None, Some(_)) => distance += 1,
            _ => {}
        }
    }
    Ok(distance)
}

/// A ⊕ P: edges on the path toggle membership, everything else is unchanged.
pub fn apply_path(allocation: &Allocation, path: &AlternatingPath) -> Result<Allocation, ModelError> {
    for (a, g, label) in path.edges() {
        let in_allocation = allocation.owner_of(g) == Some(a);
        let expected = label == EdgeLabel::InAllocation;
        if in_allocation != expected {
            return Err(ModelError::InconsistentPathLabel(a, g));
        }
    }
    let mut result = allocation.clone();
    for (_, g, label) in path.edges() {
        if label == EdgeLabel::InAllocation {
            result.unassign(g);
        }
    }
    for (a, g, label) in path.edges() {
        if label == EdgeLabel::OutOfAllocation {
            if result.owner_of(g).is_some() {
                return Err(ModelError::DoublyOwnedGood(g));
            }
            result.assign(g, a);
        }
    }
    Ok(result)
}

/// Heavy degree of every agent under the allocation.
pub fn heavy_degrees(instance: &Instance, allocation: &Allocation) -> Vec<usize> {
    let mut degrees = vec![0usize; instance.agent_count()];
    for (a, g) in allocation.edges() {
        if instance.is_heavy(a, g) {
            degrees[a] += 1;
        }
    }
    degrees
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::FromPrimitive;

    fn rat(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    fn alloc(owners: &[Option<usize>]) -> Allocation {
        Allocation::from_owner(owners.to_vec())
    }

    #[test]
    fn utility_vector_i1_optimum() {
        let inst = fixtures::i1();
        let a = alloc(&[Some(0), Some(0), Some(1), Some(1), Some(1)]);
        let u = utility_vector(&inst, &a).unwrap();
        assert_eq!(u.values, vec![rat(10), rat(3)]);
    }

    #[test]
    fn utility_vector_empty_allocation() {
        let inst = fixtures::i1();
        let u = utility_vector(&inst, &Allocation::empty(5)).unwrap();
        assert_eq!(u.values, vec![rat(0), rat(0)]);
    }

    #[test]
    fn utility_vector_i3() {
        let inst = fixtures::i3();
        let a = alloc(&[Some(0), Some(1)]);
        let u = utility_vector(&inst, &a).unwrap();
        assert_eq!(u.values, vec![rat(2), rat(1)]);
    }

    #[test]
    fn utility_vector_rejects_out_of_range_owner() {
        let inst = fixtures::i3();
        let a = alloc(&[Some(7), None]);
        assert!(matches!(utility_vector(&inst, &a), Err(ModelError::AgentOutOfRange(7, 2))));
    }

    #[test]
    fn nsw_product_i1_optimum() {
        let inst = fixtures::i1();
        let a = alloc(&[Some(0), Some(0), Some(1), Some(1), Some(1)]);
        assert_eq!(nsw_product(&inst, &a).unwrap().product, rat(30));
    }

    #[test]
    fn nsw_product_zero_when_agent_empty() {
        let inst = fixtures::i1();
        let a = alloc(&[Some(0), Some(0), Some(0), Some(0), Some(0)]);
        assert_eq!(nsw_product(&inst, &a).unwrap().product, rat(0));
    }

    #[test]
    fn nsw_product_i3() {
        let inst = fixtures::i3();
        let a = alloc(&[Some(0), Some(1)]);
        assert_eq!(nsw_product(&inst, &a).unwrap().product, rat(2));
    }

    #[test]
    fn compare_nsw_cases() {
        let p = |v: i64, n: usize| NswProduct { product: rat(v), n };
        assert_eq!(compare_nsw(&p(30, 2), &p(30, 2)).unwrap(), Ordering::Equal);
        assert_eq!(compare_nsw(&p(30, 2), &p(24, 2)).unwrap(), Ordering::Greater);
        assert_eq!(compare_nsw(&p(0, 3), &p(1, 3)).unwrap(), Ordering::Less);
        assert!(compare_nsw(&p(1, 2), &p(1, 3)).is_err());
    }

    #[test]
    fn leximax_compare_cases() {
        let prof = |vs: &[i64]| UtilityProfile { sorted: vs.iter().map(|&v| rat(v)).collect() };
        assert_eq!(leximax_compare(&prof(&[1, 2, 3]), &prof(&[1, 2, 3])).unwrap(), Ordering::Equal);
        assert_eq!(
            leximax_compare(&prof(&[1, 3, 3]), &prof(&[1, 2, 4])).unwrap(),
            Ordering::Greater
        );
        assert_eq!(leximax_compare(&prof(&[0, 5]), &prof(&[1, 1])).unwrap(), Ordering::Less);
        assert!(leximax_compare(&prof(&[1]), &prof(&[1, 2])).is_err());
    }

    #[test]
    fn heavy_part_i1_optimum() {
        let inst = fixtures::i1();
        let a = alloc(&[Some(0), Some(0), Some(1), Some(1), Some(1)]);
        let h = heavy_part(&inst, &a).unwrap();
        assert_eq!(h, alloc(&[Some(0), Some(0), None, None, None]));
        // idempotence
        assert_eq!(heavy_part(&inst, &h).unwrap(), h);
    }

    #[test]
    fn heavy_part_all_light() {
        let inst = Instance::from_integer_p(2, 3, 2, []).unwrap();
        let a = alloc(&[Some(0), Some(1), Some(0)]);
        assert_eq!(heavy_part(&inst, &a).unwrap(), Allocation::empty(3));
    }

    #[test]
    fn allocation_distance_cases() {
        let a = alloc(&[Some(0), Some(0)]);
        assert_eq!(allocation_distance(&a, &a).unwrap(), 0);
        assert_eq!(
            allocation_distance(&alloc(&[Some(0)]), &alloc(&[Some(1)])).unwrap(),
            2
        );
        assert_eq!(
            allocation_distance(&alloc(&[Some(0), Some(0)]), &alloc(&[Some(0), None])).unwrap(),
            1
        );
    }

    #[test]
    fn apply_path_toggles_membership() {
        // chain instance; allocation {g0 -> a0, g1 -> a1}; path (g0,a0,g1,a1,g2).
        let inst = fixtures::chain(2);
        let a = alloc(&[Some(0), Some(1), None]);
        let path = AlternatingPath::new(
            &inst,
            vec![
                PathVertex::Good(0),
                PathVertex::Agent(0),
                PathVertex::Good(1),
                PathVertex::Agent(1),
                PathVertex::Good(2),
            ],
            vec![
                EdgeLabel::InAllocation,
                EdgeLabel::OutOfAllocation,
                EdgeLabel::InAllocation,
                EdgeLabel::OutOfAllocation,
            ],
        )
        .unwrap();
        let b = apply_path(&a, &path).unwrap();
        assert_eq!(b, alloc(&[None, Some(0), Some(1)]));
        // applying twice is the identity
        let path_back = AlternatingPath::new(
            &inst,
            path.vertices().to_vec(),
            path.labels()
                .iter()
                .map(|l| match l {
                    EdgeLabel::InAllocation => EdgeLabel::OutOfAllocation,
                    EdgeLabel::OutOfAllocation => EdgeLabel::InAllocation,
                })
                .collect(),
        )
        .unwrap();
        assert_eq!(apply_path(&b, &path_back).unwrap(), a);
    }

    #[test]
    fn apply_path_length_two_preserves_heavy_cardinality() {
        // n=2, m=1, good heavy for both, allocated to a1; path (a0, g0, a1).
        let inst = Instance::from_integer_p(2, 1, 3, [(0, 0), (1, 0)]).unwrap();
        let a = alloc(&[Some(1)]);
        let path = AlternatingPath::new(
            &inst,
            vec![PathVertex::Agent(0), PathVertex::Good(0), PathVertex::Agent(1)],
            vec![EdgeLabel::OutOfAllocation, EdgeLabel::InAllocation],
        )
        .unwrap();
        let b = apply_path(&a, &path).unwrap();
        assert_eq!(b, alloc(&[Some(0)]));
        assert_eq!(heavy_degrees(&inst, &b), vec![1, 0]);
    }

    #[test]
    fn apply_path_rejects_inconsistent_labels() {
        let inst = Instance::from_integer_p(2, 1, 3, [(0, 0), (1, 0)]).unwrap();
        let a = alloc(&[Some(1)]);
        let path = AlternatingPath::new(
            &inst,
            vec![PathVertex::Agent(0), PathVertex::Good(0), PathVertex::Agent(1)],
            vec![EdgeLabel::InAllocation, EdgeLabel::OutOfAllocation],
        )
        .unwrap();
        assert!(matches!(apply_path(&a, &path), Err(ModelError::InconsistentPathLabel(0, 0))));
    }

    #[test]
    fn path_construction_rejects_light_edges() {
        let inst = fixtures::i1();
        let err = AlternatingPath::new(
            &inst,
            vec![PathVertex::Agent(1), PathVertex::Good(0)],
            vec![EdgeLabel::OutOfAllocation],
        );
        assert!(matches!(err, Err(ModelError::PathEdgeNotHeavy(1, 0))));
    }

    #[test]
    fn instance_rejects_bad_input() {
        assert!(Instance::from_integer_p(0, 1, 2, []).is_err());
        assert!(Instance::from_integer_p(2, 2, 2, [(2, 0)]).is_err());
        assert!(Instance::from_integer_p(2, 2, 2, [(0, 2)]).is_err());
        assert!(Instance::from_integer_p(2, 2, 2, [(0, 0), (0, 0)]).is_err());
        assert!(Instance::new(1, 1, Rational::zero(), []).is_err());
    }
}
