//! Phase 1: heavy-only allocations maximizing NSW.
//!
//! The reference solver starts from a maximum heavy multi-matching and
//! repeatedly augments even-length heavy alternating paths from low-degree
//! agents to agents whose heavy degree is at least two larger. The resulting
//! heavy profile is leximax among all maximum-cardinality heavy-only
//! allocations, and unique.
//!
//! A second solver peels saturated groups off a directed view of the same
//! graph; it produces the same profile with a better time bound.

use crate::model::{
    heavy_degrees, AlternatingPath, Allocation, EdgeLabel, Instance, PathVertex,
};

const NO_PARENT: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BinaryError {
    #[error("cannot peel an empty allocation")]
    EmptyAllocation,
    #[error("allocation is not heavy-only: good {0} owned along a light edge")]
    NotHeavyOnly(usize),
}

/// Bidirectional adjacency over the heavy edges of an instance.
#[derive(Debug, Clone)]
pub struct HeavyGraph {
    agent_goods: Vec<Vec<usize>>,
    good_agents: Vec<Vec<usize>>,
}

impl HeavyGraph {
    pub fn from_instance(instance: &Instance) -> Self {
        HeavyGraph {
            agent_goods: (0..instance.agent_count())
                .map(|a| instance.heavy_goods_of(a).to_vec())
                .collect(),
            good_agents: (0..instance.good_count())
                .map(|g| instance.heavy_agents_of(g).to_vec())
                .collect(),
        }
    }

    pub fn goods_of(&self, agent: usize) -> &[usize] {
        &self.agent_goods[agent]
    }

    pub fn agents_of(&self, good: usize) -> &[usize] {
        &self.good_agents[good]
    }

    pub fn agent_count(&self) -> usize {
        self.agent_goods.len()
    }

    pub fn good_count(&self) -> usize {
        self.good_agents.len()
    }
}

/// A set of agents peeled together by the group-peeling solver: their bundle
/// sizes differ by at most one and all their goods stay inside the group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturatedGroup {
    pub agents: Vec<usize>,
    pub goods: Vec<usize>,
    pub min_degree: usize,
}

/// Assigns every good with at least one heavy edge along a heavy edge,
/// breaking ties by lowest agent id. Goods with no heavy edge stay
/// unassigned.
pub fn max_heavy_multimatching(instance: &Instance) -> Allocation {
    let mut allocation = Allocation::empty(instance.good_count());
    for g in 0..instance.good_count() {
        if let Some(&a) = instance.heavy_agents_of(g).first() {
            allocation.assign(g, a);
        }
    }
    allocation
}

/// BFS scratch reused across augmentation rounds. Vertices are encoded as
/// agents `0..n` and goods `n..n+m`; visitation uses stamps so no per-round
/// clearing is needed.
struct PathSearcher {
    n: usize,
    visited: Vec<u32>,
    parent: Vec<u32>,
    round: u32,
    queue: Vec<u32>,
}

/// A found path, stored agent-first: `agents[0], goods[0], agents[1], ...`.
struct RawPath {
    agents: Vec<usize>,
    goods: Vec<usize>,
}

impl PathSearcher {
    fn new(n: usize, m: usize) -> Self {
        PathSearcher {
            n,
            visited: vec![0; n + m],
            parent: vec![0; n + m],
            round: 0,
            queue: Vec::new(),
        }
    }

    /// Multi-source BFS from `sources` (agents of equal heavy degree `start`)
    /// over the directed view: non-allocation heavy edges agent -> good,
    /// allocation edges good -> owner. Stops at the first agent with degree
    /// at least `start + 2`. `active` restricts the search when peeling.
    fn search(
        &mut self,
        graph: &HeavyGraph,
        owner: &[Option<usize>],
        degrees: &[usize],
        sources: &[usize],
        start: usize,
        active: Option<&[bool]>,
    ) -> Option<RawPath> {
        self.round += 1;
        self.queue.clear();
        let is_active = |v: usize| active.is_none_or(|f| f[v]);
        for &a in sources {
            self.visited[a] = self.round;
            self.parent[a] = NO_PARENT;
            self.queue.push(a as u32);
        }
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head] as usize;
            head += 1;
            if v < self.n {
                for &g in graph.goods_of(v) {
                    let gv = self.n + g;
                    if owner[g] == Some(v) || self.visited[gv] == self.round || !is_active(gv) {
                        continue;
                    }
                    self.visited[gv] = self.round;
                    self.parent[gv] = v as u32;
                    // lookahead: goods dequeue in push order and have one
                    // owner each, so checking the owner here finds the same
                    // path as waiting for the dequeue, just sooner
                    if let Some(b) = owner[g] {
                        if self.visited[b] != self.round
                            && is_active(b)
                            && degrees[b] >= start + 2
                        {
                            self.visited[b] = self.round;
                            self.parent[b] = gv as u32;
                            return Some(self.reconstruct(b));
                        }
                    }
                    self.queue.push(gv as u32);
                }
            } else {
                let g = v - self.n;
                let Some(b) = owner[g] else { continue };
                if self.visited[b] == self.round || !is_active(b) {
                    continue;
                }
                self.visited[b] = self.round;
                self.parent[b] = v as u32;
                if degrees[b] >= start + 2 {
                    return Some(self.reconstruct(b));
                }
                self.queue.push(b as u32);
            }
        }
        None
    }

    fn reconstruct(&self, end: usize) -> RawPath {
        let mut agents = vec![end];
        let mut goods = Vec::new();
        let mut v = end;
        while self.parent[v] != NO_PARENT {
            let gv = self.parent[v] as usize;
            goods.push(gv - self.n);
            let a = self.parent[gv] as usize;
            agents.push(a);
            v = a;
        }
        agents.reverse();
        goods.reverse();
        RawPath { agents, goods }
    }
}

fn raw_to_alternating(instance: &Instance, raw: &RawPath) -> AlternatingPath {
    let mut vertices = Vec::with_capacity(raw.agents.len() + raw.goods.len());
    let mut labels = Vec::with_capacity(raw.agents.len() + raw.goods.len() - 1);
    vertices.push(PathVertex::Agent(raw.agents[0]));
    for (i, &g) in raw.goods.iter().enumerate() {
        vertices.push(PathVertex::Good(g));
        labels.push(EdgeLabel::OutOfAllocation);
        vertices.push(PathVertex::Agent(raw.agents[i + 1]));
        labels.push(EdgeLabel::InAllocation);
    }
    AlternatingPath::new(instance, vertices, labels).expect("search yields valid heavy paths")
}

/// Shifts every good on the path to the preceding agent; the start agent
/// gains one good, the end agent loses one.
fn augment(owner: &mut [Option<usize>], degrees: &mut [usize], raw: &RawPath) {
    for (i, &g) in raw.goods.iter().enumerate() {
        owner[g] = Some(raw.agents[i]);
    }
    degrees[raw.agents[0]] += 1;
    degrees[*raw.agents.last().unwrap()] -= 1;
}

/// Searches degree classes in ascending order, each class as one multi-source
/// BFS with all its agents enqueued in ascending id.
fn find_path_any_class(
    graph: &HeavyGraph,
    searcher: &mut PathSearcher,
    owner: &[Option<usize>],
    degrees: &[usize],
) -> Option<RawPath> {
    let mut classes: Vec<usize> = degrees.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let mut sources = Vec::new();
    for d in classes {
        sources.clear();
        sources.extend((0..graph.agent_count()).filter(|&a| degrees[a] == d));
        if let Some(raw) = searcher.search(graph, owner, degrees, &sources, d, None) {
            return Some(raw);
        }
    }
    None
}

/// Finds an even heavy alternating path from a low-degree agent to an agent
/// with heavy degree at least two larger, or reports that none exists.
pub fn find_improving_path(instance: &Instance, allocation: &Allocation) -> Option<AlternatingPath> {
    let graph = HeavyGraph::from_instance(instance);
    let mut searcher = PathSearcher::new(instance.agent_count(), instance.good_count());
    let degrees = heavy_degrees(instance, allocation);
    find_path_any_class(&graph, &mut searcher, allocation.owners(), &degrees)
        .map(|raw| raw_to_alternating(instance, &raw))
}

/// Algorithm: maximum multi-matching, then augment until no improving path
/// remains. The output assigns every heavy good along a heavy edge and its
/// profile is leximax among maximum-cardinality heavy-only allocations.
pub fn binary_max_nsw(instance: &Instance) -> Allocation {
    let graph = HeavyGraph::from_instance(instance);
    let mut searcher = PathSearcher::new(instance.agent_count(), instance.good_count());
    let allocation = max_heavy_multimatching(instance);
    let mut owner: Vec<Option<usize>> = allocation.owners().to_vec();
    let mut degrees = vec![0usize; instance.agent_count()];
    for o in owner.iter().flatten() {
        degrees[*o] += 1;
    }
    while let Some(raw) = find_path_any_class(&graph, &mut searcher, &owner, &degrees) {
        augment(&mut owner, &mut degrees, &raw);
    }
    Allocation::from_owner(owner)
}

/// Group-peeling variant: repeatedly search from the minimum-degree agents;
/// augment when possible, otherwise peel the saturated set reached by the
/// failed searches. Profiles match `binary_max_nsw`; the allocation may not.
pub fn binary_max_nsw_fast(instance: &Instance) -> (Allocation, Vec<SaturatedGroup>) {
    let n = instance.agent_count();
    let m = instance.good_count();
    let graph = HeavyGraph::from_instance(instance);
    let mut searcher = PathSearcher::new(n, m);
    let mut owner: Vec<Option<usize>> = max_heavy_multimatching(instance).owners().to_vec();
    let mut degrees = vec![0usize; n];
    for o in owner.iter().flatten() {
        degrees[*o] += 1;
    }
    let mut active = vec![true; n + m];
    // goods with no heavy edge never participate
    for g in 0..m {
        if instance.is_light_good(g) {
            active[n + g] = false;
        }
    }
    let mut groups = Vec::new();
    let mut remaining = n;
    while remaining > 0 {
        let dmin = (0..n).filter(|&a| active[a]).map(|a| degrees[a]).min().unwrap();
        let sources: Vec<usize> =
            (0..n).filter(|&a| active[a] && degrees[a] == dmin).collect();
        let mut augmented = false;
        let mut reached: Vec<usize> = Vec::new();
        for &s in &sources {
            match searcher.search(&graph, &owner, &degrees, &[s], dmin, Some(&active)) {
                Some(raw) => {
                    augment(&mut owner, &mut degrees, &raw);
                    augmented = true;
                    break;
                }
                None => {
                    // everything visited in this round is saturated
                    reached.extend(
                        (0..n).filter(|&a| searcher.visited[a] == searcher.round),
                    );
                }
            }
        }
        if augmented {
            continue;
        }
        reached.sort_unstable();
        reached.dedup();
        let goods: Vec<usize> = (0..m)
            .filter(|&g| active[n + g] && owner[g].is_some_and(|a| reached.binary_search(&a).is_ok()))
            .collect();
        for &a in &reached {
            active[a] = false;
        }
        for &g in &goods {
            active[n + g] = false;
        }
        remaining -= reached.len();
        groups.push(SaturatedGroup { agents: reached, goods, min_degree: dmin });
    }
    (Allocation::from_owner(owner), groups)
}

/// Removes one heavy edge from the lowest-id agent of maximum heavy degree.
/// Starting from the leximax maximum, repeated peeling stays leximax at every
/// cardinality.
pub fn peel_heavy(instance: &Instance, allocation: &Allocation) -> Result<Allocation, BinaryError> {
    for (a, g) in allocation.edges() {
        if !instance.is_heavy(a, g) {
            return Err(BinaryError::NotHeavyOnly(g));
        }
    }
    let degrees = heavy_degrees(instance, allocation);
    let max_degree = *degrees.iter().max().unwrap_or(&0);
    if max_degree == 0 {
        return Err(BinaryError::EmptyAllocation);
    }
    let agent = degrees.iter().position(|&d| d == max_degree).unwrap();
    let good = allocation.bundle_of(agent)[0];
    let mut result = allocation.clone();
    result.unassign(good);
    Ok(result)
}
