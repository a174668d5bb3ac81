//! Regression instances used throughout the test suites. The same four
//! instances ship as JSON files under `fixtures/`.

use crate::model::{Instance, Rational};
use num_bigint::BigInt;

/// Two agents, five goods, p = 5. Goods g0 and g1 are heavy for agent 0 only;
/// everything is light for agent 1. The optimum gives {g0, g1} to agent 0 and
/// the rest to agent 1, product 30, even though that profile is not leximax.
pub fn i1() -> Instance {
    Instance::from_integer_p(2, 5, 5, [(0, 0), (0, 1)]).unwrap()
}

/// Two agents, two goods, p = 2, both goods heavy for agent 0 only. Every
/// optimum hands one heavy good to agent 1 along a light edge.
pub fn i3() -> Instance {
    Instance::from_integer_p(2, 2, 2, [(0, 0), (0, 1)]).unwrap()
}

/// Two agents, five goods, p = 3/2. Goods g0 and g1 are heavy for both
/// agents, g2..g4 light for both. The optimum gives both agents bundles of
/// value 3 (product 9); its heavy part is not leximax at its cardinality.
pub fn i4() -> Instance {
    let p = Rational::new(BigInt::from(3), BigInt::from(2));
    Instance::new(2, 5, p, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap()
}

/// The two-agent, three-good utility graph with heavy edges
/// {(a0,g0), (a0,g1), (a1,g1), (a1,g2)}, at a caller-chosen integral p.
pub fn chain(p: i64) -> Instance {
    Instance::from_integer_p(2, 3, p, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap()
}
