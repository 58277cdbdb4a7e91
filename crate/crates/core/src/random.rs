//! Seeded random acyclic digraphs for property checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fixtures::ExplicitGame;

/// One random DAG: node count uniform in 1..=max_nodes, and each edge i→j
/// with j < i present independently with probability `p`.
pub fn random_dag(rng: &mut impl Rng, name: &str, max_nodes: usize, p: f64) -> Arc<ExplicitGame> {
    let n = rng.gen_range(1..=max_nodes.max(1));
    let names = (0..n).map(|i| format!("v{i}")).collect();
    let succ = (0..n)
        .map(|i| (0..i).filter(|_| rng.gen_bool(p)).collect())
        .collect();
    Arc::new(ExplicitGame::new(name, names, succ).expect("edges stay in range"))
}

/// `count` DAGs from a ChaCha8 stream seeded with `seed`.
pub fn random_dags(seed: u64, count: usize, max_nodes: usize, p: f64) -> Vec<Arc<ExplicitGame>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| random_dag(&mut rng, &format!("random#{i}"), max_nodes, p))
        .collect()
}
