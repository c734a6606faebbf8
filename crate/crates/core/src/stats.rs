use std::ops::AddAssign;

use serde::{Deserialize, Serialize};

/// Counters collected by the walk search.
#[derive(Clone, Copy, Default, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SearchStats {
    /// Walk steps, excluding re-walks during merge location.
    pub steps: u64,
    pub trails: u64,
    pub abandoned_trails: u64,
    pub interrupted_trails: u64,
    pub dp_insertions: u64,
    pub duplicate_starts: u64,
    pub evictions: u64,
    pub candidate_pairs: u64,
    pub prefix_merges: u64,
    pub same_side_collisions: u64,
    pub claws: u64,
    /// Claws whose labels differed (hash collisions).
    pub false_claws: u64,
    pub verify_steps: u64,
}

impl AddAssign for SearchStats {
    fn add_assign(&mut self, o: Self) {
        self.steps += o.steps;
        self.trails += o.trails;
        self.abandoned_trails += o.abandoned_trails;
        self.interrupted_trails += o.interrupted_trails;
        self.dp_insertions += o.dp_insertions;
        self.duplicate_starts += o.duplicate_starts;
        self.evictions += o.evictions;
        self.candidate_pairs += o.candidate_pairs;
        self.prefix_merges += o.prefix_merges;
        self.same_side_collisions += o.same_side_collisions;
        self.claws += o.claws;
        self.false_claws += o.false_claws;
        self.verify_steps += o.verify_steps;
    }
}
