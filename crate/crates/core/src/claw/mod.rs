//! Parallel claw finding with distinguished points.

mod merge;
mod search;
mod store;

pub use merge::{locate_merge, locate_merge_with, verify_claw, MergeOutcome};
pub use search::{
    default_budget, search_chunk, search_chunk_cancellable, version_length, ChunkSearch,
    RoleConfig, MIN_CHUNK_BUDGET,
};
pub use store::{DpStore, InsertResult};
