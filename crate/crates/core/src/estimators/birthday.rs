//! Vertex-count estimation from collisions among uniform vertex samples.
//!
//! After `k` uniform draws the expected number of colliding pairs is
//! `k(k−1)/(2n)`, so `n̂ = k(k−1)/(2C)`. Draws are taken in doubling batches
//! and the estimate is produced at the first batch boundary where the pair
//! collision count `C` reaches the floor set by the target relative error.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::OracleSession;

const MIN_COLLISIONS: u64 = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BirthdayReport {
    pub estimate: u64,
    pub draws: u64,
    pub collisions: u64,
    pub vertex_queries: u64,
}

/// Collisions required before reporting: `max(8, ⌈2/t²⌉)`.
pub fn collision_floor(target_rel_error: f64) -> u64 {
    MIN_COLLISIONS.max((2.0 / (target_rel_error * target_rel_error)).ceil() as u64)
}

pub fn estimate_n_birthday(
    session: &mut OracleSession<'_>,
    target_rel_error: f64,
) -> Result<BirthdayReport> {
    if !(target_rel_error > 0.0 && target_rel_error < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "target relative error must lie in (0, 1), got {target_rel_error}"
        )));
    }
    let floor = collision_floor(target_rel_error);
    let before = session.query_count().vertex;
    let mut seen: HashMap<u32, u64> = HashMap::new();
    let mut draws = 0u64;
    let mut collisions = 0u64;
    let mut batch_end = 2u64;
    loop {
        while draws < batch_end {
            let v = session.random_vertex()?;
            let count = seen.entry(v).or_insert(0);
            collisions += *count;
            *count += 1;
            draws += 1;
        }
        if collisions >= floor {
            break;
        }
        batch_end *= 2;
    }
    let pairs = draws as u128 * (draws as u128 - 1) / 2;
    let estimate = ((pairs as f64) / collisions as f64).round() as u64;
    Ok(BirthdayReport {
        estimate: estimate.max(1),
        draws,
        collisions,
        vertex_queries: session.query_count().vertex - before,
    })
}
