//! Lower and upper bounds on the volume a search node can still reach.
//!
//! The upper bound adds to the loaded volume the best subset of remaining
//! unit volumes that fits into the unused volume above the height envelope.
//! Value and weight coincide in this knapsack, so it is a subset-sum
//! maximization and its fractional relaxation is `min(sum, capacity)`.

use crate::grid::unused_volume;
use crate::model::{BoundMode, PackingState, Volume};

/// Branch-and-bound nodes spent on one exact knapsack before falling back.
pub const KNAPSACK_NODE_BUDGET: u64 = 200_000;
/// Largest reduced capacity handled by the bitset fallback.
pub const BITSET_CAPACITY_LIMIT: u64 = 1 << 21;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundContext {
    pub remaining_volumes: Vec<Volume>,
    pub capacity: Volume,
    pub loaded_volume: Volume,
}

pub fn lower_bound(state: &PackingState) -> Volume {
    state.loaded_volume()
}

pub fn relaxation_bound(volumes: &[Volume], capacity: Volume) -> Volume {
    volumes.iter().sum::<Volume>().min(capacity)
}

pub fn knapsack_upper_bound(ctx: &BoundContext, mode: BoundMode) -> Volume {
    match mode {
        BoundMode::LpRelaxation => relaxation_bound(&ctx.remaining_volumes, ctx.capacity),
        BoundMode::ExactKnapsack => subset_sum_max(&ctx.remaining_volumes, ctx.capacity),
    }
}

/// Largest subset sum of `volumes` not exceeding `capacity`.
///
/// Depth-first over items in decreasing size, cut by `current + rest <= best`.
/// Past [`KNAPSACK_NODE_BUDGET`] nodes the answer comes from a bitset table
/// when the gcd-reduced capacity is small, otherwise the relaxation value is
/// returned, which still bounds the optimum from above.
pub fn subset_sum_max(volumes: &[Volume], capacity: Volume) -> Volume {
    let mut items: Vec<Volume> = volumes.iter().copied().filter(|&v| v > 0 && v <= capacity).collect();
    let total: Volume = items.iter().sum();
    if total <= capacity {
        return total;
    }
    items.sort_unstable_by(|a, b| b.cmp(a));
    let mut suffix = vec![0; items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = suffix[i + 1] + items[i];
    }
    let mut search = SubsetSearch {
        items: &items,
        suffix: &suffix,
        capacity,
        best: greedy_fill(&items, capacity),
        nodes: 0,
    };
    if search.best == capacity || search.run(0, 0) {
        return search.best;
    }
    bitset_subset_sum(&items, capacity).unwrap_or_else(|| relaxation_bound(&items, capacity))
}

fn greedy_fill(items: &[Volume], capacity: Volume) -> Volume {
    items.iter().fold(0, |acc, &v| if acc + v <= capacity { acc + v } else { acc })
}

struct SubsetSearch<'a> {
    items: &'a [Volume],
    suffix: &'a [Volume],
    capacity: Volume,
    best: Volume,
    nodes: u64,
}

impl SubsetSearch<'_> {
    /// Returns false when the node budget ran out before the proof finished.
    fn run(&mut self, i: usize, current: Volume) -> bool {
        self.nodes += 1;
        if self.nodes > KNAPSACK_NODE_BUDGET {
            return false;
        }
        if current > self.best {
            self.best = current;
        }
        if self.best == self.capacity || i == self.items.len() {
            return true;
        }
        if current + self.suffix[i] <= self.best {
            return true;
        }
        let v = self.items[i];
        if current + v <= self.capacity && !self.run(i + 1, current + v) {
            return false;
        }
        if self.best == self.capacity {
            return true;
        }
        self.run(i + 1, current)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reachable-sums bitset over volumes divided by their gcd.
fn bitset_subset_sum(items: &[Volume], capacity: Volume) -> Option<Volume> {
    let g = items.iter().fold(0, |g, &v| gcd(g, v));
    if g == 0 {
        return Some(0);
    }
    let cap = capacity / g;
    if cap > BITSET_CAPACITY_LIMIT {
        return None;
    }
    let bits = cap as usize + 1;
    let mut reach = vec![0u64; bits.div_ceil(64)];
    reach[0] = 1;
    for &v in items {
        let shift = (v / g) as usize;
        let (words, offset) = (shift / 64, shift % 64);
        for w in (words..reach.len()).rev() {
            let mut moved = reach[w - words] << offset;
            if offset > 0 && w > words {
                moved |= reach[w - words - 1] >> (64 - offset);
            }
            reach[w] |= moved;
        }
    }
    let top = (0..bits).rev().find(|&s| reach[s / 64] >> (s % 64) & 1 == 1)?;
    Some(top as u64 * g)
}

/// Loaded volume plus the best the remaining units can add above the envelope.
pub fn node_upper_bound(state: &PackingState, remaining_volumes: &[Volume], mode: BoundMode) -> Volume {
    let ctx = BoundContext {
        remaining_volumes: remaining_volumes.to_vec(),
        capacity: unused_volume(state),
        loaded_volume: lower_bound(state),
    };
    ctx.loaded_volume + knapsack_upper_bound(&ctx, mode)
}
