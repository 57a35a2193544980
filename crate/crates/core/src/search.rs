//! Bidirectional breadth-first search over an implicit graph.
//!
//! Both ends are expanded level by level, always the smaller frontier first.
//! Neighbors are generated in a fixed order, so the first meeting point and the
//! returned paths are deterministic even when a level is expanded in parallel.

use std::hash::Hash;

use indexmap::IndexSet;
use rayon::prelude::*;
use rustc_hash::FxBuildHasher;

/// Frontiers smaller than this are expanded on the calling thread.
const PARALLEL_THRESHOLD: usize = 512;

pub(crate) trait Space: Sync {
    type State: Clone + Hash + Eq + Send + Sync;
    type Step: Clone + Send + Sync;

    /// Appends the neighbors of `s` in tie-break order. Returns false when some
    /// neighbor was dropped by a size bound.
    fn expand(&self, s: &Self::State, out: &mut Vec<(Self::Step, Self::State)>) -> bool;
}

pub(crate) enum Bfs<Sp> {
    /// Steps from the source to the meeting state, and from the target to it.
    Found { forward: Vec<Sp>, backward: Vec<Sp> },
    /// One side ran out of states. `pruned` tells whether a bound dropped any
    /// neighbor on that side, in which case the orbit was not fully seen.
    Exhausted { pruned: bool, states: usize },
    Limit(String),
}

struct Side<St, Sp> {
    states: IndexSet<St, FxBuildHasher>,
    parent: Vec<(u32, Option<Sp>)>,
    frontier: Vec<u32>,
    depth: usize,
    pruned: bool,
}

impl<St: Clone + Hash + Eq, Sp: Clone> Side<St, Sp> {
    fn new(root: St) -> Self {
        let mut states = IndexSet::with_hasher(FxBuildHasher);
        states.insert(root);
        Side { states, parent: vec![(u32::MAX, None)], frontier: vec![0], depth: 0, pruned: false }
    }

    fn path_to(&self, mut idx: u32) -> Vec<Sp> {
        let mut out = Vec::new();
        while let (p, Some(step)) = &self.parent[idx as usize] {
            out.push(step.clone());
            idx = *p;
        }
        out.reverse();
        out
    }
}

pub(crate) fn bidirectional<S: Space>(
    space: &S,
    source: S::State,
    target: S::State,
    max_depth: usize,
    max_states: usize,
) -> Bfs<S::Step> {
    if source == target {
        return Bfs::Found { forward: Vec::new(), backward: Vec::new() };
    }
    let mut sides = [Side::new(source), Side::new(target)];
    loop {
        for side in &sides {
            if side.frontier.is_empty() {
                return Bfs::Exhausted { pruned: side.pruned, states: side.states.len() };
            }
        }
        if sides[0].depth + sides[1].depth >= max_depth {
            return Bfs::Limit(format!("depth limit {max_depth} reached"));
        }
        let a = if sides[1].frontier.len() < sides[0].frontier.len() { 1 } else { 0 };
        let (this, other) = if a == 0 {
            let (x, y) = sides.split_at_mut(1);
            (&mut x[0], &y[0])
        } else {
            let (x, y) = sides.split_at_mut(1);
            (&mut y[0], &x[0])
        };
        let expand = |&idx: &u32| {
            let mut out = Vec::new();
            let complete = space.expand(&this.states[idx as usize], &mut out);
            (idx, complete, out)
        };
        let frontier = std::mem::take(&mut this.frontier);
        let expanded: Vec<_> = if frontier.len() >= PARALLEL_THRESHOLD {
            frontier.par_iter().map(expand).collect()
        } else {
            frontier.iter().map(expand).collect()
        };
        let mut next = Vec::new();
        for (idx, complete, neighbors) in expanded {
            this.pruned |= !complete;
            for (step, st) in neighbors {
                if let Some(meet) = other.states.get_index_of(&st) {
                    let mut here = this.path_to(idx);
                    here.push(step);
                    let there = other.path_to(meet as u32);
                    return if a == 0 {
                        Bfs::Found { forward: here, backward: there }
                    } else {
                        Bfs::Found { forward: there, backward: here }
                    };
                }
                let (pos, fresh) = this.states.insert_full(st);
                if fresh {
                    this.parent.push((idx, Some(step)));
                    next.push(pos as u32);
                }
            }
            if this.states.len() + other.states.len() > max_states {
                return Bfs::Limit(format!("state limit {max_states} reached"));
            }
        }
        this.frontier = next;
        this.depth += 1;
    }
}
