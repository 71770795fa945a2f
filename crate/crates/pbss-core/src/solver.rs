//! The sequential decision engine.
//!
//! Each step scores every adjacent status with a three-tier reward (total
//! item-to-IO distance, then total escort demand, then the minimal
//! estimated escort approach cost) and applies the argmax move, breaking
//! ties with a seeded generator, until every target item is retrieved.

use crate::assignment::optimal_assignments;
use crate::distance::{approach_costs, estimate, forced_straight_runs};
use crate::escort::{escort_target_positions, min_required_escorts};
use crate::grid::{GridError, GridState, MoveAction, Position};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("{items} target items cannot be assigned to {ios} IOs")]
    Infeasible { items: usize, ios: usize },
    #[error("assignment plan maps {mapped} entries for {items} items")]
    InvalidPlan { items: usize, mapped: usize },
    #[error("no legal action available")]
    NoLegalAction,
    #[error("gap pair (heuristic {heuristic}, optimal {optimal}) is out of domain")]
    BadGapPair { heuristic: usize, optimal: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// The three status evaluation indexes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusIndexes {
    /// Minimal total item-to-IO Manhattan distance.
    pub total_distance: usize,
    /// Minimal total escort demand over the optimal plans.
    pub required_escorts: usize,
    /// Minimal estimated escort approach cost; `None` when no escort
    /// target positions exist.
    pub min_approach_cost: Option<usize>,
}

/// Which index a decision changed, in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reason {
    TotalDistance,
    RequiredEscorts,
    MinDistanceMatrix,
    Neutral,
}

impl Reason {
    pub fn token(self) -> &'static str {
        match self {
            Reason::TotalDistance => "total_distance",
            Reason::RequiredEscorts => "required_escorts",
            Reason::MinDistanceMatrix => "min_distance_matrix",
            Reason::Neutral => "neutral",
        }
    }
}

impl std::str::FromStr for Reason {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "total_distance" => Ok(Reason::TotalDistance),
            "required_escorts" => Ok(Reason::RequiredEscorts),
            "min_distance_matrix" => Ok(Reason::MinDistanceMatrix),
            "neutral" => Ok(Reason::Neutral),
            other => Err(format!("unknown reason `{other}`")),
        }
    }
}

/// One solver step: the move, why it was taken, and its reward.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionRecord {
    /// 1-based step counter.
    pub step: usize,
    pub escort_from: Position,
    pub escort_to: Position,
    /// Highest-priority index the move changed.
    pub reason: Reason,
    /// That index's value before the move; `None` renders as infinity for
    /// the approach-cost index.
    pub value_before: Option<usize>,
    pub value_after: Option<usize>,
    pub reward: i32,
}

impl DecisionRecord {
    pub fn action(&self) -> MoveAction {
        MoveAction {
            escort_from: self.escort_from,
            escort_to: self.escort_to,
        }
    }
}

/// A complete solve log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveTrace {
    pub initial: GridState,
    pub records: Vec<DecisionRecord>,
    pub solved: bool,
    pub total_steps: usize,
}

impl SolveTrace {
    /// Re-applies every recorded action to the initial state and returns
    /// the final state. Fails if any recorded action is illegal.
    pub fn replay(&self) -> Result<GridState, GridError> {
        let mut state = self.initial.clone();
        for record in &self.records {
            state = state.apply(record.action())?;
        }
        Ok(state)
    }
}

/// Solver knobs. `max_steps` caps the loop; `cycle_memory` is how many
/// recent statuses the anti-cycling guard remembers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub rng_seed: u64,
    pub max_steps: usize,
    pub cycle_memory: usize,
}

impl SolverConfig {
    pub const DEFAULT_CYCLE_MEMORY: usize = 64;

    /// Default budget for a grid: 20 moves per cell.
    pub fn for_grid(state: &GridState, rng_seed: u64) -> Self {
        SolverConfig {
            rng_seed,
            max_steps: 20 * state.width() * state.height(),
            cycle_memory: Self::DEFAULT_CYCLE_MEMORY,
        }
    }
}

/// Computes the three status indexes for a state.
pub fn evaluate(state: &GridState) -> Result<StatusIndexes, SolveError> {
    let plans = optimal_assignments(state)?;
    let targets = escort_target_positions(state, &plans);
    let required = min_required_escorts(state, &plans);
    let costs = approach_costs(state, &targets, &plans);
    Ok(StatusIndexes {
        total_distance: plans.total_distance,
        required_escorts: required,
        min_approach_cost: costs.min_cost,
    })
}

/// `None` sorts above every finite cost.
fn cost_rank(c: Option<usize>) -> u64 {
    c.map_or(u64::MAX, |v| v as u64)
}

/// The movement reward: distance changes dominate, then escort demand,
/// then the approach-cost minimum; an untouched status scores 0.
pub fn reward(before: &StatusIndexes, after: &StatusIndexes) -> i32 {
    use std::cmp::Ordering::*;
    match after.total_distance.cmp(&before.total_distance) {
        Less => return 100,
        Greater => return -1,
        Equal => {}
    }
    match after.required_escorts.cmp(&before.required_escorts) {
        Less => return 50,
        Greater => return -1,
        Equal => {}
    }
    match cost_rank(after.min_approach_cost).cmp(&cost_rank(before.min_approach_cost)) {
        Less => 10,
        Greater => -1,
        Equal => 0,
    }
}

fn record_for(
    action: MoveAction,
    before: &StatusIndexes,
    after: &StatusIndexes,
    reward: i32,
) -> DecisionRecord {
    let (reason, value_before, value_after) = if before.total_distance != after.total_distance {
        (
            Reason::TotalDistance,
            Some(before.total_distance),
            Some(after.total_distance),
        )
    } else if before.required_escorts != after.required_escorts {
        (
            Reason::RequiredEscorts,
            Some(before.required_escorts),
            Some(after.required_escorts),
        )
    } else if before.min_approach_cost != after.min_approach_cost {
        (
            Reason::MinDistanceMatrix,
            before.min_approach_cost,
            after.min_approach_cost,
        )
    } else {
        (
            Reason::Neutral,
            before.min_approach_cost,
            after.min_approach_cost,
        )
    };
    DecisionRecord {
        step: 0,
        escort_from: action.escort_from,
        escort_to: action.escort_to,
        reason,
        value_before,
        value_after,
        reward,
    }
}

struct Candidate {
    action: MoveAction,
    next: GridState,
    after: StatusIndexes,
    reward: i32,
    tie_key: (u8, u8, u64),
    deferred: bool,
}

/// Secondary ordering among equal-reward moves.
///
/// Parking the column-minimum escort on its target position commits the
/// route the matrix already chose, so it ranks first; among such parks the
/// one whose onward corridor forces the fewest straight runs wins. Next,
/// the escort already in motion keeps going rather than waking an idle
/// one. Every other move ranks by how gently it lowers the matrix minimum:
/// a genuine approach shaves one step, while jumps that exploit the
/// corridor boundary crash it and are deferred.
#[allow(clippy::too_many_arguments)]
fn tie_key(
    state: &GridState,
    action: MoveAction,
    plans: &crate::assignment::AssignmentPlanSet,
    targets: &std::collections::BTreeSet<Position>,
    costs: &crate::distance::ApproachCosts,
    before: &StatusIndexes,
    after: &StatusIndexes,
    in_hand: Option<Position>,
) -> (u8, u8, u64) {
    let stale = match in_hand {
        Some(h) => (action.escort_from != h) as u8,
        None => 0,
    };
    if targets.contains(&action.escort_to) {
        let own = estimate(state, action.escort_from, action.escort_to, plans).total;
        let column = costs
            .per_target
            .iter()
            .find(|&&(t, _)| t == action.escort_to)
            .map(|&(_, q)| q)
            .unwrap_or(usize::MAX);
        if own == column {
            let ios = state.io_positions();
            let shape = crate::escort::items_served_by(state, plans, action.escort_to)
                .into_iter()
                .flat_map(|(_, candidate_ios)| {
                    candidate_ios
                        .into_iter()
                        .map(|i| forced_straight_runs(action.escort_to, ios[i]))
                        .min()
                })
                .min()
                .unwrap_or(0);
            return (0, stale, shape as u64);
        }
    }
    let drop = cost_rank(before.min_approach_cost)
        .saturating_sub(cost_rank(after.min_approach_cost));
    (1, stale, drop)
}

fn candidates(
    state: &GridState,
    before: &StatusIndexes,
    in_hand: Option<Position>,
) -> Result<Vec<Candidate>, SolveError> {
    let actions = state.legal_actions();
    if actions.is_empty() {
        return Err(SolveError::NoLegalAction);
    }
    let plans = optimal_assignments(state)?;
    let targets = escort_target_positions(state, &plans);
    let costs = approach_costs(state, &targets, &plans);

    actions
        .into_iter()
        .map(|action| {
            let next = state.apply(action)?;
            let after = evaluate(&next)?;
            let reward = reward(before, &after);
            let tie_key = tie_key(
                state, action, &plans, &targets, &costs, before, &after, in_hand,
            );
            // Demand moves that wake an idle escort while another is
            // mid-route pull bodies into corridors the moving escort is
            // about to cover; they wait unless nothing else is on offer.
            let deferred = reward == 50
                && matches!(in_hand, Some(h) if h != action.escort_from);
            Ok(Candidate {
                action,
                next,
                after,
                reward,
                tie_key,
                deferred,
            })
        })
        .collect()
}

fn pick<R: Rng>(
    state: &GridState,
    before: &StatusIndexes,
    rng: &mut R,
    banned: Option<&HashSet<Vec<u8>>>,
    in_hand: Option<Position>,
) -> Result<(Candidate, DecisionRecord), SolveError> {
    let mut all = candidates(state, before, in_hand)?;
    // Deferred demand moves drop out only while something productive is on
    // offer without them; otherwise they compete normally.
    if all.iter().any(|c| !c.deferred && c.reward > 0) {
        all.retain(|c| !c.deferred);
    }
    // Anti-cycling: non-improving moves that revisit a remembered status
    // are dropped, unless that empties the pool (the loop must move on).
    if let Some(banned) = banned {
        let keeps: Vec<bool> = all
            .iter()
            .map(|c| c.reward > 0 || !banned.contains(&c.next.canonical_key()))
            .collect();
        if keeps.iter().any(|&k| k) {
            let mut it = keeps.into_iter();
            all.retain(|_| it.next().unwrap());
        }
    }
    let best = all.iter().map(|c| c.reward).max().expect("non-empty");
    // The deterministic ordering exists to commit productive runs; on a
    // plateau it would just pin an arbitrary oscillation, so fall back to
    // the plain uniform draw there.
    let best_key = if best > 0 {
        all.iter()
            .filter(|c| c.reward == best)
            .map(|c| c.tie_key)
            .min()
            .expect("non-empty")
    } else {
        (u8::MAX, u8::MAX, u64::MAX)
    };
    let tied: Vec<usize> = all
        .iter()
        .enumerate()
        .filter(|(_, c)| c.reward == best && (best <= 0 || c.tie_key == best_key))
        .map(|(i, _)| i)
        .collect();
    let chosen = tied[rng.gen_range(0..tied.len())];
    let candidate = all.swap_remove(chosen);
    let record = record_for(candidate.action, before, &candidate.after, candidate.reward);
    Ok((candidate, record))
}

/// One greedy decision from `state`: evaluates every adjacent status and
/// returns the argmax-reward move with its record. Equal-reward moves go
/// through the deterministic ordering of [`tie_key`]; `rng` settles only
/// what remains tied after it.
pub fn decide<R: Rng>(
    state: &GridState,
    indexes: &StatusIndexes,
    rng: &mut R,
) -> Result<(MoveAction, DecisionRecord), SolveError> {
    let (candidate, record) = pick(state, indexes, rng, None, None)?;
    Ok((candidate.action, record))
}

/// Runs the decision loop until every target item is retrieved or
/// `max_steps` is exhausted.
pub fn solve(initial: &GridState, config: &SolverConfig) -> Result<SolveTrace, SolveError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut state = initial.clone();
    let mut records = Vec::new();
    let mut memory: VecDeque<Vec<u8>> = VecDeque::new();
    let mut remembered: HashSet<Vec<u8>> = HashSet::new();
    let remember = |key: Vec<u8>,
                    memory: &mut VecDeque<Vec<u8>>,
                    remembered: &mut HashSet<Vec<u8>>| {
        if remembered.insert(key.clone()) {
            memory.push_back(key);
            if memory.len() > config.cycle_memory {
                if let Some(old) = memory.pop_front() {
                    remembered.remove(&old);
                }
            }
        }
    };
    remember(state.canonical_key(), &mut memory, &mut remembered);

    let mut solved = state.is_solved();
    let mut in_hand: Option<Position> = None;
    while !solved {
        if records.len() >= config.max_steps {
            break;
        }
        let before = evaluate(&state)?;
        let (candidate, mut record) =
            pick(&state, &before, &mut rng, Some(&remembered), in_hand)?;
        record.step = records.len() + 1;
        in_hand = Some(record.escort_to);
        state = candidate.next;
        remember(state.canonical_key(), &mut memory, &mut remembered);
        records.push(record);
        solved = state.is_solved();
    }

    let total_steps = records.len();
    Ok(SolveTrace {
        initial: initial.clone(),
        records,
        solved,
        total_steps,
    })
}
