use super::state::ExplorationState;
use super::{Admission, Decision, RunParams, Step, StepRole, TraversalLog};
use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph, SearchLimits, VertexId};

/// Nearest-neighbour exploration: repeatedly walk to the closest unexplored
/// vertex (ties by vertex id) along an internally explored path, then
/// return to the start.
///
/// The whole walk towards a new vertex is charged to its final edge, which
/// is the boundary edge entering it.
pub fn run_nearest_neighbor(g: &Graph, start: VertexId) -> Result<TraversalLog> {
    let mut state = ExplorationState::new(g, start)?;
    let mut steps = Vec::new();
    let mut decisions = Vec::new();
    let mut taken = EdgeSubset::empty(g);
    let mut last_taken = None;

    loop {
        let here = state.position();
        let settled = state.internal_search(g, here, SearchLimits::default());
        let target = settled
            .vertices()
            .filter(|&(v, _)| !state.is_explored(v))
            .min_by_key(|&(v, d)| (d, v))
            .map(|(v, _)| v);
        let Some(target) = target else { break };
        let path = settled.path_to(target);
        let (boundary, _, _) = *path.last().expect("target differs from position");
        for (i, &(edge, a, b)) in path.iter().enumerate() {
            let weight = g.weight(edge);
            let role = if i + 1 == path.len() { StepRole::TakeBoundary } else { StepRole::Approach };
            state.add_cost(weight);
            steps.push(Step { edge, from: a, to: b, weight, role, charged_to: boundary });
        }
        taken.insert(boundary);
        last_taken = Some(boundary);
        decisions.push(Decision { at: here, edge: boundary, admission: Admission::Nearest, candidates: 1 });
        state.mark_explored(g, target)?;
        state.set_position(target);
    }

    if !state.all_explored() {
        let component = (0..g.vertex_count()).filter(|&v| !state.is_explored(v)).collect();
        return Err(Error::Disconnected { component });
    }
    if let Some(charge) = last_taken {
        let here = state.position();
        for (edge, a, b) in state.explored_path(g, here, start) {
            let weight = g.weight(edge);
            state.add_cost(weight);
            steps.push(Step { edge, from: a, to: b, weight, role: StepRole::Return, charged_to: charge });
        }
        state.set_position(start);
    }

    Ok(TraversalLog {
        params: RunParams::NearestNeighbor { start },
        total_cost: state.cost_so_far(),
        steps,
        taken_boundary: taken,
        decisions,
        audit: state.audit(),
        explored: state.explored_count(),
        final_position: state.position(),
    })
}
