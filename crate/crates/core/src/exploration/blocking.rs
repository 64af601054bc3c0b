use super::state::{block_checks, BallCache, ExplorationState};
use super::verify::{verify_blocking_cycle_property, verify_charges};
use super::{Admission, Decision, ExplorationParams, RunParams, Step, StepRole, TieRanker, TraversalLog};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSubset, Graph, VertexId};
use crate::rational::Rational;

/// One pending invocation `Blocking(vertex)`, entered through `via`.
struct Frame {
    vertex: VertexId,
    via: Option<EdgeId>,
}

struct Run<'g> {
    g: &'g Graph,
    params: ExplorationParams,
    state: ExplorationState,
    ranker: TieRanker,
    steps: Vec<Step>,
    decisions: Vec<Decision>,
    taken: EdgeSubset,
    balls: BallCache,
}

/// Simulates `Blocking_δ` from `params.start` until it returns.
///
/// The recursion is unrolled onto an explicit stack. At every while-check
/// of the invocation at `v`, boundary edges incident to `v` are tried first
/// and edges re-activated by `v` (a recorded blocker of theirs) second; the
/// tie-break picks among the unblocked ones. Blocking status is recomputed
/// at every check and all witnesses of a blocked edge are recorded.
pub fn run_blocking(g: &Graph, params: ExplorationParams) -> Result<TraversalLog> {
    if !params.delta.is_positive() {
        return Err(Error::Argument(format!("delta must be positive, got {}", params.delta)));
    }
    let state = ExplorationState::new(g, params.start)?;
    let mut run = Run {
        g,
        ranker: params.tie_break.ranker(g),
        params,
        state,
        steps: Vec::new(),
        decisions: Vec::new(),
        taken: EdgeSubset::empty(g),
        balls: BallCache::default(),
    };
    run.explore()?;
    run.finish()
}

impl Run<'_> {
    fn explore(&mut self) -> Result<()> {
        let mut stack = vec![Frame { vertex: self.params.start, via: None }];
        while let Some(top) = stack.last() {
            let v = top.vertex;
            debug_assert_eq!(self.state.position(), v);
            match self.choose(v)? {
                Some(e) => {
                    let (y, x) = self.state.orient(self.g, e)?;
                    let approach = self.walk(v, y, StepRole::Approach, e);
                    if self.params.verify_invariants {
                        let limit = (Rational::one() + self.params.delta) * self.g.weight(e);
                        if approach > limit {
                            return Err(Error::InvariantViolation {
                                invariant: "approach charge",
                                witness: format!("walk to edge {e} cost {approach} > (1+delta) w(e) = {limit}"),
                            });
                        }
                    }
                    self.cross(e, y, x)?;
                    stack.push(Frame { vertex: x, via: Some(e) });
                }
                None => {
                    let done = stack.pop().expect("non-empty stack");
                    if let (Some(parent), Some(e)) = (stack.last(), done.via) {
                        let back = parent.vertex;
                        self.walk(done.vertex, back, StepRole::Return, e);
                    }
                }
            }
        }
        Ok(())
    }

    /// The edge the while-condition admits at `v`, if any.
    fn choose(&mut self, v: VertexId) -> Result<Option<EdgeId>> {
        for admission in [Admission::Incident, Admission::Reactivated] {
            let candidates = match admission {
                Admission::Incident => self.state.boundary_at(self.g, v),
                _ => self.state.reactivated_by(v),
            };
            let checks = block_checks(&self.state, self.g, &candidates, self.params.delta, &mut self.balls)?;
            let mut open = Vec::new();
            for (e, check) in candidates.into_iter().zip(checks) {
                if check.blocked {
                    self.state.record_blockers(e, &check.blockers);
                } else {
                    open.push(e);
                }
            }
            if let Some(e) = self.ranker.pick(&open) {
                self.decisions.push(Decision { at: v, edge: e, admission, candidates: open.len() });
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    /// Walks a shortest explored path and returns its cost.
    fn walk(&mut self, from: VertexId, to: VertexId, role: StepRole, charged_to: EdgeId) -> Rational {
        if from == to {
            return Rational::zero();
        }
        let mut cost = Rational::zero();
        for (edge, a, b) in self.state.explored_path(self.g, from, to) {
            let weight = self.g.weight(edge);
            cost += weight;
            self.state.add_cost(weight);
            self.steps.push(Step { edge, from: a, to: b, weight, role, charged_to });
        }
        self.state.set_position(to);
        cost
    }

    fn cross(&mut self, e: EdgeId, y: VertexId, x: VertexId) -> Result<()> {
        let weight = self.g.weight(e);
        self.state.add_cost(weight);
        self.steps.push(Step { edge: e, from: y, to: x, weight, role: StepRole::TakeBoundary, charged_to: e });
        self.taken.insert(e);
        self.state.mark_explored(self.g, x)?;
        self.state.set_position(x);
        Ok(())
    }

    fn finish(self) -> Result<TraversalLog> {
        let Run { g, params, state, steps, decisions, taken, .. } = self;
        if !state.all_explored() {
            if !state.boundary().is_empty() {
                return Err(Error::InvariantViolation {
                    invariant: "completeness",
                    witness: format!("terminated with {} boundary edges left", state.boundary().len()),
                });
            }
            let component = (0..g.vertex_count()).filter(|&v| !state.is_explored(v)).collect();
            return Err(Error::Disconnected { component });
        }
        let log = TraversalLog {
            params: RunParams::Blocking(params.clone()),
            total_cost: state.cost_so_far(),
            steps,
            taken_boundary: taken,
            decisions,
            audit: state.audit(),
            explored: state.explored_count(),
            final_position: state.position(),
        };
        if params.verify_invariants {
            state.check_invariants(g)?;
            if log.final_position != params.start {
                return Err(Error::InvariantViolation {
                    invariant: "return to start",
                    witness: format!("agent ended at {}", log.final_position),
                });
            }
            if log.audit.violations > 0 {
                return Err(Error::InvariantViolation {
                    invariant: "online access",
                    witness: format!("{} reads outside the explored neighbourhood", log.audit.violations),
                });
            }
            let charges = verify_charges(g, &log, params.delta)?;
            if let Some(v) = charges.violations.first() {
                return Err(Error::InvariantViolation { invariant: "cost charging", witness: v.clone() });
            }
            let cycles = verify_blocking_cycle_property(g, &log, params.delta)?;
            if let Some(&e) = cycles.minimality.violations.first() {
                let slack = cycles.minimality.edges.iter().find(|s| s.edge == e).expect("reported edge");
                return Err(Error::InvariantViolation {
                    invariant: "long cycles in B ∪ MST_B",
                    witness: format!("edge {e}: detour {} <= {}", slack.detour, slack.limit),
                });
            }
        }
        Ok(log)
    }
}
