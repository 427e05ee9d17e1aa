//! A numbers-game session: a graph, a start position and a move list.
//! Shared by the HTTP service and the interactive `play` mode.

use serde::Serialize;
use weighted_coxeter::classify::{classify, DEFAULT_PROBE_BOUND};
use weighted_coxeter::cyclotomic::exact_vec;
use weighted_coxeter::game::Move;
use weighted_coxeter::{
    Cyclotomic, EdgeCoefficients, MoveClass, NumbersGame, PlayRecord, Verdict, WeightedGraph,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SessionError {
    /// Bad input: unknown vertex, illegal weights, nothing to undo.
    Invalid(String),
    /// The graph admits no numbers game (unbalanced weights).
    Unavailable(String),
}

impl std::fmt::Display for SessionError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SessionError::Invalid(m) | SessionError::Unavailable(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub kind: &'static str,
    pub faithful: Option<bool>,
    pub summary: String,
}

impl From<&Verdict> for VerdictSummary {
    fn from(v: &Verdict) -> Self {
        VerdictSummary {
            kind: v.kind(),
            faithful: v.is_faithful(),
            summary: v.to_string(),
        }
    }
}

/// Snapshot of a session. Vertices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SessionState {
    pub vertices: usize,
    /// `classical`, `generalized`, or `unavailable`.
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unavailable: Option<String>,
    #[serde(serialize_with = "exact_vec")]
    pub start: Vec<Cyclotomic>,
    #[serde(serialize_with = "exact_vec")]
    pub position: Vec<Cyclotomic>,
    /// Sign class of each coordinate, i.e. of firing that vertex next.
    pub classes: Vec<MoveClass>,
    pub descent_set: Vec<usize>,
    pub word: Vec<usize>,
    pub moves: Vec<Move>,
    pub reduced: bool,
    pub verdict: VerdictSummary,
}

pub struct Session {
    graph: WeightedGraph,
    game: Result<NumbersGame, String>,
    record: PlayRecord,
    verdict: VerdictSummary,
}

/// Classical game when every weight is 1, generalized otherwise.
pub fn build_game(
    graph: &WeightedGraph,
    ell: &EdgeCoefficients,
) -> weighted_coxeter::Result<NumbersGame> {
    if graph.weights.iter().all(|(_, w)| w.is_one()) {
        NumbersGame::classical(&graph.graph, ell)
    } else {
        NumbersGame::generalized(&graph.graph, &graph.weights, ell)
    }
}

impl Session {
    pub fn new(
        graph: WeightedGraph,
        start: Option<Vec<Cyclotomic>>,
        asymmetric_k: bool,
    ) -> Result<Self, SessionError> {
        let violations = graph.validate();
        if !violations.is_empty() {
            let msgs: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(SessionError::Invalid(format!(
                "illegal weights: {}",
                msgs.join("; ")
            )));
        }
        let ell = if asymmetric_k {
            EdgeCoefficients::asymmetric_integers(&graph.graph)
        } else {
            EdgeCoefficients::symmetric(&graph.graph)
        };
        let verdict = classify(&graph.graph, &graph.weights, DEFAULT_PROBE_BOUND)
            .map_err(|e| SessionError::Invalid(e.to_string()))?;
        let game = build_game(&graph, &ell).map_err(|e| e.to_string());
        let n = graph.vertex_count();
        let start = match start {
            Some(s) if s.len() != n => {
                return Err(SessionError::Invalid(format!(
                    "start has {} entries, expected {n}",
                    s.len()
                )))
            }
            Some(s) => s,
            None => match &game {
                Ok(g) => g.unit_start(),
                Err(_) => vec![Cyclotomic::one(); n],
            },
        };
        Ok(Session {
            graph,
            game,
            record: PlayRecord {
                start,
                moves: Vec::new(),
                positions: Vec::new(),
            },
            verdict: (&verdict).into(),
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn record(&self) -> &PlayRecord {
        &self.record
    }

    fn game(&self) -> Result<&NumbersGame, SessionError> {
        self.game
            .as_ref()
            .map_err(|e| SessionError::Unavailable(e.clone()))
    }

    /// Fires a 1-based vertex and returns the class of the move.
    pub fn fire(&mut self, vertex: usize) -> Result<MoveClass, SessionError> {
        let n = self.graph.vertex_count();
        if vertex == 0 || vertex > n {
            return Err(SessionError::Invalid(format!(
                "vertex {vertex} out of range 1..={n}"
            )));
        }
        let game = self.game()?;
        let v = vertex - 1;
        let p = self.record.final_position();
        let class = game
            .move_class(p, v)
            .map_err(|e| SessionError::Invalid(e.to_string()))?;
        let q = game
            .fire(p, v)
            .map_err(|e| SessionError::Invalid(e.to_string()))?;
        self.record.moves.push(Move { vertex: v, class });
        self.record.positions.push(q);
        Ok(class)
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        if self.record.moves.pop().is_none() {
            return Err(SessionError::Invalid("nothing to undo".into()));
        }
        self.record.positions.pop();
        Ok(())
    }

    pub fn reset(&mut self) {
        self.record.moves.clear();
        self.record.positions.clear();
    }

    pub fn state(&self) -> SessionState {
        let position = self.record.final_position().to_vec();
        let word0 = self.record.word();
        let (mode, unavailable, classes, descent, reduced) = match &self.game {
            Ok(g) => {
                let classes = (0..g.vertex_count())
                    .map(|v| {
                        g.move_class(&position, v)
                            .expect("position has the game's dimension")
                    })
                    .collect();
                let descent = g
                    .negative_coordinates(&position)
                    .expect("position has the game's dimension");
                let reduced = g.is_reduced(&word0).expect("recorded moves are in range");
                let mode = match g.mode() {
                    weighted_coxeter::game::GameMode::Classical => "classical",
                    weighted_coxeter::game::GameMode::Generalized => "generalized",
                };
                (mode, None, classes, descent, reduced)
            }
            Err(e) => ("unavailable", Some(e.clone()), Vec::new(), Vec::new(), true),
        };
        SessionState {
            vertices: self.graph.vertex_count(),
            mode,
            unavailable,
            start: self.record.start.clone(),
            position,
            classes,
            descent_set: descent.into_iter().map(|v| v + 1).collect(),
            word: word0.into_iter().map(|v| v + 1).collect(),
            moves: self.record.moves.clone(),
            reduced,
            verdict: self.verdict.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn session(src: &str) -> Session {
        Session::new(WeightedGraph::parse(src).unwrap(), None, false).unwrap()
    }

    #[test]
    fn a2_fire_undo_reset() {
        let mut s = session("vertices 2\nedge 1 2\n");
        assert_eq!(s.fire(1).unwrap(), MoveClass::Positive);
        let st = s.state();
        assert_eq!(
            st.position,
            vec![Cyclotomic::from_integer(-1), Cyclotomic::from_integer(2)]
        );
        assert_eq!(st.descent_set, vec![1]);
        assert_eq!(st.word, vec![1]);
        assert!(st.reduced);
        s.fire(1).unwrap();
        assert!(!s.state().reduced);
        s.undo().unwrap();
        assert_eq!(s.state(), st);
        s.reset();
        assert!(s.state().word.is_empty());
        assert!(s.undo().is_err());
        assert!(matches!(s.fire(3), Err(SessionError::Invalid(_))));
    }

    #[test]
    fn unbalanced_graph_refuses_moves() {
        let mut s = session("vertices 3\nedge 1 2\nedge 2 3\nedge 3 1 w=-1\n");
        assert_eq!(s.state().mode, "unavailable");
        assert_eq!(s.state().verdict.kind, "not_faithful");
        assert!(matches!(s.fire(1), Err(SessionError::Unavailable(_))));
    }

    #[test]
    fn generalized_mode_uses_pseudo_classes() {
        let mut s = session("vertices 2\nedge 1 2 w=-1\n");
        assert_eq!(s.state().mode, "generalized");
        assert_eq!(s.fire(1).unwrap(), MoveClass::PseudoPositive);
        assert_eq!(s.state().descent_set, vec![1]);
    }
}
