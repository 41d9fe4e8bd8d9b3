//! Resumable search state.
//!
//! A checkpoint stores the color path to the next unexplored node: every
//! subtree ordered before that path is finished, the node itself is not.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{SearchError, SearchProblem, SearchStats};
use crate::coloring::Color;
use crate::format::write_atomic;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub id: String,
    pub problem_hash: String,
    pub problem: SearchProblem,
    pub path: Vec<Color>,
    pub stats: SearchStats,
}

/// FNV-1a over the problem's JSON form with the budget zeroed, so a run
/// can be resumed under a larger budget.
pub fn problem_hash(p: &SearchProblem) -> String {
    let mut q = p.clone();
    q.budget = 0;
    let json = serde_json::to_string(&q).expect("problem serializes");
    let mut h: u64 = 0xcbf29ce484222325;
    for b in json.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

impl Checkpoint {
    pub fn new(problem: &SearchProblem, path: Vec<Color>, stats: SearchStats) -> Self {
        let problem_hash = problem_hash(problem);
        Self {
            id: format!("{problem_hash}-{}", stats.nodes),
            problem_hash,
            problem: problem.clone(),
            path,
            stats,
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let text = serde_json::to_string_pretty(self).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
        write_atomic(path, &text, true).map_err(|e| SearchError::Checkpoint(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, SearchError> {
        let text = std::fs::read_to_string(path).map_err(|e| SearchError::Checkpoint(e.to_string()))?;
        serde_json::from_str(&text).map_err(|e| SearchError::Checkpoint(e.to_string()))
    }

    /// Rejects checkpoints written for a different problem.
    pub fn check(&self, problem: &SearchProblem) -> Result<(), SearchError> {
        let expect = problem_hash(problem);
        if self.problem_hash != expect || problem_hash(&self.problem) != expect {
            return Err(SearchError::Checkpoint(format!(
                "checkpoint {} belongs to problem {}, not {expect}",
                self.id, self.problem_hash
            )));
        }
        Ok(())
    }
}
