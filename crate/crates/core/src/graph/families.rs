use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// Named graph families with frozen vertex numberings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `P_n`, vertices in path order.
    Path,
    /// `C_n`, vertices in cyclic order.
    Cycle,
    /// `K_n`.
    Complete,
    /// `n` isolated vertices.
    Coclique,
    /// `nK_2`, pairs `(2i, 2i+1)`.
    Matching,
    /// Complement of `nK_2`, same numbering as the matching.
    CoMatching,
    /// `P_4` on `0..4` plus the nose `4` adjacent to `1` and `2`. Ignores `n`.
    Bull,
    /// `R_n` from the clique/co-clique description, numbered level-major.
    Stacked,
    /// `R_n` by repeatedly inflating the nose of the bull.
    StackedInductive,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Path,
        Family::Cycle,
        Family::Complete,
        Family::Coclique,
        Family::Matching,
        Family::CoMatching,
        Family::Bull,
        Family::Stacked,
        Family::StackedInductive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Coclique => "coclique",
            Family::Matching => "matching",
            Family::CoMatching => "comatching",
            Family::Bull => "bull",
            Family::Stacked => "stacked",
            Family::StackedInductive => "stacked-inductive",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    pub fn build(self, n: usize) -> Result<Graph> {
        Ok(match self {
            Family::Path => Graph::from_fn(n, |u, v| v == u + 1),
            Family::Cycle => {
                if (1..3).contains(&n) {
                    return Err(Error::InvalidParameter(format!(
                        "a simple cycle needs at least 3 vertices, got {n}"
                    )));
                }
                Graph::from_fn(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
            }
            Family::Complete => Graph::from_fn(n, |_, _| true),
            Family::Coclique => Graph::empty(n),
            Family::Matching => Graph::from_fn(2 * n, |u, v| u / 2 == v / 2),
            Family::CoMatching => Graph::from_fn(2 * n, |u, v| u / 2 != v / 2),
            Family::Bull => bull(),
            Family::Stacked => stacked_path(n)?.0,
            Family::StackedInductive => stacked_path_inductive(n)?,
        })
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

pub fn bull() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (2, 4)]).expect("static edge list")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StackedSide {
    /// Member of the co-clique `S`.
    S,
    /// Member of the clique `C`.
    C,
}

/// Role of one vertex of `R_n`: side, level (1 = outermost) and slot (1 or 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StackedRole {
    pub side: StackedSide,
    pub level: usize,
    pub slot: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackedPathLabels {
    pub roles: Vec<StackedRole>,
}

impl StackedPathLabels {
    pub fn levels(&self) -> usize {
        self.roles.len() / 4
    }

    /// Vertex id carrying the given role. Levels and slots are 1-based.
    pub fn vertex(&self, side: StackedSide, level: usize, slot: usize) -> usize {
        let base = 4 * (level - 1);
        base + match (side, slot) {
            (StackedSide::S, 1) => 0,
            (StackedSide::C, 1) => 1,
            (StackedSide::C, 2) => 2,
            (StackedSide::S, 2) => 3,
            _ => panic!("slot must be 1 or 2"),
        }
    }

    /// The four vertices of a level in path order `s_1, c_1, c_2, s_2`.
    pub fn level(&self, level: usize) -> [usize; 4] {
        let b = 4 * (level - 1);
        [b, b + 1, b + 2, b + 3]
    }
}

/// `R_n` on clique `{c_ij}` and co-clique `{s_ij}`:
/// `s_{a,x} ~ c_{b,y}` iff `a > b`, or `a = b` and `x = y`.
pub fn stacked_path(n: usize) -> Result<(Graph, StackedPathLabels)> {
    if n == 0 {
        return Err(Error::InvalidParameter("stacked path needs n >= 1".into()));
    }
    let roles: Vec<StackedRole> = (1..=n)
        .flat_map(|level| {
            [
                (StackedSide::S, 1),
                (StackedSide::C, 1),
                (StackedSide::C, 2),
                (StackedSide::S, 2),
            ]
            .map(|(side, slot)| StackedRole { side, level, slot })
        })
        .collect();
    let adjacent = |a: &StackedRole, b: &StackedRole| match (a.side, b.side) {
        (StackedSide::C, StackedSide::C) => true,
        (StackedSide::S, StackedSide::S) => false,
        (StackedSide::S, StackedSide::C) => {
            a.level > b.level || (a.level == b.level && a.slot == b.slot)
        }
        (StackedSide::C, StackedSide::S) => {
            b.level > a.level || (a.level == b.level && a.slot == b.slot)
        }
    };
    let g = Graph::from_fn(roles.len(), |u, v| adjacent(&roles[u], &roles[v]));
    Ok((g, StackedPathLabels { roles }))
}

/// `R_1 = P_4`; `R_n` inflates the bull's nose by `R_{n-1}`.
pub fn stacked_path_inductive(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("stacked path needs n >= 1".into()));
    }
    let mut r = Family::Path.build(4)?;
    let single = Graph::empty(1);
    for _ in 1..n {
        let modules = [
            single.clone(),
            single.clone(),
            single.clone(),
            single.clone(),
            r,
        ];
        r = bull().inflate(&modules)?.0;
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ThresholdStep {
    Isolated,
    Dominating,
}

impl ThresholdStep {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'i' => Some(ThresholdStep::Isolated),
            'd' => Some(ThresholdStep::Dominating),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            ThresholdStep::Isolated => 'i',
            ThresholdStep::Dominating => 'd',
        }
    }

    /// Parses a creation sequence such as `"iidd"`.
    pub fn parse_sequence(s: &str) -> Result<Vec<ThresholdStep>> {
        s.chars()
            .map(|c| {
                ThresholdStep::from_char(c).ok_or_else(|| {
                    Error::InvalidParameter(format!("creation step '{c}' is not 'i' or 'd'"))
                })
            })
            .collect()
    }
}

/// Threshold graph; vertex `t` is the `t`-th added vertex.
pub fn threshold(steps: &[ThresholdStep]) -> Graph {
    Graph::from_fn(steps.len(), |_, v| {
        // u < v, so v was added later and decides the edge
        steps[v] == ThresholdStep::Dominating
    })
}
