//! Positions of the Ehrenfeucht game `EHR(G, H, k)` and move legality.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// One of the two boards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    G,
    H,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::G => Side::H,
            Side::H => Side::G,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    Spoiler,
    Duplicator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    SpoilerWins,
    DuplicatorWins,
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Winner::SpoilerWins => "spoiler",
            Winner::DuplicatorWins => "duplicator",
        })
    }
}

/// Whether the pick pairs `(g_i, h_i)` define an isomorphism between the
/// induced subgraphs on the distinct picks. Repeated pairs are harmless.
pub fn picks_consistent(g: &Graph, h: &Graph, picks: &[(usize, usize)]) -> bool {
    for (i, &(a, b)) in picks.iter().enumerate() {
        for &(c, d) in &picks[..i] {
            if (a == c) != (b == d) {
                return false;
            }
            if a != c && g.is_adjacent(a, c) != h.is_adjacent(b, d) {
                return false;
            }
        }
    }
    true
}

/// A position of `EHR(G, H, k)`.
///
/// Spoiler picks a vertex on either board; Duplicator answers on the other
/// board. Re-picking a vertex forces its recorded partner; a fresh vertex must
/// be answered with a fresh vertex.
#[derive(Debug, Clone)]
pub struct GameState<'a> {
    g: &'a Graph,
    h: &'a Graph,
    picks: Vec<(usize, usize)>,
    rounds: usize,
    pending: Option<(Side, usize)>,
}

impl<'a> GameState<'a> {
    pub fn new(g: &'a Graph, h: &'a Graph, rounds: usize) -> Self {
        GameState {
            g,
            h,
            picks: Vec::new(),
            rounds,
            pending: None,
        }
    }

    /// A position after the given completed rounds.
    pub fn with_picks(g: &'a Graph, h: &'a Graph, rounds: usize, picks: &[(usize, usize)]) -> Result<Self> {
        if picks.len() > rounds {
            return Err(Error::domain(format!("{} picks exceed {rounds} rounds", picks.len())));
        }
        for &(a, b) in picks {
            g.check_vertex(a)?;
            h.check_vertex(b)?;
        }
        for (i, &(a, b)) in picks.iter().enumerate() {
            for &(c, d) in &picks[..i] {
                if (a == c) != (b == d) {
                    return Err(Error::domain(format!(
                        "picks ({a},{b}) and ({c},{d}) break the repeat rule"
                    )));
                }
            }
        }
        Ok(GameState {
            g,
            h,
            picks: picks.to_vec(),
            rounds,
            pending: None,
        })
    }

    pub fn graph(&self, side: Side) -> &'a Graph {
        match side {
            Side::G => self.g,
            Side::H => self.h,
        }
    }

    pub fn picks(&self) -> &[(usize, usize)] {
        &self.picks
    }

    pub fn rounds_total(&self) -> usize {
        self.rounds
    }

    pub fn rounds_played(&self) -> usize {
        self.picks.len()
    }

    pub fn pending(&self) -> Option<(Side, usize)> {
        self.pending
    }

    /// Vertices already picked on `side`, in round order.
    pub fn picked_on(&self, side: Side) -> Vec<usize> {
        self.picks
            .iter()
            .map(|&(a, b)| if side == Side::G { a } else { b })
            .collect()
    }

    pub fn side_to_move(&self) -> Option<Player> {
        if self.is_over() {
            None
        } else if self.pending.is_some() {
            Some(Player::Duplicator)
        } else {
            Some(Player::Spoiler)
        }
    }

    pub fn spoiler_move(&mut self, side: Side, v: usize) -> Result<()> {
        if self.pending.is_some() || self.picks.len() >= self.rounds {
            return Err(Error::domain("it is not Spoiler's turn"));
        }
        self.graph(side).check_vertex(v)?;
        self.pending = Some((side, v));
        Ok(())
    }

    /// The partner Duplicator is forced to take when Spoiler repeats a vertex.
    pub fn forced_reply(&self) -> Option<usize> {
        let (side, v) = self.pending?;
        self.picks.iter().find_map(|&(a, b)| match side {
            Side::G if a == v => Some(b),
            Side::H if b == v => Some(a),
            _ => None,
        })
    }

    /// Legal answers to the pending Spoiler move, in ascending order.
    pub fn legal_replies(&self) -> Vec<usize> {
        let Some((side, _)) = self.pending else {
            return Vec::new();
        };
        if let Some(v) = self.forced_reply() {
            return vec![v];
        }
        let board = side.other();
        let used = self.picked_on(board);
        (0..self.graph(board).vertex_count())
            .filter(|v| !used.contains(v))
            .collect()
    }

    pub fn duplicator_move(&mut self, v: usize) -> Result<()> {
        let Some((side, x)) = self.pending else {
            return Err(Error::domain("it is not Duplicator's turn"));
        };
        if !self.legal_replies().contains(&v) {
            return Err(Error::domain(format!("vertex {v} is not a legal reply")));
        }
        self.picks.push(match side {
            Side::G => (x, v),
            Side::H => (v, x),
        });
        self.pending = None;
        Ok(())
    }

    /// True once all rounds are played, or when Duplicator has no legal reply.
    pub fn is_over(&self) -> bool {
        if self.pending.is_some() {
            return self.legal_replies().is_empty();
        }
        self.picks.len() >= self.rounds
    }

    /// Whether the distinct picked pairs preserve equality and adjacency.
    pub fn partial_isomorphism_ok(&self) -> bool {
        picks_consistent(self.g, self.h, &self.picks)
    }

    /// The winner of a finished game; `None` while play continues.
    pub fn winner(&self) -> Option<Winner> {
        if !self.is_over() {
            return None;
        }
        if self.pending.is_some() || !self.partial_isomorphism_ok() {
            Some(Winner::SpoilerWins)
        } else {
            Some(Winner::DuplicatorWins)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirrored_picks_are_consistent() {
        let g = Graph::cycle(5).unwrap();
        let mut s = GameState::new(&g, &g, 3);
        for v in [0, 2, 3] {
            s.spoiler_move(Side::G, v).unwrap();
            s.duplicator_move(v).unwrap();
        }
        assert!(s.partial_isomorphism_ok());
        assert_eq!(s.winner(), Some(Winner::DuplicatorWins));
    }

    #[test]
    fn adjacency_mismatch_loses() {
        let g = Graph::complete(3);
        let h = Graph::path(3);
        let s = GameState::with_picks(&g, &h, 2, &[(0, 0), (1, 2)]).unwrap();
        assert!(!s.partial_isomorphism_ok());
        assert_eq!(s.winner(), Some(Winner::SpoilerWins));
    }

    #[test]
    fn repeated_pick_forces_partner_and_collapses() {
        let g = Graph::path(3);
        let mut s = GameState::new(&g, &g, 3);
        s.spoiler_move(Side::G, 1).unwrap();
        s.duplicator_move(1).unwrap();
        s.spoiler_move(Side::H, 1).unwrap();
        assert_eq!(s.forced_reply(), Some(1));
        assert_eq!(s.legal_replies(), vec![1]);
        assert!(s.duplicator_move(0).is_err());
        s.duplicator_move(1).unwrap();
        assert!(s.partial_isomorphism_ok());
    }

    #[test]
    fn fresh_pick_needs_fresh_reply() {
        let g = Graph::complete(2);
        let h = Graph::empty(1);
        let mut s = GameState::new(&g, &h, 2);
        s.spoiler_move(Side::G, 0).unwrap();
        s.duplicator_move(0).unwrap();
        s.spoiler_move(Side::G, 1).unwrap();
        assert!(s.legal_replies().is_empty());
        assert!(s.is_over());
        assert_eq!(s.winner(), Some(Winner::SpoilerWins));
    }

    #[test]
    fn turn_order_is_enforced() {
        let g = Graph::path(2);
        let mut s = GameState::new(&g, &g, 1);
        assert!(s.duplicator_move(0).is_err());
        s.spoiler_move(Side::G, 0).unwrap();
        assert!(s.spoiler_move(Side::G, 1).is_err());
        s.duplicator_move(0).unwrap();
        assert!(s.spoiler_move(Side::G, 1).is_err());
    }
}
