//! Exact game values by memoized minimax.

use std::collections::HashMap;

use super::state::{picks_consistent, Side, Winner};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest accepted `(v(G) · v(H))^rounds` for a solve.
pub const DEFAULT_GAME_GUARD: u64 = 1_000_000_000;

/// Memoized solver for one pair of boards.
///
/// Positions are keyed by the set of distinct pick pairs and the number of
/// rounds left: the order of past picks and repeated picks never change the
/// future of the game. The table persists across queries, so a solver can
/// referee a whole sweep of playouts on the same boards.
pub struct Solver<'a> {
    g: &'a Graph,
    h: &'a Graph,
    guard: u64,
    memo: HashMap<(Vec<(u32, u32)>, usize), bool>,
}

impl<'a> Solver<'a> {
    pub fn new(g: &'a Graph, h: &'a Graph) -> Self {
        Self::with_guard(g, h, DEFAULT_GAME_GUARD)
    }

    pub fn with_guard(g: &'a Graph, h: &'a Graph, guard: u64) -> Self {
        Solver {
            g,
            h,
            guard,
            memo: HashMap::new(),
        }
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn check_cost(&self, rounds: usize) -> Result<()> {
        let base = (self.g.vertex_count() as u128) * (self.h.vertex_count() as u128);
        let mut cost: u128 = 1;
        for _ in 0..rounds {
            cost = cost.saturating_mul(base);
            if cost > self.guard as u128 {
                return Err(Error::Capacity {
                    what: "game positions (v(G)·v(H))^rounds",
                    value: cost.min(u64::MAX as u128) as u64,
                    cap: self.guard,
                });
            }
        }
        Ok(())
    }

    fn board(&self, side: Side) -> &'a Graph {
        match side {
            Side::G => self.g,
            Side::H => self.h,
        }
    }

    fn validate(&self, picks: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
        let mut distinct: Vec<(usize, usize)> = Vec::with_capacity(picks.len());
        for &(a, b) in picks {
            self.g.check_vertex(a)?;
            self.h.check_vertex(b)?;
            if !distinct.contains(&(a, b)) {
                distinct.push((a, b));
            }
        }
        Ok(distinct)
    }

    /// Whether Duplicator wins from the position with these picks and
    /// `rounds_left` rounds still to play.
    pub fn duplicator_wins(&mut self, picks: &[(usize, usize)], rounds_left: usize) -> Result<bool> {
        self.check_cost(rounds_left)?;
        let mut picks = self.validate(picks)?;
        if !picks_consistent(self.g, self.h, &picks) {
            return Ok(false);
        }
        Ok(self.value(&mut picks, rounds_left))
    }

    /// Duplicator's answer to Spoiler picking `x` on `side`, with
    /// `rounds_after` rounds left once this one is answered.
    ///
    /// Returns the reply and whether it keeps a won position. When every
    /// reply loses, the first consistent reply (or else the first legal one)
    /// is returned. Errors when no legal reply exists.
    pub fn best_reply(
        &mut self,
        picks: &[(usize, usize)],
        side: Side,
        x: usize,
        rounds_after: usize,
    ) -> Result<(usize, bool)> {
        self.check_cost(rounds_after)?;
        self.board(side).check_vertex(x)?;
        let picks = self.validate(picks)?;
        let consistent = picks_consistent(self.g, self.h, &picks);
        let pair = |y: usize| match side {
            Side::G => (x, y),
            Side::H => (y, x),
        };
        let mine = |&(a, b): &(usize, usize)| if side == Side::G { a } else { b };
        let theirs = |&(a, b): &(usize, usize)| if side == Side::G { b } else { a };
        if let Some(p) = picks.iter().find(|p| mine(p) == x) {
            let y = theirs(p);
            let mut ps = picks.clone();
            let wins = consistent && self.value(&mut ps, rounds_after);
            return Ok((y, wins));
        }
        let other = self.board(side.other());
        let used: Vec<usize> = picks.iter().map(theirs).collect();
        let free: Vec<usize> = (0..other.vertex_count()).filter(|v| !used.contains(v)).collect();
        let Some(&first) = free.first() else {
            return Err(Error::domain("Duplicator has no legal reply"));
        };
        let mut fallback = None;
        for &y in &free {
            let mut ps = picks.clone();
            ps.push(pair(y));
            if !consistent || !picks_consistent(self.g, self.h, &ps) {
                continue;
            }
            fallback.get_or_insert(y);
            if self.value(&mut ps, rounds_after) {
                return Ok((y, true));
            }
        }
        Ok((fallback.unwrap_or(first), false))
    }

    /// A Spoiler move for the position with `rounds_left ≥ 1` rounds left,
    /// and whether it wins against every reply. Without a winning move the
    /// first vertex of `G` is returned.
    pub fn best_spoiler_move(&mut self, picks: &[(usize, usize)], rounds_left: usize) -> Result<(Side, usize, bool)> {
        if rounds_left == 0 {
            return Err(Error::domain("no rounds left"));
        }
        self.check_cost(rounds_left)?;
        for side in [Side::G, Side::H] {
            for x in 0..self.board(side).vertex_count() {
                if !self.best_reply(picks, side, x, rounds_left - 1)?.1 {
                    return Ok((side, x, true));
                }
            }
        }
        if self.g.vertex_count() == 0 {
            return Err(Error::domain("empty board"));
        }
        Ok((Side::G, 0, false))
    }

    /// Adjacency signature of every vertex of `board` relative to the picks,
    /// or `None` for picked vertices.
    fn signatures(&self, side: Side, picks: &[(usize, usize)]) -> Vec<Option<u64>> {
        let board = self.board(side);
        let mut sig = vec![Some(0u64); board.vertex_count()];
        for (i, &(a, b)) in picks.iter().enumerate() {
            let p = if side == Side::G { a } else { b };
            sig[p] = None;
            for &w in board.neighbors(p) {
                if let Some(s) = sig[w].as_mut() {
                    *s |= 1 << i;
                }
            }
        }
        sig
    }

    /// Game value for consistent, distinct `picks`; restores `picks` on return.
    fn value(&mut self, picks: &mut Vec<(usize, usize)>, rounds_left: usize) -> bool {
        if rounds_left == 0 {
            return true;
        }
        let sg = self.signatures(Side::G, picks);
        let sh = self.signatures(Side::H, picks);
        if rounds_left == 1 {
            let mut a: Vec<u64> = sg.iter().flatten().copied().collect();
            let mut b: Vec<u64> = sh.iter().flatten().copied().collect();
            a.sort_unstable();
            a.dedup();
            b.sort_unstable();
            b.dedup();
            return a == b;
        }
        let mut key: Vec<(u32, u32)> = picks.iter().map(|&(a, b)| (a as u32, b as u32)).collect();
        key.sort_unstable();
        let key = (key, rounds_left);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let mut result = true;
        'moves: for side in [Side::G, Side::H] {
            let (mine, theirs) = match side {
                Side::G => (&sg, &sh),
                Side::H => (&sh, &sg),
            };
            let board = self.board(side);
            let other = self.board(side.other());
            for (x, slot) in mine.iter().enumerate() {
                let Some(s) = *slot else { continue };
                let mut replies: Vec<usize> = (0..other.vertex_count()).filter(|&y| theirs[y] == Some(s)).collect();
                replies.sort_by_key(|&y| other.degree(y).abs_diff(board.degree(x)));
                let mut answered = false;
                for y in replies {
                    picks.push(if side == Side::G { (x, y) } else { (y, x) });
                    let ok = self.value(picks, rounds_left - 1);
                    picks.pop();
                    if ok {
                        answered = true;
                        break;
                    }
                }
                if !answered {
                    result = false;
                    break 'moves;
                }
            }
        }
        self.memo.insert(key, result);
        result
    }
}

/// The winner of `EHR(G, H, k)` under optimal play.
pub fn solve(g: &Graph, h: &Graph, k: usize) -> Result<Winner> {
    solve_capped(g, h, k, DEFAULT_GAME_GUARD)
}

pub fn solve_capped(g: &Graph, h: &Graph, k: usize, guard: u64) -> Result<Winner> {
    let mut s = Solver::with_guard(g, h, guard);
    Ok(if s.duplicator_wins(&[], k)? {
        Winner::DuplicatorWins
    } else {
        Winner::SpoilerWins
    })
}
