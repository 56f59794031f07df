//! Duplicator's scripted strategy.
//!
//! The script keeps a pair of isomorphic structures (one list of subgraphs per
//! board) together with an isomorphism between them. Every scripted reply is
//! accepted only if the structures it produces pass a certificate check for
//! the next round; otherwise the exact solver answers and the context records
//! why. Once a regular certificate holds, the remaining rounds are handed to
//! the solver as well.

use std::cell::RefCell;
use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use super::certificate::{check_kr_equivalence, check_regular_equivalence, CertParams, CertProperty};
use super::chain::build_extension_chain;
use super::embed::{find_induced_copy, map_subgraph, Accept, DEFAULT_EMBED_BUDGET};
use super::membership::{constraint_family, is_maximal_for_all};
use super::solve::Solver;
use super::state::{picks_consistent, GameState, Side, Winner};
use crate::error::{Error, Result};
use crate::graph::{Distance, Graph};
use crate::pairs::{enumerate_cyclic_extensions, is_cyclically_m_maximal, Alpha, RootedPair, Subgraph};

/// Parameters of the scripted strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyConfig {
    /// Number of rounds of the game.
    pub k: u32,
    pub alpha: Alpha,
    /// Constant of the certificate size bound.
    pub b: u64,
    /// Largest constraint pattern used when a copy must be maximal.
    pub constraint_v: usize,
    /// Search nodes per embedding search.
    pub embed_budget: usize,
    /// Most shortest paths tried when attaching a pick to the structure.
    pub path_limit: usize,
}

impl StrategyConfig {
    pub fn new(k: u32, alpha: Alpha) -> Self {
        StrategyConfig {
            k,
            alpha,
            b: 1,
            constraint_v: 3,
            embed_budget: DEFAULT_EMBED_BUDGET,
            path_limit: 16,
        }
    }
}

/// Why the solver took over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Fallback {
    /// A regular certificate holds: the closing strategy applies.
    Sf,
    /// The other board lacks a structure the script needs.
    MissingStructure,
    /// The first-round chain exceeded its length guard.
    ChainGuard,
    /// The first-round chain closes to a graph denser than `1/α`.
    ClosureFailed,
    /// Candidate replies exist but none yields a valid certificate.
    CertificateRejected,
}

/// Which part of the script is active.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Phase {
    /// No round played yet: the first-round script applies.
    Fresh,
    /// A full isomorphism between the boards is known.
    Mirror,
    /// One pair of structures with a `(k, r)` certificate.
    Kr,
    /// One pair of structures with a unique cyclic extension on the spoiler side.
    Path,
    /// Isomorphic structures covering the picks before the final round.
    LastRound,
    /// A regular certificate holds; the solver plays on.
    Regular,
    /// All rounds played.
    Finished,
    /// The solver plays on after a fallback.
    Solver,
}

/// How a reply was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    Forced,
    Mirror,
    /// First round, no cyclic extension around the pick.
    Lonely,
    /// First round, copy of the closure of the extension chain.
    Closure,
    /// First round, copy of the chain prefix before a long step.
    Core,
    /// Image of the pick under the recorded isomorphism.
    Image,
    /// Pick joined to the structure by a shortest path.
    Near,
    /// Pick far from the structure: a new separated component.
    Far,
    /// Final round: a fresh vertex with the same adjacency to the picks.
    Signature,
    Solver,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub round: usize,
    pub side: Side,
    pub pick: usize,
    pub reply: usize,
    pub rule: Rule,
    /// Phase after the move.
    pub phase: Phase,
}

/// State of the scripted strategy across the rounds of one game.
#[derive(Debug, Clone)]
pub struct StrategyContext {
    config: StrategyConfig,
    family: Vec<RootedPair>,
    phase: Phase,
    tuples_g: Vec<Subgraph>,
    tuples_h: Vec<Subgraph>,
    /// Isomorphism of the structures as `(g, h)` pairs.
    phi: Vec<(usize, usize)>,
    pub log: Vec<MoveRecord>,
    pub fallbacks: Vec<(usize, Fallback)>,
}

/// A scripted reply with the structures it leads to, in board orientation:
/// `x` is the board Spoiler used, `y` the other.
struct Proposal {
    y: usize,
    tx: Vec<Subgraph>,
    ty: Vec<Subgraph>,
    phi: Vec<(usize, usize)>,
    phase: Phase,
}

fn image(map: &[(usize, usize)], v: usize) -> Option<usize> {
    map.iter().find(|p| p.0 == v).map(|p| p.1)
}

fn swap(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (b, a)).collect()
}

fn union_all(tuples: &[Subgraph]) -> Subgraph {
    tuples
        .iter()
        .fold(Subgraph::from_parts_unchecked(Vec::new(), Vec::new()), |acc, t| {
            acc.union(t)
        })
}

fn single(v: usize) -> Subgraph {
    Subgraph::from_parts_unchecked(vec![v], Vec::new())
}

fn path_subgraph(path: &[usize]) -> Subgraph {
    Subgraph::from_parts_unchecked(path.to_vec(), path.windows(2).map(|w| (w[0], w[1])).collect())
}

/// Sorted degree multisets of the distance layers `1..=2` around `v`.
fn profile(g: &Graph, v: usize) -> Vec<Vec<usize>> {
    let dist = g.bfs(v);
    (1..=2)
        .map(|d| {
            let mut layer: Vec<usize> = (0..g.vertex_count())
                .filter(|&w| dist[w] == Distance::Finite(d))
                .map(|w| g.degree(w))
                .collect();
            layer.sort_unstable();
            layer
        })
        .collect()
}

/// Shortest paths from `x` into `target`, each listed from `x`, at most `limit`.
fn shortest_paths(g: &Graph, x: usize, target: &[usize], limit: usize) -> Vec<Vec<usize>> {
    let dist = g.bfs_from_set(target);
    let mut out = Vec::new();
    fn rec(g: &Graph, dist: &[Distance], path: &mut Vec<usize>, limit: usize, out: &mut Vec<Vec<usize>>) {
        if out.len() >= limit {
            return;
        }
        let v = *path.last().unwrap();
        let Distance::Finite(d) = dist[v] else { return };
        if d == 0 {
            out.push(path.clone());
            return;
        }
        for &w in g.neighbors(v) {
            if dist[w] == Distance::Finite(d - 1) {
                path.push(w);
                rec(g, dist, path, limit, out);
                path.pop();
            }
        }
    }
    rec(g, &dist, &mut vec![x], limit, &mut out);
    out
}

impl StrategyContext {
    pub fn new(config: StrategyConfig) -> Result<Self> {
        if config.k == 0 || config.k > 20 {
            return Err(Error::domain(format!("k = {} outside 1..=20", config.k)));
        }
        let family = constraint_family(config.alpha, config.constraint_v)?;
        Ok(StrategyContext {
            config,
            family,
            phase: Phase::Fresh,
            tuples_g: Vec::new(),
            tuples_h: Vec::new(),
            phi: Vec::new(),
            log: Vec::new(),
            fallbacks: Vec::new(),
        })
    }

    /// A context that answers every pick through a known isomorphism
    /// `g → h`, given as `map[g] = h`.
    pub fn mirror(config: StrategyConfig, g: &Graph, h: &Graph, map: &[usize]) -> Result<Self> {
        if map.len() != g.vertex_count() || g.vertex_count() != h.vertex_count() {
            return Err(Error::domain("mirror map must cover both boards"));
        }
        let pairs: Vec<(usize, usize)> = map.iter().copied().enumerate().collect();
        let whole_g = Subgraph::whole(g);
        let whole_h = Subgraph::whole(h);
        if !super::certificate::is_tuple_isomorphism(
            std::slice::from_ref(&whole_g),
            std::slice::from_ref(&whole_h),
            &[],
            &pairs,
        ) {
            return Err(Error::domain("mirror map is not an isomorphism"));
        }
        let mut ctx = Self::new(config)?;
        ctx.phase = Phase::Mirror;
        ctx.tuples_g = vec![whole_g];
        ctx.tuples_h = vec![whole_h];
        ctx.phi = pairs;
        Ok(ctx)
    }

    /// A context resuming from given structures, as after some rounds of play.
    pub fn with_structures(
        config: StrategyConfig,
        phase: Phase,
        tuples_g: Vec<Subgraph>,
        tuples_h: Vec<Subgraph>,
        phi: Vec<(usize, usize)>,
    ) -> Result<Self> {
        if tuples_g.len() != tuples_h.len() {
            return Err(Error::domain("structure lists differ in length"));
        }
        let mut ctx = Self::new(config)?;
        ctx.phase = phase;
        ctx.tuples_g = tuples_g;
        ctx.tuples_h = tuples_h;
        ctx.phi = phi;
        Ok(ctx)
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn structures(&self) -> (&[Subgraph], &[Subgraph], &[(usize, usize)]) {
        (&self.tuples_g, &self.tuples_h, &self.phi)
    }

    /// Whether any reply so far came from the solver after a fallback other
    /// than the regular hand-over.
    pub fn fell_back(&self) -> bool {
        self.fallbacks.iter().any(|&(_, f)| f != Fallback::Sf)
    }

    /// Duplicator's reply to the pending Spoiler move of `state`.
    ///
    /// `solver` must be built on the same boards; it answers in the solver
    /// phases and after fallbacks.
    pub fn duplicator_move(&mut self, state: &GameState, solver: &mut Solver) -> Result<usize> {
        let Some((side, x)) = state.pending() else {
            return Err(Error::domain("no pending Spoiler move"));
        };
        if state.rounds_total() != self.config.k as usize {
            return Err(Error::domain(format!(
                "strategy built for {} rounds, game has {}",
                self.config.k,
                state.rounds_total()
            )));
        }
        let legal = state.legal_replies();
        if legal.is_empty() {
            return Err(Error::domain("Duplicator has no legal reply"));
        }
        let round = state.rounds_played() + 1;
        let rounds_after = state.rounds_total() - round;
        let forced = state.forced_reply();

        let scripted: Option<(Rule, Proposal)> = match self.phase {
            Phase::Regular | Phase::Solver | Phase::Finished => None,
            Phase::Mirror => {
                let map = if side == Side::G {
                    self.phi.clone()
                } else {
                    swap(&self.phi)
                };
                image(&map, x).map(|y| {
                    (
                        Rule::Mirror,
                        Proposal {
                            y,
                            tx: Vec::new(),
                            ty: Vec::new(),
                            phi: Vec::new(),
                            phase: Phase::Mirror,
                        },
                    )
                })
            }
            Phase::Fresh => match self.first_round(state, side, x)? {
                Ok(p) => Some(p),
                Err(reason) => {
                    self.fallbacks.push((round, reason));
                    self.phase = Phase::Solver;
                    None
                }
            },
            Phase::Kr | Phase::Path | Phase::LastRound => match self.later_round(state, side, x)? {
                Ok(p) => Some(p),
                Err(reason) => {
                    self.fallbacks.push((round, reason));
                    self.phase = Phase::Solver;
                    None
                }
            },
        };

        let (rule, reply) = match scripted {
            Some((rule, p)) if legal.contains(&p.y) && forced.is_none_or(|f| f == p.y) => {
                if p.phase != Phase::Mirror {
                    let (tg, th, phi) = match side {
                        Side::G => (p.tx, p.ty, p.phi),
                        Side::H => (p.ty, p.tx, swap(&p.phi)),
                    };
                    self.tuples_g = tg;
                    self.tuples_h = th;
                    self.phi = phi;
                }
                self.phase = p.phase;
                if p.phase == Phase::Regular {
                    self.fallbacks.push((round, Fallback::Sf));
                }
                (rule, p.y)
            }
            Some(_) => {
                self.fallbacks.push((round, Fallback::CertificateRejected));
                self.phase = Phase::Solver;
                (Rule::Solver, solver.best_reply(state.picks(), side, x, rounds_after)?.0)
            }
            None => match forced {
                Some(f) => (Rule::Forced, f),
                None => (Rule::Solver, solver.best_reply(state.picks(), side, x, rounds_after)?.0),
            },
        };
        if rounds_after == 0 && self.phase != Phase::Solver && self.phase != Phase::Regular {
            self.phase = Phase::Finished;
        }
        self.log.push(MoveRecord {
            round,
            side,
            pick: x,
            reply,
            rule,
            phase: self.phase,
        });
        Ok(reply)
    }

    /// Classifies structures after round `r`, in `(g, h)` orientation.
    fn classify(
        &self,
        g: &Graph,
        h: &Graph,
        tg: &[Subgraph],
        th: &[Subgraph],
        picks: &[(usize, usize)],
        r: usize,
    ) -> Result<Option<Phase>> {
        let k = self.config.k as usize;
        if r >= k {
            return Ok(picks_consistent(g, h, picks).then_some(Phase::Finished));
        }
        let params = CertParams::new(self.config.k, r as u32).with_b(self.config.b);
        let l = tg.len();
        let regular = if l <= r {
            Some(check_regular_equivalence(g, h, tg, th, picks, params)?)
        } else {
            None
        };
        if regular.as_ref().is_some_and(|rep| rep.holds()) {
            return Ok(Some(Phase::Regular));
        }
        if l == 1 && check_kr_equivalence(g, h, &tg[0], &th[0], picks, params)?.holds() {
            return Ok(Some(Phase::Kr));
        }
        let Some(rep) = regular else { return Ok(None) };
        let only = |allowed: &[CertProperty]| rep.failures.iter().all(|f| allowed.contains(&f.property));
        if l == 1 && only(&[CertProperty::NoCyclicExtension]) {
            let scale = params.scale();
            let unique = scale >= 2
                && enumerate_cyclic_extensions(g, &tg[0], scale)?.len() <= 1
                && enumerate_cyclic_extensions(h, &th[0], scale)?.len() <= 1;
            if unique {
                return Ok(Some(Phase::Path));
            }
        }
        if r + 1 == k && only(&[CertProperty::NoCyclicExtension, CertProperty::Separated]) {
            return Ok(Some(Phase::LastRound));
        }
        Ok(None)
    }

    /// Classification of a proposal given in board orientation.
    #[allow(clippy::too_many_arguments)]
    fn classify_oriented(
        &self,
        state: &GameState,
        side: Side,
        x: usize,
        y: usize,
        tx: &[Subgraph],
        ty: &[Subgraph],
    ) -> Result<Option<Phase>> {
        let mut picks = state.picks().to_vec();
        picks.push(if side == Side::G { (x, y) } else { (y, x) });
        let (g, h) = (state.graph(Side::G), state.graph(Side::H));
        let r = state.rounds_played() + 1;
        match side {
            Side::G => self.classify(g, h, tx, ty, &picks, r),
            Side::H => self.classify(g, h, ty, tx, &picks, r),
        }
    }

    /// Runs an induced-copy search twice: first insisting that the key
    /// vertex lands on a vertex with the same local degree profile, then
    /// without that preference.
    #[allow(clippy::too_many_arguments)]
    fn search_copy(
        &self,
        xg: &Graph,
        yg: &Graph,
        vertices: &[usize],
        fixed: &[(usize, usize)],
        forbidden: &[usize],
        key: usize,
        accept: &mut Accept<'_>,
    ) -> Option<Vec<(usize, usize)>> {
        let want = profile(xg, key);
        for strict in [true, false] {
            let mut budget = self.config.embed_budget;
            let found = find_induced_copy(xg, yg, vertices, fixed, forbidden, &mut budget, &mut |map| {
                if strict {
                    match image(map, key) {
                        Some(w) if profile(yg, w) == want => {}
                        _ => return false,
                    }
                }
                accept(map)
            });
            if found.is_some() {
                return found;
            }
        }
        None
    }

    fn first_round(
        &self,
        state: &GameState,
        side: Side,
        x: usize,
    ) -> Result<std::result::Result<(Rule, Proposal), Fallback>> {
        let xg = state.graph(side);
        let yg = state.graph(side.other());
        let k = self.config.k;
        if k == 1 {
            let y = (0..yg.vertex_count())
                .next()
                .ok_or_else(|| Error::domain("empty board"))?;
            return Ok(Ok((
                Rule::Lonely,
                Proposal {
                    y,
                    tx: vec![single(x)],
                    ty: vec![single(y)],
                    phi: vec![(x, y)],
                    phase: Phase::Finished,
                },
            )));
        }
        let m = 1usize << (k - 1);
        let exts = enumerate_cyclic_extensions(xg, &single(x), m)?;
        if exts.is_empty() {
            let want = profile(xg, x);
            let mut ys: Vec<usize> = (0..yg.vertex_count()).collect();
            ys.sort_by_key(|&y| (profile(yg, y) != want, yg.degree(y).abs_diff(xg.degree(x)), y));
            for y in ys {
                if !enumerate_cyclic_extensions(yg, &single(y), m)?.is_empty() {
                    continue;
                }
                let (tx, ty) = (vec![single(x)], vec![single(y)]);
                if let Some(phase) = self.classify_oriented(state, side, x, y, &tx, &ty)? {
                    return Ok(Ok((
                        Rule::Lonely,
                        Proposal {
                            y,
                            tx,
                            ty,
                            phi: vec![(x, y)],
                            phase,
                        },
                    )));
                }
            }
            return Ok(Err(Fallback::MissingStructure));
        }

        let chain = build_extension_chain(xg, x, k, self.config.alpha, self.config.b)?;
        if chain.guard_exceeded {
            return Ok(Err(Fallback::ChainGuard));
        }
        let inv = self.config.alpha.value().recip();
        let (rule, tilde) = match chain.closure_density.cmp(&inv) {
            std::cmp::Ordering::Less => (Rule::Closure, Subgraph::induced(xg, chain.last().vertices())?),
            std::cmp::Ordering::Equal => match chain.mu {
                Some(mu) => (Rule::Core, chain.graph(mu)),
                None => return Ok(Err(Fallback::ClosureFailed)),
            },
            std::cmp::Ordering::Greater => return Ok(Err(Fallback::ClosureFailed)),
        };
        let err = RefCell::new(None);
        let chosen = RefCell::new(None);
        self.search_copy(xg, yg, tilde.vertices(), &[], &[], x, &mut |map| {
            let attempt = (|| -> Result<Option<Proposal>> {
                let Some(ty) = map_subgraph(&tilde, map) else {
                    return Ok(None);
                };
                let y = image(map, x).expect("key vertex is mapped");
                if !is_maximal_for_all(yg, ty.vertices(), None, &self.family)? {
                    return Ok(None);
                }
                let (tx, ty) = (vec![tilde.clone()], vec![ty]);
                Ok(self
                    .classify_oriented(state, side, x, y, &tx, &ty)?
                    .map(|phase| Proposal {
                        y,
                        tx,
                        ty,
                        phi: map.to_vec(),
                        phase,
                    }))
            })();
            match attempt {
                Ok(Some(p)) => {
                    *chosen.borrow_mut() = Some(p);
                    true
                }
                Ok(None) => false,
                Err(e) => {
                    err.borrow_mut().get_or_insert(e);
                    false
                }
            }
        });
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(match chosen.into_inner() {
            Some(p) => Ok((rule, p)),
            None => Err(Fallback::MissingStructure),
        })
    }

    fn later_round(
        &self,
        state: &GameState,
        side: Side,
        x: usize,
    ) -> Result<std::result::Result<(Rule, Proposal), Fallback>> {
        let xg = state.graph(side);
        let yg = state.graph(side.other());
        let (tx, ty, phi) = match side {
            Side::G => (self.tuples_g.clone(), self.tuples_h.clone(), self.phi.clone()),
            Side::H => (self.tuples_h.clone(), self.tuples_g.clone(), swap(&self.phi)),
        };
        let picks_y: Vec<usize> = state.picked_on(side.other());
        let r = state.rounds_played();
        let k = self.config.k as usize;
        let ux = union_all(&tx);
        let uy = union_all(&ty);

        // Inside the structure: follow the isomorphism.
        if ux.contains_vertex(x) {
            let Some(y) = image(&phi, x) else {
                return Ok(Err(Fallback::CertificateRejected));
            };
            return Ok(match self.classify_oriented(state, side, x, y, &tx, &ty)? {
                Some(phase) => Ok((Rule::Image, Proposal { y, tx, ty, phi, phase })),
                None => Err(Fallback::CertificateRejected),
            });
        }

        // Final round: any fresh vertex with the same adjacency to the picks.
        if r + 1 == k {
            let picks_x = state.picked_on(side);
            let sig = |g: &Graph, picked: &[usize], v: usize| -> Vec<bool> {
                picked.iter().map(|&p| g.is_adjacent(p, v)).collect()
            };
            let want = sig(xg, &picks_x, x);
            let mut ys: Vec<usize> = (0..yg.vertex_count())
                .filter(|y| !picks_y.contains(y) && sig(yg, &picks_y, *y) == want)
                .collect();
            ys.sort_by_key(|&y| (uy.contains_vertex(y), yg.degree(y).abs_diff(xg.degree(x)), y));
            for y in ys {
                if let Some(phase) = self.classify_oriented(state, side, x, y, &tx, &ty)? {
                    return Ok(Ok((Rule::Signature, Proposal { y, tx, ty, phi, phase })));
                }
            }
            return Ok(Err(Fallback::MissingStructure));
        }

        let scale = 1usize << (k - r - 1);
        let d = match xg.set_distance(ux.vertices(), &[x])? {
            Distance::Finite(d) => Some(d),
            Distance::Infinite => None,
        };
        let err = RefCell::new(None);
        let chosen = RefCell::new(None);
        let record = |attempt: Result<Option<Proposal>>| match attempt {
            Ok(Some(p)) => {
                *chosen.borrow_mut() = Some(p);
                true
            }
            Ok(None) => false,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                false
            }
        };

        let rule = if let Some(d) = d.filter(|&d| d <= scale) {
            // Near: attach the pick by a shortest path, preferring paths
            // that end on an earlier pick.
            let picks_x = state.picked_on(side);
            let mut paths = shortest_paths(xg, x, ux.vertices(), self.config.path_limit);
            paths.sort_by_key(|p| !picks_x.contains(p.last().unwrap()));
            for path in paths {
                let lx = path_subgraph(&path);
                let new_x = ux.union(&lx);
                self.search_copy(xg, yg, new_x.vertices(), &phi, &[], x, &mut |map| {
                    record((|| -> Result<Option<Proposal>> {
                        let y = image(map, x).expect("key vertex is mapped");
                        if picks_y.contains(&y) || yg.set_distance(uy.vertices(), &[y])? != Distance::Finite(d) {
                            return Ok(None);
                        }
                        let Some(ly) = map_subgraph(&lx, map) else {
                            return Ok(None);
                        };
                        let new_y = uy.union(&ly);
                        if !is_cyclically_m_maximal(yg, &new_y, &uy, scale)? {
                            return Ok(None);
                        }
                        let (tx2, ty2) = (vec![new_x.clone()], vec![new_y]);
                        Ok(self
                            .classify_oriented(state, side, x, y, &tx2, &ty2)?
                            .map(|phase| Proposal {
                                y,
                                tx: tx2,
                                ty: ty2,
                                phi: map.to_vec(),
                                phase,
                            }))
                    })())
                });
                if chosen.borrow().is_some() || err.borrow().is_some() {
                    break;
                }
            }
            Rule::Near
        } else {
            // Far: the pick, or its unique cyclic extension, becomes a new
            // component placed away from the existing structure.
            let exts = enumerate_cyclic_extensions(xg, &single(x), scale)?;
            let part = match exts.len() {
                0 => single(x),
                1 => exts[0].apply(&single(x)),
                _ => return Ok(Err(Fallback::CertificateRejected)),
            };
            let mut forbidden = uy.vertices().to_vec();
            forbidden.extend_from_slice(&picks_y);
            self.search_copy(xg, yg, part.vertices(), &[], &forbidden, x, &mut |map| {
                record((|| -> Result<Option<Proposal>> {
                    let y = image(map, x).expect("key vertex is mapped");
                    let Some(py) = map_subgraph(&part, map) else {
                        return Ok(None);
                    };
                    if !uy.vertices().is_empty()
                        && yg.set_distance(uy.vertices(), py.vertices())? <= Distance::Finite(scale)
                    {
                        return Ok(None);
                    }
                    let mut tx2 = tx.clone();
                    tx2.push(part.clone());
                    let mut ty2 = ty.clone();
                    ty2.push(py);
                    let mut phi2 = phi.clone();
                    phi2.extend_from_slice(map);
                    Ok(self
                        .classify_oriented(state, side, x, y, &tx2, &ty2)?
                        .map(|phase| Proposal {
                            y,
                            tx: tx2,
                            ty: ty2,
                            phi: phi2,
                            phase,
                        }))
                })())
            });
            Rule::Far
        };
        if let Some(e) = err.into_inner() {
            return Err(e);
        }
        Ok(match chosen.into_inner() {
            Some(p) => Ok((rule, p)),
            None => Err(Fallback::MissingStructure),
        })
    }
}

/// Outcome of a batch of random-Spoiler games against the scripted Duplicator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayoutSummary {
    pub games: usize,
    pub duplicator_wins: usize,
    /// Final picks of every lost game.
    pub losses: Vec<Vec<(usize, usize)>>,
    /// Games whose final position the solver confirmed as won by the recorded winner.
    pub confirmed: usize,
    pub scripted_moves: usize,
    pub solver_moves: usize,
    pub fallbacks: BTreeMap<Fallback, usize>,
    pub rules: BTreeMap<Rule, usize>,
}

/// Plays `games` games of `k` rounds in which Spoiler picks a uniformly random
/// board and vertex, and Duplicator follows the scripted strategy. One solver
/// (with cost guard `guard`) serves all games on the pair.
pub fn run_playouts(
    g: &Graph,
    h: &Graph,
    config: StrategyConfig,
    games: usize,
    seed: u64,
    guard: u64,
) -> Result<PlayoutSummary> {
    if g.vertex_count() == 0 || h.vertex_count() == 0 {
        return Err(Error::domain("playouts need nonempty boards"));
    }
    let k = config.k as usize;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut solver = Solver::with_guard(g, h, guard);
    let mut summary = PlayoutSummary {
        games,
        duplicator_wins: 0,
        losses: Vec::new(),
        confirmed: 0,
        scripted_moves: 0,
        solver_moves: 0,
        fallbacks: BTreeMap::new(),
        rules: BTreeMap::new(),
    };
    for _ in 0..games {
        let mut ctx = StrategyContext::new(config)?;
        let mut state = GameState::new(g, h, k);
        while !state.is_over() {
            let side = if rng.gen_bool(0.5) { Side::G } else { Side::H };
            let v = rng.gen_range(0..state.graph(side).vertex_count());
            state.spoiler_move(side, v)?;
            if state.is_over() {
                break;
            }
            let y = ctx.duplicator_move(&state, &mut solver)?;
            state.duplicator_move(y)?;
        }
        for rec in &ctx.log {
            *summary.rules.entry(rec.rule).or_default() += 1;
            if rec.rule == Rule::Solver {
                summary.solver_moves += 1;
            } else {
                summary.scripted_moves += 1;
            }
        }
        for &(_, f) in &ctx.fallbacks {
            *summary.fallbacks.entry(f).or_default() += 1;
        }
        let winner = state.winner().expect("finished game has a winner");
        let solver_says = state.pending().is_none() && solver.duplicator_wins(state.picks(), 0)?;
        if solver_says == (winner == Winner::DuplicatorWins) {
            summary.confirmed += 1;
        }
        if winner == Winner::DuplicatorWins {
            summary.duplicator_wins += 1;
        } else {
            summary.losses.push(state.picks().to_vec());
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::certificate::CertParams;
    use crate::game::solve::DEFAULT_GAME_GUARD;

    fn config(k: u32) -> StrategyConfig {
        StrategyConfig::new(k, Alpha::from_kab(4, 7, 1).unwrap())
    }

    /// A triangle with a pendant path of two edges at each corner, plus a
    /// disjoint 4-cycle.
    fn board() -> Graph {
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        for (i, c) in [0usize, 1, 2].into_iter().enumerate() {
            let a = 3 + 2 * i;
            edges.push((c, a));
            edges.push((a, a + 1));
        }
        edges.extend([(9, 10), (10, 11), (11, 12), (12, 9)]);
        Graph::new(13, edges).unwrap()
    }

    #[test]
    fn mirror_context_replies_with_the_mirror_vertex() {
        let g = board();
        let id: Vec<usize> = (0..13).collect();
        let mut ctx = StrategyContext::mirror(config(4), &g, &g, &id).unwrap();
        let mut solver = Solver::new(&g, &g);
        let mut state = GameState::new(&g, &g, 4);
        for (side, v) in [(Side::G, 3), (Side::H, 11), (Side::G, 0), (Side::H, 3)] {
            state.spoiler_move(side, v).unwrap();
            let y = ctx.duplicator_move(&state, &mut solver).unwrap();
            assert_eq!(y, v);
            state.duplicator_move(y).unwrap();
        }
        assert_eq!(state.winner(), Some(Winner::DuplicatorWins));
        assert!(ctx.fallbacks.is_empty());
    }

    #[test]
    fn pick_inside_the_structure_gets_its_image() {
        // Two copies of a 10-cycle; structure = a path of three vertices.
        let g = Graph::cycle(10).unwrap();
        let h = g.relabel(&(0..10).map(|v| (v + 3) % 10).collect::<Vec<_>>()).unwrap();
        let tg = Subgraph::new(&g, &[0, 1, 2], &[(0, 1), (1, 2)]).unwrap();
        let th = Subgraph::new(&h, &[3, 4, 5], &[(3, 4), (4, 5)]).unwrap();
        let phi = vec![(0, 3), (1, 4), (2, 5)];
        let cfg = config(4);
        assert!(check_kr_equivalence(&g, &h, &tg, &th, &[(1, 4)], CertParams::new(4, 1))
            .unwrap()
            .holds());
        let mut ctx = StrategyContext::with_structures(cfg, Phase::Kr, vec![tg], vec![th], phi).unwrap();
        let mut solver = Solver::new(&g, &h);
        let mut state = GameState::with_picks(&g, &h, 4, &[(1, 4)]).unwrap();
        state.spoiler_move(Side::G, 2).unwrap();
        assert_eq!(ctx.duplicator_move(&state, &mut solver).unwrap(), 5);
        assert_eq!(ctx.log[0].rule, Rule::Image);
        state.duplicator_move(5).unwrap();
        state.spoiler_move(Side::H, 3).unwrap();
        assert_eq!(ctx.duplicator_move(&state, &mut solver).unwrap(), 0);
    }

    #[test]
    fn first_round_copies_the_chain_closure() {
        let g = board();
        let h = g.relabel(&[12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        let mut ctx = StrategyContext::new(config(4)).unwrap();
        let mut solver = Solver::new(&g, &h);
        let mut state = GameState::new(&g, &h, 4);
        state.spoiler_move(Side::G, 1).unwrap();
        let y = ctx.duplicator_move(&state, &mut solver).unwrap();
        assert_eq!(ctx.log[0].rule, Rule::Closure);
        assert_eq!(ctx.phase(), Phase::Regular);
        // The triangle of h sits on 12, 11, 10 and the reply keeps the
        // pendant-path profile.
        assert!([10, 11, 12].contains(&y));
    }

    #[test]
    fn lonely_vertices_are_matched_to_lonely_vertices() {
        // A long path has no cyclic extensions anywhere.
        let g = Graph::path(12);
        let mut ctx = StrategyContext::new(config(4)).unwrap();
        let mut solver = Solver::new(&g, &g);
        let mut state = GameState::new(&g, &g, 4);
        state.spoiler_move(Side::H, 5).unwrap();
        let y = ctx.duplicator_move(&state, &mut solver).unwrap();
        assert_eq!(ctx.log[0].rule, Rule::Lonely);
        assert_eq!(g.degree(y), 2);
        assert_eq!(ctx.phase(), Phase::Regular);
    }

    #[test]
    fn shortest_paths_reach_the_target() {
        let g = Graph::cycle(6).unwrap();
        let paths = shortest_paths(&g, 0, &[3], 10);
        assert_eq!(paths.len(), 2);
        assert!(paths.iter().all(|p| p.len() == 4 && p[3] == 3));
    }

    #[test]
    fn playouts_on_isomorphic_boards_are_won() {
        let g = board();
        let h = g.relabel(&[4, 5, 6, 0, 1, 2, 3, 12, 11, 10, 9, 8, 7]).unwrap();
        let sum = run_playouts(&g, &h, config(4), 20, 7, DEFAULT_GAME_GUARD * 100).unwrap();
        assert_eq!(sum.duplicator_wins, 20, "{sum:?}");
        assert_eq!(sum.confirmed, 20);
        assert!(sum.scripted_moves > 0);
    }
}
