//! Truncated checks of the three structural properties that make a graph a
//! good board for Duplicator.
//!
//! The exact properties quantify over patterns with up to `2^{2k} b` vertices;
//! here every quantifier is cut off at a caller-supplied cap.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{canonical_form_rooted, is_strictly_balanced, Graph};
use crate::pairs::{is_kt_maximal, Alpha, ExtensionQuery, RootedPair};
use crate::rational::Rational;

/// Quantifier caps for [`check_s_membership`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SCaps {
    /// Largest subgraph examined by properties 1 and 3.
    pub max_subgraph_v: usize,
    /// Largest safe pattern `H_1` in property 2.
    pub max_pattern_v: usize,
    /// Largest root tuple of a safe pattern in property 2.
    pub max_root_v: usize,
    /// Largest constraint pattern `K` in the maximality conditions.
    pub max_constraint_v: usize,
}

impl SCaps {
    /// Caps small enough for graphs of a few dozen vertices.
    pub const DESK: SCaps = SCaps {
        max_subgraph_v: 4,
        max_pattern_v: 2,
        max_root_v: 1,
        max_constraint_v: 3,
    };

    fn validate(&self) -> Result<()> {
        let checks = [
            ("max_subgraph_v", self.max_subgraph_v, 8),
            ("max_pattern_v", self.max_pattern_v, 6),
            ("max_root_v", self.max_root_v, 3),
            ("max_constraint_v", self.max_constraint_v, 5),
        ];
        for (what, value, cap) in checks {
            if value > cap {
                return Err(Error::capacity(what, value, cap));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SProperty {
    /// No small subgraph denser than `1/α`.
    Sparse,
    /// Every safe pattern extends every tuple maximally.
    Extensions,
    /// Every small sparse strictly balanced graph has a maximal copy.
    Copies,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SFailure {
    pub property: SProperty,
    /// Offending vertex set, tuple or pattern vertices.
    pub vertices: Vec<usize>,
    /// Edges of the offending pattern, when one is involved.
    pub pattern_edges: Vec<(usize, usize)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SReport {
    pub caps: SCaps,
    pub failures: Vec<SFailure>,
    /// Number of safe patterns checked under property 2.
    pub patterns: usize,
    /// Number of constraint patterns in the maximality conditions.
    pub constraints: usize,
    /// Number of strictly balanced graphs checked under property 3.
    pub balanced: usize,
}

impl SReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, p: SProperty) -> bool {
        self.failures.iter().any(|f| f.property == p)
    }
}

const SUBSET_LIMIT: u64 = 20_000_000;

fn binomial_sum(n: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut c: u64 = 1;
    for i in 0..=k.min(n) {
        total = total.saturating_add(c);
        c = c.saturating_mul((n - i) as u64) / (i as u64 + 1);
    }
    total
}

/// Visits every subset of `0..n` with `1..=max` elements in lexicographic
/// order until `visit` returns false.
fn for_each_subset(n: usize, max: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(n: usize, max: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        for v in start..n {
            cur.push(v);
            if !visit(cur) {
                return false;
            }
            if cur.len() < max && !rec(n, max, v + 1, cur, visit) {
                return false;
            }
            cur.pop();
        }
        true
    }
    rec(n, max, 0, &mut Vec::new(), visit);
}

/// All graphs on `v` vertices whose first `h` vertices form an independent
/// root set, up to root-fixing isomorphism.
fn rooted_patterns(v: usize, h: usize) -> Result<Vec<Graph>> {
    let pairs: Vec<(usize, usize)> = (0..v)
        .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
        .filter(|&(a, b)| !(a < h && b < h))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(v, edges)?;
        let canon = canonical_form_rooted(&g, h)?;
        if seen.insert(canon.edges().to_vec()) {
            out.push(canon);
        }
    }
    Ok(out)
}

/// Constraint patterns `(K, T)`: `T` has one or two independent roots, `K`
/// has at least one further vertex, at most `max_v` vertices and
/// `f_α(K, T) < 0`.
pub fn constraint_family(alpha: Alpha, max_v: usize) -> Result<Vec<RootedPair>> {
    if max_v > 5 {
        return Err(Error::capacity("constraint pattern vertices", max_v, 5));
    }
    let mut out = Vec::new();
    for t in 1..=2usize {
        for v in t + 1..=max_v {
            for g in rooted_patterns(v, t)? {
                let pair = RootedPair::new(g, (0..t).collect(), Vec::new())?;
                if pair.f_alpha(alpha) < Rational::from_integer(0) {
                    out.push(pair);
                }
            }
        }
    }
    Ok(out)
}

/// Whether the vertex set `gt` (with `ht` as the old part for the pair
/// variant) is maximal for every constraint pattern.
pub fn is_maximal_for_all(gamma: &Graph, gt: &[usize], ht: Option<&[usize]>, family: &[RootedPair]) -> Result<bool> {
    for k in family {
        if k.roots().len() > gt.len() {
            continue;
        }
        if !is_kt_maximal(gamma, gt, ht, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks properties 1)–3) with every quantifier truncated at `caps`.
pub fn check_s_membership(gamma: &Graph, alpha: Alpha, caps: SCaps) -> Result<SReport> {
    caps.validate()?;
    let n = gamma.vertex_count();
    let subsets = binomial_sum(n, caps.max_subgraph_v);
    if subsets > SUBSET_LIMIT {
        return Err(Error::Capacity {
            what: "vertex subsets for property 1",
            value: subsets,
            cap: SUBSET_LIMIT,
        });
    }
    let inv = alpha.value().recip();
    let family = constraint_family(alpha, caps.max_constraint_v)?;
    let mut report = SReport {
        caps,
        failures: Vec::new(),
        patterns: 0,
        constraints: family.len(),
        balanced: 0,
    };

    // 1) The densest subgraph of a dense set is strictly balanced and no
    //    larger, so checking induced densities of all small sets suffices.
    let mut dense = None;
    for_each_subset(n, caps.max_subgraph_v, &mut |set| {
        let e = set
            .iter()
            .enumerate()
            .map(|(i, &a)| set[i + 1..].iter().filter(|&&b| gamma.is_adjacent(a, b)).count())
            .sum::<usize>();
        if Rational::new(e as i64, set.len() as i64) > inv {
            dense = Some((set.to_vec(), e));
            return false;
        }
        true
    });
    if let Some((set, e)) = dense {
        report.failures.push(SFailure {
            property: SProperty::Sparse,
            detail: format!("{} vertices span {e} edges, density above {inv}", set.len()),
            vertices: set,
            pattern_edges: Vec::new(),
        });
    }

    // 2) Safe patterns against every ordered root tuple.
    'patterns: for h in 1..=caps.max_root_v.min(n) {
        for v in h + 1..=caps.max_pattern_v {
            for g in rooted_patterns(v, h)? {
                let pattern = RootedPair::new(g, (0..h).collect(), Vec::new())?;
                if !pattern.is_alpha_safe(alpha)? {
                    continue;
                }
                report.patterns += 1;
                if let Some(tuple) = unextendable_tuple(gamma, &pattern, &family)? {
                    report.failures.push(SFailure {
                        property: SProperty::Extensions,
                        vertices: tuple,
                        pattern_edges: pattern.big().edges().to_vec(),
                        detail: format!(
                            "no maximal strict extension by a {}-vertex pattern with {h} roots",
                            pattern.big().vertex_count()
                        ),
                    });
                    break 'patterns;
                }
            }
        }
    }

    // 3) Maximal copies of small sparse strictly balanced graphs.
    'graphs: for v in 2..=caps.max_subgraph_v {
        for g in rooted_patterns(v, 0)? {
            if g.edge_count() == 0 || Rational::new(g.edge_count() as i64, v as i64) >= inv {
                continue;
            }
            if !is_strictly_balanced(&g)? {
                continue;
            }
            report.balanced += 1;
            let pattern = RootedPair::new(g.clone(), Vec::new(), Vec::new())?;
            let mut found = false;
            let mut err = None;
            ExtensionQuery::new(gamma, &pattern, &[]).for_each(&mut |map| match is_maximal_for_all(
                gamma, map, None, &family,
            ) {
                Ok(true) => {
                    found = true;
                    false
                }
                Ok(false) => true,
                Err(e) => {
                    err = Some(e);
                    false
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            if !found {
                report.failures.push(SFailure {
                    property: SProperty::Copies,
                    vertices: Vec::new(),
                    pattern_edges: g.edges().to_vec(),
                    detail: format!("no maximal copy of a strictly balanced graph on {v} vertices"),
                });
                break 'graphs;
            }
        }
    }
    Ok(report)
}

/// The first ordered tuple with no strict extension by `pattern` that is
/// maximal for the whole family, if any.
fn unextendable_tuple(gamma: &Graph, pattern: &RootedPair, family: &[RootedPair]) -> Result<Option<Vec<usize>>> {
    let h = pattern.roots().len();
    let n = gamma.vertex_count();
    let mut tuple = Vec::with_capacity(h);
    let mut bad = None;
    let mut err = None;
    fn rec(n: usize, h: usize, tuple: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if tuple.len() == h {
            return visit(tuple);
        }
        for v in 0..n {
            if tuple.contains(&v) {
                continue;
            }
            tuple.push(v);
            let go_on = rec(n, h, tuple, visit);
            tuple.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(n, h, &mut tuple, &mut |tuple| {
        let mut ok = false;
        let mut inner_err = None;
        let res =
            ExtensionQuery::new(gamma, pattern, tuple)
                .strict(true)
                .for_each(&mut |map| match is_maximal_for_all(gamma, map, Some(tuple), family) {
                    Ok(true) => {
                        ok = true;
                        false
                    }
                    Ok(false) => true,
                    Err(e) => {
                        inner_err = Some(e);
                        false
                    }
                });
        if let Err(e) = res {
            inner_err = Some(e);
        }
        if let Some(e) = inner_err {
            err = Some(e);
            return false;
        }
        if !ok {
            bad = Some(tuple.to_vec());
            return false;
        }
        true
    });
    match err {
        Some(e) => Err(e),
        None => Ok(bad),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn caps(sub: usize) -> SCaps {
        SCaps {
            max_subgraph_v: sub,
            max_pattern_v: 2,
            max_root_v: 1,
            max_constraint_v: 3,
        }
    }

    #[test]
    fn complete_graph_density_boundaries() {
        let k5 = Graph::complete(5);
        let half = Alpha::new(Rational::new(1, 2)).unwrap();
        let rep = check_s_membership(&k5, half, caps(4)).unwrap();
        assert!(!rep.failed(SProperty::Sparse));
        let two_thirds = Alpha::new(Rational::new(2, 3)).unwrap();
        let rep = check_s_membership(&k5, two_thirds, caps(4)).unwrap();
        assert!(!rep.failed(SProperty::Sparse));
        let rep = check_s_membership(&k5, two_thirds, caps(5)).unwrap();
        assert!(rep.failed(SProperty::Sparse));
    }

    #[test]
    fn edgeless_graph_has_no_extension_by_an_edge() {
        let g = Graph::empty(6);
        let rep = check_s_membership(&g, Alpha::from_kab(4, 7, 1).unwrap(), caps(3)).unwrap();
        assert!(rep.failed(SProperty::Extensions));
        let f = rep
            .failures
            .iter()
            .find(|f| f.property == SProperty::Extensions)
            .unwrap();
        assert_eq!(f.vertices.len(), 1);
        assert_eq!(f.pattern_edges, vec![(0, 1)]);
    }

    #[test]
    fn constraint_family_at_desk_caps() {
        let alpha = Alpha::from_kab(4, 7, 1).unwrap();
        let fam = constraint_family(alpha, 3).unwrap();
        // A triangle on one root and a cherry on two roots.
        assert_eq!(fam.len(), 2);
        let half = Alpha::new(Rational::new(1, 2)).unwrap();
        // 1 - 2α = 0 at α = 1/2, so the cherry drops out.
        assert!(constraint_family(half, 3).unwrap().is_empty());
    }

    #[test]
    fn caps_are_guarded() {
        let g = Graph::path(3);
        let alpha = Alpha::from_kab(4, 7, 1).unwrap();
        let big = SCaps {
            max_pattern_v: 9,
            ..SCaps::DESK
        };
        assert!(check_s_membership(&g, alpha, big).unwrap_err().is_capacity());
    }

    #[test]
    fn subset_walk_counts() {
        let mut count = 0;
        for_each_subset(6, 3, &mut |_| {
            count += 1;
            true
        });
        assert_eq!(count as u64, binomial_sum(6, 3) - 1);
    }
}
