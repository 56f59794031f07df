//! Builders for the formulas used by the constructions: walk and distance
//! predicates, cliques, the two spectrum sentences, and the copy and
//! extension properties of small patterns.
//!
//! Bound variables of distance formulas are named `w1`, `w2`, ... by nesting
//! level, so callers must not use those names for their own variables.

use super::ast::{Formula, Var};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pairs::RootedPair;

/// Largest pattern accepted by [`subgraph_sentence`] and [`extension_sentence`].
pub const DEFAULT_SENTENCE_CAP: usize = 8;

fn ceil_log2(i: usize) -> usize {
    if i <= 1 {
        0
    } else {
        (usize::BITS - (i - 1).leading_zeros()) as usize
    }
}

/// `D_i(x, y)`: true iff some walk of length exactly `i` joins `x` and `y`.
pub fn dist(i: usize, x: &str, y: &str) -> Formula {
    match i {
        0 => Formula::eq(x, y),
        1 => Formula::adj(x, y),
        _ => {
            let v = format!("w{}", ceil_log2(i));
            let (a, b) = (i / 2, i - i / 2);
            Formula::exists(v.clone(), Formula::and(vec![dist(a, x, &v), dist(b, y, &v)]))
        }
    }
}

/// `D_i(x, y)` over the variables `x` and `y`.
pub fn dist_formula(i: usize) -> Formula {
    dist(i, "x", "y")
}

/// `D*_i(x, y)`: true iff `d(x, y) = i`.
///
/// For `i ≥ 2` the excluded shorter lengths include `0` (that is, `x = y`):
/// without it a vertex with a neighbour would sit at distance 2 from itself.
pub fn dist_exact(i: usize, x: &str, y: &str) -> Formula {
    if i <= 1 {
        return dist(i, x, y);
    }
    let shorter = (0..i).map(|j| dist(j, x, y)).collect();
    Formula::and(vec![dist(i, x, y), Formula::not(Formula::or(shorter))])
}

/// The exact-distance formula with shorter lengths `1..i` only.
///
/// Differs from [`dist_exact`] exactly on `x = y` at `i = 2`.
pub fn dist_exact_unguarded(i: usize, x: &str, y: &str) -> Formula {
    if i <= 1 {
        return dist(i, x, y);
    }
    let shorter = (1..i).map(|j| dist(j, x, y)).collect();
    Formula::and(vec![dist(i, x, y), Formula::not(Formula::or(shorter))])
}

/// `D*_i(x, y)` over the variables `x` and `y`.
pub fn dist_exact_formula(i: usize) -> Formula {
    dist_exact(i, "x", "y")
}

/// `D*_{i,j}(x, y, z) = D*_i(x, z) ∧ D*_j(z, y)`.
pub fn dist_exact_pair(i: usize, j: usize, x: &str, y: &str, z: &str) -> Formula {
    Formula::and(vec![dist_exact(i, x, z), dist_exact(j, z, y)])
}

/// All pairwise adjacencies among `vars`.
pub fn clique_formula<S: AsRef<str>>(vars: &[S]) -> Result<Formula> {
    if vars.len() < 2 {
        return Err(Error::domain("a clique formula needs at least two variables"));
    }
    let mut parts = Vec::new();
    for i in 0..vars.len() {
        for j in i + 1..vars.len() {
            parts.push(Formula::adj(vars[i].as_ref(), vars[j].as_ref()));
        }
    }
    Ok(Formula::and(parts))
}

/// `y` is adjacent to every variable of `xs`.
pub fn common_neighbor_formula<S: AsRef<str>>(y: &str, xs: &[S]) -> Result<Formula> {
    if xs.is_empty() {
        return Err(Error::domain("a common-neighbour formula needs at least one variable"));
    }
    Ok(Formula::and(xs.iter().map(|x| Formula::adj(y, x.as_ref())).collect()))
}

fn names(prefix: &str, count: usize) -> Vec<Var> {
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// The sentence of the first spectrum construction, for `k ≥ 5`.
///
/// With `h = ⌊k/2⌋` it asserts an `h`-clique `x` with an `h`-clique of
/// common neighbours, such that no vertex `z` has, for every `i ≥ 2`, a common
/// neighbour with all `x_j (j ≠ i)`, while every common neighbour `y` of `x`
/// shares with `z` and `x_3..x_h` a neighbour avoiding `x_1` and `x_2`.
/// Its depth is `max(2h, h + 3)`.
pub fn theorem1_sentence(k: usize) -> Result<Formula> {
    if k < 5 {
        return Err(Error::domain(format!("k = {k} is below 5")));
    }
    let h = k / 2;
    let xs = names("x", h);
    let ys = names("y", h);

    let mut witnesses: Vec<Formula> = ys
        .iter()
        .map(|y| common_neighbor_formula(y, &xs))
        .collect::<Result<_>>()?;
    witnesses.push(clique_formula(&ys)?);
    let upper = Formula::exists_all(ys.clone(), Formula::and(witnesses));

    // R^i_z: some v is adjacent to z and every x except x_i.
    let r_single = |i: usize| -> Result<Formula> {
        let mut around = vec!["z".to_string()];
        around.extend(xs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, x)| x.clone()));
        Ok(Formula::exists("v", common_neighbor_formula("v", &around)?))
    };
    // R^{1,2}_z(y): some v is adjacent to z, y and x_3..x_h but not to x_1, x_2.
    let mut around = vec!["z".to_string(), "y".to_string()];
    around.extend(xs[2..].iter().cloned());
    let r_pair = Formula::exists(
        "v",
        Formula::and(vec![
            common_neighbor_formula("v", &around)?,
            Formula::not(Formula::adj("v", &xs[0])),
            Formula::not(Formula::adj("v", &xs[1])),
        ]),
    );

    let mut z_parts: Vec<Formula> = (1..h).map(r_single).collect::<Result<_>>()?;
    z_parts.push(Formula::forall(
        "y",
        Formula::implies(common_neighbor_formula("y", &xs)?, r_pair),
    ));
    let no_z = Formula::not(Formula::exists("z", Formula::and(z_parts)));

    let body = Formula::and(vec![clique_formula(&xs)?, upper, no_z]);
    Ok(Formula::exists_all(xs, body))
}

/// Reading of the path-configuration predicate inside the second sentence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathPredicate {
    /// The negated disjunction, exactly as the predicate is written.
    Negated,
    /// The bare disjunction, so the enclosing `¬∃` forbids the configurations it lists.
    Positive,
}

/// The sentence of the second spectrum construction, for `k ≥ 8`, depth `k`.
pub fn theorem2_sentence(k: usize) -> Result<Formula> {
    theorem2_sentence_with(k, PathPredicate::Negated)
}

/// [`theorem2_sentence`] with an explicit reading of the path predicate.
pub fn theorem2_sentence_with(k: usize, reading: PathPredicate) -> Result<Formula> {
    if k < 8 {
        return Err(Error::domain(format!("k = {k} is below 8")));
    }
    if k > 16 {
        return Err(Error::capacity("sentence parameter k", k, 16));
    }
    let l = 1usize << (k - 5);
    let half = l / 2;
    let quarter = l / 4;
    let pair = dist_exact_pair;

    // Configurations of paths from a and b towards two midpoints u1, u2.
    let mut configs = Vec::new();
    for s in half..=l {
        for i in 1..=s {
            let lo = half.saturating_sub(i);
            let Some(hi) = l.checked_sub(i) else { continue };
            for j in lo..=hi {
                configs.push(Formula::and(vec![
                    pair(i, s - i, "a", "u1", "x"),
                    dist_exact(j, "x", "u2"),
                ]));
            }
        }
    }
    for i in 1..=half {
        configs.push(Formula::and(vec![
            pair(i, half - i, "u1", "b", "x"),
            dist_exact(i, "u2", "x"),
        ]));
    }
    let any_config = Formula::or(configs);
    let psi = match reading {
        PathPredicate::Negated => Formula::not(any_config),
        PathPredicate::Positive => any_config,
    };
    let s_pred = Formula::and(vec![
        dist_exact(l, "a", "b"),
        Formula::not(Formula::exists_all(
            ["u1", "u2", "x"],
            Formula::and(vec![
                Formula::neq("u1", "u2"),
                pair(half, half, "u1", "u2", "b"),
                pair(half, half, "u1", "u2", "a"),
                psi,
            ]),
        )),
    ]);

    // ξ(c, x1, x2): no y starts shared shortest routes from c to x1 and x2.
    let xi = |c: &str| {
        let routes: Vec<Formula> = (1..quarter)
            .map(|i| {
                Formula::and(vec![
                    pair(i, half - i, c, "x1", "y"),
                    dist_exact(quarter - i, "y", "x2"),
                ])
            })
            .collect();
        if routes.is_empty() {
            None
        } else {
            Some(Formula::not(Formula::exists("y", Formula::or(routes))))
        }
    };
    let mut r_parts = vec![
        pair(half, half, "a", "u", "x1"),
        pair(quarter, quarter, "a", "u", "x2"),
        Formula::not(dist_exact(quarter, "x1", "x2")),
    ];
    r_parts.extend(xi("a"));
    r_parts.extend(xi("u"));
    let r_pred = Formula::exists_all(["x1", "x2"], Formula::and(r_parts));

    let midpoint = || pair(half, half, "a", "b", "u");
    let body = Formula::and(vec![
        s_pred,
        Formula::forall("u", Formula::implies(midpoint(), r_pred)),
        Formula::not(Formula::exists(
            "z",
            Formula::and(vec![
                Formula::neq("z", "a"),
                Formula::forall("u", Formula::implies(midpoint(), dist_exact(l, "u", "z"))),
            ]),
        )),
    ]);
    Ok(Formula::exists_all(["a", "b"], body))
}

/// `L_G`: the graph contains a (not necessarily induced) copy of `g`.
pub fn subgraph_sentence(g: &Graph) -> Result<Formula> {
    subgraph_sentence_capped(g, DEFAULT_SENTENCE_CAP)
}

pub fn subgraph_sentence_capped(g: &Graph, cap: usize) -> Result<Formula> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::domain("the empty pattern has no sentence"));
    }
    if n > cap {
        return Err(Error::capacity("pattern vertices", n, cap));
    }
    let vs = names("v", n);
    let mut parts = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            parts.push(Formula::neq(&vs[i], &vs[j]));
        }
    }
    parts.extend(g.edges().iter().map(|&(a, b)| Formula::adj(&vs[a], &vs[b])));
    if parts.is_empty() {
        parts.push(Formula::eq(&vs[0], &vs[0]));
    }
    Ok(Formula::exists_all(vs, Formula::and(parts)))
}

/// `L_(G,H)`: every tuple of distinct vertices has a non-strict extension.
pub fn extension_sentence(p: &RootedPair) -> Result<Formula> {
    extension_sentence_capped(p, DEFAULT_SENTENCE_CAP)
}

pub fn extension_sentence_capped(p: &RootedPair, cap: usize) -> Result<Formula> {
    let n = p.big().vertex_count();
    if n == 0 {
        return Err(Error::domain("the empty pattern has no sentence"));
    }
    if n > cap {
        return Err(Error::capacity("pattern vertices", n, cap));
    }
    let mut var = vec![String::new(); n];
    let roots = names("x", p.roots().len());
    for (name, &r) in roots.iter().zip(p.roots()) {
        var[r] = name.clone();
    }
    let fresh = names("y", n - p.roots().len());
    for (name, v) in fresh.iter().zip(p.free_vertices()) {
        var[v] = name.clone();
    }

    let mut inner = Vec::new();
    for (i, y) in fresh.iter().enumerate() {
        inner.extend(roots.iter().chain(&fresh[..i]).map(|o| Formula::neq(y, o)));
    }
    inner.extend(p.relative_edges().iter().map(|&(a, b)| Formula::adj(&var[a], &var[b])));
    if inner.is_empty() {
        let v = &var[0];
        inner.push(Formula::eq(v, v));
    }
    let body = Formula::exists_all(fresh, Formula::and(inner));

    let mut distinct = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            distinct.push(Formula::neq(&roots[i], &roots[j]));
        }
    }
    let guarded = if distinct.is_empty() {
        body
    } else {
        Formula::implies(Formula::and(distinct), body)
    };
    Ok(Formula::forall_all(roots, guarded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::eval::{evaluate, Assignment};

    fn holds(g: &Graph, f: &Formula, x: usize, y: usize) -> bool {
        evaluate(g, f, &Assignment::new().with("x", x).with("y", y)).unwrap()
    }

    #[test]
    fn depth_of_distance_formulas() {
        for (i, d) in [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4), (64, 6)] {
            assert_eq!(dist_formula(i).depth(), d, "D_{i}");
            assert_eq!(dist_exact_formula(i).depth(), d, "D*_{i}");
        }
    }

    #[test]
    fn distance_on_pentagon() {
        let c5 = Graph::cycle(5).unwrap();
        assert!(holds(&c5, &dist_exact_formula(2), 0, 2));
        assert!(holds(&c5, &dist_exact_formula(1), 0, 1));
        assert!(!holds(&c5, &dist_exact_formula(1), 0, 2));
        assert!(holds(&c5, &dist_formula(0), 3, 3));
        // A walk of length 3 joins adjacent pentagon vertices.
        assert!(holds(&c5, &dist_formula(3), 0, 1));
    }

    #[test]
    fn unguarded_exact_distance_misfires_on_loops() {
        let p = Graph::path(2);
        assert!(holds(&p, &dist_exact_unguarded(2, "x", "y"), 0, 0));
        assert!(!holds(&p, &dist_exact_formula(2), 0, 0));
    }

    #[test]
    fn cliques_and_common_neighbours() {
        let k4 = Graph::complete(4);
        let c4 = Graph::cycle(4).unwrap();
        let tri = Formula::exists_all(["a", "b", "c"], clique_formula(&["a", "b", "c"]).unwrap());
        assert!(evaluate(&k4, &tri, &Assignment::new()).unwrap());
        assert!(!evaluate(&c4, &tri, &Assignment::new()).unwrap());
        assert_eq!(clique_formula(&["a", "b"]).unwrap(), Formula::adj("a", "b"));
        assert!(clique_formula(&["a"]).is_err());
        let star = Graph::star(3);
        let f = common_neighbor_formula("y", &["a", "b", "c"]).unwrap();
        let s = Assignment::new().with("a", 1).with("b", 2).with("c", 3);
        assert!(evaluate(&star, &f, &s.clone().with("y", 0)).unwrap());
        assert!(!evaluate(&star, &f, &s.with("y", 1)).unwrap());
        assert_eq!(common_neighbor_formula("y", &["a"]).unwrap(), Formula::adj("y", "a"));
    }

    #[test]
    fn sentence_depths() {
        assert_eq!(theorem1_sentence(5).unwrap().depth(), 5);
        assert_eq!(theorem1_sentence(8).unwrap().depth(), 8);
        for k in 5..=12 {
            let h = k / 2;
            assert_eq!(theorem1_sentence(k).unwrap().depth(), (2 * h).max(h + 3));
            assert!(theorem1_sentence(k).unwrap().is_sentence());
        }
        assert!(theorem1_sentence(4).is_err());
        for k in 8..=10 {
            let f = theorem2_sentence(k).unwrap();
            assert_eq!(f.depth(), k);
            assert!(f.is_sentence());
        }
        assert!(theorem2_sentence(7).is_err());
    }

    #[test]
    fn copy_sentences() {
        let tri = subgraph_sentence(&Graph::complete(3)).unwrap();
        assert!(evaluate(&Graph::complete(4), &tri, &Assignment::new()).unwrap());
        assert!(!evaluate(&Graph::cycle(4).unwrap(), &tri, &Assignment::new()).unwrap());
        assert!(subgraph_sentence(&Graph::complete(9)).unwrap_err().is_capacity());
    }

    #[test]
    fn pendant_edge_extension() {
        let pendant = RootedPair::new(Graph::path(2), vec![0], vec![]).unwrap();
        let f = extension_sentence(&pendant).unwrap();
        assert_eq!(f.depth(), 2);
        let t = |g: &Graph| evaluate(g, &f, &Assignment::new()).unwrap();
        assert!(t(&Graph::complete(3)));
        assert!(t(&Graph::path(3)));
        assert!(!t(&Graph::path(2).disjoint_union(&Graph::empty(1))));
    }
}
