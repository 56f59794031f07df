//! `(K, T)`-maximality of embedded graphs and pairs.

use super::{ExtensionQuery, RootedPair};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Whether no tuple of `|T|` distinct vertices of `gt` has a strict
/// `K`-extension attached only at the tuple.
///
/// `k` is the pattern `(K, T)` with `T` given by its roots. The extension's new
/// vertices must lie outside `gt` and have no neighbours in `gt` other than the
/// tuple. With `ht = Some(..)` (pair variant) each tuple must use at least one
/// vertex of `gt \ ht`.
pub fn is_kt_maximal(gamma: &Graph, gt: &[usize], ht: Option<&[usize]>, k: &RootedPair) -> Result<bool> {
    let t = k.roots().len();
    if t > gt.len() {
        return Err(Error::domain(format!(
            "T has {t} vertices but the embedded graph only {}",
            gt.len()
        )));
    }
    let n = gamma.vertex_count();
    let mut in_gt = vec![false; n];
    for &v in gt {
        gamma.check_vertex(v)?;
        in_gt[v] = true;
    }
    let mut in_ht = vec![false; n];
    if let Some(ht) = ht {
        for &v in ht {
            if !in_gt[v] {
                return Err(Error::domain(format!("vertex {v} of H is not in G")));
            }
            in_ht[v] = true;
        }
    }
    // Number of neighbours each host vertex has inside gt.
    let gt_degree: Vec<usize> = (0..n)
        .map(|w| gamma.neighbors(w).iter().filter(|&&u| in_gt[u]).count())
        .collect();

    let mut tuple = Vec::with_capacity(t);
    let mut found = false;
    search_tuples(gt, t, &mut tuple, &mut |tuple| {
        if ht.is_some() && tuple.iter().all(|&v| in_ht[v]) {
            return true;
        }
        let allowed = |w: usize| {
            if in_gt[w] {
                return false;
            }
            let to_tuple = tuple.iter().filter(|&&u| gamma.is_adjacent(u, w)).count();
            gt_degree[w] == to_tuple
        };
        match ExtensionQuery::new(gamma, k, tuple)
            .strict(true)
            .allowed(&allowed)
            .find()
        {
            Ok(Some(_)) => {
                found = true;
                false
            }
            _ => true,
        }
    });
    Ok(!found)
}

fn search_tuples(pool: &[usize], t: usize, tuple: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if tuple.len() == t {
        return visit(tuple);
    }
    for &v in pool {
        if tuple.contains(&v) {
            continue;
        }
        tuple.push(v);
        let go_on = search_tuples(pool, t, tuple, visit);
        tuple.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Number of strict extensions of `anchor` whose pair (extension, anchor) is
/// `(K, T)`-maximal in `gamma` for every listed constraint.
pub fn count_kt_maximal_extensions(
    gamma: &Graph,
    pattern: &RootedPair,
    anchor: &[usize],
    constraints: &[RootedPair],
) -> Result<usize> {
    let maps = ExtensionQuery::new(gamma, pattern, anchor).strict(true).collect()?;
    let mut count = 0;
    for map in maps {
        let mut ok = true;
        for k in constraints {
            if !is_kt_maximal(gamma, &map, Some(anchor), k)? {
                ok = false;
                break;
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(count)
}
