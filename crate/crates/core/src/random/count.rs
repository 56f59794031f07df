//! Counting copies of small patterns.

use crate::error::{Error, Result};
use crate::graph::{automorphism_count, Graph};
use crate::pairs::{ExtensionQuery, RootedPair};

/// Largest pattern accepted by [`count_copies`].
pub const DEFAULT_COPY_CAP: usize = 8;

/// Injective maps `V(G) → V(Γ)` sending every edge of `G` to an edge of `Γ`.
pub fn count_embeddings(host: &Graph, pattern: &Graph) -> Result<u64> {
    if pattern.vertex_count() > host.vertex_count() {
        return Ok(0);
    }
    let rooted = RootedPair::new(pattern.clone(), vec![], vec![])?;
    let mut count = 0u64;
    ExtensionQuery::new(host, &rooted, &[]).for_each(&mut |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// Number of (not necessarily induced) subgraphs of `host` isomorphic to `pattern`.
pub fn count_copies(host: &Graph, pattern: &Graph) -> Result<u64> {
    count_copies_capped(host, pattern, DEFAULT_COPY_CAP)
}

pub fn count_copies_capped(host: &Graph, pattern: &Graph, cap: usize) -> Result<u64> {
    if pattern.vertex_count() > cap {
        return Err(Error::capacity("pattern vertices", pattern.vertex_count(), cap));
    }
    if pattern.vertex_count() == 0 {
        return Err(Error::domain("the empty pattern has no copies to count"));
    }
    let aut = automorphism_count(pattern)?;
    Ok(count_embeddings(host, pattern)? / aut)
}
