//! Checkers for the equivalence certificates that drive the scripted strategy.
//!
//! Both boards play symmetric roles in every condition, so the functions take
//! the `G`-side structures first and the `H`-side structures second regardless
//! of which board Spoiler used last. Picks are `(g, h)` pairs.

use serde::{Deserialize, Serialize};

use super::state::Side;
use crate::error::{Error, Result};
use crate::graph::{find_isomorphism, Distance, Graph};
use crate::pairs::{enumerate_cyclic_extensions, CyclicKind, Subgraph};

/// Round parameters of a certificate: `k` rounds in total, `r` played, and the
/// constant `b` of the size bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertParams {
    pub k: u32,
    pub r: u32,
    pub b: u64,
}

impl CertParams {
    pub fn new(k: u32, r: u32) -> Self {
        CertParams { k, r, b: 1 }
    }

    pub fn with_b(mut self, b: u64) -> Self {
        self.b = b;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 || self.k > 30 {
            return Err(Error::domain(format!("k = {} outside 1..=30", self.k)));
        }
        if self.r == 0 || self.r > self.k {
            return Err(Error::domain(format!("r = {} outside 1..=k", self.r)));
        }
        if self.b == 0 {
            return Err(Error::domain("b must be positive"));
        }
        Ok(())
    }

    /// `2^{k-r}`: the separation and extension scale after round `r`.
    pub fn scale(&self) -> usize {
        1usize << (self.k - self.r)
    }

    /// `2^{2k} b + 2^{k-1} r`.
    pub fn size_bound(&self) -> u128 {
        (1u128 << (2 * self.k)) * self.b as u128 + (1u128 << (self.k - 1)) * self.r as u128
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertProperty {
    /// The tuples of one board share a vertex.
    Disjoint,
    /// Property I: every pick lies in the union of the tuples.
    PicksCovered,
    /// Property II: distinct tuples are farther apart than `2^{k-r}`.
    Separated,
    /// Property III: no tuple has a cyclic `2^{k-r}`-extension.
    NoCyclicExtension,
    /// Property IV: the union has at most `2^{2k} b + 2^{k-1} r` vertices.
    SizeBound,
    /// Property V: one isomorphism maps every tuple and the picks.
    Isomorphism,
    /// No cyclic `(2^{k-r} - 1)`-extension of the single tuple.
    NoShortExtension,
    /// No Type2 cyclic `2^{k-r}`-extension of the subgraph induced by the picks.
    NoPathBetweenPicks,
    /// At most one cyclic `2^{k-r}`-extension of the single tuple.
    AtMostOneExtension,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertFailure {
    pub property: CertProperty,
    pub side: Option<Side>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub failures: Vec<CertFailure>,
    /// An isomorphism witnessing Property V, as `(g, h)` pairs, when found.
    pub isomorphism: Option<Vec<(usize, usize)>>,
}

impl CertificateReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failed(&self, property: CertProperty) -> bool {
        self.failures.iter().any(|f| f.property == property)
    }

    fn fail(&mut self, property: CertProperty, side: Option<Side>, detail: impl Into<String>) {
        self.failures.push(CertFailure {
            property,
            side,
            detail: detail.into(),
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    /// `(k, r, l)`-regular equivalence with `l` tuples.
    RegularKRL(usize),
    /// `(k, r)`-equivalence of one pair of subgraphs.
    KR,
}

/// Structures claimed to certify Duplicator's position after some round.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceCertificate {
    pub kind: CertificateKind,
    pub tuples_g: Vec<Subgraph>,
    pub tuples_h: Vec<Subgraph>,
    /// The claimed isomorphism as `(g, h)` pairs; verified, never trusted.
    pub isomorphism: Vec<(usize, usize)>,
}

impl EquivalenceCertificate {
    /// Re-checks every condition of the certificate, including the stored map.
    pub fn check(
        &self,
        g: &Graph,
        h: &Graph,
        picks: &[(usize, usize)],
        params: CertParams,
    ) -> Result<CertificateReport> {
        let mut report = match self.kind {
            CertificateKind::RegularKRL(l) => {
                if l != self.tuples_g.len() {
                    return Err(Error::domain(format!(
                        "certificate claims {l} tuples but has {}",
                        self.tuples_g.len()
                    )));
                }
                check_regular_equivalence(g, h, &self.tuples_g, &self.tuples_h, picks, params)?
            }
            CertificateKind::KR => {
                if self.tuples_g.len() != 1 || self.tuples_h.len() != 1 {
                    return Err(Error::domain("a (k,r) certificate has exactly one tuple per board"));
                }
                check_kr_equivalence(g, h, &self.tuples_g[0], &self.tuples_h[0], picks, params)?
            }
        };
        if !is_tuple_isomorphism(&self.tuples_g, &self.tuples_h, picks, &self.isomorphism) {
            report.fail(
                CertProperty::Isomorphism,
                None,
                "stored map is not an isomorphism of the tuples respecting the picks",
            );
        }
        Ok(report)
    }
}

fn check_tuples(host: &Graph, tuples: &[Subgraph], side: Side) -> Result<()> {
    for (j, t) in tuples.iter().enumerate() {
        if t.vertices().is_empty() {
            return Err(Error::domain(format!("tuple {j} on board {side:?} is empty")));
        }
        for &v in t.vertices() {
            host.check_vertex(v)?;
        }
        for &(a, b) in t.edges() {
            if !host.is_adjacent(a, b) {
                return Err(Error::domain(format!(
                    "tuple {j} on board {side:?} uses {{{a},{b}}}, which is not an edge"
                )));
            }
        }
    }
    Ok(())
}

fn union_vertices(tuples: &[Subgraph]) -> Vec<usize> {
    let mut vs: Vec<usize> = tuples.iter().flat_map(|t| t.vertices().iter().copied()).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

fn distinct_picks(picks: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &p in picks {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

fn pick_on(side: Side, p: (usize, usize)) -> usize {
    match side {
        Side::G => p.0,
        Side::H => p.1,
    }
}

fn check_common(
    g: &Graph,
    h: &Graph,
    tuples_g: &[Subgraph],
    tuples_h: &[Subgraph],
    picks: &[(usize, usize)],
    params: CertParams,
    report: &mut CertificateReport,
) -> Result<()> {
    params.validate()?;
    if tuples_g.is_empty() || tuples_g.len() != tuples_h.len() {
        return Err(Error::domain(format!(
            "tuple lists have lengths {} and {}",
            tuples_g.len(),
            tuples_h.len()
        )));
    }
    check_tuples(g, tuples_g, Side::G)?;
    check_tuples(h, tuples_h, Side::H)?;
    for &(a, b) in picks {
        g.check_vertex(a)?;
        h.check_vertex(b)?;
    }
    for (side, tuples) in [(Side::G, tuples_g), (Side::H, tuples_h)] {
        let total: usize = tuples.iter().map(|t| t.vertices().len()).sum();
        let union = union_vertices(tuples);
        if union.len() != total {
            report.fail(CertProperty::Disjoint, Some(side), "tuples share vertices");
        }
        for &p in picks {
            let v = pick_on(side, p);
            if union.binary_search(&v).is_err() {
                report.fail(
                    CertProperty::PicksCovered,
                    Some(side),
                    format!("pick {v} is outside the tuples"),
                );
            }
        }
        if union.len() as u128 > params.size_bound() {
            report.fail(
                CertProperty::SizeBound,
                Some(side),
                format!("{} vertices exceed {}", union.len(), params.size_bound()),
            );
        }
    }
    match tuple_isomorphism(tuples_g, tuples_h, picks) {
        Ok(map) => report.isomorphism = Some(map),
        Err(why) => report.fail(CertProperty::Isomorphism, None, why),
    }
    Ok(())
}

/// Checks `(k, r, l)`-regular equivalence of the tuple lists, `l` being their
/// common length.
///
/// Separation is skipped for `r = 1` and the extension condition for `r = k`.
pub fn check_regular_equivalence(
    g: &Graph,
    h: &Graph,
    tuples_g: &[Subgraph],
    tuples_h: &[Subgraph],
    picks: &[(usize, usize)],
    params: CertParams,
) -> Result<CertificateReport> {
    let mut report = CertificateReport {
        failures: Vec::new(),
        isomorphism: None,
    };
    check_common(g, h, tuples_g, tuples_h, picks, params, &mut report)?;
    let l = tuples_g.len();
    if l > params.r as usize {
        return Err(Error::domain(format!("l = {l} exceeds r = {}", params.r)));
    }
    let scale = params.scale();
    for (side, host, tuples) in [(Side::G, g, tuples_g), (Side::H, h, tuples_h)] {
        if params.r > 1 {
            for j1 in 0..l {
                for j2 in j1 + 1..l {
                    let d = host.set_distance(tuples[j1].vertices(), tuples[j2].vertices())?;
                    if d <= Distance::Finite(scale) {
                        report.fail(
                            CertProperty::Separated,
                            Some(side),
                            format!("tuples {j1} and {j2} at distance {d:?}, need > {scale}"),
                        );
                    }
                }
            }
        }
        if params.r < params.k {
            for (j, t) in tuples.iter().enumerate() {
                let exts = enumerate_cyclic_extensions(host, t, scale)?;
                if let Some(e) = exts.first() {
                    report.fail(
                        CertProperty::NoCyclicExtension,
                        Some(side),
                        format!("tuple {j} has a cyclic {scale}-extension through {:?}", e.new_vertices),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Checks `(k, r)`-equivalence of one subgraph per board.
pub fn check_kr_equivalence(
    g: &Graph,
    h: &Graph,
    tilde_g: &Subgraph,
    tilde_h: &Subgraph,
    picks: &[(usize, usize)],
    params: CertParams,
) -> Result<CertificateReport> {
    let mut report = CertificateReport {
        failures: Vec::new(),
        isomorphism: None,
    };
    let tg = std::slice::from_ref(tilde_g);
    let th = std::slice::from_ref(tilde_h);
    check_common(g, h, tg, th, picks, params, &mut report)?;
    let scale = params.scale();
    let picks = distinct_picks(picks);
    for (side, host, tilde) in [(Side::G, g, tilde_g), (Side::H, h, tilde_h)] {
        if scale > 2 {
            let short = enumerate_cyclic_extensions(host, tilde, scale - 1)?;
            if let Some(e) = short.first() {
                report.fail(
                    CertProperty::NoShortExtension,
                    Some(side),
                    format!("cyclic {}-extension through {:?}", scale - 1, e.new_vertices),
                );
            }
        }
        if scale >= 2 {
            let picked: Vec<usize> = picks.iter().map(|&p| pick_on(side, p)).collect();
            if !picked.is_empty() {
                let base = Subgraph::induced(host, &picked)?;
                let paths = enumerate_cyclic_extensions(host, &base, scale)?;
                if let Some(e) = paths.iter().find(|e| e.kind == CyclicKind::Type2) {
                    report.fail(
                        CertProperty::NoPathBetweenPicks,
                        Some(side),
                        format!("picks {:?} joined through {:?}", e.anchors, e.new_vertices),
                    );
                }
            }
            let exts = enumerate_cyclic_extensions(host, tilde, scale)?;
            if exts.len() > 1 {
                report.fail(
                    CertProperty::AtMostOneExtension,
                    Some(side),
                    format!("{} cyclic {scale}-extensions", exts.len()),
                );
            }
        }
    }
    Ok(report)
}

/// One isomorphism mapping every `G`-tuple onto the matching `H`-tuple and each
/// pick onto its partner, as `(g, h)` pairs.
fn tuple_isomorphism(
    tuples_g: &[Subgraph],
    tuples_h: &[Subgraph],
    picks: &[(usize, usize)],
) -> std::result::Result<Vec<(usize, usize)>, String> {
    let picks = distinct_picks(picks);
    let mut map = Vec::new();
    for (j, (tg, th)) in tuples_g.iter().zip(tuples_h).enumerate() {
        let mut fixed = Vec::new();
        for &(a, b) in &picks {
            let ia = tg.vertices().binary_search(&a).ok();
            let ib = th.vertices().binary_search(&b).ok();
            match (ia, ib) {
                (Some(i), Some(k)) => fixed.push((i, k)),
                (None, None) => {}
                _ => return Err(format!("pick ({a},{b}) straddles tuple {j}")),
            }
        }
        let gg = tg.to_graph();
        let hh = th.to_graph();
        let Some(iso) = find_isomorphism(&gg, &hh, &fixed) else {
            return Err(format!("tuple {j} has no isomorphism respecting the picks"));
        };
        for (i, &k) in iso.iter().enumerate() {
            map.push((tg.vertices()[i], th.vertices()[k]));
        }
    }
    Ok(map)
}

/// Whether `map` sends each `G`-tuple isomorphically onto its `H`-tuple and
/// every pick onto its partner.
pub fn is_tuple_isomorphism(
    tuples_g: &[Subgraph],
    tuples_h: &[Subgraph],
    picks: &[(usize, usize)],
    map: &[(usize, usize)],
) -> bool {
    if tuples_g.len() != tuples_h.len() {
        return false;
    }
    let image = |v: usize| map.iter().find(|p| p.0 == v).map(|p| p.1);
    for (tg, th) in tuples_g.iter().zip(tuples_h) {
        if tg.vertices().len() != th.vertices().len() || tg.edges().len() != th.edges().len() {
            return false;
        }
        let mut seen = Vec::with_capacity(tg.vertices().len());
        for &v in tg.vertices() {
            match image(v) {
                Some(w) if th.contains_vertex(w) && !seen.contains(&w) => seen.push(w),
                _ => return false,
            }
        }
        for &(a, b) in tg.edges() {
            let (Some(x), Some(y)) = (image(a), image(b)) else {
                return false;
            };
            if !th.contains_edge(x, y) {
                return false;
            }
        }
    }
    picks.iter().all(|&(a, b)| match image(a) {
        Some(w) => w == b,
        None => !tuples_h.iter().any(|t| t.contains_vertex(b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(host: &Graph, v: usize) -> Subgraph {
        Subgraph::new(host, &[v], &[]).unwrap()
    }

    #[test]
    fn identical_singletons_on_a_long_path() {
        let g = Graph::path(12);
        let rep = check_regular_equivalence(
            &g,
            &g,
            &[single(&g, 5)],
            &[single(&g, 5)],
            &[(5, 5)],
            CertParams::new(4, 1),
        )
        .unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.isomorphism, Some(vec![(5, 5)]));
    }

    #[test]
    fn triangle_is_a_cyclic_extension_of_its_vertex() {
        let g = Graph::complete(3).disjoint_union(&Graph::path(3));
        let rep = check_regular_equivalence(
            &g,
            &g,
            &[single(&g, 0)],
            &[single(&g, 0)],
            &[(0, 0)],
            CertParams::new(4, 2),
        )
        .unwrap();
        assert!(rep.failed(CertProperty::NoCyclicExtension));
    }

    #[test]
    fn separation_is_strict() {
        let g = Graph::path(10);
        let t = [single(&g, 0), single(&g, 4)];
        // k - r = 2: distance 4 is not > 4.
        let rep = check_regular_equivalence(&g, &g, &t, &t, &[(0, 0), (4, 4)], CertParams::new(4, 2)).unwrap();
        assert!(rep.failed(CertProperty::Separated));
        let t = [single(&g, 0), single(&g, 5)];
        let rep = check_regular_equivalence(&g, &g, &t, &t, &[(0, 0), (5, 5)], CertParams::new(4, 2)).unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn boundary_rounds_skip_conditions() {
        let g = Graph::complete(3);
        // r = k: the triangle would be an extension but the condition is skipped.
        let rep = check_regular_equivalence(
            &g,
            &g,
            &[single(&g, 0)],
            &[single(&g, 0)],
            &[(0, 0)],
            CertParams::new(3, 3),
        )
        .unwrap();
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn uncovered_pick_and_bad_isomorphism() {
        let g = Graph::path(8);
        let rep = check_regular_equivalence(
            &g,
            &g,
            &[single(&g, 3)],
            &[single(&g, 3)],
            &[(3, 3), (6, 6)],
            CertParams::new(4, 2),
        )
        .unwrap();
        assert!(rep.failed(CertProperty::PicksCovered));
        let e = Subgraph::new(&g, &[3, 4], &[(3, 4)]).unwrap();
        let f = Subgraph::new(&g, &[3, 5], &[]).unwrap();
        let rep = check_regular_equivalence(&g, &g, &[e], &[f], &[(3, 3)], CertParams::new(4, 1)).unwrap();
        assert!(rep.failed(CertProperty::Isomorphism));
    }

    #[test]
    fn malformed_tuples_are_errors() {
        let g = Graph::path(4);
        let bad = Subgraph::new(&Graph::complete(4), &[0, 2], &[(0, 2)]).unwrap();
        assert!(check_regular_equivalence(
            &g,
            &g,
            std::slice::from_ref(&bad),
            std::slice::from_ref(&bad),
            &[],
            CertParams::new(3, 1)
        )
        .is_err());
        assert!(check_regular_equivalence(&g, &g, &[], &[], &[], CertParams::new(3, 1)).is_err());
        let s = single(&g, 0);
        assert!(check_regular_equivalence(
            &g,
            &g,
            std::slice::from_ref(&s),
            std::slice::from_ref(&s),
            &[],
            CertParams::new(3, 4)
        )
        .is_err());
    }

    #[test]
    fn kr_conditions() {
        // A lone vertex far from any cycle: every condition is vacuous.
        let g = Graph::path(6);
        let s = single(&g, 0);
        let rep = check_kr_equivalence(&g, &g, &s, &s, &[(0, 0)], CertParams::new(4, 2)).unwrap();
        assert!(rep.holds(), "{rep:?}");

        // Two 4-cycles through vertex 0: two cyclic 4-extensions.
        let two = Graph::new(7, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 0)]).unwrap();
        let s = single(&two, 0);
        let rep = check_kr_equivalence(&two, &two, &s, &s, &[(0, 0)], CertParams::new(4, 2)).unwrap();
        assert!(rep.failed(CertProperty::AtMostOneExtension));
        assert!(!rep.failed(CertProperty::NoShortExtension));

        // Picks 0 and 3 on a 6-cycle are joined by a path with two inner vertices.
        let c6 = Graph::cycle(6).unwrap();
        let t = Subgraph::new(&c6, &[0, 1, 2, 3], &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let rep = check_kr_equivalence(&c6, &c6, &t, &t, &[(0, 0), (3, 3)], CertParams::new(4, 2)).unwrap();
        assert!(rep.failed(CertProperty::NoPathBetweenPicks));
    }

    #[test]
    fn stored_isomorphism_is_verified() {
        let g = Graph::path(3);
        let t = Subgraph::new(&g, &[0, 1], &[(0, 1)]).unwrap();
        let good = EquivalenceCertificate {
            kind: CertificateKind::RegularKRL(1),
            tuples_g: vec![t.clone()],
            tuples_h: vec![t.clone()],
            isomorphism: vec![(0, 0), (1, 1)],
        };
        assert!(good.check(&g, &g, &[(0, 0)], CertParams::new(2, 2)).unwrap().holds());
        let bad = EquivalenceCertificate {
            isomorphism: vec![(0, 1), (1, 0)],
            ..good
        };
        let rep = bad.check(&g, &g, &[(0, 0)], CertParams::new(2, 2)).unwrap();
        assert!(rep.failed(CertProperty::Isomorphism));
    }
}
