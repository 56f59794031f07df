//! Seeded `G(n, p)` sampling.
//!
//! Stream splitting: trial `t` of a run seeded with `s` uses the key
//! `K = splitmix64(s ^ splitmix64(t))`, and the potential edge `{u, v}` with
//! `u < v` is present iff `draw(K, u·n + v) < p`, where `draw` maps
//! `splitmix64(K ^ splitmix64(index + φ))` to `[0, 1)` by its top 53 bits.
//! Every edge is therefore reproducible independently of iteration order.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{to_f64, Rational};

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

/// One step of the SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(GOLDEN);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key of trial `trial` in a run seeded with `seed`.
pub fn trial_key(seed: u64, trial: u64) -> u64 {
    splitmix64(seed ^ splitmix64(trial))
}

/// Uniform draw in `[0, 1)` for slot `index` under `key`.
pub fn unit_draw(key: u64, index: u64) -> f64 {
    let bits = splitmix64(key ^ splitmix64(index.wrapping_add(GOLDEN)));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// How the edge probability is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum EdgeProbability {
    Explicit(f64),
    /// `p = n^{-α}` with `α ∈ (0, 1]`.
    PowerLaw(Rational),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub n: usize,
    pub p: EdgeProbability,
    pub seed: u64,
    pub trials: u64,
}

impl SampleSpec {
    pub fn explicit(n: usize, p: f64, seed: u64, trials: u64) -> Self {
        SampleSpec {
            n,
            p: EdgeProbability::Explicit(p),
            seed,
            trials,
        }
    }

    pub fn power_law(n: usize, alpha: Rational, seed: u64, trials: u64) -> Self {
        SampleSpec {
            n,
            p: EdgeProbability::PowerLaw(alpha),
            seed,
            trials,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::domain("n must be positive"));
        }
        if self.trials == 0 {
            return Err(Error::domain("trials must be positive"));
        }
        self.probability().map(|_| ())
    }

    /// The resolved edge probability.
    pub fn probability(&self) -> Result<f64> {
        match self.p {
            EdgeProbability::Explicit(p) if (0.0..=1.0).contains(&p) => Ok(p),
            EdgeProbability::Explicit(p) => Err(Error::domain(format!("probability {p} outside [0,1]"))),
            EdgeProbability::PowerLaw(a) if a > Rational::from_integer(0) && a <= Rational::from_integer(1) => {
                Ok((self.n as f64).powf(-to_f64(&a)))
            }
            EdgeProbability::PowerLaw(a) => Err(Error::domain(format!("exponent {a} outside (0,1]"))),
        }
    }

    pub fn alpha(&self) -> Option<Rational> {
        match self.p {
            EdgeProbability::PowerLaw(a) => Some(a),
            EdgeProbability::Explicit(_) => None,
        }
    }
}

/// Samples trial `trial` of `spec`.
pub fn sample_gnp(spec: &SampleSpec, trial: u64) -> Result<Graph> {
    if spec.n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let p = spec.probability()?;
    Ok(sample_with(spec.n, p, trial_key(spec.seed, trial)))
}

pub(crate) fn sample_with(n: usize, p: f64, key: u64) -> Graph {
    let mut edges = Vec::new();
    if p > 0.0 {
        for u in 0..n {
            for v in u + 1..n {
                if unit_draw(key, (u * n + v) as u64) < p {
                    edges.push((u, v));
                }
            }
        }
    }
    Graph::from_sorted(n, edges)
}

/// `ln P_{n,p}(G) = |E| ln p + (C(n,2) − |E|) ln(1 − p)`.
///
/// Returns `-inf` when `p ∈ {0, 1}` contradicts the edge set and `0` when it
/// forces it.
pub fn log_probability(g: &Graph, n: usize, p: f64) -> Result<f64> {
    if g.vertex_count() != n {
        return Err(Error::domain(format!(
            "graph has {} vertices, expected {n}",
            g.vertex_count()
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability {p} outside [0,1]")));
    }
    let e = g.edge_count() as f64;
    let non = (n * n.saturating_sub(1) / 2) as f64 - e;
    let term = |count: f64, q: f64| if count == 0.0 { 0.0 } else { count * q.ln() };
    Ok(term(e, p) + term(non, 1.0 - p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremes_and_determinism() {
        let empty = sample_gnp(&SampleSpec::explicit(6, 0.0, 1, 1), 0).unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = sample_gnp(&SampleSpec::explicit(6, 1.0, 1, 1), 0).unwrap();
        assert_eq!(full, Graph::complete(6));
        let spec = SampleSpec::explicit(40, 0.3, 99, 1);
        assert_eq!(sample_gnp(&spec, 7).unwrap(), sample_gnp(&spec, 7).unwrap());
        assert_ne!(sample_gnp(&spec, 7).unwrap(), sample_gnp(&spec, 8).unwrap());
        assert!(sample_gnp(&SampleSpec::explicit(0, 0.5, 1, 1), 0).is_err());
    }

    #[test]
    fn power_law_range() {
        let ok = SampleSpec::power_law(100, Rational::new(1, 2), 0, 1);
        assert!((ok.probability().unwrap() - 0.1).abs() < 1e-12);
        assert!(SampleSpec::power_law(100, Rational::new(3, 2), 0, 1)
            .validate()
            .is_err());
        assert!(SampleSpec::power_law(100, Rational::from_integer(1), 0, 1)
            .validate()
            .is_ok());
    }

    #[test]
    fn log_probability_examples() {
        let edge = Graph::path(2);
        assert!((log_probability(&edge, 2, 0.3).unwrap() - 0.3f64.ln()).abs() < 1e-15);
        assert!((log_probability(&Graph::empty(2), 2, 0.3).unwrap() - 0.7f64.ln()).abs() < 1e-15);
        assert_eq!(log_probability(&edge, 2, 0.0).unwrap(), f64::NEG_INFINITY);
        assert_eq!(log_probability(&edge, 2, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn draws_are_roughly_uniform() {
        let key = trial_key(3, 4);
        let mean = (0..20_000).map(|i| unit_draw(key, i)).sum::<f64>() / 20_000.0;
        assert!((mean - 0.5).abs() < 0.01);
    }
}
