//! Monte Carlo estimation, Poisson checks and threshold scans.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::count::count_copies;
use super::sample::{sample_gnp, SampleSpec};
use crate::error::{Error, Result};
use crate::graph::{automorphism_count, density, is_strictly_balanced, Graph};
use crate::rational::Rational;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// A graph property evaluated on each sampled graph.
pub type Property<'a> = &'a (dyn Fn(&Graph) -> Result<bool> + Sync);

/// Result of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub n: usize,
    /// Exponent of `p = n^{-α}`, when the run used one.
    pub alpha: Option<Rational>,
    pub p: f64,
    pub seed: u64,
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub wall_ms: u64,
}

/// Wilson score interval at 95%.
pub fn wilson_interval(hits: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let phat = hits as f64 / n;
    let z2 = Z95 * Z95;
    let centre = (phat + z2 / (2.0 * n)) / (1.0 + z2 / n);
    let half = Z95 * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt() / (1.0 + z2 / n);
    ((centre - half).clamp(0.0, phat), (centre + half).clamp(phat, 1.0))
}

/// Runs `f` on every trial graph in parallel; the first failing trial by index wins.
fn per_trial<T: Send>(spec: &SampleSpec, f: &(dyn Fn(&Graph) -> Result<T> + Sync)) -> Result<Vec<T>> {
    spec.validate()?;
    let results: Vec<Result<T>> = (0..spec.trials)
        .into_par_iter()
        .map(|t| {
            let g = sample_gnp(spec, t)?;
            f(&g).map_err(|e| Error::Trial {
                trial: t,
                source: Box::new(e),
            })
        })
        .collect();
    results.into_iter().collect()
}

/// Estimates `P(G(n, p) ⊨ property)`.
pub fn mc_estimate(spec: &SampleSpec, property: Property<'_>) -> Result<Estimate> {
    let start = Instant::now();
    let hits = per_trial(spec, property)?.into_iter().filter(|&h| h).count() as u64;
    let (ci_low, ci_high) = wilson_interval(hits, spec.trials);
    Ok(Estimate {
        n: spec.n,
        alpha: spec.alpha(),
        p: spec.probability()?,
        seed: spec.seed,
        trials: spec.trials,
        hits,
        p_hat: hits as f64 / spec.trials as f64,
        ci_low,
        ci_high,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

/// Empirical law of the copy count `N_G` against `Pois(1/a(G))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoissonReport {
    /// `ρ(G)`; the run used `p = n^{-1/ρ(G)}`.
    pub density: Rational,
    pub p: f64,
    pub automorphisms: u64,
    pub lambda: f64,
    pub trials: u64,
    pub mean: f64,
    /// Fraction of trials with at least one copy.
    pub containment: f64,
    /// Observed counts for `N_G = 0, 1, 2, ≥3`.
    pub observed: [u64; 4],
    /// Poisson expectations for the same bins.
    pub expected: [f64; 4],
    pub chi_square: f64,
    pub p_value: f64,
}

/// Samples `G(n, n^{-1/ρ(G)})` and compares `N_G` with its Poisson limit.
///
/// The edge probability of `spec` is ignored; `G` must be strictly balanced
/// with `1/ρ(G) ∈ (0, 1]`.
pub fn poisson_check(spec: &SampleSpec, g: &Graph) -> Result<PoissonReport> {
    if !is_strictly_balanced(g)? {
        return Err(Error::domain("the pattern is not strictly balanced"));
    }
    let rho = density(g)?;
    let alpha = rho.recip();
    if alpha > Rational::from_integer(1) {
        return Err(Error::domain(format!("1/rho = {alpha} lies outside (0,1]")));
    }
    let run = SampleSpec::power_law(spec.n, alpha, spec.seed, spec.trials);
    let counts = per_trial(&run, &|h| count_copies(h, g))?;
    let aut = automorphism_count(g)?;
    let lambda = 1.0 / aut as f64;

    let mut observed = [0u64; 4];
    for &c in &counts {
        observed[(c as usize).min(3)] += 1;
    }
    let pmf = |k: i32, fact: f64| (-lambda).exp() * lambda.powi(k) / fact;
    let probs = [pmf(0, 1.0), pmf(1, 1.0), pmf(2, 2.0)];
    let tail = 1.0 - probs.iter().sum::<f64>();
    let trials = spec.trials as f64;
    let expected = [probs[0] * trials, probs[1] * trials, probs[2] * trials, tail * trials];
    let chi_square: f64 = observed
        .iter()
        .zip(&expected)
        .map(|(&o, &e)| (o as f64 - e).powi(2) / e)
        .sum();
    let dist = ChiSquared::new(3.0).expect("positive degrees of freedom");
    Ok(PoissonReport {
        density: rho,
        p: run.probability()?,
        automorphisms: aut,
        lambda,
        trials: spec.trials,
        mean: counts.iter().sum::<u64>() as f64 / trials,
        containment: counts.iter().filter(|&&c| c > 0).count() as f64 / trials,
        observed,
        expected,
        chi_square,
        p_value: 1.0 - dist.cdf(chi_square),
    })
}

/// Grid of a threshold scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanGrid {
    pub n_values: Vec<usize>,
    /// Exponents in `(0, 1)`.
    pub alphas: Vec<Rational>,
    pub trials: u64,
    pub seed: u64,
    /// When set, each `α` is replaced by the interval endpoints `α − ε` and `α + ε`.
    pub epsilon: Option<Rational>,
}

impl ScanGrid {
    /// Exponents actually sampled, in output order.
    pub fn exponents(&self) -> Result<Vec<Rational>> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        if self.n_values.is_empty() || self.alphas.is_empty() {
            return Err(Error::domain("scan grids must be nonempty"));
        }
        let mut out = Vec::new();
        for &a in &self.alphas {
            if a <= zero || a >= one {
                return Err(Error::domain(format!("alpha {a} outside (0,1)")));
            }
            match self.epsilon {
                None => out.push(a),
                Some(e) if e > zero && a - e > zero => {
                    out.push(a - e);
                    out.push(a + e);
                }
                Some(e) => return Err(Error::domain(format!("epsilon {e} invalid around alpha {a}"))),
            }
        }
        Ok(out)
    }
}

/// One estimate per `(n, exponent)` cell, ordered by `n` then exponent position.
///
/// Every cell reuses the trial keys of `grid.seed`, so neighbouring cells are
/// coupled through common random numbers.
pub fn threshold_scan(property: Property<'_>, grid: &ScanGrid) -> Result<Vec<Estimate>> {
    let exps = grid.exponents()?;
    let mut out = Vec::with_capacity(grid.n_values.len() * exps.len());
    for &n in &grid.n_values {
        for &a in &exps {
            out.push(mc_estimate(
                &SampleSpec::power_law(n, a, grid.seed, grid.trials),
                property,
            )?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has_edge(g: &Graph) -> Result<bool> {
        Ok(g.edge_count() > 0)
    }

    #[test]
    fn trivial_estimates() {
        let tri = Graph::complete(3);
        let contains = |g: &Graph| Ok(count_copies(g, &tri)? > 0);
        let e = mc_estimate(&SampleSpec::explicit(3, 1.0, 0, 20), &contains).unwrap();
        assert_eq!(e.p_hat, 1.0);
        let e = mc_estimate(&SampleSpec::explicit(10, 0.0, 0, 20), &has_edge).unwrap();
        assert_eq!((e.hits, e.ci_low), (0, 0.0));
        assert!(e.ci_high > 0.0);
    }

    #[test]
    fn wilson_brackets_the_estimate() {
        for (h, t) in [(0, 10), (3, 10), (10, 10), (500, 2000)] {
            let (lo, hi) = wilson_interval(h, t);
            let p = h as f64 / t as f64;
            assert!(lo <= p && p <= hi);
        }
        let (lo, hi) = wilson_interval(50, 100);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
    }

    #[test]
    fn failures_name_the_first_trial() {
        let fail = |g: &Graph| {
            if g.edge_count() > 0 {
                Err(Error::domain("boom"))
            } else {
                Ok(false)
            }
        };
        let err = mc_estimate(&SampleSpec::explicit(5, 1.0, 0, 50), &fail).unwrap_err();
        assert!(matches!(err, Error::Trial { trial: 0, .. }));
    }

    #[test]
    fn poisson_preconditions() {
        let spec = SampleSpec::explicit(30, 0.5, 0, 10);
        assert!(poisson_check(&spec, &Graph::path(2)).is_err());
        assert!(poisson_check(&spec, &Graph::star(3)).is_err());
    }

    #[test]
    fn scan_validates_and_repeats() {
        let grid = ScanGrid {
            n_values: vec![20],
            alphas: vec![Rational::new(1, 2)],
            trials: 30,
            seed: 4,
            epsilon: Some(Rational::new(1, 10)),
        };
        assert_eq!(
            grid.exponents().unwrap(),
            vec![Rational::new(2, 5), Rational::new(3, 5)]
        );
        let a = threshold_scan(&has_edge, &grid).unwrap();
        let b = threshold_scan(&has_edge, &grid).unwrap();
        assert_eq!(a.len(), 2);
        assert_eq!(
            a.iter().map(|e| e.hits).collect::<Vec<_>>(),
            b.iter().map(|e| e.hits).collect::<Vec<_>>()
        );
        let bad = ScanGrid {
            alphas: vec![Rational::new(13, 10)],
            ..grid
        };
        assert!(threshold_scan(&has_edge, &bad).is_err());
    }
}
