//! Random formula generation for round-trip tests and crosscheck batteries.

use rand::Rng;

use super::ast::{Formula, Var};

struct Gen<'r, R: Rng + ?Sized> {
    rng: &'r mut R,
    fuel: usize,
}

impl<R: Rng + ?Sized> Gen<'_, R> {
    fn pick(&mut self, scope: &[Var]) -> Var {
        scope[self.rng.gen_range(0..scope.len())].clone()
    }

    fn quantified(&mut self, scope: &mut Vec<Var>, depth: usize) -> Formula {
        let v = format!("x{}", scope.len());
        scope.push(v.clone());
        let body = self.formula(scope, depth - 1);
        scope.pop();
        if self.rng.gen_bool(0.5) {
            Formula::exists(v, body)
        } else {
            Formula::forall(v, body)
        }
    }

    fn formula(&mut self, scope: &mut Vec<Var>, depth: usize) -> Formula {
        self.fuel = self.fuel.saturating_sub(1);
        if scope.is_empty() {
            return self.quantified(scope, depth);
        }
        let roll = if self.fuel == 0 { 0 } else { self.rng.gen_range(0..10) };
        match roll {
            0..=2 => {
                let (a, b) = (self.pick(scope), self.pick(scope));
                if self.rng.gen_bool(0.75) {
                    Formula::adj(a, b)
                } else {
                    Formula::eq(a, b)
                }
            }
            3 => Formula::not(self.formula(scope, depth)),
            4 | 5 => {
                let count = self.rng.gen_range(2..=3);
                let parts = (0..count).map(|_| self.formula(scope, depth)).collect();
                if self.rng.gen_bool(0.5) {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                }
            }
            6 => {
                let a = self.formula(scope, depth);
                Formula::implies(a, self.formula(scope, depth))
            }
            _ if depth > 0 => self.quantified(scope, depth),
            _ => Formula::adj(self.pick(scope), self.pick(scope)),
        }
    }
}

/// A random formula of depth at most `max_depth` whose free variables are among `free`.
///
/// Quantified variables are named `x0`, `x1`, ... by nesting level; `free`
/// should avoid those names. With `free` empty and `max_depth ≥ 1` the result
/// is a sentence.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, max_depth: usize, free: &[&str]) -> Formula {
    assert!(max_depth > 0 || !free.is_empty(), "no variables available");
    let mut scope: Vec<Var> = free.iter().map(|s| s.to_string()).collect();
    let offset = scope.len();
    let mut g = Gen { rng, fuel: 24 };
    let f = g.formula(&mut scope, max_depth);
    debug_assert_eq!(scope.len(), offset);
    f
}

/// A random closed formula of depth between 1 and `max_depth`.
pub fn random_sentence<R: Rng + ?Sized>(rng: &mut R, max_depth: usize) -> Formula {
    random_formula(rng, max_depth.max(1), &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::parse;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_formulas_respect_bounds_and_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let f = random_sentence(&mut rng, 3);
            assert!(f.is_sentence());
            assert!((1..=3).contains(&f.depth()));
            assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}
