//! Breadth-first closures: the subgroup generated by a set, and orbits.

use std::collections::{HashSet, VecDeque};
use std::hash::Hash;

/// Every product of generators reachable from `start`, in discovery order.
///
/// In a finite group the closure of `{identity}` under right multiplication
/// by the generators is the generated subgroup, so inverses need not be
/// supplied.
pub fn closure<T, F>(start: T, generators: &[T], mul: F) -> Vec<T>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    orbit(start, generators, |g, x| mul(x, g))
}

/// The orbit of `seed` under repeated application of `generators`.
pub fn orbit<G, X, F>(seed: X, generators: &[G], act: F) -> Vec<X>
where
    X: Clone + Eq + Hash,
    F: Fn(&G, &X) -> X,
{
    let mut seen = HashSet::from([seed.clone()]);
    let mut order = vec![seed.clone()];
    let mut queue = VecDeque::from([seed]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = act(g, &x);
            if seen.insert(y.clone()) {
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    order
}
