//! Gauss–Legendre rules, cached per degree.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use crate::real::Real;

/// Nodes and weights on `[-1, 1]`, nodes ascending.
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes from `gauss-quad`, symmetrized so that `x_i = -x_{d-1-i}` holds exactly.
    fn compute(degree: usize) -> Self {
        let Some(d) = NonZeroUsize::new(degree) else {
            return Self { nodes: Vec::new(), weights: Vec::new() };
        };
        let pairs = gauss_quad::GaussLegendre::new(d).into_node_weight_pairs();
        let nodes = (0..degree).map(|i| 0.5 * (pairs[i].0 - pairs[degree - 1 - i].0)).collect();
        let weights = (0..degree).map(|i| 0.5 * (pairs[i].1 + pairs[degree - 1 - i].1)).collect();
        Self { nodes, weights }
    }

    /// Cached rule of the given degree.
    pub fn of_degree(degree: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(degree)
            .or_insert_with(|| Arc::new(Self::compute(degree)))
            .clone()
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<T: Real>(&self, a: T, b: T, mut f: impl FnMut(T) -> T) -> T {
        let half = (b - a) * T::half();
        let mid = (a + b) * T::half();
        let mut acc = crate::real::CompensatedSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(T::lit(w) * f(mid + half * T::lit(x)));
        }
        acc.value() * half
    }

    /// Mapped `(node, weight)` pairs on `[a, b]`.
    pub fn mapped<T: Real>(&self, a: T, b: T) -> impl Iterator<Item = (T, T)> + '_ {
        let half = (b - a) * T::half();
        let mid = (a + b) * T::half();
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * T::lit(x), half * T::lit(w)))
    }
}

/// Splits `[a, b]` at the sorted interior points of `breaks`.
pub(crate) fn pieces<T: Real>(a: T, b: T, breaks: &[T]) -> Vec<(T, T)> {
    let mut cuts: Vec<T> = breaks.iter().copied().filter(|&c| c > a && c < b).collect();
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    cuts.dedup();
    let mut out = Vec::with_capacity(cuts.len() + 1);
    let mut left = a;
    for c in cuts {
        out.push((left, c));
        left = c;
    }
    out.push((left, b));
    out
}
