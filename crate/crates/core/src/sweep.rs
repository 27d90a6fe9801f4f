//! Batch evaluation over independent inputs.
//!
//! With the `parallel` feature (on by default) work is spread over the rayon
//! pool; without it, or with [`Exec::Sequential`], items run in order on the
//! calling thread. Results always come back in input order.

use crate::error::Result;
use crate::family::{optimal_horizon, s_int, sample_path, PathSample};
use crate::lie::Mat2;
use crate::synthesis::{solve_with, SynthesisSolution, Tolerances};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Order-preserving map. `Parallel` falls back to sequential when the crate
/// is built without the `parallel` feature.
pub fn map<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

pub fn solve_batch(
    exec: Exec,
    pairs: &[(Mat2, Mat2)],
    tol: &Tolerances,
) -> Vec<Result<SynthesisSolution>> {
    map(exec, pairs, |(xi, xf)| solve_with(*xi, *xf, tol))
}

pub fn s_int_sweep(exec: Exec, cs: &[f64]) -> Vec<Result<f64>> {
    map(exec, cs, |&c| s_int(c))
}

/// Each path sampled on its optimal segment (capped at `s_cap`).
pub fn optimal_paths(exec: Exec, cs: &[f64], n: usize, s_cap: f64) -> Vec<Result<Vec<PathSample>>> {
    map(exec, cs, |&c| {
        sample_path(c, optimal_horizon(c).min(s_cap), n)
    })
}
