//! Execution mode switch for the data-parallel engines.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work out over
//! rayon; without it every engine runs its sequential path regardless of the mode
//! requested. Results never depend on the mode: every reduction merges with an
//! explicit deterministic tie-break.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
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

impl Exec {
    /// True when this mode will actually run on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Map `f` over `0..len` and fold the results with `merge`, starting from `identity`.
///
/// `merge` must be associative and commutative with respect to the final answer
/// (callers use min-by-key style merges with total orders).
pub fn map_reduce<T, F, M>(exec: Exec, len: usize, identity: T, f: F, merge: M) -> T
where
    T: Send + Sync + Clone,
    F: Fn(usize) -> T + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len)
            .into_par_iter()
            .map(&f)
            .reduce(|| identity.clone(), &merge);
    }
    let _ = exec;
    (0..len).map(f).fold(identity, merge)
}

/// First `Some` in index order, `f` evaluated possibly out of order.
pub fn find_map_first<T, F>(exec: Exec, len: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().find_map_first(f);
    }
    let _ = exec;
    (0..len).find_map(f)
}

/// `f` applied to every item, results kept in input order.
pub fn map_collect<I, T, F>(exec: Exec, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}
