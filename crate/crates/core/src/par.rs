//! Execution mode for the data-parallel loops.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! current rayon pool; without it every call runs sequentially. Every
//! reduction used here is order-independent, so both modes give identical
//! results.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// `true` if `pred` holds for any item.
    pub fn any<T, F>(self, items: &[T], pred: F) -> bool
    where
        T: Sync,
        F: Fn(&T) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().any(pred);
        }
        items.iter().any(pred)
    }

    /// First item (in slice order) for which `f` returns `Some`.
    pub fn find_map_first<T, U, F>(self, items: &[T], f: F) -> Option<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> Option<U> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().find_map_first(f);
        }
        items.iter().find_map(f)
    }

    /// Folds `0..len` into accumulators created by `init` and merged with
    /// `merge`. `merge` must be associative and commutative.
    pub fn fold_range<A, I, F, M>(self, len: u64, init: I, fold: F, merge: M) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, u64) -> A + Sync + Send,
        M: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..len)
                .into_par_iter()
                .fold(&init, &fold)
                .reduce(&init, &merge);
        }
        #[cfg(not(feature = "parallel"))]
        let _ = merge;
        (0..len).fold(init(), fold)
    }
}

/// All `n`-bit masks with exactly `size` bits set, in increasing order.
pub fn masks_of_size(n: usize, size: usize) -> Vec<u64> {
    assert!(n <= 64 && size <= n);
    if size == 0 {
        return vec![0];
    }
    let limit: u128 = 1u128 << n;
    let mut out = Vec::new();
    let mut m: u64 = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
    loop {
        out.push(m);
        // Gosper's hack
        let c = m & m.wrapping_neg();
        let r = m as u128 + c as u128;
        if r >= limit {
            break;
        }
        let r = r as u64;
        m = (((r ^ m) >> 2) / c) | r;
    }
    out
}
