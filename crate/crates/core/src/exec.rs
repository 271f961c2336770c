//! Execution strategy for the data-parallel loops (strength rows, oracle
//! enumeration, batch solving). Without the `parallel` feature every
//! strategy runs sequentially.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Sequential,
    Parallel,
}

impl Default for Strategy {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Strategy::Parallel
        } else {
            Strategy::Sequential
        }
    }
}

impl Strategy {
    pub(crate) fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Strategy::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub(crate) fn map_ordered<T, R, F>(strategy: Strategy, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = strategy;
    items.iter().map(f).collect()
}

/// Smallest `i` in `0..len` with `pred(i)`, whatever the strategy.
pub(crate) fn find_first_index<F>(strategy: Strategy, len: u64, pred: F) -> Option<u64>
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if strategy.is_parallel() {
        use rayon::prelude::*;
        return (0..len).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = strategy;
    (0..len).find(|&i| pred(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_agree() {
        for s in [Strategy::Sequential, Strategy::Parallel] {
            assert_eq!(find_first_index(s, 10_000, |i| i % 977 == 976), Some(976));
            assert_eq!(find_first_index(s, 10, |_| false), None);
            assert_eq!(map_ordered(s, &[1, 2, 3], |x| x * 2), vec![2, 4, 6]);
        }
    }
}
