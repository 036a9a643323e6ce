//! Data-parallel sweep primitives. With the `parallel` feature they run on
//! the rayon pool; without it they are plain loops. Every primitive returns
//! the same value in both modes: searches report the first hit in index
//! order, maps keep input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Whether sweeps run on the rayon pool.
pub const PARALLEL: bool = cfg!(feature = "parallel");

/// `f(i)` holds for every `i < n`.
pub fn all<F>(n: u64, f: F) -> bool
where
    F: Fn(u64) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).all(f)
    }
}

/// The result of `f` on the least index where it returns `Some`.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// `items.map(f)` in input order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// `(0..n).map(f)` in index order.
pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn searches_report_first_hit() {
        let xs: Vec<u32> = (0..1000).collect();
        assert_eq!(find_map_first(&xs, |&x| (x % 97 == 96).then_some(x)), Some(96));
        assert_eq!(map(&xs[..4], |x| x * 2), vec![0, 2, 4, 6]);
        assert!(all(1000, |i| i < 1000));
        assert!(!all(1000, |i| i != 517));
        assert_eq!(map_range(3, |i| i + 1), vec![1, 2, 3]);
    }
}
