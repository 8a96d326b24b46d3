//! Data-parallel helpers with a sequential fallback.
//!
//! Grid sweeps, oracle campaigns and optimizer seeding are embarrassingly
//! parallel over independent sample points. With the default `parallel`
//! feature these map over a rayon pool; without it they run sequentially and
//! produce byte-identical results (outputs are collected in input order and
//! reductions use an order-independent tie-break).

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `items`, preserving order.
#[cfg(feature = "parallel")]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_collect<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Evaluate `f` on `0..n` and return the (index, value) pairs with the
/// largest values, at most `keep` of them, sorted by value descending with
/// index ascending as tie-break. The tie-break makes the result independent
/// of how the range was split across threads.
pub fn top_k_by_value<F>(n: usize, keep: usize, f: F) -> Vec<(usize, f64)>
where
    F: Fn(usize) -> f64 + Sync + Send,
{
    let merge = move |mut acc: Vec<(usize, f64)>, item: (usize, f64)| {
        acc.push(item);
        acc.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        acc.truncate(keep);
        acc
    };

    #[cfg(feature = "parallel")]
    {
        (0..n)
            .into_par_iter()
            .map(|i| (i, f(i)))
            .fold(Vec::new, merge)
            .reduce(Vec::new, |a, b| {
                b.into_iter().fold(a, |acc, item| merge(acc, item))
            })
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(|i| (i, f(i))).fold(Vec::new(), merge)
    }
}
