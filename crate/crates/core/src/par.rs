//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature disabled every helper runs sequentially and
//! [`Parallelism::Parallel`] behaves like [`Parallelism::Sequential`]. Results
//! always come back in input order.

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    #[default]
    Parallel,
}

impl Parallelism {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// Maps `f` over `items`, preserving order.
pub fn map<T, R, F>(mode: Parallelism, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode.is_parallel() && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Maps a fallible `f` over `items`; the first error in input order wins.
pub fn try_map<T, R, E, F>(mode: Parallelism, items: &[T], f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    map(mode, items, f).into_iter().collect()
}

/// Keeps the items satisfying `pred`, preserving order.
pub fn filter<T, F>(mode: Parallelism, items: Vec<T>, pred: F) -> Vec<T>
where
    T: Send + Sync,
    F: Fn(&T) -> bool + Sync + Send,
{
    let keep = map(mode, &items, |t| pred(t));
    items.into_iter().zip(keep).filter(|(_, k)| *k).map(|(t, _)| t).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let v: Vec<u64> = (0..1000).collect();
        let a = map(Parallelism::Sequential, &v, |x| x * x);
        let b = map(Parallelism::Parallel, &v, |x| x * x);
        assert_eq!(a, b);
        let e = filter(Parallelism::Parallel, v.clone(), |x| x % 7 == 0);
        assert_eq!(e.len(), 143);
        let r: Result<Vec<u64>, u64> =
            try_map(Parallelism::Parallel, &v, |&x| if x == 500 || x == 900 { Err(x) } else { Ok(x) });
        assert_eq!(r, Err(500));
    }
}
