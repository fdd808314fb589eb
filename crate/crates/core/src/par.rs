//! Data-parallel helpers. With the `parallel` feature these dispatch to
//! rayon; without it every call runs sequentially.

/// Execution strategy for batch loops.
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

impl Exec {
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items.par_iter().map(f).collect()
            }
            _ => items.iter().map(f).collect(),
        }
    }

    pub fn map_range<R, F>(self, range: std::ops::Range<usize>, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                range.into_par_iter().map(f).collect()
            }
            _ => range.map(f).collect(),
        }
    }

    /// Lowest index whose result is `Some`, with that result.
    pub fn find_first<T, R, F>(self, items: &[T], f: F) -> Option<(usize, R)>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> Option<R> + Sync + Send,
    {
        match self {
            #[cfg(feature = "parallel")]
            Exec::Parallel => {
                use rayon::prelude::*;
                items
                    .par_iter()
                    .enumerate()
                    .filter_map(|(i, t)| f(t).map(|r| (i, r)))
                    .find_first(|_| true)
            }
            _ => items.iter().enumerate().find_map(|(i, t)| f(t).map(|r| (i, r))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn find_first_reports_lowest_index() {
        let items: Vec<u32> = (0..1000).collect();
        for exec in [Exec::Sequential, Exec::Parallel] {
            let hit = exec.find_first(&items, |&x| (x % 97 == 96).then_some(x));
            assert_eq!(hit, Some((96, 96)));
        }
    }

    #[test]
    fn map_preserves_order() {
        let items: Vec<u32> = (0..257).collect();
        let seq = Exec::Sequential.map(&items, |x| x * 3);
        let par = Exec::Parallel.map(&items, |x| x * 3);
        assert_eq!(seq, par);
    }
}
