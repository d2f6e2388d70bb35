//! Small shared helpers: union-find and dense tuple enumeration.

/// Union-find with path compression, used for congruence closure and
/// word-store merging.
#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn push(&mut self) -> usize {
        let id = self.parent.len();
        self.parent.push(id);
        id
    }

    pub fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Returns true if the two elements were in distinct classes.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so representatives are canonical.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// Iterates over all tuples in `{0..base}^len` in row-major (odometer) order.
pub(crate) fn tuples(base: usize, len: usize) -> TupleIter {
    TupleIter {
        base,
        current: vec![0; len],
        done: base == 0 && len > 0,
        started: false,
    }
}

pub(crate) struct TupleIter {
    base: usize,
    current: Vec<usize>,
    done: bool,
    started: bool,
}

impl Iterator for TupleIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        for i in (0..self.current.len()).rev() {
            self.current[i] += 1;
            if self.current[i] < self.base {
                return Some(self.current.clone());
            }
            self.current[i] = 0;
        }
        self.done = true;
        None
    }
}

/// Row-major index of a tuple over a carrier of the given size.
pub(crate) fn tuple_index(size: usize, args: &[usize]) -> usize {
    let mut idx = 0;
    for &a in args {
        idx = idx * size + a;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuple_enumeration_is_row_major() {
        let all: Vec<_> = tuples(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(3, 0).count(), 1);
        assert_eq!(tuple_index(3, &[1, 2]), 5);
        assert_eq!(tuple_index(4, &[]), 0);
    }

    #[test]
    fn union_find_keeps_least_representative() {
        let mut uf = UnionFind::new(5);
        uf.union(3, 4);
        uf.union(1, 3);
        assert_eq!(uf.find(4), 1);
        assert!(uf.same(1, 4));
        assert!(!uf.same(0, 4));
    }
}
