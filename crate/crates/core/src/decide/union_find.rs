/// Disjoint sets with union by rank and path compression, counting the
/// logical `find` and `union` calls made through [`UnionFind::find`] and
/// [`UnionFind::union`].
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    finds: usize,
    unions: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            finds: 0,
            unions: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        self.finds += 1;
        self.root(x)
    }

    /// Whether `a` and `b` are in the same set, counted as a single find.
    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.finds += 1;
        self.root(a) == self.root(b)
    }

    /// Representative lookup that is not counted.
    pub fn root(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Merge the sets of `a` and `b`; returns false when they were already
    /// merged (and then counts nothing).
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        self.unions += 1;
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn finds(&self) -> usize {
        self.finds
    }

    pub fn unions(&self) -> usize {
        self.unions
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn matches_naive_partition(ops in proptest::collection::vec((0..12usize, 0..12usize), 0..40)) {
            let mut uf = UnionFind::new(12);
            let mut label: Vec<usize> = (0..12).collect();
            let mut merges = 0;
            for (a, b) in ops {
                let (la, lb) = (label[a], label[b]);
                let fresh = la != lb;
                prop_assert_eq!(uf.union(a, b), fresh);
                if fresh {
                    merges += 1;
                    for l in label.iter_mut() {
                        if *l == lb {
                            *l = la;
                        }
                    }
                }
                prop_assert_eq!(uf.find(a), uf.find(b));
            }
            prop_assert_eq!(uf.unions(), merges);
            for x in 0..12 {
                for y in 0..12 {
                    prop_assert_eq!(uf.root(x) == uf.root(y), label[x] == label[y]);
                }
            }
        }
    }

    #[test]
    fn counters() {
        let mut uf = UnionFind::new(3);
        uf.find(0);
        uf.union(0, 1);
        uf.union(1, 0);
        uf.root(2);
        assert_eq!((uf.finds(), uf.unions()), (1, 1));
    }
}
