/// Lexicographic wedge bases of `Λ²` and `Λ⁴` on an `n`-dimensional space.
///
/// Indices are 0-based internally: pair `(i, j)` with `i < j` stands for
/// `e_{i+1} ∧ e_{j+1}`. Pairs are ordered `(0,1), (0,2), …, (0,n-1), (1,2), …`,
/// quadruples likewise. Every file format in the crate uses this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
    quads: Vec<[usize; 4]>,
    pair_pos: Vec<usize>,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl WedgeBasis {
    pub fn new(n: usize) -> Self {
        let mut pairs = Vec::with_capacity(binomial(n, 2));
        let mut pair_pos = vec![usize::MAX; n * n];
        for i in 0..n {
            for j in i + 1..n {
                pair_pos[i * n + j] = pairs.len();
                pairs.push((i, j));
            }
        }
        let mut quads = Vec::with_capacity(binomial(n, 4));
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    for l in k + 1..n {
                        quads.push([i, j, k, l]);
                    }
                }
            }
        }
        WedgeBasis { n, pairs, quads, pair_pos }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn quads(&self) -> &[[usize; 4]] {
        &self.quads
    }

    pub fn dim2(&self) -> usize {
        self.pairs.len()
    }

    pub fn dim4(&self) -> usize {
        self.quads.len()
    }

    /// Position of `(i, j)`, `i < j`, in the lexicographic pair list.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        self.pair_pos[i * self.n + j]
    }
}
