//! Dense square bit matrix used for reachability closures and query bookkeeping.

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            words: vec![0; n * words_per_row],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> bool {
        let w = self.words[row * self.words_per_row + col / 64];
        (w >> (col % 64)) & 1 == 1
    }

    /// Sets the bit and reports whether it was previously clear.
    #[inline]
    pub fn insert(&mut self, row: usize, col: usize) -> bool {
        let w = &mut self.words[row * self.words_per_row + col / 64];
        let mask = 1u64 << (col % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    pub fn row(&self, row: usize) -> &[u64] {
        let start = row * self.words_per_row;
        &self.words[start..start + self.words_per_row]
    }

    /// `self[dst] |= self[src]`.
    pub fn union_rows(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            let bits = self.words[src * w + k];
            self.words[dst * w + k] |= bits;
        }
    }

    pub fn row_iter(&self, row: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(row)
            .iter()
            .enumerate()
            .flat_map(|(k, &word)| {
                let mut word = word;
                std::iter::from_fn(move || {
                    if word == 0 {
                        return None;
                    }
                    let bit = word.trailing_zeros() as usize;
                    word &= word - 1;
                    Some(k * 64 + bit)
                })
            })
            .filter(move |&c| c < n)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// All `(row, col)` positions where the two matrices differ.
    pub fn diff(&self, other: &BitMatrix) -> Vec<(usize, usize)> {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                if self.get(r, c) != other.get(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }
}
