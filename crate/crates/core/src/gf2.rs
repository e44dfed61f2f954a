//! Dense bit matrices over GF(2).

use crate::matching::BipartiteCrossGraph;

/// Row-major bit matrix packed into 64-bit words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            data: vec![0; rows * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<bool>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row {i}");
            for (j, &bit) in row.iter().enumerate() {
                m.set(i, j, bit);
            }
        }
        m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        assert!(i < self.rows && j < self.cols);
        self.data[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        assert!(i < self.rows && j < self.cols);
        let word = &mut self.data[i * self.words_per_row + j / 64];
        let mask = 1u64 << (j % 64);
        if bit {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// `row[dst] ^= row[src]`.
    pub fn xor_row_into(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let w = self.words_per_row;
        let (s, d) = (src * w, dst * w);
        for k in 0..w {
            let bits = self.data[s + k];
            self.data[d + k] ^= bits;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words_per_row;
        for k in 0..w {
            self.data.swap(a * w + k, b * w + k);
        }
    }

    /// Rank over GF(2). Works on a copy; see [`BitMatrix::into_rank`] to
    /// reuse the storage.
    pub fn rank(&self) -> usize {
        self.clone().into_rank()
    }

    /// Rank over GF(2) by word-parallel Gaussian elimination, consuming the matrix.
    pub fn into_rank(mut self) -> usize {
        let w = self.words_per_row;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let (word, mask) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..self.rows).find(|&r| self.data[r * w + word] & mask != 0)
            else {
                continue;
            };
            self.swap_rows(rank, pivot);
            // Columns before `word` are already zero below the pivot row.
            for r in rank + 1..self.rows {
                if self.data[r * w + word] & mask != 0 {
                    for k in word..w {
                        let bits = self.data[rank * w + k];
                        self.data[r * w + k] ^= bits;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// Biadjacency matrix of a cross graph: rows are left vertices, columns right vertices.
pub fn biadjacency(bg: &BipartiteCrossGraph) -> BitMatrix {
    let mut m = BitMatrix::zeros(bg.left().len(), bg.right().len());
    for &(i, j) in bg.edges() {
        m.set(i, j, true);
    }
    m
}

pub fn rank_gf2(m: &BitMatrix) -> usize {
    m.rank()
}

/// GF(2) rank of the biadjacency matrix across a cut.
pub fn cut_rank(bg: &BipartiteCrossGraph) -> usize {
    // Fewer rows means fewer eliminations; rank is transpose-invariant.
    if bg.left().len() <= bg.right().len() {
        biadjacency(bg).into_rank()
    } else {
        let mut m = BitMatrix::zeros(bg.right().len(), bg.left().len());
        for &(i, j) in bg.edges() {
            m.set(j, i, true);
        }
        m.into_rank()
    }
}
