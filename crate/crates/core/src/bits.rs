//! Fixed-length bit vectors and the fused intersection/complement popcount
//! that backs all support counting.

const WORD_BITS: usize = 64;

/// A fixed-length vector of bits packed into `u64` words.
///
/// Bits past `len` in the last word are kept at zero so whole-word
/// operations (intersection counts, popcounts) need no per-call masking.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(WORD_BITS)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn set(&mut self, index: usize) {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] |= 1 << (index % WORD_BITS);
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len, "bit index {index} out of range {}", self.len);
        self.words[index / WORD_BITS] >> (index % WORD_BITS) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn words(&self) -> &[u64] {
        &self.words
    }

    /// Mask of the valid bits in word `w` (all-ones except the tail word).
    fn word_mask(&self, w: usize) -> u64 {
        let tail = self.len % WORD_BITS;
        if w + 1 == self.words.len() && tail != 0 {
            (1 << tail) - 1
        } else {
            !0
        }
    }
}

/// Count positions where every vector in `pos` has a one and every vector in
/// `neg` has a zero. All vectors must share the same length `len`; with both
/// slices empty this is simply `len` (the always-true condition).
pub fn count_joint(len: usize, pos: &[&BitVec], neg: &[&BitVec]) -> usize {
    for v in pos.iter().chain(neg) {
        assert_eq!(v.len(), len, "bit vector length mismatch");
    }
    let template = BitVec::zeros(len);
    let n_words = template.words().len();
    let mut total = 0;
    for w in 0..n_words {
        let mut acc = template.word_mask(w);
        for v in pos {
            acc &= v.words()[w];
        }
        for v in neg {
            acc &= !v.words()[w];
        }
        total += acc.count_ones() as usize;
    }
    total
}
