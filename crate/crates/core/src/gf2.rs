//! Dense linear algebra over F₂ on packed `u64` words.

/// A row vector over F₂.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.toggle(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        if self.get(i) != value {
            self.toggle(i);
        }
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the bitwise AND, i.e. the dot product over F₂.
    pub fn dot(&self, other: &BitVec) -> bool {
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        ones % 2 == 1
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + bit)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first_one_from(&self, start: usize) -> Option<usize> {
        let mut k = start / 64;
        if k >= self.words.len() {
            return None;
        }
        let mut w = self.words[k] & (!0u64 << (start % 64));
        loop {
            if w != 0 {
                let i = k * 64 + w.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
            k += 1;
            if k >= self.words.len() {
                return None;
            }
            w = self.words[k];
        }
    }
}

/// Row echelon form of a list of vectors, with the pivot column of each row.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Self { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Echelon form of the span of `rows` (each of length `ncols`).
    pub fn from_rows(ncols: usize, rows: impl IntoIterator<Item = BitVec>) -> Self {
        let mut e = Self::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows in place.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    ///
    /// Rows are kept fully reduced against each other's pivots so that
    /// [`Echelon::reduce`] is a single pass.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        debug_assert_eq!(v.len(), self.ncols);
        self.reduce(&mut v);
        let Some(p) = v.first_one_from(0) else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

pub fn rank(ncols: usize, rows: &[BitVec]) -> usize {
    Echelon::from_rows(ncols, rows.iter().cloned()).rank()
}

/// Solves `A x = b` where row `i` of `A` is `rows[i]` and `b[i] = rhs[i]`.
///
/// Free variables are set to zero. Returns `None` if the system is
/// inconsistent.
pub fn solve(nvars: usize, rows: &[BitVec], rhs: &[bool]) -> Option<BitVec> {
    assert_eq!(rows.len(), rhs.len());
    let mut aug: Vec<BitVec> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            debug_assert_eq!(r.len(), nvars);
            let mut a = BitVec::zeros(nvars + 1);
            a.words[..r.words.len()].copy_from_slice(&r.words);
            a.set(nvars, b);
            a
        })
        .collect();
    solve_augmented(nvars, &mut aug)
}

/// Like [`solve`] but on rows that already carry the right-hand side in
/// column `nvars`. The rows are destroyed.
pub fn solve_augmented(nvars: usize, aug: &mut [BitVec]) -> Option<BitVec> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    let mut col = 0;
    while r < aug.len() && col < nvars {
        // Find the leftmost column at or after `col` with a nonzero entry
        // among the remaining rows.
        let mut best: Option<(usize, usize)> = None;
        for (k, row) in aug.iter().enumerate().skip(r) {
            if let Some(c) = row.first_one_from(col) {
                if c < nvars && best.is_none_or(|(bc, _)| c < bc) {
                    best = Some((c, k));
                    if c == col {
                        break;
                    }
                }
            }
        }
        let Some((c, k)) = best else {
            break;
        };
        aug.swap(r, k);
        let (head, tail) = aug.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row.get(c) {
                row.xor_assign(pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        col = c + 1;
    }
    if aug[r..].iter().any(|row| row.get(nvars)) {
        return None;
    }
    let mut x = BitVec::zeros(nvars);
    for k in (0..r).rev() {
        let row = &aug[k];
        let mut val = row.get(nvars);
        for c in row.ones() {
            if c > pivots[k] && c < nvars && x.get(c) {
                val = !val;
            }
        }
        x.set(pivots[k], val);
    }
    Some(x)
}

/// A basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn nullspace(ncols: usize, rows: &[BitVec]) -> Vec<BitVec> {
    let e = Echelon::from_rows(ncols, rows.iter().cloned());
    let pivot_set: std::collections::HashSet<usize> = e.pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut v = BitVec::zeros(ncols);
        v.set(free, true);
        // Rows are fully reduced, so each pivot variable is determined by
        // the free variables in its row.
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            if row.get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}
