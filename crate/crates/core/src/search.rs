//! Support enumeration with incremental syndromes.
//!
//! Column syndromes are packed into `u64` words; a candidate support's
//! syndrome is the XOR of its columns. Supports are visited in lexicographic
//! order inside a partition keyed by the smallest index, so the first hit of a
//! weight level is the lexicographically smallest one regardless of how the
//! partitions are scheduled.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gf2::{words_for, BitMatrix, BitVec};
use crate::par;

const HASH_SEED: u64 = 0x6261_6c70_726f_6431;

/// Binomial coefficients `C(x, k)` for `x ≤ n`, `k ≤ kmax`, saturating.
#[derive(Debug, Clone)]
pub(crate) struct Binomial {
    kmax: usize,
    table: Vec<u64>,
}

impl Binomial {
    pub fn new(n: usize, kmax: usize) -> Self {
        let mut table = vec![0u64; (n + 1) * (kmax + 1)];
        for x in 0..=n {
            table[x * (kmax + 1)] = 1;
            for k in 1..=kmax.min(x) {
                let a = if k < x { table[(x - 1) * (kmax + 1) + k] } else { 0 };
                let b = table[(x - 1) * (kmax + 1) + k - 1];
                table[x * (kmax + 1) + k] = a.saturating_add(b);
            }
        }
        Self { kmax, table }
    }

    #[inline]
    pub fn get(&self, x: usize, k: usize) -> u64 {
        if k > x {
            return 0;
        }
        debug_assert!(k <= self.kmax);
        self.table[x * (self.kmax + 1) + k]
    }
}

/// `C(n, k)` without a table, saturating at `u64::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Number of `k`-subsets of `0..n` lexicographically smaller than `support`.
pub(crate) fn lex_rank(n: usize, support: &[usize]) -> u64 {
    let k = support.len();
    let mut rank = 0u64;
    let mut prev: isize = -1;
    for (d, &c) in support.iter().enumerate() {
        for x in (prev + 1) as usize..c {
            rank = rank.saturating_add(binomial(n - 1 - x, k - 1 - d));
        }
        prev = c as isize;
    }
    rank
}

/// Calls `f` on every `k`-subset of `0..m` in lexicographic order until it
/// returns `Some`.
pub(crate) fn for_each_combo<T>(m: usize, k: usize, mut f: impl FnMut(&[usize]) -> Option<T>) -> Option<T> {
    if k > m {
        return None;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        if let Some(t) = f(&c) {
            return Some(t);
        }
        let mut d = k;
        loop {
            if d == 0 {
                return None;
            }
            d -= 1;
            if c[d] < m - (k - d) {
                break;
            }
        }
        c[d] += 1;
        for e in d + 1..k {
            c[e] = c[e - 1] + 1;
        }
    }
}

/// Precomputed column data for one search problem.
pub(crate) struct Engine {
    n: usize,
    sw: usize,
    syn: Vec<u64>,
    mw: usize,
    masks: Vec<u64>,
    hashes: Vec<u64>,
}

/// Sorted `(syndrome hash, colex rank)` pairs for every support of one weight.
pub(crate) struct Table {
    pub w1: usize,
    pub entries: Vec<(u64, u64)>,
}

impl Engine {
    /// `check` detects the error type; `logicals` are the opposing logical
    /// operators a candidate must pair with. `None` means every nonzero
    /// zero-syndrome vector counts (classical codewords).
    pub fn new(check: &BitMatrix, logicals: Option<&[BitVec]>) -> Self {
        let n = check.cols();
        let sw = words_for(check.rows()).max(1);
        let t = check.transpose();
        let mut syn = vec![0u64; n * sw];
        for j in 0..n {
            let w = t.row_words(j);
            syn[j * sw..j * sw + w.len()].copy_from_slice(w);
        }
        let (mw, masks) = match logicals {
            None => (0, Vec::new()),
            Some(ls) => {
                let mw = words_for(ls.len()).max(1);
                let mut masks = vec![0u64; n * mw];
                for (li, l) in ls.iter().enumerate() {
                    assert_eq!(l.len(), n);
                    for q in l.iter_ones() {
                        masks[q * mw + li / 64] |= 1u64 << (li % 64);
                    }
                }
                (mw, masks)
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(HASH_SEED);
        let row_keys: Vec<u64> = (0..check.rows()).map(|_| rng.next_u64()).collect();
        let hashes = (0..n)
            .map(|j| {
                let mut h = 0u64;
                for (wi, &w) in syn[j * sw..(j + 1) * sw].iter().enumerate() {
                    let mut x = w;
                    while x != 0 {
                        let b = x.trailing_zeros() as usize;
                        x &= x - 1;
                        h ^= row_keys[wi * 64 + b];
                    }
                }
                h
            })
            .collect();
        Self {
            n,
            sw,
            syn,
            mw,
            masks,
            hashes,
        }
    }

    #[inline]
    fn col(&self, j: usize) -> &[u64] {
        &self.syn[j * self.sw..(j + 1) * self.sw]
    }

    pub fn syndrome_is_zero(&self, support: &[usize]) -> bool {
        let mut acc = vec![0u64; self.sw];
        for &q in support {
            for (a, b) in acc.iter_mut().zip(self.col(q)) {
                *a ^= b;
            }
        }
        acc.iter().all(|&w| w == 0)
    }

    /// Assumes a zero syndrome; checks the logical action.
    pub fn nontrivial(&self, support: &[usize]) -> bool {
        if self.mw == 0 {
            return !support.is_empty();
        }
        let mut acc = vec![0u64; self.mw];
        for &q in support {
            for (a, b) in acc.iter_mut().zip(&self.masks[q * self.mw..(q + 1) * self.mw]) {
                *a ^= b;
            }
        }
        acc.iter().any(|&w| w != 0)
    }

    pub fn is_hit(&self, support: &[usize]) -> bool {
        self.syndrome_is_zero(support) && self.nontrivial(support)
    }

    /// Visits `k`-subsets of `pool` lexicographically, with `base` as the
    /// syndrome of a fixed prefix; `on_zero` sees the chosen qubits of every
    /// zero-syndrome completion.
    fn sweep_pool<T>(
        &self,
        pool: &[usize],
        k: usize,
        base: &[u64],
        mut on_zero: impl FnMut(&[usize]) -> Option<T>,
    ) -> Option<T> {
        let sw = self.sw;
        if k == 0 {
            return if base.iter().all(|&w| w == 0) { on_zero(&[]) } else { None };
        }
        let m = pool.len();
        if k > m {
            return None;
        }
        let mut pos: Vec<usize> = (0..k).collect();
        let mut chosen = vec![0usize; k];
        let mut partial = vec![0u64; k * sw];
        let mut start = 0;
        loop {
            for d in start..k {
                chosen[d] = pool[pos[d]];
                let (before, rest) = partial.split_at_mut(d * sw);
                let prev = if d == 0 { base } else { &before[(d - 1) * sw..] };
                let col = &self.syn[chosen[d] * sw..(chosen[d] + 1) * sw];
                for ((dst, a), b) in rest[..sw].iter_mut().zip(prev).zip(col) {
                    *dst = a ^ b;
                }
            }
            if partial[(k - 1) * sw..].iter().all(|&w| w == 0) {
                if let Some(t) = on_zero(&chosen) {
                    return Some(t);
                }
            }
            let mut d = k;
            loop {
                if d == 0 {
                    return None;
                }
                d -= 1;
                if pos[d] < m - (k - d) {
                    break;
                }
            }
            pos[d] += 1;
            for e in d + 1..k {
                pos[e] = pos[e - 1] + 1;
            }
            start = d;
        }
    }

    /// Lexicographically first hit of weight `w`, if any.
    pub fn first_at_weight(&self, w: usize) -> Option<Vec<usize>> {
        let n = self.n;
        if w == 0 || w > n {
            return None;
        }
        par::find_map_first(0..n - w + 1, |i| {
            let pool: Vec<usize> = (i + 1..n).collect();
            self.sweep_pool(&pool, w - 1, self.col(i), |rest| {
                let mut s = Vec::with_capacity(w);
                s.push(i);
                s.extend_from_slice(rest);
                self.nontrivial(&s).then_some(s)
            })
        })
    }

    /// Whether any hit of weight `w` contains one of `reps` (sorted). Supports
    /// are attributed to their smallest representative, so each is visited once.
    pub fn exists_with_rep(&self, w: usize, reps: &[usize]) -> bool {
        let n = self.n;
        if w == 0 || w > n {
            return false;
        }
        let mut is_rep = vec![false; n];
        for &r in reps {
            is_rep[r] = true;
        }
        par::any(0..reps.len(), |ti| {
            let t = reps[ti];
            let pool: Vec<usize> = (0..n).filter(|&q| q != t && !(is_rep[q] && q < t)).collect();
            self.sweep_pool(&pool, w - 1, self.col(t), |rest| {
                let mut s: Vec<usize> = rest.to_vec();
                let at = s.partition_point(|&q| q < t);
                s.insert(at, t);
                self.nontrivial(&s).then_some(())
            })
            .is_some()
        })
    }

    /// Candidate count of the representative-restricted sweep at weight `w`.
    pub fn reduced_count(&self, w: usize, reps: &[usize]) -> u64 {
        reps.iter()
            .enumerate()
            .map(|(i, _)| binomial(self.n - 1 - i, w.saturating_sub(1)))
            .fold(0u64, |a, b| a.saturating_add(b))
    }

    /// All `w1`-subsets keyed by syndrome hash, ordered so that for a fixed
    /// hash the subsets with largest element below `b` form a prefix.
    pub fn build_table(&self, w1: usize, binom: &Binomial) -> Table {
        let n = self.n;
        let mut entries = par::flat_map_collect(w1.saturating_sub(1)..n, |j| {
            let mut out = Vec::with_capacity(binom.get(j, w1 - 1) as usize);
            let base = binom.get(j, w1);
            for_each_combo(j, w1 - 1, |c| {
                let mut h = self.hashes[j];
                let mut rank = base;
                for (i, &a) in c.iter().enumerate() {
                    h ^= self.hashes[a];
                    rank += binom.get(a, i + 1);
                }
                out.push((h, rank));
                None::<()>
            });
            out
        });
        par::sort_unstable(&mut entries);
        Table { w1, entries }
    }

    fn unrank_colex(&self, mut rank: u64, k: usize, binom: &Binomial) -> Vec<usize> {
        let mut out = vec![0usize; k];
        let mut hi = self.n;
        for i in (1..=k).rev() {
            let mut a = hi - 1;
            while binom.get(a, i) > rank {
                a -= 1;
            }
            out[i - 1] = a;
            rank -= binom.get(a, i);
            hi = a;
        }
        out
    }

    /// Meet-in-the-middle search at weight `w = table.w1 + w2`. Every support
    /// is split as (first `w1` indices, last `w2` indices) so it is tested once.
    pub fn mitm_at_weight(&self, w: usize, table: &Table, binom: &Binomial) -> Option<Vec<usize>> {
        let n = self.n;
        let w1 = table.w1;
        let w2 = w - w1;
        if w > n || w2 == 0 {
            return None;
        }
        par::min_of(w1..n - w2 + 1, |b0| {
            let limit = binom.get(b0, w1);
            let m = n - b0 - 1;
            let mut best: Option<Vec<usize>> = None;
            for_each_combo(m, w2 - 1, |c| {
                let mut h = self.hashes[b0];
                for &x in c {
                    h ^= self.hashes[b0 + 1 + x];
                }
                let lo = table.entries.partition_point(|&e| e < (h, 0));
                let hi = table.entries.partition_point(|&e| e < (h, limit));
                for &(_, rank) in &table.entries[lo..hi] {
                    let mut s = self.unrank_colex(rank, w1, binom);
                    s.push(b0);
                    s.extend(c.iter().map(|&x| b0 + 1 + x));
                    if self.is_hit(&s) && best.as_ref().is_none_or(|b| s < *b) {
                        best = Some(s);
                    }
                }
                None::<()>
            });
            best
        })
    }

    /// Weight-1 hits, smallest index first.
    pub fn single_hit(&self) -> Option<Vec<usize>> {
        (0..self.n).map(|q| vec![q]).find(|s| self.is_hit(s))
    }
}
