//! Logical counting, logical bases with symplectic pairing, block-localized
//! logicals of a balanced product, and subsystem views.

use std::sync::OnceLock;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};
use crate::products::CssPair;
use crate::symmetry::{orbit_sum, Perm, SymmetricSeed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CssError {
    #[error("logical counts disagree: rank route gives {by_rank}, kernel route gives {by_kernel}")]
    Inconsistent { by_rank: usize, by_kernel: usize },
    #[error("orbit length {l} is even; orbit indicators would pair evenly with their partners")]
    EvenOrbit { l: usize },
    #[error("pair does not come from this seed: expected {expected} qubits, found {found}")]
    SeedMismatch { expected: usize, found: usize },
    #[error("supplied {pauli} operator {index} is not a logical: {reason}")]
    NotLogical { pauli: char, index: usize, reason: &'static str },
    #[error("supplied pairs are not symplectic: entry ({row}, {col}) of the pairing matrix is wrong")]
    BadPairing { row: usize, col: usize },
    #[error("logical index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("logical operators already fixed for this code")]
    AlreadySet,
}

/// Paired logical bases: `lx[i]·lz[j] = δ_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalSet {
    pub lx: Vec<BitVec>,
    pub lz: Vec<BitVec>,
}

impl LogicalSet {
    pub fn k(&self) -> usize {
        self.lx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lx.is_empty()
    }

    /// `pairing[i][j] = lx[i]·lz[j]`.
    pub fn pairing(&self) -> BitMatrix {
        BitMatrix::from_fn(self.lx.len(), self.lz.len(), |i, j| self.lx[i].dot(&self.lz[j]))
    }
}

/// A commuting pair with its logical count and (lazily) a logical basis.
#[derive(Debug)]
pub struct CssCode {
    pair: CssPair,
    rank_x: usize,
    rank_z: usize,
    k: usize,
    logicals: OnceLock<LogicalSet>,
}

impl Clone for CssCode {
    fn clone(&self) -> Self {
        let logicals = OnceLock::new();
        if let Some(l) = self.logicals.get() {
            let _ = logicals.set(l.clone());
        }
        Self {
            pair: self.pair.clone(),
            rank_x: self.rank_x,
            rank_z: self.rank_z,
            k: self.k,
            logicals,
        }
    }
}

/// Computes `k` as `n − rank hx − rank hz` and as `dim ker hx − rank hz`.
pub fn analyze(pair: CssPair) -> Result<CssCode, CssError> {
    let n = pair.n();
    let rank_x = pair.hx().rank();
    let rank_z = pair.hz().rank();
    let by_rank = n - rank_x - rank_z;
    let by_kernel = pair.hx().kernel_basis().len() - rank_z;
    if by_rank != by_kernel {
        return Err(CssError::Inconsistent { by_rank, by_kernel });
    }
    Ok(CssCode {
        pair,
        rank_x,
        rank_z,
        k: by_rank,
        logicals: OnceLock::new(),
    })
}

impl CssCode {
    pub fn pair(&self) -> &CssPair {
        &self.pair
    }

    pub fn hx(&self) -> &BitMatrix {
        self.pair.hx()
    }

    pub fn hz(&self) -> &BitMatrix {
        self.pair.hz()
    }

    pub fn n(&self) -> usize {
        self.pair.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rank_x(&self) -> usize {
        self.rank_x
    }

    pub fn rank_z(&self) -> usize {
        self.rank_z
    }

    /// Logical basis, computed by [`logical_basis`] on first use unless one
    /// was installed with [`CssCode::set_logicals`].
    pub fn logicals(&self) -> &LogicalSet {
        self.logicals.get_or_init(|| logical_basis(self))
    }

    /// Installs a validated basis (for example one seeded with block logicals).
    pub fn set_logicals(&self, set: LogicalSet) -> Result<(), CssError> {
        validate_set(self, &set)?;
        self.logicals.set(set).map_err(|_| CssError::AlreadySet)
    }

    pub fn is_x_logical(&self, v: &BitVec) -> bool {
        self.hz().mul_vec(v).map(|s| s.is_zero()).unwrap_or(false) && !self.hx().in_rowspace(v).unwrap_or(true)
    }

    pub fn is_z_logical(&self, v: &BitVec) -> bool {
        self.hx().mul_vec(v).map(|s| s.is_zero()).unwrap_or(false) && !self.hz().in_rowspace(v).unwrap_or(true)
    }
}

fn validate_set(code: &CssCode, set: &LogicalSet) -> Result<(), CssError> {
    if set.lx.len() != code.k() || set.lz.len() != code.k() {
        return Err(CssError::IndexOutOfRange {
            index: set.lx.len().max(set.lz.len()),
            k: code.k(),
        });
    }
    validate_pairs(code, &set.lx, &set.lz)
}

fn validate_pairs(code: &CssCode, lx: &[BitVec], lz: &[BitVec]) -> Result<(), CssError> {
    for (pauli, ops, check) in [('X', lx, code.hz()), ('Z', lz, code.hx())] {
        for (index, v) in ops.iter().enumerate() {
            if v.len() != code.n() {
                return Err(CssError::NotLogical { pauli, index, reason: "wrong length" });
            }
            if !check.mul_vec(v).expect("length checked").is_zero() {
                return Err(CssError::NotLogical { pauli, index, reason: "nonzero syndrome" });
            }
        }
    }
    for (row, x) in lx.iter().enumerate() {
        for (col, z) in lz.iter().enumerate() {
            if x.dot(z) != (row == col) {
                return Err(CssError::BadPairing { row, col });
            }
        }
    }
    Ok(())
}

/// Vectors of `candidates` independent modulo `base` rows and each other.
fn independent_modulo(base: &BitMatrix, fixed: &[BitVec], candidates: Vec<BitVec>) -> Vec<BitVec> {
    let mut rows = base.row_vecs();
    rows.extend_from_slice(fixed);
    let mut rank = BitMatrix::from_rows(base.cols(), &rows).expect("same width").rank();
    let mut out = Vec::new();
    for v in candidates {
        rows.push(v.clone());
        let r = BitMatrix::from_rows(base.cols(), &rows).expect("same width").rank();
        if r > rank {
            rank = r;
            out.push(v);
        } else {
            rows.pop();
        }
    }
    out
}

fn symplectic_gram_schmidt(mut xs: Vec<BitVec>, mut zs: Vec<BitVec>) -> (Vec<BitVec>, Vec<BitVec>) {
    let mut lx = Vec::new();
    let mut lz = Vec::new();
    while !xs.is_empty() {
        let x = xs.remove(0);
        let zi = zs
            .iter()
            .position(|z| x.dot(z))
            .expect("pairing between logical spaces is nondegenerate");
        let z = zs.remove(zi);
        for other in xs.iter_mut() {
            if other.dot(&z) {
                *other ^= &x;
            }
        }
        for other in zs.iter_mut() {
            if x.dot(other) {
                *other ^= &z;
            }
        }
        lx.push(x);
        lz.push(z);
    }
    (lx, lz)
}

/// Deterministic paired basis: kernel vectors kept in order when independent
/// of the stabilizers, then greedy symplectic Gram–Schmidt.
pub fn logical_basis(code: &CssCode) -> LogicalSet {
    logical_basis_with(code, &[]).expect("no seeds to reject")
}

/// Like [`logical_basis`], but the given `(x, z)` pairs come first, unchanged.
/// The remaining operators are made orthogonal to them.
pub fn logical_basis_with(code: &CssCode, seeds: &[(BitVec, BitVec)]) -> Result<LogicalSet, CssError> {
    let sx: Vec<BitVec> = seeds.iter().map(|p| p.0.clone()).collect();
    let sz: Vec<BitVec> = seeds.iter().map(|p| p.1.clone()).collect();
    validate_pairs(code, &sx, &sz)?;
    for (pauli, ops, stab) in [('X', &sx, code.hx()), ('Z', &sz, code.hz())] {
        for (index, v) in ops.iter().enumerate() {
            if stab.in_rowspace(v).expect("length checked") {
                return Err(CssError::NotLogical { pauli, index, reason: "inside the stabilizer row space" });
            }
        }
    }
    if seeds.len() > code.k() {
        return Err(CssError::IndexOutOfRange { index: seeds.len() - 1, k: code.k() });
    }
    let mut xs = independent_modulo(code.hx(), &sx, code.hz().kernel_basis());
    let mut zs = independent_modulo(code.hz(), &sz, code.hx().kernel_basis());
    debug_assert_eq!(xs.len(), code.k() - seeds.len());
    debug_assert_eq!(zs.len(), code.k() - seeds.len());
    for (x0, z0) in seeds {
        for v in xs.iter_mut() {
            if v.dot(z0) {
                *v ^= x0;
            }
        }
        for v in zs.iter_mut() {
            if x0.dot(v) {
                *v ^= z0;
            }
        }
    }
    let (gx, gz) = symplectic_gram_schmidt(xs, zs);
    let mut lx = sx;
    let mut lz = sz;
    lx.extend(gx);
    lz.extend(gz);
    Ok(LogicalSet { lx, lz })
}

/// Which block of a balanced product the constructed logicals live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Left when the seed has at least as many rows as columns.
    pub fn auto(seed: &SymmetricSeed) -> Side {
        let (m, n) = seed.incidence().shape();
        if m >= n {
            Side::Left
        } else {
            Side::Right
        }
    }
}

/// Block-localized logical pairs of `balanced_product(seed)`.
///
/// Left: `l_Z = [Σ Rⁱv; 0]` for `v ∈ ker Iᵀ`, partnered with the `R`-orbit
/// indicator of a pivot column of the reduced `l_Z` stack. Right is the mirror
/// image with `ker I` and `C`. Each `l_X·l_Z = l`, so `l` must be odd.
pub fn block_logicals(seed: &SymmetricSeed, pair: &CssPair, side: Option<Side>) -> Result<Vec<(BitVec, BitVec)>, CssError> {
    let l = seed.orbit_len();
    if l.is_multiple_of(2) {
        return Err(CssError::EvenOrbit { l });
    }
    let i = seed.incidence();
    let (m, n) = i.shape();
    if pair.n() != m + n {
        return Err(CssError::SeedMismatch { expected: m + n, found: pair.n() });
    }
    let side = side.unwrap_or_else(|| Side::auto(seed));
    let (kernel, sym, len) = match side {
        Side::Left => (i.transpose().kernel_basis(), seed.row_sym(), m),
        Side::Right => (i.kernel_basis(), seed.col_sym(), n),
    };
    let sums: Vec<BitVec> = kernel.iter().map(|v| orbit_sum(sym, v, l)).collect();
    let stack = BitMatrix::from_rows(len, &sums).expect("same width");
    let ech = stack.row_reduce();
    let place = |v: &BitVec| match side {
        Side::Left => v.concat(&BitVec::zeros(n)),
        Side::Right => BitVec::zeros(m).concat(v),
    };
    Ok((0..ech.rank)
        .map(|j| {
            let sym_vec = ech.rref.row(j);
            let indicator = orbit_sum(sym, &BitVec::from_support(len, [ech.pivot_cols[j]]), l);
            let (x, z) = match side {
                Side::Left => (indicator, sym_vec),
                Side::Right => (sym_vec, indicator),
            };
            (place(&x), place(&z))
        })
        .collect())
}

/// How the dropped logical pairs are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Gauge {
    /// Dropped qubits are prepared in |0⟩, so their Z logicals act as extra
    /// X-detecting checks. An X error must commute with them to go unseen.
    #[default]
    FixedZero,
    /// Dropped qubits are free gauge: any dressing by their logicals is allowed.
    Dressed,
}

/// A code with only some logical pairs retained; distances quantify over
/// operators that act on a retained pair.
#[derive(Debug, Clone)]
pub struct SubsystemView {
    hx: BitMatrix,
    hz: BitMatrix,
    x_detect: BitMatrix,
    gauge: Gauge,
    retained: Vec<usize>,
    lx: Vec<BitVec>,
    lz: Vec<BitVec>,
}

impl SubsystemView {
    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn retained(&self) -> &[usize] {
        &self.retained
    }

    pub fn lx(&self) -> &[BitVec] {
        &self.lx
    }

    pub fn lz(&self) -> &[BitVec] {
        &self.lz
    }

    pub fn gauge(&self) -> Gauge {
        self.gauge
    }

    /// The matrix whose kernel holds undetected X errors: `hz`, plus the
    /// dropped Z logicals under [`Gauge::FixedZero`].
    pub fn x_detect(&self) -> &BitMatrix {
        &self.x_detect
    }
}

/// Keeps the logical pairs at `retained` of the code's current basis, with
/// the dropped qubits fixed in |0⟩.
pub fn subsystem_restrict(code: &CssCode, retained: &[usize]) -> Result<SubsystemView, CssError> {
    subsystem_restrict_with(code, retained, Gauge::FixedZero)
}

pub fn subsystem_restrict_with(code: &CssCode, retained: &[usize], gauge: Gauge) -> Result<SubsystemView, CssError> {
    let set = code.logicals();
    let mut idx = retained.to_vec();
    idx.sort_unstable();
    idx.dedup();
    if let Some(&index) = idx.iter().find(|&&i| i >= set.k()) {
        return Err(CssError::IndexOutOfRange { index, k: set.k() });
    }
    let x_detect = match gauge {
        Gauge::Dressed => code.hz().clone(),
        Gauge::FixedZero => {
            let mut rows = code.hz().row_vecs();
            rows.extend((0..set.k()).filter(|i| idx.binary_search(i).is_err()).map(|i| set.lz[i].clone()));
            BitMatrix::from_rows(code.n(), &rows).expect("same width")
        }
    };
    Ok(SubsystemView {
        hx: code.hx().clone(),
        hz: code.hz().clone(),
        x_detect,
        gauge,
        lx: idx.iter().map(|&i| set.lx[i].clone()).collect(),
        lz: idx.iter().map(|&i| set.lz[i].clone()).collect(),
        retained: idx,
    })
}

/// Every pair except those at `dropped`.
pub fn subsystem_drop(code: &CssCode, dropped: &[usize]) -> Result<SubsystemView, CssError> {
    subsystem_drop_with(code, dropped, Gauge::FixedZero)
}

pub fn subsystem_drop_with(code: &CssCode, dropped: &[usize], gauge: Gauge) -> Result<SubsystemView, CssError> {
    let k = code.logicals().k();
    if let Some(&index) = dropped.iter().find(|&&i| i >= k) {
        return Err(CssError::IndexOutOfRange { index, k });
    }
    let keep: Vec<usize> = (0..k).filter(|i| !dropped.contains(i)).collect();
    subsystem_restrict_with(code, &keep, gauge)
}

/// Whether `p` maps the row space of `m` onto itself (column action).
pub(crate) fn preserves_rowspace(m: &BitMatrix, p: &Perm) -> bool {
    let ech = m.row_reduce();
    (0..m.rows()).all(|r| ech.contains(&p.permute_vec(&m.row(r))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::products::{balanced_product, hypergraph_product};
    use crate::symmetry::certify_seed;

    fn example1() -> (SymmetricSeed, CssPair) {
        let i = BitMatrix::from_fn(6, 6, |r, c| c == r || c == (r + 1) % 6);
        let r = Perm::shift(6, 4);
        let seed = certify_seed(&i, &r, &r.inverse(), 3).unwrap();
        let pair = balanced_product(&seed);
        (seed, pair)
    }

    #[test]
    fn example1_counts() {
        let (_, pair) = example1();
        let code = analyze(pair).unwrap();
        assert_eq!((code.n(), code.k()), (12, 2));
        assert_eq!((code.rank_x(), code.rank_z()), (5, 5));
    }

    #[test]
    fn basis_is_paired() {
        let (_, pair) = example1();
        let code = analyze(pair).unwrap();
        let set = code.logicals();
        assert_eq!(set.pairing(), BitMatrix::identity(2));
        for v in &set.lx {
            assert!(code.is_x_logical(v));
        }
        for v in &set.lz {
            assert!(code.is_z_logical(v));
        }
    }

    #[test]
    fn left_block_pair_on_example1() {
        let (seed, pair) = example1();
        let pairs = block_logicals(&seed, &pair, Some(Side::Left)).unwrap();
        assert_eq!(pairs.len(), 1);
        let (x, z) = &pairs[0];
        assert_eq!(x.support(), vec![0, 2, 4]);
        assert_eq!(z.support(), vec![0, 1, 2, 3, 4, 5]);
        let code = analyze(pair.clone()).unwrap();
        let set = logical_basis_with(&code, &pairs).unwrap();
        assert_eq!(set.lx[0], *x);
        assert_eq!(set.pairing(), BitMatrix::identity(2));
        let right = block_logicals(&seed, &pair, Some(Side::Right)).unwrap();
        assert_eq!(right.len(), 1);
        assert_eq!(right[0].1.support(), vec![6, 8, 10]);
    }

    #[test]
    fn even_orbit_refused() {
        let i = BitMatrix::identity(4);
        let r = Perm::shift(4, 2);
        let seed = certify_seed(&i, &r, &r.inverse(), 2).unwrap();
        let pair = balanced_product(&seed);
        assert_eq!(block_logicals(&seed, &pair, None), Err(CssError::EvenOrbit { l: 2 }));
    }

    #[test]
    fn zero_logical_code() {
        let h = BitMatrix::from_dense(&[[1, 1]]);
        let code = analyze(hypergraph_product(&h, &h)).unwrap();
        assert_eq!(code.k(), 0);
        assert!(code.logicals().is_empty());
    }

    #[test]
    fn subsystem_indices_checked() {
        let (_, pair) = example1();
        let code = analyze(pair).unwrap();
        assert!(matches!(subsystem_restrict(&code, &[2]), Err(CssError::IndexOutOfRange { index: 2, k: 2 })));
        let v = subsystem_drop(&code, &[0]).unwrap();
        assert_eq!(v.retained(), &[1]);
    }

    #[test]
    fn rejects_bad_seed_pairs() {
        let (_, pair) = example1();
        let code = analyze(pair).unwrap();
        let stab = code.hx().row(0);
        let z = code.logicals().lz[0].clone();
        assert!(logical_basis_with(&code, &[(stab, z)]).is_err());
    }
}
