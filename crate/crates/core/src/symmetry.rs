//! Permutations, orbits and certification of the intertwining symmetry
//! `R·I = I·Cᵀ` that the balanced product needs.
//!
//! Orientation: `perm_matrix(p)` maps basis vector `e_j` to `e_{p(j)}`, so
//! applied on the left it moves row `j` to row `p(j)`.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("not a bijection: image {image} repeated or out of range at index {index}")]
    NotBijection { index: usize, image: usize },
    #[error("matrix is not a permutation matrix (column {column})")]
    NotPermutationMatrix { column: usize },
}

/// A permutation of `0..size`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn new(image: Vec<usize>) -> Result<Self, PermError> {
        let mut seen = vec![false; image.len()];
        for (index, &i) in image.iter().enumerate() {
            if i >= image.len() || seen[i] {
                return Err(PermError::NotBijection { index, image: i });
            }
            seen[i] = true;
        }
        Ok(Self { image })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// `j ↦ (j + k) mod n`.
    pub fn shift(n: usize, k: usize) -> Self {
        Self {
            image: (0..n).map(|j| (j + k) % n).collect(),
        }
    }

    /// Reads a permutation back from its matrix.
    pub fn from_matrix(m: &BitMatrix) -> Result<Self, PermError> {
        let n = m.cols();
        let mut image = Vec::with_capacity(n);
        for column in 0..n {
            let col = m.column(column);
            if m.rows() != n || col.weight() != 1 {
                return Err(PermError::NotPermutationMatrix { column });
            }
            image.push(col.iter_ones().next().unwrap());
        }
        Self::new(image).map_err(|e| match e {
            PermError::NotBijection { index, .. } => PermError::NotPermutationMatrix { column: index },
            other => other,
        })
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.size()];
        for (j, &i) in self.image.iter().enumerate() {
            inv[i] = j;
        }
        Perm { image: inv }
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &Perm) -> Perm {
        assert_eq!(self.size(), next.size());
        Perm {
            image: self.image.iter().map(|&i| next.image[i]).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> Perm {
        let mut out = Perm::identity(self.size());
        for _ in 0..k {
            out = out.then(self);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(j, &i)| i == j)
    }

    /// `perm_matrix(self) · v`.
    pub fn permute_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(v.len(), self.size());
        BitVec::from_support(v.len(), v.iter_ones().map(|j| self.image[j]))
    }

    /// `self ⊗ 𝟙_r`: index `i·r + a` goes to `p(i)·r + a`.
    pub fn kron_identity(&self, r: usize) -> Perm {
        let n = self.size();
        Perm {
            image: (0..n * r).map(|x| self.image[x / r] * r + x % r).collect(),
        }
    }

    /// `𝟙_m ⊗ self`: index `b·l + s` goes to `b·l + p(s)`.
    pub fn identity_kron(&self, m: usize) -> Perm {
        let l = self.size();
        Perm {
            image: (0..m * l).map(|x| (x / l) * l + self.image[x % l]).collect(),
        }
    }

    /// Block direct sum: `self` on the first `self.size()` indices, `other`
    /// shifted past them.
    pub fn direct_sum(&self, other: &Perm) -> Perm {
        let off = self.size();
        Perm {
            image: self
                .image
                .iter()
                .copied()
                .chain(other.image.iter().map(|&i| i + off))
                .collect(),
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.image)
    }
}

pub fn perm_matrix(p: &Perm) -> BitMatrix {
    let mut m = BitMatrix::zeros(p.size(), p.size());
    for (j, &i) in p.image().iter().enumerate() {
        m.set(i, j, true);
    }
    m
}

/// Cycles of `p`, each listed in cycle order from its smallest element, sorted
/// by smallest element.
pub fn orbits(p: &Perm) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.size()];
    let mut out = Vec::new();
    for start in 0..p.size() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = p.apply(start);
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = p.apply(i);
        }
        out.push(cycle);
    }
    out
}

/// `Σ_{i<l} perm_matrix(p)^i · v`.
pub fn orbit_sum(p: &Perm, v: &BitVec, l: usize) -> BitVec {
    assert_eq!(p.size(), v.len(), "orbit_sum: permutation and vector sizes differ");
    let mut acc = BitVec::zeros(v.len());
    let mut cur = v.clone();
    for _ in 0..l {
        acc ^= &cur;
        cur = p.permute_vec(&cur);
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    Intertwine,
    Order,
    OrbitLength,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Intertwine => "intertwine",
            ViolationKind::Order => "order",
            ViolationKind::OrbitLength => "orbit-length",
        })
    }
}

/// The first failing identity, with the smallest index at which it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witness: usize,
    pub detail: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeedError {
    #[error("{} violation at index {}: {}", .0.kind, .0.witness, .0.detail)]
    Violation(Violation),
    #[error("size mismatch: matrix is {rows}x{cols}, row symmetry has size {row_sym}, column symmetry has size {col_sym}")]
    SizeMismatch {
        rows: usize,
        cols: usize,
        row_sym: usize,
        col_sym: usize,
    },
}

impl SeedError {
    pub fn violation(&self) -> Option<&Violation> {
        match self {
            SeedError::Violation(v) => Some(v),
            _ => None,
        }
    }
}

/// Smallest row index `i` where `(R·I)[i] ≠ (I·Cᵀ)[i]`, if any.
pub fn intertwine_failure(i: &BitMatrix, r: &Perm, c: &Perm) -> Option<usize> {
    let r_inv = r.inverse();
    // (R·I)[row] = I[r⁻¹(row)];  (I·Cᵀ)[row][j] = I[row][c⁻¹(j)], i.e. column k moves to c(k)
    (0..i.rows()).find(|&row| {
        let lhs = i.row(r_inv.apply(row));
        let rhs = BitVec::from_support(i.cols(), i.row(row).iter_ones().map(|k| c.apply(k)));
        lhs != rhs
    })
}

/// Provenance notes carried with a certified seed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SeedMeta {
    /// Which side of the incidence relation indexes the rows, e.g. "rows=edges".
    pub orientation: String,
    /// The builder had to invert its natural column action to satisfy the
    /// intertwining identity.
    pub col_sym_transposed: bool,
    pub source: String,
}

/// A matrix `I` with certified order-`l` symmetry `R·I = I·Cᵀ`, every orbit
/// of `R` and `C` of length exactly `l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSeed {
    incidence: BitMatrix,
    row_sym: Perm,
    col_sym: Perm,
    orbit_len: usize,
    meta: SeedMeta,
}

impl SymmetricSeed {
    pub fn incidence(&self) -> &BitMatrix {
        &self.incidence
    }

    pub fn row_sym(&self) -> &Perm {
        &self.row_sym
    }

    pub fn col_sym(&self) -> &Perm {
        &self.col_sym
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit_len
    }

    pub fn meta(&self) -> &SeedMeta {
        &self.meta
    }

    pub fn with_meta(mut self, meta: SeedMeta) -> Self {
        self.meta = meta;
        self
    }

    /// `max(dim ker I, dim ker Iᵀ)`.
    pub fn k0(&self) -> usize {
        let rank = self.incidence.rank();
        (self.incidence.cols() - rank).max(self.incidence.rows() - rank)
    }
}

fn first_bad_orbit(p: &Perm, l: usize) -> Option<(usize, usize)> {
    let mut worst: Option<(usize, usize)> = None;
    for cycle in orbits(p) {
        if cycle.len() != l {
            let min = cycle[0];
            if worst.is_none_or(|(w, _)| min < w) {
                worst = Some((min, cycle.len()));
            }
        }
    }
    worst
}

/// Certifies `(I, R, C, l)`. Checks, in order: the intertwining identity,
/// orbit lengths of `R` then `C`, and `R^l = C^l = 𝟙`.
pub fn certify_seed(i: &BitMatrix, r: &Perm, c: &Perm, l: usize) -> Result<SymmetricSeed, SeedError> {
    if r.size() != i.rows() || c.size() != i.cols() {
        return Err(SeedError::SizeMismatch {
            rows: i.rows(),
            cols: i.cols(),
            row_sym: r.size(),
            col_sym: c.size(),
        });
    }
    if let Some(row) = intertwine_failure(i, r, c) {
        return Err(SeedError::Violation(Violation {
            kind: ViolationKind::Intertwine,
            witness: row,
            detail: format!("row {row} of R·I differs from row {row} of I·Cᵀ"),
        }));
    }
    for (name, p) in [("R", r), ("C", c)] {
        if let Some((witness, len)) = first_bad_orbit(p, l) {
            return Err(SeedError::Violation(Violation {
                kind: ViolationKind::OrbitLength,
                witness,
                detail: format!("orbit of {name} through {witness} has length {len}, expected {l}"),
            }));
        }
    }
    // implied by uniform orbit length, kept as an independent check
    for (name, p) in [("R", r), ("C", c)] {
        let pl = p.pow(l);
        if let Some(witness) = (0..p.size()).find(|&j| pl.apply(j) != j) {
            return Err(SeedError::Violation(Violation {
                kind: ViolationKind::Order,
                witness,
                detail: format!("{name}^{l} moves {witness}"),
            }));
        }
    }
    Ok(SymmetricSeed {
        incidence: i.clone(),
        row_sym: r.clone(),
        col_sym: c.clone(),
        orbit_len: l,
        meta: SeedMeta::default(),
    })
}
