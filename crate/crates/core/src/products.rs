//! CSS code constructions: balanced product, hypergraph product, the general
//! two-sided balanced product and distance balancing.
//!
//! Column layout conventions are fixed here and recorded in each pair's
//! `layout`:
//!
//! * balanced product: qubits `0..m` index rows of `I` (left block), `m..m+n`
//!   index columns of `I` (right block);
//! * hypergraph product `(h1, h2)`: left block `c1·r2` qubits indexed
//!   `j·r2 + b`, right block `r1·c2` qubits indexed `a·c2 + k`;
//! * general balanced product: left block `ny·l·mx`, right block `my·l·nx`,
//!   Kronecker index order as written in the factor products.

use std::fmt;

use thiserror::Error;

use crate::gf2::{BitMatrix, Gf2Error};
use crate::symmetry::{perm_matrix, Perm, SymmetricSeed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("qubit count mismatch: hx has {hx} columns, hz has {hz}")]
    ColumnMismatch { hx: usize, hz: usize },
    #[error("checks do not commute: hx row {x_row} overlaps hz row {z_row} oddly")]
    NotCommuting { x_row: usize, z_row: usize },
    #[error("layout blocks cover {covered} qubits, code has {n}")]
    BadLayout { covered: usize, n: usize },
    #[error("{matrix} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape {
        matrix: &'static str,
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("{matrix} does not commute with the symmetry: first differing row {witness}")]
    Symmetry { matrix: &'static str, witness: usize },
    #[error(transparent)]
    Algebra(#[from] Gf2Error),
}

/// A contiguous, named range of qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn new(name: impl Into<String>, start: usize, len: usize) -> Self {
        Self {
            name: name.into(),
            start,
            len,
        }
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.len
    }
}

/// X and Z parity checks on the same qubits with `hx·hzᵀ = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CssPair {
    hx: BitMatrix,
    hz: BitMatrix,
    layout: Vec<Block>,
    provenance: String,
}

/// Index of the first odd-overlap pair `(hx row, hz row)`, if any.
pub fn commutation_failure(hx: &BitMatrix, hz: &BitMatrix) -> Option<(usize, usize)> {
    (0..hx.rows()).find_map(|x| {
        let rx = hx.row(x);
        (0..hz.rows()).find(|&z| rx.dot(&hz.row(z))).map(|z| (x, z))
    })
}

impl CssPair {
    /// Validates shapes, commutation and that `layout` tiles `0..n` in order.
    /// An empty layout is replaced by a single block named "all".
    pub fn new(hx: BitMatrix, hz: BitMatrix, layout: Vec<Block>, provenance: impl Into<String>) -> Result<Self, ProductError> {
        if hx.cols() != hz.cols() {
            return Err(ProductError::ColumnMismatch {
                hx: hx.cols(),
                hz: hz.cols(),
            });
        }
        if let Some((x_row, z_row)) = commutation_failure(&hx, &hz) {
            return Err(ProductError::NotCommuting { x_row, z_row });
        }
        let n = hx.cols();
        let layout = if layout.is_empty() { vec![Block::new("all", 0, n)] } else { layout };
        let mut covered = 0;
        for b in &layout {
            if b.start != covered {
                return Err(ProductError::BadLayout { covered, n });
            }
            covered += b.len;
        }
        if covered != n {
            return Err(ProductError::BadLayout { covered, n });
        }
        Ok(Self {
            hx,
            hz,
            layout,
            provenance: provenance.into(),
        })
    }

    pub fn hx(&self) -> &BitMatrix {
        &self.hx
    }

    pub fn hz(&self) -> &BitMatrix {
        &self.hz
    }

    pub fn n(&self) -> usize {
        self.hx.cols()
    }

    pub fn layout(&self) -> &[Block] {
        &self.layout
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn block(&self, name: &str) -> Option<&Block> {
        self.layout.iter().find(|b| b.name == name)
    }

    /// The same code with X and Z exchanged.
    pub fn dual(&self) -> CssPair {
        Self {
            hx: self.hz.clone(),
            hz: self.hx.clone(),
            layout: self.layout.clone(),
            provenance: format!("dual({})", self.provenance),
        }
    }
}

impl fmt::Display for CssPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CSS pair on {} qubits (hx {}x{}, hz {}x{}) from {}",
            self.n(),
            self.hx.rows(),
            self.hx.cols(),
            self.hz.rows(),
            self.hz.cols(),
            self.provenance
        )
    }
}

fn plus_identity(p: &Perm) -> BitMatrix {
    BitMatrix::identity(p.size()).add(&perm_matrix(p)).expect("square")
}

/// `hx = [Iᵀ | 𝟙+C]`, `hz = [𝟙+R | I]`.
pub fn balanced_product(seed: &SymmetricSeed) -> CssPair {
    let i = seed.incidence();
    let (m, n) = i.shape();
    let hx = BitMatrix::hstack(&[&i.transpose(), &plus_identity(seed.col_sym())]).expect("n rows on both sides");
    let hz = BitMatrix::hstack(&[&plus_identity(seed.row_sym()), i]).expect("m rows on both sides");
    let provenance = if seed.meta().source.is_empty() {
        format!("balanced_product(l={})", seed.orbit_len())
    } else {
        format!("balanced_product({}, l={})", seed.meta().source, seed.orbit_len())
    };
    CssPair::new(hx, hz, vec![Block::new("left", 0, m), Block::new("right", m, n)], provenance)
        .expect("a certified seed always yields commuting checks")
}

/// `hx = [h1⊗𝟙_{r2} | 𝟙_{r1}⊗h2]`, `hz = [𝟙_{c1}⊗h2ᵀ | h1ᵀ⊗𝟙_{c2}]`.
pub fn hypergraph_product(h1: &BitMatrix, h2: &BitMatrix) -> CssPair {
    let (r1, c1) = h1.shape();
    let (r2, c2) = h2.shape();
    let hx = BitMatrix::hstack(&[&h1.kron(&BitMatrix::identity(r2)), &BitMatrix::identity(r1).kron(h2)]).expect("r1·r2 rows");
    let hz = BitMatrix::hstack(&[&BitMatrix::identity(c1).kron(&h2.transpose()), &h1.transpose().kron(&BitMatrix::identity(c2))])
        .expect("c1·c2 rows");
    CssPair::new(
        hx,
        hz,
        vec![Block::new("left", 0, c1 * r2), Block::new("right", c1 * r2, r1 * c2)],
        format!("hypergraph_product({r1}x{c1}, {r2}x{c2})"),
    )
    .expect("hypergraph product checks commute")
}

fn check_shape(matrix: &'static str, m: &BitMatrix, want_rows: usize, want_cols: usize) -> Result<(), ProductError> {
    if m.shape() != (want_rows, want_cols) {
        return Err(ProductError::Shape {
            matrix,
            rows: m.rows(),
            cols: m.cols(),
            want_rows,
            want_cols,
        });
    }
    Ok(())
}

/// First row where `P·M ≠ M·Q` for permutations `P` (rows) and `Q` (columns).
fn equivariance_failure(m: &BitMatrix, p: &Perm, q: &Perm) -> Option<usize> {
    let lhs = m.permute_rows(p.image());
    let rhs = m.mul(&perm_matrix(q)).expect("square symmetry");
    (0..m.rows()).find(|&r| lhs.row_words(r) != rhs.row_words(r))
}

/// Sizes of the two factors of the general balanced product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralDims {
    pub nx: usize,
    pub mx: usize,
    pub ny: usize,
    pub my: usize,
}

/// Two-sided balanced product over a common order-`l` symmetry `r`.
///
/// `ix` is `(l·nx)×(l·mx)` with `(R⊗𝟙)·ix = ix·(R⊗𝟙)`; `iy` is `(ny·l)×(my·l)`
/// with `(𝟙⊗R)·iy = iy·(𝟙⊗R)`. Returns `hx = [𝟙_{ny}⊗ix | iy⊗𝟙_{nx}]` and
/// `hz = [iyᵀ⊗𝟙_{mx} | 𝟙_{my}⊗ixᵀ]`.
pub fn general_balanced_product(ix: &BitMatrix, iy: &BitMatrix, r: &Perm, dims: GeneralDims) -> Result<CssPair, ProductError> {
    let l = r.size();
    let GeneralDims { nx, mx, ny, my } = dims;
    check_shape("ix", ix, l * nx, l * mx)?;
    check_shape("iy", iy, ny * l, my * l)?;
    if let Some(witness) = equivariance_failure(ix, &r.kron_identity(nx), &r.kron_identity(mx)) {
        return Err(ProductError::Symmetry { matrix: "ix", witness });
    }
    if let Some(witness) = equivariance_failure(iy, &r.identity_kron(ny), &r.identity_kron(my)) {
        return Err(ProductError::Symmetry { matrix: "iy", witness });
    }
    let hx = BitMatrix::hstack(&[&BitMatrix::identity(ny).kron(ix), &iy.kron(&BitMatrix::identity(nx))])?;
    let hz = BitMatrix::hstack(&[&iy.transpose().kron(&BitMatrix::identity(mx)), &BitMatrix::identity(my).kron(&ix.transpose())])?;
    let left = ny * l * mx;
    CssPair::new(
        hx,
        hz,
        vec![Block::new("left", 0, left), Block::new("right", left, my * l * nx)],
        format!("general_balanced_product(l={l}, nx={nx}, mx={mx}, ny={ny}, my={my})"),
    )
}

/// Which distance the balancing multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BalanceDirection {
    /// Multiplies the X distance (the one detected by `hz`).
    X,
    /// Multiplies the Z distance.
    Z,
}

/// How the inputs are reduced before assembly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Drop dependent rows of the check that forms the upper block of the new
    /// Z checks and of `hc`; keep the other check as given.
    #[default]
    Standard,
    /// Drop dependent rows of all three matrices.
    Full,
}

/// Sizes seen by the assembly and the rank bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub direction: BalanceDirection,
    pub normalization: Normalization,
    /// Rows removed from the (role-adjusted) X check, Z check and `hc`.
    pub dropped_x: Vec<usize>,
    pub dropped_z: Vec<usize>,
    pub dropped_c: Vec<usize>,
    pub n: usize,
    pub m_x: usize,
    pub m_z: usize,
    pub n_c: usize,
    pub m_c: usize,
    /// `rows − rank` of the new Z-type check (X-type for balance-Z).
    pub deficiency: usize,
}

impl BalanceReport {
    /// `n·n_C + m_X·m_C`.
    pub fn expected_qubits(&self) -> usize {
        self.n * self.n_c + self.m_x * self.m_c
    }

    /// `m_Z·m_C`.
    pub fn expected_deficiency(&self) -> usize {
        self.m_z * self.m_c
    }
}

fn reduce_rows(m: &BitMatrix) -> (BitMatrix, Vec<usize>) {
    let keep = m.independent_rows();
    let dropped = (0..m.rows()).filter(|r| !keep.contains(r)).collect();
    (m.select_rows(&keep), dropped)
}

/// Tensors `code` with the classical check `hc`:
/// `h̃z = [hz⊗𝟙, 0; 𝟙⊗hc, hxᵀ⊗𝟙]`, `h̃x = [hx⊗𝟙 | 𝟙⊗hcᵀ]` for
/// [`BalanceDirection::X`]; the Z direction runs the same assembly with the
/// two checks exchanged.
pub fn distance_balance(
    code: &CssPair,
    hc: &BitMatrix,
    direction: BalanceDirection,
    normalization: Normalization,
) -> (CssPair, BalanceReport) {
    let (ax, az) = match direction {
        BalanceDirection::X => (code.hx(), code.hz()),
        BalanceDirection::Z => (code.hz(), code.hx()),
    };
    let (az, dropped_z) = reduce_rows(az);
    let (hc, dropped_c) = reduce_rows(hc);
    let (ax, dropped_x) = match normalization {
        Normalization::Standard => (ax.clone(), Vec::new()),
        Normalization::Full => reduce_rows(ax),
    };
    let n = code.n();
    let (m_x, m_z) = (ax.rows(), az.rows());
    let (m_c, n_c) = hc.shape();

    let upper = BitMatrix::hstack(&[&az.kron(&BitMatrix::identity(n_c)), &BitMatrix::zeros(m_z * n_c, m_x * m_c)]).expect("rows agree");
    let lower = BitMatrix::hstack(&[&BitMatrix::identity(n).kron(&hc), &ax.transpose().kron(&BitMatrix::identity(m_c))])
        .expect("rows agree");
    let tz = BitMatrix::vstack(&[&upper, &lower]).expect("columns agree");
    let tx = BitMatrix::hstack(&[&ax.kron(&BitMatrix::identity(n_c)), &BitMatrix::identity(m_x).kron(&hc.transpose())])
        .expect("rows agree");
    let deficiency = tz.rows() - tz.rank();
    let (hx, hz) = match direction {
        BalanceDirection::X => (tx, tz),
        BalanceDirection::Z => (tz, tx),
    };
    let label = match direction {
        BalanceDirection::X => "x",
        BalanceDirection::Z => "z",
    };
    let pair = CssPair::new(
        hx,
        hz,
        vec![Block::new("code", 0, n * n_c), Block::new("checks", n * n_c, m_x * m_c)],
        format!("distance_balance({}, {m_c}x{n_c}, {label})", code.provenance()),
    )
    .expect("balanced checks commute whenever the input pair does");
    let report = BalanceReport {
        direction,
        normalization,
        dropped_x,
        dropped_z,
        dropped_c,
        n,
        m_x,
        m_z,
        n_c,
        m_c,
        deficiency,
    };
    (pair, report)
}
