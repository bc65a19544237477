//! Classical seed matrices: cycles, repetition seeds, random regular graphs
//! and their cyclic lifts, expansion checks, Tanner lifting, and classical
//! distance measurement.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2::{BitMatrix, BitVec};
use crate::par;
use crate::search::{for_each_combo, Engine};
use crate::symmetry::{certify_seed, orbits, Perm, SeedError, SeedMeta, SymmetricSeed};

pub const EXHAUSTIVE_EXPANSION_LIMIT: usize = 24;
pub const SAMPLER_RETRIES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("no simple connected {degree}-regular graph on {vertices} vertices after {retries} attempts")]
    SamplerFailed { vertices: usize, degree: usize, retries: usize },
    #[error("exhaustive expansion check limited to {limit} rows and columns, matrix is {rows}x{cols}")]
    ExpansionBudget { rows: usize, cols: usize, limit: usize },
    #[error("row {row} has weight {weight}, local code has length {expected}")]
    RowWeight { row: usize, weight: usize, expected: usize },
    #[error("edge {edge} joins rows {a} and {b} of the same orbit")]
    IntraOrbitEdge { edge: usize, a: usize, b: usize },
    #[error("column symmetry carries edge {edge} off the support of row {row}")]
    SymmetryMismatch { row: usize, edge: usize },
    #[error("assignment for row {row} is not a bijection onto the local columns")]
    BadAssignment { row: usize },
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// A binary linear code given by its parity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalCode {
    pub h: BitMatrix,
    pub n: usize,
    pub k: usize,
    pub d: Option<usize>,
}

impl ClassicalCode {
    pub fn new(h: BitMatrix) -> Self {
        let n = h.cols();
        let k = n - h.rank();
        Self { h, n, k, d: None }
    }

    /// Fills in `d` when the minimum distance is at most `max_w`.
    pub fn with_distance(mut self, max_w: usize) -> Self {
        self.d = measure_distance_classical(&self.h, max_w);
        self
    }
}

/// Minimum weight of a nonzero `x` with `H·x = 0`, if it is at most `max_w`.
pub fn measure_distance_classical(h: &BitMatrix, max_w: usize) -> Option<usize> {
    let engine = Engine::new(h, None);
    (1..=max_w.min(h.cols())).find(|&w| engine.first_at_weight(w).is_some())
}

/// Row `i` (edge `i`) touches columns `i` and `i+1 mod len`, i.e. `𝟙 + P`.
pub fn cycle_incidence(len: usize) -> Result<BitMatrix, BuildError> {
    if len < 3 {
        return Err(BuildError::CycleTooShort(len));
    }
    Ok(BitMatrix::from_fn(len, len, |r, c| c == r || c == (r + 1) % len))
}

/// Certifies with `c`, falling back to `c⁻¹` and recording the swap.
pub(crate) fn certify_either(i: &BitMatrix, r: &Perm, c: &Perm, l: usize, mut meta: SeedMeta) -> Result<SymmetricSeed, SeedError> {
    match certify_seed(i, r, c, l) {
        Ok(seed) => Ok(seed.with_meta(meta)),
        Err(first) => match certify_seed(i, r, &c.inverse(), l) {
            Ok(seed) => {
                meta.col_sym_transposed = true;
                Ok(seed.with_meta(meta))
            }
            Err(_) => Err(first),
        },
    }
}

/// Length-`l·m` cycle with the order-`l` rotation by `m` steps.
pub fn repetition_seed(l: usize, m: usize) -> Result<SymmetricSeed, BuildError> {
    if l < 2 || m < 1 {
        return Err(BuildError::Parameters(format!("repetition seed needs l >= 2 and m >= 1, got l={l}, m={m}")));
    }
    let n = l * m;
    let i = cycle_incidence(n)?;
    // P maps e_{j+1} to e_j; R = P^m, C = Rᵀ
    let r = Perm::shift(n, n - m);
    let c = r.inverse();
    let seed = certify_seed(&i, &r, &c, l)?;
    Ok(seed.with_meta(SeedMeta {
        orientation: "rows=edges".into(),
        col_sym_transposed: false,
        source: format!("repetition(l={l}, m={m})"),
    }))
}

/// `I0 ⊗ 𝟙_l` with `R = 𝟙 ⊗ M`, `C = 𝟙 ⊗ M⁻¹` for any `l`-cycle `M`.
pub fn lifted_seed(i0: &BitMatrix, l: usize) -> Result<SymmetricSeed, BuildError> {
    if l < 1 {
        return Err(BuildError::Parameters("lift order must be positive".into()));
    }
    let (m, n) = i0.shape();
    let i = i0.kron(&BitMatrix::identity(l));
    let shift = Perm::shift(l, 1);
    let seed = certify_seed(&i, &shift.identity_kron(m), &shift.inverse().identity_kron(n), l)?;
    Ok(seed.with_meta(SeedMeta {
        orientation: "as given".into(),
        col_sym_transposed: false,
        source: format!("lift({}x{}, l={l})", m, n),
    }))
}

fn connected(v: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut comps = v;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    comps <= 1
}

/// Sorted edge list of a simple connected `s`-regular graph on `v` vertices,
/// drawn by the pairing model with rejection.
pub fn random_regular_edges(v: usize, s: usize, seed: u64) -> Result<Vec<(usize, usize)>, BuildError> {
    if s < 3 || v <= s || !(v * s).is_multiple_of(2) {
        return Err(BuildError::Parameters(format!(
            "regular graph needs s >= 3, v > s and v*s even, got v={v}, s={s}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<usize> = (0..v).flat_map(|x| std::iter::repeat_n(x, s)).collect();
    'attempt: for _ in 0..SAMPLER_RETRIES {
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs.chunks(2).map(|p| (p[0].min(p[1]), p[0].max(p[1]))).collect();
        edges.sort_unstable();
        for (i, e) in edges.iter().enumerate() {
            if e.0 == e.1 || (i > 0 && edges[i - 1] == *e) {
                continue 'attempt;
            }
        }
        if connected(v, &edges) {
            return Ok(edges);
        }
    }
    Err(BuildError::SamplerFailed {
        vertices: v,
        degree: s,
        retries: SAMPLER_RETRIES,
    })
}

fn incidence_from_edges(v: usize, edges: &[(usize, usize)]) -> BitMatrix {
    let mut m = BitMatrix::zeros(v, edges.len());
    for (e, &(a, b)) in edges.iter().enumerate() {
        m.set(a, e, true);
        m.set(b, e, true);
    }
    m
}

/// Vertex-by-edge incidence of a random simple connected `s`-regular graph.
pub fn random_regular_incidence(v: usize, s: usize, seed: u64) -> Result<BitMatrix, BuildError> {
    Ok(incidence_from_edges(v, &random_regular_edges(v, s, seed)?))
}

/// Random cyclic `l`-fold cover of a random `s`-regular graph.
///
/// Vertex `(x, t)` has index `x·l + t`; base edge `e = (a, b)` with voltage
/// `g_e` lifts to edges `(a, t)–(b, t + g_e)` at index `e·l + t`. Rotating
/// `t` gives the row and column symmetries, so every orbit has length `l`.
pub fn random_lift_seed(v: usize, s: usize, l: usize, seed: u64) -> Result<SymmetricSeed, BuildError> {
    if l < 1 {
        return Err(BuildError::Parameters("lift order must be positive".into()));
    }
    let base = random_regular_edges(v, s, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut i = BitMatrix::zeros(v * l, base.len() * l);
    for (e, &(a, b)) in base.iter().enumerate() {
        let g = rng.gen_range(0..l);
        for t in 0..l {
            i.set(a * l + t, e * l + t, true);
            i.set(b * l + (t + g) % l, e * l + t, true);
        }
    }
    let rot = Perm::shift(l, 1);
    let meta = SeedMeta {
        orientation: "rows=vertices".into(),
        col_sym_transposed: false,
        source: format!("random_lift(v={v}, s={s}, l={l}, seed={seed})"),
    };
    Ok(certify_either(&i, &rot.identity_kron(v), &rot.identity_kron(base.len()), l, meta)?)
}

/// How exhaustively [`expansion_check`] looks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpansionVerdict {
    Verified,
    /// `witness` violates the bound for `I` (or `Iᵀ` when `transposed`).
    Falsified { witness: BitVec, transposed: bool },
    NotFalsified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCertificate {
    pub alpha: Ratio<u64>,
    pub beta: Ratio<u64>,
    pub mode: ExpansionMode,
    pub verdict: ExpansionVerdict,
}

/// `|I·x| ≥ β|x|` for all `|x| ≤ α·cols`, and `|Iᵀ·y| ≥ β|y|` for all
/// `|y| ≤ α·rows`.
pub fn expansion_check(i: &BitMatrix, alpha: Ratio<u64>, beta: Ratio<u64>, mode: ExpansionMode) -> Result<ExpansionCertificate, BuildError> {
    let verdict = match mode {
        ExpansionMode::Exhaustive => {
            if i.rows().max(i.cols()) > EXHAUSTIVE_EXPANSION_LIMIT {
                return Err(BuildError::ExpansionBudget {
                    rows: i.rows(),
                    cols: i.cols(),
                    limit: EXHAUSTIVE_EXPANSION_LIMIT,
                });
            }
            match first_violation(i, alpha, beta) {
                Some(w) => ExpansionVerdict::Falsified { witness: w, transposed: false },
                None => match first_violation(&i.transpose(), alpha, beta) {
                    Some(w) => ExpansionVerdict::Falsified { witness: w, transposed: true },
                    None => ExpansionVerdict::Verified,
                },
            }
        }
        ExpansionMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let it = i.transpose();
            let mut verdict = ExpansionVerdict::NotFalsified;
            'trials: for _ in 0..trials {
                for (m, transposed) in [(i, false), (&it, true)] {
                    let cap = weight_cap(m.cols(), alpha);
                    if cap == 0 {
                        continue;
                    }
                    let w = rng.gen_range(1..=cap);
                    let support = rand::seq::index::sample(&mut rng, m.cols(), w).into_vec();
                    let x = BitVec::from_support(m.cols(), support);
                    if violates(m.mul_vec(&x).expect("sized").weight(), w, beta) {
                        verdict = ExpansionVerdict::Falsified { witness: x, transposed };
                        break 'trials;
                    }
                }
            }
            verdict
        }
    };
    Ok(ExpansionCertificate { alpha, beta, mode, verdict })
}

fn weight_cap(n: usize, alpha: Ratio<u64>) -> usize {
    (alpha * Ratio::from_integer(n as u64)).floor().to_integer() as usize
}

fn violates(image_weight: usize, weight: usize, beta: Ratio<u64>) -> bool {
    Ratio::from_integer(image_weight as u64) < beta * Ratio::from_integer(weight as u64)
}

/// Smallest-weight, then lexicographically first, `x` breaking the bound.
fn first_violation(i: &BitMatrix, alpha: Ratio<u64>, beta: Ratio<u64>) -> Option<BitVec> {
    let n = i.cols();
    let cols = i.transpose();
    let cap = weight_cap(n, alpha).min(n);
    (1..=cap).find_map(|w| {
        par::find_map_first(0..n - w + 1, |first| {
            let acc = cols.row(first);
            for_each_combo(n - first - 1, w - 1, |rest| {
                let mut y = acc.clone();
                for &x in rest {
                    y ^= &cols.row(first + 1 + x);
                }
                violates(y.weight(), w, beta).then(|| {
                    BitVec::from_support(n, std::iter::once(first).chain(rest.iter().map(|&x| first + 1 + x)))
                })
            })
        })
    })
}

/// Column of the local code assigned to each support entry of one row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TannerAssignment {
    /// `(representative row, local column for each support column in
    /// ascending order)`.
    pub rows: Vec<(usize, Vec<usize>)>,
}

fn check_rows(i0: &BitMatrix, local: &ClassicalCode) -> Result<(), BuildError> {
    for (row, &weight) in i0.row_weights().iter().enumerate() {
        if weight != local.n {
            return Err(BuildError::RowWeight { row, weight, expected: local.n });
        }
    }
    Ok(())
}

fn intra_orbit_edge(i0: &BitMatrix, r0: &Perm) -> Option<(usize, usize, usize)> {
    let mut orbit_of = vec![0; r0.size()];
    for (k, o) in orbits(r0).iter().enumerate() {
        for &v in o {
            orbit_of[v] = k;
        }
    }
    let it = i0.transpose();
    (0..it.rows()).find_map(|edge| {
        let rows = it.row_support(edge);
        rows.iter().enumerate().find_map(|(x, &a)| {
            rows[x + 1..].iter().find(|&&b| orbit_of[a] == orbit_of[b]).map(|&b| (edge, a, b))
        })
    })
}

/// Substitutes the local check into every row of `i0`, assigning local
/// columns on each orbit representative and carrying them along the orbit:
/// the column given to `(v, e)` is given to `(R0ᵗv, C⁻ᵗe)`. Row `v·r + a` of
/// the result is row `a` of the local check placed on row `v`'s support.
/// No certification is attempted.
pub fn tanner_lift_raw(
    i0: &BitMatrix,
    r0: &Perm,
    c: &Perm,
    local: &ClassicalCode,
    assignment: Option<&TannerAssignment>,
) -> Result<BitMatrix, BuildError> {
    check_rows(i0, local)?;
    if r0.size() != i0.rows() || c.size() != i0.cols() {
        return Err(BuildError::Parameters(format!(
            "symmetries of size {} and {} do not fit a {}x{} matrix",
            r0.size(),
            c.size(),
            i0.rows(),
            i0.cols()
        )));
    }
    if let Some((edge, a, b)) = intra_orbit_edge(i0, r0) {
        return Err(BuildError::IntraOrbitEdge { edge, a, b });
    }
    let r = local.h.rows();
    let c_inv = c.inverse();
    let mut out = BitMatrix::zeros(i0.rows() * r, i0.cols());
    for orbit in orbits(r0) {
        let rep = orbit[0];
        let support = i0.row_support(rep);
        let cols: Vec<usize> = match assignment.and_then(|a| a.rows.iter().find(|(row, _)| *row == rep)) {
            Some((_, map)) => {
                let mut sorted = map.clone();
                sorted.sort_unstable();
                if map.len() != local.n || sorted != (0..local.n).collect::<Vec<_>>() {
                    return Err(BuildError::BadAssignment { row: rep });
                }
                map.clone()
            }
            None => (0..local.n).collect(),
        };
        let mut edges = support.clone();
        for &v in &orbit {
            for (&e, &lc) in edges.iter().zip(&cols) {
                if !i0.get(v, e) {
                    return Err(BuildError::SymmetryMismatch { row: v, edge: e });
                }
                for a in 0..r {
                    if local.h.get(a, lc) {
                        out.set(v * r + a, e, true);
                    }
                }
            }
            edges = edges.iter().map(|&e| c_inv.apply(e)).collect();
        }
    }
    Ok(out)
}

/// [`tanner_lift_raw`] followed by certification with `R = R0 ⊗ 𝟙_r`.
pub fn tanner_lift(
    i0: &BitMatrix,
    r0: &Perm,
    c: &Perm,
    l: usize,
    local: &ClassicalCode,
    assignment: Option<&TannerAssignment>,
) -> Result<SymmetricSeed, BuildError> {
    certify_seed(i0, r0, c, l)?;
    let i = tanner_lift_raw(i0, r0, c, local, assignment)?;
    let seed = certify_seed(&i, &r0.kron_identity(local.h.rows()), c, l)?;
    Ok(seed.with_meta(SeedMeta {
        orientation: "rows=checks".into(),
        col_sym_transposed: false,
        source: format!("tanner(local {}x{})", local.h.rows(), local.n),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::{perm_matrix, ViolationKind};

    #[test]
    fn cycle_shapes_and_ranks() {
        assert_eq!(cycle_incidence(3).unwrap(), BitMatrix::from_dense(&[[1, 1, 0], [0, 1, 1], [1, 0, 1]]));
        assert!(cycle_incidence(2).is_err());
        for len in 3..12 {
            // over GF(2) every cycle has the all-ones kernel vector
            assert_eq!(cycle_incidence(len).unwrap().rank(), len - 1);
        }
    }

    #[test]
    fn repetition_seeds() {
        let s = repetition_seed(3, 2).unwrap();
        assert_eq!(s.incidence(), &cycle_incidence(6).unwrap());
        assert_eq!(perm_matrix(s.row_sym()), perm_matrix(s.col_sym()).transpose());
        let f = repetition_seed(5, 4).unwrap();
        assert_eq!(orbits(f.row_sym()).len(), 4);
        assert!(repetition_seed(1, 3).is_err());
    }

    #[test]
    fn random_graph_regular() {
        let i = random_regular_incidence(10, 3, 7).unwrap();
        assert_eq!(i.shape(), (10, 15));
        assert!(i.row_weights().iter().all(|&w| w == 3));
        assert!(i.col_weights().iter().all(|&w| w == 2));
        assert_eq!(i, random_regular_incidence(10, 3, 7).unwrap());
        assert!(random_regular_incidence(5, 3, 1).is_err());
    }

    #[test]
    fn random_lifts_certify() {
        for seed in 0..5 {
            let s = random_lift_seed(8, 3, 3, seed).unwrap();
            assert_eq!(s.incidence().shape(), (24, 36));
            assert_eq!(s.orbit_len(), 3);
        }
    }

    #[test]
    fn expansion_simple_cases() {
        let one = Ratio::from_integer(1);
        let c = expansion_check(&BitMatrix::identity(5), one, one, ExpansionMode::Exhaustive).unwrap();
        assert_eq!(c.verdict, ExpansionVerdict::Verified);
        let col = BitMatrix::from_fn(4, 1, |_, _| true);
        let c = expansion_check(&col, one, Ratio::from_integer(4), ExpansionMode::Exhaustive).unwrap();
        // the transposed clause fails: one row maps to weight 1
        assert!(matches!(c.verdict, ExpansionVerdict::Falsified { transposed: true, .. }));
        let big = BitMatrix::identity(25);
        assert!(expansion_check(&big, one, one, ExpansionMode::Exhaustive).is_err());
        let s = expansion_check(&big, one, one, ExpansionMode::Sampled { trials: 50, seed: 1 }).unwrap();
        assert_eq!(s.verdict, ExpansionVerdict::NotFalsified);
    }

    #[test]
    fn cycle6_expansion() {
        let i = cycle_incidence(6).unwrap();
        let c = expansion_check(&i, Ratio::new(1, 3), Ratio::from_integer(2), ExpansionMode::Exhaustive).unwrap();
        // e0 + e1 maps to weight 2 < 4
        assert_eq!(
            c.verdict,
            ExpansionVerdict::Falsified {
                witness: BitVec::from_support(6, [0, 1]),
                transposed: false
            }
        );
        let c = expansion_check(&i, Ratio::new(1, 6), Ratio::from_integer(2), ExpansionMode::Exhaustive).unwrap();
        assert_eq!(c.verdict, ExpansionVerdict::Verified);
    }

    #[test]
    fn classical_distances() {
        assert_eq!(measure_distance_classical(&cycle_incidence(7).unwrap(), 7), Some(7));
        assert_eq!(measure_distance_classical(&BitMatrix::identity(4), 4), None);
        assert_eq!(measure_distance_classical(&BitMatrix::from_dense(&[[1, 1]]), 2), Some(2));
        let c = ClassicalCode::new(BitMatrix::from_dense(&[[1, 1, 0], [0, 1, 1]])).with_distance(3);
        assert_eq!((c.n, c.k, c.d), (3, 1, Some(3)));
    }

    fn worked_tanner() -> (BitMatrix, Perm, Perm, ClassicalCode) {
        let i0 = BitMatrix::from_dense(&[[1, 1, 0, 0, 1, 0], [0, 0, 1, 1, 0, 1]]);
        let cm = BitMatrix::from_dense(&[
            [0, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 0],
            [1, 0, 0, 0, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0],
        ]);
        let local = ClassicalCode::new(BitMatrix::from_dense(&[[1, 1, 0], [0, 1, 1]]));
        (i0, Perm::new(vec![1, 0]).unwrap(), Perm::from_matrix(&cm).unwrap(), local)
    }

    #[test]
    fn tanner_worked_example() {
        let (i0, r0, c, local) = worked_tanner();
        let lifted = tanner_lift_raw(&i0, &r0, &c, &local, None).unwrap();
        let expected = BitMatrix::from_dense(&[[1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1], [0, 0, 1, 1, 0, 0]]);
        assert_eq!(lifted, expected);
        // the symmetries have orders 2 and 4, so no orbit length fits both
        let err = tanner_lift(&i0, &r0, &c, 2, &local, None).unwrap_err();
        assert!(matches!(err, BuildError::Seed(_)));
    }

    #[test]
    fn tanner_rejects_intra_orbit_edge() {
        let i0 = cycle_incidence(4).unwrap().transpose();
        let r0 = Perm::shift(4, 1);
        let local = ClassicalCode::new(BitMatrix::from_dense(&[[1, 1]]));
        let err = tanner_lift_raw(&i0, &r0, &Perm::shift(4, 1), &local, None).unwrap_err();
        assert!(matches!(err, BuildError::IntraOrbitEdge { .. }));
    }

    #[test]
    fn tanner_certified_on_lift() {
        let seed = random_lift_seed(8, 3, 3, 11).unwrap();
        let local = ClassicalCode::new(BitMatrix::from_dense(&[[1, 1, 0], [0, 1, 1]]));
        let t = tanner_lift(seed.incidence(), seed.row_sym(), seed.col_sym(), 3, &local, None).unwrap();
        assert_eq!(t.incidence().shape(), (48, 36));
        assert!(t.incidence().row_weights().iter().all(|&w| w == 2));
    }

    #[test]
    fn orbit_length_violation_kind() {
        let i = cycle_incidence(6).unwrap();
        let r = Perm::shift(6, 4);
        let err = certify_seed(&i, &r, &r.inverse(), 2).unwrap_err();
        assert_eq!(err.violation().unwrap().kind, ViolationKind::OrbitLength);
    }
}
