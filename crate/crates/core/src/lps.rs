//! LPS Cayley graphs on PGL(2, q).
//!
//! Vertices are canonical projective matrices (first nonzero entry 1) in
//! lexicographic order. Edges join `u` and `σ·u` for each generator `σ`, and
//! are listed as sorted `(min, max)` vertex-index pairs. Right multiplication
//! by `H = [1 1; 0 1]` commutes with the left generator action, which gives
//! free order-`q` symmetries on vertices and on edges.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::builders::certify_either;
use crate::gf2::BitMatrix;
use crate::symmetry::{orbits, Perm, SeedError, SeedMeta, SymmetricSeed};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpsError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("p and q must differ")]
    SamePrimes,
    #[error("no supported generator normalization for p = {0} (p = 3 always; p ≡ 1 mod 4 with the experimental flag)")]
    Unsupported(u32),
    #[error("graph invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// A 2×2 matrix mod `q` up to nonzero scalars, stored with its first nonzero
/// entry (in the order a, b, c, d) equal to 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjMat {
    pub entries: [u32; 4],
}

fn inv_mod(x: u32, q: u32) -> u32 {
    let mut r = 1u64;
    let (mut b, mut e) = (x as u64 % q as u64, q as u64 - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % q as u64;
        }
        b = b * b % q as u64;
        e >>= 1;
    }
    r as u32
}

impl ProjMat {
    /// Canonical form of `[a b; c d]`, or `None` if singular.
    pub fn new(raw: [i64; 4], q: u32) -> Option<Self> {
        let qi = q as i64;
        let e = raw.map(|x| x.rem_euclid(qi) as u32);
        let det = (e[0] as i64 * e[3] as i64 - e[1] as i64 * e[2] as i64).rem_euclid(qi);
        if det == 0 {
            return None;
        }
        let lead = *e.iter().find(|&&x| x != 0).expect("nonsingular");
        let s = inv_mod(lead, q) as u64;
        Some(Self {
            entries: e.map(|x| (x as u64 * s % q as u64) as u32),
        })
    }

    pub fn identity() -> Self {
        Self { entries: [1, 0, 0, 1] }
    }

    pub fn mul(&self, other: &ProjMat, q: u32) -> ProjMat {
        let [a, b, c, d] = self.entries.map(|x| x as i64);
        let [e, f, g, h] = other.entries.map(|x| x as i64);
        Self::new([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h], q).expect("product of invertibles")
    }

    pub fn inverse(&self, q: u32) -> ProjMat {
        let [a, b, c, d] = self.entries.map(|x| x as i64);
        Self::new([d, -b, -c, a], q).expect("invertible")
    }
}

impl fmt::Debug for ProjMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[{a} {b}; {c} {d}]")
    }
}

fn is_odd_prime(x: u32) -> bool {
    x >= 3 && x % 2 == 1 && (3..).step_by(2).take_while(|d| d * d <= x).all(|d| !x.is_multiple_of(d))
}

/// All of PGL(2, q), canonical and sorted.
pub fn pgl2_elements(q: u32) -> Result<Vec<ProjMat>, LpsError> {
    if !is_odd_prime(q) {
        return Err(LpsError::NotOddPrime(q));
    }
    let mut out = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                for d in 0..q {
                    let first = [a, b, c, d].into_iter().find(|&x| x != 0);
                    if first == Some(1) {
                        if let Some(m) = ProjMat::new([a, b, c, d].map(|x| x as i64), q) {
                            out.push(m);
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// A solution of `x² + y² + 1 ≡ 0 (mod q)`: smallest `y`, then smallest `x`.
pub fn sum_of_squares_root(q: u32) -> (u32, u32) {
    for y in 0..q {
        for x in 0..q {
            if (x as u64 * x as u64 + y as u64 * y as u64 + 1).is_multiple_of(q as u64) {
                return (x, y);
            }
        }
    }
    unreachable!("x² + y² + 1 always has a root modulo an odd prime")
}

/// Integer quaternions `(a0, a1, a2, a3)` of norm `p` under the normalization
/// used for the generators.
pub fn quaternion_solutions(p: u32, experimental: bool) -> Result<Vec<[i64; 4]>, LpsError> {
    let pi = p as i64;
    let bound = (p as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    let range = || -bound..=bound;
    for a0 in range() {
        for a1 in range() {
            for a2 in range() {
                for a3 in range() {
                    if a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3 != pi {
                        continue;
                    }
                    let keep = if p == 3 {
                        a0 == 0 && a1 == 1
                    } else if experimental && p % 4 == 1 {
                        a0 > 0 && a0 % 2 == 1 && a1 % 2 == 0 && a2 % 2 == 0 && a3 % 2 == 0
                    } else {
                        return Err(LpsError::Unsupported(p));
                    };
                    if keep {
                        out.push([a0, a1, a2, a3]);
                    }
                }
            }
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `σ = [a0+a1x+a3y, −a1y+a2+a3x; −a1y−a2+a3x, a0−a1x−a3y]` for every
/// normalized solution.
pub fn lps_generators(p: u32, q: u32, experimental: bool) -> Result<Vec<ProjMat>, LpsError> {
    for x in [p, q] {
        if !is_odd_prime(x) {
            return Err(LpsError::NotOddPrime(x));
        }
    }
    if p == q {
        return Err(LpsError::SamePrimes);
    }
    let (x, y) = sum_of_squares_root(q);
    let (x, y) = (x as i64, y as i64);
    quaternion_solutions(p, experimental)?
        .into_iter()
        .map(|[a0, a1, a2, a3]| {
            ProjMat::new(
                [a0 + a1 * x + a3 * y, -a1 * y + a2 + a3 * x, -a1 * y - a2 + a3 * x, a0 - a1 * x - a3 * y],
                q,
            )
            .ok_or_else(|| LpsError::Invariant(format!("generator from ({a0},{a1},{a2},{a3}) is singular mod {q}")))
        })
        .collect()
}

/// The LPS graph with its incidence matrix and certified symmetry.
#[derive(Debug, Clone)]
pub struct LpsGraph {
    pub p: u32,
    pub q: u32,
    pub vertices: Vec<ProjMat>,
    pub generators: Vec<ProjMat>,
    pub edges: Vec<(usize, usize)>,
    /// Vertices × edges.
    pub incidence: BitMatrix,
    pub vertex_sym: Perm,
    /// The edge action of the right multiplication, before orientation fixing.
    pub edge_sym: Perm,
    pub seed: SymmetricSeed,
}

impl LpsGraph {
    pub fn vertex_index(&self, m: &ProjMat) -> Option<usize> {
        self.vertices.binary_search(m).ok()
    }

    /// Canonical neighbours `σ·u` of vertex `u`.
    pub fn neighbours(&self, u: usize) -> Vec<ProjMat> {
        self.generators.iter().map(|g| g.mul(&self.vertices[u], self.q)).collect()
    }

    /// `dim ker I`, the edge-space null space.
    pub fn edge_kernel_dim(&self) -> usize {
        self.incidence.cols() - self.incidence.rank()
    }

    /// `dim ker Iᵀ`, the vertex-space null space.
    pub fn vertex_kernel_dim(&self) -> usize {
        self.incidence.rows() - self.incidence.rank()
    }
}

fn invariant(ok: bool, what: impl FnOnce() -> String) -> Result<(), LpsError> {
    if ok {
        Ok(())
    } else {
        Err(LpsError::Invariant(what()))
    }
}

/// Builds and checks the graph. Every invariant failure is reported.
pub fn lps_graph(p: u32, q: u32, experimental: bool) -> Result<LpsGraph, LpsError> {
    let generators = lps_generators(p, q, experimental)?;
    let vertices = pgl2_elements(q)?;
    let nv = vertices.len();
    invariant(nv == (q * (q * q - 1)) as usize, || format!("{nv} vertices"))?;
    invariant(generators.len() == (p + 1) as usize, || format!("{} generators", generators.len()))?;
    for g in &generators {
        let inv = g.inverse(q);
        invariant(generators.contains(&inv), || format!("inverse of {g:?} missing from the generator set"))?;
    }
    let index: HashMap<ProjMat, usize> = vertices.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut edges = Vec::with_capacity(nv * generators.len() / 2);
    for (u, mu) in vertices.iter().enumerate() {
        for g in &generators {
            let v = index[&g.mul(mu, q)];
            invariant(v != u, || format!("loop at vertex {u}"))?;
            edges.push((u.min(v), u.max(v)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let s = generators.len();
    invariant(edges.len() == nv * s / 2, || format!("{} edges", edges.len()))?;
    let mut incidence = BitMatrix::zeros(nv, edges.len());
    for (e, &(a, b)) in edges.iter().enumerate() {
        incidence.set(a, e, true);
        incidence.set(b, e, true);
    }
    invariant(incidence.row_weights().iter().all(|&w| w == s), || "irregular degree".into())?;

    let h = ProjMat { entries: [1, 1, 0, 1] };
    let vertex_sym = Perm::new(vertices.iter().map(|m| index[&m.mul(&h, q)]).collect())
        .map_err(|e| LpsError::Invariant(format!("right multiplication: {e}")))?;
    let edge_index: HashMap<(usize, usize), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_sym = Perm::new(
        edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (vertex_sym.apply(a), vertex_sym.apply(b));
                edge_index[&(x.min(y), x.max(y))]
            })
            .collect(),
    )
    .map_err(|e| LpsError::Invariant(format!("edge action: {e}")))?;
    let l = q as usize;
    for (name, perm) in [("vertex", &vertex_sym), ("edge", &edge_sym)] {
        invariant(orbits(perm).iter().all(|o| o.len() == l), || format!("{name} orbit of length other than {l}"))?;
    }
    let mut orbit_of = vec![0; nv];
    for (k, o) in orbits(&vertex_sym).iter().enumerate() {
        for &v in o {
            orbit_of[v] = k;
        }
    }
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| orbit_of[a] == orbit_of[b]) {
        return Err(LpsError::Invariant(format!("edge ({a}, {b}) inside one vertex orbit")));
    }
    invariant(connected(&incidence), || "graph is disconnected".into())?;
    let meta = SeedMeta {
        orientation: "rows=vertices".into(),
        col_sym_transposed: false,
        source: format!("lps(p={p}, q={q})"),
    };
    let seed = certify_either(&incidence, &vertex_sym, &edge_sym, l, meta)?;
    Ok(LpsGraph {
        p,
        q,
        vertices,
        generators,
        edges,
        incidence,
        vertex_sym,
        edge_sym,
        seed,
    })
}

fn connected(incidence: &BitMatrix) -> bool {
    let nv = incidence.rows();
    let it = incidence.transpose();
    let mut seen = vec![false; nv];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for e in incidence.row_support(u) {
            for w in it.row_support(e) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pm(e: [i64; 4]) -> ProjMat {
        ProjMat::new(e, 5).unwrap()
    }

    #[test]
    fn group_sizes() {
        assert_eq!(pgl2_elements(5).unwrap().len(), 120);
        assert_eq!(pgl2_elements(3).unwrap().len(), 24);
        assert!(pgl2_elements(9).is_err());
        assert!(pgl2_elements(2).is_err());
    }

    #[test]
    fn identity_class() {
        for s in 1..5 {
            assert_eq!(pm([s, 0, 0, s]), ProjMat::identity());
        }
        assert_ne!(pm([1, 0, 0, 2]), ProjMat::identity());
    }

    #[test]
    fn root_and_solutions() {
        assert_eq!(sum_of_squares_root(5), (2, 0));
        assert_eq!(quaternion_solutions(3, false).unwrap().len(), 4);
        assert!(quaternion_solutions(7, true).is_err());
        assert_eq!(quaternion_solutions(5, true).unwrap().len(), 6);
    }

    #[test]
    fn embedding_of_one_solution() {
        let gens = lps_generators(3, 5, false).unwrap();
        assert!(gens.contains(&pm([2, 1, 3, -2])));
    }

    #[test]
    fn three_five_graph() {
        let g = lps_graph(3, 5, false).unwrap();
        assert_eq!(g.vertices.len(), 120);
        assert_eq!(g.edges.len(), 240);
        assert_eq!(g.seed.orbit_len(), 5);
        assert!(g.seed.meta().col_sym_transposed);
        assert_eq!(g.incidence.rank(), 119);
        assert_eq!(g.vertex_kernel_dim(), 1);
        assert_eq!(g.edge_kernel_dim(), 121);
    }

    #[test]
    fn experimental_family() {
        assert!(lps_graph(5, 3, false).is_err());
        let g = lps_graph(5, 3, true).unwrap();
        assert_eq!(g.vertices.len(), 24);
        assert!(g.incidence.row_weights().iter().all(|&w| w == 6));
    }
}
