//! End-to-end reproductions with deterministic text reports.

use std::fmt::Write as _;

use anyhow::{bail, ensure, Result};
use balprod::builders::{cycle_incidence, repetition_seed, tanner_lift, tanner_lift_raw, ClassicalCode};
use balprod::css::{block_logicals, logical_basis_with, subsystem_drop, subsystem_restrict, CssCode, Side};
use balprod::distance::{distance, verify_logical_upper_bound, DistanceReport, DistanceTarget, Method, Pauli, SearchConfig};
use balprod::lps::{lps_graph, ProjMat};
use balprod::products::{balanced_product, hypergraph_product};
use balprod::symmetry::orbits;
use balprod::{analyze, BitMatrix, BitVec, Perm, SymmetricSeed};

/// Golden outputs checked in next to the crate.
pub const GOLDEN: &[(&str, &str)] = &[
    ("example1", include_str!("../golden/example1.txt")),
    ("example2", include_str!("../golden/example2.txt")),
    ("fig1", include_str!("../golden/fig1.txt")),
    ("toric-3", include_str!("../golden/toric-3.txt")),
    ("toric-4", include_str!("../golden/toric-4.txt")),
    ("tanner-example", include_str!("../golden/tanner-example.txt")),
];

pub fn golden(name: &str) -> Option<&'static str> {
    GOLDEN.iter().find(|(n, _)| *n == name).map(|(_, g)| *g)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Example1,
    Example2,
    Fig1,
    Toric(usize),
    TannerExample,
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Example1 => "example1".into(),
            Target::Example2 => "example2".into(),
            Target::Fig1 => "fig1".into(),
            Target::Toric(l) => format!("toric-{l}"),
            Target::TannerExample => "tanner-example".into(),
        }
    }
}

pub fn run(target: &Target, cfg: &SearchConfig) -> Result<String> {
    let mut out = String::new();
    match target {
        Target::Example1 => example1(&mut out, cfg)?,
        Target::Example2 => example2(&mut out, cfg)?,
        Target::Fig1 => fig1(&mut out, cfg)?,
        Target::Toric(l) => toric(&mut out, *l, cfg)?,
        Target::TannerExample => tanner_example(&mut out)?,
    }
    Ok(out)
}

pub fn one_based(v: &BitVec) -> String {
    v.iter_ones().map(|q| (q + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn counting(out: &mut String, seed: &SymmetricSeed, code: &CssCode) {
    let by_kernel = code.hx().kernel_basis().len() - code.rank_z();
    let _ = writeln!(
        out,
        "code: n = {}, k = {} (n - rank hx - rank hz = {}, dim ker hx - rank hz = {})",
        code.n(),
        code.k(),
        code.n() - code.rank_x() - code.rank_z(),
        by_kernel
    );
    let (k0, l) = (seed.k0(), seed.orbit_len());
    let _ = writeln!(out, "bound: k0 = {k0}, l = {l}, k*l = {} {} k0", code.k() * l, if code.k() * l >= k0 { ">=" } else { "<" });
}

fn search<T: DistanceTarget + ?Sized>(out: &mut String, t: &T, pauli: Pauli, max: usize, method: Method, cfg: &SearchConfig) -> Result<Option<usize>> {
    let r: DistanceReport = distance(t, pauli, max, method, cfg)?;
    let _ = writeln!(out, "{r}");
    Ok(r.distance())
}

fn expect(what: &str, got: Option<usize>, want: usize) -> Result<usize> {
    match got {
        Some(d) if d == want => Ok(d),
        other => bail!("{what}: expected {want}, found {other:?}"),
    }
}

fn vec1(n: usize, qubits: &[usize]) -> BitVec {
    BitVec::from_support(n, qubits.iter().map(|q| q - 1))
}

fn example1(out: &mut String, cfg: &SearchConfig) -> Result<()> {
    let seed = repetition_seed(3, 2)?;
    let _ = writeln!(out, "example1: 6-cycle incidence I = 1+P, R = shift by 4, C = R^-1, l = 3");
    let code = analyze(balanced_product(&seed))?;
    counting(out, &seed, &code);
    let dx = search(out, &code, Pauli::X, 6, Method::Exhaustive, cfg)?;
    let dz = search(out, &code, Pauli::Z, 6, Method::Exhaustive, cfg)?;
    let printed = [
        ("X_L1", Pauli::X, vec![1, 3, 5]),
        ("Z_L1", Pauli::Z, vec![5, 6, 8, 9]),
        ("X_L2", Pauli::X, vec![2, 4, 11, 12]),
        ("Z_L2", Pauli::Z, vec![7, 9, 11]),
    ];
    for (name, pauli, qubits) in &printed {
        let v = vec1(12, qubits);
        let syndrome_free = code.hx().mul_vec(&v)?.is_zero() && matches!(pauli, Pauli::Z)
            || code.hz().mul_vec(&v)?.is_zero() && matches!(pauli, Pauli::X);
        let verdict = if verify_logical_upper_bound(&code, &v, *pauli) {
            "nontrivial logical"
        } else if syndrome_free {
            "stabilizer-equivalent, not nontrivial"
        } else {
            "not a logical: nonzero syndrome"
        };
        let _ = writeln!(out, "printed {name} on qubits {}: {verdict}", qubits.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","));
    }
    ensure!((code.n(), code.k()) == (12, 2), "expected n = 12, k = 2");
    let d = expect("d_X", dx, 3)?.min(expect("d_Z", dz, 3)?);
    let _ = writeln!(out, "result: [[{},{},{}]]", code.n(), code.k(), d);
    Ok(())
}

fn example2(out: &mut String, cfg: &SearchConfig) -> Result<()> {
    let g = lps_graph(3, 5, false)?;
    let fmt = |m: &ProjMat| {
        let e = m.entries;
        format!("[{} {}; {} {}]", e[0], e[1], e[2], e[3])
    };
    let _ = writeln!(out, "example2: LPS(p = 3, q = 5) Cayley graph of PGL(2,5)");
    let _ = writeln!(out, "graph: {} vertices, {} edges", g.vertices.len(), g.edges.len());
    let _ = writeln!(out, "generators (normalised): {}", g.generators.iter().map(fmt).collect::<Vec<_>>().join(" "));
    let id = g.vertex_index(&ProjMat::identity()).expect("identity is a vertex");
    let _ = writeln!(out, "neighbours of 1: {}", g.neighbours(id).iter().map(fmt).collect::<Vec<_>>().join(" "));
    let _ = writeln!(
        out,
        "kernels: dim ker I = {}, dim ker I^T = {}, rank I = {}",
        g.edge_kernel_dim(),
        g.vertex_kernel_dim(),
        g.incidence.rank()
    );
    let pair = balanced_product(&g.seed);
    let code = analyze(pair.clone())?;
    counting(out, &g.seed, &code);
    let left = block_logicals(&g.seed, &pair, Some(Side::Left))?;
    code.set_logicals(logical_basis_with(&code, &left)?)?;
    if let Some((x, z)) = left.first() {
        let _ = writeln!(out, "left pair: X on qubits {}; Z on {} qubits of the left block", one_based(x), z.weight());
    }
    let edge_orbit: Vec<usize> = orbits(g.seed.col_sym())[0].iter().map(|&e| 121 + e).collect();
    let _ = writeln!(out, "right Z on one C-orbit, qubits {}", edge_orbit.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","));
    let dx = search(out, &code, Pauli::X, 5, Method::Mitm, cfg)?;
    let dz = search(out, &code, Pauli::Z, 5, Method::Mitm, cfg)?;
    let view = subsystem_drop(&code, &[0])?;
    let _ = writeln!(out, "subsystem: left pair dropped, its qubit fixed in |0>, {} pairs retained", view.retained().len());
    let sx = search(out, &view, Pauli::X, 6, Method::Mitm, cfg)?;
    let sz = search(out, &view, Pauli::Z, 6, Method::Mitm, cfg)?;
    ensure!((code.n(), code.k()) == (360, 26), "expected n = 360, k = 26");
    let d = expect("d_X", dx, 5)?.min(expect("d_Z", dz, 5)?);
    let _ = writeln!(out, "result: [[{},{},{}]]", code.n(), code.k(), d);
    let (sx, sz) = (expect("subsystem d_X", sx, 6)?, expect("subsystem d_Z", sz, 5)?);
    let _ = writeln!(out, "subsystem: [[{},{},{},{}]]", code.n(), view.retained().len(), sx, sz);
    Ok(())
}

fn fig1(out: &mut String, cfg: &SearchConfig) -> Result<()> {
    let (l, m) = (5, 4);
    let seed = repetition_seed(l, m)?;
    let _ = writeln!(out, "fig1: length-{} cycle, orbit length l = {l}, m = {m}", l * m);
    let pair = balanced_product(&seed);
    let code = analyze(pair.clone())?;
    counting(out, &seed, &code);
    let _ = writeln!(out, "qubits: 2lm = {}; the printed count lm = {} covers one block only", 2 * l * m, l * m);
    let right = block_logicals(&seed, &pair, Some(Side::Right))?;
    code.set_logicals(logical_basis_with(&code, &right)?)?;
    let dx = search(out, &code, Pauli::X, l + m, Method::Exhaustive, cfg)?;
    let dz = search(out, &code, Pauli::Z, l + m, Method::Exhaustive, cfg)?;
    let view = subsystem_restrict(&code, &[0])?;
    let _ = writeln!(out, "subsystem: right-block pair retained, the other qubit fixed in |0>");
    let sx = search(out, &view, Pauli::X, l + m, Method::Exhaustive, cfg)?;
    let sz = search(out, &view, Pauli::Z, l + m, Method::Exhaustive, cfg)?;
    ensure!((code.n(), code.k()) == (2 * l * m, 2), "expected n = {}, k = 2", 2 * l * m);
    let d = dx.unwrap_or(0).min(dz.unwrap_or(0));
    let _ = writeln!(out, "result: [[{},{},{}]]", code.n(), code.k(), d);
    let (sx, sz) = (expect("subsystem d_X", sx, l + m - 1)?, expect("subsystem d_Z", sz, l)?);
    let _ = writeln!(out, "subsystem: [[{},1,{},{}]]", code.n(), sx, sz);
    Ok(())
}

fn toric(out: &mut String, len: usize, cfg: &SearchConfig) -> Result<()> {
    ensure!(len >= 3, "toric recipe needs L >= 3");
    let h = cycle_incidence(len)?;
    let _ = writeln!(out, "toric-{len}: hypergraph product of two length-{len} cycle checks");
    let code = analyze(hypergraph_product(&h, &h))?;
    let _ = writeln!(out, "code: n = {}, k = {}", code.n(), code.k());
    let dx = search(out, &code, Pauli::X, len, Method::Exhaustive, cfg)?;
    let dz = search(out, &code, Pauli::Z, len, Method::Exhaustive, cfg)?;
    ensure!((code.n(), code.k()) == (2 * len * len, 2), "expected n = {}, k = 2", 2 * len * len);
    let d = expect("d_X", dx, len)?.min(expect("d_Z", dz, len)?);
    let _ = writeln!(out, "result: [[{},{},{}]]", code.n(), code.k(), d);
    Ok(())
}

pub fn matrix_text(m: &BitMatrix) -> String {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| if m.get(r, c) { '1' } else { '0' }).collect::<String>())
        .collect::<Vec<_>>()
        .join("\n")
}

fn tanner_example(out: &mut String) -> Result<()> {
    let i0 = BitMatrix::from_dense(&[[1, 1, 0, 0, 1, 0], [0, 0, 1, 1, 0, 1]]);
    let c = BitMatrix::from_dense(&[
        [0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ]);
    let local = ClassicalCode::new(BitMatrix::from_dense(&[[1, 1, 0], [0, 1, 1]]));
    let r0 = Perm::new(vec![1, 0])?;
    let cp = Perm::from_matrix(&c)?;
    let _ = writeln!(out, "tanner-example: 2x6 base, local code [110; 011], identity assignment");
    let _ = writeln!(out, "R0 order 2, C order {}", (1..=6).find(|&t| cp.pow(t).is_identity()).unwrap_or(0));
    let lifted = tanner_lift_raw(&i0, &r0, &cp, &local, None)?;
    let _ = writeln!(out, "lifted matrix:\n{}", matrix_text(&lifted));
    let printed = BitMatrix::from_dense(&[[1, 1, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0], [0, 0, 1, 0, 0, 1], [0, 0, 1, 1, 0, 0]]);
    ensure!(lifted == printed, "lifted matrix differs from the printed 4x6 matrix");
    let _ = writeln!(out, "matches the printed 4x6 matrix: yes");
    match tanner_lift(&i0, &r0, &cp, 2, &local, None) {
        Ok(_) => bail!("certified lift unexpectedly succeeded with mismatched symmetry orders"),
        Err(e) => {
            let _ = writeln!(out, "certified lift: rejected ({e})");
        }
    }
    Ok(())
}
