use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use balprod::builders::{random_lift_seed, repetition_seed, tanner_lift, ClassicalCode};
use balprod::css::{block_logicals, logical_basis, logical_basis_with, subsystem_drop_with, subsystem_restrict_with, Gauge, Side};
use balprod::distance::{distance, Method, Pauli};
use balprod::lps::lps_graph;
use balprod::products::{
    balanced_product, commutation_failure, distance_balance, general_balanced_product, hypergraph_product, BalanceDirection,
    GeneralDims, Normalization,
};
use balprod::{analyze, par, BitVec};
use balprod_cli::bundle::{self, CodeBundle};
use balprod_cli::repro::{self, Target};
use balprod_cli::{alist, read_document, read_matrix, read_text, search_config};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Build balanced-product CSS codes and certify their parameters.
#[derive(Parser, Debug)]
#[command(name = "balprod", version)]
struct Cli {
    /// Worker threads for searches (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Out {
    /// Write the bundle here instead of stdout.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a symmetric seed.
    #[command(subcommand)]
    Build(Build),
    /// Tanner-lift a seed with a local code.
    Tanner {
        #[arg(long)]
        seed: PathBuf,
        /// Local parity-check matrix (.alist or matrix bundle).
        #[arg(long)]
        local: PathBuf,
        #[arg(long)]
        assignment: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Form a CSS code.
    #[command(subcommand)]
    Product(Product),
    /// Concatenate with a classical code to raise one distance.
    Balance {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        classical: PathBuf,
        #[arg(long, value_enum)]
        direction: PauliArg,
        /// Also drop dependent rows of the kept check.
        #[arg(long)]
        full: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Report n, k by both counting routes, and the k ≥ k0/l bound.
    Analyze {
        #[arg(long)]
        code: PathBuf,
    },
    /// Compute a logical basis and store it in the bundle.
    Logicals {
        #[arg(long)]
        code: PathBuf,
        /// Seed the basis with the block-localised pairs built from the seed's kernels.
        #[arg(long, requires = "seed")]
        block_construction: bool,
        #[arg(long)]
        seed: Option<PathBuf>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        #[command(flatten)]
        out: Out,
    },
    /// Certify a distance.
    Distance {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        pauli: PauliArg,
        #[arg(long, value_enum, default_value = "exhaustive")]
        method: MethodArg,
        #[arg(long)]
        max: usize,
        /// `drop=I,J` or `keep=I,J`; logical indices count from 1, as in X_L1.
        #[arg(long)]
        subsystem: Option<String>,
        /// Let errors flip the dropped logical qubits (default: they are fixed in |0>).
        #[arg(long, requires = "subsystem")]
        dressed: bool,
    },
    /// Check commutation, layout, stored logicals and the counting bound.
    Verify {
        #[arg(long)]
        code: PathBuf,
    },
    /// Write a check matrix as alist, or re-emit the bundle.
    Export {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum)]
        format: FormatArg,
        #[arg(long, value_enum, default_value = "hx")]
        matrix: MatrixArg,
        #[command(flatten)]
        out: Out,
    },
    /// Run a reproduction recipe and compare it with its golden output.
    Repro {
        #[command(subcommand)]
        target: ReproTarget,
        /// Write the output into this directory as the new golden file.
        #[arg(long, global = true)]
        update_golden: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Build {
    /// Cycle incidence with the shift-by-(length/orbit) symmetry.
    Cycle {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        orbit: usize,
        #[command(flatten)]
        out: Out,
    },
    /// LPS Cayley graph of PGL(2,q).
    Lps {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Allow p ≡ 1 (mod 4).
        #[arg(long)]
        experimental: bool,
        #[command(flatten)]
        out: Out,
    },
    /// Cyclic cover of a random regular graph.
    Random {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        seed: u64,
        /// Orbit length of the cover.
        #[arg(long, default_value_t = 3)]
        lift: usize,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug)]
enum Product {
    Balanced {
        #[arg(long)]
        seed: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    Hypergraph {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Two-sided product; factor sizes are read off the shapes.
    General {
        #[arg(long)]
        ix: PathBuf,
        #[arg(long)]
        iy: PathBuf,
        #[arg(long)]
        sym: PathBuf,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand, Debug, Clone)]
enum ReproTarget {
    Example1,
    Example2,
    Fig1,
    Toric { l: usize },
    TannerExample,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PauliArg {
    X,
    Z,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Exhaustive,
    Mitm,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Left,
    Right,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Alist,
    Bundle,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MatrixArg {
    Hx,
    Hz,
}

impl From<PauliArg> for Pauli {
    fn from(p: PauliArg) -> Self {
        match p {
            PauliArg::X => Pauli::X,
            PauliArg::Z => Pauli::Z,
        }
    }
}

fn emit(out: &Out, text: &str, summary: &str) -> Result<()> {
    match &out.out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
            println!("{summary} -> {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn load_code(path: &Path) -> Result<CodeBundle> {
    CodeBundle::parse(&read_text(path)?).with_context(|| format!("{}", path.display()))
}

fn load_seed(path: &Path) -> Result<balprod::SymmetricSeed> {
    bundle::seed_from_document(&read_document(path)?).with_context(|| format!("{}", path.display()))
}

fn emit_seed(out: &Out, name: &str, seed: &balprod::SymmetricSeed, extra: &[(&str, String)]) -> Result<()> {
    let mut doc = bundle::seed_document(name, seed);
    for (k, v) in extra {
        doc.push(k, v);
    }
    let i = seed.incidence();
    emit(out, &doc.serialize(), &format!("seed {name}: I {}x{}, orbit {}", i.rows(), i.cols(), seed.orbit_len()))
}

fn emit_code(out: &Out, b: &CodeBundle) -> Result<()> {
    emit(out, &b.serialize(), &format!("code {}: n = {}, k = {}", b.name, b.n, b.k))
}

fn parse_indices(list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .filter(|s| !s.is_empty())
        .map(|s| {
            let i: usize = s.trim().parse().with_context(|| format!("bad logical index {s:?}"))?;
            ensure!(i >= 1, "logical indices count from 1");
            Ok(i - 1)
        })
        .collect()
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Build(Build::Cycle { length, orbit, out }) => {
            ensure!(orbit > 0 && length % orbit == 0, "length {length} is not a multiple of the orbit {orbit}");
            let seed = repetition_seed(orbit, length / orbit)?;
            emit_seed(&out, &format!("cycle(length={length}, orbit={orbit})"), &seed, &[])
        }
        Command::Build(Build::Lps { p, q, experimental, out }) => {
            let g = lps_graph(p, q, experimental)?;
            let gens = g
                .generators
                .iter()
                .map(|m| format!("{} {} {} {}", m.entries[0], m.entries[1], m.entries[2], m.entries[3]))
                .collect::<Vec<_>>()
                .join(", ");
            let extra = [
                ("vertices", g.vertices.len().to_string()),
                ("edges", g.edges.len().to_string()),
                ("generators", gens),
                ("edge_kernel_dim", g.edge_kernel_dim().to_string()),
                ("vertex_kernel_dim", g.vertex_kernel_dim().to_string()),
            ];
            emit_seed(&out, &format!("lps(p={p}, q={q})"), &g.seed, &extra)
        }
        Command::Build(Build::Random { vertices, degree, seed, lift, out }) => {
            let s = random_lift_seed(vertices, degree, lift, seed)?;
            emit_seed(&out, &format!("random(v={vertices}, s={degree}, l={lift}, seed={seed})"), &s, &[])
        }
        Command::Tanner { seed, local, assignment, out } => {
            let base = load_seed(&seed)?;
            let local = ClassicalCode::new(read_matrix(&local)?);
            let assignment = match assignment {
                Some(p) => Some(bundle::assignment_from_document(&read_document(&p)?)?),
                None => None,
            };
            let s = tanner_lift(base.incidence(), base.row_sym(), base.col_sym(), base.orbit_len(), &local, assignment.as_ref())?;
            emit_seed(&out, &format!("tanner({})", seed.display()), &s, &[])
        }
        Command::Product(Product::Balanced { seed, out }) => {
            let s = load_seed(&seed)?;
            let code = analyze(balanced_product(&s))?;
            emit_code(&out, &CodeBundle::from_code("balanced", &code, false).with_bound(&s))
        }
        Command::Product(Product::Hypergraph { h1, h2, out }) => {
            let code = analyze(hypergraph_product(&read_matrix(&h1)?, &read_matrix(&h2)?))?;
            emit_code(&out, &CodeBundle::from_code("hypergraph", &code, false))
        }
        Command::Product(Product::General { ix, iy, sym, out }) => {
            let (ix, iy) = (read_matrix(&ix)?, read_matrix(&iy)?);
            let r = bundle::perm_from_document(&read_document(&sym)?)?;
            let l = r.size();
            ensure!(l > 0 && ix.rows() % l == 0 && ix.cols() % l == 0, "ix is not a multiple of {l} in both dimensions");
            ensure!(iy.rows() % l == 0 && iy.cols() % l == 0, "iy is not a multiple of {l} in both dimensions");
            let dims = GeneralDims { nx: ix.rows() / l, mx: ix.cols() / l, ny: iy.rows() / l, my: iy.cols() / l };
            let code = analyze(general_balanced_product(&ix, &iy, &r, dims)?)?;
            emit_code(&out, &CodeBundle::from_code("general", &code, false))
        }
        Command::Balance { code, classical, direction, full, out } => {
            let b = load_code(&code)?;
            let hc = read_matrix(&classical)?;
            let dir = match direction {
                PauliArg::X => BalanceDirection::X,
                PauliArg::Z => BalanceDirection::Z,
            };
            let norm = if full { Normalization::Full } else { Normalization::Standard };
            let (pair, rep) = distance_balance(&b.pair()?, &hc, dir, norm);
            let code = analyze(pair)?;
            eprintln!(
                "balance: N = {} (expected {}), deficiency {} (expected {})",
                code.n(),
                rep.expected_qubits(),
                rep.deficiency,
                rep.expected_deficiency()
            );
            emit_code(&out, &CodeBundle::from_code(&format!("{}+balance", b.name), &code, false))
        }
        Command::Analyze { code } => {
            let b = load_code(&code)?;
            let c = b.code()?;
            let by_kernel = c.hx().kernel_basis().len() - c.rank_z();
            println!("n = {}", c.n());
            println!("k = {} (n - rank hx - rank hz = {}, dim ker hx - rank hz = {by_kernel})", c.k(), c.n() - c.rank_x() - c.rank_z());
            if let Some((k0, l)) = b.bound {
                let ok = c.k() * l >= k0;
                println!("bound k >= k0/l: k*l = {} vs k0 = {k0}: {}", c.k() * l, if ok { "holds" } else { "VIOLATED" });
                ensure!(ok, "counting bound violated");
            }
            Ok(())
        }
        Command::Logicals { code, block_construction, seed, side, out } => {
            let mut b = load_code(&code)?;
            let c = analyze(b.pair()?)?;
            let set = if block_construction {
                let s = load_seed(seed.as_deref().expect("clap requires --seed"))?;
                let side = side.map(|s| match s {
                    SideArg::Left => Side::Left,
                    SideArg::Right => Side::Right,
                });
                let pairs = block_logicals(&s, c.pair(), side)?;
                logical_basis_with(&c, &pairs)?
            } else {
                logical_basis(&c)
            };
            b.logicals_x = set.lx.iter().map(BitVec::support).collect();
            b.logicals_z = set.lz.iter().map(BitVec::support).collect();
            for (i, (x, z)) in set.lx.iter().zip(&set.lz).enumerate() {
                eprintln!("L{}: X on {}; Z on {}", i + 1, repro::one_based(x), repro::one_based(z));
            }
            emit_code(&out, &b)
        }
        Command::Distance { code, pauli, method, max, subsystem, dressed } => {
            let c = load_code(&code)?.code()?;
            let cfg = search_config()?;
            let method = match method {
                MethodArg::Exhaustive => Method::Exhaustive,
                MethodArg::Mitm => Method::Mitm,
            };
            let report = match subsystem {
                None => distance(&c, pauli.into(), max, method, &cfg)?,
                Some(spec) => {
                    let gauge = if dressed { Gauge::Dressed } else { Gauge::FixedZero };
                    let view = match spec.split_once('=') {
                        Some(("drop", list)) => subsystem_drop_with(&c, &parse_indices(list)?, gauge)?,
                        Some(("keep", list)) => subsystem_restrict_with(&c, &parse_indices(list)?, gauge)?,
                        _ => bail!("--subsystem takes drop=I,J or keep=I,J"),
                    };
                    distance(&view, pauli.into(), max, method, &cfg)?
                }
            };
            println!("{report}");
            Ok(())
        }
        Command::Verify { code } => verify(&load_code(&code)?),
        Command::Export { code, format, matrix, out } => {
            let b = load_code(&code)?;
            match format {
                FormatArg::Bundle => emit_code(&out, &b),
                FormatArg::Alist => {
                    let pair = b.pair()?;
                    let m = match matrix {
                        MatrixArg::Hx => pair.hx(),
                        MatrixArg::Hz => pair.hz(),
                    };
                    emit(&out, &alist::emit(m), &format!("{}x{} alist", m.rows(), m.cols()))
                }
            }
        }
        Command::Repro { target, update_golden } => {
            let target = match target {
                ReproTarget::Example1 => Target::Example1,
                ReproTarget::Example2 => Target::Example2,
                ReproTarget::Fig1 => Target::Fig1,
                ReproTarget::Toric { l } => Target::Toric(l),
                ReproTarget::TannerExample => Target::TannerExample,
            };
            let text = repro::run(&target, &search_config()?)?;
            print!("{text}");
            std::io::stdout().flush()?;
            let name = target.name();
            if let Some(dir) = update_golden {
                let path = dir.join(format!("{name}.txt"));
                std::fs::write(&path, &text).with_context(|| format!("cannot write {}", path.display()))?;
                eprintln!("golden {name} written to {}", path.display());
                return Ok(());
            }
            match repro::golden(&name) {
                Some(g) if g == text => {
                    eprintln!("golden {name}: identical");
                    Ok(())
                }
                Some(g) => {
                    let line = g.lines().zip(text.lines()).position(|(a, b)| a != b).unwrap_or(g.lines().count().min(text.lines().count()));
                    bail!("output differs from golden {name} at line {}", line + 1)
                }
                None => {
                    eprintln!("golden {name}: none checked in");
                    Ok(())
                }
            }
        }
    }
}

fn verify(b: &CodeBundle) -> Result<()> {
    let mut failures = Vec::new();
    let mut report = |what: String, ok: bool| {
        println!("{} {what}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            failures.push(what);
        }
    };
    let hx = bundle::rows_matrix(b.n, &b.hx)?;
    let hz = bundle::rows_matrix(b.n, &b.hz)?;
    let comm = commutation_failure(&hx, &hz);
    report(
        match comm {
            None => "hx hz^T = 0".into(),
            Some((x, z)) => format!("hx hz^T = 0 (X check {} overlaps Z check {} oddly)", x + 1, z + 1),
        },
        comm.is_none(),
    );
    let mut next = 0;
    let mut tiled = true;
    for (_, start, len) in &b.layout {
        tiled &= *start == next;
        next = start + len;
    }
    report(format!("layout blocks tile qubits 1-{}", b.n), b.layout.is_empty() || (tiled && next == b.n));
    if comm.is_some() {
        bail!("{} check(s) failed: {}", failures.len(), failures.join("; "));
    }
    let code = analyze(b.pair()?)?;
    report(format!("k = {} matches the checks (k = {})", b.k, code.k()), b.k == code.k());
    if let Some((k0, l)) = b.bound {
        report(format!("k*l = {} >= k0 = {k0}", code.k() * l), code.k() * l >= k0);
    }
    if !b.logicals_x.is_empty() || !b.logicals_z.is_empty() {
        let lx = bundle::rows_matrix(b.n, &b.logicals_x)?;
        let lz = bundle::rows_matrix(b.n, &b.logicals_z)?;
        report(format!("{} X and {} Z logicals stored, k = {}", lx.rows(), lz.rows(), code.k()), lx.rows() == code.k() && lz.rows() == code.k());
        report("X logicals commute with hz".into(), lx.mul(&hz.transpose())?.is_zero());
        report("Z logicals commute with hx".into(), lz.mul(&hx.transpose())?.is_zero());
        let gram = lx.mul(&lz.transpose())?;
        report("X_Li . Z_Lj = delta_ij".into(), gram == balprod::BitMatrix::identity(gram.rows()));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        bail!("{} check(s) failed: {}", failures.len(), failures.join("; "))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli.threads;
    match par::install(threads, || run(cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let msg = format!("{e:#}").replace('\n', " ");
            eprintln!("balprod: error: {msg}");
            ExitCode::FAILURE
        }
    }
}
