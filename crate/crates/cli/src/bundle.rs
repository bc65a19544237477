//! Line-oriented bundle documents.
//!
//! ```text
//! balprod-bundle 1
//! kind code
//! name example1
//! n 12
//! @hx 6
//! 0 5 6 10
//! ...
//! ```
//!
//! Scalar fields are `key value` lines; sections start with `@name COUNT`
//! and are followed by `COUNT` rows of ascending 0-based indices (`-` for an
//! empty row). Lines starting with `#` are comments.

use std::fmt::Write as _;

use anyhow::{anyhow, bail, ensure, Context, Result};
use balprod::builders::TannerAssignment;
use balprod::products::Block;
use balprod::symmetry::{certify_seed, SeedMeta};
use balprod::{BitMatrix, BitVec, CssCode, CssPair, LogicalSet, Perm, SymmetricSeed};

pub const MAGIC: &str = "balprod-bundle";
pub const VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub version: String,
    pub kind: String,
    pub fields: Vec<(String, String)>,
    pub sections: Vec<(String, Vec<Vec<usize>>)>,
    pub comments: Vec<String>,
}

impl Document {
    pub fn new(kind: &str) -> Self {
        Self {
            version: VERSION.into(),
            kind: kind.into(),
            ..Default::default()
        }
    }

    pub fn field(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn fields_named<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.fields.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.field(key).ok_or_else(|| anyhow!("{} bundle has no `{key}` field", self.kind))
    }

    pub fn number(&self, key: &str) -> Result<usize> {
        let v = self.require(key)?;
        v.parse().with_context(|| format!("field `{key}` is not a number: {v:?}"))
    }

    pub fn section(&self, name: &str) -> Option<&[Vec<usize>]> {
        self.sections.iter().find(|(k, _)| k == name).map(|(_, v)| v.as_slice())
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }

    pub fn push_section(&mut self, name: &str, rows: Vec<Vec<usize>>) {
        self.sections.push((name.into(), rows));
    }

    pub fn expect_kind(&self, kind: &str) -> Result<()> {
        ensure!(self.kind == kind, "expected a {kind} bundle, found kind `{}`", self.kind);
        Ok(())
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{MAGIC} {}\nkind {}\n", self.version, self.kind);
        for c in &self.comments {
            let _ = writeln!(out, "# {c}");
        }
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{k} {v}");
        }
        for (name, rows) in &self.sections {
            let _ = writeln!(out, "@{name} {}", rows.len());
            for r in rows {
                if r.is_empty() {
                    out.push_str("-\n");
                } else {
                    let line: Vec<String> = r.iter().map(|i| i.to_string()).collect();
                    out.push_str(&line.join(" "));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| anyhow!("empty bundle"))?;
        let version = header
            .strip_prefix(MAGIC)
            .map(str::trim)
            .ok_or_else(|| anyhow!("line 1: missing `{MAGIC}` header"))?;
        ensure!(version == VERSION, "unsupported bundle version {version:?}");
        let mut doc = Document {
            version: version.into(),
            ..Default::default()
        };
        while let Some((no, line)) = lines.next() {
            let line = line.trim();
            if let Some(c) = line.strip_prefix('#') {
                doc.comments.push(c.trim().to_string());
            } else if let Some(rest) = line.strip_prefix('@') {
                let (name, count) = rest.split_once(' ').ok_or_else(|| anyhow!("line {}: section needs a row count", no + 1))?;
                let count: usize = count.trim().parse().with_context(|| format!("line {}: bad row count", no + 1))?;
                let mut rows = Vec::with_capacity(count);
                for _ in 0..count {
                    let (no, row) = lines.next().ok_or_else(|| anyhow!("section @{name} ends early"))?;
                    rows.push(parse_row(row.trim()).with_context(|| format!("line {}", no + 1))?);
                }
                doc.sections.push((name.into(), rows));
            } else {
                let (k, v) = line.split_once(' ').unwrap_or((line, ""));
                if k == "kind" {
                    doc.kind = v.trim().into();
                } else {
                    doc.fields.push((k.into(), v.trim().into()));
                }
            }
        }
        ensure!(!doc.kind.is_empty(), "bundle has no `kind` line");
        Ok(doc)
    }
}

fn parse_row(row: &str) -> Result<Vec<usize>> {
    if row == "-" {
        return Ok(Vec::new());
    }
    let v = row
        .split_whitespace()
        .map(|t| t.parse::<usize>().with_context(|| format!("bad index {t:?}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(v)
}

pub fn matrix_rows(m: &BitMatrix) -> Vec<Vec<usize>> {
    (0..m.rows()).map(|r| m.row(r).support()).collect()
}

pub fn rows_matrix(cols: usize, rows: &[Vec<usize>]) -> Result<BitMatrix> {
    let vecs = vectors(cols, rows)?;
    Ok(BitMatrix::from_rows(cols, &vecs)?)
}

fn vectors(n: usize, rows: &[Vec<usize>]) -> Result<Vec<BitVec>> {
    rows.iter()
        .map(|r| {
            if let Some(&bad) = r.iter().find(|&&i| i >= n) {
                bail!("index {bad} out of range for length {n}");
            }
            ensure!(r.windows(2).all(|w| w[0] < w[1]), "indices must be strictly ascending: {r:?}");
            Ok(BitVec::from_support(n, r.iter().copied()))
        })
        .collect()
}

/// A CSS code on disk. Rows are 0-based ascending qubit lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeBundle {
    pub version: String,
    pub name: String,
    pub n: usize,
    pub k: usize,
    pub hx: Vec<Vec<usize>>,
    pub hz: Vec<Vec<usize>>,
    pub logicals_x: Vec<Vec<usize>>,
    pub logicals_z: Vec<Vec<usize>>,
    pub layout: Vec<(String, usize, usize)>,
    pub provenance: String,
    /// `(k₀, l)` of the seed the code came from, when known.
    pub bound: Option<(usize, usize)>,
}

impl CodeBundle {
    pub fn from_code(name: &str, code: &CssCode, with_logicals: bool) -> Self {
        let (lx, lz) = if with_logicals {
            let set = code.logicals();
            (set.lx.iter().map(BitVec::support).collect(), set.lz.iter().map(BitVec::support).collect())
        } else {
            (Vec::new(), Vec::new())
        };
        Self {
            version: VERSION.into(),
            name: name.into(),
            n: code.n(),
            k: code.k(),
            hx: matrix_rows(code.hx()),
            hz: matrix_rows(code.hz()),
            logicals_x: lx,
            logicals_z: lz,
            layout: code.pair().layout().iter().map(|b| (b.name.clone(), b.start, b.len)).collect(),
            provenance: code.pair().provenance().into(),
            bound: None,
        }
    }

    pub fn with_bound(mut self, seed: &SymmetricSeed) -> Self {
        self.bound = Some((seed.k0(), seed.orbit_len()));
        self
    }

    pub fn pair(&self) -> Result<CssPair> {
        let hx = rows_matrix(self.n, &self.hx).context("hx")?;
        let hz = rows_matrix(self.n, &self.hz).context("hz")?;
        let layout = self.layout.iter().map(|(name, s, l)| Block::new(name.as_str(), *s, *l)).collect();
        Ok(CssPair::new(hx, hz, layout, self.provenance.clone())?)
    }

    /// The analysed code, with the stored logical basis installed if present.
    pub fn code(&self) -> Result<CssCode> {
        let code = balprod::analyze(self.pair()?)?;
        ensure!(code.k() == self.k, "bundle says k = {}, the checks give k = {}", self.k, code.k());
        if !self.logicals_x.is_empty() || !self.logicals_z.is_empty() {
            let set = LogicalSet {
                lx: vectors(self.n, &self.logicals_x)?,
                lz: vectors(self.n, &self.logicals_z)?,
            };
            code.set_logicals(set)?;
        }
        Ok(code)
    }

    pub fn to_document(&self) -> Document {
        let mut d = Document::new("code");
        d.version = self.version.clone();
        d.comments.push("rows list 0-based qubit indices; reports number qubits from 1".into());
        for (name, start, len) in &self.layout {
            d.comments.push(format!("{name} block: 0-based {start}..{} = qubits {}-{}", start + len, start + 1, start + len));
        }
        d.push("name", &self.name);
        d.push("n", self.n);
        d.push("k", self.k);
        d.push("provenance", &self.provenance);
        for (name, start, len) in &self.layout {
            d.push("layout", format!("{name} {start} {len}"));
        }
        if let Some((k0, l)) = self.bound {
            d.push("bound", format!("{k0} {l}"));
        }
        d.push_section("hx", self.hx.clone());
        d.push_section("hz", self.hz.clone());
        d.push_section("logicals_x", self.logicals_x.clone());
        d.push_section("logicals_z", self.logicals_z.clone());
        d
    }

    pub fn from_document(d: &Document) -> Result<Self> {
        d.expect_kind("code")?;
        let layout = d
            .fields_named("layout")
            .map(|v| {
                let parts: Vec<&str> = v.split_whitespace().collect();
                ensure!(parts.len() == 3, "layout line needs `name start len`: {v:?}");
                Ok((parts[0].to_string(), parts[1].parse()?, parts[2].parse()?))
            })
            .collect::<Result<Vec<_>>>()?;
        let bound = match d.field("bound") {
            None => None,
            Some(v) => {
                let (a, b) = v.split_once(' ').ok_or_else(|| anyhow!("bound needs `k0 l`"))?;
                Some((a.parse()?, b.parse()?))
            }
        };
        let section = |name: &str| d.section(name).map(<[_]>::to_vec).unwrap_or_default();
        Ok(Self {
            version: d.version.clone(),
            name: d.require("name")?.into(),
            n: d.number("n")?,
            k: d.number("k")?,
            hx: d.section("hx").ok_or_else(|| anyhow!("code bundle has no @hx"))?.to_vec(),
            hz: d.section("hz").ok_or_else(|| anyhow!("code bundle has no @hz"))?.to_vec(),
            logicals_x: section("logicals_x"),
            logicals_z: section("logicals_z"),
            layout,
            provenance: d.field("provenance").unwrap_or_default().into(),
            bound,
        })
    }

    pub fn serialize(&self) -> String {
        self.to_document().serialize()
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_document(&Document::parse(text)?)
    }
}

fn perm_line(p: &Perm) -> String {
    p.image().iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_perm(v: &str) -> Result<Perm> {
    let image = v.split_whitespace().map(|t| t.parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
    Ok(Perm::new(image)?)
}

pub fn seed_document(name: &str, seed: &SymmetricSeed) -> Document {
    let i = seed.incidence();
    let mut d = Document::new("seed");
    d.comments.push("row_sym and col_sym list the image of 0, 1, 2, ...".into());
    d.push("name", name);
    d.push("rows", i.rows());
    d.push("cols", i.cols());
    d.push("orbit", seed.orbit_len());
    d.push("orientation", &seed.meta().orientation);
    d.push("col_sym_transposed", seed.meta().col_sym_transposed);
    d.push("source", &seed.meta().source);
    d.push("row_sym", perm_line(seed.row_sym()));
    d.push("col_sym", perm_line(seed.col_sym()));
    d.push_section("incidence", matrix_rows(i));
    d
}

/// Reads a seed bundle and re-certifies it.
pub fn seed_from_document(d: &Document) -> Result<SymmetricSeed> {
    d.expect_kind("seed")?;
    let cols = d.number("cols")?;
    let i = rows_matrix(cols, d.section("incidence").ok_or_else(|| anyhow!("seed bundle has no @incidence"))?)?;
    ensure!(i.rows() == d.number("rows")?, "@incidence has {} rows, header says {}", i.rows(), d.number("rows")?);
    let r = parse_perm(d.require("row_sym")?).context("row_sym")?;
    let c = parse_perm(d.require("col_sym")?).context("col_sym")?;
    let seed = certify_seed(&i, &r, &c, d.number("orbit")?)?;
    Ok(seed.with_meta(SeedMeta {
        orientation: d.field("orientation").unwrap_or_default().into(),
        col_sym_transposed: d.field("col_sym_transposed") == Some("true"),
        source: d.field("source").unwrap_or_default().into(),
    }))
}

pub fn matrix_document(name: &str, m: &BitMatrix) -> Document {
    let mut d = Document::new("matrix");
    d.push("name", name);
    d.push("rows", m.rows());
    d.push("cols", m.cols());
    d.push_section("matrix", matrix_rows(m));
    d
}

pub fn matrix_from_document(d: &Document) -> Result<BitMatrix> {
    d.expect_kind("matrix")?;
    let m = rows_matrix(d.number("cols")?, d.section("matrix").ok_or_else(|| anyhow!("matrix bundle has no @matrix"))?)?;
    ensure!(m.rows() == d.number("rows")?, "@matrix row count disagrees with header");
    Ok(m)
}

pub fn perm_from_document(d: &Document) -> Result<Perm> {
    d.expect_kind("perm")?;
    parse_perm(d.require("perm")?)
}

pub fn perm_document(p: &Perm) -> Document {
    let mut d = Document::new("perm");
    d.push("perm", perm_line(p));
    d
}

/// Section `@assignment` has one row per orbit representative: the row index
/// followed by the local column of each support entry.
pub fn assignment_from_document(d: &Document) -> Result<TannerAssignment> {
    d.expect_kind("assignment")?;
    let rows = d.section("assignment").ok_or_else(|| anyhow!("assignment bundle has no @assignment"))?;
    let mut out = Vec::new();
    for r in rows {
        let (&row, cols) = r.split_first().ok_or_else(|| anyhow!("empty assignment row"))?;
        out.push((row, cols.to_vec()));
    }
    Ok(TannerAssignment { rows: out })
}
