//! Exact distance certification by weight-ordered search.
//!
//! An X-type error `e` is a nontrivial logical when `hz·e = 0` and `e` pairs
//! oddly with at least one retained logical Z; dually for Z-type errors.
//! Both methods visit every support of each weight before moving up, so a
//! reported distance is a certified minimum, and both return the
//! lexicographically smallest witness of that weight.

use std::collections::HashMap;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::css::{preserves_rowspace, CssCode, SubsystemView};
use crate::gf2::{BitMatrix, BitVec};
use crate::search::{binomial, lex_rank, Binomial, Engine, Table};
use crate::symmetry::{orbits, Perm};

pub const DEFAULT_CANDIDATE_BUDGET: u64 = 1_000_000_000;
pub const DEFAULT_TABLE_BUDGET_BYTES: u64 = 1 << 30;
const TABLE_ENTRY_BYTES: u64 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    X,
    Z,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pauli::X => "X",
            Pauli::Z => "Z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Mitm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Mitm => "mitm",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found { weight: usize, witness: BitVec },
    /// No nontrivial logical of weight `≤ weight`.
    Exceeds { weight: usize },
    /// Stopped before `max_w`: weights up to `completed_up_to` are clear, and
    /// the next level would need `needed` units against a cap of `budget`.
    BudgetExceeded { completed_up_to: usize, needed: u64, budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    pub pauli: Pauli,
    pub method: Method,
    pub searched_up_to: usize,
    pub outcome: Outcome,
    pub elapsed: Duration,
    /// Supports examined (exhaustive) or table entries plus probes (mitm).
    pub work: u64,
}

impl DistanceReport {
    pub fn distance(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Found { weight, .. } => Some(weight),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&BitVec> {
        match &self.outcome {
            Outcome::Found { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d_{} ", self.pauli)?;
        match &self.outcome {
            Outcome::Found { weight, witness } => {
                let one_based: Vec<String> = witness.iter_ones().map(|q| (q + 1).to_string()).collect();
                write!(f, "= {weight} (witness qubits {})", one_based.join(","))?
            }
            Outcome::Exceeds { weight } => write!(f, "> {weight}")?,
            Outcome::BudgetExceeded { completed_up_to, needed, budget } => write!(
                f,
                "> {completed_up_to} (budget exceeded: next level needs {needed}, cap {budget})"
            )?,
        }
        write!(f, " [{} search to weight {}, {} units]", self.method, self.searched_up_to, self.work)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DistanceError {
    #[error("permutation has size {size}, code has {n} qubits")]
    SymmetrySize { size: usize, n: usize },
    #[error("permutation is not an automorphism of the {what}")]
    NotAutomorphism { what: &'static str },
    #[error("candidate has length {len}, code has {n} qubits")]
    Length { len: usize, n: usize },
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub candidate_budget: u64,
    pub table_budget_bytes: u64,
    /// Qubit automorphism used to skip equivalent supports (exhaustive only).
    pub symmetry: Option<Perm>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
            table_budget_bytes: DEFAULT_TABLE_BUDGET_BYTES,
            symmetry: None,
        }
    }
}

/// Anything with checks and a set of logicals to pair against.
pub trait DistanceTarget {
    fn hx(&self) -> &BitMatrix;
    fn hz(&self) -> &BitMatrix;
    /// Logicals an error of type `pauli` must pair with.
    fn opposing(&self, pauli: Pauli) -> Vec<BitVec>;

    fn n(&self) -> usize {
        self.hx().cols()
    }

    /// The check that detects errors of type `pauli`.
    fn check(&self, pauli: Pauli) -> &BitMatrix {
        match pauli {
            Pauli::X => self.hz(),
            Pauli::Z => self.hx(),
        }
    }
}

impl DistanceTarget for CssCode {
    fn hx(&self) -> &BitMatrix {
        CssCode::hx(self)
    }

    fn hz(&self) -> &BitMatrix {
        CssCode::hz(self)
    }

    fn opposing(&self, pauli: Pauli) -> Vec<BitVec> {
        match pauli {
            Pauli::X => self.logicals().lz.clone(),
            Pauli::Z => self.logicals().lx.clone(),
        }
    }
}

impl DistanceTarget for SubsystemView {
    fn hx(&self) -> &BitMatrix {
        SubsystemView::hx(self)
    }

    fn hz(&self) -> &BitMatrix {
        SubsystemView::hz(self)
    }

    fn opposing(&self, pauli: Pauli) -> Vec<BitVec> {
        match pauli {
            Pauli::X => self.lz().to_vec(),
            Pauli::Z => self.lx().to_vec(),
        }
    }

    fn check(&self, pauli: Pauli) -> &BitMatrix {
        match pauli {
            Pauli::X => self.x_detect(),
            Pauli::Z => SubsystemView::hx(self),
        }
    }
}

/// True iff `candidate` has zero syndrome and pairs oddly with some retained
/// opposing logical, i.e. it certifies `d ≤ |candidate|`.
pub fn verify_logical_upper_bound<T: DistanceTarget + ?Sized>(target: &T, candidate: &BitVec, pauli: Pauli) -> bool {
    if candidate.len() != target.n() {
        return false;
    }
    target.check(pauli).mul_vec(candidate).map(|s| s.is_zero()).unwrap_or(false)
        && target.opposing(pauli).iter().any(|l| l.dot(candidate))
}

/// Checks that `p` preserves both the detecting check's row space and the
/// row space of the check stacked with the opposing logicals, which makes the
/// nontrivial-logical predicate invariant under `p`.
pub fn check_automorphism<T: DistanceTarget + ?Sized>(target: &T, pauli: Pauli, p: &Perm) -> Result<(), DistanceError> {
    if p.size() != target.n() {
        return Err(DistanceError::SymmetrySize { size: p.size(), n: target.n() });
    }
    let check = target.check(pauli);
    if !preserves_rowspace(check, p) {
        return Err(DistanceError::NotAutomorphism { what: "parity checks" });
    }
    let mut rows = check.row_vecs();
    rows.extend(target.opposing(pauli));
    let stacked = BitMatrix::from_rows(target.n(), &rows).expect("same width");
    if !preserves_rowspace(&stacked, p) {
        return Err(DistanceError::NotAutomorphism { what: "retained logicals" });
    }
    Ok(())
}

fn support_vec(n: usize, s: &[usize]) -> BitVec {
    BitVec::from_support(n, s.iter().copied())
}

fn finish(pauli: Pauli, method: Method, searched_up_to: usize, outcome: Outcome, start: Instant, work: u64) -> DistanceReport {
    DistanceReport {
        pauli,
        method,
        searched_up_to,
        outcome,
        elapsed: start.elapsed(),
        work,
    }
}

/// Weight-ordered sweep over all supports up to `max_w`.
pub fn distance_exhaustive<T: DistanceTarget + ?Sized>(
    target: &T,
    pauli: Pauli,
    max_w: usize,
    config: &SearchConfig,
) -> Result<DistanceReport, DistanceError> {
    let start = Instant::now();
    let n = target.n();
    let opposing = target.opposing(pauli);
    let engine = Engine::new(target.check(pauli), Some(&opposing));
    let reps: Option<Vec<usize>> = match &config.symmetry {
        None => None,
        Some(p) => {
            check_automorphism(target, pauli, p)?;
            let mut r: Vec<usize> = orbits(p).iter().map(|o| o[0]).collect();
            r.sort_unstable();
            Some(r)
        }
    };
    let budget = config.candidate_budget;
    let mut work = 0u64;
    let max_w = max_w.min(n);
    for w in 1..=max_w {
        let full = binomial(n, w);
        let hit = match &reps {
            None => {
                if work.saturating_add(full) > budget {
                    let outcome = Outcome::BudgetExceeded { completed_up_to: w - 1, needed: full, budget };
                    return Ok(finish(pauli, Method::Exhaustive, w - 1, outcome, start, work));
                }
                engine.first_at_weight(w)
            }
            Some(reps) => {
                let reduced = engine.reduced_count(w, reps);
                if work.saturating_add(reduced) > budget {
                    let outcome = Outcome::BudgetExceeded { completed_up_to: w - 1, needed: reduced, budget };
                    return Ok(finish(pauli, Method::Exhaustive, w - 1, outcome, start, work));
                }
                if engine.exists_with_rep(w, reps) {
                    // the canonical witness needs the full level
                    if work.saturating_add(reduced).saturating_add(full) > budget {
                        let outcome = Outcome::BudgetExceeded { completed_up_to: w - 1, needed: full, budget };
                        return Ok(finish(pauli, Method::Exhaustive, w - 1, outcome, start, work + reduced));
                    }
                    work += reduced;
                    engine.first_at_weight(w)
                } else {
                    work += reduced;
                    continue;
                }
            }
        };
        match hit {
            Some(s) => {
                work += lex_rank(n, &s) + 1;
                let witness = support_vec(n, &s);
                debug_assert!(verify_logical_upper_bound(target, &witness, pauli));
                return Ok(finish(pauli, Method::Exhaustive, w, Outcome::Found { weight: w, witness }, start, work));
            }
            None => {
                assert!(reps.is_none(), "reduced sweep found a hit the full sweep missed");
                work += full;
            }
        }
    }
    Ok(finish(pauli, Method::Exhaustive, max_w, Outcome::Exceeds { weight: max_w }, start, work))
}

/// Meet-in-the-middle sweep: weight `w` is split as `⌈w/2⌉ + ⌊w/2⌋`; the
/// first part is indexed by syndrome, the second probes the index.
pub fn distance_mitm<T: DistanceTarget + ?Sized>(
    target: &T,
    pauli: Pauli,
    max_w: usize,
    config: &SearchConfig,
) -> Result<DistanceReport, DistanceError> {
    let start = Instant::now();
    let n = target.n();
    let opposing = target.opposing(pauli);
    let engine = Engine::new(target.check(pauli), Some(&opposing));
    let max_w = max_w.min(n);
    let binom = Binomial::new(n, max_w.div_ceil(2).max(1));
    let mut tables: HashMap<usize, Table> = HashMap::new();
    let mut work = 0u64;
    for w in 1..=max_w {
        let hit = if w == 1 {
            work += n as u64;
            engine.single_hit()
        } else {
            let w1 = w.div_ceil(2);
            let w2 = w - w1;
            let entries = binomial(n, w1);
            let bytes = entries.saturating_mul(TABLE_ENTRY_BYTES);
            if bytes > config.table_budget_bytes {
                let outcome = Outcome::BudgetExceeded {
                    completed_up_to: w - 1,
                    needed: bytes,
                    budget: config.table_budget_bytes,
                };
                return Ok(finish(pauli, Method::Mitm, w - 1, outcome, start, work));
            }
            let probes = binomial(n - w1, w2);
            let mut cost = probes;
            if !tables.contains_key(&w1) {
                cost = cost.saturating_add(entries);
            }
            if work.saturating_add(cost) > config.candidate_budget {
                let outcome = Outcome::BudgetExceeded {
                    completed_up_to: w - 1,
                    needed: cost,
                    budget: config.candidate_budget,
                };
                return Ok(finish(pauli, Method::Mitm, w - 1, outcome, start, work));
            }
            work += cost;
            let table = tables.entry(w1).or_insert_with(|| engine.build_table(w1, &binom));
            engine.mitm_at_weight(w, table, &binom)
        };
        if let Some(s) = hit {
            let witness = support_vec(n, &s);
            debug_assert!(verify_logical_upper_bound(target, &witness, pauli));
            return Ok(finish(pauli, Method::Mitm, w, Outcome::Found { weight: w, witness }, start, work));
        }
    }
    Ok(finish(pauli, Method::Mitm, max_w, Outcome::Exceeds { weight: max_w }, start, work))
}

pub fn distance<T: DistanceTarget + ?Sized>(
    target: &T,
    pauli: Pauli,
    max_w: usize,
    method: Method,
    config: &SearchConfig,
) -> Result<DistanceReport, DistanceError> {
    match method {
        Method::Exhaustive => distance_exhaustive(target, pauli, max_w, config),
        Method::Mitm => distance_mitm(target, pauli, max_w, config),
    }
}
