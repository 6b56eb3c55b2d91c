//! Brute-force engine for monomial ideals, and a differential tester that
//! runs the same task through Gröbner bases and through exponent combinatorics.
//!
//! `MonomialIdeal` only shares `Monomial` and `LengthValue` with the rest of
//! the crate; none of its operations go through polynomials.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::{colength, LengthValue};
use crate::polyring::{write_monomial, Monomial, PolyRing, Polynomial};

/// A monomial ideal given by its minimal generators, sorted by degree and
/// then by exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

fn canonical_sort(gens: &mut [Monomial]) {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
}

impl MonomialIdeal {
    /// Minimalizes `gens`: drops duplicates and every generator divisible by another.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Monomial>) -> Self {
        let mut all: Vec<Monomial> = gens.into_iter().collect();
        debug_assert!(all.iter().all(|m| m.nvars() == nvars));
        canonical_sort(&mut all);
        let mut minimal: Vec<Monomial> = Vec::with_capacity(all.len());
        for m in all {
            if !minimal.iter().any(|g| g.divides(&m)) {
                minimal.push(m);
            }
        }
        MonomialIdeal { nvars, gens: minimal }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal { nvars, gens: vec![Monomial::one(nvars)] }
    }

    /// `(x_1, ..., x_n)`
    pub fn maximal(nvars: usize) -> Self {
        Self::new(nvars, (0..nvars).map(|i| Monomial::var(nvars, i)))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `other ⊆ self`
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// `I : f`, generated by `m / gcd(m, f)`.
    pub fn colon(&self, f: &Monomial) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().map(|m| m.checked_div(&m.gcd(f)).expect("gcd divides")))
    }

    /// `I : J = ∩ I : g` over generators `g` of `J`; `I : 0` is the unit ideal.
    pub fn colon_ideal(&self, by: &MonomialIdeal) -> MonomialIdeal {
        by.gens.iter().fold(Self::unit(self.nvars), |acc, g| acc.intersect(&self.colon(g)))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.lcm(b));
            }
        }
        Self::new(self.nvars, out)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        Self::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut out = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.mul(b));
            }
        }
        Self::new(self.nvars, out)
    }

    pub fn power(&self, k: u32) -> MonomialIdeal {
        (0..k).fold(Self::unit(self.nvars), |acc, _| acc.product(self))
    }

    /// `I : J^∞` and the number of strict steps in `I ⊆ I:J ⊆ ...` (at least 1).
    pub fn saturate(&self, by: &MonomialIdeal) -> (MonomialIdeal, usize) {
        let mut current = self.clone();
        let mut steps = 0;
        loop {
            let next = current.colon_ideal(by);
            if next == current {
                return (current, steps.max(1));
            }
            current = next;
            steps += 1;
        }
    }

    /// Number of monomials outside the ideal, by enumerating the box cut out
    /// by the smallest pure powers.
    pub fn colength(&self) -> LengthValue {
        if self.is_unit() {
            return LengthValue::Finite(0);
        }
        let mut bounds = vec![u32::MAX; self.nvars];
        for g in &self.gens {
            if let Some((i, e)) = g.pure_power() {
                bounds[i] = bounds[i].min(e);
            }
        }
        if bounds.contains(&u32::MAX) {
            return LengthValue::Infinite;
        }
        let mut count = 0u64;
        let mut exps = vec![0u32; self.nvars];
        loop {
            if !self.contains(&Monomial::new(exps.iter().copied())) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == self.nvars {
                    return LengthValue::Finite(count);
                }
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, nvars: usize, gens: &[Monomial]) -> fmt::Result {
    let names: Vec<String> = (1..=nvars).map(|i| format!("x{i}")).collect();
    f.write_str("(")?;
    for (k, g) in gens.iter().enumerate() {
        if k > 0 {
            f.write_str(", ")?;
        }
        let mut s = String::new();
        write_monomial(&mut s, g, &names)?;
        f.write_str(&s)?;
    }
    f.write_str(")")
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, self.nvars, &self.gens)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    /// `left : right[0]`
    Colon,
    /// `left : right`
    ColonIdeal,
    Intersect,
    Sum,
    Product,
    Power(u32),
    /// `left : right^∞`
    Saturate,
    /// `l(S/left)`
    Length,
}

/// An ideal-calculus call on monomial ideals in `x1..x{nvars}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTask {
    pub nvars: usize,
    pub kind: TaskKind,
    pub left: Vec<Monomial>,
    pub right: Vec<Monomial>,
}

impl MonomialTask {
    /// Builds a task from ideals given by polynomial generators, which must all be monomials.
    pub fn from_ideals(kind: TaskKind, left: &Ideal, right: Option<&Ideal>) -> Result<Self> {
        let monos = |i: &Ideal| -> Result<Vec<Monomial>> {
            i.generators()
                .iter()
                .filter(|g| !g.is_zero())
                .map(|g| {
                    if g.is_monomial() {
                        Ok(g.leading_monomial().unwrap().clone())
                    } else {
                        Err(Error::InvalidArgument(format!("`{g}` is not a monomial")))
                    }
                })
                .collect()
        };
        let right = match right {
            Some(r) => monos(r)?,
            None => Vec::new(),
        };
        let task = MonomialTask { nvars: left.ring().nvars(), kind, left: monos(left)?, right };
        task.validate()?;
        Ok(task)
    }

    pub fn validate(&self) -> Result<()> {
        if self.nvars == 0 {
            return Err(Error::InvalidArgument("tasks need at least one variable".into()));
        }
        if self.left.iter().chain(&self.right).any(|m| m.nvars() != self.nvars) {
            return Err(Error::MixedRings);
        }
        match self.kind {
            TaskKind::Colon if self.right.len() != 1 => {
                Err(Error::InvalidArgument("colon by an element needs exactly one divisor".into()))
            }
            TaskKind::ColonIdeal | TaskKind::Saturate if self.right.is_empty() => Err(Error::ZeroIdeal),
            _ => Ok(()),
        }
    }

    fn min_right(&self) -> usize {
        match self.kind {
            TaskKind::Colon | TaskKind::ColonIdeal | TaskKind::Saturate => 1,
            _ => 0,
        }
    }

    /// Candidate tasks one step smaller: one generator or one variable fewer.
    fn shrink_candidates(&self) -> Vec<MonomialTask> {
        let mut out = Vec::new();
        for k in 0..self.left.len() {
            let mut t = self.clone();
            t.left.remove(k);
            out.push(t);
        }
        if self.right.len() > self.min_right() {
            for k in 0..self.right.len() {
                let mut t = self.clone();
                t.right.remove(k);
                out.push(t);
            }
        }
        if self.nvars > 1 {
            for v in 0..self.nvars {
                let drop = |m: &Monomial| {
                    Monomial::new(m.exponents().iter().enumerate().filter(|(i, _)| *i != v).map(|(_, &e)| e))
                };
                out.push(MonomialTask {
                    nvars: self.nvars - 1,
                    kind: self.kind,
                    left: self.left.iter().map(drop).collect(),
                    right: self.right.iter().map(drop).collect(),
                });
            }
        }
        out
    }

    fn size(&self) -> usize {
        self.nvars + self.left.len() + self.right.len()
    }
}

impl fmt::Display for MonomialTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.nvars;
        match self.kind {
            TaskKind::Colon | TaskKind::ColonIdeal => {
                write_list(f, n, &self.left)?;
                f.write_str(" : ")?;
                write_list(f, n, &self.right)
            }
            TaskKind::Intersect | TaskKind::Sum | TaskKind::Product => {
                write_list(f, n, &self.left)?;
                f.write_str(match self.kind {
                    TaskKind::Intersect => " ∩ ",
                    TaskKind::Sum => " + ",
                    _ => " * ",
                })?;
                write_list(f, n, &self.right)
            }
            TaskKind::Power(k) => {
                write_list(f, n, &self.left)?;
                write!(f, "^{k}")
            }
            TaskKind::Saturate => {
                write_list(f, n, &self.left)?;
                f.write_str(" : ")?;
                write_list(f, n, &self.right)?;
                f.write_str("^∞")
            }
            TaskKind::Length => {
                f.write_str("length S/")?;
                write_list(f, n, &self.left)
            }
        }?;
        write!(f, " in {n} variable{}", if n == 1 { "" } else { "s" })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type")]
pub enum TaskOutcome {
    Ideal { generators: Vec<Monomial> },
    Saturation { generators: Vec<Monomial>, index: usize },
    Length { length: LengthValue },
    Failed { message: String },
}

impl fmt::Display for TaskOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = |g: &[Monomial]| g.first().map_or(0, Monomial::nvars);
        match self {
            TaskOutcome::Ideal { generators } => write_list(f, n(generators), generators),
            TaskOutcome::Saturation { generators, index } => {
                write_list(f, n(generators), generators)?;
                write!(f, " (index {index})")
            }
            TaskOutcome::Length { length } => write!(f, "{length}"),
            TaskOutcome::Failed { message } => write!(f, "error: {message}"),
        }
    }
}

pub trait TaskEngine {
    fn name(&self) -> &str;
    fn run(&self, task: &MonomialTask) -> TaskOutcome;
}

/// Runs tasks through the brute-force monomial engine.
#[derive(Clone, Copy, Debug, Default)]
pub struct OracleEngine;

impl TaskEngine for OracleEngine {
    fn name(&self) -> &str {
        "monomial oracle"
    }

    fn run(&self, task: &MonomialTask) -> TaskOutcome {
        if let Err(e) = task.validate() {
            return TaskOutcome::Failed { message: e.to_string() };
        }
        let n = task.nvars;
        let left = MonomialIdeal::new(n, task.left.iter().cloned());
        let right = MonomialIdeal::new(n, task.right.iter().cloned());
        let ideal = |i: MonomialIdeal| TaskOutcome::Ideal { generators: i.gens };
        match task.kind {
            TaskKind::Colon => ideal(left.colon(&task.right[0])),
            TaskKind::ColonIdeal => ideal(left.colon_ideal(&right)),
            TaskKind::Intersect => ideal(left.intersect(&right)),
            TaskKind::Sum => ideal(left.sum(&right)),
            TaskKind::Product => ideal(left.product(&right)),
            TaskKind::Power(k) => ideal(left.power(k)),
            TaskKind::Saturate => {
                let (sat, index) = left.saturate(&right);
                TaskOutcome::Saturation { generators: sat.gens, index }
            }
            TaskKind::Length => TaskOutcome::Length { length: left.colength() },
        }
    }
}

/// Runs tasks through Gröbner bases in `k[x1..xn]` with grevlex.
#[derive(Clone, Copy, Debug, Default)]
pub struct GroebnerEngine {
    /// Drop the last element of the left operand's Gröbner basis before computing.
    /// Exists to check that the differ notices broken engines.
    pub drop_last_basis_element: bool,
}

impl GroebnerEngine {
    pub fn faulty() -> Self {
        GroebnerEngine { drop_last_basis_element: true }
    }

    fn compute(&self, task: &MonomialTask) -> Result<TaskOutcome> {
        task.validate()?;
        let ring = PolyRing::standard(task.nvars);
        let to_ideal = |gens: &[Monomial]| Ideal::from_monomials(&ring, gens);
        let mut left = to_ideal(&task.left);
        if self.drop_last_basis_element {
            let mut gb = left.gb().elements().to_vec();
            gb.pop();
            left = Ideal::new(&ring, gb)?;
        }
        let right = to_ideal(&task.right);
        let as_monomials = |i: &Ideal| -> Result<Vec<Monomial>> {
            let mut out = Vec::new();
            for g in i.gb().elements() {
                if !g.is_monomial() {
                    return Err(Error::PropertyViolation(format!("basis element {g} of a monomial ideal")));
                }
                out.push(g.leading_monomial().unwrap().clone());
            }
            canonical_sort(&mut out);
            Ok(out)
        };
        let ideal = |i: Ideal| -> Result<TaskOutcome> { Ok(TaskOutcome::Ideal { generators: as_monomials(&i)? }) };
        match task.kind {
            TaskKind::Colon => {
                let f = Polynomial::monomial(&ring, task.right[0].clone(), 1);
                ideal(left.colon_element(&f)?)
            }
            TaskKind::ColonIdeal => ideal(left.colon_ideal(&right)?),
            TaskKind::Intersect => ideal(left.intersect(&right)?),
            TaskKind::Sum => ideal(left.sum(&right)?),
            TaskKind::Product => ideal(left.product(&right)?),
            TaskKind::Power(k) => ideal(left.power(k as i64)?),
            TaskKind::Saturate => {
                let (sat, index) = left.saturate(&right)?;
                Ok(TaskOutcome::Saturation { generators: as_monomials(&sat)?, index })
            }
            TaskKind::Length => Ok(TaskOutcome::Length { length: colength(&left) }),
        }
    }
}

impl TaskEngine for GroebnerEngine {
    fn name(&self) -> &str {
        if self.drop_last_basis_element {
            "groebner (faulty)"
        } else {
            "groebner"
        }
    }

    fn run(&self, task: &MonomialTask) -> TaskOutcome {
        self.compute(task).unwrap_or_else(|e| TaskOutcome::Failed { message: e.to_string() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Disagreement {
    pub task: MonomialTask,
    pub left: TaskOutcome,
    pub right: TaskOutcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiffReport {
    pub task: MonomialTask,
    pub agree: bool,
    pub outcome: TaskOutcome,
    /// Smallest disagreeing task found by deleting generators and variables.
    pub counterexample: Option<Disagreement>,
}

/// Runs `task` through both engines and, on disagreement, shrinks it.
pub fn oracle_diff_with(task: &MonomialTask, a: &dyn TaskEngine, b: &dyn TaskEngine) -> Result<DiffReport> {
    task.validate()?;
    let (x, y) = (a.run(task), b.run(task));
    if x == y {
        return Ok(DiffReport { task: task.clone(), agree: true, outcome: x, counterexample: None });
    }
    let mut best = Disagreement { task: task.clone(), left: x.clone(), right: y };
    'shrink: loop {
        for cand in best.task.shrink_candidates() {
            debug_assert!(cand.size() < best.task.size());
            let (cx, cy) = (a.run(&cand), b.run(&cand));
            if cx != cy {
                best = Disagreement { task: cand, left: cx, right: cy };
                continue 'shrink;
            }
        }
        break;
    }
    Ok(DiffReport { task: task.clone(), agree: false, outcome: x, counterexample: Some(best) })
}

/// Gröbner path against the monomial oracle.
pub fn oracle_diff(task: &MonomialTask) -> Result<DiffReport> {
    oracle_diff_with(task, &GroebnerEngine::default(), &OracleEngine)
}

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(1..=max_degree);
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// A seeded list of `count` tasks over at most 3 variables with generators of degree at most 4.
pub fn random_tasks(seed: u64, count: usize) -> Vec<MonomialTask> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nvars = rng.gen_range(1..=3);
            let kind = match rng.gen_range(0..8) {
                0 => TaskKind::Colon,
                1 => TaskKind::ColonIdeal,
                2 => TaskKind::Intersect,
                3 => TaskKind::Sum,
                4 => TaskKind::Product,
                5 => TaskKind::Power(rng.gen_range(0..=3)),
                6 => TaskKind::Saturate,
                _ => TaskKind::Length,
            };
            let nleft = rng.gen_range(1..=4);
            let left = (0..nleft).map(|_| random_monomial(&mut rng, nvars, 4)).collect();
            let nright = match kind {
                TaskKind::Colon => 1,
                TaskKind::Power(_) | TaskKind::Length => 0,
                _ => rng.gen_range(1..=3),
            };
            let right = (0..nright).map(|_| random_monomial(&mut rng, nvars, 3)).collect();
            MonomialTask { nvars, kind, left, right }
        })
        .collect()
}
