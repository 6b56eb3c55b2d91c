//! Classification of sequences `a_1, ..., a_r` on a module `M = S/J`:
//! absolutely superficial (d-sequence) via several equivalent colon
//! conditions, filter-regular, weak, regular and bounded superficial checks,
//! and power lifting.
//!
//! Every check works on carriers in `S`: the submodule `q_{i-1}M` is the
//! ideal `Q_{i-1} + J`, and module colons are ideal colons of carriers.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::module::PresentedModule;
use crate::polyring::{PolyRing, Polynomial};

/// The module together with the sequence and its prefix ideals.
#[derive(Clone, Debug)]
pub struct SequenceContext {
    module: PresentedModule,
    elements: Vec<Polynomial>,
    /// `Q_0 = 0, Q_1, ..., Q_r` in `S`.
    prefixes: Vec<Ideal>,
    /// `Q_i + J`.
    carriers: Vec<Ideal>,
}

impl SequenceContext {
    /// Checks that every element is nonzero and lies in the ideal of all variables.
    pub fn new(module: PresentedModule, elements: Vec<Polynomial>) -> Result<Self> {
        let ring = module.ring().clone();
        for (k, a) in elements.iter().enumerate() {
            if !PolyRing::same(a.ring(), &ring) {
                return Err(Error::MixedRings);
            }
            if a.is_zero() {
                return Err(Error::ZeroElement(k + 1));
            }
            if a.constant_coefficient() != 0 {
                return Err(Error::NotInMaximalIdeal(k + 1));
            }
        }
        let mut prefixes = vec![Ideal::zero(&ring)];
        let mut carriers = vec![module.defining_ideal().clone()];
        for i in 1..=elements.len() {
            let q = Ideal::new(&ring, elements[..i].to_vec())?;
            carriers.push(q.sum(module.defining_ideal())?.reduced());
            prefixes.push(q);
        }
        Ok(SequenceContext { module, elements, prefixes, carriers })
    }

    /// Same module, different sequence.
    pub fn with_elements(&self, elements: Vec<Polynomial>) -> Result<Self> {
        Self::new(self.module.clone(), elements)
    }

    pub fn module(&self) -> &PresentedModule {
        &self.module
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.module.ring()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// `r`
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `a_i`, 1-based.
    pub fn element(&self, i: usize) -> &Polynomial {
        &self.elements[i - 1]
    }

    /// `Q_i = (a_1, ..., a_i)`.
    pub fn prefix(&self, i: usize) -> &Ideal {
        &self.prefixes[i]
    }

    /// Carrier of `q_i M`, i.e. `Q_i + J`.
    pub fn carrier(&self, i: usize) -> &Ideal {
        &self.carriers[i]
    }

    /// `Q = Q_r`.
    pub fn q(&self) -> &Ideal {
        &self.prefixes[self.len()]
    }

    /// Carrier of `qM`.
    pub fn q_carrier(&self) -> &Ideal {
        &self.carriers[self.len()]
    }

    pub fn maximal(&self) -> Ideal {
        Ideal::maximal(self.ring())
    }

    /// Module and sequence are homogeneous, so graded results carry local meaning.
    pub fn is_homogeneous(&self) -> bool {
        self.module.is_homogeneous() && self.elements.iter().all(Polynomial::is_homogeneous)
    }

    pub fn is_system_of_parameters(&self) -> Result<bool> {
        self.module.is_system_of_parameters(&self.elements)
    }

    /// `U + J` for an ideal `U` of `S`.
    pub fn carrier_of(&self, ideal: &Ideal) -> Result<Ideal> {
        Ok(ideal.sum(self.module.defining_ideal())?.reduced())
    }
}

/// Two ideals that should have agreed at index `i` (1-based) and did not.
#[derive(Clone, Debug)]
pub struct Witness {
    pub index: usize,
    pub lhs: Ideal,
    pub rhs: Ideal,
    /// Which comparison failed, e.g. `"J:a_1^2 vs J:q"`.
    pub relation: String,
}

/// Verdict of a per-index check, with the first failing index if any.
#[derive(Clone, Debug)]
pub struct ConditionOutcome {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl ConditionOutcome {
    fn pass() -> Self {
        ConditionOutcome { holds: true, witness: None }
    }

    fn fail(index: usize, lhs: Ideal, rhs: Ideal, relation: String) -> Self {
        ConditionOutcome { holds: false, witness: Some(Witness { index, lhs, rhs, relation }) }
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.index)
    }
}

fn prefix_name(i: usize) -> String {
    if i == 1 {
        "J".to_string()
    } else {
        format!("q_{}M", i - 1)
    }
}

/// `q_{i-1}M : a_i^2 = q_{i-1}M : q` for every `i`.
pub fn check_as_condition_v(ctx: &SequenceContext) -> Result<ConditionOutcome> {
    for i in 1..=ctx.len() {
        let p = ctx.carrier(i - 1);
        let a = ctx.element(i);
        let lhs = p.colon_element(&a.pow(2))?;
        let rhs = p.colon_ideal(ctx.q())?;
        if !lhs.equals(&rhs) {
            let rel = format!("{}:a_{i}^2 vs {}:q", prefix_name(i), prefix_name(i));
            return Ok(ConditionOutcome::fail(i, lhs, rhs, rel));
        }
    }
    Ok(ConditionOutcome::pass())
}

/// `(q_{i-1}M : a_i) ∩ qM = q_{i-1}M` for every `i`.
pub fn check_as_condition_iv(ctx: &SequenceContext) -> Result<ConditionOutcome> {
    for i in 1..=ctx.len() {
        let p = ctx.carrier(i - 1);
        let lhs = p.colon_element(ctx.element(i))?.intersect(ctx.q_carrier())?;
        if !lhs.equals(p) {
            let rel = format!("({}:a_{i}) ∩ qM vs {}", prefix_name(i), prefix_name(i));
            return Ok(ConditionOutcome::fail(i, lhs, p.clone(), rel));
        }
    }
    Ok(ConditionOutcome::pass())
}

/// `q_{i-1}M : a_i^m = q_{i-1}M : q^n` for `1 ≤ m ≤ m_max`, `1 ≤ n ≤ n_max`, all `i`.
pub fn check_as_condition_vi(ctx: &SequenceContext, m_max: u32, n_max: u32) -> Result<ConditionOutcome> {
    if m_max == 0 || n_max == 0 {
        return Err(Error::InvalidArgument("bounds for condition (vi) must be at least 1".into()));
    }
    for i in 1..=ctx.len() {
        let p = ctx.carrier(i - 1);
        let a = ctx.element(i);
        let base = p.colon_element(a)?;
        let mut current = base.clone();
        for m in 2..=m_max {
            current = current.colon_element(a)?;
            if !current.equals(&base) {
                let rel = format!("{}:a_{i}^{m} vs {}:a_{i}", prefix_name(i), prefix_name(i));
                return Ok(ConditionOutcome::fail(i, current, base, rel));
            }
        }
        let mut current = p.clone();
        for n in 1..=n_max {
            current = current.colon_ideal(ctx.q())?;
            if !current.equals(&base) {
                let rel = format!("{}:q^{n} vs {}:a_{i}", prefix_name(i), prefix_name(i));
                return Ok(ConditionOutcome::fail(i, current, base, rel));
            }
        }
    }
    Ok(ConditionOutcome::pass())
}

/// `q_{i-1}M : a_i ⊆ (q_{i-1}M : a^∞)` for every `i`: the colon form of
/// avoiding every associated prime of `M/q_{i-1}M` outside `V(a)`.
pub fn check_filter_regular(ctx: &SequenceContext, a: &Ideal) -> Result<ConditionOutcome> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    for i in 1..=ctx.len() {
        let p = ctx.carrier(i - 1);
        let colon = p.colon_element(ctx.element(i))?;
        let (sat, _) = p.saturate(a)?;
        if !sat.contains(&colon)? {
            let rel = format!("{}:a_{i} ⊄ {}:a^∞", prefix_name(i), prefix_name(i));
            return Ok(ConditionOutcome::fail(i, colon, sat, rel));
        }
    }
    Ok(ConditionOutcome::pass())
}

fn require_in_ideal(ctx: &SequenceContext, a: &Ideal) -> Result<()> {
    let target = ctx.carrier_of(a)?;
    for i in 1..=ctx.len() {
        if !target.contains_element(ctx.element(i))? {
            return Err(Error::NotInIdeal { index: i, ideal: a.to_string() });
        }
    }
    Ok(())
}

fn weak_containment(ctx: &SequenceContext, a: &Ideal) -> Result<ConditionOutcome> {
    for i in 1..=ctx.len() {
        let p = ctx.carrier(i - 1);
        let colon = p.colon_element(ctx.element(i))?;
        let by_a = p.colon_ideal(a)?;
        if !by_a.contains(&colon)? {
            let rel = format!("{}:a_{i} ⊄ {}:a", prefix_name(i), prefix_name(i));
            return Ok(ConditionOutcome::fail(i, colon, by_a, rel));
        }
    }
    Ok(ConditionOutcome::pass())
}

/// `q_{i-1}M : a_i ⊆ q_{i-1}M : a` for every `i`; every `a_i` must lie in `a` (modulo `J`).
pub fn check_weak(ctx: &SequenceContext, a: &Ideal) -> Result<ConditionOutcome> {
    if a.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    require_in_ideal(ctx, a)?;
    weak_containment(ctx, a)
}

/// `q_{i-1}M : a_i = q_{i-1}M` for every `i`, and `qM ≠ M`.
pub fn check_regular(ctx: &SequenceContext) -> Result<ConditionOutcome> {
    if ctx.q_carrier().is_unit() {
        let unit = ctx.q_carrier().clone();
        let whole = Ideal::unit(ctx.ring());
        return Ok(ConditionOutcome::fail(ctx.len().max(1), unit, whole, "qM = M".into()));
    }
    for i in 1..=ctx.len() {
        let p = ctx.carrier(i - 1);
        let colon = p.colon_element(ctx.element(i))?;
        if !colon.equals(p) {
            let rel = format!("{}:a_{i} vs {}", prefix_name(i), prefix_name(i));
            return Ok(ConditionOutcome::fail(i, colon, p.clone(), rel));
        }
    }
    Ok(ConditionOutcome::pass())
}

/// Window parameters for the superficiality check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperficialWindow {
    pub c: u32,
    pub d: u32,
    pub n_lo: u32,
    pub n_hi: u32,
}

/// `((Q_{i-1} + Q^{n+c})M : a_i) ∩ Q^d M = (Q_{i-1} + Q^n)M` for every `i`
/// and every `n` in the window. Only a finite window is inspected.
pub fn check_superficial_bounded(ctx: &SequenceContext, w: SuperficialWindow) -> Result<ConditionOutcome> {
    if w.c == 0 || w.n_lo > w.n_hi {
        return Err(Error::InvalidArgument(format!(
            "superficial window needs c ≥ 1 and n_lo ≤ n_hi (got c={}, window [{}, {}])",
            w.c, w.n_lo, w.n_hi
        )));
    }
    let top = (w.n_hi + w.c).max(w.d);
    let mut powers = vec![Ideal::unit(ctx.ring())];
    for _ in 0..top {
        powers.push(powers.last().unwrap().product(ctx.q())?.reduced());
    }
    let qd = ctx.carrier_of(&powers[w.d as usize])?;
    for i in 1..=ctx.len() {
        let prefix = ctx.carrier(i - 1);
        for n in w.n_lo..=w.n_hi {
            let upper = prefix.sum(&powers[(n + w.c) as usize])?;
            let lhs = upper.colon_element(ctx.element(i))?.intersect(&qd)?;
            let rhs = prefix.sum(&powers[n as usize])?.reduced();
            if !lhs.equals(&rhs) {
                let rel = format!(
                    "window n={n}: ((Q_{}+Q^{})M : a_{i}) ∩ Q^{}M vs (Q_{}+Q^{n})M",
                    i - 1,
                    n + w.c,
                    w.d,
                    i - 1
                );
                return Ok(ConditionOutcome::fail(i, lhs, rhs, rel));
            }
        }
    }
    Ok(ConditionOutcome::pass())
}

fn powered(ctx: &SequenceContext, exps: &[u32]) -> Vec<Polynomial> {
    ctx.elements().iter().zip(exps).map(|(a, &e)| a.pow(e)).collect()
}

/// Greedy search: for each `i`, the least admissible `n_i` with
/// `(a_1^{n_1}, ..., a_{i-1}^{n_{i-1}})M : a_i^{n_i}` equal to the
/// `a`-saturation of that submodule. With `respect_saturation_index` the
/// exponent is also kept at or above the saturation index of the prefix.
fn greedy_exponents(
    ctx: &SequenceContext,
    a: &Ideal,
    n_floor: u32,
    budget: u32,
    respect_saturation_index: bool,
) -> Result<Option<Vec<u32>>> {
    let ring = ctx.ring();
    let j = ctx.module().defining_ideal();
    let mut exps: Vec<u32> = Vec::with_capacity(ctx.len());
    let mut prefix_gens: Vec<Polynomial> = Vec::new();
    for i in 1..=ctx.len() {
        let p = Ideal::new(ring, prefix_gens.clone())?.sum(j)?.reduced();
        let (sat, index) = p.saturate(a)?;
        let mut n = n_floor.max(exps.last().copied().unwrap_or(0)).max(1);
        if respect_saturation_index {
            n = n.max(index as u32);
        }
        if n > budget {
            return Ok(None);
        }
        let ai = ctx.element(i);
        let mut colon = p.colon_element(&ai.pow(n))?;
        while !colon.equals(&sat) {
            n += 1;
            if n > budget {
                return Ok(None);
            }
            colon = colon.colon_element(ai)?;
        }
        exps.push(n);
        prefix_gens.push(ai.pow(n));
    }
    Ok(Some(exps))
}

/// Ascending exponents `n_floor ≤ n_1 ≤ ... ≤ n_r ≤ budget` making
/// `a_1^{n_1}, ..., a_r^{n_r}` absolutely superficial. Requires the sequence
/// to be `a`-filter-regular with every `a_i ∈ a`. `None` if the budget runs out.
pub fn lift_powers(ctx: &SequenceContext, a: &Ideal, n_floor: u32, budget: u32) -> Result<Option<Vec<u32>>> {
    require_in_ideal(ctx, a)?;
    let fr = check_filter_regular(ctx, a)?;
    if let Some(w) = fr.witness {
        return Err(Error::Precondition(format!(
            "the sequence is not filter-regular with respect to {a}: {} = {} is not inside {}",
            w.relation, w.lhs, w.rhs
        )));
    }
    for respect_index in [false, true] {
        let Some(exps) = greedy_exponents(ctx, a, n_floor, budget, respect_index)? else {
            if respect_index {
                return Ok(None);
            }
            continue;
        };
        let lifted = ctx.with_elements(powered(ctx, &exps))?;
        if check_as_condition_v(&lifted)?.holds {
            return Ok(Some(exps));
        }
        if respect_index {
            return Err(Error::PropertyViolation(format!(
                "powers {exps:?} of a filter-regular sequence chosen past every saturation index are not absolutely superficial"
            )));
        }
    }
    unreachable!()
}

/// Which hypothesis of the weak-sequence criterion for a.s. sequences to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakHypothesis {
    /// `a_1, ..., a_{i-1}, a_i^2` is `a`-weak for each `i`.
    SquaredTail,
    /// The sequence is `a`-weak and lies in `a^2`.
    InSquare,
}

/// Evaluates the chosen weak-sequence hypothesis and, when it holds, asserts
/// that the sequence is absolutely superficial (a failure is reported as a
/// [`Error::PropertyViolation`]). Returns the hypothesis verdict.
pub fn verify_weak_criterion(ctx: &SequenceContext, a: &Ideal, variant: WeakHypothesis) -> Result<bool> {
    require_in_ideal(ctx, a)?;
    let hypothesis = match variant {
        WeakHypothesis::SquaredTail => {
            let mut all = true;
            for i in 1..=ctx.len() {
                let mut seq = ctx.elements()[..i].to_vec();
                seq[i - 1] = seq[i - 1].pow(2);
                if !check_weak(&ctx.with_elements(seq)?, a)?.holds {
                    all = false;
                    break;
                }
            }
            all
        }
        WeakHypothesis::InSquare => {
            let a2 = a.power(2)?;
            require_in_ideal(ctx, &a2)?;
            check_weak(ctx, a)?.holds
        }
    };
    if hypothesis {
        let v = check_as_condition_v(ctx)?;
        if let Some(w) = v.witness {
            return Err(Error::PropertyViolation(format!(
                "weak-sequence hypothesis ({variant:?}) holds but condition (v) fails at i={}",
                w.index
            )));
        }
    }
    Ok(hypothesis)
}

/// Hypothesis: the sequence is `a`-filter-regular and `a_1, ..., a_{r-1}, b`
/// is absolutely superficial for every `b` in the generating set `s_gens` of
/// `a`. When it holds, asserts that the sequence is `a`-weak. Returns the
/// hypothesis verdict.
pub fn verify_weak_from_generators(ctx: &SequenceContext, a: &Ideal, s_gens: &[Polynomial]) -> Result<bool> {
    let generated = Ideal::new(ctx.ring(), s_gens.to_vec())?;
    if !ctx.carrier_of(&generated)?.equals(&ctx.carrier_of(a)?) {
        return Err(Error::InvalidArgument(format!("{generated} does not generate {a}")));
    }
    if ctx.is_empty() {
        return Ok(false);
    }
    if !check_filter_regular(ctx, a)?.holds {
        return Ok(false);
    }
    let head = &ctx.elements()[..ctx.len() - 1];
    for b in s_gens {
        if b.is_zero() || b.constant_coefficient() != 0 {
            return Ok(false);
        }
        let mut seq = head.to_vec();
        seq.push(b.clone());
        if !check_as_condition_v(&ctx.with_elements(seq)?)?.holds {
            return Ok(false);
        }
    }
    if let Some(w) = weak_containment(ctx, a)?.witness {
        return Err(Error::PropertyViolation(format!(
            "filter-regular sequence with a.s. replacements by every generator is not weak at i={}",
            w.index
        )));
    }
    Ok(true)
}

/// Options for [`classify`].
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Cross-check with conditions (iv) and (vi).
    pub verify: bool,
    /// Bounds `(m_max, n_max)` for condition (vi).
    pub bounds: (u32, u32),
    /// Ideal for the filter-regular and weak checks; the maximal ideal if absent.
    pub a: Option<Ideal>,
    /// Window for the bounded superficial check; skipped if absent.
    pub superficial: Option<SuperficialWindow>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { verify: false, bounds: (3, 3), a: None, superficial: None }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    /// Ground truth from condition (v).
    pub as_sequence: bool,
    pub condition_v: ConditionOutcome,
    pub condition_iv: Option<ConditionOutcome>,
    pub condition_vi: Option<ConditionOutcome>,
    pub bounds: (u32, u32),
    pub a: Ideal,
    pub filter_regular: ConditionOutcome,
    /// `None` when some `a_i` lies outside `a`.
    pub weak: Option<ConditionOutcome>,
    pub regular: ConditionOutcome,
    pub superficial: Option<(SuperficialWindow, ConditionOutcome)>,
    pub homogeneous: bool,
}

/// Runs every check. Disagreement between (v) and (iv), or (v) holding while
/// (vi) fails, is an engine bug and surfaces as [`Error::PropertyViolation`].
pub fn classify(ctx: &SequenceContext, opts: &ClassifyOptions) -> Result<ClassificationReport> {
    let condition_v = check_as_condition_v(ctx)?;
    let (condition_iv, condition_vi) = if opts.verify {
        let iv = check_as_condition_iv(ctx)?;
        let vi = check_as_condition_vi(ctx, opts.bounds.0, opts.bounds.1)?;
        if iv.holds != condition_v.holds {
            return Err(Error::PropertyViolation(format!(
                "condition (v) says {} but condition (iv) says {}",
                condition_v.holds, iv.holds
            )));
        }
        if condition_v.holds && !vi.holds {
            return Err(Error::PropertyViolation("condition (v) holds but bounded condition (vi) fails".into()));
        }
        (Some(iv), Some(vi))
    } else {
        (None, None)
    };
    let a = opts.a.clone().unwrap_or_else(|| ctx.maximal());
    let filter_regular = check_filter_regular(ctx, &a)?;
    let weak = match check_weak(ctx, &a) {
        Ok(w) => Some(w),
        Err(Error::NotInIdeal { .. }) => None,
        Err(e) => return Err(e),
    };
    let regular = check_regular(ctx)?;
    let superficial = match opts.superficial {
        Some(w) => Some((w, check_superficial_bounded(ctx, w)?)),
        None => None,
    };
    Ok(ClassificationReport {
        as_sequence: condition_v.holds,
        condition_v,
        condition_iv,
        condition_vi,
        bounds: opts.bounds,
        a,
        filter_regular,
        weak,
        regular,
        superficial,
        homogeneous: ctx.is_homogeneous(),
    })
}
