//! Hilbert–Samuel functions `n ↦ l(M/q^{n+1}M)`, the length invariants
//! `e_0, ..., e_r` built from colon quotients, the polynomial upper bound
//! they give, multiplicity, and the bound for an auxiliary ideal `a ⊇ q`.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::module::{colength, LengthValue, PresentedModule};
use crate::polyring::{Monomial, Polynomial};
use crate::sequence::{check_as_condition_v, SequenceContext};

/// `C(n, k)` with `C(n, k) = 0` for `k < 0`, `C(n, 0) = 1` for every `n`
/// (including `n = -1`), and `C(n, k) = 0` when `0 ≤ n < k` or `n < 0 < k`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 {
        return 0;
    }
    if k == 0 {
        return 1;
    }
    if n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

fn finite(v: LengthValue, what: &str) -> Result<u64> {
    v.finite().ok_or_else(|| Error::PropertyViolation(format!("{what} has infinite length")))
}

fn require_sop(ctx: &SequenceContext) -> Result<()> {
    if ctx.is_system_of_parameters()? {
        Ok(())
    } else {
        Err(Error::NotSystemOfParameters)
    }
}

/// Carriers of `q^k M` for `k = 0..=upto`.
pub(crate) fn power_carriers(ctx: &SequenceContext, upto: usize) -> Result<Vec<Ideal>> {
    let j = ctx.module().defining_ideal();
    let mut out = vec![Ideal::unit(ctx.ring())];
    for _ in 0..upto {
        let next = out.last().unwrap().product(ctx.q())?.sum(j)?.reduced();
        out.push(next);
    }
    Ok(out)
}

/// `l(M/q^{n+1}M)`; needs a system of parameters.
pub fn hs_value(ctx: &SequenceContext, n: usize) -> Result<u64> {
    require_sop(ctx)?;
    let carriers = power_carriers(ctx, n + 1)?;
    finite(colength(&carriers[n + 1]), "M/q^{n+1}M")
}

/// `l(M/q^{n+1}M)` for `n = 0..=n_max`.
pub fn hs_values(ctx: &SequenceContext, n_max: usize) -> Result<Vec<u64>> {
    require_sop(ctx)?;
    let carriers = power_carriers(ctx, n_max + 1)?;
    carriers[1..].iter().map(|c| finite(colength(c), "M/q^{n+1}M")).collect()
}

/// The invariants `e_0(q;M), ..., e_r(q;M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EInvariants {
    pub e: Vec<i64>,
    /// `L_j = l((q_{j-1}M : a_j) / (q_{j-1}M : a_j) ∩ qM)` for `j = 1..=r`.
    pub colon_lengths: Vec<u64>,
    /// `l(M/qM)`
    pub colength: u64,
}

impl EInvariants {
    pub fn r(&self) -> usize {
        self.e.len() - 1
    }

    /// `Σ_i C(n + r - i, r - i) e_i`, the upper bound for `l(M/q^{n+1}M)`.
    pub fn bound(&self, n: usize) -> i64 {
        let r = self.r() as i64;
        (0..=r).map(|i| binomial(n as i64 + r - i, r - i) * self.e[i as usize]).sum()
    }
}

/// `l(U / U ∩ qM)` computed as `l(M/qM) - l(M/(U + qM))`, since
/// `U / (U ∩ qM) ≅ (U + qM) / qM`.
fn colon_quotient_length(u: &Ideal, q_carrier: &Ideal, q_colength: u64) -> Result<u64> {
    let joined = u.sum(q_carrier)?.reduced();
    Ok(q_colength - finite(colength(&joined), "M/(U + qM)")?)
}

/// `e_0 = l(M/qM) - L_r`, `e_i = L_{r-i+1} - L_{r-i}` for `0 < i < r`, `e_r = L_1`.
pub fn e_invariants(ctx: &SequenceContext) -> Result<EInvariants> {
    require_sop(ctx)?;
    let r = ctx.len();
    let qc = ctx.q_carrier();
    let l0 = finite(colength(qc), "M/qM")?;
    let mut lj = Vec::with_capacity(r);
    for j in 1..=r {
        let u = ctx.carrier(j - 1).colon_element(ctx.element(j))?;
        lj.push(colon_quotient_length(&u, qc, l0)?);
    }
    let big_l = |j: usize| lj[j - 1] as i64;
    let mut e = vec![0i64; r + 1];
    if r == 0 {
        e[0] = l0 as i64;
    } else {
        e[0] = l0 as i64 - big_l(r);
        for (i, ei) in e.iter_mut().enumerate().take(r).skip(1) {
            *ei = big_l(r - i + 1) - big_l(r - i);
        }
        e[r] = big_l(1);
    }
    Ok(EInvariants { e, colon_lengths: lj, colength: l0 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsRow {
    pub n: usize,
    pub lhs: u64,
    pub rhs: i64,
}

impl HsRow {
    pub fn equal(&self) -> bool {
        self.lhs as i64 == self.rhs
    }
}

#[derive(Clone, Debug)]
pub struct HsBoundReport {
    pub e: EInvariants,
    pub rows: Vec<HsRow>,
    pub bound_holds: bool,
    pub equality_all_n: bool,
    /// Verdict of condition (v), for comparison with `equality_all_n`.
    pub as_sequence: bool,
    /// Equality on the whole window disagrees with the a.s. verdict; equality
    /// is only promised on an infinite set of `n`, so the window may be too small.
    pub window_mismatch: bool,
}

/// Tabulates `l(M/q^{n+1}M)` against `Σ C(n+r-i, r-i) e_i` for `n = 0..=n_max`.
/// A value above the bound is reported as [`Error::PropertyViolation`].
pub fn verify_hs_bound(ctx: &SequenceContext, n_max: usize) -> Result<HsBoundReport> {
    let e = e_invariants(ctx)?;
    let values = hs_values(ctx, n_max)?;
    let rows: Vec<HsRow> = values.iter().enumerate().map(|(n, &lhs)| HsRow { n, lhs, rhs: e.bound(n) }).collect();
    if let Some(bad) = rows.iter().find(|row| row.lhs as i64 > row.rhs) {
        return Err(Error::PropertyViolation(format!(
            "l(M/q^{}M) = {} exceeds the bound {} (e = {:?})",
            bad.n + 1,
            bad.lhs,
            bad.rhs,
            e.e
        )));
    }
    let equality_all_n = rows.iter().all(HsRow::equal);
    let as_sequence = check_as_condition_v(ctx)?.holds;
    Ok(HsBoundReport {
        e,
        rows,
        bound_holds: true,
        equality_all_n,
        as_sequence,
        window_mismatch: equality_all_n != as_sequence,
    })
}

/// `Δ^r l(M/q^{n+1}M)` once it is constant on a tail of at least `window`
/// consecutive `n`, tabulating up to `n = cap`.
pub fn multiplicity(ctx: &SequenceContext, window: usize, cap: usize) -> Result<u64> {
    require_sop(ctx)?;
    let window = window.max(1);
    let r = ctx.len();
    let values: Vec<i64> = hs_values(ctx, cap)?.into_iter().map(|v| v as i64).collect();
    let mut diffs = values;
    for _ in 0..r {
        diffs = diffs.iter().tuple_windows().map(|(a, b)| b - a).collect();
    }
    // the run must reach the end of the table, so an early coincidence cannot pass
    for start in 0..diffs.len().saturating_sub(window - 1) {
        let run = &diffs[start..];
        if run.iter().all_equal() {
            return u64::try_from(run[0])
                .map_err(|_| Error::PropertyViolation(format!("negative multiplicity {}", run[0])));
        }
    }
    Err(Error::NoStabilization { cap })
}

/// Default tabulation cap for [`multiplicity`].
pub const DEFAULT_MULTIPLICITY_CAP: usize = 12;

#[derive(Clone, Debug)]
pub struct AuxBoundReport {
    pub e: EInvariants,
    pub rows: Vec<HsRow>,
    pub bound_holds: bool,
    pub equality_all_n: bool,
    /// `q^n a M = a^{n+1} M` for some `1 ≤ n ≤ n_max`; the least such `n`.
    pub condition_i: Option<usize>,
    /// The sequence is absolutely superficial.
    pub condition_ii: bool,
    /// `(a_σ1..a_σ(r-1))M : a_σr ⊆ aM + (0 :_M m^∞)` for every permutation σ.
    pub condition_iii: bool,
}

/// Compares `l(M/a^{n+1}M)` with
/// `Σ C(n+r-i-1, r-i) e_i + C(n+r-1, r-1) l(M/(aM + (0 :_M q^n)))` for
/// `n = 0..=n_max`. Needs a system of parameters inside `a` with `l(M/aM)` finite.
pub fn verify_aux_bound(ctx: &SequenceContext, a: &Ideal, n_max: usize) -> Result<AuxBoundReport> {
    let j = ctx.module().defining_ideal();
    let a_carrier = ctx.carrier_of(a)?;
    if !a_carrier.contains(ctx.q())? {
        return Err(Error::Precondition(format!("q = {} is not contained in a = {a}", ctx.q())));
    }
    if !colength(&a_carrier).is_finite() {
        return Err(Error::Precondition(format!("M/aM has infinite length for a = {a}")));
    }
    let e = e_invariants(ctx)?;
    let r = ctx.len() as i64;

    let chain = j.saturation_chain(ctx.q())?;
    let annihilator = |n: usize| chain[n.min(chain.len() - 1)].clone();

    let mut a_powers = vec![Ideal::unit(ctx.ring())];
    for _ in 0..=n_max {
        let next = a_powers.last().unwrap().product(a)?.sum(j)?.reduced();
        a_powers.push(next);
    }
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let lhs = finite(colength(&a_powers[n + 1]), "M/a^{n+1}M")?;
        let ni = n as i64;
        let head: i64 = (0..=r).map(|i| binomial(ni + r - i - 1, r - i) * e.e[i as usize]).sum();
        let extra = finite(colength(&a_carrier.sum(&annihilator(n))?), "M/(aM + 0:q^n)")? as i64;
        rows.push(HsRow { n, lhs, rhs: head + binomial(ni + r - 1, r - 1) * extra });
    }
    if let Some(bad) = rows.iter().find(|row| row.lhs as i64 > row.rhs) {
        return Err(Error::PropertyViolation(format!(
            "l(M/a^{}M) = {} exceeds the auxiliary-ideal bound {}",
            bad.n + 1,
            bad.lhs,
            bad.rhs
        )));
    }
    let equality_all_n = rows.iter().all(HsRow::equal);

    let q_carriers = power_carriers(ctx, n_max)?;
    let mut condition_i = None;
    for n in 1..=n_max {
        let lhs = q_carriers[n].product(a)?.sum(j)?;
        if lhs.equals(&a_powers[n + 1]) {
            condition_i = Some(n);
            break;
        }
    }
    let condition_ii = check_as_condition_v(ctx)?.holds;
    let (sat_m, _) = j.saturate(&ctx.maximal())?;
    let target = a_carrier.sum(&sat_m)?.reduced();
    let mut condition_iii = true;
    if r > 0 {
        for perm in (0..ctx.len()).permutations(ctx.len()) {
            let (last, head) = perm.split_last().unwrap();
            let gens: Vec<_> = head.iter().map(|&k| ctx.elements()[k].clone()).collect();
            let p = ctx.carrier_of(&Ideal::new(ctx.ring(), gens)?)?;
            if !target.contains(&p.colon_element(&ctx.elements()[*last])?)? {
                condition_iii = false;
                break;
            }
        }
    }
    Ok(AuxBoundReport { e, rows, bound_holds: true, equality_all_n, condition_i, condition_ii, condition_iii })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleKind {
    /// Products of variables of degree 1 or 2.
    Monomial,
    /// Linear forms with random coefficients.
    Linear,
}

#[derive(Clone, Debug)]
pub struct SopSample {
    pub elements: Vec<Polynomial>,
    /// `l(M/qM)`
    pub colength: u64,
    /// `e(q; M)`
    pub multiplicity: u64,
    pub as_sequence: bool,
}

impl SopSample {
    /// `l(M/qM) - e(q;M)`, constant over all systems of parameters exactly when `M` is Buchsbaum.
    pub fn defect(&self) -> u64 {
        self.colength - self.multiplicity
    }
}

/// Draws up to `count` random systems of parameters of `module`, trying at most
/// `attempts` candidates. Samples whose multiplicity does not stabilize within
/// the default cap are skipped.
pub fn sample_parameter_systems(
    module: &PresentedModule,
    kind: SampleKind,
    count: usize,
    seed: u64,
    attempts: usize,
) -> Result<Vec<SopSample>> {
    let dim = module.krull_dim()?;
    if dim == 0 {
        return Err(Error::InvalidArgument("M has finite length; its only system of parameters is empty".into()));
    }
    let ring = module.ring().clone();
    let n = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..attempts {
        if out.len() == count {
            break;
        }
        let elements: Vec<Polynomial> = (0..dim)
            .map(|_| match kind {
                SampleKind::Monomial => {
                    let mut e = vec![0u32; n];
                    for _ in 0..rng.gen_range(1..=2) {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    Polynomial::monomial(&ring, Monomial::new(e), 1)
                }
                SampleKind::Linear => {
                    let terms = (0..n).map(|i| (Monomial::var(n, i), rng.gen_range(0..7u32))).collect();
                    Polynomial::from_terms(&ring, terms)
                }
            })
            .collect();
        if elements.iter().any(Polynomial::is_zero) {
            continue;
        }
        let ctx = SequenceContext::new(module.clone(), elements)?;
        if !ctx.is_system_of_parameters()? {
            continue;
        }
        let multiplicity = match multiplicity(&ctx, 3, DEFAULT_MULTIPLICITY_CAP) {
            Ok(e) => e,
            Err(Error::NoStabilization { .. }) => continue,
            Err(e) => return Err(e),
        };
        let colength = hs_value(&ctx, 0)?;
        let as_sequence = check_as_condition_v(&ctx)?.holds;
        out.push(SopSample { elements: ctx.elements().to_vec(), colength, multiplicity, as_sequence });
    }
    Ok(out)
}
