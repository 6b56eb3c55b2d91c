//! Independence of sequences, the comparison of the Rees module with the
//! symmetric module, and slices of associated graded modules.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::hilbert::binomial;
use crate::ideal::Ideal;
use crate::linalg::{kernel, Echelon};
use crate::module::{colength, relative_length, LengthValue, Submodule, DEFAULT_TRUNCATION_DEGREE};
use crate::polyring::{Monomial, Polynomial};
use crate::sequence::{check_as_condition_v, SequenceContext};

/// Largest sequence length for which all permutations are enumerated.
pub const MAX_PERMUTED_LENGTH: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndependenceMode {
    /// Every permuted colon `(a_σ1..a_σ(r-1))M : a_σr` lies in `N`.
    Colon,
    /// `l(q^nM / q^nN) = C(n+r-1, r-1) l(M/N)`.
    Length,
}

#[derive(Clone, Debug)]
pub struct IndependenceReport {
    pub holds: bool,
    /// Colon mode: the first permutation (0-based indices) whose colon escapes `N`.
    pub failing_permutation: Option<Vec<usize>>,
    /// Length mode: `(l(q^nM/q^nN), C(n+r-1, r-1) l(M/N))`.
    pub lengths: Option<(LengthValue, LengthValue)>,
}

/// `N`-independence of an absolutely superficial sequence, by permuted colons or by lengths.
pub fn check_independence(
    ctx: &SequenceContext,
    n_sub: &Submodule,
    mode: IndependenceMode,
    n: usize,
) -> Result<IndependenceReport> {
    if n_sub.carrier().is_unit() {
        return Err(Error::InvalidArgument("N must be a proper submodule".into()));
    }
    if !check_as_condition_v(ctx)?.holds {
        return Err(Error::Precondition("the sequence is not absolutely superficial".into()));
    }
    if ctx.len() > MAX_PERMUTED_LENGTH {
        return Err(Error::InvalidArgument(format!("sequences longer than {MAX_PERMUTED_LENGTH} are not supported")));
    }
    match mode {
        IndependenceMode::Colon => {
            for perm in (0..ctx.len()).permutations(ctx.len()) {
                let (last, head) = perm.split_last().unwrap();
                let gens: Vec<Polynomial> = head.iter().map(|&k| ctx.elements()[k].clone()).collect();
                let p = ctx.carrier_of(&Ideal::new(ctx.ring(), gens)?)?;
                let colon = p.colon_element(&ctx.elements()[*last])?;
                if !n_sub.carrier().contains(&colon)? {
                    return Ok(IndependenceReport { holds: false, failing_permutation: Some(perm), lengths: None });
                }
            }
            Ok(IndependenceReport { holds: true, failing_permutation: None, lengths: None })
        }
        IndependenceMode::Length => {
            if !ctx.is_system_of_parameters()? {
                return Err(Error::NotSystemOfParameters);
            }
            let j = ctx.module().defining_ideal();
            let qn = ctx.q().power(n as i64)?;
            let upper = qn.sum(j)?.reduced();
            let lower = qn.product(n_sub.carrier())?.sum(j)?.reduced();
            let lhs = relative_length(&upper, &lower, DEFAULT_TRUNCATION_DEGREE);
            let r = ctx.len() as i64;
            let rhs = match colength(n_sub.carrier()) {
                LengthValue::Finite(l) => LengthValue::Finite(binomial(n as i64 + r - 1, r - 1) as u64 * l),
                LengthValue::Infinite => LengthValue::Infinite,
            };
            let holds = lhs.is_finite() && lhs == rhs;
            Ok(IndependenceReport { holds, failing_permutation: None, lengths: Some((lhs, rhs)) })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRow {
    pub n: usize,
    /// `l((q^n + q_i)M / (q^{n+1} + q_i)M)`
    pub quotient_slice: u64,
    /// `l(q^nM / (q^{n+1} + q_i q^{n-1})M)`
    pub graded_quotient: u64,
}

#[derive(Clone, Debug)]
pub struct AssocGradedReport {
    pub i: usize,
    pub rows: Vec<GradedRow>,
    pub holds: bool,
}

/// Compares, degree by degree, `G_q(M/q_iM)` with `G_q(M)/q_iG_q(M)`.
/// Requires an absolutely superficial system of parameters unless `force`.
pub fn verify_assoc_graded(ctx: &SequenceContext, i: usize, n_max: usize, force: bool) -> Result<AssocGradedReport> {
    if i == 0 || i > ctx.len() {
        return Err(Error::InvalidArgument(format!("index {i} outside 1..={}", ctx.len())));
    }
    if !ctx.is_system_of_parameters()? {
        return Err(Error::NotSystemOfParameters);
    }
    if !force && !check_as_condition_v(ctx)?.holds {
        return Err(Error::Precondition(
            "the sequence is not absolutely superficial (use force to compare anyway)".into(),
        ));
    }
    let j = ctx.module().defining_ideal();
    let qi = ctx.prefix(i);
    let mut powers = vec![Ideal::unit(ctx.ring())];
    for _ in 0..=n_max {
        powers.push(powers.last().unwrap().product(ctx.q())?.reduced());
    }
    let col = |ideal: &Ideal| -> Result<u64> {
        colength(&ideal.sum(j)?.reduced())
            .finite()
            .ok_or_else(|| Error::PropertyViolation("slice of an m-primary filtration has infinite length".into()))
    };
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let quotient_slice = col(&powers[n + 1].sum(qi)?)? - col(&powers[n].sum(qi)?)?;
        let twisted = if n == 0 { qi.clone() } else { qi.product(&powers[n - 1])? };
        let graded_quotient = col(&powers[n + 1].sum(&twisted)?)? - col(&powers[n])?;
        rows.push(GradedRow { n, quotient_slice, graded_quotient });
    }
    let holds = rows.iter().all(|r| r.quotient_slice == r.graded_quotient);
    Ok(AssocGradedReport { i, rows, holds })
}

#[derive(Clone, Debug)]
pub struct ReesReport {
    pub holds: bool,
    pub d_max: u32,
    /// Truncation: coefficients of degree below `k` are inspected.
    pub k: u32,
    pub first_failing_degree: Option<u32>,
    /// A vanishing form of the failing degree not generated by linear ones.
    pub witness: Option<String>,
    /// The verdict at `k + 2` matched the verdict at `k`.
    pub stable: bool,
}

/// Default truncation bound `d_max · max deg a_i + 4`.
pub fn default_truncation(ctx: &SequenceContext, d_max: u32) -> u32 {
    let top = ctx.elements().iter().filter_map(Polynomial::total_degree).max().unwrap_or(0) as u32;
    d_max * top + 4
}

/// Checks, for `d = 2..=d_max`, that every form of degree `d` in `M[T_1..T_r]`
/// vanishing at `(a_1, ..., a_r)` is generated by the vanishing linear forms.
/// Forms are compared weight by weight, where `x^γ T^α` has weight
/// `|γ| + deg a^α`; for degree `d` every weight whose coefficients have degree
/// below `k` is inspected exactly. The run is repeated at `k + 2` and both
/// verdicts must agree for a pass.
pub fn verify_rees_sym(ctx: &SequenceContext, d_max: u32, k: Option<u32>) -> Result<ReesReport> {
    if ctx.module().is_zero() {
        return Err(Error::ZeroModule);
    }
    if !ctx.is_homogeneous() {
        return Err(Error::NonHomogeneous("the Rees/symmetric comparison needs homogeneous input".into()));
    }
    if d_max < 2 {
        return Err(Error::InvalidArgument("d_max must be at least 2".into()));
    }
    if ctx.is_empty() {
        return Err(Error::InvalidArgument("empty sequence".into()));
    }
    let top = ctx.elements().iter().filter_map(Polynomial::total_degree).max().unwrap_or(0) as u32;
    let k = k.unwrap_or_else(|| default_truncation(ctx, d_max));
    if k <= d_max * top {
        return Err(Error::InvalidArgument(format!(
            "truncation {k} must exceed d_max · max deg a_i = {}",
            d_max * top
        )));
    }
    let mut engine = RelationEngine::new(ctx);
    let first = engine.run(d_max, k);
    let second = engine.run(d_max, k + 2);
    let stable = first.is_none() == second.is_none();
    let failure = first.or(second);
    Ok(ReesReport {
        holds: failure.is_none() && stable,
        d_max,
        k,
        first_failing_degree: failure.as_ref().map(|f| f.0),
        witness: failure.map(|f| f.1),
        stable,
    })
}

/// Exponent vectors `α` paired with a monomial basis of `M_{w - deg a^α}`.
type Layout = Vec<(Vec<u32>, Vec<Monomial>)>;

/// Degreewise linear algebra for vanishing forms.
struct RelationEngine<'a> {
    ctx: &'a SequenceContext,
    gb: GroebnerBasis,
    lead: Vec<Monomial>,
    degrees: Vec<u32>,
    basis_cache: HashMap<u32, Vec<Monomial>>,
    linear_cache: HashMap<u32, Vec<Vec<Polynomial>>>,
}

fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    (0..nvars)
        .combinations_with_replacement(degree as usize)
        .map(|vars| {
            let mut e = vec![0u32; nvars];
            for v in vars {
                e[v] += 1;
            }
            Monomial::new(e)
        })
        .collect()
}

/// Exponent vectors of length `r` summing to `d`, in descending lex order.
fn multi_indices(r: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = (0..r)
        .combinations_with_replacement(d as usize)
        .map(|idx| {
            let mut e = vec![0u32; r];
            for i in idx {
                e[i] += 1;
            }
            e
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

impl<'a> RelationEngine<'a> {
    fn new(ctx: &'a SequenceContext) -> Self {
        let gb = ctx.module().defining_ideal().gb().clone();
        let lead = gb.leading_monomials();
        let degrees = ctx.elements().iter().map(|a| a.total_degree().unwrap_or(0) as u32).collect();
        RelationEngine { ctx, gb, lead, degrees, basis_cache: HashMap::new(), linear_cache: HashMap::new() }
    }

    /// Standard monomials of degree `w`: a basis of `M_w`.
    fn basis(&mut self, w: u32) -> Vec<Monomial> {
        let nvars = self.ctx.ring().nvars();
        let lead = &self.lead;
        self.basis_cache
            .entry(w)
            .or_insert_with(|| {
                monomials_of_degree(nvars, w).into_iter().filter(|m| !lead.iter().any(|l| l.divides(m))).collect()
            })
            .clone()
    }

    fn alpha_degree(&self, alpha: &[u32]) -> u32 {
        alpha.iter().zip(&self.degrees).map(|(a, d)| a * d).sum()
    }

    fn a_power(&self, alpha: &[u32]) -> Polynomial {
        let ring = self.ctx.ring();
        alpha.iter().enumerate().fold(Polynomial::one(ring), |acc, (i, &e)| &acc * &self.ctx.element(i + 1).pow(e))
    }

    /// Coordinates of the normal form of `f` (homogeneous of degree `w`) in the basis of `M_w`.
    fn coords(&mut self, f: &Polynomial, w: u32) -> Vec<u32> {
        let basis = self.basis(w);
        let nf = self.gb.normal_form(f).expect("same ring");
        let mut v = vec![0u32; basis.len()];
        for (m, c) in nf.terms() {
            let pos = basis.iter().position(|b| b == m).expect("normal form is standard");
            v[pos] = *c;
        }
        v
    }

    /// Layout of the domain `⊕_α M_{w - deg a^α}`: (alpha, coefficient basis).
    fn layout(&mut self, d: u32, w: u32) -> Layout {
        let mut out = Vec::new();
        for alpha in multi_indices(self.ctx.len(), d) {
            let da = self.alpha_degree(&alpha);
            if da <= w {
                let b = self.basis(w - da);
                out.push((alpha, b));
            }
        }
        out
    }

    /// Kernel of `⊕_α M_{w - deg a^α} → M_w`, each element given as coefficient polynomials per alpha.
    fn vanishing_forms(&mut self, d: u32, w: u32) -> (Layout, Vec<Vec<u32>>) {
        let layout = self.layout(d, w);
        let ncols: usize = layout.iter().map(|(_, b)| b.len()).sum();
        let target = self.basis(w).len();
        let mut columns: Vec<Vec<u32>> = Vec::with_capacity(ncols);
        let ring = self.ctx.ring().clone();
        for (alpha, b) in &layout {
            let ap = self.a_power(alpha);
            for m in b {
                let f = &Polynomial::monomial(&ring, m.clone(), 1) * &ap;
                columns.push(self.coords(&f, w));
            }
        }
        let rows: Vec<Vec<u32>> = (0..target).map(|t| columns.iter().map(|c| c[t]).collect()).collect();
        let ker = kernel(ring.field(), &rows, ncols);
        (layout, ker)
    }

    /// Vanishing linear forms of weight `w`, each as `r` coefficient polynomials.
    fn linear_forms(&mut self, w: u32) -> Vec<Vec<Polynomial>> {
        if let Some(v) = self.linear_cache.get(&w) {
            return v.clone();
        }
        let (layout, ker) = self.vanishing_forms(1, w);
        let forms: Vec<Vec<Polynomial>> = ker.iter().map(|v| self.to_coefficients(&layout, v)).collect();
        self.linear_cache.insert(w, forms.clone());
        forms
    }

    /// Splits a domain vector into one coefficient polynomial per variable `T_i`
    /// (only for linear layouts) or per alpha in `layout` order.
    fn to_coefficients(&self, layout: &[(Vec<u32>, Vec<Monomial>)], v: &[u32]) -> Vec<Polynomial> {
        let ring = self.ctx.ring();
        let mut out = Vec::with_capacity(layout.len());
        let mut pos = 0;
        let r = self.ctx.len();
        let linear = layout.iter().all(|(a, _)| a.iter().sum::<u32>() == 1);
        let mut by_var = vec![Polynomial::zero(ring); r];
        for (alpha, b) in layout {
            let terms: Vec<(Monomial, u32)> =
                b.iter().zip(&v[pos..pos + b.len()]).filter(|(_, &c)| c != 0).map(|(m, &c)| (m.clone(), c)).collect();
            pos += b.len();
            let p = Polynomial::from_terms(ring, terms);
            if linear {
                let i = alpha.iter().position(|&e| e == 1).unwrap();
                by_var[i] = p;
            } else {
                out.push(p);
            }
        }
        if linear {
            by_var
        } else {
            out
        }
    }

    /// Returns `(d, witness)` for the first degree with a vanishing form outside the linear span.
    fn run(&mut self, d_max: u32, k: u32) -> Option<(u32, String)> {
        let min_deg = *self.degrees.iter().min().unwrap();
        for d in 2..=d_max {
            let lo = d * min_deg;
            for w in lo..lo + k {
                if let Some(wit) = self.check_weight(d, w) {
                    return Some((d, wit));
                }
            }
        }
        None
    }

    fn check_weight(&mut self, d: u32, w: u32) -> Option<String> {
        let (layout, ker) = self.vanishing_forms(d, w);
        if ker.is_empty() {
            return None;
        }
        let ring = self.ctx.ring().clone();
        let field = ring.field();
        let ncols: usize = layout.iter().map(|(_, b)| b.len()).sum();
        let offsets: HashMap<Vec<u32>, usize> = {
            let mut acc = 0;
            layout
                .iter()
                .map(|(a, b)| {
                    let o = acc;
                    acc += b.len();
                    (a.clone(), o)
                })
                .collect()
        };
        let mut image = Echelon::new(field, ncols);
        let r = self.ctx.len();
        let min_deg = *self.degrees.iter().min().unwrap();
        'outer: for beta in multi_indices(r, d - 1) {
            let db = self.alpha_degree(&beta);
            if db > w {
                continue;
            }
            let w1 = w - db;
            for wl in min_deg..=w1 {
                let forms = self.linear_forms(wl);
                if forms.is_empty() {
                    continue;
                }
                for gamma in monomials_of_degree(ring.nvars(), w1 - wl) {
                    let g = Polynomial::monomial(&ring, gamma, 1);
                    for form in &forms {
                        let mut v = vec![0u32; ncols];
                        for (i, li) in form.iter().enumerate() {
                            if li.is_zero() {
                                continue;
                            }
                            let mut alpha = beta.clone();
                            alpha[i] += 1;
                            let coeff_degree = w - self.alpha_degree(&alpha);
                            let block = self.coords(&(&g * li), coeff_degree);
                            let o = offsets[&alpha];
                            v[o..o + block.len()].copy_from_slice(&block);
                        }
                        image.insert(&v);
                        if image.rank() == ker.len() {
                            break 'outer;
                        }
                    }
                }
            }
        }
        if image.rank() == ker.len() {
            return None;
        }
        let missing = ker.iter().find(|v| !image.contains(v)).expect("kernel exceeds image");
        Some(self.render(&layout, missing))
    }

    fn render(&self, layout: &[(Vec<u32>, Vec<Monomial>)], v: &[u32]) -> String {
        let ring = self.ctx.ring();
        let field = ring.field();
        let coeffs = self.to_coefficients(layout, v);
        let lead = coeffs.iter().find(|p| !p.is_zero()).map(|p| p.leading_coefficient()).unwrap_or(1);
        let scale = field.inv(lead).unwrap();
        let mut out = String::new();
        for ((alpha, _), c) in layout.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            let c = c.scale_raw(scale);
            let t = render_t(alpha);
            if c.is_constant() {
                let s = field.symmetric(c.constant_coefficient());
                let (sign, mag) = if s < 0 { ("-", -s) } else { ("+", s) };
                if out.is_empty() {
                    if sign == "-" {
                        out.push('-');
                    }
                } else {
                    out.push_str(&format!(" {sign} "));
                }
                if mag != 1 {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&t);
            } else {
                if !out.is_empty() {
                    out.push_str(" + ");
                }
                out.push_str(&format!("({c})*{t}"));
            }
        }
        out
    }
}

fn render_t(alpha: &[u32]) -> String {
    alpha
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { format!("T{}", i + 1) } else { format!("T{}^{e}", i + 1) })
        .join("*")
}
