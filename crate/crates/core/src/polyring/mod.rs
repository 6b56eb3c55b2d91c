//! Exact multivariate polynomial arithmetic over F_p.
//!
//! A [`Polynomial`] carries a shared [`PolyRing`] and a term list sorted
//! descending by the ring's monomial order, so the leading term is always
//! `terms()[0]`. Zero coefficients are never stored.

mod field;
mod monomial;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use field::{PrimeField, DEFAULT_CHARACTERISTIC};
pub use monomial::{compare_monomials, Monomial, MonomialOrder};
pub use parse::parse_poly;

use crate::error::{Error, Result};

pub type Term = (Monomial, u32);

/// The ambient ring k[x_1..x_n] together with its monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    pub fn new<S: Into<String>>(
        field: PrimeField,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidVariables(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Elimination(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidArgument(format!("elimination block {k} exceeds {} variables", vars.len())));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    /// `k[x1..xn]` over F_32003 with grevlex.
    pub fn standard(nvars: usize) -> Arc<Self> {
        Self::new(PrimeField::default(), (1..=nvars).map(|i| format!("x{i}")), MonomialOrder::Grevlex)
            .expect("standard names are valid")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::new(self.field, self.vars.iter().cloned(), order)
    }

    /// Ring with one fresh variable placed first and an elimination order for it.
    pub(crate) fn with_eliminated_var(&self) -> Arc<Self> {
        let mut name = String::from("t");
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = Vec::with_capacity(self.vars.len() + 1);
        vars.push(name);
        vars.extend(self.vars.iter().cloned());
        Arc::new(PolyRing { field: self.field, vars, order: MonomialOrder::Elimination(1) })
    }

    pub fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }

    pub fn variable(self: &Arc<Self>, i: usize) -> Polynomial {
        Polynomial::monomial(self, Monomial::var(self.nvars(), i), 1)
    }

    /// Generators of the homogeneous maximal ideal (x_1, ..., x_n).
    pub fn variables_as_polys(self: &Arc<Self>) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.variable(i)).collect()
    }

    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        parse_poly(text, self)
    }
}

/// Exact polynomial in a [`PolyRing`].
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

/// Binary operations exposed with explicit error reporting.
#[derive(Clone, Debug)]
pub enum PolyOp<'a> {
    Add(&'a Polynomial),
    Sub(&'a Polynomial),
    Mul(&'a Polynomial),
    Pow(i64),
    Scale(i64),
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field.from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let c = c % ring.field.characteristic();
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<Term>) -> Self {
        let order = ring.order;
        let field = ring.field;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            let c = c % field.characteristic();
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(*lc, c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { ring: ring.clone(), terms: out }
    }

    /// Wraps terms that are already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|t| t.1 != 0));
        Polynomial { ring: ring.clone(), terms }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_coefficient(&self) -> u32 {
        self.terms.iter().find(|(m, _)| m.is_one()).map_or(0, |t| t.1)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Highest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn monic(&self) -> Polynomial {
        let lc = self.leading_coefficient();
        if lc == 0 || lc == 1 {
            return self.clone();
        }
        let inv = self.ring.field.inv(lc).expect("nonzero");
        self.scale_raw(inv)
    }

    pub(crate) fn scale_raw(&self, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Polynomial {
        self.scale_raw(self.ring.field.from_i64(c))
    }

    /// `c * m * self`
    pub(crate) fn mul_term(&self, m: &Monomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        if c == 0 {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), f.mul(*a, c))).collect(),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    /// `self + c * other`, merging the two sorted term lists.
    pub(crate) fn add_scaled(&self, other: &Polynomial, c: u32) -> Polynomial {
        let f = self.ring.field;
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let v = f.mul(b[j].1, c);
                    if v != 0 {
                        out.push((b[j].0.clone(), v));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f.add(a[i].1, f.mul(b[j].1, c));
                    if v != 0 {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, v) in &b[j..] {
            let v = f.mul(*v, c);
            if v != 0 {
                out.push((m.clone(), v));
            }
        }
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, 1))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, self.ring.field.neg(1)))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, *c);
        }
        let f = self.ring.field;
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), f.mul(*c1, *c2)));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Evaluates one [`PolyOp`] with full operand validation.
    pub fn apply(&self, op: PolyOp<'_>) -> Result<Polynomial> {
        match op {
            PolyOp::Add(o) => self.checked_add(o),
            PolyOp::Sub(o) => self.checked_sub(o),
            PolyOp::Mul(o) => self.checked_mul(o),
            PolyOp::Pow(k) if k < 0 => Err(Error::NegativeExponent(k)),
            PolyOp::Pow(k) => {
                Ok(self.pow(u32::try_from(k).map_err(|_| Error::InvalidArgument(format!("exponent {k} too large")))?))
            }
            PolyOp::Scale(c) => Ok(self.scale(c)),
        }
    }

    /// Exact quotient `self / divisor`; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (dm, dc) = divisor.leading_term()?;
        let f = self.ring.field;
        let inv = f.inv(*dc)?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            let q = m.checked_div(dm)?;
            let qc = f.mul(*c, inv);
            rest = rest.add_scaled(&divisor.mul_term(&q, qc), f.neg(1));
            quotient.push((q, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quotient })
    }

    /// Re-expresses the polynomial in `target`, which must have the same
    /// field and variable count (typically the same ring under another order).
    pub fn to_ring(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if target.nvars() != self.ring.nvars() || target.field != self.ring.field {
            return Err(Error::MixedRings);
        }
        if PolyRing::same(target, &self.ring) {
            return Ok(self.clone());
        }
        Ok(Polynomial::from_terms(target, self.terms.clone()))
    }

    /// Embeds into a ring with one extra leading variable (exponent 0).
    pub(crate) fn lift_to(&self, target: &Arc<PolyRing>) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.ring.nvars() + 1);
        let terms = self.terms.iter().map(|(m, c)| (m.prepend_zero(), *c)).collect();
        Polynomial::from_terms(target, terms)
    }

    /// Inverse of [`Polynomial::lift_to`]; caller guarantees the leading variable is absent.
    pub(crate) fn drop_to(&self, target: &Arc<PolyRing>) -> Polynomial {
        debug_assert!(self.terms.iter().all(|(m, _)| m.exponents()[0] == 0));
        let terms = self.terms.iter().map(|(m, c)| (m.drop_first(), *c)).collect();
        Polynomial::from_terms(target, terms)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponents()[var]).max().unwrap_or(0)
    }
}

fn assert_same(a: &Polynomial, b: &Polynomial) {
    assert!(PolyRing::same(&a.ring, &b.ring), "polynomial operands belong to different rings");
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        self.add_scaled(rhs, 1)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        self.add_scaled(rhs, self.ring.field.neg(1))
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_same(self, rhs);
        self.mul_unchecked(rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale_raw(self.ring.field.neg(1))
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, vars: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let field = self.ring.field;
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let s = field.symmetric(*c);
            let mag = s.unsigned_abs();
            if k == 0 {
                if s < 0 {
                    f.write_str("-")?;
                }
            } else if s < 0 {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, m, &self.ring.vars)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
