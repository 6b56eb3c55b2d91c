//! Ideal arithmetic in the ambient polynomial ring: sums, products, powers,
//! intersections, colons and saturation.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{groebner_basis, GroebnerBasis};
use crate::polyring::{Monomial, PolyRing, Polynomial};

/// An ideal given by generators, with its reduced Gröbner basis computed on
/// first use (in the ring's own order) and cached.
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb: self.gb.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Equal,
    /// `I contains J`, i.e. `J ⊆ I`.
    Contains,
}

/// The right-hand side of a colon `I : by`.
#[derive(Clone, Debug)]
pub enum Divisor {
    Element(Polynomial),
    Ideal(Ideal),
}

impl From<Polynomial> for Divisor {
    fn from(p: Polynomial) -> Self {
        Divisor::Element(p)
    }
}

impl From<Ideal> for Divisor {
    fn from(i: Ideal) -> Self {
        Divisor::Ideal(i)
    }
}

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !PolyRing::same(g.ring(), ring) {
                return Err(Error::MixedRings);
            }
        }
        Ok(Self::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Ideal {
        let mut kept: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ideal { ring: ring.clone(), gens: kept, gb: OnceLock::new() }
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Self::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Self::from_gens(ring, vec![Polynomial::one(ring)])
    }

    /// The homogeneous maximal ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Ideal {
        Self::from_gens(ring, ring.variables_as_polys())
    }

    pub fn parse(ring: &Arc<PolyRing>, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(ring, polys))
    }

    pub fn from_monomials(ring: &Arc<PolyRing>, monos: &[Monomial]) -> Ideal {
        Self::from_gens(ring, monos.iter().map(|m| Polynomial::monomial(ring, m.clone(), 1)).collect())
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn gb(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| groebner_basis(&self.ring, &self.gens).expect("generators share the ring"))
    }

    /// The same ideal presented by its reduced Gröbner basis.
    pub fn reduced(&self) -> Ideal {
        let gb = self.gb().clone();
        Ideal { ring: self.ring.clone(), gens: gb.elements().to_vec(), gb: OnceLock::from(gb) }
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit_ideal()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    /// True when the ideal is generated by monomials.
    pub fn is_monomial(&self) -> bool {
        self.gb().elements().iter().all(Polynomial::is_monomial)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb().leading_monomials()
    }

    pub fn contains_element(&self, f: &Polynomial) -> Result<bool> {
        self.gb().contains(f)
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_gens(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(f * g);
            }
        }
        Ok(Self::from_gens(&self.ring, gens))
    }

    /// `I^k`, with `I^0` the unit ideal. Intermediate powers are re-presented
    /// by their reduced bases to keep generator counts small.
    pub fn power(&self, k: i64) -> Result<Ideal> {
        if k < 0 {
            return Err(Error::NegativeExponent(k));
        }
        let mut acc = Ideal::unit(&self.ring);
        let base = self.reduced();
        for _ in 0..k {
            acc = acc.product(&base)?.reduced();
        }
        Ok(acc)
    }

    pub fn combine(&self, op: IdealOp, other: &Ideal) -> Result<Ideal> {
        match op {
            IdealOp::Sum => self.sum(other),
            IdealOp::Product => self.product(other),
        }
    }

    /// `I ∩ J`, eliminating `t` from `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let ext = self.ring.with_eliminated_var();
        let n = ext.nvars();
        let t = Polynomial::monomial(&ext, Monomial::var(n, 0), 1);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::with_capacity(self.gens.len() + other.gens.len());
        for f in self.gb().elements() {
            gens.push(&t * &f.lift_to(&ext));
        }
        for g in other.gb().elements() {
            gens.push(&one_minus_t * &g.lift_to(&ext));
        }
        let gb = groebner_basis(&ext, &gens)?;
        let eliminated: Vec<Polynomial> =
            gb.elements().iter().filter(|p| p.degree_in(0) == 0).map(|p| p.drop_to(&self.ring)).collect();
        Ok(Self::from_gens(&self.ring, eliminated))
    }

    /// `I : f = (I ∩ (f)) / f`.
    pub fn colon_element(&self, f: &Polynomial) -> Result<Ideal> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(Error::MixedRings);
        }
        if f.is_zero() {
            return Err(Error::ColonByZero);
        }
        if self.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        if self.contains_element(f)? {
            return Ok(Ideal::unit(&self.ring));
        }
        let principal = Self::from_gens(&self.ring, vec![f.clone()]);
        let meet = self.intersect(&principal)?;
        let quotients = meet
            .gens
            .iter()
            .map(|g| {
                g.exact_div(f).ok_or_else(|| {
                    Error::PropertyViolation(format!("intersection generator {g} is not divisible by {f}"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_gens(&self.ring, quotients).reduced())
    }

    /// `I : J = ∩_j (I : f_j)` over the generators of `J`.
    pub fn colon_ideal(&self, by: &Ideal) -> Result<Ideal> {
        self.check_ring(by)?;
        if by.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc: Option<Ideal> = None;
        for f in by.gb().elements() {
            let c = self.colon_element(f)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?.reduced(),
            });
            if acc.as_ref().is_some_and(|a| a.equals(self)) {
                // I ⊆ I : J ⊆ I : f_j, so the meet cannot shrink below I
                break;
            }
        }
        Ok(acc.expect("nonzero divisor has a generator"))
    }

    pub fn colon(&self, by: &Divisor) -> Result<Ideal> {
        match by {
            Divisor::Element(f) => self.colon_element(f),
            Divisor::Ideal(j) => self.colon_ideal(j),
        }
    }

    /// The chain `I, I:J, (I:J):J, ...` up to its stable value. Returns the
    /// saturation `I : J^∞` and the least `m ≥ 1` with `I : J^m = I : J^∞`.
    pub fn saturate(&self, by: &Ideal) -> Result<(Ideal, usize)> {
        let chain = self.saturation_chain(by)?;
        let index = chain.len() - 1;
        Ok((chain.into_iter().last().unwrap(), index.max(1)))
    }

    /// `[I, I:J, I:J^2, ..., I:J^∞]`, ending at the first repeated value.
    pub fn saturation_chain(&self, by: &Ideal) -> Result<Vec<Ideal>> {
        self.check_ring(by)?;
        if by.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut chain = vec![self.reduced()];
        loop {
            let next = chain.last().unwrap().colon_ideal(by)?;
            if next.equals(chain.last().unwrap()) {
                return Ok(chain);
            }
            chain.push(next);
        }
    }

    /// `J ⊆ self`
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let gb = self.gb();
        for g in &other.gens {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality via identical reduced Gröbner bases.
    pub fn equals(&self, other: &Ideal) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.gb().elements() == other.gb().elements()
    }

    pub fn compare(&self, rel: Relation, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        match rel {
            Relation::Equal => Ok(self.equals(other)),
            Relation::Contains => self.contains(other),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

/// Prints the generators as `(g1, g2, ...)`.
impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}
