//! Cyclic modules `M = S/J`, their submodules (ideals containing `J`),
//! lengths of subquotients and Krull dimension.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Divisor, Ideal};
use crate::polyring::{Monomial, PolyRing, Polynomial};

/// Degree bound for the degreewise length of `U/V` when both colengths are infinite.
pub const DEFAULT_TRUNCATION_DEGREE: u32 = 20;

/// A k-length: a non-negative integer or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LengthValue {
    Finite(u64),
    Infinite,
}

impl LengthValue {
    pub fn is_finite(self) -> bool {
        matches!(self, LengthValue::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            LengthValue::Finite(v) => Some(v),
            LengthValue::Infinite => None,
        }
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LengthValue::Finite(v) => write!(f, "{v}"),
            LengthValue::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for LengthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            LengthValue::Finite(v) => s.serialize_u64(*v),
            LengthValue::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for LengthValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(LengthValue::Finite(v)),
            Raw::Text(t) if t == "infinite" => Ok(LengthValue::Infinite),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad length `{t}`"))),
        }
    }
}

/// Standard monomials of degree `0..=max_degree` with respect to the monomial
/// ideal generated by `lead`, counted per degree. Stops early once a degree
/// has none (then no higher degree has any either).
pub(crate) fn standard_monomial_counts(lead: &[Monomial], nvars: usize, max_degree: Option<u32>) -> Vec<u64> {
    let divisible = |m: &Monomial| lead.iter().any(|l| l.divides(m));
    let one = Monomial::one(nvars);
    if divisible(&one) {
        return vec![0];
    }
    let mut counts = vec![1u64];
    let mut layer = vec![one];
    let mut degree = 0u32;
    while !layer.is_empty() && max_degree.is_none_or(|d| degree < d) {
        let mut next = Vec::new();
        for m in &layer {
            // extend only by variables at or after the last one used, so every
            // monomial is produced once
            let last = m.exponents().iter().rposition(|&e| e > 0).unwrap_or(0);
            for i in last..nvars {
                let c = m.mul(&Monomial::var(nvars, i));
                if !divisible(&c) {
                    next.push(c);
                }
            }
        }
        degree += 1;
        if next.is_empty() {
            break;
        }
        counts.push(next.len() as u64);
        layer = next;
    }
    counts
}

/// True when the monomial ideal generated by `lead` contains a pure power of every variable.
pub(crate) fn is_zero_dimensional(lead: &[Monomial], nvars: usize) -> bool {
    (0..nvars).all(|i| lead.iter().any(|l| l.support().all(|j| j == i)))
}

/// `dim_k S/I`, counted as standard monomials of the reduced Gröbner basis.
pub fn colength(ideal: &Ideal) -> LengthValue {
    let lead = ideal.leading_monomials();
    let n = ideal.ring().nvars();
    if !is_zero_dimensional(&lead, n) {
        return LengthValue::Infinite;
    }
    LengthValue::Finite(standard_monomial_counts(&lead, n, None).iter().sum())
}

/// `dim_k (S/I)_d` for `d = 0..=max_degree`. Meaningful for homogeneous `I`.
pub fn hilbert_function(ideal: &Ideal, max_degree: u32) -> Vec<u64> {
    let lead = ideal.leading_monomials();
    let mut counts = standard_monomial_counts(&lead, ideal.ring().nvars(), Some(max_degree));
    counts.resize(max_degree as usize + 1, 0);
    counts
}

/// Largest set of variables no leading monomial of `lead` is supported on.
pub(crate) fn independent_set_dimension(lead: &[Monomial], nvars: usize) -> usize {
    let supports: Vec<u64> = lead.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for set in 0u64..(1u64 << nvars) {
        let size = set.count_ones() as usize;
        if size > best && supports.iter().all(|&s| s & !set != 0) {
            best = size;
        }
    }
    best
}

/// The cyclic module `S/J`.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: Arc<PolyRing>,
    defining: Ideal,
    homogeneous: bool,
}

/// A submodule of `S/J`, stored as its preimage `U ⊇ J` in `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    carrier: Ideal,
}

impl Submodule {
    pub fn carrier(&self) -> &Ideal {
        &self.carrier
    }
}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)
    }
}

impl PresentedModule {
    pub fn new(defining: Ideal) -> Self {
        let homogeneous = defining.is_homogeneous();
        PresentedModule { ring: defining.ring().clone(), defining: defining.reduced(), homogeneous }
    }

    /// The free module `S` itself.
    pub fn free(ring: &Arc<PolyRing>) -> Self {
        Self::new(Ideal::zero(ring))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn defining_ideal(&self) -> &Ideal {
        &self.defining
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    /// `M = 0`, i.e. `J` is the unit ideal.
    pub fn is_zero(&self) -> bool {
        self.defining.is_unit()
    }

    /// Submodule generated by the images of `gens`; carrier `(gens) + J`.
    pub fn submodule(&self, gens: &[Polynomial]) -> Result<Submodule> {
        let ideal = Ideal::new(&self.ring, gens.to_vec())?;
        self.submodule_from_ideal(&ideal)
    }

    /// `I·M`, carrier `I + J`.
    pub fn submodule_from_ideal(&self, ideal: &Ideal) -> Result<Submodule> {
        Ok(Submodule { carrier: ideal.sum(&self.defining)?.reduced() })
    }

    pub fn zero_submodule(&self) -> Submodule {
        Submodule { carrier: self.defining.clone() }
    }

    pub fn whole(&self) -> Submodule {
        Submodule { carrier: Ideal::unit(&self.ring) }
    }

    /// `U :_M by`, carrier `U : by` (which contains `J` automatically).
    pub fn colon(&self, u: &Submodule, by: &Divisor) -> Result<Submodule> {
        Ok(Submodule { carrier: u.carrier.colon(by)? })
    }

    /// `l(U/V)` for submodules `V ⊆ U`.
    ///
    /// Finite colengths are subtracted. When both colengths are infinite and
    /// the carriers are homogeneous, graded pieces are compared degree by degree
    /// up to [`DEFAULT_TRUNCATION_DEGREE`]; the length is finite only if the
    /// last three degrees contribute nothing.
    pub fn length_of_quotient(&self, u: &Submodule, v: &Submodule) -> Result<LengthValue> {
        self.length_of_quotient_with(u, v, DEFAULT_TRUNCATION_DEGREE)
    }

    pub fn length_of_quotient_with(&self, u: &Submodule, v: &Submodule, degree_bound: u32) -> Result<LengthValue> {
        if !u.carrier.contains(&v.carrier)? {
            return Err(Error::NotContained);
        }
        Ok(relative_length(&u.carrier, &v.carrier, degree_bound))
    }

    /// Krull dimension of `S/J`, read off the initial ideal.
    pub fn krull_dim(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroModule);
        }
        Ok(independent_set_dimension(&self.defining.leading_monomials(), self.ring.nvars()))
    }

    /// `seq` has `dim M` elements and `M/(seq)M` has finite length.
    pub fn is_system_of_parameters(&self, seq: &[Polynomial]) -> Result<bool> {
        if self.is_zero() {
            return Ok(false);
        }
        if seq.len() != self.krull_dim()? {
            return Ok(false);
        }
        let q = self.submodule(seq)?;
        Ok(colength(&q.carrier).is_finite())
    }
}

/// `l(U/V)` for ideals `V ⊆ U` (checked by the caller).
pub(crate) fn relative_length(u: &Ideal, v: &Ideal, degree_bound: u32) -> LengthValue {
    match (colength(u), colength(v)) {
        (LengthValue::Finite(a), LengthValue::Finite(b)) => LengthValue::Finite(b - a),
        (LengthValue::Finite(_), LengthValue::Infinite) => LengthValue::Infinite,
        (LengthValue::Infinite, LengthValue::Finite(_)) => unreachable!("V ⊆ U forces colength(V) ≥ colength(U)"),
        (LengthValue::Infinite, LengthValue::Infinite) => {
            if u.equals(v) {
                return LengthValue::Finite(0);
            }
            if !(u.is_homogeneous() && v.is_homogeneous()) {
                return LengthValue::Infinite;
            }
            let hu = hilbert_function(u, degree_bound);
            let hv = hilbert_function(v, degree_bound);
            let diff: Vec<u64> = hv.iter().zip(&hu).map(|(a, b)| a - b).collect();
            let tail = diff.len().saturating_sub(3);
            if diff[tail..].iter().all(|&d| d == 0) {
                LengthValue::Finite(diff.iter().sum())
            } else {
                LengthValue::Infinite
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;

    fn gold() -> PresentedModule {
        let r = PolyRing::standard(3);
        PresentedModule::new(Ideal::parse(&r, &["x1^2", "x1*x2*x3", "x1*x3^2"]).unwrap())
    }

    fn xy() -> Arc<PolyRing> {
        PolyRing::new(Default::default(), ["x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn submodules_contain_the_relations() {
        let r = xy();
        let m = PresentedModule::new(Ideal::parse(&r, &["x^2"]).unwrap());
        assert_eq!(m.submodule(&[]).unwrap().carrier(), m.defining_ideal());
        assert!(m.submodule(&[Polynomial::one(&r)]).unwrap().carrier().is_unit());
        assert_eq!(m.submodule(&[r.parse("x").unwrap()]).unwrap().carrier(), &Ideal::parse(&r, &["x"]).unwrap());
    }

    #[test]
    fn module_colon_examples() {
        let m = gold();
        let r = m.ring().clone();
        let c = m.colon(&m.zero_submodule(), &r.parse("x2").unwrap().into()).unwrap();
        assert_eq!(c.carrier(), &Ideal::parse(&r, &["x1^2", "x1*x3"]).unwrap());
        let u = m.submodule(&[r.parse("x3").unwrap()]).unwrap();
        assert_eq!(m.colon(&u, &Polynomial::one(&r).into()).unwrap(), u);
        assert_eq!(m.colon(&m.whole(), &r.parse("x1").unwrap().into()).unwrap(), m.whole());
    }

    #[test]
    fn lengths() {
        let r = xy();
        let s = PresentedModule::free(&r);
        let mx = s.submodule(&r.variables_as_polys()).unwrap();
        assert_eq!(s.length_of_quotient(&s.whole(), &mx).unwrap(), LengthValue::Finite(1));
        let sq = s.submodule(&[r.parse("x^2").unwrap(), r.parse("x*y").unwrap(), r.parse("y^2").unwrap()]).unwrap();
        assert_eq!(s.length_of_quotient(&s.whole(), &sq).unwrap(), LengthValue::Finite(3));
        assert_eq!(s.length_of_quotient(&sq, &s.whole()), Err(Error::NotContained));
    }

    #[test]
    fn infinite_relative_length_on_gold_module() {
        let m = gold();
        let r = m.ring().clone();
        let u = m.submodule(&[r.parse("x1").unwrap()]).unwrap();
        let v = m.submodule(&[r.parse("x1^2").unwrap(), r.parse("x1*x3").unwrap()]).unwrap();
        assert_eq!(m.length_of_quotient(&u, &v).unwrap(), LengthValue::Infinite);
        // (x1, x2)/(x1^2, x1*x3, x2) is spanned by x1 alone
        let u2 = m.submodule(&[r.parse("x1").unwrap(), r.parse("x2").unwrap()]).unwrap();
        let v2 = m.submodule(&[r.parse("x1*x3").unwrap(), r.parse("x2").unwrap()]).unwrap();
        assert_eq!(m.length_of_quotient(&u2, &v2).unwrap(), LengthValue::Finite(1));
    }

    #[test]
    fn krull_dimension() {
        let r = xy();
        assert_eq!(PresentedModule::free(&r).krull_dim().unwrap(), 2);
        let r3 = PolyRing::standard(3);
        assert_eq!(PresentedModule::new(Ideal::maximal(&r3)).krull_dim().unwrap(), 0);
        assert_eq!(gold().krull_dim().unwrap(), 2);
        assert_eq!(PresentedModule::new(Ideal::unit(&r3)).krull_dim(), Err(Error::ZeroModule));
        let lex = r3.with_order(MonomialOrder::Lex).unwrap();
        let j = Ideal::parse(&lex, &["x1^2 - x2*x3", "x1*x2 - x3^2"]).unwrap();
        let jg = Ideal::parse(&r3, &["x1^2 - x2*x3", "x1*x2 - x3^2"]).unwrap();
        assert_eq!(PresentedModule::new(j).krull_dim().unwrap(), PresentedModule::new(jg).krull_dim().unwrap());
    }

    #[test]
    fn systems_of_parameters() {
        let r = xy();
        let s = PresentedModule::free(&r);
        assert!(s.is_system_of_parameters(&r.variables_as_polys()).unwrap());
        assert!(!s.is_system_of_parameters(&[r.parse("x").unwrap()]).unwrap());
        let m = gold();
        let r3 = m.ring().clone();
        let seq = [r3.parse("x2").unwrap(), r3.parse("x3^2").unwrap()];
        assert!(m.is_system_of_parameters(&seq).unwrap());
        assert_eq!(colength(m.submodule(&seq).unwrap().carrier()), LengthValue::Finite(4));
    }

    #[test]
    fn hilbert_function_of_gold_module() {
        // S/J has x1 times the monomials in x2, x3 not divisible by x2*x3 or x3^2
        let m = gold();
        assert_eq!(hilbert_function(m.defining_ideal(), 4), vec![1, 3, 5, 5, 6]);
    }

    #[test]
    fn length_value_serde() {
        let v = [LengthValue::Finite(4), LengthValue::Infinite];
        let text = toml::to_string(&std::collections::BTreeMap::from([("v", v)])).unwrap();
        let back: std::collections::BTreeMap<String, [LengthValue; 2]> = toml::from_str(&text).unwrap();
        assert_eq!(back["v"], v);
    }
}
