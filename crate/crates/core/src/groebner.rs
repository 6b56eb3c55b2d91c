//! Buchberger's algorithm with the Gebauer–Möller pair criteria, normal
//! forms and reduced Gröbner bases.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial, Term};

/// A reduced Gröbner basis: monic, auto-reduced, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    elements: Vec<Polynomial>,
    source: Vec<Polynomial>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.elements == other.elements
    }
}

impl Eq for GroebnerBasis {}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    /// The generators this basis was computed from.
    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements.iter().filter_map(|g| g.leading_monomial().cloned()).collect()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        if !PolyRing::same(f.ring(), &self.ring) {
            return Err(Error::MixedRings);
        }
        Ok(reduce(f, &self.elements.iter().collect::<Vec<_>>()))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let refs: Vec<&Polynomial> = self.elements.iter().collect();
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                if !reduce(&s_polynomial(refs[i], refs[j]), &refs).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring` (whose order is used).
pub fn groebner_basis(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    for g in gens {
        if !PolyRing::same(g.ring(), ring) {
            return Err(Error::MixedRings);
        }
    }
    let elements = buchberger(ring, gens);
    Ok(GroebnerBasis { ring: ring.clone(), elements, source: gens.to_vec() })
}

/// Gröbner basis with respect to `order`, re-sorting the generators into that order first.
pub fn groebner_basis_for_order(
    gens: &[Polynomial],
    ring: &Arc<PolyRing>,
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    let target = if ring.order() == order { ring.clone() } else { ring.with_order(order)? };
    let moved = gens.iter().map(|g| g.to_ring(&target)).collect::<Result<Vec<_>>>()?;
    groebner_basis(&target, &moved)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.normal_form(f)
}

pub fn ideal_membership(f: &Polynomial, gb: &GroebnerBasis) -> Result<bool> {
    gb.contains(f)
}

pub(crate) fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().expect("nonzero");
    let (gm, gc) = g.leading_term().expect("nonzero");
    let field = f.ring().field();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.checked_div(fm).unwrap(), field.inv(*fc).unwrap());
    let b = g.mul_term(&l.checked_div(gm).unwrap(), field.inv(*gc).unwrap());
    a.add_scaled(&b, field.neg(1))
}

/// Full reduction of `f` modulo `basis` (every term of the result is irreducible).
pub(crate) fn reduce(f: &Polynomial, basis: &[&Polynomial]) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let order = ring.order();
    let lead: Vec<(&Monomial, u32)> =
        basis.iter().filter_map(|g| g.leading_term().map(|(m, c)| (m, field.inv(*c).unwrap()))).collect();
    let mut remainder: Vec<Term> = Vec::new();
    let mut work: Vec<Term> = f.terms().to_vec();
    let mut start = 0usize;
    while start < work.len() {
        let (m, c) = &work[start];
        let hit = lead.iter().position(|(lm, _)| lm.divides(m));
        match hit {
            None => {
                remainder.push(work[start].clone());
                start += 1;
            }
            Some(k) => {
                let q = m.checked_div(lead[k].0).unwrap();
                let coeff = field.neg(field.mul(*c, lead[k].1));
                work = merge_sub(&work[start..], basis[k].terms(), &q, coeff, order, field);
                start = 0;
            }
        }
    }
    Polynomial::from_sorted_terms(&ring, remainder)
}

/// `a + coeff * q * b` for descending term slices.
fn merge_sub(
    a: &[Term],
    b: &[Term],
    q: &Monomial,
    coeff: u32,
    order: MonomialOrder,
    field: crate::polyring::PrimeField,
) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bj = b.iter().map(|(m, c)| (m.mul(q), field.mul(*c, coeff))).peekable();
    while i < a.len() {
        match bj.peek() {
            None => break,
            Some((bm, bc)) => match order.cmp(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    if *bc != 0 {
                        out.push(bj.next().unwrap());
                    } else {
                        bj.next();
                    }
                }
                Ordering::Equal => {
                    let v = field.add(a[i].1, *bc);
                    if v != 0 {
                        out.push((a[i].0.clone(), v));
                    }
                    i += 1;
                    bj.next();
                }
            },
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(bj.filter(|(_, c)| *c != 0));
    out
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u64,
}

fn buchberger(ring: &Arc<PolyRing>, gens: &[Polynomial]) -> Vec<Polynomial> {
    let order = ring.order();
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    if input.iter().any(|g| g.is_constant()) {
        return vec![Polynomial::one(ring)];
    }
    // insert smaller generators first; fewer pairs survive the criteria that way
    input.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    input.dedup();

    let mut basis: Vec<Polynomial> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in input {
        let active_refs: Vec<&Polynomial> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = reduce(&g, &active_refs);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        update(&mut basis, &mut active, &mut pairs, h.monic());
    }

    while !pairs.is_empty() {
        // normal selection: least lcm degree, then least lcm in the order, then indices
        let mut best = 0;
        for k in 1..pairs.len() {
            let (p, q) = (&pairs[k], &pairs[best]);
            let better = match p.degree.cmp(&q.degree) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => match order.cmp(&p.lcm, &q.lcm) {
                    Ordering::Less => true,
                    Ordering::Greater => false,
                    Ordering::Equal => (p.j, p.i) < (q.j, q.i),
                },
            };
            if better {
                best = k;
            }
        }
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&basis[pair.i], &basis[pair.j]);
        let active_refs: Vec<&Polynomial> = basis.iter().zip(&active).filter(|(_, a)| **a).map(|(p, _)| p).collect();
        let h = reduce(&s, &active_refs);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return vec![Polynomial::one(ring)];
        }
        update(&mut basis, &mut active, &mut pairs, h.monic());
    }

    let kept: Vec<Polynomial> = basis.into_iter().zip(active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    auto_reduce(ring, kept)
}

/// Gebauer–Möller installation of a new basis element `h`.
fn update(basis: &mut Vec<Polynomial>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Polynomial) {
    let hm = h.leading_monomial().unwrap().clone();
    let new_index = basis.len();

    let candidates: Vec<(usize, Monomial, bool)> = (0..basis.len())
        .filter(|&k| active[k])
        .map(|k| {
            let gm = basis[k].leading_monomial().unwrap();
            (k, hm.lcm(gm), hm.is_coprime(gm))
        })
        .collect();

    // chain criterion among the new pairs
    let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
    for (idx, c) in candidates.iter().enumerate() {
        let (_, ref l, coprime) = *c;
        let dominated = |other: &(usize, Monomial, bool)| other.1.divides(l);
        let keep = coprime || (!candidates[idx + 1..].iter().any(dominated) && !kept.iter().any(dominated));
        if keep {
            kept.push(c.clone());
        }
    }
    // Buchberger's product criterion
    let fresh: Vec<Pair> = kept
        .into_iter()
        .filter(|c| !c.2)
        .map(|(k, lcm, _)| Pair { i: k, j: new_index, degree: lcm.degree(), lcm })
        .collect();

    // drop old pairs whose lcm is strictly covered through h
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(basis[p.i].leading_monomial().unwrap());
        let lj = hm.lcm(basis[p.j].leading_monomial().unwrap());
        li == p.lcm || lj == p.lcm
    });
    pairs.extend(fresh);

    for k in 0..basis.len() {
        if active[k] && hm.divides(basis[k].leading_monomial().unwrap()) {
            active[k] = false;
        }
    }
    basis.push(h);
    active.push(true);
}

fn auto_reduce(ring: &Arc<PolyRing>, mut elems: Vec<Polynomial>) -> Vec<Polynomial> {
    let order = ring.order();
    elems.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    // minimal basis: drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in elems {
        let gm = g.leading_monomial().unwrap();
        if !minimal.iter().any(|m| m.leading_monomial().unwrap().divides(gm)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let (lm, lc) = minimal[k].leading_term().unwrap().clone();
        let tail = Polynomial::from_sorted_terms(ring, minimal[k].terms()[1..].to_vec());
        let reduced_tail = reduce(&tail, &others);
        let mut terms = vec![(lm, lc)];
        terms.extend(reduced_tail.terms().iter().cloned());
        out.push(Polynomial::from_sorted_terms(ring, terms).monic());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PrimeField;

    fn gb(ring: &Arc<PolyRing>, gens: &[&str]) -> GroebnerBasis {
        let polys: Vec<Polynomial> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
        groebner_basis(ring, &polys).unwrap()
    }

    fn strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn variables_are_already_a_basis() {
        let r = PolyRing::new(PrimeField::default(), ["x", "y"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(strings(&gb(&r, &["x", "y"])), vec!["y", "x"]);
    }

    #[test]
    fn one_buchberger_step() {
        // S(x^2 + y^2, xy) = y^3, irreducible by the pair
        let r = PolyRing::new(PrimeField::default(), ["x", "y"], MonomialOrder::Grevlex).unwrap();
        let g = gb(&r, &["x^2 + y^2", "x*y"]);
        assert_eq!(strings(&g), vec!["x*y", "x^2 + y^2", "y^3"]);
        assert!(g.satisfies_buchberger_criterion());
    }

    #[test]
    fn lex_reduction_to_variables() {
        let r = PolyRing::new(PrimeField::default(), ["x", "y"], MonomialOrder::Lex).unwrap();
        let g = gb(&r, &["x^2 - y", "x"]);
        assert_eq!(strings(&g), vec!["y", "x"]);
        assert!(g.contains(&r.parse("y").unwrap()).unwrap());
    }

    #[test]
    fn empty_and_unit_inputs() {
        let r = PolyRing::standard(2);
        assert!(groebner_basis(&r, &[]).unwrap().is_zero_ideal());
        assert!(gb(&r, &["x1 + 1", "x1"]).is_unit_ideal());
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::new(PrimeField::default(), ["x", "y"], MonomialOrder::Grevlex).unwrap();
        let g = gb(&r, &["x", "y"]);
        assert_eq!(normal_form(&Polynomial::one(&r), &g).unwrap(), Polynomial::one(&r));
        let g = gb(&r, &["x*y", "y^2"]);
        let x2 = r.parse("x^2").unwrap();
        assert_eq!(normal_form(&x2, &g).unwrap(), x2);
        let other = PolyRing::standard(2).parse("x1").unwrap();
        assert_eq!(normal_form(&other, &g), Err(Error::MixedRings));
    }

    #[test]
    fn membership_examples() {
        let r = PolyRing::standard(3);
        let g = gb(&r, &["x1^2", "x1*x2*x3", "x1*x3^2"]);
        assert!(ideal_membership(&r.parse("x1*x3^2").unwrap(), &g).unwrap());
        assert!(!ideal_membership(&r.parse("x1").unwrap(), &g).unwrap());
        assert!(ideal_membership(&Polynomial::zero(&r), &g).unwrap());
    }

    #[test]
    fn cyclic_three_is_a_basis_in_both_orders() {
        let r = PolyRing::new(PrimeField::default(), ["a", "b", "c"], MonomialOrder::Grevlex).unwrap();
        let gens = ["a + b + c", "a*b + b*c + c*a", "a*b*c - 1"];
        let g = gb(&r, &gens);
        assert!(g.satisfies_buchberger_criterion());
        let polys: Vec<Polynomial> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        let lex = groebner_basis_for_order(&polys, &r, MonomialOrder::Lex).unwrap();
        assert!(lex.satisfies_buchberger_criterion());
        assert_eq!(lex.elements().last().unwrap().to_string(), "a + b + c");
        assert_eq!(lex.elements()[0].to_string(), "c^3 - 1");
    }
}
