#![allow(dead_code)]

use asseq::ideal::Ideal;
use asseq::module::PresentedModule;
use asseq::polyring::{Monomial, MonomialOrder, PolyRing, Polynomial};
use asseq::sequence::SequenceContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SEED: u64 = 0x5eed_1979;
pub const CORPUS_SIZE: usize = 200;

fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(1..=max_degree);
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// Random contexts: at most 3 variables, `J` generated by at most 4 monomials
/// of degree at most 4, and a monomial sequence of length at most 3. Sequences
/// are biased towards pure powers and towards length `dim M` so that a fair
/// share of the corpus consists of systems of parameters.
pub fn corpus(seed: u64, count: usize) -> Vec<SequenceContext> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nvars = rng.gen_range(1..=3);
            let ring = PolyRing::standard(nvars);
            let ngens = rng.gen_range(0..=4);
            let rels: Vec<Monomial> = (0..ngens).map(|_| random_monomial(&mut rng, nvars, 4)).collect();
            let module = PresentedModule::new(Ideal::from_monomials(&ring, &rels));
            let dim = module.krull_dim().expect("dimension of a monomial quotient");
            let len = if (1..=3).contains(&dim) && rng.gen_bool(0.6) { dim } else { rng.gen_range(1..=3) };
            let seq: Vec<Polynomial> = (0..len)
                .map(|_| {
                    let m = if rng.gen_bool(0.5) {
                        Monomial::var(nvars, rng.gen_range(0..nvars)).pow(rng.gen_range(1..=3))
                    } else {
                        random_monomial(&mut rng, nvars, 3)
                    };
                    Polynomial::monomial(&ring, m, 1)
                })
                .collect();
            SequenceContext::new(module, seq).expect("monomials of positive degree")
        })
        .collect()
}

pub fn gold(seq: &[&str]) -> SequenceContext {
    let r = PolyRing::standard(3);
    let m = PresentedModule::new(Ideal::parse(&r, &["x1^2", "x1*x2*x3", "x1*x3^2"]).unwrap());
    SequenceContext::new(m, seq.iter().map(|s| r.parse(s).unwrap()).collect()).unwrap()
}

pub fn free(vars: &[&str], seq: &[&str]) -> SequenceContext {
    let r = PolyRing::new(Default::default(), vars.iter().copied(), MonomialOrder::Grevlex).unwrap();
    SequenceContext::new(PresentedModule::free(&r), seq.iter().map(|s| r.parse(s).unwrap()).collect()).unwrap()
}
