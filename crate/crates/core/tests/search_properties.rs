use std::sync::Arc;

use proptest::prelude::*;

use cubulator::bruhat::{bruhat_leq, BruhatInterval};
use cubulator::constructions::normal_form_forest;
use cubulator::coxeter::types::FiniteType;
use cubulator::growth::ExponentTable;
use cubulator::kl::all_trivial;
use cubulator::poly::{multiply, quantum_poly, IntPoly};
use cubulator::search::{cubulate, verify_certificate, Cubulation, SearchOptions, SearchStatus};
use cubulator::CoxeterSystem;

/// Edge test by Bruhat comparison and length, independent of the interval's edge lists.
fn independent_check(sys: &CoxeterSystem, iv: &BruhatInterval, cert: &Cubulation) -> bool {
    let lat = &cert.lattice;
    let mut seen = cert.assignment.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != iv.len() || cert.assignment.len() != iv.len() {
        return false;
    }
    lat.edges().into_iter().all(|(u, v)| {
        let (a, b) = (iv.vertex(cert.assignment[u]), iv.vertex(cert.assignment[v]));
        b.len() == a.len() + 1 && bruhat_leq(sys, a, b).unwrap()
    })
}

fn found(sys: &CoxeterSystem, y: &[u8]) -> Option<(BruhatInterval, Cubulation)> {
    let y = sys.shortlex_nf(y);
    let iv = BruhatInterval::new(sys, &y).unwrap();
    let out = cubulate(sys, &iv, &SearchOptions::default()).unwrap();
    out.certificate.map(|c| (iv, c))
}

fn strategy() -> impl Strategy<Value = (Arc<CoxeterSystem>, Vec<u8>, Vec<(usize, usize)>)> {
    let systems = ["A3", "B3", "Atilde2", "A4"];
    (0..systems.len()).prop_flat_map(move |i| {
        let sys = Arc::new(CoxeterSystem::build(systems[i]).unwrap());
        let r = sys.rank() as u8;
        (Just(sys), prop::collection::vec(0..r, 0..8), prop::collection::vec((0usize..64, 0usize..64), 1..3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// The verifier agrees with an independent check on found certificates
    /// and on copies with some vertex images swapped.
    #[test]
    fn verifier_matches_independent_check((sys, y, swaps) in strategy()) {
        if let Some((iv, cert)) = found(&sys, &y) {
            prop_assert!(verify_certificate(&sys, &iv, &cert).is_valid());
            prop_assert!(independent_check(&sys, &iv, &cert));
            let mut bad = cert.clone();
            let n = bad.assignment.len();
            for (a, b) in swaps {
                bad.assignment.swap(a % n, b % n);
            }
            prop_assert_eq!(verify_certificate(&sys, &iv, &bad).is_valid(), independent_check(&sys, &iv, &bad));
        }
    }

    /// A cubulation forces the Poincaré polynomial to be the lattice's rank
    /// generating polynomial, and the interval to be KL-trivial.
    #[test]
    fn found_implies_quantum_poincare_and_triviality((sys, y, _) in strategy()) {
        if let Some((iv, cert)) = found(&sys, &y) {
            prop_assert_eq!(iv.poincare_polynomial(), cert.lattice.rank_generating_polynomial());
            prop_assert!(all_trivial(&iv));
        }
    }
}

#[test]
fn verifier_on_all_short_elements() {
    for d in ["A3", "B3", "Atilde2"] {
        let sys = CoxeterSystem::build(d).unwrap();
        for y in sys.ball(6).into_iter().flatten() {
            let iv = BruhatInterval::new(&sys, &y).unwrap();
            let out = cubulate(&sys, &iv, &SearchOptions::default()).unwrap();
            if out.status == SearchStatus::Found {
                let cert = out.certificate.unwrap();
                assert!(independent_check(&sys, &iv, &cert), "{d} {}", sys.format(&y));
            }
        }
    }
}

#[test]
fn normal_form_forest_products_are_the_group() {
    for d in ["A1", "A4", "B2", "B4", "D4", "G2", "H3", "F4", "I2(7)"] {
        let sys = CoxeterSystem::build(d).unwrap();
        let forest = normal_form_forest(&sys).unwrap();
        let products = forest.products();
        assert_eq!(products.len() as u64, sys.order().unwrap(), "{d}");
        let mut elems: Vec<_> = products.iter().map(|w| sys.shortlex_nf(w)).collect();
        assert!(elems.iter().zip(&products).all(|(e, w)| e.len() == w.len()), "{d}: a product is not reduced");
        elems.sort();
        elems.dedup();
        assert_eq!(elems.len(), products.len(), "{d}");
    }
}

#[test]
fn exponents_match_enumeration() {
    let types = [
        FiniteType::A(4),
        FiniteType::B(3),
        FiniteType::D(4),
        FiniteType::F4,
        FiniteType::I2(6),
        FiniteType::H(3),
        FiniteType::I2(7),
    ];
    let table = ExponentTable::for_types(&types);
    for t in types {
        let sys = CoxeterSystem::build(&t.to_string()).unwrap();
        let exps = &table.0[&t.to_string()];
        assert_eq!(exps.len(), sys.rank());
        let poincare = exps.iter().fold(IntPoly::one(), |p, &e| multiply(&p, &quantum_poly(e as i64 + 1).unwrap()));
        let mut counts = vec![0i64; exps.iter().sum::<u32>() as usize + 1];
        for w in sys.enumerate().unwrap() {
            counts[w.len()] += 1;
        }
        assert_eq!(poincare, IntPoly::from_i64s(&counts), "{t}");
        assert_eq!(exps.iter().sum::<u32>() as usize, sys.longest_element().unwrap().len(), "{t}");
    }
}
