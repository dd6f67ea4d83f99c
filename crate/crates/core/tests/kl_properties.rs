use std::sync::Arc;

use proptest::prelude::*;

use cubulator::bruhat::BruhatInterval;
use cubulator::kl::{all_trivial, KlScope, KlTable};
use cubulator::poly::{multiply, IntPoly};
use cubulator::{CoxeterSystem, Element};
use num_bigint::BigInt;

fn case(max_len: usize) -> impl Strategy<Value = (Arc<CoxeterSystem>, Element)> {
    let systems = ["A3", "B3", "Atilde2", "I2(5)", "H3"];
    (0..systems.len()).prop_flat_map(move |i| {
        let sys = Arc::new(CoxeterSystem::build(systems[i]).unwrap());
        let r = sys.rank() as u8;
        prop::collection::vec(0..r, 0..max_len).prop_map(move |w| {
            let y = sys.shortlex_nf(&w);
            (sys.clone(), y)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// R does not depend on which right descent drives the recursion.
    #[test]
    fn r_is_independent_of_descent_choice((_sys, y) in case(8)) {
        let iv = BruhatInterval::new(&_sys, &y).unwrap();
        let last = KlTable::new(&iv, KlScope::Full).unwrap();
        let first = KlTable::with_descent_choice(&iv, KlScope::Full, |_, d| d[0]).unwrap();
        for w in 0..iv.len() as u32 {
            for x in last.below(w).iter() {
                prop_assert_eq!(last.r(x as u32, w), first.r(x as u32, w));
            }
        }
    }

    /// q^{ℓ(w)-ℓ(x)} P_{x,w}(1/q) = Σ_{x ≤ v ≤ w} R_{x,v} P_{v,w}.
    #[test]
    fn defining_identity((_sys, y) in case(8)) {
        let iv = BruhatInterval::new(&_sys, &y).unwrap();
        let t = KlTable::new(&iv, KlScope::Full).unwrap();
        for w in 0..iv.len() as u32 {
            for x in t.below(w).iter().map(|x| x as u32) {
                let d = iv.length(w) - iv.length(x);
                let lhs = t.p(x, w).unwrap().reflect(d);
                let mut rhs = IntPoly::zero();
                for v in t.below(w).iter().map(|v| v as u32) {
                    if t.below(v).contains(x as usize) {
                        rhs = &rhs + &multiply(&t.r(x, v), &t.p(v, w).unwrap());
                    }
                }
                prop_assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn r_degree_and_value_at_one((_sys, y) in case(8)) {
        let iv = BruhatInterval::new(&_sys, &y).unwrap();
        let t = KlTable::new(&iv, KlScope::Top).unwrap();
        let top = iv.top_id();
        for x in t.below(top).iter().map(|x| x as u32) {
            let r = t.r(x, top);
            prop_assert_eq!(r.degree(), Some(iv.length(top) - iv.length(x)));
            if x != top {
                prop_assert_eq!(r.eval(&BigInt::from(1)), BigInt::from(0));
            }
        }
    }

    #[test]
    fn triviality_is_invariant_under_diagram_automorphisms((sys, y) in case(9)) {
        let base = all_trivial(&BruhatInterval::new(&sys, &y).unwrap());
        for perm in sys.diagram_automorphisms() {
            let z = sys.diagram_automorphism(&perm, &y).unwrap();
            prop_assert_eq!(all_trivial(&BruhatInterval::new(&sys, &z).unwrap()), base);
        }
        let inv = sys.inverse(&y);
        prop_assert_eq!(all_trivial(&BruhatInterval::new(&sys, &inv).unwrap()), base);
    }
}
