//! Property tests for the invariants of each layer.

use fano_wci::catalog::Catalog;
use fano_wci::conditions::{Condition, Flags};
use fano_wci::exclusion::{all_centers, dispatch};
use fano_wci::hypersurface::XPrimeModel;
use fano_wci::links::{build_counterpart, counterpart_inverse, EquationShape};
use fano_wci::numerics::{b_cubed, kawamata_numbers, triple, BlowupLattice};
use fano_wci::rational::rat;
use fano_wci::singularities::{basket, normalize_quotient, QuotientType};
use fano_wci::wps::{monomials_of_degree, weighted_degree, Monomial};
use fano_wci::WeightSystem;
use proptest::prelude::*;

fn catalog_weights() -> Vec<WeightSystem> {
    let c = Catalog::shipped();
    c.families()
        .iter()
        .flat_map(|f| [f.g.weights.clone(), f.gprime.weights.clone()])
        .collect()
}

proptest! {
    #[test]
    fn weighted_degree_is_linear(
        a in proptest::collection::vec(0u32..6, 5),
        b in proptest::collection::vec(0u32..6, 5),
        ws in proptest::collection::vec(1u64..12, 5),
    ) {
        let w = WeightSystem::new(ws).unwrap();
        let (ma, mb) = (Monomial::new(a), Monomial::new(b));
        prop_assert_eq!(
            weighted_degree(&ma.mul(&mb), &w).unwrap(),
            weighted_degree(&ma, &w).unwrap() + weighted_degree(&mb, &w).unwrap()
        );
    }

    #[test]
    fn normalize_quotient_is_idempotent(r in 2u64..=17, x in 1u64..60, y in 1u64..60, z in 1u64..60) {
        if let Ok(q) = normalize_quotient(r, [x, y, z]) {
            prop_assert_eq!(normalize_quotient(r, q.weights()).unwrap(), q);
        }
    }

    #[test]
    fn b_cubed_is_a_triple_product(p in -30i64..30, q in 1i64..30, ri in 0usize..6) {
        let (r, a) = [(2, 1), (3, 1), (4, 1), (5, 1), (5, 2), (7, 2)][ri];
        let quot = QuotientType::new(r, a).unwrap();
        let a_cube = rat(p, q);
        let lattice = BlowupLattice::kawamata(a_cube.clone(), &quot);
        let b = lattice.anticanonical();
        prop_assert_eq!(triple(&lattice, &b, &b, &b).unwrap(), b_cubed(&a_cube, &quot));
        prop_assert_eq!(kawamata_numbers(&quot).0, rat(1, r as i64));
    }

    #[test]
    fn flags_round_trip(i in 0usize..5, neg in any::<bool>()) {
        let text = ["exists-wci(1,1,2)", "not-exists-wci(1,1,4)", "exists-wci(1,3,4)",
                    "monomial-present(y^2 z)", "monomial-absent(z^3 t)"][i];
        let mut c: Condition = text.parse().unwrap();
        if neg {
            c = c.negation();
        }
        prop_assert_eq!(c.negation().negation(), c.clone());
        let flags = Flags::single(c);
        prop_assert_eq!(flags.to_string().parse::<Flags>().unwrap(), flags);
    }
}

fn brute_count(d: u64, w: &[u64]) -> usize {
    fn rec(i: usize, left: u64, w: &[u64]) -> usize {
        if i == w.len() {
            return usize::from(left == 0);
        }
        (0..=left / w[i])
            .map(|e| rec(i + 1, left - e * w[i], w))
            .sum()
    }
    rec(0, d, w)
}

#[test]
fn enumeration_matches_brute_force_up_to_30() {
    for w in catalog_weights() {
        for d in 0..=30 {
            let got = monomials_of_degree(d, &w);
            assert_eq!(got.len(), brute_count(d, w.weights()), "{w} degree {d}");
            assert!(got.iter().all(|m| weighted_degree(m, &w).unwrap() == d));
        }
    }
}

#[test]
fn verdicts_reverify() {
    for f in Catalog::shipped().families() {
        let m = XPrimeModel::new(&f.gprime).unwrap();
        for (center, branches) in all_centers(&m).unwrap() {
            for flags in branches {
                let (cert, v) = dispatch(&m, &center, &flags).unwrap();
                assert_eq!(cert.verify().unwrap(), v, "{} {center}", f.id());
            }
        }
    }
}

#[test]
fn quotient_discrepancies() {
    for f in Catalog::shipped().families() {
        let m = XPrimeModel::new(&f.gprime).unwrap();
        for p in basket(&m).unwrap() {
            if let Some(q) = p.quotient() {
                assert_eq!(kawamata_numbers(&q).0, rat(1, q.r as i64));
            }
        }
        assert_eq!(
            m.link.discrepancy(),
            rat(1, f.gprime.subfamily.modulus() as i64)
        );
    }
}

#[test]
fn link_relations() {
    for f in Catalog::shipped().families() {
        let l = build_counterpart(&f.g).unwrap();
        let a = l.std_weights;
        assert_eq!(l.b, a[4] - a[0]);
        assert_eq!(l.b, f.g.subfamily.modulus());
        assert_eq!(l.xprime_record(), f.gprime);
        assert_eq!(counterpart_inverse(&l.xprime_record()).unwrap(), f.g);
        assert_eq!(l.z_degree, l.d1 + l.d2 - a[5]);
        match l.equation_shape {
            EquationShape::SinglePrime => assert_eq!(l.z_degree, a[4] + l.d1),
            EquationShape::DoublePrime => assert_eq!(l.z_degree, 3 * a[4]),
        }
    }
}
