mod common;

use std::collections::BTreeSet;

use common::{braid_closure, rt_oracle};
use knotcensus::diagram::{closure_pd, count_components, tangle_pd, PDCode};
use knotcensus::invariants::{determinant, jones, kauffman_bracket, link_determinant, LaurentPolynomial, Variable};
use knotcensus::ratfrac::{crossing_number, enumerate_rational_tangles, Fraction};

fn a(terms: &[(i32, i64)]) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(Variable::A, terms.iter().copied())
}

#[test]
fn rational_tangles_match_brute_force() {
    let oracle = rt_oracle(8);
    for (l, expected) in oracle.iter().enumerate().skip(1) {
        let got: BTreeSet<(i64, i64)> =
            enumerate_rational_tangles(l as u32).iter().map(|f| (f.num(), f.den())).collect();
        assert_eq!(&got, expected, "RT({l})");
        assert_eq!(got.len(), 1 << l);
        for &(n, d) in expected {
            assert_eq!(crossing_number(Fraction::new(n, d).unwrap()).unwrap(), l as u64);
        }
    }
}

#[test]
fn closure_components_and_determinants() {
    for l in 1..=8 {
        for &f in enumerate_rational_tangles(l).iter() {
            let pd = closure_pd(f).unwrap();
            let components = count_components(&pd).unwrap();
            assert_eq!(components == 1, f.num() % 2 != 0, "{f}");
            assert!(components <= 2);
            assert_eq!(link_determinant(&pd).unwrap(), f.num().unsigned_abs(), "{f}");
            if components == 1 {
                assert_eq!(determinant(&pd).unwrap(), f.num().unsigned_abs(), "{f}");
            }
        }
    }
}

#[test]
fn reidemeister_two_on_tangle_twists() {
    for f in ["3/2", "-5/3", "7/2", "2/7"] {
        let f: Fraction = f.parse().unwrap();
        let base = kauffman_bracket(&closure_pd(f).unwrap()).unwrap();
        for positive_first in [true, false] {
            let mut t = tangle_pd(f).unwrap();
            t.twist_vertical(positive_first);
            t.twist_vertical(!positive_first);
            let pd = t.numerator_closure();
            assert_eq!(pd.crossing_count(), closure_pd(f).unwrap().crossing_count() + 2);
            assert_eq!(kauffman_bracket(&pd).unwrap(), base, "{f}");
        }
    }
}

#[test]
fn reidemeister_two_on_braids() {
    let w = [1, 2, -1, 2, 2];
    let base = kauffman_bracket(&braid_closure(3, &w)).unwrap();
    for (pos, g) in [(0, 1), (2, 2), (5, -1)] {
        let mut longer = w.to_vec();
        longer.splice(pos..pos, [g, -g]);
        assert_eq!(kauffman_bracket(&braid_closure(3, &longer)).unwrap(), base);
    }
}

#[test]
fn reidemeister_three_on_braids() {
    let pairs: [([i32; 3], [i32; 3]); 3] =
        [([1, 2, 1], [2, 1, 2]), ([-1, -2, -1], [-2, -1, -2]), ([1, 2, -1], [-2, 1, 2])];
    let tails: [&[i32]; 4] = [&[], &[1], &[-2, 1], &[2, 2, -1, 2]];
    for (lhs, rhs) in pairs {
        for tail in tails {
            let l: Vec<i32> = lhs.iter().chain(tail).copied().collect();
            let r: Vec<i32> = rhs.iter().chain(tail).copied().collect();
            assert_eq!(
                kauffman_bracket(&braid_closure(3, &l)).unwrap(),
                kauffman_bracket(&braid_closure(3, &r)).unwrap(),
                "{l:?} vs {r:?}"
            );
        }
    }
}

#[test]
fn reidemeister_one_scales_by_kink_factor() {
    let w = [1, -2, 1, -2];
    let base = kauffman_bracket(&braid_closure(3, &w)).unwrap();
    let mut factors = Vec::new();
    for g in [3, -3] {
        let stabilized: Vec<i32> = w.iter().copied().chain([g]).collect();
        let b = kauffman_bracket(&braid_closure(4, &stabilized)).unwrap();
        let f = [a(&[(3, -1)]), a(&[(-3, -1)])].into_iter().find(|f| &base * f == b);
        factors.push(f.expect("stabilization multiplies by -A^3 or -A^-3"));
    }
    assert_ne!(factors[0], factors[1]);
    // the writhe normalization removes the factor
    let plain = jones(&braid_closure(3, &w)).unwrap();
    for g in [3, -3] {
        let stabilized: Vec<i32> = w.iter().copied().chain([g]).collect();
        assert_eq!(jones(&braid_closure(4, &stabilized)).unwrap(), plain);
    }
}

#[test]
fn braid_relations_agree_with_tangles() {
    // the closure of σ1^3 on two strands is a trefoil
    let braid = jones(&braid_closure(2, &[1, 1, 1])).unwrap();
    let tangle = jones(&closure_pd("3".parse().unwrap()).unwrap()).unwrap();
    assert!(braid == tangle || braid == tangle.invert());
    let unknot = braid_closure(2, &[1]);
    assert_eq!(jones(&unknot).unwrap(), LaurentPolynomial::one(Variable::T));
    assert_eq!(jones(&PDCode::unknot()).unwrap(), LaurentPolynomial::one(Variable::T));
}
