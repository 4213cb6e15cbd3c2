//! Algebraic invariants checked on generated inputs.

mod common;

use chowstab::ratlin::{rat, span, RatVector};
use chowstab::{
    absolute_verdict, config_chow_weight, decompose_span, mumford_weight, permutation_matrix, relative_verdict,
    verify_certificate, Configuration, OnePS, Verdict,
};
use common::to_rat;
use proptest::prelude::*;

fn vectors(len: usize, max: usize) -> impl Strategy<Value = Vec<RatVector>> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, len), 1..=max)
        .prop_map(|vs| vs.iter().map(|v| to_rat(v)).collect())
}

/// Point configurations in `P^n` with 1 to 5 components.
fn points(n: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, n + 1), 1u64..=3), 1..=5).prop_filter_map(
        "zero vector",
        move |pts| {
            let entries: Vec<(&[i64], u64)> = pts.iter().map(|(v, m)| (v.as_slice(), *m)).collect();
            Configuration::from_i64_points(n, &entries).ok()
        },
    )
}

fn weights(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, len - 1).prop_map(|mut q| {
        q.push(-q.iter().sum::<i64>());
        q
    })
}

fn permutation(len: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..len).collect::<Vec<usize>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn span_ignores_order_and_scaling(vs in vectors(4, 4), k in 1i64..=3) {
        let mut other: Vec<RatVector> = vs.iter().rev().map(|v| v.iter().map(|x| x * rat(k)).collect()).collect();
        other.push(vs[0].iter().zip(&vs[vs.len() - 1]).map(|(a, b)| a + b).collect());
        prop_assert_eq!(span(4, &vs).unwrap(), span(4, &other).unwrap());
        let s = span(4, &vs).unwrap();
        prop_assert_eq!(span(4, &s.basis().row_vecs()).unwrap(), s);
    }

    #[test]
    fn dimension_formula(a in vectors(4, 3), b in vectors(4, 3)) {
        let (u, w) = (span(4, &a).unwrap(), span(4, &b).unwrap());
        let sum = u.sum(&w).unwrap();
        let meet = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.rank() + meet.rank(), u.rank() + w.rank());
        prop_assert!(sum.contains(&u).unwrap() && u.contains(&meet).unwrap());
    }

    #[test]
    fn modular_law(a in vectors(4, 2), b in vectors(4, 3), c in vectors(4, 2)) {
        let u = span(4, &a).unwrap();
        let v = span(4, &b).unwrap();
        let w = u.sum(&span(4, &c).unwrap()).unwrap();
        let left = u.sum(&v.intersect(&w).unwrap()).unwrap();
        let right = u.sum(&v).unwrap().intersect(&w).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn weight_of_inverse_is_not_larger(c in points(3), q in weights(4)) {
        let l = OnePS::diagonal(q);
        let sum = mumford_weight(&c, &l).unwrap().value + mumford_weight(&c, &l.inverse()).unwrap().value;
        prop_assert!(sum <= rat(0));
    }

    #[test]
    fn weight_is_homogeneous_in_multiplicities(c in points(2), q in weights(3), t in 1u64..=4) {
        let l = OnePS::diagonal(q);
        let scaled = mumford_weight(&c.scale_multiplicities(t), &l).unwrap().value;
        prop_assert_eq!(scaled, mumford_weight(&c, &l).unwrap().value * rat(t as i64));
    }

    #[test]
    fn weight_is_transform_invariant(c in points(2), q in weights(3), perm in permutation(3)) {
        let g = permutation_matrix(&perm);
        let moved = c.apply_transform(&g).unwrap();
        let l = OnePS::conjugated(q.clone(), g).unwrap();
        prop_assert_eq!(mumford_weight(&moved, &l).unwrap().value, mumford_weight(&c, &OnePS::diagonal(q)).unwrap().value);
    }

    #[test]
    fn verdict_is_scale_and_permutation_invariant(c in points(3), t in 1u64..=3, perm in permutation(4)) {
        let v = absolute_verdict(&c).unwrap().verdict;
        let scaled = absolute_verdict(&c.scale_multiplicities(t)).unwrap().verdict;
        prop_assert_eq!(scaled == Verdict::Unstable, v == Verdict::Unstable);
        let moved = c.apply_transform(&permutation_matrix(&perm)).unwrap();
        prop_assert_eq!(absolute_verdict(&moved).unwrap().verdict, v);
    }

    #[test]
    fn certificates_verify(c in points(3)) {
        let r = absolute_verdict(&c).unwrap();
        if let Some(cert) = &r.certificate {
            prop_assert!(verify_certificate(&c, cert).unwrap());
        }
        let rel = relative_verdict(&c).unwrap();
        if let Some(cert) = &rel.certificate {
            prop_assert!(verify_certificate(&c, cert).unwrap());
        }
        prop_assert!(rel.verdict != Verdict::Unstable || r.verdict == Verdict::Unstable);
    }

    #[test]
    fn decomposition_ignores_input_order(c in points(3), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..c.components().len()).collect();
        let shift = (seed as usize) % order.len();
        order.rotate_left(shift);
        let d = decompose_span(&c).unwrap();
        let e = decompose_span(&c.reorder(&order)).unwrap();
        let relabel = |parts: Vec<Vec<usize>>| {
            let mut p: Vec<Vec<usize>> = parts
                .into_iter()
                .map(|part| {
                    let mut q: Vec<usize> = part.into_iter().map(|i| order[i]).collect();
                    q.sort();
                    q
                })
                .collect();
            p.sort();
            p
        };
        prop_assert_eq!(relabel(e.partition()), d.partition());
        prop_assert_eq!(e.dimensions(), d.dimensions());
    }

    #[test]
    fn chow_weight_ignores_weight_shift(c in points(3), q in weights(4), shift in -3i64..=3) {
        let base = config_chow_weight(&c, &OnePS::diagonal(q.clone()));
        // Repeated points overlap, which the Chow weight rejects.
        prop_assume!(base.is_ok());
        let base = base.unwrap().total;
        let shifted: Vec<i64> = q.iter().map(|x| x + shift).collect();
        prop_assert_eq!(config_chow_weight(&c, &OnePS::diagonal(shifted)).unwrap().total, base);
    }
}
