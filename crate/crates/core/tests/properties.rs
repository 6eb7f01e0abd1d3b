//! Cross-module invariants, some randomized and some exhaustive over the
//! corpus.

use std::sync::Arc;

use proptest::prelude::*;

use grouplab_core::algebra::AlgebraContext;
use grouplab_core::corpus::{corpus, corpus_up_to};
use grouplab_core::group::{build_group, FiniteGroup};
use grouplab_core::identity::{enumerate_units, evaluate_word, satisfies_identity, WordIdentity};
use grouplab_core::involution::{
    enumerate_involutions, enumerate_orientations, induce_on_quotient, make_pair, AntiAutomorphism,
    Orientation, OrientedPair,
};
use grouplab_core::predicates::{
    classify_oriented, has_lc_property, lc_via_center_quotient, unique_commutator,
};

const CORPUS_SPECS: &[&str] = &[
    "C1", "C2", "C3", "C4", "C5", "C6", "C8", "C12", "C16", "C2xC2", "C2xC4", "C2xC2xC2", "C3xC3",
    "C4xC4", "D6", "D8", "D10", "D12", "D16", "Q8", "Q16", "Q8xC2", "Q8xC3",
];

fn spec_strategy() -> impl Strategy<Value = &'static str> {
    prop::sample::select(CORPUS_SPECS)
}

fn classical_pair(g: &Arc<FiniteGroup>, sigma: Orientation) -> OrientedPair {
    make_pair(AntiAutomorphism::classical(g.clone()), sigma).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms_hold(spec in spec_strategy(), seed in any::<u64>()) {
        let g = build_group(spec).unwrap();
        let n = g.order();
        let pick = |s: u64| (s as usize) % n;
        let (a, b, c) = (pick(seed), pick(seed >> 16), pick(seed >> 32));
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.identity()), a);
        prop_assert_eq!(g.mul(g.inv(a), a), g.identity());
    }

    #[test]
    fn quotient_projection_is_a_homomorphism(spec in spec_strategy(), seed in any::<u64>()) {
        let g = build_group(spec).unwrap();
        let center = g.center();
        let q = g.quotient(&center).unwrap();
        let n = g.order();
        let (a, b) = ((seed as usize) % n, ((seed >> 20) as usize) % n);
        prop_assert_eq!(
            q.projection[g.mul(a, b)],
            q.quotient.mul(q.projection[a], q.projection[b])
        );
    }

    #[test]
    fn generated_subgroup_order_divides_group_order(
        spec in spec_strategy(),
        gens in prop::collection::vec(any::<u64>(), 0..4),
    ) {
        let g = build_group(spec).unwrap();
        let gens: Vec<usize> = gens.iter().map(|&x| (x as usize) % g.order()).collect();
        let h = g.subgroup_generated(&gens);
        prop_assert_eq!(g.order() % h.len(), 0);
    }

    #[test]
    fn star_is_involutive_antihomomorphism_on_random_elements(
        spec in spec_strategy(),
        p in prop::sample::select(vec![3u64, 5]),
        coeffs_a in prop::collection::vec(any::<u64>(), 24),
        coeffs_b in prop::collection::vec(any::<u64>(), 24),
    ) {
        let g = Arc::new(build_group(spec).unwrap());
        let mut sigmas = enumerate_orientations(&g, true);
        let sigma = sigmas.remove(coeffs_a[0] as usize % sigmas.len());
        let ctx = AlgebraContext::new(g.clone(), p, classical_pair(&g, sigma)).unwrap();
        let a = ctx.from_coeffs(&coeffs_a[..g.order()]).unwrap();
        let b = ctx.from_coeffs(&coeffs_b[..g.order()]).unwrap();
        prop_assert_eq!(ctx.apply_star(&ctx.apply_star(&a)), a.clone());
        let lhs = ctx.apply_star(&ctx.mul(&a, &b).unwrap());
        let rhs = ctx.mul(&ctx.apply_star(&b), &ctx.apply_star(&a)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn algebra_ring_axioms_on_random_elements(
        spec in spec_strategy(),
        coeffs in prop::collection::vec(any::<u64>(), 72),
    ) {
        let g = Arc::new(build_group(spec).unwrap());
        let n = g.order();
        let ctx = AlgebraContext::new(
            g.clone(),
            3,
            classical_pair(&g, Orientation::trivial(g.clone())),
        )
        .unwrap();
        let a = ctx.from_coeffs(&coeffs[..n]).unwrap();
        let b = ctx.from_coeffs(&coeffs[24..24 + n]).unwrap();
        let c = ctx.from_coeffs(&coeffs[48..48 + n]).unwrap();
        let ab_c = ctx.mul(&ctx.mul(&a, &b).unwrap(), &c).unwrap();
        let a_bc = ctx.mul(&a, &ctx.mul(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = ctx.mul(&a, &ctx.add(&b, &c).unwrap()).unwrap();
        let right = ctx
            .add(&ctx.mul(&a, &b).unwrap(), &ctx.mul(&a, &c).unwrap())
            .unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn word_display_round_trips(letters in prop::collection::vec((0usize..3, -3i32..4), 1..6)) {
        // Words that cancel away entirely are rejected by the constructor.
        if let Ok(w) = WordIdentity::new(3, letters) {
            let reparsed = WordIdentity::parse(&w.to_string()).unwrap();
            prop_assert_eq!(reparsed.letters(), w.letters());
            let double_inverse = w.inverse().inverse();
            prop_assert_eq!(double_inverse, w);
        }
    }
}

#[test]
fn involutions_preserve_order_and_p_sets() {
    for entry in corpus_up_to(16) {
        let g = entry.group.clone();
        let involutions = enumerate_involutions(&g, 16).unwrap();
        for tau in &involutions {
            for x in g.elements() {
                assert_eq!(
                    g.element_order(tau.apply(x)),
                    g.element_order(x),
                    "{}",
                    entry.spec
                );
            }
            for p in [3u64, 5] {
                let pset = g.p_elements(p).unwrap();
                let image: Vec<usize> = {
                    let mut v: Vec<usize> = pset.members.iter().map(|&x| tau.apply(x)).collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(image, pset.members, "{} p={p}", entry.spec);
            }
        }
    }
}

#[test]
fn p_elements_lie_in_every_orientation_kernel() {
    for entry in corpus() {
        let g = entry.group.clone();
        for sigma in enumerate_orientations(&g, false) {
            for p in [3u64, 5, 7] {
                for &x in &g.p_elements(p).unwrap().members {
                    assert_eq!(sigma.sign(x), 1, "{} p={p}", entry.spec);
                }
            }
        }
    }
}

#[test]
fn lc_criteria_agree_across_the_corpus() {
    for entry in corpus() {
        let g = &entry.group;
        let direct = has_lc_property(g) && unique_commutator(g).is_some();
        assert_eq!(direct, lc_via_center_quotient(g), "{}", entry.spec);
    }
}

#[test]
fn fixed_and_skew_spaces_decompose_the_algebra() {
    for entry in corpus_up_to(16) {
        let g = entry.group.clone();
        let involutions = enumerate_involutions(&g, 16).unwrap();
        if involutions.len() > 64 {
            continue; // plenty of coverage from the smaller sets
        }
        for tau in involutions {
            for sigma in enumerate_orientations(&g, true) {
                let pair = make_pair(tau.clone(), sigma).unwrap();
                if !pair.compatible {
                    continue;
                }
                for p in [3u64, 5] {
                    let ctx = AlgebraContext::new(g.clone(), p, pair.clone()).unwrap();
                    assert_eq!(
                        ctx.symmetric_dim() + ctx.skew_dim(),
                        ctx.dim(),
                        "{} p={p}",
                        entry.spec
                    );
                }
            }
        }
    }
}

#[test]
fn lc_split_condition_forces_central_symmetric_elements() {
    // Whenever the split condition holds and the symmetric elements
    // commute, they must be central as well.
    for entry in corpus_up_to(16) {
        let g = entry.group.clone();
        if g.is_abelian() {
            continue;
        }
        let involutions = enumerate_involutions(&g, 16).unwrap();
        for tau in &involutions {
            for sigma in enumerate_orientations(&g, false) {
                let pair = make_pair(tau.clone(), sigma).unwrap();
                if !pair.compatible {
                    continue;
                }
                let report = classify_oriented(&g, &pair).unwrap();
                if !report.cond_lc_split {
                    continue;
                }
                for p in [3u64, 5] {
                    let ctx = AlgebraContext::new(g.clone(), p, pair.clone()).unwrap();
                    if ctx.symmetric_is_commutative() {
                        assert!(ctx.symmetric_is_central(), "{} p={p}", entry.spec);
                    }
                }
            }
        }
    }
}

#[test]
fn commuting_symmetric_space_forces_commuting_symmetric_units() {
    // Units in the span of a pairwise-commuting basis commute, so the
    // commutator identity must hold over the symmetric units; check it by
    // enumeration on every small context.
    let comm = WordIdentity::commutator_word();
    for entry in corpus_up_to(10) {
        let g = entry.group.clone();
        for sigma in enumerate_orientations(&g, true) {
            let pair = classical_pair(&g, sigma);
            let ctx = AlgebraContext::new(g.clone(), 3, pair).unwrap();
            if !ctx.symmetric_is_commutative() {
                continue;
            }
            let set = enumerate_units(&ctx, true, 1 << 22).unwrap();
            let verdict = satisfies_identity(&set, &comm, 1 << 32).unwrap();
            assert!(verdict.holds, "{}", entry.spec);
        }
    }
}

#[test]
fn quotient_transfer_of_the_commutator_identity() {
    let comm = WordIdentity::commutator_word();

    // C6 at p = 3, oriented with kernel C3: the identity holds over the
    // symmetric units, the p-part quotient exists, and the identity holds
    // over the quotient's symmetric units too. Both sides by full
    // enumeration.
    let g = Arc::new(build_group("C6").unwrap());
    let sigma = enumerate_orientations(&g, false).remove(0);
    let pair = classical_pair(&g, sigma);
    let ctx = AlgebraContext::new(g.clone(), 3, pair.clone()).unwrap();
    let set = enumerate_units(&ctx, true, 1 << 22).unwrap();
    assert!(satisfies_identity(&set, &comm, 1 << 32).unwrap().holds);
    let h = g.p_elements(3).unwrap().as_subgroup(&g).unwrap();
    let induced = induce_on_quotient(&pair, &h).unwrap();
    let quotient = Arc::new(induced.quotient.quotient.clone());
    let qctx = AlgebraContext::new(quotient, 3, induced.pair).unwrap();
    let qset = enumerate_units(&qctx, true, 1 << 22).unwrap();
    assert!(satisfies_identity(&qset, &comm, 1 << 32).unwrap().holds);

    // Q8xC3 at p = 3 under the classical involution: the identity fails on
    // both sides, each failure exhibited by a replayable witness pair. The
    // quotient side comes from full enumeration; the parent side from a
    // directed search among symmetric units built off the basis.
    let g = Arc::new(build_group("Q8xC3").unwrap());
    let kernel = g.subgroup_generated(&[3, 1]);
    let sigma = Orientation::from_kernel(g.clone(), kernel).unwrap();
    let pair = classical_pair(&g, sigma);
    let ctx = AlgebraContext::new(g.clone(), 3, pair.clone()).unwrap();

    let h = g.p_elements(3).unwrap().as_subgroup(&g).unwrap();
    let induced = induce_on_quotient(&pair, &h).unwrap();
    let quotient = Arc::new(induced.quotient.quotient.clone());
    let qctx = AlgebraContext::new(quotient, 3, induced.pair).unwrap();
    let qset = enumerate_units(&qctx, true, 1 << 22).unwrap();
    let qverdict = satisfies_identity(&qset, &comm, 1 << 32).unwrap();
    assert!(!qverdict.holds, "quotient symmetric units do not commute");
    let qwitness = qverdict.witness.unwrap();
    assert_ne!(evaluate_word(&qctx, &comm, &qwitness).unwrap(), qctx.one());

    let mut parent_witness = None;
    'search: for a in ctx.symmetric_basis() {
        for b in ctx.symmetric_basis() {
            for ca in 1..3u64 {
                for cb in 1..3u64 {
                    let u = ctx
                        .add(&ctx.one(), &ctx.scalar_mul(ca, &a).unwrap())
                        .unwrap();
                    let v = ctx
                        .add(&ctx.one(), &ctx.scalar_mul(cb, &b).unwrap())
                        .unwrap();
                    if !ctx.is_unit(&u) || !ctx.is_unit(&v) {
                        continue;
                    }
                    if evaluate_word(&ctx, &comm, &[u.clone(), v.clone()]).unwrap() != ctx.one() {
                        parent_witness = Some((u, v));
                        break 'search;
                    }
                }
            }
        }
    }
    let (u, v) = parent_witness.expect("a non-commuting symmetric unit pair exists");
    assert!(ctx.is_symmetric(&u) && ctx.is_symmetric(&v));
    assert_ne!(evaluate_word(&ctx, &comm, &[u, v]).unwrap(), ctx.one());
}

#[test]
fn p_part_delta_ideals_are_nilpotent_in_characteristic_p() {
    // Whenever the p-elements form a (necessarily normal) subgroup and the
    // characteristic is p, the delta ideal of that subgroup is nilpotent;
    // iterated basis products confirm it within dim + 1 steps.
    for entry in corpus() {
        let g = entry.group.clone();
        for p in [3u64, 5] {
            if !(g.order() as u64).is_multiple_of(p) {
                continue;
            }
            let pset = g.p_elements(p).unwrap();
            let Some(h) = pset.as_subgroup(&g) else {
                continue;
            };
            let ctx = AlgebraContext::new(
                g.clone(),
                p,
                classical_pair(&g, Orientation::trivial(g.clone())),
            )
            .unwrap();
            let delta = ctx.delta_ideal(&h).unwrap();
            let index = ctx.nilpotency_index(&delta, ctx.dim() + 1).unwrap();
            assert!(
                index.is_some(),
                "{} p={p}: delta ideal of the p-part must be nilpotent",
                entry.spec
            );
        }
    }
}

#[test]
fn symmetric_idempotent_check_agrees_with_centrality_on_small_contexts() {
    for spec in ["C2", "C4", "C6", "D6", "Q8"] {
        let g = Arc::new(build_group(spec).unwrap());
        for sigma in enumerate_orientations(&g, true) {
            let pair = classical_pair(&g, sigma);
            let ctx = AlgebraContext::new(g.clone(), 3, pair).unwrap();
            let (all_central, witness) = ctx.symmetric_idempotents_central(1 << 22).unwrap();
            if let Some(w) = &witness {
                assert!(!all_central);
                // The witness really is a symmetric non-central idempotent.
                assert!(ctx.is_symmetric(w));
                assert_eq!(ctx.mul(w, w).unwrap(), *w);
                let non_central = g.elements().any(|x| {
                    let e = ctx.basis_element(x);
                    ctx.mul(w, &e).unwrap() != ctx.mul(&e, w).unwrap()
                });
                assert!(non_central, "{spec}");
            }
            if ctx.symmetric_is_central() {
                assert!(all_central, "{spec}");
            }
        }
    }
}
