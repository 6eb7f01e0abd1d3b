//! Structural classification of a group carrying an oriented involution.
//!
//! The central predicates: the LC ("limited commutativity") property, the
//! unique non-trivial commutator, the canonical involution on SLC groups,
//! and the two conditions under which the symmetric part of the group
//! algebra is predicted to be commutative.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::involution::{induce_on_quotient, AntiAutomorphism, InducedPair, OrientedPair};

/// Verdicts for one (group, involution, orientation) triple.
///
/// `symmetric_commutes_predicted` is the disjunction of the two structural
/// conditions; a characteristic-4 third branch exists for general
/// coefficient rings but cannot occur over a field, which a note records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub group: String,
    pub order: usize,
    pub is_abelian: bool,
    pub lc_group: bool,
    pub lc_kernel: bool,
    pub unique_commutator: Option<usize>,
    pub slc_canonical: bool,
    /// Kernel of the orientation is abelian and every element outside it is
    /// fixed by the involution.
    pub cond_abelian_kernel: bool,
    /// Group and kernel both have the LC property and the involution is the
    /// s-twisted split map.
    pub cond_lc_split: bool,
    pub symmetric_commutes_predicted: bool,
    pub notes: Vec<String>,
}

/// True when the group is non-abelian and two elements commute exactly when
/// one of them, or their product, is central.
pub fn has_lc_property(g: &FiniteGroup) -> bool {
    if g.is_abelian() {
        return false;
    }
    let center = g.center();
    g.elements().all(|a| {
        g.elements().all(|b| {
            let commute = g.mul(a, b) == g.mul(b, a);
            let cent = center.contains(a) || center.contains(b) || center.contains(g.mul(a, b));
            commute == cent
        })
    })
}

/// The center-quotient criterion: G/Z(G) is the Klein four group.
///
/// This must agree with `has_lc_property && unique_commutator().is_some()`
/// on every input; the harness tests that agreement.
pub fn lc_via_center_quotient(g: &FiniteGroup) -> bool {
    let center = g.center();
    if center.len() == g.order() {
        return false;
    }
    match g.quotient(&center) {
        Ok(q) => q.quotient.is_klein_four(),
        Err(_) => false,
    }
}

/// The unique non-trivial commutator, when the commutator set is exactly
/// {1, s}.
pub fn unique_commutator(g: &FiniteGroup) -> Option<usize> {
    let set = g.commutator_set();
    if set.len() != 2 {
        return None;
    }
    set.into_iter().find(|&s| s != g.identity())
}

/// True when `g` is LC with unique commutator s and `star` is the canonical
/// involution: fix central elements, multiply the others by s.
pub fn is_slc_canonical(g: &FiniteGroup, star: &AntiAutomorphism) -> bool {
    if !has_lc_property(g) {
        return false;
    }
    let Some(s) = unique_commutator(g) else {
        return false;
    };
    let center = g.center();
    g.elements().all(|x| {
        let expected = if center.contains(x) { x } else { g.mul(s, x) };
        star.apply(x) == expected
    })
}

/// Structural test for "Q8 times an elementary abelian 2-group": a
/// non-abelian 2-group in which every subgroup is normal, the center has
/// exponent at most 2, and some pair of elements generates a copy of Q8.
/// Every subgroup is normal iff every cyclic subgroup is, which is what
/// gets checked.
pub fn is_hamiltonian_two_group(g: &FiniteGroup) -> bool {
    if g.is_abelian() || !g.order().is_power_of_two() {
        return false;
    }
    for x in g.elements() {
        if !g.is_normal(&g.subgroup_generated(&[x])) {
            return false;
        }
    }
    let center = g.center();
    if center.members().iter().any(|&z| g.element_order(z) > 2) {
        return false;
    }
    contains_quaternion_subgroup(g)
}

fn contains_quaternion_subgroup(g: &FiniteGroup) -> bool {
    let order4: Vec<usize> = g.elements().filter(|&x| g.element_order(x) == 4).collect();
    for &a in &order4 {
        for &b in &order4 {
            if g.mul(b, b) != g.mul(a, a) {
                continue;
            }
            let h = g.subgroup_generated(&[a, b]);
            if h.len() != 8 {
                continue;
            }
            let (sub, _) = g.subgroup_as_group(&h);
            let order2 = sub
                .elements()
                .filter(|&x| sub.element_order(x) == 2)
                .count();
            if !sub.is_abelian() && order2 == 1 {
                return true;
            }
        }
    }
    false
}

/// Classify a non-abelian group with a compatible, non-trivially oriented
/// involution: evaluate the two commutativity conditions for the symmetric
/// subring literally, element by element.
pub fn classify_oriented(
    g: &Arc<FiniteGroup>,
    pair: &OrientedPair,
) -> Result<ClassificationReport> {
    if !pair.compatible {
        return Err(Error::Incompatible);
    }
    if pair.sigma.is_trivial() {
        return Err(Error::TrivialOrientation);
    }
    if g.is_abelian() {
        return Err(Error::AbelianGroup);
    }
    let star = &pair.star;
    let kernel = pair.sigma.kernel();
    let center = g.center();
    let s = unique_commutator(g);
    let lc_group = has_lc_property(g);
    let (kernel_group, _) = g.subgroup_as_group(kernel);
    let lc_kernel = has_lc_property(&kernel_group);
    let kernel_abelian = kernel_group.is_abelian();

    // Condition A: abelian kernel and the complement pointwise fixed.
    let outside_fixed = g
        .elements()
        .filter(|&x| !kernel.contains(x))
        .all(|x| star.apply(x) == x);
    let cond_abelian_kernel = kernel_abelian && outside_fixed;

    // Condition B: both LC, unique commutator, and the involution fixes
    // (ker ∩ center) ∪ (complement \ center) while twisting the rest by s.
    let cond_lc_split = lc_group
        && lc_kernel
        && s.is_some()
        && g.elements().all(|x| {
            let s = s.unwrap();
            let in_kernel = kernel.contains(x);
            let central = center.contains(x);
            let fixed = (in_kernel && central) || (!in_kernel && !central);
            let expected = if fixed { x } else { g.mul(s, x) };
            star.apply(x) == expected
        });

    let mut notes = vec!["char-4 branch cannot occur over a field".to_string()];
    if cond_lc_split {
        // The split condition forces the kernel's center to be the kernel's
        // part of the group center; recompute instead of assuming.
        let kc = kernel_group.center();
        let expected: Vec<usize> = kernel
            .members()
            .iter()
            .enumerate()
            .filter(|&(_, &m)| center.contains(m))
            .map(|(i, _)| i)
            .collect();
        notes.push(format!(
            "center(kernel) == kernel ∩ center(G): {}",
            kc.members() == expected.as_slice()
        ));
    }

    Ok(ClassificationReport {
        group: g.name().to_string(),
        order: g.order(),
        is_abelian: false,
        lc_group,
        lc_kernel,
        unique_commutator: s,
        slc_canonical: is_slc_canonical(g, star),
        cond_abelian_kernel,
        cond_lc_split,
        symmetric_commutes_predicted: cond_abelian_kernel || cond_lc_split,
        notes,
    })
}

/// Report for an abelian group: no conditions to evaluate, the symmetric
/// subring of a commutative algebra always commutes.
pub fn abelian_report(g: &FiniteGroup, note: &str) -> ClassificationReport {
    ClassificationReport {
        group: g.name().to_string(),
        order: g.order(),
        is_abelian: true,
        lc_group: false,
        lc_kernel: false,
        unique_commutator: None,
        slc_canonical: false,
        cond_abelian_kernel: false,
        cond_lc_split: false,
        symmetric_commutes_predicted: false,
        notes: vec![note.to_string()],
    }
}

/// Outcome of classifying G/P for the set P of p-elements.
#[derive(Debug, Clone)]
pub struct ModularClassification {
    pub p: u64,
    pub p_members: Vec<usize>,
    pub induced: InducedPair,
    pub quotient_abelian: bool,
    pub report: ClassificationReport,
}

/// Classify the quotient of `g` by its p-elements under the induced pair.
///
/// The p-element set is computed and its closure tested before anything
/// else, so a failure of closure surfaces as `PNotSubgroup` even for p = 2;
/// the odd-characteristic requirement is enforced after that, mirroring how
/// the pipeline reports findings.
pub fn classify_modular(
    g: &Arc<FiniteGroup>,
    pair: &OrientedPair,
    p: u64,
) -> Result<ModularClassification> {
    if !pair.compatible {
        return Err(Error::Incompatible);
    }
    let pset = g.p_elements(p)?;
    let Some(h) = pset.as_subgroup(g) else {
        return Err(Error::PNotSubgroup { p });
    };
    if !g.is_normal(&h) {
        return Err(Error::NotNormal);
    }
    if p == 2 {
        return Err(Error::InvalidPrime(2));
    }
    let induced = induce_on_quotient(pair, &h)?;
    let quotient = Arc::new(induced.quotient.quotient.clone());
    let quotient_abelian = quotient.is_abelian();
    let report = if quotient_abelian {
        abelian_report(&quotient, "quotient by p-elements is abelian")
    } else {
        classify_oriented(&quotient, &induced.pair)?
    };
    Ok(ModularClassification {
        p,
        p_members: pset.members,
        induced,
        quotient_abelian,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;
    use crate::involution::{
        enumerate_involutions, enumerate_orientations, make_pair, Orientation,
    };

    fn arc(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(spec).unwrap())
    }

    #[test]
    fn lc_property_basics() {
        assert!(!has_lc_property(&arc("C8")));
        assert!(has_lc_property(&arc("D8")));
        assert!(has_lc_property(&arc("Q8")));
        assert!(!has_lc_property(&arc("D12")));
        assert!(!has_lc_property(&arc("D6")));
    }

    #[test]
    fn center_quotient_criterion() {
        assert!(lc_via_center_quotient(&arc("Q8")));
        assert!(lc_via_center_quotient(&arc("D8")));
        assert!(!lc_via_center_quotient(&arc("D12")));
        assert!(!lc_via_center_quotient(&arc("C16")));
    }

    #[test]
    fn lc_criteria_agree_on_small_groups() {
        for spec in [
            "C1", "C2", "C6", "C8", "C2xC2", "C2xC4", "D6", "D8", "D10", "D12", "D16", "Q8", "Q16",
            "Q8xC2", "Q8xC3",
        ] {
            let g = arc(spec);
            let both = has_lc_property(&g) && unique_commutator(&g).is_some();
            assert_eq!(both, lc_via_center_quotient(&g), "{spec}");
        }
    }

    #[test]
    fn unique_commutators() {
        assert_eq!(unique_commutator(&arc("C12")), None);
        assert_eq!(unique_commutator(&arc("Q8")), Some(2));
        assert_eq!(unique_commutator(&arc("D8")), Some(2));
        assert_eq!(unique_commutator(&arc("D16")), None);
    }

    #[test]
    fn slc_canonical_on_small_groups() {
        let q8 = arc("Q8");
        assert!(is_slc_canonical(
            &q8,
            &AntiAutomorphism::classical(q8.clone())
        ));
        let d8 = arc("D8");
        assert!(!is_slc_canonical(
            &d8,
            &AntiAutomorphism::classical(d8.clone())
        ));
        let c4 = arc("C4");
        assert!(!is_slc_canonical(
            &c4,
            &AntiAutomorphism::classical(c4.clone())
        ));
    }

    #[test]
    fn hamiltonian_two_groups_in_the_small_range() {
        for (spec, expected) in [
            ("Q8", true),
            ("Q8xC2", true),
            ("Q16", false),
            ("D8", false),
            ("C2xC2xC2", false),
            ("Q8xC3", false),
        ] {
            assert_eq!(is_hamiltonian_two_group(&arc(spec)), expected, "{spec}");
        }
    }

    #[test]
    fn slc_canonical_classical_iff_hamiltonian() {
        // Over the whole small corpus range: the canonical-involution
        // predicate under the classical involution picks out exactly the
        // Hamiltonian 2-groups.
        for spec in [
            "C1",
            "C4",
            "C8",
            "C16",
            "C2xC2",
            "C2xC4",
            "C2xC2xC2",
            "C2xC2xC2xC2",
            "D6",
            "D8",
            "D10",
            "D12",
            "D16",
            "Q8",
            "Q16",
            "Q8xC2",
        ] {
            let g = arc(spec);
            let classical = AntiAutomorphism::classical(g.clone());
            assert_eq!(
                is_slc_canonical(&g, &classical),
                is_hamiltonian_two_group(&g),
                "{spec}"
            );
        }
    }

    #[test]
    fn classify_rejects_bad_inputs() {
        let g = arc("C6");
        let pair = make_pair(
            AntiAutomorphism::classical(g.clone()),
            Orientation::trivial(g.clone()),
        )
        .unwrap();
        assert!(matches!(
            classify_oriented(&g, &pair),
            Err(Error::TrivialOrientation)
        ));
        let sigma = enumerate_orientations(&g, false).remove(0);
        let pair = make_pair(AntiAutomorphism::classical(g.clone()), sigma).unwrap();
        assert!(matches!(
            classify_oriented(&g, &pair),
            Err(Error::AbelianGroup)
        ));
    }

    #[test]
    fn q8_classical_with_i_kernel_fails_both_conditions() {
        let g = arc("Q8");
        let kernel = g.subgroup_generated(&[1]); // <i>
        let sigma = Orientation::from_kernel(g.clone(), kernel).unwrap();
        let pair = make_pair(AntiAutomorphism::classical(g.clone()), sigma).unwrap();
        let report = classify_oriented(&g, &pair).unwrap();
        // j is outside the kernel and j^-1 = -j != j.
        assert!(!report.cond_abelian_kernel);
        // The kernel <i> is abelian, hence not LC.
        assert!(!report.cond_lc_split);
        assert!(!report.symmetric_commutes_predicted);
    }

    #[test]
    fn q8_fixing_involution_satisfies_condition_a() {
        let g = arc("Q8");
        let kernel = g.subgroup_generated(&[1]);
        let sigma = Orientation::from_kernel(g.clone(), kernel.clone()).unwrap();
        // Search the enumeration for the involution fixing everything
        // outside <i> and inverting i.
        let tau = enumerate_involutions(&g, 16)
            .unwrap()
            .into_iter()
            .find(|t| {
                g.elements()
                    .filter(|&x| !kernel.contains(x))
                    .all(|x| t.apply(x) == x)
                    && t.apply(1) == g.inv(1)
            })
            .expect("the fixing involution exists on Q8");
        let pair = make_pair(tau, sigma).unwrap();
        assert!(pair.compatible);
        let report = classify_oriented(&g, &pair).unwrap();
        assert!(report.cond_abelian_kernel);
        assert!(report.symmetric_commutes_predicted);
    }

    #[test]
    fn modular_classification_of_q8xc3() {
        let g = arc("Q8xC3");
        let kernel = g.subgroup_generated(&[3, 1]);
        let sigma = Orientation::from_kernel(g.clone(), kernel).unwrap();
        let pair = make_pair(AntiAutomorphism::classical(g.clone()), sigma).unwrap();
        let m = classify_modular(&g, &pair, 3).unwrap();
        assert_eq!(m.p_members.len(), 3);
        assert!(!m.quotient_abelian);
        assert_eq!(m.report.order, 8);
        assert!(!m.report.symmetric_commutes_predicted);
    }

    #[test]
    fn modular_classification_findings() {
        let d6 = arc("D6");
        let pair = make_pair(
            AntiAutomorphism::classical(d6.clone()),
            Orientation::trivial(d6.clone()),
        )
        .unwrap();
        assert!(matches!(
            classify_modular(&d6, &pair, 2),
            Err(Error::PNotSubgroup { p: 2 })
        ));

        // p not dividing the order: P is trivial, quotient is the group back.
        let q8 = arc("Q8");
        let sigma = enumerate_orientations(&q8, false).remove(0);
        let pair = make_pair(AntiAutomorphism::classical(q8.clone()), sigma).unwrap();
        let direct = classify_oriented(&q8, &pair).unwrap();
        let m = classify_modular(&q8, &pair, 3).unwrap();
        assert_eq!(m.p_members, vec![0]);
        assert_eq!(
            m.report.symmetric_commutes_predicted,
            direct.symmetric_commutes_predicted
        );
        assert_eq!(m.report.cond_abelian_kernel, direct.cond_abelian_kernel);
        assert_eq!(m.report.cond_lc_split, direct.cond_lc_split);
    }

    #[test]
    fn modular_classification_c6() {
        let g = arc("C6");
        let sigma = enumerate_orientations(&g, false).remove(0); // kernel C3
        let pair = make_pair(AntiAutomorphism::classical(g.clone()), sigma).unwrap();
        let m = classify_modular(&g, &pair, 3).unwrap();
        assert!(m.quotient_abelian);
        assert_eq!(m.induced.quotient.quotient.order(), 2);
        assert!(m.report.is_abelian);
    }
}
