//! Group involutions, orientations, and compatible oriented pairs.
//!
//! An involution here is an anti-automorphism of order at most two. Every
//! such map is an automorphism composed with inversion, so the exhaustive
//! enumeration walks the automorphism group (built by brute-force extension
//! of generator images) and keeps the maps that square to the identity.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, QuotientResult, SubgroupSet};
use crate::predicates;

/// Default order bound for involution enumeration.
pub const DEFAULT_INVOLUTION_ORDER_BOUND: usize = 16;

/// An anti-automorphism of order at most two, stored as a permutation of
/// element indices.
#[derive(Debug, Clone)]
pub struct AntiAutomorphism {
    parent: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl AntiAutomorphism {
    /// Validate and wrap a permutation as an involution.
    pub fn new(parent: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        let n = parent.order();
        if image.len() != n {
            return Err(Error::InvalidTable("image length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidTable("image is not a permutation".into()));
            }
            seen[x] = true;
        }
        for g in 0..n {
            if image[image[g]] != g {
                return Err(Error::InvalidTable(
                    "map does not square to identity".into(),
                ));
            }
            for h in 0..n {
                if image[parent.mul(g, h)] != parent.mul(image[h], image[g]) {
                    return Err(Error::InvalidTable(format!(
                        "not an anti-homomorphism at ({g},{h})"
                    )));
                }
            }
        }
        Ok(AntiAutomorphism { parent, image })
    }

    /// The classical involution g -> g^-1.
    pub fn classical(parent: Arc<FiniteGroup>) -> Self {
        let image = parent.elements().map(|g| parent.inv(g)).collect();
        AntiAutomorphism { parent, image }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn is_identity_map(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn is_classical(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(g, &x)| x == self.parent.inv(g))
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.parent
            .elements()
            .filter(|&g| self.image[g] == g)
            .collect()
    }
}

/// A homomorphism G -> {+1, -1} with its kernel.
#[derive(Debug, Clone)]
pub struct Orientation {
    parent: Arc<FiniteGroup>,
    sign: Vec<i8>,
    kernel: SubgroupSet,
}

impl Orientation {
    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        let kernel = parent.full_subgroup();
        let sign = vec![1; parent.order()];
        Orientation {
            parent,
            sign,
            kernel,
        }
    }

    /// The orientation whose kernel is the given subgroup, which must have
    /// index 1 or 2. Membership signs of an index-2 subgroup always form a
    /// homomorphism.
    pub fn from_kernel(parent: Arc<FiniteGroup>, kernel: SubgroupSet) -> Result<Self> {
        if !parent.is_subgroup(&kernel) {
            return Err(Error::InvalidTable("kernel is not a subgroup".into()));
        }
        let n = parent.order();
        if kernel.len() != n && kernel.len() * 2 != n {
            return Err(Error::InvalidTable(format!(
                "kernel has index {} (must be 1 or 2)",
                n / kernel.len()
            )));
        }
        let sign = (0..n)
            .map(|g| if kernel.contains(g) { 1 } else { -1 })
            .collect();
        Ok(Orientation {
            parent,
            sign,
            kernel,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    #[inline]
    pub fn sign(&self, g: usize) -> i8 {
        self.sign[g]
    }

    pub fn signs(&self) -> &[i8] {
        &self.sign
    }

    pub fn kernel(&self) -> &SubgroupSet {
        &self.kernel
    }

    pub fn is_trivial(&self) -> bool {
        self.kernel.len() == self.parent.order()
    }
}

/// An involution and an orientation on the same group, with the
/// compatibility flag g g^* in ker(sigma) for all g. Only compatible pairs
/// extend to an algebra involution.
#[derive(Debug, Clone)]
pub struct OrientedPair {
    pub star: AntiAutomorphism,
    pub sigma: Orientation,
    pub compatible: bool,
}

impl OrientedPair {
    pub fn new(star: AntiAutomorphism, sigma: Orientation) -> Result<Self> {
        if !same_group(star.parent(), sigma.parent()) {
            return Err(Error::ParentMismatch);
        }
        let g = star.parent().clone();
        let compatible = g
            .elements()
            .all(|x| sigma.kernel().contains(g.mul(x, star.apply(x))));
        Ok(OrientedPair {
            star,
            sigma,
            compatible,
        })
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        self.star.parent()
    }
}

/// Build an oriented pair, computing the compatibility flag exhaustively.
pub fn make_pair(star: AntiAutomorphism, sigma: Orientation) -> Result<OrientedPair> {
    OrientedPair::new(star, sigma)
}

fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A small generating set, chosen greedily by ascending element index.
pub(crate) fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut have = g.subgroup_generated(&gens);
    while have.len() < g.order() {
        let next = g
            .elements()
            .find(|&x| !have.contains(x))
            .expect("closure smaller than the group");
        gens.push(next);
        have = g.subgroup_generated(&gens);
    }
    gens
}

/// For each element, an expression as (parent element, generator index) in
/// BFS order from the identity, so that maps defined on generators extend
/// to all elements. The identity has no expression.
fn element_expressions(g: &FiniteGroup, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
    let n = g.order();
    let mut expr: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut reached = vec![false; n];
    reached[g.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (k, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if !reached[y] {
                reached[y] = true;
                expr[y] = Some((x, k));
                queue.push(y);
            }
        }
    }
    debug_assert!(reached.iter().all(|&r| r), "generators do not generate");
    expr
}

/// Extend generator images to a full map using the BFS expressions; the
/// result still has to be verified as a homomorphism.
fn extend_from_generators(
    g: &FiniteGroup,
    expr: &[Option<(usize, usize)>],
    images: &[usize],
) -> Vec<usize> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[g.identity()] = g.identity();
    // BFS order guarantees parents are mapped before children.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| depth(expr, x));
    for x in order {
        if map[x] != usize::MAX {
            continue;
        }
        let (parent, k) = expr[x].expect("non-identity element has an expression");
        map[x] = g.mul(map[parent], images[k]);
    }
    map
}

fn depth(expr: &[Option<(usize, usize)>], mut x: usize) -> usize {
    let mut d = 0;
    while let Some((p, _)) = expr[x] {
        x = p;
        d += 1;
    }
    d
}

/// All automorphisms of `g`, as permutations, found by brute-force extension
/// of generator images (candidates pruned by element order).
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = generating_set(g);
    let expr = element_expressions(g, &gens);
    if gens.is_empty() {
        return vec![vec![g.identity()]];
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&gen| {
            let o = g.element_order(gen);
            g.elements().filter(|&x| g.element_order(x) == o).collect()
        })
        .collect();
    let mut autos = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    'outer: loop {
        let images: Vec<usize> = pick.iter().zip(&candidates).map(|(&i, c)| c[i]).collect();
        let map = extend_from_generators(g, &expr, &images);
        if is_automorphism(g, &map) {
            autos.push(map);
        }
        // Odometer over candidate indices.
        for k in (0..pick.len()).rev() {
            pick[k] += 1;
            if pick[k] < candidates[k].len() {
                continue 'outer;
            }
            pick[k] = 0;
        }
        break;
    }
    autos.sort();
    autos
}

fn is_automorphism(g: &FiniteGroup, map: &[usize]) -> bool {
    let n = g.order();
    let mut seen = vec![false; n];
    for &x in map {
        if seen[x] {
            return false;
        }
        seen[x] = true;
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != g.mul(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

/// All involutions of `g` (anti-automorphisms of order <= 2), in a
/// deterministic order. The list always contains the classical involution,
/// and contains the identity map exactly when `g` is abelian.
pub fn enumerate_involutions(
    g: &Arc<FiniteGroup>,
    max_order: usize,
) -> Result<Vec<AntiAutomorphism>> {
    let n = g.order();
    if n > max_order {
        return Err(Error::BoundExceeded {
            what: format!("involution enumeration for {}", g.name()),
            needed: n as u128,
            bound: max_order as u128,
        });
    }
    let mut out = Vec::new();
    for phi in automorphisms(g) {
        let image: Vec<usize> = g.elements().map(|x| phi[g.inv(x)]).collect();
        if g.elements().all(|x| image[image[x]] == x) {
            out.push(image);
        }
    }
    out.sort();
    out.dedup();
    out.into_iter()
        .map(|image| AntiAutomorphism::new(g.clone(), image))
        .collect()
}

/// All orientations of `g`: one per subgroup of index 2 (and the trivial
/// one when asked for). Found by trying every sign assignment on a
/// generating set and keeping the maps that are homomorphisms.
pub fn enumerate_orientations(g: &Arc<FiniteGroup>, include_trivial: bool) -> Vec<Orientation> {
    let gens = generating_set(g);
    let expr = element_expressions(g, &gens);
    let n = g.order();
    let mut seen: Vec<Vec<i8>> = Vec::new();
    for assignment in 0..(1u32 << gens.len()) {
        let gen_signs: Vec<i8> = (0..gens.len())
            .map(|k| if assignment >> k & 1 == 1 { -1 } else { 1 })
            .collect();
        let mut sign = vec![0i8; n];
        sign[g.identity()] = 1;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| depth(&expr, x));
        for x in order {
            if sign[x] != 0 {
                continue;
            }
            let (parent, k) = expr[x].expect("expression exists");
            sign[x] = sign[parent] * gen_signs[k];
        }
        let is_hom = (0..n).all(|a| (0..n).all(|b| sign[g.mul(a, b)] == sign[a] * sign[b]));
        if is_hom && !seen.contains(&sign) {
            seen.push(sign);
        }
    }
    seen.sort_by_key(|s| s.iter().map(|&x| x < 0).collect::<Vec<bool>>());
    seen.into_iter()
        .filter(|s| include_trivial || s.iter().any(|&x| x < 0))
        .map(|sign| {
            let members: Vec<usize> = (0..n).filter(|&x| sign[x] > 0).collect();
            let kernel = g
                .subgroup_from_members(&members)
                .expect("kernel of a homomorphism is a subgroup");
            Orientation {
                parent: g.clone(),
                sign,
                kernel,
            }
        })
        .collect()
}

/// The canonical involution of an LC group with unique non-trivial
/// commutator s: fix central elements, multiply the rest by s. Returns
/// `None` when the group does not carry one.
pub fn slc_canonical_involution(g: &Arc<FiniteGroup>) -> Option<AntiAutomorphism> {
    if !predicates::has_lc_property(g) {
        return None;
    }
    let s = predicates::unique_commutator(g)?;
    let center = g.center();
    let image: Vec<usize> = g
        .elements()
        .map(|x| if center.contains(x) { x } else { g.mul(s, x) })
        .collect();
    AntiAutomorphism::new(g.clone(), image).ok()
}

/// The data of an induced pair on a quotient group.
#[derive(Debug, Clone)]
pub struct InducedPair {
    pub quotient: QuotientResult,
    pub pair: OrientedPair,
}

/// Push an oriented pair down to G/H. Requires H normal, star-invariant,
/// and contained in the orientation kernel.
pub fn induce_on_quotient(pair: &OrientedPair, h: &SubgroupSet) -> Result<InducedPair> {
    let g = pair.parent();
    if !g.is_subgroup(h) {
        return Err(Error::InvalidTable("not a subgroup".into()));
    }
    if !g.is_normal(h) {
        return Err(Error::NotNormal);
    }
    if !h.members().iter().all(|&x| h.contains(pair.star.apply(x))) {
        return Err(Error::NotInvariant);
    }
    if !h.members().iter().all(|&x| pair.sigma.kernel().contains(x)) {
        return Err(Error::NotInKernel);
    }
    let q = g.quotient(h)?;
    let qn = q.quotient.order();
    let quotient = Arc::new(q.quotient.clone());
    // Representatives: first parent element mapping onto each coset.
    let mut rep = vec![usize::MAX; qn];
    for x in g.elements() {
        let c = q.projection[x];
        if rep[c] == usize::MAX {
            rep[c] = x;
        }
    }
    let star_image: Vec<usize> = (0..qn)
        .map(|c| q.projection[pair.star.apply(rep[c])])
        .collect();
    let sign: Vec<i8> = (0..qn).map(|c| pair.sigma.sign(rep[c])).collect();
    // Well-definedness: every member of a coset must agree with its
    // representative.
    for x in g.elements() {
        let c = q.projection[x];
        if q.projection[pair.star.apply(x)] != star_image[c] {
            return Err(Error::NotInvariant);
        }
        if pair.sigma.sign(x) != sign[c] {
            return Err(Error::NotInKernel);
        }
    }
    let star = AntiAutomorphism::new(quotient.clone(), star_image)?;
    let members: Vec<usize> = (0..qn).filter(|&c| sign[c] > 0).collect();
    let kernel = quotient.subgroup_from_members(&members)?;
    let sigma = Orientation {
        parent: quotient,
        sign,
        kernel,
    };
    let pair = OrientedPair::new(star, sigma)?;
    Ok(InducedPair { quotient: q, pair })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    fn arc(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(build_group(spec).unwrap())
    }

    #[test]
    fn classical_is_always_valid() {
        for spec in ["C1", "C6", "D8", "Q8", "Q16", "Q8xC3"] {
            let g = arc(spec);
            let star = AntiAutomorphism::classical(g.clone());
            AntiAutomorphism::new(g, star.image().to_vec()).unwrap();
        }
    }

    #[test]
    fn classical_fixed_points_on_q8() {
        let g = arc("Q8");
        let star = AntiAutomorphism::classical(g);
        // Fixed points of inversion are the elements of order <= 2.
        assert_eq!(star.fixed_points(), vec![0, 2]);
        for x in 0..8 {
            assert_eq!(star.apply(star.apply(x)), x);
        }
    }

    #[test]
    fn involution_counts_on_cyclic_groups() {
        assert_eq!(enumerate_involutions(&arc("C2"), 16).unwrap().len(), 1);
        let c4 = enumerate_involutions(&arc("C4"), 16).unwrap();
        assert_eq!(c4.len(), 2);
        assert!(c4.iter().any(|t| t.is_identity_map()));
        assert!(c4.iter().any(|t| t.is_classical()));
    }

    #[test]
    fn involutions_contain_classical_and_identity_iff_abelian() {
        for spec in ["C8", "C2xC2", "D8", "Q8", "D6"] {
            let g = arc(spec);
            let invs = enumerate_involutions(&g, 16).unwrap();
            assert!(invs.iter().any(|t| t.is_classical()), "{spec}");
            assert_eq!(
                invs.iter().any(|t| t.is_identity_map()),
                g.is_abelian(),
                "{spec}"
            );
        }
    }

    #[test]
    fn involution_enumeration_respects_bound() {
        assert!(matches!(
            enumerate_involutions(&arc("Q8xC3"), 16),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn involutions_preserve_element_order() {
        for spec in ["D8", "Q8", "C2xC4"] {
            let g = arc(spec);
            for t in enumerate_involutions(&g, 16).unwrap() {
                for x in g.elements() {
                    assert_eq!(g.element_order(t.apply(x)), g.element_order(x));
                }
            }
        }
    }

    #[test]
    fn orientation_counts() {
        assert_eq!(enumerate_orientations(&arc("C3"), false).len(), 0);
        assert_eq!(enumerate_orientations(&arc("C2"), false).len(), 1);
        assert_eq!(enumerate_orientations(&arc("Q8"), false).len(), 3);
        assert_eq!(enumerate_orientations(&arc("D6"), false).len(), 1);
        assert_eq!(enumerate_orientations(&arc("C2xC2xC2xC2"), false).len(), 15);
        assert_eq!(enumerate_orientations(&arc("C3"), true).len(), 1);
    }

    #[test]
    fn nontrivial_orientations_split_evenly() {
        for spec in ["C2", "C6", "D8", "Q8", "Q16", "Q8xC3"] {
            let g = arc(spec);
            for o in enumerate_orientations(&g, false) {
                let minus = g.elements().filter(|&x| o.sign(x) < 0).count();
                assert_eq!(minus * 2, g.order(), "{spec}");
                assert_eq!(o.kernel().len() * 2, g.order(), "{spec}");
            }
        }
    }

    #[test]
    fn q8_orientation_kernels_are_the_cyclic_fours() {
        let g = arc("Q8");
        for o in enumerate_orientations(&g, false) {
            assert_eq!(o.kernel().len(), 4);
            let (sub, _) = g.subgroup_as_group(o.kernel());
            assert!(sub.is_abelian());
            assert_eq!(sub.elements().map(|x| sub.element_order(x)).max(), Some(4));
        }
    }

    #[test]
    fn classical_pairs_are_compatible() {
        for spec in ["C6", "D8", "Q8", "Q8xC3"] {
            let g = arc(spec);
            for sigma in enumerate_orientations(&g, true) {
                let pair = make_pair(AntiAutomorphism::classical(g.clone()), sigma).unwrap();
                assert!(
                    pair.compatible,
                    "{spec}: g g^-1 = 1 is always in the kernel"
                );
            }
        }
    }

    #[test]
    fn identity_map_pair_on_c4() {
        let g = arc("C4");
        let id = enumerate_involutions(&g, 16)
            .unwrap()
            .into_iter()
            .find(|t| t.is_identity_map())
            .unwrap();
        let kernel = g.subgroup_generated(&[2]);
        let sigma = Orientation::from_kernel(g.clone(), kernel).unwrap();
        let pair = make_pair(id, sigma).unwrap();
        // g * g lands in <g^2> for every g.
        assert!(pair.compatible);
    }

    #[test]
    fn mismatched_parents_are_rejected() {
        let a = arc("C4");
        let b = arc("D8");
        let star = AntiAutomorphism::classical(a);
        let sigma = Orientation::trivial(b);
        assert!(matches!(make_pair(star, sigma), Err(Error::ParentMismatch)));
    }

    #[test]
    fn induce_trivial_subgroup_is_isomorphic() {
        let g = arc("Q8");
        let star = AntiAutomorphism::classical(g.clone());
        let sigma = enumerate_orientations(&g, false).remove(0);
        let pair = make_pair(star, sigma).unwrap();
        let induced = induce_on_quotient(&pair, &g.trivial_subgroup()).unwrap();
        assert_eq!(induced.quotient.quotient.order(), 8);
        assert_eq!(induced.pair.star.image(), pair.star.image());
        assert_eq!(induced.pair.sigma.signs(), pair.sigma.signs());
    }

    #[test]
    fn induce_rejects_subgroup_outside_kernel() {
        let g = arc("C4");
        let star = AntiAutomorphism::classical(g.clone());
        let sigma = enumerate_orientations(&g, false).remove(0); // kernel <g^2>
        let pair = make_pair(star, sigma).unwrap();
        // The whole group is not inside an index-2 kernel.
        let h = g.full_subgroup();
        assert!(matches!(
            induce_on_quotient(&pair, &h),
            Err(Error::NotInKernel)
        ));
    }

    #[test]
    fn induce_q8xc3_by_p_part() {
        let g = arc("Q8xC3");
        let star = AntiAutomorphism::classical(g.clone());
        // Kernel <i> x C3: generated by (i, 0) -> index 3 and (1, c) -> index 1.
        let kernel = g.subgroup_generated(&[3, 1]);
        assert_eq!(kernel.len(), 12);
        let sigma = Orientation::from_kernel(g.clone(), kernel).unwrap();
        let pair = make_pair(star, sigma).unwrap();
        assert!(pair.compatible);
        let p = g.p_elements(3).unwrap();
        let h = p.as_subgroup(&g).unwrap();
        assert_eq!(h.len(), 3);
        let induced = induce_on_quotient(&pair, &h).unwrap();
        assert_eq!(induced.quotient.quotient.order(), 8);
        assert!(induced.pair.compatible);
        assert!(!induced.pair.sigma.is_trivial());
        // The induced involution is still the classical one on the quotient.
        assert!(induced.pair.star.is_classical());
    }

    #[test]
    fn canonical_involution_on_q8_is_classical() {
        let g = arc("Q8");
        let tau = slc_canonical_involution(&g).unwrap();
        assert!(tau.is_classical());
        assert!(slc_canonical_involution(&arc("C4")).is_none());
        assert!(slc_canonical_involution(&arc("D16")).is_none());
        // D8 carries a canonical involution distinct from the classical one.
        let d8 = arc("D8");
        let tau = slc_canonical_involution(&d8).unwrap();
        assert!(!tau.is_classical());
    }
}
