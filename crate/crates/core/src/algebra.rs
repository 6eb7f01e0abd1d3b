//! Arithmetic in the group algebra F_p[G] equipped with an oriented
//! involution.
//!
//! A context fixes the group, an odd prime p, and a compatible
//! (involution, orientation) pair; elements are coefficient vectors over
//! the group basis. The involution acts by
//! `sum a_g g  ->  sum a_g sigma(g) g^*`, which is an algebra involution
//! exactly when the pair is compatible — contexts refuse incompatible
//! pairs.
//!
//! All linear algebra is exact modulo p: dimensions come from ranks, unit
//! tests go through the left-regular representation, and there are no
//! tolerances anywhere.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, SubgroupSet};
use crate::involution::OrientedPair;
use crate::linalg::{self, RowSpace};

static NEXT_CONTEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Default cap on the number of points swept when enumerating symmetric
/// idempotents.
pub const DEFAULT_IDEMPOTENT_CAP: u128 = 1_000_000;

#[derive(Debug)]
pub struct AlgebraContext {
    id: u64,
    group: Arc<FiniteGroup>,
    p: u64,
    pair: OrientedPair,
}

/// A coefficient vector over the group basis, tagged with the context it
/// belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    ctx_id: u64,
    coeffs: Vec<u64>,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

/// A basis of a two-sided ideal of the context's algebra.
#[derive(Debug, Clone)]
pub struct IdealBasis {
    ctx_id: u64,
    basis: Vec<AlgebraElement>,
}

impl IdealBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[AlgebraElement] {
        &self.basis
    }
}

impl AlgebraContext {
    /// Fix F_p[G] with the oriented involution given by `pair`. The prime
    /// must be odd and the pair compatible, otherwise the involution would
    /// not square to the identity.
    pub fn new(group: Arc<FiniteGroup>, p: u64, pair: OrientedPair) -> Result<Arc<Self>> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        if pair.parent().as_ref() != group.as_ref() {
            return Err(Error::ParentMismatch);
        }
        if !pair.compatible {
            return Err(Error::Incompatible);
        }
        Ok(Arc::new(AlgebraContext {
            id: NEXT_CONTEXT_ID.fetch_add(1, Ordering::Relaxed),
            group,
            p,
            pair,
        }))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn pair(&self) -> &OrientedPair {
        &self.pair
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.ctx_id != self.id {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    fn wrap(&self, coeffs: Vec<u64>) -> AlgebraElement {
        AlgebraElement {
            ctx_id: self.id,
            coeffs,
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(vec![0; self.dim()])
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(self.group.identity())
    }

    pub fn basis_element(&self, g: usize) -> AlgebraElement {
        let mut coeffs = vec![0; self.dim()];
        coeffs[g] = 1;
        self.wrap(coeffs)
    }

    /// Wrap raw coefficients, reducing them modulo p.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::ContextMismatch);
        }
        Ok(self.wrap(coeffs.iter().map(|&c| c % self.p).collect()))
    }

    pub fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % self.p)
                .collect(),
        ))
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(
            a.coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + self.p - y) % self.p)
                .collect(),
        ))
    }

    pub fn scalar_mul(&self, c: u64, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        let c = c % self.p;
        Ok(self.wrap(a.coeffs.iter().map(|&x| x * c % self.p).collect()))
    }

    /// The convolution product `(ab)_g = sum over xy = g of a_x b_y`.
    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap(self.mul_raw(&a.coeffs, &b.coeffs)))
    }

    // Indices double as group elements here, so the range loops stay.
    #[allow(clippy::needless_range_loop)]
    fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = self.dim();
        let mut out = vec![0u64; n];
        for x in 0..n {
            let ax = a[x];
            if ax == 0 {
                continue;
            }
            for y in 0..n {
                let by = b[y];
                if by == 0 {
                    continue;
                }
                let t = self.group.mul(x, y);
                out[t] = (out[t] + ax * by) % self.p;
            }
        }
        out
    }

    /// The oriented involution: `sum a_g g -> sum a_g sigma(g) g^*`.
    pub fn apply_star(&self, a: &AlgebraElement) -> AlgebraElement {
        assert_eq!(a.ctx_id, self.id, "element from another context");
        let n = self.dim();
        let mut out = vec![0u64; n];
        for g in 0..n {
            let c = a.coeffs[g];
            if c == 0 {
                continue;
            }
            let target = self.pair.star.apply(g);
            let signed = if self.pair.sigma.sign(g) > 0 {
                c
            } else {
                self.p - c
            };
            out[target] = (out[target] + signed) % self.p;
        }
        self.wrap(out)
    }

    pub fn is_symmetric(&self, a: &AlgebraElement) -> bool {
        self.apply_star(a) == *a
    }

    /// Left-regular representation of `a`: the matrix of b -> a*b over the
    /// group basis, row major.
    pub fn regular_matrix(&self, a: &AlgebraElement) -> Vec<u64> {
        assert_eq!(a.ctx_id, self.id, "element from another context");
        let n = self.dim();
        let mut m = vec![0u64; n * n];
        self.regular_matrix_into(&a.coeffs, &mut m);
        m
    }

    #[allow(clippy::needless_range_loop)]
    pub(crate) fn regular_matrix_into(&self, coeffs: &[u64], out: &mut [u64]) {
        let n = self.dim();
        out.fill(0);
        for x in 0..n {
            let c = coeffs[x];
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let i = self.group.mul(x, j);
                out[i * n + j] = (out[i * n + j] + c) % self.p;
            }
        }
    }

    /// A unit is an element whose regular representation is invertible; in
    /// a finite-dimensional algebra a one-sided inverse is two-sided.
    pub fn is_unit(&self, a: &AlgebraElement) -> bool {
        self.inverse(a).is_ok()
    }

    pub fn inverse(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        let n = self.dim();
        let m = self.regular_matrix(a);
        let mut rhs = vec![0u64; n];
        rhs[self.group.identity()] = 1;
        match linalg::solve_square(self.p, n, &m, &rhs) {
            Some(sol) => Ok(self.wrap(sol)),
            None => Err(Error::NotAUnit),
        }
    }

    pub fn pow(&self, a: &AlgebraElement, k: i64) -> Result<AlgebraElement> {
        self.check(a)?;
        let base = if k < 0 { self.inverse(a)? } else { a.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &sq)?;
            }
            sq = self.mul(&sq, &sq)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Matrix of the oriented involution over the group basis.
    fn star_matrix(&self) -> Vec<u64> {
        let n = self.dim();
        let mut m = vec![0u64; n * n];
        for g in 0..n {
            let t = self.pair.star.apply(g);
            m[t * n + g] = if self.pair.sigma.sign(g) > 0 {
                1
            } else {
                self.p - 1
            };
        }
        m
    }

    /// Basis of the fixed space of the involution, built orbit by orbit:
    /// a star-fixed g contributes `g` when sigma(g) = +1, and an orbit
    /// {g, g^*} contributes `g + sigma(g) g^*`. Completeness is
    /// cross-checked against the kernel rank of (star - id).
    pub fn symmetric_basis(&self) -> Vec<AlgebraElement> {
        let n = self.dim();
        let star = &self.pair.star;
        let sigma = &self.pair.sigma;
        let mut basis = Vec::new();
        for g in 0..n {
            let gs = star.apply(g);
            if gs == g {
                if sigma.sign(g) > 0 {
                    basis.push(self.basis_element(g));
                }
            } else if g < gs && sigma.sign(g) == sigma.sign(gs) {
                let mut coeffs = vec![0u64; n];
                coeffs[g] = 1;
                coeffs[gs] = if sigma.sign(g) > 0 { 1 } else { self.p - 1 };
                basis.push(self.wrap(coeffs));
            }
        }
        // Independent route to the same dimension: n - rank(star - id).
        let m = self.star_matrix();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let sub = if r == c { 1 } else { 0 };
                        (m[r * n + c] + self.p - sub) % self.p
                    })
                    .collect()
            })
            .collect();
        let fixed_dim = n - linalg::rank(self.p, n, &rows);
        assert_eq!(
            basis.len(),
            fixed_dim,
            "orbit basis disagrees with kernel rank of (star - id)"
        );
        basis
    }

    pub fn symmetric_dim(&self) -> usize {
        self.symmetric_basis().len()
    }

    /// Dimension of the anti-fixed space, the kernel of (star + id).
    pub fn skew_dim(&self) -> usize {
        let n = self.dim();
        let m = self.star_matrix();
        let rows: Vec<Vec<u64>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        let add = if r == c { 1 } else { 0 };
                        (m[r * n + c] + add) % self.p
                    })
                    .collect()
            })
            .collect();
        n - linalg::rank(self.p, n, &rows)
    }

    /// True when every pair of symmetric basis elements commutes, which by
    /// bilinearity makes the whole fixed space commute.
    pub fn symmetric_is_commutative(&self) -> bool {
        let basis = self.symmetric_basis();
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                if self.mul_raw(&a.coeffs, &b.coeffs) != self.mul_raw(&b.coeffs, &a.coeffs) {
                    return false;
                }
            }
        }
        true
    }

    /// Class sums of the group: a basis of the center of F_p[G].
    pub fn center_basis(&self) -> Vec<AlgebraElement> {
        self.group
            .conjugacy_classes()
            .into_iter()
            .map(|class| {
                let mut coeffs = vec![0u64; self.dim()];
                for g in class {
                    coeffs[g] = 1;
                }
                self.wrap(coeffs)
            })
            .collect()
    }

    /// True when every symmetric basis element commutes with every group
    /// basis vector, i.e. the fixed space sits inside the center.
    pub fn symmetric_is_central(&self) -> bool {
        let basis = self.symmetric_basis();
        let n = self.dim();
        basis.iter().all(|a| {
            (0..n).all(|g| {
                let e = self.basis_element(g);
                self.mul_raw(&a.coeffs, &e.coeffs) == self.mul_raw(&e.coeffs, &a.coeffs)
            })
        })
    }

    /// Row space spanned by the given elements.
    pub fn row_space(&self, elements: &[AlgebraElement]) -> RowSpace {
        let mut space = RowSpace::new(self.p, self.dim());
        for e in elements {
            space.insert(&e.coeffs);
        }
        space
    }

    /// The group algebra is (von Neumann) regular exactly when p does not
    /// divide the group order.
    pub fn is_regular(&self) -> bool {
        !(self.group.order() as u64).is_multiple_of(self.p)
    }

    /// Kernel of the coefficient-collapse map F_p[G] -> F_p[G/H]: spanned
    /// by { r (h - 1) : r a coset representative, h in H }. The dimension
    /// is n (1 - 1/|H|), verified by rank.
    pub fn delta_ideal(&self, h: &SubgroupSet) -> Result<IdealBasis> {
        let g = &self.group;
        if !g.is_subgroup(h) {
            return Err(Error::InvalidTable("not a subgroup".into()));
        }
        if !g.is_normal(h) {
            return Err(Error::NotNormal);
        }
        let n = self.dim();
        let mut coset_seen = vec![false; n];
        let mut basis = Vec::new();
        for r in 0..n {
            if coset_seen[r] {
                continue;
            }
            for &x in h.members() {
                coset_seen[g.mul(r, x)] = true;
            }
            for &x in h.members() {
                if x == g.identity() {
                    continue;
                }
                let mut coeffs = vec![0u64; n];
                coeffs[g.mul(r, x)] = 1;
                coeffs[r] = (coeffs[r] + self.p - 1) % self.p;
                basis.push(self.wrap(coeffs));
            }
        }
        let expected = n - n / h.len();
        assert_eq!(basis.len(), expected);
        let space = self.row_space(&basis);
        assert_eq!(
            space.dim(),
            expected,
            "coset difference vectors are independent"
        );
        // Two-sided ideal check: closure under left and right multiplication
        // by every group element.
        for v in &basis {
            for x in 0..n {
                let e = self.basis_element(x);
                if !space.contains(&self.mul_raw(&e.coeffs, &v.coeffs))
                    || !space.contains(&self.mul_raw(&v.coeffs, &e.coeffs))
                {
                    return Err(Error::InvalidTable(
                        "delta span is not a two-sided ideal".into(),
                    ));
                }
            }
        }
        Ok(IdealBasis {
            ctx_id: self.id,
            basis,
        })
    }

    /// The augmentation ideal, i.e. the delta ideal of the whole group.
    pub fn augmentation_ideal(&self) -> IdealBasis {
        self.delta_ideal(&self.group.full_subgroup())
            .expect("the whole group is normal")
    }

    /// Least k <= bound with ideal^k = 0, by iterated basis products and
    /// rank. For a nilpotent ideal the power dimensions strictly decrease,
    /// so bound = dim + 1 makes this a complete decision.
    pub fn nilpotency_index(&self, ideal: &IdealBasis, bound: usize) -> Result<Option<usize>> {
        if ideal.ctx_id != self.id {
            return Err(Error::ContextMismatch);
        }
        assert!(bound >= 1);
        let gen_space = self.row_space(&ideal.basis);
        let mut current = gen_space.clone();
        for k in 1..=bound {
            if current.is_zero() {
                return Ok(Some(k));
            }
            if k == bound {
                break;
            }
            let mut next = RowSpace::new(self.p, self.dim());
            for a in current.rows() {
                for b in gen_space.rows() {
                    next.insert(&self.mul_raw(a, b));
                }
            }
            current = next;
        }
        Ok(None)
    }

    /// The two-sided ideal generated by all Lie brackets ab - ba of
    /// symmetric basis elements. Commutators of symmetric units live in
    /// 1 + (this ideal).
    pub fn symmetric_commutator_ideal(&self) -> IdealBasis {
        let basis = self.symmetric_basis();
        let n = self.dim();
        let mut space = RowSpace::new(self.p, n);
        for (i, a) in basis.iter().enumerate() {
            for b in &basis[i + 1..] {
                let ab = self.mul_raw(&a.coeffs, &b.coeffs);
                let ba = self.mul_raw(&b.coeffs, &a.coeffs);
                let diff: Vec<u64> = ab
                    .iter()
                    .zip(&ba)
                    .map(|(&x, &y)| (x + self.p - y) % self.p)
                    .collect();
                space.insert(&diff);
            }
        }
        // Close under left and right multiplication by group elements.
        loop {
            let mut grew = false;
            let rows: Vec<Vec<u64>> = space.rows().to_vec();
            for v in &rows {
                for x in 0..n {
                    let e = self.basis_element(x);
                    grew |= space.insert(&self.mul_raw(&e.coeffs, v));
                    grew |= space.insert(&self.mul_raw(v, &e.coeffs));
                }
            }
            if !grew {
                break;
            }
        }
        IdealBasis {
            ctx_id: self.id,
            basis: space.rows().iter().map(|r| self.wrap(r.clone())).collect(),
        }
    }

    /// Enumerate every symmetric idempotent (sweeping the fixed space) and
    /// report whether they are all central, with the first non-central
    /// witness otherwise.
    pub fn symmetric_idempotents_central(
        &self,
        cap: u128,
    ) -> Result<(bool, Option<AlgebraElement>)> {
        let basis = self.symmetric_basis();
        let d = basis.len();
        let points =
            (self.p as u128)
                .checked_pow(d as u32)
                .ok_or_else(|| Error::BoundExceeded {
                    what: "symmetric idempotent sweep".into(),
                    needed: u128::MAX,
                    bound: cap,
                })?;
        if points > cap {
            return Err(Error::BoundExceeded {
                what: "symmetric idempotent sweep".into(),
                needed: points,
                bound: cap,
            });
        }
        let n = self.dim();
        let mut digits = vec![0u64; d];
        loop {
            let mut coeffs = vec![0u64; n];
            for (c, b) in digits.iter().zip(&basis) {
                if *c == 0 {
                    continue;
                }
                for (out, &x) in coeffs.iter_mut().zip(&b.coeffs) {
                    *out = (*out + c * x) % self.p;
                }
            }
            if self.mul_raw(&coeffs, &coeffs) == coeffs {
                let central = (0..n).all(|g| {
                    let e = self.basis_element(g);
                    self.mul_raw(&coeffs, &e.coeffs) == self.mul_raw(&e.coeffs, &coeffs)
                });
                if !central {
                    return Ok((false, Some(self.wrap(coeffs))));
                }
            }
            if !increment(&mut digits, self.p) {
                return Ok((true, None));
            }
        }
    }
}

/// Odometer step over base-p digit vectors; the last digit moves fastest.
/// Returns false after the all-(p-1) vector wraps to zero.
pub(crate) fn increment(digits: &mut [u64], p: u64) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}
