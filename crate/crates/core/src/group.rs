//! Finite groups stored as dense multiplication tables.
//!
//! Elements are the indices `0..n`. Every constructor places the identity at
//! index 0; tables supplied from the outside may put it anywhere and the
//! `identity` field records where. All structure computations (center,
//! commutators, quotients, p-elements) are exhaustive loops over the table,
//! which is the point: the groups in play never exceed order 64.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Orders up to this bound get a full O(n^3) associativity check at
/// construction; larger tables are checked on sampled triples.
pub const FULL_ASSOC_CHECK_BOUND: usize = 64;

const SAMPLED_ASSOC_TRIPLES: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    identity: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

/// A subgroup given by its sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSet {
    parent_order: usize,
    members: Vec<usize>,
}

impl SubgroupSet {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// A quotient group together with the projection map from the parent.
#[derive(Debug, Clone)]
pub struct QuotientResult {
    pub quotient: FiniteGroup,
    pub projection: Vec<usize>,
}

/// The set of elements whose order is a power of `p`, plus whether that set
/// is closed under multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PElementSet {
    pub p: u64,
    pub members: Vec<usize>,
    pub is_subgroup: bool,
}

impl PElementSet {
    pub fn as_subgroup(&self, g: &FiniteGroup) -> Option<SubgroupSet> {
        self.is_subgroup.then(|| SubgroupSet {
            parent_order: g.order(),
            members: self.members.clone(),
        })
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteGroup {
    /// Build a group from a raw table, locating the identity and inverses
    /// and checking the group axioms.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in table {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::InvalidTable(format!("entry {x} out of range")));
                }
                mul.push(x);
            }
        }
        Self::from_flat(name.into(), n, mul)
    }

    fn from_flat(name: String, n: usize, mul: Vec<usize>) -> Result<Self> {
        // Identity: a two-sided one.
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul[e * n + g] == g && mul[g * n + e] == g))
            .ok_or_else(|| Error::InvalidTable("no two-sided identity".into()))?;
        // Latin square: rows and columns are permutations.
        for g in 0..n {
            let mut seen_row = vec![false; n];
            let mut seen_col = vec![false; n];
            for h in 0..n {
                let r = mul[g * n + h];
                let c = mul[h * n + g];
                if seen_row[r] || seen_col[c] {
                    return Err(Error::InvalidTable(format!(
                        "row or column {g} repeats an element"
                    )));
                }
                seen_row[r] = true;
                seen_col[c] = true;
            }
        }
        // Two-sided inverses.
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            let h = (0..n)
                .find(|&h| mul[g * n + h] == identity && mul[h * n + g] == identity)
                .ok_or_else(|| Error::InvalidTable(format!("{g} has no two-sided inverse")))?;
            inv[g] = h;
        }
        // Associativity: full check under the bound, sampled above it.
        let assoc = |a: usize, b: usize, c: usize| {
            mul[mul[a * n + b] * n + c] == mul[a * n + mul[b * n + c]]
        };
        if n <= FULL_ASSOC_CHECK_BOUND {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x67726f75706c6162u64; // fixed seed, deterministic
            for _ in 0..SAMPLED_ASSOC_TRIPLES {
                let a = (splitmix64(&mut state) % n as u64) as usize;
                let b = (splitmix64(&mut state) % n as u64) as usize;
                let c = (splitmix64(&mut state) % n as u64) as usize;
                if !assoc(a, b, c) {
                    return Err(Error::InvalidTable(format!(
                        "associativity fails at ({a},{b},{c})"
                    )));
                }
            }
        }
        Ok(FiniteGroup {
            name,
            n,
            identity,
            mul,
            inv,
        })
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = (a + b) % n;
            }
        }
        Self::from_flat(format!("C{n}"), n, mul).expect("cyclic table is a group")
    }

    /// Dihedral group of order `order` (so `order/2` rotations). Index `i`
    /// with `i < n` is the rotation r^i; index `n + i` is the reflection
    /// r^i s.
    pub fn dihedral(order: usize) -> Self {
        assert!(order >= 2 && order.is_multiple_of(2));
        let n = order / 2;
        let m = order;
        let mut mul = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let (ar, af) = (a % n, a >= n);
                let (br, bf) = (b % n, b >= n);
                let v = match (af, bf) {
                    (false, false) => (ar + br) % n,
                    (false, true) => n + (ar + br) % n,
                    (true, false) => n + (ar + n - br) % n,
                    (true, true) => (ar + n - br) % n,
                };
                mul[a * m + b] = v;
            }
        }
        Self::from_flat(format!("D{order}"), m, mul).expect("dihedral table is a group")
    }

    /// Generalized quaternion group of order `order` (a multiple of 4, at
    /// least 8). Index `i < 2m` is a^i; index `2m + i` is a^i b, where
    /// a^(2m) = 1, b^2 = a^m, and b a = a^(-1) b.
    pub fn quaternion(order: usize) -> Self {
        assert!(order >= 8 && order.is_multiple_of(4));
        let m2 = order / 2; // number of powers of a
        let half = m2 / 2; // b^2 = a^half
        let mm = order;
        let mut mul = vec![0; mm * mm];
        for a in 0..mm {
            for b in 0..mm {
                let (ar, af) = (a % m2, a >= m2);
                let (br, bf) = (b % m2, b >= m2);
                let v = match (af, bf) {
                    (false, false) => (ar + br) % m2,
                    (false, true) => m2 + (ar + br) % m2,
                    (true, false) => m2 + (ar + m2 - br) % m2,
                    (true, true) => (ar + m2 - br + half) % m2,
                };
                mul[a * mm + b] = v;
            }
        }
        Self::from_flat(format!("Q{order}"), mm, mul).expect("quaternion table is a group")
    }

    /// Direct product; the element (x, y) gets index `x * |B| + y`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let n = a.n * b.n;
        let mut mul = vec![0; n * n];
        for x1 in 0..a.n {
            for y1 in 0..b.n {
                for x2 in 0..a.n {
                    for y2 in 0..b.n {
                        let i = x1 * b.n + y1;
                        let j = x2 * b.n + y2;
                        mul[i * n + j] = a.mul(x1, x2) * b.n + b.mul(y1, y2);
                    }
                }
            }
        }
        Self::from_flat(format!("{}x{}", a.name, b.name), n, mul).expect("product table is a group")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// The commutator (g, h) = g^-1 h^-1 g h.
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn commutator_set(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for g in 0..self.n {
            for h in 0..self.n {
                out.insert(self.commutator(g, h));
            }
        }
        out
    }

    pub fn center(&self) -> SubgroupSet {
        let members = (0..self.n)
            .filter(|&g| (0..self.n).all(|h| self.mul(g, h) == self.mul(h, g)))
            .collect();
        SubgroupSet {
            parent_order: self.n,
            members,
        }
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> SubgroupSet {
        let mut mask = vec![false; self.n];
        mask[self.identity] = true;
        for &g in gens {
            mask[g] = true;
        }
        // Closure under multiplication; inverses come for free in a finite
        // group.
        loop {
            let mut grew = false;
            let current: Vec<usize> = (0..self.n).filter(|&g| mask[g]).collect();
            for &a in &current {
                for &b in &current {
                    let c = self.mul(a, b);
                    if !mask[c] {
                        mask[c] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        SubgroupSet {
            parent_order: self.n,
            members: (0..self.n).filter(|&g| mask[g]).collect(),
        }
    }

    pub fn is_subgroup(&self, h: &SubgroupSet) -> bool {
        h.parent_order == self.n
            && h.contains(self.identity)
            && h.members
                .iter()
                .all(|&a| h.members.iter().all(|&b| h.contains(self.mul(a, b))))
    }

    pub fn is_normal(&self, h: &SubgroupSet) -> bool {
        (0..self.n).all(|g| {
            h.members
                .iter()
                .all(|&x| h.contains(self.mul(self.mul(g, x), self.inv(g))))
        })
    }

    /// Quotient by a normal subgroup. Cosets are numbered in order of their
    /// least member, so the identity coset is element 0.
    pub fn quotient(&self, h: &SubgroupSet) -> Result<QuotientResult> {
        if !self.is_subgroup(h) {
            return Err(Error::InvalidTable("not a subgroup".into()));
        }
        if !self.is_normal(h) {
            return Err(Error::NotNormal);
        }
        let mut coset = vec![usize::MAX; self.n];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.n {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &x in &h.members {
                coset[self.mul(g, x)] = id;
            }
        }
        let q = reps.len();
        let mut table = vec![vec![0usize; q]; q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i][j] = coset[self.mul(a, b)];
            }
        }
        let quotient = FiniteGroup::from_table(format!("{}/H{}", self.name, h.len()), &table)?;
        // The projection is a homomorphism by construction; keep the check
        // as a guard on the coset bookkeeping.
        for a in 0..self.n {
            for b in 0..self.n {
                debug_assert_eq!(coset[self.mul(a, b)], quotient.mul(coset[a], coset[b]));
            }
        }
        Ok(QuotientResult {
            quotient,
            projection: coset,
        })
    }

    /// Elements whose order is a power of `p`, and whether they close under
    /// multiplication.
    pub fn p_elements(&self, p: u64) -> Result<PElementSet> {
        if !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        let members: Vec<usize> = (0..self.n)
            .filter(|&g| {
                let mut o = self.element_order(g) as u64;
                while o.is_multiple_of(p) {
                    o /= p;
                }
                o == 1
            })
            .collect();
        let is_subgroup = members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| members.binary_search(&self.mul(a, b)).is_ok())
        });
        Ok(PElementSet {
            p,
            members,
            is_subgroup,
        })
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut classes = Vec::new();
        for g in 0..self.n {
            if seen[g] {
                continue;
            }
            let mut class: BTreeSet<usize> = BTreeSet::new();
            for h in 0..self.n {
                class.insert(self.mul(self.mul(h, g), self.inv(h)));
            }
            let class: Vec<usize> = class.into_iter().collect();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Restrict the table to a subgroup, renumbering members in ascending
    /// order. Returns the new group and the member list (new index ->
    /// parent element).
    pub fn subgroup_as_group(&self, h: &SubgroupSet) -> (FiniteGroup, Vec<usize>) {
        assert!(self.is_subgroup(h), "subgroup_as_group needs a subgroup");
        let members = h.members.clone();
        let mut back = vec![usize::MAX; self.n];
        for (i, &m) in members.iter().enumerate() {
            back[m] = i;
        }
        let k = members.len();
        let mut table = vec![vec![0usize; k]; k];
        for (i, &a) in members.iter().enumerate() {
            for (j, &b) in members.iter().enumerate() {
                table[i][j] = back[self.mul(a, b)];
            }
        }
        let g = FiniteGroup::from_table(format!("{}<{}", self.name, k), &table)
            .expect("subgroup table is a group");
        (g, members)
    }

    /// Order 4 with every non-identity element of order 2. This is the only
    /// isomorphism test the crate needs.
    pub fn is_klein_four(&self) -> bool {
        self.n == 4 && (0..4).all(|g| g == self.identity || self.element_order(g) == 2)
    }

    pub fn trivial_subgroup(&self) -> SubgroupSet {
        SubgroupSet {
            parent_order: self.n,
            members: vec![self.identity],
        }
    }

    pub fn full_subgroup(&self) -> SubgroupSet {
        SubgroupSet {
            parent_order: self.n,
            members: (0..self.n).collect(),
        }
    }

    pub fn subgroup_from_members(&self, members: &[usize]) -> Result<SubgroupSet> {
        let mut ms: Vec<usize> = members.to_vec();
        ms.sort_unstable();
        ms.dedup();
        let h = SubgroupSet {
            parent_order: self.n,
            members: ms,
        };
        if !self.is_subgroup(&h) {
            return Err(Error::InvalidTable("member set is not a subgroup".into()));
        }
        Ok(h)
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.n)
    }
}

/// Parsed form of the group spec grammar: `C<n>`, `D<2n>`, `Q8`, `Q16`,
/// products joined with `x`, or a JSON object `{"name":.., "table":[[..]]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table {
        name: String,
        table: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup> {
        match self {
            GroupSpec::Cyclic(n) => {
                if *n == 0 {
                    return Err(Error::SpecParse("C0 is not a group".into()));
                }
                Ok(FiniteGroup::cyclic(*n))
            }
            GroupSpec::Dihedral(o) => {
                if *o < 2 || *o % 2 != 0 {
                    return Err(Error::SpecParse(format!("D{o} needs an even order >= 2")));
                }
                Ok(FiniteGroup::dihedral(*o))
            }
            GroupSpec::Quaternion(o) => {
                if *o != 8 && *o != 16 {
                    return Err(Error::SpecParse(format!("Q{o}: only Q8 and Q16 are built")));
                }
                Ok(FiniteGroup::quaternion(*o))
            }
            GroupSpec::Product(a, b) => Ok(FiniteGroup::product(&a.build()?, &b.build()?)),
            GroupSpec::Table { name, table } => FiniteGroup::from_table(name.clone(), table),
        }
    }

    fn parse_atom(s: &str) -> Result<GroupSpec> {
        let err = || Error::SpecParse(format!("bad atom {s:?}"));
        if let Some(num) = s.strip_prefix('C') {
            return num.parse().map(GroupSpec::Cyclic).map_err(|_| err());
        }
        if let Some(num) = s.strip_prefix('D') {
            return num.parse().map(GroupSpec::Dihedral).map_err(|_| err());
        }
        if let Some(num) = s.strip_prefix('Q') {
            return num.parse().map(GroupSpec::Quaternion).map_err(|_| err());
        }
        Err(err())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<GroupSpec> {
        let s = s.trim();
        if s.starts_with('{') {
            // JSON form.
            let v: serde_json::Value =
                serde_json::from_str(s).map_err(|e| Error::SpecParse(e.to_string()))?;
            let name = v
                .get("name")
                .and_then(|x| x.as_str())
                .unwrap_or("table")
                .to_string();
            let table = v
                .get("table")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::SpecParse("missing \"table\" array".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| Error::SpecParse("table rows must be arrays".into()))?
                        .iter()
                        .map(|e| {
                            e.as_u64().map(|x| x as usize).ok_or_else(|| {
                                Error::SpecParse("table entries must be integers".into())
                            })
                        })
                        .collect::<Result<Vec<usize>>>()
                })
                .collect::<Result<Vec<Vec<usize>>>>()?;
            return Ok(GroupSpec::Table { name, table });
        }
        let mut parts = s.split('x');
        let first = parts
            .next()
            .ok_or_else(|| Error::SpecParse("empty spec".into()))?;
        let mut spec = GroupSpec::parse_atom(first)?;
        for part in parts {
            spec = GroupSpec::Product(Box::new(spec), Box::new(GroupSpec::parse_atom(part)?));
        }
        Ok(spec)
    }
}

/// Parse and build in one step.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    spec.parse::<GroupSpec>()?.build()
}
