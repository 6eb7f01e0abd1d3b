//! Free-group words and brute-force identity checks over unit sets.
//!
//! Units of F_p[G] are enumerated exhaustively: the full algebra is swept
//! coefficient by coefficient, the symmetric units by sweeping only the
//! fixed space (whose basis is known exactly). Word checks then run over
//! every argument tuple, with the lexicographically least failing tuple
//! reported as a replayable witness.

use std::sync::Arc;

use crate::algebra::{increment, AlgebraContext, AlgebraElement};
use crate::error::{Error, Result};

/// Default cap on swept points for unit enumeration.
pub const DEFAULT_UNIT_SPACE_CAP: u128 = 10_000_000;
/// Default cap on argument tuples for identity checks.
pub const DEFAULT_TUPLE_CAP: u128 = 100_000_000;

/// One letter of a reduced word: a variable and a nonzero exponent.
/// Variables are 0-based in memory; the text grammar writes `x1`, `x2`, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Letter {
    pub var: usize,
    pub exp: i32,
}

/// A non-trivial reduced word in free-group variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordIdentity {
    arity: usize,
    letters: Vec<Letter>,
}

impl WordIdentity {
    /// Reduce and validate. Adjacent letters in the same variable merge;
    /// a word that cancels away entirely is rejected.
    pub fn new(arity: usize, letters: Vec<(usize, i32)>) -> Result<Self> {
        let mut reduced: Vec<Letter> = Vec::new();
        for (var, exp) in letters {
            if var >= arity {
                return Err(Error::WordParse(format!(
                    "variable x{} outside arity {arity}",
                    var + 1
                )));
            }
            push_reduced(&mut reduced, Letter { var, exp });
        }
        if reduced.is_empty() {
            return Err(Error::TrivialWord);
        }
        Ok(WordIdentity {
            arity,
            letters: reduced,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The inverse word: reversed letters with negated exponents.
    pub fn inverse(&self) -> Self {
        WordIdentity {
            arity: self.arity,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    var: l.var,
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    /// The group commutator (v, w) = v^-1 w^-1 v w.
    pub fn commutator(v: &WordIdentity, w: &WordIdentity) -> Result<Self> {
        let arity = v.arity.max(w.arity);
        let mut letters: Vec<(usize, i32)> = Vec::new();
        for l in v.inverse().letters {
            letters.push((l.var, l.exp));
        }
        for l in w.inverse().letters {
            letters.push((l.var, l.exp));
        }
        for l in &v.letters {
            letters.push((l.var, l.exp));
        }
        for l in &w.letters {
            letters.push((l.var, l.exp));
        }
        WordIdentity::new(arity, letters)
    }

    /// The standard two-variable commutator word (x1, x2).
    pub fn commutator_word() -> Self {
        WordIdentity {
            arity: 2,
            letters: vec![
                Letter { var: 0, exp: -1 },
                Letter { var: 1, exp: -1 },
                Letter { var: 0, exp: 1 },
                Letter { var: 1, exp: 1 },
            ],
        }
    }

    /// Parse the word grammar: `x<i>` variables, `w^<k>` powers,
    /// juxtaposition for products, `(w1,w2)` for commutators.
    pub fn parse(input: &str) -> Result<Self> {
        let mut parser = Parser {
            chars: input.trim().chars().collect(),
            pos: 0,
        };
        let letters = parser.word()?;
        parser.skip_ws();
        if parser.pos != parser.chars.len() {
            return Err(Error::WordParse(format!(
                "unexpected input at offset {}",
                parser.pos
            )));
        }
        let arity = letters.iter().map(|&(v, _)| v + 1).max().unwrap_or(0);
        WordIdentity::new(arity, letters)
    }
}

impl std::fmt::Display for WordIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for l in &self.letters {
            write!(f, "x{}", l.var + 1)?;
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if l.exp == 0 {
        return;
    }
    if let Some(last) = out.last_mut() {
        if last.var == l.var {
            last.exp += l.exp;
            if last.exp == 0 {
                out.pop();
            }
            return;
        }
    }
    out.push(l);
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::WordParse(format!("expected integer at offset {start}")))
    }

    /// word := factor+
    fn word(&mut self) -> Result<Vec<(usize, i32)>> {
        let mut letters = Vec::new();
        let mut any = false;
        while matches!(self.peek(), Some('x') | Some('(')) {
            letters.extend(self.factor()?);
            any = true;
        }
        if !any {
            return Err(Error::WordParse("expected a variable or commutator".into()));
        }
        Ok(letters)
    }

    /// factor := primary ['^' integer]
    fn factor(&mut self) -> Result<Vec<(usize, i32)>> {
        let base = self.primary()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let k = self.integer()?;
            let k32 =
                i32::try_from(k).map_err(|_| Error::WordParse("exponent out of range".into()))?;
            return Ok(repeat_word(&base, k32));
        }
        Ok(base)
    }

    /// primary := 'x' digits | '(' word ',' word ')'
    fn primary(&mut self) -> Result<Vec<(usize, i32)>> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                let i = self.integer()?;
                if i < 1 {
                    return Err(Error::WordParse("variables are numbered from x1".into()));
                }
                Ok(vec![(i as usize - 1, 1)])
            }
            Some('(') => {
                self.pos += 1;
                let v = self.word()?;
                if self.peek() != Some(',') {
                    return Err(Error::WordParse("expected ',' inside commutator".into()));
                }
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(')') {
                    return Err(Error::WordParse("expected ')'".into()));
                }
                self.pos += 1;
                // (v, w) = v^-1 w^-1 v w
                let mut out = invert_word(&v);
                out.extend(invert_word(&w));
                out.extend(v);
                out.extend(w);
                Ok(out)
            }
            other => Err(Error::WordParse(format!("unexpected {other:?}"))),
        }
    }
}

fn invert_word(w: &[(usize, i32)]) -> Vec<(usize, i32)> {
    w.iter().rev().map(|&(v, e)| (v, -e)).collect()
}

fn repeat_word(w: &[(usize, i32)], k: i32) -> Vec<(usize, i32)> {
    if k == 0 {
        return Vec::new();
    }
    let base = if k > 0 { w.to_vec() } else { invert_word(w) };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        out.extend(base.iter().copied());
    }
    out
}

/// A set of units of one context, enumerated exhaustively.
#[derive(Debug, Clone)]
pub struct UnitSet {
    ctx: Arc<AlgebraContext>,
    units: Vec<AlgebraElement>,
    symmetric_only: bool,
}

impl UnitSet {
    pub fn units(&self) -> &[AlgebraElement] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn symmetric_only(&self) -> bool {
        self.symmetric_only
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }
}

/// Enumerate all units, or all symmetric units, of the context.
///
/// The full sweep visits p^n coefficient vectors; the symmetric sweep
/// visits p^d points of the fixed space. Each candidate is tested for
/// invertibility through its left-regular representation.
pub fn enumerate_units(
    ctx: &Arc<AlgebraContext>,
    symmetric_only: bool,
    cap: u128,
) -> Result<UnitSet> {
    let n = ctx.dim();
    let p = ctx.prime();
    let basis: Vec<AlgebraElement> = if symmetric_only {
        ctx.symmetric_basis()
    } else {
        ctx.group()
            .elements()
            .map(|g| ctx.basis_element(g))
            .collect()
    };
    let d = basis.len();
    let points = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if points > cap {
        return Err(Error::BoundExceeded {
            what: format!(
                "{} unit sweep of {}",
                if symmetric_only { "symmetric" } else { "full" },
                ctx.group().name()
            ),
            needed: points,
            bound: cap,
        });
    }
    // Every sign homomorphism of the group extends to an algebra map onto
    // F_p, so a candidate vanishing under one cannot be a unit. This only
    // short-circuits rejections; accepted candidates still go through the
    // regular-representation test.
    let functionals: Vec<Vec<u64>> = crate::involution::enumerate_orientations(ctx.group(), true)
        .into_iter()
        .map(|o| {
            (0..n)
                .map(|g| if o.sign(g) > 0 { 1 } else { p - 1 })
                .collect()
        })
        .collect();
    let mut units = Vec::new();
    let mut digits = vec![0u64; d];
    let mut coeffs = vec![0u64; n];
    let mut scratch_m = vec![0u64; n * n];
    let mut scratch_b = vec![0u64; n];
    let identity = ctx.group().identity();
    loop {
        coeffs.fill(0);
        for (c, b) in digits.iter().zip(&basis) {
            if *c == 0 {
                continue;
            }
            for (out, &x) in coeffs.iter_mut().zip(b.coeffs()) {
                *out = (*out + c * x) % p;
            }
        }
        let killed_by_character = functionals.iter().any(|f| {
            coeffs
                .iter()
                .zip(f)
                .fold(0u64, |acc, (&c, &w)| (acc + c * w) % p)
                == 0
        });
        if !killed_by_character {
            ctx.regular_matrix_into(&coeffs, &mut scratch_m);
            scratch_b.fill(0);
            scratch_b[identity] = 1;
            if crate::linalg::solve_square_in_place(p, n, &mut scratch_m, &mut scratch_b) {
                units.push(ctx.from_coeffs(&coeffs)?);
            }
        }
        if !increment(&mut digits, p) {
            break;
        }
    }
    Ok(UnitSet {
        ctx: ctx.clone(),
        units,
        symmetric_only,
    })
}

/// Evaluate a word at the given unit arguments. Inverses are computed via
/// the regular representation and cached per argument.
pub fn evaluate_word(
    ctx: &Arc<AlgebraContext>,
    word: &WordIdentity,
    args: &[AlgebraElement],
) -> Result<AlgebraElement> {
    if args.len() != word.arity() {
        return Err(Error::WordParse(format!(
            "word has arity {}, got {} arguments",
            word.arity(),
            args.len()
        )));
    }
    let mut inverses: Vec<Option<AlgebraElement>> = vec![None; args.len()];
    let mut acc = ctx.one();
    for l in word.letters() {
        let base = if l.exp >= 0 {
            args[l.var].clone()
        } else {
            if inverses[l.var].is_none() {
                inverses[l.var] = Some(ctx.inverse(&args[l.var])?);
            }
            inverses[l.var].clone().unwrap()
        };
        for _ in 0..l.exp.unsigned_abs() {
            acc = ctx.mul(&acc, &base)?;
        }
    }
    Ok(acc)
}

/// Result of checking one word over all tuples of a unit set.
#[derive(Debug, Clone)]
pub struct IdentityVerdict {
    pub holds: bool,
    /// Lexicographically least failing tuple, when the identity fails.
    pub witness: Option<Vec<AlgebraElement>>,
}

/// Check whether the word evaluates to 1 on every tuple from the set.
pub fn satisfies_identity(
    set: &UnitSet,
    word: &WordIdentity,
    tuple_cap: u128,
) -> Result<IdentityVerdict> {
    let k = word.arity();
    let m = set.len() as u128;
    let tuples = m.checked_pow(k as u32).unwrap_or(u128::MAX);
    if tuples > tuple_cap {
        return Err(Error::BoundExceeded {
            what: format!("{k}-tuple sweep over {} units", set.len()),
            needed: tuples,
            bound: tuple_cap,
        });
    }
    let ctx = set.context();
    let one = ctx.one();
    if set.is_empty() {
        return Ok(IdentityVerdict {
            holds: true,
            witness: None,
        });
    }
    // Inverses are cached per unit index across the whole sweep.
    let mut inv_cache: Vec<Option<AlgebraElement>> = vec![None; set.len()];
    let mut idx = vec![0usize; k];
    loop {
        let mut acc = one.clone();
        for l in word.letters() {
            let unit_index = idx[l.var];
            let base = if l.exp >= 0 {
                set.units()[unit_index].clone()
            } else {
                if inv_cache[unit_index].is_none() {
                    inv_cache[unit_index] = Some(ctx.inverse(&set.units()[unit_index])?);
                }
                inv_cache[unit_index].clone().unwrap()
            };
            for _ in 0..l.exp.unsigned_abs() {
                acc = ctx.mul(&acc, &base)?;
            }
        }
        if acc != one {
            let args: Vec<AlgebraElement> = idx.iter().map(|&i| set.units()[i].clone()).collect();
            return Ok(IdentityVerdict {
                holds: false,
                witness: Some(args),
            });
        }
        // Odometer over unit indices, last position fastest.
        let mut carry = true;
        for pos in (0..k).rev() {
            idx[pos] += 1;
            if idx[pos] < set.len() {
                carry = false;
                break;
            }
            idx[pos] = 0;
        }
        if carry {
            return Ok(IdentityVerdict {
                holds: true,
                witness: None,
            });
        }
    }
}

/// Outcome of the p-power commutator check over symmetric unit pairs.
#[derive(Debug, Clone)]
pub struct PPowerCheck {
    /// Least n with (u,v)^(p^n) = 1 for every pair, when one exists.
    pub exponent: Option<u32>,
    /// A pair whose commutator escapes every power p^n, n <= n_max.
    pub witness: Option<(AlgebraElement, AlgebraElement)>,
}

/// Find the least n <= n_max such that (u, v)^(p^n) = 1 for every pair of
/// units in the set.
///
/// When the symmetric basis already commutes pairwise the answer is 0 by
/// bilinearity, with no sweep. Otherwise pairs are scanned in order: a pair
/// that defeats every n <= n_max settles the answer as `None` immediately,
/// while the all-pairs maximum needs the full sweep and is therefore
/// subject to the tuple cap.
pub fn commutator_p_power(set: &UnitSet, n_max: u32, tuple_cap: u128) -> Result<PPowerCheck> {
    let ctx = set.context();
    if set.symmetric_only() && ctx.symmetric_is_commutative() {
        return Ok(PPowerCheck {
            exponent: Some(0),
            witness: None,
        });
    }
    let one = ctx.one();
    let p = ctx.prime() as i64;
    let mut max_n: u32 = 0;
    let mut scanned: u128 = 0;
    let mut inv_cache: Vec<Option<AlgebraElement>> = vec![None; set.len()];
    let mut inverse_of = |i: usize| -> Result<AlgebraElement> {
        if inv_cache[i].is_none() {
            inv_cache[i] = Some(set.context().inverse(&set.units()[i])?);
        }
        Ok(inv_cache[i].clone().unwrap())
    };
    for (ui, u) in set.units().iter().enumerate() {
        let u_inv = inverse_of(ui)?;
        for (vi, v) in set.units().iter().enumerate() {
            scanned += 1;
            if scanned > tuple_cap {
                return Err(Error::BoundExceeded {
                    what: format!("pair sweep over {} symmetric units", set.len()),
                    needed: (set.len() as u128).pow(2),
                    bound: tuple_cap,
                });
            }
            let v_inv = inverse_of(vi)?;
            let mut w = ctx.mul(&ctx.mul(&ctx.mul(&u_inv, &v_inv)?, u)?, v)?;
            let mut n = 0u32;
            while w != one {
                if n == n_max {
                    return Ok(PPowerCheck {
                        exponent: None,
                        witness: Some((u.clone(), v.clone())),
                    });
                }
                w = ctx.pow(&w, p)?;
                n += 1;
            }
            max_n = max_n.max(n);
        }
    }
    Ok(PPowerCheck {
        exponent: Some(max_n),
        witness: None,
    })
}
