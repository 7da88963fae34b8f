//! Exponent-vector monomials, the lexicographic order, and the "box" of
//! monomials whose exponents stay strictly below a degree sequence.
//!
//! Variables are ordered `x_1 > x_2 > ... > x_n`. The derived `Ord` on
//! [`Monomial`] compares exponent vectors left to right, which is exactly the
//! lexicographic order with that variable priority.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub type Exponents = SmallVec<[u32; 6]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Exponents,
    degree: u32,
}

impl Monomial {
    pub fn new<I: IntoIterator<Item = u32>>(exps: I) -> Self {
        let exps: Exponents = exps.into_iter().collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// The unit monomial in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, n),
            degree: 0,
        }
    }

    /// `x_i^e` in `n` variables (0-based index).
    pub fn var_power(n: usize, i: usize, e: u32) -> Self {
        let mut exps: Exponents = SmallVec::from_elem(0, n);
        exps[i] = e;
        Monomial { exps, degree: e }
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.degree += 1;
        m
    }

    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.degree -= 1;
        Some(m)
    }

    /// Drops the variable at `i`, keeping the others in order.
    pub fn remove_var(&self, i: usize) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != i)
                .map(|(_, e)| *e),
        )
    }

    /// Appends a new last variable with exponent `e`.
    pub fn push_var(&self, e: u32) -> Monomial {
        let mut m = self.clone();
        m.exps.push(e);
        m.degree += e;
        m
    }

    /// Coprime leading terms: no shared variable.
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Lexicographic comparison with `x_1 > ... > x_n`.
pub fn lex_compare(u: &Monomial, v: &Monomial) -> Result<Ordering> {
    if u.nvars() != v.nvars() {
        return Err(Error::LengthMismatch {
            expected: u.nvars(),
            found: v.nvars(),
        });
    }
    Ok(u.exps.cmp(&v.exps))
}

/// One entry of a degree sequence: a finite degree or no bound at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    pub fn finite(self) -> Option<u32> {
        match self {
            Bound::Finite(a) => Some(a),
            Bound::Infinite => None,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(a) => write!(f, "{a}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// Nondecreasing degrees `a_1 <= a_2 <= ...`, every finite entry at least 2,
/// unbounded entries last.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DegreeSequence {
    entries: Vec<Bound>,
}

impl DegreeSequence {
    pub fn new(entries: Vec<Bound>) -> Result<Self> {
        let mut prev = 0u32;
        let mut seen_inf = false;
        for b in &entries {
            match *b {
                Bound::Finite(a) => {
                    if seen_inf {
                        return Err(Error::InvalidDegreeSequence(
                            "finite entry after an unbounded one".into(),
                        ));
                    }
                    if a < 2 {
                        return Err(Error::InvalidDegreeSequence(format!(
                            "entry {a} is below 2"
                        )));
                    }
                    if a < prev {
                        return Err(Error::InvalidDegreeSequence(
                            "entries must be nondecreasing".into(),
                        ));
                    }
                    prev = a;
                }
                Bound::Infinite => seen_inf = true,
            }
        }
        Ok(DegreeSequence { entries })
    }

    pub fn finite(degrees: &[u32]) -> Result<Self> {
        Self::new(degrees.iter().map(|&a| Bound::Finite(a)).collect())
    }

    pub fn empty() -> Self {
        DegreeSequence { entries: Vec::new() }
    }

    pub fn entries(&self) -> &[Bound] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|b| matches!(b, Bound::Finite(_)))
    }

    /// Finite entries in order (the prefix before any unbounded entry).
    pub fn finite_entries(&self) -> Vec<u32> {
        self.entries.iter().filter_map(|b| b.finite()).collect()
    }

    /// `s = sum (a_i - 1)`; `None` if some entry is unbounded.
    pub fn socle_degree(&self) -> Option<u32> {
        self.entries
            .iter()
            .map(|b| b.finite().map(|a| a - 1))
            .sum::<Option<u32>>()
    }

    /// Extends with unbounded entries up to length `n`.
    pub fn padded(&self, n: usize) -> Result<DegreeSequence> {
        if self.entries.len() > n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: self.entries.len(),
            });
        }
        let mut entries = self.entries.clone();
        entries.resize(n, Bound::Infinite);
        Ok(DegreeSequence { entries })
    }

    /// The first `k` entries.
    pub fn prefix(&self, k: usize) -> DegreeSequence {
        DegreeSequence {
            entries: self.entries[..k.min(self.entries.len())].to_vec(),
        }
    }
}

impl fmt::Display for DegreeSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

/// Variable count and names; position 0 is the lex-greatest variable.
#[derive(Debug, Clone)]
pub struct Ambient {
    names: Arc<[String]>,
}

impl PartialEq for Ambient {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Ambient {}

impl Ambient {
    pub fn new<S: Into<String>>(names: Vec<S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || !is_ident(a) {
                return Err(Error::Parse(format!("invalid variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::Parse(format!("duplicate variable `{a}`")));
            }
        }
        Ok(Ambient { names: names.into() })
    }

    /// `x, y, z, w` for up to four variables, `x1, ..., xn` beyond.
    pub fn standard(n: usize) -> Self {
        let names: Vec<String> = if n <= 4 {
            ["x", "y", "z", "w"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        Ambient { names: names.into() }
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The ring with the last variable removed.
    pub fn drop_last(&self) -> Ambient {
        Ambient {
            names: self.names[..self.names.len().saturating_sub(1)].to_vec().into(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn check(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::LengthMismatch {
                expected: self.nvars(),
                found: m.nvars(),
            });
        }
        Ok(())
    }

    /// `x^2*y` style; `1` for the unit monomial.
    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (name, &e) in self.names.iter().zip(m.exponents()) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        let text = text.trim();
        let mut exps: Exponents = SmallVec::from_elem(0, self.nvars());
        if text == "1" {
            return Ok(Monomial::new(exps));
        }
        if text.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let (name, e) = match factor.split_once('^') {
                Some((name, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                    (name.trim(), e)
                }
                None => (factor, 1),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::Parse(format!("undeclared variable `{name}`")))?;
            exps[i] += e;
        }
        Ok(Monomial::new(exps))
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// `C(m, k)` exactly.
pub fn binomial(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Number of degree-`d` monomials in `n` variables.
pub fn monomial_count(n: usize, d: u32) -> BigUint {
    if n == 0 {
        return if d == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(d as u64 + n as u64 - 1, n as u64 - 1)
}

/// The set of exponent vectors with `u_i < a_i` (no restriction where
/// `a_i` is unbounded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentBox {
    caps: Vec<Option<u32>>,
}

impl ExponentBox {
    /// Pads `a` with unbounded entries up to `n`.
    pub fn new(n: usize, a: &DegreeSequence) -> Result<Self> {
        let padded = a.padded(n)?;
        Ok(ExponentBox {
            caps: padded.entries().iter().map(|b| b.finite()).collect(),
        })
    }

    /// No bounds at all: every monomial is in the box.
    pub fn unbounded(n: usize) -> Self {
        ExponentBox { caps: vec![None; n] }
    }

    pub fn nvars(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[Option<u32>] {
        &self.caps
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.caps
            .iter()
            .zip(m.exponents())
            .all(|(c, &e)| c.is_none_or(|a| e < a))
    }

    /// Top degree with a nonzero count, when every cap is finite.
    pub fn socle_degree(&self) -> Option<u32> {
        self.caps.iter().map(|c| c.map(|a| a - 1)).sum()
    }

    /// Inclusion-exclusion over the finitely capped variables.
    pub fn count(&self, d: u32) -> BigUint {
        let n = self.caps.len();
        let finite: Vec<u64> = self.caps.iter().flatten().map(|&a| a as u64).collect();
        let mut total = BigInt::zero();
        for mask in 0u64..(1u64 << finite.len()) {
            let mut shift = 0u64;
            for (i, a) in finite.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    shift += a;
                }
            }
            if shift > d as u64 {
                continue;
            }
            let term = BigInt::from(monomial_count(n, (d as u64 - shift) as u32));
            if mask.count_ones() % 2 == 1 {
                total -= term;
            } else {
                total += term;
            }
        }
        debug_assert!(!total.is_negative());
        total.to_biguint().unwrap_or_default()
    }

    pub fn count_u64(&self, d: u32) -> Result<u64> {
        self.count(d).to_u64().ok_or(Error::Overflow)
    }

    /// All box monomials of degree `d`, lex-descending.
    pub fn monomials(&self, d: u32) -> Vec<Monomial> {
        let n = self.caps.len();
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        // room[i] = largest total degree variables i.. can still absorb
        let mut room: Vec<Option<u64>> = vec![Some(0); n + 1];
        for i in (0..n).rev() {
            room[i] = match (self.caps[i], room[i + 1]) {
                (Some(a), Some(r)) => Some(r + a as u64 - 1),
                _ => None,
            };
        }
        let mut exps: Exponents = SmallVec::from_elem(0, n);
        self.fill(0, d, &room, &mut exps, &mut out);
        out
    }

    fn fill(
        &self,
        i: usize,
        left: u32,
        room: &[Option<u64>],
        exps: &mut Exponents,
        out: &mut Vec<Monomial>,
    ) {
        let n = self.caps.len();
        if i == n - 1 {
            if self.caps[i].is_none_or(|a| left < a) {
                exps[i] = left;
                out.push(Monomial::new(exps.iter().copied()));
            }
            return;
        }
        let hi = match self.caps[i] {
            Some(a) => left.min(a - 1),
            None => left,
        };
        let lo = match room[i + 1] {
            Some(r) => (left as u64).saturating_sub(r) as u32,
            None => 0,
        };
        if lo > hi {
            return;
        }
        for e in (lo..=hi).rev() {
            exps[i] = e;
            self.fill(i + 1, left - e, room, exps, out);
        }
        exps[i] = 0;
    }
}

/// Number of degree-`d` monomials in `n` variables with `u_i < a_i`.
pub fn box_count(n: usize, a: &DegreeSequence, d: u32) -> Result<BigUint> {
    Ok(ExponentBox::new(n, a)?.count(d))
}

/// The box monomials of degree `d`, lex-descending.
pub fn box_monomials(n: usize, a: &DegreeSequence, d: u32) -> Result<Vec<Monomial>> {
    Ok(ExponentBox::new(n, a)?.monomials(d))
}

/// The `k` lex-largest box monomials of degree `d`, lex-descending.
pub fn lex_segment(n: usize, a: &DegreeSequence, d: u32, k: usize) -> Result<Vec<Monomial>> {
    let mut all = box_monomials(n, a, d)?;
    if k > all.len() {
        return Err(Error::OutOfRange {
            what: "segment size",
            value: k as u64,
            max: all.len() as u64,
        });
    }
    all.truncate(k);
    Ok(all)
}

/// Box monomials of degree `d + 1` divisible by some member of `b`.
pub fn upper_shadow(n: usize, a: &DegreeSequence, b: &[Monomial]) -> Result<BTreeSet<Monomial>> {
    let bx = ExponentBox::new(n, a)?;
    let mut out = BTreeSet::new();
    let Some(first) = b.first() else {
        return Ok(out);
    };
    let d = first.degree();
    for m in b {
        if m.nvars() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: m.nvars(),
            });
        }
        if m.degree() != d {
            return Err(Error::MixedDegrees);
        }
        if !bx.contains(m) {
            return Err(Error::Precondition("shadow input outside the box".into()));
        }
        for i in 0..n {
            let up = m.mul_var(i);
            if bx.contains(&up) {
                out.insert(up);
            }
        }
    }
    Ok(out)
}
