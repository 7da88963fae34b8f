//! Monomial ideals and their Hilbert functions.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monom::{monomial_count, Ambient, Bound, DegreeSequence, ExponentBox, Monomial};

/// Largest degree slice `hilbert_function` will enumerate by default.
pub const DEFAULT_SLICE_BUDGET: u128 = 5_000_000;

/// A monomial ideal stored by its minimal generators, sorted by degree and
/// then lex-descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    ambient: Ambient,
    gens: Vec<Monomial>,
}

fn canonical_order(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.degree().cmp(&b.degree()).then_with(|| b.cmp(a))
}

/// Divisibility-minimal subset of `gens`, in canonical order.
pub fn minimalize(ambient: &Ambient, gens: impl IntoIterator<Item = Monomial>) -> MonomialIdeal {
    let mut all: Vec<Monomial> = gens.into_iter().collect();
    all.sort_by(canonical_order);
    all.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(all.len());
    for g in all {
        // anything dividing g has degree <= deg g and was seen already
        if !kept.iter().any(|k| k.divides(&g)) {
            kept.push(g);
        }
    }
    MonomialIdeal {
        ambient: ambient.clone(),
        gens: kept,
    }
}

impl MonomialIdeal {
    pub fn new(ambient: &Ambient, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            ambient.check(g)?;
        }
        Ok(minimalize(ambient, gens))
    }

    pub fn zero(ambient: &Ambient) -> Self {
        MonomialIdeal {
            ambient: ambient.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ambient: &Ambient) -> Self {
        MonomialIdeal {
            ambient: ambient.clone(),
            gens: vec![Monomial::one(ambient.nvars())],
        }
    }

    /// `<x_i^{a_i} : a_i finite>`.
    pub fn pure_powers(ambient: &Ambient, a: &DegreeSequence) -> Result<Self> {
        let n = ambient.nvars();
        let a = a.padded(n)?;
        let gens: Vec<Monomial> = a
            .entries()
            .iter()
            .enumerate()
            .filter_map(|(i, b)| b.finite().map(|e| Monomial::var_power(n, i, e)))
            .collect();
        Ok(minimalize(ambient, gens))
    }

    pub fn parse(ambient: &Ambient, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('<')
            .and_then(|s| s.strip_suffix('>'))
            .ok_or_else(|| Error::Parse(format!("expected <...>, got `{t}`")))?;
        if inner.trim().is_empty() {
            return Ok(Self::zero(ambient));
        }
        let gens = inner
            .split(',')
            .map(|g| ambient.parse_monomial(g))
            .collect::<Result<Vec<_>>>()?;
        Ok(minimalize(ambient, gens))
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(Monomial::is_one)
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    fn same_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// Membership without the ambient check, for hot loops.
    #[inline]
    pub(crate) fn holds(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.ambient.check(m)?;
        Ok(self.holds(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.gens.iter().all(|g| other.holds(g)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        Ok(minimalize(
            &self.ambient,
            self.gens.iter().chain(&other.gens).cloned(),
        ))
    }

    pub fn intersection(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut lcms = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                lcms.push(f.lcm(g));
            }
        }
        Ok(minimalize(&self.ambient, lcms))
    }

    /// `(I : g)` for a single monomial.
    pub fn colon_monomial(&self, g: &Monomial) -> Result<MonomialIdeal> {
        self.ambient.check(g)?;
        Ok(minimalize(
            &self.ambient,
            self.gens.iter().map(|m| m.div(&m.gcd(g)).expect("gcd divides")),
        ))
    }

    /// `(I : J)`, the intersection of `(I : g)` over generators `g` of `J`.
    /// The colon by the zero ideal is the unit ideal.
    pub fn colon(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_ring(other)?;
        let mut acc = MonomialIdeal::unit(&self.ambient);
        for g in &other.gens {
            acc = acc.intersection(&self.colon_monomial(g)?)?;
        }
        Ok(acc)
    }

    /// Least `N` with `(I : x_v^N) = (I : x_v^{N+1})`, and the chain
    /// `(I : x_v^j)` for `j = 0..=N`.
    pub fn colon_power_saturate(&self, v: usize) -> Result<(u32, Vec<MonomialIdeal>)> {
        let n = self.nvars();
        if v >= n {
            return Err(Error::OutOfRange {
                what: "variable index",
                value: v as u64,
                max: n.saturating_sub(1) as u64,
            });
        }
        let x = Monomial::var_power(n, v, 1);
        let mut chain = vec![self.clone()];
        loop {
            let last = chain.last().expect("nonempty");
            let next = last.colon_monomial(&x)?;
            if &next == last {
                break;
            }
            chain.push(next);
        }
        Ok(((chain.len() - 1) as u32, chain))
    }

    /// Generated by the generators of degree below `d`.
    pub fn truncate_below_degree(&self, d: u32) -> MonomialIdeal {
        MonomialIdeal {
            ambient: self.ambient.clone(),
            gens: self.gens.iter().filter(|g| g.degree() < d).cloned().collect(),
        }
    }

    /// `x_i^{a_i} ∈ I` for every finite entry of `a`.
    pub fn contains_pure_powers(&self, a: &DegreeSequence) -> bool {
        let n = self.nvars();
        if a.len() > n {
            return false;
        }
        a.entries().iter().enumerate().all(|(i, b)| match b {
            Bound::Finite(e) => self.holds(&Monomial::var_power(n, i, *e)),
            Bound::Infinite => true,
        })
    }

    /// Image of `I + <x_n>` in the ring without the last variable.
    pub fn restrict_drop_last(&self) -> MonomialIdeal {
        let n = self.nvars();
        let amb = self.ambient.drop_last();
        let gens = self
            .gens
            .iter()
            .filter(|g| g.exponent(n - 1) == 0)
            .map(|g| g.remove_var(n - 1));
        minimalize(&amb, gens)
    }

    /// All monomials of degree `d` in the ideal, lex-descending.
    pub fn degree_piece(&self, d: u32) -> Vec<Monomial> {
        ExponentBox::unbounded(self.nvars())
            .monomials(d)
            .into_iter()
            .filter(|m| self.holds(m))
            .collect()
    }

    /// Degree-`d` monomials outside the ideal, lex-descending.
    pub fn standard_monomials(&self, d: u32) -> Vec<Monomial> {
        ExponentBox::unbounded(self.nvars())
            .monomials(d)
            .into_iter()
            .filter(|m| !self.holds(m))
            .collect()
    }

    pub fn hilbert_function(&self, bound: u32) -> Result<HilbertFunction> {
        self.hilbert_function_with_budget(bound, DEFAULT_SLICE_BUDGET)
    }

    /// `H(S/I, d)` for `0 <= d <= bound`, by enumerating each degree slice.
    pub fn hilbert_function_with_budget(&self, bound: u32, budget: u128) -> Result<HilbertFunction> {
        let n = self.nvars();
        let all = ExponentBox::unbounded(n);
        let mut values = Vec::with_capacity(bound as usize + 1);
        for d in 0..=bound {
            let size = monomial_count(n, d).to_u128().unwrap_or(u128::MAX);
            if size > budget {
                return Err(Error::BudgetExceeded { size, budget });
            }
            let standard = all.monomials(d).iter().filter(|m| !self.holds(m)).count();
            values.push(standard as u64);
        }
        Ok(HilbertFunction::new(values, Side::Quotient))
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&self.ambient.format_monomial(g))?;
        }
        f.write_str(">")
    }
}

/// Whether a Hilbert function table records `H(S/I, ·)` or `H(I, ·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Quotient,
    Ideal,
}

/// Values for degrees `0..=bound`; nothing is known past `bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HilbertFunction {
    values: Vec<u64>,
    side: Side,
}

impl HilbertFunction {
    pub fn new(values: Vec<u64>, side: Side) -> Self {
        assert!(!values.is_empty(), "a Hilbert function needs degree 0");
        HilbertFunction { values, side }
    }

    pub fn quotient(values: Vec<u64>) -> Self {
        Self::new(values, Side::Quotient)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn bound(&self) -> u32 {
        (self.values.len() - 1) as u32
    }

    pub fn value(&self, d: u32) -> Option<u64> {
        self.values.get(d as usize).copied()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Same values cut down to a smaller bound.
    pub fn truncated(&self, bound: u32) -> HilbertFunction {
        let keep = (bound as usize + 1).min(self.values.len());
        HilbertFunction::new(self.values[..keep].to_vec(), self.side)
    }

    /// Flips between `H(S/I, ·)` and `H(I, ·)` using `dim S_d`.
    pub fn complement(&self, n: usize) -> Result<HilbertFunction> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(d, &v)| {
                let total = monomial_count(n, d as u32).to_u64().ok_or(Error::Overflow)?;
                total.checked_sub(v).ok_or(Error::InvariantViolation(format!(
                    "value {v} exceeds dim S_{d} = {total}"
                )))
            })
            .collect::<Result<Vec<_>>>()?;
        let side = match self.side {
            Side::Quotient => Side::Ideal,
            Side::Ideal => Side::Quotient,
        };
        Ok(HilbertFunction::new(values, side))
    }
}

/// `H(S/<x_1^{a_1},...,x_r^{a_r}>, d)` for `d <= bound`.
pub fn ci_hilbert(a: &DegreeSequence, n: usize, bound: u32) -> Result<HilbertFunction> {
    if !a.is_finite() {
        return Err(Error::InfiniteEntry);
    }
    ci_hilbert_degrees(&a.finite_entries(), n, bound)
}

/// Coefficients of `prod (1 + t + ... + t^{a_i - 1}) / (1 - t)^{n - r}` for
/// arbitrary positive degrees.
pub fn ci_hilbert_degrees(degrees: &[u32], n: usize, bound: u32) -> Result<HilbertFunction> {
    if degrees.len() > n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: degrees.len(),
        });
    }
    if degrees.contains(&0) {
        return Err(Error::Precondition("degree 0 form".into()));
    }
    let len = bound as usize + 1;
    let mut coeffs = vec![BigUint::zero(); len];
    coeffs[0] = BigUint::from(1u32);
    for &a in degrees {
        // multiply by (1 - t^a) / (1 - t): running window sum of width a
        let mut next = vec![BigUint::zero(); len];
        let mut window = BigUint::zero();
        for d in 0..len {
            window += &coeffs[d];
            if d >= a as usize {
                window -= &coeffs[d - a as usize];
            }
            next[d] = window.clone();
        }
        coeffs = next;
    }
    for _ in degrees.len()..n {
        for d in 1..len {
            let prev = coeffs[d - 1].clone();
            coeffs[d] += prev;
        }
    }
    let values = coeffs
        .iter()
        .map(|c| c.to_u64().ok_or(Error::Overflow))
        .collect::<Result<Vec<_>>>()?;
    Ok(HilbertFunction::quotient(values))
}

/// Every monomial ideal containing the pure powers of a fully finite `a`
/// (length `n`), one per order filter of the box.
pub fn ideals_containing_powers(ambient: &Ambient, a: &DegreeSequence) -> Result<Vec<MonomialIdeal>> {
    let n = ambient.nvars();
    if a.len() != n || !a.is_finite() {
        return Err(Error::Precondition(
            "need a finite degree sequence of full length".into(),
        ));
    }
    let s = a.socle_degree().expect("finite");
    let bx = ExponentBox::new(n, a)?;
    let cells: Vec<Monomial> = (0..=s).flat_map(|d| bx.monomials(d)).collect();
    if cells.len() > 20 {
        return Err(Error::BudgetExceeded {
            size: 1u128 << cells.len(),
            budget: 1 << 20,
        });
    }
    let powers = MonomialIdeal::pure_powers(ambient, a)?;
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << cells.len()) {
        let chosen: BTreeSet<usize> = (0..cells.len()).filter(|i| mask >> i & 1 == 1).collect();
        // upward closed inside the box
        let closed = chosen.iter().all(|&i| {
            (0..n).all(|v| {
                let up = cells[i].mul_var(v);
                !bx.contains(&up) || chosen.iter().any(|&j| cells[j] == up)
            })
        });
        if closed {
            let gens = chosen.iter().map(|&i| cells[i].clone());
            out.push(powers.sum(&minimalize(ambient, gens))?);
        }
    }
    Ok(out)
}
