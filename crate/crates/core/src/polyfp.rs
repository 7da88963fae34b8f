//! Homogeneous polynomials over prime fields, Buchberger's algorithm, and
//! Hilbert functions of arbitrary homogeneous ideals.
//!
//! Coefficients live in `GF(p)` with `p < 2^16`, stored as `u32` residues.
//! Polynomials are kept homogeneous; the serialized term order is always
//! degrevlex-descending regardless of the order used for a computation.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mideal::{ci_hilbert_degrees, minimalize, HilbertFunction, MonomialIdeal};
use crate::monom::{is_ident, monomial_count, Ambient, DegreeSequence, ExponentBox, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 16 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        let mut result = 1u32;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn from_i64(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Symmetric representative in `(-p/2, p/2]`.
    pub fn signed(self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

/// Term order used by a Gröbner computation. Variable priority follows the
/// ambient order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    DegRevLex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn slot(self) -> usize {
        match self {
            MonomialOrder::Lex => 0,
            MonomialOrder::DegRevLex => 1,
        }
    }
}

impl std::str::FromStr for MonomialOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(MonomialOrder::Lex),
            "degrevlex" => Ok(MonomialOrder::DegRevLex),
            other => Err(Error::Parse(format!("unknown order `{other}`"))),
        }
    }
}

/// A homogeneous polynomial with nonzero coefficients in `GF(p)`, terms
/// sorted degrevlex-descending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: PrimeField,
    nvars: usize,
    terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero(field: PrimeField, nvars: usize) -> Self {
        Polynomial {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    /// Combines like terms, reduces coefficients mod `p`, and rejects mixed
    /// degrees.
    pub fn from_terms<I>(field: PrimeField, nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(Error::LengthMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, field.from_i64(c));
        }
        let mut terms: Vec<(Monomial, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        Self::sort_canonical(&mut terms);
        if let Some((first, _)) = terms.first() {
            if terms.iter().any(|(m, _)| m.degree() != first.degree()) {
                return Err(Error::Inhomogeneous);
            }
        }
        Ok(Polynomial { field, nvars, terms })
    }

    pub fn monomial(field: PrimeField, m: Monomial) -> Self {
        let nvars = m.nvars();
        Polynomial {
            field,
            nvars,
            terms: vec![(m, 1)],
        }
    }

    fn sort_canonical(terms: &mut [(Monomial, u32)]) {
        terms.sort_by(|a, b| MonomialOrder::DegRevLex.compare(&b.0, &a.0));
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Terms in degrevlex-descending order.
    pub fn terms(&self) -> &[(Monomial, u32)] {
        &self.terms
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, u32)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.0, &b.0))
            .map(|(m, c)| (m, *c))
    }

    pub fn leading_monomial(&self, order: MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.p;
        if c == 0 {
            return Polynomial::zero(self.field, self.nvars);
        }
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(*a, c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // degrevlex is multiplicative, so the order is preserved
        Polynomial {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), *c)).collect(),
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.compatible(other)?;
        let terms = self
            .terms
            .iter()
            .chain(&other.terms)
            .map(|(m, c)| (m.clone(), *c as i64));
        Polynomial::from_terms(self.field, self.nvars, terms)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(self.field.neg(1)))
    }

    /// Text form: `+`/`-` separated terms, symmetric coefficients.
    pub fn format(&self, ambient: &Ambient) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let v = self.field.signed(*c);
            let mag = v.unsigned_abs();
            if k == 0 {
                if v < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if v < 0 { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&mag.to_string());
            } else if mag == 1 {
                out.push_str(&ambient.format_monomial(m));
            } else {
                out.push_str(&format!("{mag}*{}", ambient.format_monomial(m)));
            }
        }
        out
    }

    /// Parses `3*x^2 - y*z + 5*x*y` style text over `field`.
    pub fn parse(ambient: &Ambient, field: PrimeField, text: &str) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut negative = false;
        loop {
            rest = rest.trim_start();
            if let Some(r) = rest.strip_prefix('-') {
                negative = !negative;
                rest = r;
                continue;
            }
            if let Some(r) = rest.strip_prefix('+') {
                rest = r;
                continue;
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let body = rest[..end].trim();
            if body.is_empty() {
                return Err(Error::Parse(format!("missing term in `{text}`")));
            }
            let (m, c) = parse_term(ambient, field, body)?;
            let c = if negative { field.neg(c) } else { c };
            terms.push((m, c as i64));
            negative = false;
            rest = &rest[end..];
            if rest.trim().is_empty() {
                break;
            }
        }
        let p = Polynomial::from_terms(field, ambient.nvars(), terms)?;
        Ok(p)
    }
}

fn parse_term(ambient: &Ambient, field: PrimeField, body: &str) -> Result<(Monomial, u32)> {
    let mut coeff = 1u32;
    let mut exps = vec![0u32; ambient.nvars()];
    for factor in body.split('*') {
        let factor = factor.trim();
        if !factor.is_empty() && factor.bytes().all(|b| b.is_ascii_digit()) {
            let mut v = 0u32;
            for b in factor.bytes() {
                v = field.add(field.mul(v, 10), (b - b'0') as u32 % field.p);
            }
            coeff = field.mul(coeff, v);
            continue;
        }
        let (name, e) = match factor.split_once('^') {
            Some((name, e)) => (
                name.trim(),
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
            ),
            None => (factor, 1),
        };
        if !is_ident(name) {
            return Err(Error::Parse(format!("unexpected `{factor}`")));
        }
        let i = ambient
            .index_of(name)
            .ok_or_else(|| Error::Parse(format!("undeclared variable `{name}`")))?;
        exps[i] += e;
    }
    Ok((Monomial::new(exps), coeff))
}

/// Working representation for the Gröbner engine: terms sorted ascending in
/// the active order, so the leading term is last.
#[derive(Debug, Clone)]
struct Work {
    terms: Vec<(Monomial, u32)>,
}

impl Work {
    fn from_poly(f: &Polynomial, order: MonomialOrder) -> Work {
        let mut terms = f.terms.clone();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        Work { terms }
    }

    fn to_poly(&self, field: PrimeField, nvars: usize) -> Polynomial {
        let mut terms = self.terms.clone();
        Polynomial::sort_canonical(&mut terms);
        Polynomial { field, nvars, terms }
    }

    fn lead(&self) -> Option<&(Monomial, u32)> {
        self.terms.last()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self, field: PrimeField) {
        if let Some(&(_, c)) = self.lead() {
            let inv = field.inv(c);
            for t in &mut self.terms {
                t.1 = field.mul(t.1, inv);
            }
        }
    }

    /// `self - c * m * g`, both ascending.
    fn sub_scaled(&self, c: u32, m: &Monomial, g: &Work, field: PrimeField, order: MonomialOrder) -> Work {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g
            .terms
            .iter()
            .map(|(t, k)| (t.mul(m), field.mul(*k, c)))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().expect("peeked").clone()),
                    Ordering::Greater => {
                        let (t, k) = b.next().expect("peeked");
                        out.push((t, field.neg(k)));
                    }
                    Ordering::Equal => {
                        let (t, x) = a.next().expect("peeked").clone();
                        let (_, y) = b.next().expect("peeked");
                        let v = field.sub(x, y);
                        if v != 0 {
                            out.push((t, v));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().expect("peeked").clone()),
                (None, Some(_)) => {
                    let (t, k) = b.next().expect("peeked");
                    out.push((t, field.neg(k)));
                }
                (None, None) => break,
            }
        }
        Work { terms: out }
    }
}

/// Full reduction of `f` by `basis`: no term of the result is divisible by
/// a leading monomial of the basis.
fn reduce(f: &Work, basis: &[Work], field: PrimeField, order: MonomialOrder) -> Work {
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, u32)> = Vec::new();
    while let Some((lm, lc)) = p.lead().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.lead().is_some_and(|(gm, _)| gm.divides(&lm)));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.lead().expect("nonzero");
                let factor = lm.div(gm).expect("divides");
                let c = field.mul(lc, field.inv(*gc));
                p = p.sub_scaled(c, &factor, g, field, order);
            }
            None => {
                remainder.push(p.terms.pop().expect("nonzero"));
            }
        }
    }
    remainder.reverse();
    Work { terms: remainder }
}

fn s_poly(f: &Work, g: &Work, field: PrimeField, order: MonomialOrder) -> Work {
    let (fm, fc) = f.lead().expect("nonzero");
    let (gm, gc) = g.lead().expect("nonzero");
    let l = fm.lcm(gm);
    let mf = l.div(fm).expect("lcm");
    let mg = l.div(gm).expect("lcm");
    // gc * mf * f - fc * mg * g
    let zero = Work { terms: Vec::new() };
    let left = zero.sub_scaled(field.neg(*gc), &mf, f, field, order);
    left.sub_scaled(*fc, &mg, g, field, order)
}

fn check_all(f: &Polynomial, gs: &[Polynomial]) -> Result<()> {
    for g in gs {
        f.compatible(g)?;
    }
    Ok(())
}

/// Remainder of `f` on division by `gs` (full reduction, divisors tried in
/// list order).
pub fn normal_form(f: &Polynomial, gs: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    check_all(f, gs)?;
    let basis: Vec<Work> = gs
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Work::from_poly(g, order))
        .collect();
    Ok(reduce(&Work::from_poly(f, order), &basis, f.field, order).to_poly(f.field, f.nvars))
}

/// `lc(g) * (L / lm f) * f - lc(f) * (L / lm g) * g` with `L` the lcm of the
/// leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
    f.compatible(g)?;
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let s = s_poly(&Work::from_poly(f, order), &Work::from_poly(g, order), f.field, order);
    Ok(s.to_poly(f.field, f.nvars))
}

/// Reduced Gröbner basis by Buchberger's algorithm with the normal
/// selection strategy (lowest lcm degree first, ties by insertion index)
/// and the coprime criterion. Leading coefficients are 1; the basis is
/// sorted by leading monomial, ascending.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> Result<Vec<Polynomial>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    check_all(first, gens)?;
    let (field, nvars) = (first.field, first.nvars);

    let mut basis: Vec<Work> = Vec::new();
    let mut pairs: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let push = |w: Work, basis: &mut Vec<Work>, pairs: &mut BTreeSet<(u32, usize, usize)>| {
        let j = basis.len();
        let lm = w.lead().expect("nonzero").0.clone();
        for (i, g) in basis.iter().enumerate() {
            let deg = g.lead().expect("nonzero").0.lcm(&lm).degree();
            pairs.insert((deg, j, i));
        }
        basis.push(w);
    };

    for g in gens {
        let mut w = reduce(&Work::from_poly(g, order), &basis, field, order);
        if !w.is_zero() {
            w.make_monic(field);
            push(w, &mut basis, &mut pairs);
        }
    }
    while let Some(pair) = pairs.pop_first() {
        let (_, j, i) = pair;
        let (fm, _) = basis[i].lead().expect("nonzero");
        let (gm, _) = basis[j].lead().expect("nonzero");
        if fm.is_coprime(gm) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], field, order);
        let mut r = reduce(&s, &basis, field, order);
        if !r.is_zero() {
            r.make_monic(field);
            push(r, &mut basis, &mut pairs);
        }
    }

    // minimalize leading monomials, then reduce tails
    let mut keep: Vec<Work> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = &g.lead().expect("nonzero").0;
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let hm = &h.lead().expect("nonzero").0;
            l != k && hm.divides(lm) && (hm != lm || l < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<Work> = keep
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, w)| w.clone())
            .collect();
        let mut r = reduce(&keep[k], &others, field, order);
        r.make_monic(field);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.compare(&a.lead().expect("nonzero").0, &b.lead().expect("nonzero").0));
    Ok(reduced.iter().map(|w| w.to_poly(field, nvars)).collect())
}

/// A homogeneous ideal over `GF(p)` with lazily cached Gröbner bases.
#[derive(Debug, Clone)]
pub struct PolynomialIdeal {
    ambient: Ambient,
    field: PrimeField,
    gens: Vec<Polynomial>,
    cache: [OnceLock<Vec<Polynomial>>; 2],
}

impl PartialEq for PolynomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.field == other.field && self.gens == other.gens
    }
}

impl PolynomialIdeal {
    pub fn new(ambient: &Ambient, field: PrimeField, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if g.field != field {
                return Err(Error::FieldMismatch {
                    left: field.p,
                    right: g.field.p,
                });
            }
            if g.nvars != ambient.nvars() {
                return Err(Error::LengthMismatch {
                    expected: ambient.nvars(),
                    found: g.nvars,
                });
            }
        }
        Ok(PolynomialIdeal {
            ambient: ambient.clone(),
            field,
            gens,
            cache: Default::default(),
        })
    }

    pub fn from_monomial_ideal(i: &MonomialIdeal, field: PrimeField) -> Self {
        let gens = i
            .generators()
            .iter()
            .map(|m| Polynomial::monomial(field, m.clone()))
            .collect();
        PolynomialIdeal::new(i.ambient(), field, gens).expect("same ring")
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner_basis(&self, order: MonomialOrder) -> &[Polynomial] {
        self.cache[order.slot()].get_or_init(|| buchberger(&self.gens, order).expect("checked on construction"))
    }

    pub fn initial_ideal(&self, order: MonomialOrder) -> MonomialIdeal {
        minimalize(
            &self.ambient,
            self.groebner_basis(order)
                .iter()
                .filter_map(|g| g.leading_monomial(order).cloned()),
        )
    }

    /// `H(S/I, d)` for `d <= bound` via the degrevlex initial ideal.
    pub fn hilbert_function(&self, bound: u32) -> Result<HilbertFunction> {
        self.initial_ideal(MonomialOrder::DegRevLex).hilbert_function(bound)
    }

    pub fn hilbert_function_with_budget(&self, bound: u32, budget: u128) -> Result<HilbertFunction> {
        self.initial_ideal(MonomialOrder::DegRevLex)
            .hilbert_function_with_budget(bound, budget)
    }

    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self.gens.iter().map(|g| g.format(&self.ambient)).collect();
        format!("<{}>", parts.join(", "))
    }
}

impl fmt::Display for PolynomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `H(S/I, d)` for `d <= bound`.
pub fn hilbert_function_poly(i: &PolynomialIdeal, bound: u32) -> Result<HilbertFunction> {
    i.hilbert_function(bound)
}

/// `dim S_d - rank` of the span of all degree-`d` multiples of the
/// generators, by Gaussian elimination over `GF(p)`. Independent of the
/// Gröbner engine.
pub fn hf_rank_oracle(i: &PolynomialIdeal, d: u32, budget: u128) -> Result<u64> {
    let n = i.ambient.nvars();
    let size = monomial_count(n, d).to_u128().unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let columns = ExponentBox::unbounded(n).monomials(d);
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let field = i.field;
    let width = columns.len();
    // pivot column -> row with a 1 there
    let mut pivots: HashMap<usize, Vec<u32>> = HashMap::new();
    for g in i.gens.iter().filter(|g| !g.is_zero()) {
        let e = g.degree().expect("nonzero");
        if e > d {
            continue;
        }
        for shift in ExponentBox::unbounded(n).monomials(d - e) {
            let mut row = vec![0u32; width];
            for (m, c) in &g.terms {
                row[index[&m.mul(&shift)]] = *c;
            }
            for col in 0..width {
                if row[col] == 0 {
                    continue;
                }
                match pivots.get(&col) {
                    Some(p) => {
                        let c = row[col];
                        for (r, v) in row.iter_mut().zip(p).skip(col) {
                            *r = field.sub(*r, field.mul(c, *v));
                        }
                    }
                    None => {
                        let inv = field.inv(row[col]);
                        for r in row.iter_mut().skip(col) {
                            *r = field.mul(*r, inv);
                        }
                        pivots.insert(col, row);
                        break;
                    }
                }
            }
        }
    }
    Ok((width - pivots.len()) as u64)
}

/// Outcome of a regularity check: `witness` is the first degree where the
/// Hilbert function departs from the complete-intersection one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegularityCertificate {
    pub regular: bool,
    pub witness: Option<u32>,
}

fn sequence_degrees(fs: &[Polynomial]) -> Result<Vec<u32>> {
    fs.iter()
        .map(|f| f.degree().ok_or(Error::ZeroPolynomial))
        .collect()
}

/// Compares `H(S/<fs>, d)` with the complete-intersection values up to
/// `sum deg f_i`.
pub fn regular_by_hilbert(ambient: &Ambient, fs: &[Polynomial]) -> Result<RegularityCertificate> {
    let mut degrees = sequence_degrees(fs)?;
    let n = ambient.nvars();
    if fs.len() > n {
        return Ok(RegularityCertificate { regular: false, witness: None });
    }
    if degrees.contains(&0) {
        return Ok(RegularityCertificate { regular: false, witness: Some(0) });
    }
    let field = fs.first().map(|f| f.field).unwrap_or(PrimeField { p: 2 });
    let top: u32 = degrees.iter().sum();
    let ideal = PolynomialIdeal::new(ambient, field, fs.to_vec())?;
    let actual = ideal.hilbert_function(top)?;
    degrees.sort_unstable();
    let expected = ci_hilbert_degrees(&degrees, n, top)?;
    let witness = (0..=top).find(|&d| actual.value(d) != expected.value(d));
    Ok(RegularityCertificate {
        regular: witness.is_none(),
        witness,
    })
}

/// Krull dimension of `S/<fs>` read from the degrevlex initial ideal: `n`
/// minus the smallest set of variables meeting every generator's support.
/// `None` for the unit ideal.
pub fn quotient_dimension(ideal: &PolynomialIdeal) -> Option<usize> {
    let init = ideal.initial_ideal(MonomialOrder::DegRevLex);
    if init.is_unit() {
        return None;
    }
    let n = ideal.ambient.nvars();
    let supports: Vec<u64> = init
        .generators()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .fold(0u64, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    let cover = (0..=n)
        .find(|&k| {
            subsets_of_size(n, k).any(|mask| supports.iter().all(|s| s & mask != 0))
        })
        .expect("all variables always cover");
    Some(n - cover)
}

fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    (0u64..(1u64 << n)).filter(move |m| m.count_ones() as usize == k)
}

/// Regular iff `dim S/<fs> = n - r`.
pub fn regular_by_dimension(ambient: &Ambient, fs: &[Polynomial]) -> Result<bool> {
    let degrees = sequence_degrees(fs)?;
    let n = ambient.nvars();
    if fs.len() > n || degrees.contains(&0) {
        return Ok(false);
    }
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let ideal = PolynomialIdeal::new(ambient, first.field, fs.to_vec())?;
    Ok(quotient_dimension(&ideal) == Some(n - fs.len()))
}

/// Runs both certifiers; they must agree.
pub fn is_regular_sequence(ambient: &Ambient, fs: &[Polynomial]) -> Result<RegularityCertificate> {
    let by_hf = regular_by_hilbert(ambient, fs)?;
    let by_dim = regular_by_dimension(ambient, fs)?;
    if by_hf.regular != by_dim {
        return Err(Error::CertifierDisagreement {
            hilbert: by_hf.regular,
            dimension: by_dim,
        });
    }
    Ok(by_hf)
}

pub const DEFAULT_DENSITY: f64 = 0.5;
pub const DEFAULT_ATTEMPTS: usize = 64;

/// Random nonzero form of degree `e`: each monomial kept with probability
/// `density`, coefficients uniform on the nonzero residues.
pub fn random_form(n: usize, e: u32, density: f64, field: PrimeField, rng: &mut impl Rng) -> Polynomial {
    let monomials = ExponentBox::unbounded(n).monomials(e);
    loop {
        let mut terms: Vec<(Monomial, i64)> = Vec::new();
        for m in &monomials {
            if rng.gen_bool(density.clamp(0.0, 1.0)) {
                terms.push((m.clone(), rng.gen_range(1..field.p) as i64));
            }
        }
        if terms.is_empty() {
            continue;
        }
        return Polynomial::from_terms(field, n, terms).expect("homogeneous by construction");
    }
}

/// Random forms of degrees `a` forming a regular sequence, retrying with
/// fresh randomness up to `attempts` times.
pub fn random_regular_sequence(
    ambient: &Ambient,
    a: &DegreeSequence,
    field: PrimeField,
    seed: u64,
    attempts: usize,
) -> Result<Vec<Polynomial>> {
    if !a.is_finite() {
        return Err(Error::InfiniteEntry);
    }
    let n = ambient.nvars();
    if a.len() > n {
        return Err(Error::LengthMismatch { expected: n, found: a.len() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let fs: Vec<Polynomial> = a
            .finite_entries()
            .into_iter()
            .map(|e| random_form(n, e, DEFAULT_DENSITY, field, &mut rng))
            .collect();
        if is_regular_sequence(ambient, &fs)?.regular {
            return Ok(fs);
        }
    }
    Err(Error::AttemptsExhausted(attempts))
}

/// `<fs>` plus random forms of the `extra` degrees.
pub fn random_containing_ideal(
    ambient: &Ambient,
    fs: &[Polynomial],
    extra: &[u32],
    density: f64,
    field: PrimeField,
    seed: u64,
) -> Result<PolynomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut gens = fs.to_vec();
    for &e in extra {
        gens.push(random_form(ambient.nvars(), e, density, field, &mut rng));
    }
    PolynomialIdeal::new(ambient, field, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mideal::DEFAULT_SLICE_BUDGET;

    fn amb(n: usize) -> Ambient {
        Ambient::standard(n)
    }

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn poly(n: usize, p: u32, text: &str) -> Polynomial {
        Polynomial::parse(&amb(n), gf(p), text).unwrap()
    }

    fn show(n: usize, f: &Polynomial) -> String {
        f.format(&amb(n))
    }

    const DRL: MonomialOrder = MonomialOrder::DegRevLex;

    #[test]
    fn field_checks() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(65521).is_ok());
        let f = gf(7);
        assert_eq!(f.mul(f.inv(3), 3), 1);
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn parse_and_format() {
        let f = poly(3, 7, "x^2 + y*z");
        assert_eq!(show(3, &f), "x^2 + y*z");
        let g = poly(2, 7, "3*x^2 - 10*y^2 + 8*x*y");
        assert_eq!(show(2, &g), "3*x^2 + x*y - 3*y^2");
        assert_eq!(poly(2, 7, "7*x"), Polynomial::zero(gf(7), 2));
        assert_eq!(Polynomial::parse(&amb(2), gf(7), "x^2 + y"), Err(Error::Inhomogeneous));
        assert!(Polynomial::parse(&amb(2), gf(7), "x^2 + q^2").is_err());
        assert_eq!(poly(2, 7, "-x*y"), poly(2, 7, "6*x*y"));
    }

    #[test]
    fn degrevlex_examples() {
        let m = |e: &[u32]| Monomial::new(e.iter().copied());
        // x*z < y^2 in degrevlex, > in lex
        assert_eq!(DRL.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        assert_eq!(DRL.compare(&m(&[0, 0, 3]), &m(&[2, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&poly(2, 7, "x^2*y"), &[poly(2, 7, "x*y")], DRL).unwrap();
        assert!(nf.is_zero());
        let nf = normal_form(&poly(2, 7, "x^2"), &[poly(2, 7, "x^2 - y^2")], DRL).unwrap();
        assert_eq!(show(2, &nf), "y^2");
        let nf = normal_form(&poly(2, 7, "y^3"), &[poly(2, 7, "x^2")], MonomialOrder::Lex).unwrap();
        assert_eq!(show(2, &nf), "y^3");
        let err = normal_form(&poly(2, 7, "x^2"), &[poly(2, 11, "x")], DRL);
        assert_eq!(err, Err(Error::FieldMismatch { left: 7, right: 11 }));
    }

    #[test]
    fn s_polynomial_examples() {
        let f = poly(2, 7, "x^2 - y^2");
        let g = poly(2, 7, "x*y");
        assert_eq!(show(2, &s_polynomial(&f, &g, DRL).unwrap()), "-y^3");
        assert!(s_polynomial(&f, &f, DRL).unwrap().is_zero());
        let s = s_polynomial(&poly(2, 7, "x^2"), &poly(2, 7, "y^2"), DRL).unwrap();
        assert!(s.is_zero());
        assert_eq!(
            s_polynomial(&f, &Polynomial::zero(gf(7), 2), DRL),
            Err(Error::ZeroPolynomial)
        );
    }

    fn assert_groebner(basis: &[Polynomial], order: MonomialOrder) {
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let s = s_polynomial(&basis[i], &basis[j], order).unwrap();
                assert!(normal_form(&s, basis, order).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn buchberger_examples() {
        let gens = vec![poly(2, 7, "x^2 - y^2"), poly(2, 7, "x*y")];
        let gb = buchberger(&gens, DRL).unwrap();
        let texts: BTreeSet<String> = gb.iter().map(|g| show(2, g)).collect();
        let expected: BTreeSet<String> = ["x^2 - y^2", "x*y", "y^3"].iter().map(|s| s.to_string()).collect();
        assert_eq!(texts, expected);
        assert_groebner(&gb, DRL);
        assert_eq!(buchberger(&gb, DRL).unwrap(), gb);

        let lin = vec![poly(2, 7, "x"), poly(2, 7, "y")];
        assert_eq!(buchberger(&lin, DRL).unwrap().len(), 2);
        let pp = vec![poly(2, 7, "x^2"), poly(2, 7, "y^3")];
        let gb = buchberger(&pp, DRL).unwrap();
        assert_eq!(gb.iter().map(|g| show(2, g)).collect::<Vec<_>>(), vec!["x^2", "y^3"]);
    }

    #[test]
    fn initial_ideal_examples() {
        let i = PolynomialIdeal::new(&amb(2), gf(7), vec![poly(2, 7, "x^2 - y^2"), poly(2, 7, "x*y")]).unwrap();
        assert_eq!(i.initial_ideal(DRL).to_string(), "<x^2, x*y, y^3>");
        let m = MonomialIdeal::parse(&amb(2), "<x^2, x*y, y^4>").unwrap();
        assert_eq!(PolynomialIdeal::from_monomial_ideal(&m, gf(7)).initial_ideal(DRL), m);
        let l = PolynomialIdeal::new(&amb(2), gf(7), vec![poly(2, 7, "x + y")]).unwrap();
        assert_eq!(l.initial_ideal(DRL).to_string(), "<x>");
    }

    #[test]
    fn hilbert_examples() {
        let i = PolynomialIdeal::new(&amb(2), gf(7), vec![poly(2, 7, "x^2 - y^2"), poly(2, 7, "x*y")]).unwrap();
        assert_eq!(i.hilbert_function(4).unwrap().values(), &[1, 2, 1, 0, 0]);
        assert_eq!(hf_rank_oracle(&i, 2, DEFAULT_SLICE_BUDGET).unwrap(), 1);
        assert_eq!(hf_rank_oracle(&i, 3, DEFAULT_SLICE_BUDGET).unwrap(), 0);
        assert_eq!(hf_rank_oracle(&i, 0, DEFAULT_SLICE_BUDGET).unwrap(), 1);
        let z = PolynomialIdeal::new(&amb(3), gf(7), vec![]).unwrap();
        assert_eq!(z.hilbert_function(3).unwrap().values(), &[1, 3, 6, 10]);
        let ci = PolynomialIdeal::new(&amb(2), gf(7), vec![poly(2, 7, "x^2"), poly(2, 7, "y^3")]).unwrap();
        let a = DegreeSequence::finite(&[2, 3]).unwrap();
        assert_eq!(ci.hilbert_function(5).unwrap(), crate::mideal::ci_hilbert(&a, 2, 5).unwrap());
        assert!(matches!(
            hf_rank_oracle(&z, 10, 5),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn regularity_examples() {
        let a2 = amb(2);
        let c = is_regular_sequence(&a2, &[poly(2, 7, "x^2"), poly(2, 7, "y^3")]).unwrap();
        assert!(c.regular);
        let c = is_regular_sequence(&a2, &[poly(2, 7, "x"), poly(2, 7, "x^2")]).unwrap();
        assert_eq!(c, RegularityCertificate { regular: false, witness: Some(2) });
        let c = is_regular_sequence(&a2, &[poly(2, 2, "x + y"), poly(2, 2, "x - y")]).unwrap();
        assert!(!c.regular);
        let c = is_regular_sequence(&a2, &[poly(2, 7, "x + y"), poly(2, 7, "x - y")]).unwrap();
        assert!(c.regular);
    }

    #[test]
    fn random_generation_is_seeded() {
        let a = DegreeSequence::finite(&[2, 3]).unwrap();
        let fs = random_regular_sequence(&amb(2), &a, gf(101), 1, DEFAULT_ATTEMPTS).unwrap();
        assert!(is_regular_sequence(&amb(2), &fs).unwrap().regular);
        assert_eq!(fs, random_regular_sequence(&amb(2), &a, gf(101), 1, DEFAULT_ATTEMPTS).unwrap());
        let mut rev = fs.clone();
        rev.reverse();
        assert!(is_regular_sequence(&amb(2), &rev).unwrap().regular);

        let one = random_regular_sequence(&amb(1), &DegreeSequence::finite(&[2]).unwrap(), gf(101), 3, 4).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].terms().len(), 1);
        assert_eq!(one[0].terms()[0].0, Monomial::new([2]));

        let i = random_containing_ideal(&amb(2), &fs, &[], 0.5, gf(101), 9).unwrap();
        assert_eq!(i.generators(), &fs[..]);
        let i = random_containing_ideal(&amb(2), &fs, &[2, 4], 0.5, gf(101), 9).unwrap();
        let j = random_containing_ideal(&amb(2), &fs, &[2, 4], 0.5, gf(101), 9).unwrap();
        assert_eq!(i, j);
        assert_eq!(&i.generators()[..2], &fs[..]);
        assert!(i.generators().iter().all(|g| g.degree().is_some()));
    }

    #[test]
    fn full_length_regular_sequences_are_gorenstein_symmetric() {
        for seed in 0..10 {
            let a = DegreeSequence::finite(&[2, 2, 3]).unwrap();
            let fs = random_regular_sequence(&amb(3), &a, gf(101), seed, DEFAULT_ATTEMPTS).unwrap();
            let i = PolynomialIdeal::new(&amb(3), gf(101), fs).unwrap();
            let h = hilbert_function_poly(&i, 6).unwrap();
            let s = 4;
            for d in 0..=s {
                assert_eq!(h.value(d), h.value(s - d));
            }
            assert_eq!(h.value(5), Some(0));
            assert_eq!(h.value(6), Some(0));
        }
    }

    #[test]
    fn groebner_matches_rank_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let p = if rng.gen_bool(0.5) { 7 } else { 101 };
            let n = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            let gens: Vec<Polynomial> = (0..k)
                .map(|_| random_form(n, rng.gen_range(1..=3), 0.5, gf(p), &mut rng))
                .collect();
            let i = PolynomialIdeal::new(&amb(n), gf(p), gens).unwrap();
            let h = hilbert_function_poly(&i, 6).unwrap();
            for d in 0..=6 {
                assert_eq!(h.value(d), Some(hf_rank_oracle(&i, d, DEFAULT_SLICE_BUDGET).unwrap()));
            }
        }
    }

    #[test]
    fn hilbert_function_is_order_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(1..=3);
            let k = rng.gen_range(1..=3);
            let gens: Vec<Polynomial> = (0..k)
                .map(|_| random_form(n, rng.gen_range(1..=3), 0.5, gf(7), &mut rng))
                .collect();
            let i = PolynomialIdeal::new(&amb(n), gf(7), gens).unwrap();
            let lex = i.initial_ideal(MonomialOrder::Lex).hilbert_function(6).unwrap();
            let drl = i.initial_ideal(DRL).hilbert_function(6).unwrap();
            assert_eq!(lex, drl);
            assert_groebner(i.groebner_basis(MonomialOrder::Lex), MonomialOrder::Lex);
        }
    }
}
