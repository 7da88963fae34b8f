//! Lex and lex-plus-powers ideals: construction from a Hilbert function,
//! the lex-plus-powers test, compression, and growth bounds.
//!
//! All growth functions speak quotient-side values `H(S/I, d)`. Inside the
//! box cut out by `a`, the standard monomials of a lex-plus-powers ideal in
//! each degree are always the lex-smallest ones.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::mideal::{minimalize, HilbertFunction, MonomialIdeal, Side};
use crate::monom::{binomial, Ambient, DegreeSequence, ExponentBox, Monomial};

/// `J = <x_i^{a_i}> + L` with `L` lexicographic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LppIdeal {
    a: DegreeSequence,
    lex_part: MonomialIdeal,
    whole: MonomialIdeal,
}

impl LppIdeal {
    /// The degree sequence, padded to the ring's variable count.
    pub fn degrees(&self) -> &DegreeSequence {
        &self.a
    }

    pub fn lex_part(&self) -> &MonomialIdeal {
        &self.lex_part
    }

    pub fn whole(&self) -> &MonomialIdeal {
        &self.whole
    }

    pub fn into_whole(self) -> MonomialIdeal {
        self.whole
    }
}

/// Box-lex condition at one degree: the members of `I` among the box
/// monomials form an initial segment in lex-descending order.
fn box_lex_at(i: &MonomialIdeal, bx: &ExponentBox, d: u32) -> bool {
    let mut seen_gap = false;
    for m in bx.monomials(d) {
        if i.holds(&m) {
            if seen_gap {
                return false;
            }
        } else {
            seen_gap = true;
        }
    }
    true
}

fn lex_check_bound(i: &MonomialIdeal, bx: &ExponentBox) -> u32 {
    match bx.socle_degree() {
        Some(s) => s,
        // box-lex degree D persists to D+1 by shadow compression, so one
        // degree past the generators is enough
        None => i.max_generator_degree().unwrap_or(0) + 1,
    }
}

/// Lex-plus-powers test with the pure powers required to lie in `I`.
pub fn is_lpp(i: &MonomialIdeal, a: &DegreeSequence) -> Result<bool> {
    Ok(i.contains_pure_powers(a) && is_lpp_weak(i, a)?)
}

/// Only the box-lex condition: every box monomial lex-larger than a box
/// monomial of `I` of the same degree is in `I`. Pure powers are not
/// required.
pub fn is_lpp_weak(i: &MonomialIdeal, a: &DegreeSequence) -> Result<bool> {
    let bx = ExponentBox::new(i.nvars(), a)?;
    let top = lex_check_bound(i, &bx);
    Ok((0..=top).all(|d| box_lex_at(i, &bx, d)))
}

/// The lex-plus-powers ideal for `a` whose quotient Hilbert function agrees
/// with `h` up to `h.bound()`.
///
/// Degree by degree the standard monomials are the `h(d)` lex-smallest box
/// monomials. Fails with [`Error::NotAchievable`] at the first degree where
/// `h(d)` exceeds the box or the chosen sets are not closed under division
/// by variables.
pub fn lpp_from_hf(ambient: &Ambient, a: &DegreeSequence, h: &HilbertFunction) -> Result<LppIdeal> {
    if h.side() != Side::Quotient {
        return Err(Error::Precondition("expected a quotient-side Hilbert function".into()));
    }
    let n = ambient.nvars();
    let a = a.padded(n)?;
    let bx = ExponentBox::new(n, &a)?;
    let all = ExponentBox::unbounded(n);

    let mut prev_standard: HashSet<Monomial> = HashSet::new();
    let mut box_gens = Vec::new();
    let mut lex_gens = Vec::new();
    for d in 0..=h.bound() {
        let q = h.value(d).expect("within bound") as usize;
        let cells = bx.monomials(d);
        if q > cells.len() {
            return Err(Error::NotAchievable(d));
        }
        let split = cells.len() - q;
        let standard: HashSet<Monomial> = cells[split..].iter().cloned().collect();
        if d > 0 {
            for m in &standard {
                for v in 0..n {
                    if let Some(down) = m.div_var(v) {
                        if !prev_standard.contains(&down) {
                            return Err(Error::NotAchievable(d));
                        }
                    }
                }
            }
        }
        if split > 0 {
            let last_in = &cells[split - 1];
            lex_gens.extend(all.monomials(d).into_iter().take_while(|m| m >= last_in));
            box_gens.extend(cells[..split].iter().cloned());
        }
        prev_standard = standard;
    }
    let lex_part = minimalize(ambient, lex_gens);
    let powers = MonomialIdeal::pure_powers(ambient, &a)?;
    let whole = powers.sum(&lex_part)?;
    debug_assert_eq!(whole, powers.sum(&minimalize(ambient, box_gens))?);
    Ok(LppIdeal { a, lex_part, whole })
}

/// `H(S/J, d+1)` for the lex-plus-powers ideal `J` with lex part generated
/// in degree `d` and `H(S/J, d) = q`.
pub fn lpp_growth(a: &DegreeSequence, n: usize, d: u32, q: u64) -> Result<u64> {
    let bx = ExponentBox::new(n, a)?;
    let cells = bx.monomials(d);
    if q > cells.len() as u64 {
        return Err(Error::OutOfRange {
            what: "q",
            value: q,
            max: cells.len() as u64,
        });
    }
    let standard: HashSet<Monomial> = cells[cells.len() - q as usize..].iter().cloned().collect();
    let count = bx
        .monomials(d + 1)
        .into_iter()
        .filter(|m| (0..n).all(|v| m.div_var(v).is_none_or(|down| standard.contains(&down))))
        .count();
    Ok(count as u64)
}

/// The ideal `J = <x^a> + L` with `L` generated by the lex-largest box
/// monomials of degree `d`, chosen so that `H(S/J, d) = q`.
pub fn lpp_generated_in_degree(ambient: &Ambient, a: &DegreeSequence, d: u32, q: u64) -> Result<MonomialIdeal> {
    let n = ambient.nvars();
    let cells = ExponentBox::new(n, a)?.monomials(d);
    if q > cells.len() as u64 {
        return Err(Error::OutOfRange {
            what: "q",
            value: q,
            max: cells.len() as u64,
        });
    }
    let keep = cells.len() - q as usize;
    MonomialIdeal::pure_powers(ambient, a)?.sum(&minimalize(ambient, cells.into_iter().take(keep)))
}

/// Macaulay's maximal growth, computed from the lex ideal itself.
pub fn macaulay_growth(n: usize, d: u32, q: u64) -> Result<u64> {
    lpp_growth(&DegreeSequence::empty(), n, d, q)
}

/// The `d`-th Macaulay representation
/// `q = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_j, j)` with
/// `k_d > k_{d-1} > ... > k_j >= j >= 1`, as `(k_i, i)` pairs.
pub fn macaulay_representation(q: u64, d: u32) -> Result<Vec<(u64, u32)>> {
    if d == 0 {
        return Err(Error::Precondition("Macaulay representation needs d >= 1".into()));
    }
    let mut rest = BigUint::from(q);
    let mut out = Vec::new();
    let mut i = d;
    while !rest.is_zero() && i >= 1 {
        // largest k with C(k, i) <= rest
        let mut k = i as u64;
        while binomial(k + 1, i as u64) <= rest {
            k += 1;
        }
        rest -= binomial(k, i as u64);
        out.push((k, i));
        i -= 1;
    }
    Ok(out)
}

/// `q^<d> = sum C(k_i + 1, i + 1)` over the Macaulay representation.
pub fn macaulay_bound(q: u64, d: u32) -> Result<BigUint> {
    Ok(macaulay_representation(q, d)?
        .into_iter()
        .map(|(k, i)| binomial(k + 1, i as u64 + 1))
        .sum())
}

/// Macaulay's bound by representation arithmetic, for comparison with
/// [`macaulay_growth`]. Degree 0 is handled directly: `1 -> n`.
pub fn macaulay_growth_arithmetic(n: usize, d: u32, q: u64) -> Result<u64> {
    let max = crate::monom::monomial_count(n, d).to_u64().ok_or(Error::Overflow)?;
    if q > max {
        return Err(Error::OutOfRange { what: "q", value: q, max });
    }
    if d == 0 {
        return Ok(q * n as u64);
    }
    macaulay_bound(q, d)?.to_u64().ok_or(Error::Overflow)
}

/// The growth bound for ideals in `n` variables containing a regular
/// sequence of degrees `a` (length at most `n`).
pub fn refined_bound(n: usize, a: &DegreeSequence, d: u32, q: u64) -> Result<u64> {
    lpp_growth(&a.padded(n)?, n, d, q)
}

/// Replaces `i` by the lex-plus-powers ideal with the same Hilbert function,
/// up to the box socle degree (all entries finite) or one past the largest
/// generator degree otherwise.
pub fn cl_compress(i: &MonomialIdeal, a: &DegreeSequence) -> Result<LppIdeal> {
    let padded = a.padded(i.nvars())?;
    let bound = match padded.socle_degree() {
        Some(s) => s,
        None => i.max_generator_degree().unwrap_or(0) + 1,
    };
    cl_compress_to(i, a, bound)
}

/// As [`cl_compress`], matching the Hilbert function up to `bound`.
pub fn cl_compress_to(i: &MonomialIdeal, a: &DegreeSequence, bound: u32) -> Result<LppIdeal> {
    if !i.contains_pure_powers(a) {
        return Err(Error::Precondition(format!(
            "{i} does not contain the pure powers for ({a})"
        )));
    }
    let h = i.hilbert_function(bound)?;
    lpp_from_hf(i.ambient(), a, &h).map_err(|e| match e {
        Error::NotAchievable(d) => Error::InvariantViolation(format!(
            "compression of {i} failed at degree {d}"
        )),
        other => other,
    })
}
