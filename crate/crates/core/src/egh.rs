//! Per-degree EGH checks, liaison through the monomial complete
//! intersection `M = <x^a>`, the gap condition, and the slice construction
//! that builds a monomial ideal with the Hilbert function of `I` containing
//! the same pure powers.

use crate::error::{Error, Result};
use crate::lpp::{cl_compress_to, lpp_generated_in_degree, lpp_growth, LppIdeal};
use crate::mideal::{ci_hilbert, minimalize, HilbertFunction, MonomialIdeal};
use crate::monom::{box_count, monomial_count, Bound, DegreeSequence, Monomial};

use num_traits::ToPrimitive;

/// `s = sum (a_i - 1)`.
pub fn socle_degree(a: &DegreeSequence) -> Result<u32> {
    a.socle_degree().ok_or(Error::InfiniteEntry)
}

/// `a_j > sum_{i<j} (a_i - 1)` for every `j >= 2`. Unbounded entries
/// satisfy it trivially.
pub fn gap_condition(a: &DegreeSequence) -> bool {
    let mut partial = 0u64;
    for (j, b) in a.entries().iter().enumerate() {
        match *b {
            Bound::Finite(aj) => {
                if j > 0 && aj as u64 <= partial {
                    return false;
                }
                partial += aj as u64 - 1;
            }
            Bound::Infinite => return true,
        }
    }
    true
}

/// The degree `s - d - 1` paired with `d` under liaison.
pub fn dual_degree(a: &DegreeSequence, d: u32) -> Result<u32> {
    let s = socle_degree(a)?;
    if s == 0 || d > s - 1 {
        return Err(Error::OutOfRange {
            what: "degree",
            value: d as u64,
            max: s.saturating_sub(1) as u64,
        });
    }
    Ok(s - d - 1)
}

/// Decides whether some ideal containing the pure powers `x^a` has quotient
/// values `h_d` at `d` and `h_next` at `d + 1`: true iff `h_next` does not
/// exceed the lex-plus-powers growth from `h_d`.
pub fn egh_at_degree(h_d: u64, h_next: u64, a: &DegreeSequence, n: usize, d: u32) -> Result<bool> {
    let cells = box_count(n, a, d)?.to_u64().ok_or(Error::Overflow)?;
    if h_d > cells {
        return Err(Error::OutOfRange {
            what: "H(S/I,d)",
            value: h_d,
            max: cells,
        });
    }
    let total = monomial_count(n, d + 1).to_u64().ok_or(Error::Overflow)?;
    if h_next > total {
        return Err(Error::OutOfRange {
            what: "H(S/I,d+1)",
            value: h_next,
            max: total,
        });
    }
    Ok(h_next <= lpp_growth(a, n, d, h_d)?)
}

/// An ideal containing the pure powers with quotient values `h_d`, `h_next`
/// at degrees `d`, `d + 1`, when one exists: the lex-plus-powers ideal
/// generated in degree `d`, plus enough lex-largest standard monomials of
/// degree `d + 1` to bring the next value down to `h_next`.
pub fn egh_witness(
    ambient: &crate::monom::Ambient,
    a: &DegreeSequence,
    d: u32,
    h_d: u64,
    h_next: u64,
) -> Result<Option<MonomialIdeal>> {
    let n = ambient.nvars();
    if !egh_at_degree(h_d, h_next, a, n, d)? {
        return Ok(None);
    }
    let base = lpp_generated_in_degree(ambient, a, d, h_d)?;
    let growth = lpp_growth(a, n, d, h_d)?;
    let extra: Vec<Monomial> = base
        .standard_monomials(d + 1)
        .into_iter()
        .take((growth - h_next) as usize)
        .collect();
    Ok(Some(base.sum(&minimalize(ambient, extra))?))
}

fn check_linkage_input(j: &MonomialIdeal, a: &DegreeSequence) -> Result<MonomialIdeal> {
    let n = j.nvars();
    if a.len() != n || !a.is_finite() {
        return Err(Error::Precondition(
            "liaison needs a finite degree sequence with one entry per variable".into(),
        ));
    }
    if !j.contains_pure_powers(a) {
        return Err(Error::Precondition(format!("{j} does not contain <x^a> for a = ({a})")));
    }
    MonomialIdeal::pure_powers(j.ambient(), a)
}

/// `(M : J)` for `M = <x_1^{a_1}, ..., x_n^{a_n}> ⊆ J`.
pub fn liaison_transform(j: &MonomialIdeal, a: &DegreeSequence) -> Result<MonomialIdeal> {
    let m = check_linkage_input(j, a)?;
    m.colon(j)
}

/// One row of the liaison identity `H(S/M,t) = H(S/J,t) + H(S/(M:J), s-t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LiaisonRow {
    pub t: u32,
    pub complete_intersection: u64,
    pub ideal: u64,
    pub linked_dual: u64,
}

impl LiaisonRow {
    pub fn holds(&self) -> bool {
        self.complete_intersection == self.ideal + self.linked_dual
    }
}

pub fn liaison_table(j: &MonomialIdeal, a: &DegreeSequence) -> Result<Vec<LiaisonRow>> {
    let linked = liaison_transform(j, a)?;
    let n = j.nvars();
    let s = socle_degree(a)?;
    let hm = ci_hilbert(a, n, s)?;
    let hj = j.hilbert_function(s)?;
    let hl = linked.hilbert_function(s)?;
    Ok((0..=s)
        .map(|t| LiaisonRow {
            t,
            complete_intersection: hm.value(t).expect("bound"),
            ideal: hj.value(t).expect("bound"),
            linked_dual: hl.value(s - t).expect("bound"),
        })
        .collect())
}

/// The liaison identity at every `0 <= t <= s`.
pub fn liaison_check(j: &MonomialIdeal, a: &DegreeSequence) -> Result<bool> {
    Ok(liaison_table(j, a)?.iter().all(LiaisonRow::holds))
}

/// One slice of the construction: `I_j` (the image of `(I : x_n^j) + <x_n>`
/// in the first `n - 1` variables) and its compression `M_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slice {
    pub j: u32,
    pub restricted: MonomialIdeal,
    pub compressed: LppIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SliceDecomposition {
    /// Index of the slicing variable (always the last one).
    pub var: usize,
    /// Saturation index: `(I : x_n^N) = (I : x_n^∞)`.
    pub saturation: u32,
    pub slices: Vec<Slice>,
    pub result: MonomialIdeal,
    /// Degrees for which the Hilbert function of `result` is guaranteed.
    pub bound: u32,
}

impl SliceDecomposition {
    /// The compressed slice whose monomials, times `x_n^j`, sit in the result.
    pub fn slice_for(&self, j: u32) -> &Slice {
        &self.slices[j.min(self.saturation) as usize]
    }

    /// Membership in `K` read off the slices: `x^u x_n^j ∈ K` iff
    /// `x^u ∈ M_min(j, N)`.
    pub fn slice_membership(&self, m: &Monomial) -> bool {
        let j = m.exponent(self.var);
        self.slice_for(j).compressed.whole().holds(&m.remove_var(self.var))
    }
}

/// Builds `K` from the compressed slices `M_j` of `I` along the last
/// variable. `a` (length `r < n`) gives pure powers contained in `I`;
/// Hilbert functions are matched up to `bound`.
pub fn slice_construct(i: &MonomialIdeal, a: &DegreeSequence, bound: u32) -> Result<SliceDecomposition> {
    let n = i.nvars();
    if a.len() >= n {
        return Err(Error::Precondition(format!(
            "slicing needs fewer pure powers ({}) than variables ({n})",
            a.len()
        )));
    }
    if !i.contains_pure_powers(a) {
        return Err(Error::Precondition(format!("{i} does not contain <x^a> for a = ({a})")));
    }
    let var = n - 1;
    let (saturation, chain) = i.colon_power_saturate(var)?;
    let mut slices = Vec::with_capacity(chain.len());
    let mut gens = Vec::new();
    for (j, colon) in chain.iter().enumerate() {
        let restricted = colon.restrict_drop_last();
        let compressed = cl_compress_to(&restricted, a, bound)?;
        gens.extend(
            compressed
                .whole()
                .generators()
                .iter()
                .map(|g| g.push_var(j as u32)),
        );
        slices.push(Slice {
            j: j as u32,
            restricted,
            compressed,
        });
    }
    let result = minimalize(i.ambient(), gens);
    Ok(SliceDecomposition {
        var,
        saturation,
        slices,
        result,
        bound,
    })
}

/// Checks `H(S/I,t) = sum_{j=0}^{t} H(S/((I : x_n^j) + <x_n>), t - j)` for
/// every `t <= bound`.
pub fn slice_hf_identity(i: &MonomialIdeal, bound: u32) -> Result<bool> {
    let n = i.nvars();
    if n == 0 {
        return Ok(true);
    }
    let var = n - 1;
    let (_, chain) = i.colon_power_saturate(var)?;
    let x_last = MonomialIdeal::new(i.ambient(), vec![Monomial::var_power(n, var, 1)])?;
    let pieces: Vec<HilbertFunction> = chain
        .iter()
        .map(|c| c.sum(&x_last)?.hilbert_function(bound))
        .collect::<Result<_>>()?;
    let whole = i.hilbert_function(bound)?;
    for t in 0..=bound {
        let total: u64 = (0..=t)
            .map(|j| {
                let piece = &pieces[(j as usize).min(pieces.len() - 1)];
                piece.value(t - j).expect("bound")
            })
            .sum();
        if total != whole.value(t).expect("bound") {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mideal::ideals_containing_powers;
    use crate::monom::Ambient;

    fn amb(n: usize) -> Ambient {
        Ambient::standard(n)
    }

    fn ideal(n: usize, text: &str) -> MonomialIdeal {
        MonomialIdeal::parse(&amb(n), text).unwrap()
    }

    fn seq(a: &[u32]) -> DegreeSequence {
        DegreeSequence::finite(a).unwrap()
    }

    #[test]
    fn socle_examples() {
        assert_eq!(socle_degree(&seq(&[2, 2])).unwrap(), 2);
        assert_eq!(socle_degree(&seq(&[2, 3])).unwrap(), 3);
        assert_eq!(socle_degree(&seq(&[2, 3, 5])).unwrap(), 7);
        let inf = DegreeSequence::new(vec![Bound::Infinite]).unwrap();
        assert_eq!(socle_degree(&inf), Err(Error::InfiniteEntry));
    }

    #[test]
    fn gap_examples() {
        assert!(gap_condition(&seq(&[2, 3, 5])));
        assert!(gap_condition(&seq(&[2, 2])));
        assert!(!gap_condition(&seq(&[2, 2, 2])));
        assert!(gap_condition(&seq(&[7])));
        assert!(gap_condition(&DegreeSequence::empty()));
    }

    #[test]
    fn gap_condition_properties() {
        fn sequences(n: usize) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for s in sequences(n - 1) {
                let lo = s.last().copied().unwrap_or(2);
                for a in lo..=9 {
                    let mut t = s.clone();
                    t.push(a);
                    out.push(t);
                }
            }
            out
        }
        for n in 1..=5 {
            for a in sequences(n) {
                let da = seq(&a);
                if n == 1 {
                    assert!(gap_condition(&da));
                }
                if gap_condition(&da) {
                    let s = socle_degree(&da).unwrap();
                    let last = *a.last().unwrap();
                    assert!(last > (s.saturating_sub(1)) / 2 + 1, "a={a:?}");
                    // raising the last entry keeps the condition
                    let mut b = a.clone();
                    *b.last_mut().unwrap() += 1;
                    assert!(gap_condition(&seq(&b)));
                }
            }
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(dual_degree(&seq(&[2, 3]), 0).unwrap(), 2);
        assert_eq!(dual_degree(&seq(&[2, 3]), 1).unwrap(), 1);
        assert_eq!(dual_degree(&seq(&[2, 2]), 0).unwrap(), 1);
        assert!(dual_degree(&seq(&[2, 2]), 2).is_err());
    }

    #[test]
    fn egh_examples() {
        let a = seq(&[2, 3]);
        // y^2 standard in degree 2 leaves nothing standard in degree 3
        assert!(!egh_at_degree(1, 1, &a, 2, 2).unwrap());
        assert!(egh_at_degree(1, 0, &a, 2, 2).unwrap());
        assert!(!egh_at_degree(2, 3, &a, 2, 1).unwrap());
        assert!(egh_at_degree(0, 0, &a, 2, 1).unwrap());
        assert!(egh_at_degree(0, 0, &seq(&[3, 3, 4]), 3, 4).unwrap());
        assert!(egh_at_degree(3, 0, &a, 2, 1).is_err());
    }

    #[test]
    fn every_value_below_the_bound_has_a_witness() {
        for (n, a) in [(2, seq(&[2, 3])), (2, seq(&[3, 3])), (3, seq(&[2, 2, 3]))] {
            let s = socle_degree(&a).unwrap();
            for d in 0..=s {
                let cells = box_count(n, &a, d).unwrap().to_u64().unwrap();
                for h_d in 0..=cells {
                    let top = lpp_growth(&a, n, d, h_d).unwrap();
                    for h_next in 0..=top {
                        let j = egh_witness(&amb(n), &a, d, h_d, h_next).unwrap().unwrap();
                        assert!(j.contains_pure_powers(&a));
                        let h = j.hilbert_function(d + 1).unwrap();
                        assert_eq!((h.value(d), h.value(d + 1)), (Some(h_d), Some(h_next)));
                    }
                    let total = monomial_count(n, d + 1).to_u64().unwrap();
                    if top < total {
                        assert!(egh_witness(&amb(n), &a, d, h_d, top + 1).unwrap().is_none());
                    }
                }
            }
        }
    }

    #[test]
    fn liaison_examples() {
        let a = seq(&[2, 2]);
        let m = MonomialIdeal::pure_powers(&amb(2), &a).unwrap();
        assert!(liaison_transform(&m, &a).unwrap().is_unit());
        assert_eq!(liaison_transform(&ideal(2, "<x, y^2>"), &a).unwrap(), ideal(2, "<x, y^2>"));
        assert_eq!(
            liaison_transform(&ideal(2, "<x, y>"), &a).unwrap(),
            ideal(2, "<x^2, x*y, y^2>")
        );
        let rows = liaison_table(&ideal(2, "<x, y^2>"), &a).unwrap();
        let flat: Vec<(u64, u64, u64)> = rows
            .iter()
            .map(|r| (r.complete_intersection, r.ideal, r.linked_dual))
            .collect();
        assert_eq!(flat, vec![(1, 1, 0), (2, 1, 1), (1, 0, 1)]);
        assert!(liaison_check(&m, &a).unwrap());
        assert!(matches!(
            liaison_check(&ideal(2, "<x^2>"), &a),
            Err(Error::Precondition(_))
        ));
    }

    /// Brute-force colon: `m ∈ (M : J)` iff `m * g ∈ M` for every generator.
    fn colon_contains(m_ideal: &MonomialIdeal, j: &MonomialIdeal, m: &Monomial) -> bool {
        j.generators().iter().all(|g| m_ideal.holds(&m.mul(g)))
    }

    #[test]
    fn liaison_exhaustive_small_cases() {
        for a in [seq(&[2, 2]), seq(&[2, 3]), seq(&[3, 3])] {
            let m = MonomialIdeal::pure_powers(&amb(2), &a).unwrap();
            let s = socle_degree(&a).unwrap();
            for j in ideals_containing_powers(&amb(2), &a).unwrap() {
                assert!(liaison_check(&j, &a).unwrap(), "J={j}");
                let linked = liaison_transform(&j, &a).unwrap();
                for d in 0..=s + 1 {
                    for u in crate::monom::ExponentBox::unbounded(2).monomials(d) {
                        assert_eq!(linked.holds(&u), colon_contains(&m, &j, &u));
                    }
                }
                // double annihilator
                assert_eq!(liaison_transform(&linked, &a).unwrap(), j);
            }
        }
    }

    #[test]
    fn liaison_symmetry_of_per_degree_checks() {
        for a in [seq(&[2, 2]), seq(&[2, 3]), seq(&[3, 3]), seq(&[2, 4])] {
            let s = socle_degree(&a).unwrap();
            for j in ideals_containing_powers(&amb(2), &a).unwrap() {
                let linked = liaison_transform(&j, &a).unwrap();
                let hj = j.hilbert_function(s + 1).unwrap();
                let hl = linked.hilbert_function(s + 1).unwrap();
                for d in 0..s {
                    let e = dual_degree(&a, d).unwrap();
                    assert!(egh_at_degree(hj.value(d).unwrap(), hj.value(d + 1).unwrap(), &a, 2, d).unwrap());
                    assert!(egh_at_degree(hl.value(e).unwrap(), hl.value(e + 1).unwrap(), &a, 2, e).unwrap());
                }
            }
        }
    }

    #[test]
    fn slice_examples() {
        let i = ideal(3, "<x^2, y*z>");
        let a = seq(&[2]);
        let sd = slice_construct(&i, &a, 5).unwrap();
        assert_eq!(sd.saturation, 1);
        assert_eq!(sd.slices[0].compressed.whole(), &ideal(2, "<x^2>"));
        assert_eq!(sd.slices[1].compressed.whole(), &ideal(2, "<x, y^2>"));
        assert_eq!(sd.result, ideal(3, "<x^2, x*z, y^2*z>"));
        assert_eq!(sd.result.hilbert_function(5).unwrap(), i.hilbert_function(5).unwrap());
        assert_eq!(i.hilbert_function(3).unwrap().values(), &[1, 3, 4, 4]);

        let i = ideal(2, "<x^2, x*y>");
        assert_eq!(slice_construct(&i, &a, 4).unwrap().result, i);
        let i = ideal(2, "<x^2, y^2>");
        let sd = slice_construct(&i, &a, 4).unwrap();
        assert_eq!(sd.saturation, 2);
        assert_eq!(sd.result, i);

        assert!(slice_construct(&ideal(2, "<x^2, y^3>"), &seq(&[2, 3]), 4).is_err());
        assert!(slice_construct(&ideal(2, "<x*y>"), &a, 4).is_err());
    }

    #[test]
    fn slice_structure() {
        let i = ideal(3, "<x^2, x*y*z, y^3*z^2, y^2*z^4>");
        let a = seq(&[2]);
        let bound = 8;
        let sd = slice_construct(&i, &a, bound).unwrap();
        for w in sd.slices.windows(2) {
            assert!(w[0].compressed.whole().is_subset_of(w[1].compressed.whole()).unwrap());
        }
        for d in 0..=bound {
            for m in crate::monom::ExponentBox::unbounded(3).monomials(d) {
                assert_eq!(sd.result.holds(&m), sd.slice_membership(&m), "{m:?}");
            }
        }
        assert_eq!(sd.result.hilbert_function(bound).unwrap(), i.hilbert_function(bound).unwrap());
        assert!(sd.result.contains_pure_powers(&a));
    }

    #[test]
    fn slice_identity_examples() {
        assert!(slice_hf_identity(&ideal(3, "<x^2, y*z>"), 4).unwrap());
        assert!(slice_hf_identity(&MonomialIdeal::zero(&amb(3)), 4).unwrap());
        assert!(slice_hf_identity(&ideal(2, "<x^2, x*y^3>"), 6).unwrap());
    }
}
