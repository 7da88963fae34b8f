//! Acceptance checks, one line per criterion:
//! `PASS <n> <name> (<seconds>s, limit <limit>s) <detail>`.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use egh_core::campaign::{cl_search, run_campaign, CampaignConfig};
use egh_core::egh::{liaison_check, slice_construct};
use egh_core::lpp::{is_lpp_weak, macaulay_growth, refined_bound};
use egh_core::mideal::{ideals_containing_powers, minimalize, MonomialIdeal, DEFAULT_SLICE_BUDGET};
use egh_core::monom::{Ambient, DegreeSequence, ExponentBox, Monomial};
use egh_core::polyfp::{
    buchberger, hf_rank_oracle, hilbert_function_poly, is_regular_sequence, normal_form, random_form,
    random_regular_sequence, s_polynomial, MonomialOrder, Polynomial, PolynomialIdeal, PrimeField, DEFAULT_ATTEMPTS,
};

const SEED: u64 = 20240601;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn seq(a: &[u32]) -> DegreeSequence {
    DegreeSequence::finite(a).expect("valid")
}

fn c1_lpp_example() -> Outcome {
    let amb = Ambient::standard(2);
    let i = MonomialIdeal::parse(&amb, "<x^2, x*y, y^4>").expect("parses");
    let lpp = is_lpp_weak(&i, &seq(&[2, 3])).expect("checks");
    let h = i.hilbert_function(4).expect("hf");
    outcome(lpp && h.values() == [1, 2, 1, 1, 0], format!("is_lpp_weak={lpp} H={:?}", h.values()))
}

/// All lex ideals for `y > x` generated in degrees `<= 4`, as one segment
/// length per degree, each plus `<y^3, x^2>`.
fn c2_no_lpp_for_other_order() -> Outcome {
    let amb = Ambient::new(vec!["y", "x"]).expect("names");
    let powers = MonomialIdeal::parse(&amb, "<y^3, x^2>").expect("parses");
    let top = 4u32;
    let target = [1u64, 2, 1, 1, 0];
    let segments: Vec<Vec<Monomial>> = (0..=top).map(|d| ExponentBox::unbounded(2).monomials(d)).collect();
    let mut lengths = vec![0usize; top as usize + 1];
    let (mut examined, mut matches) = (0u64, 0u64);
    loop {
        let gens = (0..=top as usize).flat_map(|d| segments[d][..lengths[d]].to_vec());
        let lex = minimalize(&amb, gens);
        // keep each lex ideal once: its own segment lengths must be the counter
        let canonical = (0..=top).all(|d| lex.degree_piece(d).len() == lengths[d as usize]);
        if canonical {
            examined += 1;
            let h = powers.sum(&lex).expect("same ring").hilbert_function(top).expect("hf");
            if h.values() == target {
                matches += 1;
            }
        }
        let mut d = 0;
        loop {
            if d > top as usize {
                return outcome(
                    matches == 0 && examined > 0,
                    format!("{examined} lex ideals examined, {matches} with H=(1,2,1,1,0)"),
                );
            }
            if lengths[d] < segments[d].len() {
                lengths[d] += 1;
                break;
            }
            lengths[d] = 0;
            d += 1;
        }
    }
}

fn c3_clements_lindstrom() -> Outcome {
    let mut sequences: Vec<Vec<u32>> = Vec::new();
    for n in 1..=3usize {
        let mut stack: Vec<Vec<u32>> = vec![vec![]];
        while let Some(a) = stack.pop() {
            if a.len() == n {
                sequences.push(a);
                continue;
            }
            let lo = a.last().copied().unwrap_or(2);
            for e in lo..=3 {
                let mut b = a.clone();
                b.push(e);
                stack.push(b);
            }
        }
    }
    let (mut subsets, mut violations) = (0u64, 0u64);
    for a in &sequences {
        for row in cl_search(a.len(), &seq(a), 3, 1 << 24).expect("within budget") {
            subsets += row.subsets;
            violations += row.violations;
        }
    }
    outcome(
        violations == 0,
        format!("{} sequences, {subsets} subsets, {violations} violations", sequences.len()),
    )
}

fn c4_liaison() -> Outcome {
    let amb = Ambient::standard(2);
    let (mut ideals, mut violations) = (0, 0);
    for a in [[2, 2], [2, 3], [3, 3]] {
        for j in ideals_containing_powers(&amb, &seq(&a)).expect("small box") {
            ideals += 1;
            if !liaison_check(&j, &seq(&a)).expect("contains powers") {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("{ideals} ideals, {violations} violations"))
}

struct SliceInstance {
    ideal: MonomialIdeal,
    a: DegreeSequence,
    bound: u32,
}

fn slice_instances(count: usize) -> Vec<SliceInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(3..=4usize);
            let r = rng.gen_range(1..n);
            let mut a: Vec<u32> = (0..r).map(|_| rng.gen_range(2..=3)).collect();
            a.sort_unstable();
            let amb = Ambient::standard(n);
            let mut gens: Vec<Monomial> = a
                .iter()
                .enumerate()
                .map(|(i, &e)| Monomial::var_power(n, i, e))
                .collect();
            for _ in 0..rng.gen_range(1..=4) {
                let deg = rng.gen_range(1..=4u32);
                let mut exps = vec![0u32; n];
                for _ in 0..deg {
                    exps[rng.gen_range(0..n)] += 1;
                }
                gens.push(Monomial::new(exps));
            }
            let s: u32 = a.iter().map(|e| e - 1).sum();
            SliceInstance {
                ideal: minimalize(&amb, gens),
                a: seq(&a),
                bound: s + 2,
            }
        })
        .collect()
}

fn c5_slices(instances: &[SliceInstance]) -> Outcome {
    let mut violations = 0;
    for inst in instances {
        let dec = slice_construct(&inst.ideal, &inst.a, inst.bound).expect("preconditions hold");
        let same = inst.ideal.hilbert_function(inst.bound).expect("hf")
            == dec.result.hilbert_function(inst.bound).expect("hf");
        if !same || !dec.result.contains_pure_powers(&inst.a) {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("{} instances, {violations} violations", instances.len()))
}

/// `H(S/J,t) = H(S/(J:g),t-1) + H(S/(J,g),t)` with `g` the last variable.
fn c6_decomposition(instances: &[SliceInstance]) -> Outcome {
    let (mut checked, mut violations) = (0, 0);
    for inst in instances {
        let j = &inst.ideal;
        let n = j.nvars();
        let g = Monomial::var_power(n, n - 1, 1);
        let colon = j.colon_monomial(&g).expect("same ring");
        let plus = j
            .sum(&MonomialIdeal::new(j.ambient(), vec![g]).expect("same ring"))
            .expect("same ring");
        let (hj, hc, hp) = (
            j.hilbert_function(inst.bound).expect("hf"),
            colon.hilbert_function(inst.bound).expect("hf"),
            plus.hilbert_function(inst.bound).expect("hf"),
        );
        for t in 0..=inst.bound {
            checked += 1;
            let shifted = if t == 0 { 0 } else { hc.value(t - 1).expect("bound") };
            if hj.value(t) != Some(shifted + hp.value(t).expect("bound")) {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("{checked} degrees checked, {violations} violations"))
}

fn c7_campaign() -> Outcome {
    let config = CampaignConfig::new(3, seq(&[2, 3, 5]), PrimeField::new(101).expect("prime"), 500, 42);
    let report = run_campaign(&config).expect("campaign runs");
    outcome(
        report.violations() == 0 && report.instances.len() == 500,
        format!(
            "{} instances, {} rows, {} violations",
            report.instances.len(),
            report.rows_checked(),
            report.violations()
        ),
    )
}

fn c8_refined_bound() -> Outcome {
    let refined = refined_bound(3, &seq(&[2, 2]), 1, 3).expect("in range");
    let macaulay = macaulay_growth(3, 1, 3).expect("in range");
    outcome(refined == 4 && macaulay == 6, format!("refined={refined} macaulay={macaulay}"))
}

fn c9_groebner() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let order = MonomialOrder::DegRevLex;
    let (mut compared, mut spolys, mut violations) = (0, 0, 0);
    for _ in 0..200 {
        let p = if rng.gen_bool(0.5) { 7 } else { 101 };
        let field = PrimeField::new(p).expect("prime");
        let n = rng.gen_range(1..=3usize);
        let k = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = (0..k)
            .map(|_| random_form(n, rng.gen_range(1..=3), 0.5, field, &mut rng))
            .collect();
        let ideal = PolynomialIdeal::new(&Ambient::standard(n), field, gens).expect("same ring");
        let h = hilbert_function_poly(&ideal, 6).expect("hf");
        for d in 0..=6 {
            compared += 1;
            if h.value(d) != Some(hf_rank_oracle(&ideal, d, DEFAULT_SLICE_BUDGET).expect("small")) {
                violations += 1;
            }
        }
        let basis = ideal.groebner_basis(order);
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                spolys += 1;
                let s = s_polynomial(&basis[i], &basis[j], order).expect("nonzero");
                if !normal_form(&s, basis, order).expect("same ring").is_zero() {
                    violations += 1;
                }
            }
        }
        if buchberger(basis, order).expect("same ring") != basis {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{compared} values, {spolys} S-polynomials, {violations} violations"),
    )
}

fn product(f: &Polynomial, g: &Polynomial) -> Polynomial {
    g.terms()
        .iter()
        .map(|(m, c)| f.mul_monomial(m).scale(*c))
        .fold(Polynomial::zero(f.field(), f.nvars()), |acc, t| acc.add(&t).expect("same ring"))
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn c10_certifiers() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 10);
    let field = PrimeField::new(101).expect("prime");
    let (mut checked, mut disagreements, mut wrong) = (0, 0, 0);
    let mut examine = |amb: &Ambient, fs: &[Polynomial], expect_regular: bool| {
        let mut verdicts = Vec::new();
        for perm in permutations(fs.len()) {
            let permuted: Vec<Polynomial> = perm.iter().map(|&i| fs[i].clone()).collect();
            match is_regular_sequence(amb, &permuted) {
                Ok(c) => verdicts.push(c.regular),
                Err(_) => disagreements += 1,
            }
        }
        checked += 1;
        if verdicts.iter().any(|&v| v != expect_regular) {
            wrong += 1;
        }
    };
    for k in 0..400 {
        let n = rng.gen_range(2..=3usize);
        let r = rng.gen_range(2..=n);
        let mut a: Vec<u32> = (0..r).map(|_| rng.gen_range(2..=3)).collect();
        a.sort_unstable();
        let amb = Ambient::standard(n);
        let mut fs = random_regular_sequence(&amb, &seq(&a), field, rng.gen(), DEFAULT_ATTEMPTS).expect("p = 101");
        if k % 2 == 0 {
            examine(&amb, &fs, true);
            continue;
        }
        if k % 4 == 1 {
            // replace f_2 by a multiple of f_1
            let m = random_form(n, a[1] - a[0], 0.5, field, &mut rng);
            fs[1] = product(&m, &fs[0]);
        } else {
            // give f_1 and f_2 a common linear factor
            let l = random_form(n, 1, 0.5, field, &mut rng);
            let g1 = random_form(n, a[0] - 1, 0.5, field, &mut rng);
            let g2 = random_form(n, a[1] - 1, 0.5, field, &mut rng);
            fs[0] = product(&l, &g1);
            fs[1] = product(&l, &g2);
        }
        examine(&amb, &fs, false);
    }
    outcome(
        disagreements == 0 && wrong == 0,
        format!("{checked} inputs (half perturbed), {disagreements} disagreements, {wrong} wrong or permutation-dependent"),
    )
}

type Criterion<'a> = (u32, &'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let slices = slice_instances(200);
    let criteria: Vec<Criterion> = vec![
        (1, "lex-plus-powers example exists", Duration::from_secs(1), Box::new(c1_lpp_example)),
        (2, "no lex-plus-powers ideal for y > x", Duration::from_secs(1), Box::new(c2_no_lpp_for_other_order)),
        (3, "Clements-Lindstrom shadow minimality", Duration::from_secs(60), Box::new(c3_clements_lindstrom)),
        (4, "liaison identity", Duration::from_secs(30), Box::new(c4_liaison)),
        (5, "slice construction", Duration::from_secs(60), Box::new(|| c5_slices(&slices))),
        (6, "Hilbert function decomposition", Duration::from_secs(60), Box::new(|| c6_decomposition(&slices))),
        (7, "randomized growth campaign", Duration::from_secs(600), Box::new(c7_campaign)),
        (8, "refined bound beats Macaulay", Duration::from_secs(1), Box::new(c8_refined_bound)),
        (9, "Groebner bases against rank oracle", Duration::from_secs(300), Box::new(c9_groebner)),
        (10, "regular-sequence certifiers", Duration::from_secs(300), Box::new(c10_certifiers)),
    ];
    let mut failures = 0;
    for (number, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let ok = result.ok && elapsed <= limit;
        if !ok {
            failures += 1;
        }
        println!(
            "{} {number} {name} ({:.3}s, limit {}s) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs(),
            result.detail
        );
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
