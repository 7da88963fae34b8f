//! One function per subcommand. Each returns a finished report; the
//! violation count is what decides exit code 1.

use egh_core::campaign::{cl_search, run_campaign, CampaignConfig};
use egh_core::egh::{liaison_table, liaison_transform, slice_construct, slice_hf_identity};
use egh_core::lpp::{cl_compress_to, lpp_growth, macaulay_growth, macaulay_growth_arithmetic, refined_bound};
use egh_core::mideal::{HilbertFunction, MonomialIdeal};
use egh_core::monom::{DegreeSequence, ExponentBox};
use egh_core::polyfp::{is_regular_sequence, MonomialOrder, PrimeField};

use crate::input::{parse_degree_list, Generators, InputDocument};
use crate::report::{Echo, RunReport};
use crate::{CliError, Options};

fn flag_degrees(text: &str, n: usize) -> Result<DegreeSequence, CliError> {
    parse_degree_list(text, n).map_err(|e| CliError::Usage(format!("--degrees: column {}: {}", e.column, e.message)))
}

fn need_degrees(doc: &InputDocument, command: &str) -> Result<DegreeSequence, CliError> {
    doc.degrees
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{command} needs a `degrees` line")))
}

fn need_monomial<'a>(doc: &'a InputDocument, command: &str) -> Result<&'a MonomialIdeal, CliError> {
    match &doc.ideal {
        Some(Generators::Monomial(i)) => Ok(i),
        Some(Generators::Polynomial(_)) => Err(CliError::Usage(format!("{command} needs a ring `over monomial`"))),
        None => Err(CliError::Usage(format!("{command} needs an `ideal` line"))),
    }
}

fn max_generator_degree(doc: &InputDocument) -> u32 {
    match &doc.ideal {
        Some(Generators::Monomial(i)) => i.max_generator_degree().unwrap_or(0),
        Some(Generators::Polynomial(i)) => i.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(0),
        None => 0,
    }
}

/// Socle degree of `a` padded to `n` entries, if every entry is finite.
fn full_socle(a: &DegreeSequence, n: usize) -> Option<u32> {
    a.padded(n).ok()?.socle_degree()
}

/// `H(S/I, d)` for `d <= bound`, any ring kind, with the Gröbner basis
/// under `order` for polynomial documents.
fn document_hilbert(doc: &InputDocument, bound: u32, order: MonomialOrder, budget: u128) -> Result<HilbertFunction, CliError> {
    Ok(match &doc.ideal {
        Some(Generators::Monomial(i)) => i.hilbert_function_with_budget(bound, budget)?,
        Some(Generators::Polynomial(i)) => i.initial_ideal(order).hilbert_function_with_budget(bound, budget)?,
        None => MonomialIdeal::zero(&doc.ambient).hilbert_function_with_budget(bound, budget)?,
    })
}

pub fn hilbert(doc: &InputDocument, o: &Options) -> Result<RunReport, CliError> {
    let n = doc.ambient.nvars();
    let bound = o.max_degree.unwrap_or_else(|| {
        doc.degrees
            .as_ref()
            .and_then(|a| full_socle(a, n))
            .map(|s| s + 1)
            .unwrap_or(max_generator_degree(doc) + 2)
    });
    let order: MonomialOrder = o.order.into();
    let h = document_hilbert(doc, bound, order, o.budget)?;
    let ideal_side = h.complement(n)?;
    let mut report = RunReport::new("hilbert", Echo::Document(doc.clone()), vec!["d", "quotient", "ideal"]);
    for d in 0..=bound {
        report.push_row(vec![
            d.to_string(),
            h.value(d).expect("bound").to_string(),
            ideal_side.value(d).expect("bound").to_string(),
        ]);
    }
    if let Some(i) = doc.polynomial_ideal() {
        report.note("order", format!("{:?}", o.order).to_lowercase());
        report.note("basis_size", i.groebner_basis(order).len());
        report.note("initial", i.initial_ideal(order));
    }
    Ok(report)
}

pub fn lpp(doc: &InputDocument, o: &Options) -> Result<RunReport, CliError> {
    let i = need_monomial(doc, "lpp")?;
    let a = need_degrees(doc, "lpp")?;
    let n = doc.ambient.nvars();
    let bound = o
        .max_degree
        .unwrap_or_else(|| full_socle(&a, n).unwrap_or(max_generator_degree(doc) + 1));
    let l = cl_compress_to(i, &a, bound)?;
    let hi = i.hilbert_function_with_budget(bound, o.budget)?;
    let hl = l.whole().hilbert_function_with_budget(bound, o.budget)?;
    let mut report = RunReport::new("lpp", Echo::Document(doc.clone()), vec!["d", "ideal", "lpp", "pass"]);
    report.verdict = Some(3);
    for d in 0..=bound {
        let (x, y) = (hi.value(d).expect("bound"), hl.value(d).expect("bound"));
        report.push_row(vec![d.to_string(), x.to_string(), y.to_string(), (x == y).to_string()]);
    }
    report.violations = report.failed_rows();
    report.note("lpp", l.whole());
    report.note("lex_part", l.lex_part());
    Ok(report)
}

pub fn growth(n: usize, degrees: &str, d: u32, q: u64, _o: &Options) -> Result<RunReport, CliError> {
    let a = flag_degrees(degrees, n)?;
    let echo = Echo::Flags(vec![
        ("n".into(), n.to_string()),
        ("degrees".into(), a.to_string().replace(' ', "")),
        ("d".into(), d.to_string()),
        ("q".into(), q.to_string()),
    ]);
    let bound = refined_bound(n, &a, d, q)?;
    let macaulay = macaulay_growth(n, d, q)?;
    let arithmetic = macaulay_growth_arithmetic(n, d, q)?;
    let mut report = RunReport::new("growth", echo, Vec::new());
    report.note("bound", bound);
    report.note("macaulay", macaulay);
    report.note("refined", bound < macaulay);
    // the two Macaulay computations are independent; disagreement is a bug
    if arithmetic != macaulay {
        report.violations = 1;
        report.note("macaulay_arithmetic", arithmetic);
    }
    Ok(report)
}

/// Does the document's ideal contain forms the EGH statement is about:
/// the pure powers (monomial documents) or a regular sequence of degrees
/// `a` as its leading generators (polynomial documents)?
fn hypothesis(doc: &InputDocument, a: &DegreeSequence) -> Result<bool, CliError> {
    Ok(match &doc.ideal {
        Some(Generators::Monomial(i)) => i.contains_pure_powers(a),
        Some(Generators::Polynomial(i)) => {
            if !a.is_finite() || i.generators().len() < a.len() {
                return Ok(false);
            }
            let lead = &i.generators()[..a.len()];
            let degrees: Vec<u32> = lead.iter().filter_map(|g| g.degree()).collect();
            degrees == a.finite_entries() && is_regular_sequence(&doc.ambient, lead)?.regular
        }
        None => a.is_empty(),
    })
}

pub fn egh(doc: &InputDocument, o: &Options) -> Result<RunReport, CliError> {
    let a = need_degrees(doc, "egh")?;
    let n = doc.ambient.nvars();
    let padded = a.padded(n)?;
    let top = match o.max_degree.or(padded.socle_degree()) {
        Some(t) => t,
        None => return Err(CliError::Usage("degrees contain `inf`; pass --max-degree".into())),
    };
    let h = document_hilbert(doc, top + 1, o.order.into(), o.budget)?;
    let bx = ExponentBox::new(n, &padded)?;
    let mut report = RunReport::new(
        "egh",
        Echo::Document(doc.clone()),
        vec!["d", "h_d", "h_next", "bound", "pass"],
    );
    report.verdict = Some(4);
    for d in 0..=top {
        let (h_d, h_next) = (h.value(d).expect("bound"), h.value(d + 1).expect("bound"));
        // h_d can exceed the box only when the pure powers are missing
        let (bound, pass) = if h_d <= bx.count_u64(d)? {
            let b = lpp_growth(&padded, n, d, h_d)?;
            (b.to_string(), h_next <= b)
        } else {
            ("none".to_string(), false)
        };
        report.push_row(vec![d.to_string(), h_d.to_string(), h_next.to_string(), bound, pass.to_string()]);
    }
    let holds = hypothesis(doc, &a)?;
    let failed = report.failed_rows();
    report.violations = if holds { failed } else { 0 };
    report.note("hypothesis", holds);
    report.note("failed", failed);
    Ok(report)
}

pub fn liaison(doc: &InputDocument, _o: &Options) -> Result<RunReport, CliError> {
    let j = need_monomial(doc, "liaison")?;
    let a = need_degrees(doc, "liaison")?;
    let linked = liaison_transform(j, &a)?;
    let mut report = RunReport::new(
        "liaison",
        Echo::Document(doc.clone()),
        vec!["t", "ci", "ideal", "linked_dual", "pass"],
    );
    report.verdict = Some(4);
    for row in liaison_table(j, &a)? {
        report.push_row(vec![
            row.t.to_string(),
            row.complete_intersection.to_string(),
            row.ideal.to_string(),
            row.linked_dual.to_string(),
            row.holds().to_string(),
        ]);
    }
    report.violations = report.failed_rows();
    let back = liaison_transform(&linked, &a)?;
    report.note("linked", &linked);
    report.note("involution", &back == j);
    Ok(report)
}

pub fn slice(doc: &InputDocument, o: &Options) -> Result<RunReport, CliError> {
    let i = need_monomial(doc, "slice")?;
    let a = need_degrees(doc, "slice")?;
    let s: u32 = a.finite_entries().iter().map(|e| e - 1).sum();
    let bound = o
        .max_degree
        .unwrap_or_else(|| (s + 2).max(max_generator_degree(doc) + 1));
    let dec = slice_construct(i, &a, bound)?;
    let hi = i.hilbert_function_with_budget(bound, o.budget)?;
    let hk = dec.result.hilbert_function_with_budget(bound, o.budget)?;
    let mut report = RunReport::new("slice", Echo::Document(doc.clone()), vec!["d", "ideal", "sliced", "pass"]);
    report.verdict = Some(3);
    for d in 0..=bound {
        let (x, y) = (hi.value(d).expect("bound"), hk.value(d).expect("bound"));
        report.push_row(vec![d.to_string(), x.to_string(), y.to_string(), (x == y).to_string()]);
    }
    let powers = dec.result.contains_pure_powers(&a);
    let identity = slice_hf_identity(i, bound)?;
    report.violations = report.failed_rows() + usize::from(!powers) + usize::from(!identity);
    report.note("result", &dec.result);
    report.note("saturation", dec.saturation);
    for sl in &dec.slices {
        report.note(format!("slice_{}", sl.j), format!("{} -> {}", sl.restricted, sl.compressed.whole()));
    }
    report.note("pure_powers", powers);
    report.note("identity", identity);
    Ok(report)
}

pub fn verify(n: usize, degrees: &str, p: u32, o: &Options) -> Result<RunReport, CliError> {
    let a = flag_degrees(degrees, n)?;
    let field = PrimeField::new(p)?;
    let mut config = CampaignConfig::new(n, a.clone(), field, o.trials, o.seed);
    config.jobs = o.jobs;
    let campaign = run_campaign(&config)?;
    let echo = Echo::Flags(vec![
        ("n".into(), n.to_string()),
        ("degrees".into(), a.to_string().replace(' ', "")),
        ("p".into(), p.to_string()),
        ("trials".into(), o.trials.to_string()),
        ("seed".into(), o.seed.to_string()),
    ]);
    let mut report = RunReport::new("verify", echo, vec!["instance", "generators", "hilbert", "violations"]);
    for inst in &campaign.instances {
        let values: Vec<String> = inst.hilbert.values().iter().map(u64::to_string).collect();
        report.push_row(vec![
            inst.index.to_string(),
            inst.ideal.generators().len().to_string(),
            values.join(","),
            inst.violations().to_string(),
        ]);
    }
    report.violations = campaign.violations();
    report.note("rows_checked", campaign.rows_checked());
    Ok(report)
}

pub fn search(n: usize, degrees: &str, o: &Options) -> Result<RunReport, CliError> {
    let a = flag_degrees(degrees, n)?;
    let top = o.max_degree.unwrap_or(3);
    let rows = cl_search(n, &a, top, o.budget)?;
    let echo = Echo::Flags(vec![
        ("n".into(), n.to_string()),
        ("degrees".into(), a.to_string().replace(' ', "")),
        ("max_degree".into(), top.to_string()),
    ]);
    let mut report = RunReport::new(
        "search",
        echo,
        vec!["d", "k", "subsets", "lex_shadow", "min_shadow", "violations"],
    );
    for r in &rows {
        report.push_row(vec![
            r.d.to_string(),
            r.k.to_string(),
            r.subsets.to_string(),
            r.lex_shadow.to_string(),
            r.min_shadow.to_string(),
            r.violations.to_string(),
        ]);
    }
    report.violations = rows.iter().map(|r| r.violations as usize).sum();
    Ok(report)
}
