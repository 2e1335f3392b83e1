use std::collections::BTreeMap;

use serde_json::json;
use superfock_core::classify::{
    classify_weight, enumerate_unitary_lowest_weights, lemma42_verify, parameters_from_weight, ClassifyVerdict,
    ParamOutcome, Side,
};
use superfock_core::fock_operators::weight_of_vector;
use superfock_core::osp_matrix::{negative_roots, positive_roots, RootClass};
use superfock_core::primitive::{build_primitive, check_primitive, check_proof_identities, predicted_weight};
use superfock_core::{FockShape, PrimitiveParams, Realization, SuperDim, Weight};

use crate::report::{CliError, Report};

const MAX_DEGREE: u32 = 6;
const MAX_PRINTED_TERMS: usize = 256;

fn class_name(c: RootClass) -> &'static str {
    match c {
        RootClass::Compact => "compact",
        RootClass::Noncompact => "noncompact",
        RootClass::Odd => "odd",
    }
}

fn parse_weight(s: &str) -> Result<Weight, CliError> {
    s.parse::<Weight>().map_err(|e| CliError::usage(format!("cannot parse weight {s:?}: {e}")))
}

fn require_rank(dim: SuperDim) -> Result<(), CliError> {
    if dim.m == 0 {
        return Err(CliError::usage("m must be at least 1"));
    }
    Ok(())
}

pub fn roots(dim: SuperDim) -> Result<Report, CliError> {
    require_rank(dim)?;
    let mut r = Report::new("roots");
    let pos = positive_roots(dim);
    let neg = negative_roots(dim);
    r.line(format!("{dim}: {} positive roots", pos.len()));
    for a in &pos {
        r.line(format!("  {:<10} {}", a.to_string(), class_name(a.class)));
    }
    r.line(format!("{dim}: {} negative roots", neg.len()));
    for a in &neg {
        r.line(format!("  {:<10} {}", a.to_string(), class_name(a.class)));
    }
    let listing = |roots: &[superfock_core::Root]| {
        roots.iter().map(|a| json!({ "root": a, "class": a.class })).collect::<Vec<_>>()
    };
    r.field("dim", dim.to_string());
    r.field("positive", listing(&pos));
    r.field("negative", listing(&neg));
    Ok(r)
}

pub fn verify_homomorphism(dim: SuperDim, big_l: usize, degree: u32) -> Result<Report, CliError> {
    require_rank(dim)?;
    if degree > MAX_DEGREE {
        return Err(CliError::usage(format!("degree {degree} exceeds the maximum of {MAX_DEGREE}")));
    }
    let shape = FockShape::new(dim, big_l)?;
    let real = Realization::new(shape)?;
    let mut r = Report::new("verify-homomorphism");
    r.line(format!("{dim}, L = {big_l}, polynomial degree ≤ {degree}"));

    let ad = real.check_ad_bijection();
    r.line(format!("ad identification onto {dim}: {}/{} checks", ad.passed, ad.checked));
    for f in &ad.failures {
        r.claim(false, "ad m(x,y) spans osp bijectively", || f.clone());
    }

    let rel = real.check_generator_relations(degree)?;
    r.line(format!("Clifford–Weyl relations: {}/{} pairs", rel.passed, rel.checked));
    for f in &rel.failures {
        r.claim(false, "[ρ(x), ρ(y)] equals the Clifford–Weyl bracket", || f.clone());
    }

    let hom = real.check_homomorphism(degree)?;
    for (key, s) in &hom {
        r.line(format!("ρ̃([X,Y]) = [ρ̃X, ρ̃Y] on {key} pairs: {}/{}", s.passed, s.checked));
        for f in &s.failures {
            r.claim(false, "ρ̃([X,Y]) = [ρ̃X, ρ̃Y]", || format!("{key}: {f}"));
        }
    }
    r.field("dim", dim.to_string());
    r.field("L", big_l);
    r.field("degree", degree);
    r.field("ad_bijection", &ad);
    r.field("relations", &rel);
    r.field("homomorphism", &hom);
    Ok(r)
}

fn or_zeros(v: &[u32], len: usize, name: &str) -> Result<Vec<u32>, CliError> {
    if v.is_empty() {
        return Ok(vec![0; len]);
    }
    if v.len() != len {
        return Err(CliError::usage(format!("--{name} needs {len} entries, got {}", v.len())));
    }
    Ok(v.to_vec())
}

pub fn primitive(dim: SuperDim, big_l: usize, i: &[u32], j: &[u32], check: bool) -> Result<Report, CliError> {
    require_rank(dim)?;
    let params = PrimitiveParams::new(big_l, or_zeros(i, dim.m, "i")?, or_zeros(j, dim.n, "j")?);
    params.validate(dim)?;
    let v = build_primitive(&params, dim)?;
    let mut r = Report::new("primitive");
    r.line(format!("{dim}, {params}"));
    r.line(format!("Λ·R has {} terms", v.num_terms()));
    if v.num_terms() <= MAX_PRINTED_TERMS {
        r.line(format!("  {v}"));
    }
    let predicted = predicted_weight(&params);
    let weight = weight_of_vector(&v)?;
    r.line(format!("weight {weight}, predicted {predicted}"));
    r.claim(weight == predicted, "the weight of Λ·R is (Σ i_a + L/2 ; j_t − L/2)", || {
        format!("measured {weight}, predicted {predicted}")
    });
    r.field("dim", dim.to_string());
    r.field("params", &params);
    r.field("terms", v.num_terms());
    if v.num_terms() <= MAX_PRINTED_TERMS {
        r.field("vector", &v);
    }
    r.field("weight", &weight);
    r.field("predicted_weight", &predicted);
    if check {
        let report = check_primitive(&v)?;
        let killed = report.roots.iter().filter(|c| c.killed).count();
        r.line(format!("negative root operators annihilating Λ·R: {killed}/{}", report.roots.len()));
        for c in report.roots.iter().filter(|c| !c.killed) {
            r.claim(false, "every negative root operator annihilates Λ·R", || {
                format!("{} (table case {:?}) leaves {} terms", c.root, c.case, c.image_terms)
            });
        }
        let ids = check_proof_identities(v.shape())?;
        r.line(format!("cofactor, pair, kill and c-pair identities: {}/{}", ids.passed, ids.checked));
        for f in &ids.failures {
            r.claim(false, "identity behind the annihilation argument", || f.clone());
        }
        r.field("primitivity", &report);
        r.field("identities", &ids);
    }
    Ok(r)
}

fn verdict_lines(r: &mut Report, v: &ClassifyVerdict, dim: SuperDim) {
    let holds = |b: bool| if b { "holds" } else { "fails" };
    let (one, two) = match v.side {
        Side::Lowest => ("(I)", "(II)"),
        Side::Highest => ("(I′)", "(II′)"),
    };
    r.line(format!("{} weight {} on {dim}", v.side, v.weight));
    r.line(format!("condition {one}: {}", holds(v.passes_i)));
    r.line(format!("condition {two}: {} (d = {})", holds(v.passes_ii), v.d));
    r.line(format!("λ_1 + μ_1 in {{d, …, m−1}} ∪ [m−1, ∞): {}", holds(v.band_ok)));
    r.line(format!("|μ_t| ≤ λ_s for all s, t: {}", holds(v.inequality_ok)));
    if let Some(p) = &v.params {
        r.line(format!("parameters: {p}"));
    }
    if let Some(note) = &v.note {
        r.line(format!("note: {note}"));
    }
}

pub fn classify_check(weight: &str, odd: bool, highest: bool) -> Result<Report, CliError> {
    let w = parse_weight(weight)?;
    let dim = SuperDim::new(w.m(), w.n(), odd);
    let side = if highest { Side::Highest } else { Side::Lowest };
    let v = classify_weight(&w, dim, side)?;
    let mut r = Report::new("classify check");
    verdict_lines(&mut r, &v, dim);
    for violation in &v.violations {
        r.claim(false, "unitarity condition", || violation.clone());
    }
    r.field("dim", dim.to_string());
    r.field("verdict", &v);
    Ok(r)
}

pub fn classify_enumerate(dim: SuperDim, bound: i64, construct: bool) -> Result<Report, CliError> {
    require_rank(dim)?;
    if bound < 0 {
        return Err(CliError::usage("--bound must be non-negative"));
    }
    let verdicts = enumerate_unitary_lowest_weights(dim, bound, construct)?;
    let mut r = Report::new("classify enumerate");
    r.line(format!("{dim}: {} integral lowest weights with entries in [−{bound}, {bound}] satisfy (I) and (II)", verdicts.len()));
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    for v in &verdicts {
        let status = if v.trivial {
            "trivial"
        } else if v.params.is_some() {
            "constructible"
        } else {
            "not constructed"
        };
        *tally.entry(status).or_default() += 1;
        let mut line = format!("  {:<20} {status}", v.weight.to_string());
        if let Some(p) = &v.params {
            line.push_str(&format!("  {p}"));
        }
        if let Some(rt) = &v.round_trip {
            line.push_str(if rt.passes() { "  round-trip ok" } else { "  round-trip FAILED" });
            r.claim(rt.weight_matches, "the primitive vector of the parameter map has weight λ", || {
                format!("{}: measured {}", v.weight, rt.realized_weight)
            });
            r.claim(rt.primitive, "the primitive vector of the parameter map is annihilated by Δ⁻", || {
                format!("{}: fails for {}", v.weight, rt.failing_roots.join(", "))
            });
        }
        r.line(line);
        r.claim(v.band_ok, "λ_1 + μ_1 in {d, …, m−1} ∪ [m−1, ∞)", || v.weight.to_string());
        r.claim(v.inequality_ok, "|μ_t| ≤ λ_s for all s, t", || v.weight.to_string());
    }
    r.field("dim", dim.to_string());
    r.field("bound", bound);
    r.field("count", verdicts.len());
    r.field("tally", &tally);
    r.field("verdicts", &verdicts);
    Ok(r)
}

pub fn lemma42(weight: &str, k: usize, odd: bool) -> Result<Report, CliError> {
    let w = parse_weight(weight)?;
    let dim = SuperDim::new(w.m(), w.n(), odd);
    if k == 0 || k >= dim.m {
        return Err(CliError::usage(format!("k = {k} must satisfy 1 ≤ k ≤ m − 1 = {}", dim.m.saturating_sub(1))));
    }
    let params = match parameters_from_weight(&w, dim)? {
        ParamOutcome::Params { params } => params,
        ParamOutcome::Trivial => return Err(CliError::usage("λ_1 = 0 gives the trivial module, which has no chain")),
        ParamOutcome::NotConstructed { reason } => {
            return Err(CliError::usage(format!("no explicit primitive vector: {reason}")))
        }
    };
    let rep = lemma42_verify(&params, dim, k)?;
    let mut r = Report::new("lemma42");
    let yes = |b: bool| if b { "yes" } else { "no" };
    r.line(format!("{dim}, weight {}, k = {k}, {params}", rep.weight));
    r.line(format!("(a) v_k ≠ 0: {} ({} terms)", yes(rep.v_k_nonzero), rep.v_k_terms));
    r.line(format!("(b) X_(−β_m) ⋯ X_(−β_(m−k+1)) v_k ≠ 0: {}", yes(rep.descended_nonzero)));
    r.line(format!("(c) {} = {} ≠ 0: {}", rep.formula, rep.product, yes(rep.product_nonzero)));
    r.line(format!("descended vector = product · v_0: {}", yes(rep.descended_equals_product)));
    r.line(format!("v_k annihilated by the even negative root operators: {}", yes(rep.v_k_even_primitive)));
    r.claim(rep.conditions_agree(), "(a) v_k ≠ 0, (b) descended vector ≠ 0 and (c) product ≠ 0 are equivalent", || {
        format!("(a) {}, (b) {}, (c) {}", rep.v_k_nonzero, rep.descended_nonzero, rep.product_nonzero)
    });
    r.claim(rep.descended_equals_product, "the descended vector equals the product times v_0", || {
        format!("product {}", rep.product)
    });
    r.claim(rep.v_k_even_primitive, "v_k is primitive for the even part", || "an even negative root operator survives".into());
    r.field("dim", dim.to_string());
    r.field("params", &params);
    r.field("report", &rep);
    Ok(r)
}
