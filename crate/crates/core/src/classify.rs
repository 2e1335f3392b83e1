//! Unitarity conditions on integral lowest and highest weights.
//!
//! For a lowest weight `(λ/μ)` of `osp(2m/N)` with `N ≥ 2`:
//!
//! * **(I)** `−μ_n ≤ ⋯ ≤ −μ_1 ≤ λ_1 ≤ ⋯ ≤ λ_m`, with `|μ_n| ≤ −μ_{n−1}` when
//!   `N = 2n` and `μ_n ≤ 0` when `N = 2n+1`, all entries integers. For
//!   `N = 2` the chain has no `μ_{n−1}` and the clause reads `|μ_1| ≤ λ_1`.
//! * **(II)** `λ_1 + μ_1 ≥ d` with `d = #{k : λ_k > λ_1}`.
//!
//! The highest weight conditions (I′), (II′) are the same inequalities read
//! on `−(λ/μ)`.

use std::fmt;

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::fock_operators::weight_of_vector;
use crate::fock_space::FockVector;
use crate::osp_matrix::{odd_coroot_pair, SuperDim, Weight};
use crate::primitive::{build_primitive, check_annihilation, check_primitive, PrimitiveParams};
use crate::rational::Rational;
use crate::realization::Realization;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lowest,
    Highest,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lowest => "lowest",
            Side::Highest => "highest",
        })
    }
}

fn check_shape(w: &Weight, dim: SuperDim) -> Result<()> {
    if w.m() != dim.m || w.n() != dim.n {
        return Err(Error::DimensionMismatch {
            expected: format!("weight with {} λ and {} μ entries", dim.m, dim.n),
            found: format!("{} λ and {} μ entries", w.m(), w.n()),
        });
    }
    if dim.m == 0 || dim.odd_dim() < 2 {
        return Err(Error::Precondition(format!("classification needs m ≥ 1 and N ≥ 2, got {dim}")));
    }
    Ok(())
}

/// `|μ_t| ≤ λ_s` for all `s`, `t`.
pub fn weight_inequality(w: &Weight) -> bool {
    w.mu.iter().all(|mu| w.lambda.iter().all(|l| &mu.abs() <= l))
}

/// `#{k : λ_k > λ_1}`.
pub fn d_lowest(w: &Weight) -> usize {
    match w.lambda.first() {
        Some(l1) => w.lambda.iter().filter(|l| *l > l1).count(),
        None => 0,
    }
}

/// The clauses of (I) that `w` violates, each stated as an inequality.
pub fn condition_i_violations(w: &Weight, dim: SuperDim) -> Result<Vec<String>> {
    check_shape(w, dim)?;
    let mut out = Vec::new();
    for (name, x) in w.lambda.iter().enumerate().map(|(k, x)| (format!("λ_{}", k + 1), x)).chain(
        w.mu.iter().enumerate().map(|(k, x)| (format!("μ_{}", k + 1), x)),
    ) {
        if !x.is_integer() {
            out.push(format!("{name} = {x} is not an integer"));
        }
    }
    let n = dim.n;
    for t in 1..n {
        if w.mu[t - 1] > w.mu[t] {
            out.push(format!("−μ_{} ≤ −μ_{} fails", t + 1, t));
        }
    }
    if -&w.mu[0] > w.lambda[0] {
        out.push("−μ_1 ≤ λ_1 fails".into());
    }
    for s in 1..dim.m {
        if w.lambda[s - 1] > w.lambda[s] {
            out.push(format!("λ_{} ≤ λ_{} fails", s, s + 1));
        }
    }
    let mu_n = &w.mu[n - 1];
    if dim.odd {
        if mu_n > &Rational::from_integer(0) {
            out.push(format!("μ_{n} ≤ 0 fails"));
        }
    } else if n == 1 {
        if mu_n.abs() > w.lambda[0] {
            out.push("|μ_1| ≤ λ_1 fails".into());
        }
    } else if mu_n.abs() > -&w.mu[n - 2] {
        out.push(format!("|μ_{n}| ≤ −μ_{} fails", n - 1));
    }
    Ok(out)
}

#[allow(non_snake_case)]
pub fn check_condition_I(w: &Weight, dim: SuperDim) -> Result<bool> {
    Ok(condition_i_violations(w, dim)?.is_empty())
}

/// `(λ_1 + μ_1 ≥ d, d)`.
#[allow(non_snake_case)]
pub fn check_condition_II(w: &Weight, dim: SuperDim) -> Result<(bool, usize)> {
    check_shape(w, dim)?;
    let d = d_lowest(w);
    let sum = &w.lambda[0] + &w.mu[0];
    Ok((sum >= Rational::from_integer(d as i64), d))
}

/// (I′) and (II′) together, with `d = #{k : λ_k < λ_1}`.
pub fn check_conditions_primed(w: &Weight, dim: SuperDim) -> Result<(bool, bool, usize)> {
    let neg = w.negate();
    let i = check_condition_I(&neg, dim)?;
    let (ii, d) = check_condition_II(&neg, dim)?;
    Ok((i, ii, d))
}

/// `λ_1 + μ_1 ≥ m − 1`, or `λ_1 + μ_1` an integer in `{d, …, m−1}`.
pub fn check_necessary_band(w: &Weight) -> bool {
    if w.lambda.is_empty() || w.mu.is_empty() {
        return true;
    }
    let m = w.lambda.len() as i64;
    let d = d_lowest(w) as i64;
    let sum = &w.lambda[0] + &w.mu[0];
    if sum >= Rational::from_integer(m - 1) {
        return true;
    }
    match sum.to_i64() {
        Some(x) if sum.is_integer() => (d..=m - 1).contains(&x),
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParamOutcome {
    Params { params: PrimitiveParams },
    /// `λ_1 = 0`: the weight of the trivial module.
    Trivial,
    /// (I) and (II) hold but `μ_n > 0`, outside the range of the explicit
    /// construction.
    NotConstructed { reason: String },
}

/// `L = 2λ_1`, `i_k = λ_{m−k+1} − λ_{m−k}` (`i_m = 0`), `j_b = λ_1 + μ_b`.
pub fn parameters_from_weight(w: &Weight, dim: SuperDim) -> Result<ParamOutcome> {
    let violations = condition_i_violations(w, dim)?;
    if let Some(v) = violations.first() {
        return Err(Error::Precondition(format!("condition (I): {v}")));
    }
    let (ii, d) = check_condition_II(w, dim)?;
    if !ii {
        return Err(Error::Precondition(format!("condition (II): λ_1 + μ_1 ≥ d = {d} fails")));
    }
    let int = |x: &Rational| x.to_i64().expect("integrality checked");
    let l1 = int(&w.lambda[0]);
    if l1 == 0 {
        return Ok(ParamOutcome::Trivial);
    }
    let n = dim.n;
    if int(&w.mu[n - 1]) > 0 {
        return Ok(ParamOutcome::NotConstructed {
            reason: format!("μ_{n} > 0 gives j_{n} = λ_1 + μ_{n} > l"),
        });
    }
    let m = dim.m;
    let i = (1..=m)
        .map(|k| if k == m { 0 } else { (int(&w.lambda[m - k]) - int(&w.lambda[m - k - 1])) as u32 })
        .collect();
    let j = w.mu.iter().map(|mu| (l1 + int(mu)) as u32).collect();
    let params = PrimitiveParams::new(2 * l1 as usize, i, j);
    params.validate(dim)?;
    Ok(ParamOutcome::Params { params })
}

/// `∏_{l=1}^{k} (λ_{m−l+1} + μ_1 − l + 1)`.
pub fn lemma42_product(w: &Weight, k: usize) -> Result<Cyclotomic> {
    let m = w.m();
    if k == 0 || k >= m || w.mu.is_empty() {
        return Err(Error::IndexOutOfRange(format!("k = {k} must satisfy 1 ≤ k ≤ m − 1 = {}", m.saturating_sub(1))));
    }
    let mut prod = Rational::from_integer(1);
    for l in 1..=k {
        let factor = &(&w.lambda[m - l] + &w.mu[0]) - &Rational::from_integer(l as i64 - 1);
        prod = &prod * &factor;
    }
    Ok(Cyclotomic::from_rational(prod))
}

/// The descending chain `v_0 → v_k → v_0` built from the odd root vectors of
/// `β_j = e_j − f_1`.
///
/// `v_0` is the explicit primitive vector. The three nonvanishing conditions
/// below are expected to agree when `v_0` generates an irreducible submodule,
/// which is assumed rather than checked here.
#[derive(Clone, Debug, Serialize)]
pub struct Lemma42Report {
    pub weight: Weight,
    pub k: usize,
    pub formula: &'static str,
    pub product: Cyclotomic,
    /// (a) `v_k ≠ 0`.
    pub v_k_nonzero: bool,
    /// (b) `X_{−β_m} ⋯ X_{−β_{m−k+1}} v_k ≠ 0`.
    pub descended_nonzero: bool,
    /// (c) the product is nonzero.
    pub product_nonzero: bool,
    pub descended_equals_product: bool,
    pub v_k_even_primitive: bool,
    pub v_k_terms: usize,
}

impl Lemma42Report {
    pub fn conditions_agree(&self) -> bool {
        self.v_k_nonzero == self.descended_nonzero && self.descended_nonzero == self.product_nonzero
    }

    pub fn passes(&self) -> bool {
        self.conditions_agree() && self.descended_equals_product && self.v_k_even_primitive
    }
}

/// Builds `v_k = X_{β_{m−k+1}} ⋯ X_{β_m} v_0` and descends it again.
pub fn lemma42_verify(params: &PrimitiveParams, dim: SuperDim, k: usize) -> Result<Lemma42Report> {
    if k == 0 || k >= dim.m {
        return Err(Error::IndexOutOfRange(format!("k = {k} must satisfy 1 ≤ k ≤ m − 1 = {}", dim.m.saturating_sub(1))));
    }
    if dim.n == 0 {
        return Err(Error::Precondition("the chain needs the odd root e_j − f_1, so n ≥ 1".into()));
    }
    let v0 = build_primitive(params, dim)?;
    let shape = v0.shape();
    let weight = weight_of_vector(&v0)?;
    let real = Realization::new(shape)?;
    let m = dim.m;
    let mut raise = Vec::new();
    let mut lower = Vec::new();
    for j in m - k + 1..=m {
        let pair = odd_coroot_pair(dim, j)?;
        raise.push(real.rho(&pair.raising)?);
        lower.push(real.rho(&pair.lowering)?);
    }
    let mut vk = v0.clone();
    for x in raise.iter().rev() {
        vk = x.apply(&vk)?;
    }
    let mut down = vk.clone();
    for y in &lower {
        down = y.apply(&down)?;
    }
    let product = lemma42_product(&weight, k)?;
    let expected = v0.scale(&product);
    let v_k_even_primitive = even_primitive(&vk)?;
    Ok(Lemma42Report {
        weight,
        k,
        formula: "∏_{l=1}^{k} (λ_{m−l+1} + μ_1 − l + 1)",
        product_nonzero: !product.is_zero(),
        product,
        v_k_nonzero: !vk.is_zero(),
        descended_nonzero: !down.is_zero(),
        descended_equals_product: down == expected,
        v_k_even_primitive,
        v_k_terms: vk.num_terms(),
    })
}

/// Outcome of building the primitive vector attached to a weight.
#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub realized_weight: Weight,
    pub weight_matches: bool,
    pub primitive: bool,
    pub failing_roots: Vec<String>,
}

impl RoundTrip {
    pub fn passes(&self) -> bool {
        self.weight_matches && self.primitive
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassifyVerdict {
    pub weight: Weight,
    pub side: Side,
    #[serde(rename = "passes_I")]
    pub passes_i: bool,
    #[serde(rename = "passes_II")]
    pub passes_ii: bool,
    pub d: usize,
    pub band_ok: bool,
    pub inequality_ok: bool,
    pub integrable: bool,
    pub constructible: bool,
    pub params: Option<PrimitiveParams>,
    pub trivial: bool,
    pub violations: Vec<String>,
    pub note: Option<String>,
    pub round_trip: Option<RoundTrip>,
}

impl ClassifyVerdict {
    pub fn passes(&self) -> bool {
        self.passes_i && self.passes_ii
    }
}

/// Evaluates the conditions for `w` on the given side and, for lowest
/// weights, the parameters of the explicit construction.
pub fn classify_weight(w: &Weight, dim: SuperDim, side: Side) -> Result<ClassifyVerdict> {
    let oriented = match side {
        Side::Lowest => w.clone(),
        Side::Highest => w.negate(),
    };
    let (one, two, on) = match side {
        Side::Lowest => ("(I)", "(II)", ""),
        Side::Highest => ("(I′)", "(II′)", " (on −λ)"),
    };
    let mut violations: Vec<String> =
        condition_i_violations(&oriented, dim)?.into_iter().map(|v| format!("{one} {v}{on}")).collect();
    let (passes_ii, d) = check_condition_II(&oriented, dim)?;
    let passes_i = violations.is_empty();
    if !passes_ii {
        let sum = &oriented.lambda[0] + &oriented.mu[0];
        violations.push(format!("{two} λ_1 + μ_1 ≥ d fails: {sum} < {d}{on}"));
    }
    let mut verdict = ClassifyVerdict {
        weight: w.clone(),
        side,
        passes_i,
        passes_ii,
        d,
        band_ok: check_necessary_band(&oriented),
        inequality_ok: weight_inequality(&oriented),
        integrable: w.is_integral(),
        constructible: false,
        params: None,
        trivial: false,
        violations,
        note: None,
        round_trip: None,
    };
    if !(passes_i && passes_ii) {
        return Ok(verdict);
    }
    if side == Side::Highest {
        verdict.note = Some("realized as the contragredient of the lowest weight module of −λ".into());
        return Ok(verdict);
    }
    match parameters_from_weight(w, dim)? {
        ParamOutcome::Params { params } => {
            verdict.constructible = true;
            verdict.params = Some(params);
        }
        ParamOutcome::Trivial => {
            verdict.constructible = true;
            verdict.trivial = true;
            verdict.note = Some("λ_1 = 0: trivial module".into());
        }
        ParamOutcome::NotConstructed { reason } => {
            verdict.note = Some(format!("passes, not constructed: {reason}"));
        }
    }
    Ok(verdict)
}

/// Builds `Λ·R` for `params` and compares its weight and primitivity with
/// `target`.
pub fn round_trip(params: &PrimitiveParams, dim: SuperDim, target: &Weight) -> Result<RoundTrip> {
    let v: FockVector = build_primitive(params, dim)?;
    let realized = weight_of_vector(&v)?;
    let report = check_primitive(&v)?;
    Ok(RoundTrip {
        weight_matches: &realized == target,
        realized_weight: realized,
        primitive: report.passes,
        failing_roots: report.failing_roots(),
    })
}

/// Every integer weight with entries in `[−bound, bound]`, in lexicographic
/// order of `(λ, μ)`.
pub fn integer_weights(dim: SuperDim, bound: i64) -> Vec<Weight> {
    let len = dim.m + dim.n;
    let mut out = Vec::new();
    let mut cur = vec![-bound; len];
    if bound < 0 {
        return out;
    }
    loop {
        out.push(Weight::from_integers(&cur[..dim.m], &cur[dim.m..]));
        let mut pos = len;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if cur[pos] < bound {
                cur[pos] += 1;
                break;
            }
            cur[pos] = -bound;
        }
    }
}

/// All integer lowest weights with entries in `[−bound, bound]` satisfying
/// (I) and (II). With `construct`, each weight with explicit parameters is
/// built and round-tripped.
pub fn enumerate_unitary_lowest_weights(dim: SuperDim, bound: i64, construct: bool) -> Result<Vec<ClassifyVerdict>> {
    let mut verdicts = Vec::new();
    for w in integer_weights(dim, bound) {
        let v = classify_weight(&w, dim, Side::Lowest)?;
        if v.passes() {
            verdicts.push(v);
        }
    }
    if construct {
        let results = std::thread::scope(|scope| {
            let handles: Vec<_> = verdicts
                .iter()
                .map(|v| {
                    scope.spawn(move || match &v.params {
                        Some(p) => round_trip(p, dim, &v.weight).map(Some),
                        None => Ok(None),
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("round-trip worker panicked")).collect::<Vec<_>>()
        });
        for (v, r) in verdicts.iter_mut().zip(results) {
            v.round_trip = r?;
        }
    }
    Ok(verdicts)
}

/// Whether every even negative root operator kills `v`.
pub fn even_primitive(v: &FockVector) -> Result<bool> {
    Ok(check_annihilation(v, |a| a.is_even())?.passes)
}
