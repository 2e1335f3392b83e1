//! Explicit primitive vectors `v = Λ·R` in `F^L` and their weights.
//!
//! With `l = ⌊L/2⌋`:
//!
//! * `Λ_a = det(z_{s,2k−1} + i z_{s,2k})` over rows `m−a < s ≤ m` and columns
//!   `1 ≤ k ≤ a`, for `1 ≤ a ≤ min(m, l)`;
//! * `R_b(j) = ∏_{k ≤ j} (r_{b,2k−1} + i r_{b,2k}) · ∏_{2j < k' ≤ L} r_{b,k'}`;
//! * `C = ∏_{k ≤ l} (c_{2k−1} + i c_{2k})` for odd `N`, and `C = 1` otherwise;
//! * `Λ = ∏_a Λ_a^{i_a}` and `R = ∏_b R_b(j_b) · C`, multiplied left to right.

use std::fmt;

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::fock_operators::{negative_root_operator, FockOperator, OperatorAtom, TableCase};
use crate::fock_space::{CliffordGenerator, CliffordWord, FockShape, FockVector, PolyMonomial};
use crate::osp_matrix::{negative_roots, Root, SuperDim, Weight};
use crate::rational::Rational;
use crate::realization::CheckSummary;
use crate::{Error, Result};

/// The data `(L; i_1, …, i_m; j_1, …, j_n)` of a primitive vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PrimitiveParams {
    #[serde(rename = "L")]
    pub big_l: usize,
    pub i: Vec<u32>,
    pub j: Vec<u32>,
}

impl PrimitiveParams {
    pub fn new(big_l: usize, i: Vec<u32>, j: Vec<u32>) -> Self {
        PrimitiveParams { big_l, i, j }
    }

    /// `l = ⌊L/2⌋`.
    pub fn l(&self) -> usize {
        self.big_l / 2
    }

    /// Checks the hypotheses of the construction for `dim`.
    pub fn validate(&self, dim: SuperDim) -> Result<()> {
        if dim.odd_dim() == 0 {
            return Err(Error::InvalidParams("N must be at least 1".into()));
        }
        if self.big_l == 0 {
            return Err(Error::InvalidParams("L must be positive".into()));
        }
        if self.i.len() != dim.m || self.j.len() != dim.n {
            return Err(Error::DimensionMismatch {
                expected: format!("i of length {}, j of length {}", dim.m, dim.n),
                found: format!("i of length {}, j of length {}", self.i.len(), self.j.len()),
            });
        }
        let l = self.l() as u32;
        if self.j.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParams(format!("j = {:?} is not non-decreasing", self.j)));
        }
        if let Some(&last) = self.j.last() {
            if last > l {
                return Err(Error::InvalidParams(format!("j_n = {last} exceeds l = {l}")));
            }
        }
        let cap = dim.m.min(self.l());
        for (a, &ia) in self.i.iter().enumerate() {
            let a = a + 1;
            if ia == 0 {
                continue;
            }
            if a > cap {
                return Err(Error::InvalidParams(format!("i_{a} = {ia} but Λ_{a} needs a ≤ min(m, l) = {cap}")));
            }
            if let Some(&j1) = self.j.first() {
                if a as u32 > j1 {
                    return Err(Error::InvalidParams(format!("i_{a} = {ia} but a > j_1 = {j1}")));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self, dim: SuperDim) -> Result<FockShape> {
        FockShape::new(dim, self.big_l)
    }
}

impl fmt::Display for PrimitiveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L={} i={:?} j={:?}", self.big_l, self.i, self.j)
    }
}

/// `Σ_k c_k · basis_k` for single generators or variables.
fn linear(shape: FockShape, parts: &[(FockVector, Cyclotomic)]) -> FockVector {
    parts.iter().fold(FockVector::zero(shape), |acc, (v, c)| acc.add(&v.scale(c)).expect("same shape"))
}

fn z(shape: FockShape, s: usize, k: usize) -> Result<FockVector> {
    Ok(FockVector::basis(shape, PolyMonomial::var(shape.var(s, k)?), CliffordWord::EMPTY))
}

fn gen(shape: FockShape, g: CliffordGenerator) -> Result<FockVector> {
    Ok(FockVector::basis(shape, PolyMonomial::one(), CliffordWord::single(shape.bit(g)?)))
}

/// `x + i·y`.
fn pair(shape: FockShape, x: FockVector, y: FockVector) -> FockVector {
    linear(shape, &[(x, Cyclotomic::one()), (y, Cyclotomic::i())])
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    if n == 0 {
        return vec![(Vec::new(), 1)];
    }
    let mut out = Vec::new();
    for (p, sign) in permutations(n - 1) {
        // Insert n−1 at every position; moving it left past t entries costs t swaps.
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            let swaps = p.len() - pos;
            out.push((q, if swaps % 2 == 0 { sign } else { -sign }));
        }
    }
    out
}

/// `Λ_a`, expanded by the Leibniz formula.
pub fn lambda_det(a: usize, shape: FockShape) -> Result<FockVector> {
    let (m, l) = (shape.dim.m, shape.l / 2);
    if a == 0 || a > m.min(l) {
        return Err(Error::IndexOutOfRange(format!("Λ_{a} needs 1 ≤ a ≤ min(m, l) = {}", m.min(l))));
    }
    let entry = |row: usize, col: usize| -> Result<FockVector> {
        let s = m - a + 1 + row;
        let k = col + 1;
        Ok(pair(shape, z(shape, s, 2 * k - 1)?, z(shape, s, 2 * k)?))
    };
    let mut det = FockVector::zero(shape);
    for (perm, sign) in permutations(a) {
        let mut term = FockVector::vacuum(shape);
        for (row, &col) in perm.iter().enumerate() {
            term = term.mul(&entry(row, col)?)?;
        }
        det = det.add(&term.scale(&Cyclotomic::from_integer(sign)))?;
    }
    Ok(det)
}

/// `R_b(j)`.
pub fn r_factor(b: usize, j: usize, shape: FockShape) -> Result<FockVector> {
    let (n, l, big_l) = (shape.dim.n, shape.l / 2, shape.l);
    if b == 0 || b > n {
        return Err(Error::IndexOutOfRange(format!("R_{b} needs 1 ≤ b ≤ n = {n}")));
    }
    if j > l {
        return Err(Error::IndexOutOfRange(format!("R_{b}({j}) needs j ≤ l = {l}")));
    }
    let r = |k: usize| gen(shape, CliffordGenerator::R { t: b, k });
    let mut out = FockVector::vacuum(shape);
    for k in 1..=j {
        out = out.mul(&pair(shape, r(2 * k - 1)?, r(2 * k)?))?;
    }
    for k in 2 * j + 1..=big_l {
        out = out.mul(&r(k)?)?;
    }
    Ok(out)
}

/// `C` for odd `N`, `1` for even `N`.
pub fn c_factor(shape: FockShape) -> Result<FockVector> {
    let mut out = FockVector::vacuum(shape);
    if !shape.dim.odd {
        return Ok(out);
    }
    for k in 1..=shape.l / 2 {
        let c = |k| gen(shape, CliffordGenerator::C { k });
        out = out.mul(&pair(shape, c(2 * k - 1)?, c(2 * k)?))?;
    }
    Ok(out)
}

/// `Λ(i)·R(j)`.
pub fn build_primitive(params: &PrimitiveParams, dim: SuperDim) -> Result<FockVector> {
    params.validate(dim)?;
    let shape = params.shape(dim)?;
    let mut v = FockVector::vacuum(shape);
    for (a, &ia) in params.i.iter().enumerate() {
        if ia == 0 {
            continue;
        }
        let la = lambda_det(a + 1, shape)?;
        for _ in 0..ia {
            v = v.mul(&la)?;
        }
    }
    for (b, &jb) in params.j.iter().enumerate() {
        v = v.mul(&r_factor(b + 1, jb as usize, shape)?)?;
    }
    v = v.mul(&c_factor(shape)?)?;
    debug_assert!(!v.is_zero());
    Ok(v)
}

/// `λ_s = Σ_{a > m−s} i_a + L/2`, `μ_t = j_t − L/2`.
pub fn predicted_weight(params: &PrimitiveParams) -> Weight {
    let m = params.i.len();
    let half = Rational::new(params.big_l as i64, 2);
    let lambda = (1..=m)
        .map(|s| {
            let sum: i64 = params.i[m - s..].iter().map(|&x| x as i64).sum();
            &Rational::from_integer(sum) + &half
        })
        .collect();
    let mu = params.j.iter().map(|&x| &Rational::from_integer(x as i64) - &half).collect();
    Weight::new(lambda, mu)
}

#[derive(Clone, Debug, Serialize)]
pub struct RootCheck {
    pub root: Root,
    pub case: TableCase,
    pub killed: bool,
    pub image_terms: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimitivityReport {
    pub roots: Vec<RootCheck>,
    pub passes: bool,
}

impl PrimitivityReport {
    pub fn failing_roots(&self) -> Vec<String> {
        self.roots.iter().filter(|r| !r.killed).map(|r| r.root.to_string()).collect()
    }
}

/// Applies the table operator of every negative root (restricted by
/// `keep`) and records which images vanish.
pub fn check_annihilation(v: &FockVector, keep: impl Fn(&Root) -> bool) -> Result<PrimitivityReport> {
    let shape = v.shape();
    let mut roots = Vec::new();
    for alpha in negative_roots(shape.dim).into_iter().filter(|a| keep(a)) {
        let (case, op) = negative_root_operator(&alpha, shape)?;
        let image = op.apply(v)?;
        roots.push(RootCheck { root: alpha, case, killed: image.is_zero(), image_terms: image.num_terms() });
    }
    let passes = roots.iter().all(|r| r.killed);
    Ok(PrimitivityReport { roots, passes })
}

/// Whether `v` is killed by every negative root operator.
pub fn check_primitive(v: &FockVector) -> Result<PrimitivityReport> {
    check_annihilation(v, |_| true)
}

fn op(shape: FockShape, atoms: &[OperatorAtom]) -> Result<FockOperator> {
    FockOperator::from_atoms(shape, atoms)
}

fn r_one_pm_alpha(shape: FockShape, b: usize, k: usize, sign: i64) -> Result<FockOperator> {
    let r = op(shape, &[OperatorAtom::CliffMul(CliffordGenerator::R { t: b, k })])?;
    let ra = op(shape, &[OperatorAtom::CliffMul(CliffordGenerator::R { t: b, k }), OperatorAtom::Alpha { t: b, k }])?;
    r.add(&ra.scale(&Cyclotomic::from_integer(sign)))
}

/// `∂Λ_a/∂z_{s,2k} = i·∂Λ_a/∂z_{s,2k−1}`.
pub fn lambda_cofactor_identity(a: usize, s: usize, k: usize, shape: FockShape) -> Result<bool> {
    let la = lambda_det(a, shape)?;
    let even = op(shape, &[OperatorAtom::DelZ { s, k: 2 * k }])?.apply(&la)?;
    let odd = op(shape, &[OperatorAtom::DelZ { s, k: 2 * k - 1 }])?.apply(&la)?;
    Ok(even == odd.scale(&Cyclotomic::i()))
}

/// `r_{b,2k}(1 ± α_{b,2k}) R_b(j) = i·r_{b,2k−1}(1 ± α_{b,2k−1}) R_b(j)`.
pub fn r_pair_identity(b: usize, j: usize, k: usize, sign: i64, shape: FockShape) -> Result<bool> {
    let rb = r_factor(b, j, shape)?;
    let lhs = r_one_pm_alpha(shape, b, 2 * k, sign)?.apply(&rb)?;
    let rhs = r_one_pm_alpha(shape, b, 2 * k - 1, sign)?.apply(&rb)?;
    Ok(lhs == rhs.scale(&Cyclotomic::i()))
}

/// `r_{b,k}(1 + α_{b,k}) R_b(j) = 0`.
pub fn r_kill_identity(b: usize, j: usize, k: usize, shape: FockShape) -> Result<bool> {
    let rb = r_factor(b, j, shape)?;
    Ok(r_one_pm_alpha(shape, b, k, 1)?.apply(&rb)?.is_zero())
}

/// `c_{2k} C = i·c_{2k−1} C`.
pub fn c_pair_identity(k: usize, shape: FockShape) -> Result<bool> {
    let c = c_factor(shape)?;
    let lhs = op(shape, &[OperatorAtom::CliffMul(CliffordGenerator::C { k: 2 * k })])?.apply(&c)?;
    let rhs = op(shape, &[OperatorAtom::CliffMul(CliffordGenerator::C { k: 2 * k - 1 })])?.apply(&c)?;
    Ok(lhs == rhs.scale(&Cyclotomic::i()))
}

/// All four families of identities behind the primitivity proof, for every
/// admissible index on `shape`.
pub fn check_proof_identities(shape: FockShape) -> Result<CheckSummary> {
    let (m, n, l, big_l) = (shape.dim.m, shape.dim.n, shape.l / 2, shape.l);
    let mut summary = CheckSummary::default();
    let mut record = |ok: bool, what: String| {
        summary.checked += 1;
        if ok {
            summary.passed += 1;
        } else {
            summary.failures.push(what);
        }
    };
    for a in 1..=m.min(l) {
        for s in 1..=m {
            for k in 1..=l {
                record(lambda_cofactor_identity(a, s, k, shape)?, format!("cofactor identity for Λ_{a}, s={s}, k={k}"));
            }
        }
    }
    for b in 1..=n {
        for j in 0..=l {
            for k in 1..=j {
                for sign in [1, -1] {
                    record(r_pair_identity(b, j, k, sign, shape)?, format!("pair identity for R_{b}({j}), k={k}, sign {sign}"));
                }
            }
            for k in 2 * j + 1..=big_l {
                record(r_kill_identity(b, j, k, shape)?, format!("kill identity for R_{b}({j}), k={k}"));
            }
        }
    }
    if shape.dim.odd {
        for k in 1..=l {
            record(c_pair_identity(k, shape)?, format!("c-pair identity, k={k}"));
        }
    }
    Ok(summary)
}

/// Every valid parameter set with entries of `i` at most `max_i`.
pub fn enumerate_params(dim: SuperDim, big_l: usize, max_i: u32) -> Vec<PrimitiveParams> {
    let l = (big_l / 2) as u32;
    let mut js: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..dim.n {
        js = js
            .into_iter()
            .flat_map(|prefix| {
                let lo = prefix.last().copied().unwrap_or(0);
                (lo..=l).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let mut is: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..dim.m {
        is = is
            .into_iter()
            .flat_map(|prefix| {
                (0..=max_i).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for j in &js {
        for i in &is {
            let p = PrimitiveParams::new(big_l, i.clone(), j.clone());
            if p.validate(dim).is_ok() {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock_operators::weight_of_vector;

    fn shape(m: usize, n: usize, odd: bool, l: usize) -> FockShape {
        FockShape::new(SuperDim::new(m, n, odd), l).unwrap()
    }

    #[test]
    fn lambda_small_cases() {
        let sh = shape(1, 1, false, 2);
        assert_eq!(lambda_det(1, sh).unwrap().to_string(), "(1) * z[1,1] + (1·z2) * z[1,2]");
        let sh = shape(2, 1, false, 4);
        let l2 = lambda_det(2, sh).unwrap();
        let e = |s: usize, k: usize| pair(sh, z(sh, s, 2 * k - 1).unwrap(), z(sh, s, 2 * k).unwrap());
        let expected = e(1, 1).mul(&e(2, 2)).unwrap().sub(&e(1, 2).mul(&e(2, 1)).unwrap()).unwrap();
        assert_eq!(l2, expected);
        assert!(lambda_det(3, sh).is_err());
        assert!(lambda_det(1, shape(1, 1, false, 1)).is_err());
    }

    #[test]
    fn r_and_c_small_cases() {
        let sh = shape(1, 1, true, 2);
        assert_eq!(r_factor(1, 0, sh).unwrap().to_string(), "(1) * r[1,1]*r[1,2]");
        assert_eq!(r_factor(1, 1, sh).unwrap().to_string(), "(1) * r[1,1] + (1·z2) * r[1,2]");
        assert_eq!(c_factor(sh).unwrap().to_string(), "(1) * c[1] + (1·z2) * c[2]");
        assert!(r_factor(1, 2, sh).is_err());
        assert!(r_factor(2, 0, sh).is_err());
        assert_eq!(c_factor(shape(1, 1, false, 2)).unwrap(), FockVector::vacuum(shape(1, 1, false, 2)));
    }

    #[test]
    fn primitive_examples() {
        let dim = SuperDim::new(1, 1, true);
        let v = build_primitive(&PrimitiveParams::new(2, vec![1], vec![1]), dim).unwrap();
        let sh = v.shape();
        let expected = lambda_det(1, sh).unwrap().mul(&r_factor(1, 1, sh).unwrap()).unwrap().mul(&c_factor(sh).unwrap()).unwrap();
        assert_eq!(v, expected);
        assert_eq!(weight_of_vector(&v).unwrap(), Weight::from_integers(&[2], &[0]));
        assert!(check_primitive(&v).unwrap().passes);
        let dim2 = SuperDim::new(2, 2, true);
        let bare = build_primitive(&PrimitiveParams::new(2, vec![0, 0], vec![0, 0]), dim2).unwrap();
        assert_eq!(bare.num_terms(), 2);
        assert!(build_primitive(&PrimitiveParams::new(2, vec![1], vec![0]), dim).is_err());
    }

    #[test]
    fn non_primitive_vector_is_caught() {
        let sh = shape(1, 1, false, 2);
        let v = FockVector::basis(sh, PolyMonomial::var(0), CliffordWord(0b11));
        let report = check_primitive(&v).unwrap();
        assert!(!report.passes);
        assert_eq!(report.failing_roots(), vec!["-e1+f1".to_string()]);
    }

    #[test]
    fn predicted_weights() {
        let p = PrimitiveParams::new(2, vec![1, 0], vec![1, 1]);
        assert_eq!(predicted_weight(&p), Weight::from_integers(&[1, 2], &[0, 0]));
        let p = PrimitiveParams::new(3, vec![0, 0], vec![0]);
        assert_eq!(predicted_weight(&p).to_string(), "(3/2,3/2;-3/2)");
    }

    #[test]
    fn validation_rules() {
        let dim = SuperDim::new(2, 2, false);
        assert!(PrimitiveParams::new(4, vec![1, 0], vec![2, 1]).validate(dim).is_err());
        assert!(PrimitiveParams::new(4, vec![0, 1], vec![1, 2]).validate(dim).is_err());
        assert!(PrimitiveParams::new(4, vec![0, 1], vec![2, 2]).validate(dim).is_ok());
        assert!(PrimitiveParams::new(2, vec![0, 0], vec![0, 2]).validate(dim).is_err());
        assert!(PrimitiveParams::new(4, vec![1], vec![1, 1]).validate(dim).is_err());
        // N = 1: only the Λ_a range constraint applies.
        let n1 = SuperDim::new(2, 0, true);
        assert!(PrimitiveParams::new(4, vec![2, 1], vec![]).validate(n1).is_ok());
        assert!(PrimitiveParams::new(2, vec![0, 1], vec![]).validate(n1).is_err());
        assert!(PrimitiveParams::new(2, vec![0], vec![]).validate(SuperDim::new(1, 0, false)).is_err());
    }

    #[test]
    fn identities_on_a_small_shape() {
        let s = check_proof_identities(shape(2, 1, true, 4)).unwrap();
        assert!(s.all_passed(), "{:?}", s.failures);
        assert!(s.checked > 10);
    }

    #[test]
    fn permutation_signs() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        let total: i64 = perms.iter().map(|(_, s)| s).sum();
        assert_eq!(total, 0);
        assert!(perms.contains(&(vec![0, 1, 2], 1)));
        assert!(perms.contains(&(vec![1, 0, 2], -1)));
        assert!(perms.contains(&(vec![1, 2, 0], 1)));
    }
}
