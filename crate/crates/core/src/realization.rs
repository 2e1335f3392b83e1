//! The Clifford–Weyl realization `ρ̃ = ρ^L ∘ ι`.
//!
//! The Clifford–Weyl algebra is generated by `p_i, q_i` (even) and
//! `r_ℓ, s_ℓ, c` (odd) with scalar super-brackets
//!
//! ```text
//!   [p_i, q_j] = δ_ij,   [r_i, r_j] = [s_i, s_j] = 2δ_ij,   [c, c] = 2,
//! ```
//!
//! and all other brackets zero. The quadratic elements
//! `m(x, y) = xy + (−1)^{deg x deg y} yx` span a copy of `osp(M/N)` acting on
//! `V = span{p, q, r, s, c}` by `ad`. The matrix model uses the basis
//! `(p_1..p_m, q_1..q_m | r̂_1, ŝ_1, …, r̂_n, ŝ_n, ĉ)` with `x̂ = x/√2` for odd
//! `x`, in which the form is the standard one of [`crate::osp_matrix`].
//!
//! A supermatrix is realized by expanding it in the `ad m(x, y)` basis and
//! replacing each `m(x, y)` by `Σ_k m(x_k, y_k)`, where `x_k` is the copy of
//! `x` acting on the `k`-th block of variables of `F^L`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::cyclo::Cyclotomic;
use crate::fock_operators::{operators_agree, super_commutator, FockOperator, OperatorAtom};
use crate::fock_space::{CliffordGenerator, FockShape};
use crate::linalg::ColumnSpan;
use crate::osp_matrix::{osp_basis, osp_membership, super_bracket, Parity, SuperDim, SuperMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CwKind {
    P,
    Q,
    R,
    S,
    C,
}

/// A Clifford–Weyl generator `x_{index}` in copy `copy` (both 1-based; `c`
/// has index 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CwGenerator {
    pub kind: CwKind,
    pub index: usize,
    pub copy: usize,
}

impl CwGenerator {
    pub fn new(kind: CwKind, index: usize, copy: usize) -> Self {
        CwGenerator { kind, index, copy }
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd(!matches!(self.kind, CwKind::P | CwKind::Q))
    }

    fn in_copy(self, copy: usize) -> Self {
        CwGenerator { copy, ..self }
    }

    /// Position in the matrix model of `V`.
    fn position(&self, dim: SuperDim) -> usize {
        let (m, big_m) = (dim.m, dim.even_dim());
        match self.kind {
            CwKind::P => self.index - 1,
            CwKind::Q => m + self.index - 1,
            CwKind::R => big_m + 2 * self.index - 2,
            CwKind::S => big_m + 2 * self.index - 1,
            CwKind::C => big_m + 2 * dim.n,
        }
    }
}

impl fmt::Display for CwGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            CwKind::P => "p",
            CwKind::Q => "q",
            CwKind::R => "r",
            CwKind::S => "s",
            CwKind::C => "c",
        };
        if self.kind == CwKind::C {
            write!(f, "c[{}]", self.copy)
        } else {
            write!(f, "{name}[{},{}]", self.index, self.copy)
        }
    }
}

/// The generators of `V` in the order `p, q, r, s, c`, in copy 1.
pub fn cw_generators(dim: SuperDim) -> Vec<CwGenerator> {
    let mut out = Vec::new();
    for (kind, count) in [(CwKind::P, dim.m), (CwKind::Q, dim.m), (CwKind::R, dim.n), (CwKind::S, dim.n)] {
        out.extend((1..=count).map(|i| CwGenerator::new(kind, i, 1)));
    }
    if dim.odd {
        out.push(CwGenerator::new(CwKind::C, 1, 1));
    }
    out
}

/// All generators of the `L`-fold Clifford–Weyl algebra, copy by copy.
pub fn cw_generators_with_copies(shape: FockShape) -> Vec<CwGenerator> {
    (1..=shape.l).flat_map(|k| cw_generators(shape.dim).into_iter().map(move |g| g.in_copy(k))).collect()
}

/// The scalar `[x, y]` of two generators.
pub fn cw_bracket(x: CwGenerator, y: CwGenerator) -> i64 {
    if x.copy != y.copy {
        return 0;
    }
    let same = x.index == y.index;
    match (x.kind, y.kind) {
        (CwKind::P, CwKind::Q) if same => 1,
        (CwKind::Q, CwKind::P) if same => -1,
        (CwKind::R, CwKind::R) | (CwKind::S, CwKind::S) if same => 2,
        (CwKind::C, CwKind::C) => 2,
        _ => 0,
    }
}

fn check_generator(g: CwGenerator, shape: FockShape) -> Result<()> {
    let dim = shape.dim;
    let bound = match g.kind {
        CwKind::P | CwKind::Q => dim.m,
        CwKind::R | CwKind::S => dim.n,
        CwKind::C if !dim.odd => return Err(Error::RequiresOddN(format!("{g} does not exist for even N"))),
        CwKind::C => 1,
    };
    if g.index == 0 || g.index > bound || g.copy == 0 || g.copy > shape.l {
        return Err(Error::IndexOutOfRange(format!("{g} in {dim} with L={}", shape.l)));
    }
    Ok(())
}

/// `ρ` of a single generator:
/// `ρ(p) = (i·ζ/√2)(z − ∂)`, `ρ(q) = (ζ/√2)(z + ∂)`, `ρ(r) = r`,
/// `ρ(s) = i·r·α`, `ρ(c) = c`, with `ζ² = i`.
pub fn rho_generator(g: CwGenerator, shape: FockShape) -> Result<FockOperator> {
    check_generator(g, shape)?;
    let (i, k) = (g.index, g.copy);
    let atom = |a: OperatorAtom| FockOperator::atom(shape, &a);
    match g.kind {
        CwKind::P | CwKind::Q => {
            let z = atom(OperatorAtom::MulZ { s: i, k })?;
            let d = atom(OperatorAtom::DelZ { s: i, k })?;
            let qroot_over_sqrt2 = &Cyclotomic::qroot() * &Cyclotomic::inv_sqrt2();
            if g.kind == CwKind::P {
                Ok(z.sub(&d)?.scale(&(&Cyclotomic::i() * &qroot_over_sqrt2)))
            } else {
                Ok(z.add(&d)?.scale(&qroot_over_sqrt2))
            }
        }
        CwKind::R => atom(OperatorAtom::CliffMul(CliffordGenerator::R { t: i, k })),
        CwKind::S => Ok(FockOperator::from_atoms(
            shape,
            &[OperatorAtom::CliffMul(CliffordGenerator::R { t: i, k }), OperatorAtom::Alpha { t: i, k }],
        )?
        .scale(&Cyclotomic::i())),
        CwKind::C => atom(OperatorAtom::CliffMul(CliffordGenerator::C { k })),
    }
}

/// `ρ(m(x, y)) = ρ(x)ρ(y) + (−1)^{deg x deg y} ρ(y)ρ(x)` for generators in the
/// same copy.
pub fn rho_quadratic(x: CwGenerator, y: CwGenerator, shape: FockShape) -> Result<FockOperator> {
    if x.copy != y.copy {
        return Err(Error::IndexOutOfRange(format!("{x} and {y} lie in different copies")));
    }
    let (rx, ry) = (rho_generator(x, shape)?, rho_generator(y, shape)?);
    let xy = rx.compose(&ry)?;
    let yx = ry.compose(&rx)?;
    if x.parity().koszul(y.parity()) < 0 {
        xy.sub(&yx)
    } else {
        xy.add(&yx)
    }
}

/// `Σ_k m(x_k, y_k)`, the image of `m(x, y)` under `ρ^L ∘ ι`.
pub fn rho_quadratic_summed(x: CwGenerator, y: CwGenerator, shape: FockShape) -> Result<FockOperator> {
    let mut total = FockOperator::zero(shape);
    for k in 1..=shape.l {
        total = total.add(&rho_quadratic(x.in_copy(k), y.in_copy(k), shape)?)?;
    }
    Ok(total)
}

/// The supermatrix of `ad m(x, y)` on `V`.
///
/// `[xy, v] = [y, v]·x + (−1)^{deg y deg v}[x, v]·y`, and the entry for
/// `v ↦ u` picks up `√2^{deg u − deg v}` from the rescaling of the odd basis
/// vectors.
pub fn ad_matrix(x: CwGenerator, y: CwGenerator, dim: SuperDim) -> SuperMatrix {
    let eps = x.parity().koszul(y.parity());
    let mut out = SuperMatrix::zero(dim);
    let scale = |target: CwGenerator, source: CwGenerator| -> Cyclotomic {
        match (target.parity(), source.parity()) {
            (Parity::Odd, Parity::Even) => Cyclotomic::sqrt2(),
            (Parity::Even, Parity::Odd) => Cyclotomic::inv_sqrt2(),
            _ => Cyclotomic::one(),
        }
    };
    for v in cw_generators(dim) {
        let (xv, yv) = (cw_bracket(x.in_copy(1), v), cw_bracket(y.in_copy(1), v));
        let coeff_x = yv + eps * x.parity().koszul(v.parity()) * yv;
        let coeff_y = y.parity().koszul(v.parity()) * xv + eps * xv;
        for (target, c) in [(x, coeff_x), (y, coeff_y)] {
            if c == 0 {
                continue;
            }
            let (r, col) = (target.position(dim), v.position(dim));
            let entry = out.get(r, col) + &scale(target, v).scale(&c.into());
            out.set(r, col, entry);
        }
    }
    out
}

/// Unordered pairs `{x, y}` whose `m(x, y)` form a basis of the quadratic
/// span: `x ≤ y`, strictly for two odd generators (where `m(x, x) = 0`).
pub fn quadratic_pairs(dim: SuperDim) -> Vec<(CwGenerator, CwGenerator)> {
    let gens = cw_generators(dim);
    let mut out = Vec::new();
    for (a, &x) in gens.iter().enumerate() {
        for &y in &gens[a..] {
            if x == y && x.parity().is_odd() {
                continue;
            }
            out.push((x, y));
        }
    }
    out
}

/// Outcome counts of a batch of exact checks, with messages for the failures.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckSummary {
    pub checked: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

impl CheckSummary {
    fn record(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checked += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(msg());
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn merge(&mut self, other: CheckSummary) {
        self.checked += other.checked;
        self.passed += other.passed;
        self.failures.extend(other.failures);
    }
}

/// `ρ̃` on a fixed `F^L`, with the `ad`-identification solved once.
#[derive(Clone, Debug)]
pub struct Realization {
    shape: FockShape,
    pairs: Vec<(CwGenerator, CwGenerator)>,
    span: ColumnSpan,
    pair_ops: Vec<FockOperator>,
}

impl Realization {
    pub fn new(shape: FockShape) -> Result<Self> {
        let dim = shape.dim;
        let pairs = quadratic_pairs(dim);
        let columns: Vec<Vec<Cyclotomic>> =
            pairs.iter().map(|&(x, y)| ad_matrix(x, y, dim).entries().to_vec()).collect();
        let span = ColumnSpan::new(&columns)
            .map_err(|e| Error::Precondition(format!("ad is not injective on the quadratic span: {e}")))?;
        let pair_ops = pairs
            .iter()
            .map(|&(x, y)| rho_quadratic_summed(x, y, shape))
            .collect::<Result<Vec<_>>>()?;
        Ok(Realization { shape, pairs, span, pair_ops })
    }

    pub fn shape(&self) -> FockShape {
        self.shape
    }

    pub fn dim(&self) -> SuperDim {
        self.shape.dim
    }

    pub fn pairs(&self) -> &[(CwGenerator, CwGenerator)] {
        &self.pairs
    }

    /// Coordinates of `X` in the basis `ad m(x, y)`.
    pub fn coordinates(&self, x: &SuperMatrix) -> Result<Vec<Cyclotomic>> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim().to_string(), found: x.dim().to_string() });
        }
        if !osp_membership(x) {
            return Err(Error::NotInOsp);
        }
        self.span.solve(x.entries()).ok_or(Error::NotInOsp)
    }

    /// `ρ̃(X)` for `X ∈ osp(M/N; ℂ)`.
    pub fn rho(&self, x: &SuperMatrix) -> Result<FockOperator> {
        let coords = self.coordinates(x)?;
        let mut out = FockOperator::zero(self.shape);
        for (c, op) in coords.iter().zip(&self.pair_ops) {
            if !c.is_zero() {
                out = out.add(&op.scale(c))?;
            }
        }
        Ok(out)
    }

    /// The `ad` map is onto: every `osp` basis element has coordinates.
    pub fn check_ad_bijection(&self) -> CheckSummary {
        let mut summary = CheckSummary::default();
        let dim = self.dim();
        summary.record(self.pairs.len() == dim.osp_dimension(), || {
            format!("{} quadratic pairs for an algebra of dimension {}", self.pairs.len(), dim.osp_dimension())
        });
        for (x, y) in &self.pairs {
            summary.record(osp_membership(&ad_matrix(*x, *y, dim)), || format!("ad m({x},{y}) is not in {dim}"));
        }
        for (idx, b) in osp_basis(dim).iter().enumerate() {
            summary.record(self.span.solve(b.entries()).is_some(), || format!("basis element {idx} is not in the image of ad"));
        }
        summary
    }

    /// The defining relations `[ρ(x), ρ(y)] = [x, y]` for every pair of
    /// generators (copies included), on polynomial degree `≤ max_degree`.
    pub fn check_generator_relations(&self, max_degree: u32) -> Result<CheckSummary> {
        let shape = self.shape;
        let gens = cw_generators_with_copies(shape);
        let ops = gens.iter().map(|&g| rho_generator(g, shape)).collect::<Result<Vec<_>>>()?;
        let mut summary = CheckSummary::default();
        for (a, &x) in gens.iter().enumerate() {
            for (b, &y) in gens.iter().enumerate() {
                let lhs = super_commutator(&ops[a], &ops[b])?;
                let expected = FockOperator::scalar(shape, Cyclotomic::from_integer(cw_bracket(x, y)));
                let outcome = operators_agree(&lhs, &expected, max_degree)?;
                summary.record(outcome.is_ok(), || {
                    format!("[ρ({x}), ρ({y})] ≠ {}: {}", cw_bracket(x, y), outcome.unwrap_err())
                });
            }
        }
        Ok(summary)
    }

    /// `ρ̃([X, Y]) = [ρ̃X, ρ̃Y]` for all ordered pairs of `osp` basis elements,
    /// tallied by the parities of the pair.
    pub fn check_homomorphism(&self, max_degree: u32) -> Result<BTreeMap<String, CheckSummary>> {
        let basis = osp_basis(self.dim());
        let images = basis.iter().map(|b| self.rho(b)).collect::<Result<Vec<_>>>()?;
        let mut out: BTreeMap<String, CheckSummary> = BTreeMap::new();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let bracket = super_bracket(x, y)?;
                let lhs = self.rho(&bracket)?;
                let rhs = super_commutator(&images[i], &images[j])?;
                let outcome = operators_agree(&lhs, &rhs, max_degree)?;
                let parity = |m: &SuperMatrix| match m.parity() {
                    Some(Parity::Odd) => "odd",
                    _ => "even",
                };
                let key = format!("{}-{}", parity(x), parity(y));
                out.entry(key).or_default().record(outcome.is_ok(), || {
                    format!("basis pair ({i}, {j}): {}", outcome.unwrap_err())
                });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock_operators::{pairing_constant, proportionality_constant, weight_operator_so, weight_operator_sp};
    use crate::osp_matrix::{cartan_element, cartan_generators};

    fn shape(m: usize, n: usize, odd: bool, l: usize) -> FockShape {
        FockShape::new(SuperDim::new(m, n, odd), l).unwrap()
    }

    #[test]
    fn ad_of_p_r_matches_display() {
        let dim = SuperDim::new(2, 2, true);
        let two_sqrt2 = Cyclotomic::from_integer(2) * Cyclotomic::sqrt2();
        for k in 1..=2 {
            for l in 1..=2 {
                let x = ad_matrix(CwGenerator::new(CwKind::P, k, 1), CwGenerator::new(CwKind::R, l, 1), dim);
                let mut expected = SuperMatrix::zero(dim);
                expected.set(k - 1, 4 + 2 * l - 2, two_sqrt2.clone());
                expected.set(4 + 2 * l - 2, 2 + k - 1, two_sqrt2.clone());
                assert_eq!(x, expected);
            }
        }
    }

    #[test]
    fn ad_of_p_q_is_diagonal() {
        let dim = SuperDim::new(2, 1, false);
        let x = ad_matrix(CwGenerator::new(CwKind::P, 1, 1), CwGenerator::new(CwKind::Q, 1, 1), dim);
        for r in 0..dim.size() {
            for c in 0..dim.size() {
                if r != c {
                    assert!(x.get(r, c).is_zero());
                }
            }
        }
        assert_eq!(x.get(0, 0), &Cyclotomic::from_integer(-2));
        assert_eq!(x.get(2, 2), &Cyclotomic::from_integer(2));
    }

    #[test]
    fn ad_images_are_in_osp_and_span_it() {
        for dim in [SuperDim::new(1, 1, false), SuperDim::new(2, 1, true), SuperDim::new(1, 0, true)] {
            let r = Realization::new(FockShape::new(dim, 1).unwrap()).unwrap();
            let s = r.check_ad_bijection();
            assert!(s.all_passed(), "{:?}", s.failures);
        }
    }

    #[test]
    fn generator_relations_small() {
        let r = Realization::new(shape(1, 1, true, 2)).unwrap();
        let s = r.check_generator_relations(3).unwrap();
        assert!(s.all_passed(), "{:?}", s.failures);
        assert_eq!(s.checked, 100);
    }

    #[test]
    fn rho_of_cartan_elements_are_weight_operators() {
        let sh = shape(2, 2, true, 2);
        let r = Realization::new(sh).unwrap();
        let gens = cartan_generators(sh.dim);
        for i in 1..=2 {
            let op = r.rho(&gens[i - 1]).unwrap();
            assert!(operators_agree(&op, &weight_operator_sp(i, sh).unwrap(), 3).unwrap().is_ok());
        }
        for j in 1..=2 {
            let op = r.rho(&gens[1 + j]).unwrap();
            assert!(operators_agree(&op, &weight_operator_so(j, sh).unwrap(), 3).unwrap().is_ok());
        }
    }

    #[test]
    fn rho_b_is_quarter_of_m_r_s() {
        let sh = shape(1, 1, false, 1);
        let r = CwGenerator::new(CwKind::R, 1, 1);
        let s = CwGenerator::new(CwKind::S, 1, 1);
        let quarter = Cyclotomic::from_rational(crate::Rational::new(1, 4));
        let lhs = rho_quadratic(r, s, sh).unwrap().scale(&quarter);
        assert!(operators_agree(&lhs, &weight_operator_so(1, sh).unwrap(), 2).unwrap().is_ok());
    }

    #[test]
    fn homomorphism_small() {
        let r = Realization::new(shape(1, 1, false, 2)).unwrap();
        let report = r.check_homomorphism(3).unwrap();
        let total: usize = report.values().map(|s| s.checked).sum();
        assert_eq!(total, 64);
        assert!(report.values().all(CheckSummary::all_passed), "{report:?}");
    }

    #[test]
    fn rejects_non_members() {
        let r = Realization::new(shape(1, 1, false, 1)).unwrap();
        let mut x = SuperMatrix::zero(r.dim());
        x.set(0, 0, Cyclotomic::one());
        assert!(matches!(r.rho(&x), Err(Error::NotInOsp)));
        let other = SuperMatrix::zero(SuperDim::new(2, 1, false));
        assert!(r.rho(&other).is_err());
    }

    #[test]
    fn weight_operators_are_skew_adjoint() {
        let sh = shape(1, 1, true, 2);
        let r = Realization::new(sh).unwrap();
        let h = cartan_element(sh.dim, &[Cyclotomic::one()], &[Cyclotomic::from_integer(3)]).unwrap();
        let op = r.rho(&h).unwrap();
        assert_eq!(pairing_constant(&op, &op, 2).unwrap().unwrap(), Some(Cyclotomic::from_integer(-1)));
        let x = rho_generator(CwGenerator::new(CwKind::P, 1, 2), sh).unwrap();
        assert_eq!(proportionality_constant(&x, &x, 2).unwrap(), Some(Cyclotomic::one()));
    }

    #[test]
    fn bad_generators_are_rejected() {
        let sh = shape(1, 1, false, 2);
        assert!(matches!(rho_generator(CwGenerator::new(CwKind::C, 1, 1), sh), Err(Error::RequiresOddN(_))));
        assert!(rho_generator(CwGenerator::new(CwKind::P, 2, 1), sh).is_err());
        assert!(rho_generator(CwGenerator::new(CwKind::R, 1, 3), sh).is_err());
        assert!(rho_quadratic(CwGenerator::new(CwKind::P, 1, 1), CwGenerator::new(CwKind::Q, 1, 2), sh).is_err());
    }
}
