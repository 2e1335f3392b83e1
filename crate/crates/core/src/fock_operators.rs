//! Operators on `F^L` built from `z`-multiplication, `∂/∂z`, Clifford left
//! multiplication and the automorphisms `α_{t,k}`.
//!
//! An operator is stored as a sum of terms `c · P ⊗ (L_w ∘ α_S)` where `P` is
//! a word in multiplication and differentiation operators and `L_w ∘ α_S` is
//! left multiplication by the normal-ordered word `w` after flipping the sign
//! of the `r` generators in `S`. The polynomial factor is even, so the two
//! tensor factors compose independently. Every word of atoms reduces to a
//! single such term.
//!
//! Equality of operators is extensional: two operators are equal when they
//! agree on every `z^A ⊗ w` with `|A| ≤ D`.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclo::Cyclotomic;
use crate::fock_space::{all_words, monomials_up_to, BasisKey, CliffordGenerator, CliffordWord, FockShape, FockVector, PolyMonomial};
use crate::osp_matrix::{Parity, Root, Weight};
use crate::rational::Rational;
use crate::{Error, Result};

/// One factor of an operator word, with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum OperatorAtom {
    MulZ { s: usize, k: usize },
    DelZ { s: usize, k: usize },
    CliffMul(CliffordGenerator),
    Alpha { t: usize, k: usize },
    Scalar(Cyclotomic),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyAtom {
    Mul(u16),
    Del(u16),
}

impl PolyAtom {
    fn var(self) -> u16 {
        match self {
            PolyAtom::Mul(v) | PolyAtom::Del(v) => v,
        }
    }

    fn adjoint(self) -> PolyAtom {
        match self {
            PolyAtom::Mul(v) => PolyAtom::Del(v),
            PolyAtom::Del(v) => PolyAtom::Mul(v),
        }
    }
}

/// A word in `z_v` and `∂/∂z_v`, written left to right and applied right to
/// left. Atoms on different variables commute, so the word is kept stably
/// sorted by variable.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyWord(Vec<PolyAtom>);

impl PolyWord {
    pub fn atoms(&self) -> &[PolyAtom] {
        &self.0
    }

    fn single(a: PolyAtom) -> Self {
        PolyWord(vec![a])
    }

    /// `self ∘ other`.
    fn compose(&self, other: &PolyWord) -> PolyWord {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i].var() <= other.0[j].var() {
                out.push(self.0[i]);
                i += 1;
            } else {
                out.push(other.0[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        PolyWord(out)
    }

    fn adjoint(&self) -> PolyWord {
        let mut atoms: Vec<PolyAtom> = self.0.iter().rev().map(|a| a.adjoint()).collect();
        atoms.sort_by_key(|a| a.var());
        PolyWord(atoms)
    }

    /// `P(z^A) = coefficient · z^B`, or `None` when it vanishes.
    #[inline]
    pub fn apply(&self, mono: &PolyMonomial) -> Option<(u64, PolyMonomial)> {
        let mut m = mono.clone();
        let mut c: u64 = 1;
        for atom in self.0.iter().rev() {
            match *atom {
                PolyAtom::Mul(v) => m.mul_var(v),
                PolyAtom::Del(v) => {
                    let e = m.del_var(v);
                    if e == 0 {
                        return None;
                    }
                    c = c.checked_mul(e as u64).expect("differentiation coefficient overflow");
                }
            }
        }
        Some((c, m))
    }

    fn render(&self, shape: &FockShape) -> String {
        self.0
            .iter()
            .map(|a| {
                let (s, k) = shape.var_name(a.var());
                match a {
                    PolyAtom::Mul(_) => format!("z[{s},{k}]"),
                    PolyAtom::Del(_) => format!("d[{s},{k}]"),
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `L_w ∘ α_S`: flip the signs of the `r` generators in `S`, then
/// left-multiply by `w`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffOp {
    pub word: CliffordWord,
    pub alpha: u32,
}

impl CliffOp {
    pub const IDENTITY: CliffOp = CliffOp { word: CliffordWord::EMPTY, alpha: 0 };

    /// `(L_{w1} α_{S1})(L_{w2} α_{S2}) = (−1)^{|S1 ∩ w2|} L_{w1 w2} α_{S1 △ S2}`.
    #[inline]
    fn compose(self, other: CliffOp) -> (i64, CliffOp) {
        let (sign, word) = self.word.mul(other.word);
        let flip = if (self.alpha & other.word.0).count_ones().is_multiple_of(2) { 1 } else { -1 };
        (sign * flip, CliffOp { word, alpha: self.alpha ^ other.alpha })
    }

    #[inline]
    pub fn apply(self, u: CliffordWord) -> (i64, CliffordWord) {
        let flip = if (self.alpha & u.0).count_ones().is_multiple_of(2) { 1 } else { -1 };
        let (sign, w) = self.word.mul(u);
        (sign * flip, w)
    }

    pub fn parity(self) -> Parity {
        self.word.parity()
    }

    /// `(L_w α_S)† = α_S L_w†`, where `L_w† = L_w` read backwards.
    fn adjoint(self) -> (i64, CliffOp) {
        let k = self.word.len();
        let reverse = if (k * k.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 };
        let flip = if (self.alpha & self.word.0).count_ones().is_multiple_of(2) { 1 } else { -1 };
        (reverse * flip, self)
    }

    fn render(&self, shape: &FockShape) -> String {
        let mut parts = Vec::new();
        if !self.word.is_empty() {
            parts.push(self.word.render(shape));
        }
        let mut rest = self.alpha;
        while rest != 0 {
            let b = rest.trailing_zeros();
            rest &= rest - 1;
            if let CliffordGenerator::R { t, k } = shape.generator(b) {
                parts.push(format!("a[{t},{k}]"));
            }
        }
        parts.join(" ")
    }
}

type TermKey = (PolyWord, CliffOp);

/// A finite linear combination of normalized operator terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockOperator {
    shape: FockShape,
    terms: BTreeMap<TermKey, Cyclotomic>,
}

impl FockOperator {
    pub fn zero(shape: FockShape) -> Self {
        FockOperator { shape, terms: BTreeMap::new() }
    }

    pub fn scalar(shape: FockShape, c: Cyclotomic) -> Self {
        let mut op = FockOperator::zero(shape);
        op.add_term((PolyWord::default(), CliffOp::IDENTITY), &c);
        op
    }

    pub fn identity(shape: FockShape) -> Self {
        FockOperator::scalar(shape, Cyclotomic::one())
    }

    /// A single atom.
    pub fn atom(shape: FockShape, atom: &OperatorAtom) -> Result<Self> {
        let mut op = FockOperator::zero(shape);
        let key = match atom {
            OperatorAtom::MulZ { s, k } => (PolyWord::single(PolyAtom::Mul(shape.var(*s, *k)?)), CliffOp::IDENTITY),
            OperatorAtom::DelZ { s, k } => (PolyWord::single(PolyAtom::Del(shape.var(*s, *k)?)), CliffOp::IDENTITY),
            OperatorAtom::CliffMul(g) => {
                let word = CliffordWord::single(shape.bit(*g)?);
                (PolyWord::default(), CliffOp { word, alpha: 0 })
            }
            OperatorAtom::Alpha { t, k } => {
                let bit = shape.bit(CliffordGenerator::R { t: *t, k: *k })?;
                (PolyWord::default(), CliffOp { word: CliffordWord::EMPTY, alpha: 1 << bit })
            }
            OperatorAtom::Scalar(c) => return Ok(FockOperator::scalar(shape, c.clone())),
        };
        op.add_term(key, &Cyclotomic::one());
        Ok(op)
    }

    /// The product `a_1 ∘ a_2 ∘ … ∘ a_r` of a word of atoms.
    pub fn from_atoms(shape: FockShape, atoms: &[OperatorAtom]) -> Result<Self> {
        let mut op = FockOperator::identity(shape);
        for a in atoms {
            op = op.compose(&FockOperator::atom(shape, a)?)?;
        }
        Ok(op)
    }

    pub fn shape(&self) -> FockShape {
        self.shape
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, key: TermKey, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &FockOperator) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch {
                expected: format!("{} with L={}", self.shape.dim, self.shape.l),
                found: format!("{} with L={}", other.shape.dim, other.shape.l),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FockOperator) -> Result<FockOperator> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockOperator) -> Result<FockOperator> {
        self.add(&other.scale(&Cyclotomic::from_integer(-1)))
    }

    pub fn scale(&self, a: &Cyclotomic) -> FockOperator {
        if a.is_zero() {
            return FockOperator::zero(self.shape);
        }
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c * a)).collect();
        FockOperator { shape: self.shape, terms }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &FockOperator) -> Result<FockOperator> {
        self.check_shape(other)?;
        let mut out = FockOperator::zero(self.shape);
        for ((p1, c1), a) in &self.terms {
            for ((p2, c2), b) in &other.terms {
                let (sign, c) = c1.compose(*c2);
                let coeff = a * b;
                out.add_term((p1.compose(p2), c), &if sign < 0 { -coeff } else { coeff });
            }
        }
        Ok(out)
    }

    /// `Some(p)` if every term has degree `p`; the zero operator is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|(_, c)| c.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    fn part(&self, p: Parity) -> FockOperator {
        let terms = self.terms.iter().filter(|((_, c), _)| c.parity() == p).map(|(k, v)| (k.clone(), v.clone())).collect();
        FockOperator { shape: self.shape, terms }
    }

    /// The formal adjoint for the inner product of [`FockVector`]:
    /// `z_v† = ∂/∂z_v`, Clifford generators and `α`'s are self-adjoint.
    pub fn adjoint(&self) -> FockOperator {
        let mut out = FockOperator::zero(self.shape);
        for ((p, c), a) in &self.terms {
            let (sign, c) = c.adjoint();
            let coeff = a.conj();
            out.add_term((p.adjoint(), c), &if sign < 0 { -coeff } else { coeff });
        }
        out
    }

    /// Adds the image of `c · (mono ⊗ word)` into `out`.
    fn apply_basis_into(&self, mono: &PolyMonomial, word: CliffordWord, c: &Cyclotomic, out: &mut FockVector) {
        for ((p, cl), a) in &self.terms {
            let Some((k, m)) = p.apply(mono) else { continue };
            let (sign, w) = cl.apply(word);
            let mut coeff = a * c;
            if k != 1 {
                coeff = coeff.scale(&Rational::from_integer(k as i64));
            }
            out.add_term(m, w, &if sign < 0 { -coeff } else { coeff });
        }
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if self.shape != v.shape() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} with L={}", self.shape.dim, self.shape.l),
                found: format!("{} with L={}", v.shape().dim, v.shape().l),
            });
        }
        let mut out = FockVector::zero(self.shape);
        for (m, w, c) in v.terms() {
            self.apply_basis_into(m, w, c, &mut out);
        }
        Ok(out)
    }

    pub fn apply_basis(&self, mono: &PolyMonomial, word: CliffordWord) -> FockVector {
        let mut out = FockVector::zero(self.shape);
        self.apply_basis_into(mono, word, &Cyclotomic::one(), &mut out);
        out
    }

    /// Terms grouped by their Clifford factor.
    fn clifford_groups(&self) -> BTreeMap<CliffOp, Vec<(&PolyWord, &Cyclotomic)>> {
        let mut groups: BTreeMap<CliffOp, Vec<(&PolyWord, &Cyclotomic)>> = BTreeMap::new();
        for ((p, c), a) in &self.terms {
            groups.entry(*c).or_default().push((p, a));
        }
        groups
    }
}

/// `[A, B] = A∘B − (−1)^{deg A · deg B} B∘A`, extended over homogeneous parts.
pub fn super_commutator(a: &FockOperator, b: &FockOperator) -> Result<FockOperator> {
    a.check_shape(b)?;
    let mut out = FockOperator::zero(a.shape);
    for pa in [Parity::Even, Parity::Odd] {
        let x = a.part(pa);
        if x.is_zero() {
            continue;
        }
        for pb in [Parity::Even, Parity::Odd] {
            let y = b.part(pb);
            if y.is_zero() {
                continue;
            }
            let xy = x.compose(&y)?;
            let yx = y.compose(&x)?;
            let term = if pa.koszul(pb) < 0 { xy.add(&yx)? } else { xy.sub(&yx)? };
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// A basis vector on which an extensional comparison failed.
#[derive(Clone, Debug)]
pub struct Mismatch {
    pub input: BasisKey,
    /// `(A − B)(input)`.
    pub difference: FockVector,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = self.difference.shape();
        write!(
            f,
            "on {} ⊗ {} the operators differ by {}",
            self.input.0.render(&shape),
            self.input.1.render(&shape),
            self.difference
        )
    }
}

/// Whether `Σ_P c_P · P` kills `mono`.
fn poly_group_kills(group: &[(&PolyWord, &Cyclotomic)], mono: &PolyMonomial) -> bool {
    let mut acc: BTreeMap<PolyMonomial, Cyclotomic> = BTreeMap::new();
    for (p, a) in group {
        if let Some((k, m)) = p.apply(mono) {
            let v = if k == 1 { (*a).clone() } else { a.scale(&Rational::from_integer(k as i64)) };
            *acc.entry(m).or_insert_with(Cyclotomic::zero) += &v;
        }
    }
    acc.values().all(Cyclotomic::is_zero)
}

fn witness(diff: &FockOperator, mono: &PolyMonomial) -> Mismatch {
    for w in all_words(&diff.shape) {
        let image = diff.apply_basis(mono, w);
        if !image.is_zero() {
            return Mismatch { input: (mono.clone(), w), difference: image };
        }
    }
    unreachable!("a nonzero Clifford factor acts nontrivially on some word")
}

/// Checks `A = B` on every `z^A ⊗ w` with `|A| ≤ max_degree`.
///
/// The distinct normal forms `L_w ∘ α_S` are linearly independent operators on
/// the Clifford module, so `A − B` vanishes on the truncated basis exactly
/// when each of its polynomial parts (grouped by Clifford factor) kills every
/// monomial of degree `≤ max_degree`. That is what is checked here; see
/// [`operators_agree_literal`] for the term-by-term version.
pub fn operators_agree(a: &FockOperator, b: &FockOperator, max_degree: u32) -> Result<std::result::Result<(), Mismatch>> {
    let diff = a.sub(b)?;
    if diff.is_zero() {
        return Ok(Ok(()));
    }
    let monos = monomials_up_to(diff.shape.num_vars(), max_degree);
    for group in diff.clifford_groups().values() {
        for mono in &monos {
            if !poly_group_kills(group, mono) {
                return Ok(Err(witness(&diff, mono)));
            }
        }
    }
    Ok(Ok(()))
}

/// Checks `A = B` by applying both to every basis vector of the truncated
/// space.
pub fn operators_agree_literal(a: &FockOperator, b: &FockOperator, max_degree: u32) -> Result<std::result::Result<(), Mismatch>> {
    a.check_shape(b)?;
    for mono in monomials_up_to(a.shape.num_vars(), max_degree) {
        for w in all_words(&a.shape) {
            let diff = a.apply_basis(&mono, w).sub(&b.apply_basis(&mono, w))?;
            if !diff.is_zero() {
                return Ok(Err(Mismatch { input: (mono, w), difference: diff }));
            }
        }
    }
    Ok(Ok(()))
}

/// The scalar `c` with `A = c·B` on the truncated basis, if there is one.
/// Returns `None` when `B` vanishes there or the operators are not
/// proportional.
pub fn proportionality_constant(a: &FockOperator, b: &FockOperator, max_degree: u32) -> Result<Option<Cyclotomic>> {
    a.check_shape(b)?;
    let monos = monomials_up_to(b.shape.num_vars(), max_degree);
    let ga = a.clifford_groups();
    let gb = b.clifford_groups();
    let image = |group: Option<&Vec<(&PolyWord, &Cyclotomic)>>, mono: &PolyMonomial| {
        let mut acc: BTreeMap<PolyMonomial, Cyclotomic> = BTreeMap::new();
        for (p, c) in group.into_iter().flatten() {
            if let Some((k, m)) = p.apply(mono) {
                *acc.entry(m).or_insert_with(Cyclotomic::zero) += &c.scale(&Rational::from_integer(k as i64));
            }
        }
        acc.retain(|_, v| !v.is_zero());
        acc
    };
    for (cl, group) in &gb {
        for mono in &monos {
            let ib = image(Some(group), mono);
            let Some((key, vb)) = ib.iter().next() else { continue };
            let ia = image(ga.get(cl), mono);
            let va = ia.get(key).cloned().unwrap_or_else(Cyclotomic::zero);
            let c = &va * &vb.inverse()?;
            return Ok(operators_agree(a, &b.scale(&c), max_degree)?.is_ok().then_some(c));
        }
    }
    Ok(None)
}

/// Recovers `c` with `⟨X u, v⟩ = c · ⟨u, Y v⟩` for all basis vectors `u, v` of
/// polynomial degree `≤ max_degree`, or reports the first pair that breaks
/// it. `Ok(None)` means both sides vanish identically.
pub fn pairing_constant(
    x: &FockOperator,
    y: &FockOperator,
    max_degree: u32,
) -> Result<std::result::Result<Option<Cyclotomic>, (BasisKey, BasisKey)>> {
    x.check_shape(y)?;
    let shape = x.shape;
    let monos = monomials_up_to(shape.num_vars(), max_degree);
    let basis: Vec<BasisKey> = monos.iter().flat_map(|m| all_words(&shape).map(move |w| (m.clone(), w))).collect();
    let index: std::collections::HashMap<&BasisKey, usize> = basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
    // ⟨X u, v⟩ for all (u, v), from the columns X u.
    let mut left: BTreeMap<(usize, usize), Cyclotomic> = BTreeMap::new();
    // ⟨u, Y v⟩ = conj(⟨Y v, u⟩).
    let mut right: BTreeMap<(usize, usize), Cyclotomic> = BTreeMap::new();
    for (j, (m, w)) in basis.iter().enumerate() {
        let collect = |img: FockVector, into: &mut BTreeMap<(usize, usize), Cyclotomic>, as_left: bool| {
            for (mi, wi, c) in img.terms() {
                if mi.degree() > max_degree {
                    continue;
                }
                let i = index[&(mi.clone(), wi)];
                let weight = Rational::from_big(mi.factorial_weight().into());
                let value = c.scale(&weight);
                if as_left {
                    into.insert((j, i), value);
                } else {
                    into.insert((i, j), value.conj());
                }
            }
        };
        collect(x.apply_basis(m, *w), &mut left, true);
        collect(y.apply_basis(m, *w), &mut right, false);
    }
    let constant = match (left.iter().next(), right.iter().next()) {
        (None, None) => return Ok(Ok(None)),
        (Some((k, v)), _) => match right.get(k) {
            Some(r) => v * &r.inverse()?,
            None => return Ok(Err((basis[k.0].clone(), basis[k.1].clone()))),
        },
        (None, Some((k, _))) => return Ok(Err((basis[k.0].clone(), basis[k.1].clone()))),
    };
    let keys: std::collections::BTreeSet<&(usize, usize)> = left.keys().chain(right.keys()).collect();
    for k in keys {
        let l = left.get(k).cloned().unwrap_or_else(Cyclotomic::zero);
        let r = right.get(k).cloned().unwrap_or_else(Cyclotomic::zero);
        if l != &r * &constant {
            return Ok(Err((basis[k.0].clone(), basis[k.1].clone())));
        }
    }
    Ok(Ok(Some(constant)))
}

/// Which line of the negative-root table an operator comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum TableCase {
    I,
    II,
    III,
    IV,
    V,
    VI,
}

/// Classifies a negative root into its table line, with the 1-based indices
/// and the sign `±` where relevant.
fn table_case(alpha: &Root) -> Option<(TableCase, usize, usize, i64)> {
    let nz_e: Vec<(usize, i32)> = alpha.e.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect();
    let nz_f: Vec<(usize, i32)> = alpha.f.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i + 1, c)).collect();
    match (nz_e.as_slice(), nz_f.as_slice()) {
        // −(e_s ± f_t): the f-coordinate is ∓1.
        ([(s, -1)], [(t, f)]) if f.abs() == 1 => Some((TableCase::I, *s, *t, -*f as i64)),
        ([(s, -1), (t, 1)], []) => Some((TableCase::II, *s, *t, 0)),
        ([(s, -2)], []) => Some((TableCase::III, *s, *s, 0)),
        ([(s, -1), (t, -1)], []) => Some((TableCase::III, *s, *t, 0)),
        ([], [(s, -1), (t, f)]) if f.abs() == 1 => Some((TableCase::IV, *s, *t, -*f as i64)),
        ([(s, -1)], []) => Some((TableCase::V, *s, 0, 0)),
        ([], [(s, -1)]) => Some((TableCase::VI, *s, 0, 0)),
        _ => None,
    }
}

/// `1 ± α_{t,k}`.
fn one_plus_alpha(shape: FockShape, t: usize, k: usize, sign: i64) -> Result<FockOperator> {
    let a = FockOperator::atom(shape, &OperatorAtom::Alpha { t, k })?;
    FockOperator::identity(shape).add(&a.scale(&Cyclotomic::from_integer(sign)))
}

/// The table operator attached to a negative root (unnormalized).
pub fn negative_root_operator(alpha: &Root, shape: FockShape) -> Result<(TableCase, FockOperator)> {
    let dim = shape.dim;
    if alpha.e.len() != dim.m || alpha.f.len() != dim.n {
        return Err(Error::DimensionMismatch {
            expected: format!("a root of {dim}"),
            found: alpha.to_string(),
        });
    }
    if alpha.is_positive() {
        return Err(Error::NotARoot(format!("{alpha} is not negative")));
    }
    let (case, s, t, sign) = table_case(alpha).ok_or_else(|| Error::NotARoot(alpha.to_string()))?;
    if matches!(case, TableCase::V | TableCase::VI) && !dim.odd {
        return Err(Error::RequiresOddN(format!("{alpha} is a root only for odd N")));
    }
    let mut total = FockOperator::zero(shape);
    for k in 1..=shape.l {
        use OperatorAtom::*;
        let term = match case {
            TableCase::I => FockOperator::from_atoms(shape, &[DelZ { s, k }, CliffMul(CliffordGenerator::R { t, k })])?
                .compose(&one_plus_alpha(shape, t, k, sign)?)?,
            TableCase::II => FockOperator::from_atoms(shape, &[MulZ { s: t, k }, DelZ { s, k }])?,
            TableCase::III => FockOperator::from_atoms(shape, &[DelZ { s, k }, DelZ { s: t, k }])?,
            TableCase::IV => FockOperator::from_atoms(
                shape,
                &[CliffMul(CliffordGenerator::R { t: s, k }), CliffMul(CliffordGenerator::R { t, k })],
            )?
            .compose(&one_plus_alpha(shape, s, k, 1)?)?
            .compose(&one_plus_alpha(shape, t, k, sign)?)?,
            TableCase::V => FockOperator::from_atoms(shape, &[DelZ { s, k }, CliffMul(CliffordGenerator::C { k })])?,
            TableCase::VI => {
                FockOperator::from_atoms(shape, &[CliffMul(CliffordGenerator::R { t: s, k }), CliffMul(CliffordGenerator::C { k })])?
                    .compose(&one_plus_alpha(shape, s, k, 1)?)?
            }
        };
        total = total.add(&term)?;
    }
    Ok((case, total))
}

/// `ρ̃(A_i) = i Σ_k (z_{i,k} ∂/∂z_{i,k} + ½)`.
pub fn weight_operator_sp(i: usize, shape: FockShape) -> Result<FockOperator> {
    let mut op = FockOperator::zero(shape);
    for k in 1..=shape.l {
        op = op.add(&FockOperator::from_atoms(shape, &[OperatorAtom::MulZ { s: i, k }, OperatorAtom::DelZ { s: i, k }])?)?;
    }
    let half = Cyclotomic::from_rational(Rational::new(shape.l as i64, 2));
    op = op.add(&FockOperator::scalar(shape, half))?;
    Ok(op.scale(&Cyclotomic::i()))
}

/// `ρ̃(B_j) = (i/2) Σ_k α_{j,k}`.
pub fn weight_operator_so(j: usize, shape: FockShape) -> Result<FockOperator> {
    let mut op = FockOperator::zero(shape);
    for k in 1..=shape.l {
        op = op.add(&FockOperator::atom(shape, &OperatorAtom::Alpha { t: j, k })?)?;
    }
    Ok(op.scale(&Cyclotomic::i().scale(&Rational::new(1, 2))))
}

/// The eigenvalue of `op` on `v`, if `v` is an eigenvector.
pub fn eigenvalue(op: &FockOperator, v: &FockVector) -> Result<Option<Cyclotomic>> {
    let image = op.apply(v)?;
    if image.is_zero() {
        return Ok(Some(Cyclotomic::zero()));
    }
    Ok(image.ratio_to(v))
}

/// The weight `(λ/μ)` of a simultaneous eigenvector of all `ρ̃(A_i)`,
/// `ρ̃(B_j)`, with `λ_i = eigenvalue / i`.
pub fn weight_of_vector(v: &FockVector) -> Result<Weight> {
    if v.is_zero() {
        return Err(Error::Precondition("the zero vector has no weight".into()));
    }
    let shape = v.shape();
    let minus_i = -&Cyclotomic::i();
    let coordinate = |op: FockOperator, name: String| -> Result<Rational> {
        let ev = eigenvalue(&op, v)?.ok_or_else(|| Error::NotEigenvector { operator: name.clone() })?;
        (&ev * &minus_i).to_rational().ok_or(Error::NotEigenvector { operator: name })
    };
    let lambda = (1..=shape.dim.m)
        .map(|i| coordinate(weight_operator_sp(i, shape)?, format!("A_{i}")))
        .collect::<Result<Vec<_>>>()?;
    let mu = (1..=shape.dim.n)
        .map(|j| coordinate(weight_operator_so(j, shape)?, format!("B_{j}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Weight::new(lambda, mu))
}

impl fmt::Display for FockOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((p, c), a) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({a})")?;
            if !p.0.is_empty() {
                write!(f, " {}", p.render(&self.shape))?;
            }
            if *c != CliffOp::IDENTITY {
                write!(f, " {}", c.render(&self.shape))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::osp_matrix::{negative_roots, SuperDim};
    use proptest::prelude::*;
    use CliffordGenerator::{C, R};
    use OperatorAtom::*;

    fn shape(m: usize, n: usize, odd: bool, l: usize) -> FockShape {
        FockShape::new(SuperDim::new(m, n, odd), l).unwrap()
    }

    fn op(sh: FockShape, atoms: &[OperatorAtom]) -> FockOperator {
        FockOperator::from_atoms(sh, atoms).unwrap()
    }

    fn z(sh: &FockShape, exps: &[((usize, usize), u32)]) -> PolyMonomial {
        PolyMonomial::from_exponents(exps.iter().map(|&((s, k), e)| (sh.var(s, k).unwrap(), e)))
    }

    #[test]
    fn atom_actions() {
        let sh = shape(1, 1, false, 1);
        let v = FockVector::basis(sh, z(&sh, &[((1, 1), 2)]), CliffordWord::EMPTY);
        let dv = op(sh, &[DelZ { s: 1, k: 1 }]).apply(&v).unwrap();
        assert_eq!(dv, FockVector::basis(sh, z(&sh, &[((1, 1), 1)]), CliffordWord::EMPTY).scale(&Cyclotomic::from_integer(2)));
        let r = FockVector::basis(sh, PolyMonomial::one(), CliffordWord::single(0));
        assert_eq!(op(sh, &[Alpha { t: 1, k: 1 }]).apply(&r).unwrap(), r.neg());
        assert!(FockOperator::atom(sh, &DelZ { s: 2, k: 1 }).is_err());
        assert!(FockOperator::atom(sh, &CliffMul(C { k: 1 })).is_err());
    }

    #[test]
    fn table_operator_on_linear_vector() {
        let sh = shape(1, 1, false, 1);
        let alpha = Root { e: vec![-1], f: vec![-1], class: crate::RootClass::Odd };
        let (case, x) = negative_root_operator(&alpha, sh).unwrap();
        assert_eq!(case, TableCase::I);
        let v = FockVector::basis(sh, z(&sh, &[((1, 1), 1)]), CliffordWord::EMPTY);
        let expected = FockVector::basis(sh, PolyMonomial::one(), CliffordWord::single(0)).scale(&Cyclotomic::from_integer(2));
        assert_eq!(x.apply(&v).unwrap(), expected);
    }

    #[test]
    fn table_lines_render_as_displayed() {
        let sh = shape(2, 1, true, 2);
        let alpha = Root { e: vec![-1, 1], f: vec![0], class: crate::RootClass::Compact };
        let (case, x) = negative_root_operator(&alpha, sh).unwrap();
        assert_eq!(case, TableCase::II);
        let expected = op(sh, &[MulZ { s: 2, k: 1 }, DelZ { s: 1, k: 1 }]).add(&op(sh, &[MulZ { s: 2, k: 2 }, DelZ { s: 1, k: 2 }])).unwrap();
        assert_eq!(x, expected);
        let alpha = Root { e: vec![-2, 0], f: vec![0], class: crate::RootClass::Noncompact };
        let (case, x) = negative_root_operator(&alpha, sh).unwrap();
        assert_eq!(case, TableCase::III);
        let expected = op(sh, &[DelZ { s: 1, k: 1 }, DelZ { s: 1, k: 1 }]).add(&op(sh, &[DelZ { s: 1, k: 2 }, DelZ { s: 1, k: 2 }])).unwrap();
        assert_eq!(x, expected);
        let alpha = Root { e: vec![0, 0], f: vec![-1], class: crate::RootClass::Compact };
        let (case, x) = negative_root_operator(&alpha, sh).unwrap();
        assert_eq!(case, TableCase::VI);
        let mut expected = FockOperator::zero(sh);
        for k in 1..=2 {
            let t = op(sh, &[CliffMul(R { t: 1, k }), CliffMul(C { k })]).compose(&one_plus_alpha(sh, 1, k, 1).unwrap()).unwrap();
            expected = expected.add(&t).unwrap();
        }
        assert_eq!(x, expected);
    }

    #[test]
    fn table_rejects_bad_roots() {
        let sh = shape(1, 1, false, 1);
        let pos = Root { e: vec![1], f: vec![1], class: crate::RootClass::Odd };
        assert!(negative_root_operator(&pos, sh).is_err());
        let minus_e = Root { e: vec![-1], f: vec![0], class: crate::RootClass::Odd };
        assert!(matches!(negative_root_operator(&minus_e, sh), Err(Error::RequiresOddN(_))));
        let minus_3e = Root { e: vec![-3], f: vec![0], class: crate::RootClass::Odd };
        assert!(negative_root_operator(&minus_3e, sh).is_err());
    }

    #[test]
    fn weight_operators_on_small_vectors() {
        let sh = shape(1, 1, false, 2);
        let vac = FockVector::vacuum(sh);
        let a1 = weight_operator_sp(1, sh).unwrap();
        assert_eq!(a1.apply(&vac).unwrap(), vac.scale(&Cyclotomic::i()));
        let rr = FockVector::basis(sh, PolyMonomial::one(), CliffordWord(0b11));
        let b1 = weight_operator_so(1, sh).unwrap();
        assert_eq!(b1.apply(&rr).unwrap(), rr.scale(&-&Cyclotomic::i()));
        assert_eq!(weight_of_vector(&rr).unwrap(), Weight::from_integers(&[1], &[-1]));
    }

    #[test]
    fn non_eigenvector_is_named() {
        let sh = shape(1, 1, false, 2);
        let mixed = FockVector::vacuum(sh).add(&FockVector::basis(sh, PolyMonomial::one(), CliffordWord(0b01))).unwrap();
        assert!(matches!(weight_of_vector(&mixed), Err(Error::NotEigenvector { operator }) if operator == "B_1"));
        let mixed = FockVector::vacuum(sh).add(&FockVector::basis(sh, z(&sh, &[((1, 2), 1)]), CliffordWord::EMPTY)).unwrap();
        assert!(matches!(weight_of_vector(&mixed), Err(Error::NotEigenvector { operator }) if operator == "A_1"));
        assert!(weight_of_vector(&FockVector::zero(sh)).is_err());
    }

    #[test]
    fn weyl_relation_and_alpha_anticommutation() {
        let sh = shape(2, 1, true, 2);
        for s in 1..=2 {
            for k in 1..=2 {
                let d = op(sh, &[DelZ { s, k }]);
                let z = op(sh, &[MulZ { s, k }]);
                let comm = super_commutator(&d, &z).unwrap();
                assert!(operators_agree(&comm, &FockOperator::identity(sh), 4).unwrap().is_ok());
                assert!(operators_agree_literal(&comm, &FockOperator::identity(sh), 3).unwrap().is_ok());
            }
        }
        for k in 1..=2 {
            let a = op(sh, &[Alpha { t: 1, k }]);
            let r = op(sh, &[CliffMul(R { t: 1, k })]);
            let anti = a.compose(&r).unwrap().add(&r.compose(&a).unwrap()).unwrap();
            assert!(anti.is_zero());
            let c = op(sh, &[CliffMul(C { k })]);
            assert_eq!(a.compose(&c).unwrap(), c.compose(&a).unwrap());
        }
    }

    #[test]
    fn factorized_and_literal_checks_agree() {
        let sh = shape(1, 1, true, 2);
        let ops = [
            op(sh, &[DelZ { s: 1, k: 1 }, MulZ { s: 1, k: 1 }]),
            op(sh, &[MulZ { s: 1, k: 1 }, DelZ { s: 1, k: 1 }]),
            op(sh, &[CliffMul(R { t: 1, k: 2 }), Alpha { t: 1, k: 2 }, CliffMul(C { k: 1 })]),
            op(sh, &[CliffMul(C { k: 1 }), CliffMul(R { t: 1, k: 2 })]),
            op(sh, &[DelZ { s: 1, k: 2 }, DelZ { s: 1, k: 2 }, MulZ { s: 1, k: 2 }]),
            FockOperator::identity(sh).scale(&Cyclotomic::from_integer(2)),
        ];
        for a in &ops {
            for b in &ops {
                for deg in 0..=3 {
                    let f = operators_agree(a, b, deg).unwrap().is_ok();
                    let l = operators_agree_literal(a, b, deg).unwrap().is_ok();
                    assert_eq!(f, l, "{a} vs {b} at degree {deg}");
                }
            }
        }
        // ∂² z² − z² ∂² = 4z∂ + 2 on all degrees; degree 0 cannot see z∂.
        let lhs = super_commutator(
            &op(sh, &[DelZ { s: 1, k: 1 }, DelZ { s: 1, k: 1 }]),
            &op(sh, &[MulZ { s: 1, k: 1 }, MulZ { s: 1, k: 1 }]),
        )
        .unwrap();
        let rhs = op(sh, &[MulZ { s: 1, k: 1 }, DelZ { s: 1, k: 1 }])
            .scale(&Cyclotomic::from_integer(4))
            .add(&FockOperator::scalar(sh, Cyclotomic::from_integer(2)))
            .unwrap();
        assert!(operators_agree(&lhs, &rhs, 4).unwrap().is_ok());
        let wrong = FockOperator::scalar(sh, Cyclotomic::from_integer(2));
        assert!(operators_agree(&lhs, &wrong, 0).unwrap().is_ok());
        let err = operators_agree(&lhs, &wrong, 1).unwrap().unwrap_err();
        assert_eq!(err.input.0.degree(), 1);
        assert!(operators_agree_literal(&lhs, &wrong, 1).unwrap().is_err());
    }

    #[test]
    fn odd_square_of_line_v() {
        // X² = Σ ∂_k ∂_k' c_k c_k'; the off-diagonal terms cancel and c_k² = 1.
        let sh = shape(1, 0, true, 2);
        let alpha = Root { e: vec![-1], f: vec![], class: crate::RootClass::Odd };
        let (_, x) = negative_root_operator(&alpha, sh).unwrap();
        let sq = super_commutator(&x, &x).unwrap();
        let (_, iii) = negative_root_operator(&Root { e: vec![-2], f: vec![], class: crate::RootClass::Noncompact }, sh).unwrap();
        assert_eq!(proportionality_constant(&sq, &iii, 4).unwrap(), Some(Cyclotomic::from_integer(2)));
    }

    #[test]
    fn weight_shift_of_table_operators() {
        let sh = shape(1, 1, true, 2);
        let a1 = weight_operator_sp(1, sh).unwrap();
        for alpha in negative_roots(sh.dim) {
            let (_, x) = negative_root_operator(&alpha, sh).unwrap();
            let comm = super_commutator(&a1, &x).unwrap();
            let expected = x.scale(&(&Cyclotomic::i() * &Cyclotomic::from_integer(alpha.e[0] as i64)));
            assert!(operators_agree(&comm, &expected, 4).unwrap().is_ok(), "{alpha}");
        }
    }

    #[test]
    fn proportionality_detects_scale_and_failure() {
        let sh = shape(1, 1, false, 2);
        let x = op(sh, &[DelZ { s: 1, k: 1 }, CliffMul(R { t: 1, k: 2 })]);
        let c = Cyclotomic::zeta_pow(3);
        assert_eq!(proportionality_constant(&x.scale(&c), &x, 3).unwrap(), Some(c));
        let y = op(sh, &[DelZ { s: 1, k: 2 }]);
        assert_eq!(proportionality_constant(&x, &y, 3).unwrap(), None);
        assert_eq!(proportionality_constant(&x, &FockOperator::zero(sh), 3).unwrap(), None);
    }

    #[test]
    fn atoms_have_expected_adjoints() {
        let sh = shape(1, 1, true, 2);
        let pairs = [
            (MulZ { s: 1, k: 1 }, DelZ { s: 1, k: 1 }),
            (DelZ { s: 1, k: 2 }, MulZ { s: 1, k: 2 }),
            (CliffMul(R { t: 1, k: 1 }), CliffMul(R { t: 1, k: 1 })),
            (CliffMul(C { k: 2 }), CliffMul(C { k: 2 })),
            (Alpha { t: 1, k: 2 }, Alpha { t: 1, k: 2 }),
        ];
        for (a, at) in pairs {
            let x = op(sh, &[a]);
            let xt = op(sh, &[at]);
            assert_eq!(x.adjoint(), xt);
            assert_eq!(pairing_constant(&x, &xt, 3).unwrap().unwrap(), Some(Cyclotomic::one()));
        }
    }

    fn arb_atom() -> impl Strategy<Value = OperatorAtom> {
        prop_oneof![
            (1usize..=2).prop_map(|k| MulZ { s: 1, k }),
            (1usize..=2).prop_map(|k| DelZ { s: 1, k }),
            (1usize..=2).prop_map(|k| CliffMul(R { t: 1, k })),
            (1usize..=2).prop_map(|k| CliffMul(C { k })),
            (1usize..=2).prop_map(|k| Alpha { t: 1, k }),
            (0i64..8).prop_map(|p| Scalar(Cyclotomic::zeta_pow(p))),
        ]
    }

    fn arb_op() -> impl Strategy<Value = FockOperator> {
        prop::collection::vec(prop::collection::vec(arb_atom(), 0..4), 1..3).prop_map(|words| {
            let sh = shape(1, 1, true, 2);
            words.iter().fold(FockOperator::zero(sh), |acc, w| acc.add(&op(sh, w)).unwrap())
        })
    }

    fn arb_vector() -> impl Strategy<Value = FockVector> {
        prop::collection::vec((0u32..3, 0u32..3, 0u32..16, -2i64..3), 1..4).prop_map(|ts| {
            let sh = shape(1, 1, true, 2);
            let mut v = FockVector::zero(sh);
            for (a, b, w, c) in ts {
                v.add_term(PolyMonomial::from_exponents([(0, a), (1, b)]), CliffordWord(w), &Cyclotomic::from_integer(c));
            }
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_matches_sequential_application(a in arb_op(), b in arb_op(), v in arb_vector()) {
            let lhs = a.compose(&b).unwrap().apply(&v).unwrap();
            let rhs = a.apply(&b.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn adjoint_pairs_with_inner_product(a in arb_op(), u in arb_vector(), v in arb_vector()) {
            let lhs = a.apply(&u).unwrap().inner_product(&v).unwrap();
            let rhs = u.inner_product(&a.adjoint().apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn declared_parity_matches_action(a in arb_op(), v in arb_vector()) {
            if let (Some(pa), Some(pv)) = (a.parity(), v.parity()) {
                let image = a.apply(&v).unwrap();
                if !image.is_zero() {
                    prop_assert_eq!(image.parity(), Some(pa + pv));
                }
            }
        }
    }
}
