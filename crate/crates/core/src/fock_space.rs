//! The Fock space `F^L = ℂ[z_{s,k}] ⊗ C^ℂ(r_{t,k}, c_k)`.
//!
//! Polynomial variables `z_{s,k}` (1 ≤ s ≤ m, 1 ≤ k ≤ L) are numbered
//! `(s−1)L + (k−1)`. Clifford generators are numbered in the canonical order
//! `r_{1,1} < … < r_{1,L} < r_{2,1} < … < r_{n,L} < c_1 < … < c_L`, and a
//! normal-ordered Clifford word is the bitmask of the generators it contains.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::cyclo::Cyclotomic;
use crate::osp_matrix::{Parity, SuperDim};
use crate::rational::Rational;
use crate::{Error, Result};

/// Upper bound on the number of Clifford generators, so that the `2^K`
/// dimension of the Clifford module stays manageable.
pub const MAX_CLIFFORD_GENERATORS: usize = 24;

/// The pair `(dim, L)` that determines `F^L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FockShape {
    pub dim: SuperDim,
    pub l: usize,
}

impl FockShape {
    pub fn new(dim: SuperDim, l: usize) -> Result<Self> {
        if l == 0 {
            return Err(Error::InvalidParams("L must be positive".into()));
        }
        let generators = (dim.n + dim.odd as usize) * l;
        if generators > MAX_CLIFFORD_GENERATORS {
            return Err(Error::CliffordTooLarge { generators, limit: MAX_CLIFFORD_GENERATORS });
        }
        if dim.m * l > u16::MAX as usize {
            return Err(Error::InvalidParams(format!("{} polynomial variables", dim.m * l)));
        }
        Ok(FockShape { dim, l })
    }

    pub fn num_vars(&self) -> usize {
        self.dim.m * self.l
    }

    pub fn num_clifford(&self) -> usize {
        (self.dim.n + self.dim.odd as usize) * self.l
    }

    /// Bits of all `r` generators (the ones the `α` automorphisms can flip).
    pub fn r_mask(&self) -> u32 {
        low_bits(self.dim.n * self.l)
    }

    /// Variable index of `z_{s,k}` (1-based indices).
    pub fn var(&self, s: usize, k: usize) -> Result<u16> {
        if s == 0 || s > self.dim.m || k == 0 || k > self.l {
            return Err(Error::IndexOutOfRange(format!("z[{s},{k}] with m={}, L={}", self.dim.m, self.l)));
        }
        Ok(((s - 1) * self.l + (k - 1)) as u16)
    }

    /// `(s, k)` of a variable index.
    pub fn var_name(&self, v: u16) -> (usize, usize) {
        let v = v as usize;
        (v / self.l + 1, v % self.l + 1)
    }

    pub fn bit(&self, g: CliffordGenerator) -> Result<u32> {
        let (n, l) = (self.dim.n, self.l);
        match g {
            CliffordGenerator::R { t, k } if (1..=n).contains(&t) && (1..=l).contains(&k) => {
                Ok(((t - 1) * l + (k - 1)) as u32)
            }
            CliffordGenerator::C { k } if self.dim.odd && (1..=l).contains(&k) => Ok((n * l + (k - 1)) as u32),
            CliffordGenerator::C { .. } if !self.dim.odd => {
                Err(Error::RequiresOddN(format!("{g} does not exist for even N")))
            }
            _ => Err(Error::IndexOutOfRange(format!("{g} with n={n}, L={l}"))),
        }
    }

    pub fn generator(&self, bit: u32) -> CliffordGenerator {
        let (n, l) = (self.dim.n, self.l);
        let b = bit as usize;
        if b < n * l {
            CliffordGenerator::R { t: b / l + 1, k: b % l + 1 }
        } else {
            CliffordGenerator::C { k: b - n * l + 1 }
        }
    }

    pub fn word(&self, generators: &[CliffordGenerator]) -> Result<(i64, CliffordWord)> {
        clifford_normalize(self, generators)
    }
}

fn low_bits(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// A Clifford generator `r_{t,k}` or `c_k` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CliffordGenerator {
    R { t: usize, k: usize },
    C { k: usize },
}

impl fmt::Display for CliffordGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliffordGenerator::R { t, k } => write!(f, "r[{t},{k}]"),
            CliffordGenerator::C { k } => write!(f, "c[{k}]"),
        }
    }
}

/// A normal-ordered Clifford monomial, stored as the set of its generators.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordWord(pub u32);

impl CliffordWord {
    pub const EMPTY: CliffordWord = CliffordWord(0);

    pub fn single(bit: u32) -> Self {
        CliffordWord(1 << bit)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, bit: u32) -> bool {
        self.0 >> bit & 1 == 1
    }

    pub fn parity(self) -> Parity {
        Parity::from_odd(self.len() % 2 == 1)
    }

    /// Product of normal-ordered words: `self · other = sign · word`.
    ///
    /// Moving each generator of `other` left past the larger generators of
    /// `self` costs one sign each; repeated generators then square to 1.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: CliffordWord) -> (i64, CliffordWord) {
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let b = rest.trailing_zeros();
            swaps += (self.0 >> b >> 1).count_ones();
            rest &= rest - 1;
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        (sign, CliffordWord(self.0 ^ other.0))
    }

    pub fn generators(self) -> impl Iterator<Item = u32> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            (rest != 0).then(|| {
                let b = rest.trailing_zeros();
                rest &= rest - 1;
                b
            })
        })
    }

    pub fn render(self, shape: &FockShape) -> String {
        if self.is_empty() {
            return "1".into();
        }
        self.generators().map(|b| shape.generator(b).to_string()).collect::<Vec<_>>().join("*")
    }
}

/// Normal-orders a product of generators, returning the accumulated sign.
pub fn clifford_normalize(shape: &FockShape, generators: &[CliffordGenerator]) -> Result<(i64, CliffordWord)> {
    let mut sign = 1;
    let mut word = CliffordWord::EMPTY;
    for &g in generators {
        let (s, w) = word.mul(CliffordWord::single(shape.bit(g)?));
        sign *= s;
        word = w;
    }
    Ok((sign, word))
}

/// A monomial `∏ z_v^{a_v}` as sorted `(variable, exponent)` pairs with
/// positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyMonomial(Vec<(u16, u32)>);

impl PolyMonomial {
    pub fn one() -> Self {
        PolyMonomial(Vec::new())
    }

    pub fn var(v: u16) -> Self {
        PolyMonomial(vec![(v, 1)])
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (u16, u32)>) -> Self {
        let mut m = PolyMonomial::one();
        for (v, e) in exps {
            for _ in 0..e {
                m.mul_var(v);
            }
        }
        m
    }

    pub fn exponents(&self) -> &[(u16, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: u16) -> u32 {
        self.0.binary_search_by_key(&v, |&(w, _)| w).map_or(0, |i| self.0[i].1)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiplies by `z_v` in place.
    pub fn mul_var(&mut self, v: u16) {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.0[i].1 += 1,
            Err(i) => self.0.insert(i, (v, 1)),
        }
    }

    /// Applies `∂/∂z_v` in place, returning the exponent that came down
    /// (0 means the result vanished and `self` is left unchanged).
    pub fn del_var(&mut self, v: u16) -> u32 {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => {
                let e = self.0[i].1;
                if e == 1 {
                    self.0.remove(i);
                } else {
                    self.0[i].1 -= 1;
                }
                e
            }
            Err(_) => 0,
        }
    }

    pub fn mul(&self, other: &PolyMonomial) -> PolyMonomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => {
                    if va < vb {
                        out.push((va, ea));
                        a.next();
                    } else if vb < va {
                        out.push((vb, eb));
                        b.next();
                    } else {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    out.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        PolyMonomial(out)
    }

    /// `A! = ∏ a_v!`.
    pub fn factorial_weight(&self) -> BigInt {
        let mut acc = BigInt::from(1);
        for &(_, e) in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    pub fn render(&self, shape: &FockShape) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|&(v, e)| {
                let (s, k) = shape.var_name(v);
                if e == 1 {
                    format!("z[{s},{k}]")
                } else {
                    format!("z[{s},{k}]^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ")
    }
}

/// All monomials in `num_vars` variables of total degree at most `max_degree`,
/// ordered by degree and then lexicographically.
pub fn monomials_up_to(num_vars: usize, max_degree: u32) -> Vec<PolyMonomial> {
    fn rec(v: usize, num_vars: usize, left: u32, cur: &mut Vec<(u16, u32)>, out: &mut Vec<PolyMonomial>) {
        if v == num_vars {
            out.push(PolyMonomial(cur.clone()));
            return;
        }
        rec(v + 1, num_vars, left, cur, out);
        for e in 1..=left {
            cur.push((v as u16, e));
            rec(v + 1, num_vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, num_vars, max_degree, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// All normal-ordered Clifford words of the shape.
pub fn all_words(shape: &FockShape) -> impl Iterator<Item = CliffordWord> {
    (0..=low_bits(shape.num_clifford())).map(CliffordWord)
}

/// A basis element `z^A ⊗ w`.
pub type BasisKey = (PolyMonomial, CliffordWord);

/// A finite sparse vector of `F^L` with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockVector {
    shape: FockShape,
    terms: BTreeMap<BasisKey, Cyclotomic>,
}

impl FockVector {
    pub fn zero(shape: FockShape) -> Self {
        FockVector { shape, terms: BTreeMap::new() }
    }

    pub fn basis(shape: FockShape, mono: PolyMonomial, word: CliffordWord) -> Self {
        let mut v = FockVector::zero(shape);
        v.add_term(mono, word, &Cyclotomic::one());
        v
    }

    /// `1 ⊗ ∅`.
    pub fn vacuum(shape: FockShape) -> Self {
        FockVector::basis(shape, PolyMonomial::one(), CliffordWord::EMPTY)
    }

    pub fn shape(&self) -> FockShape {
        self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PolyMonomial, CliffordWord, &Cyclotomic)> {
        self.terms.iter().map(|((m, w), c)| (m, *w, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &PolyMonomial, word: CliffordWord) -> Cyclotomic {
        self.terms.get(&(mono.clone(), word)).cloned().unwrap_or_else(Cyclotomic::zero)
    }

    /// Adds `c · (mono ⊗ word)`, dropping the entry if it cancels.
    pub fn add_term(&mut self, mono: PolyMonomial, word: CliffordWord, c: &Cyclotomic) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((mono, word)) {
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

    fn check_shape(&self, other: &FockVector) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch {
                expected: format!("{} with L={}", self.shape.dim, self.shape.l),
                found: format!("{} with L={}", other.shape.dim, other.shape.l),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FockVector) -> Result<FockVector> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for ((m, w), c) in &other.terms {
            out.add_term(m.clone(), *w, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FockVector) -> Result<FockVector> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FockVector {
        self.scale(&Cyclotomic::from_integer(-1))
    }

    pub fn scale(&self, a: &Cyclotomic) -> FockVector {
        if a.is_zero() {
            return FockVector::zero(self.shape);
        }
        let terms = self.terms.iter().map(|(k, c)| (k.clone(), c * a)).collect();
        FockVector { shape: self.shape, terms }
    }

    /// The algebra product: monomials multiply, Clifford words
    /// concatenate and are normal-ordered.
    pub fn mul(&self, other: &FockVector) -> Result<FockVector> {
        self.check_shape(other)?;
        let mut out = FockVector::zero(self.shape);
        for ((m1, w1), c1) in &self.terms {
            for ((m2, w2), c2) in &other.terms {
                let (sign, w) = w1.mul(*w2);
                let c = c1 * c2;
                out.add_term(m1.mul(m2), w, &if sign < 0 { -c } else { c });
            }
        }
        Ok(out)
    }

    /// `⟨u, v⟩` with `⟨z^A⊗w, z^B⊗w′⟩ = δ_{A,B} A! δ_{w,w′}`, conjugate-linear in
    /// the second argument.
    pub fn inner_product(&self, other: &FockVector) -> Result<Cyclotomic> {
        self.check_shape(other)?;
        let (small, large, swap) = if self.terms.len() <= other.terms.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Cyclotomic::zero();
        for (key, c) in &small.terms {
            if let Some(d) = large.terms.get(key) {
                let w = Rational::from_big(key.0.factorial_weight().into());
                let prod = if swap { d * &c.conj() } else { c * &d.conj() };
                acc += &prod.scale(&w);
            }
        }
        Ok(acc)
    }

    /// `Some(p)` if every term has Clifford parity `p`; the zero vector is even.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|(_, w)| w.parity());
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Whether `self = c · other` for some scalar `c`, and which.
    pub fn ratio_to(&self, other: &FockVector) -> Option<Cyclotomic> {
        if self.shape != other.shape || self.terms.len() != other.terms.len() {
            return None;
        }
        let (key, d) = other.terms.iter().next()?;
        let c = self.terms.get(key)? * &d.inverse().ok()?;
        (other.scale(&c) == *self).then_some(c)
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for ((m, w), c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if !m.is_one() {
                write!(f, " * {}", m.render(&self.shape))?;
            }
            if !w.is_empty() {
                write!(f, " * {}", w.render(&self.shape))?;
            }
        }
        Ok(())
    }
}

impl Serialize for FockVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term {
            coeff: String,
            monomial: String,
            word: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|((m, w), c)| Term {
                coeff: c.to_string(),
                monomial: m.render(&self.shape),
                word: w.render(&self.shape),
            })
            .collect();
        let mut st = serializer.serialize_struct("FockVector", 2)?;
        st.serialize_field("L", &self.shape.l)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use CliffordGenerator::{C, R};

    fn shape(m: usize, n: usize, odd: bool, l: usize) -> FockShape {
        FockShape::new(SuperDim::new(m, n, odd), l).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let sh = shape(1, 2, true, 2);
        let (s, w) = clifford_normalize(&sh, &[R { t: 2, k: 1 }, R { t: 1, k: 1 }]).unwrap();
        assert_eq!((s, w.render(&sh)), (-1, "r[1,1]*r[2,1]".to_string()));
        let (s, w) = clifford_normalize(&sh, &[R { t: 1, k: 1 }, R { t: 1, k: 1 }]).unwrap();
        assert_eq!((s, w), (1, CliffordWord::EMPTY));
        let (s, w) = clifford_normalize(&sh, &[C { k: 1 }, R { t: 1, k: 1 }, C { k: 1 }]).unwrap();
        assert_eq!((s, w.render(&sh)), (-1, "r[1,1]".to_string()));
        assert!(clifford_normalize(&shape(1, 1, false, 2), &[C { k: 1 }]).is_err());
        assert!(clifford_normalize(&sh, &[R { t: 3, k: 1 }]).is_err());
    }

    #[test]
    fn dimension_guard() {
        assert!(FockShape::new(SuperDim::new(1, 3, false), 8).is_ok());
        assert!(matches!(
            FockShape::new(SuperDim::new(1, 3, true), 7),
            Err(Error::CliffordTooLarge { generators: 28, .. })
        ));
        assert!(FockShape::new(SuperDim::new(1, 1, false), 0).is_err());
    }

    #[test]
    fn vector_products() {
        let sh = shape(1, 1, false, 2);
        let r11 = sh.bit(R { t: 1, k: 1 }).unwrap();
        let r12 = sh.bit(R { t: 1, k: 2 }).unwrap();
        let z11 = sh.var(1, 1).unwrap();
        let a = FockVector::basis(sh, PolyMonomial::one(), CliffordWord::single(r11));
        let b = FockVector::basis(sh, PolyMonomial::one(), CliffordWord::single(r12));
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_string(), "(1) * r[1,1]*r[1,2]");
        let zb = FockVector::basis(sh, PolyMonomial::var(z11), CliffordWord::single(r12));
        let prod = zb.mul(&a).unwrap();
        assert_eq!(prod.to_string(), "(-1) * z[1,1] * r[1,1]*r[1,2]");
        assert!(ab.add(&ab.neg()).unwrap().is_zero());
    }

    #[test]
    fn inner_product_examples() {
        let sh = shape(1, 0, true, 2);
        let vac = FockVector::vacuum(sh);
        assert_eq!(vac.inner_product(&vac).unwrap(), Cyclotomic::one());
        let z2 = FockVector::basis(sh, PolyMonomial::from_exponents([(0, 2)]), CliffordWord::EMPTY);
        assert_eq!(z2.inner_product(&z2).unwrap(), Cyclotomic::from_integer(2));
        let sh = shape(1, 1, true, 1);
        let r = FockVector::basis(sh, PolyMonomial::one(), CliffordWord::single(sh.bit(R { t: 1, k: 1 }).unwrap()));
        let c = FockVector::basis(sh, PolyMonomial::one(), CliffordWord::single(sh.bit(C { k: 1 }).unwrap()));
        assert!(r.inner_product(&c).unwrap().is_zero());
        let i = Cyclotomic::i();
        assert_eq!(r.scale(&i).inner_product(&r).unwrap(), i);
        assert_eq!(r.inner_product(&r.scale(&i)).unwrap(), -&i);
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(v + d, d) monomials.
        assert_eq!(monomials_up_to(2, 4).len(), 15);
        assert_eq!(monomials_up_to(4, 4).len(), 70);
        assert_eq!(monomials_up_to(0, 4).len(), 1);
        let ms = monomials_up_to(3, 3);
        assert!(ms.windows(2).all(|w| w[0].degree() <= w[1].degree()));
        assert_eq!(all_words(&shape(1, 1, true, 2)).count(), 16);
    }

    fn arb_word() -> impl Strategy<Value = CliffordWord> {
        (0u32..1 << 8).prop_map(CliffordWord)
    }

    /// Sign of sorting a sequence of distinct bits, by counting inversions.
    fn inversion_sign(seq: &[u32]) -> i64 {
        let inv = (0..seq.len()).flat_map(|i| (i + 1..seq.len()).map(move |j| (i, j)));
        let count = inv.filter(|&(i, j)| seq[i] > seq[j]).count();
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn arb_vector() -> impl Strategy<Value = FockVector> {
        let sh = shape(1, 2, false, 2);
        prop::collection::vec((0u32..3, 0u32..2, arb_word(), -3i64..4), 0..5).prop_map(move |ts| {
            let mut v = FockVector::zero(sh);
            for (e0, e1, w, c) in ts {
                let m = PolyMonomial::from_exponents([(0, e0), (1, e1)]);
                v.add_term(m, CliffordWord(w.0 & 0xF), &Cyclotomic::from_integer(c));
            }
            v
        })
    }

    proptest! {
        #[test]
        fn word_product_is_associative(a in arb_word(), b in arb_word(), c in arb_word()) {
            let (s1, ab) = a.mul(b);
            let (s2, ab_c) = ab.mul(c);
            let (s3, bc) = b.mul(c);
            let (s4, a_bc) = a.mul(bc);
            prop_assert_eq!(ab_c, a_bc);
            prop_assert_eq!(s1 * s2, s3 * s4);
        }

        #[test]
        fn permutation_sign_is_parity(perm in Just((0u32..6).collect::<Vec<_>>()).prop_shuffle()) {
            let sh = shape(1, 3, false, 2);
            let gens: Vec<_> = perm.iter().map(|&b| sh.generator(b)).collect();
            let (sign, word) = clifford_normalize(&sh, &gens).unwrap();
            prop_assert_eq!(sign, inversion_sign(&perm));
            let again: Vec<_> = word.generators().map(|b| sh.generator(b)).collect();
            prop_assert_eq!(clifford_normalize(&sh, &again).unwrap(), (1, word));
        }

        #[test]
        fn vector_product_is_associative(a in arb_vector(), b in arb_vector(), c in arb_vector()) {
            let lhs = a.mul(&b).unwrap().mul(&c).unwrap();
            let rhs = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inner_product_is_positive(v in arb_vector()) {
            let n = v.inner_product(&v).unwrap();
            if v.is_zero() {
                prop_assert!(n.is_zero());
            } else {
                prop_assert_eq!(n.real_sign(), Some(std::cmp::Ordering::Greater));
            }
        }

        #[test]
        fn inner_product_is_hermitian(u in arb_vector(), v in arb_vector()) {
            prop_assert_eq!(u.inner_product(&v).unwrap(), v.inner_product(&u).unwrap().conj());
        }
    }
}
