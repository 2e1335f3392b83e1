//! The supermatrix model of `osp(M/N; ℂ)`.
//!
//! Coordinates on `V = ℂ^{M|N}` are ordered `(x_1..x_m, y_1..y_m | w_1..w_N)`
//! and the invariant form is `b(v, w) = vᵀ B w` with
//!
//! ```text
//!       [  0    1_m |     ]
//!   B = [ -1_m   0  |     ]
//!       [-----------+-----]
//!       [           | 1_N ]
//! ```
//!
//! The compact Cartan subalgebra consists of `[[0, A], [-A, 0]] ⊕ diag(b_j u)`
//! with `A = diag(a_i)` and `u = [[0, 1], [-1, 0]]`; roots take the values
//! `e_i(h) = i·a_i` and `f_j(h) = i·b_j`.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::cyclo::Cyclotomic;
use crate::linalg::nullspace;
use crate::rational::Rational;
use crate::{Error, Result};

/// ℤ₂-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_odd(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(-1)^{self · other}`.
    pub fn koszul(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_odd(self.is_odd() ^ rhs.is_odd())
    }
}

/// `M = 2m`, `N = 2n` or `2n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SuperDim {
    pub m: usize,
    pub n: usize,
    pub odd: bool,
}

impl SuperDim {
    pub fn new(m: usize, n: usize, odd: bool) -> Self {
        SuperDim { m, n, odd }
    }

    pub fn even_dim(&self) -> usize {
        2 * self.m
    }

    pub fn odd_dim(&self) -> usize {
        2 * self.n + self.odd as usize
    }

    pub fn size(&self) -> usize {
        self.even_dim() + self.odd_dim()
    }

    pub fn index_parity(&self, i: usize) -> Parity {
        Parity::from_odd(i >= self.even_dim())
    }

    /// `m(2m+1) + N(N-1)/2 + 2mN`.
    pub fn osp_dimension(&self) -> usize {
        let (m, big_n) = (self.m, self.odd_dim());
        m * (2 * m + 1) + big_n * big_n.saturating_sub(1) / 2 + 2 * m * big_n
    }
}

impl fmt::Display for SuperDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "osp({}/{})", self.even_dim(), self.odd_dim())
    }
}

/// A square matrix on `ℂ^{M|N}` with entries in ℚ(ζ₈).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperMatrix {
    dim: SuperDim,
    entries: Vec<Cyclotomic>,
}

impl SuperMatrix {
    pub fn zero(dim: SuperDim) -> Self {
        let s = dim.size();
        SuperMatrix { dim, entries: vec![Cyclotomic::zero(); s * s] }
    }

    pub fn from_entries(dim: SuperDim, entries: Vec<Cyclotomic>) -> Result<Self> {
        let s = dim.size();
        if entries.len() != s * s {
            return Err(Error::DimensionMismatch {
                expected: format!("{} entries", s * s),
                found: format!("{} entries", entries.len()),
            });
        }
        Ok(SuperMatrix { dim, entries })
    }

    pub fn dim(&self) -> SuperDim {
        self.dim
    }

    pub fn size(&self) -> usize {
        self.dim.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &Cyclotomic {
        &self.entries[i * self.size() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Cyclotomic) {
        let s = self.size();
        self.entries[i * s + j] = v;
    }

    pub fn entries(&self) -> &[Cyclotomic] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Cyclotomic::is_zero)
    }

    fn filtered(&self, keep: impl Fn(Parity) -> bool) -> SuperMatrix {
        let s = self.size();
        let mut out = SuperMatrix::zero(self.dim);
        for i in 0..s {
            for j in 0..s {
                if keep(self.dim.index_parity(i) + self.dim.index_parity(j)) {
                    out.entries[i * s + j] = self.get(i, j).clone();
                }
            }
        }
        out
    }

    /// Diagonal blocks.
    pub fn even_part(&self) -> SuperMatrix {
        self.filtered(|p| p == Parity::Even)
    }

    /// Off-diagonal blocks.
    pub fn odd_part(&self) -> SuperMatrix {
        self.filtered(|p| p == Parity::Odd)
    }

    /// The degree of a homogeneous matrix (zero counts as even); `None` if
    /// both parts are nonzero.
    pub fn parity(&self) -> Option<Parity> {
        match (self.even_part().is_zero(), self.odd_part().is_zero()) {
            (_, true) => Some(Parity::Even),
            (true, false) => Some(Parity::Odd),
            (false, false) => None,
        }
    }

    fn check_dim(&self, other: &SuperMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim.to_string(),
                found: other.dim.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(SuperMatrix { dim: self.dim, entries })
    }

    pub fn sub(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_dim(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(SuperMatrix { dim: self.dim, entries })
    }

    pub fn scale(&self, c: &Cyclotomic) -> SuperMatrix {
        let entries = self
            .entries
            .iter()
            .map(|a| if a.is_zero() { Cyclotomic::zero() } else { a * c })
            .collect();
        SuperMatrix { dim: self.dim, entries }
    }

    pub fn matmul(&self, other: &SuperMatrix) -> Result<SuperMatrix> {
        self.check_dim(other)?;
        let s = self.size();
        let mut out = SuperMatrix::zero(self.dim);
        for i in 0..s {
            for k in 0..s {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * s + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> SuperMatrix {
        let s = self.size();
        let mut out = SuperMatrix::zero(self.dim);
        for i in 0..s {
            for j in 0..s {
                out.entries[j * s + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let s = self.size();
        (0..s)
            .map(|i| {
                let mut acc = Cyclotomic::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    /// Rows of strings, for reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        let s = self.size();
        (0..s).map(|i| (0..s).map(|j| self.get(i, j).to_string()).collect()).collect()
    }
}

fn unit(dim: SuperDim, entries: &[(usize, usize, i64)]) -> SuperMatrix {
    let mut x = SuperMatrix::zero(dim);
    for &(i, j, v) in entries {
        x.set(i, j, Cyclotomic::from_integer(v));
    }
    x
}

fn bracket_homogeneous(x: &SuperMatrix, px: Parity, y: &SuperMatrix, py: Parity) -> Result<SuperMatrix> {
    let xy = x.matmul(y)?;
    let yx = y.matmul(x)?;
    if px.koszul(py) < 0 {
        xy.add(&yx)
    } else {
        xy.sub(&yx)
    }
}

/// `[X, Y] = XY − (−1)^{deg X · deg Y} YX`, extended bilinearly over the
/// homogeneous parts.
pub fn super_bracket(x: &SuperMatrix, y: &SuperMatrix) -> Result<SuperMatrix> {
    x.check_dim(y)?;
    let parts = |m: &SuperMatrix| [(m.even_part(), Parity::Even), (m.odd_part(), Parity::Odd)];
    let mut out = SuperMatrix::zero(x.dim);
    for (xp, px) in parts(x) {
        if xp.is_zero() {
            continue;
        }
        for (yp, py) in parts(y) {
            if yp.is_zero() {
                continue;
            }
            out = out.add(&bracket_homogeneous(&xp, px, &yp, py)?)?;
        }
    }
    Ok(out)
}

/// The Gram matrix of the invariant form.
pub fn form_matrix(dim: SuperDim) -> SuperMatrix {
    let (m, big_m) = (dim.m, dim.even_dim());
    let mut entries = Vec::new();
    for i in 0..m {
        entries.push((i, m + i, 1));
        entries.push((m + i, i, -1));
    }
    for a in 0..dim.odd_dim() {
        entries.push((big_m + a, big_m + a, 1));
    }
    unit(dim, &entries)
}

/// True iff every homogeneous part `X` satisfies
/// `b(Xv, w) + (−1)^{deg X · deg v} b(v, Xw) = 0` on basis vectors.
pub fn osp_membership(x: &SuperMatrix) -> bool {
    let dim = x.dim;
    let b = form_matrix(dim);
    let s = dim.size();
    [(x.even_part(), Parity::Even), (x.odd_part(), Parity::Odd)].iter().all(|(h, p)| {
        let xtb = h.transpose().matmul(&b).expect("same dim");
        let bx = b.matmul(h).expect("same dim");
        (0..s).all(|a| {
            let sign = p.koszul(dim.index_parity(a));
            (0..s).all(|c| {
                let lhs = xtb.get(a, c);
                let rhs = bx.get(a, c);
                if sign > 0 {
                    (lhs + rhs).is_zero()
                } else {
                    (lhs - rhs).is_zero()
                }
            })
        })
    })
}

/// A basis of `osp(M/N; ℂ)` read off the block form
/// `[[A, B, P], [C, −Aᵀ, Q], [−Qᵀ, Pᵀ, D]]`.
pub fn osp_basis(dim: SuperDim) -> Vec<SuperMatrix> {
    let (m, big_m, big_n) = (dim.m, dim.even_dim(), dim.odd_dim());
    let mut out = Vec::with_capacity(dim.osp_dimension());
    for i in 0..m {
        for j in 0..m {
            out.push(unit(dim, &[(i, j, 1), (m + j, m + i, -1)]));
        }
    }
    for i in 0..m {
        for j in i..m {
            if i == j {
                out.push(unit(dim, &[(i, m + i, 1)]));
            } else {
                out.push(unit(dim, &[(i, m + j, 1), (j, m + i, 1)]));
            }
        }
    }
    for i in 0..m {
        for j in i..m {
            if i == j {
                out.push(unit(dim, &[(m + i, i, 1)]));
            } else {
                out.push(unit(dim, &[(m + i, j, 1), (m + j, i, 1)]));
            }
        }
    }
    for a in 0..big_n {
        for b in a + 1..big_n {
            out.push(unit(dim, &[(big_m + a, big_m + b, 1), (big_m + b, big_m + a, -1)]));
        }
    }
    for i in 0..m {
        for a in 0..big_n {
            // P = E_{i,a}, so the lower-middle block Pᵀ has E_{a,i}.
            out.push(unit(dim, &[(i, big_m + a, 1), (big_m + a, m + i, 1)]));
            // Q = E_{i,a}, lower-left block −Qᵀ.
            out.push(unit(dim, &[(m + i, big_m + a, 1), (big_m + a, i, -1)]));
        }
    }
    out
}

/// The Cartan element with parameters `a` (length m) and `b` (length n).
///
/// For odd N the last diagonal slot is left at zero: a nonzero constant there
/// would not be skew, so the trailing `1` of the usual display only marks the
/// extra coordinate.
pub fn cartan_element(dim: SuperDim, a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<SuperMatrix> {
    if a.len() != dim.m || b.len() != dim.n {
        return Err(Error::DimensionMismatch {
            expected: format!("a of length {}, b of length {}", dim.m, dim.n),
            found: format!("a of length {}, b of length {}", a.len(), b.len()),
        });
    }
    let (m, big_m) = (dim.m, dim.even_dim());
    let mut h = SuperMatrix::zero(dim);
    for (i, ai) in a.iter().enumerate() {
        h.set(i, m + i, ai.clone());
        h.set(m + i, i, -ai);
    }
    for (j, bj) in b.iter().enumerate() {
        let p = big_m + 2 * j;
        h.set(p, p + 1, bj.clone());
        h.set(p + 1, p, -bj);
    }
    Ok(h)
}

/// Inverse of [`cartan_element`]: the `(a, b)` parameters of a matrix in the
/// complexified Cartan subalgebra, or `None` if it is not of that form.
pub fn cartan_coordinates(x: &SuperMatrix) -> Option<(Vec<Cyclotomic>, Vec<Cyclotomic>)> {
    let dim = x.dim;
    let a: Vec<Cyclotomic> = (0..dim.m).map(|i| x.get(i, dim.m + i).clone()).collect();
    let b: Vec<Cyclotomic> = (0..dim.n)
        .map(|j| {
            let p = dim.even_dim() + 2 * j;
            x.get(p, p + 1).clone()
        })
        .collect();
    let h = cartan_element(dim, &a, &b).ok()?;
    (h == *x).then_some((a, b))
}

/// The `m + n` Cartan generators: unit `a` vectors, then unit `b` vectors.
pub fn cartan_generators(dim: SuperDim) -> Vec<SuperMatrix> {
    let unit_vec = |len: usize, k: usize| -> Vec<Cyclotomic> {
        (0..len).map(|i| Cyclotomic::from_integer((i == k) as i64)).collect()
    };
    let zeros = |len: usize| vec![Cyclotomic::zero(); len];
    let mut out = Vec::new();
    for i in 0..dim.m {
        out.push(cartan_element(dim, &unit_vec(dim.m, i), &zeros(dim.n)).expect("lengths"));
    }
    for j in 0..dim.n {
        out.push(cartan_element(dim, &zeros(dim.m), &unit_vec(dim.n, j)).expect("lengths"));
    }
    out
}

/// `α(h) = i·(Σ e_i a_i + Σ f_j b_j)` for integer root coordinates.
pub fn root_value(e: &[i32], f: &[i32], a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
    let mut acc = Cyclotomic::zero();
    for (c, x) in e.iter().zip(a).chain(f.iter().zip(b)) {
        if *c != 0 {
            acc += &x.scale(&Rational::from_integer(*c as i64));
        }
    }
    &acc * &Cyclotomic::i()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootClass {
    Compact,
    Noncompact,
    Odd,
}

/// A root in coordinates `Σ e_i·e_i + Σ f_j·f_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub e: Vec<i32>,
    pub f: Vec<i32>,
    pub class: RootClass,
}

impl Root {
    /// Positive iff the first nonzero coordinate (e's, then f's) is positive.
    pub fn is_positive(&self) -> bool {
        self.e.iter().chain(&self.f).find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn negate(&self) -> Root {
        Root {
            e: self.e.iter().map(|c| -c).collect(),
            f: self.f.iter().map(|c| -c).collect(),
            class: self.class,
        }
    }

    pub fn parity(&self) -> Parity {
        Parity::from_odd(self.class == RootClass::Odd)
    }

    pub fn is_even(&self) -> bool {
        !self.parity().is_odd()
    }

    /// The value on a Cartan element with parameters `(a, b)`.
    pub fn value(&self, a: &[Cyclotomic], b: &[Cyclotomic]) -> Cyclotomic {
        root_value(&self.e, &self.f, a, b)
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .e
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, format!("e{}", i + 1)))
            .chain(self.f.iter().enumerate().map(|(j, &c)| (c, format!("f{}", j + 1))))
            .filter(|(c, _)| *c != 0);
        let mut first = true;
        for (c, name) in terms {
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let mag = c.unsigned_abs();
            if mag == 1 {
                write!(f, "{sign}{name}")?;
            } else {
                write!(f, "{sign}{mag}{name}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl Serialize for Root {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn root(dim: SuperDim, e: &[(usize, i32)], f: &[(usize, i32)], class: RootClass) -> Root {
    let mut ev = vec![0; dim.m];
    let mut fv = vec![0; dim.n];
    for &(i, c) in e {
        ev[i] += c;
    }
    for &(j, c) in f {
        fv[j] += c;
    }
    Root { e: ev, f: fv, class }
}

/// The positive roots: compact, then non-compact, then odd.
pub fn positive_roots(dim: SuperDim) -> Vec<Root> {
    let (m, n) = (dim.m, dim.n);
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            out.push(root(dim, &[(i, 1), (j, -1)], &[], RootClass::Compact));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            out.push(root(dim, &[], &[(i, 1), (j, 1)], RootClass::Compact));
            out.push(root(dim, &[], &[(i, 1), (j, -1)], RootClass::Compact));
        }
    }
    if dim.odd {
        for j in 0..n {
            out.push(root(dim, &[], &[(j, 1)], RootClass::Compact));
        }
    }
    for i in 0..m {
        for j in i..m {
            out.push(root(dim, &[(i, 1), (j, 1)], &[], RootClass::Noncompact));
        }
    }
    for i in 0..m {
        for j in 0..n {
            out.push(root(dim, &[(i, 1)], &[(j, 1)], RootClass::Odd));
            out.push(root(dim, &[(i, 1)], &[(j, -1)], RootClass::Odd));
        }
    }
    if dim.odd {
        for i in 0..m {
            out.push(root(dim, &[(i, 1)], &[], RootClass::Odd));
        }
    }
    out
}

pub fn negative_roots(dim: SuperDim) -> Vec<Root> {
    positive_roots(dim).iter().map(Root::negate).collect()
}

/// All roots, positives first.
pub fn root_system(dim: SuperDim) -> Vec<Root> {
    let mut all = positive_roots(dim);
    all.extend(negative_roots(dim));
    all
}

/// A basis of `{X ∈ osp : [h, X] = α(h) X for all Cartan h}` for the
/// functional with integer coordinates `(e, f)`.
pub fn weight_space(dim: SuperDim, e: &[i32], f: &[i32]) -> Result<Vec<SuperMatrix>> {
    if e.len() != dim.m || f.len() != dim.n {
        return Err(Error::DimensionMismatch {
            expected: format!("{} e- and {} f-coordinates", dim.m, dim.n),
            found: format!("{} and {}", e.len(), f.len()),
        });
    }
    let basis = osp_basis(dim);
    let gens = cartan_generators(dim);
    let values: Vec<Cyclotomic> = gens
        .iter()
        .map(|h| {
            let (a, b) = cartan_coordinates(h).expect("Cartan generator");
            root_value(e, f, &a, &b)
        })
        .collect();
    // Column k stacks ([h_t, B_k] − α(h_t) B_k) over all t.
    let columns: Vec<Vec<Cyclotomic>> = basis
        .iter()
        .map(|bk| {
            gens.iter()
                .zip(&values)
                .flat_map(|(h, v)| {
                    let lhs = super_bracket(h, bk).expect("same dim");
                    lhs.sub(&bk.scale(v)).expect("same dim").entries
                })
                .collect()
        })
        .collect();
    let nrows = columns.first().map_or(0, Vec::len);
    let rows: Vec<Vec<Cyclotomic>> =
        (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let kernel = nullspace(&rows, basis.len());
    Ok(kernel
        .into_iter()
        .map(|coeffs| {
            let mut x = SuperMatrix::zero(dim);
            for (c, bk) in coeffs.iter().zip(&basis) {
                if !c.is_zero() {
                    x = x.add(&bk.scale(c)).expect("same dim");
                }
            }
            canonicalize(&x)
        })
        .collect())
}

/// Scales a nonzero matrix so that its first nonzero entry in row-major
/// order is 1.
pub fn canonicalize(x: &SuperMatrix) -> SuperMatrix {
    match x.entries.iter().find(|v| !v.is_zero()) {
        Some(lead) => x.scale(&lead.inverse().expect("nonzero")),
        None => x.clone(),
    }
}

/// The canonical root vector for integer coordinates `(e, f)`; fails unless
/// the weight space is one-dimensional.
pub fn root_vector(dim: SuperDim, e: &[i32], f: &[i32]) -> Result<SuperMatrix> {
    let space = weight_space(dim, e, f)?;
    let label = || Root { e: e.to_vec(), f: f.to_vec(), class: RootClass::Compact }.to_string();
    match space.len() {
        1 if e.iter().chain(f).any(|&c| c != 0) => Ok(space.into_iter().next().expect("one")),
        _ => Err(Error::NotARoot(label())),
    }
}

pub fn root_space_basis(dim: SuperDim, alpha: &Root) -> Result<SuperMatrix> {
    root_vector(dim, &alpha.e, &alpha.f)
}

/// Root vectors `X_{±β}` for the odd root `β = e_j − f_1`, normalized so that
/// `H = [X_β, X_{−β}]` has `e_j(H) = f_1(H) = 1` and all other coordinates 0.
#[derive(Clone, Debug)]
pub struct OddCorootPair {
    pub j: usize,
    pub raising: SuperMatrix,
    pub lowering: SuperMatrix,
    pub coroot: SuperMatrix,
}

/// `j` is 1-based.
pub fn odd_coroot_pair(dim: SuperDim, j: usize) -> Result<OddCorootPair> {
    if dim.n == 0 || j == 0 || j > dim.m {
        return Err(Error::IndexOutOfRange(format!("e{j}-f1 in {dim}")));
    }
    let mut e = vec![0; dim.m];
    let mut f = vec![0; dim.n];
    e[j - 1] = 1;
    f[0] = -1;
    let raising = root_vector(dim, &e, &f)?;
    let neg_e: Vec<i32> = e.iter().map(|c| -c).collect();
    let neg_f: Vec<i32> = f.iter().map(|c| -c).collect();
    let lowering = root_vector(dim, &neg_e, &neg_f)?;
    let h = super_bracket(&raising, &lowering)?;
    let (a, _) = cartan_coordinates(&h)
        .ok_or_else(|| Error::Normalization(format!("[X, Y] for e{j}-f1 is not in the Cartan subalgebra")))?;
    // e_j(H) = i·a_j; rescale X_{−β} so that it becomes 1.
    let ej = &Cyclotomic::i() * &a[j - 1];
    let scale = ej.inverse().map_err(|_| Error::Normalization(format!("e{j}(H) vanishes")))?;
    let lowering = lowering.scale(&scale);
    let coroot = h.scale(&scale);
    let (a, b) = cartan_coordinates(&coroot).expect("rescaled Cartan element");
    let i = Cyclotomic::i();
    for (k, ak) in a.iter().enumerate() {
        let expected = if k == j - 1 { Cyclotomic::one() } else { Cyclotomic::zero() };
        if &i * ak != expected {
            return Err(Error::Normalization(format!("e{}(H) = {}", k + 1, &i * ak)));
        }
    }
    for (k, bk) in b.iter().enumerate() {
        let expected = if k == 0 { Cyclotomic::one() } else { Cyclotomic::zero() };
        if &i * bk != expected {
            return Err(Error::Normalization(format!("f{}(H) = {}", k + 1, &i * bk)));
        }
    }
    Ok(OddCorootPair { j, raising, lowering, coroot })
}

/// A weight `(λ_1, …, λ_m / μ_1, …, μ_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub lambda: Vec<Rational>,
    pub mu: Vec<Rational>,
}

impl Weight {
    pub fn new(lambda: Vec<Rational>, mu: Vec<Rational>) -> Self {
        Weight { lambda, mu }
    }

    pub fn from_integers(lambda: &[i64], mu: &[i64]) -> Self {
        Weight {
            lambda: lambda.iter().map(|&x| Rational::from_integer(x)).collect(),
            mu: mu.iter().map(|&x| Rational::from_integer(x)).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.lambda.len()
    }

    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn negate(&self) -> Weight {
        Weight {
            lambda: self.lambda.iter().map(|x| -x).collect(),
            mu: self.mu.iter().map(|x| -x).collect(),
        }
    }

    /// `self + α`.
    pub fn shifted(&self, alpha: &Root) -> Weight {
        Weight {
            lambda: self.lambda.iter().zip(&alpha.e).map(|(x, &c)| x + &Rational::from(c)).collect(),
            mu: self.mu.iter().zip(&alpha.f).map(|(x, &c)| x + &Rational::from(c)).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.lambda.iter().chain(&self.mu).all(Rational::is_integer)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", join(&self.lambda), join(&self.mu))
    }
}

/// Parses `λ_1,…,λ_m;μ_1,…,μ_n`, optionally wrapped in parentheses.
impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        let (l, m) = t
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("weight {s:?} needs a ';' between λ and μ")))?;
        let parse_list = |part: &str| -> Result<Vec<Rational>> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| x.parse::<Rational>().map_err(|e| Error::Parse(e.to_string())))
                .collect()
        };
        Ok(Weight { lambda: parse_list(l)?, mu: parse_list(m)? })
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum Number {
    Small(i64),
    Big(String),
}

fn number(x: num_bigint::BigInt) -> Number {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => Number::Small(v),
        None => Number::Big(x.to_string()),
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            string: String,
            lambda: Vec<[Number; 2]>,
            mu: Vec<[Number; 2]>,
        }
        let pairs = |v: &[Rational]| v.iter().map(|x| [number(x.numer()), number(x.denom())]).collect();
        Repr { string: self.to_string(), lambda: pairs(&self.lambda), mu: pairs(&self.mu) }.serialize(serializer)
    }
}
