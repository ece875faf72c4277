//! Graded Clifford algebras `Cℓ(S, 𝔬)` over `Q(i)`, their graded tensor
//! products, and the irreducible supermodule built from `C^{1|1}` factors.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exact::{qi_kernel, Qi};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("duplicate generator label `{0}`")]
    DuplicateLabel(String),
    #[error("generator `{0}` has sign {1}, expected +1 or -1")]
    BadSign(String, i8),
    #[error("elements belong to different signatures")]
    SignatureMismatch,
    #[error("label `{0}` occurs in both factors of a tensor product")]
    LabelCollision(String),
    #[error("signature does not split into (positive, negative) pairs")]
    UnpairedSignature,
    #[error("more than 64 generators")]
    TooManyGenerators,
    #[error("matrix block structure does not match the declared parity")]
    ParityMismatch,
    #[error("matrix dimensions do not match")]
    ShapeMismatch,
}

/// Ordered generator labels with the sign function `𝔬`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    labels: Vec<String>,
    signs: Vec<i8>,
}

impl Signature {
    pub fn new(generators: Vec<(String, i8)>) -> Result<Self, CliffordError> {
        if generators.len() > 64 {
            return Err(CliffordError::TooManyGenerators);
        }
        let mut labels = Vec::with_capacity(generators.len());
        let mut signs = Vec::with_capacity(generators.len());
        for (label, sign) in generators {
            if sign != 1 && sign != -1 {
                return Err(CliffordError::BadSign(label, sign));
            }
            if labels.contains(&label) {
                return Err(CliffordError::DuplicateLabel(label));
            }
            labels.push(label);
            signs.push(sign);
        }
        Ok(Self { labels, signs })
    }

    /// `Cℓ_{p,q}`: generators `e1..ep` squaring to +1, then `f1..fq` to −1.
    pub fn cl(p: usize, q: usize) -> Self {
        let gens = (1..=p)
            .map(|i| (format!("e{i}"), 1))
            .chain((1..=q).map(|i| (format!("f{i}"), -1)))
            .collect();
        Self::new(gens).expect("distinct labels")
    }

    /// `n` pairs `p1, m1, p2, m2, …` with signs `+, −`.
    pub fn paired(n: usize) -> Self {
        let gens = (1..=n)
            .flat_map(|i| [(format!("p{i}"), 1), (format!("m{i}"), -1)])
            .collect();
        Self::new(gens).expect("distinct labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn positive_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == 1).count()
    }

    pub fn negative_count(&self) -> usize {
        self.len() - self.positive_count()
    }

    /// Generators of `self` followed by those of `other`.
    pub fn disjoint_union(&self, other: &Signature) -> Result<Signature, CliffordError> {
        if let Some(l) = other.labels.iter().find(|l| self.labels.contains(l)) {
            return Err(CliffordError::LabelCollision(l.clone()));
        }
        let gens = self
            .labels
            .iter()
            .chain(&other.labels)
            .cloned()
            .zip(self.signs.iter().chain(&other.signs).copied())
            .collect();
        Signature::new(gens)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cℓ(")?;
        for (i, (l, s)) in self.labels.iter().zip(&self.signs).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}{}", if *s > 0 { "+" } else { "-" })?;
        }
        write!(f, ")")
    }
}

/// Product of two basis monomials given as generator bitmasks.
///
/// Returns the sign and the resulting mask. The sign counts the
/// transpositions needed to sort the concatenation and then applies `𝔬` to
/// every generator occurring in both factors.
pub fn monomial_product(signs: &[i8], a: u64, b: u64) -> (i8, u64) {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        let above = if j == 63 { 0 } else { a >> (j + 1) };
        swaps += above.count_ones();
        rest &= rest - 1;
    }
    let mut sign: i8 = if swaps % 2 == 0 { 1 } else { -1 };
    let mut common = a & b;
    while common != 0 {
        let j = common.trailing_zeros() as usize;
        sign *= signs[j];
        common &= common - 1;
    }
    (sign, a ^ b)
}

#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    signature: Signature,
    terms: BTreeMap<u64, Qi>,
}

impl CliffordElement {
    pub fn zero(signature: &Signature) -> Self {
        Self {
            signature: signature.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(signature: &Signature, c: Qi) -> Self {
        Self::monomial(signature, 0, c)
    }

    pub fn one(signature: &Signature) -> Self {
        Self::scalar(signature, Qi::one())
    }

    /// `c · ∏_{i ∈ mask} s_i` in increasing generator order.
    pub fn monomial(signature: &Signature, mask: u64, c: Qi) -> Self {
        let mut e = Self::zero(signature);
        if !c.is_zero() {
            e.terms.insert(mask, c);
        }
        e
    }

    pub fn generator(signature: &Signature, index: usize) -> Self {
        assert!(index < signature.len(), "generator index out of range");
        Self::monomial(signature, 1 << index, Qi::one())
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Qi)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u64) -> Qi {
        self.terms.get(&mask).cloned().unwrap_or_else(Qi::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn accumulate(terms: &mut BTreeMap<u64, Qi>, mask: u64, c: Qi) {
        if c.is_zero() {
            return;
        }
        match terms.get_mut(&mask) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    terms.remove(&mask);
                }
            }
            None => {
                terms.insert(mask, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            Self::accumulate(&mut out.terms, *m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CliffordError> {
        self.add(&other.scale(&Qi::from_int(-1)))
    }

    pub fn scale(&self, c: &Qi) -> Self {
        let mut out = Self::zero(&self.signature);
        for (m, x) in &self.terms {
            Self::accumulate(&mut out.terms, *m, x * c);
        }
        out
    }

    fn check(&self, other: &Self) -> Result<(), CliffordError> {
        if self.signature == other.signature {
            Ok(())
        } else {
            Err(CliffordError::SignatureMismatch)
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self, CliffordError> {
        self.check(other)?;
        let signs = self.signature.signs();
        let mut out = Self::zero(&self.signature);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (s, m) = monomial_product(signs, *a, *b);
                let mut c = x * y;
                if s < 0 {
                    c = -c;
                }
                Self::accumulate(&mut out.terms, m, c);
            }
        }
        Ok(out)
    }

    /// `Some(0)` or `Some(1)` for homogeneous elements, `None` otherwise.
    /// Zero counts as even.
    pub fn degree(&self) -> Option<u8> {
        let mut parities = self.terms.keys().map(|m| (m.count_ones() % 2) as u8);
        let first = parities.next().unwrap_or(0);
        parities.all(|p| p == first).then_some(first)
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.count_ones() % 2 == 1)
    }

    fn filter(&self, keep: impl Fn(u64) -> bool) -> Self {
        Self {
            signature: self.signature.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(**m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Re-expresses `self` in a larger signature; generator `i` goes to
    /// `offset + i`.
    fn embed(&self, target: &Signature, offset: usize) -> Self {
        Self {
            signature: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m << offset, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            let mut rest = *m;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                write!(f, "·{}", self.signature.labels[j])?;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.signature)
    }
}

/// The canonical map `Cℓ(S₁) ⊗ Cℓ(S₂) → Cℓ(S₁ ⊔ S₂)`, `a ⊗ b ↦ a·b`.
///
/// Since every generator of `S₁` precedes every generator of `S₂`, the
/// concatenation of sorted monomials is already sorted and no sign arises
/// on pure tensors. Signs appear in the multiplication of the tensor
/// product, see [`tensor_pair_product`].
pub fn graded_tensor(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement, CliffordError> {
    let sig = a.signature.disjoint_union(&b.signature)?;
    let left = a.embed(&sig, 0);
    let right = b.embed(&sig, a.signature.len());
    left.multiply(&right)
}

/// Product in `Cℓ(S₁) ⊗ Cℓ(S₂)` with the Koszul rule
/// `(a ⊗ b)(a′ ⊗ b′) = (−1)^{|b||a′|} aa′ ⊗ bb′`.
///
/// Requires `b` and `a2` homogeneous.
pub fn tensor_pair_product(
    (a, b): (&CliffordElement, &CliffordElement),
    (a2, b2): (&CliffordElement, &CliffordElement),
) -> Result<(CliffordElement, CliffordElement), CliffordError> {
    let db = b.degree().ok_or(CliffordError::ParityMismatch)?;
    let da2 = a2.degree().ok_or(CliffordError::ParityMismatch)?;
    let mut left = a.multiply(a2)?;
    if db * da2 == 1 {
        left = left.scale(&Qi::from_int(-1));
    }
    Ok((left, b.multiply(b2)?))
}

/// The grading automorphism: `(−1)^{|a|}` on homogeneous `a`.
pub fn grading_operator_action(a: &CliffordElement) -> CliffordElement {
    let mut out = a.clone();
    for (m, c) in out.terms.iter_mut() {
        if m.count_ones() % 2 == 1 {
            *c = -&*c;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A homogeneous endomorphism of `C^{p|q}`; the first `p` basis vectors
/// are even.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    dim_even: usize,
    dim_odd: usize,
    entries: Vec<Qi>,
    parity: Parity,
}

impl SuperMatrix {
    pub fn new(
        dim_even: usize,
        dim_odd: usize,
        entries: Vec<Qi>,
        parity: Parity,
    ) -> Result<Self, CliffordError> {
        let n = dim_even + dim_odd;
        if entries.len() != n * n {
            return Err(CliffordError::ShapeMismatch);
        }
        let m = Self {
            dim_even,
            dim_odd,
            entries,
            parity,
        };
        if m.detect_parity().is_some_and(|p| p != parity) {
            return Err(CliffordError::ParityMismatch);
        }
        Ok(m)
    }

    pub fn from_ints(
        dim_even: usize,
        dim_odd: usize,
        rows: &[&[i64]],
        parity: Parity,
    ) -> Result<Self, CliffordError> {
        let entries = rows.iter().flat_map(|r| r.iter().map(|&x| Qi::from_int(x))).collect();
        Self::new(dim_even, dim_odd, entries, parity)
    }

    pub fn identity(dim_even: usize, dim_odd: usize) -> Self {
        let n = dim_even + dim_odd;
        let mut entries = vec![Qi::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Qi::one();
        }
        Self {
            dim_even,
            dim_odd,
            entries,
            parity: Parity::Even,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim_even + self.dim_odd
    }

    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    pub fn dim_odd(&self) -> usize {
        self.dim_odd
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn get(&self, i: usize, j: usize) -> &Qi {
        &self.entries[i * self.dim() + j]
    }

    fn basis_parity(&self, i: usize) -> usize {
        usize::from(i >= self.dim_even)
    }

    /// Parity read off the block structure; `None` for the zero matrix or
    /// a matrix with both kinds of blocks.
    fn detect_parity(&self) -> Option<Parity> {
        let n = self.dim();
        let mut found: Option<Parity> = None;
        for i in 0..n {
            for j in 0..n {
                if self.entries[i * n + j].is_zero() {
                    continue;
                }
                let p = Parity::from_bit(self.basis_parity(i) + self.basis_parity(j));
                match found {
                    None => found = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        found
    }

    fn same_shape(&self, other: &Self) -> Result<(), CliffordError> {
        if self.dim_even == other.dim_even && self.dim_odd == other.dim_odd {
            Ok(())
        } else {
            Err(CliffordError::ShapeMismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, CliffordError> {
        self.same_shape(other)?;
        let n = self.dim();
        let mut entries = vec![Qi::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        let parity = Parity::from_bit((self.parity.bit() + other.parity.bit()) as usize);
        Ok(Self {
            dim_even: self.dim_even,
            dim_odd: self.dim_odd,
            entries,
            parity,
        })
    }

    fn zip(&self, other: &Self, f: impl Fn(&Qi, &Qi) -> Qi) -> Result<Self, CliffordError> {
        self.same_shape(other)?;
        if self.parity != other.parity {
            return Err(CliffordError::ParityMismatch);
        }
        Ok(Self {
            dim_even: self.dim_even,
            dim_odd: self.dim_odd,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
            parity: self.parity,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, CliffordError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, CliffordError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Qi) -> Self {
        Self {
            entries: self.entries.iter().map(|x| x * c).collect(),
            ..self.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Qi::is_zero)
    }

    pub fn is_scalar(&self, c: &Qi) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let x = &self.entries[i * n + j];
                if i == j {
                    x == c
                } else {
                    x.is_zero()
                }
            })
        })
    }

    /// `xy + yx`, ignoring declared parities.
    pub fn anticommutator(&self, other: &Self) -> Result<Self, CliffordError> {
        let a = self.mul(other)?;
        let b = other.mul(self)?;
        Ok(Self {
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect(),
            ..a
        })
    }

    /// The grading operator `diag(1, …, 1, −1, …, −1)`.
    pub fn grading(dim_even: usize, dim_odd: usize) -> Self {
        let mut g = Self::identity(dim_even, dim_odd);
        let n = g.dim();
        for i in dim_even..n {
            g.entries[i * n + i] = Qi::from_int(-1);
        }
        g
    }
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        writeln!(f, "SuperMatrix {}|{} ({})", self.dim_even, self.dim_odd, self.parity)?;
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| self.entries[i * n + j].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// One entry per violated relation of `Cℓ(S, 𝔬)`: `g_s² = 𝔬(s)` and
/// `g_s g_t + g_t g_s = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RelationFailure {
    Square { index: usize },
    Anticommute { first: usize, second: usize },
}

pub fn relation_failures(signs: &[i8], mats: &[SuperMatrix]) -> Vec<RelationFailure> {
    let mut out = Vec::new();
    for (s, g) in mats.iter().enumerate() {
        let sq = g.mul(g).expect("same shape");
        if !sq.is_scalar(&Qi::from_int(signs[s] as i64)) {
            out.push(RelationFailure::Square { index: s });
        }
        for (t, h) in mats.iter().enumerate().skip(s + 1) {
            if !g.anticommutator(h).expect("same shape").is_zero() {
                out.push(RelationFailure::Anticommute { first: s, second: t });
            }
        }
    }
    out
}

/// `φ(v₊)` and `φ(v₋)` on `C^{1|1}`.
pub fn cl11_rep() -> (SuperMatrix, SuperMatrix) {
    let plus = SuperMatrix::from_ints(1, 1, &[&[0, 1], &[1, 0]], Parity::Odd).expect("odd");
    let minus = SuperMatrix::from_ints(1, 1, &[&[0, 1], &[-1, 0]], Parity::Odd).expect("odd");
    assert!(relation_failures(&[1, -1], &[plus.clone(), minus.clone()]).is_empty());
    (plus, minus)
}

/// Pairs each positive generator with the next unused negative one, in
/// signature order.
fn pair_generators(sig: &Signature) -> Result<Vec<(usize, usize)>, CliffordError> {
    let pos: Vec<usize> = (0..sig.len()).filter(|&i| sig.sign(i) == 1).collect();
    let neg: Vec<usize> = (0..sig.len()).filter(|&i| sig.sign(i) == -1).collect();
    if pos.len() != neg.len() {
        return Err(CliffordError::UnpairedSignature);
    }
    Ok(pos.into_iter().zip(neg).collect())
}

/// Action of an odd operator `op` (2×2, factor-local) on factor `j` of
/// `(C^{1|1})^{⊗n}` with the Koszul sign of the preceding factors.
///
/// Tensor basis index bit `k` is the degree of factor `k`.
fn factor_action(n: usize, j: usize, op: &[[i64; 2]; 2]) -> Vec<(usize, usize, i64)> {
    let below = (1usize << j) - 1;
    let mut out = Vec::with_capacity(1 << n);
    for col in 0..(1usize << n) {
        let koszul = if (col & below).count_ones() % 2 == 0 { 1 } else { -1 };
        let b = (col >> j) & 1;
        for (a, row_op) in op.iter().enumerate() {
            let x = row_op[b];
            if x != 0 {
                let row = (col & !(1 << j)) | (a << j);
                out.push((row, col, koszul * x));
            }
        }
    }
    out
}

/// Permutation putting even tensor-basis states first, each block in
/// increasing index order.
fn parity_sorted_order(n: usize) -> (Vec<usize>, usize) {
    let mut order: Vec<usize> = (0..(1usize << n)).filter(|s| s.count_ones() % 2 == 0).collect();
    let even = order.len();
    order.extend((0..(1usize << n)).filter(|s| s.count_ones() % 2 == 1));
    (order, even)
}

/// The `2ⁿ`-dimensional irreducible supermodule of a signature with `n`
/// positive and `n` negative generators: the graded tensor product of `n`
/// copies of `C^{1|1}`, pair `k` acting on factor `k` through [`cl11_rep`].
///
/// Returns one odd matrix per generator, in signature order, on the
/// parity-sorted tensor basis.
pub fn irreducible_supermodule(sig: &Signature) -> Result<Vec<SuperMatrix>, CliffordError> {
    let pairs = pair_generators(sig)?;
    let n = pairs.len();
    let (order, even) = parity_sorted_order(n);
    let mut position = vec![0usize; order.len()];
    for (p, &s) in order.iter().enumerate() {
        position[s] = p;
    }
    let dim = 1usize << n;
    let plus = [[0, 1], [1, 0]];
    let minus = [[0, 1], [-1, 0]];
    let mut mats: Vec<Option<SuperMatrix>> = vec![None; sig.len()];
    for (k, &(p, m)) in pairs.iter().enumerate() {
        for (gen, op) in [(p, &plus), (m, &minus)] {
            let mut entries = vec![Qi::zero(); dim * dim];
            for (r, c, x) in factor_action(n, k, op) {
                entries[position[r] * dim + position[c]] = Qi::from_int(x);
            }
            mats[gen] = Some(SuperMatrix::new(even, dim - even, entries, Parity::Odd)?);
        }
    }
    let mats: Vec<SuperMatrix> = mats.into_iter().map(|m| m.expect("every generator paired")).collect();
    debug_assert!(relation_failures(sig.signs(), &mats).is_empty());
    Ok(mats)
}

/// Dimension of the ungraded commutant `{X : Xg = gX for all g}`.
pub fn commutant_dimension(mats: &[SuperMatrix]) -> usize {
    let Some(first) = mats.first() else {
        return 0;
    };
    let n = first.dim();
    // unknown X[i][j] at column i*n + j; one equation per (g, row, col)
    let mut rows = Vec::new();
    for g in mats {
        for r in 0..n {
            for c in 0..n {
                let mut eq = vec![Qi::zero(); n * n];
                for k in 0..n {
                    // (Xg)[r][c] = Σ_k X[r][k] g[k][c]
                    let gk = g.get(k, c);
                    if !gk.is_zero() {
                        eq[r * n + k] += gk;
                    }
                    // (gX)[r][c] = Σ_k g[r][k] X[k][c]
                    let gr = g.get(r, k);
                    if !gr.is_zero() {
                        eq[k * n + c] = &eq[k * n + c] - gr;
                    }
                }
                if eq.iter().any(|x| !x.is_zero()) {
                    rows.push(eq);
                }
            }
        }
    }
    qi_kernel(&rows, n * n).len()
}
