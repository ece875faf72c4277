//! Quadratic enhancements of mod-2 intersection forms and their invariants.
//!
//! A Z/4 enhancement is stored by its values on the basis of an
//! [`IntersectionForm`]; Z/2 enhancements live inside the same encoding as
//! even-valued ones (`2·q`). Gauss sums are computed exactly in `Z[ζ₈]`.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::f2::{symplectic_basis, F2Error, F2Vector};
use crate::surface::IntersectionForm;

/// Largest form dimension the Gauss sum enumerates by default.
pub const DEFAULT_DIM_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("vector has length {got}, form has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value {value} on `{label}` has the wrong parity: q(x) mod 2 must equal I(x,x) = {self_pairing}")]
    ParityViolation {
        label: String,
        value: u8,
        self_pairing: u8,
    },
    #[error("no value given for basis element `{0}`")]
    MissingValue(String),
    #[error("`{0}` is not a basis label of the form")]
    UnknownLabel(String),
    #[error("enhancement takes odd value on `{0}`; the Arf invariant needs a spin (even) enhancement")]
    NotSpin(String),
    #[error(transparent)]
    Form(#[from] F2Error),
    #[error("Gauss sum is not a root of unity times (√2)^dim")]
    NotRootOfUnity,
    #[error("form dimension {dim} exceeds the Gauss sum cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
}

/// An element of Z/4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Z4(u8);

impl Z4 {
    pub fn new(v: i64) -> Self {
        Z4(v.rem_euclid(4) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }

    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }
}

impl Add for Z4 {
    type Output = Z4;
    fn add(self, rhs: Z4) -> Z4 {
        Z4((self.0 + rhs.0) % 4)
    }
}

impl fmt::Display for Z4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of Z/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Z2(u8);

impl Z2 {
    pub fn new(v: i64) -> Self {
        Z2(v.rem_euclid(2) as u8)
    }

    pub fn value(self) -> u8 {
        self.0
    }
}

impl fmt::Display for Z2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `c₀ + c₁ζ + c₂ζ² + c₃ζ³` in `Z[ζ₈] = Z[x]/(x⁴ + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Cyc8(pub [i64; 4]);

impl Cyc8 {
    pub const ZERO: Cyc8 = Cyc8([0, 0, 0, 0]);
    pub const ONE: Cyc8 = Cyc8([1, 0, 0, 0]);

    pub fn from_int(n: i64) -> Self {
        Cyc8([n, 0, 0, 0])
    }

    /// `ζ₈^k` for any integer `k`.
    pub fn zeta(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0; 4];
        if k < 4 {
            c[k] = 1;
        } else {
            c[k - 4] = -1;
        }
        Cyc8(c)
    }

    /// `i^k = ζ₈^{2k}`.
    pub fn i_pow(k: i64) -> Self {
        Self::zeta(2 * k)
    }

    /// `ζ - ζ³`, a square root of 2.
    pub fn sqrt2() -> Self {
        Cyc8([0, 1, 0, -1])
    }

    pub fn coefficients(&self) -> [i64; 4] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Complex conjugation `ζ ↦ ζ⁻¹ = -ζ³`.
    pub fn conj(&self) -> Self {
        let [a, b, c, d] = self.0;
        Cyc8([a, -d, -c, -b])
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = *self;
        let mut acc = Cyc8::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point value, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let [a, b, c, d] = self.0.map(|v| v as f64);
        (a + h * b - h * d, h * b + c + h * d)
    }
}

impl Add for Cyc8 {
    type Output = Cyc8;
    fn add(self, rhs: Cyc8) -> Cyc8 {
        Cyc8(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl AddAssign for Cyc8 {
    fn add_assign(&mut self, rhs: Cyc8) {
        *self = *self + rhs;
    }
}

impl Sub for Cyc8 {
    type Output = Cyc8;
    fn sub(self, rhs: Cyc8) -> Cyc8 {
        self + (-rhs)
    }
}

impl Neg for Cyc8 {
    type Output = Cyc8;
    fn neg(self) -> Cyc8 {
        Cyc8(self.0.map(|v| -v))
    }
}

impl Mul for Cyc8 {
    type Output = Cyc8;
    fn mul(self, rhs: Cyc8) -> Cyc8 {
        let mut out = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let p = self.0[i] * rhs.0[j];
                if i + j < 4 {
                    out[i + j] += p;
                } else {
                    out[i + j - 4] -= p;
                }
            }
        }
        Cyc8(out)
    }
}

impl fmt::Display for Cyc8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let unit = match k {
                0 => String::new(),
                1 => "ζ₈".to_string(),
                _ => format!("ζ₈^{k}"),
            };
            let term = match (c, unit.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => unit,
                (-1, false) => format!("-{unit}"),
                _ => format!("{c}{unit}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = terms[0].clone();
        for t in &terms[1..] {
            match t.strip_prefix('-') {
                Some(rest) => s.push_str(&format!(" - {rest}")),
                None => s.push_str(&format!(" + {t}")),
            }
        }
        write!(f, "{s}")
    }
}

/// An eighth root of unity `ζ₈^k`, stored by its exponent in Z/8.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RootOfUnity8(u8);

impl RootOfUnity8 {
    pub const ONE: RootOfUnity8 = RootOfUnity8(0);

    pub fn new(k: i64) -> Self {
        RootOfUnity8(k.rem_euclid(8) as u8)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn inverse(self) -> Self {
        Self::new(-(self.0 as i64))
    }

    pub fn pow(self, n: i64) -> Self {
        Self::new(self.0 as i64 * n)
    }

    pub fn to_cyc8(self) -> Cyc8 {
        Cyc8::zeta(self.0 as i64)
    }

    /// The value written with radicals, e.g. `(1+i)/√2`.
    pub fn surd(self) -> &'static str {
        [
            "1",
            "(1+i)/√2",
            "i",
            "(-1+i)/√2",
            "-1",
            "(-1-i)/√2",
            "-i",
            "(1-i)/√2",
        ][self.0 as usize]
    }
}

impl Mul for RootOfUnity8 {
    type Output = RootOfUnity8;
    fn mul(self, rhs: RootOfUnity8) -> RootOfUnity8 {
        RootOfUnity8((self.0 + rhs.0) % 8)
    }
}

impl fmt::Display for RootOfUnity8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ζ₈^{}", self.0)
    }
}

/// A Z/4 quadratic enhancement of an intersection form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Enhancement {
    form: IntersectionForm,
    values: Vec<Z4>,
}

impl Enhancement {
    /// Checks that `values[i] ≡ I(bᵢ, bᵢ) (mod 2)` for every basis element.
    pub fn new(form: IntersectionForm, values: Vec<Z4>) -> Result<Self, QuadError> {
        if values.len() != form.dim() {
            return Err(QuadError::DimensionMismatch {
                expected: form.dim(),
                got: values.len(),
            });
        }
        for (i, v) in values.iter().enumerate() {
            let self_pairing = form.gram.get(i, i) as u8;
            if v.value() % 2 != self_pairing {
                return Err(QuadError::ParityViolation {
                    label: form.basis_labels[i].clone(),
                    value: v.value(),
                    self_pairing,
                });
            }
        }
        Ok(Self { form, values })
    }

    /// Builds an enhancement from `label = value` pairs covering the basis.
    pub fn from_assignments(
        form: IntersectionForm,
        assignments: &[(String, i64)],
    ) -> Result<Self, QuadError> {
        let mut values: Vec<Option<Z4>> = vec![None; form.dim()];
        for (label, v) in assignments {
            let i = form
                .label_index(label)
                .ok_or_else(|| QuadError::UnknownLabel(label.clone()))?;
            values[i] = Some(Z4::new(*v));
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| QuadError::MissingValue(form.basis_labels[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(form, values)
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn values(&self) -> &[Z4] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// True when every basis value is even, i.e. this is `2·q` for a Z/2
    /// enhancement.
    pub fn is_even(&self) -> bool {
        self.values.iter().all(|v| v.is_even())
    }

    /// `q(x) = Σ q(bᵢ) + 2 Σ_{i<j} I(bᵢ, bⱼ)` over the support of `x`.
    pub fn evaluate(&self, x: &F2Vector) -> Result<Z4, QuadError> {
        if x.len() != self.dim() {
            return Err(QuadError::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let support: Vec<usize> = x.ones().collect();
        let mut total = 0i64;
        for (k, &i) in support.iter().enumerate() {
            total += self.values[i].value() as i64;
            for &j in &support[k + 1..] {
                if self.form.gram.get(i, j) {
                    total += 2;
                }
            }
        }
        Ok(Z4::new(total))
    }

    /// `q_γ(x) = q(x) + 2γ(x)` for a class `γ ∈ H¹` given by its values on
    /// the basis.
    pub fn twist(&self, gamma: &F2Vector) -> Result<Self, QuadError> {
        if gamma.len() != self.dim() {
            return Err(QuadError::DimensionMismatch {
                expected: self.dim(),
                got: gamma.len(),
            });
        }
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| *v + Z4::new(2 * gamma.get(i) as i64))
            .collect();
        Self::new(self.form.clone(), values)
    }

    /// The same enhancement with basis element `perm[k]` moved to slot `k`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        assert_eq!(perm.len(), n, "permutation length");
        let mut gram = crate::f2::F2Matrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                gram.set(a, b, self.form.gram.get(perm[a], perm[b]));
            }
        }
        Self {
            form: IntersectionForm {
                basis_labels: perm.iter().map(|&i| self.form.basis_labels[i].clone()).collect(),
                gram,
            },
            values: perm.iter().map(|&i| self.values[i]).collect(),
        }
    }

    /// Enhancement on the direct sum of forms (disjoint union of surfaces).
    pub fn direct_sum(&self, other: &Enhancement) -> Self {
        Self {
            form: self.form.direct_sum(&other.form),
            values: self.values.iter().chain(&other.values).copied().collect(),
        }
    }
}

/// All `2^dim` enhancements of a form, in lexicographic order of their
/// basis values.
pub fn enumerate_enhancements(form: &IntersectionForm) -> Vec<Enhancement> {
    let n = form.dim();
    let base: Vec<u8> = (0..n).map(|i| form.gram.get(i, i) as u8).collect();
    (0..1u64 << n)
        .map(|mask| {
            let values = (0..n)
                .map(|i| {
                    // bit for slot 0 is the most significant so the list is lexicographic
                    let high = (mask >> (n - 1 - i)) & 1 == 1;
                    Z4::new(base[i] as i64 + 2 * high as i64)
                })
                .collect();
            Enhancement {
                form: form.clone(),
                values,
            }
        })
        .collect()
}

/// The Arf invariant `Σ q(eᵢ) q(fᵢ)` of a Z/2 enhancement stored as `2·q`.
pub fn arf(q: &Enhancement) -> Result<Z2, QuadError> {
    if let Some(i) = q.values.iter().position(|v| !v.is_even()) {
        return Err(QuadError::NotSpin(q.form.basis_labels[i].clone()));
    }
    let pairs = symplectic_basis(&q.form.gram)?;
    let mut total = 0i64;
    for (e, f) in &pairs {
        let qe = q.evaluate(e)?.value() as i64 / 2;
        let qf = q.evaluate(f)?.value() as i64 / 2;
        total += qe * qf;
    }
    Ok(Z2::new(total))
}

/// `S = Σ_{x ∈ H₁} i^{q(x)}`, enumerated along a Gray code.
pub fn gauss_sum(q: &Enhancement, dim_cap: usize) -> Result<Cyc8, QuadError> {
    let n = q.dim();
    if n > dim_cap || n > 63 {
        return Err(QuadError::DimensionCap {
            dim: n,
            cap: dim_cap.min(63),
        });
    }
    let rows: Vec<u64> = (0..n).map(|i| q.form.gram.row(i).to_mask()).collect();
    let base: Vec<i64> = q.values.iter().map(|v| v.value() as i64).collect();
    // counts[k] = #{x : q(x) = k}
    let mut counts = [0u64; 4];
    let mut x = 0u64;
    let mut qx = 0i64;
    counts[0] += 1;
    for step in 1u64..(1u64 << n) {
        let i = step.trailing_zeros() as usize;
        // q(x + bᵢ) = q(x) + q(bᵢ) + 2·I(x, bᵢ)
        let pairing = (x & rows[i]).count_ones() as i64 % 2;
        qx = (qx + base[i] + 2 * pairing).rem_euclid(4);
        x ^= 1 << i;
        counts[qx as usize] += 1;
    }
    let s = counts
        .iter()
        .enumerate()
        .fold(Cyc8::ZERO, |acc, (k, &c)| acc + Cyc8::i_pow(k as i64) * Cyc8::from_int(c as i64));
    Ok(s)
}

/// Exact Arf-Brown data: the exponent and the raw Gauss sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ArfBrown {
    pub exponent: RootOfUnity8,
    pub gauss_sum: Cyc8,
    pub dim: usize,
}

/// Finds the unique `k` with `S = ζ₈^k (√2)^dim`.
pub fn arf_brown_with_cap(q: &Enhancement, dim_cap: usize) -> Result<ArfBrown, QuadError> {
    let s = gauss_sum(q, dim_cap)?;
    let scale = Cyc8::sqrt2().pow(q.dim() as u32);
    let k = (0..8)
        .find(|&k| Cyc8::zeta(k) * scale == s)
        .ok_or(QuadError::NotRootOfUnity)?;
    Ok(ArfBrown {
        exponent: RootOfUnity8::new(k),
        gauss_sum: s,
        dim: q.dim(),
    })
}

/// The Arf-Brown invariant as an eighth root of unity.
pub fn arf_brown(q: &Enhancement) -> Result<RootOfUnity8, QuadError> {
    Ok(arf_brown_with_cap(q, DEFAULT_DIM_CAP)?.exponent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{intersection_form, GluingScheme};

    fn form(word: &str) -> IntersectionForm {
        intersection_form(&GluingScheme::parse(word).unwrap()).unwrap()
    }

    fn enh(word: &str, values: &[i64]) -> Enhancement {
        Enhancement::new(form(word), values.iter().map(|&v| Z4::new(v)).collect()).unwrap()
    }

    #[test]
    fn cyclotomic_relations() {
        let z = Cyc8::zeta(1);
        assert_eq!(z.pow(4), Cyc8::from_int(-1));
        assert_eq!(z.pow(2), Cyc8::i_pow(1));
        assert_eq!(Cyc8::sqrt2() * Cyc8::sqrt2(), Cyc8::from_int(2));
        assert_eq!(z * z.conj(), Cyc8::ONE);
        assert_eq!(Cyc8::zeta(-3), Cyc8::zeta(5));
    }

    #[test]
    fn evaluate_examples() {
        let t = enh("a b a' b'", &[2, 2]);
        assert_eq!(t.evaluate(&F2Vector::zeros(2)).unwrap(), Z4::new(0));
        // 2 + 2 + 2·I(e, f)
        assert_eq!(t.evaluate(&F2Vector::from_u8s(&[1, 1])).unwrap(), Z4::new(2));
        let k = enh("a a b b", &[1, 1]);
        assert_eq!(k.evaluate(&F2Vector::from_u8s(&[1, 1])).unwrap(), Z4::new(2));
        let p = enh("a a", &[1]);
        assert_eq!(p.evaluate(&F2Vector::from_u8s(&[1])).unwrap(), Z4::new(1));
        assert_eq!(
            p.evaluate(&F2Vector::zeros(2)),
            Err(QuadError::DimensionMismatch {
                expected: 1,
                got: 2
            })
        );
    }

    #[test]
    fn torus_with_odd_values_is_rejected() {
        // the torus form is alternating, so basis values must be even
        let err = Enhancement::new(form("a b a' b'"), vec![Z4::new(1), Z4::new(1)]);
        assert!(matches!(err, Err(QuadError::ParityViolation { .. })));
    }

    #[test]
    fn enumeration_counts() {
        let rp2 = enumerate_enhancements(&form("a a"));
        assert_eq!(rp2.len(), 2);
        assert_eq!(rp2[0].values(), &[Z4::new(1)]);
        assert_eq!(rp2[1].values(), &[Z4::new(3)]);
        assert_eq!(enumerate_enhancements(&form("a b a' b'")).len(), 4);
        assert_eq!(enumerate_enhancements(&form("a a b b")).len(), 4);
    }

    #[test]
    fn arf_examples() {
        assert_eq!(arf(&enh("a b a' b'", &[2, 2])).unwrap(), Z2::new(1));
        assert_eq!(arf(&enh("a b a' b'", &[0, 0])).unwrap(), Z2::new(0));
        assert_eq!(arf(&enh("a b a' b' c d c' d'", &[0, 0, 0, 0])).unwrap(), Z2::new(0));
        assert!(matches!(arf(&enh("a a", &[1])), Err(QuadError::NotSpin(_))));
        assert!(matches!(
            arf(&enh("a a b b", &[1, 1])),
            Err(QuadError::NotSpin(_))
        ));
    }

    #[test]
    fn arf_rejects_crosscap_forms_with_even_values() {
        // a a b b with all values even is impossible, but a genus-1 form
        // glued to a crosscap still fails alternation
        let f = form("a a b c b' c'");
        let q = Enhancement::new(f.clone(), vec![Z4::new(1), Z4::new(0), Z4::new(0)]).unwrap();
        assert!(matches!(arf(&q), Err(QuadError::NotSpin(_))));
    }

    #[test]
    fn arf_brown_examples() {
        assert_eq!(arf_brown(&enh("a a", &[1])).unwrap(), RootOfUnity8::new(1));
        assert_eq!(arf_brown(&enh("a a", &[3])).unwrap(), RootOfUnity8::new(7));
        assert_eq!(arf_brown(&enh("a b a' b'", &[2, 2])).unwrap(), RootOfUnity8::new(4));
        assert_eq!(arf_brown(&Enhancement::new(IntersectionForm::empty(), vec![]).unwrap()).unwrap(), RootOfUnity8::ONE);
    }

    #[test]
    fn gauss_sum_values() {
        assert_eq!(gauss_sum(&enh("a a", &[1]), 20).unwrap(), Cyc8([1, 0, 1, 0]));
        assert_eq!(gauss_sum(&enh("a b a' b'", &[2, 2]), 20).unwrap(), Cyc8::from_int(-2));
        assert_eq!(
            gauss_sum(&enh("a a b b", &[1, 1]), 1),
            Err(QuadError::DimensionCap { dim: 2, cap: 1 })
        );
    }

    #[test]
    fn root_of_unity_group_law() {
        let z = RootOfUnity8::new(3);
        assert_eq!(z * z.inverse(), RootOfUnity8::ONE);
        assert_eq!(z.pow(8), RootOfUnity8::ONE);
        assert_eq!(RootOfUnity8::new(1).surd(), "(1+i)/√2");
        assert_eq!(z.to_cyc8(), Cyc8::zeta(3));
    }
}
