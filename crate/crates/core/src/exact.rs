//! Exact scalars and kernels: Gaussian rationals `Q(i)` and fraction-free
//! integer elimination.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use thiserror::Error;

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qi {
    pub re: BigRational,
    pub im: BigRational,
}

impl Qi {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -&self.im / &n))
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Qi::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    /// Parts as `(numerator, denominator)` decimal strings.
    pub fn parts(&self) -> ((String, String), (String, String)) {
        let f = |r: &BigRational| (r.numer().to_string(), r.denom().to_string());
        (f(&self.re), f(&self.im))
    }
}

/// Encoded as `{"re": [num, den], "im": [num, den]}` with decimal strings.
impl Serialize for Qi {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let ((rn, rd), (inum, id)) = self.parts();
        let mut st = serializer.serialize_struct("Qi", 2)?;
        st.serialize_field("re", &[rn, rd])?;
        st.serialize_field("im", &[inum, id])?;
        st.end()
    }
}

impl From<i64> for Qi {
    fn from(n: i64) -> Self {
        Qi::from_int(n)
    }
}

impl Add for &Qi {
    type Output = Qi;
    fn add(self, rhs: &Qi) -> Qi {
        Qi::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for Qi {
    type Output = Qi;
    fn add(self, rhs: Qi) -> Qi {
        &self + &rhs
    }
}

impl AddAssign<&Qi> for Qi {
    fn add_assign(&mut self, rhs: &Qi) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &Qi {
    type Output = Qi;
    fn sub(self, rhs: &Qi) -> Qi {
        Qi::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Sub for Qi {
    type Output = Qi;
    fn sub(self, rhs: Qi) -> Qi {
        &self - &rhs
    }
}

impl Mul for &Qi {
    type Output = Qi;
    fn mul(self, rhs: &Qi) -> Qi {
        if self.im.is_zero() && rhs.im.is_zero() {
            return Qi::new(&self.re * &rhs.re, BigRational::zero());
        }
        Qi::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul for Qi {
    type Output = Qi;
    fn mul(self, rhs: Qi) -> Qi {
        &self * &rhs
    }
}

impl Div for &Qi {
    type Output = Qi;
    fn div(self, rhs: &Qi) -> Qi {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        Qi::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for Qi {
    type Output = Qi;
    fn neg(self) -> Qi {
        -&self
    }
}

impl fmt::Display for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im, false),
            (false, false) => {
                write!(f, "{}", self.re)?;
                write_imag(f, &self.im, true)
            }
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational, signed: bool) -> fmt::Result {
    let neg = im.is_negative();
    let mag = im.abs();
    let sign = match (neg, signed) {
        (true, _) => "-",
        (false, true) => "+",
        (false, false) => "",
    };
    if mag.is_one() {
        write!(f, "{sign}i")
    } else {
        write!(f, "{sign}{mag}i")
    }
}

impl fmt::Debug for Qi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse `{0}` as a Gaussian rational")]
pub struct ParseQiError(pub String);

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).ok()?;
            let d = BigInt::from_str(d.trim()).ok()?;
            (!d.is_zero()).then(|| BigRational::new(n, d))
        }
        None => BigInt::from_str(s).ok().map(BigRational::from_integer),
    }
}

impl FromStr for Qi {
    type Err = ParseQiError;

    /// Accepts `3`, `-1/2`, `i`, `-2i`, `1/2i`, `1+i`, `3/2-1/4i`.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || ParseQiError(text.to_string());
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_rational(&s).map(|r| Qi::new(r, BigRational::zero())).ok_or_else(err);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(re_part).ok_or_else(err)?
        };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other)).ok_or_else(err)?,
        };
        Ok(Qi::new(re, im))
    }
}

/// Nullspace of a dense matrix over `Q(i)`, one basis vector per free
/// column (ascending), normalized to 1 in that column.
pub fn qi_kernel(rows: &[Vec<Qi>], ncols: usize) -> Vec<Vec<Qi>> {
    let mut m: Vec<Vec<Qi>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        let mut v = vec![Qi::zero(); ncols];
        v[f] = Qi::one();
        for (row, &c) in pivots.iter().enumerate() {
            if !m[row][f].is_zero() {
                v[c] = -&m[row][f];
            }
        }
        out.push(v);
    }
    out
}

pub fn qi_rank(rows: &[Vec<Qi>], ncols: usize) -> usize {
    ncols - qi_kernel(rows, ncols).len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("integer overflow during exact elimination")]
pub struct Overflow;

fn gcd_row(row: &[i128]) -> i128 {
    let mut g = 0i128;
    for &x in row {
        if x != 0 {
            g = g.gcd(&x);
            if g == 1 {
                break;
            }
        }
    }
    g
}

fn normalize_row(row: &mut [i128]) {
    let g = gcd_row(row);
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
}

/// Integer basis of the rational kernel of an integer matrix.
///
/// Fraction-free elimination: rows are combined as `a·r − b·p` and divided
/// by the gcd of their entries after every step, so all arithmetic stays in
/// `Z` and the kernel is exactly the rational one. Each returned vector is
/// primitive and has a positive entry in its free column.
pub fn integer_kernel(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<Vec<i64>>, Overflow> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len())
            .filter(|&i| m[i][c] != 0)
            .min_by_key(|&i| m[i][c].abs())
        else {
            continue;
        };
        m.swap(r, p);
        normalize_row(&mut m[r]);
        let pivot_row = m[r].clone();
        let support: Vec<usize> = (0..ncols).filter(|&j| pivot_row[j] != 0).collect();
        let a = pivot_row[c];
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let b = row[c];
            let g = a.gcd(&b);
            let (sa, sb) = (a / g, b / g);
            if sa != 1 {
                for x in row.iter_mut() {
                    *x = x.checked_mul(sa).ok_or(Overflow)?;
                }
            }
            for &j in &support {
                let rhs = pivot_row[j].checked_mul(sb).ok_or(Overflow)?;
                row[j] = row[j].checked_sub(rhs).ok_or(Overflow)?;
            }
            if sa != 1 {
                normalize_row(row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if pivots.contains(&f) {
            continue;
        }
        // x_f = L, x_{c_k} = -L·m[k][f] / a_k with L the lcm of the pivots
        let mut l: i128 = 1;
        for (k, &c) in pivots.iter().enumerate() {
            if m[k][f] != 0 {
                let a = m[k][c];
                let g = m[k][f].gcd(&a);
                l = l.lcm(&(a / g).abs());
            }
        }
        let mut v = vec![0i128; ncols];
        v[f] = l;
        for (k, &c) in pivots.iter().enumerate() {
            if m[k][f] != 0 {
                let num = l.checked_mul(m[k][f]).ok_or(Overflow)?;
                v[c] = -num / m[k][c];
            }
        }
        normalize_row(&mut v);
        let v = v
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| Overflow))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(v);
    }
    Ok(out)
}
