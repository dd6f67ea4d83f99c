//! Integer polynomials, truncated power series and quantum factorizations.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial with arbitrary precision integer coefficients, index = exponent.
///
/// Always trimmed: the highest stored coefficient is nonzero, and the zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<BigInt>", into = "Vec<BigInt>")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(coeffs: Vec<BigInt>) -> Self {
        IntPoly::new(coeffs)
    }
}

impl From<IntPoly> for Vec<BigInt> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        IntPoly::from_i64s(&[c])
    }

    /// The monomial `c * z^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        IntPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// `z^d * p(1/z)`; requires `d >= degree`.
    pub fn reflect(&self, d: usize) -> Self {
        assert!(self.degree().is_none_or(|deg| deg <= d), "reflect below degree");
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c.clone();
        }
        IntPoly::new(coeffs)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as machine integers, when they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    /// Exact division; `None` if `divisor` does not divide `self` in ℤ[z].
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let ddeg = divisor.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let lead = &divisor.coeffs[ddeg];
        let mut rem = self.coeffs.clone();
        let sdeg = rem.len() - 1;
        if sdeg < ddeg {
            return None;
        }
        let mut quot = vec![BigInt::zero(); sdeg - ddeg + 1];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + ddeg];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &q * d;
            }
            quot[k] = q;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{a}z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{a}z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) | (None, Some(a)) => a.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        IntPoly::new(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        multiply(self, rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Exact product of two polynomials.
pub fn multiply(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() || q.is_zero() {
        return IntPoly::zero();
    }
    let mut coeffs = vec![BigInt::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            coeffs[i + j] += a * b;
        }
    }
    IntPoly::new(coeffs)
}

/// True iff the coefficient sequence reads the same reversed.
pub fn is_palindromic(p: &IntPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("palindromicity of the zero polynomial".into()));
    }
    let c = &p.coeffs;
    // trailing zeros at the low end break the symmetry
    Ok((0..c.len() / 2).all(|i| c[i] == c[c.len() - 1 - i]))
}

/// The quantum polynomial `[a] = 1 + z + ... + z^(a-1)`.
pub fn quantum_poly(a: i64) -> Result<IntPoly> {
    if a <= 0 {
        return Err(Error::InvalidArgument(format!("quantum polynomial [{a}] needs a >= 1")));
    }
    Ok(IntPoly::new(vec![BigInt::one(); a as usize]))
}

/// Weakly increasing list of parameters `a_i >= 2`; stands for `Π [a_i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QuantumShape(pub Vec<u32>);

impl QuantumShape {
    pub fn product(&self) -> IntPoly {
        self.0.iter().fold(IntPoly::one(), |acc, &a| {
            multiply(&acc, &quantum_poly(a as i64).expect("shape parameter >= 2"))
        })
    }

    /// Degree of the product, `Σ (a_i - 1)`.
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|a| a - 1).sum()
    }

    /// Parameters of the matching cubical lattice, `a_i - 1`.
    pub fn lattice_params(&self) -> Vec<u32> {
        self.0.iter().map(|a| a - 1).collect()
    }
}

impl fmt::Display for QuantumShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "[{a}]")?;
        }
        if self.0.is_empty() {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// Every way to write `p` as a product of quantum polynomials `[a]`, `a >= 2`.
///
/// Shapes are returned in lexicographic order. The constant 1 yields the single
/// empty shape; anything that does not factor yields no shapes.
pub fn quantum_factorizations(p: &IntPoly) -> Vec<QuantumShape> {
    let mut out = Vec::new();
    if p.is_zero() {
        return out;
    }
    let mut cache: Vec<IntPoly> = Vec::new();
    let mut prefix = Vec::new();
    factor_rec(p, 2, &mut prefix, &mut out, &mut cache);
    out
}

fn factor_rec(
    p: &IntPoly,
    lower: u32,
    prefix: &mut Vec<u32>,
    out: &mut Vec<QuantumShape>,
    cache: &mut Vec<IntPoly>,
) {
    if p.is_one() {
        out.push(QuantumShape(prefix.clone()));
        return;
    }
    let deg = p.degree().unwrap_or(0) as u32;
    // a quantum product has constant term 1 and value Π a_i at z = 1
    if deg == 0 || !p.coeffs[0].is_one() {
        return;
    }
    for a in lower..=deg + 1 {
        while cache.len() <= a as usize {
            let k = cache.len() as i64;
            cache.push(if k == 0 { IntPoly::zero() } else { quantum_poly(k).unwrap() });
        }
        let q = cache[a as usize].clone();
        if let Some(rest) = p.div_exact(&q) {
            prefix.push(a);
            factor_rec(&rest, a, prefix, out, cache);
            prefix.pop();
        }
    }
}

/// First `k + 1` coefficients of a power series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SeriesTruncation(pub Vec<BigInt>);

impl SeriesTruncation {
    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    pub fn to_i64s(&self) -> Vec<i64> {
        use num_traits::ToPrimitive;
        self.0.iter().map(|c| c.to_i64().expect("series coefficient fits in i64")).collect()
    }

    /// Product of two truncations of the same order.
    pub fn mul(&self, other: &SeriesTruncation) -> SeriesTruncation {
        let k = self.order().min(other.order());
        let mut out = vec![BigInt::zero(); k + 1];
        for i in 0..=k {
            for j in 0..=k - i {
                out[i + j] += &self.0[i] * &other.0[j];
            }
        }
        SeriesTruncation(out)
    }

    pub fn from_poly(p: &IntPoly, k: usize) -> SeriesTruncation {
        SeriesTruncation((0..=k).map(|i| p.coeff(i)).collect())
    }
}

/// Power series expansion of `numer / denom` through `z^k` by long division.
pub fn truncated_rational(numer: &IntPoly, denom: &IntPoly, k: usize) -> Result<SeriesTruncation> {
    let d0 = denom.coeff(0);
    if d0.is_zero() {
        return Err(Error::InvalidArgument("series denominator vanishes at z = 0".into()));
    }
    let mut out: Vec<BigInt> = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let mut acc = numer.coeff(n);
        for j in 1..=n.min(denom.coeffs.len().saturating_sub(1)) {
            acc -= &denom.coeffs[j] * &out[n - j];
        }
        let (q, r) = acc.div_rem(&d0);
        if !r.is_zero() {
            return Err(Error::InvalidArgument(
                "series expansion leaves the integers; denominator must be ±1 at z = 0".into(),
            ));
        }
        out.push(q);
    }
    Ok(SeriesTruncation(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(multiply(&p(&[1, 1]), &p(&[1, 1, 1])), p(&[1, 2, 2, 1]));
        assert_eq!(multiply(&p(&[1, 2, 2, 1]), &p(&[1])), p(&[1, 2, 2, 1]));
        assert!(multiply(&IntPoly::zero(), &p(&[1, 1])).is_zero());
    }

    #[test]
    fn palindromes() {
        assert!(is_palindromic(&p(&[1, 2, 2, 1])).unwrap());
        assert!(!is_palindromic(&p(&[1, 3, 4, 4, 2])).unwrap());
        assert!(is_palindromic(&p(&[5])).unwrap());
        assert!(is_palindromic(&IntPoly::zero()).is_err());
    }

    #[test]
    fn quantum() {
        assert_eq!(quantum_poly(1).unwrap(), p(&[1]));
        assert_eq!(quantum_poly(4).unwrap(), p(&[1, 1, 1, 1]));
        assert!(quantum_poly(0).is_err());
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(quantum_factorizations(&p(&[1, 2, 2, 1])), vec![QuantumShape(vec![2, 3])]);
        let a3 = p(&[1, 3, 5, 6, 5, 3, 1]);
        assert!(quantum_factorizations(&a3).contains(&QuantumShape(vec![2, 3, 4])));
        assert!(quantum_factorizations(&p(&[1, 3, 4, 4, 2])).is_empty());
        assert_eq!(quantum_factorizations(&IntPoly::one()), vec![QuantumShape(vec![])]);
    }

    #[test]
    fn rational_examples() {
        let s = truncated_rational(&p(&[1, 0, 0, -1]), &p(&[1, -3, 3, -1]), 4).unwrap();
        assert_eq!(s.to_i64s(), vec![1, 3, 6, 9, 12]);
        let g = truncated_rational(&p(&[1]), &p(&[1, -1]), 3).unwrap();
        assert_eq!(g.to_i64s(), vec![1, 1, 1, 1]);
        assert!(truncated_rational(&p(&[1]), &p(&[0, 1]), 2).is_err());
    }

    #[test]
    fn reflect_and_display() {
        assert_eq!(p(&[1, 1]).reflect(3), p(&[0, 0, 1, 1]));
        assert_eq!(format!("{}", p(&[-1, 0, 2])), "-1 + 2z^2");
    }
}
