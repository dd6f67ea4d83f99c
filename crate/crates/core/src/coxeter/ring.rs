//! Exact scalar rings for the geometric representation.
//!
//! Crystallographic systems use plain integers. Everything else works in
//! ℤ[c] with c = 2cos(π/L), stored as coefficient vectors in the power basis
//! 1, c, ..., c^(d-1) and reduced by the minimal polynomial of c.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub(crate) trait Ring: Send + Sync + Debug {
    type E: Clone + PartialEq + Eq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn lift(&self, v: i64) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn signum(&self, a: &Self::E) -> Ordering;
    /// Coefficients in the power basis of the generator.
    fn coeffs(&self, a: &Self::E) -> Vec<i64>;
}

#[derive(Debug, Clone)]
pub(crate) struct IntRing;

impl Ring for IntRing {
    type E = i64;

    fn zero(&self) -> i64 {
        0
    }
    fn lift(&self, v: i64) -> i64 {
        v
    }
    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("root coordinate overflow")
    }
    fn sub(&self, a: &i64, b: &i64) -> i64 {
        a.checked_sub(*b).expect("root coordinate overflow")
    }
    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("root coordinate overflow")
    }
    fn neg(&self, a: &i64) -> i64 {
        -a
    }
    fn is_zero(&self, a: &i64) -> bool {
        *a == 0
    }
    fn signum(&self, a: &i64) -> Ordering {
        a.cmp(&0)
    }
    fn coeffs(&self, a: &i64) -> Vec<i64> {
        vec![*a]
    }
}

/// ℤ[2cos(π/L)].
#[derive(Debug, Clone)]
pub(crate) struct CycloRing {
    l: u32,
    /// Monic minimal polynomial of c, low degree first, length d + 1.
    minpoly: Vec<i64>,
    approx: f64,
    /// Rational interval isolating c among the roots of `minpoly`.
    lo: BigRational,
    hi: BigRational,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CycloRing {
    pub(crate) fn new(l: u32) -> CycloRing {
        assert!(l >= 4, "cyclotomic tier only needed for L >= 4");
        let n = 2 * l;
        let roots: Vec<f64> = (1..l)
            .filter(|&k| gcd(k, n) == 1)
            .map(|k| 2.0 * (std::f64::consts::PI * k as f64 / l as f64).cos())
            .collect();
        let mut poly = vec![1.0f64];
        for r in &roots {
            let mut next = vec![0.0; poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * r;
            }
            poly = next;
        }
        let minpoly: Vec<i64> = poly.iter().map(|c| c.round() as i64).collect();
        for (c, r) in poly.iter().zip(&minpoly) {
            assert!((c - *r as f64).abs() < 1e-6, "minimal polynomial of 2cos(pi/{l}) not integral");
        }
        let approx = roots[0];
        let sep = roots
            .iter()
            .skip(1)
            .map(|r| (r - approx).abs())
            .fold(f64::INFINITY, f64::min);
        let delta = if sep.is_finite() { sep / 4.0 } else { 0.5 };
        let lo = BigRational::from_float(approx - delta).unwrap();
        let hi = BigRational::from_float(approx + delta).unwrap();
        let ring = CycloRing { l, minpoly, approx, lo, hi };
        assert_ne!(
            ring.minpoly_sign_at(&ring.lo),
            ring.minpoly_sign_at(&ring.hi),
            "isolating interval for 2cos(pi/{l}) is wrong"
        );
        ring
    }

    pub(crate) fn l(&self) -> u32 {
        self.l
    }

    pub(crate) fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    /// The generator c itself.
    pub(crate) fn gen(&self) -> Vec<i64> {
        let mut v = vec![0; self.degree()];
        if self.degree() > 1 {
            v[1] = 1;
        } else {
            v[0] = -self.minpoly[0];
        }
        v
    }

    /// 2cos(kπ/L) as a ring element, via V_0 = 2, V_1 = c, V_{j+1} = c V_j - V_{j-1}.
    pub(crate) fn two_cos_multiple(&self, k: u32) -> Vec<i64> {
        let c = self.gen();
        let mut prev = self.lift(2);
        if k == 0 {
            return prev;
        }
        let mut cur = c.clone();
        for _ in 1..k {
            let next = self.sub(&self.mul(&c, &cur), &prev);
            prev = cur;
            cur = next;
        }
        cur
    }

    fn minpoly_sign_at(&self, x: &BigRational) -> Ordering {
        let mut acc = BigRational::zero();
        for c in self.minpoly.iter().rev() {
            acc = acc * x + BigRational::from_integer(BigInt::from(*c));
        }
        acc.numer().sign().cmp_zero()
    }

    fn exact_signum(&self, a: &[i64]) -> Ordering {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let lo_sign = self.minpoly_sign_at(&lo);
        loop {
            let (vlo, vhi) = eval_interval(a, &lo, &hi);
            if vlo.is_positive() {
                return Ordering::Greater;
            }
            if vhi.is_negative() {
                return Ordering::Less;
            }
            let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
            let s = self.minpoly_sign_at(&mid);
            if s == Ordering::Equal {
                // only possible when c is rational
                let v = eval_point(a, &mid);
                return v.numer().sign().cmp_zero();
            }
            if s == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
}

trait SignCmp {
    fn cmp_zero(&self) -> Ordering;
}

impl SignCmp for num_bigint::Sign {
    fn cmp_zero(&self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}

fn eval_point(a: &[i64], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in a.iter().rev() {
        acc = acc * x + BigRational::from_integer(BigInt::from(*c));
    }
    acc
}

/// Interval Horner evaluation of `a` over `[lo, hi]`.
fn eval_interval(a: &[i64], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut alo = BigRational::zero();
    let mut ahi = BigRational::zero();
    for c in a.iter().rev() {
        let products = [&alo * lo, &alo * hi, &ahi * lo, &ahi * hi];
        let mut pmin = products[0].clone();
        let mut pmax = products[0].clone();
        for p in &products[1..] {
            if *p < pmin {
                pmin = p.clone();
            }
            if *p > pmax {
                pmax = p.clone();
            }
        }
        let cc = BigRational::from_integer(BigInt::from(*c));
        alo = pmin + &cc;
        ahi = pmax + cc;
    }
    (alo, ahi)
}

impl Ring for CycloRing {
    type E = Vec<i64>;

    fn zero(&self) -> Vec<i64> {
        vec![0; self.degree()]
    }
    fn lift(&self, v: i64) -> Vec<i64> {
        let mut out = self.zero();
        out[0] = v;
        out
    }
    fn add(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect("overflow")).collect()
    }
    fn sub(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).expect("overflow")).collect()
    }
    fn mul(&self, a: &Vec<i64>, b: &Vec<i64>) -> Vec<i64> {
        let d = self.degree();
        let mut conv = vec![0i64; 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                conv[i + j] = conv[i + j]
                    .checked_add(x.checked_mul(*y).expect("overflow"))
                    .expect("overflow");
            }
        }
        for i in (d..conv.len()).rev() {
            let t = conv[i];
            if t == 0 {
                continue;
            }
            conv[i] = 0;
            for j in 0..d {
                conv[i - d + j] -= t * self.minpoly[j];
            }
        }
        conv.truncate(d);
        conv
    }
    fn neg(&self, a: &Vec<i64>) -> Vec<i64> {
        a.iter().map(|x| -x).collect()
    }
    fn is_zero(&self, a: &Vec<i64>) -> bool {
        a.iter().all(|x| *x == 0)
    }
    fn signum(&self, a: &Vec<i64>) -> Ordering {
        if self.is_zero(a) {
            return Ordering::Equal;
        }
        let mut v = 0.0f64;
        let mut bound = 0.0f64;
        let mut pow = 1.0f64;
        for c in a {
            v += *c as f64 * pow;
            bound += (*c as f64).abs() * pow.abs();
            pow *= self.approx;
        }
        if v.abs() > bound * 1e-9 {
            return if v > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
        self.exact_signum(a)
    }
    fn coeffs(&self, a: &Vec<i64>) -> Vec<i64> {
        a.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio() {
        let r = CycloRing::new(5);
        assert_eq!(r.minpoly, vec![-1, -1, 1]);
        let c = r.gen();
        // c^2 = c + 1
        assert_eq!(r.mul(&c, &c), vec![1, 1]);
        // c - 1 > 0 but c - 2 < 0
        assert_eq!(r.signum(&vec![-1, 1]), Ordering::Greater);
        assert_eq!(r.signum(&vec![-2, 1]), Ordering::Less);
    }

    #[test]
    fn heptagon() {
        let r = CycloRing::new(7);
        assert_eq!(r.degree(), 3);
        // 2cos(7π/7) = -2
        assert_eq!(r.two_cos_multiple(7), r.lift(-2));
        // 2cos(π/7) 2cos(π/7) = 2 + 2cos(2π/7)
        let c = r.gen();
        assert_eq!(r.mul(&c, &c), r.add(&r.lift(2), &r.two_cos_multiple(2)));
    }

    #[test]
    fn exact_sign_fallback() {
        let r = CycloRing::new(5);
        // a huge but exactly cancelling combination still resolves
        let big = 1_000_000_007i64;
        let a = vec![-big, big];
        assert_eq!(r.exact_signum(&a), Ordering::Greater);
        assert_eq!(r.exact_signum(&[1, -1]), Ordering::Less);
    }
}
