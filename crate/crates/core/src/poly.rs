//! Dense univariate polynomials in `q` with coefficients in an integer ring.
//!
//! The ring is generic through [`Coeff`]; the library instantiates it with
//! `BigInt`, tests also run the arithmetic over `i64` for small inputs.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Integer-like coefficient ring: a GCD domain with a sign.
pub trait Coeff:
    Clone + Eq + Hash + fmt::Debug + fmt::Display + Integer + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> Coeff for T where
    T: Clone
        + Eq
        + Hash
        + fmt::Debug
        + fmt::Display
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
{
}

/// `coeffs[k]` is the coefficient of `q^k`; no trailing zeros are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    /// `c * q^k`
    pub fn monomial(c: T, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Largest `k` with `q^k` dividing `self` (0 for the zero polynomial).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    /// The single term `(c, k)` if `self = c * q^k`.
    pub fn as_monomial(&self) -> Option<(T, usize)> {
        let v = self.valuation();
        if !self.is_zero() && v + 1 == self.coeffs.len() {
            Some((self.coeffs[v].clone(), v))
        } else {
            None
        }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `q^k`; `q^k` must divide `self`.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.is_zero() || self.valuation() >= k);
        Poly {
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &T) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|x| x.clone() / c.clone()).collect(),
        }
    }

    /// Non-negative gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> T {
        let mut g = T::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        if c.is_one() {
            self.clone()
        } else {
            self.div_scalar(&c)
        }
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Pseudo-remainder of `self` by `divisor` (up to a constant factor).
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let db = divisor.degree().expect("pseudo_rem by zero");
        let lb = divisor.leading_coeff();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading_coeff();
            let g = lr.gcd(&lb);
            let (mr, mb) = (lb.clone() / g.clone(), lr / g);
            let mut coeffs: Vec<T> = r.coeffs.iter().map(|c| c.clone() * mr.clone()).collect();
            let off = dr - db;
            for (k, c) in divisor.coeffs.iter().enumerate() {
                coeffs[k + off] = coeffs[k + off].clone() - c.clone() * mb.clone();
            }
            r = Poly::new(coeffs);
        }
        r
    }

    /// `Some(self / divisor)` when the division is exact in the integer ring.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        let db = divisor.degree()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some((c, k)) = divisor.as_monomial() {
            if self.valuation() < k {
                return None;
            }
            if self.coeffs.iter().any(|x| !x.is_multiple_of(&c)) {
                return None;
            }
            return Some(self.shift_down(k).div_scalar(&c));
        }
        let lb = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        let da = self.degree()?;
        if da < db {
            return None;
        }
        let mut quot = vec![T::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = rem[k + db].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(&lb);
            if !r.is_zero() {
                return None;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - qk.clone() * c.clone();
            }
            quot[k] = qk;
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Poly::new(quot))
        } else {
            None
        }
    }

    /// Greatest common divisor in `Z[q]`, normalised to a positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.sign_normalized();
        }
        if other.is_zero() {
            return self.sign_normalized();
        }
        let v = self.valuation().min(other.valuation());
        let a = self.shift_down(self.valuation());
        let b = other.shift_down(other.valuation());
        let c = a.content().gcd(&b.content());
        let mut pa = a.primitive_part();
        let mut pb = b.primitive_part();
        let g = if pa.degree() == Some(0) || pb.degree() == Some(0) {
            Poly::one()
        } else if pa == pb {
            pa
        } else {
            loop {
                if pa.degree() < pb.degree() {
                    std::mem::swap(&mut pa, &mut pb);
                }
                let r = pa.pseudo_rem(&pb);
                if r.is_zero() {
                    break pb;
                }
                if r.degree() == Some(0) {
                    break Poly::one();
                }
                pa = pb;
                pb = r.primitive_part();
            }
        };
        g.primitive_part().scale(&c).shift_up(v)
    }

    fn sign_normalized(&self) -> Self {
        if self.leading_coeff().is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Renders the polynomial in `var`, highest degree first, e.g. `2*q^3-q+1`.
    pub fn fmt_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let power = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}*{power}"));
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_in("q"))
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (k, c) in short.coeffs.iter().enumerate() {
            coeffs[k] = coeffs[k].clone() + c.clone();
        }
        Poly::new(coeffs)
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            coeffs.push(self.coeff(k) - rhs.coeff(k));
        }
        Poly::new(coeffs)
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Coeff> Zero for Poly<T> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coeff> One for Poly<T> {
    fn one() -> Self {
        Poly::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(c: &[i64]) -> Poly<i64> {
        Poly::new(c.to_vec())
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 1]); // q+1
        let b = p(&[-1, 1]); // q-1
        let c = p(&[1, 0, 1]); // q^2+1
        let g = (&a * &c).gcd(&(&b * &c));
        assert_eq!(g, c);
        let g = a.scale(&6).gcd(&b.scale(&4));
        assert_eq!(g, p(&[2]));
        assert_eq!(p(&[0, 0, 3]).gcd(&p(&[0, 6, 6])), p(&[0, 3]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]);
        let b = p(&[-2, 0, 3]);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&a), Some(b.clone()));
        assert_eq!(prod.exact_div(&p(&[1, 2])), None);
        assert_eq!(p(&[0, 4, 8]).exact_div(&p(&[0, 4])), Some(p(&[1, 2])));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 0, 2]).to_string(), "2*q^3-q+1");
        assert_eq!(p(&[0, -1]).to_string(), "-q");
        assert_eq!(Poly::<i64>::zero().to_string(), "0");
    }

    #[test]
    fn bigint_instance_agrees() {
        let a: Poly<BigInt> = Poly::new(vec![BigInt::from(3), BigInt::from(-5), BigInt::from(1)]);
        let b: Poly<BigInt> = Poly::new(vec![BigInt::from(-1), BigInt::from(1)]);
        let g = (&a * &b).gcd(&(&b * &b));
        assert_eq!(g, b);
    }
}
