//! The field `Q(q)` of rational functions in the indeterminate `q`.
//!
//! Elements are kept as `num/den` with `num, den` in `Z[q]`, coprime, and
//! `den` having a positive leading coefficient; zero is `0/1`. Every
//! arithmetic result is put back into this form, so structural equality is
//! field equality.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Coeff, Poly};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc<T> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coeff> RatFunc<T> {
    /// Builds `num/den` in canonical form. `den` must be nonzero.
    pub fn from_parts(num: Poly<T>, den: Poly<T>) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc::zero();
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides"),
                den.exact_div(&g).expect("gcd divides"),
            )
        };
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }

    pub fn from_poly(num: Poly<T>) -> Self {
        RatFunc {
            num,
            den: Poly::one(),
        }
    }

    pub fn from_int(c: i64) -> Self {
        RatFunc::from_poly(Poly::constant(T::from_i64(c).expect("i64 fits")))
    }

    pub fn from_coeff(c: T) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        RatFunc::from_poly(Poly::monomial(T::one(), 1))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let e = usize::try_from(k.unsigned_abs()).expect("exponent fits usize");
        let m = Poly::monomial(T::one(), e);
        if k >= 0 {
            RatFunc::from_poly(m)
        } else {
            RatFunc {
                num: Poly::one(),
                den: m,
            }
        }
    }

    /// `c * q^k`
    pub fn signed_q_pow(c: i64, k: i64) -> Self {
        RatFunc::q_pow(k).scale_int(c)
    }

    pub fn numer(&self) -> &Poly<T> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<T> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let c = T::from_i64(c).expect("i64 fits");
        RatFunc::from_parts(self.num.scale(&c), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroArgument("inverse"));
        }
        let (mut num, mut den) = (self.den.clone(), self.num.clone());
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(RatFunc { num, den })
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = RatFunc::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Quantum bracket `(a - a^{-1}) / (q - q^{-1})`.
    pub fn bracket(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroArgument("bracket"));
        }
        let diff = self - &self.inv()?;
        Ok(&diff / &q_minus_qinv())
    }

    /// `Some((sign, n))` iff `self == sign * q^n`.
    pub fn classify_signed_power(&self) -> Result<Option<(i8, i64)>> {
        if self.is_zero() {
            return Err(Error::ZeroArgument("classify_signed_power"));
        }
        let (Some((cn, kn)), Some((cd, kd))) = (self.num.as_monomial(), self.den.as_monomial())
        else {
            return Ok(None);
        };
        // canonical form forces cd = 1 when both are monomials
        if !cd.is_one() || !cn.abs().is_one() {
            return Ok(None);
        }
        let n = i64::try_from(kn).map_err(|_| Error::Overflow)?
            - i64::try_from(kd).map_err(|_| Error::Overflow)?;
        Ok(Some((if cn.is_negative() { -1 } else { 1 }, n)))
    }

    /// Substitute an integer for `q`; `None` if the denominator vanishes there.
    pub fn eval_int(&self, x: &T) -> Option<(T, T)> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some((self.num.eval(x), d))
        }
    }
}

/// `q - q^{-1}` as `(q^2 - 1)/q`.
pub fn q_minus_qinv<T: Coeff>() -> RatFunc<T> {
    RatFunc {
        num: Poly::new(vec![-T::one(), T::zero(), T::one()]),
        den: Poly::monomial(T::one(), 1),
    }
}

fn poly_fmt<T: Coeff>(p: &Poly<T>, as_denominator: bool) -> String {
    let s = p.to_string();
    let simple = p.term_count() == 1
        && (!as_denominator || p.as_monomial().is_some_and(|(c, k)| c.is_one() || k == 0));
    if simple && !(as_denominator && s.starts_with('-')) {
        s
    } else {
        format!("({s})")
    }
}

impl<T: Coeff> fmt::Display for RatFunc<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(
            f,
            "{}/{}",
            poly_fmt(&self.num, false),
            poly_fmt(&self.den, true)
        )
    }
}

impl<T: Coeff> Zero for RatFunc<T> {
    fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Coeff> One for RatFunc<T> {
    fn one() -> Self {
        RatFunc {
            num: Poly::one(),
            den: Poly::one(),
        }
    }
}

impl<T: Coeff> Add for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn add(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            return RatFunc::from_parts(num, self.den.clone());
        }
        if rhs.den.is_one() {
            // gcd(a + c*b, b) = gcd(a, b) = 1
            let num = &self.num + &(&rhs.num * &self.den);
            return RatFunc {
                num,
                den: self.den.clone(),
            };
        }
        if self.den.is_one() {
            let num = &rhs.num + &(&self.num * &rhs.den);
            return RatFunc {
                num,
                den: rhs.den.clone(),
            };
        }
        let g = self.den.gcd(&rhs.den);
        let bg = self.den.exact_div(&g).expect("gcd divides");
        let dg = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &dg) + &(&rhs.num * &bg);
        let den = &self.den * &dg;
        RatFunc::from_parts(num, den)
    }
}

impl<T: Coeff> Neg for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn neg(self) -> RatFunc<T> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl<T: Coeff> Sub for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn sub(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        self + &(-rhs)
    }
}

impl<T: Coeff> Mul for &RatFunc<T> {
    type Output = RatFunc<T>;
    fn mul(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc {
                num: &self.num * &rhs.num,
                den: Poly::one(),
            };
        }
        // cross-cancel: a/b * c/d with gcd(a,d), gcd(c,b)
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let c = rhs.num.exact_div(&g2).expect("gcd divides");
        let b = self.den.exact_div(&g2).expect("gcd divides");
        let (mut num, mut den) = (&a * &c, &b * &d);
        if den.leading_coeff().is_negative() {
            num = -num;
            den = -den;
        }
        RatFunc { num, den }
    }
}

impl<T: Coeff> Div for &RatFunc<T> {
    type Output = RatFunc<T>;
    /// Panics on division by zero; use [`RatFunc::inv`] for a checked inverse.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RatFunc<T>) -> RatFunc<T> {
        self * &rhs.inv().expect("division by zero in Q(q)")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for RatFunc<T> {
            type Output = RatFunc<T>;
            fn $m(self, rhs: RatFunc<T>) -> RatFunc<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Coeff> $tr<&RatFunc<T>> for RatFunc<T> {
            type Output = RatFunc<T>;
            fn $m(self, rhs: &RatFunc<T>) -> RatFunc<T> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl<T: Coeff> Neg for RatFunc<T> {
    type Output = RatFunc<T>;
    fn neg(self) -> RatFunc<T> {
        -&self
    }
}

impl<T: Coeff> AddAssign<&RatFunc<T>> for RatFunc<T> {
    fn add_assign(&mut self, rhs: &RatFunc<T>) {
        *self = &*self + rhs;
    }
}

impl<T: Coeff> SubAssign<&RatFunc<T>> for RatFunc<T> {
    fn sub_assign(&mut self, rhs: &RatFunc<T>) {
        *self = &*self - rhs;
    }
}

impl<T: Coeff> MulAssign<&RatFunc<T>> for RatFunc<T> {
    fn mul_assign(&mut self, rhs: &RatFunc<T>) {
        *self = &*self * rhs;
    }
}
