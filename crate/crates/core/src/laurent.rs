//! Sparse Laurent polynomials with [`Scalar`] coefficients, the closed-form
//! geometric partial sum, and the exact search for roots of the form `q^{-m}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::Scalar;

/// Which formal unit the exponents refer to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LaurentVar {
    /// The group-like generator `K` of the Cartan part.
    K,
    /// The summand variable `T` (a weight-like argument).
    T,
    /// `U = q^{-M}`, the variable of closed-form partial sums.
    U,
}

impl LaurentVar {
    fn symbol(self) -> &'static str {
        match self {
            LaurentVar::K => "K",
            LaurentVar::T => "T",
            LaurentVar::U => "U",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    var: LaurentVar,
    coeffs: BTreeMap<i64, Scalar>,
}

impl LaurentPoly {
    pub fn zero(var: LaurentVar) -> Self {
        LaurentPoly {
            var,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(var: LaurentVar, c: Scalar) -> Self {
        LaurentPoly::monomial(var, c, 0)
    }

    pub fn monomial(var: LaurentVar, c: Scalar, k: i64) -> Self {
        let mut p = LaurentPoly::zero(var);
        p.add_term(k, &c);
        p
    }

    pub fn from_terms(var: LaurentVar, terms: impl IntoIterator<Item = (i64, Scalar)>) -> Self {
        let mut p = LaurentPoly::zero(var);
        for (k, c) in terms {
            p.add_term(k, &c);
        }
        p
    }

    pub fn var(&self) -> LaurentVar {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Scalar {
        self.coeffs.get(&k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn add_term(&mut self, k: i64, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        debug_assert_eq!(self.var, other.var);
        let mut out = LaurentPoly::zero(self.var);
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                out.add_term(i + j, &(a * b));
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> LaurentPoly {
        LaurentPoly::from_terms(self.var, self.coeffs.iter().map(|(k, x)| (*k, x * c)))
    }

    /// Same coefficients, different symbol.
    pub fn retag(&self, var: LaurentVar) -> LaurentPoly {
        LaurentPoly {
            var,
            coeffs: self.coeffs.clone(),
        }
    }

    /// `phi(T) -> phi(T^{-1})`
    pub fn reflect(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.var, self.coeffs.iter().map(|(k, c)| (-k, c.clone())))
    }

    /// `phi(T) -> phi(s T)`
    pub fn substitute_scaled(&self, s: &Scalar) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.var);
        for (k, c) in &self.coeffs {
            out.add_term(*k, &(c * &s.pow(*k)?));
        }
        Ok(out)
    }

    /// Evaluate at a nonzero value (or at any value if there are no
    /// negative exponents).
    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (k, c) in &self.coeffs {
            acc += &(c * &x.pow(*k)?);
        }
        Ok(acc)
    }

    /// Evaluate at `q^e`.
    pub fn eval_q_pow(&self, e: i64) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, c) in &self.coeffs {
            let exp = k.checked_mul(e).expect("exponent overflow");
            acc += &(c * &Scalar::q_pow(exp));
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let sym = self.var.symbol();
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match *k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{sym}")?,
                _ => write!(f, "({c})*{sym}^{k}")?,
            }
        }
        Ok(())
    }
}

/// Closed form of `sum_{j=0}^{M-1} phi(q^{-j} s)` as a Laurent polynomial in
/// `U = q^{-M}`:
///
/// `P(U) = sum_{i != 0} phi_i s^i (1 - U^i) / (1 - q^{-i})`.
///
/// A nonzero constant term of `phi` would contribute `M * phi_0`, which is not
/// Laurent in `q^{-M}`, so it is rejected.
pub fn geometric_partial_sum(phi: &LaurentPoly, s: &Scalar) -> Result<LaurentPoly> {
    if s.is_zero() {
        return Err(Error::ZeroArgument("geometric_partial_sum"));
    }
    if !phi.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let mut out = LaurentPoly::zero(LaurentVar::U);
    for (i, phi_i) in phi.terms() {
        let denom = &Scalar::one() - &Scalar::q_pow(-i);
        let c = &(phi_i * &s.pow(i)?) / &denom;
        out.add_term(0, &c);
        out.add_term(i, &-c);
    }
    Ok(out)
}

/// The finite set `{m : P(q^{-m}) = 0}`.
///
/// After clearing denominators `P(q^{-m})` is `sum_{i,j} c_ij q^{j - i m}`;
/// the top exponent must be hit by two terms with different `i`, so
/// `|m| <= max j - min j`. Every candidate in that window is checked exactly.
pub fn integer_power_roots(p: &LaurentPoly) -> Result<BTreeSet<i64>> {
    if p.is_zero() {
        return Err(Error::IdenticallyZero);
    }
    let mut den = Poly::<BigInt>::one();
    for (_, c) in p.terms() {
        let g = den.gcd(c.denom());
        den = &den * &c.denom().exact_div(&g).expect("gcd divides");
    }
    let rows: Vec<(i64, Poly<BigInt>)> = p
        .terms()
        .map(|(i, c)| {
            let scaled = c * &Scalar::from_poly(den.clone());
            debug_assert!(scaled.denom().is_one());
            (i, scaled.numer().clone())
        })
        .collect();
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (_, n) in &rows {
        for (j, c) in n.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let j = i64::try_from(j).map_err(|_| Error::Overflow)?;
                lo = lo.min(j);
                hi = hi.max(j);
            }
        }
    }
    let spread = hi - lo;
    let mut roots = BTreeSet::new();
    if rows.len() < 2 {
        return Ok(roots);
    }
    for m in -spread..=spread {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (i, n) in &rows {
            let shift = i.checked_mul(m).ok_or(Error::Overflow)?;
            for (j, c) in n.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let e = j as i64 - shift;
                *acc.entry(e).or_insert_with(BigInt::zero) += c;
            }
        }
        if acc.values().all(|c| c.is_zero()) {
            roots.insert(m);
        }
    }
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u_poly(terms: &[(i64, Scalar)]) -> LaurentPoly {
        LaurentPoly::from_terms(LaurentVar::U, terms.iter().cloned())
    }

    #[test]
    fn roots_of_simple_polys() {
        let p = u_poly(&[(1, Scalar::one()), (0, -Scalar::q_pow(-3))]);
        assert_eq!(integer_power_roots(&p).unwrap(), BTreeSet::from([3]));
        let a = u_poly(&[(1, Scalar::one()), (0, -Scalar::q_pow(-1))]);
        let b = u_poly(&[(1, Scalar::one()), (0, -Scalar::q_pow(-4))]);
        assert_eq!(
            integer_power_roots(&a.mul(&b)).unwrap(),
            BTreeSet::from([1, 4])
        );
        let c = u_poly(&[(1, Scalar::one()), (0, Scalar::one())]);
        assert!(integer_power_roots(&c).unwrap().is_empty());
        assert_eq!(
            integer_power_roots(&LaurentPoly::zero(LaurentVar::U)),
            Err(Error::IdenticallyZero)
        );
    }

    #[test]
    fn root_at_zero_and_negative() {
        // U - 1 vanishes at m = 0; U - q^2 at m = -2
        let p = u_poly(&[(1, Scalar::one()), (0, -Scalar::one())]);
        assert_eq!(integer_power_roots(&p).unwrap(), BTreeSet::from([0]));
        let p = u_poly(&[(1, Scalar::one()), (0, -Scalar::q_pow(2))]);
        assert_eq!(integer_power_roots(&p).unwrap(), BTreeSet::from([-2]));
    }

    #[test]
    fn geometric_sum_of_t() {
        let r = Scalar::from_int(3);
        let phi = LaurentPoly::monomial(LaurentVar::T, Scalar::one(), 1);
        let p = geometric_partial_sum(&phi, &r).unwrap();
        // r (1 - U) / (1 - q^{-1})
        let expect = u_poly(&[(0, Scalar::one()), (1, -Scalar::one())])
            .scale(&(&r / &(&Scalar::one() - &Scalar::q_pow(-1))));
        assert_eq!(p, expect);
        assert!(p.eval(&Scalar::one()).unwrap().is_zero());
    }

    #[test]
    fn geometric_sum_rejects_constant_term() {
        let phi = LaurentPoly::constant(LaurentVar::T, Scalar::one());
        assert_eq!(
            geometric_partial_sum(&phi, &Scalar::one()),
            Err(Error::NonzeroConstantTerm)
        );
    }
}
