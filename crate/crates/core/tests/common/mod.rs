//! Shared oracles for the integration tests. Nothing here calls the rewrite
//! engine: the Verma action is rebuilt from the closed commutation formulas
//! for `[E, F^n Y^m]` and `[X, F^n Y^m]` applied to `v_r`.

#![allow(dead_code)]

use std::collections::HashMap;

use num_traits::One;
use qoscillator::pbw::{CenterPolynomial, PbwElement};
use qoscillator::scalar::q_minus_qinv;
use qoscillator::verma::{VermaElement, Weight};
use qoscillator::Scalar;

pub fn q(k: i64) -> Scalar {
    Scalar::q_pow(k)
}

pub fn int(k: i64) -> Scalar {
    Scalar::from_int(k)
}

/// `<x> = (x - x^{-1}) / (q - q^{-1})`, computed from scratch.
pub fn brac(x: &Scalar) -> Scalar {
    let d = &q(1) - &q(-1);
    &(x - &x.inv().unwrap()) / &d
}

/// The Verma module `Z(r)` acted on through closed formulas only.
pub struct FormulaVerma {
    pub p: CenterPolynomial,
    pub r: Weight,
    c0_on_y: HashMap<u32, VermaElement>,
}

impl FormulaVerma {
    pub fn new(p: &CenterPolynomial, r: &Weight) -> Self {
        FormulaVerma {
            p: p.clone(),
            r: r.clone(),
            c0_on_y: HashMap::new(),
        }
    }

    fn rv(&self) -> &Scalar {
        self.r.value()
    }

    pub fn zero(&self) -> VermaElement {
        VermaElement::zero(&self.r)
    }

    pub fn basis(&self, n: u32, m: u32) -> VermaElement {
        VermaElement::basis(&self.r, n, m)
    }

    pub fn f(&self, v: &VermaElement) -> VermaElement {
        v.shift_fy(1, 0)
    }

    pub fn y(&self, v: &VermaElement) -> VermaElement {
        v.shift_fy(0, 1)
    }

    pub fn k_pow(&self, v: &VermaElement, c: i64) -> VermaElement {
        let mut out = self.zero();
        for (&(n, m), x) in v.terms() {
            let ev = &q(-2 * n as i64 - m as i64) * self.rv();
            out.add_term(n, m, &(x * &ev.pow(c).unwrap()));
        }
        out
    }

    /// `F^a` applied to the coefficient vector `w`.
    fn f_pow(&self, w: &VermaElement, a: u32) -> VermaElement {
        w.shift_fy(a, 0)
    }

    /// `C_0 Y^k v_r`.
    pub fn c0_y(&mut self, k: u32) -> VermaElement {
        if let Some(v) = self.c0_on_y.get(&k) {
            return v.clone();
        }
        let base = self.basis(0, k);
        let mut w = self.zero();
        let coeffs = self.p.coeffs().to_vec();
        for c in coeffs.iter().rev() {
            w = self.casimir(&w).add(&base.scale(c));
        }
        self.c0_on_y.insert(k, w.clone());
        w
    }

    /// `C_0 u`, using that `C_0` commutes with `F`.
    pub fn c0(&mut self, u: &VermaElement) -> VermaElement {
        let mut out = self.zero();
        for (&(n, m), x) in u.terms() {
            let w = self.c0_y(m);
            out = out.add(&self.f_pow(&w, n).scale(x));
        }
        out
    }

    /// `C = FE + (qK + q^{-1}K^{-1}) / (q - q^{-1})^2`.
    pub fn casimir(&mut self, u: &VermaElement) -> VermaElement {
        let d = q_minus_qinv::<num_bigint::BigInt>();
        let d2 = &d * &d;
        let eu = self.e(u);
        let fe = self.f(&eu);
        let cart = self
            .k_pow(u, 1)
            .scale(&q(1))
            .add(&self.k_pow(u, -1).scale(&q(-1)))
            .scale(&d2.inv().unwrap());
        fe.add(&cart)
    }

    /// `sum_j w_j Y^j C_0 Y^{m-1-j} v` style sums: `Y^j (C_0 Y^k v)`.
    fn y_c0_y(&mut self, j: u32, k: u32) -> VermaElement {
        self.c0_y(k).shift_fy(0, j)
    }

    pub fn e(&mut self, v: &VermaElement) -> VermaElement {
        let mut out = self.zero();
        let r = self.rv().clone();
        for (&(n, m), x) in v.terms() {
            let mut t = self.zero();
            if m >= 2 {
                for j in 0..=m - 2 {
                    let w = self.y_c0_y(j, m - 2 - j);
                    t = t.sub(&w.scale(&brac(&q(j as i64 + 1))));
                }
                t = self.f_pow(&t, n);
            }
            if n >= 1 {
                let c = &brac(&q(n as i64)) * &brac(&(&q(1 - m as i64 - n as i64) * &r));
                t.add_term(n - 1, m, &c);
            }
            out = out.add(&t.scale(x));
        }
        out
    }

    pub fn x(&mut self, v: &VermaElement) -> VermaElement {
        let mut out = self.zero();
        let rinv = self.rv().inv().unwrap();
        for (&(n, m), x) in v.terms() {
            let mut t = self.zero();
            for j in 0..m {
                let w = self.y_c0_y(j, m - 1 - j);
                t = t.sub(&w.scale(&q(j as i64)));
            }
            t = self.f_pow(&t, n);
            if n >= 1 {
                let c = &(&q(m as i64 + n as i64 - 1) * &rinv) * &brac(&q(n as i64));
                t.add_term(n - 1, m + 1, &(-c));
            }
            out = out.add(&t.scale(x));
        }
        out
    }

    /// Applies a PBW element, rightmost factor first.
    pub fn apply(&mut self, a: &PbwElement, v: &VermaElement) -> VermaElement {
        let mut out = self.zero();
        for (m, c) in a.terms() {
            let mut w = v.clone();
            for _ in 0..m.e {
                w = self.e(&w);
            }
            for _ in 0..m.d {
                w = self.x(&w);
            }
            w = self.k_pow(&w, m.c as i64);
            w = w.shift_fy(m.a, m.b);
            out = out.add(&w.scale(c));
        }
        out
    }
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub mod arb {
    use num_bigint::BigInt;
    use proptest::prelude::*;
    use qoscillator::pbw::CenterPolynomial;
    use qoscillator::rewrite::{Letter, Word};
    use qoscillator::verma::Weight;
    use qoscillator::{QPoly, Scalar};

    pub fn poly(max_len: usize, bound: i64) -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-bound..=bound, 0..=max_len)
            .prop_map(|v| QPoly::new(v.into_iter().map(BigInt::from).collect()))
    }

    pub fn nonzero_poly(max_len: usize, bound: i64) -> impl Strategy<Value = QPoly> {
        poly(max_len, bound).prop_filter("nonzero", |p| !p.is_zero())
    }

    /// `q^k num / den` with small integer polynomials.
    pub fn scalar() -> impl Strategy<Value = Scalar> {
        (poly(3, 3), nonzero_poly(3, 3), -2i64..=2)
            .prop_map(|(n, d, k)| &Scalar::from_parts(n, d) * &Scalar::q_pow(k))
    }

    pub fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
        scalar().prop_filter("nonzero", |s| !s.is_zero())
    }

    /// A weight that is not of the form `+-q^n`.
    pub fn generic_weight() -> impl Strategy<Value = Weight> {
        (nonzero_poly(3, 3), nonzero_poly(2, 3), -2i64..=2)
            .prop_map(|(n, d, k)| &Scalar::from_parts(n, d) * &Scalar::q_pow(k))
            .prop_filter_map("generic", |s| {
                let w = Weight::new(s).ok()?;
                w.classify().is_none().then_some(w)
            })
    }

    /// `+-q^n` with `|n|` small.
    pub fn integral_weight() -> impl Strategy<Value = Weight> {
        (prop::bool::ANY, -4i64..=6)
            .prop_map(|(neg, n)| Weight::signed_q_pow(if neg { -1 } else { 1 }, n))
    }

    /// Nonzero polynomial in `C` of degree at most `max_deg` whose
    /// coefficients are `+-q^k` or small integers.
    pub fn center_poly(max_deg: usize) -> impl Strategy<Value = CenterPolynomial> {
        let coeff = prop_oneof![
            Just(Scalar::from_int(0)),
            (-3i64..=3).prop_map(Scalar::from_int),
            (-2i64..=2).prop_map(Scalar::q_pow),
        ];
        prop::collection::vec(coeff, 1..=max_deg + 1)
            .prop_map(CenterPolynomial::new)
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    pub fn letter() -> impl Strategy<Value = Letter> {
        prop::sample::select(Letter::ALL.to_vec())
    }

    pub fn word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(letter(), 0..=max_len).prop_map(Word)
    }
}

/// Composition multiplicities of `Z(r)` read off from characters through
/// weight index `n_max`: repeatedly strip the simple character at the
/// highest remaining weight. Returns `(k, multiplicity)` with factor
/// weight `q^{-k} r`.
pub fn peel_multiplicities(p: &CenterPolynomial, r: &Weight, n_max: usize) -> Vec<(i64, i64)> {
    use qoscillator::verma::SimpleCharacter;
    let mut rem: Vec<i64> = (0..=n_max).map(|n| (n / 2 + 1) as i64).collect();
    let mut out = Vec::new();
    for k in 0..=n_max {
        let m = rem[k];
        if m == 0 {
            continue;
        }
        let mut ch = SimpleCharacter::new(p, &r.shift(-(k as i64)));
        for (j, slot) in rem.iter_mut().enumerate().take(n_max + 1).skip(k) {
            *slot -= m * ch.dim((j - k) as u32).unwrap() as i64;
        }
        out.push((k as i64, m));
    }
    out
}
