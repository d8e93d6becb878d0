//! Exact root sets of `alpha`, the sets `S(r)` and `T(r)`, and the bounded
//! semisimplicity test.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::Result;
use crate::laurent::{geometric_partial_sum, integer_power_roots, LaurentPoly, LaurentVar};
use crate::pbw::CenterPolynomial;
use crate::repn::composition_series;
use crate::scalar::q_minus_qinv;
use crate::verma::{alpha, Weight};
use crate::Scalar;

/// `g(T) = <T> p((T + T^{-1}) / (q - q^{-1})^2)`, so that
/// `<q x> c_{0,x} = g(q x)`.
pub fn alpha_summand(p: &CenterPolynomial) -> LaurentPoly {
    let d = q_minus_qinv::<num_bigint::BigInt>();
    let s = (&d * &d).inv().expect("nonzero");
    let u = LaurentPoly::from_terms(LaurentVar::T, [(1, s.clone()), (-1, s)]);
    let mut h = LaurentPoly::zero(LaurentVar::T);
    for c in p.coeffs().iter().rev() {
        h = h
            .mul(&u)
            .add(&LaurentPoly::constant(LaurentVar::T, c.clone()));
    }
    let dinv = d.inv().expect("nonzero");
    let br = LaurentPoly::from_terms(LaurentVar::T, [(1, dinv.clone()), (-1, -dinv)]);
    h.mul(&br)
}

/// `alpha_{r, M+1}` as a Laurent polynomial in `U = q^{-M}`.
pub fn alpha_closed_form(p: &CenterPolynomial, r: &Weight) -> Result<LaurentPoly> {
    geometric_partial_sum(&alpha_summand(p), r.shift(1).value())
}

/// `alpha_{q^n r, n+1}` as a Laurent polynomial in `U = q^{-n}`.
pub fn upward_closed_form(p: &CenterPolynomial, r: &Weight) -> Result<LaurentPoly> {
    // sum_{k=1}^n g(q^{k+1} r) = sum_{j=0}^{n-1} g~(q^{-j} s), g~(T) = g(1/T), s = 1/(q^2 r)
    geometric_partial_sum(&alpha_summand(p).reflect(), r.shift(2).inv().value())
}

/// `{n >= 1 : alpha_{r,n+1} = 0}`.
pub fn alpha_root_set(p: &CenterPolynomial, r: &Weight) -> Result<BTreeSet<i64>> {
    p.require_nonzero()?;
    let roots = integer_power_roots(&alpha_closed_form(p, r)?)?;
    Ok(roots.into_iter().filter(|n| *n >= 1).collect())
}

/// The largest `n >= 0` with `alpha_{q^n r, n+1} = 0`.
pub fn max_up_shift(p: &CenterPolynomial, r: &Weight) -> Result<i64> {
    p.require_nonzero()?;
    let roots = integer_power_roots(&upward_closed_form(p, r)?)?;
    Ok(roots.into_iter().filter(|n| *n >= 0).max().unwrap_or(0))
}

/// `S(r) = {r_0} u {q^{-m} r_0 : alpha_{r_0, m+1} = 0}` with `r_0 = q^N r`.
pub fn block_s(p: &CenterPolynomial, r: &Weight) -> Result<BTreeSet<WeightKey>> {
    let n = max_up_shift(p, r)?;
    let r0 = r.shift(n);
    let mut out = BTreeSet::new();
    out.insert(WeightKey::new(&r0));
    for m in alpha_root_set(p, &r0)? {
        out.insert(WeightKey::new(&r0.shift(-m)));
    }
    Ok(out)
}

/// A weight ordered by its canonical text, so that sets print
/// deterministically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightKey {
    text: String,
    weight: Weight,
}

impl WeightKey {
    pub fn new(w: &Weight) -> Self {
        WeightKey {
            text: w.to_string(),
            weight: w.clone(),
        }
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }
}

impl Ord for WeightKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.text.cmp(&other.text)
    }
}

impl PartialOrd for WeightKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for WeightKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockEdge {
    pub from: Weight,
    pub to: Weight,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub r: Weight,
    pub r0: Weight,
    pub n: i64,
    pub s: BTreeSet<WeightKey>,
    pub t: BTreeSet<WeightKey>,
    pub edges: Vec<BlockEdge>,
    /// Subquotients found outside `S(r)`; always empty when the theory holds.
    pub outside_s: Vec<BlockEdge>,
}

/// The connected component of `r` in the graph on `S(r)` whose edges join
/// `t` and `s` when `V(s)` is a composition factor of `Z(t)`.
pub fn block_t(p: &CenterPolynomial, r: &Weight) -> Result<BlockReport> {
    let n = max_up_shift(p, r)?;
    let r0 = r.shift(n);
    let s = block_s(p, r)?;
    let mut edges = Vec::new();
    let mut outside_s = Vec::new();
    let mut adj: BTreeMap<WeightKey, BTreeSet<WeightKey>> = BTreeMap::new();
    for t in &s {
        let series = composition_series(p, t.weight())?;
        let mut seen = BTreeSet::new();
        for f in &series.factors {
            let key = WeightKey::new(&f.weight);
            if key == *t || !seen.insert(key.clone()) {
                continue;
            }
            let edge = BlockEdge {
                from: t.weight().clone(),
                to: f.weight.clone(),
                reason: format!("V({}) is a composition factor of Z({})", f.weight, t),
            };
            if s.contains(&key) {
                adj.entry(t.clone()).or_default().insert(key.clone());
                adj.entry(key).or_default().insert(t.clone());
                edges.push(edge);
            } else {
                outside_s.push(edge);
            }
        }
    }
    let start = WeightKey::new(r);
    let mut comp = BTreeSet::new();
    comp.insert(start.clone());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in adj.get(&x).into_iter().flatten() {
            if comp.insert(y.clone()) {
                queue.push_back(y.clone());
            }
        }
    }
    let edges = edges
        .into_iter()
        .filter(|e| comp.contains(&WeightKey::new(&e.from)))
        .collect();
    Ok(BlockReport {
        r: r.clone(),
        r0,
        n,
        s,
        t: comp,
        edges,
        outside_s,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemisimplicityWitness {
    pub eps: i8,
    pub n: i64,
    /// Values of `m` in `[2, n+1]` with `alpha_{r,m} = 0`.
    pub roots: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct SemisimplicityReport {
    pub n_max: i64,
    pub pass: bool,
    pub failures: Vec<SemisimplicityWitness>,
    /// Weights `eps q^n` with at least one root, i.e. with a
    /// finite-dimensional simple quotient.
    pub finite_dimensional: Vec<(i8, i64)>,
}

impl SemisimplicityReport {
    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn note(&self) -> String {
        format!(
            "bounded check over r = +-q^n with 0 <= n <= {}; the criterion quantifies over all n",
            self.n_max
        )
    }
}

/// For every `r = eps q^n`, `0 <= n <= n_max`, counts the roots
/// `m in [2, n+1]` of `alpha_{r,m}`; passes when no count exceeds one.
pub fn semisimplicity_check(p: &CenterPolynomial, n_max: i64) -> Result<SemisimplicityReport> {
    p.require_nonzero()?;
    let mut failures = Vec::new();
    let mut finite = Vec::new();
    for eps in [1i8, -1] {
        for n in 0..=n_max {
            let r = Weight::signed_q_pow(eps, n);
            let roots: Vec<i64> = (2..=n + 1).filter(|m| alpha(p, &r, *m).is_zero()).collect();
            if !roots.is_empty() {
                finite.push((eps, n));
            }
            if roots.len() > 1 {
                failures.push(SemisimplicityWitness { eps, n, roots });
            }
        }
    }
    Ok(SemisimplicityReport {
        n_max,
        pass: failures.is_empty(),
        failures,
        finite_dimensional: finite,
    })
}

/// The polynomial of the worked example,
/// `p(C) = (q - q^{-1})^3 C - (q - q^{-1})(q^{-2} + q^2)`.
pub fn example_polynomial() -> CenterPolynomial {
    let d = q_minus_qinv::<num_bigint::BigInt>();
    let c1 = &(&d * &d) * &d;
    let c0 = -(&d * &(&Scalar::q_pow(-2) + &Scalar::q_pow(2)));
    CenterPolynomial::new(vec![c0, c1])
}
