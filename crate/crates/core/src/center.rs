//! Bounded centralizer computation: elements of a finite PBW span that
//! commute with every generator.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::RowEchelon;
use crate::pbw::{commutator, CenterPolynomial, PbwElement, PbwMonomial};
use crate::rewrite::Letter;
use crate::Scalar;

pub const DEFAULT_SPAN_LIMIT: usize = 200;

/// Bounds on `F^a Y^b K^c X^d E^e`, as `(a, b, |c|, d, e)`.
#[derive(Clone, Debug)]
pub struct CentralizerQuery {
    pub p: CenterPolynomial,
    pub bounds: [u32; 5],
    pub span_limit: usize,
}

impl CentralizerQuery {
    pub fn new(p: CenterPolynomial, bounds: [u32; 5]) -> Self {
        CentralizerQuery {
            p,
            bounds,
            span_limit: DEFAULT_SPAN_LIMIT,
        }
    }

    pub fn with_span_limit(mut self, limit: usize) -> Self {
        self.span_limit = limit;
        self
    }

    /// Weight-zero monomials within the bounds, in monomial order. Any
    /// other monomial is moved by conjugation with `K`.
    pub fn candidates(&self) -> Vec<PbwMonomial> {
        let [ma, mb, mc, md, me] = self.bounds;
        let mc = mc as i32;
        let mut out = Vec::new();
        for a in 0..=ma {
            for b in 0..=mb {
                for c in -mc..=mc {
                    for d in 0..=md {
                        for e in 0..=me {
                            let m = PbwMonomial::new(a, b, c, d, e);
                            if m.weight() == 0 {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct CentralizerResult {
    pub bounds: [u32; 5],
    pub candidates: usize,
    pub dimension: usize,
    pub basis: Vec<PbwElement>,
}

const GENERATORS: [Letter; 5] = [Letter::E, Letter::F, Letter::K, Letter::X, Letter::Y];

/// The centralizer of `A` inside the candidate span of `query`.
pub fn centralizer_basis(query: &CentralizerQuery) -> Result<CentralizerResult> {
    let cands = query.candidates();
    if cands.len() > query.span_limit {
        return Err(Error::SpanTooLarge {
            size: cands.len(),
            limit: query.span_limit,
        });
    }
    // column j holds [g, m_j]; rows are indexed by (generator, output monomial)
    let mut rows: BTreeMap<(usize, PbwMonomial), Vec<Scalar>> = BTreeMap::new();
    for (j, m) in cands.iter().enumerate() {
        let x = PbwElement::monomial(*m);
        for (gi, g) in GENERATORS.iter().enumerate() {
            let c = commutator(&PbwElement::generator(*g), &x, &query.p)?;
            for (mu, coeff) in c.terms() {
                rows.entry((gi, *mu))
                    .or_insert_with(|| vec![Scalar::zero(); cands.len()])[j] = coeff.clone();
            }
        }
    }
    let mut ech = RowEchelon::new(cands.len());
    for row in rows.values() {
        ech.insert(row);
    }
    let mut basis = Vec::new();
    for v in ech.kernel() {
        let mut x = PbwElement::zero();
        for (m, c) in cands.iter().zip(&v) {
            x.add_term(*m, c);
        }
        for g in GENERATORS {
            if !commutator(&PbwElement::generator(g), &x, &query.p)?.is_zero() {
                return Err(Error::ConstructionInconsistent(format!(
                    "centralizer vector {x} does not commute with {}",
                    g.as_char()
                )));
            }
        }
        basis.push(x);
    }
    Ok(CentralizerResult {
        bounds: query.bounds,
        candidates: cands.len(),
        dimension: basis.len(),
        basis,
    })
}
