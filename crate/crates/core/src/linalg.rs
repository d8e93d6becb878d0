//! Fraction-free row reduction over `Q(q)`.
//!
//! Rows are scaled into `Z[q]` on entry and reduced by cross-multiplication
//! followed by removal of the polynomial content, so no rational function
//! arithmetic happens inside the elimination loop.

use num_traits::{One, Zero};

use crate::poly::{Coeff, Poly};
use crate::scalar::RatFunc;

/// Clears denominators of a row, returning it as integer polynomials with
/// content removed.
fn integral_row<T: Coeff>(row: &[RatFunc<T>]) -> Vec<Poly<T>> {
    let mut den = Poly::<T>::one();
    for x in row {
        if x.is_zero() || x.denom().is_one() {
            continue;
        }
        let g = den.gcd(x.denom());
        den = &den * &x.denom().exact_div(&g).expect("gcd divides");
    }
    let out: Vec<Poly<T>> = row
        .iter()
        .map(|x| {
            if x.is_zero() {
                Poly::zero()
            } else {
                let cof = den.exact_div(x.denom()).expect("common multiple");
                x.numer() * &cof
            }
        })
        .collect();
    primitive(out)
}

/// Divides out the gcd of all entries and makes the first nonzero entry have
/// a positive leading coefficient.
fn primitive<T: Coeff>(mut row: Vec<Poly<T>>) -> Vec<Poly<T>> {
    let mut g = Poly::<T>::zero();
    for x in &row {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() {
        return row;
    }
    let negate = row
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.leading_coeff().is_negative())
        .unwrap_or(false);
    if !g.is_one() {
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x = x.exact_div(&g).expect("content divides");
            }
        }
    }
    if negate {
        for x in row.iter_mut() {
            *x = -&*x;
        }
    }
    row
}

/// `row <- a*row - b*pivot_row`, chosen to zero column `col`.
fn eliminate<T: Coeff>(row: &mut Vec<Poly<T>>, pivot: &[Poly<T>], col: usize) {
    if row[col].is_zero() {
        return;
    }
    let g = row[col].gcd(&pivot[col]);
    let a = pivot[col].exact_div(&g).expect("gcd divides");
    let b = row[col].exact_div(&g).expect("gcd divides");
    let new: Vec<Poly<T>> = row
        .iter()
        .zip(pivot)
        .map(|(x, y)| {
            let lhs = if x.is_zero() { Poly::zero() } else { x * &a };
            if y.is_zero() {
                lhs
            } else {
                &lhs - &(y * &b)
            }
        })
        .collect();
    *row = primitive(new);
}

/// A reduced row echelon form built incrementally. Every stored row has a
/// pivot column in which all other stored rows vanish.
#[derive(Clone, Debug)]
pub struct RowEchelon<T: Coeff> {
    ncols: usize,
    rows: Vec<(usize, Vec<Poly<T>>)>,
}

impl<T: Coeff> RowEchelon<T> {
    pub fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a row; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, row: &[RatFunc<T>]) -> bool {
        assert_eq!(row.len(), self.ncols, "row length");
        let mut v = integral_row(row);
        for (col, pivot) in &self.rows {
            eliminate(&mut v, pivot, *col);
        }
        let Some(col) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        for (_, other) in self.rows.iter_mut() {
            eliminate(other, &v, col);
        }
        let at = self.rows.partition_point(|(c, _)| *c < col);
        self.rows.insert(at, (col, v));
        true
    }

    /// Whether `row` lies in the span of the stored rows.
    pub fn contains(&self, row: &[RatFunc<T>]) -> bool {
        let mut v = integral_row(row);
        for (col, pivot) in &self.rows {
            eliminate(&mut v, pivot, *col);
        }
        v.iter().all(|x| x.is_zero())
    }

    /// Stored rows as field elements, in pivot order.
    pub fn rows(&self) -> Vec<Vec<RatFunc<T>>> {
        self.rows
            .iter()
            .map(|(_, r)| r.iter().map(|x| RatFunc::from_poly(x.clone())).collect())
            .collect()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(c, _)| *c).collect()
    }

    /// Basis of the right null space `{x : R x = 0}`; each vector is scaled
    /// so that its first nonzero entry is 1.
    pub fn kernel(&self) -> Vec<Vec<RatFunc<T>>> {
        let pivots = self.pivots();
        let mut out = Vec::new();
        for free in 0..self.ncols {
            if pivots.contains(&free) {
                continue;
            }
            let mut x = vec![RatFunc::<T>::zero(); self.ncols];
            x[free] = RatFunc::one();
            for (col, row) in &self.rows {
                if !row[free].is_zero() {
                    x[*col] = -RatFunc::from_parts(row[free].clone(), row[*col].clone());
                }
            }
            out.push(make_monic(x));
        }
        out
    }
}

/// Scales `v` so that its first nonzero entry is 1.
pub fn make_monic<T: Coeff>(v: Vec<RatFunc<T>>) -> Vec<RatFunc<T>> {
    let Some(lead) = v.iter().find(|x| !x.is_zero()).cloned() else {
        return v;
    };
    if lead.is_one() {
        return v;
    }
    let inv = lead.inv().expect("nonzero");
    v.into_iter().map(|x| &x * &inv).collect()
}

/// Right null space of the matrix with the given rows.
pub fn kernel<T: Coeff>(rows: &[Vec<RatFunc<T>>], ncols: usize) -> Vec<Vec<RatFunc<T>>> {
    let mut ech = RowEchelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.kernel()
}

pub fn rank<T: Coeff>(rows: &[Vec<RatFunc<T>>], ncols: usize) -> usize {
    let mut ech = RowEchelon::new(ncols);
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    fn s(k: i64) -> Scalar {
        Scalar::from_int(k)
    }

    #[test]
    fn kernel_of_rank_one() {
        let q = Scalar::q();
        let rows = vec![
            vec![s(1), q.clone(), &q * &q],
            vec![q.clone(), &q * &q, &(&q * &q) * &q],
        ];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let dot = r
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b));
                assert!(dot.is_zero());
            }
        }
        assert_eq!(rank(&rows, 3), 1);
    }

    #[test]
    fn kernel_with_fractions() {
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        // x - q^{-1} y = 0 and (1/(q+1)) z = 0
        let rows = vec![
            vec![s(1), -qi.clone(), s(0)],
            vec![s(0), s(0), &s(1) / &(&q + &s(1))],
        ];
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![vec![s(1), q.clone(), s(0)]]);
    }

    #[test]
    fn full_rank_has_trivial_kernel() {
        let q = Scalar::q();
        let rows = vec![vec![s(1), q.clone()], vec![q.clone(), s(1)]];
        assert!(kernel(&rows, 2).is_empty());
        let mut e = RowEchelon::new(2);
        assert!(e.insert(&rows[0]));
        assert!(!e.insert(&[q.clone(), &q * &q]));
        assert!(e.contains(&[s(2), &q * &s(2)]));
        assert!(e.insert(&rows[1]));
        assert_eq!(e.rank(), 2);
    }
}
