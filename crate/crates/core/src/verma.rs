//! Verma modules `Z(r)` with basis `F^i Y^j v_r`, the constants `c_r`,
//! `alpha_{r,m}`, `d_{r,m}`, and maximal vectors.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RowEchelon;
use crate::pbw::{system_for, CenterPolynomial, PbwMonomial};
use crate::rewrite::{FreeElement, Letter, Strategy, Tail, Word};
use crate::scalar::q_minus_qinv;
use crate::Scalar;

/// A nonzero scalar used as a highest weight.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight(Scalar);

impl Weight {
    pub fn new(r: Scalar) -> Result<Weight> {
        if r.is_zero() {
            Err(Error::ZeroArgument("weight"))
        } else {
            Ok(Weight(r))
        }
    }

    /// `eps * q^n`.
    pub fn signed_q_pow(eps: i8, n: i64) -> Weight {
        Weight(Scalar::signed_q_pow(eps as i64, n))
    }

    pub fn q_pow(n: i64) -> Weight {
        Weight::signed_q_pow(1, n)
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    /// `Some((eps, n))` when the weight is `eps * q^n`.
    pub fn classify(&self) -> Option<(i8, i64)> {
        self.0.classify_signed_power().expect("nonzero")
    }

    /// `q^k r`.
    pub fn shift(&self, k: i64) -> Weight {
        Weight(&self.0 * &Scalar::q_pow(k))
    }

    pub fn inv(&self) -> Weight {
        Weight(self.0.inv().expect("nonzero"))
    }

    /// Human-readable classification, e.g. `+q^3`, `-q^-1` or `generic`.
    pub fn classification(&self) -> String {
        match self.classify() {
            Some((eps, n)) => format!("{}q^{}", if eps > 0 { "+" } else { "-" }, n),
            None => "generic".to_string(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `sum c_{ij} F^i Y^j v_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VermaElement {
    r: Weight,
    terms: BTreeMap<(u32, u32), Scalar>,
}

impl VermaElement {
    pub fn zero(r: &Weight) -> Self {
        VermaElement {
            r: r.clone(),
            terms: BTreeMap::new(),
        }
    }

    /// The highest weight vector `v_r`.
    pub fn highest(r: &Weight) -> Self {
        VermaElement::basis(r, 0, 0)
    }

    /// `F^i Y^j v_r`.
    pub fn basis(r: &Weight, i: u32, j: u32) -> Self {
        VermaElement::term(r, Scalar::one(), i, j)
    }

    pub fn term(r: &Weight, c: Scalar, i: u32, j: u32) -> Self {
        let mut v = VermaElement::zero(r);
        v.add_term(i, j, &c);
        v
    }

    pub fn weight(&self) -> &Weight {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, other: &VermaElement) -> VermaElement {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c);
        }
        out
    }

    pub fn sub(&self, other: &VermaElement) -> VermaElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> VermaElement {
        let mut out = VermaElement::zero(&self.r);
        for ((i, j), x) in &self.terms {
            out.add_term(*i, *j, &(x * c));
        }
        out
    }

    /// Multiplies by `F^a Y^b` on the left (these commute).
    pub fn shift_fy(&self, a: u32, b: u32) -> VermaElement {
        let mut out = VermaElement::zero(&self.r);
        for ((i, j), x) in &self.terms {
            out.add_term(i + a, j + b, x);
        }
        out
    }

    /// The weight index `n = 2i + j` if all terms share it.
    pub fn weight_index(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|(i, j)| 2 * i + j);
        let first = it.next()?;
        it.all(|n| n == first).then_some(first)
    }

    /// Coefficients in the weight-space basis of index `n`.
    pub fn coords(&self, n: u32) -> Vec<Scalar> {
        weight_basis(n)
            .into_iter()
            .map(|(i, j)| self.coeff(i, j))
            .collect()
    }

    pub fn from_coords(r: &Weight, n: u32, coords: &[Scalar]) -> VermaElement {
        let mut v = VermaElement::zero(r);
        for ((i, j), c) in weight_basis(n).into_iter().zip(coords) {
            v.add_term(i, j, c);
        }
        v
    }
}

impl fmt::Display for VermaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut items: Vec<(&(u32, u32), &Scalar)> = self.terms.iter().collect();
        items.sort_by(|a, b| b.0 .1.cmp(&a.0 .1).then(a.0 .0.cmp(&b.0 .0)));
        let mut first = true;
        for ((i, j), c) in items {
            let minus_one = (-c).is_one();
            if !first {
                f.write_str(if minus_one { " - " } else { " + " })?;
            }
            let mut m = Vec::new();
            match i {
                0 => {}
                1 => m.push("F".to_string()),
                _ => m.push(format!("F^{i}")),
            }
            match j {
                0 => {}
                1 => m.push("Y".to_string()),
                _ => m.push(format!("Y^{j}")),
            }
            m.push("v".to_string());
            let m = m.join("*");
            if c.is_one() {
                f.write_str(&m)?;
            } else if minus_one {
                if first {
                    f.write_str("-")?;
                }
                f.write_str(&m)?;
            } else {
                write!(f, "({c})*{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Basis `F^i Y^j` of the weight space `q^{-n} r`, ordered by decreasing
/// `j` (so increasing `i`).
pub fn weight_basis(n: u32) -> Vec<(u32, u32)> {
    (0..=n / 2).map(|i| (i, n - 2 * i)).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Generator {
    E,
    F,
    K,
    Kinv,
    X,
    Y,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::E,
        Generator::F,
        Generator::K,
        Generator::Kinv,
        Generator::X,
        Generator::Y,
    ];

    pub fn letter(self) -> Letter {
        match self {
            Generator::E => Letter::E,
            Generator::F => Letter::F,
            Generator::K => Letter::K,
            Generator::Kinv => Letter::L,
            Generator::X => Letter::X,
            Generator::Y => Letter::Y,
        }
    }

    pub fn parse(s: &str) -> Option<Generator> {
        Some(match s {
            "E" => Generator::E,
            "F" => Generator::F,
            "K" => Generator::K,
            "L" | "K^-1" | "Kinv" => Generator::Kinv,
            "X" => Generator::X,
            "Y" => Generator::Y,
            _ => return None,
        })
    }
}

/// `g F^i Y^j` reduced in the algebra, keeping only the terms that survive
/// in a Verma module: anything ending in `X` or `E` lies in `A N_+` and is
/// dropped, and trailing Cartan letters are kept as a power of `K`.
type Projected = Vec<(u32, u32, i32, Scalar)>;

type ActKey = (CenterPolynomial, Generator, u32, u32);

fn act_cache() -> &'static Mutex<HashMap<ActKey, Projected>> {
    static CACHE: OnceLock<Mutex<HashMap<ActKey, Projected>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn projected_product(p: &CenterPolynomial, g: Generator, i: u32, j: u32) -> Result<Projected> {
    let key = (p.clone(), g, i, j);
    if let Some(v) = act_cache().lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let sys = system_for(p)?;
    let mut w = vec![g.letter()];
    w.extend(std::iter::repeat_n(Letter::F, i as usize));
    w.extend(std::iter::repeat_n(Letter::Y, j as usize));
    let mut pending = BTreeMap::new();
    pending.insert(Word(w), Scalar::one());
    let nf: FreeElement = sys.reduce(pending, Strategy::Leftmost, |w| match w.last() {
        Some(Letter::X) | Some(Letter::E) => Tail::Drop,
        _ => Tail::Keep,
    })?;
    let mut out = Vec::new();
    for (w, c) in nf.terms() {
        let m = PbwMonomial::from_word(w).expect("irreducible word");
        debug_assert!(m.d == 0 && m.e == 0);
        out.push((m.a, m.b, m.c, c.clone()));
    }
    act_cache()
        .lock()
        .expect("cache lock")
        .insert(key, out.clone());
    Ok(out)
}

/// Action of a generator on `Z(r)`: multiply in the algebra, discard
/// `A N_+`, and let `K` act on `v_r` by `r`.
pub fn act(g: Generator, v: &VermaElement, p: &CenterPolynomial) -> Result<VermaElement> {
    let r = v.weight().value();
    let mut out = VermaElement::zero(v.weight());
    for ((i, j), c) in v.terms() {
        for (a, b, k, d) in projected_product(p, g, *i, *j)? {
            out.add_term(a, b, &(&(c * &d) * &r.pow(k as i64)?));
        }
    }
    Ok(out)
}

/// Applies a word of generators, rightmost first.
pub fn act_word(gs: &[Generator], v: &VermaElement, p: &CenterPolynomial) -> Result<VermaElement> {
    let mut out = v.clone();
    for g in gs.iter().rev() {
        out = act(*g, &out, p)?;
    }
    Ok(out)
}

/// `c_r = (q r + q^{-1} r^{-1}) / (q - q^{-1})^2`
pub fn c_scalar(r: &Weight) -> Scalar {
    let d = q_minus_qinv::<num_bigint::BigInt>();
    let num =
        &(&Scalar::q() * r.value()) + &(&Scalar::q_pow(-1) * &r.value().inv().expect("nonzero"));
    &num / &(&d * &d)
}

/// `c_{0,r} = p(c_r)`
pub fn c0_scalar(p: &CenterPolynomial, r: &Weight) -> Scalar {
    p.eval(&c_scalar(r))
}

/// `<q^k r>`
pub fn bracket_at(r: &Weight, k: i64) -> Scalar {
    r.shift(k).value().bracket().expect("nonzero")
}

/// `alpha_{r,m} = sum_{j=0}^{m-2} <q^{1-j} r> c_{0, q^{-j} r}`; zero for `m <= 1`.
pub fn alpha(p: &CenterPolynomial, r: &Weight, m: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for j in 0..=(m - 2) {
        acc += &(&bracket_at(r, 1 - j) * &c0_scalar(p, &r.shift(-j)));
    }
    acc
}

/// `d_{r,m} = alpha_{r,m} / (<q^{2-m} r> <q^{3-m} r>)`
pub fn d_const(p: &CenterPolynomial, r: &Weight, m: i64) -> Result<Scalar> {
    let b2 = bracket_at(r, 2 - m);
    if b2.is_zero() {
        return Err(Error::DenominatorVanishes {
            bracket: format!("q^{} r", 2 - m),
            m,
        });
    }
    let b3 = bracket_at(r, 3 - m);
    if b3.is_zero() {
        return Err(Error::DenominatorVanishes {
            bracket: format!("q^{} r", 3 - m),
            m,
        });
    }
    Ok(&alpha(p, r, m) / &(&b2 * &b3))
}

/// `v_{t_n}` defined by `v_{t_0} = v_r`, `v_{t_1} = Y v_r` and
/// `v_{t_n} = Y v_{t_{n-1}} + d_{r,n} F v_{t_{n-2}}`.
pub fn structure_vector(p: &CenterPolynomial, r: &Weight, n: u32) -> Result<VermaElement> {
    Ok(structure_vectors(p, r, n)?.pop().expect("nonempty"))
}

/// `[v_{t_0}, ..., v_{t_n}]`
pub fn structure_vectors(p: &CenterPolynomial, r: &Weight, n: u32) -> Result<Vec<VermaElement>> {
    let mut out = vec![VermaElement::highest(r)];
    for k in 1..=n {
        let mut next = out[k as usize - 1].shift_fy(0, 1);
        if k >= 2 {
            let d = d_const(p, r, k as i64)?;
            next = next.add(&out[k as usize - 2].shift_fy(1, 0).scale(&d));
        }
        out.push(next);
    }
    Ok(out)
}

/// Matrix of a generator from weight index `n` to `n - deg`, as rows over
/// the target basis.
fn action_rows(g: Generator, p: &CenterPolynomial, r: &Weight, n: u32) -> Result<Vec<Vec<Scalar>>> {
    let src = weight_basis(n);
    let lower = match g {
        Generator::E => 2,
        Generator::X => 1,
        _ => panic!("only raising operators"),
    };
    if n < lower {
        return Ok(Vec::new());
    }
    let tgt = weight_basis(n - lower);
    let mut rows = vec![vec![Scalar::zero(); src.len()]; tgt.len()];
    for (col, (i, j)) in src.iter().enumerate() {
        let img = act(g, &VermaElement::basis(r, *i, *j), p)?;
        for (row, (a, b)) in tgt.iter().enumerate() {
            rows[row][col] = img.coeff(*a, *b);
        }
    }
    Ok(rows)
}

fn kernel_in_weight_space(
    gens: &[Generator],
    p: &CenterPolynomial,
    r: &Weight,
    n: u32,
) -> Result<Vec<VermaElement>> {
    let size = weight_basis(n).len();
    let mut ech = RowEchelon::new(size);
    for g in gens {
        for row in action_rows(*g, p, r, n)? {
            ech.insert(&row);
        }
    }
    Ok(ech
        .kernel()
        .into_iter()
        .map(|v| VermaElement::from_coords(r, n, &v))
        .collect())
}

/// Vectors of weight `q^{-n} r` killed by `E` and `X`, monic in the highest
/// `Y` power present. At most one up to scalars.
pub fn maximal_vectors(p: &CenterPolynomial, r: &Weight, n: u32) -> Result<Vec<VermaElement>> {
    let out = kernel_in_weight_space(&[Generator::E, Generator::X], p, r, n)?;
    assert!(out.len() <= 1, "maximal vectors are unique up to scalars");
    Ok(out)
}

/// Vectors of weight `q^{-n} r` killed by `E`.
pub fn sl2_maximal_vectors(p: &CenterPolynomial, r: &Weight, n: u32) -> Result<Vec<VermaElement>> {
    kernel_in_weight_space(&[Generator::E], p, r, n)
}

/// Dimension of the weight space `q^{-n} t` of the simple quotient `V(t)`.
///
/// A vector of `Z(t)` lies in the maximal submodule exactly when no product
/// of raising operators carries it to a nonzero multiple of `v_t`. The
/// functionals "coefficient of `v_t` after a raising word" are built weight
/// by weight and their rank is the dimension.
pub struct SimpleCharacter {
    p: CenterPolynomial,
    t: Weight,
    functionals: Vec<Vec<Vec<Scalar>>>,
}

impl SimpleCharacter {
    pub fn new(p: &CenterPolynomial, t: &Weight) -> Self {
        SimpleCharacter {
            p: p.clone(),
            t: t.clone(),
            functionals: vec![vec![vec![Scalar::one()]]],
        }
    }

    fn extend_to(&mut self, n: u32) -> Result<()> {
        while self.functionals.len() <= n as usize {
            let k = self.functionals.len() as u32;
            let size = weight_basis(k).len();
            let mut ech = RowEchelon::new(size);
            for (g, lower) in [(Generator::X, 1u32), (Generator::E, 2u32)] {
                if k < lower {
                    continue;
                }
                let m = action_rows(g, &self.p, &self.t, k)?;
                for phi in &self.functionals[(k - lower) as usize] {
                    let row: Vec<Scalar> = (0..size)
                        .map(|col| {
                            phi.iter()
                                .zip(&m)
                                .fold(Scalar::zero(), |acc, (a, mrow)| &acc + &(a * &mrow[col]))
                        })
                        .collect();
                    ech.insert(&row);
                }
            }
            self.functionals.push(ech.rows());
        }
        Ok(())
    }

    pub fn dim(&mut self, n: u32) -> Result<usize> {
        self.extend_to(n)?;
        Ok(self.functionals[n as usize].len())
    }
}
