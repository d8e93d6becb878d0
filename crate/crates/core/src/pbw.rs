//! Elements of the algebra in the ordered basis `F^a Y^b K^c X^d E^e`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, LaurentVar};
use crate::rewrite::{FreeElement, Letter, ReductionSystem, Word};
use crate::scalar::q_minus_qinv;
use crate::Scalar;

/// `F^a Y^b K^c X^d E^e`; negative `c` stands for a power of `K^{-1}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct PbwMonomial {
    pub a: u32,
    pub b: u32,
    pub c: i32,
    pub d: u32,
    pub e: u32,
}

impl PbwMonomial {
    pub const ONE: PbwMonomial = PbwMonomial {
        a: 0,
        b: 0,
        c: 0,
        d: 0,
        e: 0,
    };

    pub fn new(a: u32, b: u32, c: i32, d: u32, e: u32) -> Self {
        PbwMonomial { a, b, c, d, e }
    }

    /// Eigenvalue exponent under conjugation by `K`: `K m K^{-1} = q^{w} m`.
    pub fn weight(&self) -> i64 {
        2 * (self.e as i64 - self.a as i64) + (self.d as i64 - self.b as i64)
    }

    pub fn total_degree(&self) -> u32 {
        self.a + self.b + self.c.unsigned_abs() + self.d + self.e
    }

    pub fn to_word(&self) -> Word {
        let mut v = Vec::with_capacity(self.total_degree() as usize);
        v.extend(std::iter::repeat_n(Letter::F, self.a as usize));
        v.extend(std::iter::repeat_n(Letter::Y, self.b as usize));
        let k = if self.c >= 0 { Letter::K } else { Letter::L };
        v.extend(std::iter::repeat_n(k, self.c.unsigned_abs() as usize));
        v.extend(std::iter::repeat_n(Letter::X, self.d as usize));
        v.extend(std::iter::repeat_n(Letter::E, self.e as usize));
        Word(v)
    }

    /// Inverse of [`PbwMonomial::to_word`]; `None` if the word is not of the
    /// ordered shape.
    pub fn from_word(w: &Word) -> Option<PbwMonomial> {
        let mut m = PbwMonomial::default();
        let mut stage = 0;
        for l in w.letters() {
            let s = match l {
                Letter::F => 0,
                Letter::Y => 1,
                Letter::K | Letter::L => 2,
                Letter::X => 3,
                Letter::E => 4,
            };
            if s < stage {
                return None;
            }
            stage = s;
            match l {
                Letter::F => m.a += 1,
                Letter::Y => m.b += 1,
                Letter::K => {
                    if m.c < 0 {
                        return None;
                    }
                    m.c += 1
                }
                Letter::L => {
                    if m.c > 0 {
                        return None;
                    }
                    m.c -= 1
                }
                Letter::X => m.d += 1,
                Letter::E => m.e += 1,
            }
        }
        Some(m)
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (sym, k) in [
            ("F", self.a as i64),
            ("Y", self.b as i64),
            ("K", self.c as i64),
            ("X", self.d as i64),
            ("E", self.e as i64),
        ] {
            match k {
                0 => {}
                1 => parts.push(sym.to_string()),
                _ => parts.push(format!("{sym}^{k}")),
            }
        }
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join("*"))
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PbwElement {
    terms: BTreeMap<PbwMonomial, Scalar>,
}

impl PbwElement {
    pub fn zero() -> Self {
        PbwElement::default()
    }

    pub fn one() -> Self {
        PbwElement::monomial(PbwMonomial::ONE)
    }

    pub fn scalar(c: Scalar) -> Self {
        PbwElement::term(c, PbwMonomial::ONE)
    }

    pub fn monomial(m: PbwMonomial) -> Self {
        PbwElement::term(Scalar::one(), m)
    }

    pub fn term(c: Scalar, m: PbwMonomial) -> Self {
        let mut x = PbwElement::zero();
        x.add_term(m, &c);
        x
    }

    pub fn generator(l: Letter) -> Self {
        let m = match l {
            Letter::F => PbwMonomial::new(1, 0, 0, 0, 0),
            Letter::Y => PbwMonomial::new(0, 1, 0, 0, 0),
            Letter::K => PbwMonomial::new(0, 0, 1, 0, 0),
            Letter::L => PbwMonomial::new(0, 0, -1, 0, 0),
            Letter::X => PbwMonomial::new(0, 0, 0, 1, 0),
            Letter::E => PbwMonomial::new(0, 0, 0, 0, 1),
        };
        PbwElement::monomial(m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: PbwMonomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, x) in &self.terms {
            out.add_term(*m, &(x * c));
        }
        out
    }

    pub fn to_free(&self) -> FreeElement {
        let mut out = FreeElement::zero();
        for (m, c) in &self.terms {
            out.add_term(m.to_word(), c);
        }
        out
    }

    /// Reads an element whose words are all irreducible.
    pub fn from_free(x: &FreeElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (w, c) in x.terms() {
            let m = PbwMonomial::from_word(w)
                .unwrap_or_else(|| panic!("{w} is not an ordered monomial"));
            out.add_term(m, c);
        }
        out
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms.iter().map(|(m, c)| (m.to_string(), c)))
    }
}

/// `c1*m1 + c2*m2 + ...`, with unit coefficients and the unit monomial elided.
pub(crate) fn write_sum<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a Scalar)>,
) -> fmt::Result {
    let mut any = false;
    for (m, c) in terms {
        let minus_one = m != "1" && (-c).is_one();
        if any {
            f.write_str(if minus_one { " - " } else { " + " })?;
        }
        if m == "1" {
            write!(f, "{c}")?;
        } else if c.is_one() {
            f.write_str(&m)?;
        } else if minus_one {
            if !any {
                f.write_str("-")?;
            }
            f.write_str(&m)?;
        } else {
            write!(f, "({c})*{m}")?;
        }
        any = true;
    }
    if !any {
        f.write_str("0")?;
    }
    Ok(())
}

/// The polynomial `p` with `C_0 = p(C)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct CenterPolynomial {
    coeffs: Vec<Scalar>,
}

impl CenterPolynomial {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CenterPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        CenterPolynomial::default()
    }

    pub fn constant(c: Scalar) -> Self {
        CenterPolynomial::new(vec![c])
    }

    /// `p(t) = t`.
    pub fn identity() -> Self {
        CenterPolynomial::new(vec![Scalar::zero(), Scalar::one()])
    }

    /// `p(t) = c t^k`.
    pub fn monomial(c: Scalar, k: usize) -> Self {
        let mut v = vec![Scalar::zero(); k + 1];
        v[k] = c;
        CenterPolynomial::new(v)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * t) + c;
        }
        acc
    }

    /// Errors with `ZeroDeformation` when `p = 0`.
    pub fn require_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroDeformation)
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for CenterPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, &Scalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let m = match k {
                    0 => "1".to_string(),
                    1 => "C".to_string(),
                    _ => format!("C^{k}"),
                };
                (m, c)
            })
            .rev()
            .collect();
        write_sum(f, terms.into_iter())
    }
}

/// `(q K + q^{-1} K^{-1}) / (q - q^{-1})^2`
fn casimir_cartan_part() -> PbwElement {
    let d = q_minus_qinv::<num_bigint::BigInt>();
    let s = (&d * &d).inv().expect("nonzero");
    let mut x = PbwElement::zero();
    x.add_term(PbwMonomial::new(0, 0, 1, 0, 0), &(&Scalar::q() * &s));
    x.add_term(PbwMonomial::new(0, 0, -1, 0, 0), &(&Scalar::q_pow(-1) * &s));
    x
}

/// `C = FE + (qK + q^{-1}K^{-1})/(q - q^{-1})^2`
pub fn casimir_element() -> PbwElement {
    PbwElement::monomial(PbwMonomial::new(1, 0, 0, 0, 1)).add(&casimir_cartan_part())
}

fn system_cache() -> &'static Mutex<HashMap<CenterPolynomial, Arc<ReductionSystem>>> {
    static CACHE: OnceLock<Mutex<HashMap<CenterPolynomial, Arc<ReductionSystem>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Powers of `C` only involve the `U_q(sl_2)` rules, so they can be computed
/// with `C_0 = 0`.
fn c0_free(p: &CenterPolynomial) -> Result<FreeElement> {
    let base = ReductionSystem::new(FreeElement::zero());
    let c = casimir_element().to_free();
    let mut acc = FreeElement::zero();
    for coeff in p.coeffs().iter().rev() {
        acc = base.normal_form(&acc.mul(&c))?;
        acc.add_term(Word::empty(), coeff);
    }
    Ok(acc)
}

/// The reduction system for `C_0 = p(C)`, built once per `p`.
pub fn system_for(p: &CenterPolynomial) -> Result<Arc<ReductionSystem>> {
    if let Some(s) = system_cache().lock().expect("cache lock").get(p) {
        return Ok(s.clone());
    }
    let sys = Arc::new(ReductionSystem::new(c0_free(p)?));
    system_cache()
        .lock()
        .expect("cache lock")
        .insert(p.clone(), sys.clone());
    Ok(sys)
}

/// `p(C)` in ordered form.
pub fn c0_element(p: &CenterPolynomial) -> Result<PbwElement> {
    Ok(PbwElement::from_free(system_for(p)?.c0_expansion()))
}

pub fn normalize(x: &FreeElement, p: &CenterPolynomial) -> Result<PbwElement> {
    Ok(PbwElement::from_free(&system_for(p)?.normal_form(x)?))
}

pub fn multiply(x: &PbwElement, y: &PbwElement, p: &CenterPolynomial) -> Result<PbwElement> {
    normalize(&x.to_free().mul(&y.to_free()), p)
}

pub fn commutator(x: &PbwElement, y: &PbwElement, p: &CenterPolynomial) -> Result<PbwElement> {
    let sys = system_for(p)?;
    let (fx, fy) = (x.to_free(), y.to_free());
    let both = fx.mul(&fy).sub(&fy.mul(&fx));
    Ok(PbwElement::from_free(&sys.normal_form(&both)?))
}

/// Product of a sequence of elements.
pub fn product(xs: &[PbwElement], p: &CenterPolynomial) -> Result<PbwElement> {
    let mut acc = FreeElement::one();
    for x in xs {
        acc = acc.mul(&x.to_free());
    }
    normalize(&acc, p)
}

/// The `K^{+-1}`-only part, as a Laurent polynomial in `K`.
pub fn xi_projection(x: &PbwElement) -> LaurentPoly {
    let mut out = LaurentPoly::zero(LaurentVar::K);
    for (m, c) in x.terms() {
        if m.a == 0 && m.b == 0 && m.d == 0 && m.e == 0 {
            out.add_term(m.c as i64, c);
        }
    }
    out
}

/// The anti-involution `E -> -FK`, `F -> -K^{-1}E`, `K -> K`, `X -> Y`,
/// `Y -> X`, extended anti-multiplicatively.
pub fn anti_involution(x: &PbwElement, p: &CenterPolynomial) -> Result<PbwElement> {
    let minus = -Scalar::one();
    let image = |l: Letter| -> FreeElement {
        match l {
            Letter::E => FreeElement::term(minus.clone(), Word(vec![Letter::F, Letter::K])),
            Letter::F => FreeElement::term(minus.clone(), Word(vec![Letter::L, Letter::E])),
            Letter::K => FreeElement::from_letters(&[Letter::K]),
            Letter::L => FreeElement::from_letters(&[Letter::L]),
            Letter::X => FreeElement::from_letters(&[Letter::Y]),
            Letter::Y => FreeElement::from_letters(&[Letter::X]),
        }
    };
    let mut acc = FreeElement::zero();
    for (m, c) in x.terms() {
        let mut t = FreeElement::scalar(c.clone());
        for l in m.to_word().letters().iter().rev() {
            t = t.mul(&image(*l));
        }
        acc = acc.add(&t);
    }
    normalize(&acc, p)
}
