//! Free algebra on `E, F, K, L, X, Y` (with `L = K^{-1}`) and the reduction
//! system whose irreducible words are the ordered monomials
//! `F^a Y^b K^c X^d E^e`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::q_minus_qinv;
use crate::Scalar;

/// Generators, declared in the lexicographic order `F < Y < L < K < X < E`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    F,
    Y,
    L,
    K,
    X,
    E,
}

impl Letter {
    pub const ALL: [Letter; 6] = [
        Letter::F,
        Letter::Y,
        Letter::L,
        Letter::K,
        Letter::X,
        Letter::E,
    ];

    fn index(self) -> usize {
        self as usize
    }

    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c {
            'E' => Letter::E,
            'F' => Letter::F,
            'K' => Letter::K,
            'L' => Letter::L,
            'X' => Letter::X,
            'Y' => Letter::Y,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::K => 'K',
            Letter::L => 'L',
            Letter::X => 'X',
            Letter::Y => 'Y',
        }
    }

    /// Formal weight: `E` raises by 2, `X` by 1.
    pub fn weight(self) -> i64 {
        match self {
            Letter::E => 2,
            Letter::X => 1,
            Letter::K | Letter::L => 0,
            Letter::Y => -1,
            Letter::F => -2,
        }
    }

    fn is_xy(self) -> bool {
        matches!(self, Letter::X | Letter::Y)
    }
}

/// A word in the generators. `Ord` is the reduction order: number of `X`/`Y`
/// letters, then length, then lexicographic.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn xy_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_xy()).count()
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().map(|l| l.weight()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Parses juxtaposed letters, also accepting `*` separators and
    /// `K^-1` for `L`.
    pub fn parse(s: &str) -> Option<Word> {
        let mut out = Vec::new();
        let t: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .collect();
        let mut rest = t.as_str();
        while let Some(c) = rest.chars().next() {
            if let Some(tail) = rest.strip_prefix("K^-1") {
                out.push(Letter::L);
                rest = tail;
                continue;
            }
            out.push(Letter::from_char(c)?);
            rest = &rest[c.len_utf8()..];
        }
        Some(Word(out))
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

pub fn order_compare(a: &Word, b: &Word) -> Ordering {
    a.xy_count()
        .cmp(&b.xy_count())
        .then(a.len().cmp(&b.len()))
        .then_with(|| a.0.cmp(&b.0))
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        order_compare(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Linear combination of words; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FreeElement {
    terms: BTreeMap<Word, Scalar>,
}

impl FreeElement {
    pub fn zero() -> Self {
        FreeElement::default()
    }

    pub fn one() -> Self {
        FreeElement::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        FreeElement::term(Scalar::one(), w)
    }

    pub fn scalar(c: Scalar) -> Self {
        FreeElement::term(c, Word::empty())
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut e = FreeElement::zero();
        e.add_term(w, &c);
        e
    }

    pub fn from_letters(ls: &[Letter]) -> Self {
        FreeElement::from_word(Word(ls.to_vec()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add(&self, other: &FreeElement) -> FreeElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FreeElement) -> FreeElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        let mut out = FreeElement::zero();
        if c.is_zero() {
            return out;
        }
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &(x * c));
        }
        out
    }

    /// Concatenation product in the free algebra.
    pub fn mul(&self, other: &FreeElement) -> FreeElement {
        let mut out = FreeElement::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// Whether every term is homogeneous of the given formal weight.
    pub fn is_homogeneous(&self, weight: i64) -> bool {
        self.terms.keys().all(|w| w.weight() == weight)
    }

    /// Splits into weight-homogeneous components.
    pub fn weight_components(&self) -> BTreeMap<i64, FreeElement> {
        let mut out: BTreeMap<i64, FreeElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.weight()).or_default().add_term(w.clone(), c);
        }
        out
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

fn add_into(map: &mut BTreeMap<Word, Scalar>, w: Word, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: [Letter; 2],
    pub rhs: FreeElement,
}

/// Which redex of a word is rewritten first.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// A finite set of rules with length-two left sides.
#[derive(Clone, Debug)]
pub struct ReductionSystem {
    rules: Vec<Rule>,
    table: [[Option<usize>; 6]; 6],
    c0: FreeElement,
    budget: u64,
}

impl ReductionSystem {
    /// The sixteen rules of the algebra, with `c0` substituted for `C_0` in
    /// the `XY` rule. `c0` should already be irreducible.
    pub fn new(c0: FreeElement) -> Self {
        use Letter::*;
        let q = Scalar::q();
        let qi = Scalar::q_pow(-1);
        let q2 = Scalar::q_pow(2);
        let qi2 = Scalar::q_pow(-2);
        let w = |ls: &[Letter]| Word(ls.to_vec());
        let t = |c: &Scalar, ls: &[Letter]| FreeElement::term(c.clone(), w(ls));
        let one = Scalar::one();
        let inv_qq = q_minus_qinv::<num_bigint::BigInt>().inv().expect("nonzero");
        let xy = t(&q, &[Y, X]).sub(&c0);
        let rules = vec![
            Rule {
                lhs: [E, K],
                rhs: t(&qi2, &[K, E]),
            },
            Rule {
                lhs: [K, F],
                rhs: t(&qi2, &[F, K]),
            },
            Rule {
                lhs: [L, K],
                rhs: FreeElement::one(),
            },
            Rule {
                lhs: [K, L],
                rhs: FreeElement::one(),
            },
            Rule {
                lhs: [E, F],
                rhs: t(&one, &[F, E])
                    .add(&t(&inv_qq, &[K]))
                    .sub(&t(&inv_qq, &[L])),
            },
            Rule {
                lhs: [E, X],
                rhs: t(&q, &[X, E]),
            },
            Rule {
                lhs: [E, Y],
                rhs: t(&one, &[X]).add(&t(&qi, &[Y, E])),
            },
            Rule {
                lhs: [X, F],
                rhs: t(&one, &[F, X]).sub(&t(&one, &[Y, L])),
            },
            Rule {
                lhs: [Y, F],
                rhs: t(&one, &[F, Y]),
            },
            Rule {
                lhs: [X, Y],
                rhs: xy,
            },
            Rule {
                lhs: [E, L],
                rhs: t(&q2, &[L, E]),
            },
            Rule {
                lhs: [L, F],
                rhs: t(&q2, &[F, L]),
            },
            Rule {
                lhs: [X, K],
                rhs: t(&qi, &[K, X]),
            },
            Rule {
                lhs: [K, Y],
                rhs: t(&qi, &[Y, K]),
            },
            Rule {
                lhs: [X, L],
                rhs: t(&q, &[L, X]),
            },
            Rule {
                lhs: [L, Y],
                rhs: t(&q, &[Y, L]),
            },
        ];
        ReductionSystem::from_rules(rules, c0)
    }

    /// An arbitrary rule set, for experiments and negative controls.
    /// Later rules with the same left side replace earlier ones.
    pub fn from_rules(rules: Vec<Rule>, c0: FreeElement) -> Self {
        let mut table = [[None; 6]; 6];
        for (k, r) in rules.iter().enumerate() {
            table[r.lhs[0].index()][r.lhs[1].index()] = Some(k);
        }
        ReductionSystem {
            rules,
            table,
            c0,
            budget: DEFAULT_STEP_BUDGET,
        }
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Replaces (or adds) the rule for `lhs`.
    pub fn with_rule(mut self, lhs: [Letter; 2], rhs: FreeElement) -> Self {
        let rule = Rule { lhs, rhs };
        match self.table[lhs[0].index()][lhs[1].index()] {
            Some(k) => self.rules[k] = rule,
            None => {
                self.table[lhs[0].index()][lhs[1].index()] = Some(self.rules.len());
                self.rules.push(rule);
            }
        }
        self
    }

    /// Keeps only the rules whose left sides are listed.
    pub fn restricted_to(&self, lhs: &[[Letter; 2]]) -> Self {
        let rules = self
            .rules
            .iter()
            .filter(|r| lhs.contains(&r.lhs))
            .cloned()
            .collect();
        ReductionSystem::from_rules(rules, self.c0.clone()).with_budget(self.budget)
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn c0_expansion(&self) -> &FreeElement {
        &self.c0
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn rule_for(&self, a: Letter, b: Letter) -> Option<&Rule> {
        self.table[a.index()][b.index()].map(|k| &self.rules[k])
    }

    /// Position of the redex chosen by `strategy`, if any.
    pub fn find_redex(&self, w: &[Letter], strategy: Strategy) -> Option<usize> {
        let hit = |i: &usize| self.table[w[*i].index()][w[*i + 1].index()].is_some();
        let n = w.len().saturating_sub(1);
        match strategy {
            Strategy::Leftmost => (0..n).find(hit),
            Strategy::Rightmost => (0..n).rev().find(hit),
        }
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        self.find_redex(w, Strategy::Leftmost).is_none()
    }

    /// One rewrite at position `i` of `w`, scaled by `c`, added into `out`.
    fn rewrite_at(&self, w: &[Letter], i: usize, c: &Scalar, out: &mut BTreeMap<Word, Scalar>) {
        let rule = self.rule_for(w[i], w[i + 1]).expect("redex");
        for (mid, d) in rule.rhs.terms() {
            let mut v = Vec::with_capacity(w.len() + mid.len());
            v.extend_from_slice(&w[..i]);
            v.extend_from_slice(mid.letters());
            v.extend_from_slice(&w[i + 2..]);
            add_into(out, Word(v), &(c * d));
        }
    }

    /// Applies the rule at position `i` of the word once.
    pub fn rewrite_once(&self, w: &Word, i: usize) -> FreeElement {
        let mut out = BTreeMap::new();
        self.rewrite_at(w.letters(), i, &Scalar::one(), &mut out);
        FreeElement { terms: out }
    }

    pub fn normal_form(&self, x: &FreeElement) -> Result<FreeElement> {
        self.normal_form_with(x, Strategy::Leftmost)
    }

    /// Reduces until only irreducible words remain.
    ///
    /// The largest pending word is always rewritten next. For an order
    /// compatible system every rewrite produces strictly smaller words, so
    /// each word is visited once with its accumulated coefficient.
    pub fn normal_form_with(&self, x: &FreeElement, strategy: Strategy) -> Result<FreeElement> {
        self.reduce(x.terms.clone(), strategy, |_| Tail::Keep)
    }

    /// Normal form modulo a right ideal: `tail` is consulted for every
    /// pending word and may drop it.
    pub(crate) fn reduce(
        &self,
        mut pending: BTreeMap<Word, Scalar>,
        strategy: Strategy,
        tail: impl Fn(&[Letter]) -> Tail,
    ) -> Result<FreeElement> {
        let mut done: BTreeMap<Word, Scalar> = BTreeMap::new();
        let mut steps: u64 = 0;
        while let Some((w, c)) = pending.pop_last() {
            match tail(w.letters()) {
                Tail::Keep => {}
                Tail::Drop => continue,
            }
            match self.find_redex(w.letters(), strategy) {
                None => add_into(&mut done, w, &c),
                Some(i) => {
                    steps += 1;
                    if steps > self.budget {
                        return Err(Error::StepLimitExceeded(self.budget));
                    }
                    self.rewrite_at(w.letters(), i, &c, &mut pending);
                }
            }
        }
        Ok(FreeElement { terms: done })
    }

    /// All words of length three whose two length-two factors are both left
    /// sides of rules.
    pub fn overlap_words(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for a in Letter::ALL {
            for b in Letter::ALL {
                if self.rule_for(a, b).is_none() {
                    continue;
                }
                for c in Letter::ALL {
                    if self.rule_for(b, c).is_some() {
                        out.push(Word(vec![a, b, c]));
                    }
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Resolves every overlap ambiguity: rewrite the left pair, or the
    /// right pair, then reduce fully, and compare.
    pub fn verify_confluence(&self) -> Result<ConfluenceReport> {
        let mut ambiguities = Vec::new();
        for w in self.overlap_words() {
            let left = self.normal_form(&self.rewrite_once(&w, 0))?;
            let right = self.normal_form(&self.rewrite_once(&w, 1))?;
            ambiguities.push(Ambiguity {
                hand_checked: HAND_CHECKED_OVERLAPS.contains(&w.to_string().as_str()),
                resolved: left == right,
                word: w,
                left,
                right,
            });
        }
        Ok(ConfluenceReport { ambiguities })
    }
}

/// What [`ReductionSystem::reduce`] does with a pending word.
pub(crate) enum Tail {
    Keep,
    Drop,
}

/// The sixteen ambiguity words that the classical PBW argument for this
/// algebra checks by hand.
pub const HAND_CHECKED_OVERLAPS: [&str; 16] = [
    "LYF", "KYF", "XYF", "EYF", "EXF", "XLF", "XKF", "KLY", "XLY", "ELY", "XKY", "EKY", "EXY",
    "XKL", "EXL", "EXK",
];

#[derive(Clone, Debug)]
pub struct Ambiguity {
    pub word: Word,
    pub resolved: bool,
    pub left: FreeElement,
    pub right: FreeElement,
    /// Whether the word is one of [`HAND_CHECKED_OVERLAPS`].
    pub hand_checked: bool,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub ambiguities: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn all_resolved(&self) -> bool {
        self.ambiguities.iter().all(|a| a.resolved)
    }

    pub fn resolved_count(&self) -> usize {
        self.ambiguities.iter().filter(|a| a.resolved).count()
    }

    pub fn find(&self, word: &str) -> Option<&Ambiguity> {
        self.ambiguities.iter().find(|a| a.word.to_string() == word)
    }

    /// Detected overlaps outside [`HAND_CHECKED_OVERLAPS`].
    pub fn extra_words(&self) -> Vec<String> {
        self.ambiguities
            .iter()
            .filter(|a| !a.hand_checked)
            .map(|a| a.word.to_string())
            .collect()
    }

    /// Entries of [`HAND_CHECKED_OVERLAPS`] that were not detected.
    pub fn missing_words(&self) -> Vec<&'static str> {
        HAND_CHECKED_OVERLAPS
            .iter()
            .copied()
            .filter(|w| self.find(w).is_none())
            .collect()
    }
}
