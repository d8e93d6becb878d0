//! Finite-dimensional simple modules, composition series of Verma modules,
//! and the three-dimensional module for `C_0 = 0`.

use std::fmt;

use num_traits::{One, Zero};

use crate::blocks::alpha_root_set;
use crate::error::{Error, Result};
use crate::linalg::RowEchelon;
use crate::pbw::CenterPolynomial;
use crate::scalar::q_minus_qinv;
use crate::verma::{
    act, alpha, bracket_at, d_const, maximal_vectors, Generator, VermaElement, Weight,
};
use crate::Scalar;

/// Dense square or rectangular matrix over `Q(q)`, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn diagonal(d: Vec<Scalar>) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.into_iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    pub fn add_at(&mut self, i: usize, j: usize, x: &Scalar) {
        self.data[i * self.cols + j] += x;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes"
        );
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Images of the basis vectors, i.e. the columns.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Matrices of the six generators on a labelled basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMatrices {
    pub labels: Vec<String>,
    pub e: Matrix,
    pub f: Matrix,
    pub k: Matrix,
    pub kinv: Matrix,
    pub x: Matrix,
    pub y: Matrix,
}

impl ModuleMatrices {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, g: Generator) -> &Matrix {
        match g {
            Generator::E => &self.e,
            Generator::F => &self.f,
            Generator::K => &self.k,
            Generator::Kinv => &self.kinv,
            Generator::X => &self.x,
            Generator::Y => &self.y,
        }
    }

    pub fn get_mut(&mut self, g: Generator) -> &mut Matrix {
        match g {
            Generator::E => &mut self.e,
            Generator::F => &mut self.f,
            Generator::K => &mut self.k,
            Generator::Kinv => &mut self.kinv,
            Generator::X => &mut self.x,
            Generator::Y => &mut self.y,
        }
    }

    /// `C = FE + (qK + q^{-1}K^{-1})/(q - q^{-1})^2`
    pub fn casimir(&self) -> Matrix {
        let d = q_minus_qinv::<num_bigint::BigInt>();
        let s = (&d * &d).inv().expect("nonzero");
        let cartan = self
            .k
            .scale(&Scalar::q())
            .add(&self.kinv.scale(&Scalar::q_pow(-1)));
        self.f.mul(&self.e).add(&cartan.scale(&s))
    }

    /// Dimension of the common kernel of `E` and `X`.
    pub fn maximal_space_dim(&self) -> usize {
        let n = self.dim();
        let mut ech = RowEchelon::new(n);
        for m in [&self.e, &self.x] {
            for i in 0..n {
                ech.insert(m.row(i));
            }
        }
        n - ech.rank()
    }

    /// Diagonal of `K`.
    pub fn k_eigenvalues(&self) -> Vec<Scalar> {
        (0..self.dim()).map(|i| self.k.get(i, i).clone()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Left side minus right side.
    pub residual: Matrix,
}

#[derive(Clone, Debug)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect()
    }
}

/// Checks the defining relations as matrix identities.
pub fn verify_module_relations(m: &ModuleMatrices, p: &CenterPolynomial) -> Result<RelationReport> {
    let n = m.dim();
    for g in Generator::ALL {
        let a = m.get(g);
        if a.rows() != n || a.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{:?} is {}x{}, expected {n}x{n}",
                g,
                a.rows(),
                a.cols()
            )));
        }
    }
    let (e, f, k, ki, x, y) = (&m.e, &m.f, &m.k, &m.kinv, &m.x, &m.y);
    let q = Scalar::q();
    let qi = Scalar::q_pow(-1);
    let id = Matrix::identity(n);
    let dinv = q_minus_qinv::<num_bigint::BigInt>().inv().expect("nonzero");
    let conj = |a: &Matrix| k.mul(a).mul(ki);
    let mut pc = Matrix::zeros(n, n);
    let c = m.casimir();
    for coeff in p.coeffs().iter().rev() {
        pc = pc.mul(&c).add(&id.scale(coeff));
    }
    let pairs: Vec<(&'static str, Matrix, Matrix)> = vec![
        ("K K^-1 = 1", k.mul(ki), id.clone()),
        ("K^-1 K = 1", ki.mul(k), id.clone()),
        ("K E K^-1 = q^2 E", conj(e), e.scale(&Scalar::q_pow(2))),
        ("K F K^-1 = q^-2 F", conj(f), f.scale(&Scalar::q_pow(-2))),
        (
            "EF - FE = (K - K^-1)/(q - q^-1)",
            e.mul(f).sub(&f.mul(e)),
            k.sub(ki).scale(&dinv),
        ),
        ("EX = q XE", e.mul(x), x.mul(e).scale(&q)),
        ("EY = X + q^-1 YE", e.mul(y), x.add(&y.mul(e).scale(&qi))),
        ("FX = Y K^-1 + XF", f.mul(x), y.mul(ki).add(&x.mul(f))),
        ("FY = YF", f.mul(y), y.mul(f)),
        ("K X K^-1 = q X", conj(x), x.scale(&q)),
        ("K Y K^-1 = q^-1 Y", conj(y), y.scale(&qi)),
        ("qYX - XY = p(C)", y.mul(x).scale(&q).sub(&x.mul(y)), pc),
    ];
    let checks = pairs
        .into_iter()
        .map(|(name, lhs, rhs)| {
            let residual = lhs.sub(&rhs);
            RelationCheck {
                name,
                pass: residual.is_zero(),
                residual,
            }
        })
        .collect();
    Ok(RelationReport { checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FiniteDim {
    /// Least `i` in `[1, n+1]` with `alpha_{r,i+1} = 0`.
    pub first_root: i64,
    pub dim: usize,
}

/// `V(r)` is finite dimensional exactly when `r = eps q^n` with `n >= 0` and
/// some `alpha_{r,i+1}`, `1 <= i <= n+1`, vanishes; then
/// `dim V(r) = sum_{j<i} (n - j + 1)` for the least such `i`.
pub fn finite_dim_test(p: &CenterPolynomial, r: &Weight) -> Result<Option<FiniteDim>> {
    p.require_nonzero()?;
    let Some((_, n)) = r.classify() else {
        return Ok(None);
    };
    if n < 0 {
        return Ok(None);
    }
    let Some(i) = (1..=n + 1).find(|i| alpha(p, r, i + 1).is_zero()) else {
        return Ok(None);
    };
    let dim: i64 = (0..i).map(|j| n - j + 1).sum();
    if maximal_vectors(p, r, i as u32)?.is_empty() {
        return Err(Error::ConstructionInconsistent(format!(
            "no maximal vector of weight q^-{i} r in Z({r})"
        )));
    }
    Ok(Some(FiniteDim {
        first_root: i,
        dim: dim as usize,
    }))
}

/// Explicit matrices for a finite-dimensional `V(r)`, on the basis
/// `F^l v_{t_i}` with `t_i = q^{-i} r`, `0 <= i < first_root`,
/// `0 <= l <= n - i`.
pub fn build_simple(p: &CenterPolynomial, r: &Weight) -> Result<ModuleMatrices> {
    let fd = finite_dim_test(p, r)?.ok_or_else(|| Error::NotFiniteDimensional(r.to_string()))?;
    let (_, n) = r
        .classify()
        .expect("finite dimensional weights are signed powers");
    let comps = fd.first_root as usize;
    let top = |i: usize| (n as usize) - i;
    let mut offset = vec![0usize; comps + 1];
    for i in 0..comps {
        offset[i + 1] = offset[i] + top(i) + 1;
    }
    let dim = offset[comps];
    debug_assert_eq!(dim, fd.dim);
    let idx = |i: isize, l: isize| -> Option<usize> {
        if i < 0 || i as usize >= comps || l < 0 || l as usize > top(i as usize) {
            None
        } else {
            Some(offset[i as usize] + l as usize)
        }
    };
    let mut labels = Vec::with_capacity(dim);
    for i in 0..comps {
        for l in 0..=top(i) {
            labels.push(format!("F^{l} v_t{i}"));
        }
    }
    let mut mats = ModuleMatrices {
        labels,
        e: Matrix::zeros(dim, dim),
        f: Matrix::zeros(dim, dim),
        k: Matrix::zeros(dim, dim),
        kinv: Matrix::zeros(dim, dim),
        x: Matrix::zeros(dim, dim),
        y: Matrix::zeros(dim, dim),
    };
    let t: Vec<Weight> = (0..comps).map(|i| r.shift(-(i as i64))).collect();
    let d: Vec<Scalar> = (0..=comps as i64)
        .map(|k| {
            if k >= 2 {
                d_const(p, r, k)
            } else {
                Ok(Scalar::zero())
            }
        })
        .collect::<Result<_>>()?;
    // Y F^l v_{t_i} = F^l v_{t_{i+1}} - d_{r,i+1} F^{l+1} v_{t_{i-1}}
    let y_image = |i: usize, l: usize| -> Vec<(usize, Scalar)> {
        let (i, l) = (i as isize, l as isize);
        let mut out = Vec::new();
        if let Some(k) = idx(i + 1, l) {
            out.push((k, Scalar::one()));
        }
        if i >= 1 {
            if let Some(k) = idx(i - 1, l + 1) {
                out.push((k, -d[(i + 1) as usize].clone()));
            }
        }
        out
    };
    for (i, ti) in t.iter().enumerate() {
        let ti = ti.value();
        let ti_inv = ti.inv()?;
        let xa = if i >= 1 {
            -(&alpha(p, r, i as i64 + 1) / &bracket_at(r, 2 - i as i64))
        } else {
            Scalar::zero()
        };
        for l in 0..=top(i) {
            let col = idx(i as isize, l as isize).expect("in range");
            let kval = &Scalar::q_pow(-2 * l as i64) * ti;
            mats.k.set(col, col, kval.clone());
            mats.kinv.set(col, col, kval.inv()?);
            if let Some(row) = idx(i as isize, l as isize + 1) {
                mats.f.set(row, col, Scalar::one());
            }
            if l >= 1 {
                let row = idx(i as isize, l as isize - 1).expect("in range");
                let c = &Scalar::q_pow(l as i64).bracket()? * &bracket_at(&t[i], 1 - l as i64);
                mats.e.set(row, col, c);
            }
            for (row, c) in y_image(i, l) {
                mats.y.add_at(row, col, &c);
            }
            // X F^l v = F^l X v + [X, F^l] v
            if i >= 1 {
                if let Some(row) = idx(i as isize - 1, l as isize) {
                    mats.x.add_at(row, col, &xa);
                }
            }
            if l >= 1 {
                let c = -&(&(&Scalar::q_pow(l as i64 - 1) * &Scalar::q_pow(l as i64).bracket()?)
                    * &ti_inv);
                for (row, y) in y_image(i, l - 1) {
                    mats.x.add_at(row, col, &(&c * &y));
                }
            }
        }
    }
    let report = verify_module_relations(&mats, p)?;
    if !report.all_pass() {
        return Err(Error::ConstructionInconsistent(
            report.failures().join("; "),
        ));
    }
    Ok(mats)
}

/// A composition factor `V(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub weight: Weight,
    pub dim: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct CompositionSeries {
    /// Factors in filtration order, from the top quotient down.
    pub factors: Vec<Factor>,
    /// Highest weights of the chain of Verma submodules, starting at `r`.
    pub chain: Vec<Weight>,
    /// Embeddings predicted at a weight outside `+-q^Z` whose maximal
    /// vector could not be found.
    pub flagged: Vec<String>,
    /// Pairs `(t, n)` with `alpha_{t,n+1} = 0` passed over because `Z(t)`
    /// has no maximal vector of weight `q^{-n} t`.
    pub skipped_roots: Vec<(Weight, i64)>,
}

fn factor(p: &CenterPolynomial, t: Weight) -> Result<Factor> {
    let dim = finite_dim_test(p, &t)?.map(|f| f.dim);
    Ok(Factor { weight: t, dim })
}

fn check_embedding(
    p: &CenterPolynomial,
    s: &Weight,
    m: i64,
    flagged: &mut Vec<String>,
) -> Result<bool> {
    let found = !maximal_vectors(p, s, m as u32)?.is_empty();
    if !found {
        flagged.push(format!(
            "no maximal vector of weight q^-{m} ({s}) in Z({s})"
        ));
    }
    Ok(found)
}

fn is_integral_top(t: &Weight) -> bool {
    matches!(t.classify(), Some((_, e)) if e >= 0)
}

/// Composition series of `Z(r)`.
///
/// While the current top `t = eps q^e` (`e >= 0`) has a finite-dimensional
/// simple quotient with least root `m`, the filtration contributes `V(t)`
/// and `V((q^3 t')^{-1})` and moves to `t' = q^{-m} t`. What remains is a
/// Verma module whose maximal submodule is again a Verma module: for an
/// integral top it sits at the first root of `alpha` carrying an actual
/// maximal vector. Otherwise the submodules form a chain through the roots.
/// At `t = eps q^e` with `e < 0` the bracket `<q^{1-j} t>` vanishes for
/// `j = e + 1`, so some roots are spurious; each link is confirmed by the
/// kernel solver and unconfirmed roots are skipped.
pub fn composition_series(p: &CenterPolynomial, r: &Weight) -> Result<CompositionSeries> {
    p.require_nonzero()?;
    let mut out = CompositionSeries {
        factors: Vec::new(),
        chain: vec![r.clone()],
        flagged: Vec::new(),
        skipped_roots: Vec::new(),
    };
    let mut t = r.clone();
    while let Some(fd) = finite_dim_test(p, &t)? {
        let next = t.shift(-fd.first_root);
        check_embedding(p, &t, fd.first_root, &mut out.flagged)?;
        out.factors.push(Factor {
            weight: t.clone(),
            dim: Some(fd.dim),
        });
        out.factors.push(factor(p, next.shift(3).inv())?);
        out.chain.push(next.clone());
        t = next;
    }
    loop {
        out.factors.push(factor(p, t.clone())?);
        let roots = alpha_root_set(p, &t)?;
        if roots.is_empty() {
            break;
        }
        if !is_integral_top(&t) {
            let power = t.classify().is_some();
            let mut prev = 0;
            for n in roots {
                let s = t.shift(-prev);
                let found = if power {
                    !maximal_vectors(p, &s, (n - prev) as u32)?.is_empty()
                } else {
                    check_embedding(p, &s, n - prev, &mut out.flagged)?
                };
                if !found {
                    out.skipped_roots.push((s, n - prev));
                    continue;
                }
                let w = t.shift(-n);
                out.factors.push(factor(p, w.clone())?);
                out.chain.push(w);
                prev = n;
            }
            break;
        }
        let mut found = None;
        for n in roots {
            if maximal_vectors(p, &t, n as u32)?.is_empty() {
                out.skipped_roots.push((t.clone(), n));
            } else {
                found = Some(n);
                break;
            }
        }
        match found {
            Some(n) => {
                t = t.shift(-n);
                out.chain.push(t.clone());
            }
            None => break,
        }
    }
    Ok(out)
}

/// Submodules of the three-dimensional module, as sets of basis indices.
#[derive(Clone, Debug)]
pub struct LatticeReport {
    pub submodules: Vec<Vec<usize>>,
    /// Whether `span(v_0)` has a complementary submodule.
    pub complement_exists: bool,
    pub semisimple: bool,
}

/// The module on `v_{-1}, v_0, v_1` (in that order) with `p = 0`:
/// `F v_1 = v_{-1}`, `E v_{-1} = v_1`, `Y v_1 = v_0`, `X v_{-1} = -q^{-1} v_0`,
/// all other basis actions zero.
pub fn c0_zero_counterexample() -> (ModuleMatrices, LatticeReport) {
    let mut m = ModuleMatrices {
        labels: vec!["v_-1".into(), "v_0".into(), "v_1".into()],
        e: Matrix::zeros(3, 3),
        f: Matrix::zeros(3, 3),
        k: Matrix::diagonal(vec![Scalar::q_pow(-1), Scalar::one(), Scalar::q()]),
        kinv: Matrix::diagonal(vec![Scalar::q(), Scalar::one(), Scalar::q_pow(-1)]),
        x: Matrix::zeros(3, 3),
        y: Matrix::zeros(3, 3),
    };
    m.f.set(0, 2, Scalar::one());
    m.e.set(2, 0, Scalar::one());
    m.y.set(1, 2, Scalar::one());
    m.x.set(1, 0, -Scalar::q_pow(-1));
    let lattice = eigenline_lattice(&m);
    (m, lattice)
}

/// Enumerates spans of basis vectors closed under every generator. This is
/// the full lattice when `K` is diagonal with distinct eigenvalues.
pub fn eigenline_lattice(m: &ModuleMatrices) -> LatticeReport {
    let n = m.dim();
    let mut subs = Vec::new();
    for mask in 0u32..(1 << n) {
        let inside = |i: usize| mask & (1 << i) != 0;
        let closed = Generator::ALL.iter().all(|g| {
            let a = m.get(*g);
            (0..n)
                .filter(|j| inside(*j))
                .all(|j| (0..n).all(|i| a.get(i, j).is_zero() || inside(i)))
        });
        if closed {
            subs.push((0..n).filter(|i| inside(*i)).collect::<Vec<_>>());
        }
    }
    subs.sort_by_key(|s| (s.len(), s.clone()));
    let full: Vec<usize> = (0..n).collect();
    let has = |s: &Vec<usize>| subs.contains(s);
    // every proper nonzero submodule needs a complement
    let complemented = |s: &Vec<usize>| {
        let rest: Vec<usize> = full.iter().copied().filter(|i| !s.contains(i)).collect();
        has(&rest)
    };
    let v0 = vec![1usize];
    let complement_exists = n == 3 && has(&v0) && complemented(&v0);
    let semisimple = subs.iter().all(complemented);
    LatticeReport {
        submodules: subs,
        complement_exists,
        semisimple,
    }
}

#[derive(Clone, Debug)]
pub struct C0ZeroReport {
    pub r: Weight,
    /// `Y^n v_r` killed by `E` and `X`, for `n = 0..=n_max`.
    pub y_powers_maximal: Vec<bool>,
    /// `X F^k v_r` lies in `Z(q^{-1} r) = k[Y,F] Y v_r`, for `k = 0..=n_max`.
    pub x_kills_quotient: Vec<bool>,
}

impl C0ZeroReport {
    pub fn all_pass(&self) -> bool {
        self.y_powers_maximal
            .iter()
            .chain(&self.x_kills_quotient)
            .all(|b| *b)
    }
}

fn in_joint_kernel(p: &CenterPolynomial, v: &VermaElement) -> Result<bool> {
    Ok(act(Generator::E, v, p)?.is_zero() && act(Generator::X, v, p)?.is_zero())
}

/// With `p` (normally zero): checks that every `Y^n v_r` is maximal and that
/// `X` maps each `F^k v_r` into the submodule generated by `Y v_r`.
pub fn c0_zero_verma_report_for(
    p: &CenterPolynomial,
    r: &Weight,
    n_max: u32,
) -> Result<C0ZeroReport> {
    let mut y_powers_maximal = Vec::new();
    let mut x_kills_quotient = Vec::new();
    for n in 0..=n_max {
        let v = VermaElement::basis(r, 0, n);
        y_powers_maximal.push(in_joint_kernel(p, &v)?);
        let xf = act(Generator::X, &VermaElement::basis(r, n, 0), p)?;
        x_kills_quotient.push(xf.terms().all(|((_, j), _)| *j >= 1));
    }
    Ok(C0ZeroReport {
        r: r.clone(),
        y_powers_maximal,
        x_kills_quotient,
    })
}

pub fn c0_zero_verma_report(r: &Weight, n_max: u32) -> Result<C0ZeroReport> {
    c0_zero_verma_report_for(&CenterPolynomial::zero(), r, n_max)
}
