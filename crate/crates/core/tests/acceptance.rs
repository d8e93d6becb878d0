//! Acceptance criteria, one line each.
//!
//! A check marked as a known conflict asserts a value stated in the build
//! contract that exact computation contradicts. It is still evaluated and
//! reported as FAIL; the run only errors when an outcome differs from the
//! recorded one, in either direction.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brac, q, FormulaVerma};
use num_traits::One;
use qoscillator::blocks::{alpha_root_set, example_polynomial, semisimplicity_check};
use qoscillator::center::{centralizer_basis, CentralizerQuery};
use qoscillator::pbw::{system_for, CenterPolynomial, PbwMonomial};
use qoscillator::repn::{
    build_simple, c0_zero_counterexample, c0_zero_verma_report, finite_dim_test,
    verify_module_relations,
};
use qoscillator::rewrite::FreeElement;
use qoscillator::verma::{
    act, alpha, bracket_at, c0_scalar, c_scalar, d_const, maximal_vectors, sl2_maximal_vectors,
    structure_vector, Generator, VermaElement, Weight,
};
use qoscillator::Scalar;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const SEED: u64 = 0x5eed_0a1c;

struct Check {
    name: String,
    ok: bool,
    conflict: Option<&'static str>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.0.push(Check {
            name: name.into(),
            ok,
            conflict: None,
        });
    }

    fn conflict(&mut self, name: impl Into<String>, ok: bool, why: &'static str) {
        self.0.push(Check {
            name: name.into(),
            ok,
            conflict: Some(why),
        });
    }
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Checks,
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn rand_scalar(rng: &mut StdRng) -> Scalar {
    let a = loop {
        let a: i64 = rng.gen_range(-9..=9);
        if a != 0 {
            break a;
        }
    };
    let b: i64 = rng.gen_range(1..=9);
    &(&Scalar::from_int(a) / &Scalar::from_int(b)) * &q(rng.gen_range(-4..=4))
}

fn rand_generic_weight(rng: &mut StdRng) -> Weight {
    loop {
        let w = Weight::new(rand_scalar(rng)).unwrap();
        if w.classify().is_none() {
            return w;
        }
    }
}

fn rand_poly(rng: &mut StdRng) -> CenterPolynomial {
    loop {
        let deg = rng.gen_range(0..=2);
        let coeffs: Vec<Scalar> = (0..=deg)
            .map(|_| match rng.gen_range(0..3) {
                0 => Scalar::from_int(0),
                1 => Scalar::from_int(rng.gen_range(-3..=3)),
                _ => q(rng.gen_range(-2..=2)),
            })
            .collect();
        let p = CenterPolynomial::new(coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `alpha_{r,m}` summed straight from its definition.
fn alpha_direct(p: &CenterPolynomial, r: &Weight, m: i64) -> Scalar {
    let mut s = Scalar::from_int(0);
    for j in 0..=m - 2 {
        let c0 = p.eval(&c_scalar(&r.shift(-j)));
        s = &s + &(&brac(&(&q(1 - j) * r.value())) * &c0);
    }
    s
}

fn three_polys() -> [CenterPolynomial; 3] {
    [
        CenterPolynomial::zero(),
        CenterPolynomial::identity(),
        example_polynomial(),
    ]
}

fn c1_confluence() -> Checks {
    let mut c = Checks::default();
    for (name, p) in ["0", "t", "p_ex"].iter().zip(three_polys()) {
        let rep = system_for(&p).unwrap().verify_confluence().unwrap();
        let listed = rep
            .ambiguities
            .iter()
            .filter(|a| a.hand_checked && a.resolved)
            .count();
        c.check(
            format!("p = {name}: 16 listed ambiguities resolved"),
            listed == 16,
        );
        c.check(
            format!(
                "p = {name}: every detected overlap resolved ({})",
                rep.ambiguities.len()
            ),
            rep.all_resolved(),
        );
        c.check(
            format!("p = {name}: all listed words detected"),
            rep.missing_words().is_empty(),
        );
        let extra = rep.extra_words();
        c.conflict(
            format!("p = {name}: no overlaps beyond the 16 (extra: {})", extra.join(" ")),
            extra.is_empty(),
            "the rule set has 26 overlap words; the 10 unlisted ones involve the KL = LK = 1 rules and all resolve",
        );
    }
    c
}

fn c2_pbw_freeness() -> Checks {
    let mut c = Checks::default();
    let sys = system_for(&example_polynomial()).unwrap();
    let mut words = BTreeSet::new();
    let mut fixed = true;
    let mut count = 0;
    for a in 0..=4u32 {
        for b in 0..=4 - a {
            for d in 0..=4 - a - b {
                for e in 0..=4 - a - b - d {
                    let rest = (4 - a - b - d - e) as i32;
                    for k in -rest..=rest {
                        let m = PbwMonomial::new(a, b, k, d, e);
                        let w = m.to_word();
                        let nf = sys.normal_form(&FreeElement::from_word(w.clone())).unwrap();
                        fixed &= nf == FreeElement::from_word(w.clone());
                        fixed &= PbwMonomial::from_word(&w) == Some(m);
                        words.insert(w);
                        count += 1;
                    }
                }
            }
        }
    }
    c.check(format!("normal_form fixes all {count} monomials"), fixed);
    // distinct irreducible words: a combination normalizes to itself, so only
    // the zero combination vanishes
    c.check("monomial words pairwise distinct", words.len() == count);
    c
}

fn c3_identities() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(SEED);
    let (mut s1, mut la, mut lb) = (true, true, true);
    for _ in 0..100 {
        let a = rand_scalar(&mut rng);
        let b = rand_scalar(&mut rng);
        let ainv = a.inv().unwrap();
        s1 &= &(&a * &brac(&b)) - &(&b * &brac(&a)) == brac(&(&ainv * &b));
        la &= brac(&ainv) == -brac(&a);
        lb &= &(&q(-1) * &brac(&b)) + &b == brac(&(&q(1) * &b));
        // the library bracket agrees with the oracle
        s1 &= a.bracket().unwrap() == brac(&a);
    }
    c.check("a<b> - b<a> = <a^-1 b> (100 pairs)", s1);
    c.check("<a^-1> = -<a> (100)", la);
    c.check("q^-1 <b> + b = <qb> (100)", lb);
    let (mut rec, mut add, mut def) = (true, true, true);
    for _ in 0..100 {
        let r = rand_generic_weight(&mut rng);
        let p = rand_poly(&mut rng);
        let n: i64 = rng.gen_range(2..=9);
        let lhs = &bracket_at(&r, 1 - n) * &d_const(&p, &r, n + 1).unwrap();
        let rhs = &(&bracket_at(&r, 3 - n) * &d_const(&p, &r, n).unwrap())
            + &c0_scalar(&p, &r.shift(1 - n));
        rec &= lhs == rhs;
        let m: i64 = rng.gen_range(0..=6);
        let up = r.shift(n);
        add &= alpha_direct(&p, &up, n + m + 1)
            == &alpha_direct(&p, &up, n + 1) + &alpha_direct(&p, &r, m + 1);
        def &= alpha(&p, &r, n + m + 1) == alpha_direct(&p, &r, n + m + 1);
    }
    c.check("d recurrence (100 instances)", rec);
    c.check("alpha additivity (100 instances)", add);
    c.check("library alpha matches definition (100)", def);
    c
}

fn c4_formulas() -> Checks {
    let mut c = Checks::default();
    let weights = [
        Weight::new(Scalar::from_int(2)).unwrap(),
        Weight::q_pow(3),
        Weight::signed_q_pow(-1, 2),
    ];
    for (name, p) in ["0", "t", "p_ex"].iter().zip(three_polys()) {
        for r in &weights {
            let mut oracle = FormulaVerma::new(&p, r);
            let mut ok = true;
            for n in 0..=5 {
                for m in 0..=5 {
                    let v = VermaElement::basis(r, n, m);
                    ok &= act(Generator::E, &v, &p).unwrap() == oracle.e(&v);
                    ok &= act(Generator::X, &v, &p).unwrap() == oracle.x(&v);
                }
            }
            c.check(format!("p = {name}, r = {r}"), ok);
        }
    }
    c
}

fn c5_structure() -> Checks {
    let mut c = Checks::default();
    let mut rng = StdRng::seed_from_u64(SEED ^ 5);
    let mut cases: Vec<(CenterPolynomial, Weight)> = Vec::new();
    for _ in 0..4 {
        cases.push((rand_poly(&mut rng), rand_generic_weight(&mut rng)));
    }
    let (mut rn, mut shape) = (true, true);
    for (p, r) in &cases {
        for n in 2..=8i64 {
            let v1 = structure_vector(p, r, (n - 1) as u32).unwrap();
            let v2 = structure_vector(p, r, (n - 2) as u32).unwrap();
            let coef = -(&alpha(p, r, n) / &bracket_at(r, 3 - n));
            rn &= act(Generator::X, &v1, p).unwrap() == v2.scale(&coef);
            shape &= v1.coeff(0, (n - 1) as u32).is_one();
            shape &= v1.weight_index() == Some((n - 1) as u32);
        }
    }
    c.check("structure equations, 2 <= n <= 8, four generic (p, r)", rn);
    c.check("structure vectors monic of pure weight", shape);
    let fixed = [
        (
            CenterPolynomial::identity(),
            Weight::new(Scalar::from_int(2)).unwrap(),
        ),
        (
            example_polynomial(),
            Weight::new(&Scalar::from_int(3) * &q(2)).unwrap(),
        ),
        (example_polynomial(), Weight::q_pow(1)),
        (CenterPolynomial::identity(), Weight::q_pow(2)),
        (example_polynomial(), Weight::signed_q_pow(-1, 1)),
    ];
    let mut unique = true;
    let mut spaces = 0;
    // random deformations of degree two grow quickly in the kernel solve
    for (p, r) in &cases {
        for n in 1..=6 {
            unique &= maximal_vectors(p, r, n).unwrap().len() <= 1;
            spaces += 1;
        }
    }
    for (p, r) in &fixed {
        for n in 1..=10 {
            unique &= maximal_vectors(p, r, n).unwrap().len() <= 1;
            spaces += 1;
        }
    }
    c.check(
        format!("maximal vectors unique in {spaces} weight spaces"),
        unique,
    );
    c
}

fn c6_example() -> Checks {
    let mut c = Checks::default();
    let p = example_polynomial();
    let roots = alpha_root_set(&p, &Weight::q_pow(1)).unwrap();
    c.check(
        "every claimed root vanishes and none in 1..=60 is missed",
        (1..=60).all(|n| roots.contains(&n) == alpha(&p, &Weight::q_pow(1), n + 1).is_zero()),
    );
    c.conflict(
        format!("alpha_root_set(p_ex, q) = {{1, 4}} (found {roots:?})"),
        roots == BTreeSet::from([1, 4]),
        "alpha_{q,6} = 0 by the symmetry alpha_{eps q^n, 2n+4} = 0 of criterion 7, so 5 is a root",
    );
    let mut found = Vec::new();
    for eps in [1i8, -1] {
        for n in -15..=15 {
            let r = Weight::signed_q_pow(eps, n);
            if let Some(fd) = finite_dim_test(&p, &r).unwrap() {
                found.push((r.to_string(), fd.dim));
            }
        }
    }
    c.check(
        format!("only V(q), of dim 2, is finite dimensional for r = +-q^n, |n| <= 15 ({found:?})"),
        found == vec![("q".to_string(), 2)],
    );
    let m = build_simple(&p, &Weight::q_pow(1)).unwrap();
    c.check(
        "build_simple(p_ex, q) satisfies all relations",
        verify_module_relations(&m, &p).unwrap().all_pass(),
    );
    c.check(
        "simplicity witness: one maximal line",
        m.maximal_space_dim() == 1,
    );
    c.check(
        "K eigenvalues q, q^-1",
        m.k_eigenvalues() == vec![q(1), q(-1)],
    );
    c.check(
        "semisimplicity_check(p_ex, 15) = PASS",
        semisimplicity_check(&p, 15).unwrap().pass,
    );
    c
}

fn c7_symmetry() -> Checks {
    let mut c = Checks::default();
    let t2 = CenterPolynomial::monomial(Scalar::one(), 2);
    for (name, p) in [
        ("t", CenterPolynomial::identity()),
        ("t^2", t2),
        ("p_ex", example_polynomial()),
    ] {
        let ok = (0..=10i64).all(|n| {
            [1i8, -1]
                .iter()
                .all(|e| alpha(&p, &Weight::signed_q_pow(*e, n), 2 * n + 4).is_zero())
        });
        c.check(
            format!("p = {name}: alpha(eps q^n, 2n+4) = 0 for n <= 10"),
            ok,
        );
    }
    c
}

fn c8_counterexample() -> Checks {
    let mut c = Checks::default();
    let (m, lat) = c0_zero_counterexample();
    c.check(
        "relations hold with p = 0",
        verify_module_relations(&m, &CenterPolynomial::zero())
            .unwrap()
            .all_pass(),
    );
    c.check(
        "submodules are 0, span(v_0), V",
        lat.submodules == vec![vec![], vec![1], vec![0, 1, 2]],
    );
    c.check(
        "span(v_0) has no complement",
        !lat.complement_exists && !lat.semisimple,
    );
    c
}

/// Left side of the condition for `(Y^3 - b F Y) v_eps` to be killed by `X`.
fn eq_suff(p: &CenterPolynomial, eps: i8) -> Scalar {
    let r = Weight::signed_q_pow(eps, 0);
    let c0 = c0_scalar(p, &r);
    let cr = c_scalar(&r);
    let c0m = c0_scalar(p, &r.shift(-1));
    let e = Scalar::from_int(eps as i64);
    let b = &e * &(&(&(&q(1) + &q(-1)) * &c0) + &c0m);
    &(&(&c0 * &(&cr - &c0)) * &b) + &(&c0 * &(&c0 - &p.eval(&c0)))
}

fn c9_section_eleven() -> Checks {
    let mut c = Checks::default();
    let p = CenterPolynomial::identity();
    let mut ok = true;
    for eps in [1i8, -1] {
        for n in 0..=5i64 {
            let r = Weight::signed_q_pow(eps, n);
            let idx = (n + 2) as u32;
            let monic = sl2_maximal_vectors(&p, &r, idx)
                .unwrap()
                .iter()
                .any(|v| !v.coeff(0, idx).is_zero());
            ok &= !monic || alpha(&p, &r, n + 3).is_zero();
        }
    }
    c.check(
        "p = t: sl2-maximal at eps q^-2 only if alpha(r, n+3) = 0, n <= 5",
        ok,
    );
    let p = CenterPolynomial::monomial(Scalar::from_int(2), 1);
    let one = Scalar::one();
    for eps in [1i8, -1] {
        let r = Weight::signed_q_pow(eps, 0);
        c.check(
            format!("p = 2t, eps = {eps}: alpha(eps, 4) = 0"),
            alpha(&p, &r, 4).is_zero(),
        );
        c.check(
            format!("p = 2t, eps = {eps}: no maximal vector at index 3"),
            maximal_vectors(&p, &r, 3).unwrap().is_empty(),
        );
        let lhs = eq_suff(&p, eps);
        // lhs (q^2-1)^7 / (q^6-1) = -8 q^2 (q^2+1)^2
        let scaled = &(&lhs * &(&q(2) - &one).pow(7).unwrap()) / &(&q(6) - &one);
        let expect = &(&q(2) * &(&q(2) + &one).pow(2).unwrap()) * &Scalar::from_int(-8);
        c.check(
            format!("p = 2t, eps = {eps}: obstruction is a nonzero multiple of q^6 - 1"),
            !lhs.is_zero() && scaled == expect,
        );
    }
    c
}

fn c10_center() -> Checks {
    let mut c = Checks::default();
    let p = example_polynomial();
    let res = centralizer_basis(&CentralizerQuery::new(p.clone(), [2, 2, 2, 2, 2])).unwrap();
    let unit = PbwMonomial::new(0, 0, 0, 0, 0);
    c.check(
        "scalars lie in the centralizer",
        res.basis.iter().any(|z| !z.coeff(&unit).is_zero()),
    );
    c.conflict(
        format!(
            "dimension 1 within bounds (2,2,2,2,2) (found {})",
            res.dimension
        ),
        res.dimension == 1,
        "a weight-zero element of degree <= 2 in each variable commutes with E, F, K, X, Y",
    );
    if let Some(z) = res.basis.iter().find(|z| z.len() > 1) {
        let r = Weight::new(Scalar::from_int(2)).unwrap();
        let mut fv = FormulaVerma::new(&p, &r);
        let lambda = fv.apply(z, &fv.basis(0, 0)).coeff(0, 0);
        let scalar_action = [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (0, 3), (1, 2)]
            .iter()
            .all(|(n, m)| {
                let u = fv.basis(*n, *m);
                fv.apply(z, &u) == u.scale(&lambda)
            });
        c.check(
            "the extra element acts by a scalar on Z(2) (closed-formula action)",
            scalar_action,
        );
    }
    c
}

fn c11_c0_zero() -> Checks {
    let mut c = Checks::default();
    for r in [Weight::new(Scalar::from_int(2)).unwrap(), Weight::q_pow(3)] {
        let rep = c0_zero_verma_report(&r, 6).unwrap();
        c.check(
            format!("r = {r}: Y^n v_r maximal for n <= 6"),
            rep.y_powers_maximal.iter().all(|b| *b),
        );
        c.check(
            format!("r = {r}: X F^k v_r in Z(q^-1 r) for k <= 6"),
            rep.x_kills_quotient.iter().all(|b| *b),
        );
    }
    c
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "confluence of the rewriting system",
            limit: secs(5),
            run: c1_confluence,
        },
        Criterion {
            id: 2,
            title: "PBW freeness, total degree <= 4",
            limit: secs(30),
            run: c2_pbw_freeness,
        },
        Criterion {
            id: 3,
            title: "bracket and alpha identities",
            limit: secs(10),
            run: c3_identities,
        },
        Criterion {
            id: 4,
            title: "Verma action vs closed commutation formulas",
            limit: secs(60),
            run: c4_formulas,
        },
        Criterion {
            id: 5,
            title: "structure vectors and uniqueness of maximal vectors",
            limit: None,
            run: c5_structure,
        },
        Criterion {
            id: 6,
            title: "worked example p_ex",
            limit: secs(120),
            run: c6_example,
        },
        Criterion {
            id: 7,
            title: "alpha(eps q^n, 2n+4) = 0",
            limit: secs(30),
            run: c7_symmetry,
        },
        Criterion {
            id: 8,
            title: "three-dimensional C_0 = 0 module",
            limit: secs(5),
            run: c8_counterexample,
        },
        Criterion {
            id: 9,
            title: "counterexamples to the converse statements",
            limit: secs(60),
            run: c9_section_eleven,
        },
        Criterion {
            id: 10,
            title: "bounded center",
            limit: secs(300),
            run: c10_center,
        },
        Criterion {
            id: 11,
            title: "C_0 = 0 Verma modules",
            limit: None,
            run: c11_c0_zero,
        },
    ];
    let mut unexpected = 0;
    let mut failed = 0;
    for cr in criteria {
        let start = Instant::now();
        let mut checks = (cr.run)();
        let took = start.elapsed();
        if let Some(limit) = cr.limit {
            checks.check(
                format!(
                    "runtime {:.2} s < {} s",
                    took.as_secs_f64(),
                    limit.as_secs()
                ),
                took < limit,
            );
        }
        let pass = checks.0.iter().all(|c| c.ok);
        let limit = cr
            .limit
            .map_or("none".to_string(), |l| format!("{} s", l.as_secs()));
        println!(
            "criterion {:>2} {:<4} {:<52} [{:.2} s, limit {}]",
            cr.id,
            if pass { "PASS" } else { "FAIL" },
            cr.title,
            took.as_secs_f64(),
            limit
        );
        if !pass {
            failed += 1;
        }
        for ch in &checks.0 {
            match (ch.ok, ch.conflict) {
                (true, None) => {}
                (false, Some(why)) => println!("    FAIL {} [known conflict: {why}]", ch.name),
                (false, None) => {
                    unexpected += 1;
                    println!("    FAIL {}", ch.name);
                }
                (true, Some(_)) => {
                    unexpected += 1;
                    println!(
                        "    PASS {} [recorded as a conflict; analysis is stale]",
                        ch.name
                    );
                }
            }
        }
    }
    println!(
        "acceptance: {} of 11 criteria PASS, {} unexpected outcomes",
        11 - failed,
        unexpected
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
