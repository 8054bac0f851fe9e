//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qonsager::coeffs::{admissible, c_closed, c_from_polynomial, c_recursive, verify_eta_against_reducer, CoeffTable, Pipeline};
use qonsager::freealg::{monomial, Letter, NCPolynomial, Word};
use qonsager::qcoeff::{q_binomial, q_int, LaurentScalar, RhoScalar};
use qonsager::reducer::{is_normal_form, reduce, RedexChoice, Reducer, RhoMode};
use qonsager::repcheck::{
    check_relation_matrix_with, derive_spectral_rho, spectral_polynomial_check_with, Branch, MatrixCheckOptions,
    SpectralParams,
};
use qonsager::verify::{build_delta, verify_qserre, verify_relation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn s(x: &str) -> LaurentScalar {
    x.parse().unwrap_or_else(|e| panic!("fixture `{x}`: {e:?}"))
}

fn qi(n: u32) -> LaurentScalar {
    q_int(n)
}

fn div(a: &LaurentScalar, b: &LaurentScalar) -> LaurentScalar {
    a.checked_div(b).expect("exact fixture quotient")
}

/// Displayed `p >= 1` entries for r <= 5; mirrors are filled in by `complete`.
fn displayed(r: usize) -> Vec<((usize, usize), LaurentScalar)> {
    let prod = |xs: &[LaurentScalar]| xs.iter().fold(LaurentScalar::one(), |a, x| &a * x);
    match r {
        1 => vec![((1, 0), LaurentScalar::one())],
        2 => vec![((1, 0), s("q^2 + 2 + q^-2")), ((1, 1), s("q^2 + 2 + q^-2"))],
        3 => vec![
            ((1, 0), s("q^4 + 2q^2 + 4 + 2q^-2 + q^-4")),
            ((1, 1), &qi(4) * &s("q^2 + 3 + q^-2")),
            ((2, 0), s("q^2 + 1 + q^-2").pow(2)),
        ],
        4 => vec![
            ((1, 0), &s("q^4 + 3 + q^-4") * &qi(2).pow(2)),
            ((1, 1), prod(&[qi(5), qi(3), qi(2).pow(2)])),
            ((2, 0), &s("q^2 + q^-2").pow(2) * &qi(2).pow(4)),
        ],
        5 => vec![
            ((1, 0), s("q^8 + 2q^6 + 4q^4 + 6q^2 + 9 + 6q^-2 + 4q^-4 + 2q^-6 + q^-8")),
            ((1, 1), div(&(&qi(6) * &s("q^8 + 4q^6 + 8q^4 + 14q^2 + 16 + 14q^-2 + 8q^-4 + 4q^-6 + q^-8")), &qi(3))),
            ((1, 2), div(&prod(&[qi(6), qi(5), s("q^4 + 3q^2 + 6 + 3q^-2 + q^-4")]), &qi(2))),
            (
                (2, 0),
                s("q^12 + 4q^10 + 11q^8 + 20q^6 + 31q^4 + 40q^2 + 45 + 40q^-2 + 31q^-4 + 20q^-6 + 11q^-8 + 4q^-10 + q^-12"),
            ),
            ((2, 1), div(&(&qi(6) * &s("q^10 + 6q^8 + 17q^6 + 32q^4 + 47q^2 + 53 + 47q^-2 + 32q^-4 + 17q^-6 + 6q^-8 + q^-10")), &qi(3))),
            ((3, 0), &qi(3).pow(2) * &qi(5).pow(2)),
        ],
        _ => unreachable!(),
    }
}

/// Full fixture table: binomial row plus displayed entries and their mirrors.
fn fixture(r: usize) -> BTreeMap<(usize, usize), LaurentScalar> {
    let mut out = BTreeMap::new();
    for k in 0..=r + 1 {
        out.insert((0, k), q_binomial(r as i64 + 1, k as i64).unwrap());
    }
    for ((p, k), v) in displayed(r) {
        out.insert((p, r + 1 - 2 * p - k), v.clone());
        out.insert((p, k), v);
    }
    out
}

fn ac1() -> Outcome {
    let mut compared = 0;
    for r in 1..=5 {
        let fix = fixture(r);
        let shape: Vec<_> = admissible(r).collect();
        ensure(fix.keys().copied().eq(shape.iter().copied()), || format!("fixture for r = {r} does not cover the table"))?;
        for pipeline in Pipeline::ALL {
            let t = pipeline.compute(r).map_err(|e| format!("{pipeline} r = {r}: {e}"))?;
            for (&(p, k), v) in &fix {
                let got = t.try_get(p, k).map_err(|e| e.to_string())?;
                ensure(got == v, || format!("{pipeline} c[{r},{p}]_{k} = {got}, fixture {v}"))?;
                compared += 1;
            }
        }
    }
    let c52 = &fixture(5)[&(2, 0)];
    ensure(c52.to_string().split(" + ").count() == 13, || "c[5,2]_0 is not a 13-term palindrome".into())?;
    Ok(format!("{compared} entry comparisons across 4 pipelines"))
}

fn ac2() -> Outcome {
    let mut detail = Vec::new();
    for r in 1..=12 {
        let rec = c_recursive(r).map_err(|e| e.to_string())?;
        let clo = c_closed(r).map_err(|e| e.to_string())?;
        let pol = c_from_polynomial(r).map_err(|e| e.to_string())?;
        ensure(rec.diff(&clo).is_empty(), || format!("r = {r}: recursive vs closed {:?}", rec.diff(&clo)))?;
        ensure(pol.diff(&clo).is_empty(), || format!("r = {r}: polynomial vs closed {:?}", pol.diff(&clo)))?;
    }
    for r in 1..=6 {
        let start = Instant::now();
        let sol = Pipeline::Solve.compute(r).map_err(|e| e.to_string())?;
        let clo = c_closed(r).map_err(|e| e.to_string())?;
        ensure(sol.diff(&clo).is_empty(), || format!("r = {r}: solve vs closed {:?}", sol.diff(&clo)))?;
        detail.push(format!("{r}:{}ms", start.elapsed().as_millis()));
    }
    Ok(format!("r <= 12 three-way, r <= 6 four-way (solve {})", detail.join(" ")))
}

fn all_tables(max_r: usize) -> Result<Vec<CoeffTable>, String> {
    let mut out = Vec::new();
    for r in 1..=max_r {
        for p in [Pipeline::Recursive, Pipeline::Closed, Pipeline::Polynomial] {
            out.push(p.compute(r).map_err(|e| format!("{p} r = {r}: {e}"))?);
        }
    }
    Ok(out)
}

fn ac3() -> Outcome {
    let mut n = 0;
    for t in all_tables(12)? {
        let r = t.r();
        for k in 0..=r + 1 {
            let expected = q_binomial(r as i64 + 1, k as i64).unwrap();
            ensure(t.get(0, k) == Some(&expected), || format!("{} c[{r},0]_{k}", t.pipeline()))?;
            n += 1;
        }
    }
    Ok(format!("{n} binomial entries"))
}

fn ac4() -> Outcome {
    let mut n = 0;
    for t in all_tables(12)? {
        let r = t.r();
        for ((p, k), v) in t.entries() {
            ensure(t.get(p, r + 1 - 2 * p - k) == Some(v), || format!("{} c[{r},{p}]_{k} not palindromic", t.pipeline()))?;
            ensure(v.is_bar_invariant(), || format!("{} c[{r},{p}]_{k} not invariant under q -> 1/q", t.pipeline()))?;
            n += 1;
        }
        let violations = t.check_invariants();
        ensure(violations.is_empty(), || format!("{} r = {r}: {violations:?}", t.pipeline()))?;
    }
    Ok(format!("{n} entries"))
}

fn ac5() -> Outcome {
    let mut detail = Vec::new();
    for r in 1..=6 {
        let cert = verify_relation(r, &c_closed(r).unwrap(), false).map_err(|e| e.to_string())?;
        ensure(cert.is_zero(), || format!("r = {r}: residual {}", cert.reduced_form))?;
        detail.push(format!("{r}:{}ms/{}", cert.elapsed.as_millis(), cert.term_count_peak));
    }
    for r in 1..=6 {
        let t = c_closed(r).unwrap();
        for ((p, k), v) in t.entries() {
            let bad = t.with_entry(p, k, v + &LaurentScalar::q_pow(2)).unwrap();
            let cert = verify_relation(r, &bad, false).map_err(|e| e.to_string())?;
            ensure(!cert.is_zero(), || format!("perturbed c[{r},{p}]_{k} still reduces to zero"))?;
        }
    }
    Ok(format!("zero for r <= 6 (time/peak terms {}); every single-entry perturbation caught", detail.join(" ")))
}

fn ac6() -> Outcome {
    for r in 1..=6 {
        ensure(verify_qserre(r).is_zero(), || format!("q-Serre r = {r} does not reduce to zero"))?;
        let cert = verify_relation(r, &c_closed(r).unwrap(), true).map_err(|e| e.to_string())?;
        ensure(cert.is_zero(), || format!("rho = 0 relation r = {r}"))?;
    }
    for r in 1..=12 {
        let t = c_closed(r).unwrap();
        let delta = build_delta(r, &t, true).map_err(|e| e.to_string())?;
        ensure(delta.terms().all(|(_, c)| c.degree() == Some(0)), || format!("r = {r}: rho in the p = 0 part"))?;
        for k in 0..=r + 1 {
            ensure(t.get(0, k) == Some(&q_binomial(r as i64 + 1, k as i64).unwrap()), || format!("c[{r},0]_{k}"))?;
        }
    }
    Ok("reductions r <= 6, binomial row r <= 12".into())
}

fn ac7() -> Outcome {
    let report = verify_eta_against_reducer(12);
    ensure(report.passed(), || format!("{:?}", report.first_mismatch))?;
    let j = Word::parse("J").unwrap();
    for m in (2..=12).step_by(2) {
        let tail = reduce(&monomial(m, 1, 0), RhoMode::Formal).coeff(&j);
        ensure(tail.degree() == Some(m / 2), || format!("I^{m} J: tail {tail}"))?;
    }
    let (lo, hi) = (report.checked.first().unwrap(), report.checked.last().unwrap());
    Ok(format!("I^m J for {lo} <= m <= {hi}; rho^(m/2) J tail for even m <= 12"))
}

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Word {
    let n = rng.gen_range(0..=max);
    let letters: Vec<Letter> = (0..n).map(|_| if rng.gen_bool(0.6) { Letter::I } else { Letter::J }).collect();
    Word::from_letters(&letters)
}

fn random_poly(rng: &mut ChaCha8Rng, max: usize) -> NCPolynomial {
    let n = rng.gen_range(1..=3);
    (0..n)
        .map(|_| {
            let c = LaurentScalar::from_int(rng.gen_range(-3..=3)) * LaurentScalar::q_pow(rng.gen_range(-2..=2));
            (random_word(rng, max), RhoScalar::monomial(c, rng.gen_range(0..2)))
        })
        .collect()
}

fn ac10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xac10);
    let formal = Reducer::new(RhoMode::Formal);
    let mut steps = 0usize;
    for i in 0..1000 {
        let x = random_poly(&mut rng, 14);
        let y = random_poly(&mut rng, 14);
        let mut decreasing = true;
        let (a, _) = formal.reduce_observed(&x, |from, to| {
            steps += 1;
            decreasing &= to.iter().all(|t| t < from);
        });
        ensure(decreasing, || format!("input {i}: a rewrite step did not decrease the word"))?;
        ensure(is_normal_form(&a) && formal.reduce(&a) == a, || format!("input {i}: not idempotent"))?;
        let seeded = Reducer::new(RhoMode::Formal).with_choice(RedexChoice::Seeded(rng.gen())).reduce(&x);
        ensure(seeded == a, || format!("input {i}: result depends on redex order"))?;
        let (sa, sb) = (
            RhoScalar::constant(LaurentScalar::from_int(rng.gen_range(-4..=4))),
            RhoScalar::monomial(LaurentScalar::q_pow(rng.gen_range(-2..=2)), 1),
        );
        let lhs = reduce(&(&x.scale(&sa) + &y.scale(&sb)), RhoMode::Formal);
        let rhs = &a.scale(&sa) + &reduce(&y, RhoMode::Formal).scale(&sb);
        ensure(lhs == rhs, || format!("input {i}: not linear"))?;
    }
    Ok(format!("1000 inputs, {steps} observed rewrites"))
}

fn ac8() -> Outcome {
    let mut points = 0;
    let mut factors = std::collections::BTreeSet::new();
    for branch in [Branch::Zero, Branch::Nonzero] {
        for r in 1..=5 {
            let opts = MatrixCheckOptions { samples: 20, seed: 0x8a8, branch, ..Default::default() };
            let report = check_relation_matrix_with(r, &c_closed(r).unwrap(), &opts).map_err(|e| e.to_string())?;
            if let Some(p) = report.points.iter().find(|p| !p.zero) {
                return Err(format!("{branch:?} r = {r}: nonzero matrix at point {} ({:?})", p.index, p.params));
            }
            for p in &report.points {
                factors.insert(p.normalization.clone().unwrap_or_else(|| "undefined".into()));
            }
            points += report.points.len();
        }
    }
    let factors: Vec<_> = factors.into_iter().collect();
    Ok(format!("{points} points zero; calibrated rho / (c_0 cbar_0) = {}", factors.join(", ")))
}

fn ac9() -> Outcome {
    let minus = |c: &LaurentScalar| {
        let d = &LaurentScalar::q_pow(1) - &LaurentScalar::q_pow(-1);
        -&(&c.pow(2) * &d.pow(2))
    };
    let cs = [LaurentScalar::one(), s("2q - 1")];
    for c in &cs {
        let params = SpectralParams::new(c.clone());
        let rho = derive_spectral_rho(&params, 10, &[-4, 0, 3, 7]).map_err(|e| e.to_string())?;
        ensure(rho == minus(c), || format!("oracle rho {rho} for C = {c}"))?;
        for r in 1..=8 {
            let report = spectral_polynomial_check_with(r, &params);
            ensure(report.oracle && report.passed, || format!("C = {c}, r = {r}: {:?}", report.offsets))?;
        }
    }
    Ok("oracle rho = -C^2 (q - 1/q)^2; band structure r <= 8 for two values of C".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "fixture equality r <= 5", Duration::from_secs(5), ac1),
        ("AC2", "pipeline agreement", Duration::from_secs(120), ac2),
        ("AC3", "q-binomial row r <= 12", Duration::from_secs(5), ac3),
        ("AC4", "palindromic and bar symmetry r <= 12", Duration::from_secs(10), ac4),
        ("AC5", "symbolic relation r <= 6", Duration::from_secs(600), ac5),
        ("AC6", "rho = 0 degeneration", Duration::from_secs(60), ac6),
        ("AC7", "eta expansion m <= 12", Duration::from_secs(60), ac7),
        ("AC8", "matrix evidence r <= 5", Duration::from_secs(30), ac8),
        ("AC9", "spectral band structure r <= 8", Duration::from_secs(30), ac9),
        ("AC10", "reducer properties", Duration::from_secs(120), ac10),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > budget => Err(format!("{d}; over budget {budget:?}")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("{id} PASS {name}: {d} [{:.2}s]", elapsed.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("{id} FAIL {name}: {e} [{:.2}s]", elapsed.as_secs_f64());
            }
        }
    }
    println!("{}/10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
