//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quiver_moduli::catalog::{parse_example, rank_one_smallness_report, Example};
use quiver_moduli::deform::{generic_deformation, is_generic_deformation};
use quiver_moduli::invariants::{
    betti_candidate, betti_coprime, dt_invariants, ic_poincare_dt, ic_poincare_resolution, p_poly,
};
use quiver_moduli::strata::{
    certify_smallness, codim_lower_bound, fiber_dim_bound, local_quiver, luna_types, nullcone_dim_bound,
    smallness_margin, HalfInt,
};
use quiver_moduli::{DimVector, HalfLaurent, Limits, RatFunc, SlopeSeries, Stability};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn example(s: &str) -> Example {
    parse_example(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn deformed(ex: &Example, lim: &Limits) -> Result<Stability, String> {
    match &ex.deformed_stability {
        Some(t) => lib(t.normalize(&ex.dimension)),
        None => lib(generic_deformation(&lib(ex.stability.normalize(&ex.dimension))?, &ex.dimension, lim)),
    }
}

// Integer polynomials in q, ascending coefficients.

fn pmul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn pdiv_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len();
    let lead = *den.last().unwrap();
    let mut quot = vec![0; num.len() + 1 - dl];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1];
        assert_eq!(c % lead, 0);
        quot[k] = c / lead;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= quot[k] * d;
        }
    }
    assert!(rem.iter().all(|&x| x == 0), "inexact division");
    quot
}

/// `1 - q^k`.
fn one_minus_q(k: usize) -> Vec<i64> {
    let mut v = vec![0; k + 1];
    v[0] = 1;
    v[k] -= 1;
    v
}

/// `q^(mr) [m choose r]_q` via `prod_{i<r} (1 - q^(m-i)) / (1 - q^(i+1))`.
fn determinantal_oracle(m: usize, r: usize) -> HalfLaurent {
    let mut num = vec![1];
    let mut den = vec![1];
    for i in 0..r {
        num = pmul(&num, &one_minus_q(m - i));
        den = pmul(&den, &one_minus_q(i + 1));
    }
    let mut g = vec![0; m * r];
    g.extend(pdiv_exact(&num, &den));
    HalfLaurent::from_q_coeffs(&g)
}

/// Point count of projective (m-1)-space.
fn projective_count(m: usize) -> HalfLaurent {
    HalfLaurent::from_q_coeffs(&vec![1; m])
}

fn criterion_1() -> Check {
    let lim = Limits::default();
    for m in 1..=5 {
        let ex = example(&format!("kronecker:{m}"));
        let b = lib(betti_coprime(&ex.quiver, &ex.dimension, &ex.stability, &lim))?;
        let expect = projective_count(m);
        ensure(b == expect, || format!("m={m}: got {b}, expected {expect}"))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let lim = Limits::default();
    for (m, r) in [(2usize, 1usize), (3, 1), (3, 2)] {
        let ex = example(&format!("determinantal:{m},{r}"));
        let t = ex.deformed_stability.clone().unwrap();
        let a = lib(ic_poincare_dt(&ex.quiver, &ex.dimension, &ex.stability, &lim))?;
        let b = lib(ic_poincare_resolution(&ex.quiver, &ex.dimension, &ex.stability, &t, &lim))?;
        let expect = determinantal_oracle(m, r);
        ensure(a == expect, || format!("({m},{r}) DT route: got {a}, expected {expect}"))?;
        ensure(b == expect, || format!("({m},{r}) resolution route: got {b}, expected {expect}"))?;
    }
    Ok(())
}

fn criterion_3() -> Check {
    let lim = Limits::default();
    let ex = example("levi_adjoint:3");
    let t = ex.deformed_stability.clone().unwrap();
    let expect = HalfLaurent::from_q_coeffs(&[0, 0, 0, 0, 0, 1, 1, 1]);
    let a = lib(ic_poincare_dt(&ex.quiver, &ex.dimension, &ex.stability, &lim))?;
    let b = lib(ic_poincare_resolution(&ex.quiver, &ex.dimension, &ex.stability, &t, &lim))?;
    ensure(a == b, || format!("routes disagree: {a} vs {b}"))?;
    ensure(a == expect, || format!("got {a}, expected {expect}"))
}

fn criterion_4() -> Check {
    let lim = Limits::default();
    for s in [
        "determinantal:2,1",
        "determinantal:2,2",
        "determinantal:3,1",
        "determinantal:3,2",
        "determinantal:3,3",
        "levi_adjoint:3",
        "points:4,2",
        "bipartite:2,1,1,1,1",
        "bipartite:1,2,1,1,1",
        "bipartite:2,2,1,1,1,2",
    ] {
        let ex = example(s);
        let theta = lib(ex.stability.normalize(&ex.dimension))?;
        ensure(lib(ex.quiver.symmetric_on_kernel(&theta))?, || format!("{s}: kernel not symmetric"))?;
        let prime = deformed(&ex, &lim)?;
        let a = lib(dt_invariants(&ex.quiver, &theta, &ex.dimension, &lim))?;
        let b = lib(dt_invariants(&ex.quiver, &prime, &ex.dimension, &lim))?;
        let mut compared = 0;
        for (e, x) in &a {
            if let Some(y) = b.get(e) {
                compared += 1;
                ensure(x == y, || format!("{s}: DT{e} differs: {x} vs {y}"))?;
            }
        }
        ensure(compared >= 1, || format!("{s}: no common slope-0 exponent"))?;
    }
    Ok(())
}

fn random_series(rng: &mut ChaCha8Rng, bound: &DimVector) -> SlopeSeries {
    let mut s = SlopeSeries::zero(bound.clone());
    for a in 0..=bound.coords()[0] {
        for b in 0..=bound.coords()[1] {
            if (a, b) == (0, 0) || rng.gen_bool(0.4) {
                continue;
            }
            let c: i64 = rng.gen_range(-3..=3);
            let k: i64 = rng.gen_range(-3..=3);
            let coeff = RatFunc::v_power(k).scale(&num_rational::BigRational::from_integer(c.into()));
            s.set(DimVector::new(vec![a, b]).unwrap(), coeff);
        }
    }
    s
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let bound = DimVector::new(vec![2, 2]).unwrap();
    for i in 0..100 {
        let f = random_series(&mut rng, &bound);
        let back = lib(lib(f.pleth_exp())?.pleth_log())?;
        ensure(back == f, || format!("roundtrip {i} failed"))?;
    }
    for i in 0..20 {
        let f = random_series(&mut rng, &bound);
        let g = random_series(&mut rng, &bound);
        let lhs = lib(lib(f.add(&g))?.pleth_exp())?;
        let rhs = lib(lib(f.pleth_exp())?.mul(&lib(g.pleth_exp())?))?;
        ensure(lhs == rhs, || format!("multiplicativity {i} failed"))?;
    }
    Ok(())
}

const SMALLNESS_INPUTS: [&str; 4] = ["determinantal:2,1", "determinantal:3,1", "levi_adjoint:3", "points:4,2"];

fn criterion_6() -> Check {
    let lim = Limits::default();
    for s in SMALLNESS_INPUTS {
        let ex = example(s);
        let t = deformed(&ex, &lim)?;
        let r = lib(certify_smallness(&ex.quiver, &ex.dimension, &ex.stability, &t, true, &lim))?;
        ensure(r.verdict.is_certified(), || format!("{s}: {}", r.verdict))?;
        for rec in r.strata.iter().filter(|x| x.filtered.is_none()) {
            let m = rec.margin.ok_or_else(|| format!("{s}: missing margin"))?;
            ensure(m <= HalfInt::ZERO, || format!("{s}: positive margin {m}"))?;
            ensure(m.is_zero() == rec.trivial, || {
                format!("{s}: margin {m} on type {} (trivial={})", rec.luna_type, rec.trivial)
            })?;
        }
    }
    for m in 1..=4 {
        for n in 1..=4 {
            let r = lib(rank_one_smallness_report(m, n))?;
            ensure(r.small == (m <= n), || format!("rank-one ({m},{n}): small={}", r.small))?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let lim = Limits::default();
    for s in [
        "determinantal:2,1",
        "determinantal:3,1",
        "determinantal:3,2",
        "points:4,2",
        "points:3,2",
        "points:5,3",
        "levi_adjoint:3",
        "levi_adjoint:4",
        "levi_adjoint:2,1,2",
        "bipartite:2,1,1,1,1",
        "bipartite:2,2,1,1,1,2",
        "abelianized:2,2,1,2",
        "kronecker_general:2,2",
        "kronecker_general:3,1",
        "kronecker:3",
    ] {
        let ex = example(s);
        let theta = lib(ex.stability.normalize(&ex.dimension))?;
        let t = lib(generic_deformation(&theta, &ex.dimension, &lim))?;
        let c = lib(is_generic_deformation(&theta, &t, &ex.dimension, &lim))?;
        ensure(c.passes(), || format!("{s}: constructed {t} fails: {}", c.summary()))?;
    }
    for s in ["determinantal:2,1", "determinantal:3,1", "determinantal:3,2", "points:4,2", "points:5,3"] {
        let ex = example(s);
        let theta = lib(ex.stability.normalize(&ex.dimension))?;
        let t = ex.deformed_stability.clone().unwrap();
        let c = lib(is_generic_deformation(&theta, &t, &ex.dimension, &lim))?;
        ensure(c.passes(), || format!("{s}: displayed {t} fails: {}", c.summary()))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let ex = example("determinantal:2,1");
    let r = lib(betti_candidate(&ex.quiver, &ex.dimension, &Stability::zero(2), &Limits::default()))?;
    ensure(!r.is_laurent() && !r.denominator().sub(&HalfLaurent::one()).is_zero(), || {
        format!("(q-1)p_d is a polynomial: {r}")
    })
}

fn criterion_9() -> Check {
    let lim = Limits::default();
    for s in ["kronecker:1", "kronecker:2", "kronecker:3", "kronecker:4"] {
        let ex = example(s);
        let base = lib(p_poly(&ex.quiver, &ex.dimension, &ex.stability, &lim))?;
        for x in 1..=3 {
            for y in -2..=2 {
                let t = ex.stability.affine(x, y);
                let p = lib(p_poly(&ex.quiver, &ex.dimension, &t, &lim))?;
                ensure(p == base, || format!("{s}: p_d changes under x={x}, y={y}"))?;
            }
        }
    }
    for m in 1..=5 {
        let ex = example(&format!("kronecker:{m}"));
        let b = lib(betti_coprime(&ex.quiver, &ex.dimension, &ex.stability, &lim))?;
        let dd = lib(ex.quiver.euler_form(&ex.dimension, &ex.dimension))?;
        ensure(b.q_degree() == Some(1 - dd), || format!("m={m}: degree {:?} vs {}", b.q_degree(), 1 - dd))?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let lim = Limits::default();
    for s in SMALLNESS_INPUTS {
        let ex = example(s);
        let theta = lib(ex.stability.normalize(&ex.dimension))?;
        let t = deformed(&ex, &lim)?;
        for xi in lib(luna_types(&ex.quiver, &ex.dimension, &theta, &lim))? {
            let Ok((lq, ld, _)) = local_quiver(&ex.quiver, &xi, &t) else {
                continue;
            };
            let Ok(fiber) = fiber_dim_bound(&ex.quiver, &xi) else {
                continue;
            };
            let codim = lib(codim_lower_bound(&ex.quiver, &ex.dimension, &xi))?;
            let margin = lib(smallness_margin(&ex.quiver, &ex.dimension, &xi))?;
            ensure(margin.twice() == fiber.twice() - codim, || {
                format!("{s} {xi}: margin {margin} != {fiber} - {codim}/2")
            })?;
            let local_bound = lib(nullcone_dim_bound(&lq, &ld))? + HalfInt::from_int(1);
            ensure(local_bound == fiber, || format!("{s} {xi}: local bound {local_bound} != {fiber}"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Kronecker Betti polynomials", criterion_1),
        ("determinantal IC, both routes", criterion_2),
        ("Levi torus IC", criterion_3),
        ("DT deformation invariance", criterion_4),
        ("plethystic roundtrip and multiplicativity", criterion_5),
        ("smallness certification", criterion_6),
        ("generic deformation soundness", criterion_7),
        ("non-coprime sanity", criterion_8),
        ("invariance and degree", criterion_9),
        ("bound identities", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {:>2} PASS  {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
