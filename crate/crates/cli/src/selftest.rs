use std::time::Instant;

use dshuffle_core::moduli::{boundary_divisor_count, iota, limit_of_power_curve, point_r, project, zdiv_residue, Limit, Partition2};
use dshuffle_core::ncseries::{check_dmr0, exp_primitive, kz_associator, RationalRing};
use dshuffle_core::numeric::constants::pi;
use dshuffle_core::numeric::{bits_for_digits, eval_mzv, verify_mpl_pde};
use dshuffle_core::padic::{eval_li_padic, padic_log, verify_series_shuffle_padic};
use dshuffle_core::regularization::{check_regularization_relation_with, reg_integral, KnownRelations};
use dshuffle_core::relations::{generate_double_shuffle, verify_relations_numeric, RelationMatrix};
use dshuffle_core::word_algebra::{shuffle, stuffle};
use dshuffle_core::{Index, Letter, RegValue, Word};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::commands::{Failure, Outcome};
use crate::config::Config;
use crate::{Report, SelftestArgs};

#[derive(Debug, Serialize)]
struct Check {
    name: &'static str,
    passed: bool,
    detail: String,
    millis: u128,
}

type CheckResult = Result<String, String>;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn random_word(rng: &mut ChaCha8Rng, max: usize) -> Word {
    let len = rng.gen_range(0..=max);
    Word::new((0..len).map(|_| if rng.gen() { Letter::A } else { Letter::B }).collect())
}

fn random_index(rng: &mut ChaCha8Rng, depth: usize) -> Index {
    let d = rng.gen_range(0..=depth);
    Index::new((0..d).map(|_| rng.gen_range(1..=3)).collect()).expect("positive entries")
}

fn products(rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    for _ in 0..samples {
        let (u, v) = (random_word(rng, 4), random_word(rng, 4));
        fail_if(shuffle(&u, &v) != shuffle(&v, &u), || format!("shuffle of {u} and {v} is not commutative"))?;
        let (a, b) = (random_index(rng, 3), random_index(rng, 3));
        fail_if(stuffle(&a, &b) != stuffle(&b, &a), || format!("stuffle of {a} and {b} is not commutative"))?;
    }
    Ok(format!("{samples} random pairs"))
}

fn regularization() -> CheckResult {
    let mut fact = BigInt::one();
    for n in 1..=6u32 {
        fact *= BigInt::from(n);
        let expected = RegValue::t().neg().pow(n).scale(&BigRational::new(BigInt::one(), fact.clone()));
        fail_if(reg_integral(&Word::b_power(n as usize)).map_err(|e| e.to_string())? != expected, || format!("B^{n}"))?;
    }
    let ideal = KnownRelations::new(6);
    let mut count = 0;
    for w in 1..=6 {
        for index in Index::all_of_weight(w) {
            fail_if(!check_regularization_relation_with(&index, &ideal).holds, || format!("{index}"))?;
            count += 1;
        }
    }
    Ok(format!("base cases and {count} indices"))
}

fn relations(digits: u32) -> CheckResult {
    let z = |s: &str| RegValue::generator(&s.parse().unwrap()).unwrap();
    let target = z("(1,3)").scale(&q(4, 1)).sub(&z("(4)"));
    fail_if(!RelationMatrix::assemble(&generate_double_shuffle(4)).contains(&target), || "4 z(1,3) - z(4) not generated".into())?;
    let mut worst: f64 = 0.0;
    for w in 2..=5 {
        let v = verify_relations_numeric(&generate_double_shuffle(w), digits.min(40)).map_err(|e| e.to_string())?;
        fail_if(v.max_residual > 1e-20, || format!("weight {w}: residual {:e}", v.max_residual))?;
        worst = worst.max(v.max_residual);
    }
    Ok(format!("weights 2 to 5, max residual {worst:.1e}"))
}

fn numeric(digits: u32) -> CheckResult {
    let prec = bits_for_digits(digits);
    let z2 = eval_mzv(&"(2)".parse().unwrap(), digits).map_err(|e| e.to_string())?;
    let expected = pi(prec).pow(2).div_int(&BigInt::from(6));
    let d = z2.sub(&expected).abs_upper_f64();
    fail_if(d > 10f64.powi(-(digits as i32) + 3), || format!("zeta(2) off by {d:e}"))?;
    let pde = verify_mpl_pde(&"(2,1)".parse().unwrap(), &[q(1, 4), q(2, 5)], &q(1, 10000), 25)
        .map_err(|e| e.to_string())?;
    fail_if(pde.max_deviation > 1e-6, || format!("differential system deviation {:e}", pde.max_deviation))?;
    Ok(format!("zeta(2) within {d:.1e}, PDE deviation {:.1e}", pde.max_deviation))
}

fn padic(config: &Config, rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    let ctx = config.padic().map_err(|e| e.0)?;
    let p = ctx.p() as i64;
    let n = ctx.precision() as i64;
    let li = eval_li_padic(&"(1)".parse().unwrap(), &ctx.from_integer(p), &ctx).map_err(|e| e.to_string())?;
    let log = padic_log(&ctx.from_integer(1 - p), &ctx).map_err(|e| e.to_string())?;
    let diff = li.add(&log);
    fail_if(!diff.is_zero() || diff.abs_prec() < n - 3, || format!("Li1(p) + log(1-p) = {diff}"))?;
    let one: Index = "(1)".parse().unwrap();
    let mut worst = i64::MAX;
    for _ in 0..samples {
        let x = ctx.from_integer(p * rng.gen_range(1..20));
        let y = ctx.from_integer(p * rng.gen_range(1..20));
        let v = verify_series_shuffle_padic(&one, &[x], &one, &[y], &ctx).map_err(|e| e.to_string())?;
        fail_if(v < n - 3, || format!("series shuffle residual valuation {v}"))?;
        worst = worst.min(v);
    }
    Ok(format!("p = {p}, N = {n}, worst residual valuation {worst}"))
}

fn dmr(config: &Config, rng: &mut ChaCha8Rng, samples: usize) -> CheckResult {
    for _ in 0..samples {
        let alpha = q(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let beta = q(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        let r = check_dmr0(&exp_primitive(RationalRing, 4, &alpha, &beta).map_err(|e| e.to_string())?, 0.0);
        fail_if(!r.condition2, || format!("exp({alpha} A + {beta} B) not group-like"))?;
        fail_if(r.condition1 != (alpha.is_zero() && beta.is_zero()), || "condition 1 misjudged".into())?;
    }
    let degree = config.degree.min(5);
    let r = check_dmr0(&kz_associator(degree, config.digits.max(20)).map_err(|e| e.to_string())?.flip_b_sign(), 1e-15);
    fail_if(!r.passes(), || format!("associator at degree {degree}: {:?}", r.first_failure))?;
    Ok(format!("associator at degree {degree}, worst residual {:.1e}", r.worst_residual))
}

fn moduli() -> CheckResult {
    for n in 5..=9 {
        fail_if(Partition2::all(n).len() as u64 != boundary_divisor_count(n), || format!("divisor count n = {n}"))?;
    }
    for n in 2..=6 {
        fail_if(project(&iota(n)).map_err(|e| e.to_string())? != iota(n - 1), || format!("projection N = {n}"))?;
    }
    for n in 1..=5usize {
        let all: Vec<usize> = (1..=n).collect();
        fail_if(zdiv_residue(n, &all).map_err(|e| e.to_string())? != BigRational::one(), || format!("residue N = {n}"))?;
        let lim = limit_of_power_curve(n).map_err(|e| e.to_string())?;
        fail_if(lim != point_r(n).into_iter().map(Limit::Finite).collect::<Vec<_>>(), || format!("limit N = {n}"))?;
    }
    Ok("counts, projection, residues, limits".into())
}

pub fn run(args: &SelftestArgs, config: &Config) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let samples = args.samples;
    let mut checks = Vec::new();
    let mut record = |name: &'static str, f: &mut dyn FnMut() -> CheckResult| {
        let start = Instant::now();
        let result = f();
        let millis = start.elapsed().as_millis();
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        checks.push(Check { name, passed, detail, millis });
    };
    record("products", &mut || products(&mut rng, samples));
    record("regularization", &mut regularization);
    record("relations", &mut || relations(config.digits));
    record("numeric", &mut || numeric(config.digits));
    record("padic", &mut || padic(config, &mut rng, samples));
    record("dmr", &mut || dmr(config, &mut rng, samples));
    record("moduli", &mut moduli);
    let passed = checks.iter().all(|c| c.passed);
    let text: Vec<String> = checks
        .iter()
        .map(|c| format!("{} {}: {} ({} ms)", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail, c.millis))
        .collect();
    let json = json!({ "passed": passed, "seed": config.seed, "checks": checks });
    if passed {
        Ok(Report { json, text: text.join("\n") })
    } else {
        Err(Failure::Domain { kind: "SelfTestFailed".into(), message: text.join("; "), detail: Some(json) })
    }
}
