use std::process::Command;

use dshuffle_cli::run_with_env;
use dshuffle_core::moduli::StableTree;
use dshuffle_core::padic::PAdic;
use dshuffle_core::relations::{Relation, RelationMatrix};
use dshuffle_core::RegValue;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde_json::Value;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn z(s: &str) -> RegValue {
    RegValue::generator(&s.parse().unwrap()).unwrap()
}

fn call(args: &[&str]) -> (u8, Value) {
    let mut argv = vec!["dshuffle"];
    argv.extend_from_slice(args);
    let out = run_with_env(argv, None);
    let json = serde_json::from_str(&out.stdout).unwrap_or(Value::Null);
    (out.code, json)
}

fn text(args: &[&str]) -> String {
    let mut argv = vec!["dshuffle", "--format", "text"];
    argv.extend_from_slice(args);
    let out = run_with_env(argv, None);
    assert_eq!(out.code, 0, "{}", out.stderr);
    out.stdout.trim_end().to_string()
}

#[test]
fn series_regularization_of_one_one() {
    let (code, json) = call(&["regularize", "--mode", "series", "--index", "(1,1)"]);
    assert_eq!(code, 0);
    let value: RegValue = serde_json::from_value(json["value"].clone()).unwrap();
    let expected = RegValue::t().pow(2).sub(&z("(2)")).scale(&q(1, 2));
    assert_eq!(value, expected);
}

#[test]
fn integral_regularization_by_word_and_index_agree() {
    let (_, a) = call(&["regularize", "--mode", "integral", "--word", "BAB"]);
    let (_, b) = call(&["regularize", "--mode", "integral", "--index", "(2,1)"]);
    assert_eq!(a["value"], b["value"]);
    let (code, err) = call(&["regularize", "--mode", "integral", "--word", "BA"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "WordEndsInA");
}

#[test]
fn lmap_inputs() {
    let (code, json) = call(&["lmap", "--t-power", "2"]);
    assert_eq!(code, 0);
    let v: RegValue = serde_json::from_value(json["value"].clone()).unwrap();
    assert_eq!(v, RegValue::t().pow(2).sub(&z("(2)")));
    let input = serde_json::to_string(&RegValue::t().pow(2)).unwrap();
    let (_, again) = call(&["lmap", "--value", &input]);
    assert_eq!(again["value"], json["value"]);
    let (code, _) = call(&["lmap", "--value", "not json"]);
    assert_eq!(code, 64);
}

#[test]
fn weight_four_relations_verify() {
    let (code, json) = call(&["relations", "--weight", "4", "--verify-digits", "25"]);
    assert_eq!(code, 0);
    let rels: Vec<Relation> = serde_json::from_value(json["relations"].clone()).unwrap();
    assert_eq!(rels.len() as u64, json["count"].as_u64().unwrap());
    let target = z("(1,3)").scale(&q(4, 1)).sub(&z("(4)"));
    assert!(RelationMatrix::assemble(&rels).contains(&target));
    assert!(json["verification"]["max_residual"].as_f64().unwrap() < 1e-20);
    assert_eq!(json["verification"]["digits"], 25);

    let (_, reduced) = call(&["relations", "--weight", "4", "--reduce"]);
    let basis: Vec<Relation> = serde_json::from_value(reduced["relations"].clone()).unwrap();
    assert_eq!(basis.len() as u64, json["rank"].as_u64().unwrap());
    assert!(RelationMatrix::assemble(&basis).contains(&target));
}

#[test]
fn relations_are_deterministic_for_a_seed() {
    let a = call(&["--seed", "9", "relations", "--weight", "5"]);
    let b = call(&["--seed", "9", "relations", "--weight", "5", "--threads", "3"]);
    assert_eq!(a, b);
    let (code, _) = call(&["relations", "--weight", "1"]);
    assert_eq!(code, 64);
}

#[test]
fn zeta_three() {
    let (code, json) = call(&["eval", "--index", "(1,2)", "--digits", "30"]);
    assert_eq!(code, 0);
    // zeta(3) to 30 decimals
    assert_eq!(json["value"], "1.202056903159594285399738161511");
    assert!(json["error_exponent"].as_f64().unwrap() < -30.0);
    let (_, direct) = call(&["eval", "--index", "(1,2)", "--digits", "30", "--strategy", "direct"]);
    assert_eq!(direct["value"], json["value"]);
    assert_eq!(direct["rigorous"], false);
}

#[test]
fn digits_from_environment_and_flags() {
    let out = run_with_env(["dshuffle", "eval", "--index", "(2)"], Some("12".into()));
    let json: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(json["value"], "1.644934066848");
    let out = run_with_env(["dshuffle", "eval", "--index", "(2)", "--digits", "5"], Some("12".into()));
    let json: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(json["value"], "1.64493");
    let out = run_with_env(["dshuffle", "eval", "--index", "(2)"], Some("many".into()));
    assert_eq!(out.code, 64);
}

#[test]
fn config_file_is_applied() {
    let dir = std::env::temp_dir().join(format!("dshuffle-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("config.toml");
    std::fs::write(&path, "digits = 8\nformat = \"text\"\np = 5\nprecision = 10\n").unwrap();
    let p = path.to_str().unwrap();
    let out = run_with_env(["dshuffle", "--config", p, "eval", "--index", "(2)"], None);
    assert!(out.stdout.starts_with("zeta(2) = 1.64493407  (error < 10^"), "{}", out.stdout);
    let out = run_with_env(["dshuffle", "--config", p, "eval-padic", "--index", "(1)", "--point", "5"], None);
    assert!(out.stdout.trim().ends_with("+ O(5^10)"), "{}", out.stdout);
    let out = run_with_env(["dshuffle", "--config", "/nonexistent/x.toml", "eval", "--index", "(2)"], None);
    assert_eq!(out.code, 64);
}

#[test]
fn multiple_polylogarithm() {
    let (code, json) = call(&["eval-mpl", "--index", "(1,1)", "--point", "0.2,0.3", "--digits", "25"]);
    assert_eq!(code, 0);
    // Oracle: exact nested sum truncated where the tail is far below 10^-25.
    let (x, y) = (q(1, 5), q(3, 10));
    let mut sum = BigRational::zero();
    let mut inner = BigRational::zero();
    for k in 1..=80i64 {
        sum += &inner * Pow::pow(&y, k as u32) / q(k, 1);
        inner += Pow::pow(&x, k as u32) / q(k, 1);
    }
    let scaled = (sum * BigRational::from_integer(BigInt::from(10).pow(25u32))).round().to_integer();
    let digits = json["re"].as_str().unwrap().replace('.', "");
    let got: BigInt = digits.parse().unwrap();
    assert!((got - scaled).magnitude() <= &1u32.into());
    let (code, _) = call(&["eval-mpl", "--index", "(1,1)", "--point", "0.2,0.3,0.4"]);
    assert_eq!(code, 64);
    let (code, err) = call(&["eval-mpl", "--index", "(2)", "--point", "0.99"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "OutOfRegion");
}

#[test]
fn padic_polylogarithm() {
    let (code, json) = call(&["eval-padic", "--p", "7", "--prec", "15", "--branch", "0", "--index", "(1,1)", "--point", "7,14"]);
    assert_eq!(code, 0);
    assert_eq!(json["abs_precision"], 15);
    let display = json["display"].as_str().unwrap();
    assert!(display.starts_with("7^") && display.ends_with("+ O(7^15)"), "{display}");
    // Oracle: exact double sum far past the precision, compared through the digit expansion.
    let mut exact = BigRational::zero();
    for k2 in 1..=40i64 {
        for k1 in 1..k2 {
            exact += Pow::pow(&q(7, 1), k1 as u32) * Pow::pow(&q(14, 1), k2 as u32) / q(k1 * k2, 1);
        }
    }
    let v = json["valuation"].as_i64().unwrap();
    let mut lifted = BigRational::zero();
    for (i, d) in json["digits"].as_array().unwrap().iter().enumerate() {
        lifted += q(d.as_i64().unwrap(), 1) * Pow::pow(&q(7, 1), (v + i as i64) as u32);
    }
    let diff = PAdic::from_rational(&(exact - lifted), 7, 40);
    assert!(diff.is_zero() || diff.valuation() >= 15);

    let (code, err) = call(&["eval-padic", "--p", "7", "--index", "(1,1)", "--point", "1,3"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "NotInDisc");
    for bad in [["--p", "9"], ["--prec", "0"]] {
        let mut args = vec!["eval-padic", "--index", "(1)", "--point", "7"];
        args.extend_from_slice(&bad);
        assert_eq!(call(&args).0, 64);
    }
}

#[test]
fn dmr_reports() {
    let (code, json) = call(&["dmr-check", "--degree", "5", "--source", "complex", "--digits", "25"]);
    assert_eq!(code, 0);
    for c in ["condition1", "condition2", "condition3"] {
        assert_eq!(json[c], true, "{c}");
    }
    assert!(json["worst_residual"].as_f64().unwrap() < 1e-15);
    let (_, e) = call(&["dmr-check", "--degree", "4", "--source", "exp", "--alpha", "1/2", "--beta", "3"]);
    assert_eq!((e["condition1"].clone(), e["condition2"].clone()), (false.into(), true.into()));
    let (_, u) = call(&["dmr-check", "--degree", "6", "--source", "unit"]);
    assert_eq!(u["condition3"], true);
    let (code, err) = call(&["dmr-check", "--degree", "11"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "UnsupportedDegree");
}

#[test]
fn moduli_queries() {
    assert_eq!(text(&["moduli", "point-r", "--n", "3"]), "(1/2, 2/3, 0)");
    assert_eq!(text(&["moduli", "point-r", "--n", "4"]), "(1/2, 2/3, 3/4, 0)");
    let (_, d) = call(&["moduli", "divisors", "--n", "7", "--list"]);
    assert_eq!(d["count"], 56);
    assert_eq!(d["divisors"].as_array().unwrap().len(), 56);
    let (_, i) = call(&["moduli", "intersect", "--p", "1,2|3,4,5,6,7", "--q", "1,2,3|4,5,6,7"]);
    assert_eq!(i["intersect"], true);
    let (_, i) = call(&["moduli", "intersect", "--p", "1,2|3,4,5,6,7", "--q", "1,3|2,4,5,6,7"]);
    assert_eq!(i["intersect"], false);
    let (code, err) = call(&["moduli", "intersect", "--p", "1,2|3,4,5", "--q", "1,2|3,4,5,6"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "LabelMismatch");
}

#[test]
fn chart_tree_json_round_trip() {
    let chain = "1,2|3,4,5,6;1,2,3|4,5,6;1,2,3,4|5,6";
    let (code, json) = call(&["moduli", "chart", "--tree", chain]);
    assert_eq!(code, 0);
    assert_eq!(json["coordinates"].as_array().unwrap().len(), 3);
    let tree_json = serde_json::to_string(&json["tree"]).unwrap();
    let (_, again) = call(&["moduli", "chart", "--tree", &tree_json]);
    assert_eq!(again, json);
    assert_eq!(StableTree::from_json(&serde_json::from_value(json["tree"].clone()).unwrap()).unwrap().to_string(), chain);
    let (_, ranked) = call(&["moduli", "chart", "--tree", chain, "--ranking", "2,3,4,5,6,1"]);
    assert_eq!(ranked["coordinates"].as_array().unwrap().len(), 3);
    let (code, err) = call(&["moduli", "chart", "--tree", "1,2|3,4,5,6;1,3|2,4,5,6"]);
    assert_eq!(code, 2);
    assert_eq!(err["error"]["kind"], "UnstableTree");
}

#[test]
fn selftest_passes() {
    let (code, json) = call(&["selftest", "--samples", "3"]);
    assert_eq!(code, 0, "{json}");
    assert_eq!(json["passed"], true);
    assert_eq!(json["checks"].as_array().unwrap().len(), 7);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(call(&["eval"]).0, 64);
    assert_eq!(call(&["frobnicate"]).0, 64);
    let (code, err) = call(&["eval", "--index", "(0,2)"]);
    assert_eq!(code, 64);
    assert_eq!(err["error"]["kind"], "UsageError");
    assert_eq!(call(&["regularize", "--mode", "series", "--index", "(1)", "--word", "B"]).0, 64);
    let help = run_with_env(["dshuffle", "--help"], None);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("dmr-check"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_dshuffle");
    let ok = Command::new(bin).args(["moduli", "point-r", "--n", "2", "--format", "text"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), "(1/2, 0)");
    let domain = Command::new(bin).args(["eval", "--index", "(2,1)"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(2));
    let body: Value = serde_json::from_slice(&domain.stdout).unwrap();
    assert_eq!(body["error"]["kind"], "NonAdmissible");
    let usage = Command::new(bin).args(["eval", "--digits", "x"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(64));
}
