use dshuffle_core::moduli::{
    boundary_divisor_count, chart_coordinates, chart_coordinates_ranked, divisors_intersect, point_r, Partition2,
    StableTree, TreeJson,
};
use dshuffle_core::ncseries::{check_dmr0, exp_primitive, kz_associator, NCSeries, RationalRing, MAX_KZ_DEGREE};
use dshuffle_core::numeric::{bits_for_digits, eval_mpl_multi, eval_mpl_one, eval_mzv_with, real_point, MplPoint, MzvStrategy};
use dshuffle_core::padic::{eval_li_padic, eval_mpl_padic, PAdic};
use dshuffle_core::regularization::{l_map, reg_integral, reg_series, RegTermJson};
use dshuffle_core::relations::{
    generate_double_shuffle_with, rank_and_nullspace, verify_relations_numeric, GenerationOptions, RelationMatrix,
};
use dshuffle_core::word_algebra::parse_rational;
use dshuffle_core::{Error, RegValue};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::config::Config;
use crate::{
    Command, DmrArgs, DmrSource, EvalArgs, EvalMplArgs, EvalPadicArgs, LmapArgs, ModuliCommand, RegMode,
    RegularizeArgs, RelationsArgs, Report, Strategy,
};

/// Why a command did not produce a report.
#[derive(Debug, Clone, PartialEq)]
pub enum Failure {
    Usage(String),
    Domain { kind: String, message: String, detail: Option<Value> },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => Failure::Usage(m),
            e => Failure::Domain { kind: e.kind().into(), message: e.to_string(), detail: None },
        }
    }
}

pub type Outcome = Result<Report, Failure>;

pub fn execute(command: &Command, config: &Config) -> Outcome {
    match command {
        Command::Relations(a) => relations(a, config),
        Command::Regularize(a) => regularize(a),
        Command::Lmap(a) => lmap(a),
        Command::Eval(a) => eval(a, config),
        Command::EvalMpl(a) => eval_mpl(a, config),
        Command::EvalPadic(a) => eval_padic(a, config),
        Command::DmrCheck(a) => dmr_check(a, config),
        Command::Moduli(m) => moduli(m),
        Command::Selftest(a) => crate::selftest::run(a, config),
    }
}

fn value_json(v: &RegValue) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn relations(a: &RelationsArgs, config: &Config) -> Outcome {
    if a.weight < 2 || a.weight > 10 {
        return Err(Failure::Usage(format!("weight must be in 2..=10, got {}", a.weight)));
    }
    let options = GenerationOptions { pair_order_seed: (config.seed != 0).then_some(config.seed), threads: a.threads };
    let generated = generate_double_shuffle_with(a.weight, &options);
    let reduction = rank_and_nullspace(&RelationMatrix::assemble(&generated));
    let list = if a.reduce { reduction.basis.clone() } else { generated };
    let verification = match a.verify_digits {
        Some(_) => Some(verify_relations_numeric(&list, config.digits)?),
        None => None,
    };
    let mut text = String::new();
    for (k, r) in list.iter().enumerate() {
        text.push_str(&format!("{r}"));
        if let Some(v) = &verification {
            text.push_str(&format!("   residual {:.1e}", v.residuals[k]));
        }
        text.push('\n');
    }
    text.push_str(&format!("{} relations, rank {}\n", list.len(), reduction.rank));
    let json = json!({
        "weight": a.weight,
        "count": list.len(),
        "rank": reduction.rank,
        "relations": list,
        "verification": verification,
    });
    Ok(Report { json, text })
}

fn regularize(a: &RegularizeArgs) -> Outcome {
    let (input, value) = match (a.mode, &a.input.index, &a.input.word) {
        (RegMode::Series, Some(i), _) => (i.to_string(), reg_series(i)),
        (RegMode::Series, None, Some(_)) => {
            return Err(Failure::Usage("series regularization takes --index".into()));
        }
        (RegMode::Integral, Some(i), _) => (i.to_string(), reg_integral(&i.to_word())?),
        (RegMode::Integral, None, Some(w)) => (w.to_string(), reg_integral(w)?),
        (_, None, None) => unreachable!("clap requires one input"),
    };
    let mode = match a.mode {
        RegMode::Integral => "integral",
        RegMode::Series => "series",
    };
    Ok(Report {
        json: json!({ "mode": mode, "input": input, "value": value_json(&value), "display": value.to_string() }),
        text: value.to_string(),
    })
}

fn lmap(a: &LmapArgs) -> Outcome {
    let (input, value) = if let Some(i) = &a.index {
        (format!("reg_integral({i})"), reg_integral(&i.to_word())?)
    } else if let Some(k) = a.t_power {
        (format!("T^{k}"), RegValue::t().pow(k))
    } else if let Some(s) = &a.value {
        let terms: Vec<RegTermJson> =
            serde_json::from_str(s).map_err(|e| Failure::Usage(format!("bad --value JSON: {e}")))?;
        let v = RegValue::from_json_terms(&terms)?;
        (v.to_string(), v)
    } else {
        unreachable!("clap requires one input")
    };
    let image = l_map(&value);
    Ok(Report {
        json: json!({ "input": input, "value": value_json(&image), "display": image.to_string() }),
        text: image.to_string(),
    })
}

fn eval(a: &EvalArgs, config: &Config) -> Outcome {
    let strategy = match a.strategy {
        Strategy::Holder => MzvStrategy::Holder,
        Strategy::Direct => MzvStrategy::Direct,
    };
    let v = eval_mzv_with(&a.index, config.digits, strategy)?;
    let decimal = v.value.to_decimal(config.digits);
    let exponent = v.value.error_exponent();
    Ok(Report {
        json: json!({
            "index": a.index.to_string(),
            "digits": config.digits,
            "value": decimal,
            "error_exponent": finite_or_null(exponent),
            "rigorous": v.rigorous,
            "strategy": strategy,
        }),
        text: format!("zeta{} = {decimal}  (error < 10^{exponent:.1})", a.index),
    })
}

fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn parse_point(s: &str) -> Result<Vec<BigRational>, Failure> {
    s.split(',').map(|c| parse_rational(c).map_err(Failure::from)).collect()
}

fn eval_mpl(a: &EvalMplArgs, config: &Config) -> Outcome {
    let point = parse_point(&a.point)?;
    let depth = a.index.depth();
    let prec = bits_for_digits(config.digits);
    let value = if point.len() == depth {
        eval_mpl_multi(&a.index, &MplPoint::from_rationals(&point, prec), config.digits)?
    } else if point.len() == 1 {
        eval_mpl_one(&a.index, &real_point(&point[0], prec), config.digits)?
    } else {
        return Err(Failure::Usage(format!("index has depth {depth} but the point has {} coordinates", point.len())));
    };
    let report = value.report(config.digits);
    let text = format!("Li{} = {} + {} i  (error < 10^{:.1})", a.index, report.re, report.im, report.error_exponent);
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["index"] = json!(a.index.to_string());
    json["point"] = json!(point.iter().map(ToString::to_string).collect::<Vec<_>>());
    json["error_exponent"] = finite_or_null(report.error_exponent);
    Ok(Report { json, text })
}

fn padic_json(v: &PAdic) -> Value {
    json!({
        "display": v.to_string(),
        "is_zero": v.is_zero(),
        "valuation": if v.is_zero() { Value::Null } else { json!(v.valuation()) },
        "digits": v.digits(),
        "abs_precision": v.abs_prec(),
    })
}

fn eval_padic(a: &EvalPadicArgs, config: &Config) -> Outcome {
    let ctx = config.padic().map_err(|e| Failure::Usage(e.0))?;
    let point: Vec<PAdic> = parse_point(&a.point)?.iter().map(|q| ctx.from_rational(q)).collect();
    let depth = a.index.depth();
    let value = if point.len() == depth {
        eval_mpl_padic(&a.index, &point, &ctx)?
    } else if point.len() == 1 {
        eval_li_padic(&a.index, &point[0], &ctx)?
    } else {
        return Err(Failure::Usage(format!("index has depth {depth} but the point has {} coordinates", point.len())));
    };
    let mut json = padic_json(&value);
    json["p"] = json!(ctx.p());
    json["precision"] = json!(ctx.precision());
    json["branch"] = json!(config.branch.to_string());
    json["index"] = json!(a.index.to_string());
    Ok(Report { json, text: value.to_string() })
}

fn dmr_check(a: &DmrArgs, config: &Config) -> Outcome {
    let degree = config.degree;
    let (report, source) = match a.source {
        DmrSource::Complex => {
            if degree > MAX_KZ_DEGREE {
                return Err(Error::UnsupportedDegree(degree).into());
            }
            let phi = kz_associator(degree, config.digits)?.flip_b_sign();
            (check_dmr0(&phi, a.tolerance.unwrap_or(1e-15)), "complex")
        }
        DmrSource::Exp => {
            let alpha = parse_rational(&a.alpha)?;
            let beta = parse_rational(&a.beta)?;
            let g = exp_primitive(RationalRing, degree, &alpha, &beta)?;
            (check_dmr0(&g, a.tolerance.unwrap_or(0.0)), "exp")
        }
        DmrSource::Unit => (check_dmr0(&NCSeries::one(RationalRing, degree), a.tolerance.unwrap_or(0.0)), "unit"),
    };
    let text = format!(
        "degree {}: condition1 {}, condition2 {}, condition3 {}, worst residual {:.1e}{}",
        report.degree,
        report.condition1,
        report.condition2,
        report.condition3,
        report.worst_residual,
        report.first_failure.as_ref().map(|f| format!(", first failure: {f}")).unwrap_or_default()
    );
    let mut json = serde_json::to_value(&report).expect("serializable");
    json["source"] = json!(source);
    Ok(Report { json, text })
}

fn parse_tree(s: &str) -> Result<StableTree, Failure> {
    if s.trim_start().starts_with('{') {
        let json: TreeJson = serde_json::from_str(s).map_err(|e| Failure::Usage(format!("bad tree JSON: {e}")))?;
        return Ok(StableTree::from_json(&json)?);
    }
    s.parse().map_err(Failure::from)
}

fn partition(s: &str) -> Result<Partition2, Failure> {
    s.parse().map_err(Failure::from)
}

fn moduli(m: &ModuliCommand) -> Outcome {
    match m {
        ModuliCommand::Divisors { n, list } => {
            if !(4..=20).contains(n) {
                return Err(Failure::Usage(format!("n must be in 4..=20, got {n}")));
            }
            let count = boundary_divisor_count(*n);
            let mut json = json!({ "n": n, "count": count });
            let mut text = format!("{count} boundary divisors for {n} labels");
            if *list {
                let all: Vec<String> = Partition2::all(*n).iter().map(ToString::to_string).collect();
                text = format!("{text}\n{}", all.join("\n"));
                json["divisors"] = json!(all);
            }
            Ok(Report { json, text })
        }
        ModuliCommand::Intersect { p, q } => {
            let (p, q) = (partition(p)?, partition(q)?);
            let meet = divisors_intersect(&p, &q)?;
            Ok(Report {
                json: json!({ "p": p.to_string(), "q": q.to_string(), "intersect": meet }),
                text: (if meet { "intersect" } else { "disjoint" }).to_string(),
            })
        }
        ModuliCommand::Chart { tree, ranking } => {
            let tree = parse_tree(tree)?;
            let coords = match ranking {
                Some(r) => {
                    let ranking: Vec<u32> = r
                        .split(',')
                        .map(|x| x.trim().parse().map_err(|_| Failure::Usage(format!("bad label `{x}`"))))
                        .collect::<Result<_, _>>()?;
                    chart_coordinates_ranked(&tree, &ranking)?
                }
                None => chart_coordinates(&tree)?,
            };
            let names: Vec<String> = coords.iter().map(|q| format!("lambda{q}")).collect();
            Ok(Report {
                json: json!({ "tree": tree.to_json(), "codim": tree.codim(), "coordinates": coords }),
                text: names.join("\n"),
            })
        }
        ModuliCommand::PointR { n } => {
            if *n == 0 {
                return Err(Failure::Usage("n must be positive".into()));
            }
            let pt: Vec<String> = point_r(*n).iter().map(ToString::to_string).collect();
            let text = format!("({})", pt.join(", "));
            Ok(Report { json: json!({ "n": n, "point": pt, "display": text }), text })
        }
    }
}
