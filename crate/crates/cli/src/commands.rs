use std::fs;
use std::path::Path;
use std::time::Instant;

use alphapf::alphapf::{alpha_pf, alpha_pf_dp, BRUTE_MAX_M};
use alphapf::pointproc::{correlation_bruteforce, correlation_kernel, SkewKernel};
use alphapf::positivity::{alpha_scan, check_pf_nonneg, classify_sh, hadamard_pf, parse_grid, SUBSET_MAX_M};
use alphapf::shiftedschur::{rho_ss, RhoMethod, SSParams, StrictPartition, Truncated};
use alphapf::skewmat::json::{read_block_skew, read_kernel, read_square};
use alphapf::skewmat::{alpha_det, rel_err, Scalar, C64, QC};
use alphapf::verify::{run_suite, suite_names, VerifyConfig, SUITES};
use alphapf::Error;
use serde_json::{json, Map, Value};

use crate::output::{complex, parse_list, parse_scalar, parse_usize_list, put, to_json, to_text};
use crate::{ClassifyArgs, CliError, ComputeArgs, Format, Outcome, PfMethod, PointprocArgs, ScanArgs, SchurArgs, SchurMethod, VerifyArgs};

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read { path: path.to_path_buf(), source })
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => to_json(v),
        Format::Text => to_text(v),
    }
}

fn agree<S: Scalar>(a: &S, b: &S, tol: f64) -> bool {
    if S::EXACT {
        a == b
    } else {
        rel_err(a, b) <= tol
    }
}

pub fn compute(args: &ComputeArgs) -> Result<Outcome, CliError> {
    if !args.pf && args.pf_alpha.is_none() && args.det_alpha.is_none() {
        return Err(CliError::Usage("nothing to compute: pass --pf, --pf-alpha or --det-alpha".into()));
    }
    if args.det_alpha.is_some() && (args.pf || args.pf_alpha.is_some()) {
        return Err(CliError::Usage("--det-alpha reads a square matrix and cannot be combined with --pf / --pf-alpha".into()));
    }
    let text = read(&args.input)?;
    if args.exact {
        compute_in::<QC>(args, &text)
    } else {
        compute_in::<C64>(args, &text)
    }
}

fn compute_in<S: Scalar>(args: &ComputeArgs, text: &str) -> Result<Outcome, CliError> {
    let mut obj = Map::new();
    obj.insert("mode".into(), Value::from(if S::EXACT { "exact" } else { "float" }));
    let mut passed = true;
    if let Some(a) = &args.det_alpha {
        let alpha: S = parse_scalar(a)?;
        let matrix = read_square::<S>(text)?;
        let start = Instant::now();
        let value = alpha_det(&matrix, &alpha)?;
        let mut det = Map::new();
        put(&mut det, "alpha", &alpha);
        put(&mut det, "value", &value);
        if args.timing {
            det.insert("timing_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
        }
        obj.insert("n".into(), Value::from(matrix.rows()));
        obj.insert("det_alpha".into(), Value::Object(det));
        return Ok(Outcome { text: render(&Value::Object(obj), args.format), passed });
    }
    let b = read_block_skew::<S>(text)?;
    obj.insert("m".into(), Value::from(b.m()));
    if args.pf {
        let start = Instant::now();
        let value = b.pfaffian();
        let mut pf = Map::new();
        put(&mut pf, "value", &value);
        if args.timing {
            pf.insert("timing_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
        }
        obj.insert("pf".into(), Value::Object(pf));
    }
    if let Some(a) = &args.pf_alpha {
        let alpha: S = parse_scalar(a)?;
        let mut out = Map::new();
        put(&mut out, "alpha", &alpha);
        let brute_ok = b.m() <= BRUTE_MAX_M;
        let want_brute = matches!(args.method, PfMethod::Bruteforce | PfMethod::Both);
        let want_dp = matches!(args.method, PfMethod::Dp | PfMethod::Both) || !brute_ok;
        if want_brute && !brute_ok {
            if args.method == PfMethod::Bruteforce {
                return Err(Error::TooLarge { what: "m", size: b.m(), limit: BRUTE_MAX_M }.into());
            }
            out.insert("note".into(), Value::from(format!("m = {} exceeds the brute-force limit {BRUTE_MAX_M}; dp only", b.m())));
        }
        let mut values = Vec::new();
        if want_dp {
            let start = Instant::now();
            let v = alpha_pf_dp(&b, &alpha)?.value;
            put(&mut out, "dp", &v);
            if args.timing {
                out.insert("dp_timing_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
            }
            values.push(v);
        }
        if want_brute && brute_ok {
            let start = Instant::now();
            let v = alpha_pf(&b, &alpha)?.value;
            put(&mut out, "bruteforce", &v);
            if args.timing {
                out.insert("bruteforce_timing_ms".into(), Value::from(start.elapsed().as_secs_f64() * 1e3));
            }
            values.push(v);
        }
        if values.len() == 2 {
            let ok = agree(&values[0], &values[1], args.tol);
            out.insert("agree".into(), Value::from(ok));
            passed &= ok;
        }
        obj.insert("pf_alpha".into(), Value::Object(out));
    }
    Ok(Outcome { text: render(&Value::Object(obj), args.format), passed })
}

pub fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    if args.list {
        let text = match args.format {
            Format::Json => to_json(&Value::from(
                SUITES.iter().map(|s| json!({"name": s.name, "checks": s.description})).collect::<Vec<_>>(),
            )),
            Format::Text => SUITES.iter().map(|s| format!("{:<11} {}\n", s.name, s.description)).collect(),
        };
        return Ok(Outcome { text, passed: true });
    }
    let cfg = VerifyConfig { m: args.m, seed: args.seed, order: args.order, samples: args.samples };
    let names: Vec<String> = if args.suite.is_empty() { suite_names().into_iter().map(String::from).collect() } else { args.suite.clone() };
    let reports = names.iter().map(|n| run_suite(n, &cfg)).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(|r| r.passed());
    let text = match args.format {
        Format::Json => to_json(&serde_json::to_value(&reports).expect("serializable")),
        Format::Text => {
            let mut s: String = reports.iter().map(|r| r.to_string()).collect();
            s.push_str(if passed { "all checks passed\n" } else { "some checks FAILED\n" });
            s
        }
    };
    Ok(Outcome { text, passed })
}

fn truncated_json(t: &Truncated) -> Value {
    json!({"value": complex(&t.value), "tail_bound": t.tail_bound})
}

pub fn schur(args: &SchurArgs) -> Result<Outcome, CliError> {
    let u: Vec<C64> = parse_list(&args.u)?;
    let v: Vec<C64> = parse_list(&args.v)?;
    let lambda = StrictPartition::from_parts(parse_usize_list(&args.lambda)?)?;
    let p = SSParams::padded(u, v)?;
    let methods: Vec<(&str, RhoMethod)> = match args.method {
        SchurMethod::Matrix => vec![("matrix", RhoMethod::Matrix)],
        SchurMethod::Series => vec![("series", RhoMethod::Series { order: args.order })],
        SchurMethod::Bruteforce => vec![("bruteforce", RhoMethod::BruteForce { weight_cut: args.weight_cut })],
        SchurMethod::Both => vec![("matrix", RhoMethod::Matrix), ("series", RhoMethod::Series { order: args.order })],
    };
    let results = methods.iter().map(|(_, m)| rho_ss(&lambda, &p, *m)).collect::<Result<Vec<_>, _>>()?;
    let mut obj = Map::new();
    obj.insert("lambda".into(), Value::from(lambda.parts().to_vec()));
    obj.insert("n".into(), Value::from(p.n()));
    let mut res = Map::new();
    for ((name, _), r) in methods.iter().zip(&results) {
        res.insert(name.to_string(), truncated_json(r));
    }
    obj.insert("rho".into(), Value::Object(res));
    let mut passed = true;
    if results.len() == 2 {
        let diff = (results[0].value - results[1].value).norm();
        let ok = diff <= results[0].tail_bound + results[1].tail_bound + args.tol;
        obj.insert("difference".into(), Value::from(diff));
        obj.insert("agree".into(), Value::from(ok));
        passed = ok;
    }
    Ok(Outcome { text: render(&Value::Object(obj), args.format), passed })
}

pub fn pointproc(args: &PointprocArgs) -> Result<Outcome, CliError> {
    let text = read(&args.kernel)?;
    if args.exact {
        pointproc_in::<QC>(args, &text)
    } else {
        pointproc_in::<C64>(args, &text)
    }
}

fn pointproc_in<S: Scalar>(args: &PointprocArgs, text: &str) -> Result<Outcome, CliError> {
    let (labels, matrix) = read_kernel::<S>(text)?;
    let l = SkewKernel::new(labels, matrix)?;
    let alpha: S = parse_scalar(&args.alpha)?;
    let names: Vec<&str> = args.points.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let idx = names
        .iter()
        .map(|n| l.index_of(n).ok_or_else(|| Error::Parse(format!("unknown point label {n:?}"))))
        .collect::<Result<Vec<usize>, _>>()?;
    let kernel = correlation_kernel(&l, &alpha)?.k;
    let rho = alpha_pf_dp(&kernel.restrict(&idx)?, &alpha)?.value;
    let mut obj = Map::new();
    obj.insert("mode".into(), Value::from(if S::EXACT { "exact" } else { "float" }));
    put(&mut obj, "alpha", &alpha);
    obj.insert("points".into(), Value::from(names.clone()));
    put(&mut obj, "rho", &rho);
    let mut passed = true;
    match correlation_bruteforce(&l, &alpha, &idx, args.k_max) {
        Ok(est) => {
            let ok = if S::EXACT && est.tail_bound == 0.0 {
                est.value == rho
            } else {
                (est.value.clone() - rho.clone()).magnitude() <= est.tail_bound + args.tol
            };
            let mut bf = Map::new();
            put(&mut bf, "value", &est.value);
            bf.insert("tail_bound".into(), Value::from(est.tail_bound));
            bf.insert("k_max".into(), Value::from(est.k_max));
            obj.insert("bruteforce".into(), Value::Object(bf));
            obj.insert("agree".into(), Value::from(ok));
            passed = ok;
        }
        Err(e @ (Error::NonConvergent(_) | Error::ExactUnsupported(_))) => {
            obj.insert("bruteforce".into(), Value::Null);
            obj.insert("note".into(), Value::from(format!("brute-force cross-check unavailable: {e}")));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Outcome { text: render(&Value::Object(obj), args.format), passed })
}

pub fn scan(args: &ScanArgs) -> Result<Outcome, CliError> {
    let grid = parse_grid(&args.alpha_grid)?;
    let report = alpha_scan(args.m, args.samples, &grid, args.seed)?;
    let csv = report.to_csv();
    // α = -1 and α = 0 are guaranteed non-negative; any violation there is a defect
    let passed = [-1.0, 0.0].iter().filter_map(|&a| report.row(a)).all(|r| r.violations == 0);
    let text = match &args.out {
        Some(path) => {
            fs::write(path, &csv).map_err(|source| CliError::Write { path: path.clone(), source })?;
            report.summary()
        }
        None => {
            eprint!("{}", report.summary());
            csv
        }
    };
    Ok(Outcome { text, passed })
}

pub fn classify(args: &ClassifyArgs) -> Result<Outcome, CliError> {
    let b = read_block_skew::<C64>(&read(&args.input)?)?;
    let sh = classify_sh(&b)?;
    let mut obj = Map::new();
    obj.insert("m".into(), Value::from(sh.m()));
    obj.insert("class".into(), Value::from(sh.class().to_string()));
    obj.insert("lambda_min".into(), Value::from(sh.lambda_min()));
    obj.insert("scale".into(), Value::from(sh.scale()));
    let mut passed = true;
    if sh.is_psd() && sh.m() <= SUBSET_MAX_M {
        let r = check_pf_nonneg(&sh)?;
        obj.insert(
            "subsets".into(),
            json!({"checked": r.checked, "min_re": r.min_re, "max_abs_im": r.max_abs_im, "violations": r.violations.len()}),
        );
        passed &= r.passed();
    }
    if sh.is_pd() {
        let g = hadamard_pf(&sh)?;
        obj.insert("hadamard".into(), json!({"lhs": g.lhs, "rhs": complex(&g.rhs), "gap": g.gap, "holds": g.holds()}));
        passed &= g.holds();
    }
    Ok(Outcome { text: render(&Value::Object(obj), args.format), passed })
}
