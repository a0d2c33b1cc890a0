use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::args::{ConstructArgs, ProtocolName, ReportArgs, SimulateArgs, UniformityArgs, VerifyArgs};
use super::resolve::{compact_spec, resolve_code, resolve_graph};
use super::{CliError, RunReport, Status, FIDELITY_TOLERANCE};
use crate::cws::{
    assemble, check_theorem2, error_count, verify_distance, CwsCode, CwsError, VerifyOptions, DEFAULT_ERROR_BUDGET,
    HEAVY_ERROR_BUDGET,
};
use crate::f2core::{F2Vector, PauliWord};
use crate::gf2m::{make_field, Gf2m};
use crate::graphstate::uniformity;
use crate::protosim::{
    code_state, encode, encode_sequential, partial_recover, prepare_graph_state, recover, recover_controlled_u,
    subcode_state, Outcomes, SimOptions, StateVector, Transcript,
};
use crate::tentpeg::{
    build_cr, build_cu, gv_parameters, hamming_bound_q, log_one_plus, min_distance_bruteforce, min_distance_upto,
    pattern_scan_templates, CodeOrigin, CodeSpec, GvParameters, LinearCode, MAX_BRUTEFORCE_K, MAX_MITM_WEIGHT,
};

/// Codes up to this dimension get their distance by full enumeration.
const ENUMERATION_K: usize = 20;
/// Forbidden-pattern templates are scanned up to this length.
const PATTERN_SCAN_MAX_N: usize = 1023;
const SHOWN_PATTERN_MATCHES: usize = 20;

/// JSON construction request for `construct --spec`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "construction", rename_all = "snake_case")]
pub enum ConstructSpec {
    Cr {
        r: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha_exponent: Option<u64>,
    },
    Cu {
        r: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        alpha_exponent: Option<u64>,
    },
    Repetition {
        n: usize,
    },
    Generic {
        code: CodeSpec,
    },
}

fn finish(mut report: RunReport, body: impl FnOnce(&mut RunReport) -> Result<(), CliError>) -> RunReport {
    match body(&mut report) {
        Ok(()) => report,
        Err(e) => report.fail(e),
    }
}

fn elapsed_ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match threads {
        Some(t) => Ok(rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| CwsError::ThreadPool(e.to_string()))?
            .install(f)),
        None => Ok(f()),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn big_json(b: &BigInt) -> Value {
    b.to_i64().map_or_else(|| Value::String(b.to_string()), Value::from)
}

fn field_json(field: &Gf2m, alpha: u32) -> Result<Value, CliError> {
    Ok(json!({
        "m": field.degree(),
        "modulus": field.modulus().to_string(),
        "alpha": field.element(alpha)?,
        "alpha_exponent": field.dlog(alpha)?,
    }))
}

/// Exact distance by enumeration for small `k`, otherwise by low-weight search.
fn distance_json(code: &LinearCode, max_weight: usize, budget: u128) -> Result<(Value, String), CliError> {
    if code.k() <= ENUMERATION_K {
        let d = min_distance_bruteforce(code, MAX_BRUTEFORCE_K)?;
        let shown = d.map_or_else(|| "-".to_string(), |d| d.to_string());
        return Ok((json!({ "method": "enumeration", "exact": true, "value": d }), shown));
    }
    let cap = max_weight.min(MAX_MITM_WEIGHT);
    Ok(match min_distance_upto(code, cap, budget)? {
        Some((w, word)) => (
            json!({ "method": "low_weight_search", "exact": true, "value": w, "no_codeword_below": w, "witness": word }),
            w.to_string(),
        ),
        None => (
            json!({ "method": "low_weight_search", "exact": false, "lower_bound": cap + 1 }),
            format!(">={}", cap + 1),
        ),
    })
}

fn patterns_json(code: &LinearCode) -> Value {
    if matches!(code.origin(), CodeOrigin::TwodimCu { .. }) || code.n() > PATTERN_SCAN_MAX_N {
        return Value::Null;
    }
    let report = pattern_scan_templates(code);
    let shown: Vec<_> = report.violations.iter().take(SHOWN_PATTERN_MATCHES).collect();
    json!({
        "clean": report.is_clean(),
        "violation_count": report.violations.len(),
        "violations": shown,
    })
}

fn code_summary(code: &LinearCode, max_weight: usize, budget: u128) -> Result<Value, CliError> {
    let (distance, shown) = distance_json(code, max_weight, budget)?;
    Ok(json!({
        "n": code.n(),
        "k": code.k(),
        "parameters": format!("[{}, {}, {}]", code.n(), code.k(), shown),
        "distance": distance,
        "origin": code.origin(),
        "patterns": patterns_json(code),
    }))
}

fn construct_code(spec: &ConstructSpec) -> Result<(LinearCode, Value), CliError> {
    Ok(match spec {
        ConstructSpec::Cr { r, alpha_exponent } => {
            let field = make_field(2 * r)?;
            let alpha = match alpha_exponent {
                Some(t) => field.exp(*t),
                None => field.find_primitive_mod3()?.alpha,
            };
            let code = build_cr(&field, alpha)?;
            let log = log_one_plus(&field, alpha)?;
            let mut f = field_json(&field, alpha)?;
            f["log_one_plus"] = json!(log);
            f["log_one_plus_mod3"] = json!(log % 3);
            (code, f)
        }
        ConstructSpec::Cu { r, alpha_exponent } => {
            let field = make_field(4 * r)?;
            let alpha = alpha_exponent.map_or(field.generator(), |t| field.exp(t));
            (build_cu(&field, alpha)?, field_json(&field, alpha)?)
        }
        ConstructSpec::Repetition { n } => (LinearCode::repetition(*n), Value::Null),
        ConstructSpec::Generic { code } => (LinearCode::from_spec(code)?, Value::Null),
    })
}

pub fn cmd_construct(a: &ConstructArgs) -> RunReport {
    let spec = match (&a.cr, &a.cu, &a.repetition, &a.spec) {
        (Some(r), ..) => Ok(ConstructSpec::Cr {
            r: *r,
            alpha_exponent: a.alpha_exponent,
        }),
        (_, Some(r), ..) => Ok(ConstructSpec::Cu {
            r: *r,
            alpha_exponent: a.alpha_exponent,
        }),
        (_, _, Some(n), _) => Ok(ConstructSpec::Repetition { n: *n }),
        (_, _, _, Some(path)) => read_file(path)
            .and_then(|t| serde_json::from_str(&t).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))),
        _ => Err(CliError::Parse("give one of --cr, --cu, --repetition, --spec".into())),
    };
    let inputs = json!({
        "spec": spec.as_ref().ok(),
        "max_weight": a.max_weight,
        "budget": a.budget.to_string(),
        "out": a.out.as_ref().map(|p| p.display().to_string()),
    });
    finish(RunReport::new("construct", inputs), |report| {
        let spec = spec?;
        let t = Instant::now();
        let (code, field) = construct_code(&spec)?;
        report.timings.insert("construct_ms".into(), elapsed_ms(t));
        let t = Instant::now();
        let mut results = code_summary(&code, a.max_weight, a.budget)?;
        report.timings.insert("analysis_ms".into(), elapsed_ms(t));
        results["field"] = field;
        results["code_file"] = json!(compact_spec(&code));
        if let Some(out) = &a.out {
            let text = serde_json::to_string_pretty(&compact_spec(&code)).expect("code specs serialize");
            write_file(out, &format!("{text}\n"))?;
        }
        report.results = results;
        Ok(())
    })
}

fn load_pair(graph: &str, code: &str) -> Result<(CwsCode, Value, Value), CliError> {
    let (g, gecho) = resolve_graph(graph)?;
    let (c, cecho) = resolve_code(code)?;
    Ok((assemble(g, c)?, gecho, cecho))
}

pub fn cmd_verify(a: &VerifyArgs) -> RunReport {
    let budget = a.budget.unwrap_or(if a.heavy {
        HEAVY_ERROR_BUDGET
    } else {
        DEFAULT_ERROR_BUDGET
    });
    let mut inputs = json!({
        "graph": a.graph,
        "code": a.code,
        "m": a.m,
        "budget": budget.to_string(),
        "heavy": a.heavy,
        "uniformity": !a.no_uniformity,
        "sufficient": a.sufficient,
    });
    let loaded = load_pair(&a.graph, &a.code);
    if let Ok((_, g, c)) = &loaded {
        inputs["graph"] = g.clone();
        inputs["code"] = c.clone();
    }
    finish(RunReport::new("verify", inputs), |report| {
        let (code, _, _) = loaded?;
        let opts = VerifyOptions {
            budget,
            ..Default::default()
        };
        let needed = error_count(code.n(), a.m);
        if needed > budget {
            return Err(CwsError::BudgetExceeded { needed, budget }.into());
        }
        let mut results = json!({ "n": code.n(), "k": code.k() });
        if !a.no_uniformity && a.m > 0 {
            let t = Instant::now();
            results["uniformity"] = match in_pool(a.threads, || uniformity(code.graph(), a.m, budget))? {
                Ok(u) => json!(u),
                Err(e) => json!({ "skipped": e.to_string() }),
            };
            report.timings.insert("uniformity_ms".into(), elapsed_ms(t));
        }
        if let Some(d) = a.sufficient {
            results["sufficient"] = match check_theorem2(&code, d, budget) {
                Ok(s) => json!(s),
                Err(e) => json!({ "skipped": e.to_string() }),
            };
        }
        let cert = in_pool(a.threads, || verify_distance(&code, a.m, &opts))??;
        report.timings.insert("verify_ms".into(), cert.wall_time_ms);
        let mut cert_json = json!(cert);
        if let Some(obj) = cert_json.as_object_mut() {
            obj.remove("wall_time_ms");
        }
        results["certificate"] = cert_json;
        if cert.passed() {
            report.status = Status::Pass;
            results["quantum_parameters"] = json!(format!("[[{}, {}, >={}]]", code.n(), code.k(), a.m + 1));
        } else {
            report.status = Status::Violation;
        }
        report.results = results;
        Ok(())
    })
}

pub fn cmd_uniformity(a: &UniformityArgs) -> RunReport {
    let loaded = resolve_graph(&a.graph);
    let inputs = json!({
        "graph": loaded.as_ref().map_or_else(|_| json!(a.graph), |(_, e)| e.clone()),
        "cap": a.cap,
        "budget": a.budget.to_string(),
    });
    finish(RunReport::new("uniformity", inputs), |report| {
        let (g, _) = loaded?;
        let t = Instant::now();
        let u = in_pool(a.threads, || uniformity(&g, a.cap, a.budget))??;
        report.timings.insert("uniformity_ms".into(), elapsed_ms(t));
        report.results = json!({
            "n": g.n(),
            "regular_degree": g.regular_degree(),
            "report": u,
        });
        Ok(())
    })
}

struct Trial {
    fidelities: BTreeMap<&'static str, f64>,
    transcripts: Vec<Transcript>,
    physical: StateVector,
}

/// `Σ_x a_x` with logical qubit `which` carried by `q` and the rest by `rest` in order.
fn place_qubit(q: &StateVector, rest: &StateVector, which: usize) -> StateVector {
    let k = rest.num_qubits() + 1;
    let mut order = vec![k - 1; k];
    for (j, i) in (0..k).filter(|&i| i != which).enumerate() {
        order[i] = j;
    }
    StateVector::kron(q, rest).permute_qubits(&order)
}

fn default_u(code: &CwsCode) -> PauliWord {
    let mut u = code.stabilizer_generators().get(code.pivot(0)).clone();
    let za = PauliWord::new(F2Vector::zeros(code.n()), code.generator().row(0).clone()).expect("lengths agree");
    u.mul_assign(&za);
    u
}

fn run_trial(
    code: &CwsCode,
    a: &SimulateArgs,
    rng: &mut ChaCha8Rng,
    outcomes: &mut Outcomes,
    opts: &SimOptions,
) -> Result<Trial, CliError> {
    let k = code.k();
    let mut fidelities = BTreeMap::new();
    let mut transcripts = Vec::new();
    let physical = match a.protocol {
        ProtocolName::Encode => {
            let logical = StateVector::random(k, rng);
            let (enc, t) = encode(code, &logical, outcomes, opts)?;
            fidelities.insert("encoded", enc.fidelity(&code_state(code, &logical)?));
            transcripts.push(t);
            enc
        }
        ProtocolName::Roundtrip => {
            let logical = StateVector::random(k, rng);
            let (enc, t1) = encode(code, &logical, outcomes, opts)?;
            let (rec, phys, t2) = recover(code, &enc, outcomes, opts)?;
            fidelities.insert("encoded", enc.fidelity(&code_state(code, &logical)?));
            fidelities.insert("recovered", rec.fidelity(&logical));
            fidelities.insert("graph_state", phys.fidelity(&prepare_graph_state(code.graph())?));
            transcripts.extend([t1, t2]);
            phys
        }
        ProtocolName::Sequential => {
            let split = a.split.unwrap_or(k.saturating_sub(1));
            if split == 0 || split >= k {
                return Err(crate::protosim::SimError::BadSplit { split, k }.into());
            }
            let low = StateVector::random(split, rng);
            let high = StateVector::random(k - split, rng);
            let logical = StateVector::kron(&high, &low);
            let (enc, t) = encode_sequential(code, &logical, split, outcomes, opts)?;
            fidelities.insert("encoded", enc.fidelity(&code_state(code, &logical)?));
            transcripts.push(t);
            enc
        }
        ProtocolName::Partial => {
            let which = a.which.unwrap_or(k.saturating_sub(1));
            if which >= k {
                return Err(crate::protosim::SimError::IndexOutOfRange { index: which, k }.into());
            }
            let q = StateVector::random(1, rng);
            let rest = StateVector::random(k - 1, rng);
            let logical = place_qubit(&q, &rest, which);
            let (enc, t1) = encode(code, &logical, outcomes, opts)?;
            let (rec, residual, t2) = partial_recover(code, &enc, which, outcomes, opts)?;
            let others: Vec<usize> = (0..k).filter(|&i| i != which).collect();
            fidelities.insert("qubit", rec.fidelity(&q));
            fidelities.insert("residual", residual.fidelity(&subcode_state(code, &others, &rest)?));
            transcripts.extend([t1, t2]);
            residual
        }
        ProtocolName::ControlledU => {
            let u = match &a.u {
                Some(s) => s
                    .parse::<PauliWord>()
                    .map_err(|e| CliError::Parse(format!("--u: {e}")))?,
                None => default_u(code),
            };
            let logical = StateVector::random(k, rng);
            let (enc, t1) = encode(code, &logical, outcomes, opts)?;
            let (rec, t2) = recover_controlled_u(code, &enc, &u, outcomes, opts)?;
            fidelities.insert("qubit", rec.fidelity(&logical));
            transcripts.extend([t1, t2]);
            enc
        }
    };
    Ok(Trial {
        fidelities,
        transcripts,
        physical,
    })
}

pub fn cmd_simulate(a: &SimulateArgs) -> RunReport {
    let loaded = load_pair(&a.graph, &a.code);
    let protocol = format!("{:?}", a.protocol).to_lowercase();
    let inputs = json!({
        "protocol": protocol,
        "graph": loaded.as_ref().map_or_else(|_| json!(a.graph), |(_, g, _)| g.clone()),
        "code": loaded.as_ref().map_or_else(|_| json!(a.code), |(_, _, c)| c.clone()),
        "trials": a.trials,
        "forced_outcomes": a.forced_outcomes,
        "schedule": format!("{:?}", a.schedule).to_lowercase(),
        "route": format!("{:?}", a.route).to_lowercase(),
        "which": a.which,
        "split": a.split,
        "u": a.u,
        "heavy": a.heavy,
    });
    let mut report = RunReport::new("simulate", inputs);
    report.seed = Some(a.seed);
    finish(report, |report| {
        let (code, _, _) = loaded?;
        let opts = SimOptions {
            schedule: a.schedule.schedule(),
            route: a.route.route(),
            allow_heavy: a.heavy,
        };
        let t = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
        let mut min: BTreeMap<&'static str, f64> = BTreeMap::new();
        let mut first_transcripts = Vec::new();
        let mut branches = Vec::new();
        for trial in 0..a.trials {
            let mut outcomes = match &a.forced_outcomes {
                Some(bits) => Outcomes::forced_str(bits)?,
                None => Outcomes::seeded(rng.random()),
            };
            let result = run_trial(&code, a, &mut rng, &mut outcomes, &opts)?;
            for (key, f) in &result.fidelities {
                let entry = min.entry(key).or_insert(f64::INFINITY);
                *entry = entry.min(*f);
            }
            branches.push(
                result
                    .transcripts
                    .iter()
                    .flat_map(|t| t.outcomes.iter().map(|b| char::from(b'0' + b)))
                    .collect::<String>(),
            );
            if trial == 0 {
                if let Some(path) = &a.amplitudes {
                    write_file(path, &result.physical.to_csv()?)?;
                }
                first_transcripts = result.transcripts;
            }
        }
        report.timings.insert("simulate_ms".into(), elapsed_ms(t));
        let floor = min.values().copied().fold(f64::INFINITY, f64::min);
        report.status = if a.trials == 0 || floor >= 1.0 - FIDELITY_TOLERANCE {
            Status::Pass
        } else {
            Status::Violation
        };
        report.results = json!({
            "n": code.n(),
            "k": code.k(),
            "min_fidelity": min,
            "fidelity_floor": if a.trials == 0 { Value::Null } else { json!(floor) },
            "distinct_branches": branches.iter().collect::<std::collections::BTreeSet<_>>().len(),
            "branches": branches,
            "transcripts": first_transcripts,
        });
        Ok(())
    })
}

fn gv_json(p: &GvParameters) -> Value {
    match p {
        GvParameters::Feasible { n_total, k, d } => json!({
            "feasible": true, "n_total": big_json(n_total), "k": big_json(k), "d": d,
        }),
        GvParameters::Infeasible { n_total, k } => json!({
            "feasible": false, "n_total": big_json(n_total), "k": big_json(k),
        }),
    }
}

pub fn cmd_report(a: &ReportArgs) -> RunReport {
    let inputs = json!({
        "code": a.code,
        "graph": a.graph,
        "gv": a.gv,
        "hamming": a.hamming,
        "mod3": a.mod3,
        "max_weight": a.max_weight,
        "uniformity_cap": a.uniformity_cap,
        "budget": a.budget.to_string(),
    });
    finish(RunReport::new("report", inputs), |report| {
        let t = Instant::now();
        let mut results = serde_json::Map::new();
        if let Some(v) = &a.gv {
            let dim = u32::try_from(v[0]).map_err(|_| CliError::Parse("dimension too large".into()))?;
            results.insert("gv".into(), gv_json(&gv_parameters(dim, v[1])?));
        }
        if let Some(v) = &a.hamming {
            let (n, k, d) = (v[0], v[1], v[2]);
            if d == 0 || k > n {
                return Err(CliError::Parse("hamming needs d >= 1 and k <= n".into()));
            }
            let q = hamming_bound_q(n, k, d);
            results.insert(
                "hamming".into(),
                json!({
                    "q": q.to_string(),
                    "q_float": q.to_f64(),
                    "within_bound": q <= num_rational::BigRational::from_integer(1.into()),
                }),
            );
        }
        if let Some(r) = a.mod3 {
            let field = make_field(2 * r)?;
            let choice = field.find_primitive_mod3()?;
            let mut f = field_json(&field, choice.alpha)?;
            f["log_one_plus"] = json!(choice.log_one_plus);
            f["log_one_plus_mod3"] = json!(choice.log_one_plus % 3);
            f["primitive"] = json!(field.is_primitive(choice.alpha));
            results.insert("mod3".into(), f);
        }
        let code = a.code.as_deref().map(resolve_code).transpose()?;
        let graph = a.graph.as_deref().map(resolve_graph).transpose()?;
        let mut distance_bound = None;
        if let Some((c, echo)) = &code {
            let summary = code_summary(c, a.max_weight, a.budget)?;
            distance_bound = summary["distance"]["value"]
                .as_u64()
                .or_else(|| summary["distance"]["lower_bound"].as_u64());
            results.insert("code".into(), json!({ "input": echo, "summary": summary }));
        }
        if let Some((g, echo)) = &graph {
            let u = uniformity(g, a.uniformity_cap, a.budget);
            results.insert(
                "graph".into(),
                json!({
                    "input": echo,
                    "n": g.n(),
                    "edges": g.edge_count(),
                    "regular_degree": g.regular_degree(),
                    "uniformity": u.map_or_else(|e| json!({ "skipped": e.to_string() }), |u| json!(u)),
                }),
            );
        }
        if let (Some((c, _)), Some((g, _))) = (&code, &graph) {
            let cws = assemble(g.clone(), c.clone())?;
            let sufficient = match distance_bound {
                Some(d) => check_theorem2(&cws, d as usize, a.budget)
                    .map_or_else(|e| json!({ "skipped": e.to_string() }), |s| json!(s)),
                None => Value::Null,
            };
            results.insert(
                "cws".into(),
                json!({ "n": cws.n(), "k": cws.k(), "sufficient": sufficient }),
            );
        }
        if results.is_empty() {
            return Err(CliError::Parse(
                "nothing to report; give --code, --graph, --gv, --hamming or --mod3".into(),
            ));
        }
        report.timings.insert("report_ms".into(), elapsed_ms(t));
        report.results = Value::Object(results);
        Ok(())
    })
}
