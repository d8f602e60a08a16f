use std::fs;

use g2flag::flags::{equivariance_check, flag_data, module_invariance_check, CheckReport};
use g2flag::flow::charts::{chart_to_xyz, disk_projection};
use g2flag::flow::collapse::nearest_equilibrium;
use g2flag::flow::field::{mu_field_exact, mu_to_xyz};
use g2flag::flow::integrate::fmt_g12;
use g2flag::flow::{
    chart_equilibria, chart_field, chart_system, collapse_diagnostics, darboux_search, darboux_verify,
    finite_equilibria, integrate_with, Equilibrium, Frame, IntegrateOptions,
};
use g2flag::metrics::{
    equigeodesic_check, go_lambda_alpha2, go_oracle, go_witness, is_equigeodesic_closed_form, is_go_closed_form,
    metric_is_valid, MetricParams, TangentVector,
};
use g2flag::ricci::{ricci_besse, ricci_closed, u_bilinear, RicciComponents};
use g2flag::sampling::Lcg;
use g2flag::{verify, FlagId, KVector, QF13};
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{csv_field, to_json, to_pretty, Style};
use crate::{
    ChartArgs, CliError, Command, Common, DarbouxArgs, EquigeodesicArgs, EquilibriaArgs, FlagsArgs, FlowArgs, Format,
    MetricArgs, RicciArgs, VerifyArgs,
};

/// What a command produced: a JSON document, an optional CSV rendering and
/// the exit code.
struct Report {
    value: Value,
    csv: Option<String>,
    code: u8,
}

impl Report {
    fn ok(value: Value) -> Self {
        Report {
            value,
            csv: None,
            code: 0,
        }
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn emit<A: Serialize>(name: &str, args: &A, common: &Common, report: Report) -> Result<u8, CliError> {
    let config = to_value(args);
    match common.format {
        Format::Json => {
            let doc = json!({"command": name, "config": config, "result": report.value});
            print!("{}", to_json(&doc));
        }
        Format::Pretty => {
            let doc = json!({"command": name, "config": config, "result": report.value});
            print!("{}", to_pretty(&doc, &Style::from_env()));
        }
        Format::Csv => {
            let csv = report
                .csv
                .ok_or_else(|| CliError::Domain(format!("csv output is not available for `{name}`")))?;
            // the configuration goes to stderr so that stdout stays plain CSV
            if let Value::Object(o) = &config {
                for (k, v) in o {
                    eprintln!("# {k}={}", v.as_str().map_or_else(|| v.to_string(), str::to_string));
                }
            }
            print!("{csv}");
        }
    }
    Ok(report.code)
}

pub fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Verify(a) => emit("verify", &a, &a.common, cmd_verify(&a)),
        Command::Flags(a) => emit("flags", &a, &a.common, cmd_flags(&a)),
        Command::Metric(a) => {
            let r = cmd_metric(&a)?;
            emit("metric", &a, &a.common, r)
        }
        Command::Equigeodesic(a) => {
            let r = cmd_equigeodesic(&a)?;
            emit("equigeodesic", &a, &a.common, r)
        }
        Command::Ricci(a) => {
            let r = cmd_ricci(&a)?;
            emit("ricci", &a, &a.common, r)
        }
        Command::Flow(a) => {
            let r = cmd_flow(&a)?;
            emit("flow", &a, &a.common, r)
        }
        Command::Equilibria(a) => {
            let r = cmd_equilibria(&a)?;
            emit("equilibria", &a, &a.common, r)
        }
        Command::Darboux(a) => {
            let r = cmd_darboux(&a)?;
            emit("darboux", &a, &a.common, r)
        }
        Command::Chart(a) => emit("chart", &a, &a.common, cmd_chart(&a)),
    }
}

fn texts(v: &[QF13]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

const K_NAMES: [&str; 6] = ["W1", "W2", "W3", "Z1", "Z2", "Z3"];

/// `v` as a combination of `W1, ..., Z3`.
fn kvector_text(v: &KVector) -> String {
    let mut out = String::new();
    for (c, name) in v.coords.iter().zip(K_NAMES) {
        if c.is_zero() {
            continue;
        }
        let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
        let coeff = if mag.is_one() {
            String::new()
        } else if mag.is_rational() || mag.rat().is_zero() {
            format!("{mag}*")
        } else {
            format!("({mag})*")
        };
        match (out.is_empty(), neg) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&coeff);
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn cmd_verify(_: &VerifyArgs) -> Report {
    let checks = verify::run_all();
    let passed = checks.iter().all(|c| c.passed);
    let mut csv = String::from("name,passed,checks,failures\n");
    for c in &checks {
        csv.push_str(&format!("{},{},{},{}\n", csv_field(&c.name), c.passed, c.checks, c.failures));
    }
    Report {
        value: json!({"passed": passed, "checks": to_value(&checks)}),
        csv: Some(csv),
        code: if passed { 0 } else { 1 },
    }
}

fn check_json(r: &CheckReport) -> Value {
    json!({"passed": r.passed(), "checks": r.checks, "violations": r.violations})
}

fn cmd_flags(a: &FlagsArgs) -> Report {
    let thetas: Vec<FlagId> = a.theta.map_or_else(|| FlagId::ALL.to_vec(), |t| vec![t]);
    let flags: Vec<Value> = thetas
        .iter()
        .map(|&t| {
            let data = flag_data(t);
            let modules: Vec<Value> = data
                .modules
                .iter()
                .map(|m| {
                    Value::Array(
                        m.generators
                            .iter()
                            .map(|g| json!({"vector": kvector_text(&g.vector), "norm2": to_value(&g.norm2)}))
                            .collect(),
                    )
                })
                .collect();
            let pairs: Vec<Value> = data
                .equiv_pairs
                .iter()
                .map(|p| {
                    let map: Vec<Vec<String>> = p.map.iter().map(|row| texts(row)).collect();
                    json!({"from": p.i + 1, "to": p.j + 1, "map": map})
                })
                .collect();
            json!({
                "theta": t.name(),
                "dims": data.dims,
                "isotropy": data.isotropy.iter().map(kvector_text).collect::<Vec<_>>(),
                "modules": modules,
                "equivariant_maps": pairs,
                "module_invariance": check_json(&module_invariance_check(&data)),
                "equivariance": check_json(&equivariance_check(&data)),
            })
        })
        .collect();
    let all = flags
        .iter()
        .all(|f| f["module_invariance"]["passed"] == true && f["equivariance"]["passed"] == true);
    Report {
        value: json!({"flags": flags}),
        csv: None,
        code: if all { 0 } else { 1 },
    }
}

fn expected_lengths(theta: FlagId) -> (usize, usize) {
    match theta {
        FlagId::Empty => (6, 3),
        FlagId::Alpha1 => (3, 1),
        FlagId::Alpha2 => (3, 0),
    }
}

fn tangent(theta: FlagId, coeffs: Option<&[QF13]>) -> Result<TangentVector, CliError> {
    let n = flag_data(theta).dim_m();
    let c = coeffs.map_or_else(|| vec![QF13::one(); n], <[QF13]>::to_vec);
    Ok(TangentVector::new(theta, c)?)
}

fn cmd_metric(a: &MetricArgs) -> Result<Report, CliError> {
    let (nd, no) = expected_lengths(a.theta);
    let offdiag = a.offdiag.as_ref().map_or_else(|| vec![QF13::zero(); no], |o| o.0.clone());
    if a.mu.0.len() != nd || offdiag.len() != no {
        return Err(CliError::Domain(format!(
            "the {} flag takes {nd} diagonal and {no} off-diagonal parameters, got {} and {}",
            a.theta,
            a.mu.0.len(),
            offdiag.len()
        )));
    }
    let p = MetricParams::new(a.theta, a.mu.0.clone(), offdiag);
    let x = tangent(a.theta, a.x.as_ref().map(|v| v.0.as_slice()))?;
    let validity = metric_is_valid(&p);
    let params = json!({"diag": texts(&p.diag), "offdiag": texts(&p.offdiag)});
    let mut value = json!({
        "theta": a.theta.name(),
        "params": params,
        "valid": validity.valid,
        "violations": validity.violations,
        "eigenvalues": validity.eigenvalues,
        "go": Value::Null,
        "oracle": Value::Null,
        "witness": Value::Null,
        "witness_lambda": Value::Null,
    });
    if validity.valid {
        let go = is_go_closed_form(&p);
        let oracle = go_oracle(&p, a.samples, &mut Lcg::new(a.seed))?;
        let witness = go_witness(&p, &x)?;
        value["go"] = json!(go);
        value["oracle"] = json!({
            "passed": oracle.passed,
            "tested": oracle.tested,
            "counterexample": oracle.counterexample.map(|c| texts(&c.coeffs)),
            "agrees": oracle.passed == go,
        });
        value["witness"] = json!({
            "vector": texts(&x.coeffs),
            "found": witness.is_some(),
            "z": witness.as_ref().map(|w| kvector_text(&w.z)),
            "lambda": witness.as_ref().and_then(|w| w.lambda.as_ref()).map(to_value),
        });
        if a.theta == FlagId::Alpha2 && go {
            value["witness_lambda"] = to_value(&go_lambda_alpha2(&p, &x)?);
        }
    }
    Ok(Report::ok(value))
}

fn cmd_equigeodesic(a: &EquigeodesicArgs) -> Result<Report, CliError> {
    let x = tangent(a.theta, Some(&a.x.0))?;
    let closed = is_equigeodesic_closed_form(&x);
    let oracle = equigeodesic_check(&x);
    Ok(Report::ok(json!({
        "theta": a.theta.name(),
        "vector": texts(&x.coeffs),
        "equigeodesic": closed,
        "oracle": oracle,
        "agrees": closed == oracle,
    })))
}

fn components(r: &RicciComponents) -> Value {
    json!({"ric1": to_value(&r.ric1), "ric2": to_value(&r.ric2), "ric3": to_value(&r.ric3)})
}

fn cmd_ricci(a: &RicciArgs) -> Result<Report, CliError> {
    let mu: [QF13; 3] = a
        .mu
        .0
        .clone()
        .try_into()
        .map_err(|v: Vec<QF13>| CliError::Domain(format!("expected 3 parameters, got {}", v.len())))?;
    let p = MetricParams::alpha2(mu.clone());
    let closed = ricci_closed(&p)?;
    let besse = ricci_besse(&p)?;
    let four = QF13::from_int(4);
    let scaled = ricci_closed(&MetricParams::alpha2([&mu[0] * &four, mu[1].clone(), mu[2].clone()]))?;
    let rescaled = besse.ric1 == scaled.ric1.checked_div(&four)? && besse.ric2 == scaled.ric2 && besse.ric3 == scaled.ric3;
    let n = flag_data(FlagId::Alpha2).dim_m();
    let unit = |i: usize| {
        let c = (0..n).map(|j| if i == j { QF13::one() } else { QF13::zero() }).collect();
        TangentVector::new(FlagId::Alpha2, c)
    };
    let mut u_zero = true;
    for i in 0..n {
        for j in 0..n {
            u_zero &= u_bilinear(&p, &unit(i)?, &unit(j)?)?.is_zero();
        }
    }
    let velocity = mu_field_exact(&mu)?;
    Ok(Report::ok(json!({
        "mu": texts(&mu),
        "ric": components(&closed),
        "besse": components(&besse),
        "besse_check": closed == besse,
        "rescaled_check": rescaled,
        "u_vanishes": u_zero,
        "flow_velocity": velocity.iter().map(to_value).collect::<Vec<_>>(),
    })))
}

fn cmd_flow(a: &FlowArgs) -> Result<Report, CliError> {
    let sample_times = a.samples.map(|n| {
        let n = n as usize;
        (0..n)
            .map(|k| if k + 1 == n { a.t_end } else { a.t_end * k as f64 / (n - 1) as f64 })
            .collect()
    });
    let opts = IntegrateOptions {
        rel_tol: a.rel_tol,
        max_steps: a.max_steps,
        sample_times,
        ..IntegrateOptions::default()
    };
    let traj = integrate_with(a.frame, a.init.0, a.t_end, &opts)?;
    let csv = traj.to_csv();
    if let Some(path) = &a.out {
        fs::write(path, &csv).map_err(|e| CliError::Io(format!("cannot write `{}`: {e}", path.display())))?;
    }
    let (t, y) = traj.last();
    let xyz = match a.frame {
        Frame::Xyz => Some(y),
        Frame::Mu => mu_to_xyz(&y).ok(),
        _ => None,
    };
    let collapse = match a.frame {
        Frame::Mu | Frame::Xyz => collapse_diagnostics(&traj).ok().map(|c| to_value(&c)),
        _ => None,
    };
    let value = json!({
        "frame": a.frame.to_string(),
        "variables": a.frame.variables(),
        "status": traj.status.to_string(),
        "points": traj.len(),
        "accepted_steps": traj.accepted_steps,
        "rejected_steps": traj.rejected_steps,
        "t_final": t,
        "final_state": y,
        "nearest": xyz.map(|p| {
            let (name, d) = nearest_equilibrium(&p);
            json!({"label": name, "distance": d})
        }),
        "collapse": collapse,
        "out": a.out.as_ref().map(|p| p.display().to_string()),
    });
    // with --out the CSV lives in the file only
    let csv = if a.out.is_some() { String::new() } else { csv };
    Ok(Report {
        value,
        csv: Some(csv),
        code: 0,
    })
}

fn eigen_text(e: &Equilibrium) -> String {
    e.eigen
        .eigen
        .iter()
        .map(|v| {
            if v.im == 0.0 {
                fmt_g12(v.re)
            } else {
                format!("{}{:+}i", fmt_g12(v.re), v.im)
            }
        })
        .collect::<Vec<_>>()
        .join(";")
}

fn cmd_equilibria(a: &EquilibriaArgs) -> Result<Report, CliError> {
    let eqs = match a.frame {
        Frame::Mu => {
            return Err(CliError::Domain(
                "the metric system has no equilibria with positive parameters; use --frame xyz".into(),
            ))
        }
        Frame::Xyz => finite_equilibria(&a.z_star)?,
        other => chart_equilibria(other.chart().expect("chart frame"), &a.z_star)?,
    };
    let mut csv = String::from("label,frame,c1,c2,c3,classification,eigenvalues\n");
    for e in &eqs {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            csv_field(&e.label),
            e.frame,
            fmt_g12(e.point[0]),
            fmt_g12(e.point[1]),
            fmt_g12(e.point[2]),
            e.eigen.classification,
            eigen_text(e)
        ));
    }
    Ok(Report {
        value: json!({
            "frame": a.frame.to_string(),
            "variables": a.frame.variables(),
            "equilibria": to_value(&eqs),
        }),
        csv: Some(csv),
        code: 0,
    })
}

fn cmd_darboux(a: &DarbouxArgs) -> Result<Report, CliError> {
    let search = darboux_search(a.max_degree)?;
    let mut csv = String::from("f,k,degree,verified\n");
    let mut rows = Vec::new();
    let mut all = true;
    for pair in &search.pairs {
        let ok = darboux_verify(pair);
        all &= ok;
        let degree = pair.f.degree().unwrap_or(0);
        csv.push_str(&format!(
            "{},{},{degree},{ok}\n",
            csv_field(&pair.f.to_string()),
            csv_field(&pair.k.to_string())
        ));
        rows.push(json!({"f": pair.f.to_string(), "k": pair.k.to_string(), "degree": degree, "verified": ok}));
    }
    Ok(Report {
        value: json!({
            "max_degree": search.max_degree,
            "pairs": rows,
            "candidates_tested": search.candidates_tested,
            "kernel_dims": search.kernel_dims,
            "complete": search.complete,
            "all_verified": all,
        }),
        csv: Some(csv),
        code: if all { 0 } else { 1 },
    })
}

fn cmd_chart(a: &ChartArgs) -> Report {
    let system = chart_system(a.chart);
    let names = a.chart.variables();
    let matches = verify::reference_chart_system(a.chart) == *system;
    let point = a.point.map(|p| {
        let xyz = chart_to_xyz(a.chart, &p.0);
        json!({
            "coords": p.0,
            "field": chart_field(a.chart, &p.0),
            "xyz": xyz,
            "disk": xyz.map(|q| disk_projection(&q)),
        })
    });
    Report::ok(json!({
        "chart": a.chart.to_string(),
        "variables": names,
        "system": system.iter().map(|c| c.to_string_with(names)).collect::<Vec<_>>(),
        "matches_reference": matches,
        "point": point,
    }))
}
