//! Output serialization: CSV tables and JSON documents.
//!
//! Every floating-point value is rounded to 12 significant digits before it
//! is emitted, through the same `round_sig`, so the CSV and JSON forms of
//! one run carry identical numeric values.

use serde_json::{json, Map, Value};

use crate::dynamics::{IntegrationMethod, PotentialParams, StabilityDiagramData, Trajectory};
use crate::metrics::RigidityReport;
use crate::scenarios::ScenarioResult;
use crate::spectral::SpectralDecomposition;

/// A float at 12 significant digits, in scientific notation.
pub fn fmt_sig(x: f64) -> String {
    format!("{x:.11e}")
}

/// The value `fmt_sig` prints, as a float again.
pub fn round_sig(x: f64) -> f64 {
    fmt_sig(x).parse().expect("formatted float parses back")
}

fn num(x: f64) -> Value {
    Value::from(round_sig(x))
}

fn num_list(xs: &[f64]) -> Value {
    Value::from(xs.iter().map(|x| num(*x)).collect::<Vec<_>>())
}

/// CSV with header `t,x_0,...,x_{n-1},dist_E1`, one row per sample.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.states.first().map_or(0, |s| s.len());
    let mut out = String::from("t");
    for i in 0..n {
        out.push_str(&format!(",x_{i}"));
    }
    out.push_str(",dist_E1\n");
    for k in 0..traj.len() {
        out.push_str(&fmt_sig(traj.times[k]));
        for x in &traj.states[k] {
            out.push(',');
            out.push_str(&fmt_sig(*x));
        }
        out.push(',');
        out.push_str(&fmt_sig(traj.dist_to_e1[k]));
        out.push('\n');
    }
    out
}

/// JSON mirror of the trajectory, tagged with the run parameters.
pub fn trajectory_json(
    traj: &Trajectory,
    params: &PotentialParams,
    t_max: f64,
    dt: f64,
    method: IntegrationMethod,
) -> Value {
    let method = match method {
        IntegrationMethod::ExactModal => "exact-modal",
        IntegrationMethod::Rk4 => "rk4",
    };
    json!({
        "a": num(params.a()),
        "b": num(params.b()),
        "t_max": num(t_max),
        "dt": num(dt),
        "method": method,
        "truncated": traj.truncated,
        "times": num_list(&traj.times),
        "states": traj.states.iter().map(|s| num_list(s)).collect::<Vec<_>>(),
        "dist_e1": num_list(&traj.dist_to_e1),
    })
}

/// JSON document with eigenvalues (descending), eigenvectors (rows), and
/// the eigenpair residual.
pub fn spectrum_json(dec: &SpectralDecomposition) -> Value {
    json!({
        "eigenvalues": num_list(dec.eigenvalues()),
        "eigenvectors": (0..dec.n())
            .map(|i| num_list(dec.eigenvector(i)))
            .collect::<Vec<_>>(),
        "residual": num(dec.residual()),
    })
}

/// CSV with header `eigenvalue,v_0,...,v_{n-1}`, one row per eigenpair.
pub fn spectrum_csv(dec: &SpectralDecomposition) -> String {
    let n = dec.n();
    let mut out = String::from("eigenvalue");
    for i in 0..n {
        out.push_str(&format!(",v_{i}"));
    }
    out.push('\n');
    for i in 0..n {
        out.push_str(&fmt_sig(dec.eigenvalues()[i]));
        for v in dec.eigenvector(i) {
            out.push(',');
            out.push_str(&fmt_sig(*v));
        }
        out.push('\n');
    }
    out
}

/// CSV with header `q,slope,b,a`: the rows of one boundary line are grouped
/// together, giving one (b, a) polyline per distinct eigenvalue.
pub fn diagram_csv(diagram: &StabilityDiagramData) -> String {
    let mut out = String::from("q,slope,b,a\n");
    for line in &diagram.lines {
        for &b in &diagram.b_samples {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_sig(line.q),
                fmt_sig(line.slope),
                fmt_sig(b),
                fmt_sig(line.slope * b)
            ));
        }
    }
    out
}

/// JSON mirror of the stability diagram.
pub fn diagram_json(diagram: &StabilityDiagramData) -> Value {
    let lines: Vec<Value> = diagram
        .lines
        .iter()
        .map(|line| {
            let points: Vec<Value> = diagram
                .b_samples
                .iter()
                .map(|&b| json!([num(b), num(line.slope * b)]))
                .collect();
            json!({
                "q": num(line.q),
                "slope": num(line.slope),
                "points": points,
            })
        })
        .collect();
    json!({ "lines": lines })
}

/// CSV with header `node,degree,clustering,closeness,betweenness,r,r_tilde,ev_component`.
pub fn report_csv(report: &RigidityReport) -> String {
    let mut out = String::from("node,degree,clustering,closeness,betweenness,r,r_tilde,ev_component\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.node,
            row.degree,
            fmt_sig(row.clustering),
            fmt_sig(row.closeness),
            fmt_sig(row.betweenness),
            fmt_sig(row.r),
            fmt_sig(row.r_tilde),
            fmt_sig(row.ev_component)
        ));
    }
    out
}

/// JSON mirror of the metrics report.
pub fn report_json(report: &RigidityReport) -> Value {
    json!({
        "p": num(report.p),
        "p_tilde": num(report.p_tilde),
        "disconnected": report.disconnected,
        "rows": report_rows(report),
    })
}

fn report_rows(report: &RigidityReport) -> Vec<Value> {
    report
        .rows
        .iter()
        .map(|row| {
            json!({
                "node": row.node,
                "degree": row.degree,
                "clustering": num(row.clustering),
                "closeness": num(row.closeness),
                "betweenness": num(row.betweenness),
                "r": num(row.r),
                "r_tilde": num(row.r_tilde),
                "ev_component": num(row.ev_component),
            })
        })
        .collect()
}

/// The scenario's CSV form: its per-node metrics table.
pub fn scenario_csv(result: &ScenarioResult) -> String {
    report_csv(&result.report)
}

/// Full scenario document: graph summary, roles, named values, eigenvector,
/// trajectory summary, and the per-node report.
pub fn scenario_json(result: &ScenarioResult) -> Value {
    let mut roles = Map::new();
    for (role, node) in &result.roles {
        roles.insert(role.clone(), Value::from(*node));
    }
    let mut named = Map::new();
    for (name, value) in &result.named {
        named.insert(name.clone(), num(*value));
    }
    let trajectory = match &result.trajectory {
        Some(t) => json!({
            "a": num(t.a),
            "b": num(t.b),
            "t_max": num(t.t_max),
            "dt": num(t.dt),
            "initial_distance": num(t.initial_distance),
            "final_distance": num(t.final_distance),
            "truncated": t.truncated,
        }),
        None => Value::Null,
    };
    json!({
        "scenario": result.scenario,
        "graph": {
            "n": result.graph.n,
            "edges": result.graph.edges,
            "min_degree": result.graph.min_degree,
            "max_degree": result.graph.max_degree,
        },
        "seed": result.seed,
        "q_min": num(result.q_min),
        "eigenvector": num_list(&result.eigenvector),
        "roles": Value::Object(roles),
        "named": Value::Object(named),
        "rigidity_params": {
            "p": num(result.report.p),
            "p_tilde": num(result.report.p_tilde),
        },
        "disconnected": result.report.disconnected,
        "trajectory": trajectory,
        "report": report_rows(&result.report),
    })
}
