//! One function per subcommand. Each returns a [`Report`] carrying both a
//! text and a JSON rendering, or a [`Failure`] that maps to an exit code.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use weighted_coxeter::classify::classify;
use weighted_coxeter::cyclotomic::Exact;
use weighted_coxeter::enumerate::bfs_enumerate;
use weighted_coxeter::game::imo_pentagon_run;
use weighted_coxeter::georep::{
    gauge_conjugate, gauge_from_potentials, generalized_generators, standard_generators,
};
use weighted_coxeter::graph::BalanceCertificate;
use weighted_coxeter::presets::presets;
use weighted_coxeter::{Cyclotomic, EdgeCoefficients, Verdict, WeightedGraph};

use crate::input::{load, parse_position};
use crate::session::{build_game, Session};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Failure {
    /// Input that parses badly or fails a check (exit 2).
    Validation(String),
    /// Anything else (exit 1).
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 2,
            Failure::Internal(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Validation(m) | Failure::Internal(m) => m,
        }
    }
}

impl From<weighted_coxeter::Error> for Failure {
    fn from(e: weighted_coxeter::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    /// 0 on success, 2 when the report itself records a validation failure.
    pub code: i32,
    pub text: String,
    pub json: Value,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            code: 0,
            text,
            json,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("reports serialize"),
        }
    }
}

pub type Outcome = Result<Report, Failure>;

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize")
}

fn literals(v: &[Cyclotomic]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn exact(v: &[Cyclotomic]) -> Value {
    to_value(&v.iter().map(Exact).collect::<Vec<_>>())
}

fn coefficients(g: &WeightedGraph, asymmetric_k: bool) -> EdgeCoefficients {
    if asymmetric_k {
        EdgeCoefficients::asymmetric_integers(&g.graph)
    } else {
        EdgeCoefficients::symmetric(&g.graph)
    }
}

/// Fails with exit 2 and a violation listing when the weights are not legal.
fn require_legal(g: &WeightedGraph) -> Result<(), Failure> {
    let v = g.validate();
    if v.is_empty() {
        return Ok(());
    }
    let msgs: Vec<String> = v.iter().map(ToString::to_string).collect();
    Err(Failure::Validation(format!(
        "illegal weight function: {}",
        msgs.join("; ")
    )))
}

fn balance_text(cert: &BalanceCertificate) -> String {
    match cert {
        BalanceCertificate::Balanced { potentials, .. } => {
            format!("balanced; potentials ({})", literals(potentials))
        }
        BalanceCertificate::Unbalanced { cycle, weight } => {
            let c: Vec<String> = cycle.iter().map(|v| format!("s{}", v + 1)).collect();
            format!("unbalanced; cycle {} has weight {weight}", c.join(" → "))
        }
    }
}

pub fn validate(file: &str) -> Outcome {
    let g = load(file)?.graph;
    let violations = g.validate();
    let mut json = json!({
        "vertices": g.vertex_count(),
        "edges": g.graph.edge_count(),
        "legal": violations.is_empty(),
        "violations": violations,
    });
    let mut text = format!(
        "{} vertices, {} edges\n",
        g.vertex_count(),
        g.graph.edge_count()
    );
    if !violations.is_empty() {
        text.push_str("illegal weight function:\n");
        for v in &violations {
            text.push_str(&format!("  {v}\n"));
        }
        return Ok(Report {
            code: 2,
            text,
            json,
        });
    }
    let cert = g.check_balanced()?;
    text.push_str(&format!("legal weight function; {}\n", balance_text(&cert)));
    json["balance"] = to_value(&cert);
    Ok(Report::ok(text, json))
}

fn camel(kind: &str) -> String {
    kind.split('_')
        .map(|w| {
            let mut c = w.chars();
            c.next()
                .map(|f| f.to_ascii_uppercase().to_string() + c.as_str())
                .unwrap_or_default()
        })
        .collect()
}

pub fn classify_file(file: &str, bound: i64) -> Outcome {
    let g = load(file)?.graph;
    require_legal(&g)?;
    let verdict = classify(&g.graph, &g.weights, bound)?;
    verdict.recheck(&g.graph, &g.weights)?;
    let text = format!("verdict: {}\n{verdict}\n", camel(verdict.kind()));
    let mut json = to_value(&verdict);
    json["faithful"] = to_value(&verdict.is_faithful());
    if let Verdict::FaithfulBalanced { certificate, .. } = &verdict {
        json["potentials"] = exact(certificate.potentials().unwrap_or_default());
    }
    Ok(Report::ok(text, json))
}

pub fn gauge(file: &str, asymmetric_k: bool) -> Outcome {
    let g = load(file)?.graph;
    require_legal(&g)?;
    let cert = g.check_balanced()?;
    let Some(pots) = cert.potentials() else {
        return Ok(Report {
            code: 2,
            text: format!("no gauge: {}\n", balance_text(&cert)),
            json: json!({ "balanced": false, "certificate": to_value(&cert) }),
        });
    };
    let ell = coefficients(&g, asymmetric_k);
    let j = gauge_from_potentials(pots)?;
    let sigma = standard_generators(&g.graph, &ell);
    let omega = generalized_generators(&g.graph, &g.weights, &ell)?;
    let verified = gauge_conjugate(&j, &sigma)? == omega;
    if !verified {
        return Err(Failure::Internal(
            "gauge failed to conjugate σ_i onto ω_i".into(),
        ));
    }
    let diag: Vec<Cyclotomic> = (0..j.size()).map(|i| j.get(i, i).clone()).collect();
    let text = format!(
        "potentials: ({})\nJ = diag({})\nverified J σ_i J⁻¹ = ω_i for all {} generators\n",
        literals(pots),
        literals(&diag),
        omega.len()
    );
    let json = json!({
        "balanced": true,
        "potentials": exact(pots),
        "gauge_diagonal": exact(&diag),
        "verified": verified,
    });
    Ok(Report::ok(text, json))
}

pub fn enumerate(file: &str, budget: usize, asymmetric_k: bool) -> Outcome {
    let g = load(file)?.graph;
    require_legal(&g)?;
    let ell = coefficients(&g, asymmetric_k);
    let gens = generalized_generators(&g.graph, &g.weights, &ell)?;
    let report = bfs_enumerate(&gens, budget).report();
    let text = if report.closed {
        format!(
            "group closed: order {}\ngrowth by length: {:?}\n",
            report.elements, report.growth
        )
    } else {
        format!(
            "budget of {budget} exhausted after {} elements (group may be infinite)\ngrowth by length: {:?}\n",
            report.elements, report.growth
        )
    };
    Ok(Report::ok(text, to_value(&report)))
}

/// Parses `fire 1 / fire 2`, `1 2 1` or one command per line.
pub fn parse_script(script: &str) -> Result<Vec<usize>, Failure> {
    let mut out = Vec::new();
    for part in script.split(['/', ';', '\n', ',']) {
        let mut tokens = part.split_whitespace().peekable();
        if tokens.peek() == Some(&"fire") {
            tokens.next();
        }
        for t in tokens {
            let v = t
                .parse::<usize>()
                .map_err(|_| Failure::Validation(format!("bad script token {t:?}")))?;
            out.push(v);
        }
    }
    Ok(out)
}

pub fn play(file: &str, script: &str, start: Option<&str>, asymmetric_k: bool) -> Outcome {
    let loaded = load(file)?;
    let start = match start {
        Some(s) => Some(parse_position(s)?),
        None => loaded.start,
    };
    let mut session = new_session(loaded.graph, start, asymmetric_k)?;
    let mut lines = vec![format!("start: ({})", literals(&session.record().start))];
    for v in parse_script(script)? {
        let class = session
            .fire(v)
            .map_err(|e| Failure::Validation(e.to_string()))?;
        let p = session.record().final_position();
        lines.push(format!(
            "fire {v}: {} → ({})",
            to_value(&class).as_str().unwrap_or(""),
            literals(p)
        ));
    }
    let state = session.state();
    lines.push(format!("final: ({})", literals(&state.position)));
    lines.push(format!("descent set: {:?}", state.descent_set));
    lines.push(format!("reduced: {}", state.reduced));
    Ok(Report::ok(lines.join("\n") + "\n", to_value(&state)))
}

pub fn new_session(
    g: WeightedGraph,
    start: Option<Vec<Cyclotomic>>,
    asymmetric_k: bool,
) -> Result<Session, Failure> {
    require_legal(&g)?;
    let ell = coefficients(&g, asymmetric_k);
    build_game(&g, &ell).map_err(|e| Failure::Validation(e.to_string()))?;
    Session::new(g, start, asymmetric_k).map_err(|e| Failure::Validation(e.to_string()))
}

/// Seeded pentagon runs from random starts with positive sum.
pub fn imo(seed: u64, count: usize, budget: usize, start: Option<&str>) -> Outcome {
    let starts: Vec<[i64; 5]> = match start {
        Some(s) => {
            let v = parse_position(s)?;
            let ints: Option<Vec<i64>> = v
                .iter()
                .map(|x| {
                    x.to_rational()
                        .filter(|r| r.is_integer())
                        .and_then(|r| i64::try_from(r.to_integer()).ok())
                })
                .collect();
            let arr: [i64; 5] = ints
                .and_then(|v| v.try_into().ok())
                .ok_or_else(|| Failure::Validation("start must be five integers".into()))?;
            if arr.iter().sum::<i64>() <= 0 {
                return Err(Failure::Validation("start must have positive sum".into()));
            }
            vec![arr]
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut v = Vec::with_capacity(count);
            while v.len() < count {
                let s: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-9..=9));
                if s.iter().sum::<i64>() > 0 {
                    v.push(s);
                }
            }
            v
        }
    };
    let mut text = format!(
        "{:<28} {:>5} {:>8} {:>10}\n",
        "start", "sum", "steps", "terminated"
    );
    let mut rows = Vec::new();
    for s in starts {
        let run = imo_pentagon_run(&s, budget)?;
        let sum: i64 = s.iter().sum();
        text.push_str(&format!(
            "{:<28} {sum:>5} {:>8} {:>10}\n",
            format!("{s:?}"),
            run.steps,
            run.terminated
        ));
        rows.push(
            json!({ "start": s, "sum": sum, "steps": run.steps, "terminated": run.terminated }),
        );
    }
    Ok(Report::ok(text, json!({ "seed": seed, "runs": rows })))
}

pub fn list_presets() -> Outcome {
    let mut text = String::new();
    for p in presets() {
        text.push_str(&format!("{:<20} {}\n", p.name, p.description));
    }
    Ok(Report::ok(text, to_value(&presets())))
}
