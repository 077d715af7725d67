mod job;

use clap::{Args, Parser, Subcommand, ValueEnum};
use job::{echo, parse_group, parse_rep, Group, Rep};
use rigidconn_core::chevalley::ChevalleyAlgebra;
use rigidconn_core::connection::MatrixConnection;
use rigidconn_core::formal::{check_rigidity, Truncation};
use rigidconn_core::galois::{cohomology_dims, subregular_table};
use rigidconn_core::rootsys::{RootSystem, DEFAULT_RANK_BOUND};
use rigidconn_core::weights::cached;
use rigidconn_core::{Error, Result};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "rigidconn",
    version,
    about = "Rigid irregular connections for simple groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Directory for the on-disk weight-system cache.
    #[arg(long, env = "RIGIDCONN_CACHE", global = true)]
    cache_dir: Option<PathBuf>,

    /// Largest accepted rank for the classical series.
    #[arg(long, default_value_t = DEFAULT_RANK_BOUND, global = true)]
    rank_bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct Target {
    /// `sl`/`sp`/`so` with matrix size (`sl5`, `so7`), or a Cartan letter
    /// with Lie rank (`e6`, `g2`).
    #[arg(long)]
    group: String,

    /// Matrix size for `sl`/`sp`/`so`, Lie rank for a Cartan letter.
    #[arg(long)]
    rank: Option<usize>,

    /// standard, adjoint, spin, dim7, sym:K, or weight coordinates `a,b,...`.
    #[arg(long, default_value = "standard")]
    rep: String,
}

#[derive(Args, Debug, Clone)]
struct GroupArg {
    #[arg(long)]
    group: String,

    #[arg(long)]
    rank: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct ConnArgs {
    #[command(flatten)]
    target: Target,

    /// Use the normalization `t ↦ −t/2` of the connection.
    #[arg(long)]
    katz: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the connection matrix A(t).
    Matrix(ConnArgs),
    /// Reduce to a scalar operator in θ = t d/dt.
    Scalar {
        #[command(flatten)]
        conn: ConnArgs,
        /// Basis coordinate of the cyclic covector (default: last).
        #[arg(long)]
        coord: Option<usize>,
    },
    /// Slope at infinity.
    Slope(ConnArgs),
    /// Cohomology dimensions of the intermediate extension, by formula.
    Cohomology(Target),
    /// Formal-solution rigidity criteria.
    Rigidity {
        #[command(flatten)]
        target: Target,
        /// Truncation order M of the Laurent window.
        #[arg(long, default_value_t = 60)]
        trunc: i64,
    },
    /// The subregular table for the exceptional types.
    Subregular,
    /// Principal-grading decomposition of the loop algebra.
    Kac {
        #[command(flatten)]
        target: GroupArg,
        /// Degree window D; defaults to 2h.
        #[arg(long)]
        window: Option<i64>,
    },
    /// Weight multiplicities and principal SL2 decomposition.
    Weights(Target),
    /// Root system data.
    Roots(GroupArg),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

struct Resolved {
    group: Group,
    rep: Rep,
    rs: RootSystem,
    lambda: Vec<i64>,
}

fn resolve(t: &Target, bound: usize) -> Result<Resolved> {
    let group = parse_group(&t.group, t.rank, bound)?;
    let rep = parse_rep(&t.rep)?;
    let rs = RootSystem::with_bound(group.kind, group.rank, bound)?;
    let lambda = rep.highest_weight(&rs)?;
    if lambda.iter().any(|&x| x < 0) {
        return Err(Error::Invalid(format!(
            "highest weight {lambda:?} is not dominant"
        )));
    }
    Ok(Resolved {
        group,
        rep,
        rs,
        lambda,
    })
}

fn target_echo(r: &Resolved) -> Vec<(&'static str, Value)> {
    vec![
        ("group", json!({"type": r.group.kind, "rank": r.group.rank})),
        ("rep", json!(r.rep.label())),
        ("lambda", json!(r.lambda)),
    ]
}

fn connection(c: &ConnArgs, bound: usize) -> Result<(Resolved, MatrixConnection)> {
    let r = resolve(&c.target, bound)?;
    let case = r.rep.conn_case(&r.group)?;
    let conn = MatrixConnection::build(case)?;
    let conn = if c.katz { conn.katz_rescaled() } else { conn };
    Ok((r, conn))
}

/// Runs one command and returns the text to print.
fn run(cli: &Cli) -> Result<String> {
    let bound = cli.rank_bound;
    let cache = cli.cache_dir.as_deref();
    let (name, mut fields, result, text): (&str, Vec<(&str, Value)>, Value, Option<String>) =
        match &cli.command {
            Command::Matrix(c) => {
                let (r, conn) = connection(c, bound)?;
                let mut fields = target_echo(&r);
                fields.push(("katz", json!(c.katz)));
                ("matrix", fields, conn.to_json(), Some(conn.render()))
            }
            Command::Scalar { conn: c, coord } => {
                let (r, conn) = connection(c, bound)?;
                let coord = coord.unwrap_or(conn.dim - 1);
                let op = conn.scalar_reduction(coord)?;
                let mut fields = target_echo(&r);
                fields.push(("katz", json!(c.katz)));
                fields.push(("coord", json!(coord)));
                let text = format!("{}\n", op.render());
                ("scalar", fields, op.to_json(), Some(text))
            }
            Command::Slope(c) => {
                let (r, conn) = connection(c, bound)?;
                let rep = conn.slope_at_infinity()?;
                let mut fields = target_echo(&r);
                fields.push(("katz", json!(c.katz)));
                let mut res = rep.to_json();
                res["coxeter_number"] = json!(r.rs.coxeter_number);
                ("slope", fields, res, None)
            }
            Command::Cohomology(t) => {
                let r = resolve(t, bound)?;
                let rep = cohomology_dims(&r.rs, &r.lambda, cache)?;
                let text = cohomology_text(&rep.to_json());
                ("cohomology", target_echo(&r), rep.to_json(), Some(text))
            }
            Command::Rigidity { target, trunc } => {
                let r = resolve(target, bound)?;
                let case = r.rep.conn_case(&r.group)?;
                let conn = MatrixConnection::build(case)?;
                let rep = check_rigidity(&conn, &conn.dual(), Truncation::from(*trunc))?;
                let mut fields = target_echo(&r);
                fields.push(("truncation", json!(rep.truncation)));
                ("rigidity", fields, rep.to_json(), None)
            }
            Command::Subregular => {
                let rows = subregular_table()?;
                let text = subregular_text(&rows);
                (
                    "subregular",
                    vec![],
                    serde_json::to_value(&rows)?,
                    Some(text),
                )
            }
            Command::Kac { target, window } => {
                let group = parse_group(&target.group, target.rank, bound)?;
                let rs = RootSystem::with_bound(group.kind, group.rank, bound)?;
                let alg = ChevalleyAlgebra::new(&rs)?;
                let w = window.unwrap_or(2 * rs.coxeter_number);
                let k = alg.kac_decomposition(w)?;
                let slices: Vec<Value> = k
                    .slices
                    .iter()
                    .map(|s| {
                        json!({
                            "degree": s.degree,
                            "dim": s.dim_slice,
                            "dim_a": s.a_basis.len(),
                            "dim_c": s.c_basis.len(),
                            "expected_a": s.expected_a,
                        })
                    })
                    .collect();
                let res = json!({
                    "window": k.window,
                    "slices": slices,
                    "dims_ok": k.dims_ok,
                    "direct_sum": k.direct_sum,
                    "bijection": k.bijection,
                    "orthogonal": k.orthogonal,
                    "commuting": k.commuting,
                    "heisenberg": k.heisenberg,
                    "all_ok": k.all_ok(),
                });
                let mut fields = vec![("group", json!({"type": group.kind, "rank": group.rank}))];
                fields.push(("window", json!(w)));
                ("kac", fields, res, None)
            }
            Command::Weights(t) => {
                let r = resolve(t, bound)?;
                let ws = cached(&r.rs, &r.lambda, cache)?;
                let sl2 = ws.principal_sl2()?;
                let res = json!({
                    "dim": ws.dim,
                    "epsilon": ws.epsilon(),
                    "weights": ws.entries.iter()
                        .map(|e| json!({"weight": e.weight, "mult": e.mult, "a": e.a}))
                        .collect::<Vec<_>>(),
                    "principal_sl2": sl2.mult.iter()
                        .map(|(k, m)| json!({"sym": k, "mult": m}))
                        .collect::<Vec<_>>(),
                });
                ("weights", target_echo(&r), res, None)
            }
            Command::Roots(t) => {
                let group = parse_group(&t.group, t.rank, bound)?;
                let rs = RootSystem::with_bound(group.kind, group.rank, bound)?;
                let fields = vec![("group", json!({"type": group.kind, "rank": group.rank}))];
                ("roots", fields, serde_json::to_value(&rs)?, None)
            }
        };
    fields.push((
        "format",
        json!(match cli.format {
            Format::Text => "text",
            Format::Json => "json",
        }),
    ));
    fields.push(("cache_dir", json!(cache.map(|p| p.display().to_string()))));
    let job = echo(name, &fields);
    match cli.format {
        Format::Json => {
            let doc = json!({ "schema": "v1", "job": job, "result": result });
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc)?))
        }
        Format::Text => {
            let mut out = format!("# {}\n", serde_json::to_string(&job)?);
            match text {
                Some(t) => out.push_str(&t),
                None => flatten_text(&result, "", &mut out),
            }
            Ok(out)
        }
    }
}

fn cohomology_text(v: &Value) -> String {
    let mut out = String::new();
    for key in [
        "group",
        "rank",
        "lambda",
        "dim",
        "epsilon",
        "irr",
        "inv_I0",
        "inv_n",
        "inv_Iinf",
        "inv_galois",
        "h0",
        "h1",
        "h2",
        "galois_group",
    ] {
        out.push_str(&format!("{key}: {}\n", scalar_text(&v[key])));
    }
    if let Some(tr) = v["trace"].as_array() {
        for line in tr {
            out.push_str(&format!("  {}\n", line.as_str().unwrap_or_default()));
        }
    }
    out
}

fn subregular_text(rows: &[rigidconn_core::galois::SubregularRow]) -> String {
    let mut out = String::from("type  m  d  orbits  F                 galois\n");
    for r in rows {
        out.push_str(&format!(
            "{:<5} {:<2} {:<2} {:<7} {:<17} {}\n",
            format!("{}{}", r.kind, r.rank),
            r.m,
            r.d,
            r.orbits,
            r.f,
            r.galois_group
        ));
    }
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `path: value` lines for a JSON tree; arrays of scalars stay on one line.
fn flatten_text(v: &Value, path: &str, out: &mut String) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                flatten_text(x, &join(k), out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten_text(x, &join(&i.to_string()), out);
            }
        }
        other => out.push_str(&format!("{path}: {}\n", scalar_text(other))),
    }
}
