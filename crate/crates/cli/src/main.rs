//! `beta10`: trees, the involution `h`, fixed points, series checks and maps.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on usage or input
//! errors.

use std::io::{self, BufRead, Write};
use std::process::ExitCode;
use std::str::FromStr;

use beta10::audit::verify_all;
use beta10::bijection::{audit, tree_to_map};
use beta10::fixed_points::{build_f1, build_f2, classify, count_fixed, enumerate_fixed};
use beta10::maps::RootedMap;
use beta10::series::{
    census_a, census_b, check_eq1, check_eq2, check_ternary_link, check_theorem4, lagrange_u,
    ternary_t, IdentityCheck, SeriesConvention,
};
use beta10::symmetry::{census, Family};
use beta10::tree::{generate_all, BetaTree};
use beta10::{h, TruncatedBiSeries};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "beta10",
    version,
    about = "beta(1,0)-trees, the involution h and rooted non-separable maps"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// All trees with the given number of nodes.
    GenTrees {
        #[arg(long)]
        nodes: usize,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// root, sub, rpath and rsub of each tree.
    Stats {
        #[arg(long)]
        tree: Option<String>,
    },
    /// Apply the involution h.
    ApplyH {
        #[arg(long)]
        tree: Option<String>,
    },
    /// Fixed points of h on the given number of nodes.
    FixedPoints {
        #[arg(long)]
        nodes: usize,
        /// Append the F0/F1/F2 structure of each tree.
        #[arg(long)]
        classify: bool,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// F0/F1/F2 structure of a fixed point.
    Classify {
        #[arg(long)]
        tree: Option<String>,
    },
    /// The fixed point F1(A).
    BuildF1 {
        #[arg(long)]
        a: String,
    },
    /// The fixed point F2(A1, A2, b).
    BuildF2 {
        #[arg(long)]
        a1: String,
        #[arg(long)]
        a2: String,
        #[arg(long)]
        b: u32,
    },
    /// Check a generating function identity or dump a series.
    Series {
        #[arg(
            long,
            value_enum,
            conflicts_with = "dump",
            required_unless_present = "dump"
        )]
        check: Option<Identity>,
        #[arg(long, value_enum)]
        dump: Option<SeriesName>,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Map of a tree under the standard bijection, in the map file format.
    TreeToMap {
        #[arg(long)]
        tree: Option<String>,
    },
    /// Dual of a map given in the map file format.
    Dual {
        #[arg(long)]
        map: Option<String>,
    },
    /// Self-dual rooted non-separable maps with the given number of edges.
    SelfDual {
        #[arg(long)]
        edges: usize,
    },
    /// Injectivity, non-separability, degree law and duality of the bijection.
    BijectionAudit {
        #[arg(long)]
        nodes: usize,
    },
    /// Total and symmetric counts of ternary, even or non-crossing trees.
    Symmetric {
        #[arg(long)]
        family: String,
        #[arg(long)]
        size: usize,
    },
    /// Run every consistency check.
    Verify {
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 12)]
        max_nodes: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Identity {
    Eq1,
    Eq2,
    Thm4,
    Ternary,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "u")]
    U,
    #[value(name = "T")]
    T,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Out {
    format: Format,
    buf: Vec<u8>,
}

impl Out {
    fn row(&mut self, tsv: &[String], json: Value) {
        match self.format {
            Format::Tsv => writeln!(self.buf, "{}", tsv.join("\t")),
            Format::Jsonl => writeln!(self.buf, "{json}"),
        }
        .expect("writing to memory");
    }

    fn line(&mut self, s: &str) {
        writeln!(self.buf, "{s}").expect("writing to memory");
    }
}

/// A JSON number for an exact integer of any size.
fn big(v: impl ToString) -> Value {
    Value::Number(serde_json::Number::from_str(&v.to_string()).expect("integer literal"))
}

/// The `--flag` value, or else one non-empty line of stdin per object.
fn inputs(arg: Option<String>) -> Result<Vec<String>, Failure> {
    if let Some(a) = arg {
        return Ok(vec![a]);
    }
    let mut out = Vec::new();
    for line in io::stdin().lock().lines() {
        let line = line.map_err(|e| input_error(format!("reading stdin: {e}")))?;
        if !line.trim().is_empty() {
            out.push(line.trim().to_string());
        }
    }
    Ok(out)
}

fn parse_tree(s: &str) -> Result<BetaTree, Failure> {
    BetaTree::parse_valid(s).map_err(|e| input_error(format!("invalid tree {s:?}: {e}")))
}

fn trees(arg: Option<String>) -> Result<Vec<BetaTree>, Failure> {
    inputs(arg)?.iter().map(|s| parse_tree(s)).collect()
}

fn parse_map(s: &str) -> Result<RootedMap, Failure> {
    let m = RootedMap::from_json(s).map_err(|e| input_error(e.to_string()))?;
    m.validate()
        .map_err(|v| input_error(format!("invalid map: {v}")))?;
    Ok(m)
}

fn check_failed(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn run(cli: Cli, out: &mut Out) -> Result<(), Failure> {
    match cli.command {
        Command::GenTrees { nodes, count } => {
            if nodes == 0 {
                return Err(input_error("--nodes must be at least 1"));
            }
            if count {
                let c = generate_all(nodes).count();
                out.row(&[c.to_string()], json!({ "nodes": nodes, "count": c }));
            } else {
                for t in generate_all(nodes) {
                    out.row(&[t.to_text()], json!({ "tree": t.to_text() }));
                }
            }
        }
        Command::Stats { tree } => {
            for t in trees(tree)? {
                let s = t.stats();
                out.row(
                    &[
                        t.to_text(),
                        s.root_label.to_string(),
                        s.sub.to_string(),
                        s.rpath.to_string(),
                        s.rsub.to_string(),
                    ],
                    json!({ "tree": t.to_text(), "root": s.root_label, "sub": s.sub,
                            "rpath": s.rpath, "rsub": s.rsub }),
                );
            }
        }
        Command::ApplyH { tree } => {
            for t in trees(tree)? {
                let image = h(&t).to_text();
                out.row(
                    std::slice::from_ref(&image),
                    json!({ "tree": t.to_text(), "image": image }),
                );
            }
        }
        Command::FixedPoints {
            nodes,
            classify: with_structure,
            count,
        } => fixed_points(nodes, with_structure, count, out)?,
        Command::Classify { tree } => {
            for t in trees(tree)? {
                let s = classify(&t).map_err(|e| input_error(e.to_string()))?;
                out.row(&structure_tsv(&s), structure_json(&t, &s));
            }
        }
        Command::BuildF1 { a } => {
            let t = build_f1(&parse_tree(&a)?);
            out.row(&[t.to_text()], json!({ "tree": t.to_text() }));
        }
        Command::BuildF2 { a1, a2, b } => {
            let t = build_f2(&parse_tree(&a1)?, &parse_tree(&a2)?, b)
                .map_err(|e| input_error(e.to_string()))?;
            out.row(&[t.to_text()], json!({ "tree": t.to_text() }));
        }
        Command::Series { check, dump, order } => {
            if let Some(which) = check {
                series_check(which, order, out)?;
            } else if let Some(name) = dump {
                series_dump(name, order, out);
            }
        }
        Command::TreeToMap { tree } => {
            for t in trees(tree)? {
                out.line(&tree_to_map(&t).to_json());
            }
        }
        Command::Dual { map } => {
            for s in inputs(map)? {
                let d = parse_map(&s)?
                    .dual()
                    .map_err(|e| input_error(e.to_string()))?;
                out.line(&d.to_json());
            }
        }
        Command::SelfDual { edges } => {
            if edges == 0 {
                return Err(input_error("--edges must be at least 1"));
            }
            let mut codes: Vec<String> = generate_all(edges)
                .map(|t| tree_to_map(&t))
                .filter(RootedMap::is_self_dual)
                .map(|m| m.canonical_code().to_string())
                .collect();
            codes.sort();
            out.row(
                &[codes.len().to_string()],
                json!({ "edges": edges, "count": codes.len() }),
            );
            for c in codes {
                out.row(std::slice::from_ref(&c), json!({ "code": c }));
            }
        }
        Command::BijectionAudit { nodes } => {
            let rows = audit(nodes);
            let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
            if out.format == Format::Tsv {
                out.line("nodes\ttrees\tdistinct\tvalid\tnonseparable\tedges\tdegree_law\tself_dual\tduality\tresult");
            }
            for r in &rows {
                out.row(
                    &[
                        r.nodes.to_string(),
                        r.trees.to_string(),
                        r.distinct_images.to_string(),
                        r.valid.to_string(),
                        r.nonseparable.to_string(),
                        r.edge_count_ok.to_string(),
                        r.degree_law.to_string(),
                        opt(r.self_dual.map(|c| c.to_string())),
                        opt(r.duality_ok.map(|b| b.to_string())),
                        pass(r.passed()).into(),
                    ],
                    json!({ "nodes": r.nodes, "trees": r.trees, "distinct": r.distinct_images,
                            "valid": r.valid, "nonseparable": r.nonseparable, "edges": r.edge_count_ok,
                            "degree_law": r.degree_law, "self_dual": r.self_dual,
                            "duality": r.duality_ok, "passed": r.passed() }),
                );
            }
            if let Some(r) = rows.iter().find(|r| !r.passed()) {
                return Err(check_failed(format!(
                    "bijection audit fails at {} nodes",
                    r.nodes
                )));
            }
        }
        Command::Symmetric { family, size } => {
            let f = Family::from_str(&family).map_err(|e| input_error(e.to_string()))?;
            let c = census(f, size).map_err(|e| input_error(e.to_string()))?;
            out.row(
                &[f.to_string(), size.to_string(), c.total.to_string(), c.symmetric.to_string()],
                json!({ "family": f.name(), "size": size, "total": c.total, "symmetric": c.symmetric }),
            );
        }
        Command::Verify { all, max_nodes } => {
            if !all {
                return Err(input_error("verify needs --all"));
            }
            let results = verify_all(max_nodes);
            let failed = results.iter().filter(|r| !r.passed).count();
            for r in &results {
                out.row(
                    &[pass(r.passed).into(), r.name.clone(), r.detail.clone()],
                    json!({ "check": r.name, "passed": r.passed, "detail": r.detail }),
                );
            }
            let summary = format!(
                "{} of {} checks passed",
                results.len() - failed,
                results.len()
            );
            out.row(
                &[pass(failed == 0).into(), "summary".into(), summary.clone()],
                json!({ "check": "summary", "passed": failed == 0, "detail": summary }),
            );
            if failed > 0 {
                return Err(check_failed(format!("{failed} check(s) failed")));
            }
        }
    }
    Ok(())
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn structure_tsv(s: &beta10::FixedPointStructure) -> Vec<String> {
    use beta10::FixedPointStructure::*;
    match s {
        F0 => vec!["F0".into()],
        F1 { a } => vec!["F1".into(), a.to_text()],
        F2 { a1, a2, b } => vec!["F2".into(), a1.to_text(), a2.to_text(), b.to_string()],
    }
}

fn structure_json(t: &BetaTree, s: &beta10::FixedPointStructure) -> Value {
    use beta10::FixedPointStructure::*;
    match s {
        F0 => json!({ "tree": t.to_text(), "class": "F0" }),
        F1 { a } => json!({ "tree": t.to_text(), "class": "F1", "a": a.to_text() }),
        F2 { a1, a2, b } => json!({ "tree": t.to_text(), "class": "F2",
                                    "a1": a1.to_text(), "a2": a2.to_text(), "b": b }),
    }
}

fn fixed_points(
    nodes: usize,
    with_structure: bool,
    count: bool,
    out: &mut Out,
) -> Result<(), Failure> {
    if nodes == 0 {
        return Err(input_error("--nodes must be at least 1"));
    }
    if count {
        let c = match nodes {
            1 => 1u32.into(),
            n if n % 2 == 1 => 0u32.into(),
            n => count_fixed(n as u64 / 2),
        };
        out.row(
            &[c.to_string()],
            json!({ "nodes": nodes, "count": big(&c) }),
        );
        return Ok(());
    }
    let list: Vec<BetaTree> = if nodes == 1 {
        vec![BetaTree::leaf()]
    } else {
        let stream = enumerate_fixed(nodes);
        if let Some(d) = stream.diagnostic() {
            eprintln!("{d}");
        }
        stream.collect()
    };
    for t in list {
        if with_structure {
            let s = classify(&t).map_err(|e| check_failed(e.to_string()))?;
            let mut row = vec![t.to_text()];
            row.extend(structure_tsv(&s));
            out.row(&row, structure_json(&t, &s));
        } else {
            out.row(&[t.to_text()], json!({ "tree": t.to_text() }));
        }
    }
    Ok(())
}

fn series_check(which: Identity, order: usize, out: &mut Out) -> Result<(), Failure> {
    if order == 0 {
        return Err(input_error("--order must be at least 1"));
    }
    let checks: Vec<fn(usize) -> IdentityCheck> = match which {
        Identity::Eq1 => vec![check_eq1],
        Identity::Eq2 => vec![check_eq2],
        Identity::Thm4 => vec![check_theorem4],
        Identity::Ternary => vec![check_ternary_link],
        Identity::All => vec![check_eq1, check_eq2, check_theorem4, check_ternary_link],
    };
    let mut ok = true;
    for check in checks {
        let c = check(order);
        ok &= c.passed();
        let detail = match c.first_failure() {
            None => "all residuals vanish".to_string(),
            Some(r) => {
                let (n, k, v) = r.first_nonzero.as_ref().expect("failure has a term");
                format!("{}: x^{n} y^{k} coefficient {v}", r.name)
            }
        };
        out.row(
            &[
                c.name.into(),
                pass(c.passed()).into(),
                format!("order {}", c.order),
                detail.clone(),
            ],
            json!({ "identity": c.name, "passed": c.passed(), "order": c.order, "detail": detail }),
        );
    }
    if ok {
        Ok(())
    } else {
        Err(check_failed("series identity fails"))
    }
}

fn series_dump(name: SeriesName, order: usize, out: &mut Out) {
    let s: TruncatedBiSeries = match name {
        SeriesName::A => census_a(order),
        SeriesName::B => census_b(order, &SeriesConvention::default()),
        SeriesName::U => lagrange_u(order),
        SeriesName::T => ternary_t(order),
    };
    for (n, k, c) in s.terms() {
        out.row(
            &[n.to_string(), k.to_string(), c.to_string()],
            json!({ "n": n, "k": k, "value": big(c) }),
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    let mut out = Out {
        format: cli.format,
        buf: Vec::new(),
    };
    let result = run(cli, &mut out);
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    // a closed pipe is not an error worth reporting
    let _ = lock.write_all(&out.buf).and_then(|_| lock.flush());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
