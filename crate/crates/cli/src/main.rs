//! `gtd` — tables, point queries, the quiver open-orbit decider and
//! tensor-product decompositions for generic transitivity degrees of
//! simple algebraic group actions.
//!
//! Exit codes: 0 success, 2 input error, 3 outside-table-range error,
//! 4 budget or size guard exceeded, 5 verification failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use gtd_core::error::Error;
use gtd_core::gtd::{
    gtd_flag, gtd_group, gtd_levi, levi_open_orbit, open_triple, table_types, GtdRecord,
    ReferenceData,
};
use gtd_core::quiver::{
    euler_form, has_open_orbit_uniform, orbit_dimension_oracle, representation_space_dim,
    DimVector,
};
use gtd_core::rootsys::{LieType, Weight};
use gtd_core::tensor::{
    count_system_solutions, e6_klimyk_witness, invariant_dim, tensor_decompose, ModuleSum,
    DEFAULT_WORK_BUDGET, WITNESS_WORK_BUDGET,
};
use gtd_core::verify::{all_passed, run_checks};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(
    name = "gtd",
    version,
    about = "Generic transitivity degrees of simple algebraic group actions",
    long_about = "Computes generic transitivity degrees of simple algebraic groups acting on \
flag varieties G/P_i and of Levi subgroups acting on nilradicals, along with the quiver and \
tensor-product machinery behind the numbers.\n\n\
Weight coordinates are given either as a digit string (one digit per node, e.g. 0001) or as \
comma-separated integers (e.g. 0,0,0,1 — required when a coordinate exceeds 9).\n\n\
Environment: GTD_WORK_BUDGET overrides the default tensor work budget, GTD_SEED the default \
oracle seed; command-line flags take precedence over both."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Regenerate one of the five result tables.
    Tables {
        /// Table id: 1 group values, 2 flag values, 3 triple-product nodes,
        /// 4 Levi open-orbit nodes, 5 Levi values.
        id: u8,
        /// Largest rank to include (3..=8).
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Query a single gtd value.
    Query {
        /// Series letter (A..G) or a combined label like E6.
        series: String,
        /// Rank, or "-" when the series letter already fixes it.
        rank: String,
        /// Node (1-based), or "-" for the group action.
        node: String,
        /// One of: flag, levi, group, triple, open-orbit, borel.
        action: String,
    },
    /// Decide open-orbit existence for a star-quiver dimension vector.
    Quiver {
        /// For a uniform vector: the arm count, the central coordinate and
        /// the arm coordinate.
        #[arg(num_args = 0..=3)]
        uniform: Vec<u64>,
        /// Arbitrary dimension vector, central coordinate first
        /// (e.g. 4,2,2,2). Non-uniform vectors are decided by the oracle
        /// only.
        #[arg(long, conflicts_with = "uniform")]
        vector: Option<String>,
        /// Cross-check with the exact-rank orbit-dimension oracle.
        #[arg(long)]
        oracle: bool,
        /// Oracle seed (default: GTD_SEED or 1).
        #[arg(long)]
        seed: Option<u64>,
        /// Oracle trials.
        #[arg(long, default_value_t = 3)]
        trials: u32,
    },
    /// Tensor-product decompositions and invariant dimensions.
    Tensor {
        /// Series letter or combined label, then rank (or "-"), then one
        /// or two weights: two weights decompose their product.
        #[arg(num_args = 0..=4)]
        args: Vec<String>,
        /// Compute the invariant dimension of the product of the listed
        /// weights (semicolon-separated list, e.g. "1,0;0,1;1,1").
        #[arg(long)]
        invariants: Option<String>,
        /// Count the solutions of the four-factor linear system.
        #[arg(long, num_args = 4, value_names = ["N1", "N2", "N3", "N4"])]
        system: Option<Vec<u64>>,
        /// Multiplicity of E(2w5) in E(2w3) (x) E(2w3) over E6.
        #[arg(long)]
        e6_witness: bool,
        /// Work budget (default: GTD_WORK_BUDGET or built-in).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the consistency verifier.
    Verify {
        /// Largest rank to cover.
        #[arg(default_value_t = 8)]
        max_rank: usize,
    },
}

#[derive(Serialize)]
struct OutputRecord<T: Serialize> {
    command: &'static str,
    inputs: serde_json::Value,
    result: T,
    version: &'static str,
}

fn emit<T: Serialize>(command: &'static str, inputs: serde_json::Value, result: T) {
    let record = OutputRecord {
        command,
        inputs,
        result,
        version: VERSION,
    };
    println!("{}", serde_json::to_string(&record).expect("serializable"));
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::OutsideTableRange { .. } => 3,
        Error::SizeGuard { .. } | Error::BudgetExceeded { .. } => 4,
        _ => 2,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code_for(&err),
            message: err.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn effective_budget(flag: Option<u64>) -> u64 {
    flag.or_else(|| env_u64("GTD_WORK_BUDGET"))
        .unwrap_or(DEFAULT_WORK_BUDGET)
}

fn effective_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| env_u64("GTD_SEED")).unwrap_or(1)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Tables {
            id,
            max_rank,
            format,
        } => cmd_tables(id, max_rank, format),
        Command::Query {
            series,
            rank,
            node,
            action,
        } => cmd_query(&series, &rank, &node, &action),
        Command::Quiver {
            uniform,
            vector,
            oracle,
            seed,
            trials,
        } => cmd_quiver(&uniform, vector.as_deref(), oracle, seed, trials),
        Command::Tensor {
            args,
            invariants,
            system,
            e6_witness,
            budget,
        } => cmd_tensor(&args, invariants.as_deref(), system.as_deref(), e6_witness, budget),
        Command::Verify { max_rank } => cmd_verify(max_rank),
    }
}

fn parse_lie_type(series: &str, rank: &str) -> Result<LieType, Failure> {
    let combined = if series.len() > 1 {
        series.to_string()
    } else if rank == "-" {
        return Err(input_error(format!(
            "series {series} needs an explicit rank"
        )));
    } else {
        format!("{series}{rank}")
    };
    let t: LieType = combined
        .parse()
        .map_err(|e: Error| input_error(e.to_string()))?;
    if series.len() > 1 && rank != "-" {
        let given: usize = rank
            .parse()
            .map_err(|_| input_error(format!("rank {rank} is not a number")))?;
        if given != t.rank() {
            return Err(input_error(format!(
                "rank {given} contradicts the label {combined}"
            )));
        }
    }
    Ok(t)
}

fn parse_weight(s: &str, rank: usize) -> Result<Weight, Failure> {
    let coeffs: Vec<i64> = if s.contains(',') || s.contains('-') {
        s.split(',')
            .map(|p| p.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| input_error(format!("cannot parse weight {s}")))?
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as i64)
                    .ok_or_else(|| input_error(format!("cannot parse weight {s}")))
            })
            .collect::<Result<_, _>>()?
    };
    if coeffs.len() != rank {
        return Err(input_error(format!(
            "weight {s} has {} coordinates, expected {rank}",
            coeffs.len()
        )));
    }
    Ok(Weight::new(coeffs))
}

#[derive(Serialize)]
struct TableRow {
    #[serde(rename = "type")]
    lie_type: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Vec<String>>,
}

fn provenance_label(record: &GtdRecord) -> String {
    format!("{:?}", record.provenance)
}

fn cmd_tables(id: u8, max_rank: usize, format: Format) -> Result<ExitCode, Failure> {
    if !(1..=5).contains(&id) {
        return Err(input_error(format!("unknown table id {id}")));
    }
    if !(3..=8).contains(&max_rank) {
        return Err(input_error(format!(
            "max rank {max_rank} outside 3..=8"
        )));
    }
    let types = table_types(max_rank);
    let mut rows: Vec<TableRow> = Vec::new();
    for &t in &types {
        let label = t.to_string();
        let row = match id {
            1 => {
                let record = gtd_group(t)?;
                TableRow {
                    lie_type: label,
                    value: Some(record.value),
                    values: None,
                    nodes: None,
                    provenance: Some(vec![provenance_label(&record)]),
                }
            }
            2 | 5 => {
                let records: Result<Vec<GtdRecord>, Error> = (1..=t.rank())
                    .map(|i| {
                        if id == 2 {
                            gtd_flag(t, i)
                        } else {
                            gtd_levi(t, i)
                        }
                    })
                    .collect();
                let records = records?;
                TableRow {
                    lie_type: label,
                    value: None,
                    values: Some(records.iter().map(|r| r.value).collect()),
                    nodes: None,
                    provenance: Some(records.iter().map(provenance_label).collect()),
                }
            }
            _ => {
                let nodes: Result<Vec<usize>, Error> = (1..=t.rank())
                    .map(|i| {
                        let member = if id == 3 {
                            open_triple(t, i)?
                        } else {
                            levi_open_orbit(t, i)?
                        };
                        Ok(member.then_some(i))
                    })
                    .filter_map(|r| r.transpose())
                    .collect();
                TableRow {
                    lie_type: label,
                    value: None,
                    values: None,
                    nodes: Some(nodes?),
                    provenance: None,
                }
            }
        };
        rows.push(row);
    }

    match format {
        Format::Json => {
            let payload = json!({
                "table": id,
                "max_rank": max_rank,
                "rows": rows,
                "version": VERSION,
            });
            println!("{}", serde_json::to_string(&payload).expect("serializable"));
        }
        Format::Tsv => print_tsv(id, max_rank, &rows),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_tsv(id: u8, max_rank: usize, rows: &[TableRow]) {
    match id {
        // Types as columns, mirroring the published layout.
        1 => {
            let header: Vec<&str> = rows.iter().map(|r| r.lie_type.as_str()).collect();
            println!("type\t{}", header.join("\t"));
            let values: Vec<String> = rows
                .iter()
                .map(|r| r.value.expect("table 1 has values").to_string())
                .collect();
            println!("gtd\t{}", values.join("\t"));
        }
        3 | 4 => {
            let header: Vec<&str> = rows.iter().map(|r| r.lie_type.as_str()).collect();
            println!("type\t{}", header.join("\t"));
            let cells: Vec<String> = rows
                .iter()
                .map(|r| {
                    let nodes = r.nodes.as_ref().expect("node table");
                    if nodes.is_empty() {
                        "-".to_string()
                    } else {
                        nodes
                            .iter()
                            .map(|n| n.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    }
                })
                .collect();
            println!("nodes\t{}", cells.join("\t"));
        }
        // One row per type, one column per node.
        _ => {
            let node_headers: Vec<String> = (1..=max_rank).map(|i| i.to_string()).collect();
            println!("type\t{}", node_headers.join("\t"));
            for r in rows {
                let values = r.values.as_ref().expect("per-node table");
                let mut cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
                cells.resize(max_rank, String::new());
                println!("{}\t{}", r.lie_type, cells.join("\t"));
            }
        }
    }
}

fn cmd_query(series: &str, rank: &str, node: &str, action: &str) -> Result<ExitCode, Failure> {
    let t = parse_lie_type(series, rank)?;
    let inputs = json!({
        "type": t.to_string(),
        "node": if node == "-" { serde_json::Value::Null } else { json!(node) },
        "action": action,
    });
    let parse_node = || -> Result<usize, Failure> {
        node.parse()
            .map_err(|_| input_error(format!("node {node} is not a number")))
    };
    match action {
        "flag" => {
            let record: GtdRecord = gtd_flag(t, parse_node()?)?;
            emit("query", inputs, record);
        }
        "levi" => {
            let record = gtd_levi(t, parse_node()?)?;
            emit("query", inputs, record);
        }
        "group" => {
            let record = gtd_group(t)?;
            emit("query", inputs, record);
        }
        "triple" => {
            let value = open_triple(t, parse_node()?)?;
            emit("query", inputs, json!({ "open_triple": value }));
        }
        "open-orbit" => {
            let value = levi_open_orbit(t, parse_node()?)?;
            emit("query", inputs, json!({ "levi_open_orbit": value }));
        }
        "borel" => {
            let value = gtd_core::gtd::borel_gtd(t);
            emit("query", inputs, json!({ "borel_gtd": value }));
        }
        other => {
            return Err(input_error(format!(
                "unknown action {other}; expected flag, levi, group, triple, open-orbit or borel"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct OracleReport {
    seed: u64,
    trials: u32,
    rank: u64,
    full_dim: u64,
    open: bool,
}

#[derive(Serialize)]
struct QuiverReport {
    vector: Vec<i64>,
    euler: i64,
    open: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleReport>,
}

fn cmd_quiver(
    uniform: &[u64],
    vector: Option<&str>,
    oracle: bool,
    seed: Option<u64>,
    trials: u32,
) -> Result<ExitCode, Failure> {
    let (dim_vector, decided): (DimVector, Option<bool>) = match (uniform, vector) {
        ([d, n, a], None) => {
            let v = DimVector::uniform(*d as usize, *n as i64, *a as i64)?;
            (v, Some(has_open_orbit_uniform(*d, *n, *a)?))
        }
        ([], Some(spec)) => {
            let coords: Vec<i64> = spec
                .split(',')
                .map(|p| p.trim().parse())
                .collect::<Result<_, _>>()
                .map_err(|_| input_error(format!("cannot parse vector {spec}")))?;
            let v = DimVector::new(coords)?;
            let uniform_arms = v.coords()[1..].iter().all(|&a| a == v.coords()[1]);
            let decided = if uniform_arms && v.is_effective() && v.center() > 0 && v.coords()[1] > 0
            {
                Some(has_open_orbit_uniform(
                    v.arms() as u64,
                    v.center() as u64,
                    v.coords()[1] as u64,
                )?)
            } else {
                None // non-uniform vectors are decided by the oracle only
            };
            (v, decided)
        }
        _ => {
            return Err(input_error(
                "expected either three positional values D N A or --vector",
            ))
        }
    };
    let euler = euler_form(&dim_vector, &dim_vector)?;
    let seed = effective_seed(seed);
    let oracle_report = if oracle {
        let rank = orbit_dimension_oracle(&dim_vector, seed, trials)?;
        let full_dim = representation_space_dim(&dim_vector);
        Some(OracleReport {
            seed,
            trials,
            rank,
            full_dim,
            open: rank == full_dim,
        })
    } else {
        None
    };
    let inputs = json!({
        "vector": dim_vector.coords(),
        "oracle": oracle,
    });
    emit(
        "quiver",
        inputs,
        QuiverReport {
            vector: dim_vector.coords().to_vec(),
            euler,
            open: decided,
            oracle: oracle_report,
        },
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DecompositionReport {
    terms: Vec<TermReport>,
    constituents: u64,
    total_dim: String,
}

#[derive(Serialize)]
struct TermReport {
    weight: Vec<i64>,
    multiplicity: u64,
}

fn decomposition_report(t: LieType, sum: &ModuleSum) -> Result<DecompositionReport, Failure> {
    let terms = sum
        .terms()
        .iter()
        .map(|(w, m)| TermReport {
            weight: w.coeffs().to_vec(),
            multiplicity: *m,
        })
        .collect();
    Ok(DecompositionReport {
        terms,
        constituents: sum.constituents(),
        total_dim: sum.total_dim(t)?.to_string(),
    })
}

fn cmd_tensor(
    args: &[String],
    invariants: Option<&str>,
    system: Option<&[u64]>,
    e6_witness: bool,
    budget: Option<u64>,
) -> Result<ExitCode, Failure> {
    if let Some(ns) = system {
        let (n1, n2, n3, n4) = (ns[0], ns[1], ns[2], ns[3]);
        let count = count_system_solutions(n1, n2, n3, n4);
        emit(
            "tensor",
            json!({ "system": ns }),
            json!({ "solutions": count }),
        );
        return Ok(ExitCode::SUCCESS);
    }
    if e6_witness {
        let budget = budget
            .or_else(|| env_u64("GTD_WORK_BUDGET"))
            .unwrap_or(WITNESS_WORK_BUDGET);
        let multiplicity = e6_klimyk_witness(budget)?;
        emit(
            "tensor",
            json!({ "e6_witness": true, "budget": budget }),
            json!({ "multiplicity": multiplicity }),
        );
        return Ok(ExitCode::SUCCESS);
    }
    let budget = effective_budget(budget);
    if let Some(list) = invariants {
        let [series, rank] = args else {
            return Err(input_error(
                "--invariants needs the series and rank arguments",
            ));
        };
        let t = parse_lie_type(series, rank)?;
        let weights: Vec<Weight> = list
            .split(';')
            .map(|part| parse_weight(part, t.rank()))
            .collect::<Result<_, _>>()?;
        let value = invariant_dim(t, &weights, budget)?;
        let inputs = json!({
            "type": t.to_string(),
            "weights": weights.iter().map(|w| w.coeffs().to_vec()).collect::<Vec<_>>(),
            "budget": budget,
        });
        emit("tensor", inputs, json!({ "invariant_dim": value }));
        return Ok(ExitCode::SUCCESS);
    }
    let [series, rank, hw1, hw2] = args else {
        return Err(input_error(
            "expected SERIES RANK HW1 HW2, or one of --invariants, --system, --e6-witness",
        ));
    };
    let t = parse_lie_type(series, rank)?;
    let hw1 = parse_weight(hw1, t.rank())?;
    let hw2 = parse_weight(hw2, t.rank())?;
    let sum = tensor_decompose(t, &hw1, &hw2, budget)?;
    let inputs = json!({
        "type": t.to_string(),
        "hw1": hw1.coeffs().to_vec(),
        "hw2": hw2.coeffs().to_vec(),
        "budget": budget,
    });
    emit("tensor", inputs, decomposition_report(t, &sum)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(max_rank: usize) -> Result<ExitCode, Failure> {
    if !(3..=8).contains(&max_rank) {
        return Err(input_error(format!(
            "max rank {max_rank} outside 3..=8"
        )));
    }
    let checks = run_checks(max_rank, &ReferenceData::canonical());
    for check in &checks {
        if check.ok {
            println!("ok   {}", check.name);
        } else {
            println!("FAIL {}: {}", check.name, check.detail);
        }
    }
    let passed = checks.iter().filter(|c| c.ok).count();
    println!("passed {passed}/{} checks", checks.len());
    if all_passed(&checks) {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(5))
    }
}
