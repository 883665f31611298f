use clap::Args;
use oinfo::dist::JointTable;
use oinfo::lattice::{
    all_partitions, all_paths, assembly_path, covers, decompose_along, edge_weights, LatticeEdge,
    LatticePath, PathDecomposition, DEFAULT_PARTITION_CAP,
};
use oinfo::metrics::{binding_entropy, o_information, total_correlation};
use oinfo::unit::LogUnit;
use serde_json::json;

use crate::io_util::{read_file, write_output};
use crate::{CliError, CliResult, Ctx};

#[derive(Args)]
pub struct LatticeArgs {
    /// Distribution JSON
    #[arg(long)]
    dist: String,

    /// Enumerate every source-to-sink path (n capped at 7)
    #[arg(long, conflicts_with = "assembly")]
    all_paths: bool,

    /// Use a single assembly path (n capped at 9)
    #[arg(long)]
    assembly: bool,

    /// Peel order for --assembly, 1-based, e.g. 4,2,1,3,5
    #[arg(long)]
    order: Option<String>,

    /// Assert that every path total matches the global measures
    #[arg(long)]
    check: bool,
}

fn parse_order(n: usize, raw: &Option<String>) -> CliResult<Vec<usize>> {
    match raw {
        None => Ok((0..n).collect()),
        Some(s) => {
            let one_based = crate::io_util::parse_usize_list(s)?;
            let mut order = Vec::with_capacity(one_based.len());
            for v in one_based {
                if v == 0 {
                    return Err(CliError::Input("--order indices are 1-based".into()));
                }
                order.push(v - 1);
            }
            Ok(order)
        }
    }
}

fn path_json(t: &JointTable, path: &LatticePath, unit: LogUnit) -> CliResult<(PathDecomposition, serde_json::Value)> {
    let d = decompose_along(t, path, unit)?;
    let value = json!({
        "nodes": path.nodes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "edges": d.edge_terms,
        "totals": d.totals,
    });
    Ok((d, value))
}

pub fn run(ctx: &Ctx, args: LatticeArgs) -> CliResult<()> {
    let table = JointTable::from_json_str(&read_file(&args.dist)?)?;
    let n = table.n();
    let unit = ctx.unit;

    let paths: Vec<LatticePath> = if args.assembly {
        if n > DEFAULT_PARTITION_CAP {
            return Err(CliError::Cap(format!(
                "assembly report for n = {n} exceeds the cap of {DEFAULT_PARTITION_CAP}"
            )));
        }
        let order = parse_order(n, &args.order)?;
        vec![assembly_path(n, &order)?]
    } else {
        // --all-paths is the default mode when --assembly is absent.
        all_paths(n)?
    };

    let mut decompositions = Vec::with_capacity(paths.len());
    let mut path_values = Vec::with_capacity(paths.len());
    for path in &paths {
        let (d, value) = path_json(&table, path, unit)?;
        decompositions.push(d);
        path_values.push(value);
    }

    if args.check {
        let c = total_correlation(&table, unit);
        let b = binding_entropy(&table, unit);
        let omega = o_information(&table, unit);
        for (idx, d) in decompositions.iter().enumerate() {
            let errs = [
                (d.totals.total_correlation - c).abs(),
                (d.totals.binding_entropy - b).abs(),
                (d.totals.o_information - omega).abs(),
            ];
            if errs.iter().any(|&e| e > 1e-9) {
                return Err(CliError::Invariant(format!(
                    "path {idx} totals ({}, {}, {}) deviate from global measures ({c}, {b}, {omega})",
                    d.totals.total_correlation, d.totals.binding_entropy, d.totals.o_information
                )));
            }
        }
    }

    let rendered = match ctx.format.as_deref().unwrap_or("json") {
        "csv" => {
            let mut lines =
                vec!["path,total_correlation,binding_entropy,o_information".to_string()];
            for (idx, d) in decompositions.iter().enumerate() {
                lines.push(format!(
                    "{idx},{},{},{}",
                    d.totals.total_correlation, d.totals.binding_entropy, d.totals.o_information
                ));
            }
            lines.join("\n") + "\n"
        }
        _ => {
            // Node and edge inventory of the region the report covers.
            let (nodes, edges) = if args.assembly {
                let path = &paths[0];
                let mut edges = Vec::new();
                for pair in path.nodes().windows(2) {
                    edges.push(edge_json(&table, pair[0].clone(), pair[1].clone(), unit)?);
                }
                (
                    path.nodes().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    edges,
                )
            } else {
                let partitions = all_partitions(n)?;
                let mut edges = Vec::new();
                for a in &partitions {
                    for b in &partitions {
                        if covers(a, b)? {
                            edges.push(edge_json(&table, a.clone(), b.clone(), unit)?);
                        }
                    }
                }
                (
                    partitions.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    edges,
                )
            };
            let report = json!({
                "unit": unit.name(),
                "n": n,
                "nodes": nodes,
                "edges": edges,
                "paths": path_values,
            });
            serde_json::to_string_pretty(&report).expect("report serialization") + "\n"
        }
    };
    write_output(&ctx.out, &rendered)
}

fn edge_json(
    t: &JointTable,
    from: oinfo::lattice::Partition,
    to: oinfo::lattice::Partition,
    unit: LogUnit,
) -> CliResult<serde_json::Value> {
    let edge = LatticeEdge::new(from, to)?;
    let w = edge_weights(t, &edge, unit)?;
    Ok(json!({
        "from": edge.from.to_string(),
        "to": edge.to.to_string(),
        "v_h": w.v_h,
        "v_r": w.v_r,
        "v_s": w.v_s,
        "mi": edge.mi_description(),
    }))
}
