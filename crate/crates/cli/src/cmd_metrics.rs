use clap::Args;
use oinfo::dist::JointTable;
use oinfo::estimation::{empirical_joint, SeriesTable};
use oinfo::metrics::{metric_report, MetricReport};

use crate::io_util::{read_file, write_output};
use crate::{CliError, CliResult, Ctx};

#[derive(Args)]
pub struct MetricsArgs {
    /// Distribution JSON ({"shape":..,"probs":..})
    #[arg(long, conflicts_with_all = ["series", "alphabet"])]
    dist: Option<String>,

    /// Series CSV (header row = channel names)
    #[arg(long, requires = "alphabet")]
    series: Option<String>,

    /// Alphabet sidecar JSON for --series
    #[arg(long)]
    alphabet: Option<String>,
}

pub fn load_table(
    dist: &Option<String>,
    series: &Option<String>,
    alphabet: &Option<String>,
) -> CliResult<JointTable> {
    match (dist, series) {
        (Some(path), None) => Ok(JointTable::from_json_str(&read_file(path)?)?),
        (None, Some(path)) => {
            let sidecar = alphabet
                .as_ref()
                .ok_or_else(|| CliError::Input("--series requires --alphabet".into()))?;
            let s = SeriesTable::from_csv(&read_file(path)?, &read_file(sidecar)?)?;
            Ok(empirical_joint(&s)?)
        }
        _ => Err(CliError::Input(
            "provide exactly one of --dist or --series (with --alphabet)".into(),
        )),
    }
}

fn report_csv(report: &MetricReport) -> String {
    let mut lines = vec!["metric,value".to_string()];
    lines.push(format!("unit,{}", report.unit));
    lines.push(format!("h_joint,{}", report.h_joint));
    lines.push(format!("negentropy,{}", report.negentropy));
    lines.push(format!("total_correlation,{}", report.total_correlation));
    lines.push(format!("binding_entropy,{}", report.binding_entropy));
    lines.push(format!("o_information,{}", report.o_information));
    lines.push(format!("tse,{}", report.tse));
    lines.push(format!("sum_cb,{}", report.sum_cb));
    for (j, r) in report.residuals.iter().enumerate() {
        lines.push(format!("residual[{j}],{r}"));
    }
    for (j, v) in report.marginal_negentropies.iter().enumerate() {
        lines.push(format!("marginal_negentropy[{j}],{v}"));
    }
    if let Some(matrix) = &report.local_omega {
        for (i, row) in matrix.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if let Some(w) = cell {
                    if i < j {
                        lines.push(format!("local_omega[{i}][{j}],{w}"));
                    }
                }
            }
        }
    }
    lines.join("\n") + "\n"
}

pub fn run(ctx: &Ctx, args: MetricsArgs) -> CliResult<()> {
    let table = load_table(&args.dist, &args.series, &args.alphabet)?;
    let report = metric_report(&table, ctx.unit)?;
    let rendered = match ctx.format.as_deref().unwrap_or("json") {
        "csv" => report_csv(&report),
        _ => report.to_json_string() + "\n",
    };
    write_output(&ctx.out, &rendered)
}
